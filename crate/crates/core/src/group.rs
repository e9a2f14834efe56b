//! Arithmetic on standard parameters for sums of the complexes `±C(n)`.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use crate::equivalence::{is_equivalent, standard_complex, Sign, StandardParams};
use crate::error::{Error, Result};
use crate::involutive::{tensor_iota, IotaComplex, Mode};

/// One summand `±C(n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SignedCnTerm {
    pub sign: Sign,
    pub n: u32,
}

impl SignedCnTerm {
    pub fn new(sign: Sign, n: u32) -> Result<Self> {
        if n <= 1 {
            return Err(Error::OutOfScope(format!("C({n}) needs n > 1")));
        }
        Ok(Self { sign, n })
    }

    /// `C(n)` is `(+,-1,+,-n)` and `-C(n)` is `(-,1,-,n)`.
    pub fn params(self) -> StandardParams {
        let p = StandardParams::new(vec![(Sign::Plus, -1), (Sign::Plus, -i64::from(self.n))]).expect("nonzero entries");
        match self.sign {
            Sign::Plus => p,
            Sign::Minus => param_negate(&p),
        }
    }
}

impl fmt::Display for SignedCnTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}C({})", self.sign.as_char(), self.n)
    }
}

/// Entrywise negation. This is the inverse only on sums of `±C(n)`; for other
/// parameters the result is not known to represent the dual.
pub fn param_negate(p: &StandardParams) -> StandardParams {
    StandardParams::new(p.steps().iter().map(|&(a, b)| (a.negate(), -b)).collect()).expect("nonzero entries")
}

/// Parameters of `±C(n₁) ± … ± C(n_m)`: opposite pairs cancel, the rest is
/// sorted by nonincreasing `n` and the blocks are concatenated.
pub fn simplified_sum_params(terms: &[SignedCnTerm]) -> Result<StandardParams> {
    let mut net: BTreeMap<u32, i64> = BTreeMap::new();
    for t in terms {
        if t.n <= 1 {
            return Err(Error::OutOfScope(format!("C({}) needs n > 1", t.n)));
        }
        *net.entry(t.n).or_default() += match t.sign {
            Sign::Plus => 1,
            Sign::Minus => -1,
        };
    }
    let mut out = StandardParams::identity();
    for (&n, &k) in net.iter().rev() {
        let sign = if k > 0 { Sign::Plus } else { Sign::Minus };
        let block = SignedCnTerm { sign, n }.params();
        for _ in 0..k.abs() {
            out = out.concat(&block);
        }
    }
    Ok(out)
}

/// Whether `|b_i| ≤ |b_{i-1}|` and `sgn(b_i) = -sgn(a_i)` hold throughout.
pub fn sf_member(p: &StandardParams) -> bool {
    let signs_ok = p.steps().iter().all(|&(a, b)| match a {
        Sign::Plus => b < 0,
        Sign::Minus => b > 0,
    });
    signs_ok && p.steps().windows(2).all(|w| w[1].1.abs() <= w[0].1.abs())
}

/// The tensor product of the standard complexes of the given terms.
pub fn tensor_of_terms(terms: &[SignedCnTerm]) -> IotaComplex {
    terms
        .iter()
        .map(|t| standard_complex(&t.params()))
        .reduce(|a, b| tensor_iota(&a, &b))
        .unwrap_or_else(IotaComplex::unit)
}

/// One integer combination of the family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Combination {
    pub coefficients: Vec<i64>,
    pub params: StandardParams,
    pub sf: bool,
    /// `Some(agrees)` when the combination was cross-checked on the tensor
    /// product of standard complexes.
    pub cross_check: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndependenceReport {
    pub family: Vec<u32>,
    pub bound: u32,
    /// Every nonzero combination, in lexicographic order of coefficients.
    pub combinations: Vec<Combination>,
}

impl IndependenceReport {
    /// Combinations whose parameters pass [`sf_member`].
    pub fn sf_hits(&self) -> impl Iterator<Item = &Combination> {
        self.combinations.iter().filter(|c| c.sf)
    }

    pub fn cross_checked(&self) -> usize {
        self.combinations.iter().filter(|c| c.cross_check.is_some()).count()
    }

    pub fn cross_checks_agree(&self) -> bool {
        self.combinations.iter().all(|c| c.cross_check != Some(false))
    }

    pub fn independent(&self) -> bool {
        self.sf_hits().next().is_none()
    }
}

/// Largest tensor product (in generators) that is cross-checked.
pub const CROSS_CHECK_MAX_GENERATORS: usize = 125;

fn combinations(len: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|v| {
                (-bound..=bound).map(move |c| {
                    let mut w = v.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    out.retain(|v| v.iter().any(|&c| c != 0));
    out
}

/// Enumerates all nonzero combinations of `C(n)`, `n ∈ family`, with
/// coefficients in `[-bound, bound]`, and tests each for membership in the
/// Seifert fibered image. Combinations whose tensor product has at most
/// [`CROSS_CHECK_MAX_GENERATORS`] generators are also checked against an
/// equivalence search on that tensor product.
pub fn independence_report(family: &[u32], bound: u32) -> Result<IndependenceReport> {
    let mut seen = family.to_vec();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != family.len() {
        return Err(Error::invalid("family values must be distinct"));
    }
    if let Some(&n) = family.iter().find(|&&n| n <= 1) {
        return Err(Error::OutOfScope(format!("C({n}) needs n > 1")));
    }
    let combos = combinations(family.len(), i64::from(bound));
    let combinations = combos
        .into_par_iter()
        .map(|coefficients| {
            let terms: Vec<SignedCnTerm> = coefficients
                .iter()
                .zip(family)
                .flat_map(|(&c, &n)| {
                    let sign = if c > 0 { Sign::Plus } else { Sign::Minus };
                    std::iter::repeat_n(SignedCnTerm { sign, n }, c.unsigned_abs() as usize)
                })
                .collect();
            let params = simplified_sum_params(&terms)?;
            let size = 5usize.checked_pow(terms.len() as u32);
            let cross_check = size.filter(|&s| s <= CROSS_CHECK_MAX_GENERATORS).map(|_| {
                let t = tensor_of_terms(&terms);
                is_equivalent(&t, &standard_complex(&params), Mode::Almost).is_some()
            });
            Ok(Combination { sf: sf_member(&params), coefficients, params, cross_check })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IndependenceReport { family: family.to_vec(), bound, combinations })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> StandardParams {
        s.parse().unwrap()
    }

    fn t(sign: Sign, n: u32) -> SignedCnTerm {
        SignedCnTerm::new(sign, n).unwrap()
    }

    #[test]
    fn negation() {
        assert_eq!(param_negate(&p("+,-1,+,-5")), p("-,1,-,5"));
        assert_eq!(param_negate(&StandardParams::identity()), StandardParams::identity());
        let q = p("+,2,-,-3,+,1");
        assert_eq!(param_negate(&param_negate(&q)), q);
    }

    #[test]
    fn sums() {
        use Sign::*;
        assert_eq!(simplified_sum_params(&[t(Plus, 3), t(Plus, 2)]).unwrap(), p("+,-1,+,-3,+,-1,+,-2"));
        assert_eq!(simplified_sum_params(&[t(Plus, 3), t(Minus, 2)]).unwrap(), p("+,-1,+,-3,-,1,-,2"));
        assert_eq!(simplified_sum_params(&[t(Minus, 2), t(Plus, 3)]).unwrap(), p("+,-1,+,-3,-,1,-,2"));
        assert_eq!(simplified_sum_params(&[t(Plus, 2), t(Minus, 2)]).unwrap(), StandardParams::identity());
        assert!(simplified_sum_params(&[SignedCnTerm { sign: Plus, n: 1 }]).is_err());
        assert!(SignedCnTerm::new(Plus, 0).is_err());
    }

    #[test]
    fn sf_examples() {
        assert!(!sf_member(&p("+,-1,+,-2")));
        assert!(sf_member(&StandardParams::identity()));
        assert!(sf_member(&p("-,1,-,1")));
        assert!(!sf_member(&p("+,1")));
        assert!(sf_member(&p("+,-3,-,2,+,-2")));
    }

    #[test]
    fn small_reports() {
        let r = independence_report(&[], 1).unwrap();
        assert!(r.combinations.is_empty() && r.independent());
        let r = independence_report(&[2], 1).unwrap();
        assert_eq!(r.combinations.len(), 2);
        assert!(r.independent());
        assert!(r.cross_checks_agree());
        assert!(independence_report(&[2, 2], 1).is_err());
    }
}
