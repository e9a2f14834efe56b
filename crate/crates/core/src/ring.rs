//! Exact polynomial arithmetic.
//!
//! Two unrelated families live here:
//!
//! * [`LaurentPolynomial`], integer Laurent polynomials in `t`, used for
//!   Alexander polynomials and their exact division.
//! * [`F2Poly`] over a [`Monomial`] type, the F₂-coefficient polynomials that
//!   appear as matrix entries of every chain complex in the crate. The two
//!   instances are [`UVPoly`] (monomials `U^i V^j`) and [`UPoly`] (monomials
//!   `U^k`).
//!
//! Laurent coefficients are `i64`. Every arithmetic step is checked and
//! panics with a message on overflow; the torus knot computations this crate
//! performs stay far below that bound.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Integer-coefficient Laurent polynomial in one variable `t`.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial {
    terms: BTreeMap<i64, i64>,
}

fn checked(v: Option<i64>) -> i64 {
    v.expect("Laurent polynomial coefficient overflowed i64")
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `coeff * t^exp`.
    pub fn monomial(coeff: i64, exp: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff);
        p
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs; repeated
    /// exponents are summed.
    pub fn from_terms<I: IntoIterator<Item = (i64, i64)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// Polynomial with coefficient `coeffs[k]` on `t^k`.
    pub fn from_coeffs(coeffs: &[i64]) -> Self {
        Self::from_terms(coeffs.iter().enumerate().map(|(k, &c)| (k as i64, c)))
    }

    fn add_term(&mut self, exp: i64, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let slot = self.terms.entry(exp).or_insert(0);
        *slot = checked(slot.checked_add(coeff));
        if *slot == 0 {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> i64 {
        self.terms.get(&exp).copied().unwrap_or(0)
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self { terms: self.terms.iter().map(|(&e, &c)| (checked(e.checked_add(k)), c)).collect() }
    }

    /// `t^n - 1`.
    pub fn t_pow_minus_one(n: i64) -> Self {
        Self::from_terms([(n, 1), (0, -1)])
    }

    /// Reads off the step sequence `(c_1, …, c_2k)` of a polynomial of the
    /// form `1 - t^{c_1} + t^{c_1+c_2} - …` up to an overall power of `t`.
    ///
    /// Returns `None` unless the coefficients are ±1, alternate in sign, and
    /// both the lowest and highest coefficients are `+1`.
    pub fn alternating_steps(&self) -> Option<Vec<u32>> {
        let terms: Vec<(i64, i64)> = self.terms().collect();
        if terms.is_empty() || terms.len().is_multiple_of(2) {
            return None;
        }
        for (k, &(_, c)) in terms.iter().enumerate() {
            let expected = if k % 2 == 0 { 1 } else { -1 };
            if c != expected {
                return None;
            }
        }
        terms.windows(2).map(|w| u32::try_from(w[1].0 - w[0].0).ok()).collect()
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c);
        }
        out
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial { terms: self.terms.iter().map(|(&e, &c)| (e, checked(c.checked_neg()))).collect() }
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        self + &(-rhs)
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = LaurentPolynomial::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(checked(e1.checked_add(e2)), checked(c1.checked_mul(c2)));
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for LaurentPolynomial {
            type Output = LaurentPolynomial;
            fn $f(self, rhs: LaurentPolynomial) -> LaurentPolynomial {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms().enumerate() {
            let mag = c.unsigned_abs();
            if k == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c < 0 { '-' } else { '+' })?;
            }
            match (mag, e) {
                (_, 0) => write!(f, "{mag}")?,
                (1, 1) => write!(f, "t")?,
                (1, _) => write!(f, "t^{e}")?,
                (_, 1) => write!(f, "{mag}t")?,
                _ => write!(f, "{mag}t^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPolynomial({self})")
    }
}

/// `1 - t^{c_1} + t^{c_1+c_2} - … + t^{c_1+…+c_{2k}}`.
///
/// The sequence must have even length and positive entries. Symmetry is not
/// checked here.
pub fn symmetric_alternating_poly(steps: &[u32]) -> Result<LaurentPolynomial> {
    if !steps.len().is_multiple_of(2) {
        return Err(Error::invalid(format!("step sequence must have even length, got {}", steps.len())));
    }
    if let Some(pos) = steps.iter().position(|&c| c == 0) {
        return Err(Error::invalid(format!("step {} is zero; steps must be positive", pos + 1)));
    }
    let mut p = LaurentPolynomial::one();
    let mut exp = 0i64;
    for (k, &c) in steps.iter().enumerate() {
        exp += i64::from(c);
        p.add_term(exp, if k % 2 == 0 { -1 } else { 1 });
    }
    Ok(p)
}

/// Exact quotient `num / den`.
///
/// Fails with [`Error::InexactDivision`] when `den` does not divide `num`
/// over the integers.
pub fn laurent_div_exact(num: &LaurentPolynomial, den: &LaurentPolynomial) -> Result<LaurentPolynomial> {
    let (Some(den_lo), Some(den_hi)) = (den.min_exp(), den.max_exp()) else {
        return Err(Error::invalid("division by the zero polynomial"));
    };
    let Some(num_lo) = num.min_exp() else {
        return Ok(LaurentPolynomial::zero());
    };
    // Strip the powers of t and divide honest polynomials.
    let mut rem = num.shift(-num_lo);
    let d = den.shift(-den_lo);
    let d_deg = den_hi - den_lo;
    let d_lead = d.coeff(d_deg);
    let mut quot = LaurentPolynomial::zero();
    while let Some(r_deg) = rem.max_exp() {
        if r_deg < d_deg {
            return Err(Error::InexactDivision);
        }
        let r_lead = rem.coeff(r_deg);
        if r_lead % d_lead != 0 {
            return Err(Error::InexactDivision);
        }
        let q = LaurentPolynomial::monomial(r_lead / d_lead, r_deg - d_deg);
        rem = &rem - &(&q * &d);
        quot = &quot + &q;
    }
    Ok(quot.shift(num_lo - den_lo))
}

/// A monomial with implicit coefficient 1 in a commutative F₂-algebra.
pub trait Monomial: Copy + Ord + Hash + fmt::Debug + Send + Sync + 'static {
    fn one() -> Self;
    fn mul(self, other: Self) -> Self;
    /// The conjugation `U ↔ V` (identity when there is only one variable).
    fn conj(self) -> Self;
    fn is_one(self) -> bool {
        self == Self::one()
    }
}

/// The monomial `U^u V^v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct UVTerm {
    pub u: u32,
    pub v: u32,
}

impl UVTerm {
    pub const fn new(u: u32, v: u32) -> Self {
        Self { u, v }
    }
}

impl Monomial for UVTerm {
    fn one() -> Self {
        Self::new(0, 0)
    }
    fn mul(self, other: Self) -> Self {
        Self::new(self.u + other.u, self.v + other.v)
    }
    fn conj(self) -> Self {
        Self::new(self.v, self.u)
    }
}

impl fmt::Display for UVTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.u, self.v) {
            (0, 0) => write!(f, "1"),
            (u, 0) => write!(f, "U^{u}"),
            (0, v) => write!(f, "V^{v}"),
            (u, v) => write!(f, "U^{u}V^{v}"),
        }
    }
}

/// The monomial `U^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct UTerm(pub u32);

impl Monomial for UTerm {
    fn one() -> Self {
        UTerm(0)
    }
    fn mul(self, other: Self) -> Self {
        UTerm(self.0 + other.0)
    }
    fn conj(self) -> Self {
        self
    }
}

impl fmt::Display for UTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            0 => write!(f, "1"),
            k => write!(f, "U^{k}"),
        }
    }
}

/// An F₂-linear combination of monomials, i.e. a finite set of monomials
/// with XOR addition.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct F2Poly<M: Monomial>(BTreeSet<M>);

pub type UVPoly = F2Poly<UVTerm>;
pub type UPoly = F2Poly<UTerm>;

impl<M: Monomial> Default for F2Poly<M> {
    fn default() -> Self {
        Self(BTreeSet::new())
    }
}

impl<M: Monomial> F2Poly<M> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(M::one())
    }

    pub fn monomial(m: M) -> Self {
        Self(BTreeSet::from([m]))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0.iter().next().is_some_and(|m| m.is_one())
    }

    pub fn has_constant_term(&self) -> bool {
        self.0.contains(&M::one())
    }

    pub fn terms(&self) -> impl Iterator<Item = M> + '_ {
        self.0.iter().copied()
    }

    pub fn num_terms(&self) -> usize {
        self.0.len()
    }

    /// Adds (XORs) a single monomial.
    pub fn toggle(&mut self, m: M) {
        if !self.0.remove(&m) {
            self.0.insert(m);
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for m in other.terms() {
            self.toggle(m);
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for a in self.terms() {
            for b in other.terms() {
                out.toggle(a.mul(b));
            }
        }
        out
    }

    pub fn mul_monomial(&self, m: M) -> Self {
        Self(self.0.iter().map(|&a| a.mul(m)).collect())
    }

    pub fn conj(&self) -> Self {
        Self(self.0.iter().map(|m| m.conj()).collect())
    }

    /// Value at `U = V = 1`: the parity of the number of terms.
    pub fn at_one(&self) -> bool {
        self.0.len() % 2 == 1
    }

    pub fn map_terms<F: FnMut(M) -> Option<M>>(&self, mut f: F) -> Self {
        let mut out = Self::zero();
        for m in self.terms() {
            if let Some(n) = f(m) {
                out.toggle(n);
            }
        }
        out
    }
}

impl<M: Monomial> Add for &F2Poly<M> {
    type Output = F2Poly<M>;
    fn add(self, rhs: &F2Poly<M>) -> F2Poly<M> {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }
}

impl<M: Monomial> FromIterator<M> for F2Poly<M> {
    fn from_iter<I: IntoIterator<Item = M>>(iter: I) -> Self {
        let mut out = Self::zero();
        for m in iter {
            out.toggle(m);
        }
        out
    }
}

impl UVPoly {
    /// Formal derivative in `U`: `U^i V^j ↦ i·U^{i-1} V^j` over F₂.
    pub fn d_du(&self) -> Self {
        self.map_terms(|m| (m.u % 2 == 1).then(|| UVTerm::new(m.u - 1, m.v)))
    }

    /// Formal derivative in `V`.
    pub fn d_dv(&self) -> Self {
        self.map_terms(|m| (m.v % 2 == 1).then(|| UVTerm::new(m.u, m.v - 1)))
    }
}

impl<M: Monomial + fmt::Display> fmt::Display for F2Poly<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, m) in self.terms().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

impl<M: Monomial> fmt::Debug for F2Poly<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn t(coeffs: &[i64]) -> LaurentPolynomial {
        LaurentPolynomial::from_coeffs(coeffs)
    }

    #[test]
    fn alternating_poly_trefoil() {
        assert_eq!(symmetric_alternating_poly(&[1, 1]).unwrap(), t(&[1, -1, 1]));
    }

    #[test]
    fn alternating_poly_t67() {
        let p = symmetric_alternating_poly(&[1, 5, 2, 4, 3, 3, 4, 2, 5, 1]).unwrap();
        let expected = LaurentPolynomial::from_terms([
            (0, 1),
            (1, -1),
            (6, 1),
            (8, -1),
            (12, 1),
            (15, -1),
            (18, 1),
            (22, -1),
            (24, 1),
            (29, -1),
            (30, 1),
        ]);
        assert_eq!(p, expected);
    }

    #[test]
    fn alternating_poly_empty_is_one() {
        assert_eq!(symmetric_alternating_poly(&[]).unwrap(), LaurentPolynomial::one());
    }

    #[test]
    fn alternating_poly_rejects_odd_length() {
        assert!(matches!(symmetric_alternating_poly(&[1, 2, 1]), Err(Error::InvalidInput(_))));
        assert!(symmetric_alternating_poly(&[1, 0]).is_err());
    }

    #[test]
    fn asymmetric_sequence_is_accepted() {
        assert!(symmetric_alternating_poly(&[1, 2]).is_ok());
    }

    #[test]
    fn division_examples() {
        let num = &LaurentPolynomial::t_pow_minus_one(6) * &LaurentPolynomial::t_pow_minus_one(1);
        let den = &LaurentPolynomial::t_pow_minus_one(2) * &LaurentPolynomial::t_pow_minus_one(3);
        assert_eq!(laurent_div_exact(&num, &den).unwrap(), t(&[1, -1, 1]));

        let p = LaurentPolynomial::from_terms([(-3, 2), (1, -5), (4, 1)]);
        assert_eq!(laurent_div_exact(&p, &LaurentPolynomial::one()).unwrap(), p);

        let r = laurent_div_exact(&LaurentPolynomial::t_pow_minus_one(2), &LaurentPolynomial::t_pow_minus_one(3));
        assert!(matches!(r, Err(Error::InexactDivision)));
    }

    #[test]
    fn division_by_zero_is_rejected() {
        assert!(laurent_div_exact(&LaurentPolynomial::one(), &LaurentPolynomial::zero()).is_err());
    }

    #[test]
    fn steps_roundtrip() {
        let steps = vec![1, 5, 2, 4, 3, 3, 4, 2, 5, 1];
        let p = symmetric_alternating_poly(&steps).unwrap();
        assert_eq!(p.alternating_steps(), Some(steps));
        assert_eq!(t(&[1, 1]).alternating_steps(), None);
        assert_eq!(t(&[1, -1]).alternating_steps(), None);
    }

    #[test]
    fn display() {
        assert_eq!(t(&[1, -1, 1]).to_string(), "1 - t + t^2");
        assert_eq!(LaurentPolynomial::from_terms([(-1, -2), (3, 1)]).to_string(), "-2t^-1 + t^3");
    }

    #[test]
    fn derivatives() {
        let p: UVPoly = [UVTerm::new(3, 1), UVTerm::new(2, 0), UVTerm::new(1, 2)].into_iter().collect();
        let du: UVPoly = [UVTerm::new(2, 1), UVTerm::new(0, 2)].into_iter().collect();
        let dv: UVPoly = [UVTerm::new(3, 0)].into_iter().collect();
        assert_eq!(p.d_du(), du);
        assert_eq!(p.d_dv(), dv);
    }

    fn small_laurent() -> impl Strategy<Value = LaurentPolynomial> {
        proptest::collection::vec((-4i64..6, -5i64..6), 0..5).prop_map(LaurentPolynomial::from_terms)
    }

    fn small_uvpoly() -> impl Strategy<Value = UVPoly> {
        proptest::collection::vec((0u32..4, 0u32..4), 0..6)
            .prop_map(|v| v.into_iter().map(|(u, w)| UVTerm::new(u, w)).collect())
    }

    proptest! {
        #[test]
        fn alternating_poly_shape(steps in proptest::collection::vec(1u32..6, 0..5)) {
            let mut seq = steps.clone();
            seq.extend(steps.iter().rev());
            let p = symmetric_alternating_poly(&seq).unwrap();
            prop_assert_eq!(p.num_terms(), seq.len() + 1);
            for (k, (_, c)) in p.terms().enumerate() {
                prop_assert_eq!(c, if k % 2 == 0 { 1 } else { -1 });
            }
        }

        #[test]
        fn exact_division_recovers_factor(a in small_laurent(), b in small_laurent()) {
            prop_assume!(!b.is_zero());
            let prod = &a * &b;
            prop_assert_eq!(laurent_div_exact(&prod, &b).unwrap(), a);
        }

        #[test]
        fn laurent_ring_laws(a in small_laurent(), b in small_laurent(), c in small_laurent()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        }

        #[test]
        fn uvpoly_addition_is_involutive(p in small_uvpoly(), q in small_uvpoly()) {
            prop_assert!((&p + &p).is_zero());
            prop_assert_eq!(&(&p + &q) + &q, p.clone());
        }

        #[test]
        fn uvpoly_leibniz(p in small_uvpoly(), q in small_uvpoly()) {
            let lhs = p.mul(&q).d_du();
            let rhs = &p.d_du().mul(&q) + &p.mul(&q.d_du());
            prop_assert_eq!(lhs, rhs);
        }
    }
}
