//! Named constructions: torus knot Alexander polynomials, staircases, the
//! box complex and the fifteen-generator complex `E_n`.

pub mod fixtures;

use crate::chain::BiGrading;
use crate::error::{Error, Result};
use crate::involutive::{a0_subcomplex, iota_k_from_terms, tensor_iota_k, IotaComplex, IotaKComplex};
use crate::ring::{laurent_div_exact, symmetric_alternating_poly, LaurentPolynomial, UVTerm};

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// The Alexander polynomial `(t^{pq}-1)(t-1) / ((t^p-1)(t^q-1))` of the
/// torus knot `T(p,q)`.
pub fn torus_alexander(p: u32, q: u32) -> Result<LaurentPolynomial> {
    if p < 2 || q < 2 {
        return Err(Error::invalid(format!("torus knot parameters must be at least 2, got ({p}, {q})")));
    }
    if gcd(u64::from(p), u64::from(q)) != 1 {
        return Err(Error::invalid(format!("torus knot parameters ({p}, {q}) are not coprime")));
    }
    let (p, q) = (i64::from(p), i64::from(q));
    let num = &LaurentPolynomial::t_pow_minus_one(p * q) * &LaurentPolynomial::t_pow_minus_one(1);
    let den = &LaurentPolynomial::t_pow_minus_one(p) * &LaurentPolynomial::t_pow_minus_one(q);
    laurent_div_exact(&num, &den)
}

/// The step sequence `(1, 2n-1, 2, 2n-2, …, 2n-1, 1)` of `T(2n, 2n+1)`.
pub fn steps_2n_2n1(n: u32) -> Vec<u32> {
    (1..2 * n).flat_map(|i| [i, 2 * n - i]).collect()
}

/// The step sequence `(1, 2n-1, 1, 2n-1, 2, 2n-2, 2, 2n-2, …, 2n-1, 1, 2n-1, 1)`
/// of `T(2n, 4n+1)`.
pub fn steps_2n_4n1(n: u32) -> Vec<u32> {
    (1..2 * n).flat_map(|i| [i, 2 * n - i, i, 2 * n - i]).collect()
}

/// A symmetric sequence of positive integers of even length.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StaircaseSpec {
    steps: Vec<u32>,
}

impl StaircaseSpec {
    pub fn new(steps: Vec<u32>) -> Result<Self> {
        if !steps.len().is_multiple_of(2) {
            return Err(Error::invalid(format!("staircase needs an even number of steps, got {}", steps.len())));
        }
        if steps.contains(&0) {
            return Err(Error::invalid("staircase steps must be positive"));
        }
        if steps.iter().ne(steps.iter().rev()) {
            return Err(Error::invalid(format!("staircase steps {steps:?} are not symmetric")));
        }
        Ok(Self { steps })
    }

    /// Reads the steps off an alternating polynomial `1 - t^{c_1} + …`.
    pub fn from_polynomial(p: &LaurentPolynomial) -> Result<Self> {
        let steps = p.alternating_steps().ok_or_else(|| {
            Error::NotAnLSpaceKnot(format!("{p} does not have alternating ±1 coefficients starting and ending with +1"))
        })?;
        Self::new(steps)
    }

    pub fn steps(&self) -> &[u32] {
        &self.steps
    }

    pub fn polynomial(&self) -> LaurentPolynomial {
        symmetric_alternating_poly(&self.steps).expect("validated steps")
    }
}

/// The staircase with generators named `x_p` (sources) and `y_p` (targets).
pub fn staircase(spec: &StaircaseSpec) -> IotaKComplex {
    staircase_named(spec, "x", "y")
}

pub fn staircase_from_polynomial(p: &LaurentPolynomial) -> Result<IotaKComplex> {
    Ok(staircase(&StaircaseSpec::from_polynomial(p)?))
}

/// The staircase of `spec` with positions `-k..=k`, `2k` the number of
/// steps. Positions of the parity of `k` are the corners `y_p`; the others
/// are `x_p` with `∂x_p = V^{c_{k+p}} y_{p-1} + U^{c_{k+p+1}} y_{p+1}`.
///
/// Gradings are normalized so that `gr_w(y_k) = 0` and `gr_z(y_{-k}) = 0`;
/// `ι_K` is the reflection `p ↦ -p`.
pub fn staircase_named(spec: &StaircaseSpec, src: &str, tgt: &str) -> IotaKComplex {
    let c = &spec.steps;
    let len = c.len() + 1;
    let k = (c.len() / 2) as i64;
    let mut gw = vec![0i64; len];
    let mut gz = vec![0i64; len];
    let mut d = Vec::new();
    for i in (1..len).step_by(2) {
        let (cv, cu) = (c[i - 1], c[i]);
        gw[i] = gw[i - 1] + 1;
        gz[i] = gz[i - 1] + 1 - 2 * i64::from(cv);
        gw[i + 1] = gw[i] - 1 + 2 * i64::from(cu);
        gz[i + 1] = gz[i] - 1;
        d.push((i, i - 1, UVTerm::new(0, cv)));
        d.push((i, i + 1, UVTerm::new(cu, 0)));
    }
    let (w0, z0) = (gw[len - 1], gz[0]);
    let gens = (0..len)
        .map(|i| {
            let p = i as i64 - k;
            let prefix = if i % 2 == 1 { src } else { tgt };
            (format!("{prefix}{p}"), BiGrading::new(gw[i] - w0, gz[i] - z0))
        })
        .collect();
    let iota: Vec<_> = (0..len).map(|i| (i, len - 1 - i, UVTerm::new(0, 0))).collect();
    iota_k_from_terms(gens, &d, &iota).expect("staircase construction is well formed")
}

/// The right-handed trefoil with generators `r0`, `s1`, `s-1`.
pub fn trefoil() -> IotaKComplex {
    staircase_named(&StaircaseSpec::new(vec![1, 1]).expect("valid"), "r", "s")
}

/// `𝒞_n`, the staircase of `T(2n, 2n+1)`.
pub fn cn(n: u32) -> Result<IotaKComplex> {
    staircase_from_polynomial(&torus_alexander(2 * n, 2 * n + 1)?)
}

/// `𝒟_n`, the staircase of `T(2n, 4n+1)`, with generators `w_k`, `z_l`.
pub fn dn(n: u32) -> Result<IotaKComplex> {
    let spec = StaircaseSpec::from_polynomial(&torus_alexander(2 * n, 4 * n + 1)?)?;
    Ok(staircase_named(&spec, "w", "z"))
}

/// The box complex `ℬ_n` with generators `v, z0, z-1, z1, w`.
///
/// The defining relations only hold for odd `n`; even `n` is built anyway
/// and logged as a warning.
pub fn box_complex(n: u32) -> Result<IotaKComplex> {
    if n == 0 {
        return Err(Error::invalid("box complex needs n >= 1"));
    }
    if n.is_multiple_of(2) {
        log::warn!("box complex with even n = {n}: the involution relation is only expected for odd n");
    }
    let m = i64::from(n);
    let gens = vec![
        ("v".to_string(), BiGrading::new(0, 0)),
        ("z0".to_string(), BiGrading::new(0, 0)),
        ("z-1".to_string(), BiGrading::new(-1, 2 * m - 1)),
        ("z1".to_string(), BiGrading::new(2 * m - 1, -1)),
        ("w".to_string(), BiGrading::new(2 * m - 2, 2 * m - 2)),
    ];
    let (v, z0, zm, zp, w) = (0, 1, 2, 3, 4);
    let one = UVTerm::new(0, 0);
    let d = [
        (z0, zm, UVTerm::new(0, n)),
        (z0, zp, UVTerm::new(n, 0)),
        (zm, w, UVTerm::new(n, 0)),
        (zp, w, UVTerm::new(0, n)),
    ];
    let iota = [
        (v, v, one),
        (v, w, UVTerm::new(n - 1, n - 1)),
        (z0, z0, one),
        (z0, v, one),
        (zm, zp, one),
        (zp, zm, one),
        (w, w, one),
    ];
    iota_k_from_terms(gens, &d, &iota)
}

/// `E_n = A₀(ℬ_n ⊗ T(2,3))`, the fifteen-generator ι-complex.
pub fn en_complex(n: u32) -> Result<IotaComplex> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::invalid(format!("E_n needs odd n >= 3, got {n}")));
    }
    let e = a0_subcomplex(&tensor_iota_k(&box_complex(n)?, &trefoil()))?;
    assert_eq!(e.len(), 15, "E_n has fifteen generators");
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{d_squared_is_zero, derivative_maps, Map, UV};
    use crate::involutive::{verify_involution, Mode, VerifyInvolution};
    use crate::ring::UVPoly;

    #[test]
    fn trefoil_polynomial_and_complex() {
        assert_eq!(torus_alexander(2, 3).unwrap(), LaurentPolynomial::from_coeffs(&[1, -1, 1]));
        let t = trefoil();
        let names: Vec<_> = t.complex().generators().iter().map(|g| (g.name.as_str(), g.gr)).collect();
        assert_eq!(
            names,
            vec![("s-1", BiGrading::new(-2, 0)), ("r0", BiGrading::new(-1, -1)), ("s1", BiGrading::new(0, -2))]
        );
        let d = t.complex().d();
        assert_eq!(d.get(1, 0).unwrap(), &UVPoly::monomial(UVTerm::new(0, 1)));
        assert_eq!(d.get(1, 2).unwrap(), &UVPoly::monomial(UVTerm::new(1, 0)));
    }

    #[test]
    fn torus_polynomials_match_sequences() {
        for n in [1, 2, 3, 5, 7] {
            assert_eq!(
                torus_alexander(2 * n, 2 * n + 1).unwrap(),
                symmetric_alternating_poly(&steps_2n_2n1(n)).unwrap()
            );
        }
        for n in [3, 5] {
            assert_eq!(
                torus_alexander(2 * n, 4 * n + 1).unwrap(),
                symmetric_alternating_poly(&steps_2n_4n1(n)).unwrap()
            );
        }
        assert_eq!(steps_2n_2n1(3), vec![1, 5, 2, 4, 3, 3, 4, 2, 5, 1]);
        assert_eq!(steps_2n_4n1(3), vec![1, 5, 1, 5, 2, 4, 2, 4, 3, 3, 3, 3, 4, 2, 4, 2, 5, 1, 5, 1]);
    }

    #[test]
    fn torus_alexander_rejects_bad_input() {
        assert!(torus_alexander(4, 6).is_err());
        assert!(torus_alexander(1, 3).is_err());
    }

    #[test]
    fn staircase_rejects_non_l_space_polynomial() {
        let p = LaurentPolynomial::from_coeffs(&[1, 1]);
        assert!(matches!(staircase_from_polynomial(&p), Err(Error::NotAnLSpaceKnot(_))));
        assert!(StaircaseSpec::new(vec![1, 2]).is_err());
    }

    #[test]
    fn c3_matches_figure() {
        let c = cn(3).unwrap();
        assert_eq!(c.len(), 11);
        let i = |s: &str| c.complex().index_of(s).unwrap();
        // ∂x0 = V^3 y-1 + U^3 y1 and ∂x-4 = V y-5 + U^5 y-3.
        let d = c.complex().d();
        assert_eq!(d.get(i("x0"), i("y-1")).unwrap(), &UVPoly::monomial(UVTerm::new(0, 3)));
        assert_eq!(d.get(i("x0"), i("y1")).unwrap(), &UVPoly::monomial(UVTerm::new(3, 0)));
        assert_eq!(d.get(i("x-4"), i("y-5")).unwrap(), &UVPoly::monomial(UVTerm::new(0, 1)));
        assert_eq!(d.get(i("x-4"), i("y-3")).unwrap(), &UVPoly::monomial(UVTerm::new(5, 0)));
        assert!(verify_involution(&c, Mode::Strict).is_ok());
    }

    #[test]
    fn staircase_gradings_are_symmetric() {
        for steps in [vec![1, 1], vec![1, 3, 3, 1], vec![2, 1, 1, 2], steps_2n_4n1(3)] {
            let s = staircase(&StaircaseSpec::new(steps).unwrap());
            let g = s.complex().generators();
            let n = g.len();
            for i in 0..n {
                assert_eq!(g[i].gr.w, g[n - 1 - i].gr.z);
            }
            assert!(d_squared_is_zero(s.complex()));
            assert_eq!(g[n / 2].gr.alexander(), Some(0));
        }
    }

    #[test]
    fn dn_naming() {
        let d = dn(3).unwrap();
        assert_eq!(d.len(), 21);
        let i = |s: &str| d.complex().index_of(s).unwrap();
        assert_eq!(d.complex().d().get(i("w-1"), i("z-2")).unwrap(), &UVPoly::monomial(UVTerm::new(0, 3)));
        assert_eq!(d.complex().d().get(i("w-1"), i("z0")).unwrap(), &UVPoly::monomial(UVTerm::new(3, 0)));
    }

    #[test]
    fn box_complex_examples() {
        let b = box_complex(3).unwrap();
        let c = b.complex();
        assert_eq!(c.gr(c.index_of("z1").unwrap()), BiGrading::new(5, -1));
        assert_eq!(c.gr(c.index_of("w").unwrap()), BiGrading::new(4, 4));
        assert_eq!(c.gr(c.index_of("z-1").unwrap()).alexander(), Some(-3));
        assert_eq!(c.gr(c.index_of("z1").unwrap()).alexander(), Some(3));
        let cert = verify_involution(&b, Mode::Strict).unwrap();
        assert!(cert.homotopy.is_zero());
        let (phi, psi) = derivative_maps(c);
        assert_eq!(psi.get(1, 2).unwrap(), &UVPoly::monomial(UVTerm::new(0, 2)));
        assert_eq!(phi.get(1, 3).unwrap(), &UVPoly::monomial(UVTerm::new(2, 0)));

        let b1 = box_complex(1).unwrap();
        assert_eq!(b1.complex().gr(4), BiGrading::new(0, 0));
        assert_eq!(b1.iota().get(0, 4).unwrap(), &UVPoly::one());
        assert!(box_complex(0).is_err());
    }

    #[test]
    fn box_without_w_term_fails() {
        let b = box_complex(3).unwrap();
        let mut iota = b.iota().clone();
        iota.add_term(0, 4, UVTerm::new(2, 2));
        let broken = crate::involutive::Involutive::new(b.complex().clone(), iota).unwrap();
        let err = broken.verify_involution(Mode::Strict).unwrap_err();
        let mut expected = Map::<UV>::zero(5, 5, false);
        expected.add_term(1, 4, UVTerm::new(2, 2));
        assert_eq!(err.residual, expected);
    }

    #[test]
    fn en_basics() {
        assert!(en_complex(4).is_err());
        let e = en_complex(3).unwrap();
        assert_eq!(e.len(), 15);
        assert!(verify_involution(&e, Mode::Almost).is_ok());
    }
}
