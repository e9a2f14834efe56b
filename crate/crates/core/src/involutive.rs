//! Complexes with involutions.
//!
//! An [`IotaKComplex`] is a complex over `F₂[U,V]` with a skew-equivariant
//! `ι_K` that swaps the two gradings. An [`IotaComplex`] is a complex over
//! `F₂[U]` with a grading-preserving `ι`. Both are [`Involutive`] values;
//! the relations they must satisfy are checked by [`verify_involution`].

use std::fmt;

use crate::chain::{derivative_maps, BaseRing, BiGrading, Complex, Generator, Map, UComplex, UVComplex, U, UV};
use crate::error::{Error, Result};
use crate::gf2::{self, BitVec};
use crate::linsys::{Scope, System};
use crate::ring::{Monomial, UTerm, UVTerm};

/// A complex together with an involution.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Involutive<R: BaseRing> {
    complex: Complex<R>,
    iota: Map<R>,
}

pub type IotaKComplex = Involutive<UV>;
pub type IotaComplex = Involutive<U>;

impl<R: BaseRing> Involutive<R> {
    /// Pairs a complex with an involution after checking its shape and
    /// grading. The defining relations are checked by
    /// [`verify_involution`].
    pub fn new(complex: Complex<R>, iota: Map<R>) -> Result<Self> {
        let n = complex.len();
        if iota.n_src() != n || iota.n_tgt() != n {
            return Err(Error::invalid("involution size does not match generator count"));
        }
        if iota.is_skew() != R::SKEW_INVOLUTION {
            return Err(Error::invalid(if R::SKEW_INVOLUTION {
                "the involution of a knot complex must be skew-equivariant"
            } else {
                "the involution of an iota-complex must be equivariant"
            }));
        }
        if let Err((s, t, m)) = iota.check_degree(complex.generators(), complex.generators(), R::diagonal(0)) {
            return Err(Error::invalid(format!(
                "involution term {} -> {m}·{} violates the grading rule",
                complex.name(s),
                complex.name(t)
            )));
        }
        Ok(Self { complex, iota })
    }

    pub fn complex(&self) -> &Complex<R> {
        &self.complex
    }

    pub fn iota(&self) -> &Map<R> {
        &self.iota
    }

    pub fn len(&self) -> usize {
        self.complex.len()
    }

    pub fn is_empty(&self) -> bool {
        self.complex.is_empty()
    }

    /// Reorders generators; new generator `k` is old generator `order[k]`.
    pub fn permuted(&self, order: &[usize]) -> Self {
        Self { complex: self.complex.permuted(order), iota: self.iota.submatrix(order, order) }
    }

    pub fn shifted(&self, s: R::Gr) -> Self {
        Self { complex: self.complex.shifted(s), iota: self.iota.clone() }
    }

    pub fn renamed(&self, names: Vec<String>) -> Result<Self> {
        Ok(Self { complex: self.complex.renamed(names)?, iota: self.iota.clone() })
    }

    /// The complex with the identity involution.
    pub fn trivial_involution(complex: Complex<R>) -> Self {
        let n = complex.len();
        let iota =
            if R::SKEW_INVOLUTION { Map::<R>::identity(n).map_entries(true, |p| p.clone()) } else { Map::identity(n) };
        Self { complex, iota }
    }

    /// A single generator of grading zero with `∂ = 0` and `ι = id`.
    pub fn unit() -> Self {
        let c = Complex::new(vec![Generator::new("1", R::diagonal(0))], Map::zero(1, 1, false))
            .expect("unit complex is well formed");
        Self::trivial_involution(c)
    }

    /// Reduces by cancelling unit differential entries, carrying the
    /// involution along.
    pub fn cancel_reduce(&self) -> Self {
        let (complex, maps) = crate::chain::cancel_reduce(&self.complex, std::slice::from_ref(&self.iota));
        Self { complex, iota: maps.into_iter().next().expect("one carried map") }
    }

    /// `ι∂ + ∂ι`.
    pub fn chain_defect(&self) -> Map<R> {
        let d = self.complex.d();
        self.iota.then(d).plus(&d.then(&self.iota))
    }
}

/// `ω = id + ι` of an ι-complex.
pub fn omega(x: &IotaComplex) -> Map<U> {
    Map::identity(x.len()).plus(x.iota())
}

/// Whether relations are required exactly or modulo the maximal ideal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Mode {
    #[default]
    Strict,
    /// Over `F₂[U]`: modulo `im U`. Over `F₂[U,V]`: modulo `(U, V)`.
    Almost,
}

impl Mode {
    pub(crate) fn scope(self) -> Scope {
        match self {
            Mode::Strict => Scope::All,
            Mode::Almost => Scope::Constant,
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Strict => "strict",
            Mode::Almost => "almost",
        })
    }
}

/// A homotopy `H` witnessing `ι² + id (+ ΦΨ) = ∂H + H∂`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvolutionCertificate<R: BaseRing> {
    pub mode: Mode,
    pub homotopy: Map<R>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FailureKind {
    DSquaredNonzero,
    /// `ι∂ + ∂ι` is nonzero (strict) or has a constant entry (almost).
    NotChainMap,
    /// The square relation has no solution.
    NoHomotopy,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvolutionFailure<R: BaseRing> {
    pub kind: FailureKind,
    /// The map that could not be absorbed.
    pub residual: Map<R>,
}

impl<R: BaseRing> fmt::Display for InvolutionFailure<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match self.kind {
            FailureKind::DSquaredNonzero => "the differential does not square to zero",
            FailureKind::NotChainMap => "the involution does not commute with the differential",
            FailureKind::NoHomotopy => "the square of the involution is not homotopic to the required map",
        };
        write!(f, "{what}; residual {:?}", self.residual)
    }
}

/// The map `ι² + id`, plus `ΦΨ` for knot complexes.
fn square_defect<R: BaseRing>(x: &Involutive<R>, phi_psi: Option<Map<R>>) -> Map<R> {
    let mut k = x.iota.then(&x.iota).plus(&Map::identity(x.len()));
    if let Some(pp) = phi_psi {
        k = k.plus(&pp);
    }
    k
}

fn keep_in_scope<R: BaseRing>(m: &Map<R>, mode: Mode) -> Map<R> {
    match mode {
        Mode::Strict => m.clone(),
        Mode::Almost => m.map_entries(m.is_skew(), |p| p.map_terms(|t| t.is_one().then_some(t))),
    }
}

fn verify_generic<R: BaseRing>(
    x: &Involutive<R>,
    mode: Mode,
    phi_psi: Option<Map<R>>,
) -> std::result::Result<InvolutionCertificate<R>, InvolutionFailure<R>> {
    let d = x.complex.d();
    let dd = d.then(d);
    if !dd.is_zero() {
        return Err(InvolutionFailure { kind: FailureKind::DSquaredNonzero, residual: dd });
    }
    let defect = keep_in_scope(&x.chain_defect(), mode);
    if !defect.is_zero() {
        return Err(InvolutionFailure { kind: FailureKind::NotChainMap, residual: defect });
    }
    let target = square_defect(x, phi_psi);
    let gens = x.complex.generators();
    let mut sys = System::<R>::new();
    let h = sys.unknown(gens, gens, false, R::diagonal(1));
    let g = sys.group(mode.scope());
    sys.unknown_then(g, h, d);
    sys.then_unknown(g, d, h);
    sys.known(g, &target);
    match sys.solve() {
        Some(sol) => Ok(InvolutionCertificate { mode, homotopy: sol.map(h) }),
        None => Err(InvolutionFailure { kind: FailureKind::NoHomotopy, residual: keep_in_scope(&target, mode) }),
    }
}

/// Checks the defining relations of an involutive complex and returns the
/// homotopy.
pub trait VerifyInvolution: Sized {
    type Ring: BaseRing;
    fn verify_involution(
        &self,
        mode: Mode,
    ) -> std::result::Result<InvolutionCertificate<Self::Ring>, InvolutionFailure<Self::Ring>>;
    /// Re-checks a certificate by direct matrix arithmetic.
    fn check_certificate(&self, cert: &InvolutionCertificate<Self::Ring>) -> bool;
}

impl VerifyInvolution for IotaKComplex {
    type Ring = UV;
    fn verify_involution(&self, mode: Mode) -> std::result::Result<InvolutionCertificate<UV>, InvolutionFailure<UV>> {
        let (phi, psi) = derivative_maps(&self.complex);
        verify_generic(self, mode, Some(psi.then(&phi)))
    }

    fn check_certificate(&self, cert: &InvolutionCertificate<UV>) -> bool {
        let (phi, psi) = derivative_maps(&self.complex);
        check_generic(self, cert, Some(psi.then(&phi)))
    }
}

impl VerifyInvolution for IotaComplex {
    type Ring = U;
    fn verify_involution(&self, mode: Mode) -> std::result::Result<InvolutionCertificate<U>, InvolutionFailure<U>> {
        verify_generic(self, mode, None)
    }

    fn check_certificate(&self, cert: &InvolutionCertificate<U>) -> bool {
        check_generic(self, cert, None)
    }
}

fn check_generic<R: BaseRing>(x: &Involutive<R>, cert: &InvolutionCertificate<R>, phi_psi: Option<Map<R>>) -> bool {
    let d = x.complex.d();
    let h = &cert.homotopy;
    if h.n_src() != x.len() || h.n_tgt() != x.len() || h.is_skew() {
        return false;
    }
    let gens = x.complex.generators();
    if h.check_degree(gens, gens, R::diagonal(1)).is_err() {
        return false;
    }
    if !d.then(d).is_zero() || !keep_in_scope(&x.chain_defect(), cert.mode).is_zero() {
        return false;
    }
    let total = square_defect(x, phi_psi).plus(&h.then(d)).plus(&d.then(h));
    keep_in_scope(&total, cert.mode).is_zero()
}

pub fn verify_involution<X: VerifyInvolution>(
    x: &X,
    mode: Mode,
) -> std::result::Result<InvolutionCertificate<X::Ring>, InvolutionFailure<X::Ring>> {
    x.verify_involution(mode)
}

/// Tensor product of ι_K-complexes with involution
/// `(ι_A ⊗ ι_B) ∘ (id + Ψ_A ⊗ Φ_B)`.
pub fn tensor_iota_k(a: &IotaKComplex, b: &IotaKComplex) -> IotaKComplex {
    let complex = a.complex.tensor(&b.complex);
    let (_, psi_a) = derivative_maps(&a.complex);
    let (phi_b, _) = derivative_maps(&b.complex);
    let correction = Map::identity(complex.len()).plus(&Map::kron(&psi_a, &phi_b));
    let iota = correction.then(&Map::kron(&a.iota, &b.iota));
    Involutive { complex, iota }
}

/// Tensor product of ι-complexes with involution `ι₁ ⊗ ι₂`.
pub fn tensor_iota(a: &IotaComplex, b: &IotaComplex) -> IotaComplex {
    Involutive { complex: a.complex.tensor(&b.complex), iota: Map::kron(&a.iota, &b.iota) }
}

/// The dual: gradings negated, matrices transposed on the dual basis.
pub fn dual<R: BaseRing>(x: &Involutive<R>) -> Involutive<R> {
    Involutive { complex: x.complex.dual(), iota: x.iota.transpose() }
}

/// The Alexander-grading-zero subcomplex as an ι-complex over `F₂[U]`,
/// `U = 𝒰𝒱`.
///
/// Generator `x` contributes `𝒰^A x` (if `A(x) ≥ 0`) or `𝒱^{-A} x`, under
/// the same name, with grading `gr_w` of that monomial multiple.
pub fn a0_subcomplex(k: &IotaKComplex) -> Result<IotaComplex> {
    let gens = k.complex.generators();
    let mut lift = Vec::with_capacity(gens.len());
    let mut new_gens = Vec::with_capacity(gens.len());
    for g in gens {
        let a =
            g.gr.alexander()
                .ok_or_else(|| Error::invalid(format!("generator {} has a non-integral Alexander grading", g.name)))?;
        let mag = u32::try_from(a.unsigned_abs()).map_err(|_| Error::invalid("Alexander grading too large"))?;
        let m = if a >= 0 { UVTerm::new(mag, 0) } else { UVTerm::new(0, mag) };
        let gw = g.gr.w - 2 * i64::from(m.u);
        lift.push(m);
        new_gens.push(Generator::new(g.name.clone(), gw));
    }
    let restrict = |f: &Map<UV>, what: &str| -> Result<Map<U>> {
        let mut out = Map::<U>::zero(f.n_src(), f.n_tgt(), false);
        for (s, t, p) in f.entries() {
            let ms = if f.is_skew() { lift[s].conj() } else { lift[s] };
            for term in p.terms() {
                let prod = ms.mul(term);
                let mt = lift[t];
                let (du, dv) = (i64::from(prod.u) - i64::from(mt.u), i64::from(prod.v) - i64::from(mt.v));
                if du != dv || du < 0 {
                    return Err(Error::invalid(format!(
                        "{what} does not preserve the Alexander grading at {} -> {}",
                        gens[s].name, gens[t].name
                    )));
                }
                out.add_term(s, t, UTerm(du as u32));
            }
        }
        Ok(out)
    };
    let d = restrict(k.complex.d(), "the differential")?;
    let iota = restrict(&k.iota, "the involution")?;
    let complex = Complex::new(new_gens, d)?;
    Involutive::new(complex, iota)
}

/// An element of a knot complex: monomial multiples of generators.
pub type UVElement = Vec<(UVTerm, usize)>;

/// The ι_K-subcomplex spanned by the given homogeneous elements.
///
/// Each element is named by the caller. The differential and the involution
/// of every element must be combinations (with monomial coefficients) of
/// the given elements; otherwise an error names the first element whose
/// image leaves the span.
pub fn extract_subcomplex(k: &IotaKComplex, basis: &[(String, UVElement)]) -> Result<IotaKComplex> {
    let n = k.len();
    let mut rows: Vec<Map<UV>> = Vec::with_capacity(basis.len());
    let mut grs = Vec::with_capacity(basis.len());
    for (name, elt) in basis {
        let mut row = Map::<UV>::zero(1, n, false);
        let mut gr: Option<BiGrading> = None;
        for &(m, x) in elt {
            if x >= n {
                return Err(Error::invalid(format!("element {name} references a missing generator")));
            }
            let g = k.complex.gr(x) + UV::mono_grading(m);
            if gr.is_some_and(|h| h != g) {
                return Err(Error::invalid(format!("element {name} is not homogeneous")));
            }
            gr = Some(g);
            row.add_term(0, x, m);
        }
        let gr = gr.filter(|_| !row.is_zero()).ok_or_else(|| Error::invalid(format!("element {name} is zero")))?;
        rows.push(row);
        grs.push(gr);
    }
    // Independence at U = V = 1 implies independence over the ring.
    let at_one: Vec<BitVec> = rows.iter().map(|r| r.rows_at_one().remove(0)).collect();
    if gf2::rank(n, &at_one) != rows.len() {
        return Err(Error::invalid("subcomplex elements are linearly dependent"));
    }
    let m = basis.len();
    let mut d = Map::<UV>::zero(m, m, false);
    let mut iota = Map::<UV>::zero(m, m, true);
    for (i, row) in rows.iter().enumerate() {
        for (f, out, deg) in [(k.complex.d(), &mut d, UV::d_degree()), (&k.iota, &mut iota, BiGrading::new(0, 0))] {
            let image = row.then(f);
            let image_gr = if f.is_skew() { UV::twist(grs[i]) } else { grs[i] } + deg;
            let coeffs = express(&image, image_gr, &rows, &grs).ok_or_else(|| {
                Error::invalid(format!("the image of {} leaves the span of the given elements", basis[i].0))
            })?;
            for (j, mono) in coeffs {
                out.add_term(i, j, mono);
            }
        }
    }
    let gens = basis.iter().zip(&grs).map(|((name, _), &g)| Generator::new(name.clone(), g)).collect();
    Involutive::new(Complex::new(gens, d)?, iota)
}

/// Writes the one-row map `v` (all terms of grading `gr`) as
/// `Σ mono_j · rows[j]`.
fn express(v: &Map<UV>, gr: BiGrading, rows: &[Map<UV>], grs: &[BiGrading]) -> Option<Vec<(usize, UVTerm)>> {
    if v.is_zero() {
        return Some(Vec::new());
    }
    let cands: Vec<(usize, UVTerm)> =
        (0..rows.len()).filter_map(|j| UV::mono_of_grading(gr - grs[j]).map(|m| (j, m))).collect();
    let mut keys: Vec<(usize, UVTerm)> = Vec::new();
    let key_of = |t: usize, m: UVTerm, keys: &mut Vec<(usize, UVTerm)>| match keys.iter().position(|&k| k == (t, m)) {
        Some(p) => p,
        None => {
            keys.push((t, m));
            keys.len() - 1
        }
    };
    let mut cols: Vec<Vec<usize>> = Vec::new();
    for &(j, m) in &cands {
        let mut col = Vec::new();
        for (_, t, p) in rows[j].entries() {
            for term in p.terms() {
                col.push(key_of(t, term.mul(m), &mut keys));
            }
        }
        cols.push(col);
    }
    let mut rhs = Vec::new();
    for (_, t, p) in v.entries() {
        for term in p.terms() {
            rhs.push(key_of(t, term, &mut keys));
        }
    }
    let nk = keys.len();
    let nc = cands.len();
    let mut eq_rows = vec![BitVec::zeros(nc); nk];
    for (c, col) in cols.iter().enumerate() {
        for &k in col {
            eq_rows[k].toggle(c);
        }
    }
    let mut b = vec![false; nk];
    for k in rhs {
        b[k] = !b[k];
    }
    let x = gf2::solve(nc, &eq_rows, &b)?;
    Some(x.ones().map(|c| cands[c]).collect())
}

/// Builds an ι_K-complex from named bigraded generators and term lists.
pub fn iota_k_from_terms(
    gens: Vec<(String, BiGrading)>,
    d: &[(usize, usize, UVTerm)],
    iota: &[(usize, usize, UVTerm)],
) -> Result<IotaKComplex> {
    let n = gens.len();
    let complex = UVComplex::from_terms(gens, d)?;
    let mut i = Map::<UV>::zero(n, n, true);
    for &(s, t, m) in iota {
        if s >= n || t >= n {
            return Err(Error::invalid("involution term index out of range"));
        }
        i.add_term(s, t, m);
    }
    Involutive::new(complex, i)
}

/// Builds an ι-complex from named graded generators and term lists.
pub fn iota_from_terms(
    gens: Vec<(String, i64)>,
    d: &[(usize, usize, u32)],
    iota: &[(usize, usize, u32)],
) -> Result<IotaComplex> {
    let n = gens.len();
    let dt: Vec<_> = d.iter().map(|&(s, t, k)| (s, t, UTerm(k))).collect();
    let complex = UComplex::from_terms(gens, &dt)?;
    let mut i = Map::<U>::zero(n, n, false);
    for &(s, t, k) in iota {
        if s >= n || t >= n {
            return Err(Error::invalid("involution term index out of range"));
        }
        i.add_term(s, t, UTerm(k));
    }
    Involutive::new(complex, i)
}
