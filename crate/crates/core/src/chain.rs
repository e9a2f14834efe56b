//! Free graded chain complexes over `F₂[U,V]` (bigraded) and `F₂[U]`.
//!
//! A complex is an ordered list of generators with gradings together with a
//! differential [`Map`]. Maps store, for each source generator, its image as
//! a sparse row of polynomials indexed by target generator. A map may be
//! *skew*: then it is extended to monomial multiples by
//! `f(m·x) = conj(m)·f(x)`, where `conj` swaps `U` and `V`.
//!
//! Every map in the crate is homogeneous. For a map of degree `δ`, a term
//! `m·y` of `f(x)` satisfies
//!
//! ```text
//! gr(y) + gr(m) = gr(x) + δ          (plain maps)
//! gr(y) + gr(m) = twist(gr(x)) + δ   (skew maps)
//! ```
//!
//! with `gr(U) = (-2, 0)`, `gr(V) = (0, -2)` over `F₂[U,V]` and
//! `gr(U) = -2` over `F₂[U]`. Consequently each matrix entry is a single
//! monomial fixed by the gradings, which the linear algebra exploits.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::gf2::{BitVec, Echelon};
use crate::ring::{F2Poly, Monomial, UTerm, UVPoly, UVTerm};

/// Grading group of a base ring.
pub trait Grading:
    Copy
    + Eq
    + Ord
    + Hash
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Neg<Output = Self>
    + 'static
{
}

impl Grading for i64 {}

/// The `(gr_w, gr_z)` bigrading.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct BiGrading {
    pub w: i64,
    pub z: i64,
}

impl BiGrading {
    pub const fn new(w: i64, z: i64) -> Self {
        Self { w, z }
    }

    /// Alexander grading `(gr_w - gr_z) / 2`, if integral.
    pub fn alexander(self) -> Option<i64> {
        let d = self.w - self.z;
        (d % 2 == 0).then_some(d / 2)
    }
}

impl Add for BiGrading {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.w + o.w, self.z + o.z)
    }
}

impl Sub for BiGrading {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.w - o.w, self.z - o.z)
    }
}

impl Neg for BiGrading {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.w, -self.z)
    }
}

impl fmt::Display for BiGrading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.w, self.z)
    }
}

impl Grading for BiGrading {}

/// A base ring: `F₂[U,V]` ([`UV`]) or `F₂[U]` ([`U`]).
pub trait BaseRing: Copy + fmt::Debug + Default + PartialEq + Eq + Send + Sync + 'static {
    type Mono: Monomial + fmt::Display;
    type Gr: Grading;
    /// Ring tag used by the text format.
    const TAG: &'static str;
    /// Whether involutions over this ring are skew-equivariant.
    const SKEW_INVOLUTION: bool;

    /// Degree of the differential.
    fn d_degree() -> Self::Gr;
    fn mono_grading(m: Self::Mono) -> Self::Gr;
    /// The monomial whose grading is `g`, if there is one.
    fn mono_of_grading(g: Self::Gr) -> Option<Self::Mono>;
    /// The grading change under a skew map: swaps `gr_w` and `gr_z`.
    fn twist(g: Self::Gr) -> Self::Gr;
    /// `(k, k)` resp. `k`.
    fn diagonal(k: i64) -> Self::Gr;
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct UV;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct U;

impl BaseRing for UV {
    type Mono = UVTerm;
    type Gr = BiGrading;
    const TAG: &'static str = "F2[U,V]";
    const SKEW_INVOLUTION: bool = true;

    fn d_degree() -> BiGrading {
        BiGrading::new(-1, -1)
    }
    fn mono_grading(m: UVTerm) -> BiGrading {
        BiGrading::new(-2 * i64::from(m.u), -2 * i64::from(m.v))
    }
    fn mono_of_grading(g: BiGrading) -> Option<UVTerm> {
        if g.w > 0 || g.z > 0 || g.w % 2 != 0 || g.z % 2 != 0 {
            return None;
        }
        Some(UVTerm::new(u32::try_from(-g.w / 2).ok()?, u32::try_from(-g.z / 2).ok()?))
    }
    fn twist(g: BiGrading) -> BiGrading {
        BiGrading::new(g.z, g.w)
    }
    fn diagonal(k: i64) -> BiGrading {
        BiGrading::new(k, k)
    }
}

impl BaseRing for U {
    type Mono = UTerm;
    type Gr = i64;
    const TAG: &'static str = "F2[U]";
    const SKEW_INVOLUTION: bool = false;

    fn d_degree() -> i64 {
        -1
    }
    fn mono_grading(m: UTerm) -> i64 {
        -2 * i64::from(m.0)
    }
    fn mono_of_grading(g: i64) -> Option<UTerm> {
        if g > 0 || g % 2 != 0 {
            return None;
        }
        Some(UTerm(u32::try_from(-g / 2).ok()?))
    }
    fn twist(g: i64) -> i64 {
        g
    }
    fn diagonal(k: i64) -> i64 {
        k
    }
}

pub type Poly<R> = F2Poly<<R as BaseRing>::Mono>;

/// A named basis element with its grading.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator<G> {
    pub name: String,
    pub gr: G,
}

impl<G> Generator<G> {
    pub fn new(name: impl Into<String>, gr: G) -> Self {
        Self { name: name.into(), gr }
    }
}

/// A module map between free modules, stored row-per-source.
#[derive(Clone, PartialEq, Eq)]
pub struct Map<R: BaseRing> {
    n_tgt: usize,
    skew: bool,
    rows: Vec<BTreeMap<usize, Poly<R>>>,
}

impl<R: BaseRing> Map<R> {
    pub fn zero(n_src: usize, n_tgt: usize, skew: bool) -> Self {
        Self { n_tgt, skew, rows: vec![BTreeMap::new(); n_src] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n, false);
        for i in 0..n {
            m.add_term(i, i, R::Mono::one());
        }
        m
    }

    pub fn n_src(&self) -> usize {
        self.rows.len()
    }

    pub fn n_tgt(&self) -> usize {
        self.n_tgt
    }

    pub fn is_skew(&self) -> bool {
        self.skew
    }

    pub fn get(&self, src: usize, tgt: usize) -> Option<&Poly<R>> {
        self.rows[src].get(&tgt)
    }

    /// The image of source generator `src` as `target ↦ coefficient`.
    pub fn row(&self, src: usize) -> &BTreeMap<usize, Poly<R>> {
        &self.rows[src]
    }

    pub fn add_term(&mut self, src: usize, tgt: usize, m: R::Mono) {
        assert!(tgt < self.n_tgt, "target index {tgt} out of range");
        let e = self.rows[src].entry(tgt).or_default();
        e.toggle(m);
        if e.is_zero() {
            self.rows[src].remove(&tgt);
        }
    }

    pub fn add_poly(&mut self, src: usize, tgt: usize, p: &Poly<R>) {
        for m in p.terms() {
            self.add_term(src, tgt, m);
        }
    }

    /// All nonzero entries as `(source, target, coefficient)`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Poly<R>)> + '_ {
        self.rows.iter().enumerate().flat_map(|(s, row)| row.iter().map(move |(&t, p)| (s, t, p)))
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_empty())
    }

    /// The composite "first `self`, then `g`", i.e. `g ∘ self`.
    pub fn then(&self, g: &Map<R>) -> Map<R> {
        assert_eq!(self.n_tgt, g.n_src(), "composition dimension mismatch");
        let mut out = Map::zero(self.n_src(), g.n_tgt, self.skew ^ g.skew);
        for (x, row) in self.rows.iter().enumerate() {
            for (&y, p) in row {
                let p = if g.skew { p.conj() } else { p.clone() };
                for (&z, q) in &g.rows[y] {
                    out.add_poly(x, z, &p.mul(q));
                }
            }
        }
        out
    }

    pub fn plus(&self, other: &Map<R>) -> Map<R> {
        assert_eq!(self.n_src(), other.n_src());
        assert_eq!(self.n_tgt, other.n_tgt);
        assert_eq!(self.skew, other.skew, "cannot add a skew and a plain map");
        let mut out = self.clone();
        for (s, t, p) in other.entries() {
            out.add_poly(s, t, p);
        }
        out
    }

    /// `a ⊗ b` on the tensor basis indexed `i·n_b + j`.
    pub fn kron(a: &Map<R>, b: &Map<R>) -> Map<R> {
        assert_eq!(a.skew, b.skew, "cannot tensor a skew and a plain map");
        let nb_src = b.n_src();
        let mut out = Map::zero(a.n_src() * nb_src, a.n_tgt * b.n_tgt, a.skew);
        for (i, ti, p) in a.entries() {
            for (j, tj, q) in b.entries() {
                out.add_poly(i * nb_src + j, ti * b.n_tgt + tj, &p.mul(q));
            }
        }
        out
    }

    /// The dual map on dual bases. Skew maps conjugate their entries.
    pub fn transpose(&self) -> Map<R> {
        let mut out = Map::zero(self.n_tgt, self.n_src(), self.skew);
        for (s, t, p) in self.entries() {
            let p = if self.skew { p.conj() } else { p.clone() };
            out.add_poly(t, s, &p);
        }
        out
    }

    /// Applies `f` to every entry.
    pub fn map_entries(&self, skew: bool, mut f: impl FnMut(&Poly<R>) -> Poly<R>) -> Map<R> {
        let mut out = Map::zero(self.n_src(), self.n_tgt, skew);
        for (s, t, p) in self.entries() {
            out.add_poly(s, t, &f(p));
        }
        out
    }

    /// Restriction to the given sources and targets (new index = position).
    pub fn submatrix(&self, srcs: &[usize], tgts: &[usize]) -> Map<R> {
        let tgt_pos: HashMap<usize, usize> = tgts.iter().enumerate().map(|(k, &t)| (t, k)).collect();
        let mut out = Map::zero(srcs.len(), tgts.len(), self.skew);
        for (k, &s) in srcs.iter().enumerate() {
            for (t, p) in &self.rows[s] {
                if let Some(&kt) = tgt_pos.get(t) {
                    out.add_poly(k, kt, p);
                }
            }
        }
        out
    }

    /// Entry pattern after setting every variable to 1: one row per source.
    pub fn rows_at_one(&self) -> Vec<BitVec> {
        self.rows
            .iter()
            .map(|row| BitVec::from_indices(self.n_tgt, row.iter().filter(|(_, p)| p.at_one()).map(|(&t, _)| t)))
            .collect()
    }

    /// Applies the map at `U = V = 1` to a vector indexed by sources.
    pub fn apply_at_one(&self, v: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.n_tgt);
        for s in v.ones() {
            for (&t, p) in &self.rows[s] {
                if p.at_one() {
                    out.toggle(t);
                }
            }
        }
        out
    }

    /// Checks the homogeneity rule for a map of degree `deg`; returns the
    /// first offending `(source, target, monomial)`.
    pub fn check_degree(
        &self,
        src: &[Generator<R::Gr>],
        tgt: &[Generator<R::Gr>],
        deg: R::Gr,
    ) -> std::result::Result<(), (usize, usize, R::Mono)> {
        for (s, t, p) in self.entries() {
            let expected = self.term_grading(src[s].gr, deg);
            for m in p.terms() {
                if tgt[t].gr + R::mono_grading(m) != expected {
                    return Err((s, t, m));
                }
            }
        }
        Ok(())
    }

    /// Grading of every term of the image of a generator of grading `g`.
    pub fn term_grading(&self, g: R::Gr, deg: R::Gr) -> R::Gr {
        if self.skew {
            R::twist(g) + deg
        } else {
            g + deg
        }
    }
}

impl<R: BaseRing> fmt::Debug for Map<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Map({}→{}{}) {{", self.n_src(), self.n_tgt, if self.skew { ", skew" } else { "" })?;
        for (s, t, p) in self.entries() {
            write!(f, " {s}→{t}: {p};")?;
        }
        write!(f, " }}")
    }
}

/// A free finitely generated graded complex over the base ring `R`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Complex<R: BaseRing> {
    gens: Vec<Generator<R::Gr>>,
    d: Map<R>,
}

pub type UVComplex = Complex<UV>;
pub type UComplex = Complex<U>;

impl<R: BaseRing> Complex<R> {
    /// Builds a complex, checking names, dimensions and the grading rule.
    /// `∂² = 0` is not checked here; see [`d_squared_is_zero`].
    pub fn new(gens: Vec<Generator<R::Gr>>, d: Map<R>) -> Result<Self> {
        check_names(&gens)?;
        if d.n_src() != gens.len() || d.n_tgt() != gens.len() {
            return Err(Error::invalid("differential size does not match generator count"));
        }
        if d.is_skew() {
            return Err(Error::invalid("differential must be equivariant"));
        }
        if let Err((s, t, m)) = d.check_degree(&gens, &gens, R::d_degree()) {
            return Err(Error::invalid(format!(
                "differential term {} -> {m}·{} violates the grading rule",
                gens[s].name, gens[t].name
            )));
        }
        Ok(Self { gens, d })
    }

    /// Builds from `(name, grading)` pairs and `(from, to, monomial)` terms.
    pub fn from_terms(gens: Vec<(String, R::Gr)>, terms: &[(usize, usize, R::Mono)]) -> Result<Self> {
        let n = gens.len();
        let mut d = Map::zero(n, n, false);
        for &(s, t, m) in terms {
            if s >= n || t >= n {
                return Err(Error::invalid("differential term index out of range"));
            }
            d.add_term(s, t, m);
        }
        Self::new(gens.into_iter().map(|(n, g)| Generator::new(n, g)).collect(), d)
    }

    pub fn empty() -> Self {
        Self { gens: Vec::new(), d: Map::zero(0, 0, false) }
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn generators(&self) -> &[Generator<R::Gr>] {
        &self.gens
    }

    pub fn gr(&self, i: usize) -> R::Gr {
        self.gens[i].gr
    }

    pub fn name(&self, i: usize) -> &str {
        &self.gens[i].name
    }

    pub fn d(&self) -> &Map<R> {
        &self.d
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g.name == name)
    }

    pub fn d_squared_is_zero(&self) -> bool {
        self.d.then(&self.d).is_zero()
    }

    /// Tensor product over the base ring; generator `i·|other| + j` is named
    /// `a|b`.
    pub fn tensor(&self, other: &Complex<R>) -> Complex<R> {
        let mut gens = Vec::with_capacity(self.len() * other.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(Generator::new(format!("{}|{}", a.name, b.name), a.gr + b.gr));
            }
        }
        let d = Map::kron(&self.d, &Map::identity(other.len())).plus(&Map::kron(&Map::identity(self.len()), &other.d));
        Complex { gens, d }
    }

    /// The dual complex: gradings negated, differential transposed, names
    /// suffixed with `*`.
    pub fn dual(&self) -> Complex<R> {
        let gens = self.gens.iter().map(|g| Generator::new(dual_name(&g.name), -g.gr)).collect();
        Complex { gens, d: self.d.transpose() }
    }

    /// The complex with generators reordered: new generator `k` is old
    /// generator `order[k]`.
    pub fn permuted(&self, order: &[usize]) -> Complex<R> {
        Complex { gens: order.iter().map(|&i| self.gens[i].clone()).collect(), d: self.d.submatrix(order, order) }
    }

    /// Same complex with every grading shifted by `s`.
    pub fn shifted(&self, s: R::Gr) -> Complex<R> {
        Complex {
            gens: self.gens.iter().map(|g| Generator::new(g.name.clone(), g.gr + s)).collect(),
            d: self.d.clone(),
        }
    }

    pub fn renamed(&self, names: Vec<String>) -> Result<Complex<R>> {
        if names.len() != self.len() {
            return Err(Error::invalid("wrong number of names"));
        }
        let gens: Vec<_> = names.into_iter().zip(&self.gens).map(|(n, g)| Generator::new(n, g.gr)).collect();
        check_names(&gens)?;
        Ok(Complex { gens, d: self.d.clone() })
    }
}

fn dual_name(name: &str) -> String {
    match name.strip_suffix('*') {
        Some(base) if !base.is_empty() => base.to_string(),
        _ => format!("{name}*"),
    }
}

pub(crate) fn check_names<G>(gens: &[Generator<G>]) -> Result<()> {
    let mut seen = std::collections::HashSet::new();
    for g in gens {
        if g.name.is_empty() || g.name.chars().any(char::is_whitespace) {
            return Err(Error::invalid(format!("invalid generator name {:?}", g.name)));
        }
        if !seen.insert(g.name.as_str()) {
            return Err(Error::invalid(format!("duplicate generator name {}", g.name)));
        }
    }
    Ok(())
}

pub fn d_squared_is_zero<R: BaseRing>(c: &Complex<R>) -> bool {
    c.d_squared_is_zero()
}

/// `(Φ, Ψ)`: the formal derivatives of the differential in `U` and `V`.
pub fn derivative_maps(c: &UVComplex) -> (Map<UV>, Map<UV>) {
    (c.d.map_entries(false, UVPoly::d_du), c.d.map_entries(false, UVPoly::d_dv))
}

/// Degree of `Φ`; `Ψ` has the twisted degree.
pub const PHI_DEGREE: BiGrading = BiGrading::new(1, -1);
pub const PSI_DEGREE: BiGrading = BiGrading::new(-1, 1);

/// Repeatedly cancels unit differential entries, transporting `carried`
/// maps (endomorphisms of the complex) along the homotopy equivalence.
///
/// The pivot is always the lexicographically first `(source, target)` pair
/// whose entry is exactly `1`. Surviving generators keep their names and
/// relative order.
pub fn cancel_reduce<R: BaseRing>(c: &Complex<R>, carried: &[Map<R>]) -> (Complex<R>, Vec<Map<R>>) {
    let mut gens = c.gens.clone();
    let mut d = c.d.clone();
    let mut maps: Vec<Map<R>> = carried.to_vec();
    for m in &maps {
        assert!(m.n_src() == gens.len() && m.n_tgt() == gens.len(), "carried map size mismatch");
    }
    loop {
        let pivot = d.entries().find(|(_, _, p)| p.is_one()).map(|(s, t, _)| (s, t));
        let Some((x, y)) = pivot else { break };
        let keep: Vec<usize> = (0..gens.len()).filter(|&k| k != x && k != y).collect();
        let n = gens.len();
        // incl(a) = a + ∂(a,y)·x  and  π(y) = Σ_b ∂(x,b)·b, π(x) = 0.
        let mut incl = Map::<R>::zero(keep.len(), n, false);
        for (k, &a) in keep.iter().enumerate() {
            incl.add_term(k, a, R::Mono::one());
            if let Some(p) = d.get(a, y) {
                incl.add_poly(k, x, p);
            }
        }
        let pos: HashMap<usize, usize> = keep.iter().enumerate().map(|(k, &a)| (a, k)).collect();
        let mut proj = Map::<R>::zero(n, keep.len(), false);
        for (&a, &k) in &pos {
            proj.add_term(a, k, R::Mono::one());
        }
        for (&b, p) in d.row(x) {
            if let Some(&k) = pos.get(&b) {
                proj.add_poly(y, k, p);
            }
        }
        d = incl.then(&d).then(&proj);
        maps = maps.iter().map(|m| incl.then(m).then(&proj)).collect();
        gens = keep.iter().map(|&k| gens[k].clone()).collect();
    }
    (Complex { gens, d }, maps)
}

/// The U-nontorsion part of homology of a complex over `F₂[U]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerClass {
    /// Rank of `U⁻¹H` over `F₂[U,U⁻¹]`.
    pub rank: usize,
    /// Largest grading of a cycle whose localized class is nonzero.
    pub top_grading: Option<i64>,
    /// Such a cycle: the generators `x` appearing as `U^k x` in it.
    pub representative: BitVec,
}

/// Computes the localized tower of `c`.
///
/// Localized homology is the homology of `c` at `U = 1`. A homogeneous
/// chain of grading `g` is determined by its `U = 1` image, supported on
/// generators of grading `≥ g` with the parity of `g`. The top grading is the
/// first `g`, scanning down from the maximal generator grading, at which such
/// chains contain a cycle that is not a boundary at `U = 1`.
pub fn localized_tower(c: &UComplex) -> TowerClass {
    let n = c.len();
    let d1 = c.d.rows_at_one();
    let boundaries = Echelon::from_rows(n, d1.iter().cloned());
    let rank = n - 2 * boundaries.rank();
    let none = TowerClass { rank, top_grading: None, representative: BitVec::zeros(n) };
    if rank == 0 {
        return none;
    }
    let g_max = c.gens.iter().map(|g| g.gr).max().unwrap_or(0);
    let g_min = c.gens.iter().map(|g| g.gr).min().unwrap_or(0);
    let mut g = g_max;
    while g >= g_min - 1 {
        let support: Vec<usize> = (0..n).filter(|&i| c.gr(i) >= g && (c.gr(i) - g).rem_euclid(2) == 0).collect();
        // Cycles supported on `support`: kernel of ∂ restricted to it.
        let cols: Vec<BitVec> = support.iter().map(|&i| d1[i].clone()).collect();
        let ker = kernel_of_columns(n, &cols);
        for k in ker {
            let z = BitVec::from_indices(n, k.ones().map(|j| support[j]));
            if !boundaries.contains(&z) {
                return TowerClass { rank, top_grading: Some(g), representative: z };
            }
        }
        g -= 1;
    }
    none
}

/// Kernel of the linear map sending basis vector `j` to `cols[j]` (each of
/// length `n`), as vectors over the column indices.
pub(crate) fn kernel_of_columns(n: usize, cols: &[BitVec]) -> Vec<BitVec> {
    let k = cols.len();
    // Transpose to rows of the matrix with columns `cols`.
    let mut rows = vec![BitVec::zeros(k); n];
    for (j, col) in cols.iter().enumerate() {
        for i in col.ones() {
            rows[i].toggle(j);
        }
    }
    crate::gf2::nullspace(k, &rows)
}

/// The exponent `k ≥ 0` making `x + (UV)^k y` homogeneous, for monomial
/// multiples `x = m_x·g_x`, `y = m_y·g_y` of generators of `c`.
pub fn homogenize_pair(c: &UVComplex, x: (UVTerm, usize), y: (UVTerm, usize)) -> Result<u32> {
    let gx = c.gr(x.1) + UV::mono_grading(x.0);
    let gy = c.gr(y.1) + UV::mono_grading(y.0);
    let diff = gy - gx;
    if diff.w != diff.z || diff.w % 2 != 0 {
        return Err(Error::NotHomogenizable(format!(
            "bigradings {gx} and {gy} differ by {diff}, which is not a multiple of (2, 2)"
        )));
    }
    if diff.w < 0 {
        return Err(Error::NotHomogenizable(format!("the required power of UV is negative ({})", diff.w / 2)));
    }
    u32::try_from(diff.w / 2).map_err(|_| Error::NotHomogenizable("exponent overflow".into()))
}
