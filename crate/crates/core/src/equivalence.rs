//! Standard complexes and the search for (almost) local maps.
//!
//! A local map `F: C → D` is found as a solution of one linear system over
//! F₂ whose unknowns are the entries of `F` and of a homotopy `H`:
//!
//! * `∂F + F∂ = 0` (or only modulo `U`, see [`ChainCondition`]),
//! * `Fι + ι'F + ∂H + H∂ = 0`, exactly or modulo `U` depending on [`Mode`],
//! * `φ(F(z)) = 1`, where `z` is a tower cycle of `C` and `φ` a cocycle of
//!   `D` at `U = 1` that is nonzero on the tower.
//!
//! Complexes are only relatively graded, so `F` is allowed to shift
//! gradings. By default the shift aligns the top gradings of the two towers,
//! which is the only shift compatible with local maps in both directions.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::chain::{localized_tower, BaseRing, BiGrading, Map, TowerClass, UComplex, U, UV};
use crate::error::{Error, Result};
use crate::gf2::{self, BitVec, Echelon};
use crate::involutive::{a0_subcomplex, iota_from_terms, IotaComplex, IotaKComplex, Mode};
use crate::linsys::{Scope, System};

/// The sign of an `a`-entry of standard parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn negate(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// Parameters `(a₁, b₂, …, a_{2m-1}, b_{2m})` of a standard complex, stored
/// as the pairs `(a_{2i-1}, b_{2i})`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct StandardParams {
    steps: Vec<(Sign, i64)>,
}

impl StandardParams {
    pub fn new(steps: Vec<(Sign, i64)>) -> Result<Self> {
        if let Some(k) = steps.iter().position(|&(_, b)| b == 0) {
            return Err(Error::invalid(format!("entry b{} is zero", 2 * k + 2)));
        }
        Ok(Self { steps })
    }

    pub fn identity() -> Self {
        Self::default()
    }

    pub fn steps(&self) -> &[(Sign, i64)] {
        &self.steps
    }

    /// The number `m` of `(a, b)` pairs.
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn concat(&self, other: &StandardParams) -> StandardParams {
        StandardParams { steps: self.steps.iter().chain(&other.steps).copied().collect() }
    }

    pub fn max_weight(&self) -> u64 {
        self.steps.iter().map(|&(_, b)| b.unsigned_abs()).max().unwrap_or(0)
    }
}

impl fmt::Display for StandardParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, &(a, b)) in self.steps.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{},{}", a.as_char(), b)?;
        }
        Ok(())
    }
}

impl FromStr for StandardParams {
    type Err = Error;

    /// Parses `+,-1,+,-2`; surrounding parentheses are allowed and the empty
    /// string is the identity.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let s = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(s).trim();
        if s.is_empty() {
            return Ok(Self::identity());
        }
        let tokens: Vec<&str> = s.split(',').map(str::trim).collect();
        if !tokens.len().is_multiple_of(2) {
            return Err(Error::invalid(format!(
                "standard parameters need an even number of entries, got {}",
                tokens.len()
            )));
        }
        let mut steps = Vec::with_capacity(tokens.len() / 2);
        for (k, pair) in tokens.chunks(2).enumerate() {
            let a = match pair[0] {
                "+" => Sign::Plus,
                "-" => Sign::Minus,
                t => return Err(Error::invalid(format!("entry a{} must be + or -, got {t:?}", 2 * k + 1))),
            };
            let b: i64 = pair[1].parse().map_err(|_| {
                Error::invalid(format!("entry b{} must be a nonzero integer, got {:?}", 2 * k + 2, pair[1]))
            })?;
            steps.push((a, b));
        }
        Self::new(steps)
    }
}

/// The standard complex `C(a₁, b₂, …)` on generators `t0, …, t2m`.
///
/// With `ω = id + ι`: `a = +` gives `ω t_{2i-1} = t_{2i-2}` and `a = -`
/// gives `ω t_{2i-2} = t_{2i-1}`; `b > 0` gives `∂ t_{2i} = U^b t_{2i-1}` and
/// `b < 0` gives `∂ t_{2i-1} = U^{|b|} t_{2i}`. `t0` has grading 0.
pub fn standard_complex(p: &StandardParams) -> IotaComplex {
    let n = 2 * p.len() + 1;
    let mut gr = vec![0i64; n];
    let mut d = Vec::new();
    let mut iota: Vec<(usize, usize, u32)> = (0..n).map(|i| (i, i, 0)).collect();
    for (k, &(a, b)) in p.steps.iter().enumerate() {
        let (s, t) = (2 * k, 2 * k + 1);
        gr[t] = gr[s];
        match a {
            Sign::Plus => iota.push((t, s, 0)),
            Sign::Minus => iota.push((s, t, 0)),
        }
        let w = u32::try_from(b.unsigned_abs()).expect("weight fits in u32");
        if b > 0 {
            gr[t + 1] = gr[t] + 1 - 2 * b;
            d.push((t + 1, t, w));
        } else {
            gr[t + 1] = gr[t] - 1 + 2 * b.abs();
            d.push((t, t + 1, w));
        }
    }
    let gens = (0..n).map(|i| (format!("t{i}"), gr[i])).collect();
    iota_from_terms(gens, &d, &iota).expect("standard complex is well formed")
}

/// Whether the chain-map condition is imposed exactly or modulo `U`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ChainCondition {
    #[default]
    Strict,
    ModU,
}

/// Which grading shifts of the map are tried.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ShiftPolicy {
    /// Only the shift that aligns the top gradings of the towers.
    #[default]
    Aligned,
    /// Every shift of the aligned parity in `[-W, W]`, `W = 2(G_C + G_D + E)`,
    /// from the top down.
    Window,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct SearchOptions {
    pub chain: ChainCondition,
    pub shift: ShiftPolicy,
}

/// A local map `F: C → D` with its witnesses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalMapCertificate {
    pub mode: Mode,
    pub chain: ChainCondition,
    /// `F` raises gradings by `shift`.
    pub shift: i64,
    pub map: Map<U>,
    /// `H` with `Fι + ι'F = ∂H + H∂` (modulo `U` in almost mode).
    pub homotopy_iota: Map<U>,
    /// The tower cycle of `C` at `U = 1` used for the locality condition.
    pub tower_cycle: BitVec,
    pub tower_image_nonzero: bool,
}

/// Prepared data for one side of a search.
struct Side<'a, R: BaseRing> {
    complex: &'a crate::chain::Complex<R>,
    iota: &'a Map<R>,
    tower: TowerClass,
    /// A cocycle at `U = 1` that is 1 on the tower cycle.
    cocycle: BitVec,
}

fn tower_cocycle(c_at_one: &[BitVec], n: usize, z: &BitVec) -> Option<BitVec> {
    // φ·∂(a) = 0 for every generator a, and φ·z = 1.
    let mut rows: Vec<BitVec> = c_at_one.to_vec();
    let mut rhs = vec![false; rows.len()];
    rows.push(z.clone());
    rhs.push(true);
    gf2::solve(n, &rows, &rhs)
}

fn prepare_u(x: &IotaComplex) -> Option<Side<'_, U>> {
    let tower = localized_tower(x.complex());
    if tower.rank != 1 {
        return None;
    }
    let cocycle = tower_cocycle(&x.complex().d().rows_at_one(), x.len(), &tower.representative)?;
    Some(Side { complex: x.complex(), iota: x.iota(), tower, cocycle })
}

fn top(t: &TowerClass) -> i64 {
    t.top_grading.expect("rank-one tower has a top grading")
}

fn tower_equation<R: BaseRing>(sys: &mut System<R>, f: crate::linsys::UnknownId, z: &BitVec, phi: &BitVec) {
    let vars = sys.variables(f).filter(|&(x, y, _)| z.get(x) && phi.get(y)).map(|(_, _, v)| v).collect();
    sys.raw_equation(vars, true);
}

fn search_at_shift(
    c: &Side<'_, U>,
    d: &Side<'_, U>,
    mode: Mode,
    opts: SearchOptions,
    shift: i64,
) -> Option<LocalMapCertificate> {
    let (gc, gd) = (c.complex.generators(), d.complex.generators());
    let mut sys = System::<U>::new();
    let f = sys.unknown(gc, gd, false, shift);
    let h = sys.unknown(gc, gd, false, shift + 1);
    let chain = sys.group(match opts.chain {
        ChainCondition::Strict => Scope::All,
        ChainCondition::ModU => Scope::Constant,
    });
    sys.unknown_then(chain, f, d.complex.d());
    sys.then_unknown(chain, c.complex.d(), f);
    let comm = sys.group(mode.scope());
    sys.unknown_then(comm, f, d.iota);
    sys.then_unknown(comm, c.iota, f);
    sys.unknown_then(comm, h, d.complex.d());
    sys.then_unknown(comm, c.complex.d(), h);
    tower_equation(&mut sys, f, &c.tower.representative, &d.cocycle);
    let sol = sys.solve()?;
    Some(LocalMapCertificate {
        mode,
        chain: opts.chain,
        shift,
        map: sol.map(f),
        homotopy_iota: sol.map(h),
        tower_cycle: c.tower.representative.clone(),
        tower_image_nonzero: true,
    })
}

fn shifts(c: &Side<'_, U>, d: &Side<'_, U>, policy: ShiftPolicy) -> Vec<i64> {
    let aligned = top(&d.tower) - top(&c.tower);
    match policy {
        ShiftPolicy::Aligned => vec![aligned],
        ShiftPolicy::Window => {
            let e = [c.complex.d(), d.complex.d()]
                .iter()
                .flat_map(|m| m.entries().flat_map(|(_, _, p)| p.terms().map(|t| i64::from(t.0))))
                .max()
                .unwrap_or(0);
            let w = 2 * (c.complex.len() as i64 + d.complex.len() as i64 + e);
            let start = w - (w - aligned).rem_euclid(2);
            (0..).map(|k| start - 2 * k).take_while(|&s| s >= -w).collect()
        }
    }
}

/// Searches for a local map `C → D`.
pub fn local_map_search(c: &IotaComplex, d: &IotaComplex, mode: Mode) -> Option<LocalMapCertificate> {
    local_map_search_with(c, d, mode, SearchOptions::default())
}

pub fn local_map_search_with(
    c: &IotaComplex,
    d: &IotaComplex,
    mode: Mode,
    opts: SearchOptions,
) -> Option<LocalMapCertificate> {
    let (Some(sc), Some(sd)) = (prepare_u(c), prepare_u(d)) else {
        log::warn!("local map search on a complex whose localized homology does not have rank one");
        return None;
    };
    search_prepared(&sc, &sd, mode, opts)
}

fn search_prepared(sc: &Side<'_, U>, sd: &Side<'_, U>, mode: Mode, opts: SearchOptions) -> Option<LocalMapCertificate> {
    shifts(sc, sd, opts.shift).into_iter().find_map(|s| search_at_shift(sc, sd, mode, opts, s))
}

fn scoped<R: BaseRing>(m: &Map<R>, scope: Scope) -> Map<R> {
    match scope {
        Scope::All => m.clone(),
        Scope::Constant => {
            m.map_entries(m.is_skew(), |p| p.map_terms(|t| crate::ring::Monomial::is_one(t).then_some(t)))
        }
    }
}

/// Checks that `z` is a cycle at `U = 1` that is not a boundary, and that
/// `F(z)` is not a boundary of the target at `U = 1`.
fn check_tower<R: BaseRing>(
    src: &crate::chain::Complex<R>,
    tgt: &crate::chain::Complex<R>,
    f: &Map<R>,
    z: &BitVec,
) -> std::result::Result<(), String> {
    if z.len() != src.len() || z.is_zero() {
        return Err("tower cycle has the wrong size or is zero".into());
    }
    if !src.d().apply_at_one(z).is_zero() {
        return Err("stored tower cycle is not a cycle".into());
    }
    let src_bd = Echelon::from_rows(src.len(), src.d().rows_at_one());
    if src_bd.contains(z) {
        return Err("stored tower cycle is a boundary".into());
    }
    let image = f.apply_at_one(z);
    let tgt_bd = Echelon::from_rows(tgt.len(), tgt.d().rows_at_one());
    if tgt_bd.contains(&image) {
        return Err("the map kills the tower class".into());
    }
    Ok(())
}

impl LocalMapCertificate {
    /// Re-checks every condition by direct matrix arithmetic; the tower
    /// condition is re-derived with a rank test rather than the cocycle used
    /// by the search.
    pub fn verify(&self, c: &IotaComplex, d: &IotaComplex) -> std::result::Result<(), String> {
        let (cc, dc) = (c.complex(), d.complex());
        for (name, m, deg) in [("map", &self.map, self.shift), ("homotopy", &self.homotopy_iota, self.shift + 1)] {
            if m.n_src() != c.len() || m.n_tgt() != d.len() || m.is_skew() {
                return Err(format!("{name} has the wrong shape"));
            }
            if m.check_degree(cc.generators(), dc.generators(), deg).is_err() {
                return Err(format!("{name} is not homogeneous of degree {deg}"));
            }
        }
        let f = &self.map;
        let chain_scope = match self.chain {
            ChainCondition::Strict => Scope::All,
            ChainCondition::ModU => Scope::Constant,
        };
        if !scoped(&f.then(dc.d()).plus(&cc.d().then(f)), chain_scope).is_zero() {
            return Err("the map does not commute with the differentials".into());
        }
        let h = &self.homotopy_iota;
        let comm = f.then(d.iota()).plus(&c.iota().then(f)).plus(&h.then(dc.d())).plus(&cc.d().then(h));
        if !scoped(&comm, self.mode.scope()).is_zero() {
            return Err("the homotopy does not absorb the commutator with the involutions".into());
        }
        if !self.tower_image_nonzero {
            return Err("certificate does not claim locality".into());
        }
        check_tower(cc, dc, f, &self.tower_cycle)
    }
}

/// Local maps in both directions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equivalence<C> {
    pub forward: C,
    pub backward: C,
}

/// Whether `C` and `D` are (almost) locally equivalent, with certificates.
pub fn is_equivalent(c: &IotaComplex, d: &IotaComplex, mode: Mode) -> Option<Equivalence<LocalMapCertificate>> {
    is_equivalent_with(c, d, mode, SearchOptions::default())
}

pub fn is_equivalent_with(
    c: &IotaComplex,
    d: &IotaComplex,
    mode: Mode,
    opts: SearchOptions,
) -> Option<Equivalence<LocalMapCertificate>> {
    let (sc, sd) = (prepare_u(c)?, prepare_u(d)?);
    let forward = search_prepared(&sc, &sd, mode, opts)?;
    let backward = search_prepared(&sd, &sc, mode, opts)?;
    Some(Equivalence { forward, backward })
}

/// A ι_K-local map `F: A → B` of knot complexes with its witnesses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IotaKCertificate {
    /// `F` raises both gradings by `shift`.
    pub shift: i64,
    pub map: Map<UV>,
    /// Skew homotopy `H` with `F ι_A + ι_B F = ∂H + H∂`.
    pub homotopy: Map<UV>,
    /// Tower cycle of the Alexander-grading-zero part of `A` at `U = V = 1`.
    pub tower_cycle: BitVec,
}

impl IotaKCertificate {
    pub fn verify(&self, a: &IotaKComplex, b: &IotaKComplex) -> std::result::Result<(), String> {
        let (ac, bc) = (a.complex(), b.complex());
        let s = self.shift;
        if self.map.n_src() != a.len() || self.map.n_tgt() != b.len() || self.map.is_skew() {
            return Err("map has the wrong shape".into());
        }
        if self.homotopy.n_src() != a.len() || self.homotopy.n_tgt() != b.len() || !self.homotopy.is_skew() {
            return Err("homotopy has the wrong shape".into());
        }
        if self.map.check_degree(ac.generators(), bc.generators(), BiGrading::new(s, s)).is_err() {
            return Err("map is not homogeneous".into());
        }
        if self.homotopy.check_degree(ac.generators(), bc.generators(), BiGrading::new(s + 1, s + 1)).is_err() {
            return Err("homotopy is not homogeneous".into());
        }
        let f = &self.map;
        if !f.then(bc.d()).plus(&ac.d().then(f)).is_zero() {
            return Err("the map is not a chain map".into());
        }
        let h = &self.homotopy;
        let comm = a.iota().then(f).plus(&f.then(b.iota())).plus(&h.then(bc.d())).plus(&ac.d().then(h));
        if !comm.is_zero() {
            return Err("the homotopy does not absorb the commutator with the involutions".into());
        }
        check_tower(ac, bc, f, &self.tower_cycle)
    }
}

struct KnotSide<'a> {
    x: &'a IotaKComplex,
    tower: TowerClass,
    cocycle: BitVec,
}

fn prepare_knot(x: &IotaKComplex) -> Option<KnotSide<'_>> {
    let a0 = match a0_subcomplex(x) {
        Ok(a) => a,
        Err(e) => {
            log::warn!("ι_K local map search: {e}");
            return None;
        }
    };
    let side = prepare_u(&a0)?;
    Some(KnotSide { x, tower: side.tower, cocycle: side.cocycle })
}

fn knot_search(a: &KnotSide<'_>, b: &KnotSide<'_>) -> Option<IotaKCertificate> {
    let shift = top(&b.tower) - top(&a.tower);
    let (ac, bc) = (a.x.complex(), b.x.complex());
    let mut sys = System::<UV>::new();
    let f = sys.unknown(ac.generators(), bc.generators(), false, BiGrading::new(shift, shift));
    let h = sys.unknown(ac.generators(), bc.generators(), true, BiGrading::new(shift + 1, shift + 1));
    let chain = sys.group(Scope::All);
    sys.unknown_then(chain, f, bc.d());
    sys.then_unknown(chain, ac.d(), f);
    let comm = sys.group(Scope::All);
    sys.then_unknown(comm, a.x.iota(), f);
    sys.unknown_then(comm, f, b.x.iota());
    sys.unknown_then(comm, h, bc.d());
    sys.then_unknown(comm, ac.d(), h);
    tower_equation(&mut sys, f, &a.tower.representative, &b.cocycle);
    let sol = sys.solve()?;
    Some(IotaKCertificate { shift, map: sol.map(f), homotopy: sol.map(h), tower_cycle: a.tower.representative.clone() })
}

/// Searches for a ι_K-local map `A → B`. Locality is imposed on the
/// Alexander-grading-zero parts.
pub fn iota_k_local_map_search(a: &IotaKComplex, b: &IotaKComplex) -> Option<IotaKCertificate> {
    knot_search(&prepare_knot(a)?, &prepare_knot(b)?)
}

/// ι_K-local equivalence with certificates in both directions.
pub fn iota_k_equivalent(a: &IotaKComplex, b: &IotaKComplex) -> Option<Equivalence<IotaKCertificate>> {
    let (sa, sb) = (prepare_knot(a)?, prepare_knot(b)?);
    let forward = knot_search(&sa, &sb)?;
    let backward = knot_search(&sb, &sa)?;
    Some(Equivalence { forward, backward })
}

/// Bounds for [`standard_rep_search`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBounds {
    pub max_steps: usize,
    pub max_weight: u32,
}

impl SearchBounds {
    pub fn new(max_steps: usize, max_weight: u32) -> Result<Self> {
        if max_steps == 0 || max_weight == 0 {
            return Err(Error::invalid("search bounds must be positive"));
        }
        Ok(Self { max_steps, max_weight })
    }
}

/// The choices for one `(a, b)` pair in enumeration order: `+` before `-`,
/// then `|b|` increasing with the negative value first.
fn step_choices(max_weight: u32) -> Vec<(Sign, i64)> {
    let mut out = Vec::new();
    for a in [Sign::Plus, Sign::Minus] {
        for w in 1..=i64::from(max_weight) {
            out.push((a, -w));
            out.push((a, w));
        }
    }
    out
}

/// All parameters with exactly `m` pairs, in enumeration order.
pub fn candidates(m: usize, max_weight: u32) -> Vec<StandardParams> {
    let choices = step_choices(max_weight);
    let total = choices.len().pow(m as u32);
    (0..total)
        .map(|mut k| {
            let mut steps = vec![(Sign::Plus, 0); m];
            for slot in steps.iter_mut().rev() {
                *slot = choices[k % choices.len()];
                k /= choices.len();
            }
            StandardParams { steps }
        })
        .collect()
}

/// The standard parameters of the unique standard complex almost locally
/// equivalent to `c`, searched in enumeration order (increasing `m`, then
/// lexicographic in the per-pair order `+` before `-`, `|b|` increasing,
/// negative `b` first). Candidates are tested in parallel; the first match in
/// enumeration order is returned.
pub fn standard_rep_search(c: &IotaComplex, bounds: SearchBounds) -> Option<StandardParams> {
    let sc = prepare_u(c)?;
    for m in 0..=bounds.max_steps {
        let cands = candidates(m, bounds.max_weight);
        let found = cands.into_par_iter().find_first(|p| {
            let std = standard_complex(p);
            let Some(sd) = prepare_u(&std) else { return false };
            let opts = SearchOptions::default();
            search_prepared(&sc, &sd, Mode::Almost, opts).is_some()
                && search_prepared(&sd, &sc, Mode::Almost, opts).is_some()
        });
        if found.is_some() {
            return found;
        }
    }
    None
}

/// Convenience: the U-complex and its tower in one call.
pub fn tower_of(c: &UComplex) -> TowerClass {
    localized_tower(c)
}

/// Convenience for knot complexes: the tower of the A₀ part.
pub fn knot_tower(c: &IotaKComplex) -> Result<TowerClass> {
    Ok(localized_tower(a0_subcomplex(c)?.complex()))
}
