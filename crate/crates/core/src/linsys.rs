//! Linear systems whose unknowns are the entries of homogeneous maps.
//!
//! An unknown map of a given degree has one F₂ variable per pair
//! `(source, target)` for which the grading rule admits a monomial. Each
//! equation is indexed by a group tag and an entry `(x, z, monomial)` of a
//! composite map; composites with known maps toggle variables in these
//! equations, and known maps toggle the right-hand side.

use std::collections::HashMap;

use crate::chain::{BaseRing, Generator, Map};
use crate::gf2::{self, BitVec};
use crate::ring::Monomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct UnknownId(usize);

struct Unknown<R: BaseRing> {
    n_src: usize,
    n_tgt: usize,
    skew: bool,
    /// Per source: `(target, monomial, variable)`.
    by_src: Vec<Vec<(usize, R::Mono, usize)>>,
}

/// Which entries of a composite an equation group constrains.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Scope {
    /// Every entry must vanish.
    All,
    /// Only entries with monomial `1` must vanish (equality mod `U`, or mod
    /// the maximal ideal).
    Constant,
}

impl Scope {
    fn keeps<M: Monomial>(self, m: M) -> bool {
        match self {
            Scope::All => true,
            Scope::Constant => m.is_one(),
        }
    }
}

#[derive(Default)]
struct Equation {
    vars: Vec<usize>,
    rhs: bool,
}

pub(crate) struct System<R: BaseRing> {
    nvars: usize,
    unknowns: Vec<Unknown<R>>,
    index: HashMap<(usize, usize, usize, R::Mono), usize>,
    eqs: Vec<Equation>,
    scopes: Vec<Scope>,
}

impl<R: BaseRing> System<R> {
    pub fn new() -> Self {
        Self { nvars: 0, unknowns: Vec::new(), index: HashMap::new(), eqs: Vec::new(), scopes: Vec::new() }
    }

    /// Declares an unknown map `src → tgt` of degree `deg`.
    pub fn unknown(&mut self, src: &[Generator<R::Gr>], tgt: &[Generator<R::Gr>], skew: bool, deg: R::Gr) -> UnknownId {
        self.unknown_filtered(src, tgt, skew, deg, |_, _| true)
    }

    /// Like [`System::unknown`] but only entries with `allow(src, tgt)`.
    pub fn unknown_filtered(
        &mut self,
        src: &[Generator<R::Gr>],
        tgt: &[Generator<R::Gr>],
        skew: bool,
        deg: R::Gr,
        mut allow: impl FnMut(usize, usize) -> bool,
    ) -> UnknownId {
        let mut by_src = Vec::with_capacity(src.len());
        for (x, gx) in src.iter().enumerate() {
            let target_gr = if skew { R::twist(gx.gr) } else { gx.gr } + deg;
            let mut row = Vec::new();
            for (y, gy) in tgt.iter().enumerate() {
                if let Some(m) = R::mono_of_grading(target_gr - gy.gr) {
                    if allow(x, y) {
                        row.push((y, m, self.nvars));
                        self.nvars += 1;
                    }
                }
            }
            by_src.push(row);
        }
        self.unknowns.push(Unknown { n_src: src.len(), n_tgt: tgt.len(), skew, by_src });
        UnknownId(self.unknowns.len() - 1)
    }

    /// Variables of an unknown as `(source, target, variable)`.
    pub fn variables(&self, u: UnknownId) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.unknowns[u.0].by_src.iter().enumerate().flat_map(|(x, row)| row.iter().map(move |&(y, _, v)| (x, y, v)))
    }

    /// Starts a new equation group; returns its tag.
    pub fn group(&mut self, scope: Scope) -> usize {
        self.scopes.push(scope);
        self.scopes.len() - 1
    }

    fn eq(&mut self, group: usize, x: usize, z: usize, m: R::Mono) -> Option<&mut Equation> {
        if !self.scopes[group].keeps(m) {
            return None;
        }
        let next = self.eqs.len();
        let k = *self.index.entry((group, x, z, m)).or_insert(next);
        if k == next {
            self.eqs.push(Equation::default());
        }
        Some(&mut self.eqs[k])
    }

    /// Adds the composite "first the unknown `u`, then `k`".
    pub fn unknown_then(&mut self, group: usize, u: UnknownId, k: &Map<R>) {
        let unk = &self.unknowns[u.0];
        assert_eq!(unk.n_tgt, k.n_src());
        let mut toggles = Vec::new();
        for (a, row) in unk.by_src.iter().enumerate() {
            for &(b, m, var) in row {
                let m = if k.is_skew() { m.conj() } else { m };
                for (&z, q) in k.row(b) {
                    for t in q.terms() {
                        toggles.push((a, z, m.mul(t), var));
                    }
                }
            }
        }
        for (a, z, m, var) in toggles {
            if let Some(e) = self.eq(group, a, z, m) {
                e.vars.push(var);
            }
        }
    }

    /// Adds the composite "first `k`, then the unknown `u`".
    pub fn then_unknown(&mut self, group: usize, k: &Map<R>, u: UnknownId) {
        let unk = &self.unknowns[u.0];
        assert_eq!(k.n_tgt(), unk.n_src);
        let mut toggles = Vec::new();
        for x in 0..k.n_src() {
            for (&a, p) in k.row(x) {
                for t in p.terms() {
                    let t = if unk.skew { t.conj() } else { t };
                    for &(b, m, var) in &unk.by_src[a] {
                        toggles.push((x, b, t.mul(m), var));
                    }
                }
            }
        }
        for (x, b, m, var) in toggles {
            if let Some(e) = self.eq(group, x, b, m) {
                e.vars.push(var);
            }
        }
    }

    /// Adds a known map to the equations of `group`.
    pub fn known(&mut self, group: usize, k: &Map<R>) {
        for (x, z, p) in k.entries() {
            for m in p.terms() {
                if let Some(e) = self.eq(group, x, z, m) {
                    e.rhs = !e.rhs;
                }
            }
        }
    }

    /// Adds a free-form equation `Σ vars = rhs`.
    pub fn raw_equation(&mut self, vars: Vec<usize>, rhs: bool) {
        self.eqs.push(Equation { vars, rhs });
    }

    pub fn solve(&self) -> Option<Solution<'_, R>> {
        let n = self.nvars;
        let mut rows: Vec<BitVec> = Vec::with_capacity(self.eqs.len());
        for e in &self.eqs {
            let mut r = BitVec::zeros(n + 1);
            for &v in &e.vars {
                r.toggle(v);
            }
            r.set(n, e.rhs);
            if !r.is_zero() {
                rows.push(r);
            }
        }
        let x = gf2::solve_augmented(n, &mut rows)?;
        Some(Solution { sys: self, x })
    }
}

pub(crate) struct Solution<'a, R: BaseRing> {
    sys: &'a System<R>,
    x: BitVec,
}

impl<R: BaseRing> Solution<'_, R> {
    pub fn map(&self, u: UnknownId) -> Map<R> {
        let unk = &self.sys.unknowns[u.0];
        let mut out = Map::zero(unk.n_src, unk.n_tgt, unk.skew);
        for (x, row) in unk.by_src.iter().enumerate() {
            for &(y, m, var) in row {
                if self.x.get(var) {
                    out.add_term(x, y, m);
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{Complex, U};
    use crate::ring::UTerm;

    #[test]
    fn finds_nullhomotopy_of_identity_on_acyclic_pair() {
        // ∂a = b; id = ∂H + H∂ with H(b) = a.
        let c = Complex::<U>::from_terms(vec![("a".into(), 0), ("b".into(), -1)], &[(0, 1, UTerm(0))]).unwrap();
        let mut sys = System::<U>::new();
        let h = sys.unknown(c.generators(), c.generators(), false, 1);
        let g = sys.group(Scope::All);
        sys.unknown_then(g, h, c.d());
        sys.then_unknown(g, c.d(), h);
        sys.known(g, &Map::identity(2));
        let sol = sys.solve().unwrap();
        let hm = sol.map(h);
        assert_eq!(c.d().then(&hm).plus(&hm.then(c.d())), Map::identity(2));
    }

    #[test]
    fn identity_on_single_generator_is_not_nullhomotopic() {
        let c = Complex::<U>::from_terms(vec![("a".into(), 0)], &[]).unwrap();
        let mut sys = System::<U>::new();
        let h = sys.unknown(c.generators(), c.generators(), false, 1);
        let g = sys.group(Scope::All);
        sys.unknown_then(g, h, c.d());
        sys.known(g, &Map::identity(1));
        assert!(sys.solve().is_none());
    }
}
