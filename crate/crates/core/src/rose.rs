//! HNN extensions of a p-group over one vertex (a rose of loops): words,
//! Britton reduction, fusion factorization, and permutation realizations.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fusion::{fusion_closure, FusionFactorization, FusionSystem, Step, StepAction};
use crate::group::{cayley_embedding, FiniteGroup, Subgroup};
use crate::hom::GroupHom;
use crate::perm::Perm;
use crate::presentation::{cayley_presentation, invert, Letter, Presentation};

#[derive(Clone, Debug)]
pub struct RoseEdge {
    pub p: Subgroup,
    pub q: Subgroup,
    pub phi: GroupHom,
    phi_inv: GroupHom,
    image: Subgroup,
}

impl RoseEdge {
    /// `φ(P)`, the subgroup the inverse stable letter pinches over.
    pub fn image(&self) -> &Subgroup {
        &self.image
    }
}

/// A p-group `S` with injective maps `φ_i: P_i → Q_i`, one stable letter `t_i` each.
#[derive(Clone, Debug)]
pub struct RoseData {
    s: Arc<FiniteGroup>,
    p: u32,
    edges: Vec<RoseEdge>,
}

impl RoseData {
    pub fn new(s: &FiniteGroup, p: u32, maps: Vec<GroupHom>) -> Result<Self> {
        if !s.is_p_group(p) {
            return Err(Error::NotAPGroup { order: s.order(), prime: p });
        }
        let mut edges = Vec::with_capacity(maps.len());
        for phi in maps {
            if !s.is_subgroup(phi.domain()) || !s.is_subgroup(phi.codomain()) {
                return Err(Error::BadDomain("edge groups must be subgroups of S".into()));
            }
            let phi = GroupHom::new(s, phi.domain().clone(), s, phi.codomain().clone(), phi.images().to_vec())?;
            if !phi.is_injective() {
                return Err(Error::NotAHomomorphism("edge map is not injective".into()));
            }
            let phi_inv = phi.inverse(s)?;
            let image = phi_inv.domain().clone();
            edges.push(RoseEdge { p: phi.domain().clone(), q: phi.codomain().clone(), phi, phi_inv, image });
        }
        Ok(RoseData { s: Arc::new(s.clone().with_prime(p)), p, edges })
    }

    pub fn s(&self) -> &FiniteGroup {
        &self.s
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn edges(&self) -> &[RoseEdge] {
        &self.edges
    }

    pub fn maps(&self) -> Vec<GroupHom> {
        self.edges.iter().map(|e| e.phi.clone()).collect()
    }

    /// The fusion system generated by the edge maps.
    pub fn fusion(&self) -> Result<FusionSystem> {
        fusion_closure(&self.s, self.p, &self.maps())
    }
}

impl StepAction for RoseData {
    fn act(&self, step: &Step, x: u32) -> Option<u32> {
        match *step {
            Step::Inner(g) => Some(self.s.conj(x, g)),
            Step::Gen { index, inverse: false } => self.edges.get(index)?.phi.apply(x),
            Step::Gen { index, inverse: true } => self.edges.get(index)?.phi_inv.apply(x),
            _ => None,
        }
    }

    fn group(&self) -> &FiniteGroup {
        &self.s
    }
}

/// `s_0 t_{i_1}^{ε_1} s_1 ⋯ t_{i_n}^{ε_n} s_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HNNWord {
    pub syllables: Vec<u32>,
    pub stables: Vec<(usize, i8)>,
}

impl HNNWord {
    pub fn element(s: u32) -> Self {
        HNNWord { syllables: vec![s], stables: Vec::new() }
    }

    pub fn stable(edge: usize, exponent: i8) -> Self {
        HNNWord { syllables: vec![0, 0], stables: vec![(edge, exponent)] }
    }

    pub fn is_well_formed(&self) -> bool {
        self.syllables.len() == self.stables.len() + 1 && self.stables.iter().all(|&(_, e)| e == 1 || e == -1)
    }

    pub fn stable_length(&self) -> usize {
        self.stables.len()
    }

    /// `self · other`.
    pub fn concat(&self, other: &HNNWord, s: &FiniteGroup) -> HNNWord {
        let mut syllables = self.syllables.clone();
        let last = syllables.pop().unwrap();
        syllables.push(s.mul(last, other.syllables[0]));
        syllables.extend_from_slice(&other.syllables[1..]);
        let mut stables = self.stables.clone();
        stables.extend_from_slice(&other.stables);
        HNNWord { syllables, stables }
    }

    pub fn inverse(&self, s: &FiniteGroup) -> HNNWord {
        HNNWord {
            syllables: self.syllables.iter().rev().map(|&x| s.inv(x)).collect(),
            stables: self.stables.iter().rev().map(|&(i, e)| (i, -e)).collect(),
        }
    }

    /// The word spelled by the steps of a factorization: inner steps become
    /// syllables, generator steps become stable letters.
    pub fn from_steps(steps: &[Step], s: &FiniteGroup) -> Result<HNNWord> {
        let mut w = HNNWord::element(0);
        for st in steps {
            let next = match *st {
                Step::Inner(x) => HNNWord::element(x),
                Step::Gen { index, inverse } => HNNWord::stable(index, if inverse { -1 } else { 1 }),
                _ => return Err(Error::BadDomain("only inner and generator steps spell rose words".into())),
            };
            w = w.concat(&next, s);
        }
        Ok(w)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PinchOrder {
    Leftmost,
    Rightmost,
}

impl RoseData {
    fn check_word(&self, w: &HNNWord) -> Result<()> {
        if !w.is_well_formed() {
            return Err(Error::BadDomain("malformed word".into()));
        }
        if w.stables.iter().any(|&(i, _)| i >= self.edges.len()) {
            return Err(Error::BadDomain("stable letter index out of range".into()));
        }
        if w.syllables.iter().any(|&x| x as usize >= self.s.order()) {
            return Err(Error::BadDomain("syllable outside S".into()));
        }
        Ok(())
    }

    /// The rewritten middle syllable if stable letters `k` and `k + 1` pinch.
    fn pinch_at(&self, w: &HNNWord, k: usize) -> Option<u32> {
        let (i, e) = w.stables[k];
        let (j, f) = w.stables[k + 1];
        if i != j || e != -f {
            return None;
        }
        let mid = w.syllables[k + 1];
        let edge = &self.edges[i];
        if e == -1 {
            edge.phi.apply(mid)
        } else {
            edge.phi_inv.apply(mid)
        }
    }

    fn apply_pinch(&self, w: &mut HNNWord, k: usize, value: u32) {
        let merged = self.s.mul(self.s.mul(w.syllables[k], value), w.syllables[k + 2]);
        w.syllables.splice(k..k + 3, [merged]);
        w.stables.drain(k..k + 2);
    }

    /// Removes pinches until none remain, leftmost first.
    pub fn britton_reduce(&self, w: &HNNWord) -> Result<HNNWord> {
        self.britton_reduce_with(w, PinchOrder::Leftmost)
    }

    pub fn britton_reduce_with(&self, w: &HNNWord, order: PinchOrder) -> Result<HNNWord> {
        self.check_word(w)?;
        let mut w = w.clone();
        match order {
            PinchOrder::Leftmost => {
                let mut k = 0;
                while k + 1 < w.stables.len() {
                    if let Some(v) = self.pinch_at(&w, k) {
                        self.apply_pinch(&mut w, k, v);
                        k = k.saturating_sub(1);
                    } else {
                        k += 1;
                    }
                }
            }
            PinchOrder::Rightmost => {
                let mut k = w.stables.len().checked_sub(2);
                while let Some(j) = k {
                    if let Some(v) = self.pinch_at(&w, j) {
                        self.apply_pinch(&mut w, j, v);
                        k = j.checked_sub(1).map(|i| i.min(w.stables.len().saturating_sub(2)));
                        if w.stables.len() < 2 {
                            k = None;
                        }
                    } else {
                        k = j.checked_sub(1);
                    }
                }
            }
        }
        Ok(w)
    }

    pub fn is_reduced(&self, w: &HNNWord) -> bool {
        (0..w.stables.len().saturating_sub(1)).all(|k| self.pinch_at(w, k).is_none())
    }

    /// The element of `S` represented by `w`, if it lies in `S`.
    pub fn word_in_s(&self, w: &HNNWord) -> Result<Option<u32>> {
        let r = self.britton_reduce(w)?;
        Ok(r.stables.is_empty().then(|| r.syllables[0]))
    }

    /// `u ↦ w⁻¹uw` on `P`, if every image lies in `S`.
    pub fn conjugation_by_word(&self, w: &HNNWord, p: &Subgroup) -> Result<Option<GroupHom>> {
        self.check_word(w)?;
        let winv = w.inverse(&self.s);
        let mut images = Vec::with_capacity(p.order());
        for &u in p.members() {
            let conj = winv.concat(&HNNWord::element(u), &self.s).concat(w, &self.s);
            match self.word_in_s(&conj)? {
                Some(x) => images.push(x),
                None => return Ok(None),
            }
        }
        Ok(Some(GroupHom::new_unchecked(p.clone(), self.s.all(), images)))
    }

    /// Reads the steps of `c_w` off the reduced form of `w` and checks every
    /// intermediate domain condition.
    pub fn decompose_fusion(&self, w: &HNNWord, p: &Subgroup, q: &Subgroup) -> Result<FusionFactorization> {
        let conj = self
            .conjugation_by_word(w, p)?
            .ok_or_else(|| Error::PreconditionFailed("w⁻¹Pw is not contained in S".into()))?;
        if conj.images().iter().any(|&y| !q.contains(y)) {
            return Err(Error::PreconditionFailed("w⁻¹Pw is not contained in Q".into()));
        }
        let r = self.britton_reduce(w)?;
        let mut steps = Vec::with_capacity(2 * r.stables.len() + 1);
        for (k, &(index, e)) in r.stables.iter().enumerate() {
            steps.push(Step::Inner(r.syllables[k]));
            steps.push(Step::Gen { index, inverse: e < 0 });
        }
        steps.push(Step::Inner(*r.syllables.last().unwrap()));
        let fact = FusionFactorization { domain: p.clone(), steps };
        let value = fact
            .evaluate(self)
            .map_err(|e| Error::InternalContradiction(format!("reduced word leaves S along its path: {e}")))?;
        if value.images() != conj.images() {
            return Err(Error::InternalContradiction("factorization differs from conjugation by w".into()));
        }
        Ok(fact)
    }

    /// Generators `s<k>` for a generating set of `S`, then `t<i>` per edge.
    /// Relators: a Cayley-graph presentation of `S`, then `t_i⁻¹ u t_i φ_i(u)⁻¹`
    /// for every edge `i` and every `u ∈ P_i`.
    pub fn presentation(&self) -> Presentation {
        let cp = cayley_presentation(&self.s);
        let ns = cp.generators.len();
        let mut generators: Vec<String> = (0..ns).map(|k| format!("s{k}")).collect();
        generators.extend((0..self.edges.len()).map(|i| format!("t{i}")));
        let mut relators = cp.relators.clone();
        for (i, edge) in self.edges.iter().enumerate() {
            for (k, &u) in edge.p.members().iter().enumerate() {
                let mut r: Vec<Letter> = vec![(ns + i, -1)];
                r.extend(cp.words[u as usize].iter().copied());
                r.push((ns + i, 1));
                r.extend(invert(&cp.words[edge.phi.images()[k] as usize]));
                relators.push(r);
            }
        }
        Presentation { generators, relators }
    }

    /// Permutations on `|S|` points for every presentation generator: the
    /// Cayley embedding on `S`, and `realize_morphism_in_sym(φ_i)` on `t_i`.
    pub fn map_to_symmetric(&self) -> Vec<Perm> {
        let cay = cayley_embedding(&self.s);
        let cp = cayley_presentation(&self.s);
        let mut out: Vec<Perm> = cp.generators.iter().map(|&g| cay.perms[g as usize].clone()).collect();
        out.extend(self.edges.iter().map(|e| realize_morphism_in_sym(&self.s, &e.phi)));
        out
    }

    /// Elements `h_i ∈ H` with `f(φ_i(u)) = h_i⁻¹ f(u) h_i` for all `u ∈ P_i`.
    pub fn check_hom_extension(&self, h: &FiniteGroup, f: &GroupHom) -> Result<Option<Vec<u32>>> {
        if f.domain().order() != self.s.order() {
            return Err(Error::BadDomain("f must be defined on all of S".into()));
        }
        let cap = h.limits().max_order;
        if h.order() > cap {
            return Err(Error::CapExceeded { what: "extension search group order".into(), limit: cap });
        }
        let mut out = Vec::with_capacity(self.edges.len());
        for edge in &self.edges {
            let pairs: Vec<(u32, u32)> = edge
                .p
                .members()
                .iter()
                .zip(edge.phi.images())
                .map(|(&u, &v)| (f.apply(u).unwrap(), f.apply(v).unwrap()))
                .collect();
            match (0..h.order() as u32).find(|&x| pairs.iter().all(|&(fu, fv)| h.conj(fu, x) == fv)) {
                Some(x) => out.push(x),
                None => return Ok(None),
            }
        }
        Ok(Some(out))
    }

    /// Whether a class function on `S` (values indexed by element) takes the
    /// same value on `u` and `φ_i(u)` for every edge.
    pub fn character_extends<T: PartialEq>(&self, chi: &[T]) -> Result<bool> {
        if chi.len() != self.s.order() {
            return Err(Error::NotAClassFunction("one value per element of S is required".into()));
        }
        for u in 0..self.s.order() as u32 {
            for g in self.s.generators() {
                if chi[self.s.conj(u, *g) as usize] != chi[u as usize] {
                    return Err(Error::NotAClassFunction(format!("values differ on a conjugacy class of element {u}")));
                }
            }
        }
        Ok(self.edges.iter().all(|e| {
            e.p.members().iter().zip(e.phi.images()).all(|(&u, &v)| chi[u as usize] == chi[v as usize])
        }))
    }
}

/// `σ` on `|S|` points with `σ⁻¹·λ(u)·σ = λ(f(u))` for every `u ∈ P`, where
/// `λ` is the left-regular embedding.
///
/// Right cosets `P·x` and `f(P)·y` are both listed by least element and
/// paired in order; on the `i`-th pair `σ(f(u)·y_i) = u·x_i`.
pub fn realize_morphism_in_sym(s: &FiniteGroup, f: &GroupHom) -> Perm {
    let p = f.domain();
    let q = f.image(s);
    let source = s.right_cosets(p);
    let target = s.right_cosets(&q);
    let mut images = vec![0u32; s.order()];
    for (px, qy) in source.iter().zip(&target) {
        let (x, y) = (px[0], qy[0]);
        for (k, &u) in p.members().iter().enumerate() {
            images[s.mul(f.images()[k], y) as usize] = s.mul(u, x);
        }
    }
    Perm::from_images(images).expect("coset matching is a bijection")
}
