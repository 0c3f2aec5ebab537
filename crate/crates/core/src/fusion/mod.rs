//! Fusion systems on a finite p-group `S`.
//!
//! A fusion system is stored as the groupoid of its isomorphisms: subgroups
//! are partitioned into F-isomorphism classes, each class keeps one root `R`,
//! a transversal `τ_A: R → A` for every member `A`, and `Aut_F(R)` as
//! permutations of the positions of `R`. Every isomorphism `A → B` is then
//! `τ_B ∘ a ∘ τ_A⁻¹`, and every morphism is an isomorphism followed by an
//! inclusion. Witness words are rebuilt on demand from the BFS data.

mod saturation;
mod witness;

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{is_prime, small_generating_set, FiniteGroup, Subgroup};
use crate::hom::{automorphisms_of, find_isomorphism_between, GroupHom};
use crate::subgroups::all_subgroups;

pub use saturation::{Axiom, SaturationFailure, SaturationReport};
pub use witness::{FusionFactorization, FusionMorphism, Step, StepAction, Witness};

const UNSET: u32 = u32::MAX;

/// The group a fusion system was read off from, with `S` inside it.
#[derive(Clone, Debug)]
struct Ambient {
    group: Arc<FiniteGroup>,
    /// `embed[x]` is the index in `group` of element `x` of `S`.
    embed: Vec<u32>,
    /// Inverse of `embed`, `UNSET` outside `S`.
    back: Vec<u32>,
}

#[derive(Clone, Debug)]
struct Class {
    root: usize,
    members: Vec<usize>,
    /// `tau[k][j]` is the image of `R.members()[j]` under `τ: R → members[k]`.
    tau: Vec<Vec<u32>>,
    /// `tau_inv[k][x]` is the position in `R` mapped to `x`, or `UNSET`.
    tau_inv: Vec<Vec<u32>>,
    tau_word: Vec<Vec<Step>>,
    /// `Aut_F(R)` as permutations of positions in `R.members()`.
    autos: Vec<Vec<u32>>,
    auto_index: HashMap<Vec<u32>, usize>,
    /// `autos[k] = schreier[gen] ∘ autos[parent]` for `auto_parent[k] = (parent, gen)`.
    auto_parent: Vec<(usize, usize)>,
    schreier: Vec<(Vec<u32>, Vec<Step>)>,
}

/// A fusion system on a p-group `S`.
#[derive(Clone, Debug)]
pub struct FusionSystem {
    s: Arc<FiniteGroup>,
    p: u32,
    subgroups: Vec<Subgroup>,
    lookup: HashMap<Vec<u32>, usize>,
    generators: Vec<GroupHom>,
    generator_inverses: Vec<GroupHom>,
    ambient: Option<Ambient>,
    classes: Vec<Class>,
    /// Subgroup index to (class, position within the class).
    slot: Vec<(usize, usize)>,
    centralizer_orders: Vec<usize>,
    normalizer_orders: Vec<usize>,
}

fn check_p_group(s: &FiniteGroup, p: u32) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if !s.is_p_group(p) {
        return Err(Error::NotAPGroup { order: s.order(), prime: p });
    }
    Ok(())
}

/// `F_S(S)`: only conjugations by elements of `S`.
pub fn inner_fusion(s: &FiniteGroup, p: u32) -> Result<FusionSystem> {
    fusion_closure(s, p, &[])
}

/// The smallest fusion system on `S` containing every morphism in `generators`.
pub fn fusion_closure(s: &FiniteGroup, p: u32, generators: &[GroupHom]) -> Result<FusionSystem> {
    check_p_group(s, p)?;
    let mut gens = Vec::with_capacity(generators.len());
    for g in generators {
        if !s.is_subgroup(g.domain()) || !s.is_subgroup(g.codomain()) {
            return Err(Error::BadDomain("generator domain or codomain is not a subgroup of S".into()));
        }
        let checked = GroupHom::new(s, g.domain().clone(), s, g.codomain().clone(), g.images().to_vec())
            .map_err(|e| Error::BadDomain(format!("generator is not a homomorphism of S: {e}")))?;
        if !checked.is_injective() {
            return Err(Error::BadDomain("generator is not injective".into()));
        }
        gens.push(checked);
    }
    FusionSystem::build(Arc::new(s.clone().with_prime(p)), p, gens, None)
}

/// `F_max`: every injective homomorphism between subgroups of `S`.
pub fn full_fusion(s: &FiniteGroup, p: u32) -> Result<FusionSystem> {
    check_p_group(s, p)?;
    let subgroups = all_subgroups(s)?;
    let mut gens: Vec<GroupHom> = Vec::new();
    let mut placed = vec![false; subgroups.len()];
    for i in 0..subgroups.len() {
        if placed[i] {
            continue;
        }
        placed[i] = true;
        let r = &subgroups[i];
        let auts = automorphisms_of(s, r)?;
        let perms: Vec<crate::perm::Perm> = auts
            .iter()
            .map(|a| {
                let images = a.images().iter().map(|&y| r.position(y).unwrap() as u32).collect();
                crate::perm::Perm::from_images(images).expect("automorphism permutes positions")
            })
            .collect();
        let aut_group = FiniteGroup::generate_with_limits(r.order(), &perms, crate::group::Limits {
            max_order: auts.len().max(1),
            ..s.limits()
        })?;
        for g in small_generating_set(&aut_group, &aut_group.all()) {
            let perm = aut_group.element(g);
            let images = (0..r.order()).map(|j| r.members()[perm.apply(j as u32) as usize]).collect();
            gens.push(GroupHom::new_unchecked(r.clone(), r.clone(), images));
        }
        for (j, q) in subgroups.iter().enumerate().skip(i + 1) {
            if placed[j] || q.order() != r.order() {
                continue;
            }
            if let Some(f) = find_isomorphism_between(s, r, s, q, &[])? {
                placed[j] = true;
                gens.push(f);
            }
        }
    }
    FusionSystem::build(Arc::new(s.clone().with_prime(p)), p, gens, None)
}

/// `F_S(G)`: conjugation maps `c_g(u) = g⁻¹ug` between subgroups of `S ≤ G`.
pub fn fusion_of_group(g: &FiniteGroup, s: &Subgroup, p: u32) -> Result<FusionSystem> {
    if !g.is_subgroup(s) {
        return Err(Error::NotASubgroup("S is not a subgroup of G".into()));
    }
    let sg = g.subgroup_as_group(s).with_prime(p);
    check_p_group(&sg, p)?;
    let mut back = vec![UNSET; g.order()];
    for (k, &x) in s.members().iter().enumerate() {
        back[x as usize] = k as u32;
    }
    let ambient = Ambient { group: Arc::new(g.clone()), embed: s.members().to_vec(), back };
    FusionSystem::build(Arc::new(sg), p, Vec::new(), Some(ambient))
}

fn invert_word(word: &[Step], s: &FiniteGroup, ambient: Option<&Ambient>) -> Vec<Step> {
    word.iter()
        .rev()
        .map(|st| match *st {
            Step::Inner(x) => Step::Inner(s.inv(x)),
            Step::Conj(g) => Step::Conj(ambient.expect("conjugator steps need an ambient group").group.inv(g)),
            Step::Gen { index, inverse } => Step::Gen { index, inverse: !inverse },
            Step::Arm { .. } => unreachable!("arm steps are never stored in a fusion system"),
        })
        .collect()
}

impl FusionSystem {
    fn build(s: Arc<FiniteGroup>, p: u32, generators: Vec<GroupHom>, ambient: Option<Ambient>) -> Result<Self> {
        let subgroups = all_subgroups(&s)?;
        let lookup: HashMap<Vec<u32>, usize> =
            subgroups.iter().enumerate().map(|(i, h)| (h.members().to_vec(), i)).collect();
        let generator_inverses = generators
            .iter()
            .map(|g| g.inverse(&s))
            .collect::<Result<Vec<_>>>()?;
        let centralizer_orders = subgroups.iter().map(|h| s.centralizer(h).order()).collect();
        let normalizer_orders = subgroups.iter().map(|h| s.normalizer(h).order()).collect();
        let mut fs = FusionSystem {
            s,
            p,
            subgroups,
            lookup,
            generators,
            generator_inverses,
            ambient,
            classes: Vec::new(),
            slot: Vec::new(),
            centralizer_orders,
            normalizer_orders,
        };
        fs.build_classes();
        Ok(fs)
    }

    fn subgroup_of_images(&self, images: &[u32]) -> usize {
        let mut key = images.to_vec();
        key.sort_unstable();
        self.lookup[&key]
    }

    /// Base edges out of subgroup `a`: restriction-closed generators of the groupoid.
    fn edges_from(&self, a: usize) -> Vec<(usize, Vec<u32>, Step)> {
        let h = &self.subgroups[a];
        let mut seen: HashSet<Vec<u32>> = HashSet::new();
        let mut out = Vec::new();
        let mut push = |images: Vec<u32>, step: Step, out: &mut Vec<(usize, Vec<u32>, Step)>| {
            if seen.insert(images.clone()) {
                let b = self.subgroup_of_images(&images);
                out.push((b, images, step));
            }
        };
        match &self.ambient {
            Some(amb) => {
                for g in 0..amb.group.order() as u32 {
                    let images: Option<Vec<u32>> = h
                        .members()
                        .iter()
                        .map(|&x| {
                            let y = amb.back[amb.group.conj(amb.embed[x as usize], g) as usize];
                            (y != UNSET).then_some(y)
                        })
                        .collect();
                    if let Some(images) = images {
                        push(images, Step::Conj(g), &mut out);
                    }
                }
            }
            None => {
                for x in 0..self.s.order() as u32 {
                    let images = h.members().iter().map(|&u| self.s.conj(u, x)).collect();
                    push(images, Step::Inner(x), &mut out);
                }
            }
        }
        for (index, (g, gi)) in self.generators.iter().zip(&self.generator_inverses).enumerate() {
            if h.is_subset_of(g.domain()) {
                let images = h.members().iter().map(|&u| g.apply(u).unwrap()).collect();
                push(images, Step::Gen { index, inverse: false }, &mut out);
            }
            if h.is_subset_of(gi.domain()) {
                let images = h.members().iter().map(|&u| gi.apply(u).unwrap()).collect();
                push(images, Step::Gen { index, inverse: true }, &mut out);
            }
        }
        out
    }

    fn build_classes(&mut self) {
        let n = self.subgroups.len();
        let order = self.s.order();
        let mut slot = vec![(usize::MAX, 0usize); n];
        let mut classes = Vec::new();
        for root in 0..n {
            if slot[root].0 != usize::MAX {
                continue;
            }
            let ci = classes.len();
            let r = &self.subgroups[root];
            let mut class = Class {
                root,
                members: vec![root],
                tau: vec![r.members().to_vec()],
                tau_inv: Vec::new(),
                tau_word: vec![Vec::new()],
                autos: Vec::new(),
                auto_index: HashMap::new(),
                auto_parent: Vec::new(),
                schreier: Vec::new(),
            };
            let mut inv = vec![UNSET; order];
            for (j, &x) in r.members().iter().enumerate() {
                inv[x as usize] = j as u32;
            }
            class.tau_inv.push(inv);
            slot[root] = (ci, 0);
            let mut edges: Vec<Vec<(usize, Vec<u32>, Step)>> = Vec::new();
            let mut head = 0;
            while head < class.members.len() {
                let a = class.members[head];
                let ea = self.edges_from(a);
                let ha = &self.subgroups[a];
                for (b, images, step) in &ea {
                    if slot[*b].0 != usize::MAX {
                        continue;
                    }
                    let tau_b: Vec<u32> =
                        class.tau[head].iter().map(|&x| images[ha.position(x).unwrap()]).collect();
                    let mut inv = vec![UNSET; order];
                    for (j, &x) in tau_b.iter().enumerate() {
                        inv[x as usize] = j as u32;
                    }
                    let mut word = class.tau_word[head].clone();
                    word.push(*step);
                    slot[*b] = (ci, class.members.len());
                    class.members.push(*b);
                    class.tau.push(tau_b);
                    class.tau_inv.push(inv);
                    class.tau_word.push(word);
                }
                edges.push(ea);
                head += 1;
            }
            // Schreier generators of Aut_F(R)
            let mut seen: HashSet<Vec<u32>> = HashSet::new();
            let identity: Vec<u32> = (0..r.order() as u32).collect();
            seen.insert(identity.clone());
            for (ka, ea) in edges.iter().enumerate() {
                let ha = &self.subgroups[class.members[ka]];
                for (b, images, step) in ea {
                    let kb = slot[*b].1;
                    let g: Vec<u32> = class.tau[ka]
                        .iter()
                        .map(|&x| class.tau_inv[kb][images[ha.position(x).unwrap()] as usize])
                        .collect();
                    if seen.insert(g.clone()) {
                        let mut word = class.tau_word[ka].clone();
                        word.push(*step);
                        word.extend(invert_word(&class.tau_word[kb], &self.s, self.ambient.as_ref()));
                        class.schreier.push((g, word));
                    }
                }
            }
            class.auto_index.insert(identity.clone(), 0);
            class.autos.push(identity);
            class.auto_parent.push((usize::MAX, usize::MAX));
            let mut head = 0;
            while head < class.autos.len() {
                for (gi, (g, _)) in class.schreier.iter().enumerate() {
                    let c: Vec<u32> = class.autos[head].iter().map(|&j| g[j as usize]).collect();
                    if !class.auto_index.contains_key(&c) {
                        class.auto_index.insert(c.clone(), class.autos.len());
                        class.autos.push(c);
                        class.auto_parent.push((head, gi));
                    }
                }
                head += 1;
            }
            let mut sorted = class.members.clone();
            sorted.sort_unstable();
            debug_assert!(sorted.windows(2).all(|w| w[0] != w[1]));
            classes.push(class);
        }
        self.classes = classes;
        self.slot = slot;
    }

    pub fn s(&self) -> &FiniteGroup {
        &self.s
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    /// Every subgroup of `S`, in canonical order.
    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn subgroup_index(&self, h: &Subgroup) -> Option<usize> {
        self.lookup.get(h.members()).copied()
    }

    fn index(&self, h: &Subgroup) -> Result<usize> {
        self.subgroup_index(h).ok_or_else(|| Error::NotASubgroup("not a subgroup of S".into()))
    }

    pub fn generators(&self) -> &[GroupHom] {
        &self.generators
    }

    /// The group `G` for systems built by `fusion_of_group`.
    pub fn ambient_group(&self) -> Option<&FiniteGroup> {
        self.ambient.as_ref().map(|a| a.group.as_ref())
    }

    /// Index in the ambient group of an element of `S`.
    pub fn ambient_index(&self, x: u32) -> Option<u32> {
        self.ambient.as_ref().map(|a| a.embed[x as usize])
    }

    /// Every subgroup F-isomorphic to `h`, in canonical order.
    pub fn iso_class(&self, h: &Subgroup) -> Result<Vec<Subgroup>> {
        let (c, _) = self.slot[self.index(h)?];
        let mut members = self.classes[c].members.clone();
        members.sort_unstable();
        Ok(members.into_iter().map(|i| self.subgroups[i].clone()).collect())
    }

    pub fn are_isomorphic(&self, a: &Subgroup, b: &Subgroup) -> Result<bool> {
        Ok(self.slot[self.index(a)?].0 == self.slot[self.index(b)?].0)
    }

    /// `τ_B ∘ a ∘ τ_A⁻¹` as images aligned with `A.members()`.
    fn iso_images(&self, class: &Class, ka: usize, kb: usize, auto: usize) -> Vec<u32> {
        let a = &self.subgroups[class.members[ka]];
        let aut = &class.autos[auto];
        a.members()
            .iter()
            .map(|&x| class.tau[kb][aut[class.tau_inv[ka][x as usize] as usize] as usize])
            .collect()
    }

    /// Every isomorphism in F out of subgroup `a`, as (target index, images).
    fn isos_from_index(&self, a: usize) -> impl Iterator<Item = (usize, Vec<u32>)> + '_ {
        let (c, ka) = self.slot[a];
        let class = &self.classes[c];
        (0..class.members.len()).flat_map(move |kb| {
            (0..class.autos.len()).map(move |k| (class.members[kb], self.iso_images(class, ka, kb, k)))
        })
    }

    fn isos_between_index(&self, a: usize, b: usize) -> Vec<Vec<u32>> {
        let (c, ka) = self.slot[a];
        let (cb, kb) = self.slot[b];
        if c != cb {
            return Vec::new();
        }
        let class = &self.classes[c];
        (0..class.autos.len()).map(|k| self.iso_images(class, ka, kb, k)).collect()
    }

    /// Every isomorphism `P → Q` in F, sorted by images.
    pub fn isomorphisms(&self, p: &Subgroup, q: &Subgroup) -> Result<Vec<GroupHom>> {
        let (a, b) = (self.index(p)?, self.index(q)?);
        let mut out: Vec<GroupHom> = self
            .isos_between_index(a, b)
            .into_iter()
            .map(|im| GroupHom::new_unchecked(p.clone(), q.clone(), im))
            .collect();
        out.sort_by(|x, y| x.images().cmp(y.images()));
        Ok(out)
    }

    /// `Hom_F(P, Q)`, sorted by images.
    pub fn hom_set(&self, p: &Subgroup, q: &Subgroup) -> Result<Vec<GroupHom>> {
        let a = self.index(p)?;
        self.index(q)?;
        let mut out: Vec<GroupHom> = self
            .isos_from_index(a)
            .filter(|(b, _)| self.subgroups[*b].is_subset_of(q))
            .map(|(_, im)| GroupHom::new_unchecked(p.clone(), q.clone(), im))
            .collect();
        out.sort_by(|x, y| x.images().cmp(y.images()));
        Ok(out)
    }

    pub fn hom_set_size(&self, p: &Subgroup, q: &Subgroup) -> Result<usize> {
        let a = self.index(p)?;
        self.index(q)?;
        let (c, _) = self.slot[a];
        let class = &self.classes[c];
        let targets = class.members.iter().filter(|&&b| self.subgroups[b].is_subset_of(q)).count();
        Ok(targets * class.autos.len())
    }

    /// `Aut_F(P)`, sorted by images.
    pub fn aut_f(&self, p: &Subgroup) -> Result<Vec<GroupHom>> {
        self.isomorphisms(p, p)
    }

    pub fn aut_f_order(&self, p: &Subgroup) -> Result<usize> {
        Ok(self.classes[self.slot[self.index(p)?].0].autos.len())
    }

    /// `Aut_S(P)`: conjugations by `N_S(P)` restricted to `P`, deduplicated.
    pub fn aut_s(&self, p: &Subgroup) -> Result<Vec<GroupHom>> {
        self.index(p)?;
        Ok(aut_s(&self.s, p))
    }

    /// `Out_F(P) = Aut_F(P)/Aut_P(P)` as a permutation group.
    pub fn out_f(&self, p: &Subgroup) -> Result<FiniteGroup> {
        let autos = self.aut_f(p)?;
        let to_perm = |f: &GroupHom| {
            let images = f.images().iter().map(|&y| p.position(y).unwrap() as u32).collect();
            crate::perm::Perm::from_images(images).expect("automorphism permutes positions")
        };
        let perms: Vec<crate::perm::Perm> = autos.iter().map(to_perm).collect();
        let limits = crate::group::Limits { max_order: autos.len().max(1), ..self.s.limits() };
        let aut = FiniteGroup::generate_with_limits(p.order(), &perms, limits)?;
        let inner: Vec<u32> = p
            .members()
            .iter()
            .map(|&g| {
                let images = p.members().iter().map(|&u| p.position(self.s.conj(u, g)).unwrap() as u32).collect();
                aut.index_of(&crate::perm::Perm::from_images(images).unwrap())
                    .expect("inner automorphisms lie in Aut_F")
            })
            .collect();
        let mut inner_sorted = inner;
        inner_sorted.sort_unstable();
        inner_sorted.dedup();
        let inn = aut.subgroup_from_members(&inner_sorted)?;
        Ok(aut.quotient(&inn)?.0)
    }

    pub fn is_fully_centralized(&self, p: &Subgroup) -> Result<bool> {
        let a = self.index(p)?;
        let class = &self.classes[self.slot[a].0];
        Ok(class.members.iter().all(|&b| self.centralizer_orders[a] >= self.centralizer_orders[b]))
    }

    pub fn is_fully_normalized(&self, p: &Subgroup) -> Result<bool> {
        let a = self.index(p)?;
        let class = &self.classes[self.slot[a].0];
        Ok(class.members.iter().all(|&b| self.normalizer_orders[a] >= self.normalizer_orders[b]))
    }

    /// Whether `f` (with domain and image subgroups of `S`) is a morphism of F.
    pub fn contains(&self, f: &GroupHom) -> bool {
        let Some(a) = self.subgroup_index(f.domain()) else { return false };
        if !f.is_injective() || f.images().iter().any(|&y| y as usize >= self.s.order()) {
            return false;
        }
        let mut key = f.images().to_vec();
        key.sort_unstable();
        let Some(&b) = self.lookup.get(&key) else { return false };
        self.auto_for(a, b, f.images()).is_some()
    }

    /// Index in `Aut_F(R)` of `τ_B⁻¹ ∘ f ∘ τ_A`, if `f: A → B` lies in F.
    fn auto_for(&self, a: usize, b: usize, images: &[u32]) -> Option<(usize, usize, usize, usize)> {
        let (c, ka) = self.slot[a];
        let (cb, kb) = self.slot[b];
        if c != cb {
            return None;
        }
        let class = &self.classes[c];
        let ha = &self.subgroups[a];
        let g: Vec<u32> = class.tau[ka]
            .iter()
            .map(|&x| class.tau_inv[kb][images[ha.position(x).unwrap()] as usize])
            .collect();
        class.auto_index.get(&g).map(|&k| (c, ka, kb, k))
    }

    fn auto_word(&self, class: &Class, k: usize) -> Vec<Step> {
        let mut chain = Vec::new();
        let mut cur = k;
        while class.auto_parent[cur].0 != usize::MAX {
            let (parent, gen) = class.auto_parent[cur];
            chain.push(gen);
            cur = parent;
        }
        chain.reverse();
        chain.into_iter().flat_map(|g| class.schreier[g].1.iter().copied()).collect()
    }

    /// A word of steps whose left-to-right evaluation is `f`.
    pub fn witness_steps(&self, f: &GroupHom) -> Option<Vec<Step>> {
        let a = self.subgroup_index(f.domain())?;
        let mut key = f.images().to_vec();
        key.sort_unstable();
        let b = *self.lookup.get(&key)?;
        let (c, ka, kb, k) = self.auto_for(a, b, f.images())?;
        let class = &self.classes[c];
        let mut word = invert_word(&class.tau_word[ka], &self.s, self.ambient.as_ref());
        word.extend(self.auto_word(class, k));
        word.extend(class.tau_word[kb].iter().copied());
        Some(self.simplify(word))
    }

    fn simplify(&self, word: Vec<Step>) -> Vec<Step> {
        let mut out: Vec<Step> = Vec::with_capacity(word.len());
        for st in word {
            match (out.last().copied(), st) {
                (Some(Step::Inner(x)), Step::Inner(y)) => {
                    out.pop();
                    out.push(Step::Inner(self.s.mul(x, y)));
                }
                (Some(Step::Conj(x)), Step::Conj(y)) => {
                    out.pop();
                    let g = &self.ambient.as_ref().expect("conjugator steps need an ambient group").group;
                    out.push(Step::Conj(g.mul(x, y)));
                }
                (Some(Step::Gen { index: i, inverse: a }), Step::Gen { index: j, inverse: b })
                    if i == j && a != b =>
                {
                    out.pop();
                }
                _ => out.push(st),
            }
            if matches!(out.last(), Some(Step::Inner(0)) | Some(Step::Conj(0))) {
                out.pop();
            }
        }
        out
    }

    /// The morphism `f` with a witness of how it arises, if it lies in F.
    pub fn morphism(&self, f: &GroupHom) -> Option<FusionMorphism> {
        let steps = self.witness_steps(f)?;
        let witness = if let Some(g) = &self.ambient {
            let conj = steps.iter().fold(g.group.identity(), |acc, st| match *st {
                Step::Conj(x) => g.group.mul(acc, x),
                _ => unreachable!("group fusion words contain only conjugators"),
            });
            Witness::Conjugator(conj)
        } else {
            Witness::Word(steps)
        };
        Some(FusionMorphism { hom: f.clone(), witness: Some(witness) })
    }

    pub fn factorization(&self, f: &GroupHom) -> Option<FusionFactorization> {
        let steps = self.witness_steps(f)?;
        Some(FusionFactorization { domain: f.domain().clone(), steps })
    }

    /// Every isomorphism of F onto its image, codomain set to the image.
    pub fn all_isomorphisms(&self) -> Vec<GroupHom> {
        (0..self.subgroups.len())
            .flat_map(|a| {
                self.isos_from_index(a).map(move |(b, im)| {
                    GroupHom::new_unchecked(self.subgroups[a].clone(), self.subgroups[b].clone(), im)
                })
            })
            .collect()
    }

    /// Number of isomorphisms of F (morphisms counted onto their image).
    pub fn isomorphism_count(&self) -> usize {
        self.classes.iter().map(|c| c.members.len() * c.members.len() * c.autos.len()).sum()
    }

    /// `|Hom_F(P, Q)|` for every ordered pair, indexed like `subgroups()`.
    pub fn census(&self) -> Vec<Vec<usize>> {
        let n = self.subgroups.len();
        let mut out = vec![vec![0usize; n]; n];
        for (a, row) in out.iter_mut().enumerate() {
            let class = &self.classes[self.slot[a].0];
            for &b in &class.members {
                for (q, cell) in row.iter_mut().enumerate() {
                    if self.subgroups[b].is_subset_of(&self.subgroups[q]) {
                        *cell += class.autos.len();
                    }
                }
            }
        }
        out
    }

    /// `N_f` for an isomorphism `f: P → Q` of F.
    pub fn compute_nf(&self, f: &GroupHom) -> Result<Subgroup> {
        let p = f.domain();
        let q = f.image(&self.s);
        if !f.is_injective() {
            return Err(Error::NotAnIsomorphism("morphism is not injective".into()));
        }
        self.index(p)?;
        Ok(compute_nf(&self.s, f, &q))
    }

    fn check_same_ambient(&self, other: &FusionSystem) -> Result<()> {
        if self.s != other.s || self.p != other.p {
            return Err(Error::AmbientMismatch);
        }
        Ok(())
    }
}

/// `Aut_S(P)` inside the group `s`.
pub(crate) fn aut_s(s: &FiniteGroup, p: &Subgroup) -> Vec<GroupHom> {
    let n = s.normalizer(p);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for &g in n.members() {
        let images: Vec<u32> = p.members().iter().map(|&u| s.conj(u, g)).collect();
        if seen.insert(images.clone()) {
            out.push(GroupHom::new_unchecked(p.clone(), p.clone(), images));
        }
    }
    out.sort_by(|x, y| x.images().cmp(y.images()));
    out
}

/// `{g ∈ N_S(P) : f ∘ c_g ∘ f⁻¹ ∈ Aut_S(Q)}` with `Q = f(P)`.
pub(crate) fn compute_nf(s: &FiniteGroup, f: &GroupHom, q: &Subgroup) -> Subgroup {
    let p = f.domain();
    let aut_sq: HashSet<Vec<u32>> = aut_s(s, q).into_iter().map(|h| h.images().to_vec()).collect();
    let finv = f.inverse(s).expect("f is injective").with_codomain(p.clone()).unwrap();
    let n = s.normalizer(p);
    let members: Vec<u32> = n
        .members()
        .iter()
        .copied()
        .filter(|&g| {
            let images: Vec<u32> = q
                .members()
                .iter()
                .map(|&y| f.apply(s.conj(finv.apply(y).unwrap(), g)).unwrap())
                .collect();
            aut_sq.contains(&images)
        })
        .collect();
    s.subgroup_from_members(&members).expect("N_f is a subgroup")
}

/// Hom-set-wise equality of two fusion systems on the same `S`.
pub fn fusion_equal(a: &FusionSystem, b: &FusionSystem) -> Result<bool> {
    Ok(fusion_subsystem(a, b)? && fusion_subsystem(b, a)?)
}

/// Whether every morphism of `a` lies in `b`.
pub fn fusion_subsystem(a: &FusionSystem, b: &FusionSystem) -> Result<bool> {
    a.check_same_ambient(b)?;
    for class in &a.classes {
        let r = class.root;
        for (k, &m) in class.members.iter().enumerate() {
            if b.auto_for(r, m, &class.tau[k]).is_none() {
                return Ok(false);
            }
        }
        let rm = a.subgroups[r].members();
        for (g, _) in &class.schreier {
            let images: Vec<u32> = g.iter().map(|&j| rm[j as usize]).collect();
            if b.auto_for(r, r, &images).is_none() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

impl StepAction for FusionSystem {
    fn act(&self, step: &Step, x: u32) -> Option<u32> {
        match *step {
            Step::Inner(g) => Some(self.s.conj(x, g)),
            Step::Gen { index, inverse } => {
                let g = if inverse { self.generator_inverses.get(index)? } else { self.generators.get(index)? };
                g.apply(x)
            }
            Step::Conj(g) => {
                let amb = self.ambient.as_ref()?;
                let y = amb.back[amb.group.conj(amb.embed[x as usize], g) as usize];
                (y != UNSET).then_some(y)
            }
            Step::Arm { .. } => None,
        }
    }

    fn group(&self) -> &FiniteGroup {
        &self.s
    }
}

#[cfg(test)]
mod tests;
