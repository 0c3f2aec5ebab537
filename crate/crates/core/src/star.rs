//! Trees of groups shaped like a star: a central p-group `S` amalgamated with
//! finite groups `G_i` along Sylow subgroups `S'_i ≤ G_i` embedded by `f_i`.

use std::collections::HashSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fusion::{fusion_closure, FusionFactorization, FusionSystem, Step, StepAction};
use crate::group::{p_part, FiniteGroup, Subgroup};
use crate::hom::{find_isomorphism, GroupHom};
use crate::perm::{lcm, Perm};
use crate::presentation::{cayley_presentation, invert, shift, Letter, Presentation};
use crate::subgroups::largest_normal_p_subgroup;

const UNSET: u32 = u32::MAX;

/// Default bound on the number of points of [`StarData::finite_quotient`].
pub const DEFAULT_QUOTIENT_CAP: usize = 10_000;

#[derive(Clone, Debug)]
pub struct StarArm {
    pub group: Arc<FiniteGroup>,
    /// `S'_i`, a Sylow p-subgroup of `G_i`.
    pub sylow: Subgroup,
    /// `f_i: S'_i → S`, injective.
    pub embedding: GroupHom,
    /// `S_i = f_i(S'_i)`.
    image: Subgroup,
    /// `f_i⁻¹` on element indices of `S`, `UNSET` outside `S_i`.
    back: Vec<u32>,
}

impl StarArm {
    pub fn image(&self) -> &Subgroup {
        &self.image
    }

    fn forward(&self, g: u32) -> Option<u32> {
        self.embedding.apply(g)
    }

    fn backward(&self, x: u32) -> Option<u32> {
        let y = *self.back.get(x as usize)?;
        (y != UNSET).then_some(y)
    }
}

#[derive(Clone, Debug)]
pub struct StarData {
    s: Arc<FiniteGroup>,
    p: u32,
    arms: Vec<StarArm>,
}

impl StarData {
    /// Each arm is `(G_i, S'_i, f_i)` with `f_i` defined on `S'_i` and landing in `S`.
    /// Any Sylow p-subgroup of `G_i` is accepted as `S'_i`.
    pub fn new(s: &FiniteGroup, p: u32, arms: Vec<(FiniteGroup, Subgroup, GroupHom)>) -> Result<Self> {
        if !s.is_p_group(p) {
            return Err(Error::NotAPGroup { order: s.order(), prime: p });
        }
        let mut out = Vec::with_capacity(arms.len());
        for (i, (g, sylow, f)) in arms.into_iter().enumerate() {
            if !g.is_subgroup(&sylow) {
                return Err(Error::NotASubgroup(format!("S'_{i} is not a subgroup of its arm group")));
            }
            if sylow.order() as u64 != p_part(g.order() as u64, p as u64) {
                return Err(Error::PreconditionFailed(format!("S'_{i} is not a Sylow {p}-subgroup")));
            }
            if f.domain() != &sylow {
                return Err(Error::BadDomain(format!("f_{i} must be defined on S'_{i}")));
            }
            let f = GroupHom::new(&g, sylow.clone(), s, s.all(), f.images().to_vec())?;
            if !f.is_injective() {
                return Err(Error::NotAHomomorphism(format!("f_{i} is not injective")));
            }
            let image = f.image(s);
            let mut back = vec![UNSET; s.order()];
            for (k, &y) in f.images().iter().enumerate() {
                back[y as usize] = sylow.members()[k];
            }
            out.push(StarArm { group: Arc::new(g), sylow, embedding: f, image, back });
        }
        Ok(StarData { s: Arc::new(s.clone().with_prime(p)), p, arms: out })
    }

    pub fn s(&self) -> &FiniteGroup {
        &self.s
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn arms(&self) -> &[StarArm] {
        &self.arms
    }
}

/// A letter of a star word: an element of `S` or of one arm group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StarLetter {
    Center(u32),
    Arm(usize, u32),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct StarWord {
    pub letters: Vec<StarLetter>,
}

impl StarWord {
    pub fn new(letters: Vec<StarLetter>) -> Self {
        StarWord { letters }
    }

    pub fn center(s: u32) -> Self {
        StarWord { letters: vec![StarLetter::Center(s)] }
    }

    /// Number of arm letters.
    pub fn arm_letters(&self) -> usize {
        self.letters.iter().filter(|l| matches!(l, StarLetter::Arm(..))).count()
    }
}

impl StarData {
    fn check_word(&self, w: &StarWord) -> Result<()> {
        for l in &w.letters {
            let ok = match *l {
                StarLetter::Center(x) => (x as usize) < self.s.order(),
                StarLetter::Arm(i, g) => self.arms.get(i).is_some_and(|a| (g as usize) < a.group.order()),
            };
            if !ok {
                return Err(Error::BadDomain(format!("letter {l:?} is out of range")));
            }
        }
        Ok(())
    }

    fn letter_inverse(&self, l: StarLetter) -> StarLetter {
        match l {
            StarLetter::Center(x) => StarLetter::Center(self.s.inv(x)),
            StarLetter::Arm(i, g) => StarLetter::Arm(i, self.arms[i].group.inv(g)),
        }
    }

    pub fn inverse(&self, w: &StarWord) -> StarWord {
        StarWord { letters: w.letters.iter().rev().map(|&l| self.letter_inverse(l)).collect() }
    }

    pub fn concat(&self, a: &StarWord, b: &StarWord) -> StarWord {
        StarWord { letters: a.letters.iter().chain(&b.letters).copied().collect() }
    }

    /// One rewriting step at the leftmost position where any rule applies.
    fn rewrite_once(&self, letters: &mut Vec<StarLetter>) -> bool {
        use StarLetter::*;
        for k in 0..letters.len() {
            match letters[k] {
                Center(0) | Arm(_, 0) => {
                    letters.remove(k);
                    return true;
                }
                _ => {}
            }
            if let Some(&next) = letters.get(k + 1) {
                let merged = match (letters[k], next) {
                    (Center(x), Center(y)) => Some(Center(self.s.mul(x, y))),
                    (Arm(i, x), Arm(j, y)) if i == j => Some(Arm(i, self.arms[i].group.mul(x, y))),
                    _ => None,
                };
                if let Some(m) = merged {
                    letters.splice(k..k + 2, [m]);
                    return true;
                }
            }
            if let Arm(i, g) = letters[k] {
                if let Some(x) = self.arms[i].forward(g) {
                    letters[k] = Center(x);
                    return true;
                }
            }
            if let Center(x) = letters[k] {
                if k > 0 {
                    if let (Arm(i, _), Some(Arm(j, _))) = (letters[k - 1], letters.get(k + 1)) {
                        if i == *j {
                            if let Some(g) = self.arms[i].backward(x) {
                                letters[k] = Arm(i, g);
                                return true;
                            }
                        }
                    }
                }
            }
        }
        false
    }

    /// Amalgam normal form: identity letters dropped, same-vertex neighbours
    /// multiplied, arm letters in `S'_i` moved to `S` through `f_i`, and
    /// centre letters in `S_i` between two letters of arm `i` absorbed into it.
    pub fn star_reduce(&self, w: &StarWord) -> Result<StarWord> {
        self.check_word(w)?;
        let mut letters = w.letters.clone();
        while self.rewrite_once(&mut letters) {}
        Ok(StarWord { letters })
    }

    pub fn is_reduced(&self, w: &StarWord) -> bool {
        let mut letters = w.letters.clone();
        !self.rewrite_once(&mut letters)
    }

    /// The element of `S` represented by `w`, if it lies in `S`.
    pub fn word_in_s(&self, w: &StarWord) -> Result<Option<u32>> {
        let r = self.star_reduce(w)?;
        Ok(match r.letters.as_slice() {
            [] => Some(0),
            [StarLetter::Center(x)] => Some(*x),
            _ => None,
        })
    }

    /// `u ↦ w⁻¹uw` on `P`, if every image lies in `S`.
    pub fn conjugation_by_word(&self, w: &StarWord, p: &Subgroup) -> Result<Option<GroupHom>> {
        self.check_word(w)?;
        let winv = self.inverse(w);
        let mut images = Vec::with_capacity(p.order());
        for &u in p.members() {
            let conj = self.concat(&self.concat(&winv, &StarWord::center(u)), w);
            match self.word_in_s(&conj)? {
                Some(x) => images.push(x),
                None => return Ok(None),
            }
        }
        Ok(Some(GroupHom::new_unchecked(p.clone(), self.s.all(), images)))
    }

    /// Steps read off the reduced form of `w`: `Inner(s)` for centre letters
    /// and `Arm` steps for arm letters, every domain condition checked.
    pub fn decompose_fusion_star(&self, w: &StarWord, p: &Subgroup, q: &Subgroup) -> Result<FusionFactorization> {
        let conj = self
            .conjugation_by_word(w, p)?
            .ok_or_else(|| Error::PreconditionFailed("w⁻¹Pw is not contained in S".into()))?;
        if conj.images().iter().any(|&y| !q.contains(y)) {
            return Err(Error::PreconditionFailed("w⁻¹Pw is not contained in Q".into()));
        }
        let r = self.star_reduce(w)?;
        let steps: Vec<Step> = r
            .letters
            .iter()
            .map(|l| match *l {
                StarLetter::Center(x) => Step::Inner(x),
                StarLetter::Arm(arm, element) => Step::Arm { arm, element },
            })
            .collect();
        let fact = FusionFactorization { domain: p.clone(), steps };
        let value = fact
            .evaluate(self)
            .map_err(|e| Error::InternalContradiction(format!("reduced word leaves S along its path: {e}")))?;
        if value.images() != conj.images() {
            return Err(Error::InternalContradiction("factorization differs from conjugation by w".into()));
        }
        Ok(fact)
    }

    /// Conjugations `f_i ∘ c_g ∘ f_i⁻¹` on `f_i(S'_i ∩ gS'_ig⁻¹)`, one per
    /// distinct map, each with the arm step it comes from.
    pub fn fusion_generators(&self) -> Vec<(GroupHom, Step)> {
        let mut out = Vec::new();
        for (i, arm) in self.arms.iter().enumerate() {
            let g = &arm.group;
            let mut seen = HashSet::new();
            for x in 0..g.order() as u32 {
                let dom_g = arm.sylow.intersection(&g.conjugate_subgroup(&arm.sylow, g.inv(x)));
                if dom_g.is_trivial() {
                    continue;
                }
                let dom: Vec<u32> = dom_g.members().iter().map(|&u| arm.forward(u).unwrap()).collect();
                let images: Vec<u32> = dom_g.members().iter().map(|&u| arm.forward(g.conj(u, x)).unwrap()).collect();
                let mut key: Vec<(u32, u32)> = dom.iter().copied().zip(images.iter().copied()).collect();
                key.sort_unstable();
                if key.iter().all(|&(a, b)| a == b) || !seen.insert(key.clone()) {
                    continue;
                }
                let members: Vec<u32> = key.iter().map(|&(a, _)| a).collect();
                let images: Vec<u32> = key.iter().map(|&(_, b)| b).collect();
                let domain = self.s.subgroup_from_members(&members).expect("image of a subgroup");
                out.push((GroupHom::new_unchecked(domain, self.s.all(), images), Step::Arm { arm: i, element: x }));
            }
        }
        out
    }

    /// The fusion system on `S` generated by the pushed-forward arm fusion.
    pub fn generated_fusion(&self) -> Result<FusionSystem> {
        let gens: Vec<GroupHom> = self.fusion_generators().into_iter().map(|(h, _)| h).collect();
        fusion_closure(&self.s, self.p, &gens)
    }

    /// Translates a factorization over [`Self::generated_fusion`] generators
    /// into `Inner` and `Arm` steps.
    pub fn arm_steps(&self, steps: &[Step]) -> Result<Vec<Step>> {
        let table = self.fusion_generators();
        steps
            .iter()
            .map(|st| match *st {
                Step::Inner(x) => Ok(Step::Inner(x)),
                Step::Gen { index, inverse } => {
                    let (_, step) = table.get(index).ok_or_else(|| Error::BadDomain("unknown generator".into()))?;
                    let Step::Arm { arm, element } = *step else { unreachable!() };
                    let element = if inverse { self.arms[arm].group.inv(element) } else { element };
                    Ok(Step::Arm { arm, element })
                }
                _ => Err(Error::BadDomain(format!("{st:?} is not a star step"))),
            })
            .collect()
    }

    /// Generators `s<k>` for `S` and `g<i>_<k>` for arm `i`; relators are
    /// Cayley-graph presentations of every vertex group, then `s·f_i(s)⁻¹`
    /// for every `s ∈ S'_i`.
    pub fn presentation(&self) -> Presentation {
        let cs = cayley_presentation(&self.s);
        let mut generators: Vec<String> = (0..cs.generators.len()).map(|k| format!("s{k}")).collect();
        let mut relators: Vec<Vec<Letter>> = cs.relators.clone();
        let mut arm_parts = Vec::with_capacity(self.arms.len());
        for (i, arm) in self.arms.iter().enumerate() {
            let ca = cayley_presentation(&arm.group);
            let offset = generators.len();
            generators.extend((0..ca.generators.len()).map(|k| format!("g{i}_{k}")));
            relators.extend(ca.relators.iter().map(|r| shift(r, offset)));
            arm_parts.push((offset, ca));
        }
        for (arm, (offset, ca)) in self.arms.iter().zip(&arm_parts) {
            for (k, &u) in arm.sylow.members().iter().enumerate() {
                let mut r = shift(&ca.words[u as usize], *offset);
                r.extend(invert(&cs.words[arm.embedding.images()[k] as usize]));
                relators.push(r);
            }
        }
        Presentation { generators, relators }
    }

    /// Free actions of `S` and every `G_i` on `N = lcm(|S|, |G_1|, …)` points
    /// that agree on each `S'_i` through `f_i`.
    ///
    /// `S` acts by left multiplication on `N/|S|` blocks. For arm `i` the
    /// `S_i`-orbits are listed by least point and grouped into runs of
    /// `|G_i : S'_i|`; inside a run with base points `ω_j`, the point
    /// `f_i(h)·ω_j` is identified with `h·r_j ∈ G_i`, where `r_j` are the
    /// least right coset representatives of `S'_i`.
    pub fn finite_quotient(&self, cap: usize) -> Result<StarQuotient> {
        let ns = self.s.order();
        let n = self.arms.iter().fold(ns as u64, |acc, a| lcm(acc, a.group.order() as u64)) as usize;
        if n > cap {
            return Err(Error::CapExceeded { what: "quotient degree".into(), limit: cap });
        }
        let blocks = n / ns;
        let s_perms: Vec<Perm> = (0..ns as u32)
            .map(|x| {
                let images = (0..n).map(|pt| ((pt / ns) * ns + self.s.mul(x, (pt % ns) as u32) as usize) as u32).collect();
                Perm::from_images(images).expect("regular blocks")
            })
            .collect();
        let mut arm_perms = Vec::with_capacity(self.arms.len());
        for arm in &self.arms {
            let g = &arm.group;
            let cosets = g.right_cosets(&arm.sylow);
            let m = cosets.len();
            let mut coset_of = vec![0usize; g.order()];
            for (j, c) in cosets.iter().enumerate() {
                for &x in c {
                    coset_of[x as usize] = j;
                }
            }
            let reps: Vec<u32> = cosets.iter().map(|c| c[0]).collect();
            // base points of the S_i-orbits, in order of least point
            let orbit_starts: Vec<usize> = (0..blocks)
                .flat_map(|b| s_right_coset_leasts(&self.s, &arm.image).into_iter().map(move |x| b * ns + x as usize))
                .collect();
            // (run, position in run, h ∈ S'_i) for every point
            let mut locate = vec![(0usize, 0usize, 0u32); n];
            for (o, &base) in orbit_starts.iter().enumerate() {
                let (b, x0) = (base / ns, (base % ns) as u32);
                for &si in arm.image.members() {
                    let pt = b * ns + self.s.mul(si, x0) as usize;
                    locate[pt] = (o / m, o % m, arm.backward(si).unwrap());
                }
            }
            let perms: Vec<Perm> = (0..g.order() as u32)
                .map(|x| {
                    let images = (0..n)
                        .map(|pt| {
                            let (run, j, h) = locate[pt];
                            let y = g.mul(g.mul(x, h), reps[j]);
                            let k = coset_of[y as usize];
                            let h2 = g.mul(y, g.inv(reps[k]));
                            let base = orbit_starts[run * m + k];
                            let (b, x0) = (base / ns, (base % ns) as u32);
                            (b * ns + self.s.mul(arm.forward(h2).unwrap(), x0) as usize) as u32
                        })
                        .collect();
                    Perm::from_images(images).expect("arm action is a permutation")
                })
                .collect();
            arm_perms.push(perms);
        }
        let pres = self.presentation();
        let cs = cayley_presentation(&self.s);
        let mut assignment: Vec<Perm> = cs.generators.iter().map(|&x| s_perms[x as usize].clone()).collect();
        for (arm, perms) in self.arms.iter().zip(&arm_perms) {
            let ca = cayley_presentation(&arm.group);
            assignment.extend(ca.generators.iter().map(|&x| perms[x as usize].clone()));
        }
        debug_assert_eq!(assignment.len(), pres.generators.len());
        Ok(StarQuotient { degree: n, presentation: pres, assignment, s_perms, arm_perms })
    }

    /// Checks the three Alperin conditions arm by arm against `f`, which
    /// should be [`Self::generated_fusion`].
    pub fn is_alperin(&self, f: &FusionSystem) -> Result<AlperinReport> {
        let mut per_arm = Vec::with_capacity(self.arms.len());
        for arm in &self.arms {
            let g = &arm.group;
            let e = largest_normal_p_subgroup(g, self.p)?;
            let centralizer = g.centralizer(&e);
            let condition1 = centralizer == g.center_of(&e);
            let e_image: Vec<u32> = {
                let mut v: Vec<u32> = e.members().iter().map(|&u| arm.forward(u).expect("O_p lies in every Sylow")).collect();
                v.sort_unstable();
                v
            };
            let e_image = self.s.subgroup_from_members(&e_image)?;
            let (quotient, _) = g.quotient(&e)?;
            let out = f.out_f(&e_image)?;
            let condition2 = quotient.order() == out.order() && find_isomorphism(&quotient, &out)?.is_some();
            let normalizer = self.s.normalizer(&e_image);
            let condition3 = arm.image == normalizer;
            let detail = format!(
                "|E| = {}, |C_G(E)| = {}, |Z(E)| = {}, |G/E| = {}, |Out_F(E)| = {}, |f(S')| = {}, |N_S(f(E))| = {}",
                e.order(),
                centralizer.order(),
                g.center_of(&e).order(),
                quotient.order(),
                out.order(),
                arm.image.order(),
                normalizer.order()
            );
            per_arm.push(AlperinArm { condition1, condition2, condition3, detail });
        }
        let alperin = per_arm.iter().all(|a| a.condition1 && a.condition2 && a.condition3);
        Ok(AlperinReport { alperin, per_arm })
    }
}

fn s_right_coset_leasts(s: &FiniteGroup, h: &Subgroup) -> Vec<u32> {
    s.right_cosets(h).into_iter().map(|c| c[0]).collect()
}

impl StepAction for StarData {
    fn act(&self, step: &Step, x: u32) -> Option<u32> {
        match *step {
            Step::Inner(g) => Some(self.s.conj(x, g)),
            Step::Arm { arm, element } => {
                let a = self.arms.get(arm)?;
                let u = a.backward(x)?;
                a.forward(a.group.conj(u, element))
            }
            _ => None,
        }
    }

    fn group(&self) -> &FiniteGroup {
        &self.s
    }
}

/// Permutation actions of every vertex group on a common finite set.
#[derive(Clone, Debug)]
pub struct StarQuotient {
    pub degree: usize,
    pub presentation: Presentation,
    /// One permutation per presentation generator.
    pub assignment: Vec<Perm>,
    /// The action of every element of `S`.
    pub s_perms: Vec<Perm>,
    /// The action of every element of every arm group.
    pub arm_perms: Vec<Vec<Perm>>,
}

impl StarQuotient {
    /// Every non-identity element of every vertex group moves every point.
    pub fn is_free(&self) -> bool {
        let free = |perms: &[Perm]| perms.iter().skip(1).all(|p| p.fixed_points() == 0);
        free(&self.s_perms) && self.arm_perms.iter().all(|a| free(a))
    }

    pub fn failing_relators(&self) -> Vec<usize> {
        self.presentation.failing_relators(&self.assignment)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlperinArm {
    pub condition1: bool,
    pub condition2: bool,
    pub condition3: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlperinReport {
    pub alperin: bool,
    pub per_arm: Vec<AlperinArm>,
}

/// The Cayley embedding of `S` as a one-arm star with `G_1 = S`, `f_1 = id`.
pub fn trivial_star(s: &FiniteGroup, p: u32) -> Result<StarData> {
    let id = GroupHom::identity(&s.all());
    StarData::new(s, p, vec![(s.clone(), s.all(), id)])
}
