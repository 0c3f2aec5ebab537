//! Saturation axioms 3–4, the simplified 3'–4', and the abelian criterion.

use std::collections::HashMap;
use std::fmt;

use super::{compute_nf, FusionSystem};
use crate::error::{Error, Result};
use crate::group::{p_part, Subgroup};
use crate::hom::GroupHom;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    Three,
    Four,
    ThreePrime,
    FourPrime,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::Three => "3",
            Axiom::Four => "4",
            Axiom::ThreePrime => "3'",
            Axiom::FourPrime => "4'",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaturationFailure {
    pub axiom: Axiom,
    /// The object the axiom fails at (the domain `P` for extension failures).
    pub subgroup: Subgroup,
    /// The codomain `Q` for extension failures.
    pub target: Option<Subgroup>,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaturationReport {
    pub saturated: bool,
    pub failures: Vec<SaturationFailure>,
}

impl SaturationReport {
    fn from_failures(failures: Vec<SaturationFailure>) -> Self {
        SaturationReport { saturated: failures.is_empty(), failures }
    }

    pub fn failed_axioms(&self) -> Vec<Axiom> {
        let mut v: Vec<Axiom> = self.failures.iter().map(|f| f.axiom).collect();
        v.sort();
        v.dedup();
        v
    }
}

/// Restrictions to `P` of the isomorphisms out of `N`, with the images of `N`.
type RestrictionTable = HashMap<Vec<u32>, Vec<usize>>;

impl FusionSystem {
    fn restriction_table(&self, n: usize, p: usize) -> RestrictionTable {
        let nsub = &self.subgroups[n];
        let psub = &self.subgroups[p];
        let positions: Vec<usize> = psub.members().iter().map(|&x| nsub.position(x).unwrap()).collect();
        let mut table: RestrictionTable = HashMap::new();
        for (b, images) in self.isos_from_index(n) {
            let key: Vec<u32> = positions.iter().map(|&k| images[k]).collect();
            let targets = table.entry(key).or_default();
            if !targets.contains(&b) {
                targets.push(b);
            }
        }
        table
    }

    /// Failures of "P fully normalized ⇒ fully centralized and Aut_S(P) Sylow in Aut_F(P)".
    fn axiom_three(&self) -> Vec<SaturationFailure> {
        let mut out = Vec::new();
        for (i, h) in self.subgroups.iter().enumerate() {
            if !self.is_fully_normalized(h).unwrap() {
                continue;
            }
            if !self.is_fully_centralized(h).unwrap() {
                out.push(SaturationFailure {
                    axiom: Axiom::Three,
                    subgroup: h.clone(),
                    target: None,
                    reason: "fully normalized but not fully centralized".into(),
                });
                continue;
            }
            if let Some(reason) = self.sylow_defect(i) {
                out.push(SaturationFailure { axiom: Axiom::Three, subgroup: h.clone(), target: None, reason });
            }
        }
        out
    }

    /// Why `Aut_S(P)` is not a Sylow subgroup of `Aut_F(P)`, if it is not.
    fn sylow_defect(&self, i: usize) -> Option<String> {
        let h = &self.subgroups[i];
        let aut_f = self.classes[self.slot[i].0].autos.len();
        let aut_s = super::aut_s(&self.s, h).len();
        let sylow = p_part(aut_f as u64, self.p as u64) as usize;
        (aut_s != sylow).then(|| {
            format!("|Aut_S(P)| = {aut_s} but a Sylow {}-subgroup of Aut_F(P) (order {aut_f}) has order {sylow}", self.p)
        })
    }

    /// Extension failures for isomorphisms onto every `Q` accepted by `target_ok`.
    fn extension_failures(&self, axiom: Axiom, target_ok: impl Fn(&Subgroup) -> bool) -> Vec<SaturationFailure> {
        let mut out = Vec::new();
        let mut tables: HashMap<(usize, usize), RestrictionTable> = HashMap::new();
        for (qi, q) in self.subgroups.iter().enumerate() {
            if !target_ok(q) {
                continue;
            }
            let nq = self.s.normalizer(q);
            let class = &self.classes[self.slot[qi].0];
            let mut sources = class.members.clone();
            sources.sort_unstable();
            for pi in sources {
                let p = &self.subgroups[pi];
                for images in self.isos_between_index(pi, qi) {
                    let f = GroupHom::new_unchecked(p.clone(), q.clone(), images);
                    let nf = compute_nf(&self.s, &f, q);
                    if nf == *p {
                        continue;
                    }
                    let ni = self.lookup[nf.members()];
                    let table = tables.entry((ni, pi)).or_insert_with(|| self.restriction_table(ni, pi));
                    let extends = table
                        .get(f.images())
                        .is_some_and(|ts| ts.iter().any(|&b| self.subgroups[b].is_subset_of(&nq)));
                    if !extends {
                        out.push(SaturationFailure {
                            axiom,
                            subgroup: p.clone(),
                            target: Some(q.clone()),
                            reason: format!(
                                "an isomorphism P → Q does not extend to N_f (order {}) → N_S(Q) (order {})",
                                nf.order(),
                                nq.order()
                            ),
                        });
                        break;
                    }
                }
            }
        }
        out
    }

    /// Axioms 3 and 4.
    pub fn is_saturated(&self) -> SaturationReport {
        let mut failures = self.axiom_three();
        failures.extend(self.extension_failures(Axiom::Four, |q| self.is_fully_centralized(q).unwrap()));
        SaturationReport::from_failures(failures)
    }

    /// Axioms 3' (only at `S`) and 4' (extension onto fully normalized `Q`).
    pub fn is_saturated_simplified(&self) -> SaturationReport {
        let mut failures = Vec::new();
        let top = self.subgroups.len() - 1;
        if let Some(reason) = self.sylow_defect(top) {
            failures.push(SaturationFailure {
                axiom: Axiom::ThreePrime,
                subgroup: self.subgroups[top].clone(),
                target: None,
                reason,
            });
        }
        failures.extend(self.extension_failures(Axiom::FourPrime, |q| self.is_fully_normalized(q).unwrap()));
        SaturationReport::from_failures(failures)
    }

    /// For abelian `S`: `Aut_F(S)` is a p'-group and every morphism into `S`
    /// extends to an element of `Aut_F(S)`.
    pub fn is_saturated_abelian(&self) -> Result<bool> {
        if !self.s.is_abelian() {
            return Err(Error::NotAbelian);
        }
        let top = self.subgroups.len() - 1;
        let aut = self.classes[self.slot[top].0].autos.len();
        if aut.is_multiple_of(self.p as usize) {
            return Ok(false);
        }
        for pi in 0..top {
            let table = self.restriction_table(top, pi);
            if self.isos_from_index(pi).any(|(_, images)| !table.contains_key(&images)) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
