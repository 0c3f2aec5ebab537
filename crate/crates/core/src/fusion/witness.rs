use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::hom::GroupHom;

/// One step of a factorization, applied to the current subgroup.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Step {
    /// `c_s(u) = s⁻¹us` for `s ∈ S`.
    Inner(u32),
    /// Generator `index` (or its inverse), restricted to the current subgroup.
    Gen { index: usize, inverse: bool },
    /// Conjugation by an element of an ambient group containing `S`.
    Conj(u32),
    /// `f_i ∘ c_g ∘ f_i⁻¹` for `g` in arm group `G_i`.
    Arm { arm: usize, element: u32 },
}

/// How a morphism of a fusion system was obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Word(Vec<Step>),
    /// A single element of the ambient group conjugating domain to image.
    Conjugator(u32),
}

/// A morphism together with optional provenance. Equality ignores the witness.
#[derive(Clone, Debug)]
pub struct FusionMorphism {
    pub hom: GroupHom,
    pub witness: Option<Witness>,
}

impl PartialEq for FusionMorphism {
    fn eq(&self, other: &Self) -> bool {
        self.hom == other.hom
    }
}

impl Eq for FusionMorphism {}

/// Evaluates single steps on elements of `S`; `None` when the element is
/// outside the step's domain.
pub trait StepAction {
    fn act(&self, step: &Step, x: u32) -> Option<u32>;
    fn group(&self) -> &FiniteGroup;
}

/// A composite of steps starting at `domain`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionFactorization {
    pub domain: Subgroup,
    pub steps: Vec<Step>,
}

impl FusionFactorization {
    /// The composite as a homomorphism `domain → S`, checking every domain
    /// condition along the way.
    pub fn evaluate(&self, ctx: &impl StepAction) -> Result<GroupHom> {
        let s = ctx.group();
        let mut images = self.domain.members().to_vec();
        for (k, step) in self.steps.iter().enumerate() {
            for y in images.iter_mut() {
                *y = ctx.act(step, *y).ok_or_else(|| {
                    Error::BadDomain(format!("step {k} ({step:?}) is not defined on the current subgroup"))
                })?;
            }
        }
        Ok(GroupHom::new_unchecked(self.domain.clone(), s.all(), images))
    }

    /// Subgroups visited after each step, starting with the domain.
    pub fn path(&self, ctx: &impl StepAction) -> Result<Vec<Subgroup>> {
        let s = ctx.group();
        let mut current = self.domain.members().to_vec();
        let mut out = vec![self.domain.clone()];
        for step in &self.steps {
            current = current
                .iter()
                .map(|&y| ctx.act(step, y).ok_or_else(|| Error::BadDomain(format!("{step:?} undefined"))))
                .collect::<Result<Vec<_>>>()?;
            let mut m = current.clone();
            m.sort_unstable();
            out.push(s.subgroup_from_members(&m)?);
        }
        Ok(out)
    }

    /// Number of steps that are not inner conjugations.
    pub fn generator_steps(&self) -> usize {
        self.steps.iter().filter(|s| !matches!(s, Step::Inner(_))).count()
    }
}
