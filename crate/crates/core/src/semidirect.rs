//! Semidirect products and automorphism groups as permutation groups.

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::hom::GroupHom;
use crate::perm::Perm;

/// A group of automorphisms of `g`, realized on the element indices of `g`.
#[derive(Clone, Debug)]
pub struct AutomorphismAction {
    pub group: FiniteGroup,
    /// `automorphisms[k]` is the automorphism of `g` for element `k` of `group`.
    pub automorphisms: Vec<GroupHom>,
}

/// The permutation group generated by `auts`, each acting on element indices.
pub fn automorphism_action(g: &FiniteGroup, auts: &[GroupHom]) -> Result<AutomorphismAction> {
    let whole = g.all();
    let mut perms = Vec::with_capacity(auts.len());
    for a in auts {
        if a.domain() != &whole || a.codomain() != &whole || !a.is_injective() {
            return Err(Error::NotAnAction("generator is not an automorphism".into()));
        }
        perms.push(Perm::from_images(a.images().to_vec())?);
    }
    let group = FiniteGroup::generate_with_limits(g.order(), &perms, g.limits())?;
    let automorphisms = group
        .elements()
        .iter()
        .map(|p| GroupHom::new_unchecked(whole.clone(), whole.clone(), p.images().to_vec()))
        .collect();
    Ok(AutomorphismAction { group, automorphisms })
}

#[derive(Clone, Debug)]
pub struct SemidirectProduct {
    pub group: FiniteGroup,
    pub normal: Subgroup,
    pub complement: Subgroup,
    /// Element `k` of `N` sits at index `normal_embedding[k]` of `group`.
    pub normal_embedding: Vec<u32>,
    pub complement_embedding: Vec<u32>,
}

/// `N ⋊ H` acting on itself by left multiplication, on `|N|·|H|` points.
///
/// `action[h]` is the automorphism of `N` attached to element `h` of `H`; it
/// must satisfy `action[h1·h2] = action[h1] ∘ action[h2]`. The product is
/// `(n1, h1)(n2, h2) = (n1·h1(n2), h1·h2)`.
pub fn semidirect_product(
    n: &FiniteGroup,
    h: &FiniteGroup,
    action: &[GroupHom],
) -> Result<SemidirectProduct> {
    if action.len() != h.order() {
        return Err(Error::NotAnAction("one automorphism per element of H is required".into()));
    }
    let whole = n.all();
    for a in action {
        if a.domain() != &whole || !a.is_injective() {
            return Err(Error::NotAnAction("action element is not an automorphism of N".into()));
        }
    }
    let apply = |hk: u32, x: u32| action[hk as usize].apply(x).expect("whole domain");
    for &x in whole.members() {
        for &y in whole.members() {
            for a in action {
                let lhs = a.apply(n.mul(x, y)).expect("whole domain");
                if lhs != n.mul(a.apply(x).unwrap(), a.apply(y).unwrap()) {
                    return Err(Error::NotAnAction("action element is not a homomorphism".into()));
                }
            }
        }
    }
    for h1 in 0..h.order() as u32 {
        for h2 in 0..h.order() as u32 {
            let h12 = h.mul(h1, h2);
            if whole.members().iter().any(|&x| apply(h12, x) != apply(h1, apply(h2, x))) {
                return Err(Error::NotAnAction("map H → Aut(N) is not a homomorphism".into()));
            }
        }
    }
    let (nn, hn) = (n.order() as u32, h.order() as u32);
    let point = |x: u32, k: u32| x * hn + k;
    let left_mult = |a: u32, b: u32| -> Perm {
        let images = (0..nn)
            .flat_map(|x| (0..hn).map(move |k| (x, k)))
            .map(|(x, k)| point(n.mul(a, apply(b, x)), h.mul(b, k)))
            .collect();
        Perm::from_images(images).expect("left multiplication is a permutation")
    };
    let mut gens: Vec<Perm> = n.generators().iter().map(|&a| left_mult(a, 0)).collect();
    gens.extend(h.generators().iter().map(|&b| left_mult(0, b)));
    let degree = (nn * hn) as usize;
    let group = FiniteGroup::generate_with_limits(degree, &gens, n.limits())?;
    if group.order() != degree {
        return Err(Error::InternalContradiction("semidirect product has the wrong order".into()));
    }
    let normal_embedding: Vec<u32> =
        (0..nn).map(|a| group.index_of(&left_mult(a, 0)).expect("N embeds")).collect();
    let complement_embedding: Vec<u32> =
        (0..hn).map(|b| group.index_of(&left_mult(0, b)).expect("H embeds")).collect();
    let normal = group.subgroup_from_members(&normal_embedding)?;
    let complement = group.subgroup_from_members(&complement_embedding)?;
    Ok(SemidirectProduct { group, normal, complement, normal_embedding, complement_embedding })
}
