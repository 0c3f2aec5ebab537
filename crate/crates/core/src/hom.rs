//! Homomorphisms between subgroups and backtracking searches for them.

use crate::error::{Error, Result};
use crate::group::{small_generating_set, FiniteGroup, Subgroup};

/// A homomorphism from a subgroup of one group into a subgroup of another
/// (possibly the same) group. `images[k]` is the image of `domain.members()[k]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupHom {
    domain: Subgroup,
    codomain: Subgroup,
    images: Vec<u32>,
}

impl GroupHom {
    /// Validates the homomorphism law on every pair of domain elements.
    pub fn new(
        src: &FiniteGroup,
        domain: Subgroup,
        dst: &FiniteGroup,
        codomain: Subgroup,
        images: Vec<u32>,
    ) -> Result<Self> {
        if images.len() != domain.order() {
            return Err(Error::NotAHomomorphism("image list does not match domain".into()));
        }
        if let Some(&bad) = images.iter().find(|&&y| !codomain.contains(y)) {
            return Err(Error::NotAHomomorphism(format!("image {bad} outside the codomain")));
        }
        let hom = GroupHom { domain, codomain, images };
        for (i, &a) in hom.domain.members().iter().enumerate() {
            for (j, &b) in hom.domain.members().iter().enumerate() {
                let ab = hom.apply(src.mul(a, b)).expect("domain is a subgroup");
                if ab != dst.mul(hom.images[i], hom.images[j]) {
                    return Err(Error::NotAHomomorphism(format!(
                        "f({a}·{b}) differs from f({a})·f({b})"
                    )));
                }
            }
        }
        Ok(hom)
    }

    pub(crate) fn new_unchecked(domain: Subgroup, codomain: Subgroup, images: Vec<u32>) -> Self {
        debug_assert_eq!(domain.order(), images.len());
        GroupHom { domain, codomain, images }
    }

    pub fn identity(h: &Subgroup) -> Self {
        GroupHom { domain: h.clone(), codomain: h.clone(), images: h.members().to_vec() }
    }

    pub fn domain(&self) -> &Subgroup {
        &self.domain
    }

    pub fn codomain(&self) -> &Subgroup {
        &self.codomain
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, x: u32) -> Option<u32> {
        self.domain.position(x).map(|k| self.images[k])
    }

    pub fn is_injective(&self) -> bool {
        let mut sorted = self.images.clone();
        sorted.sort_unstable();
        sorted.windows(2).all(|w| w[0] != w[1])
    }

    /// The image `f(domain)` as a subgroup of the target group.
    pub fn image(&self, dst: &FiniteGroup) -> Subgroup {
        let mut m = self.images.clone();
        m.sort_unstable();
        m.dedup();
        dst.subgroup_from_members(&m).expect("image of a homomorphism is a subgroup")
    }

    pub fn with_codomain(&self, codomain: Subgroup) -> Result<Self> {
        if self.images.iter().any(|&y| !codomain.contains(y)) {
            return Err(Error::BadDomain("image not inside the new codomain".into()));
        }
        Ok(GroupHom { codomain, ..self.clone() })
    }

    pub fn restrict(&self, to: &Subgroup) -> Result<Self> {
        let images = to
            .members()
            .iter()
            .map(|&x| self.apply(x).ok_or_else(|| Error::BadDomain("restriction outside domain".into())))
            .collect::<Result<Vec<_>>>()?;
        Ok(GroupHom { domain: to.clone(), codomain: self.codomain.clone(), images })
    }

    /// `self ∘ inner`: apply `inner` first.
    pub fn compose(&self, inner: &GroupHom) -> Result<Self> {
        let images = inner
            .images
            .iter()
            .map(|&y| self.apply(y).ok_or_else(|| Error::BadDomain("composition outside domain".into())))
            .collect::<Result<Vec<_>>>()?;
        Ok(GroupHom { domain: inner.domain.clone(), codomain: self.codomain.clone(), images })
    }

    /// Inverse of an injective homomorphism, defined on its image.
    pub fn inverse(&self, dst: &FiniteGroup) -> Result<Self> {
        if !self.is_injective() {
            return Err(Error::NotAnIsomorphism("homomorphism is not injective".into()));
        }
        let image = self.image(dst);
        let mut images = vec![0u32; image.order()];
        for (k, &y) in self.images.iter().enumerate() {
            images[image.position(y).expect("image member")] = self.domain.members()[k];
        }
        Ok(GroupHom { domain: image, codomain: self.domain.clone(), images })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Injective,
    Bijective,
}

struct Search<'a> {
    src: &'a FiniteGroup,
    dom: &'a Subgroup,
    dst: &'a FiniteGroup,
    cod: &'a Subgroup,
    gens: Vec<u32>,
    candidates: Vec<Vec<u32>>,
    limit: Option<usize>,
    found: Vec<GroupHom>,
}

const UNSET: u32 = u32::MAX;

#[derive(Clone)]
struct State {
    map: Vec<u32>,
    used: Vec<bool>,
    span: Vec<u32>,
}

impl Search<'_> {
    /// Extends `state` by `gen ↦ img`, checking every Cayley-graph edge of the
    /// grown span against the generators assigned so far.
    fn extend(&self, state: &State, assigned: &[(u32, u32)]) -> Option<State> {
        let mut st = state.clone();
        let mut head = 0;
        while head < st.span.len() {
            let x = st.span[head];
            head += 1;
            let fx = st.map[x as usize];
            for &(g, h) in assigned {
                let y = self.src.mul(x, g);
                let fy = self.dst.mul(fx, h);
                let cur = st.map[y as usize];
                if cur == UNSET {
                    if !self.cod.contains(fy) || st.used[fy as usize] {
                        return None;
                    }
                    st.map[y as usize] = fy;
                    st.used[fy as usize] = true;
                    st.span.push(y);
                } else if cur != fy {
                    return None;
                }
            }
        }
        Some(st)
    }

    fn run(&mut self, state: State, assigned: &mut Vec<(u32, u32)>, level: usize) {
        if self.limit.is_some_and(|l| self.found.len() >= l) {
            return;
        }
        if level == self.gens.len() {
            if state.span.len() != self.dom.order() {
                return;
            }
            let images = self.dom.members().iter().map(|&x| state.map[x as usize]).collect();
            self.found.push(GroupHom::new_unchecked(self.dom.clone(), self.cod.clone(), images));
            return;
        }
        let g = self.gens[level];
        for ci in 0..self.candidates[level].len() {
            let h = self.candidates[level][ci];
            if state.used[h as usize] && state.map[g as usize] != h {
                continue;
            }
            assigned.push((g, h));
            if let Some(next) = self.extend(&state, assigned) {
                self.run(next, assigned, level + 1);
            }
            assigned.pop();
            if self.limit.is_some_and(|l| self.found.len() >= l) {
                return;
            }
        }
    }
}

fn centralizer_size(g: &FiniteGroup, within: &Subgroup, x: u32) -> usize {
    within.members().iter().filter(|&&y| g.mul(x, y) == g.mul(y, x)).count()
}

fn search_homs(
    src: &FiniteGroup,
    dom: &Subgroup,
    dst: &FiniteGroup,
    cod: &Subgroup,
    prescribed: &[(u32, u32)],
    kind: Kind,
    limit: Option<usize>,
) -> Result<Vec<GroupHom>> {
    let cap = src.limits().max_lattice_order.max(dst.limits().max_lattice_order);
    if dom.order() > cap || cod.order() > cap {
        return Err(Error::CapExceeded { what: "homomorphism search order".into(), limit: cap });
    }
    match kind {
        Kind::Bijective if dom.order() != cod.order() => return Ok(Vec::new()),
        Kind::Injective if dom.order() > cod.order() => return Ok(Vec::new()),
        _ => {}
    }
    for &(x, y) in prescribed {
        if !dom.contains(x) || !cod.contains(y) {
            return Err(Error::BadDomain("prescribed pair outside domain or codomain".into()));
        }
    }
    let fixed: Vec<u32> = prescribed.iter().map(|p| p.0).collect();
    let mut span = src.closure(&fixed);
    let mut free = Vec::new();
    if span.order() < dom.order() {
        let mut order: Vec<u32> = small_generating_set(src, dom);
        // also allow the full member list as fallback candidates for generating
        order.extend(dom.members().iter().copied());
        for x in order {
            if span.order() == dom.order() {
                break;
            }
            if !span.contains(x) {
                free.push(x);
                let all: Vec<u32> = fixed.iter().chain(&free).copied().collect();
                span = src.closure(&all);
            }
        }
    }
    let signature = |g: &FiniteGroup, within: &Subgroup, x: u32| -> (u32, usize) {
        let c = if kind == Kind::Bijective { centralizer_size(g, within, x) } else { 0 };
        (g.element_order(x), c)
    };
    let candidates: Vec<Vec<u32>> = free
        .iter()
        .map(|&x| {
            let sig = signature(src, dom, x);
            cod.members().iter().copied().filter(|&y| signature(dst, cod, y) == sig).collect()
        })
        .collect();
    let mut search = Search {
        src,
        dom,
        dst,
        cod,
        gens: free,
        candidates,
        limit,
        found: Vec::new(),
    };
    let mut root = State {
        map: vec![UNSET; src.order()],
        used: vec![false; dst.order()],
        span: vec![0],
    };
    root.map[0] = 0;
    root.used[0] = true;
    let mut assigned: Vec<(u32, u32)> = prescribed.to_vec();
    let Some(root) = search.extend(&root, &assigned) else {
        return Ok(Vec::new());
    };
    search.run(root, &mut assigned, 0);
    Ok(search.found)
}

/// An isomorphism `G → H` of whole groups, if one exists.
pub fn find_isomorphism(g: &FiniteGroup, h: &FiniteGroup) -> Result<Option<GroupHom>> {
    find_isomorphism_between(g, &g.all(), h, &h.all(), &[])
}

/// An isomorphism between subgroups that agrees with the `prescribed` pairs.
pub fn find_isomorphism_between(
    src: &FiniteGroup,
    dom: &Subgroup,
    dst: &FiniteGroup,
    cod: &Subgroup,
    prescribed: &[(u32, u32)],
) -> Result<Option<GroupHom>> {
    Ok(search_homs(src, dom, dst, cod, prescribed, Kind::Bijective, Some(1))?.pop())
}

/// `Aut(G)`, as bijective homomorphisms of the whole group.
pub fn automorphism_group(g: &FiniteGroup) -> Result<Vec<GroupHom>> {
    automorphisms_of(g, &g.all())
}

pub fn automorphisms_of(g: &FiniteGroup, h: &Subgroup) -> Result<Vec<GroupHom>> {
    let mut auts = search_homs(g, h, g, h, &[], Kind::Bijective, None)?;
    auts.sort_by(|a, b| a.images.cmp(&b.images));
    Ok(auts)
}

/// Every injective homomorphism from `dom ≤ src` into `cod ≤ dst`.
pub fn injective_homs(
    src: &FiniteGroup,
    dom: &Subgroup,
    dst: &FiniteGroup,
    cod: &Subgroup,
) -> Result<Vec<GroupHom>> {
    let mut homs = search_homs(src, dom, dst, cod, &[], Kind::Injective, None)?;
    homs.sort_by(|a, b| a.images.cmp(&b.images));
    Ok(homs)
}

/// Extends an assignment on generators to a homomorphism `dom → cod`.
///
/// The sources of `pairs` must generate `dom`.
pub fn hom_from_generators(
    src: &FiniteGroup,
    dom: &Subgroup,
    dst: &FiniteGroup,
    cod: &Subgroup,
    pairs: &[(u32, u32)],
) -> Result<GroupHom> {
    let sources: Vec<u32> = pairs.iter().map(|p| p.0).collect();
    if src.closure(&sources) != *dom {
        return Err(Error::BadDomain("generator sources do not generate the domain".into()));
    }
    let mut map = vec![UNSET; src.order()];
    map[0] = 0;
    let mut span = vec![0u32];
    let mut head = 0;
    while head < span.len() {
        let x = span[head];
        head += 1;
        for &(g, h) in pairs {
            if !cod.contains(h) {
                return Err(Error::NotAHomomorphism("generator image outside codomain".into()));
            }
            let y = src.mul(x, g);
            let fy = dst.mul(map[x as usize], h);
            if map[y as usize] == UNSET {
                map[y as usize] = fy;
                span.push(y);
            } else if map[y as usize] != fy {
                return Err(Error::NotAHomomorphism("generator assignment is inconsistent".into()));
            }
        }
    }
    let images = dom.members().iter().map(|&x| map[x as usize]).collect();
    Ok(GroupHom::new_unchecked(dom.clone(), cod.clone(), images))
}
