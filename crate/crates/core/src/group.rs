//! Fully enumerated permutation groups and their subgroups.

use std::cmp::Ordering;
use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::perm::Perm;

/// Size caps applied to exhaustive computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest group order `FiniteGroup::generate` will enumerate.
    pub max_order: usize,
    /// Largest group order whose full subgroup lattice (and automorphism
    /// search) is attempted.
    pub max_lattice_order: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_order: 10_000, max_lattice_order: 500 }
    }
}

/// Multiplication tables are materialized up to this order.
const TABLE_LIMIT: usize = 2048;

/// A permutation group with every element enumerated.
///
/// Elements are sorted lexicographically by image sequence, so the identity
/// always has index 0.
#[derive(Clone)]
pub struct FiniteGroup {
    degree: usize,
    elements: Vec<Perm>,
    generators: Vec<u32>,
    lookup: HashMap<Perm, u32>,
    table: Option<Vec<u32>>,
    inverses: Vec<u32>,
    orders: Vec<u32>,
    prime: Option<u32>,
    limits: Limits,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generator_perms().collect::<Vec<_>>())
            .finish()
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }
}

impl Eq for FiniteGroup {}

impl FiniteGroup {
    pub fn generate(degree: usize, gens: &[Perm]) -> Result<Self> {
        Self::generate_with_limits(degree, gens, Limits::default())
    }

    /// Closes `gens` under composition. Identity generators are dropped.
    pub fn generate_with_limits(degree: usize, gens: &[Perm], limits: Limits) -> Result<Self> {
        for g in gens {
            if g.degree() != degree {
                return Err(Error::BadDegree { expected: degree, found: g.degree() });
            }
        }
        let mut gens: Vec<Perm> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        gens.dedup();
        let id = Perm::identity(degree);
        let mut seen: HashMap<Perm, ()> = HashMap::new();
        seen.insert(id.clone(), ());
        let mut queue = VecDeque::from([id]);
        let mut found = Vec::new();
        while let Some(x) = queue.pop_front() {
            for g in &gens {
                let y = x.compose(g);
                if !seen.contains_key(&y) {
                    if seen.len() >= limits.max_order {
                        return Err(Error::CapExceeded {
                            what: "group order".into(),
                            limit: limits.max_order,
                        });
                    }
                    seen.insert(y.clone(), ());
                    queue.push_back(y);
                }
            }
            found.push(x);
        }
        found.sort();
        Ok(Self::from_sorted(degree, found, &gens, limits))
    }

    fn from_sorted(degree: usize, elements: Vec<Perm>, gens: &[Perm], limits: Limits) -> Self {
        let n = elements.len();
        let lookup: HashMap<Perm, u32> =
            elements.iter().enumerate().map(|(i, p)| (p.clone(), i as u32)).collect();
        let table = (n <= TABLE_LIMIT).then(|| {
            let mut t = vec![0u32; n * n];
            for (i, a) in elements.iter().enumerate() {
                for (j, b) in elements.iter().enumerate() {
                    t[i * n + j] = lookup[&a.compose(b)];
                }
            }
            t
        });
        let inverses = elements.iter().map(|p| lookup[&p.inverse()]).collect();
        let orders = elements.iter().map(|p| p.order() as u32).collect();
        let mut generators: Vec<u32> = gens.iter().map(|g| lookup[g]).collect();
        generators.sort_unstable();
        generators.dedup();
        FiniteGroup { degree, elements, generators, lookup, table, inverses, orders, prime: None, limits }
    }

    pub fn trivial(degree: usize) -> Self {
        Self::from_sorted(degree, vec![Perm::identity(degree)], &[], Limits::default())
    }

    pub fn with_prime(mut self, p: u32) -> Self {
        self.prime = Some(p);
        self
    }

    pub fn with_limits(mut self, limits: Limits) -> Self {
        self.limits = limits;
        self
    }

    pub fn prime(&self) -> Option<u32> {
        self.prime
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> u32 {
        0
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, i: u32) -> &Perm {
        &self.elements[i as usize]
    }

    pub fn index_of(&self, p: &Perm) -> Option<u32> {
        self.lookup.get(p).copied()
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub fn generator_perms(&self) -> impl Iterator<Item = &Perm> + '_ {
        self.generators.iter().map(|&g| self.element(g))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.table {
            Some(t) => t[a as usize * self.order() + b as usize],
            None => self.lookup[&self.elements[a as usize].compose(&self.elements[b as usize])],
        }
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inverses[a as usize]
    }

    /// `g⁻¹ u g`.
    #[inline]
    pub fn conj(&self, u: u32, g: u32) -> u32 {
        self.mul(self.mul(self.inv(g), u), g)
    }

    pub fn element_order(&self, a: u32) -> u32 {
        self.orders[a as usize]
    }

    pub fn power(&self, a: u32, k: u64) -> u32 {
        let mut acc = self.identity();
        for _ in 0..k {
            acc = self.mul(acc, a);
        }
        acc
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.generators;
        gens.iter().all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn all(&self) -> Subgroup {
        Subgroup::from_sorted((0..self.order() as u32).collect(), self.order())
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup::from_sorted(vec![0], self.order())
    }

    /// The subgroup generated by the given element indices.
    pub fn closure(&self, gens: &[u32]) -> Subgroup {
        let n = self.order();
        let mut mask = vec![false; n];
        mask[0] = true;
        let mut members = vec![0u32];
        let mut head = 0;
        while head < members.len() {
            let x = members[head];
            head += 1;
            for &g in gens {
                let y = self.mul(x, g);
                if !mask[y as usize] {
                    mask[y as usize] = true;
                    members.push(y);
                }
            }
        }
        members.sort_unstable();
        Subgroup::from_sorted(members, n)
    }

    /// `⟨H, extra⟩`, where `h_gens` generates `h`.
    pub fn join(&self, h: &Subgroup, h_gens: &[u32], extra: &[u32]) -> Subgroup {
        let n = self.order();
        let mut mask = vec![false; n];
        let mut members: Vec<u32> = h.members().to_vec();
        for &m in &members {
            mask[m as usize] = true;
        }
        let gens: Vec<u32> = h_gens.iter().chain(extra).copied().collect();
        let mut head = 0;
        while head < members.len() {
            let x = members[head];
            head += 1;
            for &g in &gens {
                let y = self.mul(x, g);
                if !mask[y as usize] {
                    mask[y as usize] = true;
                    members.push(y);
                }
            }
        }
        members.sort_unstable();
        Subgroup::from_sorted(members, n)
    }

    /// Validates an element set as a subgroup.
    pub fn subgroup_from_members(&self, members: &[u32]) -> Result<Subgroup> {
        let mut m: Vec<u32> = members.to_vec();
        m.sort_unstable();
        m.dedup();
        if m.iter().any(|&x| x as usize >= self.order()) {
            return Err(Error::NotASubgroup("index out of range".into()));
        }
        let h = Subgroup::from_sorted(m, self.order());
        if !self.is_subgroup(&h) {
            return Err(Error::NotASubgroup(format!("{} elements not closed", h.order())));
        }
        Ok(h)
    }

    pub fn is_subgroup(&self, h: &Subgroup) -> bool {
        h.contains(0)
            && h.members().iter().all(|&a| {
                h.contains(self.inv(a)) && h.members().iter().all(|&b| h.contains(self.mul(a, b)))
            })
    }

    /// `g⁻¹ H g`.
    pub fn conjugate_subgroup(&self, h: &Subgroup, g: u32) -> Subgroup {
        let mut m: Vec<u32> = h.members().iter().map(|&u| self.conj(u, g)).collect();
        m.sort_unstable();
        Subgroup::from_sorted(m, self.order())
    }

    pub fn centralizer(&self, of: &Subgroup) -> Subgroup {
        self.centralizer_in(&self.all(), of)
    }

    pub fn normalizer(&self, of: &Subgroup) -> Subgroup {
        self.normalizer_in(&self.all(), of)
    }

    /// `C_A(H)` for subgroups `A`, `H` of this group.
    pub fn centralizer_in(&self, within: &Subgroup, of: &Subgroup) -> Subgroup {
        let gens = small_generating_set(self, of);
        let m = within
            .members()
            .iter()
            .copied()
            .filter(|&g| gens.iter().all(|&u| self.mul(g, u) == self.mul(u, g)))
            .collect();
        Subgroup::from_sorted(m, self.order())
    }

    /// `N_A(H)` for subgroups `A`, `H` of this group.
    pub fn normalizer_in(&self, within: &Subgroup, of: &Subgroup) -> Subgroup {
        let gens = small_generating_set(self, of);
        let m = within
            .members()
            .iter()
            .copied()
            .filter(|&g| gens.iter().all(|&u| of.contains(self.conj(u, g))))
            .collect();
        Subgroup::from_sorted(m, self.order())
    }

    pub fn center_of(&self, h: &Subgroup) -> Subgroup {
        self.centralizer_in(h, h)
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        self.normalizer(h).order() == self.order()
    }

    /// The subgroup `h` as a group in its own right, on the same points.
    ///
    /// Its element `k` is `h.members()[k]` of `self`, since both orders are
    /// lexicographic on the same permutations.
    pub fn subgroup_as_group(&self, h: &Subgroup) -> FiniteGroup {
        let elements: Vec<Perm> = h.members().iter().map(|&i| self.element(i).clone()).collect();
        let gens: Vec<Perm> =
            small_generating_set(self, h).into_iter().map(|i| self.element(i).clone()).collect();
        let mut g = Self::from_sorted(self.degree, elements, &gens, self.limits);
        g.prime = self.prime;
        g
    }

    /// Left cosets `gH`, each sorted, listed by least element.
    pub fn left_cosets(&self, h: &Subgroup) -> Vec<Vec<u32>> {
        self.cosets(h, true)
    }

    /// Right cosets `Hg`, each sorted, listed by least element.
    pub fn right_cosets(&self, h: &Subgroup) -> Vec<Vec<u32>> {
        self.cosets(h, false)
    }

    fn cosets(&self, h: &Subgroup, left: bool) -> Vec<Vec<u32>> {
        let mut assigned = vec![false; self.order()];
        let mut out = Vec::new();
        for g in 0..self.order() as u32 {
            if assigned[g as usize] {
                continue;
            }
            let mut c: Vec<u32> = h
                .members()
                .iter()
                .map(|&u| if left { self.mul(g, u) } else { self.mul(u, g) })
                .collect();
            c.sort_unstable();
            for &x in &c {
                assigned[x as usize] = true;
            }
            out.push(c);
        }
        out
    }

    /// `G/N` as the permutation group induced on left cosets of a normal subgroup.
    pub fn quotient(&self, n: &Subgroup) -> Result<(FiniteGroup, Vec<u32>)> {
        if !self.is_normal(n) {
            return Err(Error::NotASubgroup("quotient by a non-normal subgroup".into()));
        }
        let cosets = self.left_cosets(n);
        let mut coset_of = vec![0u32; self.order()];
        for (k, c) in cosets.iter().enumerate() {
            for &x in c {
                coset_of[x as usize] = k as u32;
            }
        }
        let degree = cosets.len();
        let action = |g: u32| -> Perm {
            let images = cosets.iter().map(|c| coset_of[self.mul(g, c[0]) as usize]).collect();
            Perm::from_images(images).expect("coset action is a permutation")
        };
        let gens: Vec<Perm> = self.generators.iter().map(|&g| action(g)).collect();
        let q = FiniteGroup::generate_with_limits(degree, &gens, self.limits)?;
        let projection = (0..self.order() as u32)
            .map(|g| q.index_of(&action(g)).expect("image lies in the quotient"))
            .collect();
        Ok((q, projection))
    }

    pub fn is_p_group(&self, p: u32) -> bool {
        is_prime_power(self.order() as u64, p as u64)
    }
}

/// A subgroup, stored as the sorted indices of its members in the parent.
///
/// Subgroups do not own a pointer to their parent; every operation that
/// needs arithmetic takes the parent explicitly.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    members: Vec<u32>,
    mask: Vec<u64>,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup{:?}", self.members)
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.members.len().cmp(&other.members.len()).then_with(|| self.members.cmp(&other.members))
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Subgroup {
    /// `members` must be sorted and deduplicated; `universe` is the parent order.
    pub(crate) fn from_sorted(members: Vec<u32>, universe: usize) -> Self {
        let mut mask = vec![0u64; universe.div_ceil(64)];
        for &m in &members {
            mask[(m / 64) as usize] |= 1 << (m % 64);
        }
        Subgroup { members, mask }
    }

    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    #[inline]
    pub fn contains(&self, x: u32) -> bool {
        self.mask.get((x / 64) as usize).is_some_and(|w| w >> (x % 64) & 1 == 1)
    }

    /// Position of `x` in the sorted member list.
    #[inline]
    pub fn position(&self, x: u32) -> Option<usize> {
        self.members.binary_search(&x).ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.len() <= other.members.len()
            && self.mask.iter().zip(&other.mask).all(|(a, b)| a & !b == 0)
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let m = self.members.iter().copied().filter(|&x| other.contains(x)).collect();
        Subgroup::from_sorted(m, self.mask.len() * 64)
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }
}

/// A short generating set: greedily add elements of largest order.
pub fn small_generating_set(g: &FiniteGroup, h: &Subgroup) -> Vec<u32> {
    let mut candidates: Vec<u32> = h.members().to_vec();
    candidates.sort_by_key(|&x| (std::cmp::Reverse(g.element_order(x)), x));
    let mut gens = Vec::new();
    let mut span = g.trivial_subgroup();
    for x in candidates {
        if span.order() == h.order() {
            break;
        }
        if !span.contains(x) {
            gens.push(x);
            span = g.closure(&gens);
        }
    }
    gens
}

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

pub fn is_prime_power(n: u64, p: u64) -> bool {
    let mut n = n;
    while n > 1 && n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

/// The largest power of `p` dividing `n`.
pub fn p_part(n: u64, p: u64) -> u64 {
    let mut n = n;
    let mut part = 1;
    while n.is_multiple_of(p) {
        n /= p;
        part *= p;
    }
    part
}

pub fn prime_divisors(n: u64) -> Vec<u32> {
    let mut n = n;
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d as u32);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n as u32);
    }
    out
}

/// Left-regular representation of a group: element `s` acts on the element
/// indices by `x ↦ s·x`.
#[derive(Clone, Debug)]
pub struct CayleyEmbedding {
    pub image: FiniteGroup,
    /// `perms[k]` is the permutation of element `k`.
    pub perms: Vec<Perm>,
}

pub fn cayley_embedding(s: &FiniteGroup) -> CayleyEmbedding {
    let n = s.order();
    let perms: Vec<Perm> = (0..n as u32)
        .map(|a| Perm::from_images((0..n as u32).map(|x| s.mul(a, x)).collect()).expect("regular"))
        .collect();
    let gens: Vec<Perm> = s.generators().iter().map(|&g| perms[g as usize].clone()).collect();
    let limits = Limits { max_order: n.max(1), ..s.limits() };
    let image = FiniteGroup::generate_with_limits(n, &gens, limits).expect("image has order |S|");
    CayleyEmbedding { image, perms }
}

/// Direct product on the disjoint union of the two point sets.
pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<FiniteGroup> {
    let (da, db) = (a.degree(), b.degree());
    let lift = |p: &Perm, offset: usize, total: usize, own: usize| -> Perm {
        let mut images: Vec<u32> = (0..total as u32).collect();
        for x in 0..own {
            images[x + offset] = p.apply(x as u32) + offset as u32;
        }
        Perm::from_images(images).expect("lifted permutation")
    };
    let mut gens: Vec<Perm> = a.generator_perms().map(|p| lift(p, 0, da + db, da)).collect();
    gens.extend(b.generator_perms().map(|p| lift(p, da, da + db, db)));
    FiniteGroup::generate_with_limits(da + db, &gens, a.limits())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(n: usize, s: &str) -> Perm {
        Perm::parse_cycles(n, s).unwrap()
    }

    #[test]
    fn enumerate_small_groups() {
        let t = FiniteGroup::generate(1, &[]).unwrap();
        assert_eq!(t.order(), 1);
        let c2 = FiniteGroup::generate(2, &[perm(2, "(0,1)")]).unwrap();
        assert_eq!(c2.order(), 2);
        let c4 = FiniteGroup::generate(4, &[perm(4, "(0,1,2,3)")]).unwrap();
        assert_eq!(c4.order(), 4);
        assert!(c4.elements().windows(2).all(|w| w[0] < w[1]));
        assert!(c4.element(0).is_identity());
    }

    #[test]
    fn errors_on_degree_and_cap() {
        assert!(matches!(
            FiniteGroup::generate(3, &[perm(2, "(0,1)")]),
            Err(Error::BadDegree { .. })
        ));
        let limits = Limits { max_order: 10, ..Limits::default() };
        let s4 = [perm(4, "(0,1,2,3)"), perm(4, "(0,1)")];
        assert!(matches!(
            FiniteGroup::generate_with_limits(4, &s4, limits),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn centralizer_inside_normalizer() {
        let s4 = FiniteGroup::generate(4, &[perm(4, "(0,1,2,3)"), perm(4, "(0,1)")]).unwrap();
        let h = s4.closure(&[s4.index_of(&perm(4, "(0,1)(2,3)")).unwrap()]);
        let c = s4.centralizer(&h);
        let n = s4.normalizer(&h);
        assert!(c.is_subset_of(&n));
        assert_eq!(c.order(), 8);
        assert_eq!(s4.centralizer(&s4.trivial_subgroup()), s4.all());
        assert_eq!(s4.normalizer(&s4.all()), s4.all());
    }

    #[test]
    fn quotient_of_s4_by_klein_four() {
        let s4 = FiniteGroup::generate(4, &[perm(4, "(0,1,2,3)"), perm(4, "(0,1)")]).unwrap();
        let v = s4.closure(&[
            s4.index_of(&perm(4, "(0,1)(2,3)")).unwrap(),
            s4.index_of(&perm(4, "(0,2)(1,3)")).unwrap(),
        ]);
        let (q, proj) = s4.quotient(&v).unwrap();
        assert_eq!(q.order(), 6);
        assert!(!q.is_abelian());
        for a in 0..24 {
            for b in 0..24 {
                assert_eq!(proj[s4.mul(a, b) as usize], q.mul(proj[a as usize], proj[b as usize]));
            }
        }
    }

    #[test]
    fn cayley_is_regular() {
        let v4 = FiniteGroup::generate(4, &[perm(4, "(0,1)"), perm(4, "(2,3)")]).unwrap();
        let cay = cayley_embedding(&v4);
        assert_eq!(cay.image.order(), 4);
        for (k, p) in cay.perms.iter().enumerate() {
            assert_eq!(p.fixed_points() == 4, k == 0);
        }
        let trivial = cayley_embedding(&FiniteGroup::trivial(1));
        assert_eq!(trivial.perms, vec![Perm::identity(1)]);
        let c2 = FiniteGroup::generate(2, &[perm(2, "(0,1)")]).unwrap();
        assert_eq!(cayley_embedding(&c2).perms[1], perm(2, "(0,1)"));
    }
}
