//! Subgroup lattices, Sylow subgroups and `O_p`.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::group::{is_prime, is_prime_power, p_part, FiniteGroup, Subgroup};

/// Every subgroup of `g` exactly once, in canonical order (by order, then by
/// sorted member list).
///
/// Cyclic extension: starting from the trivial subgroup, join each known
/// subgroup with each cyclic subgroup it does not contain.
pub fn all_subgroups(g: &FiniteGroup) -> Result<Vec<Subgroup>> {
    let cap = g.limits().max_lattice_order;
    if g.order() > cap {
        return Err(Error::CapExceeded { what: "subgroup lattice group order".into(), limit: cap });
    }
    let cyclic = cyclic_subgroups(g);
    let mut seen: HashSet<Subgroup> = HashSet::new();
    let trivial = g.trivial_subgroup();
    seen.insert(trivial.clone());
    let mut layer: Vec<(Subgroup, Vec<u32>)> = vec![(trivial, Vec::new())];
    let mut out: Vec<Subgroup> = Vec::new();
    while !layer.is_empty() {
        let mut next = Vec::new();
        for (h, gens) in &layer {
            for (c, x) in &cyclic {
                if c.is_subset_of(h) {
                    continue;
                }
                let k = g.join(h, gens, &[*x]);
                if seen.insert(k.clone()) {
                    let mut kg = gens.clone();
                    kg.push(*x);
                    next.push((k, kg));
                }
            }
        }
        out.extend(layer.into_iter().map(|(h, _)| h));
        layer = next;
    }
    out.sort();
    Ok(out)
}

/// Cyclic subgroups with a generator each, deduplicated.
pub fn cyclic_subgroups(g: &FiniteGroup) -> Vec<(Subgroup, u32)> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for x in 1..g.order() as u32 {
        let c = g.closure(&[x]);
        if seen.insert(c.clone()) {
            out.push((c, x));
        }
    }
    out.sort();
    out
}

/// Oracle for small groups: closes every element subset of size at most
/// four. Every group of order at most 24 is generated by four elements.
pub fn all_subgroups_by_subsets(g: &FiniteGroup) -> Result<Vec<Subgroup>> {
    if g.order() > 24 {
        return Err(Error::CapExceeded { what: "subset oracle group order".into(), limit: 24 });
    }
    let n = g.order() as u32;
    let mut seen: HashSet<Subgroup> = HashSet::new();
    seen.insert(g.trivial_subgroup());
    for a in 1..n {
        seen.insert(g.closure(&[a]));
        for b in a + 1..n {
            seen.insert(g.closure(&[a, b]));
            for c in b + 1..n {
                seen.insert(g.closure(&[a, b, c]));
                for d in c + 1..n {
                    seen.insert(g.closure(&[a, b, c, d]));
                }
            }
        }
    }
    let mut out: Vec<Subgroup> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

fn is_p_element(g: &FiniteGroup, x: u32, p: u32) -> bool {
    is_prime_power(g.element_order(x) as u64, p as u64)
}

/// Some Sylow `p`-subgroup, grown one normalizing `p`-element at a time.
fn some_sylow(g: &FiniteGroup, p: u32) -> Subgroup {
    let target = p_part(g.order() as u64, p as u64) as usize;
    let mut current = g.trivial_subgroup();
    let mut gens: Vec<u32> = Vec::new();
    while current.order() < target {
        let n = g.normalizer(&current);
        let x = n
            .members()
            .iter()
            .copied()
            .find(|&x| !current.contains(x) && is_p_element(g, x, p))
            .expect("a non-Sylow p-subgroup has a p-element in its normalizer outside it");
        gens.push(x);
        current = g.join(&current, &gens[..gens.len() - 1], &[x]);
    }
    current
}

/// All Sylow `p`-subgroups, in canonical order.
pub fn sylow_subgroups(g: &FiniteGroup, p: u32) -> Result<Vec<Subgroup>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let base = some_sylow(g, p);
    let mut all: Vec<Subgroup> = (0..g.order() as u32).map(|x| g.conjugate_subgroup(&base, x)).collect();
    all.sort();
    all.dedup();
    Ok(all)
}

/// The canonically least Sylow `p`-subgroup; trivial when `p ∤ |G|`.
pub fn sylow_p(g: &FiniteGroup, p: u32) -> Result<Subgroup> {
    Ok(sylow_subgroups(g, p)?.swap_remove(0))
}

/// `O_p(G)`: the intersection of all Sylow `p`-subgroups.
pub fn largest_normal_p_subgroup(g: &FiniteGroup, p: u32) -> Result<Subgroup> {
    let sylows = sylow_subgroups(g, p)?;
    let mut core = sylows[0].clone();
    for s in &sylows[1..] {
        core = core.intersection(s);
    }
    debug_assert!(g.is_normal(&core));
    Ok(core)
}
