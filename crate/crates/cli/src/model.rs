//! Turns parsed records into groups, morphisms, roses, stars and fusion
//! systems, validating each record against what came before it.

use std::collections::HashMap;
use std::sync::Arc;

use fusionkit_core::fusion::{fusion_closure, fusion_of_group, full_fusion, inner_fusion, FusionSystem};
use fusionkit_core::group::{is_prime, prime_divisors, small_generating_set};
use fusionkit_core::hom::hom_from_generators;
use fusionkit_core::rose::RoseData;
use fusionkit_core::star::StarData;
use fusionkit_core::subgroups::sylow_p;
use fusionkit_core::{FiniteGroup, GroupHom, Limits, Perm, Subgroup};

use crate::spec::{Expect, FusionSource, Record, SpecError, SpecFile, SubgroupSpec};

#[derive(Clone, Copy, Debug)]
pub struct Options {
    /// Largest group order to enumerate, and the degree cap for star quotients.
    pub cap: usize,
    /// Include witness words and factorization steps in the report.
    pub trace: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options { cap: Limits::default().max_order, trace: false }
    }
}

#[derive(Clone, Debug)]
pub struct Morphism {
    pub domain: String,
    pub codomain: String,
    pub hom: GroupHom,
}

#[derive(Clone, Debug)]
pub struct CheckDirective {
    pub line: usize,
    pub kind: String,
    pub args: Vec<String>,
    pub expect: Option<Expect>,
}

struct PendingGroup {
    line: usize,
    degree: usize,
    prime: Option<u32>,
    gens: Vec<Perm>,
}

/// Everything a spec file defines. Names are unique per kind of object.
#[derive(Default)]
pub struct Model {
    pub groups: HashMap<String, Arc<FiniteGroup>>,
    pub primes: HashMap<String, u32>,
    /// Subgroup name to (group name, subgroup).
    pub subgroups: HashMap<String, (String, Subgroup)>,
    /// Subgroup names in definition order, for naming subgroups in reports.
    pub subgroup_names: Vec<String>,
    pub morphisms: HashMap<String, Morphism>,
    /// Rose name to (group name, data).
    pub roses: HashMap<String, (String, Arc<RoseData>)>,
    pub stars: HashMap<String, (String, Arc<StarData>)>,
    pub fusions: HashMap<String, Arc<FusionSystem>>,
    pub checks: Vec<CheckDirective>,
    pending: HashMap<String, PendingGroup>,
}

/// What a check argument must name.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Arg {
    Group,
    Subgroup,
    Morphism,
    Rose,
    Star,
    Fusion,
}

/// Argument shape of every check kind; `true` allows trailing free tokens.
pub fn check_signature(kind: &str) -> Option<(&'static [Arg], bool)> {
    use Arg::*;
    Some(match kind {
        "closure" | "saturated" | "saturated-simplified" | "saturated-abelian" | "max-aut" => (&[Fusion], false),
        "aut" | "out" => (&[Fusion, Subgroup], false),
        "hom" => (&[Fusion, Subgroup, Subgroup], false),
        "equal" | "subsystem" => (&[Fusion, Fusion], false),
        "contains" | "nf" => (&[Fusion, Morphism], false),
        "realize-rose" => (&[Rose], false),
        "realize-star" => (&[Star], false),
        "alperin" => (&[Star, Fusion], false),
        "decompose" => (&[Rose, Subgroup], true),
        "decompose-star" => (&[Star, Subgroup], true),
        "character" => (&[Rose], true),
        "hom-extension" => (&[Rose, Group, Morphism], false),
        "cayley-realize" => (&[Group, Morphism], false),
        _ => return None,
    })
}

fn invalid(line: usize, message: impl Into<String>) -> SpecError {
    SpecError::Validation { line, message: message.into() }
}

impl Model {
    pub fn load(spec: &SpecFile, options: &Options) -> Result<Model, SpecError> {
        let mut m = Model::default();
        let limits = Limits { max_order: options.cap, ..Limits::default() };
        for (record, &line) in spec.records.iter().zip(&spec.lines) {
            m.add(record, line, limits)?;
        }
        // groups that were declared but never used still get validated
        let mut unused: Vec<(usize, String)> = m.pending.iter().map(|(n, g)| (g.line, n.clone())).collect();
        unused.sort();
        for (line, name) in unused {
            m.group(&name, line, limits)?;
        }
        Ok(m)
    }

    fn taken(&self, name: &str) -> bool {
        self.groups.contains_key(name)
            || self.pending.contains_key(name)
            || self.subgroups.contains_key(name)
            || self.morphisms.contains_key(name)
            || self.roses.contains_key(name)
            || self.stars.contains_key(name)
            || self.fusions.contains_key(name)
    }

    fn fresh(&self, name: &str, line: usize) -> Result<(), SpecError> {
        if self.taken(name) {
            Err(invalid(line, format!("`{name}` is already defined")))
        } else {
            Ok(())
        }
    }

    /// The group `name`, generated on first use.
    fn group(&mut self, name: &str, line: usize, limits: Limits) -> Result<Arc<FiniteGroup>, SpecError> {
        if let Some(g) = self.groups.get(name) {
            return Ok(g.clone());
        }
        let pending = self.pending.remove(name).ok_or_else(|| invalid(line, format!("group `{name}` is not defined")))?;
        let g = FiniteGroup::generate_with_limits(pending.degree, &pending.gens, limits)
            .map_err(|e| invalid(line, format!("group `{name}`: {e}")))?;
        if let Some(p) = pending.prime {
            self.primes.insert(name.to_string(), p);
        }
        let g = Arc::new(g);
        self.groups.insert(name.to_string(), g.clone());
        Ok(g)
    }

    fn subgroup(&self, name: &str, line: usize) -> Result<&(String, Subgroup), SpecError> {
        self.subgroups.get(name).ok_or_else(|| invalid(line, format!("subgroup `{name}` is not defined")))
    }

    /// The prime declared for `group`, or the only prime dividing `order`.
    fn prime_for(&self, group: &str, order: usize, line: usize) -> Result<u32, SpecError> {
        if let Some(&p) = self.primes.get(group) {
            return Ok(p);
        }
        match prime_divisors(order as u64).as_slice() {
            [p] => Ok(*p),
            [] => Err(invalid(line, format!("group `{group}` is trivial; declare its prime"))),
            _ => Err(invalid(line, format!("order {order} is not a prime power; declare a prime"))),
        }
    }

    fn p_group(&mut self, name: &str, line: usize, limits: Limits) -> Result<(Arc<FiniteGroup>, u32), SpecError> {
        let g = self.group(name, line, limits)?;
        let p = self.prime_for(name, g.order(), line)?;
        if !g.is_p_group(p) {
            return Err(invalid(line, format!("group `{name}` of order {} is not a {p}-group", g.order())));
        }
        Ok((g, p))
    }

    /// A morphism whose domain and codomain both lie in `group`.
    fn internal_morphism(&self, name: &str, group: &str, line: usize) -> Result<GroupHom, SpecError> {
        let m = self.morphisms.get(name).ok_or_else(|| invalid(line, format!("morphism `{name}` is not defined")))?;
        for sub in [&m.domain, &m.codomain] {
            if self.subgroups[sub].0 != group {
                return Err(invalid(line, format!("morphism `{name}` does not act on subgroups of `{group}`")));
            }
        }
        Ok(m.hom.clone())
    }

    fn add(&mut self, record: &Record, line: usize, limits: Limits) -> Result<(), SpecError> {
        match record {
            Record::Group { name, degree, prime } => {
                self.fresh(name, line)?;
                if let Some(p) = prime {
                    if !is_prime(*p) {
                        return Err(invalid(line, format!("{p} is not prime")));
                    }
                }
                self.pending.insert(name.clone(), PendingGroup { line, degree: *degree, prime: *prime, gens: Vec::new() });
            }
            Record::Gen { group, perm } => match self.pending.get_mut(group) {
                Some(pg) => pg.gens.push(perm.clone()),
                None if self.groups.contains_key(group) => {
                    return Err(invalid(line, format!("group `{group}` is already in use; list its generators first")))
                }
                None => return Err(invalid(line, format!("group `{group}` is not defined"))),
            },
            Record::Subgroup { name, group, spec } => {
                self.fresh(name, line)?;
                let g = self.group(group, line, limits)?;
                let h = match spec {
                    SubgroupSpec::All => g.all(),
                    SubgroupSpec::Sylow(p) => {
                        if !is_prime(*p) {
                            return Err(invalid(line, format!("{p} is not prime")));
                        }
                        sylow_p(&g, *p).map_err(|e| invalid(line, e.to_string()))?
                    }
                    SubgroupSpec::Generated(gens) => {
                        let idx = gens
                            .iter()
                            .map(|x| {
                                g.index_of(x).ok_or_else(|| {
                                    invalid(line, format!("{} is not an element of `{group}`", x.to_cycle_string()))
                                })
                            })
                            .collect::<Result<Vec<_>, _>>()?;
                        g.closure(&idx)
                    }
                };
                self.subgroups.insert(name.clone(), (group.clone(), h));
                self.subgroup_names.push(name.clone());
            }
            Record::Morphism { name, domain, codomain, pairs } => {
                self.fresh(name, line)?;
                let (dg, dom) = self.subgroup(domain, line)?.clone();
                let (cg, cod) = self.subgroup(codomain, line)?.clone();
                let src = self.group(&dg, line, limits)?;
                let dst = self.group(&cg, line, limits)?;
                let lookup = |g: &FiniteGroup, sub: &Subgroup, x: &Perm, what: &str| {
                    g.index_of(x).filter(|&i| sub.contains(i)).ok_or_else(|| {
                        invalid(line, format!("{} is not in the {what} of `{name}`", x.to_cycle_string()))
                    })
                };
                let idx = pairs
                    .iter()
                    .map(|(a, b)| Ok((lookup(&src, &dom, a, "domain")?, lookup(&dst, &cod, b, "codomain")?)))
                    .collect::<Result<Vec<_>, SpecError>>()?;
                let hom = hom_from_generators(&src, &dom, &dst, &cod, &idx)
                    .map_err(|e| invalid(line, format!("morphism `{name}`: {e}")))?;
                if !hom.is_injective() {
                    return Err(invalid(line, format!("morphism `{name}` is not injective")));
                }
                self.morphisms.insert(name.clone(), Morphism { domain: domain.clone(), codomain: codomain.clone(), hom });
            }
            Record::Rose { name, group, edges } => {
                self.fresh(name, line)?;
                let (s, p) = self.p_group(group, line, limits)?;
                let maps = edges.iter().map(|e| self.internal_morphism(e, group, line)).collect::<Result<Vec<_>, _>>()?;
                let data = RoseData::new(&s, p, maps).map_err(|e| invalid(line, format!("rose `{name}`: {e}")))?;
                self.roses.insert(name.clone(), (group.clone(), Arc::new(data)));
            }
            Record::Star { name, group, arms } => {
                self.fresh(name, line)?;
                let (s, p) = self.p_group(group, line, limits)?;
                let mut built = Vec::with_capacity(arms.len());
                for arm in arms {
                    let g = self.group(&arm.group, line, limits)?;
                    let (sg, sylow) = self.subgroup(&arm.sylow, line)?.clone();
                    if sg != arm.group {
                        return Err(invalid(line, format!("`{}` is not a subgroup of `{}`", arm.sylow, arm.group)));
                    }
                    let m = self
                        .morphisms
                        .get(&arm.embedding)
                        .ok_or_else(|| invalid(line, format!("morphism `{}` is not defined", arm.embedding)))?;
                    if m.domain != arm.sylow || self.subgroups[&m.codomain].0 != *group {
                        return Err(invalid(
                            line,
                            format!("`{}` must map `{}` into `{group}`", arm.embedding, arm.sylow),
                        ));
                    }
                    built.push(((*g).clone(), sylow, m.hom.clone()));
                }
                let data = StarData::new(&s, p, built).map_err(|e| invalid(line, format!("star `{name}`: {e}")))?;
                self.stars.insert(name.clone(), (group.clone(), Arc::new(data)));
            }
            Record::Fusion { name, source } => {
                self.fresh(name, line)?;
                let fail = |e: fusionkit_core::Error| invalid(line, format!("fusion `{name}`: {e}"));
                let f = match source {
                    FusionSource::Inner(g) => {
                        let (s, p) = self.p_group(g, line, limits)?;
                        inner_fusion(&s, p).map_err(fail)?
                    }
                    FusionSource::Full(g) => {
                        let (s, p) = self.p_group(g, line, limits)?;
                        full_fusion(&s, p).map_err(fail)?
                    }
                    FusionSource::Closure(g, morphs) => {
                        let (s, p) = self.p_group(g, line, limits)?;
                        let gens =
                            morphs.iter().map(|m| self.internal_morphism(m, g, line)).collect::<Result<Vec<_>, _>>()?;
                        fusion_closure(&s, p, &gens).map_err(fail)?
                    }
                    FusionSource::Group(g, sp) => {
                        let big = self.group(g, line, limits)?;
                        let (sg, sub) = self.subgroup(sp, line)?.clone();
                        if sg != *g {
                            return Err(invalid(line, format!("`{sp}` is not a subgroup of `{g}`")));
                        }
                        let p = self.prime_for(g, sub.order(), line)?;
                        fusion_of_group(&big, &sub, p).map_err(fail)?
                    }
                    FusionSource::Rose(r) => {
                        let (_, data) =
                            self.roses.get(r).ok_or_else(|| invalid(line, format!("rose `{r}` is not defined")))?;
                        data.fusion().map_err(fail)?
                    }
                    FusionSource::Star(t) => {
                        let (_, data) =
                            self.stars.get(t).ok_or_else(|| invalid(line, format!("star `{t}` is not defined")))?;
                        data.generated_fusion().map_err(fail)?
                    }
                };
                self.fusions.insert(name.clone(), Arc::new(f));
            }
            Record::Check { kind, args, expect } => {
                let (sig, rest) =
                    check_signature(kind).ok_or_else(|| invalid(line, format!("unknown check `{kind}`")))?;
                if args.len() < sig.len() || (!rest && args.len() > sig.len()) {
                    return Err(invalid(line, format!("check `{kind}` takes {} names", sig.len())));
                }
                for (arg, name) in sig.iter().zip(args) {
                    let known = match arg {
                        Arg::Group => {
                            self.group(name, line, limits)?;
                            true
                        }
                        Arg::Subgroup => self.subgroups.contains_key(name),
                        Arg::Morphism => self.morphisms.contains_key(name),
                        Arg::Rose => self.roses.contains_key(name),
                        Arg::Star => self.stars.contains_key(name),
                        Arg::Fusion => self.fusions.contains_key(name),
                    };
                    if !known {
                        let what = format!("{arg:?}").to_lowercase();
                        return Err(invalid(line, format!("{what} `{name}` is not defined")));
                    }
                }
                self.checks.push(CheckDirective { line, kind: kind.clone(), args: args.clone(), expect: expect.clone() });
            }
        }
        Ok(())
    }

    /// The element of `target` carrying the same permutation as element `x`
    /// of the group `home`.
    pub fn translate_element(&self, home: &str, x: u32, target: &FiniteGroup) -> Option<u32> {
        target.index_of(self.groups[home].element(x))
    }

    /// Subgroup `name` read inside `target`, which must contain it.
    pub fn subgroup_in(&self, name: &str, target: &FiniteGroup) -> Result<Subgroup, String> {
        let (home, h) = &self.subgroups[name];
        let mut members = h
            .members()
            .iter()
            .map(|&x| self.translate_element(home, x, target))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| format!("subgroup `{name}` does not lie in the group of this check"))?;
        members.sort_unstable();
        target.subgroup_from_members(&members).map_err(|e| e.to_string())
    }

    /// Morphism `name` read on subgroups of `target`.
    pub fn morphism_in(&self, name: &str, target: &FiniteGroup) -> Result<GroupHom, String> {
        let m = &self.morphisms[name];
        let dom = self.subgroup_in(&m.domain, target)?;
        let cod = self.subgroup_in(&m.codomain, target)?;
        let (dh, _) = &self.subgroups[&m.domain];
        let (ch, _) = &self.subgroups[&m.codomain];
        let mut pairs: Vec<(u32, u32)> = m
            .hom
            .domain()
            .members()
            .iter()
            .zip(m.hom.images())
            .map(|(&x, &y)| (self.translate_element(dh, x, target).unwrap(), self.translate_element(ch, y, target).unwrap()))
            .collect();
        pairs.sort_unstable();
        GroupHom::new(target, dom, target, cod, pairs.into_iter().map(|(_, y)| y).collect()).map_err(|e| e.to_string())
    }

    /// A name for `h ≤ target`: the first spec subgroup equal to it, or its
    /// generators.
    pub fn describe(&self, h: &Subgroup, target: &FiniteGroup) -> String {
        for name in &self.subgroup_names {
            if self.subgroup_in(name, target).is_ok_and(|x| &x == h) {
                return name.clone();
            }
        }
        let gens: Vec<String> =
            small_generating_set(target, h).iter().map(|&x| target.element(x).to_cycle_string()).collect();
        format!("<{}>", gens.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spec::parse_spec;

    fn load(text: &str) -> Result<Model, SpecError> {
        Model::load(&parse_spec(text)?, &Options::default())
    }

    const KLEIN: &str = "\
group S 4 prime 2
gen S (0,1)
gen S (2,3)
subgroup A S (0,1)
subgroup B S (2,3)
morphism phi A B (0,1)->(2,3)
";

    #[test]
    fn klein_loads() {
        let m = load(KLEIN).unwrap();
        assert_eq!(m.groups["S"].order(), 4);
        assert_eq!(m.subgroups.len(), 2);
        assert!(m.morphisms["phi"].hom.is_injective());
    }

    #[test]
    fn non_injective_morphism_rejected() {
        let text = format!("{KLEIN}subgroup T S ()\nmorphism kill A T (0,1)->()\n");
        match load(&text) {
            Err(SpecError::Validation { line, message }) => {
                assert_eq!(line, 8);
                assert!(message.contains("not injective"), "{message}");
            }
            other => panic!("{:?}", other.err()),
        }
    }

    #[test]
    fn non_p_group_rejected_for_rose() {
        let text = "group G 3\ngen G (0,1,2)\ngen G (0,1)\nrose R G\n";
        assert!(matches!(load(text), Err(SpecError::Validation { line: 4, .. })));
    }

    #[test]
    fn gens_after_use_rejected() {
        let text = "group G 2\ngen G (0,1)\nsubgroup A G all\ngen G (0,1)\n";
        assert!(matches!(load(text), Err(SpecError::Validation { line: 4, .. })));
    }

    #[test]
    fn check_names_must_exist() {
        let text = format!("{KLEIN}check saturated F\n");
        assert!(matches!(load(&text), Err(SpecError::Validation { line: 7, .. })));
    }
}
