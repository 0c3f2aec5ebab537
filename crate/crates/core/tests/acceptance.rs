//! Acceptance suite: one PASS/FAIL line per criterion, with its time budget.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use fusionkit_core::catalog;
use fusionkit_core::fusion::{fusion_closure, fusion_equal, fusion_of_group, inner_fusion, Axiom, FusionSystem};
use fusionkit_core::group::{cayley_embedding, FiniteGroup, Subgroup};
use fusionkit_core::hom::injective_homs;
use fusionkit_core::instances;
use fusionkit_core::presentation::{cayley_presentation, Presentation};
use fusionkit_core::rose::{HNNWord, PinchOrder, RoseData};
use fusionkit_core::star::{StarData, StarLetter, StarWord, DEFAULT_QUOTIENT_CAP};
use fusionkit_core::subgroups::{all_subgroups, sylow_p};
use fusionkit_core::GroupHom;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Left-regular permutations of `S`, composed as functions.
fn cayley_check(s: &FiniteGroup, f: &GroupHom) -> bool {
    let lam = cayley_embedding(s).perms;
    let sigma = fusionkit_core::rose::realize_morphism_in_sym(s, f);
    let sinv = sigma.inverse();
    f.domain()
        .members()
        .iter()
        .zip(f.images())
        .all(|(&u, &v)| sinv.compose(&lam[u as usize]).compose(&sigma) == lam[v as usize])
}

fn criterion_1() -> Outcome {
    let mut count = 0usize;
    for (name, _, s) in catalog::p_groups_up_to_16() {
        let subs = all_subgroups(&s).map_err(err)?;
        for p in &subs {
            for q in &subs {
                if q.order() < p.order() || q.order() % p.order() != 0 {
                    continue;
                }
                for f in injective_homs(&s, p, &s, q).map_err(err)? {
                    ensure(cayley_check(&s, &f), || format!("{name}: σ fails for a map of order-{} subgroups", p.order()))?;
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{count} injective homomorphisms realized"))
}

/// Reduced words with at most `depth` stable letters, each ending in a stable
/// letter, whose conjugation is defined on a nontrivial subgroup.
fn bounded_words(data: &RoseData, f: &FusionSystem, depth: usize) -> Result<usize, String> {
    let s = data.s();
    let subs = f.subgroups().to_vec();
    let mut checked: HashSet<(usize, Vec<u32>)> = HashSet::new();
    let mut induced = 0usize;
    let mut check = |w: &HNNWord, images: &[Option<u32>]| -> Result<(), String> {
        for (pi, p) in subs.iter().enumerate() {
            if p.is_trivial() || !p.members().iter().all(|&u| images[u as usize].is_some()) {
                continue;
            }
            for x in 0..s.order() as u32 {
                let im: Vec<u32> = p.members().iter().map(|&u| s.conj(images[u as usize].unwrap(), x)).collect();
                if checked.insert((pi, im.clone())) {
                    induced += 1;
                    let codomain = s.all();
                    let h = GroupHom::new(s, p.clone(), s, codomain, im).map_err(err)?;
                    ensure(f.contains(&h), || format!("word {w:?} induces a map outside the closure"))?;
                }
            }
        }
        Ok(())
    };
    let conj_all = |w: &HNNWord| -> Result<Vec<Option<u32>>, String> {
        let winv = w.inverse(s);
        (0..s.order() as u32)
            .map(|u| data.word_in_s(&winv.concat(&HNNWord::element(u), s).concat(w, s)).map_err(err))
            .collect()
    };
    let mut stack: Vec<HNNWord> = Vec::new();
    for s0 in 0..s.order() as u32 {
        for i in 0..data.edges().len() {
            for e in [1i8, -1] {
                stack.push(HNNWord { syllables: vec![s0, 0], stables: vec![(i, e)] });
            }
        }
    }
    check(&HNNWord::element(0), &(0..s.order() as u32).map(Some).collect::<Vec<_>>())?;
    let mut nodes = 0usize;
    while let Some(w) = stack.pop() {
        ensure(data.is_reduced(&w), || format!("generated word {w:?} is not reduced"))?;
        let images = conj_all(&w)?;
        if images.iter().filter(|x| x.is_some()).count() <= 1 {
            continue;
        }
        nodes += 1;
        check(&w, &images)?;
        if w.stable_length() == depth {
            continue;
        }
        for x in 0..s.order() as u32 {
            for i in 0..data.edges().len() {
                for e in [1i8, -1] {
                    let mut next = w.clone();
                    *next.syllables.last_mut().unwrap() = x;
                    next.syllables.push(0);
                    next.stables.push((i, e));
                    if data.is_reduced(&next) {
                        stack.push(next);
                    }
                }
            }
        }
    }
    let _ = nodes;
    Ok(induced)
}

fn criterion_2() -> Outcome {
    let corpus = instances::rose_corpus();
    ensure(corpus.len() >= 10, || "corpus too small".into())?;
    let (mut round_trips, mut induced) = (0usize, 0usize);
    for (name, data) in &corpus {
        ensure(data.s().order() <= 16 && data.edges().len() <= 2, || format!("{name} is out of range"))?;
        let f = data.fusion().map_err(err)?;
        for h in f.all_isomorphisms() {
            let steps = f.witness_steps(&h).ok_or_else(|| format!("{name}: closure morphism without witness"))?;
            let w = HNNWord::from_steps(&steps, data.s()).map_err(err)?;
            for q in f.subgroups().iter().filter(|q| h.codomain().is_subset_of(q)) {
                let fact = data.decompose_fusion(&w, h.domain(), q).map_err(|e| format!("{name}: {e}"))?;
                let value = fact.evaluate(data).map_err(err)?;
                ensure(value.images() == h.images(), || format!("{name}: witness re-evaluates differently"))?;
                round_trips += 1;
            }
        }
        induced += bounded_words(data, &f, 4).map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(format!("{} instances, {round_trips} witness round trips, {induced} word-induced maps in the closure", corpus.len()))
}

fn random_word(data: &RoseData, rng: &mut StdRng) -> HNNWord {
    let s = data.s();
    let r = data.edges().len();
    let n = rng.gen_range(0..=6);
    let syllable = |rng: &mut StdRng, prev: Option<(usize, i8)>| -> u32 {
        // bias towards edge subgroups so that pinches occur
        match prev {
            Some((i, e)) if rng.gen_bool(0.6) => {
                let edge = &data.edges()[i];
                let sub = if e > 0 { edge.image() } else { &edge.p };
                sub.members()[rng.gen_range(0..sub.order())]
            }
            _ => rng.gen_range(0..s.order() as u32),
        }
    };
    let mut syllables = vec![rng.gen_range(0..s.order() as u32)];
    let mut stables: Vec<(usize, i8)> = Vec::new();
    for _ in 0..n {
        let letter = match stables.last() {
            Some(&(i, e)) if rng.gen_bool(0.5) => (i, -e),
            _ => (rng.gen_range(0..r), if rng.gen_bool(0.5) { 1 } else { -1 }),
        };
        *syllables.last_mut().unwrap() = syllable(rng, stables.last().copied());
        stables.push(letter);
        syllables.push(rng.gen_range(0..s.order() as u32));
    }
    let w = HNNWord { syllables, stables };
    if rng.gen_bool(0.5) {
        // a conjugate of an element of S, often back in S
        let u = rng.gen_range(0..s.order() as u32);
        w.inverse(s).concat(&HNNWord::element(u), s).concat(&w, s)
    } else {
        w
    }
}

fn criterion_3() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut in_s = 0usize;
    let corpus = instances::rose_corpus();
    for (name, data) in &corpus {
        for _ in 0..1000 {
            let w = random_word(data, &mut rng);
            let l = data.britton_reduce_with(&w, PinchOrder::Leftmost).map_err(err)?;
            let r = data.britton_reduce_with(&w, PinchOrder::Rightmost).map_err(err)?;
            ensure(data.is_reduced(&l) && data.is_reduced(&r), || format!("{name}: output has a pinch"))?;
            ensure(l.stable_length() <= w.stable_length(), || format!("{name}: reduction grew"))?;
            let verdict = |x: &HNNWord| x.stables.is_empty().then(|| x.syllables[0]);
            ensure(verdict(&l) == verdict(&r), || format!("{name}: strategies disagree on {w:?}"))?;
            ensure(l.stable_length() == r.stable_length(), || format!("{name}: reduced lengths differ"))?;
            in_s += usize::from(verdict(&l).is_some());
        }
    }
    Ok(format!("{} words, {in_s} in S", 1000 * corpus.len()))
}

fn criterion_4() -> Outcome {
    let corpus = instances::rose_corpus();
    for (name, data) in &corpus {
        let pres = data.presentation();
        let assignment = data.map_to_symmetric();
        ensure(assignment.len() == pres.generators.len(), || format!("{name}: assignment size"))?;
        let bad = pres.failing_relators(&assignment);
        ensure(bad.is_empty(), || format!("{name}: relators {bad:?} fail"))?;
        let cp = cayley_presentation(data.s());
        let images: HashSet<_> = cp.words.iter().map(|w| Presentation::evaluate(w, &assignment)).collect();
        ensure(images.len() == data.s().order(), || format!("{name}: S does not embed"))?;
    }
    Ok(format!("{} presentations satisfied", corpus.len()))
}

fn group_fusions() -> Result<Vec<(String, FusionSystem)>, String> {
    let mut out = Vec::new();
    for (name, g) in catalog::groups_up_to_100() {
        for p in catalog::dividing_primes(&g) {
            let s = sylow_p(&g, p).map_err(err)?;
            out.push((format!("{name} at {p}"), fusion_of_group(&g, &s, p).map_err(err)?));
        }
    }
    Ok(out)
}

fn example_closures() -> Result<Vec<(String, FusionSystem)>, String> {
    let one = instances::example_one().map_err(err)?;
    let two = instances::example_two().map_err(err)?;
    let (e3, b) = instances::example_three().map_err(err)?;
    let (e4, phi) = instances::example_four().map_err(err)?;
    let five = instances::example_five().map_err(err)?;
    let pprime: Vec<GroupHom> = two.c1.iter().chain(&two.c2).cloned().collect();
    Ok(vec![
        ("example one".into(), fusion_closure(&one.e, 2, &one.automorphisms).map_err(err)?),
        ("example two".into(), fusion_closure(&two.e, 2, &two.all).map_err(err)?),
        ("example two, p' generators".into(), fusion_closure(&two.e, 2, &pprime).map_err(err)?),
        ("example three".into(), fusion_closure(&e3, 2, &b).map_err(err)?),
        ("example four".into(), fusion_closure(&e4, 2, &[phi]).map_err(err)?),
        ("example five".into(), five.star.generated_fusion().map_err(err)?),
    ])
}

fn criterion_5() -> Outcome {
    let mut systems: Vec<(String, FusionSystem)> = Vec::new();
    for (name, p, s) in catalog::p_groups_up_to_16() {
        systems.push((format!("inner {name}"), inner_fusion(&s, p).map_err(err)?));
    }
    systems.extend(example_closures()?);
    for (name, data) in instances::rose_corpus() {
        systems.push((format!("rose {name}"), data.fusion().map_err(err)?));
    }
    systems.extend(group_fusions()?);
    ensure(systems.len() >= 30, || "fewer than 30 systems".into())?;
    let mut saturated = 0usize;
    for (name, f) in &systems {
        let a = f.is_saturated().saturated;
        let b = f.is_saturated_simplified().saturated;
        ensure(a == b, || format!("{name}: axioms 3-4 say {a}, axioms 3'-4' say {b}"))?;
        saturated += usize::from(a);
    }
    Ok(format!("{} systems agree, {saturated} saturated", systems.len()))
}

fn criterion_6() -> Outcome {
    let systems = group_fusions()?;
    for (name, f) in &systems {
        let report = f.is_saturated();
        ensure(report.saturated, || format!("{name}: {:?}", report.failures.first()))?;
    }
    Ok(format!("{} group fusion systems saturated", systems.len()))
}

fn criterion_7() -> Outcome {
    let one = instances::example_one().map_err(err)?;
    let closure = fusion_closure(&one.e, 2, &one.automorphisms).map_err(err)?;
    let group = fusion_of_group(&one.product.group, &one.product.normal, 2).map_err(err)?;
    ensure(one.product.group.order() == 56, || "E ⋊ C has the wrong order".into())?;
    ensure(fusion_equal(&closure, &group).map_err(err)?, || "closure differs from F_E(E ⋊ C)".into())?;
    ensure(closure.is_saturated().saturated, || "closure is not saturated".into())?;
    let star = instances::example_one_star().map_err(err)?.generated_fusion().map_err(err)?;
    ensure(fusion_equal(&star, &group).map_err(err)?, || "star realization differs".into())?;
    Ok("equal and saturated".into())
}

fn gl_order(n: u32, q: u64) -> u64 {
    (0..n).map(|k| q.pow(n) - q.pow(k)).product()
}

fn criterion_8() -> Outcome {
    let two = instances::example_two().map_err(err)?;
    let full = fusion_closure(&two.e, 2, &two.all).map_err(err)?;
    let expected = gl_order(3, 2) as usize;
    let got = full.aut_f_order(&two.e.all()).map_err(err)?;
    ensure(got == expected, || format!("|Aut_F(E)| = {got}, expected {expected}"))?;
    ensure(!full.is_saturated().saturated, || "full closure is saturated".into())?;
    let simplified = full.is_saturated_simplified();
    ensure(simplified.failed_axioms().contains(&Axiom::ThreePrime), || "axiom 3' does not fail".into())?;
    let pprime: Vec<GroupHom> = two.c1.iter().chain(&two.c2).cloned().collect();
    ensure(two.c1.len() == 7 && two.c2.len() == 3, || "p'-subgroups have the wrong orders".into())?;
    let partial = fusion_closure(&two.e, 2, &pprime).map_err(err)?;
    ensure(fusion_equal(&partial, &full).map_err(err)?, || "p'-generated closure differs".into())?;
    let star = instances::example_two_star().map_err(err)?.generated_fusion().map_err(err)?;
    ensure(fusion_equal(&star, &full).map_err(err)?, || "two-arm star differs".into())?;
    Ok(format!("|Aut_F(E)| = {got}, axiom 3' fails"))
}

fn criterion_9() -> Outcome {
    let (e, b) = instances::example_three().map_err(err)?;
    let f = fusion_closure(&e, 2, &b).map_err(err)?;
    let aut: HashSet<Vec<u32>> = f.aut_f(&e.all()).map_err(err)?.iter().map(|h| h.images().to_vec()).collect();
    let expected: HashSet<Vec<u32>> = b.iter().map(|h| h.images().to_vec()).collect();
    ensure(b.len() > 1 && aut == expected, || "Aut_F(E) differs from B".into())?;
    ensure(!f.is_saturated_abelian().map_err(err)?, || "abelian criterion accepts".into())?;
    let mut checked = 0;
    for (name, data) in instances::star_corpus() {
        let s = data.s();
        if !s.is_abelian() || !data.arms().iter().any(|a| a.image() == &s.all()) {
            continue;
        }
        let g = data.generated_fusion().map_err(err)?;
        let auts = g.aut_f(&s.all()).map_err(err)?;
        let p = data.prime() as usize;
        let has_pprime = auts.iter().any(|h| {
            let mut cur = h.clone();
            let mut k = 1;
            while cur.images() != s.all().members() {
                cur = h.compose(&cur).unwrap();
                k += 1;
            }
            k > 1 && k % p != 0
        });
        ensure(auts.len() == 1 || has_pprime, || format!("{name}: Aut_F(S) is a nontrivial p-group"))?;
        checked += 1;
    }
    Ok(format!("Aut_F(E) = B of order {}, {checked} star systems obey the obstruction", b.len()))
}

fn criterion_10() -> Outcome {
    let (e, phi) = instances::example_four().map_err(err)?;
    let f = fusion_closure(&e, 2, std::slice::from_ref(&phi)).map_err(err)?;
    let phi_inv = phi.inverse(&e).map_err(err)?;
    let mut morphisms = 0usize;
    for p in f.subgroups() {
        ensure(f.aut_f_order(p).map_err(err)? == 1, || "nontrivial object automorphisms".into())?;
        for q in f.subgroups() {
            for h in f.hom_set(p, q).map_err(err)? {
                let inclusion = h.images() == p.members();
                let via_phi = p == phi.domain() && h.images() == phi.images();
                let via_inv = p == phi_inv.domain() && h.images() == phi_inv.images();
                ensure(inclusion || via_phi || via_inv, || "a morphism outside the census".into())?;
                morphisms += 1;
            }
        }
    }
    // inclusions: pairs P ≤ Q; φ^{±1}: one per overgroup of the image, twice
    let subs = f.subgroups();
    let inclusions = subs.iter().flat_map(|p| subs.iter().filter(move |q| p.is_subset_of(q))).count();
    let over = |h: &Subgroup| subs.iter().filter(|q| h.is_subset_of(q)).count();
    let expected = inclusions + over(phi.codomain()) + over(phi.domain());
    ensure(morphisms == expected, || format!("{morphisms} morphisms, expected {expected}"))?;
    ensure(!f.is_saturated().saturated, || "closure is saturated".into())?;
    Ok(format!("{morphisms} morphisms, all inclusions or φ^±1"))
}

fn criterion_11() -> Outcome {
    let five = instances::example_five().map_err(err)?;
    let data = &five.star;
    let f = data.generated_fusion().map_err(err)?;
    let e = data.s().all();
    ensure(f.aut_f_order(&e).map_err(err)? == 1, || "Aut_F(E) is not trivial".into())?;
    ensure(five.d.len() == 3 && five.d.iter().all(|d| f.contains(d)), || "D is not inside Aut_F(F)".into())?;
    ensure(!f.is_saturated().saturated, || "generated fusion is saturated".into())?;
    // conjugation by a letter of D, read back as a factorization
    let arm = &data.arms()[0];
    let g = &arm.group;
    let d = (0..g.order() as u32).find(|&x| g.element_order(x) == 3).unwrap();
    let w = StarWord::new(vec![StarLetter::Arm(0, d)]);
    let fact = data.decompose_fusion_star(&w, &five.f, &five.f).map_err(err)?;
    let value = fact.evaluate(data).map_err(err)?;
    ensure(five.d.iter().any(|x| x.images() == value.images()), || "d does not evaluate to an element of D".into())?;
    Ok("Aut_F(E) = 1, D ≤ Aut_F(F), not saturated".into())
}

fn criterion_12() -> Outcome {
    let six = instances::example_six().map_err(err)?;
    let s = &six.s;
    ensure(s.order() == 81 && six.g1.group.order() == 432, || "wrong orders".into())?;
    ensure(six.center.order() == 3 && six.p.order() == 27, || "wrong Z or P".into())?;
    ensure(s.centralizer(&six.e) == six.e, || "C_S(E) ≠ E".into())?;
    let f = six.star.generated_fusion().map_err(err)?;
    let report = six.star.is_alperin(&f).map_err(err)?;
    ensure(report.alperin, || format!("not Alperin: {:?}", report.per_arm))?;
    let out = f.out_f(&six.e).map_err(err)?;
    ensure(out.order() == 48, || format!("|Out_F(E)| = {}", out.order()))?;
    let sat = f.is_saturated();
    ensure(!sat.saturated, || "generated fusion is saturated".into())?;
    // the centre has nontrivial automorphisms in F while Aut_F(S) is inner
    ensure(f.aut_f_order(&six.center).map_err(err)? > 1, || "Aut_F(Z) is trivial".into())?;
    ensure(f.out_f(&s.all()).map_err(err)?.order() == 1, || "S has outer automorphisms in F".into())?;
    Ok(format!("Alperin, not saturated ({} failures)", sat.failures.len()))
}

fn criterion_13() -> Outcome {
    let corpus = instances::rose_corpus();
    let (_, data) = corpus.iter().find(|(n, _)| n == "V4 line swap").unwrap();
    let s = data.s();
    let n = s.order();
    let edge = &data.edges()[0];
    let (a, b) = (edge.p.members()[1], edge.image().members()[1]);
    let trivial = vec![1i64; n];
    let regular: Vec<i64> = (0..n).map(|x| if x == 0 { n as i64 } else { 0 }).collect();
    let kernel = s.closure(&[b]);
    let linear: Vec<i64> = (0..n as u32).map(|x| if kernel.contains(x) { 1 } else { -1 }).collect();
    ensure(linear[a as usize] == -1 && linear[b as usize] == 1, || "linear character set up wrongly".into())?;
    let got = [
        data.character_extends(&trivial).map_err(err)?,
        data.character_extends(&regular).map_err(err)?,
        data.character_extends(&linear).map_err(err)?,
    ];
    ensure(got == [true, true, false], || format!("got {got:?}"))?;
    Ok("trivial true, regular true, linear false".into())
}

fn criterion_14() -> Outcome {
    let mut all: Vec<(String, StarData)> = instances::star_corpus();
    all.push(("order 81".into(), instances::example_six().map_err(err)?.star));
    for (name, data) in &all {
        let q = data.finite_quotient(DEFAULT_QUOTIENT_CAP).map_err(err)?;
        ensure(q.is_free(), || format!("{name}: an action is not free"))?;
        let bad = q.failing_relators();
        ensure(bad.is_empty(), || format!("{name}: {} relators fail", bad.len()))?;
    }
    Ok(format!("{} quotients free with all relators satisfied", all.len()))
}

type Criterion = (u32, &'static str, u64, fn() -> Outcome);

fn main() {
    let criteria: Vec<Criterion> = vec![
        (1, "Cayley realization of injective maps", 30, criterion_1),
        (2, "rose closure equals bounded word fusion", 60, criterion_2),
        (3, "Britton reduction strategies agree", 30, criterion_3),
        (4, "rose presentations in the symmetric group", 10, criterion_4),
        (5, "saturation axiom sets agree", 60, criterion_5),
        (6, "group fusion systems are saturated", 60, criterion_6),
        (7, "C2^3 with C7", 5, criterion_7),
        (8, "C2^3 with all automorphisms", 10, criterion_8),
        (9, "C2^3 with a 2-group of automorphisms", 10, criterion_9),
        (10, "C2^3 with one line map", 5, criterion_10),
        (11, "amalgam over a proper subgroup", 5, criterion_11),
        (12, "Alperin but not saturated, order 81", 120, criterion_12),
        (13, "character extension", 1, criterion_13),
        (14, "finite quotients of star data", 30, criterion_14),
    ];
    let mut failed = 0;
    for (k, name, budget, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let over = elapsed > Duration::from_secs(budget);
        let (tag, msg) = match (&outcome, over) {
            (Ok(m), false) => ("PASS", m.clone()),
            (Ok(m), true) => ("FAIL", format!("{m}; over the {budget} s budget")),
            (Err(m), _) => ("FAIL", m.clone()),
        };
        if tag == "FAIL" {
            failed += 1;
        }
        println!("criterion {k:>2} {tag} [{:.2}s / {budget}s] {name}: {msg}", elapsed.as_secs_f64());
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
