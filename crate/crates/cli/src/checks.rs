//! Runs check directives and assembles the JSON report.

use fusionkit_core::fusion::{fusion_equal, fusion_subsystem, FusionSystem, SaturationReport, Step};
use fusionkit_core::group::cayley_embedding;
use fusionkit_core::presentation::{cayley_presentation, Presentation};
use fusionkit_core::rose::{realize_morphism_in_sym, HNNWord, RoseData};
use fusionkit_core::star::{StarData, StarLetter, StarWord};
use fusionkit_core::{FiniteGroup, Perm};
use num_rational::Rational64;
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::model::{CheckDirective, Model, Options};
use crate::spec::Expect;

type Outcome = Result<(Value, Map<String, Value>), String>;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// Runs every check of `model`, in parallel, and returns the report with
/// checks in file order.
pub fn run_checks(model: &Model, options: &Options) -> Value {
    let results: Vec<Value> = model.checks.par_iter().map(|c| run_directive(model, c, options)).collect();
    let passed = results.iter().filter(|r| r["passed"] == Value::Bool(true)).count();
    json!({
        "checks": results,
        "summary": { "total": results.len(), "passed": passed, "failed": results.len() - passed },
    })
}

/// Whether every check in a report passed.
pub fn all_passed(report: &Value) -> bool {
    report["summary"]["failed"] == json!(0)
}

fn expect_value(e: &Expect) -> Value {
    match e {
        Expect::Bool(b) => json!(b),
        Expect::Int(n) => json!(n),
    }
}

fn run_directive(model: &Model, c: &CheckDirective, options: &Options) -> Value {
    let outcome = run_one(model, c, options);
    let expected = c.expect.as_ref().map(expect_value);
    let mut out = Map::new();
    out.insert("line".into(), json!(c.line));
    out.insert("kind".into(), json!(c.kind));
    out.insert("args".into(), json!(c.args));
    out.insert("expected".into(), expected.clone().unwrap_or(Value::Null));
    match outcome {
        Ok((value, result)) => {
            let passed = expected.as_ref().is_none_or(|e| *e == value);
            out.insert("passed".into(), json!(passed));
            out.insert("value".into(), value);
            out.insert("result".into(), Value::Object(result));
            out.insert("error".into(), Value::Null);
        }
        Err(message) => {
            out.insert("passed".into(), json!(false));
            out.insert("value".into(), Value::Null);
            out.insert("result".into(), Value::Null);
            out.insert("error".into(), json!(message));
        }
    }
    Value::Object(out)
}

/// Labels witness steps with permutations in the groups they act in.
struct StepLabels<'a> {
    s: &'a FiniteGroup,
    generator: &'a str,
    ambient: Option<&'a FiniteGroup>,
    star: Option<&'a StarData>,
}

impl StepLabels<'_> {
    fn label(&self, step: &Step) -> String {
        match *step {
            Step::Inner(x) => format!("inner {}", self.s.element(x)),
            Step::Gen { index, inverse } => {
                format!("{}{index}{}", self.generator, if inverse { "^-1" } else { "" })
            }
            Step::Conj(g) => match self.ambient {
                Some(a) => format!("conj {}", a.element(g)),
                None => format!("conj #{g}"),
            },
            Step::Arm { arm, element } => match self.star {
                Some(d) => format!("g{arm}:{}", d.arms()[arm].group.element(element)),
                None => format!("g{arm}:#{element}"),
            },
        }
    }

    fn labels(&self, steps: &[Step]) -> Value {
        json!(steps.iter().map(|s| self.label(s)).collect::<Vec<_>>())
    }
}

fn fusion_labels(f: &FusionSystem) -> StepLabels<'_> {
    StepLabels { s: f.s(), generator: "gen", ambient: f.ambient_group(), star: None }
}

fn saturation(model: &Model, f: &FusionSystem, report: SaturationReport) -> (Value, Map<String, Value>) {
    let failures: Vec<Value> = report
        .failures
        .iter()
        .map(|x| {
            json!({
                "axiom": x.axiom.to_string(),
                "object": model.describe(&x.subgroup, f.s()),
                "target": x.target.as_ref().map(|t| model.describe(t, f.s())),
                "reason": x.reason,
            })
        })
        .collect();
    let axioms: Vec<String> = report.failed_axioms().iter().map(|a| a.to_string()).collect();
    let mut result = Map::new();
    result.insert("failed_axioms".into(), json!(axioms));
    result.insert("failures".into(), json!(failures));
    (json!(report.saturated), result)
}

fn presentation_text(p: &Presentation) -> Value {
    json!(p.to_text().lines().collect::<Vec<_>>())
}

fn cycles(perms: &[Perm]) -> Value {
    json!(perms.iter().map(Perm::to_cycle_string).collect::<Vec<_>>())
}

/// Reads `t<i>` or `t<i>^-1`.
fn stable_token(tok: &str) -> Option<(usize, i8)> {
    let rest = tok.strip_prefix('t')?;
    let (num, e) = match rest.strip_suffix("^-1") {
        Some(n) => (n, -1),
        None => (rest, 1),
    };
    num.parse().ok().map(|i| (i, e))
}

fn rose_word(data: &RoseData, tokens: &[String]) -> Result<HNNWord, String> {
    let s = data.s();
    let mut word = HNNWord { syllables: Vec::new(), stables: Vec::new() };
    let mut acc = s.identity();
    for tok in tokens {
        if let Some((i, e)) = stable_token(tok) {
            if i >= data.edges().len() {
                return Err(format!("stable letter `{tok}` has no edge"));
            }
            word.syllables.push(acc);
            word.stables.push((i, e));
            acc = s.identity();
        } else {
            let p = Perm::parse_cycles(s.degree(), tok).map_err(|e| format!("bad word letter `{tok}`: {e}"))?;
            let x = s.index_of(&p).ok_or_else(|| format!("`{tok}` is not an element of S"))?;
            acc = s.mul(acc, x);
        }
    }
    word.syllables.push(acc);
    Ok(word)
}

/// Reads centre letters as permutations and arm letters as `g<i>:<perm>`.
fn star_word(data: &StarData, tokens: &[String]) -> Result<StarWord, String> {
    let s = data.s();
    let mut letters = Vec::with_capacity(tokens.len());
    for tok in tokens {
        if let Some((head, perm)) = tok.split_once(':') {
            let i: usize = head
                .strip_prefix('g')
                .and_then(|n| n.parse().ok())
                .filter(|&i| i < data.arms().len())
                .ok_or_else(|| format!("`{head}` does not name an arm"))?;
            let g = &data.arms()[i].group;
            let p = Perm::parse_cycles(g.degree(), perm).map_err(|e| format!("bad word letter `{tok}`: {e}"))?;
            let x = g.index_of(&p).ok_or_else(|| format!("`{perm}` is not an element of arm {i}"))?;
            letters.push(StarLetter::Arm(i, x));
        } else {
            let p = Perm::parse_cycles(s.degree(), tok).map_err(|e| format!("bad word letter `{tok}`: {e}"))?;
            letters.push(StarLetter::Center(s.index_of(&p).ok_or_else(|| format!("`{tok}` is not an element of S"))?));
        }
    }
    Ok(StarWord::new(letters))
}

fn run_one(model: &Model, c: &CheckDirective, options: &Options) -> Outcome {
    let args = &c.args;
    let fusion = |k: usize| &*model.fusions[&args[k]];
    let rose = |k: usize| &model.roses[&args[k]];
    let star = |k: usize| &model.stars[&args[k]];
    let mut result = Map::new();
    let value = match c.kind.as_str() {
        "closure" => {
            let f = fusion(0);
            let objects: Vec<String> = f.subgroups().iter().map(|h| model.describe(h, f.s())).collect();
            let census = f.census();
            let mut classes: Vec<Vec<String>> = Vec::new();
            let mut seen = vec![false; f.subgroups().len()];
            for (k, h) in f.subgroups().iter().enumerate() {
                if seen[k] {
                    continue;
                }
                let class = f.iso_class(h).map_err(err)?;
                for m in &class {
                    seen[f.subgroup_index(m).expect("class members are subgroups of S")] = true;
                }
                classes.push(class.iter().map(|m| model.describe(m, f.s())).collect());
            }
            result.insert("objects".into(), json!(objects));
            result.insert("census".into(), json!(census));
            result.insert("classes".into(), json!(classes));
            result.insert("order".into(), json!(f.s().order()));
            json!(f.isomorphism_count())
        }
        "saturated" => {
            let (v, r) = saturation(model, fusion(0), fusion(0).is_saturated());
            result = r;
            v
        }
        "saturated-simplified" => {
            let (v, r) = saturation(model, fusion(0), fusion(0).is_saturated_simplified());
            result = r;
            v
        }
        "saturated-abelian" => json!(fusion(0).is_saturated_abelian().map_err(err)?),
        "max-aut" => {
            let f = fusion(0);
            let mut max = 0;
            let mut nontrivial = Vec::new();
            for h in f.subgroups() {
                let n = f.aut_f_order(h).map_err(err)?;
                max = max.max(n);
                if n > 1 {
                    nontrivial.push(model.describe(h, f.s()));
                }
            }
            result.insert("nontrivial".into(), json!(nontrivial));
            json!(max)
        }
        "aut" => {
            let f = fusion(0);
            let p = model.subgroup_in(&args[1], f.s())?;
            result.insert("aut_s".into(), json!(f.aut_s(&p).map_err(err)?.len()));
            result.insert("fully_normalized".into(), json!(f.is_fully_normalized(&p).map_err(err)?));
            result.insert("fully_centralized".into(), json!(f.is_fully_centralized(&p).map_err(err)?));
            json!(f.aut_f_order(&p).map_err(err)?)
        }
        "out" => {
            let f = fusion(0);
            let p = model.subgroup_in(&args[1], f.s())?;
            json!(f.out_f(&p).map_err(err)?.order())
        }
        "hom" => {
            let f = fusion(0);
            let p = model.subgroup_in(&args[1], f.s())?;
            let q = model.subgroup_in(&args[2], f.s())?;
            json!(f.hom_set_size(&p, &q).map_err(err)?)
        }
        "equal" => json!(fusion_equal(fusion(0), fusion(1)).map_err(err)?),
        "subsystem" => json!(fusion_subsystem(fusion(0), fusion(1)).map_err(err)?),
        "contains" => {
            let f = fusion(0);
            let h = model.morphism_in(&args[1], f.s())?;
            let inside = f.contains(&h);
            if options.trace && inside {
                if let Some(steps) = f.witness_steps(&h) {
                    result.insert("witness".into(), fusion_labels(f).labels(&steps));
                }
            }
            json!(inside)
        }
        "nf" => {
            let f = fusion(0);
            let h = model.morphism_in(&args[1], f.s())?;
            let nf = f.compute_nf(&h).map_err(err)?;
            result.insert("nf".into(), json!(model.describe(&nf, f.s())));
            json!(nf.order())
        }
        "realize-rose" => {
            let (_, data) = rose(0);
            let s = data.s();
            let presentation = data.presentation();
            let assignment = data.map_to_symmetric();
            let failing = presentation.failing_relators(&assignment);
            // S-part of the assignment, read back on every element of S
            let cp = cayley_presentation(s);
            let mut images: Vec<Perm> =
                cp.words.iter().map(|w| Presentation::evaluate(w, &assignment[..cp.generators.len()])).collect();
            images.sort();
            images.dedup();
            let injective = images.len() == s.order();
            result.insert("degree".into(), json!(s.order()));
            result.insert("failing_relators".into(), json!(failing));
            result.insert("injective_on_s".into(), json!(injective));
            result.insert("presentation".into(), presentation_text(&presentation));
            result.insert("stable_letters".into(), cycles(&assignment[cp.generators.len()..]));
            json!(failing.is_empty() && injective)
        }
        "realize-star" => {
            let (_, data) = star(0);
            let q = data.finite_quotient(options.cap).map_err(err)?;
            let failing = q.failing_relators();
            let free = q.is_free();
            result.insert("degree".into(), json!(q.degree));
            result.insert("failing_relators".into(), json!(failing));
            result.insert("free".into(), json!(free));
            result.insert("presentation".into(), presentation_text(&q.presentation));
            if options.trace {
                result.insert("assignment".into(), cycles(&q.assignment));
            }
            json!(failing.is_empty() && free)
        }
        "alperin" => {
            let (_, data) = star(0);
            let report = data.is_alperin(fusion(1)).map_err(err)?;
            let arms: Vec<Value> = report
                .per_arm
                .iter()
                .map(|a| {
                    json!({
                        "condition1": a.condition1,
                        "condition2": a.condition2,
                        "condition3": a.condition3,
                        "detail": a.detail,
                    })
                })
                .collect();
            result.insert("arms".into(), json!(arms));
            json!(report.alperin)
        }
        "decompose" => {
            let (_, data) = rose(0);
            let s = data.s();
            let p = model.subgroup_in(&args[1], s)?;
            let w = rose_word(data, &args[2..])?;
            let c = data.conjugation_by_word(&w, &p).map_err(err)?.ok_or("the conjugate of P is not in S")?;
            let fact = data.decompose_fusion(&w, &p, &s.all()).map_err(err)?;
            let value = fact.evaluate(&**data).map_err(err)?;
            let reduced = data.britton_reduce(&w).map_err(err)?;
            result.insert("image".into(), json!(model.describe(&c.image(s), s)));
            result.insert("reduced_stable_length".into(), json!(reduced.stable_length()));
            result.insert("generator_steps".into(), json!(fact.generator_steps()));
            if options.trace {
                let labels = StepLabels { s, generator: "t", ambient: None, star: None };
                result.insert("steps".into(), labels.labels(&fact.steps));
            }
            json!(value.images() == c.images())
        }
        "decompose-star" => {
            let (_, data) = star(0);
            let s = data.s();
            let p = model.subgroup_in(&args[1], s)?;
            let w = star_word(data, &args[2..])?;
            let c = data.conjugation_by_word(&w, &p).map_err(err)?.ok_or("the conjugate of P is not in S")?;
            let fact = data.decompose_fusion_star(&w, &p, &s.all()).map_err(err)?;
            let value = fact.evaluate(&**data).map_err(err)?;
            let reduced = data.star_reduce(&w).map_err(err)?;
            result.insert("image".into(), json!(model.describe(&c.image(s), s)));
            result.insert("reduced_arm_letters".into(), json!(reduced.arm_letters()));
            result.insert("generator_steps".into(), json!(fact.generator_steps()));
            if options.trace {
                let labels = StepLabels { s, generator: "gen", ambient: None, star: Some(data) };
                result.insert("steps".into(), labels.labels(&fact.steps));
            }
            json!(value.images() == c.images())
        }
        "character" => {
            let (_, data) = rose(0);
            let values = args[1..]
                .iter()
                .map(|t| t.parse::<Rational64>().map_err(|_| format!("bad character value `{t}`")))
                .collect::<Result<Vec<_>, _>>()?;
            json!(data.character_extends(&values).map_err(err)?)
        }
        "hom-extension" => {
            let (group, data) = rose(0);
            let h = &*model.groups[&args[1]];
            let m = &model.morphisms[&args[2]];
            let (dom_group, dom) = &model.subgroups[&m.domain];
            let (cod_group, _) = &model.subgroups[&m.codomain];
            if dom_group != group || dom.order() != data.s().order() {
                return Err(format!("`{}` must be defined on all of `{group}`", args[2]));
            }
            if *cod_group != args[1] {
                return Err(format!("`{}` must land in `{}`", args[2], args[1]));
            }
            let found = data.check_hom_extension(h, &m.hom).map_err(err)?;
            if let Some(xs) = &found {
                let perms: Vec<Perm> = xs.iter().map(|&x| h.element(x).clone()).collect();
                result.insert("stable_images".into(), cycles(&perms));
            }
            json!(found.is_some())
        }
        "cayley-realize" => {
            let g = &*model.groups[&args[0]];
            let f = model.morphism_in(&args[1], g)?;
            let sigma = realize_morphism_in_sym(g, &f);
            let lam = cayley_embedding(g).perms;
            let sigma_inv = sigma.inverse();
            let ok = f
                .domain()
                .members()
                .iter()
                .zip(f.images())
                .all(|(&u, &v)| sigma_inv.compose(&lam[u as usize]).compose(&sigma) == lam[v as usize]);
            result.insert("sigma".into(), json!(sigma.to_cycle_string()));
            result.insert("degree".into(), json!(g.order()));
            json!(ok)
        }
        other => return Err(format!("unknown check `{other}`")),
    };
    Ok((value, result))
}
