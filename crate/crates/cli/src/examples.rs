//! The six worked configurations as self-contained spec files whose `expect`
//! clauses carry the known verdicts.

use std::fmt::Write as _;

use fusionkit_core::group::small_generating_set;
use fusionkit_core::instances;
use fusionkit_core::{FiniteGroup, GroupHom, Subgroup};

pub struct BuiltinExample {
    pub name: &'static str,
    pub summary: &'static str,
    pub text: String,
}

#[derive(Default)]
struct Writer {
    out: String,
}

impl Writer {
    fn line(&mut self, text: impl AsRef<str>) {
        self.out.push_str(text.as_ref());
        self.out.push('\n');
    }

    fn group(&mut self, name: &str, g: &FiniteGroup, prime: Option<u32>) {
        match prime {
            Some(p) => self.line(format!("group {name} {} prime {p}", g.degree())),
            None => self.line(format!("group {name} {}", g.degree())),
        }
        for x in g.generator_perms() {
            self.line(format!("gen {name} {x}"));
        }
    }

    fn subgroup(&mut self, name: &str, group: &str, g: &FiniteGroup, h: &Subgroup) {
        if *h == g.all() {
            return self.line(format!("subgroup {name} {group} all"));
        }
        let gens: Vec<String> = small_generating_set(g, h).iter().map(|&x| g.element(x).to_cycle_string()).collect();
        let gens = if gens.is_empty() { "()".to_string() } else { gens.join(" ") };
        self.line(format!("subgroup {name} {group} {gens}"));
    }

    fn morphism(&mut self, name: &str, dom: &str, cod: &str, src: &FiniteGroup, dst: &FiniteGroup, f: &GroupHom) {
        let mut text = format!("morphism {name} {dom} {cod}");
        for x in small_generating_set(src, f.domain()) {
            let y = f.apply(x).expect("generator lies in the domain");
            write!(text, " {}->{}", src.element(x), dst.element(y)).unwrap();
        }
        self.line(text);
    }

    fn names(prefix: &str, n: usize) -> Vec<String> {
        (0..n).map(|k| format!("{prefix}{k}")).collect()
    }
}

fn is_identity(f: &GroupHom) -> bool {
    f.images() == f.domain().members()
}

fn eg1() -> fusionkit_core::Result<String> {
    let ext = instances::example_one()?;
    let g = &ext.product.group;
    let n = &ext.product.normal;
    let mut w = Writer::default();
    w.line("# E = C2^3 with an automorphism group C of order 7, and E ⋊ C");
    w.group("S", &ext.e, Some(2));
    w.subgroup("E", "S", &ext.e, &ext.e.all());
    let autos: Vec<&GroupHom> = ext.automorphisms.iter().filter(|a| !is_identity(a)).collect();
    let names = Writer::names("c", autos.len());
    for (name, a) in names.iter().zip(&autos) {
        w.morphism(name, "E", "E", &ext.e, &ext.e, a);
    }
    w.group("G", g, None);
    w.subgroup("N", "G", g, n);
    let f = GroupHom::new(g, n.clone(), &ext.e, ext.e.all(), (0..n.order() as u32).collect())?;
    w.morphism("f", "N", "E", g, &ext.e, &f);
    w.line(format!("fusion F closure S {}", names.join(" ")));
    w.line("fusion FG group G N");
    w.line("star T S arm G N f");
    w.line("fusion FT star T");
    w.line("check saturated F expect true");
    w.line("check equal F FG expect true");
    w.line("check equal F FT expect true");
    w.line("check aut F E expect 7");
    w.line("check realize-star T expect true");
    Ok(w.out)
}

fn eg2() -> fusionkit_core::Result<String> {
    let cube = instances::cube_automorphisms()?;
    let e = &cube.e;
    let mut w = Writer::default();
    w.line("# E = C2^3 with all of Aut(E), generated by p'-elements of orders 7 and 3");
    w.group("S", e, Some(2));
    w.subgroup("E", "S", e, &e.all());
    w.morphism("a7", "E", "E", e, e, &cube.order_seven);
    w.morphism("a3", "E", "E", e, e, &cube.order_three);
    w.line("fusion F closure S a7 a3");
    let star = instances::example_two_star()?;
    let mut arms = Vec::new();
    for (i, arm) in star.arms().iter().enumerate() {
        let (gname, nname, fname) = (format!("G{i}"), format!("N{i}"), format!("f{i}"));
        w.group(&gname, &arm.group, None);
        w.subgroup(&nname, &gname, &arm.group, &arm.sylow);
        w.morphism(&fname, &nname, "E", &arm.group, e, &arm.embedding);
        arms.push(format!("arm {gname} {nname} {fname}"));
    }
    w.line(format!("star T S {}", arms.join(" ")));
    w.line("fusion FT star T");
    w.line("check aut F E expect 168");
    w.line("check saturated F expect false");
    w.line("check saturated-simplified F expect false");
    w.line("check equal F FT expect true");
    w.line("check realize-star T expect true");
    Ok(w.out)
}

fn eg3() -> fusionkit_core::Result<String> {
    let (e, b) = instances::example_three()?;
    let mut w = Writer::default();
    w.line("# E = C2^3 with a Sylow 2-subgroup B of Aut(E) as morphisms");
    w.group("S", &e, Some(2));
    w.subgroup("E", "S", &e, &e.all());
    let names = Writer::names("b", b.len());
    for (name, x) in names.iter().zip(&b) {
        w.morphism(name, "E", "E", &e, &e, x);
    }
    w.line(format!("fusion F closure S {}", names.join(" ")));
    w.line(format!("check aut F E expect {}", b.len()));
    w.line(format!("check out F E expect {}", b.len()));
    w.line("check saturated-abelian F expect false");
    w.line("check saturated F expect false");
    Ok(w.out)
}

fn eg4() -> fusionkit_core::Result<String> {
    let (e, phi) = instances::example_four()?;
    let n = e.order();
    let mut w = Writer::default();
    w.line("# E = C2^3 with a single map between two lines");
    w.group("S", &e, Some(2));
    w.subgroup("E", "S", &e, &e.all());
    w.subgroup("A", "S", &e, phi.domain());
    w.subgroup("B", "S", &e, phi.codomain());
    w.morphism("phi", "A", "B", &e, &e, &phi);
    w.morphism("id", "E", "E", &e, &e, &GroupHom::identity(&e.all()));
    w.line("rose R S phi");
    w.line("fusion F closure S phi");
    w.line("fusion FR rose R");
    w.line("check equal F FR expect true");
    w.line("check max-aut F expect 1");
    w.line("check saturated F expect false");
    w.line("check realize-rose R expect true");
    w.line("check decompose R A t0 expect true");
    w.line("check cayley-realize S phi expect true");
    w.line(format!("check character R {} expect true", vec!["1"; n].join(" ")));
    let regular: Vec<String> = (0..n).map(|k| if k == 0 { n.to_string() } else { "0".into() }).collect();
    w.line(format!("check character R {} expect true", regular.join(" ")));
    w.line("check hom-extension R S id expect false");
    Ok(w.out)
}

fn eg5() -> fusionkit_core::Result<String> {
    let five = instances::example_five()?;
    let data = &five.star;
    let e = data.s();
    let arm = &data.arms()[0];
    let g = &arm.group;
    let d = (0..g.order() as u32).find(|&x| g.element_order(x) == 3).expect("D has order 3");
    let mut w = Writer::default();
    w.line("# E = C2^3 amalgamated with F ⋊ D over F = C2^2, D of order 3");
    w.group("S", e, Some(2));
    w.subgroup("E", "S", e, &e.all());
    w.subgroup("F", "S", e, &five.f);
    w.group("G", g, None);
    w.subgroup("N", "G", g, &arm.sylow);
    w.morphism("f", "N", "E", g, e, &arm.embedding);
    let names = Writer::names("d", five.d.len());
    for (name, x) in names.iter().zip(&five.d) {
        w.morphism(name, "F", "F", e, e, x);
    }
    w.line("star T S arm G N f");
    w.line("fusion FT star T");
    w.line("check aut FT E expect 1");
    for name in &names {
        w.line(format!("check contains FT {name} expect true"));
    }
    w.line("check aut FT F expect 3");
    w.line("check saturated FT expect false");
    w.line("check realize-star T expect true");
    w.line(format!("check decompose-star T F g0:{} expect true", g.element(d)));
    Ok(w.out)
}

fn eg6() -> fusionkit_core::Result<String> {
    let six = instances::example_six()?;
    let s = &six.s;
    let arm = &six.star.arms()[0];
    let g = &arm.group;
    let mut w = Writer::default();
    w.line("# S = C3 wr C3 of order 81 with one arm E ⋊ Aut(E), E = Z x B");
    w.group("S", s, Some(3));
    w.subgroup("Sall", "S", s, &s.all());
    w.subgroup("Z", "S", s, &six.center);
    w.subgroup("B", "S", s, &six.b);
    w.subgroup("E", "S", s, &six.e);
    w.subgroup("P", "S", s, &six.p);
    w.group("G", g, Some(3));
    w.subgroup("Q", "G", g, &arm.sylow);
    w.morphism("f", "Q", "Sall", g, s, &arm.embedding);
    w.line("star T S arm G Q f");
    w.line("fusion F star T");
    w.line("check alperin T F expect true");
    w.line("check saturated F expect false");
    w.line("check out F E expect 48");
    w.line("check out F Sall expect 1");
    w.line("check aut F Z expect 2");
    w.line("check realize-star T expect true");
    Ok(w.out)
}

type Build = fn() -> fusionkit_core::Result<String>;

const TABLE: [(&str, &str, Build); 6] = [
    ("eg1", "C2^3 under C7: saturated, equal to the fusion of C2^3 ⋊ C7", eg1),
    ("eg2", "C2^3 under GL(3,2): axiom 3' fails at E", eg2),
    ("eg3", "C2^3 under a Sylow 2-subgroup of GL(3,2): Aut_F(E) is a 2-group", eg3),
    ("eg4", "C2^3 with one line map: every object automorphism group is trivial", eg4),
    ("eg5", "C2^3 *_F (F ⋊ C3): Aut_F(E) = 1 while D lies in Aut_F(F)", eg5),
    ("eg6", "C3 wr C3 with one arm: Alperin but not saturated", eg6),
];

fn build(entry: &(&'static str, &'static str, Build)) -> BuiltinExample {
    let (name, summary, f) = *entry;
    BuiltinExample { name, summary, text: f().expect("built-in configurations are valid") }
}

/// Names and one-line summaries, without building anything.
pub fn builtin_names() -> Vec<(&'static str, &'static str)> {
    TABLE.iter().map(|&(n, s, _)| (n, s)).collect()
}

/// All six configurations, in order.
pub fn builtin_examples() -> Vec<BuiltinExample> {
    TABLE.iter().map(build).collect()
}

pub fn builtin_example(name: &str) -> Option<BuiltinExample> {
    TABLE.iter().find(|e| e.0 == name).map(build)
}
