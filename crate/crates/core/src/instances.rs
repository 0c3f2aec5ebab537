//! Worked configurations on `C2³` and `C3 ≀ C3`, and small corpora of rose
//! and star data used by the tests and the command line.

use crate::catalog::{self, elementary_abelian};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::hom::{automorphism_group, find_isomorphism_between, GroupHom};
use crate::rose::RoseData;
use crate::semidirect::{automorphism_action, semidirect_product, SemidirectProduct};
use crate::star::StarData;
use crate::subgroups::{all_subgroups, sylow_subgroups};

/// Moves a homomorphism of subgroups of `from` to `to` along an injective
/// element map `map` (indices of `from` to indices of `to`).
pub fn transport(h: &GroupHom, to: &FiniteGroup, map: &[u32]) -> Result<GroupHom> {
    let moved = |sub: &Subgroup| -> Result<Subgroup> {
        let mut m: Vec<u32> = sub.members().iter().map(|&x| map[x as usize]).collect();
        m.sort_unstable();
        to.subgroup_from_members(&m)
    };
    let domain = moved(h.domain())?;
    let codomain = moved(h.codomain())?;
    let mut pairs: Vec<(u32, u32)> =
        h.domain().members().iter().zip(h.images()).map(|(&x, &y)| (map[x as usize], map[y as usize])).collect();
    pairs.sort_unstable();
    GroupHom::new(to, domain, to, codomain, pairs.into_iter().map(|(_, y)| y).collect())
}

/// The automorphisms of `e` generated by `gens`, as a group acting on `e`.
fn aut_subgroup(e: &FiniteGroup, gens: &[GroupHom]) -> Result<(FiniteGroup, Vec<GroupHom>)> {
    let act = automorphism_action(e, gens)?;
    Ok((act.group, act.automorphisms))
}

/// `E ⋊ C` for a group of automorphisms, with `E` re-read inside the product
/// and `C`'s automorphisms transported onto it.
#[derive(Clone, Debug)]
pub struct SplitExtension {
    pub product: SemidirectProduct,
    /// `E` as its own group, element `k` being `product.normal.members()[k]`.
    pub e: FiniteGroup,
    /// The automorphisms in `C`, transported to `e`.
    pub automorphisms: Vec<GroupHom>,
}

pub fn split_extension(base: &FiniteGroup, auts: &[GroupHom]) -> Result<SplitExtension> {
    let (c, all) = aut_subgroup(base, auts)?;
    let product = semidirect_product(base, &c, &all)?;
    let e = product.group.subgroup_as_group(&product.normal);
    let map: Vec<u32> = product
        .normal_embedding
        .iter()
        .map(|&x| product.normal.position(x).unwrap() as u32)
        .collect();
    let automorphisms = all.iter().map(|a| transport(a, &e, &map)).collect::<Result<Vec<_>>>()?;
    Ok(SplitExtension { product, e, automorphisms })
}

/// Automorphisms of `C2³`, its elements of order 7 and 3, and a pair
/// generating the whole automorphism group.
#[derive(Clone, Debug)]
pub struct CubeAutomorphisms {
    pub e: FiniteGroup,
    pub all: Vec<GroupHom>,
    pub order_seven: GroupHom,
    pub order_three: GroupHom,
}

fn aut_order(e: &FiniteGroup, a: &GroupHom) -> usize {
    let mut cur = a.clone();
    let mut k = 1;
    while cur.images() != e.all().members() {
        cur = a.compose(&cur).unwrap();
        k += 1;
    }
    k
}

pub fn cube_automorphisms() -> Result<CubeAutomorphisms> {
    let e = elementary_abelian(2, 3);
    let all = automorphism_group(&e)?;
    let order_seven = all.iter().find(|a| aut_order(&e, a) == 7).cloned().expect("GL(3,2) has elements of order 7");
    let order_three = all
        .iter()
        .filter(|a| aut_order(&e, a) == 3)
        .find(|a| aut_subgroup(&e, &[order_seven.clone(), (*a).clone()]).is_ok_and(|(g, _)| g.order() == 168))
        .cloned()
        .expect("an order-3 element together with an order-7 element generates GL(3,2)");
    Ok(CubeAutomorphisms { e, all, order_seven, order_three })
}

/// `E = C2³` with `C = C7 ≤ Aut(E)`: the morphisms of `C` on `E`, and `E ⋊ C`.
pub fn example_one() -> Result<SplitExtension> {
    let cube = cube_automorphisms()?;
    split_extension(&cube.e, &[cube.order_seven])
}

/// `E ⋊ C` as a one-arm star with `f_1` the identity of `E`.
pub fn example_one_star() -> Result<StarData> {
    let ext = example_one()?;
    star_over_normal(&ext, 2)
}

fn star_over_normal(ext: &SplitExtension, p: u32) -> Result<StarData> {
    let g = &ext.product.group;
    let n = &ext.product.normal;
    let f = GroupHom::new(g, n.clone(), &ext.e, ext.e.all(), (0..n.order() as u32).collect())?;
    StarData::new(&ext.e, p, vec![(g.clone(), n.clone(), f)])
}

/// `E = C2³` with all of `Aut(E)` as generators, and with two p'-subgroups
/// `C_1 = C7`, `C_2 = C3` that generate `Aut(E)`.
#[derive(Clone, Debug)]
pub struct ExampleTwo {
    pub e: FiniteGroup,
    pub all: Vec<GroupHom>,
    pub c1: Vec<GroupHom>,
    pub c2: Vec<GroupHom>,
}

pub fn example_two() -> Result<ExampleTwo> {
    let cube = cube_automorphisms()?;
    let (_, c1) = aut_subgroup(&cube.e, std::slice::from_ref(&cube.order_seven))?;
    let (_, c2) = aut_subgroup(&cube.e, std::slice::from_ref(&cube.order_three))?;
    Ok(ExampleTwo { e: cube.e, all: cube.all, c1, c2 })
}

/// Two arms `E ⋊ C_1` and `E ⋊ C_2` over `S = E`, each `f_i` the identity of `E`.
pub fn example_two_star() -> Result<StarData> {
    let cube = cube_automorphisms()?;
    let mut arms = Vec::new();
    for a in [cube.order_seven, cube.order_three] {
        let ext = split_extension(&cube.e, &[a])?;
        let g = &ext.product.group;
        let n = &ext.product.normal;
        // f_i: k-th element of the normal copy ↦ k-th element of the base E
        let images: Vec<u32> = n
            .members()
            .iter()
            .map(|&x| ext.product.normal_embedding.iter().position(|&y| y == x).unwrap() as u32)
            .collect();
        let f = GroupHom::new(g, n.clone(), &cube.e, cube.e.all(), images)?;
        arms.push((g.clone(), n.clone(), f));
    }
    StarData::new(&cube.e, 2, arms)
}

/// A Sylow 2-subgroup `B` of `Aut(C2³)` (order 8), as automorphisms.
pub fn example_three() -> Result<(FiniteGroup, Vec<GroupHom>)> {
    let cube = cube_automorphisms()?;
    let (aut, all) = aut_subgroup(&cube.e, &cube.all)?;
    let b = sylow_subgroups(&aut, 2)?.swap_remove(0);
    let members = b.members().iter().map(|&k| all[k as usize].clone()).collect();
    Ok((cube.e, members))
}

/// `φ: ⟨e1⟩ → ⟨e2⟩` on `E = C2³`, for the first two generators of `E`.
pub fn example_four() -> Result<(FiniteGroup, GroupHom)> {
    let e = elementary_abelian(2, 3);
    let (e1, e2) = (e.generators()[0], e.generators()[1]);
    let f = e.closure(&[e1]);
    let f2 = e.closure(&[e2]);
    let phi = GroupHom::new(&e, f, &e, f2.clone(), f2.members().to_vec())?;
    Ok((e, phi))
}

/// Rose data carrying the single edge of [`example_four`].
pub fn example_four_rose() -> Result<RoseData> {
    let (e, phi) = example_four()?;
    RoseData::new(&e, 2, vec![phi])
}

/// `E *_F (F ⋊ D)` with `E = C2³`, `F = C2²` and `D = C3` permuting the
/// involutions of `F`.
#[derive(Clone, Debug)]
pub struct ExampleFive {
    pub star: StarData,
    /// `F` inside `E`.
    pub f: Subgroup,
    /// The automorphisms of `F` induced by `D`, on `F` inside `E`.
    pub d: Vec<GroupHom>,
}

pub fn example_five() -> Result<ExampleFive> {
    example_five_with(3, 2, true)
}

/// `E = C2^e_rank` and `F = C2^f_rank` spanned by the first generators of
/// `E`; `nontrivial` chooses an order-3 `D` (needs `f_rank = 2`) or `D = 1`.
pub fn example_five_with(e_rank: usize, f_rank: usize, nontrivial: bool) -> Result<ExampleFive> {
    let e = elementary_abelian(2, e_rank);
    let fbase = elementary_abelian(2, f_rank);
    let auts = automorphism_group(&fbase)?;
    let gens: Vec<GroupHom> =
        if nontrivial { auts.into_iter().filter(|a| aut_order(&fbase, a) == 3).take(1).collect() } else { vec![] };
    let ext = if gens.is_empty() {
        split_extension(&fbase, &[GroupHom::identity(&fbase.all())])?
    } else {
        split_extension(&fbase, &gens)?
    };
    let g = ext.product.group.clone();
    let n = ext.product.normal.clone();
    // F inside E, identified with the base F generator by generator
    let targets = &e.generators()[..f_rank];
    let f_in_e = e.closure(targets);
    let pairs: Vec<(u32, u32)> = ext.e.generators().iter().copied().zip(targets.iter().copied()).collect();
    let iso = crate::hom::hom_from_generators(&ext.e, &ext.e.all(), &e, &f_in_e, &pairs)?;
    let images: Vec<u32> = (0..n.order()).map(|k| iso.images()[k]).collect();
    let f = GroupHom::new(&g, n.clone(), &e, e.all(), images)?;
    let d = ext
        .automorphisms
        .iter()
        .map(|h| {
            let pairs: Vec<u32> = f_in_e
                .members()
                .iter()
                .map(|&x| {
                    let k = iso.images().iter().position(|&y| y == x).unwrap() as u32;
                    iso.images()[h.apply(k).unwrap() as usize]
                })
                .collect();
            GroupHom::new(&e, f_in_e.clone(), &e, f_in_e.clone(), pairs)
        })
        .collect::<Result<Vec<_>>>()?;
    let star = StarData::new(&e, 2, vec![(g, n, f)])?;
    Ok(ExampleFive { star, f: f_in_e, d })
}

/// The order-81 configuration at `p = 3`.
#[derive(Clone, Debug)]
pub struct ExampleSix {
    pub s: FiniteGroup,
    pub center: Subgroup,
    /// The complement `B` to the base of `C3 ≀ C3`.
    pub b: Subgroup,
    /// `E = Z × B`.
    pub e: Subgroup,
    /// `P = N_S(E)`.
    pub p: Subgroup,
    /// `G_1 = E ⋊ Aut(E)`.
    pub g1: SemidirectProduct,
    pub star: StarData,
}

pub fn example_six() -> Result<ExampleSix> {
    let s = catalog::wreath_3_3().with_prime(3);
    let shift = s
        .elements()
        .iter()
        .position(|x| (0..9u32).all(|k| x.apply(k) == (k + 3) % 9))
        .expect("block rotation lies in the wreath product") as u32;
    let b = s.closure(&[shift]);
    let center = s.center_of(&s.all());
    let e = s.closure(&[center.members()[1], shift]);
    let p = s.normalizer(&e);
    let e_group = s.subgroup_as_group(&e);
    let auts = automorphism_group(&e_group)?;
    let (aut, all) = aut_subgroup(&e_group, &auts)?;
    let g1 = semidirect_product(&e_group, &aut, &all)?;
    let g = &g1.group;
    let prescribed: Vec<(u32, u32)> =
        e.members().iter().enumerate().map(|(k, &x)| (g1.normal_embedding[k], x)).collect();
    let mut arm = None;
    for syl in sylow_subgroups(g, 3)? {
        if let Some(f) = find_isomorphism_between(g, &syl, &s, &p, &prescribed)? {
            let f = GroupHom::new(g, syl.clone(), &s, s.all(), f.images().to_vec())?;
            arm = Some((g.clone(), syl, f));
            break;
        }
    }
    let arm = arm.ok_or_else(|| Error::InternalContradiction("no Sylow 3-subgroup extends the inclusion of E".into()))?;
    let star = StarData::new(&s, 3, vec![arm])?;
    Ok(ExampleSix { s, center, b, e, p, g1, star })
}

fn subgroup_with(s: &FiniteGroup, order: usize, pick: impl Fn(&Subgroup) -> bool) -> Subgroup {
    all_subgroups(s).unwrap().into_iter().find(|h| h.order() == order && pick(h)).expect("subgroup exists")
}

fn iso(s: &FiniteGroup, a: &Subgroup, b: &Subgroup) -> GroupHom {
    find_isomorphism_between(s, a, s, b, &[]).unwrap().expect("isomorphic subgroups")
}

/// Named rose data with `|S| ≤ 16` and at most two edges.
pub fn rose_corpus() -> Vec<(String, RoseData)> {
    let mut out: Vec<(String, RoseData)> = Vec::new();
    let mut add = |name: &str, s: FiniteGroup, p: u32, maps: Vec<GroupHom>| {
        out.push((name.to_string(), RoseData::new(&s, p, maps).expect("valid rose data")));
    };
    let c2 = catalog::cyclic(2);
    add("C2 identity", c2.clone(), 2, vec![GroupHom::identity(&c2.all())]);

    let v4 = elementary_abelian(2, 2);
    let (a, b) = (v4.generators()[0], v4.generators()[1]);
    let (pa, pb) = (v4.closure(&[a]), v4.closure(&[b]));
    add("V4 line swap", v4.clone(), 2, vec![iso(&v4, &pa, &pb)]);
    let triality = automorphism_group(&v4).unwrap().into_iter().find(|x| aut_order(&v4, x) == 3).unwrap();
    add("V4 triality", v4.clone(), 2, vec![triality]);

    let (e, phi) = example_four().unwrap();
    add("C2^3 one line", e.clone(), 2, vec![phi]);
    let g = e.generators().to_vec();
    let l = |x: u32| e.closure(&[x]);
    add("C2^3 two lines", e.clone(), 2, vec![iso(&e, &l(g[0]), &l(g[1])), iso(&e, &l(g[1]), &l(g[2]))]);
    let plane = e.closure(&[g[0], g[1]]);
    let plane2 = e.closure(&[g[1], g[2]]);
    add("C2^3 plane", e.clone(), 2, vec![iso(&e, &plane, &plane2)]);

    let c4 = catalog::cyclic(4);
    let inv = GroupHom::new(&c4, c4.all(), &c4, c4.all(), (0..4).map(|x| c4.inv(x)).collect()).unwrap();
    add("C4 inversion", c4, 2, vec![inv]);

    let d8 = catalog::dihedral(4);
    let z = d8.center_of(&d8.all());
    let reflections: Vec<u32> =
        (0..8).filter(|&x| d8.element_order(x) == 2 && !z.contains(x)).collect();
    let r1 = d8.closure(&[reflections[0]]);
    let r2 = d8.closure(&[*reflections.iter().find(|&&x| d8.closure(&[reflections[0], x]).order() == 8).unwrap()]);
    add("D8 reflections", d8.clone(), 2, vec![iso(&d8, &r1, &r2)]);
    let fours: Vec<Subgroup> = all_subgroups(&d8)
        .unwrap()
        .into_iter()
        .filter(|h| h.order() == 4 && h.members().iter().all(|&x| d8.element_order(x) <= 2))
        .collect();
    add("D8 Klein fours", d8.clone(), 2, vec![iso(&d8, &fours[0], &fours[1]), iso(&d8, &r1, &z)]);

    let q8 = catalog::quaternion(8);
    let three = automorphism_group(&q8).unwrap().into_iter().find(|x| aut_order(&q8, x) == 3).unwrap();
    add("Q8 order three", q8, 2, vec![three]);

    let c42 = catalog::abelian(&[4, 2]);
    let cyc = subgroup_with(&c42, 4, |h| h.members().iter().any(|&x| c42.element_order(x) == 4));
    let other = subgroup_with(&c42, 4, |h| *h != cyc && h.members().iter().any(|&x| c42.element_order(x) == 4));
    add("C4xC2 cyclic swap", c42.clone(), 2, vec![iso(&c42, &cyc, &other)]);

    let c33 = elementary_abelian(3, 2);
    let invert = GroupHom::new(&c33, c33.all(), &c33, c33.all(), (0..9).map(|x| c33.inv(x)).collect()).unwrap();
    let (x, y) = (c33.generators()[0], c33.generators()[1]);
    add("C3^2 inversion and line", c33.clone(), 3, vec![invert, iso(&c33, &c33.closure(&[x]), &c33.closure(&[y]))]);

    let c24 = elementary_abelian(2, 4);
    let h = c24.generators().to_vec();
    add(
        "C2^4 planes",
        c24.clone(),
        2,
        vec![iso(&c24, &c24.closure(&[h[0], h[1]]), &c24.closure(&[h[2], h[3]])), iso(&c24, &c24.closure(&[h[0]]), &c24.closure(&[h[3]]))],
    );
    let d16 = catalog::dihedral(8);
    let z16 = d16.center_of(&d16.all());
    let refl = (0..16).find(|&x| d16.element_order(x) == 2 && !z16.contains(x)).unwrap();
    add("D16 reflection to centre", d16.clone(), 2, vec![iso(&d16, &d16.closure(&[refl]), &z16)]);
    out
}

/// Named star data; the order-81 configuration is not included.
pub fn star_corpus() -> Vec<(String, StarData)> {
    let mut out = Vec::new();
    out.push(("D8 identity".to_string(), crate::star::trivial_star(&catalog::dihedral(4), 2).unwrap()));
    for (name, g, p) in [
        ("S4 at 2", catalog::symmetric(4), 2),
        ("A4 at 2", catalog::alternating(4), 2),
        ("S3 at 3", catalog::symmetric(3), 3),
        ("C2^3:C7 at 2", catalog::affine_8_7(), 2),
        ("SL(2,3) at 2", catalog::special_linear(2, 3), 2),
    ] {
        let sy = crate::subgroups::sylow_p(&g, p).unwrap();
        let s = g.subgroup_as_group(&sy);
        let f = GroupHom::new(&g, sy.clone(), &s, s.all(), (0..sy.order() as u32).collect()).unwrap();
        out.push((name.to_string(), StarData::new(&s, p, vec![(g, sy, f)]).unwrap()));
    }
    out.push(("example one".into(), example_one_star().unwrap()));
    out.push(("example two".into(), example_two_star().unwrap()));
    out.push(("example five".into(), example_five().unwrap().star));
    out.push(("example five, D trivial".into(), example_five_with(2, 1, false).unwrap().star));
    out
}
