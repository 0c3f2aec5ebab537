use super::*;
use crate::catalog::{self, dihedral, elementary_abelian, symmetric};
use crate::hom::{automorphism_group, injective_homs};
use crate::subgroups::sylow_p;

fn klein_fours(s: &FiniteGroup) -> Vec<Subgroup> {
    all_subgroups(s)
        .unwrap()
        .into_iter()
        .filter(|h| h.order() == 4 && h.members().iter().all(|&x| s.element_order(x) <= 2))
        .collect()
}

#[test]
fn inner_fusion_on_c2_has_only_identities() {
    let s = catalog::cyclic(2);
    let f = inner_fusion(&s, 2).unwrap();
    for p in f.subgroups() {
        for q in f.subgroups() {
            let homs = f.hom_set(p, q).unwrap();
            let expected = usize::from(p.is_subset_of(q));
            assert_eq!(homs.len(), expected);
        }
    }
}

#[test]
fn inner_fusion_abelian_is_inclusions() {
    let s = elementary_abelian(2, 3);
    let f = inner_fusion(&s, 2).unwrap();
    for p in f.subgroups() {
        for q in f.subgroups() {
            let homs = f.hom_set(p, q).unwrap();
            assert_eq!(homs.len(), usize::from(p.is_subset_of(q)));
            for h in homs {
                assert_eq!(h.images(), p.members());
            }
        }
    }
}

#[test]
fn inner_fusion_of_d8() {
    let s = dihedral(4);
    let f = inner_fusion(&s, 2).unwrap();
    let z = s.center_of(&s.all());
    assert_eq!(f.aut_f_order(&z).unwrap(), 1);
    assert_eq!(f.aut_f_order(&s.all()).unwrap(), 4);
}

#[test]
fn full_fusion_small() {
    let c2 = catalog::cyclic(2);
    let f = full_fusion(&c2, 2).unwrap();
    assert_eq!(f.hom_set(&c2.all(), &c2.all()).unwrap().len(), 1);
    let v4 = elementary_abelian(2, 2);
    let f = full_fusion(&v4, 2).unwrap();
    assert_eq!(f.aut_f_order(&v4.all()).unwrap(), 6);
    let c4 = catalog::cyclic(4);
    let f = full_fusion(&c4, 2).unwrap();
    let c2 = f.subgroups()[1].clone();
    assert_eq!(c2.order(), 2);
    let homs = f.hom_set(&c2, &c4.all()).unwrap();
    assert_eq!(homs.len(), 1);
    assert_eq!(homs[0].images(), c2.members());
}

#[test]
fn full_fusion_matches_injective_hom_count() {
    for s in [catalog::dihedral(4), catalog::quaternion(8), catalog::abelian(&[4, 2])] {
        let f = full_fusion(&s, 2).unwrap();
        for p in f.subgroups() {
            for q in f.subgroups() {
                assert_eq!(f.hom_set_size(p, q).unwrap(), injective_homs(&s, p, &s, q).unwrap().len());
            }
        }
    }
}

#[test]
fn example_four_census() {
    let e = elementary_abelian(2, 3);
    let lines: Vec<Subgroup> = all_subgroups(&e).unwrap().into_iter().filter(|h| h.order() == 2).collect();
    let (a, b) = (&lines[0], &lines[1]);
    let phi = GroupHom::new(&e, a.clone(), &e, b.clone(), b.members().to_vec()).unwrap();
    let f = fusion_closure(&e, 2, std::slice::from_ref(&phi)).unwrap();
    let phi_inv = phi.inverse(&e).unwrap();
    for p in f.subgroups() {
        assert_eq!(f.aut_f_order(p).unwrap(), 1);
        for q in f.subgroups() {
            for h in f.hom_set(p, q).unwrap() {
                let inclusion = h.images() == p.members();
                let via_phi = p == a && h.images() == phi.images();
                let via_inv = p == b && h.images() == phi_inv.images();
                assert!(inclusion || via_phi || via_inv);
            }
        }
    }
    assert!(!f.is_saturated().saturated);
    assert!(!f.is_saturated_abelian().unwrap());
}

#[test]
fn full_automorphism_closure_of_c2_cubed() {
    let e = elementary_abelian(2, 3);
    let auts = automorphism_group(&e).unwrap();
    let f = fusion_closure(&e, 2, &auts).unwrap();
    assert_eq!(f.aut_f_order(&e.all()).unwrap(), 168);
    let simplified = f.is_saturated_simplified();
    assert!(!simplified.saturated);
    assert!(simplified.failed_axioms().contains(&Axiom::ThreePrime));
    assert!(!f.is_saturated().saturated);
}

#[test]
fn group_fusion_of_s4() {
    let g = symmetric(4);
    let s = sylow_p(&g, 2).unwrap();
    let f = fusion_of_group(&g, &s, 2).unwrap();
    let fours = klein_fours(f.s());
    assert_eq!(fours.len(), 2);
    for v in &fours {
        assert!(f.is_fully_normalized(v).unwrap());
        assert!(f.is_fully_centralized(v).unwrap());
    }
    let orders: Vec<usize> = fours.iter().map(|v| f.aut_f_order(v).unwrap()).collect();
    assert!(orders.contains(&6), "one Klein four is normal in S4: {orders:?}");
    assert!(f.is_saturated().saturated);
    assert!(f.is_saturated_simplified().saturated);
}

#[test]
fn group_fusion_of_a_p_group_is_inner() {
    let s = dihedral(4);
    let f = fusion_of_group(&s, &s.all(), 2).unwrap();
    let g = inner_fusion(&s, 2).unwrap();
    assert!(fusion_equal(&f, &g).unwrap());
}

#[test]
fn frobenius_group_fusion() {
    let g = catalog::affine_8_7();
    let e = sylow_p(&g, 2).unwrap();
    let f = fusion_of_group(&g, &e, 2).unwrap();
    assert_eq!(f.aut_f_order(&f.s().all()).unwrap(), 7);
    assert!(f.is_saturated().saturated);
    assert!(f.is_saturated_abelian().unwrap());
}

#[test]
fn nf_examples() {
    let s = elementary_abelian(2, 2);
    let f = full_fusion(&s, 2).unwrap();
    for p in f.subgroups() {
        for h in f.aut_f(p).unwrap() {
            assert_eq!(f.compute_nf(&h).unwrap(), s.all());
        }
    }
    let d8 = dihedral(4);
    let f = inner_fusion(&d8, 2).unwrap();
    for p in f.subgroups() {
        let id = GroupHom::identity(p);
        assert_eq!(f.compute_nf(&id).unwrap(), d8.normalizer(p));
    }
}

#[test]
fn nf_for_klein_swap_in_s4() {
    let g = symmetric(4);
    let sy = sylow_p(&g, 2).unwrap();
    let f = fusion_of_group(&g, &sy, 2).unwrap();
    let s = f.s().clone();
    for v in klein_fours(&s) {
        if f.aut_f_order(&v).unwrap() != 6 {
            continue;
        }
        // swap the two generators that are not central in S
        let z = s.center_of(&s.all());
        let gens: Vec<u32> = v.members().iter().copied().filter(|&x| !z.contains(x)).collect();
        assert_eq!(gens.len(), 2);
        let swap = f
            .aut_f(&v)
            .unwrap()
            .into_iter()
            .find(|h| h.apply(gens[0]) == Some(gens[1]) && h.apply(gens[1]) == Some(gens[0]))
            .unwrap();
        assert_eq!(f.compute_nf(&swap).unwrap(), s.all());
        // moving the central involution shrinks N_f to V itself
        let moving = f.aut_f(&v).unwrap().into_iter().find(|h| h.apply(z.members()[1]) != Some(z.members()[1])).unwrap();
        assert_eq!(f.compute_nf(&moving).unwrap(), v);
    }
}

#[test]
fn witnesses_evaluate_to_their_morphisms() {
    let e = elementary_abelian(2, 3);
    let lines: Vec<Subgroup> = all_subgroups(&e).unwrap().into_iter().filter(|h| h.order() == 2).collect();
    let phi = GroupHom::new(&e, lines[0].clone(), &e, lines[3].clone(), lines[3].members().to_vec()).unwrap();
    let d8 = dihedral(4);
    let z = d8.center_of(&d8.all());
    let pts: Vec<u32> = d8.all().members().iter().copied().filter(|&x| d8.element_order(x) == 2 && !z.contains(x)).collect();
    let a = d8.closure(&[pts[0]]);
    let b = d8.closure(&[pts[pts.len() - 1]]);
    let psi = GroupHom::new(&d8, a.clone(), &d8, b.clone(), b.members().to_vec()).unwrap();
    for (s, gens) in [(e, vec![phi]), (d8, vec![psi])] {
        let f = fusion_closure(&s, 2, &gens).unwrap();
        for h in f.all_isomorphisms() {
            let fact = f.factorization(&h).unwrap();
            let value = fact.evaluate(&f).unwrap();
            assert_eq!(value.images(), h.images());
        }
    }
}

#[test]
fn closure_is_idempotent() {
    let d8 = dihedral(4);
    let subs = all_subgroups(&d8).unwrap();
    let twos: Vec<&Subgroup> = subs.iter().filter(|h| h.order() == 2).collect();
    let phi = GroupHom::new(&d8, twos[0].clone(), &d8, twos[1].clone(), twos[1].members().to_vec()).unwrap();
    let f = fusion_closure(&d8, 2, &[phi]).unwrap();
    let again = fusion_closure(&d8, 2, &f.all_isomorphisms()).unwrap();
    assert!(fusion_equal(&f, &again).unwrap());
    let inner = inner_fusion(&d8, 2).unwrap();
    assert!(fusion_subsystem(&inner, &f).unwrap());
    assert!(!fusion_subsystem(&f, &inner).unwrap());
}

#[test]
fn group_witness_is_conjugator() {
    let g = symmetric(4);
    let s = sylow_p(&g, 2).unwrap();
    let f = fusion_of_group(&g, &s, 2).unwrap();
    let amb = f.ambient_group().unwrap().clone();
    for h in f.all_isomorphisms() {
        let Some(Witness::Conjugator(c)) = f.morphism(&h).unwrap().witness else { panic!() };
        for (k, &u) in h.domain().members().iter().enumerate() {
            let gu = amb.conj(f.ambient_index(u).unwrap(), c);
            assert_eq!(gu, f.ambient_index(h.images()[k]).unwrap());
        }
    }
}

#[test]
fn ambient_mismatch() {
    let a = inner_fusion(&dihedral(4), 2).unwrap();
    let b = inner_fusion(&catalog::quaternion(8), 2).unwrap();
    assert!(matches!(fusion_equal(&a, &b), Err(Error::AmbientMismatch)));
}

#[test]
fn rejects_non_p_groups() {
    assert!(matches!(inner_fusion(&symmetric(3), 2), Err(Error::NotAPGroup { .. })));
    let g = symmetric(3);
    assert!(matches!(fusion_of_group(&g, &g.all(), 3), Err(Error::NotAPGroup { .. })));
}

#[test]
fn out_f_of_full_closure() {
    let e = elementary_abelian(2, 3);
    let auts = automorphism_group(&e).unwrap();
    let f = fusion_closure(&e, 2, &auts).unwrap();
    assert_eq!(f.out_f(&e.all()).unwrap().order(), 168);
    let d8 = dihedral(4);
    let inner = inner_fusion(&d8, 2).unwrap();
    assert_eq!(inner.out_f(&d8.all()).unwrap().order(), 1);
}
