use fusionkit::spec::{Expect, FusionSource, StarArmSpec, SubgroupSpec};
use fusionkit::{parse_spec, serialize_spec, Record, SpecFile};
use fusionkit_core::Perm;
use proptest::prelude::*;

fn name() -> impl Strategy<Value = String> {
    "[A-Za-z][A-Za-z0-9_']{0,4}".prop_filter("reserved", |s| s != "expect")
}

fn perm(degree: usize) -> impl Strategy<Value = Perm> {
    Just((0..degree as u32).collect::<Vec<_>>()).prop_shuffle().prop_map(|v| Perm::from_images(v).unwrap())
}

fn expect() -> impl Strategy<Value = Option<Expect>> {
    prop_oneof![Just(None), any::<bool>().prop_map(|b| Some(Expect::Bool(b))), any::<u32>().prop_map(|n| Some(Expect::Int(n as u64)))]
}

/// Groups, then generators and subgroups on them, then morphisms between the
/// subgroups, then free-form records that only name things.
fn spec_file() -> impl Strategy<Value = SpecFile> {
    prop::collection::vec((name(), 1usize..7, prop::option::of(prop::sample::select(vec![2u32, 3, 5]))), 1..3)
        .prop_flat_map(|groups| {
            let degrees: Vec<usize> = groups.iter().map(|g| g.1).collect();
            let n = groups.len();
            let gens = prop::collection::vec(
                (0..n).prop_flat_map({
                    let d = degrees.clone();
                    move |g| (Just(g), perm(d[g]))
                }),
                0..4,
            );
            let subgroups = prop::collection::vec(
                (name(), 0..n).prop_flat_map({
                    let d = degrees.clone();
                    move |(s, g)| {
                        let spec = prop_oneof![
                            Just(SubgroupSpec::All),
                            prop::sample::select(vec![2u32, 3]).prop_map(SubgroupSpec::Sylow),
                            prop::collection::vec(perm(d[g]), 1..3).prop_map(SubgroupSpec::Generated),
                        ];
                        (Just(s), Just(g), spec)
                    }
                }),
                1..4,
            );
            (Just(groups), gens, subgroups)
        })
        .prop_flat_map(|(groups, gens, subgroups)| {
            let degrees: Vec<usize> = subgroups.iter().map(|s| groups[s.1].1).collect();
            let m = subgroups.len();
            let morphisms = prop::collection::vec(
                (name(), 0..m, 0..m).prop_flat_map({
                    let d = degrees.clone();
                    move |(nm, a, b)| (Just(nm), Just(a), Just(b), prop::collection::vec((perm(d[a]), perm(d[b])), 0..3))
                }),
                0..3,
            );
            let fusion = prop_oneof![
                name().prop_map(FusionSource::Inner),
                name().prop_map(FusionSource::Full),
                name().prop_map(FusionSource::Rose),
                name().prop_map(FusionSource::Star),
                (name(), name()).prop_map(|(a, b)| FusionSource::Group(a, b)),
                (name(), prop::collection::vec(name(), 0..3)).prop_map(|(a, b)| FusionSource::Closure(a, b)),
            ];
            let tail = prop::collection::vec(
                prop_oneof![
                    (name(), name(), prop::collection::vec(name(), 0..3))
                        .prop_map(|(name, group, edges)| Record::Rose { name, group, edges }),
                    (name(), name(), prop::collection::vec((name(), name(), name()), 0..3)).prop_map(
                        |(name, group, arms)| Record::Star {
                            name,
                            group,
                            arms: arms.into_iter().map(|(group, sylow, embedding)| StarArmSpec { group, sylow, embedding }).collect(),
                        }
                    ),
                    (name(), fusion).prop_map(|(name, source)| Record::Fusion { name, source }),
                    (name(), prop::collection::vec(name(), 0..4), expect())
                        .prop_map(|(kind, args, expect)| Record::Check { kind, args, expect }),
                ],
                0..5,
            );
            (Just(groups), Just(gens), Just(subgroups), morphisms, tail)
        })
        .prop_map(|(groups, gens, subgroups, morphisms, tail)| {
            let mut spec = SpecFile::default();
            for (name, degree, prime) in &groups {
                spec.push(Record::Group { name: name.clone(), degree: *degree, prime: *prime });
            }
            for (g, p) in gens {
                spec.push(Record::Gen { group: groups[g].0.clone(), perm: p });
            }
            for (name, g, s) in &subgroups {
                spec.push(Record::Subgroup { name: name.clone(), group: groups[*g].0.clone(), spec: s.clone() });
            }
            for (name, a, b, pairs) in morphisms {
                spec.push(Record::Morphism {
                    name,
                    domain: subgroups[a].0.clone(),
                    codomain: subgroups[b].0.clone(),
                    pairs,
                });
            }
            for r in tail {
                spec.push(r);
            }
            spec
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn serialize_then_parse_is_identity(spec in spec_file()) {
        let text = serialize_spec(&spec);
        let parsed = parse_spec(&text).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
        prop_assert_eq!(&parsed, &spec);
        prop_assert_eq!(serialize_spec(&parsed), text);
    }
}

#[test]
fn builtin_examples_round_trip() {
    for example in fusionkit::builtin_examples() {
        let spec = parse_spec(&example.text).unwrap();
        assert_eq!(parse_spec(&serialize_spec(&spec)).unwrap(), spec, "{}", example.name);
    }
}
