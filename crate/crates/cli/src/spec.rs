//! The line-oriented specification format.
//!
//! ```text
//! group S 4 prime 2
//! gen S (0,1)
//! gen S (2,3)
//! subgroup A S (0,1)
//! subgroup B S (2,3)
//! morphism phi A B (0,1)->(2,3)
//! rose R S phi
//! fusion F rose R
//! check saturated F expect false
//! ```
//!
//! `#` starts a comment. Permutations are in disjoint-cycle notation on
//! 0-based points without spaces; `()` is the identity.

use std::fmt::Write as _;

use fusionkit_core::Perm;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: {message}")]
    Validation { line: usize, message: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubgroupSpec {
    All,
    Sylow(u32),
    Generated(Vec<Perm>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FusionSource {
    Inner(String),
    Full(String),
    /// Closure on a group under the listed morphisms.
    Closure(String, Vec<String>),
    /// `F_S(G)` for a group and a Sylow subgroup of it.
    Group(String, String),
    Rose(String),
    Star(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarArmSpec {
    pub group: String,
    pub sylow: String,
    pub embedding: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expect {
    Bool(bool),
    Int(u64),
}

impl std::fmt::Display for Expect {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Expect::Bool(b) => write!(f, "{b}"),
            Expect::Int(n) => write!(f, "{n}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Record {
    Group { name: String, degree: usize, prime: Option<u32> },
    Gen { group: String, perm: Perm },
    Subgroup { name: String, group: String, spec: SubgroupSpec },
    Morphism { name: String, domain: String, codomain: String, pairs: Vec<(Perm, Perm)> },
    Rose { name: String, group: String, edges: Vec<String> },
    Star { name: String, group: String, arms: Vec<StarArmSpec> },
    Fusion { name: String, source: FusionSource },
    Check { kind: String, args: Vec<String>, expect: Option<Expect> },
}

/// A parsed file: records with the line each came from.
#[derive(Clone, Debug, Default)]
pub struct SpecFile {
    pub records: Vec<Record>,
    pub lines: Vec<usize>,
}

impl PartialEq for SpecFile {
    fn eq(&self, other: &Self) -> bool {
        self.records == other.records
    }
}

impl SpecFile {
    pub fn push(&mut self, record: Record) {
        let line = self.lines.last().map_or(1, |l| l + 1);
        self.records.push(record);
        self.lines.push(line);
    }
}

struct Degrees(Vec<(String, usize)>);

impl Degrees {
    fn of(&self, name: &str) -> Option<usize> {
        self.0.iter().rev().find(|(n, _)| n == name).map(|&(_, d)| d)
    }
}

fn parse_error(line: usize, message: impl Into<String>) -> SpecError {
    SpecError::Parse { line, message: message.into() }
}

fn name_ok(s: &str) -> bool {
    !s.is_empty()
        && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'' || c == '-' || c == '.')
        && !s.starts_with('(')
}

/// Parses the text of a spec file. Permutation degrees come from the
/// `group` records, so subgroup and morphism permutations are read against
/// the degree of the group they belong to.
pub fn parse_spec(text: &str) -> Result<SpecFile, SpecError> {
    let mut spec = SpecFile::default();
    let mut degrees = Degrees(Vec::new());
    // subgroup name → group name, for reading morphism permutations
    let mut subgroup_groups: Vec<(String, String)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap().trim();
        if content.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let need = |n: usize| -> Result<(), SpecError> {
            if tokens.len() < n {
                Err(parse_error(line, format!("`{}` needs at least {} fields", tokens[0], n - 1)))
            } else {
                Ok(())
            }
        };
        let name_at = |k: usize| -> Result<String, SpecError> {
            let t = tokens[k];
            if name_ok(t) {
                Ok(t.to_string())
            } else {
                Err(parse_error(line, format!("`{t}` is not a valid name")))
            }
        };
        let perm = |degree: usize, t: &str| -> Result<Perm, SpecError> {
            Perm::parse_cycles(degree, t).map_err(|e| parse_error(line, format!("bad permutation `{t}`: {e}")))
        };
        let degree_of = |group: &str| -> Result<usize, SpecError> {
            degrees.of(group).ok_or_else(|| SpecError::Validation { line, message: format!("group `{group}` is not defined") })
        };
        let group_of_subgroup = |sub: &str| -> Result<String, SpecError> {
            subgroup_groups
                .iter()
                .rev()
                .find(|(n, _)| n == sub)
                .map(|(_, g)| g.clone())
                .ok_or_else(|| SpecError::Validation { line, message: format!("subgroup `{sub}` is not defined") })
        };
        let record = match tokens[0] {
            "group" => {
                need(3)?;
                let degree: usize =
                    tokens[2].parse().map_err(|_| parse_error(line, format!("bad degree `{}`", tokens[2])))?;
                let prime = match &tokens[3..] {
                    [] => None,
                    ["prime", p] => Some(p.parse().map_err(|_| parse_error(line, format!("bad prime `{p}`")))?),
                    _ => return Err(parse_error(line, "expected `group <name> <degree> [prime <p>]`")),
                };
                let name = name_at(1)?;
                degrees.0.push((name.clone(), degree));
                Record::Group { name, degree, prime }
            }
            "gen" => {
                need(3)?;
                if tokens.len() != 3 {
                    return Err(parse_error(line, "expected `gen <group> <permutation>`"));
                }
                let group = name_at(1)?;
                let p = perm(degree_of(&group)?, tokens[2])?;
                Record::Gen { group, perm: p }
            }
            "subgroup" => {
                need(4)?;
                let name = name_at(1)?;
                let group = name_at(2)?;
                let degree = degree_of(&group)?;
                let spec = match &tokens[3..] {
                    ["all"] => SubgroupSpec::All,
                    ["sylow", p] => SubgroupSpec::Sylow(p.parse().map_err(|_| parse_error(line, format!("bad prime `{p}`")))?),
                    rest => SubgroupSpec::Generated(rest.iter().map(|t| perm(degree, t)).collect::<Result<_, _>>()?),
                };
                subgroup_groups.push((name.clone(), group.clone()));
                Record::Subgroup { name, group, spec }
            }
            "morphism" => {
                need(4)?;
                let name = name_at(1)?;
                let domain = name_at(2)?;
                let codomain = name_at(3)?;
                let dd = degree_of(&group_of_subgroup(&domain)?)?;
                let cd = degree_of(&group_of_subgroup(&codomain)?)?;
                let pairs = tokens[4..]
                    .iter()
                    .map(|t| {
                        let (a, b) = t.split_once("->").ok_or_else(|| parse_error(line, format!("expected `src->dst`, got `{t}`")))?;
                        Ok((perm(dd, a)?, perm(cd, b)?))
                    })
                    .collect::<Result<_, SpecError>>()?;
                Record::Morphism { name, domain, codomain, pairs }
            }
            "rose" => {
                need(3)?;
                let edges = (3..tokens.len()).map(name_at).collect::<Result<_, _>>()?;
                Record::Rose { name: name_at(1)?, group: name_at(2)?, edges }
            }
            "star" => {
                need(3)?;
                let rest = &tokens[3..];
                if !rest.len().is_multiple_of(4) || rest.chunks(4).any(|c| c[0] != "arm") {
                    return Err(parse_error(line, "expected `star <name> <group> (arm <G> <sylow> <embedding>)...`"));
                }
                let arms = rest
                    .chunks(4)
                    .enumerate()
                    .map(|(k, _)| {
                        let base = 3 + 4 * k;
                        Ok(StarArmSpec { group: name_at(base + 1)?, sylow: name_at(base + 2)?, embedding: name_at(base + 3)? })
                    })
                    .collect::<Result<_, SpecError>>()?;
                Record::Star { name: name_at(1)?, group: name_at(2)?, arms }
            }
            "fusion" => {
                need(4)?;
                let name = name_at(1)?;
                let arg = name_at(3)?;
                let source = match (tokens[2], tokens.len()) {
                    ("inner", 4) => FusionSource::Inner(arg),
                    ("full", 4) => FusionSource::Full(arg),
                    ("rose", 4) => FusionSource::Rose(arg),
                    ("star", 4) => FusionSource::Star(arg),
                    ("group", 5) => FusionSource::Group(arg, name_at(4)?),
                    ("closure", _) => {
                        FusionSource::Closure(arg, (4..tokens.len()).map(name_at).collect::<Result<_, _>>()?)
                    }
                    (kind, _) => return Err(parse_error(line, format!("unknown fusion source `{kind}` or wrong arity"))),
                };
                Record::Fusion { name, source }
            }
            "check" => {
                need(2)?;
                let mut args: Vec<String> = tokens[2..].iter().map(|t| t.to_string()).collect();
                let mut expect = None;
                if args.len() >= 2 && args[args.len() - 2] == "expect" {
                    let v = args.pop().unwrap();
                    args.pop();
                    expect = Some(match v.as_str() {
                        "true" => Expect::Bool(true),
                        "false" => Expect::Bool(false),
                        n => Expect::Int(n.parse().map_err(|_| parse_error(line, format!("bad expected value `{n}`")))?),
                    });
                }
                Record::Check { kind: tokens[1].to_string(), args, expect }
            }
            other => return Err(parse_error(line, format!("unknown keyword `{other}`"))),
        };
        spec.records.push(record);
        spec.lines.push(line);
    }
    Ok(spec)
}

/// Writes `spec` back in the input format; `parse_spec` reads it back to an
/// equal value.
pub fn serialize_spec(spec: &SpecFile) -> String {
    let mut out = String::new();
    for r in &spec.records {
        match r {
            Record::Group { name, degree, prime } => {
                write!(out, "group {name} {degree}").unwrap();
                if let Some(p) = prime {
                    write!(out, " prime {p}").unwrap();
                }
            }
            Record::Gen { group, perm } => write!(out, "gen {group} {}", perm.to_cycle_string()).unwrap(),
            Record::Subgroup { name, group, spec } => {
                write!(out, "subgroup {name} {group}").unwrap();
                match spec {
                    SubgroupSpec::All => out.push_str(" all"),
                    SubgroupSpec::Sylow(p) => write!(out, " sylow {p}").unwrap(),
                    SubgroupSpec::Generated(gens) if gens.is_empty() => out.push_str(" ()"),
                    SubgroupSpec::Generated(gens) => {
                        for g in gens {
                            write!(out, " {}", g.to_cycle_string()).unwrap();
                        }
                    }
                }
            }
            Record::Morphism { name, domain, codomain, pairs } => {
                write!(out, "morphism {name} {domain} {codomain}").unwrap();
                for (a, b) in pairs {
                    write!(out, " {}->{}", a.to_cycle_string(), b.to_cycle_string()).unwrap();
                }
            }
            Record::Rose { name, group, edges } => {
                write!(out, "rose {name} {group}").unwrap();
                for e in edges {
                    write!(out, " {e}").unwrap();
                }
            }
            Record::Star { name, group, arms } => {
                write!(out, "star {name} {group}").unwrap();
                for a in arms {
                    write!(out, " arm {} {} {}", a.group, a.sylow, a.embedding).unwrap();
                }
            }
            Record::Fusion { name, source } => {
                write!(out, "fusion {name} ").unwrap();
                match source {
                    FusionSource::Inner(g) => write!(out, "inner {g}").unwrap(),
                    FusionSource::Full(g) => write!(out, "full {g}").unwrap(),
                    FusionSource::Rose(r) => write!(out, "rose {r}").unwrap(),
                    FusionSource::Star(s) => write!(out, "star {s}").unwrap(),
                    FusionSource::Group(g, s) => write!(out, "group {g} {s}").unwrap(),
                    FusionSource::Closure(g, ms) => {
                        write!(out, "closure {g}").unwrap();
                        for m in ms {
                            write!(out, " {m}").unwrap();
                        }
                    }
                }
            }
            Record::Check { kind, args, expect } => {
                write!(out, "check {kind}").unwrap();
                for a in args {
                    write!(out, " {a}").unwrap();
                }
                if let Some(e) = expect {
                    write!(out, " expect {e}").unwrap();
                }
            }
        }
        out.push('\n');
    }
    out
}
