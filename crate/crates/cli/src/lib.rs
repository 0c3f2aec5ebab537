//! Spec files, checks and JSON reports on top of `fusionkit-core`.

pub mod checks;
pub mod examples;
pub mod model;
pub mod spec;

use serde_json::Value;

pub use checks::{all_passed, run_checks};
pub use examples::{builtin_example, builtin_examples, builtin_names, BuiltinExample};
pub use model::{Model, Options};
pub use spec::{parse_spec, serialize_spec, Record, SpecError, SpecFile};

/// Parses, loads and runs every check of a spec file.
pub fn run_spec(spec: &SpecFile, options: &Options) -> Result<Value, SpecError> {
    let model = Model::load(spec, options)?;
    Ok(run_checks(&model, options))
}

/// `spec` with its own checks replaced by a single one.
pub fn with_single_check(spec: &SpecFile, kind: &str, args: Vec<String>) -> SpecFile {
    let mut out = SpecFile::default();
    for (r, &line) in spec.records.iter().zip(&spec.lines) {
        if !matches!(r, Record::Check { .. }) {
            out.records.push(r.clone());
            out.lines.push(line);
        }
    }
    out.push(Record::Check { kind: kind.to_string(), args, expect: None });
    out
}
