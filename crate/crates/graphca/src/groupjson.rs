//! Group and connection-set JSON:
//! `{"order": m, "elements": ["..."], "table": [[...]]}` and
//! `{"S": [indices or names]}`. The `--group` flag also accepts builtin
//! specs (`cyclic:5`, `dihedral:8`, `quaternion8`, `symmetric:4`) so the
//! known construction families work without hand-written tables.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use graphca_core::algebra::group::{build_group, FiniteGroup, GroupSpec};
use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Deserialize)]
struct GroupJson {
    order: usize,
    elements: Vec<String>,
    table: Vec<Vec<usize>>,
}

#[derive(Debug, Deserialize)]
struct ConnSetJson {
    #[serde(rename = "S")]
    s: Vec<serde_json::Value>,
}

/// Loads a group from a JSON file, or builds a builtin from a spec string.
pub fn load_group(arg: &str) -> Result<FiniteGroup, CliError> {
    if let Some(spec) = builtin_spec(arg) {
        return build_group(&spec).map_err(|e| CliError::usage(format!("{arg}: {e}")));
    }
    let path = Path::new(arg);
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
    let parsed: GroupJson = serde_json::from_str(&text)
        .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
    if parsed.table.len() != parsed.order {
        return Err(CliError::usage(format!(
            "{}: table has {} rows for order {}",
            path.display(),
            parsed.table.len(),
            parsed.order
        )));
    }
    build_group(&GroupSpec::Explicit {
        names: parsed.elements,
        table: parsed.table,
    })
    .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}

fn builtin_spec(arg: &str) -> Option<GroupSpec> {
    if arg == "quaternion8" {
        return Some(GroupSpec::Quaternion8);
    }
    let (kind, param) = arg.split_once(':')?;
    let m: usize = param.parse().ok()?;
    match kind {
        "cyclic" => Some(GroupSpec::Cyclic(m)),
        "dihedral" => Some(GroupSpec::Dihedral(m)),
        "symmetric" => Some(GroupSpec::Symmetric(m)),
        _ => None,
    }
}

/// Loads a connection set, resolving element names through the group.
pub fn load_connection_set(
    path: &Path,
    grp: &FiniteGroup,
) -> Result<BTreeSet<usize>, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
    let parsed: ConnSetJson = serde_json::from_str(&text)
        .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
    let mut set = BTreeSet::new();
    for value in parsed.s {
        set.insert(resolve_element(&value, grp).map_err(|msg| {
            CliError::usage(format!("{}: {msg}", path.display()))
        })?);
    }
    Ok(set)
}

/// Resolves an element given as a JSON number, an index string, or a name.
pub fn resolve_element(value: &serde_json::Value, grp: &FiniteGroup) -> Result<usize, String> {
    match value {
        serde_json::Value::Number(n) => {
            let idx = n
                .as_u64()
                .ok_or_else(|| format!("bad element index {n}"))? as usize;
            if idx >= grp.order() {
                return Err(format!("element index {idx} outside the group"));
            }
            Ok(idx)
        }
        serde_json::Value::String(name) => resolve_name(name, grp),
        other => Err(format!("bad element {other}")),
    }
}

pub fn resolve_name(name: &str, grp: &FiniteGroup) -> Result<usize, String> {
    if let Some(idx) = grp.index_of(name) {
        return Ok(idx);
    }
    if let Ok(idx) = name.parse::<usize>() {
        if idx < grp.order() {
            return Ok(idx);
        }
    }
    Err(format!("unknown group element {name:?}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_specs_parse() {
        assert_eq!(load_group("cyclic:5").unwrap().order(), 5);
        assert_eq!(load_group("quaternion8").unwrap().order(), 8);
        assert_eq!(load_group("dihedral:8").unwrap().order(), 8);
        assert!(load_group("cyclic:x").is_err());
    }

    #[test]
    fn names_and_indices_resolve() {
        let grp = load_group("quaternion8").unwrap();
        assert_eq!(resolve_name("i", &grp).unwrap(), grp.index_of("i").unwrap());
        assert_eq!(resolve_name("3", &grp).unwrap(), 3);
        assert!(resolve_name("w", &grp).is_err());
    }
}
