//! Instance-file parsing: JSON in, fully validated core structures out.
//!
//! Name resolution failures carry a JSON pointer to the offending entry.
//! Unknown keys are tolerated with a warning on stderr so files can carry
//! annotations; structural and axiom failures are hard errors.

use globact_core::{
    Amalgam, Amalgamation, FiniteGroup, FinitePartialAlgebra, FiniteSemigroup, PartialAction,
    Relation, RelationalSystem, TypeSignature,
};
use serde::Deserialize;
use serde_json::Value;
use std::collections::BTreeMap;

#[derive(Debug)]
pub struct InputError {
    pub pointer: String,
    pub message: String,
    axiom_failure: bool,
}

impl InputError {
    fn new(pointer: impl Into<String>, message: impl Into<String>) -> Self {
        InputError {
            pointer: pointer.into(),
            message: message.into(),
            axiom_failure: false,
        }
    }

    fn from_core(pointer: impl Into<String>, err: globact_core::Error) -> Self {
        InputError {
            pointer: pointer.into(),
            message: err.to_string(),
            axiom_failure: matches!(err, globact_core::Error::Invalid(_)),
        }
    }

    /// Whether this is an axiom violation of a well-formed table (a
    /// verdict for `validate`) rather than a structural problem.
    pub fn is_axiom_failure(&self) -> bool {
        self.axiom_failure
    }
}

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.pointer, self.message)
    }
}

#[derive(Debug, Deserialize)]
struct InstanceJson {
    group: Option<GroupJson>,
    carrier: Option<Vec<String>>,
    semigroup: Option<TableJson>,
    algebra: Option<AlgebraJson>,
    theta: Option<BTreeMap<String, BTreeMap<String, String>>>,
    relations: Option<Vec<RelationJson>>,
    amalgam: Option<AmalgamJson>,
    #[serde(flatten)]
    unknown: BTreeMap<String, Value>,
}

#[derive(Debug, Deserialize)]
struct GroupJson {
    elements: Vec<String>,
    table: Vec<Vec<String>>,
    #[serde(flatten)]
    unknown: BTreeMap<String, Value>,
}

#[derive(Debug, Deserialize)]
struct TableJson {
    #[serde(default)]
    kind: Option<String>,
    elements: Vec<String>,
    table: Vec<Vec<String>>,
    #[serde(flatten)]
    unknown: BTreeMap<String, Value>,
}

#[derive(Debug, Deserialize)]
struct AlgebraJson {
    elements: Vec<String>,
    signature: Vec<usize>,
    ops: Vec<OpJson>,
    #[serde(flatten)]
    unknown: BTreeMap<String, Value>,
}

#[derive(Debug, Deserialize)]
struct OpJson {
    table: Value,
    #[serde(default)]
    undefined: Option<String>,
}

#[derive(Debug, Deserialize)]
struct RelationJson {
    arity: usize,
    tuples: Vec<Vec<String>>,
}

#[derive(Debug, Deserialize)]
struct AmalgamJson {
    algebras: Vec<TableJson>,
    #[serde(default)]
    labels: Option<Vec<String>>,
    amalgamations: Vec<AmalgamationJson>,
}

#[derive(Debug, Deserialize)]
struct AmalgamationJson {
    i: usize,
    j: usize,
    elements: Vec<String>,
    map: BTreeMap<String, String>,
}

/// The carrier structure of an instance: exactly one per file.
#[derive(Debug, Clone)]
pub enum Carrier {
    Set(Vec<String>),
    Semigroup(FiniteSemigroup),
    Algebra(FinitePartialAlgebra),
}

impl Carrier {
    pub fn names(&self) -> Vec<String> {
        match self {
            Carrier::Set(names) => names.clone(),
            Carrier::Semigroup(sg) => sg.names().to_vec(),
            Carrier::Algebra(alg) => alg.names().to_vec(),
        }
    }
}

/// A parsed and name-resolved instance file. Axiom validation of the
/// action happens in [`Instance::action`], so `validate` can report
/// violations instead of refusing to parse.
#[derive(Debug)]
pub struct Instance {
    pub group: Option<FiniteGroup>,
    pub carrier: Option<Carrier>,
    /// Raw action tables, resolved to indices but not yet axiom-checked.
    pub theta: Option<Vec<Vec<Option<usize>>>>,
    pub relations: Option<RelationalSystem>,
    pub amalgam: Option<Amalgam>,
    pub warnings: Vec<String>,
}

pub fn parse_instance(text: &str) -> Result<Instance, InputError> {
    if text.trim().is_empty() {
        return Err(InputError::new("", "empty input"));
    }
    let raw: InstanceJson = serde_json::from_str(text)
        .map_err(|e| InputError::new("", format!("invalid JSON: {e}")))?;
    let mut warnings = Vec::new();
    for key in raw.unknown.keys() {
        warnings.push(format!("unknown key /{key} ignored"));
    }

    let group = match &raw.group {
        None => None,
        Some(g) => {
            for key in g.unknown.keys() {
                warnings.push(format!("unknown key /group/{key} ignored"));
            }
            Some(resolve_group(g)?)
        }
    };

    let mut carriers = Vec::new();
    if let Some(names) = &raw.carrier {
        ensure_names("/carrier", names)?;
        carriers.push(Carrier::Set(names.clone()));
    }
    if let Some(sg) = &raw.semigroup {
        for key in sg.unknown.keys() {
            warnings.push(format!("unknown key /semigroup/{key} ignored"));
        }
        if let Some(kind) = &sg.kind {
            if kind != "semigroup" {
                return Err(InputError::new("/semigroup/kind", "expected \"semigroup\""));
            }
        }
        ensure_names("/semigroup/elements", &sg.elements)?;
        let table = resolve_table("/semigroup/table", &sg.elements, &sg.table)?;
        let semigroup = FiniteSemigroup::new(sg.elements.clone(), table)
            .map_err(|e| InputError::from_core("/semigroup", e))?;
        carriers.push(Carrier::Semigroup(semigroup));
    }
    if let Some(alg) = &raw.algebra {
        for key in alg.unknown.keys() {
            warnings.push(format!("unknown key /algebra/{key} ignored"));
        }
        ensure_names("/algebra/elements", &alg.elements)?;
        carriers.push(Carrier::Algebra(resolve_algebra(alg)?));
    }
    if carriers.len() > 1 {
        return Err(InputError::new(
            "",
            "exactly one carrier structure (carrier, semigroup, or algebra) per file",
        ));
    }
    let carrier = carriers.pop();

    let theta = match &raw.theta {
        None => None,
        Some(theta_json) => {
            let group = group
                .as_ref()
                .ok_or_else(|| InputError::new("/theta", "theta requires a group"))?;
            let carrier = carrier
                .as_ref()
                .ok_or_else(|| InputError::new("/theta", "theta requires a carrier structure"))?;
            Some(resolve_theta(group, &carrier.names(), theta_json)?)
        }
    };

    let relations = match &raw.relations {
        None => None,
        Some(rels) => {
            let carrier = carrier.as_ref().ok_or_else(|| {
                InputError::new("/relations", "relations require a carrier structure")
            })?;
            Some(resolve_relations(&carrier.names(), rels)?)
        }
    };

    let amalgam = match &raw.amalgam {
        None => None,
        Some(am) => Some(resolve_amalgam(am)?),
    };

    Ok(Instance {
        group,
        carrier,
        theta,
        relations,
        amalgam,
        warnings,
    })
}

fn ensure_names(pointer: &str, names: &[String]) -> Result<(), InputError> {
    if names.is_empty() {
        return Err(InputError::new(pointer, "must be nonempty"));
    }
    let mut seen = std::collections::BTreeSet::new();
    for (i, name) in names.iter().enumerate() {
        if name.is_empty()
            || name
                .chars()
                .any(|c| "[](),".contains(c) || c.is_whitespace())
        {
            return Err(InputError::new(
                format!("{pointer}/{i}"),
                format!("name {name:?} contains reserved characters"),
            ));
        }
        if !seen.insert(name) {
            return Err(InputError::new(
                format!("{pointer}/{i}"),
                format!("duplicate name {name:?}"),
            ));
        }
    }
    Ok(())
}

fn index_of(pointer: &str, names: &[String], name: &str) -> Result<usize, InputError> {
    names
        .iter()
        .position(|n| n == name)
        .ok_or_else(|| InputError::new(pointer, format!("unknown element {name:?}")))
}

fn resolve_table(
    pointer: &str,
    names: &[String],
    rows: &[Vec<String>],
) -> Result<Vec<Vec<usize>>, InputError> {
    if rows.len() != names.len() {
        return Err(InputError::new(
            pointer,
            format!("expected {} rows, found {}", names.len(), rows.len()),
        ));
    }
    rows.iter()
        .enumerate()
        .map(|(r, row)| {
            if row.len() != names.len() {
                return Err(InputError::new(
                    format!("{pointer}/{r}"),
                    format!("expected {} entries, found {}", names.len(), row.len()),
                ));
            }
            row.iter()
                .enumerate()
                .map(|(c, entry)| index_of(&format!("{pointer}/{r}/{c}"), names, entry))
                .collect()
        })
        .collect()
}

fn resolve_group(g: &GroupJson) -> Result<FiniteGroup, InputError> {
    ensure_names("/group/elements", &g.elements)?;
    let table = resolve_table("/group/table", &g.elements, &g.table)?;
    FiniteGroup::new(g.elements.clone(), table).map_err(|e| InputError::from_core("/group", e))
}

fn resolve_algebra(alg: &AlgebraJson) -> Result<FinitePartialAlgebra, InputError> {
    if alg.ops.len() != alg.signature.len() {
        return Err(InputError::new(
            "/algebra/ops",
            format!(
                "expected {} operation tables for the signature, found {}",
                alg.signature.len(),
                alg.ops.len()
            ),
        ));
    }
    let names = &alg.elements;
    let mut tables = Vec::new();
    for (k, op) in alg.ops.iter().enumerate() {
        let arity = alg.signature[k];
        let sentinel = op.undefined.clone().unwrap_or_else(|| "-".to_string());
        let pointer = format!("/algebra/ops/{k}/table");
        let mut flat = Vec::with_capacity(names.len().pow(arity as u32));
        flatten_nested(&pointer, &op.table, arity, names, &sentinel, &mut flat)?;
        if flat.len() != names.len().pow(arity as u32) {
            return Err(InputError::new(
                pointer,
                format!(
                    "expected {} cells, found {}",
                    names.len().pow(arity as u32),
                    flat.len()
                ),
            ));
        }
        tables.push(flat);
    }
    FinitePartialAlgebra::new(
        names.clone(),
        TypeSignature::new(alg.signature.clone()),
        tables,
    )
    .map_err(|e| InputError::new("/algebra", e.to_string()))
}

/// Operation tables nest to depth = arity: a string at depth 0, an array
/// of rows otherwise, row-major.
fn flatten_nested(
    pointer: &str,
    value: &Value,
    depth: usize,
    names: &[String],
    sentinel: &str,
    out: &mut Vec<Option<usize>>,
) -> Result<(), InputError> {
    if depth == 0 {
        let entry = value.as_str().ok_or_else(|| {
            InputError::new(pointer, "expected an element name or the undefined marker")
        })?;
        if entry == sentinel {
            out.push(None);
        } else {
            out.push(Some(index_of(pointer, names, entry)?));
        }
        return Ok(());
    }
    let rows = value
        .as_array()
        .ok_or_else(|| InputError::new(pointer, format!("expected an array at depth {depth}")))?;
    if rows.len() != names.len() {
        return Err(InputError::new(
            pointer,
            format!("expected {} entries, found {}", names.len(), rows.len()),
        ));
    }
    for (i, row) in rows.iter().enumerate() {
        flatten_nested(
            &format!("{pointer}/{i}"),
            row,
            depth - 1,
            names,
            sentinel,
            out,
        )?;
    }
    Ok(())
}

fn resolve_theta(
    group: &FiniteGroup,
    names: &[String],
    theta_json: &BTreeMap<String, BTreeMap<String, String>>,
) -> Result<Vec<Vec<Option<usize>>>, InputError> {
    let mut theta = vec![vec![None; names.len()]; group.size()];
    theta[group.identity()] = (0..names.len()).map(Some).collect();
    for (gname, map) in theta_json {
        let x = group
            .element_by_name(gname)
            .ok_or_else(|| InputError::new(format!("/theta/{gname}"), "unknown group element"))?;
        if x == group.identity() {
            // The identity map may be spelled out, but must be the identity.
            for (from, to) in map {
                if from != to {
                    return Err(InputError::new(
                        format!("/theta/{gname}/{from}"),
                        "the identity must act as the identity map",
                    ));
                }
            }
            continue;
        }
        for (from, to) in map {
            let a = index_of(&format!("/theta/{gname}/{from}"), names, from)?;
            let b = index_of(&format!("/theta/{gname}/{from}"), names, to)?;
            theta[x][a] = Some(b);
        }
    }
    Ok(theta)
}

fn resolve_relations(
    names: &[String],
    rels: &[RelationJson],
) -> Result<RelationalSystem, InputError> {
    let mut relations = Vec::new();
    for (r, rel) in rels.iter().enumerate() {
        let mut tuples = Vec::new();
        for (t, tuple) in rel.tuples.iter().enumerate() {
            if tuple.len() != rel.arity {
                return Err(InputError::new(
                    format!("/relations/{r}/tuples/{t}"),
                    format!("expected arity {}, found {}", rel.arity, tuple.len()),
                ));
            }
            let resolved: Result<Vec<usize>, InputError> = tuple
                .iter()
                .enumerate()
                .map(|(i, name)| index_of(&format!("/relations/{r}/tuples/{t}/{i}"), names, name))
                .collect();
            tuples.push(resolved?);
        }
        relations.push(Relation::new(rel.arity, tuples));
    }
    RelationalSystem::new(names.len(), relations)
        .map_err(|e| InputError::new("/relations", e.to_string()))
}

fn resolve_amalgam(am: &AmalgamJson) -> Result<Amalgam, InputError> {
    let mut algebras = Vec::new();
    let mut name_tables = Vec::new();
    for (k, sg) in am.algebras.iter().enumerate() {
        ensure_names(&format!("/amalgam/algebras/{k}/elements"), &sg.elements)?;
        let table = resolve_table(
            &format!("/amalgam/algebras/{k}/table"),
            &sg.elements,
            &sg.table,
        )?;
        let semigroup = FiniteSemigroup::new(sg.elements.clone(), table)
            .map_err(|e| InputError::from_core(format!("/amalgam/algebras/{k}"), e))?;
        algebras.push(semigroup.to_algebra());
        name_tables.push(sg.elements.clone());
    }
    let labels = match &am.labels {
        Some(l) if l.len() == algebras.len() => l.clone(),
        Some(_) => {
            return Err(InputError::new("/amalgam/labels", "one label per algebra"));
        }
        None => (0..algebras.len()).map(|i| i.to_string()).collect(),
    };
    let mut amalgamations = Vec::new();
    for (k, a) in am.amalgamations.iter().enumerate() {
        let pointer = format!("/amalgam/amalgamations/{k}");
        if a.i >= algebras.len() || a.j >= algebras.len() {
            return Err(InputError::new(pointer, "index out of range"));
        }
        let elements: Result<Vec<usize>, InputError> = a
            .elements
            .iter()
            .map(|name| index_of(&format!("{pointer}/elements"), &name_tables[a.i], name))
            .collect();
        let map: Result<Vec<(usize, usize)>, InputError> = a
            .map
            .iter()
            .map(|(from, to)| {
                Ok((
                    index_of(&format!("{pointer}/map/{from}"), &name_tables[a.i], from)?,
                    index_of(&format!("{pointer}/map/{from}"), &name_tables[a.j], to)?,
                ))
            })
            .collect();
        amalgamations.push(Amalgamation {
            i: a.i,
            j: a.j,
            elements: elements?,
            map: map?,
        });
    }
    Amalgam::new(algebras, labels, amalgamations)
        .map_err(|e| InputError::new("/amalgam", e.to_string()))
}

impl Instance {
    /// The validated partial action, when the file carries one.
    pub fn action(&self) -> Result<PartialAction, globact_core::Error> {
        let group = self
            .group
            .clone()
            .ok_or_else(|| globact_core::Error::Malformed("instance has no group".into()))?;
        let carrier = self
            .carrier
            .as_ref()
            .ok_or_else(|| globact_core::Error::Malformed("instance has no carrier".into()))?;
        let theta = self
            .theta
            .clone()
            .ok_or_else(|| globact_core::Error::Malformed("instance has no theta".into()))?;
        PartialAction::new(group, carrier.names(), theta)
    }

    pub fn semigroup(&self) -> Result<FiniteSemigroup, globact_core::Error> {
        match &self.carrier {
            Some(Carrier::Semigroup(sg)) => Ok(sg.clone()),
            _ => Err(globact_core::Error::Malformed(
                "instance carrier is not a semigroup".into(),
            )),
        }
    }

    pub fn algebra(&self) -> Result<FinitePartialAlgebra, globact_core::Error> {
        match &self.carrier {
            Some(Carrier::Semigroup(sg)) => Ok(sg.to_algebra()),
            Some(Carrier::Algebra(alg)) => Ok(alg.clone()),
            _ => Err(globact_core::Error::Malformed(
                "instance carrier is not an algebra".into(),
            )),
        }
    }
}
