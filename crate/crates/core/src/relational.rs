//! Partial actions on finite relational systems and the lifted structure
//! on the universal globalization.

use crate::action::PartialAction;
use crate::globalization::UniversalGlobalization;
use crate::validation::ValidationReport;
use crate::{Error, Result};

/// A finite relational system: carrier `0..size` with indexed relations.
/// Tuple sets are kept sorted and deduplicated for deterministic iteration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationalSystem {
    size: usize,
    relations: Vec<Relation>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    arity: usize,
    tuples: Vec<Vec<usize>>,
}

impl Relation {
    pub fn new(arity: usize, mut tuples: Vec<Vec<usize>>) -> Self {
        tuples.sort();
        tuples.dedup();
        Relation { arity, tuples }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn tuples(&self) -> &[Vec<usize>] {
        &self.tuples
    }

    pub fn contains(&self, tuple: &[usize]) -> bool {
        self.tuples
            .binary_search_by(|t| t.as_slice().cmp(tuple))
            .is_ok()
    }
}

impl RelationalSystem {
    pub fn new(size: usize, relations: Vec<Relation>) -> Result<Self> {
        for (idx, rel) in relations.iter().enumerate() {
            for t in &rel.tuples {
                if t.len() != rel.arity {
                    return Err(Error::Malformed(format!(
                        "relation {idx} tuple {t:?} has wrong arity"
                    )));
                }
                if let Some(&bad) = t.iter().find(|&&e| e >= size) {
                    return Err(Error::Malformed(format!(
                        "relation {idx} entry {bad} out of range"
                    )));
                }
            }
        }
        Ok(RelationalSystem { size, relations })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    /// Functionality of one relation: no two tuples share the length-(n−1)
    /// prefix with different last entries. An arity-0 relation counts as
    /// functional iff it has at most one tuple.
    pub fn functional_witness(&self, idx: usize) -> Option<(Vec<usize>, Vec<usize>)> {
        let rel = &self.relations[idx];
        if rel.arity == 0 {
            return None; // at most one empty tuple exists after dedup
        }
        for pair in rel.tuples.windows(2) {
            let (a, b) = (&pair[0], &pair[1]);
            if a[..rel.arity - 1] == b[..rel.arity - 1] && a[rel.arity - 1] != b[rel.arity - 1] {
                return Some((a.clone(), b.clone()));
            }
        }
        None
    }

    pub fn is_functional(&self) -> bool {
        (0..self.relations.len()).all(|i| self.functional_witness(i).is_none())
    }
}

/// A partial action on a relational system: the action must map related
/// tuples to related tuples wherever all coordinates move.
#[derive(Debug, Clone)]
pub struct RelationalPartialAction {
    action: PartialAction,
    system: RelationalSystem,
}

/// Exhaustive compatibility check: for every relation tuple and group
/// element, if every coordinate moves then the moved tuple is related.
pub fn validate_relational_action(
    action: &PartialAction,
    system: &RelationalSystem,
) -> ValidationReport {
    let mut report = ValidationReport::valid();
    'outer: for (idx, rel) in system.relations().iter().enumerate() {
        for tuple in rel.tuples() {
            for x in 0..action.group().size() {
                let moved: Option<Vec<usize>> = tuple.iter().map(|&a| action.apply(x, a)).collect();
                if let Some(moved) = moved {
                    if !rel.contains(&moved) {
                        report.record(
                            "relation-preservation",
                            format!(
                                "relation {idx}: x = {} moves {tuple:?} to {moved:?}, not related",
                                action.group().name(x)
                            ),
                        );
                        break 'outer;
                    }
                }
            }
        }
    }
    report
}

impl RelationalPartialAction {
    pub fn new(action: PartialAction, system: RelationalSystem) -> Result<Self> {
        if action.carrier_size() != system.size() {
            return Err(Error::Malformed(
                "relational system and action carrier sizes differ".into(),
            ));
        }
        validate_relational_action(&action, &system).into_result()?;
        Ok(RelationalPartialAction { action, system })
    }

    pub fn action(&self) -> &PartialAction {
        &self.action
    }

    pub fn system(&self) -> &RelationalSystem {
        &self.system
    }
}

/// The lifted relational system on `A^U` together with the globalization it
/// lives on.
#[derive(Debug, Clone)]
pub struct LiftedSystem {
    pub globalization: UniversalGlobalization,
    pub system: RelationalSystem,
}

/// Lifts each relation to the classes: a lifted tuple is the slot-aligned
/// image `([x,a_1],…,[x,a_n])` of a related tuple. Asserts that the global
/// action preserves the lifted relations and that the embedded carrier is a
/// subsystem (membership of embedded tuples reflects membership below).
pub fn lift_relational_system(rpa: &RelationalPartialAction) -> Result<LiftedSystem> {
    let ug = UniversalGlobalization::build(rpa.action())?;
    let g = rpa.action().group().size();
    let mut lifted = Vec::new();
    for rel in rpa.system().relations() {
        let mut tuples = Vec::new();
        for tuple in rel.tuples() {
            for x in 0..g {
                tuples.push(tuple.iter().map(|&a| ug.class_of(x, a)).collect());
            }
        }
        lifted.push(Relation::new(rel.arity(), tuples));
    }
    let system = RelationalSystem::new(ug.class_count(), lifted)?;

    // The total action must preserve every lifted relation.
    for rel in system.relations() {
        for tuple in rel.tuples() {
            for x in 0..g {
                let moved: Vec<usize> = tuple.iter().map(|&c| ug.apply_global(x, c)).collect();
                assert!(
                    rel.contains(&moved),
                    "lifted relation not preserved by the class action"
                );
            }
        }
    }
    // Subsystem condition: embedded tuples that are related upstairs were
    // already related downstairs.
    for (ri, rel) in system.relations().iter().enumerate() {
        let orig = &rpa.system().relations()[ri];
        for tuple in orig_tuples_in_image(rel, ug.embedding()) {
            assert!(
                orig.contains(&tuple),
                "embedded carrier is not a subsystem at relation {ri}: {tuple:?}"
            );
        }
    }
    Ok(LiftedSystem {
        globalization: ug,
        system,
    })
}

/// Tuples of carrier elements whose embedded image lies in the lifted
/// relation.
fn orig_tuples_in_image(rel: &Relation, embedding: &[usize]) -> Vec<Vec<usize>> {
    let mut back = std::collections::BTreeMap::new();
    for (a, &c) in embedding.iter().enumerate() {
        back.insert(c, a);
    }
    rel.tuples()
        .iter()
        .filter_map(|t| t.iter().map(|c| back.get(c).copied()).collect())
        .collect()
}
