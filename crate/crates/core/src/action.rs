//! Partial actions of a finite group on a finite carrier.
//!
//! A partial action is stored as one partial self-map of the carrier per
//! group element. Validation checks the three axioms exhaustively:
//!
//! 1. the identity acts as the total identity map;
//! 2. if `x·a` is defined then `x⁻¹·(x·a)` is defined and equals `a`;
//! 3. if `y·a` and `x·(y·a)` are defined then `(xy)·a` is defined and
//!    equals `x·(y·a)` (the guarded form — the hypotheses are exactly
//!    these two, nothing stronger).
//!
//! Domains `D_x = ran θ(x,−)` are always derived from the tables, never
//! stored separately.

use crate::group::FiniteGroup;
use crate::validation::ValidationReport;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialAction {
    group: FiniteGroup,
    names: Vec<String>,
    theta: Vec<Vec<Option<usize>>>, // theta[x][a] = x·a
}

/// Exhaustive axiom check over well-formed tables; first witness per axiom.
pub fn validate_action_tables(
    group: &FiniteGroup,
    carrier: usize,
    theta: &[Vec<Option<usize>>],
) -> ValidationReport {
    let mut report = ValidationReport::valid();
    let e = group.identity();
    for a in 0..carrier {
        if theta[e][a] != Some(a) {
            report.record("unit", format!("1·{a} = {:?}, expected {a}", theta[e][a]));
            break;
        }
    }
    'inverse: for x in 0..group.size() {
        for a in 0..carrier {
            if let Some(b) = theta[x][a] {
                if theta[group.inv(x)][b] != Some(a) {
                    report.record(
                        "inverse",
                        format!(
                            "x = {}, a = {a}: x·a = {b} but x⁻¹·{b} = {:?}",
                            group.name(x),
                            theta[group.inv(x)][b]
                        ),
                    );
                    break 'inverse;
                }
            }
        }
    }
    'composition: for x in 0..group.size() {
        for y in 0..group.size() {
            for a in 0..carrier {
                let Some(ya) = theta[y][a] else { continue };
                let Some(xya) = theta[x][ya] else { continue };
                if theta[group.mul(x, y)][a] != Some(xya) {
                    report.record(
                        "composition",
                        format!(
                            "x = {}, y = {}, a = {a}: x·(y·a) = {xya} but (xy)·a = {:?}",
                            group.name(x),
                            group.name(y),
                            theta[group.mul(x, y)][a]
                        ),
                    );
                    break 'composition;
                }
            }
        }
    }
    report
}

impl PartialAction {
    /// Builds a validated partial action. `theta` is indexed by group
    /// element, then carrier element.
    pub fn new(
        group: FiniteGroup,
        names: Vec<String>,
        theta: Vec<Vec<Option<usize>>>,
    ) -> Result<Self> {
        let carrier = names.len();
        if carrier == 0 {
            return Err(Error::Malformed("carrier must be nonempty".into()));
        }
        if theta.len() != group.size() || theta.iter().any(|t| t.len() != carrier) {
            return Err(Error::Malformed(format!(
                "theta must be {} maps over a carrier of {carrier}",
                group.size()
            )));
        }
        if let Some(bad) = theta.iter().flatten().flatten().find(|&&b| b >= carrier) {
            return Err(Error::Malformed(format!("theta value {bad} out of range")));
        }
        validate_action_tables(&group, carrier, &theta).into_result()?;
        Ok(PartialAction {
            group,
            names,
            theta,
        })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn carrier_size(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn element_by_name(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn apply(&self, x: usize, a: usize) -> Option<usize> {
        self.theta[x][a]
    }

    /// `D_x = ran θ(x,−)`, in increasing element order.
    pub fn domain(&self, x: usize) -> Vec<usize> {
        let mut mask = vec![false; self.carrier_size()];
        for a in 0..self.carrier_size() {
            if let Some(b) = self.theta[x][a] {
                mask[b] = true;
            }
        }
        (0..self.carrier_size()).filter(|&b| mask[b]).collect()
    }

    pub fn domain_contains(&self, x: usize, b: usize) -> bool {
        // For a valid action, b ∈ ran θ(x,−) iff θ(x⁻¹, b) is defined.
        self.theta[self.group.inv(x)][b].is_some()
    }

    pub fn is_global(&self) -> bool {
        self.theta.iter().all(|t| t.iter().all(Option::is_some))
    }

    /// Restriction of a global action to a nonempty subset: the result acts
    /// on the subset (re-indexed densely, names kept), with `x·a` defined
    /// iff the global image stays inside the subset.
    pub fn restrict(&self, subset: &[usize]) -> Result<PartialAction> {
        if !self.is_global() {
            return Err(Error::Malformed(
                "restriction requires a global action".into(),
            ));
        }
        if subset.is_empty() {
            return Err(Error::Malformed("restriction to empty subset".into()));
        }
        let mut back = vec![None; self.carrier_size()];
        for (new, &old) in subset.iter().enumerate() {
            if old >= self.carrier_size() {
                return Err(Error::Malformed(format!(
                    "subset element {old} out of range"
                )));
            }
            back[old] = Some(new);
        }
        let names = subset.iter().map(|&a| self.names[a].clone()).collect();
        let theta = (0..self.group.size())
            .map(|x| {
                subset
                    .iter()
                    .map(|&a| self.theta[x][a].and_then(|b| back[b]))
                    .collect()
            })
            .collect();
        PartialAction::new(self.group.clone(), names, theta)
    }
}

/// Checks the morphism condition `x·a ≠ ∅ ⇒ x·φ(a)` defined and equal to
/// `φ(x·a)` for a total carrier map between two actions of the same group.
/// Returns the first failing `(x, a)` rendered.
pub fn morphism_witness(
    source: &PartialAction,
    target: &PartialAction,
    map: &[usize],
) -> Option<String> {
    if source.group() != target.group() {
        return Some("actions live over different groups".into());
    }
    if map.len() != source.carrier_size() || map.iter().any(|&v| v >= target.carrier_size()) {
        return Some("map is not a total function into the target carrier".into());
    }
    for x in 0..source.group().size() {
        for a in 0..source.carrier_size() {
            if let Some(b) = source.apply(x, a) {
                match target.apply(x, map[a]) {
                    Some(c) if c == map[b] => {}
                    other => {
                        return Some(format!(
                            "x = {}, a = {a}: x·φ(a) = {other:?}, expected φ(x·a) = {}",
                            source.group().name(x),
                            map[b]
                        ));
                    }
                }
            }
        }
    }
    None
}

/// Composition of carrier maps, for the morphism-composition property.
pub fn compose_maps(first: &[usize], second: &[usize]) -> Vec<usize> {
    first.iter().map(|&a| second[a]).collect()
}
