//! Partial actions on partial algebras.
//!
//! Compatibility demands that every `θ_x` is an isomorphism of relative
//! subalgebras: whenever all moved arguments and the moved value are
//! defined, the operation commutes with the move. Globalizability is the
//! stronger condition that drops "the moved value is defined" from the
//! hypotheses and reads the conclusion as a partial equality; it holds
//! exactly when the lifted relational system on the classes stays
//! functional, which is what the lifted-algebra construction needs.

use crate::action::PartialAction;
use crate::algebra::FinitePartialAlgebra;
use crate::globalization::{globalization_witness, UniversalGlobalization};
use crate::relational::{lift_relational_system, RelationalPartialAction};
use crate::util::tuple_index;
use crate::validation::ValidationReport;
use crate::{Error, Result};

/// A validated partial action on a partial algebra over the same carrier.
#[derive(Debug, Clone)]
pub struct AlgebraPartialAction {
    action: PartialAction,
    algebra: FinitePartialAlgebra,
}

/// Exhaustive check of the compatibility condition: for every defined cell
/// `f(a⃗) = v`, group element `x` with all `x·aᵢ` and `x·v` defined,
/// `f(x·a⃗)` must be defined and equal `x·v`. The equivalent check through
/// the graph-relation encoding is run as well; the two must agree.
pub fn validate_algebra_action(
    action: &PartialAction,
    algebra: &FinitePartialAlgebra,
) -> ValidationReport {
    let mut report = ValidationReport::valid();
    'outer: for x in 0..action.group().size() {
        for op in 0..algebra.signature().len() {
            for (args, value) in algebra.defined_cells(op) {
                let moved: Option<Vec<usize>> = args.iter().map(|&a| action.apply(x, a)).collect();
                let (Some(moved), Some(moved_value)) = (moved, action.apply(x, value)) else {
                    continue;
                };
                if algebra.op_value(op, &moved) != Some(moved_value) {
                    report.record(
                        "action-compatibility",
                        format!(
                            "x = {}: f{op}{args:?} = {value} moves to f{op}{moved:?} = {:?}, expected {moved_value}",
                            action.group().name(x),
                            algebra.op_value(op, &moved),
                        ),
                    );
                    break 'outer;
                }
            }
        }
    }
    // Cross-check through the relational encoding; the two formulations are
    // the same condition, so any disagreement is a bug here.
    let relational =
        crate::relational::validate_relational_action(action, &algebra.to_relational());
    assert_eq!(
        report.is_valid(),
        relational.is_valid(),
        "direct and relational compatibility checks disagree"
    );
    report
}

/// A witness that the globalizability condition fails: the cell, the group
/// element, and the two sides of the broken partial equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlobalizabilityWitness {
    pub op: usize,
    pub x: usize,
    pub args: Vec<usize>,
    pub value: usize,
    pub lhs: Option<usize>,
    pub rhs: Option<usize>,
}

impl AlgebraPartialAction {
    pub fn new(action: PartialAction, algebra: FinitePartialAlgebra) -> Result<Self> {
        if action.carrier_size() != algebra.size() {
            return Err(Error::Malformed(
                "algebra and action carrier sizes differ".into(),
            ));
        }
        validate_algebra_action(&action, &algebra).into_result()?;
        Ok(AlgebraPartialAction { action, algebra })
    }

    pub fn action(&self) -> &PartialAction {
        &self.action
    }

    pub fn algebra(&self) -> &FinitePartialAlgebra {
        &self.algebra
    }

    pub fn as_relational(&self) -> RelationalPartialAction {
        RelationalPartialAction::new(self.action.clone(), self.algebra.to_relational())
            .expect("compatibility was validated at construction")
    }

    /// The globalizability condition: for every defined cell `f(a⃗) = v` and
    /// `x` with all `x·aᵢ` defined, `f(x·a⃗)` and `x·v` agree as partial
    /// values (both undefined also counts as equal).
    pub fn globalizability_witness(&self) -> Option<GlobalizabilityWitness> {
        let mut witness = None;
        'outer: for x in 0..self.action.group().size() {
            for op in 0..self.algebra.signature().len() {
                for (args, value) in self.algebra.defined_cells(op) {
                    let moved: Option<Vec<usize>> =
                        args.iter().map(|&a| self.action.apply(x, a)).collect();
                    let Some(moved) = moved else { continue };
                    let lhs = self.algebra.op_value(op, &moved);
                    let rhs = self.action.apply(x, value);
                    if lhs != rhs {
                        witness = Some(GlobalizabilityWitness {
                            op,
                            x,
                            args,
                            value,
                            lhs,
                            rhs,
                        });
                        break 'outer;
                    }
                }
            }
        }
        debug_assert_eq!(
            witness.is_none(),
            lift_relational_system(&self.as_relational())
                .map(|l| l.system.is_functional())
                .unwrap_or(false),
            "globalizability and lifted functionality must agree"
        );
        witness
    }

    pub fn is_globalizable(&self) -> bool {
        self.globalizability_witness().is_none()
    }

    /// For a total algebra, globalizability is exactly closure of every
    /// domain under every operation.
    pub fn all_domains_closed(&self) -> bool {
        (0..self.action.group().size()).all(|x| {
            self.algebra
                .closure_witness(&self.action.domain(x))
                .is_none()
        })
    }

    /// Builds the partial algebra on the classes: a slot-aligned tuple of
    /// classes gets the class of the cell value in that slot. Requires
    /// globalizability; refuses with the witness otherwise (a conflict
    /// would otherwise make the table ill defined).
    pub fn lift_algebra(&self) -> Result<AlgebraGlobalization> {
        if let Some(w) = self.globalizability_witness() {
            return Err(Error::NotGlobalizable(format!(
                "condition fails at x = {}, f{}{:?}: lhs {:?}, rhs {:?}",
                self.action.group().name(w.x),
                w.op,
                w.args,
                w.lhs,
                w.rhs
            )));
        }
        let ug = UniversalGlobalization::build(&self.action)?;
        let classes = ug.class_count();
        let mut ops = Vec::new();
        for op in 0..self.algebra.signature().len() {
            let arity = self.algebra.signature().arity(op);
            let mut table = vec![None; classes.pow(arity as u32)];
            for x in 0..self.action.group().size() {
                for (args, value) in self.algebra.defined_cells(op) {
                    let class_args: Vec<usize> = args.iter().map(|&a| ug.class_of(x, a)).collect();
                    let idx = tuple_index(classes, &class_args);
                    let target = ug.class_of(x, value);
                    match table[idx] {
                        None => table[idx] = Some(target),
                        Some(prev) => assert_eq!(
                            prev, target,
                            "functionality guaranteed the lifted table is single-valued"
                        ),
                    }
                }
            }
            ops.push(table);
        }
        let names = (0..classes).map(|c| ug.class_name(c)).collect();
        let algebra = FinitePartialAlgebra::new(names, self.algebra.signature().clone(), ops)?;
        let result = AlgebraGlobalization { ug, algebra };
        result.verify(self);
        Ok(result)
    }
}

/// The lifted algebra on `A^U` together with the underlying globalization.
#[derive(Debug, Clone)]
pub struct AlgebraGlobalization {
    pub ug: UniversalGlobalization,
    pub algebra: FinitePartialAlgebra,
}

impl AlgebraGlobalization {
    /// Asserts everything the construction promises: the embedded carrier
    /// is a relative subalgebra, the class action preserves the lifted
    /// operations, and the set-level globalization conditions hold.
    fn verify(&self, input: &AlgebraPartialAction) {
        let emb = self.ug.embedding();
        let alg = input.algebra();
        for op in 0..alg.signature().len() {
            for args in crate::util::tuples(alg.size(), alg.signature().arity(op)) {
                let below = alg.op_value(op, &args);
                let mapped: Vec<usize> = args.iter().map(|&a| emb[a]).collect();
                let above = self.algebra.op_value(op, &mapped);
                match below {
                    Some(v) => assert_eq!(
                        above,
                        Some(emb[v]),
                        "embedded cell must be defined with the embedded value"
                    ),
                    None => {
                        // Relative subalgebra: the ambient value, if any,
                        // must escape the embedded carrier.
                        if let Some(w) = above {
                            assert!(
                                !emb.contains(&w),
                                "undefined cell gained a value inside the embedded carrier"
                            );
                        }
                    }
                }
            }
        }
        // The class action acts by isomorphisms of the lifted algebra.
        for x in 0..self.ug.action().group().size() {
            for op in 0..self.algebra.signature().len() {
                for (args, value) in self.algebra.defined_cells(op) {
                    let moved: Vec<usize> =
                        args.iter().map(|&c| self.ug.apply_global(x, c)).collect();
                    assert_eq!(
                        self.algebra.op_value(op, &moved),
                        Some(self.ug.apply_global(x, value)),
                        "class action must preserve the lifted operations"
                    );
                }
            }
        }
        assert!(
            globalization_witness(input.action(), &self.ug.as_global_action(), emb).is_none(),
            "the set-level globalization conditions must hold"
        );
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::TypeSignature;
    use crate::corpus::{paper_algebra_action, trivial_action, z4_restricted_algebra_action};
    use crate::FiniteGroup;

    #[test]
    fn trivial_action_is_compatible() {
        let alg = crate::corpus::paper_semigroup().to_algebra();
        let pa = trivial_action(&FiniteGroup::cyclic(2), 4);
        assert!(validate_algebra_action(&pa, &alg).is_valid());
    }

    #[test]
    fn paper_action_is_globalizable_at_the_algebra_level() {
        // θ_x is an isomorphism of ideals and {0,u,v} is closed under the
        // product, so the partial-algebra condition holds — the failure in
        // the running example only appears in the semigroup variety.
        let apa = paper_algebra_action();
        assert!(validate_algebra_action(apa.action(), apa.algebra()).is_valid());
        assert!(apa.is_globalizable());
        let functional = lift_relational_system(&apa.as_relational())
            .unwrap()
            .system
            .is_functional();
        assert!(functional);
    }

    #[test]
    fn broken_unary_compatibility_reports_witness() {
        // θ_x swaps u and v; f(u) = u, f(v) = t with u,v,t inside moved
        // domains, f(x·u) = f(v) = t but x·f(u) = x·u = v.
        let group = FiniteGroup::cyclic(2);
        let action = PartialAction::new(
            group,
            vec!["u".into(), "v".into(), "t".into()],
            vec![
                vec![Some(0), Some(1), Some(2)],
                vec![Some(1), Some(0), Some(2)],
            ],
        )
        .unwrap();
        let algebra = FinitePartialAlgebra::new(
            vec!["u".into(), "v".into(), "t".into()],
            TypeSignature::new(vec![1]),
            vec![vec![Some(0), Some(2), None]],
        )
        .unwrap();
        let report = validate_algebra_action(&action, &algebra);
        assert!(!report.is_valid());
        assert_eq!(report.violations[0].axiom, "action-compatibility");
    }

    #[test]
    fn shift_restriction_is_globalizable_without_subalgebra_domains() {
        let apa = z4_restricted_algebra_action();
        // D_{g³} = {1} is not a subalgebra: f(1) = 2 escapes.
        assert!(apa
            .algebra()
            .closure_witness(&apa.action().domain(3))
            .is_some());
        assert!(apa.is_globalizable());
        let lifted = apa.lift_algebra().unwrap();
        assert_eq!(lifted.ug.class_count(), 4);
        // The lifted table follows the pattern f([n,1]) = [n,2].
        for x in 0..4 {
            let c = lifted.ug.class_of(x, 0);
            assert_eq!(
                lifted.algebra.op_value(0, &[c]),
                Some(lifted.ug.class_of(x, 1))
            );
        }
    }

    #[test]
    fn lift_refuses_non_globalizable_input() {
        // θ_x swaps a and b; f(a) = c and f(b) = d with c, d outside every
        // moved domain. Compatibility holds vacuously, but f(x·a) = d is
        // defined while x·f(a) is not, so the partial equality fails.
        let group = FiniteGroup::cyclic(2);
        let names: Vec<String> = ["a", "b", "c", "d"].map(String::from).to_vec();
        let action = PartialAction::new(
            group,
            names.clone(),
            vec![
                vec![Some(0), Some(1), Some(2), Some(3)],
                vec![Some(1), Some(0), None, None],
            ],
        )
        .unwrap();
        let algebra = FinitePartialAlgebra::new(
            names,
            TypeSignature::new(vec![1]),
            vec![vec![Some(2), Some(3), None, None]],
        )
        .unwrap();
        let apa = AlgebraPartialAction::new(action, algebra).unwrap();
        let w = apa.globalizability_witness().expect("not globalizable");
        assert_eq!((w.lhs, w.rhs), (Some(3), None));
        assert!(matches!(
            apa.lift_algebra(),
            Err(crate::Error::NotGlobalizable(_))
        ));
    }

    #[test]
    fn total_algebra_globalizable_iff_domains_closed() {
        let apa = paper_algebra_action();
        assert_eq!(apa.is_globalizable(), apa.all_domains_closed());
    }

    #[test]
    fn lifted_paper_algebra_leaves_cross_slot_cells_undefined() {
        // [1,t] and [x,t] share no slot, so the lifted operation has no
        // aligned representatives there and the cell stays undefined.
        let apa = paper_algebra_action();
        let lifted = apa.lift_algebra().unwrap();
        let c1t = lifted.ug.class_of(0, 3);
        let cxt = lifted.ug.class_of(1, 3);
        assert_ne!(c1t, cxt);
        assert_eq!(lifted.algebra.op_value(0, &[c1t, cxt]), None);
    }

    #[test]
    fn global_input_lifts_to_isomorphic_copy() {
        let pa = crate::corpus::z4_negation_action();
        let alg = crate::corpus::z4_semigroup().to_algebra();
        let apa = AlgebraPartialAction::new(pa, alg.clone()).unwrap();
        let lifted = apa.lift_algebra().unwrap();
        assert_eq!(lifted.ug.class_count(), 4);
        assert!(crate::iso::find_isomorphism(&alg, &lifted.algebra).is_some());
    }
}
