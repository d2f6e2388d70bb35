//! The universal globalization of a partial action.
//!
//! `A^U` is the quotient of `G × A` by `(x,a) ~ (y,b) ⟺ (y⁻¹x)·a = b`
//! (defined). The group acts totally on the classes by `x·[y,a] = [xy,a]`,
//! and `a ↦ [1,a]` embeds the carrier. Every step that the construction
//! guarantees on paper (the relation being an equivalence, the action being
//! well defined, the embedding being injective) is re-verified here rather
//! than trusted, so upstream bugs surface at the construction site.

use crate::action::{morphism_witness, PartialAction};
use crate::util::UnionFind;
use crate::{Error, Result};
use std::sync::atomic::{AtomicU64, Ordering};

static NEXT_INSTANCE: AtomicU64 = AtomicU64::new(0);

/// One `~`-class of `G × A`. Since `θ(x,−)` is injective, a class holds at
/// most one member per group element ("slot"), which the rewriting engine
/// uses as an O(1) query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlobClass {
    /// Lexicographically least member under (group index, carrier index).
    pub rep: (usize, usize),
    /// All members, sorted.
    pub members: Vec<(usize, usize)>,
    /// Per group element: the unique member in that slot, if any.
    pub slot: Vec<Option<usize>>,
}

#[derive(Debug, Clone)]
pub struct UniversalGlobalization {
    action: PartialAction,
    classes: Vec<GlobClass>,
    pair_class: Vec<usize>,  // (x * carrier + a) -> class index
    global: Vec<Vec<usize>>, // θ^U, [group][class] -> class
    embedding: Vec<usize>,   // ι, [carrier] -> class
    instance_id: u64,
}

impl UniversalGlobalization {
    /// Builds `(θ^U, A^U)` for a validated partial action.
    pub fn build(action: &PartialAction) -> Result<Self> {
        let g = action.group().size();
        let n = action.carrier_size();
        let pair = |x: usize, a: usize| x * n + a;

        // Relate (x,a) ~ (y,b) whenever (y⁻¹x)·a = b.
        let mut uf = UnionFind::new(g * n);
        for x in 0..g {
            for y in 0..g {
                let z = action.group().mul(action.group().inv(y), x);
                for a in 0..n {
                    if let Some(b) = action.apply(z, a) {
                        uf.union(pair(x, a), pair(y, b));
                    }
                }
            }
        }

        // Defense in depth: the relation itself (not just its closure) must
        // already be symmetric and transitive; a failure means the input
        // action was invalid.
        let related = |x: usize, a: usize, y: usize, b: usize| {
            let z = action.group().mul(action.group().inv(y), x);
            action.apply(z, a) == Some(b)
        };
        for x in 0..g {
            for a in 0..n {
                for y in 0..g {
                    for b in 0..n {
                        if related(x, a, y, b) {
                            if !related(y, b, x, a) {
                                return Err(Error::Invalid(symmetry_violation(action, x, a, y, b)));
                            }
                            for w in 0..g {
                                for c in 0..n {
                                    if related(y, b, w, c) && !related(x, a, w, c) {
                                        return Err(Error::Invalid(transitivity_violation(
                                            action, x, a, w, c,
                                        )));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }

        // Canonicalize classes, ordered by least member.
        let mut members_of = vec![Vec::new(); g * n];
        for x in 0..g {
            for a in 0..n {
                let root = uf.find(pair(x, a));
                members_of[root].push((x, a));
            }
        }
        let mut classes = Vec::new();
        let mut pair_class = vec![usize::MAX; g * n];
        for root in 0..g * n {
            if members_of[root].is_empty() {
                continue;
            }
            let members = std::mem::take(&mut members_of[root]);
            let mut slot = vec![None; g];
            for &(x, a) in &members {
                if let Some(prev) = slot[x] {
                    return Err(Error::Malformed(format!(
                        "class has two members {prev} and {a} in slot {x}; input action invalid"
                    )));
                }
                slot[x] = Some(a);
            }
            let id = classes.len();
            for &(x, a) in &members {
                pair_class[pair(x, a)] = id;
            }
            classes.push(GlobClass {
                rep: members[0],
                members,
                slot,
            });
        }

        // θ^U(x, [y,a]) = [xy,a]; verify the choice of member is irrelevant.
        let mut global = vec![vec![usize::MAX; classes.len()]; g];
        for (ci, class) in classes.iter().enumerate() {
            for x in 0..g {
                let mut image = usize::MAX;
                for &(y, a) in &class.members {
                    let target = pair_class[pair(action.group().mul(x, y), a)];
                    if image == usize::MAX {
                        image = target;
                    } else if image != target {
                        return Err(Error::Malformed(format!(
                            "action on classes not well defined at x = {x}, class {ci}"
                        )));
                    }
                }
                global[x][ci] = image;
            }
        }

        let embedding: Vec<usize> = (0..n)
            .map(|a| pair_class[pair(action.group().identity(), a)])
            .collect();
        for a in 0..n {
            for b in a + 1..n {
                if embedding[a] == embedding[b] {
                    return Err(Error::Malformed(format!(
                        "embedding identifies {a} and {b}; input action invalid"
                    )));
                }
            }
        }

        Ok(UniversalGlobalization {
            action: action.clone(),
            classes,
            pair_class,
            global,
            embedding,
            instance_id: NEXT_INSTANCE.fetch_add(1, Ordering::Relaxed),
        })
    }

    pub fn action(&self) -> &PartialAction {
        &self.action
    }

    pub fn classes(&self) -> &[GlobClass] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, x: usize, a: usize) -> usize {
        self.pair_class[x * self.action.carrier_size() + a]
    }

    pub fn embedding(&self) -> &[usize] {
        &self.embedding
    }

    pub fn apply_global(&self, x: usize, class: usize) -> usize {
        self.global[x][class]
    }

    pub fn instance_id(&self) -> u64 {
        self.instance_id
    }

    /// Rendered canonical name `[x,a]` of a class.
    pub fn class_name(&self, class: usize) -> String {
        let (x, a) = self.classes[class].rep;
        format!("[{},{}]", self.action.group().name(x), self.action.name(a))
    }

    /// `θ^U` as a total [`PartialAction`] on the classes.
    pub fn as_global_action(&self) -> PartialAction {
        let names = (0..self.class_count())
            .map(|c| self.class_name(c))
            .collect();
        let theta = self
            .global
            .iter()
            .map(|row| row.iter().map(|&c| Some(c)).collect())
            .collect();
        PartialAction::new(self.action.group().clone(), names, theta)
            .expect("the class action satisfies the axioms")
    }

    /// The unique morphism `ψ` with `ψ∘ι = φ`, where `φ` is a morphism into
    /// a global action. `ψ([x,a]) = x·φ(a)`; well-definedness across class
    /// members and the factorization are asserted, and determination on
    /// every class (each class is `x·ι(a)`) is what makes it unique.
    pub fn factor_morphism(&self, target: &PartialAction, phi: &[usize]) -> Result<Vec<usize>> {
        if !target.is_global() {
            return Err(Error::Malformed(
                "factorization target must be global".into(),
            ));
        }
        if let Some(w) = morphism_witness(&self.action, target, phi) {
            return Err(Error::NotAMorphism(w));
        }
        let mut psi = vec![usize::MAX; self.class_count()];
        for (ci, class) in self.classes.iter().enumerate() {
            for &(x, a) in &class.members {
                let v = target.apply(x, phi[a]).expect("target action is global");
                if psi[ci] == usize::MAX {
                    psi[ci] = v;
                } else if psi[ci] != v {
                    return Err(Error::NotAMorphism(format!(
                        "φ does not respect the class of ({x},{a})"
                    )));
                }
            }
        }
        for a in 0..self.action.carrier_size() {
            assert_eq!(psi[self.embedding[a]], phi[a], "ψ∘ι = φ must hold");
        }
        // Every class is reachable from the embedded carrier, so any
        // morphism agreeing with φ on ι(A) is determined everywhere.
        for (ci, class) in self.classes.iter().enumerate() {
            let (x, a) = class.rep;
            assert_eq!(self.apply_global(x, self.embedding[a]), ci);
        }
        debug_assert!(
            morphism_witness(&self.as_global_action(), target, &psi).is_none(),
            "ψ must be a morphism of global actions"
        );
        Ok(psi)
    }
}

fn symmetry_violation(
    action: &PartialAction,
    x: usize,
    a: usize,
    y: usize,
    b: usize,
) -> crate::validation::ValidationReport {
    let mut r = crate::validation::ValidationReport::valid();
    r.record(
        "equivalence-symmetry",
        format!(
            "({},{}) ~ ({},{}) but not conversely",
            action.group().name(x),
            action.name(a),
            action.group().name(y),
            action.name(b)
        ),
    );
    r
}

fn transitivity_violation(
    action: &PartialAction,
    x: usize,
    a: usize,
    w: usize,
    c: usize,
) -> crate::validation::ValidationReport {
    let mut r = crate::validation::ValidationReport::valid();
    r.record(
        "equivalence-transitivity",
        format!(
            "({},{}) should relate to ({},{}) by transitivity",
            action.group().name(x),
            action.name(a),
            action.group().name(w),
            action.name(c)
        ),
    );
    r
}

/// Checks that `(global, ι)` is a globalization of `pa`: ι injective, ι a
/// morphism, and the biconditional `x·a ≠ ∅ ⟺ x·ι(a) ∈ ι(A)` exhaustively
/// (the forward direction also follows from the morphism property; both are
/// checked anyway). Returns the first failure rendered.
pub fn globalization_witness(
    pa: &PartialAction,
    global: &PartialAction,
    iota: &[usize],
) -> Option<String> {
    if !global.is_global() {
        return Some("candidate action is not global".into());
    }
    if iota.len() != pa.carrier_size() {
        return Some("ι is not defined on the whole carrier".into());
    }
    for a in 0..pa.carrier_size() {
        for b in a + 1..pa.carrier_size() {
            if iota[a] == iota[b] {
                return Some(format!("ι identifies {a} and {b}"));
            }
        }
    }
    if let Some(w) = morphism_witness(pa, global, iota) {
        return Some(w);
    }
    let mut in_image = vec![None; global.carrier_size()];
    for a in 0..pa.carrier_size() {
        in_image[iota[a]] = Some(a);
    }
    for x in 0..pa.group().size() {
        for a in 0..pa.carrier_size() {
            let moved = global.apply(x, iota[a]).expect("global action");
            match (pa.apply(x, a), in_image[moved]) {
                (Some(b), Some(c)) if b == c => {}
                (None, None) => {}
                (Some(b), other) => {
                    return Some(format!(
                        "x = {}, a = {a}: x·a = {b} but x·ι(a) corresponds to {other:?}",
                        pa.group().name(x)
                    ));
                }
                (None, Some(c)) => {
                    return Some(format!(
                        "x = {}, a = {a}: x·a undefined but x·ι(a) = ι({c})",
                        pa.group().name(x)
                    ));
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{paper_action, trivial_action, z4_shift_action};

    #[test]
    fn paper_action_has_five_classes() {
        let ug = UniversalGlobalization::build(&paper_action()).unwrap();
        assert_eq!(ug.class_count(), 5);
        let rendered: Vec<String> = (0..5).map(|c| ug.class_name(c)).collect();
        assert_eq!(rendered, vec!["[1,0]", "[1,u]", "[1,v]", "[1,t]", "[x,t]"]);
        // Class member lists match the quotient of G×A by ~.
        assert_eq!(ug.classes()[0].members, vec![(0, 0), (1, 0)]);
        assert_eq!(ug.classes()[1].members, vec![(0, 1), (1, 2)]);
        assert_eq!(ug.classes()[2].members, vec![(0, 2), (1, 1)]);
        assert_eq!(ug.classes()[3].members, vec![(0, 3)]);
        assert_eq!(ug.classes()[4].members, vec![(1, 3)]);
    }

    #[test]
    fn global_input_gives_bijective_embedding() {
        let pa = z4_shift_action();
        let ug = UniversalGlobalization::build(&pa).unwrap();
        assert_eq!(ug.class_count(), pa.carrier_size());
    }

    #[test]
    fn trivial_action_gives_product_classes() {
        let pa = trivial_action(&crate::FiniteGroup::cyclic(3), 4);
        let ug = UniversalGlobalization::build(&pa).unwrap();
        assert_eq!(ug.class_count(), 12);
    }

    #[test]
    fn built_globalization_verifies() {
        for pa in [paper_action(), z4_shift_action()] {
            let ug = UniversalGlobalization::build(&pa).unwrap();
            let global = ug.as_global_action();
            assert!(globalization_witness(&pa, &global, ug.embedding()).is_none());
        }
    }

    #[test]
    fn restriction_round_trip_verifies() {
        let global = z4_shift_action();
        let restricted = global.restrict(&[1, 2]).unwrap();
        // ι maps re-indexed {1,2} back into the original carrier.
        assert!(globalization_witness(&restricted, &global, &[1, 2]).is_none());
    }

    #[test]
    fn defined_escape_is_rejected() {
        // Z_2 swap as global target, but the partial action on {a,b} has
        // x·a undefined even though the swap keeps ι(a) inside the image.
        let group = crate::FiniteGroup::cyclic(2);
        let global = PartialAction::new(
            group.clone(),
            vec!["a".into(), "b".into()],
            vec![vec![Some(0), Some(1)], vec![Some(1), Some(0)]],
        )
        .unwrap();
        let partial = trivial_action(&group, 2);
        let w = globalization_witness(&partial, &global, &[0, 1]);
        assert!(w.unwrap().contains("undefined"));
    }

    #[test]
    fn factor_through_itself_is_identity() {
        let ug = UniversalGlobalization::build(&paper_action()).unwrap();
        let global = ug.as_global_action();
        let psi = ug.factor_morphism(&global, ug.embedding()).unwrap();
        assert_eq!(psi, (0..ug.class_count()).collect::<Vec<_>>());
    }

    #[test]
    fn factor_into_injective_globalization_is_injective() {
        let global = z4_shift_action();
        let restricted = global.restrict(&[1, 2]).unwrap();
        let ug = UniversalGlobalization::build(&restricted).unwrap();
        let psi = ug.factor_morphism(&global, &[1, 2]).unwrap();
        let mut seen = std::collections::BTreeSet::new();
        assert!(psi.iter().all(|&v| seen.insert(v)), "ψ must be injective");
    }
}
