//! Isomorphism search between finite partial algebras.
//!
//! Plain backtracking in fixed element order with an invariant-vector
//! prefilter (the degree-sequence analogue for operation tables). Carriers
//! in this artifact stay small, so no canonical-form machinery.

use crate::algebra::FinitePartialAlgebra;
use crate::util::tuples;

/// Per-element invariant: for each operation, how often the element occurs
/// in each argument position of a defined cell, and how often as a value.
fn invariants(alg: &FinitePartialAlgebra) -> Vec<Vec<usize>> {
    let mut inv = vec![Vec::new(); alg.size()];
    for op in 0..alg.signature().len() {
        let arity = alg.signature().arity(op);
        let base = inv[0].len();
        for v in inv.iter_mut() {
            v.resize(base + arity + 1, 0);
        }
        for (args, value) in alg.defined_cells(op) {
            for (pos, &a) in args.iter().enumerate() {
                inv[a][base + pos] += 1;
            }
            inv[value][base + arity] += 1;
        }
    }
    inv
}

/// First isomorphism `a → b` under the fixed element order, or `None`.
/// An isomorphism of partial algebras is a bijection that preserves
/// definedness in both directions and matches values.
pub fn find_isomorphism(a: &FinitePartialAlgebra, b: &FinitePartialAlgebra) -> Option<Vec<usize>> {
    if a.signature() != b.signature() || a.size() != b.size() {
        return None;
    }
    let n = a.size();
    let inv_a = invariants(a);
    let inv_b = invariants(b);
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn consistent(
        a: &FinitePartialAlgebra,
        b: &FinitePartialAlgebra,
        map: &[usize],
        fixed: usize,
    ) -> bool {
        // Check every cell whose arguments are all assigned and mention the
        // newly fixed element (cheap full rescan is fine at these sizes).
        for op in 0..a.signature().len() {
            let arity = a.signature().arity(op);
            for args in tuples(a.size(), arity) {
                if !args.iter().all(|&x| map[x] != usize::MAX) {
                    continue;
                }
                if !args.contains(&fixed) && a.op_value(op, &args).is_none_or(|v| v != fixed) {
                    continue;
                }
                let mapped: Vec<usize> = args.iter().map(|&x| map[x]).collect();
                match (a.op_value(op, &args), b.op_value(op, &mapped)) {
                    (None, None) => {}
                    (Some(v), Some(w)) => {
                        if map[v] != usize::MAX && map[v] != w {
                            return false;
                        }
                    }
                    // Definedness must transfer in both directions.
                    (None, Some(_)) => return false,
                    (Some(v), None) => {
                        // Value not yet assigned: the image cell must still
                        // be definable, but it is already undefined.
                        let _ = v;
                        return false;
                    }
                }
            }
        }
        true
    }
    fn backtrack(
        a: &FinitePartialAlgebra,
        b: &FinitePartialAlgebra,
        inv_a: &[Vec<usize>],
        inv_b: &[Vec<usize>],
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        next: usize,
    ) -> bool {
        if next == a.size() {
            return true;
        }
        for candidate in 0..b.size() {
            if used[candidate] || inv_a[next] != inv_b[candidate] {
                continue;
            }
            map[next] = candidate;
            used[candidate] = true;
            if consistent(a, b, map, next) && backtrack(a, b, inv_a, inv_b, map, used, next + 1) {
                return true;
            }
            map[next] = usize::MAX;
            used[candidate] = false;
        }
        false
    }
    if backtrack(a, b, &inv_a, &inv_b, &mut map, &mut used, 0) {
        Some(map)
    } else {
        None
    }
}
