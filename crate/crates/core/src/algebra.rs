//! Partial algebras of arbitrary finite type.
//!
//! Operations are stored as dense row-major tables over the carrier, with
//! `None` marking undefined cells, so definedness is an O(1) lookup. A total
//! algebra is the special case with no undefined cells. A nullary operation
//! is a single optional cell.

use crate::util::{tuple_index, tuples};
use crate::{Error, Result};

/// The arities of the operation symbols.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeSignature {
    arities: Vec<usize>,
}

impl TypeSignature {
    pub fn new(arities: Vec<usize>) -> Self {
        TypeSignature { arities }
    }

    pub fn arity(&self, op: usize) -> usize {
        self.arities[op]
    }

    pub fn len(&self) -> usize {
        self.arities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arities.is_empty()
    }

    pub fn arities(&self) -> &[usize] {
        &self.arities
    }
}

/// A finite partial algebra: carrier `0..size`, one partial table per
/// operation symbol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePartialAlgebra {
    names: Vec<String>,
    signature: TypeSignature,
    ops: Vec<Vec<Option<usize>>>, // ops[γ] has length size^arity(γ)
}

impl FinitePartialAlgebra {
    pub fn new(
        names: Vec<String>,
        signature: TypeSignature,
        ops: Vec<Vec<Option<usize>>>,
    ) -> Result<Self> {
        let size = names.len();
        if size == 0 {
            return Err(Error::Malformed("carrier must be nonempty".into()));
        }
        if ops.len() != signature.len() {
            return Err(Error::Malformed(format!(
                "expected {} operation tables, got {}",
                signature.len(),
                ops.len()
            )));
        }
        for (gamma, table) in ops.iter().enumerate() {
            let expected = size.pow(signature.arity(gamma) as u32);
            if table.len() != expected {
                return Err(Error::Malformed(format!(
                    "operation {gamma} table has {} cells, expected {expected}",
                    table.len()
                )));
            }
            if let Some(bad) = table.iter().flatten().find(|&&v| v >= size) {
                return Err(Error::Malformed(format!(
                    "operation {gamma} value {bad} out of range"
                )));
            }
        }
        Ok(FinitePartialAlgebra {
            names,
            signature,
            ops,
        })
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn signature(&self) -> &TypeSignature {
        &self.signature
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

    pub fn op_value(&self, op: usize, args: &[usize]) -> Option<usize> {
        debug_assert_eq!(args.len(), self.signature.arity(op));
        self.ops[op][tuple_index(self.size(), args)]
    }

    pub fn is_total(&self) -> bool {
        self.ops.iter().all(|t| t.iter().all(Option::is_some))
    }

    /// All defined cells of one operation, as `(args, value)` pairs in
    /// row-major order.
    pub fn defined_cells(&self, op: usize) -> Vec<(Vec<usize>, usize)> {
        tuples(self.size(), self.signature.arity(op))
            .filter_map(|args| self.op_value(op, &args).map(|v| (args, v)))
            .collect()
    }

    /// Whether `subset` is closed under every operation; a witness names
    /// the escaping cell.
    pub fn closure_witness(&self, subset: &[usize]) -> Option<(usize, Vec<usize>, usize)> {
        let mut member = vec![false; self.size()];
        for &a in subset {
            member[a] = true;
        }
        for op in 0..self.signature.len() {
            for (args, value) in self.defined_cells(op) {
                if args.iter().all(|&a| member[a]) && !member[value] {
                    return Some((op, args, value));
                }
            }
        }
        None
    }

    /// The relative subalgebra on `subset` (re-indexed densely, names kept):
    /// a cell is defined iff it is defined in the ambient algebra with all
    /// arguments and the value inside the subset.
    pub fn relative_subalgebra(&self, subset: &[usize]) -> Result<FinitePartialAlgebra> {
        if subset.is_empty() {
            return Err(Error::Malformed("relative subalgebra on empty set".into()));
        }
        let mut back = vec![None; self.size()];
        for (new, &old) in subset.iter().enumerate() {
            if old >= self.size() {
                return Err(Error::Malformed(format!(
                    "subset element {old} out of range"
                )));
            }
            back[old] = Some(new);
        }
        let names = subset.iter().map(|&a| self.names[a].clone()).collect();
        let mut ops = Vec::new();
        for op in 0..self.signature.len() {
            let arity = self.signature.arity(op);
            let mut table = vec![None; subset.len().pow(arity as u32)];
            for args in tuples(subset.len(), arity) {
                let ambient: Vec<usize> = args.iter().map(|&a| subset[a]).collect();
                if let Some(v) = self.op_value(op, &ambient) {
                    table[tuple_index(subset.len(), &args)] = back[v];
                }
            }
            ops.push(table);
        }
        FinitePartialAlgebra::new(names, self.signature.clone(), ops)
    }

    /// Graph encoding: each `n`-ary partial operation becomes the
    /// `(n+1)`-ary relation of its defined cells.
    pub fn to_relational(&self) -> crate::relational::RelationalSystem {
        let relations = (0..self.signature.len())
            .map(|op| {
                let tuples = self
                    .defined_cells(op)
                    .into_iter()
                    .map(|(mut args, v)| {
                        args.push(v);
                        args
                    })
                    .collect();
                crate::relational::Relation::new(self.signature.arity(op) + 1, tuples)
            })
            .collect();
        crate::relational::RelationalSystem::new(self.size(), relations)
            .expect("graph tuples are in range")
    }
}

/// Checks that `map` (a total map from `a`'s carrier to `b`'s) is a
/// homomorphism: defined cells map to defined cells with matching values.
/// Returns a rendered witness on failure.
pub fn homomorphism_witness(
    a: &FinitePartialAlgebra,
    b: &FinitePartialAlgebra,
    map: &[usize],
) -> Option<String> {
    if map.len() != a.size() || map.iter().any(|&v| v >= b.size()) {
        return Some("map is not a total function into the target carrier".into());
    }
    if a.signature() != b.signature() {
        return Some("signatures differ".into());
    }
    for op in 0..a.signature().len() {
        for (args, value) in a.defined_cells(op) {
            let mapped: Vec<usize> = args.iter().map(|&x| map[x]).collect();
            match b.op_value(op, &mapped) {
                Some(w) if w == map[value] => {}
                other => {
                    return Some(format!(
                        "f{op}{args:?} = {value} maps to f{op}{mapped:?} = {other:?}, expected {}",
                        map[value]
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

    fn unary(names: &[&str], table: Vec<Option<usize>>) -> FinitePartialAlgebra {
        FinitePartialAlgebra::new(
            names.iter().map(|s| s.to_string()).collect(),
            TypeSignature::new(vec![1]),
            vec![table],
        )
        .unwrap()
    }

    #[test]
    fn definedness_and_totality() {
        let alg = unary(&["a", "b"], vec![Some(1), None]);
        assert_eq!(alg.op_value(0, &[0]), Some(1));
        assert_eq!(alg.op_value(0, &[1]), None);
        assert!(!alg.is_total());
    }

    #[test]
    fn nullary_op_is_single_cell() {
        let alg = FinitePartialAlgebra::new(
            vec!["a".into()],
            TypeSignature::new(vec![0]),
            vec![vec![Some(0)]],
        )
        .unwrap();
        assert_eq!(alg.op_value(0, &[]), Some(0));
    }

    #[test]
    fn relative_subalgebra_restricts_both_ways() {
        // f: a -> b -> c on a 3-chain; restrict to {a, c}.
        let alg = unary(&["a", "b", "c"], vec![Some(1), Some(2), None]);
        let sub = alg.relative_subalgebra(&[0, 2]).unwrap();
        // f(a) = b escapes the subset, so it is undefined relatively.
        assert_eq!(sub.op_value(0, &[0]), None);
        assert_eq!(sub.op_value(0, &[1]), None);
        assert_eq!(sub.name(1), "c");
    }

    #[test]
    fn closure_witness_finds_escape() {
        let alg = unary(&["a", "b"], vec![Some(1), Some(1)]);
        assert!(alg.closure_witness(&[0]).is_some());
        assert!(alg.closure_witness(&[0, 1]).is_none());
    }

    #[test]
    fn homomorphism_witness_accepts_and_rejects() {
        let a = unary(&["a", "b"], vec![Some(1), None]);
        let b = unary(&["x", "y"], vec![Some(1), Some(0)]);
        // a↦x, b↦y: f(a)=b ↦ f(x)=y ok; f(b) undefined imposes nothing.
        assert!(homomorphism_witness(&a, &b, &[0, 1]).is_none());
        // a↦y, b↦y: f(a)=b needs f(y)=y but f(y)=x.
        assert!(homomorphism_witness(&a, &b, &[1, 1]).is_some());
    }
}
