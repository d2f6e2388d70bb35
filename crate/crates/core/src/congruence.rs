//! Congruences on finite partial algebras: generated closure, quotients,
//! and preimages along homomorphisms.

use crate::algebra::{homomorphism_witness, FinitePartialAlgebra};
use crate::util::{tuples, UnionFind};
use crate::{Error, Result};

/// A partition of a carrier, stored as the least member of each block.
/// Whether it is a *congruence* depends on the algebra it is paired with;
/// see [`Congruence::substitution_witness`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Congruence {
    rep: Vec<usize>,
}

impl Congruence {
    pub fn identity(size: usize) -> Self {
        Congruence {
            rep: (0..size).collect(),
        }
    }

    pub fn from_representatives(rep: Vec<usize>) -> Result<Self> {
        let size = rep.len();
        for (a, &r) in rep.iter().enumerate() {
            if r >= size || rep[r] != r || r > a {
                return Err(Error::Malformed(format!(
                    "element {a} has non-canonical representative {r}"
                )));
            }
        }
        Ok(Congruence { rep })
    }

    fn from_union_find(uf: &mut UnionFind) -> Self {
        let rep = (0..uf.len()).map(|a| uf.find(a)).collect();
        Congruence { rep }
    }

    /// The smallest congruence on `alg` containing `pairs`: union-find
    /// seeded with the pairs, then a worklist fixpoint over pairs of defined
    /// cells with componentwise-related arguments.
    pub fn generated_by(alg: &FinitePartialAlgebra, pairs: &[(usize, usize)]) -> Result<Self> {
        let size = alg.size();
        let mut uf = UnionFind::new(size);
        for &(a, b) in pairs {
            if a >= size || b >= size {
                return Err(Error::Malformed(format!("pair ({a},{b}) out of range")));
            }
            uf.union(a, b);
        }
        let cells: Vec<Vec<(Vec<usize>, usize)>> = (0..alg.signature().len())
            .map(|op| alg.defined_cells(op))
            .collect();
        loop {
            let mut changed = false;
            for op_cells in &cells {
                for i in 0..op_cells.len() {
                    for j in i + 1..op_cells.len() {
                        let (ref args_a, val_a) = op_cells[i];
                        let (ref args_b, val_b) = op_cells[j];
                        let related = args_a
                            .iter()
                            .zip(args_b.iter())
                            .all(|(&a, &b)| uf.same(a, b));
                        if related && uf.union(val_a, val_b) {
                            changed = true;
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
        Ok(Congruence::from_union_find(&mut uf))
    }

    pub fn size(&self) -> usize {
        self.rep.len()
    }

    pub fn representative(&self, a: usize) -> usize {
        self.rep[a]
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.rep[a] == self.rep[b]
    }

    /// Blocks in increasing order of their least element.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut index = vec![usize::MAX; self.rep.len()];
        for a in 0..self.rep.len() {
            let r = self.rep[a];
            if index[r] == usize::MAX {
                index[r] = blocks.len();
                blocks.push(Vec::new());
            }
            blocks[index[r]].push(a);
        }
        blocks
    }

    /// Checks the substitution property on `alg`; returns a rendered witness
    /// pair of cells on failure.
    pub fn substitution_witness(&self, alg: &FinitePartialAlgebra) -> Option<String> {
        for op in 0..alg.signature().len() {
            let cells = alg.defined_cells(op);
            for (i, (args_a, val_a)) in cells.iter().enumerate() {
                for (args_b, val_b) in &cells[i + 1..] {
                    let related = args_a
                        .iter()
                        .zip(args_b.iter())
                        .all(|(&a, &b)| self.related(a, b));
                    if related && !self.related(*val_a, *val_b) {
                        return Some(format!(
                            "f{op}{args_a:?} = {val_a} but f{op}{args_b:?} = {val_b} are unrelated"
                        ));
                    }
                }
            }
        }
        None
    }

    /// Quotient algebra: carrier = blocks; a block-tuple cell is defined iff
    /// some representative tuple is defined. All defined representative
    /// tuples must agree modulo the partition, otherwise the partition was
    /// not a congruence.
    pub fn quotient(&self, alg: &FinitePartialAlgebra) -> Result<FinitePartialAlgebra> {
        if self.rep.len() != alg.size() {
            return Err(Error::Malformed(
                "partition size differs from carrier".into(),
            ));
        }
        let blocks = self.blocks();
        let mut block_of = vec![usize::MAX; alg.size()];
        for (bi, block) in blocks.iter().enumerate() {
            for &a in block {
                block_of[a] = bi;
            }
        }
        let names: Vec<String> = blocks
            .iter()
            .map(|block| {
                let inner: Vec<&str> = block.iter().map(|&a| alg.name(a)).collect();
                format!("{{{}}}", inner.join(","))
            })
            .collect();
        let mut ops = Vec::new();
        for op in 0..alg.signature().len() {
            let arity = alg.signature().arity(op);
            let mut table = vec![None; blocks.len().pow(arity as u32)];
            for (args, value) in alg.defined_cells(op) {
                let block_args: Vec<usize> = args.iter().map(|&a| block_of[a]).collect();
                let idx = crate::util::tuple_index(blocks.len(), &block_args);
                let bv = block_of[value];
                match table[idx] {
                    None => table[idx] = Some(bv),
                    Some(prev) if prev == bv => {}
                    Some(prev) => {
                        return Err(Error::InvalidCongruence(format!(
                            "f{op} on block tuple {block_args:?} yields blocks {prev} and {bv}"
                        )));
                    }
                }
            }
            ops.push(table);
        }
        FinitePartialAlgebra::new(names, alg.signature().clone(), ops)
    }

    /// Pullback of a congruence along a homomorphism: `a` and `b` are related
    /// iff their images are. The map is validated first.
    pub fn preimage(
        source: &FinitePartialAlgebra,
        target: &FinitePartialAlgebra,
        map: &[usize],
        target_congruence: &Congruence,
    ) -> Result<Congruence> {
        if let Some(witness) = homomorphism_witness(source, target, map) {
            return Err(Error::NotAMorphism(witness));
        }
        if target_congruence.size() != target.size() {
            return Err(Error::Malformed(
                "target congruence size differs from target carrier".into(),
            ));
        }
        let mut uf = UnionFind::new(source.size());
        for a in 0..source.size() {
            for b in a + 1..source.size() {
                if target_congruence.related(map[a], map[b]) {
                    uf.union(a, b);
                }
            }
        }
        Ok(Congruence::from_union_find(&mut uf))
    }

    /// Image closure: the congruence on `target` generated by the image of
    /// `pairs` under `map`.
    pub fn image_closure(
        target: &FinitePartialAlgebra,
        map: &[usize],
        pairs: &[(usize, usize)],
    ) -> Result<Congruence> {
        let mapped: Vec<(usize, usize)> = pairs.iter().map(|&(a, b)| (map[a], map[b])).collect();
        Congruence::generated_by(target, &mapped)
    }

    /// Image of this congruence as a pair list (block edges), for pushing
    /// a congruence through a quotient map.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for block in self.blocks() {
            for w in block.windows(2) {
                out.push((w[0], w[1]));
            }
        }
        out
    }
}

/// Brute-force oracle: enumerate every partition of `0..size` (size ≤ 5 or
/// so), keep those with the substitution property containing `pairs`, and
/// intersect them. Used by tests to pin [`Congruence::generated_by`].
pub fn minimal_congruence_by_enumeration(
    alg: &FinitePartialAlgebra,
    pairs: &[(usize, usize)],
) -> Congruence {
    let size = alg.size();
    // Enumerate partitions as restricted-growth strings.
    let mut intersected: Vec<Vec<bool>> = vec![vec![true; size]; size];
    let mut any = false;
    for rgs in tuples(size, size) {
        let mut max = 0;
        let mut ok = true;
        for &v in rgs.iter() {
            if v > max {
                ok = false;
                break;
            }
            if v == max {
                max += 1;
            }
        }
        if !ok {
            continue;
        }
        let cong = {
            let mut rep = vec![usize::MAX; size];
            let mut first = vec![usize::MAX; size];
            for (i, &v) in rgs.iter().enumerate() {
                if first[v] == usize::MAX {
                    first[v] = i;
                }
                rep[i] = first[v];
            }
            Congruence { rep }
        };
        if !pairs.iter().all(|&(a, b)| cong.related(a, b)) {
            continue;
        }
        if cong.substitution_witness(alg).is_some() {
            continue;
        }
        any = true;
        for a in 0..size {
            for b in 0..size {
                if !cong.related(a, b) {
                    intersected[a][b] = false;
                }
            }
        }
    }
    assert!(any, "the full relation is always a congruence");
    let mut uf = UnionFind::new(size);
    for a in 0..size {
        for b in 0..size {
            if intersected[a][b] {
                uf.union(a, b);
            }
        }
    }
    Congruence::from_union_find(&mut uf)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{paper_semigroup, z4_semigroup};

    #[test]
    fn empty_pairs_give_identity_partition() {
        let alg = paper_semigroup().to_algebra();
        let c = Congruence::generated_by(&alg, &[]).unwrap();
        assert_eq!(c, Congruence::identity(4));
    }

    #[test]
    fn paper_semigroup_u_zero_closure() {
        let alg = paper_semigroup().to_algebra();
        // Identifying u with 0 stays put: all products touching u or 0 are 0.
        let c = Congruence::generated_by(&alg, &[(1, 0)]).unwrap();
        assert_eq!(c.blocks(), vec![vec![0, 1], vec![2], vec![3]]);
        // The quotient is a 3-element semigroup.
        let q = c.quotient(&alg).unwrap();
        assert_eq!(q.size(), 3);
        assert!(q.is_total());
    }

    #[test]
    fn z4_zero_two_closure_and_quotient() {
        let alg = z4_semigroup().to_algebra();
        let c = Congruence::generated_by(&alg, &[(0, 2)]).unwrap();
        assert_eq!(c.blocks(), vec![vec![0, 2], vec![1, 3]]);
        let q = c.quotient(&alg).unwrap();
        assert_eq!(q.size(), 2);
        // The quotient is Z_2 under addition.
        assert_eq!(q.op_value(0, &[1, 1]), Some(0));
        assert_eq!(q.op_value(0, &[0, 1]), Some(1));
    }

    #[test]
    fn quotient_by_identity_is_isomorphic_copy() {
        let alg = paper_semigroup().to_algebra();
        let q = Congruence::identity(4).quotient(&alg).unwrap();
        assert!(crate::iso::find_isomorphism(&alg, &q).is_some());
    }

    #[test]
    fn preimage_of_identity_along_mod_two() {
        let z4 = z4_semigroup().to_algebra();
        let z2 = {
            let c = Congruence::generated_by(&z4, &[(0, 2)]).unwrap();
            c.quotient(&z4).unwrap()
        };
        let map = vec![0, 1, 0, 1];
        let pre = Congruence::preimage(&z4, &z2, &map, &Congruence::identity(2)).unwrap();
        assert_eq!(pre.blocks(), vec![vec![0, 2], vec![1, 3]]);
        assert!(pre.substitution_witness(&z4).is_none());
    }

    #[test]
    fn preimage_rejects_non_homomorphism() {
        let z4 = z4_semigroup().to_algebra();
        let err = Congruence::preimage(&z4, &z4, &[0, 0, 1, 0], &Congruence::identity(4));
        assert!(matches!(err, Err(Error::NotAMorphism(_))));
    }

    #[test]
    fn preimage_along_constant_map_is_full() {
        let alg = paper_semigroup().to_algebra();
        let one = FinitePartialAlgebra::new(
            vec!["e".into()],
            alg.signature().clone(),
            vec![vec![Some(0); 1]],
        )
        .unwrap();
        let pre =
            Congruence::preimage(&alg, &one, &[0, 0, 0, 0], &Congruence::identity(1)).unwrap();
        assert_eq!(pre.blocks().len(), 1);
    }

    #[test]
    fn closure_matches_enumeration_oracle() {
        let alg = paper_semigroup().to_algebra();
        for pairs in [vec![(1usize, 0usize)], vec![(2, 3)], vec![(1, 2), (0, 3)]] {
            let fast = Congruence::generated_by(&alg, &pairs).unwrap();
            let slow = minimal_congruence_by_enumeration(&alg, &pairs);
            assert_eq!(fast, slow, "pairs {pairs:?}");
        }
    }
}
