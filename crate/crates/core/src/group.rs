//! Finite groups as element-indexed multiplication tables.

use crate::validation::ValidationReport;
use crate::{Error, Result};

/// A finite group on elements `0..size` with a validated multiplication
/// table. Element names are metadata only; all computation is index-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    names: Vec<String>,
    mul: Vec<usize>, // row-major size×size
    identity: usize,
    inv: Vec<usize>,
}

/// Exhaustive axiom check of a candidate group table. Assumes entries are
/// already in range; reports one witness per violated axiom.
pub fn validate_group_table(size: usize, mul: &[usize]) -> ValidationReport {
    let mut report = ValidationReport::valid();
    let at = |a: usize, b: usize| mul[a * size + b];
    'assoc: for a in 0..size {
        for b in 0..size {
            for c in 0..size {
                if at(at(a, b), c) != at(a, at(b, c)) {
                    report.record(
                        "associativity",
                        format!(
                            "({a}*{b})*{c} = {}, {a}*({b}*{c}) = {}",
                            at(at(a, b), c),
                            at(a, at(b, c))
                        ),
                    );
                    break 'assoc;
                }
            }
        }
    }
    let identity = (0..size).find(|&e| (0..size).all(|a| at(e, a) == a && at(a, e) == a));
    match identity {
        None => report.record("identity", "no two-sided identity element"),
        Some(e) => {
            for a in 0..size {
                if !(0..size).any(|b| at(a, b) == e && at(b, a) == e) {
                    report.record("inverses", format!("element {a} has no two-sided inverse"));
                    break;
                }
            }
        }
    }
    report
}

impl FiniteGroup {
    /// Builds a group from a multiplication table given as rows of element
    /// indices. The identity and inverses are derived and all axioms are
    /// checked exhaustively.
    pub fn new(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let size = names.len();
        if size == 0 {
            return Err(Error::Malformed("group must be nonempty".into()));
        }
        if table.len() != size || table.iter().any(|row| row.len() != size) {
            return Err(Error::Malformed(format!(
                "group table must be {size}x{size}"
            )));
        }
        let mul: Vec<usize> = table.into_iter().flatten().collect();
        if let Some(&bad) = mul.iter().find(|&&e| e >= size) {
            return Err(Error::Malformed(format!(
                "group table entry {bad} out of range"
            )));
        }
        validate_group_table(size, &mul).into_result()?;
        let at = |a: usize, b: usize| mul[a * size + b];
        let identity = (0..size)
            .find(|&e| (0..size).all(|a| at(e, a) == a && at(a, e) == a))
            .expect("validated");
        let inv = (0..size)
            .map(|a| {
                (0..size)
                    .find(|&b| at(a, b) == identity)
                    .expect("validated")
            })
            .collect();
        Ok(FiniteGroup {
            names,
            mul,
            identity,
            inv,
        })
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.size() + y]
    }

    pub fn inv(&self, x: usize) -> usize {
        self.inv[x]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn element_by_name(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Cyclic group of order `n`, identity named "1", generator named "g".
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let names = (0..n)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "g".to_string(),
                _ => format!("g{i}"),
            })
            .collect();
        let table = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        FiniteGroup::new(names, table).expect("cyclic table is a group")
    }

    /// The Klein four-group.
    pub fn klein() -> Self {
        let names = ["1", "a", "b", "ab"].map(String::from).to_vec();
        let table = vec![
            vec![0, 1, 2, 3],
            vec![1, 0, 3, 2],
            vec![2, 3, 0, 1],
            vec![3, 2, 1, 0],
        ];
        FiniteGroup::new(names, table).expect("klein table is a group")
    }

    /// The symmetric group on three points.
    pub fn symmetric3() -> Self {
        // Elements as permutations of {0,1,2} in one-line notation.
        let perms: [[usize; 3]; 6] = [
            [0, 1, 2],
            [1, 2, 0],
            [2, 0, 1],
            [1, 0, 2],
            [0, 2, 1],
            [2, 1, 0],
        ];
        let names = ["1", "r", "r2", "s", "rs", "r2s"]
            .map(String::from)
            .to_vec();
        let compose = |p: &[usize; 3], q: &[usize; 3]| [p[q[0]], p[q[1]], p[q[2]]];
        let table = perms
            .iter()
            .map(|p| {
                perms
                    .iter()
                    .map(|q| {
                        let pq = compose(p, q);
                        perms.iter().position(|r| *r == pq).unwrap()
                    })
                    .collect()
            })
            .collect();
        FiniteGroup::new(names, table).expect("S3 table is a group")
    }
}
