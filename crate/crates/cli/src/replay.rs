//! Independent witness replay.
//!
//! Every negative verdict the tool emits is machine-checkable. The
//! functions here re-derive each claim straight from the instance tables
//! (the group table, the multiplication table, the raw theta maps) without
//! touching the engines that produced the witness, so a successful replay
//! does not depend on trusting the main code path.

use globact_core::{FiniteGroup, FiniteSemigroup, RewriteStep, StepKind};

pub struct RawInstance<'a> {
    pub group: &'a FiniteGroup,
    pub semigroup: &'a FiniteSemigroup,
    pub theta: &'a [Vec<Option<usize>>],
}

impl<'a> RawInstance<'a> {
    fn apply(&self, x: usize, a: usize) -> Option<usize> {
        self.theta[x][a]
    }

    /// `(x,a) ~ (y,b)` iff `(y⁻¹x)·a = b`, straight from the tables.
    fn related(&self, x: usize, a: usize, y: usize, b: usize) -> bool {
        let z = self.group.mul(self.group.inv(y), x);
        self.apply(z, a) == Some(b)
    }

    /// Lexicographically least member of the class of `(x,a)`.
    fn canonical_rep(&self, x: usize, a: usize) -> (usize, usize) {
        for y in 0..self.group.size() {
            let z = self.group.mul(self.group.inv(y), x);
            if let Some(b) = self.apply(z, a) {
                return (y, b);
            }
        }
        unreachable!("the slot of x itself always holds a member")
    }

    /// Recomputes both sides of the criterion at the witness tuple and
    /// checks the claimed values.
    pub fn verify_criterion_witness(
        &self,
        x: usize,
        u: usize,
        s: usize,
        t: usize,
        claimed_lhs: usize,
        claimed_rhs: usize,
    ) -> Result<(), String> {
        let inv = self.group.inv(x);
        if self.apply(inv, u).is_none() {
            return Err(format!("u = {u} is not in the domain of x"));
        }
        let mul = |a: usize, b: usize| self.semigroup.mul(a, b);
        let lhs = self
            .apply(inv, mul(s, u))
            .and_then(|w| self.apply(x, mul(w, t)))
            .ok_or("left-hand side undefined; domains are not ideals")?;
        let rhs = self
            .apply(inv, u)
            .and_then(|w| self.apply(x, mul(w, t)))
            .map(|w| mul(s, w))
            .ok_or("right-hand side undefined; domains are not ideals")?;
        if lhs != claimed_lhs || rhs != claimed_rhs {
            return Err(format!(
                "recomputed sides ({lhs},{rhs}) differ from the claim ({claimed_lhs},{claimed_rhs})"
            ));
        }
        if lhs == rhs {
            return Err("recomputed sides agree, so this is not a violation".into());
        }
        Ok(())
    }

    /// Replays a collapse chain letter by letter. Words are carried as
    /// canonical representatives; a step is accepted only when the claimed
    /// slot members really belong to the classes at hand.
    pub fn verify_collapse_chain(
        &self,
        from: (usize, usize),
        to: (usize, usize),
        steps: &[RewriteStep],
    ) -> Result<(), String> {
        if self.related(from.0, from.1, to.0, to.1) {
            return Err("claimed collapse endpoints are the same class".into());
        }
        let mut word = vec![self.canonical_rep(from.0, from.1)];
        for (k, step) in steps.iter().enumerate() {
            let fail = |msg: &str| Err(format!("step {k}: {msg}"));
            let product = self.semigroup.mul(step.left, step.right);
            match step.kind {
                StepKind::Reduce => {
                    if step.pos + 1 >= word.len() {
                        return fail("reduce position out of range");
                    }
                    let (y1, b1) = word[step.pos];
                    let (y2, b2) = word[step.pos + 1];
                    if !self.related(step.slot, step.left, y1, b1) {
                        return fail("left letter does not hold the claimed slot member");
                    }
                    if !self.related(step.slot, step.right, y2, b2) {
                        return fail("right letter does not hold the claimed slot member");
                    }
                    word.splice(
                        step.pos..step.pos + 2,
                        [self.canonical_rep(step.slot, product)],
                    );
                }
                StepKind::Expand => {
                    if step.pos >= word.len() {
                        return fail("expand position out of range");
                    }
                    let (y, b) = word[step.pos];
                    if !self.related(step.slot, product, y, b) {
                        return fail("letter does not factor as claimed");
                    }
                    word.splice(
                        step.pos..step.pos + 1,
                        [
                            self.canonical_rep(step.slot, step.left),
                            self.canonical_rep(step.slot, step.right),
                        ],
                    );
                }
            }
        }
        if word.len() != 1 {
            return Err("chain does not end in a one-letter word".into());
        }
        if word[0] != self.canonical_rep(to.0, to.1) {
            return Err("chain ends at a different class".into());
        }
        Ok(())
    }
}

/// Recomputes both sides of the partial-algebra condition at a claimed
/// witness cell, straight from the operation table and the raw theta maps.
pub struct RawAlgebraInstance<'a> {
    pub algebra: &'a globact_core::FinitePartialAlgebra,
    pub theta: &'a [Vec<Option<usize>>],
}

impl<'a> RawAlgebraInstance<'a> {
    pub fn verify_globalizability_witness(
        &self,
        op: usize,
        x: usize,
        args: &[usize],
        value: usize,
        claimed_lhs: Option<usize>,
        claimed_rhs: Option<usize>,
    ) -> Result<(), String> {
        if self.algebra.op_value(op, args) != Some(value) {
            return Err("witness cell is not a defined cell of the algebra".into());
        }
        let moved: Option<Vec<usize>> = args.iter().map(|&a| self.theta[x][a]).collect();
        let Some(moved) = moved else {
            return Err("witness arguments do not all move".into());
        };
        let lhs = self.algebra.op_value(op, &moved);
        let rhs = self.theta[x][value];
        if lhs != claimed_lhs || rhs != claimed_rhs {
            return Err(format!(
                "recomputed sides ({lhs:?},{rhs:?}) differ from the claim ({claimed_lhs:?},{claimed_rhs:?})"
            ));
        }
        if lhs == rhs {
            return Err("recomputed sides agree, so this is not a violation".into());
        }
        Ok(())
    }
}

/// Re-derives the first group element whose domain is not a unital ideal:
/// the domain is recomputed as the range of the raw theta map and every
/// central idempotent is scanned.
pub fn first_non_unital(
    semigroup: &FiniteSemigroup,
    theta: &[Vec<Option<usize>>],
) -> Option<usize> {
    let n = semigroup.size();
    (0..theta.len()).find(|&x| {
        let mut domain = vec![false; n];
        for a in 0..n {
            if let Some(b) = theta[x][a] {
                domain[b] = true;
            }
        }
        !(0..n).any(|e| {
            semigroup.mul(e, e) == e
                && (0..n).all(|s| semigroup.mul(e, s) == semigroup.mul(s, e))
                && {
                    let mut image = vec![false; n];
                    for s in 0..n {
                        image[semigroup.mul(e, s)] = true;
                    }
                    image == domain
                }
        })
    })
}

/// Replay data for amalgam chains: products per copy plus the amalgamating
/// maps, both taken from instance data.
pub struct RawAmalgam<'a> {
    pub amalgam: &'a globact_core::Amalgam,
}

impl<'a> RawAmalgam<'a> {
    fn mul(&self, copy: usize, a: usize, b: usize) -> usize {
        self.amalgam.algebras()[copy]
            .op_value(0, &[a, b])
            .expect("semigroup-kind amalgams are total")
    }

    pub fn verify_violation_chain(
        &self,
        from: (usize, usize),
        to: (usize, usize),
        chain: &[globact_core::AmalgamChainEntry],
    ) -> Result<(), String> {
        // The pair must genuinely violate the embeddability condition.
        if self.amalgam.iso(from.0, to.0, from.1) == Some(to.1) {
            return Err("claimed violation is an amalgamated identification".into());
        }
        let mut word = vec![(from.0, from.1)];
        for (k, entry) in chain.iter().enumerate() {
            let fail = |msg: &str| Err(format!("step {k}: {msg}"));
            use globact_core::AmalgamStep::*;
            match &entry.step {
                Reduce {
                    pos,
                    copy,
                    left,
                    right,
                } => {
                    if pos + 1 >= word.len() {
                        return fail("reduce position out of range");
                    }
                    if word[*pos] != (*copy, *left) || word[pos + 1] != (*copy, *right) {
                        return fail("letters do not match the claimed factors");
                    }
                    let value = self.mul(*copy, *left, *right);
                    word.splice(*pos..pos + 2, [(*copy, value)]);
                }
                Expand {
                    pos,
                    copy,
                    left,
                    right,
                } => {
                    if *pos >= word.len() {
                        return fail("expand position out of range");
                    }
                    if word[*pos] != (*copy, self.mul(*copy, *left, *right)) {
                        return fail("letter does not factor as claimed");
                    }
                    word.splice(*pos..pos + 1, [(*copy, *left), (*copy, *right)]);
                }
                Swap {
                    pos,
                    from_copy,
                    from_elem,
                    to_copy,
                    to_elem,
                } => {
                    if *pos >= word.len() {
                        return fail("swap position out of range");
                    }
                    if word[*pos] != (*from_copy, *from_elem) {
                        return fail("letter does not match the claimed swap source");
                    }
                    if self.amalgam.iso(*from_copy, *to_copy, *from_elem) != Some(*to_elem) {
                        return fail("swap is not an amalgamating identification");
                    }
                    word[*pos] = (*to_copy, *to_elem);
                }
            }
        }
        if word != vec![(to.0, to.1)] {
            return Err("chain does not end at the claimed letter".into());
        }
        Ok(())
    }
}
