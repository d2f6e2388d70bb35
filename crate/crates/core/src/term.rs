//! Terms over a partial algebra: evaluation, evaluation normal forms, and
//! the extension of a partial action to terms.
//!
//! Two terms are congruent in the free completion exactly when their normal
//! forms coincide; the normal form collapses every subterm with a defined
//! value to that value-letter, innermost first, to a fixpoint.

use crate::action::PartialAction;
use crate::algebra::FinitePartialAlgebra;

/// A term over the carrier of an algebra: leaves are carrier elements,
/// nodes are operation symbols applied to child terms.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Leaf(usize),
    Node(usize, Vec<Term>),
}

impl Term {
    /// Word length: 1 for a letter or a nullary symbol, otherwise
    /// 1 + the sum over the children. Never zero.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        match self {
            Term::Leaf(_) => 1,
            Term::Node(_, children) => 1 + children.iter().map(Term::len).sum::<usize>(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Leaf(_) => 0,
            Term::Node(_, children) => 1 + children.iter().map(Term::depth).max().unwrap_or(0),
        }
    }

    /// All leaf elements, left to right.
    pub fn leaves(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<usize>) {
        match self {
            Term::Leaf(a) => out.push(*a),
            Term::Node(_, children) => children.iter().for_each(|c| c.collect_leaves(out)),
        }
    }

    pub fn render(&self, alg: &FinitePartialAlgebra) -> String {
        match self {
            Term::Leaf(a) => alg.name(*a).to_string(),
            Term::Node(op, children) => {
                let inner: Vec<String> = children.iter().map(|c| c.render(alg)).collect();
                format!("f{op}({})", inner.join(","))
            }
        }
    }
}

/// The value of a term: a letter evaluates to itself, a node evaluates to
/// the operation applied to the children's values; undefined propagates.
pub fn term_value(alg: &FinitePartialAlgebra, term: &Term) -> Option<usize> {
    match term {
        Term::Leaf(a) => Some(*a),
        Term::Node(op, children) => {
            let args: Option<Vec<usize>> = children.iter().map(|c| term_value(alg, c)).collect();
            alg.op_value(*op, &args?)
        }
    }
}

/// Innermost collapse of defined-value subterms to their value-letters,
/// carried to a fixpoint. The result is a letter iff the term has a value.
pub fn theta_normal_form(alg: &FinitePartialAlgebra, term: &Term) -> Term {
    match term {
        Term::Leaf(a) => Term::Leaf(*a),
        Term::Node(op, children) => {
            let reduced: Vec<Term> = children.iter().map(|c| theta_normal_form(alg, c)).collect();
            let as_letters: Option<Vec<usize>> = reduced
                .iter()
                .map(|c| match c {
                    Term::Leaf(a) => Some(*a),
                    Term::Node(..) => None,
                })
                .collect();
            if let Some(args) = as_letters {
                if let Some(v) = alg.op_value(*op, &args) {
                    return Term::Leaf(v);
                }
            }
            Term::Node(*op, reduced)
        }
    }
}

/// Whether the normal forms coincide, i.e. the pair lies in the congruence
/// of the free completion.
pub fn theta_related(alg: &FinitePartialAlgebra, lhs: &Term, rhs: &Term) -> bool {
    theta_normal_form(alg, lhs) == theta_normal_form(alg, rhs)
}

/// The extension of a partial action to terms: defined iff the action is
/// defined on every leaf, in which case it maps leaves and keeps the shape.
/// Nullary symbols are fixed.
pub fn extend_action_to_term(action: &PartialAction, x: usize, term: &Term) -> Option<Term> {
    match term {
        Term::Leaf(a) => action.apply(x, *a).map(Term::Leaf),
        Term::Node(op, children) => {
            let moved: Option<Vec<Term>> = children
                .iter()
                .map(|c| extend_action_to_term(action, x, c))
                .collect();
            Some(Term::Node(*op, moved?))
        }
    }
}
