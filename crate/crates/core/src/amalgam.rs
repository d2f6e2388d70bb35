//! Generalized amalgams, the amalgam of a partial action, embedding
//! verification, and bounded embeddability analysis through the free
//! product with amalgamated subalgebras.

use crate::algebra::{homomorphism_witness, FinitePartialAlgebra};
use crate::algebra_action::AlgebraPartialAction;
use crate::semigroup::validate_semigroup_table;
use crate::wordstore::WordClosure;
use crate::{Error, Result};

/// An indexed family of algebras with pairwise identified subalgebras:
/// `A_ij ⊆ A_i` and coherent isomorphisms `α_ij : A_ij → A_ji` with
/// `α_ji = α_ij⁻¹`, `A_ii = A_i`, `α_ii = id`.
#[derive(Debug, Clone)]
pub struct Amalgam {
    algebras: Vec<FinitePartialAlgebra>,
    /// Index names (group element names for action-derived amalgams).
    labels: Vec<String>,
    intersections: Vec<Vec<Vec<usize>>>, // [i][j]: sorted subset of A_i
    isos: Vec<Vec<Vec<Option<usize>>>>,  // [i][j][a]: α_ij(a), defined iff a ∈ A_ij
}

/// A single amalgamation given to [`Amalgam::new`]: the subset of `A_i`
/// identified with a subset of `A_j` via `map`.
#[derive(Debug, Clone)]
pub struct Amalgamation {
    pub i: usize,
    pub j: usize,
    pub elements: Vec<usize>,
    pub map: Vec<(usize, usize)>,
}

impl Amalgam {
    /// Builds and fully validates an amalgam. Pairs not mentioned get the
    /// empty amalgamation; `(j,i)` is derived from `(i,j)` when absent.
    pub fn new(
        algebras: Vec<FinitePartialAlgebra>,
        labels: Vec<String>,
        amalgamations: Vec<Amalgamation>,
    ) -> Result<Self> {
        let k = algebras.len();
        if k == 0 {
            return Err(Error::Malformed(
                "amalgam needs at least one algebra".into(),
            ));
        }
        if labels.len() != k {
            return Err(Error::Malformed("one label per algebra required".into()));
        }
        let signature = algebras[0].signature().clone();
        if algebras.iter().any(|a| a.signature() != &signature) {
            return Err(Error::Malformed(
                "amalgam algebras must share a signature".into(),
            ));
        }
        let mut intersections: Vec<Vec<Vec<usize>>> = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| {
                        if i == j {
                            (0..algebras[i].size()).collect()
                        } else {
                            Vec::new()
                        }
                    })
                    .collect()
            })
            .collect();
        let mut isos: Vec<Vec<Vec<Option<usize>>>> = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| {
                        if i == j {
                            (0..algebras[i].size()).map(Some).collect()
                        } else {
                            vec![None; algebras[i].size()]
                        }
                    })
                    .collect()
            })
            .collect();
        let mut given = vec![vec![false; k]; k];
        for am in amalgamations {
            let (i, j) = (am.i, am.j);
            if i >= k || j >= k {
                return Err(Error::Malformed(format!(
                    "amalgamation indices ({i},{j}) out of range"
                )));
            }
            if i == j {
                return Err(Error::Malformed(
                    "diagonal amalgamations are implicit".into(),
                ));
            }
            if given[i][j] {
                return Err(Error::Malformed(format!(
                    "duplicate amalgamation ({i},{j})"
                )));
            }
            given[i][j] = true;
            let mut subset = am.elements.clone();
            subset.sort_unstable();
            subset.dedup();
            if subset.iter().any(|&a| a >= algebras[i].size()) {
                return Err(Error::Malformed(format!(
                    "amalgamation ({i},{j}) element out of range"
                )));
            }
            let mut iso = vec![None; algebras[i].size()];
            for &(a, b) in &am.map {
                if a >= algebras[i].size() || b >= algebras[j].size() {
                    return Err(Error::Malformed(format!(
                        "amalgamation ({i},{j}) map entry out of range"
                    )));
                }
                if iso[a].replace(b).is_some() {
                    return Err(Error::Malformed(format!(
                        "amalgamation ({i},{j}) maps {a} twice"
                    )));
                }
            }
            for &a in &subset {
                if iso[a].is_none() {
                    return Err(Error::Malformed(format!(
                        "amalgamation ({i},{j}) misses element {a}"
                    )));
                }
            }
            for (a, image) in iso.iter().enumerate() {
                if image.is_some() && subset.binary_search(&a).is_err() {
                    return Err(Error::Malformed(format!(
                        "amalgamation ({i},{j}) maps {a} outside its subset"
                    )));
                }
            }
            intersections[i][j] = subset;
            isos[i][j] = iso;
        }
        // Derive or cross-check the opposite direction.
        for i in 0..k {
            for j in 0..k {
                if i == j || !given[i][j] {
                    continue;
                }
                let mut inverse = vec![None; algebras[j].size()];
                let mut image: Vec<usize> = Vec::new();
                for (a, b) in isos[i][j].iter().enumerate() {
                    if let Some(b) = b {
                        if inverse[*b].replace(a).is_some() {
                            return Err(Error::Malformed(format!(
                                "amalgamation ({i},{j}) is not injective"
                            )));
                        }
                        image.push(*b);
                    }
                }
                image.sort_unstable();
                if given[j][i] {
                    if intersections[j][i] != image || isos[j][i] != inverse {
                        return Err(Error::Malformed(format!(
                            "amalgamations ({i},{j}) and ({j},{i}) are not mutually inverse"
                        )));
                    }
                } else {
                    intersections[j][i] = image;
                    isos[j][i] = inverse;
                    given[j][i] = true;
                }
            }
        }
        let amalgam = Amalgam {
            algebras,
            labels,
            intersections,
            isos,
        };
        amalgam.validate()?;
        Ok(amalgam)
    }

    fn validate(&self) -> Result<()> {
        for i in 0..self.len() {
            for j in 0..self.len() {
                // Each A_ij must be closed under the operations of A_i.
                if let Some((op, args, value)) =
                    self.algebras[i].closure_witness(&self.intersections[i][j])
                {
                    return Err(Error::Malformed(format!(
                        "A[{i}][{j}] is not a subalgebra: f{op}{args:?} = {value} escapes"
                    )));
                }
                // α_ij must be an isomorphism of the induced subalgebras.
                if i != j {
                    if let Some(w) = self.iso_witness(i, j) {
                        return Err(Error::Malformed(format!(
                            "α[{i}][{j}] is not an isomorphism: {w}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn iso_witness(&self, i: usize, j: usize) -> Option<String> {
        let sub_i = &self.intersections[i][j];
        for op in 0..self.signature().len() {
            let arity = self.algebras[i].signature().arity(op);
            for args in crate::util::tuples(sub_i.len(), arity) {
                let concrete: Vec<usize> = args.iter().map(|&p| sub_i[p]).collect();
                let mapped: Vec<usize> = concrete
                    .iter()
                    .map(|&a| self.isos[i][j][a].expect("subset element"))
                    .collect();
                let lhs = self.algebras[i].op_value(op, &concrete);
                let rhs = self.algebras[j].op_value(op, &mapped);
                match (lhs, rhs) {
                    (Some(v), Some(w)) if self.isos[i][j][v] == Some(w) => {}
                    (None, None) => {}
                    _ => {
                        return Some(format!(
                            "f{op}{concrete:?} = {lhs:?} maps to f{op}{mapped:?} = {rhs:?}"
                        ));
                    }
                }
            }
        }
        None
    }

    pub fn len(&self) -> usize {
        self.algebras.len()
    }

    pub fn is_empty(&self) -> bool {
        self.algebras.is_empty()
    }

    pub fn algebras(&self) -> &[FinitePartialAlgebra] {
        &self.algebras
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn intersection(&self, i: usize, j: usize) -> &[usize] {
        &self.intersections[i][j]
    }

    pub fn iso(&self, i: usize, j: usize, a: usize) -> Option<usize> {
        self.isos[i][j][a]
    }

    fn signature(&self) -> &crate::algebra::TypeSignature {
        self.algebras[0].signature()
    }

    /// The compatibility conditions on triples: `α_xy` maps
    /// `A_xy ∩ A_xz` onto `A_yz ∩ A_yx`, and `α_yz ∘ α_xy = α_xz` there.
    pub fn triple_condition_witness(&self) -> Option<String> {
        for x in 0..self.len() {
            for y in 0..self.len() {
                for z in 0..self.len() {
                    let mut image: Vec<usize> = Vec::new();
                    for a in 0..self.algebras[x].size() {
                        let in_xy = self.isos[x][y][a].is_some();
                        let in_xz = self.isos[x][z][a].is_some();
                        if !(in_xy && in_xz) {
                            continue;
                        }
                        let b = self.isos[x][y][a].unwrap();
                        image.push(b);
                        let via = self.isos[y][z][b];
                        let direct = self.isos[x][z][a];
                        match (via, direct) {
                            (Some(v), Some(d)) if v == d => {}
                            _ => {
                                return Some(format!(
                                    "α[{y}][{z}]∘α[{x}][{y}] and α[{x}][{z}] differ at {a}"
                                ));
                            }
                        }
                    }
                    image.sort_unstable();
                    let target: Vec<usize> = (0..self.algebras[y].size())
                        .filter(|&b| self.isos[y][z][b].is_some() && self.isos[y][x][b].is_some())
                        .collect();
                    if image != target {
                        return Some(format!(
                            "α[{x}][{y}](A∩) = {image:?} but A[{y}][{z}]∩A[{y}][{x}] = {target:?}"
                        ));
                    }
                }
            }
        }
        None
    }

    /// The amalgam of a partial action: one copy of the algebra per group
    /// element, `A_{x,y} = D_{x⁻¹y}`, `α_{x,y} = θ_{y⁻¹x}`. Requires every
    /// domain to be a subalgebra; the triple conditions are asserted.
    pub fn from_action(apa: &AlgebraPartialAction) -> Result<Amalgam> {
        let group = apa.action().group();
        for x in 0..group.size() {
            if let Some((op, args, value)) = apa.algebra().closure_witness(&apa.action().domain(x))
            {
                return Err(Error::Malformed(format!(
                    "D_{} is not a subalgebra: f{op}{args:?} = {value} escapes",
                    group.name(x)
                )));
            }
        }
        let mut amalgamations = Vec::new();
        for x in 0..group.size() {
            for y in 0..group.size() {
                if x >= y {
                    continue;
                }
                let z = group.mul(group.inv(x), y); // A_{x,y} = D_{x⁻¹y}
                let zinv = group.mul(group.inv(y), x);
                let elements = apa.action().domain(z);
                let map = elements
                    .iter()
                    .map(|&a| {
                        (
                            a,
                            apa.action()
                                .apply(zinv, a)
                                .expect("α_{x,y} = θ_{y⁻¹x} is defined on D_{x⁻¹y}"),
                        )
                    })
                    .collect();
                amalgamations.push(Amalgamation {
                    i: x,
                    j: y,
                    elements,
                    map,
                });
            }
        }
        let labels = (0..group.size())
            .map(|x| group.name(x).to_string())
            .collect();
        let amalgam = Amalgam::new(
            vec![apa.algebra().clone(); group.size()],
            labels,
            amalgamations,
        )?;
        assert!(
            amalgam.triple_condition_witness().is_none(),
            "action-derived amalgams satisfy the triple conditions"
        );
        Ok(amalgam)
    }

    /// Verifies that the maps embed the amalgam into `target`: each map is
    /// an injective homomorphism, the maps agree along the amalgamating
    /// isomorphisms, and images intersect exactly in the amalgamated parts.
    pub fn embedding_witness(
        &self,
        target: &FinitePartialAlgebra,
        maps: &[Vec<usize>],
    ) -> Option<String> {
        if maps.len() != self.len() {
            return Some("one map per algebra required".into());
        }
        for (i, map) in maps.iter().enumerate() {
            if let Some(w) = homomorphism_witness(&self.algebras[i], target, map) {
                return Some(format!("φ{i} is not a homomorphism: {w}"));
            }
            for a in 0..map.len() {
                for b in a + 1..map.len() {
                    if map[a] == map[b] {
                        return Some(format!("φ{i} identifies {a} and {b}"));
                    }
                }
            }
        }
        for i in 0..self.len() {
            for j in 0..self.len() {
                if i == j {
                    continue;
                }
                for &a in &self.intersections[i][j] {
                    let b = self.isos[i][j][a].expect("subset element");
                    if maps[j][b] != maps[i][a] {
                        return Some(format!("φ{j}∘α[{i}][{j}] and φ{i} differ at {a}"));
                    }
                }
                for a in 0..self.algebras[i].size() {
                    for b in 0..self.algebras[j].size() {
                        if maps[i][a] == maps[j][b] && self.isos[i][j][a] != Some(b) {
                            return Some(format!(
                                "images of copy {i} and copy {j} overlap at {a} vs {b} outside the amalgamated part"
                            ));
                        }
                    }
                }
            }
        }
        None
    }

    /// Bounded closure of the free-product congruence for semigroup-kind
    /// amalgams: words over the disjoint union of the carriers, closed
    /// under in-copy reductions/expansions and amalgamation swaps, up to
    /// `max_len`. Merged one-letter pairs violating the embeddability
    /// condition are certified violations; their absence is inconclusive.
    pub fn bounded_embeddability(&self, max_len: usize) -> Result<EmbeddabilityReport> {
        if max_len < 1 {
            return Err(Error::Malformed("max_len must be at least 1".into()));
        }
        if self.signature().arities() != [2] {
            return Err(Error::Malformed(
                "bounded embeddability is implemented for semigroup-kind amalgams".into(),
            ));
        }
        for (i, alg) in self.algebras.iter().enumerate() {
            if !alg.is_total() {
                return Err(Error::Malformed(format!("algebra {i} is not total")));
            }
            let table: Vec<usize> = (0..alg.size() * alg.size())
                .map(|idx| {
                    alg.op_value(0, &[idx / alg.size(), idx % alg.size()])
                        .unwrap()
                })
                .collect();
            validate_semigroup_table(alg.size(), &table).into_result()?;
        }
        let stride = self
            .algebras
            .iter()
            .map(FinitePartialAlgebra::size)
            .max()
            .unwrap();
        let encode = |i: usize, a: usize| (i * stride + a) as u32;
        let decode = |l: u32| ((l as usize) / stride, (l as usize) % stride);
        let mul =
            |i: usize, a: usize, b: usize| self.algebras[i].op_value(0, &[a, b]).expect("total");
        // Factorizations per copy and element.
        let factors: Vec<Vec<Vec<(usize, usize)>>> = self
            .algebras
            .iter()
            .map(|alg| {
                let n = alg.size();
                let mut f = vec![Vec::new(); n];
                for s in 0..n {
                    for t in 0..n {
                        f[alg.op_value(0, &[s, t]).unwrap()].push((s, t));
                    }
                }
                f
            })
            .collect();
        let mut seeds = Vec::new();
        for i in 0..self.len() {
            for a in 0..self.algebras[i].size() {
                seeds.push(vec![encode(i, a)]);
            }
        }
        let mut closure = WordClosure::explore(seeds.clone(), max_len, |word| {
            let mut out = Vec::new();
            for pos in 0..word.len().saturating_sub(1) {
                let (i, a) = decode(word[pos]);
                let (j, b) = decode(word[pos + 1]);
                if i == j {
                    let mut next = word[..pos].to_vec();
                    next.push(encode(i, mul(i, a, b)));
                    next.extend_from_slice(&word[pos + 2..]);
                    out.push((
                        next,
                        AmalgamStep::Reduce {
                            pos,
                            copy: i,
                            left: a,
                            right: b,
                        },
                    ));
                }
            }
            for (pos, &letter) in word.iter().enumerate() {
                let (i, c) = decode(letter);
                if word.len() < max_len {
                    for &(s, t) in &factors[i][c] {
                        let mut next = word[..pos].to_vec();
                        next.push(encode(i, s));
                        next.push(encode(i, t));
                        next.extend_from_slice(&word[pos + 1..]);
                        out.push((
                            next,
                            AmalgamStep::Expand {
                                pos,
                                copy: i,
                                left: s,
                                right: t,
                            },
                        ));
                    }
                }
                for j in 0..self.len() {
                    if j == i {
                        continue;
                    }
                    if let Some(b) = self.isos[i][j][c] {
                        let mut next = word.to_vec();
                        next[pos] = encode(j, b);
                        out.push((
                            next,
                            AmalgamStep::Swap {
                                pos,
                                from_copy: i,
                                from_elem: c,
                                to_copy: j,
                                to_elem: b,
                            },
                        ));
                    }
                }
            }
            out
        });
        let mut violations = Vec::new();
        for (si, seed_a) in seeds.iter().enumerate() {
            for seed_b in &seeds[si + 1..] {
                let ia = closure.id_of(seed_a).expect("seeded");
                let ib = closure.id_of(seed_b).expect("seeded");
                if !closure.same_class(ia, ib) {
                    continue;
                }
                let (i, a) = decode(seed_a[0]);
                let (j, b) = decode(seed_b[0]);
                // Merges demanded by the amalgam itself are fine.
                if self.isos[i][j][a] == Some(b) {
                    continue;
                }
                let chain = closure
                    .path(ia, ib)
                    .expect("merged words are connected")
                    .into_iter()
                    .map(|(from, step, to)| AmalgamChainEntry {
                        before: closure.word(from).to_vec(),
                        step,
                        after: closure.word(to).to_vec(),
                    })
                    .collect();
                violations.push(EmbeddabilityViolation {
                    copy_a: i,
                    elem_a: a,
                    copy_b: j,
                    elem_b: b,
                    chain,
                });
            }
        }
        Ok(EmbeddabilityReport {
            max_len,
            stride,
            violations,
        })
    }
}

/// One rewrite step over disjoint-union letters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AmalgamStep {
    Reduce {
        pos: usize,
        copy: usize,
        left: usize,
        right: usize,
    },
    Expand {
        pos: usize,
        copy: usize,
        left: usize,
        right: usize,
    },
    Swap {
        pos: usize,
        from_copy: usize,
        from_elem: usize,
        to_copy: usize,
        to_elem: usize,
    },
}

#[derive(Debug, Clone)]
pub struct AmalgamChainEntry {
    pub before: Vec<u32>,
    pub step: AmalgamStep,
    pub after: Vec<u32>,
}

/// Violations found within the bound. No violations means "inconclusive",
/// never "embeddable".
#[derive(Debug, Clone)]
pub struct EmbeddabilityReport {
    pub max_len: usize,
    /// Letter encoding stride: letter = copy * stride + element.
    pub stride: usize,
    pub violations: Vec<EmbeddabilityViolation>,
}

#[derive(Debug, Clone)]
pub struct EmbeddabilityViolation {
    pub copy_a: usize,
    pub elem_a: usize,
    pub copy_b: usize,
    pub elem_b: usize,
    pub chain: Vec<AmalgamChainEntry>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{paper_ideal_action, unital_binary_action};

    #[test]
    fn paper_amalgam_has_the_ideal_intersection() {
        let ipa = paper_ideal_action();
        let amalgam = Amalgam::from_action(ipa.algebra_action()).unwrap();
        assert_eq!(amalgam.len(), 2);
        assert_eq!(amalgam.intersection(0, 1), &[0, 1, 2]);
        // α_{1,x} = θ_x swaps u and v.
        assert_eq!(amalgam.iso(0, 1, 1), Some(2));
        assert_eq!(amalgam.iso(0, 1, 2), Some(1));
        assert!(amalgam.triple_condition_witness().is_none());
    }

    #[test]
    fn global_action_amalgam_has_full_intersections() {
        let pa = crate::corpus::z4_negation_action();
        let alg = crate::corpus::z4_semigroup().to_algebra();
        let apa = crate::algebra_action::AlgebraPartialAction::new(pa, alg).unwrap();
        let amalgam = Amalgam::from_action(&apa).unwrap();
        assert_eq!(amalgam.intersection(0, 1).len(), 4);
    }

    #[test]
    fn trivial_domains_give_empty_intersections() {
        let sg = crate::corpus::monoid_with_zero();
        // Empty domains off the identity: D_x = ∅ is a subalgebra, so the
        // amalgam exists with minimal (empty) intersections.
        let action = crate::corpus::trivial_action(&crate::FiniteGroup::cyclic(2), sg.size());
        let action = crate::PartialAction::new(
            action.group().clone(),
            sg.names().to_vec(),
            (0..2)
                .map(|x| {
                    (0..sg.size())
                        .map(|a| if x == 0 { Some(a) } else { None })
                        .collect()
                })
                .collect(),
        )
        .unwrap();
        let apa =
            crate::algebra_action::AlgebraPartialAction::new(action, sg.to_algebra()).unwrap();
        let amalgam = Amalgam::from_action(&apa).unwrap();
        assert!(amalgam.intersection(0, 1).is_empty());
        // Free-product-like: no violations at any reasonable bound.
        assert!(amalgam.bounded_embeddability(3).unwrap().violations.is_empty());
    }

    #[test]
    fn global_action_amalgam_embeds_into_its_own_carrier() {
        let pa = crate::corpus::z4_negation_action();
        let alg = crate::corpus::z4_semigroup().to_algebra();
        let apa = crate::algebra_action::AlgebraPartialAction::new(pa.clone(), alg.clone()).unwrap();
        let amalgam = Amalgam::from_action(&apa).unwrap();
        // φ_x = θ_x maps each copy into the single carrier.
        let maps: Vec<Vec<usize>> = (0..2)
            .map(|x| (0..4).map(|a| pa.apply(x, a).unwrap()).collect())
            .collect();
        assert!(amalgam.embedding_witness(&alg, &maps).is_none());
        assert!(amalgam.bounded_embeddability(4).unwrap().violations.is_empty());
        assert!(amalgam.bounded_embeddability(0).is_err());
    }

    #[test]
    fn non_subalgebra_domains_are_refused() {
        let apa = crate::corpus::z4_restricted_algebra_action();
        assert!(matches!(
            Amalgam::from_action(&apa),
            Err(Error::Malformed(_))
        ));
    }

    #[test]
    fn paper_amalgam_violates_embeddability_at_length_three() {
        let ipa = paper_ideal_action();
        let amalgam = Amalgam::from_action(ipa.algebra_action()).unwrap();
        let report = amalgam.bounded_embeddability(3).unwrap();
        assert!(!report.violations.is_empty());
        // The collapse of v onto 0 inside copy 1 is among the violations.
        assert!(report
            .violations
            .iter()
            .any(|v| (v.copy_a, v.elem_a, v.copy_b, v.elem_b) == (0, 0, 0, 2)));
    }

    #[test]
    fn unital_amalgam_shows_no_violation_and_embeds() {
        let ipa = unital_binary_action();
        let amalgam = Amalgam::from_action(ipa.algebra_action()).unwrap();
        let report = amalgam.bounded_embeddability(4).unwrap();
        assert!(report.violations.is_empty());
        // Cross-check: the unital globalization embeds the amalgam.
        let unital = ipa.unital_globalization().unwrap();
        let ug = &unital.ug;
        let target = unital.product.to_algebra();
        let maps: Vec<Vec<usize>> = (0..2)
            .map(|x| {
                (0..2)
                    .map(|s| ug.apply_global(x, ug.embedding()[s]))
                    .collect()
            })
            .collect();
        assert!(amalgam.embedding_witness(&target, &maps).is_none());
    }

    #[test]
    fn intersection_condition_catches_overlap() {
        // Two copies of the 2-chain semilattice amalgamated over {0} but
        // mapped onto the same target element 1 as well: overlap outside
        // the amalgamated part.
        let chain =
            crate::FiniteSemigroup::new(vec!["0".into(), "1".into()], vec![vec![0, 0], vec![0, 1]])
                .unwrap()
                .to_algebra();
        let amalgam = Amalgam::new(
            vec![chain.clone(), chain.clone()],
            vec!["p".into(), "q".into()],
            vec![Amalgamation {
                i: 0,
                j: 1,
                elements: vec![0],
                map: vec![(0, 0)],
            }],
        )
        .unwrap();
        // Target: the 2-chain itself; both copies map identically.
        let maps = vec![vec![0, 1], vec![0, 1]];
        let w = amalgam.embedding_witness(&chain, &maps);
        assert!(w.unwrap().contains("overlap"));
        // A 3-chain with disjoint images of the tops embeds properly.
        let three = crate::FiniteSemigroup::new(
            vec!["0".into(), "a".into(), "b".into()],
            vec![vec![0, 0, 0], vec![0, 1, 0], vec![0, 0, 2]],
        )
        .unwrap()
        .to_algebra();
        let maps = vec![vec![0, 1], vec![0, 2]];
        assert!(amalgam.embedding_witness(&three, &maps).is_none());
    }
}
