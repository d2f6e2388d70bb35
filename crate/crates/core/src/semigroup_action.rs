//! Globalizability of partial actions on semigroups whose domains are
//! ideals.
//!
//! Three independent routes decide the same question:
//!
//! * the exhaustive pointwise criterion `x·(x⁻¹·(su)·t) = s·(x·(x⁻¹·(u)·t))`
//!   over all `x`, `u ∈ D_x`, `s`, `t`;
//! * weak confluence of the word rewriting system over the globalization
//!   classes, where adjacent letters sharing a slot multiply inside it —
//!   length strictly decreases, so termination is free and the whole
//!   question sits in the critical configurations;
//! * bounded closure of the word store under reductions *and* expansions,
//!   which can certify a failure by exhibiting two distinct one-letter
//!   words joined by a derivation chain (a "collapse"), but can never
//!   certify success.
//!
//! The first route is the decision procedure; the other two cross-check it
//! and produce the replayable artifacts.

use crate::action::PartialAction;
use crate::algebra_action::AlgebraPartialAction;
use crate::globalization::{globalization_witness, UniversalGlobalization};
use crate::semigroup::FiniteSemigroup;
use crate::validation::ValidationReport;
use crate::wordstore::WordClosure;
use crate::{Error, Result};

/// A validated partial action on a finite semigroup whose domains are all
/// two-sided ideals. The universal globalization is built eagerly: its
/// classes are the alphabet of every word-level operation.
#[derive(Debug, Clone)]
pub struct IdealPartialAction {
    apa: AlgebraPartialAction,
    semigroup: FiniteSemigroup,
    ug: UniversalGlobalization,
}

/// Exhaustive two-sided ideal check for every domain; one witness per
/// group element.
pub fn check_ideal_domains(
    semigroup: &FiniteSemigroup,
    action: &PartialAction,
) -> ValidationReport {
    let mut report = ValidationReport::valid();
    for x in 0..action.group().size() {
        let domain = action.domain(x);
        if let Some((a, b, escaped)) = semigroup.ideal_witness(&domain) {
            report.record(
                &format!("ideal-domain[{}]", action.group().name(x)),
                format!(
                    "{} * {} = {} escapes D_{}",
                    semigroup.name(a),
                    semigroup.name(b),
                    semigroup.name(escaped),
                    action.group().name(x)
                ),
            );
        }
    }
    report
}

/// A failed instance of the pointwise criterion, with both sides evaluated.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CriterionWitness {
    pub x: usize,
    pub u: usize,
    pub s: usize,
    pub t: usize,
    pub lhs: usize,
    pub rhs: usize,
}

/// Per-domain sufficient conditions and the ambient-semigroup flag.
#[derive(Debug, Clone)]
pub struct SufficientConditions {
    pub per_element: Vec<DomainConditions>,
    pub ambient_inverse: bool,
}

#[derive(Debug, Clone)]
pub struct DomainConditions {
    pub x: usize,
    pub idempotent: bool,
    pub weakly_reductive: bool,
    /// The central idempotent generating the domain, when the domain is a
    /// unital ideal.
    pub unital: Option<usize>,
}

/// A word over globalization classes, tagged with the instance it belongs
/// to so words from different actions cannot be mixed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UWord {
    instance: u64,
    letters: Vec<u32>,
}

impl UWord {
    pub fn letters(&self) -> &[u32] {
        &self.letters
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepKind {
    Reduce,
    Expand,
}

/// One rewrite step: at `pos`, the slot-`slot` members `left` and `right`
/// either merge into their product (reduce) or a product letter splits
/// into the two factors (expand).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteStep {
    pub pos: usize,
    pub kind: StepKind,
    pub slot: usize,
    pub left: usize,
    pub right: usize,
}

pub type RewriteTrace = Vec<RewriteStep>;

/// Outcome of the critical-configuration sweep.
#[derive(Debug, Clone)]
pub struct ConfluenceReport {
    pub configurations: usize,
    pub counterexample: Option<ConfluenceCounterexample>,
}

impl ConfluenceReport {
    pub fn is_confluent(&self) -> bool {
        self.counterexample.is_none()
    }
}

#[derive(Debug, Clone)]
pub struct ConfluenceCounterexample {
    /// The three-letter critical word (as class ids), or two letters for a
    /// same-pair divergence.
    pub word: Vec<u32>,
    pub left_normal_form: Vec<u32>,
    pub right_normal_form: Vec<u32>,
}

/// All pairs of distinct one-letter words merged within the length bound,
/// each with a replayable chain.
#[derive(Debug, Clone)]
pub struct CollapseSearch {
    pub max_len: usize,
    pub merges: Vec<CollapsePair>,
}

#[derive(Debug, Clone)]
pub struct CollapsePair {
    pub from_class: u32,
    pub to_class: u32,
    pub chain: Vec<ChainEntry>,
}

#[derive(Debug, Clone)]
pub struct ChainEntry {
    pub before: Vec<u32>,
    pub step: RewriteStep,
    pub after: Vec<u32>,
}

/// The explicit globalization carried by unital ideal domains: a semigroup
/// structure on the classes extending the original product.
#[derive(Debug, Clone)]
pub struct UnitalGlobalization {
    pub ug: UniversalGlobalization,
    pub product: FiniteSemigroup,
    pub units: Vec<usize>,
}

impl IdealPartialAction {
    pub fn new(semigroup: FiniteSemigroup, action: PartialAction) -> Result<Self> {
        let apa = AlgebraPartialAction::new(action, semigroup.to_algebra())?;
        check_ideal_domains(&semigroup, apa.action()).into_result()?;
        let ug = UniversalGlobalization::build(apa.action())?;
        Ok(IdealPartialAction { apa, semigroup, ug })
    }

    pub fn action(&self) -> &PartialAction {
        self.apa.action()
    }

    pub fn semigroup(&self) -> &FiniteSemigroup {
        &self.semigroup
    }

    pub fn algebra_action(&self) -> &AlgebraPartialAction {
        &self.apa
    }

    pub fn globalization(&self) -> &UniversalGlobalization {
        &self.ug
    }

    fn group_size(&self) -> usize {
        self.action().group().size()
    }

    /// Both sides of the criterion at one tuple. Ideal domains keep every
    /// intermediate value defined.
    fn criterion_sides(&self, x: usize, u: usize, s: usize, t: usize) -> (usize, usize) {
        let inv = self.action().group().inv(x);
        let theta = |y: usize, a: usize| {
            self.action()
                .apply(y, a)
                .expect("ideal domains keep criterion arguments inside the domain")
        };
        let lhs = theta(
            x,
            self.semigroup.mul(theta(inv, self.semigroup.mul(s, u)), t),
        );
        let rhs = self
            .semigroup
            .mul(s, theta(x, self.semigroup.mul(theta(inv, u), t)));
        (lhs, rhs)
    }

    fn criterion_witness_for(&self, x: usize) -> Option<CriterionWitness> {
        let n = self.semigroup.size();
        for u in self.action().domain(x) {
            for s in 0..n {
                for t in 0..n {
                    let (lhs, rhs) = self.criterion_sides(x, u, s, t);
                    if lhs != rhs {
                        return Some(CriterionWitness {
                            x,
                            u,
                            s,
                            t,
                            lhs,
                            rhs,
                        });
                    }
                }
            }
        }
        None
    }

    /// First criterion violation under the canonical `(x, u, s, t)` order,
    /// or `None` when the criterion holds.
    pub fn criterion_witness(&self) -> Option<CriterionWitness> {
        (0..self.group_size()).find_map(|x| self.criterion_witness_for(x))
    }

    /// Same verdict computed with the enumeration over `x` partitioned
    /// across `jobs` worker threads; the least witness is still reported.
    pub fn criterion_witness_jobs(&self, jobs: usize) -> Option<CriterionWitness> {
        if jobs <= 1 {
            return self.criterion_witness();
        }
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..jobs)
                .map(|worker| {
                    scope.spawn(move || {
                        (worker..self.group_size())
                            .step_by(jobs)
                            .filter_map(|x| self.criterion_witness_for(x))
                            .min()
                    })
                })
                .collect();
            handles
                .into_iter()
                .filter_map(|h| h.join().expect("criterion worker"))
                .min()
        })
    }

    /// Every violation, in canonical order.
    pub fn criterion_violations(&self) -> Vec<CriterionWitness> {
        let mut out = Vec::new();
        let n = self.semigroup.size();
        for x in 0..self.group_size() {
            for u in self.action().domain(x) {
                for s in 0..n {
                    for t in 0..n {
                        let (lhs, rhs) = self.criterion_sides(x, u, s, t);
                        if lhs != rhs {
                            out.push(CriterionWitness {
                                x,
                                u,
                                s,
                                t,
                                lhs,
                                rhs,
                            });
                        }
                    }
                }
            }
        }
        out
    }

    pub fn criterion_holds(&self) -> bool {
        self.criterion_witness().is_none()
    }

    pub fn sufficient_conditions(&self) -> SufficientConditions {
        let per_element = (0..self.group_size())
            .map(|x| {
                let domain = self.action().domain(x);
                DomainConditions {
                    x,
                    idempotent: self.semigroup.is_idempotent_subset(&domain),
                    weakly_reductive: self.semigroup.is_weakly_reductive_subset(&domain),
                    unital: self.semigroup.unital_ideal_generator(&domain),
                }
            })
            .collect();
        SufficientConditions {
            per_element,
            ambient_inverse: self.semigroup.is_inverse(),
        }
    }

    /// Wraps raw class ids into a word of this instance.
    pub fn word(&self, letters: &[u32]) -> Result<UWord> {
        for &c in letters {
            if c as usize >= self.ug.class_count() {
                return Err(Error::Malformed(format!("class id {c} out of range")));
            }
        }
        if letters.is_empty() {
            return Err(Error::Malformed("words must be nonempty".into()));
        }
        Ok(UWord {
            instance: self.ug.instance_id(),
            letters: letters.to_vec(),
        })
    }

    fn check_instance(&self, word: &UWord) -> Result<()> {
        if word.instance != self.ug.instance_id() {
            return Err(Error::InstanceMismatch(
                "word letters belong to a different globalization".into(),
            ));
        }
        Ok(())
    }

    /// The slots shared by two adjacent letters, in group order.
    fn common_slots(&self, c1: u32, c2: u32) -> Vec<usize> {
        let a = &self.ug.classes()[c1 as usize].slot;
        let b = &self.ug.classes()[c2 as usize].slot;
        (0..self.group_size())
            .filter(|&x| a[x].is_some() && b[x].is_some())
            .collect()
    }

    fn reduce_at(&self, letters: &[u32], pos: usize, slot: usize) -> (Vec<u32>, RewriteStep) {
        let s = self.ug.classes()[letters[pos] as usize].slot[slot].expect("shared slot");
        let t = self.ug.classes()[letters[pos + 1] as usize].slot[slot].expect("shared slot");
        let product = self.ug.class_of(slot, self.semigroup.mul(s, t)) as u32;
        let mut next = Vec::with_capacity(letters.len() - 1);
        next.extend_from_slice(&letters[..pos]);
        next.push(product);
        next.extend_from_slice(&letters[pos + 2..]);
        (
            next,
            RewriteStep {
                pos,
                kind: StepKind::Reduce,
                slot,
                left: s,
                right: t,
            },
        )
    }

    fn normalize_letters(&self, letters: &[u32]) -> (Vec<u32>, RewriteTrace) {
        let mut current = letters.to_vec();
        let mut trace = Vec::new();
        'scan: loop {
            for pos in 0..current.len().saturating_sub(1) {
                if let Some(&slot) = self.common_slots(current[pos], current[pos + 1]).first() {
                    let (next, step) = self.reduce_at(&current, pos, slot);
                    current = next;
                    trace.push(step);
                    continue 'scan;
                }
            }
            return (current, trace);
        }
    }

    /// Leftmost reduction with the least shared slot, carried to the
    /// normal form of that strategy. Always terminates: length strictly
    /// decreases with every step.
    pub fn normalize_word(&self, word: &UWord) -> Result<(UWord, RewriteTrace)> {
        self.check_instance(word)?;
        let (letters, trace) = self.normalize_letters(&word.letters);
        Ok((
            UWord {
                instance: word.instance,
                letters,
            },
            trace,
        ))
    }

    /// Replays a trace from `word`, validating each step against the class
    /// data, and returns the resulting word.
    pub fn replay(&self, word: &UWord, trace: &RewriteTrace) -> Result<UWord> {
        self.check_instance(word)?;
        let mut current = word.letters.clone();
        for step in trace {
            current = self.apply_step(&current, step)?;
        }
        Ok(UWord {
            instance: word.instance,
            letters: current,
        })
    }

    fn apply_step(&self, letters: &[u32], step: &RewriteStep) -> Result<Vec<u32>> {
        let class_of = |s: usize| self.ug.class_of(step.slot, s) as u32;
        let product = self.semigroup.mul(step.left, step.right);
        match step.kind {
            StepKind::Reduce => {
                if step.pos + 1 >= letters.len()
                    || self.ug.classes()[letters[step.pos] as usize].slot[step.slot]
                        != Some(step.left)
                    || self.ug.classes()[letters[step.pos + 1] as usize].slot[step.slot]
                        != Some(step.right)
                {
                    return Err(Error::Malformed(format!(
                        "invalid reduce step at {}",
                        step.pos
                    )));
                }
                let mut next = letters[..step.pos].to_vec();
                next.push(class_of(product));
                next.extend_from_slice(&letters[step.pos + 2..]);
                Ok(next)
            }
            StepKind::Expand => {
                if step.pos >= letters.len() || letters[step.pos] != class_of(product) {
                    return Err(Error::Malformed(format!(
                        "invalid expand step at {}",
                        step.pos
                    )));
                }
                let mut next = letters[..step.pos].to_vec();
                next.push(class_of(step.left));
                next.push(class_of(step.right));
                next.extend_from_slice(&letters[step.pos + 1..]);
                Ok(next)
            }
        }
    }

    /// One stripe of the three-letter critical sweep: configurations whose
    /// leftmost slot is `x`. Returns the count and the least counterexample
    /// keyed by `(x, y, u, s, t)`.
    #[allow(clippy::type_complexity)]
    fn confluence_stripe(
        &self,
        x: usize,
    ) -> (
        usize,
        Option<(
            (usize, usize, usize, usize, usize),
            ConfluenceCounterexample,
        )>,
    ) {
        let g = self.group_size();
        let n = self.semigroup.size();
        let mut configurations = 0;
        for y in 0..g {
            let z = self.action().group().mul(self.action().group().inv(x), y);
            // Middle letters living in both slot x and slot y: u ranges
            // over D_{x⁻¹y} viewed in slot x.
            for &u in &self.action().domain(z) {
                let middle = self.ug.class_of(x, u) as u32;
                for s in 0..n {
                    for t in 0..n {
                        configurations += 1;
                        let word = vec![
                            self.ug.class_of(x, s) as u32,
                            middle,
                            self.ug.class_of(y, t) as u32,
                        ];
                        let (reduced, _) = self.reduce_at(&word, 0, x);
                        let left = self.normalize_letters(&reduced).0;
                        let (reduced, _) = self.reduce_at(&word, 1, y);
                        let right = self.normalize_letters(&reduced).0;
                        if left != right {
                            return (
                                configurations,
                                Some((
                                    (x, y, u, s, t),
                                    ConfluenceCounterexample {
                                        word,
                                        left_normal_form: left,
                                        right_normal_form: right,
                                    },
                                )),
                            );
                        }
                    }
                }
            }
        }
        (configurations, None)
    }

    /// Same-pair divergences: one adjacent pair sharing two distinct slots.
    /// These always rejoin for a valid ideal-domain action; checked anyway.
    fn same_pair_counterexample(&self) -> (usize, Option<ConfluenceCounterexample>) {
        let mut configurations = 0;
        for c1 in 0..self.ug.class_count() as u32 {
            for c2 in 0..self.ug.class_count() as u32 {
                let slots = self.common_slots(c1, c2);
                for (i, &x) in slots.iter().enumerate() {
                    for &y in &slots[i + 1..] {
                        configurations += 1;
                        let word = vec![c1, c2];
                        let (via_x, _) = self.reduce_at(&word, 0, x);
                        let (via_y, _) = self.reduce_at(&word, 0, y);
                        if via_x != via_y {
                            return (
                                configurations,
                                Some(ConfluenceCounterexample {
                                    word,
                                    left_normal_form: via_x,
                                    right_normal_form: via_y,
                                }),
                            );
                        }
                    }
                }
            }
        }
        (configurations, None)
    }

    /// Weak confluence by critical configurations. Two shapes exist: a
    /// middle letter viewed in two slots (three letters), and one adjacent
    /// pair sharing two slots (two letters). The verdict provably matches
    /// the pointwise criterion, which is asserted.
    pub fn weak_confluence(&self) -> ConfluenceReport {
        self.weak_confluence_jobs(1)
    }

    /// The sweep with its `x` stripes distributed over worker threads. The
    /// counterexample with the least `(x, y, u, s, t)` key is reported, so
    /// the result does not depend on `jobs`.
    pub fn weak_confluence_jobs(&self, jobs: usize) -> ConfluenceReport {
        let g = self.group_size();
        let stripes: Vec<_> = if jobs <= 1 {
            (0..g).map(|x| self.confluence_stripe(x)).collect()
        } else {
            std::thread::scope(|scope| {
                let handles: Vec<_> = (0..jobs)
                    .map(|worker| {
                        scope.spawn(move || {
                            (worker..g)
                                .step_by(jobs)
                                .map(|x| (x, self.confluence_stripe(x)))
                                .collect::<Vec<_>>()
                        })
                    })
                    .collect();
                let mut merged: Vec<_> = handles
                    .into_iter()
                    .flat_map(|h| h.join().expect("confluence worker"))
                    .collect();
                merged.sort_by_key(|(x, _)| *x);
                merged.into_iter().map(|(_, stripe)| stripe).collect()
            })
        };
        let mut configurations = 0;
        let mut counterexample = None;
        for (count, found) in stripes {
            configurations += count;
            if counterexample.is_none() {
                if let Some((_, cx)) = found {
                    counterexample = Some(cx);
                }
            }
        }
        if counterexample.is_none() {
            let (count, found) = self.same_pair_counterexample();
            configurations += count;
            counterexample = found;
        }
        let report = ConfluenceReport {
            configurations,
            counterexample,
        };
        assert_eq!(
            report.is_confluent(),
            self.criterion_holds(),
            "weak confluence and the pointwise criterion must agree"
        );
        report
    }

    /// Third route to the same verdict: every word of length at most
    /// `max_len` has exactly one normal form, over *all* reduction
    /// strategies. Computed bottom-up: a word's normal-form set is the
    /// union over its one-step reducts, memoized by word. Use a bound of at
    /// least 3 — shorter words cannot express a critical divergence.
    pub fn all_strategies_agree(&self, max_len: usize) -> bool {
        use std::collections::HashMap;
        #[derive(Clone, PartialEq)]
        enum Outcome {
            Unique(Vec<u32>),
            Ambiguous,
        }
        let alphabet = self.ug.class_count() as u32;
        let mut memo: HashMap<Vec<u32>, Outcome> = HashMap::new();
        for len in 1..=max_len {
            let mut word: Vec<u32> = vec![0; len];
            loop {
                let mut outcome: Option<Outcome> = None;
                let mut reducible = false;
                'reducts: for pos in 0..len - 1 {
                    for slot in self.common_slots(word[pos], word[pos + 1]) {
                        reducible = true;
                        let (next, _) = self.reduce_at(&word, pos, slot);
                        let sub = memo.get(&next).expect("shorter words are memoized");
                        match (&mut outcome, sub) {
                            (_, Outcome::Ambiguous) => {
                                outcome = Some(Outcome::Ambiguous);
                                break 'reducts;
                            }
                            (None, unique) => outcome = Some(unique.clone()),
                            (Some(Outcome::Unique(prev)), Outcome::Unique(new)) => {
                                if prev != new {
                                    outcome = Some(Outcome::Ambiguous);
                                    break 'reducts;
                                }
                            }
                            (Some(Outcome::Ambiguous), _) => break 'reducts,
                        }
                    }
                }
                let outcome = if !reducible {
                    Outcome::Unique(word.clone())
                } else {
                    outcome.expect("reducible words have reducts")
                };
                if outcome == Outcome::Ambiguous {
                    return false;
                }
                memo.insert(word.clone(), outcome);
                // Odometer step.
                let mut i = len;
                loop {
                    if i == 0 {
                        break;
                    }
                    i -= 1;
                    word[i] += 1;
                    if word[i] < alphabet {
                        break;
                    }
                    word[i] = 0;
                }
                if word.iter().all(|&l| l == 0) {
                    break;
                }
            }
        }
        true
    }

    /// All factorizations `w = s·t` of every element, precomputed.
    fn factorizations(&self) -> Vec<Vec<(usize, usize)>> {
        let n = self.semigroup.size();
        let mut factors = vec![Vec::new(); n];
        for s in 0..n {
            for t in 0..n {
                factors[self.semigroup.mul(s, t)].push((s, t));
            }
        }
        factors
    }

    /// Breadth-first closure of the one-letter words under reductions and
    /// expansions bounded by `max_len`. Every pair of distinct one-letter
    /// words that merges is returned with its derivation chain. An empty
    /// result is *not* a proof of globalizability; the pointwise criterion
    /// decides that.
    pub fn find_collapse_witness(&self, max_len: usize) -> Result<CollapseSearch> {
        if max_len < 1 {
            return Err(Error::Malformed("max_len must be at least 1".into()));
        }
        let factors = self.factorizations();
        let g = self.group_size();
        let seeds: Vec<Vec<u32>> = (0..self.ug.class_count() as u32).map(|c| vec![c]).collect();
        let mut closure = WordClosure::explore(seeds, max_len, |word| {
            let mut out = Vec::new();
            for pos in 0..word.len().saturating_sub(1) {
                for slot in self.common_slots(word[pos], word[pos + 1]) {
                    out.push({
                        let (next, step) = self.reduce_at(word, pos, slot);
                        (next, step)
                    });
                }
            }
            if word.len() < max_len {
                for (pos, &letter) in word.iter().enumerate() {
                    for slot in 0..g {
                        let Some(value) = self.ug.classes()[letter as usize].slot[slot] else {
                            continue;
                        };
                        for &(s, t) in &factors[value] {
                            let mut next = word[..pos].to_vec();
                            next.push(self.ug.class_of(slot, s) as u32);
                            next.push(self.ug.class_of(slot, t) as u32);
                            next.extend_from_slice(&word[pos + 1..]);
                            out.push((
                                next,
                                RewriteStep {
                                    pos,
                                    kind: StepKind::Expand,
                                    slot,
                                    left: s,
                                    right: t,
                                },
                            ));
                        }
                    }
                }
            }
            out
        });
        let mut merges = Vec::new();
        for a in 0..self.ug.class_count() as u32 {
            for b in a + 1..self.ug.class_count() as u32 {
                let ia = closure.id_of(&[a]).expect("seeded");
                let ib = closure.id_of(&[b]).expect("seeded");
                if closure.same_class(ia, ib) {
                    let chain = closure
                        .path(ia, ib)
                        .expect("merged words are connected")
                        .into_iter()
                        .map(|(from, step, to)| ChainEntry {
                            before: closure.word(from).to_vec(),
                            step,
                            after: closure.word(to).to_vec(),
                        })
                        .collect();
                    merges.push(CollapsePair {
                        from_class: a,
                        to_class: b,
                        chain,
                    });
                }
            }
        }
        Ok(CollapseSearch { max_len, merges })
    }

    /// The unital-ideal globalization `(S^U, *)`. Requires every domain to
    /// be a unital ideal `1_x·S`; refuses with a per-element diagnosis
    /// otherwise. The product, its associativity, the embedding, the ideal
    /// property of the embedded copy, compatibility with the class action,
    /// and inverseness (when the base is inverse) are all verified here.
    pub fn unital_globalization(&self) -> Result<UnitalGlobalization> {
        let group = self.action().group();
        let g = group.size();
        let mut units = Vec::with_capacity(g);
        for x in 0..g {
            match self
                .semigroup
                .unital_ideal_generator(&self.action().domain(x))
            {
                Some(e) => units.push(e),
                None => {
                    return Err(Error::NotUnital(format!(
                        "D_{} is not generated by a central idempotent",
                        group.name(x)
                    )));
                }
            }
        }
        // The unit identity x·(1_{x⁻¹}·1_y) = 1_x·1_{xy} underlies
        // well-definedness; check it first.
        for x in 0..g {
            for y in 0..g {
                let lhs = self
                    .action()
                    .apply(x, self.semigroup.mul(units[group.inv(x)], units[y]))
                    .expect("product lies in the domain ideal");
                let rhs = self.semigroup.mul(units[x], units[group.mul(x, y)]);
                assert_eq!(lhs, rhs, "unit identity fails; domains are not coherent");
            }
        }
        let star = |x: usize, s: usize, y: usize, t: usize| -> (usize, usize) {
            // [x,s] * [y,t] = [x, s · (x⁻¹y)·(1_{y⁻¹x}·t)]
            let z = group.mul(group.inv(x), y);
            let zinv = group.mul(group.inv(y), x);
            let moved = self
                .action()
                .apply(z, self.semigroup.mul(units[zinv], t))
                .expect("unit-scaled argument lies in the domain");
            (x, self.semigroup.mul(s, moved))
        };
        let classes = self.ug.class_count();
        let mut table = vec![vec![0usize; classes]; classes];
        for c1 in 0..classes {
            for c2 in 0..classes {
                let mut image = None;
                for &(x, s) in &self.ug.classes()[c1].members {
                    for &(y, t) in &self.ug.classes()[c2].members {
                        let (rx, rs) = star(x, s, y, t);
                        let class = self.ug.class_of(rx, rs);
                        match image {
                            None => image = Some(class),
                            Some(prev) => assert_eq!(
                                prev, class,
                                "product not well defined across representatives"
                            ),
                        }
                    }
                }
                table[c1][c2] = image.expect("classes are nonempty");
            }
        }
        let names = (0..classes).map(|c| self.ug.class_name(c)).collect();
        let product = FiniteSemigroup::new(names, table.clone())?;
        // The embedded copy multiplies as the original and forms an ideal.
        let emb = self.ug.embedding();
        for s in 0..self.semigroup.size() {
            for t in 0..self.semigroup.size() {
                assert_eq!(
                    product.mul(emb[s], emb[t]),
                    emb[self.semigroup.mul(s, t)],
                    "the embedding must be a semigroup monomorphism"
                );
            }
        }
        let mut embedded = vec![false; classes];
        for &c in emb {
            embedded[c] = true;
        }
        for c in 0..classes {
            for &e in emb {
                assert!(
                    embedded[product.mul(c, e)] && embedded[product.mul(e, c)],
                    "the embedded copy must be a two-sided ideal"
                );
            }
        }
        // The class action acts by automorphisms of the product.
        for z in 0..g {
            for c1 in 0..classes {
                for c2 in 0..classes {
                    assert_eq!(
                        self.ug.apply_global(z, product.mul(c1, c2)),
                        product.mul(self.ug.apply_global(z, c1), self.ug.apply_global(z, c2)),
                        "the class action must respect the product"
                    );
                }
            }
        }
        assert!(
            globalization_witness(self.action(), &self.ug.as_global_action(), emb).is_none(),
            "the globalization biconditional must hold"
        );
        if self.semigroup.is_inverse() {
            assert!(
                product.is_inverse(),
                "an inverse base must give an inverse globalization"
            );
        }
        Ok(UnitalGlobalization {
            ug: self.ug.clone(),
            product,
            units,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{paper_ideal_action, unital_binary_action};

    #[test]
    fn paper_domains_are_ideals() {
        let ipa = paper_ideal_action();
        assert!(check_ideal_domains(ipa.semigroup(), ipa.action()).is_valid());
    }

    #[test]
    fn non_ideal_domain_reports_witness() {
        // Restrict θ_x to {u}: u must escape since u·u = 0.
        let sg = crate::corpus::paper_semigroup();
        let group =
            crate::FiniteGroup::new(vec!["1".into(), "x".into()], vec![vec![0, 1], vec![1, 0]])
                .unwrap();
        let theta = vec![
            vec![Some(0), Some(1), Some(2), Some(3)],
            vec![None, Some(1), None, None], // x·u = u only
        ];
        let action = crate::PartialAction::new(group, sg.names().to_vec(), theta).unwrap();
        let report = check_ideal_domains(&sg, &action);
        assert!(!report.is_valid());
    }

    #[test]
    fn full_carrier_domains_are_ideals() {
        let sg = crate::corpus::z4_semigroup();
        let action = crate::corpus::z4_negation_action();
        assert!(check_ideal_domains(&sg, &action).is_valid());
    }

    #[test]
    fn semilattice_principal_ideal_meets_every_sufficient_condition() {
        // Chain semilattice c0 < c1 < c2 under min; D_x = the principal
        // ideal of c1 = {c0, c1}; θ_x = identity on it.
        let sg = FiniteSemigroup::new(
            ["c0", "c1", "c2"].map(String::from).to_vec(),
            vec![vec![0, 0, 0], vec![0, 1, 1], vec![0, 1, 2]],
        )
        .unwrap();
        let action = crate::PartialAction::new(
            crate::FiniteGroup::cyclic(2),
            sg.names().to_vec(),
            vec![
                vec![Some(0), Some(1), Some(2)],
                vec![Some(0), Some(1), None],
            ],
        )
        .unwrap();
        let ipa = IdealPartialAction::new(sg, action).unwrap();
        let sc = ipa.sufficient_conditions();
        let x = &sc.per_element[1];
        assert!(x.idempotent && x.weakly_reductive);
        assert_eq!(x.unital, Some(1));
        assert!(ipa.criterion_holds());
        let unital = ipa.unital_globalization().unwrap();
        assert_eq!(unital.product.size(), 4);
    }

    #[test]
    fn zero_length_bound_is_rejected() {
        let ipa = paper_ideal_action();
        assert!(ipa.find_collapse_witness(0).is_err());
    }

    #[test]
    fn paper_criterion_fails_with_the_reported_witness() {
        let ipa = paper_ideal_action();
        let w = ipa.criterion_witness().expect("criterion fails");
        // First violation in canonical order is the paper's: x, u = u,
        // s = t, t = t with lhs 0 and rhs u.
        assert_eq!((w.x, w.u, w.s, w.t), (1, 1, 3, 3));
        assert_eq!((w.lhs, w.rhs), (0, 1));
        // The same witness arrives regardless of the worker count.
        assert_eq!(ipa.criterion_witness_jobs(3), Some(w.clone()));
        assert!(ipa.criterion_violations().contains(&w));
    }

    #[test]
    fn unital_binary_instance_satisfies_criterion() {
        let ipa = unital_binary_action();
        assert!(ipa.criterion_holds());
        let sc = ipa.sufficient_conditions();
        assert!(sc.per_element.iter().all(|d| d.unital.is_some()));
        assert!(sc.ambient_inverse);
    }

    #[test]
    fn paper_sufficient_conditions_all_fail_off_identity() {
        let ipa = paper_ideal_action();
        let sc = ipa.sufficient_conditions();
        let x = &sc.per_element[1];
        assert!(!x.idempotent);
        assert!(!x.weakly_reductive);
        assert!(x.unital.is_none());
        assert!(!sc.ambient_inverse);
    }

    #[test]
    fn one_letter_words_are_normal_forms() {
        let ipa = paper_ideal_action();
        for c in 0..ipa.globalization().class_count() as u32 {
            let w = ipa.word(&[c]).unwrap();
            let (nf, trace) = ipa.normalize_word(&w).unwrap();
            assert_eq!(nf, w);
            assert!(trace.is_empty());
        }
    }

    #[test]
    fn vt_reduces_to_u_in_slot_one() {
        let ipa = paper_ideal_action();
        let ug = ipa.globalization();
        let w = ipa
            .word(&[ug.class_of(0, 2) as u32, ug.class_of(0, 3) as u32])
            .unwrap();
        let (nf, trace) = ipa.normalize_word(&w).unwrap();
        assert_eq!(nf.letters(), &[ug.class_of(0, 1) as u32]);
        assert_eq!(trace.len(), 1);
        assert_eq!(trace[0].kind, StepKind::Reduce);
        // Replay lands on the same word.
        assert_eq!(ipa.replay(&w, &trace).unwrap(), nf);
    }

    #[test]
    fn words_from_other_instances_are_rejected() {
        let a = paper_ideal_action();
        let b = paper_ideal_action();
        let word = a.word(&[0]).unwrap();
        assert!(matches!(
            b.normalize_word(&word),
            Err(Error::InstanceMismatch(_))
        ));
    }

    #[test]
    fn no_common_slot_word_is_irreducible() {
        let ipa = paper_ideal_action();
        let ug = ipa.globalization();
        let w = ipa
            .word(&[ug.class_of(0, 3) as u32, ug.class_of(1, 3) as u32])
            .unwrap();
        let (nf, trace) = ipa.normalize_word(&w).unwrap();
        assert_eq!(nf, w);
        assert!(trace.is_empty());
    }

    #[test]
    fn paper_action_is_not_weakly_confluent() {
        let ipa = paper_ideal_action();
        let report = ipa.weak_confluence();
        assert!(!report.is_confluent());
        let cx = report.counterexample.unwrap();
        assert_ne!(cx.left_normal_form, cx.right_normal_form);
    }

    #[test]
    fn unital_instance_is_weakly_confluent() {
        let ipa = unital_binary_action();
        assert!(ipa.weak_confluence().is_confluent());
    }

    #[test]
    fn collapse_witness_found_at_length_three() {
        let ipa = paper_ideal_action();
        let ug = ipa.globalization();
        let search = ipa.find_collapse_witness(3).unwrap();
        let v = ug.class_of(0, 2) as u32;
        let zero = ug.class_of(0, 0) as u32;
        let pair = search
            .merges
            .iter()
            .find(|m| (m.from_class, m.to_class) == (zero, v))
            .expect("[1,v] collapses onto [1,0]");
        assert!(!pair.chain.is_empty());
        // The chain must replay step by step.
        for entry in &pair.chain {
            let before = ipa.word(&entry.before).unwrap();
            let after = ipa.replay(&before, &vec![entry.step.clone()]).unwrap();
            assert_eq!(after.letters(), entry.after.as_slice());
        }
    }

    #[test]
    fn collapse_search_is_silent_on_unital_instance() {
        let ipa = unital_binary_action();
        assert!(ipa.find_collapse_witness(4).unwrap().merges.is_empty());
    }

    #[test]
    fn unital_globalization_of_binary_instance() {
        let ipa = unital_binary_action();
        let unital = ipa.unital_globalization().unwrap();
        assert_eq!(unital.product.size(), 3);
        let ug = &unital.ug;
        let c10 = ug.class_of(0, 0);
        let c11 = ug.class_of(0, 1);
        let cx1 = ug.class_of(1, 1);
        assert_eq!(unital.product.mul(c11, cx1), c10);
        assert_eq!(unital.product.mul(cx1, cx1), cx1);
    }

    #[test]
    fn unital_globalization_refuses_paper_action() {
        let ipa = paper_ideal_action();
        assert!(matches!(
            ipa.unital_globalization(),
            Err(Error::NotUnital(_))
        ));
    }

    #[test]
    fn trivial_group_unital_globalization_is_the_semigroup() {
        let sg = crate::corpus::monoid_with_zero();
        let group = crate::FiniteGroup::cyclic(1);
        let action = crate::corpus::identity_action(&group, sg.size(), sg.names().to_vec());
        let ipa = IdealPartialAction::new(sg.clone(), action).unwrap();
        let unital = ipa.unital_globalization().unwrap();
        assert_eq!(unital.product.size(), sg.size());
        for a in 0..sg.size() {
            for b in 0..sg.size() {
                assert_eq!(unital.product.mul(a, b), sg.mul(a, b));
            }
        }
    }

    #[test]
    fn star_agrees_with_single_reduction_on_aligned_letters() {
        let ipa = unital_binary_action();
        let unital = ipa.unital_globalization().unwrap();
        let ug = ipa.globalization();
        for x in 0..2 {
            for s in 0..2 {
                for t in 0..2 {
                    let c1 = ug.class_of(x, s) as u32;
                    let c2 = ug.class_of(x, t) as u32;
                    let product = unital.product.mul(c1 as usize, c2 as usize);
                    let w = ipa.word(&[c1, c2]).unwrap();
                    let (nf, _) = ipa.normalize_word(&w).unwrap();
                    assert_eq!(nf.letters(), &[product as u32]);
                }
            }
        }
    }
}
