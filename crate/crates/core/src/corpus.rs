//! Instance gallery and seeded generators.
//!
//! The named constructors build the worked examples used across the test
//! suites and golden files. The `random_*` generators produce valid
//! instances from a handful of schemes (restrictions of global actions,
//! ideal involutions, unital ideals, pullbacks along group surjections) so
//! corpora contain both globalizable and non-globalizable cases. Everything
//! is driven by a self-contained splitmix64 generator: same seed, same
//! corpus, on every platform.

use crate::action::PartialAction;
use crate::algebra::{FinitePartialAlgebra, TypeSignature};
use crate::algebra_action::{validate_algebra_action, AlgebraPartialAction};
use crate::group::FiniteGroup;
use crate::semigroup::FiniteSemigroup;
use crate::semigroup_action::IdealPartialAction;

/// Splitmix64: deterministic, seed-stable test randomness.
#[derive(Debug, Clone)]
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: usize) -> usize {
        assert!(n > 0);
        (self.next_u64() % n as u64) as usize
    }

    pub fn chance(&mut self, num: u64, den: u64) -> bool {
        self.next_u64() % den < num
    }

    pub fn pick<'a, T>(&mut self, slice: &'a [T]) -> &'a T {
        &slice[self.below(slice.len())]
    }

    /// Random nonempty subset of `0..n` with at most `max` elements.
    pub fn subset(&mut self, n: usize, max: usize) -> Vec<usize> {
        let mut indices: Vec<usize> = (0..n).collect();
        for i in (1..indices.len()).rev() {
            indices.swap(i, self.below(i + 1));
        }
        let size = 1 + self.below(max.min(n));
        let mut chosen = indices[..size].to_vec();
        chosen.sort_unstable();
        chosen
    }
}

// ---------------------------------------------------------------------------
// Worked examples.

/// The order-2 group with elements named 1 and x.
pub fn paper_group() -> FiniteGroup {
    FiniteGroup::new(vec!["1".into(), "x".into()], vec![vec![0, 1], vec![1, 0]])
        .expect("order-2 table")
}

/// The 4-element semigroup {0,u,v,t} with zero 0, vt = tv = u, and all
/// other products of {u,v,t} equal to 0.
pub fn paper_semigroup() -> FiniteSemigroup {
    FiniteSemigroup::new(
        vec!["0".into(), "u".into(), "v".into(), "t".into()],
        vec![
            vec![0, 0, 0, 0],
            vec![0, 0, 0, 0],
            vec![0, 0, 0, 1],
            vec![0, 0, 1, 0],
        ],
    )
    .expect("running-example table")
}

/// The running-example action: x·0 = 0, x·u = v, x·v = u, x·t undefined.
pub fn paper_action() -> PartialAction {
    PartialAction::new(
        paper_group(),
        paper_semigroup().names().to_vec(),
        vec![
            vec![Some(0), Some(1), Some(2), Some(3)],
            vec![Some(0), Some(2), Some(1), None],
        ],
    )
    .expect("running-example action")
}

pub fn paper_algebra_action() -> AlgebraPartialAction {
    AlgebraPartialAction::new(paper_action(), paper_semigroup().to_algebra())
        .expect("running example is compatible")
}

pub fn paper_ideal_action() -> IdealPartialAction {
    IdealPartialAction::new(paper_semigroup(), paper_action())
        .expect("running-example domains are ideals")
}

/// S = {0,1} under multiplication, G of order 2, D_g = {0} = 0·S.
pub fn unital_binary_action() -> IdealPartialAction {
    let sg = FiniteSemigroup::new(vec!["0".into(), "1".into()], vec![vec![0, 0], vec![0, 1]])
        .expect("two-element multiplicative table");
    let action = PartialAction::new(
        FiniteGroup::cyclic(2),
        sg.names().to_vec(),
        vec![vec![Some(0), Some(1)], vec![Some(0), None]],
    )
    .expect("zero-fixing action");
    IdealPartialAction::new(sg, action).expect("{0} is a unital ideal")
}

/// (Z_4, +) as a semigroup.
pub fn z4_semigroup() -> FiniteSemigroup {
    let names = (0..4).map(|i| i.to_string()).collect();
    let table = (0..4)
        .map(|a| (0..4).map(|b| (a + b) % 4).collect())
        .collect();
    FiniteSemigroup::new(names, table).expect("modular addition")
}

/// The Klein four-group as a semigroup.
pub fn klein_semigroup() -> FiniteSemigroup {
    let g = FiniteGroup::klein();
    let names = g.names().to_vec();
    let table = (0..4)
        .map(|a| (0..4).map(|b| g.mul(a, b)).collect())
        .collect();
    FiniteSemigroup::new(names, table).expect("group table")
}

/// Z_4 acting on {0,1,2,3} by addition: the regular action.
pub fn z4_shift_action() -> PartialAction {
    let group = FiniteGroup::cyclic(4);
    let names = (0..4).map(|i| i.to_string()).collect();
    let theta = (0..4)
        .map(|x| (0..4).map(|a| Some((a + x) % 4)).collect())
        .collect();
    PartialAction::new(group, names, theta).expect("regular action")
}

/// Z_2 acting on (Z_4,+) by negation, a global action by automorphisms.
pub fn z4_negation_action() -> PartialAction {
    let group = FiniteGroup::cyclic(2);
    let names = (0..4).map(|i| i.to_string()).collect();
    let theta = vec![
        (0..4).map(Some).collect(),
        (0..4).map(|a| Some((4 - a) % 4)).collect(),
    ];
    PartialAction::new(group, names, theta).expect("negation action")
}

/// The successor algebra restricted to {1,2} ⊂ Z_4 under the shift: a
/// globalizable action whose domains are not subalgebras.
pub fn z4_restricted_algebra_action() -> AlgebraPartialAction {
    let action = z4_shift_action().restrict(&[1, 2]).expect("restriction");
    let algebra = FinitePartialAlgebra::new(
        action.names().to_vec(),
        TypeSignature::new(vec![1]),
        vec![vec![Some(1), None]],
    )
    .expect("successor fragment");
    AlgebraPartialAction::new(action, algebra).expect("restriction is compatible")
}

/// The partial action with empty domains off the identity.
pub fn trivial_action(group: &FiniteGroup, carrier: usize) -> PartialAction {
    let names = (0..carrier).map(|i| format!("a{i}")).collect();
    let theta = (0..group.size())
        .map(|x| {
            (0..carrier)
                .map(|a| if x == group.identity() { Some(a) } else { None })
                .collect()
        })
        .collect();
    PartialAction::new(group.clone(), names, theta).expect("trivial action")
}

/// Every group element acting as the identity map.
pub fn identity_action(group: &FiniteGroup, carrier: usize, names: Vec<String>) -> PartialAction {
    let theta = (0..group.size())
        .map(|_| (0..carrier).map(Some).collect())
        .collect();
    PartialAction::new(group.clone(), names, theta).expect("identity action")
}

/// A 3-element commutative monoid with zero: {0, 1, a} with a² = 0.
pub fn monoid_with_zero() -> FiniteSemigroup {
    FiniteSemigroup::new(
        vec!["0".into(), "1".into(), "a".into()],
        vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 0]],
    )
    .expect("monoid with zero")
}

// ---------------------------------------------------------------------------
// Catalogs.

pub fn group_catalog() -> Vec<FiniteGroup> {
    vec![
        FiniteGroup::cyclic(1),
        FiniteGroup::cyclic(2),
        FiniteGroup::cyclic(3),
        FiniteGroup::cyclic(4),
        FiniteGroup::cyclic(5),
        FiniteGroup::cyclic(6),
        FiniteGroup::klein(),
        FiniteGroup::symmetric3(),
    ]
}

fn null_semigroup(n: usize) -> FiniteSemigroup {
    let names = (0..n).map(|i| format!("n{i}")).collect();
    FiniteSemigroup::new(names, vec![vec![0; n]; n]).expect("constant table")
}

fn left_zero_semigroup(n: usize) -> FiniteSemigroup {
    let names = (0..n).map(|i| format!("l{i}")).collect();
    let table = (0..n).map(|a| vec![a; n]).collect();
    FiniteSemigroup::new(names, table).expect("left-zero table")
}

fn chain_semilattice(n: usize) -> FiniteSemigroup {
    let names = (0..n).map(|i| format!("c{i}")).collect();
    let table = (0..n).map(|a| (0..n).map(|b| a.min(b)).collect()).collect();
    FiniteSemigroup::new(names, table).expect("min table")
}

fn cyclic_nil_semigroup(n: usize) -> FiniteSemigroup {
    // Monogenic: a, a², …, aⁿ with aⁿ absorbing.
    let names = (0..n).map(|i| format!("a{}", i + 1)).collect();
    let table = (0..n)
        .map(|a| (0..n).map(|b| (a + b + 1).min(n - 1)).collect())
        .collect();
    FiniteSemigroup::new(names, table).expect("monogenic table")
}

fn zn_semigroup(n: usize) -> FiniteSemigroup {
    let names = (0..n).map(|i| format!("z{i}")).collect();
    let table = (0..n)
        .map(|a| (0..n).map(|b| (a + b) % n).collect())
        .collect();
    FiniteSemigroup::new(names, table).expect("modular addition")
}

fn adjoin_zero(sg: &FiniteSemigroup) -> FiniteSemigroup {
    let n = sg.size();
    let mut names = vec!["zz".to_string()];
    names.extend(sg.names().iter().cloned());
    let mut table = vec![vec![0; n + 1]];
    for a in 0..n {
        let mut row = vec![0];
        row.extend((0..n).map(|b| sg.mul(a, b) + 1));
        table.push(row);
    }
    FiniteSemigroup::new(names, table).expect("zero adjunction")
}

fn adjoin_identity(sg: &FiniteSemigroup) -> FiniteSemigroup {
    let n = sg.size();
    let mut names = vec!["id".to_string()];
    names.extend(sg.names().iter().cloned());
    let mut table = vec![(0..=n).collect::<Vec<usize>>()];
    for a in 0..n {
        let mut row = vec![a + 1];
        row.extend((0..n).map(|b| sg.mul(a, b) + 1));
        table.push(row);
    }
    FiniteSemigroup::new(names, table).expect("identity adjunction")
}

fn direct_product(a: &FiniteSemigroup, b: &FiniteSemigroup) -> FiniteSemigroup {
    let names = (0..a.size())
        .flat_map(|i| (0..b.size()).map(move |j| format!("{i}.{j}")))
        .collect();
    let idx = |i: usize, j: usize| i * b.size() + j;
    let table = (0..a.size() * b.size())
        .map(|p| {
            (0..a.size() * b.size())
                .map(|q| {
                    idx(
                        a.mul(p / b.size(), q / b.size()),
                        b.mul(p % b.size(), q % b.size()),
                    )
                })
                .collect()
        })
        .collect();
    FiniteSemigroup::new(names, table).expect("product table")
}

/// A random semigroup of size at most `max_size` from the structural
/// catalog, possibly wrapped by zero/identity adjunction.
pub fn random_semigroup(rng: &mut Rng, max_size: usize) -> FiniteSemigroup {
    assert!(max_size >= 1);
    let base = max_size.max(2);
    let mut sg = match rng.below(7) {
        0 => null_semigroup(1 + rng.below(base - 1)),
        1 => left_zero_semigroup(1 + rng.below(base - 1)),
        2 => chain_semilattice(1 + rng.below(base - 1)),
        3 => cyclic_nil_semigroup(1 + rng.below(base - 1)),
        4 => zn_semigroup(1 + rng.below(base - 1)),
        5 => paper_semigroup(),
        _ => direct_product(
            &chain_semilattice(1 + rng.below(2)),
            &zn_semigroup(1 + rng.below(2)),
        ),
    };
    if sg.size() < max_size && rng.chance(1, 3) {
        sg = if rng.chance(1, 2) {
            adjoin_zero(&sg)
        } else {
            adjoin_identity(&sg)
        };
    }
    if sg.size() > max_size {
        // Shrink by taking the ideal generated by a random element when it
        // is small enough; otherwise fall back to a small catalog entry.
        let seed = rng.below(sg.size());
        let ideal = principal_ideal(&sg, seed);
        if ideal.len() <= max_size {
            sg = subsemigroup(&sg, &ideal);
        } else {
            sg = chain_semilattice(max_size);
        }
    }
    sg
}

/// The two-sided principal ideal generated by one element.
pub fn principal_ideal(sg: &FiniteSemigroup, a: usize) -> Vec<usize> {
    let mut member = vec![false; sg.size()];
    member[a] = true;
    loop {
        let mut changed = false;
        for d in 0..sg.size() {
            if !member[d] {
                continue;
            }
            for s in 0..sg.size() {
                for p in [sg.mul(s, d), sg.mul(d, s)] {
                    if !member[p] {
                        member[p] = true;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    (0..sg.size()).filter(|&d| member[d]).collect()
}

/// All two-sided ideals (including the empty set and the whole carrier).
pub fn ideals(sg: &FiniteSemigroup) -> Vec<Vec<usize>> {
    let n = sg.size();
    let mut out = Vec::new();
    for mask in 0..(1u32 << n) {
        let subset: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        if sg.ideal_witness(&subset).is_none() {
            out.push(subset);
        }
    }
    out
}

/// The subsemigroup induced on a multiplicatively closed subset.
pub fn subsemigroup(sg: &FiniteSemigroup, subset: &[usize]) -> FiniteSemigroup {
    let mut back = vec![usize::MAX; sg.size()];
    for (new, &old) in subset.iter().enumerate() {
        back[old] = new;
    }
    let names = subset.iter().map(|&a| sg.name(a).to_string()).collect();
    let table = subset
        .iter()
        .map(|&a| subset.iter().map(|&b| back[sg.mul(a, b)]).collect())
        .collect();
    FiniteSemigroup::new(names, table).expect("closed subset")
}

/// All multiplicative bijections of the whole carrier (automorphisms).
pub fn automorphisms(sg: &FiniteSemigroup) -> Vec<Vec<usize>> {
    permutations(sg.size())
        .into_iter()
        .filter(|perm| {
            (0..sg.size())
                .all(|a| (0..sg.size()).all(|b| perm[sg.mul(a, b)] == sg.mul(perm[a], perm[b])))
        })
        .collect()
}

/// Multiplicative involutions of a subset closed under the product.
pub fn subset_involutions(sg: &FiniteSemigroup, subset: &[usize]) -> Vec<Vec<(usize, usize)>> {
    let k = subset.len();
    permutations(k)
        .into_iter()
        .filter(|perm| (0..k).all(|i| perm[perm[i]] == i))
        .filter(|perm| {
            let mut back = vec![usize::MAX; sg.size()];
            for (new, &old) in subset.iter().enumerate() {
                back[old] = new;
            }
            subset.iter().enumerate().all(|(i, &a)| {
                subset.iter().enumerate().all(|(j, &b)| {
                    let product = sg.mul(a, b);
                    back[product] != usize::MAX
                        && perm[back[product]] == back[sg.mul(subset[perm[i]], subset[perm[j]])]
                })
            })
        })
        .map(|perm| (0..k).map(|i| (subset[i], subset[perm[i]])).collect())
        .collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    heap_permute(&mut current, n, &mut out);
    out.sort();
    out
}

fn heap_permute(current: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == 1 {
        out.push(current.clone());
        return;
    }
    for i in 0..k {
        heap_permute(current, k - 1, out);
        if k.is_multiple_of(2) {
            current.swap(i, k - 1);
        } else {
            current.swap(0, k - 1);
        }
    }
}

// ---------------------------------------------------------------------------
// Random instance generators.

/// A valid partial action obtained by restricting the block shift of the
/// group on `G × {0..blocks}` to a random subset of at most `max_carrier`
/// points.
pub fn random_partial_action(
    rng: &mut Rng,
    group: &FiniteGroup,
    max_carrier: usize,
) -> PartialAction {
    let blocks = 1 + rng.below(2);
    let points = group.size() * blocks;
    let names = (0..points).map(|p| format!("b{p}")).collect();
    let theta = (0..group.size())
        .map(|x| {
            (0..points)
                .map(|p| {
                    let (y, j) = (p / blocks, p % blocks);
                    Some(group.mul(x, y) * blocks + j)
                })
                .collect()
        })
        .collect();
    let global = PartialAction::new(group.clone(), names, theta).expect("block shift");
    let subset = rng.subset(points, max_carrier);
    global.restrict(&subset).expect("nonempty subset")
}

/// Pullback of a partial action along a surjective group homomorphism
/// `h : G' → G` given by its image table.
pub fn pullback_action(action: &PartialAction, group: &FiniteGroup, h: &[usize]) -> PartialAction {
    assert_eq!(h.len(), group.size());
    for a in 0..group.size() {
        for b in 0..group.size() {
            assert_eq!(
                h[group.mul(a, b)],
                action.group().mul(h[a], h[b]),
                "h must be a homomorphism"
            );
        }
    }
    let theta = (0..group.size())
        .map(|y| {
            (0..action.carrier_size())
                .map(|a| action.apply(h[y], a))
                .collect()
        })
        .collect();
    PartialAction::new(group.clone(), action.names().to_vec(), theta)
        .expect("pullbacks preserve the axioms")
}

/// A random ideal-domain semigroup action. The scheme mix guarantees both
/// criterion verdicts appear across a corpus: pullbacks of the running
/// example fail, restrictions and unital instances hold, the involution
/// scheme produces both.
pub fn random_ideal_action(rng: &mut Rng, max_size: usize) -> Option<IdealPartialAction> {
    match rng.below(4) {
        0 => {
            // Pullback of the running example along G' → Z_2.
            let (group, h) = match rng.below(3) {
                0 => (FiniteGroup::cyclic(2), vec![0, 1]),
                1 => (FiniteGroup::cyclic(4), vec![0, 1, 0, 1]),
                _ => (FiniteGroup::klein(), vec![0, 1, 1, 0]),
            };
            let action = pullback_action(&paper_action(), &group, &h);
            IdealPartialAction::new(paper_semigroup(), action).ok()
        }
        1 => {
            // Involution of a random ideal, G = Z_2 (or pulled back).
            let sg = random_semigroup(rng, max_size);
            let all_ideals = ideals(&sg);
            let ideal = rng.pick(&all_ideals).clone();
            let involutions = subset_involutions(&sg, &ideal);
            if involutions.is_empty() {
                return None;
            }
            let sigma = rng.pick(&involutions).clone();
            let mut theta_x = vec![None; sg.size()];
            for &(a, b) in &sigma {
                theta_x[a] = Some(b);
            }
            let base = PartialAction::new(
                FiniteGroup::cyclic(2),
                sg.names().to_vec(),
                vec![(0..sg.size()).map(Some).collect(), theta_x],
            )
            .ok()?;
            let action = if rng.chance(1, 3) {
                pullback_action(&base, &FiniteGroup::cyclic(4), &[0, 1, 0, 1])
            } else {
                base
            };
            IdealPartialAction::new(sg, action).ok()
        }
        2 => {
            // Restriction of a global automorphism action to an ideal.
            let big = random_semigroup(rng, max_size + 2);
            let autos = automorphisms(&big);
            let n = 2 + rng.below(3); // group order 2..4
            let group = FiniteGroup::cyclic(n);
            let candidates: Vec<&Vec<usize>> = autos
                .iter()
                .filter(|sigma| {
                    let mut power: Vec<usize> = (0..big.size()).collect();
                    for _ in 0..n {
                        power = power.iter().map(|&a| sigma[a]).collect();
                    }
                    (0..big.size()).all(|a| power[a] == a)
                })
                .collect();
            if candidates.is_empty() {
                return None;
            }
            let sigma = (*rng.pick(&candidates)).clone();
            let theta = (0..n)
                .map(|k| {
                    (0..big.size())
                        .map(|a| {
                            let mut v = a;
                            for _ in 0..k {
                                v = sigma[v];
                            }
                            Some(v)
                        })
                        .collect()
                })
                .collect();
            let global = PartialAction::new(group, big.names().to_vec(), theta).ok()?;
            let all_ideals = ideals(&big);
            let nonempty: Vec<&Vec<usize>> = all_ideals
                .iter()
                .filter(|i| !i.is_empty() && i.len() <= max_size)
                .collect();
            if nonempty.is_empty() {
                return None;
            }
            let ideal = (*rng.pick(&nonempty)).clone();
            let action = global.restrict(&ideal).ok()?;
            let carrier = subsemigroup(&big, &ideal);
            IdealPartialAction::new(carrier, action).ok()
        }
        _ => {
            // Unital ideal domains inside a monoid.
            let sg = adjoin_identity(&random_semigroup(rng, max_size.saturating_sub(1).max(1)));
            let centrals: Vec<usize> = sg
                .idempotents()
                .into_iter()
                .filter(|&e| sg.is_central(e))
                .collect();
            let e = *rng.pick(&centrals);
            let domain: Vec<usize> = {
                let mut image: Vec<usize> = (0..sg.size()).map(|s| sg.mul(e, s)).collect();
                image.sort_unstable();
                image.dedup();
                image
            };
            let involutions = subset_involutions(&sg, &domain);
            if involutions.is_empty() {
                return None;
            }
            let sigma = rng.pick(&involutions).clone();
            let mut theta_x = vec![None; sg.size()];
            for &(a, b) in &sigma {
                theta_x[a] = Some(b);
            }
            let action = PartialAction::new(
                FiniteGroup::cyclic(2),
                sg.names().to_vec(),
                vec![(0..sg.size()).map(Some).collect(), theta_x],
            )
            .ok()?;
            IdealPartialAction::new(sg, action).ok()
        }
    }
}

/// A random partial algebra on `size` elements with up to two operations of
/// arity at most 2. `density` out of 4 cells are defined; 4 of 4 is total.
pub fn random_partial_algebra(rng: &mut Rng, size: usize, density: u64) -> FinitePartialAlgebra {
    let names = (0..size).map(|i| format!("e{i}")).collect();
    let op_count = 1 + rng.below(2);
    let arities: Vec<usize> = (0..op_count).map(|_| rng.below(3)).collect();
    let ops = arities
        .iter()
        .map(|&arity| {
            (0..size.pow(arity as u32))
                .map(|_| {
                    if rng.chance(density, 4) {
                        Some(rng.below(size))
                    } else {
                        None
                    }
                })
                .collect()
        })
        .collect();
    FinitePartialAlgebra::new(names, TypeSignature::new(arities), ops)
        .expect("generated tables are well-formed")
}

/// A random compatible algebra action: a restriction-scheme partial action
/// plus random operation tables, kept only when the compatibility condition
/// holds. Returns `None` when the draw is incompatible.
pub fn random_algebra_action(
    rng: &mut Rng,
    max_group: usize,
    max_carrier: usize,
    total: bool,
) -> Option<AlgebraPartialAction> {
    let groups = group_catalog();
    let small: Vec<&FiniteGroup> = groups.iter().filter(|g| g.size() <= max_group).collect();
    let group = *rng.pick(&small);
    let action = random_partial_action(rng, group, max_carrier);
    let size = action.carrier_size();
    let density = if total { 4 } else { 1 + rng.below(3) as u64 };
    let algebra = {
        let alg = random_partial_algebra(rng, size, density);
        FinitePartialAlgebra::new(
            action.names().to_vec(),
            alg.signature().clone(),
            (0..alg.signature().len())
                .map(|op| {
                    crate::util::tuples(size, alg.signature().arity(op))
                        .map(|args| alg.op_value(op, &args))
                        .collect()
                })
                .collect(),
        )
        .expect("same shape")
    };
    if !validate_algebra_action(&action, &algebra).is_valid() {
        return None;
    }
    AlgebraPartialAction::new(action, algebra).ok()
}
