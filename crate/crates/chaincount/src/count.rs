//! The counting engine: dynamic programs over a linear extension that count
//! independent sets (all, maximal, by size) of the incomparability graph,
//! plus the clique duals and the quantities derived from size profiles.
//!
//! All programs share one shape. Sets are identified with chains of the
//! extended order, each chain is charged to its maximal element, and the
//! per-element counts are accumulated in linear-extension order:
//!
//! * `a(v)` — independent sets of the graph below `v` that contain `v`;
//!   summing over predecessors. `a(⊤)` is the number of independent sets.
//! * `b(v)` — as `a(v)` but maximal; summing over cover predecessors.
//! * `c(v, i)` / `d(v, i)` — the same split by set size.
//!
//! The predecessor sums cost one addition per comparable pair. When the
//! graph has fewer edges than non-edges the engine instead keeps a running
//! prefix sum and subtracts one term per edge, so the arithmetic operation
//! count is `O(n + m*)` with `m* = min(m, m̄)`.

use crate::graph::{Graph, PermutationModel};
use crate::poset::{ExtendedPoset, LinearExtension, Poset};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;
use std::fmt;
use std::ops::{AddAssign, SubAssign};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CountError {
    #[error("linear extension covers {le_n} elements but the instance has {n}")]
    ExtensionSizeMismatch { le_n: usize, n: usize },
    #[error("linear extension places {v} before its predecessor {u}")]
    InvalidExtension { u: usize, v: usize },
    #[error("graph has {graph_n} vertices but the poset has {poset_n}")]
    GraphSizeMismatch { graph_n: usize, poset_n: usize },
    #[error("graph is not the incomparability graph of the poset (witness pair ({u}, {v}))")]
    GraphPosetMismatch { u: usize, v: usize },
    #[error("size bound {k} exceeds the element count {n}")]
    KOutOfRange { k: usize, n: usize },
    #[error("modulus must be nonzero")]
    InvalidModulus,
    #[error("operation requires exact (non-modular) counts")]
    ExactCountsRequired,
    #[error("order is not a permutation of the vertex ids")]
    InvalidOrder,
}

/// Arithmetic mode for one counting run: exact big integers, or residues
/// modulo a fixed machine-word modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountMode {
    Exact,
    Modular(u64),
}

impl CountMode {
    fn check(self) -> Result<(), CountError> {
        match self {
            CountMode::Modular(0) => Err(CountError::InvalidModulus),
            _ => Ok(()),
        }
    }
}

/// A nonnegative set count. Exact and modular values never mix within one
/// computation; mixing them in arithmetic is a bug and panics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Count {
    Exact(BigUint),
    Mod { residue: u64, modulus: u64 },
}

impl Count {
    pub fn zero(mode: CountMode) -> Count {
        match mode {
            CountMode::Exact => Count::Exact(BigUint::zero()),
            CountMode::Modular(m) => Count::Mod {
                residue: 0,
                modulus: m,
            },
        }
    }

    pub fn one(mode: CountMode) -> Count {
        match mode {
            CountMode::Exact => Count::Exact(BigUint::from(1u8)),
            CountMode::Modular(m) => Count::Mod {
                residue: 1 % m,
                modulus: m,
            },
        }
    }

    /// Exact count from a small integer; test and example convenience.
    pub fn exact(v: u64) -> Count {
        Count::Exact(BigUint::from(v))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Count::Exact(v) => v.is_zero(),
            Count::Mod { residue, .. } => *residue == 0,
        }
    }

    pub fn as_biguint(&self) -> Option<&BigUint> {
        match self {
            Count::Exact(v) => Some(v),
            Count::Mod { .. } => None,
        }
    }

    /// The residue of this count modulo `modulus`. For a modular count the
    /// moduli must agree.
    pub fn reduced(&self, modulus: u64) -> u64 {
        match self {
            Count::Exact(v) => (v % BigUint::from(modulus))
                .try_into()
                .expect("residue fits in u64"),
            Count::Mod {
                residue,
                modulus: m,
            } => {
                assert_eq!(*m, modulus, "modulus mismatch");
                *residue
            }
        }
    }
}

impl AddAssign<&Count> for Count {
    fn add_assign(&mut self, rhs: &Count) {
        match (self, rhs) {
            (Count::Exact(a), Count::Exact(b)) => *a += b,
            (
                Count::Mod {
                    residue: a,
                    modulus: m,
                },
                Count::Mod {
                    residue: b,
                    modulus: m2,
                },
            ) => {
                assert_eq!(m, m2, "modulus mismatch");
                *a = ((*a as u128 + *b as u128) % *m as u128) as u64;
            }
            _ => panic!("mixed exact and modular counts"),
        }
    }
}

impl SubAssign<&Count> for Count {
    fn sub_assign(&mut self, rhs: &Count) {
        match (self, rhs) {
            (Count::Exact(a), Count::Exact(b)) => *a -= b,
            (
                Count::Mod {
                    residue: a,
                    modulus: m,
                },
                Count::Mod {
                    residue: b,
                    modulus: m2,
                },
            ) => {
                assert_eq!(m, m2, "modulus mismatch");
                *a = ((*a as u128 + (*m - *b) as u128) % *m as u128) as u64;
            }
            _ => panic!("mixed exact and modular counts"),
        }
    }
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Count::Exact(v) => write!(f, "{v}"),
            Count::Mod { residue, .. } => write!(f, "{residue}"),
        }
    }
}

/// Per-element counts in linear-extension order: entry 0 belongs to ⊥,
/// entries `1..=n` to the elements in visit order, entry `n+1` to ⊤.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    order: Vec<usize>,
    rank: Vec<usize>,
    entries: Vec<Count>,
}

impl CountTable {
    fn new(le: &LinearExtension, entries: Vec<Count>) -> CountTable {
        debug_assert_eq!(entries.len(), le.n() + 2);
        CountTable {
            order: le.order().to_vec(),
            rank: (0..le.n()).map(|v| le.rank(v)).collect(),
            entries,
        }
    }

    pub fn n(&self) -> usize {
        self.order.len()
    }

    /// The ⊥ entry; always 1.
    pub fn bottom(&self) -> &Count {
        &self.entries[0]
    }

    /// The ⊤ entry — the count the table was built for.
    pub fn total(&self) -> &Count {
        self.entries.last().expect("table is never empty")
    }

    /// The per-element count of base element `v`.
    pub fn for_element(&self, v: usize) -> &Count {
        &self.entries[self.rank[v] + 1]
    }

    /// All entries in extension order (⊥ first, ⊤ last).
    pub fn entries(&self) -> &[Count] {
        &self.entries
    }

    /// Elements in the extension order the table was computed under.
    pub fn order(&self) -> &[usize] {
        &self.order
    }
}

/// Which family of sets a profile or enumeration describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetClass {
    All,
    Maximal,
}

/// Counts of sets indexed by their size, `0..=k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SizeProfile {
    counts: Vec<Count>,
    kind: SetClass,
}

impl SizeProfile {
    pub fn kind(&self) -> SetClass {
        self.kind
    }

    /// Counts by size; index `i` holds the number of sets of size exactly `i`.
    pub fn counts(&self) -> &[Count] {
        &self.counts
    }

    pub fn count_of_size(&self, k: usize) -> &Count {
        &self.counts[k]
    }

    /// Largest size bound the profile covers.
    pub fn k_max(&self) -> usize {
        self.counts.len() - 1
    }

    /// Sum of all entries; equals the corresponding unsized count when the
    /// profile was computed with `k = n`.
    pub fn total(&self) -> Count {
        let mode = match &self.counts[0] {
            Count::Exact(_) => CountMode::Exact,
            Count::Mod { modulus, .. } => CountMode::Modular(*modulus),
        };
        let mut acc = Count::zero(mode);
        for c in &self.counts {
            acc += c;
        }
        acc
    }

    /// The independence number α (largest size with a nonzero count) and
    /// the number of sets of that size. Meant for an all-sets profile
    /// computed with `k = n`; on the empty graph profile `[1]` this is
    /// `(0, 1)`.
    pub fn alpha_and_maximum_count(&self) -> (usize, Count) {
        let alpha = self.counts.iter().rposition(|c| !c.is_zero()).unwrap_or(0);
        (alpha, self.counts[alpha].clone())
    }

    /// Evaluates `Σ_i counts[i]·xⁱ` by Horner's rule in exact rational
    /// arithmetic. Requires an exact-mode profile.
    pub fn evaluate(&self, x: &BigRational) -> Result<BigRational, CountError> {
        let mut acc = BigRational::zero();
        for c in self.counts.iter().rev() {
            let Count::Exact(v) = c else {
                return Err(CountError::ExactCountsRequired);
            };
            acc = acc * x + BigRational::from_integer(BigInt::from(v.clone()));
        }
        Ok(acc)
    }

    /// Convenience wrapper around [`SizeProfile::evaluate`] for integer
    /// points.
    pub fn evaluate_at_integer(&self, x: i64) -> Result<BigRational, CountError> {
        self.evaluate(&BigRational::from_integer(BigInt::from(x)))
    }
}

/// Which counting variant to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    All,
    Maximal,
    BySize(usize),
    MaximalBySize(usize),
}

/// Result of a variant dispatch: a single total or a size profile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CountResult {
    Total(Count),
    Profile(SizeProfile),
}

impl CountResult {
    pub fn as_total(&self) -> Option<&Count> {
        match self {
            CountResult::Total(c) => Some(c),
            CountResult::Profile(_) => None,
        }
    }

    pub fn as_profile(&self) -> Option<&SizeProfile> {
        match self {
            CountResult::Total(_) => None,
            CountResult::Profile(p) => Some(p),
        }
    }
}

fn check_extension(p: &Poset, le: &LinearExtension) -> Result<(), CountError> {
    if le.n() != p.n() {
        return Err(CountError::ExtensionSizeMismatch {
            le_n: le.n(),
            n: p.n(),
        });
    }
    for v in 0..p.n() {
        for &u in p.preds(v) {
            if le.rank(u) >= le.rank(v) {
                return Err(CountError::InvalidExtension { u, v });
            }
        }
    }
    Ok(())
}

/// Checking only the cover arcs suffices for the maximal-set programs:
/// an order respecting every cover arc respects their transitive closure,
/// which is the whole relation.
fn check_extension_covers(ep: &ExtendedPoset, le: &LinearExtension) -> Result<(), CountError> {
    let n = ep.base().n();
    if le.n() != n {
        return Err(CountError::ExtensionSizeMismatch { le_n: le.n(), n });
    }
    for v in 0..n {
        for &u in ep.cover_preds(v) {
            if u < n && le.rank(u) >= le.rank(v) {
                return Err(CountError::InvalidExtension { u, v });
            }
        }
    }
    Ok(())
}

/// Constant-work spot check that `g` looks like the incomparability graph
/// of `p` under `le`. The full check is [`crate::graph::validate_orientation`].
fn spot_check(g: &Graph, p: &Poset, le: &LinearExtension) -> Result<(), CountError> {
    if g.n() != p.n() {
        return Err(CountError::GraphSizeMismatch {
            graph_n: g.n(),
            poset_n: p.n(),
        });
    }
    if le.n() != p.n() {
        return Err(CountError::ExtensionSizeMismatch {
            le_n: le.n(),
            n: p.n(),
        });
    }
    // Edge counts must already agree, which catches most accidents for free.
    if g.m() != p.incomparable_pairs() {
        return Err(CountError::GraphPosetMismatch { u: 0, v: 0 });
    }
    let n = p.n();
    if n < 2 {
        return Ok(());
    }
    let mut state = n as u64 ^ 0x9e37_79b9_7f4a_7c15;
    let mut next = || {
        state = state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        (state >> 16) as usize
    };
    for _ in 0..16 {
        let u = next() % n;
        let v = next() % n;
        if u == v {
            continue;
        }
        if g.has_edge(u, v) == p.comparable(u, v) {
            return Err(CountError::GraphPosetMismatch { u, v });
        }
        if p.precedes(u, v) && le.rank(u) >= le.rank(v) {
            return Err(CountError::InvalidExtension { u, v });
        }
    }
    Ok(())
}

/// Direct evaluation of the `a` recurrence: one addition per comparable
/// pair, `O(n + m̄)` arithmetic operations.
fn a_table_direct(p: &Poset, le: &LinearExtension, mode: CountMode) -> CountTable {
    let n = p.n();
    let mut entries = Vec::with_capacity(n + 2);
    entries.push(Count::one(mode));
    let mut by_elem = vec![Count::zero(mode); n];
    for &v in le.order() {
        let mut acc = Count::one(mode); // the ⊥ term
        for &u in p.preds(v) {
            acc += &by_elem[u];
        }
        by_elem[v] = acc.clone();
        entries.push(acc);
    }
    let mut top = Count::one(mode);
    for a in &by_elem {
        top += a;
    }
    entries.push(top);
    CountTable::new(le, entries)
}

/// Prefix-sum evaluation of the `a` recurrence: the running total of all
/// earlier entries, minus one subtraction per edge to earlier neighbors.
/// `O(n + m)` arithmetic operations.
fn a_table_graph(g: &Graph, le: &LinearExtension, mode: CountMode) -> CountTable {
    let n = g.n();
    let mut entries = Vec::with_capacity(n + 2);
    entries.push(Count::one(mode));
    let mut by_elem = vec![Count::zero(mode); n];
    let mut prefix = Count::one(mode);
    for (i, &v) in le.order().iter().enumerate() {
        let mut acc = prefix.clone();
        for &u in g.neighbors(v) {
            if le.rank(u) < i {
                acc -= &by_elem[u];
            }
        }
        prefix += &acc;
        by_elem[v] = acc.clone();
        entries.push(acc);
    }
    entries.push(prefix);
    CountTable::new(le, entries)
}

/// Number of independent sets of the incomparability graph of `p` (the
/// empty set included), by the direct recurrence.
pub fn count_is(p: &Poset, le: &LinearExtension, mode: CountMode) -> Result<Count, CountError> {
    Ok(count_is_table(p, le, mode)?.total().clone())
}

/// Full per-element table behind [`count_is`].
pub fn count_is_table(
    p: &Poset,
    le: &LinearExtension,
    mode: CountMode,
) -> Result<CountTable, CountError> {
    mode.check()?;
    check_extension(p, le)?;
    Ok(a_table_direct(p, le, mode))
}

/// Number of independent sets in `O(n + m*)` arithmetic operations: iterates
/// the graph when `m ≤ m̄` and the poset arcs otherwise. `g` must be the
/// incomparability graph of `p`; by default this is only spot-checked (the
/// full check is [`crate::graph::validate_orientation`]).
pub fn count_is_fast(
    g: &Graph,
    p: &Poset,
    le: &LinearExtension,
    mode: CountMode,
) -> Result<Count, CountError> {
    Ok(count_is_fast_table(g, p, le, mode)?.total().clone())
}

/// Full per-element table behind [`count_is_fast`]; entry-for-entry equal
/// to [`count_is_table`] on valid input.
pub fn count_is_fast_table(
    g: &Graph,
    p: &Poset,
    le: &LinearExtension,
    mode: CountMode,
) -> Result<CountTable, CountError> {
    mode.check()?;
    spot_check(g, p, le)?;
    if g.m() <= g.m_bar() {
        Ok(a_table_graph(g, le, mode))
    } else {
        check_extension(p, le)?;
        Ok(a_table_direct(p, le, mode))
    }
}

/// Graph-side kernel without a materialized poset: counts independent sets
/// of `g` given a cocomparability order the caller vouches for — `order`
/// must be a linear extension of some transitive orientation of the
/// complement of `g`, and the result is unspecified otherwise. Useful when
/// the order is known by construction and the comparability side would be
/// too large to materialize (a total order on 10⁵ elements has five
/// billion comparable pairs; its incomparability graph is empty).
pub fn count_is_ordered(g: &Graph, order: &[usize], mode: CountMode) -> Result<Count, CountError> {
    Ok(count_is_ordered_table(g, order, mode)?.total().clone())
}

/// Full per-element table behind [`count_is_ordered`].
pub fn count_is_ordered_table(
    g: &Graph,
    order: &[usize],
    mode: CountMode,
) -> Result<CountTable, CountError> {
    mode.check()?;
    if order.len() != g.n() {
        return Err(CountError::InvalidOrder);
    }
    let le = LinearExtension::from_order(order.to_vec()).map_err(|_| CountError::InvalidOrder)?;
    Ok(a_table_graph(g, &le, mode))
}

/// Number of maximal independent sets of the incomparability graph: the
/// `a` recurrence with predecessors replaced by cover predecessors.
/// `O(n + |⋖|)` arithmetic operations once the covers exist.
pub fn count_maximal_is(
    ep: &ExtendedPoset,
    le: &LinearExtension,
    mode: CountMode,
) -> Result<Count, CountError> {
    Ok(count_maximal_is_table(ep, le, mode)?.total().clone())
}

/// Full per-element table behind [`count_maximal_is`].
pub fn count_maximal_is_table(
    ep: &ExtendedPoset,
    le: &LinearExtension,
    mode: CountMode,
) -> Result<CountTable, CountError> {
    mode.check()?;
    check_extension_covers(ep, le)?;
    let n = ep.base().n();
    let bottom = ep.bottom();
    let mut entries = Vec::with_capacity(n + 2);
    // Values indexed by extended id; ⊥ seeds the recurrence.
    let mut by_id = vec![Count::zero(mode); n + 1];
    by_id[bottom] = Count::one(mode);
    entries.push(Count::one(mode));
    for &v in le.order() {
        let mut acc = Count::zero(mode);
        for &u in ep.cover_preds(v) {
            acc += &by_id[u];
        }
        by_id[v] = acc.clone();
        entries.push(acc);
    }
    let mut top = Count::zero(mode);
    for &u in ep.cover_preds(ep.top()) {
        top += &by_id[u];
    }
    entries.push(top);
    Ok(CountTable::new(le, entries))
}

/// Counts of independent sets of each size `0..=k`. Applies the prefix-sum
/// trick per size level, so the arithmetic operation count is
/// `O(k·(n + m*))`; the incomparability graph is materialized internally
/// when the edge side is the cheaper one.
pub fn count_is_by_size(
    p: &Poset,
    le: &LinearExtension,
    k: usize,
    mode: CountMode,
) -> Result<SizeProfile, CountError> {
    mode.check()?;
    if k > p.n() {
        return Err(CountError::KOutOfRange { k, n: p.n() });
    }
    check_extension(p, le)?;
    let counts = if p.incomparable_pairs() <= p.comparable_pairs() {
        let g = Graph::incomparability_of(p);
        c_rows_graph(&g, le, k, mode)
    } else {
        c_rows_direct(p, le, k, mode)
    };
    Ok(SizeProfile {
        counts,
        kind: SetClass::All,
    })
}

fn c_rows_direct(p: &Poset, le: &LinearExtension, k: usize, mode: CountMode) -> Vec<Count> {
    let n = p.n();
    let zero_row = || vec![Count::zero(mode); k + 1];
    let mut rows: Vec<Vec<Count>> = vec![Vec::new(); n];
    let mut top = zero_row();
    top[0] = Count::one(mode); // the ⊥ term of each level sum
    for &v in le.order() {
        let mut row = zero_row();
        if k >= 1 {
            row[1] = Count::one(mode); // from c(⊥, 0)
            for &u in p.preds(v) {
                for i in 1..=k {
                    row[i] += &rows[u][i - 1];
                }
            }
        }
        for i in 0..=k {
            top[i] += &row[i];
        }
        rows[v] = row;
    }
    top
}

fn c_rows_graph(g: &Graph, le: &LinearExtension, k: usize, mode: CountMode) -> Vec<Count> {
    let n = g.n();
    let zero_row = || vec![Count::zero(mode); k + 1];
    let mut rows: Vec<Vec<Count>> = vec![Vec::new(); n];
    // prefix[i] = c(⊥, i) + Σ over processed elements of c(·, i).
    let mut prefix = zero_row();
    prefix[0] = Count::one(mode);
    for (pos, &v) in le.order().iter().enumerate() {
        let mut row = zero_row();
        row[1..=k].clone_from_slice(&prefix[..k]);
        for &u in g.neighbors(v) {
            if le.rank(u) < pos {
                for i in 1..=k {
                    row[i] -= &rows[u][i - 1];
                }
            }
        }
        for i in 1..=k {
            prefix[i] += &row[i];
        }
        rows[v] = row;
    }
    prefix
}

/// Counts of maximal independent sets of each size `0..=k`, over cover
/// predecessors.
pub fn count_maximal_is_by_size(
    ep: &ExtendedPoset,
    le: &LinearExtension,
    k: usize,
    mode: CountMode,
) -> Result<SizeProfile, CountError> {
    mode.check()?;
    let n = ep.base().n();
    if k > n {
        return Err(CountError::KOutOfRange { k, n });
    }
    check_extension_covers(ep, le)?;
    let zero_row = || vec![Count::zero(mode); k + 1];
    let mut rows: Vec<Vec<Count>> = vec![Vec::new(); n + 1];
    let mut bottom_row = zero_row();
    bottom_row[0] = Count::one(mode);
    rows[ep.bottom()] = bottom_row;
    for &v in le.order() {
        let mut row = zero_row();
        for &u in ep.cover_preds(v) {
            for i in 1..=k {
                row[i] += &rows[u][i - 1];
            }
        }
        rows[v] = row;
    }
    let mut top = zero_row();
    for &u in ep.cover_preds(ep.top()) {
        for i in 0..=k {
            top[i] += &rows[u][i];
        }
    }
    Ok(SizeProfile {
        counts: top,
        kind: SetClass::Maximal,
    })
}

/// Runs one counting variant against the chains of `p` — equivalently, the
/// independent sets of its incomparability graph. Cover relations are
/// derived internally for the maximal variants.
pub fn count_variant(
    p: &Poset,
    le: &LinearExtension,
    variant: Variant,
    mode: CountMode,
) -> Result<CountResult, CountError> {
    match variant {
        Variant::All => Ok(CountResult::Total(count_is(p, le, mode)?)),
        Variant::Maximal => {
            let ep = p.cover_relation();
            Ok(CountResult::Total(count_maximal_is(&ep, le, mode)?))
        }
        Variant::BySize(k) => Ok(CountResult::Profile(count_is_by_size(p, le, k, mode)?)),
        Variant::MaximalBySize(k) => {
            let ep = p.cover_relation();
            Ok(CountResult::Profile(count_maximal_is_by_size(
                &ep, le, k, mode,
            )?))
        }
    }
}

/// Clique counts of the comparability graph of `p`. Cliques of that graph
/// are the chains of `p`, which are the independent sets of its
/// incomparability graph, so this dispatches to the corresponding
/// independent-set program on the same poset. The empty clique is included
/// in the all-sets variant.
pub fn count_cliques(
    p: &Poset,
    le: &LinearExtension,
    variant: Variant,
    mode: CountMode,
) -> Result<CountResult, CountError> {
    count_variant(p, le, variant, mode)
}

/// Runs a variant on both sides of a permutation model: independent sets of
/// the inversion graph, and cliques of the same graph (independent sets of
/// its complement). Linear extensions are derived internally; any extension
/// yields the same counts.
pub fn permutation_counts(
    model: &PermutationModel,
    variant: Variant,
    mode: CountMode,
) -> Result<(CountResult, CountResult), CountError> {
    let is_le = model.is_poset().linear_extension();
    let clique_le = model.clique_poset().linear_extension();
    let is = count_variant(model.is_poset(), &is_le, variant, mode)?;
    let cliques = count_variant(model.clique_poset(), &clique_le, variant, mode)?;
    Ok((is, cliques))
}
