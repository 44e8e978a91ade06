//! Strict partial orders: construction from DAG arcs, linear extensions,
//! cover relations, and the bottom/top extension used by the counting
//! recurrences.

use thiserror::Error;

/// Errors raised while building or querying partial orders.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PosetError {
    /// An arc referenced an element id outside `0..n`.
    #[error("arc references element {element}, but the poset has {n} elements")]
    ElementOutOfRange { element: usize, n: usize },
    /// The arc set is not acyclic; the witness lists one directed cycle in
    /// arc direction.
    #[error("arc set contains a directed cycle: {cycle:?}")]
    CycleDetected { cycle: Vec<usize> },
    /// A vertex sequence was not a permutation of `0..n`.
    #[error("sequence is not a permutation of 0..{n}")]
    NotAPermutation { n: usize },
}

/// Square bit matrix used for reachability computations.
struct BitMatrix {
    words_per_row: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    fn new(n: usize) -> Self {
        let words_per_row = n.div_ceil(64);
        BitMatrix {
            words_per_row,
            bits: vec![0; words_per_row * n],
        }
    }

    fn set(&mut self, row: usize, col: usize) {
        self.bits[row * self.words_per_row + col / 64] |= 1u64 << (col % 64);
    }

    /// `row[dst] |= row[src]`; the rows must be distinct.
    fn or_row_into(&mut self, src: usize, dst: usize) {
        assert_ne!(src, dst);
        let w = self.words_per_row;
        let (lo, hi) = if src < dst { (src, dst) } else { (dst, src) };
        let (head, tail) = self.bits.split_at_mut(hi * w);
        let lo_row = &head[lo * w..lo * w + w];
        let hi_row = &mut tail[..w];
        if src < dst {
            for (d, s) in hi_row.iter_mut().zip(lo_row) {
                *d |= *s;
            }
        } else {
            // src row lives in `tail`; copy it out first to appease the borrow.
            let src_row: Vec<u64> = hi_row.to_vec();
            let dst_row = &mut head[lo * w..lo * w + w];
            for (d, s) in dst_row.iter_mut().zip(&src_row) {
                *d |= *s;
            }
        }
    }

    fn row_ones(&self, row: usize, n: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let base = row * self.words_per_row;
        for w in 0..self.words_per_row {
            let mut word = self.bits[base + w];
            while word != 0 {
                let bit = word.trailing_zeros() as usize;
                let col = w * 64 + bit;
                if col < n {
                    out.push(col);
                }
                word &= word - 1;
            }
        }
        out
    }
}

/// A strict partial order on elements `0..n`, stored as the full
/// predecessor/successor relation (always transitively closed).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    n: usize,
    pred: Vec<Vec<usize>>,
    succ: Vec<Vec<usize>>,
    comparable_pairs: u64,
}

impl Poset {
    /// Builds a poset as the transitive closure of the given arc set, where
    /// `(u, v)` means `u ≺ v`. Arcs may be any DAG (a Hasse diagram, an
    /// already-closed relation, anything in between); duplicates are fine.
    ///
    /// Fails with [`PosetError::CycleDetected`] if the arcs contain a
    /// directed cycle, or [`PosetError::ElementOutOfRange`] on a bad id.
    pub fn from_arcs(n: usize, arcs: &[(usize, usize)]) -> Result<Poset, PosetError> {
        for &(u, v) in arcs {
            let bad = if u >= n {
                Some(u)
            } else if v >= n {
                Some(v)
            } else {
                None
            };
            if let Some(element) = bad {
                return Err(PosetError::ElementOutOfRange { element, n });
            }
            if u == v {
                return Err(PosetError::CycleDetected { cycle: vec![u] });
            }
        }

        let mut direct_succ = vec![Vec::new(); n];
        let mut direct_pred = vec![Vec::new(); n];
        for &(u, v) in arcs {
            direct_succ[u].push(v);
            direct_pred[v].push(u);
        }
        for list in direct_succ.iter_mut().chain(direct_pred.iter_mut()) {
            list.sort_unstable();
            list.dedup();
        }

        let topo = match toposort(n, &direct_succ, &direct_pred) {
            Ok(order) => order,
            Err(cycle) => return Err(PosetError::CycleDetected { cycle }),
        };

        // Reachability by reverse topological sweep: reach(v) accumulates
        // every direct successor together with its own reach set.
        let mut reach = BitMatrix::new(n);
        for &v in topo.iter().rev() {
            for &w in &direct_succ[v] {
                reach.set(v, w);
                reach.or_row_into(w, v);
            }
        }

        let succ: Vec<Vec<usize>> = (0..n).map(|v| reach.row_ones(v, n)).collect();
        let comparable_pairs = succ.iter().map(|s| s.len() as u64).sum();
        let mut pred = vec![Vec::new(); n];
        for (v, successors) in succ.iter().enumerate() {
            for &w in successors {
                pred[w].push(v);
            }
        }

        Ok(Poset {
            n,
            pred,
            succ,
            comparable_pairs,
        })
    }

    /// The empty order on `n` elements.
    pub fn antichain(n: usize) -> Poset {
        Poset {
            n,
            pred: vec![Vec::new(); n],
            succ: vec![Vec::new(); n],
            comparable_pairs: 0,
        }
    }

    /// The total order `0 ≺ 1 ≺ … ≺ n-1`. Materializes all `n·(n-1)/2`
    /// comparable pairs, so meant for small `n`.
    pub fn chain(n: usize) -> Poset {
        let pred: Vec<Vec<usize>> = (0..n).map(|v| (0..v).collect()).collect();
        let succ: Vec<Vec<usize>> = (0..n).map(|v| (v + 1..n).collect()).collect();
        let comparable_pairs = (n as u64) * (n as u64 - if n == 0 { 0 } else { 1 }) / 2;
        Poset {
            n,
            pred,
            succ,
            comparable_pairs,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Elements `u` with `u ≺ v`, ascending.
    pub fn preds(&self, v: usize) -> &[usize] {
        &self.pred[v]
    }

    /// Elements `w` with `v ≺ w`, ascending.
    pub fn succs(&self, v: usize) -> &[usize] {
        &self.succ[v]
    }

    /// Number of comparable pairs (written m̄ in the docs).
    pub fn comparable_pairs(&self) -> u64 {
        self.comparable_pairs
    }

    /// Number of incomparable pairs, i.e. the edge count of the
    /// incomparability graph.
    pub fn incomparable_pairs(&self) -> u64 {
        let n = self.n as u64;
        n * n.saturating_sub(1) / 2 - self.comparable_pairs
    }

    /// True iff `u ≺ v`.
    pub fn precedes(&self, u: usize, v: usize) -> bool {
        self.succ[u].binary_search(&v).is_ok()
    }

    /// True iff `u ≺ v` or `v ≺ u`.
    pub fn comparable(&self, u: usize, v: usize) -> bool {
        self.precedes(u, v) || self.precedes(v, u)
    }

    /// The lexicographically smallest linear extension: repeatedly emit the
    /// smallest element whose predecessors have all been emitted.
    pub fn linear_extension(&self) -> LinearExtension {
        use std::cmp::Reverse;
        use std::collections::BinaryHeap;

        let mut remaining: Vec<usize> = self.pred.iter().map(Vec::len).collect();
        let mut heap: BinaryHeap<Reverse<usize>> = (0..self.n)
            .filter(|&v| remaining[v] == 0)
            .map(Reverse)
            .collect();
        let mut order = Vec::with_capacity(self.n);
        while let Some(Reverse(v)) = heap.pop() {
            order.push(v);
            for &w in &self.succ[v] {
                remaining[w] -= 1;
                if remaining[w] == 0 {
                    heap.push(Reverse(w));
                }
            }
        }
        debug_assert_eq!(order.len(), self.n);
        LinearExtension::from_order(order).expect("toposort yields a permutation")
    }

    /// Computes the cover relation (transitive reduction) and wraps the
    /// poset with the virtual bottom/top extension.
    pub fn cover_relation(&self) -> ExtendedPoset {
        let n = self.n;
        let bottom = n;
        let top = n + 1;
        let mut cover_pred: Vec<Vec<usize>> = Vec::with_capacity(n + 2);

        // u covers v iff u ≺ v and no other predecessor w of v has u ≺ w.
        let mut shadowed = vec![false; n];
        let mut touched = Vec::new();
        for v in 0..n {
            for &w in &self.pred[v] {
                for &u in &self.pred[w] {
                    if !shadowed[u] {
                        shadowed[u] = true;
                        touched.push(u);
                    }
                }
            }
            let covers: Vec<usize> = if self.pred[v].is_empty() {
                vec![bottom]
            } else {
                self.pred[v]
                    .iter()
                    .copied()
                    .filter(|&u| !shadowed[u])
                    .collect()
            };
            cover_pred.push(covers);
            for u in touched.drain(..) {
                shadowed[u] = false;
            }
        }

        cover_pred.push(Vec::new()); // bottom
        let top_covers: Vec<usize> = if n == 0 {
            vec![bottom]
        } else {
            (0..n).filter(|&v| self.succ[v].is_empty()).collect()
        };
        cover_pred.push(top_covers);
        debug_assert_eq!(cover_pred.len(), n + 2);
        debug_assert!(!cover_pred[top].is_empty());

        ExtendedPoset {
            base: self.clone(),
            cover_pred,
        }
    }

    /// Diagnostic check of the structural invariants (irreflexive,
    /// antisymmetric, transitive, pred/succ mutually consistent and sorted).
    pub fn check_invariants(&self) -> Result<(), String> {
        let mut pair_count = 0u64;
        for v in 0..self.n {
            if !self.pred[v].windows(2).all(|w| w[0] < w[1]) {
                return Err(format!("pred[{v}] is not strictly sorted"));
            }
            if self.pred[v].binary_search(&v).is_ok() {
                return Err(format!("{v} precedes itself"));
            }
            for &u in &self.pred[v] {
                if u >= self.n {
                    return Err(format!("pred[{v}] contains out-of-range {u}"));
                }
                if self.succ[u].binary_search(&v).is_err() {
                    return Err(format!("pred/succ disagree on ({u}, {v})"));
                }
                if self.pred[u].binary_search(&v).is_ok() {
                    return Err(format!("antisymmetry violated on ({u}, {v})"));
                }
            }
            pair_count += self.pred[v].len() as u64;
        }
        for v in 0..self.n {
            for &u in &self.pred[v] {
                for &t in &self.pred[u] {
                    if self.pred[v].binary_search(&t).is_err() {
                        return Err(format!("transitivity violated: {t} ≺ {u} ≺ {v}"));
                    }
                }
            }
        }
        if pair_count != self.comparable_pairs {
            return Err(format!(
                "comparable_pairs is {}, but the relation stores {pair_count}",
                self.comparable_pairs
            ));
        }
        Ok(())
    }
}

fn toposort(
    n: usize,
    direct_succ: &[Vec<usize>],
    direct_pred: &[Vec<usize>],
) -> Result<Vec<usize>, Vec<usize>> {
    let mut remaining: Vec<usize> = direct_pred.iter().map(Vec::len).collect();
    let mut stack: Vec<usize> = (0..n).filter(|&v| remaining[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    let mut emitted = vec![false; n];
    while let Some(v) = stack.pop() {
        order.push(v);
        emitted[v] = true;
        for &w in &direct_succ[v] {
            remaining[w] -= 1;
            if remaining[w] == 0 {
                stack.push(w);
            }
        }
    }
    if order.len() == n {
        return Ok(order);
    }

    // Every leftover vertex keeps a leftover predecessor, so walking
    // predecessors inside the leftover set must revisit a vertex.
    let start = (0..n)
        .find(|&v| !emitted[v])
        .expect("leftover vertex exists");
    let mut seen_at = vec![usize::MAX; n];
    let mut walk = Vec::new();
    let mut v = start;
    loop {
        if seen_at[v] != usize::MAX {
            let mut cycle: Vec<usize> = walk[seen_at[v]..].to_vec();
            cycle.reverse(); // walk followed predecessors; report in arc direction
            return Err(cycle);
        }
        seen_at[v] = walk.len();
        walk.push(v);
        v = *direct_pred[v]
            .iter()
            .find(|&&u| !emitted[u])
            .expect("leftover vertex has a leftover predecessor");
    }
}

/// A permutation of the elements compatible with the order: `u ≺ v` implies
/// `rank[u] < rank[v]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearExtension {
    order: Vec<usize>,
    rank: Vec<usize>,
}

impl LinearExtension {
    /// Wraps an explicit visit order; fails unless it is a permutation of
    /// `0..n`. Whether it actually extends a given poset is checked by the
    /// counting entry points (or [`LinearExtension::extends`]).
    pub fn from_order(order: Vec<usize>) -> Result<LinearExtension, PosetError> {
        let n = order.len();
        let mut rank = vec![usize::MAX; n];
        for (i, &v) in order.iter().enumerate() {
            if v >= n || rank[v] != usize::MAX {
                return Err(PosetError::NotAPermutation { n });
            }
            rank[v] = i;
        }
        Ok(LinearExtension { order, rank })
    }

    /// The natural order `0, 1, …, n-1`.
    pub fn identity(n: usize) -> LinearExtension {
        LinearExtension {
            order: (0..n).collect(),
            rank: (0..n).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.order.len()
    }

    /// Elements in visit order.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Position of element `v` in the visit order.
    pub fn rank(&self, v: usize) -> usize {
        self.rank[v]
    }

    /// Full check that every stored predecessor pair respects the order.
    pub fn extends(&self, p: &Poset) -> bool {
        self.order.len() == p.n()
            && (0..p.n()).all(|v| p.preds(v).iter().all(|&u| self.rank[u] < self.rank[v]))
    }
}

/// A poset together with a virtual global minimum and maximum and the cover
/// relation of the extension.
///
/// Extended element ids: `0..n` are the base elements, [`Self::bottom`] is
/// `n`, and [`Self::top`] is `n + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtendedPoset {
    base: Poset,
    cover_pred: Vec<Vec<usize>>,
}

impl ExtendedPoset {
    pub fn base(&self) -> &Poset {
        &self.base
    }

    /// Id of the virtual minimum (`n`).
    pub fn bottom(&self) -> usize {
        self.base.n()
    }

    /// Id of the virtual maximum (`n + 1`).
    pub fn top(&self) -> usize {
        self.base.n() + 1
    }

    /// Cover predecessors of `v` (`u` with `u ⋖ v`); `v` may be a base
    /// element, [`Self::bottom`] (empty), or [`Self::top`].
    pub fn cover_preds(&self, v: usize) -> &[usize] {
        &self.cover_pred[v]
    }

    /// True iff `u ⋖ v` in the extension.
    pub fn is_cover(&self, u: usize, v: usize) -> bool {
        self.cover_pred[v].contains(&u)
    }

    /// The cover arcs between base elements only — the Hasse diagram of the
    /// original poset. Transitively closing these arcs reconstructs the base.
    pub fn base_cover_arcs(&self) -> Vec<(usize, usize)> {
        let n = self.base.n();
        let mut arcs = Vec::new();
        for v in 0..n {
            for &u in &self.cover_pred[v] {
                if u < n {
                    arcs.push((u, v));
                }
            }
        }
        arcs
    }

    /// Classifies a set of base elements: is it a chain (pairwise
    /// comparable), and is the extended chain `{⊥} ∪ s ∪ {⊤}` tight
    /// (consecutive elements in cover relation)?
    ///
    /// The witness is the first offending pair: an incomparable pair when
    /// not a chain, or a consecutive non-cover pair (possibly involving the
    /// bottom/top ids) when a chain is not tight.
    pub fn check_chain(&self, s: &[usize]) -> ChainVerdict {
        let n = self.base.n();
        let mut elems: Vec<usize> = s.to_vec();
        elems.sort_unstable();
        elems.dedup();
        assert!(
            elems.iter().all(|&v| v < n),
            "check_chain expects base elements below {n}"
        );

        // On a transitively closed order, u ≺ v forces |pred(u)| < |pred(v)|,
        // so sorting by predecessor count lines a chain up in ≺ order.
        elems.sort_by_key(|&v| self.base.preds(v).len());
        for w in elems.windows(2) {
            if !self.base.comparable(w[0], w[1]) {
                return ChainVerdict {
                    is_chain: false,
                    is_tight: false,
                    witness: Some((w[0], w[1])),
                };
            }
        }

        // Chain confirmed; test tightness of ⊥, e₁, …, e_k, ⊤.
        let mut prev = self.bottom();
        for &v in &elems {
            if !self.is_cover(prev, v) {
                return ChainVerdict {
                    is_chain: true,
                    is_tight: false,
                    witness: Some((prev, v)),
                };
            }
            prev = v;
        }
        if !self.is_cover(prev, self.top()) {
            return ChainVerdict {
                is_chain: true,
                is_tight: false,
                witness: Some((prev, self.top())),
            };
        }
        ChainVerdict {
            is_chain: true,
            is_tight: true,
            witness: None,
        }
    }
}

/// Result of [`ExtendedPoset::check_chain`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainVerdict {
    pub is_chain: bool,
    pub is_tight: bool,
    pub witness: Option<(usize, usize)>,
}
