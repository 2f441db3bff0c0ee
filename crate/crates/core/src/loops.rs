//! Finite loops given by Cayley tables.
//!
//! A [`FiniteLoop`] stores its multiplication together with both division
//! tables, with the identity always at index 0. Everything else in the crate
//! is a pure function of these three tables.

use std::fmt;

use thiserror::Error;

/// Default ceiling on loop order for the O(n³) exhaustive analyses.
pub const DEFAULT_ORDER_CAP: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LoopError {
    #[error("empty table")]
    Empty,
    #[error("table is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("entry {value} at ({row}, {col}) is out of range for order {order}")]
    EntryOutOfRange { row: usize, col: usize, value: usize, order: usize },
    #[error("not a Latin square: {line} repeats {value} at positions {first} and {second}")]
    NotLatinSquare { line: Line, value: usize, first: usize, second: usize },
    #[error("identity candidate {candidate} fails at x = {witness}")]
    NoIdentity { candidate: usize, witness: usize },
    #[error("expected {expected} labels, got {got}")]
    LabelCount { expected: usize, got: usize },
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("order {order} exceeds the cap {cap}")]
    SizeCapExceeded { order: usize, cap: usize },
}

/// A row or column of a Cayley table, used in diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Line {
    Row(usize),
    Column(usize),
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Line::Row(r) => write!(f, "row {r}"),
            Line::Column(c) => write!(f, "column {c}"),
        }
    }
}

/// A finite loop `(G, ·, \, /, e)` with identity at index 0.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteLoop {
    order: usize,
    labels: Vec<String>,
    table: Vec<usize>,
    // left_div[a*n + b] = a\b, right_div[a*n + b] = a/b
    left_div: Vec<usize>,
    right_div: Vec<usize>,
}

impl fmt::Debug for FiniteLoop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FiniteLoop(order {})", self.order)?;
        for a in 0..self.order {
            let row: Vec<&str> = (0..self.order).map(|b| self.label(self.mul(a, b))).collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Validates a Cayley table and precomputes its divisions.
///
/// The element at `identity` is moved to index 0 (by swapping it with the
/// element currently there); labels default to the original indices.
pub fn verify_loop(table: &[Vec<usize>], identity: usize) -> Result<FiniteLoop, LoopError> {
    let labels = (0..table.len()).map(|i| i.to_string()).collect();
    FiniteLoop::with_labels(table, identity, labels)
}

impl FiniteLoop {
    pub fn with_labels(
        table: &[Vec<usize>],
        identity: usize,
        labels: Vec<String>,
    ) -> Result<Self, LoopError> {
        let n = table.len();
        if n == 0 {
            return Err(LoopError::Empty);
        }
        if labels.len() != n {
            return Err(LoopError::LabelCount { expected: n, got: labels.len() });
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(LoopError::DuplicateLabel(l.clone()));
            }
        }
        for (row, r) in table.iter().enumerate() {
            if r.len() != n {
                return Err(LoopError::NotSquare { row, len: r.len(), expected: n });
            }
            for (col, &value) in r.iter().enumerate() {
                if value >= n {
                    return Err(LoopError::EntryOutOfRange { row, col, value, order: n });
                }
            }
        }
        if identity >= n {
            return Err(LoopError::EntryOutOfRange { row: identity, col: identity, value: identity, order: n });
        }
        check_latin(table)?;
        for x in 0..n {
            if table[identity][x] != x || table[x][identity] != x {
                return Err(LoopError::NoIdentity { candidate: identity, witness: x });
            }
        }

        // Swap `identity` and 0 so that the identity is canonical.
        let relabel = |i: usize| -> usize {
            if i == identity {
                0
            } else if i == 0 {
                identity
            } else {
                i
            }
        };
        let mut flat = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                flat[relabel(a) * n + relabel(b)] = relabel(table[a][b]);
            }
        }
        let mut new_labels = labels;
        new_labels.swap(0, identity);
        Ok(Self::from_flat_unchecked(n, flat, new_labels))
    }

    /// Builds the division tables for a flat table already known to be a
    /// loop with identity 0.
    pub(crate) fn from_flat_unchecked(n: usize, table: Vec<usize>, labels: Vec<String>) -> Self {
        let mut left_div = vec![0; n * n];
        let mut right_div = vec![0; n * n];
        for a in 0..n {
            for x in 0..n {
                let b = table[a * n + x];
                // a·x = b  ⇒  a\b = x and b/x = a
                left_div[a * n + b] = x;
                right_div[b * n + x] = a;
            }
        }
        FiniteLoop { order: n, labels, table, left_div, right_div }
    }

    /// Builds a loop from a flat table, validating it.
    pub fn from_flat(n: usize, table: Vec<usize>, labels: Vec<String>) -> Result<Self, LoopError> {
        let rows: Vec<Vec<usize>> = table.chunks(n.max(1)).map(|c| c.to_vec()).collect();
        if rows.len() != n {
            return Err(LoopError::NotSquare { row: rows.len(), len: 0, expected: n });
        }
        Self::with_labels(&rows, 0, labels)
    }

    pub fn trivial() -> Self {
        Self::from_flat_unchecked(1, vec![0], vec!["e".to_string()])
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub const IDENTITY: usize = 0;

    pub fn identity(&self) -> usize {
        0
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn with_relabeled_names(mut self, labels: Vec<String>) -> Result<Self, LoopError> {
        if labels.len() != self.order {
            return Err(LoopError::LabelCount { expected: self.order, got: labels.len() });
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(LoopError::DuplicateLabel(l.clone()));
            }
        }
        self.labels = labels;
        Ok(self)
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    /// `a\b`, the unique `x` with `a·x = b`.
    #[inline]
    pub fn ldiv(&self, a: usize, b: usize) -> usize {
        self.left_div[a * self.order + b]
    }

    /// `a/b`, the unique `y` with `y·b = a`.
    #[inline]
    pub fn rdiv(&self, a: usize, b: usize) -> usize {
        self.right_div[a * self.order + b]
    }

    /// The Cayley table as rows.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(|c| c.to_vec()).collect()
    }

    pub fn flat_table(&self) -> &[usize] {
        &self.table
    }

    /// `t(a,b,c) = ((ab)c)/(a(bc))`, so that `(ab)c = t·(a(bc))`.
    #[inline]
    pub fn t_assoc(&self, a: usize, b: usize, c: usize) -> usize {
        let left = self.mul(self.mul(a, b), c);
        let right = self.mul(a, self.mul(b, c));
        self.rdiv(left, right)
    }

    /// `p(a,b,c) = (a(bc))\((ab)c)`, so that `(ab)c = (a(bc))·p`.
    #[inline]
    pub fn p_assoc(&self, a: usize, b: usize, c: usize) -> usize {
        let left = self.mul(self.mul(a, b), c);
        let right = self.mul(a, self.mul(b, c));
        self.ldiv(right, left)
    }

    /// `Inv_l(a) = a\e`.
    pub fn inv_l(&self, a: usize) -> usize {
        self.ldiv(a, 0)
    }

    /// `Inv_r(a) = e/a`.
    pub fn inv_r(&self, a: usize) -> usize {
        self.rdiv(0, a)
    }

    pub fn is_associative(&self) -> bool {
        self.associativity_witness().is_none()
    }

    /// First triple in lexicographic order with `(ab)c ≠ a(bc)`.
    pub fn associativity_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.order;
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Applies a permutation of the elements: `perm[old] = new`.
    ///
    /// The result is re-normalized so that the identity sits at index 0.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let n = self.order;
        assert_eq!(perm.len(), n);
        let mut rows = vec![vec![0; n]; n];
        let mut labels = vec![String::new(); n];
        for a in 0..n {
            labels[perm[a]] = self.labels[a].clone();
            for b in 0..n {
                rows[perm[a]][perm[b]] = perm[self.mul(a, b)];
            }
        }
        Self::with_labels(&rows, perm[0], labels).expect("permutation of a loop is a loop")
    }

    pub fn check_cap(&self, cap: usize) -> Result<(), LoopError> {
        if self.order > cap {
            Err(LoopError::SizeCapExceeded { order: self.order, cap })
        } else {
            Ok(())
        }
    }
}

fn check_latin(table: &[Vec<usize>]) -> Result<(), LoopError> {
    let n = table.len();
    let mut seen = vec![usize::MAX; n];
    for (r, row) in table.iter().enumerate() {
        seen.iter_mut().for_each(|s| *s = usize::MAX);
        for (c, &v) in row.iter().enumerate() {
            if seen[v] != usize::MAX {
                return Err(LoopError::NotLatinSquare { line: Line::Row(r), value: v, first: seen[v], second: c });
            }
            seen[v] = c;
        }
    }
    for c in 0..n {
        seen.iter_mut().for_each(|s| *s = usize::MAX);
        for (r, row) in table.iter().enumerate() {
            let v = row[c];
            if seen[v] != usize::MAX {
                return Err(LoopError::NotLatinSquare { line: Line::Column(c), value: v, first: seen[v], second: r });
            }
            seen[v] = r;
        }
    }
    Ok(())
}

/// A subset of a loop's elements, stored as a bitset over indices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElementSet {
    order: usize,
    words: Vec<u64>,
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl ElementSet {
    pub fn empty(order: usize) -> Self {
        ElementSet { order, words: vec![0; order.div_ceil(64)] }
    }

    pub fn full(order: usize) -> Self {
        let mut s = Self::empty(order);
        for x in 0..order {
            s.insert(x);
        }
        s
    }

    pub fn from_indices(order: usize, members: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(order);
        for x in members {
            s.insert(x);
        }
        s
    }

    pub fn singleton(order: usize, x: usize) -> Self {
        Self::from_indices(order, [x])
    }

    /// Order of the ambient loop.
    pub fn universe(&self) -> usize {
        self.order
    }

    pub fn insert(&mut self, x: usize) -> bool {
        assert!(x < self.order, "element {x} outside loop of order {}", self.order);
        let (w, b) = (x / 64, x % 64);
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        x < self.order && self.words[x / 64] & (1 << (x % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.order).filter(move |&x| self.contains(x))
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        ElementSet {
            order: self.order,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }

    pub fn union(&self, other: &ElementSet) -> ElementSet {
        ElementSet {
            order: self.order,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a | b).collect(),
        }
    }

    pub fn labels<'a>(&'a self, g: &'a FiniteLoop) -> Vec<&'a str> {
        self.iter().map(|x| g.label(x)).collect()
    }
}

/// Setwise product `DQ = {ab : a ∈ D, b ∈ Q}`.
pub fn set_product(g: &FiniteLoop, d: &ElementSet, q: &ElementSet) -> ElementSet {
    let mut out = ElementSet::empty(g.order());
    for a in d.iter() {
        for b in q.iter() {
            out.insert(g.mul(a, b));
        }
    }
    out
}

/// Smallest subset containing `e` and `generators` that is closed under
/// multiplication and both divisions.
pub fn subloop_closure(g: &FiniteLoop, generators: impl IntoIterator<Item = usize>) -> ElementSet {
    let mut set = ElementSet::singleton(g.order(), 0);
    let mut members = vec![0];
    let mut queue: Vec<usize> = Vec::new();
    for x in generators {
        if set.insert(x) {
            members.push(x);
            queue.push(x);
        }
    }
    while let Some(x) = queue.pop() {
        // Combine x with every member found so far (including itself); later
        // members will in turn be combined with x when they are popped.
        let snapshot = members.len();
        for i in 0..snapshot {
            let y = members[i];
            for z in [g.mul(x, y), g.mul(y, x), g.ldiv(x, y), g.ldiv(y, x), g.rdiv(x, y), g.rdiv(y, x)] {
                if set.insert(z) {
                    members.push(z);
                    queue.push(z);
                }
            }
        }
    }
    set
}

/// Witness that a set is not a subloop.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosureFailure {
    MissingIdentity,
    Product(usize, usize),
    LeftDivision(usize, usize),
    RightDivision(usize, usize),
}

/// Checks that `h` contains `e` and is closed under `·`, `\` and `/`.
pub fn subloop_check(g: &FiniteLoop, h: &ElementSet) -> Result<(), ClosureFailure> {
    if !h.contains(0) {
        return Err(ClosureFailure::MissingIdentity);
    }
    for a in h.iter() {
        for b in h.iter() {
            if !h.contains(g.mul(a, b)) {
                return Err(ClosureFailure::Product(a, b));
            }
            if !h.contains(g.ldiv(a, b)) {
                return Err(ClosureFailure::LeftDivision(a, b));
            }
            if !h.contains(g.rdiv(a, b)) {
                return Err(ClosureFailure::RightDivision(a, b));
            }
        }
    }
    Ok(())
}

/// True when `h` is a subloop on which multiplication is associative.
pub fn is_subgroup(g: &FiniteLoop, h: &ElementSet) -> bool {
    subloop_check(g, h).is_ok()
        && h.iter().all(|a| h.iter().all(|b| h.iter().all(|c| g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c)))))
}

/// Left, middle and right nuclei, the nucleus, the commutant and the center.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NucleusParts {
    pub left: ElementSet,
    pub middle: ElementSet,
    pub right: ElementSet,
    pub nucleus: ElementSet,
    pub commutant: ElementSet,
    pub center: ElementSet,
}

/// Computes `N_l, N_m, N_r, N, Com, Z` by exhaustive quantifier checks.
pub fn nucleus_parts(g: &FiniteLoop) -> NucleusParts {
    let n = g.order();
    // assoc[a][b][c] = ((ab)c == a(bc))
    let mut assoc = vec![false; n * n * n];
    for a in 0..n {
        for b in 0..n {
            let ab = g.mul(a, b);
            for c in 0..n {
                assoc[(a * n + b) * n + c] = g.mul(ab, c) == g.mul(a, g.mul(b, c));
            }
        }
    }
    let holds = |a: usize, b: usize, c: usize| assoc[(a * n + b) * n + c];
    let all_pairs = |f: &dyn Fn(usize, usize) -> bool| (0..n).all(|x| (0..n).all(|y| f(x, y)));

    let left = ElementSet::from_indices(n, (0..n).filter(|&a| all_pairs(&|b, c| holds(a, b, c))));
    let middle = ElementSet::from_indices(n, (0..n).filter(|&a| all_pairs(&|b, c| holds(b, a, c))));
    let right = ElementSet::from_indices(n, (0..n).filter(|&a| all_pairs(&|b, c| holds(b, c, a))));
    let nucleus = left.intersection(&middle).intersection(&right);
    let commutant = ElementSet::from_indices(n, (0..n).filter(|&a| (0..n).all(|b| g.mul(a, b) == g.mul(b, a))));
    let center = commutant.intersection(&nucleus);
    debug_assert!(subloop_check(g, &nucleus).is_ok(), "nucleus must be a subgroup");
    NucleusParts { left, middle, right, nucleus, commutant, center }
}

pub fn nucleus(g: &FiniteLoop) -> ElementSet {
    nucleus_parts(g).nucleus
}

pub fn center(g: &FiniteLoop) -> ElementSet {
    nucleus_parts(g).center
}

/// Images of `t` and `p` over all triples.
pub fn associator_ranges(g: &FiniteLoop) -> (ElementSet, ElementSet) {
    let n = g.order();
    let mut t = ElementSet::empty(n);
    let mut p = ElementSet::empty(n);
    for a in 0..n {
        for b in 0..n {
            let ab = g.mul(a, b);
            for c in 0..n {
                let left = g.mul(ab, c);
                let right = g.mul(a, g.mul(b, c));
                t.insert(g.rdiv(left, right));
                p.insert(g.ldiv(right, left));
            }
        }
    }
    (t, p)
}

/// The fan `N₀`: the subloop generated by every value of `t` and `p`.
pub fn fan(g: &FiniteLoop) -> ElementSet {
    let (t, p) = associator_ranges(g);
    subloop_closure(g, t.union(&p).iter())
}

/// Classification of a loop against the fan-loop conditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoopAnalysis {
    pub order: usize,
    pub is_loop: bool,
    pub is_group: bool,
    pub is_fan_loop: bool,
    pub is_central_fan_loop: bool,
    pub parts: NucleusParts,
    pub fan: ElementSet,
    pub t_range: ElementSet,
    pub p_range: ElementSet,
    /// First triple whose `t` or `p` leaves the nucleus.
    pub fan_witness: Option<(usize, usize, usize)>,
    /// First pair with `(ab)/(ba) ∉ Z(G)`.
    pub central_witness: Option<(usize, usize)>,
    /// `N₀ ⊆ N(G)`; for finite loops `N₀` is automatically compact.
    pub fan_condition_holds: bool,
}

impl LoopAnalysis {
    pub fn nucleus(&self) -> &ElementSet {
        &self.parts.nucleus
    }

    pub fn center(&self) -> &ElementSet {
        &self.parts.center
    }
}

pub fn classify(g: &FiniteLoop) -> LoopAnalysis {
    let n = g.order();
    let parts = nucleus_parts(g);
    let mut t_range = ElementSet::empty(n);
    let mut p_range = ElementSet::empty(n);
    let mut fan_witness = None;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let t = g.t_assoc(a, b, c);
                let p = g.p_assoc(a, b, c);
                t_range.insert(t);
                p_range.insert(p);
                if fan_witness.is_none() && !(parts.nucleus.contains(t) && parts.nucleus.contains(p)) {
                    fan_witness = Some((a, b, c));
                }
            }
        }
    }
    let is_fan_loop = fan_witness.is_none();
    let fan = subloop_closure(g, t_range.union(&p_range).iter());
    let is_group = t_range.len() == 1 && p_range.len() == 1 && t_range.contains(0) && p_range.contains(0);

    let mut central_witness = None;
    'outer: for a in 0..n {
        for b in 0..n {
            let t2 = g.rdiv(g.mul(a, b), g.mul(b, a));
            if !parts.center.contains(t2) {
                central_witness = Some((a, b));
                break 'outer;
            }
        }
    }
    let is_central_fan_loop = is_fan_loop && central_witness.is_none();
    let fan_condition_holds = fan.is_subset(&parts.nucleus);

    LoopAnalysis {
        order: n,
        is_loop: true,
        is_group,
        is_fan_loop,
        is_central_fan_loop,
        parts,
        fan,
        t_range,
        p_range,
        fan_witness,
        central_witness,
        fan_condition_holds,
    }
}

/// `P(A) = (P₀(A) ∪ {e})(P₀(A) ∪ {e})` with `P₀(A) = A ∪ Inv_l(A) ∪ Inv_r(A)`.
pub fn p_hull(g: &FiniteLoop, a: &ElementSet) -> ElementSet {
    let mut p0 = a.clone();
    for x in a.iter() {
        p0.insert(g.inv_l(x));
        p0.insert(g.inv_r(x));
    }
    p0.insert(0);
    set_product(g, &p0, &p0)
}

/// Dense `t`/`p` tensors, for callers that evaluate associators many times.
#[derive(Debug, Clone)]
pub struct AssociatorTable {
    order: usize,
    t: Vec<u32>,
    p: Vec<u32>,
}

impl AssociatorTable {
    pub fn build(g: &FiniteLoop) -> Self {
        let n = g.order();
        let mut t = Vec::with_capacity(n * n * n);
        let mut p = Vec::with_capacity(n * n * n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    t.push(g.t_assoc(a, b, c) as u32);
                    p.push(g.p_assoc(a, b, c) as u32);
                }
            }
        }
        AssociatorTable { order: n, t, p }
    }

    #[inline]
    pub fn t(&self, a: usize, b: usize, c: usize) -> usize {
        self.t[(a * self.order + b) * self.order + c] as usize
    }

    #[inline]
    pub fn p(&self, a: usize, b: usize, c: usize) -> usize {
        self.p[(a * self.order + b) * self.order + c] as usize
    }
}

/// On-demand or cached associator evaluation.
pub enum Associators<'a> {
    OnDemand(&'a FiniteLoop),
    Cached(AssociatorTable),
}

impl<'a> Associators<'a> {
    /// Caches the full `n³` tensors when `g.order() >= threshold`.
    pub fn new(g: &'a FiniteLoop, threshold: usize) -> Self {
        if g.order() >= threshold {
            Associators::Cached(AssociatorTable::build(g))
        } else {
            Associators::OnDemand(g)
        }
    }

    pub fn t(&self, a: usize, b: usize, c: usize) -> usize {
        match self {
            Associators::OnDemand(g) => g.t_assoc(a, b, c),
            Associators::Cached(tab) => tab.t(a, b, c),
        }
    }

    pub fn p(&self, a: usize, b: usize, c: usize) -> usize {
        match self {
            Associators::OnDemand(g) => g.p_assoc(a, b, c),
            Associators::Cached(tab) => tab.p(a, b, c),
        }
    }
}
