//! Enumeration of reduced Latin squares, read as loops with identity `0`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::loops::{classify, FiniteLoop};

/// Largest order accepted for exhaustive enumeration.
pub const CENSUS_ORDER_CAP: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CensusError {
    #[error("order {order} exceeds the census cap {cap}")]
    OrderCapExceeded { order: usize, cap: usize },
    #[error("order must be at least 1")]
    ZeroOrder,
    #[error("unknown predicate {0:?}")]
    UnknownPredicate(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CensusFilter {
    All,
    FanOnly,
    NonFan,
    CentralFan,
    /// Some `a` has `e/a ≠ a\e`.
    InverseSplit,
}

impl CensusFilter {
    pub const ALL: [CensusFilter; 5] =
        [CensusFilter::All, CensusFilter::FanOnly, CensusFilter::NonFan, CensusFilter::CentralFan, CensusFilter::InverseSplit];

    pub fn name(self) -> &'static str {
        match self {
            CensusFilter::All => "all",
            CensusFilter::FanOnly => "fan-only",
            CensusFilter::NonFan => "non-fan",
            CensusFilter::CentralFan => "central-fan",
            CensusFilter::InverseSplit => "inverse-split",
        }
    }

    pub fn matches(self, g: &FiniteLoop) -> bool {
        match self {
            CensusFilter::All => true,
            CensusFilter::InverseSplit => g.elements().any(|a| g.inv_l(a) != g.inv_r(a)),
            CensusFilter::FanOnly => classify(g).is_fan_loop,
            CensusFilter::NonFan => !classify(g).is_fan_loop,
            CensusFilter::CentralFan => classify(g).is_central_fan_loop,
        }
    }
}

impl fmt::Display for CensusFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CensusFilter {
    type Err = CensusError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "all" => Ok(CensusFilter::All),
            "fan-only" | "fan" => Ok(CensusFilter::FanOnly),
            "non-fan" => Ok(CensusFilter::NonFan),
            "central-fan" => Ok(CensusFilter::CentralFan),
            "inverse-split" | "nontrivial-two-sided-inverse-split" => Ok(CensusFilter::InverseSplit),
            other => Err(CensusError::UnknownPredicate(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusQuery {
    pub order: usize,
    pub filter: CensusFilter,
    pub limit: Option<usize>,
}

impl CensusQuery {
    pub fn new(order: usize, filter: CensusFilter) -> Self {
        CensusQuery { order, filter, limit: None }
    }

    pub fn with_limit(mut self, limit: usize) -> Self {
        self.limit = Some(limit);
        self
    }
}

/// Lazy lexicographic stream of reduced Latin squares of one order.
///
/// Cells of rows `1..n` and columns `1..n` are filled row-major; a value is
/// tried only if it is free in its row and column, and it is kept only if
/// every later cell of the same row still has a candidate.
#[derive(Debug, Clone)]
pub struct ReducedSquares {
    n: usize,
    grid: Vec<usize>,
    row_used: Vec<u32>,
    col_used: Vec<u32>,
    /// Position in the fill order of the next cell to change.
    pos: usize,
    done: bool,
}

impl ReducedSquares {
    pub fn new(n: usize) -> Result<Self, CensusError> {
        if n == 0 {
            return Err(CensusError::ZeroOrder);
        }
        if n > CENSUS_ORDER_CAP {
            return Err(CensusError::OrderCapExceeded { order: n, cap: CENSUS_ORDER_CAP });
        }
        let mut grid = vec![usize::MAX; n * n];
        let mut row_used = vec![0u32; n];
        let mut col_used = vec![0u32; n];
        for i in 0..n {
            grid[i] = i;
            grid[i * n] = i;
            row_used[0] |= 1 << i;
            col_used[0] |= 1 << i;
            row_used[i] |= 1 << i;
            col_used[i] |= 1 << i;
        }
        Ok(ReducedSquares { n, grid, row_used, col_used, pos: 0, done: false })
    }

    fn cells(&self) -> usize {
        (self.n - 1) * (self.n - 1)
    }

    fn cell(&self, k: usize) -> (usize, usize) {
        (1 + k / (self.n - 1), 1 + k % (self.n - 1))
    }

    fn clear(&mut self, k: usize) {
        let (r, c) = self.cell(k);
        let v = self.grid[r * self.n + c];
        if v != usize::MAX {
            self.row_used[r] &= !(1 << v);
            self.col_used[c] &= !(1 << v);
            self.grid[r * self.n + c] = usize::MAX;
        }
    }

    fn row_feasible(&self, r: usize, from_col: usize) -> bool {
        let full = (1u32 << self.n) - 1;
        let free = full & !self.row_used[r];
        (from_col..self.n).all(|c| free & !self.col_used[c] != 0)
    }

    /// Places the smallest admissible value above the cell's current value.
    fn advance_cell(&mut self, k: usize) -> bool {
        let (r, c) = self.cell(k);
        let start = match self.grid[r * self.n + c] {
            usize::MAX => 0,
            v => v + 1,
        };
        self.clear(k);
        for v in start..self.n {
            let bit = 1 << v;
            if self.row_used[r] & bit != 0 || self.col_used[c] & bit != 0 {
                continue;
            }
            self.grid[r * self.n + c] = v;
            self.row_used[r] |= bit;
            self.col_used[c] |= bit;
            if self.row_feasible(r, c + 1) {
                return true;
            }
            self.row_used[r] &= !bit;
            self.col_used[c] &= !bit;
            self.grid[r * self.n + c] = usize::MAX;
        }
        false
    }

    /// Depth-first search from `self.pos`; leaves `pos` at the last cell
    /// when a full square is found.
    fn search(&mut self) -> bool {
        let total = self.cells();
        loop {
            if self.advance_cell(self.pos) {
                if self.pos + 1 == total {
                    return true;
                }
                self.pos += 1;
            } else {
                if self.pos == 0 {
                    return false;
                }
                self.pos -= 1;
            }
        }
    }
}

impl Iterator for ReducedSquares {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        if self.n == 1 || self.cells() == 0 {
            self.done = true;
            return Some(self.grid.clone());
        }
        if self.search() {
            Some(self.grid.clone())
        } else {
            self.done = true;
            None
        }
    }
}

fn to_loop(n: usize, table: Vec<usize>) -> FiniteLoop {
    let labels = (0..n).map(|i| i.to_string()).collect();
    FiniteLoop::from_flat(n, table, labels).expect("reduced Latin square is a loop table with identity 0")
}

/// Stream of loops matching the query, in lexicographic table order.
pub fn enumerate(query: &CensusQuery) -> Result<impl Iterator<Item = FiniteLoop>, CensusError> {
    let n = query.order;
    let filter = query.filter;
    let squares = ReducedSquares::new(n)?;
    let it = squares.map(move |t| to_loop(n, t)).filter(move |g| filter.matches(g));
    Ok(it.take(query.limit.unwrap_or(usize::MAX)))
}

/// Number of reduced Latin squares of order `n`.
pub fn count_reduced(n: usize) -> Result<u64, CensusError> {
    Ok(ReducedSquares::new(n)?.count() as u64)
}

/// Counts of every filter over one pass of the enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusSummary {
    pub order: usize,
    pub counts: Vec<(CensusFilter, u64)>,
}

impl CensusSummary {
    pub fn count(&self, filter: CensusFilter) -> u64 {
        self.counts.iter().find(|(f, _)| *f == filter).map_or(0, |(_, c)| *c)
    }
}

impl fmt::Display for CensusSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "order={} reduced={}", self.order, self.count(CensusFilter::All))?;
        for (filter, c) in &self.counts[1..] {
            write!(f, " {filter}={c}")?;
        }
        Ok(())
    }
}

pub fn summarize(order: usize) -> Result<CensusSummary, CensusError> {
    let mut counts: Vec<(CensusFilter, u64)> = CensusFilter::ALL.iter().map(|&f| (f, 0)).collect();
    for t in ReducedSquares::new(order)? {
        let g = to_loop(order, t);
        let a = classify(&g);
        let split = CensusFilter::InverseSplit.matches(&g);
        let hits = [true, a.is_fan_loop, !a.is_fan_loop, a.is_central_fan_loop, split];
        for (slot, hit) in counts.iter_mut().zip(hits) {
            slot.1 += hit as u64;
        }
    }
    Ok(CensusSummary { order, counts })
}

/// Predicate names accepted by [`find_witness`].
pub const PREDICATES: [&str; 6] = ["all", "fan-only", "non-fan", "central-fan", "inverse-split", "nonassociative"];

/// First loop of the given order satisfying the named predicate, or `None`
/// if no reduced square of that order satisfies it.
pub fn find_witness(order: usize, predicate: &str) -> Result<Option<FiniteLoop>, CensusError> {
    if predicate == "nonassociative" {
        let mut it = ReducedSquares::new(order)?.map(|t| to_loop(order, t));
        return Ok(it.find(|g| !g.is_associative()));
    }
    let filter: CensusFilter = predicate.parse()?;
    Ok(enumerate(&CensusQuery::new(order, filter).with_limit(1))?.next())
}
