//! Normal subloops, cosets and quotient loops.

use thiserror::Error;

use crate::loops::{fan, subloop_check, ClosureFailure, ElementSet, FiniteLoop};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuotientError {
    #[error("not a subloop: {0:?}")]
    NotASubloop(ClosureFailure),
    #[error("not normal: condition {condition} fails at x = {x}{}", y.map(|y| format!(", y = {y}")).unwrap_or_default())]
    NotNormal { condition: &'static str, x: usize, y: Option<usize> },
    #[error("coset product depends on representatives: {a}·{b} versus {a2}·{b2}")]
    WellDefinednessFailure { a: usize, b: usize, a2: usize, b2: usize },
    #[error("quotient by a subloop containing the fan is not associative at cosets ({0}, {1}, {2})")]
    NotAGroup(usize, usize, usize),
    #[error("coset {0} has different left and right inverses")]
    NoTwoSidedInverse(usize),
}

fn left_coset(g: &FiniteLoop, x: usize, h: &ElementSet) -> ElementSet {
    ElementSet::from_indices(g.order(), h.iter().map(|k| g.mul(x, k)))
}

fn right_coset(g: &FiniteLoop, h: &ElementSet, x: usize) -> ElementSet {
    ElementSet::from_indices(g.order(), h.iter().map(|k| g.mul(k, x)))
}

/// Checks `xH = Hx` and the three transport conditions
/// `(xy)H = x(yH)`, `(xH)y = x(Hy)`, `H(xy) = (Hx)y` as set equalities.
pub fn is_normal_subloop(g: &FiniteLoop, h: &ElementSet) -> Result<(), QuotientError> {
    subloop_check(g, h).map_err(QuotientError::NotASubloop)?;
    let n = g.order();
    let left: Vec<ElementSet> = (0..n).map(|x| left_coset(g, x, h)).collect();
    let right: Vec<ElementSet> = (0..n).map(|x| right_coset(g, h, x)).collect();
    for x in 0..n {
        if left[x] != right[x] {
            return Err(QuotientError::NotNormal { condition: "2.7.1", x, y: None });
        }
    }
    for x in 0..n {
        for y in 0..n {
            let xy = g.mul(x, y);
            let x_yh = ElementSet::from_indices(n, left[y].iter().map(|z| g.mul(x, z)));
            if left[xy] != x_yh {
                return Err(QuotientError::NotNormal { condition: "2.7.2", x, y: Some(y) });
            }
            let xh_y = ElementSet::from_indices(n, left[x].iter().map(|z| g.mul(z, y)));
            let x_hy = ElementSet::from_indices(n, right[y].iter().map(|z| g.mul(x, z)));
            if xh_y != x_hy {
                return Err(QuotientError::NotNormal { condition: "2.7.2", x, y: Some(y) });
            }
            let hx_y = ElementSet::from_indices(n, right[x].iter().map(|z| g.mul(z, y)));
            if right[xy] != hx_y {
                return Err(QuotientError::NotNormal { condition: "2.7.2", x, y: Some(y) });
            }
        }
    }
    Ok(())
}

/// Partition of a loop into left cosets `bH`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetDecomposition {
    pub subloop: ElementSet,
    /// Blocks ordered by their minimal element, each sorted.
    pub cosets: Vec<Vec<usize>>,
    /// `block_of[x]` is the index of the block containing `x`.
    pub block_of: Vec<usize>,
}

impl CosetDecomposition {
    pub fn representative(&self, block: usize) -> usize {
        self.cosets[block][0]
    }

    pub fn len(&self) -> usize {
        self.cosets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cosets.is_empty()
    }
}

/// Left cosets of a normal subloop.
pub fn cosets(g: &FiniteLoop, h: &ElementSet) -> Result<CosetDecomposition, QuotientError> {
    is_normal_subloop(g, h)?;
    let n = g.order();
    let mut block_of = vec![usize::MAX; n];
    let mut blocks = Vec::new();
    for x in 0..n {
        if block_of[x] != usize::MAX {
            continue;
        }
        let coset = left_coset(g, x, h).to_vec();
        for &y in &coset {
            debug_assert_eq!(block_of[y], usize::MAX, "cosets of a normal subloop are disjoint");
            block_of[y] = blocks.len();
        }
        blocks.push(coset);
    }
    Ok(CosetDecomposition { subloop: h.clone(), cosets: blocks, block_of })
}

/// The quotient `G/H` with `(aH)(bH) = (ab)H`; labels are `[rep]`.
///
/// Well-definedness is checked for every choice of representatives. When `H`
/// contains the fan, the quotient must be a group with two-sided inverses and
/// this is checked too.
pub fn quotient(g: &FiniteLoop, h: &ElementSet) -> Result<FiniteLoop, QuotientError> {
    quotient_with_cosets(g, h).map(|(q, _)| q)
}

pub fn quotient_with_cosets(g: &FiniteLoop, h: &ElementSet) -> Result<(FiniteLoop, CosetDecomposition), QuotientError> {
    let dec = cosets(g, h)?;
    let m = dec.len();
    let mut table = vec![0; m * m];
    for i in 0..m {
        for j in 0..m {
            let (a, b) = (dec.representative(i), dec.representative(j));
            let block = dec.block_of[g.mul(a, b)];
            for &a2 in &dec.cosets[i] {
                for &b2 in &dec.cosets[j] {
                    if dec.block_of[g.mul(a2, b2)] != block {
                        return Err(QuotientError::WellDefinednessFailure { a, b, a2, b2 });
                    }
                }
            }
            table[i * m + j] = block;
        }
    }
    let labels = (0..m).map(|i| format!("[{}]", g.label(dec.representative(i)))).collect();
    let q = FiniteLoop::from_flat(m, table, labels).expect("quotient of a loop by a normal subloop is a loop");
    if fan(g).is_subset(h) {
        if let Some((x, y, z)) = q.associativity_witness() {
            return Err(QuotientError::NotAGroup(x, y, z));
        }
        if let Some(x) = q.elements().find(|&x| q.inv_l(x) != q.inv_r(x)) {
            return Err(QuotientError::NoTwoSidedInverse(x));
        }
    }
    Ok((q, dec))
}
