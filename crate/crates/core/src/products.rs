//! Direct products, smashed products and Cayley–Dickson basis loops.

use std::fmt;

use thiserror::Error;

use crate::loops::{
    classify, fan, nucleus_parts, subloop_check, ElementSet, FiniteLoop, LoopError, DEFAULT_ORDER_CAP,
};
use crate::quotient::is_normal_subloop;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProductError {
    #[error("empty list of factors")]
    NoFactors,
    #[error("product order {order} exceeds the cap {cap}")]
    SizeCapExceeded { order: usize, cap: usize },
    #[error("smashing data rejected: {0}")]
    ValidationFailed(SmashingViolation),
    #[error("product is not a fan loop: associator at {0} leaves the nucleus")]
    FanLoopCheckFailed(String),
    #[error("closed form {formula} disagrees with the table at {witness}")]
    CrossCheckFailed { formula: &'static str, witness: String },
    #[error("direct product property `{0}` is not componentwise")]
    ComponentwiseCheckFailed(&'static str),
    #[error(transparent)]
    Loop(#[from] LoopError),
}

/// Mixed-radix coordinates with the first factor most significant.
#[derive(Debug, Clone)]
pub struct Radix {
    orders: Vec<usize>,
    strides: Vec<usize>,
}

impl Radix {
    pub fn new(orders: &[usize]) -> Self {
        let mut strides = vec![1; orders.len()];
        for i in (0..orders.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * orders[i + 1];
        }
        Radix { orders: orders.to_vec(), strides }
    }

    pub fn total(&self) -> usize {
        self.orders.iter().product()
    }

    #[inline]
    pub fn component(&self, x: usize, i: usize) -> usize {
        (x / self.strides[i]) % self.orders[i]
    }

    pub fn split(&self, x: usize) -> Vec<usize> {
        (0..self.orders.len()).map(|i| self.component(x, i)).collect()
    }

    pub fn join(&self, parts: &[usize]) -> usize {
        parts.iter().zip(&self.strides).map(|(p, s)| p * s).sum()
    }
}

/// Cartesian product of subsets, indexed like [`direct_product`].
pub fn product_set(sets: &[ElementSet]) -> ElementSet {
    let radix = Radix::new(&sets.iter().map(|s| s.universe()).collect::<Vec<_>>());
    let mut out = ElementSet::empty(radix.total());
    for x in 0..radix.total() {
        if sets.iter().enumerate().all(|(i, s)| s.contains(radix.component(x, i))) {
            out.insert(x);
        }
    }
    out
}

pub fn direct_product(loops: &[FiniteLoop]) -> Result<FiniteLoop, ProductError> {
    direct_product_with_cap(loops, DEFAULT_ORDER_CAP)
}

/// Componentwise product of `loops`; labels are `(a,b,…)`.
///
/// The result is checked against the factors: associators, nucleus, center
/// and fan must all be componentwise.
pub fn direct_product_with_cap(loops: &[FiniteLoop], cap: usize) -> Result<FiniteLoop, ProductError> {
    if loops.is_empty() {
        return Err(ProductError::NoFactors);
    }
    let orders: Vec<usize> = loops.iter().map(|g| g.order()).collect();
    let order = orders.iter().try_fold(1usize, |acc, &n| acc.checked_mul(n)).unwrap_or(usize::MAX);
    if order > cap {
        return Err(ProductError::SizeCapExceeded { order, cap });
    }
    let radix = Radix::new(&orders);
    let parts: Vec<Vec<usize>> = (0..order).map(|x| radix.split(x)).collect();
    let mut table = vec![0; order * order];
    let mut buf = vec![0; loops.len()];
    for x in 0..order {
        for y in 0..order {
            for (i, g) in loops.iter().enumerate() {
                buf[i] = g.mul(parts[x][i], parts[y][i]);
            }
            table[x * order + y] = radix.join(&buf);
        }
    }
    let labels = parts
        .iter()
        .map(|p| {
            let names: Vec<&str> = p.iter().zip(loops).map(|(&c, g)| g.label(c)).collect();
            format!("({})", names.join(","))
        })
        .collect();
    let product = FiniteLoop::from_flat_unchecked(order, table, labels);
    verify_componentwise(loops, &product, &radix)?;
    Ok(product)
}

fn verify_componentwise(loops: &[FiniteLoop], g: &FiniteLoop, radix: &Radix) -> Result<(), ProductError> {
    let n = g.order();
    let parts: Vec<Vec<usize>> = (0..n).map(|x| radix.split(x)).collect();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let t = radix.split(g.t_assoc(a, b, c));
                let p = radix.split(g.p_assoc(a, b, c));
                for (i, f) in loops.iter().enumerate() {
                    let (x, y, z) = (parts[a][i], parts[b][i], parts[c][i]);
                    if t[i] != f.t_assoc(x, y, z) {
                        return Err(ProductError::ComponentwiseCheckFailed("t"));
                    }
                    if p[i] != f.p_assoc(x, y, z) {
                        return Err(ProductError::ComponentwiseCheckFailed("p"));
                    }
                }
            }
        }
    }
    let whole = nucleus_parts(g);
    let factors: Vec<_> = loops.iter().map(nucleus_parts).collect();
    let nuclei: Vec<ElementSet> = factors.iter().map(|p| p.nucleus.clone()).collect();
    let centers: Vec<ElementSet> = factors.iter().map(|p| p.center.clone()).collect();
    if whole.nucleus != product_set(&nuclei) {
        return Err(ProductError::ComponentwiseCheckFailed("nucleus"));
    }
    if whole.center != product_set(&centers) {
        return Err(ProductError::ComponentwiseCheckFailed("center"));
    }
    let fans: Vec<ElementSet> = loops.iter().map(fan).collect();
    if fan(g) != product_set(&fans) {
        return Err(ProductError::ComponentwiseCheckFailed("fan"));
    }
    Ok(())
}

/// Product of basis elements `e_i e_j = ±e_(i xor j)` in the Cayley–Dickson
/// algebra of dimension `2^level`. Returns `(negative, index)`.
fn cd_basis_mul(i: usize, j: usize, level: u32) -> (bool, usize) {
    if level == 0 {
        return (false, 0);
    }
    let half = 1usize << (level - 1);
    let (ih, il) = (i >= half, i % half);
    let (jh, jl) = (j >= half, j % half);
    // Conjugation negates every non-real basis element.
    let conj_neg = jl != 0;
    match (ih, jh) {
        // (x,0)(y,0) = (xy, 0)
        (false, false) => cd_basis_mul(il, jl, level - 1),
        // (x,0)(0,y) = (0, yx)
        (false, true) => {
            let (s, k) = cd_basis_mul(jl, il, level - 1);
            (s, k + half)
        }
        // (0,x)(y,0) = (0, x y*)
        (true, false) => {
            let (s, k) = cd_basis_mul(il, jl, level - 1);
            (s ^ conj_neg, k + half)
        }
        // (0,x)(0,y) = (-y* x, 0)
        (true, true) => {
            let (s, k) = cd_basis_mul(jl, il, level - 1);
            (!(s ^ conj_neg), k)
        }
    }
}

/// Label of basis element `±e_i`, with `1` for `e_0`.
pub fn cd_label(i: usize, negative: bool) -> String {
    let base = if i == 0 { "1".to_string() } else { format!("e{i}") };
    if negative {
        format!("-{base}")
    } else {
        base
    }
}

/// Index of `±e_i` in [`cayley_dickson_basis_loop`].
pub fn cd_index(i: usize, negative: bool) -> usize {
    2 * i + negative as usize
}

/// The loop `{±e_0, …, ±e_(2^k - 1)}` inside the Cayley–Dickson algebra of
/// dimension `2^k`, using the doubling `(a,b)(c,d) = (ac - d*b, da + bc*)`.
///
/// `k = 1` gives `C₄`, `k = 2` the quaternion group and `k = 3` the octonion
/// basis loop of order 16.
pub fn cayley_dickson_basis_loop(k: u32) -> Result<FiniteLoop, ProductError> {
    if k > 5 {
        return Err(ProductError::SizeCapExceeded { order: 1 << (k + 1).min(60), cap: 64 });
    }
    let dim = 1usize << k;
    let n = 2 * dim;
    let mut table = vec![0; n * n];
    for x in 0..n {
        for y in 0..n {
            let (s, idx) = cd_basis_mul(x / 2, y / 2, k);
            let neg = s ^ (x % 2 == 1) ^ (y % 2 == 1);
            table[x * n + y] = cd_index(idx, neg);
        }
    }
    let labels = (0..n).map(|x| cd_label(x / 2, x % 2 == 1)).collect();
    Ok(FiniteLoop::from_flat_unchecked(n, table, labels))
}

/// Input to the smashed product `A ⊗ B`.
///
/// `N` is an abstract group given by labels; its multiplication is inherited
/// from `A` through `embed_a`. Index 0 of `N` is its identity. The maps
/// `eta`, `kappa` and `xi` take values in `N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmashingData {
    pub a: FiniteLoop,
    pub b: FiniteLoop,
    pub n_labels: Vec<String>,
    pub embed_a: Vec<usize>,
    pub embed_b: Vec<usize>,
    /// `phi[u*|B| + b] = b^u`
    pub phi: Vec<usize>,
    /// `eta[(v*|A| + u)*|B| + b] = η(v,u,b)`
    pub eta: Vec<usize>,
    /// `kappa[(u*|B| + c)*|B| + b] = κ(u,c,b)`
    pub kappa: Vec<usize>,
    /// `xi[(u*|B| + c)*|A||B| + v*|B| + b] = ξ((u,c),(v,b))`
    pub xi: Vec<usize>,
}

impl SmashingData {
    /// Data with identity `φ` and trivial `η`, `κ`, `ξ`.
    pub fn trivial(a: FiniteLoop, b: FiniteLoop, n_labels: Vec<String>, embed_a: Vec<usize>, embed_b: Vec<usize>) -> Self {
        let (na, nb) = (a.order(), b.order());
        let phi = (0..na).flat_map(|_| 0..nb).collect();
        SmashingData {
            eta: vec![0; na * na * nb],
            kappa: vec![0; na * nb * nb],
            xi: vec![0; na * nb * na * nb],
            phi,
            a,
            b,
            n_labels,
            embed_a,
            embed_b,
        }
    }

    pub fn n_order(&self) -> usize {
        self.n_labels.len()
    }

    #[inline]
    pub fn act(&self, u: usize, b: usize) -> usize {
        self.phi[u * self.b.order() + b]
    }

    #[inline]
    pub fn eta(&self, v: usize, u: usize, b: usize) -> usize {
        self.eta[(v * self.a.order() + u) * self.b.order() + b]
    }

    #[inline]
    pub fn kappa(&self, u: usize, c: usize, b: usize) -> usize {
        let nb = self.b.order();
        self.kappa[(u * nb + c) * nb + b]
    }

    #[inline]
    pub fn xi(&self, u: usize, c: usize, v: usize, b: usize) -> usize {
        let (na, nb) = (self.a.order(), self.b.order());
        self.xi[(u * nb + c) * na * nb + v * nb + b]
    }

    pub fn set_phi(&mut self, u: usize, image: &[usize]) {
        let nb = self.b.order();
        self.phi[u * nb..(u + 1) * nb].copy_from_slice(image);
    }

    pub fn set_xi(&mut self, u: usize, c: usize, v: usize, b: usize, value: usize) {
        let (na, nb) = (self.a.order(), self.b.order());
        self.xi[(u * nb + c) * na * nb + v * nb + b] = value;
    }

    /// Element of `N` whose image in `B` is `x`, if any.
    fn n_from_b(&self, x: usize) -> Option<usize> {
        self.embed_b.iter().position(|&y| y == x)
    }

    /// Fills `η` and `κ` with the values forced by `φ`:
    /// `η(v,u,b) = b^(vu) \ (b^u)^v` and `κ(u,c,b) = (c^u b^u) \ (cb)^u`.
    ///
    /// Fails with the offending tuple when a forced value lies outside `ι_B(N)`.
    pub fn derive_eta_kappa(&mut self) -> Result<(), SmashingViolation> {
        let (na, nb) = (self.a.order(), self.b.order());
        for v in 0..na {
            for u in 0..na {
                for x in 0..nb {
                    let forced = self.b.ldiv(self.act(self.a.mul(v, u), x), self.act(v, self.act(u, x)));
                    let value = self.n_from_b(forced).ok_or_else(|| {
                        self.violation("4.3.4", "(b^u)^v is not b^(vu) times an element of N", &[("v", 'A', v), ("u", 'A', u), ("b", 'B', x)])
                    })?;
                    self.eta[(v * na + u) * nb + x] = value;
                }
            }
        }
        for u in 0..na {
            for c in 0..nb {
                for x in 0..nb {
                    let lhs = self.act(u, self.b.mul(c, x));
                    let forced = self.b.ldiv(self.b.mul(self.act(u, c), self.act(u, x)), lhs);
                    let value = self.n_from_b(forced).ok_or_else(|| {
                        self.violation("4.3.6", "(cb)^u is not c^u b^u times an element of N", &[("u", 'A', u), ("c", 'B', c), ("b", 'B', x)])
                    })?;
                    self.kappa[(u * nb + c) * nb + x] = value;
                }
            }
        }
        Ok(())
    }

    fn violation(&self, equation: &'static str, message: &str, witness: &[(&str, char, usize)]) -> SmashingViolation {
        let witness = witness
            .iter()
            .map(|&(name, side, x)| {
                let label = match side {
                    'A' => self.a.label(x).to_string(),
                    'B' => self.b.label(x).to_string(),
                    _ => self.n_labels[x].clone(),
                };
                (name.to_string(), label)
            })
            .collect();
        SmashingViolation { equation, message: message.to_string(), witness }
    }
}

/// First violated smashing condition, with the equation id and a witness
/// given as variable name / label pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmashingViolation {
    pub equation: &'static str,
    pub message: String,
    pub witness: Vec<(String, String)>,
}

impl fmt::Display for SmashingViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.equation, self.message)?;
        if !self.witness.is_empty() {
            let parts: Vec<String> = self.witness.iter().map(|(k, v)| format!("{k}={v}")).collect();
            write!(f, " at {}", parts.join(", "))?;
        }
        Ok(())
    }
}

impl std::error::Error for SmashingViolation {}

/// Checks every condition on smashing data exhaustively.
pub fn validate_smashing(d: &SmashingData) -> Result<(), SmashingViolation> {
    let (a, b) = (&d.a, &d.b);
    let (na, nb, nn) = (a.order(), b.order(), d.n_order());
    let shape = |what: &str| SmashingViolation {
        equation: "4.3.3",
        message: format!("{what} has the wrong shape or an out-of-range entry"),
        witness: vec![],
    };
    if nn == 0 || d.embed_a.len() != nn || d.embed_b.len() != nn {
        return Err(shape("embedding"));
    }
    if d.embed_a.iter().any(|&x| x >= na) || d.embed_b.iter().any(|&x| x >= nb) {
        return Err(shape("embedding"));
    }
    if d.phi.len() != na * nb || d.phi.iter().any(|&x| x >= nb) {
        return Err(shape("phi"));
    }
    if d.eta.len() != na * na * nb || d.eta.iter().any(|&x| x >= nn) {
        return Err(shape("eta"));
    }
    if d.kappa.len() != na * nb * nb || d.kappa.iter().any(|&x| x >= nn) {
        return Err(shape("kappa"));
    }
    if d.xi.len() != na * nb * na * nb || d.xi.iter().any(|&x| x >= nn) {
        return Err(shape("xi"));
    }

    // Embedding chain: ι_A, ι_B injective homomorphisms into the nuclei whose
    // images contain the fans and are normal.
    let img_a = ElementSet::from_indices(na, d.embed_a.iter().copied());
    let img_b = ElementSet::from_indices(nb, d.embed_b.iter().copied());
    if img_a.len() != nn {
        return Err(SmashingViolation { equation: "4.3.1", message: "embedding into A is not injective".into(), witness: vec![] });
    }
    if img_b.len() != nn {
        return Err(SmashingViolation { equation: "4.3.1", message: "embedding into B is not injective".into(), witness: vec![] });
    }
    if d.embed_a[0] != 0 || d.embed_b[0] != 0 {
        return Err(SmashingViolation { equation: "4.3.1", message: "first element of N must map to the identities".into(), witness: vec![] });
    }
    if subloop_check(a, &img_a).is_err() {
        return Err(SmashingViolation { equation: "4.3.1", message: "image of N in A is not a subgroup".into(), witness: vec![] });
    }
    for i in 0..nn {
        for j in 0..nn {
            let prod_a = a.mul(d.embed_a[i], d.embed_a[j]);
            let k = d.embed_a.iter().position(|&x| x == prod_a).expect("image is closed");
            if d.embed_b[k] != b.mul(d.embed_b[i], d.embed_b[j]) {
                return Err(d.violation("4.3.1", "embeddings disagree on the group law of N", &[("g", 'N', i), ("h", 'N', j)]));
            }
        }
    }
    let parts_a = nucleus_parts(a);
    let parts_b = nucleus_parts(b);
    if let Some(x) = img_a.iter().find(|&x| !parts_a.nucleus.contains(x)) {
        return Err(d.violation("4.3.1", "image of N is not inside the nucleus of A", &[("x", 'A', x)]));
    }
    if let Some(x) = img_b.iter().find(|&x| !parts_b.nucleus.contains(x)) {
        return Err(d.violation("4.3.1", "image of N is not inside the nucleus of B", &[("x", 'B', x)]));
    }
    if let Some(x) = fan(a).iter().find(|&x| !img_a.contains(x)) {
        return Err(d.violation("4.3.1", "fan of A is not inside the image of N", &[("x", 'A', x)]));
    }
    if let Some(x) = fan(b).iter().find(|&x| !img_b.contains(x)) {
        return Err(d.violation("4.3.1", "fan of B is not inside the image of N", &[("x", 'B', x)]));
    }
    if let Err(e) = is_normal_subloop(a, &img_a) {
        return Err(SmashingViolation { equation: "4.3.1", message: format!("image of N is not normal in A: {e}"), witness: vec![] });
    }
    if let Err(e) = is_normal_subloop(b, &img_b) {
        return Err(SmashingViolation { equation: "4.3.1", message: format!("image of N is not normal in B: {e}"), witness: vec![] });
    }

    // Each φ(u) is a bijection of B.
    for u in 0..na {
        let image = ElementSet::from_indices(nb, (0..nb).map(|x| d.act(u, x)));
        if image.len() != nb {
            return Err(d.violation("4.3.3", "phi(u) is not a permutation of B", &[("u", 'A', u)]));
        }
    }

    let gb = |g: usize| d.embed_b[g];
    // 4.3.4
    for v in 0..na {
        for u in 0..na {
            let vu = a.mul(v, u);
            for x in 0..nb {
                let lhs = d.act(v, d.act(u, x));
                let rhs = b.mul(d.act(vu, x), gb(d.eta(v, u, x)));
                if lhs != rhs {
                    return Err(d.violation("4.3.4", "(b^u)^v != b^(vu) eta(v,u,b)", &[("v", 'A', v), ("u", 'A', u), ("b", 'B', x)]));
                }
            }
        }
    }
    for u in 0..na {
        for g in img_b.iter() {
            if d.act(u, g) != g {
                return Err(d.violation("4.3.4", "phi(u) moves an element of N", &[("u", 'A', u), ("gamma", 'B', g)]));
            }
        }
    }
    for g in img_a.iter() {
        for x in 0..nb {
            if d.act(g, x) != x {
                return Err(d.violation("4.3.4", "an element of N acts nontrivially", &[("gamma", 'A', g), ("b", 'B', x)]));
            }
        }
    }

    // 4.3.5
    for v in 0..na {
        for u in 0..na {
            for x in 0..nb {
                let value = d.eta(v, u, x);
                if (img_a.contains(v) || img_a.contains(u) || img_b.contains(x)) && value != 0 {
                    return Err(d.violation("4.3.5", "eta is not e when an argument lies in N", &[("v", 'A', v), ("u", 'A', u), ("b", 'B', x)]));
                }
                for g in img_b.iter() {
                    if d.eta(v, u, b.mul(g, x)) != value || d.eta(v, u, b.mul(x, g)) != value {
                        return Err(d.violation("4.3.5", "eta is not invariant under N-shifts of b", &[("v", 'A', v), ("u", 'A', u), ("b", 'B', x), ("gamma", 'B', g)]));
                    }
                }
            }
        }
    }

    // 4.3.6 and 4.3.7
    for u in 0..na {
        for c in 0..nb {
            for x in 0..nb {
                let lhs = d.act(u, b.mul(c, x));
                let rhs = b.mul(b.mul(d.act(u, c), d.act(u, x)), gb(d.kappa(u, c, x)));
                if lhs != rhs {
                    return Err(d.violation("4.3.6", "(cb)^u != c^u b^u kappa(u,c,b)", &[("u", 'A', u), ("c", 'B', c), ("b", 'B', x)]));
                }
            }
        }
    }
    for u in 0..na {
        for c in 0..nb {
            for x in 0..nb {
                let value = d.kappa(u, c, x);
                if (img_a.contains(u) || img_b.contains(c) || img_b.contains(x)) && value != 0 {
                    return Err(d.violation("4.3.7", "kappa is not e when an argument lies in N", &[("u", 'A', u), ("c", 'B', c), ("b", 'B', x)]));
                }
                for g in img_b.iter() {
                    let shifted = [
                        d.kappa(u, b.mul(g, c), x),
                        d.kappa(u, b.mul(c, g), x),
                        d.kappa(u, c, b.mul(g, x)),
                        d.kappa(u, c, b.mul(x, g)),
                    ];
                    if shifted.iter().any(|&s| s != value) {
                        return Err(d.violation("4.3.7", "kappa is not invariant under N-shifts", &[("u", 'A', u), ("c", 'B', c), ("b", 'B', x), ("gamma", 'B', g)]));
                    }
                }
            }
        }
    }

    // 4.3.8
    for u in 0..na {
        for c in 0..nb {
            for v in 0..na {
                for x in 0..nb {
                    if ((u == 0 && c == 0) || (v == 0 && x == 0)) && d.xi(u, c, v, x) != 0 {
                        let w = [("u", 'A', u), ("c", 'B', c), ("v", 'A', v), ("b", 'B', x)];
                        return Err(d.violation("4.3.8", "xi is not e when an argument is (e,e)", &w));
                    }
                }
            }
        }
    }
    for u in 0..na {
        for c in 0..nb {
            for v in 0..na {
                for x in 0..nb {
                    let value = d.xi(u, c, v, x);
                    let w = [("u", 'A', u), ("c", 'B', c), ("v", 'A', v), ("b", 'B', x)];
                    for g in img_a.iter() {
                        let shifted = [
                            d.xi(a.mul(g, u), c, v, x),
                            d.xi(a.mul(u, g), c, v, x),
                            d.xi(u, c, a.mul(g, v), x),
                            d.xi(u, c, a.mul(v, g), x),
                        ];
                        if shifted.iter().any(|&s| s != value) {
                            return Err(d.violation("4.3.8", "xi is not invariant under N-shifts of the A-coordinates", &w));
                        }
                    }
                    for g in img_b.iter() {
                        let shifted = [
                            d.xi(u, b.mul(g, c), v, x),
                            d.xi(u, b.mul(c, g), v, x),
                            d.xi(u, c, v, b.mul(g, x)),
                            d.xi(u, c, v, b.mul(x, g)),
                        ];
                        if shifted.iter().any(|&s| s != value) {
                            return Err(d.violation("4.3.8", "xi is not invariant under N-shifts of the B-coordinates", &w));
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// The multiplication `(a₁,b₁)(a₂,b₂) = (a₁a₂, b₁ b₂^(a₁) ξ((a₁,b₁),(a₂,b₂)))`
/// on `A × B`, with index `a*|B| + b`. No validation is performed.
pub fn smashed_table(d: &SmashingData) -> Vec<usize> {
    let (na, nb) = (d.a.order(), d.b.order());
    let n = na * nb;
    let mut table = vec![0; n * n];
    for x in 0..n {
        let (a1, b1) = (x / nb, x % nb);
        for y in 0..n {
            let (a2, b2) = (y / nb, y % nb);
            let first = d.a.mul(a1, a2);
            let second = d.b.mul(d.b.mul(b1, d.act(a1, b2)), d.embed_b[d.xi(a1, b1, a2, b2)]);
            table[x * n + y] = first * nb + second;
        }
    }
    table
}

fn smashed_labels(d: &SmashingData) -> Vec<String> {
    let nb = d.b.order();
    (0..d.a.order() * nb)
        .map(|x| format!("({},{})", d.a.label(x / nb), d.b.label(x % nb)))
        .collect()
}

/// Counts of the closed-form comparisons performed by [`cross_check`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CrossCheckReport {
    pub triples_checked: usize,
    pub pairs_checked: usize,
    pub inverses_checked: usize,
}

/// Validates the data, builds the product table and checks it against every
/// closed form: the loop axioms, the fan-loop condition, the associator
/// formulas on all triples and the inverse and division formulas on all pairs.
pub fn smashed_product(d: &SmashingData) -> Result<FiniteLoop, ProductError> {
    smashed_product_checked(d).map(|(g, _)| g)
}

pub fn smashed_product_checked(d: &SmashingData) -> Result<(FiniteLoop, CrossCheckReport), ProductError> {
    validate_smashing(d).map_err(ProductError::ValidationFailed)?;
    let n = d.a.order() * d.b.order();
    let table = smashed_table(d);
    let g = FiniteLoop::from_flat(n, table, smashed_labels(d))?;
    let analysis = classify(&g);
    if let Some((x, y, z)) = analysis.fan_witness {
        return Err(ProductError::FanLoopCheckFailed(format!("({}, {}, {})", g.label(x), g.label(y), g.label(z))));
    }
    let report = cross_check(d, &g)?;
    Ok((g, report))
}

/// Compares the product table with the closed forms for `t`, `p`, one-sided
/// inverses and both divisions.
pub fn cross_check(d: &SmashingData, g: &FiniteLoop) -> Result<CrossCheckReport, ProductError> {
    let (a_loop, b_loop) = (&d.a, &d.b);
    let nb = b_loop.order();
    let n = g.order();
    let pair = |x: usize| (x / nb, x % nb);
    let join = |a: usize, b: usize| a * nb + b;
    let xi = |u: usize, c: usize, v: usize, b: usize| d.embed_b[d.xi(u, c, v, b)];
    let eta = |v: usize, u: usize, b: usize| d.embed_b[d.eta(v, u, b)];
    let kappa = |u: usize, c: usize, b: usize| d.embed_b[d.kappa(u, c, b)];
    let bm = |x: usize, y: usize| b_loop.mul(x, y);
    let b_inv = |x: usize| b_loop.ldiv(x, 0);
    let fail = |formula: &'static str, witness: &[usize]| {
        let names: Vec<&str> = witness.iter().map(|&x| g.label(x)).collect();
        ProductError::CrossCheckFailed { formula, witness: names.join(", ") }
    };
    let mut report = CrossCheckReport::default();

    for x in 0..n {
        let (a1, b1) = pair(x);
        for y in 0..n {
            let (a2, b2) = pair(y);
            let a12 = a_loop.mul(a1, a2);
            let b2u = d.act(a1, b2);
            let xi1 = xi(a1, b1, a2, b2);
            for z in 0..n {
                let (a3, b3) = pair(z);
                let a = a_loop.mul(a1, a_loop.mul(a2, a3));
                let w = d.act(a12, b3);
                let b = bm(b1, bm(b2u, w));
                // α = p_B(b₁, b₂^a₁, b₃^(a₁a₂)) · w\(ξ₁w) · ξ((a₁a₂, b₁b₂^a₁), (a₃,b₃))
                let alpha = bm(
                    bm(b_loop.p_assoc(b1, b2u, w), b_loop.ldiv(w, bm(xi1, w))),
                    xi(a12, bm(b1, b2u), a3, b3),
                );
                // β = η(a₁,a₂,b₃) κ(a₁,b₂,b₃^a₂) ξ((a₂,b₂),(a₃,b₃)) ξ((a₁,b₁),(a₂a₃, b₂b₃^a₂))
                let b3a2 = d.act(a2, b3);
                let beta = bm(
                    bm(bm(eta(a1, a2, b3), kappa(a1, b2, b3a2)), xi(a2, b2, a3, b3)),
                    xi(a1, b1, a_loop.mul(a2, a3), bm(b2, b3a2)),
                );
                let p_a = a_loop.p_assoc(a1, a2, a3);
                let p = join(p_a, bm(b_inv(beta), alpha));
                if p != g.p_assoc(x, y, z) {
                    return Err(fail("4.4.2 (p)", &[x, y, z]));
                }
                let t_a = a_loop.rdiv(a_loop.mul(a, p_a), a);
                let ab = bm(alpha, b_inv(beta));
                let t_b = b_loop.rdiv(bm(b, ab), b);
                if join(t_a, t_b) != g.t_assoc(x, y, z) {
                    return Err(fail("4.4.2 (t)", &[x, y, z]));
                }
                // (4.4.1): I₁ = I₂ p and I₁ = t I₂
                let i1 = g.mul(g.mul(x, y), z);
                let i2 = g.mul(x, g.mul(y, z));
                if i1 != g.mul(i2, p) || i1 != g.mul(join(t_a, t_b), i2) {
                    return Err(fail("4.4.1", &[x, y, z]));
                }
                report.triples_checked += 1;
            }
        }
    }

    let mut left_inv = vec![0; n];
    let mut right_inv = vec![0; n];
    for x in 0..n {
        let (a, b) = pair(x);
        // (4.4.4), (4.4.5): left inverse (a₁,b₁)(a,b) = (e,e)
        let a1 = a_loop.rdiv(0, a);
        let w = d.act(a1, b);
        let b1 = b_loop.rdiv(0, bm(w, xi(a1, b_loop.rdiv(0, w), a, b)));
        left_inv[x] = join(a1, b1);
        if left_inv[x] != g.rdiv(0, x) {
            return Err(fail("4.4.5", &[x]));
        }
        // (4.4.7), (4.4.8): right inverse (a,b)(a₂,b₂) = (e,e)
        let a2 = a_loop.ldiv(a, 0);
        let ea = a_loop.rdiv(0, a);
        let probe = d.act(ea, b_loop.ldiv(b, 0));
        let inner = b_loop.ldiv(b, b_inv(xi(a, b, a2, probe)));
        let b2 = b_loop.rdiv(d.act(ea, inner), eta(ea, a, probe));
        right_inv[x] = join(a2, b2);
        if right_inv[x] != g.ldiv(x, 0) {
            return Err(fail("4.4.8", &[x]));
        }
        report.inverses_checked += 1;
    }

    let g_inv = |x: usize| g.ldiv(x, 0);
    for x in 0..n {
        for y in 0..n {
            // (4.4.9): x\y = ((x\e) y) p(x, x\e, y)
            let l = right_inv[x];
            let q = g.mul(g.mul(l, y), g.p_assoc(x, l, y));
            if q != g.ldiv(x, y) {
                return Err(fail("4.4.9", &[x, y]));
            }
            // (4.4.10): y/x = [t(y, e/x, x)]⁻¹ (y (e/x))
            let r = left_inv[x];
            let q = g.mul(g_inv(g.t_assoc(y, r, x)), g.mul(y, r));
            if q != g.rdiv(y, x) {
                return Err(fail("4.4.10", &[y, x]));
            }
            report.pairs_checked += 1;
        }
    }
    Ok(report)
}

/// Containment of the product's fan in `ι_A(N) × ι_B(N)`, the subgroup
/// generated by the images of `N` and the fans of the factors.
pub fn fan_within_embedded_n(d: &SmashingData, g: &FiniteLoop) -> bool {
    let img_a = ElementSet::from_indices(d.a.order(), d.embed_a.iter().copied());
    let img_b = ElementSet::from_indices(d.b.order(), d.embed_b.iter().copied());
    let generated = product_set(&[img_a, img_b]);
    fan(g).is_subset(&generated)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{cyclic, symmetric3};

    /// Full-vector Cayley–Dickson multiplication on integer coordinates.
    fn cd_mul(x: &[i64], y: &[i64]) -> Vec<i64> {
        let n = x.len();
        if n == 1 {
            return vec![x[0] * y[0]];
        }
        let h = n / 2;
        let (a, b) = x.split_at(h);
        let (c, d) = y.split_at(h);
        let conj = |v: &[i64]| -> Vec<i64> {
            v.iter().enumerate().map(|(i, &s)| if i == 0 { s } else { -s }).collect()
        };
        let sub = |u: Vec<i64>, v: Vec<i64>| u.iter().zip(&v).map(|(p, q)| p - q).collect::<Vec<_>>();
        let add = |u: Vec<i64>, v: Vec<i64>| u.iter().zip(&v).map(|(p, q)| p + q).collect::<Vec<_>>();
        let first = sub(cd_mul(a, c), cd_mul(&conj(d), b));
        let second = add(cd_mul(d, a), cd_mul(b, &conj(c)));
        [first, second].concat()
    }

    fn basis(dim: usize, x: usize) -> Vec<i64> {
        let mut v = vec![0; dim];
        v[x / 2] = if x % 2 == 1 { -1 } else { 1 };
        v
    }

    #[test]
    fn basis_loop_matches_vector_multiplication() {
        for k in 0..=4 {
            let g = cayley_dickson_basis_loop(k).unwrap();
            let dim = 1 << k;
            for x in g.elements() {
                for y in g.elements() {
                    assert_eq!(basis(dim, g.mul(x, y)), cd_mul(&basis(dim, x), &basis(dim, y)), "k={k}");
                }
            }
        }
    }

    #[test]
    fn octonion_associator_example() {
        let g = cayley_dickson_basis_loop(3).unwrap();
        let (e1, e2, e4) = (cd_index(1, false), cd_index(2, false), cd_index(4, false));
        let minus_one = cd_index(0, true);
        assert_eq!(g.t_assoc(e1, e2, e4), minus_one);
        assert_eq!(g.p_assoc(e1, e2, e4), minus_one);
        for a in g.elements() {
            for b in g.elements() {
                for c in g.elements() {
                    assert_eq!(g.t_assoc(a, b, c), g.p_assoc(a, b, c));
                }
            }
        }
    }

    #[test]
    fn basis_loops_by_level() {
        let c4 = cayley_dickson_basis_loop(1).unwrap();
        assert!(c4.is_associative() && c4.is_commutative());
        assert_eq!(c4.mul(2, 2), 1);
        let q8 = cayley_dickson_basis_loop(2).unwrap();
        assert!(q8.is_associative() && !q8.is_commutative());
        for k in 3..=4 {
            let g = cayley_dickson_basis_loop(k).unwrap();
            let a = classify(&g);
            assert!(!a.is_group && a.is_fan_loop && a.is_central_fan_loop, "k={k}");
            assert_eq!(a.fan.to_vec(), vec![0, 1]);
            assert_eq!(a.nucleus().to_vec(), vec![0, 1]);
            assert_eq!(a.center().to_vec(), vec![0, 1]);
        }
        assert!(matches!(cayley_dickson_basis_loop(6), Err(ProductError::SizeCapExceeded { .. })));
    }

    #[test]
    fn direct_product_small_cases() {
        let c6 = direct_product(&[cyclic(2), cyclic(3)]).unwrap();
        assert!(c6.is_associative() && c6.is_commutative());
        let element_order = |x: usize| (1..=6).find(|&k| (0..k).fold(0, |acc, _| c6.mul(acc, x)) == 0).unwrap();
        assert!(c6.elements().any(|x| element_order(x) == 6));
        let g = direct_product(&[cyclic(2), symmetric3()]).unwrap();
        assert_eq!(nucleus_parts(&g).center.to_vec().len(), 2);
        assert_eq!(g.label(7), "(x1,r1)");
    }

    #[test]
    fn direct_product_with_octonions() {
        let o = cayley_dickson_basis_loop(3).unwrap();
        let g = direct_product(&[cyclic(2), o.clone()]).unwrap();
        assert_eq!(g.order(), 32);
        let a = classify(&g);
        assert!(a.is_fan_loop);
        assert_eq!(a.fan.to_vec(), vec![0, 1]);
        assert_eq!(a.nucleus().len(), 4);
        assert!(matches!(
            direct_product_with_cap(&[o.clone(), o], 100),
            Err(ProductError::SizeCapExceeded { order: 256, cap: 100 })
        ));
    }

    fn c2_c4_data() -> SmashingData {
        // A = C₂, B = C₄, N = C₂ embedded as {e, x1} and {e, x2}.
        let mut d = SmashingData::trivial(cyclic(2), cyclic(4), vec!["e".into(), "g".into()], vec![0, 1], vec![0, 2]);
        for c in [1, 3] {
            for b in [1, 3] {
                for u in 0..2 {
                    for v in 0..2 {
                        d.set_xi(u, c, v, b, 1);
                    }
                }
            }
        }
        d
    }

    #[test]
    fn c2_c4_smashed_product() {
        let d = c2_c4_data();
        validate_smashing(&d).unwrap();
        let (g, report) = smashed_product_checked(&d).unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!(report.triples_checked, 512);
        assert!(classify(&g).is_fan_loop);
        assert!(fan_within_embedded_n(&d, &g));
    }

    #[test]
    fn trivial_smashing_is_direct_product() {
        let d = SmashingData::trivial(cyclic(2), cyclic(3), vec!["e".into()], vec![0], vec![0]);
        let g = smashed_product(&d).unwrap();
        let h = direct_product(&[cyclic(2), cyclic(3)]).unwrap();
        assert_eq!(g.flat_table(), h.flat_table());
        assert_eq!(g.labels(), h.labels());
    }

    #[test]
    fn xi_with_nontrivial_identity_row_is_rejected() {
        let mut d = c2_c4_data();
        d.set_xi(0, 0, 1, 1, 1);
        let v = validate_smashing(&d).unwrap_err();
        assert_eq!(v.equation, "4.3.8");
    }

    #[test]
    fn non_fixing_phi_is_rejected() {
        let mut d = c2_c4_data();
        // u = x1 lies in N, so it must act trivially.
        d.set_phi(1, &[0, 3, 2, 1]);
        d.derive_eta_kappa().unwrap();
        assert_eq!(validate_smashing(&d).unwrap_err().equation, "4.3.4");
    }
}
