//! Covering numbers and the left-invariant measure on finite fan loops.
//!
//! For nonnegative functions `f, φ` on a loop, the covering number `(f:φ)` is
//! the least total weight `Σ c_b` such that `f(x) ≤ Σ_b c_b φ(bx)` for every
//! `x`. It is computed exactly by linear programming. Ratios of covering
//! numbers against a point mass at `e` give the invariant functional `J`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::loops::{classify, is_subgroup, ElementSet, FiniteLoop};
use crate::lp::{self, LpProblem, LpStatus};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HaarError {
    #[error("comparison function is identically zero")]
    ZeroComparisonFunction,
    #[error("reference function is identically zero")]
    ZeroReference,
    #[error("function has {got} values but the loop has order {expected}")]
    LoopMismatch { expected: usize, got: usize },
    #[error("negative value {value} at element {index}")]
    NegativeValue { index: usize, value: Rational },
    #[error("loop is not a fan loop")]
    NotFanLoop,
    #[error("reference function is not constant on fan cosets: {0}")]
    ReferenceNotInUpsilon(UpsilonFailure),
    #[error("set is not a subgroup")]
    NotASubgroup,
    #[error("covering program did not reach an optimum: {0}")]
    LpFailure(String),
    #[error("covering number {value} exceeds the bound {bound}")]
    BoundViolated { value: Rational, bound: Rational },
    #[error("functional is not stable along the point-mass ladder")]
    StabilizationFailed,
    #[error("measure check failed: {0}")]
    MeasureCheckFailed(String),
    #[error("uniqueness check failed for test function {0}")]
    UniquenessFailed(usize),
}

/// Nonnegative rational function on the elements of a loop.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LoopFunction {
    values: Vec<Rational>,
}

impl LoopFunction {
    pub fn new(values: Vec<Rational>) -> Result<Self, HaarError> {
        if let Some((index, value)) = values.iter().enumerate().find(|(_, v)| v.is_negative()) {
            return Err(HaarError::NegativeValue { index, value: value.clone() });
        }
        Ok(LoopFunction { values })
    }

    pub fn zero(n: usize) -> Self {
        LoopFunction { values: vec![Rational::zero(); n] }
    }

    pub fn constant(n: usize, value: Rational) -> Self {
        assert!(!value.is_negative());
        LoopFunction { values: vec![value; n] }
    }

    pub fn ones(n: usize) -> Self {
        Self::constant(n, Rational::one())
    }

    /// Point mass `height · δ_x`.
    pub fn point_mass(n: usize, x: usize, height: Rational) -> Self {
        let mut f = Self::zero(n);
        assert!(!height.is_negative());
        f.values[x] = height;
        f
    }

    pub fn delta(n: usize, x: usize) -> Self {
        Self::point_mass(n, x, Rational::one())
    }

    /// Characteristic function `χ_A`.
    pub fn indicator(set: &ElementSet) -> Self {
        let n = set.universe();
        let mut f = Self::zero(n);
        for x in set.iter() {
            f.values[x] = Rational::one();
        }
        f
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn get(&self, x: usize) -> &Rational {
        &self.values[x]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    pub fn support(&self) -> ElementSet {
        ElementSet::from_indices(self.len(), (0..self.len()).filter(|&x| !self.values[x].is_zero()))
    }

    pub fn sum(&self) -> Rational {
        self.values.iter().sum()
    }

    pub fn sup_norm(&self) -> Rational {
        self.values.iter().cloned().max().unwrap_or_default()
    }

    pub fn scale(&self, alpha: &Rational) -> Self {
        assert!(!alpha.is_negative());
        LoopFunction { values: self.values.iter().map(|v| v * alpha).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len());
        LoopFunction { values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect() }
    }

    pub fn le(&self, other: &Self) -> bool {
        self.values.iter().zip(&other.values).all(|(a, b)| a <= b)
    }

    fn check_order(&self, g: &FiniteLoop) -> Result<(), HaarError> {
        if self.len() != g.order() {
            return Err(HaarError::LoopMismatch { expected: g.order(), got: self.len() });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TranslateMode {
    /// `x ↦ f(bx)`
    Left,
    /// `x ↦ f(xb)`
    Right,
    /// `x ↦ f(b\x)`
    LeftDiv,
}

pub fn translate(g: &FiniteLoop, f: &LoopFunction, b: usize, mode: TranslateMode) -> LoopFunction {
    let values = g
        .elements()
        .map(|x| {
            let y = match mode {
                TranslateMode::Left => g.mul(b, x),
                TranslateMode::Right => g.mul(x, b),
                TranslateMode::LeftDiv => g.ldiv(b, x),
            };
            f.values[y].clone()
        })
        .collect();
    LoopFunction { values }
}

/// Optimal covering of `f` by left translates of `φ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Covering {
    pub value: Rational,
    /// `coefficients[b]` is the weight on `x ↦ φ(bx)`.
    pub coefficients: Vec<Rational>,
    /// `2m‖f‖/φ(q)` for the one-translate-per-point covering.
    pub bound: Rational,
}

pub fn covering(g: &FiniteLoop, f: &LoopFunction, phi: &LoopFunction) -> Result<Covering, HaarError> {
    f.check_order(g)?;
    phi.check_order(g)?;
    if phi.is_zero() {
        return Err(HaarError::ZeroComparisonFunction);
    }
    let n = g.order();
    let rows: Vec<usize> = f.support().to_vec();
    // Only translates that reach the support of f can help.
    let cols: Vec<usize> = (0..n).filter(|&b| rows.iter().any(|&x| !phi.values[g.mul(b, x)].is_zero())).collect();
    let problem = LpProblem::new(
        vec![Rational::one(); cols.len()],
        rows.iter().map(|&x| cols.iter().map(|&b| phi.values[g.mul(b, x)].clone()).collect()).collect(),
        rows.iter().map(|&x| f.values[x].clone()).collect(),
    );
    let sol = lp::solve(&problem);
    if sol.status != LpStatus::Optimal {
        return Err(HaarError::LpFailure(sol.status.to_string()));
    }
    let value = sol.optimum.expect("optimal solution has a value");
    let mut coefficients = vec![Rational::zero(); n];
    for (k, &b) in cols.iter().enumerate() {
        coefficients[b] = sol.witness[k].clone();
    }
    let phi_q = phi.sup_norm();
    let m = Rational::from(rows.len());
    let bound = Rational::from(2i64) * m * f.sup_norm() / phi_q;
    if value > bound {
        return Err(HaarError::BoundViolated { value, bound });
    }
    Ok(Covering { value, coefficients, bound })
}

/// `(f:φ)`
pub fn covering_number(g: &FiniteLoop, f: &LoopFunction, phi: &LoopFunction) -> Result<Rational, HaarError> {
    covering(g, f, phi).map(|c| c.value)
}

/// `f^[λ](x) = (1/|N₀|) Σ_{γ∈N₀} f(γx)`
pub fn fan_average(g: &FiniteLoop, f: &LoopFunction, n0: &ElementSet) -> Result<LoopFunction, HaarError> {
    f.check_order(g)?;
    if !is_subgroup(g, n0) {
        return Err(HaarError::NotASubgroup);
    }
    let weight = Rational::new(1, n0.len() as i64);
    let values = g
        .elements()
        .map(|x| n0.iter().map(|gamma| &f.values[g.mul(gamma, x)]).sum::<Rational>() * &weight)
        .collect();
    Ok(LoopFunction { values })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UpsilonFailure {
    Zero,
    /// `f(γa) ≠ f(a)`
    Left { gamma: usize, a: usize },
    /// `f(aγ) ≠ f(a)`
    Right { gamma: usize, a: usize },
}

impl std::fmt::Display for UpsilonFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            UpsilonFailure::Zero => write!(f, "function is zero"),
            UpsilonFailure::Left { gamma, a } => write!(f, "f(γa) ≠ f(a) for γ = {gamma}, a = {a}"),
            UpsilonFailure::Right { gamma, a } => write!(f, "f(aγ) ≠ f(a) for γ = {gamma}, a = {a}"),
        }
    }
}

/// Checks that `f` is nonzero and invariant under left and right
/// multiplication by `N₀`.
pub fn upsilon_check(g: &FiniteLoop, f: &LoopFunction, n0: &ElementSet) -> Result<(), UpsilonFailure> {
    if f.is_zero() {
        return Err(UpsilonFailure::Zero);
    }
    for a in g.elements() {
        for gamma in n0.iter() {
            if f.values[g.mul(gamma, a)] != f.values[a] {
                return Err(UpsilonFailure::Left { gamma, a });
            }
        }
    }
    for a in g.elements() {
        for gamma in n0.iter() {
            if f.values[g.mul(a, gamma)] != f.values[a] {
                return Err(UpsilonFailure::Right { gamma, a });
            }
        }
    }
    Ok(())
}

pub fn upsilon_member(g: &FiniteLoop, f: &LoopFunction, n0: &ElementSet) -> bool {
    upsilon_check(g, f, n0).is_ok()
}

/// `J_{φ,f₀}(f) = (f:φ)/(f₀:φ)`
pub fn ratio_functional(g: &FiniteLoop, f: &LoopFunction, f0: &LoopFunction, phi: &LoopFunction) -> Result<Rational, HaarError> {
    if f0.is_zero() {
        return Err(HaarError::ZeroReference);
    }
    let num = covering_number(g, f, phi)?;
    let den = covering_number(g, f0, phi)?;
    Ok(num / den)
}

/// The limit functional `J_{f₀}` on a finite fan loop.
///
/// On a discrete loop the directed family of comparison functions ends at
/// point masses at `e`, so the limit is `J_{δ_e,f₀}`.
#[derive(Debug, Clone)]
pub struct HaarLimit<'a> {
    g: &'a FiniteLoop,
    f0: LoopFunction,
    fan: ElementSet,
    reference: Rational,
}

/// Values of `J_{φ,f₀}(f)` along nested supports shrinking to `{e}` and for
/// point masses of several heights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stabilization {
    pub ladder: Vec<(usize, Rational)>,
    pub point_masses: Vec<(Rational, Rational)>,
    pub limit: Rational,
}

pub fn haar_limit<'a>(g: &'a FiniteLoop, f0: &LoopFunction) -> Result<HaarLimit<'a>, HaarError> {
    f0.check_order(g)?;
    let analysis = classify(g);
    if !analysis.is_fan_loop {
        return Err(HaarError::NotFanLoop);
    }
    if f0.is_zero() {
        return Err(HaarError::ZeroReference);
    }
    upsilon_check(g, f0, &analysis.fan).map_err(HaarError::ReferenceNotInUpsilon)?;
    let delta = LoopFunction::delta(g.order(), 0);
    let reference = covering_number(g, f0, &delta)?;
    Ok(HaarLimit { g, f0: f0.clone(), fan: analysis.fan, reference })
}

pub const POINT_MASS_HEIGHTS: [(i64, i64); 4] = [(1, 1), (2, 1), (1, 3), (7, 2)];

impl<'a> HaarLimit<'a> {
    pub fn reference(&self) -> &LoopFunction {
        &self.f0
    }

    pub fn fan(&self) -> &ElementSet {
        &self.fan
    }

    /// `J_{f₀}(f)`
    pub fn value(&self, f: &LoopFunction) -> Result<Rational, HaarError> {
        let delta = LoopFunction::delta(self.g.order(), 0);
        Ok(covering_number(self.g, f, &delta)? / &self.reference)
    }

    /// `J_g(f) = J_{f₀}(f) / J_{f₀}(g)`, which does not depend on `f₀`.
    pub fn relative(&self, f: &LoopFunction, reference: &LoopFunction) -> Result<Rational, HaarError> {
        let denom = self.value(reference)?;
        if denom.is_zero() {
            return Err(HaarError::ZeroReference);
        }
        Ok(self.value(f)? / denom)
    }

    /// `J(f⁺) − J(f⁻)` for a real-valued `f`.
    pub fn signed_value(&self, f: &[Rational]) -> Result<Rational, HaarError> {
        let pos = LoopFunction::new(f.iter().map(|v| if v.is_positive() { v.clone() } else { Rational::zero() }).collect())?;
        let neg = LoopFunction::new(f.iter().map(|v| if v.is_negative() { -v } else { Rational::zero() }).collect())?;
        Ok(self.value(&pos)? - self.value(&neg)?)
    }

    /// Computes `J_{φ,f₀}(f)` for indicator functions of nested supports
    /// `W₀ ⊇ W₁ ⊇ … ⊇ {e}` and for point masses at `e` of several heights;
    /// every point-mass value must equal the limit.
    pub fn stabilization(&self, f: &LoopFunction) -> Result<Stabilization, HaarError> {
        let n = self.g.order();
        let limit = self.value(f)?;
        let mut ladder = Vec::new();
        let mut size = n;
        loop {
            let w = ElementSet::from_indices(n, 0..size);
            let phi = LoopFunction::indicator(&w);
            ladder.push((size, ratio_functional(self.g, f, &self.f0, &phi)?));
            if size == 1 {
                break;
            }
            size = size.div_ceil(2);
        }
        let mut point_masses = Vec::new();
        for (p, q) in POINT_MASS_HEIGHTS {
            let h = Rational::new(p, q);
            let phi = LoopFunction::point_mass(n, 0, h.clone());
            let value = ratio_functional(self.g, f, &self.f0, &phi)?;
            if value != limit {
                return Err(HaarError::StabilizationFailed);
            }
            point_masses.push((h, value));
        }
        if ladder.last().map(|(_, v)| v) != Some(&limit) {
            return Err(HaarError::StabilizationFailed);
        }
        Ok(Stabilization { ladder, point_masses, limit })
    }
}

/// Left-invariant measure with `μ({e}) = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantMeasure {
    pub weights: Vec<Rational>,
    pub total: Rational,
}

impl InvariantMeasure {
    pub fn measure(&self, set: &ElementSet) -> Rational {
        set.iter().map(|x| &self.weights[x]).sum()
    }

    /// `J(f) = Σ f(x) μ({x})`
    pub fn integrate(&self, f: &LoopFunction) -> Rational {
        f.values().iter().zip(&self.weights).map(|(a, b)| a * b).sum()
    }
}

/// `μ({x}) = J(χ_x)/J(χ_e)`, with positivity, finiteness and exact
/// invariance `μ({bx}) = μ({x})` verified.
pub fn invariant_measure(g: &FiniteLoop) -> Result<InvariantMeasure, HaarError> {
    let n = g.order();
    let j = haar_limit(g, &LoopFunction::ones(n))?;
    let unit = j.value(&LoopFunction::delta(n, 0))?;
    let weights = (0..n)
        .map(|x| Ok(j.value(&LoopFunction::delta(n, x))? / &unit))
        .collect::<Result<Vec<_>, HaarError>>()?;
    if let Some(x) = weights.iter().position(|w| !w.is_positive()) {
        return Err(HaarError::MeasureCheckFailed(format!("weight at {x} is not positive")));
    }
    for b in 0..n {
        for x in 0..n {
            if weights[g.mul(b, x)] != weights[x] {
                return Err(HaarError::MeasureCheckFailed(format!("μ(bx) ≠ μ(x) at b = {b}, x = {x}")));
            }
        }
    }
    let total = weights.iter().sum();
    Ok(InvariantMeasure { weights, total })
}

/// Builds `J = J_{f₀}` and `H = J_{g₀}`, checks `H(f) = κ J(f)` on every
/// singleton indicator and on `tests`, and returns `κ = Σf₀/Σg₀`.
pub fn verify_uniqueness(g: &FiniteLoop, f0: &LoopFunction, g0: &LoopFunction, tests: &[LoopFunction]) -> Result<Rational, HaarError> {
    let j = haar_limit(g, f0)?;
    let h = haar_limit(g, g0)?;
    let kappa = f0.sum() / g0.sum();
    let n = g.order();
    let singletons = (0..n).map(|x| LoopFunction::delta(n, x));
    for (i, f) in singletons.chain(tests.iter().cloned()).enumerate() {
        if h.value(&f)? != &kappa * &j.value(&f)? {
            return Err(HaarError::UniquenessFailed(i));
        }
    }
    Ok(kappa)
}

/// Random function with values `p/q`, `0 ≤ p ≤ 8`, `1 ≤ q ≤ 8`; about half of
/// the points are zero. Never identically zero.
pub fn random_function(n: usize, rng: &mut impl Rng) -> LoopFunction {
    let mut values: Vec<Rational> = (0..n)
        .map(|_| {
            if rng.gen_bool(0.5) {
                Rational::zero()
            } else {
                Rational::new(rng.gen_range(1..=8), rng.gen_range(1..=8))
            }
        })
        .collect();
    if values.iter().all(|v| v.is_zero()) {
        values[rng.gen_range(0..n)] = Rational::new(rng.gen_range(1..=8), rng.gen_range(1..=8));
    }
    LoopFunction { values }
}

/// Random member of `Υ(G, N₀)`: the fan average of a random function.
pub fn random_upsilon(g: &FiniteLoop, n0: &ElementSet, rng: &mut impl Rng) -> LoopFunction {
    let f = random_function(g.order(), rng);
    fan_average(g, &f, n0).expect("fan is a subgroup")
}

/// Outcome of one randomized property over all instances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyOutcome {
    pub id: &'static str,
    pub checked: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub seed: u64,
    pub instances: usize,
    pub properties: Vec<PropertyOutcome>,
}

impl SuiteReport {
    pub fn all_hold(&self) -> bool {
        self.properties.iter().all(|p| p.failures == 0)
    }

    pub fn get(&self, id: &str) -> Option<&PropertyOutcome> {
        self.properties.iter().find(|p| p.id == id)
    }
}

/// Property ids checked by [`property_suite`].
pub const SUITE_PROPERTIES: [&str; 15] = [
    "3.4.1", "3.4.2", "3.4.1'", "3.4.2'", "3.4.3", "3.4.4", "3.4.5", "3.6.1", "3.6.10", "3.9.1", "3.9.2", "3.10.1",
    "3.15.1", "3.15.2", "3.15.3",
];

struct Recorder {
    outcomes: Vec<PropertyOutcome>,
}

impl Recorder {
    fn record(&mut self, id: &'static str, ok: bool, detail: impl FnOnce() -> String) {
        let o = self.outcomes.iter_mut().find(|o| o.id == id).expect("registered property");
        o.checked += 1;
        if !ok {
            o.failures += 1;
            if o.first_failure.is_none() {
                o.first_failure = Some(detail());
            }
        }
    }
}

fn fmt_fn(f: &LoopFunction) -> String {
    let parts: Vec<String> = f.values().iter().map(|v| v.to_string()).collect();
    format!("[{}]", parts.join(" "))
}

/// Runs the covering-number, ratio and limit identities on `instances`
/// seeded random inputs. Requires a fan loop.
pub fn property_suite(g: &FiniteLoop, instances: usize, seed: u64) -> Result<SuiteReport, HaarError> {
    let analysis = classify(g);
    if !analysis.is_fan_loop {
        return Err(HaarError::NotFanLoop);
    }
    let n = g.order();
    let n0 = &analysis.fan;
    let nucleus: Vec<usize> = analysis.nucleus().to_vec();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rec = Recorder {
        outcomes: SUITE_PROPERTIES
            .iter()
            .map(|&id| PropertyOutcome { id, checked: 0, failures: 0, first_failure: None })
            .collect(),
    };
    let cov = |f: &LoopFunction, phi: &LoopFunction| covering_number(g, f, phi);
    let delta = LoopFunction::delta(n, 0);

    for _ in 0..instances {
        let f = random_function(n, &mut rng);
        let f1 = random_function(n, &mut rng);
        let phi = random_function(n, &mut rng);
        let b = rng.gen_range(0..n);
        let gamma = nucleus[rng.gen_range(0..nucleus.len())];
        let alpha = Rational::new(rng.gen_range(0..=8), rng.gen_range(1..=8));
        let omega = random_upsilon(g, n0, &mut rng);
        let f0 = random_upsilon(g, n0, &mut rng);
        let f0b = random_upsilon(g, n0, &mut rng);

        let f_phi = cov(&f, &phi)?;
        let f1_phi = cov(&f1, &phi)?;
        let ctx = || format!("f = {}, φ = {}, b = {}", fmt_fn(&f), fmt_fn(&phi), g.label(b));

        let lhs = cov(&translate(g, &f, b, TranslateMode::Left), &phi)?;
        let rhs = cov(&f, &translate(g, &phi, b, TranslateMode::LeftDiv))?;
        rec.record("3.4.1", lhs == rhs, || format!("{}: {lhs} vs {rhs}", ctx()));

        let lhs = cov(&f, &translate(g, &phi, b, TranslateMode::Left))?;
        let rhs = cov(&translate(g, &f, b, TranslateMode::LeftDiv), &phi)?;
        rec.record("3.4.2", lhs == rhs, || format!("{}: {lhs} vs {rhs}", ctx()));

        let lhs = cov(&translate(g, &f, gamma, TranslateMode::Left), &phi)?;
        rec.record("3.4.1'", lhs == f_phi, || format!("{}, γ = {}", ctx(), g.label(gamma)));
        let lhs = cov(&f, &translate(g, &phi, gamma, TranslateMode::Left))?;
        rec.record("3.4.2'", lhs == f_phi, || format!("{}, γ = {}", ctx(), g.label(gamma)));

        let scaled = if alpha.is_zero() { Rational::zero() } else { cov(&f.scale(&alpha), &phi)? };
        rec.record("3.4.3", scaled == &alpha * &f_phi, || format!("{}, α = {alpha}", ctx()));

        let sum = cov(&f.add(&f1), &phi)?;
        rec.record("3.4.4", sum <= &f_phi + &f1_phi, ctx);

        let bigger = f.add(&random_function(n, &mut rng));
        rec.record("3.4.5", f_phi <= cov(&bigger, &phi)?, ctx);

        let lhs = f_phi.clone();
        let rhs = cov(&f, &omega)? * cov(&omega, &phi)?;
        rec.record("3.6.1", lhs <= rhs, || format!("{}, ω = {}", ctx(), fmt_fn(&omega)));

        // ω(c((c\e)x)) = ω(x) for ω ∈ Υ
        let c = rng.gen_range(0..n);
        let ok = g.elements().all(|x| omega.get(g.mul(c, g.mul(g.inv_l(c), x))) == omega.get(x));
        rec.record("3.6.10", ok, || format!("ω = {}, c = {}", fmt_fn(&omega), g.label(c)));

        let j = ratio_functional(g, &f, &f0, &phi)?;
        let lower = cov(&f0, &f)?.recip();
        let upper = cov(&f, &f0)?;
        rec.record("3.9.1", lower <= j && j <= upper, || format!("{}, f₀ = {}", ctx(), fmt_fn(&f0)));

        let j1 = ratio_functional(g, &f, &f0b, &phi)?;
        let lower = (cov(&f0b, &f0)? * cov(&f0, &f)?).recip();
        let upper = cov(&f, &f0)? * cov(&f0, &f0b)?;
        rec.record("3.9.2", lower <= j1 && j1 <= upper, || format!("{}, f₀ = {}, f₁ = {}", ctx(), fmt_fn(&f0), fmt_fn(&f0b)));

        // Linearity at the point mass, and a nonnegative gap for coarse φ.
        let q1 = Rational::new(rng.gen_range(0..=4), rng.gen_range(1..=4));
        let q2 = Rational::new(rng.gen_range(0..=4), rng.gen_range(1..=4));
        let mix = f.scale(&q1).add(&f1.scale(&q2));
        let at = |phi: &LoopFunction| -> Result<Rational, HaarError> {
            let sep = &q1 * ratio_functional(g, &f, &f0, phi)? + &q2 * ratio_functional(g, &f1, &f0, phi)?;
            let joint = if mix.is_zero() { Rational::zero() } else { ratio_functional(g, &mix, &f0, phi)? };
            Ok(sep - joint)
        };
        let gap_point = at(&delta)?;
        let gap_coarse = at(&phi)?;
        rec.record("3.10.1", gap_point.is_zero() && !gap_coarse.is_negative(), || {
            format!("{}, q = ({q1}, {q2}): gaps {gap_point} and {gap_coarse}", ctx())
        });

        let limit = haar_limit(g, &f0)?;
        let jf = limit.value(&f)?;
        rec.record("3.15.1", jf.is_positive(), ctx);
        let lin = limit.value(&mix)?;
        let expected = &q1 * &jf + &q2 * limit.value(&f1)?;
        rec.record("3.15.2", lin == expected, || format!("{}, q = ({q1}, {q2})", ctx()));
        let shifted = limit.value(&translate(g, &f, b, TranslateMode::Left))?;
        rec.record("3.15.3", shifted == jf, ctx);
    }
    Ok(SuiteReport { seed, instances, properties: rec.outcomes })
}

/// Reconstructs `f` from left translates of `g = h·δ_e`: the coefficient on
/// `x ↦ g(bx)` is `f(b\e)/h`. Returns whether `Σ_b c_b g(bx) = f(x)` exactly.
pub fn reconstruct_from_point_mass(g: &FiniteLoop, f: &LoopFunction, height: &Rational) -> bool {
    let n = g.order();
    let point = LoopFunction::point_mass(n, 0, height.clone());
    let coeffs: Vec<Rational> = (0..n).map(|b| f.get(g.ldiv(b, 0)) / height).collect();
    g.elements().all(|x| {
        let total: Rational = (0..n).map(|b| &coeffs[b] * point.get(g.mul(b, x))).sum();
        &total == f.get(x)
    })
}
