//! Registry of loop identities, checked exhaustively.
//!
//! Each law is a list of equations between expression trees over the loop
//! signature `·, \, /, e, t, p` (or a membership statement), with every
//! variable ranging over the whole loop, the nucleus or the center. Failing
//! checks report the first counterexample in lexicographic order.

use std::fmt;

use thiserror::Error;

use crate::loops::{classify, ElementSet, FiniteLoop, LoopAnalysis};

/// Expression over the loop signature.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Var(usize),
    Id,
    Mul(Box<Expr>, Box<Expr>),
    /// `a\b`
    LDiv(Box<Expr>, Box<Expr>),
    /// `a/b`
    RDiv(Box<Expr>, Box<Expr>),
    /// Inverse of a nucleus element, evaluated as `a\e`.
    Inv(Box<Expr>),
    T(Box<Expr>, Box<Expr>, Box<Expr>),
    P(Box<Expr>, Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn eval(&self, g: &FiniteLoop, vals: &[usize]) -> usize {
        match self {
            Expr::Var(i) => vals[*i],
            Expr::Id => 0,
            Expr::Mul(a, b) => g.mul(a.eval(g, vals), b.eval(g, vals)),
            Expr::LDiv(a, b) => g.ldiv(a.eval(g, vals), b.eval(g, vals)),
            Expr::RDiv(a, b) => g.rdiv(a.eval(g, vals), b.eval(g, vals)),
            Expr::Inv(a) => g.ldiv(a.eval(g, vals), 0),
            Expr::T(a, b, c) => g.t_assoc(a.eval(g, vals), b.eval(g, vals), c.eval(g, vals)),
            Expr::P(a, b, c) => g.p_assoc(a.eval(g, vals), b.eval(g, vals), c.eval(g, vals)),
        }
    }

    fn render(&self, names: &[&str], out: &mut String) {
        match self {
            Expr::Var(i) => out.push_str(names[*i]),
            Expr::Id => out.push('e'),
            Expr::Mul(a, b) => {
                out.push('(');
                a.render(names, out);
                out.push('·');
                b.render(names, out);
                out.push(')');
            }
            Expr::LDiv(a, b) | Expr::RDiv(a, b) => {
                out.push('(');
                a.render(names, out);
                out.push(if matches!(self, Expr::LDiv(..)) { '\\' } else { '/' });
                b.render(names, out);
                out.push(')');
            }
            Expr::Inv(a) => {
                out.push('[');
                a.render(names, out);
                out.push_str("]⁻¹");
            }
            Expr::T(a, b, c) | Expr::P(a, b, c) => {
                out.push_str(if matches!(self, Expr::T(..)) { "t(" } else { "p(" });
                a.render(names, out);
                out.push(',');
                b.render(names, out);
                out.push(',');
                c.render(names, out);
                out.push(')');
            }
        }
    }

    pub fn to_string_with(&self, names: &[&str]) -> String {
        let mut s = String::new();
        self.render(names, &mut s);
        s
    }
}

/// Builders for writing laws compactly.
pub mod build {
    use super::Expr;

    pub fn v(i: usize) -> Expr {
        Expr::Var(i)
    }
    pub fn e() -> Expr {
        Expr::Id
    }
    pub fn m(a: Expr, b: Expr) -> Expr {
        Expr::Mul(Box::new(a), Box::new(b))
    }
    pub fn ld(a: Expr, b: Expr) -> Expr {
        Expr::LDiv(Box::new(a), Box::new(b))
    }
    pub fn rd(a: Expr, b: Expr) -> Expr {
        Expr::RDiv(Box::new(a), Box::new(b))
    }
    pub fn inv(a: Expr) -> Expr {
        Expr::Inv(Box::new(a))
    }
    pub fn t(a: Expr, b: Expr, c: Expr) -> Expr {
        Expr::T(Box::new(a), Box::new(b), Box::new(c))
    }
    pub fn p(a: Expr, b: Expr, c: Expr) -> Expr {
        Expr::P(Box::new(a), Box::new(b), Box::new(c))
    }
    /// `a\e`
    pub fn li(a: Expr) -> Expr {
        ld(a, e())
    }
    /// `e/a`
    pub fn ri(a: Expr) -> Expr {
        rd(e(), a)
    }
}

/// Range of a quantified variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    All,
    Nucleus,
    Center,
}

/// Loops on which a law is asserted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Applicability {
    AllLoops,
    FanLoops,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LawBody {
    /// Every `(lhs, rhs)` pair must agree.
    Equations(Vec<(Expr, Expr)>),
    /// The expression must lie in the nucleus.
    InNucleus(Expr),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityLaw {
    pub id: String,
    pub variables: Vec<(&'static str, Domain)>,
    pub applicability: Applicability,
    pub body: LawBody,
}

impl IdentityLaw {
    pub fn arity(&self) -> usize {
        self.variables.len()
    }

    pub fn equation(id: &str, applicability: Applicability, variables: &[(&'static str, Domain)], parts: Vec<(Expr, Expr)>) -> Self {
        IdentityLaw { id: id.to_string(), variables: variables.to_vec(), applicability, body: LawBody::Equations(parts) }
    }

    /// Human-readable statement.
    pub fn statement(&self) -> String {
        let names: Vec<&str> = self.variables.iter().map(|(n, _)| *n).collect();
        match &self.body {
            LawBody::Equations(parts) => parts
                .iter()
                .map(|(l, r)| format!("{} = {}", l.to_string_with(&names), r.to_string_with(&names)))
                .collect::<Vec<_>>()
                .join(" and "),
            LawBody::InNucleus(x) => format!("{} ∈ N", x.to_string_with(&names)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LawStatus {
    Holds,
    Fails,
    NotApplicable,
}

impl fmt::Display for LawStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LawStatus::Holds => "holds",
            LawStatus::Fails => "fails",
            LawStatus::NotApplicable => "not-applicable",
        })
    }
}

/// A failing assignment and the values it produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub assignment: Vec<(&'static str, usize)>,
    /// Index of the failing equation within the law.
    pub part: usize,
    pub lhs: usize,
    /// `None` for membership laws.
    pub rhs: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawReport {
    pub law_id: String,
    pub status: LawStatus,
    pub witness: Option<Witness>,
    pub tuples_checked: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LawError {
    #[error("law {0} only applies to fan loops")]
    NotApplicable(String),
}

/// A loop together with its analysis, shared across law checks.
pub struct LawContext<'a> {
    pub g: &'a FiniteLoop,
    pub analysis: LoopAnalysis,
}

impl<'a> LawContext<'a> {
    pub fn new(g: &'a FiniteLoop) -> Self {
        LawContext { g, analysis: classify(g) }
    }

    fn domain(&self, d: Domain) -> Vec<usize> {
        let set: ElementSet = match d {
            Domain::All => return self.g.elements().collect(),
            Domain::Nucleus => self.analysis.parts.nucleus.clone(),
            Domain::Center => self.analysis.parts.center.clone(),
        };
        set.to_vec()
    }

    pub fn applies(&self, law: &IdentityLaw) -> bool {
        match law.applicability {
            Applicability::AllLoops => true,
            Applicability::FanLoops => self.analysis.is_fan_loop,
        }
    }

    pub fn check(&self, law: &IdentityLaw) -> Result<LawReport, LawError> {
        if !self.applies(law) {
            return Err(LawError::NotApplicable(law.id.clone()));
        }
        Ok(self.check_unconditionally(law))
    }

    /// Evaluates the law on every tuple regardless of its applicability.
    pub fn check_unconditionally(&self, law: &IdentityLaw) -> LawReport {
        let g = self.g;
        let ranges: Vec<Vec<usize>> = law.variables.iter().map(|&(_, d)| self.domain(d)).collect();
        let mut counter = vec![0usize; ranges.len()];
        let mut vals: Vec<usize> = ranges.iter().map(|r| r.first().copied().unwrap_or(0)).collect();
        let mut checked = 0u64;
        let empty = ranges.iter().any(|r| r.is_empty());
        let mut witness = None;
        if !empty {
            'tuples: loop {
                checked += 1;
                match &law.body {
                    LawBody::Equations(parts) => {
                        for (i, (l, r)) in parts.iter().enumerate() {
                            let (lv, rv) = (l.eval(g, &vals), r.eval(g, &vals));
                            if lv != rv {
                                witness = Some(Witness { assignment: assign(law, &vals), part: i, lhs: lv, rhs: Some(rv) });
                                break 'tuples;
                            }
                        }
                    }
                    LawBody::InNucleus(x) => {
                        let xv = x.eval(g, &vals);
                        if !self.analysis.parts.nucleus.contains(xv) {
                            witness = Some(Witness { assignment: assign(law, &vals), part: 0, lhs: xv, rhs: None });
                            break 'tuples;
                        }
                    }
                }
                // Odometer with the first variable most significant.
                let mut k = ranges.len();
                loop {
                    if k == 0 {
                        break 'tuples;
                    }
                    k -= 1;
                    counter[k] += 1;
                    if counter[k] < ranges[k].len() {
                        vals[k] = ranges[k][counter[k]];
                        break;
                    }
                    counter[k] = 0;
                    vals[k] = ranges[k][0];
                }
            }
        }
        LawReport {
            law_id: law.id.clone(),
            status: if witness.is_some() { LawStatus::Fails } else { LawStatus::Holds },
            witness,
            tuples_checked: checked,
        }
    }

    /// One report per registry entry; inapplicable laws are reported as such.
    pub fn check_all(&self) -> Vec<LawReport> {
        registry()
            .iter()
            .map(|law| {
                self.check(law).unwrap_or_else(|_| LawReport {
                    law_id: law.id.clone(),
                    status: LawStatus::NotApplicable,
                    witness: None,
                    tuples_checked: 0,
                })
            })
            .collect()
    }
}

fn assign(law: &IdentityLaw, vals: &[usize]) -> Vec<(&'static str, usize)> {
    law.variables.iter().zip(vals).map(|(&(n, _), &v)| (n, v)).collect()
}

pub fn check_law(g: &FiniteLoop, law: &IdentityLaw) -> Result<LawReport, LawError> {
    LawContext::new(g).check(law)
}

pub fn check_all(g: &FiniteLoop) -> Vec<LawReport> {
    LawContext::new(g).check_all()
}

pub fn law(id: &str) -> Option<IdentityLaw> {
    registry().into_iter().find(|l| l.id == id)
}

/// The full registry in a fixed order.
pub fn registry() -> Vec<IdentityLaw> {
    use build::*;
    use Applicability::{AllLoops, FanLoops};
    use Domain::{All, Center, Nucleus};

    let eq = IdentityLaw::equation;
    let (a, b, c) = (v(0), v(1), v(2));
    let abc = [("a", All), ("b", All), ("c", All)];
    let ab = [("a", All), ("b", All)];
    let a1 = [("a", All)];
    let b1 = [("b", All)];
    let a123 = [("a1", All), ("a2", All), ("a3", All)];
    let a123b = [("a1", All), ("a2", All), ("a3", All), ("b", Nucleus)];
    let (x1, x2, x3, x4) = (v(0), v(1), v(2), v(3));

    vec![
        eq("2.2.1", FanLoops, &b1, vec![(li(v(0)), m(t(ri(v(0)), v(0), li(v(0))), ri(v(0))))]),
        eq("2.2.1'", FanLoops, &b1, vec![(li(v(0)), m(ri(v(0)), p(ri(v(0)), v(0), li(v(0)))))]),
        eq(
            "2.2.2",
            FanLoops,
            &ab,
            vec![
                (
                    m(li(a.clone()), b.clone()),
                    m(m(t(ri(a.clone()), a.clone(), li(a.clone())), inv(t(ri(a.clone()), a.clone(), ld(a.clone(), b.clone())))), ld(a.clone(), b.clone())),
                ),
                (ld(a.clone(), b.clone()), m(m(li(a.clone()), b.clone()), p(a.clone(), li(a.clone()), b.clone()))),
            ],
        ),
        eq(
            "2.2.2'",
            FanLoops,
            &abc,
            vec![(
                ld(m(b.clone(), c.clone()), a.clone()),
                m(ld(c.clone(), ld(b.clone(), a.clone())), inv(p(b.clone(), c.clone(), ld(m(b.clone(), c.clone()), a.clone())))),
            )],
        ),
        eq(
            "2.2.2''",
            FanLoops,
            &abc,
            vec![(
                m(ld(a.clone(), b.clone()), c.clone()),
                m(ld(a.clone(), m(b.clone(), c.clone())), inv(p(a.clone(), ld(a.clone(), b.clone()), c.clone()))),
            )],
        ),
        eq(
            "2.2.2'''",
            FanLoops,
            &ab,
            vec![(
                li(m(a.clone(), b.clone())),
                m(
                    m(m(li(b.clone()), li(a.clone())), inv(t(a.clone(), b.clone(), li(b.clone())))),
                    t(m(a.clone(), b.clone()), li(b.clone()), li(a.clone())),
                ),
            )],
        ),
        eq(
            "2.2.3",
            FanLoops,
            &ab,
            vec![
                (
                    m(b.clone(), ri(a.clone())),
                    m(
                        m(rd(b.clone(), a.clone()), p(rd(b.clone(), a.clone()), a.clone(), li(a.clone()))),
                        inv(p(ri(a.clone()), a.clone(), li(a.clone()))),
                    ),
                ),
                (rd(b.clone(), a.clone()), m(inv(t(b.clone(), ri(a.clone()), a.clone())), m(b.clone(), ri(a.clone())))),
            ],
        ),
        eq(
            "2.2.3'",
            FanLoops,
            &abc,
            vec![(
                rd(a.clone(), m(b.clone(), c.clone())),
                m(t(rd(a.clone(), m(b.clone(), c.clone())), b.clone(), c.clone()), rd(rd(a.clone(), c.clone()), b.clone())),
            )],
        ),
        eq(
            "2.2.3''",
            FanLoops,
            &abc,
            vec![(
                m(c.clone(), rd(b.clone(), a.clone())),
                m(t(c.clone(), rd(b.clone(), a.clone()), a.clone()), rd(m(c.clone(), b.clone()), a.clone())),
            )],
        ),
        eq(
            "2.2.3'''",
            FanLoops,
            &ab,
            vec![(
                ri(m(a.clone(), b.clone())),
                m(
                    m(m(inv(p(ri(b.clone()), ri(a.clone()), m(a.clone(), b.clone()))), p(ri(a.clone()), a.clone(), b.clone())), ri(b.clone())),
                    ri(a.clone()),
                ),
            )],
        ),
        eq(
            "2.2.4",
            AllLoops,
            &ab,
            vec![(m(b.clone(), ld(b.clone(), a.clone())), a.clone()), (ld(b.clone(), m(b.clone(), a.clone())), a.clone())],
        ),
        eq(
            "2.2.5",
            AllLoops,
            &ab,
            vec![(m(rd(a.clone(), b.clone()), b.clone()), a.clone()), (rd(m(a.clone(), b.clone()), b.clone()), a.clone())],
        ),
        eq(
            "2.3.1",
            FanLoops,
            &[("a1", All), ("a2", All), ("a3", All), ("z1", Center), ("z2", Center), ("z3", Center)],
            vec![(t(m(v(3), v(0)), m(v(4), v(1)), m(v(5), v(2))), t(v(0), v(1), v(2)))],
        ),
        eq(
            "2.3.1'",
            FanLoops,
            &[("a1", All), ("a2", All), ("a3", All), ("z1", Center), ("z2", Center), ("z3", Center)],
            vec![(p(m(v(3), v(0)), m(v(4), v(1)), m(v(5), v(2))), p(v(0), v(1), v(2)))],
        ),
        eq("2.3.2", FanLoops, &a1, vec![(m(t(a.clone(), li(a.clone()), a.clone()), a.clone()), m(a.clone(), p(a.clone(), li(a.clone()), a.clone())))]),
        eq("2.3.2'", FanLoops, &a1, vec![(m(t(a.clone(), ri(a.clone()), a.clone()), a.clone()), m(a.clone(), p(a.clone(), ri(a.clone()), a.clone())))]),
        eq("2.3.2''", FanLoops, &a1, vec![(m(p(a.clone(), li(a.clone()), a.clone()), t(ri(a.clone()), a.clone(), li(a.clone()))), e())]),
        eq("2.3.3", FanLoops, &a123b, vec![(t(x1.clone(), x2.clone(), m(x3.clone(), x4.clone())), t(x1.clone(), x2.clone(), x3.clone()))]),
        eq("2.3.3'", FanLoops, &a123b, vec![(p(m(x4.clone(), x1.clone()), x2.clone(), x3.clone()), p(x1.clone(), x2.clone(), x3.clone()))]),
        eq(
            "2.3.4",
            FanLoops,
            &a123b,
            vec![(t(m(x4.clone(), x1.clone()), x2.clone(), x3.clone()), m(m(x4.clone(), t(x1.clone(), x2.clone(), x3.clone())), inv(x4.clone())))],
        ),
        eq(
            "2.3.4'",
            FanLoops,
            &a123b,
            vec![(p(x1.clone(), x2.clone(), m(x3.clone(), x4.clone())), m(m(inv(x4.clone()), p(x1.clone(), x2.clone(), x3.clone())), x4.clone()))],
        ),
        eq(
            "2.3.6",
            FanLoops,
            &[("a", All), ("b", All), ("q", Center)],
            vec![
                (rd(b.clone(), m(c.clone(), a.clone())), m(inv(c.clone()), rd(b.clone(), a.clone()))),
                (rd(b.clone(), c.clone()), ld(c.clone(), b.clone())),
                (ld(c.clone(), b.clone()), m(b.clone(), inv(c.clone()))),
                (rd(b.clone(), c.clone()), m(b.clone(), inv(c.clone()))),
            ],
        ),
        eq(
            "2.3.8",
            FanLoops,
            &a1,
            vec![(m(t(a.clone(), li(a.clone()), a.clone()), m(a.clone(), t(ri(a.clone()), a.clone(), li(a.clone())))), a.clone())],
        ),
        eq("2.6.6", AllLoops, &b1, vec![(li(ri(v(0))), v(0)), (ri(li(v(0))), v(0))]),
        eq(
            "2.8.1",
            AllLoops,
            &[("x", All), ("a", Nucleus), ("b", Nucleus)],
            vec![(ld(a.clone(), m(b.clone(), c.clone())), m(ld(a.clone(), b.clone()), c.clone()))],
        ),
        eq(
            "2.8.2",
            AllLoops,
            &[("x", All), ("a", Nucleus), ("b", Nucleus)],
            vec![(rd(m(b.clone(), c.clone()), a.clone()), m(b.clone(), rd(c.clone(), a.clone())))],
        ),
        IdentityLaw { id: "2.1.9-t".into(), variables: a123.to_vec(), applicability: AllLoops, body: LawBody::InNucleus(t(x1.clone(), x2.clone(), x3.clone())) },
        IdentityLaw { id: "2.1.9-p".into(), variables: a123.to_vec(), applicability: AllLoops, body: LawBody::InNucleus(p(x1, x2, x3)) },
    ]
}

/// Ids of the 26 core identities: associator, inverse and nucleus-division laws.
pub const CORE_LAW_IDS: [&str; 26] = [
    "2.2.1", "2.2.1'", "2.2.2", "2.2.2'", "2.2.2''", "2.2.2'''", "2.2.3", "2.2.3'", "2.2.3''", "2.2.3'''", "2.2.4", "2.2.5",
    "2.3.1", "2.3.1'", "2.3.2", "2.3.2'", "2.3.2''", "2.3.3", "2.3.3'", "2.3.4", "2.3.4'", "2.3.6", "2.3.8", "2.6.6",
    "2.8.1", "2.8.2",
];
