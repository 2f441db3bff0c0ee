//! Acceptance suite: one line per criterion.
//!
//! Runs without the libtest harness so the lines always print. The process
//! fails if any criterion fails, except that criterion 5 may be reported as
//! KNOWN-RED when its only failures are the documented ones (see README).

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use fanloop::census::{self, CensusFilter, CensusQuery};
use fanloop::haar::{self, LoopFunction, TranslateMode};
use fanloop::laws::{self, LawStatus, CORE_LAW_IDS};
use fanloop::loops::{nucleus_parts, ElementSet};
use fanloop::lp::{self, LpProblem};
use fanloop::products::{self, product_set};
use fanloop::quotient;
use fanloop::{classify, fan, FiniteLoop, Rational};
use fanloop_cli::format;
use fanloop_cli::report::CheckReport;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20240601;

enum Verdict {
    Pass(String),
    Fail(String),
    KnownRed(String),
}

fn corpus() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn load(rel: &str) -> FiniteLoop {
    format::read_loop_file(&corpus().join(rel)).unwrap_or_else(|e| panic!("{rel}: {e}")).table
}

fn files(dir: &str, ext: &str) -> Vec<String> {
    let mut out: Vec<String> = std::fs::read_dir(corpus().join(dir))
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .filter(|n| n.ends_with(ext))
        .map(|n| format!("{dir}/{n}"))
        .collect();
    out.sort();
    out
}

/// Groups of order at most 8, Cayley–Dickson loops k = 1..4 and the five
/// shipped smashed products.
fn corpus_loops() -> Vec<(String, FiniteLoop)> {
    let mut names = files("groups", ".loop");
    names.extend(files("cayley_dickson", ".loop"));
    names.extend(files("smash", ".product.loop"));
    names.into_iter().map(|n| (n.clone(), load(&n))).collect()
}

fn corpus_fan_loops() -> Vec<(String, FiniteLoop)> {
    corpus_loops().into_iter().filter(|(_, g)| classify(g).is_fan_loop).collect()
}

fn check(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let t = start.elapsed();
    check(t < limit, || format!("{what} took {t:.2?}, limit {limit:?}"))
}

fn verdict(r: Result<String, String>) -> Verdict {
    match r {
        Ok(s) => Verdict::Pass(s),
        Err(s) => Verdict::Fail(s),
    }
}

// 1. Law registry on the corpus.
fn criterion_1() -> Verdict {
    verdict((|| {
        let start = Instant::now();
        let loops = corpus_loops();
        check(loops.len() == 14 + 4 + 5, || format!("corpus has {} loops", loops.len()))?;
        let mut tuples = 0u64;
        for (name, g) in &loops {
            check(classify(g).is_fan_loop, || format!("{name} is not a fan loop"))?;
            for id in CORE_LAW_IDS {
                let law = laws::law(id).ok_or(format!("law {id} missing"))?;
                let r = laws::check_law(g, &law).map_err(|e| format!("{name}: {e}"))?;
                check(r.status == LawStatus::Holds, || format!("{name}: {id} fails with {:?}", r.witness))?;
                tuples += r.tuples_checked;
            }
        }
        within(start, Duration::from_secs(10), "law suite")?;
        Ok(format!("26 laws hold on {} loops, {tuples} tuples", loops.len()))
    })())
}

// 2. Fan is normal and the quotient by it is a group.
fn criterion_2() -> Verdict {
    verdict((|| {
        let start = Instant::now();
        let loops = corpus_fan_loops();
        for (name, g) in &loops {
            let n0 = fan(g);
            quotient::is_normal_subloop(g, &n0).map_err(|e| format!("{name}: {e}"))?;
            let q = quotient::quotient(g, &n0).map_err(|e| format!("{name}: {e}"))?;
            // Exhaustive group check, independent of the library's own.
            for x in q.elements() {
                for y in q.elements() {
                    for z in q.elements() {
                        check(q.mul(q.mul(x, y), z) == q.mul(x, q.mul(y, z)), || format!("{name}: quotient not associative"))?;
                    }
                }
                let inv = (0..q.order()).find(|&y| q.mul(x, y) == 0).ok_or(format!("{name}: no inverse"))?;
                check(q.mul(inv, x) == 0, || format!("{name}: one-sided inverse"))?;
            }
        }
        let o = load("octonion.loop");
        let q = quotient::quotient(&o, &fan(&o)).map_err(|e| e.to_string())?;
        check(q.order() == 8, || format!("octonion quotient has order {}", q.order()))?;
        check((1..8).all(|x| q.mul(x, x) == 0), || "octonion quotient element of order > 2".into())?;
        within(start, Duration::from_secs(1), "fan quotients")?;
        Ok(format!("{} fan quotients are groups; octonions/fan ≅ C2^3", loops.len()))
    })())
}

// 3. Smashed products agree with the closed forms.
fn criterion_3() -> Verdict {
    verdict((|| {
        let mut summary = Vec::new();
        for smash in files("smash", ".smash") {
            let start = Instant::now();
            let d = format::read_smashing_file(&corpus().join(&smash)).map_err(|e| e.to_string())?;
            products::validate_smashing(&d).map_err(|e| format!("{smash}: {e}"))?;
            let g = products::smashed_product(&d).map_err(|e| format!("{smash}: {e}"))?;
            let report = products::cross_check(&d, &g).map_err(|e| format!("{smash}: {e}"))?;
            let n = g.order();
            check(report.triples_checked == n * n * n && report.pairs_checked == n * n, || format!("{smash}: incomplete cross-check"))?;
            let shipped = load(&smash.replace(".smash", ".product.loop"));
            check(shipped.flat_table() == g.flat_table(), || format!("{smash}: shipped product differs"))?;
            within(start, Duration::from_secs(5), &smash)?;
            summary.push(n.to_string());
        }
        Ok(format!("5 smashed products (orders {}) match t, p, inverses and divisions", summary.join(", ")))
    })())
}

/// Solves `A x = b` exactly; `None` if singular.
fn solve_square(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = b.len();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, p);
        b.swap(col, p);
        let inv = a[col][col].recip();
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = &a[r][col] * &inv;
                for c in col..n {
                    let d = &f * &a[col][c];
                    a[r][c] -= &d;
                }
                let d = &f * &b[col];
                b[r] -= &d;
            }
        }
    }
    Some((0..n).map(|i| &b[i] / &a[i][i]).collect())
}

/// Minimum of `Σc` over vertices of `{c ≥ 0 : Σ_b c_b φ(bx) ≥ f(x)}`.
fn vertex_oracle(g: &FiniteLoop, f: &LoopFunction, phi: &LoopFunction) -> Rational {
    let n = g.order();
    // Hyperplanes: rows 0..n are covering constraints, n..2n are c_j = 0.
    let row = |k: usize| -> (Vec<Rational>, Rational) {
        if k < n {
            ((0..n).map(|b| phi.get(g.mul(b, k)).clone()).collect(), f.get(k).clone())
        } else {
            ((0..n).map(|j| if j == k - n { Rational::one() } else { Rational::zero() }).collect(), Rational::zero())
        }
    };
    let mut best: Option<Rational> = None;
    let mut pick: Vec<usize> = (0..n).collect();
    loop {
        let (a, b): (Vec<_>, Vec<_>) = pick.iter().map(|&k| row(k)).unzip();
        if let Some(c) = solve_square(a, b) {
            let feasible = c.iter().all(|v| !v.is_negative())
                && (0..n).all(|x| (0..n).map(|bb| &c[bb] * phi.get(g.mul(bb, x))).sum::<Rational>() >= *f.get(x));
            if feasible {
                let v: Rational = c.iter().sum();
                if best.as_ref().is_none_or(|b| v < *b) {
                    best = Some(v);
                }
            }
        }
        // Next n-subset of 0..2n in lexicographic order.
        let mut i = n;
        loop {
            if i == 0 {
                return best.expect("covering polytope has a vertex");
            }
            i -= 1;
            if pick[i] < 2 * n - (n - i) {
                pick[i] += 1;
                for j in i + 1..n {
                    pick[j] = pick[j - 1] + 1;
                }
                break;
            }
        }
    }
}

// 4. Covering LP against vertex enumeration and the point-mass argument.
fn criterion_4() -> Verdict {
    verdict((|| {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        let mut trials = 0;
        for n in 1..=6 {
            let loops: Vec<FiniteLoop> = census::enumerate(&CensusQuery::new(n, CensusFilter::All)).map_err(|e| e.to_string())?.collect();
            for _ in 0..100 {
                let g = &loops[rng.gen_range(0..loops.len())];
                let f = haar::random_function(n, &mut rng);
                let phi = haar::random_function(n, &mut rng);
                let cov = haar::covering(g, &f, &phi).map_err(|e| e.to_string())?;
                let oracle = vertex_oracle(g, &f, &phi);
                check(cov.value == oracle, || format!("order {n}: LP {} vs vertices {oracle}", cov.value))?;
                // The coefficients must themselves be a feasible covering.
                let ok = (0..n).all(|x| (0..n).map(|b| &cov.coefficients[b] * phi.get(g.mul(b, x))).sum::<Rational>() >= *f.get(x));
                check(ok, || format!("order {n}: infeasible coefficients"))?;
                let dedicated = haar::covering_number(g, &f, &LoopFunction::delta(n, 0)).map_err(|e| e.to_string())?;
                check(dedicated == f.sum(), || format!("order {n}: (f:δ_e) = {dedicated}, Σf = {}", f.sum()))?;
                trials += 1;
            }
        }
        // The certificate check is independent of the solver.
        let p = LpProblem::new(vec![Rational::one(); 2], vec![vec![Rational::from(2i64), Rational::one()]], vec![Rational::from(3i64)]);
        lp::verify_certificate(&p, &lp::solve(&p)).map_err(|e| format!("{e:?}"))?;
        Ok(format!("{trials} seeded trials over all reduced squares of orders 1..6 match vertex enumeration"))
    })())
}

// 5. Covering identities and bounds on every corpus fan loop.
fn criterion_5() -> Verdict {
    let start = Instant::now();
    let mut red = Vec::new();
    let mut other = Vec::new();
    let loops = corpus_fan_loops();
    for (name, g) in &loops {
        let report = match haar::property_suite(g, 100, SEED) {
            Ok(r) => r,
            Err(e) => return Verdict::Fail(format!("{name}: {e}")),
        };
        for p in &report.properties {
            if p.failures > 0 {
                let line = format!("{name}: {} fails {}/{}", p.id, p.failures, p.checked);
                if p.id == "3.4.1" || p.id == "3.4.2" {
                    red.push(line);
                } else {
                    other.push(line);
                }
            }
        }
    }
    let elapsed = start.elapsed();
    if !other.is_empty() {
        return Verdict::Fail(other.join("; "));
    }
    if elapsed > Duration::from_secs(60) {
        return Verdict::Fail(format!("suite took {elapsed:.2?}, limit 60s"));
    }
    if red.is_empty() {
        return Verdict::Pass(format!("all identities hold on {} fan loops in {elapsed:.1?}", loops.len()));
    }
    // Re-derive the minimal counterexample with certified LP optima.
    let g = load("cayley_dickson/cd4.loop");
    let idx = |l: &str| g.index_of(l).unwrap();
    let n = g.order();
    let f = LoopFunction::indicator(&ElementSet::from_indices(n, [idx("1"), idx("e9")]));
    let phi = LoopFunction::indicator(&ElementSet::from_indices(n, [idx("e2"), idx("e11")]));
    let b = idx("e12");
    let lhs = haar::covering_number(&g, &haar::translate(&g, &f, b, TranslateMode::Left), &phi).unwrap();
    let rhs = haar::covering_number(&g, &f, &haar::translate(&g, &phi, b, TranslateMode::LeftDiv)).unwrap();
    if lhs == rhs || lhs != Rational::from(2i64) || rhs != Rational::one() {
        return Verdict::Fail(format!("documented counterexample did not reproduce: {lhs} vs {rhs}"));
    }
    Verdict::KnownRed(format!(
        "3.4.1/3.4.2 fail on nonassociative corpus loops ({}); witness on cd4: f = χ{{1,e9}}, φ = χ{{e2,e11}}, b = e12 gives 2 vs 1; 3.4.1'-3.4.5, 3.6.1, 3.6.10, 3.9.1, 3.9.2, 3.10.1, 3.15.x hold; {elapsed:.1?}",
        red.join("; ")
    ))
}

// 6. Invariance, point-mass stabilization and invariant measure.
fn criterion_6() -> Verdict {
    verdict((|| {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED + 6);
        let loops = corpus_fan_loops();
        for (name, g) in &loops {
            let n = g.order();
            let f0 = haar::random_upsilon(g, &fan(g), &mut rng);
            let j = haar::haar_limit(g, &f0).map_err(|e| format!("{name}: {e}"))?;
            for k in 0..50 {
                let f = haar::random_function(n, &mut rng);
                let v = j.value(&f).map_err(|e| e.to_string())?;
                check(v == f.sum() / f0.sum(), || format!("{name}: J(f) ≠ Σf/Σf₀"))?;
                for b in g.elements() {
                    let shifted = j.value(&haar::translate(g, &f, b, TranslateMode::Left)).map_err(|e| e.to_string())?;
                    check(shifted == v, || format!("{name}: J(_b f) ≠ J(f) at b = {}", g.label(b)))?;
                }
                for (p, q) in [(1, 1), (3, 1), (1, 7), (5, 2)] {
                    let phi = LoopFunction::point_mass(n, 0, Rational::new(p, q));
                    let r = haar::ratio_functional(g, &f, &f0, &phi).map_err(|e| e.to_string())?;
                    check(r == v, || format!("{name}: point mass of height {p}/{q} gives {r}, limit {v}"))?;
                }
                if k < 3 {
                    j.stabilization(&f).map_err(|e| format!("{name}: {e}"))?;
                }
            }
            let mu = haar::invariant_measure(g).map_err(|e| format!("{name}: {e}"))?;
            check(mu.total == Rational::from(n), || format!("{name}: total mass {}", mu.total))?;
            for _ in 0..50 {
                let set = ElementSet::from_indices(n, (0..n).filter(|_| rng.gen_bool(0.5)));
                let m = mu.measure(&set);
                for b in g.elements() {
                    let shifted = ElementSet::from_indices(n, set.iter().map(|x| g.mul(b, x)));
                    check(mu.measure(&shifted) == m, || format!("{name}: μ(bB) ≠ μ(B)"))?;
                }
            }
        }
        Ok(format!("J(_b f) = J(f), point-mass heights agree and μ(bB) = μ(B) on {} fan loops", loops.len()))
    })())
}

// 7. Uniqueness up to the scalar κ.
fn criterion_7() -> Verdict {
    verdict((|| {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED + 7);
        let loops = corpus_fan_loops();
        for (name, g) in &loops {
            let n = g.order();
            let n0 = fan(g);
            let f0 = haar::random_upsilon(g, &n0, &mut rng);
            let g0 = haar::random_upsilon(g, &n0, &mut rng);
            let tests: Vec<LoopFunction> = (0..20).map(|_| haar::random_function(n, &mut rng)).collect();
            let kappa = haar::verify_uniqueness(g, &f0, &g0, &tests).map_err(|e| format!("{name}: {e}"))?;
            let expected = f0.sum() / g0.sum();
            check(kappa == expected, || format!("{name}: κ = {kappa}, expected {expected}"))?;
            let j = haar::haar_limit(g, &f0).map_err(|e| e.to_string())?;
            let h = haar::haar_limit(g, &g0).map_err(|e| e.to_string())?;
            for f in (0..n).map(|x| LoopFunction::delta(n, x)).chain(tests) {
                check(h.value(&f).unwrap() == &expected * &j.value(&f).unwrap(), || format!("{name}: H ≠ κJ"))?;
            }
        }
        Ok(format!("H = κ·J with κ = Σf₀/Σg₀ on {} fan loops", loops.len()))
    })())
}

// 8. Direct products are componentwise.
fn criterion_8() -> Verdict {
    verdict((|| {
        let pairs = [
            ("groups/C2.loop", "groups/C3.loop"),
            ("groups/S3.loop", "groups/C2.loop"),
            ("groups/Q8.loop", "groups/C2.loop"),
            ("groups/D4.loop", "groups/C3.loop"),
            ("octonion.loop", "groups/C2.loop"),
            ("groups/C2xC2.loop", "groups/S3.loop"),
            ("smash/c6_c2_split.product.loop", "groups/C2.loop"),
            ("smash/c2_c4.product.loop", "groups/C3.loop"),
            ("groups/Q8.loop", "groups/S3.loop"),
            ("cayley_dickson/cd1.loop", "octonion.loop"),
        ];
        for (x, y) in pairs {
            let (a, b) = (load(x), load(y));
            let g = products::direct_product(&[a.clone(), b.clone()]).map_err(|e| format!("{x} × {y}: {e}"))?;
            let (pa, pb, pg) = (nucleus_parts(&a), nucleus_parts(&b), nucleus_parts(&g));
            check(pg.nucleus == product_set(&[pa.nucleus.clone(), pb.nucleus.clone()]), || format!("{x} × {y}: nucleus"))?;
            check(pg.center == product_set(&[pa.center.clone(), pb.center.clone()]), || format!("{x} × {y}: center"))?;
            check(fan(&g) == product_set(&[fan(&a), fan(&b)]), || format!("{x} × {y}: fan"))?;
        }
        Ok("N, Z and fan are componentwise on 10 corpus pairs".into())
    })())
}

/// Counts reduced Latin squares by trying every row permutation and checking
/// columns only at the end.
fn naive_reduced_count(n: usize) -> u64 {
    fn perms(rest: Vec<usize>) -> Vec<Vec<usize>> {
        if rest.is_empty() {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for (i, &x) in rest.iter().enumerate() {
            let mut r = rest.clone();
            r.remove(i);
            for mut p in perms(r) {
                p.insert(0, x);
                out.push(p);
            }
        }
        out
    }
    let rows: Vec<Vec<Vec<usize>>> =
        (0..n).map(|r| perms((0..n).filter(|&v| v != r).collect()).into_iter().map(|p| [vec![r], p].concat()).collect()).collect();
    fn go(rows: &[Vec<Vec<usize>>], n: usize, chosen: &mut Vec<Vec<usize>>) -> u64 {
        if chosen.len() == n {
            let cols_ok = (0..n).all(|c| {
                let mut seen = vec![false; n];
                chosen.iter().all(|r| !std::mem::replace(&mut seen[r[c]], true))
            });
            return cols_ok as u64;
        }
        let mut total = 0;
        for r in &rows[chosen.len()] {
            chosen.push(r.clone());
            total += go(rows, n, chosen);
            chosen.pop();
        }
        total
    }
    go(&rows, n, &mut vec![(0..n).collect()])
}

// 9. Census counts and witnesses.
fn criterion_9() -> Verdict {
    verdict((|| {
        let start = Instant::now();
        for (n, expected) in [(4, 4), (5, 56)] {
            let fast = census::count_reduced(n).map_err(|e| e.to_string())?;
            let naive = naive_reduced_count(n);
            check(fast == expected && naive == expected, || format!("order {n}: census {fast}, naive {naive}, expected {expected}"))?;
        }
        let nf = census::find_witness(5, "non-fan").map_err(|e| e.to_string())?.ok_or("no non-fan witness")?;
        check(!classify(&nf).is_fan_loop, || "non-fan witness is a fan loop".into())?;
        let split = census::find_witness(5, "inverse-split").map_err(|e| e.to_string())?.ok_or("no inverse-split witness")?;
        check(split.elements().any(|a| split.inv_l(a) != split.inv_r(a)), || "inverse-split witness has e/a = a\\e".into())?;
        within(start, Duration::from_secs(30), "census")?;
        Ok("reduced squares: 4 at order 4, 56 at order 5 (naive oracle agrees); order-5 non-fan and e/a ≠ a\\e witnesses".into())
    })())
}

fn fanloop(args: &[&str], envs: &[(&str, &str)]) -> (i32, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_fanloop"));
    cmd.args(args).current_dir(corpus()).env_remove("FANLOOP_CAP");
    for (k, v) in envs {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

// 10. File round trips and exit codes.
fn criterion_10() -> Verdict {
    verdict((|| {
        let mut canonical = files("groups", ".loop");
        canonical.extend(files("cayley_dickson", ".loop"));
        canonical.extend(files("smash", ".loop"));
        canonical.extend(files("census", ".loop"));
        canonical.push("octonion.loop".into());
        for f in &canonical {
            let original = std::fs::read_to_string(corpus().join(f)).unwrap();
            let (code, out) = fanloop(&["fmt", f], &[]);
            check(code == 0 && out == original, || format!("{f} does not round-trip"))?;
        }
        let cases: &[(&[&str], &[(&str, &str)], i32, &str)] = &[
            (&["check", "groups/C4.loop"], &[], 0, "\"is_group\": true"),
            (&["check", "octonion.loop"], &[], 0, "\"fan_size\": 2"),
            (&["check", "census/non_fan_order5.loop"], &[], 0, "\"is_fan_loop\": false"),
            (&["check", "invalid/bad_order.loop"], &[], 1, "2:1"),
            (&["check", "invalid/unknown_label.loop"], &[], 1, "unknown label"),
            (&["check", "does/not/exist.loop"], &[], 1, ""),
            (&["check", "--bogus-flag", "groups/C4.loop"], &[], 1, ""),
            (&["check", "invalid/duplicate_row_entry.loop"], &[], 2, "Latin"),
            (&["check", "invalid/no_identity.loop"], &[], 2, "identity"),
            (&["check", "census/non_fan_order5.loop", "--law", "2.1.9-t"], &[], 3, "\"status\": \"fails\""),
            (&["haar", "census/non_fan_order5.loop"], &[], 4, ""),
            (&["haar", "octonion.loop", "--f0", "functions/delta_one.fn"], &[], 5, ""),
            (&["haar", "octonion.loop", "functions/chi_e1.fn"], &[], 0, "\"value\": \"1/16\""),
            (&["smash", "invalid/violates_4_3_8.smash"], &[], 6, "4.3.8"),
            (&["smash", "smash/c2_c4.smash"], &[], 0, "\"order\": 8"),
            (&["check", "cayley_dickson/cd4.loop", "--cap", "16"], &[], 7, ""),
            (&["check", "cayley_dickson/cd4.loop"], &[("FANLOOP_CAP", "16")], 7, ""),
            (&["census", "8"], &[], 7, ""),
            (&["census", "4"], &[], 0, "reduced=4"),
            (&["census", "2"], &[], 0, "reduced=1"),
        ];
        for (args, envs, code, needle) in cases {
            let (got, out) = fanloop(args, envs);
            check(got == *code, || format!("`fanloop {}` exited {got}, expected {code}", args.join(" ")))?;
            check(out.contains(needle), || format!("`fanloop {}` output lacks {needle:?}", args.join(" ")))?;
        }
        let (code, out) = fanloop(&["--quiet", "check", "invalid/duplicate_row_entry.loop"], &[]);
        check(code == 2 && out.is_empty(), || "--quiet still prints".into())?;
        let (_, out) = fanloop(&["census", "5", "--filter", "non-fan", "--limit", "1"], &[]);
        check(out.matches("\n5\n").count() == 1, || "census limit 1 did not emit one loop".into())?;
        let props = ["--seed", "9", "props", "groups/S3.loop", "--instances", "3"];
        check(fanloop(&props, &[]) == fanloop(&props, &[]), || "repeated runs differ".into())?;
        let (_, json) = fanloop(&["check", "octonion.loop"], &[]);
        let parsed: CheckReport = serde_json::from_str(&json).map_err(|e| e.to_string())?;
        check(fanloop_cli::report::to_json(&parsed) == json, || "report does not round-trip".into())?;
        Ok(format!("{} canonical files round-trip; {} exit-code cases", canonical.len(), cases.len() + 1))
    })())
}

fn main() {
    let criteria: [(&str, fn() -> Verdict); 10] = [
        ("law suite", criterion_1),
        ("fan quotient", criterion_2),
        ("smashed product", criterion_3),
        ("covering LP", criterion_4),
        ("covering identities and bounds", criterion_5),
        ("invariance and limit", criterion_6),
        ("uniqueness", criterion_7),
        ("direct product", criterion_8),
        ("census", criterion_9),
        ("cli contract", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let v = std::panic::catch_unwind(run).unwrap_or_else(|_| Verdict::Fail("panicked".into()));
        let t = start.elapsed();
        let (tag, detail) = match v {
            Verdict::Pass(s) => ("PASS", s),
            Verdict::KnownRed(s) => ("KNOWN-RED", s),
            Verdict::Fail(s) => {
                failed += 1;
                ("FAIL", s)
            }
        };
        println!("criterion {:>2} {tag:<9} {name}: {detail} [{t:.2?}]", i + 1);
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
