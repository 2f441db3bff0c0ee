//! Small groups as Cayley tables.

use crate::loops::FiniteLoop;

fn from_fn(n: usize, labels: Vec<String>, mul: impl Fn(usize, usize) -> usize) -> FiniteLoop {
    let rows: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| mul(a, b)).collect()).collect();
    FiniteLoop::with_labels(&rows, 0, labels).expect("catalog table is a loop")
}

fn cyclic_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| if i == 0 { "e".to_string() } else { format!("x{i}") }).collect()
}

/// The cyclic group `Cₙ` with elements `e, x1, …, x(n-1)` (`xi` is the i-th power).
pub fn cyclic(n: usize) -> FiniteLoop {
    assert!(n >= 1);
    from_fn(n, cyclic_labels(n), |a, b| (a + b) % n)
}

/// `C₂ × C₂ × … ` with `k` factors, elements written as bit strings.
pub fn elementary_abelian2(k: u32) -> FiniteLoop {
    let n = 1usize << k;
    let labels = (0..n)
        .map(|i| if i == 0 { "e".to_string() } else { format!("v{i}") })
        .collect();
    from_fn(n, labels, |a, b| a ^ b)
}

/// `C_m × C_n` with index `a*n + b`.
pub fn abelian2(m: usize, n: usize) -> FiniteLoop {
    let labels = (0..m * n)
        .map(|i| if i == 0 { "e".to_string() } else { format!("g{}_{}", i / n, i % n) })
        .collect();
    from_fn(m * n, labels, |x, y| ((x / n + y / n) % m) * n + (x % n + y % n) % n)
}

/// The dihedral group of order `2m`: `r^i s^j` at index `i + m*j`.
pub fn dihedral(m: usize) -> FiniteLoop {
    let labels = (0..2 * m)
        .map(|x| {
            let (i, j) = (x % m, x / m);
            match (i, j) {
                (0, 0) => "e".to_string(),
                (_, 0) => format!("r{i}"),
                (0, _) => "s".to_string(),
                _ => format!("r{i}s"),
            }
        })
        .collect();
    from_fn(2 * m, labels, |x, y| {
        let (i1, j1) = (x % m, x / m);
        let (i2, j2) = (y % m, y / m);
        // r^i1 s^j1 r^i2 s^j2 = r^(i1 ± i2) s^(j1+j2)
        let i = if j1 == 0 { (i1 + i2) % m } else { (i1 + m - i2) % m };
        i + m * ((j1 + j2) % 2)
    })
}

pub fn symmetric3() -> FiniteLoop {
    dihedral(3)
}

/// The quaternion group `{±1, ±i, ±j, ±k}`.
pub fn quaternion() -> FiniteLoop {
    crate::products::cayley_dickson_basis_loop(2).expect("order 8")
}

/// Every group of order at most 8, one per isomorphism class, with names.
pub fn small_groups() -> Vec<(&'static str, FiniteLoop)> {
    vec![
        ("C1", cyclic(1)),
        ("C2", cyclic(2)),
        ("C3", cyclic(3)),
        ("C4", cyclic(4)),
        ("C2xC2", elementary_abelian2(2)),
        ("C5", cyclic(5)),
        ("C6", cyclic(6)),
        ("S3", symmetric3()),
        ("C7", cyclic(7)),
        ("C8", cyclic(8)),
        ("C4xC2", abelian2(4, 2)),
        ("C2xC2xC2", elementary_abelian2(3)),
        ("D4", dihedral(4)),
        ("Q8", quaternion()),
    ]
}
