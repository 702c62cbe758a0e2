//! Dense brute-force references on plain `Vec<Vec<f64>>` matrices.

pub type Dense = Vec<Vec<f64>>;

pub fn identity(n: usize) -> Dense {
    (0..n).map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect()
}

pub fn mat_vec(m: &Dense, v: &[f64]) -> Vec<f64> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

pub fn mat_mul(a: &Dense, b: &Dense) -> Dense {
    let n = b[0].len();
    a.iter()
        .map(|row| (0..n).map(|j| row.iter().enumerate().map(|(k, x)| x * b[k][j]).sum()).collect())
        .collect()
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Gauss-Jordan inverse with full pivoting; `None` if numerically singular.
pub fn inverse(m: &Dense) -> Option<Dense> {
    let n = m.len();
    let mut a: Dense = m.iter().zip(identity(n)).map(|(r, e)| r.iter().copied().chain(e).collect()).collect();
    let scale = m.iter().flatten().fold(0.0f64, |s, x| s.max(x.abs())).max(f64::MIN_POSITIVE);
    let mut col_of: Vec<usize> = (0..n).collect();
    for k in 0..n {
        let (mut pr, mut pc, mut best) = (k, k, 0.0);
        for (i, row) in a.iter().enumerate().skip(k) {
            for (j, x) in row.iter().enumerate().take(n).skip(k) {
                if x.abs() > best {
                    (pr, pc, best) = (i, j, x.abs());
                }
            }
        }
        if best <= 1e-12 * scale {
            return None;
        }
        a.swap(k, pr);
        if pc != k {
            for row in a.iter_mut() {
                row.swap(k, pc);
            }
            col_of.swap(k, pc);
        }
        let piv = a[k][k];
        for x in a[k].iter_mut() {
            *x /= piv;
        }
        let pivot_row = a[k].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != k && row[k] != 0.0 {
                let f = row[k];
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= f * p;
                }
            }
        }
    }
    // Column swaps permute the unknowns, i.e. the rows of the inverse.
    let mut inv = vec![vec![0.0; n]; n];
    for k in 0..n {
        inv[col_of[k]] = a[k][n..].to_vec();
    }
    Some(inv)
}

/// `(I - δG)⁻¹` by Gauss-Jordan.
pub fn h_matrix(g: &Dense, delta: f64) -> Dense {
    let n = g.len();
    let m: Dense = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 } - delta * g[i][j]).collect())
        .collect();
    inverse(&m).expect("I - δG invertible")
}

/// Largest eigenvalue and unit eigenvector of a nonnegative symmetric matrix
/// by power iteration on `G + I` (shifted so the Perron root dominates).
pub fn power_iteration(g: &Dense, iterations: usize) -> (f64, Vec<f64>) {
    let n = g.len();
    let mut v = vec![1.0 / (n as f64).sqrt(); n];
    for _ in 0..iterations {
        let mut w = mat_vec(g, &v);
        for (wi, vi) in w.iter_mut().zip(&v) {
            *wi += vi;
        }
        let norm = dot(&w, &w).sqrt();
        v = w.into_iter().map(|x| x / norm).collect();
    }
    let gv = mat_vec(g, &v);
    (dot(&v, &gv), v)
}

/// `Σ_{k≤terms} δᵏ Gᵏ z`
pub fn neumann(g: &Dense, delta: f64, z: &[f64], terms: usize) -> Vec<f64> {
    let mut term = z.to_vec();
    let mut sum = z.to_vec();
    for _ in 0..terms {
        term = mat_vec(g, &term).into_iter().map(|x| x * delta).collect();
        for (s, t) in sum.iter_mut().zip(&term) {
            *s += t;
        }
    }
    sum
}

/// A constraint `⟨normal, p⟩ ≤ offset`.
#[derive(Debug, Clone)]
pub struct Constraint {
    pub normal: Vec<f64>,
    pub offset: f64,
}

/// `argmin_{p ∈ K} (p - q)ᵀ H (p - q)` over the polyhedron `K`, by
/// enumerating every active set of size at most `max_active`, solving the
/// equality-constrained KKT system, and keeping the best feasible candidate
/// with nonnegative multipliers.
pub fn brute_force_projection(h: &Dense, q: &[f64], constraints: &[Constraint], max_active: usize) -> Option<Vec<f64>> {
    let n = q.len();
    let hinv = inverse(h)?;
    let u: Vec<Vec<f64>> = constraints.iter().map(|c| mat_vec(&hinv, &c.normal)).collect();
    let gram: Dense = constraints.iter().map(|c| u.iter().map(|uj| dot(&c.normal, uj)).collect()).collect();
    let slack: Vec<f64> = constraints.iter().map(|c| dot(&c.normal, q) - c.offset).collect();
    let scale = 1.0 + q.iter().fold(0.0f64, |s, x| s.max(x.abs()));
    let feasible = |p: &[f64]| constraints.iter().all(|c| dot(&c.normal, p) - c.offset <= 1e-9 * scale);

    let mut best: Option<(f64, Vec<f64>)> = None;
    let mut consider = |p: Vec<f64>| {
        if !feasible(&p) {
            return;
        }
        let d: Vec<f64> = p.iter().zip(q).map(|(a, b)| a - b).collect();
        let obj = dot(&d, &mat_vec(h, &d));
        if best.as_ref().map_or(true, |(b, _)| obj < *b - 1e-15) {
            best = Some((obj, p));
        }
    };
    consider(q.to_vec());

    let m = constraints.len();
    let mut subset: Vec<usize> = Vec::new();
    fn recurse(
        start: usize,
        m: usize,
        max_active: usize,
        subset: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]),
    ) {
        for j in start..m {
            subset.push(j);
            visit(subset);
            if subset.len() < max_active {
                recurse(j + 1, m, max_active, subset, visit);
            }
            subset.pop();
        }
    }
    let mut visit = |s: &[usize]| {
        let a: Dense = s.iter().map(|&i| s.iter().map(|&j| gram[i][j]).collect()).collect();
        let Some(ainv) = inverse(&a) else { return };
        let rhs: Vec<f64> = s.iter().map(|&i| slack[i]).collect();
        let mu = mat_vec(&ainv, &rhs);
        if mu.iter().any(|x| *x < -1e-10 * scale) {
            return;
        }
        let mut p = q.to_vec();
        for (k, &j) in s.iter().enumerate() {
            for i in 0..n {
                p[i] -= mu[k] * u[j][i];
            }
        }
        consider(p);
    };
    recurse(0, m, max_active.min(m), &mut subset, &mut visit);
    best.map(|(_, p)| p)
}
