//! Scalar root finding: bracket scans, bisection with a safeguarded Newton
//! polish, and a one-dimensional minimiser.

use alloc::vec::Vec;

use crate::math::{abs, exp, ln};

/// `n` points log-spaced on `[lo, hi]`.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(lo > 0.0 && hi > lo && n >= 2);
    let (a, b) = (ln(lo), ln(hi));
    (0..n)
        .map(|i| {
            if i == n - 1 {
                hi
            } else {
                exp(a + (b - a) * i as f64 / (n - 1) as f64)
            }
        })
        .collect()
}

/// `n` points evenly spaced on `[lo, hi]`.
pub fn lin_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2);
    (0..n)
        .map(|i| {
            if i == n - 1 {
                hi
            } else {
                lo + (hi - lo) * i as f64 / (n - 1) as f64
            }
        })
        .collect()
}

/// Adjacent grid intervals over which `f` changes sign. An exact zero at a
/// grid point yields a degenerate bracket `(x, x)`.
pub fn sign_change_brackets<F: Fn(f64) -> f64>(f: F, grid: &[f64]) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    let vals: Vec<f64> = grid.iter().map(|&x| f(x)).collect();
    for i in 0..grid.len() {
        if vals[i] == 0.0 {
            out.push((grid[i], grid[i]));
            continue;
        }
        if i + 1 < grid.len() && vals[i + 1] != 0.0 && (vals[i] < 0.0) != (vals[i + 1] < 0.0) {
            out.push((grid[i], grid[i + 1]));
        }
    }
    out
}

/// Bisection on a sign-change bracket until the bracket is narrower than
/// `tol * max(1, |x|)`, followed by one Newton step (secant slope from the
/// final bracket) that is kept only if it stays inside the bracket and
/// reduces `|f|`.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, tol: f64) -> f64 {
    if a == b {
        return a;
    }
    let mut fa = f(a);
    let fb = f(b);
    if fa == 0.0 {
        return a;
    }
    if fb == 0.0 {
        return b;
    }
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if abs(b - a) <= tol * abs(m).max(1.0) || m == a || m == b {
            break;
        }
        let fm = f(m);
        if fm == 0.0 {
            return m;
        }
        if (fm < 0.0) == (fa < 0.0) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    let m = 0.5 * (a + b);
    let fm = f(m);
    let slope = (f(b) - fa) / (b - a);
    if slope.is_finite() && slope != 0.0 {
        let x = m - fm / slope;
        if x > a.min(b) && x < a.max(b) && abs(f(x)) < abs(fm) {
            return x;
        }
    }
    m
}

/// All roots of `f` on the grid brackets, polished by [`bisect`].
pub fn roots_on_grid<F: Fn(f64) -> f64>(f: F, grid: &[f64], tol: f64) -> Vec<f64> {
    let mut roots: Vec<f64> = sign_change_brackets(&f, grid)
        .into_iter()
        .map(|(a, b)| bisect(&f, a, b, tol))
        .collect();
    roots.dedup_by(|x, y| abs(*x - *y) <= tol * abs(*x).max(1.0));
    roots
}

/// Golden-section minimisation of a unimodal function on `[a, b]`.
pub fn golden_min<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let r = 0.618_033_988_749_894_9;
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..300 {
        if abs(b - a) <= tol * (abs(c) + abs(d)).max(1e-300) {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    if fc < fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bisect_finds_cubic_root() {
        let r = bisect(|x| x * x * x - 2.0, 0.0, 2.0, 1e-14);
        assert!((r - 2f64.cbrt()).abs() < 1e-13);
    }

    #[test]
    fn brackets_count_sign_changes() {
        let grid = lin_grid(-3.0, 3.0, 601);
        let roots = roots_on_grid(|x| (x - 1.0) * (x + 2.0) * (x - 2.5), &grid, 1e-13);
        assert_eq!(roots.len(), 3);
        for (r, e) in roots.iter().zip([-2.0, 1.0, 2.5]) {
            assert!((r - e).abs() < 1e-12);
        }
    }

    #[test]
    fn log_grid_endpoints() {
        let g = log_grid(1e-6, 50.0, 512);
        assert_eq!(g.len(), 512);
        assert!((g[0] - 1e-6).abs() < 1e-20);
        assert_eq!(g[511], 50.0);
    }

    #[test]
    fn golden_min_parabola() {
        let (x, v) = golden_min(|x| (x - 0.3) * (x - 0.3) + 1.0, 0.0, 1.0, 1e-10);
        assert!((x - 0.3).abs() < 1e-7);
        assert!((v - 1.0).abs() < 1e-14);
    }
}
