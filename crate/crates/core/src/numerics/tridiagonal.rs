//! Real symmetric tridiagonal eigenproblems: Sturm-sequence bisection for
//! selected eigenvalues and inverse iteration for their eigenvectors.

/// Symmetric tridiagonal matrix given by its diagonal and off-diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiagonal {
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
}

impl SymTridiagonal {
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Self {
        assert!(!diag.is_empty(), "empty tridiagonal matrix");
        assert_eq!(off.len() + 1, diag.len(), "off-diagonal length");
        Self { diag, off }
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    /// Gershgorin interval containing the spectrum.
    fn bounds(&self) -> (f64, f64) {
        let n = self.dim();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let r = if i > 0 { self.off[i - 1].abs() } else { 0.0 }
                + if i + 1 < n { self.off[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - r);
            hi = hi.max(self.diag[i] + r);
        }
        (lo, hi)
    }

    fn norm_bound(&self) -> f64 {
        let (lo, hi) = self.bounds();
        lo.abs().max(hi.abs()).max(f64::MIN_POSITIVE)
    }

    /// Number of eigenvalues strictly below `x`.
    pub fn count_below(&self, x: f64) -> usize {
        let pivmin = f64::EPSILON * self.norm_bound() * 1e-3;
        let mut count = 0;
        let mut q = self.diag[0] - x;
        for i in 0.. {
            if q.abs() < pivmin {
                q = -pivmin;
            }
            if q < 0.0 {
                count += 1;
            }
            if i + 1 == self.dim() {
                break;
            }
            q = (self.diag[i + 1] - x) - self.off[i] * self.off[i] / q;
        }
        count
    }

    /// The `k`-th smallest eigenvalue (0-based), bisected to machine precision.
    pub fn eigenvalue(&self, k: usize) -> f64 {
        assert!(k < self.dim());
        let (mut lo, mut hi) = self.bounds();
        let pad = f64::EPSILON * self.norm_bound() * 4.0;
        lo -= pad;
        hi += pad;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.count_below(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// Unit eigenvector for an eigenvalue obtained from [`Self::eigenvalue`],
    /// signed so its largest-magnitude entry is positive.
    pub fn eigenvector(&self, lambda: f64) -> Vec<f64> {
        let n = self.dim();
        if n == 1 {
            return vec![1.0];
        }
        let shifted: Vec<f64> = self.diag.iter().map(|d| d - lambda).collect();
        let mut x: Vec<f64> = (0..n).map(|i| 1.0 + 0.1 * (i as f64 * 0.7).sin()).collect();
        for _ in 0..3 {
            solve_pivoted(&self.off, &shifted, &self.off, &mut x, self.norm_bound());
            let nrm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
            for v in &mut x {
                *v /= nrm;
            }
        }
        let lead = x.iter().copied().fold(0.0f64, |a, b| if b.abs() > a.abs() { b } else { a });
        if lead < 0.0 {
            for v in &mut x {
                *v = -*v;
            }
        }
        x
    }

    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        let n = self.dim();
        (0..n)
            .map(|i| {
                let mut s = self.diag[i] * v[i];
                if i > 0 {
                    s += self.off[i - 1] * v[i - 1];
                }
                if i + 1 < n {
                    s += self.off[i] * v[i + 1];
                }
                s
            })
            .collect()
    }
}

/// Gaussian elimination with partial pivoting on a tridiagonal system; the
/// solution overwrites `rhs`. Zero pivots are replaced by a tiny value so a
/// singular shift still yields the inverse-iteration direction.
fn solve_pivoted(lower: &[f64], diag: &[f64], upper: &[f64], rhs: &mut [f64], scale: f64) {
    let n = diag.len();
    let tiny = f64::EPSILON * scale * 1e-3;
    let dl = lower;
    let mut d = diag.to_vec();
    let mut du = upper.to_vec();
    let mut du2 = vec![0.0; n.saturating_sub(2)];
    for i in 0..n - 1 {
        if d[i].abs() >= dl[i].abs() {
            if d[i] == 0.0 {
                d[i] = tiny;
            }
            let fact = dl[i] / d[i];
            d[i + 1] -= fact * du[i];
            rhs[i + 1] -= fact * rhs[i];
        } else {
            let fact = d[i] / dl[i];
            d[i] = dl[i];
            let old_du = du[i];
            du[i] = d[i + 1];
            d[i + 1] = old_du - fact * d[i + 1];
            if i + 2 < n {
                du2[i] = du[i + 1];
                du[i + 1] *= -fact;
            }
            rhs.swap(i, i + 1);
            rhs[i + 1] -= fact * rhs[i];
        }
    }
    if d[n - 1] == 0.0 {
        d[n - 1] = tiny;
    }
    rhs[n - 1] /= d[n - 1];
    if n >= 2 {
        rhs[n - 2] = (rhs[n - 2] - du[n - 2] * rhs[n - 1]) / d[n - 2];
    }
    for i in (0..n.saturating_sub(2)).rev() {
        rhs[i] = (rhs[i] - du[i] * rhs[i + 1] - du2[i] * rhs[i + 2]) / d[i];
    }
}
