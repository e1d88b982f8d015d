//! Dual QP solver for linear-kernel SVMs.
//!
//! Solves
//!
//! ```text
//! min  ½ αᵀQα + pᵀα   s.t.  yᵀα = 0,  0 ≤ α ≤ C,   y ∈ {±1}ˡ
//! ```
//!
//! with `Q[i][j] = y_i y_j K[b(i)][b(j)]`, where `b` maps a variable to its
//! sample. Working pairs are chosen by second-order selection (as in
//! LIBSVM, without shrinking); the loop stops once the maximal violating
//! pair's gap drops below `tol`. Classification uses `b(i) = i`; regression
//! doubles the variables so that `b(i) = i mod n`.

use ndarray::Array2;

const TAU: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub alpha: Vec<f64>,
    /// Offset such that the decision value is `Σ y_i α_i K(x_i, x) − rho`.
    pub rho: f64,
    /// Dual objective `½ αᵀQα + pᵀα`.
    pub objective: f64,
    /// Final maximal-violation gap; `< tol` unless the iteration cap was hit.
    pub gap: f64,
    pub iterations: usize,
}

struct Problem<'a> {
    k: &'a Array2<f64>,
    y: Vec<f64>,
    p: Vec<f64>,
    n: usize,
    c: f64,
}

impl Problem<'_> {
    fn q(&self, i: usize, j: usize) -> f64 {
        self.y[i] * self.y[j] * self.k[[i % self.n, j % self.n]]
    }

    fn len(&self) -> usize {
        self.y.len()
    }
}

fn solve(prob: Problem<'_>, tol: f64) -> Solution {
    let l = prob.len();
    let c = prob.c;
    let mut alpha = vec![0.0; l];
    let mut grad = prob.p.clone();
    let qd: Vec<f64> = (0..l).map(|i| prob.q(i, i)).collect();
    let max_iter = 10_000_000usize.max(100 * l);
    let mut iterations = 0;
    let mut gap;
    let y = &prob.y;
    loop {
        // i: maximal violator in the "up" set.
        let mut gmax = f64::NEG_INFINITY;
        let mut i = usize::MAX;
        for t in 0..l {
            let v = if y[t] > 0.0 {
                (alpha[t] < c).then(|| -grad[t])
            } else {
                (alpha[t] > 0.0).then_some(grad[t])
            };
            if let Some(v) = v {
                if v >= gmax {
                    gmax = v;
                    i = t;
                }
            }
        }
        // j: second-order choice from the "low" set.
        let mut gmax2 = f64::NEG_INFINITY;
        let mut j = usize::MAX;
        let mut best = f64::INFINITY;
        for t in 0..l {
            let (in_low, v) = if y[t] > 0.0 {
                (alpha[t] > 0.0, grad[t])
            } else {
                (alpha[t] < c, -grad[t])
            };
            if !in_low {
                continue;
            }
            gmax2 = gmax2.max(v);
            if i == usize::MAX {
                continue;
            }
            let diff = gmax + v;
            if diff > 0.0 {
                let sign = if y[t] > 0.0 { -2.0 } else { 2.0 };
                let mut quad = qd[i] + qd[t] + sign * y[i] * prob.q(i, t);
                if quad <= 0.0 {
                    quad = TAU;
                }
                let obj = -(diff * diff) / quad;
                if obj <= best {
                    best = obj;
                    j = t;
                }
            }
        }
        gap = gmax + gmax2;
        if gap < tol || i == usize::MAX || j == usize::MAX || iterations >= max_iter {
            break;
        }
        iterations += 1;

        let (old_i, old_j) = (alpha[i], alpha[j]);
        let qij = prob.q(i, j);
        if y[i] != y[j] {
            let mut quad = qd[i] + qd[j] + 2.0 * qij;
            if quad <= 0.0 {
                quad = TAU;
            }
            let delta = (-grad[i] - grad[j]) / quad;
            let diff = alpha[i] - alpha[j];
            alpha[i] += delta;
            alpha[j] += delta;
            if diff > 0.0 {
                if alpha[j] < 0.0 {
                    alpha[j] = 0.0;
                    alpha[i] = diff;
                }
            } else if alpha[i] < 0.0 {
                alpha[i] = 0.0;
                alpha[j] = -diff;
            }
            if diff > 0.0 {
                if alpha[i] > c {
                    alpha[i] = c;
                    alpha[j] = c - diff;
                }
            } else if alpha[j] > c {
                alpha[j] = c;
                alpha[i] = c + diff;
            }
        } else {
            let mut quad = qd[i] + qd[j] - 2.0 * qij;
            if quad <= 0.0 {
                quad = TAU;
            }
            let delta = (grad[i] - grad[j]) / quad;
            let sum = alpha[i] + alpha[j];
            alpha[i] -= delta;
            alpha[j] += delta;
            if sum > c {
                if alpha[i] > c {
                    alpha[i] = c;
                    alpha[j] = sum - c;
                }
            } else if alpha[j] < 0.0 {
                alpha[j] = 0.0;
                alpha[i] = sum;
            }
            if sum > c {
                if alpha[j] > c {
                    alpha[j] = c;
                    alpha[i] = sum - c;
                }
            } else if alpha[i] < 0.0 {
                alpha[i] = 0.0;
                alpha[j] = sum;
            }
        }
        let (di, dj) = (alpha[i] - old_i, alpha[j] - old_j);
        for (t, g) in grad.iter_mut().enumerate() {
            *g += prob.q(t, i) * di + prob.q(t, j) * dj;
        }
    }

    let rho = {
        let (mut ub, mut lb) = (f64::INFINITY, f64::NEG_INFINITY);
        let (mut sum, mut free) = (0.0, 0usize);
        for t in 0..l {
            let yg = y[t] * grad[t];
            let upper = alpha[t] >= c;
            let lower = alpha[t] <= 0.0;
            if (upper && y[t] < 0.0) || (lower && y[t] > 0.0) {
                ub = ub.min(yg);
            } else if upper || lower {
                lb = lb.max(yg);
            } else {
                free += 1;
                sum += yg;
            }
        }
        if free > 0 {
            sum / free as f64
        } else {
            (ub + lb) / 2.0
        }
    };
    let objective = (0..l).map(|t| alpha[t] * (grad[t] + prob.p[t])).sum::<f64>() / 2.0;
    Solution { alpha, rho, objective, gap, iterations }
}

/// Binary soft-margin SVM on Gram matrix `k` with labels `y ∈ {±1}`.
pub fn solve_svc(k: &Array2<f64>, y: &[f64], c: f64, tol: f64) -> Solution {
    solve(
        Problem { k, y: y.to_vec(), p: vec![-1.0; y.len()], n: y.len(), c },
        tol,
    )
}

/// Epsilon-insensitive regression on Gram matrix `k` with targets `z`.
///
/// Variables `0..n` are the α of the upper tube and `n..2n` the α* of the
/// lower one; a sample's coefficient is `α_i − α*_i`.
pub fn solve_svr(k: &Array2<f64>, z: &[f64], c: f64, epsilon: f64, tol: f64) -> Solution {
    let n = z.len();
    let mut y = vec![1.0; n];
    y.extend(std::iter::repeat_n(-1.0, n));
    let mut p: Vec<f64> = z.iter().map(|t| epsilon - t).collect();
    p.extend(z.iter().map(|t| epsilon + t));
    solve(Problem { k, y, p, n, c }, tol)
}

/// Largest violation of the optimality conditions at `alpha`, recomputed
/// from scratch: the gap between the most violating "up" and "low"
/// variables, or 0 at an exact optimum. Also fails (returns infinity) if a
/// variable leaves the box or the equality constraint is broken by more
/// than `1e-9`.
pub fn kkt_violation(k: &Array2<f64>, y: &[f64], p: &[f64], c: f64, alpha: &[f64]) -> f64 {
    let l = y.len();
    let n = k.nrows();
    let q = |i: usize, j: usize| y[i] * y[j] * k[[i % n, j % n]];
    if alpha.iter().any(|&a| !(-1e-12..=c + 1e-12).contains(&a)) {
        return f64::INFINITY;
    }
    let balance: f64 = alpha.iter().zip(y).map(|(a, y)| a * y).sum();
    if balance.abs() > 1e-9 {
        return f64::INFINITY;
    }
    let grad: Vec<f64> = (0..l)
        .map(|i| (0..l).map(|j| q(i, j) * alpha[j]).sum::<f64>() + p[i])
        .collect();
    let (mut up, mut low) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    for t in 0..l {
        let v = -y[t] * grad[t];
        let in_up = if y[t] > 0.0 { alpha[t] < c } else { alpha[t] > 0.0 };
        let in_low = if y[t] > 0.0 { alpha[t] > 0.0 } else { alpha[t] < c };
        if in_up {
            up = up.max(v);
        }
        if in_low {
            low = low.max(-v);
        }
    }
    (up + low).max(0.0)
}

/// Linear weights `Σ coef_i x_i` from per-sample dual coefficients.
pub fn primal_weights(x: &Array2<f64>, coef: &[f64]) -> Vec<f64> {
    let mut w = vec![0.0; x.ncols()];
    for (i, &a) in coef.iter().enumerate() {
        if a != 0.0 {
            for (wj, xj) in w.iter_mut().zip(x.row(i)) {
                *wj += a * xj;
            }
        }
    }
    w
}
