//! Damped Newton iteration with continuation for the gluing equations.

use std::sync::OnceLock;

use num_complex::Complex64;

use super::gluing::{Target, TetShapes, C64};
use super::nz::V8;
use crate::error::{Error, Result, SolveDiagnostics};
use crate::filling::{CohomologyClass, FillingData};

/// Largest number of continuation steps tried before giving up.
pub const MAX_CONTINUATION_STEPS: usize = 256;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolveOptions {
    /// Residual tolerance in the max norm.
    pub tol: f64,
    pub max_iter: usize,
    pub continuation_steps: usize,
    /// Backtracking factor of the line search.
    pub damping: f64,
    pub max_halvings: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { tol: 1e-12, max_iter: 100, continuation_steps: 16, damping: 0.5, max_halvings: 30 }
    }
}

impl SolveOptions {
    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0) {
            return Err(Error::BadOption("tolerance must be positive"));
        }
        if self.continuation_steps == 0 {
            return Err(Error::BadOption("continuation steps must be at least 1"));
        }
        if self.max_iter == 0 {
            return Err(Error::BadOption("iteration limit must be at least 1"));
        }
        if !(self.damping > 0.0 && self.damping < 1.0) {
            return Err(Error::BadOption("damping factor must lie in (0, 1)"));
        }
        Ok(())
    }
}

fn max_norm(f: &[C64; 4]) -> f64 {
    f.iter().map(|x| x.norm()).fold(0.0, f64::max)
}

/// Solve `a x = b` for a 4x4 complex system by Gaussian elimination with
/// partial pivoting. `None` when singular.
pub fn solve4(mut a: [[C64; 4]; 4], mut b: [C64; 4]) -> Option<[C64; 4]> {
    for k in 0..4 {
        let p = (k..4).max_by(|&i, &j| a[i][k].norm().total_cmp(&a[j][k].norm()))?;
        if a[p][k].norm() == 0.0 || !a[p][k].norm().is_finite() {
            return None;
        }
        a.swap(k, p);
        b.swap(k, p);
        for i in k + 1..4 {
            let m = a[i][k] / a[k][k];
            for j in k..4 {
                let t = a[k][j];
                a[i][j] -= m * t;
            }
            let t = b[k];
            b[i] -= m * t;
        }
    }
    let mut x = [C64::new(0.0, 0.0); 4];
    for k in (0..4).rev() {
        let mut s = b[k];
        for j in k + 1..4 {
            s -= a[k][j] * x[j];
        }
        x[k] = s / a[k][k];
    }
    Some(x)
}

/// Outcome of one Newton solve.
struct NewtonOutcome {
    shapes: TetShapes,
    iterations: usize,
    residual: f64,
    converged: bool,
}

/// Damped Newton from `start`; steps that leave the upper half plane or do
/// not reduce the residual are halved.
fn newton(start: TetShapes, target: &Target, s: f64, opts: &SolveOptions) -> NewtonOutcome {
    let mut z = start;
    let mut f = z.residuals(target, s);
    let mut norm = max_norm(&f);
    for it in 0..opts.max_iter {
        if norm < opts.tol {
            return NewtonOutcome { shapes: z, iterations: it, residual: norm, converged: true };
        }
        let Some(dz) = solve4(z.jacobian(target), f.map(|x| -x)) else {
            break;
        };
        let mut step = 1.0;
        let mut accepted = false;
        for _ in 0..=opts.max_halvings {
            let mut trial = z;
            for j in 0..4 {
                trial.z[j] += dz[j] * step;
            }
            if trial.is_geometric() {
                let ft = trial.residuals(target, s);
                let nt = max_norm(&ft);
                if nt.is_finite() && nt < norm {
                    z = trial;
                    f = ft;
                    norm = nt;
                    accepted = true;
                    break;
                }
            }
            step *= opts.damping;
        }
        if !accepted {
            break;
        }
    }
    let converged = norm < opts.tol;
    NewtonOutcome { shapes: z, iterations: opts.max_iter, residual: norm, converged }
}

/// Solved structure plus the work it took.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Solution {
    pub shapes: TetShapes,
    pub iterations: usize,
    pub continuation_steps: usize,
    pub residual: f64,
}

impl Solution {
    pub fn volume(&self) -> f64 {
        self.shapes.volume()
    }
}

/// Continue from `start` (a solution at `s = 0`) to `s = 1`, doubling the
/// number of steps on failure.
pub fn continuation(start: TetShapes, target: &Target, opts: &SolveOptions) -> Result<Solution> {
    opts.validate()?;
    let mut steps = opts.continuation_steps;
    let mut last = SolveDiagnostics {
        stage: "continuation",
        iterations: 0,
        continuation_steps: steps,
        residual_norm: f64::NAN,
        min_imag: start.min_imag(),
    };
    while steps <= MAX_CONTINUATION_STEPS.max(opts.continuation_steps) {
        let mut z = start;
        let mut total = 0;
        let mut ok = true;
        let mut residual = 0.0;
        for k in 1..=steps {
            let s = k as f64 / steps as f64;
            let out = newton(z, target, s, opts);
            total += out.iterations;
            z = out.shapes;
            residual = out.residual;
            if !out.converged {
                ok = false;
                last = SolveDiagnostics {
                    stage: "continuation",
                    iterations: total,
                    continuation_steps: steps,
                    residual_norm: out.residual,
                    min_imag: z.min_imag(),
                };
                break;
            }
        }
        if ok {
            return Ok(Solution { shapes: z, iterations: total, continuation_steps: steps, residual });
        }
        steps *= 2;
    }
    Err(Error::Divergence(last))
}

/// Structure with `u_1 = u_2 = 0`, found by Newton from `0.5 + 0.5i` with a
/// grid of fallback starts, and accepted only at the volume of W.
pub fn solve_complete(opts: &SolveOptions) -> Result<Solution> {
    opts.validate()?;
    let target = Target::Cusp([C64::new(0.0, 0.0); 2]);
    let mut starts = vec![C64::new(0.5, 0.5)];
    for re in [0.3, 0.5, 0.7] {
        for im in [0.4, 0.8, 1.2] {
            starts.push(C64::new(re, im));
        }
    }
    let mut last = None;
    for w in starts {
        let out = newton(TetShapes::new([w; 4]), &target, 0.0, opts);
        let diag = SolveDiagnostics {
            stage: "complete structure",
            iterations: out.iterations,
            continuation_steps: 0,
            residual_norm: out.residual,
            min_imag: out.shapes.min_imag(),
        };
        if out.converged && out.shapes.is_geometric() && (out.shapes.volume() - V8).abs() < 1e-9 {
            return Ok(Solution {
                shapes: out.shapes,
                iterations: out.iterations,
                continuation_steps: 0,
                residual: out.residual,
            });
        }
        last = Some(diag);
    }
    Err(Error::NoGeometricSolution(last.expect("at least one start")))
}

/// Complete structure at default options, computed once.
pub fn complete_structure() -> Result<TetShapes> {
    static CELL: OnceLock<Result<TetShapes>> = OnceLock::new();
    CELL.get_or_init(|| solve_complete(&SolveOptions::default()).map(|s| s.shapes)).clone()
}

/// Hyperbolic structure on the filling of `phi`.
pub fn solve_filled(phi: &CohomologyClass, opts: &SolveOptions) -> Result<Solution> {
    phi.require_hyperbolic()?;
    let pairs = phi.filling().primitive_pairs();
    continuation(complete_structure()?, &Target::Filling(pairs), opts)
}

/// Filling of an arbitrary primitive class given in any chamber of the
/// norm ball; its slopes are used as given, without reduction.
pub fn solve_filled_raw(a: i64, b: i64, opts: &SolveOptions) -> Result<Solution> {
    let (phi, _) = CohomologyClass::reduce(a, b)?;
    phi.require_hyperbolic()?;
    let pairs = FillingData::from_raw(a, b).primitive_pairs();
    continuation(complete_structure()?, &Target::Filling(pairs), opts)
}

/// Incomplete structure with prescribed meridian holonomies.
pub fn solve_for_u(u: [Complex64; 2], opts: &SolveOptions) -> Result<Solution> {
    continuation(complete_structure()?, &Target::Cusp(u), opts)
}
