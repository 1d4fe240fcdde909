//! Baseline V-cycle and W-cycle geometric multigrid with Gauss-Seidel or
//! fixed-step CG smoothing.
//!
//! Coarse-level operators are re-discretizations of the compact scheme on
//! each coarse grid; transfers are 27-point full weighting and trilinear
//! interpolation. All level fields use the eliminated (zero-boundary)
//! convention, so coarse corrections carry homogeneous Dirichlet data.

use crate::error::{Error, Result};
use crate::grid::{Field3, GridHierarchy};
use crate::scalar::{real, Real};
use crate::solvers::{cg_relax, direct_solve_coarse, gauss_seidel_sweep};
use crate::stencil::residual;

/// Relaxation used inside the cycles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Smoother {
    GaussSeidel,
    /// A fixed number of CG steps, restarted on every visit.
    CgSteps,
}

/// Cycle shape: `gamma` recursive coarse visits (1 = V, 2 = W), `nu1`
/// pre- and `nu2` post-smoothing sweeps.
#[derive(Debug, Clone, Copy)]
pub struct CycleConfig<T> {
    pub gamma: u32,
    pub nu1: usize,
    pub nu2: usize,
    pub smoother: Smoother,
    /// Level index where the direct solver takes over.
    pub coarsest_level: usize,
    /// Outer relative-residual tolerance.
    pub eps: T,
    /// Cap on outer cycles.
    pub max_cycles: usize,
}

impl<T: Real> CycleConfig<T> {
    pub fn new(gamma: u32, nu1: usize, nu2: usize, smoother: Smoother, eps: T) -> Result<Self> {
        if !(gamma == 1 || gamma == 2) {
            return Err(Error::InvalidGrid(format!("cycle index must be 1 or 2, got {gamma}")));
        }
        if nu1 + nu2 == 0 {
            return Err(Error::InvalidGrid("need at least one smoothing sweep".into()));
        }
        if !(eps > T::zero()) {
            return Err(Error::InvalidGrid("tolerance must be positive".into()));
        }
        Ok(Self {
            gamma,
            nu1,
            nu2,
            smoother,
            coarsest_level: 0,
            eps,
            max_cycles: 500,
        })
    }
}

/// Outcome of [`mg_solve`].
#[derive(Debug, Clone)]
pub struct MgOutcome<T> {
    /// Finest-grid solution in the eliminated convention (zero boundary).
    pub solution: Field3<T>,
    /// Number of cycles performed.
    pub cycles: usize,
    /// Relative residual after each cycle, starting with the initial guess.
    pub residual_history: Vec<T>,
    /// Residual tolerance reached.
    pub converged: bool,
    /// The residual stopped improving at the double-precision floor before
    /// reaching the tolerance.
    pub stalled: bool,
}

/// 27-point full-weighting restriction with per-axis weights (1/4, 1/2, 1/4).
/// Coarse boundary entries are zero. Requires even fine interval counts.
pub fn restrict_full_weighting<T: Real>(fine: &Field3<T>) -> Result<Field3<T>> {
    let fg = fine.grid();
    let [fnx, fny, fnz] = fg.counts();
    if fnx % 2 != 0 || fny % 2 != 0 || fnz % 2 != 0 {
        return Err(Error::InvalidGrid(format!(
            "full weighting needs even fine counts, got {fnx}x{fny}x{fnz}"
        )));
    }
    let cg = crate::grid::Grid3::new([fnx / 2, fny / 2, fnz / 2], fg.extents())?;
    let mut coarse = Field3::zeros(cg);
    let half = real::<T>(0.5);
    let quarter = real::<T>(0.25);
    let w1 = [quarter, half, quarter];
    for ck in 1..cg.nz() {
        for cj in 1..cg.ny() {
            for ci in 1..cg.nx() {
                let (fi, fj, fk) = (2 * ci, 2 * cj, 2 * ck);
                let mut sum = T::zero();
                for (dk, wz) in w1.iter().enumerate() {
                    for (dj, wy) in w1.iter().enumerate() {
                        for (di, wx) in w1.iter().enumerate() {
                            let v = fine.at(fi + di - 1, fj + dj - 1, fk + dk - 1);
                            sum += *wx * *wy * *wz * v;
                        }
                    }
                }
                coarse.set(ci, cj, ck, sum);
            }
        }
    }
    Ok(coarse)
}

/// Trilinear interpolation to the once-refined grid. Fine boundary entries
/// are zero.
pub fn prolong_trilinear<T: Real>(coarse: &Field3<T>) -> Field3<T> {
    let cg = coarse.grid();
    let fg = cg.refined();
    let mut fine = Field3::zeros(fg);
    let half = real::<T>(0.5);
    for fk in 1..fg.nz() {
        let (ck, rk) = (fk / 2, fk % 2);
        for fj in 1..fg.ny() {
            let (cj, rj) = (fj / 2, fj % 2);
            for fi in 1..fg.nx() {
                let (ci, ri) = (fi / 2, fi % 2);
                let mut sum = T::zero();
                for dk in 0..=rk {
                    for dj in 0..=rj {
                        for di in 0..=ri {
                            sum += coarse.at(ci + di, cj + dj, ck + dk);
                        }
                    }
                }
                let mut v = sum;
                if ri == 1 {
                    v = v * half;
                }
                if rj == 1 {
                    v = v * half;
                }
                if rk == 1 {
                    v = v * half;
                }
                fine.set(fi, fj, fk, v);
            }
        }
    }
    fine
}

fn smooth<T: Real>(u: &mut Field3<T>, rhs: &Field3<T>, smoother: Smoother, sweeps: usize) {
    match smoother {
        Smoother::GaussSeidel => {
            for _ in 0..sweeps {
                gauss_seidel_sweep(u, rhs);
            }
        }
        Smoother::CgSteps => cg_relax(u, rhs, sweeps),
    }
}

/// One recursive multigrid cycle at `level` of the hierarchy, updating `u`
/// in place. `rhs` lives on the same level.
pub fn mg_cycle<T: Real>(
    hierarchy: &GridHierarchy<T>,
    level: usize,
    u: &mut Field3<T>,
    rhs: &Field3<T>,
    cfg: &CycleConfig<T>,
) -> Result<()> {
    if level <= cfg.coarsest_level {
        *u = direct_solve_coarse(rhs)?;
        return Ok(());
    }
    smooth(u, rhs, cfg.smoother, cfg.nu1);
    let r = residual(u, rhs);
    let r_coarse = restrict_full_weighting(&r)?;
    let mut e_coarse = Field3::zeros(*hierarchy.grid(level - 1));
    for _ in 0..cfg.gamma {
        mg_cycle(hierarchy, level - 1, &mut e_coarse, &r_coarse, cfg)?;
    }
    let correction = prolong_trilinear(&e_coarse);
    u.axpy_interior(T::one(), &correction);
    smooth(u, rhs, cfg.smoother, cfg.nu2);
    Ok(())
}

/// Repeats [`mg_cycle`] on the finest grid from a zero initial guess until
/// the relative residual reaches `cfg.eps`, the residual stops improving
/// (double-precision floor), or `cfg.max_cycles` is hit.
pub fn mg_solve<T: Real>(
    rhs: &Field3<T>,
    hierarchy: &GridHierarchy<T>,
    cfg: &CycleConfig<T>,
) -> Result<MgOutcome<T>> {
    let finest = hierarchy.len() - 1;
    assert_eq!(
        rhs.grid().counts(),
        hierarchy.finest().counts(),
        "rhs must live on the finest grid"
    );
    let mut u = Field3::zeros(*hierarchy.finest());
    let rhs_norm = rhs.norm2_interior();
    if rhs_norm == T::zero() {
        return Ok(MgOutcome {
            solution: u,
            cycles: 0,
            residual_history: vec![T::zero()],
            converged: true,
            stalled: false,
        });
    }

    let rel = |u: &Field3<T>| residual(u, rhs).norm2_interior() / rhs_norm;
    let mut history = vec![rel(&u)];
    if history[0] <= cfg.eps {
        return Ok(MgOutcome {
            solution: u,
            cycles: 0,
            residual_history: history,
            converged: true,
            stalled: false,
        });
    }

    let stall_ratio = real::<T>(0.9);
    let mut slow_cycles = 0;
    let mut converged = false;
    let mut stalled = false;
    let mut cycles = 0;
    while cycles < cfg.max_cycles {
        mg_cycle(hierarchy, finest, &mut u, rhs, cfg)?;
        cycles += 1;
        let now = rel(&u);
        let prev = *history.last().unwrap();
        history.push(now);
        if now <= cfg.eps {
            converged = true;
            break;
        }
        // two consecutive cycles with < 10% reduction: the computed residual
        // has hit its rounding floor and the tolerance is unattainable
        if now >= stall_ratio * prev {
            slow_cycles += 1;
            if slow_cycles >= 2 {
                stalled = true;
                break;
            }
        } else {
            slow_cycles = 0;
        }
    }

    Ok(MgOutcome {
        solution: u,
        cycles,
        residual_history: history,
        converged,
        stalled,
    })
}
