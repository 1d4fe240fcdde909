//! The extrapolation cascadic driver: Richardson-type extrapolation of two
//! previous-level solutions, tri-quartic interpolation of the 125-node
//! cells, the fifth-order initial guess, and the sixth-order enhanced
//! solution.
//!
//! Terminology for one cascade step: the target grid has mesh `h`, the
//! current solution lives on the `2h` grid and the previous one on the `4h`
//! grid. An interpolation cell is a 2x2x2 block of `4h` elements: a 9x9x9
//! block of `h` nodes whose 125 `2h`-grid nodes are the interpolation
//! sources and whose remaining 604 nodes are the targets.

use std::time::Instant;

use crate::error::{Error, Result};
use crate::grid::{Field3, Grid3, GridHierarchy};
use crate::problems::Problem;
use crate::scalar::{real, Real};
use crate::solvers::{cg_solve, default_max_iters, direct_solve_coarse};
use crate::stencil::{assemble_rhs, residual};

/// Extrapolation toward the next finer grid's discrete solution at a node
/// both coarse grids share: `(17 u_2h - u_4h) / 16`.
#[inline]
pub fn extrapolate_corner<T: Real>(u_mid: T, u_coarse: T) -> T {
    (real::<T>(17.0) * u_mid - u_coarse) / real::<T>(16.0)
}

/// Midpoint extrapolation toward the next finer grid's discrete solution.
/// `m` is the `2h` value at the midpoint of two `4h` nodes `a`, `b` (along
/// an axis, a face diagonal, or a space diagonal); `endpoints` packs
/// `(u_2h(a), u_4h(a), u_2h(b), u_4h(b))`.
#[inline]
pub fn extrapolate_midpoint<T: Real>(m: T, endpoints: [T; 4]) -> T {
    let [a2, a4, b2, b4] = endpoints;
    m + ((a2 - a4) + (b2 - b4)) / real::<T>(32.0)
}

/// Per-axis quartic Lagrange weights on the 5-node cell line, tabulated at
/// the 9 fine positions `xi = 0, 1/2, ..., 4` (in `2h` units). Even
/// positions coincide with sources and carry indicator rows.
fn quartic_line_weights<T: Real>() -> [[T; 5]; 9] {
    let mut rows = [[T::zero(); 5]; 9];
    for (alpha, row) in rows.iter_mut().enumerate() {
        if alpha % 2 == 0 {
            row[alpha / 2] = T::one();
            continue;
        }
        let xi = 0.5 * alpha as f64;
        for (p, w) in row.iter_mut().enumerate() {
            let mut v = 1.0;
            for q in 0..5 {
                if q != p {
                    v *= (xi - q as f64) / (p as f64 - q as f64);
                }
            }
            *w = real(v);
        }
    }
    rows
}

/// The precomputed 604x125 interpolation matrix applied on every cell.
pub struct TriquarticTable<T> {
    /// Row-major weights, one row of 125 per target.
    weights: Vec<T>,
    /// Cell-local fine coordinates of the 604 targets.
    targets: Vec<[usize; 3]>,
}

impl<T: Real> TriquarticTable<T> {
    pub fn new() -> Self {
        let line = quartic_line_weights::<T>();
        Self::validate_quarter_rows(&line);

        let mut targets = Vec::with_capacity(604);
        let mut weights = Vec::with_capacity(604 * 125);
        for gamma in 0..9 {
            for beta in 0..9 {
                for alpha in 0..9 {
                    if alpha % 2 == 0 && beta % 2 == 0 && gamma % 2 == 0 {
                        continue; // a source node
                    }
                    targets.push([alpha, beta, gamma]);
                    for r in 0..5 {
                        for q in 0..5 {
                            for p in 0..5 {
                                weights.push(line[alpha][p] * line[beta][q] * line[gamma][r]);
                            }
                        }
                    }
                }
            }
        }
        assert_eq!(targets.len(), 604);
        Self { weights, targets }
    }

    /// The four quarter-point weight rows are fixed rationals; check them
    /// once at construction. Note the published forms of the last two rows
    /// have their labels exchanged; the assignment below is the one the
    /// Lagrange polynomials produce (it reproduces xi itself).
    fn validate_quarter_rows(line: &[[T; 5]; 9]) {
        let want: [[f64; 5]; 4] = [
            [35.0, 140.0, -70.0, 28.0, -5.0],
            [-5.0, 60.0, 90.0, -20.0, 3.0],
            [3.0, -20.0, 90.0, 60.0, -5.0],
            [-5.0, 28.0, -70.0, 140.0, 35.0],
        ];
        for (row, alpha) in [1usize, 3, 5, 7].iter().enumerate() {
            let mut sum = T::zero();
            for p in 0..5 {
                let expect = real::<T>(want[row][p] / 128.0);
                assert!(
                    (line[*alpha][p] - expect).abs() <= real(1e-15),
                    "quarter-point weight mismatch at alpha={alpha}, p={p}"
                );
                sum += line[*alpha][p];
            }
            assert!((sum - T::one()).abs() <= real(1e-14), "weight row must sum to 1");
        }
    }

    /// Cell-local fine coordinates of the targets, in the same order the
    /// rows of the table are stored.
    pub fn targets(&self) -> &[[usize; 3]] {
        &self.targets
    }

    /// Applies the interpolation matrix to one cell's 125 source values
    /// (x-fastest over the 5x5x5 block). `out` receives the 604 targets.
    pub fn fill(&self, sources: &[T; 125], out: &mut [T]) {
        assert_eq!(out.len(), 604);
        for (t, o) in out.iter_mut().enumerate() {
            let row = &self.weights[t * 125..(t + 1) * 125];
            let mut acc = T::zero();
            for (w, s) in row.iter().zip(sources.iter()) {
                acc += *w * *s;
            }
            *o = acc;
        }
    }
}

impl<T: Real> Default for TriquarticTable<T> {
    fn default() -> Self {
        Self::new()
    }
}

fn require_nested<T: Real>(fine: &Grid3<T>, coarse: &Grid3<T>, what: &str) -> Result<()> {
    let [fx, fy, fz] = fine.counts();
    let [cx, cy, cz] = coarse.counts();
    if fx != 2 * cx || fy != 2 * cy || fz != 2 * cz {
        return Err(Error::GridMismatch(format!(
            "{what}: {fx}x{fy}x{fz} is not the doubling of {cx}x{cy}x{cz}"
        )));
    }
    Ok(())
}

/// Extrapolated values toward the next finer grid's discrete solution at
/// every node of the `2h` grid: corner formula at `4h`-coincident nodes,
/// midpoint formula along the containing axis at edge midpoints, and two-
/// and four-diagonal means at face centers and element centers.
fn extrapolate_to_mid_nodes<T: Real>(u_mid: &Field3<T>, u_coarse: &Field3<T>) -> Field3<T> {
    let grid = *u_mid.grid();
    let [nx, ny, nz] = grid.counts();
    let mut w = Field3::zeros(grid);
    // difference u_2h - u_4h at a 4h-coincident node (even indices)
    let d = |i: usize, j: usize, k: usize| -> T {
        u_mid.at(i, j, k) - u_coarse.at(i / 2, j / 2, k / 2)
    };
    for k in 0..=nz {
        let ok = k % 2;
        for j in 0..=ny {
            let oj = j % 2;
            for i in 0..=nx {
                let oi = i % 2;
                let center = u_mid.at(i, j, k);
                let v = match oi + oj + ok {
                    0 => extrapolate_corner(center, u_coarse.at(i / 2, j / 2, k / 2)),
                    1 => {
                        let (di, dj, dk) = (oi, oj, ok);
                        let sum = d(i - di, j - dj, k - dk) + d(i + di, j + dj, k + dk);
                        center + sum / real::<T>(32.0)
                    }
                    2 => {
                        // means of the two face-diagonal midpoint formulas
                        let (e1, e2) = if oi == 0 {
                            ([0, 1, 1], [0, 1, -1])
                        } else if oj == 0 {
                            ([1, 0, 1], [1, 0, -1])
                        } else {
                            ([1, 1, 0], [1, -1, 0])
                        };
                        let mut sum = T::zero();
                        for e in [e1, e2] {
                            let (ia, ja, ka) = offset(i, j, k, e, -1);
                            let (ib, jb, kb) = offset(i, j, k, e, 1);
                            sum += d(ia, ja, ka) + d(ib, jb, kb);
                        }
                        center + sum / real::<T>(64.0)
                    }
                    _ => {
                        // means of the four space-diagonal midpoint formulas
                        let mut sum = T::zero();
                        for e in [[1, 1, 1], [1, 1, -1], [1, -1, 1], [1, -1, -1]] {
                            let (ia, ja, ka) = offset(i, j, k, e, -1);
                            let (ib, jb, kb) = offset(i, j, k, e, 1);
                            sum += d(ia, ja, ka) + d(ib, jb, kb);
                        }
                        center + sum / real::<T>(128.0)
                    }
                };
                w.set(i, j, k, v);
            }
        }
    }
    w
}

#[inline]
fn offset(i: usize, j: usize, k: usize, e: [i32; 3], sign: i32) -> (usize, usize, usize) {
    (
        (i as i32 + sign * e[0]) as usize,
        (j as i32 + sign * e[1]) as usize,
        (k as i32 + sign * e[2]) as usize,
    )
}

/// Builds the fifth-order initial guess on `fine_grid` from the solutions
/// on the two previous grids: extrapolation at the 125 cell sources,
/// tri-quartic interpolation at the 604 remaining nodes per cell, and exact
/// Dirichlet data `g` on the boundary.
pub fn build_initial_guess<T: Real>(
    u_mid: &Field3<T>,
    u_coarse: &Field3<T>,
    fine_grid: &Grid3<T>,
    g: impl Fn(T, T, T) -> T,
) -> Result<Field3<T>> {
    let table = TriquarticTable::new();
    build_initial_guess_with(u_mid, u_coarse, fine_grid, g, &table)
}

/// [`build_initial_guess`] with a caller-provided interpolation table (the
/// table does not depend on the level, so the driver builds it once).
pub fn build_initial_guess_with<T: Real>(
    u_mid: &Field3<T>,
    u_coarse: &Field3<T>,
    fine_grid: &Grid3<T>,
    g: impl Fn(T, T, T) -> T,
    table: &TriquarticTable<T>,
) -> Result<Field3<T>> {
    require_nested(u_mid.grid(), u_coarse.grid(), "initial guess")?;
    require_nested(fine_grid, u_mid.grid(), "initial guess")?;
    let [cx, cy, cz] = u_coarse.grid().counts();
    if cx % 2 != 0 || cy % 2 != 0 || cz % 2 != 0 {
        return Err(Error::InvalidGrid(format!(
            "interpolation cells need even counts on the coarsest grid, got {cx}x{cy}x{cz}"
        )));
    }

    let mid_values = extrapolate_to_mid_nodes(u_mid, u_coarse);
    let mut w = Field3::zeros(*fine_grid);

    // extrapolated values transfer directly to the 2h-coincident fine nodes
    let [mx, my, mz] = mid_values.grid().counts();
    for k in 0..=mz {
        for j in 0..=my {
            for i in 0..=mx {
                w.set(2 * i, 2 * j, 2 * k, mid_values.at(i, j, k));
            }
        }
    }

    // per-cell dense interpolation for the remaining nodes
    let mut sources = [T::zero(); 125];
    let mut filled = vec![T::zero(); 604];
    for ck in 0..cz / 2 {
        for cj in 0..cy / 2 {
            for ci in 0..cx / 2 {
                let (bi, bj, bk) = (4 * ci, 4 * cj, 4 * ck); // 2h-grid cell origin
                let mut m = 0;
                for r in 0..5 {
                    for q in 0..5 {
                        for p in 0..5 {
                            sources[m] = mid_values.at(bi + p, bj + q, bk + r);
                            m += 1;
                        }
                    }
                }
                table.fill(&sources, &mut filled);
                let (fi, fj, fk) = (8 * ci, 8 * cj, 8 * ck);
                for (t, v) in table.targets().iter().zip(filled.iter()) {
                    w.set(fi + t[0], fj + t[1], fk + t[2], *v);
                }
            }
        }
    }

    w.apply_dirichlet(g);
    Ok(w)
}

/// Sixth-order enhancement of the fine solution from two nested solutions:
/// Richardson extrapolation `(16 u_h - u_2h)/15` at `2h`-coincident nodes
/// and the midpoint formula (with diagonal means at face and cell centers)
/// everywhere else; boundary taken from `g` exactly.
pub fn richardson_true<T: Real>(
    u_fine: &Field3<T>,
    u_mid: &Field3<T>,
    g: impl Fn(T, T, T) -> T,
) -> Result<Field3<T>> {
    require_nested(u_fine.grid(), u_mid.grid(), "enhancement")?;
    let grid = *u_fine.grid();
    let [nx, ny, nz] = grid.counts();
    let mut enhanced = Field3::zeros(grid);
    let d = |i: usize, j: usize, k: usize| -> T {
        u_fine.at(i, j, k) - u_mid.at(i / 2, j / 2, k / 2)
    };
    let sixteen = real::<T>(16.0);
    let fifteen = real::<T>(15.0);
    for k in 0..=nz {
        let ok = k % 2;
        for j in 0..=ny {
            let oj = j % 2;
            for i in 0..=nx {
                let oi = i % 2;
                let center = u_fine.at(i, j, k);
                let v = match oi + oj + ok {
                    0 => (sixteen * center - u_mid.at(i / 2, j / 2, k / 2)) / fifteen,
                    1 => {
                        let sum = d(i - oi, j - oj, k - ok) + d(i + oi, j + oj, k + ok);
                        center + sum / real::<T>(30.0)
                    }
                    2 => {
                        let (e1, e2) = if oi == 0 {
                            ([0, 1, 1], [0, 1, -1])
                        } else if oj == 0 {
                            ([1, 0, 1], [1, 0, -1])
                        } else {
                            ([1, 1, 0], [1, -1, 0])
                        };
                        let mut sum = T::zero();
                        for e in [e1, e2] {
                            let (ia, ja, ka) = offset(i, j, k, e, -1);
                            let (ib, jb, kb) = offset(i, j, k, e, 1);
                            sum += d(ia, ja, ka) + d(ib, jb, kb);
                        }
                        center + sum / real::<T>(60.0)
                    }
                    _ => {
                        let mut sum = T::zero();
                        for e in [[1, 1, 1], [1, 1, -1], [1, -1, 1], [1, -1, -1]] {
                            let (ia, ja, ka) = offset(i, j, k, e, -1);
                            let (ib, jb, kb) = offset(i, j, k, e, 1);
                            sum += d(ia, ja, ka) + d(ib, jb, kb);
                        }
                        center + sum / real::<T>(120.0)
                    }
                };
                enhanced.set(i, j, k, v);
            }
        }
    }
    enhanced.apply_dirichlet(g);
    Ok(enhanced)
}

/// Tolerances and options for the cascadic driver.
#[derive(Debug, Clone, Copy)]
pub struct ExcmgConfig<T> {
    /// Relative-residual tolerance used on every CG level.
    pub eps: T,
    /// Compute the sixth-order enhanced solution per level.
    pub enhance: bool,
    /// Per-level CG iteration cap; default is ten times the largest
    /// interval count of the level.
    pub max_iters: Option<usize>,
}

impl<T: Real> ExcmgConfig<T> {
    pub fn new(eps: T) -> Result<Self> {
        if !(eps > T::zero()) {
            return Err(Error::InvalidGrid("tolerance must be positive".into()));
        }
        Ok(Self {
            eps,
            enhance: true,
            max_iters: None,
        })
    }
}

/// Per-level record produced by [`excmg_solve`].
#[derive(Debug, Clone)]
pub struct LevelOutcome<T> {
    pub level: usize,
    /// Converged solution with physical boundary values.
    pub solution: Field3<T>,
    /// Fifth-order initial guess (levels 2 and up).
    pub initial_guess: Option<Field3<T>>,
    /// Sixth-order enhanced solution (levels 2 and up, when enabled).
    pub enhanced: Option<Field3<T>>,
    /// CG iterations (zero on the direct-solve levels).
    pub iterations: usize,
    /// Relative residuals, one entry per iteration plus the initial guess.
    pub residual_history: Vec<T>,
    /// Wall time of the solve phase.
    pub solve_seconds: f64,
    /// Wall time spent constructing the initial guess.
    pub guess_seconds: f64,
}

/// Runs the cascadic solver over the hierarchy: direct solves on the two
/// coarsest grids, then per level the fifth-order initial guess, CG to the
/// relative-residual tolerance, and optionally the sixth-order enhancement.
pub fn excmg_solve<T: Real>(
    problem: &Problem<T>,
    hierarchy: &GridHierarchy<T>,
    cfg: &ExcmgConfig<T>,
) -> Result<Vec<LevelOutcome<T>>> {
    if !(cfg.eps > T::zero()) {
        return Err(Error::InvalidGrid("tolerance must be positive".into()));
    }
    let table = TriquarticTable::new();
    let g = problem.boundary;
    let mut outcomes: Vec<LevelOutcome<T>> = Vec::with_capacity(hierarchy.len());

    for (level, grid) in hierarchy.grids().iter().enumerate() {
        let f = Field3::sample(*grid, problem.forcing)?;
        let rhs = assemble_rhs(&f, g);

        let mut guess_seconds = 0.0;
        let mut initial_guess = None;

        let start = Instant::now();
        let (mut solution, iterations, residual_history) = if level <= 1 {
            let u = direct_solve_coarse(&rhs)?;
            let rhs_norm = rhs.norm2_interior();
            let rel = if rhs_norm == T::zero() {
                T::zero()
            } else {
                residual(&u, &rhs).norm2_interior() / rhs_norm
            };
            (u, 0, vec![rel])
        } else {
            let guess_start = Instant::now();
            let w = build_initial_guess_with(
                &outcomes[level - 1].solution,
                &outcomes[level - 2].solution,
                grid,
                g,
                &table,
            )?;
            guess_seconds = guess_start.elapsed().as_secs_f64();

            let mut u0 = w.clone();
            u0.zero_boundary();
            initial_guess = Some(w);

            let max_iters = cfg.max_iters.unwrap_or_else(|| default_max_iters(grid));
            let out = cg_solve(&rhs, &u0, cfg.eps, max_iters);
            if !out.converged {
                return Err(Error::NoConvergence {
                    what: "cascadic CG level",
                    iterations: out.iterations,
                    relative_residual: out
                        .residual_history
                        .last()
                        .and_then(|r| r.to_f64())
                        .unwrap_or(f64::NAN),
                });
            }
            (out.solution, out.iterations, out.residual_history)
        };
        let solve_seconds = start.elapsed().as_secs_f64() - guess_seconds;

        solution.apply_dirichlet(g);

        let enhanced = if cfg.enhance && level >= 2 {
            Some(richardson_true(
                &solution,
                &outcomes[level - 1].solution,
                g,
            )?)
        } else {
            None
        };

        outcomes.push(LevelOutcome {
            level,
            solution,
            initial_guess,
            enhanced,
            iterations,
            residual_history,
            solve_seconds,
            guess_seconds,
        });
    }

    Ok(outcomes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Grid3;

    #[test]
    fn corner_formula() {
        assert_eq!(extrapolate_corner(3.0, 3.0), 3.0);
        assert_eq!(extrapolate_corner(1.0, 0.0), 17.0 / 16.0);
        // two-term error model e(h) = h^4 with exact solution 0 and h0 = 1:
        // u_4h = 1, u_2h = 1/16; the combination lands on the h0/4 value.
        let w = extrapolate_corner(1.0 / 16.0, 1.0);
        assert!((w - 1.0 / 256.0).abs() < 1e-16);
    }

    #[test]
    fn midpoint_formula() {
        assert_eq!(extrapolate_midpoint(2.0, [2.0, 2.0, 2.0, 2.0]), 2.0);
        assert_eq!(extrapolate_midpoint(1.0, [0.0, 0.0, 0.0, 0.0]), 1.0);
        // same error model at a midpoint: endpoints contribute 1/16 - 1 each
        let w = extrapolate_midpoint(1.0 / 16.0, [1.0 / 16.0, 1.0, 1.0 / 16.0, 1.0]);
        assert!((w - 1.0 / 256.0).abs() < 1e-16);
    }

    #[test]
    fn quartic_table_structure() {
        let table = TriquarticTable::<f64>::new();
        assert_eq!(table.targets().len(), 604);
        assert_eq!(604, 9 * 9 * 9 - 5 * 5 * 5);

        // constants are preserved: every row sums to 1
        let sources = [3.25; 125];
        let mut out = vec![0.0; 604];
        table.fill(&sources, &mut out);
        for v in out {
            assert!((v - 3.25).abs() < 1e-13);
        }
    }

    #[test]
    fn quartic_table_is_exact_for_quartics() {
        let table = TriquarticTable::<f64>::new();
        // 1D slice: sources xi^4 at xi in {0, 1/2, 1, 3/2, 2} (element
        // units), target at xi = 1/4 must give (1/4)^4 exactly.
        let mut sources = [0.0; 125];
        for p in 0..5 {
            sources[p] = (0.5 * p as f64).powi(4); // beta = gamma = 0 line
        }
        let mut out = vec![0.0; 604];
        table.fill(&sources, &mut out);
        let pos = table
            .targets()
            .iter()
            .position(|t| *t == [1, 0, 0])
            .unwrap();
        // in cell coordinates the first quarter point sits at xi = 1/2 of
        // the 2h spacing, i.e. 1/4 of the element: value 0.25^4 = 0.00390625
        assert_eq!(out[pos], 0.00390625);

        // full tensor polynomial x^4 y^3 z^2 over the cell
        let p = |x: f64, y: f64, z: f64| x.powi(4) * y.powi(3) * z.powi(2);
        let mut m = 0;
        for r in 0..5 {
            for q in 0..5 {
                for pp in 0..5 {
                    sources[m] = p(pp as f64, q as f64, r as f64);
                    m += 1;
                }
            }
        }
        table.fill(&sources, &mut out);
        for (t, v) in table.targets().iter().zip(out.iter()) {
            let want = p(
                0.5 * t[0] as f64,
                0.5 * t[1] as f64,
                0.5 * t[2] as f64,
            );
            assert!((v - want).abs() < 1e-12 * want.abs().max(1.0));
        }
    }

    #[test]
    fn initial_guess_preserves_constants() {
        let coarse = Grid3::<f64>::new([2, 2, 2], [1.0, 1.0, 1.0]).unwrap();
        let mid = coarse.refined();
        let fine = mid.refined();
        let c = 4.5;
        let u4 = Field3::constant(coarse, c);
        let u2 = Field3::constant(mid, c);
        let w = build_initial_guess(&u2, &u4, &fine, |_, _, _| c).unwrap();
        for v in w.values() {
            assert!((v - c).abs() < 1e-13);
        }
    }

    #[test]
    fn initial_guess_rejects_bad_shapes() {
        let coarse = Grid3::<f64>::new([2, 2, 2], [1.0, 1.0, 1.0]).unwrap();
        let mid = coarse.refined();
        let fine = mid.refined();
        let u4 = Field3::zeros(coarse);
        let u2 = Field3::zeros(mid);
        assert!(build_initial_guess(&u2, &u4, &mid, |_, _, _| 0.0).is_err());
        assert!(build_initial_guess(&u4, &u2, &fine, |_, _, _| 0.0).is_err());

        // odd coarse counts cannot be tiled into cells
        let coarse = Grid3::<f64>::new([3, 2, 2], [1.0, 1.0, 1.0]).unwrap();
        let mid = coarse.refined();
        let fine = mid.refined();
        let u4 = Field3::zeros(coarse);
        let u2 = Field3::zeros(mid);
        assert!(build_initial_guess(&u2, &u4, &fine, |_, _, _| 0.0).is_err());
    }

    #[test]
    fn richardson_is_exact_on_exact_samples() {
        let mid = Grid3::<f64>::new([4, 4, 4], [1.0, 1.0, 1.0]).unwrap();
        let fine = mid.refined();
        let u = |x: f64, y: f64, z: f64| (x + 2.0 * y).sin() * z.exp();
        let um = Field3::sample(mid, u).unwrap();
        let uf = Field3::sample(fine, u).unwrap();
        let enhanced = richardson_true(&uf, &um, u).unwrap();
        let want = Field3::sample(fine, u).unwrap();
        assert!(enhanced.sub(&want).norm_inf_interior() < 1e-13);
    }

    #[test]
    fn richardson_annihilates_model_error() {
        // fields built as u + A h^4 with the same smooth A on both grids
        let mid = Grid3::<f64>::new([4, 4, 4], [1.0, 1.0, 1.0]).unwrap();
        let fine = mid.refined();
        let u = |x: f64, y: f64, z: f64| (x * y).cos() + z;
        let a = |x: f64, y: f64, z: f64| 1.0 + x + y * z;
        let h = fine.hx();
        let h2 = mid.hx();
        let um = Field3::sample(mid, |x, y, z| u(x, y, z) + a(x, y, z) * h2.powi(4)).unwrap();
        let uf = Field3::sample(fine, |x, y, z| u(x, y, z) + a(x, y, z) * h.powi(4)).unwrap();
        let enhanced = richardson_true(&uf, &um, u).unwrap();
        let err = enhanced.sub(&Field3::sample(fine, u).unwrap()).norm_inf_interior();
        let raw = uf.sub(&Field3::sample(fine, u).unwrap()).norm_inf_interior();
        // the h^4 model term is wiped out to the interpolation of A
        assert!(err < 1e-3 * raw, "enhanced {err:.3e} raw {raw:.3e}");
    }
}
