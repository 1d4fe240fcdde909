//! Conjugate gradient with a relative-residual stopping rule, Gauss-Seidel
//! relaxation, the Thomas tridiagonal solver, and the banded direct solver
//! used on the two coarsest grids.

use crate::error::{Error, Result};
use crate::grid::{Field3, Grid3};
use crate::scalar::Real;
use crate::stencil::{apply_operator_into, diagonal_coefficient, residual, OperatorCoefficients};

/// Result of a CG solve.
#[derive(Debug, Clone)]
pub struct CgOutcome<T> {
    pub solution: Field3<T>,
    /// Number of CG steps performed.
    pub iterations: usize,
    /// Relative residuals `||r_m||_2 / ||rhs||_2`, starting with the initial
    /// guess (entry 0). The residual is the one maintained by the CG
    /// recurrence; in double precision it keeps decreasing past the level
    /// where a recomputed residual saturates on rounding noise, which is
    /// what tolerances as tight as 1e-14 require.
    pub residual_history: Vec<T>,
    pub converged: bool,
}

/// Default iteration cap: ten times the largest interval count.
pub fn default_max_iters<T: Real>(grid: &Grid3<T>) -> usize {
    let [nx, ny, nz] = grid.counts();
    10 * nx.max(ny).max(nz)
}

/// Unpreconditioned CG on the interior unknowns. `u0` supplies the initial
/// guess; its boundary entries are kept as-is (zero in the eliminated
/// convention). Stops when the relative residual drops to `eps` or the
/// iteration cap is hit (flagged, partial result returned).
pub fn cg_solve<T: Real>(
    rhs: &Field3<T>,
    u0: &Field3<T>,
    eps: T,
    max_iters: usize,
) -> CgOutcome<T> {
    assert!(eps > T::zero(), "tolerance must be positive");
    assert_eq!(
        rhs.grid().counts(),
        u0.grid().counts(),
        "fields must share a grid"
    );
    let mut u = u0.clone();

    let rhs_norm = rhs.norm2_interior();
    if rhs_norm == T::zero() {
        // homogeneous system: the exact solution has zero interior
        let [nx, ny, nz] = u.grid().counts();
        let grid = *u.grid();
        for k in 1..nz {
            for j in 1..ny {
                for i in 1..nx {
                    u.values_mut()[grid.node_index(i, j, k)] = T::zero();
                }
            }
        }
        return CgOutcome {
            solution: u,
            iterations: 0,
            residual_history: vec![T::zero()],
            converged: true,
        };
    }

    let mut r = residual(&u, rhs);
    let mut rr = r.dot_interior(&r);
    let mut history = vec![rr.sqrt() / rhs_norm];
    if history[0] <= eps {
        return CgOutcome {
            solution: u,
            iterations: 0,
            residual_history: history,
            converged: true,
        };
    }

    let mut p = r.clone();
    let mut ap = Field3::zeros(*u.grid());
    let mut converged = false;
    let mut iterations = 0;
    for _ in 0..max_iters {
        apply_operator_into(&p, &mut ap);
        let alpha = rr / p.dot_interior(&ap);
        u.axpy_interior(alpha, &p);
        r.axpy_interior(-alpha, &ap);
        let rr_next = r.dot_interior(&r);
        iterations += 1;
        let rel = rr_next.sqrt() / rhs_norm;
        history.push(rel);
        if rel <= eps {
            converged = true;
            break;
        }
        let beta = rr_next / rr;
        rr = rr_next;
        // p = r + beta p
        let [nx, ny, nz] = u.grid().counts();
        let grid = *u.grid();
        for k in 1..nz {
            for j in 1..ny {
                for i in 1..nx {
                    let idx = grid.node_index(i, j, k);
                    p.values_mut()[idx] = r.values()[idx] + beta * p.values()[idx];
                }
            }
        }
    }

    CgOutcome {
        solution: u,
        iterations,
        residual_history: history,
        converged,
    }
}

/// Runs exactly `steps` CG iterations from the current `u` (no tolerance).
/// Used as the CG relaxation inside the classical multigrid cycles.
pub fn cg_relax<T: Real>(u: &mut Field3<T>, rhs: &Field3<T>, steps: usize) {
    if steps == 0 {
        return;
    }
    let mut r = residual(u, rhs);
    let mut rr = r.dot_interior(&r);
    if rr == T::zero() {
        return;
    }
    let mut p = r.clone();
    let mut ap = Field3::zeros(*u.grid());
    let grid = *u.grid();
    let [nx, ny, nz] = grid.counts();
    for step in 0..steps {
        apply_operator_into(&p, &mut ap);
        let pap = p.dot_interior(&ap);
        if pap <= T::zero() {
            return;
        }
        let alpha = rr / pap;
        u.axpy_interior(alpha, &p);
        r.axpy_interior(-alpha, &ap);
        let rr_next = r.dot_interior(&r);
        if rr_next == T::zero() || step + 1 == steps {
            return;
        }
        let beta = rr_next / rr;
        rr = rr_next;
        for k in 1..nz {
            for j in 1..ny {
                for i in 1..nx {
                    let idx = grid.node_index(i, j, k);
                    p.values_mut()[idx] = r.values()[idx] + beta * p.values()[idx];
                }
            }
        }
    }
}

/// One lexicographic forward Gauss-Seidel sweep (i fastest, then j, then k)
/// over the interior, using the 19-point neighbourhood.
pub fn gauss_seidel_sweep<T: Real>(u: &mut Field3<T>, rhs: &Field3<T>) {
    let grid = *u.grid();
    assert_eq!(
        grid.counts(),
        rhs.grid().counts(),
        "fields must share a grid"
    );
    let [nx, ny, nz] = grid.counts();
    let w = OperatorCoefficients::new(&grid);
    let diag = diagonal_coefficient(&grid);
    let sx = nx + 1;
    let sxy = sx * (ny + 1);
    let uv = u.values_mut();
    let bv = rhs.values();
    for k in 1..nz {
        for j in 1..ny {
            let row = sx * j + sxy * k;
            for i in 1..nx {
                let c = row + i;
                let off = w.axis_x * (uv[c + 1] + uv[c - 1])
                    + w.axis_y * (uv[c + sx] + uv[c - sx])
                    + w.axis_z * (uv[c + sxy] + uv[c - sxy])
                    + w.edge_xy
                        * (uv[c + 1 + sx] + uv[c + 1 - sx] + uv[c - 1 + sx] + uv[c - 1 - sx])
                    + w.edge_xz
                        * (uv[c + 1 + sxy] + uv[c + 1 - sxy] + uv[c - 1 + sxy] + uv[c - 1 - sxy])
                    + w.edge_yz
                        * (uv[c + sx + sxy] + uv[c + sx - sxy] + uv[c - sx + sxy]
                            + uv[c - sx - sxy]);
                uv[c] = (bv[c] - off) / diag;
            }
        }
    }
}

/// Solves a tridiagonal system by forward elimination and back substitution.
/// `diag` has length n, `lower` and `upper` length n-1, `rhs` length n.
pub fn thomas_solve<T: Real>(lower: &[T], diag: &[T], upper: &[T], rhs: &[T]) -> Result<Vec<T>> {
    let n = diag.len();
    assert!(n >= 1, "empty system");
    assert_eq!(lower.len(), n - 1, "lower diagonal length");
    assert_eq!(upper.len(), n - 1, "upper diagonal length");
    assert_eq!(rhs.len(), n, "rhs length");

    let mut c = vec![T::zero(); n - 1];
    let mut d = vec![T::zero(); n];
    let mut pivot = diag[0];
    if pivot == T::zero() {
        return Err(Error::SingularPivot(0));
    }
    if n > 1 {
        c[0] = upper[0] / pivot;
    }
    d[0] = rhs[0] / pivot;
    for i in 1..n {
        pivot = diag[i] - lower[i - 1] * c[i - 1];
        if pivot == T::zero() {
            return Err(Error::SingularPivot(i));
        }
        if i < n - 1 {
            c[i] = upper[i] / pivot;
        }
        d[i] = (rhs[i] - lower[i - 1] * d[i - 1]) / pivot;
    }
    for i in (0..n - 1).rev() {
        let next = d[i + 1];
        d[i] = d[i] - c[i] * next;
    }
    Ok(d)
}

/// Interior unknown cap for the coarse direct solver (a 32^3 grid).
pub const DEFAULT_DIRECT_CAP: usize = 31 * 31 * 31;

/// Solves the eliminated interior system directly by assembling the banded
/// interior matrix and factorizing it (Cholesky within the band). Intended
/// for the two coarsest grids of the cascade.
pub fn direct_solve_coarse<T: Real>(rhs: &Field3<T>) -> Result<Field3<T>> {
    direct_solve_with_cap(rhs, DEFAULT_DIRECT_CAP)
}

/// [`direct_solve_coarse`] with an explicit unknown-count cap.
pub fn direct_solve_with_cap<T: Real>(rhs: &Field3<T>, cap: usize) -> Result<Field3<T>> {
    let grid = *rhs.grid();
    let [nx, ny, nz] = grid.counts();
    let (mx, my, mz) = (nx - 1, ny - 1, nz - 1);
    let n = mx * my * mz;
    if n > cap {
        return Err(Error::CoarseCapExceeded { unknowns: n, cap });
    }

    // Lower band including the diagonal; the farthest coupling below the
    // diagonal is the (0,-1,-1) neighbour at offset mx*my + mx.
    let bw = (mx * my + mx + 1).min(n);
    let w = OperatorCoefficients::new(&grid);
    let mut band = vec![T::zero(); n * bw];
    let at = |i: usize, j: usize| i * bw + (bw - 1) - (i - j); // j in [i-bw+1, i]

    let offsets: [(isize, isize, isize, usize); 10] = [
        (0, 0, 0, 0),
        (-1, 0, 0, 1),
        (0, -1, 0, 2),
        (0, 0, -1, 3),
        (-1, -1, 0, 4),
        (1, -1, 0, 4),
        (-1, 0, -1, 5),
        (1, 0, -1, 5),
        (0, -1, -1, 6),
        (0, 1, -1, 6),
    ];
    let weights = [
        w.center, w.axis_x, w.axis_y, w.axis_z, w.edge_xy, w.edge_xz, w.edge_yz,
    ];
    let lin = |i: usize, j: usize, k: usize| (i - 1) + mx * ((j - 1) + my * (k - 1));
    for k in 1..nz {
        for j in 1..ny {
            for i in 1..nx {
                let p = lin(i, j, k);
                for &(di, dj, dk, widx) in &offsets {
                    let (qi, qj, qk) = (
                        i as isize + di,
                        j as isize + dj,
                        k as isize + dk,
                    );
                    if qi < 1 || qi as usize > mx || qj < 1 || qj as usize > my || qk < 1 || qk as usize > mz
                    {
                        continue;
                    }
                    let q = lin(qi as usize, qj as usize, qk as usize);
                    if q <= p {
                        band[at(p, q)] = weights[widx];
                    }
                }
            }
        }
    }

    // in-band Cholesky A = L L^T
    for i in 0..n {
        let lo = i.saturating_sub(bw - 1);
        for j in lo..=i {
            let mut sum = band[at(i, j)];
            let kmin = lo.max(j.saturating_sub(bw - 1));
            for k in kmin..j {
                sum -= band[at(i, k)] * band[at(j, k)];
            }
            if j < i {
                band[at(i, j)] = sum / band[at(j, j)];
            } else {
                if sum <= T::zero() {
                    return Err(Error::NotPositiveDefinite(i));
                }
                band[at(i, i)] = sum.sqrt();
            }
        }
    }

    // forward/backward substitution
    let mut x = vec![T::zero(); n];
    for k in 1..nz {
        for j in 1..ny {
            for i in 1..nx {
                x[lin(i, j, k)] = rhs.at(i, j, k);
            }
        }
    }
    for i in 0..n {
        let lo = i.saturating_sub(bw - 1);
        let mut sum = x[i];
        for k in lo..i {
            sum -= band[at(i, k)] * x[k];
        }
        x[i] = sum / band[at(i, i)];
    }
    for i in (0..n).rev() {
        let hi = (i + bw).min(n);
        let mut sum = x[i];
        for k in i + 1..hi {
            sum -= band[at(k, i)] * x[k];
        }
        x[i] = sum / band[at(i, i)];
    }

    let mut u = Field3::zeros(grid);
    for k in 1..nz {
        for j in 1..ny {
            for i in 1..nx {
                u.set(i, j, k, x[lin(i, j, k)]);
            }
        }
    }
    Ok(u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stencil::assemble_rhs;
    use rand::{Rng, SeedableRng};

    fn unit_grid(n: usize) -> Grid3<f64> {
        Grid3::new([n, n, n], [1.0, 1.0, 1.0]).unwrap()
    }

    #[test]
    fn cg_zero_rhs_converges_immediately() {
        let g = unit_grid(4);
        let rhs = Field3::zeros(g);
        let out = cg_solve(&rhs, &Field3::zeros(g), 1e-12, 100);
        assert!(out.converged);
        assert_eq!(out.iterations, 0);
        assert!(out.solution.values().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn cg_history_ends_at_or_below_eps() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        let g = unit_grid(4);
        let mut rhs = Field3::zeros(g);
        for v in rhs.values_mut() {
            *v = rng.gen_range(-1.0..1.0);
        }
        rhs.zero_boundary();
        let out = cg_solve(&rhs, &Field3::zeros(g), 1e-12, 100);
        assert!(out.converged);
        assert!(*out.residual_history.last().unwrap() <= 1e-12);
        // exact in <= #unknowns iterations in exact arithmetic; allow slack
        assert!(out.iterations <= 40, "took {}", out.iterations);
    }

    #[test]
    fn gauss_seidel_converges_and_keeps_fixed_point() {
        let g = unit_grid(4);
        let f = Field3::constant(g, 6.0); // u = x^2 + y^2 + z^2
        let rhs = assemble_rhs(&f, |x, y, z| x * x + y * y + z * z);
        let mut u = Field3::zeros(g);
        for _ in 0..200 {
            gauss_seidel_sweep(&mut u, &rhs);
        }
        let exact = cg_solve(&rhs, &Field3::zeros(g), 1e-14, 200).solution;
        let diff = u.sub(&exact);
        assert!(diff.norm_inf_interior() < 1e-8);

        // a sweep from the converged state is a fixed point
        let before = u.clone();
        gauss_seidel_sweep(&mut u, &rhs);
        assert!(u.sub(&before).norm_inf_interior() < 1e-13);
    }

    #[test]
    fn gauss_seidel_residual_is_non_increasing() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(5);
        let g = unit_grid(8);
        let mut rhs = Field3::zeros(g);
        for v in rhs.values_mut() {
            *v = rng.gen_range(-1.0..1.0);
        }
        rhs.zero_boundary();
        let mut u = Field3::zeros(g);
        for v in u.values_mut() {
            *v = rng.gen_range(-1.0..1.0);
        }
        u.zero_boundary();
        let mut prev = residual(&u, &rhs).norm2_interior();
        let initial = prev;
        for _ in 0..10 {
            gauss_seidel_sweep(&mut u, &rhs);
            let now = residual(&u, &rhs).norm2_interior();
            prev = now;
        }
        assert!(prev <= initial);
    }

    #[test]
    fn thomas_identity_and_compact_line() {
        let x = thomas_solve(&[0.0, 0.0], &[1.0, 1.0, 1.0], &[0.0, 0.0], &[3.0, 5.0, 7.0]).unwrap();
        assert_eq!(x, vec![3.0, 5.0, 7.0]);

        // compact derivative system for u = x on a 5-point line: interior
        // derivatives are exactly 1 after folding in the end values q = 1.
        let s = 1.0 / 6.0;
        let rhs = [1.0 - s, 1.0, 1.0 - s];
        let x = thomas_solve(&[s, s], &[4.0 * s; 3], &[s, s], &rhs).unwrap();
        for v in x {
            assert!((v - 1.0).abs() < 1e-14);
        }

        assert!(matches!(
            thomas_solve(&[0.0], &[0.0, 1.0], &[0.0], &[1.0, 1.0]),
            Err(Error::SingularPivot(0))
        ));
    }

    #[test]
    fn thomas_matches_dense_elimination() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(99);
        let n = 6;
        let lower: Vec<f64> = (0..n - 1).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let upper: Vec<f64> = (0..n - 1).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let diag: Vec<f64> = (0..n).map(|_| rng.gen_range(3.0..4.0)).collect();
        let rhs: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();

        // dense Gaussian elimination oracle
        let mut a = vec![vec![0.0; n]; n];
        for i in 0..n {
            a[i][i] = diag[i];
            if i > 0 {
                a[i][i - 1] = lower[i - 1];
            }
            if i + 1 < n {
                a[i][i + 1] = upper[i];
            }
        }
        let mut b = rhs.clone();
        for col in 0..n {
            let piv = (col..n).max_by(|&p, &q| a[p][col].abs().total_cmp(&a[q][col].abs())).unwrap();
            a.swap(col, piv);
            b.swap(col, piv);
            for row in col + 1..n {
                let m = a[row][col] / a[col][col];
                for c in col..n {
                    a[row][c] -= m * a[col][c];
                }
                b[row] -= m * b[col];
            }
        }
        let mut want = vec![0.0; n];
        for i in (0..n).rev() {
            let mut s = b[i];
            for c in i + 1..n {
                s -= a[i][c] * want[c];
            }
            want[i] = s / a[i][i];
        }

        let got = thomas_solve(&lower, &diag, &upper, &rhs).unwrap();
        for (g, w) in got.iter().zip(&want) {
            assert!((g - w).abs() < 1e-12);
        }
    }

    #[test]
    fn direct_solver_basics() {
        let g = unit_grid(4);
        let u = direct_solve_coarse(&Field3::zeros(g)).unwrap();
        assert!(u.values().iter().all(|&v| v == 0.0));

        // cross-solver agreement on a smooth problem
        let f = Field3::sample(g, |x, y, z| z.exp() * (x * y).sin() * (1.0 - x * x - y * y))
            .unwrap();
        let rhs = assemble_rhs(&f, |x, y, z| z.exp() * (x * y).sin());
        let direct = direct_solve_coarse(&rhs).unwrap();
        let cg = cg_solve(&rhs, &Field3::zeros(g), 1e-14, 200).solution;
        assert!(direct.sub(&cg).norm_inf_interior() < 1e-12);

        // residual of the direct solution
        let r = residual(&direct, &rhs);
        assert!(r.norm2_interior() <= 1e-13 * rhs.norm2_interior());
    }

    #[test]
    fn direct_solver_is_polynomial_exact() {
        let g = unit_grid(8);
        let f = Field3::constant(g, 6.0);
        let exact = |x: f64, y: f64, z: f64| x * x + y * y + z * z;
        let rhs = assemble_rhs(&f, exact);
        let mut u = direct_solve_coarse(&rhs).unwrap();
        u.apply_dirichlet(exact);
        let want = Field3::sample(g, exact).unwrap();
        assert!(u.sub(&want).norm_inf_interior() < 1e-11);
    }

    #[test]
    fn direct_solver_enforces_cap() {
        let g = unit_grid(8);
        let rhs = Field3::zeros(g);
        match direct_solve_with_cap(&rhs, 100) {
            Err(Error::CoarseCapExceeded { unknowns, cap }) => {
                assert_eq!(unknowns, 343);
                assert_eq!(cap, 100);
            }
            other => panic!("expected cap error, got {other:?}"),
        }
    }

    #[test]
    fn direct_solver_handles_unequal_mesh() {
        let g = Grid3::new([8, 4, 2], [1.0, 1.0, 1.0]).unwrap();
        let f = Field3::constant(g, 6.0);
        let exact = |x: f64, y: f64, z: f64| x * x + y * y + z * z;
        let rhs = assemble_rhs(&f, exact);
        let mut u = direct_solve_coarse(&rhs).unwrap();
        u.apply_dirichlet(exact);
        let want = Field3::sample(g, exact).unwrap();
        assert!(u.sub(&want).norm_inf_interior() < 1e-11);
    }
}
