//! Fourth-order gradient recovery: five-point one-sided differences on the
//! boundary planes and the compact tridiagonal scheme on the interior of
//! every grid line, solved line by line with the Thomas algorithm.

use crate::error::{Error, Result};
use crate::grid::Field3;
use crate::scalar::{real, Real};
use crate::solvers::thomas_solve;

/// The three derivative components of a scalar field.
#[derive(Debug, Clone)]
pub struct GradientField<T> {
    pub gx: Field3<T>,
    pub gy: Field3<T>,
    pub gz: Field3<T>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
}

/// Derivative of `u` along `axis` at every node. Needs at least four
/// intervals along the axis (the one-sided end formulas read five points).
pub fn gradient_component<T: Real>(u: &Field3<T>, axis: Axis) -> Result<Field3<T>> {
    let grid = *u.grid();
    let [nx, ny, nz] = grid.counts();
    let (n, h) = match axis {
        Axis::X => (nx, grid.hx()),
        Axis::Y => (ny, grid.hy()),
        Axis::Z => (nz, grid.hz()),
    };
    if n < 4 {
        return Err(Error::InvalidGrid(format!(
            "gradient needs >= 4 intervals along the axis, got {n}"
        )));
    }

    // one-sided five-point end weights, divided by h
    let c0 = real::<T>(-25.0 / 12.0) / h;
    let c1 = real::<T>(4.0) / h;
    let c2 = real::<T>(-3.0) / h;
    let c3 = real::<T>(4.0 / 3.0) / h;
    let c4 = real::<T>(-1.0 / 4.0) / h;

    let sixth = real::<T>(1.0 / 6.0);
    let two_thirds = real::<T>(4.0 / 6.0);
    let inv_2h = T::one() / (real::<T>(2.0) * h);

    let mut out = Field3::zeros(grid);
    let mut line = vec![T::zero(); n + 1];
    let mut lower = vec![T::zero(); n];
    let mut diag = vec![T::zero(); n + 1];
    let mut upper = vec![T::zero(); n];
    let mut rhs = vec![T::zero(); n + 1];

    let (pn, qn) = match axis {
        Axis::X => (ny, nz),
        Axis::Y => (nx, nz),
        Axis::Z => (nx, ny),
    };
    let node = |t: usize, p: usize, q: usize| -> (usize, usize, usize) {
        match axis {
            Axis::X => (t, p, q),
            Axis::Y => (p, t, q),
            Axis::Z => (p, q, t),
        }
    };

    for q in 0..=qn {
        for p in 0..=pn {
            for t in 0..=n {
                let (i, j, k) = node(t, p, q);
                line[t] = u.at(i, j, k);
            }

            let d_start =
                c0 * line[0] + c1 * line[1] + c2 * line[2] + c3 * line[3] + c4 * line[4];
            let d_end = -(c0 * line[n]
                + c1 * line[n - 1]
                + c2 * line[n - 2]
                + c3 * line[n - 3]
                + c4 * line[n - 4]);

            // identity rows carry the end derivatives; interior rows are the
            // compact relation (1/6, 4/6, 1/6) q' = central difference
            diag[0] = T::one();
            upper[0] = T::zero();
            rhs[0] = d_start;
            for t in 1..n {
                lower[t - 1] = sixth;
                diag[t] = two_thirds;
                upper[t] = sixth;
                rhs[t] = (line[t + 1] - line[t - 1]) * inv_2h;
            }
            lower[n - 1] = T::zero();
            diag[n] = T::one();
            rhs[n] = d_end;

            let solved = thomas_solve(&lower, &diag, &upper, &rhs)?;
            for (t, v) in solved.into_iter().enumerate() {
                let (i, j, k) = node(t, p, q);
                out.set(i, j, k, v);
            }
        }
    }
    Ok(out)
}

/// All three derivative components.
pub fn gradient<T: Real>(u: &Field3<T>) -> Result<GradientField<T>> {
    Ok(GradientField {
        gx: gradient_component(u, Axis::X)?,
        gy: gradient_component(u, Axis::Y)?,
        gz: gradient_component(u, Axis::Z)?,
    })
}

impl<T: Real> GradientField<T> {
    /// Node-wise difference against an exact gradient.
    pub fn error_against(&self, exact: impl Fn(T, T, T) -> [T; 3]) -> Result<GradientField<T>> {
        let grid = *self.gx.grid();
        let ex = Field3::sample(grid, |x, y, z| exact(x, y, z)[0])?;
        let ey = Field3::sample(grid, |x, y, z| exact(x, y, z)[1])?;
        let ez = Field3::sample(grid, |x, y, z| exact(x, y, z)[2])?;
        Ok(GradientField {
            gx: self.gx.sub(&ex),
            gy: self.gy.sub(&ey),
            gz: self.gz.sub(&ez),
        })
    }

    /// Largest interior max-norm over the three components.
    pub fn norm_inf_interior(&self) -> T {
        self.gx
            .norm_inf_interior()
            .max(self.gy.norm_inf_interior())
            .max(self.gz.norm_inf_interior())
    }

    /// Root of the summed squared component L2 norms (volume weighted).
    pub fn norm_l2_interior(&self) -> T {
        let a = self.gx.norm_l2_interior();
        let b = self.gy.norm_l2_interior();
        let c = self.gz.norm_l2_interior();
        (a * a + b * b + c * c).sqrt()
    }
}
