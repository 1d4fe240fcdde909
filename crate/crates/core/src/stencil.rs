//! Matrix-free application of the 19-point fourth-order compact operator
//! and assembly of its right-hand side.
//!
//! The operator is used with the positive-definite sign convention: both
//! sides of the compact scheme are negated so the interior matrix is SPD
//! and CG applies directly. Dirichlet data is folded into the right-hand
//! side at assembly time; solver iterates keep zero boundary entries.

use crate::grid::{Field3, Grid3};
use crate::scalar::{real, Real};

/// The seven distinct weights of the 19-point compact operator
/// (positive-definite convention), with `a = 1/hx^2` etc.
#[derive(Debug, Clone, Copy)]
pub struct OperatorCoefficients<T> {
    /// `8(a + b + c)`
    pub center: T,
    /// `-(4a - b - c)` for the two x-axis neighbours
    pub axis_x: T,
    /// `-(4b - a - c)`
    pub axis_y: T,
    /// `-(4c - a - b)`
    pub axis_z: T,
    /// `-(a + b)/2` for the four xy-plane diagonal neighbours
    pub edge_xy: T,
    /// `-(a + c)/2`
    pub edge_xz: T,
    /// `-(b + c)/2`
    pub edge_yz: T,
}

impl<T: Real> OperatorCoefficients<T> {
    pub fn new(grid: &Grid3<T>) -> Self {
        let one = T::one();
        let a = one / (grid.hx() * grid.hx());
        let b = one / (grid.hy() * grid.hy());
        let c = one / (grid.hz() * grid.hz());
        let four = real::<T>(4.0);
        let half = real::<T>(0.5);
        Self {
            center: real::<T>(8.0) * (a + b + c),
            axis_x: -(four * a - b - c),
            axis_y: -(four * b - a - c),
            axis_z: -(four * c - a - b),
            edge_xy: -half * (a + b),
            edge_xz: -half * (a + c),
            edge_yz: -half * (b + c),
        }
    }

    /// Sum of all 19 weights; zero because constants are in the null space
    /// of the operator row.
    pub fn weight_sum(&self) -> T {
        let two = real::<T>(2.0);
        let four = real::<T>(4.0);
        self.center
            + two * (self.axis_x + self.axis_y + self.axis_z)
            + four * (self.edge_xy + self.edge_xz + self.edge_yz)
    }
}

/// The constant diagonal entry `8(1/hx^2 + 1/hy^2 + 1/hz^2)` used by the
/// Gauss-Seidel sweeps.
pub fn diagonal_coefficient<T: Real>(grid: &Grid3<T>) -> T {
    OperatorCoefficients::new(grid).center
}

/// Applies the operator to `u` at every interior node, reading the full
/// 19-point neighbourhood (boundary entries of `u` included). Boundary
/// entries of the output are zero.
pub fn apply_operator<T: Real>(u: &Field3<T>) -> Field3<T> {
    let mut out = Field3::zeros(*u.grid());
    apply_operator_into(u, &mut out);
    out
}

/// In-place variant of [`apply_operator`] for the solver hot loops.
pub fn apply_operator_into<T: Real>(u: &Field3<T>, out: &mut Field3<T>) {
    let grid = *u.grid();
    assert_eq!(grid.counts(), out.grid().counts(), "fields must share a grid");
    let [nx, ny, nz] = grid.counts();
    let w = OperatorCoefficients::new(&grid);
    let sx = nx + 1;
    let sxy = sx * (ny + 1);
    let uv = u.values();
    let ov = out.values_mut();
    for k in 1..nz {
        for j in 1..ny {
            let row = sx * j + sxy * k;
            for i in 1..nx {
                let c = row + i;
                let axis = w.axis_x * (uv[c + 1] + uv[c - 1])
                    + w.axis_y * (uv[c + sx] + uv[c - sx])
                    + w.axis_z * (uv[c + sxy] + uv[c - sxy]);
                let edge = w.edge_xy
                    * (uv[c + 1 + sx] + uv[c + 1 - sx] + uv[c - 1 + sx] + uv[c - 1 - sx])
                    + w.edge_xz
                        * (uv[c + 1 + sxy] + uv[c + 1 - sxy] + uv[c - 1 + sxy] + uv[c - 1 - sxy])
                    + w.edge_yz
                        * (uv[c + sx + sxy] + uv[c + sx - sxy] + uv[c - sx + sxy]
                            + uv[c - sx - sxy]);
                ov[c] = w.center * uv[c] + axis + edge;
            }
        }
    }
    // boundary entries of the output stay zero
    out.zero_boundary();
}

/// Assembles the eliminated right-hand side for forcing samples `f` and
/// Dirichlet data `g`: interior values are `-(6 f_c + sum of axis f)/2`
/// minus the operator's coupling to the boundary values of `g`; boundary
/// entries are zero.
pub fn assemble_rhs<T: Real>(f: &Field3<T>, g: impl Fn(T, T, T) -> T) -> Field3<T> {
    let grid = *f.grid();
    let [nx, ny, nz] = grid.counts();

    // coupling of the known boundary values through the 19-point stencil
    let mut shell = Field3::zeros(grid);
    shell.apply_dirichlet(g);
    let coupling = apply_operator(&shell);

    let mut rhs = Field3::zeros(grid);
    let half = real::<T>(0.5);
    let six = real::<T>(6.0);
    let sx = nx + 1;
    let sxy = sx * (ny + 1);
    let fv = f.values();
    let cv = coupling.values();
    let rv = rhs.values_mut();
    for k in 1..nz {
        for j in 1..ny {
            let row = sx * j + sxy * k;
            for i in 1..nx {
                let c = row + i;
                let fsum = six * fv[c]
                    + fv[c + 1]
                    + fv[c - 1]
                    + fv[c + sx]
                    + fv[c - sx]
                    + fv[c + sxy]
                    + fv[c - sxy];
                rv[c] = -half * fsum - cv[c];
            }
        }
    }
    rhs
}

/// Interior residual `rhs - A u`; boundary entries zero.
pub fn residual<T: Real>(u: &Field3<T>, rhs: &Field3<T>) -> Field3<T> {
    let mut r = Field3::zeros(*u.grid());
    residual_into(u, rhs, &mut r);
    r
}

/// In-place variant of [`residual`]. `scratch` only needs matching shape.
pub fn residual_into<T: Real>(u: &Field3<T>, rhs: &Field3<T>, r: &mut Field3<T>) {
    assert_eq!(
        u.grid().counts(),
        rhs.grid().counts(),
        "fields must share a grid"
    );
    apply_operator_into(u, r);
    let [nx, ny, nz] = u.grid().counts();
    let sx = nx + 1;
    let sxy = sx * (ny + 1);
    let bv = rhs.values();
    let rv = r.values_mut();
    for k in 1..nz {
        for j in 1..ny {
            let row = sx * j + sxy * k;
            for i in 1..nx {
                let c = row + i;
                rv[c] = bv[c] - rv[c];
            }
        }
    }
}
