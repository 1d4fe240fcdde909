//! Uniform rectilinear grids, node-indexed scalar fields, and the nested
//! grid hierarchy used by the cascadic driver.
//!
//! Nodes are indexed `(i, j, k)` with `0 <= i <= nx` and stored x-fastest:
//! linear index `i + (nx+1)*(j + (ny+1)*k)`. Boundary nodes are part of the
//! storage, so Dirichlet data lives in the field itself and the stencil
//! needs no ghost handling.

use crate::error::{Error, Result};
use crate::scalar::{real_of, Real};

/// A uniform grid over `[0, lx] x [0, ly] x [0, lz]` with independent mesh
/// sizes per axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid3<T> {
    nx: usize,
    ny: usize,
    nz: usize,
    hx: T,
    hy: T,
    hz: T,
    lx: T,
    ly: T,
    lz: T,
}

impl<T: Real> Grid3<T> {
    /// Builds a grid with the given interval counts and domain extents.
    /// Mesh sizes are `h = l / n`, so `n*h = l` holds to rounding.
    pub fn new(counts: [usize; 3], extents: [T; 3]) -> Result<Self> {
        let [nx, ny, nz] = counts;
        if nx < 2 || ny < 2 || nz < 2 {
            return Err(Error::InvalidGrid(format!(
                "need at least 2 intervals per axis, got {nx}x{ny}x{nz}"
            )));
        }
        let [lx, ly, lz] = extents;
        if !(lx > T::zero() && ly > T::zero() && lz > T::zero()) {
            return Err(Error::InvalidGrid("extents must be positive".into()));
        }
        Ok(Self {
            nx,
            ny,
            nz,
            hx: lx / real_of(nx),
            hy: ly / real_of(ny),
            hz: lz / real_of(nz),
            lx,
            ly,
            lz,
        })
    }

    pub fn counts(&self) -> [usize; 3] {
        [self.nx, self.ny, self.nz]
    }

    pub fn extents(&self) -> [T; 3] {
        [self.lx, self.ly, self.lz]
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    pub fn nz(&self) -> usize {
        self.nz
    }

    pub fn hx(&self) -> T {
        self.hx
    }

    pub fn hy(&self) -> T {
        self.hy
    }

    pub fn hz(&self) -> T {
        self.hz
    }

    /// Total node count `(nx+1)(ny+1)(nz+1)`.
    pub fn num_nodes(&self) -> usize {
        (self.nx + 1) * (self.ny + 1) * (self.nz + 1)
    }

    /// Interior node count `(nx-1)(ny-1)(nz-1)`.
    pub fn num_interior(&self) -> usize {
        (self.nx - 1) * (self.ny - 1) * (self.nz - 1)
    }

    /// Linear index of node `(i, j, k)`, x-fastest.
    #[inline]
    pub fn node_index(&self, i: usize, j: usize, k: usize) -> usize {
        debug_assert!(i <= self.nx && j <= self.ny && k <= self.nz);
        i + (self.nx + 1) * (j + (self.ny + 1) * k)
    }

    /// Inverse of [`node_index`](Self::node_index).
    pub fn node_at(&self, index: usize) -> (usize, usize, usize) {
        let sx = self.nx + 1;
        let sy = self.ny + 1;
        (index % sx, (index / sx) % sy, index / (sx * sy))
    }

    /// Physical coordinates of node `(i, j, k)`.
    #[inline]
    pub fn node_coords(&self, i: usize, j: usize, k: usize) -> [T; 3] {
        [
            real_of::<T>(i) * self.hx,
            real_of::<T>(j) * self.hy,
            real_of::<T>(k) * self.hz,
        ]
    }

    #[inline]
    pub fn is_boundary(&self, i: usize, j: usize, k: usize) -> bool {
        i == 0 || i == self.nx || j == 0 || j == self.ny || k == 0 || k == self.nz
    }

    /// The grid with every mesh size halved (interval counts doubled).
    pub fn refined(&self) -> Self {
        Self::new(
            [2 * self.nx, 2 * self.ny, 2 * self.nz],
            [self.lx, self.ly, self.lz],
        )
        .expect("refining a valid grid cannot fail")
    }
}

/// Scalar values at every node of a [`Grid3`], boundary included.
#[derive(Debug, Clone, PartialEq)]
pub struct Field3<T> {
    grid: Grid3<T>,
    values: Vec<T>,
}

impl<T: Real> Field3<T> {
    pub fn zeros(grid: Grid3<T>) -> Self {
        let n = grid.num_nodes();
        Self {
            grid,
            values: vec![T::zero(); n],
        }
    }

    pub fn constant(grid: Grid3<T>, c: T) -> Self {
        let n = grid.num_nodes();
        Self {
            grid,
            values: vec![c; n],
        }
    }

    /// Samples `phi` at every node. Non-finite samples are rejected.
    pub fn sample(grid: Grid3<T>, phi: impl Fn(T, T, T) -> T) -> Result<Self> {
        let mut field = Self::zeros(grid);
        let [nx, ny, nz] = grid.counts();
        let mut idx = 0;
        for k in 0..=nz {
            for j in 0..=ny {
                for i in 0..=nx {
                    let [x, y, z] = grid.node_coords(i, j, k);
                    let v = phi(x, y, z);
                    if !v.is_finite() {
                        return Err(Error::NonFinite { i, j, k });
                    }
                    field.values[idx] = v;
                    idx += 1;
                }
            }
        }
        Ok(field)
    }

    pub fn grid(&self) -> &Grid3<T> {
        &self.grid
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [T] {
        &mut self.values
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize, k: usize) -> T {
        self.values[self.grid.node_index(i, j, k)]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, k: usize, v: T) {
        let idx = self.grid.node_index(i, j, k);
        self.values[idx] = v;
    }

    /// Replaces every boundary-node value by `g`; interior untouched.
    pub fn apply_dirichlet(&mut self, g: impl Fn(T, T, T) -> T) {
        let [nx, ny, nz] = self.grid.counts();
        for k in 0..=nz {
            for j in 0..=ny {
                for i in 0..=nx {
                    if self.grid.is_boundary(i, j, k) {
                        let [x, y, z] = self.grid.node_coords(i, j, k);
                        let idx = self.grid.node_index(i, j, k);
                        self.values[idx] = g(x, y, z);
                    }
                }
            }
        }
    }

    /// Sets every boundary-node value to zero (the eliminated convention
    /// used while solving).
    pub fn zero_boundary(&mut self) {
        let [nx, ny, nz] = self.grid.counts();
        let sx = nx + 1;
        let sxy = sx * (ny + 1);
        let zero = T::zero();
        self.values[..sxy].fill(zero);
        self.values[nz * sxy..].fill(zero);
        for k in 1..nz {
            let plane = k * sxy;
            self.values[plane..plane + sx].fill(zero);
            self.values[plane + ny * sx..plane + (ny + 1) * sx].fill(zero);
            for j in 1..ny {
                let row = plane + j * sx;
                self.values[row] = zero;
                self.values[row + nx] = zero;
            }
        }
    }

    /// Node-wise difference `self - other` on the same grid.
    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(
            self.grid.counts(),
            other.grid.counts(),
            "fields must share a grid"
        );
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&a, &b)| a - b)
            .collect();
        Self {
            grid: self.grid,
            values,
        }
    }

    /// Volume-weighted discrete L2 norm over interior nodes:
    /// `sqrt(hx*hy*hz * sum e^2)`.
    pub fn norm_l2_interior(&self) -> T {
        let [nx, ny, nz] = self.grid.counts();
        let mut sum = T::zero();
        for k in 1..nz {
            for j in 1..ny {
                for i in 1..nx {
                    let v = self.values[self.grid.node_index(i, j, k)];
                    sum += v * v;
                }
            }
        }
        (self.grid.hx * self.grid.hy * self.grid.hz * sum).sqrt()
    }

    /// Max-norm over interior nodes.
    pub fn norm_inf_interior(&self) -> T {
        let [nx, ny, nz] = self.grid.counts();
        let mut max = T::zero();
        for k in 1..nz {
            for j in 1..ny {
                for i in 1..nx {
                    let v = self.values[self.grid.node_index(i, j, k)].abs();
                    if v > max {
                        max = v;
                    }
                }
            }
        }
        max
    }

    /// Plain Euclidean inner product over interior nodes, accumulated in a
    /// fixed sequential order.
    pub fn dot_interior(&self, other: &Self) -> T {
        assert_eq!(
            self.grid.counts(),
            other.grid.counts(),
            "fields must share a grid"
        );
        let [nx, ny, nz] = self.grid.counts();
        let mut sum = T::zero();
        for k in 1..nz {
            for j in 1..ny {
                for i in 1..nx {
                    let idx = self.grid.node_index(i, j, k);
                    sum += self.values[idx] * other.values[idx];
                }
            }
        }
        sum
    }

    /// Euclidean norm over interior nodes.
    pub fn norm2_interior(&self) -> T {
        self.dot_interior(self).sqrt()
    }

    /// `self += alpha * x` on interior nodes.
    pub fn axpy_interior(&mut self, alpha: T, x: &Self) {
        assert_eq!(
            self.grid.counts(),
            x.grid.counts(),
            "fields must share a grid"
        );
        let [nx, ny, nz] = self.grid.counts();
        for k in 1..nz {
            for j in 1..ny {
                for i in 1..nx {
                    let idx = self.grid.node_index(i, j, k);
                    self.values[idx] += alpha * x.values[idx];
                }
            }
        }
    }

    /// True when every stored value is finite.
    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }
}

/// The nested grids of the cascadic solver, coarsest first; each grid halves
/// all three mesh sizes of its predecessor.
#[derive(Debug, Clone)]
pub struct GridHierarchy<T> {
    grids: Vec<Grid3<T>>,
}

/// Builds the `levels + 2` nested grids used by the cascadic driver:
/// grid 0 carries the coarse counts and grid `m` carries counts `* 2^m`.
///
/// Coarse counts must be even (the interpolation cells tile pairs of coarse
/// elements) and at least 2; `levels >= 1`.
pub fn build_hierarchy<T: Real>(
    coarse_counts: [usize; 3],
    extents: [T; 3],
    levels: usize,
) -> Result<GridHierarchy<T>> {
    if levels < 1 {
        return Err(Error::InvalidGrid("need at least one cascade level".into()));
    }
    for n in coarse_counts {
        if n < 2 || n % 2 != 0 {
            return Err(Error::InvalidGrid(format!(
                "coarse counts must be even and >= 2, got {:?}",
                coarse_counts
            )));
        }
    }
    let mut grids = Vec::with_capacity(levels + 2);
    grids.push(Grid3::new(coarse_counts, extents)?);
    for _ in 0..levels + 1 {
        let next = grids.last().unwrap().refined();
        grids.push(next);
    }
    Ok(GridHierarchy { grids })
}

impl<T: Real> GridHierarchy<T> {
    pub fn len(&self) -> usize {
        self.grids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grids.is_empty()
    }

    pub fn grid(&self, level: usize) -> &Grid3<T> {
        &self.grids[level]
    }

    pub fn grids(&self) -> &[Grid3<T>] {
        &self.grids
    }

    pub fn finest(&self) -> &Grid3<T> {
        self.grids.last().unwrap()
    }
}
