//! The six benchmark Dirichlet problems on the unit cube, with exact
//! solutions, forcings, boundary data and recommended solver settings.
//!
//! `ex5` and `ex6` have removable singularities at the origin corner; their
//! solution, forcing and gradient are defined by their limits (zero) there.
//! The origin is a boundary node on every grid, so the forcing value at the
//! corner never enters the interior stencil, but it is defined anyway.

use crate::scalar::{real, Real};

/// A Dirichlet benchmark problem.
#[derive(Debug, Clone, Copy)]
pub struct Problem<T> {
    pub name: &'static str,
    /// Exact solution, used for error tables.
    pub exact: Option<fn(T, T, T) -> T>,
    /// Closed-form gradient of the exact solution.
    pub exact_gradient: Option<fn(T, T, T) -> [T; 3]>,
    pub forcing: fn(T, T, T) -> T,
    pub boundary: fn(T, T, T) -> T,
    pub extents: [T; 3],
    /// Coarsest-grid interval counts suited to the solution's anisotropy.
    pub coarse_counts: [usize; 3],
    /// Recommended relative-residual tolerance.
    pub eps: T,
}

fn ex1_u<T: Real>(x: T, y: T, z: T) -> T {
    z.exp() * (x * y).sin()
}

fn ex1_f<T: Real>(x: T, y: T, z: T) -> T {
    z.exp() * (x * y).sin() * (T::one() - x * x - y * y)
}

fn ex1_grad<T: Real>(x: T, y: T, z: T) -> [T; 3] {
    let e = z.exp();
    [
        y * e * (x * y).cos(),
        x * e * (x * y).cos(),
        e * (x * y).sin(),
    ]
}

fn ex2_u<T: Real>(x: T, y: T, z: T) -> T {
    (x + y).exp() * (T::SQRT_2() * z).sin()
}

fn ex2_f<T: Real>(_x: T, _y: T, _z: T) -> T {
    T::zero()
}

fn ex2_grad<T: Real>(x: T, y: T, z: T) -> [T; 3] {
    let e = (x + y).exp();
    let s = (T::SQRT_2() * z).sin();
    [e * s, e * s, T::SQRT_2() * e * (T::SQRT_2() * z).cos()]
}

fn ex3_u<T: Real>(x: T, y: T, z: T) -> T {
    let half = real::<T>(0.5);
    let r2 = (x - half) * (x - half) + (y - half) * (y - half) + (z - half) * (z - half);
    (-real::<T>(3.0) * r2).exp()
}

fn ex3_f<T: Real>(x: T, y: T, z: T) -> T {
    let half = real::<T>(0.5);
    let r2 = (x - half) * (x - half) + (y - half) * (y - half) + (z - half) * (z - half);
    (real::<T>(36.0) * r2 - real::<T>(18.0)) * (-real::<T>(3.0) * r2).exp()
}

fn ex3_grad<T: Real>(x: T, y: T, z: T) -> [T; 3] {
    let half = real::<T>(0.5);
    let u = ex3_u(x, y, z);
    let m6 = real::<T>(-6.0);
    [m6 * (x - half) * u, m6 * (y - half) * u, m6 * (z - half) * u]
}

fn ex4_u<T: Real>(x: T, y: T, z: T) -> T {
    let pi = T::PI();
    let two = real::<T>(2.0);
    (two * pi * x).sin() * (pi * y).sin() * (pi * z / two).sin()
}

fn ex4_f<T: Real>(x: T, y: T, z: T) -> T {
    let pi = T::PI();
    -real::<T>(5.25) * pi * pi * ex4_u(x, y, z)
}

fn ex4_grad<T: Real>(x: T, y: T, z: T) -> [T; 3] {
    let pi = T::PI();
    let two = real::<T>(2.0);
    [
        two * pi * (two * pi * x).cos() * (pi * y).sin() * (pi * z / two).sin(),
        pi * (two * pi * x).sin() * (pi * y).cos() * (pi * z / two).sin(),
        pi / two * (two * pi * x).sin() * (pi * y).sin() * (pi * z / two).cos(),
    ]
}

fn ex5_u<T: Real>(x: T, y: T, z: T) -> T {
    let s = x * x + y * y + z * z;
    if s == T::zero() {
        return T::zero();
    }
    (x * y * z).powi(3) / s.powf(real(1.5))
}

fn ex5_f<T: Real>(x: T, y: T, z: T) -> T {
    let s = x * x + y * y + z * z;
    if s == T::zero() {
        return T::zero();
    }
    let xyz = x * y * z;
    let cross = x * x * y * y + y * y * z * z + z * z * x * x;
    real::<T>(6.0) * xyz * cross / s.powf(real(1.5))
        - real::<T>(48.0) * xyz.powi(3) / s.powf(real(2.5))
}

fn ex5_grad<T: Real>(x: T, y: T, z: T) -> [T; 3] {
    let s = x * x + y * y + z * z;
    if s == T::zero() {
        return [T::zero(); 3];
    }
    let three = real::<T>(3.0);
    let s52 = s.powf(real(2.5));
    [
        three * x * x * (y * z).powi(3) * (y * y + z * z) / s52,
        three * y * y * (x * z).powi(3) * (x * x + z * z) / s52,
        three * z * z * (x * y).powi(3) * (x * x + y * y) / s52,
    ]
}

fn ex6_u<T: Real>(x: T, y: T, z: T) -> T {
    let s = x * x + y * y + z * z;
    x * y * z * s.sqrt()
}

fn ex6_f<T: Real>(x: T, y: T, z: T) -> T {
    let s = x * x + y * y + z * z;
    if s == T::zero() {
        return T::zero();
    }
    real::<T>(8.0) * x * y * z / s.sqrt()
}

fn ex6_grad<T: Real>(x: T, y: T, z: T) -> [T; 3] {
    let s = x * x + y * y + z * z;
    if s == T::zero() {
        return [T::zero(); 3];
    }
    let r = s.sqrt();
    [
        y * z * (s + x * x) / r,
        x * z * (s + y * y) / r,
        x * y * (s + z * z) / r,
    ]
}

/// The six benchmark problems, `ex1` through `ex6`.
pub fn catalog<T: Real>() -> Vec<Problem<T>> {
    let unit = [T::one(), T::one(), T::one()];
    vec![
        Problem {
            name: "ex1",
            exact: Some(ex1_u),
            exact_gradient: Some(ex1_grad),
            forcing: ex1_f,
            boundary: ex1_u,
            extents: unit,
            coarse_counts: [4, 4, 4],
            eps: real(1e-14),
        },
        Problem {
            name: "ex2",
            exact: Some(ex2_u),
            exact_gradient: Some(ex2_grad),
            forcing: ex2_f,
            boundary: ex2_u,
            extents: unit,
            coarse_counts: [4, 4, 4],
            eps: real(1e-14),
        },
        Problem {
            name: "ex3",
            exact: Some(ex3_u),
            exact_gradient: Some(ex3_grad),
            forcing: ex3_f,
            boundary: ex3_u,
            extents: unit,
            coarse_counts: [4, 4, 4],
            eps: real(1e-11),
        },
        Problem {
            name: "ex4",
            exact: Some(ex4_u),
            exact_gradient: Some(ex4_grad),
            forcing: ex4_f,
            boundary: ex4_u,
            extents: unit,
            coarse_counts: [8, 4, 2],
            eps: real(1e-9),
        },
        Problem {
            name: "ex5",
            exact: Some(ex5_u),
            exact_gradient: Some(ex5_grad),
            forcing: ex5_f,
            boundary: ex5_u,
            extents: unit,
            coarse_counts: [4, 4, 4],
            eps: real(1e-12),
        },
        Problem {
            name: "ex6",
            exact: Some(ex6_u),
            exact_gradient: Some(ex6_grad),
            forcing: ex6_f,
            boundary: ex6_u,
            extents: unit,
            coarse_counts: [4, 4, 4],
            eps: real(1e-13),
        },
    ]
}

/// Looks a problem up by its CLI name.
pub fn by_name<T: Real>(name: &str) -> Option<Problem<T>> {
    catalog().into_iter().find(|p| p.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    /// Eighth-order central second derivative, for the forcing oracle.
    fn second_derivative(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
        let c = [-205.0 / 72.0, 8.0 / 5.0, -1.0 / 5.0, 8.0 / 315.0, -1.0 / 560.0];
        let mut sum = c[0] * f(x);
        for (m, cm) in c.iter().enumerate().skip(1) {
            let d = m as f64 * h;
            sum += cm * (f(x + d) + f(x - d));
        }
        sum / (h * h)
    }

    fn numerical_laplacian(u: fn(f64, f64, f64) -> f64, x: f64, y: f64, z: f64) -> f64 {
        let h = 1.0 / 256.0;
        second_derivative(|t| u(t, y, z), x, h)
            + second_derivative(|t| u(x, t, z), y, h)
            + second_derivative(|t| u(x, y, t), z, h)
    }

    fn first_derivative(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
        let c = [4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0];
        let mut sum = 0.0;
        for (m, cm) in c.iter().enumerate() {
            let d = (m + 1) as f64 * h;
            sum += cm * (f(x + d) - f(x - d));
        }
        sum / h
    }

    #[test]
    fn catalog_names_and_settings() {
        let problems = catalog::<f64>();
        let names: Vec<_> = problems.iter().map(|p| p.name).collect();
        assert_eq!(names, vec!["ex1", "ex2", "ex3", "ex4", "ex5", "ex6"]);
        let eps: Vec<_> = problems.iter().map(|p| p.eps).collect();
        assert_eq!(eps, vec![1e-14, 1e-14, 1e-11, 1e-9, 1e-12, 1e-13]);
        assert_eq!(problems[3].coarse_counts, [8, 4, 2]);
        assert!(by_name::<f64>("ex2").is_some());
        assert!(by_name::<f64>("nope").is_none());
    }

    #[test]
    fn spot_values() {
        // harmonic problem: zero forcing everywhere
        assert_eq!(ex2_f(0.3, 0.9, 0.2), 0.0);
        // e * sin(1)
        assert!((ex1_u(1.0, 1.0, 1.0) - 2.2873552871788424).abs() < 1e-15);
        // Gaussian center: (36*0 - 18) * 1
        assert!((ex3_f(0.5, 0.5, 0.5) + 18.0).abs() < 1e-13);
        // removable singularities at the origin corner
        assert_eq!(ex5_u(0.0, 0.0, 0.0), 0.0);
        assert_eq!(ex5_f(0.0, 0.0, 0.0), 0.0);
        assert_eq!(ex6_u(0.0, 0.0, 0.0), 0.0);
        assert_eq!(ex6_f(0.0, 0.0, 0.0), 0.0);
        assert_eq!(ex6_grad(0.0, 0.0, 0.0), [0.0; 3]);
        // Gaussian forcing decays away from the center
        assert!(ex3_f(0.99, 0.01, 0.99).abs() < ex3_f(0.5, 0.5, 0.5).abs());
    }

    #[test]
    fn boundary_data_matches_exact_solution() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(31);
        for p in catalog::<f64>() {
            let u = p.exact.unwrap();
            for _ in 0..100 {
                // a random point on a random face
                let face = rng.gen_range(0..6usize);
                let (a, b) = (rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0));
                let (x, y, z) = match face {
                    0 => (0.0, a, b),
                    1 => (1.0, a, b),
                    2 => (a, 0.0, b),
                    3 => (a, 1.0, b),
                    4 => (a, b, 0.0),
                    _ => (a, b, 1.0),
                };
                assert!(
                    ((p.boundary)(x, y, z) - u(x, y, z)).abs() <= 1e-12,
                    "{} at ({x},{y},{z})",
                    p.name
                );
            }
        }
    }

    #[test]
    fn forcing_matches_numerical_laplacian() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(77);
        for p in catalog::<f64>() {
            let u = p.exact.unwrap();
            for _ in 0..100 {
                let (x, y, z) = (
                    rng.gen_range(0.1..0.9),
                    rng.gen_range(0.1..0.9),
                    rng.gen_range(0.1..0.9),
                );
                let lap = numerical_laplacian(u, x, y, z);
                let f = (p.forcing)(x, y, z);
                assert!(
                    (lap - f).abs() <= 1e-8 * f.abs().max(1.0),
                    "{}: laplacian {lap:.12e} vs forcing {f:.12e} at ({x},{y},{z})",
                    p.name
                );
            }
        }
    }

    #[test]
    fn gradient_matches_numerical_derivatives() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(123);
        let h = 1.0 / 512.0;
        for p in catalog::<f64>() {
            let u = p.exact.unwrap();
            let grad = p.exact_gradient.unwrap();
            for _ in 0..100 {
                let (x, y, z) = (
                    rng.gen_range(0.1..0.9),
                    rng.gen_range(0.1..0.9),
                    rng.gen_range(0.1..0.9),
                );
                let want = [
                    first_derivative(|t| u(t, y, z), x, h),
                    first_derivative(|t| u(x, t, z), y, h),
                    first_derivative(|t| u(x, y, t), z, h),
                ];
                let got = grad(x, y, z);
                for (g, w) in got.iter().zip(&want) {
                    assert!((g - w).abs() <= 1e-8 * w.abs().max(1.0), "{}", p.name);
                }
            }
        }
    }
}
