//! 2×2 complex matrices: just enough algebra to conjugate a qubit state by a
//! spin rotation and take traces.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

type C = Complex64;

const ZERO: C = C::new(0.0, 0.0);
const ONE: C = C::new(1.0, 0.0);
const I: C = C::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix2c(pub [[C; 2]; 2]);

impl Matrix2c {
    pub const fn new(a: C, b: C, c: C, d: C) -> Self {
        Matrix2c([[a, b], [c, d]])
    }

    pub const fn identity() -> Self {
        Self::new(ONE, ZERO, ZERO, ONE)
    }

    pub const fn zero() -> Self {
        Self::new(ZERO, ZERO, ZERO, ZERO)
    }

    pub const fn pauli_x() -> Self {
        Self::new(ZERO, ONE, ONE, ZERO)
    }

    pub const fn pauli_y() -> Self {
        Self::new(ZERO, C::new(0.0, -1.0), I, ZERO)
    }

    pub const fn pauli_z() -> Self {
        Self::new(ONE, ZERO, ZERO, C::new(-1.0, 0.0))
    }

    /// `v·σ`.
    pub fn sigma_dot(v: [f64; 3]) -> Self {
        Self::pauli_x().scale(v[0].into())
            + Self::pauli_y().scale(v[1].into())
            + Self::pauli_z().scale(v[2].into())
    }

    /// Density matrix `½(I + σ·ρ⃗)` of a Bloch vector.
    pub fn density(bloch: [f64; 3]) -> Self {
        (Self::identity() + Self::sigma_dot(bloch)).scale(0.5.into())
    }

    /// `exp(-i (φ/2) e·σ) = cos(φ/2) I - i sin(φ/2) e·σ` for a unit axis `e`.
    pub fn spin_rotation(axis: [f64; 3], angle: f64) -> Self {
        let (s, c) = (angle / 2.0).sin_cos();
        Self::identity().scale(c.into()) - Self::sigma_dot(axis).scale(I * s)
    }

    /// Projector onto basis vector `k` of the standard (σ_z) basis.
    pub fn basis_projector(k: usize) -> Self {
        match k {
            0 => Self::new(ONE, ZERO, ZERO, ZERO),
            _ => Self::new(ZERO, ZERO, ZERO, ONE),
        }
    }

    pub fn scale(self, s: C) -> Self {
        let m = self.0;
        Self::new(m[0][0] * s, m[0][1] * s, m[1][0] * s, m[1][1] * s)
    }

    pub fn adjoint(self) -> Self {
        let m = self.0;
        Self::new(
            m[0][0].conj(),
            m[1][0].conj(),
            m[0][1].conj(),
            m[1][1].conj(),
        )
    }

    pub fn trace(self) -> C {
        self.0[0][0] + self.0[1][1]
    }

    /// `U ρ U†`.
    pub fn conjugate(self, rho: Self) -> Self {
        self * rho * self.adjoint()
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn distance(self, other: Self) -> f64 {
        let d = self - other;
        d.0.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_hermitian(self, tol: f64) -> bool {
        self.distance(self.adjoint()) <= tol
    }

    pub fn is_unitary(self, tol: f64) -> bool {
        (self * self.adjoint()).distance(Self::identity()) <= tol
    }
}

impl Add for Matrix2c {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let (a, b) = (self.0, rhs.0);
        Self::new(
            a[0][0] + b[0][0],
            a[0][1] + b[0][1],
            a[1][0] + b[1][0],
            a[1][1] + b[1][1],
        )
    }
}

impl Sub for Matrix2c {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let (a, b) = (self.0, rhs.0);
        Self::new(
            a[0][0] - b[0][0],
            a[0][1] - b[0][1],
            a[1][0] - b[1][0],
            a[1][1] - b[1][1],
        )
    }
}

impl Mul for Matrix2c {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let (a, b) = (self.0, rhs.0);
        Self::new(
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        )
    }
}
