//! Seeded random inputs for property suites and randomized case studies.
//!
//! Everything draws from [`ChaCha8Rng`] so a seed reproduces the same inputs
//! on every platform.

use std::sync::Arc;

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::hilbert::{HilbertSpace, Ket, Operator, C64};

pub type SeededRng = ChaCha8Rng;

pub const DEFAULT_SEED: u64 = 42;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Real and imaginary parts uniform in `[-1, 1)`.
pub fn complex<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

pub fn matrix<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> DMatrix<C64> {
    DMatrix::from_fn(rows, cols, |_, _| complex(rng))
}

/// A normalized ket with random complex amplitudes.
pub fn ket<R: Rng + ?Sized>(space: Arc<HilbertSpace>, rng: &mut R) -> Ket {
    loop {
        let amps = (0..space.dim()).map(|_| complex(rng)).collect();
        let k = Ket::new(space.clone(), amps).expect("dimension matches by construction");
        if let Ok(n) = k.normalized() {
            return n;
        }
    }
}

/// A random unitary from the QR factorization of a random complex matrix.
pub fn unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> DMatrix<C64> {
    let qr = matrix(dim, dim, rng).qr();
    let q = qr.q();
    let r = qr.r();
    // absorb the phases of diag(R) into Q
    let mut u = q;
    for j in 0..dim {
        let d = r[(j, j)];
        if d.norm() > 0.0 {
            let phase = d / d.norm();
            for i in 0..dim {
                u[(i, j)] *= phase;
            }
        }
    }
    u
}

pub fn hermitian<R: Rng + ?Sized>(space: Arc<HilbertSpace>, rng: &mut R) -> Operator {
    let n = space.dim();
    let m = matrix(n, n, rng);
    let h = (&m + m.adjoint()) * C64::new(0.5, 0.0);
    Operator::new(space, h).expect("dimension matches by construction")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unitary_is_unitary() {
        let mut rng = seeded(7);
        for dim in 1..5 {
            let u = unitary(dim, &mut rng);
            let err = (&u.adjoint() * &u - DMatrix::<C64>::identity(dim, dim)).norm();
            assert!(err < 1e-12, "dim {dim}: {err}");
        }
    }

    #[test]
    fn same_seed_same_draws() {
        let a = ket(HilbertSpace::indexed(3), &mut seeded(3));
        let b = ket(HilbertSpace::indexed(3), &mut seeded(3));
        assert_eq!(a, b);
        assert!(a.is_normalized(1e-12));
    }
}
