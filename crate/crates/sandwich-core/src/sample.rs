//! Seeded random vectors for sampled checks.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::subspace::Subspace;
use crate::vector::Vector;

/// Deterministic vector source. Coordinates are uniform on `[-radius, radius]`
/// with a 10% admixture of special cases (axis-aligned and sparse vectors)
/// that exercise the kinks of the functionals.
pub struct VectorSampler {
    rng: ChaCha8Rng,
    radius: f64,
}

impl VectorSampler {
    pub fn new(seed: u64) -> Self {
        Self::with_radius(seed, 10.0)
    }

    pub fn with_radius(seed: u64, radius: f64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            radius,
        }
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// A scaling factor for homogeneity checks, uniform on (0, 4].
    pub fn alpha(&mut self) -> f64 {
        loop {
            let a: f64 = self.rng.gen_range(0.0..=4.0);
            if a > 1e-6 {
                return a;
            }
        }
    }

    /// Raw coordinates, uniform without special cases.
    pub fn coords(&mut self, k: usize) -> Vec<f64> {
        (0..k).map(|_| self.rng.gen_range(-self.radius..=self.radius)).collect()
    }

    /// A vector of the ambient space.
    pub fn ambient(&mut self, dim: usize) -> Vector {
        if self.rng.gen_bool(0.10) {
            return self.special(dim);
        }
        Vector::new(self.coords(dim))
    }

    fn special(&mut self, dim: usize) -> Vector {
        if self.rng.gen_bool(0.5) {
            // Axis-aligned at full radius.
            let i = self.rng.gen_range(0..dim);
            let sign = if self.rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            Vector::basis(dim, i).scale(sign * self.radius)
        } else {
            // Sparse: each coordinate survives with probability 1/2.
            let mut coords = self.coords(dim);
            for c in coords.iter_mut() {
                if self.rng.gen_bool(0.5) {
                    *c = 0.0;
                }
            }
            Vector::new(coords)
        }
    }

    /// A nonzero unit vector of the ambient space.
    pub fn unit(&mut self, dim: usize) -> Vector {
        loop {
            if let Some(u) = self.ambient(dim).normalized(1e-9) {
                return u;
            }
        }
    }

    /// A point of the subspace, as orthonormal coordinates plus the embedded
    /// vector. Subspaces of rank zero yield the origin.
    pub fn subspace_point(&mut self, m: &Subspace) -> (Vec<f64>, Vector) {
        let k = m.rank();
        if k == 0 {
            return (Vec::new(), Vector::zeros(m.ambient_dim()));
        }
        let t = if self.rng.gen_bool(0.10) {
            let i = self.rng.gen_range(0..k);
            let sign = if self.rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            let mut t = vec![0.0; k];
            t[i] = sign * self.radius;
            t
        } else {
            self.coords(k)
        };
        let x = m.point_from_ortho(&t);
        (t, x)
    }

    /// A unit vector inside the subspace; `None` for the zero subspace.
    pub fn subspace_unit(&mut self, m: &Subspace) -> Option<Vector> {
        if m.rank() == 0 {
            return None;
        }
        loop {
            let (_, x) = self.subspace_point(m);
            if let Some(u) = x.normalized(1e-9) {
                return Some(u);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_per_seed() {
        let mut a = VectorSampler::new(42);
        let mut b = VectorSampler::new(42);
        for _ in 0..100 {
            assert_eq!(a.ambient(3), b.ambient(3));
        }
    }

    #[test]
    fn stays_in_the_box() {
        let mut s = VectorSampler::new(1);
        for _ in 0..500 {
            let v = s.ambient(4);
            assert!(v.iter().all(|c| c.abs() <= 10.0 + 1e-12));
        }
    }

    #[test]
    fn subspace_points_are_members() {
        let m = Subspace::new(
            3,
            vec![Vector::new(vec![1.0, 1.0, 0.0]), Vector::new(vec![0.0, 0.0, 2.0])],
        )
        .unwrap();
        let mut s = VectorSampler::new(9);
        for _ in 0..200 {
            let (_, x) = s.subspace_point(&m);
            assert!(m.contains(&x));
        }
    }
}
