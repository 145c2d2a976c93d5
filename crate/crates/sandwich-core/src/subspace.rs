//! Subspaces of `R^n` and linear functionals defined on them.

use crate::error::Error;
use crate::vector::Vector;

/// Relative tolerance used for membership and dependence decisions.
pub const MEMBERSHIP_TOL: f64 = 1e-9;

/// A linear subspace `M` of `R^n`, stored as the user's basis together with an
/// orthonormalized copy (stabilized Gram-Schmidt with one re-orthogonalization
/// pass) and the triangular change-of-basis factor between the two.
#[derive(Clone, Debug)]
pub struct Subspace {
    dim: usize,
    basis: Vec<Vector>,
    ortho: Vec<Vector>,
    /// `r[i][j] = <q_i, b_j>` for `i <= j`; upper triangular with positive diagonal.
    r: Vec<Vec<f64>>,
}

impl Subspace {
    /// Build a subspace from a list of basis vectors. The list may be empty
    /// (the zero subspace); a vector that is linearly dependent on its
    /// predecessors is rejected.
    pub fn new(dim: usize, basis: Vec<Vector>) -> Result<Self, Error> {
        if dim == 0 {
            return Err(Error::InvalidInput("ambient dimension must be at least 1".into()));
        }
        if basis.len() > dim {
            return Err(Error::InvalidInput(format!(
                "{} basis vectors cannot be independent in dimension {}",
                basis.len(),
                dim
            )));
        }
        let mut ortho: Vec<Vector> = Vec::with_capacity(basis.len());
        for (index, b) in basis.iter().enumerate() {
            b.check_dim(dim)?;
            let mut v = b.clone();
            // Two projection passes keep the copy orthonormal even for nearly
            // dependent inputs.
            for _ in 0..2 {
                for q in &ortho {
                    let c = v.dot(q);
                    v = v.axpy(-c, q);
                }
            }
            let residual = v.norm();
            if residual <= MEMBERSHIP_TOL * b.norm().max(1.0) {
                return Err(Error::DependentBasis { index, residual });
            }
            ortho.push(v.scale(1.0 / residual));
        }
        let r = (0..basis.len())
            .map(|i| {
                (0..basis.len())
                    .map(|j| if i <= j { ortho[i].dot(&basis[j]) } else { 0.0 })
                    .collect()
            })
            .collect();
        let out = Self { dim, basis, ortho, r };
        debug_assert!(out.spans_match());
        Ok(out)
    }

    /// The zero subspace of `R^dim`.
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            basis: Vec::new(),
            ortho: Vec::new(),
            r: Vec::new(),
        }
    }

    /// The whole space, presented by the standard basis.
    pub fn full(dim: usize) -> Self {
        let basis = (0..dim).map(|i| Vector::basis(dim, i)).collect();
        Self::new(dim, basis).expect("standard basis is independent")
    }

    pub fn span(dim: usize, vectors: Vec<Vector>) -> Result<Self, Error> {
        Self::new(dim, vectors)
    }

    fn spans_match(&self) -> bool {
        // Both bases must reconstruct each other within the membership
        // tolerance; Gram-Schmidt guarantees it, this is a tripwire.
        self.basis
            .iter()
            .chain(self.ortho.iter())
            .all(|v| self.membership(v).0)
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// Number of basis vectors.
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn orthonormal_basis(&self) -> &[Vector] {
        &self.ortho
    }

    /// Orthogonal projection onto the subspace.
    pub fn project(&self, x: &Vector) -> Vector {
        let mut p = Vector::zeros(self.dim);
        for q in &self.ortho {
            p = p.axpy(x.dot(q), q);
        }
        p
    }

    /// Membership test: returns the decision and the absolute projection
    /// residual `|x - proj(x)|`. The decision is relative:
    /// `residual < 1e-9 * max(1, |x|)`.
    pub fn membership(&self, x: &Vector) -> (bool, f64) {
        let residual = (x - &self.project(x)).norm();
        (residual < MEMBERSHIP_TOL * x.norm().max(1.0), residual)
    }

    pub fn contains(&self, x: &Vector) -> bool {
        self.membership(x).0
    }

    /// Coordinates of `x` in the orthonormal basis.
    pub fn ortho_coords(&self, x: &Vector) -> Vec<f64> {
        self.ortho.iter().map(|q| q.dot(x)).collect()
    }

    /// The point `sum_k t_k q_k` for coordinates in the orthonormal basis.
    pub fn point_from_ortho(&self, t: &[f64]) -> Vector {
        debug_assert_eq!(t.len(), self.rank());
        let mut p = Vector::zeros(self.dim);
        for (c, q) in t.iter().zip(&self.ortho) {
            p = p.axpy(*c, q);
        }
        p
    }

    /// Coordinates of a member point in the *user* basis, via the triangular
    /// solve `R t = Q^T x`. Callers are expected to have checked membership.
    pub fn coords(&self, x: &Vector) -> Result<Vec<f64>, Error> {
        x.check_dim(self.dim)?;
        let rhs = self.ortho_coords(x);
        Ok(self.solve_upper(&rhs))
    }

    fn solve_upper(&self, rhs: &[f64]) -> Vec<f64> {
        let k = self.rank();
        let mut t = vec![0.0; k];
        for j in (0..k).rev() {
            let tail: f64 = self.r[j][j + 1..k]
                .iter()
                .zip(&t[j + 1..k])
                .map(|(r, t)| r * t)
                .sum();
            t[j] = (rhs[j] - tail) / self.r[j][j];
        }
        t
    }

    /// Solve `R^T w = f`, giving the values a functional with user-basis
    /// values `f` takes on the orthonormal basis.
    pub(crate) fn solve_upper_transposed(&self, f: &[f64]) -> Vec<f64> {
        let k = self.rank();
        let mut w = vec![0.0; k];
        for i in 0..k {
            let head: f64 = self.r[..i]
                .iter()
                .zip(&w[..i])
                .map(|(row, wj)| row[i] * wj)
                .sum();
            w[i] = (f[i] - head) / self.r[i][i];
        }
        w
    }

    /// The subspace spanned by this basis plus one more direction.
    pub fn extended(&self, v: &Vector) -> Result<Subspace, Error> {
        v.check_dim(self.dim)?;
        let (inside, residual) = self.membership(v);
        if inside {
            return Err(Error::DirectionInSubspace { residual });
        }
        let mut basis = self.basis.clone();
        basis.push(v.clone());
        Self::new(self.dim, basis)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.dim == other.dim && self.basis.iter().all(|b| other.contains(b))
    }
}

/// Membership test as a standalone operation.
pub fn subspace_membership(m: &Subspace, x: &Vector) -> Result<(bool, f64), Error> {
    x.check_dim(m.ambient_dim())?;
    Ok(m.membership(x))
}

/// A linear functional known only on a subspace, stored as its values on the
/// user basis.
#[derive(Clone, Debug)]
pub struct PartialLinearFunctional {
    subspace: Subspace,
    basis_values: Vec<f64>,
}

impl PartialLinearFunctional {
    pub fn new(subspace: Subspace, basis_values: Vec<f64>) -> Result<Self, Error> {
        if basis_values.len() != subspace.rank() {
            return Err(Error::DimensionMismatch {
                expected: subspace.rank(),
                found: basis_values.len(),
            });
        }
        Ok(Self {
            subspace,
            basis_values,
        })
    }

    /// The trivial functional on the zero subspace, the seed of the classical
    /// constructions.
    pub fn trivial(dim: usize) -> Self {
        Self {
            subspace: Subspace::zero(dim),
            basis_values: Vec::new(),
        }
    }

    pub fn subspace(&self) -> &Subspace {
        &self.subspace
    }

    pub fn basis_values(&self) -> &[f64] {
        &self.basis_values
    }

    pub fn ambient_dim(&self) -> usize {
        self.subspace.ambient_dim()
    }

    /// Evaluate at a member point; points outside the subspace are rejected
    /// with their projection residual.
    pub fn evaluate(&self, x: &Vector) -> Result<f64, Error> {
        x.check_dim(self.ambient_dim())?;
        let (inside, residual) = self.subspace.membership(x);
        if !inside {
            return Err(Error::NotInSubspace { residual });
        }
        let t = self.subspace.coords(x)?;
        Ok(t.iter().zip(&self.basis_values).map(|(a, b)| a * b).sum())
    }

    /// Values on the orthonormal basis of `M`.
    pub fn ortho_values(&self) -> Vec<f64> {
        self.subspace.solve_upper_transposed(&self.basis_values)
    }

    /// The unique coefficient vector `c` in `M` with `<c, b_k> = f(b_k)`;
    /// evaluating `x -> <c, x>` reproduces the functional on `M` and extends
    /// it by zero on the orthogonal complement.
    pub fn coefficient_vector(&self) -> Vector {
        self.subspace.point_from_ortho(&self.ortho_values())
    }

    /// Extend by one direction outside the current subspace, assigning the
    /// value `xi` to the new basis vector.
    pub fn extended(&self, direction: &Vector, xi: f64) -> Result<Self, Error> {
        let subspace = self.subspace.extended(direction)?;
        let mut basis_values = self.basis_values.clone();
        basis_values.push(xi);
        Ok(Self {
            subspace,
            basis_values,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn membership_in_a_line() {
        let m = Subspace::new(2, vec![Vector::basis(2, 0)]).unwrap();
        let (inside, residual) = m.membership(&Vector::new(vec![5.0, 0.0]));
        assert!(inside);
        assert!(residual < 1e-12);
        let (inside, residual) = m.membership(&Vector::new(vec![0.0, 1.0]));
        assert!(!inside);
        assert!((residual - 1.0).abs() < 1e-12);
    }

    #[test]
    fn membership_close_call_on_a_diagonal() {
        // x = (2, 2 + 1e-12) against span{(1,1)}: the residual is
        // 1e-12 / sqrt(2) per component, about 7.1e-13 in norm.
        let m = Subspace::new(2, vec![Vector::new(vec![1.0, 1.0])]).unwrap();
        let (inside, residual) = m.membership(&Vector::new(vec![2.0, 2.0 + 1e-12]));
        assert!(inside, "residual {residual} should pass the relative gate");
        assert!(residual > 5e-13 && residual < 9e-13, "residual {residual}");
    }

    #[test]
    fn rejects_dependent_basis() {
        let err = Subspace::new(
            3,
            vec![
                Vector::new(vec![1.0, 0.0, 0.0]),
                Vector::new(vec![2.0, 0.0, 0.0]),
            ],
        )
        .unwrap_err();
        assert!(matches!(err, Error::DependentBasis { index: 1, .. }));
    }

    #[test]
    fn orthonormal_copy_spans_the_same_space() {
        let m = Subspace::new(
            4,
            vec![
                Vector::new(vec![1.0, 1.0, 0.0, 0.0]),
                Vector::new(vec![1.0, -1.0, 2.0, 0.0]),
                Vector::new(vec![0.5, 0.25, -1.0, 3.0]),
            ],
        )
        .unwrap();
        for q in m.orthonormal_basis() {
            assert!((q.norm() - 1.0).abs() < 1e-12);
            let (_, residual) = m.membership(q);
            assert!(residual < 1e-9);
        }
        for b in m.basis() {
            let (_, residual) = m.membership(b);
            assert!(residual < 1e-9 * b.norm().max(1.0));
        }
    }

    #[test]
    fn partial_functional_evaluates_on_members_only() {
        let m = Subspace::new(4, vec![Vector::basis(4, 0)]).unwrap();
        let f0 = PartialLinearFunctional::new(m, vec![1.0]).unwrap();
        assert_eq!(
            f0.evaluate(&Vector::new(vec![10.0, 0.0, 0.0, 0.0])).unwrap(),
            10.0
        );
        assert_eq!(f0.evaluate(&Vector::zeros(4)).unwrap(), 0.0);
        assert!(matches!(
            f0.evaluate(&Vector::new(vec![1.0, 1.0, 0.0, 0.0])),
            Err(Error::NotInSubspace { .. })
        ));
    }

    #[test]
    fn basis_values_survive_extension() {
        let m = Subspace::new(
            3,
            vec![Vector::new(vec![1.0, 1.0, 0.0]), Vector::new(vec![0.0, 1.0, 1.0])],
        )
        .unwrap();
        let f0 = PartialLinearFunctional::new(m, vec![0.3, -2.5]).unwrap();
        let f1 = f0.extended(&Vector::new(vec![1.0, 0.0, 0.0]), 7.0).unwrap();
        // Coordinates go through a triangular solve, so reproduction is up to
        // roundoff rather than bit exact.
        let at = |v: Vec<f64>| f1.evaluate(&Vector::new(v)).unwrap();
        assert!((at(vec![1.0, 1.0, 0.0]) - 0.3).abs() < 1e-12);
        assert!((at(vec![0.0, 1.0, 1.0]) + 2.5).abs() < 1e-12);
        assert!((at(vec![1.0, 0.0, 0.0]) - 7.0).abs() < 1e-12);
    }

    #[test]
    fn coefficient_vector_matches_evaluation() {
        let m = Subspace::new(
            3,
            vec![Vector::new(vec![1.0, 2.0, 0.0]), Vector::new(vec![0.0, 1.0, -1.0])],
        )
        .unwrap();
        let f = PartialLinearFunctional::new(m.clone(), vec![2.0, 1.0]).unwrap();
        let c = f.coefficient_vector();
        for (b, v) in m.basis().iter().zip([2.0, 1.0]) {
            assert!((c.dot(b) - v).abs() < 1e-12);
        }
        // The canonical vector lies in M itself.
        assert!(m.contains(&c));
    }

    #[test]
    fn extending_into_the_span_is_rejected() {
        let m = Subspace::new(2, vec![Vector::basis(2, 0)]).unwrap();
        let f = PartialLinearFunctional::new(m, vec![1.0]).unwrap();
        assert!(matches!(
            f.extended(&Vector::new(vec![3.0, 0.0]), 0.0),
            Err(Error::DirectionInSubspace { .. })
        ));
    }
}
