//! Built-in problem instances backing the named demos.
//!
//! The data lives here as code so the binary reproduces every scenario
//! without external files; the shipped JSON problem files are generated
//! from these constructors and stay byte-compatible with them.

use crate::functional::FunctionalSpec;
use crate::problem::{BasisDef, ProblemFile, SpecDef};

fn unit_ball_spec(dim: usize) -> SpecDef {
    SpecDef::NormPlusLinear {
        linear_part: vec![0.0; dim],
        matrix_part: (0..dim)
            .map(|i| {
                let mut row = vec![0.0; dim];
                row[i] = 1.0;
                row
            })
            .collect(),
    }
}

fn basis_row(dim: usize, i: usize) -> Vec<f64> {
    let mut row = vec![0.0; dim];
    row[i] = 1.0;
    row
}

/// The planar pair where both order conditions hold yet no sandwiched
/// extension exists: `S` the euclidean norm, `P(y) = y_2 - |y_1|`, and
/// `f0(e_1) = 1` on the first axis.
pub fn example_4_1() -> ProblemFile {
    ProblemFile {
        dim: 2,
        s: Some(unit_ball_spec(2)),
        p: Some(SpecDef::LinearMinusNorm {
            linear_part: vec![0.0, 1.0],
            matrix_part: vec![vec![1.0, 0.0]],
        }),
        m: Some(BasisDef {
            basis: vec![basis_row(2, 0)],
        }),
        f0: Some(vec![1.0]),
        e1: None,
        order: None,
    }
}

/// The four-dimensional pair that admits no sandwiched extension on the
/// whole space but does on the hyperplane `x_4 = 0`: `S` the euclidean
/// norm, `P(y) = y_4 - |(y_1, y_2, y_3)|`, and `f0(e_1) = 1`.
pub fn example_4_2() -> ProblemFile {
    let mut pf = example_4_2_ambient();
    pf.e1 = Some(BasisDef {
        basis: (0..3).map(|i| basis_row(4, i)).collect(),
    });
    pf
}

/// The same pair without the restriction, for the refusal half.
pub fn example_4_2_ambient() -> ProblemFile {
    ProblemFile {
        dim: 4,
        s: Some(unit_ball_spec(4)),
        p: Some(SpecDef::LinearMinusNorm {
            linear_part: vec![0.0, 0.0, 0.0, 1.0],
            matrix_part: (0..3).map(|i| basis_row(4, i)).collect(),
        }),
        m: Some(BasisDef {
            basis: vec![basis_row(4, 0)],
        }),
        f0: Some(vec![1.0]),
        e1: None,
        order: None,
    }
}

/// Norm against reflected norm: the convolution collapses to `S` itself.
pub fn lemma_4_2_pair(dim: usize) -> (FunctionalSpec, FunctionalSpec) {
    let s = FunctionalSpec::euclidean_norm(dim);
    let p = s.dual_negate();
    (s, p)
}

/// The classical single-bound setup: the euclidean norm with a seed point
/// on the first axis.
pub fn classical_norm_problem(dim: usize) -> ProblemFile {
    ProblemFile {
        dim,
        s: Some(unit_ball_spec(dim)),
        p: None,
        m: None,
        f0: None,
        e1: None,
        order: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn built_in_problems_resolve() {
        let r1 = example_4_1().resolve().unwrap();
        assert_eq!(r1.s.dim(), 2);
        assert_eq!(r1.f0.subspace().rank(), 1);

        let r2 = example_4_2().resolve().unwrap();
        assert_eq!(r2.s.dim(), 4);
        let e1 = r2.restriction.expect("restriction present");
        assert_eq!(e1.rank(), 3);
        assert!(r2.f0.subspace().is_subspace_of(&e1));

        assert!(example_4_2_ambient().resolve().unwrap().restriction.is_none());
    }

    #[test]
    fn the_pairs_evaluate_as_stated() {
        let r1 = example_4_1().resolve().unwrap();
        let y = crate::vector::Vector::new(vec![3.0, 4.0]);
        assert!((r1.s.eval(&y) - 5.0).abs() < 1e-12);
        assert!((r1.p.eval(&y) - 1.0).abs() < 1e-12, "4 - |3| = 1");

        let r2 = example_4_2_ambient().resolve().unwrap();
        let z = crate::vector::Vector::new(vec![3.0, 0.0, 4.0, 2.0]);
        assert!((r2.s.eval(&z) - 29.0f64.sqrt()).abs() < 1e-12);
        assert!((r2.p.eval(&z) - (2.0 - 5.0)).abs() < 1e-12);
    }
}
