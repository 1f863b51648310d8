//! Fixtures shared by the benches.

use slnfoam::foamzoo::{build_gen_theta_closed, build_suspension, build_theta, GenThetaDecorations};
use slnfoam::schur::{SchurCombo, YoungDiagram};
use slnfoam::Foam;

/// The theta foam `θ(a, b)` at `N = a + b` with the decoration that makes it nonzero.
pub fn delta_theta(a: usize, b: usize) -> Foam {
    let beta = SchurCombo::single(b, YoungDiagram::rect(b, a));
    build_theta(a, b, &SchurCombo::one(a), &beta, &SchurCombo::one(a + b), a + b).expect("valid theta")
}

/// The suspension of the tetrahedral web with unit labels at rank `n`.
pub fn suspension(n: usize) -> Foam {
    build_suspension(1, 1, 1, &Default::default(), n).expect("valid suspension")
}

/// The undecorated generalized theta over `θ(1, ..., 1)` with `k` strands.
pub fn unit_gen_theta(k: usize) -> Foam {
    build_gen_theta_closed(&vec![1; k], &GenThetaDecorations::trivial(k)).expect("valid theta")
}
