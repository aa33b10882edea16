//! Small named presentations used across tests, docs and the demo.

use crate::dsl::parse;
use crate::quiver::MonomialPresentation;

pub const FIG1: &str = "quiver fig1 {
  vertices: 1 2 3;
  arrows: alpha: 1 -> 2, beta: 1 -> 2, gamma: 2 -> 3, delta: 2 -> 3;
  relations: delta*beta;
}
";

/// Cyclic quiver on two vertices with all paths of length 2 killed.
pub const NAK2: &str = "quiver nak2 {
  vertices: 1 2;
  arrows: a1: 1 -> 2, a2: 2 -> 1;
  relations: a2*a1, a1*a2;
}
";

pub const A2: &str = "quiver a2 {
  vertices: 1 2;
  arrows: alpha: 1 -> 2;
  relations:;
}
";

pub const POINT: &str = "quiver point {
  vertices: 1;
  arrows:;
  relations:;
}
";

/// `K[x]/(x^2)`.
pub const LOOP2: &str = "quiver loop2 {
  vertices: 1;
  arrows: x: 1 -> 1;
  relations: x*x;
}
";

/// `K[x]`, infinite-dimensional.
pub const KX: &str = "quiver kx {
  vertices: 1;
  arrows: x: 1 -> 1;
  relations:;
}
";

pub const ALL: &[&str] = &[FIG1, NAK2, A2, POINT, LOOP2, KX];

pub fn fig1() -> MonomialPresentation {
    parse(FIG1).expect("fixture")
}

pub fn nak2() -> MonomialPresentation {
    parse(NAK2).expect("fixture")
}

pub fn a2() -> MonomialPresentation {
    parse(A2).expect("fixture")
}

pub fn point() -> MonomialPresentation {
    parse(POINT).expect("fixture")
}

pub fn loop2() -> MonomialPresentation {
    parse(LOOP2).expect("fixture")
}

pub fn kx() -> MonomialPresentation {
    parse(KX).expect("fixture")
}
