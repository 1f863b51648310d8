//! Exact evaluation of closed decorated sl(N) foams.

pub mod foamcore;
pub mod foameval;
pub mod foamzoo;
pub mod moyflag;
pub mod polyring;
pub mod schur;

pub use foamcore::{ArcKind, BindingArc, Coloring, Decoration, Facet, Foam, FoamError, SingularPoint, ValidationReport};
pub use foameval::{eval, eval_colored, eval_lincomb, eval_with, EvalError, EvalOptions, FoamLinComb};
pub use polyring::{MultiPoly, PolyError, RationalFn};
pub use schur::{Convention, SchurCombo, SchurError, VarSet, YoungDiagram};
