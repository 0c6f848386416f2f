//! Small algebras used by tests, examples and the bundled workspace files.

use crate::linalg::Field;

use super::path_algebra::{FinDimAlgebra, Relation};
use super::quiver::Quiver;

/// `1 -alpha-> 2 -beta-> 3` with `alpha*beta = 0`, over F2.
pub fn a3r() -> FinDimAlgebra {
    let q = Quiver::new(
        vec!["1".into(), "2".into(), "3".into()],
        vec![("alpha".into(), "1".into(), "2".into()), ("beta".into(), "2".into(), "3".into())],
    )
    .expect("valid quiver");
    FinDimAlgebra::path_algebra(q, vec![Relation::monomial(Field::F2, vec![0, 1])], Field::F2)
        .expect("finite dimensional")
}

/// `1 -alpha-> 2` over F2.
pub fn a2() -> FinDimAlgebra {
    let q = Quiver::new(vec!["1".into(), "2".into()], vec![("alpha".into(), "1".into(), "2".into())])
        .expect("valid quiver");
    FinDimAlgebra::path_algebra(q, vec![], Field::F2).expect("finite dimensional")
}

/// The linear `A_n` quiver without relations over `field`.
pub fn linear(n: usize, field: Field) -> FinDimAlgebra {
    FinDimAlgebra::path_algebra(Quiver::linear(n), vec![], field).expect("finite dimensional")
}
