//! Antisymmetric tensor calculus over the reals.
//!
//! The crate builds up in three layers:
//!
//! * [`tensor`] — dense multi-way arrays with outer products along mode
//!   assignments, contractive products and homogeneous form evaluation.
//! * [`grassmann`] — the antisymmetrizer, Grassmann tensors of vector
//!   families (determinant-minor coordinates), wedge products and the
//!   compact Plücker-coordinate representation.
//! * [`multiview`] — projective applications: 4×4 line matrices and their
//!   equivalence, planes through points, plane intersection, epipolar
//!   residuals, leave-one-out wedge families and polytope surface tests.
//!
//! [`io`] adds the canonical JSON/CSV interchange formats used by the
//! command-line tool, and [`linalg`] holds the small elimination kernels
//! everything else borrows.
//!
//! The `book/` directory of the repository walks through the theory with
//! runnable examples; every snippet there compiles and runs as a doc-test
//! of this crate.
//!
//! ```
//! use plucker::grassmann::grassmann_from_vectors;
//! use plucker::tensor::poly_eval;
//!
//! // Wedge three vectors in R^4 and watch the associated cubic form vanish.
//! let t = grassmann_from_vectors(&[
//!     vec![1.0, 2.0, 0.0, -1.0],
//!     vec![0.0, 1.0, 1.0, 2.0],
//!     vec![3.0, 0.0, 1.0, 0.0],
//! ])?;
//! let value = poly_eval(&t.to_dense()?, &[0.3, -0.7, 1.1, 0.5])?;
//! assert!(value.abs() < 1e-12);
//! # Ok::<(), plucker::Error>(())
//! ```

pub mod error;
pub mod grassmann;
pub mod io;
pub mod linalg;
pub mod multiview;
pub mod tensor;

pub use error::{Error, Result};
pub use grassmann::AntisymTensor;
pub use multiview::{PlueckerMatrix, Polytope, WedgeFamily};
pub use tensor::{DenseTensor, ModeAssignment};

// Every fenced Rust block in the book runs as a doc-test of this crate, so
// the guide cannot drift from the API.
#[cfg(doctest)]
mod book {
    macro_rules! chapter {
        ($name:ident, $path:literal) => {
            #[doc = include_str!($path)]
            pub struct $name;
        };
    }

    chapter!(Introduction, "../../../book/src/introduction.md");
    chapter!(DenseTensors, "../../../book/src/tensors.md");
    chapter!(GrassmannTensors, "../../../book/src/grassmann.md");
    chapter!(LinesAndPlanes, "../../../book/src/lines-and-planes.md");
    chapter!(Polytopes, "../../../book/src/polytopes.md");
    chapter!(CommandLine, "../../../book/src/cli.md");
}
