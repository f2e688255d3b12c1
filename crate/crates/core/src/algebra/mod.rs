//! Exact linear algebra: field scalars, dense matrices over Q and F_p,
//! integer matrices and their Smith normal form.

mod int_matrix;
mod matrix;
mod scalar;

pub use int_matrix::{IntMatrix, SmithNormalForm};
pub use matrix::{Matrix, Rref};
pub use scalar::{is_prime, FieldSpec, Scalar};

/// Smith normal form of an integer matrix, with transforms when requested.
pub fn smith_normal_form(m: &IntMatrix, with_transforms: bool) -> SmithNormalForm {
    if with_transforms {
        m.smith_normal_form_with_transforms()
    } else {
        m.smith_normal_form()
    }
}
