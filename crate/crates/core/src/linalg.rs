//! Dense complex linear algebra helpers.

use nalgebra::{DMatrix, DVector};

use crate::scalar::{Scalar, SINGULAR};

fn pivots_ok(lu: &nalgebra::linalg::FullPivLU<Scalar, nalgebra::Dyn, nalgebra::Dyn>) -> bool {
    let u = lu.u();
    let n = u.nrows().min(u.ncols());
    if n == 0 {
        return true;
    }
    let big = (0..n).map(|i| u[(i, i)].norm()).fold(0.0, f64::max);
    (0..n).all(|i| u[(i, i)].norm() > SINGULAR * big.max(1.0))
}

pub fn inverse(m: &DMatrix<Scalar>) -> Option<DMatrix<Scalar>> {
    if m.nrows() != m.ncols() {
        return None;
    }
    let lu = m.clone().full_piv_lu();
    if !pivots_ok(&lu) {
        return None;
    }
    lu.try_inverse()
}

pub fn solve(m: &DMatrix<Scalar>, b: &DVector<Scalar>) -> Option<DVector<Scalar>> {
    let lu = m.clone().full_piv_lu();
    if !pivots_ok(&lu) {
        return None;
    }
    lu.solve(b)
}

/// Numerical rank from singular values.
pub fn rank(m: &DMatrix<Scalar>, tol: f64) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    let sv = m.clone().svd(false, false).singular_values;
    let top = sv.iter().cloned().fold(0.0, f64::max);
    sv.iter().filter(|&&s| s > tol * top.max(1.0)).count()
}
