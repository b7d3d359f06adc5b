use num_complex::Complex64;

use crate::error::{GafError, Result};
use crate::linalg::CMatrix;

pub const MAX_PERMANENT_DIM: usize = 20;

/// Permanent by Ryser's formula, visiting column subsets in Gray-code order
/// so each step updates the row sums by one column.
pub fn permanent(a: &CMatrix) -> Result<Complex64> {
    let n = a.dim();
    if n > MAX_PERMANENT_DIM {
        return Err(GafError::SizeLimit {
            n,
            max: MAX_PERMANENT_DIM,
        });
    }
    if n == 0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let mut row_sums = vec![Complex64::new(0.0, 0.0); n];
    let mut in_set = vec![false; n];
    let mut size = 0usize;
    let mut total = Complex64::new(0.0, 0.0);
    for k in 1u64..(1u64 << n) {
        let j = k.trailing_zeros() as usize;
        if in_set[j] {
            for (i, s) in row_sums.iter_mut().enumerate() {
                *s -= a[(i, j)];
            }
            size -= 1;
        } else {
            for (i, s) in row_sums.iter_mut().enumerate() {
                *s += a[(i, j)];
            }
            size += 1;
        }
        in_set[j] = !in_set[j];
        let prod: Complex64 = row_sums.iter().product();
        if size.is_multiple_of(2) {
            total += prod;
        } else {
            total -= prod;
        }
    }
    Ok(if n.is_multiple_of(2) { total } else { -total })
}
