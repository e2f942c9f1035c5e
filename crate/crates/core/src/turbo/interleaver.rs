//! Row-column block interleaver: data is written row by row into a
//! `rows x cols` array and read out column by column.

use crate::error::{Error, Result};

fn check_geometry(len: usize, rows: usize, cols: usize) -> Result<()> {
    if rows == 0 || cols == 0 {
        return Err(Error::param(
            "interleaver",
            "rows and cols must be positive",
        ));
    }
    Error::check_len("interleaver input", rows * cols, len)
}

/// `output[c * rows + r] = input[r * cols + c]`.
pub fn interleave<T: Clone>(input: &[T], rows: usize, cols: usize) -> Result<Vec<T>> {
    check_geometry(input.len(), rows, cols)?;
    Ok((0..cols)
        .flat_map(|c| (0..rows).map(move |r| r * cols + c))
        .map(|i| input[i].clone())
        .collect())
}

/// Inverse of [`interleave`] for the same geometry.
pub fn deinterleave<T: Clone>(input: &[T], rows: usize, cols: usize) -> Result<Vec<T>> {
    // reading column-major is the row-column interleaver with swapped geometry
    interleave(input, cols, rows)
}

/// Precomputed permutation for repeated use inside the decoder loop.
#[derive(Debug, Clone)]
pub struct RowColumnInterleaver {
    /// `forward[j]` is the input index that lands at output position `j`.
    forward: Vec<usize>,
}

impl RowColumnInterleaver {
    pub fn new(rows: usize, cols: usize) -> Result<Self> {
        let identity: Vec<usize> = (0..rows * cols).collect();
        Ok(Self {
            forward: interleave(&identity, rows, cols)?,
        })
    }

    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }

    pub fn interleave_into<T: Copy>(&self, input: &[T], out: &mut [T]) {
        debug_assert_eq!(input.len(), self.len());
        for (o, &src) in out.iter_mut().zip(&self.forward) {
            *o = input[src];
        }
    }

    pub fn deinterleave_into<T: Copy>(&self, input: &[T], out: &mut [T]) {
        debug_assert_eq!(input.len(), self.len());
        for (&v, &dst) in input.iter().zip(&self.forward) {
            out[dst] = v;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn two_by_three() {
        let x = ['a', 'b', 'c', 'd', 'e', 'f'];
        let y = interleave(&x, 2, 3).unwrap();
        assert_eq!(y, vec!['a', 'd', 'b', 'e', 'c', 'f']);
        assert_eq!(deinterleave(&y, 2, 3).unwrap(), x.to_vec());
    }

    #[test]
    fn degenerate_geometries_are_identity() {
        let x: Vec<u32> = (0..7).collect();
        assert_eq!(interleave(&x, 1, 7).unwrap(), x);
        assert_eq!(deinterleave(&x, 7, 1).unwrap(), x);
    }

    #[test]
    fn rejects_length_mismatch() {
        assert!(interleave(&[1, 2, 3], 2, 2).is_err());
        assert!(deinterleave(&[1, 2, 3], 2, 2).is_err());
        assert!(interleave::<u8>(&[], 0, 3).is_err());
    }

    #[test]
    fn precomputed_matches_functions() {
        let p = RowColumnInterleaver::new(25, 40).unwrap();
        let x: Vec<u32> = (0..1000).map(|i| i * 7 % 1013).collect();
        let mut y = vec![0; 1000];
        p.interleave_into(&x, &mut y);
        assert_eq!(y, interleave(&x, 25, 40).unwrap());
        let mut z = vec![0; 1000];
        p.deinterleave_into(&y, &mut z);
        assert_eq!(z, x);
    }

    proptest! {
        #[test]
        fn mutually_inverse(x in proptest::collection::vec(any::<u16>(), 1000)) {
            let y = interleave(&x, 25, 40).unwrap();
            prop_assert_eq!(&deinterleave(&y, 25, 40).unwrap(), &x);
            let z = deinterleave(&x, 25, 40).unwrap();
            prop_assert_eq!(&interleave(&z, 25, 40).unwrap(), &x);
        }

        #[test]
        fn inverse_for_any_geometry(rows in 1usize..12, cols in 1usize..12, seed in any::<u64>()) {
            let x: Vec<u64> = (0..(rows * cols) as u64).map(|i| i.wrapping_mul(seed | 1)).collect();
            let y = interleave(&x, rows, cols).unwrap();
            for r in 0..rows {
                for c in 0..cols {
                    prop_assert_eq!(y[c * rows + r], x[r * cols + c]);
                }
            }
            prop_assert_eq!(deinterleave(&y, rows, cols).unwrap(), x);
        }
    }
}
