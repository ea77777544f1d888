//! Scalar abstraction: the whole crate is generic over the floating type.

use num_traits::{Float, FromPrimitive, ToPrimitive};
use std::fmt::{Debug, Display};
use std::iter::Sum;

/// Floating scalar the solver runs on. Implemented for `f32` and `f64`.
pub trait Real:
    Float + FromPrimitive + ToPrimitive + Sum + Debug + Display + Send + Sync + 'static
{
    /// Lossy conversion from `f64`, for literals and tolerances.
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal not representable in this scalar type")
    }

    /// Conversion to `f64` for reporting and serialization.
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().expect("scalar not representable as f64")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// |x|^e with fast paths for the exponents the solver actually hits.
///
/// All call sites (operator rows, seminorms, reference oracles) must go
/// through this function so that identical inputs produce identical bits.
#[inline]
pub(crate) fn abs_pow<T: Real>(x: T, e: T) -> T {
    let ax = x.abs();
    if e == T::zero() {
        T::one()
    } else if e == T::one() {
        ax
    } else if e == T::of(2.0) {
        ax * ax
    } else if e == T::of(0.5) {
        ax.sqrt()
    } else if e == T::of(-0.5) {
        ax.sqrt().recip()
    } else {
        ax.powf(e)
    }
}

/// Running compensated sum (Neumaier variant of Kahan summation).
///
/// Used wherever a fixed, order-independent-of-thread-count reduction is
/// required: rows are summed left to right, row results are folded
/// sequentially.
#[derive(Clone, Copy, Debug)]
pub(crate) struct CompensatedSum<T> {
    sum: T,
    compensation: T,
}

impl<T: Real> CompensatedSum<T> {
    pub fn new() -> Self {
        Self {
            sum: T::zero(),
            compensation: T::zero(),
        }
    }

    #[inline]
    pub fn add(&mut self, value: T) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation = self.compensation + ((self.sum - t) + value);
        } else {
            self.compensation = self.compensation + ((value - t) + self.sum);
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> T {
        self.sum + self.compensation
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abs_pow_matches_powf() {
        for &x in &[-3.25f64, -1.0, 0.0, 0.5, 2.0, 10.0] {
            for &e in &[0.0f64, 0.5, 1.0, 1.3, 2.0, 2.7] {
                let fast = abs_pow(x, e);
                let slow = x.abs().powf(e);
                assert!(
                    (fast - slow).abs() <= 1e-15 * slow.abs().max(1.0),
                    "x={x} e={e}: {fast} vs {slow}"
                );
            }
        }
    }

    #[test]
    fn compensated_sum_beats_naive() {
        let mut c = CompensatedSum::<f64>::new();
        let mut naive = 0.0f64;
        let xs = [1e16, 1.0, -1e16, 1.0];
        for &x in &xs {
            c.add(x);
            naive += x;
        }
        assert_eq!(c.value(), 2.0);
        assert_ne!(naive, 2.0);
    }
}
