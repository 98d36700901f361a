use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::iter::Sum;
use std::str::FromStr;

use num_traits::{PrimInt, Unsigned};

/// Edge weight scalar: any unsigned primitive integer.
///
/// Instances are validated so that the sum of all matrix entries stays below
/// `i64::MAX`; internal totals are accumulated in `u128` and matching duals in
/// `i128`, so no intermediate can overflow.
pub trait Weight:
    PrimInt + Unsigned + Sum + Hash + Debug + Display + FromStr + Send + Sync + 'static
{
    fn wide(self) -> u128 {
        self.to_u128().expect("unsigned weight fits u128")
    }

    /// Narrow a total that is known to be bounded by the instance sum.
    fn from_wide(v: u128) -> Self {
        Self::from(v).expect("total bounded by validated instance sum")
    }
}

impl<T> Weight for T where
    T: PrimInt + Unsigned + Sum + Hash + Debug + Display + FromStr + Send + Sync + 'static
{
}

/// Sum a stream of weights without overflow.
pub fn wide_sum<W: Weight, I: IntoIterator<Item = W>>(it: I) -> u128 {
    it.into_iter().map(Weight::wide).sum()
}
