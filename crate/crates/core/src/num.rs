use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_traits::{PrimInt, Unsigned};

/// Unsigned machine integer usable as a natural number.
///
/// All operations built on this trait use checked arithmetic and report
/// [`CvtError::Overflow`](crate::CvtError::Overflow) instead of wrapping.
pub trait Natural: PrimInt + Unsigned + Debug + Display + Hash + Send + Sync + 'static {
    /// Bit width of the representation.
    const BITS: u32;
}

macro_rules! impl_natural {
    ($($t:ty),*) => {
        $(impl Natural for $t {
            const BITS: u32 = <$t>::BITS;
        })*
    };
}

impl_natural!(u8, u16, u32, u64, u128, usize);
