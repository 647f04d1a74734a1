//! Z2 degrees and the sign rule.
//!
//! Every sign in the crate is produced here: exchanging two adjacent graded
//! symbols of parities `a` and `b` costs `(-1)^(ab)`, and reordering a whole
//! string of symbols costs the product over its inversions.

use std::fmt;
use std::ops::{Add, AddAssign};

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    #[default]
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(bit: u32) -> Parity {
        if bit % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn bit(self) -> u32 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        Parity::from_bit(self.bit() + rhs.bit())
    }
}

impl AddAssign for Parity {
    fn add_assign(&mut self, rhs: Parity) {
        *self = *self + rhs;
    }
}

impl std::iter::Sum for Parity {
    fn sum<I: Iterator<Item = Parity>>(iter: I) -> Parity {
        iter.fold(Parity::Even, |a, b| a + b)
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// A sign `±1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Sign(bool);

impl Sign {
    pub const PLUS: Sign = Sign(false);
    pub const MINUS: Sign = Sign(true);

    pub fn is_minus(self) -> bool {
        self.0
    }

    pub fn to_i64(self) -> i64 {
        if self.0 {
            -1
        } else {
            1
        }
    }

    /// `(-1)^p`.
    pub fn pow(p: Parity) -> Sign {
        Sign(p.is_odd())
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        Sign(self.0 ^ rhs.0)
    }
}

impl std::ops::MulAssign for Sign {
    fn mul_assign(&mut self, rhs: Sign) {
        self.0 ^= rhs.0;
    }
}

impl std::ops::Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        Sign(!self.0)
    }
}

/// Cost of exchanging two adjacent symbols: `(-1)^(|a||b|)`.
pub fn koszul(a: Parity, b: Parity) -> Sign {
    Sign(a.is_odd() && b.is_odd())
}

/// Sign acquired by rearranging the symbol string with parities `parities`
/// into the order `order` (a permutation of `0..parities.len()`, listing
/// which original symbol ends up in each slot).
pub fn reorder(parities: &[Parity], order: &[usize]) -> Sign {
    debug_assert_eq!(parities.len(), order.len());
    let mut s = Sign::PLUS;
    for i in 0..order.len() {
        for j in i + 1..order.len() {
            if order[i] > order[j] {
                s *= koszul(parities[order[i]], parities[order[j]]);
            }
        }
    }
    s
}

/// Sign of moving a symbol of parity `a` past all of `others`.
pub fn pass(a: Parity, others: &[Parity]) -> Sign {
    koszul(a, others.iter().copied().sum())
}
