//! Graded words, exact linear algebra and homology over ℚ.

pub mod complex;
pub mod element;
pub mod enumerate;
pub mod linalg;
pub mod space;
pub mod word;

use num_bigint::BigInt;
use num_traits::One;

pub use complex::{homology, ChainComplex, Homology};
pub use element::{EElement, Element, LinComb};
pub use enumerate::{enumerate_basis, enumerate_ewords, enumerate_words, words_of_length, Basis, Window};
pub use linalg::{solve_linear, Echelon, LinearSolution, SparseRow};
pub use space::{Generator, GradedSpace, Parity};
pub use word::{
    koszul_pass_sign, multiply_words, normalize_eword, normalize_names, normalize_word, permutation_sign, EWord,
    Sign, Word,
};

pub type Q = num_rational::BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// `p/q`, or the integer when the denominator is 1.
pub fn fmt_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `p/q` or an integer; the denominator must be nonzero.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().ok()?;
            let d: BigInt = d.parse().ok()?;
            if d == BigInt::from(0) || d.sign() == num_bigint::Sign::Minus {
                return None;
            }
            Some(Q::new(n, d))
        }
        None => Some(Q::from_integer(s.parse().ok()?)),
    }
}
