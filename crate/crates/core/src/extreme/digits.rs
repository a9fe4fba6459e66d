use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::RadixWord;
use crate::error::{Error, Result};
use crate::numeric::Rational;

/// The first `count` digits of `r = Σ d_n/(k_1⋯k_n)` with `0 ≤ d_n < k_n`.
///
/// Each digit is `⌊residual·k_1⋯k_n⌋`, capped at `k_n − 1`. Exact hits take
/// the larger digit, so terminating expansions end in zeros.
///
/// ```
/// use tracerange::{extreme::mixed_radix_digits, Rational, RadixWord};
///
/// let w = RadixWord::new(vec![2], vec![3]).unwrap();
/// let digits = mixed_radix_digits(&w, &Rational::new(5, 6).unwrap(), 3).unwrap();
/// assert_eq!(digits, [1, 2, 0]);
/// ```
pub fn mixed_radix_digits(w: &RadixWord, r: &Rational, count: usize) -> Result<Vec<u32>> {
    if r.is_negative() || *r > Rational::one() {
        return Err(Error::OutOfRange {
            value: r.clone(),
            lo: Rational::zero(),
            hi: Rational::one(),
        });
    }
    let mut residual = r.clone();
    let mut place = Rational::one();
    let mut digits = Vec::with_capacity(count);
    for n in 1..=count {
        let k = w.radix(n).ok_or(Error::WordExhausted { len: n - 1 })?;
        place = place / Rational::from_integer(BigInt::from(k));
        let d = (&residual / &place).floor().to_u32().unwrap_or(u32::MAX).min(k - 1);
        residual -= &place * Rational::from_integer(BigInt::from(d));
        digits.push(d);
    }
    Ok(digits)
}

/// Groups greedy bits into digits: digit `j` counts the 1-bits in block `j`,
/// which has `k_j − 1` slots. A trailing partial block is counted as well.
pub fn bits_to_digits(bits: &[u8], w: &RadixWord) -> Result<Vec<u32>> {
    if let Some((i, &b)) = bits.iter().enumerate().find(|(_, &b)| b > 1) {
        return Err(Error::InvalidBit { index: i + 1, value: b });
    }
    let mut digits = Vec::new();
    let mut rest = bits;
    let mut block = 1;
    while !rest.is_empty() {
        let k = w.radix(block).ok_or(Error::WordExhausted { len: block - 1 })?;
        let (head, tail) = rest.split_at((k as usize - 1).min(rest.len()));
        digits.push(head.iter().map(|&b| u32::from(b)).sum());
        rest = tail;
        block += 1;
    }
    Ok(digits)
}

/// Spreads digits over blocks: the first `d_j` slots of block `j` are set.
pub fn digits_to_bits(digits: &[u32], w: &RadixWord) -> Result<Vec<u8>> {
    let mut bits = Vec::new();
    for (i, &d) in digits.iter().enumerate() {
        let k = w.radix(i + 1).ok_or(Error::WordExhausted { len: i })?;
        if d > k - 1 {
            return Err(Error::DigitTooLarge {
                index: i + 1,
                digit: d,
                radix: k,
            });
        }
        bits.extend((0..k - 1).map(|slot| u8::from(slot < d)));
    }
    Ok(bits)
}
