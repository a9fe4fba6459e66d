use num_bigint::BigInt;

use super::codec::{leading_block, require_k};
use crate::error::{Error, Result};
use crate::numeric::Rational;
use crate::sequence::{SequenceModel, MAX_MATERIALIZED_TERMS};

fn check_radix(radix: u32) -> Result<Rational> {
    if radix < 2 {
        return Err(Error::InvalidRadix { index: 1, value: radix });
    }
    Ok(Rational::from_integer(BigInt::from(radix)))
}

/// The affine embedding of `K` onto the face `K_m`:
/// `(a_1, a_2, …) ↦ (1/m, …, 1/m, a_1/m, a_2/m, …)` with `m − 1` leading
/// copies of `1/m`.
///
/// ```
/// use tracerange::{extreme::pi_m, Rational, SequenceModel};
///
/// let image = pi_m(&SequenceModel::dyadic(), 3).unwrap();
/// let shown: Vec<String> = image.leading_terms(4).iter().map(|a| a.to_string()).collect();
/// assert_eq!(shown, ["1/3", "1/3", "1/6", "1/12"]);
/// ```
pub fn pi_m(m: &SequenceModel, radix: u32) -> Result<SequenceModel> {
    let k = check_radix(radix)?;
    require_k(m)?;
    if radix as usize - 1 > MAX_MATERIALIZED_TERMS {
        return Err(Error::UnsupportedSpec(format!(
            "radix {radix} needs more than {MAX_MATERIALIZED_TERMS} explicit terms"
        )));
    }
    let inv = k.recip().expect("radix is nonzero");
    let scaled = m.scaled(&inv);
    let mut prefix = vec![inv; radix as usize - 1];
    prefix.extend_from_slice(scaled.prefix());
    SequenceModel::new(prefix, scaled.tail().clone())
}

/// Inverse of [`pi_m`]: drops the leading block of `m − 1` copies of `1/m`
/// and multiplies the rest by `m`. The radix is read off the first term.
///
/// Returns the radix together with the preimage.
pub fn pi_m_inverse(m: &SequenceModel) -> Result<(u32, SequenceModel)> {
    require_k(m)?;
    let (radix, run) = leading_block(m).map_err(|_| {
        let radix = m
            .term(1)
            .ok()
            .and_then(|a| a.unit_denominator().and_then(|d| u32::try_from(d).ok()))
            .unwrap_or(0);
        Error::NotInFace {
            radix,
            expected: radix.saturating_sub(1),
        }
    })?;
    let k = Rational::from_integer(BigInt::from(radix));
    Ok((radix, m.drop_front(run).scaled(&k)))
}

/// Whether `m` lies in `K` and starts with `radix − 1` copies of `1/radix`.
pub fn face_membership(m: &SequenceModel, radix: u32) -> bool {
    let Ok(k) = check_radix(radix) else {
        return false;
    };
    if require_k(m).is_err() {
        return false;
    }
    let value = k.recip().expect("radix is nonzero");
    m.term(1).is_ok_and(|a| a == value) && m.leading_run() >= radix as usize - 1
}
