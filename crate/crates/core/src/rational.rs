//! Exact rational scalars and vectors.
//!
//! Every structural decision in this crate (sign of a moment pairing, wall
//! membership, facet orientation) is made over `Rat`; floats only enter as
//! output magnitudes and in the dedicated float-mode stress paths.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{config, Result};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    assert!(d != 0, "zero denominator");
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_i(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn to_f64(x: &Rat) -> f64 {
    x.to_f64().expect("rational out of f64 range")
}

/// Parses "p/q" or "p". Whitespace-trimmed; q must be nonzero.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| config(format!("bad rational numerator in {t:?}")))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| config(format!("bad rational denominator in {t:?}")))?;
    if d.is_zero() {
        return Err(config(format!("zero denominator in {t:?}")));
    }
    Ok(Rat::new(n, d))
}

/// Formats as "p/q" with q > 0, always denominated ("3" → "3/1").
pub fn rat_to_string(x: &Rat) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Largest rational with denominator `den` that is ≤ √x; x must be ≥ 0.
///
/// Used to under-approximate square roots soundly: the return value L
/// satisfies L ≤ √x, so 1/L ≥ 1/√x.
pub fn sqrt_lower_bound(x: &Rat, den: u64) -> Rat {
    assert!(!x.is_negative(), "sqrt of negative rational");
    let d = BigInt::from(den);
    // floor(√(x·d²)) / d ≤ √x
    let scaled = (x * Rat::from_integer(&d * &d)).floor();
    let floor_sqrt = scaled.to_integer().sqrt();
    Rat::new(floor_sqrt, d)
}

// --- rational vectors -------------------------------------------------------

pub fn vzero(n: usize) -> Vec<Rat> {
    vec![Rat::zero(); n]
}

pub fn vadd(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    assert_eq!(a.len(), b.len(), "vector length mismatch");
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vsub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    assert_eq!(a.len(), b.len(), "vector length mismatch");
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vscale(c: &Rat, a: &[Rat]) -> Vec<Rat> {
    a.iter().map(|x| c * x).collect()
}

pub fn vneg(a: &[Rat]) -> Vec<Rat> {
    a.iter().map(|x| -x).collect()
}

pub fn vdot(a: &[Rat], b: &[Rat]) -> Rat {
    assert_eq!(a.len(), b.len(), "vector length mismatch");
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn v_is_zero(a: &[Rat]) -> bool {
    a.iter().all(Zero::is_zero)
}

pub fn v_to_f64(a: &[Rat]) -> Vec<f64> {
    a.iter().map(to_f64).collect()
}

/// Scales a rational vector to coprime integers with the first nonzero
/// entry positive; the zero vector is returned unchanged. The result is the
/// canonical representative of the ray (resp. of ±the hyperplane normal when
/// the caller has already fixed an orientation, in which case only the
/// common-denominator clearing applies via [`primitive_scaled`]).
pub fn primitive_vector(a: &[Rat]) -> Vec<Rat> {
    let v = primitive_scaled(a);
    match v.iter().find(|x| !x.is_zero()) {
        Some(first) if first.is_negative() => vneg(&v),
        _ => v,
    }
}

/// Clears denominators and divides by the integer gcd, preserving sign.
pub fn primitive_scaled(a: &[Rat]) -> Vec<Rat> {
    if v_is_zero(a) {
        return a.to_vec();
    }
    let mut lcm = BigInt::one();
    for x in a {
        lcm = lcm.lcm(x.denom());
    }
    let ints: Vec<BigInt> = a.iter().map(|x| (x * Rat::from_integer(lcm.clone())).to_integer()).collect();
    let mut g = BigInt::zero();
    for n in &ints {
        g = g.gcd(n);
    }
    debug_assert_ne!(g.sign(), Sign::NoSign);
    ints.into_iter().map(|n| Rat::from_integer(n / &g)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["3/4", "-7/2", "0/5", "12"] {
            let r = parse_rat(s).unwrap();
            let back = parse_rat(&rat_to_string(&r)).unwrap();
            assert_eq!(r, back);
        }
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn sqrt_lower_bound_is_sound() {
        for (n, d) in [(2i64, 1i64), (9, 1), (1, 2), (628318530, 100000000)] {
            let x = rat(n, d);
            let lo = sqrt_lower_bound(&x, 1_000_000);
            assert!(&lo * &lo <= x, "bound exceeds sqrt for {n}/{d}");
            // within 2/den of the true root
            let lo2 = &lo + rat(2, 1_000_000);
            assert!(&lo2 * &lo2 > x, "bound too loose for {n}/{d}");
        }
    }

    #[test]
    fn primitive_vector_canonicalizes() {
        let v = vec![rat(-2, 3), rat(4, 3), rat(0, 1)];
        let p = primitive_vector(&v);
        assert_eq!(p, vec![rat_i(1), rat_i(-2), rat_i(0)]);
    }
}
