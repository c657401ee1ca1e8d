//! Exact scalar and vector helpers shared by every module.

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Int = BigInt;
pub type Rat = BigRational;
/// A rational vector in some fixed coordinate system.
pub type QVec = Vec<Rat>;
/// An integer vector in some fixed coordinate system.
pub type ZVec = Vec<Int>;

pub fn int(n: i64) -> Int {
    Int::from(n)
}

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

pub fn qvec(xs: &[i64]) -> QVec {
    xs.iter().map(|&x| rat(x)).collect()
}

pub fn zvec(xs: &[i64]) -> ZVec {
    xs.iter().map(|&x| int(x)).collect()
}

pub fn to_q(v: &[Int]) -> QVec {
    v.iter().cloned().map(Rat::from_integer).collect()
}

/// Converts a rational vector with integral entries; `None` otherwise.
pub fn to_z(v: &[Rat]) -> Option<ZVec> {
    v.iter().map(|x| x.is_integer().then(|| x.to_integer())).collect()
}

pub fn is_zero(v: &[Rat]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

pub fn zdot(a: &[Int], b: &[Int]) -> Int {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(Int::zero(), |acc, (x, y)| acc + x * y)
}

pub fn add(a: &[Rat], b: &[Rat]) -> QVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Rat], b: &[Rat]) -> QVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(k: &Rat, v: &[Rat]) -> QVec {
    v.iter().map(|x| k * x).collect()
}

pub fn neg(v: &[Rat]) -> QVec {
    v.iter().map(|x| -x).collect()
}

/// `Σ cᵢ rowsᵢ` over the rationals.
pub fn combine(coeffs: &[Rat], rows: &[QVec], width: usize) -> QVec {
    let mut out = vec![Rat::zero(); width];
    for (c, row) in coeffs.iter().zip(rows) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(row) {
            *o += c * x;
        }
    }
    out
}

pub fn gcd_all<'a>(xs: impl IntoIterator<Item = &'a Int>) -> Int {
    let mut g = Int::zero();
    for x in xs {
        if !x.is_zero() {
            g = g.gcd(x);
            if g.is_one() {
                break;
            }
        }
    }
    g
}

pub fn lcm_all<'a>(xs: impl IntoIterator<Item = &'a Int>) -> Int {
    xs.into_iter().fold(Int::one(), |l, x| if x.is_one() { l } else { l.lcm(x) })
}

/// Clears denominators and divides by the content, keeping the direction.
/// The zero vector maps to the zero vector.
pub fn primitive(v: &[Rat]) -> ZVec {
    primitive_z(&clear_denominators(v))
}

pub fn primitive_z(v: &[Int]) -> ZVec {
    let g = gcd_all(v);
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

/// Smallest positive integer multiple of `v` with integral entries,
/// i.e. `v * lcm(denominators)`.
pub fn clear_denominators(v: &[Rat]) -> ZVec {
    clear_denominators_by(v, &lcm_all(v.iter().map(|x| x.denom())))
}

/// `den · v`; `den` must be a multiple of every denominator in `v`.
pub fn clear_denominators_by(v: &[Rat], den: &Int) -> ZVec {
    v.iter().map(|x| if x.denom().is_one() { x.numer() * den } else { x.numer() * (den / x.denom()) }).collect()
}

pub fn is_nonneg(x: &Rat) -> bool {
    !x.is_negative()
}

/// Parses `"p"`, `"-p"` or `"p/q"`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse { location: format!("`{s}`"), message: "not a rational number literal".into() };
    match s.split_once('/') {
        Some((n, d)) => {
            let n = Int::from_str(n.trim()).map_err(|_| bad())?;
            let d = Int::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(n, d))
        }
        None => Int::from_str(s).map(Rat::from_integer).map_err(|_| bad()),
    }
}

/// Formats a rational as `p` or `p/q`.
pub fn fmt_rat(x: &Rat) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn fmt_qvec(v: &[Rat]) -> String {
    let parts: Vec<_> = v.iter().map(fmt_rat).collect();
    format!("({})", parts.join(", "))
}
