//! Exact scalars: arbitrary-precision rationals and prime fields with a
//! runtime modulus.
//!
//! Every scalar carries its field tag so mixed-field arithmetic is caught at
//! the first offending operation instead of producing garbage. Rationals are
//! kept fully reduced (delegated to `num-rational`); prime-field residues are
//! kept canonical in `0..p`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::Error;

/// The coefficient field of a whole computation: `Q` or `F_p`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Field {
    Q,
    Fp(u64),
}

impl Field {
    /// Builds `F_p`, rejecting composite and trivial moduli.
    pub fn fp(p: u64) -> Result<Field, Error> {
        if is_prime_u64(p) {
            Ok(Field::Fp(p))
        } else {
            Err(Error::Parse(format!("modulus {p} is not prime")))
        }
    }

    pub fn zero(self) -> Scalar {
        match self {
            Field::Q => Scalar::Q(BigRational::zero()),
            Field::Fp(p) => Scalar::Fp { v: 0, p },
        }
    }

    pub fn one(self) -> Scalar {
        match self {
            Field::Q => Scalar::Q(BigRational::one()),
            Field::Fp(p) => Scalar::Fp { v: 1 % p, p },
        }
    }

    pub fn integer(self, n: i64) -> Scalar {
        match self {
            Field::Q => Scalar::Q(BigRational::from(BigInt::from(n))),
            Field::Fp(p) => {
                let r = ((n % p as i64) + p as i64) as u64 % p;
                Scalar::Fp { v: r, p }
            }
        }
    }

    /// Parses the exact string form: `"a"` or `"a/b"` over `Q`, an integer
    /// (possibly negative or ≥ p, reduced mod p) over `F_p`.
    pub fn parse(self, s: &str) -> Result<Scalar, Error> {
        let s = s.trim();
        match self {
            Field::Q => {
                let (num, den) = match s.split_once('/') {
                    Some((n, d)) => (n.trim(), Some(d.trim())),
                    None => (s, None),
                };
                let n = BigInt::from_str(num)
                    .map_err(|_| Error::Parse(format!("malformed rational '{s}'")))?;
                let d = match den {
                    Some(d) => BigInt::from_str(d)
                        .map_err(|_| Error::Parse(format!("malformed rational '{s}'")))?,
                    None => BigInt::one(),
                };
                if d.is_zero() {
                    return Err(Error::Parse(format!("zero denominator in '{s}'")));
                }
                Ok(Scalar::Q(BigRational::new(n, d)))
            }
            Field::Fp(p) => {
                let n = BigInt::from_str(s)
                    .map_err(|_| Error::Parse(format!("malformed residue '{s}'")))?;
                let pb = BigInt::from(p);
                let r = ((n % &pb) + &pb) % &pb;
                let (_, digits) = r.to_u64_digits();
                Ok(Scalar::Fp {
                    v: digits.first().copied().unwrap_or(0),
                    p,
                })
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Q => write!(f, "Q"),
            Field::Fp(p) => write!(f, "F{p}"),
        }
    }
}

/// One exact field element.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Scalar {
    Q(BigRational),
    Fp { v: u64, p: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Q,
            Scalar::Fp { p, .. } => Field::Fp(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_zero(),
            Scalar::Fp { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_one(),
            Scalar::Fp { v, p } => *v == 1 % p,
        }
    }

    pub fn add(&self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) if p == q => Scalar::Fp {
                v: ((*a as u128 + *b as u128) % *p as u128) as u64,
                p: *p,
            },
            _ => mixed(self, rhs),
        }
    }

    pub fn sub(&self, rhs: &Scalar) -> Scalar {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Scalar) -> Scalar {
        if self.is_one() {
            return rhs.clone();
        }
        if rhs.is_one() {
            return self.clone();
        }
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) if p == q => Scalar::Fp {
                v: ((*a as u128 * *b as u128) % *p as u128) as u64,
                p: *p,
            },
            _ => mixed(self, rhs),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::Fp { v, p } => Scalar::Fp {
                v: if *v == 0 { 0 } else { p - v },
                p: *p,
            },
        }
    }

    /// Multiplicative inverse; panics on zero (the elimination code only
    /// inverts pivots, which are nonzero by construction).
    pub fn inv(&self) -> Scalar {
        match self {
            Scalar::Q(a) => {
                assert!(!a.is_zero(), "inverse of zero");
                Scalar::Q(a.recip())
            }
            Scalar::Fp { v, p } => {
                assert!(*v != 0, "inverse of zero");
                Scalar::Fp {
                    v: mod_inv(*v, *p),
                    p: *p,
                }
            }
        }
    }

    pub fn div(&self, rhs: &Scalar) -> Scalar {
        self.mul(&rhs.inv())
    }
}

#[cold]
fn mixed(a: &Scalar, b: &Scalar) -> Scalar {
    panic!("scalar field mismatch: {} vs {}", a.field(), b.field());
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Fp { v, .. } => write!(f, "{v}"),
        }
    }
}

/// Rough size of the exact representation, used by the pivot heuristic to
/// prefer small entries.
pub fn repr_size(s: &Scalar) -> u64 {
    match s {
        Scalar::Q(r) => (r.numer().abs().bits() + r.denom().bits()) as u64,
        Scalar::Fp { .. } => 1,
    }
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // extended Euclid on signed 128-bit intermediates
    let (mut old_r, mut r) = (a as i128, p as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1, "modulus not prime or element zero");
    (((old_s % p as i128) + p as i128) % p as i128) as u64
}

/// Deterministic Miller–Rabin for u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = mod_pow(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * b as u128) % m as u128) as u64;
        }
        b = ((b as u128 * b as u128) % m as u128) as u64;
        e >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_and_format_roundtrip_q() {
        for s in ["0", "1", "-3", "7/2", "-22/7", "1000000000000000000000/3"] {
            let x = Field::Q.parse(s).unwrap();
            assert_eq!(x.to_string(), s);
        }
        // non-canonical inputs normalize
        assert_eq!(Field::Q.parse("4/2").unwrap().to_string(), "2");
        assert_eq!(Field::Q.parse("2/-4").unwrap().to_string(), "-1/2");
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(Field::Q.parse("1/0").is_err());
        assert!(Field::Q.parse("x").is_err());
    }

    #[test]
    fn fp_parse_reduces() {
        let f = Field::fp(7).unwrap();
        assert_eq!(f.parse("12").unwrap(), f.integer(5));
        assert_eq!(f.parse("-1").unwrap(), f.integer(6));
        assert_eq!(f.parse("700000000000000000003").unwrap().to_string(), "3");
    }

    #[test]
    fn composite_modulus_rejected() {
        assert!(Field::fp(1).is_err());
        assert!(Field::fp(6).is_err());
        assert!(Field::fp(2).is_ok());
        assert!(Field::fp(1_000_003).is_ok());
    }

    #[test]
    fn fermat_little_theorem_exhaustive() {
        for p in [2u64, 3, 5, 7, 11, 13] {
            let f = Field::fp(p).unwrap();
            for v in 0..p {
                let x = f.integer(v as i64);
                let mut acc = f.one();
                for _ in 0..p {
                    acc = acc.mul(&x);
                }
                assert_eq!(acc, x, "x^p = x fails for {v} mod {p}");
            }
        }
    }

    #[test]
    fn inverses() {
        let f = Field::fp(13).unwrap();
        for v in 1..13 {
            let x = f.integer(v);
            assert!(x.mul(&x.inv()).is_one());
        }
        let h = Field::Q.parse("-7/3").unwrap();
        assert!(h.mul(&h.inv()).is_one());
    }

    fn arb_rational() -> impl Strategy<Value = Scalar> {
        (-50i64..50, 1i64..30).prop_map(|(n, d)| {
            Scalar::Q(BigRational::new(BigInt::from(n), BigInt::from(d)))
        })
    }

    proptest! {
        #[test]
        fn q_field_axioms(a in arb_rational(), b in arb_rational(), c in arb_rational()) {
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert!(a.sub(&a).is_zero());
        }

        #[test]
        fn fp_field_axioms(a in 0u64..101, b in 0u64..101, c in 0u64..101) {
            let f = Field::fp(101).unwrap();
            let (a, b, c) = (f.integer(a as i64), f.integer(b as i64), f.integer(c as i64));
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert!(a.sub(&a).is_zero());
        }

        #[test]
        fn q_roundtrip(a in arb_rational()) {
            let s = a.to_string();
            prop_assert_eq!(Field::Q.parse(&s).unwrap(), a);
        }
    }
}
