//! Exact binomial and multinomial coefficients, plus the rational type used
//! for every weight in the crate.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Arbitrary-precision rational; always kept in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// `C(n, k)`, zero when `k < 0` or `k > n`.
pub fn binomial(n: u64, k: i64) -> BigUint {
    if k < 0 || k as u64 > n {
        return BigUint::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigUint::one();
    // acc = C(n - k + i, i) after step i, which is always integral.
    for i in 1..=k {
        acc *= n - k + i;
        acc /= i;
    }
    acc
}

/// `(a_1 + ... + a_d)! / (a_1! ... a_d!)`.
pub fn multinomial(parts: &[u64]) -> BigUint {
    let mut total = 0u64;
    let mut acc = BigUint::one();
    for &part in parts {
        total += part;
        acc *= binomial(total, part as i64);
    }
    acc
}

/// `1 / value` as a rational. `value` must be nonzero.
pub fn reciprocal(value: BigUint) -> Rational {
    Rational::new(BigInt::one(), BigInt::from(value))
}

pub fn rational_from_int(value: impl Into<BigInt>) -> Rational {
    Rational::from_integer(value.into())
}

/// Renders a rational as `p/q`, keeping the `/1` on integers.
pub fn format_rational(value: &Rational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

/// Parses the `p/q` (or bare integer) notation produced by [`format_rational`].
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                None
            } else {
                Some(Rational::new(p, q))
            }
        }
        None => text.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// Serde adapter writing rationals as `"p/q"` strings.
pub mod serde_rational {
    use super::{format_rational, parse_rational, Rational};
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).ok_or_else(|| D::Error::custom(format!("bad rational {text:?}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pascal(rows: usize) -> Vec<Vec<BigUint>> {
        let mut table: Vec<Vec<BigUint>> = vec![vec![BigUint::one()]];
        for n in 1..=rows {
            let prev = &table[n - 1];
            let mut row = vec![BigUint::one(); n + 1];
            for k in 1..n {
                row[k] = &prev[k - 1] + &prev[k];
            }
            table.push(row);
        }
        table
    }

    #[test]
    fn binomial_matches_pascal_triangle() {
        let table = pascal(40);
        for (n, row) in table.iter().enumerate() {
            for (k, value) in row.iter().enumerate() {
                assert_eq!(&binomial(n as u64, k as i64), value, "C({n},{k})");
            }
        }
        assert_eq!(table[30][15], BigUint::from(155_117_520u64));
        assert_eq!(binomial(30, 15), BigUint::from(155_117_520u64));
    }

    #[test]
    fn binomial_edges() {
        assert_eq!(binomial(4, 2), BigUint::from(6u32));
        for n in 0..10 {
            assert_eq!(binomial(n, 0), BigUint::one());
            assert!(binomial(n, -1).is_zero());
            assert!(binomial(n, n as i64 + 1).is_zero());
        }
    }

    /// Counts ordered set partitions of `[total]` with the given block sizes by
    /// assigning every element a block label.
    fn count_assignments(parts: &[u64]) -> u64 {
        let total: u64 = parts.iter().sum();
        let d = parts.len() as u64;
        let mut count = 0;
        for code in 0..d.pow(total as u32) {
            let mut sizes = vec![0u64; parts.len()];
            let mut c = code;
            for _ in 0..total {
                sizes[(c % d) as usize] += 1;
                c /= d;
            }
            if sizes == parts {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn multinomial_small_cases() {
        assert_eq!(multinomial(&[1, 1, 1]), BigUint::from(6u32));
        assert_eq!(multinomial(&[7]), BigUint::one());
        assert_eq!(multinomial(&[]), BigUint::one());
        assert_eq!(count_assignments(&[2, 2, 1]), 30);
        assert_eq!(multinomial(&[2, 2, 1]), BigUint::from(30u32));
        for parts in [[0u64, 3, 1], [2, 0, 2], [1, 2, 3]] {
            assert_eq!(multinomial(&parts), BigUint::from(count_assignments(&parts)));
        }
    }

    #[test]
    fn rational_text_roundtrip() {
        let r = Rational::new(BigInt::from(6), BigInt::from(2));
        assert_eq!(format_rational(&r), "3/1");
        assert_eq!(parse_rational("3/1"), Some(r.clone()));
        assert_eq!(parse_rational("3"), Some(r));
        assert_eq!(parse_rational("0/1"), Some(Rational::zero()));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(format_rational(&parse_rational("-4/6").unwrap()), "-2/3");
    }
}
