use std::fmt;

use num::{BigInt, BigRational, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use crate::error::{Error, Result};

/// `f(n) = sum_i a_i(n mod period) n^i` with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiPolynomial {
    period: u64,
    degree: usize,
    /// `coeffs[i][c]` is `a_i` on the residue class `c`.
    coeffs: Vec<Vec<BigRational>>,
}

impl QuasiPolynomial {
    /// Trailing all-zero rows are dropped; the zero function keeps a single row.
    pub fn new(period: u64, mut coeffs: Vec<Vec<BigRational>>) -> Result<Self> {
        if period == 0 {
            return Err(Error::InvalidArgument("period must be positive".into()));
        }
        if coeffs.is_empty() || coeffs.iter().any(|r| r.len() as u64 != period) {
            return Err(Error::InvalidArgument(format!("every coefficient row needs {period} entries")));
        }
        while coeffs.len() > 1 && coeffs.last().unwrap().iter().all(Zero::is_zero) {
            coeffs.pop();
        }
        Ok(Self { period, degree: coeffs.len() - 1, coeffs })
    }

    pub fn constant(value: BigRational) -> Self {
        Self { period: 1, degree: 0, coeffs: vec![vec![value]] }
    }

    pub fn period(&self) -> u64 {
        self.period
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[Vec<BigRational>] {
        &self.coeffs
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.coeffs[i]
    }

    pub fn leading_row(&self) -> &[BigRational] {
        &self.coeffs[self.degree]
    }

    /// The leading coefficient when it is the same in every residue class.
    pub fn constant_leading(&self) -> Option<&BigRational> {
        let row = self.leading_row();
        row.iter().all(|x| x == &row[0]).then(|| &row[0])
    }

    pub fn eval(&self, n: u64) -> BigRational {
        let c = (n % self.period) as usize;
        let x = BigRational::from_integer(BigInt::from(n));
        // Horner
        let mut acc = BigRational::zero();
        for row in self.coeffs.iter().rev() {
            acc = acc * &x + &row[c];
        }
        acc
    }

    /// Least `d` dividing the period with `a_i(c) = a_i(c + d)` for all `c`.
    pub fn row_period(&self, i: usize) -> u64 {
        minimal_cycle(&self.coeffs[i])
    }

    pub fn row_periods(&self) -> Vec<u64> {
        (0..=self.degree).map(|i| self.row_period(i)).collect()
    }

    /// Least global period: the lcm of the row periods.
    pub fn minimal_period(&self) -> u64 {
        self.row_periods().into_iter().fold(1, num::integer::lcm)
    }
}

pub(crate) fn minimal_cycle<T: PartialEq>(row: &[T]) -> u64 {
    let p = row.len();
    (1..=p)
        .filter(|d| p.is_multiple_of(*d))
        .find(|&d| (0..p).all(|c| row[c] == row[(c + d) % p]))
        .unwrap_or(p) as u64
}

impl fmt::Display for QuasiPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, row) in self.coeffs.iter().enumerate().rev() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if row.iter().all(|x| x == &row[0]) {
                write!(f, "{}", row[0])?;
            } else {
                let parts: Vec<String> = row.iter().map(|x| x.to_string()).collect();
                write!(f, "[{}]", parts.join(", "))?;
            }
            match i {
                0 => {}
                1 => f.write_str("·n")?,
                _ => write!(f, "·n^{i}")?,
            }
        }
        Ok(())
    }
}

/// `[num, den]`, each a JSON integer when it fits in `i64`, else a decimal string.
pub fn rational_to_json(x: &BigRational) -> Value {
    let part = |v: &BigInt| match v.to_i64() {
        Some(i) => Value::from(i),
        None => Value::from(v.to_string()),
    };
    Value::Array(vec![part(x.numer()), part(x.denom())])
}

pub fn rational_from_json(v: &Value) -> Result<BigRational> {
    let part = |v: &Value| -> Result<BigInt> {
        match v {
            Value::Number(n) => n.as_i64().map(BigInt::from).ok_or_else(|| Error::Parse(format!("bad integer {n}"))),
            Value::String(s) => s.parse().map_err(|_| Error::Parse(format!("bad integer {s:?}"))),
            other => Err(Error::Parse(format!("expected integer, found {other}"))),
        }
    };
    match v.as_array().map(Vec::as_slice) {
        Some([n, d]) => {
            let d = part(d)?;
            if d.is_zero() {
                return Err(Error::Parse("zero denominator".into()));
            }
            Ok(BigRational::new(part(n)?, d))
        }
        _ => Err(Error::Parse(format!("expected [num, den], found {v}"))),
    }
}

impl Serialize for QuasiPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Doc {
            period: u64,
            degree: usize,
            coeffs: Vec<Value>,
        }
        Doc {
            period: self.period,
            degree: self.degree,
            coeffs: self.coeffs.iter().flatten().map(rational_to_json).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuasiPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Doc {
            period: u64,
            degree: usize,
            coeffs: Vec<Value>,
        }
        let doc = Doc::deserialize(d)?;
        let flat = doc.coeffs.iter().map(rational_from_json).collect::<Result<Vec<_>>>().map_err(D::Error::custom)?;
        let p = doc.period as usize;
        if p == 0 || flat.len() != p * (doc.degree + 1) {
            return Err(D::Error::custom("coefficient count must be period * (degree + 1)"));
        }
        let rows = flat.chunks(p).map(<[BigRational]>::to_vec).collect();
        let qp = QuasiPolynomial::new(doc.period, rows).map_err(D::Error::custom)?;
        if qp.degree != doc.degree {
            return Err(D::Error::custom("leading coefficient row is identically zero"));
        }
        Ok(qp)
    }
}

pub(crate) fn serialize_opt_rational<S: Serializer>(
    x: &Option<BigRational>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    x.as_ref().map(rational_to_json).serialize(s)
}

#[cfg(test)]
pub(crate) fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[cfg(test)]
pub(crate) fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
pub(crate) fn one() -> BigRational {
    num::One::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evaluation() {
        let c = QuasiPolynomial::constant(int(5));
        assert!((0..10).all(|n| c.eval(n) == int(5)));
        let q = QuasiPolynomial::new(2, vec![vec![int(0), ratio(1, 2)], vec![ratio(1, 2), ratio(1, 2)]]).unwrap();
        assert_eq!(q.eval(3), int(2));
        assert_eq!(q.degree(), 1);
        assert_eq!(q.row_periods(), vec![2, 1]);
        assert_eq!(q.constant_leading(), Some(&ratio(1, 2)));
        assert_eq!(q.minimal_period(), 2);
    }

    #[test]
    fn trims_and_validates() {
        let q = QuasiPolynomial::new(1, vec![vec![one()], vec![int(0)]]).unwrap();
        assert_eq!(q.degree(), 0);
        assert!(QuasiPolynomial::new(0, vec![vec![]]).is_err());
        assert!(QuasiPolynomial::new(2, vec![vec![one()]]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let big = BigRational::new("123456789012345678901234567891".parse().unwrap(), BigInt::from(2));
        let q = QuasiPolynomial::new(2, vec![vec![big.clone(), ratio(-1, 3)], vec![ratio(1, 2), ratio(1, 2)]]).unwrap();
        let text = serde_json::to_string(&q).unwrap();
        assert_eq!(
            text,
            r#"{"period":2,"degree":1,"coeffs":[["123456789012345678901234567891",2],[-1,3],[1,2],[1,2]]}"#
        );
        let back: QuasiPolynomial = serde_json::from_str(&text).unwrap();
        assert_eq!(back, q);
        assert!(serde_json::from_str::<QuasiPolynomial>(r#"{"period":2,"degree":0,"coeffs":[[1,0],[1,1]]}"#).is_err());
        assert!(serde_json::from_str::<QuasiPolynomial>(r#"{"period":1,"degree":1,"coeffs":[[1,1],[0,1]]}"#).is_err());
    }

    #[test]
    fn cycles() {
        assert_eq!(minimal_cycle(&[1, 2, 1, 2, 1, 2]), 2);
        assert_eq!(minimal_cycle(&[1, 2, 3]), 3);
        assert_eq!(minimal_cycle(&[7]), 1);
    }
}
