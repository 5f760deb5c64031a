//! Laurent polynomials in `t` with nonnegative integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("malformed polynomial term {term:?}: {reason}")]
    BadTerm { term: String, reason: &'static str },
    #[error("empty polynomial")]
    Empty,
}

/// `Σ a_k t^k` with `a_k ∈ N`, zero coefficients never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigUint>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(exp: i64, coeff: impl Into<BigUint>) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff.into());
        p
    }

    /// Builds `Σ counts[k] t^k` from per-degree counts.
    pub fn from_counts(counts: impl IntoIterator<Item = (i64, u64)>) -> Self {
        let mut p = Self::zero();
        for (k, c) in counts {
            p.add_term(k, BigUint::from(c));
        }
        p
    }

    pub fn add_term(&mut self, exp: i64, coeff: BigUint) {
        if coeff.is_zero() {
            return;
        }
        *self.coeffs.entry(exp).or_default() += coeff;
    }

    pub fn coeff(&self, exp: i64) -> BigUint {
        self.coeffs.get(&exp).cloned().unwrap_or_default()
    }

    pub fn coeff_u64(&self, exp: i64) -> u64 {
        self.coeffs.get(&exp).and_then(|c| u64::try_from(c).ok()).unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigUint)> {
        self.coeffs.iter().map(|(&k, c)| (k, c))
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Constant coefficient, i.e. the value at `t = 0` of the polynomial part.
    pub fn constant_term(&self) -> BigUint {
        self.coeff(0)
    }

    pub fn eval_minus_one(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, (&k, c)| {
            let c = BigInt::from(c.clone());
            if k.rem_euclid(2) == 0 {
                acc + c
            } else {
                acc - c
            }
        })
    }

    /// True when every coefficient of `other` is at most the matching one here.
    pub fn dominates(&self, other: &LaurentPoly) -> bool {
        other.coeffs.iter().all(|(k, c)| self.coeffs.get(k).is_some_and(|d| d >= c))
    }

    /// Coefficientwise difference, or `None` if some coefficient would go negative.
    pub fn checked_sub(&self, other: &LaurentPoly) -> Option<LaurentPoly> {
        if !self.dominates(other) {
            return None;
        }
        let mut out = self.clone();
        for (k, c) in &other.coeffs {
            let slot = out.coeffs.get_mut(k).expect("dominated coefficient present");
            *slot -= c;
            if slot.is_zero() {
                out.coeffs.remove(k);
            }
        }
        Some(out)
    }

    /// True when only exponents in `lo..=hi` occur.
    pub fn supported_in(&self, lo: i64, hi: i64) -> bool {
        self.coeffs.keys().all(|&k| (lo..=hi).contains(&k))
    }
}

impl std::ops::Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&k, c) in &rhs.coeffs {
            out.add_term(k, c.clone());
        }
        out
    }
}

impl std::ops::Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::zero(), |a, b| a + b)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (&k, c) in &self.coeffs {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match (k, c.is_one()) {
                (0, _) => write!(f, "{c}")?,
                (1, true) => f.write_str("t")?,
                (1, false) => write!(f, "{c}*t")?,
                (_, true) => write!(f, "t^{k}")?,
                (_, false) => write!(f, "{c}*t^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

fn parse_term(raw: &str) -> Result<(i64, BigUint), PolyError> {
    let term: String = raw.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = |reason| PolyError::BadTerm { term: raw.trim().to_string(), reason };
    if term.is_empty() {
        return Err(bad("empty term"));
    }
    let (coeff_part, var_part) = match term.find('t') {
        None => (term.as_str(), None),
        Some(pos) => {
            let (c, v) = term.split_at(pos);
            let c = c.strip_suffix('*').unwrap_or(c);
            if c.ends_with('*') {
                return Err(bad("doubled '*'"));
            }
            (c, Some(&v[1..]))
        }
    };
    let coeff = if coeff_part.is_empty() {
        if var_part.is_none() {
            return Err(bad("missing coefficient"));
        }
        BigUint::one()
    } else {
        BigUint::from_str(coeff_part).map_err(|_| bad("coefficient must be a nonnegative integer"))?
    };
    let exp = match var_part {
        None => 0,
        Some("") => 1,
        Some(rest) => {
            let e = rest.strip_prefix('^').ok_or_else(|| bad("expected '^' after t"))?;
            let e = e.strip_prefix('(').and_then(|x| x.strip_suffix(')')).unwrap_or(e);
            e.parse::<i64>().map_err(|_| bad("exponent must be an integer"))?
        }
    };
    Ok((exp, coeff))
}

impl FromStr for LaurentPoly {
    type Err = PolyError;

    /// Accepts terms `a*t^k`, `a t^k`, `t^k`, `a*t`, `t`, `a` joined by `+`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.trim().is_empty() {
            return Err(PolyError::Empty);
        }
        let mut p = LaurentPoly::zero();
        for raw in s.split('+') {
            let (k, c) = parse_term(raw)?;
            p.add_term(k, c);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn parses_and_prints() {
        assert_eq!(p("1+t").to_string(), "1 + t");
        assert_eq!(p("t^-1 + 3*t").to_string(), "t^-1 + 3*t");
        assert_eq!(p("2*t^2 + 0 + 1").to_string(), "1 + 2*t^2");
        assert_eq!(p("t + t").to_string(), "2*t");
        assert_eq!(p("0").to_string(), "0");
        assert!(p("0").is_zero());
    }

    #[test]
    fn rejects_garbage() {
        assert!("".parse::<LaurentPoly>().is_err());
        assert!("x".parse::<LaurentPoly>().is_err());
        assert!("-1".parse::<LaurentPoly>().is_err());
        assert!("1++t".parse::<LaurentPoly>().is_err());
        assert!("t^".parse::<LaurentPoly>().is_err());
    }

    #[test]
    fn evaluations() {
        assert_eq!(p("1 + t").eval_minus_one(), BigInt::zero());
        assert_eq!(p("t^-1").eval_minus_one(), BigInt::from(-1));
        assert_eq!(p("3 + t^2").constant_term(), BigUint::from(3u32));
    }

    #[test]
    fn subtraction_respects_sign() {
        assert_eq!(p("2 + t").checked_sub(&p("1")), Some(p("1 + t")));
        assert_eq!(p("1").checked_sub(&p("t")), None);
        assert_eq!(p("1 + t").checked_sub(&p("1 + t")), Some(LaurentPoly::zero()));
    }

    proptest! {
        #[test]
        fn display_roundtrips(terms in prop::collection::vec((-4i64..5, 0u64..5), 0..6)) {
            let q = LaurentPoly::from_counts(terms);
            let back: LaurentPoly = q.to_string().parse().unwrap();
            prop_assert_eq!(back, q);
        }

        #[test]
        fn addition_commutes_and_evaluates(a in prop::collection::vec((-3i64..4, 0u64..4), 0..5),
                                           b in prop::collection::vec((-3i64..4, 0u64..4), 0..5)) {
            let (a, b) = (LaurentPoly::from_counts(a), LaurentPoly::from_counts(b));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!((&a + &b).eval_minus_one(), a.eval_minus_one() + b.eval_minus_one());
            prop_assert_eq!((&a + &b).checked_sub(&b), Some(a));
        }
    }
}
