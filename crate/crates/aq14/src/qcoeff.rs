//! Exact arithmetic in the coefficient ring Z[q^{±1/2}].
//!
//! A [`QLaurent`] is a Laurent polynomial in the formal variable q^{1/2}
//! with arbitrary-precision integer coefficients. Exponents are stored as
//! integers `e` meaning q^{e/2}, so every half-integer power of q occurring
//! in the algebra has an exact representation.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// Laurent polynomial in q^{1/2} over Z.
///
/// Invariants: no stored coefficient is zero; keys are unique; terms are
/// kept in ascending exponent order (BTreeMap) for deterministic output.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct QLaurent {
    terms: BTreeMap<i64, BigInt>,
}

impl QLaurent {
    pub fn zero() -> Self {
        QLaurent::default()
    }

    pub fn one() -> Self {
        QLaurent::q_half(0)
    }

    /// The monomial q^{e/2}.
    pub fn q_half(e: i64) -> Self {
        QLaurent::monomial(e, BigInt::one())
    }

    /// The monomial c * q^{e/2}.
    pub fn monomial(e: i64, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        QLaurent { terms }
    }

    pub fn from_int(c: impl Into<BigInt>) -> Self {
        QLaurent::monomial(0, c)
    }

    /// Wrap an accumulated term map, pruning explicit zeros.
    pub(crate) fn from_map(mut terms: BTreeMap<i64, BigInt>) -> Self {
        terms.retain(|_, c| !c.is_zero());
        QLaurent { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).map_or(false, |c| c.is_one())
    }

    /// Iterate terms as (half-exponent, coefficient) in ascending exponent order.
    pub fn iter(&self) -> impl Iterator<Item = (&i64, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add(&self, other: &QLaurent) -> QLaurent {
        let mut out = self.clone();
        for (&e, c) in &other.terms {
            let entry = out.terms.entry(e).or_insert_with(BigInt::zero);
            *entry += c;
            if entry.is_zero() {
                out.terms.remove(&e);
            }
        }
        out
    }

    pub fn sub(&self, other: &QLaurent) -> QLaurent {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> QLaurent {
        QLaurent {
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }

    pub fn mul(&self, other: &QLaurent) -> QLaurent {
        let mut terms: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &other.terms {
                let entry = terms.entry(e1 + e2).or_insert_with(BigInt::zero);
                *entry += c1 * c2;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        QLaurent { terms }
    }

    /// Multiply by q^{e/2}, i.e. shift every exponent by e.
    pub fn shift(&self, e: i64) -> QLaurent {
        QLaurent {
            terms: self.terms.iter().map(|(&k, c)| (k + e, c.clone())).collect(),
        }
    }

    /// Bar-involution: q^{1/2} -> q^{-1/2}.
    pub fn bar(&self) -> QLaurent {
        QLaurent {
            terms: self.terms.iter().map(|(&e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Membership in N[q^{±1/2}]. The zero polynomial counts as positive.
    pub fn is_positive(&self) -> bool {
        self.terms.values().all(|c| c.is_positive())
    }

    /// Specialization q^{1/2} = 1 (sum of all coefficients).
    pub fn at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Membership in q^{-1/2} Z[q^{-1/2}]: every exponent e <= -1.
    pub fn in_strict_neg_lattice(&self) -> bool {
        self.terms.keys().all(|&e| e <= -1)
    }

    /// If this is ±q^{e/2}, return (e, sign).
    pub fn as_unit_monomial(&self) -> Option<(i64, i64)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (&e, c) = self.terms.iter().next().unwrap();
        if c.is_one() {
            Some((e, 1))
        } else if (-c).is_one() {
            Some((e, -1))
        } else {
            None
        }
    }

    /// Exact division by a unit monomial ±q^{e/2}.
    pub fn div_unit_monomial(&self, e: i64, sign: i64) -> QLaurent {
        let shifted = self.shift(-e);
        if sign < 0 {
            shifted.neg()
        } else {
            shifted
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|(&e, c)| serde_json::json!({"e": e, "c": c.to_string()}))
                .collect(),
        )
    }

    pub fn from_json(v: &serde_json::Value) -> Option<QLaurent> {
        let arr = v.as_array()?;
        let mut out = QLaurent::zero();
        for t in arr {
            let e = t.get("e")?.as_i64()?;
            let c: BigInt = t.get("c")?.as_str()?.parse().ok()?;
            out = out.add(&QLaurent::monomial(e, c));
        }
        Some(out)
    }
}

impl fmt::Display for QLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&e, c) in &self.terms {
            let (sign, mag) = if c.is_negative() {
                ("-", -c)
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", sign)?;
            }
            let coeff_is_one = mag.is_one();
            if e == 0 {
                write!(f, "{}", mag)?;
            } else {
                if !coeff_is_one {
                    write!(f, "{}*", mag)?;
                }
                if e % 2 == 0 {
                    write!(f, "q^({})", e / 2)?;
                } else {
                    write!(f, "q^({}/2)", e)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for QLaurent {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for QLaurent {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(deserializer)?;
        QLaurent::from_json(&v).ok_or_else(|| serde::de::Error::custom("malformed coefficient"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ql(terms: &[(i64, i64)]) -> QLaurent {
        let mut out = QLaurent::zero();
        for &(e, c) in terms {
            out = out.add(&QLaurent::monomial(e, c));
        }
        out
    }

    #[test]
    fn add_identity_and_cancellation() {
        let f = ql(&[(-1, 1), (1, 1)]);
        assert_eq!(f.add(&QLaurent::zero()), f);
        assert_eq!(QLaurent::q_half(-1).add(&QLaurent::q_half(1)), f);
        let q = QLaurent::q_half(2);
        assert!(q.add(&q.neg()).is_zero());
    }

    #[test]
    fn mul_expansion() {
        // (q^{-1/2}+q^{1/2})^2 = q^{-1} + 2 + q
        let f = ql(&[(-1, 1), (1, 1)]);
        assert_eq!(f.mul(&f), ql(&[(-2, 1), (0, 2), (2, 1)]));
        assert!(QLaurent::q_half(1).mul(&QLaurent::q_half(-1)).is_one());
        let g = ql(&[(-2, 1), (2, 1)]);
        assert_eq!(g.mul(&g), ql(&[(-4, 1), (0, 2), (4, 1)]));
    }

    #[test]
    fn bar_examples() {
        assert_eq!(QLaurent::q_half(3).bar(), QLaurent::q_half(-3));
        let sym = ql(&[(-1, 1), (1, 1)]);
        assert_eq!(sym.bar(), sym);
        assert_eq!(QLaurent::from_int(5).bar(), QLaurent::from_int(5));
    }

    #[test]
    fn positivity() {
        // q^{-2}+q^{-1}+2+q+q^2 from the X_1 X_5 constant term
        let f = ql(&[(-4, 1), (-2, 1), (0, 2), (2, 1), (4, 1)]);
        assert!(f.is_positive());
        assert_eq!(f.at_one(), 6.into());
        assert!(!ql(&[(2, 1), (0, -1)]).is_positive());
        assert!(QLaurent::zero().is_positive());
        assert_eq!(QLaurent::zero().at_one(), 0.into());
    }

    #[test]
    fn at_one_examples() {
        assert_eq!(ql(&[(-1, 1), (1, 1)]).at_one(), 2.into());
    }

    #[test]
    fn display_form() {
        assert_eq!(ql(&[(-1, 1), (1, 1)]).to_string(), "q^(-1/2) + q^(1/2)");
        assert_eq!(ql(&[(0, 2), (2, 1)]).to_string(), "2 + q^(1)");
        assert_eq!(ql(&[(0, -1), (2, 1)]).to_string(), "-1 + q^(1)");
        assert_eq!(QLaurent::zero().to_string(), "0");
    }

    fn arb_ql() -> impl Strategy<Value = QLaurent> {
        proptest::collection::vec((-6i64..=6, -5i64..=5), 0..5)
            .prop_map(|v| ql(&v.iter().map(|&(e, c)| (e, c)).collect::<Vec<_>>()))
    }

    proptest! {
        #[test]
        fn bar_is_involution(f in arb_ql()) {
            prop_assert_eq!(f.bar().bar(), f);
        }

        #[test]
        fn bar_is_ring_hom(f in arb_ql(), g in arb_ql()) {
            prop_assert_eq!(f.mul(&g).bar(), f.bar().mul(&g.bar()));
            prop_assert_eq!(f.add(&g).bar(), f.bar().add(&g.bar()));
        }

        #[test]
        fn at_one_is_ring_hom(f in arb_ql(), g in arb_ql()) {
            prop_assert_eq!(f.mul(&g).at_one(), f.at_one() * g.at_one());
            prop_assert_eq!(f.add(&g).at_one(), f.at_one() + g.at_one());
        }

        #[test]
        fn positivity_closed(f in arb_ql(), g in arb_ql()) {
            if f.is_positive() && g.is_positive() {
                prop_assert!(f.add(&g).is_positive());
                prop_assert!(f.mul(&g).is_positive());
            }
        }

        #[test]
        fn json_round_trip(f in arb_ql()) {
            let v = f.to_json();
            prop_assert_eq!(QLaurent::from_json(&v).unwrap(), f);
        }
    }
}
