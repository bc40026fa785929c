//! The based quantum torus in two generators.
//!
//! Elements are finite Z[q^{±1/2}]-combinations of the normalized monomials
//! X^{(a,b)} = q^{-ab/2} X_1^a X_2^b, which multiply by the skew rule
//! X^{(a,b)} X^{(c,d)} = q^{-(bc-ad)/2} X^{(a+c,b+d)}. Keeping everything in
//! the normalized basis gives a unique normal form with no word rewriting.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::qcoeff::QLaurent;

/// Exponent pair (a,b) of a torus monomial X^{(a,b)}.
pub type ExponentPair = (i64, i64);

/// Finite combination of torus monomials with QLaurent coefficients.
///
/// Invariants: no stored coefficient is zero; terms are kept in ascending
/// lexicographic order on (a,b).
#[derive(Clone, PartialEq, Eq, Default)]
pub struct TorusElement {
    terms: BTreeMap<ExponentPair, QLaurent>,
}

impl TorusElement {
    pub fn zero() -> Self {
        TorusElement::default()
    }

    pub fn one() -> Self {
        TorusElement::monomial(0, 0, QLaurent::one())
    }

    /// Single-term element coef * X^{(a,b)}. Negative a, b are allowed.
    pub fn monomial(a: i64, b: i64, coef: QLaurent) -> Self {
        let mut terms = BTreeMap::new();
        if !coef.is_zero() {
            terms.insert((a, b), coef);
        }
        TorusElement { terms }
    }

    pub fn scalar(coef: QLaurent) -> Self {
        TorusElement::monomial(0, 0, coef)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ExponentPair, &QLaurent)> {
        self.terms.iter()
    }

    pub fn coeff(&self, a: i64, b: i64) -> QLaurent {
        self.terms.get(&(a, b)).cloned().unwrap_or_default()
    }

    pub fn add(&self, other: &TorusElement) -> TorusElement {
        let mut out = self.clone();
        for (&ab, c) in &other.terms {
            let entry = out.terms.entry(ab).or_default();
            *entry = entry.add(c);
            if entry.is_zero() {
                out.terms.remove(&ab);
            }
        }
        out
    }

    pub fn sub(&self, other: &TorusElement) -> TorusElement {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> TorusElement {
        TorusElement {
            terms: self.terms.iter().map(|(&ab, c)| (ab, c.neg())).collect(),
        }
    }

    /// Skew product, bilinear over the rule
    /// X^{(a,b)} X^{(c,d)} = q^{-(bc-ad)/2} X^{(a+c,b+d)}.
    pub fn mul(&self, other: &TorusElement) -> TorusElement {
        if let Some(out) = self.mul_small(other) {
            return out;
        }
        // exact fallback for coefficients beyond the fast-path word size
        let mut acc: BTreeMap<ExponentPair, BTreeMap<i64, num_bigint::BigInt>> = BTreeMap::new();
        for (&(a, b), c1) in &self.terms {
            for (&(c, d), c2) in &other.terms {
                let twist = -(b * c - a * d);
                let slot = acc.entry((a + c, b + d)).or_default();
                for (&e1, v1) in c1.iter() {
                    for (&e2, v2) in c2.iter() {
                        let entry = slot
                            .entry(e1 + e2 + twist)
                            .or_insert_with(|| num_bigint::BigInt::from(0));
                        *entry += v1 * v2;
                    }
                }
            }
        }
        let mut terms = BTreeMap::new();
        for (k, m) in acc {
            let coef = QLaurent::from_map(m);
            if !coef.is_zero() {
                terms.insert(k, coef);
            }
        }
        TorusElement { terms }
    }

    /// Word-sized product path. All arithmetic is checked i128; any value
    /// outside the safe range aborts the path, so results are always exact.
    fn mul_small(&self, other: &TorusElement) -> Option<TorusElement> {
        struct Dense {
            min: i64,
            v: Vec<i128>,
        }

        fn to_dense(x: &TorusElement) -> Option<Vec<(ExponentPair, Dense)>> {
            use num_traits::ToPrimitive;
            let mut out = Vec::with_capacity(x.terms.len());
            for (&ab, c) in &x.terms {
                let mut min = i64::MAX;
                let mut max = i64::MIN;
                for (&e, _) in c.iter() {
                    min = min.min(e);
                    max = max.max(e);
                }
                let mut v = vec![0i128; (max - min) as usize + 1];
                for (&e, val) in c.iter() {
                    let w = val.to_i128()?;
                    if w.unsigned_abs() > 1 << 62 {
                        return None;
                    }
                    v[(e - min) as usize] = w;
                }
                out.push((ab, Dense { min, v }));
            }
            Some(out)
        }

        let xs = to_dense(self)?;
        let ys = to_dense(other)?;
        let mut acc: BTreeMap<ExponentPair, Dense> = BTreeMap::new();
        for ((a, b), c1) in &xs {
            for ((c, d), c2) in &ys {
                let twist = -(b * c - a * d);
                let lo = c1.min + c2.min + twist;
                let hi = lo + (c1.v.len() + c2.v.len()) as i64 - 2;
                let slot = acc.entry((a + c, b + d)).or_insert_with(|| Dense {
                    min: lo,
                    v: vec![0; (hi - lo) as usize + 1],
                });
                // widen the slot to cover [lo, hi]
                if lo < slot.min {
                    let shift = (slot.min - lo) as usize;
                    let mut nv = vec![0; slot.v.len() + shift];
                    nv[shift..].copy_from_slice(&slot.v);
                    slot.v = nv;
                    slot.min = lo;
                }
                let need = (hi - slot.min) as usize + 1;
                if need > slot.v.len() {
                    slot.v.resize(need, 0);
                }
                let base = (lo - slot.min) as usize;
                for (i, &v1) in c1.v.iter().enumerate() {
                    if v1 == 0 {
                        continue;
                    }
                    for (j, &v2) in c2.v.iter().enumerate() {
                        if v2 == 0 {
                            continue;
                        }
                        let cell = &mut slot.v[base + i + j];
                        *cell = cell.checked_add(v1.checked_mul(v2)?)?;
                    }
                }
            }
        }
        let mut terms = BTreeMap::new();
        for (k, d) in acc {
            let mut m = BTreeMap::new();
            for (i, &v) in d.v.iter().enumerate() {
                if v != 0 {
                    m.insert(d.min + i as i64, num_bigint::BigInt::from(v));
                }
            }
            let coef = QLaurent::from_map(m);
            if !coef.is_zero() {
                terms.insert(k, coef);
            }
        }
        Some(TorusElement { terms })
    }

    /// Left-associated power; exponent 0 gives 1.
    pub fn pow(&self, n: u32) -> TorusElement {
        let mut out = TorusElement::one();
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    pub fn scale(&self, c: &QLaurent) -> TorusElement {
        if c.is_zero() {
            return TorusElement::zero();
        }
        let mut terms = BTreeMap::new();
        for (&ab, coef) in &self.terms {
            let p = coef.mul(c);
            if !p.is_zero() {
                terms.insert(ab, p);
            }
        }
        TorusElement { terms }
    }

    /// Bar-involution: ql_bar on every coefficient, exponent pairs fixed.
    pub fn bar(&self) -> TorusElement {
        TorusElement {
            terms: self.terms.iter().map(|(&ab, c)| (ab, c.bar())).collect(),
        }
    }

    /// Support exponent pairs minimal under the componentwise partial order.
    pub fn min_terms(&self) -> Result<Vec<ExponentPair>, Error> {
        if self.is_zero() {
            return Err(Error::EmptyElement);
        }
        let keys: Vec<ExponentPair> = self.terms.keys().copied().collect();
        let mut mins = Vec::new();
        'outer: for &u in &keys {
            for &v in &keys {
                if v != u && v.0 <= u.0 && v.1 <= u.1 {
                    continue 'outer;
                }
            }
            mins.push(u);
        }
        Ok(mins)
    }

    /// The unique componentwise-minimal term, if there is exactly one.
    pub fn pointed_min(&self) -> Option<(ExponentPair, QLaurent)> {
        let mins = self.min_terms().ok()?;
        if mins.len() == 1 {
            let u = mins[0];
            Some((u, self.terms[&u].clone()))
        } else {
            None
        }
    }

    /// True iff every coefficient lies in N[q^{±1/2}].
    pub fn is_positive(&self) -> bool {
        self.terms.values().all(|c| c.is_positive())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "terms": self.terms.iter().map(|(&(a, b), c)| {
                serde_json::json!({"a": a, "b": b, "coef": c.to_json()})
            }).collect::<Vec<_>>()
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Option<TorusElement> {
        let arr = v.get("terms")?.as_array()?;
        let mut out = TorusElement::zero();
        for t in arr {
            let a = t.get("a")?.as_i64()?;
            let b = t.get("b")?.as_i64()?;
            let c = QLaurent::from_json(t.get("coef")?)?;
            out = out.add(&TorusElement::monomial(a, b, c));
        }
        Some(out)
    }
}

impl fmt::Display for TorusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(a, b), c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if c.is_one() {
                write!(f, "({},{})", a, b)?;
            } else if c.num_terms() == 1 {
                write!(f, "{}*({},{})", c, a, b)?;
            } else {
                write!(f, "({})*({},{})", c, a, b)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for TorusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for TorusElement {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TorusElement {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(deserializer)?;
        TorusElement::from_json(&v).ok_or_else(|| serde::de::Error::custom("malformed element"))
    }
}
