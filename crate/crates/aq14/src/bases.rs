//! The three bar-invariant bases B, S, D as labeled families, denominator
//! vectors, and exact expansion of algebra elements in a chosen basis.
//!
//! All three families share the cluster monomials and differ only in the
//! imaginary part: F_n(X_delta) for B, S_n(X_delta) for S, X_delta^n for D.
//! Expansion is a greedy peel on denominator vectors: the basis is pointed,
//! so the residue's minimal torus terms identify which basis element to
//! subtract next.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cluster::{ChebKind, FrameAlgebra};
use crate::error::{Error, Result};
use crate::qcoeff::QLaurent;
use crate::torus::{ExponentPair, TorusElement};

/// Symbolic name of a basis element.
///
/// Canonical form: a=b=0 is One; a pure power of X_{m+1} is written with
/// base index m+1 (so ClusterMonomial always has a >= 1).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum BasisLabel {
    One,
    ClusterMonomial { m: i64, a: i64, b: i64 },
    F { n: i64 },
    S { n: i64 },
    DeltaPow { n: i64 },
}

impl BasisLabel {
    /// Canonical cluster-monomial label for q^{-ab/2} X_m^a X_{m+1}^b.
    pub fn cluster_monomial(m: i64, a: i64, b: i64) -> Result<BasisLabel> {
        if a < 0 || b < 0 {
            return Err(Error::Domain(format!(
                "cluster monomial exponents must be nonnegative, got ({a},{b})"
            )));
        }
        Ok(if a == 0 && b == 0 {
            BasisLabel::One
        } else if a == 0 {
            BasisLabel::ClusterMonomial { m: m + 1, a: b, b: 0 }
        } else {
            BasisLabel::ClusterMonomial { m, a, b }
        })
    }

    pub fn f(n: i64) -> Result<BasisLabel> {
        if n < 1 {
            return Err(Error::Domain(format!("F index must be positive, got {n}")));
        }
        Ok(BasisLabel::F { n })
    }

    pub fn s(n: i64) -> Result<BasisLabel> {
        if n < 1 {
            return Err(Error::Domain(format!("S index must be positive, got {n}")));
        }
        Ok(BasisLabel::S { n })
    }

    pub fn delta_pow(n: i64) -> Result<BasisLabel> {
        if n < 1 {
            return Err(Error::Domain(format!(
                "delta power index must be positive, got {n}"
            )));
        }
        Ok(BasisLabel::DeltaPow { n })
    }
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            BasisLabel::One => write!(f, "1"),
            BasisLabel::ClusterMonomial { m, a, b } => {
                if b == 0 {
                    if a == 1 {
                        write!(f, "X[{m}]")
                    } else {
                        write!(f, "X[{m}]^{a}")
                    }
                } else {
                    write!(f, "X[{m}]^{a}*X[{}]^{b}", m + 1)
                }
            }
            BasisLabel::F { n } => write!(f, "F[{n}]"),
            BasisLabel::S { n } => write!(f, "S[{n}]"),
            BasisLabel::DeltaPow { n } => write!(f, "delta^{n}"),
        }
    }
}

/// Exact linear combination of basis labels with QLaurent coefficients.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct FormalCombination {
    terms: BTreeMap<BasisLabel, QLaurent>,
}

impl FormalCombination {
    pub fn new() -> Self {
        FormalCombination::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BasisLabel, &QLaurent)> {
        self.terms.iter()
    }

    pub fn coeff(&self, label: &BasisLabel) -> QLaurent {
        self.terms.get(label).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, label: BasisLabel, coef: QLaurent) {
        let entry = self.terms.entry(label).or_default();
        *entry = entry.add(&coef);
        if entry.is_zero() {
            self.terms.remove(&label);
        }
    }

    /// Replace every label by its torus expansion and sum with coefficients.
    pub fn realize(&self, alg: &FrameAlgebra) -> TorusElement {
        let mut out = TorusElement::zero();
        for (label, coef) in &self.terms {
            out = out.add(&basis_element(*label, alg).scale(coef));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|(label, coef)| {
                    serde_json::json!({
                        "label": serde_json::to_value(label).unwrap(),
                        "coef": coef.to_json(),
                    })
                })
                .collect(),
        )
    }
}

impl fmt::Display for FormalCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (label, coef) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if coef.is_one() {
                write!(f, "{label}")?;
            } else if coef.num_terms() == 1 {
                write!(f, "{coef}*{label}")?;
            } else {
                write!(f, "({coef})*{label}")?;
            }
        }
        Ok(())
    }
}

/// Which imaginary family completes the cluster monomials.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BasisFamily {
    B,
    S,
    D,
}

impl BasisFamily {
    fn label(&self, n: i64) -> BasisLabel {
        match self {
            BasisFamily::B => BasisLabel::F { n },
            BasisFamily::S => BasisLabel::S { n },
            BasisFamily::D => BasisLabel::DeltaPow { n },
        }
    }
}

/// Bounds on the candidate label set used during expansion.
#[derive(Clone, Copy, Debug)]
pub struct Window {
    pub m_lo: i64,
    pub m_hi: i64,
    pub deg_max: i64,
    pub cheb_max: i64,
}

impl Default for Window {
    fn default() -> Self {
        Window {
            m_lo: -6,
            m_hi: 8,
            deg_max: 6,
            cheb_max: 10,
        }
    }
}

impl Window {
    /// All canonical labels in the window for the given family (One included).
    pub fn labels(&self, family: BasisFamily) -> Vec<BasisLabel> {
        let mut set = std::collections::BTreeSet::new();
        set.insert(BasisLabel::One);
        for m in self.m_lo..=self.m_hi {
            for a in 0..=self.deg_max {
                for b in 0..=(self.deg_max - a) {
                    set.insert(BasisLabel::cluster_monomial(m, a, b).unwrap());
                }
            }
        }
        for n in 1..=self.cheb_max {
            set.insert(family.label(n));
        }
        set.into_iter().collect()
    }

    /// A window wide enough to expand pairwise products of this window's
    /// labels. The closed-form product rules can reach variables roughly a
    /// window-span beyond either end and Chebyshev indices up to the sum,
    /// so every bound is padded generously; with cone-solved candidate
    /// lookup a wide window costs nothing.
    pub fn product_expansion_window(&self) -> Window {
        let span = self.m_hi - self.m_lo;
        let reach = 2 * span + 2 * self.cheb_max + 8;
        Window {
            m_lo: self.m_lo - reach,
            m_hi: self.m_hi + reach,
            deg_max: 64,
            cheb_max: 4 * self.cheb_max + 2 * span + 8,
        }
    }
}

/// Torus expansion of a basis label in the given frame.
pub fn basis_element(label: BasisLabel, alg: &FrameAlgebra) -> TorusElement {
    match label {
        BasisLabel::One => TorusElement::one(),
        BasisLabel::ClusterMonomial { m, a, b } => alg
            .cluster_monomial(m, a, b)
            .expect("canonical labels have nonnegative exponents"),
        BasisLabel::F { n } => alg.chebyshev(ChebKind::F, n),
        BasisLabel::S { n } => alg.chebyshev(ChebKind::S, n),
        BasisLabel::DeltaPow { n } => alg.x_delta().pow(n as u32),
    }
}

/// Denominator vector (d1,d2): negation of the unique minimal exponent pair.
pub type DenominatorVector = (i64, i64);

/// Denominator vector of a single label, computed additively from the
/// minimal terms of the cluster variables (min terms multiply under the
/// skew product because the minimum is a true componentwise minimum).
fn denominator_vector_fast(
    label: BasisLabel,
    alg: &FrameAlgebra,
    var_min: &mut HashMap<i64, ExponentPair>,
) -> Result<DenominatorVector> {
    let mut min_of_var = |m: i64| -> Result<ExponentPair> {
        if let Some(&u) = var_min.get(&m) {
            return Ok(u);
        }
        let x = alg.cluster_var(m);
        let (u, _) = x
            .pointed_min()
            .ok_or_else(|| Error::Structural(format!("X_{m} is not pointed")))?;
        var_min.insert(m, u);
        Ok(u)
    };
    Ok(match label {
        BasisLabel::One => (0, 0),
        BasisLabel::ClusterMonomial { m, a, b } => {
            let u = min_of_var(m)?;
            let v = min_of_var(m + 1)?;
            (-(a * u.0 + b * v.0), -(a * u.1 + b * v.1))
        }
        BasisLabel::F { n } | BasisLabel::S { n } | BasisLabel::DeltaPow { n } => (n, 2 * n),
    })
}

/// Denominator vector of a basis label, from its full torus expansion.
pub fn denominator_vector(label: BasisLabel, alg: &FrameAlgebra) -> Result<DenominatorVector> {
    let x = basis_element(label, alg);
    let mins = x.min_terms()?;
    if mins.len() != 1 {
        return Err(Error::Structural(format!(
            "{label} has {} minimal terms, expected a unique one",
            mins.len()
        )));
    }
    Ok((-mins[0].0, -mins[0].1))
}

/// Bar-invariance and positivity of a label, checked in frames s=1 and s=2.
pub fn check_label(
    label: BasisLabel,
    alg1: &FrameAlgebra,
    alg2: &FrameAlgebra,
) -> (bool, bool) {
    let x1 = basis_element(label, alg1);
    let x2 = basis_element(label, alg2);
    let bar_invariant = x1.bar() == x1 && x2.bar() == x2;
    let positive = x1.is_positive() && x2.is_positive();
    (bar_invariant, positive)
}

fn leq(u: DenominatorVector, v: DenominatorVector) -> bool {
    u.0 <= v.0 && u.1 <= v.1
}

/// The unique window label whose torus expansion has minimal term `u`,
/// if one exists. The minimal terms of the cluster variables cut the
/// exponent plane into consecutive cones; a cluster-monomial candidate is
/// found by solving a (m) + b (m+1) = u exactly in each cone, scanning
/// frame-outward so nearby variables resolve first. The imaginary ray
/// u = (-n,-2n) belongs to the family's Chebyshev labels.
fn label_for_min(
    u: ExponentPair,
    family: BasisFamily,
    alg: &FrameAlgebra,
    window: &Window,
    var_min: &mut HashMap<i64, ExponentPair>,
) -> Result<Option<BasisLabel>> {
    if u == (0, 0) {
        return Ok(Some(BasisLabel::One));
    }
    if u.0 < 0 && u.1 == 2 * u.0 {
        let n = -u.0;
        return Ok(if n <= window.cheb_max {
            Some(family.label(n))
        } else {
            None
        });
    }
    let mut min_of_var = |m: i64, var_min: &mut HashMap<i64, ExponentPair>| -> Result<ExponentPair> {
        if let Some(&p) = var_min.get(&m) {
            return Ok(p);
        }
        let (p, _) = alg
            .cluster_var(m)
            .pointed_min()
            .ok_or_else(|| Error::Structural(format!("X_{m} is not pointed")))?;
        var_min.insert(m, p);
        Ok(p)
    };
    let s = alg.frame().s;
    let mut ms: Vec<i64> = (window.m_lo..=window.m_hi).collect();
    ms.sort_by_key(|&m| (m - s).abs());
    for m in ms {
        let p = min_of_var(m, var_min)?;
        let r = min_of_var(m + 1, var_min)?;
        let det = p.0 * r.1 - p.1 * r.0;
        if det == 0 {
            continue;
        }
        let an = u.0 * r.1 - u.1 * r.0;
        let bn = p.0 * u.1 - p.1 * u.0;
        if an % det != 0 || bn % det != 0 {
            continue;
        }
        let (a, b) = (an / det, bn / det);
        if a >= 0 && b >= 0 && a + b > 0 && a + b <= window.deg_max {
            return Ok(Some(BasisLabel::cluster_monomial(m, a, b)?));
        }
    }
    Ok(None)
}

/// Greedy expansion of `x` in the chosen basis family.
///
/// At each step the residue's componentwise-minimal terms are computed;
/// each one determines at most one window label by [`label_for_min`], and
/// the label with the maximal denominator vector is peeled off (ties
/// between incomparable vectors resolved in lex order). Fails with the
/// residue if no label matches or the iteration cap is exceeded.
pub fn expand_in_basis(
    x: &TorusElement,
    family: BasisFamily,
    alg: &FrameAlgebra,
    window: &Window,
) -> Result<FormalCombination> {
    let cap = 100_000;
    let mut var_min = HashMap::new();
    let mut residue = x.clone();
    let mut out = FormalCombination::new();
    let mut elem_cache: HashMap<BasisLabel, TorusElement> = HashMap::new();
    for _ in 0..cap {
        if residue.is_zero() {
            return Ok(out);
        }
        let mins = residue.min_terms()?;
        // candidate denominator vectors are the negated minimal terms
        let mut candidates: Vec<(DenominatorVector, BasisLabel)> = Vec::new();
        for &(a, b) in &mins {
            if let Some(l) = label_for_min((a, b), family, alg, window, &mut var_min)? {
                candidates.push(((-a, -b), l));
            }
        }
        if candidates.is_empty() {
            break;
        }
        // keep only the maximal denominator vectors, then lex order
        candidates.sort();
        let maximal: Vec<(DenominatorVector, BasisLabel)> = candidates
            .iter()
            .filter(|&&(dv, _)| candidates.iter().all(|&(other, _)| dv == other || !leq(dv, other)))
            .copied()
            .collect();
        let (dv, label) = maximal[0];
        let elem = elem_cache
            .entry(label)
            .or_insert_with(|| basis_element(label, alg))
            .clone();
        let min_exp = (-dv.0, -dv.1);
        let lead = elem.coeff(min_exp.0, min_exp.1);
        let (e, sign) = lead.as_unit_monomial().ok_or_else(|| {
            Error::Structural(format!("{label} has non-unit leading coefficient {lead}"))
        })?;
        let coef = residue.coeff(min_exp.0, min_exp.1).div_unit_monomial(e, sign);
        out.add_term(label, coef.clone());
        residue = residue.sub(&elem.scale(&coef));
    }
    if residue.is_zero() {
        Ok(out)
    } else {
        Err(Error::ExpansionResidue { residue })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cluster::Frame;
    use crate::qcoeff::QLaurent;

    fn alg1() -> FrameAlgebra {
        FrameAlgebra::new(Frame::new(1))
    }

    fn small_window() -> Window {
        Window {
            m_lo: -4,
            m_hi: 8,
            deg_max: 4,
            cheb_max: 6,
        }
    }

    #[test]
    fn label_canonicalization() {
        assert_eq!(
            BasisLabel::cluster_monomial(3, 0, 0).unwrap(),
            BasisLabel::One
        );
        assert_eq!(
            BasisLabel::cluster_monomial(3, 0, 2).unwrap(),
            BasisLabel::ClusterMonomial { m: 4, a: 2, b: 0 }
        );
        assert!(BasisLabel::cluster_monomial(3, -1, 0).is_err());
        assert!(BasisLabel::f(0).is_err());
    }

    #[test]
    fn basis_element_cases() {
        let alg = alg1();
        assert_eq!(
            basis_element(BasisLabel::F { n: 1 }, &alg),
            alg.x_delta()
        );
        assert_eq!(
            basis_element(BasisLabel::S { n: 2 }, &alg),
            alg.x_delta().pow(2).sub(&TorusElement::one())
        );
        assert_eq!(
            basis_element(BasisLabel::ClusterMonomial { m: 2, a: 1, b: 1 }, &alg),
            alg.cluster_monomial(2, 1, 1).unwrap()
        );
    }

    #[test]
    fn denominator_vectors() {
        let alg = alg1();
        assert_eq!(
            denominator_vector(BasisLabel::F { n: 3 }, &alg).unwrap(),
            (3, 6)
        );
        assert_eq!(
            denominator_vector(BasisLabel::ClusterMonomial { m: 1, a: 2, b: 0 }, &alg).unwrap(),
            (-2, 0)
        );
        // minimal term of X_0 is X^{(0,-1)}
        assert_eq!(
            denominator_vector(BasisLabel::ClusterMonomial { m: 0, a: 1, b: 0 }, &alg).unwrap(),
            (0, 1)
        );
        // the additive fast path agrees with the full computation
        let mut cache = HashMap::new();
        for label in small_window().labels(BasisFamily::B) {
            if label == BasisLabel::One {
                continue;
            }
            assert_eq!(
                denominator_vector_fast(label, &alg, &mut cache).unwrap(),
                denominator_vector(label, &alg).unwrap(),
                "fast dv for {label}"
            );
        }
    }

    #[test]
    fn expand_product_x2_x6() {
        let alg = alg1();
        let x = alg.cluster_var(2).mul(&alg.cluster_var(6));
        let c = expand_in_basis(&x, BasisFamily::B, &alg, &small_window()).unwrap();
        // X_2 X_6 = q X_4^2 + q^{-1/2} X_delta
        assert_eq!(
            c.coeff(&BasisLabel::ClusterMonomial { m: 4, a: 2, b: 0 }),
            QLaurent::q_half(2)
        );
        assert_eq!(c.coeff(&BasisLabel::F { n: 1 }), QLaurent::q_half(-1));
        assert_eq!(c.iter().count(), 2);
    }

    #[test]
    fn expand_delta_squared() {
        let alg = alg1();
        let x = alg.x_delta().pow(2);
        let c = expand_in_basis(&x, BasisFamily::B, &alg, &small_window()).unwrap();
        assert_eq!(c.coeff(&BasisLabel::F { n: 2 }), QLaurent::one());
        assert_eq!(c.coeff(&BasisLabel::One), QLaurent::from_int(2));
        assert_eq!(c.iter().count(), 2);
    }

    #[test]
    fn realize_round_trip() {
        let alg = alg1();
        let mut c = FormalCombination::new();
        c.add_term(BasisLabel::F { n: 2 }, QLaurent::q_half(-1));
        c.add_term(
            BasisLabel::ClusterMonomial { m: 0, a: 1, b: 2 },
            QLaurent::monomial(1, 3),
        );
        let x = c.realize(&alg);
        let back = expand_in_basis(&x, BasisFamily::B, &alg, &small_window()).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn realize_empty_is_zero() {
        let alg = alg1();
        assert!(FormalCombination::new().realize(&alg).is_zero());
    }

    #[test]
    fn check_label_examples() {
        let alg1 = alg1();
        let alg2 = FrameAlgebra::new(Frame::new(2));
        assert_eq!(check_label(BasisLabel::F { n: 2 }, &alg1, &alg2), (true, true));
        assert_eq!(
            check_label(
                BasisLabel::ClusterMonomial { m: -1, a: 1, b: 0 },
                &alg1,
                &alg2
            ),
            (true, true)
        );
        // negative control: X_delta - 1 is bar-invariant but not positive
        let x = alg1.x_delta().sub(&TorusElement::one());
        assert_eq!(x.bar(), x);
        assert!(!x.is_positive());
    }

    #[test]
    fn expansion_failure_reports_residue() {
        let alg = alg1();
        // X_1^{-1} is not in the algebra's window span
        let x = TorusElement::monomial(-1, 0, QLaurent::one());
        let err = expand_in_basis(&x, BasisFamily::B, &alg, &small_window()).unwrap_err();
        match err {
            Error::ExpansionResidue { residue } => assert!(!residue.is_zero()),
            other => panic!("expected residue error, got {other}"),
        }
    }
}
