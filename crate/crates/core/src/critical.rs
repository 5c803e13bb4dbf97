//! Closed-form critical points of the canonical superpotential, checked in
//! exact quotient algebras `ℚ(q)[ζ]/(ζ^n - r)`.
//!
//! `ζ^N - 4q` and `s^2 ∓ q` are irreducible over `ℚ(q)` (Eisenstein at `q`),
//! so every quotient used here is a field and "nonzero" means "invertible".

use std::collections::BTreeMap;

use num::{BigRational, One};
use thiserror::Error;

use crate::arith::{ArithError, EvalRing, LaurentPolynomial as LP, Monomial, RationalFunction as RF, Substitution, Symbol};
use crate::cohomology::{CohomologyError, Quadric};
use crate::lg_zoo::{self, p_sym, pp_sym, q_sym, LgError, MapKind};
use crate::quiver::ClusterSeed;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CriticalError {
    #[error(transparent)]
    Dimension(#[from] CohomologyError),
    #[error(transparent)]
    Lg(#[from] LgError),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("partial derivative along {var} does not vanish at {point}")]
    NonVanishing { var: String, point: String },
    #[error("{0} is undefined at the point")]
    Undefined(String),
    #[error("critical value mismatch at {0}")]
    Value(String),
}

/// Element of `ℚ[q^±][x]/(x^n - r)`; scalars carry no modulus.
#[derive(Debug, Clone)]
pub struct RootElement {
    coeffs: Vec<LP>,
    modulus: Option<(usize, LP)>,
}

impl RootElement {
    pub fn scalar(c: LP) -> Self {
        RootElement { coeffs: vec![c], modulus: None }
    }

    /// The generator `x` with `x^n = r`.
    pub fn generator(n: usize, radicand: LP) -> Self {
        let mut coeffs = vec![LP::zero(); n.max(2)];
        coeffs[1] = LP::one();
        RootElement { coeffs, modulus: Some((n, radicand)) }.reduced()
    }

    pub fn modulus(&self) -> Option<&(usize, LP)> {
        self.modulus.as_ref()
    }

    pub fn coefficient(&self, k: usize) -> LP {
        self.coeffs.get(k).cloned().unwrap_or_else(LP::zero)
    }

    fn reduced(mut self) -> Self {
        if let Some((n, r)) = &self.modulus {
            while self.coeffs.len() > *n {
                let top = self.coeffs.pop().unwrap();
                let k = self.coeffs.len() - n;
                self.coeffs[k] = &self.coeffs[k] + &(&top * r);
            }
        }
        while self.coeffs.len() > 1 && self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
        self
    }

    fn join(a: &Option<(usize, LP)>, b: &Option<(usize, LP)>) -> Option<(usize, LP)> {
        match (a, b) {
            (Some(x), Some(y)) => {
                assert!(x.0 == y.0 && x.1 == y.1, "mixing different root algebras");
                Some(x.clone())
            }
            (Some(x), None) | (None, Some(x)) => Some(x.clone()),
            (None, None) => None,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|k| &self.coefficient(k) + &other.coefficient(k)).collect();
        RootElement { coeffs, modulus: Self::join(&self.modulus, &other.modulus) }.reduced()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut coeffs = vec![LP::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        RootElement { coeffs, modulus: Self::join(&self.modulus, &other.modulus) }.reduced()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        RootElement { coeffs: self.coeffs.iter().map(|p| p.scale(c)).collect(), modulus: self.modulus.clone() }.reduced()
    }

    pub fn neg(&self) -> Self {
        self.scale(&-BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Inverse of `c·x^k` with `c` a Laurent monomial in `q`; `None` otherwise.
    pub fn inverse(&self) -> Option<Self> {
        let nz: Vec<usize> = (0..self.coeffs.len()).filter(|&k| !self.coeffs[k].is_zero()).collect();
        if nz.len() != 1 {
            return None;
        }
        let k = nz[0];
        let (cm, cc) = self.coeffs[k].single_term()?;
        let cinv = LP::term(cm.inverse(), BigRational::one() / cc);
        if k == 0 {
            return Some(RootElement { coeffs: vec![cinv], modulus: self.modulus.clone() });
        }
        let (n, r) = self.modulus.as_ref()?;
        let (rm, rc) = r.single_term()?;
        let rinv = LP::term(rm.inverse(), BigRational::one() / rc);
        let mut coeffs = vec![LP::zero(); *n];
        coeffs[n - k] = &cinv * &rinv;
        Some(RootElement { coeffs, modulus: self.modulus.clone() }.reduced())
    }

    pub fn equals(&self, other: &Self) -> bool {
        self.add(&other.neg()).is_zero()
    }

    /// Text form in the generator `name`.
    pub fn render(&self, name: &str) -> String {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("({})", c),
                1 => format!("({})*{}", c, name),
                _ => format!("({})*{}^{}", c, name, k),
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl EvalRing for RootElement {
    fn zero_like() -> Self {
        RootElement::scalar(LP::zero())
    }
    fn from_rational(c: &BigRational) -> Self {
        RootElement::scalar(LP::constant(c.clone()))
    }
    fn ring_add(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self.mul(other)
    }
}

/// A point with coordinates in one root algebra.
#[derive(Debug, Clone)]
pub struct CriticalPoint {
    pub label: String,
    pub generator: String,
    pub coords: BTreeMap<Symbol, RootElement>,
    /// Number of geometric points this represents (Galois conjugates).
    pub multiplicity: usize,
}

impl CriticalPoint {
    fn image(&self, s: &Symbol) -> Option<(RootElement, Option<RootElement>)> {
        let v = if *s == q_sym() {
            RootElement::scalar(LP::var(s))
        } else if *s == p_sym(0) {
            RootElement::scalar(LP::one())
        } else {
            self.coords.get(s)?.clone()
        };
        let inv = v.inverse();
        Some((v, inv))
    }

    pub fn eval_poly(&self, f: &LP) -> Result<RootElement, CriticalError> {
        f.eval(|s| self.image(s)).map_err(|e| match e {
            ArithError::NoInverse(s) => CriticalError::Undefined(format!("1/{}", s)),
            other => CriticalError::Arith(other),
        })
    }

    /// `(num, den)` of a rational function at the point.
    pub fn eval_parts(&self, f: &RF) -> Result<(RootElement, RootElement), CriticalError> {
        Ok((self.eval_poly(f.num())?, self.eval_poly(f.den())?))
    }

    /// True when `f` is defined and nonzero at the point.
    pub fn is_unit(&self, f: &RF) -> bool {
        match self.eval_parts(f) {
            Ok((n, d)) => !n.is_zero() && !d.is_zero(),
            Err(_) => false,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let coords: serde_json::Map<String, serde_json::Value> = self
            .coords
            .iter()
            .map(|(s, v)| (s.name().to_string(), serde_json::Value::String(v.render(&self.generator))))
            .collect();
        serde_json::json!({
            "label": self.label,
            "generator": self.generator,
            "multiplicity": self.multiplicity,
            "coords": coords,
        })
    }
}

#[derive(Debug, Clone)]
pub struct CriticalPointSet {
    pub n: usize,
    pub main: CriticalPoint,
    pub extras: Vec<CriticalPoint>,
}

impl CriticalPointSet {
    pub fn points(&self) -> Vec<&CriticalPoint> {
        std::iter::once(&self.main).chain(self.extras.iter()).collect()
    }

    /// Geometric count, conjugates included.
    pub fn count(&self) -> usize {
        self.points().iter().map(|p| p.multiplicity).sum()
    }
}

fn qpoly(c: BigRational, qexp: i64) -> LP {
    LP::term(Monomial::from_pairs([(q_sym(), qexp)]), c)
}

/// Radicand of the extra points' square root: `s^2 = (-1)^m q` for even `N`.
pub fn extra_radicand(n: usize) -> Result<LP, CriticalError> {
    let m = Quadric::new(n)?.m();
    let sign = if m % 2 == 0 { 1 } else { -1 };
    Ok(qpoly(BigRational::from_integer(sign.into()), 1))
}

pub fn closed_form_critical_points(n: usize) -> Result<CriticalPointSet, CriticalError> {
    let qd = Quadric::new(n)?;
    let m = qd.m();
    let zeta = RootElement::generator(n, qpoly(BigRational::from_integer(4.into()), 1));
    let half = BigRational::new(1.into(), 2.into());
    let zpow = |j: usize| (0..j).fold(RootElement::scalar(LP::one()), |acc, _| acc.mul(&zeta));
    let qv = || RootElement::scalar(LP::var(&q_sym()));
    let zero = || RootElement::scalar(LP::zero());
    let mut main = BTreeMap::new();
    let cut = if qd.is_even() { m - 2 } else { m - 1 };
    for j in 1..n {
        let v = if j <= cut { zpow(j) } else { zpow(j).scale(&half) };
        main.insert(p_sym(j), v);
    }
    main.insert(p_sym(n), qv());
    if qd.is_even() {
        main.insert(pp_sym(m), zpow(m - 1).scale(&half));
    }
    let main = CriticalPoint { label: "main".into(), generator: "zeta".into(), coords: main, multiplicity: n };
    let mut extras = Vec::new();
    let mut base = BTreeMap::new();
    for j in 1..n {
        base.insert(p_sym(j), zero());
    }
    base.insert(p_sym(n), qv().neg());
    if qd.is_even() {
        let s = RootElement::generator(2, extra_radicand(n)?);
        for (label, sign) in [("extra+", s.clone()), ("extra-", s.neg())] {
            let mut c = base.clone();
            c.insert(p_sym(m - 1), sign.clone());
            c.insert(pp_sym(m), sign.neg());
            extras.push(CriticalPoint { label: label.into(), generator: "s".into(), coords: c, multiplicity: 1 });
        }
    } else {
        extras.push(CriticalPoint { label: "extra".into(), generator: "q".into(), coords: base, multiplicity: 1 });
    }
    Ok(CriticalPointSet { n, main, extras })
}

/// Affine coordinates the criticality equations are taken in.
pub fn affine_coordinates(n: usize) -> Vec<Symbol> {
    (1..=n).map(p_sym).collect()
}

/// The canonical superpotential with `p_0 = 1`; for even `N` the quadric is
/// solved for `p'_{m-1}` on the chart `p_{m-1} ≠ 0`.
pub fn restricted_superpotential(n: usize) -> Result<RF, CriticalError> {
    let qd = Quadric::new(n)?;
    let w = lg_zoo::canonical_model(n)?.superpotential;
    if !qd.is_even() {
        return Ok(w);
    }
    let m = qd.m();
    let rel = lg_zoo::dehomogenize(&lg_zoo::quadric_relation(n)?);
    let pm1 = LP::var(&p_sym(m - 1));
    let rest = &rel - &(&pm1 * &LP::var(&pp_sym(m)));
    let solved = RF::ratio(-rest, pm1);
    let mut sub = Substitution::new();
    sub.insert(pp_sym(m), solved);
    Ok(w.substitute(&sub)?)
}

/// Checks all partial derivatives vanish at every closed-form point, and for
/// even `N` that every point lies on the quadric.
pub fn verify_criticality(n: usize) -> Result<(), CriticalError> {
    let set = closed_form_critical_points(n)?;
    let w = restricted_superpotential(n)?;
    let quadric = if n % 2 == 0 { Some(lg_zoo::dehomogenize(&lg_zoo::quadric_relation(n)?)) } else { None };
    for pt in set.points() {
        if let Some(rel) = &quadric {
            if !pt.eval_poly(rel)?.is_zero() {
                return Err(CriticalError::NonVanishing { var: "quadric".into(), point: pt.label.clone() });
            }
        }
        for s in affine_coordinates(n) {
            let (num, den) = pt.eval_parts(&w.partial(&s))?;
            if den.is_zero() {
                return Err(CriticalError::Undefined(format!("dW/d{} at {}", s, pt.label)));
            }
            if !num.is_zero() {
                return Err(CriticalError::NonVanishing { var: s.to_string(), point: pt.label.clone() });
            }
        }
    }
    Ok(())
}

/// Expected critical values: `N·ζ` for the main family, `0` for extras.
pub fn expected_value(n: usize, pt: &CriticalPoint) -> RootElement {
    if pt.label == "main" {
        let zeta = RootElement::generator(n, qpoly(BigRational::from_integer(4.into()), 1));
        zeta.scale(&BigRational::from_integer((n as i64).into()))
    } else {
        RootElement::scalar(LP::zero())
    }
}

/// Critical values, checked against `N·ζ` and `0`.
pub fn critical_values(n: usize) -> Result<Vec<(String, RootElement)>, CriticalError> {
    let set = closed_form_critical_points(n)?;
    let w = restricted_superpotential(n)?;
    let mut out = Vec::new();
    for pt in set.points() {
        let (num, den) = pt.eval_parts(&w)?;
        let expect = expected_value(n, pt);
        if den.is_zero() || !num.equals(&expect.mul(&den)) {
            return Err(CriticalError::Value(pt.label.clone()));
        }
        out.push((pt.label.clone(), expect));
    }
    Ok(out)
}

/// `δ_ℓ` at the main family (affine, `p_0 = 1`).
pub fn deltas_at_main(n: usize) -> Result<Vec<RootElement>, CriticalError> {
    let qd = Quadric::new(n)?;
    let set = closed_form_critical_points(n)?;
    let top = if qd.is_even() { qd.m().saturating_sub(3) } else { qd.m() - 1 };
    (1..=top).map(|l| set.main.eval_poly(&lg_zoo::dehomogenize(&lg_zoo::delta(n, l)?))).collect()
}

fn map_chart_member(pt: &CriticalPoint, map: &lg_zoo::CoordinateMap) -> bool {
    map.images.values().all(|f| pt.is_unit(f))
}

/// Membership of a point in each torus chart: Przyjalkowski, Givental,
/// Lusztig, and for even `N` the two extreme clusters.
pub fn chart_membership(n: usize, pt: &CriticalPoint) -> Result<Vec<(String, bool)>, CriticalError> {
    let qd = Quadric::new(n)?;
    let prz = lg_zoo::coordinate_map(MapKind::CanToPrz, n)?;
    let giv = if qd.is_even() {
        prz.then(&lg_zoo::coordinate_map(MapKind::PrzToGiv, n)?)?
    } else {
        lg_zoo::coordinate_map(MapKind::CanToGiv, n)?
    };
    let lus = lg_zoo::lusztig_from_pluecker(n)?;
    let mut out = vec![
        ("przyjalkowski".to_string(), map_chart_member(pt, &prz)),
        ("givental".to_string(), map_chart_member(pt, &giv)),
        ("lusztig".to_string(), map_chart_member(pt, &lus)),
    ];
    if qd.is_even() {
        let m = qd.m();
        let seed = ClusterSeed::new(m).map_err(|e| CriticalError::Undefined(e.to_string()))?;
        let mut frozen: Vec<RF> = Vec::new();
        for s in &seed.frozen_vars {
            let f = if s.name().starts_with("delta_") {
                let j: usize = s.name()[6..].parse().unwrap();
                RF::from(lg_zoo::delta_affine(n, j))
            } else {
                RF::var(s)
            };
            frozen.push(f);
        }
        let unit_all = |vars: &[RF]| vars.iter().all(|f| pt.is_unit(f));
        let c1: Vec<RF> = (1..=m - 2).map(|i| RF::var(&p_sym(i))).chain(frozen.iter().cloned()).collect();
        let c2: Vec<RF> = (1..=m - 2).map(|i| RF::var(&p_sym(n - i))).chain(frozen.iter().cloned()).collect();
        out.push(("cluster-C1".into(), unit_all(&c1)));
        out.push(("cluster-C2".into(), unit_all(&c2)));
    }
    Ok(out)
}

pub fn report_json(n: usize) -> Result<serde_json::Value, CriticalError> {
    let set = closed_form_critical_points(n)?;
    let values = critical_values(n)?;
    let crit = verify_criticality(n).is_ok();
    let mut pts = Vec::new();
    for (pt, (_, val)) in set.points().into_iter().zip(values.iter()) {
        let mut j = pt.to_json();
        j["value"] = serde_json::Value::String(val.render(&pt.generator));
        let charts: serde_json::Map<String, serde_json::Value> =
            chart_membership(n, pt)?.into_iter().map(|(k, b)| (k, serde_json::Value::Bool(b))).collect();
        j["charts"] = serde_json::Value::Object(charts);
        pts.push(j);
    }
    Ok(serde_json::json!({
        "N": n,
        "count": set.count(),
        "gradient_vanishes": crit,
        "points": pts,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_algebra_reduces() {
        let z = RootElement::generator(3, qpoly(BigRational::from_integer(4.into()), 1));
        let z3 = z.mul(&z).mul(&z);
        assert!(z3.equals(&RootElement::scalar(LP::parse("4*q").unwrap())));
        let zi = z.inverse().unwrap();
        assert!(zi.mul(&z).equals(&RootElement::scalar(LP::one())));
        assert!(!RootElement::scalar(LP::zero()).add(&z).is_zero());
    }

    #[test]
    fn criticality_small() {
        for n in 3..=6 {
            verify_criticality(n).unwrap_or_else(|e| panic!("N={}: {}", n, e));
            critical_values(n).unwrap();
            assert_eq!(closed_form_critical_points(n).unwrap().count(), if n % 2 == 1 { n + 1 } else { n + 2 });
        }
    }

    #[test]
    fn extras_outside_tori() {
        for n in 3..=6 {
            let set = closed_form_critical_points(n).unwrap();
            for (name, ok) in chart_membership(n, &set.main).unwrap() {
                assert!(ok, "N={} main not in {}", n, name);
            }
            for pt in &set.extras {
                for (name, ok) in chart_membership(n, pt).unwrap() {
                    assert!(!ok, "N={} {} in {}", n, pt.label, name);
                }
            }
        }
    }
}
