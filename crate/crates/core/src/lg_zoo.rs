//! The four superpotential presentations of the mirror of `Q_N` and the
//! changes of coordinates between them.
//!
//! Identities on the (constrained) canonical model are checked after pulling
//! everything back to the Lusztig torus, which parametrizes a dense open subset.

use std::collections::BTreeMap;

use num::{BigRational, One};
use thiserror::Error;

use crate::arith::{
    ArithError, LaurentPolynomial as LP, Monomial, RationalFunction as RF, Substitution, Symbol,
};
use crate::cohomology::{CohomologyError, Quadric};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LgError {
    #[error(transparent)]
    Dimension(#[from] CohomologyError),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("delta index {l} out of range for N = {n}")]
    DeltaRange { n: usize, l: usize },
    #[error("map {0:?} is not available for N = {1}")]
    InvalidKind(MapKind, usize),
    #[error("identity failed for {what}: lhs = {lhs}, rhs = {rhs}")]
    Mismatch { what: String, lhs: String, rhs: String },
    #[error("log-Jacobian needs an unconstrained torus chart: {0}")]
    SingularChart(String),
}

pub fn p_sym(k: usize) -> Symbol {
    Symbol::from(format!("p_{}", k))
}

/// The second middle Plücker coordinate `p'_{m-1}`.
pub fn pp_sym(m: usize) -> Symbol {
    Symbol::from(format!("p_{}'", m - 1))
}

pub fn a_sym(i: usize) -> Symbol {
    Symbol::from(format!("a_{}", i))
}

pub fn b_sym(i: usize) -> Symbol {
    Symbol::from(format!("b_{}", i))
}

pub fn z_sym(i: usize) -> Symbol {
    Symbol::from(format!("z_{}", i))
}

pub fn nu_sym(i: usize) -> Symbol {
    Symbol::from(format!("nu_{}", i))
}

pub fn q_sym() -> Symbol {
    Symbol::new("q")
}

fn v(s: &Symbol) -> RF {
    RF::var(s)
}

fn vp(s: &Symbol) -> LP {
    LP::var(s)
}

fn q() -> RF {
    RF::var(&q_sym())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ModelName {
    Canonical,
    Givental,
    Przyjalkowski,
    Lusztig,
}

impl ModelName {
    pub fn label(&self) -> &'static str {
        match self {
            ModelName::Canonical => "canonical",
            ModelName::Givental => "givental",
            ModelName::Przyjalkowski => "przyjalkowski",
            ModelName::Lusztig => "lusztig",
        }
    }
}

/// A Landau-Ginzburg model: variables, superpotential and constraints.
#[derive(Debug, Clone)]
pub struct LGModel {
    pub name: ModelName,
    pub n: usize,
    pub variables: Vec<Symbol>,
    pub superpotential: RF,
    pub constraints: Vec<LP>,
}

impl LGModel {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "name": self.name.label(),
            "N": self.n,
            "vars": self.variables.iter().map(|s| s.name().to_string()).collect::<Vec<_>>(),
            "W": self.superpotential.to_json(),
            "constraints": self.constraints.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
        })
    }
}

/// `δ_ℓ = Σ_{k=0}^{ℓ} (-1)^k p_{ℓ-k} p_{N-ℓ+k}` with homogeneous `p_0`.
pub fn delta(n: usize, l: usize) -> Result<LP, LgError> {
    let qd = Quadric::new(n)?;
    let m = qd.m();
    let max = if qd.is_even() { m.saturating_sub(3) } else { m - 1 };
    if l < 1 || l > max {
        return Err(LgError::DeltaRange { n, l });
    }
    Ok(delta_unchecked(n, l))
}

pub(crate) fn delta_unchecked(n: usize, l: usize) -> LP {
    (0..=l)
        .map(|k| {
            let t = &vp(&p_sym(l - k)) * &vp(&p_sym(n - l + k));
            if k % 2 == 0 {
                t
            } else {
                -t
            }
        })
        .sum()
}

/// Sets the homogeneous coordinate `p_0` to 1.
pub fn dehomogenize(f: &LP) -> LP {
    let p0 = p_sym(0);
    f.terms()
        .map(|(m, c)| {
            let (_, rest) = m.split_off(&p0);
            LP::term(rest, c.clone())
        })
        .sum()
}

/// Affine `δ_ℓ` with the conventions `δ_0 = p_N` and, for even `N`,
/// `δ_{m-2} = p_{m-1} p'_{m-1}`.
pub fn delta_affine(n: usize, l: usize) -> LP {
    let qd = Quadric { n };
    let m = qd.m();
    if l == 0 {
        vp(&p_sym(n))
    } else if qd.is_even() && l == m - 2 {
        &vp(&p_sym(m - 1)) * &vp(&pp_sym(m))
    } else {
        dehomogenize(&delta_unchecked(n, l))
    }
}

/// The quadric relation `p_{m-1}p'_{m-1} - p_{m-2}p_m + … + (-1)^{m-1} p_0 p_{2m-2}`.
pub fn quadric_relation(n: usize) -> Result<LP, LgError> {
    let qd = Quadric::new(n)?;
    if !qd.is_even() {
        return Err(LgError::Dimension(CohomologyError::ClassMismatch {
            n,
            class: "quadric relation".into(),
        }));
    }
    let m = qd.m();
    let mut out = &vp(&p_sym(m - 1)) * &vp(&pp_sym(m));
    for k in 1..m {
        let t = &vp(&p_sym(m - 1 - k)) * &vp(&p_sym(m - 1 + k));
        out = if k % 2 == 0 { &out + &t } else { &out - &t };
    }
    Ok(out)
}

fn canonical_vars(qd: Quadric) -> Vec<Symbol> {
    let m = qd.m();
    let mut vars = Vec::new();
    for k in 1..=qd.n {
        vars.push(p_sym(k));
        if qd.is_even() && k == m - 1 {
            vars.push(pp_sym(m));
        }
    }
    vars
}

pub fn canonical_model(n: usize) -> Result<LGModel, LgError> {
    let qd = Quadric::new(n)?;
    let m = qd.m();
    let p = |k: usize| v(&p_sym(k));
    let mut w = p(1);
    let last = if qd.is_even() { m.saturating_sub(3) } else { m - 1 };
    for l in 1..=last {
        let num = &p(l + 1) * &p(n - l);
        w = &w + &(&num / &RF::from(delta_affine(n, l)));
    }
    let mut constraints = Vec::new();
    if qd.is_even() {
        let pp = v(&pp_sym(m));
        w = &w + &(&p(m) / &p(m - 1));
        w = &w + &(&p(m) / &pp);
        constraints.push(quadric_relation(n)?);
    }
    w = &w + &(&(&q() * &p(1)) / &p(n));
    Ok(LGModel {
        name: ModelName::Canonical,
        n,
        variables: canonical_vars(qd),
        superpotential: w,
        constraints,
    })
}

pub fn givental_model(n: usize) -> Result<LGModel, LgError> {
    Quadric::new(n)?;
    let vars: Vec<Symbol> = (1..=n + 2).map(nu_sym).collect();
    let w: RF = (1..=n).map(|i| v(&nu_sym(i))).sum();
    let prod = LP::product(&vars);
    let c1 = &prod - &vp(&q_sym());
    let c2 = &(&vp(&nu_sym(n + 1)) + &vp(&nu_sym(n + 2))) - &LP::one();
    Ok(LGModel { name: ModelName::Givental, n, variables: vars, superpotential: w, constraints: vec![c1, c2] })
}

pub fn przyjalkowski_model(n: usize) -> Result<LGModel, LgError> {
    Quadric::new(n)?;
    let vars: Vec<Symbol> = (1..=n).map(z_sym).collect();
    let mut w: RF = (1..n).map(|i| v(&z_sym(i))).sum();
    let top = (&v(&z_sym(n)) + &q()).pow(2)?;
    w = &w + &(&top / &RF::from(LP::product(&vars)));
    Ok(LGModel { name: ModelName::Przyjalkowski, n, variables: vars, superpotential: w, constraints: vec![] })
}

/// Lusztig variables in quiver order: `a_1.., c, [d,] b_{..}.., b_1`.
pub fn lusztig_vars(n: usize) -> Result<Vec<Symbol>, LgError> {
    let qd = Quadric::new(n)?;
    let m = qd.m();
    let top = if qd.is_even() { m - 2 } else { m - 1 };
    let mut vars: Vec<Symbol> = (1..=top).map(a_sym).collect();
    vars.push(Symbol::new("c"));
    if qd.is_even() {
        vars.push(Symbol::new("d"));
    }
    vars.extend((1..=top).rev().map(b_sym));
    Ok(vars)
}

pub fn lusztig_model(n: usize) -> Result<LGModel, LgError> {
    let vars = lusztig_vars(n)?;
    let sum: LP = vars.iter().map(vp).sum();
    let prod = LP::product(&vars);
    let qterm = (&vp(&q_sym()) * &(&vp(&a_sym(1)) + &vp(&b_sym(1))))
        .mul_monomial(&prod.leading().unwrap().0.inverse())?;
    Ok(LGModel {
        name: ModelName::Lusztig,
        n,
        variables: vars,
        superpotential: RF::from(&sum + &qterm),
        constraints: vec![],
    })
}

pub fn model(name: ModelName, n: usize) -> Result<LGModel, LgError> {
    match name {
        ModelName::Canonical => canonical_model(n),
        ModelName::Givental => givental_model(n),
        ModelName::Przyjalkowski => przyjalkowski_model(n),
        ModelName::Lusztig => lusztig_model(n),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MapKind {
    PrzToGiv,
    GivToPrz,
    CanToPrz,
    CanToGiv,
    PrzToCan,
    PlueckerInLusztig,
}

impl MapKind {
    pub fn label(&self) -> &'static str {
        match self {
            MapKind::PrzToGiv => "prz->giv",
            MapKind::GivToPrz => "giv->prz",
            MapKind::CanToPrz => "can->prz",
            MapKind::CanToGiv => "can->giv",
            MapKind::PrzToCan => "prz->can",
            MapKind::PlueckerInLusztig => "pluecker-in-lusztig",
        }
    }

    /// Map kinds defined for the parity of `n`.
    pub fn available(n: usize) -> Vec<MapKind> {
        use MapKind::*;
        if n % 2 == 1 {
            vec![PrzToGiv, GivToPrz, CanToPrz, CanToGiv, PlueckerInLusztig]
        } else {
            vec![PrzToGiv, GivToPrz, CanToPrz, PrzToCan, PlueckerInLusztig]
        }
    }
}

/// Images of target variables as rational functions of source variables.
#[derive(Debug, Clone)]
pub struct CoordinateMap {
    pub kind: Option<MapKind>,
    pub n: usize,
    pub source: ModelName,
    pub target: ModelName,
    pub images: BTreeMap<Symbol, RF>,
}

impl CoordinateMap {
    /// Functions of the source variables that must not vanish for the map to
    /// be defined: every image denominator and every variable appearing with a
    /// negative exponent.
    pub fn chart(&self) -> Vec<LP> {
        let mut out: Vec<LP> = Vec::new();
        for img in self.images.values() {
            let mut push = |p: LP| {
                if !out.contains(&p) {
                    out.push(p);
                }
            };
            if img.den().as_constant().is_none() {
                push(img.den().clone());
            }
            for p in [img.num(), img.den()] {
                for s in p.variables() {
                    if p.exponent_range(&s).0 < 0 {
                        push(LP::var(&s));
                    }
                }
            }
        }
        out
    }

    pub fn substitution(&self) -> Substitution {
        self.images.clone()
    }

    /// Pulls a function of the target variables back to the source.
    pub fn pull_back(&self, f: &RF) -> Result<RF, LgError> {
        Ok(f.substitute(&self.images)?)
    }

    /// `second ∘ self`: images of `second` expressed in the source of `self`.
    pub fn then(&self, second: &CoordinateMap) -> Result<CoordinateMap, LgError> {
        let mut images = BTreeMap::new();
        for (s, f) in &second.images {
            images.insert(s.clone(), f.substitute(&self.images)?);
        }
        Ok(CoordinateMap { kind: None, n: self.n, source: self.source, target: second.target, images })
    }
}

fn prz_to_giv(n: usize) -> CoordinateMap {
    let z = |i| v(&z_sym(i));
    let zn_q = &z(n) + &q();
    let prod: RF = (1..=n).map(z).product();
    let mut images = BTreeMap::new();
    images.insert(nu_sym(1), &zn_q.pow(2).unwrap() / &prod);
    for i in 2..=n {
        images.insert(nu_sym(i), z(i - 1));
    }
    images.insert(nu_sym(n + 1), &z(n) / &zn_q);
    images.insert(nu_sym(n + 2), &q() / &zn_q);
    CoordinateMap { kind: Some(MapKind::PrzToGiv), n, source: ModelName::Przyjalkowski, target: ModelName::Givental, images }
}

fn giv_to_prz(n: usize) -> CoordinateMap {
    let nu = |i| v(&nu_sym(i));
    let mut images = BTreeMap::new();
    for i in 1..n {
        images.insert(z_sym(i), nu(i + 1));
    }
    images.insert(z_sym(n), &(&q() * &nu(n + 1)) / &nu(n + 2));
    CoordinateMap { kind: Some(MapKind::GivToPrz), n, source: ModelName::Givental, target: ModelName::Przyjalkowski, images }
}

fn dl(n: usize, l: usize) -> RF {
    RF::from(delta_affine(n, l))
}

fn can_to_prz(qd: Quadric) -> CoordinateMap {
    let n = qd.n;
    let m = qd.m();
    let p = |k: usize| if k == 0 { RF::one() } else { v(&p_sym(k)) };
    let mut images = BTreeMap::new();
    if !qd.is_even() {
        for i in 1..=n {
            let img = if i <= m - 1 {
                &p(i) / &p(i - 1)
            } else if i <= 2 * m - 3 {
                let num = &p(2 * m - 1 - i) * &dl(n, 2 * m - 3 - i);
                let den = &p(2 * m - 2 - i) * &dl(n, 2 * m - 2 - i);
                &num / &den
            } else if i == 2 * m - 2 {
                &(&q() * &p(1)) / &p(2 * m - 1)
            } else {
                &(&q() * &dl(n, m - 2)) / &dl(n, m - 1)
            };
            images.insert(z_sym(i), img);
        }
    } else {
        let pp = v(&pp_sym(m));
        for i in 1..=n {
            let img = if i <= m - 2 {
                &p(i) / &p(i - 1)
            } else if i <= 2 * m - 5 {
                let num = &p(2 * m - 3 - i) * &dl(n, 2 * m - 5 - i);
                let den = &p(2 * m - 4 - i) * &dl(n, 2 * m - 4 - i);
                &num / &den
            } else if i == 2 * m - 4 {
                &p(m) / &p(m - 1)
            } else if i == 2 * m - 3 {
                &p(m) / &pp
            } else {
                &(&q() * &dl(n, m - 3)) / &dl(n, m - 2)
            };
            images.insert(z_sym(i), img);
        }
    }
    CoordinateMap { kind: Some(MapKind::CanToPrz), n, source: ModelName::Canonical, target: ModelName::Przyjalkowski, images }
}

fn can_to_giv_odd(qd: Quadric) -> CoordinateMap {
    let n = qd.n;
    let m = qd.m();
    let p = |k: usize| if k == 0 { RF::one() } else { v(&p_sym(k)) };
    let mut images = BTreeMap::new();
    images.insert(nu_sym(1), &p(m).pow(2).unwrap() / &dl(n, m - 1));
    for i in 2..=m {
        images.insert(nu_sym(i), &p(i - 1) / &p(i - 2));
    }
    for i in m + 1..=2 * m - 2 {
        let num = &p(2 * m - i) * &dl(n, 2 * m - 2 - i);
        let den = &p(2 * m - 1 - i) * &dl(n, 2 * m - 1 - i);
        images.insert(nu_sym(i), &num / &den);
    }
    images.insert(nu_sym(2 * m - 1), &(&q() * &p(1)) / &p(2 * m - 1));
    let pm = &p(m - 1) * &p(m);
    images.insert(nu_sym(2 * m), &dl(n, m - 2) / &pm);
    images.insert(nu_sym(2 * m + 1), &dl(n, m - 1) / &pm);
    CoordinateMap { kind: Some(MapKind::CanToGiv), n, source: ModelName::Canonical, target: ModelName::Givental, images }
}

/// Inverse of the even canonical-to-Przyjalkowski map, derived by inverting it
/// on the Lusztig torus. Entries from `p_{m-1}` on carry the factor
/// `z_N/(z_N+q)` relative to the printed table.
fn prz_to_can_even(qd: Quadric) -> CoordinateMap {
    let n = qd.n;
    let m = qd.m();
    let z = |i: usize| v(&z_sym(i));
    let zprod = |lo: usize, hi: usize| -> RF { (lo..=hi).map(z).product() };
    let zn_q = &z(n) + &q();
    let f = &z(n) / &zn_q;
    let base = &q() * &zprod(1, m - 2);
    let mut images = BTreeMap::new();
    for i in 1..=n {
        let img = if i <= m - 2 {
            zprod(1, i)
        } else if i == m - 1 {
            &(&base * &z(2 * m - 3)) / &zn_q
        } else if i == m {
            &(&(&base * &z(2 * m - 4)) * &z(2 * m - 3)) / &zn_q
        } else if i <= 2 * m - 3 {
            let head = &(&q() * &zprod(1, i - 3)) * &(&z(i - 2) + &z(2 * m - 1 - i));
            let tail = &(&z(2 * m - 4) * &z(2 * m - 3)) / &zn_q;
            &(&head * &tail) * &f
        } else {
            let num = &(&q() * &zprod(1, 2 * m - 3)) * &z(1);
            &(&num / &zn_q) * &f
        };
        images.insert(p_sym(i), img);
    }
    images.insert(pp_sym(m), &(&base * &z(2 * m - 4)) / &zn_q);
    CoordinateMap { kind: Some(MapKind::PrzToCan), n, source: ModelName::Przyjalkowski, target: ModelName::Canonical, images }
}

/// The inverse table exactly as printed (kept as a negative control).
pub fn prz_to_can_even_printed(n: usize) -> Result<CoordinateMap, LgError> {
    let qd = Quadric::new(n)?;
    if !qd.is_even() {
        return Err(LgError::InvalidKind(MapKind::PrzToCan, n));
    }
    let m = qd.m();
    let z = |i: usize| v(&z_sym(i));
    let zprod = |lo: usize, hi: usize| -> RF { (lo..=hi).map(z).product() };
    let zn = z(n);
    let zn_q = &zn + &q();
    let base = &q() * &zprod(1, m - 2);
    let mut images = BTreeMap::new();
    for i in 1..=n {
        let img = if i <= m - 2 {
            zprod(1, i)
        } else if i == m - 1 {
            &(&base * &z(2 * m - 3)) / &zn
        } else if i == m {
            &(&(&base * &z(2 * m - 4)) * &z(2 * m - 3)) / &zn
        } else if i <= 2 * m - 3 {
            let head = &(&q() * &zprod(1, i - 2)) * &(&RF::one() + &(&z(2 * m - 1 - i) / &z(i - 2)));
            &head * &(&(&z(2 * m - 4) * &z(2 * m - 3)) / &zn_q)
        } else {
            &(&(&q() * &zprod(1, 2 * m - 3)) * &z(1)) / &zn_q
        };
        images.insert(p_sym(i), img);
    }
    images.insert(pp_sym(m), &(&base * &z(2 * m - 4)) / &zn);
    Ok(CoordinateMap { kind: None, n, source: ModelName::Przyjalkowski, target: ModelName::Canonical, images })
}

/// Plücker coordinates on the Lusztig torus. The even table is the factorized
/// unipotent evaluation; the odd table is its analogue
/// `p_k = a_1⋯a_{k-1}(a_k+b_k)` (k < m), `p_m = a_1⋯a_{m-1}c`,
/// `p_k = a_1⋯a_{m-1}c·b_{m-1}⋯b_{2m-k}` (k > m).
pub fn pluecker_images(n: usize) -> Result<BTreeMap<Symbol, LP>, LgError> {
    let qd = Quadric::new(n)?;
    let m = qd.m();
    let a = |i: usize| vp(&a_sym(i));
    let b = |i: usize| vp(&b_sym(i));
    let aprod = |k: usize| -> LP { (1..=k).map(a).product() };
    let c = LP::named("c");
    let d = LP::named("d");
    let mut out = BTreeMap::new();
    out.insert(p_sym(0), LP::one());
    if qd.is_even() {
        let big_a = aprod(m - 2);
        for k in 1..=n {
            let img = if k <= m - 2 {
                &aprod(k - 1) * &(&a(k) + &b(k))
            } else if k == m - 1 {
                &big_a * &c
            } else if k == m {
                &(&big_a * &c) * &d
            } else {
                let bs: LP = (2 * m - 1 - k..=m - 2).map(b).product();
                &(&(&big_a * &c) * &d) * &bs
            };
            out.insert(p_sym(k), img);
        }
        out.insert(pp_sym(m), &big_a * &d);
    } else {
        let big_a = aprod(m - 1);
        for k in 1..=n {
            let img = if k <= m - 1 {
                &aprod(k - 1) * &(&a(k) + &b(k))
            } else if k == m {
                &big_a * &c
            } else {
                let bs: LP = (2 * m - k..=m - 1).map(b).product();
                &(&big_a * &c) * &bs
            };
            out.insert(p_sym(k), img);
        }
    }
    Ok(out)
}

fn pluecker_in_lusztig(n: usize) -> Result<CoordinateMap, LgError> {
    let images = pluecker_images(n)?.into_iter().map(|(s, p)| (s, RF::from(p))).collect();
    Ok(CoordinateMap {
        kind: Some(MapKind::PlueckerInLusztig),
        n,
        source: ModelName::Lusztig,
        target: ModelName::Canonical,
        images,
    })
}

/// Lusztig coordinates as functions of Plücker coordinates (inverse of
/// [`pluecker_images`]): `b_ℓ = p_{N+1-ℓ}/p_{N-ℓ}`,
/// `a_ℓ = b_ℓ δ_ℓ/δ_{ℓ-1}`, and `c`, `d` from the middle coordinates.
pub fn lusztig_from_pluecker(n: usize) -> Result<CoordinateMap, LgError> {
    let qd = Quadric::new(n)?;
    let m = qd.m();
    let p = |k: usize| if k == 0 { RF::one() } else { v(&p_sym(k)) };
    let top = if qd.is_even() { m - 2 } else { m - 1 };
    let mut images = BTreeMap::new();
    let mut aprod = RF::one();
    for l in 1..=top {
        let b = &p(n + 1 - l) / &p(n - l);
        let a = &(&b * &dl(n, l)) / &dl(n, l - 1);
        aprod = &aprod * &a;
        images.insert(b_sym(l), b);
        images.insert(a_sym(l), a);
    }
    if qd.is_even() {
        images.insert(Symbol::new("c"), &p(m) / &v(&pp_sym(m)));
        images.insert(Symbol::new("d"), &p(m) / &p(m - 1));
    } else {
        images.insert(Symbol::new("c"), &p(m) / &aprod);
    }
    Ok(CoordinateMap { kind: None, n, source: ModelName::Canonical, target: ModelName::Lusztig, images })
}

pub fn coordinate_map(kind: MapKind, n: usize) -> Result<CoordinateMap, LgError> {
    let qd = Quadric::new(n)?;
    match (kind, qd.is_even()) {
        (MapKind::PrzToGiv, _) => Ok(prz_to_giv(n)),
        (MapKind::GivToPrz, _) => Ok(giv_to_prz(n)),
        (MapKind::CanToPrz, _) => Ok(can_to_prz(qd)),
        (MapKind::CanToGiv, false) => Ok(can_to_giv_odd(qd)),
        (MapKind::PrzToCan, true) => Ok(prz_to_can_even(qd)),
        (MapKind::PlueckerInLusztig, _) => pluecker_in_lusztig(n),
        _ => Err(LgError::InvalidKind(kind, n)),
    }
}

/// Pulls a function of Plücker coordinates back to the Lusztig torus
/// (with `p_0 = 1`).
pub fn to_lusztig_torus(f: &RF, n: usize) -> Result<RF, LgError> {
    pluecker_in_lusztig(n)?.pull_back(f)
}

fn expect_equal(what: &str, lhs: &RF, rhs: &RF) -> Result<(), LgError> {
    if lhs.equals(rhs) {
        Ok(())
    } else {
        Err(LgError::Mismatch {
            what: what.to_string(),
            lhs: lhs.to_json().to_string(),
            rhs: rhs.to_json().to_string(),
        })
    }
}

fn expect_zero(what: &str, f: &RF) -> Result<(), LgError> {
    expect_equal(what, f, &RF::zero())
}

/// Checks that the map pulls the target superpotential back to the source
/// superpotential, and target constraints back to zero.
pub fn verify_pullback(kind: MapKind, n: usize) -> Result<(), LgError> {
    let map = coordinate_map(kind, n)?;
    let giv = givental_model(n)?;
    let prz = przyjalkowski_model(n)?;
    let can = canonical_model(n)?;
    let lus = lusztig_model(n)?;
    let label = kind.label();
    match kind {
        MapKind::PrzToGiv => {
            expect_equal(label, &map.pull_back(&giv.superpotential)?, &prz.superpotential)?;
            for c in &giv.constraints {
                expect_zero(&format!("{} constraint", label), &map.pull_back(&RF::from(c))?)?;
            }
        }
        MapKind::GivToPrz => {
            // parametrize the Givental variety by the Przyjalkowski torus
            let chart = prz_to_giv(n);
            let round = chart.then(&map)?;
            for i in 1..=n {
                expect_equal(&format!("{} round trip z_{}", label, i), &round.images[&z_sym(i)], &v(&z_sym(i)))?;
            }
            let lhs = chart.pull_back(&map.pull_back(&prz.superpotential)?)?;
            let rhs = chart.pull_back(&giv.superpotential)?;
            expect_equal(label, &lhs, &rhs)?;
        }
        MapKind::CanToPrz | MapKind::CanToGiv => {
            let torus = pluecker_in_lusztig(n)?;
            let target = if kind == MapKind::CanToPrz { &prz } else { &giv };
            let composed = torus.then(&map)?;
            let lhs = composed.pull_back(&target.superpotential)?;
            expect_equal(label, &lhs, &lus.superpotential)?;
            for c in &target.constraints {
                expect_zero(&format!("{} constraint", label), &composed.pull_back(&RF::from(c))?)?;
            }
        }
        MapKind::PrzToCan => {
            let w = map.pull_back(&can.superpotential)?;
            expect_equal(label, &w, &prz.superpotential)?;
            let rel = dehomogenize(&quadric_relation(n)?);
            expect_zero(&format!("{} quadric", label), &map.pull_back(&RF::from(rel))?)?;
        }
        MapKind::PlueckerInLusztig => {
            expect_equal(label, &map.pull_back(&can.superpotential)?, &lus.superpotential)?;
            for c in &can.constraints {
                expect_zero(&format!("{} quadric", label), &map.pull_back(&RF::from(c))?)?;
            }
        }
    }
    Ok(())
}

/// `det[(s_i / t_j) ∂t_j/∂s_i]` for images `t_j` of source variables `s_i`.
pub fn log_jacobian(sources: &[Symbol], images: &[RF]) -> Result<RF, LgError> {
    if sources.len() != images.len() {
        return Err(LgError::SingularChart(format!(
            "{} source variables but {} images",
            sources.len(),
            images.len()
        )));
    }
    let mut rows: Vec<Vec<RF>> = Vec::with_capacity(images.len());
    for t in images {
        let tinv = t.inverse()?;
        rows.push(sources.iter().map(|s| &t.euler(s) * &tinv).collect());
    }
    Ok(determinant(rows))
}

/// Fraction-based Gaussian elimination over rational functions.
pub fn determinant(mut a: Vec<Vec<RF>>) -> RF {
    let n = a.len();
    let mut det = RF::one();
    for col in 0..n {
        let pivot = match (col..n).find(|&r| !a[r][col].is_zero()) {
            Some(r) => r,
            None => return RF::zero(),
        };
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        let pv = a[col][col].clone();
        det = &det * &pv;
        let pinv = pv.inverse().expect("nonzero pivot");
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] * &pinv;
            for c in col..n {
                let t = &factor * &a[col][c];
                a[r][c] = &a[r][c] - &t;
            }
        }
    }
    det
}

/// Torus-chart log-Jacobian of a map between torus charts. The Givental
/// variety is charted by `ν_2, …, ν_N, t = ν_{N+1}/ν_{N+2}` (solving the two
/// constraints for `ν_1` and `ν_{N+2}`).
pub fn log_jacobian_det(map: &CoordinateMap) -> Result<RF, LgError> {
    let n = map.n;
    match (map.source, map.target) {
        (ModelName::Przyjalkowski, ModelName::Givental) => {
            let mut imgs: Vec<RF> = (2..=n).map(|i| map.images[&nu_sym(i)].clone()).collect();
            imgs.push(&map.images[&nu_sym(n + 1)] / &map.images[&nu_sym(n + 2)]);
            let src: Vec<Symbol> = (1..=n).map(z_sym).collect();
            log_jacobian(&src, &imgs)
        }
        (ModelName::Givental, ModelName::Przyjalkowski) => {
            let t = Symbol::new("t");
            let tv = v(&t);
            let one_t = &RF::one() + &tv;
            let mut chart: Substitution = BTreeMap::new();
            chart.insert(nu_sym(n + 1), &tv / &one_t);
            chart.insert(nu_sym(n + 2), &RF::one() / &one_t);
            let imgs: Vec<RF> = (1..=n)
                .map(|i| map.images[&z_sym(i)].substitute(&chart))
                .collect::<Result<_, _>>()?;
            let mut src: Vec<Symbol> = (2..=n).map(nu_sym).collect();
            src.push(t);
            log_jacobian(&src, &imgs)
        }
        (s, t) if s == t => {
            let src: Vec<Symbol> = map.images.keys().cloned().collect();
            let imgs: Vec<RF> = src.iter().map(|s| map.images[s].clone()).collect();
            log_jacobian(&src, &imgs)
        }
        (s, t) => Err(LgError::SingularChart(format!("{} -> {}", s.label(), t.label()))),
    }
}

/// `±1` check used for volume-form matching.
pub fn is_unit_sign(f: &RF) -> bool {
    let one = RF::one();
    f.equals(&one) || f.equals(&-one)
}

/// Monomial helper used by callers building torus maps.
pub fn monomial_rf(pairs: &[(Symbol, i64)]) -> RF {
    RF::from(LP::term(Monomial::from_pairs(pairs.iter().cloned()), BigRational::one()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_maps_pull_back() {
        for n in 3..=8 {
            for kind in MapKind::available(n) {
                verify_pullback(kind, n).unwrap_or_else(|e| panic!("N={} {:?}: {}", n, kind, e));
            }
        }
    }

    #[test]
    fn printed_even_inverse_fails() {
        for n in [4, 6, 8] {
            let map = prz_to_can_even_printed(n).unwrap();
            let w = map.pull_back(&canonical_model(n).unwrap().superpotential).unwrap();
            assert!(!w.equals(&przyjalkowski_model(n).unwrap().superpotential), "N={}", n);
        }
    }

    #[test]
    fn lusztig_inverse_round_trip() {
        for n in 3..=8 {
            let back = lusztig_from_pluecker(n).unwrap();
            let fwd = coordinate_map(MapKind::PlueckerInLusztig, n).unwrap();
            let round = fwd.then(&back).unwrap();
            for s in lusztig_vars(n).unwrap() {
                assert!(round.images[&s].equals(&RF::var(&s)), "N={} {}", n, s);
            }
        }
    }

    #[test]
    fn givental_chart_log_jacobian_is_one() {
        for n in 3..=7 {
            let det = log_jacobian_det(&coordinate_map(MapKind::PrzToGiv, n).unwrap()).unwrap();
            assert!(is_unit_sign(&det), "N={} det={}", n, det);
            let det = log_jacobian_det(&coordinate_map(MapKind::GivToPrz, n).unwrap()).unwrap();
            assert!(is_unit_sign(&det), "N={} det={}", n, det);
        }
    }

    #[test]
    fn delta_range() {
        assert!(delta(5, 2).is_ok());
        assert!(delta(5, 3).is_err());
        assert!(delta(8, 1).is_ok());
        assert!(delta(8, 2).is_ok());
        assert!(delta(8, 3).is_err());
        assert!(delta(4, 1).is_err());
        assert_eq!(delta(3, 1).unwrap(), LP::parse("p_1*p_2 - p_0*p_3").unwrap());
    }
}
