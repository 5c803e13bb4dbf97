//! Coefficients of the hypergeometric flat section of the dual connection,
//! computed three ways: closed form, the divisor/topological recursion on
//! descendant invariants `β_{ℓ,k}`, and constant terms of powers of the
//! Lusztig superpotential.
//!
//! The coefficient of class `ℓ` in degree `k` multiplies `ħ^{-(kN - deg ℓ)} q^k`.

use std::collections::BTreeMap;

use num::{BigInt, BigRational, One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::arith::{LaurentPolynomial as LP, Monomial, Symbol};
use crate::cohomology::{
    self, binomial, dual_dubrovin_apply, CohVector, CohomologyError, Direction, QSeries, Quadric, SchubertClass, HBAR,
};
use crate::lg_zoo::{self, p_sym, pp_sym, q_sym, LgError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FlatError {
    #[error(transparent)]
    Dimension(#[from] CohomologyError),
    #[error(transparent)]
    Lg(#[from] LgError),
    #[error("superpotential term {0} is neither a bare variable nor linear in q")]
    UnsupportedTerm(String),
    #[error("hbar exponent law broken for {class} at k = {k}: selection degree {got}, expected {expected}")]
    HbarLaw { class: String, k: usize, got: i64, expected: i64 },
    #[error("recursion inconsistent at {0}")]
    Inconsistent(String),
    #[error("flatness fails in the {dir} direction at q^{k}, class {class}: {coef}")]
    NotFlat { dir: String, k: usize, class: String, coef: String },
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

fn ratio(n: BigInt, d: BigInt) -> BigRational {
    BigRational::new(n, d)
}

/// The basis class whose coefficient is labelled by its degree `ℓ`.
fn degree_of(qd: Quadric, c: SchubertClass) -> usize {
    qd.grading(c)
}

/// `ħ`-exponent (negated) of the `(ℓ, k)` coefficient: `kN - ℓ`.
pub fn hbar_exponent(n: usize, class: SchubertClass, k: usize) -> i64 {
    let qd = Quadric { n };
    (k * n) as i64 - degree_of(qd, class) as i64
}

/// Closed-form coefficient and its `ħ`-exponent.
pub fn closed_form_coefficient(n: usize, class: SchubertClass, k: usize) -> Result<(BigRational, i64), FlatError> {
    let qd = Quadric::new(n)?;
    qd.check(class)?;
    let e = hbar_exponent(n, class, k);
    let kk = BigInt::from(k);
    let value = match class {
        SchubertClass::MidPrime(_) => {
            let m = qd.m();
            ratio(kk.pow((m - 1) as u32) * binomial(2 * k, k), BigInt::from(2) * factorial(k).pow(n as u32))
        }
        SchubertClass::Standard(l) if l == n => {
            if k == 0 {
                BigRational::zero()
            } else {
                ratio(
                    BigInt::from(k - 1) * binomial(2 * k - 2, k - 1),
                    kk * factorial(k - 1).pow(n as u32),
                )
            }
        }
        SchubertClass::Standard(l) => {
            if k == 0 {
                if l == 0 {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            } else {
                let base = ratio(kk.pow(l as u32) * binomial(2 * k, k), factorial(k).pow(n as u32));
                if l >= (n + 1) / 2 {
                    base / BigRational::from_integer(BigInt::from(2))
                } else {
                    base
                }
            }
        }
    };
    Ok((value, e))
}

/// `a_k = C(2k,k)/(k!)^N`.
pub fn hypergeometric_series(n: usize, kmax: usize) -> Vec<BigRational> {
    (0..=kmax).map(|k| cohomology::hypergeometric_coefficient(n, k)).collect()
}

/// `I_k(σ_N ψ^{Nk-2}) = C(2k,k)/(k!)^N`.
pub fn gw_invariant(n: usize, k: usize) -> Result<BigRational, FlatError> {
    Quadric::new(n)?;
    Ok(ratio(binomial(2 * k, k), factorial(k).pow(n as u32)))
}

/// Descendant invariants `β_{ℓ,k}`; the `k = 0` row is `1` at `ℓ = 0`.
#[derive(Debug, Clone)]
pub struct BetaTable {
    pub n: usize,
    pub kmax: usize,
    pub entries: BTreeMap<(SchubertClass, usize), BigRational>,
}

impl BetaTable {
    pub fn get(&self, c: SchubertClass, k: usize) -> BigRational {
        self.entries.get(&(c, k)).cloned().unwrap_or_else(BigRational::zero)
    }
}

type Relation = (SchubertClass, Vec<(SchubertClass, usize, i64)>);

/// `k β_{ℓ,k} = Σ coef · β_{ℓ', k - shift}`, one relation per class.
fn recursion_relations(qd: Quadric) -> Vec<Relation> {
    use SchubertClass::*;
    let n = qd.n;
    let m = qd.m();
    let mut rels = Vec::new();
    for l in 0..=n {
        let rhs = if l == n {
            vec![(Standard(1), 1, 1)]
        } else if l == n - 1 {
            vec![(Standard(n), 0, 1), (Standard(0), 1, 1)]
        } else if !qd.is_even() && l == m - 1 {
            vec![(Standard(m), 0, 2)]
        } else if qd.is_even() && l == m - 2 {
            vec![(Standard(m - 1), 0, 1), (MidPrime(m - 1), 0, 1)]
        } else {
            vec![(Standard(l + 1), 0, 1)]
        };
        rels.push((Standard(l), rhs));
    }
    if qd.is_even() {
        rels.push((MidPrime(m - 1), vec![(Standard(m), 0, 1)]));
    }
    rels
}

/// Solves the recursion degree by degree, top class first, then checks the
/// seed `β_{1,1} = 2`, every relation, and for even `N` the symmetry
/// `β_{m-1,k} = β'_{m-1,k}`.
pub fn beta_recursion(n: usize, kmax: usize) -> Result<BetaTable, FlatError> {
    let qd = Quadric::new(n)?;
    let mut rels = recursion_relations(qd);
    rels.sort_by_key(|(c, _)| std::cmp::Reverse(qd.grading(*c)));
    let mut t = BetaTable { n, kmax, entries: BTreeMap::new() };
    for c in qd.basis() {
        let v = if c == SchubertClass::Standard(0) { BigRational::one() } else { BigRational::zero() };
        t.entries.insert((c, 0), v);
    }
    let eval_rhs = |t: &BetaTable, rhs: &[(SchubertClass, usize, i64)], k: usize| -> Option<BigRational> {
        let mut s = BigRational::zero();
        for (c, shift, coef) in rhs {
            let key = (*c, k - shift);
            s += t.entries.get(&key)?.clone() * BigRational::from_integer(BigInt::from(*coef));
        }
        Some(s)
    };
    for k in 1..=kmax {
        for (c, rhs) in &rels {
            let s = eval_rhs(&t, rhs, k).ok_or_else(|| FlatError::Inconsistent(format!("order for {}", c)))?;
            t.entries.insert((*c, k), s / BigRational::from_integer(BigInt::from(k)));
        }
        for (c, rhs) in &rels {
            let lhs = t.get(*c, k) * BigRational::from_integer(BigInt::from(k));
            if Some(lhs) != eval_rhs(&t, rhs, k) {
                return Err(FlatError::Inconsistent(format!("relation for {} at k = {}", c, k)));
            }
        }
        if qd.is_even() {
            let m = qd.m();
            if t.get(SchubertClass::Standard(m - 1), k) != t.get(SchubertClass::MidPrime(m - 1), k) {
                return Err(FlatError::Inconsistent(format!("middle symmetry at k = {}", k)));
            }
        }
    }
    if kmax >= 1 && t.get(SchubertClass::Standard(1), 1) != BigRational::from_integer(BigInt::from(2)) {
        return Err(FlatError::Inconsistent("seed beta_{1,1} = 2".into()));
    }
    Ok(t)
}

/// Plücker image of the coordinate paired with `class` on the Lusztig torus.
fn class_pluecker(n: usize, class: SchubertClass) -> Result<LP, FlatError> {
    let qd = Quadric::new(n)?;
    let images = lg_zoo::pluecker_images(n)?;
    let s = match class {
        SchubertClass::Standard(l) => p_sym(l),
        SchubertClass::MidPrime(_) => pp_sym(qd.m()),
    };
    Ok(images[&s].clone())
}

/// Lusztig superpotential split into bare variables and `q`-linear terms.
struct SplitPotential {
    vars: Vec<Symbol>,
    qterms: Vec<(Monomial, BigRational)>,
}

fn split_potential(n: usize) -> Result<SplitPotential, FlatError> {
    let w = lg_zoo::lusztig_model(n)?.superpotential;
    let w = w.as_laurent().ok_or_else(|| FlatError::UnsupportedTerm(w.to_string()))?;
    let q = q_sym();
    let mut vars = Vec::new();
    let mut qterms = Vec::new();
    for (mono, c) in w.terms() {
        let (qe, rest) = mono.split_off(&q);
        match qe {
            0 => match rest.exponents() {
                [(s, 1)] if c.is_one() => vars.push(s.clone()),
                _ => return Err(FlatError::UnsupportedTerm(mono.to_string())),
            },
            1 => qterms.push((rest, c.clone())),
            _ => return Err(FlatError::UnsupportedTerm(mono.to_string())),
        }
    }
    Ok(SplitPotential { vars, qterms })
}

fn compositions(k: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if k == 0 { vec![vec![]] } else { vec![] };
    }
    if parts == 1 {
        return vec![vec![k]];
    }
    let mut out = Vec::new();
    for i in 0..=k {
        for mut rest in compositions(k - i, parts - 1) {
            rest.insert(0, i);
            out.push(rest);
        }
    }
    out
}

/// `[q^k] CT( p_ℓ W^{kN-ℓ} / (kN-ℓ)! )` by enumerating how many factors of
/// each `q`-term are chosen; the bare variables are then forced.
pub fn constant_term_coefficient(n: usize, class: SchubertClass, k: usize) -> Result<BigRational, FlatError> {
    let qd = Quadric::new(n)?;
    qd.check(class)?;
    let expected = hbar_exponent(n, class, k);
    if expected < 0 {
        return Ok(BigRational::zero());
    }
    let split = split_potential(n)?;
    let p = class_pluecker(n, class)?;
    let mut total = BigRational::zero();
    for (mu, cmu) in p.terms() {
        for js in compositions(k, split.qterms.len()) {
            let mut weight = cmu.clone();
            let mut used = 0i64;
            let mut ok = true;
            for s in &split.vars {
                let mut e = mu.exponent(s);
                for (j, (qm, _)) in js.iter().zip(&split.qterms) {
                    e += *j as i64 * qm.exponent(s);
                }
                if e > 0 {
                    ok = false;
                    break;
                }
                used += -e;
                weight /= BigRational::from_integer(factorial((-e) as usize));
            }
            // every variable of μ or of a q-term must be a bare variable of W
            let stray = mu
                .exponents()
                .iter()
                .chain(split.qterms.iter().flat_map(|(m, _)| m.exponents().iter()))
                .any(|(s, _)| !split.vars.contains(s));
            if stray {
                return Err(FlatError::UnsupportedTerm(mu.to_string()));
            }
            if !ok {
                continue;
            }
            for (j, (_, c)) in js.iter().zip(&split.qterms) {
                weight *= num::pow(c.clone(), *j);
                weight /= BigRational::from_integer(factorial(*j));
            }
            let got = used + k as i64;
            if got != expected {
                return Err(FlatError::HbarLaw { class: class.label(), k, got, expected });
            }
            total += weight;
        }
    }
    Ok(total)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Route {
    Closed,
    Recursion,
    ConstantTerm,
}

impl Route {
    pub fn label(&self) -> &'static str {
        match self {
            Route::Closed => "closed",
            Route::Recursion => "recursion",
            Route::ConstantTerm => "constant-term",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientRow {
    pub n: usize,
    pub class: SchubertClass,
    pub k: usize,
    pub route: Route,
    pub value: BigRational,
    pub hbar_exponent: i64,
}

/// Coefficient rows for the requested routes, classes and `0 ≤ k ≤ kmax`.
pub fn coefficient_table(
    n: usize,
    kmax: usize,
    classes: &[SchubertClass],
    routes: &[Route],
) -> Result<Vec<CoefficientRow>, FlatError> {
    let beta = if routes.contains(&Route::Recursion) { Some(beta_recursion(n, kmax)?) } else { None };
    let jobs: Vec<(SchubertClass, usize, Route)> = classes
        .iter()
        .flat_map(|c| (0..=kmax).flat_map(move |k| routes.iter().map(move |r| (*c, k, *r))))
        .collect();
    jobs.par_iter()
        .map(|&(class, k, route)| {
            let e = hbar_exponent(n, class, k);
            let value = match route {
                Route::Closed => closed_form_coefficient(n, class, k)?.0,
                Route::Recursion => beta.as_ref().unwrap().get(class, k),
                Route::ConstantTerm => constant_term_coefficient(n, class, k)?,
            };
            Ok(CoefficientRow { n, class, k, route, value, hbar_exponent: e })
        })
        .collect()
}

/// Classes `ℓ` with `kN - ℓ ≥ 0` for all `k ≥ 1`, i.e. the whole basis.
pub fn all_classes(n: usize) -> Result<Vec<SchubertClass>, FlatError> {
    Ok(Quadric::new(n)?.basis())
}

/// First `(class, k)` where the three routes disagree.
pub fn triple_agreement(n: usize, kmax: usize) -> Result<Option<(SchubertClass, usize)>, FlatError> {
    let classes = all_classes(n)?;
    let rows = coefficient_table(n, kmax, &classes, &[Route::Closed, Route::Recursion, Route::ConstantTerm])?;
    let mut by_key: BTreeMap<(SchubertClass, usize), Vec<&BigRational>> = BTreeMap::new();
    for r in &rows {
        by_key.entry((r.class, r.k)).or_default().push(&r.value);
    }
    let bad = by_key.into_iter().find(|(_, v)| v.windows(2).any(|w| w[0] != w[1])).map(|(key, _)| key);
    Ok(bad)
}

pub fn rows_to_csv(rows: &[CoefficientRow]) -> String {
    let mut s = String::from("N,class,k,route,value,hbar_exponent\n");
    for r in rows {
        s.push_str(&format!("{},{},{},{},{},{}\n", r.n, r.class.label(), r.k, r.route.label(), r.value, r.hbar_exponent));
    }
    s
}

fn hbar_pow(e: i64) -> LP {
    LP::monomial(Monomial::from_pairs([(Symbol::new(HBAR), e)]))
}

/// `Σ'_ℓ ⟨S_N, σ_ℓ⟩ σ_{PD(ℓ)}` through `q^order`, with the overall `ħ^{-N}`.
pub fn assemble_section(n: usize, order: usize) -> Result<QSeries, FlatError> {
    let qd = Quadric::new(n)?;
    let mut s = QSeries::zero(n, order);
    for c in qd.basis() {
        let target = qd.poincare_dual(c)?;
        for k in 0..=order {
            let (v, e) = closed_form_coefficient(n, c, k)?;
            if v.is_zero() {
                continue;
            }
            let coef = hbar_pow(-e - n as i64).scale(&v);
            s.terms[k].add_to(target, &coef);
        }
    }
    Ok(s)
}

/// Both dual-connection operators annihilate the assembled section.
pub fn verify_flat(n: usize, order: usize) -> Result<(), FlatError> {
    let s = assemble_section(n, order)?;
    for dir in [Direction::Q, Direction::Hbar] {
        let r = dual_dubrovin_apply(dir, &s)?;
        if let Some((k, class, coef)) = r.first_nonzero() {
            return Err(FlatError::NotFlat {
                dir: format!("{:?}", dir),
                k,
                class: class.label(),
                coef: coef.to_string(),
            });
        }
    }
    Ok(())
}

/// The `q^k` component of the assembled section, for display.
pub fn section_component(s: &QSeries, k: usize) -> CohVector {
    s.terms.get(k).cloned().unwrap_or_else(CohVector::zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use SchubertClass::*;

    #[test]
    fn closed_examples() {
        assert_eq!(closed_form_coefficient(3, Standard(0), 2).unwrap(), (rat(3, 4), 6));
        assert_eq!(closed_form_coefficient(3, Standard(2), 1).unwrap().0, rat(1, 1));
        assert_eq!(closed_form_coefficient(3, Standard(3), 1).unwrap().0, rat(0, 1));
    }

    #[test]
    fn routes_agree_small() {
        for n in 3..=6 {
            assert_eq!(triple_agreement(n, 3).unwrap(), None, "N={}", n);
        }
    }

    #[test]
    fn flat_small() {
        for n in 3..=5 {
            verify_flat(n, 3).unwrap_or_else(|e| panic!("N={}: {}", n, e));
        }
    }

    #[test]
    fn compositions_count() {
        assert_eq!(compositions(3, 2).len(), 4);
        assert_eq!(compositions(0, 2), vec![vec![0, 0]]);
    }
}
