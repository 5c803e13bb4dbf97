//! B-side intertwining identities for the mirror D-modules.
//!
//! Each relation `q ∂_q W · p_i − (σ_1 ⋆ σ_i in Plücker coordinates)` is checked
//! to lie in the span of the forms `p_i · c ∂_c W`, with `W` rewritten in a
//! cluster chart. Coefficients are either supplied (the printed sets for even
//! quadrics) or found by a seeded random-evaluation solver whose answer is always
//! certified by exact rational-function comparison.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num::{BigRational, One, Signed, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::arith::{int, ArithError, LaurentPolynomial as LP, RationalFunction as RF, Substitution, Symbol};
use crate::cohomology::{CohomologyError, Quadric};
use crate::lg_zoo::{canonical_model, delta_affine, p_sym, pp_sym, q_sym, to_lusztig_torus, LgError};
use crate::quiver::delta_sym;

/// Seed used when the caller does not pick one.
pub const DEFAULT_SEED: u64 = 20_240_611;

const PRIMES: [i64; 25] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];
const RETRY_BUDGET: usize = 200;

#[derive(Debug, Error)]
pub enum DmoduleError {
    #[error(transparent)]
    Dimension(#[from] CohomologyError),
    #[error(transparent)]
    Lg(#[from] LgError),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("relation {which} is not defined for m = {m}")]
    Relation { m: usize, which: String },
    #[error("random sampling kept hitting vanishing denominators")]
    SingularSample,
    #[error("target is not in the span of the vector fields")]
    NoSolution,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ChartName {
    C1,
    C2,
}

impl fmt::Display for ChartName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ChartName::C1 => "C1",
            ChartName::C2 => "C2",
        })
    }
}

/// A cluster chart: its coordinates and the rewrite of the Plücker coordinates
/// it eliminates. `δ_0` is the coordinate `p_N` itself.
#[derive(Debug, Clone)]
pub struct ClusterChart {
    pub name: ChartName,
    pub n: usize,
    pub variables: Vec<Symbol>,
    pub rewrite: Substitution,
}

impl ClusterChart {
    /// Rewrites a function of Plücker coordinates (and chart `δ`s) in the chart.
    pub fn express(&self, f: &RF) -> Result<RF, DmoduleError> {
        Ok(f.substitute(&self.rewrite)?)
    }

    /// Pushes a chart function to the Lusztig torus.
    pub fn to_torus(&self, f: &RF) -> Result<RF, DmoduleError> {
        let qd = Quadric::new(self.n)?;
        let mut sub = Substitution::new();
        for j in 1..=top_delta(qd) {
            if !(qd.is_even() && j == qd.m() - 2) {
                sub.insert(delta_sym(j), RF::from(delta_affine(self.n, j)));
            }
        }
        Ok(to_lusztig_torus(&f.substitute(&sub)?, self.n)?)
    }
}

// largest ℓ with a cluster variable δ_ℓ (even: δ_{m-2} = p_{m-1}p')
fn top_delta(qd: Quadric) -> usize {
    if qd.is_even() {
        qd.m() - 2
    } else {
        qd.m() - 1
    }
}

fn var(s: &Symbol) -> RF {
    RF::var(s)
}

fn p(k: usize) -> RF {
    if k == 0 {
        RF::one()
    } else {
        var(&p_sym(k))
    }
}

/// `δ_j` as a chart expression.
fn delta_chart(qd: Quadric, j: usize) -> RF {
    let m = qd.m();
    if j == 0 {
        p(qd.n)
    } else if qd.is_even() && j == m - 2 {
        &p(m - 1) * &var(&pp_sym(m))
    } else {
        var(&delta_sym(j))
    }
}

/// The canonical superpotential with its denominators kept as `δ` symbols.
pub fn w_template(n: usize) -> Result<RF, DmoduleError> {
    let qd = Quadric::new(n)?;
    let m = qd.m();
    let last = if qd.is_even() { m.saturating_sub(3) } else { m - 1 };
    let mut w = p(1);
    for l in 1..=last {
        w = &w + &(&(&p(l + 1) * &p(n - l)) / &delta_chart(qd, l));
    }
    if qd.is_even() {
        w = &w + &(&p(m) / &p(m - 1));
        w = &w + &(&p(m) / &var(&pp_sym(m)));
    }
    Ok(&w + &(&(&var(&q_sym()) * &p(1)) / &p(n)))
}

/// The chart for the quadric `Q_n`. Even: `C1 = {p_1..p_{m-2}, δ_1..δ_{m-3}, p_{m-1}, p', p_N}`,
/// `C2 = {p_{N-1}..p_m, δ_1..δ_{m-3}, p_{m-1}, p', p_N}`. Odd: `C1 = {p_1..p_{m-1}, δ_1..δ_{m-1}, p_N}`,
/// `C2 = {p_m..p_N, δ_1..δ_{m-1}}`.
pub fn cluster_chart(n: usize, name: ChartName) -> Result<ClusterChart, DmoduleError> {
    let qd = Quadric::new(n)?;
    let m = qd.m();
    let top = top_delta(qd);
    let mut rewrite = Substitution::new();
    rewrite.insert(p_sym(0), RF::one());
    let mut variables = Vec::new();
    for i in 1..=top {
        let exch = &delta_chart(qd, i - 1) + &delta_chart(qd, i);
        match name {
            ChartName::C1 => {
                rewrite.insert(p_sym(n - i), &exch / &p(i));
                variables.push(p_sym(i));
            }
            ChartName::C2 => {
                rewrite.insert(p_sym(i), &exch / &p(n - i));
                variables.push(p_sym(n - i));
            }
        }
    }
    let own_deltas = if qd.is_even() { m - 3 } else { m - 1 };
    variables.extend((1..=own_deltas).map(delta_sym));
    if qd.is_even() {
        variables.push(p_sym(m - 1));
        variables.push(pp_sym(m));
    }
    variables.push(p_sym(n));
    Ok(ClusterChart { name, n, variables, rewrite })
}

/// The canonical superpotential in the chart of the even quadric `Q_{2m-2}`.
pub fn express_w_in_chart(m: usize, name: ChartName) -> Result<RF, DmoduleError> {
    let n = even_n(m)?;
    let chart = cluster_chart(n, name)?;
    chart.express(&w_template(n)?)
}

/// The chart form of `W` agrees with the canonical superpotential on the torus.
pub fn chart_matches_canonical(n: usize, name: ChartName) -> Result<bool, DmoduleError> {
    let chart = cluster_chart(n, name)?;
    let w = chart.express(&w_template(n)?)?;
    let lhs = chart.to_torus(&w)?;
    let rhs = to_lusztig_torus(&canonical_model(n)?.superpotential, n)?;
    Ok(lhs.equals(&rhs))
}

fn even_n(m: usize) -> Result<usize, DmoduleError> {
    if m < 3 {
        return Err(DmoduleError::Relation { m, which: "even quadric (needs m >= 3)".into() });
    }
    Ok(2 * m - 2)
}

/// A relation `σ_1 ⋆ σ_ℓ`, indexed by the Schubert class it starts from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Which {
    Class(usize),
    MidPrime,
}

impl fmt::Display for Which {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Which::Class(i) => write!(f, "p_{}", i),
            Which::MidPrime => f.write_str("p'"),
        }
    }
}

/// Every relation of the quadric `Q_n`, in a fixed order.
pub fn relations(n: usize) -> Result<Vec<Which>, DmoduleError> {
    let qd = Quadric::new(n)?;
    let mut out: Vec<Which> = (0..=n).map(Which::Class).collect();
    if qd.is_even() {
        out.insert(qd.m(), Which::MidPrime);
    }
    Ok(out)
}

/// Pivot and quantum Chevalley image `σ_1 ⋆ σ_ℓ` in Plücker coordinates.
fn pivot_and_image(n: usize, which: Which) -> Result<(RF, RF), DmoduleError> {
    let qd = Quadric::new(n)?;
    let m = qd.m();
    let q = var(&q_sym());
    let bad = || DmoduleError::Relation { m, which: which.to_string() };
    let out = match (which, qd.is_even()) {
        (Which::MidPrime, true) => (var(&pp_sym(m)), p(m)),
        (Which::MidPrime, false) => return Err(bad()),
        (Which::Class(i), _) if i > n => return Err(bad()),
        (Which::Class(i), _) if i == n => (p(n), &q * &p(1)),
        (Which::Class(i), _) if i == n - 1 => (p(i), &p(n) + &q),
        (Which::Class(i), true) if i == m - 2 => (p(i), &p(m - 1) + &var(&pp_sym(m))),
        (Which::Class(i), false) if i == m - 1 => (p(i), p(m).scale(&int(2))),
        (Which::Class(i), _) => (p(i), p(i + 1)),
    };
    Ok(out)
}

/// The chart a relation is checked in: C1 below the middle, C2 above.
pub fn chart_for(n: usize, which: Which) -> Result<ChartName, DmoduleError> {
    let qd = Quadric::new(n)?;
    let m = qd.m();
    Ok(match which {
        Which::MidPrime => ChartName::C2,
        Which::Class(i) if qd.is_even() => {
            if i <= m - 2 {
                ChartName::C1
            } else {
                ChartName::C2
            }
        }
        Which::Class(i) => {
            if i <= m - 1 || i == n {
                ChartName::C1
            } else {
                ChartName::C2
            }
        }
    })
}

/// The pieces of one relation, all written in chart coordinates.
#[derive(Debug, Clone)]
pub struct RelationData {
    pub which: Which,
    pub chart: ClusterChart,
    pub pivot: RF,
    /// `q ∂_q W · pivot − image`.
    pub target: RF,
    /// `pivot · c ∂_c W` for each chart coordinate `c` other than the pivot.
    pub fields: Vec<(Symbol, RF)>,
}

pub fn relation_data(n: usize, which: Which, name: ChartName) -> Result<RelationData, DmoduleError> {
    let chart = cluster_chart(n, name)?;
    let w = chart.express(&w_template(n)?)?;
    let (pivot, image) = pivot_and_image(n, which)?;
    let pivot = chart.express(&pivot)?;
    let image = chart.express(&image)?;
    let target = &(&w.euler(&q_sym()) * &pivot) - &image;
    let pivot_sym = pivot.as_laurent().and_then(|l| l.single_term().map(|(mo, _)| mo.clone()));
    let mut fields = Vec::new();
    for c in &chart.variables {
        let is_pivot = pivot_sym
            .as_ref()
            .map(|mo| mo.exponents() == [(c.clone(), 1)])
            .unwrap_or(false);
        if !is_pivot {
            fields.push((c.clone(), &pivot * &w.euler(c)));
        }
    }
    Ok(RelationData { which, chart, pivot, target, fields })
}

/// `target − Σ m_c F_c`.
pub fn residual(data: &RelationData, coeffs: &BTreeMap<Symbol, BigRational>) -> RF {
    let mut r = data.target.clone();
    for (c, f) in &data.fields {
        if let Some(mc) = coeffs.get(c) {
            if !mc.is_zero() {
                r = &r - &f.scale(mc);
            }
        }
    }
    r
}

/// Grading with `deg p_k = k`, `deg p' = m-1`, `deg δ_j = deg q = N`.
pub fn weighted_degree(f: &RF, n: usize) -> Option<i64> {
    let qd = Quadric { n };
    let m = qd.m();
    let weight = |s: &Symbol| -> i64 {
        let name = s.name();
        if let Some(k) = name.strip_prefix("p_").and_then(|k| k.parse::<i64>().ok()) {
            k
        } else if *s == pp_sym(m) {
            (m - 1) as i64
        } else {
            n as i64
        }
    };
    let degree = |l: &LP| -> Option<Option<i64>> {
        let mut d = None;
        for (mo, _) in l.terms() {
            let t: i64 = mo.exponents().iter().map(|(s, e)| weight(s) * e).sum();
            match d {
                None => d = Some(t),
                Some(x) if x != t => return None,
                _ => {}
            }
        }
        Some(d)
    };
    match (degree(f.num())?, degree(f.den())?) {
        (Some(a), Some(b)) => Some(a - b),
        _ => None,
    }
}

/// The coefficient sets displayed for the even quadric `Q_{2m-2}`.
pub fn printed_coefficients(m: usize, which: Which) -> Result<BTreeMap<Symbol, BigRational>, DmoduleError> {
    let n = even_n(m)?;
    let minus = |v: &mut BTreeMap<Symbol, BigRational>, s: Symbol, c: i64| {
        v.insert(s, int(c));
    };
    let dsym = |j: usize| if j == 0 { p_sym(n) } else { delta_sym(j) };
    let mut out = BTreeMap::new();
    match which {
        Which::Class(i) if i + 3 <= m => {
            for j in i + 1..=m - 1 {
                minus(&mut out, p_sym(j), -1);
            }
            minus(&mut out, pp_sym(m), -1);
            for j in 0..=m - 3 {
                minus(&mut out, dsym(j), if j >= i { -2 } else { -1 });
            }
        }
        Which::Class(i) if i == m - 2 => {
            minus(&mut out, p_sym(m - 1), -1);
            minus(&mut out, pp_sym(m), -1);
            for j in 0..=m - 3 {
                minus(&mut out, dsym(j), -1);
            }
        }
        Which::Class(i) if i == m - 1 => {
            minus(&mut out, pp_sym(m), 1);
            for j in m..=2 * m - 3 {
                minus(&mut out, p_sym(j), 1);
            }
            for j in 0..=m - 3 {
                minus(&mut out, dsym(j), 1);
            }
        }
        Which::MidPrime => {
            minus(&mut out, p_sym(m - 1), 1);
            for j in m..=2 * m - 3 {
                minus(&mut out, p_sym(j), 1);
            }
            for j in 0..=m - 3 {
                minus(&mut out, dsym(j), 1);
            }
        }
        Which::Class(i) if i <= 2 * m - 4 => {
            for j in i + 1..=2 * m - 3 {
                minus(&mut out, p_sym(j), -1);
            }
            for j in 0..=(2 * m - 3 - i).min(m - 3) {
                minus(&mut out, dsym(j), -1);
            }
        }
        Which::Class(i) if i == 2 * m - 3 => minus(&mut out, p_sym(n), -1),
        Which::Class(i) if i == n => {}
        Which::Class(_) => return Err(DmoduleError::Relation { m, which: which.to_string() }),
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Certified,
    Failed,
}

/// Outcome of one identity check.
#[derive(Debug, Clone)]
pub struct BSideReport {
    pub identity: String,
    pub chart: ChartName,
    pub coefficients: BTreeMap<Symbol, BigRational>,
    pub status: Status,
    /// `None` when the residual vanishes.
    pub residual: Option<RF>,
}

impl BSideReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Certified
    }

    pub fn to_json(&self) -> serde_json::Value {
        let coeffs: serde_json::Map<String, serde_json::Value> = self
            .coefficients
            .iter()
            .map(|(s, c)| (s.to_string(), serde_json::Value::String(c.to_string())))
            .collect();
        serde_json::json!({
            "identity": self.identity,
            "chart": self.chart.to_string(),
            "coefficients": coeffs,
            "status": match self.status { Status::Certified => "certified", Status::Failed => "failed" },
            "residual": self.residual.as_ref().map(|r| r.to_json()),
        })
    }
}

fn report(data: &RelationData, coefficients: BTreeMap<Symbol, BigRational>) -> BSideReport {
    let r = residual(data, &coefficients);
    let ok = r.is_zero();
    BSideReport {
        identity: format!("q dW/dq {} - sigma_1*{}", data.which, data.which),
        chart: data.chart.name,
        coefficients,
        status: if ok { Status::Certified } else { Status::Failed },
        residual: if ok { None } else { Some(r) },
    }
}

/// Checks one even relation with the displayed coefficient set, in the chart
/// given by [`chart_for`].
pub fn verify_b_side_identity(m: usize, which: Which) -> Result<BSideReport, DmoduleError> {
    let n = even_n(m)?;
    let data = relation_data(n, which, chart_for(n, which)?)?;
    Ok(report(&data, printed_coefficients(m, which)?))
}

/// Solves for the coefficients of one relation and certifies them exactly.
pub fn solve_relation(n: usize, which: Which, seed: u64) -> Result<BSideReport, DmoduleError> {
    let data = relation_data(n, which, chart_for(n, which)?)?;
    let coeffs = solve_vector_field_coefficients(&data, seed)?;
    Ok(report(&data, coeffs))
}

fn eval_all(fs: &[&RF], point: &HashMap<Symbol, BigRational>) -> Result<Option<Vec<BigRational>>, DmoduleError> {
    let mut out = Vec::with_capacity(fs.len());
    for f in fs {
        match f.eval_rational(point)? {
            Some(v) => out.push(v),
            None => return Ok(None),
        }
    }
    Ok(Some(out))
}

/// Finds `m_c` with `target = Σ m_c F_c` by evaluation at random prime points,
/// then certifies the candidate by exact comparison.
pub fn solve_vector_field_coefficients(
    data: &RelationData,
    seed: u64,
) -> Result<BTreeMap<Symbol, BigRational>, DmoduleError> {
    let k = data.fields.len();
    if data.target.is_zero() {
        return Ok(data.fields.iter().map(|(c, _)| (c.clone(), BigRational::zero())).collect());
    }
    let mut vars: Vec<Symbol> = data.chart.variables.clone();
    vars.push(q_sym());
    let mut fs: Vec<&RF> = data.fields.iter().map(|(_, f)| f).collect();
    fs.push(&data.target);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows_needed = k + 4;
    let mut rows: Vec<Vec<BigRational>> = Vec::with_capacity(rows_needed);
    let mut attempts = 0;
    while rows.len() < rows_needed {
        attempts += 1;
        if attempts > RETRY_BUDGET {
            return Err(DmoduleError::SingularSample);
        }
        let primes: Vec<i64> = PRIMES.choose_multiple(&mut rng, vars.len()).copied().collect();
        let point: HashMap<Symbol, BigRational> =
            vars.iter().cloned().zip(primes.into_iter().map(int)).collect();
        if let Some(row) = eval_all(&fs, &point)? {
            rows.push(row);
        }
    }
    let sol = solve_linear(rows, k).ok_or(DmoduleError::NoSolution)?;
    let coeffs: BTreeMap<Symbol, BigRational> =
        data.fields.iter().map(|(c, _)| c.clone()).zip(sol).collect();
    if residual(data, &coeffs).is_zero() {
        Ok(coeffs)
    } else {
        Err(DmoduleError::NoSolution)
    }
}

/// Gaussian elimination on an augmented system with `k` unknowns; free
/// unknowns are set to zero. `None` if inconsistent.
fn solve_linear(mut a: Vec<Vec<BigRational>>, k: usize) -> Option<Vec<BigRational>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..k {
        let Some(pr) = (r..a.len()).find(|&i| !a[i][col].is_zero()) else { continue };
        a.swap(r, pr);
        let inv = BigRational::one() / &a[r][col];
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for j in col..=k {
                    let t = &a[r][j] * &f;
                    a[i][j] = &a[i][j] - &t;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if a[r..].iter().any(|row| !row[k].is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); k];
    for (i, &col) in pivots.iter().enumerate() {
        x[col] = a[i][k].clone();
    }
    Some(x)
}

/// Every relation of the odd quadric `Q_{2m-1}` lies in the span, via the
/// solver, in the chart that carries it.
pub fn odd_intertwiner_check(m: usize, seed: u64) -> Result<Vec<BSideReport>, DmoduleError> {
    if m < 2 {
        return Err(DmoduleError::Relation { m, which: "odd quadric (needs m >= 2)".into() });
    }
    let n = 2 * m - 1;
    relations(n)?.into_iter().map(|w| solve_relation(n, w, seed)).collect()
}

/// The `p_{m-1}` relation in C2 with the given coefficients, pushed to the
/// Lusztig torus, agrees with the chart verdict.
pub fn chart_independent(m: usize, coeffs: &BTreeMap<Symbol, BigRational>) -> Result<bool, DmoduleError> {
    let n = even_n(m)?;
    let data = relation_data(n, Which::Class(m - 1), ChartName::C2)?;
    let r = residual(&data, coeffs);
    let on_torus = data.chart.to_torus(&r)?;
    Ok(r.is_zero() == on_torus.is_zero())
}

/// Coefficients land in `{-2,…,2}`.
pub fn small_integers(coeffs: &BTreeMap<Symbol, BigRational>) -> bool {
    coeffs
        .values()
        .all(|c| c.is_integer() && c.abs().to_integer().to_i64().map(|v| v <= 2).unwrap_or(false))
}

/// Full report for one quadric: printed sets (even), solved sets, and the
/// chart-level checks, as JSON.
pub fn report_json(n: usize, seed: u64) -> Result<serde_json::Value, DmoduleError> {
    let qd = Quadric::new(n)?;
    let m = qd.m();
    let mut printed = Vec::new();
    if qd.is_even() {
        for w in relations(n)? {
            printed.push(verify_b_side_identity(m, w)?.to_json());
        }
    }
    let mut solved = Vec::new();
    for w in relations(n)? {
        solved.push(solve_relation(n, w, seed)?.to_json());
    }
    Ok(serde_json::json!({
        "quadric": n,
        "seed": seed,
        "charts_match_canonical": [
            chart_matches_canonical(n, ChartName::C1)?,
            chart_matches_canonical(n, ChartName::C2)?,
        ],
        "printed": printed,
        "solved": solved,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coeffs(pairs: &[(Symbol, i64)]) -> BTreeMap<Symbol, BigRational> {
        pairs.iter().map(|(s, c)| (s.clone(), int(*c))).collect()
    }

    fn nonzero(c: &BTreeMap<Symbol, BigRational>) -> BTreeMap<Symbol, BigRational> {
        c.iter().filter(|(_, v)| !v.is_zero()).map(|(s, v)| (s.clone(), v.clone())).collect()
    }

    #[test]
    fn charts_agree_with_canonical() {
        for n in 3..=10 {
            for c in [ChartName::C1, ChartName::C2] {
                assert!(chart_matches_canonical(n, c).unwrap(), "N={} {}", n, c);
            }
        }
    }

    #[test]
    fn printed_sets_except_middle_signs() {
        for m in 3..=5 {
            for w in relations(2 * m - 2).unwrap() {
                let r = verify_b_side_identity(m, w).unwrap();
                let middle = w == Which::MidPrime || w == Which::Class(m - 1);
                assert_eq!(r.passed(), !middle, "m={} {}", m, w);
            }
        }
    }

    #[test]
    fn middle_relations_need_minus_signs() {
        for m in 3..=5 {
            for w in [Which::Class(m - 1), Which::MidPrime] {
                let flipped: BTreeMap<_, _> =
                    printed_coefficients(m, w).unwrap().into_iter().map(|(s, c)| (s, -c)).collect();
                let r = verify_b_side_identity(m, w).unwrap();
                assert!(!r.passed());
                let data = relation_data(2 * m - 2, w, ChartName::C2).unwrap();
                assert!(residual(&data, &flipped).is_zero(), "m={} {}", m, w);
            }
        }
    }

    #[test]
    fn solver_recovers_printed_c1() {
        let m = 4;
        let r = solve_relation(6, Which::Class(1), DEFAULT_SEED).unwrap();
        assert!(r.passed());
        assert_eq!(nonzero(&r.coefficients), nonzero(&printed_coefficients(m, Which::Class(1)).unwrap()));
    }

    #[test]
    fn solver_edge_cases() {
        let data = relation_data(6, Which::Class(1), ChartName::C1).unwrap();
        let zero = RelationData { target: RF::zero(), ..data.clone() };
        let z = solve_vector_field_coefficients(&zero, 1).unwrap();
        assert!(z.values().all(|c| c.is_zero()));
        let bad = RelationData { target: RF::var(&p_sym(1)), ..data };
        assert!(matches!(solve_vector_field_coefficients(&bad, 1), Err(DmoduleError::NoSolution)));
    }

    #[test]
    fn odd_matches_oracle() {
        let d = delta_sym;
        let r = odd_intertwiner_check(3, DEFAULT_SEED).unwrap();
        assert!(r.iter().all(|x| x.passed()));
        // i = 2 in C1, i = 3 in C2
        assert_eq!(
            nonzero(&r[2].coefficients),
            coeffs(&[(d(1), -1), (d(2), -2), (p_sym(5), -1)])
        );
        assert_eq!(nonzero(&r[3].coefficients), coeffs(&[(p_sym(4), -1), (p_sym(5), -1), (d(1), -1)]));
        assert!(nonzero(&r[5].coefficients).is_empty());
        for m in [2, 4] {
            assert!(odd_intertwiner_check(m, DEFAULT_SEED).unwrap().iter().all(|x| x.passed()));
        }
    }

    #[test]
    fn targets_homogeneous() {
        for n in 3..=8 {
            for w in relations(n).unwrap() {
                let data = relation_data(n, w, chart_for(n, w).unwrap()).unwrap();
                if data.target.is_zero() {
                    continue;
                }
                let pd = weighted_degree(&data.pivot, n).unwrap();
                assert_eq!(weighted_degree(&data.target, n), Some(pd + 1), "N={} {}", n, w);
            }
        }
    }

    #[test]
    fn middle_relation_chart_independent() {
        for m in 3..=5 {
            let printed = printed_coefficients(m, Which::Class(m - 1)).unwrap();
            assert!(chart_independent(m, &printed).unwrap());
            let solved = solve_relation(2 * m - 2, Which::Class(m - 1), DEFAULT_SEED).unwrap();
            assert!(chart_independent(m, &solved.coefficients).unwrap());
            assert!(small_integers(&solved.coefficients));
        }
    }
}
