//! Superpotential quivers for `Q_N` and the cluster seed of the even mirror.
//!
//! A quiver superpotential is the sum of its arrow labels, where unlabeled
//! arrows are labeled so that every path from `1` to `q` multiplies to `q`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::arith::{LaurentPolynomial as LP, RationalFunction as RF, Substitution, Symbol};
use crate::cohomology::{CohomologyError, Quadric};
use crate::lg_zoo::{self, a_sym, b_sym, delta_unchecked, p_sym, pp_sym, q_sym, LgError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error(transparent)]
    Dimension(#[from] CohomologyError),
    #[error(transparent)]
    Lg(#[from] LgError),
    #[error("inconsistent labeling: {0}")]
    InconsistentLabeling(String),
    #[error("exchange index i = {i} out of range for m = {m}")]
    ExchangeRange { m: usize, i: usize },
    #[error("cluster seed needs m >= 3, got {0}")]
    SeedTooSmall(usize),
    #[error("exchange relation failed for m = {m}, i = {i}")]
    ExchangeFailed { m: usize, i: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexRole {
    Source,
    Sink,
    Internal,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub tail: usize,
    pub head: usize,
    pub label: Option<Symbol>,
}

#[derive(Debug, Clone)]
pub struct Quiver {
    pub roles: Vec<VertexRole>,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn vertex_count(&self) -> usize {
        self.roles.len()
    }

    fn unique(&self, role: VertexRole) -> Result<usize, QuiverError> {
        let found: Vec<usize> = (0..self.roles.len()).filter(|&i| self.roles[i] == role).collect();
        match found.as_slice() {
            [v] => Ok(*v),
            _ => Err(QuiverError::InconsistentLabeling(format!(
                "expected one {:?} vertex, found {}",
                role,
                found.len()
            ))),
        }
    }

    /// All directed paths from `from` to `to`, as arrow index lists.
    pub fn paths(&self, from: usize, to: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut stack = vec![(from, Vec::new())];
        while let Some((v, path)) = stack.pop() {
            if v == to {
                out.push(path);
                continue;
            }
            for (k, a) in self.arrows.iter().enumerate() {
                if a.tail == v && !path.contains(&k) {
                    let mut next = path.clone();
                    next.push(k);
                    stack.push((a.head, next));
                }
            }
        }
        out.sort();
        out
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph quiver {\n  rankdir=TB;\n");
        for (i, role) in self.roles.iter().enumerate() {
            let label = match role {
                VertexRole::Source => "1".to_string(),
                VertexRole::Sink => "q".to_string(),
                VertexRole::Internal => String::new(),
            };
            let shape = if *role == VertexRole::Internal { "point" } else { "star" };
            let _ = writeln!(s, "  v{} [shape={}, label=\"{}\"];", i, shape, label);
        }
        for a in &self.arrows {
            match &a.label {
                Some(l) => {
                    let _ = writeln!(s, "  v{} -> v{} [label=\"{}\"];", a.tail, a.head, l);
                }
                None => {
                    let _ = writeln!(s, "  v{} -> v{};", a.tail, a.head);
                }
            }
        }
        s.push_str("}\n");
        s
    }
}

/// Labels of the vertical chain from the `1` vertex, top to bottom.
pub fn chain_labels(n: usize) -> Result<Vec<Symbol>, QuiverError> {
    let qd = Quadric::new(n)?;
    let m = qd.m();
    let top = if qd.is_even() { m - 2 } else { m - 1 };
    let mut out: Vec<Symbol> = (2..=top).map(a_sym).collect();
    if qd.is_even() {
        out.push(Symbol::new("d"));
    }
    out.push(Symbol::new("c"));
    out.extend((2..=top).rev().map(b_sym));
    Ok(out)
}

/// The labeled quiver: a vertical path of `N-2` arrows from `1`, then `b_1`
/// down and `a_1` diagonally, both continued by unlabeled arrows into `q`.
pub fn quadric_quiver(n: usize) -> Result<Quiver, QuiverError> {
    let chain = chain_labels(n)?;
    let mut roles = vec![VertexRole::Source];
    let mut arrows = Vec::new();
    for label in chain {
        let tail = roles.len() - 1;
        roles.push(VertexRole::Internal);
        arrows.push(Arrow { tail, head: tail + 1, label: Some(label) });
    }
    let bottom = roles.len() - 1;
    let left = roles.len();
    let right = left + 1;
    let sink = left + 2;
    roles.extend([VertexRole::Internal, VertexRole::Internal, VertexRole::Sink]);
    arrows.push(Arrow { tail: bottom, head: left, label: Some(b_sym(1)) });
    arrows.push(Arrow { tail: bottom, head: right, label: Some(a_sym(1)) });
    arrows.push(Arrow { tail: left, head: sink, label: None });
    arrows.push(Arrow { tail: right, head: sink, label: None });
    Ok(Quiver { roles, arrows })
}

/// Solves for unlabeled arrows and returns the sum of all labels.
pub fn superpotential_from_quiver(qv: &Quiver) -> Result<RF, QuiverError> {
    let src = qv.unique(VertexRole::Source)?;
    let sink = qv.unique(VertexRole::Sink)?;
    let mut labels: Vec<Option<RF>> =
        qv.arrows.iter().map(|a| a.label.as_ref().map(RF::var)).collect();
    let paths = qv.paths(src, sink);
    if paths.is_empty() {
        return Err(QuiverError::InconsistentLabeling("no path from 1 to q".into()));
    }
    let q = RF::var(&q_sym());
    // fill paths with a single unknown until nothing changes
    loop {
        let mut progress = false;
        for path in &paths {
            let unknown: Vec<usize> = path.iter().copied().filter(|&k| labels[k].is_none()).collect();
            if unknown.len() == 1 {
                let known: RF = path.iter().filter_map(|&k| labels[k].clone()).product();
                labels[unknown[0]] = Some(&q / &known);
                progress = true;
            }
        }
        if !progress {
            break;
        }
    }
    if labels.iter().any(|l| l.is_none()) {
        return Err(QuiverError::InconsistentLabeling("underdetermined arrow".into()));
    }
    let labels: Vec<RF> = labels.into_iter().map(|l| l.unwrap()).collect();
    for path in &paths {
        let prod: RF = path.iter().map(|&k| labels[k].clone()).product();
        if !prod.equals(&q) {
            return Err(QuiverError::InconsistentLabeling(format!("path {:?} multiplies to {}", path, prod)));
        }
    }
    Ok(labels.into_iter().sum())
}

/// The Gr(2,4) quiver superpotential in its `m_i` coordinates.
pub fn gr24_superpotential() -> RF {
    let m = |i: usize| RF::named(&format!("m_{}", i));
    let q = RF::var(&q_sym());
    let s = &(&(&m(1) + &m(2)) + &m(3)) + &m(4);
    let s = &s + &(&(&m(1) * &m(2)) / &m(4));
    &s + &(&q / &(&(&m(1) * &m(2)) * &m(3)))
}

/// The toric change of coordinates from Gr(2,4) to the `Q_4` Lusztig torus.
pub fn gr24_map() -> Substitution {
    let v = RF::named;
    let mut s = Substitution::new();
    s.insert(Symbol::new("m_1"), &RF::var(&q_sym()) / &(&(&v("a_1") * &v("c")) * &v("d")));
    s.insert(Symbol::new("m_2"), v("a_1"));
    s.insert(Symbol::new("m_3"), v("c"));
    s.insert(Symbol::new("m_4"), v("b_1"));
    s
}

/// Checks that `map` carries the Gr(2,4) superpotential to the `Q_4` one.
pub fn gr24_bridge_with(map: &Substitution) -> Result<bool, QuiverError> {
    let lhs = gr24_superpotential().substitute(map).map_err(LgError::from)?;
    let rhs = lg_zoo::lusztig_model(4)?.superpotential;
    Ok(lhs.equals(&rhs))
}

pub fn gr24_bridge() -> bool {
    gr24_bridge_with(&gr24_map()).unwrap_or(false)
}

pub fn delta_sym(j: usize) -> Symbol {
    Symbol::from(format!("delta_{}", j))
}

/// Initial seed of the cluster structure on the even mirror `Q_{2m-2}`.
#[derive(Debug, Clone)]
pub struct ClusterSeed {
    pub m: usize,
    pub mutable_vars: Vec<Symbol>,
    pub frozen_vars: Vec<Symbol>,
    pub arrows: Vec<(Symbol, Symbol)>,
}

impl ClusterSeed {
    pub fn new(m: usize) -> Result<Self, QuiverError> {
        if m < 3 {
            return Err(QuiverError::SeedTooSmall(m));
        }
        let n = 2 * m - 2;
        let mutable_vars: Vec<Symbol> = (1..=m - 2).map(p_sym).collect();
        let mut frozen_vars: Vec<Symbol> = (1..=m - 3).map(delta_sym).collect();
        frozen_vars.extend([p_sym(0), p_sym(m - 1), pp_sym(m), p_sym(n)]);
        let mut arrows = vec![(p_sym(0), p_sym(1)), (p_sym(n), p_sym(1))];
        for i in 1..=m - 3 {
            arrows.push((p_sym(i), delta_sym(i)));
            arrows.push((delta_sym(i), p_sym(i + 1)));
        }
        arrows.push((p_sym(m - 2), p_sym(m - 1)));
        arrows.push((p_sym(m - 2), pp_sym(m)));
        Ok(ClusterSeed { m, mutable_vars, frozen_vars, arrows })
    }

    /// No arrows between mutable vertices (type `A_1^{m-2}`).
    pub fn is_a1_power(&self) -> bool {
        !self
            .arrows
            .iter()
            .any(|(t, h)| self.mutable_vars.contains(t) && self.mutable_vars.contains(h))
    }

    /// `x_k x'_k = Π(in-neighbours) + Π(out-neighbours)`, with `x'_k = p_{2m-2-k}`.
    pub fn exchange(&self, k: &Symbol) -> (LP, LP) {
        let idx: usize = k.name()[2..].parse().expect("mutable p_i");
        let lhs = &LP::var(k) * &LP::var(&p_sym(2 * self.m - 2 - idx));
        let ins: Vec<Symbol> = self.arrows.iter().filter(|(_, h)| h == k).map(|(t, _)| t.clone()).collect();
        let outs: Vec<Symbol> = self.arrows.iter().filter(|(t, _)| t == k).map(|(_, h)| h.clone()).collect();
        (lhs, &LP::product(&ins) + &LP::product(&outs))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let names = |v: &[Symbol]| v.iter().map(|s| s.name().to_string()).collect::<Vec<_>>();
        serde_json::json!({
            "m": self.m,
            "mutable": names(&self.mutable_vars),
            "frozen": names(&self.frozen_vars),
            "arrows": self.arrows.iter().map(|(t, h)| [t.name().to_string(), h.name().to_string()]).collect::<Vec<_>>(),
        })
    }
}

/// The printed exchange relation `(p_i p_{2m-2-i}, RHS)` in terms of the
/// symbols `delta_j`, `p_0`, `p_{m-1}`, `p'_{m-1}`.
pub fn exchange_relation(m: usize, i: usize) -> Result<(LP, LP), QuiverError> {
    if m < 3 || i < 1 || i > m - 2 {
        return Err(QuiverError::ExchangeRange { m, i });
    }
    let n = 2 * m - 2;
    let lhs = &LP::var(&p_sym(i)) * &LP::var(&p_sym(n - i));
    let left = if i == 1 { &LP::var(&p_sym(0)) * &LP::var(&p_sym(n)) } else { LP::var(&delta_sym(i - 1)) };
    let right = if i == m - 2 { &LP::var(&p_sym(m - 1)) * &LP::var(&pp_sym(m)) } else { LP::var(&delta_sym(i)) };
    Ok((lhs, &left + &right))
}

/// Replaces `delta_j` symbols by their Plücker expressions (homogeneous in `p_0`).
pub fn expand_deltas(f: &LP, m: usize) -> Result<LP, QuiverError> {
    let n = 2 * m - 2;
    let mut sub = Substitution::new();
    for j in 1..=m.saturating_sub(3) {
        sub.insert(delta_sym(j), RF::from(delta_unchecked(n, j)));
    }
    let out = RF::from(f.clone()).substitute(&sub).map_err(LgError::from)?;
    Ok(out.as_laurent().expect("polynomial substitution"))
}

/// All exchange relations hold after pulling back to the Lusztig torus.
pub fn verify_exchange_relations(m: usize) -> Result<(), QuiverError> {
    let n = 2 * m - 2;
    let images: Substitution = lg_zoo::pluecker_images(n)?.into_iter().map(|(s, p)| (s, RF::from(p))).collect();
    let seed = ClusterSeed::new(m)?;
    for i in 1..=m - 2 {
        let (lhs, rhs) = exchange_relation(m, i)?;
        let (slhs, srhs) = seed.exchange(&p_sym(i));
        if lhs != slhs || rhs != srhs {
            return Err(QuiverError::ExchangeFailed { m, i });
        }
        let diff = RF::from(expand_deltas(&(&lhs - &rhs), m)?);
        let pulled = diff.substitute(&images).map_err(LgError::from)?;
        if !pulled.is_zero() {
            return Err(QuiverError::ExchangeFailed { m, i });
        }
    }
    Ok(())
}

/// `RHS - LHS` of the `i = m-2` relation, which should be the quadric relation.
pub fn last_exchange_minus_quadric(m: usize) -> Result<LP, QuiverError> {
    let (lhs, rhs) = exchange_relation(m, m - 2)?;
    let diff = expand_deltas(&(&rhs - &lhs), m)?;
    Ok(&diff - &lg_zoo::quadric_relation(2 * m - 2)?)
}

/// Arrow labels as a map, used by the CLI JSON dump.
pub fn label_map(qv: &Quiver) -> BTreeMap<String, (usize, usize)> {
    qv.arrows
        .iter()
        .filter_map(|a| a.label.as_ref().map(|l| (l.name().to_string(), (a.tail, a.head))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quiver_reads_lusztig() {
        for n in 3..=12 {
            let w = superpotential_from_quiver(&quadric_quiver(n).unwrap()).unwrap();
            assert!(w.equals(&lg_zoo::lusztig_model(n).unwrap().superpotential), "N={}", n);
            assert_eq!(quadric_quiver(n).unwrap().vertex_count(), n + 2);
        }
    }

    #[test]
    fn gr24() {
        assert!(gr24_bridge());
        let mut bad = gr24_map();
        bad.insert(Symbol::new("m_2"), RF::named("a_1").pow(2).unwrap());
        assert!(!gr24_bridge_with(&bad).unwrap());
    }

    #[test]
    fn exchange() {
        for m in 3..=6 {
            verify_exchange_relations(m).unwrap();
            assert!(last_exchange_minus_quadric(m).unwrap().is_zero());
            assert!(ClusterSeed::new(m).unwrap().is_a1_power());
        }
    }
}
