use std::collections::{BTreeMap, BTreeSet};

use super::{GaussianRational, PolyScalar, ScalarError, Symbol};

/// Result of [`solve_linear`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSolution {
    /// Each solved unknown as a polynomial in the free unknowns (and in any
    /// non-unknown symbols present in the system).
    pub bindings: BTreeMap<Symbol, PolyScalar>,
    /// Unknowns left free, in input order.
    pub free: Vec<Symbol>,
    /// Constraints that could not be reduced to linear ones, after
    /// substituting the bindings.
    pub residual: Vec<PolyScalar>,
}

impl LinearSolution {
    /// Substitutes the bindings into `p`.
    pub fn apply(&self, p: &PolyScalar) -> PolyScalar {
        p.substitute_polys(&self.bindings)
    }
}

enum Shape {
    Zero,
    Linear(Vec<GaussianRational>, PolyScalar),
    Nonlinear,
}

fn classify(p: &PolyScalar, unknowns: &[Symbol], index: &BTreeMap<Symbol, usize>) -> Shape {
    if p.is_zero() {
        return Shape::Zero;
    }
    let mut coeffs = vec![GaussianRational::zero(); unknowns.len()];
    let mut constant = PolyScalar::zero();
    for (m, c) in p.terms() {
        let hits: Vec<(usize, u32)> = m
            .factors()
            .iter()
            .filter_map(|(g, e)| g.as_symbol().and_then(|s| index.get(s)).map(|&k| (k, *e)))
            .collect();
        match hits.as_slice() {
            [] => constant += &PolyScalar::term(c.clone(), m.clone()),
            [(k, 1)] if m.factors().len() == 1 => coeffs[*k] += c,
            _ => {
                // c·u^k with a single unknown and nothing else: u = 0.
                if p.len() == 1 && hits.len() == 1 && m.factors().len() == 1 {
                    let mut row = vec![GaussianRational::zero(); unknowns.len()];
                    row[hits[0].0] = GaussianRational::one();
                    return Shape::Linear(row, PolyScalar::zero());
                }
                return Shape::Nonlinear;
            }
        }
    }
    Shape::Linear(coeffs, constant)
}

/// Solves a polynomial system that is linear in `unknowns`, by Gaussian
/// elimination over the Gaussian rationals.
///
/// Pivots are taken from the end of `unknowns`, so earlier unknowns are kept
/// free whenever there is a choice. An equation `c·u^k = 0` in a single
/// unknown is read as `u = 0`. Equations that stay nonlinear after the
/// linear ones are solved and substituted are returned in `residual`.
pub fn solve_linear(system: &[PolyScalar], unknowns: &[Symbol]) -> Result<LinearSolution, ScalarError> {
    let index: BTreeMap<Symbol, usize> = unknowns.iter().cloned().enumerate().map(|(k, s)| (s, k)).collect();
    let n = unknowns.len();
    let mut rows: Vec<(Vec<GaussianRational>, PolyScalar)> = Vec::new();
    let mut pending: Vec<PolyScalar> = system.to_vec();
    let mut bindings: BTreeMap<Symbol, PolyScalar> = BTreeMap::new();
    let mut stuck: Vec<PolyScalar> = Vec::new();

    loop {
        let mut progressed = false;
        let mut still = Vec::new();
        for p in pending.drain(..) {
            let p = p.substitute_polys(&bindings);
            match classify(&p, unknowns, &index) {
                Shape::Zero => {}
                Shape::Linear(c, k) if c.iter().all(GaussianRational::is_zero) => {
                    if k.as_constant().is_some() {
                        return Err(ScalarError::Inconsistent);
                    }
                    stuck.push(k);
                }
                Shape::Linear(c, k) => {
                    rows.push((c, k));
                    progressed = true;
                }
                Shape::Nonlinear => still.push(p),
            }
        }
        pending = still;
        if !progressed {
            break;
        }
        stuck.extend(reduce_rows(&mut rows, n)?);
        bindings.clear();
        for (c, k) in &rows {
            let pivot = (0..n).rev().find(|&j| !c[j].is_zero()).expect("reduced row has a pivot");
            let mut value = -k;
            for (j, cj) in c.iter().enumerate() {
                if j != pivot && !cj.is_zero() {
                    value -= &PolyScalar::symbol(&unknowns[j]).scale(cj);
                }
            }
            bindings.insert(unknowns[pivot].clone(), value);
        }
    }

    let bound: BTreeSet<&Symbol> = bindings.keys().collect();
    let free = unknowns.iter().filter(|s| !bound.contains(s)).cloned().collect();
    let mut residual: Vec<PolyScalar> =
        pending.into_iter().map(|p| p.substitute_polys(&bindings)).filter(|p| !p.is_zero()).collect();
    residual.extend(stuck);
    Ok(LinearSolution { bindings, free, residual })
}

/// Reduced row echelon form with pivots chosen from the last column down,
/// each pivot normalized to 1. Rows reducing to `0 = k` are removed; a
/// nonzero constant `k` is an inconsistency, a symbolic `k` is returned as a
/// constraint that does not involve the unknowns.
fn reduce_rows(rows: &mut Vec<(Vec<GaussianRational>, PolyScalar)>, n: usize) -> Result<Vec<PolyScalar>, ScalarError> {
    let mut rank = 0;
    for col in (0..n).rev() {
        let Some(r) = (rank..rows.len()).find(|&r| !rows[r].0[col].is_zero()) else {
            continue;
        };
        rows.swap(rank, r);
        let inv = rows[rank].0[col].inv().unwrap();
        let (pc, pk) = {
            let (c, k) = &rows[rank];
            (c.iter().map(|x| x * &inv).collect::<Vec<_>>(), k.scale(&inv))
        };
        rows[rank] = (pc.clone(), pk.clone());
        for (r2, row) in rows.iter_mut().enumerate() {
            if r2 == rank || row.0[col].is_zero() {
                continue;
            }
            let f = row.0[col].clone();
            for j in 0..n {
                row.0[j] = &row.0[j] - &(&pc[j] * &f);
            }
            row.1 = &row.1 - &pk.scale(&f);
        }
        rank += 1;
    }
    let mut leftover = Vec::new();
    for (_, k) in rows.drain(rank..) {
        match k.as_constant() {
            Some(v) if v.is_zero() => {}
            Some(_) => return Err(ScalarError::Inconsistent),
            None => leftover.push(k),
        }
    }
    Ok(leftover)
}
