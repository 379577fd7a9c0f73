//! Deformations `ε: L → L̄`: the compatibility constraint, the Maurer–Cartan
//! system, gauge reduction and the type of `(1 + ε)L`.

use std::collections::{BTreeMap, BTreeSet};

use crate::algebroid::{check_subbundle, IsotropicSubbundle, SubbundleVerdict};
use crate::courant::{self, GenSection};
use crate::error::{Error, Result};
use crate::exterior::Form;
use crate::linalg::{self, SpanCoordinates};
use crate::scalar::{solve_linear, GaussianRational, Generator, LinearSolution, PolyScalar, Symbol, SymbolKind};

/// Largest parameter count accepted by [`stratify_type`].
pub const MAX_STRATIFY_PARAMETERS: usize = 8;

/// Parameter names `<prefix>{i}{a}` for the entry of `h_i` in `ε(g_a)`,
/// 1-based; an underscore separates indices once they can exceed 9.
pub fn fresh_parameters(prefix: &str, r: usize) -> Vec<Vec<Symbol>> {
    (1..=r)
        .map(|i| {
            (1..=r)
                .map(|a| {
                    let name = if r > 9 { format!("{prefix}{i}_{a}") } else { format!("{prefix}{i}{a}") };
                    Symbol::parameter(&name)
                })
                .collect()
        })
        .collect()
}

/// `ε(g_a) = Σ_i entries[i][a] h_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeformationMap {
    entries: Vec<Vec<PolyScalar>>,
}

impl DeformationMap {
    pub fn new(entries: Vec<Vec<PolyScalar>>) -> Self {
        Self { entries }
    }

    pub fn zero(r: usize) -> Self {
        Self { entries: vec![vec![PolyScalar::zero(); r]; r] }
    }

    /// Every entry an independent fresh parameter; returns the parameters in
    /// row-major order.
    pub fn raw(prefix: &str, r: usize) -> (Self, Vec<Symbol>) {
        let t = fresh_parameters(prefix, r);
        let entries = t.iter().map(|row| row.iter().map(PolyScalar::symbol).collect()).collect();
        (Self { entries }, t.into_iter().flatten().collect())
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<PolyScalar>] {
        &self.entries
    }

    pub fn entry(&self, i: usize, a: usize) -> &PolyScalar {
        &self.entries[i][a]
    }

    pub fn parameters(&self) -> BTreeSet<Symbol> {
        self.entries.iter().flatten().flat_map(PolyScalar::symbols).filter(Symbol::is_parameter).collect()
    }

    pub fn substitute_polys(&self, bindings: &BTreeMap<Symbol, PolyScalar>) -> Self {
        Self {
            entries: self.entries.iter().map(|r| r.iter().map(|p| p.substitute_polys(bindings)).collect()).collect(),
        }
    }

    /// Grounds every entry; fails on an unbound parameter.
    pub fn bind(&self, bindings: &BTreeMap<Symbol, GaussianRational>) -> Result<Vec<Vec<GaussianRational>>> {
        self.entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|p| {
                        let q = p.substitute(bindings)?;
                        q.as_constant().ok_or_else(|| {
                            let s = q.symbols().into_iter().next().map(|s| s.name().to_string()).unwrap_or_default();
                            Error::UnboundParameter(s)
                        })
                    })
                    .collect()
            })
            .collect()
    }

    /// `ε(g_a)` as a section.
    pub fn image(&self, l: &IsotropicSubbundle, a: usize) -> GenSection {
        let mut s = GenSection::zero(l.frame().dim());
        for (i, h) in l.conjugates().iter().enumerate() {
            if !self.entries[i][a].is_zero() {
                s = &s + &h.mul_poly(&self.entries[i][a]);
            }
        }
        s
    }

    /// `P[b][a] = ⟨ε(g_a), g_b⟩`, the matrix of `θ ∘ ε`.
    pub fn theta_matrix(&self, l: &IsotropicSubbundle) -> Vec<Vec<PolyScalar>> {
        let r = self.rank();
        let theta = l.theta();
        (0..r)
            .map(|b| {
                (0..r)
                    .map(|a| {
                        (0..r)
                            .filter(|&i| !theta[b][i].is_zero() && !self.entries[i][a].is_zero())
                            .map(|i| self.entries[i][a].scale(&theta[b][i]))
                            .sum()
                    })
                    .collect()
            })
            .collect()
    }

    /// `B[a][b] = ε̃(g_a, g_b) = 2⟨g_a, ε(g_b)⟩`.
    pub fn bilinear(&self, l: &IsotropicSubbundle) -> Vec<Vec<PolyScalar>> {
        let p = self.theta_matrix(l);
        let two = GaussianRational::from_int(2);
        let r = self.rank();
        (0..r).map(|a| (0..r).map(|b| p[a][b].scale(&two)).collect()).collect()
    }

    /// `ε̃` as a 2-form on `L`, read off the upper triangle of the bilinear
    /// form.
    pub fn two_form(&self, l: &IsotropicSubbundle) -> Form {
        let b = self.bilinear(l);
        let r = self.rank();
        let mut f = Form::zero(r);
        for a in 0..r {
            for c in a + 1..r {
                f.add_term(&[a, c], b[a][c].clone());
            }
        }
        f
    }
}

/// Output of [`constrain_map`].
#[derive(Clone, Debug)]
pub struct ConstrainedMap {
    pub map: DeformationMap,
    pub parameters: Vec<Symbol>,
    pub free: Vec<Symbol>,
    pub eliminated: BTreeMap<Symbol, PolyScalar>,
}

/// Imposes `⟨ε(x), y⟩ + ⟨x, ε(y)⟩ = 0` on generator pairs. Pivots come
/// from the end of `unknowns`.
pub fn constrain_map(l: &IsotropicSubbundle, raw: &DeformationMap, unknowns: &[Symbol]) -> Result<ConstrainedMap> {
    let p = raw.theta_matrix(l);
    let r = raw.rank();
    let mut system = Vec::new();
    for a in 0..r {
        for b in a..r {
            system.push(&p[b][a] + &p[a][b]);
        }
    }
    let sol = solve_linear(&system, unknowns)?;
    if !sol.residual.is_empty() {
        return Err(Error::NonlinearResidual(render_list(&sol.residual)));
    }
    Ok(ConstrainedMap {
        map: raw.substitute_polys(&sol.bindings),
        parameters: unknowns.to_vec(),
        free: sol.free,
        eliminated: sol.bindings,
    })
}

/// `d_L ε̃ + ½[ε̃, ε̃]`, kept split by origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MCSystem {
    pub unknowns: Vec<Symbol>,
    pub differential: Form,
    pub schouten: Form,
    pub total: Form,
}

impl MCSystem {
    /// One constraint per basis 3-form with nonzero coefficient, in
    /// multi-index order.
    pub fn constraints(&self) -> Vec<(Vec<usize>, PolyScalar)> {
        self.total.terms().map(|(k, v)| (k.clone(), v.clone())).collect()
    }

    pub fn equations(&self) -> Vec<PolyScalar> {
        self.total.terms().map(|(_, v)| v.clone()).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.total.is_zero()
    }

    pub fn solve(&self) -> Result<LinearSolution> {
        Ok(solve_linear(&self.equations(), &self.unknowns)?)
    }
}

pub fn mc_residual_form(l: &IsotropicSubbundle, eps: &Form, unknowns: &[Symbol]) -> Result<MCSystem> {
    let differential = l.d_l_invariant(eps)?;
    let schouten = l.schouten_bracket(eps, eps)?.scale(&GaussianRational::rational(1, 2));
    let total = &differential + &schouten;
    Ok(MCSystem { unknowns: unknowns.to_vec(), differential, schouten, total })
}

pub fn mc_residual(l: &IsotropicSubbundle, map: &DeformationMap, unknowns: &[Symbol]) -> Result<MCSystem> {
    mc_residual_form(l, &map.two_form(l), unknowns)
}

/// Echelon basis of the image of `d_L` on 1-forms.
pub fn gauge_image(l: &IsotropicSubbundle) -> Result<Vec<Form>> {
    let r = l.rank();
    let mut rows = Vec::new();
    for b in 0..r {
        let d = l.d_l_invariant(&Form::basis(r, &[b]))?;
        let v: Vec<GaussianRational> =
            d.coefficient_vector(2).iter().map(|p| p.as_constant().expect("constant coefficients")).collect();
        rows.push(v);
    }
    let mut m = rows;
    let pivots = linalg::rref(&mut m);
    Ok(m.into_iter()
        .take(pivots.len())
        .map(|row| Form::from_coefficient_vector(r, 2, &row.into_iter().map(PolyScalar::constant).collect::<Vec<_>>()))
        .collect())
}

/// Solved, gauge-reduced family of deformations.
#[derive(Clone, Debug)]
pub struct DeformationFamily {
    pub parameters: Vec<Symbol>,
    pub free: Vec<Symbol>,
    /// Every non-free parameter in terms of the free ones.
    pub bindings: BTreeMap<Symbol, PolyScalar>,
    pub mc_solved: Vec<Symbol>,
    pub gauge_dropped: Vec<Symbol>,
    pub gauge_basis: Vec<Form>,
    /// Tangent direction of each free parameter.
    pub reduced_basis: Vec<(Symbol, Form)>,
    pub map: DeformationMap,
    pub two_form: Form,
}

/// Solves the MC system and removes gauge directions by dropping, for each
/// gauge basis vector, the alphabetically first solution coordinate it
/// involves (after eliminating previously dropped coordinates).
pub fn reduce_family(l: &IsotropicSubbundle, c: &ConstrainedMap, mc: &MCSystem) -> Result<DeformationFamily> {
    let sol = mc.solve()?;
    if !sol.residual.is_empty() {
        return Err(Error::NonlinearResidual(render_list(&sol.residual)));
    }
    let eps = c.map.two_form(l).substitute_polys(&sol.bindings);
    let mut tangent: Vec<Vec<GaussianRational>> = Vec::new();
    for s in &sol.free {
        let g = Generator::from(s.clone());
        let v: Option<Vec<GaussianRational>> =
            eps.coefficient_vector(2).iter().map(|p| p.partial(&g).as_constant()).collect();
        tangent.push(v.ok_or_else(|| Error::NonlinearResidual("family is not linear in its parameters".into()))?);
    }
    let gauge = gauge_image(l)?;
    let mut dropped: Vec<usize> = Vec::new();
    if !gauge.is_empty() {
        let coords = SpanCoordinates::new(&tangent).ok_or(Error::GaugeNotExpressible)?;
        let mut xs: Vec<Vec<GaussianRational>> = Vec::new();
        for g in &gauge {
            let v: Vec<GaussianRational> = g.coefficient_vector(2).iter().map(|p| p.as_constant().unwrap()).collect();
            xs.push(coords.solve(&v).ok_or(Error::GaugeNotExpressible)?);
        }
        let mut order: Vec<usize> = (0..sol.free.len()).collect();
        order.sort_by(|&a, &b| sol.free[a].cmp(&sol.free[b]));
        for k in 0..xs.len() {
            let j = *order
                .iter()
                .find(|&&j| !dropped.contains(&j) && !xs[k][j].is_zero())
                .ok_or(Error::GaugeNotExpressible)?;
            let pivot = xs[k].clone();
            for x in xs.iter_mut().skip(k + 1) {
                if !x[j].is_zero() {
                    let f = &x[j] / &pivot[j];
                    for (xi, pi) in x.iter_mut().zip(&pivot) {
                        *xi = &*xi - &(pi * &f);
                    }
                }
            }
            dropped.push(j);
        }
    }
    let gauge_dropped: Vec<Symbol> = dropped.iter().map(|&j| sol.free[j].clone()).collect();
    let zeros: BTreeMap<Symbol, PolyScalar> = gauge_dropped.iter().map(|s| (s.clone(), PolyScalar::zero())).collect();
    let mut bindings: BTreeMap<Symbol, PolyScalar> = BTreeMap::new();
    for (s, v) in &c.eliminated {
        bindings.insert(s.clone(), v.substitute_polys(&sol.bindings).substitute_polys(&zeros));
    }
    for (s, v) in &sol.bindings {
        bindings.insert(s.clone(), v.substitute_polys(&zeros));
    }
    bindings.extend(zeros.clone());
    let free: Vec<Symbol> = sol.free.iter().filter(|s| !zeros.contains_key(s)).cloned().collect();
    let reduced_basis = sol
        .free
        .iter()
        .zip(&tangent)
        .filter(|(s, _)| !zeros.contains_key(s))
        .map(|(s, v)| {
            (
                s.clone(),
                Form::from_coefficient_vector(
                    l.rank(),
                    2,
                    &v.iter().cloned().map(PolyScalar::constant).collect::<Vec<_>>(),
                ),
            )
        })
        .collect();
    let map = c.map.substitute_polys(&sol.bindings).substitute_polys(&zeros);
    let two_form = map.two_form(l);
    Ok(DeformationFamily {
        parameters: c.parameters.clone(),
        free,
        bindings,
        mc_solved: sol.bindings.keys().cloned().collect(),
        gauge_dropped,
        gauge_basis: gauge,
        reduced_basis,
        map,
        two_form,
    })
}

/// `(1 + ε)L` at ground parameter values.
#[derive(Clone, Debug)]
pub struct DeformedSubbundle {
    pub generators: Vec<GenSection>,
    pub verdict: SubbundleVerdict,
}

pub fn deform_subbundle(
    l: &IsotropicSubbundle,
    map: &DeformationMap,
    bindings: &BTreeMap<Symbol, GaussianRational>,
) -> Result<DeformedSubbundle> {
    let e = map.bind(bindings)?;
    let generators: Vec<GenSection> = (0..l.rank())
        .map(|a| {
            let mut s = l.generators()[a].clone();
            for (i, h) in l.conjugates().iter().enumerate() {
                if !e[i][a].is_zero() {
                    s = &s + &h.scale(&e[i][a]);
                }
            }
            s
        })
        .collect();
    let verdict = check_subbundle(l.frame(), &generators)?;
    Ok(DeformedSubbundle { generators, verdict })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Pure {
    Tangent,
    Cotangent,
    Mixed,
}

fn purity(s: &GenSection) -> Pure {
    let t = s.tangent.iter().any(|x| !x.is_zero());
    let c = s.cotangent.iter().any(|x| !x.is_zero());
    match (t, c) {
        (true, false) => Pure::Tangent,
        (false, true) => Pure::Cotangent,
        _ => Pure::Mixed,
    }
}

/// Entries of `ε` that mix tangent and cotangent generators, or `None` when
/// some generator of `L` is itself mixed.
fn mixing_entries(l: &IsotropicSubbundle, map: &DeformationMap) -> Option<Vec<PolyScalar>> {
    let g: Vec<Pure> = l.generators().iter().map(purity).collect();
    let h: Vec<Pure> = l.conjugates().iter().map(purity).collect();
    if g.iter().chain(&h).any(|p| *p == Pure::Mixed) {
        return None;
    }
    let r = l.rank();
    Some(
        (0..r)
            .flat_map(|i| (0..r).map(move |a| (i, a)))
            .filter(|&(i, a)| h[i] != g[a])
            .map(|(i, a)| map.entry(i, a).clone())
            .collect(),
    )
}

/// Label from `k` alone.
pub fn type_class(k: usize, dim: usize) -> &'static str {
    if k == 0 {
        "symplectic type"
    } else if 2 * k == dim {
        "complex type"
    } else {
        "intermediate type"
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeReport {
    pub k: usize,
    pub label: String,
}

/// `k = dim(T ⊗ C) − rank` of the tangent projection of `(1 + ε)L`, with a
/// classical/non-classical qualifier on complex type.
pub fn type_of(
    l: &IsotropicSubbundle,
    map: &DeformationMap,
    bindings: &BTreeMap<Symbol, GaussianRational>,
) -> Result<TypeReport> {
    let d = deform_subbundle(l, map, bindings)?;
    if !d.verdict.separated {
        return Err(Error::NotSeparated);
    }
    let m = l.frame().dim();
    let proj: Vec<Vec<GaussianRational>> =
        d.generators.iter().map(|g| g.tangent.iter().map(|x| x.as_constant().unwrap()).collect()).collect();
    let k = m - linalg::rank(&proj);
    let class = type_class(k, m);
    let label = if class == "complex type" {
        match mixing_entries(l, map) {
            Some(entries) => {
                let bound: Vec<PolyScalar> =
                    entries.iter().map(|p| p.substitute(bindings)).collect::<std::result::Result<_, _>>()?;
                if bound.iter().all(PolyScalar::is_zero) {
                    "complex type, classical complex".to_string()
                } else {
                    "complex type, non-classical".to_string()
                }
            }
            None => class.to_string(),
        }
    } else {
        class.to_string()
    };
    Ok(TypeReport { k, label })
}

/// A region of parameter space with constant type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeStratum {
    /// Parameters that vanish.
    pub zero: Vec<Symbol>,
    /// Groups of parameters that must not all vanish.
    pub nonzero: Vec<Vec<Symbol>>,
    /// Polynomials of which at least one is nonzero, when the minors could
    /// not be split into monomial conditions.
    pub unresolved: Vec<PolyScalar>,
    pub k: usize,
    pub label: String,
    /// For complex-type strata: parameters whose vanishing cuts out the
    /// classical substratum.
    pub classical: Option<Vec<Symbol>>,
}

impl TypeStratum {
    pub fn render_conditions(&self) -> String {
        let mut parts: Vec<String> = self.zero.iter().map(|s| format!("{s} = 0")).collect();
        for g in &self.nonzero {
            if g.len() == 1 {
                parts.push(format!("{} != 0", g[0]));
            } else {
                let names: Vec<String> = g.iter().map(|s| s.to_string()).collect();
                let zeros = vec!["0"; g.len()].join(", ");
                parts.push(format!("({}) != ({})", names.join(", "), zeros));
            }
        }
        if !self.unresolved.is_empty() {
            let polys: Vec<String> = self.unresolved.iter().map(|p| p.to_string()).collect();
            parts.push(format!("unresolved: one of [{}] != 0", polys.join("; ")));
        }
        if parts.is_empty() {
            "all parameters".to_string()
        } else {
            parts.join(", ")
        }
    }

    /// A point of the stratum: zero parameters at 0, the others at the
    /// supplied nonzero values in parameter order.
    pub fn sample_point(&self, params: &[Symbol], values: &[GaussianRational]) -> BTreeMap<Symbol, GaussianRational> {
        params
            .iter()
            .zip(values)
            .map(|(s, v)| (s.clone(), if self.zero.contains(s) { GaussianRational::zero() } else { v.clone() }))
            .collect()
    }
}

fn tangent_projection(l: &IsotropicSubbundle, map: &DeformationMap) -> Vec<Vec<PolyScalar>> {
    let m = l.frame().dim();
    let r = l.rank();
    let cols: Vec<GenSection> = (0..r).map(|a| &l.generators()[a] + &map.image(l, a)).collect();
    (0..m).map(|i| cols.iter().map(|c| c.tangent[i].clone()).collect()).collect()
}

fn rank_and_minors(m: &[Vec<PolyScalar>]) -> (usize, Vec<PolyScalar>) {
    let max = m.len().min(m.first().map_or(0, Vec::len));
    for k in (1..=max).rev() {
        let nz: Vec<PolyScalar> = linalg::minors(m, k).into_iter().filter(|p| !p.is_zero()).collect();
        if !nz.is_empty() {
            return (k, nz);
        }
    }
    (0, vec![PolyScalar::one()])
}

fn support(p: &PolyScalar) -> BTreeSet<Symbol> {
    p.symbols().into_iter().filter(|s| s.kind() == SymbolKind::Parameter).collect()
}

/// Inclusion-minimal sets meeting every set in `family`.
fn minimal_hitting_sets(family: &[BTreeSet<Symbol>]) -> Vec<Vec<Symbol>> {
    let universe: Vec<Symbol> = family.iter().flatten().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let mut found: Vec<BTreeSet<Symbol>> = Vec::new();
    for size in 1..=universe.len() {
        for combo in linalg::combinations(universe.len(), size) {
            let set: BTreeSet<Symbol> = combo.iter().map(|&i| universe[i].clone()).collect();
            if found.iter().any(|f| f.is_subset(&set)) {
                continue;
            }
            if family.iter().all(|s| !s.is_disjoint(&set)) {
                found.push(set);
            }
        }
    }
    found.into_iter().map(|s| s.into_iter().collect()).collect()
}

/// Type strata of a family, by recursive vanishing of rank minors of the
/// tangent projection.
pub fn stratify_type(l: &IsotropicSubbundle, map: &DeformationMap) -> Result<Vec<TypeStratum>> {
    let proj = tangent_projection(l, map);
    let params = map.parameters();
    let m = l.frame().dim();
    if params.len() > MAX_STRATIFY_PARAMETERS {
        let (rank, _) = rank_and_minors(&proj);
        return Err(Error::TooManyParameters { count: params.len(), generic_rank: rank });
    }
    let mixing = mixing_entries(l, map);
    let mut out = Vec::new();
    let mut seen: BTreeSet<BTreeSet<Symbol>> = BTreeSet::new();
    let mut queue: Vec<BTreeSet<Symbol>> = vec![BTreeSet::new()];
    while let Some(zero) = queue.pop() {
        if !seen.insert(zero.clone()) {
            continue;
        }
        let subs: BTreeMap<Symbol, PolyScalar> = zero.iter().map(|s| (s.clone(), PolyScalar::zero())).collect();
        let mz: Vec<Vec<PolyScalar>> =
            proj.iter().map(|row| row.iter().map(|p| p.substitute_polys(&subs)).collect()).collect();
        let (rank, minors) = rank_and_minors(&mz);
        let k = m - rank;
        let class = type_class(k, m);
        let classical = if class == "complex type" {
            mixing.as_ref().and_then(|entries| {
                let mut vars: BTreeSet<Symbol> = zero.clone();
                for e in entries {
                    let e = e.substitute_polys(&subs);
                    if e.is_zero() {
                        continue;
                    }
                    if e.len() != 1 || e.total_degree() != Some(1) {
                        return None;
                    }
                    vars.extend(support(&e));
                }
                Some(vars.into_iter().collect())
            })
        } else {
            None
        };
        let mut stratum = TypeStratum {
            zero: zero.iter().cloned().collect(),
            nonzero: Vec::new(),
            unresolved: Vec::new(),
            k,
            label: class.to_string(),
            classical,
        };
        if minors.iter().any(|p| p.as_constant().is_some()) {
            out.push(stratum);
        } else if minors.iter().all(|p| p.len() == 1) {
            let supports: Vec<BTreeSet<Symbol>> = minors.iter().map(support).collect();
            let hitting = minimal_hitting_sets(&supports);
            for h in &hitting {
                let mut next = zero.clone();
                next.extend(h.iter().cloned());
                queue.push(next);
            }
            stratum.nonzero = hitting;
            out.push(stratum);
        } else {
            stratum.unresolved = minors;
            out.push(stratum);
        }
    }
    out.sort_by(|a, b| (a.zero.len(), &a.zero).cmp(&(b.zero.len(), &b.zero)));
    Ok(out)
}

fn render_list(ps: &[PolyScalar]) -> String {
    ps.iter().map(|p| p.to_string()).collect::<Vec<_>>().join("; ")
}

/// Isotropy residuals `⟨(1+ε)g_a, (1+ε)g_b⟩` for a symbolic map.
pub fn isotropy_defects(l: &IsotropicSubbundle, map: &DeformationMap) -> Vec<PolyScalar> {
    let r = l.rank();
    let gens: Vec<GenSection> = (0..r).map(|a| &l.generators()[a] + &map.image(l, a)).collect();
    let mut out = Vec::new();
    for a in 0..r {
        for b in a..r {
            out.push(courant::pair(&gens[a], &gens[b]));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebroid::complex_eigenbundle;
    use crate::frame::kodaira_eigenframe;

    fn kodaira_l() -> IsotropicSubbundle {
        complex_eigenbundle(&kodaira_eigenframe().algebra).unwrap()
    }

    fn names(v: &[Symbol]) -> Vec<&str> {
        v.iter().map(Symbol::name).collect()
    }

    #[test]
    fn constraint_leaves_six_parameters() {
        let l = kodaira_l();
        let (raw, params) = DeformationMap::raw("t", 4);
        let c = constrain_map(&l, &raw, &params).unwrap();
        assert_eq!(names(&c.free), ["t11", "t12", "t14", "t21", "t22", "t32"]);
        assert_eq!(c.eliminated.len(), 10);
        assert!(isotropy_defects(&l, &c.map).iter().all(PolyScalar::is_zero));
    }

    #[test]
    fn two_form_matches_wedge_expression() {
        let l = kodaira_l();
        let (raw, params) = DeformationMap::raw("t", 4);
        let c = constrain_map(&l, &raw, &params).unwrap();
        let eps = c.map.two_form(&l);
        assert_eq!(
            l.render_form(&eps),
            "t32*Tbar*^Wbar* - t11*Tbar*^omega* - t21*Tbar*^rho* - t12*Wbar*^omega* - t22*Wbar*^rho* + t14*omega*^rho*"
        );
    }

    #[test]
    fn zero_map_is_compatible_and_unobstructed() {
        let l = kodaira_l();
        let z = DeformationMap::zero(4);
        assert!(isotropy_defects(&l, &z).iter().all(PolyScalar::is_zero));
        assert!(mc_residual(&l, &z, &[]).unwrap().is_empty());
    }

    #[test]
    fn gauge_image_is_one_dimensional() {
        let g = gauge_image(&kodaira_l()).unwrap();
        assert_eq!(g, vec![Form::basis(4, &[0, 3])]);
    }

    #[test]
    fn hitting_sets() {
        let s = |v: &[&str]| v.iter().map(|n| Symbol::parameter(n)).collect::<BTreeSet<_>>();
        let h = minimal_hitting_sets(&[s(&["a", "b"]), s(&["b", "c"])]);
        assert_eq!(h.len(), 2);
        assert!(h.contains(&vec![Symbol::parameter("b")]));
    }
}
