//! Graded exterior algebra over the dual of a finite basis.
//!
//! Multi-indices are stored strictly increasing. Evaluation uses the
//! determinant convention `(e¹∧…∧eᵏ)(v₁,…,vₖ) = det[eⁱ(vⱼ)]`.

use std::collections::BTreeMap;
use std::fmt;

use crate::linalg::Matrix;
use crate::scalar::{GaussianRational, PolyScalar, Symbol};

/// Dense structure constants: `c[i][j][k]` is the coefficient of `e_k` in
/// `[e_i, e_j]`.
pub type StructureConstants = Vec<Vec<Vec<GaussianRational>>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Form {
    dim: usize,
    terms: BTreeMap<Vec<usize>, PolyScalar>,
}

/// Sorts `idx` and returns the permutation sign, or `None` on a repeat.
pub fn normalize_indices(idx: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut v = idx.to_vec();
    let mut negative = false;
    // insertion sort, counting transpositions
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            negative = !negative;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, negative))
}

impl Form {
    pub fn zero(dim: usize) -> Self {
        Self { dim, terms: BTreeMap::new() }
    }

    pub fn scalar(dim: usize, p: PolyScalar) -> Self {
        let mut f = Self::zero(dim);
        f.add_term(&[], p);
        f
    }

    /// `e^{i₁}∧…∧e^{iₖ}` in the given order; zero on a repeated index.
    pub fn basis(dim: usize, idx: &[usize]) -> Self {
        let mut f = Self::zero(dim);
        f.add_term(idx, PolyScalar::one());
        f
    }

    /// The 1-form `Σ coeffs[k] e^k`.
    pub fn one_form(coeffs: &[PolyScalar]) -> Self {
        let mut f = Self::zero(coeffs.len());
        for (k, c) in coeffs.iter().enumerate() {
            f.add_term(&[k], c.clone());
        }
        f
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &PolyScalar)> {
        self.terms.iter()
    }

    /// Coefficient on the increasing multi-index `idx`.
    pub fn coefficient(&self, idx: &[usize]) -> PolyScalar {
        self.terms.get(idx).cloned().unwrap_or_else(PolyScalar::zero)
    }

    /// Degrees of the nonzero homogeneous components.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.terms.keys().map(Vec::len).collect();
        d.dedup();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// The degree if the form is nonzero and homogeneous.
    pub fn degree(&self) -> Option<usize> {
        match self.degrees().as_slice() {
            [d] => Some(*d),
            _ => None,
        }
    }

    pub fn component(&self, degree: usize) -> Form {
        Form {
            dim: self.dim,
            terms: self.terms.iter().filter(|(k, _)| k.len() == degree).map(|(k, v)| (k.clone(), v.clone())).collect(),
        }
    }

    /// Adds `c · e^{idx}` with `idx` in any order.
    pub fn add_term(&mut self, idx: &[usize], c: PolyScalar) {
        assert!(idx.iter().all(|&i| i < self.dim), "index out of range");
        if c.is_zero() {
            return;
        }
        let Some((key, negative)) = normalize_indices(idx) else {
            return;
        };
        let entry = self.terms.entry(key.clone()).or_insert_with(PolyScalar::zero);
        if negative {
            *entry -= &c;
        } else {
            *entry += &c;
        }
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn map_coefficients(&self, mut f: impl FnMut(&PolyScalar) -> PolyScalar) -> Form {
        let mut out = Form::zero(self.dim);
        for (k, v) in &self.terms {
            out.add_term(k, f(v));
        }
        out
    }

    pub fn scale(&self, c: &GaussianRational) -> Form {
        self.map_coefficients(|v| v.scale(c))
    }

    pub fn mul_poly(&self, p: &PolyScalar) -> Form {
        self.map_coefficients(|v| v * p)
    }

    pub fn substitute_polys(&self, bindings: &BTreeMap<Symbol, PolyScalar>) -> Form {
        self.map_coefficients(|v| v.substitute_polys(bindings))
    }

    pub fn is_parameter_only(&self) -> bool {
        self.terms.values().all(PolyScalar::is_parameter_only)
    }

    pub fn wedge(&self, other: &Form) -> Form {
        assert_eq!(self.dim, other.dim, "wedge of forms over different bases");
        let mut out = Form::zero(self.dim);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let idx: Vec<usize> = a.iter().chain(b).copied().collect();
                out.add_term(&idx, x * y);
            }
        }
        out
    }

    /// Interior product with the vector `v` (components in the basis),
    /// inserted into the first slot.
    pub fn interior(&self, v: &[PolyScalar]) -> Form {
        let mut out = Form::zero(self.dim);
        for (idx, c) in &self.terms {
            for (pos, &i) in idx.iter().enumerate() {
                if v[i].is_zero() {
                    continue;
                }
                let rest: Vec<usize> = idx.iter().enumerate().filter(|(p, _)| *p != pos).map(|(_, &j)| j).collect();
                let term = c * &v[i];
                out.add_term(&rest, if pos % 2 == 0 { term } else { -term });
            }
        }
        out
    }

    /// Evaluates the degree-`k` component on `k` vectors.
    pub fn evaluate(&self, vectors: &[Vec<PolyScalar>]) -> PolyScalar {
        let mut acc = PolyScalar::zero();
        for (idx, c) in self.terms.iter().filter(|(k, _)| k.len() == vectors.len()) {
            let m: Vec<Vec<PolyScalar>> = idx.iter().map(|&i| vectors.iter().map(|v| v[i].clone()).collect()).collect();
            let det = crate::linalg::det_poly(&m);
            if !det.is_zero() {
                acc += &(c * &det);
            }
        }
        acc
    }

    /// Chevalley–Eilenberg differential for constant-coefficient forms:
    /// `de^k = −Σ_{i<j} c^k_{ij} e^i∧e^j`, extended as a graded derivation.
    pub fn ce_differential(&self, c: &StructureConstants) -> Form {
        let de = basis_differentials(self.dim, c);
        let mut out = Form::zero(self.dim);
        for (idx, coeff) in &self.terms {
            for (pos, &k) in idx.iter().enumerate() {
                for (pair, v) in &de[k] {
                    let mut new_idx: Vec<usize> = idx[..pos].to_vec();
                    new_idx.extend_from_slice(pair);
                    new_idx.extend_from_slice(&idx[pos + 1..]);
                    let term = coeff.scale(v);
                    out.add_term(&new_idx, if pos % 2 == 0 { term } else { -term });
                }
            }
        }
        out
    }

    /// Graded bracket extending a bracket on 1-forms by biderivation:
    /// `[a₁…a_p, b₁…b_q] = Σ (−1)^{i+j} [a_i,b_j]∧a₁…âᵢ…a_p∧b₁…b̂ⱼ…b_q`.
    ///
    /// `table[i][j]` is the bracket of the basis 1-forms `e^i` and `e^j`.
    /// Degree-0 components bracket to zero (constant coefficients only).
    pub fn schouten(&self, other: &Form, table: &[Vec<Form>]) -> Form {
        let mut out = Form::zero(self.dim);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let coeff = x * y;
                for (i, &ai) in a.iter().enumerate() {
                    for (j, &bj) in b.iter().enumerate() {
                        let br = &table[ai][bj];
                        if br.is_zero() {
                            continue;
                        }
                        let rest_a: Vec<usize> =
                            a.iter().enumerate().filter(|(p, _)| *p != i).map(|(_, &v)| v).collect();
                        let rest_b: Vec<usize> =
                            b.iter().enumerate().filter(|(p, _)| *p != j).map(|(_, &v)| v).collect();
                        let tail = Form::basis(self.dim, &[rest_a, rest_b].concat());
                        let term = br.wedge(&tail).mul_poly(&coeff);
                        out = if (i + j) % 2 == 0 { &out + &term } else { &out - &term };
                    }
                }
            }
        }
        out
    }

    /// Coefficient vector of the degree-`k` component in the lexicographic
    /// basis of increasing multi-indices.
    pub fn coefficient_vector(&self, k: usize) -> Vec<PolyScalar> {
        crate::linalg::combinations(self.dim, k).iter().map(|idx| self.coefficient(idx)).collect()
    }

    pub fn from_coefficient_vector(dim: usize, k: usize, v: &[PolyScalar]) -> Form {
        let mut f = Form::zero(dim);
        for (idx, c) in crate::linalg::combinations(dim, k).iter().zip(v) {
            f.add_term(idx, c.clone());
        }
        f
    }

    /// Renders with the given names for the basis 1-forms.
    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (idx, c) in &self.terms {
            let wedge = idx.iter().map(|&i| names[i].as_str()).collect::<Vec<_>>().join("^");
            let cs = c.to_string();
            let part = if idx.is_empty() {
                cs
            } else if c.is_one() {
                wedge
            } else if (-c).is_one() {
                format!("-{wedge}")
            } else if c.is_atomic() {
                format!("{cs}*{wedge}")
            } else {
                format!("({cs})*{wedge}")
            };
            parts.push(part);
        }
        let mut s = parts[0].clone();
        for p in &parts[1..] {
            match p.strip_prefix('-') {
                Some(rest) => {
                    s.push_str(" - ");
                    s.push_str(rest);
                }
                None => {
                    s.push_str(" + ");
                    s.push_str(p);
                }
            }
        }
        s
    }
}

fn basis_differentials(dim: usize, c: &StructureConstants) -> Vec<Vec<([usize; 2], GaussianRational)>> {
    (0..dim)
        .map(|k| {
            let mut v = Vec::new();
            for i in 0..dim {
                for j in i + 1..dim {
                    let ck = &c[i][j][k];
                    if !ck.is_zero() {
                        v.push(([i, j], -ck));
                    }
                }
            }
            v
        })
        .collect()
}

/// The matrix of `d` from degree `k` to `k+1`, columns indexed by the degree-`k`
/// basis.
pub fn differential_matrix(dim: usize, k: usize, c: &StructureConstants) -> Matrix {
    let sources = crate::linalg::combinations(dim, k);
    let targets = crate::linalg::combinations(dim, k + 1);
    let mut m = crate::linalg::zeros(targets.len(), sources.len());
    for (col, idx) in sources.iter().enumerate() {
        let d = Form::basis(dim, idx).ce_differential(c);
        for (row, t) in targets.iter().enumerate() {
            if let Some(v) = d.coefficient(t).as_constant() {
                m[row][col] = v;
            }
        }
    }
    m
}

impl std::ops::Add<&Form> for &Form {
    type Output = Form;
    fn add(self, rhs: &Form) -> Form {
        assert_eq!(self.dim, rhs.dim);
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.add_term(k, v.clone());
        }
        out
    }
}

impl std::ops::Sub<&Form> for &Form {
    type Output = Form;
    fn sub(self, rhs: &Form) -> Form {
        assert_eq!(self.dim, rhs.dim);
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.add_term(k, -v);
        }
        out
    }
}

impl std::ops::Neg for &Form {
    type Output = Form;
    fn neg(self) -> Form {
        self.map_coefficients(|v| -v)
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.dim).map(|i| format!("e{}", i + 1)).collect();
        f.write_str(&self.render(&names))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: i64) -> PolyScalar {
        PolyScalar::from_int(n)
    }

    #[test]
    fn wedge_is_antisymmetric_on_one_forms() {
        let a = Form::basis(3, &[0]);
        let b = Form::basis(3, &[2]);
        assert_eq!(a.wedge(&b), -&b.wedge(&a));
        assert!(a.wedge(&a).is_zero());
        assert_eq!(Form::basis(3, &[2, 0]).coefficient(&[0, 2]), p(-1));
    }

    #[test]
    fn determinant_evaluation() {
        let f = Form::basis(2, &[0, 1]);
        let v1 = vec![p(1), p(2)];
        let v2 = vec![p(3), p(4)];
        assert_eq!(f.evaluate(&[v1, v2]), p(-2));
    }

    #[test]
    fn interior_matches_evaluation() {
        let f = Form::basis(3, &[0, 1, 2]).scale(&GaussianRational::from_int(5));
        let u = vec![p(1), p(0), p(2)];
        let v = vec![p(0), p(1), p(1)];
        let w = vec![p(3), p(1), p(0)];
        assert_eq!(f.interior(&u).evaluate(&[v.clone(), w.clone()]), f.evaluate(&[u, v, w]));
    }

    #[test]
    fn heisenberg_differential() {
        // [e0, e1] = e2
        let mut c = vec![vec![vec![GaussianRational::zero(); 3]; 3]; 3];
        c[0][1][2] = GaussianRational::one();
        c[1][0][2] = -GaussianRational::one();
        let d = Form::basis(3, &[2]).ce_differential(&c);
        assert_eq!(d, -&Form::basis(3, &[0, 1]));
        assert!(d.ce_differential(&c).is_zero());
        let m = differential_matrix(3, 1, &c);
        assert_eq!(crate::linalg::rank(&m), 1);
    }

    #[test]
    fn render_names() {
        let names: Vec<String> = ["a", "b"].iter().map(|s| s.to_string()).collect();
        let f = &Form::basis(2, &[0, 1]) - &Form::basis(2, &[0]).scale(&GaussianRational::from_parts(0, 1, 1, 2));
        assert_eq!(f.render(&names), "-1/2*i*a + a^b");
    }
}
