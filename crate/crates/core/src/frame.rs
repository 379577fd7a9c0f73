//! Lie algebras given by structure constants on a named frame, almost
//! complex structures, and the complexified eigenframe.

use std::fmt;

use crate::error::{Error, Result};
use crate::exterior::{Form, StructureConstants};
use crate::linalg::{self, Matrix};
use crate::scalar::{GaussianRational, PolyScalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrameAlgebra {
    names: Vec<String>,
    coform_names: Vec<String>,
    structure: StructureConstants,
    conjugation: Vec<usize>,
    complexified: bool,
}

/// A basis triple on which the Jacobi sum does not vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiViolation {
    pub triple: (usize, usize, usize),
    pub defect: Vec<GaussianRational>,
}

fn render_vector(v: &[GaussianRational], names: &[String]) -> String {
    let coeffs: Vec<PolyScalar> = v.iter().cloned().map(PolyScalar::constant).collect();
    Form::one_form(&coeffs).render(names)
}

impl FrameAlgebra {
    /// A real frame: conjugation fixes every basis label. Dual 1-forms are
    /// named `d<name>`.
    pub fn real(names: Vec<String>, structure: StructureConstants) -> Result<Self> {
        let coform_names = names.iter().map(|n| format!("d{n}")).collect();
        let n = names.len();
        Self::new(names, coform_names, structure, (0..n).collect(), false)
    }

    pub fn new(
        names: Vec<String>,
        coform_names: Vec<String>,
        structure: StructureConstants,
        conjugation: Vec<usize>,
        complexified: bool,
    ) -> Result<Self> {
        let n = names.len();
        if coform_names.len() != n || conjugation.len() != n || structure.len() != n {
            return Err(Error::Input("frame data has inconsistent dimensions".into()));
        }
        if structure.iter().any(|row| row.len() != n || row.iter().any(|v| v.len() != n)) {
            return Err(Error::Input("structure constants have the wrong shape".into()));
        }
        if conjugation.iter().enumerate().any(|(i, &j)| j >= n || conjugation[j] != i) {
            return Err(Error::Input("conjugation is not an involution".into()));
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if structure[i][j][k] != -&structure[j][i][k] {
                        return Err(Error::Input(format!(
                            "bracket [{}, {}] is not skew-symmetric",
                            names[i], names[j]
                        )));
                    }
                }
            }
        }
        Ok(Self { names, coform_names, structure, conjugation, complexified })
    }

    /// The abelian algebra on the given names.
    pub fn abelian(names: Vec<String>) -> Self {
        let n = names.len();
        Self::real(names, vec![vec![vec![GaussianRational::zero(); n]; n]; n]).unwrap()
    }

    /// Builds the structure tensor from `(i, j, [i,j])` entries, filling in
    /// skew partners.
    pub fn structure_from_brackets(
        dim: usize,
        brackets: &[(usize, usize, Vec<GaussianRational>)],
    ) -> StructureConstants {
        let mut c = vec![vec![vec![GaussianRational::zero(); dim]; dim]; dim];
        for (i, j, v) in brackets {
            c[*i][*j] = v.clone();
            c[*j][*i] = v.iter().map(|x| -x).collect();
        }
        c
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn coform_names(&self) -> &[String] {
        &self.coform_names
    }

    pub fn structure(&self) -> &StructureConstants {
        &self.structure
    }

    pub fn conjugation(&self) -> &[usize] {
        &self.conjugation
    }

    pub fn is_complexified(&self) -> bool {
        self.complexified
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn bracket(&self, i: usize, j: usize) -> &[GaussianRational] {
        &self.structure[i][j]
    }

    /// Nonzero brackets `[e_i, e_j]` with `i < j`.
    pub fn nonzero_brackets(&self) -> Vec<(usize, usize, Vec<GaussianRational>)> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if self.structure[i][j].iter().any(|x| !x.is_zero()) {
                    out.push((i, j, self.structure[i][j].clone()));
                }
            }
        }
        out
    }

    pub fn is_abelian(&self) -> bool {
        self.nonzero_brackets().is_empty()
    }

    /// Bracket of constant vectors.
    pub fn bracket_vectors(&self, a: &[GaussianRational], b: &[GaussianRational]) -> Vec<GaussianRational> {
        let n = self.dim();
        let mut out = vec![GaussianRational::zero(); n];
        for i in 0..n {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if b[j].is_zero() {
                    continue;
                }
                let f = &a[i] * &b[j];
                for (o, c) in out.iter_mut().zip(&self.structure[i][j]) {
                    if !c.is_zero() {
                        *o += &(c * &f);
                    }
                }
            }
        }
        out
    }

    /// Checks the Jacobi identity on every triple `i < j < k`; triples with a
    /// repeated index hold automatically by skew-symmetry.
    pub fn validate_jacobi(&self) -> Vec<JacobiViolation> {
        let n = self.dim();
        let unit = |i: usize| {
            let mut v = vec![GaussianRational::zero(); n];
            v[i] = GaussianRational::one();
            v
        };
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let (a, b, c) = (unit(i), unit(j), unit(k));
                    let t1 = self.bracket_vectors(&self.bracket_vectors(&a, &b), &c);
                    let t2 = self.bracket_vectors(&self.bracket_vectors(&b, &c), &a);
                    let t3 = self.bracket_vectors(&self.bracket_vectors(&c, &a), &b);
                    let defect: Vec<GaussianRational> =
                        t1.iter().zip(&t2).zip(&t3).map(|((x, y), z)| x + y + z).collect();
                    if defect.iter().any(|d| !d.is_zero()) {
                        out.push(JacobiViolation { triple: (i, j, k), defect });
                    }
                }
            }
        }
        out
    }

    /// Renders a violation list, e.g. `(X, Y, U): -U`.
    pub fn render_violations(&self, v: &[JacobiViolation]) -> String {
        v.iter()
            .map(|x| {
                let (i, j, k) = x.triple;
                format!(
                    "({}, {}, {}): {}",
                    self.names[i],
                    self.names[j],
                    self.names[k],
                    render_vector(&x.defect, &self.names)
                )
            })
            .collect::<Vec<_>>()
            .join("; ")
    }

    pub fn ensure_jacobi(&self) -> Result<()> {
        let v = self.validate_jacobi();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::Jacobi(self.render_violations(&v)))
        }
    }

    /// Chevalley–Eilenberg differential of an invariant form; rejects
    /// coefficient functions and derivative symbols.
    pub fn ce_differential(&self, f: &Form) -> Result<Form> {
        if !f.is_parameter_only() {
            return Err(Error::FunctionCoefficients);
        }
        Ok(f.ce_differential(&self.structure))
    }

    pub fn render_vector(&self, v: &[GaussianRational]) -> String {
        render_vector(v, &self.names)
    }
}

/// An endomorphism of the frame; column `j` holds the image of `e_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexOp {
    matrix: Matrix,
}

impl ComplexOp {
    pub fn new(matrix: Matrix) -> Result<Self> {
        let n = matrix.len();
        if matrix.iter().any(|r| r.len() != n) {
            return Err(Error::Input("J must be square".into()));
        }
        let sq = linalg::mul(&matrix, &matrix);
        let minus_id: Matrix = linalg::identity(n).into_iter().map(|r| r.into_iter().map(|x| -x).collect()).collect();
        if sq != minus_id {
            return Err(Error::NotComplex);
        }
        Ok(Self { matrix })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[GaussianRational]) -> Vec<GaussianRational> {
        linalg::mul_vec(&self.matrix, v)
    }
}

/// The complexified frame of `±i` eigenvectors together with the change of
/// basis: column `a` of `change` is the new vector `a` in old coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Eigenframe {
    pub algebra: FrameAlgebra,
    pub change: Matrix,
    pub inverse: Matrix,
}

impl Eigenframe {
    pub fn holomorphic_dim(&self) -> usize {
        self.algebra.dim() / 2
    }
}

/// Names for the eigenframe: holomorphic vectors and their dual 1-forms.
/// Conjugates get a `bar` suffix.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EigenNames {
    pub vectors: Option<Vec<String>>,
    pub coforms: Option<Vec<String>>,
}

/// Builds the `+i` eigenvectors `½(e − iJe)` greedily from the real basis
/// in order, then their `−i` partners, and recomputes the brackets.
pub fn eigenframe(g: &FrameAlgebra, j: &ComplexOp, names: &EigenNames) -> Result<Eigenframe> {
    let m = g.dim();
    if g.is_complexified() {
        return Err(Error::Input("frame is already complexified".into()));
    }
    if j.matrix().len() != m {
        return Err(Error::Input("J has the wrong dimension".into()));
    }
    let n = m / 2;
    let half = GaussianRational::rational(1, 2);
    let half_i = GaussianRational::from_parts(0, 1, 1, 2);
    let mut plus: Vec<Vec<GaussianRational>> = Vec::new();
    let mut minus: Vec<Vec<GaussianRational>> = Vec::new();
    for k in 0..m {
        if plus.len() == n {
            break;
        }
        let mut e = vec![GaussianRational::zero(); m];
        e[k] = GaussianRational::one();
        let je = j.apply(&e);
        let v: Vec<_> = e.iter().zip(&je).map(|(a, b)| a * &half - b * &half_i).collect();
        let w: Vec<_> = e.iter().zip(&je).map(|(a, b)| a * &half + b * &half_i).collect();
        let mut trial = plus.clone();
        trial.push(v.clone());
        if linalg::rank(&trial) == trial.len() {
            plus.push(v);
            minus.push(w);
        }
    }
    if plus.len() != n || 2 * n != m {
        return Err(Error::NotComplex);
    }
    let columns: Vec<Vec<GaussianRational>> = plus.into_iter().chain(minus).collect();
    let change = linalg::transpose(&columns);
    let inverse = linalg::inverse(&change).ok_or(Error::NotComplex)?;

    let mut structure = vec![vec![vec![GaussianRational::zero(); m]; m]; m];
    for a in 0..m {
        for b in 0..m {
            let br = g.bracket_vectors(&columns[a], &columns[b]);
            structure[a][b] = linalg::mul_vec(&inverse, &br);
        }
    }

    let base_vectors = match &names.vectors {
        Some(v) if v.len() == n => v.clone(),
        Some(_) => return Err(Error::Input(format!("expected {n} eigenframe names"))),
        None => (1..=n).map(|k| format!("Z{k}")).collect(),
    };
    let base_coforms = match &names.coforms {
        Some(v) if v.len() == n => v.clone(),
        Some(_) => return Err(Error::Input(format!("expected {n} coframe names"))),
        None => (1..=n).map(|k| format!("zeta{k}")).collect(),
    };
    let with_bars = |v: Vec<String>| -> Vec<String> {
        let bars: Vec<String> = v.iter().map(|s| format!("{s}bar")).collect();
        v.into_iter().chain(bars).collect()
    };
    let conjugation = (0..m).map(|a| if a < n { a + n } else { a - n }).collect();
    let algebra = FrameAlgebra::new(with_bars(base_vectors), with_bars(base_coforms), structure, conjugation, true)?;
    Ok(Eigenframe { algebra, change, inverse })
}

/// The four-dimensional algebra with `[X,Y] = U` and
/// `JX = Y, JY = −X, JU = V, JV = −U`.
pub fn kodaira_preset() -> (FrameAlgebra, ComplexOp) {
    let names: Vec<String> = ["X", "Y", "U", "V"].iter().map(|s| s.to_string()).collect();
    let u = vec![0, 0, 1, 0].into_iter().map(GaussianRational::from_int).collect();
    let c = FrameAlgebra::structure_from_brackets(4, &[(0, 1, u)]);
    let g = FrameAlgebra::real(names, c).expect("preset is well formed");
    let mut j = linalg::zeros(4, 4);
    let one = GaussianRational::one();
    j[1][0] = one.clone();
    j[0][1] = -&one;
    j[3][2] = one.clone();
    j[2][3] = -one;
    (g, ComplexOp::new(j).expect("preset J squares to -1"))
}

/// Eigenframe names used for the preset. The conjugate of `W` satisfies
/// `J Wbar = -i Wbar`.
pub fn kodaira_names() -> EigenNames {
    EigenNames { vectors: Some(vec!["T".into(), "W".into()]), coforms: Some(vec!["omega".into(), "rho".into()]) }
}

pub fn kodaira_eigenframe() -> Eigenframe {
    let (g, j) = kodaira_preset();
    eigenframe(&g, &j, &kodaira_names()).expect("preset admits an eigenframe")
}

impl fmt::Display for FrameAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "basis {}", self.names.join(" "))?;
        for (i, j, v) in self.nonzero_brackets() {
            write!(f, "\n[{}, {}] = {}", self.names[i], self.names[j], self.render_vector(&v))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gr(re: (i64, i64), im: (i64, i64)) -> GaussianRational {
        GaussianRational::from_parts(re.0, re.1, im.0, im.1)
    }

    #[test]
    fn preset_is_a_lie_algebra() {
        let (g, _) = kodaira_preset();
        assert!(g.validate_jacobi().is_empty());
    }

    #[test]
    fn kodaira_eigenframe_bracket() {
        let ef = kodaira_eigenframe();
        let g = &ef.algebra;
        assert_eq!(g.names(), ["T", "W", "Tbar", "Wbar"]);
        let br = g.nonzero_brackets();
        assert_eq!(br.len(), 1);
        let (i, j, v) = &br[0];
        assert_eq!((*i, *j), (0, 2));
        let half_i = gr((0, 1), (1, 2));
        assert_eq!(v, &vec![GaussianRational::zero(), half_i.clone(), GaussianRational::zero(), half_i]);
    }

    #[test]
    fn change_of_basis_recovers_real_frame() {
        let ef = kodaira_eigenframe();
        let cols = linalg::transpose(&ef.change);
        let sum: Vec<_> = cols[0].iter().zip(&cols[2]).map(|(a, b)| a + b).collect();
        assert_eq!(sum, vec![1, 0, 0, 0].into_iter().map(GaussianRational::from_int).collect::<Vec<_>>());
        let i = GaussianRational::i();
        let diff: Vec<_> = cols[0].iter().zip(&cols[2]).map(|(a, b)| &i * &(a - b)).collect();
        assert_eq!(diff, vec![0, 1, 0, 0].into_iter().map(GaussianRational::from_int).collect::<Vec<_>>());
    }

    #[test]
    fn eigenvectors_have_eigenvalue_i() {
        let (_, j) = kodaira_preset();
        let ef = kodaira_eigenframe();
        let cols = linalg::transpose(&ef.change);
        for (a, v) in cols.iter().enumerate() {
            let lambda = if a < 2 { GaussianRational::i() } else { -GaussianRational::i() };
            let scaled: Vec<_> = v.iter().map(|x| x * &lambda).collect();
            assert_eq!(j.apply(v), scaled);
        }
    }

    #[test]
    fn bad_j_is_rejected() {
        assert!(matches!(ComplexOp::new(linalg::identity(2)), Err(Error::NotComplex)));
    }

    #[test]
    fn seeded_defect_is_located() {
        let one = GaussianRational::one();
        let z = GaussianRational::zero();
        let c = FrameAlgebra::structure_from_brackets(
            4,
            &[
                (0, 1, vec![z.clone(), z.clone(), one.clone(), z.clone()]),
                (0, 2, vec![one.clone(), z.clone(), z.clone(), z.clone()]),
            ],
        );
        let g = FrameAlgebra::real(["X", "Y", "U", "V"].iter().map(|s| s.to_string()).collect(), c).unwrap();
        let v = g.validate_jacobi();
        assert_eq!(v.len(), 1);
        assert_eq!(g.render_violations(&v), "(X, Y, U): -U");
    }

    #[test]
    fn differential_on_eigenframe() {
        let g = kodaira_eigenframe().algebra;
        assert!(g.ce_differential(&Form::basis(4, &[0])).unwrap().is_zero());
        let drho = g.ce_differential(&Form::basis(4, &[1])).unwrap();
        assert_eq!(drho, Form::basis(4, &[0, 2]).scale(&gr((0, 1), (-1, 2))));
    }
}
