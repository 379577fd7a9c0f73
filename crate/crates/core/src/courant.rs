//! Sections of `(T ⊕ T*) ⊗ C` in a frame, the natural pairing, Lie
//! derivatives with formal derivative symbols, and the Courant bracket.

use crate::error::Result;
use crate::exterior::Form;
use crate::frame::FrameAlgebra;
use crate::scalar::{GaussianRational, PolyScalar};

/// `X + σ` with `X = Σ tangent[a] e_a` and `σ = Σ cotangent[a] e^a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenSection {
    pub tangent: Vec<PolyScalar>,
    pub cotangent: Vec<PolyScalar>,
}

impl GenSection {
    pub fn zero(dim: usize) -> Self {
        Self { tangent: vec![PolyScalar::zero(); dim], cotangent: vec![PolyScalar::zero(); dim] }
    }

    /// Basis element `k` of the doubled basis: tangent vectors first, then
    /// the dual 1-forms.
    pub fn basis(dim: usize, k: usize) -> Self {
        let mut s = Self::zero(dim);
        if k < dim {
            s.tangent[k] = PolyScalar::one();
        } else {
            s.cotangent[k - dim] = PolyScalar::one();
        }
        s
    }

    /// From a constant coefficient vector of length `2·dim`.
    pub fn from_constants(v: &[GaussianRational]) -> Self {
        let dim = v.len() / 2;
        Self::from_polys(&v.iter().cloned().map(PolyScalar::constant).collect::<Vec<_>>()[..2 * dim])
    }

    pub fn from_polys(v: &[PolyScalar]) -> Self {
        let dim = v.len() / 2;
        Self { tangent: v[..dim].to_vec(), cotangent: v[dim..].to_vec() }
    }

    pub fn dim(&self) -> usize {
        self.tangent.len()
    }

    /// The coefficient vector of length `2·dim`.
    pub fn coefficients(&self) -> Vec<PolyScalar> {
        self.tangent.iter().chain(&self.cotangent).cloned().collect()
    }

    /// The coefficient vector if every entry is a constant.
    pub fn constant_coefficients(&self) -> Option<Vec<GaussianRational>> {
        self.tangent.iter().chain(&self.cotangent).map(PolyScalar::as_constant).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.tangent.iter().chain(&self.cotangent).all(PolyScalar::is_zero)
    }

    pub fn is_parameter_only(&self) -> bool {
        self.tangent.iter().chain(&self.cotangent).all(PolyScalar::is_parameter_only)
    }

    pub fn map(&self, mut f: impl FnMut(&PolyScalar) -> PolyScalar) -> Self {
        Self {
            tangent: self.tangent.iter().map(&mut f).collect(),
            cotangent: self.cotangent.iter().map(&mut f).collect(),
        }
    }

    pub fn mul_poly(&self, p: &PolyScalar) -> Self {
        self.map(|x| x * p)
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        self.map(|x| x.scale(c))
    }

    /// Complex conjugation: conjugates the numeric coefficients and maps
    /// each basis label to its conjugate label.
    pub fn conjugate(&self, frame: &FrameAlgebra) -> Self {
        let conj = frame.conjugation();
        let mut out = Self::zero(self.dim());
        for a in 0..self.dim() {
            out.tangent[conj[a]] = self.tangent[a].conj_coefficients();
            out.cotangent[conj[a]] = self.cotangent[a].conj_coefficients();
        }
        out
    }

    pub fn render(&self, frame: &FrameAlgebra) -> String {
        let names: Vec<String> = frame.names().iter().chain(frame.coform_names()).cloned().collect();
        Form::one_form(&self.coefficients()).render(&names)
    }
}

impl std::ops::Add<&GenSection> for &GenSection {
    type Output = GenSection;
    fn add(self, rhs: &GenSection) -> GenSection {
        GenSection {
            tangent: self.tangent.iter().zip(&rhs.tangent).map(|(a, b)| a + b).collect(),
            cotangent: self.cotangent.iter().zip(&rhs.cotangent).map(|(a, b)| a + b).collect(),
        }
    }
}

impl std::ops::Sub<&GenSection> for &GenSection {
    type Output = GenSection;
    fn sub(self, rhs: &GenSection) -> GenSection {
        GenSection {
            tangent: self.tangent.iter().zip(&rhs.tangent).map(|(a, b)| a - b).collect(),
            cotangent: self.cotangent.iter().zip(&rhs.cotangent).map(|(a, b)| a - b).collect(),
        }
    }
}

/// `Σ v[a]·w[a]`.
fn dot(v: &[PolyScalar], w: &[PolyScalar]) -> PolyScalar {
    v.iter().zip(w).filter(|(a, b)| !a.is_zero() && !b.is_zero()).map(|(a, b)| a * b).sum()
}

/// `⟨X + σ, Y + τ⟩ = ½(σ(Y) + τ(X))`.
pub fn pair(a: &GenSection, b: &GenSection) -> PolyScalar {
    (dot(&a.cotangent, &b.tangent) + dot(&b.cotangent, &a.tangent)).scale(&GaussianRational::rational(1, 2))
}

/// `i_X τ`.
pub fn interior(x: &[PolyScalar], tau: &[PolyScalar]) -> PolyScalar {
    dot(x, tau)
}

/// `X(f) = Σ X^a e_a(f)`, with `e_a(f)` expanded into derivative symbols
/// named after the frame vector.
pub fn apply_vector(frame: &FrameAlgebra, x: &[PolyScalar], f: &PolyScalar) -> Result<PolyScalar> {
    let mut acc = PolyScalar::zero();
    for (xa, name) in x.iter().zip(frame.names()) {
        if xa.is_zero() {
            continue;
        }
        let d = f.derive(name)?;
        if !d.is_zero() {
            acc += &(xa * &d);
        }
    }
    Ok(acc)
}

/// `df = Σ e_a(f) e^a`.
pub fn d0(frame: &FrameAlgebra, f: &PolyScalar) -> Result<Vec<PolyScalar>> {
    frame.names().iter().map(|n| Ok(f.derive(n)?)).collect()
}

/// `[X, Y]` of vector fields with function coefficients.
pub fn lie_bracket(frame: &FrameAlgebra, x: &[PolyScalar], y: &[PolyScalar]) -> Result<Vec<PolyScalar>> {
    let n = frame.dim();
    let mut out = vec![PolyScalar::zero(); n];
    for i in 0..n {
        if x[i].is_zero() {
            continue;
        }
        for j in 0..n {
            if y[j].is_zero() {
                continue;
            }
            let f = &x[i] * &y[j];
            for (o, c) in out.iter_mut().zip(frame.bracket(i, j)) {
                if !c.is_zero() {
                    *o += &f.scale(c);
                }
            }
        }
    }
    for b in 0..n {
        let t = apply_vector(frame, x, &y[b])? - apply_vector(frame, y, &x[b])?;
        out[b] += &t;
    }
    Ok(out)
}

/// `dτ` for a 1-form with function coefficients.
pub fn d1(frame: &FrameAlgebra, tau: &[PolyScalar]) -> Result<Form> {
    let n = frame.dim();
    let mut out = Form::zero(n);
    for (b, tb) in tau.iter().enumerate() {
        if tb.is_zero() {
            continue;
        }
        let eb = Form::basis(n, &[b]);
        out = &out + &Form::one_form(&d0(frame, tb)?).wedge(&eb);
        out = &out + &eb.ce_differential(frame.structure()).mul_poly(tb);
    }
    Ok(out)
}

/// `L_X τ = i_X dτ + d(i_X τ)`.
pub fn lie_derivative(frame: &FrameAlgebra, x: &[PolyScalar], tau: &[PolyScalar]) -> Result<Vec<PolyScalar>> {
    let n = frame.dim();
    let a = d1(frame, tau)?.interior(x).coefficient_vector(1);
    let b = d0(frame, &interior(x, tau))?;
    debug_assert_eq!(a.len(), n);
    Ok(a.iter().zip(&b).map(|(u, v)| u + v).collect())
}

/// `[X+σ, Y+τ] = [X,Y] + L_Xτ − L_Yσ − ½ d(i_Xτ − i_Yσ)`.
pub fn courant_bracket(frame: &FrameAlgebra, s1: &GenSection, s2: &GenSection) -> Result<GenSection> {
    let tangent = lie_bracket(frame, &s1.tangent, &s2.tangent)?;
    let l1 = lie_derivative(frame, &s1.tangent, &s2.cotangent)?;
    let l2 = lie_derivative(frame, &s2.tangent, &s1.cotangent)?;
    let f = interior(&s1.tangent, &s2.cotangent) - interior(&s2.tangent, &s1.cotangent);
    let df = d0(frame, &f)?;
    let half = GaussianRational::rational(1, 2);
    let cotangent = l1.iter().zip(&l2).zip(&df).map(|((a, b), c)| a - b - c.scale(&half)).collect();
    Ok(GenSection { tangent, cotangent })
}

/// All pairwise brackets, `table[i][j] = [g_i, g_j]`.
pub fn bracket_table(frame: &FrameAlgebra, generators: &[GenSection]) -> Result<Vec<Vec<GenSection>>> {
    generators.iter().map(|a| generators.iter().map(|b| courant_bracket(frame, a, b)).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::kodaira_eigenframe;
    use crate::scalar::Symbol;

    // basis order T, W, Tbar, Wbar, omega, rho, omegabar, rhobar
    fn e(k: usize) -> GenSection {
        GenSection::basis(4, k)
    }

    fn half_i() -> GaussianRational {
        GaussianRational::from_parts(0, 1, 1, 2)
    }

    #[test]
    fn pairing_examples() {
        assert_eq!(pair(&e(4), &e(0)), PolyScalar::constant(GaussianRational::rational(1, 2)));
        assert!(pair(&e(0), &e(1)).is_zero());
        let s = |slot: usize, a: &str, b: &str| {
            let mut x = GenSection::zero(4);
            x.tangent[slot] = PolyScalar::symbol(&Symbol::function(a));
            x.cotangent[0] = PolyScalar::symbol(&Symbol::function(b));
            x
        };
        let lhs = pair(&s(0, "u1", "u3"), &s(0, "alpha1", "alpha3"));
        assert_eq!(lhs.to_string(), "1/2*alpha1*u3 + 1/2*alpha3*u1");
        // omega annihilates Tbar, so Tbar + omega sections are isotropic
        assert!(pair(&s(2, "u1", "u3"), &s(2, "alpha1", "alpha3")).is_zero());
    }

    #[test]
    fn kodaira_lie_derivatives() {
        let g = kodaira_eigenframe().algebra;
        let t = e(0).tangent;
        assert!(lie_derivative(&g, &t, &e(6).cotangent).unwrap().iter().all(PolyScalar::is_zero));
        let l = lie_derivative(&g, &t, &e(7).cotangent).unwrap();
        assert_eq!(GenSection { tangent: vec![PolyScalar::zero(); 4], cotangent: l }, e(6).scale(&-half_i()));
    }

    #[test]
    fn kodaira_brackets() {
        let g = kodaira_eigenframe().algebra;
        assert_eq!(courant_bracket(&g, &e(0), &e(7)).unwrap(), e(6).scale(&-half_i()));
        assert_eq!(courant_bracket(&g, &e(2), &e(5)).unwrap(), e(4).scale(&half_i()));
        let tt = courant_bracket(&g, &e(0), &e(2)).unwrap();
        assert_eq!(tt, (&e(1) + &e(3)).scale(&half_i()));
        for k in 0..8 {
            assert!(courant_bracket(&g, &e(k), &e(k)).unwrap().is_zero());
        }
    }

    #[test]
    fn conjugation_swaps_labels() {
        let g = kodaira_eigenframe().algebra;
        let s = e(0).scale(&GaussianRational::i());
        assert_eq!(s.conjugate(&g), e(2).scale(&-GaussianRational::i()));
        assert_eq!(e(5).conjugate(&g), e(7));
    }
}
