//! Maximal isotropic subbundles spanned by constant sections, their Lie
//! algebroid structure, the identification `θ: L̄ → L*`, the differential
//! `d_L` and the Schouten bracket on `∧•L*`.

use crate::courant::{self, GenSection};
use crate::error::{Error, Result};
use crate::exterior::{Form, StructureConstants};
use crate::frame::{self, ComplexOp, EigenNames, Eigenframe, FrameAlgebra};
use crate::linalg::{self, Matrix, SpanCoordinates};
use crate::scalar::{GaussianRational, PolyScalar};

/// Outcome of the three subbundle checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubbundleVerdict {
    /// Generator pairs `(a, b)`, `a ≤ b`, with nonzero pairing.
    pub isotropy_failures: Vec<(usize, usize, GaussianRational)>,
    /// Generator pairs whose bracket leaves the span.
    pub involutivity_failures: Vec<(usize, usize)>,
    /// `L ∩ L̄ = 0`.
    pub separated: bool,
}

impl SubbundleVerdict {
    pub fn is_isotropic(&self) -> bool {
        self.isotropy_failures.is_empty()
    }

    pub fn is_involutive(&self) -> bool {
        self.involutivity_failures.is_empty()
    }

    pub fn holds(&self) -> bool {
        self.is_isotropic() && self.is_involutive() && self.separated
    }
}

fn constant_vectors(generators: &[GenSection]) -> Result<Vec<Vec<GaussianRational>>> {
    generators
        .iter()
        .map(|g| g.constant_coefficients().ok_or_else(|| Error::Input("subbundle generators must be constant".into())))
        .collect()
}

/// Checks isotropy, involutivity and separation of the span of constant
/// sections. Involutivity is only examined for linearly independent
/// generators.
pub fn check_subbundle(frame: &FrameAlgebra, generators: &[GenSection]) -> Result<SubbundleVerdict> {
    let vectors = constant_vectors(generators)?;
    let r = generators.len();
    let mut isotropy_failures = Vec::new();
    for a in 0..r {
        for b in a..r {
            let p = courant::pair(&generators[a], &generators[b]);
            if !p.is_zero() {
                isotropy_failures.push((a, b, p.as_constant().expect("constant sections")));
            }
        }
    }
    let mut involutivity_failures = Vec::new();
    if let Some(coords) = SpanCoordinates::new(&vectors) {
        for a in 0..r {
            for b in a + 1..r {
                let br = courant::courant_bracket(frame, &generators[a], &generators[b])?;
                let v = br.constant_coefficients().expect("constant bracket");
                if coords.solve(&v).is_none() {
                    involutivity_failures.push((a, b));
                }
            }
        }
    } else {
        involutivity_failures.extend((0..r).flat_map(|a| (a + 1..r).map(move |b| (a, b))));
    }
    let conj = constant_vectors(&generators.iter().map(|g| g.conjugate(frame)).collect::<Vec<_>>())?;
    let stacked: Matrix = vectors.into_iter().chain(conj).collect();
    let separated = linalg::rank(&stacked) == 2 * frame.dim() && r == frame.dim();
    Ok(SubbundleVerdict { isotropy_failures, involutivity_failures, separated })
}

/// A maximal isotropic, involutive subbundle `L` with `L ∩ L̄ = 0`, spanned
/// by constant sections `g_a`; `h_a` denotes the conjugate of `g_a`.
#[derive(Clone, Debug)]
pub struct IsotropicSubbundle {
    frame: FrameAlgebra,
    names: Vec<String>,
    generators: Vec<GenSection>,
    conjugates: Vec<GenSection>,
    coords: SpanCoordinates,
    structure: StructureConstants,
    conj_structure: StructureConstants,
    anchor: Matrix,
    theta: Matrix,
    dual_table: Vec<Vec<Form>>,
}

impl IsotropicSubbundle {
    pub fn new(frame: &FrameAlgebra, generators: Vec<GenSection>, names: Vec<String>) -> Result<Self> {
        let m = frame.dim();
        if generators.len() != m || names.len() != m {
            return Err(Error::Input(format!("a maximal isotropic subbundle needs {m} generators")));
        }
        let verdict = check_subbundle(frame, &generators)?;
        let pair_name = |a: usize, b: usize| format!("({}, {})", names[a], names[b]);
        if !verdict.is_isotropic() {
            let list: Vec<String> = verdict.isotropy_failures.iter().map(|(a, b, _)| pair_name(*a, *b)).collect();
            return Err(Error::NotIsotropic(list.join(", ")));
        }
        if !verdict.is_involutive() {
            let list: Vec<String> =
                verdict.involutivity_failures.iter().map(|(a, b)| format!("[{}, {}]", names[*a], names[*b])).collect();
            return Err(Error::NotInvolutive(list.join(", ")));
        }
        if !verdict.separated {
            return Err(Error::NotSeparated);
        }
        let conjugates: Vec<GenSection> = generators.iter().map(|g| g.conjugate(frame)).collect();
        let coords = SpanCoordinates::new(&constant_vectors(&generators)?).expect("independent generators");
        let conj_coords = SpanCoordinates::new(&constant_vectors(&conjugates)?).expect("independent conjugates");
        let structure = structure_of(frame, &generators, &coords)?;
        let conj_structure = structure_of(frame, &conjugates, &conj_coords)?;
        let anchor: Matrix = (0..m)
            .map(|i| generators.iter().map(|g| g.tangent[i].as_constant().expect("constant")).collect())
            .collect();
        let theta: Matrix = (0..m)
            .map(|b| {
                conjugates.iter().map(|h| courant::pair(h, &generators[b]).as_constant().expect("constant")).collect()
            })
            .collect();
        let theta_inv = linalg::inverse(&theta).ok_or(Error::NotSeparated)?;
        let dual_table = dual_table(&theta, &theta_inv, &conj_structure);
        Ok(Self {
            frame: frame.clone(),
            names,
            generators,
            conjugates,
            coords,
            structure,
            conj_structure,
            anchor,
            theta,
            dual_table,
        })
    }

    pub fn frame(&self) -> &FrameAlgebra {
        &self.frame
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Names of the dual basis `g_a*` of `L*`.
    pub fn dual_names(&self) -> Vec<String> {
        self.names.iter().map(|n| format!("{n}*")).collect()
    }

    pub fn generators(&self) -> &[GenSection] {
        &self.generators
    }

    pub fn conjugates(&self) -> &[GenSection] {
        &self.conjugates
    }

    /// `[g_a, g_b] = Σ_c structure[a][b][c] g_c`.
    pub fn structure(&self) -> &StructureConstants {
        &self.structure
    }

    /// Brackets of the conjugate generators, in the `h` basis.
    pub fn conjugate_structure(&self) -> &StructureConstants {
        &self.conj_structure
    }

    /// Column `a` is the tangent projection of `g_a`.
    pub fn anchor(&self) -> &Matrix {
        &self.anchor
    }

    /// `theta[b][i] = ⟨h_i, g_b⟩`, i.e. `θ(h_i) = Σ_b theta[b][i] g_b*`.
    pub fn theta(&self) -> &Matrix {
        &self.theta
    }

    /// `θ(h_i)` as a 1-form on `L`.
    pub fn theta_of(&self, i: usize) -> Form {
        let col: Vec<PolyScalar> = self.theta.iter().map(|row| PolyScalar::constant(row[i].clone())).collect();
        Form::one_form(&col)
    }

    /// `[g_a*, g_b*]`, the bracket of `L̄` transported through `θ`.
    pub fn dual_table(&self) -> &[Vec<Form>] {
        &self.dual_table
    }

    /// `k = dim(T ⊗ C) − rank(anchor)`.
    pub fn type_k(&self) -> usize {
        self.frame.dim() - linalg::rank(&self.anchor)
    }

    /// `Σ x_a g_a`.
    pub fn section(&self, x: &[PolyScalar]) -> GenSection {
        let mut s = GenSection::zero(self.frame.dim());
        for (xa, g) in x.iter().zip(&self.generators) {
            if !xa.is_zero() {
                s = &s + &g.mul_poly(xa);
            }
        }
        s
    }

    /// Coordinates of a section of `L` in the generators.
    pub fn coordinates(&self, s: &GenSection) -> Option<Vec<PolyScalar>> {
        self.coords.solve_poly(&s.coefficients())
    }

    /// `a(x)(f)` for a section given by coordinates.
    pub fn anchor_apply(&self, x: &[PolyScalar], f: &PolyScalar) -> Result<PolyScalar> {
        courant::apply_vector(&self.frame, &self.section(x).tangent, f)
    }

    /// Bracket of general sections, via the Courant bracket.
    pub fn bracket_sections(&self, x: &[PolyScalar], y: &[PolyScalar]) -> Result<Vec<PolyScalar>> {
        let br = courant::courant_bracket(&self.frame, &self.section(x), &self.section(y))?;
        self.coordinates(&br).ok_or_else(|| Error::NotInSpan("a bracket of sections of L".into()))
    }

    /// `d_L` on forms with parameter-only coefficients: the anchor terms
    /// vanish and only the bracket terms remain.
    pub fn d_l_invariant(&self, f: &Form) -> Result<Form> {
        if !f.is_parameter_only() {
            return Err(Error::FunctionCoefficients);
        }
        Ok(f.ce_differential(&self.structure))
    }

    /// `(d_L f)(X₀,…,X_k)` for a `k`-form, `k ≤ 2`, on sections given by
    /// coordinates with function coefficients. For parameter-only `f` every
    /// derivative term must cancel; survivors are an error.
    pub fn d_l_general(&self, f: &Form, args: &[Vec<PolyScalar>]) -> Result<PolyScalar> {
        let k = args.len().checked_sub(1).ok_or_else(|| Error::Input("d_L needs at least one argument".into()))?;
        if k > 2 {
            return Err(Error::Input("general d_L is implemented up to degree 2".into()));
        }
        let fk = f.component(k);
        let mut acc = PolyScalar::zero();
        for i in 0..=k {
            let rest: Vec<Vec<PolyScalar>> =
                args.iter().enumerate().filter(|(p, _)| *p != i).map(|(_, v)| v.clone()).collect();
            let term = self.anchor_apply(&args[i], &fk.evaluate(&rest))?;
            if i % 2 == 0 {
                acc += &term;
            } else {
                acc -= &term;
            }
        }
        for i in 0..=k {
            for j in i + 1..=k {
                let mut list = vec![self.bracket_sections(&args[i], &args[j])?];
                list.extend(args.iter().enumerate().filter(|(p, _)| *p != i && *p != j).map(|(_, v)| v.clone()));
                let term = fk.evaluate(&list);
                if (i + j) % 2 == 0 {
                    acc += &term;
                } else {
                    acc -= &term;
                }
            }
        }
        if f.is_parameter_only() && acc.has_derivations() {
            return Err(Error::DerivativesSurvive(acc.derivation_term_count()));
        }
        Ok(acc)
    }

    /// Graded bracket on `∧•L*` extending the transported bracket of `L̄`.
    pub fn schouten_bracket(&self, a: &Form, b: &Form) -> Result<Form> {
        if !a.is_parameter_only() || !b.is_parameter_only() {
            return Err(Error::FunctionCoefficients);
        }
        Ok(a.schouten(b, &self.dual_table))
    }

    pub fn render_form(&self, f: &Form) -> String {
        f.render(&self.dual_names())
    }
}

fn structure_of(frame: &FrameAlgebra, gens: &[GenSection], coords: &SpanCoordinates) -> Result<StructureConstants> {
    gens.iter()
        .map(|a| {
            gens.iter()
                .map(|b| {
                    let br = courant::courant_bracket(frame, a, b)?;
                    let v = br.constant_coefficients().expect("constant bracket");
                    coords.solve(&v).ok_or_else(|| Error::NotInvolutive("conjugate subbundle".into()))
                })
                .collect()
        })
        .collect()
}

fn dual_table(theta: &Matrix, theta_inv: &Matrix, conj: &StructureConstants) -> Vec<Vec<Form>> {
    let r = theta.len();
    let mut table = vec![vec![Form::zero(r); r]; r];
    for a in 0..r {
        for b in 0..r {
            // [θ⁻¹ g_a*, θ⁻¹ g_b*] in the h basis
            let mut h = vec![GaussianRational::zero(); r];
            for i in 0..r {
                if theta_inv[i][a].is_zero() {
                    continue;
                }
                for j in 0..r {
                    if theta_inv[j][b].is_zero() {
                        continue;
                    }
                    let f = &theta_inv[i][a] * &theta_inv[j][b];
                    for (hk, c) in h.iter_mut().zip(&conj[i][j]) {
                        if !c.is_zero() {
                            *hk += &(c * &f);
                        }
                    }
                }
            }
            let image = linalg::mul_vec(theta, &h);
            table[a][b] = Form::one_form(&image.into_iter().map(PolyScalar::constant).collect::<Vec<_>>());
        }
    }
    table
}

/// `L = T_{0,1} ⊕ T*_{1,0}` on a complexified eigenframe: the conjugate
/// (second half) vectors and the first-half dual 1-forms.
pub fn complex_eigenbundle(frame: &FrameAlgebra) -> Result<IsotropicSubbundle> {
    if !frame.is_complexified() {
        return Err(Error::Input("complex eigenbundle needs a complexified frame".into()));
    }
    let m = frame.dim();
    let n = m / 2;
    let mut gens = Vec::new();
    let mut names = Vec::new();
    for a in n..m {
        gens.push(GenSection::basis(m, a));
        names.push(frame.names()[a].clone());
    }
    for a in 0..n {
        gens.push(GenSection::basis(m, m + a));
        names.push(frame.coform_names()[a].clone());
    }
    IsotropicSubbundle::new(frame, gens, names)
}

/// Eigenframe plus complex eigenbundle of `(g, J)`.
pub fn build_complex_eigenbundle(
    g: &FrameAlgebra,
    j: &ComplexOp,
    names: &EigenNames,
) -> Result<(Eigenframe, IsotropicSubbundle)> {
    let ef = frame::eigenframe(g, j, names)?;
    let l = complex_eigenbundle(&ef.algebra)?;
    Ok((ef, l))
}

/// Result of the symplectic construction. `bundle` is present exactly when
/// all subbundle checks pass.
#[derive(Clone, Debug)]
pub struct SymplecticEigenbundle {
    pub generators: Vec<GenSection>,
    pub names: Vec<String>,
    pub dw: Form,
    pub verdict: SubbundleVerdict,
    pub bundle: Option<IsotropicSubbundle>,
}

/// `L = {e_a − i·i_{e_a}w}` for a nondegenerate constant 2-form `w`.
pub fn build_symplectic_eigenbundle(frame: &FrameAlgebra, w: &Form) -> Result<SymplecticEigenbundle> {
    let m = frame.dim();
    let w2 = w.component(2);
    if !w2.is_parameter_only() || w2 != *w {
        return Err(Error::Input("symplectic form must be a constant 2-form".into()));
    }
    let unit = |a: usize| {
        let mut v = vec![PolyScalar::zero(); m];
        v[a] = PolyScalar::one();
        v
    };
    let gram: Matrix = (0..m)
        .map(|a| (0..m).map(|b| w.evaluate(&[unit(a), unit(b)]).as_constant().ok_or(Error::Degenerate)).collect())
        .collect::<Result<_>>()?;
    if linalg::rank(&gram) < m {
        return Err(Error::Degenerate);
    }
    let minus_i = -GaussianRational::i();
    let generators: Vec<GenSection> = (0..m)
        .map(|a| GenSection {
            tangent: unit(a),
            cotangent: w.interior(&unit(a)).coefficient_vector(1).iter().map(|c| c.scale(&minus_i)).collect(),
        })
        .collect();
    let names: Vec<String> = frame.names().iter().map(|n| format!("{n}~")).collect();
    let dw = frame.ce_differential(w)?;
    let verdict = check_subbundle(frame, &generators)?;
    let bundle =
        if verdict.holds() { Some(IsotropicSubbundle::new(frame, generators.clone(), names.clone())?) } else { None };
    Ok(SymplecticEigenbundle { generators, names, dw, verdict, bundle })
}
