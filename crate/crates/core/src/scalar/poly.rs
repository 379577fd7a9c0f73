use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use super::{DerivationSymbol, GaussianRational, Generator, ScalarError, Symbol, SymbolKind};

/// A monomial: generators with positive exponents, sorted by [`Generator`]
/// order. The empty monomial is `1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<(Generator, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Self(Vec::new())
    }

    pub fn generator(g: Generator) -> Self {
        Self(vec![(g, 1)])
    }

    pub fn factors(&self) -> &[(Generator, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent_of(&self, g: &Generator) -> u32 {
        self.0.iter().find(|(h, _)| h == g).map_or(0, |(_, e)| *e)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(self.0[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(other.0[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((self.0[i].0.clone(), self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    /// Removes one power of the factor at `idx`.
    fn lowered(&self, idx: usize) -> Monomial {
        let mut out = self.0.clone();
        if out[idx].1 == 1 {
            out.remove(idx);
        } else {
            out[idx].1 -= 1;
        }
        Monomial(out)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, (g, e)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{g}")?;
            } else {
                write!(f, "{g}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sparse polynomial over the Gaussian rationals in commuting generators.
///
/// Zero coefficients are never stored, so derived equality is equality of
/// polynomials.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PolyScalar {
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl PolyScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        Self { terms }
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(GaussianRational::from_int(n))
    }

    pub fn symbol(s: &Symbol) -> Self {
        Self::generator(Generator::Symbol(s.clone()))
    }

    pub fn derivation(d: &DerivationSymbol) -> Self {
        Self::generator(Generator::Derivation(d.clone()))
    }

    pub fn generator(g: Generator) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::generator(g), GaussianRational::one());
        Self { terms }
    }

    pub fn term(coefficient: GaussianRational, monomial: Monomial) -> Self {
        let mut p = Self::zero();
        p.add_term(monomial, &coefficient);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    /// The value if this polynomial is a constant (including zero).
    pub fn as_constant(&self) -> Option<GaussianRational> {
        match self.terms.len() {
            0 => Some(GaussianRational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> GaussianRational {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, m: Monomial, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    /// Maximal total degree over all terms; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Every generator occurring in some term.
    pub fn generators(&self) -> BTreeSet<Generator> {
        self.terms.keys().flat_map(|m| m.0.iter().map(|(g, _)| g.clone())).collect()
    }

    /// Plain symbols occurring in some term (operands of derivations
    /// excluded).
    pub fn symbols(&self) -> BTreeSet<Symbol> {
        self.generators().into_iter().filter_map(|g| g.as_symbol().cloned()).collect()
    }

    pub fn has_derivations(&self) -> bool {
        self.terms.keys().any(|m| m.0.iter().any(|(g, _)| g.is_derivation()))
    }

    pub fn has_kind(&self, kind: SymbolKind) -> bool {
        self.terms.keys().any(|m| {
            m.0.iter().any(|(g, _)| match g {
                Generator::Symbol(s) => s.kind() == kind,
                Generator::Derivation(_) => kind == SymbolKind::CoefficientFunction,
            })
        })
    }

    /// True if only parameters (no functions, no derivatives) occur.
    pub fn is_parameter_only(&self) -> bool {
        !self.has_kind(SymbolKind::CoefficientFunction)
    }

    /// Number of terms that contain at least one derivation symbol.
    pub fn derivation_term_count(&self) -> usize {
        self.terms.keys().filter(|m| m.0.iter().any(|(g, _)| g.is_derivation())).count()
    }

    /// Replaces parameter symbols by Gaussian-rational values.
    pub fn substitute(&self, bindings: &BTreeMap<Symbol, GaussianRational>) -> Result<PolyScalar, ScalarError> {
        if let Some(bad) = bindings.keys().find(|s| !s.is_parameter()) {
            return Err(ScalarError::NonParameterBinding(bad.name().to_string()));
        }
        let polys: BTreeMap<Symbol, PolyScalar> =
            bindings.iter().map(|(s, v)| (s.clone(), PolyScalar::constant(v.clone()))).collect();
        Ok(self.substitute_polys(&polys))
    }

    /// Replaces symbols by polynomials. Derivation symbols are left intact,
    /// so callers only substitute parameters (whose derivatives vanish).
    pub fn substitute_polys(&self, bindings: &BTreeMap<Symbol, PolyScalar>) -> PolyScalar {
        let mut out = PolyScalar::zero();
        for (m, c) in &self.terms {
            let mut kept = Monomial::one();
            let mut factor = PolyScalar::constant(c.clone());
            for (g, e) in &m.0 {
                match g.as_symbol().and_then(|s| bindings.get(s)) {
                    Some(value) => {
                        for _ in 0..*e {
                            factor = &factor * value;
                        }
                    }
                    None => kept = kept.mul(&Monomial(vec![(g.clone(), *e)])),
                }
            }
            for (fm, fc) in factor.terms {
                out.add_term(fm.mul(&kept), &fc);
            }
        }
        out
    }

    /// Formal partial derivative with respect to one generator.
    pub fn partial(&self, g: &Generator) -> PolyScalar {
        let mut out = PolyScalar::zero();
        for (m, c) in &self.terms {
            if let Some(idx) = m.0.iter().position(|(h, _)| h == g) {
                let e = m.0[idx].1;
                out.add_term(m.lowered(idx), &(c * &GaussianRational::from_int(e as i64)));
            }
        }
        out
    }

    /// Applies the frame vector `direction` as a derivation: coefficient
    /// functions `f` become `direction(f)`, parameters are constants.
    /// Differentiating an existing derivation symbol is an error.
    pub fn derive(&self, direction: &str) -> Result<PolyScalar, ScalarError> {
        let mut out = PolyScalar::zero();
        for (m, c) in &self.terms {
            for (idx, (g, e)) in m.0.iter().enumerate() {
                let d = match g {
                    Generator::Symbol(s) if s.kind() == SymbolKind::Parameter => continue,
                    Generator::Symbol(s) => DerivationSymbol::new(direction, s.clone())?,
                    Generator::Derivation(d) => {
                        return Err(ScalarError::SecondDerivative(d.to_string()));
                    }
                };
                let coeff = c * &GaussianRational::from_int(*e as i64);
                let m2 = m.lowered(idx).mul(&Monomial::generator(Generator::Derivation(d)));
                out.add_term(m2, &coeff);
            }
        }
        Ok(out)
    }

    /// Conjugates every coefficient. Symbols are treated as real, which is
    /// only meaningful for ground (constant) polynomials.
    pub fn conj_coefficients(&self) -> PolyScalar {
        Self { terms: self.terms.iter().map(|(m, c)| (m.clone(), c.conj())).collect() }
    }
}

impl From<GaussianRational> for PolyScalar {
    fn from(c: GaussianRational) -> Self {
        Self::constant(c)
    }
}

impl From<&Symbol> for PolyScalar {
    fn from(s: &Symbol) -> Self {
        Self::symbol(s)
    }
}

impl Add<&PolyScalar> for &PolyScalar {
    type Output = PolyScalar;
    fn add(self, rhs: &PolyScalar) -> PolyScalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&PolyScalar> for &PolyScalar {
    type Output = PolyScalar;
    fn sub(self, rhs: &PolyScalar) -> PolyScalar {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl AddAssign<&PolyScalar> for PolyScalar {
    fn add_assign(&mut self, rhs: &PolyScalar) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c);
        }
    }
}

impl SubAssign<&PolyScalar> for PolyScalar {
    fn sub_assign(&mut self, rhs: &PolyScalar) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), &-c);
        }
    }
}

impl Mul<&PolyScalar> for &PolyScalar {
    type Output = PolyScalar;
    fn mul(self, rhs: &PolyScalar) -> PolyScalar {
        let mut out = PolyScalar::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), &(c1 * c2));
            }
        }
        out
    }
}

impl Neg for &PolyScalar {
    type Output = PolyScalar;
    fn neg(self) -> PolyScalar {
        PolyScalar { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Neg for PolyScalar {
    type Output = PolyScalar;
    fn neg(self) -> PolyScalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<PolyScalar> for PolyScalar {
            type Output = PolyScalar;
            fn $m(self, rhs: PolyScalar) -> PolyScalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&PolyScalar> for PolyScalar {
            type Output = PolyScalar;
            fn $m(self, rhs: &PolyScalar) -> PolyScalar {
                (&self).$m(rhs)
            }
        }
        impl $tr<PolyScalar> for &PolyScalar {
            type Output = PolyScalar;
            fn $m(self, rhs: PolyScalar) -> PolyScalar {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<PolyScalar> for PolyScalar {
    fn add_assign(&mut self, rhs: PolyScalar) {
        *self += &rhs;
    }
}

impl SubAssign<PolyScalar> for PolyScalar {
    fn sub_assign(&mut self, rhs: PolyScalar) {
        *self -= &rhs;
    }
}

impl std::iter::Sum for PolyScalar {
    fn sum<I: Iterator<Item = PolyScalar>>(iter: I) -> Self {
        let mut acc = PolyScalar::zero();
        for p in iter {
            acc += &p;
        }
        acc
    }
}

impl PolyScalar {
    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// True if the rendering is a single term with a single-part coefficient,
    /// i.e. it can be juxtaposed without parentheses.
    pub fn is_atomic(&self) -> bool {
        self.terms.len() <= 1 && self.terms.values().all(GaussianRational::is_single_part)
    }
}

/// Terms in ascending monomial order, e.g. `1/2*i*t12 - u1*alpha4`.
impl fmt::Display for PolyScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative_single();
            let mag = if negative { -c } else { c.clone() };
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            let coeff = if mag.is_single_part() { mag.to_string() } else { format!("({mag})") };
            if m.is_one() {
                write!(f, "{coeff}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{coeff}*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &Symbol) -> PolyScalar {
        PolyScalar::symbol(s)
    }

    #[test]
    fn additive_inverse_of_imaginary_term() {
        let t12 = Symbol::parameter("t12");
        let half_i = GaussianRational::from_parts(0, 1, 1, 2);
        let a = p(&t12).scale(&half_i);
        let b = p(&t12).scale(&-half_i);
        assert!((a + b).is_zero());
    }

    #[test]
    fn difference_of_squares() {
        let t11 = Symbol::parameter("t11");
        let u1 = Symbol::function("u1");
        let lhs = (p(&t11) + p(&u1)) * (p(&t11) - p(&u1));
        let rhs = p(&t11) * p(&t11) - p(&u1) * p(&u1);
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.to_string(), "t11^2 - u1^2");
    }

    #[test]
    fn substitution_specializes_parameters() {
        let t14 = Symbol::parameter("t14");
        let t32 = Symbol::parameter("t32");
        let x = Symbol::function("x");
        let e = p(&t14) * p(&x) + p(&t32);
        let b = BTreeMap::from([(t14.clone(), GaussianRational::zero())]);
        assert_eq!(e.substitute(&b).unwrap(), p(&t32));

        let t3 = Symbol::parameter("t3");
        let e = p(&t3).scale(&GaussianRational::i());
        let b = BTreeMap::from([(t3, GaussianRational::from_int(2))]);
        assert_eq!(e.substitute(&b).unwrap(), PolyScalar::constant(GaussianRational::from_parts(0, 1, 2, 1)));
    }

    #[test]
    fn substitution_rejects_functions() {
        let u1 = Symbol::function("u1");
        let b = BTreeMap::from([(u1.clone(), GaussianRational::one())]);
        assert!(matches!(p(&u1).substitute(&b), Err(ScalarError::NonParameterBinding(_))));
    }

    #[test]
    fn derivation_is_leibniz_and_first_order() {
        let a = Symbol::function("alpha1");
        let b = Symbol::function("beta3");
        let t = Symbol::parameter("t11");
        let e = p(&t) * p(&a) * p(&b);
        let d = e.derive("Tbar").unwrap();
        assert_eq!(d.to_string(), "alpha1*Tbar(beta3)*t11 + Tbar(alpha1)*beta3*t11");
        assert!(matches!(d.derive("T"), Err(ScalarError::SecondDerivative(_))));
        assert!(p(&t).derive("T").unwrap().is_zero());
    }

    #[test]
    fn rendering_of_mixed_coefficients() {
        let t = Symbol::parameter("t");
        let e = p(&t).scale(&GaussianRational::from_parts(1, 1, -1, 2)) - PolyScalar::from_int(3);
        assert_eq!(e.to_string(), "-3 + (1 - 1/2*i)*t");
    }
}
