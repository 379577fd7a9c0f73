use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use super::ScalarError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SymbolKind {
    /// A constant deformation parameter such as `t11`.
    Parameter,
    /// A smooth function on the manifold, e.g. a section coefficient `u1`.
    CoefficientFunction,
}

/// A named indeterminate. Two symbols are equal only if both name and kind
/// agree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Symbol {
    name: Arc<str>,
    kind: SymbolKind,
}

impl Symbol {
    pub fn new(name: &str, kind: SymbolKind) -> Self {
        Self { name: Arc::from(name), kind }
    }

    pub fn parameter(name: &str) -> Self {
        Self::new(name, SymbolKind::Parameter)
    }

    pub fn function(name: &str) -> Self {
        Self::new(name, SymbolKind::CoefficientFunction)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> SymbolKind {
        self.kind
    }

    pub fn is_parameter(&self) -> bool {
        self.kind == SymbolKind::Parameter
    }
}

impl Ord for Symbol {
    fn cmp(&self, other: &Self) -> Ordering {
        self.name.cmp(&other.name).then(self.kind.cmp(&other.kind))
    }
}

impl PartialOrd for Symbol {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// The first derivative `D(f)` of a coefficient function along a frame
/// vector `D`. The operand is a plain [`Symbol`], so derivatives of
/// derivatives cannot be built.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DerivationSymbol {
    direction: Arc<str>,
    operand: Symbol,
}

impl DerivationSymbol {
    pub fn new(direction: &str, operand: Symbol) -> Result<Self, ScalarError> {
        if operand.kind != SymbolKind::CoefficientFunction {
            return Err(ScalarError::DerivativeOfParameter(operand.name().to_string()));
        }
        Ok(Self { direction: Arc::from(direction), operand })
    }

    pub fn direction(&self) -> &str {
        &self.direction
    }

    pub fn operand(&self) -> &Symbol {
        &self.operand
    }
}

impl fmt::Display for DerivationSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.direction, self.operand)
    }
}

/// A commuting generator of the polynomial ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    Symbol(Symbol),
    Derivation(DerivationSymbol),
}

impl Generator {
    fn sort_key(&self) -> (&str, Option<&str>, SymbolKind) {
        match self {
            Generator::Symbol(s) => (s.name(), None, s.kind()),
            Generator::Derivation(d) => (d.operand.name(), Some(d.direction()), d.operand.kind()),
        }
    }

    pub fn as_symbol(&self) -> Option<&Symbol> {
        match self {
            Generator::Symbol(s) => Some(s),
            Generator::Derivation(_) => None,
        }
    }

    pub fn is_derivation(&self) -> bool {
        matches!(self, Generator::Derivation(_))
    }
}

// Lexicographic on (symbol name, derivation direction); a bare symbol sorts
// before its derivatives.
impl Ord for Generator {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for Generator {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Symbol(s) => s.fmt(f),
            Generator::Derivation(d) => d.fmt(f),
        }
    }
}

impl From<Symbol> for Generator {
    fn from(s: Symbol) -> Self {
        Generator::Symbol(s)
    }
}

impl From<DerivationSymbol> for Generator {
    fn from(d: DerivationSymbol) -> Self {
        Generator::Derivation(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivative_of_parameter_is_rejected() {
        assert!(DerivationSymbol::new("Tbar", Symbol::parameter("t11")).is_err());
        let d = DerivationSymbol::new("Tbar", Symbol::function("alpha1")).unwrap();
        assert_eq!(d.to_string(), "Tbar(alpha1)");
    }

    #[test]
    fn ordering_groups_derivatives_after_their_operand() {
        let a = Generator::from(Symbol::function("alpha1"));
        let da = Generator::from(DerivationSymbol::new("T", Symbol::function("alpha1")).unwrap());
        let b = Generator::from(Symbol::function("beta1"));
        assert!(a < da && da < b);
    }
}
