//! Line-oriented workspace description.
//!
//! ```text
//! basis X Y U V
//! bracket X Y = U
//! J X = Y
//! names T W
//! conames omega rho
//! symplectic X Y = 1
//! generator X + i*dY
//! params t
//! ```
//!
//! One of the `J`, `symplectic` and `generator` families may be used. `#`
//! starts a comment. Real dual 1-forms are named `d<vector>`.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::scalar::{parse_constant, parse_linear, GaussianRational, LinearCombination};

/// The preset for the Kodaira surface frame.
pub const KODAIRA_PRESET: &str = include_str!("../presets/kodaira.gcw");

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Structure {
    None,
    Complex {
        /// `J v = image` per basis vector, in input order.
        images: Vec<(String, LinearCombination)>,
        names: Option<Vec<String>>,
        conames: Option<Vec<String>>,
    },
    Symplectic {
        /// `w += c · dA ∧ dB`.
        entries: Vec<(String, String, GaussianRational)>,
    },
    Subbundle {
        generators: Vec<LinearCombination>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WorkspaceSpec {
    pub basis: Vec<String>,
    /// `[a, b] = rhs`, deduplicated, in input order.
    pub brackets: Vec<(String, String, LinearCombination)>,
    pub structure: Structure,
    /// Prefix for deformation parameters.
    pub param_prefix: String,
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && s != "i"
}

struct Line<'a> {
    number: usize,
    text: &'a str,
}

impl Line<'_> {
    fn error(&self, column: usize, message: impl Into<String>) -> Error {
        Error::Parse { line: self.number, column, message: message.into() }
    }

    /// 1-based column of `needle` within the line, searching from byte `from`.
    fn column_of(&self, needle: &str, from: usize) -> usize {
        self.text[from..].find(needle).map_or(1, |p| from + p + 1)
    }
}

fn linear(line: &Line, text: &str, offset: usize) -> Result<LinearCombination> {
    parse_linear(text).map_err(|e| line.error(offset + e.column, e.message))
}

fn check_names(line: &Line, lc: &LinearCombination, known: &[String], offset: usize) -> Result<()> {
    if !lc.constant.is_zero() {
        return Err(line.error(offset + 1, "constant term not allowed here"));
    }
    for (n, _) in &lc.terms {
        if !known.contains(n) {
            return Err(line.error(line.column_of(n, offset), format!("unknown name '{n}'")));
        }
    }
    Ok(())
}

impl WorkspaceSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let mut basis: Option<Vec<String>> = None;
        let mut brackets: Vec<(String, String, LinearCombination)> = Vec::new();
        let mut images: Vec<(String, LinearCombination)> = Vec::new();
        let mut names: Option<Vec<String>> = None;
        let mut conames: Option<Vec<String>> = None;
        let mut symplectic: Vec<(String, String, GaussianRational)> = Vec::new();
        let mut generators: Vec<LinearCombination> = Vec::new();
        let mut param_prefix: Option<String> = None;
        let mut kind: Option<(&'static str, usize)> = None;

        for (idx, raw) in text.lines().enumerate() {
            let content = raw.split('#').next().unwrap_or("");
            let line = Line { number: idx + 1, text: content };
            let trimmed = content.trim_start();
            if trimmed.trim().is_empty() {
                continue;
            }
            let lead = content.len() - trimmed.len();
            let keyword = trimmed.split_whitespace().next().unwrap();
            let rest_offset = lead + keyword.len();
            let rest = &content[rest_offset..];

            let mut set_kind = |k: &'static str| -> Result<()> {
                match kind {
                    Some((existing, at)) if existing != k => {
                        Err(line.error(lead + 1, format!("'{k}' conflicts with '{existing}' on line {at}")))
                    }
                    _ => {
                        kind = Some((k, line.number));
                        Ok(())
                    }
                }
            };

            if keyword != "basis" && keyword != "params" && basis.is_none() {
                return Err(line.error(lead + 1, "'basis' must come first"));
            }
            match keyword {
                "basis" => {
                    if basis.is_some() {
                        return Err(line.error(lead + 1, "duplicate 'basis' line"));
                    }
                    let list: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
                    if list.is_empty() {
                        return Err(line.error(rest_offset + 1, "empty basis"));
                    }
                    let mut seen = BTreeSet::new();
                    for n in &list {
                        if !is_identifier(n) {
                            return Err(line.error(line.column_of(n, rest_offset), format!("invalid name '{n}'")));
                        }
                        if !seen.insert(n.clone()) {
                            return Err(line.error(line.column_of(n, rest_offset), format!("duplicate name '{n}'")));
                        }
                    }
                    basis = Some(list);
                }
                "bracket" => {
                    let basis = basis.as_ref().unwrap();
                    let Some(eq) = rest.find('=') else {
                        return Err(line.error(content.len() + 1, "expected '='"));
                    };
                    let lhs: Vec<&str> = rest[..eq].split_whitespace().collect();
                    let [a, b] = lhs.as_slice() else {
                        return Err(line.error(rest_offset + 1, "expected two basis names before '='"));
                    };
                    for n in [a, b] {
                        if !basis.iter().any(|x| x == n) {
                            return Err(line.error(line.column_of(n, rest_offset), format!("unknown basis name '{n}'")));
                        }
                    }
                    if a == b {
                        return Err(line.error(line.column_of(a, rest_offset), "bracket of a vector with itself"));
                    }
                    let rhs_offset = rest_offset + eq + 1;
                    let rhs = linear(&line, &content[rhs_offset..], rhs_offset)?;
                    check_names(&line, &rhs, basis, rhs_offset)?;
                    let existing = brackets.iter().find_map(|(x, y, v)| {
                        if x == a && y == b {
                            Some((v.clone(), false))
                        } else if x == b && y == a {
                            Some((negate(v), true))
                        } else {
                            None
                        }
                    });
                    match existing {
                        Some((v, _)) if same_terms(&v, &rhs) => {}
                        Some((_, true)) => {
                            return Err(line.error(
                                lead + 1,
                                format!("bracket [{a}, {b}] is not skew-symmetric: conflicts with [{b}, {a}]"),
                            ));
                        }
                        Some((_, false)) => {
                            return Err(
                                line.error(lead + 1, format!("bracket [{a}, {b}] redefined with a conflicting value"))
                            );
                        }
                        None => brackets.push((a.to_string(), b.to_string(), rhs)),
                    }
                }
                "J" => {
                    set_kind("J")?;
                    let basis = basis.as_ref().unwrap();
                    let Some(eq) = rest.find('=') else {
                        return Err(line.error(content.len() + 1, "expected '='"));
                    };
                    let lhs: Vec<&str> = rest[..eq].split_whitespace().collect();
                    let [a] = lhs.as_slice() else {
                        return Err(line.error(rest_offset + 1, "expected one basis name before '='"));
                    };
                    if !basis.iter().any(|x| x == a) {
                        return Err(line.error(line.column_of(a, rest_offset), format!("unknown basis name '{a}'")));
                    }
                    if images.iter().any(|(x, _)| x == a) {
                        return Err(line.error(lead + 1, format!("J {a} given twice")));
                    }
                    let rhs_offset = rest_offset + eq + 1;
                    let rhs = linear(&line, &content[rhs_offset..], rhs_offset)?;
                    check_names(&line, &rhs, basis, rhs_offset)?;
                    images.push((a.to_string(), rhs));
                }
                "names" | "conames" => {
                    set_kind("J")?;
                    let list: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
                    for n in &list {
                        if !is_identifier(n) {
                            return Err(line.error(line.column_of(n, rest_offset), format!("invalid name '{n}'")));
                        }
                    }
                    let slot = if keyword == "names" { &mut names } else { &mut conames };
                    if slot.is_some() {
                        return Err(line.error(lead + 1, format!("duplicate '{keyword}' line")));
                    }
                    *slot = Some(list);
                }
                "symplectic" => {
                    set_kind("symplectic")?;
                    let basis = basis.as_ref().unwrap();
                    let Some(eq) = rest.find('=') else {
                        return Err(line.error(content.len() + 1, "expected '='"));
                    };
                    let lhs: Vec<&str> = rest[..eq].split_whitespace().collect();
                    let [a, b] = lhs.as_slice() else {
                        return Err(line.error(rest_offset + 1, "expected two basis names before '='"));
                    };
                    for n in [a, b] {
                        if !basis.iter().any(|x| x == n) {
                            return Err(line.error(line.column_of(n, rest_offset), format!("unknown basis name '{n}'")));
                        }
                    }
                    let rhs_offset = rest_offset + eq + 1;
                    let c = parse_constant(&content[rhs_offset..])
                        .map_err(|e| line.error(rhs_offset + e.column, e.message))?;
                    symplectic.push((a.to_string(), b.to_string(), c));
                }
                "generator" => {
                    set_kind("generator")?;
                    let basis = basis.as_ref().unwrap();
                    let known: Vec<String> =
                        basis.iter().cloned().chain(basis.iter().map(|n| format!("d{n}"))).collect();
                    let lc = linear(&line, rest, rest_offset)?;
                    check_names(&line, &lc, &known, rest_offset)?;
                    generators.push(lc);
                }
                "params" => {
                    let list: Vec<&str> = rest.split_whitespace().collect();
                    let [p] = list.as_slice() else {
                        return Err(line.error(rest_offset + 1, "expected one parameter prefix"));
                    };
                    if !is_identifier(p) {
                        return Err(line.error(line.column_of(p, rest_offset), format!("invalid prefix '{p}'")));
                    }
                    param_prefix = Some(p.to_string());
                }
                other => return Err(line.error(lead + 1, format!("unknown keyword '{other}'"))),
            }
        }

        let Some(basis) = basis else {
            return Err(Error::Parse { line: 1, column: 1, message: "missing 'basis' line".into() });
        };
        let structure = match kind {
            None => Structure::None,
            Some(("J", at)) => {
                if images.len() != basis.len() {
                    let missing: Vec<&str> =
                        basis.iter().filter(|b| !images.iter().any(|(x, _)| x == *b)).map(String::as_str).collect();
                    return Err(Error::Parse {
                        line: at,
                        column: 1,
                        message: format!("J is missing images for: {}", missing.join(" ")),
                    });
                }
                Structure::Complex { images, names, conames }
            }
            Some(("symplectic", _)) => Structure::Symplectic { entries: symplectic },
            Some(_) => Structure::Subbundle { generators },
        };
        Ok(Self { basis, brackets, structure, param_prefix: param_prefix.unwrap_or_else(|| "t".into()) })
    }

    /// Canonical text; `parse(render(s)) == s`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        writeln!(out, "basis {}", self.basis.join(" ")).unwrap();
        for (a, b, v) in &self.brackets {
            writeln!(out, "bracket {a} {b} = {}", render_linear(v)).unwrap();
        }
        match &self.structure {
            Structure::None => {}
            Structure::Complex { images, names, conames } => {
                for (a, v) in images {
                    writeln!(out, "J {a} = {}", render_linear(v)).unwrap();
                }
                if let Some(n) = names {
                    writeln!(out, "names {}", n.join(" ")).unwrap();
                }
                if let Some(n) = conames {
                    writeln!(out, "conames {}", n.join(" ")).unwrap();
                }
            }
            Structure::Symplectic { entries } => {
                for (a, b, c) in entries {
                    writeln!(out, "symplectic {a} {b} = {c}").unwrap();
                }
            }
            Structure::Subbundle { generators } => {
                for g in generators {
                    writeln!(out, "generator {}", render_linear(g)).unwrap();
                }
            }
        }
        if self.param_prefix != "t" {
            writeln!(out, "params {}", self.param_prefix).unwrap();
        }
        out
    }
}

fn negate(lc: &LinearCombination) -> LinearCombination {
    LinearCombination { constant: -&lc.constant, terms: lc.terms.iter().map(|(n, c)| (n.clone(), -c)).collect() }
}

/// Equality up to term order.
fn same_terms(a: &LinearCombination, b: &LinearCombination) -> bool {
    a.constant == b.constant && a.terms.len() == b.terms.len() && a.terms.iter().all(|t| b.terms.contains(t))
}

/// Renders `Σ c·name` so that it parses back to the same term list.
pub fn render_linear(lc: &LinearCombination) -> String {
    let mut parts: Vec<String> = Vec::new();
    if !lc.constant.is_zero() || lc.terms.is_empty() {
        parts.push(format!("({})", lc.constant));
    }
    for (n, c) in &lc.terms {
        parts.push(if c.is_one() {
            n.clone()
        } else if (-c).is_one() {
            format!("-{n}")
        } else {
            format!("({c})*{n}")
        });
    }
    let mut s = parts[0].clone();
    for p in &parts[1..] {
        match p.strip_prefix('-') {
            Some(r) => write!(s, " - {r}").unwrap(),
            None => write!(s, " + {p}").unwrap(),
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preset_parses() {
        let s = WorkspaceSpec::parse(KODAIRA_PRESET).unwrap();
        assert_eq!(s.basis, ["X", "Y", "U", "V"]);
        assert_eq!(s.brackets.len(), 1);
        assert!(matches!(s.structure, Structure::Complex { .. }));
    }

    #[test]
    fn round_trip() {
        let text = "basis A B C\nbracket A B = 1/2*C - i*A\nsymplectic A B = 2 + i\nparams s\n";
        let s = WorkspaceSpec::parse(text).unwrap();
        assert_eq!(WorkspaceSpec::parse(&s.render()).unwrap(), s);
    }

    #[test]
    fn empty_bracket_list_is_abelian() {
        let s = WorkspaceSpec::parse("basis X Y\nJ X = Y\nJ Y = -X\n").unwrap();
        assert!(s.brackets.is_empty());
    }

    #[test]
    fn conflicting_duplicate_names_line() {
        let err = WorkspaceSpec::parse("basis X Y U\nbracket X Y = U\nbracket X Y = 2*U\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        let err = WorkspaceSpec::parse("basis X Y U\nbracket X Y = U\nbracket Y X = U\n").unwrap_err();
        assert!(err.to_string().contains("not skew-symmetric"), "{err}");
        // consistent restatements are accepted
        assert!(WorkspaceSpec::parse("basis X Y U\nbracket X Y = U\nbracket Y X = -U\n").is_ok());
    }

    #[test]
    fn positioned_errors() {
        let err = WorkspaceSpec::parse("basis X Y\nbracket X Z = Y\n").unwrap_err();
        assert_eq!(err, Error::Parse { line: 2, column: 11, message: "unknown basis name 'Z'".into() });
        let err = WorkspaceSpec::parse("basis X Y\nsymplectic X Y = 1/\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = WorkspaceSpec::parse("basis X Y\nJ X = Y\n").unwrap_err();
        assert!(err.to_string().contains("missing images for: Y"));
    }
}
