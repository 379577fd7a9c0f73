//! End-to-end runs over a parsed workspace, producing ordered report
//! sections.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::algebroid::{
    build_complex_eigenbundle, build_symplectic_eigenbundle, IsotropicSubbundle, SymplecticEigenbundle,
};
use crate::courant::{bracket_table, GenSection};
use crate::deformation::{
    constrain_map, mc_residual, reduce_family, stratify_type, type_class, type_of, ConstrainedMap, DeformationFamily,
    DeformationMap, MCSystem,
};
use crate::error::{Error, Result};
use crate::exterior::Form;
use crate::frame::{ComplexOp, EigenNames, Eigenframe, FrameAlgebra};
use crate::linalg;
use crate::scalar::{parse_constant, GaussianRational, LinearCombination, PolyScalar, Symbol};
use crate::workspace::{Structure, WorkspaceSpec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Validate,
    Brackets,
    Mc,
    Gauge,
    Family,
    /// Type at a point, e.g. `t14=0,t32=1`.
    Type(String),
    Strata,
    Report,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub key: Option<String>,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Section {
    pub name: String,
    pub entries: Vec<Entry>,
}

impl Section {
    fn new(name: &str) -> Self {
        Self { name: name.to_string(), entries: Vec::new() }
    }

    fn put(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.entries.push(Entry { key: Some(key.into()), value: value.into() });
    }

    fn line(&mut self, value: impl Into<String>) {
        self.entries.push(Entry { key: None, value: value.into() });
    }

    /// Value of the first entry with this key.
    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|e| e.key.as_deref() == Some(key)).map(|e| e.value.as_str())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub sections: Vec<Section>,
}

impl Report {
    pub fn section(&self, name: &str) -> Option<&Section> {
        self.sections.iter().find(|s| s.name == name)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for (k, s) in self.sections.iter().enumerate() {
            if k > 0 {
                out.push('\n');
            }
            writeln!(out, "== {} ==", s.name).unwrap();
            for e in &s.entries {
                match &e.key {
                    Some(key) => writeln!(out, "{key}: {}", e.value).unwrap(),
                    None => writeln!(out, "{}", e.value).unwrap(),
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let sections: Vec<Value> = self
            .sections
            .iter()
            .map(|s| {
                let entries: Vec<Value> = s
                    .entries
                    .iter()
                    .map(|e| match &e.key {
                        Some(k) => json!({ "key": k, "value": e.value }),
                        None => json!({ "value": e.value }),
                    })
                    .collect();
                json!({ "name": s.name, "entries": entries })
            })
            .collect();
        json!({ "sections": sections })
    }

    pub fn render_machine(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("report serializes");
        s.push('\n');
        s
    }
}

/// The structure lowered onto a frame.
#[derive(Clone, Debug)]
pub enum Lowered {
    None,
    Complex { eigenframe: Eigenframe, bundle: IsotropicSubbundle },
    Symplectic { form: Form, eigenbundle: SymplecticEigenbundle },
    Subbundle { bundle: IsotropicSubbundle },
}

/// A validated workspace with its subbundle built.
#[derive(Clone, Debug)]
pub struct Workspace {
    pub spec: WorkspaceSpec,
    pub algebra: FrameAlgebra,
    pub lowered: Lowered,
}

fn vector_of(lc: &LinearCombination, names: &[String]) -> Vec<GaussianRational> {
    let mut v = vec![GaussianRational::zero(); names.len()];
    for (n, c) in &lc.terms {
        let i = names.iter().position(|x| x == n).expect("names checked by the parser");
        v[i] += c;
    }
    v
}

impl Workspace {
    /// Builds the frame and subbundle. Fails with a math error when Jacobi,
    /// `J² = −1` or the subbundle conditions do not hold.
    pub fn build(spec: WorkspaceSpec) -> Result<Self> {
        let m = spec.basis.len();
        let brackets: Vec<(usize, usize, Vec<GaussianRational>)> = spec
            .brackets
            .iter()
            .map(|(a, b, v)| {
                let i = spec.basis.iter().position(|x| x == a).unwrap();
                let j = spec.basis.iter().position(|x| x == b).unwrap();
                (i, j, vector_of(v, &spec.basis))
            })
            .collect();
        let structure = FrameAlgebra::structure_from_brackets(m, &brackets);
        let algebra = FrameAlgebra::real(spec.basis.clone(), structure)?;
        algebra.ensure_jacobi()?;

        let lowered = match &spec.structure {
            Structure::None => Lowered::None,
            Structure::Complex { images, names, conames } => {
                let mut j = linalg::zeros(m, m);
                for (a, img) in images {
                    let col = spec.basis.iter().position(|x| x == a).unwrap();
                    for (row, c) in vector_of(img, &spec.basis).into_iter().enumerate() {
                        j[row][col] = c;
                    }
                }
                let j = ComplexOp::new(j)?;
                let names = EigenNames { vectors: names.clone(), coforms: conames.clone() };
                let (eigenframe, bundle) = build_complex_eigenbundle(&algebra, &j, &names)?;
                Lowered::Complex { eigenframe, bundle }
            }
            Structure::Symplectic { entries } => {
                let mut form = Form::zero(m);
                for (a, b, c) in entries {
                    let i = spec.basis.iter().position(|x| x == a).unwrap();
                    let j = spec.basis.iter().position(|x| x == b).unwrap();
                    form.add_term(&[i, j], PolyScalar::constant(c.clone()));
                }
                let eigenbundle = build_symplectic_eigenbundle(&algebra, &form)?;
                if eigenbundle.bundle.is_none() {
                    let dw = eigenbundle.dw.render(algebra.coform_names());
                    return Err(Error::NotInvolutive(format!("the 2-form is not closed: dw = {dw}")));
                }
                Lowered::Symplectic { form, eigenbundle }
            }
            Structure::Subbundle { generators } => {
                let known: Vec<String> =
                    spec.basis.iter().cloned().chain(spec.basis.iter().map(|n| format!("d{n}"))).collect();
                let gens: Vec<GenSection> =
                    generators.iter().map(|g| GenSection::from_constants(&vector_of(g, &known))).collect();
                let names = (1..=gens.len()).map(|k| format!("g{k}")).collect();
                let bundle = IsotropicSubbundle::new(&algebra, gens, names)?;
                Lowered::Subbundle { bundle }
            }
        };
        Ok(Self { spec, algebra, lowered })
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::build(WorkspaceSpec::parse(text)?)
    }

    /// The frame carrying the subbundle: the eigenframe for a complex
    /// structure, the real frame otherwise.
    pub fn frame(&self) -> &FrameAlgebra {
        match &self.lowered {
            Lowered::Complex { eigenframe, .. } => &eigenframe.algebra,
            _ => &self.algebra,
        }
    }

    pub fn bundle(&self) -> Result<&IsotropicSubbundle> {
        match &self.lowered {
            Lowered::None => Err(Error::Input("no structure given: add J, symplectic or generator lines".into())),
            Lowered::Complex { bundle, .. } | Lowered::Subbundle { bundle } => Ok(bundle),
            Lowered::Symplectic { eigenbundle, .. } => Ok(eigenbundle.bundle.as_ref().expect("checked in build")),
        }
    }

    pub fn constrained(&self) -> Result<ConstrainedMap> {
        let l = self.bundle()?;
        let (raw, params) = DeformationMap::raw(&self.spec.param_prefix, l.rank());
        constrain_map(l, &raw, &params)
    }

    pub fn mc_system(&self, c: &ConstrainedMap) -> Result<MCSystem> {
        mc_residual(self.bundle()?, &c.map, &c.free)
    }

    pub fn family(&self) -> Result<DeformationFamily> {
        let c = self.constrained()?;
        let mc = self.mc_system(&c)?;
        reduce_family(self.bundle()?, &c, &mc)
    }
}

/// Parses `name=value,...` against the free parameters of `family`.
pub fn parse_bindings(text: &str, family: &DeformationFamily) -> Result<BTreeMap<Symbol, GaussianRational>> {
    let mut out = BTreeMap::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let Some((name, value)) = part.split_once('=') else {
            return Err(Error::Input(format!("binding '{part}' is not of the form name=value")));
        };
        let name = name.trim();
        let Some(sym) = family.free.iter().find(|s| s.name() == name) else {
            let free: Vec<String> = family.free.iter().map(|s| s.to_string()).collect();
            return Err(Error::Input(format!(
                "'{name}' is not a free parameter of the reduced family (free: {})",
                free.join(", ")
            )));
        };
        let v = parse_constant(value).map_err(|e| Error::Input(format!("value for '{name}': {}", e.message)))?;
        if out.insert(sym.clone(), v).is_some() {
            return Err(Error::Input(format!("'{name}' bound twice")));
        }
    }
    for s in &family.free {
        if !out.contains_key(s) {
            return Err(Error::UnboundParameter(s.to_string()));
        }
    }
    Ok(out)
}

fn symbols(list: &[Symbol]) -> String {
    if list.is_empty() {
        "none".to_string()
    } else {
        list.iter().map(Symbol::to_string).collect::<Vec<_>>().join(", ")
    }
}

fn wedge_name(idx: &[usize], names: &[String]) -> String {
    idx.iter().map(|&i| names[i].as_str()).collect::<Vec<_>>().join("^")
}

fn validation(ws: &Workspace) -> Result<Section> {
    let mut s = Section::new("validation");
    s.put("basis", ws.algebra.names().join(" "));
    let nz = ws.algebra.nonzero_brackets();
    if nz.is_empty() {
        s.put("brackets", "none (abelian)");
    }
    for (i, j, v) in nz {
        s.put(format!("[{}, {}]", ws.algebra.names()[i], ws.algebra.names()[j]), ws.algebra.render_vector(&v));
    }
    s.put("Jacobi identity", "holds");
    match &ws.lowered {
        Lowered::None => s.put("structure", "none"),
        Lowered::Complex { .. } => {
            s.put("structure", "complex");
            s.put("J^2 = -1", "holds");
        }
        Lowered::Symplectic { eigenbundle, .. } => {
            s.put("structure", "symplectic");
            s.put("dw", eigenbundle.dw.render(ws.algebra.coform_names()));
        }
        Lowered::Subbundle { .. } => s.put("structure", "explicit subbundle"),
    }
    if let Ok(l) = ws.bundle() {
        s.put("subbundle", "isotropic, involutive, L meets its conjugate only in 0");
        let k = l.type_k();
        s.put("type", format!("k = {k} ({})", type_class(k, l.frame().dim())));
    }
    Ok(s)
}

fn eigenframe_section(ws: &Workspace) -> Option<Section> {
    let Lowered::Complex { eigenframe, .. } = &ws.lowered else {
        return None;
    };
    let mut s = Section::new("eigenframe");
    let f = &eigenframe.algebra;
    for (a, name) in f.names().iter().enumerate() {
        let col: Vec<GaussianRational> = eigenframe.change.iter().map(|row| row[a].clone()).collect();
        s.put(name.clone(), ws.algebra.render_vector(&col));
    }
    for (i, j, v) in f.nonzero_brackets() {
        s.put(format!("[{}, {}]", f.names()[i], f.names()[j]), f.render_vector(&v));
    }
    for (k, name) in f.coform_names().iter().enumerate() {
        let d = f.ce_differential(&Form::basis(f.dim(), &[k])).expect("constant form");
        s.put(format!("d{name}"), d.render(f.coform_names()));
    }
    Some(s)
}

fn subbundle_section(ws: &Workspace) -> Result<Section> {
    let l = ws.bundle()?;
    let f = l.frame();
    let mut s = Section::new("subbundle");
    for (name, g) in l.names().iter().zip(l.generators()) {
        s.put(name.clone(), g.render(f));
    }
    let r = l.rank();
    let names = l.names();
    for a in 0..r {
        for b in a + 1..r {
            let v = &l.structure()[a][b];
            if v.iter().any(|c| !c.is_zero()) {
                let form = Form::one_form(&v.iter().cloned().map(PolyScalar::constant).collect::<Vec<_>>());
                s.put(format!("[{}, {}]", names[a], names[b]), form.render(names));
            }
        }
    }
    let duals = l.dual_names();
    for (b, name) in duals.iter().enumerate() {
        let d = l.d_l_invariant(&Form::basis(r, &[b]))?;
        s.put(format!("d_L {name}"), l.render_form(&d));
    }
    Ok(s)
}

fn bracket_section(ws: &Workspace) -> Result<Section> {
    let f = ws.frame();
    let m = f.dim();
    let gens: Vec<GenSection> = (0..2 * m).map(|k| GenSection::basis(m, k)).collect();
    let names: Vec<String> = f.names().iter().chain(f.coform_names()).cloned().collect();
    let table = bracket_table(f, &gens)?;
    let mut s = Section::new("bracket table");
    let mut any = false;
    for a in 0..2 * m {
        for b in a + 1..2 * m {
            if !table[a][b].is_zero() {
                any = true;
                s.put(format!("[{}, {}]", names[a], names[b]), table[a][b].render(f));
            }
        }
    }
    if !any {
        s.line("all brackets vanish");
    }
    Ok(s)
}

fn map_section(ws: &Workspace, c: &ConstrainedMap) -> Result<Section> {
    let l = ws.bundle()?;
    let mut s = Section::new("deformation map");
    s.put("raw parameters", c.parameters.len().to_string());
    s.put("free after isotropy", format!("{} ({})", c.free.len(), symbols(&c.free)));
    for (sym, v) in &c.eliminated {
        s.put(sym.to_string(), v.to_string());
    }
    for (a, name) in l.names().iter().enumerate() {
        s.put(format!("eps({name})"), c.map.image(l, a).render(l.frame()));
    }
    s.put("eps~", l.render_form(&c.map.two_form(l)));
    Ok(s)
}

fn mc_section(ws: &Workspace, mc: &MCSystem) -> Result<Section> {
    let l = ws.bundle()?;
    let mut s = Section::new("MC system");
    if mc.is_empty() && mc.differential.is_zero() && mc.schouten.is_zero() {
        s.line("MC system: empty (all deformations unobstructed at this level)");
        return Ok(s);
    }
    s.put("d_L eps~", l.render_form(&mc.differential));
    s.put("1/2[eps~, eps~]", l.render_form(&mc.schouten));
    let duals = l.dual_names();
    for (idx, p) in mc.constraints() {
        s.put(format!("coefficient of {}", wedge_name(&idx, &duals)), format!("{p} = 0"));
    }
    let sol = mc.solve()?;
    let solved: Vec<String> = sol.bindings.iter().map(|(k, v)| format!("{k} = {v}")).collect();
    s.put("solution", if solved.is_empty() { "no constraints".to_string() } else { solved.join(", ") });
    s.put("free", symbols(&sol.free));
    if !sol.residual.is_empty() {
        let r: Vec<String> = sol.residual.iter().map(|p| format!("{p} = 0")).collect();
        s.put("nonlinear residual", r.join("; "));
    }
    Ok(s)
}

fn gauge_section(ws: &Workspace, family: Option<&DeformationFamily>) -> Result<Section> {
    let l = ws.bundle()?;
    let basis = crate::deformation::gauge_image(l)?;
    let mut s = Section::new("gauge basis");
    s.put("dimension", basis.len().to_string());
    for (k, g) in basis.iter().enumerate() {
        s.put(format!("d_L direction {}", k + 1), l.render_form(g));
    }
    if let Some(fam) = family {
        if !fam.gauge_dropped.is_empty() {
            s.put(
                "complement",
                format!(
                    "drop {} (alphabetically first solution coordinate along each gauge direction)",
                    symbols(&fam.gauge_dropped)
                ),
            );
        }
    }
    Ok(s)
}

fn family_section(ws: &Workspace, fam: &DeformationFamily) -> Result<Section> {
    let l = ws.bundle()?;
    let mut s = Section::new("reduced family");
    s.put("free parameters", format!("{} ({})", fam.free.len(), symbols(&fam.free)));
    let solved: Vec<String> = fam
        .mc_solved
        .iter()
        .map(|k| format!("{k} = {}", fam.bindings.get(k).map_or("0".into(), |v| v.to_string())))
        .collect();
    s.put("MC solved", if solved.is_empty() { "none".into() } else { solved.join(", ") });
    s.put("gauge dropped", symbols(&fam.gauge_dropped));
    for (sym, form) in &fam.reduced_basis {
        s.put(format!("direction {sym}"), l.render_form(form));
    }
    s.put("eps~", l.render_form(&fam.two_form));
    for (a, name) in l.names().iter().enumerate() {
        let g = &l.generators()[a] + &fam.map.image(l, a);
        s.put(format!("(1+eps){name}"), g.render(l.frame()));
    }
    let check = mc_residual(l, &fam.map, &fam.free)?;
    s.put("MC residual on family", l.render_form(&check.total));
    Ok(s)
}

fn type_label(k: usize, label: &str) -> String {
    format!("k = {k} ({label})")
}

fn strata_section(ws: &Workspace, fam: &DeformationFamily) -> Result<Section> {
    let l = ws.bundle()?;
    let mut s = Section::new("type strata");
    let k0 = l.type_k();
    s.put("undeformed", type_label(k0, type_class(k0, l.frame().dim())));
    for st in stratify_type(l, &fam.map)? {
        let mut v = type_label(st.k, &st.label);
        if let Some(c) = &st.classical {
            if c.is_empty() {
                v.push_str("; classical complex throughout");
            } else {
                let eqs: Vec<String> = c.iter().map(Symbol::to_string).collect();
                write!(v, "; classical complex when {} = 0", eqs.join(" = ")).unwrap();
            }
        }
        s.put(st.render_conditions(), v);
    }
    Ok(s)
}

fn type_section(ws: &Workspace, fam: &DeformationFamily, at: &str) -> Result<Section> {
    let l = ws.bundle()?;
    let bindings = parse_bindings(at, fam)?;
    let t = type_of(l, &fam.map, &bindings)?;
    let mut s = Section::new("type");
    let b: Vec<String> = bindings.iter().map(|(k, v)| format!("{k} = {v}")).collect();
    s.put("at", b.join(", "));
    s.line(type_label(t.k, &t.label));
    Ok(s)
}

/// Runs one command. Sections come out in the fixed report order.
pub fn run(ws: &Workspace, command: &Command) -> Result<Report> {
    let mut sections = Vec::new();
    match command {
        Command::Validate => sections.push(validation(ws)?),
        Command::Brackets => {
            sections.extend(eigenframe_section(ws));
            sections.push(bracket_section(ws)?);
        }
        Command::Mc => {
            let c = ws.constrained()?;
            sections.push(map_section(ws, &c)?);
            sections.push(mc_section(ws, &ws.mc_system(&c)?)?);
        }
        Command::Gauge => {
            let fam = ws.family().ok();
            sections.push(gauge_section(ws, fam.as_ref())?);
        }
        Command::Family => sections.push(family_section(ws, &ws.family()?)?),
        Command::Type(at) => sections.push(type_section(ws, &ws.family()?, at)?),
        Command::Strata => sections.push(strata_section(ws, &ws.family()?)?),
        Command::Report => {
            sections.push(validation(ws)?);
            sections.extend(eigenframe_section(ws));
            if matches!(ws.lowered, Lowered::None) {
                sections.push(bracket_section(ws)?);
            } else {
                sections.push(subbundle_section(ws)?);
                sections.push(bracket_section(ws)?);
                let c = ws.constrained()?;
                let mc = ws.mc_system(&c)?;
                sections.push(map_section(ws, &c)?);
                sections.push(mc_section(ws, &mc)?);
                let fam = reduce_family(ws.bundle()?, &c, &mc)?;
                sections.push(gauge_section(ws, Some(&fam))?);
                sections.push(family_section(ws, &fam)?);
                sections.push(strata_section(ws, &fam)?);
            }
        }
    }
    Ok(Report { sections })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::workspace::KODAIRA_PRESET;

    #[test]
    fn text_and_machine_rendering() {
        let mut s = Section::new("demo");
        s.put("a", "1");
        s.line("bare");
        let r = Report { sections: vec![s.clone(), s] };
        assert_eq!(r.render_text(), "== demo ==\na: 1\nbare\n\n== demo ==\na: 1\nbare\n");
        let v = r.to_json();
        assert_eq!(v["sections"][1]["entries"][1], json!({ "value": "bare" }));
    }

    #[test]
    fn bindings_are_checked_against_the_family() {
        let ws = Workspace::parse(KODAIRA_PRESET).unwrap();
        let fam = ws.family().unwrap();
        let b = parse_bindings(" t11 = 1/2 , t14=i, t22=0,t32=-1+i", &fam).unwrap();
        assert_eq!(b[&Symbol::parameter("t14")], GaussianRational::i());
        assert_eq!(b[&Symbol::parameter("t11")], GaussianRational::rational(1, 2));
        assert!(matches!(parse_bindings("t11=1,t11=2", &fam), Err(Error::Input(_))));
        assert_eq!(parse_bindings("t11=1", &fam), Err(Error::UnboundParameter("t14".into())));
    }
}
