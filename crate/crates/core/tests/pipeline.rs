use gcdeform::frame::{kodaira_eigenframe, kodaira_preset};
use gcdeform::pipeline::{run, Command, Lowered, Workspace};
use gcdeform::workspace::{WorkspaceSpec, KODAIRA_PRESET};
use gcdeform::Error;

fn kodaira() -> Workspace {
    Workspace::parse(KODAIRA_PRESET).unwrap()
}

#[test]
fn preset_file_matches_builtin_preset() {
    let ws = kodaira();
    let (g, _) = kodaira_preset();
    assert_eq!(ws.algebra, g);
    let Lowered::Complex { eigenframe, .. } = &ws.lowered else { panic!("complex structure expected") };
    assert_eq!(eigenframe.algebra, kodaira_eigenframe().algebra);
}

#[test]
fn report_lists_four_free_parameters() {
    let r = run(&kodaira(), &Command::Report).unwrap();
    let names: Vec<&str> = r.sections.iter().map(|s| s.name.as_str()).collect();
    assert_eq!(
        names,
        [
            "validation",
            "eigenframe",
            "subbundle",
            "bracket table",
            "deformation map",
            "MC system",
            "gauge basis",
            "reduced family",
            "type strata"
        ]
    );
    let fam = r.section("reduced family").unwrap();
    assert_eq!(fam.get("free parameters"), Some("4 (t11, t14, t22, t32)"));
    assert_eq!(fam.get("MC residual on family"), Some("0"));
    assert_eq!(fam.get("(1+eps)Wbar"), Some("t22*W + Wbar + t32*omegabar"));
    let strata = r.section("type strata").unwrap();
    assert_eq!(strata.get("t14 != 0"), Some("k = 0 (symplectic type)"));
    assert_eq!(strata.get("t14 = 0"), Some("k = 2 (complex type); classical complex when t14 = t32 = 0"));
}

#[test]
fn report_is_deterministic() {
    let a = run(&kodaira(), &Command::Report).unwrap();
    let b = run(&kodaira(), &Command::Report).unwrap();
    assert_eq!(a.render_text(), b.render_text());
    assert_eq!(a.render_machine(), b.render_machine());
}

#[test]
fn type_at_non_classical_point() {
    let r = run(&kodaira(), &Command::Type("t14=0,t32=1,t11=0,t22=0".into())).unwrap();
    assert!(r.render_text().ends_with("k = 2 (complex type, non-classical)\n"));
}

#[test]
fn type_argument_errors_are_input_errors() {
    let ws = kodaira();
    for at in ["t12=0,t14=0,t32=1,t11=0,t22=0", "t14=0", "t14", "t14=x,t32=1,t11=0,t22=0"] {
        let e = run(&ws, &Command::Type(at.into())).unwrap_err();
        assert!(e.is_input_error(), "{at}: {e}");
    }
}

#[test]
fn real_point_is_not_separated() {
    // (1+eps)Tbar = T + Tbar is real here
    let e = run(&kodaira(), &Command::Type("t11=1,t14=0,t22=0,t32=0".into())).unwrap_err();
    assert_eq!(e, Error::NotSeparated);
    assert!(!e.is_input_error());
}

#[test]
fn abelian_mc_system_is_empty() {
    let ws = Workspace::parse("basis X Y U V\nJ X = Y\nJ Y = -X\nJ U = V\nJ V = -U\n").unwrap();
    let text = run(&ws, &Command::Mc).unwrap().render_text();
    assert!(text.contains("\nMC system: empty (all deformations unobstructed at this level)\n"), "{text}");
}

#[test]
fn jacobi_failure_is_a_math_error() {
    let e = Workspace::parse("basis X Y U V\nbracket X Y = U\nbracket X U = X\n").unwrap_err();
    assert!(matches!(e, Error::Jacobi(_)));
    assert!(!e.is_input_error());
}

#[test]
fn bad_j_is_a_math_error() {
    let e = Workspace::parse("basis X Y\nJ X = Y\nJ Y = X\n").unwrap_err();
    assert_eq!(e, Error::NotComplex);
}

#[test]
fn symplectic_workspace() {
    let ws = Workspace::parse("basis X Y U V\nbracket X Y = U\nsymplectic X V = 1\nsymplectic Y U = 1\n").unwrap();
    let r = run(&ws, &Command::Validate).unwrap();
    let v = r.section("validation").unwrap();
    assert_eq!(v.get("dw"), Some("0"));
    assert_eq!(v.get("type"), Some("k = 0 (symplectic type)"));
    // d(dU^dV) = -dX^dY^dV
    let e = Workspace::parse("basis X Y U V\nbracket X Y = U\nsymplectic X Y = 1\nsymplectic U V = 1\n").unwrap_err();
    assert!(matches!(e, Error::NotInvolutive(_)), "{e}");
    let e = Workspace::parse("basis X Y\nsymplectic X Y = 0\n").unwrap_err();
    assert_eq!(e, Error::Degenerate);
}

#[test]
fn explicit_generators() {
    // the complex structure of a 2-dimensional abelian algebra, given directly
    let text = "basis X Y\ngenerator X + i*Y\ngenerator dX + i*dY\n";
    let ws = Workspace::parse(text).unwrap();
    let r = run(&ws, &Command::Report).unwrap();
    assert_eq!(r.section("validation").unwrap().get("type"), Some("k = 1 (complex type)"));
    let e = Workspace::parse("basis X Y\ngenerator X\ngenerator Y\n").unwrap_err();
    assert!(matches!(e, Error::NotSeparated), "{e}");
    let e = Workspace::parse("basis X Y\ngenerator X + dX\ngenerator Y\n").unwrap_err();
    assert!(matches!(e, Error::NotIsotropic(_)), "{e}");
}

#[test]
fn missing_structure_blocks_deformation_commands() {
    let ws = Workspace::parse("basis X Y U\nbracket X Y = U\n").unwrap();
    assert!(run(&ws, &Command::Brackets).is_ok());
    assert!(run(&ws, &Command::Mc).unwrap_err().is_input_error());
}

#[test]
fn workspace_render_round_trips_preset() {
    let spec = WorkspaceSpec::parse(KODAIRA_PRESET).unwrap();
    assert_eq!(WorkspaceSpec::parse(&spec.render()).unwrap(), spec);
}
