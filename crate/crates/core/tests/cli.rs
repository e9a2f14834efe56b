use std::path::PathBuf;
use std::process::{Command, Output};

use iotacx::cli::{deserialize, ComplexDocument};
use iotacx::involutive::{Mode, VerifyInvolution};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_iotacx")).args(args).output().expect("binary runs")
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn tmp(name: &str) -> String {
    std::env::temp_dir().join(format!("iotacx-cli-{}-{name}", std::process::id())).to_string_lossy().into_owned()
}

/// Every emitted complex parses back, has ∂² = 0, and passes its own check.
fn assert_sound(text: &str) {
    match deserialize(text).unwrap() {
        ComplexDocument::Knot(k) => {
            assert!(k.complex().d_squared_is_zero());
            assert!(k.verify_involution(Mode::Strict).is_ok());
        }
        ComplexDocument::Iota(k) => {
            assert!(k.complex().d_squared_is_zero());
            assert!(k.verify_involution(Mode::Almost).is_ok());
        }
    }
}

#[test]
fn trefoil_golden() {
    let o = bin(&["torus-cfk", "2", "3"]);
    assert!(o.status.success());
    let golden = std::fs::read_to_string(data("trefoil.cx")).unwrap();
    assert_eq!(stdout(&o), golden);
    assert_eq!(deserialize(&golden).unwrap().to_text(), golden);
    assert_eq!(stdout(&bin(&["staircase", "1", "1"])), golden);
}

#[test]
fn standard_golden() {
    let o = bin(&["standard", "+,-1,+,-2"]);
    assert_eq!(stdout(&o), std::fs::read_to_string(data("c2.cx")).unwrap());
}

#[test]
fn constructors_emit_sound_documents() {
    for args in [
        &["torus-cfk", "3", "4"][..],
        &["torus-cfk", "6", "7"],
        &["staircase", "1", "2", "2", "1"],
        &["box", "3"],
        &["standard", "-,1,+,-2"],
        &["standard", ""],
    ] {
        let o = bin(args);
        assert!(o.status.success(), "{args:?}");
        assert_sound(&stdout(&o));
    }
}

#[test]
fn file_commands() {
    let t = data("trefoil.cx");
    let tt = tmp("tt.cx");
    assert!(bin(&["tensor", &t, &t, "--knot", "-o", &tt]).status.success());
    let text = std::fs::read_to_string(&tt).unwrap();
    assert_sound(&text);
    assert_eq!(deserialize(&text).unwrap().to_text().lines().filter(|l| l.starts_with("gen")).count(), 9);
    for cmd in ["dual", "reduce", "a0"] {
        let o = bin(&[cmd, &tt]);
        assert!(o.status.success(), "{cmd}");
        assert_sound(&stdout(&o));
    }
    assert_eq!(bin(&["verify", &tt]).status.code(), Some(0));
    assert_eq!(bin(&["equiv", &t, &t]).status.code(), Some(0));
    let td = tmp("td.cx");
    assert!(bin(&["dual", &t, "-o", &td]).status.success());
    assert_eq!(bin(&["equiv", &t, &td]).status.code(), Some(1));
    let _ = std::fs::remove_file(tt);
    let _ = std::fs::remove_file(td);
}

#[test]
fn iota_commands() {
    let c = data("c2.cx");
    let o = bin(&["standard-rep", &c, "--max-steps", "2", "--max-weight", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "(+,-1,+,-2)");
    let o = bin(&["standard-rep", &c, "--max-steps", "1", "--max-weight", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(bin(&["verify", &c, "--almost"]).status.code(), Some(0));
    assert_eq!(bin(&["equiv", &c, &c, "--almost"]).status.code(), Some(0));
    let tc = tmp("cc.cx");
    assert!(bin(&["tensor", &c, &c, "-o", &tc]).status.success());
    let o = bin(&["standard-rep", &tc, "--max-steps", "4", "--max-weight", "2"]);
    assert_eq!(stdout(&o).trim(), "(+,-1,+,-2,+,-1,+,-2)");
    let _ = std::fs::remove_file(tc);
}

#[test]
fn parameter_commands() {
    assert_eq!(stdout(&bin(&["sum-params", "+3,+2"])).trim(), "(+,-1,+,-3,+,-1,+,-2)");
    assert_eq!(stdout(&bin(&["sum-params", "+3", "-2"])).trim(), "(+,-1,+,-3,-,1,-,2)");
    assert_eq!(stdout(&bin(&["sum-params", "+2,-2"])).trim(), "()");
    assert_eq!(bin(&["sum-params", "+1"]).status.code(), Some(2));
    assert_eq!(bin(&["sf-check", "+,-1,+,-2"]).status.code(), Some(1));
    assert_eq!(bin(&["sf-check", "-,1,-,1"]).status.code(), Some(0));
    assert_eq!(bin(&["sf-check", ""]).status.code(), Some(0));
    assert_eq!(bin(&["sf-check", "+,0"]).status.code(), Some(2));
}

#[test]
fn yn_command() {
    let o = bin(&["yn", "3", "--full-check"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "params (+,-1,+,-2)\nsf false\nreduction certified true\n");
    let o = bin(&["yn", "5"]);
    assert!(stdout(&o).starts_with("params (+,-1,+,-4)\n"));
    assert_eq!(bin(&["yn", "4"]).status.code(), Some(2));
    let o = bin(&["yn", "5", "--max-steps", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--max-steps"));
}

#[test]
fn errors() {
    let bad = tmp("bad.cx");
    std::fs::write(&bad, "ring F2[U]\ngen a 0\nd a zz 0\n").unwrap();
    let o = bin(&["verify", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("zz"));
    assert_eq!(bin(&["a0", &data("trefoil.cx"), "--framing", "2"]).status.code(), Some(2));
    assert_eq!(bin(&["tensor", &data("trefoil.cx"), &data("c2.cx")]).status.code(), Some(2));
    assert_eq!(bin(&["no-such-command"]).status.code(), Some(2));
    let _ = std::fs::remove_file(bad);
}
