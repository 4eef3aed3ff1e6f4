use std::io::Write;
use std::process::{Command, Output, Stdio};

fn fixture(name: &str) -> String {
    format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn charsupp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_charsupp"))
        .args(args)
        .env_remove("CHARSUPP_CAP")
        .output()
        .expect("binary runs")
}

fn with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_charsupp"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn table_of_d16() {
    let o = charsupp(&["table", &fixture("dihedral16.perm")]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 8);
    assert!(text.starts_with("classes: 1/1 "));
    assert!(text.contains("c(8)[0, 1, 0, -1]"));
    assert!(text.contains("c(8)[0, -1, 0, 1]"));
}

#[test]
fn table_from_stdin_matches_file() {
    let text = std::fs::read_to_string(fixture("extraspecial27_exp9.pc")).unwrap();
    let piped = with_stdin(&["table", "-"], &text);
    let direct = charsupp(&["table", &fixture("extraspecial27_exp9.pc")]);
    assert_eq!(piped.status.code(), Some(0));
    assert_eq!(piped.stdout, direct.stdout);
}

#[test]
fn usage_and_input_errors_exit_2() {
    assert_eq!(charsupp(&["table"]).status.code(), Some(2));
    assert_eq!(charsupp(&["table", "x", "--bogus"]).status.code(), Some(2));
    assert_eq!(charsupp(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(charsupp(&["table", "/nonexistent/group.pc"]).status.code(), Some(2));
    assert_eq!(with_stdin(&["table", "-"], "group pc ngens=1 prime=\n").status.code(), Some(2));
    assert_eq!(charsupp(&["verify", &fixture("dihedral16.perm"), "--suite", "D"]).status.code(), Some(2));
    assert_eq!(charsupp(&["verify", &fixture("dihedral16.perm"), "--expect-fail", "A.nope"]).status.code(), Some(2));
    assert_eq!(charsupp(&["verify"]).status.code(), Some(2));
    assert_eq!(charsupp(&["support", &fixture("dihedral16.perm"), "--chi", "8"]).status.code(), Some(2));
    assert_eq!(charsupp(&["family", "dihedral", "q=2"]).status.code(), Some(2));
    assert_eq!(charsupp(&["family", "extraspecial", "p=2"]).status.code(), Some(2));
    assert_eq!(charsupp(&["sigma", "--random", "3", "--max", "0"]).status.code(), Some(2));
}

#[test]
fn order_cap_from_environment() {
    let run = |cap: &str| {
        Command::new(env!("CARGO_BIN_EXE_charsupp"))
            .args(["table", &fixture("extraspecial27_exp3.pc")])
            .env("CHARSUPP_CAP", cap)
            .output()
            .unwrap()
    };
    assert_eq!(run("26").status.code(), Some(2));
    assert_eq!(run("27").status.code(), Some(0));
    assert_eq!(run("zero").status.code(), Some(2));
}

#[test]
fn support_profiles() {
    let o = charsupp(&["support", &fixture("dihedral16.perm")]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 8);
    let faithful: Vec<&str> = text.lines().filter(|l| l.contains("support=1,2,6,7")).collect();
    assert_eq!(faithful.len(), 2);
    assert!(faithful[0].contains("k_supp=4") && faithful[0].contains("max_order=8") && faithful[0].contains("gvz=no"));
    let one = stdout(&charsupp(&["support", &fixture("dihedral16.perm"), "--chi", "4"]));
    assert_eq!(one.lines().nth(1).unwrap(), "chi=4 deg=1 k_supp=7 support=1,2,3,4,5,6,7 max_order=8 index=16 order_bound=2^4 gvz=yes");
}

#[test]
fn verify_counterexample_with_declared_control() {
    let o = charsupp(&["verify", &fixture("smallgroup_512_2015.pc"), "--suite", "A", "--expect-fail", "A.k_supp_bound"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.matches("result=FAIL expected=control:").count(), 2);
    assert!(text.trim_end().ends_with("summary: pass=30 fail=0 expected_fail=2 skip=65"));
}

#[test]
fn silent_control_exits_1() {
    let o = charsupp(&["verify", &fixture("extraspecial27_exp3.pc"), "--suite", "A", "--expect-fail", "A.k_supp_bound"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("control A.k_supp_bound was evaluated but never failed"));
}

#[test]
fn lines_format_is_pure_protocol() {
    let o = charsupp(&["verify", &fixture("dihedral16.perm"), "--format", "lines"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for line in text.lines() {
        let fields: Vec<&str> = line.split(' ').collect();
        assert_eq!(fields.len(), 7, "{line}");
        assert_eq!(fields[0], "CHECK");
        for (f, key) in fields[2..].iter().zip(["group=", "chi=", "result=", "expected=", "got="]) {
            assert!(f.starts_with(key), "{line}");
        }
    }
    assert_eq!(text.matches("result=FAIL").count(), 6);
    assert!(String::from_utf8(o.stderr).unwrap().starts_with("summary:"));
}

#[test]
fn family_emit_round_trips_through_table() {
    let emitted = charsupp(&["family", "unitriangular", "p=2", "k=4", "--emit"]);
    assert_eq!(emitted.status.code(), Some(0));
    let text = stdout(&emitted);
    assert!(text.starts_with("group pc ngens=6 prime=2"));
    let table = with_stdin(&["table", "-"], &text);
    assert_eq!(table.status.code(), Some(0));
    assert_eq!(stdout(&table).lines().count(), 1 + 16);
    let summary = stdout(&charsupp(&["family", "dihedral", "p=2", "k=4"]));
    assert_eq!(summary.trim(), "dihedral_16 order=16 exponent=8 class=3 derived_length=2 classes=7");
}

#[test]
fn sigma_is_seeded() {
    let a = charsupp(&["sigma", "--random", "40", "--seed", "7", "--max", "243"]);
    let b = charsupp(&["sigma", "--random", "40", "--seed", "7", "--max", "243", "--jobs", "3"]);
    let c = charsupp(&["sigma", "--random", "40", "--seed", "8", "--max", "243"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
    assert!(stdout(&a).contains("summary: pass="));
}
