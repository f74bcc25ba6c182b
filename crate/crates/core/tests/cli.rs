use std::io::Write;
use std::process::{Command, Output, Stdio};

fn ratspec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ratspec")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn card_of(json: &str) -> Output {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(json.as_bytes()).unwrap();
    ratspec(&["card", file.path().to_str().unwrap()])
}

#[test]
fn card_examples() {
    let o = card_of(r#"{"components": [[1,2],[1,2],[1,2]]}"#);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "3/2\n");
    let o = card_of(r#"{"pos": {"components": [[1,1]]}, "neg": {"components": [[1,1]]}}"#);
    assert_eq!(stdout(&o), "0/1\n");
    let o = card_of(r#"{"components": []}"#);
    assert_eq!(stdout(&o), "0/1\n");
    let o = card_of(r#"{"degree": 3, "elements": [[1,2,3],[2,1,3]]}"#);
    assert_eq!(stdout(&o), "3/2\n");
}

#[test]
fn card_reads_standard_input() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_ratspec"))
        .args(["card", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(br#"{"components": [[3,2]]}"#).unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(stdout(&o), "1/2\n");
}

#[test]
fn card_rejects_malformed_input() {
    for bad in [r#"{"components": [[1,0]]}"#, "{", r#"{"components": [[1,2]], "extra": 1}"#] {
        let o = card_of(bad);
        assert_eq!(o.status.code(), Some(2), "{bad}");
        let err = stderr(&o);
        assert!(err.starts_with("ratspec: error["), "{err}");
        assert_eq!(err.lines().count(), 1);
    }
    let o = ratspec(&["card", "/nonexistent/groupoid.json"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("ratspec: error[io]: "));
}

#[test]
fn egf_examples() {
    let o = ratspec(&["egf", "Exp", "--order", "3", "--format", "csv"]);
    assert_eq!(stdout(&o), "n,coefficient\n0,1/1\n1,1/1\n2,1/1\n3,1/1\n");
    let o = ratspec(&["egf", "geominv(pospart(d/dx1(Zpow(1))))", "--order", "4", "--format", "csv"]);
    assert_eq!(stdout(&o), "n,coefficient\n0,1/1\n1,-1/2\n2,1/6\n3,0/1\n4,-1/30\n");
    let o = ratspec(&["egf", "binpow(1,2)", "--order", "3"]);
    assert_eq!(
        stdout(&o),
        r#"{"expr":"binpow(1,2)","vars":1,"order":3,"coeffs":[["0","1/1"],["1","-1/2"],["2","3/4"],["3","-15/8"]]}"#
            .to_owned()
            + "\n"
    );
}

#[test]
fn egf_two_sorts() {
    let o = ratspec(&["egf", "xy(Exp)", "--order", "2", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "a,b,coefficient\n0,0,1/1\n1,0,0/1\n0,1,0/1\n2,0,0/1\n1,1,1/1\n0,2,0/1\n");
}

#[test]
fn egf_errors() {
    let o = ratspec(&["egf", "prod(Exp,Zpow(1)"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stderr(&o), "ratspec: error[parse]: parse error at 16: expected ',' or ')'\n");
    let o = ratspec(&["egf", "compose(Exp,pospart(Exp))", "--order", "9"]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.starts_with("ratspec: error[resource-limit]: resource limit in compose"), "{err}");
}

#[test]
fn bernoulli_examples() {
    let o = ratspec(&["bernoulli", "--order", "10", "--route", "all"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().last(), Some("MATCH"));
    for route in ["species", "series", "closed_formula", "oracle"] {
        assert!(out.contains(&format!(r#""route":"{route}""#)), "{route}");
    }
    let o = ratspec(&["bernoulli", "--N", "2", "--order", "8"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains(r#""values":["1/1","-1/3","1/18","#), "{}", stdout(&o));
    let o = ratspec(&["bernoulli", "--poly", "--order", "2", "--route", "all"]);
    assert!(stdout(&o).contains(r#"["1/6","-1/1","1/1"]"#));
    assert_eq!(stdout(&o).lines().last(), Some("MATCH"));
}

#[test]
fn bernoulli_domain_errors() {
    let o = ratspec(&["bernoulli", "--N", "2", "--f", "X"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("ratspec: error[domain]: "));
    let o = ratspec(&["bernoulli", "--order", "30"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("ratspec: error[resource-limit]: resource limit in geominv"));
}

#[test]
fn euler_examples() {
    let o = ratspec(&["euler", "--poly", "--order", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains(r#"["1/1"],["-1/2","1/1"],"#), "{}", stdout(&o));
    let o = ratspec(&["euler", "--order", "12", "--route", "all"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().last(), Some("MATCH"));
}

#[test]
fn verify_examples() {
    let o = ratspec(&["verify", "--suite", "valuation", "--order", "6", "--trials", "50"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(stdout(&o).lines().last(), Some("PASS"));
    let o = ratspec(&["verify", "--suite", "inverse", "--order", "8"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains(r#""law":"geominv""#));
    let o = ratspec(&["verify", "--suite", "factorial"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains(r#""law":"rising_factorial","passed":20,"failed":0"#));
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "--suite", "all", "--order", "5", "--seed", "9", "--trials", "5"];
    assert_eq!(ratspec(&args).stdout, ratspec(&args).stdout);
    let args = ["bernoulli", "--order", "12", "--route", "all"];
    assert_eq!(ratspec(&args).stdout, ratspec(&args).stdout);
}

#[test]
fn usage_errors_exit_two() {
    for args in [&["verify", "--suite", "nope"][..], &["egf"], &["bernoulli", "--route", "formula", "--poly"]] {
        let o = ratspec(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        let err = stderr(&o);
        assert!(err.starts_with("ratspec: error[usage]: "), "{err}");
        assert_eq!(err.lines().count(), 1);
    }
}
