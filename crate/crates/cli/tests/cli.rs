use std::path::Path;
use std::process::{Command, Output};

fn lawson(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lawson"))
        .args(args)
        .arg("--cache-dir")
        .arg(cache)
        .env_remove("LAWSON_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn expand_order_three() {
    let dir = tempfile::tempdir().unwrap();
    let o = lawson(dir.path(), &["expand", "--order", "3", "--precision", "40", "--format", "json"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let j: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(j["version"], 1);
    let a = j["alphas"].as_array().unwrap();
    assert_eq!(a[0], "6.931471805599453094172321214581765680755e-1");
    assert!(a[2].as_str().unwrap().starts_with("2.7046280321090871421494108634007624"));
    assert_eq!(j["derivatives"].as_array().unwrap().len(), 3);
}

#[test]
fn expand_csv_columns() {
    let dir = tempfile::tempdir().unwrap();
    let o = lawson(dir.path(), &["expand", "--order", "2", "--precision", "20", "--format", "csv"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("order,re,im,residual"));
    assert_eq!(lines.count(), 2);
}

#[test]
fn general_phi_scope() {
    let dir = tempfile::tempdir().unwrap();
    let o = lawson(dir.path(), &["expand", "--order", "1", "--phi", "0.5", "--format", "json"]);
    assert!(o.status.success());
    let j: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(j["willmore_slope"].is_string());

    let o = lawson(dir.path(), &["expand", "--order", "2", "--phi", "0.5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("general-φ engine limited to order 1"));
}

#[test]
fn omega_values() {
    let dir = tempfile::tempdir().unwrap();
    let get = |args: &[&str]| {
        let mut a = vec!["omega", "--format", "json"];
        a.extend_from_slice(args);
        let o = lawson(dir.path(), &a);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        let j: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        (j["re"].as_str().unwrap().to_string(), j["im"].as_str().unwrap().to_string())
    };
    let (_, im) = get(&["--word", "2,1", "--phi", "pi/4"]);
    assert!(im.starts_with("-2.177586090303602130500688898"));
    let (re, im) = get(&["--word", "1", "--endpoint", "i", "--phi", "0.3"]);
    assert_eq!(re, "0");
    assert!(im.starts_with("-6.0000000000000000000000000000"));
    let (re, im) = get(&["--word", ""]);
    assert!(re.starts_with("1.000000000"));
    assert_eq!(im, "0");

    let o = lawson(dir.path(), &["omega", "--word", "2,4"]);
    assert_eq!(o.status.code(), Some(2));
    let o = lawson(dir.path(), &["omega", "--word", "1", "--phi", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn mpl_value() {
    let dir = tempfile::tempdir().unwrap();
    let o = lawson(dir.path(), &["mpl", "--indices", "2", "--args", "-1", "--format", "json"]);
    assert!(o.status.success());
    let j: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    // Li₂(−1) = −π²/12
    assert!(j["re"].as_str().unwrap().starts_with("-8.224670334241132182362075833230125946"));
    let o = lawson(dir.path(), &["mpl", "--indices", "1", "--args", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let o = lawson(dir.path(), &["verify", "--suite", "closed-forms", "--precision", "45"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("9/9 pass"));
    let o = lawson(dir.path(), &["verify", "--suite", "alpha3"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("4/4 pass"));
    let o = lawson(dir.path(), &["verify", "--suite", "bogus"]);
    assert_eq!(o.status.code(), Some(2));
    let o = lawson(dir.path(), &["expand"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn cache_is_transparent() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["expand", "--order", "3", "--precision", "30", "--format", "csv"];
    let cold = lawson(dir.path(), &args);
    let listing = stdout(&lawson(dir.path(), &["cache", "list"]));
    assert!(listing.contains("(1 tables)"), "{}", listing);
    let warm = lawson(dir.path(), &args);
    assert_eq!(stdout(&cold), stdout(&warm));

    let o = lawson(dir.path(), &["cache", "clear"]);
    assert!(stdout(&o).contains("removed 1"));
    assert!(stdout(&lawson(dir.path(), &["cache", "list"])).contains("(0 tables)"));
}

#[test]
fn flag_overrides_env() {
    let flag = tempfile::tempdir().unwrap();
    let env = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_lawson"))
        .args(["omega", "--word", "3", "--cache-dir"])
        .arg(flag.path())
        .env("LAWSON_CACHE_DIR", env.path())
        .output()
        .unwrap();
    assert!(o.status.success());
    assert_eq!(std::fs::read_dir(flag.path()).unwrap().count(), 1);
    assert_eq!(std::fs::read_dir(env.path()).unwrap().count(), 0);

    let o = Command::new(env!("CARGO_BIN_EXE_lawson"))
        .args(["omega", "--word", "3"])
        .env("LAWSON_CACHE_DIR", env.path())
        .output()
        .unwrap();
    assert!(o.status.success());
    assert_eq!(std::fs::read_dir(env.path()).unwrap().count(), 1);
}
