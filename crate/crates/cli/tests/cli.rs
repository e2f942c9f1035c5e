use std::path::Path;
use std::process::Command;

const HEADER: &str =
    "s,qber_empirical,qber_theoretical,i_ab,i_ae,i_s,sifted_length,residual_ber,disclosed_bits,efficiency";

fn qkd_turbo(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_qkd-turbo"))
        .args(args)
        .output()
        .expect("spawn qkd-turbo")
}

fn out_arg(path: &Path) -> String {
    path.to_str().unwrap().to_owned()
}

#[test]
fn default_sweep_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sweep.csv");
    let res = qkd_turbo(&["--output", &out_arg(&out)]);
    assert!(
        res.status.success(),
        "{}",
        String::from_utf8_lossy(&res.stderr)
    );
    let csv = std::fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], HEADER);
    assert_eq!(lines.len(), 12);
    assert!(lines[1].starts_with("0.000000,0.000000,0.000000,1.000000,0.500000,0.500000,"));
    assert!(lines[11].starts_with("1.000000,"));
}

#[test]
fn repeated_runs_are_byte_identical_and_serial_matches() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let c = dir.path().join("c.csv");
    let common = ["--s-steps", "5", "--photons", "30000", "--seed", "17"];
    for (path, extra) in [(&a, None), (&b, None), (&c, Some("--serial"))] {
        let mut args: Vec<String> = common.iter().map(|s| s.to_string()).collect();
        args.extend(["--output".into(), out_arg(path)]);
        args.extend(extra.map(String::from));
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        assert!(qkd_turbo(&args).status.success());
    }
    let read = |p: &Path| std::fs::read(p).unwrap();
    assert_eq!(read(&a), read(&b));
    assert_eq!(read(&a), read(&c));
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out.csv");
    let cfg = dir.path().join("exp.toml");
    std::fs::write(
        &cfg,
        format!(
            "s-min = 0.5\ns-max = 1.0\ns-steps = 3\nphotons = 40000\nclamp-plots = true\nblock-size = 200\noutput = {:?}\n",
            out.to_str().unwrap()
        ),
    )
    .unwrap();
    let res = qkd_turbo(&["--config", cfg.to_str().unwrap(), "--s-steps", "2"]);
    assert!(
        res.status.success(),
        "{}",
        String::from_utf8_lossy(&res.stderr)
    );
    let csv = std::fs::read_to_string(&out).unwrap();
    let rows: Vec<Vec<&str>> = csv
        .lines()
        .skip(1)
        .map(|l| l.split(',').collect())
        .collect();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0][0], "0.500000");
    assert_eq!(rows[1][0], "1.000000");
    // clamped plot mode floors the negative secure information
    assert_eq!(rows[1][5], "0.000000");
    // fifty 200-bit blocks of the 10000-bit key, two parity streams each
    assert_eq!(rows[1][8], "20000");
}

#[test]
fn invalid_input_fails_with_diagnostic() {
    let res = qkd_turbo(&["--s-min", "0.9", "--s-max", "0.1"]);
    assert!(!res.status.success());
    let stderr = String::from_utf8_lossy(&res.stderr);
    assert!(stderr.contains("s_min"), "{stderr}");

    let res = qkd_turbo(&["--rows", "30"]);
    assert!(!res.status.success());

    let res = qkd_turbo(&["--config", "/nonexistent/exp.toml"]);
    assert!(!res.status.success());
    assert!(String::from_utf8_lossy(&res.stderr).contains("/nonexistent/exp.toml"));

    let res = qkd_turbo(&["--output", "/nonexistent/dir/out.csv", "--s-steps", "1"]);
    assert!(!res.status.success());
    assert!(String::from_utf8_lossy(&res.stderr).contains("out.csv"));

    let res = qkd_turbo(&["--no-such-flag"]);
    assert!(!res.status.success());
}
