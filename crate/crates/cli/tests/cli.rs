use std::process::{Command, Output};

fn quadcf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quadcf"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn period_sqrt2() {
    let out = quadcf(&["period", "0", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("period       (2)"), "{text}");
    assert!(text.contains("(tight)"), "{text}");
    assert!(text.contains("river        match"), "{text}");
}

#[test]
fn period_csv() {
    let out = quadcf(&["period", "0", "19", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "p,q,class,p_norm,q_norm,delta,a0,period,t,sum,f,bound,status,river_runs,river\n\
         0,19,quadratic-irrational,0,19,76,4,2 1 3 1 2 8,6,17,34,34,holds,2 1 3 1 2 8,match\n"
    );
}

#[test]
fn period_negative_arguments() {
    let out = quadcf(&["period", "-3", "-1"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).contains("delta        5"));
}

#[test]
fn period_rejects_rational_and_nonreal() {
    let out = quadcf(&["period", "2", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("rational root"));
    let out = quadcf(&["period", "0", "-1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("non-real"));
}

#[test]
fn bad_arguments_exit_2() {
    assert_eq!(quadcf(&["period", "x", "1"]).status.code(), Some(2));
    assert_eq!(quadcf(&["sweep"]).status.code(), Some(2));
    assert_eq!(
        quadcf(&["sweep", "--radius", "5", "--w", "1.5"]).status.code(),
        Some(2)
    );
    assert_eq!(
        quadcf(&["sweep", "--radius", "200000"]).status.code(),
        Some(2)
    );
}

#[test]
fn sweep_small_disc() {
    let out = quadcf(&["sweep", "--radius", "2", "--w", "0.5", "--kcap", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let csv = stdout(&out);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(
        lines[0],
        "radius,omega_size,t_hat_num,t_hat_den,a_mean_num,a_mean_den,a_prime_num,a_prime_den,w,discrepancy"
    );
    assert!(lines[1].starts_with("2,3,1,1,4,3,4,3,0.5,"), "{}", lines[1]);
    assert_eq!(lines[3], "k,arnold_freq,weighted_freq,theoretical");
    assert!(lines.last().unwrap().starts_with("overflow,"));
    assert!(!csv.contains('\r'));
}

#[test]
fn sweep_empty_disc_exit_1() {
    let out = quadcf(&["sweep", "--radius", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).is_empty());
}

#[test]
fn sweep_thread_count_does_not_change_output() {
    let args = |n: &'static str| ["sweep", "--radius", "120", "--threads", n];
    let one = stdout(&quadcf(&args("1")));
    let eight = stdout(&quadcf(&args("8")));
    assert!(!one.is_empty());
    assert_eq!(one, eight);
}

#[test]
fn sweep_writes_file_and_text() {
    let path = std::env::temp_dir().join(format!("quadcf-sweep-{}.csv", std::process::id()));
    let out = quadcf(&["sweep", "--radius", "10", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert!(written.starts_with("radius,omega_size,"));

    let out = quadcf(&["sweep", "--radius", "10", "--format", "text"]);
    assert!(stdout(&out).contains("t_hat "));
}

#[test]
fn boundcheck_has_no_violations() {
    let out = quadcf(&["boundcheck", "--radius", "100"]);
    assert_eq!(out.status.code(), Some(0));
    let csv = stdout(&out);
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("radius,omega_size,violations,tight"));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row[0], "100");
    assert_eq!(row[2], "0");
}

#[test]
fn sqrtmean() {
    let out = quadcf(&["sqrtmean", "--qmax", "5"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "qmax,t0_hat_num,t0_hat_den,t0_hat\n5,4,5,0.800000000000000\n"
    );
}

#[test]
fn equidist_single_sample() {
    let out = quadcf(&["equidist", "--count", "1"]);
    assert_eq!(stdout(&out), "count,discrepancy\n1,0.618033988749895\n");
    let out = quadcf(&["equidist", "--count", "1", "--include-rational"]);
    assert_eq!(stdout(&out), "count,discrepancy\n1,1.00000000000000\n");
    assert_eq!(quadcf(&["equidist", "--count", "0"]).status.code(), Some(2));
}

#[test]
fn kuzmin_table() {
    let out = quadcf(&["kuzmin", "--kmax", "2"]);
    assert_eq!(
        stdout(&out),
        "k,theoretical\n1,0.415037499278844\n2,0.169925001442312\noverflow,0.415037499278844\n"
    );
    assert_eq!(quadcf(&["kuzmin", "--kmax", "0"]).status.code(), Some(2));
}
