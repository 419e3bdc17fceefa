use std::io::{Read, Write};
use std::net::{TcpListener, TcpStream};
use std::process::{Command, Output, Stdio};
use std::thread::sleep;
use std::time::{Duration, Instant};

use serde_json::Value;

fn wythoff(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wythoff")).args(args).env_remove("WYTHOFF_OUT_DIR").output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn solve_json_contains_12_6() {
    let out = wythoff(&["solve", "--k", "5", "--bound", "30", "--format", "json"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["k"], 5);
    assert!(v["p_positions"].as_array().unwrap().contains(&serde_json::json!({ "x": 12, "y": 6 })));
}

#[test]
fn solve_classical_csv() {
    let out = wythoff(&["solve", "--k", "0", "--bound", "10", "--format", "csv"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "x,y\n0,0\n1,2\n2,1\n3,5\n4,7\n5,3\n6,10\n7,4\n10,6\n");
}

#[test]
fn solve_rejects_bound_below_k() {
    let out = wythoff(&["solve", "--k", "5", "--bound", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
}

#[test]
fn sequences_outputs() {
    let out = wythoff(&["sequences", "--k", "5", "--max-index", "15"]);
    assert!(out.status.success());
    let a: Vec<u64> = stdout(&out).lines().skip(1).map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    assert_eq!(a, [6, 7, 8, 9, 10, 11, 13, 15, 17, 19, 21, 23, 24, 26, 27]);

    let out = wythoff(&["sequences", "--k", "1", "--max-index", "5", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let a: Vec<u64> = v["rows"].as_array().unwrap().iter().map(|r| r["a_n"].as_u64().unwrap()).collect();
    assert_eq!(a, [2, 3, 5, 7, 8]);

    let out = wythoff(&["sequences", "--k", "1", "--max-index", "0"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "n,a_n,b_n,c_n,d_n\n");
}

#[test]
fn output_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let status = Command::new(env!("CARGO_BIN_EXE_wythoff"))
        .args(["sequences", "--k", "2", "--max-index", "4"])
        .env("WYTHOFF_OUT_DIR", dir.path())
        .status()
        .unwrap();
    assert!(status.success());
    let written = std::fs::read_to_string(dir.path().join("sequences-k2-m4.csv")).unwrap();
    assert!(written.starts_with("n,a_n,b_n,c_n,d_n\n1,3,6,"));

    let explicit = dir.path().join("nested/board.txt");
    let out = wythoff(&["solve", "--k", "1", "--bound", "8", "--format", "text", "--out", explicit.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(std::fs::read_to_string(explicit).unwrap().starts_with("k = 1, N = 8,"));
}

#[test]
fn dump_has_header() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k3.bin");
    let out = wythoff(&["solve", "--k", "3", "--bound", "20", "--format", "csv", "--dump", path.to_str().unwrap()]);
    assert!(out.status.success());
    let bytes = std::fs::read(path).unwrap();
    assert_eq!(&bytes[..8], b"WYTHOFFG");
    assert_eq!(bytes.len(), 26 + 21 * 21);
}

#[test]
fn verify_exit_codes() {
    let out = wythoff(&["verify", "--check", "closed_form", "--check", "block_counts"]);
    assert_eq!(out.status.code(), Some(0));
    let lines: Vec<Value> = stdout(&out).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 10);
    assert!(lines.iter().all(|r| r["status"] == "pass"));

    let out = wythoff(&["verify", "--check", "partition", "--inject-fault", "difference-equals-c"]);
    assert_eq!(out.status.code(), Some(1));
    let failed: Vec<Value> = stdout(&out)
        .lines()
        .map(|l| serde_json::from_str::<Value>(l).unwrap())
        .filter(|r| r["status"] == "fail")
        .collect();
    assert_eq!(failed.len(), 1);
    assert_eq!(failed[0]["k"], 5);
    assert!(failed[0]["counterexample"]["inputs"].is_object());

    assert_eq!(wythoff(&["verify", "--check", "no_such_check"]).status.code(), Some(2));
    assert_eq!(wythoff(&["verify", "--inject-fault", "no-such-fault"]).status.code(), Some(2));
}

#[test]
fn default_verify_passes() {
    let out = wythoff(&["verify"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
}

#[test]
fn invalid_port_is_a_usage_error() {
    assert_eq!(wythoff(&["serve", "--port", "0"]).status.code(), Some(2));
    assert_eq!(wythoff(&["serve", "--port", "70000"]).status.code(), Some(2));
}

fn get(port: u16, path: &str) -> Option<String> {
    let mut stream = TcpStream::connect(("127.0.0.1", port)).ok()?;
    stream.set_read_timeout(Some(Duration::from_secs(5))).ok()?;
    write!(stream, "GET {path} HTTP/1.1\r\nHost: localhost\r\nConnection: close\r\n\r\n").ok()?;
    let mut response = String::new();
    stream.read_to_string(&mut response).ok()?;
    Some(response)
}

#[test]
fn serve_answers_health_and_classify() {
    let port = TcpListener::bind("127.0.0.1:0").unwrap().local_addr().unwrap().port();
    let mut child = Command::new(env!("CARGO_BIN_EXE_wythoff"))
        .args(["serve", "--port", &port.to_string()])
        .stdout(Stdio::null())
        .stderr(Stdio::null())
        .spawn()
        .unwrap();
    let deadline = Instant::now() + Duration::from_secs(20);
    let health = loop {
        if let Some(r) = get(port, "/healthz") {
            break Some(r);
        }
        if Instant::now() > deadline {
            break None;
        }
        sleep(Duration::from_millis(50));
    };
    let classify = get(port, "/classify?k=5&x=12&y=6");
    child.kill().ok();
    child.wait().ok();
    let health = health.expect("service came up");
    assert!(health.starts_with("HTTP/1.1 200"));
    assert!(health.ends_with("{\"status\":\"ok\"}"));
    assert!(classify.unwrap().ends_with("{\"class\":\"pair-P\",\"pair_index\":1}"));
}
