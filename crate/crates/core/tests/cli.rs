use std::path::PathBuf;
use std::process::{Command, Output};

use pathway_assembly::chains::optimal_chain_length;
use serde_json::Value;

fn pathasm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pathasm")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("pathasm-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn s(p: &PathBuf) -> &str {
    p.to_str().unwrap()
}

#[test]
fn index_examples() {
    let out = pathasm(&["index", "number", "128"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["index"], 7);
    assert_eq!(v["exact"], true);
    assert_eq!(v["witness"]["steps"].as_array().unwrap().len(), 7);

    assert_eq!(json(&pathasm(&["index", "string", "abab"]))["index"], 2);
}

#[test]
fn bound_exceeded_reports_the_lower_bound() {
    let out = pathasm(&["index", "number", "128", "--algorithm", "sampled", "--max-index", "3"]);
    assert_eq!(out.status.code(), Some(3));
    let v = json(&out);
    assert_eq!(v["error"], "bound_exceeded");
    assert_eq!(v["lower_bound"], 5);
    assert!(!out.stderr.is_empty());
}

#[test]
fn budget_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_pathasm"))
        .args(["index", "number", "1000"])
        .env("PA_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let v = json(&out);
    assert_eq!(v["error"], "budget_exceeded");
    assert!(v["lower_bound"].as_u64().unwrap() >= 10);

    // The flag wins over the environment.
    let out = Command::new(env!("CARGO_BIN_EXE_pathasm"))
        .args(["index", "number", "100", "--budget", "100000000"])
        .env("PA_BUDGET", "10")
        .output()
        .unwrap();
    assert!(out.status.success());
}

#[test]
fn chains() {
    let v = json(&pathasm(&["chain", "127"]));
    assert_eq!(v["l"], 10);
    assert_eq!(v["schonhage"], 8);
    assert_eq!(v["scholz_brauer"]["left"], v["scholz_brauer"]["right"]);
    assert_eq!(json(&pathasm(&["chain", "1"]))["l"], 0);

    let out = pathasm(&["chain", "--table", "64"]);
    let csv = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "n,l,schonhage");
    assert_eq!(lines.len(), 65);
    for (n, line) in (1..).zip(&lines[1..]) {
        let f: Vec<u64> = line.split(',').map(|x| x.parse().unwrap()).collect();
        assert_eq!(f[0], n);
        assert_eq!(f[1] as usize, optimal_chain_length(n).unwrap().length);
        assert!(f[2] <= f[1]);
    }
}

#[test]
fn codec_round_trips_and_errors() {
    let input = scratch("motif.txt");
    let data = b"0123456789abcdef".repeat(1 << 10);
    std::fs::write(&input, &data).unwrap();
    for codec in ["pa", "lzw"] {
        let packed = scratch(&format!("motif.{codec}"));
        let unpacked = scratch(&format!("motif.{codec}.out"));
        let out = pathasm(&["compress", "--input", s(&input), "--output", s(&packed), "--codec", codec]);
        assert!(out.status.success());
        let out = pathasm(&["decompress", "--input", s(&packed), "--output", s(&unpacked)]);
        assert!(out.status.success());
        assert_eq!(std::fs::read(&unpacked).unwrap(), data);
    }

    let v = json(&pathasm(&["compare", "--input", s(&input)]));
    assert!(v["pa_output_bytes"].as_u64() < v["lzw_output_bytes"].as_u64());
    assert_eq!(v["input_bytes"], data.len());

    let packed = std::fs::read(scratch("motif.pa")).unwrap();
    let truncated = scratch("truncated.pa");
    std::fs::write(&truncated, &packed[..packed.len() - 1]).unwrap();
    let out = pathasm(&["decompress", "--input", s(&truncated), "--output", s(&scratch("x"))]);
    assert_eq!(out.status.code(), Some(4));
    assert_eq!(json(&out)["error"], "malformed_stream");

    let bad = scratch("bad.pa");
    std::fs::write(&bad, b"NOPE").unwrap();
    let out = pathasm(&["decompress", "--input", s(&bad), "--output", s(&scratch("y"))]);
    assert_eq!(out.status.code(), Some(4));

    let out = pathasm(&["compress", "--input", s(&scratch("missing")), "--output", s(&scratch("z"))]);
    assert_eq!(out.status.code(), Some(5));
    assert_eq!(json(&out)["error"], "io");
}

#[test]
fn file_domains() {
    let graph = scratch("p4.graph");
    std::fs::write(&graph, "# a path\npalette: red blue\nnodes: 0 0 1 1\nedge: 0 1\nedge: 1 2\nedge: 2 3\n").unwrap();
    let out = pathasm(&["index", "graph", s(&graph)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json(&out)["index"], 2);

    let broken = scratch("broken.graph");
    std::fs::write(&broken, "palette: red\nnodes: 0 0\nedge: 0 7\n").unwrap();
    let out = pathasm(&["index", "graph", s(&broken)]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["line"], 3);

    let group = scratch("z5.json");
    std::fs::write(&group, r#"{"table": [[0,1,2,3,4],[1,2,3,4,0],[2,3,4,0,1],[3,4,0,1,2],[4,0,1,2,3]], "generators": [1]}"#).unwrap();
    let v = json(&pathasm(&["index", "group", s(&group), "--element", "4"]));
    assert_eq!(v["index"], 2);
    let v = json(&pathasm(&["coindex", "group", s(&group)]));
    assert_eq!(v["index"], 4);

    let image = scratch("board.pbm");
    std::fs::write(&image, "P1\n4 4\n0101\n1010\n0101\n1010\n").unwrap();
    let v = json(&pathasm(&["index", "image", s(&image), "--algorithm", "tree"]));
    assert!(v["index"].as_u64().unwrap() <= 4);
    assert!(v["lower_bound"].as_u64().unwrap() >= 2);

    let out = pathasm(&["coindex", "number", "3", "5", "7"]);
    assert_eq!(json(&out)["index"], 4);
}

#[test]
fn tables() {
    let out = pathasm(&["table", "string", "--alphabet", "ab", "--length", "3"]);
    let csv = String::from_utf8(out.stdout).unwrap();
    assert_eq!(csv.lines().count(), 9);
    assert!(csv.lines().any(|l| l == "aaa,2,2,2,true"));

    let path = scratch("numbers.csv");
    let out = pathasm(&["table", "number", "--max", "16", "--output", s(&path)]);
    assert!(out.status.success());
    let csv = std::fs::read_to_string(&path).unwrap();
    assert_eq!(csv.lines().nth(16).unwrap(), "16,4,4,4,true");
}

#[test]
fn reports_reproduce_runs() {
    let report = scratch("report.json");
    let args = ["index", "string", "abracadabra", "--seed", "99", "--report", s(&report)];
    let first = pathasm(&args);
    assert!(first.status.success());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(r["exit_code"], 0);
    assert_eq!(r["config"]["seed"], 99);
    assert_eq!(r["input_sha256"].as_str().unwrap().len(), 64);
    assert_eq!(r["result"]["index"], 7);

    let argv: Vec<String> = r["command"].as_array().unwrap()[1..].iter().map(|a| a.as_str().unwrap().to_string()).collect();
    let argv: Vec<&str> = argv.iter().map(String::as_str).collect();
    let again = pathasm(&argv);
    assert_eq!(again.stdout, first.stdout);
}

#[test]
fn parse_errors() {
    let out = pathasm(&["index", "number", "twelve"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"], "parse");
}
