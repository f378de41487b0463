use std::path::{Path, PathBuf};
use std::process::Command;

use cptensor::{CpDecomposition, Rational, RationalTensor, WeightedFactor};
use tempfile::TempDir;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_cptensor"))
        .args(args)
        .output()
        .unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Lines following `KEY n` in a text report.
fn block(stdout: &str, key: &str) -> Vec<String> {
    let mut lines = stdout.lines();
    let head = lines
        .find(|l| l.split_whitespace().next() == Some(key))
        .unwrap_or_else(|| panic!("no {key} in\n{stdout}"));
    let n: usize = head.split_whitespace().nth(1).unwrap().parse().unwrap();
    lines.take(n).map(str::to_string).collect()
}

fn value<'a>(stdout: &'a str, key: &str) -> &'a str {
    stdout
        .lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix(' ')))
        .unwrap_or_else(|| panic!("no {key} in\n{stdout}"))
}

/// Writes factor vectors as a factor matrix file and checks them with `eval`.
fn reverify(dir: &TempDir, tensor: &Path, factors: &[String], dim: usize) {
    let file = dir.path().join("factors.txt");
    let mut text = format!("dim {dim} cols {}\n", factors.len());
    for f in factors {
        text.push_str(f);
        text.push('\n');
    }
    std::fs::write(&file, text).unwrap();
    let r = run(&["eval", path(tensor), "--factors", path(&file)]);
    assert_eq!(r.code, 0, "{}{}", r.stdout, r.stderr);
    assert_eq!(value(&r.stdout, "OUTCOME"), "verified");
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn certify_01_on_example_31() {
    let r = run(&["certify-01", path(&data("exm31.tensor"))]);
    assert_eq!(r.code, 0);
    assert_eq!(value(&r.stdout, "OUTCOME"), "binary_cp");
    assert_eq!(block(&r.stdout, "FACTORS"), vec!["1,0,1,1"]);
}

#[test]
fn certify_dim2_on_example_21() {
    let r = run(&["certify-dim2", path(&data("exm21.tensor"))]);
    assert_eq!(r.code, 2);
    assert_eq!(value(&r.stdout, "BINARY"), "not_binary_cp");
    assert_eq!(
        value(&r.stdout, "BINARY_WITNESS"),
        "A(1,2) = 2 > A(1,1) = 1"
    );
    assert_eq!(value(&r.stdout, "PAIRWISE"), "passes");
    assert!(value(&r.stdout, "CP").starts_with("inconclusive"));
}

#[test]
fn certify_dim2_outcomes() {
    let dir = TempDir::new().unwrap();
    let bcp = write(
        &dir,
        "bcp.tensor",
        "order 3 dim 2 domain integer\n1,1,1 3\n1,1,2 1\n1,2,2 1\n2,2,2 2\n",
    );
    let r = run(&["certify-dim2", path(&bcp)]);
    assert_eq!(r.code, 0);
    assert_eq!(value(&r.stdout, "OUTCOME"), "binary_cp");
    assert_eq!(value(&r.stdout, "BCPRANK"), "4");
    let factors = block(&r.stdout, "BINARY_FACTORS");
    assert_eq!(factors.len(), 4);
    reverify(&dir, &bcp, &factors, 2);

    // CP but not {0,1}-CP: 1/2 on the off-diagonal.
    let cp = write(&dir, "cp.tensor", "order 4 dim 2 domain rational\n1,1,1,1 2\n1,1,1,2 1/2\n1,1,2,2 1/2\n1,2,2,2 1/2\n2,2,2,2 3\n");
    let r = run(&["certify-dim2", path(&cp)]);
    assert_eq!(r.code, 0);
    assert_eq!(value(&r.stdout, "OUTCOME"), "cp");
    let terms = block(&r.stdout, "CP_FACTORS");
    assert_eq!(terms.len(), 3);
    let weighted = terms
        .iter()
        .map(|t| {
            let (w, v) = t.split_once(" * ").unwrap();
            WeightedFactor {
                weight: w.parse::<Rational>().unwrap(),
                direction: cptensor::text::parse_vector(v).unwrap(),
            }
        })
        .collect();
    let rebuilt = CpDecomposition::weighted(weighted)
        .unwrap()
        .to_tensor(4, 2)
        .unwrap();
    let original: RationalTensor = std::fs::read_to_string(&cp).unwrap().parse().unwrap();
    assert_eq!(rebuilt, original);

    let not_cp = write(
        &dir,
        "notcp.tensor",
        "order 3 dim 2 domain integer\n1,1,1 1\n1,1,2 2\n1,2,2 2\n2,2,2 1\n",
    );
    let r = run(&["certify-dim2", path(&not_cp)]);
    assert_eq!(r.code, 1);
    assert_eq!(value(&r.stdout, "OUTCOME"), "not_cp");
    assert_eq!(
        value(&r.stdout, "PAIRWISE_WITNESS"),
        "A(1,1,2)^2 = 4 > A(1,1,1)*A(2,2,2) = 1"
    );
}

#[test]
fn oracle_on_zero_tensor() {
    let r = run(&["oracle", path(&data("zero.tensor")), "--kmax", "3"]);
    assert_eq!(r.code, 0);
    assert_eq!(value(&r.stdout, "K"), "0");
    assert!(block(&r.stdout, "FACTORS").is_empty());
}

#[test]
fn oracle_outcomes() {
    let r = run(&["oracle", path(&data("exm21.tensor"))]);
    assert_eq!(r.code, 1);
    assert_eq!(value(&r.stdout, "OUTCOME"), "exhausted");
    let r = run(&["oracle", path(&data("exm21.tensor")), "--kmax", "2"]);
    assert_eq!(r.code, 2);
    let r = run(&["oracle", path(&data("exm31.tensor")), "--node-cap", "2"]);
    assert_eq!(r.code, 2);
    assert_eq!(value(&r.stdout, "OUTCOME"), "not_applicable");
}

#[test]
fn hypergraph_commands() {
    let g = data("exm31.hypergraph");
    let r = run(&["property-r", path(&g)]);
    assert_eq!(r.code, 0);
    assert_eq!(block(&r.stdout, "MAXIMAL_EDGES"), vec!["1,3,4"]);

    let r = run(&["certify-hypergraph", path(&g)]);
    assert_eq!(r.code, 0);
    assert_eq!(block(&r.stdout, "FACTORS"), vec!["1,0,1,1"]);

    let r = run(&["adjacency", path(&g)]);
    assert_eq!(r.code, 0);
    let a: RationalTensor = r.stdout.parse().unwrap();
    let expected: RationalTensor = std::fs::read_to_string(data("exm31.tensor"))
        .unwrap()
        .parse()
        .unwrap();
    assert_eq!(a, expected);

    let r = run(&["indicator", path(&g)]);
    assert_eq!(r.code, 0);
    let w: cptensor::RationalFactorMatrix = r.stdout.parse().unwrap();
    assert_eq!(w.ncols(), 10);
    assert!(r.stdout.contains("# 20,0,5,5\n"));

    let dir = TempDir::new().unwrap();
    let broken = write(
        &dir,
        "broken.hypergraph",
        "order 3 vertices 4\n1,1,1\n1,3,4\n",
    );
    let r = run(&["property-r", path(&broken)]);
    assert_eq!(r.code, 1);
    assert_eq!(
        value(&r.stdout, "WITNESS"),
        "(1,1,3) lies under edge (1,3,4) but is not an edge"
    );
    let r = run(&["certify-hypergraph", path(&broken)]);
    assert_eq!(r.code, 2);
}

#[test]
fn gram_and_eval() {
    let r = run(&["gram", path(&data("exm21_gram.factors")), "--order", "2"]);
    assert_eq!(r.code, 0);
    let a: RationalTensor = r.stdout.parse().unwrap();
    let expected: RationalTensor = std::fs::read_to_string(data("exm21.tensor"))
        .unwrap()
        .parse()
        .unwrap();
    assert_eq!(a, expected);

    let r = run(&["eval", path(&data("exm21.tensor")), "--at", "1,-1"]);
    assert_eq!(r.code, 0);
    assert_eq!(value(&r.stdout, "VALUE"), "2");

    let r = run(&[
        "eval",
        path(&data("exm21.tensor")),
        "--factors",
        path(&data("exm21_gram.factors")),
    ]);
    assert_eq!(r.code, 1);
    assert_eq!(value(&r.stdout, "OUTCOME"), "mismatch");
}

#[test]
fn positive_certificates_reverify() {
    let dir = TempDir::new().unwrap();
    let t = data("exm31.tensor");
    for cmd in ["certify-01", "oracle"] {
        let r = run(&[cmd, path(&t)]);
        assert_eq!(r.code, 0, "{cmd}");
        reverify(&dir, &t, &block(&r.stdout, "FACTORS"), 4);
    }
    let r = run(&["certify-hypergraph", path(&data("exm31.hypergraph"))]);
    reverify(&dir, &t, &block(&r.stdout, "FACTORS"), 4);

    let blocks = write(
        &dir,
        "blocks.tensor",
        "order 2 dim 4 domain binary\n1,1 1\n1,3 1\n3,3 1\n2,2 1\n",
    );
    let r = run(&["certify-01", path(&blocks)]);
    assert_eq!(value(&r.stdout, "BLOCK_SIZES"), "2,1");
    reverify(&dir, &blocks, &block(&r.stdout, "FACTORS"), 4);
    let r = run(&["oracle", path(&blocks)]);
    reverify(&dir, &blocks, &block(&r.stdout, "FACTORS"), 4);
}

#[test]
fn reports_are_deterministic() {
    let cases: [Vec<String>; 4] = [
        vec!["certify-dim2".into(), path(&data("exm21.tensor")).into()],
        vec!["certify-01".into(), path(&data("exm31.tensor")).into()],
        vec![
            "--json".into(),
            "indicator".into(),
            path(&data("exm31.hypergraph")).into(),
        ],
        vec![
            "oracle".into(),
            path(&data("exm31.tensor")).into(),
            "--json".into(),
        ],
    ];
    for args in &cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let (a, b) = (run(&args), run(&args));
        assert_eq!(a.stdout, b.stdout);
        assert!(a.stdout.ends_with('\n') && !a.stdout.ends_with("\n\n"));
    }
}

#[test]
fn json_mirrors_text() {
    let file = data("exm31.tensor");
    let args = ["certify-01", path(&file)];
    let text = run(&args).stdout;
    let json = run(&["--json", args[0], args[1]]);
    assert_eq!(json.code, 0);
    let v: serde_json::Value = serde_json::from_str(&json.stdout).unwrap();
    assert_eq!(v["outcome"], "binary_cp");
    assert_eq!(v["factors"], serde_json::json!(["1,0,1,1"]));
    assert_eq!(
        v["input_sha256"].as_str().unwrap(),
        value(&text, "# input-sha256:")
    );
}

#[test]
fn input_digest_is_sha256_of_bytes() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "empty.tensor", "order 2 dim 1 domain binary\n");
    let r = run(&["certify-01", path(&f)]);
    // Digest of the header line as printed by `sha256sum`.
    assert_eq!(
        value(&r.stdout, "# input-sha256:"),
        "37eea0579e00c9ab274146d33867523f991a4b0a1865ff0874aa603c7e068831"
    );
}

#[test]
fn error_exit_codes() {
    let dir = TempDir::new().unwrap();
    let bad = write(
        &dir,
        "bad.tensor",
        "order 2 dim 2 domain integer\n1,1 1\n2,1 3\n",
    );
    let r = run(&["certify-01", path(&bad)]);
    assert_eq!(r.code, 65);
    assert!(r.stderr.contains("bad.tensor:3:1:"), "{}", r.stderr);
    assert!(r.stdout.is_empty());

    let bad = write(&dir, "bad2.tensor", "order 2 dim 2 domain binary\n1,1 x\n");
    let r = run(&["certify-01", path(&bad)]);
    assert_eq!(r.code, 65);
    assert!(r.stderr.contains(":2:5:"), "{}", r.stderr);

    assert_eq!(run(&["certify-01", "/definitely/missing"]).code, 66);
    assert_eq!(run(&["frobnicate"]).code, 64);
    assert_eq!(run(&["gram", path(&data("exm21.factors"))]).code, 64);
    assert_eq!(
        run(&["gram", path(&data("exm21.factors")), "--order", "1"]).code,
        64
    );
    assert_eq!(run(&["eval", path(&data("exm21.tensor"))]).code, 64);
    assert_eq!(
        run(&["eval", path(&data("exm21.tensor")), "--at", "1"]).code,
        64
    );
    assert_eq!(run(&["--help"]).code, 0);
}
