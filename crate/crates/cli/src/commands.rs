use std::fs;
use std::path::Path;
use std::str::FromStr;

use cptensor::binary::{certify_binary_cp_01, BinaryCpResult};
use cptensor::dim2::{
    certify_binary_cp_dim2, construct_cp_dim2, pairwise_necessary_check, BcpCertificate,
};
use cptensor::gramian::{gram_tensor, verify_cp_decomposition};
use cptensor::hypergraph::{
    adjacency_tensor, associated_matrix, certify_unique_maximal, indicator_matrix, maximal_edges,
    property_r_check,
};
use cptensor::oracle::{oracle_binary_cp_search, trace_bound};
use cptensor::text::{parse_vector, render_vector};
use cptensor::{
    Certificate, CpDecomposition, Error, MultiHypergraph, OracleOutcome, PropertyR, Rational,
    RationalFactorMatrix, RationalTensor,
};

use crate::report::Report;
use crate::Command;

pub const POSITIVE: u8 = 0;
pub const NEGATIVE: u8 = 1;
pub const INCONCLUSIVE: u8 = 2;
pub const USAGE: u8 = 64;
pub const MALFORMED: u8 = 65;
pub const UNREADABLE: u8 = 66;

pub struct Failure {
    pub code: u8,
    pub message: String,
}

type Outcome = Result<(Report, u8), Failure>;

/// Raw bytes and parsed content of an input file.
fn load<T: FromStr<Err = Error>>(path: &Path) -> Result<(Vec<u8>, T), Failure> {
    let bytes = fs::read(path).map_err(|e| Failure {
        code: UNREADABLE,
        message: format!("{}: {e}", path.display()),
    })?;
    let malformed = |message: String| Failure {
        code: MALFORMED,
        message: format!("{}:{message}", path.display()),
    };
    let text = std::str::from_utf8(&bytes).map_err(|e| malformed(format!(" not UTF-8: {e}")))?;
    let value = text.parse::<T>().map_err(|e| match e {
        Error::Parse {
            line,
            column,
            message,
        } => malformed(format!("{line}:{column}: {message}")),
        other => malformed(format!(" {other}")),
    })?;
    Ok((bytes, value))
}

fn factor_lines(factors: &[Vec<Rational>]) -> Vec<String> {
    factors.iter().map(|f| render_vector(f)).collect()
}

fn decomposition_lines(d: &CpDecomposition<Rational>) -> Vec<String> {
    match d {
        CpDecomposition::Factors(f) => factor_lines(f),
        CpDecomposition::Weighted(terms) => terms
            .iter()
            .map(|t| format!("{} * {}", t.weight, render_vector(&t.direction)))
            .collect(),
    }
}

pub fn run(command: &Command) -> Outcome {
    match command {
        Command::Gram { file, order } => gram(file, *order),
        Command::CertifyDim2 { file } => certify_dim2(file),
        Command::Certify01 { file } => certify_01(file),
        Command::CertifyHypergraph { file } => certify_hypergraph(file),
        Command::PropertyR { file } => property_r(file),
        Command::Adjacency { file } => adjacency(file),
        Command::Indicator { file } => indicator(file),
        Command::Oracle {
            file,
            kmax,
            node_cap,
        } => oracle(file, *kmax, *node_cap),
        Command::Eval { file, at, factors } => eval(file, at.as_deref(), factors.as_deref()),
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: USAGE,
        message: message.into(),
    }
}

fn gram(file: &Path, order: usize) -> Outcome {
    let (bytes, b): (_, RationalFactorMatrix) = load(file)?;
    let mut report = Report::new(format!("gram --order {order}"));
    report.digest("input", &bytes);
    let tensor = gram_tensor(&b, order).map_err(|e| usage(e.to_string()))?;
    report.text("OUTCOME", "done").document(tensor.to_string());
    Ok((report, POSITIVE))
}

fn certify_dim2(file: &Path) -> Outcome {
    let (bytes, a): (_, RationalTensor) = load(file)?;
    let mut report = Report::new("certify-dim2".into());
    report.digest("input", &bytes);

    let binary = match certify_binary_cp_dim2(&a) {
        Ok(BcpCertificate::BinaryCp {
            decomposition,
            bcprank,
        }) => {
            report
                .text("BINARY", "binary_cp")
                .text("BCPRANK", bcprank)
                .lines("BINARY_FACTORS", decomposition_lines(&decomposition));
            Some(true)
        }
        Ok(BcpCertificate::NotBinaryCp { witness }) => {
            report
                .text("BINARY", "not_binary_cp")
                .text("BINARY_WITNESS", &witness);
            Some(false)
        }
        Err(e) => {
            report.text("BINARY", format!("not_applicable: {e}"));
            None
        }
    };

    let cp = match construct_cp_dim2(&a) {
        Ok(Certificate::Positive(d)) => {
            report
                .text("CP", "cp")
                .lines("CP_FACTORS", decomposition_lines(&d));
            true
        }
        Ok(Certificate::Inconclusive(why)) => {
            report.text("CP", format!("inconclusive: {why}"));
            false
        }
        Ok(other) => {
            report.text("CP", format!("not_applicable: {other:?}"));
            false
        }
        Err(e) => {
            report.text("CP", format!("not_applicable: {e}"));
            false
        }
    };

    let pairwise = pairwise_necessary_check(&a);
    match &pairwise {
        Certificate::Passed => report.text("PAIRWISE", "passes"),
        Certificate::Negative(w) => report
            .text("PAIRWISE", "violated")
            .text("PAIRWISE_WITNESS", w),
        Certificate::NotApplicable(why) => {
            report.text("PAIRWISE", format!("not_applicable: {why}"))
        }
        other => report.text("PAIRWISE", format!("{other:?}")),
    };

    let (outcome, code) = if binary == Some(true) {
        ("binary_cp", POSITIVE)
    } else if cp {
        ("cp", POSITIVE)
    } else if pairwise.is_negative() {
        ("not_cp", NEGATIVE)
    } else {
        ("inconclusive", INCONCLUSIVE)
    };
    report.text("OUTCOME", outcome);
    Ok((report, code))
}

fn certify_01(file: &Path) -> Outcome {
    let (bytes, a): (_, RationalTensor) = load(file)?;
    let mut report = Report::new("certify-01".into());
    report.digest("input", &bytes);
    let code = match certify_binary_cp_01(&a) {
        Ok(BinaryCpResult::BinaryCp { u, block_sizes }) => {
            let sizes: Vec<String> = block_sizes.iter().map(ToString::to_string).collect();
            report
                .text("OUTCOME", "binary_cp")
                .text("BCPRANK", u.ncols())
                .text("BLOCK_SIZES", sizes.join(","))
                .lines("FACTORS", factor_lines(u.columns()));
            POSITIVE
        }
        Ok(BinaryCpResult::NotBinaryCp { vertices, .. }) => {
            let vs: Vec<String> = vertices.iter().map(ToString::to_string).collect();
            report.text("OUTCOME", "not_binary_cp").text(
                "WITNESS",
                format!(
                    "irreducible block on vertices {} is not all-ones",
                    vs.join(",")
                ),
            );
            NEGATIVE
        }
        Err(e) => {
            report.text("OUTCOME", "not_applicable").text("REASON", e);
            INCONCLUSIVE
        }
    };
    Ok((report, code))
}

fn certify_hypergraph(file: &Path) -> Outcome {
    let (bytes, g): (_, MultiHypergraph) = load(file)?;
    let mut report = Report::new("certify-hypergraph".into());
    report.digest("input", &bytes);
    let code = match certify_unique_maximal::<Rational>(&g) {
        Certificate::Positive(d) => {
            report
                .text("OUTCOME", "binary_cp")
                .text("BCPRANK", d.len())
                .lines("FACTORS", decomposition_lines(&d));
            POSITIVE
        }
        Certificate::Negative(w) => {
            report.text("OUTCOME", "mismatch").text("WITNESS", w);
            NEGATIVE
        }
        Certificate::NotApplicable(why) | Certificate::Inconclusive(why) => {
            report.text("OUTCOME", "not_applicable").text("REASON", why);
            INCONCLUSIVE
        }
        Certificate::Passed => {
            report.text("OUTCOME", "inconclusive");
            INCONCLUSIVE
        }
    };
    Ok((report, code))
}

fn property_r(file: &Path) -> Outcome {
    let (bytes, g): (_, MultiHypergraph) = load(file)?;
    let mut report = Report::new("property-r".into());
    report.digest("input", &bytes);
    let maximal = maximal_edges(&g).iter().map(|e| e.to_csv()).collect();
    let code = match property_r_check(&g) {
        PropertyR::Holds => {
            report.text("OUTCOME", "holds");
            POSITIVE
        }
        PropertyR::Violated { edge, missing } => {
            report.text("OUTCOME", "violated").text(
                "WITNESS",
                format!("{missing} lies under edge {edge} but is not an edge"),
            );
            NEGATIVE
        }
    };
    report.lines("MAXIMAL_EDGES", maximal);
    Ok((report, code))
}

fn adjacency(file: &Path) -> Outcome {
    let (bytes, g): (_, MultiHypergraph) = load(file)?;
    let mut report = Report::new("adjacency".into());
    report.digest("input", &bytes);
    let a = adjacency_tensor::<Rational>(&g).map_err(|e| usage(e.to_string()))?;
    report.text("OUTCOME", "done").document(a.to_string());
    Ok((report, POSITIVE))
}

fn indicator(file: &Path) -> Outcome {
    let (bytes, g): (_, MultiHypergraph) = load(file)?;
    let mut report = Report::new("indicator".into());
    report.digest("input", &bytes);
    let w = indicator_matrix(&g);
    let assoc = associated_matrix(&g)
        .iter()
        .map(|row| {
            row.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect();
    report
        .text("OUTCOME", "done")
        .lines("WWT", assoc)
        .document(w.to_factor_matrix::<Rational>().to_string());
    Ok((report, POSITIVE))
}

fn oracle(file: &Path, kmax: Option<usize>, node_cap: u64) -> Outcome {
    let (bytes, a): (_, RationalTensor) = load(file)?;
    let mut command = "oracle".to_string();
    if let Some(k) = kmax {
        command.push_str(&format!(" --kmax {k}"));
    }
    command.push_str(&format!(" --node-cap {node_cap}"));
    let mut report = Report::new(command);
    report.digest("input", &bytes);

    let bound = trace_bound(&a);
    let k_max = kmax.unwrap_or(bound);
    let code = match oracle_binary_cp_search(&a, k_max, node_cap) {
        Ok(OracleOutcome::Found { factors, k, nodes }) => {
            report
                .text("OUTCOME", "found")
                .text("K", k)
                .text("NODES", nodes)
                .lines("FACTORS", factor_lines(&factors));
            POSITIVE
        }
        Ok(OracleOutcome::Exhausted { k_max, nodes }) => {
            report
                .text("OUTCOME", "exhausted")
                .text("KMAX", k_max)
                .text("NODES", nodes);
            if k_max >= bound {
                report.text(
                    "CONCLUSION",
                    "not {0,1}-CP: every decomposition has at most trace-many factors",
                );
                NEGATIVE
            } else {
                report.text(
                    "CONCLUSION",
                    format!("inconclusive: kmax is below the diagonal sum {bound}"),
                );
                INCONCLUSIVE
            }
        }
        Err(e) => {
            report.text("OUTCOME", "not_applicable").text("REASON", e);
            INCONCLUSIVE
        }
    };
    Ok((report, code))
}

fn eval(file: &Path, at: Option<&str>, factors: Option<&Path>) -> Outcome {
    if at.is_none() && factors.is_none() {
        return Err(usage("eval needs --at and/or --factors"));
    }
    let point = at
        .map(|s| parse_vector::<Rational>(s).map_err(|e| usage(format!("--at: {e}"))))
        .transpose()?;
    let (bytes, a): (_, RationalTensor) = load(file)?;
    let mut command = "eval".to_string();
    if let Some(s) = at {
        command.push_str(&format!(" --at {s}"));
    }
    if factors.is_some() {
        command.push_str(" --factors");
    }
    let mut report = Report::new(command);
    report.digest("input", &bytes);

    let mut code = POSITIVE;
    if let Some(x) = point {
        let value = a.evaluate(&x).map_err(|e| usage(format!("--at: {e}")))?;
        report.text("VALUE", value);
    }
    if let Some(path) = factors {
        let (fbytes, b): (_, RationalFactorMatrix) = load(path)?;
        report.digest("factors", &fbytes);
        let verdict = CpDecomposition::factors(b.columns().to_vec())
            .and_then(|d| verify_cp_decomposition(&a, &d));
        match verdict {
            Ok(Certificate::Positive(_)) => {
                report.text("OUTCOME", "verified");
            }
            Ok(Certificate::Negative(w)) => {
                report.text("OUTCOME", "mismatch").text("WITNESS", w);
                code = NEGATIVE;
            }
            Ok(other) => {
                report.text("OUTCOME", format!("{other:?}"));
                code = INCONCLUSIVE;
            }
            Err(e) => {
                report.text("OUTCOME", "not_applicable").text("REASON", e);
                code = INCONCLUSIVE;
            }
        }
    } else {
        report.text("OUTCOME", "done");
    }
    Ok((report, code))
}
