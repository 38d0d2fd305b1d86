use std::fs;
use std::time::Instant;

use anyhow::Context;
use foulkes_core::claims::{parse_claims, run_claim};
use foulkes_core::combinatorics::Partition;
use foulkes_core::exactla::{certify_injective_with, default_primes, is_prime, CertifyOptions, MAX_PRIME};
use foulkes_core::foulkes_map::{psi_composed, psi_entry, psi_fused, psi_poly, PSI_POLY_CONVENTION};
use foulkes_core::plethysm::{foulkes_compare, hermite_compare, multiplicity_vector_from, MultiplicityComparison};
use foulkes_core::{Error, MultiplicityVector, SparseExactMatrix};
use serde_json::{json, Value};

use crate::cache::Cache;
use crate::result::{exit, Parameters, RunResult, Status};
use crate::{fhm, Cli, Command};

/// FHM1 tag for `psi` exports; rows and columns follow the block set
/// partition enumeration order.
pub const PSI_TAG: &str = "psi";
/// FHM1 tag for polynomial-side exports; rows and columns follow the
/// monomial multiset order, entries count each distinct ordering once.
pub const POLY_TAG: &str = "psi_poly:each-distinct-ordering-once";

/// A finished command: the JSON result and, when requested, a CSV table.
#[derive(Debug)]
pub struct Outcome {
    pub result: RunResult,
    pub csv: Option<String>,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        self.result.status.exit_code()
    }
}

/// Exit code for a failed command.
pub fn exit_code_for(e: &anyhow::Error) -> i32 {
    match e.downcast_ref::<Error>() {
        Some(Error::InvalidArgument(_)) => exit::USAGE,
        Some(Error::ResourceLimit(_)) => exit::RESOURCE,
        _ => exit::VIOLATED,
    }
}

pub fn run(cli: &Cli, cache: &Cache) -> anyhow::Result<Outcome> {
    let start = Instant::now();
    let (name, parameters, status, outputs, artifacts, csv) = match &cli.command {
        Command::Psi { shape, fused, export, certify, primes } => {
            let primes = if primes.is_empty() { default_primes() } else { primes.clone() };
            if let Some(&p) = primes.iter().find(|&&p| !is_prime(p) || p > MAX_PRIME) {
                return Err(Error::InvalidArgument(format!("{p} is not a prime below {MAX_PRIME}")).into());
            }
            let psi = if *fused { psi_fused(shape.a, shape.b)? } else { psi_composed(shape.a, shape.b)? };
            let opts = CertifyOptions {
                primes: if *certify { primes.clone() } else { primes[..1].to_vec() },
                confirm_exact: *certify,
                ..CertifyOptions::default()
            };
            let cert = certify_injective_with(&psi.matrix, &opts)?;
            let mut artifacts = Vec::new();
            if let Some(path) = export {
                write_export(&psi.matrix, PSI_TAG, path)?;
                artifacts.push(path.display().to_string());
            }
            let outputs = json!({
                "domain_dim": psi.domain_dim(),
                "codomain_dim": psi.codomain_dim(),
                "nnz": psi.matrix.nnz(),
                "entry": psi_entry(shape.a, shape.b).to_string(),
                "rank": cert.rank,
                "injective": cert.injective,
                "method": cert.method,
                "verdict": cert.verdict,
                "primes_used": cert.primes,
            });
            let params = Parameters {
                a: Some(shape.a),
                b: Some(shape.b),
                construction: Some(if *fused { "fused" } else { "composed" }.into()),
                primes: opts.primes,
                ..Parameters::default()
            };
            ("psi", params, Status::Ok, outputs, artifacts, None)
        }
        Command::Verify { claims, max_ab } => {
            let list = parse_claims(claims)?;
            let reports = list.iter().map(|&c| run_claim(c, *max_ab)).collect::<Result<Vec<_>, _>>()?;
            let status = if reports.iter().all(|r| r.passed) { Status::Ok } else { Status::Violated };
            let params = Parameters {
                claims: Some(list.iter().map(|c| c.to_string()).collect()),
                max_ab: Some(*max_ab),
                ..Parameters::default()
            };
            ("verify", params, status, json!({ "reports": reports }), Vec::new(), None)
        }
        Command::Foulkes { shape, format } | Command::Hermite { shape, format } => {
            let foulkes = matches!(cli.command, Command::Foulkes { .. });
            let (left, right) = (vector(cache, shape.a, shape.b)?, vector(cache, shape.b, shape.a)?);
            let report = if foulkes {
                foulkes_compare(shape.a, shape.b, &left, &right)?
            } else {
                hermite_compare(shape.a, shape.b, &left, &right)?
            };
            let status = if report.holds() { Status::Ok } else { Status::Violated };
            let csv = format.csv.then(|| comparison_csv(&report)).transpose()?;
            let name = if foulkes { "foulkes" } else { "hermite" };
            (name, shape_params(shape.a, shape.b), status, serde_json::to_value(&report)?, Vec::new(), csv)
        }
        Command::Mult { shape, lambda, format } => {
            let v = vector(cache, shape.a, shape.b)?;
            let mut params = shape_params(shape.a, shape.b);
            let (outputs, csv) = match lambda {
                Some(s) => {
                    let l: Partition = s.parse()?;
                    if l.size() != shape.a * shape.b {
                        return Err(Error::InvalidArgument(format!("{l} is not a partition of {}", shape.a * shape.b)).into());
                    }
                    params.lambda = Some(l.to_string());
                    let m = v.get(&l);
                    let csv = format.csv.then(|| table_csv(&["lambda", "multiplicity"], [[l.to_string(), m.to_string()]]));
                    (json!({ "lambda": l, "multiplicity": m.to_string().parse::<u64>()? }), csv.transpose()?)
                }
                None => {
                    let csv = format
                        .csv
                        .then(|| {
                            table_csv(
                                &["lambda", "multiplicity"],
                                v.mults.iter().rev().map(|(l, m)| [l.to_string(), m.to_string()]),
                            )
                        })
                        .transpose()?;
                    (serde_json::to_value(&v)?, csv)
                }
            };
            ("mult", params, Status::Ok, outputs, Vec::new(), csv)
        }
        Command::Poly { shape, n, export } => {
            let m = psi_poly(shape.a, shape.b, *n)?;
            let cert = certify_injective_with(&m, &CertifyOptions::default())?;
            let mut artifacts = Vec::new();
            if let Some(path) = export {
                write_export(&m, POLY_TAG, path)?;
                artifacts.push(path.display().to_string());
            }
            let outputs = json!({
                "domain_dim": m.cols(),
                "codomain_dim": m.rows(),
                "nnz": m.nnz(),
                "rank": cert.rank,
                "injective": cert.injective,
                "method": cert.method,
                "verdict": cert.verdict,
                "convention": PSI_POLY_CONVENTION,
            });
            let params = Parameters { n: Some(*n), primes: cert.primes.clone(), ..shape_params(shape.a, shape.b) };
            ("poly", params, Status::Ok, outputs, artifacts, None)
        }
    };
    let result = RunResult {
        command: name.to_string(),
        parameters,
        status,
        outputs,
        artifacts,
        timing_ms: start.elapsed().as_millis() as u64,
    };
    Ok(Outcome { result, csv })
}

fn shape_params(a: usize, b: usize) -> Parameters {
    Parameters { a: Some(a), b: Some(b), ..Parameters::default() }
}

fn vector(cache: &Cache, a: usize, b: usize) -> anyhow::Result<MultiplicityVector> {
    // The permutation character enforces the size limit before the table is built.
    let perm = cache.perm_character(a, b)?;
    let table = cache.character_table(a * b)?;
    Ok(multiplicity_vector_from(&table, &perm)?)
}

fn write_export(m: &SparseExactMatrix, tag: &str, path: &std::path::Path) -> anyhow::Result<()> {
    fs::write(path, fhm::to_string(m, tag)).with_context(|| format!("writing {}", path.display()))
}

fn table_csv<const N: usize>(header: &[&str; N], rows: impl IntoIterator<Item = [String; N]>) -> anyhow::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn comparison_csv(report: &MultiplicityComparison) -> anyhow::Result<String> {
    table_csv(
        &["lambda", "left", "right", "holds"],
        report.rows.iter().map(|r| {
            let holds = !report.violations.contains(&r.lambda);
            [r.lambda.to_string(), r.left.to_string(), r.right.to_string(), holds.to_string()]
        }),
    )
}

/// Serializes a result the way the binary prints it.
pub fn render(result: &RunResult, pretty: bool) -> String {
    let v: Value = serde_json::to_value(result).expect("results serialize");
    if pretty {
        serde_json::to_string_pretty(&v).expect("values serialize")
    } else {
        serde_json::to_string(&v).expect("values serialize")
    }
}
