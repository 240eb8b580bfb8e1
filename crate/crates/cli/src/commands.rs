//! Command bodies: each returns a report rendered by `main`.

use riordan_core::compression::{
    build_compressed, check_compressed_recurrences, compress_matrix, compressed_identity_check,
    hat_series, source_rows_needed,
};
use riordan_core::matrix::read_matrix;
use riordan_core::multi_almost::{
    build_multi_almost, check_recurrences, mar_decompose, mar_factorize, mar_inv, mar_mul,
    mar_production, mar_seq_char, mar_verify_production, reconstruct_from_parts, MultiAlmostSpec,
    SequenceChar,
};
use riordan_core::oracle::{
    default_terms, detect_stride, extract_sequences, extract_sequences_default, reconstruct,
    seed_rows,
};
use riordan_core::series_lang::evaluate_str;
use riordan_core::{Error, LowerTriMatrix, MatrixFile};
use serde_json::json;

use crate::render::{checks_json, spec_json, spec_text, Check, SeqLists};
use crate::{ExtractJob, InvJob, MulJob, Output, SpecArgs};

/// Largest precision the automatic raise will try.
const MAX_PRECISION: usize = 4096;

pub struct Report {
    pub text: String,
    pub json: serde_json::Value,
    pub verified: bool,
}

pub enum Failure {
    /// Bad arguments, unparsable series, stride or precision problems.
    Input(String),
    /// A matrix that violates the recurrences it is checked against.
    Math(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Inconsistent { .. } | Error::SingularSystem(_) => Failure::Math(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

type Run<T> = std::result::Result<T, Failure>;

fn load(args: &SpecArgs, b: &str, g: &str, f: &[String], n: usize) -> riordan_core::Result<MultiAlmostSpec> {
    if f.len() != args.ell {
        return Err(Error::InvalidSpec(format!(
            "--ell {} needs {} multipliers, got {}",
            args.ell,
            args.ell,
            f.len()
        )));
    }
    let parse = |what: &str, text: &str| {
        evaluate_str(text, n).map_err(|e| Error::InvalidSpec(format!("{what} = {text:?}: {e}")))
    };
    let f = f
        .iter()
        .enumerate()
        .map(|(j, text)| parse(&format!("f{}", j + 1), text))
        .collect::<riordan_core::Result<Vec<_>>>()?;
    MultiAlmostSpec::new(args.ell, parse("b", b)?, parse("g", g)?, f)
}

fn load_main(args: &SpecArgs, n: usize) -> riordan_core::Result<MultiAlmostSpec> {
    load(args, &args.b, &args.g, &args.f, n)
}

/// Runs `body` at the requested precision (default `l * M`). With `auto`,
/// precision shortfalls raise `N` and retry, with a notice on stderr.
fn at_precision<T>(
    ell: usize,
    out: &Output,
    auto: bool,
    body: impl Fn(usize) -> riordan_core::Result<T>,
) -> Run<(T, usize)> {
    let mut n = out.precision.unwrap_or(ell * out.rows);
    if auto && n + 1 < out.rows {
        let raised = out.rows - 1;
        eprintln!("notice: precision raised from {n} to {raised}");
        n = raised;
    }
    loop {
        match body(n) {
            Ok(v) => return Ok((v, n)),
            Err(Error::Precision { needed, .. }) if auto && n < MAX_PRECISION => {
                let raised = (2 * n).max(needed + 1).clamp(1, MAX_PRECISION);
                eprintln!("notice: precision raised from {n} to {raised}");
                n = raised;
            }
            Err(e) => return Err(e.into()),
        }
    }
}

pub fn build(args: &SpecArgs, out: &Output) -> Run<Report> {
    let (d, n) = at_precision(args.ell, out, false, |n| build_multi_almost(&load_main(args, n)?, out.rows))?;
    Ok(Report {
        text: d.to_text(),
        json: serde_json::to_value(MatrixFile::from_lower(&d, args.ell, n)).expect("matrix file serializes"),
        verified: true,
    })
}

fn sequences(spec: &MultiAlmostSpec, count: usize) -> riordan_core::Result<SequenceChar> {
    let seq = mar_seq_char(spec)?;
    if seq.known_terms() < count {
        return Err(Error::Precision {
            needed: spec.ell() * (count + 1),
            available: spec.precision(),
        });
    }
    Ok(seq)
}

pub fn seq(args: &SpecArgs, out: &Output) -> Run<Report> {
    let (seq, _) = at_precision(args.ell, out, true, |n| sequences(&load_main(args, n)?, out.rows))?;
    let lists = SeqLists::new(&seq, out.rows);
    Ok(Report {
        text: lists.text(args.ell),
        json: lists.json(args.ell),
        verified: true,
    })
}

pub fn prodmat(args: &SpecArgs, out: &Output) -> Run<Report> {
    let ((p, v), n) = at_precision(args.ell, out, true, |n| {
        let spec = load_main(args, n)?;
        Ok((mar_production(&spec, out.rows)?, mar_verify_production(&spec, out.rows)?))
    })?;
    let check = Check::cells(format!("D*P = D shifted up by l = {}", args.ell), &v);
    let labels: Vec<String> = p.columns.iter().map(|c| c.to_string()).collect();
    Ok(Report {
        text: format!("columns: {}\n{}\n{}", labels.join(", "), p.matrix.to_text().trim_end(), check.text()),
        json: json!({
            "production": MatrixFile::from_dense(&p.matrix, args.ell, n),
            "columns": labels,
            "check": check.json(),
        }),
        verified: check.ok,
    })
}

fn spec_report(spec: &MultiAlmostSpec, rows: usize, with_matrix: bool) -> Run<Report> {
    let mut text = spec_text(spec);
    let mut value = spec_json(spec);
    if with_matrix {
        let d = build_multi_almost(spec, rows)?;
        text.push('\n');
        text.push_str(d.to_text().trim_end());
        value["matrix"] = serde_json::to_value(MatrixFile::from_lower(&d, spec.ell(), spec.precision()))
            .expect("matrix file serializes");
    }
    Ok(Report {
        text,
        json: value,
        verified: true,
    })
}

pub fn mul(job: &MulJob) -> Run<Report> {
    let (product, _) = at_precision(job.spec.ell, &job.output, false, |n| {
        let left = load_main(&job.spec, n)?;
        let right = load(&job.spec, &job.b2, &job.g2, &job.f2, n)?;
        mar_mul(&left, &right)
    })?;
    spec_report(&product, job.output.rows, job.matrix)
}

pub fn inv(job: &InvJob) -> Run<Report> {
    let (inverse, _) = at_precision(job.spec.ell, &job.output, false, |n| mar_inv(&load_main(&job.spec, n)?))?;
    spec_report(&inverse, job.output.rows, job.matrix)
}

fn equal_check(name: &str, left: &LowerTriMatrix, right: &LowerTriMatrix) -> Check {
    match left.first_difference(right) {
        None => Check::flag(name, true, format!("OK ({} rows)", left.size())),
        Some((r, c)) => Check::flag(name, false, format!("FAILED at cell ({r}, {c})")),
    }
}

/// Compressed identities are compared on `2 M` coefficients.
fn compression_checks(spec: &MultiAlmostSpec, rows: usize) -> riordan_core::Result<(LowerTriMatrix, Vec<Check>)> {
    let ell = spec.ell();
    let hat = hat_series(spec)?;
    let source = build_multi_almost(spec, source_rows_needed(ell, rows))?;
    let compressed = compress_matrix(&source, ell, rows)?.rows;
    let built = build_compressed(&hat, rows)?;
    let seq = mar_seq_char(spec)?;
    let mut checks = vec![
        equal_check("compressed array equals hat construction", &compressed, &built),
        Check::cells("compressed recurrences", &check_compressed_recurrences(&compressed, &seq)),
    ];
    for r in compressed_identity_check(&hat, &seq, 2 * rows)? {
        let detail = match r.first_mismatch {
            None => "OK".to_string(),
            Some(i) => format!("FAILED at coefficient {i}"),
        };
        checks.push(Check::flag(format!("identity {}", r.name), r.holds(), detail));
    }
    Ok((compressed, checks))
}

pub fn compress(args: &SpecArgs, out: &Output) -> Run<Report> {
    let ((m, checks), n) = at_precision(args.ell, out, true, |n| compression_checks(&load_main(args, n)?, out.rows))?;
    let lines: Vec<String> = checks.iter().map(Check::text).collect();
    Ok(Report {
        text: format!("{}\n{}", m.to_text().trim_end(), lines.join("\n")),
        json: json!({
            "compressed": MatrixFile::from_lower(&m, args.ell, n),
            "checks": checks_json(&checks),
        }),
        verified: checks.iter().all(|c| c.ok),
    })
}

fn all_checks(spec: &MultiAlmostSpec, rows: usize) -> riordan_core::Result<Vec<Check>> {
    let ell = spec.ell();
    let d = build_multi_almost(spec, rows)?;
    let seq = mar_seq_char(spec)?;
    let mut checks = vec![
        Check::cells(
            format!("production D*P = D shifted up by l = {ell}"),
            &mar_verify_production(spec, rows)?,
        ),
        Check::cells("recurrences", &check_recurrences(&d, &seq)),
    ];
    let inverse = build_multi_almost(&mar_inv(spec)?, rows)?;
    checks.push(equal_check("inverse", &inverse.mul(&d), &LowerTriMatrix::identity(rows)));
    let (q, l) = mar_factorize(spec);
    checks.push(equal_check("factorization", &build_multi_almost(&mar_mul(&q, &l)?, rows)?, &d));
    let parts = mar_decompose(spec)?;
    checks.push(equal_check("decomposition", &reconstruct_from_parts(spec.b(), &parts, rows)?, &d));
    checks.push(equal_check("reconstruction", &reconstruct(&seed_rows(spec), &seq, rows)?, &d));
    checks.push(if default_terms(ell, rows) == 0 {
        Check::flag("extraction", true, "skipped (too few rows)")
    } else {
        match extract_sequences_default(&d, ell) {
            Ok(found) => {
                let terms = found.known_terms();
                let ok = found.agrees_with(&seq, terms);
                Check::flag("extraction", ok, if ok { format!("OK ({terms} terms)") } else { "FAILED".into() })
            }
            Err(e) => Check::flag("extraction", false, format!("FAILED: {e}")),
        }
    });
    checks.extend(compression_checks(spec, rows)?.1);
    Ok(checks)
}

pub fn verify(args: &SpecArgs, out: &Output) -> Run<Report> {
    let (checks, _) = at_precision(args.ell, out, true, |n| all_checks(&load_main(args, n)?, out.rows))?;
    let ok = checks.iter().all(|c| c.ok);
    let mut lines: Vec<String> = checks.iter().map(Check::text).collect();
    let passed = checks.iter().filter(|c| c.ok).count();
    lines.push(format!("{passed} of {} checks passed", checks.len()));
    Ok(Report {
        text: lines.join("\n"),
        json: json!({ "checks": checks_json(&checks), "ok": ok }),
        verified: ok,
    })
}

pub fn extract(job: &ExtractJob) -> Run<Report> {
    let text = std::fs::read_to_string(&job.file)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", job.file.display())))?;
    let (d, file_ell) = read_matrix(&text)?;
    let ell = job
        .ell
        .or(file_ell)
        .or_else(|| detect_stride(&d))
        .ok_or_else(|| Failure::Input("cannot determine the stride; pass --ell".into()))?;
    let terms = job.terms.unwrap_or_else(|| default_terms(ell, d.size()));
    let seq = extract_sequences(&d, ell, terms)?;
    let lists = SeqLists::new(&seq, terms);
    Ok(Report {
        text: lists.text(ell),
        json: lists.json(ell),
        verified: true,
    })
}
