use std::collections::HashSet;
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use serde::Serialize;
use spectral_chroma::certify::{verify_chain, ChainReport};
use spectral_chroma::hoffman::{h_bracket, z_search, CertificateSource, CERT_THRESHOLD};
use spectral_chroma::theta::theta_k;
use spectral_chroma::{par, Error, WeightVector};

use crate::args::{Format, OutputArgs, RunArgs};
use crate::input::{load_weights, NamedGraph, Source};
use crate::report::{
    csv_row, matrix, sig, BoundsReport, HBracketReport, LevelProbe, LoSummary, ThetaKReport, Timing,
    Witness, CSV_COLUMNS,
};
use crate::CliError;

fn unix_now() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

fn io_err(path: &Path, e: std::io::Error) -> CliError {
    CliError::input(format!("{}: {e}", path.display()))
}

fn emit(out: &OutputArgs, body: &str) -> Result<(), CliError> {
    match &out.out {
        Some(p) => fs::write(p, body).map_err(|e| io_err(Path::new(p), e)),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

fn csv_text(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

fn with_timing(report: &mut BoundsReport, r: &ChainReport, out: &OutputArgs) {
    if !out.no_timestamp {
        report.timings = Some(Timing {
            theta: r.timings.theta,
            chromatic: r.timings.chromatic,
            bracket: r.timings.bracket,
            total: r.timings.total,
        });
        report.generated_unix = Some(unix_now());
    }
}

pub fn cmd_bounds(source: &Source, run: &RunArgs, out: &OutputArgs) -> Result<(), CliError> {
    let g = source.load_one()?;
    let r = par::with_threads(run.jobs, || verify_chain(&g.graph, &run.budget, run.seed))?;
    let mut report = BoundsReport::new(&g.name, &r, run.seed);
    with_timing(&mut report, &r, out);
    let body = match out.format.unwrap_or(Format::Text) {
        Format::Json => to_json(&report),
        Format::Csv => csv_text(&CSV_COLUMNS, &[csv_row(&g.name, &r)]),
        Format::Text => report.text(),
    };
    emit(out, &body)
}

pub fn cmd_theta_k(
    source: &Source,
    k: f64,
    weights: Option<&str>,
    witness: bool,
    out: &OutputArgs,
) -> Result<(), CliError> {
    let g = source.load_one()?;
    let n = g.graph.n();
    let w = match weights {
        Some(p) => load_weights(p, n)?,
        None => WeightVector::ones(n),
    };
    let t = Instant::now();
    let r = theta_k(&g.graph, &w, k)?;
    let seconds = t.elapsed().as_secs_f64();
    let report = ThetaKReport {
        schema: crate::report::SCHEMA,
        command: "theta-k",
        name: g.name.clone(),
        graph6: spectral_chroma::graph::encode_graph6(&g.graph),
        n,
        k,
        weights: w.as_slice().iter().map(|&x| sig(x)).collect(),
        value: sig(r.value),
        dual_value: sig(r.dual_value),
        primal_value: sig(r.primal_value),
        gap: sig(r.gap),
        relative_gap: sig(r.relative_gap()),
        witness: witness.then(|| Witness {
            dual_x: matrix(&r.dual_x),
            primal_z: matrix(&r.primal_z),
            primal_y: matrix(&r.primal_y),
            eta: sig(r.eta),
        }),
        seconds: (!out.no_timestamp).then_some(seconds),
        generated_unix: (!out.no_timestamp).then(unix_now),
    };
    let body = match out.format.unwrap_or(Format::Text) {
        Format::Json => to_json(&report),
        Format::Csv => csv_text(
            &["name", "n", "k", "value", "dual_value", "primal_value", "gap"],
            &[vec![
                report.name.clone(),
                n.to_string(),
                k.to_string(),
                report.value.to_string(),
                report.dual_value.to_string(),
                report.primal_value.to_string(),
                report.gap.to_string(),
            ]],
        ),
        Format::Text => report.text(),
    };
    emit(out, &body)
}

fn file_label(name: &str) -> String {
    name.chars()
        .map(|c| if c.is_ascii_alphanumeric() || "-_(),.".contains(c) { c } else { '_' })
        .collect()
}

/// `<out>.cert/`.
fn cert_dir(out: &str) -> PathBuf {
    PathBuf::from(format!("{out}.cert"))
}

pub fn cmd_hbracket(source: &Source, m: Option<usize>, run: &RunArgs, out: &OutputArgs) -> Result<(), CliError> {
    let g = source.load_one()?;
    let t = Instant::now();
    let (b, probe) = par::with_threads(run.jobs, || -> Result<_, Error> {
        let b = h_bracket(&g.graph, &run.budget, run.seed)?;
        let probe = match m {
            Some(m) if g.graph.edge_count() > 0 => {
                let r = z_search(&g.graph, m, run.budget.restarts, run.budget.iterations, run.seed)?;
                Some(LevelProbe {
                    m,
                    best_partial_sum: sig(r.value),
                    certifies: r.value > CERT_THRESHOLD,
                })
            }
            Some(m) => Some(LevelProbe {
                m,
                best_partial_sum: 0.0,
                certifies: false,
            }),
            None => None,
        };
        Ok((b, probe))
    })?;
    let seconds = t.elapsed().as_secs_f64();

    let mut files = Vec::new();
    if let Some(o) = &out.out {
        let dir = cert_dir(o);
        fs::create_dir_all(&dir).map_err(|e| io_err(&dir, e))?;
        let label = file_label(&g.name);
        let dir_name = dir.file_name().and_then(|s| s.to_str()).unwrap_or("").to_string();
        let mut write = |kind: String, body: String| -> Result<(), CliError> {
            let file = format!("{label}.{kind}.json");
            let path = dir.join(&file);
            fs::write(&path, body).map_err(|e| io_err(&path, e))?;
            files.push(format!("{dir_name}/{file}"));
            Ok(())
        };
        for c in &b.lo_certificates {
            write(format!("lo-m{}", c.m), c.to_json())?;
        }
        write("hi".into(), to_json(&b.hi_certificate))?;
    }

    let report = HBracketReport {
        schema: crate::report::SCHEMA,
        command: "hbracket",
        name: g.name.clone(),
        graph6: spectral_chroma::graph::encode_graph6(&g.graph),
        n: g.graph.n(),
        h_bracket: [b.lo, b.hi],
        theta_complement: sig(b.theta_complement),
        chi_f: HBracketReport::chi_f_from(&b.chi_f.rational_string(), b.chi_f.best_value()),
        chi_f_value: sig(b.chi_f.best_value()),
        lo_certificates: b
            .lo_certificates
            .iter()
            .map(|c| LoSummary {
                m: c.m,
                source: match c.source {
                    CertificateSource::ZSearch => "z-search",
                    CertificateSource::WeightRefutation => "weight-refutation",
                }
                .to_string(),
                value: sig(c.value),
            })
            .collect(),
        probe,
        certificate_files: files,
        seed: run.seed,
        seconds: (!out.no_timestamp).then_some(seconds),
        generated_unix: (!out.no_timestamp).then(unix_now),
    };
    let body = match out.format.unwrap_or(Format::Text) {
        Format::Json => to_json(&report),
        Format::Csv => csv_text(
            &["name", "n", "h_lo", "h_hi", "theta_complement", "chi_f"],
            &[vec![
                report.name.clone(),
                report.n.to_string(),
                b.lo.to_string(),
                b.hi.to_string(),
                report.theta_complement.to_string(),
                report.chi_f_value.to_string(),
            ]],
        ),
        Format::Text => report.text(),
    };
    emit(out, &body)
}

/// Names already present in an existing batch output.
fn done_names(path: &Path, format: Format) -> Result<HashSet<String>, CliError> {
    let mut done = HashSet::new();
    if !path.exists() {
        return Ok(done);
    }
    match format {
        Format::Csv => {
            let mut r = csv::Reader::from_path(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
            for rec in r.records() {
                let rec = rec.map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
                if let Some(name) = rec.get(0) {
                    done.insert(name.to_string());
                }
            }
        }
        _ => {
            let f = File::open(path).map_err(|e| io_err(path, e))?;
            for line in BufReader::new(f).lines() {
                let line = line.map_err(|e| io_err(path, e))?;
                if let Ok(v) = serde_json::from_str::<serde_json::Value>(&line) {
                    if let Some(name) = v.get("name").and_then(|n| n.as_str()) {
                        done.insert(name.to_string());
                    }
                }
            }
        }
    }
    Ok(done)
}

fn batch_jobs(jobs: usize) -> usize {
    if jobs > 0 {
        jobs
    } else {
        std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
    }
}

/// Processes pending graphs in chunks of `2 · jobs` and appends each chunk's
/// rows in input order, so an interrupted run loses at most one chunk.
pub fn cmd_batch(source: &Source, run: &RunArgs, out: &OutputArgs) -> Result<(), CliError> {
    let graphs = source.load()?;
    let format = out.format.unwrap_or(Format::Csv);
    if format == Format::Text && out.out.is_some() {
        return Err(CliError::input("batch writes csv or json (one object per line) to files"));
    }
    let done = match &out.out {
        Some(p) => done_names(Path::new(p), format)?,
        None => HashSet::new(),
    };
    let mut seen = done.clone();
    let pending: Vec<NamedGraph> = graphs.into_iter().filter(|g| seen.insert(g.name.clone())).collect();

    let mut sink: Box<dyn Write> = match &out.out {
        Some(p) => {
            let path = Path::new(p);
            let fresh = !path.exists() || fs::metadata(path).map(|m| m.len() == 0).unwrap_or(true);
            let mut f = OpenOptions::new()
                .create(true)
                .append(true)
                .open(path)
                .map_err(|e| io_err(path, e))?;
            if fresh && format == Format::Csv {
                f.write_all(csv_text(&CSV_COLUMNS, &[]).as_bytes())
                    .map_err(|e| io_err(path, e))?;
            }
            Box::new(f)
        }
        None => {
            let mut s = std::io::stdout();
            let head = match format {
                Format::Csv => csv_text(&CSV_COLUMNS, &[]),
                Format::Text => format!(
                    "{:<28} {:>3} {:>4} {:>5} {:>10} {:>10} {:>8} {:>4} {:>8} {}\n",
                    "name", "n", "m", "alpha", "theta", "theta(G')", "chi_f", "chi", "h", "chain"
                ),
                Format::Json => String::new(),
            };
            let _ = s.write_all(head.as_bytes());
            Box::new(s)
        }
    };

    let chunk = 2 * batch_jobs(run.jobs);
    let mut worst: Option<CliError> = None;
    for group in pending.chunks(chunk) {
        let results = par::with_threads(run.jobs, || {
            par::map(group, |g| verify_chain(&g.graph, &run.budget, run.seed))
        });
        let mut text = String::new();
        for (g, r) in group.iter().zip(results) {
            match r {
                Ok(r) => text += &render_row(g, &r, run.seed, out, format),
                Err(e) => {
                    eprintln!("{}: {e}", g.name);
                    let e = CliError::from(e);
                    if worst.as_ref().is_none_or(|w| e.code > w.code) {
                        worst = Some(e);
                    }
                }
            }
        }
        sink.write_all(text.as_bytes())
            .and_then(|_| sink.flush())
            .map_err(|e| CliError::input(format!("writing batch output: {e}")))?;
    }
    match worst {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

fn render_row(g: &NamedGraph, r: &ChainReport, seed: u64, out: &OutputArgs, format: Format) -> String {
    match format {
        Format::Csv => {
            let full = csv_text(&CSV_COLUMNS, &[csv_row(&g.name, r)]);
            full.split_once('\n').map(|(_, row)| row.to_string()).unwrap_or_default()
        }
        Format::Json => {
            let mut report = BoundsReport::new(&g.name, r, seed);
            report.command = "batch";
            with_timing(&mut report, r, out);
            let mut s = serde_json::to_string(&report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => format!(
            "{:<28} {:>3} {:>4} {:>5} {:>10.6} {:>10.6} {:>8} {:>4} {:>8} {}\n",
            g.name,
            r.n,
            r.m,
            r.alpha,
            r.theta,
            r.theta_complement,
            r.chi_f_rational.clone().unwrap_or_else(|| format!("{:.5}", r.chi_f)),
            r.chi,
            format!("[{},{}]", r.h_lo, r.h_hi),
            if r.chain_ok { "ok" } else { "violation" }
        ),
    }
}
