use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use sigpat::census::{export, load_cache, run_census_with, verify_registry_with, CensusOptions, ExportFormat};
use sigpat::enumeration::{Enumerator, Method, DEFAULT_CAP};
use sigpat::formulas::{eval_formula, FormulaId};
use sigpat::symmetry::all_orbits;
use sigpat::registry::{lookup, registry};
use sigpat::PatternSet;

#[derive(Parser)]
#[command(name = "sigpat", version, about = "Count signed permutations avoiding 2-letter signed patterns")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Largest n accepted by any counting operation.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    cap: usize,

    /// Worker threads for parallel passes (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,

    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Print b_n(T).
    Count {
        #[arg(long)]
        patterns: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "backtrack")]
        method: Method,
    },
    /// Print b_0(T), ..., b_{n_max}(T).
    Sequence {
        #[arg(long)]
        patterns: String,
        #[arg(long)]
        n_max: usize,
        #[arg(long, default_value = "backtrack")]
        method: Method,
    },
    /// List orbits of pattern sets under reversal, barring and complement.
    Orbits {
        /// Only orbits of sets with this many patterns.
        #[arg(long)]
        size: Option<usize>,
    },
    /// Classify all 256 pattern sets up to n_max.
    Census {
        #[arg(long)]
        n_max: usize,
        #[arg(long, default_value = "mask")]
        method: Method,
        /// JSON census file reused for n up to its n_max and rewritten afterwards.
        #[arg(long)]
        cache: Option<PathBuf>,
        /// Record per-pass timing in the table metadata.
        #[arg(long)]
        timing: bool,
    },
    /// Check every closed form against enumeration; exits 1 on any mismatch.
    Verify {
        #[arg(long, default_value_t = 7)]
        n_max: usize,
        /// Add 1 to one formula's values, as a negative control.
        #[arg(long)]
        mutate: Option<FormulaId>,
    },
}

fn parse_patterns(text: &str) -> Result<PatternSet, String> {
    let (set, duplicates) = PatternSet::parse_with_duplicates(text).map_err(|e| e.to_string())?;
    for p in duplicates {
        eprintln!("warning: pattern `{p}` listed more than once");
    }
    Ok(set)
}

fn lookup_names(canonical: PatternSet) -> Vec<&'static str> {
    lookup(&registry(), canonical).into_iter().map(|e| e.paper_name).collect()
}

fn sequence_json(set: PatternSet, values: &[String]) -> serde_json::Value {
    serde_json::json!({ "patterns": set.to_pairs(), "sequence": values })
}

struct Failure {
    code: u8,
    message: String,
}

fn usage(message: impl ToString) -> Failure {
    Failure {
        code: 2,
        message: message.to_string(),
    }
}

fn runtime(message: impl ToString) -> Failure {
    Failure {
        code: 1,
        message: message.to_string(),
    }
}

fn run(cli: Cli) -> Result<(String, u8), Failure> {
    let enumerator = Enumerator::new().with_cap(cli.cap).map_err(usage)?;
    let mut exit = 0;
    let out = match cli.command {
        Command::Count { patterns, n, method } => {
            let set = parse_patterns(&patterns).map_err(usage)?;
            if n > enumerator.cap() {
                return Err(usage(format!("n = {n} exceeds the cap {}", enumerator.cap())));
            }
            let value = enumerator.count(method, n, set).map_err(runtime)?.value;
            match cli.format {
                Format::Json => format!(
                    "{}\n",
                    serde_json::json!({ "patterns": set.to_pairs(), "n": n, "method": method.as_str(), "value": value.to_string() })
                ),
                _ => format!("{value}\n"),
            }
        }
        Command::Sequence { patterns, n_max, method } => {
            let set = parse_patterns(&patterns).map_err(usage)?;
            if n_max > enumerator.cap() {
                return Err(usage(format!("n-max = {n_max} exceeds the cap {}", enumerator.cap())));
            }
            let values: Vec<String> = enumerator
                .sequence(method, set, n_max)
                .map_err(runtime)?
                .iter()
                .map(|v| v.to_string())
                .collect();
            match cli.format {
                Format::Plain => values.iter().enumerate().map(|(n, v)| format!("{n}\t{v}\n")).collect(),
                Format::Csv => format!("{}\n", values.join(",")),
                Format::Json => format!("{}\n", sequence_json(set, &values)),
            }
        }
        Command::Orbits { size } => {
            if size.is_some_and(|k| k > 8) {
                return Err(usage("--size must be between 0 and 8"));
            }
            let orbits: Vec<(usize, _)> = all_orbits()
                .into_iter()
                .enumerate()
                .filter(|(_, o)| size.is_none_or(|k| o.set_size() == k))
                .collect();
            match cli.format {
                Format::Plain => orbits
                    .iter()
                    .map(|(id, o)| {
                        format!(
                            "{id}\t{}\t{}\t{{{}}}\t{}\n",
                            o.set_size(),
                            o.members.len(),
                            o.representative,
                            lookup_names(o.representative).join(" ")
                        )
                    })
                    .collect(),
                Format::Csv => {
                    let mut s = String::from("orbit_id,size,orbit_size,representative,paper_names\n");
                    for (id, o) in &orbits {
                        s.push_str(&format!(
                            "{id},{},{},\"{}\",{}\n",
                            o.set_size(),
                            o.members.len(),
                            o.representative,
                            lookup_names(o.representative).join(";")
                        ));
                    }
                    s
                }
                Format::Json => {
                    let rows: Vec<serde_json::Value> = orbits
                        .iter()
                        .map(|(id, o)| {
                            serde_json::json!({
                                "orbit_id": id,
                                "size": o.set_size(),
                                "representative": o.representative,
                                "members": o.members,
                                "paper_names": lookup_names(o.representative),
                            })
                        })
                        .collect();
                    format!("{}\n", serde_json::Value::Array(rows))
                }
            }
        }
        Command::Census {
            n_max,
            method,
            cache,
            timing,
        } => {
            if n_max > enumerator.cap() {
                return Err(usage(format!("n-max = {n_max} exceeds the cap {}", enumerator.cap())));
            }
            let cached = match &cache {
                Some(path) if path.exists() => Some(load_cache(path).map_err(runtime)?),
                _ => None,
            };
            let options = CensusOptions {
                method: Some(method),
                timing,
                cache: cached.as_ref(),
            };
            let table = run_census_with(&enumerator, n_max, &options).map_err(runtime)?;
            if let Some(path) = &cache {
                let bigger = cached.as_ref().is_none_or(|c| c.n_max < n_max);
                if bigger {
                    let bytes = export(&table, ExportFormat::Json).map_err(runtime)?;
                    std::fs::write(path, bytes).map_err(runtime)?;
                }
            }
            match cli.format {
                Format::Json => String::from_utf8(export(&table, ExportFormat::Json).map_err(runtime)?).unwrap(),
                Format::Csv => String::from_utf8(export(&table, ExportFormat::Csv).map_err(runtime)?).unwrap(),
                Format::Plain => {
                    let mut s = String::new();
                    for r in &table.records {
                        let seq: Vec<String> = r.sequence.iter().map(|v| v.to_string()).collect();
                        let ids: Vec<&str> = r.formula_ids.iter().map(|f| f.as_str()).collect();
                        s.push_str(&format!(
                            "{}\t{}\t{{{}}}\t{}\t{}\t{}\t{}\n",
                            r.orbit_id,
                            r.representative.len(),
                            r.representative,
                            seq.join(","),
                            ids.join(";"),
                            r.verification.as_str(),
                            r.wilf_class
                        ));
                    }
                    if let Some(t) = &table.metadata.timing {
                        for p in t {
                            s.push_str(&format!("# n = {}: {} ms\n", p.n, p.millis));
                        }
                    }
                    s
                }
            }
        }
        Command::Verify { n_max, mutate } => {
            if n_max > enumerator.cap() {
                return Err(usage(format!("n-max = {n_max} exceeds the cap {}", enumerator.cap())));
            }
            let eval = |id: FormulaId, n: u64| {
                let v = eval_formula(id, n);
                if Some(id) == mutate {
                    v + 1u32
                } else {
                    v
                }
            };
            let report = verify_registry_with(&enumerator, n_max, &eval).map_err(runtime)?;
            if !report.is_clean() {
                exit = 1;
            }
            render_report(&report, cli.format)
        }
    };
    Ok((out, exit))
}

fn render_report(report: &sigpat::VerificationReport, format: Format) -> String {
    if format == Format::Json {
        let entries: Vec<serde_json::Value> = report
            .entries
            .iter()
            .map(|e| {
                serde_json::json!({
                    "paper_name": e.entry.paper_name,
                    "formula": e.entry.formula,
                    "min_n": e.entry.min_n,
                    "stated_min_n": e.entry.stated_min_n,
                    "status": if e.passed() { "pass" } else { "fail" },
                    "mismatches": e.mismatches.iter().map(|d| serde_json::json!({
                        "n": d.n, "expected": d.expected.to_string(), "enumerated": d.enumerated.to_string()
                    })).collect::<Vec<_>>(),
                    "holds_below": e.holds_below,
                })
            })
            .collect();
        let claims: Vec<serde_json::Value> = report
            .superseded
            .iter()
            .map(|c| {
                serde_json::json!({
                    "statement": c.statement, "n": c.n,
                    "claimed": c.claimed.to_string(), "enumerated": c.enumerated.to_string(),
                    "refuted": c.refuted(),
                })
            })
            .collect();
        let doc = serde_json::json!({
            "n_max": report.n_max,
            "mismatches": report.mismatch_count(),
            "entries": entries,
            "superseded": claims,
        });
        return format!("{}\n", serde_json::to_string_pretty(&doc).unwrap());
    }
    let mut s = String::new();
    for e in &report.entries {
        let range = format!("{}..={}", e.entry.min_n, report.n_max);
        if e.passed() {
            s.push_str(&format!("PASS {} {} n={range}\n", e.entry.paper_name, e.entry.formula));
        } else {
            let d = &e.mismatches[0];
            s.push_str(&format!(
                "FAIL {} {} n={range} first mismatch at n={}: expected {}, enumerated {}\n",
                e.entry.paper_name, e.entry.formula, d.n, d.expected, d.enumerated
            ));
        }
        for d in &e.fails_in_stated_range {
            s.push_str(&format!(
                "NOTE {} {} stated from n={} but fails at n={}: expected {}, enumerated {}\n",
                e.entry.paper_name, e.entry.formula, e.entry.stated_min_n, d.n, d.expected, d.enumerated
            ));
        }
        if !e.holds_below.is_empty() {
            let ns: Vec<String> = e.holds_below.iter().map(|n| n.to_string()).collect();
            s.push_str(&format!(
                "NOTE {} {} also holds for n={}\n",
                e.entry.paper_name,
                e.entry.formula,
                ns.join(",")
            ));
        }
    }
    for c in &report.superseded {
        let verdict = if c.refuted() { "REFUTED" } else { "NOT REFUTED" };
        s.push_str(&format!(
            "{verdict} {} at n={}: claimed {}, enumerated {}\n",
            c.statement, c.n, c.claimed, c.enumerated
        ));
    }
    s.push_str(&format!(
        "{} of {} entries verified, {} mismatches\n",
        report.entries.len() - report.mismatch_count(),
        report.entries.len(),
        report.mismatch_count()
    ));
    s
}

fn configure_threads(threads: Option<usize>) -> Result<(), Failure> {
    #[cfg(feature = "parallel")]
    if let Some(t) = threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(runtime)?;
    }
    #[cfg(not(feature = "parallel"))]
    let _ = threads;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let out_path = cli.out.clone();
    let timing = matches!(cli.command, Command::Census { timing: true, .. });
    let result = configure_threads(cli.threads).and_then(|_| run(cli));
    match result {
        Ok((text, code)) => {
            let written = match &out_path {
                Some(path) => std::fs::write(path, text.as_bytes()),
                None => std::io::stdout().lock().write_all(text.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            if timing {
                eprintln!("elapsed: {:.3} s", started.elapsed().as_secs_f64());
            }
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
