//! Full classification run: one counting pass per n serves all 256 sets,
//! sets are grouped into orbits, every registry claim is checked against the
//! enumerated sequences, and orbits with equal sequences form Wilf classes.

use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::enumeration::{Enumerator, Method};
use crate::error::{Error, Result};
use crate::formulas::{eval_formula, FormulaId};
use crate::registry::{lookup, registry, superseded_claims, RegistryEntry};
use crate::signed::PatternSet;
use crate::symmetry::all_orbits;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verification {
    Verified,
    Mismatch,
    EnumerationOnly,
}

impl Verification {
    pub fn as_str(self) -> &'static str {
        match self {
            Verification::Verified => "verified",
            Verification::Mismatch => "mismatch",
            Verification::EnumerationOnly => "enumeration_only",
        }
    }
}

mod decimal {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(xs: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(xs.iter().map(|x| x.to_str_radix(10)))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigUint>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| {
                if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(serde::de::Error::custom(format!("`{s}` is not a decimal integer")));
                }
                BigUint::parse_bytes(s.as_bytes(), 10)
                    .ok_or_else(|| serde::de::Error::custom(format!("`{s}` is not a decimal integer")))
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRecord {
    pub orbit_id: usize,
    pub representative: PatternSet,
    pub paper_names: Vec<String>,
    pub members: Vec<PatternSet>,
    /// b_0, ..., b_{n_max}.
    #[serde(with = "decimal")]
    pub sequence: Vec<BigUint>,
    pub formula_ids: Vec<FormulaId>,
    pub verification: Verification,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub details: Option<String>,
    pub wilf_class: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PassTiming {
    pub n: usize,
    pub millis: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metadata {
    pub tool_version: String,
    /// Only present when timing was requested, so payloads stay reproducible.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing: Option<Vec<PassTiming>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusTable {
    pub n_max: usize,
    pub records: Vec<CensusRecord>,
    pub metadata: Metadata,
}

impl CensusTable {
    pub fn record_of(&self, set: PatternSet) -> Option<&CensusRecord> {
        self.records.iter().find(|r| r.members.contains(&set))
    }

    fn validate(&self) -> Result<()> {
        let bad = |why: String| Err(Error::SchemaMismatch(why));
        let mut seen = [false; 256];
        for (i, r) in self.records.iter().enumerate() {
            if r.orbit_id != i {
                return bad(format!("record {i} has orbit_id {}", r.orbit_id));
            }
            if r.sequence.len() != self.n_max + 1 {
                return bad(format!("orbit {i} has {} values, expected {}", r.sequence.len(), self.n_max + 1));
            }
            if !r.members.contains(&r.representative) {
                return bad(format!("orbit {i} does not list its representative"));
            }
            for m in &r.members {
                if std::mem::replace(&mut seen[m.mask() as usize], true) {
                    return bad(format!("set {{{m}}} appears in more than one orbit"));
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return bad("records do not cover all 256 pattern sets".into());
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Disagreement {
    pub n: u32,
    pub expected: BigUint,
    pub enumerated: BigUint,
}

#[derive(Clone, Debug)]
pub struct EntryReport {
    pub entry: RegistryEntry,
    /// Values of n compared.
    pub checked: Vec<u32>,
    pub mismatches: Vec<Disagreement>,
    /// Informational: n below `min_n` where the closed form also holds.
    pub holds_below: Vec<u32>,
    /// Informational: n inside the stated range but below `min_n` where the
    /// closed form fails.
    pub fails_in_stated_range: Vec<Disagreement>,
}

impl EntryReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct ClaimReport {
    pub statement: &'static str,
    pub n: u64,
    pub claimed: BigUint,
    pub enumerated: BigUint,
}

impl ClaimReport {
    pub fn refuted(&self) -> bool {
        self.claimed != self.enumerated
    }
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub n_max: usize,
    pub entries: Vec<EntryReport>,
    pub superseded: Vec<ClaimReport>,
}

impl VerificationReport {
    pub fn mismatch_count(&self) -> usize {
        self.entries.iter().filter(|e| !e.passed()).count()
    }

    pub fn is_clean(&self) -> bool {
        self.mismatch_count() == 0
    }
}

/// b_n(T) for every T and every n in 0..=n_max, indexed `[n][mask]`.
pub struct CountTable(pub Vec<Vec<BigUint>>);

impl CountTable {
    pub fn get(&self, n: usize, set: PatternSet) -> &BigUint {
        &self.0[n][set.mask() as usize]
    }

    pub fn n_max(&self) -> usize {
        self.0.len() - 1
    }

    pub fn sequence(&self, set: PatternSet) -> Vec<BigUint> {
        self.0.iter().map(|row| row[set.mask() as usize].clone()).collect()
    }
}

/// Counts for all 256 sets at each n. `Method::Mask` makes one histogram pass
/// per n; the other methods count every set separately.
pub fn count_table(
    enumerator: &Enumerator,
    method: Method,
    n_max: usize,
    mut timing: Option<&mut Vec<PassTiming>>,
) -> Result<CountTable> {
    let mut rows = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let start = Instant::now();
        let row = match method {
            Method::Mask => enumerator.counts_all_subsets(n)?,
            _ => PatternSet::all()
                .map(|t| Ok(enumerator.count(method, n, t)?.value))
                .collect::<Result<Vec<_>>>()?,
        };
        if let Some(t) = timing.as_deref_mut() {
            t.push(PassTiming {
                n,
                millis: start.elapsed().as_millis() as u64,
            });
        }
        rows.push(row);
    }
    Ok(CountTable(rows))
}

/// Compares every entry against enumerated counts using `eval` for the
/// closed forms.
pub fn verify_entries(
    entries: &[RegistryEntry],
    counts: &CountTable,
    eval: &dyn Fn(FormulaId, u64) -> BigUint,
) -> Vec<EntryReport> {
    let n_max = counts.n_max() as u32;
    entries
        .iter()
        .map(|entry| {
            let mut report = EntryReport {
                entry: entry.clone(),
                checked: Vec::new(),
                mismatches: Vec::new(),
                holds_below: Vec::new(),
                fails_in_stated_range: Vec::new(),
            };
            for n in 0..=n_max {
                let expected = eval(entry.formula, n as u64);
                let enumerated = counts.get(n as usize, entry.set).clone();
                let agree = expected == enumerated;
                if n >= entry.min_n {
                    report.checked.push(n);
                    if !agree {
                        report.mismatches.push(Disagreement { n, expected, enumerated });
                    }
                } else if agree {
                    report.holds_below.push(n);
                } else if n >= entry.stated_min_n {
                    report.fails_in_stated_range.push(Disagreement { n, expected, enumerated });
                }
            }
            report
        })
        .collect()
}

pub fn check_superseded(counts: &CountTable) -> Vec<ClaimReport> {
    superseded_claims()
        .into_iter()
        .filter(|c| c.witness_n as usize <= counts.n_max())
        .map(|c| ClaimReport {
            statement: c.statement,
            n: c.witness_n,
            claimed: (c.eval)(c.witness_n),
            enumerated: counts.get(c.witness_n as usize, c.set).clone(),
        })
        .collect()
}

/// Checks the full registry on 0..=n_max with histogram counting.
pub fn verify_registry(enumerator: &Enumerator, n_max: usize) -> Result<VerificationReport> {
    verify_registry_with(enumerator, n_max, &|id, n| eval_formula(id, n))
}

pub fn verify_registry_with(
    enumerator: &Enumerator,
    n_max: usize,
    eval: &dyn Fn(FormulaId, u64) -> BigUint,
) -> Result<VerificationReport> {
    let counts = count_table(enumerator, Method::Mask, n_max, None)?;
    Ok(VerificationReport {
        n_max,
        entries: verify_entries(&registry(), &counts, eval),
        superseded: check_superseded(&counts),
    })
}

#[derive(Clone, Debug, Default)]
pub struct CensusOptions<'a> {
    pub method: Option<Method>,
    pub timing: bool,
    /// A previous table whose sequences are reused for n up to its n_max.
    pub cache: Option<&'a CensusTable>,
}

pub fn run_census(enumerator: &Enumerator, n_max: usize) -> Result<CensusTable> {
    run_census_with(enumerator, n_max, &CensusOptions::default())
}

pub fn run_census_with(enumerator: &Enumerator, n_max: usize, options: &CensusOptions) -> Result<CensusTable> {
    if n_max > enumerator.cap() {
        return Err(Error::CapExceeded {
            n: n_max,
            cap: enumerator.cap(),
        });
    }
    let orbits = all_orbits();
    let method = options.method.unwrap_or(Method::Mask);
    let mut timing = options.timing.then(Vec::new);

    // sequences of the orbit representatives, extended pass by pass
    let mut sequences: Vec<Vec<BigUint>> = vec![Vec::new(); orbits.len()];
    let mut first_new = 0;
    if let Some(cache) = options.cache {
        cache.validate()?;
        let by_rep: BTreeMap<PatternSet, &CensusRecord> =
            cache.records.iter().map(|r| (r.representative, r)).collect();
        for (seq, orbit) in sequences.iter_mut().zip(&orbits) {
            let cached = by_rep
                .get(&orbit.representative)
                .ok_or_else(|| Error::SchemaMismatch(format!("cache lacks orbit of {{{}}}", orbit.representative)))?;
            seq.extend(cached.sequence.iter().take(n_max + 1).cloned());
        }
        first_new = cache.n_max.min(n_max) + 1;
    }
    for n in first_new..=n_max {
        let start = Instant::now();
        let row: Vec<BigUint> = match method {
            Method::Mask => enumerator.counts_all_subsets(n)?,
            _ => {
                let mut row = vec![BigUint::default(); 256];
                for orbit in &orbits {
                    let v = enumerator.count(method, n, orbit.representative)?.value;
                    for m in &orbit.members {
                        row[m.mask() as usize] = v.clone();
                    }
                }
                row
            }
        };
        for (seq, orbit) in sequences.iter_mut().zip(&orbits) {
            seq.push(row[orbit.representative.mask() as usize].clone());
        }
        if let Some(t) = timing.as_mut() {
            t.push(PassTiming {
                n,
                millis: start.elapsed().as_millis() as u64,
            });
        }
    }

    let counts = CountTable(
        (0..=n_max)
            .map(|n| {
                let mut row = vec![BigUint::default(); 256];
                for (seq, orbit) in sequences.iter().zip(&orbits) {
                    for m in &orbit.members {
                        row[m.mask() as usize] = seq[n].clone();
                    }
                }
                row
            })
            .collect(),
    );
    let reg = registry();
    let mut records: Vec<CensusRecord> = orbits
        .iter()
        .zip(sequences)
        .enumerate()
        .map(|(orbit_id, (orbit, sequence))| {
            let entries: Vec<RegistryEntry> = lookup(&reg, orbit.representative).into_iter().cloned().collect();
            let reports = verify_entries(&entries, &counts, &|id, n| eval_formula(id, n));
            let (verification, details) = summarize(&reports);
            let mut formula_ids: Vec<FormulaId> = Vec::new();
            for e in &entries {
                if !formula_ids.contains(&e.formula) {
                    formula_ids.push(e.formula);
                }
            }
            CensusRecord {
                orbit_id,
                representative: orbit.representative,
                paper_names: entries.iter().map(|e| e.paper_name.to_string()).collect(),
                members: orbit.members.clone(),
                sequence,
                formula_ids,
                verification,
                details,
                wilf_class: 0,
            }
        })
        .collect();
    assign_wilf_classes(&mut records);
    Ok(CensusTable {
        n_max,
        records,
        metadata: Metadata {
            tool_version: TOOL_VERSION.to_string(),
            timing,
        },
    })
}

fn summarize(reports: &[EntryReport]) -> (Verification, Option<String>) {
    let failures: Vec<String> = reports
        .iter()
        .filter(|r| !r.passed())
        .map(|r| {
            let d = &r.mismatches[0];
            format!(
                "{} ({}) differs at n = {}: expected {}, enumerated {}",
                r.entry.paper_name, r.entry.formula, d.n, d.expected, d.enumerated
            )
        })
        .collect();
    if !failures.is_empty() {
        (Verification::Mismatch, Some(failures.join("; ")))
    } else if reports.iter().any(|r| !r.checked.is_empty()) {
        (Verification::Verified, None)
    } else {
        (Verification::EnumerationOnly, None)
    }
}

/// Groups orbit ids by identical sequence. Class ids follow the first orbit
/// id in each class.
pub fn wilf_classes(table: &CensusTable) -> Vec<Vec<usize>> {
    let mut classes: Vec<(Vec<BigUint>, Vec<usize>)> = Vec::new();
    for r in &table.records {
        match classes.iter_mut().find(|(seq, _)| *seq == r.sequence) {
            Some((_, ids)) => ids.push(r.orbit_id),
            None => classes.push((r.sequence.clone(), vec![r.orbit_id])),
        }
    }
    classes.into_iter().map(|(_, ids)| ids).collect()
}

fn assign_wilf_classes(records: &mut [CensusRecord]) {
    let mut classes: Vec<Vec<BigUint>> = Vec::new();
    for r in records.iter_mut() {
        r.wilf_class = match classes.iter().position(|s| *s == r.sequence) {
            Some(i) => i,
            None => {
                classes.push(r.sequence.clone());
                classes.len() - 1
            }
        };
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Json,
    Csv,
}

pub fn export(table: &CensusTable, format: ExportFormat) -> Result<Vec<u8>> {
    match format {
        ExportFormat::Json => {
            let mut out = serde_json::to_vec_pretty(table).map_err(|e| Error::SchemaMismatch(e.to_string()))?;
            out.push(b'\n');
            Ok(out)
        }
        ExportFormat::Csv => {
            let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
            let mut header: Vec<String> = vec!["orbit_id".into(), "representative".into(), "size".into()];
            header.extend((0..=table.n_max).map(|n| format!("b_{n}")));
            header.extend(["formula_ids".into(), "verification".into(), "wilf_class".into()]);
            w.write_record(&header).map_err(csv_error)?;
            for r in &table.records {
                let mut row = vec![
                    r.orbit_id.to_string(),
                    r.representative.to_string(),
                    r.representative.len().to_string(),
                ];
                row.extend(r.sequence.iter().map(|b| b.to_string()));
                row.push(r.formula_ids.iter().map(|f| f.as_str()).collect::<Vec<_>>().join(";"));
                row.push(r.verification.as_str().into());
                row.push(r.wilf_class.to_string());
                w.write_record(&row).map_err(csv_error)?;
            }
            w.into_inner().map_err(|e| Error::Io(e.into_error()))
        }
    }
}

fn csv_error(e: csv::Error) -> Error {
    Error::Io(std::io::Error::other(e))
}

pub fn parse_table(bytes: &[u8]) -> Result<CensusTable> {
    let table: CensusTable = serde_json::from_slice(bytes).map_err(|e| Error::SchemaMismatch(e.to_string()))?;
    table.validate()?;
    Ok(table)
}

/// Reads a census table previously written as JSON.
pub fn load_cache(path: impl AsRef<Path>) -> Result<CensusTable> {
    parse_table(&std::fs::read(path)?)
}
