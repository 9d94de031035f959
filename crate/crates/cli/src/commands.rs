use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use nc3_core::catalog::{
    base_configuration, enumerate_partitions, expected_table, family, instantiate, verify_family, ExpectedRow,
    Family, FamilyId, PartitionSpec, RowCheck,
};
use nc3_core::construction::{
    check_collective_divisor, divisor_from_json, sequential_blowup, BlowupTrace, CollectiveDivisor,
};
use nc3_core::degeneration::is_d_semistable;
use nc3_core::diagnostics::{has_errors, sort_diagnostics};
use nc3_core::exactlat::LatticeVector;
use nc3_core::invariants::{smoothing_report, PicardPairings, SmoothingInvariants};
use nc3_core::ncconfig::{config_from_json, config_to_json, validate, NCConfiguration};
use nc3_core::{Diagnostic, Error, SignConventions};

use crate::args::{
    CatalogAction, CheckArgs, Format, InvariantsArgs, OutputArgs, SourceArgs, TableArgs, VerifyArgs,
};

pub const FORMAT_VERSION: &str = "nc3-output/1";

/// A failed run. `Input` covers unreadable or malformed input (exit 2);
/// the others are well-formed input that fails a check (exit 1).
#[derive(Debug)]
pub enum Failure {
    Input(String),
    Invalid { message: String, diagnostics: Vec<Diagnostic> },
    Mismatch(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Invalid { .. } | Failure::Mismatch(_) => 1,
        }
    }

    fn invalid(e: Error) -> Failure {
        match e {
            Error::Inadmissible(diagnostics) => Failure::Invalid {
                message: "the divisor is not admissible".into(),
                diagnostics,
            },
            other => Failure::Invalid {
                message: other.to_string(),
                diagnostics: Vec::new(),
            },
        }
    }
}

fn input(e: impl std::fmt::Display) -> Failure {
    Failure::Input(e.to_string())
}

/// What a command prints on success. A run that found a problem still
/// prints its report before failing.
pub struct Output {
    pub text: String,
    pub failure: Option<Failure>,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, failure: None }
    }
}

#[derive(Debug, Serialize)]
struct FileRef {
    path: String,
    sha256: String,
}

#[derive(Debug, Default, Serialize)]
struct Provenance {
    #[serde(skip_serializing_if = "Option::is_none")]
    family: Option<FamilyId>,
    #[serde(skip_serializing_if = "Option::is_none")]
    config: Option<FileRef>,
    #[serde(skip_serializing_if = "Option::is_none")]
    divisor: Option<FileRef>,
    #[serde(skip_serializing_if = "Option::is_none")]
    partition: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    components: Option<[usize; 3]>,
}

#[derive(Serialize)]
struct Record<'a, T: Serialize> {
    format_version: &'static str,
    command: &'a str,
    input: &'a Provenance,
    #[serde(flatten)]
    body: T,
}

fn to_json<T: Serialize>(command: &str, input: &Provenance, body: T) -> Result<String, Failure> {
    let record = Record {
        format_version: FORMAT_VERSION,
        command,
        input,
        body,
    };
    let mut s = serde_json::to_string_pretty(&record).map_err(input_err)?;
    s.push('\n');
    Ok(s)
}

fn input_err(e: impl std::fmt::Display) -> Failure {
    input(e)
}

fn parallel() -> bool {
    std::env::var("NC3_NO_PARALLEL").map_or(true, |v| v.is_empty() || v == "0")
}

/// Maps in parallel unless `NC3_NO_PARALLEL` is set; order is preserved.
fn map_ordered<T: Send, R: Send>(items: Vec<T>, f: impl Fn(T) -> R + Sync + Send) -> Vec<R> {
    if parallel() {
        items.into_par_iter().map(f).collect()
    } else {
        items.into_iter().map(f).collect()
    }
}

fn parse_family(id: &str) -> Result<FamilyId, Failure> {
    id.parse().map_err(input)
}

fn read_hashed(path: &Path) -> Result<(String, FileRef), Failure> {
    let bytes = fs::read(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    let sha256 = format!("{:x}", Sha256::digest(&bytes));
    let text = String::from_utf8(bytes).map_err(|_| Failure::Input(format!("{} is not UTF-8", path.display())))?;
    Ok((
        text,
        FileRef {
            path: path.display().to_string(),
            sha256,
        },
    ))
}

fn parse_components(text: &str) -> Result<[usize; 3], Failure> {
    let parts: Vec<usize> = text
        .split(',')
        .map(|t| t.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| Failure::Input(format!("--components `{text}` is not a list of integers")))?;
    let mut sorted = parts.clone();
    sorted.sort_unstable();
    if sorted != [1, 2, 3] {
        return Err(Failure::Input(format!("--components `{text}` is not a permutation of 1,2,3")));
    }
    Ok([parts[0] - 1, parts[1] - 1, parts[2] - 1])
}

struct Loaded {
    config: NCConfiguration,
    divisor: Option<CollectiveDivisor>,
    provenance: Provenance,
}

fn load(src: &SourceArgs) -> Result<Loaded, Failure> {
    let components = src.components.as_deref().map(parse_components).transpose()?;
    let mut provenance = Provenance {
        components: components.map(|c| c.map(|x| x + 1)),
        ..Provenance::default()
    };
    let (config, divisor) = if let Some(id) = &src.family {
        let id = parse_family(id)?;
        provenance.family = Some(id);
        match &src.partition {
            Some(text) => {
                let p = PartitionSpec::parse(text, id.part_kind()).map_err(input)?.canonical();
                let used = match &src.order {
                    Some(order) => {
                        let order = PartitionSpec::parse(order, id.part_kind()).map_err(input)?;
                        p.reordered(&order).map_err(input)?
                    }
                    None => p,
                };
                provenance.partition = Some(used.to_string());
                let (y, c) = instantiate(id, &used, components).map_err(Failure::invalid)?;
                (y, Some(c))
            }
            None => {
                let y = base_configuration(id).map_err(input)?;
                let y = match components {
                    Some(order) => y.permuted(order).map_err(input)?,
                    None => y,
                };
                (y, None)
            }
        }
    } else {
        let path = src.config.as_ref().expect("clap requires --family or --config");
        let (text, file) = read_hashed(path)?;
        provenance.config = Some(file);
        let y = config_from_json(&text).map_err(input)?;
        let c = match &src.divisor {
            Some(path) => {
                let (text, file) = read_hashed(path)?;
                provenance.divisor = Some(file);
                Some(divisor_from_json(&y, &text).map_err(input)?)
            }
            None => None,
        };
        match components {
            Some(order) => (
                y.permuted(order).map_err(input)?,
                c.map(|c| c.permuted(order)).transpose().map_err(input)?,
            ),
            None => (y, c),
        }
    };
    Ok(Loaded {
        config,
        divisor,
        provenance,
    })
}

fn residual_text(classes: &[LatticeVector; 3]) -> String {
    format!("D1 {}, D2 {}, D3 {}", classes[0], classes[1], classes[2])
}

fn diagnostics_text(out: &mut String, diagnostics: &[Diagnostic]) {
    if diagnostics.is_empty() {
        return;
    }
    out.push_str("diagnostics:\n");
    for d in diagnostics {
        let _ = writeln!(out, "  {d}");
    }
}

fn no_csv(command: &str) -> Failure {
    Failure::Input(format!("`{command}` has no CSV output; use --format text or json"))
}

#[derive(Serialize)]
struct CheckBody<'a> {
    configuration: &'a str,
    after_blowup: bool,
    valid: bool,
    d_semistable: bool,
    normal_class_residual: &'a [LatticeVector; 3],
    diagnostics: &'a [Diagnostic],
}

pub fn check(args: &CheckArgs, command: &str) -> Result<Output, Failure> {
    let loaded = load(&args.source)?;
    let mut diagnostics = validate(&loaded.config);
    if let Some(c) = &loaded.divisor {
        diagnostics.extend(check_collective_divisor(&loaded.config, c));
    }
    let target = if args.after_blowup {
        let c = loaded.divisor.as_ref().ok_or_else(|| {
            Failure::Input("--after-blowup needs a divisor (--partition or --divisor)".into())
        })?;
        let (blown, _) = sequential_blowup(&loaded.config, c).map_err(Failure::invalid)?;
        diagnostics = validate(&blown);
        blown
    } else {
        loaded.config
    };
    sort_diagnostics(&mut diagnostics);
    let report = is_d_semistable(&target).map_err(Failure::invalid)?;
    let valid = !has_errors(&diagnostics);

    let text = match args.output.format {
        Format::Json => to_json(
            command,
            &loaded.provenance,
            CheckBody {
                configuration: &target.name,
                after_blowup: args.after_blowup,
                valid,
                d_semistable: report.d_semistable,
                normal_class_residual: &report.residual.classes,
                diagnostics: &diagnostics,
            },
        )?,
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "configuration: {}", target.name);
            let _ = writeln!(s, "valid: {}", if valid { "yes" } else { "no" });
            let _ = writeln!(s, "d-semistable: {}", if report.d_semistable { "yes" } else { "no" });
            let _ = writeln!(s, "normal class residual: {}", residual_text(&report.residual.classes));
            diagnostics_text(&mut s, &diagnostics);
            s
        }
        Format::Csv => return Err(no_csv("check")),
    };
    let failure = (!valid).then(|| Failure::Invalid {
        message: "the configuration failed validation".into(),
        diagnostics: diagnostics.iter().filter(|d| d.is_error()).cloned().collect(),
    });
    Ok(Output { text, failure })
}

#[derive(Serialize)]
struct InvariantsBody<'a> {
    configuration: &'a str,
    invariants: &'a SmoothingInvariants,
    #[serde(skip_serializing_if = "Option::is_none")]
    pairings: Option<&'a PicardPairings>,
    #[serde(skip_serializing_if = "Option::is_none")]
    normal_class_residual: Option<&'a [LatticeVector; 3]>,
    diagnostics: &'a [Diagnostic],
    #[serde(skip_serializing_if = "Option::is_none")]
    trace: Option<&'a BlowupTrace>,
}

fn star_for(id: Option<FamilyId>, partition: Option<&str>) -> Option<bool> {
    let id = id?;
    let p = PartitionSpec::parse(partition?, id.part_kind()).ok()?.canonical();
    expected_table(id)
        .into_iter()
        .find(|r| r.partition.canonical() == p)
        .map(|r| r.star)
}

pub fn invariants(args: &InvariantsArgs, command: &str) -> Result<Output, Failure> {
    let loaded = load(&args.source)?;
    let c = loaded
        .divisor
        .as_ref()
        .ok_or_else(|| Failure::Input("invariants needs --partition (with --family) or --divisor (with --config)".into()))?;
    let mut diagnostics = validate(&loaded.config);
    diagnostics.extend(check_collective_divisor(&loaded.config, c));
    sort_diagnostics(&mut diagnostics);
    if has_errors(&diagnostics) {
        return Err(Failure::Invalid {
            message: "the configuration or divisor is not admissible".into(),
            diagnostics: diagnostics.into_iter().filter(|d| d.is_error()).collect(),
        });
    }
    let report = smoothing_report(&loaded.config, c, SignConventions::STANDARD).map_err(Failure::invalid)?;
    let residual = report
        .blown_up
        .as_ref()
        .map(|(b, _)| is_d_semistable(b).map(|r| r.residual.classes))
        .transpose()
        .map_err(Failure::invalid)?;
    let trace = if args.trace {
        report.blown_up.as_ref().map(|(_, t)| t)
    } else {
        None
    };
    let inv = &report.invariants;
    let partition = loaded.provenance.partition.clone();

    let text = match args.output.format {
        Format::Json => to_json(
            command,
            &loaded.provenance,
            InvariantsBody {
                configuration: &loaded.config.name,
                invariants: inv,
                pairings: report.pairings.as_ref(),
                normal_class_residual: residual.as_ref(),
                diagnostics: &diagnostics,
                trace,
            },
        )?,
        Format::Csv => {
            let star = star_for(loaded.provenance.family, partition.as_deref());
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["family", "partition", "h11", "h12", "euler", "star"]).map_err(input)?;
            w.write_record([
                loaded.config.name.clone(),
                partition.unwrap_or_default(),
                inv.h11.to_string(),
                inv.h12.to_string(),
                inv.euler.to_string(),
                star.map(|s| s.to_string()).unwrap_or_default(),
            ])
            .map_err(input)?;
            String::from_utf8(w.into_inner().map_err(input)?).map_err(input)?
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "configuration: {}", loaded.config.name);
            if let Some(p) = &partition {
                let _ = writeln!(s, "partition: {p}");
            }
            let m = &inv.methods;
            let _ = writeln!(s, "euler: {} [{}]", inv.euler, m.euler);
            let _ = writeln!(s, "h11: {} [{}]", inv.h11, m.h11);
            let _ = writeln!(s, "h12: {} [{}]", inv.h12, m.h12);
            if let (Some(h3), Some(hc2), Some(tag)) = (inv.h_cubed, inv.h_dot_c2, &m.pairings) {
                let _ = writeln!(s, "H^3: {h3} [{tag}]");
                let _ = writeln!(s, "H.c2: {hc2} [{tag}]");
            }
            if let Some(r) = &residual {
                let _ = writeln!(s, "normal class residual after blow-up: {}", residual_text(r));
            }
            if let Some(t) = trace {
                s.push_str("trace:\n");
                for (n, step) in t.steps.iter().enumerate() {
                    let _ = writeln!(
                        s,
                        "  {:>2}. blow up {} along {} on {} (degree {}, euler {}) -> {}",
                        n + 1,
                        step.component,
                        step.center,
                        step.surface,
                        step.h_degree,
                        step.euler,
                        step.exceptional
                    );
                }
                for k in &t.kernel_classes {
                    let _ = writeln!(s, "  kernel class {} = {}", k.label, k.coords);
                }
            }
            diagnostics_text(&mut s, &diagnostics);
            s
        }
    };
    Ok(Output::ok(text))
}

#[derive(Debug, Serialize)]
struct TableRow {
    partition: PartitionSpec,
    #[serde(skip_serializing_if = "Option::is_none")]
    invariants: Option<SmoothingInvariants>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    star: Option<bool>,
}

#[derive(Serialize)]
struct TableBody<'a> {
    family: FamilyId,
    rows: &'a [TableRow],
}

pub fn table(args: &TableArgs, command: &str) -> Result<Output, Failure> {
    let id = parse_family(&args.family)?;
    let expected = expected_table(id);
    let rows = map_ordered(enumerate_partitions(id), |p| {
        let star = expected.iter().find(|r| r.partition.canonical() == p).map(|r| r.star);
        match instantiate(id, &p, None).and_then(|(y, c)| Ok(smoothing_report(&y, &c, SignConventions::STANDARD)?.invariants)) {
            Ok(inv) => TableRow {
                partition: p,
                invariants: Some(inv),
                error: None,
                star,
            },
            Err(e) => TableRow {
                partition: p,
                invariants: None,
                error: Some(e.to_string()),
                star,
            },
        }
    });
    let provenance = Provenance {
        family: Some(id),
        ..Provenance::default()
    };
    let text = match args.output.format {
        Format::Json => to_json(command, &provenance, TableBody { family: id, rows: &rows })?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["family", "partition", "h11", "h12", "euler", "star"]).map_err(input)?;
            for r in &rows {
                let (h11, h12, e) = r
                    .invariants
                    .as_ref()
                    .map(|i| (i.h11.to_string(), i.h12.to_string(), i.euler.to_string()))
                    .unwrap_or_default();
                w.write_record([
                    id.to_string(),
                    r.partition.to_string(),
                    h11,
                    h12,
                    e,
                    r.star.map(|s| s.to_string()).unwrap_or_default(),
                ])
                .map_err(input)?;
            }
            String::from_utf8(w.into_inner().map_err(input)?).map_err(input)?
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "{:<40} {:>5} {:>5} {:>7}  star", "partition", "h11", "h12", "euler");
            for r in &rows {
                match &r.invariants {
                    Some(i) => {
                        let _ = writeln!(
                            s,
                            "{:<40} {:>5} {:>5} {:>7}  {}",
                            r.partition.to_string(),
                            i.h11,
                            i.h12,
                            i.euler,
                            if r.star == Some(true) { "*" } else { "" }
                        );
                    }
                    None => {
                        let _ = writeln!(s, "{:<40} error: {}", r.partition.to_string(), r.error.as_deref().unwrap_or(""));
                    }
                }
            }
            s
        }
    };
    let failed = rows.iter().filter(|r| r.error.is_some()).count();
    let failure = (failed > 0).then(|| Failure::Mismatch(format!("{failed} partitions could not be evaluated")));
    Ok(Output { text, failure })
}

#[derive(Serialize)]
struct VerifyBody<'a> {
    matched: usize,
    total: usize,
    rows: &'a [RowCheck],
}

fn row_pair(r: &ExpectedRow) -> String {
    format!("({}, {})", r.h11, r.h12)
}

pub fn verify(args: &VerifyArgs, command: &str) -> Result<Output, Failure> {
    let ids: Vec<FamilyId> = if args.family == "all" {
        FamilyId::ALL.to_vec()
    } else {
        vec![parse_family(&args.family)?]
    };
    let checks: Vec<RowCheck> = if parallel() {
        let jobs: Vec<(FamilyId, ExpectedRow)> = ids
            .iter()
            .flat_map(|&id| expected_table(id).into_iter().map(move |r| (id, r)))
            .collect();
        map_ordered(jobs, |(id, row)| nc3_core::catalog::check_row(id, &row, SignConventions::STANDARD))
    } else {
        ids.iter()
            .flat_map(|&id| verify_family(id, SignConventions::STANDARD))
            .collect()
    };
    let total = checks.len();
    let matched = checks.iter().filter(|c| c.matches).count();
    let provenance = Provenance::default();
    let text = match args.output.format {
        Format::Json => to_json(
            command,
            &provenance,
            VerifyBody {
                matched,
                total,
                rows: &checks,
            },
        )?,
        Format::Text => {
            let mut s = String::new();
            for c in checks.iter().filter(|c| !c.matches) {
                let computed = match (&c.computed, &c.error) {
                    (Some(i), _) => format!("({}, {}) e={}", i.h11, i.h12, i.euler),
                    (None, Some(e)) => format!("error: {e}"),
                    (None, None) => "nothing".into(),
                };
                let _ = writeln!(
                    s,
                    "mismatch: {} {} computed {} expected {}",
                    c.family,
                    c.expected.partition,
                    computed,
                    row_pair(&c.expected)
                );
            }
            let _ = writeln!(s, "{matched}/{total} rows match");
            s
        }
        Format::Csv => return Err(no_csv("verify")),
    };
    let failure = (matched != total).then(|| Failure::Mismatch(format!("{}/{total} rows match", matched)));
    Ok(Output { text, failure })
}

#[derive(Serialize)]
struct CatalogBody<'a> {
    families: &'a [Family],
}

pub fn catalog(action: &CatalogAction, command: &str) -> Result<Output, Failure> {
    match action {
        CatalogAction::List { output } => {
            let families: Vec<Family> = FamilyId::ALL.iter().map(|&id| family(id)).collect();
            let text = match output.format {
                Format::Json => to_json(command, &Provenance::default(), CatalogBody { families: &families })?,
                Format::Text => {
                    let mut s = String::new();
                    for f in &families {
                        let _ = writeln!(
                            s,
                            "{:<18} total {:<6} gamma {:<3} h2 {}  {}",
                            f.id.as_str(),
                            f.total_degree.to_string(),
                            f.gamma,
                            f.h2_declared,
                            f.description
                        );
                    }
                    s
                }
                Format::Csv => return Err(no_csv("catalog list")),
            };
            Ok(Output::ok(text))
        }
        CatalogAction::Export { family: id, output } => {
            let id = parse_family(id)?;
            let text = match output.format {
                Format::Json | Format::Text => {
                    let mut s = config_to_json(&base_configuration(id).map_err(input)?).map_err(input)?;
                    s.push('\n');
                    s
                }
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(Vec::new());
                    w.write_record(["partition", "h11", "h12", "star"]).map_err(input)?;
                    for r in expected_table(id) {
                        w.write_record([
                            r.partition.to_string(),
                            r.h11.to_string(),
                            r.h12.to_string(),
                            r.star.to_string(),
                        ])
                        .map_err(input)?;
                    }
                    String::from_utf8(w.into_inner().map_err(input)?).map_err(input)?
                }
            };
            Ok(Output::ok(text))
        }
    }
}

/// Writes the payload to `--out` or standard output.
pub fn emit(output: &OutputArgs, text: &str) -> Result<(), Failure> {
    match &output.out {
        Some(path) => write_file(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn write_file(path: &PathBuf, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))
}
