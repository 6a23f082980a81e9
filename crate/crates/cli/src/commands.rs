use std::fmt::{self, Write as _};
use std::fs;
use std::path::{Path, PathBuf};

use num_rational::BigRational;
use serde_json::json;

use netoutage::capacity::{capacity_distribution, capacity_spectrum, ergodic_capacity, CapacitySpectrum};
use netoutage::correlated::{correlated_outage, correlated_outage_poly, CorrelationPartition};
use netoutage::enumerate::{enumerate_cutsets, enumerate_paths, CutFamily};
use netoutage::io::{self, Format, PartitionSpec};
use netoutage::outage::{asymptotic_summary, cut_enumerator, outage_bounds, outage_by_reliability_sum, outage_polynomial};
use netoutage::ring::{parse_rational, rational_to_f64};
use netoutage::sim::{simulate, z_score, LinkModel, SimConfig, SimReport};
use netoutage::{Budget, EdgeSet, LinkOutageVector, Network, Poly};

use crate::{Cli, Command, Curve, InputFormat, SimulateArgs, SweepArgs};

pub const EXIT_USAGE: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;
pub const EXIT_INTERNAL: u8 = 4;

#[derive(Debug)]
pub enum CliError {
    Core(netoutage::Error),
    /// A core error attributed to an input file.
    File(PathBuf, netoutage::Error),
    Io(PathBuf, std::io::Error),
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) | CliError::File(_, e) if e.is_budget() => EXIT_BUDGET,
            _ => EXIT_USAGE,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::File(path, e) => write!(f, "{}: {e}", path.display()),
            CliError::Io(path, e) => write!(f, "{}: {e}", path.display()),
            CliError::Usage(msg) => f.write_str(msg),
        }
    }
}

impl From<netoutage::Error> for CliError {
    fn from(e: netoutage::Error) -> Self {
        CliError::Core(e)
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))
}

fn in_file<T>(path: &Path, r: netoutage::Result<T>) -> Result<T> {
    r.map_err(|e| CliError::File(path.to_path_buf(), e))
}

fn load_network(cli: &Cli) -> Result<Network> {
    let path = cli
        .input
        .as_deref()
        .ok_or_else(|| CliError::Usage("--input <file> is required".into()))?;
    let format = match cli.format {
        Some(InputFormat::Json) => Format::Json,
        Some(InputFormat::Dot) => Format::Dot,
        None => Format::from_path(path),
    };
    in_file(path, io::parse_network(&read(path)?, format))
}

pub fn run(cli: &Cli) -> Result<String> {
    let net = load_network(cli)?;
    let budget = Budget::new(cli.budget);
    match &cli.command {
        Command::Analyze => analyze(&net, budget, cli.json),
        Command::Paths => paths(&net, cli.json),
        Command::Cuts => cuts(&net, budget, cli.json),
        Command::Capacity => capacity(&net, budget, cli.json),
        Command::Sweep(args) => sweep(&net, budget, args),
        Command::Simulate(args) => simulate_cmd(&net, budget, args),
    }
}

fn json_text(value: serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(&value).expect("json serializes");
    s.push('\n');
    s
}

fn set_list(sets: &[EdgeSet]) -> String {
    let items: Vec<String> = sets.iter().map(EdgeSet::to_string).collect();
    format!("{{{}}}", items.join(", "))
}

fn analyze(net: &Network, budget: Budget, as_json: bool) -> Result<String> {
    let paths = enumerate_paths(net);
    let cuts = enumerate_cutsets(net, budget)?;
    let a = cut_enumerator(&cuts);
    let summary = asymptotic_summary(&a);
    let o = outage_polynomial(&cuts);
    let bounds = outage_bounds(&a, cuts.minimal_cuts());
    let spectrum = capacity_spectrum(net, budget)?;
    // Two independent computations of the same polynomial; a mismatch is a bug
    // and exits with the internal-error code.
    assert_eq!(o, spectrum.c_polys()[0], "outage polynomial disagrees with C_0");

    if as_json {
        return Ok(json_text(json!({
            "nodes": net.node_count(),
            "n": net.edge_count(),
            "source": net.source(),
            "terminal": net.terminal(),
            "g": paths.len(),
            "k": cuts.count(),
            "minimal_cut_count": cuts.minimal_cuts().len(),
            "m": cuts.min_cut(),
            "A": a.coeffs(),
            "d": summary.diversity_order,
            "alpha": summary.coding_gain,
            "outage": o.to_coeff_strings(),
            "outage_text": o.to_string(),
            "bounds": {
                "lower": bounds.lower.to_coeff_strings(),
                "upper_a": bounds.upper_a.to_coeff_strings(),
                "upper_minimal": bounds.upper_minimal.to_coeff_strings(),
            },
            "spectrum": spectrum.to_json(),
        })));
    }

    let mut out = String::new();
    let w = &mut out;
    let _ = writeln!(
        w,
        "network: {} nodes, source {}, terminal {}",
        net.node_count(),
        net.source(),
        net.terminal()
    );
    let _ = writeln!(w, "n = {} edges, g = {} paths", net.edge_count(), paths.len());
    let _ = writeln!(
        w,
        "k = {} cut-sets, |L| = {} minimal, |M| = {} minimum, m = {}",
        cuts.count(),
        cuts.minimal_cuts().len(),
        cuts.minimum_cuts().len(),
        cuts.min_cut()
    );
    let _ = writeln!(w, "A(x) = {}", a.to_poly().in_var("x"));
    let _ = writeln!(w, "d = {}, alpha = {}", summary.diversity_order, summary.coding_gain);
    let _ = writeln!(w, "O(p) = {o}");
    let _ = writeln!(w, "bounds:");
    let _ = writeln!(w, "  lower A_m p^m (1-p)^(n-m) = {}", bounds.lower);
    let _ = writeln!(w, "  upper A(p)                = {}", bounds.upper_a);
    let _ = writeln!(w, "  upper sum_L p^|C|         = {}", bounds.upper_minimal);
    write_spectrum(w, &spectrum);
    Ok(out)
}

fn write_spectrum(w: &mut String, spectrum: &CapacitySpectrum) {
    let _ = writeln!(w, "capacity spectrum (m = {}):", spectrum.min_cut());
    for (i, c) in spectrum.c_polys().iter().enumerate() {
        let _ = writeln!(w, "  C_{i}(p) = {c}");
    }
    let _ = writeln!(w, "  E[C](p) = {}", spectrum.ergodic());
}

fn paths(net: &Network, as_json: bool) -> Result<String> {
    let paths = enumerate_paths(net);
    if as_json {
        return Ok(json_text(json!({ "g": paths.len(), "paths": paths.paths() })));
    }
    let mut out = format!("g = {}\n", paths.len());
    for p in paths.paths() {
        let _ = writeln!(out, "{p}");
    }
    Ok(out)
}

fn cuts(net: &Network, budget: Budget, as_json: bool) -> Result<String> {
    let cuts = enumerate_cutsets(net, budget)?;
    let a = cut_enumerator(&cuts);
    if as_json {
        let mut value = serde_json::to_value(&cuts).expect("cuts serialize");
        value["A"] = json!(a.coeffs());
        return Ok(json_text(value));
    }
    let mut out = String::new();
    let _ = writeln!(out, "K ({}) = {}", cuts.count(), set_list(cuts.all_cuts()));
    let _ = writeln!(out, "L ({}) = {}", cuts.minimal_cuts().len(), set_list(cuts.minimal_cuts()));
    let _ = writeln!(out, "M ({}) = {}", cuts.minimum_cuts().len(), set_list(cuts.minimum_cuts()));
    let _ = writeln!(out, "m = {}", cuts.min_cut());
    let _ = writeln!(out, "A(x) = {}", a.to_poly().in_var("x"));
    Ok(out)
}

fn capacity(net: &Network, budget: Budget, as_json: bool) -> Result<String> {
    let spectrum = capacity_spectrum(net, budget)?;
    if as_json {
        return Ok(json_text(spectrum.to_json()));
    }
    let mut out = String::new();
    write_spectrum(&mut out, &spectrum);
    Ok(out)
}

/// A probability-like value in `[0, 1]`, as a decimal or `a/b`.
fn parse_unit(text: &str, what: &str) -> Result<BigRational> {
    let value = parse_rational(text)
        .or_else(|| text.trim().parse::<f64>().ok().and_then(BigRational::from_float))
        .ok_or_else(|| CliError::Usage(format!("{what}: cannot parse {text:?}")))?;
    let zero = BigRational::from_integer(0.into());
    let one = BigRational::from_integer(1.into());
    if value < zero || value > one {
        return Err(CliError::Usage(format!("{what} must lie in [0, 1], got {text}")));
    }
    Ok(value)
}

/// Twelve significant digits, fixed notation.
pub fn fmt_sig12(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return if v == 0.0 { "0".into() } else { v.to_string() };
    }
    let magnitude = v.abs().log10().floor() as i32;
    let decimals = (11 - magnitude).max(0) as usize;
    format!("{v:.decimals$}")
}

fn load_partition(path: &Path, edge_count: usize) -> Result<(PartitionSpec, CorrelationPartition)> {
    let part_file = in_file(path, io::parse_partition(&read(path)?))?;
    let partition = in_file(path, part_file.partition(edge_count))?;
    Ok((part_file, partition))
}

/// One sweep column: maps a grid point to its exact value.
type Column = Box<dyn Fn(&BigRational) -> BigRational>;

fn sweep(net: &Network, budget: Budget, args: &SweepArgs) -> Result<String> {
    let start = parse_unit(&args.p_start, "--p-start")?;
    let end = parse_unit(&args.p_end, "--p-end")?;
    if args.steps < 2 {
        return Err(CliError::Usage("--steps must be at least 2".into()));
    }
    if start > end {
        return Err(CliError::Usage("--p-start must not exceed --p-end".into()));
    }
    let wants = |c: Curve| args.curves.contains(&c);
    let mut header = vec!["p".to_string()];
    let mut columns: Vec<Column> = Vec::new();

    let needs_cuts = wants(Curve::Outage) || wants(Curve::Bounds) || wants(Curve::Correlated);
    let cuts: Option<CutFamily> = needs_cuts.then(|| enumerate_cutsets(net, budget)).transpose()?;
    let poly_column = |poly: Poly| -> Column {
        Box::new(move |p| poly.eval_exact(p))
    };
    let one = BigRational::from_integer(1.into());
    let clipped = |poly: Poly| -> Column {
        let one = one.clone();
        Box::new(move |p| poly.eval_exact(p).min(one.clone()))
    };

    for curve in &args.curves {
        match curve {
            Curve::Outage => {
                header.push("outage".into());
                columns.push(poly_column(outage_polynomial(cuts.as_ref().expect("cuts"))));
            }
            Curve::Bounds => {
                let cuts = cuts.as_ref().expect("cuts");
                let b = outage_bounds(&cut_enumerator(cuts), cuts.minimal_cuts());
                header.extend(["lower_bound", "upper_bound_a", "upper_bound_minimal"].map(String::from));
                columns.push(poly_column(b.lower));
                columns.push(clipped(b.upper_a));
                columns.push(clipped(b.upper_minimal));
            }
            Curve::Capacity | Curve::Ergodic => {
                let spectrum = capacity_spectrum(net, budget)?;
                if *curve == Curve::Capacity {
                    for (i, c) in spectrum.c_polys().iter().enumerate() {
                        header.push(format!("C{i}"));
                        columns.push(poly_column(c.clone()));
                    }
                } else {
                    header.push("ergodic".into());
                    columns.push(poly_column(spectrum.ergodic().clone()));
                }
            }
            Curve::Correlated => {
                let path = args
                    .partition
                    .as_deref()
                    .ok_or_else(|| CliError::Usage("the correlated curve needs --partition".into()))?;
                let (part_file, partition) = load_partition(path, net.edge_count())?;
                let rhos: Vec<(String, BigRational)> = if args.rho.is_empty() {
                    let rho = part_file.rho.clone().ok_or_else(|| {
                        CliError::Usage("no --rho given and the partition file has no rho".into())
                    })?;
                    vec![(rho.to_string(), rho)]
                } else {
                    args.rho
                        .iter()
                        .map(|t| Ok((t.trim().to_string(), parse_unit(t, "--rho")?)))
                        .collect::<Result<_>>()?
                };
                let poly = correlated_outage_poly(cuts.as_ref().expect("cuts"), &partition)?;
                for (label, rho) in rhos {
                    header.push(format!("correlated_rho={label}"));
                    let at_rho = poly.at_rho(&rho);
                    columns.push(poly_column(at_rho));
                }
            }
        }
    }

    let mut out = header.join(",");
    out.push('\n');
    let intervals = BigRational::from_integer((args.steps - 1).into());
    let width = &end - &start;
    for k in 0..args.steps {
        let p = &start + &width * BigRational::from_integer(k.into()) / &intervals;
        out.push_str(&fmt_sig12(rational_to_f64(&p)));
        for column in &columns {
            out.push(',');
            out.push_str(&fmt_sig12(rational_to_f64(&column(&p))));
        }
        out.push('\n');
    }
    Ok(out)
}

fn simulate_cmd(net: &Network, budget: Budget, args: &SimulateArgs) -> Result<String> {
    let model = if let Some(path) = &args.partition {
        let (part_file, partition) = load_partition(path, net.edge_count())?;
        let rho = match &args.rho {
            Some(text) => parse_unit(text, "--rho")?,
            None => part_file.rho.clone().ok_or_else(|| {
                CliError::Usage("no --rho given and the partition file has no rho".into())
            })?,
        };
        LinkModel::Correlated {
            p: args.p.expect("clap requires --p with --partition"),
            rho: rational_to_f64(&rho),
            partition,
        }
    } else if let Some(p) = args.p {
        LinkModel::Uniform(p)
    } else if let Some(path) = &args.probs {
        LinkModel::Heterogeneous(in_file(path, io::parse_link_values(&read(path)?))?)
    } else {
        let path = args.snr.as_ref().expect("clap requires one link model");
        LinkModel::MeanSnr(in_file(path, io::parse_link_values(&read(path)?))?)
    };
    let cfg = SimConfig::new(model, args.trials, args.seed).with_shards(args.shards);
    let report = simulate(net, &cfg)?;
    let check = if args.check {
        Some(exact_values(net, budget, &cfg.model)?)
    } else {
        None
    };

    if args.csv {
        let mut header = SimReport::CSV_HEADER.to_string();
        let mut row = report.to_csv_row();
        if let Some((o, e)) = check {
            header.push_str(",exact_outage,outage_z,exact_ergodic,ergodic_z");
            let _ = write!(
                row,
                ",{:e},{:e},{:e},{:e}",
                o,
                z_score(report.outage_estimate, report.outage_stderr, o),
                e,
                z_score(report.ergodic_estimate, report.ergodic_stderr, e)
            );
        }
        return Ok(format!("{header}\n{row}\n"));
    }
    let mut value = serde_json::to_value(&report).expect("report serializes");
    if let Some((o, e)) = check {
        value["exact_outage"] = json!(o);
        value["outage_z"] = json!(z_score(report.outage_estimate, report.outage_stderr, o));
        value["exact_ergodic"] = json!(e);
        value["ergodic_z"] = json!(z_score(report.ergodic_estimate, report.ergodic_stderr, e));
    }
    Ok(json_text(value))
}

/// Exact outage probability and ergodic capacity under `model`.
fn exact_values(net: &Network, budget: Budget, model: &LinkModel) -> Result<(f64, f64)> {
    let cuts = enumerate_cutsets(net, budget)?;
    match model {
        LinkModel::Correlated { p, rho, partition } => {
            let outage = correlated_outage(&cuts, partition, p, rho)?;
            let dist = capacity_distribution(net, budget, |s| partition.state_probability(s, p, rho))?;
            Ok((outage, ergodic_capacity(&dist)))
        }
        _ => {
            let probs = match model {
                LinkModel::Uniform(p) => vec![*p; net.edge_count()],
                LinkModel::Heterogeneous(probs) => probs.clone(),
                LinkModel::MeanSnr(snr) => LinkOutageVector::from_mean_snr(net, snr)?.as_slice().to_vec(),
                LinkModel::Correlated { .. } => unreachable!(),
            };
            let links = LinkOutageVector::new(net, probs)?;
            let outage = outage_by_reliability_sum(&cuts, &links)?;
            let dist = capacity_distribution(net, budget, |s| {
                links
                    .as_slice()
                    .iter()
                    .enumerate()
                    .map(|(j, &p)| if s.contains(j) { p } else { 1.0 - p })
                    .product()
            })?;
            Ok((outage, ergodic_capacity(&dist)))
        }
    }
}
