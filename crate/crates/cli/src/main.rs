//! `ngl`: command-line front end for the noetherline engine.
//!
//! Every tabular subcommand emits rows with a fixed column set, as TSV
//! (default) or JSON; rationals print exactly as `p/q`.  Data goes to
//! stdout or `--out`, diagnostics go to stderr.  Exit codes: 0 success,
//! 1 domain or script error, 2 usage error.

use std::fs;
use std::io::Read;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use noetherline::dsl;
use noetherline::families::{build_family, noether_example, scan, structure_model, FamilyParams};
use noetherline::noether::{classify, LineClassification, NoetherLine};
use noetherline::rational::Rational;
use noetherline::reid::{enumerate_baskets, second_plurigenus, Basket};
use noetherline::FamilyRecord;

#[derive(Parser)]
#[command(
    name = "ngl",
    version,
    about = "Exact invariants and boundary-line geography of branched-cover threefolds"
)]
struct Cli {
    /// Output format for data rows.
    #[arg(long, global = true, value_enum, default_value_t = Format::Tsv)]
    format: Format,

    /// Write data to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Compute all invariants of the cover with parameters (e, a, b).
    Family {
        /// Index of the base Hirzebruch surface (at least 3).
        #[arg(short)]
        e: i64,
        /// Fiber coefficient of the bundle twist 2s + a*l (at least 2e).
        #[arg(short)]
        a: i64,
        /// Fiber coefficient of the branch datum 5s + b*l (2b >= 5a).
        #[arg(short)]
        b: i64,
    },
    /// Build the example pinned to a boundary line at offsets (e, k).
    Example {
        /// Boundary line index: 1, 2 or 3.
        #[arg(long, value_parser = clap::value_parser!(i64).range(1..=3))]
        line: i64,
        #[arg(short)]
        e: i64,
        #[arg(short)]
        k: i64,
    },
    /// Build the first-line structural model for (m, e).
    Model {
        /// Genus parameter: the model has p_g = 3m - 2 (m at least 5).
        #[arg(short)]
        m: i64,
        /// Base surface index, same parity as 3m - 4, between 0 and 3m - 4.
        #[arg(short)]
        e: i64,
    },
    /// Build every line example over a grid of (e, k) offsets.
    Scan {
        /// Single value or inclusive range, e.g. `4` or `3..8`.
        #[arg(short, value_parser = IntRange::from_str)]
        e: IntRange,
        /// Single value or inclusive range, e.g. `0` or `0..6`.
        #[arg(short, value_parser = IntRange::from_str)]
        k: IntRange,
        /// Boundary line to include; repeatable, all three by default.
        #[arg(long, value_parser = clap::value_parser!(i64).range(1..=3))]
        line: Vec<i64>,
    },
    /// Place a (pg, K3) pair relative to the three boundary lines.
    Classify {
        #[arg(long)]
        pg: i64,
        /// Canonical volume as an exact rational, e.g. `14` or `23/2`.
        #[arg(long, value_parser = parse_rational)]
        k3: Rational,
    },
    /// List every basket whose total correction is exactly the given value.
    Baskets {
        /// Target correction as an exact rational, e.g. `1/2`.
        #[arg(long, value_parser = parse_rational)]
        l2: Rational,
        /// Largest singularity index to consider.
        #[arg(long, default_value_t = 20)]
        rmax: i64,
        /// Largest number of basket points to consider.
        #[arg(long = "max-points", default_value_t = 5)]
        max_points: usize,
    },
    /// Run a script from a file, or from stdin when the path is `-`.
    Eval {
        script: String,
    },
}

#[derive(Clone)]
struct IntRange {
    start: i64,
    end: i64,
}

impl FromStr for IntRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |part: &str| {
            part.parse::<i64>()
                .map_err(|_| format!("`{part}` is not an integer"))
        };
        let (start, end) = match s.split_once("..") {
            Some((lo, hi)) => (parse(lo)?, parse(hi)?),
            None => {
                let v = parse(s)?;
                (v, v)
            }
        };
        if start > end {
            return Err(format!("range `{s}` is empty"));
        }
        Ok(IntRange { start, end })
    }
}

impl From<IntRange> for RangeInclusive<i64> {
    fn from(r: IntRange) -> Self {
        r.start..=r.end
    }
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    s.parse::<Rational>().map_err(|e| e.to_string())
}

/// One output row.  Every command fills the columns that apply to it and
/// leaves the rest empty (TSV) or null (JSON).
#[derive(Serialize, Default)]
struct OutputRow {
    line: Option<i64>,
    e: Option<i64>,
    k: Option<i64>,
    a: Option<i64>,
    b: Option<i64>,
    m: Option<i64>,
    pg: Option<i64>,
    #[serde(rename = "K3")]
    k3: Option<String>,
    #[serde(rename = "P2")]
    p2: Option<String>,
    basket: Option<String>,
    region: Option<String>,
}

const HEADER: [&str; 11] = [
    "line", "e", "k", "a", "b", "m", "pg", "K3", "P2", "basket", "region",
];

impl OutputRow {
    fn cells(&self) -> [String; 11] {
        let int = |v: &Option<i64>| v.map(|n| n.to_string()).unwrap_or_default();
        let text = |v: &Option<String>| v.clone().unwrap_or_default();
        [
            int(&self.line),
            int(&self.e),
            int(&self.k),
            int(&self.a),
            int(&self.b),
            int(&self.m),
            int(&self.pg),
            text(&self.k3),
            text(&self.p2),
            text(&self.basket),
            text(&self.region),
        ]
    }
}

#[derive(Serialize)]
struct Envelope<'a> {
    command: &'a str,
    rows: &'a [OutputRow],
}

fn family_row(record: &FamilyRecord, k: Option<i64>) -> OutputRow {
    OutputRow {
        line: record.line().map(|l| l.index()),
        e: Some(record.params.e()),
        k,
        a: Some(record.params.a()),
        b: Some(record.params.b()),
        m: None,
        pg: Some(record.geometric_genus),
        k3: Some(record.canonical_volume.to_string()),
        p2: record.second_plurigenus.as_ref().map(|p| p.to_string()),
        basket: record.basket.as_ref().map(|b| b.to_string()),
        region: Some(record.classification.region.to_string()),
    }
}

fn classify_row(genus: i64, volume: &Rational, classification: &LineClassification) -> OutputRow {
    let p2 = classification.on_line().and_then(|line| {
        let basket = line.forced_basket();
        second_plurigenus(volume, genus - 1, &basket)
            .ok()
            .map(|count| count.value.to_string())
    });
    OutputRow {
        line: classification.on_line().map(|l| l.index()),
        pg: Some(genus),
        k3: Some(volume.to_string()),
        p2,
        basket: classification.forced_baskets.first().map(|b| b.to_string()),
        region: Some(classification.region.to_string()),
        ..OutputRow::default()
    }
}

fn basket_row(basket: &Basket) -> OutputRow {
    OutputRow {
        basket: Some(basket.to_string()),
        ..OutputRow::default()
    }
}

fn render_rows(format: Format, command: &str, rows: &[OutputRow]) -> String {
    match format {
        Format::Tsv => {
            let mut text = HEADER.join("\t");
            text.push('\n');
            for row in rows {
                text.push_str(&row.cells().join("\t"));
                text.push('\n');
            }
            text
        }
        Format::Json => {
            let envelope = Envelope { command, rows };
            let mut text =
                serde_json::to_string_pretty(&envelope).expect("rows always serialize");
            text.push('\n');
            text
        }
    }
}

fn write_data(out: &Option<PathBuf>, text: &str) -> Result<(), String> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn lines_from_indices(indices: &[i64]) -> Vec<NoetherLine> {
    if indices.is_empty() {
        NoetherLine::ALL.to_vec()
    } else {
        indices
            .iter()
            .map(|&i| NoetherLine::from_index(i).expect("validated by the argument parser"))
            .collect()
    }
}

fn run(cli: Cli) -> Result<u8, String> {
    let format = cli.format;
    let out = cli.out;
    match cli.command {
        Command::Family { e, a, b } => {
            let params = FamilyParams::new(e, a, b).map_err(|err| err.to_string())?;
            let record = build_family(params).map_err(|err| err.to_string())?;
            let rows = vec![family_row(&record, None)];
            write_data(&out, &render_rows(format, "family", &rows))?;
            Ok(0)
        }
        Command::Example { line, e, k } => {
            let line = NoetherLine::from_index(line).expect("validated by the argument parser");
            let record = noether_example(line, e, k).map_err(|err| err.to_string())?;
            let rows = vec![family_row(&record, Some(k))];
            write_data(&out, &render_rows(format, "example", &rows))?;
            Ok(0)
        }
        Command::Model { m, e } => {
            let model = structure_model(m, e).map_err(|err| err.to_string())?;
            let rows = vec![OutputRow {
                line: Some(NoetherLine::First.index()),
                e: Some(model.e),
                k: Some(model.k),
                m: Some(model.m),
                pg: Some(model.geometric_genus),
                k3: Some(model.canonical_volume.to_string()),
                p2: Some(model.second_plurigenus.to_string()),
                basket: Some(model.basket.to_string()),
                region: Some(model.classification.region.to_string()),
                ..OutputRow::default()
            }];
            write_data(&out, &render_rows(format, "model", &rows))?;
            Ok(0)
        }
        Command::Scan { e, k, line } => {
            let lines = lines_from_indices(&line);
            let records =
                scan(e.clone().into(), k.clone().into(), &lines).map_err(|err| err.to_string())?;
            let mut rows = Vec::with_capacity(records.len());
            let mut index = 0;
            let mut sorted = lines.clone();
            sorted.sort();
            sorted.dedup();
            for _ in &sorted {
                for _ in e.start..=e.end {
                    for kk in k.start..=k.end {
                        rows.push(family_row(&records[index], Some(kk)));
                        index += 1;
                    }
                }
            }
            write_data(&out, &render_rows(format, "scan", &rows))?;
            Ok(0)
        }
        Command::Classify { pg, k3 } => {
            let classification = classify(pg, &k3);
            let rows = vec![classify_row(pg, &k3, &classification)];
            write_data(&out, &render_rows(format, "classify", &rows))?;
            Ok(0)
        }
        Command::Baskets {
            l2,
            rmax,
            max_points,
        } => {
            let baskets = enumerate_baskets(&l2, rmax, max_points);
            let rows: Vec<OutputRow> = baskets.iter().map(basket_row).collect();
            write_data(&out, &render_rows(format, "baskets", &rows))?;
            Ok(0)
        }
        Command::Eval { script } => {
            let source = if script == "-" {
                let mut buffer = String::new();
                std::io::stdin()
                    .read_to_string(&mut buffer)
                    .map_err(|e| format!("cannot read stdin: {e}"))?;
                buffer
            } else {
                fs::read_to_string(&script).map_err(|e| format!("cannot read {script}: {e}"))?
            };
            let result = dsl::run(&source);
            let text = match format {
                Format::Tsv => {
                    let mut text = result.outputs.join("\n");
                    if !text.is_empty() {
                        text.push('\n');
                    }
                    text
                }
                Format::Json => {
                    let mut text = serde_json::to_string_pretty(&serde_json::json!({
                        "command": "eval",
                        "outputs": result.outputs,
                    }))
                    .expect("strings always serialize");
                    text.push('\n');
                    text
                }
            };
            write_data(&out, &text)?;
            for diagnostic in &result.diagnostics {
                eprintln!("{diagnostic}");
            }
            Ok(if result.success() { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}
