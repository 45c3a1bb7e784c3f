use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use ascent_catalan::ascent::{avoider_stats, count_by_ascents, enumerate};
use ascent_catalan::bijection::{avoider_class, phi_inverse, phi_record, PhiCase};
use ascent_catalan::counting::{brute_force_table, lemma0_table};
use ascent_catalan::dyck::dyck_stats;
use ascent_catalan::series::{f_g_bruteforce, f_theorem3, h_series, TruncatedSeries};
use ascent_catalan::verify::{run_check, CheckId};
use ascent_catalan::{AscentSequence, CheckReport, DyckPath, Pattern};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

const CEILING: usize = 13;

#[derive(Parser)]
#[command(
    name = "ascat",
    version,
    about = "Pattern-avoiding ascent sequences, Dyck paths and their counts"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Omit the timestamp header so identical runs give identical output.
    #[arg(long, global = true)]
    deterministic: bool,

    /// Allow sizes above the safety ceiling of 13.
    #[arg(long, global = true)]
    override_ceiling: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// List ascent sequences of length n avoiding the given patterns.
    Enumerate {
        #[arg(long)]
        n: usize,
        /// Comma-separated patterns, e.g. 0011,0021.
        #[arg(long, default_value = "")]
        avoid: String,
    },
    /// Statistics of one ascent sequence or one Dyck path.
    Stats {
        #[arg(long, conflicts_with = "path", required_unless_present = "path")]
        seq: Option<String>,
        #[arg(long)]
        path: Option<String>,
    },
    /// Apply the bijection to a (0011, 0021)-avoider, invert it on a Dyck
    /// path, or tabulate it for every avoider of length n.
    Bijection {
        #[arg(long, group = "input")]
        seq: Option<String>,
        #[arg(long, group = "input")]
        path: Option<String>,
        #[arg(long, group = "input")]
        n: Option<usize>,
    },
    /// Count avoiders of length n by ascents, or dump the table a(n, m, r, s)
    /// of 021-avoiders.
    Count {
        #[arg(long, required_unless_present = "n_max")]
        n: Option<usize>,
        #[arg(long, default_value = "")]
        avoid: String,
        /// Dump the four-index table for all lengths up to this bound.
        #[arg(long, conflicts_with = "n")]
        n_max: Option<usize>,
        #[arg(long, value_enum, default_value_t = TableMethod::Recurrence)]
        method: TableMethod,
    },
    /// Print a truncated generating function.
    Series {
        #[arg(value_enum)]
        name: SeriesName,
        #[arg(long, default_value_t = 8)]
        x_cap: usize,
    },
    /// Run a named verification check.
    Verify {
        check: CheckId,
        /// Size bound for the check; defaults to the acceptance size.
        #[arg(long, alias = "n")]
        n_max: Option<usize>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableMethod {
    Recurrence,
    BruteForce,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SeriesName {
    /// h(x; t), the Narayana series
    H,
    /// f(x; u, v, w) from brute force
    F,
    /// g(x; v, w) from brute force
    G,
    /// the closed form for f(x; 1, v, w)
    Theorem3,
}

/// What a subcommand produced, in all three renderings.
struct Output {
    table: String,
    csv: String,
    json: Value,
    exit: ExitCode,
}

impl Output {
    fn ok(table: String, csv: String, json: Value) -> Self {
        Self {
            table,
            csv,
            json,
            exit: ExitCode::SUCCESS,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let text = match cli.format {
                Format::Table => out.table,
                Format::Csv => out.csv,
                Format::Json => serde_json::to_string_pretty(&out.json).expect("json value") + "\n",
            };
            if cli.format != Format::Json && !cli.deterministic {
                let secs = SystemTime::now()
                    .duration_since(UNIX_EPOCH)
                    .map(|d| d.as_secs())
                    .unwrap_or(0);
                println!("# generated at unix time {secs}");
            }
            print!("{text}");
            out.exit
        }
        Err(msg) => {
            if cli.format == Format::Json {
                println!("{}", json!({ "error": msg }));
            }
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn check_size(cli: &Cli, what: &str, n: usize) -> Result<(), String> {
    if n > CEILING && !cli.override_ceiling {
        return Err(format!(
            "{what} = {n} exceeds the ceiling of {CEILING}; pass --override-ceiling to run anyway"
        ));
    }
    Ok(())
}

fn patterns(text: &str) -> Result<Vec<Pattern>, String> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    Pattern::parse_list(text).map_err(|e| e.to_string())
}

fn pattern_names(pats: &[Pattern]) -> Vec<String> {
    pats.iter().map(|p| p.to_string()).collect()
}

fn run(cli: &Cli) -> Result<Output, String> {
    match &cli.command {
        Command::Enumerate { n, avoid } => {
            check_size(cli, "n", *n)?;
            let pats = patterns(avoid)?;
            Ok(enumerate_cmd(*n, &pats))
        }
        Command::Stats { seq, path } => match (seq, path) {
            (Some(s), _) => stats_seq(s),
            (None, Some(p)) => stats_path(p),
            (None, None) => Err("one of --seq or --path is required".into()),
        },
        Command::Bijection { seq, path, n } => match (seq, path, n) {
            (Some(s), _, _) => bijection_seq(s),
            (None, Some(p), _) => bijection_path(p),
            (None, None, Some(n)) => {
                check_size(cli, "n", *n)?;
                bijection_all(*n)
            }
            _ => Err("one of --seq, --path or --n is required".into()),
        },
        Command::Count {
            n,
            avoid,
            n_max,
            method,
        } => {
            if let Some(n_max) = n_max {
                check_size(cli, "n-max", *n_max)?;
                Ok(count_table(*n_max, *method))
            } else {
                let n = n.ok_or("--n or --n-max is required")?;
                check_size(cli, "n", n)?;
                Ok(count_cmd(n, &patterns(avoid)?))
            }
        }
        Command::Series { name, x_cap } => {
            check_size(cli, "x-cap", *x_cap)?;
            Ok(series_cmd(*name, *x_cap as u32))
        }
        Command::Verify { check, n_max } => {
            let n = n_max.unwrap_or(check.default_size());
            check_size(cli, "n-max", n)?;
            Ok(verify_cmd(*check, n))
        }
    }
}

fn enumerate_cmd(n: usize, pats: &[Pattern]) -> Output {
    let seqs = enumerate(n, pats);
    let mut table = format!("{:<width$}  asc\n", "sequence", width = n.max(8));
    let mut csv = String::from("sequence,asc\n");
    let mut rows = Vec::new();
    for s in &seqs {
        table.push_str(&format!(
            "{:<width$}  {}\n",
            s.to_string(),
            s.asc(),
            width = n.max(8)
        ));
        csv.push_str(&format!("{},{}\n", s, s.asc()));
        rows.push(json!({ "sequence": s.to_string(), "asc": s.asc() }));
    }
    table.push_str(&format!("{} sequences\n", seqs.len()));
    let json = json!({
        "n": n,
        "avoid": pattern_names(pats),
        "count": seqs.len(),
        "sequences": rows,
    });
    Output::ok(table, csv, json)
}

/// Renders a flat JSON object as `key: value` lines and as a one-row CSV.
fn record_output(record: Value) -> Output {
    let obj = record.as_object().cloned().unwrap_or_default();
    let plain = |v: &Value| match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    };
    let width = obj.keys().map(|k| k.len()).max().unwrap_or(0);
    let table: String = obj
        .iter()
        .map(|(k, v)| format!("{k:<width$}  {}\n", plain(v)))
        .collect();
    let header: Vec<&str> = obj.keys().map(|k| k.as_str()).collect();
    let row: Vec<String> = obj.values().map(plain).collect();
    let csv = format!("{}\n{}\n", header.join(","), row.join(","));
    Output::ok(table, csv, record)
}

fn parse_seq(text: &str) -> Result<AscentSequence, String> {
    text.parse()
        .map_err(|e: ascent_catalan::Error| e.to_string())
}

fn parse_path(text: &str) -> Result<DyckPath, String> {
    text.parse()
        .map_err(|e: ascent_catalan::Error| e.to_string())
}

fn stats_seq(text: &str) -> Result<Output, String> {
    let s = parse_seq(text)?;
    let mut record = Map::new();
    record.insert("sequence".into(), json!(s.to_string()));
    record.insert("length".into(), json!(s.len()));
    record.insert("asc".into(), json!(s.asc()));
    record.insert("max_letter".into(), json!(s.max_letter()));
    record.insert("last_letter".into(), json!(s.last_letter()));
    if let Value::Object(stats) = serde_json::to_value(avoider_stats(&s)).expect("serializable") {
        record.extend(stats);
    }
    Ok(record_output(Value::Object(record)))
}

fn stats_path(text: &str) -> Result<Output, String> {
    let p = parse_path(text)?;
    let stats = dyck_stats(&p).map_err(|e| e.to_string())?;
    let mut record = Map::new();
    record.insert("path".into(), json!(p.to_string()));
    record.insert("size".into(), json!(p.size()));
    if let Value::Object(stats) = serde_json::to_value(stats).expect("serializable") {
        record.extend(stats);
    }
    Ok(record_output(Value::Object(record)))
}

fn case_label(case: &PhiCase) -> String {
    match case {
        PhiCase::NoOneAfterSecondZero { k } => format!("3 (k={k})"),
        PhiCase::OneAfterSecondZero { j } => format!("4 (j={j})"),
        other => other.number().to_string(),
    }
}

fn bijection_seq(text: &str) -> Result<Output, String> {
    let s = parse_seq(text)?;
    let rec = phi_record(&s).map_err(|e| e.to_string())?;
    let table = format!(
        "sequence  {}\ncase      {}\npath      {}\n",
        rec.input,
        case_label(&rec.case),
        rec.image
    );
    let csv = format!(
        "sequence,case,path\n{},{},{}\n",
        rec.input,
        rec.case.number(),
        rec.image
    );
    let mut json = serde_json::to_value(&rec).expect("serializable");
    json["case_number"] = json!(rec.case.number());
    Ok(Output::ok(table, csv, json))
}

fn bijection_path(text: &str) -> Result<Output, String> {
    let p = parse_path(text)?;
    let s = phi_inverse(&p).map_err(|e| e.to_string())?;
    let table = format!("path      {p}\nsequence  {s}\n");
    let csv = format!("path,sequence\n{p},{s}\n");
    Ok(Output::ok(
        table,
        csv,
        json!({ "path": p.to_string(), "sequence": s.to_string() }),
    ))
}

fn bijection_all(n: usize) -> Result<Output, String> {
    let mut table = String::new();
    let mut csv = String::from("sequence,case,path\n");
    let mut rows = Vec::new();
    for s in enumerate(n, &avoider_class()) {
        let rec = phi_record(&s).map_err(|e| e.to_string())?;
        table.push_str(&format!(
            "{}  {}  {}\n",
            rec.input,
            rec.image,
            case_label(&rec.case)
        ));
        csv.push_str(&format!(
            "{},{},{}\n",
            rec.input,
            rec.case.number(),
            rec.image
        ));
        rows.push(json!({
            "sequence": rec.input.to_string(),
            "case": rec.case.number(),
            "path": rec.image.to_string(),
        }));
    }
    Ok(Output::ok(table, csv, json!({ "n": n, "pairs": rows })))
}

fn count_cmd(n: usize, pats: &[Pattern]) -> Output {
    let by_m = count_by_ascents(n, pats);
    let total: u64 = by_m.values().sum();
    let mut table = String::from("m  count\n");
    let mut csv = String::from("m,count\n");
    for (m, c) in &by_m {
        table.push_str(&format!("{m:<2} {c}\n"));
        csv.push_str(&format!("{m},{c}\n"));
    }
    table.push_str(&format!("total {total}\n"));
    let by_m_json: Map<String, Value> = by_m
        .iter()
        .map(|(m, c)| (m.to_string(), json!(c)))
        .collect();
    let json = json!({
        "n": n,
        "avoid": pattern_names(pats),
        "total": total,
        "by_ascents": by_m_json,
    });
    Output::ok(table, csv, json)
}

fn count_table(n_max: usize, method: TableMethod) -> Output {
    let table = match method {
        TableMethod::Recurrence => lemma0_table(n_max),
        TableMethod::BruteForce => brute_force_table(n_max),
    };
    let csv = table.to_csv();
    let rows: Vec<Value> = table
        .nonzero_entries()
        .map(|(n, m, r, s, c)| json!({ "n": n, "m": m, "r": r, "s": s, "count": c.to_string() }))
        .collect();
    Output::ok(csv.clone(), csv, json!({ "n_max": n_max, "entries": rows }))
}

fn series_cmd(name: SeriesName, x_cap: u32) -> Output {
    let (label, s): (&str, TruncatedSeries) = match name {
        SeriesName::H => ("h", h_series(x_cap)),
        SeriesName::F => ("f", f_g_bruteforce(x_cap).0),
        SeriesName::G => ("g", f_g_bruteforce(x_cap).1),
        SeriesName::Theorem3 => ("theorem3", f_theorem3(x_cap)),
    };
    let terms: Vec<Value> = s
        .terms()
        .map(|(e, c)| json!({ "exponents": e, "coefficient": c.to_string() }))
        .collect();
    let json = json!({
        "series": label,
        "x_cap": s.x_cap(),
        "aux_cap": s.aux_cap(),
        "variables": ["x", "u", "v", "w", "t"],
        "terms": terms,
    });
    Output::ok(s.to_string(), s.to_csv(), json)
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn verify_cmd(id: CheckId, n: usize) -> Output {
    let report: CheckReport = run_check(id, n);
    let params: Vec<String> = report
        .params
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect();
    let mut table = format!(
        "check   {}\nparams  {}\nresult  {}\n",
        report.check,
        params.join(" "),
        if report.pass { "PASS" } else { "FAIL" }
    );
    if let Some(status) = &report.status {
        table.push_str(&format!("status  {status}\n"));
    }
    for d in &report.details {
        table.push_str(&format!("  {d}\n"));
    }
    let mut csv = String::from("check,pass,status,detail\n");
    let status = report.status.clone().unwrap_or_default();
    if report.details.is_empty() {
        csv.push_str(&format!("{},{},{},\n", report.check, report.pass, status));
    }
    for d in &report.details {
        csv.push_str(&format!(
            "{},{},{},{}\n",
            report.check,
            report.pass,
            status,
            csv_field(d)
        ));
    }
    let exit = if report.pass || id.is_conjecture() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    };
    Output {
        table,
        csv,
        json: report.to_json(),
        exit,
    }
}
