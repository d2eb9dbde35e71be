//! `qtcat`: counting, enumeration dumps, polynomial emission, bijection
//! plumbing, and the self-verification suite, from the command line.

use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use num::bigint::BigInt;

use qtcatalan::affine::{
    from_affine_composition, standardize, to_affine_composition, AffineComposition,
};
use qtcatalan::lattice::GridParams;
use qtcatalan::parking::{
    count_sspf_closed, csv_record, enumerate_parking_functions, enumerate_sspf, Composition,
    SspfJson, CSV_HEADER,
};
use qtcatalan::polyring::{higher_catalan, hikita_truncated, MultiPoly};
use qtcatalan::series::{bizley_counts, touch_profile};
use qtcatalan::statistics::{dinv, springer_poincare, springer_poincare_half};
use qtcatalan::verify::{run_verify_suite, VerifyLevel};

/// Exact combinatorics of rational lattice paths and their polynomials.
#[derive(Parser)]
#[command(name = "qtcat", version, about, max_term_width = 100)]
struct Cli {
    /// Write output to this file instead of standard output. A relative
    /// path is resolved under $QTCAT_OUTPUT_DIR when that is set.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Objects {
    /// Weakly increasing column labels in 1..=r.
    Sspf,
    /// Bijective labels 1..=m (classical parking functions).
    Pf,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PolyFormat {
    Text,
    Json,
    Latex,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Count objects on the (m, n) grid: closed form when gcd(m, n) = 1,
    /// otherwise by enumeration.
    Count {
        #[arg(long)]
        m: i64,
        #[arg(long)]
        n: i64,
        /// Number of label values.
        #[arg(long, default_value_t = 1)]
        r: i64,
        #[arg(long, value_enum, default_value_t = Objects::Sspf)]
        objects: Objects,
    },
    /// Stream every object as a CSV row with its statistics.
    Enumerate {
        #[arg(long)]
        m: i64,
        #[arg(long)]
        n: i64,
        #[arg(long, default_value_t = 1)]
        r: i64,
        /// Keep only objects of this label multiplicity vector, e.g. "2,2,1".
        #[arg(long)]
        weight: Option<String>,
        #[arg(long, value_enum, default_value_t = Objects::Sspf)]
        objects: Objects,
    },
    /// The rank-r (q,t)-Catalan polynomial over the x-variables.
    Catalan {
        #[arg(long)]
        m: i64,
        #[arg(long)]
        n: i64,
        #[arg(long, default_value_t = 1)]
        r: i64,
        #[arg(long, value_enum, default_value_t = PolyFormat::Text)]
        format: PolyFormat,
    },
    /// The same polynomial by the independent descent-sum route.
    Hikita {
        #[arg(long)]
        m: i64,
        #[arg(long)]
        n: i64,
        #[arg(long, default_value_t = 1)]
        r: i64,
        #[arg(long, value_enum, default_value_t = PolyFormat::Text)]
        format: PolyFormat,
    },
    /// Read a labeled path and print its standardization and affine window.
    Standardize {
        /// Path to a JSON file {"m","n","r","cols","labels"}.
        #[arg(long, value_name = "PATH", conflicts_with = "json")]
        input: Option<PathBuf>,
        /// The same JSON given inline.
        #[arg(long, value_name = "JSON")]
        json: Option<String>,
        #[arg(long, value_enum, default_value_t = PolyFormat::Text)]
        format: PolyFormat,
    },
    /// Convert between labeled paths and affine windows (either direction).
    Bijection {
        /// Labeled path as a JSON file; prints the window.
        #[arg(long, value_name = "PATH", conflicts_with_all = ["json", "from_window"])]
        input: Option<PathBuf>,
        /// Labeled path as inline JSON; prints the window.
        #[arg(long, value_name = "JSON", conflicts_with = "from_window")]
        json: Option<String>,
        /// Window such as "[1,5,0,2,3]_3"; prints the labeled path as JSON.
        #[arg(long, value_name = "WINDOW", requires = "n")]
        from_window: Option<String>,
        /// Grid width for --from-window.
        #[arg(long)]
        n: Option<i64>,
    },
    /// Poincaré polynomial of the fixed-weight cell decomposition.
    Poincare {
        #[arg(long)]
        m: i64,
        #[arg(long)]
        n: i64,
        /// Label multiplicity vector, e.g. "2,2,1".
        #[arg(long)]
        weight: String,
        /// Emit t^codinv instead of t^(2 codinv).
        #[arg(long)]
        half: bool,
        #[arg(long, value_enum, default_value_t = PolyFormat::Text)]
        format: PolyFormat,
    },
    /// Counts along the ray (mk, nk) from the exponential series, as CSV.
    Bizley {
        /// Coprime base pair.
        #[arg(long)]
        m: i64,
        #[arg(long)]
        n: i64,
        #[arg(long, default_value_t = 1)]
        r: i64,
        /// Largest scale k to report.
        #[arg(long, default_value_t = 12)]
        max_k: i64,
    },
    /// Diagonal-touch distribution at scale k, with single-touch counts.
    TouchProfile {
        /// Coprime base pair.
        #[arg(long)]
        m: i64,
        #[arg(long)]
        n: i64,
        #[arg(long, default_value_t = 1)]
        r: i64,
        #[arg(long, default_value_t = 1)]
        k: i64,
    },
    /// Run the named invariant checks and report pass/fail per check.
    Verify {
        /// quick or full; defaults to $QTCAT_VERIFY_LEVEL, then quick.
        #[arg(long)]
        level: Option<String>,
        /// Seed for the randomized series checks.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
    },
}

fn main() {
    std::process::exit(real_main());
}

fn real_main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            1
        }
    }
}

/// Resolve `--out`: relative paths live under $QTCAT_OUTPUT_DIR when set.
fn resolve_out(path: &Path) -> PathBuf {
    if path.is_absolute() {
        return path.to_path_buf();
    }
    match std::env::var_os("QTCAT_OUTPUT_DIR") {
        Some(dir) if !dir.is_empty() => PathBuf::from(dir).join(path),
        _ => path.to_path_buf(),
    }
}

fn open_output(out: &Option<PathBuf>) -> anyhow::Result<Box<dyn Write>> {
    match out {
        None => Ok(Box::new(std::io::stdout())),
        Some(p) => {
            let path = resolve_out(p);
            if let Some(dir) = path.parent() {
                if !dir.as_os_str().is_empty() {
                    fs::create_dir_all(dir)
                        .with_context(|| format!("creating {}", dir.display()))?;
                }
            }
            let file =
                fs::File::create(&path).with_context(|| format!("creating {}", path.display()))?;
            Ok(Box::new(BufWriter::new(file)))
        }
    }
}

fn parse_weight(s: &str) -> anyhow::Result<Composition> {
    let parts = s
        .split(',')
        .map(|p| p.trim().parse::<i64>())
        .collect::<Result<Vec<i64>, _>>()
        .with_context(|| format!("weight {s:?} is not a comma-separated integer list"))?;
    Ok(Composition::new(parts)?)
}

fn read_sspf_arg(
    input: &Option<PathBuf>,
    json: &Option<String>,
) -> anyhow::Result<qtcatalan::parking::SemistandardParkingFunction> {
    let text = match (input, json) {
        (Some(path), None) => {
            fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
        }
        (None, Some(inline)) => inline.clone(),
        _ => bail!("provide exactly one of --input or --json"),
    };
    let dto: SspfJson = serde_json::from_str(&text).context("parsing the labeled-path JSON")?;
    Ok(dto.into_sspf()?)
}

fn emit_poly(w: &mut dyn Write, poly: &MultiPoly, format: PolyFormat) -> anyhow::Result<()> {
    match format {
        PolyFormat::Text => writeln!(w, "{poly}")?,
        PolyFormat::Latex => writeln!(w, "{}", poly.to_latex())?,
        PolyFormat::Json => {
            let dto = poly.to_json()?;
            writeln!(w, "{}", serde_json::to_string_pretty(&dto)?)?;
        }
    }
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<i32> {
    let mut w = open_output(&cli.out)?;
    match cli.cmd {
        Cmd::Count { m, n, r, objects } => cmd_count(&mut w, m, n, r, objects)?,
        Cmd::Enumerate {
            m,
            n,
            r,
            weight,
            objects,
        } => cmd_enumerate(&mut w, m, n, r, weight.as_deref(), objects)?,
        Cmd::Catalan { m, n, r, format } => {
            let poly = higher_catalan(m, n, r)?;
            emit_poly(&mut w, &poly, format)?;
        }
        Cmd::Hikita { m, n, r, format } => {
            let poly = hikita_truncated(m, n, r)?;
            emit_poly(&mut w, &poly, format)?;
        }
        Cmd::Standardize {
            input,
            json,
            format,
        } => cmd_standardize(&mut w, &input, &json, format)?,
        Cmd::Bijection {
            input,
            json,
            from_window,
            n,
        } => cmd_bijection(&mut w, &input, &json, from_window.as_deref(), n)?,
        Cmd::Poincare {
            m,
            n,
            weight,
            half,
            format,
        } => {
            let w_comp = parse_weight(&weight)?;
            let poly = if half {
                springer_poincare_half(m, n, &w_comp)?
            } else {
                springer_poincare(m, n, &w_comp)?
            };
            emit_poly(&mut w, &poly, format)?;
        }
        Cmd::Bizley { m, n, r, max_k } => cmd_bizley(&mut w, m, n, r, max_k)?,
        Cmd::TouchProfile { m, n, r, k } => cmd_touch_profile(&mut w, m, n, r, k)?,
        Cmd::Verify {
            level,
            seed,
            format,
        } => {
            let code = cmd_verify(&mut w, level.as_deref(), seed, format)?;
            w.flush()?;
            return Ok(code);
        }
    }
    w.flush()?;
    Ok(0)
}

fn cmd_count(w: &mut dyn Write, m: i64, n: i64, r: i64, objects: Objects) -> anyhow::Result<()> {
    let grid = GridParams::new(m, n)?;
    let (value, method): (BigInt, &str) = match objects {
        Objects::Sspf => match count_sspf_closed(m, n, r) {
            Ok(v) => (v, "closed-form"),
            Err(qtcatalan::Error::NonCoprime { .. }) => {
                let count = enumerate_sspf(&grid, r, None)?.count();
                (BigInt::from(count), "enumeration")
            }
            Err(e) => return Err(e.into()),
        },
        Objects::Pf => {
            if num::integer::gcd(m, n) == 1 {
                (BigInt::from(n).pow((m - 1) as u32), "closed-form")
            } else {
                let count = enumerate_parking_functions(&grid).count();
                (BigInt::from(count), "enumeration")
            }
        }
    };
    writeln!(w, "{value} (method={method})")?;
    Ok(())
}

fn cmd_enumerate(
    w: &mut dyn Write,
    m: i64,
    n: i64,
    r: i64,
    weight: Option<&str>,
    objects: Objects,
) -> anyhow::Result<()> {
    let grid = GridParams::new(m, n)?;
    let coprime = num::integer::gcd(m, n) == 1;
    let weight = weight.map(parse_weight).transpose()?;
    let mut csv = csv::Writer::from_writer(w);
    csv.write_record(CSV_HEADER)?;
    match objects {
        Objects::Sspf => {
            for s in enumerate_sspf(&grid, r, weight.as_ref())? {
                let d = if coprime { Some(dinv(&s)?) } else { None };
                csv.write_record(csv_record(&s, d))?;
            }
        }
        Objects::Pf => {
            if weight.is_some() {
                bail!("--weight applies only to --objects sspf (parking functions are bijective)");
            }
            for p in enumerate_parking_functions(&grid) {
                let s = p.as_sspf();
                let d = if coprime { Some(dinv(&s)?) } else { None };
                csv.write_record(csv_record(&s, d))?;
            }
        }
    }
    csv.flush()?;
    Ok(())
}

#[derive(serde::Serialize)]
struct StandardizeOut {
    parking: SspfJson,
    window: String,
}

fn cmd_standardize(
    w: &mut dyn Write,
    input: &Option<PathBuf>,
    json: &Option<String>,
    format: PolyFormat,
) -> anyhow::Result<()> {
    let s = read_sspf_arg(input, json)?;
    let p = standardize(&s)?;
    let window = to_affine_composition(&s)?;
    match format {
        PolyFormat::Json => {
            let out = StandardizeOut {
                parking: SspfJson::from_sspf(&p.as_sspf()),
                window: window.to_string(),
            };
            writeln!(w, "{}", serde_json::to_string_pretty(&out)?)?;
        }
        _ => {
            writeln!(
                w,
                "cols: {}",
                p.path()
                    .cols()
                    .iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            )?;
            writeln!(
                w,
                "parking: {}",
                p.labels()
                    .iter()
                    .map(|l| l.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            )?;
            writeln!(w, "window: {window}")?;
        }
    }
    Ok(())
}

fn cmd_bijection(
    w: &mut dyn Write,
    input: &Option<PathBuf>,
    json: &Option<String>,
    from_window: Option<&str>,
    n: Option<i64>,
) -> anyhow::Result<()> {
    if let Some(window_text) = from_window {
        let n = n.expect("clap enforces --n with --from-window");
        let f: AffineComposition = window_text.parse()?;
        let s = from_affine_composition(&f, n)?;
        writeln!(
            w,
            "{}",
            serde_json::to_string_pretty(&SspfJson::from_sspf(&s))?
        )?;
    } else {
        let s = read_sspf_arg(input, json)?;
        let f = to_affine_composition(&s)?;
        writeln!(w, "{f}")?;
    }
    Ok(())
}

fn cmd_bizley(w: &mut dyn Write, m: i64, n: i64, r: i64, max_k: i64) -> anyhow::Result<()> {
    if max_k < 1 {
        bail!("--max-k must be at least 1");
    }
    let counts = bizley_counts(m, n, r, max_k as usize)?;
    let mut csv = csv::Writer::from_writer(w);
    csv.write_record(["k", "closed_form_count", "enumerated_count", "match"])?;
    for k in 1..=max_k {
        let predicted = &counts[(k - 1) as usize];
        let small_enough = (m * k) * (n * k) <= 36;
        let (enumerated, matches) = if small_enough {
            let grid = GridParams::new(m * k, n * k)?;
            let count = BigInt::from(enumerate_sspf(&grid, r, None)?.count());
            let matches = if count == *predicted { "yes" } else { "no" };
            (count.to_string(), matches.to_string())
        } else {
            (String::new(), String::new())
        };
        csv.write_record([k.to_string(), predicted.to_string(), enumerated, matches])?;
    }
    csv.flush()?;
    Ok(())
}

fn cmd_touch_profile(w: &mut dyn Write, m: i64, n: i64, r: i64, k: i64) -> anyhow::Result<()> {
    let profile = touch_profile(m, n, r, k)?;
    let mut csv = csv::Writer::from_writer(w);
    csv.write_record(["statistic", "index", "count"])?;
    for (t, count) in &profile.phi {
        csv.write_record(["phi", &t.to_string(), &count.to_string()])?;
    }
    for (l, count) in &profile.psi {
        csv.write_record(["psi", &l.to_string(), &count.to_string()])?;
    }
    csv.flush()?;
    Ok(())
}

fn cmd_verify(
    w: &mut dyn Write,
    level_flag: Option<&str>,
    seed: u64,
    format: ReportFormat,
) -> anyhow::Result<i32> {
    let level_text = match level_flag {
        Some(text) => text.to_string(),
        None => std::env::var("QTCAT_VERIFY_LEVEL").unwrap_or_else(|_| "quick".to_string()),
    };
    let level: VerifyLevel = level_text.parse()?;
    let report = run_verify_suite(level, seed);
    match format {
        ReportFormat::Text => write!(w, "{}", report.to_text())?,
        ReportFormat::Json => writeln!(w, "{}", report.to_json_string())?,
    }
    Ok(if report.all_pass { 0 } else { 2 })
}
