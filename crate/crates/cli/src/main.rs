//! Command-line surface: enumeration, series extraction, singularity
//! analysis and the verification gate, with reproducible machine-readable
//! output. Identical configuration yields byte-identical output files.

use std::fs;
use std::io::Read;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use gammafilt_core::acceptance;
use gammafilt_core::algebra::{format_rational_sig, Marker};
use gammafilt_core::asymptotics;
use gammafilt_core::diagram::Diagram;
use gammafilt_core::genfun;
use gammafilt_core::oracle;
use gammafilt_core::shadows;

#[derive(Parser)]
#[command(
    name = "gammafilt",
    version,
    about = "Genus-filtered enumeration and singularity analysis of RNA pseudoknot structures"
)]
struct Cli {
    /// Worker threads for parallel enumeration (default: all cores; 1
    /// forces the sequential reference path).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Working precision in decimal digits for the numeric pipeline
    /// (default 60, or the GAMMAFILT_PRECISION environment variable).
    #[arg(long, global = true)]
    precision: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one diagram: genus, boundary count, shadow, irreducible
    /// shadows and γ-membership. INPUT is a file path or `-` for stdin.
    Genus { input: String },

    /// Enumerate the irreducible shadows of one genus and emit the
    /// catalog with its coefficient vector as JSON.
    EnumerateShadows {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        genus: u8,
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Coefficients [z^n t^g] of the structure series G_{τ,γ} up to a
    /// truncation order, as `n,g,count` rows.
    Series {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        gamma: u8,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=10))]
        tau: u8,
        #[arg(long, value_parser = clap::value_parser!(u16).range(0..=300))]
        terms: u16,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Compare series coefficients against brute-force enumeration and
    /// print a PASS/FAIL matrix; exits nonzero on any FAIL.
    OracleCheck {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        gamma: u8,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=10))]
        tau: u8,
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u8).range(0..=16))]
        max_n: u8,
    },

    /// Central-limit parameters (μ, σ²) with singularity locations, as
    /// `tau,gamma,mu,sigma2,theta0,rho0` rows.
    CltTable {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        gamma: Option<u8>,
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u8).range(1..=10))]
        tau_max: u8,
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Exact genus distribution at one length next to the discretized
    /// Gaussian, as `g,exact_prob,gaussian_prob` rows.
    Distribution {
        #[arg(long, value_parser = clap::value_parser!(u16).range(1..=200))]
        n: u16,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=10))]
        tau: u8,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        gamma: u8,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Run the verification gate; prints one PASS/FAIL line per
    /// criterion and exits nonzero on any failure.
    Verify {
        /// Skip the genus-2 catalog criterion (the slowest check).
        #[arg(long)]
        quick: bool,
    },
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {:#}", e);
            std::process::exit(1);
        }
    }
}

fn resolve_precision(flag: Option<usize>) -> Result<usize> {
    let digits = match flag {
        Some(d) => d,
        None => match std::env::var("GAMMAFILT_PRECISION") {
            Ok(v) => v
                .parse()
                .context("GAMMAFILT_PRECISION must be an integer")?,
            Err(_) => 60,
        },
    };
    if digits < 30 {
        bail!("precision must be at least 30 decimal digits, got {}", digits);
    }
    Ok(digits)
}

fn run(cli: Cli) -> Result<i32> {
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .context("failed to configure thread pool")?;
    }
    let digits = resolve_precision(cli.precision)?;

    match cli.command {
        Command::Genus { input } => cmd_genus(&input),
        Command::EnumerateShadows { genus, out } => cmd_enumerate_shadows(genus as usize, out),
        Command::Series {
            gamma,
            tau,
            terms,
            format,
            out,
        } => cmd_series(gamma as usize, tau as usize, terms as usize, format, out),
        Command::OracleCheck { gamma, tau, max_n } => {
            cmd_oracle_check(gamma as usize, tau as usize, max_n as usize)
        }
        Command::CltTable { gamma, tau_max, out } => {
            let gammas: Vec<usize> = match gamma {
                Some(g) => vec![g as usize],
                None => vec![1, 2],
            };
            cmd_clt_table(&gammas, tau_max as usize, digits, out)
        }
        Command::Distribution {
            n,
            tau,
            gamma,
            format,
            out,
        } => cmd_distribution(n as usize, tau as usize, gamma as usize, digits, format, out),
        Command::Verify { quick } => cmd_verify(quick),
    }
}

fn emit(out: Option<PathBuf>, content: &str) -> Result<i32> {
    match out {
        Some(path) => fs::write(&path, content)
            .with_context(|| format!("cannot write {}", path.display()))?,
        None => print!("{}", content),
    }
    Ok(0)
}

fn cmd_genus(input: &str) -> Result<i32> {
    let text = if input == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        buf
    } else {
        fs::read_to_string(input).with_context(|| format!("cannot read {}", input))?
    };
    let d = Diagram::parse(&text)?;
    let mut report = String::new();
    report.push_str(&format!("n: {}\n", d.n()));
    report.push_str(&format!("arcs: {}\n", d.arc_count()));
    report.push_str(&format!("genus: {}\n", d.genus()?));
    report.push_str(&format!(
        "boundary_components: {}\n",
        d.boundary_components()
    ));
    report.push_str(&format!("shadow: {}\n", d.shadow().to_text()));
    let irr = d.irreducible_shadows();
    report.push_str(&format!("irreducible_shadows: {}\n", irr.len()));
    for s in &irr {
        report.push_str(&format!("  {} genus={}\n", s.to_text(), s.genus()?));
    }
    report.push_str(&format!(
        "gamma_membership: gamma1={} gamma2={}\n",
        d.is_gamma_diagram(1),
        d.is_gamma_diagram(2)
    ));
    print!("{}", report);
    Ok(0)
}

#[derive(Serialize)]
struct CatalogLayer {
    arcs: usize,
    count: usize,
    diagrams: Vec<String>,
}

#[derive(Serialize)]
struct CatalogOut {
    genus: usize,
    coefficient_vector: Vec<(usize, usize)>,
    layers: Vec<CatalogLayer>,
}

fn cmd_enumerate_shadows(genus: usize, out: Option<PathBuf>) -> Result<i32> {
    let catalog = shadows::enumerate_irreducible_shadows(genus)?;
    let layers: Vec<CatalogLayer> = catalog
        .arc_counts()
        .map(|(arcs, count)| CatalogLayer {
            arcs,
            count,
            diagrams: catalog.members(arcs).iter().map(|d| d.to_text()).collect(),
        })
        .collect();
    let payload = CatalogOut {
        genus,
        coefficient_vector: catalog.arc_counts().collect(),
        layers,
    };
    let mut json = serde_json::to_string_pretty(&payload)?;
    json.push('\n');
    emit(out, &json)
}

#[derive(Serialize)]
struct SeriesRow {
    n: usize,
    g: usize,
    count: String,
}

fn series_rows(gamma: usize, tau: usize, terms: usize) -> Result<Vec<SeriesRow>> {
    let series = genfun::g_series(tau, gamma, terms)?;
    let mut rows = Vec::new();
    for n in 0..=terms {
        let coeff = series.coeff(n);
        for g in 0..=coeff.degree(Marker::T) {
            let count = coeff.coeff([0, g, 0, 0]);
            if !count.is_zero() {
                rows.push(SeriesRow {
                    n,
                    g: g as usize,
                    count: count.to_string(),
                });
            }
        }
    }
    Ok(rows)
}

fn cmd_series(
    gamma: usize,
    tau: usize,
    terms: usize,
    format: Format,
    out: Option<PathBuf>,
) -> Result<i32> {
    let rows = series_rows(gamma, tau, terms)?;
    let content = match format {
        Format::Csv => {
            let mut s = String::from("n,g,count\n");
            for r in &rows {
                s.push_str(&format!("{},{},{}\n", r.n, r.g, r.count));
            }
            s
        }
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&rows)?;
            s.push('\n');
            s
        }
    };
    emit(out, &content)
}

fn cmd_oracle_check(gamma: usize, tau: usize, max_n: usize) -> Result<i32> {
    let mut all_pass = true;
    let mut output = String::new();

    let matchings_cap = max_n.min(oracle::OracleConfig::default().max_arcs);
    let h = genfun::h_series(gamma, matchings_cap)?;
    for n in 0..=matchings_cap {
        let row = oracle::count_matchings(n, gamma)?;
        let mut ok = true;
        for g in 0..=n / 2 {
            let want = row.get(&g).cloned().unwrap_or_else(BigInt::zero);
            if h.coeff_int(n, g as u16, 0) != want {
                ok = false;
            }
        }
        all_pass &= ok;
        output.push_str(&format!(
            "matchings gamma={} n={}: {}\n",
            gamma,
            n,
            if ok { "PASS" } else { "FAIL" }
        ));
    }

    let g_series = genfun::g_series(tau, gamma, max_n)?;
    for n in 0..=max_n {
        let row = oracle::count_structures(n, tau, gamma)?;
        let mut ok = true;
        for g in 0..=n / 2 {
            let want = row.get(&g).cloned().unwrap_or_else(BigInt::zero);
            if g_series.coeff_int(n, g as u16, 0) != want {
                ok = false;
            }
        }
        all_pass &= ok;
        output.push_str(&format!(
            "structures tau={} gamma={} n={}: {}\n",
            tau,
            gamma,
            n,
            if ok { "PASS" } else { "FAIL" }
        ));
    }

    output.push_str(&format!(
        "RESULT: {}\n",
        if all_pass { "PASS" } else { "FAIL" }
    ));
    print!("{}", output);
    Ok(if all_pass { 0 } else { 1 })
}


fn cmd_clt_table(
    gammas: &[usize],
    tau_max: usize,
    digits: usize,
    out: Option<PathBuf>,
) -> Result<i32> {
    let reports = asymptotics::clt_table(gammas, tau_max, digits)?;
    let mut csv = String::from("tau,gamma,mu,sigma2,theta0,rho0\n");
    for r in &reports {
        csv.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.tau,
            r.gamma,
            r.mu.to_sig_string(30),
            r.sigma2.to_sig_string(30),
            r.theta0.to_sig_string(30),
            r.rho0.to_sig_string(30),
        ));
    }
    emit(out, &csv)
}

fn cmd_distribution(
    n: usize,
    tau: usize,
    gamma: usize,
    digits: usize,
    format: Format,
    out: Option<PathBuf>,
) -> Result<i32> {
    let report = asymptotics::gaussian_compare_with_digits(tau, gamma, n, digits)?;
    let content = match format {
        Format::Csv => {
            let mut s = String::from("g,exact_prob,gaussian_prob\n");
            for (g, exact, gauss) in &report.rows {
                s.push_str(&format!(
                    "{},{},{:.15e}\n",
                    g,
                    format_rational_sig(exact, 30),
                    gauss
                ));
            }
            s
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Row {
                g: usize,
                exact_prob: String,
                gaussian_prob: f64,
            }
            let rows: Vec<Row> = report
                .rows
                .iter()
                .map(|(g, exact, gauss)| Row {
                    g: *g,
                    exact_prob: format_rational_sig(exact, 30),
                    gaussian_prob: *gauss,
                })
                .collect();
            let mut s = serde_json::to_string_pretty(&rows)?;
            s.push('\n');
            s
        }
    };
    emit(out, &content)
}

fn cmd_verify(quick: bool) -> Result<i32> {
    let mut all_pass = true;
    for report in acceptance::run_all(quick) {
        println!("{}", report.line());
        all_pass &= report.pass;
    }
    Ok(if all_pass { 0 } else { 1 })
}
