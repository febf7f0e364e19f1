use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::value::RawValue;
use sniep5::format::sig;
use sniep5::matrix::parse_matrix;
use sniep5::region::write_csv;
use sniep5::{
    classify, decide_perturbed, find_g, q_poly, sample_region, verify_spectrum, Decision64, Error,
    Perturbation, PerturbedDecision64, RegionSample64, Sign, SortedSpectrum64, Spectrum64,
    SymMatrix64, VerificationReport, Verdict,
};

const EXIT_UNKNOWN: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_VERIFY: u8 = 3;

#[derive(Parser)]
#[command(name = "sniep5", version, about = "Realizability of 5-element spectra by symmetric nonnegative matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a spectrum and print the decision.
    Check {
        #[command(flatten)]
        spectrum: SpectrumArg,
        #[command(flatten)]
        opts: OutputOpts,
        #[command(flatten)]
        check: VerifyOpts,
    },
    /// Build the realizing matrix for a pattern certificate and verify it.
    Realize {
        #[command(flatten)]
        spectrum: SpectrumArg,
        #[command(flatten)]
        opts: OutputOpts,
        /// Relative tolerance for the eigenvalue check.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Print the real roots of the pattern-B cubic, marking the selected g.
    Qroots {
        #[command(flatten)]
        spectrum: SpectrumArg,
        #[command(flatten)]
        opts: OutputOpts,
    },
    /// Decide a perturbation lambda1 + s, lambda_i +/- s.
    Perturb {
        #[command(flatten)]
        spectrum: SpectrumArg,
        /// Perturbed index, 2 to 5.
        #[arg(long)]
        i: usize,
        #[arg(long, value_parser = parse_sign)]
        sign: Sign,
        /// Perturbation size, s >= 0.
        #[arg(long, allow_hyphen_values = true)]
        s: f64,
        #[command(flatten)]
        opts: OutputOpts,
        #[command(flatten)]
        check: VerifyOpts,
    },
    /// Classify a grid over the normalized region lambda1 = 1, lambda3 > e1.
    Sample {
        /// Grid points per axis.
        #[arg(long, default_value_t = 20)]
        grid: usize,
        /// Trace values e1 in [0, 1); repeatable.
        #[arg(long = "t", required = true, allow_hyphen_values = true)]
        t: Vec<f64>,
        #[command(flatten)]
        opts: OutputOpts,
        #[command(flatten)]
        check: VerifyOpts,
    },
    /// Check a matrix file against a target spectrum.
    Verify {
        /// Matrix as five lines of five numbers or a JSON array of rows; "-" reads stdin.
        #[arg(long)]
        matrix: PathBuf,
        #[command(flatten)]
        spectrum: SpectrumArg,
        #[command(flatten)]
        opts: OutputOpts,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
}

#[derive(Args)]
struct SpectrumArg {
    /// Five comma-separated reals, e.g. 1000,381,360,-641,-750.
    #[arg(long, allow_hyphen_values = true)]
    spectrum: String,
}

#[derive(Args)]
struct OutputOpts {
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write output to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyOpts {
    /// Build and verify the certificate matrix when there is one.
    #[arg(long)]
    verify: bool,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Csv,
}

fn parse_sign(s: &str) -> Result<Sign, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Verification(String),
    Io(io::Error),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NoConvergence { .. } => Failure::Verification(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

struct Output {
    body: String,
    code: u8,
}

#[derive(Serialize)]
struct DecisionWithMatrix<'a> {
    #[serde(flatten)]
    decision: &'a Decision64,
    #[serde(skip_serializing_if = "Option::is_none")]
    matrix: Option<Box<RawValue>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    verification: Option<VerificationReport<f64>>,
}

#[derive(Serialize)]
struct PerturbedWithCheck<'a> {
    #[serde(flatten)]
    decision: &'a PerturbedDecision64,
    #[serde(skip_serializing_if = "Option::is_none")]
    verification: Option<VerificationReport<f64>>,
}

#[derive(Serialize)]
struct QRoots {
    coefficients: [f64; 4],
    range: [f64; 2],
    roots: Vec<f64>,
    g: Option<f64>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}\n\nFor more information, try '--help'.");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(EXIT_VERIFY)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn run(command: Command) -> Result<u8, Failure> {
    let (output, opts) = match command {
        Command::Check { spectrum, opts, check } => {
            let s = read_spectrum(&spectrum)?;
            (check_cmd(&s, format(&opts, Format::Json)?, &check)?, opts)
        }
        Command::Realize { spectrum, opts, tol } => {
            let s = read_spectrum(&spectrum)?;
            (realize_cmd(&s, format(&opts, Format::Text)?, tol)?, opts)
        }
        Command::Qroots { spectrum, opts } => {
            let s = read_spectrum(&spectrum)?;
            (qroots_cmd(&s, format(&opts, Format::Text)?)?, opts)
        }
        Command::Perturb { spectrum, i, sign, s: step, opts, check } => {
            let s = read_spectrum(&spectrum)?;
            let p = Perturbation::new(i, sign, step)?;
            (perturb_cmd(&s, &p, format(&opts, Format::Json)?, &check)?, opts)
        }
        Command::Sample { grid, t, opts, check } => {
            let fmt = match opts.format.unwrap_or(Format::Csv) {
                Format::Text => Format::Csv,
                f => f,
            };
            (sample_cmd(grid, &t, fmt, &check)?, opts)
        }
        Command::Verify { matrix, spectrum, opts, tol } => {
            let s = read_spectrum(&spectrum)?;
            let text = if matrix.as_os_str() == "-" {
                io::read_to_string(io::stdin())?
            } else {
                fs::read_to_string(&matrix)
                    .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", matrix.display())))?
            };
            let m: SymMatrix64 = parse_matrix(&text)?;
            (verify_cmd(&m, &s, format(&opts, Format::Json)?, tol)?, opts)
        }
    };
    match &opts.out {
        Some(path) => fs::write(path, &output.body)?,
        None => io::stdout().lock().write_all(output.body.as_bytes())?,
    }
    Ok(output.code)
}

fn read_spectrum(arg: &SpectrumArg) -> Result<SortedSpectrum64, Failure> {
    let s: Spectrum64 = arg.spectrum.parse()?;
    Ok(s.sort_descending())
}

fn format(opts: &OutputOpts, default: Format) -> Result<Format, Failure> {
    match opts.format.unwrap_or(default) {
        Format::Csv => Err(Failure::Usage("csv output is only available for `sample`".into())),
        f => Ok(f),
    }
}

fn check_tol(tol: f64) -> Result<(), Failure> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidTolerance.into())
    }
}

fn to_json<S: Serialize>(value: &S) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output types serialize");
    s.push('\n');
    s
}

fn num(x: f64) -> String {
    sig(x, 17)
}

fn spectrum_text(s: &SortedSpectrum64) -> String {
    s.values().iter().map(|&x| num(x)).collect::<Vec<_>>().join(",")
}

fn decision_text(d: &Decision64) -> String {
    let mut out = format!("verdict: {}\n", d.verdict());
    if let Some(c) = d.certificate() {
        out += &format!("certificate: {}\n", c.tag());
        if let Some(g) = c.g() {
            out += &format!("g: {}\n", num(g));
        }
    }
    if let Some(r) = d.reason() {
        out += &format!("reason: {}\n", r.tag());
    }
    let det = &d.details;
    out += &format!(
        "e1: {}\nr: {}\nu: {}\nmn_sum: {}\n",
        num(det.e1),
        num(det.r),
        num(det.u),
        num(det.mn_sum)
    );
    for w in &d.warnings {
        out += &format!("warning: {w:?}\n");
    }
    out
}

fn report_text(rep: &VerificationReport<f64>) -> String {
    format!(
        "pass: {}\nmax_deviation: {}\neigenvalues: {}\ntarget: {}\n",
        rep.pass,
        sig(rep.max_deviation, 6),
        spectrum_text(&rep.eigenvalues),
        spectrum_text(&rep.target)
    )
}

fn verified(m: &SymMatrix64, s: &SortedSpectrum64, tol: f64) -> Result<(VerificationReport<f64>, u8), Failure> {
    let rep = verify_spectrum(m, s, tol)?;
    let code = if rep.pass { 0 } else { EXIT_VERIFY };
    Ok((rep, code))
}

fn check_cmd(s: &SortedSpectrum64, fmt: Format, opts: &VerifyOpts) -> Result<Output, Failure> {
    check_tol(opts.tol)?;
    let d = classify(s);
    let mut code = if d.verdict() == Verdict::Unknown { EXIT_UNKNOWN } else { 0 };
    let mut matrix = None;
    let mut report = None;
    if opts.verify {
        if let Some(built) = d.certificate().and_then(|c| c.build_matrix(s)) {
            let m = built?;
            let (rep, c) = verified(&m, s, opts.tol)?;
            code = code.max(c);
            matrix = Some(m);
            report = Some(rep);
        }
    }
    let body = match fmt {
        Format::Json => to_json(&DecisionWithMatrix {
            decision: &d,
            matrix: matrix.as_ref().map(SymMatrix64::to_json_raw),
            verification: report,
        }),
        _ => {
            let mut out = decision_text(&d);
            if let (Some(m), Some(rep)) = (&matrix, &report) {
                out += "matrix:\n";
                out += &m.to_text();
                out += &report_text(rep);
            }
            out
        }
    };
    Ok(Output { body, code })
}

fn realize_cmd(s: &SortedSpectrum64, fmt: Format, tol: f64) -> Result<Output, Failure> {
    check_tol(tol)?;
    let d = classify(s);
    let Some(built) = d.certificate().and_then(|c| c.build_matrix(s)) else {
        let what = match d.certificate() {
            Some(c) => format!("certificate {} carries no explicit matrix", c.tag()),
            None => format!("verdict is {}", d.verdict()),
        };
        eprintln!("no matrix: {what}");
        let body = match fmt {
            Format::Json => to_json(&d),
            _ => decision_text(&d),
        };
        return Ok(Output { body, code: EXIT_UNKNOWN });
    };
    let m = built?;
    let (rep, code) = verified(&m, s, tol)?;
    let body = match fmt {
        Format::Json => to_json(&DecisionWithMatrix {
            decision: &d,
            matrix: Some(m.to_json_raw()),
            verification: Some(rep),
        }),
        _ => {
            let cert = d.certificate().expect("matrix implies certificate");
            let mut out = m.to_text();
            out += &format!("certificate: {}\n", cert.tag());
            if let Some(g) = cert.g() {
                out += &format!("g: {}\n", num(g));
            }
            out + &report_text(&rep)
        }
    };
    Ok(Output { body, code })
}

fn qroots_cmd(s: &SortedSpectrum64, fmt: Format) -> Result<Output, Failure> {
    let q = q_poly(s);
    let roots = q.real_roots()?;
    let g = find_g(s);
    let hi = s.e1() / 2.0;
    let body = match fmt {
        Format::Json => to_json(&QRoots {
            coefficients: [q.c3, q.c2, q.c1, q.c0],
            range: [0.0, hi],
            roots,
            g,
        }),
        _ => {
            let term = |c: f64, power: &str| {
                let sign = if c < 0.0 { '-' } else { '+' };
                format!(" {sign} {}{power}", num(c.abs()))
            };
            let mut out = format!(
                "Q(z) = {} z^3{}{}{}\nrange: [0, {}]\n",
                num(q.c3),
                term(q.c2, " z^2"),
                term(q.c1, " z"),
                term(q.c0, ""),
                num(hi)
            );
            for &z in &roots {
                out += &num(z);
                if g == Some(z) {
                    out += "  <- g (largest root in range)";
                }
                out.push('\n');
            }
            match g {
                Some(g) if !roots.contains(&g) => out += &format!("g: {} (range endpoint)\n", num(g)),
                None => out += "g: none in range\n",
                _ => {}
            }
            out
        }
    };
    Ok(Output { body, code: 0 })
}

fn perturb_cmd(
    s: &SortedSpectrum64,
    p: &Perturbation<f64>,
    fmt: Format,
    opts: &VerifyOpts,
) -> Result<Output, Failure> {
    check_tol(opts.tol)?;
    let d = decide_perturbed(s, p);
    let mut code = 0;
    let mut report = None;
    if opts.verify {
        if let Some(m) = &d.matrix {
            let (rep, c) = verified(m, &d.perturbed, opts.tol)?;
            code = c;
            report = Some(rep);
        }
    }
    let body = match fmt {
        Format::Json => to_json(&PerturbedWithCheck { decision: &d, verification: report }),
        _ => {
            let mut out = format!("rule: {}\nperturbed: {}\n", d.rule.tag(), spectrum_text(&d.perturbed));
            out += &decision_text(&d.decision);
            if let Some(m) = &d.matrix {
                out += "matrix:\n";
                out += &m.to_text();
            }
            if let Some(rep) = &report {
                out += &report_text(rep);
            }
            out
        }
    };
    Ok(Output { body, code })
}

fn sample_cmd(grid: usize, t: &[f64], fmt: Format, opts: &VerifyOpts) -> Result<Output, Failure> {
    check_tol(opts.tol)?;
    let samples = sample_region(grid, t)?;
    let mut code = 0;
    if opts.verify {
        for sample in &samples {
            if let Some(rep) = sample.verify(opts.tol) {
                if !rep?.pass {
                    eprintln!("verification failed at {}", spectrum_text(&sample.spectrum()));
                    code = EXIT_VERIFY;
                }
            }
        }
    }
    let body = match fmt {
        Format::Json => to_json(&samples.iter().map(sample_json).collect::<Vec<_>>()),
        _ => {
            let mut buf = Vec::new();
            write_csv(&samples, &mut buf)?;
            String::from_utf8(buf).expect("CSV is ASCII")
        }
    };
    Ok(Output { body, code })
}

fn sample_json(s: &RegionSample64) -> serde_json::Value {
    serde_json::json!({
        "lambda2": s.lambda2,
        "lambda3": s.lambda3,
        "lambda4": s.lambda4,
        "lambda5": s.lambda5,
        "e1": s.e1,
        "u": s.u,
        "r": s.r,
        "g": s.g,
        "verdict": s.verdict(),
        "tag": s.outcome.tag(),
    })
}

fn verify_cmd(m: &SymMatrix64, s: &SortedSpectrum64, fmt: Format, tol: f64) -> Result<Output, Failure> {
    check_tol(tol)?;
    let (rep, code) = verified(m, s, tol)?;
    let body = match fmt {
        Format::Json => to_json(&rep),
        _ => report_text(&rep),
    };
    Ok(Output { body, code })
}
