//! `sl2syn`: solve, sample and plot minimizing geodesics on SL(2,R).

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use sl2_synthesis::automorphisms::{self, Branch, Factorization, SO12Matrix};
use sl2_synthesis::family::{optimal_horizon, sample_path};
use sl2_synthesis::quotient::{project, Stratum};
use sl2_synthesis::su2::{
    c_of_omega, landing_match_error, su2_landing_point, su2_landing_time, su2_planar_geodesic,
};
use sl2_synthesis::sweep::Exec;
use sl2_synthesis::synthesis::{
    classify_cut_locus, distance_to_class_with, solve_with, Tolerances,
};
use sl2_synthesis::{figures, selftest, Mat2, QuotientPoint};

#[derive(Parser)]
#[command(
    name = "sl2syn",
    version,
    about = "Minimizing sub-Riemannian geodesics on SL(2,R)"
)]
struct Cli {
    /// Significant digits in printed numbers (CSV defaults to full precision).
    #[arg(long, global = true)]
    precision: Option<usize>,
    /// One field per line instead of a single key=value line.
    #[arg(long, global = true)]
    pretty: bool,
    /// Root-finding tolerance.
    #[arg(long, global = true, default_value_t = sl2_synthesis::roots::EPS_ROOT)]
    tol_root: f64,
    /// Accepted endpoint residual, relative to max(1, |Xf|).
    #[arg(long, global = true, default_value_t = sl2_synthesis::synthesis::EPS_SYNTH)]
    tol_synth: f64,
    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Evaluate sweeps on the calling thread only.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Conjugacy class (x, y) of a matrix given as 4 reals, row-major.
    #[command(allow_negative_numbers = true)]
    Project {
        #[arg(required = true)]
        m: Vec<String>,
    },
    /// Minimizing geodesic from Xi to Xf (8 reals: Xi then Xf, row-major).
    #[command(allow_negative_numbers = true)]
    Solve {
        #[arg(required = true)]
        m: Vec<String>,
    },
    /// Distance from the identity to the class (x, y).
    #[command(allow_negative_numbers = true)]
    Dist { x: f64, y: f64 },
    /// Samples of the planar geodesic of parameter c as CSV.
    #[command(allow_negative_numbers = true)]
    Path {
        c: f64,
        /// End of the sampled range in s = t/2; defaults to the optimal horizon.
        #[arg(long)]
        s_max: Option<f64>,
        #[arg(long, default_value_t = 100)]
        n: usize,
    },
    /// Cut-locus tag of a matrix given as 4 reals.
    #[command(allow_negative_numbers = true)]
    Classify {
        #[arg(required = true)]
        m: Vec<String>,
    },
    /// Write figure 1, 2 or 3 as SVG.
    Figure { which: u8 },
    /// SU(2) geodesic of parameter omega and its SL(2) partner.
    #[command(allow_negative_numbers = true)]
    Su2 {
        omega: f64,
        /// Also print the point reached at this s.
        #[arg(long)]
        s: Option<f64>,
    },
    /// Factor a 3x3 automorphism matrix (9 reals, row-major).
    #[command(allow_negative_numbers = true)]
    AutFactor {
        #[arg(required = true)]
        m: Vec<String>,
    },
    /// Matrix K realizing the automorphism O(theta1) I^branch H(z) O(theta2).
    #[command(allow_negative_numbers = true)]
    AutRealize {
        theta1: f64,
        branch: u8,
        z: f64,
        theta2: f64,
    },
    /// Run the built-in invariant checks.
    Selftest,
}

enum Failure {
    /// Bad input or a library error; exit code 2.
    Usage(String),
    /// Self-test failed; exit code 1.
    Check,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

const DEFAULT_PRECISION: usize = 12;

/// `v` with `prec` significant digits, trailing zeros removed.
fn fmt_num(v: f64, prec: usize) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return format!("{v}");
    }
    let prec = prec.clamp(1, 17);
    let mag = v.abs().log10().floor() as i32;
    let decimals = prec as i32 - 1 - mag;
    if (-4..=16).contains(&mag) && decimals >= 0 {
        let s = format!("{:.*}", decimals as usize, v);
        let s = if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        };
        if s == "-0" {
            "0".into()
        } else {
            s
        }
    } else {
        let s = format!("{:.*e}", prec - 1, v);
        let (mant, exp) = s.split_once('e').unwrap_or((&s, "0"));
        let mant = if mant.contains('.') {
            mant.trim_end_matches('0').trim_end_matches('.')
        } else {
            mant
        };
        format!("{mant}e{exp}")
    }
}

struct Out {
    prec: usize,
    pretty: bool,
    fields: Vec<(String, String)>,
}

impl Out {
    fn new(cli: &Cli) -> Self {
        Self {
            prec: cli.precision.unwrap_or(DEFAULT_PRECISION),
            pretty: cli.pretty,
            fields: Vec::new(),
        }
    }

    fn num(&mut self, k: &str, v: f64) -> &mut Self {
        let s = fmt_num(v, self.prec);
        self.fields.push((k.into(), s));
        self
    }

    fn text(&mut self, k: &str, v: impl ToString) -> &mut Self {
        self.fields.push((k.into(), v.to_string()));
        self
    }

    fn mat(&mut self, k: &str, m: Mat2) -> &mut Self {
        for (i, v) in m.to_row_major().into_iter().enumerate() {
            self.num(&format!("{k}{}{}", i / 2, i % 2), v);
        }
        self
    }

    fn render(&self) -> String {
        let sep = if self.pretty { "\n" } else { " " };
        let body: Vec<String> = self
            .fields
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        format!("{}\n", body.join(sep))
    }
}

fn parse_reals(words: &[String], n: usize) -> Result<Vec<f64>, Failure> {
    let vals: Vec<f64> = words
        .iter()
        .flat_map(|w| w.split_whitespace())
        .map(|t| {
            t.parse::<f64>()
                .map_err(|_| Failure::Usage(format!("not a number: {t}")))
        })
        .collect::<Result<_, _>>()?;
    if vals.len() != n {
        return Err(Failure::Usage(format!(
            "expected {n} numbers, got {}",
            vals.len()
        )));
    }
    Ok(vals)
}

fn parse_mat(words: &[String]) -> Result<Mat2, Failure> {
    let v = parse_reals(words, 4)?;
    Ok(Mat2::new(v[0], v[1], v[2], v[3]))
}

fn stratum_name(p: QuotientPoint) -> &'static str {
    match p.stratum() {
        Stratum::Regular => "regular",
        Stratum::Singular => "singular",
        Stratum::Interior => "interior",
    }
}

fn run(cli: &Cli) -> Result<String, Failure> {
    let tol = Tolerances {
        root: cli.tol_root,
        synth: cli.tol_synth,
    };
    let exec = if cli.sequential {
        Exec::Sequential
    } else {
        Exec::default()
    };
    let mut out = Out::new(cli);
    match &cli.cmd {
        Cmd::Project { m } => {
            let p = project(parse_mat(m)?)?;
            out.num("x", p.x)
                .num("y", p.y)
                .text("stratum", stratum_name(p));
        }
        Cmd::Solve { m } => {
            let v = parse_reals(m, 8)?;
            let xi = Mat2::new(v[0], v[1], v[2], v[3]);
            let xf = Mat2::new(v[4], v[5], v[6], v[7]);
            let sol = solve_with(xi, xf, &tol)?;
            out.num("c", sol.c)
                .num("t_f", sol.t_f)
                .mat("P", sol.p)
                .mat("K", sol.k)
                .num("residual", sol.residual)
                .text("cut_flag", sol.cut);
        }
        Cmd::Dist { x, y } => {
            let d = distance_to_class_with(QuotientPoint::new(*x, *y), &tol)?;
            out.num("t_f", d.t_f)
                .num("c", d.c)
                .num("s", d.s)
                .text("cut_flag", d.cut);
        }
        Cmd::Path { c, s_max, n } => {
            let s_max = s_max.unwrap_or_else(|| optimal_horizon(*c));
            if !s_max.is_finite() {
                return Err(Failure::Usage(
                    "c = 0 has no optimal horizon; pass --s-max".into(),
                ));
            }
            let samples = sample_path(*c, s_max, *n)?;
            let f = |v: f64| match cli.precision {
                Some(p) => fmt_num(v, p),
                None => format!("{v}"),
            };
            let mut s = String::from("s,x,y\n");
            for p in samples {
                let _ = writeln!(s, "{},{},{}", f(p.s), f(p.x), f(p.y));
            }
            return Ok(s);
        }
        Cmd::Classify { m } => {
            let x = parse_mat(m)?;
            let class = classify_cut_locus(x)?;
            let p = project(x)?;
            out.text("class", class.as_str())
                .num("x", p.x)
                .num("y", p.y);
        }
        Cmd::Figure { which } => {
            return figures::render(*which, exec)
                .ok_or_else(|| Failure::Usage(format!("no figure {which}; use 1, 2 or 3")))?
                .map_err(Failure::from);
        }
        Cmd::Su2 { omega, s } => {
            let lp = su2_landing_point(*omega);
            out.num("omega", *omega)
                .num("c", c_of_omega(*omega))
                .num("landing_s", su2_landing_time(*omega))
                .num("landing_x", lp.x)
                .num("landing_y", lp.y)
                .num("match_error", landing_match_error(*omega));
            if let Some(s) = s {
                let p = su2_planar_geodesic(*omega, *s);
                out.num("x", p.x).num("y", p.y);
            }
        }
        Cmd::AutFactor { m } => {
            let v: [f64; 9] = parse_reals(m, 9)?
                .try_into()
                .map_err(|_| Failure::Usage("expected 9 numbers".into()))?;
            let mat = SO12Matrix::new(automorphisms::from_rows(v))?;
            let f = automorphisms::factorize(&mat)?;
            let err = (f.compose() - mat.into_inner()).abs().max();
            out.num("theta1", f.theta1)
                .text("branch", f.branch.index())
                .num("z", f.z)
                .num("theta2", f.theta2)
                .num("error", err);
        }
        Cmd::AutRealize {
            theta1,
            branch,
            z,
            theta2,
        } => {
            let branch = Branch::from_index(*branch)
                .ok_or_else(|| Failure::Usage(format!("branch must be 0, 1 or 2, got {branch}")))?;
            let k = automorphisms::realize(&Factorization {
                theta1: *theta1,
                branch,
                z: *z,
                theta2: *theta2,
            });
            out.mat("K", k).num("det", k.det());
        }
        Cmd::Selftest => {
            let reports = selftest::run(&selftest::Hooks::default());
            let mut s = String::new();
            for r in &reports {
                let tag = if r.passed { "PASS" } else { "FAIL" };
                let _ = writeln!(s, "{tag} {} {}", r.name, r.detail);
            }
            emit(cli, &s)?;
            return if selftest::all_passed(&reports) {
                Ok(String::new())
            } else {
                Err(Failure::Check)
            };
        }
    }
    Ok(out.render())
}

fn emit(cli: &Cli, s: &str) -> std::io::Result<()> {
    match &cli.out {
        Some(path) => std::fs::write(path, s),
        None => std::io::stdout().write_all(s.as_bytes()),
    }
}

/// Splits a quoted matrix such as `"-1 0 0 1"` into separate words, which
/// clap would otherwise reject as an unknown flag.
fn split_number_lists(args: impl Iterator<Item = String>) -> Vec<String> {
    args.flat_map(|a| {
        let numeric = a.starts_with('-')
            && a[1..].starts_with(|ch: char| ch.is_ascii_digit() || ch == '.')
            && a.contains(char::is_whitespace);
        if numeric {
            a.split_whitespace().map(String::from).collect()
        } else {
            vec![a]
        }
    })
    .collect()
}

fn main() -> ExitCode {
    let cli = Cli::parse_from(split_number_lists(std::env::args()));
    match run(&cli) {
        Ok(s) => {
            if s.is_empty() {
                return ExitCode::SUCCESS;
            }
            match emit(&cli, &s) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(2)
                }
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Check) => ExitCode::from(1),
    }
}
