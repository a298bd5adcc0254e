//! `twoorbit`: run the exact and numerical checks from the command line.
//!
//! Exit status: 0 when every verification passes, 1 when one fails or cannot be
//! completed, 2 for malformed input.

mod config;
mod output;

use std::io::BufReader;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, CommandFactory, FromArgMatches, Parser, Subcommand};

use output::{Format, Table};
use twoorbit::braid::{verify_braid_lemmas, writhe, Braid};
use twoorbit::dynamics::{contact_volume, find_planar_orbit, measure, PeriodicOrbitResult, RotationKind, StarBody};
use twoorbit::index::ech_index;
use twoorbit::perturb::{global_shift_from_summaries, sweep};
use twoorbit::spectrum::{
    attach_indices, enumerate_spectrum_with_budget, monotonicity_check, ratio_is_irrational, volume_asymptotics,
    DEFAULT_BUDGET,
};
use twoorbit::{make_ellipsoid_model, Scalar, ScalarError, TwoOrbitModel};

#[derive(Parser, Debug)]
#[command(name = "twoorbit", version, about = "Verification runs for contact forms with two simple Reeb orbits")]
pub struct Cli {
    /// Output path, `-` for standard output.
    #[arg(long, global = true, default_value = "-")]
    out: String,
    #[arg(long, global = true, value_enum, default_value = "csv")]
    format: Format,
    /// `key = value` file of flags; command-line flags take precedence.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Ellipsoid {
    /// First ellipsoid parameter, e.g. `1` or `3/2`.
    #[arg(long)]
    a: String,
    /// Second ellipsoid parameter, e.g. `0+1*sqrt(2)`.
    #[arg(long)]
    b: String,
}

impl Ellipsoid {
    fn scalars(&self) -> Result<(Scalar, Scalar)> {
        Ok((parse_scalar(&self.a)?, parse_scalar(&self.b)?))
    }

    fn model(&self) -> Result<(TwoOrbitModel, Scalar)> {
        let (a, b) = self.scalars()?;
        let vol = a.checked_mul(&b)?;
        Ok((make_ellipsoid_model(&a, &b)?, vol))
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// The first `k` entries of the action spectrum of E(a,b).
    Spectrum {
        #[command(flatten)]
        ellipsoid: Ellipsoid,
        #[arg(long)]
        k: u64,
        /// Memory budget in bytes.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// ECH index of the orbit set with multiplicities (m1, m2).
    Index {
        #[command(flatten)]
        ellipsoid: Ellipsoid,
        #[arg(long)]
        m1: u64,
        #[arg(long)]
        m2: u64,
        /// Order of the lens-space quotient.
        #[arg(long, default_value_t = 1)]
        p: u64,
        #[arg(long, default_value_t = 0)]
        h1: u64,
        #[arg(long, default_value_t = 0)]
        h2: u64,
    },
    /// Compare N_k^2/(2k) with the volume ab at the listed ranks.
    VolumeCheck {
        #[command(flatten)]
        ellipsoid: Ellipsoid,
        #[arg(long, value_delimiter = ',', required = true)]
        k: Vec<u64>,
        /// Largest accepted |N_k^2/(2k ab) - 1|.
        #[arg(long, default_value_t = 2e-3)]
        tol: f64,
    },
    /// Exact monotonicity of the first `k` spectrum entries.
    Monotonicity {
        #[command(flatten)]
        ellipsoid: Ellipsoid,
        #[arg(long)]
        k: u64,
    },
    /// Torus-braid writhe and linking over all coprime (a,b), or the writhe of a braid file.
    Braid {
        #[arg(long, default_value_t = 9)]
        a_max: i64,
        #[arg(long, default_value_t = 7)]
        b_max: u64,
        /// Braid in the `d T samples` text format; replaces the sweep.
        #[arg(long)]
        input: Option<String>,
    },
    /// Local defect, center identity and pairwise shift bounds over all perturbation configurations.
    PerturbSweep {
        #[arg(long, default_value_t = 12)]
        m_max: u64,
        #[arg(long, default_value_t = 5)]
        b_max: u64,
        #[arg(long, default_value_t = 7)]
        a_max: i64,
    },
    /// Planar orbits, rotation numbers and volume of a star-shaped body.
    Dynamics {
        #[arg(long, default_value = "ellipsoid:1,sqrt2")]
        body: String,
    },
    /// Volume/period/rotation relations measured on a star-shaped body.
    Relations {
        #[arg(long, default_value = "ellipsoid:1,sqrt2")]
        body: String,
        #[arg(long, default_value_t = 1e-5)]
        tol: f64,
    },
}

/// Malformed input, reported with exit status 2.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn parse_scalar(s: &str) -> Result<Scalar> {
    s.parse::<Scalar>().map_err(|e| Usage(e.to_string()).into())
}

fn parse_body(s: &str) -> Result<StarBody> {
    s.parse::<StarBody>().map_err(|e| Usage(e.to_string()).into())
}

fn is_usage(e: &anyhow::Error) -> bool {
    if e.downcast_ref::<Usage>().is_some() {
        return true;
    }
    match e.downcast_ref::<twoorbit::Error>() {
        Some(twoorbit::Error::Parse(_) | twoorbit::Error::Domain(_) | twoorbit::Error::Inadmissible { .. }) => true,
        Some(twoorbit::Error::Scalar(ScalarError::Parse { .. })) => true,
        _ => matches!(e.downcast_ref::<ScalarError>(), Some(ScalarError::Parse { .. })),
    }
}

fn orbit_rows(t: &mut Table, o: &PeriodicOrbitResult) {
    let i = o.plane;
    t.push(vec![format!("period_{i}"), o.period.value.to_string(), o.period.radius.to_string()]);
    match &o.rotation {
        Some(r) => match (r.kind, r.theta, r.eigenvalues) {
            (RotationKind::Hyperbolic, _, Some([lo, hi])) => {
                t.push(vec![format!("eigenvalue_{i}_low"), lo.to_string(), String::new()]);
                t.push(vec![format!("eigenvalue_{i}_high"), hi.to_string(), String::new()]);
            }
            (_, Some(th), _) => t.push(vec![format!("theta_{i}"), th.value.to_string(), th.radius.to_string()]),
            _ => {}
        },
        None => t.push(vec![format!("theta_{i}"), "unresolved".into(), String::new()]),
    }
    t.push(vec![format!("monodromy_det_{i}"), o.monodromy_det().to_string(), String::new()]);
    t.push(vec![format!("energy_drift_{i}"), o.energy_drift.to_string(), String::new()]);
    t.push(vec![format!("return_error_{i}"), o.return_error.to_string(), String::new()]);
}

fn healthy(o: &PeriodicOrbitResult) -> bool {
    (o.monodromy_det() - 1.0).abs() <= 1e-8 && o.energy_drift <= 1e-9 && o.return_error <= 1e-9
}

/// Runs the command, writes its table, and reports whether every check passed.
fn run(cli: &Cli) -> Result<bool> {
    let mut pass = true;
    let table = match &cli.command {
        Command::Spectrum { ellipsoid, k, budget } => {
            let (model, vol) = ellipsoid.model()?;
            let mut entries = enumerate_spectrum_with_budget(&model, *k, *budget)?;
            attach_indices(&model, &mut entries)?;
            let mut t = Table::new(&["k", "m1", "m2", "action", "action_f64", "index", "ratio_to_vol"]);
            for e in &entries {
                t.push(vec![
                    e.rank.to_string(),
                    e.m1.to_string(),
                    e.m2.to_string(),
                    e.action.to_string(),
                    e.action.to_f64().to_string(),
                    e.index.map_or(String::new(), |i| i.to_string()),
                    e.ratio_to_vol(&vol).map_or(String::new(), |r| r.to_string()),
                ]);
            }
            t
        }
        Command::Index { ellipsoid, m1, m2, p, h1, h2 } => {
            let (mut model, _) = ellipsoid.model()?;
            if (*p, *h1, *h2) != (1, 0, 0) {
                model = model.with_homology(*p, *h1, *h2)?;
            }
            let mut t = Table::new(&["m1", "m2", "index"]);
            t.push(vec![m1.to_string(), m2.to_string(), ech_index(&model, *m1, *m2)?.to_string()]);
            t
        }
        Command::VolumeCheck { ellipsoid, k, tol } => {
            let (a, b) = ellipsoid.scalars()?;
            let mut ks = k.clone();
            ks.sort_unstable();
            ks.dedup();
            let mut t = Table::new(&["k", "n_k", "ratio", "deviation", "relative", "pass"]);
            for r in volume_asymptotics(&a, &b, &ks)? {
                let ok = r.relative.abs() <= *tol;
                pass &= ok;
                t.push(vec![
                    r.k.to_string(),
                    r.n_k.to_string(),
                    r.ratio.to_string(),
                    r.deviation.to_string(),
                    r.relative.to_string(),
                    ok.to_string(),
                ]);
            }
            t
        }
        Command::Monotonicity { ellipsoid, k } => {
            let (model, _) = ellipsoid.model()?;
            let r = monotonicity_check(&enumerate_spectrum_with_budget(&model, *k, DEFAULT_BUDGET)?)?;
            // ties are expected exactly when the period ratio is rational
            let ok = r.first_decrease.is_none() && (r.strictly_increasing || !ratio_is_irrational(&model)?);
            pass &= ok;
            let mut t =
                Table::new(&["checked", "strictly_increasing", "first_tie_rank", "first_tie_action", "first_decrease", "pass"]);
            t.push(vec![
                r.checked.to_string(),
                r.strictly_increasing.to_string(),
                r.first_tie.as_ref().map_or(String::new(), |x| x.0.to_string()),
                r.first_tie.as_ref().map_or(String::new(), |x| x.1.to_string()),
                r.first_decrease.map_or(String::new(), |x| x.to_string()),
                ok.to_string(),
            ]);
            t
        }
        Command::Braid { a_max, b_max, input } => match input {
            Some(path) => {
                let file = std::fs::File::open(path).map_err(|e| Usage(format!("opening `{path}`: {e}")))?;
                let braid = Braid::from_reader(BufReader::new(file))?;
                let mut t = Table::new(&["quantity", "value"]);
                t.push(vec!["strands".into(), braid.strands().to_string()]);
                t.push(vec!["samples".into(), braid.sample_count().to_string()]);
                t.push(vec!["writhe".into(), writhe(&braid)?.to_string()]);
                t
            }
            None => {
                let mut t = Table::new(&["a", "b", "check", "expected", "got", "pass"]);
                for b in 1..=*b_max {
                    for a in -*a_max..=*a_max {
                        if num_gcd(a.unsigned_abs(), b) != 1 {
                            continue;
                        }
                        for c in verify_braid_lemmas(a, b)?.checks {
                            pass &= c.pass;
                            t.push(vec![
                                a.to_string(),
                                b.to_string(),
                                c.name.into(),
                                c.expected.to_string(),
                                c.got.to_string(),
                                c.pass.to_string(),
                            ]);
                        }
                    }
                }
                t
            }
        },
        Command::PerturbSweep { m_max, b_max, a_max } => {
            let summaries = sweep(*m_max, *b_max, *a_max);
            let mut t = Table::new(&["a", "b", "m", "m0", "parts", "writhe", "defect_min", "defect_max", "bound", "pass"]);
            let mut pair_failures = 0usize;
            for s in &summaries {
                pass &= s.pass && s.center_residual_zero;
                pair_failures += summaries.iter().filter(|y| !global_shift_from_summaries(&[s], &[*y]).pass).count();
                let c = &s.config;
                let parts: Vec<String> = c.parts().iter().map(|p| p.to_string()).collect();
                t.push(vec![
                    c.a().to_string(),
                    c.b().to_string(),
                    c.m().to_string(),
                    c.m0().to_string(),
                    parts.join("+"),
                    s.writhe.to_string(),
                    s.defect_min.to_string(),
                    s.defect_max.to_string(),
                    s.bound.to_string(),
                    (s.pass && s.center_residual_zero).to_string(),
                ]);
            }
            if pair_failures > 0 {
                eprintln!("{pair_failures} configuration pairs exceed the global shift bound");
                pass = false;
            }
            t
        }
        Command::Dynamics { body } => {
            let body = parse_body(body)?;
            let mut t = Table::new(&["quantity", "value", "error"]);
            for plane in [1, 2] {
                let o = find_planar_orbit(&body, plane)?;
                orbit_rows(&mut t, &o);
                pass &= healthy(&o);
            }
            let volume = contact_volume(&body)?;
            t.push(vec!["volume".into(), volume.value.to_string(), volume.radius.to_string()]);
            t
        }
        Command::Relations { body, tol } => {
            let body = parse_body(body)?;
            let report = measure(&body, *tol)?;
            let mut t = Table::new(&["relation", "left", "right", "deviation", "pass"]);
            for r in &report.relations.relations {
                pass &= r.pass;
                t.push(vec![r.id.into(), r.left.to_string(), r.right.to_string(), r.deviation.to_string(), r.pass.to_string()]);
            }
            t
        }
    };
    table.write(&cli.out, cli.format)?;
    Ok(pass)
}

fn num_gcd(mut x: u64, mut y: u64) -> u64 {
    while y != 0 {
        (x, y) = (y, x % y);
    }
    x
}

fn parse_cli(argv: Vec<String>) -> Result<Cli, clap::Error> {
    let mut cmd = Cli::command().args_override_self(true);
    let names: Vec<String> = cmd.get_subcommands().map(|s| s.get_name().to_string()).collect();
    for name in names {
        cmd = cmd.mut_subcommand(name, |s| s.args_override_self(true));
    }
    let matches = cmd.try_get_matches_from(argv)?;
    Cli::from_arg_matches(&matches)
}

fn main() -> ExitCode {
    let argv = match config::expand_argv(std::env::args().collect()) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let cli = match parse_cli(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(if is_usage(&e) { 2 } else { 1 })
        }
    }
}
