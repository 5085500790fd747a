mod input;
mod render;
mod selftest;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use concordia::amphicheiral::long_certificate;
use concordia::concordance::{alexander, conway, crossing_difference, mutation_invariance_genus2};
use concordia::covers::cover_report;
use concordia::cyclotomic::Precision;
use concordia::gilmer::{genus_gap_certify, growth_bound_check};
use concordia::signatures::{is_root, signature_function, tristram_levine};
use concordia::{Error, Rational};
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "concordia",
    version,
    about = "Algebraic concordance invariants from Seifert matrices"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Global {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Starting working precision in bits for sign certification.
    #[arg(long, global = true, value_name = "N")]
    precision: Option<u32>,
    /// Number of random cases per property in `selftest`.
    #[arg(long, global = true, value_name = "N", default_value_t = 100)]
    samples: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Normalized Alexander polynomial.
    Alexander { input: String },
    /// Conway polynomial.
    Conway { input: String },
    /// Tristram-Levine signature at one point or over a profile.
    Signature {
        input: String,
        /// Circle point e^(2 pi i a/b), written a/b.
        #[arg(long, value_parser = input::fraction, conflicts_with = "profile", required_unless_present = "profile")]
        at: Option<(i64, u64)>,
        /// All reduced a/b with b up to CAP.
        #[arg(long, value_name = "CAP")]
        profile: Option<u64>,
        /// Print the profile as CSV.
        #[arg(long, requires = "profile")]
        csv: bool,
    },
    /// Homology of the q-fold branched cover, with the deck action mod p.
    Cover {
        input: String,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        p: Option<u64>,
    },
    /// Crossing-change Witt difference certificate.
    WittDiff {
        /// Triple JSON file, or a knot when --column / --b are given.
        input: String,
        /// Comma-separated column `a`.
        #[arg(long, allow_hyphen_values = true)]
        column: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<i64>,
    },
    /// Genus-2 mutation invariance report.
    #[command(name = "mutate-genus2")]
    MutateGenus2 {
        /// Pair JSON file, or `sample`.
        input: String,
    },
    /// Amphicheiral factorization and long certificate.
    Amphicheiral {
        /// Equivariant data JSON file, or `sample`.
        input: String,
    },
    /// Casson-Gordon genus-gap certificate for nL_J.
    GenusGap {
        #[arg(long)]
        n: usize,
        /// The knot J.
        input: String,
    },
    /// Exact check of |sigma_1/3(J)| > 2(1 - eps)/eps.
    GrowthBound {
        #[arg(long, default_value = "1/2")]
        epsilon: String,
        #[arg(long, default_value_t = 10)]
        n: u64,
        input: String,
    },
    /// Randomized property checks.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) => 2,
            Error::SingularForm
            | Error::SingularBaseChange
            | Error::SingularAtSample { .. }
            | Error::SingularAtRoot { .. }
            | Error::SingularIntermediate(_)
            | Error::NotInvertibleModP { .. }
            | Error::PrecisionExhausted { .. } => 3,
            Error::OracleMismatch(_) | Error::IdentityFailure(_) => 5,
            _ => 4,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn unverified(what: &str) -> Failure {
    Failure {
        code: 5,
        message: format!("{what} did not verify"),
    }
}

fn emit<T: Serialize>(g: Global, value: &T, text: impl FnOnce() -> String) {
    if g.json {
        println!(
            "{}",
            serde_json::to_string_pretty(value).expect("reports serialize")
        );
    } else {
        print!("{}", text());
    }
}

fn precision(g: Global) -> Precision {
    let p = Precision::from_env();
    match g.precision {
        Some(bits) => p.with_start(bits),
        None => p,
    }
}

#[derive(Serialize)]
struct PolyReport {
    label: String,
    polynomial: String,
}

#[derive(Serialize)]
struct ProfileReport {
    label: String,
    cap: u64,
    samples: Vec<concordia::signatures::SignatureSample>,
    singular: Vec<(i64, u64)>,
}

fn run(cli: Cli) -> std::result::Result<(), Failure> {
    let g = cli.global;
    let prec = precision(g);
    match cli.command {
        Command::Alexander { input } => {
            let v = input::knot(&input)?;
            let r = PolyReport {
                label: v.label().to_string(),
                polynomial: alexander(&v)?.to_string(),
            };
            emit(g, &r, || format!("{}\n", r.polynomial));
        }
        Command::Conway { input } => {
            let v = input::knot(&input)?;
            let r = PolyReport {
                label: v.label().to_string(),
                polynomial: conway(&v)?.to_string(),
            };
            emit(g, &r, || format!("{}\n", r.polynomial));
        }
        Command::Signature {
            input,
            at,
            profile,
            csv,
        } => {
            let v = input::knot(&input)?;
            if let Some((a, b)) = at {
                let s = tristram_levine(&v, a, b, prec)?;
                emit(g, &s, || format!("{}\n", s.value));
            } else if let Some(cap) = profile {
                let samples = signature_function(&v, cap, prec)?;
                let mut singular = Vec::new();
                for b in 2..=cap {
                    for a in 1..b as i64 {
                        if num_integer::gcd(a as u64, b) == 1 && is_root(&v, a, b)? {
                            singular.push((a, b));
                        }
                    }
                }
                let r = ProfileReport {
                    label: v.label().to_string(),
                    cap,
                    samples,
                    singular,
                };
                if csv && !g.json {
                    print!("{}", concordia::signatures::to_csv(&r.samples));
                } else {
                    emit(g, &r, || render::profile(&r.samples, &r.singular));
                }
            }
        }
        Command::Cover { input, q, p } => {
            let v = input::knot(&input)?;
            let r = cover_report(&v, q, p)?;
            emit(g, &r, || render::cover(&r));
        }
        Command::WittDiff { input, column, b } => {
            let column = column
                .map(|c| input::int_list(&c).map_err(Error::Parse))
                .transpose()?;
            let t = input::triple(&input, column.as_deref(), b)?;
            let c = crossing_difference(&t, prec)?;
            emit(g, &c, || render::crossing(&c));
            if !c.verified() {
                return Err(unverified("crossing-difference certificate"));
            }
        }
        Command::MutateGenus2 { input } => {
            let pair = input::mutant_pair(&input)?;
            let r = mutation_invariance_genus2(&pair, prec)?;
            emit(g, &r, || render::mutation(&r));
            if r.verdict != concordia::concordance::CertVerdict::Verified {
                return Err(unverified("mutation report"));
            }
        }
        Command::Amphicheiral { input } => {
            let d = input::amphicheiral(&input)?;
            let c = long_certificate(&d, prec)?;
            emit(g, &c, || render::long(&c));
            if c.verdict != concordia::concordance::CertVerdict::Verified {
                return Err(unverified("amphicheiral certificate"));
            }
        }
        Command::GenusGap { n, input } => {
            let j = input::knot(&input)?;
            let r = genus_gap_certify(n, &j, prec)?;
            emit(g, &r, || render::genus_gap(&r));
        }
        Command::GrowthBound { epsilon, n, input } => {
            let eps: Rational = epsilon.parse().map_err(|_| {
                Error::Parse(format!("epsilon: expected a rational, found {epsilon:?}"))
            })?;
            let j = input::knot(&input)?;
            let r = growth_bound_check(&eps, &j, n, prec)?;
            emit(g, &r, || render::growth(&r));
        }
        Command::Selftest { seed } => {
            let r = selftest::run(seed, g.samples, prec);
            emit(g, &r, || render::selftest(&r));
            if !r.passed() {
                return Err(Failure {
                    code: 5,
                    message: "selftest failures".into(),
                });
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("concordia: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(Failure::from(Error::Parse("x".into())).code, 2);
        assert_eq!(Failure::from(Error::SingularAtRoot { a: 1, b: 6 }).code, 3);
        assert_eq!(Failure::from(Error::PreconditionFailed("x".into())).code, 4);
        assert_eq!(Failure::from(Error::OracleMismatch("x".into())).code, 5);
    }

    #[test]
    fn cli_parses() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
