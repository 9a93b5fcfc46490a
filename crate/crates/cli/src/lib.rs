//! The `bhdual` command line.
//!
//! [`run`] takes the argument vector and two output streams and returns the
//! process exit code, so the whole tool can be driven from tests.
//!
//! Exit codes: 0 success, 1 a verification did not hold, 2 bad input,
//! 3 a size cap was exceeded.

use std::io::Write;

use bhdual_core::duality::{classify_atomic, CorpusMode, TransposedFibres};
use bhdual_core::euler::{MilnorFibre, OrbifoldEulerReport};
use bhdual_core::intmat::InvertiblePolynomial;
use bhdual_core::symmetry::{GroupElement, Subgroup, SymmetryGroup};
use bhdual_core::{Caps, Error};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

mod corpus;
mod input;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "bhdual",
    version,
    about = "Symmetry groups, Berglund-Hübsch dual pairs and orbifold Euler characteristics of invertible polynomials"
)]
struct Cli {
    #[command(flatten)]
    config: CliConfig,
    #[command(subcommand)]
    command: Command,
}

/// Settings shared by every subcommand.
#[derive(Args, Debug, Clone)]
pub struct CliConfig {
    /// Largest |det E| whose symmetry group is enumerated
    #[arg(long = "group-cap", global = true, env = "BHDUAL_GROUP_CAP", default_value_t = 1_000_000,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub group_order_cap: u64,
    /// Largest group order whose subgroup lattice is enumerated
    #[arg(long = "subgroup-cap", global = true, env = "BHDUAL_SUBGROUP_CAP", default_value_t = 512,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub subgroup_enum_cap: u64,
    /// Largest subgroup order for the sum over pairs of elements
    #[arg(long = "pairs-cap", global = true, env = "BHDUAL_PAIRS_CAP", default_value_t = 256,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub pairs_oracle_cap: u64,
    #[arg(long = "output", global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub output_format: OutputFormat,
}

impl CliConfig {
    pub fn caps(&self) -> Caps {
        Caps {
            group_order: self.group_order_cap,
            subgroup_enum: self.subgroup_enum_cap,
            pairs_oracle: self.pairs_oracle_cap,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum MethodArg {
    Strata,
    Pairs,
    Both,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum ModeArg {
    Atomic,
    Sparse,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exponent matrix, determinant, weights and atomic type
    Parse { polynomial: String },
    /// Order, invariant factors and generators of G_f
    Group { polynomial: String },
    /// Every subgroup of G_f
    Subgroups { polynomial: String },
    /// The dual pair (f~, G~)
    Dual {
        polynomial: String,
        /// Generator(s) of G: `1/2,1/2`, `[k1,k2]/d`, `full` or `trivial`; repeatable
        #[arg(long = "subgroup", short = 's')]
        subgroup: Vec<String>,
    },
    /// Orbifold Euler characteristic of the Milnor fibre
    Euler {
        polynomial: String,
        #[arg(long = "subgroup", short = 's')]
        subgroup: Vec<String>,
        #[arg(long, value_enum, default_value_t = MethodArg::Strata)]
        method: MethodArg,
    },
    /// Compare the reduced orbifold Euler characteristics of (f, G) and (f~, G~)
    Verify {
        polynomial: String,
        #[arg(long = "subgroup", short = 's')]
        subgroup: Vec<String>,
    },
    /// Generate a random corpus, optionally verifying every instance
    Corpus {
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long)]
        count: usize,
        #[arg(long = "n-max", default_value_t = 5)]
        n_max: usize,
        #[arg(long = "exp-max", default_value_t = 5)]
        exp_max: u64,
        /// Check every subgroup when |G_f| is at most this, else random cyclic ones
        #[arg(long = "enumerate-up-to", default_value_t = 200)]
        enumerate_up_to: u64,
        #[arg(long = "random-cyclic", default_value_t = 10)]
        random_cyclic: usize,
        #[arg(long)]
        verify: bool,
    },
}

/// Runs the tool on `argv` (including the program name) and returns the exit code.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_INPUT
                }
            };
        }
    };
    let mut ctx = Context {
        config: cli.config.clone(),
        out,
    };
    match ctx.dispatch(cli.command) {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_FAILED,
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "bhdual: cannot write output: {e}");
            EXIT_INPUT
        }
        Err(Failure::Core(e)) => {
            let _ = writeln!(err, "bhdual: {e}");
            exit_code(&e)
        }
    }
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    if e.is_cap() {
        EXIT_CAP
    } else {
        EXIT_INPUT
    }
}

enum Failure {
    Core(Error),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

type Outcome = std::result::Result<bool, Failure>;

struct Context<'a> {
    config: CliConfig,
    out: &'a mut dyn Write,
}

fn fractions(e: &GroupElement) -> String {
    e.to_string()
}

fn element_list(xs: &[GroupElement]) -> String {
    if xs.is_empty() {
        "none".to_string()
    } else {
        xs.iter().map(fractions).collect::<Vec<_>>().join(", ")
    }
}

fn det_value(f: &InvertiblePolynomial) -> Value {
    let det = f.matrix().det().to_string();
    det.parse::<i64>()
        .map(Value::from)
        .unwrap_or(Value::String(det))
}

impl Context<'_> {
    fn json(&self) -> bool {
        self.config.output_format == OutputFormat::Json
    }

    fn emit(&mut self, value: &Value) -> std::io::Result<()> {
        serde_json::to_writer(&mut *self.out, value)?;
        writeln!(self.out)
    }

    fn dispatch(&mut self, command: Command) -> Outcome {
        let caps = self.config.caps();
        match command {
            Command::Parse { polynomial } => self.parse(&input::polynomial(&polynomial)?),
            Command::Group { polynomial } => {
                let f = input::polynomial(&polynomial)?;
                let g = SymmetryGroup::new(f.matrix(), &caps)?;
                self.group(&f, &g)
            }
            Command::Subgroups { polynomial } => {
                let f = input::polynomial(&polynomial)?;
                let g = SymmetryGroup::new(f.matrix(), &caps)?;
                self.subgroups(&f, &g, &caps)
            }
            Command::Dual {
                polynomial,
                subgroup,
            } => {
                let f = input::polynomial(&polynomial)?;
                let sides = TransposedFibres::new(&f, &caps)?;
                let g = input::subgroup(sides.group(), &subgroup)?;
                self.dual(&sides, &g)
            }
            Command::Euler {
                polynomial,
                subgroup,
                method,
            } => {
                let f = input::polynomial(&polynomial)?;
                let fibre = MilnorFibre::new(&f, &caps)?;
                let g = input::subgroup(fibre.group(), &subgroup)?;
                self.euler(&fibre, &g, method, &caps)
            }
            Command::Verify {
                polynomial,
                subgroup,
            } => {
                let f = input::polynomial(&polynomial)?;
                let sides = TransposedFibres::new(&f, &caps)?;
                let g = input::subgroup(sides.group(), &subgroup)?;
                self.verify(&sides, &g, &caps)
            }
            Command::Corpus {
                seed,
                mode,
                count,
                n_max,
                exp_max,
                enumerate_up_to,
                random_cyclic,
                verify,
            } => {
                let mode = match mode {
                    ModeArg::Atomic => CorpusMode::Atomic,
                    ModeArg::Sparse => CorpusMode::Sparse,
                };
                let settings = corpus::Settings {
                    seed,
                    mode,
                    count,
                    n_max,
                    exp_max,
                    enumerate_up_to,
                    random_cyclic,
                    verify,
                    caps,
                };
                corpus::run(&settings, self.json(), self.out)
            }
        }
    }

    fn parse(&mut self, f: &InvertiblePolynomial) -> Outcome {
        let weights = f.matrix().weights();
        let atomic = classify_atomic(f);
        if self.json() {
            self.emit(&json!({
                "polynomial": f.to_string(),
                "variables": f.variables(),
                "n": f.n(),
                "E": f.matrix().rows(),
                "det": det_value(f),
                "weights": weights.to_strings(),
                "weights_positive": weights.all_positive(),
                "atomic": atomic,
            }))?;
        } else {
            let out = &mut *self.out;
            writeln!(out, "polynomial  {f}")?;
            writeln!(out, "variables   {}", f.variables().join(", "))?;
            writeln!(out, "E")?;
            for row in f.matrix().rows() {
                let cells: Vec<String> = row.iter().map(|x| format!("{x:>3}")).collect();
                writeln!(out, "  {}", cells.join(""))?;
            }
            writeln!(out, "det E       {}", f.matrix().det())?;
            writeln!(out, "weights     {}", weights.to_strings().join(", "))?;
            if !weights.all_positive() {
                writeln!(out, "            (not all weights are positive)")?;
            }
            let verdict = serde_json::to_value(atomic.verdict).unwrap_or_default();
            writeln!(out, "atomic      {}", verdict.as_str().unwrap_or("?"))?;
        }
        Ok(true)
    }

    fn group(&mut self, f: &InvertiblePolynomial, g: &std::sync::Arc<SymmetryGroup>) -> Outcome {
        let gens = g.generators();
        if self.json() {
            let summary = g.to_json();
            self.emit(&json!({
                "polynomial": f.to_string(),
                "order": g.order(),
                "d": summary.d,
                "invariant_factors": summary.invariant_factors,
                "generators": gens,
            }))?;
        } else {
            let out = &mut *self.out;
            writeln!(out, "G_f of {f}")?;
            writeln!(out, "order              {}", g.order())?;
            writeln!(out, "invariant factors  {:?}", g.invariant_factors())?;
            writeln!(out, "generators         {}", element_list(&gens))?;
        }
        Ok(true)
    }

    fn subgroups(
        &mut self,
        f: &InvertiblePolynomial,
        g: &std::sync::Arc<SymmetryGroup>,
        caps: &Caps,
    ) -> Outcome {
        let all = Subgroup::full(g).all_subgroups(caps)?;
        if self.json() {
            self.emit(&json!({
                "polynomial": f.to_string(),
                "group_order": g.order(),
                "count": all.len(),
                "subgroups": all,
            }))?;
        } else {
            let out = &mut *self.out;
            writeln!(
                out,
                "{} subgroups of G_f (order {}) for {f}",
                all.len(),
                g.order()
            )?;
            for (i, h) in all.iter().enumerate() {
                writeln!(
                    out,
                    "{i:>4}  order {:<5} generated by {}",
                    h.order(),
                    element_list(&h.generators())
                )?;
            }
        }
        Ok(true)
    }

    fn dual(&mut self, sides: &TransposedFibres, g: &Subgroup) -> Outcome {
        let pair = sides.dual_pair(g)?;
        if self.json() {
            self.emit(&json!({
                "f": pair.f.to_string(),
                "E": pair.f.matrix().rows(),
                "group": {
                    "order": pair.group.order(),
                    "generators": pair.group.generators(),
                },
                "f_dual": pair.f_dual.to_string(),
                "E_dual": pair.f_dual.matrix().rows(),
                "group_dual": {
                    "order": pair.group_dual.order(),
                    "generators": pair.group_dual.generators(),
                },
                "full_order": sides.group().order(),
            }))?;
        } else {
            let out = &mut *self.out;
            writeln!(out, "f    {}", pair.f)?;
            writeln!(
                out,
                "G    order {} generated by {}",
                pair.group.order(),
                element_list(&pair.group.generators())
            )?;
            writeln!(out, "f~   {}", pair.f_dual)?;
            writeln!(
                out,
                "G~   order {} generated by {}",
                pair.group_dual.order(),
                element_list(&pair.group_dual.generators())
            )?;
        }
        Ok(true)
    }

    fn euler(
        &mut self,
        fibre: &MilnorFibre,
        g: &Subgroup,
        method: MethodArg,
        caps: &Caps,
    ) -> Outcome {
        let strata = match method {
            MethodArg::Strata | MethodArg::Both => Some(fibre.orbifold_euler_strata(g)?),
            MethodArg::Pairs => None,
        };
        let pairs = match method {
            MethodArg::Pairs | MethodArg::Both => Some(fibre.orbifold_euler_pairs(g, caps)?),
            MethodArg::Strata => None,
        };
        let agree = match (&strata, &pairs) {
            (Some(a), Some(b)) => a.chi_orb == b.chi_orb,
            _ => true,
        };
        if self.json() {
            let value = match (&strata, &pairs) {
                (Some(a), Some(b)) => json!({ "strata": a, "pairs": b, "agree": agree }),
                (Some(a), None) | (None, Some(a)) => {
                    serde_json::to_value(a).map_err(std::io::Error::from)?
                }
                (None, None) => unreachable!(),
            };
            self.emit(&value)?;
        } else {
            for report in strata.iter().chain(pairs.iter()) {
                self.euler_text(report)?;
            }
            if strata.is_some() && pairs.is_some() {
                let verdict = if agree { "agree" } else { "DISAGREE" };
                writeln!(self.out, "strata and pairs {verdict}")?;
            }
        }
        Ok(agree)
    }

    fn euler_text(&mut self, r: &OrbifoldEulerReport) -> std::io::Result<()> {
        let out = &mut *self.out;
        let method = serde_json::to_value(r.method).unwrap_or_default();
        writeln!(
            out,
            "{} with |G| = {} ({})",
            r.polynomial,
            r.group_order,
            method.as_str().unwrap_or("?")
        )?;
        if !r.strata.is_empty() {
            writeln!(
                out,
                "  {:<16} {:>8} {:>8} {:>12}",
                "I", "chi", "|G^I|", "contrib"
            )?;
            for s in r.strata.iter().filter(|s| s.chi_stratum != 0) {
                writeln!(
                    out,
                    "  {:<16} {:>8} {:>8} {:>12}",
                    s.vars.to_string(),
                    s.chi_stratum,
                    s.isotropy_order,
                    s.contribution
                )?;
            }
        }
        writeln!(out, "  chi(V, G)         {}", r.chi_orb)?;
        writeln!(out, "  reduced           {}", r.chi_reduced)?;
        writeln!(out, "  orbifold Milnor   {}", r.orbifold_milnor)
    }

    fn verify(&mut self, sides: &TransposedFibres, g: &Subgroup, caps: &Caps) -> Outcome {
        let report = sides.verify(g, caps)?;
        if self.json() {
            self.emit(&serde_json::to_value(&report).map_err(std::io::Error::from)?)?;
        } else {
            let out = &mut *self.out;
            writeln!(out, "f     {}", report.polynomial)?;
            writeln!(out, "f~    {}", report.dual_polynomial)?;
            writeln!(
                out,
                "|G| = {}, |G~| = {}, |G_f| = {}",
                report.group_order, report.dual_group_order, report.full_order
            )?;
            writeln!(out, "reduced chi (f, G)    {}", report.chi_reduced_f)?;
            writeln!(out, "reduced chi (f~, G~)  {}", report.chi_reduced_dual)?;
            writeln!(out, "sign (-1)^n           {}", report.sign)?;
            if let (Some(a), Some(b)) = (report.pairs_chi_f, report.pairs_chi_dual) {
                writeln!(out, "pairs check           chi {a} and {b}")?;
            }
            let verdict = if report.all_hold() { "holds" } else { "FAILS" };
            writeln!(out, "{verdict}")?;
        }
        Ok(report.all_hold())
    }
}
