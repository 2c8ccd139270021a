//! `shiftkit` command-line tool.
//!
//! Every subcommand writes a tab-separated report; reals carry 15
//! significant digits. Exit status: 0 on success, 2 on invalid input,
//! 3 when a brute-force volume exceeds the enumeration cap.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use shiftkit::bundled;
use shiftkit::io::{dump_presentation, parse_block_code, parse_point, parse_potential, parse_shift};
use shiftkit::numeric::fmt_g15;
use shiftkit::shift::{
    check_splice, enumerate_words, factor_gap_bound, factor_presentation, set_enumeration_cap, splice,
    GapVariant, Interval, SoficPresentation, Sym, Word,
};
use shiftkit::verify::{
    decoupling_1d_check, lemma_211_check, lemma_212_check, tangent_derivative_check, weak_gibbs_scan,
    Lemma211Params, LemmaReport,
};
use shiftkit::{equilibrium_measure, pressure_limit, Error, Potential};

const AFTER_HELP: &str = "\
Inputs:
  --shift takes a file or a bundled name: @full2 @golden @even @reducible @periodic
  --potential takes a file or @zero @site @pair
  --code takes a file or @ten

Shift file:      [alphabet s1 s2 ...] / vertex <name> / edge <src> <dst> <label>
SFT file:        alphabet s1 s2 ... / forbid <word>
Potential file:  range <r> / shape <o1,o2,...> / val <pattern> <real>
Block-code file: radius <k> / target s1 s2 ... / [default <sym>] / map <word> <sym>
Point:           L:C@a:R  (left cycle, core starting at a, right cycle)
Lines starting with # are comments.

Exit status: 0 success, 2 invalid input, 3 volume above the enumeration cap.";

#[derive(Parser, Debug)]
#[command(name = "shiftkit", version, about = "Pressure, equilibrium measures and Gibbs checks on sofic shifts", after_help = AFTER_HELP)]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Upper limit on |A|^length for brute-force enumeration.
    #[arg(long, global = true, env = "SHIFTKIT_ENUM_CAP")]
    enum_cap: Option<u64>,

    /// Write the report here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    /// Print the parsed shift in file grammar instead of running the command.
    #[arg(long, global = true)]
    dump: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct System {
    #[arg(long)]
    shift: String,
    #[arg(long, default_value = "@zero")]
    potential: String,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Which {
    #[value(name = "211")]
    Sandwich,
    #[value(name = "212")]
    Ratio,
    #[value(name = "1d")]
    OneSided,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Variant {
    Bounded,
    Exact,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Finite-volume pressure P_n for n = 0..n-max and the limit ln λ.
    Pressure {
        #[command(flatten)]
        sys: System,
        #[arg(long)]
        n_max: usize,
    },
    /// Stationary vector and transition matrix of the equilibrium chain.
    Measure {
        #[command(flatten)]
        sys: System,
    },
    /// Cylinder probability of a word.
    Cylinder {
        #[command(flatten)]
        sys: System,
        #[arg(long)]
        word: String,
    },
    /// Weak-Gibbs deviation D_m over all allowed center words.
    Weakgibbs {
        #[command(flatten)]
        sys: System,
        /// `a..b`, a comma list, or a single value.
        #[arg(long, default_value = "1..6")]
        m: String,
        /// Comma-separated tolerances.
        #[arg(long, default_value = "")]
        delta: String,
    },
    /// Brute-force partition-function inequalities.
    Lemma {
        #[command(flatten)]
        sys: System,
        #[arg(long, value_enum)]
        which: Which,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        j: i64,
        /// Center word; all allowed words when omitted (212 and 1d).
        #[arg(long)]
        word: Option<String>,
        /// 211 only: gap size.
        #[arg(long)]
        q: Option<usize>,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        l: i64,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        l_prime: i64,
        /// 211 only: words on [-n, n].
        #[arg(long)]
        x: Option<String>,
        #[arg(long)]
        y: Option<String>,
    },
    /// Finite difference of P_n along the indicator of a word.
    Tangent {
        #[command(flatten)]
        sys: System,
        #[arg(long)]
        word: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1e-3)]
        t_step: f64,
    },
    /// Glues three points through connecting paths.
    Splice {
        #[arg(long)]
        shift: String,
        #[arg(long, allow_hyphen_values = true)]
        x_minus: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        #[arg(long, allow_hyphen_values = true)]
        x_plus: String,
        #[arg(long)]
        m: usize,
        /// Extra coordinates printed on each side.
        #[arg(long, default_value_t = 10)]
        margin: usize,
    },
    /// Presentation of the image under a sliding block code.
    Factor {
        #[arg(long)]
        shift: String,
        #[arg(long)]
        code: String,
    },
    /// Decoupling gap of a presentation.
    Gap {
        #[arg(long)]
        shift: String,
        #[arg(long, value_enum, default_value_t = Variant::Bounded)]
        variant: Variant,
    },
}

#[derive(Debug)]
enum Failure {
    Core(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Core(Error::VolumeTooLarge { .. }) => 3,
            _ => 2,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Core(e) => write!(f, "{e}"),
            Failure::Usage(s) => f.write_str(s),
        }
    }
}

type Outcome = Result<(), Failure>;

fn read_source(arg: &str) -> Result<String, Failure> {
    fs::read_to_string(arg).map_err(|e| Failure::Usage(format!("{arg}: {e}")))
}

fn load_shift(arg: &str) -> Result<SoficPresentation, Failure> {
    if let Some(name) = arg.strip_prefix('@') {
        return bundled::shift_by_name(name).ok_or_else(|| Failure::Usage(format!("no bundled shift {arg}")));
    }
    parse_shift(&read_source(arg)?).map_err(|e| Failure::Usage(format!("{arg}: {e}")))
}

fn load_potential(arg: &str, p: &SoficPresentation) -> Result<Potential, Failure> {
    let text = match arg.strip_prefix('@') {
        Some(name) => bundled::potential_text(name)
            .ok_or_else(|| Failure::Usage(format!("no bundled potential {arg}")))?
            .to_string(),
        None => read_source(arg)?,
    };
    parse_potential(&text, p.alphabet()).map_err(|e| Failure::Usage(format!("{arg}: {e}")))
}

fn load_system(sys: &System) -> Result<(SoficPresentation, Potential), Failure> {
    let p = load_shift(&sys.shift)?;
    let pot = load_potential(&sys.potential, &p)?;
    Ok((p, pot))
}

fn parse_m_list(text: &str) -> Result<Vec<usize>, Failure> {
    let bad = || Failure::Usage(format!("cannot read m list {text:?}"));
    if let Some((a, b)) = text.split_once("..") {
        let a: usize = a.trim().parse().map_err(|_| bad())?;
        let b: usize = b.trim().parse().map_err(|_| bad())?;
        if a > b {
            return Err(bad());
        }
        return Ok((a..=b).collect());
    }
    text.split(',').map(|s| s.trim().parse().map_err(|_| bad())).collect()
}

fn parse_deltas(text: &str) -> Result<Vec<f64>, Failure> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| match s.parse::<f64>() {
            Ok(d) if d >= 0.0 => Ok(d),
            _ => Err(Failure::Usage(format!("bad delta {s:?}"))),
        })
        .collect()
}

fn parse_word(p: &SoficPresentation, text: &str) -> Result<Vec<Sym>, Failure> {
    Ok(p.alphabet().parse(text)?)
}

fn write_report(out: &mut dyn Write, ctx: Option<&str>, r: &LemmaReport) -> io::Result<()> {
    let prefix = ctx.map(|c| format!("{c}\t")).unwrap_or_default();
    for (name, v) in &r.constants {
        writeln!(out, "{prefix}const\t{name}\t{}", fmt_g15(*v))?;
    }
    for c in &r.checks {
        writeln!(out, "{prefix}{}\t{}\t{}\t{}", c.name, fmt_g15(c.lhs), fmt_g15(c.rhs), c.holds)?;
    }
    Ok(())
}

fn run(cli: &Cli, out: &mut dyn Write) -> Outcome {
    if cli.dump {
        let shift = match &cli.command {
            Command::Pressure { sys, .. }
            | Command::Measure { sys }
            | Command::Cylinder { sys, .. }
            | Command::Weakgibbs { sys, .. }
            | Command::Lemma { sys, .. }
            | Command::Tangent { sys, .. } => &sys.shift,
            Command::Splice { shift, .. } | Command::Factor { shift, .. } | Command::Gap { shift, .. } => shift,
        };
        out.write_all(dump_presentation(&load_shift(shift)?).as_bytes())?;
        return Ok(());
    }
    match &cli.command {
        Command::Pressure { sys, n_max } => {
            let (p, pot) = load_system(sys)?;
            let ladder: Vec<usize> = (0..=*n_max).collect();
            let est = pressure_limit(&p, &pot, &ladder)?;
            writeln!(out, "n\tP_n\tenvelope")?;
            for row in &est.finite_volume {
                writeln!(out, "{}\t{}\t{}", row.n, fmt_g15(row.p_n), fmt_g15(row.envelope))?;
            }
            writeln!(out, "lambda\t{}", fmt_g15(est.log_lambda))?;
        }
        Command::Measure { sys } => {
            let (p, pot) = load_system(sys)?;
            let mu = equilibrium_measure(&p, &pot)?;
            let t = mu.transfer();
            writeln!(out, "lambda\t{}", fmt_g15(mu.log_lambda()))?;
            writeln!(out, "state\tvertex\thistory\tp")?;
            for (i, (v, hist)) in t.states().iter().enumerate() {
                writeln!(
                    out,
                    "{i}\t{}\t{}\t{}",
                    p.vertices()[*v],
                    p.alphabet().format(hist),
                    fmt_g15(mu.stationary()[i])
                )?;
            }
            writeln!(out, "from\tto\tQ")?;
            for u in 0..t.len() {
                for &v in t.successors(u) {
                    writeln!(out, "{u}\t{v}\t{}", fmt_g15(mu.transition()[u][v]))?;
                }
            }
        }
        Command::Cylinder { sys, word } => {
            let (p, pot) = load_system(sys)?;
            let w = parse_word(&p, word)?;
            let mu = equilibrium_measure(&p, &pot)?;
            writeln!(out, "{}", fmt_g15(mu.word_prob(&w)))?;
        }
        Command::Weakgibbs { sys, m, delta } => {
            let (p, pot) = load_system(sys)?;
            let ms = parse_m_list(m)?;
            let deltas = parse_deltas(delta)?;
            let mu = equilibrium_measure(&p, &pot)?;
            let r = weak_gibbs_scan(&mu, &pot, mu.log_lambda(), &ms, &deltas)?;
            writeln!(out, "m\tD_m\tbound")?;
            for row in &r.rows {
                writeln!(out, "{}\t{}\t{}", row.m, fmt_g15(row.d_m), fmt_g15(row.analytic_bound))?;
            }
            for (d, n) in &r.delta_to_n {
                let n = n.map_or_else(|| "none".to_string(), |n| n.to_string());
                writeln!(out, "delta\t{}\t{n}", fmt_g15(*d))?;
            }
        }
        Command::Lemma {
            sys,
            which,
            n,
            m,
            j,
            word,
            q,
            l,
            l_prime,
            x,
            y,
        } => {
            let (p, pot) = load_system(sys)?;
            match which {
                Which::Sandwich => {
                    let (Some(x), Some(y)) = (x, y) else {
                        return Err(Failure::Usage("--which 211 needs --x and --y".into()));
                    };
                    let q = match q {
                        Some(q) => *q,
                        None => p.decoupling_gap(GapVariant::ExactLength)?.gap,
                    };
                    let start = -(*n as i64);
                    let x = Word::new(start, parse_word(&p, x)?);
                    let y = Word::new(start, parse_word(&p, y)?);
                    let params = Lemma211Params {
                        n: *n,
                        m: *m,
                        q,
                        j: *j,
                        l: *l,
                        l_prime: *l_prime,
                    };
                    writeln!(out, "name\tlhs\trhs\tholds")?;
                    write_report(out, None, &lemma_211_check(&p, &pot, &params, &x, &y)?)?;
                }
                Which::Ratio | Which::OneSided => {
                    let centers: Vec<Vec<Sym>> = match word {
                        Some(w) => vec![parse_word(&p, w)?],
                        None => enumerate_words(&p, *m)?.into_iter().map(Word::into_letters).collect(),
                    };
                    writeln!(out, "u\tname\tlhs\trhs\tholds")?;
                    for u in centers {
                        let r = match which {
                            Which::Ratio => lemma_212_check(&p, &pot, *n, *m, *j, &u)?,
                            _ => decoupling_1d_check(&p, &pot, *n, *m, *j, &u)?,
                        };
                        write_report(out, Some(&p.alphabet().format(&u)), &r)?;
                    }
                }
            }
        }
        Command::Tangent { sys, word, n, t_step } => {
            let (p, pot) = load_system(sys)?;
            let u = parse_word(&p, word)?;
            let r = tangent_derivative_check(&p, &pot, &u, *n, *t_step)?;
            writeln!(out, "finite_diff\t{}", fmt_g15(r.finite_diff))?;
            writeln!(out, "formula\t{}", fmt_g15(r.formula))?;
            writeln!(out, "cylinder\t{}", fmt_g15(r.cylinder_value))?;
        }
        Command::Splice {
            shift,
            x_minus,
            y,
            x_plus,
            m,
            margin,
        } => {
            let p = load_shift(shift)?;
            let xm = parse_point(x_minus, &p)?;
            let yy = parse_point(y, &p)?;
            let xp = parse_point(x_plus, &p)?;
            let s = splice(&p, &xm, &yy, &xp, *m)?;
            let reach = (*m + s.gap + *margin) as i64;
            let window = Interval::new(-reach, reach);
            let check = check_splice(&xm, &yy, &xp, *m, &s, *margin);
            writeln!(out, "gap\t{}", s.gap)?;
            writeln!(out, "l_minus\t{}", s.l_minus)?;
            writeln!(out, "l_plus\t{}", s.l_plus)?;
            writeln!(out, "window\t{}\t{}", window.lo, window.hi)?;
            writeln!(out, "z\t{}", p.alphabet().format(s.z.word(window).letters()))?;
            writeln!(out, "check\t{}", check.all())?;
        }
        Command::Factor { shift, code } => {
            let p = load_shift(shift)?;
            let text = match code.as_str() {
                "@ten" => bundled::TEN_CODE.to_string(),
                other => read_source(other)?,
            };
            let c = parse_block_code(&text, &p).map_err(|e| Failure::Usage(format!("{code}: {e}")))?;
            let image = factor_presentation(&p, &c)?;
            out.write_all(dump_presentation(&image).as_bytes())?;
            if let (Ok(src), Ok(img)) = (
                p.decoupling_gap(GapVariant::BoundedLength),
                image.decoupling_gap(GapVariant::BoundedLength),
            ) {
                writeln!(out, "# gap\t{}", img.gap)?;
                writeln!(out, "# bound\t{}", factor_gap_bound(&src, c.radius()))?;
            }
        }
        Command::Gap { shift, variant } => {
            let p = load_shift(shift)?;
            let v = match variant {
                Variant::Bounded => GapVariant::BoundedLength,
                Variant::Exact => GapVariant::ExactLength,
            };
            writeln!(out, "q\t{}", p.decoupling_gap(v)?.gap)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(cap) = cli.enum_cap {
        set_enumeration_cap(cap);
    }
    if let Some(t) = cli.threads {
        if t == 0 {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(2);
        }
        // fails only if a pool already exists
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    let mut buf: Vec<u8> = Vec::new();
    let result = run(&cli, &mut buf).and_then(|()| match &cli.output {
        Some(path) => fs::write(path, &buf).map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
        None => io::stdout().write_all(&buf).map_err(Failure::from),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn m_lists() {
        assert_eq!(parse_m_list("1..4").unwrap(), vec![1, 2, 3, 4]);
        assert_eq!(parse_m_list("2, 5").unwrap(), vec![2, 5]);
        assert_eq!(parse_m_list("7").unwrap(), vec![7]);
        assert!(parse_m_list("3..1").is_err());
        assert!(parse_m_list("-1").is_err());
    }

    #[test]
    fn delta_lists() {
        assert_eq!(parse_deltas("0.1,0.05").unwrap(), vec![0.1, 0.05]);
        assert!(parse_deltas("").unwrap().is_empty());
        assert!(parse_deltas("-0.1").is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(Failure::Core(Error::VolumeTooLarge { size: 1e9, cap: 10 }).code(), 3);
        assert_eq!(Failure::Core(Error::Reducible).code(), 2);
        assert_eq!(Failure::Usage("x".into()).code(), 2);
    }
}
