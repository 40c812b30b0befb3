use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nakayama_core::brauer::{kauer_mutate, psi, BrauerTree};
use nakayama_core::complexes::{phi, TwoTerm};
use nakayama_core::disc::{enumerate_triangulations, flip, fold, unfold, Triangulation};
use nakayama_core::fmap::{exchange_quiver, fmap_all, fmap_transport, verify, QuiverKind, Status, Suite};
use nakayama_core::modcat::Algebra;
use nakayama_core::smscfg::{
    enumerate_configurations, is_configuration, prune_type, sms_mutate, tilde, Configuration, Point,
};
use nakayama_core::{Error, Sign};

macro_rules! out {
    ($($t:tt)*) => {{
        use std::io::Write;
        if let Err(e) = writeln!(io::stdout(), $($t)*) {
            if e.kind() == io::ErrorKind::BrokenPipe {
                std::process::exit(0);
            }
            return Err(Failure::Input(format!("stdout: {e}")));
        }
    }};
}

#[derive(Parser)]
#[command(name = "nakayama", version, about = "Triangulations, Brauer trees, two-term tilting complexes and simple-minded systems of self-injective Nakayama algebras")]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for the parallel suites (output does not depend on it).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct AlgArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    ell: usize,
}

impl AlgArgs {
    fn algebra(&self) -> Result<Algebra, Error> {
        Algebra::new(self.n, self.ell)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SignArg {
    Minus,
    Plus,
}

impl From<SignArg> for Sign {
    fn from(s: SignArg) -> Sign {
        match s {
            SignArg::Minus => Sign::Minus,
            SignArg::Plus => Sign::Plus,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    #[value(name = "2tilt")]
    TwoTilt,
    Sms,
}

#[derive(Subcommand)]
enum Command {
    /// List the triangulations of the punctured e-gon.
    EnumerateTriangulations {
        #[arg(long)]
        e: usize,
        /// Print only the number of triangulations.
        #[arg(long)]
        count: bool,
    },
    /// Flip the arc with the given 1-based position.
    Flip {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        label: usize,
    },
    /// Lift a triangulation to the rotation-symmetric one of rank n.
    Unfold {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        n: usize,
    },
    /// Fold a rotation-symmetric triangulation down to rank e.
    Fold {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        e: usize,
    },
    /// Brauer tree of a triangulation.
    Psi {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "minus")]
        sign: SignArg,
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Two-term tilting complex of a triangulation over A_n^ell.
    Phi {
        #[arg(long = "in")]
        input: PathBuf,
        #[command(flatten)]
        alg: AlgArgs,
        #[arg(long, value_enum, default_value = "minus")]
        sign: SignArg,
    },
    /// Kauer move of a Brauer tree at an edge.
    Kauer {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        label: usize,
        #[arg(long, value_enum)]
        sign: SignArg,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// List the configurations (simple-minded systems) of A_n^ell.
    EnumerateSms {
        #[command(flatten)]
        alg: AlgArgs,
        #[arg(long)]
        count: bool,
    },
    /// Check the configuration axioms; exits 1 if they fail.
    IsConfig {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Mutate a configuration at a Nakayama-stable subset given as x,y points.
    SmsMutate {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long = "point", required = true, value_parser = parse_point)]
        points: Vec<Point>,
        #[arg(long, value_enum)]
        sign: SignArg,
    },
    /// Tree-pruning type (bottom or top) of a configuration.
    Prune {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Collapse a configuration of A_e^{em} to one of A_e^e.
    Tilde {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Image of a two-term tilting complex; without --in, the whole table for --n/--ell.
    Fmap {
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        ell: Option<usize>,
    },
    /// Exchange quiver of two-term tilting complexes or of configurations.
    ExchangeQuiver {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[command(flatten)]
        alg: AlgArgs,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Run a verification suite; exits 1 on failure.
    Verify {
        /// counts, bijection, mutation-compat, embedding, types, tilde, functors, confluence or all.
        #[arg(long)]
        suite: String,
        #[command(flatten)]
        alg: AlgArgs,
    },
}

fn parse_point(s: &str) -> Result<Point, String> {
    let (x, y) = s.split_once(',').ok_or_else(|| format!("expected x,y but got {s:?}"))?;
    let x = x.trim().parse().map_err(|_| format!("bad x in {s:?}"))?;
    let y = y.trim().parse().map_err(|_| format!("bad y in {s:?}"))?;
    Ok((x, y))
}

enum Failure {
    Input(String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Input(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
    }
}

fn write_dot(path: &Option<PathBuf>, dot: &str) -> Result<(), Failure> {
    if let Some(p) = path {
        fs::write(p, dot).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    let json = cli.json;
    match cli.command {
        Command::EnumerateTriangulations { e, count } => {
            let all = enumerate_triangulations(e)?;
            if count {
                out!("{}", all.len());
            } else {
                for x in &all {
                    out!("{}", if json { x.to_json() } else { x.to_string() });
                }
            }
        }
        Command::Flip { input, label } => {
            let x = Triangulation::from_json(&read_input(&input)?)?;
            let arc = *label
                .checked_sub(1)
                .and_then(|i| x.arcs.get(i))
                .ok_or(Error::ArcNotPresent(format!("label {label}")))?;
            let (y, new) = flip(&x, &arc)?;
            if json {
                out!("{}", y.to_json());
            } else {
                out!("{arc} -> {new}");
                out!("{y}");
            }
        }
        Command::Unfold { input, n } => {
            let y = unfold(&Triangulation::from_json(&read_input(&input)?)?, n)?;
            out!("{}", if json { y.to_json() } else { y.to_string() });
        }
        Command::Fold { input, e } => {
            let y = fold(&Triangulation::from_json(&read_input(&input)?)?, e)?;
            out!("{}", if json { y.to_json() } else { y.to_string() });
        }
        Command::Psi { input, sign, m, dot } => {
            let g = psi(&Triangulation::from_json(&read_input(&input)?)?, sign.into(), m)?;
            write_dot(&dot, &g.to_dot())?;
            out!("{}", g.to_json());
        }
        Command::Phi { input, alg, sign } => {
            let t = phi(&Triangulation::from_json(&read_input(&input)?)?, sign.into(), &alg.algebra()?)?;
            out!("{}", if json { t.to_json() } else { t.to_string() });
        }
        Command::Kauer { input, label, sign, dot } => {
            let g = kauer_mutate(&BrauerTree::from_json(&read_input(&input)?)?, label, sign.into())?;
            write_dot(&dot, &g.to_dot())?;
            out!("{}", g.to_json());
        }
        Command::EnumerateSms { alg, count } => {
            let all = enumerate_configurations(&alg.algebra()?)?;
            if count {
                out!("{}", all.len());
            } else {
                for c in &all {
                    out!("{}", if json { c.to_json() } else { c.to_string() });
                }
            }
        }
        Command::IsConfig { input, dot } => {
            let c = Configuration::from_json(&read_input(&input)?)?;
            write_dot(&dot, &c.to_dot())?;
            let ok = is_configuration(&c);
            out!("{ok}");
            if !ok {
                return Err(Failure::Verification);
            }
        }
        Command::SmsMutate { input, points, sign } => {
            let c = Configuration::from_json(&read_input(&input)?)?;
            if !is_configuration(&c) {
                return Err(Error::NotAConfiguration(c.to_string()).into());
            }
            let out = sms_mutate(&c, &points, sign.into())?;
            if json {
                out!("{}", out.result.to_json());
            } else {
                for ((x, y), (u, v)) in &out.replacement {
                    out!("({x},{y}) -> ({u},{v})");
                }
                out!("{}", out.result);
            }
        }
        Command::Prune { input } => {
            let c = Configuration::from_json(&read_input(&input)?)?;
            if !is_configuration(&c) {
                return Err(Error::NotAConfiguration(c.to_string()).into());
            }
            let ty = prune_type(&c)?;
            let name = format!("{ty:?}").to_lowercase();
            if json {
                out!("{}", serde_json::json!({"type": name}));
            } else {
                out!("{name}");
            }
        }
        Command::Tilde { input } => {
            let c = Configuration::from_json(&read_input(&input)?)?;
            if !is_configuration(&c) {
                return Err(Error::NotAConfiguration(c.to_string()).into());
            }
            let t = tilde(&c)?;
            out!("{}", if json { t.to_json() } else { t.to_string() });
        }
        Command::Fmap { input, n, ell } => match (input, n, ell) {
            (Some(path), None, None) => {
                let t = TwoTerm::from_json(&read_input(&path)?)?;
                let img = fmap_transport(&t)?;
                if json {
                    out!("{}", img.config.to_json());
                } else {
                    for (s, (x, y)) in &img.correspondence.pairs {
                        out!("{s} <-> ({x},{y})");
                    }
                    out!("{}", img.config);
                }
            }
            (None, Some(n), Some(ell)) => {
                for (t, img) in fmap_all(&Algebra::new(n, ell)?)? {
                    if json {
                        out!("{}", serde_json::json!({"complex": serde_json::from_str::<serde_json::Value>(&t.to_json()).unwrap(), "config": serde_json::from_str::<serde_json::Value>(&img.config.to_json()).unwrap()}));
                    } else {
                        out!("{t}  ->  {}", img.config);
                    }
                }
            }
            _ => return Err(Failure::Input("fmap needs either --in or both --n and --ell".into())),
        },
        Command::ExchangeQuiver { kind, alg, dot } => {
            let a = alg.algebra()?;
            let kind = match kind {
                KindArg::TwoTilt => QuiverKind::TwoTilt,
                KindArg::Sms => QuiverKind::Sms,
            };
            let q = exchange_quiver(kind, &a)?;
            if dot.is_some() {
                let notes: Option<Vec<String>> = match kind {
                    QuiverKind::TwoTilt => Some(fmap_all(&a)?.into_iter().map(|p| p.1.config.to_string()).collect()),
                    QuiverKind::Sms => None,
                };
                write_dot(&dot, &q.to_dot(notes.as_deref()))?;
            }
            if json {
                out!("{}", q.to_json());
            } else {
                out!("{} objects, {} arrows", q.objects.len(), q.arrows.len());
                for a in &q.arrows {
                    out!("{} -> {} [{}]", a.from, a.to, a.label);
                }
            }
        }
        Command::Verify { suite, alg } => {
            let a = alg.algebra()?;
            let suites: Vec<Suite> = if suite == "all" {
                Suite::ALL.to_vec()
            } else {
                vec![suite.parse::<Suite>()?]
            };
            let mut failed = false;
            for s in suites {
                let r = match verify(s, &a) {
                    Ok(r) => r,
                    Err(Error::TrivialMultiplicity | Error::NotDivisible { .. }) if suite == "all" => continue,
                    Err(e) => return Err(e.into()),
                };
                failed |= r.status == Status::Fail;
                if json {
                    out!("{}", r.to_json());
                } else {
                    out!("{}: {} ({})", s, r.status.name(), r.summary);
                    for c in &r.counterexamples {
                        out!("  {c}");
                    }
                }
            }
            if failed {
                return Err(Failure::Verification);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(k) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(k).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
