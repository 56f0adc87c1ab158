mod check;
mod error;

use std::collections::BTreeSet;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use treeaut::io::{merged_alphabet, to_dot, write_timbuk, write_transducer, DocumentKind, TimbukDocument};
use treeaut::ops::{
    check_inclusion_antichain, check_inclusion_classical, complement, determinise, intersection, is_empty,
    minimise, prune_unreachable, reduce_by_simulation, union,
};
use treeaut::transducer::{apply_step, compose};
use treeaut::{Manager, Term, Transducer, TreeAutomaton};

use error::CliError;

/// Symbolic bottom-up tree automata over Timbuk files.
///
/// An input path of `-` reads standard input; without `-o` results go to
/// standard output.
#[derive(Parser)]
#[command(name = "treeaut", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Language union
    Union(Binary),
    /// Language intersection
    Intersect(Binary),
    /// Subset construction
    Determinise(Unary),
    /// Complement with respect to all terms over the alphabet
    Complement(Unary),
    /// Remove states no term reaches
    Prune(Unary),
    /// Minimal deterministic automaton
    Minimise(Unary),
    /// Merge states equivalent under downward simulation
    ReduceSim(Unary),
    /// Print `empty` or `nonempty`; exit 0 or 1
    IsEmpty(Query),
    /// Print `yes` if L(A) is included in L(B); exit 0 or 1
    Incl(Inclusion),
    /// Print `yes` if the term is accepted; exit 0 or 1
    Member(Member),
    /// Image of an automaton under a transducer
    ApplyTrans(ApplyTrans),
    /// Relational composition of two transducers
    Compose(Compose),
    /// Graphviz rendering
    Dot(Render),
    /// Size summary
    Stats(Render),
}

#[derive(Args)]
struct Unary {
    input: PathBuf,
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long)]
    check_oracle: bool,
}

#[derive(Args)]
struct Binary {
    left: PathBuf,
    right: PathBuf,
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long)]
    check_oracle: bool,
}

#[derive(Args)]
struct Query {
    input: PathBuf,
    #[arg(long)]
    check_oracle: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Antichain,
    Classical,
}

#[derive(Args)]
struct Inclusion {
    left: PathBuf,
    right: PathBuf,
    #[arg(long, value_enum, default_value = "antichain")]
    method: Method,
    #[arg(long)]
    check_oracle: bool,
}

#[derive(Args)]
struct Member {
    input: PathBuf,
    #[arg(short, long)]
    term: String,
    #[arg(long)]
    check_oracle: bool,
}

#[derive(Args)]
struct ApplyTrans {
    transducer: PathBuf,
    input: PathBuf,
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long)]
    check_oracle: bool,
}

#[derive(Args)]
struct Compose {
    first: PathBuf,
    second: PathBuf,
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long)]
    check_oracle: bool,
}

#[derive(Args)]
struct Render {
    input: PathBuf,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    let io_err = |source| CliError::Io {
        path: path.to_owned(),
        source,
    };
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(io_err)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(io_err)
    }
}

fn emit(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|source| CliError::Io {
            path: p.to_owned(),
            source,
        }),
        None => io::stdout().write_all(text.as_bytes()).map_err(|source| CliError::Io {
            path: "<stdout>".into(),
            source,
        }),
    }
}

/// Parsed inputs sharing one manager and the union of their alphabets.
struct Loaded {
    manager: Manager,
    docs: Vec<(PathBuf, TimbukDocument)>,
    alphabet: Arc<treeaut::Alphabet>,
}

impl Loaded {
    fn new(paths: &[&Path]) -> Result<Self, CliError> {
        let mut docs = Vec::new();
        for p in paths {
            let doc = TimbukDocument::parse(&read(p)?).map_err(|source| CliError::Format {
                path: p.to_path_buf(),
                source,
            })?;
            docs.push((p.to_path_buf(), doc));
        }
        let refs: Vec<&TimbukDocument> = docs.iter().map(|(_, d)| d).collect();
        let alphabet = Arc::new(merged_alphabet(&refs).map_err(|source| CliError::Format {
            path: paths[0].to_path_buf(),
            source,
        })?);
        Ok(Loaded {
            manager: Manager::new(alphabet.width()),
            docs,
            alphabet,
        })
    }

    fn wrong_kind(&self, k: usize, want: &str) -> CliError {
        CliError::Format {
            path: self.docs[k].0.clone(),
            source: treeaut::Error::Format {
                line: 1,
                message: format!("expected {want} document"),
            },
        }
    }

    fn automaton(&mut self, k: usize) -> Result<TreeAutomaton, CliError> {
        let (path, doc) = &self.docs[k];
        if doc.kind != DocumentKind::Automaton {
            return Err(self.wrong_kind(k, "an automaton"));
        }
        doc.to_automaton(&mut self.manager, self.alphabet.clone())
            .map_err(|source| CliError::Format {
                path: path.clone(),
                source,
            })
    }

    fn transducer(&mut self, k: usize) -> Result<Transducer, CliError> {
        let (path, doc) = &self.docs[k];
        if doc.kind != DocumentKind::Transducer {
            return Err(self.wrong_kind(k, "a transducer"));
        }
        doc.to_transducer(&mut self.manager, self.alphabet.clone())
            .map_err(|source| CliError::Format {
                path: path.clone(),
                source,
            })
    }
}

fn write_automaton(m: &Manager, a: &TreeAutomaton, out: Option<&Path>) -> Result<(), CliError> {
    emit(out, &write_timbuk(m, &a.with_canonical_names())?)
}

fn answer(yes: bool, on_yes: &str, on_no: &str) -> u8 {
    println!("{}", if yes { on_yes } else { on_no });
    u8::from(!yes)
}

fn run(command: Command) -> Result<u8, CliError> {
    match command {
        Command::Union(args) => binary(args, "union", union, |t, x| {
            x[0].language_in(t).union(&x[1].language_in(t)).cloned().collect()
        }),
        Command::Intersect(args) => binary(args, "intersection", intersection, |t, x| {
            x[0].language_in(t).intersection(&x[1].language_in(t)).cloned().collect()
        }),
        Command::Determinise(args) => unary(args, "determinise", determinise, same_language),
        Command::Complement(args) => unary(args, "complement", complement, |t, x| {
            let inside = x[0].language_in(t);
            t.terms().filter(|s| !inside.contains(s)).collect()
        }),
        Command::Prune(args) => unary(args, "prune", prune_unreachable, same_language),
        Command::Minimise(args) => unary(args, "minimise", minimise, same_language),
        Command::ReduceSim(args) => unary(args, "reduce-sim", reduce_by_simulation, same_language),
        Command::IsEmpty(args) => {
            let mut l = Loaded::new(&[&args.input])?;
            let a = l.automaton(0)?;
            let empty = is_empty(&mut l.manager, &a)?;
            if args.check_oracle {
                check::emptiness(&l.manager, &a, empty)?;
            }
            Ok(answer(empty, "empty", "nonempty"))
        }
        Command::Incl(args) => {
            let mut l = Loaded::new(&[&args.left, &args.right])?;
            let a = l.automaton(0)?;
            let b = l.automaton(1)?;
            let holds = match args.method {
                Method::Antichain => check_inclusion_antichain(&mut l.manager, &a, &b)?,
                Method::Classical => check_inclusion_classical(&mut l.manager, &a, &b)?,
            };
            if args.check_oracle {
                check::inclusion(&l.manager, &a, &b, holds)?;
            }
            Ok(answer(holds, "yes", "no"))
        }
        Command::Member(args) => {
            let mut l = Loaded::new(&[&args.input])?;
            let a = l.automaton(0)?;
            let term = Term::parse(&args.term, &l.alphabet)?;
            let member = a.accepts(&l.manager, &term)?;
            if args.check_oracle {
                check::membership(&l.manager, &a, &term, member)?;
            }
            Ok(answer(member, "yes", "no"))
        }
        Command::ApplyTrans(args) => {
            let mut l = Loaded::new(&[&args.transducer, &args.input])?;
            let t = l.transducer(0)?;
            let a = l.automaton(1)?;
            let image = apply_step(&mut l.manager, &t, &a)?;
            if args.check_oracle {
                check::image(&l.manager, &t, &a, &image)?;
            }
            write_automaton(&l.manager, &image, args.output.as_deref())?;
            Ok(0)
        }
        Command::Compose(args) => {
            let mut l = Loaded::new(&[&args.first, &args.second])?;
            let t1 = l.transducer(0)?;
            let t2 = l.transducer(1)?;
            let tc = compose(&mut l.manager, &t1, &t2)?;
            if args.check_oracle {
                check::composition(&l.manager, &t1, &t2, &tc)?;
            }
            emit(args.output.as_deref(), &write_transducer(&l.manager, &tc)?)?;
            Ok(0)
        }
        Command::Dot(args) => {
            let mut l = Loaded::new(&[&args.input])?;
            let a = l.automaton(0)?;
            emit(args.output.as_deref(), &to_dot(&l.manager, &a)?)?;
            Ok(0)
        }
        Command::Stats(args) => {
            let mut l = Loaded::new(&[&args.input])?;
            let a = l.automaton(0)?;
            emit(args.output.as_deref(), &stats(&l.manager, &a)?)?;
            Ok(0)
        }
    }
}

type Expected = fn(&treeaut::oracle::TermTable, &[treeaut::oracle::ExplicitTA]) -> BTreeSet<Term>;

fn same_language(t: &treeaut::oracle::TermTable, x: &[treeaut::oracle::ExplicitTA]) -> BTreeSet<Term> {
    x[0].language_in(t)
}

fn unary(
    args: Unary,
    what: &str,
    op: fn(&mut Manager, &TreeAutomaton) -> treeaut::Result<TreeAutomaton>,
    expected: Expected,
) -> Result<u8, CliError> {
    let mut l = Loaded::new(&[&args.input])?;
    let a = l.automaton(0)?;
    let out = op(&mut l.manager, &a)?;
    if args.check_oracle {
        check::language(&l.manager, &[&a], &out, what, expected)?;
    }
    write_automaton(&l.manager, &out, args.output.as_deref())?;
    Ok(0)
}

fn binary(
    args: Binary,
    what: &str,
    op: fn(&mut Manager, &TreeAutomaton, &TreeAutomaton) -> treeaut::Result<TreeAutomaton>,
    expected: Expected,
) -> Result<u8, CliError> {
    let mut l = Loaded::new(&[&args.left, &args.right])?;
    let a = l.automaton(0)?;
    let b = l.automaton(1)?;
    let out = op(&mut l.manager, &a, &b)?;
    if args.check_oracle {
        check::language(&l.manager, &[&a, &b], &out, what, expected)?;
    }
    write_automaton(&l.manager, &out, args.output.as_deref())?;
    Ok(0)
}

fn stats(m: &Manager, a: &TreeAutomaton) -> Result<String, CliError> {
    let mut s = format!("states: {}\nfinals: {}\n", a.num_states(), a.finals().len());
    for k in a.transitions().arities() {
        s += &format!("super-states arity {k}: {}\n", a.transitions().of_arity(k).len());
    }
    s += &format!("nodes: {}\n", a.node_count(m)?);
    Ok(s)
}
