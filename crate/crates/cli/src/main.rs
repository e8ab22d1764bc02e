//! `chooselab`: solve, generate, recognize and census list assignments.
//!
//! Exit codes: 0 verdict computed, 2 input error, 3 resource guard,
//! 4 theorem-violation alert.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use chooselab_core::census::{
    census_k33, census_subgraphs_k33, census_unique3_forward, census_unique4_forward, condition_match_unique3,
    sample_converse, structure_match_unique4, CensusReport, Profile,
};
use chooselab_core::constructions::{
    ind3_check, ind3_search, make_gstar, make_k33_bad, make_unique3, make_unique4, unique3_graph, unique4_graph,
    Ind3Instance, K33Variant, Unique4Spec,
};
use chooselab_core::format::{
    emit_certificate, emit_instance, emit_report, parse_certificate, parse_instance, Document, Entry,
};
use chooselab_core::solver::{solve, solve_generic, verify_coloring, verify_non_colorability, Method};
use chooselab_core::{Certificate, Error, Graph, ListAssignment};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "chooselab", version, about = "List-colouring and choosability laboratory")]
struct Cli {
    /// Worker threads for censuses and sampling (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Generic,
    Partitions,
    Both,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide L-colourability of an instance.
    Solve {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = MethodArg::Both)]
        method: MethodArg,
        /// Also write the certificate to this file.
        #[arg(short, long)]
        cert: Option<PathBuf>,
    },
    /// Print a generated instance.
    Gen {
        #[command(subcommand)]
        family: Family,
    },
    /// Match an instance against a characterized structure.
    Recognize {
        #[arg(value_enum)]
        structure: Structure,
        #[arg(short, long)]
        input: PathBuf,
    },
    /// Check the ind3 sufficient condition with f(v) = |L(v)|.
    Ind3 {
        #[arg(short, long)]
        input: PathBuf,
        /// Try every split of the singleton parts instead of the given one.
        #[arg(long)]
        search: bool,
        /// Singleton parts in class A, in order (default: every singleton part).
        #[arg(long, value_delimiter = ',')]
        a: Vec<usize>,
        /// Singleton parts in class D, in order.
        #[arg(long, value_delimiter = ',')]
        d: Vec<usize>,
    },
    /// Run an exhaustive census.
    Census {
        #[arg(value_enum)]
        which: CensusKind,
        #[arg(long, default_value_t = 4)]
        k: usize,
    },
    /// Sample a converse direction.
    Sample {
        #[arg(value_enum)]
        profile: ProfileArg,
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        k: usize,
    },
    /// Re-check a certificate against an instance.
    VerifyCert {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        cert: PathBuf,
    },
}

#[derive(Subcommand)]
enum Family {
    /// Structured bad assignment of K_{4,2*(k-1)}.
    Unique4 {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        a1: Option<usize>,
        #[arg(long)]
        a3: Option<usize>,
    },
    /// One of the three bad 2-assignments of K_{3,3}.
    K33 {
        #[arg(long, default_value = "disjoint")]
        variant: String,
    },
    /// Bad assignment of K_{3*(k/2+1),1*(k/2-1)} with 3k/2 colours.
    Unique3 {
        #[arg(long)]
        k: usize,
    },
    /// K_{4,2*(k-1)} minus the G* edges, with its bad assignment.
    Gstar {
        #[arg(long)]
        k: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Structure {
    Unique4,
    Unique3,
}

#[derive(Clone, Copy, ValueEnum)]
enum CensusKind {
    K33,
    Unique3Forward,
    Unique4Forward,
    SubgraphsK33,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProfileArg {
    Unique3Converse,
    Unique4Converse,
    Unique4Perturbation,
}

enum Failure {
    Input(String),
    Resource(String),
    Violation(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Resource(_) => Failure::Resource(e.to_string()),
            Error::Inconsistent(_) => Failure::Violation(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

type Run = Result<(), Failure>;

fn read(path: &PathBuf) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load(path: &PathBuf) -> Result<(Graph, ListAssignment), Failure> {
    parse_instance(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn print_doc(entries: Vec<Entry>) {
    print!("{}", Document::new(entries).emit());
}

fn solve_cmd(input: &PathBuf, method: MethodArg, cert_out: Option<&PathBuf>, format: Format) -> Run {
    let (g, l) = load(input)?;
    let method = match method {
        MethodArg::Generic => Method::Generic,
        MethodArg::Partitions => Method::Partitions,
        MethodArg::Both => Method::Both,
    };
    let cert = solve(&g, &l, method)?;
    if let Some(path) = cert_out {
        fs::write(path, emit_certificate(&cert)).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    }
    match format {
        Format::Structured => print!("{}", emit_certificate(&cert)),
        Format::Text => match &cert {
            Certificate::Coloring(c) => {
                println!("colourable");
                for (v, col) in c.0.iter().enumerate() {
                    println!("color {v} = {col}");
                }
            }
            Certificate::NonColorability(nc) => println!(
                "not colourable: {} groupings, each with a Hall violator",
                nc.violators.len()
            ),
            Certificate::Exhaustive => println!("not colourable: backtracking search exhausted"),
        },
    }
    Ok(())
}

fn gen_cmd(family: &Family) -> Run {
    let (g, l) = match *family {
        Family::Unique4 { k, a1, a3 } => {
            let a1 = a1.unwrap_or(k / 2);
            let a3 = a3.unwrap_or((k / 2).saturating_sub(a1));
            make_unique4(&Unique4Spec::new(k, a1, a3)?)?
        }
        Family::K33 { ref variant } => {
            let v = K33Variant::parse(variant).ok_or_else(|| {
                Failure::Input(format!("unknown variant {variant:?}; expected disjoint, overlap1 or overlap2"))
            })?;
            make_k33_bad(v)
        }
        Family::Unique3 { k } => make_unique3(k, None, None)?,
        Family::Gstar { k } => make_gstar(k)?,
    };
    print!("{}", emit_instance(&g, &l));
    Ok(())
}

fn recognize_cmd(structure: Structure, input: &PathBuf, format: Format) -> Run {
    let (g, l) = load(input)?;
    let (name, witness) = match structure {
        Structure::Unique4 => ("unique4", structure_match_unique4(&g, &l)?.map(|w| w.to_string())),
        Structure::Unique3 => (
            "unique3",
            condition_match_unique3(&g, &l)?.then(|| format!("colors={} triples=empty", l.colors().len())),
        ),
    };
    match format {
        Format::Text => match &witness {
            Some(w) => println!("match: {w}"),
            None => println!("no match"),
        },
        Format::Structured => {
            let mut e = vec![Entry::scalar("structure", name), Entry::scalar("match", witness.is_some())];
            if let Some(w) = witness {
                e.push(Entry::scalar("witness", w));
            }
            print_doc(e);
        }
    }
    Ok(())
}

fn ind3_cmd(input: &PathBuf, search: bool, a: &[usize], d: &[usize], format: Format) -> Run {
    let (g, l) = load(input)?;
    let f: Vec<u32> = l.lists().iter().map(|s| s.len() as u32).collect();
    let found = if search {
        ind3_search(&g, &f)?
    } else {
        let a = if a.is_empty() && d.is_empty() {
            (0..g.num_parts()).filter(|&p| g.part_sizes()[p] == 1).collect()
        } else {
            a.to_vec()
        };
        let inst = Ind3Instance::new(g, a, d.to_vec(), f)?;
        ind3_check(&inst)?.then_some(inst)
    };
    let join = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
    match (format, &found) {
        (Format::Text, Some(i)) => println!("pass: f-choosable (A parts [{}], D parts [{}])", join(&i.a), join(&i.d)),
        (Format::Text, None) => println!("fail: conditions not met"),
        (Format::Structured, _) => {
            let mut e = vec![Entry::scalar("ind3", if found.is_some() { "pass" } else { "fail" })];
            if let Some(i) = &found {
                e.push(Entry::scalar("a_parts", join(&i.a)));
                e.push(Entry::scalar("d_parts", join(&i.d)));
            }
            print_doc(e);
        }
    }
    Ok(())
}

fn show_report(r: &CensusReport, format: Format) -> Run {
    match format {
        Format::Structured => print!("{}", emit_report(r)),
        Format::Text => {
            let seed = r.seed.map(|s| format!(" seed {s}")).unwrap_or_default();
            println!("{} on {:?} with k = {}{seed} [{}]", r.name, r.shape, r.k, r.constraints);
            println!("total {}, bad {}, iso classes {}, {} ms", r.total, r.bad, r.iso_classes(), r.wall_ms);
            for (k, v) in &r.details {
                println!("  {k}: {v}");
            }
            for c in &r.classes {
                let w = c.witness.as_deref().unwrap_or("-");
                println!("  class {} x{}: {w}", c.form.to_hex(), c.count);
            }
            for v in &r.violations {
                println!("  VIOLATION: {v}");
            }
        }
    }
    match r.violations.first() {
        Some(v) => Err(Failure::Violation(format!("{} violations, first: {v}", r.violations.len()))),
        None => Ok(()),
    }
}

fn verify_cmd(input: &PathBuf, cert_path: &PathBuf, format: Format) -> Run {
    let (g, l) = load(input)?;
    let cert = parse_certificate(&read(cert_path)?)
        .map_err(|e| Failure::Input(format!("{}: {e}", cert_path.display())))?;
    let outcome = match &cert {
        Certificate::Coloring(c) => verify_coloring(&g, &l, c),
        Certificate::NonColorability(nc) => verify_non_colorability(&g, &l, nc),
        Certificate::Exhaustive => match solve_generic(&g, &l)? {
            None => Ok(()),
            Some(_) => Err(Error::Invalid("instance is colourable".into())),
        },
    };
    match format {
        Format::Text => match &outcome {
            Ok(()) => println!("certificate verified"),
            Err(e) => println!("certificate rejected: {e}"),
        },
        Format::Structured => {
            let mut e = vec![Entry::scalar("verified", outcome.is_ok())];
            if let Err(err) = &outcome {
                e.push(Entry::scalar("reason", err));
            }
            print_doc(e);
        }
    }
    outcome.map_err(|e| Failure::Input(format!("certificate rejected: {e}")))
}

fn run(cli: &Cli) -> Run {
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| Failure::Input(e.to_string()))?;
    }
    match &cli.cmd {
        Cmd::Solve { input, method, cert } => solve_cmd(input, *method, cert.as_ref(), cli.format),
        Cmd::Gen { family } => gen_cmd(family),
        Cmd::Recognize { structure, input } => recognize_cmd(*structure, input, cli.format),
        Cmd::Ind3 { input, search, a, d } => ind3_cmd(input, *search, a, d, cli.format),
        Cmd::Census { which, k } => {
            let r = match which {
                CensusKind::K33 => census_k33()?,
                CensusKind::Unique3Forward => census_unique3_forward(*k)?,
                CensusKind::Unique4Forward => census_unique4_forward(*k)?,
                CensusKind::SubgraphsK33 => census_subgraphs_k33()?,
            };
            show_report(&r, cli.format)
        }
        Cmd::Sample { profile, trials, seed, k } => {
            let (profile, g) = match profile {
                ProfileArg::Unique3Converse => (Profile::Unique3Converse, unique3_graph(*k)?),
                ProfileArg::Unique4Converse => (Profile::Unique4Converse, unique4_graph(*k)?),
                ProfileArg::Unique4Perturbation => (Profile::Unique4Perturbation, unique4_graph(*k)?),
            };
            show_report(&sample_converse(&g, *k, profile, *trials, *seed)?, cli.format)
        }
        Cmd::VerifyCert { input, cert } => verify_cmd(input, cert, cli.format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Resource(m)) => {
            eprintln!("resource guard: {m}");
            ExitCode::from(3)
        }
        Err(Failure::Violation(m)) => {
            eprintln!("theorem-violation alert: {m}");
            ExitCode::from(4)
        }
    }
}
