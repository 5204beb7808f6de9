//! Command dispatch. Every command loads and validates its inputs before
//! the report header is written, so malformed files never yield a partial
//! report.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use loopforge_core::baer::baer_envelope;
use loopforge_core::bx2p::{
    check_bx2p_tau, check_theorem1_shape, classify_folder, classify_q, heiss_decomposition, kbar_check,
    lemma_suite, q_sieve, QReading,
};
use loopforge_core::group::o2;
use loopforge_core::loops::find_loop_isomorphism;
use loopforge_core::search::{search_folders, EnumSpec, FolderSearch, Strategy};
use loopforge_core::{FiniteGroup, Flag, Folder, Loop, Witness};

use crate::format::{parse_folder, parse_group, parse_loop, parse_subgroup, subgroup_in, write_folder, write_loop};
use crate::parallel::{enumerate_parallel, hypothesis_a_parallel};
use crate::report::{Input, Report};
use crate::{cap_from_env, read_file, write_file, Error, Result};

#[derive(Parser, Debug)]
#[command(name = "loopforge", version, about = "Finite loops, loop folders and their envelopes")]
pub struct Cli {
    /// Add elapsed_ms to the summary line (makes output time dependent).
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Level {
    Folder,
    Bol,
    Ar,
    Bruck,
    Bx2p,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
    Section3,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Reading {
    Literal,
    PrimePower,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Identity {
    Bol,
    Aip,
    Bruck,
    Ar,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Identity verdicts for a loop table.
    CheckLoop {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "bol,aip,bruck,ar")]
        identities: Vec<Identity>,
        /// Also decide solubility (order ≤ 32).
        #[arg(long)]
        soluble: bool,
    },
    /// Baer envelope of a loop.
    Envelope {
        file: PathBuf,
        #[arg(long)]
        emit_folder: Option<PathBuf>,
    },
    /// Classification flags of a folder.
    CheckFolder {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "folder")]
        level: Level,
    },
    /// The loop of a folder.
    Fold2loop {
        file: PathBuf,
        #[arg(long)]
        emit_loop: Option<PathBuf>,
    },
    /// Lemma checks on a folder.
    Lemmas {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
    },
    /// Heiss counting decomposition; N defaults to O₂(G).
    Heiss {
        file: PathBuf,
        #[arg(long)]
        normal: Option<PathBuf>,
    },
    /// Classify field sizes q.
    Qclass {
        #[arg(required_unless_present = "sieve", conflicts_with = "sieve")]
        q: Option<u64>,
        #[arg(long)]
        sieve: Option<u64>,
        #[arg(long, value_enum, default_value = "prime-power")]
        reading: Reading,
    },
    /// Structure of G/O₂(G) for a BX2P-envelope.
    Theorem1 { file: PathBuf },
    /// Enumerate loops of one order.
    Enumerate {
        #[arg(long)]
        order: usize,
        #[arg(long)]
        bol: bool,
        #[arg(long)]
        aip: bool,
        #[arg(long)]
        exponent2: bool,
        #[arg(long)]
        ar: bool,
        /// One table per isomorphism class.
        #[arg(long)]
        canonical: bool,
        /// Try symbols in descending order.
        #[arg(long)]
        reversed: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Hypothesis (A) folders in a group.
    SearchA {
        group: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        max_hits_per_h: Option<usize>,
    },
    /// Folders over a fixed subgroup H.
    SearchFolder {
        group: PathBuf,
        #[arg(long)]
        h: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        bx2p: bool,
        #[arg(long)]
        max_hits: Option<usize>,
    },
}

struct Loaded<T> {
    value: T,
    inputs: Vec<Input>,
}

fn text(path: &Path) -> Result<(String, Input)> {
    let bytes = read_file(path)?;
    let input = Input::new(&path.display().to_string(), &bytes);
    let s = String::from_utf8(bytes).map_err(|_| Error::Parse {
        line: 0,
        msg: format!("{} is not UTF-8", path.display()),
    })?;
    Ok((s, input))
}

fn load_loop(path: &Path) -> Result<Loaded<Loop>> {
    let (s, i) = text(path)?;
    Ok(Loaded {
        value: parse_loop(&s)?,
        inputs: vec![i],
    })
}

fn load_folder(path: &Path, cap: usize) -> Result<Loaded<Folder>> {
    let (s, i) = text(path)?;
    Ok(Loaded {
        value: parse_folder(&s, cap)?,
        inputs: vec![i],
    })
}

fn stdout_only() -> Vec<Box<dyn Write>> {
    vec![Box::new(std::io::stdout())]
}

/// Stdout plus `<out>/summary.ndjson`.
fn with_summary(out: &Path) -> Result<Vec<Box<dyn Write>>> {
    std::fs::create_dir_all(out).map_err(|source| Error::Io {
        path: out.display().to_string(),
        source,
    })?;
    let p = out.join("summary.ndjson");
    let f = std::fs::File::create(&p).map_err(|source| Error::Io {
        path: p.display().to_string(),
        source,
    })?;
    Ok(vec![Box::new(std::io::stdout()), Box::new(std::io::BufWriter::new(f))])
}

fn identity_flag(l: &Loop, id: Identity) -> Flag {
    let w = |v: Vec<usize>| Witness::new().with("witness", v);
    match id {
        Identity::Bol => match l.check_bol() {
            Ok(()) => Flag::yes(),
            Err((x, y, z)) => Flag::no(w(vec![x, y, z])),
        },
        Identity::Aip => match l.check_aip() {
            Ok(Ok(())) => Flag::yes(),
            Ok(Err((x, y))) => Flag::no(w(vec![x, y])),
            Err(e) => Flag::no(Witness::new().with("reason", e.to_string())),
        },
        Identity::Bruck => Flag::from_bool(l.is_bruck(), Witness::new()),
        Identity::Ar => match l.check_ar() {
            Ok(()) => Flag::yes(),
            Err((x, y, u, v)) => Flag::no(w(vec![x, y, u, v])),
        },
    }
}

fn identity_name(id: Identity) -> &'static str {
    match id {
        Identity::Bol => "bol",
        Identity::Aip => "aip",
        Identity::Bruck => "bruck",
        Identity::Ar => "ar",
    }
}

fn level_holds(f: &Folder, level: Level) -> bool {
    let c = classify_folder(f);
    c.folder.holds
        && match level {
            Level::Folder => true,
            Level::Bol => c.is_bol(),
            Level::Ar => c.is_ar(),
            Level::Bruck => c.is_bruck(),
            Level::Bx2p => c.is_bx2p(),
        }
}

fn rows_json(l: &Loop) -> serde_json::Value {
    json!(l.rows())
}

/// Runs one command and returns its exit code.
pub fn run(cli: Cli) -> Result<i32> {
    let cap = cap_from_env()?;
    let timing = cli.timing;
    match cli.command {
        Command::CheckLoop {
            file,
            identities,
            soluble,
        } => {
            let Loaded { value: l, inputs } = load_loop(&file)?;
            let mut r = Report::start("check-loop", &inputs, stdout_only(), timing)?;
            for id in identities {
                let flag = identity_flag(&l, id);
                let ok = flag.holds;
                r.result(&json!({"identity": identity_name(id), "holds": flag.holds, "witness": flag.witness}), ok)?;
            }
            if soluble {
                let s = l.is_soluble_loop()?;
                r.result(&json!({"identity": "soluble", "holds": s}), s)?;
            }
            r.finish()
        }
        Command::Envelope { file, emit_folder } => {
            let Loaded { value: l, inputs } = load_loop(&file)?;
            let f = baer_envelope(&l, cap)?;
            let class = f.verify();
            let back = f.to_loop()?;
            let round_trip = find_loop_isomorphism(&l, &back).is_some();
            if let Some(p) = &emit_folder {
                write_file(p, &write_folder(&f))?;
            }
            let mut r = Report::start("envelope", &inputs, stdout_only(), timing)?;
            r.result(
                &json!({
                    "loop_order": l.order(),
                    "group_order": f.group().order(),
                    "h_order": f.h().len(),
                    "faithful": class.faithful.holds,
                    "envelope": class.envelope.holds,
                    "round_trip": round_trip,
                }),
                round_trip && class.faithful.holds && class.envelope.holds,
            )?;
            r.finish()
        }
        Command::CheckFolder { file, level } => {
            let Loaded { value: f, inputs } = load_folder(&file, cap)?;
            let class = classify_folder(&f);
            let ok = level_holds(&f, level);
            let mut r = Report::start("check-folder", &inputs, stdout_only(), timing)?;
            r.result(&class, ok)?;
            r.finish()
        }
        Command::Fold2loop { file, emit_loop } => {
            let Loaded { value: f, inputs } = load_folder(&file, cap)?;
            let l = f.to_loop()?;
            if let Some(p) = &emit_loop {
                write_file(p, &write_loop(&l))?;
            }
            let mut r = Report::start("fold2loop", &inputs, stdout_only(), timing)?;
            r.result(&json!({"order": l.order(), "table": rows_json(&l)}), true)?;
            r.finish()
        }
        Command::Lemmas { file, suite } => {
            let Loaded { value: f, inputs } = load_folder(&file, cap)?;
            let mut reports = lemma_suite(&f)?;
            if suite == Suite::All {
                reports.push(check_bx2p_tau(&f)?);
                reports.push(kbar_check(&f)?);
                reports.push(check_theorem1_shape(&f)?);
            }
            let mut r = Report::start("lemmas", &inputs, stdout_only(), timing)?;
            for rep in &reports {
                r.result(rep, rep.pass != Some(false))?;
            }
            r.finish()
        }
        Command::Heiss { file, normal } => {
            let Loaded {
                value: f,
                mut inputs,
            } = load_folder(&file, cap)?;
            let n = match &normal {
                Some(p) => {
                    let (s, i) = text(p)?;
                    inputs.push(i);
                    let perms = parse_subgroup(&s, f.group().degree())?;
                    subgroup_in(f.group(), &perms)?
                }
                None => o2(f.group()),
            };
            let d = heiss_decomposition(&f, &n)?;
            let mut r = Report::start("heiss", &inputs, stdout_only(), timing)?;
            r.result(&d, d.holds())?;
            r.finish()
        }
        Command::Qclass { q, sieve, reading } => {
            let reading = match reading {
                Reading::Literal => QReading::Literal,
                Reading::PrimePower => QReading::PrimePower,
            };
            let qs = match (q, sieve) {
                (Some(q), _) if q < 2 => return Err(Error::Usage("q must be at least 2".into())),
                (Some(q), _) => vec![classify_q(q, reading)],
                (None, Some(m)) => q_sieve(m, reading).into_iter().map(|q| classify_q(q, reading)).collect(),
                (None, None) => return Err(Error::Usage("give q or --sieve".into())),
            };
            let mut r = Report::start("qclass", &[], stdout_only(), timing)?;
            for c in &qs {
                r.result(c, true)?;
            }
            r.finish()
        }
        Command::Theorem1 { file } => {
            let Loaded { value: f, inputs } = load_folder(&file, cap)?;
            let rep = check_theorem1_shape(&f)?;
            let mut r = Report::start("theorem1", &inputs, stdout_only(), timing)?;
            r.result(&rep, rep.pass != Some(false))?;
            r.finish()
        }
        Command::Enumerate {
            order,
            bol,
            aip,
            exponent2,
            ar,
            canonical,
            reversed,
            out,
        } => {
            let mut spec = EnumSpec::new(order).reversed(reversed);
            spec.canonicalize = canonical;
            spec.constraints.bol = bol;
            spec.constraints.aip = aip;
            spec.constraints.exponent2 = exponent2;
            spec.constraints.ar = ar;
            let strategy: Strategy = spec.strategy()?;
            let e = enumerate_parallel(&spec, strategy)?;
            let mut r = Report::start("enumerate", &[], with_summary(&out)?, timing)?;
            for (i, l) in e.loops.iter().enumerate() {
                let name = format!("loop-{order}-{i:05}.loop");
                write_file(&out.join(&name), &write_loop(l))?;
                r.result(&json!({"file": name, "group": l.is_group()}), true)?;
            }
            r.result(&json!({"order": order, "raw": e.raw, "classes": e.loops.len()}), true)?;
            r.finish()
        }
        Command::SearchA {
            group,
            out,
            max_hits_per_h,
        } => {
            let (s, i) = text(&group)?;
            let g = parse_group(&s)?.materialize(cap)?;
            let found = hypothesis_a_parallel(&g, max_hits_per_h)?;
            write_folders("search-a", &[i], &found, &out, timing)
        }
        Command::SearchFolder {
            group,
            h,
            out,
            bx2p,
            max_hits,
        } => {
            let (s, gi) = text(&group)?;
            let g = parse_group(&s)?.materialize(cap)?;
            let (hs, hi) = text(&h)?;
            let hset = subgroup_in(&g, &parse_subgroup(&hs, g.degree())?)?;
            let mut found = Vec::new();
            search_folders(&g, &hset, FolderSearch { bx2p, max_hits }, &mut |f| found.push(f))?;
            write_folders("search-folder", &[gi, hi], &found, &out, timing)
        }
    }
}

fn write_folders(command: &str, inputs: &[Input], found: &[Folder], out: &Path, timing: bool) -> Result<i32> {
    let mut r = Report::start(command, inputs, with_summary(out)?, timing)?;
    for (i, f) in found.iter().enumerate() {
        let name = format!("folder-{i:05}.folder");
        write_file(&out.join(&name), &write_folder(f))?;
        let c = classify_folder(f);
        r.result(
            &json!({
                "file": name,
                "h_order": f.h().len(),
                "k_size": f.k().len(),
                "faithful": c.faithful.holds,
                "envelope": c.envelope.holds,
                "bruck": c.is_bruck(),
                "bx2p": c.is_bx2p(),
            }),
            true,
        )?;
    }
    r.finish()
}

/// Parses arguments, runs, and maps errors to exit codes.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { crate::exit::INPUT } else { crate::exit::PASS };
            let _ = e.print();
            return code;
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
