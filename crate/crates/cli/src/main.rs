mod report;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fuchs_core::finring::corpus;
use fuchs_core::presentation::RingPresentation;
use fuchs_core::radical::{
    check_byott, check_small_theorem, enumerate_radical_rings_par, Violation, DEFAULT_RADICAL_CAP,
};
use fuchs_core::realize::{
    checked, decide_any, decide_finite, decide_tn, g_value, ge_classify, r_value,
};
use fuchs_core::tnlab::{example, EXAMPLES};
use fuchs_core::{
    cap_from_env, Error, FgAbGroup, FinAbGroup, FinCommRing, TnModel, DEFAULT_RING_CAP,
};
use rayon::prelude::*;
use report::*;
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const REALISABLE: u8 = 0;
const NOT_REALISABLE: u8 = 1;
const UNKNOWN: u8 = 2;
const USAGE: u8 = 3;

/// Decide whether T x Z^r is the unit group of a ring, and run the oracles
/// behind the decisions.
#[derive(Debug, Parser)]
#[command(name = "fuchs", version)]
struct Cli {
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for `oracle` and `table`
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide realisability of GROUP in a class of rings
    Decide {
        #[arg(long, value_enum, default_value_t = Class::Any)]
        class: Class,
        /// e.g. "Z/4Z x Z/16Z x Z^2"
        group: String,
    },
    /// Print g(T), r(T) and the case tag of a finite group
    Rank { group: String },
    #[command(subcommand)]
    Oracle(Oracle),
    /// Torsion units and the exact sequence of a TN model file
    Model(ModelArgs),
    /// Run a shipped model
    Example {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(EXAMPLES.map(|(n, _)| n)))]
        name: String,
    },
    #[command(subcommand)]
    Table(Table),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Class {
    Finite,
    Tn,
    Any,
}

#[derive(Debug, Subcommand)]
enum Oracle {
    /// Compare (N,+) with (N,o) over all radical rings of order P^K
    Radical {
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        exp: u32,
    },
    /// Check A* = F* x (1 + m) on each local factor of a ring
    Finring {
        #[arg(required_unless_present = "corpus", conflicts_with = "corpus")]
        file: Option<PathBuf>,
        #[arg(long)]
        corpus: bool,
    },
}

#[derive(Debug, Args)]
struct ModelArgs {
    file: PathBuf,
    #[arg(long)]
    torsion_units: bool,
    #[arg(long)]
    sequence: bool,
}

#[derive(Debug, Subcommand)]
enum Table {
    /// Verdicts for Z/nZ, n = 1..=N, in each class
    Cyclic {
        #[arg(long, value_name = "N")]
        max: u64,
    },
}

/// A failure, with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_)
            | Error::InvalidRing(_)
            | Error::InvalidModel(_)
            | Error::NotPrime(_)
            | Error::WrongOrder(_) => USAGE,
            _ => UNKNOWN,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: USAGE,
        message: message.into(),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn emit<T: Serialize + std::fmt::Display>(out: &T, json: bool) {
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(out).expect("outputs serialise")
        );
    } else {
        print!("{out}");
    }
}

fn decide(class: Class, group: &str, json: bool) -> Result<u8, Failure> {
    let g: FgAbGroup = group.parse()?;
    let v = match class {
        Class::Finite if g.free_rank > 0 => {
            return Err(usage(
                "finite rings have finite unit groups; drop the Z^r part",
            ))
        }
        Class::Finite => decide_finite(&g.torsion),
        Class::Tn => decide_tn(&g),
        Class::Any => decide_any(&g),
    };
    let code = match () {
        _ if v.is_realisable() => REALISABLE,
        _ if v.is_not_realisable() => NOT_REALISABLE,
        _ => UNKNOWN,
    };
    let v = if v.is_unknown() {
        v
    } else {
        match checked(v.clone()) {
            Ok(v) => v,
            Err(Error::UncheckableAtScale(why)) => {
                eprintln!("warning: certificate not re-checked: {why}");
                v
            }
            Err(e) => {
                eprintln!("error: {e}");
                return Ok(UNKNOWN);
            }
        }
    };
    if json {
        println!("{}", v.to_json());
    } else {
        println!("{v}\n  checked: {}", v.checked);
    }
    Ok(code)
}

fn rank(group: &str, json: bool) -> Result<u8, Failure> {
    let t: FinAbGroup = group.parse()?;
    let mut report = RankReport {
        query: t.to_string(),
        g: None,
        r: None,
        case: None,
        epsilon: None,
        gap: None,
    };
    match g_value(&t) {
        Ok(g) => report.g = Some(g),
        Err(e) => report.gap = Some(e.to_string()),
    }
    match ge_classify(&t) {
        Ok(class) => {
            report.epsilon = Some(class.epsilon);
            let (r, case) = r_value(&class)?;
            report.r = Some(r);
            report.case = Some(case);
        }
        Err(e) => {
            report
                .gap
                .get_or_insert_with(|| format!("T is outside G(eps): {e}"));
        }
    }
    let code = if report.r.is_some() {
        REALISABLE
    } else {
        UNKNOWN
    };
    emit(&Report::Rank(report), json);
    Ok(code)
}

fn mismatch(v: Violation) -> Mismatch {
    Mismatch {
        ring: RingPresentation::from_radical(&v.ring),
        additive: v.additive,
        adjoint: v.adjoint,
        prufer_rank: v.prufer_rank,
    }
}

fn oracle_radical(p: u64, k: u32, json: bool) -> Result<u8, Failure> {
    let cap = cap_from_env(DEFAULT_RADICAL_CAP);
    let report = check_small_theorem(p, k, cap)?;
    let byott = if p == 2 && k >= 3 {
        let rings = enumerate_radical_rings_par(p, k, cap)?;
        let mut violations = Vec::new();
        for ring in &rings {
            if !check_byott(ring)? {
                violations.push(RingPresentation::from_radical(ring));
            }
        }
        Some(ByottReport {
            checked: rings.len(),
            violations,
        })
    } else {
        None
    };
    let pass = report.holds() && byott.as_ref().map_or(true, |b| b.violations.is_empty());
    let out = RadicalReport {
        p,
        k,
        classes: report.classes,
        small_classes: report.small_classes,
        violations: report.violations.into_iter().map(mismatch).collect(),
        mismatches: report.mismatches.into_iter().map(mismatch).collect(),
        byott,
        pass,
    };
    emit(&Report::OracleRadical(out), json);
    Ok(if pass { REALISABLE } else { NOT_REALISABLE })
}

fn ring_row(name: String, ring: &FinCommRing, cap: u128) -> Result<RingRow, Error> {
    ring.check_cap(cap)?;
    let unit_group = ring.unit_group()?;
    let factors = ring.local_factors()?;
    let mut product = FinAbGroup::trivial();
    let mut formula_holds = true;
    for f in &factors {
        product = product.product(&f.unit_group()?);
        formula_holds &= f.verify_local_formula()?;
    }
    let local_type = match factors.as_slice() {
        [only] => {
            let d = only.local_data()?;
            Some((d.p, d.lambda))
        }
        _ => None,
    };
    Ok(RingRow {
        name,
        order: ring.size(),
        unit_group: unit_group.clone(),
        local_type,
        local_factors: factors.len(),
        formula_holds: formula_holds && product == unit_group,
    })
}

fn oracle_finring(file: Option<&Path>, json: bool) -> Result<u8, Failure> {
    let cap = cap_from_env(DEFAULT_RING_CAP);
    let rings: Vec<(String, FinCommRing)> = match file {
        Some(path) => {
            let pres = RingPresentation::parse(&read(path)?)?;
            let name = pres
                .name
                .clone()
                .unwrap_or_else(|| path.display().to_string());
            vec![(name, pres.to_ring()?)]
        }
        None => corpus()?.into_iter().map(|e| (e.name, e.ring)).collect(),
    };
    let rows = rings
        .into_par_iter()
        .map(|(name, ring)| ring_row(name, &ring, cap))
        .collect::<Result<Vec<_>, Error>>()?;
    let pass = rows.iter().all(|r| r.formula_holds);
    emit(
        &Report::OracleFinring(FinringReport { rings: rows, pass }),
        json,
    );
    Ok(if pass { REALISABLE } else { NOT_REALISABLE })
}

fn model_report(m: &TnModel, units: bool, sequence: bool) -> Result<ModelReport, Error> {
    let torsion_units = if units {
        Some(m.torsion_units()?)
    } else {
        None
    };
    let sequence = if sequence {
        Some(Sequence {
            nil_torsion: m.nil_torsion_additive(),
            one_plus_n: m.adjoint_of_nil_torsion()?,
            base_torsion_units: m.base_torsion_group()?,
            torsion_units: m.torsion_units()?,
            splits: m.sequence_splits()?,
        })
    } else {
        None
    };
    Ok(ModelReport {
        name: m.name().map(String::from),
        conductor: m.conductor(),
        torsion_units,
        sequence,
    })
}

fn model(args: &ModelArgs, json: bool) -> Result<u8, Failure> {
    let m = TnModel::parse(&read(&args.file)?)?;
    let both = !args.torsion_units && !args.sequence;
    let out = model_report(&m, args.torsion_units || both, args.sequence || both)?;
    emit(&Report::Model(out), json);
    Ok(REALISABLE)
}

fn run_example(name: &str, json: bool) -> Result<u8, Failure> {
    let m = example(name).ok_or_else(|| usage(format!("unknown example `{name}`")))??;
    emit(&Report::Model(model_report(&m, true, true)?), json);
    Ok(REALISABLE)
}

fn table_cyclic(max: u64, json: bool) -> Result<u8, Failure> {
    let rows = (1..=max)
        .into_par_iter()
        .map(|n| {
            let t = FinAbGroup::cyclic(n);
            let g = FgAbGroup::finite(t.clone());
            TableRow {
                n,
                tn: decide_tn(&g).label(),
                finite: decide_finite(&t).label(),
                any: decide_any(&g).label(),
            }
        })
        .collect();
    let out = TableReport {
        table: "cyclic",
        max,
        rows,
    };
    emit(&Report::Table(out), json);
    Ok(REALISABLE)
}

fn run(cli: Cli) -> Result<u8, Failure> {
    if let Some(n) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| usage(e.to_string()))?;
    }
    let json = cli.json;
    match &cli.command {
        Command::Decide { class, group } => decide(*class, group, json),
        Command::Rank { group } => rank(group, json),
        Command::Oracle(Oracle::Radical { prime, exp }) => oracle_radical(*prime, *exp, json),
        Command::Oracle(Oracle::Finring { file, .. }) => oracle_finring(file.as_deref(), json),
        Command::Model(args) => model(args, json),
        Command::Example { name } => run_example(name, json),
        Command::Table(Table::Cyclic { max }) => table_cyclic(*max, json),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(USAGE);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
