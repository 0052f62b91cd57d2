//! Structured outputs of the non-decision subcommands.

use fuchs_core::presentation::RingPresentation;
use fuchs_core::realize::Case;
use fuchs_core::FinAbGroup;
use serde::Serialize;
use std::fmt;

#[derive(Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Report {
    Rank(RankReport),
    OracleRadical(RadicalReport),
    OracleFinring(FinringReport),
    Model(ModelReport),
    Table(TableReport),
}

#[derive(Debug, Serialize)]
pub struct RankReport {
    pub query: String,
    pub g: Option<u64>,
    pub r: Option<u64>,
    pub case: Option<Case>,
    pub epsilon: Option<u32>,
    /// why `g` or `r` is not defined
    pub gap: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct Mismatch {
    pub ring: RingPresentation,
    pub additive: FinAbGroup,
    pub adjoint: FinAbGroup,
    pub prufer_rank: u32,
}

#[derive(Debug, Serialize)]
pub struct ByottReport {
    pub checked: usize,
    pub violations: Vec<RingPresentation>,
}

#[derive(Debug, Serialize)]
pub struct RadicalReport {
    pub p: u64,
    pub k: u32,
    pub classes: usize,
    pub small_classes: usize,
    pub violations: Vec<Mismatch>,
    pub mismatches: Vec<Mismatch>,
    pub byott: Option<ByottReport>,
    pub pass: bool,
}

#[derive(Debug, Serialize)]
pub struct RingRow {
    pub name: String,
    pub order: u128,
    pub unit_group: FinAbGroup,
    /// `(p, lambda)` when the ring is local
    pub local_type: Option<(u64, u32)>,
    pub local_factors: usize,
    pub formula_holds: bool,
}

#[derive(Debug, Serialize)]
pub struct FinringReport {
    pub rings: Vec<RingRow>,
    pub pass: bool,
}

#[derive(Debug, Serialize)]
pub struct Sequence {
    pub nil_torsion: FinAbGroup,
    pub one_plus_n: FinAbGroup,
    pub base_torsion_units: FinAbGroup,
    pub torsion_units: FinAbGroup,
    pub splits: bool,
}

#[derive(Debug, Serialize)]
pub struct ModelReport {
    pub name: Option<String>,
    pub conductor: u64,
    pub torsion_units: Option<FinAbGroup>,
    pub sequence: Option<Sequence>,
}

#[derive(Debug, Serialize)]
pub struct TableRow {
    pub n: u64,
    pub tn: &'static str,
    pub finite: &'static str,
    pub any: &'static str,
}

#[derive(Debug, Serialize)]
pub struct TableReport {
    pub table: &'static str,
    pub max: u64,
    pub rows: Vec<TableRow>,
}

fn opt<T: fmt::Display>(v: &Option<T>) -> String {
    v.as_ref().map_or("undefined".into(), |x| x.to_string())
}

fn mismatch_line(f: &mut fmt::Formatter<'_>, m: &Mismatch) -> fmt::Result {
    writeln!(
        f,
        "  (N,+) = {}  (N,o) = {}  Prank {}  mult {:?}",
        m.additive, m.adjoint, m.prufer_rank, m.ring.mult
    )
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Report::Rank(r) => {
                writeln!(f, "T = {}", r.query)?;
                writeln!(f, "g = {}", opt(&r.g))?;
                writeln!(f, "r = {}", opt(&r.r))?;
                writeln!(
                    f,
                    "case = {}",
                    r.case.map_or("undefined".into(), |c| format!("{c:?}"))
                )?;
                if let Some(gap) = &r.gap {
                    writeln!(f, "gap: {gap}")?;
                }
                Ok(())
            }
            Report::OracleRadical(r) => {
                writeln!(
                    f,
                    "order {}^{}: {} classes, {} with Prank < {}",
                    r.p,
                    r.k,
                    r.classes,
                    r.small_classes,
                    r.p - 1
                )?;
                writeln!(f, "classes with (N,+) != (N,o): {}", r.mismatches.len())?;
                for m in &r.mismatches {
                    mismatch_line(f, m)?;
                }
                writeln!(
                    f,
                    "small classes with (N,+) != (N,o): {}",
                    r.violations.len()
                )?;
                for m in &r.violations {
                    mismatch_line(f, m)?;
                }
                if let Some(b) = &r.byott {
                    writeln!(
                        f,
                        "cyclic (N,o) with non-cyclic (N,+): {} of {} classes",
                        b.violations.len(),
                        b.checked
                    )?;
                }
                writeln!(f, "{}", if r.pass { "pass" } else { "fail" })
            }
            Report::OracleFinring(r) => {
                for row in &r.rings {
                    let local = row
                        .local_type
                        .map_or(format!("{} local factors", row.local_factors), |(p, l)| {
                            format!("local ({p},{l})")
                        });
                    writeln!(
                        f,
                        "{}: order {}, {}, A* = {}, formula {}",
                        row.name,
                        row.order,
                        local,
                        row.unit_group,
                        if row.formula_holds { "holds" } else { "FAILS" }
                    )?;
                }
                writeln!(f, "{}", if r.pass { "pass" } else { "fail" })
            }
            Report::Model(m) => {
                writeln!(f, "model {} over Z[zeta_{}]", opt(&m.name), m.conductor)?;
                if let Some(t) = &m.torsion_units {
                    writeln!(f, "A*_tors = {t}")?;
                }
                if let Some(s) = &m.sequence {
                    writeln!(f, "N_tors = {}", s.nil_torsion)?;
                    writeln!(f, "1 + N_tors = {}", s.one_plus_n)?;
                    writeln!(f, "B*_tors = {}", s.base_torsion_units)?;
                    writeln!(f, "A*_tors = {}", s.torsion_units)?;
                    writeln!(f, "sequence splits: {}", s.splits)?;
                }
                Ok(())
            }
            Report::Table(t) => {
                writeln!(f, "{:>6}  {:<15} {:<15} {:<15}", "n", "tn", "finite", "any")?;
                for row in &t.rows {
                    writeln!(
                        f,
                        "{:>6}  {:<15} {:<15} {:<15}",
                        row.n, row.tn, row.finite, row.any
                    )?;
                }
                Ok(())
            }
        }
    }
}
