//! Tri-state verdicts with certificates, obstructions and gaps.

use crate::abelian::FinAbGroup;
use crate::numtheory::PsCover;
use serde::{Deserialize, Serialize};
use std::fmt;

/// The class of rings a question is asked in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RingClass {
    Finite,
    Tn,
    Any,
}

impl fmt::Display for RingClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RingClass::Finite => "finite",
            RingClass::Tn => "tn",
            RingClass::Any => "any",
        })
    }
}

impl std::str::FromStr for RingClass {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "finite" => Ok(RingClass::Finite),
            "tn" => Ok(RingClass::Tn),
            "any" => Ok(RingClass::Any),
            other => Err(crate::Error::Parse(format!("unknown ring class `{other}`"))),
        }
    }
}

/// The result a verdict rests on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Theorem {
    /// A ring of characteristic zero has `-1` as a unit of order 2.
    CharZeroParity,
    /// Inside `G(eps)`, `T x Z^r` is TN-realisable iff `r >= r(T)`.
    RankThreshold,
    /// A TN ring with finite unit group has `eps <= 2`.
    EpsilonBound,
    /// `Z/4 x Z/2^u` is TN-realisable iff `u <= 3`.
    TwoPowerTn,
    /// With `T_2 = Z/4` and 2-small Sylows at `p = 3 mod 4`, `T` is
    /// TN-realisable iff those Sylows are squares of 1-small groups.
    SquareOfSmall,
    /// Finite cyclic unit groups are exactly the products of coprime
    /// `p^lambda - 1` and `(p - 1) p^k`.
    CyclicCover,
    /// With a lambda-small Sylow `p`, local `(p, lambda)` unit groups are
    /// exactly `F_{p^lambda}^* x P^lambda` with `P` 1-small.
    LocalSmall,
    /// Search over products of local unit groups.
    LocalProduct,
    /// `Z/m x Z^r` over all rings: a cover of `m`, or a TN rank bound.
    CyclicAll,
    /// `Z/4 x Z/2^u` over all rings iff `u <= 3` or `2^u + 1` is prime.
    FermatFamily,
    /// Split into a finite-ring part and a TN part.
    Split,
}

/// Which branch of the rank formula applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Case {
    C1,
    C2,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::C1 => "C1",
            Case::C2 => "C2",
        })
    }
}

/// How one local factor of a finite witness is built.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LocalWitness {
    /// `F_{p^lambda}` itself, `1 + m` trivial.
    Field,
    /// `p` odd: a local ring with `1 + m = root^lambda`.
    Power { root: FinAbGroup },
    /// `p = 2`: a named small ring whose `1 + m` was computed.
    Known { ring: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalFactor {
    pub p: u64,
    pub lambda: u32,
    /// the `p`-part `1 + m`
    pub one_plus_m: FinAbGroup,
    pub witness: LocalWitness,
}

impl LocalFactor {
    /// `F_{p^lambda}^* x (1 + m)`.
    pub fn units(&self) -> FinAbGroup {
        FinAbGroup::cyclic(self.p.pow(self.lambda) - 1).product(&self.one_plus_m)
    }
}

/// How a witness for `Z/4 x Z/2^u` is obtained.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FamilyWitness {
    /// TN-realisable since `u <= 3`.
    Tn,
    /// `Z[i] x F_{p^lambda}` with `p^lambda = 2^u + 1`.
    Finite { p: u64, lambda: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// `Z/m` realised by fields and Galois rings.
    Cover {
        m: u64,
        cover: PsCover,
    },
    /// `r >= r(T)` inside `G(eps)`.
    Rank {
        torsion: FinAbGroup,
        r: u64,
        required: u64,
        case: Case,
    },
    /// `Z/4 x Z/2^u` with `u <= 3`, free rank 0.
    TwoPowerTn {
        u: u32,
    },
    /// Square roots `V_p` with `V_p^2 = T_p` for each `p = 3 mod 4`.
    SquareRoots {
        torsion: FinAbGroup,
        roots: Vec<(u64, FinAbGroup)>,
    },
    /// A product of local rings.
    LocalProduct {
        factors: Vec<LocalFactor>,
    },
    /// `Z/m = Z/d x Z/(m/d)` with `d` from `2^lambda - 1` fields and the
    /// rest TN with `r >= r(Z/(m/d))`.
    MersenneSplit {
        m: u64,
        d: u64,
        r: u64,
        required: u64,
        case: Case,
    },
    FermatFamily {
        u: u32,
        witness: FamilyWitness,
    },
    /// A finite-ring part and a TN part, each certified.
    Split {
        finite: Box<Verdict>,
        tn: Box<Verdict>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Obstruction {
    /// Torsion of odd order in characteristic zero.
    OddTorsion {
        torsion: FinAbGroup,
    },
    RankTooSmall {
        torsion: FinAbGroup,
        r: u64,
        required: u64,
        case: Case,
    },
    EpsilonTooLarge {
        epsilon: u32,
    },
    TwoPowerTn {
        u: u32,
    },
    NotSquare {
        p: u64,
        sylow: FinAbGroup,
    },
    NoCover {
        m: u64,
    },
    /// The Sylow `p` is lambda-small but not a lambda-power.
    NotLambdaPower {
        p: u64,
        lambda: u32,
        sylow: FinAbGroup,
    },
    /// The prime-to-`p` part is not `F_{p^lambda}^*`.
    ResidueMismatch {
        p: u64,
        lambda: u32,
        expected: u64,
        found: FinAbGroup,
    },
    /// Every branch of a finite search fails; one line per failure.
    SearchExhausted {
        trace: Vec<String>,
    },
    /// Neither a cover nor enough rank for any admissible `d`.
    CyclicAll {
        m: u64,
        r: u64,
        required: Option<u64>,
    },
    FermatFamily {
        u: u32,
    },
    SplitExhausted {
        trace: Vec<String>,
    },
}

/// Why no theorem decides the query.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gap {
    pub hypothesis: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Outcome {
    Realisable { certificate: Certificate },
    NotRealisable { obstruction: Obstruction },
    Unknown { gap: Gap },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub query: String,
    pub class: RingClass,
    #[serde(flatten)]
    pub outcome: Outcome,
    pub theorem: Theorem,
    /// set once the certificate or obstruction has been re-checked
    pub checked: bool,
}

impl Verdict {
    pub fn realisable(query: String, class: RingClass, theorem: Theorem, c: Certificate) -> Self {
        Verdict {
            query,
            class,
            outcome: Outcome::Realisable { certificate: c },
            theorem,
            checked: false,
        }
    }

    pub fn not_realisable(
        query: String,
        class: RingClass,
        theorem: Theorem,
        o: Obstruction,
    ) -> Self {
        Verdict {
            query,
            class,
            outcome: Outcome::NotRealisable { obstruction: o },
            theorem,
            checked: false,
        }
    }

    pub fn unknown(
        query: String,
        class: RingClass,
        theorem: Theorem,
        hypothesis: impl Into<String>,
        detail: impl Into<String>,
    ) -> Self {
        let gap = Gap {
            hypothesis: hypothesis.into(),
            detail: detail.into(),
        };
        Verdict {
            query,
            class,
            outcome: Outcome::Unknown { gap },
            theorem,
            checked: false,
        }
    }

    pub fn is_realisable(&self) -> bool {
        matches!(self.outcome, Outcome::Realisable { .. })
    }

    pub fn is_not_realisable(&self) -> bool {
        matches!(self.outcome, Outcome::NotRealisable { .. })
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self.outcome, Outcome::Unknown { .. })
    }

    /// `"realisable"`, `"not_realisable"` or `"unknown"`.
    pub fn label(&self) -> &'static str {
        match self.outcome {
            Outcome::Realisable { .. } => "realisable",
            Outcome::NotRealisable { .. } => "not_realisable",
            Outcome::Unknown { .. } => "unknown",
        }
    }

    /// The certificate, obstruction or gap on one line.
    pub fn reason(&self) -> String {
        match &self.outcome {
            Outcome::Realisable { certificate } => describe_certificate(certificate),
            Outcome::NotRealisable { obstruction } => describe_obstruction(obstruction),
            Outcome::Unknown { gap } => format!("{} ({})", gap.hypothesis, gap.detail),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("verdicts serialise")
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}]: {}", self.query, self.class, self.label())?;
        let kind = match self.outcome {
            Outcome::Realisable { .. } => "certificate",
            Outcome::NotRealisable { .. } => "obstruction",
            Outcome::Unknown { .. } => "gap",
        };
        write!(f, "\n  {kind}: {}", self.reason())
    }
}

fn describe_certificate(c: &Certificate) -> String {
    match c {
        Certificate::Cover { m, cover } => {
            let parts: Vec<String> = cover.factors.iter().map(|f| f.to_string()).collect();
            format!(
                "{m} = {}",
                if parts.is_empty() {
                    "1".into()
                } else {
                    parts.join(" * ")
                }
            )
        }
        Certificate::Rank {
            torsion,
            r,
            required,
            case,
        } => {
            format!("r = {r} >= r({torsion}) = {required}, case {case}")
        }
        Certificate::TwoPowerTn { u } => format!("Z/4Z x Z/{}Z with u = {u} <= 3", 1u64 << u),
        Certificate::SquareRoots { roots, .. } => {
            let parts: Vec<String> = roots
                .iter()
                .map(|(p, v)| format!("T_{p} = ({v})^2"))
                .collect();
            if parts.is_empty() {
                "no Sylow at a prime 3 mod 4".into()
            } else {
                parts.join(", ")
            }
        }
        Certificate::LocalProduct { factors } => {
            let parts: Vec<String> = factors
                .iter()
                .map(|f| format!("F_{}^{}* x ({})", f.p, f.lambda, f.one_plus_m))
                .collect();
            parts.join(" x ")
        }
        Certificate::MersenneSplit {
            m,
            d,
            r,
            required,
            case,
        } => {
            format!(
                "{m} = {d} * {}, r = {r} >= r(Z/{}Z) = {required}, case {case}",
                m / d,
                m / d
            )
        }
        Certificate::FermatFamily { u, witness } => match witness {
            FamilyWitness::Tn => format!("u = {u} <= 3"),
            FamilyWitness::Finite { p, lambda } => {
                format!("Z[i] x F_{p}^{lambda}, {p}^{lambda} = 2^{u} + 1")
            }
        },
        Certificate::Split { finite, tn } => {
            format!("finite part {} and TN part {}", finite.query, tn.query)
        }
    }
}

fn describe_obstruction(o: &Obstruction) -> String {
    match o {
        Obstruction::OddTorsion { torsion } => {
            format!("torsion {torsion} has odd order, but -1 has order 2 in characteristic zero")
        }
        Obstruction::RankTooSmall {
            torsion,
            r,
            required,
            case,
        } => {
            format!("r = {r} < r({torsion}) = {required}, case {case}")
        }
        Obstruction::EpsilonTooLarge { epsilon } => {
            format!("finite unit group needs eps <= 2, found {epsilon}")
        }
        Obstruction::TwoPowerTn { u } => format!("u = {u} > 3"),
        Obstruction::NotSquare { p, sylow } => format!("T_{p} = {sylow} is not a square"),
        Obstruction::NoCover { m } => format!("{m} has no cover"),
        Obstruction::NotLambdaPower { p, lambda, sylow } => {
            format!("Sylow {p}-subgroup {sylow} is {lambda}-small but not a {lambda}-power")
        }
        Obstruction::ResidueMismatch {
            p,
            lambda,
            expected,
            found,
        } => {
            format!("prime-to-{p} part {found} is not Z/{expected}Z (lambda = {lambda})")
        }
        Obstruction::SearchExhausted { trace } | Obstruction::SplitExhausted { trace } => {
            trace.join("; ")
        }
        Obstruction::CyclicAll { m, r, required } => match required {
            Some(q) => format!("{m} has no cover and r = {r} < {q}"),
            None => format!("{m} has no cover and is odd"),
        },
        Obstruction::FermatFamily { u } => format!("u = {u} > 3 and 2^{u} + 1 is not prime"),
    }
}
