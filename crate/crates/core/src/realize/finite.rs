//! Realisability by finite rings, as products of local rings.
//!
//! A finite ring is a product of local rings `A_i` of `(p_i, lambda_i)`-type
//! and `A_i^* = Z/(p_i^lambda_i - 1) x (1 + m_i)`, with `1 + m_i` a
//! `p_i`-group. The search peels off one local factor at a time, always the
//! one owning the largest primary cyclic component `Z/q^e` of what is left:
//! either `q = p_i` and `Z/q^e` lies in `1 + m_i`, or `q^e` exactly divides
//! `p_i^lambda_i - 1`.

use super::{Certificate, LocalFactor, LocalWitness, Obstruction, RingClass, Theorem, Verdict};
use crate::abelian::FinAbGroup;
use crate::finring::two_local_witness;
use crate::numtheory::{divisors, pearson_schneider_covers, prime_power, CoverFactor, PsCover};
use num_traits::ToPrimitive;
use std::collections::HashMap;

/// Nodes visited before the search gives up with an unknown verdict.
pub const NODE_CAP: usize = 20_000;

/// Trace lines kept in an obstruction.
const TRACE_CAP: usize = 64;

/// Local factors realising a cyclic group from a cover.
pub fn cover_factors(cover: &PsCover) -> Vec<LocalFactor> {
    cover
        .factors
        .iter()
        .map(|f| match *f {
            CoverFactor::PowerMinusOne { p, lambda } => LocalFactor {
                p,
                lambda,
                one_plus_m: FinAbGroup::trivial(),
                witness: LocalWitness::Field,
            },
            CoverFactor::PMinusOneTimesPower { p, k } => {
                let root = FinAbGroup::cyclic(p.pow(k));
                LocalFactor {
                    p,
                    lambda: 1,
                    one_plus_m: root.clone(),
                    witness: LocalWitness::Power { root },
                }
            }
        })
        .collect()
}

enum Status {
    Yes(LocalWitness),
    No(String),
    Open(String),
}

/// Whether `Z/(p^lambda - 1) x h` is the unit group of a local ring.
fn local_status(p: u64, lambda: u32, h: &FinAbGroup) -> Status {
    if h.is_trivial() {
        return Status::Yes(LocalWitness::Field);
    }
    // m has a filtration by F_{p^lambda}-spaces, so |1 + m| = |m| is a power of p^lambda
    let log: u32 = h.factors().iter().map(|&(_, e, m)| e * m).sum();
    if log % lambda != 0 {
        return Status::No(format!(
            "({p},{lambda}): |1 + m| = {p}^{log} is not a power of {p}^{lambda}"
        ));
    }
    if p == 2 {
        return match two_local_witness(lambda, h) {
            Some(ring) => Status::Yes(LocalWitness::Known { ring }),
            None => Status::Open(format!("(2,{lambda}): no catalogued ring has 1 + m = {h}")),
        };
    }
    if !h.is_lambda_small(p, lambda).expect("p-group") {
        return Status::Open(format!("({p},{lambda}): 1 + m = {h} is not {lambda}-small"));
    }
    match h.lambda_power_decompose(lambda) {
        Some(root) => Status::Yes(LocalWitness::Power { root }),
        None => Status::No(format!(
            "({p},{lambda}): 1 + m = {h} is {lambda}-small but not a {lambda}-power"
        )),
    }
}

/// Every direct factor of a `p`-group, as sub-multisets of its components.
fn direct_factors(g: &FinAbGroup) -> Vec<FinAbGroup> {
    let mut out = vec![FinAbGroup::trivial()];
    for &(p, e, m) in g.factors() {
        out = out
            .iter()
            .flat_map(|h| {
                (0..=m).map(move |k| h.product(&FinAbGroup::elementary(p, e, k).unwrap()))
            })
            .collect();
    }
    out
}

fn valuation(mut d: u64, q: u64) -> u32 {
    let mut v = 0;
    while d % q == 0 {
        d /= q;
        v += 1;
    }
    v
}

#[derive(Clone)]
enum Branch {
    Yes(Vec<LocalFactor>),
    No,
    Open(String),
}

#[derive(Default)]
struct Search {
    memo: HashMap<FinAbGroup, Branch>,
    trace: Vec<String>,
    nodes: usize,
}

impl Search {
    fn note(&mut self, line: String) {
        if self.trace.len() < TRACE_CAP && !self.trace.contains(&line) {
            self.trace.push(line);
        }
    }

    fn node(&mut self, r: &FinAbGroup) -> Branch {
        if r.is_trivial() {
            return Branch::Yes(Vec::new());
        }
        if let Some(b) = self.memo.get(r) {
            return b.clone();
        }
        self.nodes += 1;
        let out = if self.nodes > NODE_CAP {
            Branch::Open(format!("search budget of {NODE_CAP} nodes exhausted"))
        } else if r.is_cyclic() {
            self.cyclic(r)
        } else {
            self.split(r)
        };
        self.memo.insert(r.clone(), out.clone());
        out
    }

    fn cyclic(&mut self, r: &FinAbGroup) -> Branch {
        let Some(m) = r.order().to_u64() else {
            return Branch::Open(format!("|{r}| exceeds 64 bits"));
        };
        match pearson_schneider_covers(m).into_iter().next() {
            Some(cover) => Branch::Yes(cover_factors(&cover)),
            None => {
                self.note(format!("{r}: {m} has no cover"));
                Branch::No
            }
        }
    }

    fn split(&mut self, r: &FinAbGroup) -> Branch {
        let &(q, e, _) = r.factors().last().expect("nontrivial");
        let z = FinAbGroup::cyclic(q.pow(e));
        let Some(exp) = r.exponent().to_u64() else {
            return Branch::Open(format!("exponent of {r} exceeds 64 bits"));
        };
        let mut open: Option<String> = None;
        let mut viable = false;
        // Z/(p^lambda - 1) is a direct factor, so p^lambda - 1 divides the
        // exponent and lambda <= log2(1 + exp)
        for d in divisors(exp) {
            let Some((p, lambda)) = prime_power(d + 1) else {
                continue;
            };
            let Some(rest) = r.cancel(&FinAbGroup::cyclic(d)) else {
                continue;
            };
            if p != q && valuation(d, q) != e {
                continue;
            }
            for h in direct_factors(&rest.sylow(p)) {
                if (p == q && h.cancel(&z).is_none()) || (d == 1 && h.is_trivial()) {
                    continue;
                }
                viable = true;
                let status = local_status(p, lambda, &h);
                let witness = match status {
                    Status::No(line) => {
                        self.note(line);
                        continue;
                    }
                    Status::Open(line) => {
                        open.get_or_insert(line);
                        None
                    }
                    Status::Yes(w) => Some(w),
                };
                let left = rest.cancel(&h).expect("h is a factor of rest");
                match (self.node(&left), witness) {
                    (Branch::No, _) => {}
                    (Branch::Open(line), _) => {
                        open.get_or_insert(line);
                    }
                    (Branch::Yes(_), None) => {}
                    (Branch::Yes(mut fs), Some(witness)) => {
                        fs.push(LocalFactor {
                            p,
                            lambda,
                            one_plus_m: h,
                            witness,
                        });
                        return Branch::Yes(fs);
                    }
                }
            }
        }
        if !viable {
            self.note(format!("{r}: no local factor accounts for {z}"));
        }
        match open {
            Some(line) => Branch::Open(line),
            None => Branch::No,
        }
    }
}

pub fn decide_finite(g: &FinAbGroup) -> Verdict {
    let query = g.to_string();
    let fin = RingClass::Finite;
    if g.is_cyclic() {
        let Some(m) = g.order().to_u64() else {
            return Verdict::unknown(
                query,
                fin,
                Theorem::CyclicCover,
                "|G| < 2^64",
                "order exceeds 64 bits",
            );
        };
        return match pearson_schneider_covers(m).into_iter().next() {
            Some(cover) => Verdict::realisable(
                query,
                fin,
                Theorem::CyclicCover,
                Certificate::Cover { m, cover },
            ),
            None => Verdict::not_realisable(
                query,
                fin,
                Theorem::CyclicCover,
                Obstruction::NoCover { m },
            ),
        };
    }
    let mut search = Search::default();
    match search.node(g) {
        Branch::Yes(mut factors) => {
            factors.sort_by_key(|f| (f.p, f.lambda));
            let c = Certificate::LocalProduct { factors };
            Verdict::realisable(query, fin, Theorem::LocalProduct, c)
        }
        Branch::No => {
            let o = Obstruction::SearchExhausted {
                trace: search.trace,
            };
            Verdict::not_realisable(query, fin, Theorem::LocalProduct, o)
        }
        Branch::Open(detail) => Verdict::unknown(
            query,
            fin,
            Theorem::LocalProduct,
            "every local factor lambda-small or catalogued",
            detail,
        ),
    }
}
