//! Golden corpus of small unital rings, checked against brute-force oracles.
//!
//! Set `FUCHS_REGEN_CORPUS=1` to rewrite the golden presentations.

use fuchs_core::abelian::FinAbGroup;
use fuchs_core::finring::{corpus, FinCommRing, Locality};
use fuchs_core::numtheory::factorize;
use fuchs_core::presentation::RingPresentation;
use std::path::PathBuf;

fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data/corpus")
}

/// Units by inverse search over all pairs.
fn brute_units(r: &FinCommRing) -> Vec<Vec<u64>> {
    let all: Vec<Vec<u64>> = r.elements().collect();
    let one = r.one();
    all.iter()
        .filter(|x| all.iter().any(|y| r.mul(x, y) == one))
        .cloned()
        .collect()
}

/// Group structure from the counts `|G[p^j]|`, computed by powering.
fn brute_unit_group(r: &FinCommRing) -> FinAbGroup {
    let units = brute_units(r);
    let n = units.len() as u64;
    let one = r.one();
    let mut factors = Vec::new();
    for (p, e) in factorize(n).0 {
        let mut logs = vec![0u32];
        for j in 1..=e {
            let q = p.pow(j);
            let count = units.iter().filter(|u| r.pow(u, q) == one).count() as u64;
            logs.push(count.ilog(p));
        }
        let at_least: Vec<u32> = (1..logs.len()).map(|j| logs[j] - logs[j - 1]).collect();
        for j in 0..at_least.len() {
            let next = at_least.get(j + 1).copied().unwrap_or(0);
            factors.push((p, j as u32 + 1, at_least[j] - next));
        }
    }
    FinAbGroup::new(factors).unwrap()
}

#[test]
fn golden_presentations() {
    let dir = data_dir();
    let regen = std::env::var_os("FUCHS_REGEN_CORPUS").is_some();
    if regen {
        std::fs::create_dir_all(&dir).unwrap();
    }
    for e in corpus().unwrap() {
        let text = RingPresentation::from_ring(&e.ring)
            .with_name(&e.name)
            .to_text();
        let path = dir.join(format!("{}.toml", e.name));
        if regen {
            std::fs::write(&path, &text).unwrap();
            continue;
        }
        let golden =
            std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
        assert_eq!(golden, text, "{}", e.name);
        assert_eq!(
            RingPresentation::parse(&golden).unwrap().to_ring().unwrap(),
            e.ring
        );
    }
}

#[test]
fn unit_groups_match_brute_force() {
    for e in corpus().unwrap() {
        let g = e.ring.unit_group().unwrap();
        assert_eq!(
            g.order_u128().unwrap(),
            brute_units(&e.ring).len() as u128,
            "{}",
            e.name
        );
        assert_eq!(g, brute_unit_group(&e.ring), "{}", e.name);
    }
}

#[test]
fn local_factors_satisfy_formula_and_rebuild_the_ring() {
    for e in corpus().unwrap() {
        let factors = e.ring.local_factors().unwrap();
        let mut size = 1u128;
        let mut units = FinAbGroup::trivial();
        for f in &factors {
            assert!(f.verify_local_formula().unwrap(), "{}", e.name);
            size *= f.size();
            units = units.product(&f.unit_group().unwrap());
        }
        assert_eq!(size, e.ring.size(), "{}", e.name);
        assert_eq!(units, e.ring.unit_group().unwrap(), "{}", e.name);
    }
}

#[test]
fn idempotent_split_is_a_product() {
    for e in corpus().unwrap() {
        if let Locality::Split { idempotent } = e.ring.localize().unwrap() {
            let (a, b) = e.ring.split_at(&idempotent).unwrap();
            assert_eq!(a.size() * b.size(), e.ring.size(), "{}", e.name);
            let prod = a.product(&b).unwrap();
            assert_eq!(
                prod.unit_group().unwrap(),
                e.ring.unit_group().unwrap(),
                "{}",
                e.name
            );
        }
    }
}

#[test]
fn exact_sequence_holds_for_every_ideal_in_m() {
    for e in corpus().unwrap() {
        if !matches!(e.ring.localize().unwrap(), Locality::Local(_)) {
            continue;
        }
        for ideal in e.ring.ideals_in_maximal().unwrap() {
            assert!(e.ring.check_exact_sequence(&ideal).unwrap(), "{}", e.name);
        }
    }
}
