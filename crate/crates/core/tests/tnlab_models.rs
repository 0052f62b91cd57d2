//! The shipped TN models, rebuilt by hand from their defining relations.
//!
//! Set `FUCHS_REGEN_MODELS=1` to rewrite the `.tn` files.

use fuchs_core::abelian::FinAbGroup;
use fuchs_core::tnlab::{example, ModelElem, TnModel, EXAMPLES};
use std::path::PathBuf;

fn grp(s: &str) -> FinAbGroup {
    s.parse().unwrap()
}

/// Base `Z[i]`; `free` lists `(basis index, coefficient in Z)` pairs.
fn elem(f: usize, t: usize, free: &[(usize, i64)], tors: &[usize]) -> ModelElem {
    let mut e = ModelElem {
        free: vec![vec![0, 0]; f],
        tors: vec![0; t],
    };
    for &(i, c) in free {
        e.free[i][0] += c;
    }
    for &j in tors {
        e.tors[j] = (e.tors[j] + 1) % 2;
    }
    e
}

/// `Z[i][x, y]/(x^2 - y - 1, (1 + i)y, y^3)` with free basis `1, x` and
/// torsion basis `y, xy, y^2, xy^2`, each of order 2. Since `iy = -y = y`,
/// `zeta` acts trivially on the torsion.
fn model_7_1() -> TnModel {
    let (f, t) = (2, 4);
    let e = |free: &[(usize, i64)], tors: &[usize]| elem(f, t, free, tors);
    let (y, xy, y2, xy2) = (0, 1, 2, 3);
    // symbols: 0 = 1, 1 = x, then 2 + torsion index
    let product = |a: usize, b: usize| -> ModelElem {
        let (a, b) = (a.min(b), a.max(b));
        match (a, b) {
            (0, b) if b < 2 => e(&[(b, 1)], &[]),
            (0, b) => e(&[], &[b - 2]),
            (1, 1) => e(&[(0, 1)], &[y]),
            (1, 2) => e(&[], &[xy]),
            (1, 3) => e(&[], &[y, y2]),
            (1, 4) => e(&[], &[xy2]),
            (1, 5) => e(&[], &[y2]),
            (2, 2) => e(&[], &[y2]),
            (2, 3) => e(&[], &[xy2]),
            (3, 3) => e(&[], &[y2]),
            _ => e(&[], &[]),
        }
    };
    let mult = (0..f + t)
        .map(|a| (0..f + t).map(|b| product(a, b)).collect())
        .collect();
    TnModel::new(
        Some("Z[i][x,y]/(x^2-y-1, (1+i)y, y^3)".into()),
        4,
        vec!["1".into(), "x".into()],
        vec!["y".into(), "xy".into(), "y^2".into(), "xy^2".into()],
        vec![2; 4],
        (0..t)
            .map(|j| (0..t).map(|l| u64::from(j == l)).collect())
            .collect(),
        mult,
    )
    .unwrap()
}

/// `Z[i][x, y]/(y^2, (1 + i)y, x^v - y - 1, y(x - 1))` with free basis
/// `1, x, .., x^{v-1}` and torsion basis `y` of order 2; `xy = y`, and
/// `x^a x^b = x^{a+b-v} + y` once `a + b >= v`.
fn model_7_2(v: usize) -> TnModel {
    let (f, t) = (v, 1);
    let e = |free: &[(usize, i64)], tors: &[usize]| elem(f, t, free, tors);
    let product = |a: usize, b: usize| -> ModelElem {
        match (a < v, b < v) {
            (true, true) if a + b < v => e(&[(a + b, 1)], &[]),
            (true, true) => e(&[(a + b - v, 1)], &[0]),
            (true, false) | (false, true) => e(&[], &[0]),
            (false, false) => e(&[], &[]),
        }
    };
    let mult = (0..f + t)
        .map(|a| (0..f + t).map(|b| product(a, b)).collect())
        .collect();
    let free = (0..v)
        .map(|a| match a {
            0 => "1".into(),
            1 => "x".into(),
            _ => format!("x^{a}"),
        })
        .collect();
    TnModel::new(
        Some(format!("Z[i][x,y]/(y^2, (1+i)y, x^{v}-y-1, y(x-1))")),
        4,
        free,
        vec!["y".into()],
        vec![2],
        vec![vec![1]],
        mult,
    )
    .unwrap()
}

fn built(name: &str) -> TnModel {
    match name {
        "paper-7-1" => model_7_1(),
        "paper-7-2-v2" => model_7_2(2),
        "paper-7-2-v4" => model_7_2(4),
        _ => unreachable!(),
    }
}

#[test]
fn shipped_files_match_hand_built_models() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples");
    let regen = std::env::var_os("FUCHS_REGEN_MODELS").is_some();
    for (name, shipped) in EXAMPLES {
        let m = built(name);
        if regen {
            std::fs::write(dir.join(format!("{name}.tn")), m.to_text()).unwrap();
            continue;
        }
        assert_eq!(shipped, m.to_text(), "{name}");
        assert_eq!(example(name).unwrap().unwrap(), m);
    }
}

#[test]
fn example_7_1() {
    let m = model_7_1();
    assert_eq!(m.nil_torsion_additive(), grp("(Z/2Z)^4"));
    let rings = m.nil_torsion().unwrap();
    assert_eq!(rings.len(), 1);
    assert_eq!(rings[0].additive_group(), grp("(Z/2Z)^4"));
    assert_eq!(
        m.adjoint_of_nil_torsion().unwrap(),
        grp("Z/2Z x Z/2Z x Z/4Z")
    );
    assert_eq!(rings[0].adjoint_group().unwrap(), grp("Z/2Z x Z/2Z x Z/4Z"));
    assert_eq!(m.base_torsion_group().unwrap(), grp("Z/2Z x Z/4Z"));
    assert_eq!(m.torsion_units().unwrap(), grp("Z/2Z x Z/2Z x Z/4Z x Z/8Z"));
    assert!(!m.sequence_splits().unwrap());
}

#[test]
fn example_7_2() {
    for (v, units) in [(2, "Z/4Z x Z/4Z"), (4, "Z/4Z x Z/8Z")] {
        let m = model_7_2(v);
        assert_eq!(m.nil_torsion_additive(), grp("Z/2Z"));
        assert_eq!(m.adjoint_of_nil_torsion().unwrap(), grp("Z/2Z"));
        assert_eq!(
            m.base_torsion_group().unwrap(),
            FinAbGroup::cyclic(4).product(&FinAbGroup::cyclic(v as u64))
        );
        assert_eq!(m.torsion_units().unwrap(), grp(units));
        assert!(!m.sequence_splits().unwrap());
    }
}

#[test]
fn zero_torsion_splits() {
    let m = TnModel::parse("conductor = 4\nfree_basis = [\"1\"]\nmult = [[[1, 0]]]\n").unwrap();
    assert!(m.nil_torsion().unwrap().is_empty());
    assert!(m.adjoint_of_nil_torsion().unwrap().is_trivial());
    assert_eq!(m.torsion_units().unwrap(), FinAbGroup::cyclic(4));
    assert!(m.sequence_splits().unwrap());
}

#[test]
fn model_invariants() {
    let mut models: Vec<TnModel> = EXAMPLES.iter().map(|(n, _)| built(n)).collect();
    models.push(fuchs_core::tnlab::build_construction_model(4, &grp("(Z/3Z)^2 x Z/5Z")).unwrap());
    models.push(fuchs_core::tnlab::build_construction_model(3, &grp("Z/7Z x (Z/5Z)^2")).unwrap());
    for m in &models {
        let whole = m.torsion_units().unwrap();
        let n = m.adjoint_of_nil_torsion().unwrap();
        let b = m.base_torsion_group().unwrap();
        assert_eq!(whole.order(), n.order() * b.order());
        assert_eq!(m.base_root_order().unwrap(), m.conductor());
        // no free units beyond roots of unity here, so epsilon <= 2
        let eps = fuchs_core::FgAbGroup::finite(whole)
            .epsilon()
            .value()
            .unwrap();
        assert!(eps <= 2, "{eps}");
    }
}

#[test]
fn rejects_broken_models() {
    // x^2 = 1 with torsion y of order 2 that is not nilpotent: y^2 = y
    let bad = "conductor = 1\nfree_basis = [\"1\"]\ntorsion_basis = [\"y\"]\nbasis_orders = [2]\n\
               scalar_action = [[1]]\nmult = [[[1, 0], [0, 1]], [[0, 1], [0, 1]]]\n";
    assert!(TnModel::parse(bad).is_err());
    // zeta = i acting as 1 on Z/3 violates 1 + zeta^2 = 0
    let bad = "conductor = 4\nfree_basis = [\"1\"]\ntorsion_basis = [\"y\"]\nbasis_orders = [3]\n\
               scalar_action = [[1]]\nmult = [[[1, 0, 0], [0, 0, 1]], [[0, 0, 1], [0, 0, 0]]]\n";
    assert!(TnModel::parse(bad).is_err());
    assert!(
        TnModel::parse("conductor = 4\nfree_basis = [\"1\"]\nmult = [[[1, 0]]]\nextra = 1\n")
            .is_err()
    );
}
