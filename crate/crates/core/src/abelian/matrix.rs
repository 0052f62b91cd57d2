use super::FinAbGroup;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Dense integer matrix; as a relation matrix each row is a relation on
/// `cols` generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Rows of small integers; `cols` is needed when there are no rows.
    pub fn from_rows<T: Into<BigInt> + Copy>(cols: usize, rows: &[Vec<T>]) -> Self {
        let mut m = IntMatrix::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged relation matrix");
            for (j, &x) in r.iter().enumerate() {
                m.set(i, j, x.into());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn push_row(&mut self, row: Vec<BigInt>) {
        assert_eq!(row.len(), self.cols);
        self.entries.extend(row);
        self.rows += 1;
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.entries.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.entries.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += q * row[src]
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        for j in 0..self.cols {
            let v = self.get(dst, j) + q * self.get(src, j);
            self.set(dst, j, v);
        }
    }

    /// col[dst] += q * col[src]
    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        for i in 0..self.rows {
            let v = self.get(i, dst) + q * self.get(i, src);
            self.set(i, dst, v);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j);
            self.set(i, j, v);
        }
    }

    /// Smith normal form `U M V = D`, recording `V` and `V^{-1}`.
    pub fn smith(&self) -> SmithForm {
        let mut d = self.clone();
        let n = self.cols;
        let mut v = IntMatrix::identity(n);
        let mut v_inv = IntMatrix::identity(n);
        let mut t = 0;
        while t < d.rows.min(n) {
            // smallest nonzero |entry| in the trailing block, lowest row then column
            let mut best: Option<(usize, usize)> = None;
            for i in t..d.rows {
                for j in t..n {
                    let x = d.get(i, j);
                    if x.is_zero() {
                        continue;
                    }
                    if best.map_or(true, |(bi, bj)| x.abs() < d.get(bi, bj).abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            d.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);
            v_inv.swap_rows(t, pj);

            let mut clean = true;
            for i in t + 1..d.rows {
                let q = -d.get(i, t).div_floor(d.get(t, t));
                if !q.is_zero() {
                    d.add_row(i, t, &q);
                }
                if !d.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                let q = -d.get(t, j).div_floor(d.get(t, t));
                if !q.is_zero() {
                    d.add_col(j, t, &q);
                    v.add_col(j, t, &q);
                    // V^{-1} gets the inverse row operation
                    v_inv.add_row(t, j, &-q);
                }
                if !d.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // enforce divisibility of the trailing block by the pivot
            let piv = d.get(t, t).clone();
            let mut bad_row = None;
            'scan: for i in t + 1..d.rows {
                for j in t + 1..n {
                    if !d.get(i, j).is_multiple_of(&piv) {
                        bad_row = Some(i);
                        break 'scan;
                    }
                }
            }
            if let Some(i) = bad_row {
                d.add_row(t, i, &BigInt::one());
                continue;
            }
            if piv.is_negative() {
                d.negate_row(t);
            }
            t += 1;
        }
        let rank = t;
        let diag = (0..rank).map(|i| d.get(i, i).clone()).collect();
        SmithForm {
            diag,
            rank,
            v,
            v_inv,
        }
    }

    /// The cokernel `Z^cols / rowspace`, with an explicit basis.
    pub fn cokernel(&self) -> Cokernel {
        let s = self.smith();
        let n = self.cols;
        let mut orders = Vec::new();
        let mut gens = Vec::new();
        let mut coord_cols = Vec::new();
        for i in 0..n {
            let d = if i < s.rank {
                s.diag[i].clone()
            } else {
                BigInt::zero()
            };
            if d.is_one() {
                continue;
            }
            orders.push(d.to_biguint().unwrap_or_default());
            gens.push(s.v_inv.row(i).to_vec());
            coord_cols.push(i);
        }
        let torsion_orders: Vec<u64> = orders
            .iter()
            .filter(|o| !o.is_zero())
            .map(|o| o.to_u64().expect("cyclic factor order exceeds 64 bits"))
            .collect();
        Cokernel {
            group: FinAbGroup::from_cyclic_orders(&torsion_orders),
            free_rank: (n - s.rank) as u32,
            orders,
            gens,
            v: s.v,
            coord_cols,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SmithForm {
    /// Nonzero diagonal entries `d_1 | d_2 | ...`, all positive.
    pub diag: Vec<BigInt>,
    pub rank: usize,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

/// Cyclic decomposition of a cokernel. `orders[i] = 0` marks a free generator.
#[derive(Debug, Clone)]
pub struct Cokernel {
    pub group: FinAbGroup,
    pub free_rank: u32,
    pub orders: Vec<BigUint>,
    /// Generator `i` in the original coordinates.
    pub gens: Vec<Vec<BigInt>>,
    v: IntMatrix,
    coord_cols: Vec<usize>,
}

impl Cokernel {
    /// Coordinates of the class of `x` in the basis `gens`, reduced modulo
    /// the finite orders.
    pub fn coordinates(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.v.rows());
        self.coord_cols
            .iter()
            .zip(&self.orders)
            .map(|(&c, ord)| {
                let mut s = BigInt::zero();
                for (k, xk) in x.iter().enumerate() {
                    s += xk * self.v.get(k, c);
                }
                if ord.is_zero() {
                    s
                } else {
                    s.mod_floor(&BigInt::from(ord.clone()))
                }
            })
            .collect()
    }
}

/// Structure of `Z^cols / rowspace(m)`: canonical torsion plus free rank.
pub fn group_from_relations(m: &IntMatrix) -> (FinAbGroup, u32) {
    let c = m.cokernel();
    (c.group, c.free_rank)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::HashSet;

    #[test]
    fn examples() {
        let m = IntMatrix::from_rows(2, &[vec![2, 0], vec![0, 0]]);
        assert_eq!(group_from_relations(&m), (FinAbGroup::cyclic(2), 1));
        let m = IntMatrix::from_rows(2, &[vec![2, 1], vec![0, 4]]);
        assert_eq!(group_from_relations(&m), (FinAbGroup::cyclic(8), 0));
        let m = IntMatrix::from_rows::<i64>(3, &[]);
        assert_eq!(group_from_relations(&m), (FinAbGroup::trivial(), 3));
    }

    #[test]
    fn smith_divisibility_and_transforms() {
        let m = IntMatrix::from_rows(3, &[vec![6, 4, 0], vec![2, 8, 10], vec![4, 0, 12]]);
        let s = m.smith();
        for w in s.diag.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        assert_eq!(s.v.mul(&s.v_inv), IntMatrix::identity(3));
    }

    // Cokernel of a square nonsingular matrix by enumerating residues of a box
    // that contains a fundamental domain.
    fn brute_cokernel(rows: &[Vec<i64>], n: usize) -> Option<(FinAbGroup, u32)> {
        let m = IntMatrix::from_rows(n, rows);
        // skip singular inputs: the free part is checked via rank elsewhere
        let s = m.smith();
        if s.rank < n {
            return None;
        }
        let det: u64 = det(rows).abs().to_u64().unwrap();
        // every element of the cokernel has a representative in [0, det)^n;
        // identify classes by the group's own coordinates and count elements
        // of each order via brute force on the lattice.
        let c = m.cokernel();
        let mut seen = HashSet::new();
        let mut order_counts = std::collections::BTreeMap::new();
        let mut idx = vec![0u64; n];
        loop {
            let x: Vec<BigInt> = idx.iter().map(|&v| BigInt::from(v)).collect();
            let key = c.coordinates(&x);
            if seen.insert(key) {
                // order of x in Z^n / L: smallest k with k x in L, found by
                // solving with the integer matrix directly
                let mut k = 1u64;
                loop {
                    let kx: Vec<BigInt> = x.iter().map(|v| v * k).collect();
                    if in_lattice(rows, &kx) {
                        break;
                    }
                    k += 1;
                }
                *order_counts.entry(k).or_insert(0u64) += 1;
            }
            let mut i = 0;
            loop {
                if i == n {
                    let g = c.group.clone();
                    assert_eq!(seen.len() as u64, det);
                    // element-order census must match the claimed group
                    let census = census_of(&g);
                    assert_eq!(order_counts, census);
                    return Some((g, 0));
                }
                idx[i] += 1;
                if idx[i] < det {
                    break;
                }
                idx[i] = 0;
                i += 1;
            }
        }
    }

    // x in the row lattice of `rows` (square, nonsingular), by Cramer's rule
    fn in_lattice(rows: &[Vec<i64>], x: &[BigInt]) -> bool {
        let n = rows.len();
        let det = det(rows);
        for col in 0..n {
            // solve c * R = x; c_col = det(R with row col replaced by x) / det
            let mut r: Vec<Vec<BigInt>> = rows
                .iter()
                .map(|row| row.iter().map(|&v| BigInt::from(v)).collect())
                .collect();
            r[col] = x.to_vec();
            if !det_big(&r).is_multiple_of(&det) {
                return false;
            }
        }
        true
    }

    fn det(rows: &[Vec<i64>]) -> BigInt {
        det_big(
            &rows
                .iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect::<Vec<_>>(),
        )
    }

    fn det_big(m: &[Vec<BigInt>]) -> BigInt {
        let n = m.len();
        if n == 1 {
            return m[0][0].clone();
        }
        let mut s = BigInt::zero();
        for j in 0..n {
            let minor: Vec<Vec<BigInt>> = m[1..]
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|&(k, _)| k != j)
                        .map(|(_, v)| v.clone())
                        .collect()
                })
                .collect();
            let term = &m[0][j] * det_big(&minor);
            if j % 2 == 0 {
                s += term;
            } else {
                s -= term;
            }
        }
        s
    }

    fn census_of(g: &FinAbGroup) -> std::collections::BTreeMap<u64, u64> {
        let orders = g.cyclic_factor_orders();
        let mut out = std::collections::BTreeMap::new();
        let mut idx = vec![0u64; orders.len()];
        loop {
            let ord = idx
                .iter()
                .zip(&orders)
                .map(|(&a, &n)| n / a.gcd(&n))
                .fold(1u64, |acc, o| acc.lcm(&o));
            *out.entry(ord).or_insert(0) += 1;
            let mut i = 0;
            loop {
                if i == orders.len() {
                    return out;
                }
                idx[i] += 1;
                if idx[i] < orders[i] {
                    break;
                }
                idx[i] = 0;
                i += 1;
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(150))]
        #[test]
        fn cokernel_matches_brute_force(n in 1usize..=3, seed in proptest::collection::vec(-4i64..=4, 9)) {
            let rows: Vec<Vec<i64>> = (0..n).map(|i| seed[i * 3..i * 3 + n].to_vec()).collect();
            if det(&rows).abs() <= BigInt::from(40) {
                brute_cokernel(&rows, n);
            }
        }

        #[test]
        fn free_rank_is_cols_minus_rank(rows in proptest::collection::vec(proptest::collection::vec(-4i64..=4, 3), 0..4)) {
            let m = IntMatrix::from_rows(3, &rows);
            let (_, r) = group_from_relations(&m);
            // rank via determinant-free elimination over Q
            let mut q: Vec<Vec<f64>> = rows.iter().map(|r| r.iter().map(|&v| v as f64).collect()).collect();
            let mut rank = 0;
            for c in 0..3 {
                if let Some(p) = (rank..q.len()).find(|&i| q[i][c].abs() > 1e-9) {
                    q.swap(rank, p);
                    for i in 0..q.len() {
                        if i != rank {
                            let f = q[i][c] / q[rank][c];
                            for k in 0..3 { q[i][k] -= f * q[rank][k]; }
                        }
                    }
                    rank += 1;
                }
            }
            prop_assert_eq!(r as usize, 3 - rank);
        }

        #[test]
        fn cokernel_generators_have_claimed_orders(rows in proptest::collection::vec(proptest::collection::vec(-4i64..=4, 3), 0..4)) {
            let m = IntMatrix::from_rows(3, &rows);
            let c = m.cokernel();
            for (i, gen) in c.gens.iter().enumerate() {
                let coords = c.coordinates(gen);
                for (k, x) in coords.iter().enumerate() {
                    let expect = if k == i { BigInt::one() } else { BigInt::zero() };
                    let ord = BigInt::from(c.orders[k].clone());
                    let expect = if ord.is_zero() { expect } else { expect.mod_floor(&ord) };
                    prop_assert_eq!(x, &expect);
                }
            }
        }
    }
}
