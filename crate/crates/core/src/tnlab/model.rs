//! TN ring models `A = (free Z[zeta_k]-module) + (finite torsion ideal)`.

use super::base::{Cyc, CycloBase};
use crate::error::{Error, Result};
use crate::numtheory::{cyclotomic_poly, prime_power};
use serde::{Deserialize, Serialize};

/// An element: one base coordinate vector per free basis element, then
/// torsion coordinates reduced modulo the torsion orders.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModelElem {
    pub free: Vec<Cyc>,
    pub tors: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TnModel {
    name: Option<String>,
    base: CycloBase,
    free_basis: Vec<String>,
    torsion_basis: Vec<String>,
    orders: Vec<u64>,
    /// row `j`: torsion coordinates of `zeta y_j`
    action: Vec<Vec<u64>>,
    /// products of basis elements, free basis first
    mult: Vec<Vec<ModelElem>>,
}

/// On-disk form. `mult[a][b]` lists the `f * phi(k)` free coordinates then
/// the `t` torsion coordinates of the product of basis elements `a` and `b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TnText {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub conductor: u64,
    pub free_basis: Vec<String>,
    #[serde(default)]
    pub torsion_basis: Vec<String>,
    #[serde(default)]
    pub basis_orders: Vec<u64>,
    #[serde(default)]
    pub scalar_action: Vec<Vec<u64>>,
    pub mult: Vec<Vec<Vec<i64>>>,
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidModel(msg.into())
}

impl TnModel {
    /// Validates shape, scalar action, identity, commutativity,
    /// associativity on a `Z`-basis, and nilpotency of the torsion basis.
    pub fn new(
        name: Option<String>,
        conductor: u64,
        free_basis: Vec<String>,
        torsion_basis: Vec<String>,
        orders: Vec<u64>,
        action: Vec<Vec<u64>>,
        mult: Vec<Vec<ModelElem>>,
    ) -> Result<Self> {
        if conductor == 0 {
            return Err(invalid("conductor must be positive"));
        }
        let base = CycloBase::new(conductor);
        let (f, t, d) = (free_basis.len(), torsion_basis.len(), base.degree());
        if f == 0 {
            return Err(invalid("need at least one free basis element"));
        }
        if orders.len() != t || action.len() != t || action.iter().any(|r| r.len() != t) {
            return Err(invalid(
                "torsion orders and scalar action must match the torsion basis",
            ));
        }
        if orders.iter().any(|&n| prime_power(n).is_none()) {
            return Err(invalid("torsion orders must be prime powers"));
        }
        if mult.len() != f + t || mult.iter().any(|r| r.len() != f + t) {
            return Err(invalid("multiplication table has the wrong shape"));
        }
        for e in mult.iter().flatten() {
            if e.free.len() != f || e.free.iter().any(|c| c.len() != d) || e.tors.len() != t {
                return Err(invalid("table entry has the wrong length"));
            }
            if e.tors.iter().zip(&orders).any(|(c, n)| c >= n) {
                return Err(invalid("torsion coordinates must be reduced"));
            }
        }
        let m = TnModel {
            name,
            base,
            free_basis,
            torsion_basis,
            orders,
            action,
            mult,
        };
        m.validate()?;
        Ok(m)
    }

    fn validate(&self) -> Result<()> {
        let (f, t) = (self.free_rank(), self.torsion_rank());
        let phi = cyclotomic_poly(self.base.conductor()).coeffs;
        for j in 0..t {
            if (0..t).any(|l| self.action[j][l] * self.orders[j] % self.orders[l] != 0) {
                return Err(invalid(format!(
                    "zeta {} does not respect additive orders",
                    self.torsion_basis[j]
                )));
            }
            // Phi_k(zeta) y_j = 0
            let mut acc = vec![0u64; t];
            let mut cur = self.torsion_elem(j).tors;
            for &c in &phi {
                acc = self.tors_add(&acc, &self.tors_scale(c, &cur));
                cur = self.zeta_tors(&cur);
            }
            if acc.iter().any(|&c| c != 0) {
                return Err(invalid(
                    "scalar action does not satisfy the cyclotomic relation",
                ));
            }
        }
        for a in 0..f + t {
            for b in 0..f + t {
                if self.mult[a][b] != self.mult[b][a] {
                    return Err(invalid("multiplication is not commutative"));
                }
                if a >= f && self.mult[a][b].free.iter().any(|c| !self.base.is_zero(c)) {
                    return Err(invalid("torsion basis does not span an ideal"));
                }
            }
            // y_j times anything is killed by the order of y_j
            if a >= f {
                let n = self.orders[a - f];
                for b in 0..f + t {
                    if !self.is_zero(&self.scale(n as i64, &self.mult[a][b])) {
                        return Err(invalid("product is not killed by the order of a factor"));
                    }
                }
            }
        }
        let basis = self.z_basis();
        let one = self.one();
        for x in &basis {
            if self.mul(&one, x) != *x {
                return Err(invalid("first free basis element is not the identity"));
            }
        }
        for x in &basis {
            for y in &basis {
                let xy = self.mul(x, y);
                for z in &basis {
                    if self.mul(&xy, z) != self.mul(x, &self.mul(y, z)) {
                        return Err(invalid("multiplication is not associative"));
                    }
                }
            }
        }
        for j in 0..t {
            if !self.is_nilpotent(&self.torsion_elem(j)) {
                return Err(invalid(format!(
                    "{} is not nilpotent",
                    self.torsion_basis[j]
                )));
            }
        }
        Ok(())
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn base(&self) -> &CycloBase {
        &self.base
    }

    pub fn conductor(&self) -> u64 {
        self.base.conductor()
    }

    pub fn free_rank(&self) -> usize {
        self.free_basis.len()
    }

    pub fn torsion_rank(&self) -> usize {
        self.torsion_basis.len()
    }

    pub fn torsion_orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn free_basis(&self) -> &[String] {
        &self.free_basis
    }

    pub fn torsion_basis(&self) -> &[String] {
        &self.torsion_basis
    }

    pub(crate) fn table(&self, a: usize, b: usize) -> &ModelElem {
        &self.mult[a][b]
    }

    pub fn zero(&self) -> ModelElem {
        ModelElem {
            free: vec![self.base.zero(); self.free_rank()],
            tors: vec![0; self.torsion_rank()],
        }
    }

    pub fn one(&self) -> ModelElem {
        self.free_elem(0, &self.base.one())
    }

    /// `c b_i` for a base scalar `c`.
    pub fn free_elem(&self, i: usize, c: &[i64]) -> ModelElem {
        let mut e = self.zero();
        e.free[i] = c.to_vec();
        e
    }

    pub fn torsion_elem(&self, j: usize) -> ModelElem {
        let mut e = self.zero();
        e.tors[j] = 1 % self.orders[j];
        e
    }

    /// Torsion part only, from coordinates.
    pub fn torsion_vector(&self, tors: Vec<u64>) -> ModelElem {
        let mut e = self.zero();
        e.tors = tors.iter().zip(&self.orders).map(|(c, n)| c % n).collect();
        e
    }

    /// `zeta^s b_i` and `y_j`: a `Z`-basis up to the torsion orders.
    pub fn z_basis(&self) -> Vec<ModelElem> {
        let d = self.base.degree() as i64;
        let mut out = Vec::new();
        for i in 0..self.free_rank() {
            for s in 0..d {
                out.push(self.free_elem(i, &self.base.zeta_pow(s)));
            }
        }
        out.extend((0..self.torsion_rank()).map(|j| self.torsion_elem(j)));
        out
    }

    pub fn is_zero(&self, x: &ModelElem) -> bool {
        x.free.iter().all(|c| self.base.is_zero(c)) && x.tors.iter().all(|&c| c == 0)
    }

    fn tors_add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter()
            .zip(b)
            .zip(&self.orders)
            .map(|((x, y), n)| (x + y) % n)
            .collect()
    }

    fn tors_scale(&self, s: i64, a: &[u64]) -> Vec<u64> {
        a.iter()
            .zip(&self.orders)
            .map(|(&x, &n)| ((x as i128 * s as i128).rem_euclid(n as i128)) as u64)
            .collect()
    }

    fn zeta_tors(&self, v: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; self.torsion_rank()];
        for (j, &c) in v.iter().enumerate() {
            if c != 0 {
                out = self.tors_add(&out, &self.tors_scale(c as i64, &self.action[j]));
            }
        }
        out
    }

    /// A base scalar acting on torsion coordinates.
    fn act(&self, c: &[i64], v: &[u64]) -> Vec<u64> {
        let mut acc = vec![0u64; self.torsion_rank()];
        let mut cur = v.to_vec();
        for (s, &cs) in c.iter().enumerate() {
            if cs != 0 {
                acc = self.tors_add(&acc, &self.tors_scale(cs, &cur));
            }
            if s + 1 < c.len() {
                cur = self.zeta_tors(&cur);
            }
        }
        acc
    }

    /// `c x` for a base scalar `c`.
    pub fn base_scale(&self, c: &[i64], x: &ModelElem) -> ModelElem {
        ModelElem {
            free: x.free.iter().map(|a| self.base.mul(c, a)).collect(),
            tors: self.act(c, &x.tors),
        }
    }

    pub fn add(&self, x: &ModelElem, y: &ModelElem) -> ModelElem {
        ModelElem {
            free: x
                .free
                .iter()
                .zip(&y.free)
                .map(|(a, b)| self.base.add(a, b))
                .collect(),
            tors: self.tors_add(&x.tors, &y.tors),
        }
    }

    pub fn scale(&self, s: i64, x: &ModelElem) -> ModelElem {
        ModelElem {
            free: x.free.iter().map(|a| self.base.scale(s, a)).collect(),
            tors: self.tors_scale(s, &x.tors),
        }
    }

    pub fn neg(&self, x: &ModelElem) -> ModelElem {
        self.scale(-1, x)
    }

    pub fn sub(&self, x: &ModelElem, y: &ModelElem) -> ModelElem {
        self.add(x, &self.neg(y))
    }

    pub fn mul(&self, x: &ModelElem, y: &ModelElem) -> ModelElem {
        let (f, t) = (self.free_rank(), self.torsion_rank());
        let mut out = self.zero();
        for i in 0..f {
            if self.base.is_zero(&x.free[i]) {
                continue;
            }
            for j in 0..f {
                if self.base.is_zero(&y.free[j]) {
                    continue;
                }
                let c = self.base.mul(&x.free[i], &y.free[j]);
                out = self.add(&out, &self.base_scale(&c, &self.mult[i][j]));
            }
            for l in 0..t {
                if y.tors[l] != 0 {
                    let p = self.base_scale(&x.free[i], &self.mult[i][f + l]);
                    out = self.add(&out, &self.scale(y.tors[l] as i64, &p));
                }
            }
        }
        for l in 0..t {
            if x.tors[l] == 0 {
                continue;
            }
            for j in 0..f {
                if !self.base.is_zero(&y.free[j]) {
                    let p = self.base_scale(&y.free[j], &self.mult[f + l][j]);
                    out = self.add(&out, &self.scale(x.tors[l] as i64, &p));
                }
            }
            for m in 0..t {
                if y.tors[m] != 0 {
                    let p = self.scale((x.tors[l] * y.tors[m]) as i64, &self.mult[f + l][f + m]);
                    out = self.add(&out, &p);
                }
            }
        }
        out
    }

    pub fn pow(&self, x: &ModelElem, mut k: u64) -> ModelElem {
        let mut acc = self.one();
        let mut base = x.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            k >>= 1;
        }
        acc
    }

    /// Nilpotent torsion elements die within `log2 |N| + 1` squarings.
    fn is_nilpotent(&self, x: &ModelElem) -> bool {
        let size: f64 = self.orders.iter().map(|&n| n as f64).product();
        let steps = size.log2().ceil() as u32 + 1;
        let mut cur = x.clone();
        for _ in 0..steps {
            if self.is_zero(&cur) {
                return true;
            }
            cur = self.mul(&cur, &cur);
        }
        self.is_zero(&cur)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let raw: TnText = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        TnModel::from_text(raw)
    }

    pub fn from_text(raw: TnText) -> Result<Self> {
        if raw.conductor == 0 {
            return Err(invalid("conductor must be positive"));
        }
        let d = CycloBase::new(raw.conductor).degree();
        let (f, t) = (raw.free_basis.len(), raw.torsion_basis.len());
        if raw.basis_orders.len() != t {
            return Err(invalid(
                "basis_orders must list one order per torsion basis element",
            ));
        }
        let mut mult = Vec::with_capacity(raw.mult.len());
        for row in &raw.mult {
            let mut out = Vec::with_capacity(row.len());
            for v in row {
                if v.len() != f * d + t {
                    return Err(invalid(format!(
                        "table entry needs {} coordinates",
                        f * d + t
                    )));
                }
                let free = v[..f * d].chunks(d).map(|c| c.to_vec()).collect();
                let tors = v[f * d..]
                    .iter()
                    .zip(&raw.basis_orders)
                    .map(|(&c, &n)| c.rem_euclid(n.max(1) as i64) as u64)
                    .collect();
                out.push(ModelElem { free, tors });
            }
            mult.push(out);
        }
        TnModel::new(
            raw.name,
            raw.conductor,
            raw.free_basis,
            raw.torsion_basis,
            raw.basis_orders,
            raw.scalar_action,
            mult,
        )
    }

    pub fn to_text(&self) -> String {
        let raw = TnText {
            name: self.name.clone(),
            conductor: self.conductor(),
            free_basis: self.free_basis.clone(),
            torsion_basis: self.torsion_basis.clone(),
            basis_orders: self.orders.clone(),
            scalar_action: self.action.clone(),
            mult: self
                .mult
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|e| {
                            let mut v: Vec<i64> = e.free.iter().flatten().copied().collect();
                            v.extend(e.tors.iter().map(|&c| c as i64));
                            v
                        })
                        .collect()
                })
                .collect(),
        };
        toml::to_string(&raw).expect("models serialise")
    }
}
