//! Text format shared by radical rings, finite unital rings and models.
//!
//! A presentation is a TOML document:
//!
//! ```toml
//! name = "Z/4[t]/(t^2, 2t)"   # optional
//! prime = 2                   # radical rings only
//! basis_orders = [4, 2]
//! mult = [[[0, 0], [0, 1]],   # mult[i][j] = coordinates of e_i e_j
//!         [[0, 1], [0, 0]]]
//! one = [1, 0]                # unital rings only
//! ```
//!
//! Radical rings need `prime` and prime-power `basis_orders`; unital rings
//! need `one`. Models extend the format, see [`crate::tnlab`].

use crate::error::{Error, Result};
use crate::finring::FinCommRing;
use crate::radical::RadicalRing;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingPresentation {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prime: Option<u64>,
    pub basis_orders: Vec<u64>,
    pub mult: Vec<Vec<Vec<u64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub one: Option<Vec<u64>>,
}

impl RingPresentation {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_text(&self) -> String {
        toml::to_string(self).expect("presentations serialise")
    }

    pub fn from_radical(r: &RadicalRing) -> Self {
        RingPresentation {
            name: None,
            prime: Some(r.p()),
            basis_orders: r.basis_orders().to_vec(),
            mult: r.structure_constants().to_vec(),
            one: None,
        }
    }

    pub fn from_ring(r: &FinCommRing) -> Self {
        RingPresentation {
            name: None,
            prime: None,
            basis_orders: r.basis_orders().to_vec(),
            mult: r.structure_constants().to_vec(),
            one: Some(r.one()),
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn to_radical(&self) -> Result<RadicalRing> {
        let p = self
            .prime
            .ok_or_else(|| Error::Parse("radical ring needs `prime`".into()))?;
        if self.one.is_some() {
            return Err(Error::Parse("radical ring cannot have `one`".into()));
        }
        let exps = self
            .basis_orders
            .iter()
            .map(|&n| exponent_of(n, p))
            .collect::<Result<Vec<u32>>>()?;
        RadicalRing::new(p, exps, self.mult.clone())
    }

    pub fn to_ring(&self) -> Result<FinCommRing> {
        let one = self
            .one
            .clone()
            .ok_or_else(|| Error::Parse("unital ring needs `one`".into()))?;
        FinCommRing::new(self.basis_orders.clone(), self.mult.clone(), one)
    }
}

fn exponent_of(mut n: u64, p: u64) -> Result<u32> {
    let mut e = 0;
    while n > 1 && n % p == 0 {
        n /= p;
        e += 1;
    }
    if n != 1 || e == 0 {
        return Err(Error::Parse(format!(
            "basis order is not a positive power of {p}"
        )));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_and_build() {
        let text = r#"
            name = "Z/4[t]/(t^2, 2t)"
            basis_orders = [4, 2]
            mult = [[[1, 0], [0, 1]], [[0, 1], [0, 0]]]
            one = [1, 0]
        "#;
        let p = RingPresentation::parse(text).unwrap();
        let r = p.to_ring().unwrap();
        assert_eq!(r.size(), 8);
        assert!(p.to_radical().is_err());
        assert!(RingPresentation::parse("basis_orders = [2]\nbogus = 1").is_err());
    }

    #[test]
    fn radical_round_trip() {
        for r in crate::radical::enumerate_radical_rings(2, 3, 1 << 12).unwrap() {
            let text = RingPresentation::from_radical(&r).to_text();
            let back = RingPresentation::parse(&text).unwrap();
            assert_eq!(back.to_radical().unwrap(), r);
            assert_eq!(back.to_text(), text);
        }
    }

    proptest! {
        #[test]
        fn unital_round_trip(a in 2u64..12, b in 2u64..12) {
            let r = FinCommRing::zn(a).unwrap().product(&FinCommRing::zn(b).unwrap()).unwrap();
            let p = RingPresentation::from_ring(&r).with_name(format!("Z/{a} x Z/{b}"));
            let back = RingPresentation::parse(&p.to_text()).unwrap();
            prop_assert_eq!(&back, &p);
            prop_assert_eq!(back.to_ring().unwrap(), r);
        }
    }
}
