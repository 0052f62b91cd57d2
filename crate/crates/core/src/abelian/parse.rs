//! Group literals: `Z/nZ`, `(Z/nZ)^k`, `Z^r` and `Z`, joined by `x`, `×` or
//! `*`, whitespace ignored; `1` is the trivial group.

use super::{FgAbGroup, FinAbGroup};
use crate::error::{Error, Result};
use std::str::FromStr;

fn err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn parse_u64(s: &str, what: &str) -> Result<u64> {
    s.parse::<u64>()
        .map_err(|_| err(format!("expected a positive integer for {what}, got `{s}`")))
}

/// `Z/nZ` or `Z/n`, returning `n`.
fn parse_cyclic(tok: &str) -> Result<Option<u64>> {
    let Some(rest) = tok.strip_prefix("Z/") else {
        return Ok(None);
    };
    let rest = rest.strip_suffix('Z').unwrap_or(rest);
    let n = parse_u64(rest, "a cyclic order")?;
    if n == 0 {
        return Err(err("Z/0Z is not finite; write Z for a free factor"));
    }
    Ok(Some(n))
}

impl FromStr for FgAbGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err("empty group literal"));
        }
        let mut orders: Vec<(u64, u32)> = Vec::new();
        let mut free_rank = 0u32;
        for tok in compact.split(['x', '×', '*']) {
            if tok.is_empty() {
                return Err(err(format!("empty factor in `{s}`")));
            }
            if tok == "1" {
                continue;
            }
            if tok == "Z" {
                free_rank += 1;
                continue;
            }
            if let Some(r) = tok.strip_prefix("Z^") {
                free_rank += parse_u64(r, "a free rank")? as u32;
                continue;
            }
            if let Some(inner) = tok.strip_prefix('(') {
                let (body, pow) = inner
                    .split_once(")^")
                    .ok_or_else(|| err(format!("malformed factor `{tok}`")))?;
                let n =
                    parse_cyclic(body)?.ok_or_else(|| err(format!("malformed factor `{tok}`")))?;
                let k = parse_u64(pow, "a multiplicity")? as u32;
                orders.push((n, k));
                continue;
            }
            match parse_cyclic(tok)? {
                Some(n) => orders.push((n, 1)),
                None => return Err(err(format!("unrecognised factor `{tok}`"))),
            }
        }
        let mut flat = Vec::new();
        for (n, k) in orders {
            flat.extend(std::iter::repeat(n).take(k as usize));
        }
        Ok(FgAbGroup::new(
            FinAbGroup::from_cyclic_orders(&flat),
            free_rank,
        ))
    }
}

impl FromStr for FinAbGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let g: FgAbGroup = s.parse()?;
        if g.free_rank != 0 {
            return Err(err(format!("`{s}` has a free part")));
        }
        Ok(g.torsion)
    }
}
