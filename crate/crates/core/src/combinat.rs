//! Partitions and compositions.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Weakly decreasing list of positive parts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Sorts the parts and drops zeros.
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = self.0.clone();
        parts.extend_from_slice(&other.0);
        Partition::new(parts)
    }

    pub fn conjugate(&self) -> Partition {
        let Some(&first) = self.0.first() else {
            return Partition::empty();
        };
        Partition(
            (1..=first)
                .map(|i| self.0.iter().filter(|&&p| p >= i).count() as u32)
                .collect(),
        )
    }

    /// Multiplicity of each part, as `(part, count)` in decreasing part order.
    pub fn multiplicities(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &p in &self.0 {
            match out.last_mut() {
                Some((q, n)) if *q == p => *n += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// All distinct orderings of the parts, in lexicographic order.
    pub fn rearrangements(&self) -> Vec<Composition> {
        let mut cur: Vec<u32> = self.0.iter().rev().copied().collect();
        let mut out = vec![Composition(cur.clone())];
        while next_permutation(&mut cur) {
            out.push(Composition(cur.clone()));
        }
        out
    }
}

fn next_permutation(v: &mut [u32]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Ordered list of positive parts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition(Vec<u32>);

impl Composition {
    pub fn empty() -> Self {
        Composition(Vec::new())
    }

    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::domain("composition parts must be positive"));
        }
        Ok(Composition(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Composition) -> Composition {
        let mut parts = self.0.clone();
        parts.extend_from_slice(&other.0);
        Composition(parts)
    }

    pub fn reversed(&self) -> Composition {
        Composition(self.0.iter().rev().copied().collect())
    }

    pub fn to_partition(&self) -> Partition {
        Partition::new(self.0.clone())
    }

    /// `(prefix, suffix)` for every split point, prefix length `0..=len`.
    pub fn splits(&self) -> impl Iterator<Item = (Composition, Composition)> + '_ {
        (0..=self.0.len()).map(|i| (Composition(self.0[..i].to_vec()), Composition(self.0[i..].to_vec())))
    }
}

fn fmt_parts(parts: &[u32], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    write!(f, "(")?;
    for (i, p) in parts.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{p}")?;
    }
    write!(f, ")")
}

fn parse_parts(text: &str) -> Result<Vec<u32>> {
    let t = text.trim();
    let inner = t
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| Error::parse(0, "expected a parenthesized list such as (2,1,3)"))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|p| {
            let p = p.trim();
            match p.parse::<u32>() {
                Ok(v) if v > 0 => Ok(v),
                _ => Err(Error::parse(0, format!("bad part {p:?}"))),
            }
        })
        .collect()
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_parts(&self.0, f)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_parts(&self.0, f)
    }
}

impl FromStr for Composition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(Composition(parse_parts(s)?))
    }
}

impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(Partition::new(parse_parts(s)?))
    }
}

/// Partitions of `n` with every part in `allowed`, in lexicographic order.
pub fn partitions_with_parts(n: u32, allowed: &dyn Fn(u32) -> bool) -> Vec<Partition> {
    fn go(rest: u32, max: u32, allowed: &dyn Fn(u32) -> bool, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=max.min(rest)).filter(|&p| allowed(p)) {
            cur.push(p);
            go(rest - p, p, allowed, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, allowed, &mut Vec::new(), &mut out);
    out.sort();
    out
}

pub fn partitions(n: u32) -> Vec<Partition> {
    partitions_with_parts(n, &|_| true)
}

/// Compositions of `n` with every part in `allowed`.
pub fn compositions_with_parts(n: u32, allowed: &dyn Fn(u32) -> bool) -> Vec<Composition> {
    fn go(rest: u32, allowed: &dyn Fn(u32) -> bool, cur: &mut Vec<u32>, out: &mut Vec<Composition>) {
        if rest == 0 {
            out.push(Composition(cur.clone()));
            return;
        }
        for p in (1..=rest).filter(|&p| allowed(p)) {
            cur.push(p);
            go(rest - p, allowed, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, allowed, &mut Vec::new(), &mut out);
    out
}

pub fn compositions(n: u32) -> Vec<Composition> {
    compositions_with_parts(n, &|_| true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..=10).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
        assert_eq!(compositions(5).len(), 16);
        assert_eq!(partitions_with_parts(12, &|p| p % 2 == 1).len(), 15);
    }

    #[test]
    fn conjugate_and_rearrangements() {
        let p = Partition::new(vec![1, 3, 1]);
        assert_eq!(p.to_string(), "(3,1,1)");
        assert_eq!(p.conjugate().to_string(), "(3,1,1)");
        assert_eq!(Partition::new(vec![2, 2]).conjugate().to_string(), "(2,2)");
        assert_eq!(Partition::new(vec![4]).conjugate().to_string(), "(1,1,1,1)");
        let r: Vec<String> = Partition::new(vec![2, 1, 1]).rearrangements().iter().map(|c| c.to_string()).collect();
        assert_eq!(r, vec!["(1,1,2)", "(1,2,1)", "(2,1,1)"]);
    }

    #[test]
    fn text_round_trip() {
        let c: Composition = "(2, 1,3)".parse().unwrap();
        assert_eq!(c.to_string(), "(2,1,3)");
        assert_eq!("()".parse::<Composition>().unwrap(), Composition::empty());
        assert!("(0,1)".parse::<Composition>().is_err());
        assert!("2,1".parse::<Composition>().is_err());
        assert_eq!(c.splits().count(), 4);
    }
}
