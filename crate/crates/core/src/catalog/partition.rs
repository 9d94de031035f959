use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// One part of a partition: a degree, or a bidegree on the `P2 x P2` family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Part {
    Degree(u32),
    Bidegree(u32, u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PartKind {
    Degree,
    Bidegree,
}

impl Part {
    pub fn kind(&self) -> PartKind {
        match self {
            Part::Degree(_) => PartKind::Degree,
            Part::Bidegree(..) => PartKind::Bidegree,
        }
    }
}

impl fmt::Display for Part {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Part::Degree(a) => write!(f, "{a}"),
            Part::Bidegree(a, b) => write!(f, "({a},{b})"),
        }
    }
}

/// The parts `a_1, ..., a_α` of a collective normal divisor, in the order
/// the curves are blown up. Equality is order-sensitive; use
/// [`PartitionSpec::canonical`] to compare multisets.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PartitionSpec {
    parts: Vec<Part>,
}

impl PartitionSpec {
    pub fn new(parts: Vec<Part>) -> Result<Self> {
        let Some(first) = parts.first() else {
            return Err(Error::Partition("a partition needs at least one part".into()));
        };
        let kind = first.kind();
        for p in &parts {
            match *p {
                _ if p.kind() != kind => {
                    return Err(Error::Partition("cannot mix degrees and bidegrees".into()));
                }
                Part::Degree(0) | Part::Bidegree(0, 0) => {
                    return Err(Error::Partition(format!("part {p} is zero")));
                }
                _ => {}
            }
        }
        Ok(PartitionSpec { parts })
    }

    pub fn degrees(parts: &[u32]) -> Result<Self> {
        Self::new(parts.iter().map(|&a| Part::Degree(a)).collect())
    }

    pub fn bidegrees(parts: &[(u32, u32)]) -> Result<Self> {
        Self::new(parts.iter().map(|&(a, b)| Part::Bidegree(a, b)).collect())
    }

    pub fn parts(&self) -> &[Part] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn kind(&self) -> PartKind {
        self.parts[0].kind()
    }

    /// Parts sorted ascending.
    pub fn canonical(&self) -> PartitionSpec {
        let mut parts = self.parts.clone();
        parts.sort_unstable();
        PartitionSpec { parts }
    }

    /// Total `(Σa, Σb)`; for plain degrees the second entry is 0.
    pub fn totals(&self) -> (u64, u64) {
        self.parts.iter().fold((0, 0), |(x, y), p| match *p {
            Part::Degree(a) => (x + a as u64, y),
            Part::Bidegree(a, b) => (x + a as u64, y + b as u64),
        })
    }

    /// Reorders the parts to match `order`, which must be a rearrangement of
    /// the same multiset.
    pub fn reordered(&self, order: &PartitionSpec) -> Result<PartitionSpec> {
        if order.canonical() != self.canonical() {
            return Err(Error::Partition(format!(
                "order {order} is not a rearrangement of {self}"
            )));
        }
        Ok(order.clone())
    }

    /// Parses `"1,1,3"`, `"(1,1,3)"`, `"(1,0),(2,3)"` or `"((1,0),(2,3))"`.
    pub fn parse(text: &str, kind: PartKind) -> Result<Self> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        match kind {
            PartKind::Degree => {
                let inner = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(&s);
                let parts = inner
                    .split(',')
                    .map(|t| parse_number(t, text).map(Part::Degree))
                    .collect::<Result<Vec<_>>>()?;
                Self::new(parts)
            }
            PartKind::Bidegree => {
                let inner = if s.starts_with("((") {
                    s.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(&s)
                } else {
                    &s
                };
                let mut parts = Vec::new();
                let mut rest = inner;
                loop {
                    let body = rest
                        .strip_prefix('(')
                        .ok_or_else(|| bad(text, "expected `(`"))?;
                    let close = body.find(')').ok_or_else(|| bad(text, "missing `)`"))?;
                    let (pair, tail) = body.split_at(close);
                    let (a, b) = pair.split_once(',').ok_or_else(|| bad(text, "a bidegree needs two entries"))?;
                    parts.push(Part::Bidegree(parse_number(a, text)?, parse_number(b, text)?));
                    rest = &tail[1..];
                    if rest.is_empty() {
                        break;
                    }
                    rest = rest.strip_prefix(',').ok_or_else(|| bad(text, "expected `,` between bidegrees"))?;
                }
                Self::new(parts)
            }
        }
    }
}

fn bad(text: &str, why: &str) -> Error {
    Error::Partition(format!("cannot parse `{text}`: {why}"))
}

fn parse_number(t: &str, text: &str) -> Result<u32> {
    t.parse::<u32>()
        .map_err(|_| bad(text, &format!("`{t}` is not a non-negative integer")))
}

impl fmt::Display for PartitionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

impl Serialize for Part {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl Serialize for PartitionSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// All partitions of `n` into positive parts, each sorted ascending, the
/// list in lexicographic order.
pub fn integer_partitions(n: u32) -> Vec<PartitionSpec> {
    fn go(remaining: u32, min: u32, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if remaining == 0 {
            out.push(current.clone());
            return;
        }
        for part in min..=remaining {
            current.push(part);
            go(remaining - part, part, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        go(n, 1, &mut Vec::new(), &mut out);
    }
    out.sort();
    out.into_iter()
        .map(|p| PartitionSpec::degrees(&p).expect("positive parts"))
        .collect()
}

/// All multisets of non-zero bidegrees summing to `(a, b)`, each sorted
/// ascending, the list in lexicographic order.
pub fn bidegree_partitions(a: u32, b: u32) -> Vec<PartitionSpec> {
    fn go(rem: (u32, u32), min: (u32, u32), current: &mut Vec<(u32, u32)>, out: &mut Vec<Vec<(u32, u32)>>) {
        if rem == (0, 0) {
            out.push(current.clone());
            return;
        }
        for x in 0..=rem.0 {
            for y in 0..=rem.1 {
                if (x, y) == (0, 0) || (x, y) < min {
                    continue;
                }
                current.push((x, y));
                go((rem.0 - x, rem.1 - y), (x, y), current, out);
                current.pop();
            }
        }
    }
    let mut out = Vec::new();
    if (a, b) != (0, 0) {
        go((a, b), (0, 0), &mut Vec::new(), &mut out);
    }
    out.sort();
    out.into_iter()
        .map(|p| PartitionSpec::bidegrees(&p).expect("non-zero parts"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (1..=8).map(|n| integer_partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 3, 5, 7, 11, 15, 22]);
        assert_eq!(bidegree_partitions(3, 3).len(), 31);
        assert_eq!(bidegree_partitions(1, 0).len(), 1);
        assert_eq!(bidegree_partitions(1, 1).len(), 2);
    }

    #[test]
    fn canonical_order() {
        let p: Vec<String> = integer_partitions(5).iter().map(|p| p.to_string()).collect();
        assert_eq!(
            p,
            vec!["(1,1,1,1,1)", "(1,1,1,2)", "(1,1,3)", "(1,2,2)", "(1,4)", "(2,3)", "(5)"]
        );
    }

    #[test]
    fn parsing() {
        let d = PartitionSpec::parse(" 1, 4 ", PartKind::Degree).unwrap();
        assert_eq!(d, PartitionSpec::degrees(&[1, 4]).unwrap());
        assert_eq!(PartitionSpec::parse("(5)", PartKind::Degree).unwrap().to_string(), "(5)");
        let b = PartitionSpec::parse("(1,0),(2,3)", PartKind::Bidegree).unwrap();
        assert_eq!(b, PartitionSpec::bidegrees(&[(1, 0), (2, 3)]).unwrap());
        let b2 = PartitionSpec::parse("((1,0), (2,3))", PartKind::Bidegree).unwrap();
        assert_eq!(b, b2);
        assert_eq!(b.to_string(), "((1,0),(2,3))");
        assert_eq!(PartitionSpec::parse("(3,3)", PartKind::Bidegree).unwrap().len(), 1);
        assert!(PartitionSpec::parse("1,x", PartKind::Degree).is_err());
        assert!(PartitionSpec::parse("1,0", PartKind::Degree).is_err());
        assert!(PartitionSpec::parse("(0,0)", PartKind::Bidegree).is_err());
        assert!(PartitionSpec::parse("(1,0)(2,3)", PartKind::Bidegree).is_err());
        assert!(PartitionSpec::parse("", PartKind::Degree).is_err());
    }

    #[test]
    fn reorder_requires_same_multiset() {
        let p = PartitionSpec::degrees(&[1, 4]).unwrap();
        let q = PartitionSpec::degrees(&[4, 1]).unwrap();
        assert_eq!(p.reordered(&q).unwrap(), q);
        assert!(p.reordered(&PartitionSpec::degrees(&[2, 3]).unwrap()).is_err());
    }
}
