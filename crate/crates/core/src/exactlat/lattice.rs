use std::collections::HashSet;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Integer coordinate vector. The parent lattice is not stored; every
/// operation that pairs vectors checks lengths against the lattice it is
/// handed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector(Vec<BigInt>);

impl LatticeVector {
    pub fn new(coords: Vec<BigInt>) -> Self {
        LatticeVector(coords)
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        LatticeVector(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zeros(len: usize) -> Self {
        LatticeVector(vec![BigInt::zero(); len])
    }

    /// The `index`-th standard basis vector of length `len`.
    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.0[index] = BigInt::from(1);
        v
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<BigInt> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        LatticeVector(self.0.iter().map(|c| c * k).collect())
    }

    /// Appends `extra` zero coordinates.
    pub fn padded(&self, extra: usize) -> Self {
        let mut coords = self.0.clone();
        coords.resize(self.0.len() + extra, BigInt::zero());
        LatticeVector(coords)
    }

    pub fn concat(parts: &[LatticeVector]) -> Self {
        LatticeVector(parts.iter().flat_map(|p| p.0.iter().cloned()).collect())
    }

    /// Coordinates as `i64`, failing on overflow.
    pub fn to_i64(&self) -> Result<Vec<i64>> {
        self.0
            .iter()
            .map(|c| c.to_i64().ok_or_else(|| Error::Overflow(c.to_string())))
            .collect()
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> Self {
        assert_eq!(
            self.len(),
            other.len(),
            "vector length mismatch in coordinate arithmetic"
        );
        LatticeVector(self.0.iter().zip(&other.0).map(|(a, b)| f(a, b)).collect())
    }
}

impl Add for &LatticeVector {
    type Output = LatticeVector;
    fn add(self, rhs: Self) -> LatticeVector {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &LatticeVector {
    type Output = LatticeVector;
    fn sub(self, rhs: Self) -> LatticeVector {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        LatticeVector(self.0.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

impl Serialize for LatticeVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let coords = self.to_i64().map_err(serde::ser::Error::custom)?;
        coords.serialize(serializer)
    }
}

/// A finite-rank integral lattice with a symmetric Gram form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionLattice {
    name: String,
    gram: Vec<Vec<BigInt>>,
    labels: Vec<String>,
}

impl IntersectionLattice {
    /// Builds a lattice, rejecting non-square or asymmetric Gram matrices and
    /// repeated basis labels.
    pub fn new(name: impl Into<String>, gram: Vec<Vec<BigInt>>, labels: Vec<String>) -> Result<Self> {
        let name = name.into();
        let rank = gram.len();
        for (row, entries) in gram.iter().enumerate() {
            if entries.len() != rank {
                return Err(Error::NonSquareGram {
                    lattice: name,
                    row,
                    expected: rank,
                    found: entries.len(),
                });
            }
        }
        for row in 0..rank {
            for col in row + 1..rank {
                if gram[row][col] != gram[col][row] {
                    return Err(Error::AsymmetricGram { lattice: name, row, col });
                }
            }
        }
        if labels.len() != rank {
            return Err(Error::LabelCount {
                lattice: name,
                expected: rank,
                found: labels.len(),
            });
        }
        let mut seen = HashSet::new();
        for label in &labels {
            if !seen.insert(label.as_str()) {
                return Err(Error::DuplicateLabel {
                    lattice: name,
                    label: label.clone(),
                });
            }
        }
        Ok(IntersectionLattice { name, gram, labels })
    }

    pub fn from_i64(name: impl Into<String>, gram: &[Vec<i64>], labels: &[&str]) -> Result<Self> {
        let gram = gram
            .iter()
            .map(|row| row.iter().map(|&g| BigInt::from(g)).collect())
            .collect();
        Self::new(name, gram, labels.iter().map(|s| s.to_string()).collect())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<BigInt>] {
        &self.gram
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Fails unless `v` has this lattice's rank. `what` names the vector in
    /// the error.
    pub fn check(&self, v: &LatticeVector, what: &str) -> Result<()> {
        if v.len() == self.rank() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                lattice: self.name.clone(),
                vector: what.to_string(),
                expected: self.rank(),
                found: v.len(),
            })
        }
    }

    /// The Gram form `u^T G v`.
    pub fn pair(&self, u: &LatticeVector, v: &LatticeVector) -> Result<BigInt> {
        self.check(u, &u.to_string())?;
        self.check(v, &v.to_string())?;
        let mut total = BigInt::zero();
        for (i, ui) in u.coords().iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            let mut row = BigInt::zero();
            for (j, vj) in v.coords().iter().enumerate() {
                row += &self.gram[i][j] * vj;
            }
            total += ui * row;
        }
        Ok(total)
    }

    pub fn square(&self, u: &LatticeVector) -> Result<BigInt> {
        self.pair(u, u)
    }

    /// Orthogonal sum with `count` new classes of self-intersection -1, as
    /// produced by blowing a surface up at `count` points.
    pub fn with_exceptional_points(&self, name: impl Into<String>, labels: Vec<String>) -> Result<Self> {
        let old = self.rank();
        let new = old + labels.len();
        let mut gram = vec![vec![BigInt::zero(); new]; new];
        for (i, row) in self.gram.iter().enumerate() {
            gram[i][..old].clone_from_slice(row);
        }
        for (i, row) in gram.iter_mut().enumerate().skip(old) {
            row[i] = BigInt::from(-1);
        }
        let mut all = self.labels.clone();
        all.extend(labels);
        Self::new(name, gram, all)
    }
}

/// Euler number of a smooth curve of class `c` on a surface with canonical
/// class `k`, by adjunction: `e = -(c.c + c.K)`.
pub fn adjunction_euler(
    c: &LatticeVector,
    k: &LatticeVector,
    lattice: &IntersectionLattice,
) -> Result<BigInt> {
    lattice.check(k, "canonical class")?;
    lattice.check(c, &c.to_string())?;
    if c.is_zero() {
        return Err(Error::ZeroClass {
            lattice: lattice.name().to_string(),
        });
    }
    let sum = lattice.square(c)? + lattice.pair(c, k)?;
    if sum.is_odd() {
        return Err(Error::OddAdjunction {
            lattice: lattice.name().to_string(),
            class: c.to_string(),
            sum,
        });
    }
    Ok(-sum)
}

/// Converts to `i64`, naming `what` on overflow.
pub fn to_i64(value: &BigInt, what: &str) -> Result<i64> {
    value
        .to_i64()
        .ok_or_else(|| Error::Overflow(format!("{what} = {value}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[i64]) -> LatticeVector {
        LatticeVector::from_i64(c)
    }

    #[test]
    fn pair_one_by_one() {
        let l = IntersectionLattice::from_i64("cubic", &[vec![3]], &["h"]).unwrap();
        assert_eq!(l.pair(&v(&[1]), &v(&[1])).unwrap(), BigInt::from(3));
        assert_eq!(l.pair(&v(&[5]), &v(&[5])).unwrap(), BigInt::from(75));
    }

    #[test]
    fn pair_flag_surface() {
        let l = IntersectionLattice::from_i64("flag", &[vec![1, 2], vec![2, 1]], &["a", "b"]).unwrap();
        assert_eq!(l.pair(&v(&[3, 3]), &v(&[1, 1])).unwrap(), BigInt::from(18));
    }

    #[test]
    fn pair_rejects_wrong_length() {
        let l = IntersectionLattice::from_i64("plane", &[vec![1]], &["h"]).unwrap();
        let err = l.pair(&v(&[1, 2]), &v(&[1])).unwrap_err();
        match err {
            Error::DimensionMismatch { lattice, expected, found, .. } => {
                assert_eq!(lattice, "plane");
                assert_eq!((expected, found), (1, 2));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn construction_rejects_bad_gram() {
        assert!(matches!(
            IntersectionLattice::from_i64("x", &[vec![1, 2], vec![3, 1]], &["a", "b"]),
            Err(Error::AsymmetricGram { row: 0, col: 1, .. })
        ));
        assert!(matches!(
            IntersectionLattice::from_i64("x", &[vec![1, 2], vec![2]], &["a", "b"]),
            Err(Error::NonSquareGram { row: 1, .. })
        ));
        assert!(matches!(
            IntersectionLattice::from_i64("x", &[vec![1, 0], vec![0, 1]], &["a", "a"]),
            Err(Error::DuplicateLabel { .. })
        ));
        assert!(matches!(
            IntersectionLattice::from_i64("x", &[vec![1]], &["a", "b"]),
            Err(Error::LabelCount { .. })
        ));
    }

    #[test]
    fn adjunction_examples() {
        let plane = IntersectionLattice::from_i64("plane", &[vec![1]], &["h"]).unwrap();
        assert_eq!(adjunction_euler(&v(&[5]), &v(&[-3]), &plane).unwrap(), BigInt::from(-10));
        let cubic = IntersectionLattice::from_i64("cubic", &[vec![3]], &["h"]).unwrap();
        assert_eq!(adjunction_euler(&v(&[5]), &v(&[-1]), &cubic).unwrap(), BigInt::from(-60));
        let flag = IntersectionLattice::from_i64("flag", &[vec![1, 2], vec![2, 1]], &["a", "b"]).unwrap();
        assert_eq!(adjunction_euler(&v(&[1, 1]), &v(&[-1, -1]), &flag).unwrap(), BigInt::from(0));
    }

    #[test]
    fn adjunction_odd_and_zero() {
        let l = IntersectionLattice::from_i64("odd", &[vec![1]], &["h"]).unwrap();
        assert!(matches!(
            adjunction_euler(&v(&[1]), &v(&[0]), &l),
            Err(Error::OddAdjunction { .. })
        ));
        assert!(matches!(
            adjunction_euler(&v(&[0]), &v(&[-3]), &l),
            Err(Error::ZeroClass { .. })
        ));
    }

    #[test]
    fn exceptional_points_extend_orthogonally() {
        let plane = IntersectionLattice::from_i64("plane", &[vec![1]], &["h"]).unwrap();
        let blown = plane
            .with_exceptional_points("plane~", vec!["p1".into(), "p2".into()])
            .unwrap();
        assert_eq!(blown.rank(), 3);
        assert_eq!(blown.pair(&v(&[0, 1, 0]), &v(&[0, 1, 0])).unwrap(), BigInt::from(-1));
        assert_eq!(blown.pair(&v(&[1, 0, 0]), &v(&[0, 1, 1])).unwrap(), BigInt::from(0));
        assert_eq!(blown.pair(&v(&[0, 1, 0]), &v(&[0, 0, 1])).unwrap(), BigInt::from(0));
    }
}
