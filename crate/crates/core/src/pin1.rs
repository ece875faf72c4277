//! Combinatorial pin⁻ structures on compact 1-manifolds.
//!
//! Each edge carries a bit in `Z/2`. A circle is bounding exactly when the
//! number of 1-edges is odd; intervals form a group under concatenation
//! whose class is the bit sum.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Pin1Error {
    #[error("a component needs at least one edge")]
    NoEdges,
    #[error("edge bit {0} is not 0 or 1")]
    BadBit(u8),
    #[error("bordism class is only defined for closed manifolds")]
    HasBoundary,
}

fn check_bits(bits: &[u8]) -> Result<(), Pin1Error> {
    if bits.is_empty() {
        return Err(Pin1Error::NoEdges);
    }
    match bits.iter().find(|&&b| b > 1) {
        Some(&b) => Err(Pin1Error::BadBit(b)),
        None => Ok(()),
    }
}

fn ones(bits: &[u8]) -> usize {
    bits.iter().filter(|&&b| b == 1).count()
}

/// Edge `i` runs from vertex `i` to vertex `i + 1 mod n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Circle {
    edge_bits: Vec<u8>,
}

impl Circle {
    pub fn new(edge_bits: Vec<u8>) -> Result<Self, Pin1Error> {
        check_bits(&edge_bits)?;
        Ok(Self { edge_bits })
    }

    pub fn edge_bits(&self) -> &[u8] {
        &self.edge_bits
    }

    pub fn edge_count(&self) -> usize {
        self.edge_bits.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.edge_bits.len()
    }

    /// Number of edges with bit 1.
    pub fn m(&self) -> usize {
        ones(&self.edge_bits)
    }

    /// Replaces edge `i` (bit `b`) by two edges with bits `b, 0`.
    pub fn subdivide(&self, i: usize) -> Self {
        let mut bits = self.edge_bits.clone();
        bits.insert(i + 1, 0);
        Self { edge_bits: bits }
    }
}

/// Edge `i` runs from vertex `i` to vertex `i + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Interval {
    edge_bits: Vec<u8>,
}

impl Interval {
    pub fn new(edge_bits: Vec<u8>) -> Result<Self, Pin1Error> {
        check_bits(&edge_bits)?;
        Ok(Self { edge_bits })
    }

    pub fn edge_bits(&self) -> &[u8] {
        &self.edge_bits
    }

    pub fn edge_count(&self) -> usize {
        self.edge_bits.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.edge_bits.len() + 1
    }

    pub fn m(&self) -> usize {
        ones(&self.edge_bits)
    }

    /// Class in `Z/2`: the bit sum; all-zero bits give the identity.
    pub fn class(&self) -> u8 {
        (self.m() % 2) as u8
    }

    pub fn subdivide(&self, i: usize) -> Self {
        let mut bits = self.edge_bits.clone();
        bits.insert(i + 1, 0);
        Self { edge_bits: bits }
    }
}

pub fn concatenate(i1: &Interval, i2: &Interval) -> Interval {
    let mut bits = i1.edge_bits.clone();
    bits.extend_from_slice(&i2.edge_bits);
    Interval { edge_bits: bits }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CircleClass {
    Bounding,
    Nonbounding,
}

impl fmt::Display for CircleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CircleClass::Bounding => "bounding",
            CircleClass::Nonbounding => "nonbounding",
        })
    }
}

pub fn classify_circle(c: &Circle) -> CircleClass {
    if c.m() % 2 == 1 {
        CircleClass::Bounding
    } else {
        CircleClass::Nonbounding
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Component {
    Circle(Circle),
    Interval(Interval),
}

impl Component {
    pub fn edge_bits(&self) -> &[u8] {
        match self {
            Component::Circle(c) => c.edge_bits(),
            Component::Interval(i) => i.edge_bits(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        match self {
            Component::Circle(c) => c.vertex_count(),
            Component::Interval(i) => i.vertex_count(),
        }
    }

    pub fn is_closed(&self) -> bool {
        matches!(self, Component::Circle(_))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Pin1Manifold {
    pub components: Vec<Component>,
}

impl Pin1Manifold {
    pub fn new(components: Vec<Component>) -> Self {
        Self { components }
    }

    pub fn is_closed(&self) -> bool {
        self.components.iter().all(Component::is_closed)
    }
}

/// Class in `Ω₁ ≅ Z/2`: the number of nonbounding circles mod 2.
pub fn bordism_class(m: &Pin1Manifold) -> Result<u8, Pin1Error> {
    let mut count = 0usize;
    for c in &m.components {
        match c {
            Component::Circle(c) => {
                if classify_circle(c) == CircleClass::Nonbounding {
                    count += 1;
                }
            }
            Component::Interval(_) => return Err(Pin1Error::HasBoundary),
        }
    }
    Ok((count % 2) as u8)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle(bits: &[u8]) -> Circle {
        Circle::new(bits.to_vec()).unwrap()
    }

    fn interval(bits: &[u8]) -> Interval {
        Interval::new(bits.to_vec()).unwrap()
    }

    #[test]
    fn concatenation() {
        let c = concatenate(&interval(&[0]), &interval(&[0]));
        assert_eq!((c.edge_bits(), c.class()), (&[0, 0][..], 0));
        let c = concatenate(&interval(&[1]), &interval(&[1]));
        assert_eq!((c.edge_bits(), c.class()), (&[1, 1][..], 0));
        let c = concatenate(&interval(&[1]), &interval(&[0]));
        assert_eq!((c.edge_bits(), c.class()), (&[1, 0][..], 1));
    }

    #[test]
    fn circle_classes() {
        assert_eq!(classify_circle(&circle(&[1])), CircleClass::Bounding);
        assert_eq!(classify_circle(&circle(&[0, 0])), CircleClass::Nonbounding);
        assert_eq!(classify_circle(&circle(&[1, 1, 0])), CircleClass::Nonbounding);
    }

    #[test]
    fn bordism() {
        let nb = Component::Circle(circle(&[0]));
        let b = Component::Circle(circle(&[1]));
        assert_eq!(bordism_class(&Pin1Manifold::new(vec![nb.clone()])), Ok(1));
        assert_eq!(bordism_class(&Pin1Manifold::new(vec![b])), Ok(0));
        assert_eq!(bordism_class(&Pin1Manifold::new(vec![nb.clone(), nb.clone()])), Ok(0));
        let with_boundary = Pin1Manifold::new(vec![nb, Component::Interval(interval(&[0]))]);
        assert_eq!(bordism_class(&with_boundary), Err(Pin1Error::HasBoundary));
    }

    #[test]
    fn validation_and_counts() {
        assert_eq!(Circle::new(vec![]), Err(Pin1Error::NoEdges));
        assert_eq!(Interval::new(vec![2]), Err(Pin1Error::BadBit(2)));
        assert_eq!(circle(&[0, 1, 0]).vertex_count(), 3);
        assert_eq!(interval(&[0, 1, 0]).vertex_count(), 4);
        assert_eq!(circle(&[1, 0]).subdivide(0).edge_bits(), &[1, 0, 0]);
    }
}
