//! The time-reversal-invariant Majorana chain on a combinatorial pin⁻
//! 1-manifold.
//!
//! States are subsets of the vertex set (bit `v` of the index is vertex
//! `v`), graded by cardinality. Every operator built here has integer
//! entries; the Hamiltonian is stored doubled so that its spectrum is
//! integral and all spectral questions are decided by exact kernels.

use std::fmt;

use num_rational::Rational64;
use thiserror::Error;

use crate::clifford::{commutant_dimension, relation_failures, Parity, SuperMatrix};
use crate::exact::{integer_kernel, qi_kernel, Overflow, Qi};
use crate::pin1::{Circle, Component, Interval};

pub const DEFAULT_VERTEX_CAP: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MajoranaError {
    #[error("{n} vertices exceeds the cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("this operation needs a circle component")]
    NotCircle,
    #[error("this operation needs an interval component")]
    NotInterval,
    #[error(transparent)]
    Overflow(#[from] Overflow),
}

/// Sparse integer matrix with sorted, zero-free rows.
#[derive(Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    dim: usize,
    rows: Vec<Vec<(usize, i64)>>,
}

impl SparseMatrix {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            rows: vec![Vec::new(); dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::diagonal(&vec![1; dim])
    }

    pub fn diagonal(diag: &[i64]) -> Self {
        Self {
            dim: diag.len(),
            rows: diag
                .iter()
                .enumerate()
                .map(|(i, &x)| if x == 0 { vec![] } else { vec![(i, x)] })
                .collect(),
        }
    }

    /// Sums duplicate `(row, col)` entries.
    pub fn from_triplets(dim: usize, entries: impl IntoIterator<Item = (usize, usize, i64)>) -> Self {
        let mut rows: Vec<Vec<(usize, i64)>> = vec![Vec::new(); dim];
        for (r, c, x) in entries {
            assert!(r < dim && c < dim, "entry out of range");
            rows[r].push((c, x));
        }
        for row in rows.iter_mut() {
            row.sort_unstable_by_key(|&(c, _)| c);
            let mut merged: Vec<(usize, i64)> = Vec::with_capacity(row.len());
            for &(c, x) in row.iter() {
                match merged.last_mut() {
                    Some((lc, lx)) if *lc == c => *lx += x,
                    _ => merged.push((c, x)),
                }
            }
            merged.retain(|&(_, x)| x != 0);
            *row = merged;
        }
        Self { dim, rows }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn row(&self, i: usize) -> &[(usize, i64)] {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.rows[i]
            .binary_search_by_key(&j, |&(c, _)| c)
            .map(|k| self.rows[i][k].1)
            .unwrap_or(0)
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |&(c, x)| (r, c, x)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let mut scratch = vec![0i64; self.dim];
        let mut touched = Vec::new();
        let mut rows = Vec::with_capacity(self.dim);
        for row in &self.rows {
            for &(k, a) in row {
                for &(j, b) in &other.rows[k] {
                    if scratch[j] == 0 {
                        touched.push(j);
                    }
                    scratch[j] += a * b;
                }
            }
            touched.sort_unstable();
            touched.dedup();
            let mut out = Vec::with_capacity(touched.len());
            for &j in &touched {
                if scratch[j] != 0 {
                    out.push((j, scratch[j]));
                }
                scratch[j] = 0;
            }
            touched.clear();
            rows.push(out);
        }
        Self { dim: self.dim, rows }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        Self::from_triplets(self.dim, self.triplets().chain(other.triplets()))
    }

    pub fn scale(&self, c: i64) -> Self {
        Self::from_triplets(self.dim, self.triplets().map(|(r, k, x)| (r, k, c * x)))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1))
    }

    pub fn transpose(&self) -> Self {
        Self::from_triplets(self.dim, self.triplets().map(|(r, c, x)| (c, r, x)))
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn is_scalar(&self, c: i64) -> bool {
        self == &Self::identity(self.dim).scale(c)
    }

    pub fn is_symmetric(&self) -> bool {
        self == &self.transpose()
    }

    /// Diagonal entries when the matrix is diagonal.
    pub fn as_diagonal(&self) -> Option<Vec<i64>> {
        self.rows
            .iter()
            .enumerate()
            .map(|(i, row)| match row.as_slice() {
                [] => Some(0),
                [(c, x)] if *c == i => Some(*x),
                _ => None,
            })
            .collect()
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn anticommutator(&self, other: &Self) -> Self {
        self.mul(other).add(&other.mul(self))
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        self.rows
            .iter()
            .map(|row| row.iter().map(|&(c, x)| x * v[c]).sum())
            .collect()
    }

    /// Dense rows of the block with the given row and column states.
    fn dense_block(&self, states: &[usize], position: &[Option<usize>]) -> Vec<Vec<i64>> {
        states
            .iter()
            .map(|&s| {
                let mut row = vec![0i64; states.len()];
                for &(c, x) in &self.rows[s] {
                    if let Some(p) = position[c] {
                        row[p] = x;
                    }
                }
                row
            })
            .collect()
    }
}

impl fmt::Debug for SparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SparseMatrix({})", self.dim)?;
        for (i, row) in self.rows.iter().enumerate() {
            writeln!(f, "  {i}: {row:?}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Orientation {
    #[default]
    Positive,
    Negative,
}

impl Orientation {
    pub fn reversed(self) -> Self {
        match self {
            Orientation::Positive => Orientation::Negative,
            Orientation::Negative => Orientation::Positive,
        }
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Orientation::Positive => "+",
            Orientation::Negative => "-",
        })
    }
}

/// An edge with `∂e = head − tail` in the chosen orientation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub head: usize,
    pub tail: usize,
    pub bit: u8,
}

/// A component with its vertices numbered `0..n` along the underlying
/// order; edge `i` joins vertices `i` and `i + 1 (mod n)`. With positive
/// orientation vertex `i + 1` is the head, with negative orientation `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainSetup {
    pub component: Component,
    pub orientation: Orientation,
}

impl ChainSetup {
    pub fn new(component: Component, orientation: Orientation) -> Self {
        Self {
            component,
            orientation,
        }
    }

    pub fn circle(bits: &[u8]) -> Self {
        Self::new(
            Component::Circle(Circle::new(bits.to_vec()).expect("valid circle bits")),
            Orientation::Positive,
        )
    }

    pub fn interval(bits: &[u8]) -> Self {
        Self::new(
            Component::Interval(Interval::new(bits.to_vec()).expect("valid interval bits")),
            Orientation::Positive,
        )
    }

    pub fn with_orientation(mut self, orientation: Orientation) -> Self {
        self.orientation = orientation;
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.component.vertex_count()
    }

    pub fn edge_bits(&self) -> &[u8] {
        self.component.edge_bits()
    }

    pub fn is_circle(&self) -> bool {
        self.component.is_closed()
    }

    /// Number of edges with bit 1.
    pub fn m(&self) -> usize {
        self.edge_bits().iter().filter(|&&b| b == 1).count()
    }

    fn oriented(&self, a: usize, b: usize, bit: u8) -> Edge {
        match self.orientation {
            Orientation::Positive => Edge { head: b, tail: a, bit },
            Orientation::Negative => Edge { head: a, tail: b, bit },
        }
    }

    /// The edges carrying Hamiltonian terms.
    pub fn edges(&self) -> Vec<Edge> {
        let n = self.vertex_count();
        self.edge_bits()
            .iter()
            .enumerate()
            .map(|(i, &bit)| self.oriented(i, (i + 1) % n, bit))
            .collect()
    }

    /// For an interval, the edges of the circle obtained by adding one
    /// extra edge with bit 0 from the last vertex back to the first.
    pub fn closure_edges(&self) -> Vec<Edge> {
        let mut edges = self.edges();
        if !self.is_circle() {
            let n = self.vertex_count();
            edges.push(self.oriented(n - 1, 0, 0));
        }
        edges
    }

    /// `(w, v)` with `∂I = v − w` for an interval.
    pub fn boundary(&self) -> Option<(usize, usize)> {
        if self.is_circle() {
            return None;
        }
        let last = self.vertex_count() - 1;
        Some(match self.orientation {
            Orientation::Positive => (0, last),
            Orientation::Negative => (last, 0),
        })
    }

    pub fn reversed(&self) -> Self {
        self.clone().with_orientation(self.orientation.reversed())
    }
}

/// `Λ*(F)` on `n` vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StateSpace {
    pub n: usize,
}

impl StateSpace {
    pub fn dim(&self) -> usize {
        1 << self.n
    }

    pub fn degree(state: usize) -> usize {
        state.count_ones() as usize
    }

    pub fn states_of_parity(&self, parity: Parity) -> Vec<usize> {
        let bit = parity.bit() as u32;
        (0..self.dim()).filter(|s| s.count_ones() % 2 == bit).collect()
    }
}

fn preceding_sign(state: usize, v: usize) -> i64 {
    if (state & ((1 << v) - 1)).count_ones() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Exterior product with `δ_v`.
pub fn creation(n: usize, v: usize) -> SparseMatrix {
    SparseMatrix::from_triplets(
        1 << n,
        (0..1usize << n)
            .filter(|s| s & (1 << v) == 0)
            .map(|s| (s | (1 << v), s, preceding_sign(s, v))),
    )
}

/// Interior product with `δ_v`.
pub fn annihilation(n: usize, v: usize) -> SparseMatrix {
    SparseMatrix::from_triplets(
        1 << n,
        (0..1usize << n)
            .filter(|s| s & (1 << v) != 0)
            .map(|s| (s & !(1 << v), s, preceding_sign(s, v))),
    )
}

/// `(c_v, d_v)` for every vertex, indexed by vertex.
pub fn majorana_operators(setup: &ChainSetup) -> Vec<(SparseMatrix, SparseMatrix)> {
    let n = setup.vertex_count();
    (0..n)
        .map(|v| {
            let e = creation(n, v);
            let i = annihilation(n, v);
            (e.add(&i), e.sub(&i))
        })
        .collect()
}

/// `2H`, where `H = ½ Σ_e (−1)^{t(e)} c_head d_tail`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hamiltonian {
    pub twice: SparseMatrix,
}

impl Hamiltonian {
    pub fn entry(&self, i: usize, j: usize) -> Rational64 {
        Rational64::new(self.twice.get(i, j), 2)
    }

    pub fn dim(&self) -> usize {
        self.twice.dim()
    }
}

fn doubled_hamiltonian(
    ops: &[(SparseMatrix, SparseMatrix)],
    edges: &[Edge],
    dim: usize,
) -> SparseMatrix {
    let mut twice = SparseMatrix::zero(dim);
    for e in edges {
        let term = ops[e.head].0.mul(&ops[e.tail].1);
        let sign = if e.bit == 0 { 1 } else { -1 };
        twice = twice.add(&term.scale(sign));
    }
    twice
}

pub fn hamiltonian(setup: &ChainSetup) -> Hamiltonian {
    let ops = majorana_operators(setup);
    Hamiltonian {
        twice: doubled_hamiltonian(&ops, &setup.edges(), 1 << setup.vertex_count()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroundParity {
    Even,
    Odd,
    Mixed,
}

impl fmt::Display for GroundParity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroundParity::Even => "even",
            GroundParity::Odd => "odd",
            GroundParity::Mixed => "mixed",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumEntry {
    pub eigenvalue: Rational64,
    pub multiplicity: usize,
    pub even: usize,
    pub odd: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundStateReport {
    pub n: usize,
    pub min_eigenvalue: Rational64,
    pub ground_dimension: usize,
    pub ground_parity: GroundParity,
    pub ground_even: usize,
    pub ground_odd: usize,
    /// Ascending eigenvalues of `H`.
    pub spectrum: Vec<SpectrumEntry>,
}

fn sector_kernel(
    twice: &SparseMatrix,
    lambda: i64,
    states: &[usize],
    position: &[Option<usize>],
) -> Result<Vec<Vec<i64>>, Overflow> {
    let mut block = twice.dense_block(states, position);
    for (i, row) in block.iter_mut().enumerate() {
        row[i] -= lambda;
    }
    let kernel = integer_kernel(&block, states.len())?;
    Ok(kernel
        .into_iter()
        .map(|v| {
            let mut full = vec![0i64; twice.dim()];
            for (k, &s) in states.iter().enumerate() {
                full[s] = v[k];
            }
            full
        })
        .collect())
}

fn sector_positions(dim: usize, states: &[usize]) -> Vec<Option<usize>> {
    let mut position = vec![None; dim];
    for (k, &s) in states.iter().enumerate() {
        position[s] = Some(k);
    }
    position
}

/// Kernel of `2H − λ` split by parity: `(even vectors, odd vectors)`.
pub fn eigenspace(
    twice: &SparseMatrix,
    n: usize,
    lambda: i64,
) -> Result<(Vec<Vec<i64>>, Vec<Vec<i64>>), Overflow> {
    let space = StateSpace { n };
    let mut out = Vec::with_capacity(2);
    for parity in [Parity::Even, Parity::Odd] {
        let states = space.states_of_parity(parity);
        let position = sector_positions(space.dim(), &states);
        out.push(sector_kernel(twice, lambda, &states, &position)?);
    }
    let odd = out.pop().expect("two sectors");
    let even = out.pop().expect("two sectors");
    Ok((even, odd))
}

fn classify_ground(even: usize, odd: usize) -> GroundParity {
    match (even > 0, odd > 0) {
        (true, true) => GroundParity::Mixed,
        (true, false) => GroundParity::Even,
        _ => GroundParity::Odd,
    }
}

/// Spectrum of an even integer matrix `2H` on `Λ*(C^n)` with `e` edge
/// terms, by scanning `λ = −e, −e + 2, …, e`.
pub fn scan_spectrum(twice: &SparseMatrix, n: usize, edge_terms: usize) -> Result<GroundStateReport, Overflow> {
    let space = StateSpace { n };
    let sectors: Vec<(Vec<usize>, Vec<Option<usize>>)> = [Parity::Even, Parity::Odd]
        .into_iter()
        .map(|p| {
            let states = space.states_of_parity(p);
            let position = sector_positions(space.dim(), &states);
            (states, position)
        })
        .collect();
    let e = edge_terms as i64;
    let mut spectrum = Vec::new();
    let mut total = 0usize;
    let mut lambda = -e;
    while lambda <= e && total < space.dim() {
        let mut dims = [0usize; 2];
        for (k, (states, position)) in sectors.iter().enumerate() {
            if !states.is_empty() {
                dims[k] = sector_kernel(twice, lambda, states, position)?.len();
            }
        }
        let mult = dims[0] + dims[1];
        if mult > 0 {
            spectrum.push(SpectrumEntry {
                eigenvalue: Rational64::new(lambda, 2),
                multiplicity: mult,
                even: dims[0],
                odd: dims[1],
            });
            total += mult;
        }
        lambda += 2;
    }
    assert_eq!(total, space.dim(), "eigenvalues of 2H must lie in [-e, e] with parity of e");
    let ground = &spectrum[0];
    Ok(GroundStateReport {
        n,
        min_eigenvalue: ground.eigenvalue,
        ground_dimension: ground.multiplicity,
        ground_parity: classify_ground(ground.even, ground.odd),
        ground_even: ground.even,
        ground_odd: ground.odd,
        spectrum,
    })
}

pub fn ground_states_with_cap(setup: &ChainSetup, cap: usize) -> Result<GroundStateReport, MajoranaError> {
    let n = setup.vertex_count();
    if n > cap {
        return Err(MajoranaError::CapExceeded { n, cap });
    }
    let h = hamiltonian(setup);
    Ok(scan_spectrum(&h.twice, n, setup.edges().len())?)
}

pub fn ground_states(setup: &ChainSetup) -> Result<GroundStateReport, MajoranaError> {
    ground_states_with_cap(setup, DEFAULT_VERTEX_CAP)
}

/// `∏ d_v c_v` with the vertices taken in `order`.
pub fn epsilon_operator_in_order(ops: &[(SparseMatrix, SparseMatrix)], order: &[usize]) -> SparseMatrix {
    let dim = ops.first().map_or(1, |(c, _)| c.dim());
    order.iter().fold(SparseMatrix::identity(dim), |acc, &v| {
        acc.mul(&ops[v].1).mul(&ops[v].0)
    })
}

/// `ε = ∏_v d_v c_v` on the state space, vertices in increasing order.
pub fn epsilon_operator(setup: &ChainSetup) -> SparseMatrix {
    let ops = majorana_operators(setup);
    let order: Vec<usize> = (0..setup.vertex_count()).collect();
    epsilon_operator_in_order(&ops, &order)
}

/// Violations of `c_v² = 1`, `d_v² = −1` and pairwise anticommutation,
/// generators listed as `c_0, d_0, c_1, d_1, …`.
pub fn majorana_relation_failures(ops: &[(SparseMatrix, SparseMatrix)]) -> Vec<String> {
    let gens: Vec<(String, &SparseMatrix, i64)> = ops
        .iter()
        .enumerate()
        .flat_map(|(v, (c, d))| [(format!("c{v}"), c, 1), (format!("d{v}"), d, -1)])
        .collect();
    let mut out = Vec::new();
    for (i, (name, g, sign)) in gens.iter().enumerate() {
        if !g.mul(g).is_scalar(*sign) {
            out.push(format!("{name}^2 != {sign}"));
        }
        for (other, h, _) in gens.iter().skip(i + 1) {
            if !g.anticommutator(h).is_zero() {
                out.push(format!("{name} and {other} do not anticommute"));
            }
        }
    }
    out
}

/// The module `A = ⊗_e C_e^{1|1}` over a closed edge list.
///
/// Tensor basis bit `j` is the basis index in factor `j`. Each factor is
/// graded so that `φ(v₊)φ(v₋)` is its grading operator: index 1 is even,
/// index 0 is odd.
#[derive(Debug, Clone)]
pub struct ReferenceModule {
    pub edges: Vec<Edge>,
    /// `(c_v, d_v)` indexed by vertex.
    pub ops: Vec<(SparseMatrix, SparseMatrix)>,
    pub epsilon: SparseMatrix,
}

impl ReferenceModule {
    pub fn factors(&self) -> usize {
        self.edges.len()
    }

    pub fn dim(&self) -> usize {
        1 << self.factors()
    }

    /// Number of odd tensor factors.
    pub fn degree(&self, state: usize) -> usize {
        self.factors() - state.count_ones() as usize
    }

    /// Diagonal of `2H` on `A` summed over the given edges.
    pub fn doubled_energy(&self, edges: &[Edge]) -> SparseMatrix {
        doubled_hamiltonian(&self.ops, edges, self.dim())
    }
}

fn koszul_factor_action(factors: usize, j: usize, op: [[i64; 2]; 2]) -> SparseMatrix {
    let dim = 1usize << factors;
    let below = (1usize << j) - 1;
    let mut triplets = Vec::with_capacity(dim);
    for col in 0..dim {
        // degree of a factor is 1 - bit
        let odd_before = j as u32 - (col & below).count_ones();
        let koszul = if odd_before % 2 == 0 { 1 } else { -1 };
        let b = (col >> j) & 1;
        for (a, row) in op.iter().enumerate() {
            if row[b] != 0 {
                triplets.push(((col & !(1 << j)) | (a << j), col, koszul * row[b]));
            }
        }
    }
    SparseMatrix::from_triplets(dim, triplets)
}

fn build_reference(n: usize, edges: Vec<Edge>) -> ReferenceModule {
    let factors = edges.len();
    let dim = 1usize << factors;
    let mut c: Vec<Option<SparseMatrix>> = vec![None; n];
    let mut d: Vec<Option<SparseMatrix>> = vec![None; n];
    for (j, e) in edges.iter().enumerate() {
        c[e.head] = Some(koszul_factor_action(factors, j, [[0, 1], [1, 0]]));
        d[e.tail] = Some(koszul_factor_action(factors, j, [[0, 1], [-1, 0]]));
    }
    let ops: Vec<(SparseMatrix, SparseMatrix)> = c
        .into_iter()
        .zip(d)
        .map(|(c, d)| {
            (
                c.unwrap_or_else(|| SparseMatrix::zero(dim)),
                d.unwrap_or_else(|| SparseMatrix::zero(dim)),
            )
        })
        .collect();
    let order: Vec<usize> = (0..n).collect();
    let epsilon = epsilon_operator_in_order(&ops, &order);
    ReferenceModule { edges, ops, epsilon }
}

/// `A` for a circle, each edge factor acted on by its boundary pair
/// `c_head ↦ φ(v₊)`, `d_tail ↦ φ(v₋)`.
pub fn reference_module(setup: &ChainSetup) -> Result<ReferenceModule, MajoranaError> {
    if !setup.is_circle() {
        return Err(MajoranaError::NotCircle);
    }
    let module = build_reference(setup.vertex_count(), setup.edges());
    debug_assert!(majorana_relation_failures(&module.ops).is_empty());
    Ok(module)
}

/// Which graded `Cℓ₁,₁`-module the interval ground space is.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryModule {
    Cl1,
    PiCl1,
    Undetermined,
}

impl fmt::Display for BoundaryModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundaryModule::Cl1 => "Cℓ₁",
            BoundaryModule::PiCl1 => "ΠCℓ₁",
            BoundaryModule::Undetermined => "undetermined",
        })
    }
}

#[derive(Debug, Clone)]
pub struct IntervalReport {
    pub n: usize,
    pub ground: GroundStateReport,
    /// `[c_w, H] = 0`.
    pub c_w_commutes: bool,
    /// `[d_v, H] = 0`.
    pub d_v_commutes: bool,
    /// `c_w` and `d_v` on the ground space, even basis vectors first.
    pub restricted: Option<(SuperMatrix, SuperMatrix)>,
    pub relations_hold: bool,
    pub irreducible: bool,
    pub module: BoundaryModule,
    /// The same identification computed on `A` with the extra closing
    /// edge, transported along `ℋ ≅ Π^{n−1}A`.
    pub reference_module: BoundaryModule,
    pub reference_spectrum_matches: bool,
}

impl IntervalReport {
    pub fn passes(&self) -> bool {
        self.ground.ground_dimension == 2
            && self.c_w_commutes
            && self.d_v_commutes
            && self.relations_hold
            && self.irreducible
            && self.module == self.reference_module
            && self.reference_spectrum_matches
    }
}

/// Coordinates of `target` in the span of `basis`.
fn coordinates(basis: &[Vec<i64>], target: &[i64]) -> Option<Vec<Qi>> {
    let k = basis.len();
    let rows: Vec<Vec<Qi>> = (0..target.len())
        .filter(|&i| target[i] != 0 || basis.iter().any(|b| b[i] != 0))
        .map(|i| {
            basis
                .iter()
                .map(|b| Qi::from_int(b[i]))
                .chain(std::iter::once(Qi::from_int(-target[i])))
                .collect()
        })
        .collect();
    let kernel = qi_kernel(&rows, k + 1);
    let v = kernel.into_iter().find(|v| !v[k].is_zero())?;
    let scale = v[k].inv()?;
    Some(v[..k].iter().map(|x| x * &scale).collect())
}

fn restrict(op: &SparseMatrix, basis: &[Vec<i64>], dim_even: usize) -> Option<SuperMatrix> {
    let k = basis.len();
    let mut entries = vec![Qi::zero(); k * k];
    for (col, b) in basis.iter().enumerate() {
        let coords = coordinates(basis, &op.apply(b))?;
        for (row, x) in coords.into_iter().enumerate() {
            entries[row * k + col] = x;
        }
    }
    SuperMatrix::new(dim_even, k - dim_even, entries, Parity::Odd).ok()
}

/// Sign of `c_w d_v` on an even vector `e` with `c_w d_v e = ±e`.
fn boundary_sign(x: &SparseMatrix, y: &SparseMatrix, e: &[i64]) -> BoundaryModule {
    let image = x.apply(&y.apply(e));
    if image == e {
        BoundaryModule::Cl1
    } else if image.iter().zip(e).all(|(a, b)| *a == -b) {
        BoundaryModule::PiCl1
    } else {
        BoundaryModule::Undetermined
    }
}

fn flip(m: BoundaryModule, times: usize) -> BoundaryModule {
    match (m, times % 2) {
        (BoundaryModule::Cl1, 1) => BoundaryModule::PiCl1,
        (BoundaryModule::PiCl1, 1) => BoundaryModule::Cl1,
        (m, _) => m,
    }
}

fn diagonal_spectrum(diag: &[i64]) -> Vec<(i64, usize)> {
    let mut values: Vec<i64> = diag.to_vec();
    values.sort_unstable();
    let mut out: Vec<(i64, usize)> = Vec::new();
    for v in values {
        match out.last_mut() {
            Some((last, count)) if *last == v => *count += 1,
            _ => out.push((v, 1)),
        }
    }
    out
}

/// The boundary Clifford action on the ground space of an interval.
///
/// `x = c_w` and `y = d_v` are the Majoranas absent from the Hamiltonian.
/// The ground space is identified as `Cℓ₁` when `xy` acts by `+1` on its
/// even part and as `ΠCℓ₁` when it acts by `−1`.
pub fn interval_bimodule_check(setup: &ChainSetup, cap: usize) -> Result<IntervalReport, MajoranaError> {
    let (w, v) = setup.boundary().ok_or(MajoranaError::NotInterval)?;
    let n = setup.vertex_count();
    if n > cap {
        return Err(MajoranaError::CapExceeded { n, cap });
    }
    let ops = majorana_operators(setup);
    let edges = setup.edges();
    let twice = doubled_hamiltonian(&ops, &edges, 1 << n);
    let ground = scan_spectrum(&twice, n, edges.len())?;
    let x = &ops[w].0;
    let y = &ops[v].1;
    let c_w_commutes = x.commutator(&twice).is_zero();
    let d_v_commutes = y.commutator(&twice).is_zero();

    let lambda = *ground.min_eigenvalue.numer() * 2 / *ground.min_eigenvalue.denom();
    let (even, odd) = eigenspace(&twice, n, lambda)?;
    let basis: Vec<Vec<i64>> = even.iter().chain(&odd).cloned().collect();
    let restricted = restrict(x, &basis, even.len()).zip(restrict(y, &basis, even.len()));
    let (relations_hold, irreducible) = match &restricted {
        Some((rx, ry)) => {
            let pair = [rx.clone(), ry.clone()];
            (
                relation_failures(&[1, -1], &pair).is_empty(),
                basis.len() == 2 && commutant_dimension(&pair) == 1,
            )
        }
        None => (false, false),
    };
    let module = match even.as_slice() {
        [e] => boundary_sign(x, y, e),
        _ => BoundaryModule::Undetermined,
    };

    let reference = build_reference(n, setup.closure_edges());
    let energy = reference.doubled_energy(&edges);
    let diag = energy.as_diagonal().expect("edge terms act diagonally on A");
    let ground_energy = *diag.iter().min().expect("nonempty");
    let reference_even: Vec<usize> = (0..reference.dim())
        .filter(|&s| diag[s] == ground_energy && reference.degree(s) % 2 == 0)
        .collect();
    let reference_module = match reference_even.as_slice() {
        [s] => {
            let mut e = vec![0i64; reference.dim()];
            e[*s] = 1;
            let rx = &reference.ops[w].0;
            let ry = &reference.ops[v].1;
            flip(boundary_sign(rx, ry, &e), n - 1)
        }
        _ => BoundaryModule::Undetermined,
    };
    let reference_spectrum: Vec<(Rational64, usize)> = diagonal_spectrum(&diag)
        .into_iter()
        .map(|(l, m)| (Rational64::new(l, 2), m))
        .collect();
    let spectrum: Vec<(Rational64, usize)> = ground
        .spectrum
        .iter()
        .map(|s| (s.eigenvalue, s.multiplicity))
        .collect();

    Ok(IntervalReport {
        n,
        c_w_commutes,
        d_v_commutes,
        restricted,
        relations_hold,
        irreducible,
        module,
        reference_module,
        reference_spectrum_matches: reference_spectrum == spectrum,
        ground,
    })
}

/// Expected parity of the ground line on a circle with `m` one-edges.
pub fn predicted_circle_parity(m: usize) -> GroundParity {
    if m % 2 == 1 {
        GroundParity::Even
    } else {
        GroundParity::Odd
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_vertex_circle() {
        let setup = ChainSetup::circle(&[0]);
        let ops = majorana_operators(&setup);
        let (c, d) = &ops[0];
        let h = hamiltonian(&setup);
        assert_eq!(h.twice, c.mul(d));
        // c d is +1 on the empty state and -1 on the occupied one
        assert_eq!(h.twice.as_diagonal(), Some(vec![1, -1]));
        let report = ground_states(&setup).unwrap();
        assert_eq!(report.min_eigenvalue, Rational64::new(-1, 2));
        assert_eq!(report.ground_parity, GroundParity::Odd);
    }

    #[test]
    fn two_vertex_circle_hamiltonian() {
        let setup = ChainSetup::circle(&[0, 0]);
        let ops = majorana_operators(&setup);
        let expected = ops[1].0.mul(&ops[0].1).add(&ops[0].0.mul(&ops[1].1));
        assert_eq!(hamiltonian(&setup).twice, expected);
    }

    #[test]
    fn operator_relations() {
        for n in 1..=4 {
            let setup = ChainSetup::circle(&vec![0; n]);
            let ops = majorana_operators(&setup);
            assert!(majorana_relation_failures(&ops).is_empty(), "n = {n}");
            for (c, d) in &ops {
                assert!(c.mul(c).is_scalar(1));
                assert!(d.mul(d).is_scalar(-1));
            }
        }
    }

    #[test]
    fn three_vertex_ground_state() {
        let report = ground_states(&ChainSetup::circle(&[0, 0, 0])).unwrap();
        assert_eq!(report.min_eigenvalue, Rational64::new(-3, 2));
        assert_eq!(report.ground_dimension, 1);
        assert_eq!(report.spectrum.iter().map(|s| s.multiplicity).sum::<usize>(), 8);
    }

    #[test]
    fn epsilon_on_extreme_states() {
        for n in 1..=4 {
            let eps = epsilon_operator(&ChainSetup::circle(&vec![0; n]));
            let diag = eps.as_diagonal().unwrap();
            assert_eq!(diag[0], if n % 2 == 0 { 1 } else { -1 });
            assert_eq!(diag[(1 << n) - 1], 1);
        }
    }

    #[test]
    fn cap_is_enforced() {
        let setup = ChainSetup::circle(&[0; 4]);
        assert_eq!(
            ground_states_with_cap(&setup, 3),
            Err(MajoranaError::CapExceeded { n: 4, cap: 3 })
        );
    }

    #[test]
    fn two_vertex_interval() {
        let report = interval_bimodule_check(&ChainSetup::interval(&[0]), 10).unwrap();
        assert_eq!(report.ground.ground_dimension, 2);
        assert!(report.c_w_commutes && report.d_v_commutes);
        assert!(report.irreducible);
        assert_eq!(report.module, BoundaryModule::Cl1);
        assert!(report.passes(), "{report:?}");
    }

    #[test]
    fn reference_module_energy_is_diagonal() {
        let setup = ChainSetup::circle(&[0, 1, 0]);
        let a = reference_module(&setup).unwrap();
        let diag = a.doubled_energy(&setup.edges()).as_diagonal().unwrap();
        for (s, &x) in diag.iter().enumerate() {
            let expected: i64 = setup
                .edges()
                .iter()
                .enumerate()
                .map(|(j, e)| {
                    let g = if (s >> j) & 1 == 1 { 1 } else { -1 };
                    if e.bit == 0 { g } else { -g }
                })
                .sum();
            assert_eq!(x, expected);
        }
    }
}
