//! The Arf-Brown theory and its stacking group, evaluated on closed pin⁻
//! 0-, 1- and 2-manifolds, together with the Euler theories `λ^χ`.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::clifford::{Parity, Signature};
use crate::exact::Qi;
use crate::majorana::{ground_states, ChainSetup, GroundParity};
use crate::pin1::{classify_circle, Circle, CircleClass};
use crate::quadform::{arf, arf_brown_with_cap, Enhancement, QuadError, RootOfUnity8, Z4, DEFAULT_DIM_CAP};
use crate::surface::{analyze, intersection_form, one_vertex_form, GluingScheme, SurfaceError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TqftError {
    #[error("Euler weight must be nonzero")]
    ZeroWeight,
    #[error("enhancement {index} is defined on a different intersection form than its surface")]
    FormMismatch { index: usize },
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

/// `(Arf-Brown)^{ab_power} ⊗ (Euler theory with weight λ)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TheoryClass {
    ab_power: u8,
    euler_weight: Qi,
}

impl TheoryClass {
    pub fn new(ab_power: i64, euler_weight: Qi) -> Result<Self, TqftError> {
        if euler_weight.is_zero() {
            return Err(TqftError::ZeroWeight);
        }
        Ok(Self {
            ab_power: ab_power.rem_euclid(8) as u8,
            euler_weight,
        })
    }

    /// A stable theory: `ab_power` copies of the Arf-Brown theory.
    pub fn arf_brown(ab_power: i64) -> Self {
        Self::new(ab_power, Qi::one()).expect("unit weight")
    }

    pub fn euler(weight: Qi) -> Result<Self, TqftError> {
        Self::new(0, weight)
    }

    pub fn ab_power(&self) -> u8 {
        self.ab_power
    }

    pub fn euler_weight(&self) -> &Qi {
        &self.euler_weight
    }

    pub fn is_stable(&self) -> bool {
        self.euler_weight == Qi::one() || self.euler_weight == Qi::from_int(-1)
    }
}

impl fmt::Display for TheoryClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ab={} euler={}", self.ab_power, self.euler_weight)
    }
}

pub fn stack(t1: &TheoryClass, t2: &TheoryClass) -> TheoryClass {
    TheoryClass {
        ab_power: (t1.ab_power + t2.ab_power) % 8,
        euler_weight: &t1.euler_weight * &t2.euler_weight,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum TqftValue {
    /// `Cℓ₁^{⊗k}` up to Morita equivalence, `k` taken mod 8.
    Superalgebra { generators: u8 },
    SuperLine { parity: Parity },
    /// `ζ₈^k · λ^χ`.
    PartitionFunction {
        root: RootOfUnity8,
        euler_weight: Qi,
        euler_char: i64,
    },
}

impl TqftValue {
    pub fn signature(&self) -> Option<Signature> {
        match self {
            TqftValue::Superalgebra { generators } => Some(Signature::cl(*generators as usize, 0)),
            _ => None,
        }
    }

    /// `λ^χ`, or `None` for values that are not numbers.
    pub fn euler_factor(&self) -> Option<Qi> {
        match self {
            TqftValue::PartitionFunction {
                euler_weight,
                euler_char,
                ..
            } => euler_weight.pow(*euler_char),
            _ => None,
        }
    }

    /// Product of two numbers with a common Euler weight.
    pub fn multiply(&self, other: &TqftValue) -> Option<TqftValue> {
        match (self, other) {
            (
                TqftValue::PartitionFunction {
                    root: r1,
                    euler_weight: w1,
                    euler_char: c1,
                },
                TqftValue::PartitionFunction {
                    root: r2,
                    euler_weight: w2,
                    euler_char: c2,
                },
            ) if w1 == w2 => Some(TqftValue::PartitionFunction {
                root: *r1 * *r2,
                euler_weight: w1.clone(),
                euler_char: c1 + c2,
            }),
            _ => None,
        }
    }
}

impl fmt::Display for TqftValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TqftValue::Superalgebra { generators: 0 } => write!(f, "C (trivial superalgebra)"),
            TqftValue::Superalgebra { generators } => write!(f, "Cℓ{}", subscript(*generators as usize)),
            TqftValue::SuperLine { parity } => write!(f, "{parity} line"),
            TqftValue::PartitionFunction { root, .. } => {
                let factor = self.euler_factor().unwrap_or_else(Qi::one);
                if factor == Qi::one() {
                    write!(f, "{root} = {}", root.surd())
                } else {
                    write!(f, "{root} · {factor} = ({}) · {factor}", root.surd())
                }
            }
        }
    }
}

fn subscript(n: usize) -> String {
    const DIGITS: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];
    n.to_string()
        .chars()
        .map(|c| DIGITS[c.to_digit(10).expect("decimal digit") as usize])
        .collect()
}

pub fn evaluate_point(t: &TheoryClass) -> TqftValue {
    TqftValue::Superalgebra {
        generators: t.ab_power,
    }
}

pub fn evaluate_circle(t: &TheoryClass, c: CircleClass) -> TqftValue {
    let parity = match c {
        CircleClass::Bounding => Parity::Even,
        CircleClass::Nonbounding => Parity::from_bit(t.ab_power as usize),
    };
    TqftValue::SuperLine { parity }
}

fn check_form(index: usize, scheme: &GluingScheme, q: &Enhancement) -> Result<(), TqftError> {
    let form = intersection_form(&one_vertex_form(scheme))?;
    if &form == q.form() {
        Ok(())
    } else {
        Err(TqftError::FormMismatch { index })
    }
}

pub fn partition_function_with_cap(
    t: &TheoryClass,
    surfaces: &[(GluingScheme, Enhancement)],
    dim_cap: usize,
) -> Result<TqftValue, TqftError> {
    let mut exponent = 0i64;
    let mut chi = 0i64;
    for (index, (scheme, q)) in surfaces.iter().enumerate() {
        check_form(index, scheme, q)?;
        exponent += arf_brown_with_cap(q, dim_cap)?.exponent.exponent() as i64;
        chi += analyze(scheme).euler_char;
    }
    Ok(TqftValue::PartitionFunction {
        root: RootOfUnity8::new(exponent * t.ab_power as i64),
        euler_weight: t.euler_weight.clone(),
        euler_char: chi,
    })
}

/// Value on a disjoint union of closed pin⁻ surfaces.
pub fn partition_function(
    t: &TheoryClass,
    surfaces: &[(GluingScheme, Enhancement)],
) -> Result<TqftValue, TqftError> {
    partition_function_with_cap(t, surfaces, DEFAULT_DIM_CAP)
}

/// An enhancement on the canonical genus-`g` word with values in `{0, 2}`.
pub fn random_spin_enhancement(genus: usize, rng: &mut impl Rng) -> Enhancement {
    let form = intersection_form(&GluingScheme::orientable(genus)).expect("one-vertex word");
    let values = (0..form.dim()).map(|_| Z4::new(2 * rng.gen_range(0..2))).collect();
    Enhancement::new(form, values).expect("even values on an even form")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConsistencyReport {
    pub checks: Vec<Check>,
}

impl ConsistencyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Majorana ground parity against the Arf-Brown line on every circle with
/// at most `max_edges` edges.
pub fn check_circle_lines(max_edges: usize) -> Check {
    let ab = TheoryClass::arf_brown(1);
    let mut tested = 0usize;
    let mut failures = Vec::new();
    for n in 1..=max_edges {
        for mask in 0..(1u32 << n) {
            let bits: Vec<u8> = (0..n).map(|i| ((mask >> i) & 1) as u8).collect();
            let circle = Circle::new(bits.clone()).expect("nonempty");
            let expected = match evaluate_circle(&ab, classify_circle(&circle)) {
                TqftValue::SuperLine { parity: Parity::Even } => GroundParity::Even,
                _ => GroundParity::Odd,
            };
            let found = ground_states(&ChainSetup::circle(&bits)).map(|r| r.ground_parity);
            tested += 1;
            if found.as_ref() != Ok(&expected) {
                failures.push(format!("{bits:?}: {found:?} vs {expected}"));
            }
        }
    }
    Check {
        name: "majorana ground line matches Arf-Brown circle parity".into(),
        passed: failures.is_empty(),
        detail: if failures.is_empty() {
            format!("{tested} circles with at most {max_edges} edges")
        } else {
            failures.join("; ")
        },
    }
}

/// The torus enhancement with `q(e) = q(f) = 2` has Arf-Brown invariant −1.
pub fn check_lie_torus() -> Check {
    let form = intersection_form(&GluingScheme::orientable(1)).expect("one-vertex word");
    let q = Enhancement::new(form, vec![Z4::new(2), Z4::new(2)]).expect("even values");
    let ab = arf_brown_with_cap(&q, DEFAULT_DIM_CAP);
    let passed = matches!(&ab, Ok(v) if v.exponent.exponent() == 4);
    Check {
        name: "Lie-framed torus has Arf-Brown invariant -1".into(),
        passed,
        detail: match ab {
            Ok(v) => format!("exponent {}", v.exponent.exponent()),
            Err(e) => e.to_string(),
        },
    }
}

/// Random spin surfaces of genus at most 3 have exponents `4·Arf`.
pub fn check_spin_reduction(samples: usize, seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for _ in 0..samples {
        let genus = rng.gen_range(1..=3);
        let q = random_spin_enhancement(genus, &mut rng);
        let k = arf_brown_with_cap(&q, DEFAULT_DIM_CAP).map(|v| v.exponent.exponent());
        let a = arf(&q).map(|a| a.value());
        match (k, a) {
            (Ok(k), Ok(a)) if k == 4 * a => {}
            other => failures.push(format!("genus {genus}, values {:?}: {other:?}", q.values())),
        }
    }
    Check {
        name: "spin surfaces give exponents 0 or 4".into(),
        passed: failures.is_empty(),
        detail: if failures.is_empty() {
            format!("{samples} random even enhancements")
        } else {
            failures.join("; ")
        },
    }
}

pub fn consistency_report() -> ConsistencyReport {
    ConsistencyReport {
        checks: vec![
            check_circle_lines(6),
            check_lie_torus(),
            check_spin_reduction(50, 0x5eed),
        ],
    }
}

/// `{object_kind, theory: {ab_power, euler_weight}, value}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TqftRecord {
    pub object_kind: String,
    pub name: String,
    pub theory: TheoryRecord,
    pub value: TqftValue,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoryRecord {
    pub ab_power: u8,
    pub euler_weight: Qi,
}

impl From<&TheoryClass> for TheoryRecord {
    fn from(t: &TheoryClass) -> Self {
        Self {
            ab_power: t.ab_power,
            euler_weight: t.euler_weight.clone(),
        }
    }
}
