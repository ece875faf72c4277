use arf_brown::majorana::{
    epsilon_operator, epsilon_operator_in_order, ground_states, hamiltonian, interval_bimodule_check,
    majorana_operators, majorana_relation_failures, predicted_circle_parity, reference_module, BoundaryModule,
    ChainSetup, GroundParity, MajoranaError, Orientation, DEFAULT_VERTEX_CAP,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Dense = Vec<Vec<f64>>;

/// Jordan-Wigner operators with the sign taken from occupied sites above
/// `v`, a different convention from the crate's.
fn oracle_ops(n: usize) -> Vec<(Dense, Dense)> {
    let dim = 1usize << n;
    (0..n)
        .map(|v| {
            let mut c = vec![vec![0.0; dim]; dim];
            let mut d = vec![vec![0.0; dim]; dim];
            for s in 0..dim {
                let sign = if (s >> (v + 1)).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
                let t = s ^ (1 << v);
                if s >> v & 1 == 0 {
                    // creation: s → t
                    c[t][s] += sign;
                    d[t][s] += sign;
                } else {
                    c[t][s] += sign;
                    d[t][s] -= sign;
                }
            }
            (c, d)
        })
        .collect()
}

fn matmul(a: &Dense, b: &Dense) -> Dense {
    let n = a.len();
    let mut out = vec![vec![0.0; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] != 0.0 {
                for j in 0..n {
                    out[i][j] += a[i][k] * b[k][j];
                }
            }
        }
    }
    out
}

/// `H` built from scratch: edge `i` joins `i` and `i + 1`, positive
/// orientation puts the head at `i + 1`.
fn oracle_hamiltonian(bits: &[u8], closed: bool, orientation: Orientation) -> Dense {
    let n = if closed { bits.len() } else { bits.len() + 1 };
    let ops = oracle_ops(n);
    let dim = 1usize << n;
    let mut h = vec![vec![0.0; dim]; dim];
    for (i, &t) in bits.iter().enumerate() {
        let (a, b) = (i, (i + 1) % n);
        let (head, tail) = match orientation {
            Orientation::Positive => (b, a),
            Orientation::Negative => (a, b),
        };
        let term = matmul(&ops[head].0, &ops[tail].1);
        let sign = if t == 0 { 0.5 } else { -0.5 };
        for r in 0..dim {
            for c in 0..dim {
                h[r][c] += sign * term[r][c];
            }
        }
    }
    h
}

/// Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations.
fn jacobi_eigenvalues(mut a: Dense) -> Vec<f64> {
    let n = a.len();
    for _ in 0..100 {
        let off: f64 = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        if off < 1e-22 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-15 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
                let t = sign / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut ev: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    ev.sort_by(|x, y| x.partial_cmp(y).unwrap());
    ev
}

/// Eigenvalues per parity sector, `(even, odd)`.
fn oracle_spectrum(h: &Dense) -> (Vec<f64>, Vec<f64>) {
    let sector = |bit: u32| {
        let states: Vec<usize> = (0..h.len()).filter(|s| s.count_ones() % 2 == bit).collect();
        let block: Dense = states.iter().map(|&r| states.iter().map(|&c| h[r][c]).collect()).collect();
        jacobi_eigenvalues(block)
    };
    (sector(0), sector(1))
}

fn crate_spectrum(setup: &ChainSetup) -> (Vec<f64>, Vec<f64>) {
    let report = ground_states(setup).unwrap();
    let (mut even, mut odd) = (Vec::new(), Vec::new());
    for entry in &report.spectrum {
        let x = *entry.eigenvalue.numer() as f64 / *entry.eigenvalue.denom() as f64;
        even.extend(std::iter::repeat(x).take(entry.even));
        odd.extend(std::iter::repeat(x).take(entry.odd));
    }
    (even, odd)
}

fn assert_close(a: &[f64], b: &[f64]) {
    assert_eq!(a.len(), b.len());
    for (x, y) in a.iter().zip(b) {
        assert!((x - y).abs() < 1e-9, "{a:?} vs {b:?}");
    }
}

fn all_bits(len: usize) -> impl Iterator<Item = Vec<u8>> {
    (0..1u32 << len).map(move |m| (0..len).map(|i| (m >> i & 1) as u8).collect())
}

fn setups(closed: bool, len: usize) -> impl Iterator<Item = ChainSetup> {
    all_bits(len).flat_map(move |b| {
        [Orientation::Positive, Orientation::Negative].map(|o| {
            let s = if closed { ChainSetup::circle(&b) } else { ChainSetup::interval(&b) };
            s.with_orientation(o)
        })
    })
}

#[test]
fn spectra_match_float_oracle() {
    for len in 1..=4 {
        for closed in [true, false] {
            for setup in setups(closed, len) {
                let h = oracle_hamiltonian(setup.edge_bits(), closed, setup.orientation);
                let (oe, oo) = oracle_spectrum(&h);
                let (ce, co) = crate_spectrum(&setup);
                assert_close(&ce, &oe);
                assert_close(&co, &oo);
            }
        }
    }
}

#[test]
fn circle_ground_lines_exhaustive() {
    for n in 1..=5 {
        for setup in setups(true, n) {
            let r = ground_states(&setup).unwrap();
            assert_eq!(r.ground_dimension, 1, "{:?}", setup.edge_bits());
            assert_eq!(r.ground_parity, predicted_circle_parity(setup.m()));
            let expected = if (setup.m() + 1) % 2 == 0 { GroundParity::Even } else { GroundParity::Odd };
            assert_eq!(r.ground_parity, expected);
        }
        let zero = ground_states(&ChainSetup::circle(&vec![0; n])).unwrap();
        assert_eq!(zero.min_eigenvalue, num_rational::Rational64::new(-(n as i64), 2));
    }
}

#[test]
fn circle_ground_lines_random_larger() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xc1c1e);
    for _ in 0..100 {
        let n = rng.gen_range(6..=8);
        let bits: Vec<u8> = (0..n).map(|_| rng.gen_range(0..=1)).collect();
        let setup = ChainSetup::circle(&bits);
        let r = ground_states(&setup).unwrap();
        assert_eq!(r.ground_dimension, 1);
        assert_eq!(r.ground_parity, predicted_circle_parity(setup.m()), "{bits:?}");
    }
}

#[test]
fn hamiltonian_is_real_symmetric_and_relations_hold() {
    for n in 1..=5 {
        for setup in setups(true, n) {
            assert!(hamiltonian(&setup).twice.is_symmetric());
            assert!(majorana_relation_failures(&majorana_operators(&setup)).is_empty());
            let a = reference_module(&setup).unwrap();
            assert!(majorana_relation_failures(&a.ops).is_empty());
        }
    }
}

#[test]
fn reference_module_matches_state_space() {
    for n in 1..=5 {
        for setup in setups(true, n) {
            let a = reference_module(&setup).unwrap();
            let diag = a.doubled_energy(&a.edges).as_diagonal().expect("diagonal on A");
            let mut from_a: Vec<(i64, usize)> = Vec::new();
            let mut sorted = diag.clone();
            sorted.sort_unstable();
            for x in sorted {
                match from_a.last_mut() {
                    Some((v, k)) if *v == x => *k += 1,
                    _ => from_a.push((x, 1)),
                }
            }
            let from_h: Vec<(i64, usize)> = ground_states(&setup)
                .unwrap()
                .spectrum
                .iter()
                .map(|e| (*e.eigenvalue.numer() * 2 / *e.eigenvalue.denom(), e.multiplicity))
                .collect();
            assert_eq!(from_a, from_h);
        }
    }
}

#[test]
fn epsilon_is_the_grading_up_to_a_shift() {
    for n in 1..=5 {
        for setup in setups(true, n) {
            let eps = epsilon_operator(&setup).as_diagonal().expect("diagonal on the state space");
            for (s, &x) in eps.iter().enumerate() {
                let k = s.count_ones() as usize;
                assert_eq!(x, if (n - k) % 2 == 0 { 1 } else { -1 });
            }
            let a = reference_module(&setup).unwrap();
            let eps_a = a.epsilon.as_diagonal().expect("diagonal on A");
            for (s, &x) in eps_a.iter().enumerate() {
                let k = a.degree(s);
                assert_eq!(x, if (k + 1) % 2 == 0 { 1 } else { -1 });
            }
        }
    }
}

#[test]
fn epsilon_does_not_depend_on_vertex_order() {
    let setup = ChainSetup::circle(&[0, 1, 1, 0]);
    let ops = majorana_operators(&setup);
    let reference = epsilon_operator(&setup);
    let mut order = vec![0usize, 1, 2, 3];
    // all 24 permutations via Heap's algorithm
    let mut c = [0usize; 4];
    assert_eq!(epsilon_operator_in_order(&ops, &order), reference);
    let mut i = 0;
    while i < 4 {
        if c[i] < i {
            if i % 2 == 0 {
                order.swap(0, i);
            } else {
                order.swap(c[i], i);
            }
            assert_eq!(epsilon_operator_in_order(&ops, &order), reference, "{order:?}");
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

#[test]
fn orientation_reversal_keeps_spectrum_and_parity() {
    for n in 1..=5 {
        for setup in setups(true, n).filter(|s| s.orientation == Orientation::Positive) {
            let a = ground_states(&setup).unwrap();
            let b = ground_states(&setup.reversed()).unwrap();
            assert_eq!(a.spectrum, b.spectrum);
            assert_eq!(a.ground_parity, b.ground_parity);
        }
    }
}

#[test]
fn intervals_carry_the_boundary_clifford_action() {
    for edges in 1..=4 {
        for setup in setups(false, edges) {
            let r = interval_bimodule_check(&setup, DEFAULT_VERTEX_CAP).unwrap();
            assert!(r.passes(), "{:?} {}", setup.edge_bits(), setup.orientation);
            assert_eq!(r.ground.ground_dimension, 2);
            assert_eq!((r.ground.ground_even, r.ground.ground_odd), (1, 1));
            let expected = if setup.m() % 2 == 0 { BoundaryModule::Cl1 } else { BoundaryModule::PiCl1 };
            assert_eq!(r.module, expected);
            if setup.m() == 0 {
                assert_eq!(r.module, BoundaryModule::Cl1);
            }
        }
    }
}

#[test]
fn caps_and_shape_errors() {
    let big = ChainSetup::circle(&[0; 11]);
    assert!(matches!(ground_states(&big), Err(MajoranaError::CapExceeded { n: 11, cap: 10 })));
    assert!(matches!(
        interval_bimodule_check(&ChainSetup::circle(&[0, 1]), 10),
        Err(MajoranaError::NotInterval)
    ));
    assert!(matches!(reference_module(&ChainSetup::interval(&[0])), Err(MajoranaError::NotCircle)));
}
