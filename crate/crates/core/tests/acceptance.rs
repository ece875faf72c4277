//! Release gate: one line per criterion, nonzero exit if any fails.

use std::time::{Duration, Instant};

use arf_brown::clifford::{irreducible_supermodule, Signature};
use arf_brown::majorana::{
    epsilon_operator, ground_states, interval_bimodule_check, majorana_operators, majorana_relation_failures,
    reference_module, ChainSetup, GroundParity, Orientation, DEFAULT_VERTEX_CAP,
};
use arf_brown::pin1::{classify_circle, Circle, CircleClass};
use arf_brown::quadform::{
    arf, arf_brown, enumerate_enhancements, gauss_sum, Cyc8, Enhancement, Z4, DEFAULT_DIM_CAP,
};
use arf_brown::surface::{analyze, intersection_form, normalize, GluingScheme, Sym};
use arf_brown::tqft::{consistency_report, evaluate_circle, TheoryClass, TqftValue};
use num_rational::Rational64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const ONE_SECOND: Duration = Duration::from_secs(1);
const BUDGETS: [Duration; 12] = [
    ONE_SECOND,
    ONE_SECOND,
    Duration::from_secs(120),
    ONE_SECOND,
    Duration::from_secs(30),
    Duration::from_secs(300),
    Duration::from_secs(120),
    Duration::from_secs(60),
    Duration::from_secs(120),
    Duration::from_secs(60),
    Duration::from_secs(60),
    Duration::from_secs(300),
];
const MAX_VERTICES: usize = 5;
const SPIN_SAMPLES: usize = 200;
const RANDOM_WORDS: usize = 500;
const SEED: u64 = 0xacce_97ed;

type Outcome = Result<String, String>;

fn check(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn rp2(value: i64) -> Enhancement {
    let form = intersection_form(&GluingScheme::nonorientable(1)).unwrap();
    Enhancement::new(form, vec![Z4::new(value)]).unwrap()
}

fn bit_patterns(len: usize) -> impl Iterator<Item = Vec<u8>> {
    (0..1u32 << len).map(move |m| (0..len).map(|i| (m >> i & 1) as u8).collect())
}

fn all_circles(max_n: usize) -> Vec<ChainSetup> {
    (1..=max_n)
        .flat_map(bit_patterns)
        .flat_map(|b| {
            [Orientation::Positive, Orientation::Negative].map(|o| ChainSetup::circle(&b).with_orientation(o))
        })
        .collect()
}

fn all_intervals(max_vertices: usize) -> Vec<ChainSetup> {
    (1..max_vertices)
        .flat_map(bit_patterns)
        .flat_map(|b| {
            [Orientation::Positive, Orientation::Negative].map(|o| ChainSetup::interval(&b).with_orientation(o))
        })
        .collect()
}

fn rp2_invariants() -> Outcome {
    let a = arf_brown(&rp2(1)).map_err(|e| e.to_string())?.exponent();
    let b = arf_brown(&rp2(3)).map_err(|e| e.to_string())?.exponent();
    check(a == 1 && b == 7, format!("exponents {a}, {b}"))?;
    Ok("q=1 ↦ ζ₈, q=3 ↦ ζ₈⁷".into())
}

fn lie_torus() -> Outcome {
    let form = intersection_form(&GluingScheme::orientable(1)).unwrap();
    let q = Enhancement::new(form, vec![Z4::new(2), Z4::new(2)]).map_err(|e| e.to_string())?;
    let a = arf(&q).map_err(|e| e.to_string())?.value();
    let e = arf_brown(&q).map_err(|e| e.to_string())?.exponent();
    check(a == 1 && e == 4, format!("Arf {a}, exponent {e}"))?;
    Ok("Arf 1, exponent 4".into())
}

fn gauss_modulus() -> Outcome {
    let mut count = 0usize;
    let surfaces = (1..=4)
        .map(GluingScheme::orientable)
        .chain((1..=8).map(GluingScheme::nonorientable))
        .chain(std::iter::once(GluingScheme::sphere()));
    for s in surfaces {
        let form = intersection_form(&s).map_err(|e| e.to_string())?;
        let expected = Cyc8::from_int(1 << form.dim());
        for q in enumerate_enhancements(&form) {
            let g = gauss_sum(&q, DEFAULT_DIM_CAP).map_err(|e| e.to_string())?;
            check(g * g.conj() == expected, format!("{s}: {:?}", q.values()))?;
            count += 1;
        }
    }
    Ok(format!("{count} enhancements"))
}

fn z8_structure() -> Outcome {
    let q1 = rp2(1);
    let mut union = q1.clone();
    for k in 2..=8 {
        union = union.direct_sum(&q1);
        let e = arf_brown(&union).map_err(|e| e.to_string())?.exponent();
        check(e as usize == k % 8, format!("{k} copies give {e}"))?;
    }
    let mixed = rp2(3).direct_sum(&intersection_form(&GluingScheme::orientable(1)).map(|f| {
        Enhancement::new(f, vec![Z4::new(2), Z4::new(2)]).unwrap()
    }).unwrap());
    let e = arf_brown(&mixed).map_err(|e| e.to_string())?.exponent();
    check(e == 3, format!("RP²(3) ⊔ T² gives {e}"))?;
    Ok("8 · RP²(1) ↦ 0".into())
}

fn spin_reduction() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for i in 0..SPIN_SAMPLES {
        let genus = rng.gen_range(1..=3);
        let form = intersection_form(&GluingScheme::orientable(genus)).unwrap();
        let values = (0..form.dim()).map(|_| Z4::new(2 * rng.gen_range(0..2))).collect();
        let q = Enhancement::new(form, values).map_err(|e| e.to_string())?;
        let e = arf_brown(&q).map_err(|e| e.to_string())?.exponent();
        let a = arf(&q).map_err(|e| e.to_string())?.value();
        check(e == 4 * a, format!("sample {i}: exponent {e}, Arf {a}"))?;
    }
    Ok(format!("{SPIN_SAMPLES} samples"))
}

fn circle_ground_lines() -> Outcome {
    let circles = all_circles(MAX_VERTICES);
    for s in &circles {
        let r = ground_states(s).map_err(|e| e.to_string())?;
        let expected = if s.m() % 2 == 1 { GroundParity::Even } else { GroundParity::Odd };
        check(
            r.ground_dimension == 1 && r.ground_parity == expected,
            format!("{:?} {}: dim {}, {}", s.edge_bits(), s.orientation, r.ground_dimension, r.ground_parity),
        )?;
        if s.m() == 0 {
            let n = s.vertex_count() as i64;
            check(r.min_eigenvalue == Rational64::new(-n, 2), format!("n={n}: {}", r.min_eigenvalue))?;
        }
    }
    Ok(format!("{} circles", circles.len()))
}

fn interval_ground_spaces() -> Outcome {
    let intervals = all_intervals(MAX_VERTICES);
    for s in &intervals {
        let r = interval_bimodule_check(s, DEFAULT_VERTEX_CAP).map_err(|e| e.to_string())?;
        let dim = r.restricted.as_ref().map(|(x, _)| x.dim());
        check(
            r.ground.ground_dimension == 2
                && r.c_w_commutes
                && r.d_v_commutes
                && r.relations_hold
                && r.irreducible
                && dim == Some(2),
            format!("{:?} {}", s.edge_bits(), s.orientation),
        )?;
    }
    Ok(format!("{} intervals", intervals.len()))
}

fn epsilon_operator_claims() -> Outcome {
    for s in all_circles(MAX_VERTICES) {
        let n = s.vertex_count();
        let eps = epsilon_operator(&s).as_diagonal().ok_or("ε not diagonal on ℋ")?;
        for (state, &x) in eps.iter().enumerate() {
            let k = state.count_ones() as usize;
            check(x == if (n - k) % 2 == 0 { 1 } else { -1 }, format!("ℋ n={n} state {state}"))?;
        }
        let a = reference_module(&s).map_err(|e| e.to_string())?;
        let eps_a = a.epsilon.as_diagonal().ok_or("ε not diagonal on A")?;
        for (state, &x) in eps_a.iter().enumerate() {
            let k = a.degree(state);
            check(x == if (k + 1) % 2 == 0 { 1 } else { -1 }, format!("A n={n} state {state}"))?;
        }
    }
    Ok("ℋ: (−1)^{n−k}, A: (−1)^{k−1}".into())
}

fn clifford_relations() -> Outcome {
    let mut systems = 0usize;
    for s in all_circles(MAX_VERTICES).iter().chain(&all_intervals(MAX_VERTICES)) {
        let failures = majorana_relation_failures(&majorana_operators(s));
        check(failures.is_empty(), format!("ℋ {:?}: {failures:?}", s.edge_bits()))?;
        systems += 1;
        if s.is_circle() {
            let a = reference_module(s).map_err(|e| e.to_string())?;
            let failures = majorana_relation_failures(&a.ops);
            check(failures.is_empty(), format!("A {:?}: {failures:?}", s.edge_bits()))?;
            systems += 1;
        }
    }
    for n in 1..=MAX_VERTICES {
        let sig = Signature::paired(n);
        let mats = irreducible_supermodule(&sig).map_err(|e| e.to_string())?;
        let failures = arf_brown::clifford::relation_failures(sig.signs(), &mats);
        check(failures.is_empty(), format!("irreducible n={n}: {failures:?}"))?;
        systems += 1;
    }
    Ok(format!("{systems} representations"))
}

fn tqft_consistency() -> Outcome {
    let report = consistency_report();
    check(report.all_passed(), format!("{:?}", report.checks.iter().filter(|c| !c.passed).collect::<Vec<_>>()))?;
    let t = TheoryClass::arf_brown(1);
    for bits in [vec![1u8], vec![0], vec![1, 1, 1], vec![0, 1]] {
        let circle = Circle::new(bits.clone()).unwrap();
        let class = classify_circle(&circle);
        let TqftValue::SuperLine { parity } = evaluate_circle(&t, class) else {
            return Err("circle value is not a line".into());
        };
        let r = ground_states(&ChainSetup::circle(&bits)).map_err(|e| e.to_string())?;
        let line = if parity.bit() == 0 { GroundParity::Even } else { GroundParity::Odd };
        let expected = if class == CircleClass::Bounding { GroundParity::Even } else { GroundParity::Odd };
        check(r.ground_parity == line && line == expected, format!("{bits:?}"))?;
    }
    Ok(format!("{} checks", report.checks.len()))
}

fn random_word(rng: &mut ChaCha8Rng) -> GluingScheme {
    let letters = rng.gen_range(1..=6);
    let mut slots: Vec<Sym> = (0..letters)
        .flat_map(|l| [Sym::new(l, rng.gen_bool(0.5)), Sym::new(l, rng.gen_bool(0.5))])
        .collect();
    slots.shuffle(rng);
    let names = (0..letters).map(|i| format!("x{i}")).collect();
    GluingScheme::from_parts(names, slots).unwrap()
}

fn surface_classification() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0x5);
    for i in 0..RANDOM_WORDS {
        let w = random_word(&mut rng);
        let before = analyze(&w);
        let n = normalize(&w);
        let after = analyze(&n);
        check(
            before.euler_char == after.euler_char && before.orientable == after.orientable,
            format!("word {i}: {w} ↦ {n}"),
        )?;
        let form = intersection_form(&n).map_err(|e| format!("word {i}: {e}"))?;
        check(
            form.gram.is_symmetric() && form.gram.rank() == form.dim() && form.dim() as i64 == 2 - after.euler_char,
            format!("word {i}: form of {n}"),
        )?;
    }
    Ok(format!("{RANDOM_WORDS} words"))
}

fn orientation_reversal() -> Outcome {
    for s in all_circles(MAX_VERTICES).into_iter().filter(|s| s.orientation == Orientation::Positive) {
        let a = ground_states(&s).map_err(|e| e.to_string())?;
        let b = ground_states(&s.reversed()).map_err(|e| e.to_string())?;
        check(
            a.spectrum == b.spectrum && a.ground_parity == b.ground_parity,
            format!("{:?}", s.edge_bits()),
        )?;
    }
    Ok("spectrum and ground parity unchanged".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("RP² Arf-Brown invariants", rp2_invariants),
        ("Lie-framed torus", lie_torus),
        ("Gauss-sum modulus", gauss_modulus),
        ("Z/8 additivity", z8_structure),
        ("spin reduction to Arf", spin_reduction),
        ("Majorana circle ground lines", circle_ground_lines),
        ("Majorana interval ground spaces", interval_ground_spaces),
        ("ε-operator eigenvalues", epsilon_operator_claims),
        ("Clifford relation suite", clifford_relations),
        ("TQFT cross-module consistency", tqft_consistency),
        ("surface classification", surface_classification),
        ("orientation reversal", orientation_reversal),
    ];
    let mut failed = 0;
    for (i, ((name, f), budget)) in criteria.iter().zip(BUDGETS).enumerate() {
        let start = Instant::now();
        let outcome = f();
        let elapsed = start.elapsed();
        let (status, detail) = match outcome {
            Ok(d) if elapsed <= budget => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; {elapsed:.2?} over budget {budget:?}")),
            Err(e) => ("FAIL", e),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("criterion {:>2} {status} {name}: {detail} ({elapsed:.2?})", i + 1);
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
