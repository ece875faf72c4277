//! Ground states of the Majorana chain on small circles and intervals.

use arf_brown::majorana::{ground_states, interval_bimodule_check, ChainSetup, DEFAULT_VERTEX_CAP};
use arf_brown::pin1::{classify_circle, Circle};

fn main() {
    for bits in [vec![0u8, 0, 0, 0], vec![1, 0, 0, 0], vec![1, 1, 0, 1, 0]] {
        let setup = ChainSetup::circle(&bits);
        let r = ground_states(&setup).expect("within cap");
        let class = classify_circle(&Circle::new(bits.clone()).unwrap());
        println!(
            "circle {bits:?} ({class}): E₀ = {}, ground line {}",
            r.min_eigenvalue, r.ground_parity
        );
    }
    for bits in [vec![0u8, 0, 0], vec![1, 0, 0]] {
        let setup = ChainSetup::interval(&bits);
        let r = interval_bimodule_check(&setup, DEFAULT_VERTEX_CAP).expect("within cap");
        println!(
            "interval {bits:?}: ground dimension {}, boundary module {} (reference route {})",
            r.ground.ground_dimension, r.module, r.reference_module
        );
    }
}
