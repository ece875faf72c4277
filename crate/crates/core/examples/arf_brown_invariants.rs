//! Arf-Brown invariants of every enhancement on RP², the Klein bottle and
//! the torus.

use arf_brown::quadform::{arf, arf_brown_with_cap, enumerate_enhancements, DEFAULT_DIM_CAP};
use arf_brown::surface::{intersection_form, GluingScheme};

fn main() {
    let surfaces = [
        ("RP²", GluingScheme::nonorientable(1)),
        ("Klein bottle", GluingScheme::nonorientable(2)),
        ("torus", GluingScheme::orientable(1)),
    ];
    for (name, s) in surfaces {
        println!("{name}: {s}");
        let form = intersection_form(&s).expect("canonical words have one vertex");
        for q in enumerate_enhancements(&form) {
            let ab = arf_brown_with_cap(&q, DEFAULT_DIM_CAP).expect("small form");
            let values: Vec<String> = q.values().iter().map(|v| v.to_string()).collect();
            let arf_part = match arf(&q) {
                Ok(a) => format!(", Arf {a}"),
                Err(_) => String::new(),
            };
            println!(
                "  q = ({}) S = {:<12} {} = {}{arf_part}",
                values.join(", "),
                ab.gauss_sum.to_string(),
                ab.exponent,
                ab.exponent.surd()
            );
        }
    }
}
