//! Classify a few gluing words and print their mod 2 intersection forms.

use arf_brown::surface::{analyze, intersection_form, normalize, GluingScheme};

fn main() {
    for word in ["a b a' b'", "a b a b'", "a b c a' b c'", "a a b b c c", "a a'"] {
        let s = GluingScheme::parse(word).expect("valid word");
        let info = analyze(&s);
        let normal = normalize(&s);
        let form = intersection_form(&normal).expect("normal forms have one vertex");
        println!(
            "{word:<16} χ={:>2} {:<14} normal form: {normal}",
            info.euler_char,
            if info.orientable { "orientable" } else { "non-orientable" }
        );
        for i in 0..form.dim() {
            let row: Vec<u8> = (0..form.dim()).map(|j| form.gram.get(i, j) as u8).collect();
            println!("    {row:?}");
        }
    }
}
