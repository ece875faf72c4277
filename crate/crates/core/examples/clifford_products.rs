//! Products in Cℓ₁,₁ and the supermodule C^{1|1}.

use arf_brown::clifford::{cl11_rep, CliffordElement, Signature, SuperMatrix};
use arf_brown::exact::Qi;

fn main() {
    let sig = Signature::cl(1, 1);
    let basis: Vec<CliffordElement> = (0..4u64).map(|m| CliffordElement::monomial(&sig, m, Qi::one())).collect();
    println!("multiplication table of {sig}");
    for a in &basis {
        let row: Vec<String> = basis.iter().map(|b| format!("{:<12}", a.multiply(b).unwrap().to_string())).collect();
        println!("  {:<12}| {}", a.to_string(), row.join(" "));
    }

    let (plus, minus) = cl11_rep();
    let product = plus.mul(&minus).unwrap();
    println!("φ(v₊)φ(v₋) = {product:?}");
    println!("grading    = {:?}", SuperMatrix::grading(1, 1));
}
