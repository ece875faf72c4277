//! Values of stacked invertible theories on points, circles and surfaces.

use arf_brown::exact::Qi;
use arf_brown::pin1::CircleClass;
use arf_brown::quadform::{Enhancement, Z4};
use arf_brown::surface::{intersection_form, GluingScheme};
use arf_brown::tqft::{evaluate_circle, evaluate_point, partition_function, stack, TheoryClass};

fn main() {
    let rp2 = GluingScheme::nonorientable(1);
    let q = Enhancement::new(intersection_form(&rp2).unwrap(), vec![Z4::new(1)]).unwrap();
    let euler = TheoryClass::euler(Qi::from_int(2)).unwrap();
    for k in [1, 2, 4, 7] {
        let t = stack(&TheoryClass::arf_brown(k), &euler);
        println!("theory {t}");
        println!("  point:          {}", evaluate_point(&t));
        println!("  bounding S¹:    {}", evaluate_circle(&t, CircleClass::Bounding));
        println!("  nonbounding S¹: {}", evaluate_circle(&t, CircleClass::Nonbounding));
        let z = partition_function(&t, &[(rp2.clone(), q.clone())]).unwrap();
        println!("  RP², q=1:       {z}");
    }
}
