//! Standard-basis arithmetic and the union/intersection reduction.

use multiseg::ring::{is_generic, order_costandard, product_standard, resolve_linked};
use multiseg::{Multisegment, RingElement};

fn main() -> multiseg::Result<()> {
    let a = RingElement::standard("[0,1]".parse()?);
    let b = RingElement::standard("[1,2]+[3,3]".parse()?);
    let ab = product_standard(&a, &b)?;
    println!("({a}) · ({b}) = {ab}");
    println!("as JSON: {}", serde_json::to_string(&ab).expect("serialisable"));

    let m: Multisegment = "[0,2]+[1,3]+[2,4]+[5,5]".parse()?;
    let order: Vec<String> = order_costandard(&m).iter().map(ToString::to_string).collect();
    println!("co-standard order of {m}: {}", order.join(" × "));
    let g = resolve_linked(&m);
    println!("generic constituent of λ({m}): L({g}), generic: {}", is_generic(&g));
    Ok(())
}
