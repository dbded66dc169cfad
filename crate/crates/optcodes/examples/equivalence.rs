//! Canonical forms and equivalence testing with verified witnesses.
//!
//!     cargo run --release --example equivalence

use optcodes::code::{Code, Codeword};
use optcodes::symmetry::{canonical_form, equivalence_witness, SignedPermutation};

fn code(lines: &[&str]) -> Code {
    Code::new(
        lines[0].len() as u8,
        lines.iter().map(|s| Codeword::parse(s).unwrap()),
    )
    .unwrap()
}

fn main() {
    // Two different-looking pairs that are the same code up to translation.
    let a = code(&["00", "11"]);
    let b = code(&["01", "10"]);
    let fa = canonical_form(&a).unwrap();
    let fb = canonical_form(&b).unwrap();
    println!("form of {{00,11}}: {:?}", fa.form.words());
    println!("form of {{01,10}}: {:?}", fb.form.words());
    println!("equal forms: {}", fa.form == fb.form);

    match equivalence_witness(&a, &b).unwrap() {
        Some(w) => println!("witness mapping the first onto the second: {w}"),
        None => println!("inequivalent"),
    }

    // Distances distinguish codes no witness can join.
    let c = code(&["000", "111"]);
    let d = code(&["000", "110"]);
    println!(
        "{{000,111}} ~ {{000,110}}: {:?}",
        equivalence_witness(&c, &d).unwrap().is_some()
    );

    // A scrambled copy is always recognized, with a verified witness.
    let e = code(&["0000000", "1110000", "0011100", "0000111"]);
    let g = SignedPermutation::parse("(1 5 2)(~3 7)(~4)(6)", 7).unwrap();
    let moved = g.apply_code(&e).unwrap();
    let witness = equivalence_witness(&e, &moved).unwrap().unwrap();
    println!("recovered witness: {witness}");
    assert_eq!(witness.apply_code(&e).unwrap(), moved);
}
