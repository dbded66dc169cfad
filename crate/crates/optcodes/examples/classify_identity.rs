//! Classify repeated shortenings of Hamming(7) up to equivalence, count the
//! extensions of each class, and verify the orbit-stabilizer counting
//! identity against the perfect-code census.
//!
//!     cargo run --release --example classify_identity

use optcodes::classify::{classify_shortenings, counting_identity, populate_extension_counts};
use optcodes::code::hamming7;

fn main() {
    let mut classification = classify_shortenings(&[hamming7()], 2).unwrap();
    for (level, records) in classification.levels.iter().enumerate() {
        println!("level {level}: {} class(es)", records.len());
        for record in records {
            println!(
                "  {} |Aut| = {} digest = {:016x}",
                record.form.params().map(|p| p.to_string()).unwrap_or_default(),
                record.aut_order,
                record.digest
            );
        }
    }

    let records = &mut classification.levels[2];
    populate_extension_counts(records, 2).unwrap();
    for record in records.iter() {
        println!(
            "E = {} for the class with |Aut| = {}",
            record.extension_count.unwrap(),
            record.aut_order
        );
    }

    // Sum of 5! 2^5 E / |Aut| over the classes must equal the number of
    // distinct perfect codes of length 7.
    let identity = counting_identity(records, 5).unwrap();
    println!(
        "identity: lhs = {} rhs = {} equal = {}",
        identity.lhs, identity.rhs, identity.equal
    );
}
