//! The generic exact-cover solver: construction, solving, enumeration,
//! forced rows, and the instance file format.
//!
//!     cargo run --release --example exact_cover

use optcodes::cover::{count, enumerate, solve_exists, verify_cover, ExactCoverInstance};

fn main() {
    // Four candidate subsets over three points.
    let instance = ExactCoverInstance::new(
        3,
        vec![vec![0, 1], vec![2], vec![0], vec![1, 2]],
    )
    .unwrap();

    let first = solve_exists(&instance).unwrap();
    println!("first solution: rows {:?}", first.rows());

    let (all, complete) = enumerate(&instance, 10);
    println!("all solutions (complete: {complete}):");
    for sol in &all {
        assert!(verify_cover(&instance, sol.rows()));
        println!("  rows {:?}", sol.rows());
    }

    // Forcing row 2 prunes the other branch.
    let forced = ExactCoverInstance::with_forced(
        3,
        vec![vec![0, 1], vec![2], vec![0], vec![1, 2]],
        vec![2],
    )
    .unwrap();
    println!("with row 2 forced: {} solution(s)", count(&forced));

    // The same instance as a file.
    let text = forced.to_string();
    println!("instance file:\n{text}");
    assert_eq!(ExactCoverInstance::parse(&text).unwrap(), forced);
}
