//! Factors the five-node example filter and prints each stage of the schedule.

use locfilter::{cancel_inverse_pairs, decompose, optimize, Graph, Matrix, Schedule};

fn show(s: &Schedule) -> String {
    s.multiplication_order()
        .iter()
        .map(|f| f.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn main() -> locfilter::Result<()> {
    let m = Matrix::from_i64([
        [0, 0, 0, 0, 0],
        [1, 0, 0, 3, 0],
        [2, 5, 0, 0, 0],
        [3, 6, 0, 0, 0],
        [4, 0, 0, 4, 0],
    ]);
    let g = Graph::new(5, [(1, 2), (2, 3), (3, 4), (3, 5)])?;

    let lifted = decompose(&m, &g)?;
    println!("lifted ({}): {}", lifted.len(), show(&lifted));
    let (cancelled, pairs) = cancel_inverse_pairs(&lifted);
    println!(
        "after {pairs} cancellations ({}): {}",
        cancelled.len(),
        show(&cancelled)
    );
    let (merged, report) = optimize(&lifted, &g)?;
    println!("merged ({}): {}", report.after, show(&merged));
    assert_eq!(merged.product()?, m);
    Ok(())
}
