//! Mann-Whitney U tests: the exact small-sample route, the tie-corrected
//! normal approximation, and lower-tail subset testing.
//!
//! ```bash
//! cargo run -p pressgauge --example mann_whitney
//! ```

use pressgauge::stats::{mann_whitney_u, mann_whitney_u_with_method, tail_values, TestMethod};

fn show(label: &str, a: &[f64], b: &[f64]) {
    let r = mann_whitney_u(a, b).unwrap();
    println!(
        "{label}: U = {:.1}, p = {:.6} ({}, n1={}, n2={})",
        r.u_statistic,
        r.p_value,
        r.method.as_str(),
        r.n1,
        r.n2
    );
}

fn main() {
    // disjoint samples: the most extreme split of six ranks
    show("disjoint  ", &[1.0, 2.0, 3.0], &[4.0, 5.0, 6.0]);
    // identical samples carry no evidence at all
    show("identical ", &[1.0, 2.0, 3.0], &[1.0, 2.0, 3.0]);
    // interleaved samples sit near the null
    show("interleave", &[1.0, 3.0, 5.0, 7.0], &[2.0, 4.0, 6.0, 8.0]);

    // the exact regime ends at 16 pooled values
    let a: Vec<f64> = (0..8).map(|i| i as f64 * 1.7).collect();
    let b: Vec<f64> = (0..8).map(|i| i as f64 * 1.9 + 0.4).collect();
    let exact = mann_whitney_u_with_method(&a, &b, TestMethod::Exact).unwrap();
    let approx = mann_whitney_u_with_method(&a, &b, TestMethod::NormalApproximation).unwrap();
    println!(
        "\nboundary n=8+8: exact p = {:.4}, normal approximation p = {:.4} (gap {:.4})",
        exact.p_value,
        approx.p_value,
        (exact.p_value - approx.p_value).abs()
    );

    // a location shift in the lower tail only
    let shifted: Vec<f64> = (0..120)
        .map(|i| {
            let base = (i as f64 / 120.0) * 2.0 - 1.0;
            if i < 18 { base - 0.6 } else { base }
        })
        .collect();
    let reference: Vec<f64> = (0..400).map(|i| (i as f64 / 400.0) * 2.0 - 1.0).collect();
    show("\nfull samples    ", &shifted, &reference);
    let (tail_a, tail_b) = tail_values(&shifted, &reference, 0.10);
    show("lower-decile    ", &tail_a, &tail_b);
    println!("(the shift hides in the pooled test and shows in the tail subset)");
}
