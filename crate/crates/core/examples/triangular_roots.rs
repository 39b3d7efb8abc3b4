// The triangularity condition `R^2 = I` as polynomial equations:
// prints the reduced polynomials `S_n(Y)` / `Sigma_{2m-1}(z)`, solves
// them, lifts the roots to `q` and classifies each as a root of unity.
//
// Run with `cargo run --example triangular_roots`.

use braidq::triangularity::{
    build_problem, sigma_polynomial, sn_polynomial, solve_roots, verify_triangular,
};
use braidq::{AlgebraSpec, Family};

fn main() {
    println!("reduction polynomials:");
    for n in 1..=9 {
        println!("  S_{}(Y)      = {}", n, sn_polynomial(n).display_with("Y"));
    }
    for m in 1..=5 {
        println!(
            "  Sigma_{}(z)  = {}",
            2 * m - 1,
            sigma_polynomial(m).display_with("z")
        );
    }
    println!();

    for n in [3usize, 4, 5, 6, 8] {
        let spec = AlgebraSpec::new(Family::OHat, n).unwrap();
        let problem = build_problem(&spec);
        println!(
            "{}: {} = {}  (reduction exact: {})",
            spec,
            problem.reduced.display_with(problem.case.variable()),
            problem.target,
            problem.reduction_is_exact()
        );
        let report = solve_roots(&problem).unwrap();
        println!(
            "  companion-matrix cross-check gap: {:.2e}",
            report.companion_gap
        );
        for root in &report.roots {
            let (rsq, braid) = verify_triangular(&spec, root.value).unwrap();
            println!(
                "  q = {:+.6}{:+.6}i  {:<24} |T(q)-2| = {:.1e}  |R^2-I| = {:.1e}  braid = {:.1e}",
                root.value.re,
                root.value.im,
                root.kind.to_string(),
                root.residual,
                rsq,
                braid
            );
        }
        println!();
    }
}
