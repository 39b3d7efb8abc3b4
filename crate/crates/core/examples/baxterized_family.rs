// The spectral-parameter family `R(theta)`: the identity at
// `theta = 0`, inverse pairs, the parameterized braid equation, the
// `theta -> +-inf` limits, the numeric spectrum, and the positivity
// window `theta in (-eta, 0)` for real `q`.
//
// Run with `cargo run --example baxterized_family`.

use braidq::braid::{baxterized, braid_matrix_at, check_baxterized_braid, exp_eta_at, spectrum};
use braidq::{AlgebraSpec, Complex64, Family, Mat};

fn main() {
    let spec = AlgebraSpec::new(Family::OHat, 3).unwrap();
    let q0 = Complex64::new(1.5, 0.0);
    let eta = exp_eta_at(&spec, q0, false).unwrap().ln().re;
    println!("{} at q = {}: eta = {:.6}", spec, q0.re, eta);

    let eye = Mat::identity(9, &Complex64::new(0.0, 0.0));
    let r0 = baxterized(&spec, 0.0, q0, false).unwrap();
    println!("  |R(0) - I|            = {:.2e}", r0.mat.max_diff(&eye));

    let r = baxterized(&spec, 0.7, q0, false).unwrap();
    let rinv = baxterized(&spec, -0.7, q0, false).unwrap();
    println!(
        "  |R(t) R(-t) - I|      = {:.2e}",
        r.mat.mul(&rinv.mat).max_diff(&eye)
    );

    let res = check_baxterized_braid(&spec, 0.3, 0.7, q0, false).unwrap();
    println!(
        "  braid eqn residual    = {:.2e}  (theta = 0.3, theta' = 0.7)",
        res
    );

    let far = baxterized(&spec, 25.0, q0, false).unwrap();
    let rp = braid_matrix_at(&spec, 1, q0).unwrap();
    println!(
        "  |R(25) - R^+1|        = {:.2e}",
        far.mat.max_diff(&rp.mat)
    );

    let eigs = spectrum(&spec, 1, q0).unwrap();
    println!(
        "  spectrum of R^+1      = {:+.6} and 1 (x{})",
        eigs[0].re,
        eigs.len() - 1
    );

    println!("\npositivity window for real q, theta in (-eta, 0):");
    for q in [0.5, 1.0, 2.0] {
        let qc = Complex64::new(q, 0.0);
        let eta = exp_eta_at(&spec, qc, false).unwrap().ln().re;
        let mut min_entry = f64::INFINITY;
        for step in 1..10 {
            let theta = -eta * (step as f64) / 10.0;
            let rt = baxterized(&spec, theta, qc, false).unwrap();
            for z in rt.mat.iter() {
                min_entry = min_entry.min(z.re);
            }
        }
        println!(
            "  q = {:>4}: smallest entry over the grid = {:+.3e}",
            q, min_entry
        );
    }
}
