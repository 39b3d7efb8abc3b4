// The fundamental L-operators and their algebra: exact RLL relations,
// the 2N central group-like quadratic elements (lambda times the
// identity in the fundamental, lambda^2 for the 9x9 coproduct), and
// the orthogonal conjugation of the coproduct generators.
//
// Run with `cargo run --example l_operators`.

use braidq::lalg::{
    central_elements, conjugate_sum_lii, ext_qpow, fundamental, rll_mixed_exact,
    rll_same_sign_exact, s1_s2_members, Variant,
};
use braidq::{AlgebraSpec, Family, Mat};

fn main() {
    let spec = AlgebraSpec::new(Family::OHat, 3).unwrap();
    let lp = fundamental(&spec, Variant::Plus);
    let lm = fundamental(&spec, Variant::Minus);

    println!("fundamental blocks of L^+ for {}:", spec);
    for i in 1..=3 {
        for j in 1..=3 {
            let b = lp.block(i, j);
            let entries: Vec<String> = (0..3)
                .flat_map(|r| (0..3).map(move |c| (r, c)))
                .filter(|&(r, c)| !braidq::scalar::Scalar::is_zero(&b[(r, c)]))
                .map(|(r, c)| format!("({},{}) = {}", r + 1, c + 1, b[(r, c)]))
                .collect();
            println!("  L{}{}: {}", i, j, entries.join(",  "));
        }
    }

    println!("\nexact relation checks:");
    println!(
        "  RLL same sign (L^+)   : {}",
        rll_same_sign_exact(&spec, &lp)
    );
    println!(
        "  RLL same sign (L^-)   : {}",
        rll_same_sign_exact(&spec, &lm)
    );
    println!(
        "  RLL mixed             : {}",
        rll_mixed_exact(&spec, &lp, &lm)
    );

    let qp = ext_qpow(&spec);
    let vanish = s1_s2_members(&spec, &lp, &qp).iter().all(|m| m.is_zero());
    println!("  S1 and S2 sets vanish : {}", vanish);

    let central = central_elements(&spec, &lp, &qp);
    println!("  S3 members equal      : {}", central.all_equal());
    println!(
        "  common member         : {} * I3",
        central.scalar_value().unwrap()
    );

    let delta = lp.coproduct();
    let dc = central_elements(&spec, &delta, &qp);
    println!(
        "  coproduct S3 member   : {} * I9",
        dc.scalar_value().unwrap()
    );
    let eye = Mat::identity(3, &spec.ext_one());
    let one_plus_lambda = &spec.ext_one() + &spec.ext_lambda();
    println!(
        "  sum L_ii = (1+l) I3   : {}",
        lp.sum_lii() == eye.scale(&one_plus_lambda)
    );

    println!("\nconjugation analysis of the 9x9 coproduct generators:");
    for q0 in [1.0, 2.0] {
        let rep = conjugate_sum_lii(&spec, q0).unwrap();
        println!(
            "  q = {}: orthogonality {:.1e}, diagonal {:.1e}, tabulated blocks {:.1e}, nilpotency {:.1e}",
            q0, rep.orthogonality, rep.sum_diagonal, rep.tabulated_blocks, rep.nilpotency
        );
    }
}
