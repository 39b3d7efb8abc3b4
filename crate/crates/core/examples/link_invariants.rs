// Link invariants from braid closures: the enhanced operator data,
// invariant values for small links, the skein relation and Markov
// moves.
//
// Run with `cargo run --example link_invariants`.

use braidq::links::{
    check_skein, link_invariant, markov_conjugation, markov_stabilization, BraidWord,
    EnhancedOperator, DEFAULT_DIM_CAP,
};
use braidq::{AlgebraSpec, Complex64, Family};

fn main() {
    let spec = AlgebraSpec::new(Family::OHat, 3).unwrap();
    let enhanced = EnhancedOperator::new(&spec);
    println!("enhanced operator for {}:", spec);
    println!(
        "  f = diag({}, {}, {})",
        enhanced.f[0], enhanced.f[1], enhanced.f[2]
    );
    println!(
        "  defining relations exact over the ring: {}",
        enhanced.check_exact()
    );

    let q0 = Complex64::new(1.0, 0.0);
    let e = enhanced.at(q0, false).unwrap();
    println!("  at q = 1: a = e^eta = {:.10} (= (3+sqrt5)/2)", e.a.re);

    let cap = DEFAULT_DIM_CAP;
    let links: [(&str, usize, &str); 5] = [
        ("unknot", 1, ""),
        ("two-component unlink", 2, ""),
        ("Hopf link", 2, "+1 +1"),
        ("trefoil", 2, "+1 +1 +1"),
        ("figure-eight", 3, "+1 -2 +1 -2"),
    ];
    println!("\ninvariants at q = 1:");
    for (name, strands, word_text) in links {
        let word = BraidWord::parse(word_text, strands).unwrap();
        let p = link_invariant(&e, &word, cap).unwrap();
        println!("  P({:<21}) = {:+.10}", name, p.re);
    }

    // skein triple (trefoil, unknot, Hopf) built around the middle letter
    let trefoil = BraidWord::parse("+1 +1 +1", 2).unwrap();
    let unknot = BraidWord::parse("+1 -1 +1", 2).unwrap();
    let hopf = BraidWord::parse("+1 +1", 2).unwrap();
    let res = check_skein(&e, &trefoil, &unknot, &hopf, cap).unwrap();
    println!("\nskein residual on (trefoil, unknot, Hopf): {:.2e}", res);

    let gamma = BraidWord::parse("+1", 2).unwrap();
    println!(
        "Markov conjugation residual:   {:.2e}",
        markov_conjugation(&e, &hopf, &gamma, cap).unwrap()
    );
    println!(
        "Markov stabilization residual: {:.2e}",
        markov_stabilization(&e, &trefoil, -1, cap).unwrap()
    );
}
