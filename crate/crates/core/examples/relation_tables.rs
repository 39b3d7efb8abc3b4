// Differential and mobile-frame relation tables: the `x`-`xi` and
// `xi`-`xi` exchange relations, their internal consistency, the
// `x_i theta_j` commutator table generated from the inverse braid
// matrix, and the non-existence of a consistent `xi` assignment on the
// commutative base.
//
// Run with `cargo run --example relation_tables`.

use braidq::ncspace::{
    base_cone_solution, base_xi_system_rank, frame_commutators, xi_relation_table,
    xi_table_consistency, NcTerm, Prescription,
};
use braidq::{AlgebraSpec, Complex64, Family};

fn term(t: NcTerm) -> String {
    match t {
        NcTerm::XXi(i, j) => format!("x{} xi{}", i, j),
        NcTerm::XiX(i, j) => format!("xi{} x{}", i, j),
        NcTerm::XiXi(i, j) => format!("xi{} xi{}", i, j),
        NcTerm::Pi => "Pi".into(),
        NcTerm::PiPrime => "Pi'".into(),
        NcTerm::XTheta(i, j) => format!("x{} theta{}", i, j),
        NcTerm::ThetaX(i, j) => format!("theta{} x{}", i, j),
        NcTerm::Tau => "tau".into(),
    }
}

fn fmt(c: Complex64) -> String {
    if c.im.abs() < 1e-12 {
        format!("{:+.6}", c.re)
    } else {
        format!("({:+.4}{:+.4}i)", c.re, c.im)
    }
}

fn main() {
    let spec = AlgebraSpec::new(Family::OHat, 3).unwrap();
    let q0 = Complex64::new(1.7, 0.0);

    println!("x-xi and xi-xi relations for {} at q = {}:", spec, q0.re);
    let table = xi_relation_table(&spec, q0, Prescription::Primary, false).unwrap();
    for rel in &table.relations {
        let rhs = if rel.rhs.is_empty() {
            "0".to_string()
        } else {
            rel.rhs
                .iter()
                .map(|(c, t)| format!("{} {}", fmt(*c), term(*t)))
                .collect::<Vec<_>>()
                .join("  ")
        };
        println!("  {} = {}", term(rel.lhs), rhs);
    }
    println!(
        "  antidiagonal rows re-sum to Pi' = Pi' within {:.1e}",
        xi_table_consistency(&spec, &table, q0)
    );

    println!("\nmobile-frame commutators (generated from R^-1 P):");
    let frame = frame_commutators(&spec, q0, false).unwrap();
    for rel in &frame.table.relations {
        let rhs = rel
            .rhs
            .iter()
            .map(|(c, t)| format!("{} {}", fmt(*c), term(*t)))
            .collect::<Vec<_>>()
            .join("  ");
        println!("  {} = {}", term(rel.lhs), rhs);
    }
    println!(
        "  [theta, x_i] = 0 resubstitution residual: {:.2e}",
        frame.resubstitution
    );

    let cone = base_cone_solution(1.0, 2.0, 1, false, q0.re).unwrap();
    let rank = base_xi_system_rank(&spec, &cone, q0).unwrap();
    println!(
        "\nxi on the commutative cone: linear system rank {} of {} unknowns",
        rank,
        spec.dim()
    );
    println!("  (full rank: only the trivial xi = 0 assignment exists)");
}
