// Noncommutative coordinate towers: start from the commutative double
// cone, iterate the transfer-matrix map, and watch the single
// quadratic relation survive while the coordinates become matrices.
// Ends with the SO_q(3) comparison tower.
//
// Run with `cargo run --example coordinate_towers`.

use braidq::ncspace::{
    base_cone_solution, check_block_structure, check_coordinate_relation,
    full_projector_relation_residual, soq3_base, soq3_relation_residual, soq3_tower_step,
    tower_step, LambdaBranch,
};
use braidq::{AlgebraSpec, Complex64, Family};

fn main() {
    let spec = AlgebraSpec::new(Family::OHat, 3).unwrap();
    let q = 1.0;
    let q0 = Complex64::new(q, 0.0);

    let base = base_cone_solution(1.0, 1.0, 1, false, q).unwrap();
    println!(
        "double cone base at q = {}: x = ({:+.4}, {:+.4}, {:+.4})",
        q,
        base.coords[0][(0, 0)].re,
        base.coords[1][(0, 0)].re,
        base.coords[2][(0, 0)].re
    );
    println!(
        "  relation residual: {:.2e}",
        check_coordinate_relation(&spec, &base, q0).unwrap()
    );

    for branch in [LambdaBranch::Plus, LambdaBranch::Minus] {
        println!("\ntower with the {:?} branch:", branch);
        let mut c = base.clone();
        for level in 1..=3 {
            c = tower_step(&spec, &c, branch, q0).unwrap();
            let res = full_projector_relation_residual(&spec, &c, q0).unwrap();
            let det = braidq::numeric::determinant(&c.coords[0]).norm();
            println!(
                "  level {}: dim {:>2}, all projector rows {:.2e}, structure {}, |det x1| = {:.1e}",
                level,
                c.dim,
                res,
                check_block_structure(&spec, &c),
                det
            );
        }
    }

    println!("\nSO_q(3) comparison tower from the commutative (1,3) plane:");
    for q in [1.0, 2.0] {
        let mut c = soq3_base(1.0, -1.0);
        print!("  q = {}:", q);
        for _ in 1..=3 {
            c = soq3_tower_step(&c, q).unwrap();
            print!("  dim {} ({:.1e})", c.dim, soq3_relation_residual(&c, q));
        }
        println!();
    }
    println!("  (at q = 1 each step is plain tensoring with the identity)");
}
