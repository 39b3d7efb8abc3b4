// Exact verification of the defining identities over the extension
// ring: braid equation, Hecke relation, projector square, and the
// inverse pair, for both families.
//
// Run with `cargo run --example verify_identities`.

use braidq::braid::{
    braid_matrix, check_braid_equation_exact, check_hecke_exact, check_projector_square,
    check_rank_one, projector_p0prime,
};
use braidq::{AlgebraSpec, Family, Mat};

fn main() {
    let specs = [
        (Family::OHat, 3),
        (Family::OHat, 4),
        (Family::OHat, 5),
        (Family::OHat, 6),
        (Family::PHat, 4),
        (Family::PHat, 6),
    ];
    for (family, n) in specs {
        let spec = AlgebraSpec::new(family, n).unwrap();
        println!("{}  (T = {})", spec, spec.t());

        let p0 = projector_p0prime(&spec);
        println!("  tr P0' = T            : {}", p0.trace() == *spec.t());
        println!(
            "  P0'^2 = T P0'          : {}",
            check_projector_square(&spec)
        );
        println!("  rank(P0') = 1          : {}", check_rank_one(&spec));

        let rp = braid_matrix(&spec, 1);
        let rm = braid_matrix(&spec, -1);
        let eye = Mat::identity(n * n, &spec.ext_one());
        println!("  R R^-1 = I             : {}", rp.mat.mul(&rm.mat) == eye);
        println!(
            "  braid equation         : {}",
            check_braid_equation_exact(&rp).unwrap()
        );
        println!("  Hecke (R-I)(R+l^2 I)=0 : {}", check_hecke_exact(&spec));
        println!();
    }
}
