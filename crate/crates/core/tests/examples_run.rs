//! Each example doubles as a regression test: include it and run its
//! entry point (panics inside an example fail the test).

macro_rules! example_test {
    ($name:ident) => {
        mod $name {
            include!(concat!(
                env!("CARGO_MANIFEST_DIR"),
                "/examples/",
                stringify!($name),
                ".rs"
            ));

            #[test]
            fn runs() {
                main();
            }
        }
    };
}

example_test!(verify_identities);
example_test!(triangular_roots);
example_test!(baxterized_family);
example_test!(l_operators);
example_test!(link_invariants);
example_test!(coordinate_towers);
example_test!(relation_tables);
