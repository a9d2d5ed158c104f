macro_rules! example {
    ($name:ident, $file:literal) => {
        #[allow(dead_code)]
        mod $name {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }

        #[test]
        fn $name() {
            $name::run_example().expect("example runs");
        }
    };
}

example!(polarity, "polarity.rs");
example!(cleaning, "cleaning.rs");
example!(grammar, "grammar.rs");
example!(expansion, "expansion.rs");
example!(duplication, "duplication.rs");
example!(system_f, "system_f.rs");
example!(oracle_check, "oracle_check.rs");
