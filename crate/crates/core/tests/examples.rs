macro_rules! example {
    ($module:ident, $file:literal) => {
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }

        #[test]
        fn $module() {
            $module::run_example().expect(concat!($file, " should run"));
        }
    };
}

example!(paper_example, "paper_example.rs");
example!(mutation, "mutation.rs");
example!(certify_trace, "certify_trace.rs");
example!(exhaustive_check, "exhaustive_check.rs");
example!(random_stats, "random_stats.rs");
example!(dot_export, "dot_export.rs");
