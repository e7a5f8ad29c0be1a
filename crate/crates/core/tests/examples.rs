macro_rules! example {
    ($module:ident, $file:literal) => {
        #[allow(dead_code)]
        #[path = $file]
        mod $module;

        #[test]
        fn $module() {
            $module::run().expect(concat!($file, " should run"));
        }
    };
}

example!(reduce_to_generators, "../examples/reduce_to_generators.rs");
example!(relation_catalogue, "../examples/relation_catalogue.rs");
example!(spanning_set, "../examples/spanning_set.rs");
example!(oddodd_equations, "../examples/oddodd_equations.rs");
example!(numeric_evaluation, "../examples/numeric_evaluation.rs");
example!(verify_weight, "../examples/verify_weight.rs");
example!(persist_table, "../examples/persist_table.rs");
