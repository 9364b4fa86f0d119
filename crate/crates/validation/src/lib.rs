//! Holds the `acceptance` test target. Run it with
//! `cargo test -p mlein-validation --test acceptance`.
