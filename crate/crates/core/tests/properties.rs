mod support;

use support::{run, SUITES};

fn suite(tag: &str) {
    let (_, name, prop) = SUITES.iter().find(|(t, _, _)| *t == tag).unwrap();
    if let Err(e) = run(*prop, 64) {
        panic!("{}: {}", name, e);
    }
}

#[test]
fn closures_are_filters() {
    suite("a");
}

#[test]
fn boundaries_are_filters() {
    suite("b");
}

#[test]
fn refresh_once_laws() {
    suite("c");
}

#[test]
fn refresh_all_laws() {
    suite("d");
}

#[test]
fn inert_free_surjective() {
    suite("e");
}

#[test]
fn fully_faithful_bijective() {
    suite("f");
}

#[test]
fn filtered_implications() {
    suite("g");
}

#[test]
fn engine_matches_oracle() {
    suite("h");
}

#[test]
fn lower_central_sanity() {
    suite("i");
}
