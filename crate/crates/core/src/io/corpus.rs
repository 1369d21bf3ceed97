//! Fixture documents shipped with the crate.

const CORPUS: &[(&str, &str)] = &[
    ("fixtureA", include_str!("../../fixtures/fixtureA.bl")),
    ("one-odd", include_str!("../../fixtures/one-odd.bl")),
    ("zero", include_str!("../../fixtures/zero.bl")),
    ("d-squared", include_str!("../../fixtures/d-squared.bl")),
    ("p0", include_str!("../../fixtures/p0.bl")),
    ("p2", include_str!("../../fixtures/p2.bl")),
    ("planarity-two", include_str!("../../fixtures/planarity-two.bl")),
    ("multi2", include_str!("../../fixtures/multi2.bl")),
    ("sd", include_str!("../../fixtures/sd.bl")),
    ("iblA", include_str!("../../fixtures/iblA.bl")),
    ("ibl-genus", include_str!("../../fixtures/ibl-genus.bl")),
    ("replacement", include_str!("../../fixtures/replacement.bl")),
    ("action", include_str!("../../fixtures/action.bl")),
];

/// (name, text) for every fixture.
pub fn corpus() -> &'static [(&'static str, &'static str)] {
    CORPUS
}

pub fn fixture(name: &str) -> Option<&'static str> {
    CORPUS.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}
