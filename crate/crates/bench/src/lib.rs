//! Bundled fixtures as benchmark inputs.

use luna_datum::document::parse_datum;
use luna_datum::LunaDatum;

pub const FIXTURES: [(&str, &str); 6] = [
    ("spin5_full_rank", include_str!("../../../fixtures/spin5_full_rank.json")),
    ("spin7_mixed", include_str!("../../../fixtures/spin7_mixed.json")),
    ("spin7_doubled", include_str!("../../../fixtures/spin7_doubled.json")),
    ("g2_doubled", include_str!("../../../fixtures/g2_doubled.json")),
    ("sl2sl2_simple", include_str!("../../../fixtures/sl2sl2_simple.json")),
    ("pgl2pgl2_sum", include_str!("../../../fixtures/pgl2pgl2_sum.json")),
];

pub fn fixture(name: &str) -> LunaDatum {
    let (_, text) = FIXTURES.iter().find(|(n, _)| *n == name).expect("known fixture");
    parse_datum(text).expect("fixture parses")
}

pub fn all() -> Vec<(&'static str, LunaDatum)> {
    FIXTURES.iter().map(|(n, t)| (*n, parse_datum(t).expect("fixture parses"))).collect()
}
