//! Example systems shipped with the library.

use crate::io;
use crate::potential::Potential;
use crate::shift::{BlockCode, SoficPresentation};

pub const FULL2: &str = include_str!("../data/full2.shift");
pub const GOLDEN: &str = include_str!("../data/golden.sft");
pub const EVEN: &str = include_str!("../data/even.shift");
pub const REDUCIBLE: &str = include_str!("../data/reducible.shift");
pub const PERIODIC: &str = include_str!("../data/periodic.shift");
pub const ZERO_POT: &str = include_str!("../data/zero.pot");
pub const SITE_POT: &str = include_str!("../data/site.pot");
pub const PAIR_POT: &str = include_str!("../data/pair.pot");
pub const TEN_CODE: &str = include_str!("../data/ten.code");

/// Strength of the bundled single-site potential.
pub const SITE_A: f64 = 0.7;
/// Strength of the bundled nearest-neighbour potential.
pub const PAIR_BETA: f64 = 0.3;

pub fn full_shift() -> SoficPresentation {
    io::parse_shift(FULL2).expect("bundled full shift")
}

pub fn golden_mean() -> SoficPresentation {
    io::parse_shift(GOLDEN).expect("bundled golden mean")
}

pub fn even_shift() -> SoficPresentation {
    io::parse_shift(EVEN).expect("bundled even shift")
}

pub fn reducible() -> SoficPresentation {
    io::parse_shift(REDUCIBLE).expect("bundled reducible graph")
}

pub fn periodic() -> SoficPresentation {
    io::parse_shift(PERIODIC).expect("bundled periodic graph")
}

pub fn zero_potential() -> Potential {
    io::parse_potential(ZERO_POT, full_shift().alphabet()).expect("bundled zero potential")
}

/// `a·1[x(0) = 1]` with `a = 0.7`.
pub fn site_potential() -> Potential {
    io::parse_potential(SITE_POT, full_shift().alphabet()).expect("bundled site potential")
}

/// `β·1[x(0) = x(1)]` with `β = 0.3`.
pub fn pair_potential() -> Potential {
    io::parse_potential(PAIR_POT, full_shift().alphabet()).expect("bundled pair potential")
}

/// Radius-1 code sending a window to 1 exactly when it contains the block `10`.
pub fn ten_detector(source: &SoficPresentation) -> BlockCode {
    io::parse_block_code(TEN_CODE, source).expect("bundled block code")
}

/// Looks up a bundled shift by name.
pub fn shift_by_name(name: &str) -> Option<SoficPresentation> {
    Some(match name {
        "full2" | "full" => full_shift(),
        "golden" => golden_mean(),
        "even" => even_shift(),
        "reducible" => reducible(),
        "periodic" => periodic(),
        _ => return None,
    })
}

/// Source text of a bundled potential by name.
pub fn potential_text(name: &str) -> Option<&'static str> {
    Some(match name {
        "zero" => ZERO_POT,
        "site" => SITE_POT,
        "pair" => PAIR_POT,
        _ => return None,
    })
}

/// The three irreducible bundled shifts with their names.
pub fn irreducible_shifts() -> Vec<(&'static str, SoficPresentation)> {
    vec![("full2", full_shift()), ("golden", golden_mean()), ("even", even_shift())]
}

/// The three bundled potentials with their names.
pub fn potentials() -> Vec<(&'static str, Potential)> {
    vec![("zero", zero_potential()), ("site", site_potential()), ("pair", pair_potential())]
}
