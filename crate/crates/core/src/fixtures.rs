//! Small named structures used throughout the tests and the CLI docs.

use crate::structure::{EventStructure, EventStructureSpec};

/// Two concurrent events.
pub fn pair_conc_spec() -> EventStructureSpec {
    EventStructureSpec::new(["a", "b"])
}

/// Two events in conflict.
pub fn pair_conf_spec() -> EventStructureSpec {
    EventStructureSpec::new(["a", "b"]).conflict("a", "b")
}

/// `a < b < c`.
pub fn chain3_spec() -> EventStructureSpec {
    EventStructureSpec::new(["a", "b", "c"]).cover("a", "b").cover("b", "c")
}

/// A root with two conflicting children, the first of which again forks
/// into two conflicting children.
pub fn fork_spec() -> EventStructureSpec {
    EventStructureSpec::new(["r", "x", "y", "u", "v"])
        .cover("r", "x")
        .cover("r", "y")
        .cover("x", "u")
        .cover("x", "v")
        .conflict("x", "y")
        .conflict("u", "v")
}

/// Nine-event simple structure of degree 3 whose index is 4.
pub fn fig1_spec() -> EventStructureSpec {
    EventStructureSpec::new(["1", "2", "3", "4", "5", "6", "7", "8", "9"])
        .cover("1", "3")
        .cover("1", "4")
        .cover("2", "4")
        .cover("2", "5")
        .cover("3", "6")
        .cover("3", "7")
        .cover("5", "8")
        .cover("5", "9")
        .conflict("6", "7")
        .conflict("8", "9")
        .conflict("3", "5")
}

pub fn pair_conc() -> EventStructure {
    EventStructure::build(pair_conc_spec()).expect("fixture")
}

pub fn pair_conf() -> EventStructure {
    EventStructure::build(pair_conf_spec()).expect("fixture")
}

pub fn chain3() -> EventStructure {
    EventStructure::build(chain3_spec()).expect("fixture")
}

pub fn fork() -> EventStructure {
    EventStructure::build(fork_spec()).expect("fixture")
}

pub fn fig1() -> EventStructure {
    EventStructure::build(fig1_spec()).expect("fixture")
}
