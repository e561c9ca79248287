#![allow(dead_code)]

use std::path::PathBuf;
use std::sync::OnceLock;
pub mod special_checks;

use tauli::zeros::{
    load_zero_table, Theta, ZeroTable, DEFAULT_THETA0, DEFAULT_THETA1, DEFAULT_TIER_BOUNDARY,
};

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

fn load(name: &str) -> ZeroTable {
    load_zero_table(
        &data_dir().join(name),
        Theta::parse(DEFAULT_THETA0).unwrap(),
        Theta::parse(DEFAULT_THETA1).unwrap(),
        DEFAULT_TIER_BOUNDARY,
    )
    .unwrap()
}

/// First 10⁵ ordinates with the high-precision head merged in.
pub fn desk_table() -> &'static ZeroTable {
    static TABLE: OnceLock<ZeroTable> = OnceLock::new();
    TABLE.get_or_init(|| {
        load("zeros_100k.txt")
            .with_head(&load("zeros_head.txt"))
            .unwrap()
    })
}
