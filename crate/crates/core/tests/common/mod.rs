#![allow(dead_code)]

use padic_qm::ExtensionContext;
use proptest::prelude::*;

/// Odd and dyadic fields, ramified and unramified.
pub const FIELDS: [(u64, i64); 12] = [
    (3, 5),
    (3, 2),
    (3, 3),
    (3, 6),
    (5, 2),
    (5, 3),
    (5, 5),
    (7, 3),
    (7, 7),
    (2, 3),
    (2, 5),
    (2, 2),
];

pub fn field(i: usize, precision: u32) -> ExtensionContext {
    let (p, mu) = FIELDS[i % FIELDS.len()];
    ExtensionContext::from_params(p, mu, precision).unwrap()
}

pub fn odd_field(i: usize, precision: u32) -> ExtensionContext {
    let odd: Vec<_> = FIELDS.iter().filter(|(p, _)| *p != 2).collect();
    let (p, mu) = *odd[i % odd.len()];
    ExtensionContext::from_params(p, mu, precision).unwrap()
}

/// A field index and a sampler seed.
pub fn field_and_seed() -> impl Strategy<Value = (usize, u64)> {
    (0..FIELDS.len(), any::<u64>())
}
