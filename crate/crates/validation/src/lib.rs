//! Tests-only package; see `tests/acceptance.rs`.
