//! Exact tools for semi-balanced set systems, the facets of the cone of
//! exact games, and transferable-utility game checks.
//!
//! All arithmetic is exact over the rationals. The crate is `no_std` with
//! `alloc` when the default `std` feature is disabled.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

mod error;
pub mod ratlin;
pub mod ratlp;
pub mod semibal;
pub mod setcore;

pub use error::{Error, Result};

pub mod enumerate;
pub mod games;

pub(crate) mod par {
    use alloc::vec::Vec;

    #[cfg(feature = "parallel")]
    pub fn map<T: Sync, U: Send>(items: &[T], f: impl Fn(&T) -> U + Sync + Send) -> Vec<U> {
        use rayon::prelude::*;
        items.par_iter().map(f).collect()
    }

    #[cfg(not(feature = "parallel"))]
    pub fn map<T, U>(items: &[T], f: impl Fn(&T) -> U) -> Vec<U> {
        items.iter().map(f).collect()
    }
}
