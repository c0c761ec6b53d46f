//! Shared fixtures for the benchmarks.

use rigidpack_core::generators;
use rigidpack_core::graph::Graph;

pub fn complete(n: usize) -> Graph {
    generators::complete(n).unwrap()
}

pub fn dense_circulant(n: usize) -> Graph {
    generators::circulant(n, &[1, 2, 3, 4]).unwrap()
}
