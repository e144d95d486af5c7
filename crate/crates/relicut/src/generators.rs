//! Small graph generators used by tests and the `gen` CLI subcommand.

use crate::error::{Error, Result};
use crate::multigraph::Multigraph;

pub fn path(n: usize, p: f64) -> Result<Multigraph> {
    if n < 1 {
        return Err(Error::InvalidInput("path needs at least 1 vertex".into()));
    }
    let pairs: Vec<_> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
    Multigraph::uniform(n, &pairs, p)
}

pub fn cycle(n: usize, p: f64) -> Result<Multigraph> {
    if n < 3 {
        return Err(Error::InvalidInput(
            "cycle needs at least 3 vertices".into(),
        ));
    }
    let pairs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Multigraph::uniform(n, &pairs, p)
}

pub fn clique(n: usize, p: f64) -> Result<Multigraph> {
    if n < 2 {
        return Err(Error::InvalidInput(
            "clique needs at least 2 vertices".into(),
        ));
    }
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            pairs.push((u, v));
        }
    }
    Multigraph::uniform(n, &pairs, p)
}

/// Cycle with `bundle` parallel edges between each pair of adjacent vertices.
pub fn bundled_cycle(n: usize, bundle: usize, p: f64) -> Result<Multigraph> {
    if n < 3 || bundle < 1 {
        return Err(Error::InvalidInput(
            "bundled cycle needs at least 3 vertices and bundle >= 1".into(),
        ));
    }
    let mut pairs = Vec::new();
    for i in 0..n {
        for _ in 0..bundle {
            pairs.push((i, (i + 1) % n));
        }
    }
    Multigraph::uniform(n, &pairs, p)
}

/// Star with one hub and `leaves` spokes.
pub fn star(leaves: usize, p: f64) -> Result<Multigraph> {
    if leaves < 1 {
        return Err(Error::InvalidInput("star needs at least 1 leaf".into()));
    }
    let pairs: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
    Multigraph::uniform(leaves + 1, &pairs, p)
}
