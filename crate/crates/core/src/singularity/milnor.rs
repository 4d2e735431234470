//! Milnor number of an isolated plane-curve germ by truncated linear algebra.
//!
//! d(N) = dim K[[x,z]] / ((f_x, f_z) + m^N) is computed from a Macaulay-style
//! matrix of truncated multiples. Once d(N) = d(N+1), Nakayama gives
//! m^N contained in the Jacobian ideal, so the value has stabilized at the
//! Milnor number; the certificate requires three equal consecutive values.

use std::sync::atomic::{AtomicUsize, Ordering};

use crate::error::Error;
use crate::exact::bipoly::BiPoly;
use crate::exact::field::AlgScalar;

pub const DEFAULT_TRUNCATION: usize = 64;

static TRUNCATION_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_TRUNCATION);

/// Configure the truncation cap used by `milnor_number` (the CLI's
/// --truncation flag). The cap only bounds how far the stabilization
/// certificate may search; results are exact whenever one is returned.
pub fn set_truncation_cap(cap: usize) {
    TRUNCATION_CAP.store(cap.max(4), Ordering::SeqCst);
}

pub fn truncation_cap() -> usize {
    TRUNCATION_CAP.load(Ordering::SeqCst)
}

/// Milnor number with a configurable truncation cap.
pub fn milnor_number_with(f: &BiPoly, cap: usize) -> Result<usize, Error> {
    assert!(!f.is_zero());
    let fx = f.derivative_x();
    let fz = f.derivative_z();
    let mut history: Vec<usize> = Vec::new();
    let mut n = 2usize;
    while n <= cap {
        let d = local_quotient_dim(&fx, &fz, n);
        history.push(d);
        let h = history.len();
        if h >= 3 && history[h - 1] == history[h - 2] && history[h - 2] == history[h - 3] {
            return Ok(history[h - 1]);
        }
        n += 1;
    }
    Err(Error::NonIsolated)
}

pub fn milnor_number(f: &BiPoly) -> Result<usize, Error> {
    milnor_number_with(f, truncation_cap())
}

/// dim of K[x,z]_{<N} modulo the truncations of all monomial multiples of
/// fx, fz.
fn local_quotient_dim(fx: &BiPoly, fz: &BiPoly, n: usize) -> usize {
    let field = fx.field().clone();
    // monomial index: (i, j) with i + j < n
    let mut index = std::collections::HashMap::new();
    let mut monoms = Vec::new();
    for i in 0..n {
        for j in 0..(n - i) {
            index.insert((i, j), monoms.len());
            monoms.push((i, j));
        }
    }
    let cols = monoms.len();
    let mut rows: Vec<Vec<AlgScalar>> = Vec::new();
    for g in [fx, fz] {
        if g.is_zero() {
            continue;
        }
        for &(mi, mj) in &monoms {
            let mut row = vec![field.zero(); cols];
            let mut nonzero = false;
            for (gi, gj, c) in g.terms() {
                let (i, j) = (gi + mi, gj + mj);
                if i + j < n {
                    let k = index[&(i, j)];
                    row[k] = row[k].add(c);
                    nonzero = true;
                }
            }
            if nonzero {
                rows.push(row);
            }
        }
    }
    let r = rank(rows, cols);
    cols - r
}

fn rank(mut rows: Vec<Vec<AlgScalar>>, cols: usize) -> usize {
    let mut rank = 0usize;
    let mut row_of_pivot: Vec<Option<usize>> = vec![None; cols];
    for r in 0..rows.len() {
        let mut row = std::mem::replace(&mut rows[r], Vec::new());
        loop {
            let Some(lead) = row.iter().position(|c| !c.is_zero()) else {
                break;
            };
            match row_of_pivot[lead] {
                None => {
                    // normalize and store
                    let inv = row[lead].inv().unwrap();
                    for c in row.iter_mut() {
                        *c = c.mul(&inv);
                    }
                    rows[r] = row;
                    row_of_pivot[lead] = Some(r);
                    rank += 1;
                    break;
                }
                Some(pr) => {
                    let factor = row[lead].clone();
                    let pivot_row = rows[pr].clone();
                    for (c, p) in row.iter_mut().zip(pivot_row.iter()) {
                        *c = c.sub(&factor.mul(p));
                    }
                }
            }
        }
    }
    rank
}
