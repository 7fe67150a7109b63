//! Codimension of an ideal in the local ring by plain linear algebra on
//! truncated jets, independent of the standard-basis engine.
//!
//! For each degree bound `D` the quotient `R/(I + m^D)` is the space of
//! polynomials of degree below `D` modulo the span of all `m·g` truncated
//! at `D`. Its dimension is non-decreasing in `D`; once it agrees for `D`
//! and `D + 1`, Nakayama's lemma gives `m^D ⊂ I` and the value is exact.

use std::collections::{BTreeMap, HashMap};

use germ_core::poly::{Monomial, Polynomial, Rational};
use num_traits::{One, Zero};

/// Sparse row keyed by column index.
type Row = BTreeMap<usize, Rational>;

fn monomials_below(nvars: usize, bound: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for deg in 0..bound {
        let mut cur = vec![0u32; nvars];
        compositions(deg, 0, &mut cur, &mut out);
    }
    out
}

fn compositions(left: u32, var: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if var + 1 == cur.len() {
        cur[var] = left;
        out.push(cur.clone());
        return;
    }
    for e in (0..=left).rev() {
        cur[var] = e;
        compositions(left - e, var + 1, cur, out);
    }
    cur[var] = 0;
}

/// Reduced-echelon rank accumulator over the rationals.
#[derive(Default)]
struct Echelon {
    pivots: BTreeMap<usize, Row>,
}

impl Echelon {
    fn insert(&mut self, mut row: Row) {
        while let Some((&col, _)) = row.iter().next() {
            match self.pivots.get(&col) {
                Some(p) => {
                    let f = row[&col].clone();
                    for (c, v) in p {
                        let e = row.entry(*c).or_insert_with(Rational::zero);
                        *e -= &f * v;
                        if e.is_zero() {
                            row.remove(c);
                        }
                    }
                }
                None => {
                    let inv = Rational::one() / &row[&col];
                    for v in row.values_mut() {
                        *v *= &inv;
                    }
                    self.pivots.insert(col, row);
                    return;
                }
            }
        }
    }

    fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// `dim R/(I + m^bound)` for the ideal generated by `gens`.
pub fn jet_codimension_at(gens: &[Polynomial], nvars: usize, bound: u32) -> usize {
    let mons = monomials_below(nvars, bound);
    let index: HashMap<&[u32], usize> = mons.iter().enumerate().map(|(i, m)| (m.as_slice(), i)).collect();
    let mut ech = Echelon::default();
    for g in gens {
        let terms: Vec<(&Monomial, &Rational)> = g.terms().collect();
        for shift in &mons {
            let mut row = Row::new();
            for (m, c) in &terms {
                let e: Vec<u32> = m.exponents().iter().zip(shift).map(|(a, b)| a + b).collect();
                if let Some(&col) = index.get(e.as_slice()) {
                    row.insert(col, (*c).clone());
                }
            }
            if !row.is_empty() {
                ech.insert(row);
            }
        }
    }
    mons.len() - ech.rank()
}

/// Exact codimension if the truncated dimensions stabilize before
/// `max_bound`, else `None` (infinite or not reached).
pub fn jet_codimension(gens: &[Polynomial], max_bound: u32) -> Option<usize> {
    let nvars = gens.first()?.nvars();
    let mut prev = jet_codimension_at(gens, nvars, 1);
    for bound in 2..=max_bound {
        let cur = jet_codimension_at(gens, nvars, bound);
        if cur == prev {
            return Some(cur);
        }
        prev = cur;
    }
    None
}

/// Milnor number by the oracle.
pub fn jet_milnor(f: &Polynomial, max_bound: u32) -> Option<usize> {
    jet_codimension(&f.gradient(), max_bound)
}

/// Tjurina number by the oracle.
pub fn jet_tjurina(f: &Polynomial, max_bound: u32) -> Option<usize> {
    let mut gens = f.gradient();
    gens.push(f.clone());
    jet_codimension(&gens, max_bound)
}
