//! Mora's tangent cone algorithm.
//!
//! The normal form follows the ecart strategy: the reducer with minimal
//! ecart is used, and whenever that ecart exceeds the ecart of the current
//! remainder the remainder itself joins the reducer set. Pairs are
//! processed by increasing lcm degree and filtered with the Gebauer–Möller
//! installation of the product and chain criteria.
//!
//! Once the leading monomials generate an ideal of finite colength, every
//! monomial of degree `D = 1 + (max staircase degree)` lies in the leading
//! ideal, hence `m^D` lies in the ideal (Nakayama). From then on all
//! polynomials are computed modulo `m^D`, which is exact.

use std::time::Instant;

use rug::Integer;

use super::kernel::{combine, KPoly, Mon};
use super::staircase;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Timeout;

/// Checks the deadline once per reduction step; a step costs far more
/// than reading the clock.
pub(crate) struct Clock {
    deadline: Option<Instant>,
}

impl Clock {
    pub fn new(deadline: Option<Instant>) -> Clock {
        Clock { deadline }
    }

    pub fn tick(&mut self) -> Result<(), Timeout> {
        match self.deadline {
            Some(d) if Instant::now() >= d => Err(Timeout),
            _ => Ok(()),
        }
    }
}

/// One reduction step: cancels the leading term of `h` with `g`.
fn reduce_step(h: &KPoly, g: &KPoly, cutoff: Option<u32>) -> KPoly {
    let q = g.lm().div_into(h.lm());
    let gcd = Integer::from(h.lc().gcd_ref(g.lc()));
    let a = Integer::from(g.lc().div_exact_ref(&gcd));
    let b = Integer::from(h.lc().div_exact_ref(&gcd));
    let mut r = combine(&a, None, h, &b, Some(&q), g, cutoff);
    r.reduce_content();
    r
}

/// S-polynomial of `f` and `g` (both nonzero).
pub(crate) fn spoly(f: &KPoly, g: &KPoly, cutoff: Option<u32>) -> KPoly {
    let lcm = f.lm().lcm(g.lm());
    let sf = f.lm().div_into(&lcm);
    let sg = g.lm().div_into(&lcm);
    let gcd = Integer::from(f.lc().gcd_ref(g.lc()));
    let a = Integer::from(g.lc().div_exact_ref(&gcd));
    let b = Integer::from(f.lc().div_exact_ref(&gcd));
    let mut r = combine(&a, Some(&sf), f, &b, Some(&sg), g, cutoff);
    r.reduce_content();
    r
}

/// Mora normal form of `h` with respect to `reducers`.
///
/// With a cutoff the monomials below it form a finite set, so plain top
/// reduction terminates and remainders are not fed back as reducers.
pub(crate) fn normal_form(
    mut h: KPoly,
    reducers: &[KPoly],
    cutoff: Option<u32>,
    clock: &mut Clock,
) -> Result<KPoly, Timeout> {
    let mut extra: Vec<KPoly> = Vec::new();
    loop {
        if h.is_zero() {
            return Ok(h);
        }
        if let Some(c) = cutoff {
            if h.lm().deg >= c {
                return Ok(KPoly::default());
            }
        }
        clock.tick()?;
        let lm = h.lm();
        let mut best: Option<(u32, &KPoly)> = None;
        for g in reducers.iter().chain(extra.iter()) {
            if g.is_zero() || !g.lm().divides(lm) {
                continue;
            }
            let e = g.ecart();
            if best.is_none_or(|(be, _)| e < be) {
                best = Some((e, g));
            }
        }
        let Some((e, g)) = best else {
            return Ok(h);
        };
        let next = reduce_step(&h, g, cutoff);
        if cutoff.is_none() && e > h.ecart() {
            extra.push(h);
        }
        h = next;
    }
}

#[derive(Debug, Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Mon,
    seq: u64,
}

/// Counters reported alongside a computed basis.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EngineStats {
    pub pairs_created: u64,
    pub pairs_reduced: u64,
    pub pairs_skipped: u64,
    pub zero_reductions: u64,
    pub cutoff: Option<u32>,
    /// Provisional cutoffs that turned out too small.
    pub restarts: u32,
}

pub(crate) struct Engine {
    nvars: usize,
    pub basis: Vec<KPoly>,
    /// Elements whose leading monomial became divisible by a later one do
    /// not take part in new pairs but stay available as reducers.
    active: Vec<bool>,
    pairs: Vec<Pair>,
    seq: u64,
    minimal_lms: Vec<Vec<u32>>,
    pub cutoff: Option<u32>,
    criteria: bool,
    pub stats: EngineStats,
}

impl Engine {
    pub fn new(nvars: usize, criteria: bool) -> Engine {
        Engine {
            nvars,
            basis: Vec::new(),
            active: Vec::new(),
            pairs: Vec::new(),
            seq: 0,
            minimal_lms: Vec::new(),
            cutoff: None,
            criteria,
            stats: EngineStats::default(),
        }
    }

    /// Inserts an element of an already completed standard basis: no
    /// pairs are formed with earlier elements.
    pub fn insert_completed(&mut self, mut p: KPoly) {
        if let Some(c) = self.cutoff {
            p.truncate(c);
        }
        if p.is_zero() {
            return;
        }
        p.make_primitive();
        let lm = p.lm().clone();
        for (k, q) in self.basis.iter().enumerate() {
            if self.active[k] && !q.is_zero() && lm.divides(q.lm()) && q.lm() != &lm {
                self.active[k] = false;
            }
        }
        self.basis.push(p);
        self.active.push(true);
        self.note_leading_monomial(&lm);
    }

    /// Adds a new element together with its pairs.
    pub fn add(&mut self, mut h: KPoly) {
        if let Some(c) = self.cutoff {
            h.truncate(c);
        }
        if h.is_zero() {
            return;
        }
        h.make_primitive();
        let k = self.basis.len();
        let lm_k = h.lm().clone();

        if self.criteria {
            // chain criterion on the pending pairs
            let basis = &self.basis;
            let before = self.pairs.len();
            self.pairs.retain(|p| {
                !(lm_k.divides(&p.lcm)
                    && basis[p.i].lm().lcm(&lm_k) != p.lcm
                    && basis[p.j].lm().lcm(&lm_k) != p.lcm)
            });
            self.stats.pairs_skipped += (before - self.pairs.len()) as u64;
        }

        let mut fresh: Vec<(Pair, bool)> = Vec::new();
        for i in 0..k {
            if !self.active[i] || self.basis[i].is_zero() {
                continue;
            }
            let lm_i = self.basis[i].lm();
            let lcm = lm_i.lcm(&lm_k);
            if let Some(c) = self.cutoff {
                if lcm.deg >= c {
                    continue;
                }
            }
            let coprime = lm_i.coprime(&lm_k);
            self.seq += 1;
            fresh.push((
                Pair {
                    i,
                    j: k,
                    lcm,
                    seq: self.seq,
                },
                coprime,
            ));
        }
        self.stats.pairs_created += fresh.len() as u64;

        if self.criteria {
            let n = fresh.len();
            // drop a pair whose lcm is a proper multiple of another new lcm
            let keep: Vec<bool> = (0..n)
                .map(|a| {
                    !(0..n).any(|b| {
                        b != a
                            && fresh[b].0.lcm.divides(&fresh[a].0.lcm)
                            && fresh[b].0.lcm != fresh[a].0.lcm
                    })
                })
                .collect();
            let mut survivors: Vec<(Pair, bool)> = Vec::new();
            let mut classes: Vec<(Mon, bool)> = Vec::new();
            for (idx, (pair, coprime)) in fresh.into_iter().enumerate() {
                if !keep[idx] {
                    self.stats.pairs_skipped += 1;
                    continue;
                }
                if let Some(class) = classes.iter_mut().find(|(m, _)| *m == pair.lcm) {
                    class.1 |= coprime;
                    self.stats.pairs_skipped += 1;
                    continue;
                }
                classes.push((pair.lcm.clone(), coprime));
                survivors.push((pair, coprime));
            }
            for (pair, _) in survivors {
                let product = classes
                    .iter()
                    .find(|(m, _)| *m == pair.lcm)
                    .is_some_and(|(_, c)| *c);
                if product {
                    self.stats.pairs_skipped += 1;
                } else {
                    self.pairs.push(pair);
                }
            }
        } else {
            self.pairs.extend(fresh.into_iter().map(|(p, _)| p));
        }

        for (i, q) in self.basis.iter().enumerate() {
            if self.active[i] && !q.is_zero() && lm_k.divides(q.lm()) && q.lm() != &lm_k {
                self.active[i] = false;
            }
        }
        self.basis.push(h);
        self.active.push(true);
        // pending pairs are popped from the back: largest key first in the vec
        self.pairs
            .sort_by_key(|p| std::cmp::Reverse((p.lcm.deg, p.seq)));
        self.note_leading_monomial(&lm_k);
    }

    fn note_leading_monomial(&mut self, lm: &Mon) {
        let exps: Vec<u32> = lm.exps.to_vec();
        if self
            .minimal_lms
            .iter()
            .any(|m| staircase::divides(m, &exps))
        {
            return;
        }
        self.minimal_lms.retain(|m| !staircase::divides(&exps, m));
        self.minimal_lms.push(exps);
        if let Some(s) = staircase::staircase(&self.minimal_lms, self.nvars) {
            let d = s.max_degree.map_or(0, |d| d as u32 + 1);
            if self.cutoff.is_none_or(|c| d < c) {
                self.set_cutoff(d);
            }
        }
    }

    /// Computes modulo `m^d` from the start. The result is a standard
    /// basis of the ideal plus `m^d`; see [`Engine::certified`].
    pub fn provisional_cutoff(&mut self, d: u32) {
        self.set_cutoff(d);
    }

    /// True if the leading monomials found so far prove that `m^D` lies in
    /// the ideal for the current cutoff `D`.
    ///
    /// Elements are only known modulo `m^D`, but a leading monomial of
    /// degree below `D` is a leading monomial of a genuine ideal element.
    /// If those already have a finite staircase inside degree `D`, then
    /// `m^D` is in the ideal and the truncation lost nothing.
    pub fn certified(&self) -> bool {
        match self.cutoff {
            None => true,
            Some(d) => staircase::staircase(&self.minimal_lms, self.nvars)
                .is_some_and(|s| s.max_degree.map_or(0, |m| m + 1) <= u64::from(d)),
        }
    }
    fn set_cutoff(&mut self, d: u32) {
        self.cutoff = Some(d);
        self.stats.cutoff = Some(d);
        for p in &mut self.basis {
            p.truncate(d);
        }
        let before = self.pairs.len();
        let basis = &self.basis;
        self.pairs
            .retain(|p| p.lcm.deg < d && !basis[p.i].is_zero() && !basis[p.j].is_zero());
        self.stats.pairs_skipped += (before - self.pairs.len()) as u64;
    }

    /// Processes pairs until none are left.
    pub fn run(&mut self, clock: &mut Clock) -> Result<(), Timeout> {
        while let Some(pair) = self.pairs.pop() {
            clock.tick()?;
            if self.cutoff.is_some_and(|c| pair.lcm.deg >= c) {
                self.stats.pairs_skipped += 1;
                continue;
            }
            let (f, g) = (&self.basis[pair.i], &self.basis[pair.j]);
            if f.is_zero() || g.is_zero() {
                continue;
            }
            self.stats.pairs_reduced += 1;
            let s = spoly(f, g, self.cutoff);
            let h = normal_form(s, &self.basis, self.cutoff, clock)?;
            if h.is_zero() {
                self.stats.zero_reductions += 1;
            } else {
                self.add(h);
            }
        }
        Ok(())
    }

    pub fn minimal_leading_monomials(&self) -> &[Vec<u32>] {
        &self.minimal_lms
    }
}

/// True if every term of `p` is sorted and has a nonzero coefficient.
#[cfg(test)]
pub(crate) fn well_formed(p: &KPoly) -> bool {
    p.terms.iter().all(|t| t.coef != 0)
        && p
            .terms
            .windows(2)
            .all(|w| super::kernel::cmp_mon(&w[0].mon, &w[1].mon) == std::cmp::Ordering::Greater)
}
