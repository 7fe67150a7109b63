use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use super::PolyError;

/// Exponent vector of a monomial, one entry per ring variable.
///
/// The `Ord` impl is the default local order: lower total degree is
/// greater, ties are broken by reverse lexicographic comparison (the
/// monomial with the smaller exponent in the last differing variable is
/// greater). The constant monomial `1` is the maximum.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: SmallVec<[u32; 4]>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: SmallVec::from_elem(0, nvars),
        }
    }

    pub fn new(exps: impl Into<Vec<u32>>) -> Self {
        Monomial {
            exps: SmallVec::from_vec(exps.into()),
        }
    }

    /// The monomial `x_var^exp` in a ring with `nvars` variables.
    pub fn var_power(nvars: usize, var: usize, exp: u32) -> Self {
        let mut m = Self::one(nvars);
        m.exps[var] = exp;
        m
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.exps[var]
    }

    pub fn degree(&self) -> u64 {
        self.exps.iter().map(|&e| u64::from(e)).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial, PolyError> {
        debug_assert_eq!(self.nvars(), other.nvars());
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(&a, &b)| a.checked_add(b).ok_or(PolyError::ExponentOverflow))
            .collect::<Result<SmallVec<_>, _>>()?;
        Ok(Monomial { exps })
    }

    pub fn checked_pow(&self, k: u32) -> Result<Monomial, PolyError> {
        let exps = self
            .exps
            .iter()
            .map(|&a| a.checked_mul(k).ok_or(PolyError::ExponentOverflow))
            .collect::<Result<SmallVec<_>, _>>()?;
        Ok(Monomial { exps })
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial {
            exps: other.exps.iter().zip(&self.exps).map(|(b, a)| b - a).collect(),
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(&a, &b)| a.max(b)).collect(),
        }
    }

    pub(crate) fn extended(&self, extra: usize) -> Monomial {
        let mut exps = self.exps.clone();
        exps.extend(std::iter::repeat_n(0, extra));
        Monomial { exps }
    }

    pub(crate) fn exps_mut(&mut self) -> &mut [u32] {
        &mut self.exps
    }
}

/// Reverse lexicographic comparison of equal-degree exponent vectors:
/// greater means smaller exponent in the last differing position.
pub(crate) fn revlex(a: &[u32], b: &[u32]) -> Ordering {
    for (x, y) in a.iter().zip(b).rev() {
        match x.cmp(y) {
            Ordering::Equal => continue,
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .degree()
            .cmp(&self.degree())
            .then_with(|| revlex(&self.exps, &other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps.as_slice())
    }
}
