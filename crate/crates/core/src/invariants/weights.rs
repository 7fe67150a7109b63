//! Positive weight vectors making a polynomial weighted homogeneous.
//!
//! The weights solving `<w, a> = <w, b>` for all support exponents `a`, `b`
//! form a linear subspace. Inside it, the point with `w >= 1` that is
//! lexicographically smallest is found by a sequence of small exact linear
//! programs solved by Fourier–Motzkin elimination; it is then scaled to
//! coprime integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::poly::{Polynomial, Rational};

/// Weights and weighted degree, normalized to coprime positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Weights {
    pub weights: Vec<BigInt>,
    pub degree: BigInt,
}

impl Weights {
    pub fn as_rationals(&self) -> (Vec<Rational>, Rational) {
        (
            self.weights.iter().cloned().map(Rational::from_integer).collect(),
            Rational::from_integer(self.degree.clone()),
        )
    }
}

/// Affine function `c[0]*t_0 + ... + c[k-1]*t_{k-1} + c[k]`.
type Affine = Vec<Rational>;

/// Returns weights if `f` is weighted homogeneous with positive weights in
/// the given coordinates. The zero polynomial has none.
pub fn find_positive_weights(f: &Polynomial) -> Option<Weights> {
    let n = f.nvars();
    let support: Vec<Vec<i64>> = f
        .terms()
        .map(|(m, _)| m.exponents().iter().map(|&e| i64::from(e)).collect())
        .collect();
    let first = support.first()?;
    let rows: Vec<Vec<Rational>> = support[1..]
        .iter()
        .map(|a| {
            a.iter()
                .zip(first)
                .map(|(x, y)| Rational::from_integer(BigInt::from(x - y)))
                .collect()
        })
        .collect();
    let basis = nullspace(rows, n);
    let k = basis.len();

    // w_i as affine functions of the nullspace coordinates
    let mut w: Vec<Affine> = (0..n)
        .map(|i| {
            let mut a: Affine = basis.iter().map(|v| v[i].clone()).collect();
            a.push(Rational::zero());
            a
        })
        .collect();
    let mut constraints: Vec<Affine> = w
        .iter()
        .map(|wi| {
            let mut c = wi.clone();
            c[k] -= Rational::one();
            c
        })
        .collect();

    let mut point = Vec::with_capacity(n);
    for i in 0..n {
        let target = w[i].clone();
        let value = minimize(&target, &constraints)?;
        // fix w_i = value by eliminating one parameter it depends on
        let mut eq = target;
        eq[k] -= &value;
        if let Some(p) = (0..eq.len() - 1).find(|&j| !eq[j].is_zero()) {
            for a in w.iter_mut().chain(constraints.iter_mut()) {
                substitute(a, &eq, p);
            }
        }
        point.push(value);
    }

    let lcm = point
        .iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let ints: Vec<BigInt> = point.iter().map(|r| r.numer() * (&lcm / r.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let weights: Vec<BigInt> = ints.iter().map(|x| x / &g).collect();
    let degree = first
        .iter()
        .zip(&weights)
        .map(|(&e, wi)| BigInt::from(e) * wi)
        .sum();
    Some(Weights { weights, degree })
}

fn k_of(a: &Affine) -> usize {
    a.len() - 1
}

/// Replaces `t_p` in `a` using the equation `eq(t) = 0`.
fn substitute(a: &mut Affine, eq: &Affine, p: usize) {
    if a[p].is_zero() {
        return;
    }
    let factor = &a[p] / &eq[p];
    for (x, e) in a.iter_mut().zip(eq) {
        *x -= &factor * e;
    }
}

/// Minimum of `target` over `{t : c(t) >= 0 for all c}`, or `None` if the
/// region is empty. The caller guarantees boundedness from below.
fn minimize(target: &Affine, constraints: &[Affine]) -> Option<Rational> {
    let k = k_of(target);
    let Some(p) = (0..k).find(|&j| !target[j].is_zero()) else {
        return feasible(constraints).then(|| target[k].clone());
    };
    // Introduce z = target(t) as a new last parameter and eliminate t_p:
    // t_p = (z - (target - target_p t_p)) / target_p.
    let mut system: Vec<Affine> = constraints
        .iter()
        .map(|c| {
            let mut out: Affine = Vec::with_capacity(k + 2);
            let factor = &c[p] / &target[p];
            for j in 0..k {
                out.push(if j == p {
                    Rational::zero()
                } else {
                    &c[j] - &factor * &target[j]
                });
            }
            out.push(factor.clone());
            out.push(&c[k] - &factor * &target[k]);
            out
        })
        .collect();
    for j in 0..k {
        system = eliminate(system, j);
    }
    let z = k;
    let mut lower: Option<Rational> = None;
    let mut upper: Option<Rational> = None;
    for c in &system {
        let (a, b) = (&c[z], &c[z + 1]);
        if a.is_zero() {
            if b.is_negative() {
                return None;
            }
        } else {
            let bound = -b / a;
            if a.is_positive() {
                if lower.as_ref().is_none_or(|l| &bound > l) {
                    lower = Some(bound);
                }
            } else if upper.as_ref().is_none_or(|u| &bound < u) {
                upper = Some(bound);
            }
        }
    }
    let lower = lower?;
    if upper.is_some_and(|u| u < lower) {
        return None;
    }
    Some(lower)
}

fn feasible(constraints: &[Affine]) -> bool {
    let Some(first) = constraints.first() else {
        return true;
    };
    let k = k_of(first);
    let mut system = constraints.to_vec();
    for j in 0..k {
        system = eliminate(system, j);
    }
    system.iter().all(|c| !c[k].is_negative())
}

/// Fourier–Motzkin elimination of variable `j` from `c(t) >= 0` rows.
fn eliminate(system: Vec<Affine>, j: usize) -> Vec<Affine> {
    let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
    for c in system {
        if c[j].is_positive() {
            pos.push(c);
        } else if c[j].is_negative() {
            neg.push(c);
        } else {
            rest.push(c);
        }
    }
    for a in &pos {
        for b in &neg {
            let (fa, fb) = (-&b[j], a[j].clone());
            let row: Affine = a.iter().zip(b).map(|(x, y)| x * &fa + y * &fb).collect();
            if !rest.contains(&row) {
                rest.push(row);
            }
        }
    }
    rest
}

/// Basis of `{v in Q^n : row . v = 0 for every row}`.
pub(crate) fn nullspace(mut rows: Vec<Vec<Rational>>, n: usize) -> Vec<Vec<Rational>> {
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = rows[r][col].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let f = rows[i][col].clone();
                let (src, dst) = if i < r {
                    let (a, b) = rows.split_at_mut(r);
                    (&b[0], &mut a[i])
                } else {
                    let (a, b) = rows.split_at_mut(i);
                    (&a[r], &mut b[0])
                };
                for (d, s) in dst.iter_mut().zip(src) {
                    *d -= &f * s;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Rational::zero(); n];
            v[free] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -rows[row][free].clone();
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    fn weights(src: &str, vars: &[&str]) -> Option<(Vec<i64>, i64)> {
        let f = parse_polynomial(src, vars).unwrap();
        find_positive_weights(&f).map(|w| {
            (
                w.weights.iter().map(|x| x.try_into().unwrap()).collect(),
                (&w.degree).try_into().unwrap(),
            )
        })
    }

    #[test]
    fn spec_examples() {
        assert_eq!(weights("x^3+y^4", &["x", "y"]), Some((vec![4, 3], 12)));
        assert_eq!(weights("x^3+y^4+x*y^3", &["x", "y"]), None);
        assert_eq!(weights("x^2*y", &["x", "y"]), Some((vec![1, 1], 3)));
        assert_eq!(weights("x^2*y+y^3", &["x", "y"]), Some((vec![1, 1], 3)));
    }

    #[test]
    fn fractional_minimum_is_scaled() {
        assert_eq!(weights("x^3+y^2", &["x", "y"]), Some((vec![2, 3], 6)));
        assert_eq!(weights("x^2+y^3+z^5", &["x", "y", "z"]), Some((vec![15, 10, 6], 30)));
    }

    #[test]
    fn degenerate_directions() {
        // 3 w_x = w_x + w_y
        assert_eq!(weights("x^3+x*y", &["x", "y"]), Some((vec![1, 2], 3)));
        // x + x*y forces w_y = 0
        assert_eq!(weights("x+x*y", &["x", "y"]), None);
    }

    #[test]
    fn unused_variable_gets_weight_one() {
        assert_eq!(weights("x^2", &["x", "y"]), Some((vec![1, 1], 2)));
    }

    #[test]
    fn nullspace_dimension() {
        let r = |v: &[i64]| v.iter().map(|&x| Rational::from_integer(BigInt::from(x))).collect();
        assert_eq!(nullspace(vec![r(&[1, 2, 3])], 3).len(), 2);
        assert_eq!(nullspace(vec![r(&[1, 0]), r(&[0, 1])], 2).len(), 0);
        assert_eq!(nullspace(vec![], 2).len(), 2);
    }
}
