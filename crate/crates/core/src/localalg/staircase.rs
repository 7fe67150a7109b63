//! Monomial ideals: minimal generators and staircase size.
//!
//! Counting splits the staircase into slices along the last variable.
//! Between two consecutive exponents of that variable occurring in the
//! generators the slice ideal does not change, so each run of equal slices
//! is counted once and multiplied by its length.

/// Minimal generators of the monomial ideal spanned by `gens`, sorted by
/// degree then lexicographically.
pub(crate) fn minimalize(gens: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let mut sorted: Vec<&Vec<u32>> = gens.iter().collect();
    sorted.sort_by(|a, b| {
        let da: u64 = a.iter().map(|&e| u64::from(e)).sum();
        let db: u64 = b.iter().map(|&e| u64::from(e)).sum();
        da.cmp(&db).then_with(|| a.cmp(b))
    });
    sorted.dedup();
    let mut kept: Vec<Vec<u32>> = Vec::new();
    for g in sorted {
        if !kept.iter().any(|k| divides(k, g)) {
            kept.push(g.clone());
        }
    }
    kept
}

pub(crate) fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Summary of the staircase of a monomial ideal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Staircase {
    pub count: u128,
    /// Maximal degree of a staircase monomial; `None` when the staircase
    /// is empty.
    pub max_degree: Option<u64>,
}

/// Staircase of the ideal generated by `gens` in `nvars` variables, or
/// `None` if it is infinite.
pub(crate) fn staircase(gens: &[Vec<u32>], nvars: usize) -> Option<Staircase> {
    let gens = minimalize(gens);
    count_rec(&gens, nvars)
}

fn count_rec(gens: &[Vec<u32>], nvars: usize) -> Option<Staircase> {
    if gens.iter().any(|g| g.iter().all(|&e| e == 0)) {
        return Some(Staircase {
            count: 0,
            max_degree: None,
        });
    }
    if nvars == 0 {
        // only the constant monomial is left and it is not in the ideal
        return Some(Staircase {
            count: 1,
            max_degree: Some(0),
        });
    }
    let last = nvars - 1;
    let pure = gens
        .iter()
        .filter(|g| g[..last].iter().all(|&e| e == 0))
        .map(|g| g[last])
        .min()?;

    let mut levels: Vec<u32> = gens.iter().map(|g| g[last]).filter(|&e| e < pure).collect();
    levels.push(0);
    levels.sort_unstable();
    levels.dedup();

    let mut total = Staircase {
        count: 0,
        max_degree: None,
    };
    for (i, &lo) in levels.iter().enumerate() {
        let hi = levels.get(i + 1).copied().unwrap_or(pure);
        let slice: Vec<Vec<u32>> = gens
            .iter()
            .filter(|g| g[last] <= lo)
            .map(|g| g[..last].to_vec())
            .collect();
        let slice = minimalize(&slice);
        let sub = count_rec(&slice, last)?;
        if sub.count == 0 {
            continue;
        }
        total.count += sub.count * u128::from(hi - lo);
        let top = sub.max_degree.unwrap_or(0) + u64::from(hi - 1);
        total.max_degree = Some(total.max_degree.map_or(top, |d| d.max(top)));
    }
    Some(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Enumerates the staircase inside the box given by the pure powers.
    fn brute(gens: &[Vec<u32>], nvars: usize) -> Option<(u128, Option<u64>)> {
        let mut bounds = vec![0u32; nvars];
        for (v, b) in bounds.iter_mut().enumerate() {
            *b = gens
                .iter()
                .filter(|g| g.iter().enumerate().all(|(k, &e)| k == v || e == 0))
                .map(|g| g[v])
                .min()?;
        }
        let mut count = 0u128;
        let mut maxd = None;
        let mut cur = vec![0u32; nvars];
        loop {
            if !gens.iter().any(|g| divides(g, &cur)) {
                count += 1;
                let d: u64 = cur.iter().map(|&e| u64::from(e)).sum();
                maxd = Some(maxd.map_or(d, |m: u64| m.max(d)));
            }
            let mut k = 0;
            loop {
                if k == nvars {
                    return Some((count, maxd));
                }
                cur[k] += 1;
                if cur[k] < bounds[k].max(1) {
                    break;
                }
                cur[k] = 0;
                k += 1;
            }
        }
    }

    #[test]
    fn small_examples() {
        let s = staircase(&[vec![2, 0], vec![0, 3]], 2).unwrap();
        assert_eq!(s.count, 6);
        assert_eq!(s.max_degree, Some(3));
        let s = staircase(&[vec![2, 0], vec![1, 1], vec![0, 3]], 2).unwrap();
        assert_eq!(s.count, 4);
        assert_eq!(staircase(&[vec![1, 0]], 2), None);
        assert_eq!(staircase(&[vec![0, 0]], 2).unwrap().count, 0);
    }

    #[test]
    fn minimal_generators_are_incomparable() {
        let m = minimalize(&[vec![2, 1], vec![1, 0], vec![0, 3], vec![1, 0], vec![0, 4]]);
        assert_eq!(m, vec![vec![1, 0], vec![0, 3]]);
    }

    #[test]
    fn matches_enumeration_on_random_ideals() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let nvars = rng.gen_range(1..=4);
            let mut gens: Vec<Vec<u32>> = (0..nvars)
                .map(|v| {
                    let mut g = vec![0; nvars];
                    g[v] = rng.gen_range(1..7);
                    g
                })
                .collect();
            for _ in 0..rng.gen_range(0..6) {
                gens.push((0..nvars).map(|_| rng.gen_range(0..5)).collect());
            }
            let fast = staircase(&gens, nvars).map(|s| (s.count, s.max_degree));
            assert_eq!(fast, brute(&gens, nvars), "{gens:?}");
        }
    }
}
