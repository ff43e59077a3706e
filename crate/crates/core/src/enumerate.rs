//! Exhaustive and random generation of small labelled posets.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::poset::FinitePoset;

/// `a, b, c, …` then `e26, e27, …`.
pub fn element_names(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| {
            if i < 26 {
                ((b'a' + i as u8) as char).to_string()
            } else {
                format!("e{i}")
            }
        })
        .collect()
}

fn build(n: usize, le: &[Vec<bool>], name: &str) -> FinitePoset {
    let mut pairs = Vec::new();
    for (a, row) in le.iter().enumerate() {
        for (b, &x) in row.iter().enumerate() {
            if x && a != b {
                pairs.push((a, b));
            }
        }
    }
    FinitePoset::from_index_pairs(name, element_names(n), &pairs).expect("generated order is valid")
}

/// Calls `f` on every partial order on the labelled set `{a, b, …}` of size
/// `n`, each exactly once.
///
/// Element `k` is inserted into every poset on the first `k` elements with a
/// down-closed set `D` below it and an up-closed set `U` above it, `D ∩ U = ∅`
/// and `D ⪯ U` pointwise.
pub fn for_each_poset(n: usize, mut f: impl FnMut(&FinitePoset)) {
    let mut le: Vec<Vec<bool>> = Vec::new();
    let mut count = 0usize;
    extend(n, &mut le, &mut |le: &Vec<Vec<bool>>| {
        let p = build(n, le, &format!("p{n}#{count}"));
        count += 1;
        f(&p);
    });
}

fn extend(n: usize, le: &mut Vec<Vec<bool>>, emit: &mut dyn FnMut(&Vec<Vec<bool>>)) {
    let k = le.len();
    if k == n {
        emit(le);
        return;
    }
    assert!(k < 20, "poset enumeration is limited to small sizes");
    for down_mask in 0u32..(1 << k) {
        let down: Vec<usize> = (0..k).filter(|&i| down_mask & (1 << i) != 0).collect();
        let down_closed = down
            .iter()
            .all(|&d| (0..k).all(|c| !le[c][d] || down_mask & (1 << c) != 0));
        if !down_closed {
            continue;
        }
        for up_mask in 0u32..(1 << k) {
            if up_mask & down_mask != 0 {
                continue;
            }
            let up: Vec<usize> = (0..k).filter(|&i| up_mask & (1 << i) != 0).collect();
            let up_closed = up
                .iter()
                .all(|&u| (0..k).all(|c| !le[u][c] || up_mask & (1 << c) != 0));
            if !up_closed || !down.iter().all(|&d| up.iter().all(|&u| le[d][u])) {
                continue;
            }
            for (i, row) in le.iter_mut().enumerate() {
                row.push(down_mask & (1 << i) != 0);
            }
            let mut row: Vec<bool> = (0..k).map(|i| up_mask & (1 << i) != 0).collect();
            row.push(true);
            le.push(row);
            extend(n, le, emit);
            le.pop();
            for row in le.iter_mut() {
                row.pop();
            }
        }
    }
}

pub fn all_posets(n: usize) -> Vec<FinitePoset> {
    let mut out = Vec::new();
    for_each_poset(n, |p| out.push(p.clone()));
    out
}

/// Every poset with at most `max` elements, smallest first.
pub fn all_posets_up_to(max: usize) -> Vec<FinitePoset> {
    (0..=max).flat_map(all_posets).collect()
}

/// A random poset on `n` elements: each pair of a random linear extension
/// is related with probability `density`, then closed transitively.
pub fn random_poset<R: Rng>(rng: &mut R, n: usize, density: f64) -> FinitePoset {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.gen_bool(density) {
                pairs.push((order[i], order[j]));
            }
        }
    }
    FinitePoset::from_index_pairs(&format!("random{n}"), element_names(n), &pairs)
        .expect("pairs follow a linear order")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn labelled_poset_counts() {
        let counts: Vec<usize> = (0..=5).map(|n| all_posets(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 3, 19, 219, 4231]);
    }

    #[test]
    fn enumerated_posets_are_distinct_and_valid() {
        let ps = all_posets(4);
        let mut rels: Vec<Vec<(usize, usize)>> = ps.iter().map(|p| p.strict_pairs()).collect();
        assert!(ps.iter().all(|p| p.satisfies_axioms()));
        rels.sort();
        rels.dedup();
        assert_eq!(rels.len(), 219);
    }

    #[test]
    fn random_posets_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 0..8 {
            assert!(random_poset(&mut rng, n, 0.4).satisfies_axioms());
        }
    }
}
