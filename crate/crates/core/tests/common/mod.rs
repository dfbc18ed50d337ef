//! Independent test oracles: brute-force routines that share no code with
//! the implementation paths they check.

use mband_core::digraph::Digraph;
use mband_core::{Rational, RationalMatrix};

/// Determinant by the Leibniz permutation sum. Exponential; use for orders
/// up to 5 or so.
pub fn leibniz_det(a: &RationalMatrix) -> Rational {
    fn go(
        a: &RationalMatrix,
        chosen: &mut Vec<usize>,
        used: &mut Vec<bool>,
        acc: &mut Rational,
    ) {
        let n = a.order();
        if chosen.len() == n {
            let mut inversions = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if chosen[i] > chosen[j] {
                        inversions += 1;
                    }
                }
            }
            let mut term = if inversions % 2 == 0 {
                Rational::one()
            } else {
                -Rational::one()
            };
            for (i, &j) in chosen.iter().enumerate() {
                term = term * a.get(i, j);
            }
            *acc = &*acc + &term;
            return;
        }
        for j in 0..n {
            if !used[j] {
                used[j] = true;
                chosen.push(j);
                go(a, chosen, used, acc);
                chosen.pop();
                used[j] = false;
            }
        }
    }
    let n = a.order();
    let mut acc = Rational::zero();
    go(a, &mut Vec::with_capacity(n), &mut vec![false; n], &mut acc);
    acc
}

/// All simple paths from `from` to `to` by checking every ordered sequence
/// of distinct intermediate vertices against the edge relation. Returns
/// vertex sequences sorted lexicographically.
pub fn brute_force_simple_paths(
    g: &Digraph,
    from: usize,
    to: usize,
) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let others: Vec<usize> = (0..n).filter(|&v| v != from && v != to).collect();
    let mut found = Vec::new();
    let mut seq: Vec<usize> = Vec::new();
    let mut used = vec![false; others.len()];

    fn is_path(g: &Digraph, from: usize, mids: &[usize], to: usize) -> bool {
        let mut prev = from;
        for &v in mids {
            if !g.has_edge(prev, v) {
                return false;
            }
            prev = v;
        }
        g.has_edge(prev, to)
    }

    fn go(
        g: &Digraph,
        from: usize,
        to: usize,
        others: &[usize],
        used: &mut Vec<bool>,
        seq: &mut Vec<usize>,
        found: &mut Vec<Vec<usize>>,
    ) {
        if is_path(g, from, seq, to) {
            let mut full = vec![from];
            full.extend_from_slice(seq);
            full.push(to);
            found.push(full);
        }
        for k in 0..others.len() {
            if !used[k] {
                used[k] = true;
                seq.push(others[k]);
                go(g, from, to, others, used, seq, found);
                seq.pop();
                used[k] = false;
            }
        }
    }

    go(g, from, to, &others, &mut used, &mut seq, &mut found);
    found.sort();
    found
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                go(n, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(n, &mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Reducibility by the permutation definition: some symmetric permutation
/// of `A` has a zero upper-right block. Exponential in the order; use for
/// orders up to 4.
pub fn is_reducible_by_permutation(a: &RationalMatrix) -> bool {
    let n = a.order();
    if n == 1 {
        return a.get(0, 0).is_zero();
    }
    for sigma in permutations(n) {
        for k in 1..n {
            let zero_block = (0..k)
                .all(|u| (k..n).all(|v| a.get(sigma[u], sigma[v]).is_zero()));
            if zero_block {
                return true;
            }
        }
    }
    false
}
