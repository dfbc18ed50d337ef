//! Test oracle: reducibility by the permutation-of-blocks definition,
//! independent of the digraph route used by the library.

use mband_core::RationalMatrix;

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

/// True iff some symmetric permutation of `a` has a zero upper-right
/// block (or `a` is the 1x1 zero matrix). Exponential; orders <= 4 only.
pub fn is_reducible_by_permutation(a: &RationalMatrix) -> bool {
    let n = a.order();
    if n == 1 {
        return a.get(0, 0).is_zero();
    }
    for sigma in permutations(n) {
        for k in 1..n {
            if (0..k).all(|u| (k..n).all(|v| a.get(sigma[u], sigma[v]).is_zero())) {
                return true;
            }
        }
    }
    false
}
