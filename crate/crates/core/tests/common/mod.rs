//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use theta_graded::sl::Weight;

/// Character of the irreducible `sl_n` module with highest weight `w`, by
/// enumerating semistandard Young tableaux of the corresponding partition.
pub fn ssyt_character(w: &Weight) -> BTreeMap<Weight, usize> {
    let n = w.n();
    let shape: Vec<usize> = w.eps_coords().iter().map(|&c| c as usize).collect();
    assert!(shape.windows(2).all(|p| p[0] >= p[1]), "weight must be dominant");
    let mut cells = Vec::new();
    for (r, &len) in shape.iter().enumerate() {
        for c in 0..len {
            cells.push((r, c));
        }
    }
    let mut filling = vec![vec![0usize; shape.first().copied().unwrap_or(0)]; n];
    let mut out = BTreeMap::new();
    fill(&cells, 0, n, &mut filling, &mut out);
    if cells.is_empty() {
        out.insert(Weight::zero(n), 1);
    }
    out
}

fn fill(cells: &[(usize, usize)], idx: usize, n: usize, t: &mut Vec<Vec<usize>>, out: &mut BTreeMap<Weight, usize>) {
    if idx == cells.len() {
        if idx > 0 {
            let mut content = vec![0i64; n];
            for &(r, c) in cells {
                content[t[r][c]] += 1;
            }
            *out.entry(Weight::from_eps(content)).or_insert(0) += 1;
        }
        return;
    }
    let (r, c) = cells[idx];
    let lo_row = if c > 0 { t[r][c - 1] } else { 0 };
    let lo_col = if r > 0 { t[r - 1][c] + 1 } else { 0 };
    for v in lo_row.max(lo_col)..n {
        t[r][c] = v;
        fill(cells, idx + 1, n, t, out);
    }
}

/// Character of a tensor product.
pub fn tensor_character(a: &BTreeMap<Weight, usize>, b: &BTreeMap<Weight, usize>) -> BTreeMap<Weight, usize> {
    let mut out = BTreeMap::new();
    for (wa, ka) in a {
        for (wb, kb) in b {
            *out.entry(wa.clone() + wb.clone()).or_insert(0) += ka * kb;
        }
    }
    out
}

/// Full decomposition of a character into irreducibles: highest weight and
/// multiplicity, peeling from the top.
pub fn decompose_character(ch: &BTreeMap<Weight, usize>) -> Vec<(Weight, usize)> {
    let mut rem: BTreeMap<Weight, i64> = ch.iter().map(|(w, k)| (w.clone(), *k as i64)).collect();
    let mut out = Vec::new();
    loop {
        rem.retain(|_, k| *k != 0);
        assert!(rem.values().all(|k| *k > 0), "character is not a sum of irreducibles");
        let Some(top) = rem.keys().max_by_key(|w| w.height()).cloned() else {
            break;
        };
        let k = rem[&top];
        for (w, m) in ssyt_character(&top) {
            *rem.entry(w).or_insert(0) -= k * m as i64;
        }
        out.push((top, k as usize));
    }
    out
}

/// Dimension of the irreducible module with highest weight `w` by the Weyl
/// dimension formula.
pub fn weyl_dim(w: &Weight) -> usize {
    let l = w.eps_coords();
    let n = l.len();
    let (mut num, mut den) = (1i64, 1i64);
    for i in 0..n {
        for j in i + 1..n {
            num *= l[i] - l[j] + (j - i) as i64;
            den *= (j - i) as i64;
        }
    }
    (num / den) as usize
}
