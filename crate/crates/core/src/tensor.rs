//! Tensor products of catalog modules and their `Θ`-components.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::module::{catalog, theta_multiplicities, GModule};
use crate::par::{map_with, Exec};
use crate::sl::{check_n, ThetaLabel, ThetaSet};

/// `x.(u⊗v) = x.u⊗v + u⊗x.v`; the basis of `X⊗Y` is ordered with the `Y`
/// index varying fastest.
pub fn tensor(x: &GModule, y: &GModule) -> Result<GModule> {
    if x.n() != y.n() {
        return Err(Error::MismatchedRank(x.n(), y.n()));
    }
    let ix = Matrix::identity(x.dim());
    let iy = Matrix::identity(y.dim());
    let actions = x
        .actions()
        .iter()
        .zip(y.actions())
        .map(|(a, b)| &a.kron(&iy) + &ix.kron(b))
        .collect();
    let label = match (x.label(), y.label()) {
        (Some(a), Some(b)) => Some(format!("{a}⊗{b}")),
        _ => None,
    };
    GModule::new(x.n(), actions, label)
}

/// Multiplicities of the `Θ_n^+` constituents, plus the total dimension of
/// the constituents outside `Θ_n^+`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ThetaMultiset {
    pub mults: BTreeMap<ThetaLabel, usize>,
    pub remainder_dim: usize,
}

impl ThetaMultiset {
    pub fn theta_dim(&self, n: usize) -> usize {
        self.mults.iter().map(|(l, k)| l.dim(n) * k).sum()
    }

    pub fn get(&self, l: ThetaLabel) -> usize {
        self.mults.get(&l).copied().unwrap_or(0)
    }

    /// Human-readable sum such as `adj+adj+T`, or `0`.
    pub fn formula(mults: &BTreeMap<ThetaLabel, usize>) -> String {
        let mut parts = Vec::new();
        for (l, k) in mults {
            for _ in 0..*k {
                parts.push(l.as_str());
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("+")
        }
    }
}

/// `Θ(X⊗Y)` for catalog labels.
pub fn theta_component(x: ThetaLabel, y: ThetaLabel, n: usize) -> Result<ThetaMultiset> {
    check_n(n)?;
    let m = tensor(&catalog(n, x)?, &catalog(n, y)?)?;
    let (mults, remainder_dim) = theta_multiplicities(&m)?;
    Ok(ThetaMultiset { mults, remainder_dim })
}

/// Row and column labels of the published tables.
pub fn table_labels(n: usize) -> Result<Vec<ThetaLabel>> {
    use ThetaLabel::*;
    check_n(n)?;
    Ok(if n == 3 {
        vec![Adj, S, Sp, V, Vp]
    } else {
        vec![Adj, S, Lam, Sp, V, Vp]
    })
}

/// Transcribed table of `Θ`-components, row by row in [`table_labels`] order.
pub fn golden_table(n: usize) -> Result<Vec<Vec<BTreeMap<ThetaLabel, usize>>>> {
    use ThetaLabel::*;
    check_n(n)?;
    let t = ThetaSet::new(n)?;
    let raw: Vec<Vec<&[ThetaLabel]>> = if n == 3 {
        vec![
            vec![&[Adj, Adj, T], &[S, Lam], &[Sp, Lamp], &[Sp, Lamp], &[S, Lam]],
            vec![&[S, Lam], &[Sp], &[Adj, T], &[Adj], &[Lamp]],
            vec![&[Sp, Lamp], &[Adj, T], &[S], &[Lam], &[Adj]],
            vec![&[Sp, Lamp], &[Adj], &[Lam], &[S, Lam], &[Adj, T]],
            vec![&[S, Lam], &[Lamp], &[Adj], &[Adj, T], &[Sp, Lamp]],
        ]
    } else {
        vec![
            vec![&[Adj, Adj, T], &[S, Lam], &[S, Lam, Sp], &[Sp, Lam], &[V], &[Vp]],
            vec![&[S, Lam], &[], &[Adj], &[Adj, T], &[], &[V]],
            vec![&[S, Lam, Sp], &[Adj], &[Adj, T], &[Adj], &[Vp], &[V]],
            vec![&[Sp, Lam], &[Adj, T], &[Adj], &[], &[Vp], &[]],
            vec![&[V], &[], &[Vp], &[Vp], &[S, Lam], &[Adj, T]],
            vec![&[Vp], &[V], &[V], &[], &[Adj, T], &[Sp, Lam]],
        ]
    };
    Ok(raw
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|cell| {
                    let mut m = BTreeMap::new();
                    for &l in cell {
                        *m.entry(t.canonical(l)).or_insert(0) += 1;
                    }
                    m
                })
                .collect()
        })
        .collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct TableCell {
    pub row: ThetaLabel,
    pub col: ThetaLabel,
    pub expected: BTreeMap<ThetaLabel, usize>,
    pub computed: BTreeMap<ThetaLabel, usize>,
    pub remainder_dim: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TableReport {
    pub n: usize,
    pub cells: Vec<TableCell>,
}

impl TableReport {
    pub fn all_pass(&self) -> bool {
        self.cells.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> usize {
        self.cells.iter().filter(|c| !c.pass).count()
    }
}

/// Recomputes every cell of the table for `n` and compares it with the
/// transcription.
pub fn verify_tables(n: usize) -> Result<TableReport> {
    verify_tables_with(n, Exec::Parallel)
}

pub fn verify_tables_with(n: usize, exec: Exec) -> Result<TableReport> {
    let labels = table_labels(n)?;
    let golden = golden_table(n)?;
    let mut pairs = Vec::new();
    for (i, &r) in labels.iter().enumerate() {
        for (j, &c) in labels.iter().enumerate() {
            pairs.push((i, j, r, c));
        }
    }
    let computed = map_with(exec, &pairs, |&(_, _, r, c)| theta_component(r, c, n));
    let mut cells = Vec::with_capacity(pairs.len());
    for ((i, j, r, c), res) in pairs.into_iter().zip(computed) {
        let tm = res?;
        let expected = golden[i][j].clone();
        cells.push(TableCell {
            row: r,
            col: c,
            pass: tm.mults == expected,
            expected,
            computed: tm.mults,
            remainder_dim: tm.remainder_dim,
        });
    }
    Ok(TableReport { n, cells })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::isotypic_decompose;

    #[test]
    fn tensor_examples() {
        let v = catalog(4, ThetaLabel::V).unwrap();
        let t = catalog(4, ThetaLabel::T).unwrap();
        let vt = tensor(&v, &t).unwrap();
        assert_eq!(vt.actions(), v.actions());
        let s = catalog(4, ThetaLabel::S).unwrap();
        let sp = catalog(4, ThetaLabel::Sp).unwrap();
        assert_eq!(tensor(&s, &sp).unwrap().dim(), 100);
        let av = tensor(&catalog(4, ThetaLabel::Adj).unwrap(), &v).unwrap();
        assert!(av.is_representation());
        assert!(tensor(&v, &catalog(3, ThetaLabel::V).unwrap()).is_err());
    }

    #[test]
    fn theta_component_examples() {
        let gg = theta_component(ThetaLabel::Adj, ThetaLabel::Adj, 3).unwrap();
        assert_eq!(gg.mults, BTreeMap::from([(ThetaLabel::Adj, 2), (ThetaLabel::T, 1)]));
        assert_eq!(gg.remainder_dim, 47);
        let ss = theta_component(ThetaLabel::S, ThetaLabel::S, 4).unwrap();
        assert!(ss.mults.is_empty());
        assert_eq!(ss.remainder_dim, 100);
        let ssp = theta_component(ThetaLabel::S, ThetaLabel::Sp, 4).unwrap();
        assert_eq!(ssp.mults, BTreeMap::from([(ThetaLabel::Adj, 1), (ThetaLabel::T, 1)]));
        assert_eq!(ssp.remainder_dim, 84);
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn golden_tables_are_symmetric() {
        for n in [3, 4] {
            let g = golden_table(n).unwrap();
            for i in 0..g.len() {
                for j in 0..g.len() {
                    assert_eq!(g[i][j], g[j][i], "n={n} cell ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn published_tables_reproduce() {
        for (n, cells) in [(3, 25), (4, 36)] {
            let r = verify_tables(n).unwrap();
            assert_eq!(r.cells.len(), cells);
            if let Some(c) = r.cells.iter().find(|c| !c.pass) {
                panic!(
                    "n={n} {}x{}: expected {:?}, computed {:?}",
                    c.row, c.col, c.expected, c.computed
                );
            }
        }
    }

    #[test]
    fn tensor_square_of_v_decomposes() {
        let v = catalog(4, ThetaLabel::V).unwrap();
        let d = isotypic_decompose(&tensor(&v, &v).unwrap()).unwrap();
        assert_eq!(
            d.multiplicities(),
            BTreeMap::from([(ThetaLabel::S, 1), (ThetaLabel::Lam, 1)])
        );
    }
}
