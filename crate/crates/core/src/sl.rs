//! The grading algebra `sl_n` for `n = 3, 4`: canonical basis, weights,
//! the root system `A_{n-1}`, the weight set `Θ_n` and the matrix products
//! `[x,y]`, `x∘y`, `x◇y` and `(x|y)`.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Rational};

/// Rejects every rank other than 3 and 4.
pub fn check_n(n: usize) -> Result<()> {
    match n {
        3 | 4 => Ok(()),
        _ => Err(Error::InvalidRank(n)),
    }
}

/// Canonical basis of `sl_n`: the off-diagonal units `E_ij` in lexicographic
/// order, followed by `H_i = E_ii - E_{i+1,i+1}`.
#[derive(Clone, Debug)]
pub struct SlBasis {
    n: usize,
    elements: Vec<Matrix>,
    names: Vec<String>,
}

impl SlBasis {
    pub fn new(n: usize) -> Result<Self> {
        check_n(n)?;
        Ok(Self::any_rank(n))
    }

    /// Same construction without the rank restriction; used for ambient
    /// algebras such as `sl_7` and `sl_9`.
    pub fn any_rank(n: usize) -> Self {
        assert!(n >= 2, "sl_n needs n >= 2");
        let mut elements = Vec::with_capacity(n * n - 1);
        let mut names = Vec::with_capacity(n * n - 1);
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    elements.push(Matrix::unit(n, n, i, j));
                    names.push(format!("E_{}_{}", i + 1, j + 1));
                }
            }
        }
        for i in 0..n - 1 {
            let mut h = Matrix::zeros(n, n);
            h[(i, i)] = Rational::one();
            h[(i + 1, i + 1)] = -Rational::one();
            elements.push(h);
            names.push(format!("H_{}", i + 1));
        }
        SlBasis { n, elements, names }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Matrix] {
        &self.elements
    }

    pub fn element(&self, k: usize) -> &Matrix {
        &self.elements[k]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, k: usize) -> &str {
        &self.names[k]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|s| s == name)
    }

    /// Index of `E_ij` (0-based, `i != j`).
    pub fn e_index(&self, i: usize, j: usize) -> usize {
        assert!(i != j && i < self.n && j < self.n);
        i * (self.n - 1) + if j > i { j - 1 } else { j }
    }

    /// Index of `H_i` (0-based, `i < n-1`).
    pub fn h_index(&self, i: usize) -> usize {
        assert!(i + 1 < self.n);
        self.n * (self.n - 1) + i
    }

    /// Indices of the simple raising operators `E_{i,i+1}`.
    pub fn raising(&self) -> Vec<usize> {
        (0..self.n - 1).map(|i| self.e_index(i, i + 1)).collect()
    }

    /// Indices of the simple lowering operators `E_{i+1,i}`.
    pub fn lowering(&self) -> Vec<usize> {
        (0..self.n - 1).map(|i| self.e_index(i + 1, i)).collect()
    }

    /// Indices of the Cartan generators `H_i`.
    pub fn cartan(&self) -> Vec<usize> {
        (0..self.n - 1).map(|i| self.h_index(i)).collect()
    }

    /// Coordinates of a traceless matrix in this basis, or `None` if `x` is
    /// not traceless or has the wrong size.
    pub fn coords(&self, x: &Matrix) -> Option<Vec<Rational>> {
        let n = self.n;
        if x.shape() != (n, n) || !x.trace().is_zero() {
            return None;
        }
        let mut out = Vec::with_capacity(self.dim());
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    out.push(x[(i, j)].clone());
                }
            }
        }
        let mut acc = Rational::zero();
        for i in 0..n - 1 {
            acc += &x[(i, i)];
            out.push(acc.clone());
        }
        Some(out)
    }

    /// Linear combination of the basis elements.
    pub fn combine(&self, coeffs: &[Rational]) -> Matrix {
        assert_eq!(coeffs.len(), self.dim());
        let mut m = Matrix::zeros(self.n, self.n);
        for (c, e) in coeffs.iter().zip(&self.elements) {
            if !c.is_zero() {
                m.axpy(c, e);
            }
        }
        m
    }

    /// Weight of the `k`-th basis element under the adjoint action.
    pub fn weight_of(&self, k: usize) -> Weight {
        let nd = self.n * (self.n - 1);
        if k >= nd {
            return Weight::zero(self.n);
        }
        let i = k / (self.n - 1);
        let r = k % (self.n - 1);
        let j = if r >= i { r + 1 } else { r };
        Weight::eps(self.n, i) - Weight::eps(self.n, j)
    }
}

/// An integral weight of `sl_n` in ε-coordinates, normalised so that the
/// smallest coordinate is zero.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    coords: Vec<i64>,
}

impl Weight {
    pub fn from_eps(coords: Vec<i64>) -> Self {
        assert!(!coords.is_empty());
        let m = *coords.iter().min().unwrap();
        Weight {
            coords: coords.into_iter().map(|c| c - m).collect(),
        }
    }

    pub fn zero(n: usize) -> Self {
        Weight { coords: vec![0; n] }
    }

    /// `ε_i` (0-based).
    pub fn eps(n: usize, i: usize) -> Self {
        let mut c = vec![0; n];
        c[i] = 1;
        Weight::from_eps(c)
    }

    /// The weight taking values `h[i]` on `H_i`.
    pub fn from_h_values(h: &[i64]) -> Self {
        let n = h.len() + 1;
        let mut c = vec![0i64; n];
        for i in (0..n - 1).rev() {
            c[i] = c[i + 1] + h[i];
        }
        Weight::from_eps(c)
    }

    pub fn n(&self) -> usize {
        self.coords.len()
    }

    pub fn eps_coords(&self) -> &[i64] {
        &self.coords
    }

    /// Value on `H_i` (0-based).
    pub fn eval_h(&self, i: usize) -> i64 {
        self.coords[i] - self.coords[i + 1]
    }

    pub fn h_values(&self) -> Vec<i64> {
        (0..self.n() - 1).map(|i| self.eval_h(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn is_dominant(&self) -> bool {
        (0..self.n() - 1).all(|i| self.eval_h(i) >= 0)
    }

    /// A linear functional positive on every simple root; larger means
    /// higher in the dominance order.
    pub fn height(&self) -> i64 {
        let n = self.n() as i64;
        self.coords
            .iter()
            .enumerate()
            .map(|(j, &c)| (n - 1 - 2 * j as i64) * c)
            .sum()
    }

    /// `self - other` is a nonnegative integer combination of simple roots.
    pub fn dominates(&self, other: &Weight) -> bool {
        let d = self.clone() - other.clone();
        // Coefficient of α_i = ε_i - ε_{i+1} in a representative with zero sum.
        let n = d.n() as i64;
        let sum: i64 = d.coords.iter().sum();
        if sum % n != 0 {
            return false;
        }
        let shift = sum / n;
        let mut acc = 0i64;
        for &c in &d.coords[..d.n() - 1] {
            acc += c - shift;
            if acc < 0 {
                return false;
            }
        }
        true
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Weight{self}")
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, rhs: Weight) -> Weight {
        assert_eq!(self.n(), rhs.n());
        Weight::from_eps(self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect())
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, rhs: Weight) -> Weight {
        self + (-rhs)
    }
}

impl Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight::from_eps(self.coords.iter().map(|c| -c).collect())
    }
}

impl Serialize for Weight {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coords.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<i64>::deserialize(d)?;
        if v.is_empty() {
            return Err(serde::de::Error::custom("empty weight"));
        }
        Ok(Weight::from_eps(v))
    }
}

/// The symbolic names of the dominant weights in `Θ_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ThetaLabel {
    #[serde(rename = "adj")]
    Adj,
    #[serde(rename = "V")]
    V,
    #[serde(rename = "V'")]
    Vp,
    #[serde(rename = "S")]
    S,
    #[serde(rename = "S'")]
    Sp,
    #[serde(rename = "Lam")]
    Lam,
    #[serde(rename = "Lam'")]
    Lamp,
    #[serde(rename = "T")]
    T,
}

impl ThetaLabel {
    pub const ALL: [ThetaLabel; 8] = [
        ThetaLabel::Adj,
        ThetaLabel::V,
        ThetaLabel::Vp,
        ThetaLabel::S,
        ThetaLabel::Sp,
        ThetaLabel::Lam,
        ThetaLabel::Lamp,
        ThetaLabel::T,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ThetaLabel::Adj => "adj",
            ThetaLabel::V => "V",
            ThetaLabel::Vp => "V'",
            ThetaLabel::S => "S",
            ThetaLabel::Sp => "S'",
            ThetaLabel::Lam => "Lam",
            ThetaLabel::Lamp => "Lam'",
            ThetaLabel::T => "T",
        }
    }

    pub fn highest_weight(self, n: usize) -> Weight {
        let e = |i| Weight::eps(n, i);
        let z = Weight::zero(n);
        match self {
            ThetaLabel::Adj => e(0) - e(n - 1),
            ThetaLabel::V => e(0),
            ThetaLabel::Vp => z - e(n - 1),
            ThetaLabel::S => e(0) + e(0),
            ThetaLabel::Sp => z - e(n - 1) - e(n - 1),
            ThetaLabel::Lam => e(0) + e(1),
            ThetaLabel::Lamp => z - e(n - 2) - e(n - 1),
            ThetaLabel::T => z,
        }
    }

    pub fn dim(self, n: usize) -> usize {
        match self {
            ThetaLabel::Adj => n * n - 1,
            ThetaLabel::V | ThetaLabel::Vp => n,
            ThetaLabel::S | ThetaLabel::Sp => n * (n + 1) / 2,
            ThetaLabel::Lam | ThetaLabel::Lamp => n * (n - 1) / 2,
            ThetaLabel::T => 1,
        }
    }
}

impl fmt::Display for ThetaLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ThetaLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let norm = match t {
            "g" | "adj" | "A" => "adj",
            "Λ" | "Lam" | "Lambda" => "Lam",
            "Λ'" | "Λ′" | "Lam'" | "Lambda'" => "Lam'",
            "V′" => "V'",
            "S′" => "S'",
            other => other,
        };
        ThetaLabel::ALL
            .into_iter()
            .find(|l| l.as_str() == norm)
            .ok_or_else(|| Error::UnknownLabel(s.to_string()))
    }
}

/// `Θ_n^+` with one canonical label per dominant weight.
///
/// For `n = 4`, `Λ ≅ Λ'` and the label `Lam` is used; for `n = 3`,
/// `Λ ≅ V'` and `Λ' ≅ V`, and the labels `Lam`, `Lam'` are used.
#[derive(Clone, Debug)]
pub struct ThetaSet {
    n: usize,
    entries: Vec<(ThetaLabel, Weight)>,
}

impl ThetaSet {
    pub fn new(n: usize) -> Result<Self> {
        check_n(n)?;
        use ThetaLabel::*;
        let labels: &[ThetaLabel] = if n == 3 {
            &[Adj, S, Sp, Lam, Lamp, T]
        } else {
            &[Adj, V, Vp, S, Sp, Lam, T]
        };
        Ok(ThetaSet {
            n,
            entries: labels.iter().map(|&l| (l, l.highest_weight(n))).collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[(ThetaLabel, Weight)] {
        &self.entries
    }

    pub fn labels(&self) -> Vec<ThetaLabel> {
        self.entries.iter().map(|(l, _)| *l).collect()
    }

    /// Canonical label of a dominant weight, if it lies in `Θ_n^+`.
    pub fn label_of(&self, w: &Weight) -> Option<ThetaLabel> {
        self.entries.iter().find(|(_, x)| x == w).map(|(l, _)| *l)
    }

    /// Maps any label to the canonical label carrying the same weight.
    pub fn canonical(&self, l: ThetaLabel) -> ThetaLabel {
        self.label_of(&l.highest_weight(self.n))
            .expect("every label has a weight in Θ_n^+")
    }
}

/// The full weight set `Θ_n = {0, ±ε_i±ε_j, ±ε_i, ±2ε_i}`.
pub fn theta_weights(n: usize) -> BTreeSet<Weight> {
    let mut out = BTreeSet::new();
    let z = Weight::zero(n);
    out.insert(z.clone());
    for i in 0..n {
        let e = Weight::eps(n, i);
        out.insert(e.clone());
        out.insert(z.clone() - e.clone());
        out.insert(e.clone() + e.clone());
        out.insert(z.clone() - e.clone() - e.clone());
        for j in 0..n {
            if i != j {
                let f = Weight::eps(n, j);
                out.insert(e.clone() - f.clone());
                out.insert(e.clone() + f.clone());
                out.insert(z.clone() - e.clone() - f);
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Root {
    pub weight: Weight,
    pub i: usize,
    pub j: usize,
    pub simple: bool,
}

/// The roots `ε_i - ε_j` of `A_{n-1}`, with the simple ones flagged.
pub fn root_system(n: usize) -> Vec<Root> {
    let mut out = Vec::with_capacity(n * (n - 1));
    for i in 0..n {
        for j in 0..n {
            if i != j {
                out.push(Root {
                    weight: Weight::eps(n, i) - Weight::eps(n, j),
                    i,
                    j,
                    simple: j == i + 1,
                });
            }
        }
    }
    out
}

fn check_square(op: &'static str, x: &Matrix, y: &Matrix) -> Result<()> {
    if !x.is_square() || x.shape() != y.shape() {
        return Err(crate::linalg::ShapeError::Mismatch {
            op,
            lhs: x.shape(),
            rhs: y.shape(),
        }
        .into());
    }
    Ok(())
}

/// `[x,y] = xy - yx`.
pub fn bracket(x: &Matrix, y: &Matrix) -> Result<Matrix> {
    check_square("bracket", x, y)?;
    Ok(&(x * y) - &(y * x))
}

/// `x◇y = xy + yx`.
pub fn diamond(x: &Matrix, y: &Matrix) -> Result<Matrix> {
    check_square("diamond", x, y)?;
    Ok(&(x * y) + &(y * x))
}

/// `(x|y) = tr(xy)/n`.
pub fn trace_form(x: &Matrix, y: &Matrix) -> Result<Rational> {
    check_square("trace_form", x, y)?;
    let n = x.rows();
    let mut t = Rational::zero();
    for i in 0..n {
        for k in 0..n {
            let a = &x[(i, k)];
            let b = &y[(k, i)];
            if !a.is_zero() && !b.is_zero() {
                t += &(a * b);
            }
        }
    }
    Ok(t / Rational::from(n))
}

/// `x∘y = xy + yx - (2/n) tr(xy) I`.
pub fn circ(x: &Matrix, y: &Matrix) -> Result<Matrix> {
    let d = diamond(x, y)?;
    let t = trace_form(x, y)?;
    let two_t = &t + &t;
    let mut out = d;
    for i in 0..x.rows() {
        out[(i, i)] -= &two_t;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;
    use proptest::prelude::*;

    #[test]
    fn basis_layout() {
        for n in [3, 4] {
            let b = SlBasis::new(n).unwrap();
            assert_eq!(b.dim(), n * n - 1);
            for (k, e) in b.elements().iter().enumerate() {
                assert!(e.trace().is_zero());
                let c = b.coords(e).unwrap();
                for (i, x) in c.iter().enumerate() {
                    assert_eq!(x.is_one(), i == k, "coords of {}", b.name(k));
                    assert!(x.is_zero() || x.is_one());
                }
            }
            assert_eq!(b.name(b.e_index(0, 1)), "E_1_2");
            assert_eq!(b.name(b.e_index(n - 1, 0)), format!("E_{n}_1"));
            assert_eq!(b.name(b.h_index(0)), "H_1");
        }
        assert!(SlBasis::new(5).is_err());
    }

    #[test]
    fn bracket_examples() {
        let b = SlBasis::new(3).unwrap();
        let e12 = b.element(b.e_index(0, 1));
        let e21 = b.element(b.e_index(1, 0));
        let h1 = b.element(b.h_index(0));
        assert_eq!(&bracket(e12, e21).unwrap(), h1);
        assert!(bracket(h1, h1).unwrap().is_zero());
        assert_eq!(bracket(h1, e12).unwrap(), e12.scale(&Rational::from_int(2)));
        assert!(bracket(e12, &Matrix::identity(4)).is_err());
    }

    #[test]
    fn product_examples() {
        let b = SlBasis::new(3).unwrap();
        let e12 = b.element(b.e_index(0, 1));
        let e21 = b.element(b.e_index(1, 0));
        let h1 = b.element(b.h_index(0));
        let mut d = Matrix::zeros(3, 3);
        d[(0, 0)] = Rational::one();
        d[(1, 1)] = Rational::one();
        assert_eq!(diamond(e12, e21).unwrap(), d);
        assert_eq!(trace_form(h1, h1).unwrap(), q(2, 3));
    }

    #[test]
    fn roots() {
        assert_eq!(root_system(3).len(), 6);
        let r4 = root_system(4);
        assert_eq!(r4.len(), 12);
        assert_eq!(r4.iter().filter(|r| r.simple).count(), 3);
        let a1 = Weight::eps(4, 0) - Weight::eps(4, 1);
        assert_eq!(a1.h_values(), vec![2, -1, 0]);
        for r in &r4 {
            assert!(theta_weights(4).contains(&r.weight));
        }
    }

    #[test]
    fn weights_canonical() {
        let a = Weight::from_eps(vec![1, 1, 1, 1]);
        assert_eq!(a, Weight::zero(4));
        let w = Weight::from_h_values(&[1, 0, 1]);
        assert_eq!(w.h_values(), vec![1, 0, 1]);
        assert_eq!(w, ThetaLabel::Adj.highest_weight(4));
        assert_eq!(ThetaLabel::Lam.highest_weight(3), ThetaLabel::Vp.highest_weight(3));
        assert_eq!(ThetaLabel::Lamp.highest_weight(3), ThetaLabel::V.highest_weight(3));
        assert_eq!(ThetaLabel::Lamp.highest_weight(4), ThetaLabel::Lam.highest_weight(4));
        assert!(ThetaLabel::S
            .highest_weight(4)
            .dominates(&ThetaLabel::Lam.highest_weight(4)));
        assert!(!ThetaLabel::V.highest_weight(4).dominates(&Weight::zero(4)));
        for n in [3, 4] {
            let simple: Vec<_> = root_system(n).into_iter().filter(|r| r.simple).collect();
            assert!(simple.iter().all(|r| r.weight.height() > 0));
        }
    }

    #[test]
    fn theta_sets() {
        let t3 = ThetaSet::new(3).unwrap();
        let t4 = ThetaSet::new(4).unwrap();
        assert_eq!(t3.entries().len(), 6);
        assert_eq!(t4.entries().len(), 7);
        assert_eq!(t3.canonical(ThetaLabel::V), ThetaLabel::Lamp);
        assert_eq!(t4.canonical(ThetaLabel::Lamp), ThetaLabel::Lam);
        for n in [3, 4] {
            let th = theta_weights(n);
            for w in &th {
                assert!(th.contains(&(-w.clone())));
            }
            let t = ThetaSet::new(n).unwrap();
            let dominant: Vec<_> = th.iter().filter(|w| w.is_dominant()).collect();
            assert_eq!(dominant.len(), t.entries().len());
            for w in dominant {
                assert!(t.label_of(w).is_some());
            }
        }
    }

    #[test]
    fn label_json() {
        let s = serde_json::to_string(&ThetaLabel::Lamp).unwrap();
        assert_eq!(s, "\"Lam'\"");
        assert_eq!("S'".parse::<ThetaLabel>().unwrap(), ThetaLabel::Sp);
        assert!("X".parse::<ThetaLabel>().is_err());
    }

    fn basis_idx(n: usize) -> impl Strategy<Value = (usize, usize, usize)> {
        let d = n * n - 1;
        (0..d, 0..d, 0..d)
    }

    #[test]
    fn jacobi_and_invariance_on_basis() {
        for n in [3, 4] {
            let b = SlBasis::new(n).unwrap();
            let e = b.elements();
            for x in e {
                for y in e {
                    let xy = bracket(x, y).unwrap();
                    for z in e {
                        let j = &(&bracket(&xy, z).unwrap() + &bracket(&bracket(y, z).unwrap(), x).unwrap())
                            + &bracket(&bracket(z, x).unwrap(), y).unwrap();
                        assert!(j.is_zero());
                        let inv = trace_form(&xy, z).unwrap() + trace_form(y, &bracket(x, z).unwrap()).unwrap();
                        assert!(inv.is_zero());
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn circ_traceless_and_consistent((i, j, k) in basis_idx(4), a in -3i64..4, c in -3i64..4) {
            let b = SlBasis::new(4).unwrap();
            let x = &b.element(i).scale(&Rational::from_int(a)) + b.element(k);
            let y = &b.element(j).scale(&Rational::from_int(c)) + b.element(i);
            let o = circ(&x, &y).unwrap();
            prop_assert!(o.trace().is_zero());
            let t = trace_form(&x, &y).unwrap();
            let expect = &diamond(&x, &y).unwrap() - &Matrix::identity(4).scale(&(&t + &t));
            prop_assert_eq!(o, expect);
            prop_assert_eq!(trace_form(&x, &y).unwrap(), trace_form(&y, &x).unwrap());
        }

        #[test]
        fn weight_of_matches_adjoint(n in 3usize..5, k in 0usize..15) {
            let b = SlBasis::new(n).unwrap();
            prop_assume!(k < b.dim());
            let w = b.weight_of(k);
            for (i, h) in b.cartan().into_iter().enumerate() {
                let hx = bracket(b.element(h), b.element(k)).unwrap();
                prop_assert_eq!(hx, b.element(k).scale(&Rational::from_int(w.eval_h(i))));
            }
        }
    }
}
