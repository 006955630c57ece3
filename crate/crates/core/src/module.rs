//! Finite-dimensional `sl_n`-modules: the standard catalog, weight spaces,
//! highest-weight vectors, isotypic decomposition and equivariant maps.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{kernel_from_rref, EchelonBuilder, Matrix, Rational, Subspace};
use crate::sl::{bracket, check_n, SlBasis, ThetaLabel, ThetaSet, Weight};

/// A module given by one action matrix per element of the canonical basis
/// of `sl_n`.
#[derive(Clone, Debug)]
pub struct GModule {
    n: usize,
    dim: usize,
    actions: Vec<Matrix>,
    label: Option<String>,
}

impl GModule {
    pub fn new(n: usize, actions: Vec<Matrix>, label: Option<String>) -> Result<Self> {
        check_n(n)?;
        if actions.len() != n * n - 1 {
            return Err(Error::InvalidData(format!(
                "expected {} action matrices, got {}",
                n * n - 1,
                actions.len()
            )));
        }
        let dim = actions[0].rows();
        for a in &actions {
            if a.shape() != (dim, dim) {
                return Err(Error::InvalidData(format!(
                    "action matrix has shape {:?}, expected {dim}x{dim}",
                    a.shape()
                )));
            }
        }
        Ok(GModule { n, dim, actions, label })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.actions
    }

    pub fn action(&self, k: usize) -> &Matrix {
        &self.actions[k]
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    /// Action matrix of an arbitrary traceless `x`.
    pub fn act(&self, x: &Matrix) -> Matrix {
        let basis = SlBasis::any_rank(self.n);
        let c = basis.coords(x).expect("traceless n x n matrix");
        let mut out = Matrix::zeros(self.dim, self.dim);
        for (ci, a) in c.iter().zip(&self.actions) {
            if !ci.is_zero() {
                out.axpy(ci, a);
            }
        }
        out
    }

    /// First basis pair `(x_i, x_j)` with `ρ([x_i,x_j]) != [ρ(x_i),ρ(x_j)]`.
    pub fn representation_defect(&self) -> Option<(String, String)> {
        let basis = SlBasis::any_rank(self.n);
        for i in 0..basis.dim() {
            for j in i + 1..basis.dim() {
                let xy = bracket(basis.element(i), basis.element(j)).expect("square");
                let lhs = self.act(&xy);
                let a = &self.actions[i];
                let b = &self.actions[j];
                let rhs = &(a * b) - &(b * a);
                if lhs != rhs {
                    return Some((basis.name(i).to_string(), basis.name(j).to_string()));
                }
            }
        }
        None
    }

    pub fn is_representation(&self) -> bool {
        self.representation_defect().is_none()
    }

    pub fn direct_sum(parts: &[GModule]) -> Result<GModule> {
        let n = parts
            .first()
            .map(|p| p.n)
            .ok_or_else(|| Error::InvalidData("empty direct sum".into()))?;
        for p in parts {
            if p.n != n {
                return Err(Error::MismatchedRank(n, p.n));
            }
        }
        let dim: usize = parts.iter().map(|p| p.dim).sum();
        let mut actions = Vec::with_capacity(n * n - 1);
        for k in 0..n * n - 1 {
            let mut m = Matrix::zeros(dim, dim);
            let mut off = 0;
            for p in parts {
                for (i, row) in p.actions[k].to_rows().into_iter().enumerate() {
                    for (j, x) in row.into_iter().enumerate() {
                        if !x.is_zero() {
                            m[(off + i, off + j)] = x;
                        }
                    }
                }
                off += p.dim;
            }
            actions.push(m);
        }
        GModule::new(n, actions, None)
    }

    /// `true` when every `H_i` acts diagonally, i.e. the basis consists of
    /// weight vectors.
    pub fn has_weight_basis(&self) -> bool {
        let b = SlBasis::any_rank(self.n);
        b.cartan().into_iter().all(|h| {
            let a = &self.actions[h];
            (0..self.dim).all(|i| (0..self.dim).all(|j| i == j || a[(i, j)].is_zero()))
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let b = SlBasis::any_rank(self.n);
        let actions: BTreeMap<String, &Matrix> = b.names().iter().cloned().zip(self.actions.iter()).collect();
        serde_json::json!({
            "n": self.n,
            "dim": self.dim,
            "label": self.label,
            "actions": actions,
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<GModule> {
        #[derive(Deserialize)]
        struct Raw {
            n: usize,
            dim: usize,
            #[serde(default)]
            label: Option<String>,
            actions: BTreeMap<String, Matrix>,
        }
        let raw: Raw = serde_json::from_value(v.clone())?;
        check_n(raw.n)?;
        let b = SlBasis::any_rank(raw.n);
        let mut actions = Vec::with_capacity(b.dim());
        for name in b.names() {
            let m = raw
                .actions
                .get(name)
                .ok_or_else(|| Error::InvalidData(format!("missing action for {name}")))?;
            if m.shape() != (raw.dim, raw.dim) {
                return Err(Error::InvalidData(format!("action {name} has shape {:?}", m.shape())));
            }
            actions.push(m.clone());
        }
        if let Some(extra) = raw.actions.keys().find(|k| b.index_of(k).is_none()) {
            return Err(Error::InvalidData(format!("unknown basis element {extra}")));
        }
        GModule::new(raw.n, actions, raw.label)
    }
}

/// How elements of a catalog module are realised as matrices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Model {
    /// Traceless `n×n` matrices in the canonical `sl_n` basis.
    Traceless,
    /// Column vectors.
    Column,
    /// Symmetric matrices: `E_ii`, then `E_ij + E_ji` for `i < j`.
    Symmetric,
    /// Skew matrices: `E_ij - E_ji` for `i < j`.
    Skew,
    /// A single scalar, as a `1×1` matrix.
    Scalar,
}

impl Model {
    pub fn of(label: ThetaLabel) -> Model {
        match label {
            ThetaLabel::Adj => Model::Traceless,
            ThetaLabel::V | ThetaLabel::Vp => Model::Column,
            ThetaLabel::S | ThetaLabel::Sp => Model::Symmetric,
            ThetaLabel::Lam | ThetaLabel::Lamp => Model::Skew,
            ThetaLabel::T => Model::Scalar,
        }
    }

    pub fn dim(self, n: usize) -> usize {
        match self {
            Model::Traceless => n * n - 1,
            Model::Column => n,
            Model::Symmetric => n * (n + 1) / 2,
            Model::Skew => n * (n - 1) / 2,
            Model::Scalar => 1,
        }
    }

    fn pairs(n: usize) -> Vec<(usize, usize)> {
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
    }

    /// Matrix realisation of the coordinate vector `v`.
    pub fn to_matrix(self, n: usize, v: &[Rational]) -> Matrix {
        assert_eq!(v.len(), self.dim(n));
        match self {
            Model::Traceless => SlBasis::any_rank(n).combine(v),
            Model::Column => Matrix::column(v.to_vec()),
            Model::Scalar => Matrix::from_vec(1, 1, v.to_vec()),
            Model::Symmetric => {
                let mut m = Matrix::zeros(n, n);
                for i in 0..n {
                    m[(i, i)] = v[i].clone();
                }
                for (k, (i, j)) in Self::pairs(n).into_iter().enumerate() {
                    m[(i, j)] = v[n + k].clone();
                    m[(j, i)] = v[n + k].clone();
                }
                m
            }
            Model::Skew => {
                let mut m = Matrix::zeros(n, n);
                for (k, (i, j)) in Self::pairs(n).into_iter().enumerate() {
                    m[(i, j)] = v[k].clone();
                    m[(j, i)] = -&v[k];
                }
                m
            }
        }
    }

    /// Coordinates of `m`, or `None` if `m` is not of this shape/symmetry.
    pub fn from_matrix(self, n: usize, m: &Matrix) -> Option<Vec<Rational>> {
        match self {
            Model::Traceless => SlBasis::any_rank(n).coords(m),
            Model::Column => (m.shape() == (n, 1)).then(|| m.as_slice().to_vec()),
            Model::Scalar => (m.shape() == (1, 1)).then(|| m.as_slice().to_vec()),
            Model::Symmetric => {
                if m.shape() != (n, n) || *m != m.transpose() {
                    return None;
                }
                let mut v: Vec<Rational> = (0..n).map(|i| m[(i, i)].clone()).collect();
                v.extend(Self::pairs(n).into_iter().map(|(i, j)| m[(i, j)].clone()));
                Some(v)
            }
            Model::Skew => {
                if m.shape() != (n, n) || *m != -&m.transpose() {
                    return None;
                }
                Some(Self::pairs(n).into_iter().map(|(i, j)| m[(i, j)].clone()).collect())
            }
        }
    }

    pub fn basis_matrix(self, n: usize, k: usize) -> Matrix {
        let mut v = vec![Rational::zero(); self.dim(n)];
        v[k] = Rational::one();
        self.to_matrix(n, &v)
    }
}

/// `x.m` for the catalog module `label`, on matrix realisations.
pub fn act_on_model(label: ThetaLabel, x: &Matrix, m: &Matrix) -> Matrix {
    let xt = x.transpose();
    match label {
        ThetaLabel::Adj => &(x * m) - &(m * x),
        ThetaLabel::V => x * m,
        ThetaLabel::Vp => -&(&xt * m),
        ThetaLabel::S | ThetaLabel::Lam => &(x * m) + &(m * &xt),
        ThetaLabel::Sp | ThetaLabel::Lamp => -&(&(m * x) + &(&xt * m)),
        ThetaLabel::T => Matrix::zeros(1, 1),
    }
}

/// The standard module with the given label.
pub fn catalog(n: usize, label: ThetaLabel) -> Result<GModule> {
    check_n(n)?;
    let basis = SlBasis::new(n)?;
    let model = Model::of(label);
    let d = model.dim(n);
    let elems: Vec<Matrix> = (0..d).map(|k| model.basis_matrix(n, k)).collect();
    let actions = basis
        .elements()
        .iter()
        .map(|x| {
            let mut a = Matrix::zeros(d, d);
            for (k, e) in elems.iter().enumerate() {
                let img = act_on_model(label, x, e);
                let c = model.from_matrix(n, &img).expect("catalog action preserves the model");
                for (i, ci) in c.into_iter().enumerate() {
                    a[(i, k)] = ci;
                }
            }
            a
        })
        .collect();
    GModule::new(n, actions, Some(label.as_str().to_string()))
}

/// Weight spaces of a module.
#[derive(Clone, Debug)]
pub struct WeightDecomposition {
    pub spaces: BTreeMap<Weight, Subspace>,
    pub total_dim: usize,
}

impl WeightDecomposition {
    pub fn multiplicity(&self, w: &Weight) -> usize {
        self.spaces.get(w).map_or(0, Subspace::dim)
    }

    pub fn character(&self) -> BTreeMap<Weight, usize> {
        self.spaces.iter().map(|(w, s)| (w.clone(), s.dim())).collect()
    }
}

fn integer_eigen_bound(a: &Matrix) -> i64 {
    let mut best = Rational::zero();
    for i in 0..a.rows() {
        let s: Rational = a.row(i).iter().map(Rational::abs).sum();
        if s > best {
            best = s;
        }
    }
    // ceil
    let n = best.to_big();
    let q = n.numer() / n.denom();
    i64::try_from(q).unwrap_or(i64::MAX / 4) + 1
}

/// Simultaneous eigenspaces of the `H_i`.
pub fn weight_decompose(m: &GModule) -> Result<WeightDecomposition> {
    let basis = SlBasis::any_rank(m.n);
    let hs = basis.cartan();
    let d = m.dim;
    let mut spaces: BTreeMap<Weight, Subspace> = BTreeMap::new();
    if m.has_weight_basis() {
        let mut groups: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
        for i in 0..d {
            let mut hv = Vec::with_capacity(hs.len());
            for &h in &hs {
                let x = &m.actions[h][(i, i)];
                let v = x
                    .to_i64()
                    .filter(|_| x.is_integer())
                    .ok_or_else(|| Error::NonIntegralWeight {
                        element: basis.name(h).to_string(),
                    })?;
                hv.push(v);
            }
            groups.entry(Weight::from_h_values(&hv)).or_default().push(i);
        }
        for (w, idx) in groups {
            let vecs = idx.into_iter().map(|i| {
                let mut v = vec![Rational::zero(); d];
                v[i] = Rational::one();
                v
            });
            spaces.insert(w, Subspace::from_vectors(d, vecs));
        }
        return Ok(WeightDecomposition { spaces, total_dim: d });
    }
    // General path: refine by the eigenspaces of each H_i in turn.
    let mut pieces: Vec<(Vec<i64>, Subspace)> = vec![(Vec::new(), Subspace::full(d))];
    for &h in &hs {
        let a = &m.actions[h];
        let bound = integer_eigen_bound(a);
        let mut next = Vec::new();
        for (vals, sub) in pieces {
            let mut found = 0;
            for c in -bound..=bound {
                let shifted = {
                    let mut s = a.clone();
                    let cc = Rational::from_int(c);
                    for i in 0..d {
                        s[(i, i)] -= &cc;
                    }
                    s
                };
                let w = sub.basis().transpose();
                let sys = &shifted * &w;
                let ker = crate::linalg::kernel(&sys);
                if ker.dim() == 0 {
                    continue;
                }
                let vecs = ker.vectors().into_iter().map(|k| w.apply(&k));
                let s = Subspace::from_vectors(d, vecs);
                found += s.dim();
                let mut v2 = vals.clone();
                v2.push(c);
                next.push((v2, s));
            }
            if found != sub.dim() {
                return Err(Error::NonIntegralWeight {
                    element: basis.name(h).to_string(),
                });
            }
        }
        pieces = next;
    }
    for (vals, s) in pieces {
        spaces.insert(Weight::from_h_values(&vals), s);
    }
    Ok(WeightDecomposition { spaces, total_dim: d })
}

/// Vectors of weight `λ` killed by every `E_{i,i+1}`.
pub fn highest_weight_vectors(m: &GModule, lambda: &Weight) -> Result<Subspace> {
    let wd = weight_decompose(m)?;
    Ok(hw_vectors_in(m, &wd, lambda))
}

fn hw_vectors_in(m: &GModule, wd: &WeightDecomposition, lambda: &Weight) -> Subspace {
    let Some(space) = wd.spaces.get(lambda) else {
        return Subspace::zero(m.dim);
    };
    let basis = SlBasis::any_rank(m.n);
    let w = space.basis().transpose();
    let blocks: Vec<Matrix> = basis.raising().into_iter().map(|e| &m.actions[e] * &w).collect();
    let sys = Matrix::vstack(&blocks).expect("same width");
    let ker = crate::linalg::kernel(&sys);
    Subspace::from_vectors(m.dim, ker.vectors().into_iter().map(|k| w.apply(&k)))
}

/// Closure of `seed` under the lowering operators `E_{i+1,i}`.
pub fn generated_submodule(m: &GModule, seed: &Subspace) -> Subspace {
    let basis = SlBasis::any_rank(m.n);
    let lower = basis.lowering();
    let mut b = EchelonBuilder::new(m.dim);
    let mut queue: Vec<Vec<Rational>> = Vec::new();
    for v in seed.vectors() {
        if b.insert_dense(v.clone()) {
            queue.push(v);
        }
    }
    while let Some(v) = queue.pop() {
        for &f in &lower {
            let u = m.actions[f].apply(&v);
            if u.iter().all(Rational::is_zero) {
                continue;
            }
            if b.insert_dense(u.clone()) {
                queue.push(u);
            }
        }
    }
    b.into_subspace()
}

#[derive(Clone, Debug)]
pub struct Isotypic {
    pub weight: Weight,
    pub multiplicity: usize,
    pub highest_weight_vectors: Subspace,
    pub component: Subspace,
}

#[derive(Clone, Debug)]
pub struct IsotypicDecomposition {
    pub n: usize,
    pub parts: BTreeMap<ThetaLabel, Isotypic>,
    pub remainder_dim: usize,
}

impl IsotypicDecomposition {
    pub fn multiplicities(&self) -> BTreeMap<ThetaLabel, usize> {
        self.parts.iter().map(|(l, p)| (*l, p.multiplicity)).collect()
    }

    pub fn multiplicity(&self, l: ThetaLabel) -> usize {
        self.parts.get(&l).map_or(0, |p| p.multiplicity)
    }
}

/// Dominant weights occurring in `wd`, highest first.
fn dominant_weights(wd: &WeightDecomposition) -> Vec<Weight> {
    let mut ws: Vec<Weight> = wd.spaces.keys().filter(|w| w.is_dominant()).cloned().collect();
    ws.sort_by(|a, b| b.height().cmp(&a.height()).then_with(|| a.cmp(b)));
    ws
}

/// Multiplicities of the `Θ_n^+` constituents of `m` (via highest-weight
/// vectors) together with the dimension of everything else.
pub fn theta_multiplicities(m: &GModule) -> Result<(BTreeMap<ThetaLabel, usize>, usize)> {
    let theta = ThetaSet::new(m.n)?;
    let wd = weight_decompose(m)?;
    let mut mults = BTreeMap::new();
    let mut used = 0;
    for (label, w) in theta.entries() {
        let k = hw_vectors_in(m, &wd, w).dim();
        if k > 0 {
            mults.insert(*label, k);
            used += k * label.dim(m.n);
        }
    }
    Ok((mults, m.dim - used))
}

/// Weight multiset of the irreducible module with a `Θ_n^+` highest weight.
pub fn theta_character(n: usize, label: ThetaLabel) -> Result<BTreeMap<Weight, usize>> {
    Ok(weight_decompose(&catalog(n, label)?)?.character())
}

/// Decomposition into `Θ_n^+`-isotypic components.
///
/// Multiplicities come from character peeling (highest remaining weight
/// first); they are cross-checked against the highest-weight-vector spaces
/// and the generated components.
pub fn isotypic_decompose(m: &GModule) -> Result<IsotypicDecomposition> {
    let theta = ThetaSet::new(m.n)?;
    let wd = weight_decompose(m)?;
    let mut remaining: BTreeMap<Weight, i64> = wd.character().into_iter().map(|(w, k)| (w, k as i64)).collect();
    let mut chars: HashMap<ThetaLabel, BTreeMap<Weight, usize>> = HashMap::new();
    let mut peeled: BTreeMap<ThetaLabel, usize> = BTreeMap::new();
    loop {
        remaining.retain(|_, k| *k != 0);
        if let Some((w, _)) = remaining.iter().find(|(_, k)| **k < 0) {
            return Err(Error::NotCompletelyReducible(format!(
                "negative multiplicity at weight {w}"
            )));
        }
        let Some(top) = remaining
            .keys()
            .max_by(|a, b| a.height().cmp(&b.height()).then_with(|| b.cmp(a)))
            .cloned()
        else {
            break;
        };
        if !top.is_dominant() {
            return Err(Error::NotCompletelyReducible(format!(
                "highest remaining weight {top} is not dominant"
            )));
        }
        let label = theta
            .label_of(&top)
            .ok_or_else(|| Error::NonThetaConstituent { weight: top.clone() })?;
        let k = remaining[&top];
        let ch = match chars.get(&label) {
            Some(c) => c,
            None => {
                let c = theta_character(m.n, label)?;
                chars.entry(label).or_insert(c)
            }
        };
        for (w, mult) in ch {
            *remaining.entry(w.clone()).or_insert(0) -= k * *mult as i64;
        }
        *peeled.entry(label).or_insert(0) += k as usize;
    }
    let mut parts = BTreeMap::new();
    let mut total = Subspace::zero(m.dim);
    for (label, mult) in peeled {
        let w = label.highest_weight(m.n);
        let hw = hw_vectors_in(m, &wd, &w);
        if hw.dim() != mult {
            return Err(Error::NotCompletelyReducible(format!(
                "{label}: character gives multiplicity {mult} but {} highest-weight vectors",
                hw.dim()
            )));
        }
        let comp = generated_submodule(m, &hw);
        if comp.dim() != mult * label.dim(m.n) {
            return Err(Error::NotCompletelyReducible(format!(
                "{label}: component has dimension {}, expected {}",
                comp.dim(),
                mult * label.dim(m.n)
            )));
        }
        total = total.sum(&comp);
        parts.insert(
            label,
            Isotypic {
                weight: w,
                multiplicity: mult,
                highest_weight_vectors: hw,
                component: comp,
            },
        );
    }
    if total.dim() != m.dim {
        return Err(Error::NotCompletelyReducible(format!(
            "isotypic components span {} of {} dimensions",
            total.dim(),
            m.dim
        )));
    }
    Ok(IsotypicDecomposition {
        n: m.n,
        parts,
        remainder_dim: 0,
    })
}

/// Dominant weights of `m`, highest first.
pub fn dominant_weights_of(m: &GModule) -> Result<Vec<Weight>> {
    Ok(dominant_weights(&weight_decompose(m)?))
}

/// A basis of weight vectors: the columns of `p` are weight vectors with the
/// listed weights.
struct WeightBasis {
    p: Option<(Matrix, Matrix)>,
    weights: Vec<Weight>,
}

fn weight_basis(m: &GModule) -> Result<WeightBasis> {
    let wd = weight_decompose(m)?;
    if m.has_weight_basis() {
        let mut weights = vec![Weight::zero(m.n); m.dim];
        for (w, s) in &wd.spaces {
            for &p in s.pivots() {
                weights[p] = w.clone();
            }
        }
        return Ok(WeightBasis { p: None, weights });
    }
    let mut cols = Vec::with_capacity(m.dim);
    let mut weights = Vec::with_capacity(m.dim);
    for (w, s) in &wd.spaces {
        for v in s.vectors() {
            cols.push(v);
            weights.push(w.clone());
        }
    }
    let p = Matrix::from_rows(cols).expect("rectangular").transpose();
    let pinv = p
        .inverse()
        .ok_or_else(|| Error::NotCompletelyReducible("weight spaces do not span".into()))?;
    Ok(WeightBasis {
        p: Some((p, pinv)),
        weights,
    })
}

fn conjugate(a: &Matrix, wb: &WeightBasis) -> Matrix {
    match &wb.p {
        None => a.clone(),
        Some((p, pinv)) => &(pinv * a) * p,
    }
}

/// A basis of `Hom_g(src, tgt)` in canonical (RREF) order.
///
/// Unknowns are restricted to weight-compatible entries, which enforces
/// equivariance under the Cartan subalgebra; the remaining conditions come
/// from the simple raising and lowering operators, which generate `sl_n`.
#[allow(clippy::needless_range_loop)]
pub fn equivariant_maps(src: &GModule, tgt: &GModule) -> Result<Vec<Matrix>> {
    if src.n != tgt.n {
        return Err(Error::MismatchedRank(src.n, tgt.n));
    }
    let basis = SlBasis::any_rank(src.n);
    let ws = weight_basis(src)?;
    let wt = weight_basis(tgt)?;
    let (ds, dt) = (src.dim, tgt.dim);
    // unknown index for (z, m) with equal weights
    let mut src_by_weight: BTreeMap<&Weight, Vec<usize>> = BTreeMap::new();
    for (i, w) in ws.weights.iter().enumerate() {
        src_by_weight.entry(w).or_default().push(i);
    }
    let mut unknown: HashMap<(usize, usize), usize> = HashMap::new();
    let mut slots = Vec::new();
    for z in 0..dt {
        if let Some(ms) = src_by_weight.get(&wt.weights[z]) {
            for &m in ms {
                unknown.insert((z, m), slots.len());
                slots.push((z, m));
            }
        }
    }
    let nvars = slots.len();
    if nvars == 0 {
        return Ok(Vec::new());
    }
    let mut eb = EchelonBuilder::new(nvars);
    let gens: Vec<usize> = basis.raising().into_iter().chain(basis.lowering()).collect();
    for g in gens {
        let a_s = conjugate(&src.actions[g], &ws);
        let a_t = conjugate(&tgt.actions[g], &wt);
        // column-sparse view of a_s, row-sparse view of a_t
        let mut s_cols: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); ds];
        for i in 0..ds {
            for (j, x) in a_s.row(i).iter().enumerate() {
                if !x.is_zero() {
                    s_cols[j].push((i, x.clone()));
                }
            }
        }
        let t_rows = a_t.sparse_rows();
        let gw = basis.weight_of(g);
        for z in 0..dt {
            for m in 0..ds {
                if wt.weights[z] != ws.weights[m].clone() + gw.clone() {
                    continue;
                }
                // (φ A_s)[z,m] - (A_t φ)[z,m] = 0
                let mut row: Vec<(usize, Rational)> = Vec::new();
                for (mp, x) in &s_cols[m] {
                    if let Some(&u) = unknown.get(&(z, *mp)) {
                        row.push((u, x.clone()));
                    }
                }
                for (zp, x) in &t_rows[z] {
                    if let Some(&u) = unknown.get(&(*zp, m)) {
                        row.push((u, -x));
                    }
                }
                if !row.is_empty() {
                    eb.insert_sparse(&row);
                }
            }
        }
        if eb.is_full() {
            return Ok(Vec::new());
        }
    }
    let rref = eb.into_subspace();
    let ker = kernel_from_rref(rref.basis(), rref.pivots(), nvars);
    let maps = ker
        .vectors()
        .into_iter()
        .map(|v| {
            let mut phi = Matrix::zeros(dt, ds);
            for (k, x) in v.into_iter().enumerate() {
                if !x.is_zero() {
                    phi[slots[k]] = x;
                }
            }
            match (&ws.p, &wt.p) {
                (None, None) => phi,
                _ => {
                    let left = wt.p.as_ref().map(|(p, _)| p);
                    let right = ws.p.as_ref().map(|(_, pinv)| pinv);
                    let mut out = phi;
                    if let Some(l) = left {
                        out = l * &out;
                    }
                    if let Some(r) = right {
                        out = &out * r;
                    }
                    out
                }
            }
        })
        .collect::<Vec<_>>();
    // Canonical order: RREF of the flattened maps.
    let sub = Subspace::from_vectors(dt * ds, maps.iter().map(Matrix::flatten));
    Ok(sub.vectors().into_iter().map(|v| Matrix::from_vec(dt, ds, v)).collect())
}

/// First basis element on which `phi` fails to intertwine, if any.
pub fn equivariance_defect(phi: &Matrix, src: &GModule, tgt: &GModule) -> Option<usize> {
    (0..src.actions.len()).find(|&k| phi * &src.actions[k] != &tgt.actions[k] * phi)
}

/// The identifications `f` and `g` between isomorphic catalog modules.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum IdentificationName {
    #[serde(rename = "f")]
    F,
    #[serde(rename = "g")]
    G,
}

#[derive(Clone, Debug)]
pub struct Identification {
    pub n: usize,
    pub name: IdentificationName,
    pub source: ThetaLabel,
    pub target: ThetaLabel,
    pub iso: Matrix,
}

impl Identification {
    /// Applies the map to a matrix realisation of a source element.
    pub fn apply(&self, m: &Matrix) -> Matrix {
        let sm = Model::of(self.source);
        let tm = Model::of(self.target);
        let v = sm.from_matrix(self.n, m).expect("element of the source model");
        tm.to_matrix(self.n, &self.iso.apply(&v))
    }

    /// Applies the inverse map to a matrix realisation of a target element.
    pub fn apply_inverse(&self, m: &Matrix) -> Matrix {
        let sm = Model::of(self.source);
        let tm = Model::of(self.target);
        let v = tm.from_matrix(self.n, m).expect("element of the target model");
        let inv = self.iso.inverse().expect("identification is invertible");
        sm.to_matrix(self.n, &inv.apply(&v))
    }
}

/// `f: Λ' → Λ` (n = 4), `f: Λ' → V` and `g: Λ → V'` (n = 3), solved from the
/// equivariance system and normalised on a highest-weight anchor.
pub fn identification(n: usize, which: IdentificationName) -> Result<Identification> {
    check_n(n)?;
    use ThetaLabel::*;
    let (source, target, anchor_src, anchor_tgt) = match (n, which) {
        (4, IdentificationName::F) => (Lamp, Lam, skew(4, 2, 3), skew(4, 0, 1)),
        (3, IdentificationName::F) => (Lamp, V, skew(3, 1, 2), unit_col(3, 0)),
        (3, IdentificationName::G) => (Lam, Vp, skew(3, 0, 1), unit_col(3, 2)),
        _ => return Err(Error::Input(format!("no identification {which:?} for n = {n}"))),
    };
    let src = catalog(n, source)?;
    let tgt = catalog(n, target)?;
    let maps = equivariant_maps(&src, &tgt)?;
    if maps.len() != 1 {
        return Err(Error::InvalidData(format!(
            "expected a one-dimensional Hom space for {source} -> {target}, got {}",
            maps.len()
        )));
    }
    let sv = Model::of(source).from_matrix(n, &anchor_src).expect("anchor in model");
    let tv = Model::of(target).from_matrix(n, &anchor_tgt).expect("anchor in model");
    let img = maps[0].apply(&sv);
    let k = tv.iter().position(|x| !x.is_zero()).expect("nonzero anchor");
    let scale = &tv[k] / &img[k];
    let iso = maps[0].scale(&scale);
    debug_assert_eq!(iso.apply(&sv), tv);
    Ok(Identification {
        n,
        name: which,
        source,
        target,
        iso,
    })
}

fn skew(n: usize, i: usize, j: usize) -> Matrix {
    &Matrix::unit(n, n, i, j) - &Matrix::unit(n, n, j, i)
}

fn unit_col(n: usize, i: usize) -> Matrix {
    Matrix::unit(n, 1, i, 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_dims_and_representation() {
        for n in [3, 4] {
            for l in ThetaLabel::ALL {
                let m = catalog(n, l).unwrap();
                assert_eq!(m.dim(), l.dim(n));
                assert!(m.is_representation(), "{l} n={n}");
                assert!(m.has_weight_basis());
            }
        }
        assert_eq!(catalog(4, ThetaLabel::S).unwrap().dim(), 10);
        assert_eq!(catalog(4, ThetaLabel::Lam).unwrap().dim(), 6);
        assert_eq!(catalog(3, ThetaLabel::Adj).unwrap().dim(), 8);
        assert!(catalog(3, ThetaLabel::T).unwrap().actions().iter().all(Matrix::is_zero));
    }

    #[test]
    fn h1_on_e1() {
        let v = catalog(3, ThetaLabel::V).unwrap();
        let b = SlBasis::new(3).unwrap();
        let h1 = v.action(b.h_index(0));
        assert_eq!(
            h1.apply(&[Rational::one(), Rational::zero(), Rational::zero()]),
            vec![Rational::one(), Rational::zero(), Rational::zero()]
        );
    }

    #[test]
    fn weight_examples() {
        let wd = weight_decompose(&catalog(4, ThetaLabel::V).unwrap()).unwrap();
        assert_eq!(wd.spaces.len(), 4);
        for i in 0..4 {
            assert_eq!(wd.multiplicity(&Weight::eps(4, i)), 1);
        }
        let wd = weight_decompose(&catalog(3, ThetaLabel::Adj).unwrap()).unwrap();
        assert_eq!(wd.spaces.len(), 7);
        assert_eq!(wd.multiplicity(&Weight::zero(3)), 2);
        let wd = weight_decompose(&catalog(3, ThetaLabel::S).unwrap()).unwrap();
        assert_eq!(wd.spaces.len(), 6);
        assert!(wd.spaces.values().all(|s| s.dim() == 1));
        assert_eq!(wd.multiplicity(&(Weight::eps(3, 0) + Weight::eps(3, 2))), 1);
    }

    #[test]
    fn highest_weight_examples() {
        let v = catalog(4, ThetaLabel::V).unwrap();
        let hw = highest_weight_vectors(&v, &Weight::eps(4, 0)).unwrap();
        assert_eq!(
            hw.vectors(),
            vec![vec![
                Rational::one(),
                Rational::zero(),
                Rational::zero(),
                Rational::zero()
            ]]
        );
        let lam = catalog(4, ThetaLabel::Lam).unwrap();
        let hw = highest_weight_vectors(&lam, &ThetaLabel::Lam.highest_weight(4)).unwrap();
        assert_eq!(hw.dim(), 1);
        let m = Model::Skew.to_matrix(4, &hw.vectors()[0]);
        assert_eq!(m, skew(4, 0, 1));
        let s = catalog(3, ThetaLabel::S).unwrap();
        let hw = highest_weight_vectors(&s, &ThetaLabel::S.highest_weight(3)).unwrap();
        assert_eq!(
            Model::Symmetric.to_matrix(3, &hw.vectors()[0]),
            Matrix::unit(3, 3, 0, 0)
        );
    }

    #[test]
    fn isotypic_examples() {
        let v = catalog(4, ThetaLabel::V).unwrap();
        let vv = GModule::direct_sum(&[v.clone(), v]).unwrap();
        let d = isotypic_decompose(&vv).unwrap();
        assert_eq!(d.multiplicities(), BTreeMap::from([(ThetaLabel::V, 2)]));
        for l in ThetaLabel::ALL {
            for n in [3, 4] {
                let d = isotypic_decompose(&catalog(n, l).unwrap()).unwrap();
                let t = ThetaSet::new(n).unwrap();
                assert_eq!(d.multiplicities(), BTreeMap::from([(t.canonical(l), 1)]));
            }
        }
    }

    #[test]
    fn general_weight_path_matches_fast_path() {
        // Conjugate S by a non-monomial change of basis.
        let s = catalog(3, ThetaLabel::S).unwrap();
        let d = s.dim();
        let mut p = Matrix::identity(d);
        for i in 0..d - 1 {
            p[(i, i + 1)] = Rational::from_int(1);
        }
        let pinv = p.inverse().unwrap();
        let acts = s.actions().iter().map(|a| &(&p * a) * &pinv).collect();
        let t = GModule::new(3, acts, None).unwrap();
        assert!(!t.has_weight_basis());
        let a = weight_decompose(&s).unwrap().character();
        let b = weight_decompose(&t).unwrap().character();
        assert_eq!(a, b);
        let maps = equivariant_maps(&s, &t).unwrap();
        assert_eq!(maps.len(), 1);
        assert_eq!(equivariance_defect(&maps[0], &s, &t), None);
        assert_eq!(isotypic_decompose(&t).unwrap().multiplicity(ThetaLabel::S), 1);
    }

    #[test]
    fn non_integral_weight_rejected() {
        let v = catalog(3, ThetaLabel::V).unwrap();
        let acts = v.actions().iter().map(|a| a.scale(&crate::linalg::q(1, 2))).collect();
        let bad = GModule::new(3, acts, None).unwrap();
        assert!(matches!(weight_decompose(&bad), Err(Error::NonIntegralWeight { .. })));
    }

    #[test]
    fn identifications() {
        let b4 = SlBasis::new(4).unwrap();
        let f = identification(4, IdentificationName::F).unwrap();
        let src = catalog(4, ThetaLabel::Lamp).unwrap();
        let tgt = catalog(4, ThetaLabel::Lam).unwrap();
        assert_eq!(equivariance_defect(&f.iso, &src, &tgt), None);
        assert_eq!(b4.dim(), 15);
        assert_eq!(f.apply(&skew(4, 2, 3)), skew(4, 0, 1));
        let inv = f.iso.inverse().unwrap();
        assert_eq!(&f.iso * &inv, Matrix::identity(6));
        assert_eq!(equivariant_maps(&src, &tgt).unwrap().len(), 1);
        let f3 = identification(3, IdentificationName::F).unwrap();
        assert_eq!(f3.apply(&skew(3, 1, 2)), unit_col(3, 0));
        let g3 = identification(3, IdentificationName::G).unwrap();
        assert_eq!(g3.apply(&skew(3, 0, 1)), unit_col(3, 2));
        assert_eq!(
            equivariance_defect(
                &g3.iso,
                &catalog(3, ThetaLabel::Lam).unwrap(),
                &catalog(3, ThetaLabel::Vp).unwrap()
            ),
            None
        );
        assert!(identification(4, IdentificationName::G).is_err());
    }

    #[test]
    fn json_round_trip() {
        let m = catalog(3, ThetaLabel::Sp).unwrap();
        let j = m.to_json();
        let back = GModule::from_json(&j).unwrap();
        assert_eq!(back.actions(), m.actions());
        assert_eq!(back.label(), Some("S'"));
        let mut bad = j.clone();
        bad["actions"].as_object_mut().unwrap().remove("H_1");
        assert!(GModule::from_json(&bad).is_err());
    }
}
