//! Concrete graded algebras inside `sl_N` and extraction of their
//! coordinate data through the evaluation maps `M ⊗ Hom_g(M, L) → L`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::expr::{realize, Ctx};
use crate::graded::{assemble, bracket_rules, layout, spaces, CoordinateData, GradedLieAlgebra, Space};
use crate::linalg::{solve_span, EchelonBuilder, Matrix, Rational};
use crate::module::{catalog, equivariant_maps, isotypic_decompose, GModule};
use crate::par::{map_range_with, Exec};
use crate::sl::{bracket, check_n, SlBasis, ThetaLabel};

/// `sl_N` with a copy of `sl_n` embedded by a block map.
#[derive(Clone, Debug)]
pub struct EmbeddedAlgebra {
    pub name: String,
    pub n: usize,
    pub ambient: SlBasis,
    /// Image of each canonical basis element of `sl_n`.
    pub embedding: Vec<Matrix>,
}

/// `sl_{n+k}` with `x ↦ diag(x, 0_k)`.
pub fn example_sl_nk(n: usize, k: usize) -> Result<EmbeddedAlgebra> {
    check_n(n)?;
    if k == 0 {
        return Err(Error::Input("k must be at least 1".into()));
    }
    let big = n + k;
    let basis = SlBasis::new(n)?;
    let embedding = basis
        .elements()
        .iter()
        .map(|x| block_diag(std::slice::from_ref(x), big))
        .collect();
    Ok(EmbeddedAlgebra {
        name: format!("sl{big} (n={n}, k={k})"),
        n,
        ambient: SlBasis::any_rank(big),
        embedding,
    })
}

/// `sl_{2n+1}` with `x ↦ diag(x, -xᵗ, 0)`.
pub fn example_sl_2n1(n: usize) -> Result<EmbeddedAlgebra> {
    check_n(n)?;
    let big = 2 * n + 1;
    let basis = SlBasis::new(n)?;
    let embedding = basis
        .elements()
        .iter()
        .map(|x| block_diag(&[x.clone(), -&x.transpose()], big))
        .collect();
    Ok(EmbeddedAlgebra {
        name: format!("sl{big} (n={n})"),
        n,
        ambient: SlBasis::any_rank(big),
        embedding,
    })
}

fn block_diag(blocks: &[Matrix], size: usize) -> Matrix {
    let mut m = Matrix::zeros(size, size);
    let mut o = 0;
    for b in blocks {
        for i in 0..b.rows() {
            for j in 0..b.cols() {
                m[(o + i, o + j)] = b[(i, j)].clone();
            }
        }
        o += b.rows();
    }
    m
}

impl EmbeddedAlgebra {
    pub fn ambient_dim(&self) -> usize {
        self.ambient.dim()
    }

    /// First pair `(i, j)` with `φ([x_i, x_j]) != [φ(x_i), φ(x_j)]`, or a
    /// non-injectivity witness `(i, i)`.
    pub fn embedding_defect(&self) -> Option<(usize, usize)> {
        let small = SlBasis::any_rank(self.n);
        let phi = |x: &Matrix| -> Matrix {
            let c = small.coords(x).expect("traceless");
            let mut m = Matrix::zeros(self.ambient.n(), self.ambient.n());
            for (c, e) in c.iter().zip(&self.embedding) {
                if !c.is_zero() {
                    m.axpy(c, e);
                }
            }
            m
        };
        let mut rank = EchelonBuilder::new(self.ambient_dim());
        for (i, e) in self.embedding.iter().enumerate() {
            let Some(c) = self.ambient.coords(e) else {
                return Some((i, i));
            };
            if !rank.insert_dense(c) {
                return Some((i, i));
            }
        }
        for i in 0..small.dim() {
            for j in 0..small.dim() {
                let lhs = phi(&bracket(small.element(i), small.element(j)).expect("square"));
                let rhs = bracket(&self.embedding[i], &self.embedding[j]).expect("square");
                if lhs != rhs {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Adjoint matrix of an ambient element on ambient coordinates.
    pub fn ad(&self, x: &Matrix) -> Matrix {
        let d = self.ambient_dim();
        let mut m = Matrix::zeros(d, d);
        for b in 0..d {
            let c = self
                .ambient
                .coords(&bracket(x, self.ambient.element(b)).expect("square"))
                .expect("traceless");
            for (k, v) in c.into_iter().enumerate() {
                if !v.is_zero() {
                    m[(k, b)] = v;
                }
            }
        }
        m
    }

    /// The ambient algebra as a module over the embedded `sl_n`.
    pub fn restriction(&self) -> Result<GModule> {
        let actions = self.embedding.iter().map(|x| self.ad(x)).collect();
        GModule::new(self.n, actions, Some(format!("{} restricted", self.name)))
    }

    /// Ambient commutator of two coordinate vectors.
    pub fn bracket_coords(&self, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
        let x = self.ambient.combine(u);
        let y = self.ambient.combine(v);
        self.ambient
            .coords(&bracket(&x, &y).expect("square"))
            .expect("traceless")
    }
}

/// Result of [`extract_coordinates`].
#[derive(Clone, Debug)]
pub struct Extraction {
    pub data: CoordinateData,
    /// Columns are the ambient coordinates of the graded basis `m_i ⊗ ξ_k`.
    pub basis: Matrix,
    /// The ambient bracket rewritten in the graded basis.
    pub ambient_view: GradedLieAlgebra,
    /// Multiplicity of each module in the restriction.
    pub multiplicities: BTreeMap<ThetaLabel, usize>,
}

/// Multiplicity spaces and products of an embedded example.
pub fn extract_coordinates(e: &EmbeddedAlgebra) -> Result<Extraction> {
    extract_coordinates_with(e, Exec::Parallel)
}

pub fn extract_coordinates_with(e: &EmbeddedAlgebra, exec: Exec) -> Result<Extraction> {
    let n = e.n;
    if let Some((i, j)) = e.embedding_defect() {
        return Err(Error::InvalidData(format!(
            "embedding is not an injective homomorphism at ({i}, {j})"
        )));
    }
    let restricted = e.restriction()?;
    let iso = isotypic_decompose(&restricted)?;
    if iso.remainder_dim != 0 {
        return Err(Error::Extraction(format!(
            "{} dimensions are not accounted for by the isotypic components",
            iso.remainder_dim
        )));
    }
    let d = e.ambient_dim();

    // graded basis: for each space the equivariant maps M → L
    let mut maps: BTreeMap<Space, Vec<Matrix>> = BTreeMap::new();
    for s in spaces(n)? {
        let m = catalog(n, s.label())?;
        let mut found = equivariant_maps(&m, &restricted)?;
        if s == Space::A {
            // the embedding itself is the distinguished element 1
            let emb = Matrix::from_rows(
                (0..d)
                    .map(|r| {
                        e.embedding
                            .iter()
                            .map(|x| e.ambient.coords(x).expect("traceless")[r].clone())
                            .collect()
                    })
                    .collect(),
            )
            .map_err(|err| Error::Extraction(err.to_string()))?;
            let mut ech = EchelonBuilder::new(d * m.dim());
            let mut chosen = Vec::with_capacity(found.len());
            for cand in std::iter::once(emb).chain(found) {
                if ech.insert_dense(cand.flatten()) {
                    chosen.push(cand);
                }
            }
            found = chosen;
        }
        maps.insert(s, found);
    }
    let dims: BTreeMap<Space, usize> = maps.iter().map(|(s, v)| (*s, v.len())).collect();
    let sectors = layout(n, &dims)?;
    let total: usize = sectors.iter().map(|s| s.len()).sum();
    if total != d {
        return Err(Error::Extraction(format!(
            "graded basis has {total} elements, ambient dimension is {d}"
        )));
    }
    let mut basis = Matrix::zeros(d, d);
    for sec in &sectors {
        for (k, phi) in maps[&sec.space].iter().enumerate() {
            for i in 0..sec.module_dim {
                let col = sec.index(i, k);
                for r in 0..d {
                    basis[(r, col)] = phi[(r, i)].clone();
                }
            }
        }
    }
    let inv = basis
        .inverse()
        .ok_or_else(|| Error::Extraction("graded basis is not a basis of the ambient algebra".into()))?;

    let mats: Vec<Matrix> = (0..d).map(|a| e.ambient.combine(&basis.col(a))).collect();
    let rows = map_range_with(exec, d, |a| {
        (0..d)
            .map(|b| {
                let c = e
                    .ambient
                    .coords(&bracket(&mats[a], &mats[b]).expect("square"))
                    .expect("traceless");
                inv.apply(&c)
                    .into_iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .collect::<Vec<_>>()
            })
            .collect::<Vec<_>>()
    });
    let sc = rows.into_iter().flatten().collect();
    let ambient_view = GradedLieAlgebra::from_structure_constants(n, sectors.clone(), Some(0), sc)?;

    let data = solve_products(&ambient_view, dims)?;
    Ok(Extraction {
        data,
        basis,
        ambient_view,
        multiplicities: iso.multiplicities(),
    })
}

/// Recovers every product of the bracket rules by matching brackets of
/// graded basis elements against the realised module maps.
fn solve_products(l: &GradedLieAlgebra, dims: BTreeMap<Space, usize>) -> Result<CoordinateData> {
    let n = l.n();
    let ctx = Ctx::new(n)?;
    let sec = |s: Space| l.sector(s).expect("sector").clone();
    let mut products = BTreeMap::new();
    for r in bracket_rules(n)? {
        let (sx, sy) = (sec(r.x), sec(r.y));
        let mut by_target: BTreeMap<Space, Vec<usize>> = BTreeMap::new();
        for (t, term) in r.terms.iter().enumerate() {
            by_target.entry(term.target).or_default().push(t);
            let sz = sec(term.target);
            products.insert(term.product, Matrix::zeros(sz.coord_dim, sx.coord_dim * sy.coord_dim));
        }
        if sx.is_empty() || sy.is_empty() {
            continue;
        }
        for (z, terms) in by_target {
            let sz = sec(z);
            if sz.is_empty() {
                continue;
            }
            let realised: Vec<Matrix> = terms
                .iter()
                .map(|&t| {
                    let term = &r.terms[t];
                    Ok(realize(&term.expr, sx.label, sy.label, sz.label, &ctx)?.scale(&term.coeff))
                })
                .collect::<Result<_>>()?;
            for k in 0..sx.coord_dim {
                for l2 in 0..sy.coord_dim {
                    // blocks[m] collects the ξ_m-coordinates of the brackets
                    let mut blocks = vec![Matrix::zeros(sz.module_dim, sx.module_dim * sy.module_dim); sz.coord_dim];
                    for i in 0..sx.module_dim {
                        for j in 0..sy.module_dim {
                            for (idx, v) in l.bracket_basis(sx.index(i, k), sy.index(j, l2)) {
                                if sz.contains(*idx) {
                                    let off = idx - sz.offset;
                                    blocks[off % sz.coord_dim][(off / sz.coord_dim, i * sy.module_dim + j)] = v.clone();
                                }
                            }
                        }
                    }
                    for (m, block) in blocks.iter().enumerate() {
                        let c = solve_span(&realised, block).ok_or_else(|| {
                            Error::Extraction(format!(
                                "bracket of {} and {} is not of the expected form in {}",
                                l.basis_name(sx.index(0, k)),
                                l.basis_name(sy.index(0, l2)),
                                z
                            ))
                        })?;
                        for (&t, v) in terms.iter().zip(c) {
                            let p = products.get_mut(&r.terms[t].product).expect("inserted");
                            p[(m, k * sy.coord_dim + l2)] = v;
                        }
                    }
                }
            }
        }
    }
    let data = CoordinateData {
        n,
        dims,
        one: 0,
        products,
    };
    data.validate()?;
    Ok(data)
}

#[derive(Clone, Debug, Serialize)]
pub struct RoundTrip {
    pub pairs: usize,
    pub mismatches: usize,
    pub witness: Option<[String; 2]>,
}

impl RoundTrip {
    pub fn pass(&self) -> bool {
        self.mismatches == 0
    }
}

/// Compares the assembled algebra with the ambient bracket on every pair
/// of basis elements.
pub fn round_trip(x: &Extraction) -> Result<RoundTrip> {
    let l = assemble(&x.data)?;
    let v = &x.ambient_view;
    let d = v.dim();
    let mut mismatches = 0;
    let mut witness = None;
    for a in 0..d {
        for b in 0..d {
            if l.bracket_basis(a, b) != v.bracket_basis(a, b) {
                mismatches += 1;
                witness.get_or_insert_with(|| [v.basis_name(a), v.basis_name(b)]);
            }
        }
    }
    Ok(RoundTrip {
        pairs: d * d,
        mismatches,
        witness,
    })
}
