//! Θ_n-graded Lie algebras assembled from coordinate data.
//!
//! An algebra is stored in a layout of sectors `M ⊗ X`, one per coordinate
//! space `X`, where `M` is the catalog module attached to `X`. The basis
//! element `m_i ⊗ ξ_k` of a sector has index `offset + i·dim X + k`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::{build::*, realize, Ctx, MatExpr};
use crate::linalg::{q, Matrix, Rational, Subspace};
use crate::module::{weight_decompose, GModule};
use crate::par::{map_range_with, map_with, Exec};
use crate::sl::{bracket, check_n, theta_weights, SlBasis, ThetaLabel, Weight};

/// Coordinate spaces. `B`, `B'` occur only for `n = 4`, `E'` only for `n = 3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Space {
    A,
    B,
    Bp,
    C,
    Cp,
    E,
    Ep,
    D,
}

impl Space {
    pub const ALL: [Space; 8] = [
        Space::A,
        Space::B,
        Space::Bp,
        Space::C,
        Space::Cp,
        Space::E,
        Space::Ep,
        Space::D,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Space::A => "A",
            Space::B => "B",
            Space::Bp => "B'",
            Space::C => "C",
            Space::Cp => "C'",
            Space::E => "E",
            Space::Ep => "E'",
            Space::D => "D",
        }
    }

    /// The module whose multiplicity space this is.
    pub fn label(self) -> ThetaLabel {
        match self {
            Space::A => ThetaLabel::Adj,
            Space::B => ThetaLabel::V,
            Space::Bp => ThetaLabel::Vp,
            Space::C => ThetaLabel::S,
            Space::Cp => ThetaLabel::Sp,
            Space::E => ThetaLabel::Lam,
            Space::Ep => ThetaLabel::Lamp,
            Space::D => ThetaLabel::T,
        }
    }

    pub fn exists(self, n: usize) -> bool {
        match self {
            Space::B | Space::Bp => n == 4,
            Space::Ep => n == 3,
            _ => true,
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Space {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim() {
            "A" => Space::A,
            "B" => Space::B,
            "B'" | "Bp" => Space::Bp,
            "C" => Space::C,
            "C'" | "Cp" => Space::Cp,
            "E" => Space::E,
            "E'" | "Ep" => Space::Ep,
            "D" => Space::D,
            other => return Err(Error::Input(format!("unknown coordinate space {other:?}"))),
        })
    }
}

impl Serialize for Space {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for Space {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The coordinate spaces present for `n`, in layout order.
pub fn spaces(n: usize) -> Result<Vec<Space>> {
    check_n(n)?;
    Ok(Space::ALL.into_iter().filter(|s| s.exists(n)).collect())
}

/// Distinguishes the two products `A×A → A`; every other product is `Plain`,
/// except that same-space products carry their symmetry type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Plain,
    Circ,
    Bracket,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Plain => "plain",
            Kind::Circ => "circ",
            Kind::Bracket => "bracket",
        }
    }
}

impl FromStr for Kind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "plain" => Ok(Kind::Plain),
            "circ" => Ok(Kind::Circ),
            "bracket" => Ok(Kind::Bracket),
            other => Err(Error::Input(format!("unknown product kind {other:?}"))),
        }
    }
}

/// A bilinear product `X ⊗ Y → Z`, stored as a `dim Z × (dim X · dim Y)`
/// matrix with column index `i·dim Y + j` for `ξ_i ⊗ ζ_j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProductId {
    pub x: Space,
    pub y: Space,
    pub z: Space,
    pub kind: Kind,
}

impl ProductId {
    pub fn new(x: Space, y: Space, z: Space, kind: Kind) -> Self {
        ProductId { x, y, z, kind }
    }
}

impl fmt::Display for ProductId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})_{}", self.x, self.y, self.z)?;
        if self.kind != Kind::Plain {
            write!(f, " {}", self.kind.as_str())?;
        }
        Ok(())
    }
}

impl Serialize for ProductId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.x.as_str(), self.y.as_str(), self.z.as_str(), self.kind.as_str()].serialize(s)
    }
}

impl<'de> Deserialize<'de> for ProductId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [x, y, z, k] = <[String; 4]>::deserialize(d)?;
        let p = |s: &str| s.parse::<Space>().map_err(serde::de::Error::custom);
        Ok(ProductId {
            x: p(&x)?,
            y: p(&y)?,
            z: p(&z)?,
            kind: k.parse().map_err(serde::de::Error::custom)?,
        })
    }
}

/// One summand `coeff · expr(x,y) ⊗ (ξ,ζ)_Z` of a bracket rule.
#[derive(Clone, Debug)]
pub struct Term {
    pub coeff: Rational,
    pub expr: MatExpr,
    pub target: Space,
    pub product: ProductId,
}

/// `[x⊗ξ, y⊗ζ]` for `x⊗ξ ∈ M_X⊗X`, `y⊗ζ ∈ M_Y⊗Y`. When `x ≠ y` the bracket
/// in the opposite order follows by antisymmetry.
#[derive(Clone, Debug)]
pub struct Rule {
    pub x: Space,
    pub y: Space,
    pub terms: Vec<Term>,
}

fn rule(x: Space, y: Space, terms: Vec<(Rational, MatExpr, Space, Kind)>) -> Rule {
    Rule {
        x,
        y,
        terms: terms
            .into_iter()
            .map(|(coeff, expr, z, kind)| Term {
                coeff,
                expr,
                target: z,
                product: ProductId::new(x, y, z, kind),
            })
            .collect(),
    }
}

/// `xy + yxᵗ` and `xy - yxᵗ`.
fn twisted(sign: i64) -> MatExpr {
    let p = mul(x(), y());
    let r = mul(y(), t(x()));
    if sign > 0 {
        add(p, r)
    } else {
        sub(p, r)
    }
}

/// `xy + yᵗx` and `xy - yᵗx`.
fn twisted_right(sign: i64) -> MatExpr {
    let p = mul(x(), y());
    let r = mul(t(y()), x());
    if sign > 0 {
        add(p, r)
    } else {
        sub(p, r)
    }
}

/// The bracket rules of a Θ_n-graded Lie algebra.
pub fn bracket_rules(n: usize) -> Result<Vec<Rule>> {
    use Kind::*;
    use Space::*;
    check_n(n)?;
    let one = Rational::one;
    let h = || q(1, 2);
    let mut rules = vec![
        rule(
            A,
            A,
            vec![
                (h(), circ(x(), y()), A, Bracket),
                (h(), comm(x(), y()), A, Circ),
                (one(), pairing(x(), y(), n), D, Plain),
            ],
        ),
        rule(
            C,
            Cp,
            vec![
                (one(), traceless_product(x(), y()), A, Plain),
                (one(), pairing(x(), y(), n), D, Plain),
            ],
        ),
        rule(A, C, vec![(h(), twisted(1), C, Plain), (h(), twisted(-1), E, Plain)]),
        rule(Cp, E, vec![(one(), mul(y(), x()), A, Plain)]),
    ];
    if n == 4 {
        rules.extend([
            rule(
                B,
                Bp,
                vec![
                    (one(), traceless_product(x(), t(y())), A, Plain),
                    (Rational::from_int(2), pairing(x(), t(y()), n), D, Plain),
                ],
            ),
            rule(
                E,
                E,
                vec![
                    (one(), traceless_product(x(), finv(y())), A, Plain),
                    (one(), pairing(x(), finv(y()), n), D, Plain),
                ],
            ),
            rule(
                B,
                B,
                vec![
                    (h(), outer(1, x(), y()), C, Bracket),
                    (h(), outer(-1, x(), y()), E, Circ),
                ],
            ),
            rule(
                Bp,
                Bp,
                vec![
                    (h(), outer(1, x(), y()), Cp, Bracket),
                    (h(), f(outer(-1, x(), y())), E, Circ),
                ],
            ),
            rule(
                A,
                E,
                vec![
                    (h(), twisted(1), E, Plain),
                    (h(), twisted(-1), C, Plain),
                    (h(), sub(mul(finv(y()), x()), mul(t(x()), finv(y()))), Cp, Plain),
                ],
            ),
            rule(
                Cp,
                A,
                vec![
                    (h(), twisted_right(1), Cp, Plain),
                    (h(), f(twisted_right(-1)), E, Plain),
                ],
            ),
            rule(C, E, vec![(one(), mul(x(), finv(y())), A, Plain)]),
            rule(A, B, vec![(one(), mul(x(), y()), B, Plain)]),
            rule(Cp, B, vec![(one(), mul(x(), y()), Bp, Plain)]),
            rule(E, B, vec![(one(), mul(finv(x()), y()), Bp, Plain)]),
            rule(Bp, A, vec![(one(), mul(t(y()), x()), Bp, Plain)]),
            rule(Bp, C, vec![(one(), mul(y(), x()), B, Plain)]),
            rule(Bp, E, vec![(-one(), mul(y(), x()), B, Plain)]),
        ]);
    } else {
        rules.extend([
            rule(
                E,
                Ep,
                vec![
                    (one(), traceless_product(x(), y()), A, Plain),
                    (one(), pairing(x(), y(), n), D, Plain),
                ],
            ),
            rule(
                E,
                E,
                vec![
                    (h(), outer(1, g(x()), g(y())), Cp, Bracket),
                    (h(), outer(-1, g(x()), g(y())), Ep, Circ),
                ],
            ),
            rule(
                Ep,
                Ep,
                vec![
                    (h(), outer(1, f(x()), f(y())), C, Bracket),
                    (h(), outer(-1, f(x()), f(y())), E, Circ),
                ],
            ),
            rule(A, E, vec![(h(), twisted(1), E, Plain), (h(), twisted(-1), C, Plain)]),
            rule(
                Cp,
                A,
                vec![(h(), twisted_right(1), Cp, Plain), (h(), twisted_right(-1), Ep, Plain)],
            ),
            rule(
                Ep,
                A,
                vec![(h(), twisted_right(1), Ep, Plain), (h(), twisted_right(-1), Cp, Plain)],
            ),
            rule(C, Ep, vec![(one(), mul(x(), y()), A, Plain)]),
            rule(Cp, Ep, vec![(one(), ginv(mul(x(), f(y()))), E, Plain)]),
            rule(E, C, vec![(one(), finv(mul(y(), g(x()))), Ep, Plain)]),
        ]);
    }
    // D acts on every sector, including itself.
    for z in spaces(n)? {
        let kind = if z == D { Bracket } else { Plain };
        rules.push(rule(D, z, vec![(one(), kron(x(), y()), z, kind)]));
    }
    Ok(rules)
}

/// Every product referenced by [`bracket_rules`].
pub fn required_products(n: usize) -> Result<BTreeSet<ProductId>> {
    Ok(bracket_rules(n)?
        .into_iter()
        .flat_map(|r| r.terms.into_iter().map(|t| t.product))
        .collect())
}

/// Coordinate spaces with their products. `one` is the index of the
/// distinguished element `1 ∈ A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordinateData {
    pub n: usize,
    pub dims: BTreeMap<Space, usize>,
    pub one: usize,
    pub products: BTreeMap<ProductId, Matrix>,
}

#[derive(Serialize, Deserialize)]
struct ProductJson {
    cell: ProductId,
    matrix: Matrix,
}

#[derive(Serialize, Deserialize)]
struct DataJson {
    n: usize,
    dims: BTreeMap<Space, usize>,
    one: usize,
    #[serde(default, skip_deserializing)]
    flattening: String,
    products: Vec<ProductJson>,
}

const FLATTENING: &str = "column i*dim(Y)+j holds the product of basis vectors i of X and j of Y";

impl CoordinateData {
    pub fn dim(&self, s: Space) -> usize {
        self.dims.get(&s).copied().unwrap_or(0)
    }

    pub fn product(&self, id: &ProductId) -> Option<&Matrix> {
        self.products.get(id)
    }

    /// `A = span{1}`, every other space zero; the assembled algebra is `sl_n`.
    pub fn trivial(n: usize) -> Result<Self> {
        let mut dims = BTreeMap::new();
        for s in spaces(n)? {
            dims.insert(s, usize::from(s == Space::A));
        }
        let mut data = CoordinateData {
            n,
            dims,
            one: 0,
            products: BTreeMap::new(),
        };
        for id in required_products(n)? {
            let mut m = Matrix::zeros(data.dim(id.z), data.dim(id.x) * data.dim(id.y));
            if id == ProductId::new(Space::A, Space::A, Space::A, Kind::Circ) {
                m[(0, 0)] = Rational::from_int(2);
            }
            data.products.insert(id, m);
        }
        Ok(data)
    }

    /// Checks shapes, that every product is one the bracket rules use, and
    /// the identities `[1,a] = 0`, `1∘a = 2a`, `⟨1,a⟩ = 0`.
    pub fn validate(&self) -> Result<()> {
        check_n(self.n)?;
        for s in self.dims.keys() {
            if !s.exists(self.n) {
                return Err(Error::InvalidData(format!(
                    "space {s} does not occur for n = {}",
                    self.n
                )));
            }
        }
        if self.one >= self.dim(Space::A) {
            return Err(Error::InvalidData(format!(
                "distinguished element index {} out of range for dim A = {}",
                self.one,
                self.dim(Space::A)
            )));
        }
        let allowed = required_products(self.n)?;
        for (id, m) in &self.products {
            if !allowed.contains(id) {
                return Err(Error::InvalidData(format!(
                    "product {id} is not part of the bracket rules"
                )));
            }
            let want = (self.dim(id.z), self.dim(id.x) * self.dim(id.y));
            if m.shape() != want {
                return Err(Error::InvalidData(format!(
                    "product {id} has shape {:?}, expected {want:?}",
                    m.shape()
                )));
            }
        }
        if let Some(msg) = self.unit_defect() {
            return Err(Error::InvalidData(msg));
        }
        Ok(())
    }

    /// First violation of `[1,a] = 0`, `1∘a = 2a` or `⟨1,a⟩ = 0`.
    pub fn unit_defect(&self) -> Option<String> {
        use Space::*;
        let da = self.dim(A);
        let e = self.one;
        let col = |m: &Matrix, i: usize, j: usize| m.col(i * da + j);
        if let Some(m) = self.product(&ProductId::new(A, A, A, Kind::Bracket)) {
            for a in 0..da {
                if col(m, e, a).iter().any(|x| !x.is_zero()) || col(m, a, e).iter().any(|x| !x.is_zero()) {
                    return Some(format!("[1,a] != 0 for basis element {a} of A"));
                }
            }
        }
        if let Some(m) = self.product(&ProductId::new(A, A, A, Kind::Circ)) {
            for a in 0..da {
                let want: Vec<Rational> = (0..da)
                    .map(|k| {
                        if k == a {
                            Rational::from_int(2)
                        } else {
                            Rational::zero()
                        }
                    })
                    .collect();
                if col(m, e, a) != want || col(m, a, e) != want {
                    return Some(format!("1∘a != 2a for basis element {a} of A"));
                }
            }
        }
        if let Some(m) = self.product(&ProductId::new(A, A, D, Kind::Plain)) {
            for a in 0..da {
                if col(m, e, a).iter().any(|x| !x.is_zero()) || col(m, a, e).iter().any(|x| !x.is_zero()) {
                    return Some(format!("<1,a> != 0 for basis element {a} of A"));
                }
            }
        }
        None
    }

    /// Products with at least one nonzero entry, in sorted order.
    pub fn nonzero_products(&self) -> Vec<ProductId> {
        self.products
            .iter()
            .filter(|(_, m)| !m.is_zero())
            .map(|(id, _)| *id)
            .collect()
    }

    /// Copy with one product matrix negated.
    pub fn with_negated(&self, id: &ProductId) -> Self {
        let mut out = self.clone();
        if let Some(m) = out.products.get_mut(id) {
            *m = -&*m;
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let j = DataJson {
            n: self.n,
            dims: self.dims.clone(),
            one: self.one,
            flattening: FLATTENING.into(),
            products: self
                .products
                .iter()
                .map(|(id, m)| ProductJson {
                    cell: *id,
                    matrix: m.clone(),
                })
                .collect(),
        };
        serde_json::to_value(j).expect("serialisable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let j: DataJson = serde_json::from_value(v.clone())?;
        let mut products = BTreeMap::new();
        for p in j.products {
            // 0×k matrices cannot carry their column count through JSON
            let want = (
                j.dims.get(&p.cell.z).copied().unwrap_or(0),
                j.dims.get(&p.cell.x).copied().unwrap_or(0) * j.dims.get(&p.cell.y).copied().unwrap_or(0),
            );
            let m = if p.matrix.rows() == 0 && want.0 == 0 {
                Matrix::zeros(0, want.1)
            } else {
                p.matrix
            };
            if products.insert(p.cell, m).is_some() {
                return Err(Error::InvalidData(format!("product {} listed twice", p.cell)));
            }
        }
        let data = CoordinateData {
            n: j.n,
            dims: j.dims,
            one: j.one,
            products,
        };
        data.validate()?;
        Ok(data)
    }
}

/// A block `M ⊗ X` of the layout.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Sector {
    pub space: Space,
    pub label: ThetaLabel,
    pub module_dim: usize,
    pub coord_dim: usize,
    pub offset: usize,
}

impl Sector {
    pub fn len(&self) -> usize {
        self.module_dim * self.coord_dim
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Index of `m_i ⊗ ξ_k`.
    pub fn index(&self, i: usize, k: usize) -> usize {
        self.offset + i * self.coord_dim + k
    }

    pub fn contains(&self, a: usize) -> bool {
        a >= self.offset && a < self.offset + self.len()
    }
}

/// Sectors for the given coordinate dimensions, in [`spaces`] order.
pub fn layout(n: usize, dims: &BTreeMap<Space, usize>) -> Result<Vec<Sector>> {
    let mut offset = 0;
    let mut out = Vec::new();
    for s in spaces(n)? {
        let label = s.label();
        let sec = Sector {
            space: s,
            label,
            module_dim: label.dim(n),
            coord_dim: dims.get(&s).copied().unwrap_or(0),
            offset,
        };
        offset += sec.len();
        out.push(sec);
    }
    Ok(out)
}

type Sparse = Vec<(usize, Rational)>;

fn to_sparse(acc: BTreeMap<usize, Rational>) -> Sparse {
    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

/// A Lie algebra given by structure constants in a sector layout.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedLieAlgebra {
    n: usize,
    sectors: Vec<Sector>,
    one: Option<usize>,
    dim: usize,
    sc: Vec<Sparse>,
}

impl GradedLieAlgebra {
    /// `sc[a·dim + b]` lists the nonzero coordinates of `[e_a, e_b]`.
    pub fn from_structure_constants(
        n: usize,
        sectors: Vec<Sector>,
        one: Option<usize>,
        sc: Vec<Vec<(usize, Rational)>>,
    ) -> Result<Self> {
        check_n(n)?;
        let dim: usize = sectors.iter().map(Sector::len).sum();
        if sc.len() != dim * dim {
            return Err(Error::InvalidData(format!(
                "expected {} structure constant rows, got {}",
                dim * dim,
                sc.len()
            )));
        }
        let sc = sc
            .into_iter()
            .map(|row| {
                let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
                for (k, v) in row {
                    *acc.entry(k).or_insert_with(Rational::zero) += &v;
                }
                to_sparse(acc)
            })
            .collect::<Vec<_>>();
        if sc.iter().flatten().any(|(k, _)| *k >= dim) {
            return Err(Error::InvalidData("structure constant index out of range".into()));
        }
        Ok(GradedLieAlgebra {
            n,
            sectors,
            one,
            dim,
            sc,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn sectors(&self) -> &[Sector] {
        &self.sectors
    }

    pub fn sector(&self, s: Space) -> Option<&Sector> {
        self.sectors.iter().find(|x| x.space == s)
    }

    pub fn one(&self) -> Option<usize> {
        self.one
    }

    /// `[e_a, e_b]` as sparse coordinates.
    pub fn bracket_basis(&self, a: usize, b: usize) -> &[(usize, Rational)] {
        &self.sc[a * self.dim + b]
    }

    pub fn bracket(&self, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim];
        for (a, x) in u.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (b, y) in v.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                let xy = x * y;
                for (k, c) in self.bracket_basis(a, b) {
                    out[*k] += &(&xy * c);
                }
            }
        }
        out
    }

    /// Sector, module index and coordinate index of a basis element.
    pub fn locate(&self, a: usize) -> (Space, usize, usize) {
        let s = self.sectors.iter().find(|s| s.contains(a)).expect("index in range");
        let r = a - s.offset;
        (s.space, r / s.coord_dim, r % s.coord_dim)
    }

    pub fn basis_name(&self, a: usize) -> String {
        let (s, i, k) = self.locate(a);
        if s == Space::A {
            format!("{}⊗A{}", SlBasis::any_rank(self.n).name(i), k)
        } else {
            format!("{}{}⊗{}{}", s.label(), i, s, k)
        }
    }

    /// Index of `x_k ⊗ 1` for the `k`-th basis element of `sl_n`.
    pub fn g_index(&self, k: usize) -> Option<usize> {
        let one = self.one?;
        let s = self.sector(Space::A)?;
        (one < s.coord_dim).then(|| s.index(k, one))
    }

    /// First pair with `[e_a, e_b] != -[e_b, e_a]`.
    pub fn antisymmetry_defect(&self) -> Option<(usize, usize)> {
        for a in 0..self.dim {
            for b in a..self.dim {
                let ab = self.bracket_basis(a, b);
                let ba = self.bracket_basis(b, a);
                let neg: Sparse = ba.iter().map(|(k, v)| (*k, -v)).collect();
                if ab != neg.as_slice() {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// First pair whose brackets differ between the two algebras.
    pub fn first_difference(&self, other: &GradedLieAlgebra) -> Option<(usize, usize)> {
        if self.dim != other.dim {
            return Some((self.dim.min(other.dim), 0));
        }
        (0..self.dim * self.dim)
            .find(|&p| self.sc[p] != other.sc[p])
            .map(|p| (p / self.dim, p % self.dim))
    }

    /// Adjoint matrix of `e_a` (column `b` holds `[e_a, e_b]`).
    pub fn ad(&self, a: usize) -> Matrix {
        let mut m = Matrix::zeros(self.dim, self.dim);
        for b in 0..self.dim {
            for (k, v) in self.bracket_basis(a, b) {
                m[(*k, b)] = v.clone();
            }
        }
        m
    }

    /// `L` as a module over `g ⊗ 1`.
    pub fn restriction(&self) -> Result<GModule> {
        let basis = SlBasis::any_rank(self.n);
        let mut actions = Vec::with_capacity(basis.dim());
        for k in 0..basis.dim() {
            let a = self
                .g_index(k)
                .ok_or_else(|| Error::InvalidData("no distinguished element 1 in A".into()))?;
            actions.push(self.ad(a));
        }
        GModule::new(self.n, actions, Some("L".into()))
    }

    /// `L ⊕ F^k` with the new summands central and placed in `D`.
    pub fn with_trivial_summand(&self, k: usize) -> GradedLieAlgebra {
        let new_dim = self.dim + k;
        let mut sc = vec![Vec::new(); new_dim * new_dim];
        for a in 0..self.dim {
            for b in 0..self.dim {
                sc[a * new_dim + b] = self.sc[a * self.dim + b].clone();
            }
        }
        let mut sectors = self.sectors.clone();
        let d = sectors.iter_mut().find(|s| s.space == Space::D).expect("D sector");
        // D is the last sector, so its new coordinates come last
        d.coord_dim += k;
        GradedLieAlgebra {
            n: self.n,
            sectors,
            one: self.one,
            dim: new_dim,
            sc,
        }
    }

    /// Sets `[e_a, e_b] = v` and `[e_b, e_a] = -v`.
    pub fn set_bracket(&mut self, a: usize, b: usize, v: &[(usize, Rational)]) {
        self.sc[a * self.dim + b] = v.to_vec();
        self.sc[b * self.dim + a] = v.iter().map(|(k, x)| (*k, -x)).collect();
    }
}

/// Builds the algebra defined by the bracket rules and `data`.
pub fn assemble(data: &CoordinateData) -> Result<GradedLieAlgebra> {
    data.validate()?;
    let n = data.n;
    let ctx = Ctx::new(n)?;
    let sectors = layout(n, &data.dims)?;
    let dim: usize = sectors.iter().map(Sector::len).sum();
    let sec = |s: Space| sectors.iter().find(|x| x.space == s).expect("sector");
    let mut acc: Vec<BTreeMap<usize, Rational>> = vec![BTreeMap::new(); dim * dim];
    for r in bracket_rules(n)? {
        let (sx, sy) = (sec(r.x), sec(r.y));
        if sx.is_empty() || sy.is_empty() {
            continue;
        }
        for term in &r.terms {
            let sz = sec(term.target);
            if sz.is_empty() {
                continue;
            }
            let p = data
                .product(&term.product)
                .ok_or_else(|| Error::MissingProduct(term.product.to_string()))?;
            let m = realize(&term.expr, sx.label, sy.label, sz.label, &ctx)?.scale(&term.coeff);
            let mcols = columns(&m);
            let pcols = columns(p);
            for i in 0..sx.module_dim {
                for j in 0..sy.module_dim {
                    let mc = &mcols[i * sy.module_dim + j];
                    if mc.is_empty() {
                        continue;
                    }
                    for k in 0..sx.coord_dim {
                        for l in 0..sy.coord_dim {
                            let pc = &pcols[k * sy.coord_dim + l];
                            let (a, b) = (sx.index(i, k), sy.index(j, l));
                            for (row, mv) in mc {
                                for (mm, pv) in pc {
                                    let v = mv * pv;
                                    let t = sz.index(*row, *mm);
                                    *acc[a * dim + b].entry(t).or_insert_with(Rational::zero) += &v;
                                    if r.x != r.y {
                                        *acc[b * dim + a].entry(t).or_insert_with(Rational::zero) -= &v;
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    let sc = acc.into_iter().map(to_sparse).collect();
    GradedLieAlgebra::from_structure_constants(n, sectors, Some(data.one), sc)
}

/// Nonzero entries of each column.
fn columns(m: &Matrix) -> Vec<Sparse> {
    let mut cols = vec![Vec::new(); m.cols()];
    for i in 0..m.rows() {
        for (j, v) in m.row(i).iter().enumerate() {
            if !v.is_zero() {
                cols[j].push((i, v.clone()));
            }
        }
    }
    cols
}

/// Seed used by sampled Jacobi checks when none is given.
pub const DEFAULT_SEED: u64 = 20_231_017;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JacobiMode {
    Full,
    Sampled { samples: usize, seed: u64 },
}

#[derive(Clone, Debug, Serialize)]
pub struct JacobiReport {
    pub mode: String,
    pub seed: Option<u64>,
    pub triples: usize,
    pub violations: usize,
    pub witness: Option<[usize; 3]>,
    pub witness_names: Option<[String; 3]>,
}

impl JacobiReport {
    pub fn pass(&self) -> bool {
        self.violations == 0
    }
}

fn jacobi_holds(l: &GradedLieAlgebra, a: usize, b: usize, c: usize, buf: &mut [Rational]) -> bool {
    for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
        for (k, u) in l.bracket_basis(x, y) {
            for (m, v) in l.bracket_basis(*k, z) {
                buf[*m] += &(u * v);
            }
        }
    }
    let ok = buf.iter().all(Rational::is_zero);
    buf.iter_mut().for_each(|x| *x = Rational::zero());
    ok
}

pub fn check_jacobi(l: &GradedLieAlgebra, mode: JacobiMode) -> JacobiReport {
    check_jacobi_with(l, mode, Exec::Parallel)
}

pub fn check_jacobi_with(l: &GradedLieAlgebra, mode: JacobiMode, exec: Exec) -> JacobiReport {
    let d = l.dim();
    let (triples, violations, witness) = match mode {
        JacobiMode::Full => {
            let per_a = map_range_with(exec, d, |a| {
                let mut buf = vec![Rational::zero(); d];
                let mut bad = 0usize;
                let mut first = None;
                for b in a + 1..d {
                    for c in b + 1..d {
                        if !jacobi_holds(l, a, b, c, &mut buf) {
                            bad += 1;
                            first.get_or_insert([a, b, c]);
                        }
                    }
                }
                (bad, first)
            });
            let total = if d < 3 { 0 } else { d * (d - 1) * (d - 2) / 6 };
            let bad = per_a.iter().map(|x| x.0).sum();
            (total, bad, per_a.into_iter().find_map(|x| x.1))
        }
        JacobiMode::Sampled { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut triples = Vec::with_capacity(samples);
            if d >= 3 {
                while triples.len() < samples {
                    let mut t = [rng.gen_range(0..d), rng.gen_range(0..d), rng.gen_range(0..d)];
                    t.sort_unstable();
                    if t[0] != t[1] && t[1] != t[2] {
                        triples.push(t);
                    }
                }
            }
            let res = map_with(exec, &triples, |t| {
                let mut buf = vec![Rational::zero(); d];
                jacobi_holds(l, t[0], t[1], t[2], &mut buf)
            });
            let bad = res.iter().filter(|ok| !**ok).count();
            let first = triples.iter().zip(&res).find(|(_, ok)| !**ok).map(|(t, _)| *t);
            (triples.len(), bad, first)
        }
    };
    let (mode_name, seed) = match mode {
        JacobiMode::Full => ("full".to_string(), None),
        JacobiMode::Sampled { seed, .. } => ("sampled".to_string(), Some(seed)),
    };
    JacobiReport {
        mode: mode_name,
        seed,
        triples,
        violations,
        witness,
        witness_names: witness.map(|t| t.map(|a| l.basis_name(a))),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GradingReport {
    /// `g ⊗ 1` closes under the bracket exactly as `sl_n`.
    pub gamma1: bool,
    /// `L` is a weight module with all weights in `Θ_n`.
    pub gamma2: bool,
    /// `L_0 = Σ_{α≠0} [L_α, L_{-α}]`.
    pub gamma3: bool,
    pub weights: Vec<(Weight, usize)>,
    pub weights_outside_theta: Vec<Weight>,
    pub zero_weight_dim: usize,
    pub opposite_brackets_dim: usize,
    pub notes: Vec<String>,
}

impl GradingReport {
    pub fn pass(&self) -> bool {
        self.gamma1 && self.gamma2 && self.gamma3
    }
}

fn gamma1_defect(l: &GradedLieAlgebra) -> Option<String> {
    let basis = SlBasis::any_rank(l.n());
    let d = basis.dim();
    let idx: Vec<usize> = match (0..d).map(|k| l.g_index(k)).collect::<Option<Vec<_>>>() {
        Some(v) => v,
        None => return Some("no distinguished element 1 in A".into()),
    };
    for i in 0..d {
        for j in 0..d {
            let br = bracket(basis.element(i), basis.element(j)).expect("square matrices");
            let c = basis.coords(&br).expect("traceless");
            let want: Sparse = c
                .into_iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(k, v)| (idx[k], v))
                .collect();
            let mut want = want;
            want.sort_by_key(|x| x.0);
            if l.bracket_basis(idx[i], idx[j]) != want.as_slice() {
                return Some(format!("[{}⊗1, {}⊗1] != [x,y]⊗1", basis.name(i), basis.name(j)));
            }
        }
    }
    None
}

/// Checks the three grading axioms.
pub fn check_grading(l: &GradedLieAlgebra) -> GradingReport {
    let mut notes = Vec::new();
    let g1 = gamma1_defect(l);
    if let Some(m) = &g1 {
        notes.push(m.clone());
    }
    let mut report = GradingReport {
        gamma1: g1.is_none(),
        gamma2: false,
        gamma3: false,
        weights: Vec::new(),
        weights_outside_theta: Vec::new(),
        zero_weight_dim: 0,
        opposite_brackets_dim: 0,
        notes,
    };
    let wd = match l.restriction().and_then(|m| {
        if let Some((a, b)) = m.representation_defect() {
            return Err(Error::InvalidData(format!("ad is not a representation on [{a}, {b}]")));
        }
        weight_decompose(&m)
    }) {
        Ok(wd) => wd,
        Err(e) => {
            report.notes.push(format!("weight decomposition failed: {e}"));
            return report;
        }
    };
    let theta = theta_weights(l.n());
    report.weights = wd.spaces.iter().map(|(w, s)| (w.clone(), s.dim())).collect();
    report.weights_outside_theta = wd.spaces.keys().filter(|w| !theta.contains(*w)).cloned().collect();
    report.gamma2 = wd.total_dim == l.dim() && report.weights_outside_theta.is_empty();
    if !report.gamma2 {
        report
            .notes
            .push("weights outside Θ_n or L is not a weight module".into());
    }
    let zero = Weight::zero(l.n());
    let l0 = wd.spaces.get(&zero).cloned().unwrap_or_else(|| Subspace::zero(l.dim()));
    let mut vecs = Vec::new();
    for (w, s) in &wd.spaces {
        if w.is_zero() {
            continue;
        }
        if let Some(t) = wd.spaces.get(&-w.clone()) {
            for u in s.vectors() {
                for v in t.vectors() {
                    vecs.push(l.bracket(&u, &v));
                }
            }
        }
    }
    let span = Subspace::from_vectors(l.dim(), vecs);
    report.zero_weight_dim = l0.dim();
    report.opposite_brackets_dim = span.dim();
    report.gamma3 = span == l0;
    if !report.gamma3 {
        report.notes.push(format!(
            "zero weight space has dim {}, brackets of opposite weight spaces span dim {}",
            l0.dim(),
            span.dim()
        ));
    }
    report
}

#[derive(Clone, Debug, Serialize)]
pub struct ConditionReport {
    pub holds: bool,
    pub pairs_checked: usize,
    pub witness: Option<[String; 2]>,
}

/// `[S⊗C, S⊗C] = [S'⊗C', S'⊗C'] = 0` (stated for `n = 3`).
pub fn check_condition_s(l: &GradedLieAlgebra) -> Result<ConditionReport> {
    if l.n() != 3 {
        return Err(Error::Input(format!(
            "the S/S' self-bracket condition is stated for n = 3 (got {})",
            l.n()
        )));
    }
    let mut checked = 0;
    for s in [Space::C, Space::Cp] {
        let Some(sec) = l.sector(s) else { continue };
        let r = sec.offset..sec.offset + sec.len();
        for a in r.clone() {
            for b in r.clone() {
                checked += 1;
                if !l.bracket_basis(a, b).is_empty() {
                    return Ok(ConditionReport {
                        holds: false,
                        pairs_checked: checked,
                        witness: Some([l.basis_name(a), l.basis_name(b)]),
                    });
                }
            }
        }
    }
    Ok(ConditionReport {
        holds: true,
        pairs_checked: checked,
        witness: None,
    })
}

/// Cells of a product table keyed by (row, column).
pub type ProductTable = BTreeMap<(Space, Space), Option<Vec<Space>>>;

/// Transcribed cells of the bilinear-product tables: `None` is an empty
/// cell, `Some(vec![])` a cell marked 0.
pub fn product_table(n: usize) -> Result<ProductTable> {
    use Space::*;
    let sp = spaces(n)?;
    let rows: Vec<Vec<Option<Vec<Space>>>> = if n == 3 {
        // rows and columns A, C, C', E, E', D
        let e = || None;
        let z = || Some(vec![]);
        vec![
            vec![Some(vec![A, D]), Some(vec![C, E]), e(), Some(vec![C, E]), e(), e()],
            vec![e(), z(), Some(vec![A, D]), Some(vec![Ep]), Some(vec![A]), e()],
            vec![Some(vec![Cp, Ep]), e(), z(), Some(vec![A]), Some(vec![E]), e()],
            vec![e(), Some(vec![Ep]), e(), Some(vec![Cp, Ep]), Some(vec![A, D]), e()],
            vec![Some(vec![Cp, Ep]), e(), Some(vec![E]), e(), Some(vec![C, E]), e()],
            vec![
                Some(vec![A]),
                Some(vec![C]),
                Some(vec![Cp]),
                Some(vec![E]),
                Some(vec![Ep]),
                Some(vec![D]),
            ],
        ]
    } else {
        // rows and columns A, B, B', C, C', E, D
        let e = || None;
        let z = || Some(vec![]);
        vec![
            vec![
                Some(vec![A, D]),
                Some(vec![B]),
                e(),
                Some(vec![C, E]),
                e(),
                Some(vec![C, E, Cp]),
                e(),
            ],
            vec![e(), Some(vec![C, E]), Some(vec![A, D]), z(), e(), z(), e()],
            vec![
                Some(vec![A]),
                e(),
                Some(vec![Cp, E]),
                Some(vec![B]),
                z(),
                Some(vec![B]),
                e(),
            ],
            vec![e(), z(), e(), z(), Some(vec![A, D]), z(), e()],
            vec![Some(vec![Cp, E]), Some(vec![Bp]), z(), e(), z(), Some(vec![A]), e()],
            vec![e(), z(), e(), z(), e(), z(), e()],
            vec![
                Some(vec![A]),
                Some(vec![B]),
                Some(vec![Bp]),
                Some(vec![C]),
                Some(vec![Cp]),
                Some(vec![E]),
                Some(vec![D]),
            ],
        ]
    };
    let mut out = BTreeMap::new();
    for (i, row) in rows.into_iter().enumerate() {
        for (j, cell) in row.into_iter().enumerate() {
            out.insert((sp[i], sp[j]), cell);
        }
    }
    Ok(out)
}

/// Comparison of one ordered pair of spaces between the transcribed table
/// (with empty cells filled from the transposed cell) and the bracket rules.
#[derive(Clone, Debug, Serialize)]
pub struct SignatureCell {
    pub x: Space,
    pub y: Space,
    pub table: Vec<Space>,
    pub rules: Vec<Space>,
    pub agrees: bool,
}

pub fn signature_report(n: usize) -> Result<Vec<SignatureCell>> {
    let table = product_table(n)?;
    let mut from_rules: BTreeMap<(Space, Space), BTreeSet<Space>> = BTreeMap::new();
    for r in bracket_rules(n)? {
        for t in &r.terms {
            from_rules.entry((r.x, r.y)).or_default().insert(t.target);
            from_rules.entry((r.y, r.x)).or_default().insert(t.target);
        }
    }
    let mut out = Vec::new();
    for x in spaces(n)? {
        for y in spaces(n)? {
            let cell = table[&(x, y)]
                .clone()
                .or_else(|| table[&(y, x)].clone())
                .unwrap_or_default();
            let t: BTreeSet<Space> = cell.into_iter().collect();
            let r = from_rules.get(&(x, y)).cloned().unwrap_or_default();
            out.push(SignatureCell {
                x,
                y,
                agrees: t == r,
                table: t.into_iter().collect(),
                rules: r.into_iter().collect(),
            });
        }
    }
    Ok(out)
}
