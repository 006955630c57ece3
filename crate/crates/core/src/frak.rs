//! The coordinate algebras `𝔞` and `𝔟` of a graded algebra, their
//! involutions, and the structural checks on extracted data.
//!
//! `A` is split into two copies `A⁺`, `A⁻` according to
//! `𝔤 ⊗ A = (𝔤⁺ ⊗ A⁻) ⊕ (𝔤⁻ ⊗ A⁺)` with `𝔤^± = {x : xᵗ = ±x}`. Products
//! of homogeneous elements are `αβ = [α,β]/2 + (α∘β)/2`, where each part is
//! one of the coordinate products, possibly with a sign.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graded::{assemble, check_condition_s, CoordinateData, Kind, ProductId, Space};
use crate::linalg::{q, Matrix, Rational, Subspace};
use crate::par::{map_range_with, Exec};
use crate::sl::{check_n, SlBasis};

/// Homogeneous components of `𝔟`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Piece {
    Ap,
    Am,
    B,
    Bp,
    C,
    Cp,
    E,
    Ep,
}

impl Piece {
    pub fn space(self) -> Space {
        match self {
            Piece::Ap | Piece::Am => Space::A,
            Piece::B => Space::B,
            Piece::Bp => Space::Bp,
            Piece::C => Space::C,
            Piece::Cp => Space::Cp,
            Piece::E => Space::E,
            Piece::Ep => Space::Ep,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Piece::Ap => "A+",
            Piece::Am => "A-",
            Piece::B => "B",
            Piece::Bp => "B'",
            Piece::C => "C",
            Piece::Cp => "C'",
            Piece::E => "E",
            Piece::Ep => "E'",
        }
    }

    /// Sign of the involution on this piece (`γ` on `𝔞`, `η` on `𝔟`).
    pub fn involution_sign(self) -> i64 {
        match self {
            Piece::Am | Piece::C | Piece::Cp => -1,
            _ => 1,
        }
    }
}

impl fmt::Display for Piece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Pieces of `𝔞` (and of `𝔟` when `with_b`), in layout order.
pub fn pieces(n: usize, with_b: bool) -> Result<Vec<Piece>> {
    check_n(n)?;
    use Piece::*;
    Ok(match (n, with_b) {
        (3, _) => vec![Ap, Am, C, Cp, E, Ep],
        (_, false) => vec![Ap, Am, C, Cp, E],
        _ => vec![Ap, Am, B, Bp, C, Cp, E],
    })
}

/// One part of the product `P × Q → Z`: `αβ` gains `coeff · id(α, β)`,
/// and `βα` gains `rev · coeff · id(α, β)`.
#[derive(Clone, Debug)]
struct Part {
    p: Piece,
    q: Piece,
    z: Piece,
    id: ProductId,
    coeff: Rational,
    rev: i64,
}

const SYM: i64 = 1;
const ANTI: i64 = -1;

fn part(p: Piece, q: Piece, z: Piece, id: (Space, Space, Space, Kind), coeff: Rational, rev: i64) -> Part {
    Part {
        p,
        q,
        z,
        id: ProductId::new(id.0, id.1, id.2, id.3),
        coeff,
        rev,
    }
}

fn product_parts(n: usize, with_b: bool) -> Vec<Part> {
    use Kind::*;
    use Piece::*;
    use Space as S;
    let h = || q(1, 2);
    let mh = || q(-1, 2);
    let one = Rational::one;
    let aab = (S::A, S::A, S::A, Bracket);
    let aac = (S::A, S::A, S::A, Circ);
    let mut v = vec![
        // (a^σ∘b^τ) = (a∘b)^{στ},  [a^σ,b^τ] = [a,b]^{-στ}
        part(Ap, Ap, Ap, aac, h(), SYM),
        part(Ap, Ap, Am, aab, h(), ANTI),
        part(Am, Am, Ap, aac, h(), SYM),
        part(Am, Am, Am, aab, h(), ANTI),
        part(Ap, Am, Am, aac, h(), SYM),
        part(Ap, Am, Ap, aab, h(), ANTI),
        part(Ap, C, C, (S::A, S::C, S::C, Plain), h(), SYM),
        part(Ap, C, E, (S::A, S::C, S::E, Plain), h(), ANTI),
        part(Am, C, E, (S::A, S::C, S::E, Plain), h(), SYM),
        part(Am, C, C, (S::A, S::C, S::C, Plain), h(), ANTI),
        part(Ap, E, E, (S::A, S::E, S::E, Plain), h(), SYM),
        part(Ap, E, C, (S::A, S::E, S::C, Plain), h(), ANTI),
        part(Am, E, C, (S::A, S::E, S::C, Plain), h(), SYM),
        part(Am, E, E, (S::A, S::E, S::E, Plain), h(), ANTI),
        part(Cp, Ap, Cp, (S::Cp, S::A, S::Cp, Plain), h(), SYM),
        part(Cp, Am, Cp, (S::Cp, S::A, S::Cp, Plain), h(), ANTI),
        part(C, Cp, Ap, (S::C, S::Cp, S::A, Plain), h(), SYM),
        part(C, Cp, Am, (S::C, S::Cp, S::A, Plain), h(), ANTI),
        part(Cp, E, Ap, (S::Cp, S::E, S::A, Plain), h(), ANTI),
        part(Cp, E, Am, (S::Cp, S::E, S::A, Plain), mh(), SYM),
    ];
    if n == 4 {
        v.extend([
            part(Ap, E, Cp, (S::A, S::E, S::Cp, Plain), h(), ANTI),
            part(Am, E, Cp, (S::A, S::E, S::Cp, Plain), mh(), SYM),
            part(Cp, Ap, E, (S::Cp, S::A, S::E, Plain), h(), ANTI),
            part(Cp, Am, E, (S::Cp, S::A, S::E, Plain), h(), SYM),
            part(C, E, Am, (S::C, S::E, S::A, Plain), h(), SYM),
            part(C, E, Ap, (S::C, S::E, S::A, Plain), h(), ANTI),
            part(E, E, Ap, (S::E, S::E, S::A, Plain), h(), SYM),
        ]);
        if with_b {
            // αb, with bα = γ(α)b
            for (a, rev) in [(Ap, 1), (Am, -1)] {
                v.push(part(a, B, B, (S::A, S::B, S::B, Plain), one(), rev));
                v.push(part(Bp, a, Bp, (S::Bp, S::A, S::Bp, Plain), one(), rev));
            }
            v.extend([
                part(E, B, Bp, (S::E, S::B, S::Bp, Plain), one(), 1),
                part(Cp, B, Bp, (S::Cp, S::B, S::Bp, Plain), one(), -1),
                part(Bp, C, B, (S::Bp, S::C, S::B, Plain), one(), -1),
                part(Bp, E, B, (S::Bp, S::E, S::B, Plain), one(), 1),
                part(B, B, C, (S::B, S::B, S::C, Bracket), h(), ANTI),
                part(B, B, E, (S::B, S::B, S::E, Circ), h(), SYM),
                part(Bp, Bp, Cp, (S::Bp, S::Bp, S::Cp, Bracket), h(), ANTI),
                part(Bp, Bp, E, (S::Bp, S::Bp, S::E, Circ), h(), SYM),
                part(B, Bp, Am, (S::B, S::Bp, S::A, Plain), h(), ANTI),
                part(B, Bp, Ap, (S::B, S::Bp, S::A, Plain), h(), SYM),
            ]);
        }
    } else {
        v.extend([
            part(Cp, Ap, Ep, (S::Cp, S::A, S::Ep, Plain), h(), ANTI),
            part(Cp, Am, Ep, (S::Cp, S::A, S::Ep, Plain), h(), SYM),
            part(Ep, Ap, Ep, (S::Ep, S::A, S::Ep, Plain), h(), SYM),
            part(Ep, Ap, Cp, (S::Ep, S::A, S::Cp, Plain), h(), ANTI),
            part(Ep, Am, Ep, (S::Ep, S::A, S::Ep, Plain), h(), ANTI),
            part(Ep, Am, Cp, (S::Ep, S::A, S::Cp, Plain), h(), SYM),
            part(E, Ep, Ap, (S::E, S::Ep, S::A, Plain), h(), SYM),
            part(E, Ep, Am, (S::E, S::Ep, S::A, Plain), h(), ANTI),
            part(C, Ep, Am, (S::C, S::Ep, S::A, Plain), h(), SYM),
            part(C, Ep, Ap, (S::C, S::Ep, S::A, Plain), h(), ANTI),
            part(E, E, Cp, (S::E, S::E, S::Cp, Bracket), h(), ANTI),
            part(E, E, Ep, (S::E, S::E, S::Ep, Circ), h(), SYM),
            part(Ep, Ep, C, (S::Ep, S::Ep, S::C, Bracket), h(), ANTI),
            part(Ep, Ep, E, (S::Ep, S::Ep, S::E, Circ), h(), SYM),
            // plain products: ec = (e,c)_{E'}, ce = -ec; c'e' = (c',e')_E, e'c' = -c'e'
            part(E, C, Ep, (S::E, S::C, S::Ep, Plain), one(), ANTI),
            part(Cp, Ep, E, (S::Cp, S::Ep, S::E, Plain), one(), ANTI),
        ]);
    }
    v
}

/// Pairings `⟨P, Q⟩ → D`.
fn pairing_parts(n: usize) -> Vec<(Piece, Piece, ProductId)> {
    use Piece::*;
    use Space as S;
    let id = |x, y| ProductId::new(x, y, S::D, Kind::Plain);
    let mut v = vec![
        (Ap, Ap, id(S::A, S::A)),
        (Am, Am, id(S::A, S::A)),
        (C, Cp, id(S::C, S::Cp)),
    ];
    if n == 4 {
        v.push((B, Bp, id(S::B, S::Bp)));
        v.push((E, E, id(S::E, S::E)));
    } else {
        v.push((E, Ep, id(S::E, S::Ep)));
    }
    v
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Block {
    pub piece: Piece,
    pub offset: usize,
    pub dim: usize,
}

type Sparse = Vec<(usize, Rational)>;

/// `𝔞` or `𝔟` together with the action of `D` and the pairings into `D`.
#[derive(Clone, Debug)]
pub struct CoordAlgebra {
    pub n: usize,
    pub with_b: bool,
    pub blocks: Vec<Block>,
    pub dim: usize,
    pub d_dim: usize,
    /// Index of `1⁺`.
    pub unit: usize,
    mul: Vec<Sparse>,
    /// `(P, Q, matrix)`: `⟨α, β⟩` for `α ∈ P`, `β ∈ Q`, column `i·dim Q + j`.
    pairings: Vec<(Piece, Piece, Matrix)>,
    /// Action of each basis element of `D` on `𝔟`.
    d_action: Vec<Matrix>,
    /// `[d_k, d_l]` in `D`, column `k·dim D + l`.
    d_bracket: Matrix,
}

/// `𝔞` built from coordinate data. For `n = 3` the S/S' self-bracket
/// condition is checked first.
pub fn build_frak_a(data: &CoordinateData) -> Result<CoordAlgebra> {
    build(data, false)
}

/// `𝔟 = 𝔞 ⊕ B ⊕ B'` (`n = 4` only).
pub fn build_frak_b(data: &CoordinateData) -> Result<CoordAlgebra> {
    if data.n != 4 {
        return Err(Error::Input(format!(
            "the algebra with B and B' exists for n = 4 only (got {})",
            data.n
        )));
    }
    build(data, true)
}

fn build(data: &CoordinateData, with_b: bool) -> Result<CoordAlgebra> {
    data.validate()?;
    let n = data.n;
    if n == 3 {
        let r = check_condition_s(&assemble(data)?)?;
        if !r.holds {
            return Err(Error::ConditionViolated(format!(
                "S/S' self-brackets do not vanish: {:?}",
                r.witness
            )));
        }
    }
    let mut blocks = Vec::new();
    let mut offset = 0;
    for p in pieces(n, with_b)? {
        let dim = data.dim(p.space());
        blocks.push(Block { piece: p, offset, dim });
        offset += dim;
    }
    let dim = offset;
    let block = |p: Piece| blocks.iter().find(|b| b.piece == p).expect("piece").clone();
    let product = |id: &ProductId| {
        data.product(id)
            .cloned()
            .ok_or_else(|| Error::MissingProduct(id.to_string()))
    };

    let mut acc: Vec<BTreeMap<usize, Rational>> = vec![BTreeMap::new(); dim * dim];
    for pt in product_parts(n, with_b) {
        let (bp, bq, bz) = (block(pt.p), block(pt.q), block(pt.z));
        let m = product(&pt.id)?;
        let rev = Rational::from_int(pt.rev);
        for i in 0..bp.dim {
            for j in 0..bq.dim {
                for r in 0..bz.dim {
                    let v = &m[(r, i * bq.dim + j)];
                    if v.is_zero() {
                        continue;
                    }
                    let c = &pt.coeff * v;
                    let (a, b, t) = (bp.offset + i, bq.offset + j, bz.offset + r);
                    *acc[a * dim + b].entry(t).or_insert_with(Rational::zero) += &c;
                    if pt.p != pt.q {
                        *acc[b * dim + a].entry(t).or_insert_with(Rational::zero) += &(&c * &rev);
                    }
                }
            }
        }
    }
    let mul = acc
        .into_iter()
        .map(|m| m.into_iter().filter(|(_, v)| !v.is_zero()).collect())
        .collect();

    let d_dim = data.dim(Space::D);
    let mut pairings = Vec::new();
    for (p, q, id) in pairing_parts(n) {
        if with_b || (p != Piece::B && p != Piece::Bp) {
            pairings.push((p, q, product(&id)?));
        }
    }
    let mut d_action = vec![Matrix::zeros(dim, dim); d_dim];
    for b in &blocks {
        let m = product(&ProductId::new(Space::D, b.piece.space(), b.piece.space(), Kind::Plain))?;
        for (k, act) in d_action.iter_mut().enumerate() {
            for l in 0..b.dim {
                for r in 0..b.dim {
                    act[(b.offset + r, b.offset + l)] = m[(r, k * b.dim + l)].clone();
                }
            }
        }
    }
    let d_bracket = product(&ProductId::new(Space::D, Space::D, Space::D, Kind::Bracket))?;
    Ok(CoordAlgebra {
        n,
        with_b,
        unit: data.one,
        blocks,
        dim,
        d_dim,
        mul,
        pairings,
        d_action,
        d_bracket,
    })
}

fn unit_vec(dim: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); dim];
    v[i] = Rational::one();
    v
}

fn add(u: &[Rational], v: &[Rational]) -> Vec<Rational> {
    u.iter().zip(v).map(|(a, b)| a + b).collect()
}

impl CoordAlgebra {
    pub fn block(&self, p: Piece) -> Option<&Block> {
        self.blocks.iter().find(|b| b.piece == p)
    }

    /// Piece containing basis element `i`.
    pub fn piece_of(&self, i: usize) -> Piece {
        self.blocks
            .iter()
            .find(|b| i >= b.offset && i < b.offset + b.dim)
            .expect("index in range")
            .piece
    }

    pub fn basis_name(&self, i: usize) -> String {
        let p = self.piece_of(i);
        format!("{}[{}]", p, i - self.block(p).expect("piece").offset)
    }

    /// Indices of the basis elements in the given pieces.
    pub fn indices(&self, ps: &[Piece]) -> Vec<usize> {
        self.blocks
            .iter()
            .filter(|b| ps.contains(&b.piece))
            .flat_map(|b| b.offset..b.offset + b.dim)
            .collect()
    }

    pub fn mul_basis(&self, a: usize, b: usize) -> &[(usize, Rational)] {
        &self.mul[a * self.dim + b]
    }

    pub fn mul(&self, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim];
        for (a, x) in u.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (b, y) in v.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                let xy = x * y;
                for (k, c) in self.mul_basis(a, b) {
                    out[*k] += &(&xy * c);
                }
            }
        }
        out
    }

    pub fn basis(&self, i: usize) -> Vec<Rational> {
        unit_vec(self.dim, i)
    }

    /// The involution (`γ` on `𝔞`, `η` on `𝔟`) as a signed diagonal.
    pub fn involution(&self, v: &[Rational]) -> Vec<Rational> {
        v.iter()
            .enumerate()
            .map(|(i, x)| {
                if self.piece_of(i).involution_sign() < 0 {
                    -x
                } else {
                    x.clone()
                }
            })
            .collect()
    }

    pub fn involution_matrix(&self) -> Matrix {
        let mut m = Matrix::zeros(self.dim, self.dim);
        for i in 0..self.dim {
            m[(i, i)] = Rational::from_int(self.piece_of(i).involution_sign());
        }
        m
    }

    /// `⟨u, v⟩ ∈ D`, summed over the defined pairings.
    pub fn pairing(&self, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.d_dim];
        for (p, q, m) in &self.pairings {
            let (bp, bq) = (self.block(*p).expect("piece"), self.block(*q).expect("piece"));
            for i in 0..bp.dim {
                let x = &u[bp.offset + i];
                if x.is_zero() {
                    continue;
                }
                for j in 0..bq.dim {
                    let y = &v[bq.offset + j];
                    if y.is_zero() {
                        continue;
                    }
                    let xy = x * y;
                    for (r, o) in out.iter_mut().enumerate() {
                        let c = &m[(r, i * bq.dim + j)];
                        if !c.is_zero() {
                            *o += &(&xy * c);
                        }
                    }
                }
            }
        }
        out
    }

    /// `d · v` for `d ∈ D`.
    pub fn d_act(&self, d: &[Rational], v: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim];
        for (k, c) in d.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let w = self.d_action[k].apply(v);
            for (o, x) in out.iter_mut().zip(w) {
                *o += &(c * &x);
            }
        }
        out
    }

    pub fn d_bracket(&self, d1: &[Rational], d2: &[Rational]) -> Vec<Rational> {
        let dd = self.d_dim;
        let mut out = vec![Rational::zero(); dd];
        for (k, x) in d1.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (l, y) in d2.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                let xy = x * y;
                for (r, o) in out.iter_mut().enumerate() {
                    let c = &self.d_bracket[(r, k * dd + l)];
                    if !c.is_zero() {
                        *o += &(&xy * c);
                    }
                }
            }
        }
        out
    }

    /// Images of the individual pairings in `D`.
    pub fn pairing_images(&self) -> Vec<(String, Subspace)> {
        self.pairings
            .iter()
            .map(|(p, q, m)| (format!("<{p},{q}>"), Subspace::column_space(m)))
            .collect()
    }
}

/// One named check.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub witness: Option<String>,
}

impl Check {
    fn new(name: &str, witness: Option<String>) -> Self {
        Check {
            name: name.into(),
            pass: witness.is_none(),
            witness,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StructureReport {
    pub n: usize,
    pub checks: Vec<Check>,
    /// Mixed associativity of the bimodules; reported only.
    pub module_associativity: Vec<Check>,
    /// Whether all of `𝔞` is associative; reported only.
    pub frak_a_associative: bool,
    pub frak_a_associator_witness: Option<String>,
}

impl StructureReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }
}

/// First triple in the index lists with `(xy)z != x(yz)`.
fn associator_witness(alg: &CoordAlgebra, xs: &[usize], ys: &[usize], zs: &[usize], exec: Exec) -> Option<String> {
    let found = map_range_with(exec, xs.len(), |ix| {
        let x = alg.basis(xs[ix]);
        for &y in ys {
            let xy = alg.mul(&x, &alg.basis(y));
            for &z in zs {
                let zv = alg.basis(z);
                let l = alg.mul(&xy, &zv);
                let r = alg.mul(&x, &alg.mul(&alg.basis(y), &zv));
                if l != r {
                    return Some(format!(
                        "({}·{})·{} != {}·({}·{})",
                        alg.basis_name(xs[ix]),
                        alg.basis_name(y),
                        alg.basis_name(z),
                        alg.basis_name(xs[ix]),
                        alg.basis_name(y),
                        alg.basis_name(z)
                    ));
                }
            }
        }
        None
    });
    found.into_iter().flatten().next()
}

/// First pair with a product outside `target` (left action when `left`).
fn closure_witness(alg: &CoordAlgebra, acting: &[usize], module: &[usize], target: &[usize]) -> Option<String> {
    for &a in acting {
        for &m in module {
            for (prod, l, r) in [(alg.mul_basis(a, m), a, m), (alg.mul_basis(m, a), m, a)] {
                if let Some((k, _)) = prod.iter().find(|(k, _)| !target.contains(k)) {
                    return Some(format!(
                        "{}·{} has a component in {}",
                        alg.basis_name(l),
                        alg.basis_name(r),
                        alg.piece_of(*k)
                    ));
                }
            }
        }
    }
    None
}

/// The mixed associativity laws `(rr')m = r(r'm)`, `(rm)r' = r(mr')`,
/// `(mr)r' = m(rr')`.
fn module_associativity_witness(alg: &CoordAlgebra, ring: &[usize], module: &[usize], exec: Exec) -> Option<String> {
    associator_witness(alg, ring, ring, module, exec)
        .or_else(|| associator_witness(alg, ring, module, ring, exec))
        .or_else(|| associator_witness(alg, module, ring, ring, exec))
}

fn antiautomorphism_witness(alg: &CoordAlgebra) -> Option<String> {
    for a in 0..alg.dim {
        for b in 0..alg.dim {
            let (x, y) = (alg.basis(a), alg.basis(b));
            let l = alg.involution(&alg.mul(&x, &y));
            let r = alg.mul(&alg.involution(&y), &alg.involution(&x));
            if l != r {
                return Some(format!(
                    "involution({}·{}) != involution({})·involution({})",
                    alg.basis_name(a),
                    alg.basis_name(b),
                    alg.basis_name(b),
                    alg.basis_name(a)
                ));
            }
        }
    }
    None
}

fn involution_checks(alg: &CoordAlgebra, name: &str) -> Vec<Check> {
    let mut out = Vec::new();
    let sq = (0..alg.dim).find(|&i| alg.involution(&alg.involution(&alg.basis(i))) != alg.basis(i));
    out.push(Check::new(
        &format!("{name} squares to the identity"),
        sq.map(|i| alg.basis_name(i)),
    ));
    let u = alg.basis(alg.unit);
    out.push(Check::new(
        &format!("{name} fixes 1+"),
        (alg.involution(&u) != u).then(|| "1+".to_string()),
    ));
    out.push(Check::new(
        &format!("{name} is an antiautomorphism"),
        antiautomorphism_witness(alg),
    ));
    out
}

fn unit_witness(alg: &CoordAlgebra) -> Option<String> {
    let u = alg.basis(alg.unit);
    (0..alg.dim).find_map(|i| {
        let x = alg.basis(i);
        (alg.mul(&u, &x) != x || alg.mul(&x, &u) != x).then(|| format!("1+ does not fix {}", alg.basis_name(i)))
    })
}

/// Runs the structural checks on the coordinate algebra of `data`.
pub fn verify_structure(data: &CoordinateData) -> Result<StructureReport> {
    verify_structure_with(data, Exec::Parallel)
}

pub fn verify_structure_with(data: &CoordinateData, exec: Exec) -> Result<StructureReport> {
    use Piece::*;
    let n = data.n;
    let alg = if n == 4 {
        build_frak_b(data)?
    } else {
        build_frak_a(data)?
    };
    let frak_a = if n == 4 { build_frak_a(data)? } else { alg.clone() };
    let mut checks = Vec::new();

    // (i) the associative subalgebra A⁺ ⊕ A⁻ and the unit
    let cal_a = alg.indices(&[Ap, Am]);
    checks.push(Check::new(
        "A+ + A- is closed under multiplication",
        closure_witness(&alg, &cal_a, &cal_a, &cal_a),
    ));
    checks.push(Check::new(
        "A+ + A- is associative",
        associator_witness(&alg, &cal_a, &cal_a, &cal_a, exec),
    ));
    checks.push(Check::new("1+ is a two-sided identity", unit_witness(&alg)));

    // (ii) bimodules over A⁺ ⊕ A⁻: both actions stay inside the module
    let mut modules: Vec<(String, Vec<usize>, Vec<usize>)> = Vec::new();
    if n == 4 {
        modules.push(("C + E + C'".into(), cal_a.clone(), alg.indices(&[C, E, Cp])));
    } else {
        modules.push(("C + E".into(), cal_a.clone(), alg.indices(&[C, E])));
        modules.push(("C' + E'".into(), cal_a.clone(), alg.indices(&[Cp, Ep])));
    }
    // (iii) B ⊕ B' over 𝔞, and B, B' over A⁺ ⊕ A⁻
    if n == 4 {
        modules.push(("B + B'".into(), alg.indices(&[Ap, Am, C, Cp, E]), alg.indices(&[B, Bp])));
        for p in [B, Bp] {
            modules.push((p.to_string(), cal_a.clone(), alg.indices(&[p])));
        }
    }
    let mut module_associativity = Vec::new();
    for (name, ring, m) in &modules {
        let ring_name = if ring.len() == cal_a.len() { "(A+ + A-)" } else { "a" };
        checks.push(Check::new(
            &format!("{name} is an {ring_name}-bimodule"),
            closure_witness(&alg, ring, m, m),
        ));
        module_associativity.push(Check::new(
            &format!("{name} satisfies the mixed associativity laws over {ring_name}"),
            module_associativity_witness(&alg, ring, m, exec),
        ));
    }

    // involutions
    checks.extend(involution_checks(&frak_a, "gamma"));
    if n == 4 {
        checks.extend(involution_checks(&alg, "eta"));
        let agree = frak_a
            .blocks
            .iter()
            .all(|b| alg.block(b.piece).map(|x| x.dim) == Some(b.dim))
            && (0..frak_a.dim).all(|i| {
                let p = frak_a.piece_of(i);
                p.involution_sign() == alg.piece_of(alg.block(p).unwrap().offset).involution_sign()
            });
        checks.push(Check::new(
            "eta restricts to gamma",
            (!agree).then(|| "signs differ".to_string()),
        ));
    }

    // (iv) D is spanned by the pairings
    let dd = alg.d_dim;
    let images = alg.pairing_images();
    let total = images.iter().fold(Subspace::zero(dd), |acc, (_, s)| acc.sum(s));
    checks.push(Check::new(
        "D is spanned by the pairings",
        (total.dim() != dd).then(|| format!("pairings span {} of {dd} dimensions", total.dim())),
    ));

    // (v) each pairing image is an ideal of D
    let ideal = images.iter().find_map(|(name, s)| {
        for k in 0..dd {
            for v in s.vectors() {
                if !s.contains(&alg.d_bracket(&unit_vec(dd, k), &v)) {
                    return Some(format!("[D, {name}] is not contained in {name}"));
                }
            }
        }
        None
    });
    checks.push(Check::new("each pairing image is an ideal of D", ideal));

    // (vi) [d,<α,β>] = <dα,β> + <α,dβ>
    let deriv = (0..dd).find_map(|k| {
        let d = unit_vec(dd, k);
        for a in 0..alg.dim {
            let x = alg.basis(a);
            let dx = alg.d_act(&d, &x);
            for b in 0..alg.dim {
                let y = alg.basis(b);
                let l = alg.d_bracket(&d, &alg.pairing(&x, &y));
                let r = add(&alg.pairing(&dx, &y), &alg.pairing(&x, &alg.d_act(&d, &y)));
                if l != r {
                    return Some(format!("d{k} on <{}, {}>", alg.basis_name(a), alg.basis_name(b)));
                }
            }
        }
        None
    });
    checks.push(Check::new("derivation identity for the pairings", deriv));

    // (vii) D preserves every piece and acts by derivations
    let preserve = (0..dd).find_map(|k| {
        let m = &alg.d_action[k];
        for a in 0..alg.dim {
            for b in 0..alg.dim {
                if !m[(a, b)].is_zero() && alg.piece_of(a) != alg.piece_of(b) {
                    return Some(format!("d{k} maps {} into {}", alg.basis_name(b), alg.piece_of(a)));
                }
            }
        }
        None
    });
    checks.push(Check::new("D leaves every piece invariant", preserve));
    let acts = (0..dd).find_map(|k| {
        let d = unit_vec(dd, k);
        for a in 0..alg.dim {
            let x = alg.basis(a);
            let dx = alg.d_act(&d, &x);
            for b in 0..alg.dim {
                let y = alg.basis(b);
                let l = alg.d_act(&d, &alg.mul(&x, &y));
                let r = add(&alg.mul(&dx, &y), &alg.mul(&x, &alg.d_act(&d, &y)));
                if l != r {
                    return Some(format!("d{k} on {}·{}", alg.basis_name(a), alg.basis_name(b)));
                }
            }
        }
        None
    });
    checks.push(Check::new("D acts by derivations", acts));

    let all_a: Vec<usize> = (0..frak_a.dim).collect();
    let assoc = associator_witness(&frak_a, &all_a, &all_a, &all_a, exec);
    Ok(StructureReport {
        n,
        checks,
        module_associativity,
        frak_a_associative: assoc.is_none(),
        frak_a_associator_witness: assoc,
    })
}

/// Symmetric and skew-symmetric parts of `sl_n`.
#[derive(Clone, Debug)]
pub struct SplitA {
    pub symmetric: Vec<Matrix>,
    pub skew: Vec<Matrix>,
}

/// Bases of `𝔤⁺` (traceless symmetric) and `𝔤⁻` (skew).
pub fn split_sl(n: usize) -> Result<SplitA> {
    check_n(n)?;
    let basis = SlBasis::new(n)?;
    let mut symmetric = Vec::new();
    let mut skew = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let e = basis.element(basis.e_index(i, j));
            let f = basis.element(basis.e_index(j, i));
            symmetric.push(e + f);
            skew.push(e - f);
        }
    }
    for i in 0..n - 1 {
        symmetric.push(basis.element(basis.h_index(i)).clone());
    }
    Ok(SplitA { symmetric, skew })
}

/// `(x + xᵗ)/2` and `(x - xᵗ)/2`.
pub fn split_element(x: &Matrix) -> (Matrix, Matrix) {
    let t = x.transpose();
    let h = q(1, 2);
    ((x + &t).scale(&h), (x - &t).scale(&h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coords::{example_sl_2n1, extract_coordinates};

    #[test]
    fn split_dimensions() {
        for n in [3, 4] {
            let s = split_sl(n).unwrap();
            assert_eq!(s.symmetric.len(), n * (n + 1) / 2 - 1);
            assert_eq!(s.skew.len(), n * (n - 1) / 2);
        }
    }

    #[test]
    fn e_times_e_has_no_skew_part() {
        use crate::expr::{build::*, realize, Ctx};
        use crate::sl::ThetaLabel;
        // the map λ₁⊗λ₂ ↦ (λ₁f⁻¹(λ₂))₀ is antisymmetric, so (e₁,e₂)_A is symmetric
        let ctx = Ctx::new(4).unwrap();
        let lam = ThetaLabel::Lam;
        let m = realize(&traceless_product(x(), finv(y())), lam, lam, ThetaLabel::Adj, &ctx).unwrap();
        let swapped = realize(&traceless_product(y(), finv(x())), lam, lam, ThetaLabel::Adj, &ctx).unwrap();
        assert!(!m.is_zero());
        assert_eq!(swapped, -&m);
        let x = extract_coordinates(&example_sl_2n1(4).unwrap()).unwrap();
        let p = x
            .data
            .product(&ProductId::new(Space::E, Space::E, Space::A, Kind::Plain))
            .unwrap();
        let k = x.data.dim(Space::E);
        for i in 0..k {
            for j in 0..k {
                assert_eq!(p.col(i * k + j), p.col(j * k + i));
            }
        }
    }

    #[test]
    fn trivial_data_passes_vacuously() {
        for n in [3, 4] {
            let r = verify_structure(&CoordinateData::trivial(n).unwrap()).unwrap();
            assert!(r.pass(), "{:?}", r.failures());
        }
    }

    #[test]
    fn extracted_data_satisfies_all_checks() {
        for n in [3, 4] {
            let x = extract_coordinates(&example_sl_2n1(n).unwrap()).unwrap();
            let r = verify_structure(&x.data).unwrap();
            assert!(r.pass(), "n={n}: {:?}", r.failures());
            // A⁺ ⊕ A⁻ acts associatively on C + E, C' + E' (n = 3) and on B, B' (n = 4)
            for c in &r.module_associativity {
                if n == 3 || c.name.starts_with("B satisfies") || c.name.starts_with("B' satisfies") {
                    assert!(c.pass, "n={n}: {c:?}");
                }
            }
        }
    }
}
