//! A small expression language for the bilinear matrix formulas that
//! describe module maps `X⊗Y → Z`, such as `xy - yx`, `xs + sxᵗ` or
//! `f⁻¹(λ)u`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Rational};
use crate::module::{identification, Identification, IdentificationName, Model};
use crate::sl::{check_n, ThetaLabel};

#[derive(Clone, PartialEq, Eq)]
pub enum MatExpr {
    /// First argument.
    X,
    /// Second argument.
    Y,
    Transpose(Box<MatExpr>),
    Mul(Box<MatExpr>, Box<MatExpr>),
    Add(Box<MatExpr>, Box<MatExpr>),
    Sub(Box<MatExpr>, Box<MatExpr>),
    Scale(Rational, Box<MatExpr>),
    /// `(tr(e)/n)·I`.
    TraceId(Box<MatExpr>),
    /// `tr(e)` as a `1×1` matrix.
    Trace(Box<MatExpr>),
    /// Kronecker product; with a `1×1` factor this is scalar multiplication.
    Kron(Box<MatExpr>, Box<MatExpr>),
    F(Box<MatExpr>),
    FInv(Box<MatExpr>),
    G(Box<MatExpr>),
    GInv(Box<MatExpr>),
}

pub mod build {
    //! Terse constructors for [`MatExpr`].
    use super::MatExpr;
    use crate::linalg::Rational;

    pub fn x() -> MatExpr {
        MatExpr::X
    }
    pub fn y() -> MatExpr {
        MatExpr::Y
    }
    pub fn t(a: MatExpr) -> MatExpr {
        MatExpr::Transpose(Box::new(a))
    }
    pub fn mul(a: MatExpr, b: MatExpr) -> MatExpr {
        MatExpr::Mul(Box::new(a), Box::new(b))
    }
    pub fn add(a: MatExpr, b: MatExpr) -> MatExpr {
        MatExpr::Add(Box::new(a), Box::new(b))
    }
    pub fn sub(a: MatExpr, b: MatExpr) -> MatExpr {
        MatExpr::Sub(Box::new(a), Box::new(b))
    }
    pub fn scale(c: Rational, a: MatExpr) -> MatExpr {
        MatExpr::Scale(c, Box::new(a))
    }
    pub fn neg(a: MatExpr) -> MatExpr {
        scale(-Rational::one(), a)
    }
    pub fn trace_id(a: MatExpr) -> MatExpr {
        MatExpr::TraceId(Box::new(a))
    }
    pub fn trace(a: MatExpr) -> MatExpr {
        MatExpr::Trace(Box::new(a))
    }
    pub fn kron(a: MatExpr, b: MatExpr) -> MatExpr {
        MatExpr::Kron(Box::new(a), Box::new(b))
    }
    pub fn f(a: MatExpr) -> MatExpr {
        MatExpr::F(Box::new(a))
    }
    pub fn finv(a: MatExpr) -> MatExpr {
        MatExpr::FInv(Box::new(a))
    }
    pub fn g(a: MatExpr) -> MatExpr {
        MatExpr::G(Box::new(a))
    }
    pub fn ginv(a: MatExpr) -> MatExpr {
        MatExpr::GInv(Box::new(a))
    }

    /// `ab - (tr(ab)/n)I`.
    pub fn traceless_product(a: MatExpr, b: MatExpr) -> MatExpr {
        let p = mul(a, b);
        sub(p.clone(), trace_id(p))
    }
    /// `ab + ba - (2/n)tr(ab)I`.
    pub fn circ(a: MatExpr, b: MatExpr) -> MatExpr {
        let p = mul(a.clone(), b.clone());
        sub(add(p.clone(), mul(b, a)), scale(Rational::from_int(2), trace_id(p)))
    }
    /// `ab - ba`.
    pub fn comm(a: MatExpr, b: MatExpr) -> MatExpr {
        sub(mul(a.clone(), b.clone()), mul(b, a))
    }
    /// `(1/n)tr(ab)` as a scalar.
    pub fn pairing(a: MatExpr, b: MatExpr, n: usize) -> MatExpr {
        scale(Rational::new(1, n as i64), trace(mul(a, b)))
    }
    /// `uvᵗ ± vuᵗ` on the two arguments.
    pub fn outer(sign: i64, a: MatExpr, b: MatExpr) -> MatExpr {
        let p = mul(a.clone(), t(b.clone()));
        let q = mul(b, t(a));
        if sign > 0 {
            add(p, q)
        } else {
            sub(p, q)
        }
    }
}

impl MatExpr {
    fn is_compound(&self) -> bool {
        matches!(self, MatExpr::Add(..) | MatExpr::Sub(..) | MatExpr::Scale(..))
    }

    /// Whether the expression uses the identification maps.
    pub fn uses_identifications(&self) -> bool {
        match self {
            MatExpr::X | MatExpr::Y => false,
            MatExpr::F(_) | MatExpr::FInv(_) | MatExpr::G(_) | MatExpr::GInv(_) => true,
            MatExpr::Transpose(a) | MatExpr::Scale(_, a) | MatExpr::TraceId(a) | MatExpr::Trace(a) => {
                a.uses_identifications()
            }
            MatExpr::Mul(a, b) | MatExpr::Add(a, b) | MatExpr::Sub(a, b) | MatExpr::Kron(a, b) => {
                a.uses_identifications() || b.uses_identifications()
            }
        }
    }

    pub fn eval(&self, x: &Matrix, y: &Matrix, ctx: &Ctx) -> Result<Matrix> {
        use crate::linalg::ShapeError;
        Ok(match self {
            MatExpr::X => x.clone(),
            MatExpr::Y => y.clone(),
            MatExpr::Transpose(a) => a.eval(x, y, ctx)?.transpose(),
            MatExpr::Mul(a, b) => a.eval(x, y, ctx)?.try_mul(&b.eval(x, y, ctx)?)?,
            MatExpr::Add(a, b) => a.eval(x, y, ctx)?.try_add(&b.eval(x, y, ctx)?)?,
            MatExpr::Sub(a, b) => a.eval(x, y, ctx)?.try_sub(&b.eval(x, y, ctx)?)?,
            MatExpr::Scale(c, a) => a.eval(x, y, ctx)?.scale(c),
            MatExpr::TraceId(a) => {
                let m = a.eval(x, y, ctx)?;
                if !m.is_square() {
                    return Err(ShapeError::Mismatch {
                        op: "trace",
                        lhs: m.shape(),
                        rhs: m.shape(),
                    }
                    .into());
                }
                let k = m.rows();
                Matrix::identity(k).scale(&(m.trace() / Rational::from(k)))
            }
            MatExpr::Trace(a) => {
                let m = a.eval(x, y, ctx)?;
                Matrix::from_vec(1, 1, vec![m.trace()])
            }
            MatExpr::Kron(a, b) => a.eval(x, y, ctx)?.kron(&b.eval(x, y, ctx)?),
            MatExpr::F(a) => ctx.get(IdentificationName::F)?.apply(&a.eval(x, y, ctx)?),
            MatExpr::FInv(a) => ctx.get(IdentificationName::F)?.apply_inverse(&a.eval(x, y, ctx)?),
            MatExpr::G(a) => ctx.get(IdentificationName::G)?.apply(&a.eval(x, y, ctx)?),
            MatExpr::GInv(a) => ctx.get(IdentificationName::G)?.apply_inverse(&a.eval(x, y, ctx)?),
        })
    }
}

impl fmt::Display for MatExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |e: &MatExpr, f: &mut fmt::Formatter<'_>| {
            if e.is_compound() {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        };
        match self {
            MatExpr::X => write!(f, "x"),
            MatExpr::Y => write!(f, "y"),
            MatExpr::Transpose(a) => {
                if matches!(**a, MatExpr::X | MatExpr::Y) {
                    write!(f, "{a}ᵗ")
                } else {
                    write!(f, "({a})ᵗ")
                }
            }
            MatExpr::Mul(a, b) => {
                wrap(a, f)?;
                wrap(b, f)
            }
            MatExpr::Add(a, b) => write!(f, "{a} + {b}"),
            MatExpr::Sub(a, b) => {
                write!(f, "{a} - ")?;
                wrap(b, f)
            }
            MatExpr::Scale(c, a) => {
                if *c == -Rational::one() {
                    write!(f, "-")?;
                } else {
                    write!(f, "{c}·")?;
                }
                wrap(a, f)
            }
            MatExpr::TraceId(a) => write!(f, "(tr({a})/n)I"),
            MatExpr::Trace(a) => write!(f, "tr({a})"),
            MatExpr::Kron(a, b) => {
                wrap(a, f)?;
                write!(f, "⊗")?;
                wrap(b, f)
            }
            MatExpr::F(a) => write!(f, "f({a})"),
            MatExpr::FInv(a) => write!(f, "f⁻¹({a})"),
            MatExpr::G(a) => write!(f, "g({a})"),
            MatExpr::GInv(a) => write!(f, "g⁻¹({a})"),
        }
    }
}

impl fmt::Debug for MatExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The identification maps available for a given `n`.
#[derive(Clone, Debug)]
pub struct Ctx {
    pub n: usize,
    f: Option<Arc<Identification>>,
    g: Option<Arc<Identification>>,
}

impl Ctx {
    pub fn new(n: usize) -> Result<Self> {
        check_n(n)?;
        let f = Some(Arc::new(identification(n, IdentificationName::F)?));
        let g = if n == 3 {
            Some(Arc::new(identification(n, IdentificationName::G)?))
        } else {
            None
        };
        Ok(Ctx { n, f, g })
    }

    pub fn get(&self, which: IdentificationName) -> Result<&Identification> {
        let slot = match which {
            IdentificationName::F => &self.f,
            IdentificationName::G => &self.g,
        };
        slot.as_deref()
            .ok_or_else(|| Error::Input(format!("identification {which:?} is not defined for n = {}", self.n)))
    }
}

/// Matrix of the bilinear map `X⊗Y → Z` given by `expr`, on the catalog
/// bases (source index `i·dim Y + j`).
pub fn realize(expr: &MatExpr, x: ThetaLabel, y: ThetaLabel, z: ThetaLabel, ctx: &Ctx) -> Result<Matrix> {
    let n = ctx.n;
    let (mx, my, mz) = (Model::of(x), Model::of(y), Model::of(z));
    let (dx, dy, dz) = (mx.dim(n), my.dim(n), mz.dim(n));
    let xs: Vec<Matrix> = (0..dx).map(|k| mx.basis_matrix(n, k)).collect();
    let ys: Vec<Matrix> = (0..dy).map(|k| my.basis_matrix(n, k)).collect();
    let mut out = Matrix::zeros(dz, dx * dy);
    for (i, xm) in xs.iter().enumerate() {
        for (j, ym) in ys.iter().enumerate() {
            let v = expr.eval(xm, ym, ctx)?;
            let c = mz.from_matrix(n, &v).ok_or_else(|| {
                Error::InvalidData(format!("{expr} does not land in {z} (value shape {:?})", v.shape()))
            })?;
            for (k, ck) in c.into_iter().enumerate() {
                if !ck.is_zero() {
                    out[(k, i * dy + j)] = ck;
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::build::*;
    use super::*;

    #[test]
    fn display_is_readable() {
        assert_eq!(comm(x(), y()).to_string(), "xy - yx");
        assert_eq!(add(mul(x(), y()), mul(y(), t(x()))).to_string(), "xy + yxᵗ");
        assert_eq!(mul(y(), finv(x())).to_string(), "yf⁻¹(x)");
    }

    #[test]
    fn antisymmetric_formula_vanishes_on_diagonal() {
        let ctx = Ctx::new(4).unwrap();
        let e = outer(-1, x(), y());
        let u = Matrix::column(vec![
            Rational::from_int(1),
            Rational::from_int(2),
            Rational::zero(),
            q3(),
        ]);
        assert!(e.eval(&u, &u, &ctx).unwrap().is_zero());
    }

    fn q3() -> Rational {
        crate::linalg::q(-1, 3)
    }

    #[test]
    fn realize_shapes() {
        let ctx = Ctx::new(4).unwrap();
        let m = realize(
            &pairing(x(), y(), 4),
            ThetaLabel::Adj,
            ThetaLabel::Adj,
            ThetaLabel::T,
            &ctx,
        )
        .unwrap();
        assert_eq!(m.shape(), (1, 225));
        assert!(!m.is_zero());
        let ctx3 = Ctx::new(3).unwrap();
        let m = realize(&mul(x(), y()), ThetaLabel::S, ThetaLabel::Lamp, ThetaLabel::Adj, &ctx3).unwrap();
        assert_eq!(m.shape(), (8, 18));
        // xy on two symmetric matrices is not symmetric in general
        assert!(realize(&mul(x(), y()), ThetaLabel::S, ThetaLabel::S, ThetaLabel::S, &ctx).is_err());
        assert!(Ctx::new(4).unwrap().get(IdentificationName::G).is_err());
    }
}
