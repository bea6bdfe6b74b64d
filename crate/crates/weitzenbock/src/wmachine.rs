//! The space `𝔚(V_λ)` of Weitzenböck formulas in the basis of projections
//! `pr_ε`, and the operators acting on it.
//!
//! A [`WFormula`] with coefficients `f_ε` stands for `F = Σ f_ε pr_ε`, whose
//! differential operator is `F(∇²) = −Σ f_ε T*_ε T_ε`. Operators are stored
//! with row ε holding the image of `pr_ε`, so applying an operator to a
//! formula is a row vector times the matrix.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::liecat::{EpsLabel, Family};
use crate::ratkernel::{
    int, kernel_basis, rank, rat, weighted_inner, Field, Rat, RatFun1, RatMatrix,
};
use crate::reptheory::{
    casimir, casimir_f, conformal_f, ray, relevant_weights, weyl_dim_f, HighestWeight,
    RelevantSet,
};
use crate::{Error, Result};

pub type Ctx = Arc<RelevantSet>;

pub fn context(lam: &HighestWeight) -> Result<Ctx> {
    Ok(Arc::new(relevant_weights(lam)?))
}

fn same_ctx(a: &Ctx, b: &Ctx) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WFormula {
    pub ctx: Ctx,
    pub coeffs: Vec<Rat>,
}

impl WFormula {
    pub fn new(ctx: &Ctx, coeffs: Vec<Rat>) -> Result<Self> {
        if coeffs.len() != ctx.len() {
            return Err(Error::DimensionMismatch);
        }
        Ok(WFormula {
            ctx: ctx.clone(),
            coeffs,
        })
    }

    pub fn unit(ctx: &Ctx) -> Self {
        WFormula {
            ctx: ctx.clone(),
            coeffs: vec![Rat::one(); ctx.len()],
        }
    }

    pub fn zero(ctx: &Ctx) -> Self {
        WFormula {
            ctx: ctx.clone(),
            coeffs: vec![Rat::zero(); ctx.len()],
        }
    }

    pub fn pr(ctx: &Ctx, i: usize) -> Self {
        let mut f = WFormula::zero(ctx);
        f.coeffs[i] = Rat::one();
        f
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|x| x.is_zero())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        WFormula {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    fn zip(&self, o: &WFormula, f: impl Fn(&Rat, &Rat) -> Rat) -> Result<Self> {
        if !same_ctx(&self.ctx, &o.ctx) {
            return Err(Error::ContextMismatch);
        }
        Ok(WFormula {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, o: &WFormula) -> Result<Self> {
        self.zip(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &WFormula) -> Result<Self> {
        self.zip(o, |a, b| a - b)
    }

    /// Product in the commutative algebra `𝔚(V_λ)`; pointwise on coefficients.
    pub fn mul(&self, o: &WFormula) -> Result<Self> {
        self.zip(o, |a, b| a * b)
    }

    pub fn axpy(&self, c: &Rat, o: &WFormula) -> Result<Self> {
        self.zip(o, |a, b| a + c * b)
    }
}

pub fn wf_inner(f: &WFormula, g: &WFormula) -> Result<Rat> {
    if !same_ctx(&f.ctx, &g.ctx) {
        return Err(Error::ContextMismatch);
    }
    Ok(weighted_inner(&f.coeffs, &g.coeffs, &f.ctx.dratios()))
}

pub fn wf_trace(f: &WFormula) -> Rat {
    weighted_inner(&f.coeffs, &vec![Rat::one(); f.ctx.len()], &f.ctx.dratios())
}

pub fn b_operator(ctx: &Ctx) -> WFormula {
    WFormula {
        ctx: ctx.clone(),
        coeffs: ctx.b(),
    }
}

pub fn b_center(ctx: &Ctx) -> Result<WFormula> {
    let coeffs = ctx
        .entries
        .iter()
        .map(|e| e.b_center.clone().ok_or(Error::BadIdeal))
        .collect::<Result<Vec<_>>>()?;
    Ok(WFormula {
        ctx: ctx.clone(),
        coeffs,
    })
}

fn horner(p: &[Rat], x: &Rat) -> Rat {
    p.iter().rev().fold(Rat::zero(), |acc, c| acc * x + c)
}

/// `p(B)` for a polynomial given lowest degree first.
pub fn wf_poly(p: &[Rat], ctx: &Ctx) -> WFormula {
    WFormula {
        ctx: ctx.clone(),
        coeffs: ctx.entries.iter().map(|e| horner(p, &e.b)).collect(),
    }
}

/// Two coefficient rows are equal up to one nonzero rational factor.
pub fn proportional(a: &[Rat], b: &[Rat]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let Some(i) = a.iter().position(|x| !x.is_zero()) else {
        return b.iter().all(|x| x.is_zero());
    };
    if b[i].is_zero() {
        return false;
    }
    let c = &b[i] / &a[i];
    a.iter().zip(b).all(|(x, y)| &(x * &c) == y)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpMatrix {
    pub ctx: Ctx,
    pub m: RatMatrix,
}

impl OpMatrix {
    pub fn apply(&self, f: &WFormula) -> Result<WFormula> {
        if !same_ctx(&self.ctx, &f.ctx) {
            return Err(Error::ContextMismatch);
        }
        Ok(WFormula {
            ctx: f.ctx.clone(),
            coeffs: self.m.vec_mul(&f.coeffs)?,
        })
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &OpMatrix) -> Result<OpMatrix> {
        if !same_ctx(&self.ctx, &other.ctx) {
            return Err(Error::ContextMismatch);
        }
        Ok(OpMatrix {
            ctx: self.ctx.clone(),
            m: other.m.mul(&self.m)?,
        })
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rat {
        self.m.get(i, j)
    }
}

fn konst<S: Field>(x: i64) -> S {
    S::from_rat(&int(x))
}

/// Coefficient of the Bochner identity on one weight, as a polynomial in
/// the fundamental coordinates of λ.
fn beta_f<S: Field>(family: Family, fund: &[S], label: EpsLabel) -> Option<S> {
    let k = konst::<S>;
    match family {
        Family::G2 => {
            let (a, b) = (fund[0].clone(), fund[1].clone());
            let a2 = a.clone() + k(2);
            let p3 = a.clone() + k(3) * b.clone() + k(3);
            let p5 = a.clone() + k(3) * b.clone() + k(5);
            let q4 = k(2) * a.clone() + k(3) * b.clone() + k(4);
            let q6 = k(2) * a.clone() + k(3) * b.clone() + k(6);
            Some(match label {
                EpsLabel::Plus(1) => a * p3 * q4,
                EpsLabel::Minus(1) => -(a2 * p5 * q6),
                EpsLabel::Plus(2) => -(a2 * p3 * q4),
                EpsLabel::Minus(2) => a * p5 * q6,
                EpsLabel::Plus(3) => -(a * p5 * q4),
                EpsLabel::Minus(3) => a2 * p3 * q6,
                EpsLabel::Zero => {
                    k(6) * (a.clone() * a.clone()
                        + k(3) * b.clone() * b.clone()
                        + k(3) * a.clone() * b.clone()
                        + k(5) * a
                        + k(9) * b
                        + k(6))
                }
                _ => return None,
            })
        }
        Family::Spin7 => {
            let (a, b, c) = (fund[0].clone(), fund[1].clone(), fund[2].clone());
            let c2 = c.clone() + k(2);
            let u2 = k(2) * b.clone() + c.clone() + k(2);
            let u4 = k(2) * b.clone() + c.clone() + k(4);
            let w4 = k(2) * a.clone() + k(2) * b.clone() + c.clone() + k(4);
            let w6 = k(2) * a + k(2) * b + c.clone() + k(6);
            Some(match label {
                EpsLabel::Plus(1) => c * u2 * w4,
                EpsLabel::Minus(1) => -(c2 * u4 * w6),
                EpsLabel::Plus(2) => -(c2 * u2 * w4),
                EpsLabel::Minus(2) => c * u4 * w6,
                EpsLabel::Plus(3) => -(c * u4 * w4),
                EpsLabel::Minus(3) => c2 * u2 * w6,
                EpsLabel::Plus(4) => c2 * u4 * w4,
                EpsLabel::Minus(4) => -(c * u2 * w6),
                _ => return None,
            })
        }
        _ => None,
    }
}

fn bochner_for(ctx: &Ctx, family: Family) -> Result<WFormula> {
    if ctx.alg.family != family {
        return Err(Error::WrongFamily);
    }
    let fund: Vec<Rat> = ctx.lambda.fund.iter().map(|&x| int(x)).collect();
    let coeffs = ctx
        .entries
        .iter()
        .map(|e| beta_f(family, &fund, e.label).ok_or(Error::WrongFamily))
        .collect::<Result<Vec<_>>>()?;
    WFormula::new(ctx, coeffs)
}

pub fn bochner_g2(ctx: &Ctx) -> Result<WFormula> {
    bochner_for(ctx, Family::G2)
}

pub fn bochner_spin7(ctx: &Ctx) -> Result<WFormula> {
    bochner_for(ctx, Family::Spin7)
}

/// The Bochner formula for G2 and Spin(7), `None` for the other families.
pub fn bochner(ctx: &Ctx) -> Result<Option<WFormula>> {
    match ctx.alg.family {
        f @ (Family::G2 | Family::Spin7) => bochner_for(ctx, f).map(Some),
        _ => Ok(None),
    }
}

/// The Bochner vector when it does not vanish on the relevant weights.
fn active_beta(ctx: &Ctx) -> Result<Option<WFormula>> {
    Ok(bochner(ctx)?.filter(|b| !b.is_zero()))
}

struct Ingredients<S> {
    b: Vec<S>,
    d: Vec<S>,
    beta: Option<(Vec<S>, S)>,
}

fn dim_ratio<S: Field>(ctx: &RelevantSet, lam: &[S], dl_inv: &S, eps: &[Rat]) -> S {
    let mu: Vec<S> = lam
        .iter()
        .zip(eps)
        .map(|(x, y)| x.clone() + S::from_rat(y))
        .collect();
    weyl_dim_f(&ctx.alg, &mu) * dl_inv.clone()
}

/// Conformal weights, dimension ratios and the Bochner vector at `lam`.
/// With `generic` set the norm of β runs over every weight of T, which is
/// the right sum once `lam` is moved off the walls of the Weyl chamber.
fn ingredients<S: Field>(
    ctx: &RelevantSet,
    lam: &[S],
    with_beta: bool,
    generic: bool,
) -> Result<Ingredients<S>> {
    let alg = &*ctx.alg;
    let dl_inv = weyl_dim_f(alg, lam)
        .checked_inv()
        .ok_or_else(|| Error::consistency("dim V_λ nonzero"))?;
    let b = ctx.entries.iter().map(|e| conformal_f(alg, lam, &e.eps)).collect();
    let d: Vec<S> = ctx
        .entries
        .iter()
        .map(|e| dim_ratio(ctx, lam, &dl_inv, &e.eps))
        .collect();
    let beta = if with_beta {
        let fund = alg.to_fundamental_f(lam);
        let coeff = |l: EpsLabel| beta_f(alg.family, &fund, l).ok_or(Error::WrongFamily);
        let v = ctx
            .entries
            .iter()
            .map(|e| coeff(e.label))
            .collect::<Result<Vec<S>>>()?;
        let mut norm = S::zero();
        if generic {
            for (l, eps) in &alg.t_weights {
                let x = coeff(*l)?;
                norm = norm + x.clone() * x * dim_ratio(ctx, lam, &dl_inv, eps);
            }
        } else {
            for (x, w) in v.iter().zip(&d) {
                norm = norm + x.clone() * x.clone() * w.clone();
            }
        }
        Some((v, norm))
    } else {
        None
    };
    Ok(Ingredients { b, d, beta })
}

/// Numerator and denominator of one twist coefficient.
fn tau_entry<S: Field>(ctx: &RelevantSet, ing: &Ingredients<S>, i: usize, j: usize) -> Result<(S, S)> {
    let k = konst::<S>;
    let delta = if i == j { S::one() } else { S::zero() };
    let (bi, bj, di) = (ing.b[i].clone(), ing.b[j].clone(), ing.d[i].clone());
    let bb = |c: i64| -> Result<S> {
        match &ing.beta {
            Some((v, norm)) => (k(c) * v[i].clone() * v[j].clone())
                .checked_div(norm)
                .ok_or_else(|| Error::consistency("Bochner vector has nonzero norm")),
            None => Ok(S::zero()),
        }
    };
    Ok(match ctx.alg.family {
        Family::SoOdd(_) | Family::SoEven(_) => {
            let n = ctx.alg.dim_t as i64;
            (-(delta - di), bi + bj + k(n - 1))
        }
        Family::G2 => (
            -(delta - k(2) * (S::one() - bb(3)?) * di),
            k(3) * bi + k(3) * bj + k(13),
        ),
        Family::Spin7 => (
            -(delta - (S::from_rat(&rat(3, 2)) - bb(4)?) * di),
            k(2) * bi + k(2) * bj + k(11),
        ),
        Family::U(n) => {
            let hi = ctx.entries[i].is_holomorphic();
            let hj = ctx.entries[j].is_holomorphic();
            if hi == hj {
                (S::zero(), S::one())
            } else {
                (di, bi + bj + k(n as i64))
            }
        }
    })
}

fn singularity_expected(family: Family, i: usize, j: usize) -> bool {
    match family {
        Family::SoOdd(_) | Family::SoEven(_) => i == j,
        Family::U(_) => false,
        Family::G2 | Family::Spin7 => true,
    }
}

/// Twist `τ` in the `pr_ε` basis. Coefficients whose closed-form
/// denominator vanishes are recomputed as rational functions along
/// `λ + tρ` and evaluated at `t = 0`.
pub fn twist_matrix(ctx: &Ctx) -> Result<OpMatrix> {
    let n = ctx.len();
    let alg = &*ctx.alg;
    let with_beta = active_beta(ctx)?.is_some();
    let ing = ingredients::<Rat>(ctx, &ctx.lambda.vec, with_beta, false)?;
    let mut m = RatMatrix::zeros(n, n);
    let mut singular = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let (num, den) = tau_entry(ctx, &ing, i, j)?;
            match num.checked_div(&den) {
                Some(v) => m.set(i, j, v),
                None => {
                    if !singularity_expected(alg.family, i, j) {
                        return Err(Error::UnexpectedSingularity);
                    }
                    singular.push((i, j));
                }
            }
        }
    }
    if !singular.is_empty() {
        let lam_t = ray::<RatFun1>(alg, &ctx.lambda.vec, &RatFun1::t());
        let ing_t = ingredients::<RatFun1>(ctx, &lam_t, with_beta, true)?;
        let mut from_column = Vec::new();
        for (i, j) in singular {
            let (num, den) = tau_entry(ctx, &ing_t, i, j)?;
            match num.checked_div(&den) {
                Some(f) => m.set(i, j, f.eval_at_zero()?),
                None if i == j && num.is_zero() => from_column.push(j),
                None => return Err(Error::PoleAtZero),
            }
        }
        // A diagonal entry that is 0/0 along the whole ray is fixed by τ(1) = 1.
        for j in from_column {
            let rest = (0..n)
                .filter(|&i| i != j)
                .fold(Rat::zero(), |acc, i| acc + m.get(i, j));
            m.set(j, j, Rat::one() - rest);
        }
    }
    let tau = OpMatrix {
        ctx: ctx.clone(),
        m,
    };
    check_twist(&tau)?;
    Ok(tau)
}

fn check_twist(tau: &OpMatrix) -> Result<()> {
    let n = tau.ctx.len();
    let d = tau.ctx.dratios();
    for j in 0..n {
        let s = (0..n).fold(Rat::zero(), |acc, i| acc + tau.entry(i, j));
        if !s.is_one() {
            return Err(Error::consistency("twist column sums equal 1"));
        }
    }
    for i in 0..n {
        for j in 0..n {
            if tau.entry(i, j) * &d[j] != tau.entry(j, i) * &d[i] {
                return Err(Error::consistency("twist weighted symmetry"));
            }
        }
    }
    if tau.m.mul(&tau.m)? != RatMatrix::identity(n) {
        return Err(Error::consistency("twist is an involution"));
    }
    Ok(())
}

/// `F ⊗ F: G ↦ ⟨F, G⟩ F` in matrix form.
fn outer(ctx: &Ctx, f: &[Rat]) -> RatMatrix {
    let n = ctx.len();
    let d = ctx.dratios();
    let mut m = RatMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m.set(i, j, &f[i] * &d[i] * &f[j]);
        }
    }
    m
}

pub fn k_matrix(ctx: &Ctx, tau: &OpMatrix) -> Result<OpMatrix> {
    if !same_ctx(ctx, &tau.ctx) {
        return Err(Error::ContextMismatch);
    }
    let n = ctx.len();
    let id = RatMatrix::identity(n);
    let ones = outer(ctx, &vec![Rat::one(); n]);
    let beta_term = |ctx: &Ctx| -> Result<Option<RatMatrix>> {
        Ok(match active_beta(ctx)? {
            Some(b) => {
                let norm = wf_inner(&b, &b)?;
                Some(outer(ctx, &b.coeffs).scale(&(int(2) / norm)))
            }
            None => None,
        })
    };
    let m = match ctx.alg.family {
        Family::SoOdd(_) | Family::SoEven(_) => tau.m.sub(&ones)?,
        Family::G2 => {
            let mut m = tau
                .m
                .scale(&rat(1, 3))
                .add(&id.scale(&rat(1, 3)))?
                .sub(&ones.scale(&rat(2, 3)))?;
            if let Some(bt) = beta_term(ctx)? {
                m = m.sub(&bt)?;
            }
            m
        }
        Family::Spin7 => {
            let mut m = tau
                .m
                .scale(&rat(1, 2))
                .add(&id.scale(&rat(1, 4)))?
                .sub(&ones.scale(&rat(3, 4)))?;
            if let Some(bt) = beta_term(ctx)? {
                m = m.sub(&bt)?;
            }
            m
        }
        Family::U(_) => {
            let mut m = RatMatrix::zeros(n, n);
            for (i, e) in ctx.entries.iter().enumerate() {
                for (j, f) in ctx.entries.iter().enumerate() {
                    if e.is_holomorphic() == f.is_holomorphic() {
                        m.set(i, j, -e.dratio.clone());
                    }
                }
            }
            m
        }
    };
    Ok(OpMatrix {
        ctx: ctx.clone(),
        m,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Eigenspace {
    pub eigenvalue: Rat,
    pub class: &'static str,
    pub basis: Vec<WFormula>,
}

/// Left eigenvectors of an operator matrix: `F` with `F·M = κ F`.
fn eigenvectors(op: &OpMatrix, kappa: &Rat) -> Result<Vec<WFormula>> {
    let n = op.ctx.len();
    let shifted = op.m.sub(&RatMatrix::identity(n).scale(kappa))?;
    kernel_basis(&shifted.transpose())
        .into_iter()
        .map(|v| WFormula::new(&op.ctx, v))
        .collect()
}

pub fn k_eigenspaces(ctx: &Ctx, k: &OpMatrix) -> Result<Vec<Eigenspace>> {
    let mut out = Vec::new();
    let mut total = 0;
    for class in &ctx.alg.k_table {
        let basis = eigenvectors(k, &class.kappa)?;
        total += basis.len();
        out.push(Eigenspace {
            eigenvalue: class.kappa.clone(),
            class: class.name,
            basis,
        });
    }
    if total != ctx.len() {
        return Err(Error::SpectrumMismatch);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisVector {
    pub formula: WFormula,
    /// Degree as a polynomial in `B`; absent for eigenspace completions.
    pub degree: Option<usize>,
    pub tau_eig: Option<i8>,
    pub k_eig: Option<Rat>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisReport {
    pub vectors: Vec<BasisVector>,
    pub complete: bool,
    pub spin_gap: bool,
}

fn rank_of(vs: &[&WFormula]) -> usize {
    if vs.is_empty() {
        return 0;
    }
    let rows = vs.iter().map(|f| f.coeffs.clone()).collect();
    rank(&RatMatrix::from_rows(rows).expect("rows share one context"))
}

fn tag(
    formula: WFormula,
    degree: Option<usize>,
    tau: &OpMatrix,
    k: &OpMatrix,
) -> Result<BasisVector> {
    let tf = tau.apply(&formula)?;
    let tau_eig = if tf == formula {
        Some(1)
    } else if tf == formula.scale(&int(-1)) {
        Some(-1)
    } else {
        None
    };
    let kf = k.apply(&formula)?;
    let k_eig = formula
        .ctx
        .alg
        .k_table
        .iter()
        .map(|c| c.kappa.clone())
        .find(|kappa| kf == formula.scale(kappa));
    Ok(BasisVector {
        formula,
        degree,
        tau_eig,
        k_eig,
    })
}

struct BasisBuilder<'a> {
    tau: &'a OpMatrix,
    k: &'a OpMatrix,
    vectors: Vec<BasisVector>,
}

impl<'a> BasisBuilder<'a> {
    /// Adds `f` if it enlarges the span; reports whether it did.
    fn push(&mut self, f: WFormula, degree: Option<usize>) -> Result<bool> {
        let mut all: Vec<&WFormula> = self.vectors.iter().map(|v| &v.formula).collect();
        let before = all.len();
        all.push(&f);
        if rank_of(&all) == before {
            return Ok(false);
        }
        let v = tag(f, degree, self.tau, self.k)?;
        self.vectors.push(v);
        Ok(true)
    }

    /// Fills the remaining directions from K-eigenspaces, orthogonalizing
    /// against vectors already known to share the eigenvalue.
    fn complete_from_eigenspaces(&mut self, spaces: &[Eigenspace]) -> Result<()> {
        for space in spaces {
            for cand in &space.basis {
                let mut v = cand.clone();
                for w in &self.vectors {
                    if w.k_eig.as_ref() != Some(&space.eigenvalue) {
                        continue;
                    }
                    let c = wf_inner(&v, &w.formula)? / wf_inner(&w.formula, &w.formula)?;
                    v = v.axpy(&-c, &w.formula)?;
                }
                if !v.is_zero() {
                    self.push(v, None)?;
                }
            }
        }
        Ok(())
    }
}

/// Basis of `𝔚(V_λ)` built by the recursion procedure, completed by
/// K-eigenvectors where polynomials in B of low degree do not suffice.
pub fn recursion_basis(ctx: &Ctx, tau: &OpMatrix, k: &OpMatrix) -> Result<BasisReport> {
    let n = ctx.len();
    let mut bb = BasisBuilder {
        tau,
        k,
        vectors: Vec::new(),
    };
    let b = b_operator(ctx);
    let cas = ctx.casimir();
    let mut spin_gap = false;
    match ctx.alg.family {
        Family::SoOdd(_) | Family::SoEven(_) => {
            let dim_t = int(ctx.alg.dim_t as i64);
            bb.push(WFormula::unit(ctx), Some(0))?;
            let mut cur = b.clone();
            let mut parity = -1;
            let mut degree = 1;
            while bb.vectors.len() < n && bb.push(cur.clone(), Some(degree))? {
                let bf = b.mul(&cur)?;
                cur = if parity == -1 {
                    let shift = (&dim_t - int(2)) / int(2);
                    let proj = wf_trace(&bf) / &dim_t;
                    bf.axpy(&shift, &cur)?.axpy(&-proj, &WFormula::unit(ctx))?
                } else {
                    bf.axpy(&(&dim_t / int(2)), &cur)?
                };
                parity = -parity;
                degree += 1;
            }
            spin_gap = matches!(ctx.alg.family, Family::SoEven(_)) && ctx.degenerate;
        }
        Family::G2 | Family::Spin7 => {
            for (deg, p) in explicit_polys(ctx, &cas).into_iter().enumerate() {
                if let Some(p) = p {
                    bb.push(wf_poly(&p, ctx), Some(deg))?;
                }
            }
            let spaces = k_eigenspaces(ctx, k)?;
            bb.complete_from_eigenspaces(&spaces)?;
        }
        Family::U(_) => {
            for i in (0..n).filter(|&i| ctx.entries[i].is_holomorphic()) {
                let pr = WFormula::pr(ctx, i);
                let tp = tau.apply(&pr)?;
                bb.push(pr.sub(&tp)?, None)?;
                bb.push(pr.add(&tp)?, None)?;
            }
        }
    }
    let complete = bb.vectors.len() == n;
    if !complete && !spin_gap {
        return Err(Error::consistency("recursion basis is complete"));
    }
    Ok(BasisReport {
        vectors: bb.vectors,
        complete,
        spin_gap,
    })
}

/// `p₀..p₃` for G2 and Spin(7) as coefficient lists in `B`.
fn explicit_polys(ctx: &Ctx, cas: &Rat) -> Vec<Option<Vec<Rat>>> {
    let one = Rat::one();
    match ctx.alg.family {
        Family::G2 => vec![
            Some(vec![one.clone()]),
            Some(vec![Rat::zero(), one.clone()]),
            Some(vec![cas * rat(2, 7), int(2), one.clone()]),
            Some(vec![
                cas * rat(2, 3),
                cas * rat(1, 2) + int(4),
                rat(13, 3),
                one,
            ]),
        ],
        Family::Spin7 => {
            let cas4 = ctx.higher_casimir(4);
            let p3 = if cas.is_zero() {
                None
            } else {
                Some(vec![
                    cas * rat(3, 4),
                    (cas4 + cas * rat(55, 2)) / (cas * int(2)),
                    rat(11, 2),
                    one.clone(),
                ])
            };
            vec![
                Some(vec![one.clone()]),
                Some(vec![Rat::zero(), one.clone()]),
                Some(vec![cas * rat(1, 4), rat(5, 2), one]),
                p3,
            ]
        }
        _ => Vec::new(),
    }
}

/// The explicit cubic `p₃(B)` for G2 or Spin(7).
pub fn p3(ctx: &Ctx) -> Result<WFormula> {
    match ctx.alg.family {
        Family::G2 | Family::Spin7 => {}
        _ => return Err(Error::WrongFamily),
    }
    let polys = explicit_polys(ctx, &ctx.casimir());
    let p = polys[3]
        .clone()
        .ok_or_else(|| Error::consistency("Casimir of V_λ nonzero"))?;
    Ok(wf_poly(&p, ctx))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QLambda {
    /// Coefficients of `Cas^{[4]}`, `(Cas^{Λ²})²`, `Cas^{Λ²}` and `1`.
    pub q_coeffs: [Rat; 4],
    pub delta_q: WFormula,
}

/// The central element `Q_λ` of degree four for Spin(7) and its image
/// `ΔQ_λ = Σ χ_{λ+ε}(Q_λ) pr_ε`.
pub fn spin7_qlambda(ctx: &Ctx) -> Result<QLambda> {
    if ctx.alg.family != Family::Spin7 {
        return Err(Error::WrongFamily);
    }
    let c = ctx.casimir();
    let c4 = int(32) * ctx.higher_casimir(4);
    let q = [
        int(2) * &c,
        int(-160) * &c,
        int(320) * &c * &c - int(1184) * &c - int(4) * &c4,
        int(-160) * &c * &c * &c + int(2) * &c * &c4 + int(1712) * &c * &c
            - int(9408) * &c
            - int(21) * &c4,
    ];
    let mut coeffs = Vec::with_capacity(ctx.len());
    for e in &ctx.entries {
        let up = HighestWeight::new(&ctx.alg, &e.mu_fund)?;
        let h4 = int(32) * relevant_weights(&up)?.higher_casimir(4);
        let ce = casimir(&ctx.alg, &e.mu);
        coeffs.push(&q[0] * h4 + &q[1] * &ce * &ce + &q[2] * &ce + &q[3]);
    }
    let delta_q = WFormula::new(ctx, coeffs)?;
    let b = b_operator(ctx);
    for p in [WFormula::unit(ctx), b.clone(), b.mul(&b)?] {
        if !wf_inner(&delta_q, &p)?.is_zero() {
            return Err(Error::consistency("ΔQ_λ orthogonal to 1, B, B²"));
        }
    }
    Ok(QLambda { q_coeffs: q, delta_q })
}

/// Projection of `f` onto the orthogonal complement of `g`.
pub fn project_off(f: &WFormula, g: &WFormula) -> Result<WFormula> {
    let gg = wf_inner(g, g)?;
    if gg.is_zero() {
        return Ok(f.clone());
    }
    f.axpy(&-(wf_inner(f, g)? / gg), g)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub pure_curvature: bool,
    pub antisym_part: WFormula,
    pub sym_part: WFormula,
}

pub fn classify(f: &WFormula, tau: &OpMatrix) -> Result<Classification> {
    let tf = tau.apply(f)?;
    let half = rat(1, 2);
    Ok(Classification {
        pure_curvature: tf == f.scale(&int(-1)),
        antisym_part: f.sub(&tf)?.scale(&half),
        sym_part: f.add(&tf)?.scale(&half),
    })
}

/// Coefficients of `T*_ε T_ε` in `q(R)` and in the Laplacian `Δ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurvatureReport {
    pub q_r: Vec<Rat>,
    pub laplacian: Vec<Rat>,
}

pub fn curvature_report(ctx: &Ctx) -> CurvatureReport {
    CurvatureReport {
        q_r: ctx.entries.iter().map(|e| -e.b.clone()).collect(),
        laplacian: ctx.entries.iter().map(|e| Rat::one() - &e.b).collect(),
    }
}

/// `F − (F[i]/G[i])·G`, clearing coefficient `i` of `F`.
pub fn eliminate(f: &[Rat], g: &[Rat], i: usize) -> Result<Vec<Rat>> {
    if f.len() != g.len() || i >= f.len() {
        return Err(Error::DimensionMismatch);
    }
    if g[i].is_zero() {
        return Err(Error::ZeroPivot);
    }
    let c = &f[i] / &g[i];
    Ok(f.iter().zip(g).map(|(x, y)| x - &c * y).collect())
}

/// Everything the machine derives for one highest weight.
#[derive(Clone, Debug)]
pub struct Machine {
    pub ctx: Ctx,
    pub tau: OpMatrix,
    pub k: OpMatrix,
    pub spaces: Vec<Eigenspace>,
    pub basis: BasisReport,
    pub bochner: Option<WFormula>,
}

impl Machine {
    pub fn new(lam: &HighestWeight) -> Result<Machine> {
        let ctx = context(lam)?;
        let tau = twist_matrix(&ctx)?;
        let k = k_matrix(&ctx, &tau)?;
        check_recursion_identity(&ctx, &tau, &k)?;
        let spaces = k_eigenspaces(&ctx, &k)?;
        let basis = recursion_basis(&ctx, &tau, &k)?;
        let bochner = bochner(&ctx)?;
        Ok(Machine {
            ctx,
            tau,
            k,
            spaces,
            basis,
            bochner,
        })
    }
}

/// `K + B + τBτ = Cas^{Λ²}_T · Id` as matrices.
pub fn check_recursion_identity(ctx: &Ctx, tau: &OpMatrix, k: &OpMatrix) -> Result<()> {
    let n = ctx.len();
    let bm = RatMatrix::diagonal(&ctx.b());
    let tbt = tau.m.mul(&bm)?.mul(&tau.m)?;
    let lhs = k.m.add(&bm)?.add(&tbt)?;
    let cas_t = casimir_f::<Rat>(&ctx.alg, &ctx.alg.eps_max);
    if lhs != RatMatrix::identity(n).scale(&cas_t) {
        return Err(Error::consistency("K + B + τBτ = Cas_T·Id"));
    }
    Ok(())
}
