//! Dominance, relevant weights, dimensions, Casimir eigenvalues and
//! conformal weights.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::liecat::{Algebra, EpsLabel, Family, WeightVec};
use crate::ratkernel::{int, rat, Field, Rat};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdealId {
    Full,
    Center,
    Su,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HighestWeight {
    pub alg: Arc<Algebra>,
    pub fund: Vec<i64>,
    pub vec: WeightVec,
}

impl HighestWeight {
    /// `λ = Σ fund[k]·ω_k`; fails unless dominant.
    pub fn new(alg: &Arc<Algebra>, fund: &[i64]) -> Result<Self> {
        if fund.len() != alg.rank {
            return Err(Error::DimensionMismatch);
        }
        let coeffs: Vec<Rat> = fund.iter().map(|&c| int(c)).collect();
        let vec = alg.from_fundamental(&coeffs)?;
        if !is_dominant(alg, &vec)? {
            return Err(Error::NotDominant);
        }
        Ok(HighestWeight {
            alg: alg.clone(),
            fund: fund.to_vec(),
            vec,
        })
    }

    pub fn dim(&self) -> Result<BigInt> {
        weyl_dim(&self.alg, &self.vec)
    }
}

fn to_i64(r: &Rat) -> Result<i64> {
    if !r.is_integer() {
        return Err(Error::NotInLattice);
    }
    r.to_integer().to_i64().ok_or(Error::TooLarge)
}

pub fn fundamental_i64(alg: &Algebra, v: &[Rat]) -> Result<Vec<i64>> {
    alg.to_fundamental(v)?.iter().map(to_i64).collect()
}

pub fn is_dominant(alg: &Algebra, mu: &[Rat]) -> Result<bool> {
    let c = alg.to_fundamental(mu)?;
    let signed = alg.signed_coefficient();
    Ok(c
        .iter()
        .enumerate()
        .all(|(i, x)| Some(i) == signed || !x.is_negative()))
}

fn vadd<S: Field>(a: &[S], b: &[S]) -> Vec<S> {
    a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect()
}

fn lift<S: Field>(v: &[Rat]) -> Vec<S> {
    v.iter().map(S::from_rat).collect()
}

fn two_rho(alg: &Algebra) -> WeightVec {
    alg.rho.iter().map(|x| x * int(2)).collect()
}

/// `⟨ε_max+2ρ, ε_max⟩`, the normalizing denominator.
fn norm_den(alg: &Algebra) -> Rat {
    alg.inner(&vadd(&alg.eps_max, &two_rho(alg)), &alg.eps_max)
        .expect("catalog vectors have matching rank")
}

/// Weyl dimension formula over any scalar field.
pub fn weyl_dim_f<S: Field>(alg: &Algebra, mu: &[S]) -> S {
    let shifted = vadd(mu, &lift::<S>(&alg.rho));
    let mut acc = S::one();
    for a in &alg.pos_roots {
        let num = alg.inner_f(&shifted, &lift::<S>(a));
        let den = alg.inner(&alg.rho, a).expect("catalog rank");
        acc = acc * num * S::from_rat(&den.recip());
    }
    acc
}

pub fn weyl_dim(alg: &Algebra, mu: &[Rat]) -> Result<BigInt> {
    let d = match alg.family {
        Family::U(n) => {
            let mut acc = Rat::one();
            for i in 0..n {
                for j in i + 1..n {
                    let gap = int((j - i) as i64);
                    acc *= (&mu[i] - &mu[j] + &gap) / gap;
                }
            }
            acc
        }
        _ => weyl_dim_f::<Rat>(alg, mu),
    };
    if !d.is_integer() || !d.is_positive() {
        return Err(Error::NonIntegerDimension);
    }
    Ok(d.to_integer())
}

/// Normalized Casimir eigenvalue on `V_μ` over any scalar field.
pub fn casimir_f<S: Field>(alg: &Algebra, mu: &[S]) -> S {
    let factor = int(-2) * int(alg.dim_g as i64) / int(alg.dim_t as i64) / norm_den(alg);
    let shifted = vadd(mu, &lift::<S>(&two_rho(alg)));
    S::from_rat(&factor) * alg.inner_f(&shifted, mu)
}

pub fn casimir(alg: &Algebra, mu: &[Rat]) -> Rat {
    casimir_f::<Rat>(alg, mu)
}

pub fn casimir_l2(alg: &Algebra, ideal: IdealId, mu: &[Rat]) -> Result<Rat> {
    if mu.len() != alg.rank {
        return Err(Error::DimensionMismatch);
    }
    match (ideal, alg.family) {
        (IdealId::Full, _) => Ok(casimir(alg, mu)),
        (IdealId::Center, Family::U(n)) => {
            let s: Rat = mu.iter().cloned().sum();
            Ok(-(&s * &s) / int(n as i64))
        }
        (IdealId::Su, Family::U(n)) => {
            let s: Rat = mu.iter().cloned().sum::<Rat>() / int(n as i64);
            let su: WeightVec = mu.iter().map(|x| x - &s).collect();
            Ok(-alg.inner(&vadd(&su, &two_rho(alg)), &su)?)
        }
        _ => Err(Error::BadIdeal),
    }
}

/// `Cas^{Λ²}_T`, equal to `−2·dim 𝔤/dim T`.
pub fn casimir_t(alg: &Algebra) -> Rat {
    casimir(alg, &alg.eps_max)
}

/// `Cas^{Λ²}_𝔤`, the normalized Casimir of the adjoint representation.
pub fn casimir_adjoint(alg: &Algebra) -> Rat {
    casimir(alg, &alg.adjoint)
}

/// Conformal weight `b_ε` at highest weight `λ`, over any scalar field.
pub fn conformal_f<S: Field>(alg: &Algebra, lam: &[S], eps: &[Rat]) -> S {
    let factor = int(2) * int(alg.dim_g as i64) / int(alg.dim_t as i64) / norm_den(alg);
    let lr = vadd(lam, &lift::<S>(&alg.rho));
    let em = &alg.eps_max;
    let shift = -alg.inner(&alg.rho, em).unwrap()
        + (alg.inner(eps, eps).unwrap() - alg.inner(em, em).unwrap()) * rat(1, 2);
    S::from_rat(&factor) * (alg.inner_f(&lr, &lift::<S>(eps)) + S::from_rat(&shift))
}

/// Closed forms for the conformal weights, written in the coordinates each
/// family is usually tabulated in.
pub fn closed_form_b(alg: &Algebra, lam: &[Rat], label: EpsLabel) -> Result<Rat> {
    let k_of = |l: EpsLabel| match l {
        EpsLabel::Plus(k) | EpsLabel::Minus(k) => k,
        EpsLabel::Zero => 0,
    };
    let k = k_of(label);
    let sign = |plus: Rat, minus: Rat| match label {
        EpsLabel::Plus(_) => Ok(plus),
        EpsLabel::Minus(_) => Ok(minus),
        EpsLabel::Zero => Err(Error::NotRelevant),
    };
    match alg.family {
        Family::SoOdd(r) | Family::SoEven(r) => {
            let n = int(alg.family.parameter().unwrap() as i64);
            if label == EpsLabel::Zero {
                return Ok(-int(r as i64));
            }
            let mu = &lam[k - 1];
            let kk = int(k as i64);
            sign(mu - &kk + int(1), -mu - n + kk + int(1))
        }
        Family::U(n) => {
            let mu = &lam[k - 1];
            let kk = int(k as i64);
            sign(mu - &kk + int(1), -mu + kk - int(n as i64))
        }
        Family::G2 => {
            let f = alg.to_fundamental_rat(lam)?;
            let (a, b) = (&f[0], &f[1]);
            if label == EpsLabel::Zero {
                return Ok(int(-2));
            }
            let (c, lin) = match k {
                1 => (rat(5, 3), a * rat(2, 3) + b),
                2 => (rat(4, 3), a * rat(1, 3) + b),
                _ => (rat(1, 3), a * rat(1, 3)),
            };
            let base = rat(5, 3);
            sign(-(&base - &c) + &lin, -(&base + &c) - &lin)
        }
        Family::Spin7 => {
            let f = alg.to_fundamental_rat(lam)?;
            let (a, b, c) = (&f[0], &f[1], &f[2]);
            let (s, lin) = match k {
                1 => (rat(9, 4), a * rat(1, 2) + b + c * rat(3, 4)),
                2 => (rat(7, 4), a * rat(1, 2) + b + c * rat(1, 4)),
                3 => (rat(3, 4), a * rat(1, 2) + c * rat(1, 4)),
                _ => (rat(1, 4), a * rat(1, 2) - c * rat(1, 4)),
            };
            let base = rat(9, 4);
            sign(-(&base - &s) + &lin, -(&base + &s) - &lin)
        }
    }
}

/// Whether `ε` occurs in `T ⊗ V_λ`.
pub fn is_relevant(alg: &Algebra, lam: &[Rat], label: EpsLabel, eps: &[Rat]) -> Result<bool> {
    if label != EpsLabel::Zero {
        return is_dominant(alg, &vadd(lam, eps));
    }
    let k = match alg.family {
        Family::SoOdd(r) => r - 1,
        Family::G2 => 0,
        _ => return Ok(false),
    };
    let shifted: WeightVec = lam
        .iter()
        .zip(&alg.fund_weights[k])
        .map(|(x, y)| x - y)
        .collect();
    is_dominant(alg, &shifted)
}

fn center_b(alg: &Algebra, lam: &[Rat], eps: &[Rat]) -> Rat {
    let n = int(alg.rank as i64);
    let sl: Rat = lam.iter().cloned().sum();
    let se: Rat = eps.iter().cloned().sum();
    sl * se / n
}

/// Conformal weight for one relevant ε. The defining formula, the
/// difference of Casimirs and the closed form are all evaluated and must
/// agree.
pub fn conformal_weight(lam: &HighestWeight, ideal: IdealId, label: EpsLabel) -> Result<Rat> {
    let alg = &*lam.alg;
    let eps = alg.t_weight(label).ok_or(Error::NotRelevant)?;
    if !is_relevant(alg, &lam.vec, label, eps)? {
        return Err(Error::NotRelevant);
    }
    let full = || -> Result<Rat> {
        let b = conformal_f::<Rat>(alg, &lam.vec, eps);
        let mu = vadd(&lam.vec, eps);
        let diff = (casimir(alg, &mu) - casimir_t(alg) - casimir(alg, &lam.vec)) * rat(-1, 2);
        if b != diff {
            return Err(Error::consistency("conformal weight equals Casimir difference"));
        }
        if b != closed_form_b(alg, &lam.vec, label)? {
            return Err(Error::consistency("conformal weight equals closed form"));
        }
        Ok(b)
    };
    let center = || -> Result<Rat> {
        let Family::U(n) = alg.family else {
            return Err(Error::BadIdeal);
        };
        let b = center_b(alg, &lam.vec, eps);
        let s: Rat = lam.vec.iter().cloned().sum::<Rat>() / int(n as i64);
        let closed = match label {
            EpsLabel::Minus(_) => -s,
            _ => s,
        };
        if b != closed {
            return Err(Error::consistency("central conformal weight closed form"));
        }
        Ok(b)
    };
    match ideal {
        IdealId::Full => full(),
        IdealId::Center => center(),
        IdealId::Su => Ok(full()? - center()?),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub label: EpsLabel,
    pub eps: WeightVec,
    pub mu: WeightVec,
    pub mu_fund: Vec<i64>,
    pub dim: BigInt,
    pub dratio: Rat,
    pub b: Rat,
    pub b_center: Option<Rat>,
}

impl Entry {
    /// Holomorphic weights of U(n) are the negative ones.
    pub fn is_holomorphic(&self) -> bool {
        matches!(self.label, EpsLabel::Minus(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelevantSet {
    pub alg: Arc<Algebra>,
    pub lambda: HighestWeight,
    pub dim: BigInt,
    pub entries: Vec<Entry>,
    /// Two relevant weights share a conformal weight, so `ℂ[B]` is a
    /// proper subalgebra.
    pub degenerate: bool,
}

impl RelevantSet {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn index_of(&self, label: EpsLabel) -> Option<usize> {
        self.entries.iter().position(|e| e.label == label)
    }

    pub fn labels(&self) -> Vec<EpsLabel> {
        self.entries.iter().map(|e| e.label).collect()
    }

    pub fn b(&self) -> Vec<Rat> {
        self.entries.iter().map(|e| e.b.clone()).collect()
    }

    pub fn dratios(&self) -> Vec<Rat> {
        self.entries.iter().map(|e| e.dratio.clone()).collect()
    }

    pub fn casimir(&self) -> Rat {
        casimir(&self.alg, &self.lambda.vec)
    }

    /// `Cas^{[k]}_{V_λ} = tr Bᵏ`.
    pub fn higher_casimir(&self, k: u32) -> Rat {
        self.entries
            .iter()
            .fold(Rat::zero(), |acc, e| acc + e.b.pow(k as i32) * &e.dratio)
    }
}

/// Collision of conformal weights predicted for the given λ.
fn predicted_degenerate(alg: &Algebra, fund: &[i64]) -> bool {
    match alg.family {
        Family::SoEven(r) => fund[r - 2] == fund[r - 1] && fund[r - 1] >= 1,
        Family::Spin7 => fund[2] == 2 * fund[0] + 1 && fund[0] >= 1,
        _ => false,
    }
}

pub fn relevant_weights(lam: &HighestWeight) -> Result<RelevantSet> {
    let alg = lam.alg.clone();
    let dim = lam.dim()?;
    let dim_r = Rat::from_integer(dim.clone());
    let mut entries = Vec::new();
    for (label, eps) in &alg.t_weights {
        if !is_relevant(&alg, &lam.vec, *label, eps)? {
            continue;
        }
        let mu = vadd(&lam.vec, eps);
        let d = weyl_dim(&alg, &mu)?;
        let dratio = Rat::from_integer(d.clone()) / &dim_r;
        let b = conformal_weight(lam, IdealId::Full, *label)?;
        let b_center = match alg.family {
            Family::U(_) => Some(conformal_weight(lam, IdealId::Center, *label)?),
            _ => None,
        };
        entries.push(Entry {
            label: *label,
            eps: eps.clone(),
            mu_fund: fundamental_i64(&alg, &mu)?,
            mu,
            dim: d,
            dratio,
            b,
            b_center,
        });
    }
    let total: BigInt = entries.iter().map(|e| e.dim.clone()).sum();
    if total != BigInt::from(alg.dim_t) * &dim {
        return Err(Error::consistency("dimension sum equals dim T times dim V"));
    }
    let tr_b = entries
        .iter()
        .fold(Rat::zero(), |acc, e| acc + &e.b * &e.dratio);
    if !tr_b.is_zero() {
        return Err(Error::consistency("trace of B vanishes"));
    }
    let mut collision = false;
    for (i, e) in entries.iter().enumerate() {
        for f in &entries[i + 1..] {
            if e.b != f.b {
                continue;
            }
            if matches!(alg.family, Family::U(_)) {
                if e.is_holomorphic() == f.is_holomorphic() {
                    return Err(Error::consistency("U(n) conformal weights ordered per type"));
                }
            } else {
                collision = true;
            }
        }
    }
    if collision != predicted_degenerate(&alg, &lam.fund) {
        return Err(Error::consistency("conformal weight collisions as predicted"));
    }
    Ok(RelevantSet {
        alg,
        lambda: lam.clone(),
        dim,
        entries,
        degenerate: collision,
    })
}

pub fn higher_casimir(lam: &HighestWeight, k: u32) -> Result<Rat> {
    Ok(relevant_weights(lam)?.higher_casimir(k))
}

pub const DEFAULT_SIZE_LIMIT: u64 = 1_000_000;

/// Decomposes `T ⊗ V_λ` by the Klimyk formula: every weight ν of T gives
/// `λ+ν+ρ`, which is reflected into the dominant chamber with sign.
/// Returns highest weights in fundamental coordinates with multiplicities.
pub fn brute_force_decompose(lam: &HighestWeight, limit: Option<u64>) -> Result<Vec<(Vec<i64>, i64)>> {
    let alg = &*lam.alg;
    let cap = BigInt::from(limit.unwrap_or(DEFAULT_SIZE_LIMIT));
    if lam.dim()? > cap {
        return Err(Error::TooLarge);
    }
    let norms: Vec<Rat> = alg
        .simple_roots
        .iter()
        .map(|a| alg.inner(a, a))
        .collect::<Result<_>>()?;
    let mut acc: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
    for (_, nu) in &alg.t_weights {
        let mut v: WeightVec = vadd(&vadd(&lam.vec, nu), &alg.rho);
        let mut sign = 1i64;
        let mut singular = false;
        loop {
            let mut moved = false;
            for (a, n) in alg.simple_roots.iter().zip(&norms) {
                let p = alg.inner(&v, a)?;
                if p.is_negative() {
                    let c = int(2) * p / n;
                    v = v.iter().zip(a).map(|(x, y)| x - &c * y).collect();
                    sign = -sign;
                    moved = true;
                }
            }
            if !moved {
                break;
            }
        }
        for a in &alg.simple_roots {
            if alg.inner(&v, a)?.is_zero() {
                singular = true;
            }
        }
        if singular {
            continue;
        }
        let mu: WeightVec = v.iter().zip(&alg.rho).map(|(x, y)| x - y).collect();
        *acc.entry(fundamental_i64(alg, &mu)?).or_insert(0) += sign;
    }
    Ok(acc.into_iter().filter(|(_, m)| *m != 0).collect())
}

/// Highest weight moved along `λ + tρ`, as rational functions of `t`.
pub fn ray<S: Field>(alg: &Algebra, lam: &[Rat], t: &S) -> Vec<S> {
    lam.iter()
        .zip(&alg.rho)
        .map(|(x, r)| S::from_rat(x) + t.clone() * S::from_rat(r))
        .collect()
}
