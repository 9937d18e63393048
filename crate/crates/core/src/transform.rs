//! Pushing defining equations forward under holomorphic coordinate changes, and
//! the automorphisms of the circular model `v = |z|^k`.

use num_traits::{One, Signed, Zero};

use crate::error::{CrError, Result};
use crate::holo::{HoloMapPair, HoloSeries};
use crate::scalar::{rational_pow, GaussianRational, Phase, Rational};
use crate::series::{MultiIndex, Substituter, WeightedSeries};
use crate::surface::Hypersurface;

pub use crate::holo::{compose, map_component_eval, Component};

/// Initial data `(delta, theta, mu)` of a map preserving the normal form
/// conditions: `f = delta e^{i theta} z + ...`, `Re g_ww = -2 mu delta^k`... in
/// the model family, `g = delta^k (w - mu w^2 + ...)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InitialData {
    pub delta: Rational,
    pub phase: Phase,
    pub mu: Rational,
}

impl InitialData {
    pub fn new(delta: Rational, phase: Phase, mu: Rational) -> Result<Self> {
        if !delta.is_positive() {
            return Err(CrError::MapNormalization("delta must be positive".into()));
        }
        if !phase.is_unit() {
            return Err(CrError::MapNormalization(format!(
                "phase {phase} is not unimodular"
            )));
        }
        Ok(Self { delta, phase, mu })
    }

    pub fn trivial() -> Self {
        Self {
            delta: Rational::one(),
            phase: Phase::one(),
            mu: Rational::zero(),
        }
    }

    pub fn with_mu(mu: Rational) -> Self {
        Self {
            mu,
            ..Self::trivial()
        }
    }
}

/// Solves `F*(f(z, u+iF), conj f, Re g(z, u+iF)) = Im g(z, u+iF)` for `F*`.
///
/// With `Z = c z + ...` and `U = lambda u + ...`, the image of a monomial of `F*`
/// is `c^a cb^b lambda^c` times itself plus terms of strictly larger
/// `(weight, degree)`, so the coefficients of `F*` are peeled off level by level.
pub fn pushforward(m: &Hypersurface, map: &HoloMapPair) -> Result<Hypersurface> {
    let k = m.k();
    if map.k() != k {
        return Err(CrError::GradingMismatch(k, map.k()));
    }
    if !map.is_weight_filtered() {
        return Err(CrError::NotWeightFiltered);
    }
    let c = map.linear_z();
    let lambda = map.linear_w();
    if c.is_zero() || lambda.is_zero() {
        return Err(CrError::SingularLinearPart);
    }
    let trunc = m.trunc().min(map.trunc());
    let f = m.series().truncate(trunc);
    let zs = map.f().eval_on_surface(&f);
    let gs = map.g().eval_on_surface(&f);
    let mut sub = Substituter::new(&zs, &zs.conjugate(), &gs.re());
    let mut residual = gs.im();
    let mut out = WeightedSeries::zero(k, trunc);

    let cb = c.conj();
    let lam = GaussianRational::real(lambda);
    let diag = |i: &MultiIndex| {
        &(&c.pow(i.alpha as i64) * &cb.pow(i.beta as i64)) * &lam.pow(i.gamma as i64)
    };

    while let Some(level) = residual
        .terms()
        .map(|(i, _)| (i.weight(k), i.degree()))
        .min()
    {
        let batch: Vec<(MultiIndex, GaussianRational)> = residual
            .terms()
            .filter(|(i, _)| (i.weight(k), i.degree()) == level)
            .map(|(i, r)| (*i, r / &diag(i)))
            .collect();
        for (idx, a) in batch {
            out.add_term(idx, &a);
            let img = sub.image(idx);
            residual = &residual - &img.scale(&a);
        }
    }
    debug_assert!(out.is_real());
    Ok(Hypersurface::from_valid(out))
}

/// `pushforward` for the diagonal map `z* = c z`, `w* = lambda w`:
/// `a*_{abg} = lambda a_{abg} c^{-a} cb^{-b} lambda^{-g}`.
pub fn diagonal_pushforward(
    m: &Hypersurface,
    c: &GaussianRational,
    lambda: &Rational,
) -> Hypersurface {
    let k = m.k();
    let mut out = WeightedSeries::zero(k, m.trunc());
    let cinv = c.inv();
    let cbinv = c.conj().inv();
    for (i, a) in m.series().terms() {
        let factor = (&cinv.pow(i.alpha as i64) * &cbinv.pow(i.beta as i64))
            .scale(&rational_pow(lambda, 1 - i.gamma as i64));
        out.add_term(*i, &(a * &factor));
    }
    Hypersurface::from_valid(out)
}

/// `binom(r, n)` for rational `r`.
pub fn binomial(r: &Rational, n: u32) -> Rational {
    let mut acc = Rational::one();
    for i in 0..n {
        acc = acc * (r - Rational::from_integer(i.into())) / Rational::from_integer((i + 1).into());
    }
    acc
}

/// `f = delta e^{i theta} z (1 + mu w)^{-1/l}`, `g = delta^k w / (1 + mu w)` with
/// `l = k/2`, expanded exactly to the truncation weight.
pub fn ok_model_automorphism(d: &InitialData, k: u32, trunc: u32) -> Result<HoloMapPair> {
    if k % 2 == 1 {
        return Err(CrError::OddType(k));
    }
    let l = k / 2;
    let phase = d
        .phase
        .to_gaussian()
        .ok_or_else(|| CrError::NonRationalPhase(d.phase.to_string()))?;
    let lead = phase.scale(&d.delta);
    let exponent = -Rational::new(1.into(), l.into());
    let ftrunc = trunc + 1 - k;
    let mut f = HoloSeries::zero(k, ftrunc);
    let mut n = 0;
    while k * n < ftrunc {
        let c = binomial(&exponent, n) * rational_pow(&d.mu, n as i64);
        f.add_term((1, n), &lead.scale(&c));
        n += 1;
    }
    let dk = rational_pow(&d.delta, k as i64);
    let mut g = HoloSeries::zero(k, trunc);
    let mut n = 0;
    while k * (n + 1) <= trunc {
        let c = &dk * rational_pow(&-d.mu.clone(), n as i64);
        g.add_term((0, n + 1), &GaussianRational::real(c));
        n += 1;
    }
    HoloMapPair::new(f, g, k, trunc)
}

/// Whether `map` preserves the defining function up to the common truncation.
pub fn is_automorphism(m: &Hypersurface, map: &HoloMapPair) -> Result<bool> {
    let image = pushforward(m, map)?;
    Ok(*image.series() == m.series().truncate(image.trunc()))
}
