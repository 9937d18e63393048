//! Defining functions `v = F(z, zb, u)` and their discrete invariants.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{CrError, Result};
use crate::holo::{HoloMapPair, HoloSeries};
use crate::scalar::{rational_pow, GaussianRational};
use crate::series::{MultiIndex, WeightedSeries};

/// A real defining function of finite type `k`, prepared so that its lowest
/// weight part is a mixed polynomial in `z, zb` of degree `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypersurface {
    f: WeightedSeries,
}

impl Hypersurface {
    /// Wraps a series that is known to satisfy the invariants (for instance the
    /// pushforward of a valid surface).
    pub(crate) fn from_valid(f: WeightedSeries) -> Self {
        Self { f }
    }

    pub fn series(&self) -> &WeightedSeries {
        &self.f
    }

    pub fn into_series(self) -> WeightedSeries {
        self.f
    }

    pub fn k(&self) -> u32 {
        self.f.k()
    }

    pub fn trunc(&self) -> u32 {
        self.f.trunc()
    }

    /// The weight `k`, `gamma = 0` part.
    pub fn model(&self) -> WeightedSeries {
        let k = self.k();
        self.f.filter(|i| i.gamma == 0 && i.weight(k) == k)
    }

    /// `F - model`.
    pub fn perturbation(&self) -> WeightedSeries {
        &self.f - &self.model()
    }

    pub fn is_model(&self) -> bool {
        self.perturbation().is_zero()
    }

    pub fn truncate(&self, trunc: u32) -> Self {
        Self::from_valid(self.f.truncate(trunc))
    }
}

/// Lowest total `(z, zb)` degree of a mixed `gamma = 0` term.
pub fn detect_type(f: &WeightedSeries) -> Option<u32> {
    f.terms()
        .filter(|(i, _)| i.gamma == 0 && i.alpha > 0 && i.beta > 0)
        .map(|(i, _)| i.alpha + i.beta)
        .min()
}

pub fn validate_surface(f: &WeightedSeries) -> Result<Hypersurface> {
    if !f.is_real() {
        return Err(CrError::RealityViolation(f.reality_violations()));
    }
    let Some(k) = detect_type(f) else {
        if f.terms().any(|(i, _)| i.is_harmonic()) {
            return Err(CrError::NotPrepared(
                "leading part is purely harmonic; absorb harmonic terms first".into(),
            ));
        }
        return Err(CrError::NotFiniteType);
    };
    if k != f.k() {
        return Err(CrError::GradingMismatch(f.k(), k));
    }
    for (i, _) in f.terms() {
        let w = i.weight(k);
        if w < k {
            return Err(CrError::NotPrepared(format!(
                "term {i} has weight {w} below the type {k}"
            )));
        }
        if w == k && (i.gamma > 0 || i.alpha == 0 || i.beta == 0) {
            return Err(CrError::NotPrepared(format!(
                "weight {k} term {i} is not a mixed z/zb monomial"
            )));
        }
    }
    Ok(Hypersurface { f: f.clone() })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelInfo {
    pub k: u32,
    /// `a_j`, the coefficient of `z^j zb^(k-j)`, for the nonzero ones.
    pub model_coeffs: BTreeMap<u32, GaussianRational>,
    /// Essential type.
    pub l: u32,
    pub kappa: Option<u32>,
    /// The model is `c |z|^k` for a real `c != 0`.
    pub circular: bool,
}

pub fn model_of(m: &Hypersurface) -> ModelInfo {
    let k = m.k();
    let model_coeffs: BTreeMap<u32, GaussianRational> = m
        .model()
        .terms()
        .map(|(i, c)| (i.alpha, c.clone()))
        .collect();
    let l = *model_coeffs
        .keys()
        .next()
        .expect("valid surface has a model term");
    let circular = k.is_multiple_of(2) && model_coeffs.len() == 1 && 2 * l == k;
    let mut info = ModelInfo {
        k,
        model_coeffs,
        l,
        kappa: None,
        circular,
    };
    info.kappa = kappa_invariant(&info).ok();
    info
}

/// `gcd(k - 2 m)` over the nonzero model indices `m < k/2`.
pub fn kappa_invariant(info: &ModelInfo) -> Result<u32> {
    if 2 * info.l >= info.k {
        return Err(CrError::KappaUndefined);
    }
    Ok(info
        .model_coeffs
        .keys()
        .filter(|&&j| 2 * j < info.k)
        .fold(0u32, |acc, &j| acc.gcd(&(info.k - 2 * j))))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AnchorIndex {
    pub alpha0: u32,
    pub beta0: u32,
    pub gamma0: u32,
    /// Weight of the lowest perturbation part.
    pub p: u32,
}

impl AnchorIndex {
    pub fn index(&self) -> MultiIndex {
        MultiIndex::new(self.alpha0, self.beta0, self.gamma0)
    }
}

/// Among the lowest weight perturbation terms, the inverse lexicographic minimum
/// (`gamma` compared first, then `beta`, then `alpha`).
pub fn anchor_index(m: &Hypersurface) -> Result<AnchorIndex> {
    let q = m.perturbation();
    let p = q.min_weight().ok_or(CrError::ModelSurface)?;
    let idx = q
        .weight_part(p)
        .terms()
        .map(|(i, _)| *i)
        .min_by_key(|i| i.inverse_lex_key())
        .expect("weight part is nonempty");
    Ok(AnchorIndex {
        alpha0: idx.alpha,
        beta0: idx.beta,
        gamma0: idx.gamma,
        p,
    })
}

/// The defining function depends on `z` only through `|z|^2`.
pub fn is_weakly_spherical(m: &Hypersurface) -> bool {
    m.series().terms().all(|(i, _)| i.alpha == i.beta)
}

/// For a circular leading part `c |z|^k`, rescales `w -> w / c` so the model is
/// literally `|z|^k`; otherwise returns the input with the identity map.
pub fn leading_rescale(f: &WeightedSeries) -> Result<(WeightedSeries, HoloMapPair)> {
    let k = f.k();
    let trunc = f.trunc();
    let lead = f.weight_part(k);
    let half = MultiIndex::new(k / 2, k / 2, 0);
    let c = lead.coeff(&half);
    let circular = k.is_multiple_of(2) && lead.len() == 1 && !c.is_zero() && c.is_real();
    if !circular || c.re.is_one() {
        return Ok((f.clone(), HoloMapPair::identity(k, trunc)));
    }
    let c = c.re;
    let mut out = WeightedSeries::zero(k, trunc);
    for (i, a) in f.terms() {
        out.add_term(*i, &a.scale(&rational_pow(&c, i.gamma as i64 - 1)));
    }
    let map = HoloMapPair::new(
        HoloSeries::monomial(1, 0, GaussianRational::one(), k, trunc),
        HoloSeries::monomial(0, 1, GaussianRational::real(c.recip()), k, trunc),
        k,
        trunc,
    )?;
    Ok((out, map))
}

/// `true` when the model part is exactly `|z|^k`.
pub fn has_unit_circular_model(m: &Hypersurface) -> bool {
    let k = m.k();
    let model = m.model();
    k.is_multiple_of(2)
        && model.len() == 1
        && model.coeff(&MultiIndex::new(k / 2, k / 2, 0)) == GaussianRational::one()
}

pub(crate) fn unit_model(k: u32, trunc: u32) -> WeightedSeries {
    WeightedSeries::monomial(
        MultiIndex::new(k / 2, k / 2, 0),
        GaussianRational::one(),
        k,
        trunc,
    )
}
