//! Truncated holomorphic series in `(z, w)` and coordinate changes `(f, g)`.
//!
//! `z^i w^j` has weight `i + k j`. A map keeps `f` to weight `W - k + 1` and `g` to
//! weight `W`, which is exactly what is needed to push a defining function forward
//! to weight `W`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{CrError, Result};
use crate::scalar::{GaussianRational, Rational};
use crate::series::WeightedSeries;

#[derive(Clone, PartialEq, Eq)]
pub struct HoloSeries {
    k: u32,
    trunc: u32,
    coeffs: BTreeMap<(u32, u32), GaussianRational>,
}

impl HoloSeries {
    pub fn zero(k: u32, trunc: u32) -> Self {
        Self {
            k,
            trunc,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn from_terms<I>(terms: I, k: u32, trunc: u32) -> Self
    where
        I: IntoIterator<Item = ((u32, u32), GaussianRational)>,
    {
        let mut s = Self::zero(k, trunc);
        for (idx, c) in terms {
            s.add_term(idx, &c);
        }
        s
    }

    pub fn monomial(i: u32, j: u32, c: GaussianRational, k: u32, trunc: u32) -> Self {
        Self::from_terms([((i, j), c)], k, trunc)
    }

    pub fn one(k: u32, trunc: u32) -> Self {
        Self::monomial(0, 0, GaussianRational::one(), k, trunc)
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn weight(&self, (i, j): (u32, u32)) -> u32 {
        i + self.k * j
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, i: u32, j: u32) -> GaussianRational {
        self.coeffs
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(GaussianRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &GaussianRational)> {
        self.coeffs.iter()
    }

    pub fn add_term(&mut self, idx: (u32, u32), c: &GaussianRational) {
        if c.is_zero() || self.weight(idx) > self.trunc {
            return;
        }
        let e = self
            .coeffs
            .entry(idx)
            .or_insert_with(GaussianRational::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&idx);
        }
    }

    pub fn set_term(&mut self, idx: (u32, u32), c: GaussianRational) {
        if self.weight(idx) > self.trunc {
            return;
        }
        if c.is_zero() {
            self.coeffs.remove(&idx);
        } else {
            self.coeffs.insert(idx, c);
        }
    }

    pub fn truncate(&self, trunc: u32) -> Self {
        let trunc = trunc.min(self.trunc);
        let mut out = Self::zero(self.k, trunc);
        for (i, c) in &self.coeffs {
            out.add_term(*i, c);
        }
        out
    }

    pub fn min_weight(&self) -> Option<u32> {
        self.coeffs.keys().map(|i| self.weight(*i)).min()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.truncate(o.trunc);
        for (i, c) in &o.coeffs {
            out.add_term(*i, c);
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        let trunc = self.trunc.min(o.trunc);
        let mut out = Self::zero(self.k, trunc);
        for ((a, b), x) in &self.coeffs {
            for ((c, d), y) in &o.coeffs {
                out.add_term((a + c, b + d), &(x * y));
            }
        }
        out
    }

    pub fn scale(&self, s: &GaussianRational) -> Self {
        let mut out = Self::zero(self.k, self.trunc);
        for (i, c) in &self.coeffs {
            out.add_term(*i, &(c * s));
        }
        out
    }

    /// `self(zs, ws)`, truncated at `trunc`. Both arguments must lack constant terms.
    pub fn compose(&self, zs: &HoloSeries, ws: &HoloSeries, trunc: u32) -> Self {
        let zs = zs.truncate(trunc);
        let ws = ws.truncate(trunc);
        let mut zpow = vec![HoloSeries::one(self.k, trunc)];
        let mut wpow = vec![HoloSeries::one(self.k, trunc)];
        let mut out = Self::zero(self.k, trunc);
        for ((i, j), c) in &self.coeffs {
            while zpow.len() <= *i as usize {
                let next = zpow.last().unwrap().mul(&zs);
                zpow.push(next);
            }
            while wpow.len() <= *j as usize {
                let next = wpow.last().unwrap().mul(&ws);
                wpow.push(next);
            }
            let term = zpow[*i as usize].mul(&wpow[*j as usize]).scale(c);
            out = out.add(&term);
        }
        out
    }

    /// Evaluates at `(z, u + i F)`, yielding a series in `(z, zb, u)`.
    pub fn eval_on_surface(&self, f: &WeightedSeries) -> WeightedSeries {
        let k = f.k();
        let trunc = f.trunc();
        let w_arg = &WeightedSeries::u(k, trunc) + &f.scale(&GaussianRational::i());
        let z = WeightedSeries::z(k, trunc);
        let mut wpow = vec![WeightedSeries::one(k, trunc)];
        let mut zpow = vec![WeightedSeries::one(k, trunc)];
        let mut out = WeightedSeries::zero(k, trunc);
        for ((i, j), c) in &self.coeffs {
            while wpow.len() <= *j as usize {
                let next = wpow.last().unwrap() * &w_arg;
                wpow.push(next);
            }
            while zpow.len() <= *i as usize {
                let next = zpow.last().unwrap() * &z;
                zpow.push(next);
            }
            let term = (&zpow[*i as usize] * &wpow[*j as usize]).scale(c);
            out = &out + &term;
        }
        out
    }
}

impl fmt::Debug for HoloSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HoloSeries(k={}, W={}) {{", self.k, self.trunc)?;
        for ((i, j), c) in &self.coeffs {
            write!(f, " z^{i} w^{j}: {c};")?;
        }
        write!(f, " }}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Component {
    F,
    G,
}

/// A coordinate change `z* = f(z, w)`, `w* = g(z, w)` fixing the origin and the
/// tangent hyperplane `v = 0`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HoloMapPair {
    f: HoloSeries,
    g: HoloSeries,
    k: u32,
    trunc: u32,
}

impl HoloMapPair {
    /// Validates `f(0) = g(0) = 0`, `g_z(0) = 0`, `Im g_w(0) = 0` and truncates the
    /// components to their working weights.
    pub fn new(f: HoloSeries, g: HoloSeries, k: u32, trunc: u32) -> Result<Self> {
        if f.k != k || g.k != k {
            return Err(CrError::GradingMismatch(f.k, k));
        }
        if trunc < k {
            return Err(CrError::InvalidGrading { k, w: trunc });
        }
        if !f.coeff(0, 0).is_zero() || !g.coeff(0, 0).is_zero() {
            return Err(CrError::MapNormalization("map must fix the origin".into()));
        }
        if !g.coeff(1, 0).is_zero() {
            return Err(CrError::MapNormalization(
                "g_z must vanish at the origin".into(),
            ));
        }
        if !g.coeff(0, 1).im.is_zero() {
            return Err(CrError::MapNormalization(
                "g_w must be real at the origin".into(),
            ));
        }
        Ok(Self {
            f: f.truncate(trunc + 1 - k),
            g: g.truncate(trunc),
            k,
            trunc,
        })
    }

    pub fn identity(k: u32, trunc: u32) -> Self {
        Self::diagonal(&GaussianRational::one(), &Rational::one(), k, trunc)
            .expect("identity map is normalized")
    }

    /// `z* = c z`, `w* = lambda w`.
    pub fn diagonal(c: &GaussianRational, lambda: &Rational, k: u32, trunc: u32) -> Result<Self> {
        Self::new(
            HoloSeries::monomial(1, 0, c.clone(), k, trunc),
            HoloSeries::monomial(0, 1, GaussianRational::real(lambda.clone()), k, trunc),
            k,
            trunc,
        )
    }

    pub fn f(&self) -> &HoloSeries {
        &self.f
    }

    pub fn g(&self) -> &HoloSeries {
        &self.g
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn component(&self, which: Component) -> &HoloSeries {
        match which {
            Component::F => &self.f,
            Component::G => &self.g,
        }
    }

    /// `f_z(0)`
    pub fn linear_z(&self) -> GaussianRational {
        self.f.coeff(1, 0)
    }

    /// `g_w(0)`, real by normalization.
    pub fn linear_w(&self) -> Rational {
        self.g.coeff(0, 1).re
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.k, self.trunc)
    }

    pub fn with_trunc(&self, trunc: u32) -> Self {
        Self::new(
            self.f.clone(),
            self.g.clone(),
            self.k,
            trunc.min(self.trunc),
        )
        .expect("truncation keeps normalization")
    }

    /// `g` has no pure `z^i` term with `i < k`, so `Re g(z, u + iF)` never lowers weight.
    pub fn is_weight_filtered(&self) -> bool {
        self.g.terms().all(|((i, j), _)| *j > 0 || *i >= self.k)
    }

    /// The composition `other ∘ self`: first `self`, then `other`.
    pub fn then(&self, other: &HoloMapPair) -> Result<HoloMapPair> {
        if self.k != other.k {
            return Err(CrError::GradingMismatch(self.k, other.k));
        }
        let trunc = self.trunc.min(other.trunc);
        let ftr = trunc + 1 - self.k;
        let f = other.f.compose(&self.f, &self.g, ftr);
        let g = other.g.compose(&self.f, &self.g, trunc);
        HoloMapPair::new(f, g, self.k, trunc)
    }
}

/// `compose(a, b) = b ∘ a`, so that pushing forward by the result equals pushing
/// forward by `a` and then by `b`.
pub fn compose(a: &HoloMapPair, b: &HoloMapPair) -> Result<HoloMapPair> {
    a.then(b)
}

/// The chosen component evaluated at `(z, u + iF)`.
pub fn map_component_eval(
    m: &HoloMapPair,
    which: Component,
    f: &WeightedSeries,
) -> Result<WeightedSeries> {
    if !f.is_real() {
        return Err(CrError::RealityViolation(f.reality_violations()));
    }
    if f.k() != m.k {
        return Err(CrError::GradingMismatch(f.k(), m.k));
    }
    if f.min_weight().is_some_and(|w| w < 2) {
        return Err(CrError::NotPrepared(
            "defining function has terms of weight < 2".into(),
        ));
    }
    let f = f.truncate(m.trunc);
    Ok(m.component(which).eval_on_surface(&f))
}
