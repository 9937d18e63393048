//! Truncated formal power series in `z`, `zb` (the conjugate of `z`, treated as an
//! independent variable) and `u`, graded by `wt(z) = wt(zb) = 1`, `wt(u) = k`.
//!
//! Every series carries its grading parameter `k` and its truncation weight `W`:
//! coefficients are known exactly for all monomials of weight `<= W` and nothing
//! is stored above it. Binary operations truncate at the smaller of the two `W`s.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{CrError, Result};
use crate::scalar::{GaussianRational, Rational};

/// Exponent triple of `z^alpha zb^beta u^gamma`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex {
    pub alpha: u32,
    pub beta: u32,
    pub gamma: u32,
}

impl MultiIndex {
    pub const fn new(alpha: u32, beta: u32, gamma: u32) -> Self {
        Self { alpha, beta, gamma }
    }

    pub fn try_from_signed(alpha: i64, beta: i64, gamma: i64) -> Result<Self> {
        if alpha < 0 || beta < 0 || gamma < 0 {
            return Err(CrError::NegativeExponent(alpha, beta, gamma));
        }
        Ok(Self::new(alpha as u32, beta as u32, gamma as u32))
    }

    pub fn weight(&self, k: u32) -> u32 {
        self.alpha + self.beta + k * self.gamma
    }

    /// Ordinary total degree.
    pub fn degree(&self) -> u32 {
        self.alpha + self.beta + self.gamma
    }

    /// Index of the conjugate monomial.
    pub fn conj(&self) -> Self {
        Self::new(self.beta, self.alpha, self.gamma)
    }

    pub fn is_harmonic(&self) -> bool {
        self.gamma == 0 && (self.alpha == 0) != (self.beta == 0)
    }

    /// Sort key for the inverse lexicographic order: `gamma` first, then `beta`, then `alpha`.
    pub fn inverse_lex_key(&self) -> (u32, u32, u32) {
        (self.gamma, self.beta, self.alpha)
    }

    fn add(&self, o: &Self) -> Self {
        Self::new(
            self.alpha + o.alpha,
            self.beta + o.beta,
            self.gamma + o.gamma,
        )
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.alpha, self.beta, self.gamma)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct WeightedSeries {
    k: u32,
    trunc: u32,
    coeffs: BTreeMap<MultiIndex, GaussianRational>,
}

impl WeightedSeries {
    pub fn zero(k: u32, trunc: u32) -> Self {
        assert!(k >= 1, "grading parameter must be positive");
        Self {
            k,
            trunc,
            coeffs: BTreeMap::new(),
        }
    }

    /// Builds a series from raw terms: terms above the truncation weight are dropped,
    /// duplicates summed and zeros pruned.
    pub fn from_terms<I>(terms: I, k: u32, trunc: u32) -> Result<Self>
    where
        I: IntoIterator<Item = ([i64; 3], GaussianRational)>,
    {
        if k == 0 || trunc == 0 {
            return Err(CrError::InvalidGrading { k, w: trunc });
        }
        let mut s = Self::zero(k, trunc);
        for ([a, b, c], coeff) in terms {
            let idx = MultiIndex::try_from_signed(a, b, c)?;
            s.add_term(idx, &coeff);
        }
        Ok(s)
    }

    pub fn monomial(idx: MultiIndex, coeff: GaussianRational, k: u32, trunc: u32) -> Self {
        let mut s = Self::zero(k, trunc);
        s.add_term(idx, &coeff);
        s
    }

    pub fn one(k: u32, trunc: u32) -> Self {
        Self::monomial(MultiIndex::new(0, 0, 0), GaussianRational::one(), k, trunc)
    }

    pub fn z(k: u32, trunc: u32) -> Self {
        Self::monomial(MultiIndex::new(1, 0, 0), GaussianRational::one(), k, trunc)
    }

    pub fn zb(k: u32, trunc: u32) -> Self {
        Self::monomial(MultiIndex::new(0, 1, 0), GaussianRational::one(), k, trunc)
    }

    pub fn u(k: u32, trunc: u32) -> Self {
        Self::monomial(MultiIndex::new(0, 0, 1), GaussianRational::one(), k, trunc)
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, idx: &MultiIndex) -> GaussianRational {
        self.coeffs
            .get(idx)
            .cloned()
            .unwrap_or_else(GaussianRational::zero)
    }

    pub fn get(&self, idx: &MultiIndex) -> Option<&GaussianRational> {
        self.coeffs.get(idx)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &GaussianRational)> {
        self.coeffs.iter()
    }

    pub fn weight(&self, idx: &MultiIndex) -> u32 {
        idx.weight(self.k)
    }

    /// Adds `c` to the coefficient of `idx`, respecting truncation and pruning zeros.
    pub fn add_term(&mut self, idx: MultiIndex, c: &GaussianRational) {
        if c.is_zero() || idx.weight(self.k) > self.trunc {
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

    pub fn set_term(&mut self, idx: MultiIndex, c: GaussianRational) {
        if idx.weight(self.k) > self.trunc {
            return;
        }
        if c.is_zero() {
            self.coeffs.remove(&idx);
        } else {
            self.coeffs.insert(idx, c);
        }
    }

    /// Lowest weight of a stored term.
    pub fn min_weight(&self) -> Option<u32> {
        self.coeffs.keys().map(|i| i.weight(self.k)).min()
    }

    pub fn truncate(&self, trunc: u32) -> Self {
        let trunc = trunc.min(self.trunc);
        Self {
            k: self.k,
            trunc,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(i, _)| i.weight(self.k) <= trunc)
                .map(|(i, c)| (*i, c.clone()))
                .collect(),
        }
    }

    /// Keeps only the terms of weight exactly `nu`.
    pub fn weight_part(&self, nu: u32) -> Self {
        self.filter(|i| i.weight(self.k) == nu)
    }

    pub fn filter(&self, mut keep: impl FnMut(&MultiIndex) -> bool) -> Self {
        Self {
            k: self.k,
            trunc: self.trunc,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(i, _)| keep(i))
                .map(|(i, c)| (*i, c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, s: &GaussianRational) -> Self {
        let mut out = Self::zero(self.k, self.trunc);
        for (i, c) in &self.coeffs {
            out.add_term(*i, &(c * s));
        }
        out
    }

    pub fn scale_rational(&self, s: &Rational) -> Self {
        self.scale(&GaussianRational::real(s.clone()))
    }

    /// Coefficient at `(a, b, c)` of the result is the conjugate of the input's
    /// coefficient at `(b, a, c)`.
    pub fn conjugate(&self) -> Self {
        Self {
            k: self.k,
            trunc: self.trunc,
            coeffs: self
                .coeffs
                .iter()
                .map(|(i, c)| (i.conj(), c.conj()))
                .collect(),
        }
    }

    pub fn is_real(&self) -> bool {
        self.coeffs
            .iter()
            .all(|(i, c)| self.coeffs.get(&i.conj()).is_some_and(|d| *d == c.conj()))
    }

    /// Conjugate pairs violating reality, each reported once.
    pub fn reality_violations(&self) -> Vec<(MultiIndex, MultiIndex)> {
        let mut out = Vec::new();
        for (i, c) in &self.coeffs {
            let j = i.conj();
            if *i > j {
                continue;
            }
            let d = self.coeff(&j);
            if d != c.conj() {
                out.push((*i, j));
            }
        }
        for i in self.coeffs.keys() {
            let j = i.conj();
            if j < *i && !self.coeffs.contains_key(&j) {
                out.push((j, *i));
            }
        }
        out.sort();
        out
    }

    /// `(a + conj a) / 2`
    pub fn re(&self) -> Self {
        (self + &self.conjugate()).scale_rational(&crate::scalar::rat(1, 2))
    }

    /// `(a - conj a) / (2i)`
    pub fn im(&self) -> Self {
        let half_minus_i = GaussianRational::new(Rational::zero(), crate::scalar::rat(-1, 2));
        (self - &self.conjugate()).scale(&half_minus_i)
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self> {
        self.same_grading(o)?;
        Ok(self + o)
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self> {
        self.same_grading(o)?;
        Ok(self * o)
    }

    pub fn same_grading(&self, o: &Self) -> Result<()> {
        if self.k != o.k {
            return Err(CrError::GradingMismatch(self.k, o.k));
        }
        Ok(())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.k, self.trunc);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Formal composition `self(z_sub, zb_sub, u_sub)`.
    ///
    /// The arguments must have no constant term and `u_sub` no term of weight below
    /// `k`, so the substitution never lowers weight and the result is exact to the
    /// common truncation.
    pub fn substitute(&self, z_sub: &Self, zb_sub: &Self, u_sub: &Self) -> Result<Self> {
        for s in [z_sub, zb_sub, u_sub] {
            self.same_grading(s)?;
        }
        let k = self.k;
        if z_sub.min_weight() == Some(0)
            || zb_sub.min_weight() == Some(0)
            || u_sub.min_weight().is_some_and(|w| w < k)
        {
            return Err(CrError::NotWeightFiltered);
        }
        Ok(Substituter::new(z_sub, zb_sub, u_sub).apply(self))
    }
}

impl fmt::Debug for WeightedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeightedSeries(k={}, W={}) {{", self.k, self.trunc)?;
        for (i, c) in &self.coeffs {
            write!(f, " {i}: {c};")?;
        }
        write!(f, " }}")
    }
}

fn assert_same_k(a: &WeightedSeries, b: &WeightedSeries) {
    assert_eq!(a.k, b.k, "series with different grading parameters");
}

impl Add for &WeightedSeries {
    type Output = WeightedSeries;
    fn add(self, o: &WeightedSeries) -> WeightedSeries {
        assert_same_k(self, o);
        let mut out = self.truncate(o.trunc);
        for (i, c) in &o.coeffs {
            out.add_term(*i, c);
        }
        out
    }
}

impl Sub for &WeightedSeries {
    type Output = WeightedSeries;
    fn sub(self, o: &WeightedSeries) -> WeightedSeries {
        assert_same_k(self, o);
        let mut out = self.truncate(o.trunc);
        for (i, c) in &o.coeffs {
            out.add_term(*i, &-c);
        }
        out
    }
}

impl Neg for &WeightedSeries {
    type Output = WeightedSeries;
    fn neg(self) -> WeightedSeries {
        WeightedSeries {
            k: self.k,
            trunc: self.trunc,
            coeffs: self.coeffs.iter().map(|(i, c)| (*i, -c)).collect(),
        }
    }
}

impl Mul for &WeightedSeries {
    type Output = WeightedSeries;
    fn mul(self, o: &WeightedSeries) -> WeightedSeries {
        assert_same_k(self, o);
        let k = self.k;
        let trunc = self.trunc.min(o.trunc);
        let mut out = WeightedSeries::zero(k, trunc);
        for (i, a) in &self.coeffs {
            let wi = i.weight(k);
            if wi > trunc {
                continue;
            }
            for (j, b) in &o.coeffs {
                if wi + j.weight(k) > trunc {
                    continue;
                }
                out.add_term(i.add(j), &(a * b));
            }
        }
        out
    }
}

macro_rules! forward_series_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for WeightedSeries {
            type Output = WeightedSeries;
            fn $m(self, o: WeightedSeries) -> WeightedSeries {
                (&self).$m(&o)
            }
        }
    };
}
forward_series_owned!(Add, add);
forward_series_owned!(Sub, sub);
forward_series_owned!(Mul, mul);

/// Evaluates series at fixed substitutions `(Z, Zb, U)`, caching monomial images.
///
/// No weight checks are done here; callers that need exactness must ensure the
/// substitution is weight filtered.
pub struct Substituter {
    z: WeightedSeries,
    zb: WeightedSeries,
    u: WeightedSeries,
    cache: HashMap<MultiIndex, WeightedSeries>,
}

impl Substituter {
    pub fn new(z: &WeightedSeries, zb: &WeightedSeries, u: &WeightedSeries) -> Self {
        let trunc = z.trunc.min(zb.trunc).min(u.trunc);
        Self {
            z: z.truncate(trunc),
            zb: zb.truncate(trunc),
            u: u.truncate(trunc),
            cache: HashMap::new(),
        }
    }

    pub fn trunc(&self) -> u32 {
        self.z.trunc
    }

    /// Image of the monomial `z^a zb^b u^c`.
    pub fn image(&mut self, idx: MultiIndex) -> WeightedSeries {
        if let Some(s) = self.cache.get(&idx) {
            return s.clone();
        }
        let out = if idx == MultiIndex::new(0, 0, 0) {
            WeightedSeries::one(self.z.k, self.z.trunc)
        } else if idx.gamma > 0 {
            let prev = self.image(MultiIndex::new(idx.alpha, idx.beta, idx.gamma - 1));
            &prev * &self.u
        } else if idx.beta > 0 {
            let prev = self.image(MultiIndex::new(idx.alpha, idx.beta - 1, 0));
            &prev * &self.zb
        } else {
            let prev = self.image(MultiIndex::new(idx.alpha - 1, 0, 0));
            &prev * &self.z
        };
        self.cache.insert(idx, out.clone());
        out
    }

    pub fn apply(&mut self, f: &WeightedSeries) -> WeightedSeries {
        let trunc = self.trunc().min(f.trunc);
        let mut out = WeightedSeries::zero(f.k, trunc);
        for (i, c) in &f.coeffs {
            let img = self.image(*i);
            for (j, d) in &img.coeffs {
                out.add_term(*j, &(c * d));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn s(terms: &[([i64; 3], i64)], k: u32, w: u32) -> WeightedSeries {
        WeightedSeries::from_terms(
            terms.iter().map(|(i, c)| (*i, GaussianRational::from(*c))),
            k,
            w,
        )
        .unwrap()
    }

    #[test]
    fn make_truncates_sums_and_prunes() {
        let a = s(&[([2, 2, 0], 1)], 4, 16);
        assert_eq!(a.coeff(&MultiIndex::new(2, 2, 0)), GaussianRational::one());
        assert!(s(&[([2, 2, 0], 1), ([2, 2, 0], -1)], 4, 16).is_zero());
        assert!(s(&[([5, 0, 1], 1)], 4, 8).is_zero());
        let err = WeightedSeries::from_terms([([-1, 0, 0], GaussianRational::one())], 4, 8);
        assert!(matches!(err, Err(CrError::NegativeExponent(..))));
    }

    #[test]
    fn add_respects_truncation_and_grading() {
        let a = s(&[([2, 2, 0], 1)], 4, 16);
        assert_eq!(
            (&a + &a).coeff(&MultiIndex::new(2, 2, 0)),
            GaussianRational::from(2)
        );
        assert_eq!(&a + &WeightedSeries::zero(4, 16), a);
        let b = s(&[([2, 2, 0], 1)], 4, 8);
        assert_eq!((&a + &b).trunc(), 8);
        let c = s(&[([2, 2, 0], 1)], 3, 8);
        assert!(matches!(
            a.checked_add(&c),
            Err(CrError::GradingMismatch(4, 3))
        ));
        assert!(a.checked_mul(&c).is_err());
    }

    #[test]
    fn multiplication_examples() {
        let zzb = s(&[([1, 1, 0], 1)], 4, 16);
        assert_eq!(&zzb * &zzb, s(&[([2, 2, 0], 1)], 4, 16));
        let p = s(&[([1, 0, 0], 1), ([0, 1, 0], 1)], 4, 16);
        let m = s(&[([1, 0, 0], 1), ([0, 1, 0], -1)], 4, 16);
        assert_eq!(&p * &m, s(&[([2, 0, 0], 1), ([0, 2, 0], -1)], 4, 16));
        let z2 = s(&[([2, 0, 0], 1)], 2, 3);
        assert!((&z2 * &z2).is_zero());
    }

    #[test]
    fn conjugation_and_reality() {
        let a = WeightedSeries::monomial(MultiIndex::new(2, 1, 0), GaussianRational::i(), 3, 9);
        let b = WeightedSeries::monomial(MultiIndex::new(1, 2, 0), -GaussianRational::i(), 3, 9);
        assert_eq!(a.conjugate(), b);
        let d = s(&[([2, 2, 0], 1)], 4, 16);
        assert_eq!(d.conjugate(), d);
        assert!(s(&[([3, 1, 0], 1), ([1, 3, 0], 1)], 4, 16).is_real());
        assert!(!s(&[([3, 1, 0], 1)], 4, 16).is_real());
        let c = &a + &b;
        assert!(c.is_real());
        assert_eq!(
            s(&[([3, 1, 0], 1)], 4, 16).reality_violations(),
            vec![(MultiIndex::new(1, 3, 0), MultiIndex::new(3, 1, 0))]
        );
    }

    #[test]
    fn substitution_examples() {
        let k = 4;
        let f = s(&[([1, 1, 0], 1)], k, 16);
        let z2 = s(&[([1, 0, 0], 2)], k, 16);
        let zb2 = s(&[([0, 1, 0], 2)], k, 16);
        let u = WeightedSeries::u(k, 16);
        assert_eq!(
            f.substitute(&z2, &zb2, &u).unwrap(),
            s(&[([1, 1, 0], 4)], k, 16)
        );

        let fu = s(&[([0, 0, 1], 1)], k, 16);
        let shifted = s(&[([0, 0, 1], 1), ([2, 2, 0], 1)], k, 16);
        let got = fu
            .substitute(
                &WeightedSeries::z(k, 16),
                &WeightedSeries::zb(k, 16),
                &shifted,
            )
            .unwrap();
        assert_eq!(got, shifted);

        // hand multiplication: (z + z^2)(zb + zb^2)
        let z = s(&[([1, 0, 0], 1), ([2, 0, 0], 1)], k, 16);
        let zb = s(&[([0, 1, 0], 1), ([0, 2, 0], 1)], k, 16);
        let want = s(
            &[
                ([1, 1, 0], 1),
                ([2, 1, 0], 1),
                ([1, 2, 0], 1),
                ([2, 2, 0], 1),
            ],
            k,
            16,
        );
        assert_eq!(f.substitute(&z, &zb, &u).unwrap(), want);

        let bad = s(&[([0, 0, 0], 1), ([1, 0, 0], 1)], k, 16);
        assert!(matches!(
            f.substitute(&bad, &zb, &u),
            Err(CrError::NotWeightFiltered)
        ));
        let low_u = s(&[([0, 0, 1], 1), ([2, 0, 0], 1)], k, 16);
        assert!(f.substitute(&z, &zb, &low_u).is_err());
    }

    #[test]
    fn weight_parts_partition() {
        let a = s(&[([2, 2, 0], 1), ([6, 2, 0], 1)], 4, 16);
        assert_eq!(a.weight_part(8), s(&[([6, 2, 0], 1)], 4, 16));
        assert!(a.weight_part(5).is_zero());
        let mut sum = WeightedSeries::zero(4, 16);
        for nu in 0..=16 {
            sum = &sum + &a.weight_part(nu);
        }
        assert_eq!(sum, a);
    }

    #[test]
    fn real_and_imaginary_parts() {
        let c = GaussianRational::new(int(2), int(5));
        let a = WeightedSeries::monomial(MultiIndex::new(3, 0, 0), c.clone(), 4, 16);
        let half = crate::scalar::rat(1, 2);
        let mut want_re = WeightedSeries::zero(4, 16);
        want_re.add_term(MultiIndex::new(3, 0, 0), &c.scale(&half));
        want_re.add_term(MultiIndex::new(0, 3, 0), &c.conj().scale(&half));
        assert_eq!(a.re(), want_re);
        assert!(a.im().is_real());
        // a = re(a) + i im(a) only holds on the holomorphic half, so compare z^3 slots
        let recombined = &a.re() + &a.im().scale(&GaussianRational::i());
        assert_eq!(recombined.coeff(&MultiIndex::new(3, 0, 0)), c);
    }
}
