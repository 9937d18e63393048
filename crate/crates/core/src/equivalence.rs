//! Deciding whether two normalized surfaces differ by a diagonal linear map.
//!
//! A map `z* = c z`, `w* = lambda w` sends the coefficient `a` at
//! `(alpha, beta, gamma)` to `a* = a c^-alpha cb^-beta lambda^(1-gamma)`. With
//! `X = |lambda|`, `Y = |c|`, `c = Y e^{i theta}` and `sigma = sign lambda`,
//! each common support index gives
//!
//! ```text
//! a*/a = X^d Y^e e^{i phi theta} sigma^s,  d = 1-gamma, e = -(alpha+beta), phi = beta-alpha, s = 1-gamma
//! ```
//!
//! The moduli are settled in the divisible group of positive reals by integer
//! kernel vectors; the phases by the same method on squared unit ratios,
//! followed by a finite sign resolution. Everything stays in `Q(i)`.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{CrError, Result};
use crate::lattice::{kernel_lattice, power_obstruction};
use crate::normalform::{check_normal_form, normalize, prepare, special_defect, special_normalize};
use crate::scalar::{rational_nth_root, rational_pow, GaussianRational, Phase, Rational};
use crate::series::MultiIndex;
use crate::surface::{anchor_index, model_of, Hypersurface};
use crate::transform::diagonal_pushforward;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterRow {
    pub idx: MultiIndex,
    /// Exponent of `|lambda|`.
    pub d: i64,
    /// Exponent of `|c|`.
    pub e: i64,
    /// Exponent of `e^{i theta}`.
    pub phi: i64,
    /// Exponent of `sign lambda` (mod 2).
    pub s: i64,
    /// `b_idx / a_idx`.
    pub ratio: GaussianRational,
}

impl CharacterRow {
    fn new(idx: MultiIndex, ratio: GaussianRational) -> Self {
        let d = 1 - idx.gamma as i64;
        Self {
            idx,
            d,
            e: -((idx.alpha + idx.beta) as i64),
            phi: idx.beta as i64 - idx.alpha as i64,
            s: d.rem_euclid(2),
            ratio,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Equivalent,
    Inequivalent,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Equivalent => "equivalent",
            Verdict::Inequivalent => "inequivalent",
        })
    }
}

/// `X^x_exp Y^y_exp = value` with `X = |lambda|`, `Y = |c|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModulusRelation {
    pub x_exp: i64,
    pub y_exp: i64,
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PhaseWitness {
    /// No row constrains `theta`.
    Free,
    /// `e^{i period theta} = direction / |direction|`.
    Determined {
        period: u32,
        direction: GaussianRational,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub lambda_sign: i8,
    pub phase: PhaseWitness,
    /// `e^{i theta}` as an exact token, when it is a root of unity.
    pub theta: Option<Phase>,
    pub relations: Vec<ModulusRelation>,
    pub lambda_abs: Option<Rational>,
    pub c_abs: Option<Rational>,
    /// Result of re-checking the witness by exact pushforward, when the map has
    /// rational moduli and a Gaussian rational phase.
    pub pushforward_verified: Option<bool>,
}

impl Witness {
    /// The witness map as `(c, lambda)` when it lies over `Q(i)`.
    pub fn exact_map(&self) -> Option<(GaussianRational, Rational)> {
        let phase = match &self.phase {
            PhaseWitness::Free => GaussianRational::one(),
            PhaseWitness::Determined { .. } => self.theta.as_ref()?.to_gaussian()?,
        };
        let c = phase.scale(self.c_abs.as_ref()?);
        let lambda = self.lambda_abs.clone()? * Rational::from_integer(self.lambda_sign.into());
        Some((c, lambda))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Refutation {
    DifferentType {
        k_a: u32,
        k_b: u32,
    },
    /// One surface has a circular model and the other does not.
    ModelMismatch,
    /// The coefficient at `idx` vanishes on exactly one side.
    SupportMismatch(MultiIndex),
    /// A kernel vector of the modulus exponents whose product of squared moduli ratios is not one.
    ModulusKernel {
        vector: Vec<i64>,
        product: Rational,
    },
    /// A kernel vector of the phase exponents whose product of squared unit ratios is not one.
    PhaseKernel {
        vector: Vec<i64>,
        product: GaussianRational,
    },
    /// The squared phase system is solvable but no choice of signs is.
    PhaseSign,
}

impl fmt::Display for Refutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Refutation::DifferentType { k_a, k_b } => write!(f, "different types {k_a} and {k_b}"),
            Refutation::ModelMismatch => write!(f, "only one model is circular"),
            Refutation::SupportMismatch(i) => {
                write!(f, "coefficient at {i} vanishes on one side only")
            }
            Refutation::ModulusKernel { vector, product } => {
                write!(
                    f,
                    "modulus kernel vector {vector:?} has product {product} != 1"
                )
            }
            Refutation::PhaseKernel { vector, product } => {
                write!(
                    f,
                    "phase kernel vector {vector:?} has product {product} != 1"
                )
            }
            Refutation::PhaseSign => write!(f, "no sign choice solves the phase equations"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceCertificate {
    pub verdict: Verdict,
    pub rows: Vec<CharacterRow>,
    pub witness: Option<Witness>,
    pub refutation: Option<Refutation>,
    /// Verdict concerns linear maps between model surfaces only.
    pub linear_only: bool,
    /// `mu` could not be pinned down because the truncation stops before the
    /// weight where it acts; the comparison is exact up to that truncation.
    pub mu_within_truncation: bool,
}

impl EquivalenceCertificate {
    fn refuted(rows: Vec<CharacterRow>, r: Refutation) -> Self {
        Self {
            verdict: Verdict::Inequivalent,
            rows,
            witness: None,
            refutation: Some(r),
            linear_only: false,
            mu_within_truncation: false,
        }
    }
}

fn rows_of(
    a: &Hypersurface,
    b: &Hypersurface,
) -> std::result::Result<Vec<CharacterRow>, MultiIndex> {
    let (sa, sb) = (a.series(), b.series());
    let mut all: Vec<MultiIndex> = sa.terms().chain(sb.terms()).map(|(i, _)| *i).collect();
    all.sort_by_key(|i| (i.weight(a.k()), i.inverse_lex_key()));
    all.dedup();
    let mut rows = Vec::new();
    for idx in all {
        match (sa.get(&idx), sb.get(&idx)) {
            (Some(x), Some(y)) => rows.push(CharacterRow::new(idx, y / x)),
            _ => return Err(idx),
        }
    }
    Ok(rows)
}

fn unit_square(t: &GaussianRational) -> GaussianRational {
    (t * t).scale(&t.norm_sq().recip())
}

fn gaussian_pow(x: &GaussianRational, e: i64) -> GaussianRational {
    x.pow(e)
}

fn is_positive_real(x: &GaussianRational) -> bool {
    x.im.is_zero() && x.re.is_positive()
}

/// A Gaussian rational in the direction of a square root of the unit `omega`.
fn sqrt_direction(omega: &GaussianRational) -> GaussianRational {
    let shifted = omega + &GaussianRational::one();
    if shifted.is_zero() {
        GaussianRational::i()
    } else {
        shifted
    }
}

/// The Gaussian integer with coprime parts on the same ray as `v`.
fn primitive(v: &GaussianRational) -> GaussianRational {
    let l = v.re.denom().lcm(v.im.denom());
    let (a, b) = ((&v.re * &l).to_integer(), (&v.im * &l).to_integer());
    let g = a.gcd(&b);
    GaussianRational::new(
        Rational::from_integer(a / &g),
        Rational::from_integer(b / &g),
    )
}

/// `e^{2 pi i a / 8}` when `v / |v|` is an eighth root of unity.
fn eighth_root_step(v: &GaussianRational) -> Option<i64> {
    let (re, im) = (&v.re, &v.im);
    let step = if im.is_zero() {
        if re.is_positive() {
            0
        } else {
            4
        }
    } else if re.is_zero() {
        if im.is_positive() {
            2
        } else {
            6
        }
    } else if re.abs() == im.abs() {
        match (re.is_positive(), im.is_positive()) {
            (true, true) => 1,
            (false, true) => 3,
            (false, false) => 5,
            (true, false) => 7,
        }
    } else {
        return None;
    };
    Some(step)
}

/// Extended gcd coefficients: `sum m_i x_i = gcd(x)`.
fn bezout(xs: &[i64]) -> (i64, Vec<i64>) {
    let mut g = 0i64;
    let mut coeffs: Vec<i64> = Vec::with_capacity(xs.len());
    for &x in xs {
        let e = g.extended_gcd(&x);
        let (mut ng, mut a, mut b) = (e.gcd, e.x, e.y);
        if ng < 0 {
            ng = -ng;
            a = -a;
            b = -b;
        }
        for c in coeffs.iter_mut() {
            *c *= a;
        }
        coeffs.push(b);
        g = ng;
    }
    (g, coeffs)
}

fn solve_phase(rows: &[CharacterRow], sigma: i64) -> Option<PhaseWitness> {
    let t: Vec<GaussianRational> = rows
        .iter()
        .map(|r| {
            if sigma < 0 && r.s == 1 {
                -r.ratio.clone()
            } else {
                r.ratio.clone()
            }
        })
        .collect();
    let fixed: Vec<usize> = (0..rows.len()).filter(|&i| rows[i].phi == 0).collect();
    if fixed.iter().any(|&i| !is_positive_real(&t[i])) {
        return None;
    }
    let moving: Vec<usize> = (0..rows.len()).filter(|&i| rows[i].phi != 0).collect();
    if moving.is_empty() {
        return Some(PhaseWitness::Free);
    }
    let phis: Vec<i64> = moving.iter().map(|&i| rows[i].phi).collect();
    let (g, m) = bezout(&phis);
    let omega = moving
        .iter()
        .zip(&m)
        .fold(GaussianRational::one(), |acc, (&i, &mi)| {
            &acc * &gaussian_pow(&unit_square(&t[i]), mi)
        });
    let q: Vec<i64> = phis.iter().map(|p| p / g).collect();
    // Squared system; failures here are caught earlier as kernel obstructions.
    if moving
        .iter()
        .zip(&q)
        .any(|(&i, &qi)| gaussian_pow(&omega, qi) != unit_square(&t[i]))
    {
        return None;
    }
    let reduce = |i: usize, qi: i64| -> GaussianRational {
        &t[i] * &gaussian_pow(&omega, -qi.div_euclid(2))
    };
    let odd: Vec<(usize, i64)> = moving
        .iter()
        .zip(&q)
        .filter(|(_, qi)| qi.is_odd())
        .map(|(&i, &qi)| (i, qi))
        .collect();
    let even_ok = moving
        .iter()
        .zip(&q)
        .filter(|(_, qi)| qi.is_even())
        .all(|(&i, &qi)| is_positive_real(&reduce(i, qi)));
    if !even_ok {
        return None;
    }
    let direction = match odd.first() {
        None => sqrt_direction(&omega),
        Some(&(i0, q0)) => {
            let v = reduce(i0, q0);
            let aligned = odd
                .iter()
                .all(|&(i, qi)| is_positive_real(&(&reduce(i, qi) * &v.conj())));
            if !aligned {
                return None;
            }
            v
        }
    };
    Some(PhaseWitness::Determined {
        period: g as u32,
        direction: primitive(&direction),
    })
}

fn phase_kernel_obstruction(rows: &[CharacterRow]) -> Option<Refutation> {
    let col: Vec<Vec<i64>> = rows.iter().map(|r| vec![r.phi]).collect();
    let w: Vec<GaussianRational> = rows.iter().map(|r| unit_square(&r.ratio)).collect();
    kernel_lattice(&col).into_iter().find_map(|n| {
        let p = w
            .iter()
            .zip(&n)
            .fold(GaussianRational::one(), |acc, (x, &e)| {
                &acc * &gaussian_pow(x, e)
            });
        (!p.is_one()).then_some(Refutation::PhaseKernel {
            vector: n,
            product: p,
        })
    })
}

fn modulus_witness(
    rows: &[CharacterRow],
) -> (Vec<ModulusRelation>, Option<Rational>, Option<Rational>) {
    let n: Vec<Rational> = rows.iter().map(|r| r.ratio.norm_sq()).collect();
    let Some(i0) = rows.iter().position(|r| r.d != 0 || r.e != 0) else {
        return (Vec::new(), Some(Rational::one()), Some(Rational::one()));
    };
    let r0 = &rows[i0];
    let second = rows.iter().position(|r| r0.d * r.e - r.d * r0.e != 0);
    let rel = |i: usize| ModulusRelation {
        x_exp: 2 * rows[i].d,
        y_exp: 2 * rows[i].e,
        value: n[i].clone(),
    };
    match second {
        None => {
            let g = r0.d.gcd(&r0.e);
            let (a, b) = (r0.d / g, r0.e / g);
            // X^a Y^b = N0^(1/(2g))
            let q = rational_nth_root(&n[i0], (2 * g.abs()) as u32).map(|q| {
                if g < 0 {
                    q.recip()
                } else {
                    q
                }
            });
            let (x, y) = match q {
                Some(q) if a != 0 => {
                    let base = if a < 0 { q.recip() } else { q };
                    (
                        rational_nth_root(&base, a.unsigned_abs() as u32),
                        Some(Rational::one()),
                    )
                }
                Some(q) => {
                    let base = if b < 0 { q.recip() } else { q };
                    (
                        Some(Rational::one()),
                        rational_nth_root(&base, b.unsigned_abs() as u32),
                    )
                }
                None => (None, None),
            };
            (vec![rel(i0)], x, y)
        }
        Some(i1) => {
            let r1 = &rows[i1];
            let det = r0.d * r1.e - r1.d * r0.e;
            // X^(2 det) = N0^e1 / N1^e0, Y^(2 det) = N1^d0 / N0^d1
            let xv = rational_pow(&n[i0], r1.e) / rational_pow(&n[i1], r0.e);
            let yv = rational_pow(&n[i1], r0.d) / rational_pow(&n[i0], r1.d);
            let root = |v: Rational| {
                let v = if det < 0 { v.recip() } else { v };
                rational_nth_root(&v, (2 * det.abs()) as u32)
            };
            (vec![rel(i0), rel(i1)], root(xv), root(yv))
        }
    }
}

fn theta_token(phase: &PhaseWitness) -> Option<Phase> {
    match phase {
        PhaseWitness::Free => Some(Phase::one()),
        PhaseWitness::Determined { period, direction } => {
            let a = eighth_root_step(direction)?;
            Some(Phase::root(8 * period, a))
        }
    }
}

fn is_special_normalized(m: &Hypersurface) -> Result<bool> {
    if !check_normal_form(m)? {
        return Ok(false);
    }
    let Ok(anchor) = anchor_index(m) else {
        return Ok(true);
    };
    if anchor.p + m.k() > m.trunc() {
        return Ok(true);
    }
    Ok(special_defect(m, &anchor).is_zero())
}

/// Decides whether `b = pushforward(a, z -> c z, w -> lambda w)` for some
/// `c != 0` and real `lambda` (negative only for odd `k`), comparing up to the
/// common truncation.
pub fn linear_equivalent(a: &Hypersurface, b: &Hypersurface) -> Result<EquivalenceCertificate> {
    if a.k() != b.k() {
        return Ok(EquivalenceCertificate::refuted(
            Vec::new(),
            Refutation::DifferentType {
                k_a: a.k(),
                k_b: b.k(),
            },
        ));
    }
    let (ia, ib) = (model_of(a), model_of(b));
    if ia.circular != ib.circular {
        return Ok(EquivalenceCertificate::refuted(
            Vec::new(),
            Refutation::ModelMismatch,
        ));
    }
    if ia.circular && !(is_special_normalized(a)? && is_special_normalized(b)?) {
        return Err(CrError::NotSpecialNormalized);
    }
    let trunc = a.trunc().min(b.trunc());
    let (a, b) = (a.truncate(trunc), b.truncate(trunc));
    let k = a.k();
    let linear_only = !ia.circular;
    let rows = match rows_of(&a, &b) {
        Ok(r) => r,
        Err(idx) => {
            return Ok(EquivalenceCertificate::refuted(
                Vec::new(),
                Refutation::SupportMismatch(idx),
            ))
        }
    };
    let values: Vec<Rational> = rows.iter().map(|r| r.ratio.norm_sq()).collect();
    let exps: Vec<Vec<i64>> = rows.iter().map(|r| vec![2 * r.d, 2 * r.e]).collect();
    let finish = |mut c: EquivalenceCertificate| {
        c.linear_only = linear_only;
        c
    };
    if let Some((vector, product)) = power_obstruction(&values, &exps) {
        return Ok(finish(EquivalenceCertificate::refuted(
            rows,
            Refutation::ModulusKernel { vector, product },
        )));
    }
    if let Some(r) = phase_kernel_obstruction(&rows) {
        return Ok(finish(EquivalenceCertificate::refuted(rows, r)));
    }
    let signs: &[i64] = if k % 2 == 1 { &[1, -1] } else { &[1] };
    let Some((sigma, phase)) = signs
        .iter()
        .find_map(|&s| solve_phase(&rows, s).map(|p| (s, p)))
    else {
        return Ok(finish(EquivalenceCertificate::refuted(
            rows,
            Refutation::PhaseSign,
        )));
    };
    let (relations, lambda_abs, c_abs) = modulus_witness(&rows);
    let mut witness = Witness {
        lambda_sign: sigma as i8,
        theta: theta_token(&phase),
        phase,
        relations,
        lambda_abs,
        c_abs,
        pushforward_verified: None,
    };
    if let Some((c, lambda)) = witness.exact_map() {
        witness.pushforward_verified = Some(diagonal_pushforward(&a, &c, &lambda) == b);
    }
    Ok(finish(EquivalenceCertificate {
        verdict: Verdict::Equivalent,
        rows,
        witness: Some(witness),
        refutation: None,
        linear_only,
        mu_within_truncation: false,
    }))
}

/// The normalized representative used for comparisons, and whether `mu` was
/// left undetermined by the truncation.
pub fn special_representative(m: &Hypersurface) -> Result<(Hypersurface, bool)> {
    let nf = normalize(m)?.nf;
    match special_normalize(&nf) {
        Ok((s, _)) => Ok((s, false)),
        Err(CrError::ModelSurface) => Ok((nf, false)),
        Err(CrError::TruncationTooLow { .. }) => Ok((nf, true)),
        Err(e) => Err(e),
    }
}

/// Full pipeline on two defining functions: prepare, normalize, fix `mu`, compare.
pub fn equivalent(
    a: &crate::series::WeightedSeries,
    b: &crate::series::WeightedSeries,
) -> Result<EquivalenceCertificate> {
    let pa = prepare(a)?.surface;
    let pb = prepare(b)?.surface;
    if pa.k() != pb.k() {
        return Ok(EquivalenceCertificate::refuted(
            Vec::new(),
            Refutation::DifferentType {
                k_a: pa.k(),
                k_b: pb.k(),
            },
        ));
    }
    let trunc = pa.trunc().min(pb.trunc());
    let (pa, pb) = (pa.truncate(trunc), pb.truncate(trunc));
    let (ca, cb) = (model_of(&pa).circular, model_of(&pb).circular);
    if ca != cb {
        return Ok(EquivalenceCertificate::refuted(
            Vec::new(),
            Refutation::ModelMismatch,
        ));
    }
    if !ca {
        if pa.is_model() && pb.is_model() {
            return linear_equivalent(&pa, &pb);
        }
        return Err(CrError::OutOfScope(
            "normal form for models other than |z|^k is not available".into(),
        ));
    }
    let (sa, ua) = special_representative(&pa)?;
    let (sb, ub) = special_representative(&pb)?;
    let mut cert = linear_equivalent(&sa, &sb)?;
    cert.mu_within_truncation = ua || ub;
    Ok(cert)
}

/// Re-checks a certificate produced by [`linear_equivalent`] for the same pair.
pub fn verify_certificate(
    a: &Hypersurface,
    b: &Hypersurface,
    cert: &EquivalenceCertificate,
) -> Result<bool> {
    if let Some(Refutation::DifferentType { k_a, k_b }) = &cert.refutation {
        return Ok(*k_a == a.k() && *k_b == b.k() && k_a != k_b);
    }
    if a.k() != b.k() {
        return Ok(false);
    }
    let trunc = a.trunc().min(b.trunc());
    let (a, b) = (a.truncate(trunc), b.truncate(trunc));
    match (&cert.verdict, &cert.refutation, &cert.witness) {
        (Verdict::Inequivalent, Some(Refutation::ModelMismatch), _) => {
            Ok(model_of(&a).circular != model_of(&b).circular)
        }
        (Verdict::Inequivalent, Some(Refutation::SupportMismatch(idx)), _) => {
            Ok(a.series().get(idx).is_some() != b.series().get(idx).is_some())
        }
        (Verdict::Inequivalent, Some(Refutation::ModulusKernel { vector, product }), _) => {
            let rows = match rows_of(&a, &b) {
                Ok(r) => r,
                Err(_) => return Ok(false),
            };
            let in_kernel = (0..2).all(|c| {
                rows.iter()
                    .zip(vector)
                    .map(|(r, n)| n * 2 * if c == 0 { r.d } else { r.e })
                    .sum::<i64>()
                    == 0
            });
            let values: Vec<Rational> = rows.iter().map(|r| r.ratio.norm_sq()).collect();
            let p = crate::lattice::power_product(&values, vector);
            Ok(in_kernel && p == *product && !p.is_one())
        }
        (Verdict::Inequivalent, Some(Refutation::PhaseKernel { vector, product }), _) => {
            let rows = match rows_of(&a, &b) {
                Ok(r) => r,
                Err(_) => return Ok(false),
            };
            let in_kernel = rows.iter().zip(vector).map(|(r, n)| n * r.phi).sum::<i64>() == 0;
            let p = rows
                .iter()
                .zip(vector)
                .fold(GaussianRational::one(), |acc, (r, &e)| {
                    &acc * &gaussian_pow(&unit_square(&r.ratio), e)
                });
            Ok(in_kernel && p == *product && !p.is_one())
        }
        (Verdict::Inequivalent, Some(Refutation::PhaseSign), _) => {
            let fresh = linear_equivalent(&a, &b)?;
            Ok(fresh.refutation == Some(Refutation::PhaseSign))
        }
        (Verdict::Equivalent, None, Some(w)) => {
            let rows = match rows_of(&a, &b) {
                Ok(r) => r,
                Err(_) => return Ok(false),
            };
            if let Some((c, lambda)) = w.exact_map() {
                return Ok(diagonal_pushforward(&a, &c, &lambda) == b);
            }
            let values: Vec<Rational> = rows.iter().map(|r| r.ratio.norm_sq()).collect();
            let exps: Vec<Vec<i64>> = rows.iter().map(|r| vec![2 * r.d, 2 * r.e]).collect();
            if power_obstruction(&values, &exps).is_some() {
                return Ok(false);
            }
            let relations_hold = w.relations.iter().all(|rel| {
                rows.iter()
                    .zip(&values)
                    .any(|(r, v)| 2 * r.d == rel.x_exp && 2 * r.e == rel.y_exp && *v == rel.value)
            });
            Ok(relations_hold && check_phase_witness(&rows, w))
        }
        _ => Ok(false),
    }
}

fn check_phase_witness(rows: &[CharacterRow], w: &Witness) -> bool {
    rows.iter().all(|r| {
        let t = if w.lambda_sign < 0 && r.s == 1 {
            -r.ratio.clone()
        } else {
            r.ratio.clone()
        };
        match &w.phase {
            PhaseWitness::Free => r.phi == 0 && is_positive_real(&t),
            PhaseWitness::Determined { period, direction } => {
                let g = *period as i64;
                if r.phi % g != 0 {
                    return false;
                }
                // direction^q and t must point the same way.
                let q = r.phi / g;
                let dq = gaussian_pow(direction, q);
                is_positive_real(&(&dq * &t.conj()))
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_surface;
    use crate::scalar::int;
    use crate::surface::validate_surface;

    fn series(text: &str, w: u32) -> crate::series::WeightedSeries {
        parse_surface(text, Some(w), None).unwrap().1
    }

    fn surf(text: &str, w: u32) -> Hypersurface {
        validate_surface(&series(text, w)).unwrap()
    }

    #[test]
    fn bezout_coefficients() {
        let (g, m) = bezout(&[-4, 6, 10]);
        assert_eq!(g, 2);
        assert_eq!(-4 * m[0] + 6 * m[1] + 10 * m[2], 2);
        let (g, m) = bezout(&[-4]);
        assert_eq!((g, -4 * m[0]), (4, 4));
    }

    #[test]
    fn eighth_roots() {
        assert_eq!(eighth_root_step(&GaussianRational::from(-3)), Some(4));
        assert_eq!(
            eighth_root_step(&GaussianRational::from_ints(2, -2)),
            Some(7)
        );
        assert_eq!(eighth_root_step(&GaussianRational::from_ints(3, 4)), None);
    }

    #[test]
    fn reflexive_with_identity_witness() {
        let a = surf("z^2*zb^2 + z^5*zb^3 + z^3*zb^5", 16);
        let c = linear_equivalent(&a, &a).unwrap();
        assert_eq!(c.verdict, Verdict::Equivalent);
        let w = c.witness.unwrap();
        assert_eq!(w.pushforward_verified, Some(true));
    }

    #[test]
    fn modulus_obstruction() {
        let a = surf("z^2*zb^2 + z^5*zb^3 + z^3*zb^5 + z^7*zb^3 + z^3*zb^7", 16);
        let b = surf(
            "z^2*zb^2 + z^5*zb^3 + z^3*zb^5 + 2*z^7*zb^3 + 2*z^3*zb^7",
            16,
        );
        let c = linear_equivalent(&a, &b).unwrap();
        assert_eq!(c.verdict, Verdict::Inequivalent);
        assert!(matches!(
            c.refutation,
            Some(Refutation::ModulusKernel { .. })
        ));
        assert!(verify_certificate(&a, &b, &c).unwrap());
    }

    #[test]
    fn rational_dilation_found() {
        let a = surf("z^2*zb^2 + z^5*zb^3 + z^3*zb^5", 16);
        let b = diagonal_pushforward(&a, &GaussianRational::from(2), &int(16));
        let c = linear_equivalent(&a, &b).unwrap();
        let w = c.witness.clone().unwrap();
        assert_eq!((w.lambda_abs, w.c_abs), (Some(int(16)), Some(int(2))));
        assert_eq!(w.pushforward_verified, Some(true));
        assert!(verify_certificate(&a, &b, &c).unwrap());
    }

    #[test]
    fn phase_eighth_root_witness() {
        let a = surf("z^2*zb^2 + z^5*zb^3 + z^3*zb^5 + z^3*zb^3*u", 24);
        let b = surf("z^2*zb^2 + (i)*z^5*zb^3 - (i)*z^3*zb^5 + z^3*zb^3*u", 24);
        let c = linear_equivalent(&a, &b).unwrap();
        assert_eq!(c.verdict, Verdict::Equivalent);
        let w = c.witness.clone().unwrap();
        // e^{2 i theta} = -i; either square root works since every phi is even.
        assert_eq!(w.theta, Some(Phase::root(8, 3)));
        assert_eq!(w.pushforward_verified, None);
        assert!(verify_certificate(&a, &b, &c).unwrap());
    }

    #[test]
    fn support_mismatch() {
        let a = surf("z^2*zb^2 + z^5*zb^3 + z^3*zb^5", 16);
        let b = surf("z^2*zb^2 + z^7*zb^3 + z^3*zb^7", 16);
        let c = linear_equivalent(&a, &b).unwrap();
        assert_eq!(
            c.refutation,
            Some(Refutation::SupportMismatch(MultiIndex::new(5, 3, 0)))
        );
    }

    #[test]
    fn phase_obstruction_without_roots_of_unity() {
        // (3+4i)/5 is not a root of unity, so the witness is lattice-only.
        let a = surf("z^2*zb^2 + z^5*zb^3 + z^3*zb^5", 16);
        let b = surf("z^2*zb^2 + (3/5+4/5i)*z^5*zb^3 + (3/5-4/5i)*z^3*zb^5", 16);
        let c = linear_equivalent(&a, &b).unwrap();
        assert_eq!(c.verdict, Verdict::Equivalent);
        assert_eq!(c.witness.as_ref().unwrap().theta, None);
        assert!(verify_certificate(&a, &b, &c).unwrap());
    }

    #[test]
    fn odd_type_models_use_negative_lambda() {
        let a = surf("z^4*zb + z*zb^4", 20);
        let b = surf("-z^4*zb - z*zb^4", 20);
        let c = linear_equivalent(&a, &b).unwrap();
        assert_eq!(c.verdict, Verdict::Equivalent);
        assert!(c.linear_only);
    }

    #[test]
    fn pipeline_examples() {
        let c = equivalent(
            &series("z^2*zb^2", 16),
            &series("z^2*zb^2 + z^5 + zb^5", 16),
        )
        .unwrap();
        assert_eq!(c.verdict, Verdict::Equivalent);
        let c = equivalent(
            &series("z^2*zb^2 + z^6*zb^2 + z^2*zb^6", 16),
            &series("z^2*zb^2 + z^7*zb^3 + z^3*zb^7", 16),
        )
        .unwrap();
        assert_eq!(c.verdict, Verdict::Inequivalent);
        let c = equivalent(&series("z^2*zb^2", 16), &series("z^3*zb + z*zb^3", 16)).unwrap();
        assert_eq!(c.refutation, Some(Refutation::ModelMismatch));
    }
}
