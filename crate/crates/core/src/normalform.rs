//! Normal form for surfaces whose model is the circular model `v = |z|^k`.
//!
//! Writing the perturbation `N = F - |z|^k` as `sum Z_ij(u) z^i zb^j`, the
//! normal form requires the slices
//!
//! * `Z_j0` and `Z_0j` for all `j`,
//! * `Z_{l,l+j}` and `Z_{l+j,l}` for `j >= 0`,
//! * `Z_{2l,2l}`, `Z_{3l,3l}`, `Z_{2l,2l-1}`, `Z_{2l-1,2l}`
//!
//! to vanish, where `l = k/2`. The normalizing map is fixed by the initial
//! conditions `f_z = Re g_w = 1`, `Re g_ww = 0`.

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{CrError, Result};
use crate::holo::{HoloMapPair, HoloSeries};
use crate::linsolve::solve;
use crate::scalar::{int, GaussianRational, Rational};
use crate::series::{MultiIndex, WeightedSeries};
use crate::surface::{
    anchor_index, has_unit_circular_model, leading_rescale, unit_model, validate_surface,
    AnchorIndex, Hypersurface,
};
use crate::transform::{ok_model_automorphism, pushforward, InitialData};

/// Whether the slice `Z_{alpha,beta}` must vanish in the normal form.
pub fn is_constrained_slot(alpha: u32, beta: u32, l: u32) -> bool {
    let (a, b) = (alpha.min(beta), alpha.max(beta));
    a == 0
        || a == l
        || (a == 2 * l && b == 2 * l)
        || (a == 3 * l && b == 3 * l)
        || (a + 1 == 2 * l && b == 2 * l)
}

fn require_circular(m: &Hypersurface) -> Result<()> {
    if has_unit_circular_model(m) {
        Ok(())
    } else {
        Err(CrError::NotCircular)
    }
}

pub fn check_normal_form(m: &Hypersurface) -> Result<bool> {
    require_circular(m)?;
    let l = m.k() / 2;
    Ok(m.perturbation()
        .terms()
        .all(|(i, _)| !is_constrained_slot(i.alpha, i.beta, l)))
}

/// `sum a z^alpha zb^beta (u - r)^gamma`
fn shift_u(f: &WeightedSeries, r: &WeightedSeries) -> WeightedSeries {
    let (k, trunc) = (f.k(), f.trunc());
    let base = &WeightedSeries::u(k, trunc) - r;
    let mut powers = vec![WeightedSeries::one(k, trunc)];
    let mut out = WeightedSeries::zero(k, trunc);
    for (i, a) in f.terms() {
        while powers.len() <= i.gamma as usize {
            let next = powers.last().unwrap() * &base;
            powers.push(next);
        }
        let head =
            WeightedSeries::monomial(MultiIndex::new(i.alpha, i.beta, 0), a.clone(), k, trunc);
        out = &out + &(&head * &powers[i.gamma as usize]);
    }
    out
}

/// Removes the pure `z^j` and `zb^j` terms with `w* = w + h(z)`, `z* = z`.
///
/// Each round sets `h = -2i sum a_j z^j` over the current harmonic coefficients
/// `a_j` and substitutes `u = u* - Re h`; the degree of any newly created
/// harmonic term grows, so the loop ends within the truncation.
pub fn absorb_harmonic(f: &WeightedSeries) -> Result<(WeightedSeries, HoloMapPair)> {
    if !f.is_real() {
        return Err(CrError::RealityViolation(f.reality_violations()));
    }
    let (k, trunc) = (f.k(), f.trunc());
    let mut cur = f.clone();
    let mut h = HoloSeries::zero(k, trunc);
    let minus_2i = GaussianRational::new(Rational::zero(), int(-2));
    loop {
        let harmonic: Vec<(u32, GaussianRational)> = cur
            .terms()
            .filter(|(i, _)| i.gamma == 0 && i.beta == 0 && i.alpha > 0)
            .map(|(i, c)| (i.alpha, c.clone()))
            .collect();
        if harmonic.is_empty() {
            break;
        }
        if harmonic.iter().any(|(j, _)| *j == 1) {
            return Err(CrError::NotPrepared(
                "linear term in z; v = 0 is not tangent".into(),
            ));
        }
        let mut step = WeightedSeries::zero(k, trunc);
        for (j, a) in &harmonic {
            let c = &minus_2i * a;
            h.add_term((*j, 0), &c);
            step.add_term(MultiIndex::new(*j, 0, 0), &c);
        }
        cur = &shift_u(&cur, &step.re()) + &step.im();
    }
    let map = HoloMapPair::new(
        HoloSeries::monomial(1, 0, GaussianRational::one(), k, trunc),
        h.add(&HoloSeries::monomial(
            0,
            1,
            GaussianRational::one(),
            k,
            trunc,
        )),
        k,
        trunc,
    )?;
    Ok((cur, map))
}

/// A surface brought into the coordinates expected by the invariant and normal
/// form routines, with the maps used.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prepared {
    pub surface: Hypersurface,
    pub absorb: HoloMapPair,
    pub rescale: HoloMapPair,
}

/// Absorbs harmonic terms, validates, and rescales a circular leading coefficient to one.
pub fn prepare(f: &WeightedSeries) -> Result<Prepared> {
    let (absorbed, absorb) = absorb_harmonic(f)?;
    validate_surface(&absorbed)?;
    let (scaled, rescale) = leading_rescale(&absorbed)?;
    Ok(Prepared {
        surface: validate_surface(&scaled)?,
        absorb,
        rescale,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalFormResult {
    pub nf: Hypersurface,
    pub map: HoloMapPair,
    pub initial: InitialData,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Part {
    Re,
    Im,
}

#[derive(Clone, Copy, Debug)]
enum Unknown {
    F(u32, u32, Part),
    G(u32, u32, Part),
}

fn unknowns_at(k: u32, nu: u32) -> Vec<Unknown> {
    let t = nu + k;
    let mut out = Vec::new();
    for j in 0..=(nu + 1) / k {
        let i = nu + 1 - k * j;
        if (i, j) != (1, 0) {
            out.push(Unknown::F(i, j, Part::Re));
            out.push(Unknown::F(i, j, Part::Im));
        }
    }
    for j in 0..=t / k {
        let i = t - k * j;
        match (i, j) {
            (1, 0) | (0, 1) => {}
            (0, 2) => out.push(Unknown::G(0, 2, Part::Im)),
            _ => {
                out.push(Unknown::G(i, j, Part::Re));
                out.push(Unknown::G(i, j, Part::Im));
            }
        }
    }
    out
}

/// Linearized effect of one unknown on the weight `t` part of the pushed
/// forward equation: `Im dg(z, u+iP) - 2 Re(P_z df(z, u+iP))`.
fn unknown_image(
    u: Unknown,
    model: &WeightedSeries,
    pz: &WeightedSeries,
    t: u32,
) -> WeightedSeries {
    let (k, trunc) = (model.k(), model.trunc());
    let unit = |p: Part| match p {
        Part::Re => GaussianRational::one(),
        Part::Im => GaussianRational::i(),
    };
    match u {
        Unknown::F(i, j, p) => {
            let h = HoloSeries::monomial(i, j, unit(p), k, trunc).eval_on_surface(model);
            (pz * &h).re().scale_rational(&int(-2)).weight_part(t)
        }
        Unknown::G(i, j, p) => HoloSeries::monomial(i, j, unit(p), k, trunc)
            .eval_on_surface(model)
            .im()
            .weight_part(t),
    }
}

fn constrained_at(k: u32, t: u32) -> Vec<MultiIndex> {
    let l = k / 2;
    let mut out = Vec::new();
    for gamma in 0..=t / k {
        let d = t - k * gamma;
        for alpha in 0..=d / 2 {
            let beta = d - alpha;
            if is_constrained_slot(alpha, beta, l) {
                out.push(MultiIndex::new(alpha, beta, gamma));
            }
        }
    }
    out
}

/// Brings a surface with model `|z|^k` into normal form.
///
/// At each weight `t = k + nu` the unknown map coefficients of weight `nu + 1`
/// (in `f`) and `t` (in `g`) enter the weight `t` part of the pushed forward
/// equation linearly through the model; requiring the constrained slices to
/// vanish gives an exact linear system that must have a unique solution.
pub fn normalize(m: &Hypersurface) -> Result<NormalFormResult> {
    require_circular(m)?;
    let (k, trunc) = (m.k(), m.trunc());
    let l = k / 2;
    let model = unit_model(k, trunc);
    let pz = WeightedSeries::monomial(
        MultiIndex::new(l - 1, l, 0),
        GaussianRational::from(l as i64),
        k,
        trunc,
    );
    let mut f = HoloSeries::monomial(1, 0, GaussianRational::one(), k, trunc);
    let mut g = HoloSeries::monomial(0, 1, GaussianRational::one(), k, trunc);
    for nu in 1..=trunc - k {
        let t = nu + k;
        let map = HoloMapPair::new(f.clone(), g.clone(), k, t)?;
        let cur = pushforward(&m.truncate(t), &map)?;
        let eqs = constrained_at(k, t);
        let unknowns = unknowns_at(k, nu);
        let images: Vec<WeightedSeries> = unknowns
            .iter()
            .map(|u| unknown_image(*u, &model.truncate(t), &pz.truncate(t), t))
            .collect();
        let mut a = Vec::new();
        let mut b = Vec::new();
        for idx in &eqs {
            let target = cur.series().coeff(idx);
            let parts: &[Part] = if idx.alpha == idx.beta {
                &[Part::Re]
            } else {
                &[Part::Re, Part::Im]
            };
            for part in parts {
                let pick = |c: &GaussianRational| match part {
                    Part::Re => c.re.clone(),
                    Part::Im => c.im.clone(),
                };
                a.push(
                    images
                        .iter()
                        .map(|s| pick(&s.coeff(idx)))
                        .collect::<Vec<_>>(),
                );
                b.push(-pick(&target));
            }
        }
        let sol = solve(&a, &b, unknowns.len());
        let Some(x) = sol.unique else {
            return Err(CrError::RankDefect {
                weight: t,
                rank: sol.rank,
                unknowns: sol.unknowns,
                consistent: sol.consistent,
            });
        };
        for (u, v) in unknowns.iter().zip(x) {
            if v.is_zero() {
                continue;
            }
            let (target, i, j, p) = match *u {
                Unknown::F(i, j, p) => (&mut f, i, j, p),
                Unknown::G(i, j, p) => (&mut g, i, j, p),
            };
            let c = match p {
                Part::Re => GaussianRational::real(v),
                Part::Im => GaussianRational::new(Rational::zero(), v),
            };
            target.add_term((i, j), &c);
        }
    }
    let map = HoloMapPair::new(f, g, k, trunc)?;
    let nf = pushforward(m, &map)?;
    debug_assert!(check_normal_form(&nf)?);
    Ok(NormalFormResult {
        nf,
        map,
        initial: InitialData::trivial(),
    })
}

/// The normal form reached from `m_nf` by a map with initial data `d`: apply the
/// model automorphism with that data, then renormalize with trivial data.
pub fn renormalize_with_initial_data(m_nf: &Hypersurface, d: &InitialData) -> Result<Hypersurface> {
    if !check_normal_form(m_nf)? {
        return Err(CrError::NotNormalized);
    }
    if *d == InitialData::trivial() {
        return Ok(m_nf.clone());
    }
    let a = ok_model_automorphism(d, m_nf.k(), m_nf.trunc())?;
    let moved = pushforward(m_nf, &a)?;
    Ok(normalize(&moved)?.nf)
}

/// The coefficient whose real part the special normalization sets to zero.
pub fn special_target(anchor: &AnchorIndex, k: u32) -> MultiIndex {
    let l = k / 2;
    if anchor.alpha0 + anchor.beta0 + l * anchor.gamma0 != k {
        MultiIndex::new(anchor.alpha0, anchor.beta0, anchor.gamma0 + 1)
    } else {
        MultiIndex::new(anchor.alpha0 + k, anchor.beta0 + k, 0)
    }
}

/// `Re(a_target * conj(a_anchor))`. Scaling the anchor coefficient to one turns
/// this into `Re a_target`; in this form it is unchanged by rotations.
pub fn special_defect(m: &Hypersurface, anchor: &AnchorIndex) -> Rational {
    let s = m.series();
    let t = s.coeff(&special_target(anchor, m.k()));
    (&t * &s.coeff(&anchor.index()).conj()).re
}

/// The unique `mu` for which the renormalized surface has zero
/// [`special_defect`].
///
/// The defect is evaluated at `mu = 0, 1, 2`; the three values must
/// lie on a line, whose root is returned.
pub fn special_mu(m_nf: &Hypersurface) -> Result<Rational> {
    if !check_normal_form(m_nf)? {
        return Err(CrError::NotNormalized);
    }
    let k = m_nf.k();
    let anchor = anchor_index(m_nf)?;
    let need = anchor.p + k;
    if m_nf.trunc() < need {
        return Err(CrError::TruncationTooLow {
            have: m_nf.trunc(),
            need,
        });
    }
    let value = |mu: i64| -> Result<Rational> {
        let s = renormalize_with_initial_data(m_nf, &InitialData::with_mu(int(mu)))?;
        Ok(special_defect(&s, &anchor))
    };
    let (t0, t1, t2) = (value(0)?, value(1)?, value(2)?);
    if &t2 - &t1 != &t1 - &t0 {
        return Err(CrError::NonAffine);
    }
    let slope = &t1 - &t0;
    if slope.is_zero() {
        return Err(CrError::DegenerateMu);
    }
    Ok(-t0 / slope)
}

/// What remains of the linear freedom once `mu` is fixed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidualGroupNote {
    pub mu: Rational,
    pub anchor: AnchorIndex,
    pub anchor_coeff: GaussianRational,
    /// The rotation angle is unconstrained (lowest perturbation part depends on `|z|^2` only).
    pub theta_free: bool,
    /// `gcd |alpha - beta|` over the lowest perturbation part, when finite.
    pub rotation_order: Option<u32>,
}

/// Fixes `mu` exactly and records the anchor data. The dilation and rotation
/// normalizing the anchor coefficient to one are not applied (the dilation is
/// a radical in general); equivalence compares anchor-invariant quantities
/// instead.
pub fn special_normalize(m_nf: &Hypersurface) -> Result<(Hypersurface, ResidualGroupNote)> {
    let mu = special_mu(m_nf)?;
    let out = renormalize_with_initial_data(m_nf, &InitialData::with_mu(mu.clone()))?;
    let anchor = anchor_index(&out)?;
    let q = out.perturbation().weight_part(anchor.p);
    let order = q
        .terms()
        .fold(0u32, |acc, (i, _)| acc.gcd(&i.alpha.abs_diff(i.beta)));
    let note = ResidualGroupNote {
        mu,
        anchor_coeff: out.series().coeff(&anchor.index()),
        anchor,
        theta_free: order == 0,
        rotation_order: (order != 0).then_some(order),
    };
    Ok((out, note))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_surface;
    use crate::scalar::rat;

    fn series(text: &str, w: u32) -> WeightedSeries {
        parse_surface(text, Some(w), None).unwrap().1
    }

    fn surf(text: &str, w: u32) -> Hypersurface {
        validate_surface(&series(text, w)).unwrap()
    }

    #[test]
    fn constrained_slots_for_l2() {
        let l = 2;
        for (a, b) in [
            (0, 5),
            (5, 0),
            (0, 0),
            (2, 2),
            (2, 7),
            (7, 2),
            (4, 4),
            (6, 6),
            (3, 4),
            (4, 3),
        ] {
            assert!(is_constrained_slot(a, b, l), "({a}, {b})");
        }
        for (a, b) in [(1, 1), (1, 4), (3, 3), (6, 10), (5, 5), (3, 5), (1, 3)] {
            assert!(!is_constrained_slot(a, b, l), "({a}, {b})");
        }
    }

    #[test]
    fn normal_form_checks() {
        assert!(check_normal_form(&surf("z^2*zb^2 + z^3*zb^3*u", 16)).unwrap());
        assert!(!check_normal_form(&surf("z^2*zb^2 + z^4*zb^4", 16)).unwrap());
        assert!(!check_normal_form(&surf("z^2*zb^2 + z^5 + zb^5", 16)).unwrap());
        // The slice (6, 2) is the conjugate of Z_{l, l+4}.
        assert!(!check_normal_form(&surf("z^2*zb^2 + z^6*zb^2 + z^2*zb^6", 16)).unwrap());
        assert!(matches!(
            check_normal_form(&surf("z^3*zb + z*zb^3", 16)),
            Err(CrError::NotCircular)
        ));
    }

    #[test]
    fn square_systems() {
        for nu in 1..=12 {
            let t = nu + 4;
            let eq_rows: usize = constrained_at(4, t)
                .iter()
                .map(|i| if i.alpha == i.beta { 1 } else { 2 })
                .sum();
            assert_eq!(eq_rows, unknowns_at(4, nu).len(), "weight {t}");
        }
    }

    #[test]
    fn absorb_examples() {
        let (out, map) = absorb_harmonic(&series("z^2*zb^2 + z^5 + zb^5", 16)).unwrap();
        assert_eq!(out, series("z^2*zb^2", 16));
        assert_eq!(map.g().coeff(5, 0), GaussianRational::new(int(0), int(-2)));
        let (out, map) = absorb_harmonic(&series("z^2*zb^2 + (i)*z^3 - (i)*zb^3", 16)).unwrap();
        assert_eq!(out, series("z^2*zb^2", 16));
        assert_eq!(map.g().coeff(3, 0), GaussianRational::from(2));
        let plain = series("z^2*zb^2 + z*zb*u", 16);
        let (out, map) = absorb_harmonic(&plain).unwrap();
        assert_eq!(out, plain);
        assert!(map.is_identity());
    }

    #[test]
    fn absorb_with_u_dependence() {
        // The substitution u -> u - Re h feeds back into harmonic terms once.
        let f = series("z^2*zb^2 + z^5 + zb^5 + u*z^3 + u*zb^3", 24);
        let (out, _) = absorb_harmonic(&f).unwrap();
        assert!(out
            .terms()
            .all(|(i, _)| !(i.gamma == 0 && (i.alpha == 0) != (i.beta == 0))));
    }

    #[test]
    fn normalize_examples() {
        let o4 = surf("z^2*zb^2", 16);
        let r = normalize(&o4).unwrap();
        assert_eq!(r.nf, o4);
        assert!(r.map.is_identity());

        let h = normalize(&surf("z^2*zb^2 + z^5 + zb^5", 16)).unwrap();
        assert_eq!(h.nf, o4);

        let nf = surf("z^2*zb^2 + z^3*zb^3*u + z^5*zb^3 + z^3*zb^5", 16);
        let r = normalize(&nf).unwrap();
        assert_eq!(r.nf, nf);
        assert!(r.map.is_identity());
    }

    #[test]
    fn e5_normal_form_is_rotation_invariant_and_nontrivial() {
        let r = normalize(&surf("z^2*zb^2 + z^6*zb^2 + z^2*zb^6", 16)).unwrap();
        assert!(check_normal_form(&r.nf).unwrap());
        assert!(!r.nf.is_model());
        assert!(r
            .nf
            .series()
            .terms()
            .all(|(i, _)| (i.alpha as i64 - i.beta as i64) % 4 == 0));
        assert!(r.nf.series().terms().any(|(i, _)| i.alpha != i.beta));
    }

    #[test]
    fn model_renormalization_is_fixed() {
        let o4 = surf("z^2*zb^2", 16);
        for mu in [1, -2] {
            let d = InitialData::new(int(2), crate::scalar::Phase::root(4, 1), int(mu)).unwrap();
            assert_eq!(renormalize_with_initial_data(&o4, &d).unwrap(), o4);
        }
    }

    #[test]
    fn special_mu_examples() {
        let nf = surf("z^2*zb^2 + z^3*zb^3*u + z^5*zb^3 + z^3*zb^5", 24);
        let anchor = anchor_index(&nf).unwrap();
        assert_eq!(
            (anchor.alpha0, anchor.beta0, anchor.gamma0, anchor.p),
            (5, 3, 0, 8)
        );
        let target = special_target(&anchor, 4);
        assert_eq!(target, MultiIndex::new(5, 3, 1));
        assert_eq!(special_mu(&nf).unwrap(), int(0));

        let shifted = surf(
            "z^2*zb^2 + z^5*zb^3 + z^3*zb^5 + z^5*zb^3*u + z^3*zb^5*u",
            24,
        );
        let mu = special_mu(&shifted).unwrap();
        assert_ne!(mu, int(0));
        let s = renormalize_with_initial_data(&shifted, &InitialData::with_mu(mu)).unwrap();
        assert!(s.series().coeff(&target).re.is_zero());

        let low = surf("z^2*zb^2 + z^5*zb^3 + z^3*zb^5", 8 + 3);
        assert_eq!(
            special_mu(&low),
            Err(CrError::TruncationTooLow { have: 11, need: 12 })
        );
        assert_eq!(
            special_mu(&surf("z^2*zb^2", 16)),
            Err(CrError::ModelSurface)
        );
    }

    #[test]
    fn special_normalize_notes() {
        let (_, note) = special_normalize(&surf("z^2*zb^2 + z^3*zb^3*u", 24)).unwrap();
        assert!(note.theta_free);
        assert_eq!(note.rotation_order, None);
        let (_, note) = special_normalize(&surf("z^2*zb^2 + z^5*zb^3 + z^3*zb^5", 24)).unwrap();
        assert!(!note.theta_free);
        assert_eq!(note.rotation_order, Some(2));
        assert_eq!(note.anchor_coeff, GaussianRational::one());
        assert_eq!(note.mu, rat(0, 1));
    }
}
