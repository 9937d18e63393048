//! Stability groups of normalized surfaces.
//!
//! In normal coordinates every automorphism is a diagonal map
//! `z* = c z`, `w* = lambda w` with `c = delta e^{i theta}` and
//! `lambda = delta^k` for real `delta`, so `lambda < 0` only for odd `k`.
//! Such a map preserves `a z^alpha zb^beta u^gamma` iff
//! `c^alpha cb^beta lambda^(gamma - 1) = 1`.

use std::fmt;

use num_integer::Integer;

use crate::error::{CrError, Result};
use crate::normalform::{check_normal_form, normalize, prepare};
use crate::scalar::{int, GaussianRational, Phase};
use crate::series::{MultiIndex, WeightedSeries};
use crate::surface::{has_unit_circular_model, model_of, Hypersurface};
use crate::transform::{diagonal_pushforward, is_automorphism, ok_model_automorphism, InitialData};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupKind {
    /// The circular model itself: dilations, rotations and the `mu` family.
    Dim3,
    /// A model surface: dilations times a cyclic group of rotations.
    RPlusCrossCyclic(u32),
    /// All rotations `z -> e^{i theta} z`.
    Circle,
    Cyclic(u32),
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupKind::Dim3 => write!(f, "Dim3"),
            GroupKind::RPlusCrossCyclic(m) => write!(f, "RPlusCrossCyclic({m})"),
            GroupKind::Circle => write!(f, "Circle"),
            GroupKind::Cyclic(n) => write!(f, "Cyclic({n})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generator {
    /// `z -> phase * z`, `w -> lambda_sign * w`.
    Rotation { phase: Phase, lambda_sign: i8 },
    /// `z -> e^{i t} z` for all real `t`.
    CircleAction,
    /// `z -> d z`, `w -> d^k w` for all `d > 0`.
    Dilation,
    /// The `mu` family of automorphisms of the circular model.
    ModelFamily,
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Rotation { phase, lambda_sign } => {
                let s = if *lambda_sign < 0 { "-" } else { "" };
                write!(f, "z -> {phase} z, w -> {s}w")
            }
            Generator::CircleAction => write!(f, "z -> exp(i*t) z, w -> w"),
            Generator::Dilation => write!(f, "z -> d z, w -> d^k w (d > 0)"),
            Generator::ModelFamily => write!(f, "z -> z/(1+mu w)^(2/k), w -> w/(1+mu w)"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryGroup {
    pub kind: GroupKind,
    pub generators: Vec<Generator>,
}

/// A candidate rotation `(e^{2 pi i t / n}, (-1)^s)` preserves the term iff
/// `(alpha - beta) t / n + s (gamma - 1) / 2` is an integer.
fn preserves(i: &MultiIndex, order: u32, step: u32, sign_flip: bool) -> bool {
    let d = i.alpha as i64 - i.beta as i64;
    let n = order as i64;
    let s = if sign_flip { i.gamma as i64 - 1 } else { 0 };
    (2 * d * step as i64 + s * n).rem_euclid(2 * n) == 0
}

/// All rotation elements `(order, step, sign_flip)` fixing `indices`, found by
/// enumerating roots of unity of order up to `max_order`.
fn enumerate_rotations(
    indices: &[MultiIndex],
    max_order: u32,
    odd_k: bool,
) -> Vec<(u32, u32, bool)> {
    let signs: &[bool] = if odd_k { &[false, true] } else { &[false] };
    let mut out = Vec::new();
    for n in 1..=max_order {
        for t in 0..n {
            if t.gcd(&n) != 1 && !(n == 1 && t == 0) {
                continue;
            }
            for &s in signs {
                if indices.iter().all(|i| preserves(i, n, t, s)) {
                    out.push((n, t, s));
                }
            }
        }
    }
    out
}

fn element_order(n: u32, s: bool) -> u32 {
    if s {
        n.lcm(&2)
    } else {
        n
    }
}

/// Order of the rotation group from the gcd rule: `D = gcd |alpha - beta|`
/// rotations with `lambda > 0`, doubled when some `theta` with `e^{iD theta} = -1`
/// or `+1` realizes `lambda < 0` (odd `k` only).
fn rotation_order_by_gcd(indices: &[MultiIndex], odd_k: bool) -> u32 {
    let d = indices
        .iter()
        .fold(0u32, |acc, i| acc.gcd(&i.alpha.abs_diff(i.beta)));
    assert!(d > 0, "rotation order is finite only off the diagonal");
    let flip = odd_k && (0..2 * d).any(|t| indices.iter().all(|i| preserves(i, 2 * d, t, true)));
    if flip {
        2 * d
    } else {
        d
    }
}

/// The finite rotation group of the given support: its order and generators,
/// cross-checked between the gcd rule and brute force enumeration.
fn rotation_group(indices: &[MultiIndex], odd_k: bool) -> Result<(u32, Vec<Generator>)> {
    let by_gcd = rotation_order_by_gcd(indices, odd_k);
    let max_diff = indices
        .iter()
        .map(|i| i.alpha.abs_diff(i.beta))
        .max()
        .unwrap_or(0);
    let elements = enumerate_rotations(indices, 2 * max_diff.max(1), odd_k);
    let n = elements.len() as u32;
    if n != by_gcd {
        return Err(CrError::StabilizerMismatch(format!(
            "gcd rule gives {by_gcd} rotations, enumeration finds {n}"
        )));
    }
    let top = elements
        .iter()
        .map(|(o, _, s)| element_order(*o, *s))
        .max()
        .expect("identity is always present");
    let best = *elements
        .iter()
        .find(|(o, _, s)| element_order(*o, *s) == top)
        .expect("maximum is attained");
    let mut gens = vec![Generator::Rotation {
        phase: Phase::root(best.0, best.1 as i64),
        lambda_sign: if best.2 { -1 } else { 1 },
    }];
    if top != n {
        // Z_D x Z_2: add the pure sign flip paired with a rotation.
        let other = elements
            .iter()
            .find(|(_, _, s)| *s != best.2)
            .expect("noncyclic group has both signs");
        gens.push(Generator::Rotation {
            phase: Phase::root(other.0, other.1 as i64),
            lambda_sign: if other.2 { -1 } else { 1 },
        });
    }
    Ok((n, gens))
}

/// Solves the character equations of the diagonal maps over the support of `m`.
///
/// Circular surfaces must be in normal form; other surfaces are taken to be in
/// normal coordinates as given. For model surfaces the rotation order is
/// checked against `kappa` (`k` even) or `2 kappa` (`k` odd).
pub fn diagonal_stabilizer(m: &Hypersurface) -> Result<SymmetryGroup> {
    let k = m.k();
    let info = model_of(m);
    if info.circular {
        if !has_unit_circular_model(m) || !check_normal_form(m)? {
            return Err(CrError::NotNormalized);
        }
        if m.is_model() {
            return Ok(SymmetryGroup {
                kind: GroupKind::Dim3,
                generators: vec![
                    Generator::Dilation,
                    Generator::CircleAction,
                    Generator::ModelFamily,
                ],
            });
        }
    }
    let indices: Vec<MultiIndex> = m.series().terms().map(|(i, _)| *i).collect();
    if indices.iter().all(|i| i.alpha == i.beta) {
        return Ok(SymmetryGroup {
            kind: GroupKind::Circle,
            generators: vec![Generator::CircleAction],
        });
    }
    let odd_k = k % 2 == 1;
    let (n, mut gens) = rotation_group(&indices, odd_k)?;
    if m.is_model() {
        let kappa = info.kappa.ok_or(CrError::KappaUndefined)?;
        let expected = if odd_k { 2 * kappa } else { kappa };
        if n != expected {
            return Err(CrError::StabilizerMismatch(format!(
                "model rotation order {n} differs from {expected} predicted by kappa = {kappa}"
            )));
        }
        gens.insert(0, Generator::Dilation);
        return Ok(SymmetryGroup {
            kind: GroupKind::RPlusCrossCyclic(n),
            generators: gens,
        });
    }
    Ok(SymmetryGroup {
        kind: GroupKind::Cyclic(n),
        generators: gens,
    })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ClassifyOptions {
    /// Treat a non-circular, non-model surface as already in normal coordinates.
    pub assume_normal: bool,
}

/// Prepares, normalizes (circular models) and computes the stabilizer.
pub fn classify(f: &WeightedSeries, opts: ClassifyOptions) -> Result<SymmetryGroup> {
    let prepared = prepare(f)?;
    let m = prepared.surface;
    if model_of(&m).circular {
        return diagonal_stabilizer(&normalize(&m)?.nf);
    }
    if m.is_model() || opts.assume_normal {
        return diagonal_stabilizer(&m);
    }
    Err(CrError::OutOfScope(
        "normal form for models other than |z|^k is not available".into(),
    ))
}

/// Checks every generator against the surface: exact pushforward where the
/// map has Gaussian rational coefficients, the character equations otherwise.
pub fn verify_generators(m: &Hypersurface, g: &SymmetryGroup) -> Result<bool> {
    let k = m.k();
    let trunc = m.trunc();
    let fixes = |c: &GaussianRational, lambda: i64| diagonal_pushforward(m, c, &int(lambda)) == *m;
    for gen in &g.generators {
        let ok = match gen {
            Generator::Rotation { phase, lambda_sign } => match (phase.to_gaussian(), phase) {
                (Some(c), _) => fixes(&c, *lambda_sign as i64),
                (None, Phase::RootOfUnity { order, step }) => m
                    .series()
                    .terms()
                    .all(|(i, _)| preserves(i, *order, *step, *lambda_sign < 0)),
                (None, Phase::Exact(_)) => unreachable!("exact phases are Gaussian"),
            },
            Generator::CircleAction => {
                m.series().terms().all(|(i, _)| i.alpha == i.beta)
                    && fixes(&GaussianRational::i(), 1)
            }
            Generator::Dilation => {
                m.series().terms().all(|(i, _)| i.weight(k) == k)
                    && fixes(&GaussianRational::from(2), 1i64 << k)
            }
            Generator::ModelFamily => {
                let map = ok_model_automorphism(&InitialData::with_mu(int(1)), k, trunc)?;
                is_automorphism(m, &map)?
            }
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

impl SymmetryGroup {
    /// Number of elements of the discrete part.
    pub fn discrete_order(&self) -> Option<u32> {
        match self.kind {
            GroupKind::RPlusCrossCyclic(n) | GroupKind::Cyclic(n) => Some(n),
            _ => None,
        }
    }

    pub fn has_dilations(&self) -> bool {
        matches!(self.kind, GroupKind::Dim3 | GroupKind::RPlusCrossCyclic(_))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_surface;

    fn series(text: &str) -> WeightedSeries {
        parse_surface(text, None, None).unwrap().1
    }

    fn kind(text: &str) -> GroupKind {
        classify(&series(text), ClassifyOptions::default())
            .unwrap()
            .kind
    }

    #[test]
    fn classification_examples() {
        assert_eq!(kind("z^2*zb^2"), GroupKind::Dim3);
        assert_eq!(kind("z^2*zb^2 + z^5 + zb^5"), GroupKind::Dim3);
        assert_eq!(kind("z^3*zb + z*zb^3"), GroupKind::RPlusCrossCyclic(2));
        assert_eq!(kind("z^4*zb + z*zb^4"), GroupKind::RPlusCrossCyclic(6));
        assert_eq!(kind("z^2*zb^2 + z^5*zb^5"), GroupKind::Circle);
        assert_eq!(kind("z^2*zb^2 + z^6*zb^2 + z^2*zb^6"), GroupKind::Cyclic(4));
    }

    #[test]
    fn odd_model_generator_flips_w() {
        let g = classify(&series("z^4*zb + z*zb^4"), ClassifyOptions::default()).unwrap();
        assert_eq!(
            g.generators[1],
            Generator::Rotation {
                phase: Phase::root(6, 1),
                lambda_sign: -1
            }
        );
        let m = crate::surface::validate_surface(&series("z^4*zb + z*zb^4")).unwrap();
        assert!(verify_generators(&m, &g).unwrap());
    }

    #[test]
    fn non_model_noncircular_is_out_of_scope() {
        let s = series("z^3*zb + z*zb^3 + z^3*zb^3");
        assert!(matches!(
            classify(&s, ClassifyOptions::default()),
            Err(CrError::OutOfScope(_))
        ));
        let g = classify(
            &s,
            ClassifyOptions {
                assume_normal: true,
            },
        )
        .unwrap();
        assert_eq!(g.kind, GroupKind::Cyclic(2));
    }

    #[test]
    fn unnormalized_circular_rejected() {
        let m =
            crate::surface::validate_surface(&series("z^2*zb^2 + z^6*zb^2 + z^2*zb^6")).unwrap();
        assert_eq!(diagonal_stabilizer(&m), Err(CrError::NotNormalized));
    }

    #[test]
    fn rotation_preservation_arithmetic() {
        let i = MultiIndex::new(6, 2, 0);
        assert!(preserves(&i, 4, 1, false));
        assert!(!preserves(&i, 8, 1, false));
        assert!(preserves(&MultiIndex::new(4, 1, 0), 6, 1, true));
        assert!(!preserves(&MultiIndex::new(4, 1, 0), 6, 1, false));
    }
}
