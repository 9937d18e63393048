//! The `crsym-report/1` document and its text rendering.

use std::fmt::Write as _;

use crsym_core::{
    AnchorIndex, CharacterRow, EquivalenceCertificate, GaussianRational, HoloMapPair, HoloSeries,
    ModelInfo, PhaseWitness, Refutation, SymmetryGroup, WeightedSeries,
};
use serde::{Deserialize, Serialize};

pub const SCHEMA: &str = "crsym-report/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub alpha: u32,
    pub beta: u32,
    pub gamma: u32,
    pub coeff: String,
}

/// A term `coeff * z^i * w^j` of a map component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapTerm {
    pub z: u32,
    pub w: u32,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesReport {
    pub text: String,
    pub terms: Vec<Term>,
}

impl SeriesReport {
    pub fn new(s: &WeightedSeries) -> Self {
        let k = s.k();
        let mut terms: Vec<_> = s.terms().collect();
        terms.sort_by_key(|(i, _)| (i.weight(k), i.inverse_lex_key()));
        Self {
            text: crsym_core::format_series(s),
            terms: terms
                .into_iter()
                .map(|(i, c)| Term {
                    alpha: i.alpha,
                    beta: i.beta,
                    gamma: i.gamma,
                    coeff: c.to_string(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HoloReport {
    pub text: String,
    pub terms: Vec<MapTerm>,
}

impl HoloReport {
    pub fn new(h: &HoloSeries) -> Self {
        let mut terms: Vec<_> = h.terms().collect();
        terms.sort_by_key(|((i, j), _)| (h.weight((*i, *j)), *j));
        Self {
            text: crsym_core::format_holo(h),
            terms: terms
                .into_iter()
                .map(|((i, j), c)| MapTerm {
                    z: *i,
                    w: *j,
                    coeff: c.to_string(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapReport {
    pub f: HoloReport,
    pub g: HoloReport,
}

impl MapReport {
    pub fn new(m: &HoloMapPair) -> Self {
        Self {
            f: HoloReport::new(m.f()),
            g: HoloReport::new(m.g()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Anchor {
    pub alpha: u32,
    pub beta: u32,
    pub gamma: u32,
    pub p: u32,
}

impl From<&AnchorIndex> for Anchor {
    fn from(a: &AnchorIndex) -> Self {
        Self {
            alpha: a.alpha0,
            beta: a.beta0,
            gamma: a.gamma0,
            p: a.p,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Invariants {
    pub k: u32,
    pub l: u32,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub kappa: Option<u32>,
    pub circular: bool,
    pub model: String,
    pub model_surface: bool,
    pub weakly_spherical: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub anchor: Option<Anchor>,
}

impl Invariants {
    pub fn new(
        info: &ModelInfo,
        model: &WeightedSeries,
        model_surface: bool,
        weakly_spherical: bool,
        anchor: Option<&AnchorIndex>,
    ) -> Self {
        Self {
            k: info.k,
            l: info.l,
            kappa: info.kappa,
            circular: info.circular,
            model: crsym_core::format_series(model),
            model_surface,
            weakly_spherical,
            anchor: anchor.map(Anchor::from),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialReport {
    /// Exact `mu`, or absent when the truncation is too low to see it.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub mu: Option<String>,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalFormReport {
    pub surface: SeriesReport,
    pub map: MapReport,
    pub special: SpecialReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetryReport {
    pub tag: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub discrete_order: Option<u32>,
    pub dilations: bool,
    pub generators: Vec<String>,
}

impl SymmetryReport {
    pub fn new(g: &SymmetryGroup) -> Self {
        Self {
            tag: g.kind.to_string(),
            discrete_order: g.discrete_order(),
            dilations: g.has_dilations(),
            generators: g.generators.iter().map(|x| x.to_string()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowReport {
    pub index: [u32; 3],
    pub d: i64,
    pub e: i64,
    pub phi: i64,
    pub s: i64,
    pub ratio: String,
}

impl From<&CharacterRow> for RowReport {
    fn from(r: &CharacterRow) -> Self {
        Self {
            index: [r.idx.alpha, r.idx.beta, r.idx.gamma],
            d: r.d,
            e: r.e,
            phi: r.phi,
            s: r.s,
            ratio: r.ratio.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationReport {
    /// Exponent of `|lambda|`.
    pub x: i64,
    /// Exponent of `|c|`.
    pub y: i64,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub lambda_sign: i8,
    /// `e^{i theta}` as a token, when it is a root of unity or a Gaussian rational.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub phase: Option<String>,
    /// `e^{i period theta} = direction / |direction|`; absent when theta is free.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub phase_period: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub phase_direction: Option<String>,
    pub relations: Vec<RelationReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub lambda_abs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub c_abs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub pushforward_verified: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefutationReport {
    pub kind: String,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub vector: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub product: Option<String>,
}

impl From<&Refutation> for RefutationReport {
    fn from(r: &Refutation) -> Self {
        let (kind, vector, product) = match r {
            Refutation::DifferentType { .. } => ("different-type", None, None),
            Refutation::ModelMismatch => ("model-mismatch", None, None),
            Refutation::SupportMismatch(_) => ("support-mismatch", None, None),
            Refutation::ModulusKernel { vector, product } => (
                "modulus-kernel",
                Some(vector.clone()),
                Some(product.to_string()),
            ),
            Refutation::PhaseKernel { vector, product } => (
                "phase-kernel",
                Some(vector.clone()),
                Some(product.to_string()),
            ),
            Refutation::PhaseSign => ("phase-sign", None, None),
        };
        Self {
            kind: kind.into(),
            detail: r.to_string(),
            vector,
            product,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub verdict: String,
    pub linear_only: bool,
    pub mu_within_truncation: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<WitnessReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub refutation: Option<RefutationReport>,
    pub rows: Vec<RowReport>,
}

impl From<&EquivalenceCertificate> for CertificateReport {
    fn from(c: &EquivalenceCertificate) -> Self {
        let witness = c.witness.as_ref().map(|w| {
            let (period, direction) = match &w.phase {
                PhaseWitness::Free => (None, None),
                PhaseWitness::Determined { period, direction } => {
                    (Some(*period), Some(direction.to_string()))
                }
            };
            WitnessReport {
                lambda_sign: w.lambda_sign,
                phase: w.theta.as_ref().map(|t| t.to_string()),
                phase_period: period,
                phase_direction: direction,
                relations: w
                    .relations
                    .iter()
                    .map(|r| RelationReport {
                        x: r.x_exp,
                        y: r.y_exp,
                        value: r.value.to_string(),
                    })
                    .collect(),
                lambda_abs: w.lambda_abs.as_ref().map(|x| x.to_string()),
                c_abs: w.c_abs.as_ref().map(|x| x.to_string()),
                pushforward_verified: w.pushforward_verified,
            }
        });
        Self {
            verdict: c.verdict.to_string(),
            linear_only: c.linear_only,
            mu_within_truncation: c.mu_within_truncation,
            witness,
            refutation: c.refutation.as_ref().map(RefutationReport::from),
            rows: c.rows.iter().map(RowReport::from).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapCheckReport {
    pub map: MapReport,
    pub is_automorphism: bool,
    pub image: SeriesReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub class: String,
    pub exit_code: i32,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub truncation: u32,
    pub tool: String,
    pub version: String,
}

impl Provenance {
    pub fn new(truncation: u32) -> Self {
        Self {
            truncation,
            tool: "crsym".into(),
            version: env!("CARGO_PKG_VERSION").into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub command: String,
    pub inputs: Vec<SeriesReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub invariants: Option<Invariants>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub normal_form: Option<NormalFormReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub symmetry: Option<SymmetryReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub certificate: Option<CertificateReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub map_check: Option<MapCheckReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<ErrorReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub provenance: Option<Provenance>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Self {
            schema: SCHEMA.into(),
            command: command.into(),
            inputs: Vec::new(),
            invariants: None,
            normal_form: None,
            symmetry: None,
            certificate: None,
            map_check: None,
            error: None,
            provenance: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let w = &mut out;
        for (n, s) in self.inputs.iter().enumerate() {
            let _ = writeln!(w, "input {}: {}", n + 1, s.text);
        }
        if let Some(i) = &self.invariants {
            let _ = writeln!(w, "type k: {}", i.k);
            let _ = writeln!(w, "essential type l: {}", i.l);
            match i.kappa {
                Some(kappa) => {
                    let _ = writeln!(w, "kappa: {kappa}");
                }
                None => {
                    let _ = writeln!(w, "kappa: undefined");
                }
            }
            let _ = writeln!(w, "circular model: {}", yes_no(i.circular));
            let _ = writeln!(w, "model: {}", i.model);
            let _ = writeln!(w, "model surface: {}", yes_no(i.model_surface));
            let _ = writeln!(w, "weakly spherical: {}", yes_no(i.weakly_spherical));
            if let Some(a) = &i.anchor {
                let _ = writeln!(
                    w,
                    "anchor: ({}, {}, {}), p = {}",
                    a.alpha, a.beta, a.gamma, a.p
                );
            }
        }
        if let Some(nf) = &self.normal_form {
            let _ = writeln!(w, "normal form: {}", nf.surface.text);
            let _ = writeln!(w, "map f: {}", nf.map.f.text);
            let _ = writeln!(w, "map g: {}", nf.map.g.text);
            match &nf.special.mu {
                Some(mu) => {
                    let _ = writeln!(w, "special mu: {mu} ({})", nf.special.note);
                }
                None => {
                    let _ = writeln!(w, "special mu: none ({})", nf.special.note);
                }
            }
        }
        if let Some(s) = &self.symmetry {
            let _ = writeln!(w, "symmetry: {}", s.tag);
            for g in &s.generators {
                let _ = writeln!(w, "  generator: {g}");
            }
        }
        if let Some(c) = &self.certificate {
            let _ = writeln!(w, "verdict: {}", c.verdict);
            if c.linear_only {
                let _ = writeln!(w, "  (linear-equivalence only)");
            }
            if c.mu_within_truncation {
                let _ = writeln!(w, "  (mu not determined within the truncation)");
            }
            if let Some(wt) = &c.witness {
                let _ = writeln!(
                    w,
                    "  lambda sign: {}",
                    if wt.lambda_sign < 0 { "-" } else { "+" }
                );
                if let Some(p) = &wt.phase {
                    let _ = writeln!(w, "  e^(i theta): {p}");
                }
                if let (Some(n), Some(d)) = (wt.phase_period, &wt.phase_direction) {
                    let _ = writeln!(w, "  e^({n} i theta) ~ {d}");
                }
                for r in &wt.relations {
                    let _ = writeln!(w, "  |lambda|^{} |c|^{} = {}", r.x, r.y, r.value);
                }
                if let (Some(x), Some(y)) = (&wt.lambda_abs, &wt.c_abs) {
                    let _ = writeln!(w, "  |lambda| = {x}, |c| = {y}");
                }
                if let Some(v) = wt.pushforward_verified {
                    let _ = writeln!(
                        w,
                        "  pushforward check: {}",
                        if v { "passed" } else { "FAILED" }
                    );
                }
            }
            if let Some(r) = &c.refutation {
                let _ = writeln!(w, "  refutation: {}", r.detail);
            }
        }
        if let Some(m) = &self.map_check {
            let _ = writeln!(w, "map f: {}", m.map.f.text);
            let _ = writeln!(w, "map g: {}", m.map.g.text);
            let _ = writeln!(w, "automorphism: {}", yes_no(m.is_automorphism));
            let _ = writeln!(w, "image: {}", m.image.text);
        }
        if let Some(e) = &self.error {
            let _ = writeln!(w, "error[{}]: {}", e.class, e.message);
        }
        if let Some(p) = &self.provenance {
            let _ = writeln!(w, "truncation: {}", p.truncation);
        }
        out
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Parses a coefficient string back (inverse of `Display`).
pub fn parse_coeff(s: &str) -> Option<GaussianRational> {
    s.parse().ok()
}
