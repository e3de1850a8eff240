//! Classification of the spaces `G/I` and their report.

use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::geometry::{PlaneWaveChart, Profile};
use crate::lie::{self, Derivation, SpectrumKind};
use crate::metric::{self, MetricReport};
use crate::rational::{self, frac, q, Q};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SpaceClass {
    MinkowskiFlat,
    HalfMinkowskiFlat,
    CahenWallachHyperbolic,
    CahenWallachElliptic,
    /// `b > −1/4`, `b ≠ 0`.
    NonUnimodularHyperbolic(Q),
    /// `b < −1/4`.
    NonUnimodularElliptic(Q),
    /// `b = −1/4`.
    NonUnimodularParabolic,
}

impl SpaceClass {
    /// Class of the non-unimodular space with invariant `b`.
    pub fn from_b(b: Q) -> SpaceClass {
        let quarter = -frac(1, 4);
        if b.is_zero() {
            SpaceClass::HalfMinkowskiFlat
        } else if b == quarter {
            SpaceClass::NonUnimodularParabolic
        } else if b < quarter {
            SpaceClass::NonUnimodularElliptic(b)
        } else {
            SpaceClass::NonUnimodularHyperbolic(b)
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            SpaceClass::MinkowskiFlat => "MinkowskiFlat",
            SpaceClass::HalfMinkowskiFlat => "HalfMinkowskiFlat",
            SpaceClass::CahenWallachHyperbolic => "CahenWallachHyperbolic",
            SpaceClass::CahenWallachElliptic => "CahenWallachElliptic",
            SpaceClass::NonUnimodularHyperbolic(_) => "NonUnimodularHyperbolic",
            SpaceClass::NonUnimodularElliptic(_) => "NonUnimodularElliptic",
            SpaceClass::NonUnimodularParabolic => "NonUnimodularParabolic",
        }
    }

    pub fn is_unimodular(&self) -> bool {
        matches!(
            self,
            SpaceClass::MinkowskiFlat | SpaceClass::CahenWallachHyperbolic | SpaceClass::CahenWallachElliptic
        )
    }

    /// The invariant `b` of a non-unimodular class.
    pub fn b(&self) -> Option<Q> {
        match self {
            SpaceClass::HalfMinkowskiFlat => Some(Q::zero()),
            SpaceClass::NonUnimodularParabolic => Some(-frac(1, 4)),
            SpaceClass::NonUnimodularHyperbolic(b) | SpaceClass::NonUnimodularElliptic(b) => Some(b.clone()),
            _ => None,
        }
    }

    /// Brinkmann profile: `Constant(0)`, `Constant(+1)` (hyperbolic),
    /// `Constant(−1)` (elliptic) or `PowerLaw(b)`.
    pub fn chart(&self) -> PlaneWaveChart {
        match self {
            SpaceClass::MinkowskiFlat => PlaneWaveChart::constant(0.0),
            SpaceClass::CahenWallachHyperbolic => PlaneWaveChart::constant(1.0),
            SpaceClass::CahenWallachElliptic => PlaneWaveChart::constant(-1.0),
            other => PlaneWaveChart::power_law(rational::to_f64(&other.b().expect("non-unimodular"))),
        }
    }
}

impl Serialize for SpaceClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            tag: &'a str,
            #[serde(skip_serializing_if = "Option::is_none")]
            b: Option<String>,
        }
        Repr {
            tag: self.tag(),
            b: self.b().map(|b| rational::to_string(&b)),
        }
        .serialize(s)
    }
}

/// `b = −det(Ā / tr Ā)`.
pub fn invariant_b(a: &Derivation) -> Result<Q> {
    let tr = a.quotient_trace();
    if tr.is_zero() {
        return Err(Error::UnimodularInput);
    }
    Ok(-a.quotient_det() / (&tr * &tr))
}

pub fn classify(a: &Derivation) -> Result<SpaceClass> {
    if metric::default_isotropy(a).is_none() {
        return Err(Error::NoInvariantMetric(if a.has_zero_quotient() {
            "Ā = 0: ad_W has nilpotency order < 3 for every W".into()
        } else {
            "Ā is scalar: every non-central W is an eigenvector".into()
        }));
    }
    if !a.is_unimodular() {
        return Ok(SpaceClass::from_b(invariant_b(a)?));
    }
    let spectrum = lie::spectrum_on_quotient(a);
    Ok(match spectrum.kind {
        SpectrumKind::NilpotentNonzero => SpaceClass::MinkowskiFlat,
        _ if spectrum.discriminant.is_positive() => SpaceClass::CahenWallachHyperbolic,
        _ => SpaceClass::CahenWallachElliptic,
    })
}

/// Non-unimodular pairs compare `b`; unimodular pairs compare the class.
pub fn groups_isomorphic(a1: &Derivation, a2: &Derivation) -> Result<bool> {
    let (c1, c2) = (classify(a1)?, classify(a2)?);
    Ok(match (c1.is_unimodular(), c2.is_unimodular()) {
        (false, false) => c1.b() == c2.b(),
        (true, true) => c1 == c2,
        _ => false,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChartHandle {
    pub family: &'static str,
    pub profile: Profile,
    /// Exact parameter (`b` or `h`).
    pub parameter: String,
    pub metric: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Citation {
    pub flag: &'static str,
    pub statement: &'static str,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Normalization {
    /// Factor `1/tr(Ā)` applied before reading off `b`.
    pub scale: String,
    pub orientation_reversed: bool,
    pub canonical: Derivation,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpaceReport {
    pub derivation: Derivation,
    pub class: SpaceClass,
    pub b: Option<String>,
    pub spectrum: lie::QuotientSpectrum,
    pub symmetric: bool,
    pub locally_symmetric: bool,
    pub flat: bool,
    pub complete: bool,
    pub compact_model: bool,
    pub transverse_3d_group: bool,
    pub brinkmann_chart: ChartHandle,
    pub isometry_group_note: String,
    pub metric: MetricReport,
    pub normalization: Option<Normalization>,
    pub citations: Vec<Citation>,
    pub notes: Vec<String>,
}

const CITATIONS: [Citation; 6] = [
    Citation {
        flag: "symmetric",
        statement: "unimodular extensions give globally symmetric spaces (Minkowski or Cahen-Wallach); non-unimodular ones are not locally symmetric unless flat",
    },
    Citation {
        flag: "flat",
        statement: "the space is flat exactly for unipotent ρ (Minkowski) and for the single flat non-complete case b = 0",
    },
    Citation {
        flag: "complete",
        statement: "these spaces are geodesically complete only if they are symmetric; otherwise every timelike geodesic and every null geodesic off the ∂v orbits is incomplete",
    },
    Citation {
        flag: "compact_model",
        statement: "all spaces except two fail to have compact models: Minkowski space and the non-flat plane wave with b = 2, whose isometry group contains SOL",
    },
    Citation {
        flag: "transverse_3d_group",
        statement: "a 3-dimensional subgroup transverse to the isotropy exists iff Ā has a real eigenvector",
    },
    Citation {
        flag: "b",
        statement: "two non-unimodular groups are isomorphic iff their invariants b agree; the global Brinkmann form is 2dudv + b x²/u² du² + dx²",
    },
];

fn isometry_note(class: &SpaceClass) -> String {
    match class {
        SpaceClass::MinkowskiFlat => "flat Minkowski space; flat tori give compact models".into(),
        SpaceClass::HalfMinkowskiFlat => {
            "flat half of Minkowski space (u > 0); flat but geodesically incomplete".into()
        }
        SpaceClass::CahenWallachHyperbolic | SpaceClass::CahenWallachElliptic => {
            "Cahen-Wallach symmetric space with solvable isometry group; no compact quotients".into()
        }
        other => {
            let b = other.b().expect("non-unimodular");
            if b == q(2) {
                "isometry group contains a copy of SOL; its lattices give compact models".into()
            } else {
                format!(
                    "isometry group preserves the profile {}/u²; no compact models",
                    rational::to_string(&b)
                )
            }
        }
    }
}

fn chart_handle(class: &SpaceClass) -> ChartHandle {
    let chart = class.chart();
    let parameter = match class {
        SpaceClass::MinkowskiFlat => "0".to_string(),
        SpaceClass::CahenWallachHyperbolic => "1".to_string(),
        SpaceClass::CahenWallachElliptic => "-1".to_string(),
        other => rational::to_string(&other.b().expect("non-unimodular")),
    };
    let metric = match class.b() {
        Some(_) => format!("2 du dv + ({parameter}) x^2/u^2 du^2 + dx^2, u > 0"),
        None => format!("2 du dv + ({parameter}) x^2 du^2 + dx^2"),
    };
    ChartHandle {
        family: "brinkmann",
        profile: chart.profile(),
        parameter,
        metric,
    }
}

pub fn space_report(a: &Derivation) -> Result<SpaceReport> {
    let class = classify(a)?;
    let b = class.b();
    let symmetric = class.is_unimodular();
    let b_zero = b.as_ref().is_some_and(Zero::is_zero);
    let w = metric::default_isotropy(a).expect("classify checked existence");
    let normalization = if a.is_unimodular() {
        None
    } else {
        let nf = lie::normalize_to_canonical(a)?;
        Some(Normalization {
            scale: rational::to_string(&nf.scale),
            orientation_reversed: nf.orientation_reversed,
            canonical: nf.canonical,
        })
    };
    let mut notes = Vec::new();
    if let Some(n) = &normalization {
        if n.orientation_reversed {
            notes.push("tr(Ā) < 0: normalized by a negative scale, reversing the one-parameter group".into());
        }
    }
    Ok(SpaceReport {
        derivation: a.clone(),
        b: b.as_ref().map(rational::to_string),
        spectrum: lie::spectrum_on_quotient(a),
        symmetric,
        locally_symmetric: symmetric || b_zero,
        flat: class == SpaceClass::MinkowskiFlat || b_zero,
        complete: symmetric,
        compact_model: class == SpaceClass::MinkowskiFlat || b == Some(q(2)),
        transverse_3d_group: metric::has_transverse_subalgebra(a),
        brinkmann_chart: chart_handle(&class),
        isometry_group_note: isometry_note(&class),
        metric: metric::build_invariant_metric(a, &w)?.report(),
        normalization,
        citations: CITATIONS.to_vec(),
        notes,
        class,
    })
}
