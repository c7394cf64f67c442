//! Declarative description of the radially symmetric scattering
//! configurations the tool analyses, with validation and the induced
//! per-mode interior/exterior wave numbers.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ScattererError {
    #[error("invalid scatterer: {0}")]
    Invalid(String),
    #[error("operation not applicable: {0}")]
    NotApplicable(String),
}

/// Boundary condition / physics of the obstacle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScattererKind {
    Free,
    ImpenetrableDirichlet,
    ImpenetrableNeumann,
    Penetrable,
}

/// Geometry + physics of one scattering configuration.
///
/// Serialised form (unknown keys rejected):
/// `{"dimension":3,"kind":"penetrable","radius":1.0,"contrast":0.5,"alpha":1.0}`
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScattererSpec {
    pub dimension: u8,
    pub kind: ScattererKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radius: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub contrast: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
}

/// Ray-dynamical classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TrappingClass {
    Nontrapping,
    Trapping,
}

impl ScattererSpec {
    pub fn free(dimension: u8) -> ScattererSpec {
        ScattererSpec {
            dimension,
            kind: ScattererKind::Free,
            radius: None,
            contrast: None,
            alpha: None,
        }
    }

    pub fn dirichlet_ball(dimension: u8, radius: f64) -> ScattererSpec {
        ScattererSpec {
            dimension,
            kind: ScattererKind::ImpenetrableDirichlet,
            radius: Some(radius),
            contrast: None,
            alpha: None,
        }
    }

    pub fn neumann_ball(dimension: u8, radius: f64) -> ScattererSpec {
        ScattererSpec {
            dimension,
            kind: ScattererKind::ImpenetrableNeumann,
            radius: Some(radius),
            contrast: None,
            alpha: None,
        }
    }

    pub fn penetrable(dimension: u8, radius: f64, contrast: f64, alpha: f64) -> ScattererSpec {
        ScattererSpec {
            dimension,
            kind: ScattererKind::Penetrable,
            radius: Some(radius),
            contrast: Some(contrast),
            alpha: Some(alpha),
        }
    }

    /// Check the per-kind field constraints.
    pub fn validate(&self) -> Result<(), ScattererError> {
        if self.dimension != 2 && self.dimension != 3 {
            return Err(ScattererError::Invalid(format!(
                "dimension must be 2 or 3, got {}",
                self.dimension
            )));
        }
        match self.kind {
            ScattererKind::Free => {
                if self.radius.is_some() || self.contrast.is_some() || self.alpha.is_some() {
                    return Err(ScattererError::Invalid(
                        "free space admits no radius/contrast/alpha".into(),
                    ));
                }
            }
            ScattererKind::ImpenetrableDirichlet | ScattererKind::ImpenetrableNeumann => {
                match self.radius {
                    Some(a) if a > 0.0 => {}
                    _ => {
                        return Err(ScattererError::Invalid(
                            "impenetrable obstacle requires radius > 0".into(),
                        ))
                    }
                }
                if self.contrast.is_some() || self.alpha.is_some() {
                    return Err(ScattererError::Invalid(
                        "impenetrable obstacle admits no contrast/alpha".into(),
                    ));
                }
            }
            ScattererKind::Penetrable => {
                match (self.radius, self.contrast, self.alpha) {
                    (Some(a), Some(c), Some(al)) if a > 0.0 && c > 0.0 && al > 0.0 => {}
                    _ => {
                        return Err(ScattererError::Invalid(
                            "penetrable obstacle requires radius, contrast, alpha all > 0".into(),
                        ))
                    }
                }
            }
        }
        Ok(())
    }

    pub fn radius_or_zero(&self) -> f64 {
        self.radius.unwrap_or(0.0)
    }

    /// Interior sound-speed contrast (1 outside penetrable obstacles).
    pub fn contrast_or_one(&self) -> f64 {
        self.contrast.unwrap_or(1.0)
    }

    pub fn alpha_or_one(&self) -> f64 {
        self.alpha.unwrap_or(1.0)
    }

    /// Resonance multiplicity of angular mode `ell`: 2l+1 in 3-d from the
    /// spherical-harmonic degeneracy, 1 (l = 0) or 2 otherwise in 2-d.
    pub fn mode_multiplicity(&self, ell: u32) -> u32 {
        if self.dimension == 3 {
            2 * ell + 1
        } else if ell == 0 {
            1
        } else {
            2
        }
    }
}

/// Normalise a degenerate penetrable spec (c = 1, alpha = 1) to free
/// space. Returns the effective spec and a warning string if rewritten.
pub fn normalize(spec: &ScattererSpec) -> (ScattererSpec, Option<String>) {
    if spec.kind == ScattererKind::Penetrable
        && spec.contrast == Some(1.0)
        && spec.alpha == Some(1.0)
    {
        (
            ScattererSpec::free(spec.dimension),
            Some("penetrable scatterer with c = 1, alpha = 1 has free-space coefficients; treating as free".into()),
        )
    } else {
        (*spec, None)
    }
}

/// Ray-trapping label. Penetrable obstacles with c < 1 trap glancing
/// rays by total internal reflection; every other supported
/// configuration is nontrapping.
pub fn classify(spec: &ScattererSpec) -> TrappingClass {
    match spec.kind {
        ScattererKind::Penetrable if spec.contrast_or_one() < 1.0 => TrappingClass::Trapping,
        _ => TrappingClass::Nontrapping,
    }
}

/// Interior wavenumber k/c of a penetrable scatterer.
pub fn interior_wavenumber(
    spec: &ScattererSpec,
    k: Complex64,
) -> Result<Complex64, ScattererError> {
    if spec.kind != ScattererKind::Penetrable {
        return Err(ScattererError::NotApplicable(
            "interior wavenumber is defined for penetrable scatterers only".into(),
        ));
    }
    Ok(k / spec.contrast_or_one())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classification_table() {
        let trapping = ScattererSpec::penetrable(3, 1.0, 0.5, 1.0);
        assert_eq!(classify(&trapping), TrappingClass::Trapping);

        let dirichlet = ScattererSpec::dirichlet_ball(3, 1.0);
        assert_eq!(classify(&dirichlet), TrappingClass::Nontrapping);

        let degenerate = ScattererSpec::penetrable(3, 1.0, 1.0, 1.0);
        assert_eq!(classify(&degenerate), TrappingClass::Nontrapping);
        let (normalized, warning) = normalize(&degenerate);
        assert_eq!(normalized.kind, ScattererKind::Free);
        assert!(warning.is_some());

        let fast = ScattererSpec::penetrable(3, 1.0, 2.0, 1.0);
        assert_eq!(classify(&fast), TrappingClass::Nontrapping);
    }

    #[test]
    fn interior_wavenumber_examples() {
        let spec = ScattererSpec::penetrable(3, 1.0, 0.5, 1.0);
        let k = interior_wavenumber(&spec, Complex64::new(10.0, 0.0)).unwrap();
        assert_eq!(k, Complex64::new(20.0, 0.0));

        let spec = ScattererSpec::penetrable(3, 1.0, 1.0, 2.0);
        let k = interior_wavenumber(&spec, Complex64::new(7.3, 0.0)).unwrap();
        assert_eq!(k, Complex64::new(7.3, 0.0));

        let spec = ScattererSpec::penetrable(2, 1.0, 2.0, 1.0);
        let k = interior_wavenumber(&spec, Complex64::new(4.0, -0.1)).unwrap();
        assert_eq!(k, Complex64::new(2.0, -0.05));

        // Exact when c is a power of two.
        let spec = ScattererSpec::penetrable(3, 1.0, 0.25, 1.0);
        let k = interior_wavenumber(&spec, Complex64::new(3.7, 0.0)).unwrap();
        assert_eq!(k.re * 0.25, 3.7);

        let free = ScattererSpec::free(3);
        assert!(interior_wavenumber(&free, Complex64::new(1.0, 0.0)).is_err());
    }

    #[test]
    fn json_schema_round_trip_and_strictness() {
        let text = r#"{"dimension":3,"kind":"penetrable","radius":1.0,"contrast":0.5,"alpha":1.0}"#;
        let spec: ScattererSpec = serde_json::from_str(text).unwrap();
        spec.validate().unwrap();
        assert_eq!(spec, ScattererSpec::penetrable(3, 1.0, 0.5, 1.0));
        let back = serde_json::to_string(&spec).unwrap();
        assert_eq!(back, text);

        let unknown = r#"{"dimension":3,"kind":"free","color":"blue"}"#;
        assert!(serde_json::from_str::<ScattererSpec>(unknown).is_err());

        let free_extra = r#"{"dimension":3,"kind":"free","radius":1.0}"#;
        let spec: ScattererSpec = serde_json::from_str(free_extra).unwrap();
        assert!(spec.validate().is_err());
    }
}
