//! Exact JSON file formats for line, curve, and point configurations.
//!
//! Rationals are strings (`"num/den"`, bare integers allowed) so no value
//! ever passes through floating point. Directions are plain integers.
//! Files written by [`write_config`] round-trip byte-identically through
//! [`parse_config`].

use std::path::Path;
use std::str::FromStr;

use incidence_core::curves::{CurveError, CurveId, ParamCurve, CURVE_PARAM};
use incidence_core::geom::{GeomError, Line3, LineId, Point3};
use incidence_core::joints::LineConfig;
use incidence_core::poly::UniPoly;
use incidence_core::scalar::ExactScalar;
use serde::{Deserialize, Serialize};

use crate::gen::Generated;

/// Errors from reading, writing, and validating configuration files.
#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad rational '{0}'")]
    BadScalar(String),
    #[error("bad direction: {0}")]
    Geometry(#[from] GeomError),
    #[error("bad curve: {0}")]
    Curve(#[from] CurveError),
    #[error("direction component {0} does not fit a 64-bit integer")]
    DirectionOverflow(String),
}

/// On-disk configuration: tagged by kind.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ConfigFile {
    Lines { lines: Vec<LineEntry> },
    Curves { degree_bound: u32, curves: Vec<CurveEntry> },
    Points { points: Vec<[String; 3]> },
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct LineEntry {
    /// Base point, exact rationals.
    pub point: [String; 3],
    /// Canonical integer direction.
    pub dir: [i64; 3],
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct CurveEntry {
    pub id: u32,
    /// Ascending coefficients, exact rationals.
    pub px: Vec<String>,
    pub py: Vec<String>,
    pub pz: Vec<String>,
}

fn scalar(s: &str) -> Result<ExactScalar, IoError> {
    ExactScalar::from_str(s).map_err(|_| IoError::BadScalar(s.to_string()))
}

fn scalar_triple(t: &[String; 3]) -> Result<[ExactScalar; 3], IoError> {
    Ok([scalar(&t[0])?, scalar(&t[1])?, scalar(&t[2])?])
}

/// Renders a generated configuration into its on-disk form.
pub fn to_file(config: &Generated) -> Result<ConfigFile, IoError> {
    match config {
        Generated::Lines(config) => {
            let mut lines = Vec::with_capacity(config.len());
            for l in config.lines() {
                let b = l.base().coords();
                let d = l.dir().components();
                let dir_i64 = |c: &num_bigint::BigInt| {
                    c.try_into().map_err(|_| IoError::DirectionOverflow(c.to_string()))
                };
                lines.push(LineEntry {
                    point: [b[0].to_string(), b[1].to_string(), b[2].to_string()],
                    dir: [dir_i64(&d[0])?, dir_i64(&d[1])?, dir_i64(&d[2])?],
                });
            }
            Ok(ConfigFile::Lines { lines })
        }
        Generated::Curves(curves) => {
            let degree_bound = curves.iter().map(|c| c.degree_bound()).max().unwrap_or(1);
            let entries = curves
                .iter()
                .map(|c| {
                    let coeffs = |p: &UniPoly| -> Vec<String> {
                        p.coeffs().iter().map(|c| c.to_string()).collect()
                    };
                    let [px, py, pz] = c.coordinates();
                    CurveEntry {
                        id: c.id().0,
                        px: coeffs(px),
                        py: coeffs(py),
                        pz: coeffs(pz),
                    }
                })
                .collect();
            Ok(ConfigFile::Curves { degree_bound, curves: entries })
        }
        Generated::Points(points) => Ok(ConfigFile::Points {
            points: points
                .iter()
                .map(|p| {
                    let c = p.coords();
                    [c[0].to_string(), c[1].to_string(), c[2].to_string()]
                })
                .collect(),
        }),
    }
}

/// Reconstructs configurations from their on-disk form.
pub fn from_file(file: &ConfigFile, provenance: &str) -> Result<Generated, IoError> {
    match file {
        ConfigFile::Lines { lines } => {
            let mut parsed = Vec::with_capacity(lines.len());
            for (i, entry) in lines.iter().enumerate() {
                let p = scalar_triple(&entry.point)?;
                let d = [
                    ExactScalar::from(entry.dir[0]),
                    ExactScalar::from(entry.dir[1]),
                    ExactScalar::from(entry.dir[2]),
                ];
                let base = Point3::new(p[0].clone(), p[1].clone(), p[2].clone());
                parsed.push(Line3::new(&base, &d, LineId(i as u32))?);
            }
            Ok(Generated::Lines(LineConfig::new(parsed, provenance)))
        }
        ConfigFile::Curves { degree_bound, curves } => {
            let mut parsed = Vec::with_capacity(curves.len());
            for entry in curves {
                let poly = |coeffs: &[String]| -> Result<UniPoly, IoError> {
                    let cs = coeffs.iter().map(|s| scalar(s)).collect::<Result<Vec<_>, _>>()?;
                    Ok(UniPoly::new(CURVE_PARAM, cs))
                };
                parsed.push(ParamCurve::new(
                    poly(&entry.px)?,
                    poly(&entry.py)?,
                    poly(&entry.pz)?,
                    *degree_bound,
                    CurveId(entry.id),
                )?);
            }
            Ok(Generated::Curves(parsed))
        }
        ConfigFile::Points { points } => {
            let parsed = points
                .iter()
                .map(|t| {
                    let c = scalar_triple(t)?;
                    Ok(Point3::new(c[0].clone(), c[1].clone(), c[2].clone()))
                })
                .collect::<Result<Vec<_>, IoError>>()?;
            Ok(Generated::Points(parsed))
        }
    }
}

/// The canonical serialization: pretty-printed JSON plus a final newline.
pub fn render(file: &ConfigFile) -> Result<String, IoError> {
    Ok(format!("{}\n", serde_json::to_string_pretty(file)?))
}

pub fn parse(text: &str) -> Result<ConfigFile, IoError> {
    Ok(serde_json::from_str(text)?)
}

pub fn write_config(path: &Path, config: &Generated) -> Result<(), IoError> {
    std::fs::write(path, render(&to_file(config)?)?)?;
    Ok(())
}

pub fn read_config(path: &Path) -> Result<Generated, IoError> {
    let text = std::fs::read_to_string(path)?;
    let file = parse(&text)?;
    from_file(&file, &format!("file {}", path.display()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::generate;

    #[test]
    fn lines_round_trip_byte_identical() {
        let config = generate("mixed:grid:2+bush:4:seed1").unwrap();
        let file = to_file(&config).unwrap();
        let text = render(&file).unwrap();
        let reparsed = parse(&text).unwrap();
        assert_eq!(file, reparsed);
        assert_eq!(text, render(&reparsed).unwrap());
        // Geometry survives the trip.
        let Generated::Lines(original) = &config else { panic!() };
        let Generated::Lines(recovered) = from_file(&reparsed, "t").unwrap() else {
            panic!()
        };
        assert_eq!(original.lines(), recovered.lines());
    }

    #[test]
    fn curves_round_trip() {
        let config = generate("curve_bush:3:3:seed2").unwrap();
        let text = render(&to_file(&config).unwrap()).unwrap();
        let Generated::Curves(recovered) = from_file(&parse(&text).unwrap(), "t").unwrap()
        else {
            panic!()
        };
        let Generated::Curves(original) = &config else { panic!() };
        assert_eq!(original, &recovered);
    }

    #[test]
    fn points_round_trip() {
        let config = generate("random:12:seed9").unwrap();
        let text = render(&to_file(&config).unwrap()).unwrap();
        let Generated::Points(recovered) = from_file(&parse(&text).unwrap(), "t").unwrap()
        else {
            panic!()
        };
        let Generated::Points(original) = &config else { panic!() };
        assert_eq!(original, &recovered);
    }

    #[test]
    fn rational_coordinates_survive() {
        let text = r#"{
  "kind": "lines",
  "lines": [
    { "point": ["1/2", "-3", "0"], "dir": [0, 0, 1] }
  ]
}
"#;
        let Generated::Lines(config) = from_file(&parse(text).unwrap(), "t").unwrap() else {
            panic!()
        };
        assert_eq!(config.len(), 1);
        assert_eq!(*config.lines()[0].base().coords()[0], ExactScalar::ratio(1, 2));
    }

    #[test]
    fn bad_inputs_are_rejected() {
        assert!(parse("{\"kind\": \"nonsense\"}").is_err());
        let zero_dir = r#"{"kind":"lines","lines":[{"point":["0","0","0"],"dir":[0,0,0]}]}"#;
        assert!(from_file(&parse(zero_dir).unwrap(), "t").is_err());
        let bad_scalar = r#"{"kind":"points","points":[["1/0","2","3"]]}"#;
        assert!(from_file(&parse(bad_scalar).unwrap(), "t").is_err());
    }
}
