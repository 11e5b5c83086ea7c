//! File formats: field CSV + JSON sidecar, coefficient JSON, spectrum CSV,
//! SHE-curve CSV, selection-report JSON.
//!
//! All writers are lossless at 64-bit precision (18 significant digits in
//! the CSVs, shortest-round-trip JSON numbers), and every format carries a
//! `format_version` field. A field file `shape.csv` travels with a sidecar
//! `shape.csv.json` recording the grid kind and parameters; the CSV itself
//! has one `theta,phi,weight,v0[,v1,v2]` row per node in theta-major order.

use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::entropy::{LevelSpectrum, OrderSelectionReport, SheCurve};
use crate::error::{Error, Result};
use crate::grid::{GridKind, SphereGrid};
use crate::transform::{coefficient_count, CoefficientPyramid, RealCoefficient, SampledSphericalField};

pub const FORMAT_VERSION: u32 = 1;

/// Sidecar path of a field file: the file's path with `.json` appended.
pub fn sidecar_path(path: &Path) -> PathBuf {
    let mut os = path.as_os_str().to_owned();
    os.push(".json");
    PathBuf::from(os)
}

#[derive(Debug, Serialize, Deserialize)]
struct FieldSidecar {
    format_version: u32,
    #[serde(flatten)]
    grid: GridKind,
    channels: usize,
}

/// Write a sampled field as CSV plus sidecar. Lossless round trip with
/// [`read_field`].
pub fn write_field(path: &Path, field: &SampledSphericalField) -> Result<()> {
    let sidecar = FieldSidecar {
        format_version: FORMAT_VERSION,
        grid: field.grid().kind(),
        channels: field.channels(),
    };
    fs::write(
        sidecar_path(path),
        serde_json::to_string_pretty(&sidecar).expect("sidecar serialization"),
    )?;

    let mut w = BufWriter::new(fs::File::create(path)?);
    write!(w, "theta,phi,weight")?;
    for c in 0..field.channels() {
        write!(w, ",v{c}")?;
    }
    writeln!(w)?;
    let grid = field.grid();
    for (node, (point, &weight)) in grid.nodes().zip(grid.weights()).enumerate() {
        write!(w, "{:.17e},{:.17e},{:.17e}", point.theta(), point.phi(), weight)?;
        for c in 0..field.channels() {
            write!(w, ",{:.17e}", field.value(node, c))?;
        }
        writeln!(w)?;
    }
    w.flush()?;
    Ok(())
}

fn parse_f64(token: &str, line: usize, what: &str) -> Result<f64> {
    token.trim().parse::<f64>().map_err(|_| Error::Parse {
        line,
        message: format!("invalid {what}: '{token}'"),
    })
}

/// Read a field file written by [`write_field`]; validates the sidecar,
/// the product-grid structure, and the weight-sum invariant.
pub fn read_field(path: &Path) -> Result<SampledSphericalField> {
    let sidecar_file = sidecar_path(path);
    let sidecar: FieldSidecar = serde_json::from_str(
        &fs::read_to_string(&sidecar_file).map_err(|e| Error::Parse {
            line: 0,
            message: format!("missing sidecar {}: {e}", sidecar_file.display()),
        })?,
    )
    .map_err(|e| Error::Parse {
        line: 0,
        message: format!("malformed sidecar {}: {e}", sidecar_file.display()),
    })?;
    if sidecar.format_version != FORMAT_VERSION {
        return Err(Error::Parse {
            line: 0,
            message: format!("unsupported format_version {}", sidecar.format_version),
        });
    }

    let text = fs::read_to_string(path)?;
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "empty file".into(),
    })?;
    let expected_header = {
        let mut h = String::from("theta,phi,weight");
        for c in 0..sidecar.channels {
            h.push_str(&format!(",v{c}"));
        }
        h
    };
    if header.trim() != expected_header {
        return Err(Error::Parse {
            line: 1,
            message: format!("expected header '{expected_header}', got '{}'", header.trim()),
        });
    }

    let n_cols = 3 + sidecar.channels;
    let mut thetas: Vec<f64> = Vec::new();
    let mut phis: Vec<f64> = Vec::new();
    let mut weights = Vec::new();
    let mut values = Vec::new();
    let mut row_angles: Vec<(f64, f64)> = Vec::new();
    for (idx, raw) in lines {
        let line_no = idx + 1;
        if raw.trim().is_empty() {
            continue;
        }
        let tokens: Vec<&str> = raw.split(',').collect();
        if tokens.len() != n_cols {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected {n_cols} columns, got {}", tokens.len()),
            });
        }
        let theta = parse_f64(tokens[0], line_no, "theta")?;
        let phi = parse_f64(tokens[1], line_no, "phi")?;
        weights.push(parse_f64(tokens[2], line_no, "weight")?);
        for (c, token) in tokens[3..].iter().enumerate() {
            values.push(parse_f64(token, line_no, &format!("v{c}"))?);
        }
        row_angles.push((theta, phi));
        if thetas.last() != Some(&theta) {
            thetas.push(theta);
        }
        if thetas.len() == 1 {
            phis.push(phi);
        }
    }
    let n_phi = phis.len();
    if n_phi == 0 || row_angles.len() != thetas.len() * n_phi {
        return Err(Error::Parse {
            line: row_angles.len() + 1,
            message: format!(
                "rows do not form a {} x {n_phi} product grid",
                thetas.len()
            ),
        });
    }
    for (r, &(theta, phi)) in row_angles.iter().enumerate() {
        if theta != thetas[r / n_phi] || phi != phis[r % n_phi] {
            return Err(Error::Parse {
                line: r + 2,
                message: "node out of theta-major product order".into(),
            });
        }
    }
    let grid = SphereGrid::from_parts(thetas, phis, weights, sidecar.grid)?;
    SampledSphericalField::new(grid, sidecar.channels, values)
}

#[derive(Debug, Serialize, Deserialize)]
struct CoefficientFile {
    format_version: u32,
    #[serde(rename = "L")]
    l_max: u32,
    channels: usize,
    convention: String,
    ordering: String,
    /// `[re, im]` pairs, channel-major, each channel in canonical order.
    coeffs: Vec<[f64; 2]>,
}

/// Write a coefficient pyramid as JSON (convention `complex-CS`, canonical
/// l-major ordering).
pub fn write_coefficients(path: &Path, pyramid: &CoefficientPyramid) -> Result<()> {
    let file = CoefficientFile {
        format_version: FORMAT_VERSION,
        l_max: pyramid.l_max(),
        channels: pyramid.channels(),
        convention: "complex-CS".into(),
        ordering: "l-major".into(),
        coeffs: pyramid.coeffs().iter().map(|c| [c.re, c.im]).collect(),
    };
    fs::write(path, serde_json::to_string(&file).expect("coefficient serialization"))?;
    Ok(())
}

/// Read a coefficient pyramid written by [`write_coefficients`].
pub fn read_coefficients(path: &Path) -> Result<CoefficientPyramid> {
    let file: CoefficientFile =
        serde_json::from_str(&fs::read_to_string(path)?).map_err(|e| Error::Parse {
            line: 0,
            message: format!("malformed coefficient file: {e}"),
        })?;
    if file.format_version != FORMAT_VERSION {
        return Err(Error::Parse {
            line: 0,
            message: format!("unsupported format_version {}", file.format_version),
        });
    }
    if file.convention != "complex-CS" || file.ordering != "l-major" {
        return Err(Error::Parse {
            line: 0,
            message: format!(
                "unsupported convention/ordering '{}'/'{}'",
                file.convention, file.ordering
            ),
        });
    }
    if file.coeffs.len() != file.channels * coefficient_count(file.l_max) {
        return Err(Error::Parse {
            line: 0,
            message: format!(
                "{} coefficients for L = {} x {} channels",
                file.coeffs.len(),
                file.l_max,
                file.channels
            ),
        });
    }
    CoefficientPyramid::from_coeffs(
        file.l_max,
        file.channels,
        file.coeffs
            .iter()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect(),
    )
}

/// Spectrum CSV: `l,m,channel,re,im,energy`, channel-major then canonical
/// `(l, m)` order; `(l_max + 1)^2` rows per channel.
pub fn write_spectrum(path: &Path, pyramid: &CoefficientPyramid) -> Result<()> {
    let mut w = BufWriter::new(fs::File::create(path)?);
    writeln!(w, "l,m,channel,re,im,energy")?;
    for channel in 0..pyramid.channels() {
        for l in 0..=pyramid.l_max() {
            for m in -(l as i32)..=(l as i32) {
                let s = pyramid.coeff(channel, l, m);
                writeln!(
                    w,
                    "{l},{m},{channel},{:.17e},{:.17e},{:.17e}",
                    s.re,
                    s.im,
                    s.norm_sqr()
                )?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

/// SHE-curve CSV: `J,SHE,cumulative_energy_fraction`.
pub fn write_she_curve(path: &Path, curve: &SheCurve, spectrum: &LevelSpectrum) -> Result<()> {
    if curve.l_max() != spectrum.l_max() {
        return Err(Error::ShapeMismatch(format!(
            "curve band limit {} vs spectrum band limit {}",
            curve.l_max(),
            spectrum.l_max()
        )));
    }
    let mut w = BufWriter::new(fs::File::create(path)?);
    writeln!(w, "J,SHE,cumulative_energy_fraction")?;
    let total = spectrum.total_energy();
    let mut cumulative = 0.0;
    for j in 0..=curve.l_max() {
        cumulative += spectrum.level_energy(j);
        writeln!(w, "{j},{:.17e},{:.17e}", curve.value(j), cumulative / total)?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Serialize)]
struct ReportFile<'a> {
    format_version: u32,
    #[serde(flatten)]
    report: &'a OrderSelectionReport,
}

/// Selection report as pretty JSON.
pub fn write_selection_report(path: &Path, report: &OrderSelectionReport) -> Result<()> {
    let file = ReportFile {
        format_version: FORMAT_VERSION,
        report,
    };
    fs::write(path, serde_json::to_string_pretty(&file).expect("report serialization"))?;
    Ok(())
}

/// Real cosine/sine pair CSV: `l,m,channel,a,b`.
pub fn write_real_ab(path: &Path, pairs: &[RealCoefficient]) -> Result<()> {
    let mut w = BufWriter::new(fs::File::create(path)?);
    writeln!(w, "l,m,channel,a,b")?;
    for rc in pairs {
        writeln!(w, "{},{},{},{:.17e},{:.17e}", rc.l, rc.m, rc.channel, rc.a, rc.b)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entropy::{level_spectrum, she_curve};
    use crate::grid::equiangular_grid;
    use crate::shapes::{generate, GridSpec, OutputForm, ShapeKind, ShapeSpec};
    use crate::transform::analyze;

    struct TempFile(PathBuf);

    impl TempFile {
        fn new(name: &str) -> Self {
            let path = std::env::temp_dir().join(format!(
                "sphentropy-io-{}-{name}",
                std::process::id()
            ));
            TempFile(path)
        }
        fn path(&self) -> &Path {
            &self.0
        }
    }

    impl Drop for TempFile {
        fn drop(&mut self) {
            let _ = fs::remove_file(&self.0);
            let _ = fs::remove_file(sidecar_path(&self.0));
        }
    }

    fn sample_field(form: OutputForm) -> SampledSphericalField {
        generate(&ShapeSpec {
            kind: ShapeKind::RandomBandlimited {
                max_degree: 3,
                seed: 11,
            },
            grid: GridSpec::Gauss { parameter: 4 },
            form,
        })
        .unwrap()
    }

    #[test]
    fn field_round_trip_is_bitwise() {
        for (name, form) in [("f1.csv", OutputForm::Radial), ("f3.csv", OutputForm::Surface)] {
            let tmp = TempFile::new(name);
            let field = sample_field(form);
            write_field(tmp.path(), &field).unwrap();
            let back = read_field(tmp.path()).unwrap();
            assert_eq!(field.channels(), back.channels());
            assert_eq!(field.values(), back.values());
            assert_eq!(field.grid().weights(), back.grid().weights());
            assert_eq!(field.grid().kind(), back.grid().kind());
        }
    }

    #[test]
    fn equiangular_51_has_2601_rows() {
        let tmp = TempFile::new("eq51.csv");
        let grid = equiangular_grid(51, 51).unwrap();
        let n = grid.n_nodes();
        let field = SampledSphericalField::new(grid, 1, vec![1.0; n]).unwrap();
        write_field(tmp.path(), &field).unwrap();
        let text = fs::read_to_string(tmp.path()).unwrap();
        let data_rows = text.lines().count() - 1;
        assert_eq!(data_rows, 2601);
        let back = read_field(tmp.path()).unwrap();
        assert_eq!(back.grid().n_nodes(), 2601);
    }

    #[test]
    fn malformed_row_names_its_line() {
        let tmp = TempFile::new("bad.csv");
        let field = sample_field(OutputForm::Radial);
        write_field(tmp.path(), &field).unwrap();
        let mut text = fs::read_to_string(tmp.path()).unwrap();
        // clobber the third data row (line 4)
        let mut lines: Vec<&str> = text.lines().collect();
        let broken = format!("{},oops", lines[3].rsplit_once(',').unwrap().0);
        lines[3] = &broken;
        text = lines.join("\n");
        fs::write(tmp.path(), text).unwrap();
        match read_field(tmp.path()) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 4),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn missing_sidecar_is_a_parse_error() {
        let tmp = TempFile::new("nosidecar.csv");
        let field = sample_field(OutputForm::Radial);
        write_field(tmp.path(), &field).unwrap();
        fs::remove_file(sidecar_path(tmp.path())).unwrap();
        assert!(matches!(
            read_field(tmp.path()),
            Err(Error::Parse { line: 0, .. })
        ));
    }

    #[test]
    fn coefficient_round_trip_is_bitwise() {
        let tmp = TempFile::new("coeffs.json");
        let pyramid = analyze(&sample_field(OutputForm::Surface), 4).unwrap();
        write_coefficients(tmp.path(), &pyramid).unwrap();
        let back = read_coefficients(tmp.path()).unwrap();
        assert_eq!(pyramid, back);
    }

    #[test]
    fn spectrum_row_counts_match_pyramid_sizes() {
        for (l_max, rows) in [(4u32, 25usize), (7, 64), (17, 324)] {
            let tmp = TempFile::new(&format!("spectrum{l_max}.csv"));
            let pyramid = CoefficientPyramid::zeros(l_max, 1).unwrap();
            write_spectrum(tmp.path(), &pyramid).unwrap();
            let text = fs::read_to_string(tmp.path()).unwrap();
            assert_eq!(text.lines().count() - 1, rows);
        }
    }

    #[test]
    fn she_curve_csv_shape() {
        let tmp = TempFile::new("she.csv");
        let pyramid = analyze(&sample_field(OutputForm::Radial), 4).unwrap();
        let curve = she_curve(&pyramid);
        let spectrum = level_spectrum(&pyramid).unwrap();
        write_she_curve(tmp.path(), &curve, &spectrum).unwrap();
        let text = fs::read_to_string(tmp.path()).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "J,SHE,cumulative_energy_fraction");
        assert_eq!(lines.count(), 5);
        assert!(text.trim_end().lines().last().unwrap().ends_with("e0"));
    }

    #[test]
    fn selection_report_serializes() {
        let tmp = TempFile::new("report.json");
        let pyramid = analyze(&sample_field(OutputForm::Radial), 4).unwrap();
        let report = crate::entropy::select_order(&pyramid, 1e-6, 1).unwrap();
        write_selection_report(tmp.path(), &report).unwrap();
        let text = fs::read_to_string(tmp.path()).unwrap();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["format_version"], 1);
        assert_eq!(v["selected_order"], 3);
        assert_eq!(v["criterion"], "stabilization");
        assert_eq!(v["trace"].as_array().unwrap().len(), 5);
    }

    #[test]
    fn real_ab_csv_writes_all_pairs() {
        let tmp = TempFile::new("ab.csv");
        let pyramid = analyze(&sample_field(OutputForm::Radial), 4).unwrap();
        let pairs = crate::transform::real_ab_coefficients(&pyramid);
        write_real_ab(tmp.path(), &pairs).unwrap();
        let text = fs::read_to_string(tmp.path()).unwrap();
        // one row per (l, m) with m >= 0: sum_{l<=4} (l+1) = 15
        assert_eq!(text.lines().count() - 1, 15);
    }
}

