//! Binary containers for fields ("CWF1") and coefficient volumes ("CWC1"),
//! CSV export of coefficient slices, and key=value config parsing.
//!
//! CWF1 layout (little-endian): magic `CWF1`, u32 n, u32 N, f64 L,
//! u8 domain (0 = space, 1 = frequency), then N^n · 2^n f64 blade
//! coefficients, samples row-major, blades in ascending bitmask order.
//!
//! CWC1 layout: magic `CWC1`, u32 n, u32 N, f64 L, f64 a_min, f64 a_max,
//! u32 n_scales, u32 n_angles[3], then the coefficient data in storage
//! order (scale-major, then angle, then translation), blades ascending.

use crate::cft::Spectrum;
use crate::clifford::{Dimension, Multivector};
use crate::cwt::CoefficientVolume;
use crate::error::{Error, Result};
use crate::field::{GridSpec, MultivectorField};
use crate::simgroup::{GroupGrid, GroupParams};
use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

const FIELD_MAGIC: &[u8; 4] = b"CWF1";
const VOLUME_MAGIC: &[u8; 4] = b"CWC1";

/// Contents of a CWF1 file: a spatial field or a frequency-domain spectrum.
#[derive(Debug, Clone)]
pub enum FieldData {
    Space(MultivectorField),
    Frequency(Spectrum),
}

fn write_u32<W: Write>(w: &mut W, v: u32) -> Result<()> {
    w.write_all(&v.to_le_bytes())?;
    Ok(())
}

fn write_f64<W: Write>(w: &mut W, v: f64) -> Result<()> {
    w.write_all(&v.to_le_bytes())?;
    Ok(())
}

fn read_u32<R: Read>(r: &mut R) -> Result<u32> {
    let mut buf = [0u8; 4];
    r.read_exact(&mut buf)?;
    Ok(u32::from_le_bytes(buf))
}

fn read_f64<R: Read>(r: &mut R) -> Result<f64> {
    let mut buf = [0u8; 8];
    r.read_exact(&mut buf)?;
    Ok(f64::from_le_bytes(buf))
}

fn read_u8<R: Read>(r: &mut R) -> Result<u8> {
    let mut buf = [0u8; 1];
    r.read_exact(&mut buf)?;
    Ok(buf[0])
}

fn check_magic<R: Read>(r: &mut R, expect: &[u8; 4]) -> Result<()> {
    let mut buf = [0u8; 4];
    r.read_exact(&mut buf)?;
    if &buf != expect {
        return Err(Error::Format(format!(
            "bad magic: expected {:?}, found {:?}",
            String::from_utf8_lossy(expect),
            String::from_utf8_lossy(&buf)
        )));
    }
    Ok(())
}

fn write_samples<W: Write>(w: &mut W, dim: Dimension, data: &[Multivector]) -> Result<()> {
    for m in data {
        for mask in 0..dim.blade_count() {
            write_f64(w, m.coeff(mask))?;
        }
    }
    Ok(())
}

fn read_samples<R: Read>(r: &mut R, dim: Dimension, count: usize) -> Result<Vec<Multivector>> {
    let blades = dim.blade_count();
    let mut data = Vec::with_capacity(count);
    for _ in 0..count {
        let mut m = Multivector::zero(dim);
        for mask in 0..blades {
            m.set_coeff(mask, read_f64(r)?);
        }
        data.push(m);
    }
    data.iter()
        .position(|m| !m.is_finite())
        .map_or(Ok(data), |i| Err(Error::NonFiniteSample(i)))
}

fn read_grid_header<R: Read>(r: &mut R) -> Result<GridSpec> {
    let n = read_u32(r)? as usize;
    let npts = read_u32(r)? as usize;
    let half_width = read_f64(r)?;
    let dim = Dimension::new(n)?;
    GridSpec::new(dim, npts, half_width)
}

fn write_grid_header<W: Write>(w: &mut W, grid: &GridSpec) -> Result<()> {
    write_u32(w, grid.dim().n() as u32)?;
    write_u32(w, grid.points_per_axis() as u32)?;
    write_f64(w, grid.half_width())
}

fn write_cwf1<W: Write>(w: &mut W, grid: &GridSpec, domain: u8, data: &[Multivector]) -> Result<()> {
    w.write_all(FIELD_MAGIC)?;
    write_grid_header(w, grid)?;
    w.write_all(&[domain])?;
    write_samples(w, grid.dim(), data)
}

/// Writes a spatial field as CWF1.
pub fn write_field(path: &Path, f: &MultivectorField) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_cwf1(&mut w, f.grid(), 0, f.data())?;
    w.flush()?;
    Ok(())
}

/// Writes a frequency-domain spectrum as CWF1 with the domain flag set.
pub fn write_spectrum(path: &Path, s: &Spectrum) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_cwf1(&mut w, s.grid(), 1, s.data())?;
    w.flush()?;
    Ok(())
}

/// Reads a CWF1 file in either domain.
pub fn read_field_data(path: &Path) -> Result<FieldData> {
    let mut r = BufReader::new(File::open(path)?);
    check_magic(&mut r, FIELD_MAGIC)?;
    let grid = read_grid_header(&mut r)?;
    let domain = read_u8(&mut r)?;
    let data = read_samples(&mut r, grid.dim(), grid.total_points())?;
    match domain {
        0 => Ok(FieldData::Space(MultivectorField::new(grid, data)?)),
        1 => Ok(FieldData::Frequency(Spectrum::new(grid, data)?)),
        other => Err(Error::Format(format!(
            "unknown domain flag {other}, expected 0 (space) or 1 (frequency)"
        ))),
    }
}

/// Reads a CWF1 file that must contain a spatial field.
pub fn read_field(path: &Path) -> Result<MultivectorField> {
    match read_field_data(path)? {
        FieldData::Space(f) => Ok(f),
        FieldData::Frequency(_) => Err(Error::Format(
            "expected a spatial field, found a frequency-domain spectrum".into(),
        )),
    }
}

/// Writes a coefficient volume as CWC1.
pub fn write_volume(path: &Path, t: &CoefficientVolume) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    let gg = t.group();
    let p = gg.params();
    w.write_all(VOLUME_MAGIC)?;
    write_grid_header(&mut w, gg.translations())?;
    write_f64(&mut w, p.a_min)?;
    write_f64(&mut w, p.a_max)?;
    write_u32(&mut w, p.n_scales as u32)?;
    for k in 0..3 {
        write_u32(&mut w, p.n_angles[k] as u32)?;
    }
    write_samples(&mut w, gg.dim(), t.data())?;
    w.flush()?;
    Ok(())
}

/// Reads a CWC1 coefficient volume, rebuilding its group grid.
pub fn read_volume(path: &Path) -> Result<CoefficientVolume> {
    let mut r = BufReader::new(File::open(path)?);
    check_magic(&mut r, VOLUME_MAGIC)?;
    let grid = read_grid_header(&mut r)?;
    let a_min = read_f64(&mut r)?;
    let a_max = read_f64(&mut r)?;
    let n_scales = read_u32(&mut r)? as usize;
    let mut n_angles = [0usize; 3];
    for slot in &mut n_angles {
        *slot = read_u32(&mut r)? as usize;
    }
    let gg = GroupGrid::new(
        grid,
        GroupParams {
            a_min,
            a_max,
            n_scales,
            n_angles,
        },
    )?;
    let data = read_samples(&mut r, gg.dim(), gg.node_count())?;
    CoefficientVolume::new(gg, data)
}

/// Writes one (scale, angle) slice of |T| as CSV: columns b_1..b_n and
/// modulus, plus one column per blade when `with_blades` is set.
pub fn export_csv<W: Write>(
    w: &mut W,
    t: &CoefficientVolume,
    scale_idx: usize,
    angle_idx: usize,
    with_blades: bool,
) -> Result<()> {
    let gg = t.group();
    let grid = gg.translations();
    let dim = gg.dim();
    let n = dim.n();
    let mut header: Vec<String> = (1..=n).map(|a| format!("b{a}")).collect();
    header.push("modulus".into());
    if with_blades {
        header.extend((0..dim.blade_count()).map(|mask| format!("blade{mask}")));
    }
    writeln!(w, "{}", header.join(","))?;
    let slice = t.slice(scale_idx, angle_idx)?;
    for (flat, m) in slice.iter().enumerate() {
        let b = grid.node(flat);
        let mut row: Vec<String> = (0..n).map(|a| format!("{:.17e}", b[a])).collect();
        row.push(format!("{:.17e}", m.modulus()));
        if with_blades {
            row.extend((0..dim.blade_count()).map(|mask| format!("{:.17e}", m.coeff(mask))));
        }
        writeln!(w, "{}", row.join(","))?;
    }
    Ok(())
}

/// Parses a plain-text config: one `key = value` pair per line, `#`
/// comments, blank lines ignored. Later keys override earlier ones.
pub fn parse_key_values(text: &str) -> Result<Vec<(String, String)>> {
    let mut pairs = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::Format(format!("config line {}: expected key = value", lineno + 1))
        })?;
        pairs.push((key.trim().to_string(), value.trim().to_string()));
    }
    Ok(pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::random_band_limited;
    use tempfile::tempdir;

    fn d2() -> Dimension {
        Dimension::new(2).unwrap()
    }

    #[test]
    fn field_roundtrip_is_exact() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("f.cwf");
        let grid = GridSpec::new(d2(), 16, 4.0).unwrap();
        let f = random_band_limited(grid, 11, 4);
        write_field(&path, &f).unwrap();
        let back = read_field(&path).unwrap();
        assert_eq!(back.grid(), f.grid());
        for (a, b) in back.data().iter().zip(f.data()) {
            assert_eq!(a.coeffs(), b.coeffs());
        }
    }

    #[test]
    fn spectrum_roundtrip_keeps_domain() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("s.cwf");
        let grid = GridSpec::new(d2(), 16, 4.0).unwrap();
        let f = random_band_limited(grid, 3, 4);
        let s = crate::cft::cft_forward(&f);
        write_spectrum(&path, &s).unwrap();
        match read_field_data(&path).unwrap() {
            FieldData::Frequency(back) => {
                for (a, b) in back.data().iter().zip(s.data()) {
                    assert_eq!(a.coeffs(), b.coeffs());
                }
            }
            FieldData::Space(_) => panic!("domain flag lost"),
        }
        assert!(matches!(read_field(&path), Err(Error::Format(_))));
    }

    #[test]
    fn corrupt_magic_is_rejected() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("bad.cwf");
        std::fs::write(&path, b"NOPE0000000000000000000000").unwrap();
        match read_field_data(&path) {
            Err(Error::Format(msg)) => assert!(msg.contains("bad magic")),
            other => panic!("expected format error, got {other:?}"),
        }
        match read_volume(&path) {
            Err(Error::Format(msg)) => assert!(msg.contains("bad magic")),
            other => panic!("expected format error, got {other:?}"),
        }
    }

    #[test]
    fn volume_roundtrip_preserves_group_and_data() {
        use crate::cwt::analyze_spectral;
        use crate::simgroup::{GroupGrid, GroupParams};
        use crate::wavelets::{GaborParams, GaborWavelet};

        let dir = tempdir().unwrap();
        let path = dir.path().join("t.cwc");
        let grid = GridSpec::new(d2(), 16, 4.0).unwrap();
        let psi = crate::cwt::Admissible::new(
            GaborWavelet::new(d2(), GaborParams::default_for(d2())).unwrap(),
            &grid,
        )
        .unwrap();
        let gg = GroupGrid::new(
            grid,
            GroupParams {
                a_min: 0.8,
                a_max: 1.6,
                n_scales: 2,
                n_angles: [2, 1, 1],
            },
        )
        .unwrap();
        let f = random_band_limited(grid, 21, 4);
        let t = analyze_spectral(&f, &psi, &gg).unwrap();
        write_volume(&path, &t).unwrap();
        let back = read_volume(&path).unwrap();
        assert_eq!(back.group().params(), t.group().params());
        assert_eq!(back.group().scales().len(), t.group().scales().len());
        for (a, b) in back.data().iter().zip(t.data()) {
            assert_eq!(a.coeffs(), b.coeffs());
        }
    }

    #[test]
    fn repeated_writes_are_byte_identical() {
        let dir = tempdir().unwrap();
        let p1 = dir.path().join("a.cwf");
        let p2 = dir.path().join("b.cwf");
        let grid = GridSpec::new(d2(), 16, 4.0).unwrap();
        let f = random_band_limited(grid, 5, 4);
        write_field(&p1, &f).unwrap();
        write_field(&p2, &f).unwrap();
        assert_eq!(std::fs::read(&p1).unwrap(), std::fs::read(&p2).unwrap());
    }

    #[test]
    fn csv_has_expected_shape() {
        use crate::cwt::{analyze_spectral, Admissible};
        use crate::simgroup::{GroupGrid, GroupParams};
        use crate::wavelets::{GaborParams, GaborWavelet};

        let grid = GridSpec::new(d2(), 8, 4.0).unwrap();
        let psi = Admissible::new(
            GaborWavelet::new(d2(), GaborParams::default_for(d2())).unwrap(),
            &grid,
        )
        .unwrap();
        let gg = GroupGrid::new(
            grid,
            GroupParams {
                a_min: 0.8,
                a_max: 1.6,
                n_scales: 1,
                n_angles: [1, 1, 1],
            },
        )
        .unwrap();
        let f = random_band_limited(grid, 2, 2);
        let t = analyze_spectral(&f, &psi, &gg).unwrap();
        let mut out = Vec::new();
        export_csv(&mut out, &t, 0, 0, false).unwrap();
        let text = String::from_utf8(out).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 1 + 64);
        assert_eq!(lines[0], "b1,b2,modulus");
        for line in &lines[1..] {
            let cols: Vec<&str> = line.split(',').collect();
            assert_eq!(cols.len(), 3);
            assert!(cols[2].parse::<f64>().unwrap() >= 0.0);
        }
        assert!(matches!(
            export_csv(&mut Vec::new(), &t, 3, 0, false),
            Err(Error::SliceOutOfRange(3, 0))
        ));
    }

    #[test]
    fn key_value_parsing() {
        let text = "n = 2\ngrid=32 # trailing comment\n\n# full comment\nhalf_width = 4.0\n";
        let pairs = parse_key_values(text).unwrap();
        assert_eq!(
            pairs,
            vec![
                ("n".to_string(), "2".to_string()),
                ("grid".to_string(), "32".to_string()),
                ("half_width".to_string(), "4.0".to_string()),
            ]
        );
        assert!(parse_key_values("no equals sign").is_err());
    }
}
