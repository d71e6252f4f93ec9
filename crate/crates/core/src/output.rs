//! CSV and JSON emitters. CSV files carry a header row and use `.` as the
//! decimal separator; JSON keys keep declaration order.

use std::io::Write;

use serde::Serialize;

use crate::algebra::Vec3;
use crate::edge::{EdgeState, ExperimentRecord};
use crate::error::Result;
use crate::lattice::{site_label, LocalizationEntry, Observables, WalkerState};
use crate::momentum::BandStructure;
use crate::symmetry::SymmetryReport;
use crate::topology::{ClassificationRow, FrameVariant};

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn finish<W: Write>(w: csv::Writer<W>) -> Result<()> {
    w.into_inner().map_err(|e| crate::error::Error::Output(e.to_string()))?.flush()?;
    Ok(())
}

/// k, omega_plus, omega_minus, n_x, n_y, n_z; the Bloch vector is left
/// empty at degenerate points.
pub fn write_band_csv<W: Write>(b: &BandStructure, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["k", "omega_plus", "omega_minus", "n_x", "n_y", "n_z"])?;
    for (i, p) in b.points.iter().enumerate() {
        let (plus, minus) = b.quasienergies(i);
        let n = p.n.as_ref();
        w.write_record([
            p.k.to_string(),
            plus.to_string(),
            minus.to_string(),
            opt(n.map(Vec3::x)),
            opt(n.map(Vec3::y)),
            opt(n.map(Vec3::z)),
        ])?;
    }
    finish(w)
}

/// k, n_x, n_y, n_z, frame
pub fn write_bz_image_csv<W: Write>(curves: &[(FrameVariant, Vec<(f64, Vec3)>)], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["k", "n_x", "n_y", "n_z", "frame"])?;
    for (frame, pts) in curves {
        for (k, n) in pts {
            w.write_record([k.to_string(), n.x().to_string(), n.y().to_string(), n.z().to_string(), frame.tag().into()])?;
        }
    }
    finish(w)
}

/// x, re_a, im_a, re_b, im_b, prob in ascending site label.
pub fn write_snapshot_csv<W: Write>(s: &WalkerState, out: W) -> Result<()> {
    let n = s.len();
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["x", "re_a", "im_a", "re_b", "im_b", "prob"])?;
    for (i, a) in s.amplitudes().iter().enumerate() {
        w.write_record([
            site_label(i, n).to_string(),
            a.right.re.to_string(),
            a.right.im.to_string(),
            a.left.re.to_string(),
            a.left.im.to_string(),
            a.norm_sqr().to_string(),
        ])?;
    }
    finish(w)
}

/// Snapshot CSV for an analytic edge state.
pub fn write_edge_csv<W: Write>(e: &EdgeState, out: W) -> Result<()> {
    write_snapshot_csv(&e.state, out)
}

/// t, interface_prob, mean_x, sigma_x
pub fn write_trajectory_csv<W: Write>(obs: &[Observables], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for o in obs {
        w.serialize(o)?;
    }
    if obs.is_empty() {
        w.write_record(["t", "interface_prob", "mean_x", "sigma_x"])?;
    }
    finish(w)
}

/// index, eigenphase, window_weight, ipr
pub fn write_spectrum_csv<W: Write>(rows: &[LocalizationEntry], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    if rows.is_empty() {
        w.write_record(["index", "eigenphase", "window_weight", "ipr"])?;
    }
    finish(w)
}

/// theta, beta, gap_delta, gap_delta_plus_pi, winding, pole_k0, pole_k1, phase_label
pub fn write_sweep_csv<W: Write>(rows: &[ClassificationRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["theta", "beta", "gap_delta", "gap_delta_plus_pi", "winding", "pole_k0", "pole_k1", "phase_label"])?;
    for r in rows {
        w.write_record([
            r.theta.to_string(),
            r.beta.to_string(),
            r.gap_delta.to_string(),
            r.gap_delta_plus_pi.to_string(),
            r.winding.map(|v| v.to_string()).unwrap_or_default(),
            r.pole_k0.map(|p| p.symbol().to_string()).unwrap_or_default(),
            r.pole_k1.map(|p| p.symbol().to_string()).unwrap_or_default(),
            r.phase_label.map(|l| l.as_str().to_string()).unwrap_or_default(),
        ])?;
    }
    finish(w)
}

/// Pretty-printed JSON followed by a newline.
pub fn write_json<T: Serialize + ?Sized, W: Write>(value: &T, mut out: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, value)?;
    out.write_all(b"\n")?;
    out.flush()?;
    Ok(())
}

pub fn write_symmetry_json<W: Write>(reports: &[SymmetryReport], out: W) -> Result<()> {
    write_json(reports, out)
}

pub fn write_experiment_json<W: Write>(record: &ExperimentRecord, out: W) -> Result<()> {
    write_json(record, out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coin::CoinParams;
    use crate::momentum::band_structure;

    #[test]
    fn band_csv_header_and_empty_fields() {
        let b = band_structure(&CoinParams::real(0.0), 8).unwrap();
        let mut buf = Vec::new();
        write_band_csv(&b, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "k,omega_plus,omega_minus,n_x,n_y,n_z");
        assert_eq!(text.lines().count(), 9);
        assert!(text.lines().any(|l| l.ends_with(",,,")));
    }

    #[test]
    fn trajectory_and_spectrum_headers() {
        let mut buf = Vec::new();
        write_trajectory_csv(&[Observables { t: 0, interface_prob: 1.0, mean_x: 0.0, sigma_x: 0.0 }], &mut buf).unwrap();
        assert!(String::from_utf8(buf).unwrap().starts_with("t,interface_prob,mean_x,sigma_x\n"));
        let mut buf = Vec::new();
        write_spectrum_csv(&[], &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "index,eigenphase,window_weight,ipr\n");
    }

    #[test]
    fn snapshot_rows_in_label_order() {
        let s = WalkerState::zeros(4);
        let mut buf = Vec::new();
        write_snapshot_csv(&s, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let xs: Vec<&str> = text.lines().skip(1).map(|l| l.split(',').next().unwrap()).collect();
        assert_eq!(xs, ["-2", "-1", "0", "1"]);
    }
}
