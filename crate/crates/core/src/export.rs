//! CSV and JSON writers. Every real number is written with 17 significant
//! digits so that doubles round-trip exactly.

use std::io::{self, Write};

use serde::Serialize;
use serde_json::ser::{Formatter, Serializer};

use crate::analytic::ScatteringAmplitudes;
use crate::dynamics::AmplitudeTrajectory;
use crate::phase_map::PhasePoint;

/// `x` in scientific notation with 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        format!("{x}")
    }
}

struct SignificantDigits;

impl Formatter for SignificantDigits {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(fmt_f64(value).as_bytes())
    }

    fn write_f32<W: ?Sized + Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, value as f64)
    }
}

/// Pretty-ish JSON (one line) with 17-digit floats. Non-finite numbers
/// become `null`.
pub fn to_json_string<T: Serialize + ?Sized>(value: &T) -> serde_json::Result<String> {
    let mut out = Vec::new();
    let mut ser = Serializer::with_formatter(&mut out, SignificantDigits);
    value.serialize(&mut ser)?;
    out.push(b'\n');
    Ok(String::from_utf8(out).expect("serde_json emits UTF-8"))
}

/// `t,re_u,im_u,p_e`, one row per sample.
pub fn write_trajectory_csv<W: Write>(traj: &AmplitudeTrajectory, mut w: W) -> io::Result<()> {
    writeln!(w, "t,re_u,im_u,p_e")?;
    for ((t, u), p) in traj.times.iter().zip(&traj.u).zip(&traj.p_e) {
        writeln!(w, "{},{},{},{}", fmt_f64(*t), fmt_f64(u.re), fmt_f64(u.im), fmt_f64(*p))?;
    }
    Ok(())
}

/// `k,re_r,im_r,abs_r,re_c,im_c`.
pub fn write_scatter_csv<W: Write>(rows: &[ScatteringAmplitudes], mut w: W) -> io::Result<()> {
    writeln!(w, "k,re_r,im_r,abs_r,re_c,im_c")?;
    for s in rows {
        writeln!(
            w,
            "{},{},{},{},{},{}",
            fmt_f64(s.k),
            fmt_f64(s.r_k.re),
            fmt_f64(s.r_k.im),
            fmt_f64(s.r_k.norm()),
            fmt_f64(s.c_k.re),
            fmt_f64(s.c_k.im)
        )?;
    }
    Ok(())
}

/// `g,delta_c,n_boc,has_bic,n_total[,n_oob_numeric]`; the oracle column is
/// present when any point carries it.
pub fn write_phase_map_csv<W: Write>(points: &[PhasePoint], mut w: W) -> io::Result<()> {
    let oracle = points.iter().any(|p| p.n_oob_numeric.is_some());
    write!(w, "g,delta_c,n_boc,has_bic,n_total")?;
    if oracle {
        write!(w, ",n_oob_numeric")?;
    }
    writeln!(w)?;
    for p in points {
        write!(w, "{},{},{},{},{}", fmt_f64(p.g), fmt_f64(p.delta_c), p.n_boc, p.has_bic, p.n_total)?;
        if oracle {
            match p.n_oob_numeric {
                Some(n) => write!(w, ",{n}")?,
                None => write!(w, ",")?,
            }
        }
        writeln!(w)?;
    }
    Ok(())
}

/// `delta_c,g_crit`.
pub fn write_boundary_csv<W: Write>(curve: &[(f64, f64)], mut w: W) -> io::Result<()> {
    writeln!(w, "delta_c,g_crit")?;
    for (dc, g) in curve {
        writeln!(w, "{},{}", fmt_f64(*dc), fmt_f64(*g))?;
    }
    Ok(())
}
