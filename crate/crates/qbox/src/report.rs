//! Deterministic report serialization. Reals are written with 17 significant
//! digits in both JSON and CSV so repeated runs are byte-identical and
//! round-trip exactly.

use serde::Serialize;
use serde_json::ser::{CompactFormatter, Formatter, Serializer};
use std::io;

use crate::analysis::ConvergenceSeries;
use crate::evolution::PhaseSequence;
use crate::lattice::{LatticeSpec, WaveVector};
use crate::observables::{ScanReport, UncertaintyReport};
use crate::oracle::SpectrumReport;
use crate::spectrum::Mode;

/// Fixed-width scientific notation with 17 significant digits.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

struct SciFormatter;

impl Formatter for SciFormatter {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        CompactFormatter.write_f32(writer, value)
    }
}

/// Serialize any report to JSON with stable field order and float format.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = Serializer::with_formatter(&mut buf, SciFormatter);
    value
        .serialize(&mut ser)
        .expect("report serialization cannot fail");
    let mut s = String::from_utf8(buf).expect("serde_json emits UTF-8");
    s.push('\n');
    s
}

pub fn wave_csv(wave: &WaveVector, lat: &LatticeSpec) -> String {
    let mut out = String::from("j,x,re,im\n");
    for (j, v) in wave.values.iter().enumerate() {
        out.push_str(&format!(
            "{j},{},{},{}\n",
            fmt_float(lat.site(j)),
            fmt_float(v.re),
            fmt_float(v.im)
        ));
    }
    out
}

pub fn mode_csv(mode: &Mode, lat: &LatticeSpec) -> String {
    let mut out = String::from("j,x,u\n");
    for (j, v) in mode.eigenfunction.values.iter().enumerate() {
        out.push_str(&format!("{j},{},{}\n", fmt_float(lat.site(j)), fmt_float(v.re)));
    }
    out
}

const UNCERTAINTY_HEADER: &str = "n,delta_x,delta_p,product,product_over_hbar_half,continuum_product\n";

pub fn uncertainty_csv(r: &UncertaintyReport) -> String {
    format!(
        "{UNCERTAINTY_HEADER}{},{},{},{},{},{}\n",
        r.n,
        fmt_float(r.delta_x),
        fmt_float(r.delta_p),
        fmt_float(r.product),
        fmt_float(r.product_over_hbar_half),
        fmt_float(r.continuum_product)
    )
}

pub fn scan_csv(scan: &ScanReport) -> String {
    let mut out = String::from(UNCERTAINTY_HEADER);
    for row in &scan.rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            row.n,
            fmt_float(row.delta_x),
            fmt_float(row.delta_p),
            fmt_float(row.product),
            fmt_float(row.product_over_hbar_half),
            fmt_float(row.continuum_product)
        ));
    }
    out
}

pub fn spectrum_csv(rep: &SpectrumReport) -> String {
    let mut out = String::from("i,closed_form,oracle,hard_zero\n");
    for (i, ((c, o), h)) in rep
        .closed_form
        .iter()
        .zip(&rep.oracle)
        .zip(&rep.hard_zero_spectrum)
        .enumerate()
    {
        out.push_str(&format!(
            "{i},{},{},{}\n",
            fmt_float(*c),
            fmt_float(*o),
            fmt_float(*h)
        ));
    }
    out
}

pub fn sweep_csv(series: &ConvergenceSeries) -> String {
    let mut out = String::from("J0,lambda0,value\n");
    for p in &series.points {
        out.push_str(&format!(
            "{},{},{}\n",
            p.j0,
            fmt_float(p.lambda0),
            fmt_float(p.value)
        ));
    }
    out
}

pub fn phase_csv(seq: &PhaseSequence, tau0: f64) -> String {
    let mut out = String::from("j_t,t,re_T,im_T,modulus,phase\n");
    for (jt, v) in seq.values.iter().enumerate() {
        out.push_str(&format!(
            "{jt},{},{},{},{},{}\n",
            fmt_float(jt as f64 * tau0),
            fmt_float(v.re),
            fmt_float(v.im),
            fmt_float(v.norm()),
            fmt_float(v.arg())
        ));
    }
    out
}
