//! Trajectory CSV rows.

use std::io::{self, Write};

use crate::observables::PointObservables;

pub const HEADER: [&str; 16] = [
    "t",
    "xi2_closed",
    "xi2_general",
    "mean_spin_norm",
    "degenerate_flag",
    "concurrence",
    "branch",
    "u_re",
    "u_im",
    "y",
    "v_plus",
    "v_minus",
    "sz_mean",
    "sz2",
    "sp2_re",
    "sp2_im",
];

pub const DEFAULT_PRECISION: usize = 17;

/// Scientific notation with `precision` significant digits; NaN prints as `nan`.
pub fn format_value(x: f64, precision: usize) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else {
        format!("{:.*e}", precision.max(1) - 1, x)
    }
}

pub fn header_line() -> String {
    HEADER.join(",")
}

pub fn format_row(t: f64, p: &PointObservables, precision: usize) -> String {
    let f = |x: f64| format_value(x, precision);
    let m = &p.moments;
    let r = &p.reduced;
    [
        f(t),
        f(p.xi2_closed.unwrap_or(f64::NAN)),
        f(p.xi2_general.unwrap_or(f64::NAN)),
        f(p.mean_spin_norm),
        if p.degenerate() { "1" } else { "0" }.to_string(),
        f(p.concurrence.concurrence),
        p.concurrence.branch.as_str().to_string(),
        f(r.u.re),
        f(r.u.im),
        f(r.y),
        f(r.v_plus),
        f(r.v_minus),
        f(m.mean_sz),
        f(m.sz2),
        f(m.sp2.re),
        f(m.sp2.im),
    ]
    .join(",")
}

pub fn write_trajectory<W: Write>(
    out: &mut W,
    times: &[f64],
    points: &[PointObservables],
    precision: usize,
) -> io::Result<()> {
    writeln!(out, "{}", header_line())?;
    for (&t, p) in times.iter().zip(points) {
        writeln!(out, "{}", format_row(t, p, precision))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dicke::{make_all_down, make_dicke_state};

    #[test]
    fn value_formatting() {
        assert_eq!(format_value(1.0, 17), "1.0000000000000000e0");
        assert_eq!(format_value(-0.25, 3), "-2.50e-1");
        assert_eq!(format_value(f64::NAN, 17), "nan");
        for x in [0.1, 1.0 / 3.0, -7.25e-300, 6.02214076e23, f64::MIN_POSITIVE] {
            let back: f64 = format_value(x, 17).parse().unwrap();
            assert!((back - x).abs() <= 1e-15 * x.abs());
        }
    }

    #[test]
    fn rows() {
        let p = PointObservables::from_state(&make_all_down(4).unwrap()).unwrap();
        let row = format_row(0.0, &p, 17);
        let fields: Vec<&str> = row.split(',').collect();
        assert_eq!(fields.len(), HEADER.len());
        assert_eq!(fields[4], "0");
        // 2y = s + |u| = 0 there, and ties go to the coherence branch.
        assert_eq!(fields[6], "coherence_dominated");

        let p = PointObservables::from_state(&make_dicke_state(4, 2).unwrap()).unwrap();
        let row = format_row(0.5, &p, 17);
        let fields: Vec<&str> = row.split(',').collect();
        assert_eq!(fields[2], "nan");
        assert_eq!(fields[4], "1");
        assert_eq!(fields[1], "3.0000000000000000e0");

        let mut buf = Vec::new();
        write_trajectory(&mut buf, &[0.0], &[p], 17).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("t,xi2_closed,xi2_general,"));
        assert_eq!(text.lines().count(), 2);
    }
}
