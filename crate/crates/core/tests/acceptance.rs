//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

use std::f64::consts::PI;
use std::process::ExitCode;

use spinsq::csv;
use spinsq::oracle::{embed_symmetric, partial_trace_pair};
use spinsq::verify::{self, Bound, Check, SuiteReport};
use spinsq::{
    collective_moments, concurrence, concurrence_spectral, make_dicke_state, reduced_two_qubit,
    trajectory, HamiltonianSpec, PointObservables, Result,
};

const SEED: u64 = 42;

fn check(name: &str, observed: f64, limit: f64, bound: Bound, samples: usize) -> Check {
    Check {
        name: name.to_string(),
        observed,
        limit,
        bound,
        samples,
    }
}

fn two_qubit_benchmark() -> Result<SuiteReport> {
    let tr = trajectory(&HamiltonianSpec::one_axis(1.0), 2, PI, PI / 200.0)?;
    let mut xi2 = 0.0f64;
    let mut conc = 0.0f64;
    let mut resid = 0.0f64;
    for (&t, s) in tr.times.iter().zip(&tr.states) {
        let p = PointObservables::from_state(s)?;
        let closed = p.xi2_closed.unwrap_or(f64::NAN);
        xi2 = xi2.max((closed - (1.0 - t.sin().abs())).abs());
        conc = conc.max((p.concurrence.concurrence - t.sin().abs()).abs());
        resid = resid.max(p.prop3_residual().abs());
    }
    let n = tr.times.len();
    Ok(SuiteReport {
        suite: "two-qubit".into(),
        checks: vec![
            check("|xi2_closed - (1 - |sin t|)|", xi2, 1e-10, Bound::AtMost, n),
            check("|C - |sin t||", conc, 1e-10, Bound::AtMost, n),
            check("|prop3 residual|", resid, 1e-10, Bound::AtMost, n),
            check("grid points", n as f64, 201.0, Bound::AtLeast, 1),
        ],
        notes: vec![],
    })
}

/// Parses the emitted N = 6 two-axis CSV and counts the longest run of rows
/// with `xi2_closed < 1` and `C > 0`.
fn two_axis_six_qubit_csv() -> Result<SuiteReport> {
    let spec = HamiltonianSpec::two_axis(1.0);
    let tr = trajectory(&spec, 6, 3.0, 0.01)?;
    let points: Vec<PointObservables> = tr
        .states
        .iter()
        .map(PointObservables::from_state)
        .collect::<Result<_>>()?;
    let mut buf = Vec::new();
    csv::write_trajectory(&mut buf, &tr.times, &points, csv::DEFAULT_PRECISION)
        .expect("writing to memory");
    let text = String::from_utf8(buf).expect("ascii csv");
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap_or("").split(',').collect();
    let col = |name: &str| header.iter().position(|h| *h == name).expect("column");
    let (t_col, xi_col, c_col) = (col("t"), col("xi2_closed"), col("concurrence"));

    let mut longest = 0usize;
    let mut run = 0usize;
    let mut first_t = f64::NAN;
    for line in lines {
        let fields: Vec<&str> = line.split(',').collect();
        let t: f64 = fields[t_col].parse().expect("t");
        let xi2: f64 = fields[xi_col].parse().expect("xi2");
        let c: f64 = fields[c_col].parse().expect("C");
        if xi2 < 1.0 && c > 0.0 {
            if first_t.is_nan() {
                first_t = t;
            }
            run += 1;
            longest = longest.max(run);
        } else {
            run = 0;
        }
    }
    Ok(SuiteReport {
        suite: "two-axis-csv".into(),
        checks: vec![
            check(
                "longest run of rows with xi2 < 1 and C > 0 (N=6)",
                longest as f64,
                2.0,
                Bound::AtLeast,
                tr.times.len(),
            ),
            check(
                "first squeezed-and-entangled time",
                first_t,
                0.5,
                Bound::AtMost,
                1,
            ),
        ],
        notes: vec![],
    })
}

fn dicke_with_oracle() -> Result<SuiteReport> {
    let mut report = verify::dicke_states(100)?;
    let s = make_dicke_state(4, 2)?;
    let r = reduced_two_qubit(&collective_moments(&s))?;
    let c = concurrence(&r)?.concurrence;
    let rho = partial_trace_pair(&embed_symmetric(&s)?, 0, 1)?;
    let oracle_c = concurrence_spectral(&rho)?.concurrence;
    report.checks.push(check(
        "|C(4,2) - 1/3|",
        (c - 1.0 / 3.0).abs(),
        1e-12,
        Bound::AtMost,
        1,
    ));
    report.checks.push(check(
        "|C(4,2) - C_oracle|",
        (c - oracle_c).abs(),
        1e-10,
        Bound::AtMost,
        1,
    ));
    Ok(report)
}

fn run(number: usize, title: &str, suite: Result<SuiteReport>) -> bool {
    match suite {
        Ok(report) => {
            let ok = report.passed();
            println!(
                "criterion {number} ({title}): {}",
                if ok { "PASS" } else { "FAIL" }
            );
            for c in &report.checks {
                println!("    {c}");
            }
            for n in &report.notes {
                println!("    note: {n}");
            }
            ok
        }
        Err(e) => {
            println!("criterion {number} ({title}): FAIL ({e})");
            false
        }
    }
}

fn merged(parts: Vec<Result<SuiteReport>>) -> Result<SuiteReport> {
    let mut out = SuiteReport::default();
    for p in parts {
        out.merge(p?);
    }
    Ok(out)
}

fn main() -> ExitCode {
    let started = std::time::Instant::now();
    let field_ns: Vec<usize> = (2..=20).chain([50, 100]).collect();
    let one_axis_ns: Vec<usize> = (2..=100).collect();
    let oracle_ns: Vec<usize> = (2..=8).collect();
    let structural_ns: Vec<usize> = (2..=12).chain([20, 50, 100]).collect();

    let results = [
        run(1, "two-qubit one-axis benchmark", two_qubit_benchmark()),
        run(
            2,
            "one-axis analytic moments",
            verify::one_axis_moments(&[2, 3, 4, 6, 10, 20], 200),
        ),
        run(
            3,
            "one-axis squeezing iff pairwise entanglement",
            verify::one_axis_equivalence(&one_axis_ns, 10.0, 0.01),
        ),
        run(
            4,
            "transverse-field one-axis never exceeds the squeezing bound",
            verify::field_scan(&field_ns, &[0.1, 0.5, 1.0, 2.0, 5.0], 10.0, 0.01),
        ),
        run(
            5,
            "two-axis even-N relation",
            merged(vec![
                verify::two_axis_relation(&[2, 4, 6, 8, 10, 20], 3.0, 0.01),
                two_axis_six_qubit_csv(),
            ]),
        ),
        run(
            6,
            "full tensor-product oracle equivalence",
            verify::oracle_equivalence(&oracle_ns, 100, SEED),
        ),
        run(
            7,
            "separable states are unsqueezed",
            verify::separable_states(&[2, 3, 4, 5, 6], 1000, SEED),
        ),
        run(8, "Dicke states", dicke_with_oracle()),
        run(
            9,
            "structural invariants",
            verify::structural(&structural_ns, 10.0, 0.01, SEED),
        ),
    ];
    let passed = results.iter().filter(|&&ok| ok).count();
    println!(
        "acceptance: {passed}/{} criteria passed in {:.1}s",
        results.len(),
        started.elapsed().as_secs_f64()
    );
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
