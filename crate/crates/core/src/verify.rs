//! Named verification suites.
//!
//! Every suite is parameterized explicitly so the command-line `verify`
//! subcommand and the acceptance tests run the same checks, possibly over
//! different grids. A suite returns a [`SuiteReport`] listing each check's
//! worst observed value next to its bound.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dicke::{
    collective_moments, make_all_down, make_dicke_state, CollectiveMoments, SymmetricState,
};
use crate::error::Result;
use crate::evolution::{hermitian_eigen, time_grid, Propagator};
use crate::hamiltonian::{build_hamiltonian, parity_check, HamiltonianSpec};
use crate::observables::PointObservables;
use crate::oracle::{self, embed_symmetric, full_moments, partial_trace_pair, FullPropagator};
use crate::pairwise::{
    concurrence_spectral, concurrence_x_form, reduced_two_qubit, Density4, TwoQubitReduced,
};
use crate::squeezing::{perpendicular_frame, squeezing_even_odd, squeezing_general};

/// Moment-to-reduced-matrix map under test; swapped out by mutation tests.
pub type Reconstruct = fn(&CollectiveMoments) -> Result<TwoQubitReduced>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    AtMost,
    AtLeast,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub observed: f64,
    pub limit: f64,
    pub bound: Bound,
    pub samples: usize,
}

impl Check {
    pub fn passed(&self) -> bool {
        match self.bound {
            Bound::AtMost => self.observed <= self.limit,
            Bound::AtLeast => self.observed >= self.limit,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = match self.bound {
            Bound::AtMost => "<=",
            Bound::AtLeast => ">=",
        };
        write!(
            f,
            "[{}] {}: {:e} {} {:e} ({} samples)",
            if self.passed() { "PASS" } else { "FAIL" },
            self.name,
            self.observed,
            op,
            self.limit,
            self.samples
        )
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
}

impl SuiteReport {
    fn new(suite: &str) -> Self {
        Self {
            suite: suite.to_string(),
            ..Self::default()
        }
    }

    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(Check::passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    fn push(&mut self, tracker: Tracker) {
        self.checks.push(tracker.finish());
    }

    pub fn merge(&mut self, other: SuiteReport) {
        self.checks.extend(other.checks);
        self.notes.extend(other.notes);
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "suite {}: {}",
            self.suite,
            if self.passed() { "PASS" } else { "FAIL" }
        )?;
        for note in &self.notes {
            writeln!(f, "  note: {note}")?;
        }
        for check in &self.checks {
            writeln!(f, "  {check}")?;
        }
        Ok(())
    }
}

/// Running worst case of one metric. NaN poisons the result.
struct Tracker {
    name: String,
    limit: f64,
    bound: Bound,
    worst: f64,
    samples: usize,
}

impl Tracker {
    fn at_most(name: &str, limit: f64) -> Self {
        Self {
            name: name.to_string(),
            limit,
            bound: Bound::AtMost,
            worst: f64::NEG_INFINITY,
            samples: 0,
        }
    }

    fn at_least(name: &str, limit: f64) -> Self {
        Self {
            name: name.to_string(),
            limit,
            bound: Bound::AtLeast,
            worst: f64::INFINITY,
            samples: 0,
        }
    }

    fn observe(&mut self, value: f64) {
        self.samples += 1;
        if value.is_nan() || self.worst.is_nan() {
            self.worst = f64::NAN;
            return;
        }
        self.worst = match self.bound {
            Bound::AtMost => self.worst.max(value),
            Bound::AtLeast => self.worst.min(value),
        };
    }

    fn finish(self) -> Check {
        let observed = if self.samples == 0 {
            f64::NAN
        } else {
            self.worst
        };
        Check {
            name: self.name,
            observed,
            limit: self.limit,
            bound: self.bound,
            samples: self.samples,
        }
    }
}

fn max_matrix_diff(a: &Density4, b: &Density4) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..4 {
        for j in 0..4 {
            worst = worst.max((a[i][j] - b[i][j]).norm());
        }
    }
    worst
}

/// The three model Hamiltonians with unit couplings (field strength `omega`).
pub fn model_specs(omega: f64) -> [(&'static str, HamiltonianSpec); 3] {
    [
        ("one-axis", HamiltonianSpec::one_axis(1.0)),
        (
            "one-axis-field",
            HamiltonianSpec::one_axis_field(1.0, omega),
        ),
        ("two-axis", HamiltonianSpec::two_axis(1.0)),
    ]
}

struct PropagatedModel {
    propagator: Propagator,
    initial: SymmetricState,
}

impl PropagatedModel {
    fn new(spec: &HamiltonianSpec, n_qubits: usize) -> Result<Self> {
        Ok(Self {
            propagator: hermitian_eigen(&build_hamiltonian(spec, n_qubits)?)?,
            initial: make_all_down(n_qubits)?,
        })
    }

    fn states(&self, times: &[f64]) -> Result<Vec<SymmetricState>> {
        let evolver = self.propagator.evolver(&self.initial)?;
        Ok(times.iter().map(|&t| evolver.at(t)).collect())
    }
}

/// Symmetric separable states never show negative perpendicular pair
/// correlation, hence never ξ² < 1.
pub fn separable_states(ns: &[usize], samples_per_n: usize, seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("lemma1");
    report
        .notes
        .push(format!("rng {} seed {seed}", oracle::RNG_ALGORITHM));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut corr = Tracker::at_least("perpendicular pair correlation", -1e-12);
    let mut xi2 = Tracker::at_least("separable xi2_general", 1.0 - 1e-10);
    let mut identity = Tracker::at_most("|xi2 - (1 + (N-1) corr)|", 1e-10);
    for &n in ns {
        for _ in 0..samples_per_n {
            let k = rng.random_range(1..=6);
            let (_, m) = oracle::sample_separable(n, k, &mut rng)?;
            match squeezing_general(&m) {
                Ok(r) => {
                    let c = m.pair_correlation_along(r.n_perp);
                    corr.observe(c);
                    xi2.observe(r.xi2);
                    identity.observe((r.xi2 - (1.0 + (n as f64 - 1.0) * c)).abs());
                    let (n1, n2) = perpendicular_frame(r.mean_spin);
                    corr.observe(m.pair_correlation_along(n1));
                    corr.observe(m.pair_correlation_along(n2));
                }
                Err(_) => {
                    for axis in [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]] {
                        corr.observe(m.pair_correlation_along(axis));
                    }
                }
            }
        }
    }
    report.push(corr);
    report.push(xi2);
    report.push(identity);
    Ok(report)
}

fn evolved_samples(n: usize) -> Result<Vec<SymmetricState>> {
    let times = [0.13, 0.5, 1.1, 2.7];
    let mut out = Vec::new();
    for (_, spec) in model_specs(0.8) {
        out.extend(PropagatedModel::new(&spec, n)?.states(&times)?);
    }
    Ok(out)
}

/// Reduced two-qubit matrix from collective moments versus the explicit
/// partial trace of the embedded state.
pub fn reduced_state_reconstruction(
    ns: &[usize],
    random_per_n: usize,
    seed: u64,
    reconstruct: Reconstruct,
) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("lemma2");
    report
        .notes
        .push(format!("rng {} seed {seed}", oracle::RNG_ALGORITHM));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut diff = Tracker::at_most("max |rho_moments - rho_partial_trace|", 1e-10);
    let mut xpm = Tracker::at_most("parity-pure |x±|", 1e-12);
    for &n in ns {
        let mut states: Vec<SymmetricState> = (0..random_per_n)
            .map(|_| oracle::random_symmetric_state(n, &mut rng))
            .collect();
        states.extend(evolved_samples(n)?);
        for s in &states {
            let r = reconstruct(&collective_moments(s))?;
            let rho = partial_trace_pair(&embed_symmetric(s)?, 0, 1)?;
            diff.observe(max_matrix_diff(&r.to_matrix(), &rho));
        }
        for parity in 0..2 {
            let s = oracle::random_parity_state(n, parity, &mut rng);
            let r = reconstruct(&collective_moments(&s))?;
            xpm.observe(r.x_plus.norm().max(r.x_minus.norm()));
        }
    }
    report.push(diff);
    report.push(xpm);
    Ok(report)
}

/// Numeric one-axis twisting moments against the closed forms, sampled at
/// `points` scaled phases `μ̄ = 2μt` spanning `[0, 2π]`.
pub fn one_axis_moments(ns: &[usize], points: usize) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("lemma3");
    let mu = 1.0;
    let times: Vec<f64> = (0..points)
        .map(|k| 2.0 * PI * k as f64 / (points - 1) as f64 / (2.0 * mu))
        .collect();
    let mut sx2 = Tracker::at_most("|<Sx^2> - N/4|", 1e-9);
    let mut sy2 = Tracker::at_most("|<Sy^2> - closed form|", 1e-9);
    let mut sz2 = Tracker::at_most("|<Sz^2> - closed form|", 1e-9);
    let mut rel = Tracker::at_most("|<Sx^2 - Sy^2> - (<Sz^2> - N^2/4)|", 1e-9);
    for &n in ns {
        let model = PropagatedModel::new(&HamiltonianSpec::one_axis(mu), n)?;
        for (s, &t) in model.states(&times)?.iter().zip(&times) {
            let m = collective_moments(s);
            let a = oracle::one_axis_analytic_moments(n, mu, t)?;
            sx2.observe((m.sx2 - a.sx2).abs());
            sy2.observe((m.sy2 - a.sy2).abs());
            sz2.observe((m.sz2 - a.sz2).abs());
            let nf = n as f64;
            rel.observe(((m.sx2 - m.sy2) - (m.sz2 - nf * nf / 4.0)).abs());
        }
    }
    report.push(sx2);
    report.push(sy2);
    report.push(sz2);
    report.push(rel);
    Ok(report)
}

/// One-axis twisting: `|u| ≥ y`, `ξ² ≤ 1` and `ξ² = 1 - (N-1)C` at every time.
pub fn one_axis_equivalence(ns: &[usize], t_max: f64, dt: f64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("prop4");
    let times = time_grid(t_max, dt)?;
    let mut margin = Tracker::at_least("|u| - y", -1e-12);
    let mut xi2 = Tracker::at_most("xi2_closed", 1.0 + 1e-12);
    let mut resid = Tracker::at_most("|prop3 residual|", 1e-9);
    let mut iff = Tracker::at_most("squeezed xor entangled (count)", 0.0);
    for &n in ns {
        let model = PropagatedModel::new(&HamiltonianSpec::one_axis(1.0), n)?;
        for s in model.states(&times)? {
            let p = PointObservables::from_state(&s)?;
            let x = p.xi2();
            margin.observe(p.reduced.u.norm() - p.reduced.y);
            xi2.observe(x);
            resid.observe(p.prop3_residual().abs());
            // Away from the ξ² = 1 boundary, squeezing and entanglement coincide.
            let squeezed = x < 1.0 - 1e-9;
            let entangled = p.concurrence.concurrence > 1e-9 / (n as f64 - 1.0).max(1.0);
            let clear = (x - 1.0).abs() > 1e-8;
            iff.observe(if clear && squeezed != entangled {
                1.0
            } else {
                0.0
            });
        }
    }
    report.push(margin);
    report.push(xi2);
    report.push(resid);
    report.push(iff);
    Ok(report)
}

/// One-axis twisting in a transverse field: `ξ² ≤ 1` and the identity
/// `ξ² = 1 - (N-1)C` wherever `ξ² ≤ 1`.
pub fn field_scan(ns: &[usize], omegas: &[f64], t_max: f64, dt: f64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("one-axis-field");
    let times = time_grid(t_max, dt)?;
    let mut xi2 = Tracker::at_most("max-over-time xi2_closed", 1.0 + 1e-9);
    let mut resid = Tracker::at_most("|prop3 residual| where xi2 <= 1", 1e-9);
    for &omega in omegas {
        for &n in ns {
            let model = PropagatedModel::new(&HamiltonianSpec::one_axis_field(1.0, omega), n)?;
            let mut worst = f64::NEG_INFINITY;
            for s in model.states(&times)? {
                let p = PointObservables::from_state(&s)?;
                let x = p.xi2();
                worst = if x.is_nan() { f64::NAN } else { worst.max(x) };
                if x <= 1.0 + 1e-9 {
                    resid.observe(p.prop3_residual().abs());
                }
            }
            xi2.observe(worst);
        }
    }
    report.push(xi2);
    report.push(resid);
    Ok(report)
}

/// Two-axis counter-twisting with even N: `C = (1 - ξ²)/(N-1)` at every time,
/// including where `ξ² > 1`.
pub fn two_axis_relation(ns: &[usize], t_max: f64, dt: f64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("two-axis");
    let times = time_grid(t_max, dt)?;
    let mut resid = Tracker::at_most("|prop3 residual| (all points)", 1e-9);
    let mut above = 0usize;
    for &n in ns {
        let model = PropagatedModel::new(&HamiltonianSpec::two_axis(1.0), n)?;
        for s in model.states(&times)? {
            let p = PointObservables::from_state(&s)?;
            if p.xi2() > 1.0 {
                above += 1;
            }
            resid.observe(p.prop3_residual().abs());
        }
    }
    report
        .notes
        .push(format!("{above} points with xi2 > 1 included"));
    report.push(resid);
    Ok(report)
}

/// Dicke-basis machinery versus the full tensor-product oracle.
pub fn oracle_equivalence(ns: &[usize], random_per_n: usize, seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("oracle");
    report
        .notes
        .push(format!("rng {} seed {seed}", oracle::RNG_ALGORITHM));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut moments = Tracker::at_most("collective moments vs full space", 1e-10);
    let mut reconstruction =
        Tracker::at_most("reduced matrix from moments vs partial trace", 1e-10);
    let mut pair_independence = Tracker::at_most("partial trace pair independence", 1e-10);
    let mut xform = Tracker::at_most("|C_x-form - C_spectral|", 1e-10);
    let mut hamiltonian = Tracker::at_most("Dicke H vs projected full H", 1e-10);
    let mut fidelity = Tracker::at_least("subspace vs full evolution fidelity", 1.0 - 1e-10);
    let mut deficit = Tracker::at_most("full evolution symmetric deficit", 1e-10);

    let times = [0.0, 0.21, 0.77, 1.6, 3.0];
    for &n in ns {
        let mut states: Vec<SymmetricState> = (0..random_per_n)
            .map(|_| oracle::random_symmetric_state(n, &mut rng))
            .collect();
        for parity in 0..2 {
            states.push(oracle::random_parity_state(n, parity, &mut rng));
        }

        for (_, spec) in model_specs(0.8) {
            let model = PropagatedModel::new(&spec, n)?;
            let full = FullPropagator::new(&spec, n)?;
            for (s, &t) in model.states(&times)?.iter().zip(&times) {
                let f = full.evolve_all_down(t);
                let overlap = embed_symmetric(s)?.inner(&f).norm_sqr();
                fidelity.observe(overlap);
                deficit.observe(f.symmetric_deficit().abs());
                states.push(s.clone());
            }
            let dicke_h = build_hamiltonian(&spec, n)?;
            let full_h = oracle::full_hamiltonian(&spec, n)?;
            let basis: Vec<Vec<Complex64>> = (0..=n)
                .map(|k| Ok(embed_symmetric(&make_dicke_state(n, k)?)?.amplitudes))
                .collect::<Result<_>>()?;
            for b in 0..=n {
                let hb = &full_h * nalgebra::DVector::from_vec(basis[b].clone());
                for a in 0..=n {
                    let elem: Complex64 = basis[a]
                        .iter()
                        .zip(hb.iter())
                        .map(|(x, y)| x.conj() * y)
                        .sum();
                    hamiltonian.observe((elem - dicke_h.get(a, b)).norm());
                }
            }
        }

        for s in &states {
            let f = embed_symmetric(s)?;
            let m = collective_moments(s);
            let fm = full_moments(&f);
            let d = [
                (m.mean_sx - fm.mean_sx).abs(),
                (m.mean_sy - fm.mean_sy).abs(),
                (m.mean_sz - fm.mean_sz).abs(),
                (m.sx2 - fm.sx2).abs(),
                (m.sy2 - fm.sy2).abs(),
                (m.sz2 - fm.sz2).abs(),
                (m.sp_mean - fm.sp_mean).norm(),
                (m.sp2 - fm.sp2).norm(),
                (m.anti_sp_sz - fm.anti_sp_sz).norm(),
                (m.anti_sx_sy - fm.anti_sx_sy).abs(),
            ];
            moments.observe(d.iter().copied().fold(0.0, f64::max));

            let r = reduced_two_qubit(&m)?;
            let rho = partial_trace_pair(&f, 0, 1)?;
            reconstruction.observe(max_matrix_diff(&r.to_matrix(), &rho));
            if n >= 3 {
                let other = partial_trace_pair(&f, 1, n - 1)?;
                pair_independence.observe(max_matrix_diff(&rho, &other));
            }
            if let Ok(x) = concurrence_x_form(&r) {
                let spectral = concurrence_spectral(&rho)?;
                xform.observe((x.concurrence - spectral.concurrence).abs());
            }
        }
    }
    for t in [
        moments,
        reconstruction,
        pair_independence,
        xform,
        hamiltonian,
        fidelity,
        deficit,
    ] {
        report.push(t);
    }
    Ok(report)
}

/// X-form concurrence versus the spectral definition on random valid X
/// matrices and on parity-pure states.
pub fn x_form(samples: usize, ns: &[usize], seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("x-form");
    report
        .notes
        .push(format!("rng {} seed {seed}", oracle::RNG_ALGORITHM));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut diff = Tracker::at_most("|C_x-form - C_spectral| random X matrices", 1e-10);
    for _ in 0..samples {
        let y = rng.random_range(0.0..0.5);
        let rest = 1.0 - 2.0 * y;
        let v_plus = rest * rng.random::<f64>();
        let v_minus = rest - v_plus;
        let u = Complex64::from_polar(
            rng.random::<f64>() * (v_plus * v_minus).sqrt(),
            rng.random_range(0.0..2.0 * PI),
        );
        let r = TwoQubitReduced {
            n_qubits: 2,
            v_plus,
            v_minus,
            y,
            x_plus: Complex64::new(0.0, 0.0),
            x_minus: Complex64::new(0.0, 0.0),
            u,
        };
        let x = concurrence_x_form(&r)?;
        let s = concurrence_spectral(&r.to_matrix())?;
        diff.observe((x.concurrence - s.concurrence).abs());
    }
    let mut states = Tracker::at_most("|C_x-form - C_spectral| parity-pure states", 1e-10);
    let mut xpm = Tracker::at_most("parity-pure |x±|", 1e-12);
    for &n in ns {
        for parity in 0..2 {
            for _ in 0..samples / ns.len().max(1) / 2 + 1 {
                let s = oracle::random_parity_state(n, parity, &mut rng);
                let r = reduced_two_qubit(&collective_moments(&s))?;
                xpm.observe(r.x_plus.norm().max(r.x_minus.norm()));
                let x = concurrence_x_form(&r)?;
                let sp = concurrence_spectral(&r.to_matrix())?;
                states.observe((x.concurrence - sp.concurrence).abs());
            }
        }
    }
    report.push(diff);
    report.push(states);
    report.push(xpm);
    Ok(report)
}

/// Dicke states: `ξ² = 1 + 2n(N-n)/N` and `⟨S₊²⟩ = 0`.
pub fn dicke_states(max_n: usize) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("dicke");
    let mut xi2 = Tracker::at_most("|xi2 - (1 + 2n(N-n)/N)|", 1e-12);
    let mut sp2 = Tracker::at_most("|<S+^2>|", 0.0);
    let mut bound = Tracker::at_most("|lower bound - 1|", 0.0);
    for nq in 1..=max_n {
        for n in 0..=nq {
            let m = collective_moments(&make_dicke_state(nq, n)?);
            let want = 1.0 + 2.0 * (n * (nq - n)) as f64 / nq as f64;
            xi2.observe((squeezing_even_odd(&m)?.xi2 - want).abs());
            sp2.observe(m.sp2.norm());
            bound.observe((crate::squeezing::squeezing_lower_bound(&m) - 1.0).abs());
        }
    }
    report.push(xi2);
    report.push(sp2);
    report.push(bound);
    Ok(report)
}

/// Parity conservation, unitarity, energy conservation, rotation invariance
/// of the closed-form ξ², and the lower bound.
pub fn structural(ns: &[usize], t_max: f64, dt: f64, seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("parity");
    let times = time_grid(t_max, dt)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut commutator = Tracker::at_most("||[P, H]||_max", 1e-13);
    let mut transverse = Tracker::at_most("|<Sx>|, |<Sy>|", 1e-10);
    let mut leakage = Tracker::at_most("odd-sector weight", 1e-12);
    let mut norm = Tracker::at_most("norm drift", 1e-12);
    let mut energy = Tracker::at_most("energy drift", 1e-10);
    let mut consistency = Tracker::at_most("|xi2_general - xi2_closed| where |<S>| >= 1e-6", 1e-10);
    let mut rotation = Tracker::at_most("z-rotation change of xi2_closed", 1e-12);
    let mut bound = Tracker::at_least("xi2_closed - lower bound", -1e-12);
    for (_, spec) in model_specs(2.0) {
        for &n in ns {
            commutator.observe(parity_check(&spec, n)?);
            let h = build_hamiltonian(&spec, n)?;
            let model = PropagatedModel::new(&spec, n)?;
            let e0 = h.expectation(model.initial.amplitudes());
            for s in model.states(&times)? {
                let m = collective_moments(&s);
                transverse.observe(m.mean_sx.abs().max(m.mean_sy.abs()));
                let odd: f64 = s
                    .amplitudes()
                    .iter()
                    .skip(1)
                    .step_by(2)
                    .map(|c| c.norm_sqr())
                    .sum();
                leakage.observe(odd);
                norm.observe((s.norm() - 1.0).abs());
                energy.observe((h.expectation(s.amplitudes()) - e0).abs());
                let closed = squeezing_even_odd(&m)?;
                let angle = rng.random_range(0.0..2.0 * PI);
                let rotated = squeezing_even_odd(&collective_moments(&s.rotate_z(angle)))?;
                rotation.observe((rotated.xi2 - closed.xi2).abs());
                bound.observe(closed.xi2 - crate::squeezing::squeezing_lower_bound(&m));
                if m.mean_spin_norm() >= 1e-6 {
                    consistency.observe((squeezing_general(&m)?.xi2 - closed.xi2).abs());
                }
            }
        }
    }
    for t in [
        commutator,
        transverse,
        leakage,
        norm,
        energy,
        rotation,
        bound,
        consistency,
    ] {
        report.push(t);
    }
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Separable,
    Reconstruction,
    OneAxisMoments,
    SqueezingConcurrence,
    OneAxisEquivalence,
    Parity,
    Oracle,
    XForm,
    Dicke,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Separable,
        Suite::Reconstruction,
        Suite::OneAxisMoments,
        Suite::SqueezingConcurrence,
        Suite::OneAxisEquivalence,
        Suite::Parity,
        Suite::Oracle,
        Suite::XForm,
        Suite::Dicke,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Separable => "lemma1",
            Suite::Reconstruction => "lemma2",
            Suite::OneAxisMoments => "lemma3",
            Suite::SqueezingConcurrence => "prop3",
            Suite::OneAxisEquivalence => "prop4",
            Suite::Parity => "parity",
            Suite::Oracle => "oracle",
            Suite::XForm => "x-form",
            Suite::Dicke => "dicke",
        }
    }

    /// Runs the suite with its default grids.
    pub fn run(self, seed: u64) -> Result<SuiteReport> {
        let even_small = [2, 4, 6, 8, 10];
        match self {
            Suite::Separable => separable_states(&[2, 3, 4, 5, 6], 1000, seed),
            Suite::Reconstruction => {
                reduced_state_reconstruction(&[2, 3, 4, 5, 6, 7, 8], 100, seed, reduced_two_qubit)
            }
            Suite::OneAxisMoments => one_axis_moments(&[2, 3, 4, 6, 10, 20], 200),
            Suite::SqueezingConcurrence => {
                let mut report = SuiteReport::new("prop3");
                let ns: Vec<usize> = (2..=12).chain([20, 50]).collect();
                let mut one_axis = one_axis_equivalence(&ns, 10.0, 0.01)?;
                one_axis.checks.retain(|c| c.name == "|prop3 residual|");
                for c in &mut one_axis.checks {
                    c.name = format!("one-axis {}", c.name);
                }
                report.merge(one_axis);
                let field_ns: Vec<usize> = (2..=12).collect();
                report.merge(field_scan(
                    &field_ns,
                    &[0.1, 0.5, 1.0, 2.0, 5.0],
                    10.0,
                    0.01,
                )?);
                report.merge(two_axis_relation(&even_small, 3.0, 0.01)?);
                Ok(report)
            }
            Suite::OneAxisEquivalence => {
                let ns: Vec<usize> = (2..=20).chain([30, 50, 100]).collect();
                one_axis_equivalence(&ns, 10.0, 0.01)
            }
            Suite::Parity => structural(&[2, 3, 6, 11, 20], 5.0, 0.05, seed),
            Suite::Oracle => oracle_equivalence(&[2, 3, 4, 5, 6, 7, 8], 100, seed),
            Suite::XForm => x_form(1000, &[2, 3, 4, 6, 8, 12], seed),
            Suite::Dicke => dicke_states(100),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tracker_semantics() {
        let mut t = Tracker::at_most("x", 1.0);
        t.observe(0.5);
        t.observe(0.9);
        let c = t.finish();
        assert!(c.passed());
        assert_eq!(c.observed, 0.9);

        let mut t = Tracker::at_most("x", 1.0);
        t.observe(f64::NAN);
        t.observe(0.1);
        assert!(!t.finish().passed());

        assert!(!Tracker::at_least("empty", 0.0).finish().passed());
    }

    #[test]
    fn small_suites_pass() {
        assert!(separable_states(&[2, 3], 50, 1).unwrap().passed());
        assert!(
            reduced_state_reconstruction(&[2, 3, 4], 10, 1, reduced_two_qubit)
                .unwrap()
                .passed()
        );
        assert!(one_axis_moments(&[2, 3, 5], 40).unwrap().passed());
        assert!(dicke_states(12).unwrap().passed());
        assert!(x_form(100, &[2, 3], 3).unwrap().passed());
    }

    fn flip_v_sign(m: &CollectiveMoments) -> Result<TwoQubitReduced> {
        let mut r = reduced_two_qubit(m)?;
        std::mem::swap(&mut r.v_plus, &mut r.v_minus);
        Ok(r)
    }

    fn flip_x_sign(m: &CollectiveMoments) -> Result<TwoQubitReduced> {
        let mut r = reduced_two_qubit(m)?;
        std::mem::swap(&mut r.x_plus, &mut r.x_minus);
        Ok(r)
    }

    fn flip_sz2_sign_in_v(m: &CollectiveMoments) -> Result<TwoQubitReduced> {
        let mut r = reduced_two_qubit(m)?;
        let n = m.n_qubits as f64;
        let shift = 8.0 * m.sz2 / (4.0 * n * (n - 1.0));
        r.v_plus -= shift;
        r.v_minus -= shift;
        Ok(r)
    }

    fn flip_y_sign(m: &CollectiveMoments) -> Result<TwoQubitReduced> {
        let mut r = reduced_two_qubit(m)?;
        let n = m.n_qubits as f64;
        r.y = (n * n + 4.0 * m.sz2) / (4.0 * n * (n - 1.0));
        Ok(r)
    }

    fn conjugate_u(m: &CollectiveMoments) -> Result<TwoQubitReduced> {
        let mut r = reduced_two_qubit(m)?;
        r.u = r.u.conj();
        Ok(r)
    }

    fn flip_n_in_v(m: &CollectiveMoments) -> Result<TwoQubitReduced> {
        let mut r = reduced_two_qubit(m)?;
        let n = m.n_qubits as f64;
        let shift = 4.0 * n / (4.0 * n * (n - 1.0));
        r.v_plus += shift;
        r.v_minus += shift;
        Ok(r)
    }

    #[test]
    fn reconstruction_detects_sign_mutations() {
        let mutants: [(&str, Reconstruct); 6] = [
            ("v± swapped", flip_v_sign),
            ("x± swapped", flip_x_sign),
            ("+4<Sz²> → -4<Sz²> in v±", flip_sz2_sign_in_v),
            ("-4<Sz²> → +4<Sz²> in y", flip_y_sign),
            ("u conjugated", conjugate_u),
            ("-2N → +2N in v±", flip_n_in_v),
        ];
        for (name, mutant) in mutants {
            let report = reduced_state_reconstruction(&[2, 3, 4, 5], 10, 5, mutant).unwrap();
            assert!(!report.passed(), "mutation '{name}' went undetected");
        }
    }
}
