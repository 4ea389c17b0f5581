//! Acceptance suite: one line per criterion, in order, then a nonzero exit
//! if any criterion failed.

use std::collections::BTreeSet;
use std::f64::consts::{PI, TAU};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use iqs_core::bridge::{
    apply_gauge, born_probability, compare_up_to_gauge, conjugate, extract_amplitude, extract_phase, random_lattice_grid,
    reconstruct, snap, ExtractionConfig, LatticeShape, WaveFunctionGrid,
};
use iqs_core::checker::{all_pass, check_amplitude, check_phase};
use iqs_core::rational::{self, int, ratio};
use iqs_core::represent::{
    build_amplitude_rep, build_amplitude_rep_with_unit, build_phase_rep, check_amplitude_uniqueness,
    check_phase_uniqueness, telescoping_defect, verify_amplitude_rep, verify_phase_rep, AmplitudeRepresentation,
    PhaseRepresentation, Uniqueness,
};
use iqs_core::search::{
    brute_force_representation, find_separating_model, generate_clock, generate_integer_amplitude, oracle_check,
    random_amplitude, random_phase, symmetric_amplitude, symmetric_phase, SearchBudget, SearchOutcome,
};
use iqs_core::{AmplitudeStructure, Axiom, CheckConfig, PhaseStructure, RegionId, Status, Structure};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0x5eed;
const GRIDS: usize = 100;
const DELTA: f64 = 0.5;
const TICK_CHOICES: [u64; 6] = [2, 3, 4, 6, 8, 12];

type Criterion<'a> = Box<dyn Fn() -> Verdict + 'a>;

struct Verdict {
    passed: bool,
    detail: String,
}

impl Verdict {
    fn new(passed: bool, detail: impl Into<String>) -> Self {
        Verdict { passed, detail: detail.into() }
    }
}

fn clocks() -> Vec<(usize, usize, PhaseStructure)> {
    (1..=12).flat_map(|n| [1, 2].map(|per_tick| (n, per_tick, generate_clock(n, per_tick)))).collect()
}

fn amplitudes() -> Vec<(usize, usize, AmplitudeStructure)> {
    (0..=10).flat_map(|m| [1, 2].map(|mult| (m, mult, generate_integer_amplitude(m, mult)))).collect()
}

fn generator_soundness() -> Verdict {
    let started = Instant::now();
    let mut failures = Vec::new();
    for (n, per_tick, s) in clocks() {
        let reports = check_phase(&s, &CheckConfig::phase().with_parallel(true)).expect("well-formed clock");
        if !all_pass(&reports) {
            failures.push(format!("clock({n},{per_tick})"));
        }
    }
    for (m, mult, s) in amplitudes() {
        let reports = check_amplitude(&s, &CheckConfig::amplitude().with_parallel(true)).expect("well-formed model");
        if !all_pass(&reports) {
            failures.push(format!("intamp({m},{mult})"));
        }
    }
    let elapsed = started.elapsed();
    Verdict::new(
        failures.is_empty() && elapsed < Duration::from_secs(60),
        format!("{} failures {:?}, {:.2?} (limit 60s)", failures.len(), failures, elapsed),
    )
}

fn moduli() -> [iqs_core::Rational; 3] {
    [int(1), int(8), int(360)]
}

fn representations_verify() -> Verdict {
    let mut checked = 0;
    let mut failures = Vec::new();
    for (n, per_tick, s) in clocks() {
        for k in moduli() {
            let zero = s.carrier()[0].clone();
            match build_phase_rep(&s, &k, &zero) {
                Ok(f) if verify_phase_rep(&s, &f) => checked += 1,
                _ => failures.push(format!("clock({n},{per_tick}) k={k}")),
            }
        }
    }
    for (m, mult, s) in amplitudes() {
        match build_amplitude_rep(&s) {
            Ok(r) if verify_amplitude_rep(&s, &r) => checked += 1,
            _ => failures.push(format!("intamp({m},{mult})")),
        }
    }
    Verdict::new(failures.is_empty(), format!("{checked} representations verified exactly, failures {failures:?}"))
}

/// Phase representations of every clock under every zero choice, for each modulus.
fn phase_families() -> Vec<(String, PhaseStructure, Vec<PhaseRepresentation>)> {
    let mut out = Vec::new();
    for (n, per_tick, s) in clocks() {
        for k in moduli() {
            let reps = s
                .carrier()
                .iter()
                .map(|zero| build_phase_rep(&s, &k, zero).expect("clock builds"))
                .collect();
            out.push((format!("clock({n},{per_tick}) k={k}"), s.clone(), reps));
        }
    }
    out
}

fn amplitude_family(s: &AmplitudeStructure) -> Vec<AmplitudeRepresentation> {
    let mut reps = vec![build_amplitude_rep(s).expect("model builds")];
    reps.extend(s.carrier().iter().filter_map(|unit| build_amplitude_rep_with_unit(s, unit).ok()));
    reps
}

fn pairwise<T>(items: &[T], mut related: impl FnMut(&T, &T) -> bool) -> bool {
    items.iter().enumerate().all(|(i, a)| items[i..].iter().all(|b| related(a, b)))
}

fn uniqueness() -> Verdict {
    let mut failures = Vec::new();
    let mut pairs = 0usize;
    for (m, mult, s) in amplitudes() {
        let reps = amplitude_family(&s);
        pairs += reps.len() * (reps.len() + 1) / 2;
        let ok = pairwise(&reps, |a, b| {
            matches!(check_amplitude_uniqueness(a, b), Ok(Uniqueness::Related(_)))
                && matches!(check_amplitude_uniqueness(b, a), Ok(Uniqueness::Related(_)))
        });
        if !ok {
            failures.push(format!("intamp({m},{mult})"));
        }
    }
    for (name, _, reps) in phase_families() {
        pairs += reps.len() * (reps.len() + 1) / 2;
        if !pairwise(&reps, |a, b| matches!(check_phase_uniqueness(a, b), Ok(Uniqueness::Related(_)))) {
            failures.push(name);
        }
    }
    let mut brute = Vec::new();
    for n in 1..=5 {
        let s = generate_clock(n, 1);
        let k = int(n as i64);
        let maps = brute_force_representation(&s, &k, n as u64).expect("within the limit");
        let related = pairwise(&maps, |a, b| matches!(check_phase_uniqueness(a, b), Ok(Uniqueness::Related(_))));
        if maps.len() != n || !related {
            failures.push(format!("brute force clock({n}) found {} maps", maps.len()));
        }
        brute.push(maps.len());
    }
    Verdict::new(
        failures.is_empty(),
        format!("{pairs} pairs related exactly, brute-force map counts {brute:?} for n=1..5, failures {failures:?}"),
    )
}

fn oracle_equivalence() -> Verdict {
    const PER_FAMILY: usize = 1000;
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut disagreements = Vec::new();
    let mut failing_seen = 0usize;
    for family in ["amplitude", "phase"] {
        for i in 0..PER_FAMILY {
            let n = rng.gen_range(0..=4);
            let symmetric = i % 2 == 1;
            let (s, reports) = if family == "amplitude" {
                let s = if symmetric { symmetric_amplitude(&mut rng, n) } else { random_amplitude(&mut rng, n) };
                let reports = check_amplitude(&s, &CheckConfig::amplitude()).expect("well-formed");
                (Structure::from(s), reports)
            } else {
                let s = if symmetric { symmetric_phase(&mut rng, n) } else { random_phase(&mut rng, n) };
                let reports = check_phase(&s, &CheckConfig::phase()).expect("well-formed");
                (Structure::from(s), reports)
            };
            for report in reports {
                let naive = oracle_check(&s, report.axiom).expect("oracle runs");
                if naive != report {
                    disagreements.push(format!("{family} #{i} {}", report.axiom));
                }
                failing_seen += usize::from(report.status == Status::Fail);
            }
        }
    }
    let elapsed = started.elapsed();
    Verdict::new(
        disagreements.is_empty() && elapsed < Duration::from_secs(300),
        format!(
            "{} structures, {} disagreements (statuses and witnesses), {failing_seen} failing reports seen, {:.2?} (limit 300s)",
            2 * PER_FAMILY,
            disagreements.len(),
            elapsed
        ),
    )
}

struct Sample {
    grid: WaveFunctionGrid,
    cfg: ExtractionConfig,
    alpha: f64,
    beta: f64,
    gauged: WaveFunctionGrid,
    /// Lattice co-scaled by `alpha`.
    gauged_cfg: ExtractionConfig,
}

fn lattice_config(delta: f64, ticks: u64) -> ExtractionConfig {
    let exact = rational::from_f64(delta).expect("finite lattice unit");
    ExtractionConfig::new(exact, ticks, (delta / 4.0).min(PI / (2.0 * ticks as f64))).expect("valid lattice")
}

fn samples() -> Vec<Sample> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    (0..GRIDS)
        .map(|_| {
            let ticks = TICK_CHOICES[rng.gen_range(0..TICK_CHOICES.len())];
            let grid = random_lattice_grid(&mut rng, LatticeShape::default(), DELTA, ticks);
            let alpha = 10.0 * (1.0 - rng.gen::<f64>());
            let beta = TAU * rng.gen::<f64>();
            let gauged = apply_gauge(&grid, alpha, beta).expect("positive scale");
            Sample {
                cfg: lattice_config(DELTA, ticks),
                gauged_cfg: lattice_config(alpha * DELTA, ticks),
                grid,
                alpha,
                beta,
                gauged,
            }
        })
        .collect()
}

fn random_subset<R: Rng>(rng: &mut R, g: &WaveFunctionGrid) -> Vec<Vec<usize>> {
    g.entries().iter().filter(|_| rng.gen_bool(0.5)).map(|e| e.config.clone()).collect()
}

fn gauge_invariance(samples: &[Sample]) -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
    let mut failures = Vec::new();
    let mut worst_born = 0.0f64;
    for (i, s) in samples.iter().enumerate() {
        let phase = extract_phase(&s.grid, &s.cfg).expect("lattice grid");
        let amplitude = extract_amplitude(&s.grid, &s.cfg).expect("lattice grid");
        let gauged_phase = extract_phase(&s.gauged, &s.gauged_cfg).expect("gauged lattice grid");
        let gauged_amplitude = extract_amplitude(&s.gauged, &s.gauged_cfg).expect("gauged lattice grid");
        if phase != gauged_phase {
            failures.push(format!("#{i} phase"));
        }
        if amplitude != gauged_amplitude {
            failures.push(format!("#{i} amplitude (co-scaled lattice)"));
        }
        // With the lattice left alone the scale has to be a whole number for
        // the gauged moduli to stay on it; the order is then unchanged.
        let whole = (s.alpha.ceil()).max(1.0);
        let whole_gauged = apply_gauge(&s.grid, whole, s.beta).expect("positive scale");
        let fixed_lattice = extract_amplitude(&whole_gauged, &s.cfg).expect("whole multiples stay on the lattice");
        if fixed_lattice.geq() != amplitude.geq() {
            failures.push(format!("#{i} geq (fixed lattice, alpha={whole})"));
        }
        for _ in 0..10 {
            let subset = random_subset(&mut rng, &s.grid);
            let p = born_probability(&s.grid, &subset).expect("nonzero grid");
            let q = born_probability(&s.gauged, &subset).expect("nonzero grid");
            worst_born = worst_born.max((p - q).abs());
        }
    }
    Verdict::new(
        failures.is_empty() && worst_born < 1e-12,
        format!("{GRIDS} grids, relation mismatches {failures:?}, worst Born difference {worst_born:.3e} (limit 1e-12)"),
    )
}

fn circular_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}

fn zero_of(g: &WaveFunctionGrid, cfg: &ExtractionConfig) -> RegionId {
    WaveFunctionGrid::region(snap(g, cfg).expect("lattice grid").anchor.expect("nonzero grid"))
}

fn passes_all(g: &WaveFunctionGrid, cfg: &ExtractionConfig) -> bool {
    let amplitude = extract_amplitude(g, cfg).expect("lattice grid");
    let phase = extract_phase(g, cfg).expect("lattice grid");
    all_pass(&check_amplitude(&amplitude, &CheckConfig::amplitude()).expect("well-formed"))
        && all_pass(&check_phase(&phase, &CheckConfig::phase()).expect("well-formed"))
}

fn roundtrip(samples: &[Sample]) -> Verdict {
    let started = Instant::now();
    let mut eligible = 0;
    let mut failures = Vec::new();
    let (mut worst_alpha, mut worst_beta) = (0.0f64, 0.0f64);
    for (i, s) in samples.iter().enumerate() {
        if !passes_all(&s.grid, &s.cfg) {
            continue;
        }
        eligible += 1;
        let k = int(s.cfg.phase_divisions() as i64);
        let fit = |g: &WaveFunctionGrid, cfg: &ExtractionConfig| {
            let (r, f) = reconstruct(g, cfg, &k, &zero_of(g, cfg))?;
            compare_up_to_gauge(g, &r, &f, cfg)
        };
        match (fit(&s.grid, &s.cfg), fit(&s.gauged, &s.gauged_cfg)) {
            (Ok(plain), Ok(gauged)) => {
                if plain.residual != 0.0 || gauged.residual != 0.0 {
                    failures.push(format!("#{i} residual {} / {}", plain.residual, gauged.residual));
                }
                worst_alpha = worst_alpha.max((gauged.alpha / plain.alpha / s.alpha - 1.0).abs());
                worst_beta = worst_beta.max(circular_distance(gauged.beta - plain.beta, s.beta));
            }
            (a, b) => failures.push(format!("#{i} {:?} / {:?}", a.err(), b.err())),
        }
    }
    let elapsed = started.elapsed();
    Verdict::new(
        failures.is_empty() && eligible > 0 && worst_alpha < 1e-12 && worst_beta < 1e-12 && elapsed < Duration::from_secs(120),
        format!(
            "{eligible}/{GRIDS} grids pass all axioms, failures {failures:?}, worst alpha ratio error {worst_alpha:.3e}, \
             worst beta error {worst_beta:.3e} rad (limit 1e-12), {elapsed:.2?} (limit 120s)"
        ),
    )
}

fn conjugation(samples: &[Sample]) -> Verdict {
    let mut failures = Vec::new();
    for (i, s) in samples.iter().enumerate() {
        let phase = extract_phase(&s.grid, &s.cfg).expect("lattice grid");
        let reversed = extract_phase(&conjugate(&s.grid), &s.cfg).expect("lattice grid");
        let cong: BTreeSet<_> = phase.cong().iter().map(|[a, b, c, d]| [b.clone(), a.clone(), d.clone(), c.clone()]).collect();
        let cb: BTreeSet<_> = phase.cb().iter().map(|[a, b, c]| [c.clone(), b.clone(), a.clone()]).collect();
        if reversed.cong() != &cong || reversed.cb() != &cb {
            failures.push(i);
        }
    }
    Verdict::new(failures.is_empty(), format!("{GRIDS} grids, mismatching grids {failures:?}"))
}

fn separation() -> Verdict {
    let budget = SearchBudget { max_carrier: 3, max_trials: 10_000, seed: SEED };
    let cases = [(vec![Axiom::K1, Axiom::K2], Axiom::K3), (vec![Axiom::G1], Axiom::G2)];
    let mut notes = Vec::new();
    let mut passed = true;
    for (satisfy, violate) in cases {
        let label = format!("{}+ / {violate}-", satisfy.iter().map(|a| a.to_string()).collect::<Vec<_>>().join("+"));
        match find_separating_model(&satisfy, violate, &budget) {
            Ok(SearchOutcome::Found { trial, structure, .. }) => {
                let verified = satisfy.iter().all(|&a| oracle_check(&structure, a).is_ok_and(|r| r.status != Status::Fail))
                    && oracle_check(&structure, violate).is_ok_and(|r| r.status == Status::Fail);
                passed &= verified && structure.carrier().len() <= 3;
                notes.push(format!("{label} at trial {trial}, carrier {}, oracle verified {verified}", structure.carrier().len()));
            }
            other => {
                passed = false;
                notes.push(format!("{label} not found: {other:?}"));
            }
        }
    }
    Verdict::new(passed, notes.join("; "))
}

fn telescoping() -> Verdict {
    let mut pairs = 0usize;
    let mut nonzero = Vec::new();
    for (name, s, reps) in phase_families() {
        let verified: Vec<_> = reps.iter().filter(|f| verify_phase_rep(&s, f)).collect();
        for (i, f1) in verified.iter().enumerate() {
            for f2 in &verified[i..] {
                for a in s.carrier() {
                    for b in s.carrier() {
                        pairs += 1;
                        if !telescoping_defect(f1, f2, a, b).expect("same keys").eq(&ratio(0, 1)) {
                            nonzero.push(format!("{name} D({a},{b})"));
                        }
                    }
                }
            }
        }
    }
    Verdict::new(nonzero.is_empty(), format!("{pairs} region pairs checked, nonzero defects {}", nonzero.len()))
}

fn main() -> ExitCode {
    let grids = samples();
    let criteria: [(&str, Criterion); 9] = [
        ("generator soundness", Box::new(generator_soundness)),
        ("representations verify", Box::new(representations_verify)),
        ("uniqueness up to gauge", Box::new(uniqueness)),
        ("checker agrees with oracle", Box::new(oracle_equivalence)),
        ("gauge invariance", Box::new(|| gauge_invariance(&grids))),
        ("roundtrip", Box::new(|| roundtrip(&grids))),
        ("conjugation law", Box::new(|| conjugation(&grids))),
        ("separation witnesses", Box::new(separation)),
        ("telescoping defect", Box::new(telescoping)),
    ];
    let mut failed = 0;
    for (number, (name, run)) in criteria.iter().enumerate() {
        let verdict = run();
        failed += usize::from(!verdict.passed);
        println!("criterion {} {name}: {} ({})", number + 1, if verdict.passed { "PASS" } else { "FAIL" }, verdict.detail);
    }
    println!("acceptance: {}/{} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
