//! Subcommand implementations; every output is a pure function of the config.

use std::collections::BTreeMap;

use anosov_lab::census::{
    classify_orbit_type, disjoint_class_census, enumerate_classes, farey_census, farey_count, farey_count_oracle,
    geodesic_table, linear_edges, log_edges, primitive_class_oracle, CensusEntry, CensusTable, Geodesic, OrbitType,
};
use anosov_lab::cocycle::{
    anosov_certificate, cone_flip_detector, lyapunov_estimate, remark_cross_check, sweep, AnnulusTangent,
    ReturnSequence, SweepRow, SweepSpec, Verdict,
};
use anosov_lab::entropy::{
    abramov_transfer, entropy_fit, growth_type_classify, homotopy_bound_sequence, pesin_ensemble, EntropyReport,
    GrowthKind, GrowthLabel, NamedLabel,
};
use anosov_lab::hyperbolic::frames::{semigroup_residual, structure_residuals};
use anosov_lab::hyperbolic::{build_genus2_surface, FuchsianSurface};
use anosov_lab::surgery::{
    beta0_build, gluing_identity_check, normalization_constant, time_change_sup, SurgeryConfig, TwistProfile,
};
use anosov_lab::LabError;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::config::RunConfig;
use crate::{CliError, Command, Outcome, Summary};

pub const STRUCTURE_TOL: f64 = 1e-12;
pub const SEMIGROUP_TOL: f64 = 1e-10;
pub const RELATION_TOL: f64 = 1e-9;
pub const IDENTITY_SAMPLES: usize = 1000;
pub const DH_GRID: usize = 200;
pub const NORMALIZATION_TOL: f64 = 1e-8;
pub const GEODESIC_SLOPE: (f64, f64) = (0.85, 1.1);
/// Relative tolerance on the per-letter growth `log 3`.
pub const DISJOINT_GROWTH_TOL: f64 = 0.05;
pub const FAREY_EXPONENT_TOL: f64 = 0.1;
pub const FAREY_FIT_FROM: f64 = 1e2;
pub const REEB_TOL: f64 = 1e-8;
pub const LYAPUNOV_FLOOR: f64 = 1.0 - 1e-6;
pub const NO_CROSSING_TOL: f64 = 1e-9;
pub const REMARK_TOL: f64 = 1e-10;
pub const REMARK_STEPS: usize = 10_000;

const GEODESIC_BUCKETS: usize = 9;
const LOG_BUCKETS: usize = 17;
/// Log-spaced buckets over a decade ending at the census length.
const LABEL_BUCKETS: usize = 19;

type Metrics = BTreeMap<String, Value>;

fn metrics<const N: usize>(pairs: [(&str, Value); N]) -> Metrics {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn metrics_csv(m: &Metrics) -> String {
    let mut out = String::from("metric,value\n");
    for (k, v) in m {
        out.push_str(&format!("{k},{v}\n"));
    }
    out
}

fn outcome(command: Command, pass: bool, metrics: Metrics, csv: Option<String>, json: Option<Value>) -> Outcome {
    let csv = csv.unwrap_or_else(|| metrics_csv(&metrics));
    let json = json.unwrap_or_else(|| json!({ "metrics": metrics }));
    Outcome { summary: Summary { subcommand: command.name().to_string(), pass, metrics }, csv, json }
}

pub fn run(command: Command, config: &RunConfig) -> Result<Outcome, CliError> {
    use crate::{CensusAction as Ce, ConesAction as Co};
    match command {
        Command::Frames(_) => frames_check(command),
        Command::Surface(_) => surface_build(command),
        Command::Surgery(_) => surgery_validate(command, config),
        Command::Cones(Co::Certify) => cones_certify(command, config),
        Command::Cones(Co::Sweep) => cones_sweep(command, config),
        Command::Census(Ce::Geodesics) => census_geodesics(command, config),
        Command::Census(Ce::Disjoint) => census_disjoint(command, config),
        Command::Farey(_) => farey_run(command, config),
        Command::Entropy(_) => entropy_report(command, config),
    }
}

fn frames_check(command: Command) -> Result<Outcome, CliError> {
    let [vx, hx, hv] = structure_residuals();
    let semigroup = semigroup_residual(2.0, 20);
    let pass = vx.max(hx).max(hv) <= STRUCTURE_TOL && semigroup <= SEMIGROUP_TOL;
    let m = metrics([
        ("bracket_vx_minus_h", json!(vx)),
        ("bracket_hx_minus_v", json!(hx)),
        ("bracket_hv_minus_x", json!(hv)),
        ("semigroup_residual", json!(semigroup)),
    ]);
    Ok(outcome(command, pass, m, None, None))
}

fn surface_build(command: Command) -> Result<Outcome, CliError> {
    let s = build_genus2_surface()?;
    let traces: Vec<f64> = (0..8u8).map(|k| s.generator(k).trace().abs()).collect();
    let (lo, hi) = traces.iter().fold((f64::INFINITY, 0.0_f64), |(a, b), &t| (a.min(t), b.max(t)));
    let residual = s.relation_residual();
    let pass = residual <= RELATION_TOL && hi - lo <= RELATION_TOL && lo > 2.0;
    let mut csv = String::from("k,a,b,c,d,trace\n");
    let mut gens = Vec::new();
    for k in 0..8u8 {
        let [a, b, c, d] = s.generator(k).entries();
        csv.push_str(&format!("{k},{a},{b},{c},{d},{}\n", a + d));
        gens.push(json!({ "k": k, "matrix": [a, b, c, d] }));
    }
    let m = metrics([
        ("relation_residual", json!(residual)),
        ("trace", json!(traces[0])),
        ("trace_spread", json!(hi - lo)),
        ("systole", json!(s.systole)),
        ("inradius", json!(s.inradius())),
        ("circumradius", json!(s.circumradius())),
    ]);
    let json = json!({ "metrics": m, "generators": gens });
    Ok(outcome(command, pass, m, Some(csv), Some(json)))
}

fn surgery_validate(command: Command, config: &RunConfig) -> Result<Outcome, CliError> {
    let cfg = SurgeryConfig::new(config.surgery)?;
    let ids = gluing_identity_check(&cfg, IDENTITY_SAMPLES, config.cones.seed);
    let (dh_sup, dh_ok) = match time_change_sup(&cfg, DH_GRID) {
        Ok(sup) => (sup, true),
        Err(LabError::TimeChangeViolation { sup, .. }) => (sup, false),
        Err(e) => return Err(e.into()),
    };
    let mut m = metrics([
        ("q", json!(cfg.twist.q)),
        ("identity_max_residual", json!(ids.max_residual())),
        ("contact_shift", json!(ids.contact_shift)),
        ("differential", json!(ids.differential)),
        ("volume", json!(ids.volume)),
        ("deformed", json!(ids.deformed)),
        ("dh_sup", json!(dh_sup)),
        ("dh_bound", json!(cfg.time_change_bound())),
    ]);
    let mut pass = ids.pass && dh_ok;
    if dh_ok {
        let norm = normalization_constant(&cfg)?;
        m.insert("normalization_c".into(), json!(norm.c));
        m.insert("normalization_residual".into(), json!(norm.identity_residual));
        pass &= norm.identity_residual.abs() <= NORMALIZATION_TOL && (cfg.twist.q != 0 || norm.c == 1.0);
    }
    Ok(outcome(command, pass, m, None, None))
}

fn twist(config: &RunConfig, q: i64, epsilon: f64) -> Result<TwistProfile, CliError> {
    Ok(TwistProfile::new(q, epsilon, config.surgery.profile)?)
}

fn cones_certify(command: Command, config: &RunConfig) -> Result<Outcome, CliError> {
    let (q, epsilon) = (config.surgery.q, config.surgery.epsilon);
    let tw = twist(config, q, epsilon)?;
    let cones = &config.cones;
    let sampler = cones.sampler();
    let (passed, min_margin) = (0..cones.n_sequences as u64)
        .into_par_iter()
        .map(|i| {
            let seq = ReturnSequence::sample(&sampler, epsilon, cones.seed, i)?;
            let out = anosov_certificate(&seq, &tw);
            Ok((out.is_pass() as usize, out.margin()))
        })
        .try_reduce(|| (0, f64::INFINITY), |a, b| Ok((a.0 + b.0, a.1.min(b.1))))
        .map_err(|e: LabError| CliError::from(e))?;
    let flip = cone_flip_detector(&tw, cones.t_min);
    let mut m = metrics([
        ("q", json!(q)),
        ("epsilon", json!(epsilon)),
        ("sequences", json!(cones.n_sequences)),
        ("certified", json!(passed)),
        ("min_margin", json!(min_margin)),
        ("flip_detected", json!(flip.is_some())),
        ("inf_df", json!(tw.inf_df())),
        ("flip_threshold", json!(-2.0 * (-cones.t_min).exp())),
    ]);
    // nonnegative twists must certify; negative ones must exhibit a flip witness
    let pass = if q >= 0 {
        passed == cones.n_sequences && min_margin > 0.0 && flip.is_none()
    } else {
        flip.is_some()
    };
    if let Some(f) = &flip {
        m.insert("flip_w".into(), json!(f.w));
        m.insert("flip_df".into(), json!(f.df));
    }
    let json = json!({ "metrics": m, "flip": flip });
    Ok(outcome(command, pass, m, None, Some(json)))
}

fn cones_sweep(command: Command, config: &RunConfig) -> Result<Outcome, CliError> {
    let cones = &config.cones;
    let spec = SweepSpec {
        qs: cones.sweep_qs.clone(),
        epsilons: cones.sweep_epsilons.clone(),
        sampler: cones.sampler(),
        n_sequences: cones.n_sequences,
        seed: cones.seed,
        profile: config.surgery.profile,
    };
    let rows = sweep(&spec)?;
    let count = |v: Verdict| rows.iter().filter(|r| r.verdict == v).count();
    let pass = rows.iter().filter(|r| r.q >= 0).all(|r| r.verdict == Verdict::Certified && r.min_margin > 0.0);
    let m = metrics([
        ("rows", json!(rows.len())),
        ("certified", json!(count(Verdict::Certified))),
        ("cone_flip", json!(count(Verdict::ConeFlip))),
        ("inconclusive", json!(count(Verdict::Inconclusive))),
    ]);
    let mut csv = format!("{}\n", SweepRow::CSV_HEADER);
    for r in &rows {
        csv.push_str(&r.csv());
        csv.push('\n');
    }
    let json = json!({ "metrics": m, "rows": rows });
    Ok(outcome(command, pass, m, Some(csv), Some(json)))
}

/// Orbit types relative to `c = axis(g₀)` of the classes no longer than `max_length`.
fn orbit_type_counts(surface: &FuchsianSurface, entries: &[CensusEntry], max_length: f64) -> Result<Metrics, CliError> {
    let c = Geodesic::new(surface, &[0])?;
    let types: Vec<OrbitType> = entries
        .par_iter()
        .filter(|e| e.length <= max_length)
        .map(|e| classify_orbit_type(surface, &e.word().letters, &c))
        .collect();
    let mut m = Metrics::new();
    for t in [OrbitType::OnTorus, OrbitType::Disjoint, OrbitType::Transverse, OrbitType::Undecided] {
        m.insert(format!("orbit_type_{t}"), json!(types.iter().filter(|&&x| x == t).count()));
    }
    Ok(m)
}

fn census_geodesics(command: Command, config: &RunConfig) -> Result<Outcome, CliError> {
    let (lo, hi) = (config.census.fit_from, config.census.max_length);
    let s = build_genus2_surface()?;
    let entries = enumerate_classes(&s, hi)?;
    let table = geodesic_table(&entries, linear_edges(lo, hi, GEODESIC_BUCKETS), "oriented", |_| true)?.with_fits(lo, hi)?;
    let fit = table.fits.expect("fits attached").exponential;
    let monotone = table.counts.windows(2).all(|p| p[0] <= p[1]);
    let primitive = entries.iter().filter(|e| e.primitive).count();
    let pass = (GEODESIC_SLOPE.0..=GEODESIC_SLOPE.1).contains(&fit.slope) && monotone && entries.len() % 2 == 0;
    let mut m = metrics([
        ("classes", json!(entries.len())),
        ("primitive", json!(primitive)),
        ("slope", json!(fit.slope)),
        ("slope_stderr", json!(fit.slope_stderr)),
        ("monotone", json!(monotone)),
    ]);
    m.extend(orbit_type_counts(&s, &entries, config.census.orbit_type_length)?);
    let json = json!({ "metrics": m, "table": table });
    Ok(outcome(command, pass, m, Some(table.csv()), Some(json)))
}

fn census_disjoint(command: Command, config: &RunConfig) -> Result<Outcome, CliError> {
    let n = config.census.max_letters;
    let census = disjoint_class_census(n)?;
    let oracle_match = census.per_length.iter().enumerate().all(|(i, &k)| k == primitive_class_oracle(i + 1));
    let rate = census.growth.slope;
    let rate_ok = n < 3 || (rate / 3f64.ln() - 1.0).abs() <= DISJOINT_GROWTH_TOL;
    let first = census.per_length.first().copied();
    let second = census.per_length.get(1).copied();
    let pass = oracle_match && rate_ok && first == Some(4) && second.is_none_or(|k| k == 4);
    let m = metrics([
        ("max_letters", json!(n)),
        ("classes", json!(census.per_length.iter().sum::<u64>())),
        ("length_1", json!(first)),
        ("length_2", json!(second)),
        ("growth_rate", json!(rate)),
        ("log_3", json!(3f64.ln())),
        ("oracle_match", json!(oracle_match)),
    ]);
    let json = json!({ "metrics": m, "per_length": census.per_length, "table": census.table });
    Ok(outcome(command, pass, m, Some(census.table.csv()), Some(json)))
}

fn farey_run(command: Command, config: &RunConfig) -> Result<Outcome, CliError> {
    let cfg = SurgeryConfig::new(config.surgery)?;
    let t_max = config.census.farey_t;
    let beta = beta0_build(&cfg.twist, cfg.chart.epsilon)?;
    let census = farey_census(&beta, t_max, log_edges(FAREY_FIT_FROM, t_max, LOG_BUCKETS), config.census.critical_points)?;
    let q = cfg.twist.q.unsigned_abs();
    let mut cutoff = 10;
    let mut identity = true;
    while cutoff <= 10_000 {
        identity &= farey_count(q, cutoff) == farey_count_oracle(q, cutoff);
        cutoff *= 10;
    }
    let fit = census.torus_exponent(FAREY_FIT_FROM, t_max)?;
    let exponent_ok = t_max < 1e3 || (fit.slope - 2.0).abs() <= FAREY_EXPONENT_TOL;
    // Reeb closure on the tori with the fewest fiber turns
    let mut reeb = 0.0_f64;
    let mut short: Vec<_> = census.entries.iter().filter(|e| e.q_w <= 5).collect();
    short.sort_by_key(|e| (e.q_w, e.p));
    for e in short.iter().take(6) {
        let closure = beta.reeb_closure_time(e.w, e.q_w + 1, 1000, 1e-9).ok_or_else(|| {
            CliError::Lab(LabError::Geometry(format!("Reeb orbit at p/q = {}/{} did not close", e.p, e.q_w)))
        })?;
        reeb = reeb.max((closure - e.period).abs() / e.period);
    }
    let bisection = census.entries.iter().map(|e| e.residual).fold(0.0, f64::max);
    let pass = identity && exponent_ok && reeb <= REEB_TOL && bisection <= 1e-12;
    let m = metrics([
        ("q", json!(cfg.twist.q)),
        ("t_max", json!(t_max)),
        ("tori", json!(census.entries.len())),
        ("orbits", json!(census.orbits.counts.last())),
        ("totient_identity", json!(identity)),
        ("torus_exponent", json!(fit.slope)),
        ("torus_exponent_stderr", json!(fit.slope_stderr)),
        ("reeb_relative_error", json!(reeb)),
        ("max_bisection_residual", json!(bisection)),
        ("period_constant", json!(beta.period_constant())),
    ]);
    let json = json!({ "metrics": m, "tori": census.tori, "orbits": census.orbits });
    Ok(outcome(command, pass, m, Some(census.csv()), Some(json)))
}

fn label_pair(name: &str, table: &CensusTable) -> Result<(NamedLabel, bool), CliError> {
    let label = growth_type_classify(table)?;
    let halved = growth_type_classify(&table.rescaled(2.0))?;
    Ok((NamedLabel { table: name.to_string(), label }, label.same_kind(&halved)))
}

fn is_exponential(l: &GrowthLabel) -> bool {
    matches!(l.kind, GrowthKind::Exponential { .. })
}

fn entropy_report(command: Command, config: &RunConfig) -> Result<Outcome, CliError> {
    let cfg = SurgeryConfig::new(config.surgery)?;
    let cones = &config.cones;
    // Lyapunov side: λ ≥ 1 over the ensemble, the crossing-free control, the closed form
    let pesin = pesin_ensemble(&cfg.twist, &cones.sampler(), cones.n_sequences, cones.seed)?;
    let control = ReturnSequence::without_crossings(&vec![cones.t_min; cones.seq_length], cfg.chart.epsilon);
    let control = lyapunov_estimate(&control, &cfg.twist, AnnulusTangent::new(1.0, 0.0))?.exponent;
    let remark = remark_cross_check(&cfg.twist, REMARK_STEPS, cones.t_min, cones.seed);
    let norm = normalization_constant(&cfg)?;
    // c·mean = 1, so the transfer to the normalized time change is the identity
    let transferred = abramov_transfer(pesin.min_exponent, 1.0 + norm.identity_residual)?;

    let s = build_genus2_surface()?;
    let (lo, hi) = (config.census.fit_from, config.census.max_length);
    let entries = enumerate_classes(&s, hi)?;
    let primitive = geodesic_table(&entries, linear_edges(lo, hi, GEODESIC_BUCKETS), "primitive", |e| e.primitive)?;
    let h_fit = entropy_fit(&primitive, lo, hi)?;
    let geodesics = geodesic_table(&entries, log_edges(hi / 10.0, hi, LABEL_BUCKETS), "oriented", |_| true)?;
    let beta = beta0_build(&cfg.twist, cfg.chart.epsilon)?;
    let t = config.census.farey_t;
    let farey = farey_census(&beta, t, log_edges(t / 100.0, t, LOG_BUCKETS), config.census.critical_points)?;
    let (geo_label, geo_inv) = label_pair("geodesics", &geodesics)?;
    let (farey_label, farey_inv) = label_pair("farey_tori", &farey.tori)?;

    let e = &config.entropy;
    let bounds = homotopy_bound_sequence(&e.bounds, e.t1, e.t_max)?;
    let mut probes = bounds.terms.iter().flat_map(|&t| [t, t * (1.0 - 1e-12)]);
    let dominated = probes.all(|t| bounds.bound.eval(t) <= bounds.staircase(t) as f64 + 1e-9);

    let farey_degree_ok = matches!(farey_label.label.kind, GrowthKind::Polynomial { degree, .. } if (degree - 2.0).abs() <= FAREY_EXPONENT_TOL);
    let pass = pesin.pass
        && (cfg.twist.q < 0 || pesin.min_exponent >= LYAPUNOV_FLOOR)
        && (control - 1.0).abs() <= NO_CROSSING_TOL
        && remark.max_deviation <= REMARK_TOL
        && is_exponential(&geo_label.label)
        && farey_degree_ok
        && geo_inv
        && farey_inv
        && dominated;
    let report = EntropyReport {
        lyapunov_min: pesin.min_exponent,
        entropy_fit: h_fit.slope,
        growth_labels: vec![geo_label, farey_label],
        bound_sequence: bounds.terms.clone(),
    };
    let m = metrics([
        ("lyapunov_min", json!(pesin.min_exponent)),
        ("lyapunov_max", json!(pesin.max_exponent)),
        ("crossing_free_exponent", json!(control)),
        ("remark_max_deviation", json!(remark.max_deviation)),
        ("abramov_transfer", json!(transferred)),
        ("entropy_fit", json!(h_fit.slope)),
        ("entropy_fit_stderr", json!(h_fit.slope_stderr)),
        ("labels_invariant_under_halving", json!(geo_inv && farey_inv)),
        ("bound_terms", json!(bounds.terms.len())),
        ("staircase_dominates", json!(dominated)),
        ("geodesic_label", json!(report.growth_labels[0].label.kind)),
        ("farey_label", json!(report.growth_labels[1].label.kind)),
    ]);
    let json = serde_json::to_value(&report).expect("report serializes");
    Ok(outcome(command, pass, m, None, Some(json)))
}
