//! The four experiment pipelines behind the subcommands.

use crate::config::{ScenarioConfig, SitesSpec};
use crate::error::CliError;
use crate::output;
use corrblock::antenna::draw_orientation;
use corrblock::blocking::{pair_analysis, JointPmf, PairAnalysis, PairBlockingStats};
use corrblock::geometry::{RegionModel, TransmitterSite};
use corrblock::montecarlo::{
    estimate_pair_blocking, simulate_random_network, simulate_sinr, stream_rng, McControls,
    Placement, SinrScenario, StreamPurpose,
};
use corrblock::sinr::{sinr_cdf, z_cdf, z_distribution, ReceivedPowers, SinrCdf};
use serde_json::json;
use std::path::Path;

/// Consistency gate applied to every analytic curve before it is
/// written: the step CDF must reproduce the survival function of the
/// interference distribution at plateau midpoints.
fn verify_curve(cdf: &SinrCdf, powers: &ReceivedPowers, pmf: &JointPmf) -> Result<(), CliError> {
    let dist = z_distribution(powers, pmf);
    let bp: Vec<f64> = cdf.breakpoints().collect();
    if !bp.windows(2).all(|w| w[0] < w[1]) {
        return Err(CliError::infeasible("analytic curve breakpoints not increasing"));
    }
    let mut probes = vec![bp[0] * 0.5];
    probes.extend(bp.windows(2).map(|w| 0.5 * (w[0] + w[1])));
    probes.push(bp.last().unwrap() * 2.0);
    for beta in probes {
        let direct = 1.0 - z_cdf(&dist, powers.omega0 / beta - powers.c);
        if (cdf.value_at(beta) - direct).abs() > 1e-12 {
            return Err(CliError::infeasible("analytic curve fails the CDF identity"));
        }
    }
    Ok(())
}

fn stats_json(analysis: &Option<PairAnalysis>) -> serde_json::Value {
    match analysis {
        Some(a) => json!({
            "a1": a.a1,
            "a2": a.a2,
            "v": a.v,
            "p00": a.p00,
            "p1": a.stats.p1,
            "p2": a.stats.p2,
            "rho": a.stats.rho,
        }),
        None => json!(null),
    }
}

/// Geometry-derived statistics under both region models, so the rectangle
/// idealization can be compared against the exact predicate's areas.
fn both_models_json(scenario: &SinrScenario) -> serde_json::Value {
    if scenario.field.count() == 0 {
        return json!(null);
    }
    let mut out = serde_json::Map::new();
    for (name, model) in [
        ("rectangle", RegionModel::Rectangle),
        ("exact", RegionModel::Exact),
    ] {
        if let Ok(a) = pair_analysis(
            &scenario.sites[0],
            &scenario.sites[1],
            &scenario.field,
            model,
        ) {
            out.insert(name.into(), stats_json(&Some(a)));
        }
    }
    serde_json::Value::Object(out)
}

fn model_name(model: RegionModel) -> &'static str {
    match model {
        RegionModel::Rectangle => "rectangle",
        RegionModel::Exact => "exact",
    }
}

/// Fix random orientations once per run so the analytic curves and the
/// simulation see the same network realization.
fn resolve_orientations(scenario: &mut SinrScenario, seed: u64) -> [f64; 2] {
    let mut orng = stream_rng(seed, 0, 0, StreamPurpose::Orientation);
    let mut boresights = [0.0, 0.0];
    for (i, slot) in boresights.iter_mut().enumerate() {
        *slot = match scenario.tx_boresights[i] {
            Some(b) => b,
            None => {
                if scenario.tx_patterns[i].is_directional() {
                    draw_orientation(&mut orng)
                } else {
                    0.0
                }
            }
        };
    }
    scenario.tx_boresights = [Some(boresights[0]), Some(boresights[1])];
    boresights
}

/// Analytic SINR step CDF(s): one curve per requested correlation value, or
/// a single curve with the geometry-derived correlation.
pub fn cmd_analyze(
    config: &ScenarioConfig,
    config_dir: &Path,
    out: &Path,
    seed: Option<u64>,
    model: RegionModel,
) -> Result<(), CliError> {
    output::ensure_out_dir(out)?;
    let sites = config.fixed_sites()?;
    let mut scenario = config.scenario(sites, config_dir)?;
    let controls = config.controls(seed)?;
    let boresights = resolve_orientations(&mut scenario, controls.master_seed());
    let powers = scenario
        .received_powers(boresights)
        .map_err(|e| CliError::infeasible(e.to_string()))?;

    if scenario.field.count() == 0 {
        let pmf = JointPmf::independent(0.0, 0.0);
        let cdf = sinr_cdf(&powers, &pmf);
        verify_curve(&cdf, &powers, &pmf)?;
        output::write_curve(out, "analytic.csv", cdf.steps().iter().copied())?;
        output::write_summary(
            out,
            &json!({
                "command": "analyze",
                "region_model": model_name(model),
                "stats": null,
                "curves": ["analytic.csv"],
                "note": "no blockages; both interferers always line of sight",
            }),
        )?;
        return Ok(());
    }

    let analysis = pair_analysis(&sites[0], &sites[1], &scenario.field, model)?;
    let rho_values: Vec<f64> = if let Some(sweep) = &config.rho_sweep {
        sweep.values()?
    } else if let Some(rho) = config.rho_override {
        vec![rho]
    } else {
        vec![analysis.stats.rho]
    };
    let single = rho_values.len() == 1;
    let mut curves = Vec::new();
    for rho in &rho_values {
        let stats = PairBlockingStats::new(analysis.stats.p1, analysis.stats.p2, *rho)?;
        let pmf = stats.joint_pmf()?;
        let cdf = sinr_cdf(&powers, &pmf);
        verify_curve(&cdf, &powers, &pmf)?;
        let name = if single {
            "analytic.csv".to_string()
        } else {
            format!("analytic_rho_{rho:+.2}.csv")
        };
        output::write_curve(out, &name, cdf.steps().iter().copied())?;
        curves.push(name);
    }
    output::write_summary(
        out,
        &json!({
            "command": "analyze",
            "region_model": model_name(model),
            "stats": stats_json(&Some(analysis)),
            "rho_values": rho_values,
            "curves": curves,
            "models": both_models_json(&scenario),
        }),
    )?;
    Ok(())
}

/// Correlation versus angular separation, one curve per swept width or
/// blockage count, with both region models and optional Monte-Carlo columns.
pub fn cmd_rho_sweep(
    config: &ScenarioConfig,
    _config_dir: &Path,
    out: &Path,
    seed: Option<u64>,
    model: RegionModel,
) -> Result<(), CliError> {
    output::ensure_out_dir(out)?;
    let sweep = config
        .theta_sweep
        .as_ref()
        .ok_or_else(|| CliError::config("rho-sweep needs a theta_sweep section"))?;
    if sweep.points < 2 {
        return Err(CliError::config("theta_sweep.points must be at least 2"));
    }
    if sweep.widths.is_some() && sweep.counts.is_some() {
        return Err(CliError::config(
            "theta_sweep takes widths or counts, not both",
        ));
    }
    let sites = config.fixed_sites()?;
    let (r1, r2) = (sites[0].r(), sites[1].r());
    if (r1 - r2).abs() > 1e-12 {
        eprintln!("warning: rho-sweep with unequal distances R1 = {r1}, R2 = {r2}");
    }
    let controls = config.controls(seed)?;
    let thetas: Vec<f64> = (0..sweep.points)
        .map(|i| {
            sweep.start_deg
                + (sweep.stop_deg - sweep.start_deg) * i as f64 / (sweep.points - 1) as f64
        })
        .collect();

    enum SweepVar {
        Width(Vec<f64>),
        Count(Vec<u32>),
        None,
    }
    let var = match (&sweep.widths, &sweep.counts) {
        (Some(w), _) => SweepVar::Width(w.clone()),
        (_, Some(k)) => SweepVar::Count(k.clone()),
        _ => SweepVar::None,
    };
    let cases: Vec<(String, u32, f64)> = match &var {
        SweepVar::Width(ws) => ws
            .iter()
            .map(|w| (format!("rho_vs_theta_w{w}.csv"), config.blockage.count, *w))
            .collect(),
        SweepVar::Count(ks) => ks
            .iter()
            .map(|k| (format!("rho_vs_theta_k{k}.csv"), *k, config.blockage.width))
            .collect(),
        SweepVar::None => vec![(
            "rho_vs_theta.csv".to_string(),
            config.blockage.count,
            config.blockage.width,
        )],
    };

    let mut files = Vec::new();
    for (name, count, width) in &cases {
        let mut field = corrblock::blocking::BlockageField::new(
            *count,
            *width,
            config.deployment_region()?,
        )?;
        if let Some(area) = config.area_override {
            field = field.with_area(area)?;
        }
        let mc = sweep.mc_trials.is_some();
        let mut text = String::from(if mc {
            "theta_deg,rho_rectangle,rho_exact,rho_mc,rho_mc_se\n"
        } else {
            "theta_deg,rho_rectangle,rho_exact\n"
        });
        for theta in &thetas {
            let s1 = TransmitterSite::new(r1, 0.0);
            let s2 = TransmitterSite::new(r2, theta.to_radians());
            let rect = pair_analysis(&s1, &s2, &field, RegionModel::Rectangle)?;
            let exact = pair_analysis(&s1, &s2, &field, RegionModel::Exact)?;
            if let Some(trials) = sweep.mc_trials {
                let mc_controls = McControls::new(trials, 1, controls.master_seed())?;
                let est = estimate_pair_blocking(&s1, &s2, &field, &mc_controls, model)?;
                let (rho_mc, se) = match (est.rho_hat, est.se_rho) {
                    (Some(r), Some(s)) => (r, s),
                    _ => (f64::NAN, f64::NAN),
                };
                text.push_str(&format!(
                    "{theta},{},{},{rho_mc},{se}\n",
                    rect.stats.rho, exact.stats.rho
                ));
            } else {
                text.push_str(&format!("{theta},{},{}\n", rect.stats.rho, exact.stats.rho));
            }
        }
        output::write_text(out, name, &text)?;
        files.push(name.clone());
    }
    output::write_summary(
        out,
        &json!({
            "command": "rho-sweep",
            "theta_deg": thetas,
            "r1": r1,
            "r2": r2,
            "mc_trials": sweep.mc_trials,
            "mc_predicate": model_name(model),
            "curves": files,
        }),
    )?;
    Ok(())
}

/// Empirical SINR CDF plus the correlated and independent analytic curves.
pub fn cmd_simulate(
    config: &ScenarioConfig,
    config_dir: &Path,
    out: &Path,
    seed: Option<u64>,
    model: RegionModel,
) -> Result<(), CliError> {
    output::ensure_out_dir(out)?;
    let sites = config.fixed_sites()?;
    let mut scenario = config.scenario(sites, config_dir)?;
    let controls = config.controls(seed)?;
    let boresights = resolve_orientations(&mut scenario, controls.master_seed());

    let empirical = simulate_sinr(&scenario, &controls)?;
    let pair = scenario.analytic_pair(boresights, model)?;
    let analysis = pair.analysis;
    let (correlated_cdf, correlated_pmf) = match (config.rho_override, &analysis) {
        (Some(rho), Some(a)) => {
            let stats = PairBlockingStats::new(a.stats.p1, a.stats.p2, rho)?;
            let pmf = stats.joint_pmf()?;
            (sinr_cdf(&pair.powers, &pmf), pmf)
        }
        (_, Some(a)) => (pair.correlated.clone(), a.stats.joint_pmf()?),
        (_, None) => (pair.correlated.clone(), JointPmf::independent(0.0, 0.0)),
    };
    let independent_pmf = match &analysis {
        Some(a) => a.stats.independent().joint_pmf()?,
        None => JointPmf::independent(0.0, 0.0),
    };
    verify_curve(&correlated_cdf, &pair.powers, &correlated_pmf)?;
    verify_curve(&pair.independent, &pair.powers, &independent_pmf)?;

    output::write_curve(out, "empirical.csv", empirical.steps().iter().copied())?;
    output::write_curve(
        out,
        "analytic_correlated.csv",
        correlated_cdf.steps().iter().copied(),
    )?;
    output::write_curve(
        out,
        "analytic_independent.csv",
        pair.independent.steps().iter().copied(),
    )?;
    output::write_summary(
        out,
        &json!({
            "command": "simulate",
            "region_model": model_name(model),
            "trials": controls.trials(),
            "seed": controls.master_seed(),
            "stats": stats_json(&analysis),
            "rho_override": config.rho_override,
            "omegas": [pair.powers.omega1, pair.powers.omega2],
            "boresights_deg": [boresights[0].to_degrees(), boresights[1].to_degrees()],
            "ks_correlated": empirical.ks_distance(&correlated_cdf),
            "ks_independent": empirical.ks_distance(&pair.independent),
            "models": both_models_json(&scenario),
            "curves": ["empirical.csv", "analytic_correlated.csv", "analytic_independent.csv"],
        }),
    )?;
    Ok(())
}

/// Pooled empirical and pooled analytic curves over random placements.
pub fn cmd_random_network(
    config: &ScenarioConfig,
    config_dir: &Path,
    out: &Path,
    seed: Option<u64>,
    model: RegionModel,
) -> Result<(), CliError> {
    output::ensure_out_dir(out)?;
    let (placement, sites) = match &config.sites {
        SitesSpec::Random(_) => (
            Placement::UniformInRegion,
            // Placeholder sites; overwritten per realization.
            [
                TransmitterSite::new(1.0, 0.0),
                TransmitterSite::new(1.0, 0.0),
            ],
        ),
        SitesSpec::Fixed(_) => (Placement::Scenario, config.fixed_sites()?),
    };
    let scenario = config.scenario(sites, config_dir)?;
    let controls = config.controls(seed)?;
    let run = simulate_random_network(&scenario, placement, &controls, model)?;

    output::write_curve(
        out,
        "pooled_empirical.csv",
        run.pooled_empirical.steps().iter().copied(),
    )?;
    output::write_curve(
        out,
        "pooled_correlated.csv",
        run.pooled_correlated.steps().iter().copied(),
    )?;
    output::write_curve(
        out,
        "pooled_independent.csv",
        run.pooled_independent.steps().iter().copied(),
    )?;
    let rhos: Vec<f64> = run
        .realizations
        .iter()
        .filter_map(|r| r.stats.map(|s| s.rho))
        .collect();
    let mean_rho = if rhos.is_empty() {
        serde_json::Value::Null
    } else {
        json!(rhos.iter().sum::<f64>() / rhos.len() as f64)
    };
    output::write_summary(
        out,
        &json!({
            "command": "random-network",
            "region_model": model_name(model),
            "realizations": controls.realizations(),
            "trials_per_realization": controls.trials(),
            "seed": controls.master_seed(),
            "placement": match placement {
                Placement::UniformInRegion => "uniform",
                Placement::Scenario => "fixed",
            },
            "mean_rho": mean_rho,
            "ks_pooled_correlated": run.pooled_empirical.ks_distance(&run.pooled_correlated),
            "ks_pooled_independent": run.pooled_empirical.ks_distance(&run.pooled_independent),
            "pooled_gap": run.pooled_correlated.sup_gap(&run.pooled_independent),
            "curves": ["pooled_empirical.csv", "pooled_correlated.csv", "pooled_independent.csv"],
        }),
    )?;
    Ok(())
}
