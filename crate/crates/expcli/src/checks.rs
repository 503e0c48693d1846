//! Quick invariant suites behind `codil checks`.

use codil_core::operators::{deriv2_assemble, norm2, operator_norm_sq, DiagonalOperator, LinearOperator};
use codil_core::orthopoly::{
    eval_codilated_via_representation, eval_monic, find_zeros, mu_recursive, residual_eval,
    CoDilation, RecurrenceScheme, ResidualKind, UltrasphericalParams,
};
use codil_core::solvers::{oracle_check, AdaptiveIteration, OraclePlan};
use codil_core::Result;

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

fn mu_consistency() -> Result<CheckResult> {
    let mut worst: f64 = 0.0;
    for nu in [0.75, 1.0, 1.5, 2.0, 3.0] {
        let params = UltrasphericalParams::new(nu)?;
        let scheme = RecurrenceScheme::ultraspherical(nu)?;
        for lambda in [-0.5, 0.0, 0.5, 1.0, 1.5, 1.9 * nu] {
            let d = Some(CoDilation::first(lambda)?);
            let sym = mu_recursive(&scheme, d, ResidualKind::Symmetric, 500)?;
            // λ = 1.9ν and ν = 0.75 with λ = 1.5 = 2ν sit at or near the critical dilation
            for (n, mu) in params.mu_sequence_unchecked(lambda).take(498).enumerate() {
                worst = worst.max(rel(mu, sym[n + 1]));
            }
            let asym = mu_recursive(&scheme, d, ResidualKind::Asymmetric, 500)?;
            for (n, mu) in params.amu_sequence_unchecked(lambda).take(500).enumerate() {
                worst = worst.max(rel(mu, asym[n]));
            }
        }
    }
    Ok(CheckResult {
        name: "mu closed form vs recursion",
        passed: worst <= 1e-12,
        detail: format!("max relative deviation {worst:.2e} (n <= 500)"),
    })
}

fn representation() -> Result<CheckResult> {
    let mut worst: f64 = 0.0;
    for nu in [0.75, 1.0, 2.0] {
        let s = RecurrenceScheme::ultraspherical(nu)?;
        for m in 1..=3 {
            for lambda in [-1.0, 0.5, 1.5] {
                let d = CoDilation::new(m, lambda)?;
                for n in 0..=60 {
                    for k in 0..=20 {
                        let x = -1.0 + 0.1 * k as f64;
                        let a = eval_monic(&s, Some(d), n, x);
                        let b = eval_codilated_via_representation(&s, d, n, x)?;
                        let scale = eval_monic(&s, None, n, 1.0).abs();
                        worst = worst.max((a - b).abs() / scale);
                    }
                }
            }
        }
    }
    Ok(CheckResult {
        name: "co-dilated recurrence vs numerator representation",
        passed: worst <= 1e-11,
        detail: format!("max deviation relative to P_n(1): {worst:.2e}"),
    })
}

fn bound() -> Result<CheckResult> {
    let mut worst = f64::NEG_INFINITY;
    for nu in [0.75, 1.0, 1.5, 2.0] {
        let params = UltrasphericalParams::new(nu)?;
        let s = RecurrenceScheme::ultraspherical(nu)?;
        for lambda in [-0.5, 0.5, 1.0, 1.5 * nu, 1.9 * nu] {
            let b = params.sup_bound_codilated(lambda)?;
            let d = CoDilation::first(lambda)?;
            for n in [5, 20, 60] {
                for k in 0..=400 {
                    let y = k as f64 / 400.0;
                    let r = residual_eval(&s, Some(d), ResidualKind::Symmetric, n, y)?;
                    worst = worst.max(r.abs() - b);
                }
            }
        }
    }
    Ok(CheckResult {
        name: "uniform bound of co-dilated residuals",
        passed: worst <= 1e-9,
        detail: format!("max excess over bound {worst:.2e}"),
    })
}

fn zero_monotonicity() -> Result<CheckResult> {
    let s = RecurrenceScheme::ultraspherical(1.0)?;
    let mut ok = true;
    for n in [10, 40, 100] {
        let mut last = f64::INFINITY;
        for lambda in [0.0, 0.5, 1.0, 1.5, 1.9, 1.99] {
            let z = find_zeros(&s, CoDilation::first(lambda).ok(), ResidualKind::Asymmetric, n);
            let smallest = z.smallest().unwrap_or(f64::NAN);
            ok &= z.zeros.len() == n && smallest < last;
            last = smallest;
        }
    }
    Ok(CheckResult {
        name: "smallest asymmetric residual zero decreases in lambda",
        passed: ok,
        detail: "nu = 1, n in {10, 40, 100}".into(),
    })
}

fn oracle() -> Result<CheckResult> {
    let a = DiagonalOperator::new((1..=12).map(|k| (k as f64 / 12.0).sqrt()).collect())?;
    let f: Vec<f64> = (0..12).map(|i| 1.0 - 0.1 * i as f64).collect();
    let ultra = RecurrenceScheme::ultraspherical(1.5)?;
    let plans = [
        OraclePlan::Landweber,
        OraclePlan::General {
            scheme: RecurrenceScheme::chebyshev_u(),
            dilation: None,
        },
        OraclePlan::General {
            scheme: ultra.clone(),
            dilation: CoDilation::first(1.5).ok(),
        },
        OraclePlan::CoDilatedUltraspherical { nu: 1.5, lambda: 2.0 },
        OraclePlan::Asymmetric {
            scheme: ultra,
            dilation: CoDilation::first(2.5).ok(),
        },
        OraclePlan::CoDilatedNu { nu: 2.0, lambda: 3.5 },
    ];
    let mut worst: f64 = 0.0;
    for plan in &plans {
        worst = worst.max(oracle_check(&a, &f, plan, 0.9, 50)?);
    }
    Ok(CheckResult {
        name: "solver iterates match residual-polynomial oracle",
        passed: worst <= 1e-10,
        detail: format!("worst relative deviation {worst:.2e} over {} methods", plans.len()),
    })
}

fn adaptive_orthogonality() -> Result<CheckResult> {
    let a = DiagonalOperator::harmonic(100)?;
    let g: Vec<f64> = (0..100).map(|i| 1.0 / (1.0 + (i % 7) as f64)).collect();
    let mut it = AdaptiveIteration::new(&a, &g, 1.0)?;
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let m = it.step()?;
        let scale = norm2(&m.v_min) * norm2(&m.difference);
        if scale > 0.0 {
            let ip: f64 = m.v_min.iter().zip(&m.difference).map(|(a, b)| a * b).sum();
            worst = worst.max(ip.abs() / scale);
        }
    }
    Ok(CheckResult {
        name: "adaptive minimizer orthogonal to residual difference",
        passed: worst <= 1e-10,
        detail: format!("max normalized inner product {worst:.2e}"),
    })
}

fn deriv2_validity() -> Result<CheckResult> {
    let p = deriv2_assemble(50)?;
    let est = operator_norm_sq(&p.matrix, 1e-12, 100_000);
    let target = std::f64::consts::PI.powi(-4);
    let af = p.matrix.forward(&p.f_exact);
    let diff: Vec<f64> = af.iter().zip(&p.g_vector).map(|(a, g)| a - g).collect();
    let consistency = norm2(&diff) / norm2(&p.g_vector);
    let passed = rel(est.value, target) < 0.02 && 96.5 * est.value < 1.0;
    Ok(CheckResult {
        name: "deriv2 spectrum and relaxation",
        passed,
        detail: format!(
            "||A*A|| = {:.6e} (pi^-4 = {target:.6e}), 96.5*||A*A|| = {:.4}, ||A f - g||/||g|| = {consistency:.1e}",
            est.value,
            96.5 * est.value
        ),
    })
}

type Suite = (&'static str, fn() -> Result<CheckResult>);

/// Runs all suites; a suite that errors is reported as failed.
pub fn run_checks() -> Vec<CheckResult> {
    let suites: [Suite; 7] = [
        ("mu closed form vs recursion", mu_consistency),
        ("co-dilated recurrence vs numerator representation", representation),
        ("uniform bound of co-dilated residuals", bound),
        ("smallest asymmetric residual zero decreases in lambda", zero_monotonicity),
        ("solver iterates match residual-polynomial oracle", oracle),
        ("adaptive minimizer orthogonal to residual difference", adaptive_orthogonality),
        ("deriv2 spectrum and relaxation", deriv2_validity),
    ];
    suites
        .iter()
        .map(|(name, f)| {
            f().unwrap_or_else(|e| CheckResult {
                name,
                passed: false,
                detail: format!("error: {e}"),
            })
        })
        .collect()
}
