//! The `constants`, `bound`, `landau` and `table` subcommands.

use std::f64::consts::PI;

use alpha_harmonic::kernel::{c_n_alpha, BallPoint, ProblemParams, UnitDirection};
use alpha_harmonic::landau::{big_g, g_fn, landau_radius, n_star, psi};
use alpha_harmonic::poisson::{lp_norm, poisson_jacobian, BoundaryData};
use alpha_harmonic::sharp_bounds::infinity::c_infty_direction_beta;
use alpha_harmonic::sharp_bounds::{
    c_infty_sup, classify_pair, i_bruteforce_beta, j_term, l1_coefficient, lp_coefficient_in, sup_i_closed_in, ExponentPair,
};
use alpha_harmonic::sphere::SphereRule;
use anyhow::Result;

use crate::config::Number;
use crate::output::{Cell, Table};

/// Everything the subcommands need, parsed.
pub struct Run {
    pub params: ProblemParams<f64>,
    pub alpha: Number,
    pub pairs: Vec<ExponentPair<f64>>,
    pub ms: Vec<f64>,
    pub xs: Vec<f64>,
    pub dir: UnitDirection<f64>,
    pub rule: SphereRule,
    pub tol: f64,
}

impl Run {
    fn point(&self, t: f64) -> Result<BallPoint<f64>> {
        Ok(BallPoint::new(self.dir.coords().iter().map(|c| c * t).collect())?)
    }

    fn m(&self) -> f64 {
        self.ms[0]
    }
}

fn beta_sweep(points: usize, mut f: impl FnMut(f64) -> Result<f64>) -> Result<f64> {
    let mut best = f64::MIN;
    for k in 0..points {
        best = best.max(f(PI * k as f64 / (points - 1).max(1) as f64)?);
    }
    Ok(best)
}

/// One row per `(q, |x|)`: regime, the closed-form pieces and the gradient coefficient,
/// optionally checked against a β-sweep.
pub fn constants(run: &Run, brute: Option<usize>) -> Result<Table> {
    let mut table = Table::new(&[
        "n",
        "alpha",
        "p",
        "q",
        "x",
        "regime",
        "c_n_alpha",
        "n_star",
        "sup_i",
        "j_term",
        "coefficient",
        "coefficient_lower",
        "brute",
        "gap",
        "agrees",
    ]);
    let p = &run.params;
    let c = c_n_alpha(p);
    let nstar = n_star(p, run.m())?;
    for pair in &run.pairs {
        let q = pair.q();
        for &t in &run.xs {
            let x = run.point(t)?;
            let (regime, sup_i, jt, coef, lower, sweep) = if q.is_infinite() {
                let sup = c_infty_sup(p, t)?;
                let sweep = brute.map(|k| beta_sweep(k, |b| Ok(c_infty_direction_beta(p, t, b)?))).transpose()?;
                ("p=1".to_owned(), None, None, l1_coefficient(p, t)?, sup.lower, sweep.map(|s| (s, sup.contains(s, run.tol))))
            } else {
                let tag = classify_pair(p, pair, run.alpha.exact)?;
                let (sup, _) = sup_i_closed_in(p, q, t, tag)?;
                let coef = lp_coefficient_in(p, pair, &x, tag)?;
                let sweep = brute.map(|k| beta_sweep(k, |b| Ok(i_bruteforce_beta(p, q, t, b, &run.rule)?))).transpose()?;
                let agree = sweep.map(|s| (s, (s - sup.value()).abs() <= run.tol * sup.value()));
                (tag.to_string(), Some(sup.value()), Some(j_term(p, q, t)?), coef, coef, agree)
            };
            let reference = sup_i.unwrap_or(coef);
            table.push(vec![
                p.n().into(),
                p.alpha().into(),
                pair.p().into(),
                q.into(),
                t.into(),
                regime.into(),
                c.into(),
                nstar.into(),
                sup_i.into(),
                jt.into(),
                coef.into(),
                lower.into(),
                sweep.map(|s| s.0).into(),
                sweep.map(|s| (s.0 - reference).abs() / reference).into(),
                sweep.map(|s| s.1).into(),
            ]);
        }
    }
    Ok(table)
}

/// One row per `(p, |x|, component)`: the certified bound and the measured gradient.
pub fn bound(run: &Run, phi: &BoundaryData<f64>) -> Result<Table> {
    let mut table = Table::new(&[
        "p", "q", "x", "component", "coefficient", "norm", "bound", "measured", "ratio", "within_bound",
    ]);
    let p = &run.params;
    let comps = (0..phi.value_dim()).map(|i| phi.component(i)).collect::<Result<Vec<_>, _>>()?;
    for &t in &run.xs {
        let x = run.point(t)?;
        let jac = poisson_jacobian(phi, p, &x, &run.rule)?;
        for pair in &run.pairs {
            let coef = if pair.q().is_infinite() {
                l1_coefficient(p, t)?
            } else {
                lp_coefficient_in(p, pair, &x, classify_pair(p, pair, run.alpha.exact)?)?
            };
            for (i, comp) in comps.iter().enumerate() {
                let norm = lp_norm(comp, pair.p(), &run.rule)?;
                let measured = jac.row(i).iter().map(|v| v * v).sum::<f64>().sqrt();
                let bound = coef * norm;
                let ratio = if bound > 0.0 { measured / bound } else { 0.0 };
                table.push(vec![
                    pair.p().into(),
                    pair.q().into(),
                    t.into(),
                    i.into(),
                    coef.into(),
                    norm.into(),
                    bound.into(),
                    measured.into(),
                    ratio.into(),
                    (ratio <= 1.0 + run.tol).into(),
                ]);
            }
        }
    }
    Ok(table)
}

/// One row per `M`.
pub fn landau(run: &Run) -> Result<Table> {
    let mut table = Table::new(&[
        "n",
        "alpha",
        "M",
        "r0",
        "R0",
        "psi_residual",
        "equation_residual",
        "bracket_lo",
        "bracket_hi",
        "G_r0",
    ]);
    let p = &run.params;
    for &m in &run.ms {
        let res = landau_radius(p, m)?;
        table.push(vec![
            p.n().into(),
            p.alpha().into(),
            m.into(),
            res.r0.into(),
            res.big_r0.into(),
            res.psi_residual.into(),
            res.equation_residual.into(),
            res.bracket.0.into(),
            res.bracket.1.into(),
            big_g(p, res.r0)?.into(),
        ]);
    }
    Ok(table)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum TableKind {
    /// Gradient coefficient against `|x|` for each exponent.
    Coefficient,
    /// `g`, `G` and `ψ` against `r`.
    Landau,
}

/// Plottable series on `k / points`, `k = 0, …, points - 1`.
pub fn table(run: &Run, kind: TableKind, points: usize) -> Result<Table> {
    let p = &run.params;
    let grid = (0..points).map(|k| k as f64 / points as f64);
    match kind {
        TableKind::Coefficient => {
            let mut table = Table::new(&["q", "x", "coefficient"]);
            for pair in &run.pairs {
                let tag = if pair.q().is_finite() { Some(classify_pair(p, pair, run.alpha.exact)?) } else { None };
                for t in grid.clone() {
                    let coef = match tag {
                        Some(tag) => lp_coefficient_in(p, pair, &run.point(t)?, tag)?,
                        None => l1_coefficient(p, t)?,
                    };
                    table.push(vec![pair.q().into(), t.into(), coef.into()]);
                }
            }
            Ok(table)
        }
        TableKind::Landau => {
            let mut table = Table::new(&["r", "g", "G", "psi"]);
            for r in grid {
                table.push(vec![r.into(), g_fn(p, r)?.into(), big_g(p, r)?.into(), Cell::Num(psi(p, run.m(), r)?)]);
            }
            Ok(table)
        }
    }
}
