//! Parameter sweeps over the named state families and their CSV output.

use std::io::Write;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{partial_trace, DensityMatrix};
use crate::measures::{concurrence, entanglement_entropy, irreality, nonlocality, Measurement};
use crate::observables::{ProjectiveBasis, QubitBasisParam};
use crate::optimize::{nonlocality_bounds, OptimizerConfig};
use crate::report::format_sig;
use crate::states::{self, AlphaParam, SlitParam, WernerParam};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Werner,
    Alpha,
    Slit,
}

impl Family {
    pub fn parse(name: &str) -> Result<Family> {
        match name {
            "werner" => Ok(Family::Werner),
            "alpha" => Ok(Family::Alpha),
            "slit" => Ok(Family::Slit),
            _ => Err(Error::Parse(format!("unknown family `{name}`"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Werner => "werner",
            Family::Alpha => "alpha",
            Family::Slit => "slit",
        }
    }

    pub fn state(self, param: f64) -> Result<DensityMatrix> {
        match self {
            Family::Werner => Ok(states::werner(WernerParam::new(param)?)),
            Family::Alpha => states::alpha_state(AlphaParam(param)),
            Family::Slit => Ok(states::floating_slit(SlitParam::new(param)?)),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub family: Family,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    pub optimizer: OptimizerConfig,
    /// Recorded with the sweep; the default optimizer is deterministic and draws nothing.
    pub seed: u64,
}

impl SweepSpec {
    /// 51 points over `[0, 1]`.
    pub fn default_for(family: Family) -> Self {
        SweepSpec {
            family,
            start: 0.0,
            stop: 1.0,
            points: 51,
            optimizer: OptimizerConfig::default(),
            seed: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.start.is_nan() || self.stop.is_nan() || self.start > self.stop {
            return Err(Error::Parse(format!(
                "sweep start {} exceeds stop {}",
                self.start, self.stop
            )));
        }
        if self.points < 2 {
            return Err(Error::Parse("a sweep needs at least 2 points".into()));
        }
        self.optimizer.validate()
    }

    /// Ascending grid; the last point is exactly `stop`.
    pub fn params(&self) -> Vec<f64> {
        let n = self.points - 1;
        (0..=n)
            .map(|i| {
                if i == n {
                    self.stop
                } else {
                    self.start + (self.stop - self.start) * i as f64 / n as f64
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub param: f64,
    pub n_min: f64,
    pub d12: f64,
    pub concurrence: f64,
    /// `N(sigma_z, sigma_z)`.
    pub n_zz: f64,
    pub argmin: Vec<(usize, QubitBasisParam)>,
}

pub const SWEEP_CSV_HEADER: &str = "param,n_min,d12,concurrence,n_zz,argmin_params";

fn zz_pair() -> (Measurement, Measurement) {
    let z = ProjectiveBasis::computational(2);
    (Measurement::new(z.clone(), 0), Measurement::new(z, 1))
}

pub fn sweep_row(family: Family, param: f64, cfg: &OptimizerConfig) -> Result<SweepRow> {
    let rho = family.state(param)?;
    let bounds = nonlocality_bounds(&rho, cfg)?;
    let (za, zb) = zz_pair();
    Ok(SweepRow {
        param,
        n_min: bounds.n_min.value,
        d12: bounds.global_discord.value,
        concurrence: concurrence(&rho)?,
        n_zz: nonlocality(&za, &zb, &rho)?,
        argmin: bounds.n_min.argmin,
    })
}

/// Rows in ascending parameter order regardless of evaluation order.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    spec.params()
        .par_iter()
        .map(|&p| sweep_row(spec.family, p, &spec.optimizer))
        .collect()
}

fn argmin_field(argmin: &[(usize, QubitBasisParam)]) -> String {
    argmin
        .iter()
        .map(|(s, p)| format!("theta{s}={} phi{s}={}", format_sig(p.theta), format_sig(p.phi)))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn write_sweep_csv(rows: &[SweepRow], out: &mut impl Write) -> std::io::Result<()> {
    writeln!(out, "{SWEEP_CSV_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            format_sig(r.param),
            format_sig(r.n_min),
            format_sig(r.d12),
            format_sig(r.concurrence),
            format_sig(r.n_zz),
            argmin_field(&r.argmin)
        )?;
    }
    Ok(())
}

/// Gnuplot script drawing `N_min` (thick black), `D_12` (blue) and
/// concurrence (dashed red) from a sweep CSV.
pub fn plot_script(family: Family, csv_path: &str) -> String {
    let xlabel = match family {
        Family::Werner => "f",
        Family::Alpha => "alpha",
        Family::Slit => "x",
    };
    format!(
        "# generated by irreality sweep; render with `gnuplot <this file>`\n\
         set datafile separator ','\n\
         set key autotitle columnhead top left\n\
         set terminal pngcairo size 640,480\n\
         set output '{csv_path}.png'\n\
         set xlabel '{xlabel}'\n\
         set ylabel 'nats'\n\
         set xrange [*:*]\n\
         set yrange [0:*]\n\
         plot '{csv_path}' using 1:2 with lines lw 4 lc rgb 'black' title 'N_min', \\\n\
         \x20    '' using 1:3 with lines lw 2 lc rgb 'blue' title 'D_12', \\\n\
         \x20    '' using 1:4 with lines lw 2 dt 2 lc rgb 'red' title 'E (concurrence)'\n"
    )
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlitRow {
    pub x: f64,
    /// Irreality of the particle velocity given the particle's reduced state.
    pub local_irreality: f64,
    /// Irreality of the particle velocity given the joint state.
    pub global_irreality: f64,
    pub entanglement: f64,
}

pub const SLIT_CSV_HEADER: &str = "x,local_irreality,global_irreality,entanglement";

pub fn slit_row(x: f64) -> Result<SlitRow> {
    let psi = states::floating_slit(SlitParam::new(x)?);
    let velocity = ProjectiveBasis::computational(2);
    let particle = partial_trace(&psi, &[0])?;
    Ok(SlitRow {
        x,
        local_irreality: irreality(&velocity, 0, &particle)?,
        global_irreality: irreality(&velocity, 0, &psi)?,
        entanglement: entanglement_entropy(&psi)?,
    })
}

/// `points` evenly spaced overlaps over `[0, 1]`.
pub fn slit_curve(points: usize) -> Result<Vec<SlitRow>> {
    if points < 2 {
        return Err(Error::Parse("the slit curve needs at least 2 points".into()));
    }
    let n = points - 1;
    (0..=n)
        .map(|i| slit_row(if i == n { 1.0 } else { i as f64 / n as f64 }))
        .collect()
}

pub fn write_slit_csv(rows: &[SlitRow], out: &mut impl Write) -> std::io::Result<()> {
    writeln!(out, "{SLIT_CSV_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{}",
            format_sig(r.x),
            format_sig(r.local_irreality),
            format_sig(r.global_irreality),
            format_sig(r.entanglement)
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::LN_2;

    fn coarse() -> OptimizerConfig {
        OptimizerConfig {
            grid_points_theta: 7,
            grid_points_phi: 6,
            ..OptimizerConfig::default()
        }
    }

    #[test]
    fn spec_validation_and_grid() {
        let mut spec = SweepSpec::default_for(Family::Werner);
        assert!(spec.validate().is_ok());
        let p = spec.params();
        assert_eq!(p.len(), 51);
        assert_eq!(p[0], 0.0);
        assert_eq!(p[50], 1.0);
        assert!(p.windows(2).all(|w| w[0] < w[1]));
        spec.points = 1;
        assert!(spec.validate().is_err());
        spec.points = 3;
        spec.start = 0.8;
        spec.stop = 0.2;
        assert!(spec.validate().is_err());
        assert!(Family::parse("ghz").is_err());
    }

    #[test]
    fn sweep_csv_is_deterministic_and_ordered() {
        let spec = SweepSpec {
            points: 4,
            optimizer: coarse(),
            ..SweepSpec::default_for(Family::Alpha)
        };
        let render = || {
            let mut buf = Vec::new();
            write_sweep_csv(&run_sweep(&spec).unwrap(), &mut buf).unwrap();
            String::from_utf8(buf).unwrap()
        };
        let a = render();
        assert_eq!(a, render());
        let lines: Vec<&str> = a.lines().collect();
        assert_eq!(lines[0], SWEEP_CSV_HEADER);
        assert_eq!(lines.len(), 5);
        assert!(lines[1..].iter().all(|l| l.split(',').count() == 6));
    }

    #[test]
    fn werner_row_quarter() {
        let row = sweep_row(Family::Werner, 0.25, &coarse()).unwrap();
        assert_eq!(row.concurrence, 0.0);
        assert!(row.n_zz > 1e-3);
        assert!(row.n_min <= row.d12 + 1e-6);
    }

    #[test]
    fn slit_rows() {
        let rows = slit_curve(21).unwrap();
        assert!(rows[0].local_irreality.abs() <= 1e-12);
        assert!((rows[20].local_irreality - LN_2).abs() <= 1e-10);
        assert!(rows[20].entanglement.abs() <= 1e-9);
        assert!(rows.windows(2).all(|w| w[1].local_irreality > w[0].local_irreality));
        assert!(rows.iter().all(|r| (r.global_irreality - LN_2).abs() <= 1e-10));
        assert!(slit_curve(1).is_err());
    }

    #[test]
    fn plot_script_mentions_columns() {
        let s = plot_script(Family::Werner, "werner.csv");
        assert!(s.contains("'werner.csv'") && s.contains("using 1:3") && s.contains("dt 2"));
    }
}
