use std::fmt;

use super::classify::classify;
use super::radial::{radial_search, SearchMode};
use crate::error::{Error, Result, Witness};
use crate::integrand::Integrand;
use crate::sphere_geometry::{circle_grid, Chart, Icosphere, SpherePoint};

/// Below this the second-difference statistic is treated as zero.
pub const NEGLIGIBLE_JUMP: f64 = 1e-9;
/// A corner must keep the statistic above this at every level.
pub const CORNER_FLOOR: f64 = 0.01;
/// Successive ratios below this count as shrinking with the step.
pub const SHRINK_RATIO: f64 = 0.75;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Trend {
    /// Statistic is zero to working precision at every level.
    Negligible,
    /// Statistic shrinks roughly in proportion to the grid step.
    Decreasing,
    /// Statistic settles at a positive constant: a gradient jump.
    Stabilized,
    Inconclusive,
}

#[derive(Clone, Debug)]
pub struct ProbeLevel {
    pub samples: usize,
    pub step: f64,
    /// max |δ(θ + h) − 2δ(θ) + δ(θ − h)| / h over the grid.
    pub jump: f64,
    pub location: SpherePoint,
}

#[derive(Clone, Debug)]
pub struct SmoothnessProbe {
    pub levels: Vec<ProbeLevel>,
    pub ratios: Vec<f64>,
    pub trend: Trend,
    pub strictly_convex: bool,
}

impl SmoothnessProbe {
    pub fn max_gradient_jump(&self) -> f64 {
        self.levels.last().map_or(0.0, |l| l.jump)
    }

    /// Smooth dual exactly for strictly convex input.
    pub fn consistent(&self) -> bool {
        if self.strictly_convex {
            matches!(self.trend, Trend::Negligible | Trend::Decreasing)
        } else {
            self.trend == Trend::Stabilized
        }
    }
}

impl fmt::Display for SmoothnessProbe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.levels {
            writeln!(
                f,
                "  samples {:>6}  step {:.3e}  jump {:.6e}  at {}",
                l.samples,
                l.step,
                l.jump,
                Witness(l.location.coords().as_slice().to_vec())
            )?;
        }
        let verdict = match self.trend {
            Trend::Negligible => "dual C¹: jump negligible".to_string(),
            Trend::Decreasing => "dual C¹: jump shrinks with the step".to_string(),
            Trend::Stabilized => format!("dual not C¹: jump {:.2}", self.max_gradient_jump()),
            Trend::Inconclusive => "inconclusive refinement trend".to_string(),
        };
        write!(f, "  {verdict}")
    }
}

fn trend(levels: &[ProbeLevel]) -> (Vec<f64>, Trend) {
    let ratios: Vec<f64> = levels.windows(2).map(|w| w[1].jump / w[0].jump.max(1e-300)).collect();
    let t = if levels.iter().all(|l| l.jump < NEGLIGIBLE_JUMP) {
        Trend::Negligible
    } else if ratios.iter().all(|&r| r < SHRINK_RATIO) {
        Trend::Decreasing
    } else if ratios.iter().all(|&r| (SHRINK_RATIO..1.0 / SHRINK_RATIO).contains(&r))
        && levels.iter().all(|l| l.jump > CORNER_FLOOR)
    {
        Trend::Stabilized
    } else {
        Trend::Inconclusive
    };
    (ratios, t)
}

/// Second-difference gradient-jump statistic of the dual at three
/// resolutions: 2¹⁰, 2¹¹, 2¹² angles for n = 1 and icosphere levels 2–4 for
/// n = 2.
pub fn dual_smoothness_probe(g: &Integrand) -> Result<SmoothnessProbe> {
    let report = classify(g);
    if !report.is_convex_integrand {
        return Err(Error::NotConvex {
            witness: Witness(report.witness.coords().as_slice().to_vec()),
            margin: report.margin,
        });
    }
    let delta = |theta: &SpherePoint| 1.0 / radial_search(g, &theta.antipode(), SearchMode::Local).radius;
    let mut levels = Vec::new();
    if g.dim() == 1 {
        for count in [1usize << 10, 1 << 11, 1 << 12] {
            let grid = circle_grid(count);
            let d: Vec<f64> = grid.iter().map(&delta).collect();
            let h = std::f64::consts::TAU / count as f64;
            let mut best = (0.0, 0);
            for k in 0..count {
                let s = (d[(k + 1) % count] - 2.0 * d[k] + d[(k + count - 1) % count]).abs() / h;
                if s > best.0 {
                    best = (s, k);
                }
            }
            levels.push(ProbeLevel {
                samples: count,
                step: h,
                jump: best.0,
                location: grid[best.1],
            });
        }
    } else {
        for level in [2usize, 3, 4] {
            let ico = Icosphere::cached(level);
            let h = ico.spacing;
            let mut best = (0.0, 0);
            for (k, v) in ico.vertices.iter().enumerate() {
                let chart = Chart::oriented(v);
                let d0 = delta(v);
                for i in 0..2 {
                    let mut a = [0.0; 2];
                    a[i] = h;
                    let dp = delta(&chart.exp(&a));
                    a[i] = -h;
                    let dm = delta(&chart.exp(&a));
                    let s = (dp - 2.0 * d0 + dm).abs() / h;
                    if s > best.0 {
                        best = (s, k);
                    }
                }
            }
            levels.push(ProbeLevel {
                samples: ico.len(),
                step: h,
                jump: best.0,
                location: ico.vertices[best.1],
            });
        }
    }
    let (ratios, trend) = trend(&levels);
    Ok(SmoothnessProbe {
        levels,
        ratios,
        trend,
        strictly_convex: report.is_strictly_convex,
    })
}
