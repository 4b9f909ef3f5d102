//! Critical points, Morse indices and stability of integrands, and the
//! executable index and stability correspondences between γ and its dual.

use std::fmt;

use crate::error::{Error, Result};
use crate::integrand::{validation_grid, Integrand};
use crate::sphere_geometry::{geodesic_distance, Chart, Icosphere, SpherePoint};
use crate::wulff_duality::{andrews_direction, classify, dual_integrand};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MorseTolerances {
    /// Newton stops once ‖grad‖ is below this.
    pub grad_tol: f64,
    /// Hessian eigenvalues smaller than this in magnitude are degenerate.
    pub degenerate_tol: f64,
    /// Critical values closer than this count as equal.
    pub value_tol: f64,
    /// Pairing radius between γ at θ₀ and δ at −θ₀.
    pub match_tol: f64,
    /// Refined points closer than this are merged.
    pub merge_tol: f64,
    /// Allowed slack in the grid-wide inequalities.
    pub inequality_slack: f64,
    /// Slack below which an inequality counts as an equality.
    pub equality_tol: f64,
    /// Tolerance on γ(θ₀)·δ(−θ₀) = 1.
    pub product_tol: f64,
}

impl Default for MorseTolerances {
    fn default() -> Self {
        MorseTolerances {
            grad_tol: 1e-11,
            degenerate_tol: 1e-6,
            value_tol: 1e-6,
            match_tol: 1e-5,
            merge_tol: 1e-6,
            inequality_slack: 1e-9,
            equality_tol: 1e-7,
            product_tol: 1e-7,
        }
    }
}

impl fmt::Display for MorseTolerances {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "tolerances: grad {:e}, degenerate {:e}, value {:e}, match {:e}",
            self.grad_tol, self.degenerate_tol, self.value_tol, self.match_tol
        )
    }
}

#[derive(Clone, Debug)]
pub struct CriticalPoint {
    pub location: SpherePoint,
    pub value: f64,
    /// Intrinsic Hessian eigenvalues, ascending.
    pub hessian_eigenvalues: Vec<f64>,
    pub index: usize,
    pub degenerate: bool,
    /// ‖grad‖ at `location`.
    pub residual: f64,
}

impl CriticalPoint {
    fn at(g: &Integrand, p: SpherePoint, residual: f64, tol: &MorseTolerances) -> Self {
        let chart = Chart::oriented(&p);
        let l = g.local(&p);
        let ev = chart.restrict(&l.hess).eigenvalues();
        CriticalPoint {
            location: p,
            value: l.value,
            index: ev.iter().filter(|&&e| e < -tol.degenerate_tol).count(),
            degenerate: ev.iter().any(|e| e.abs() < tol.degenerate_tol),
            hessian_eigenvalues: ev,
            residual,
        }
    }

    pub fn csv_header() -> &'static str {
        "location,value,eigenvalues,index,degenerate"
    }

    /// `location` and `eigenvalues` are `;`-joined lists.
    pub fn csv_row(&self) -> String {
        let join = |v: &[f64]| v.iter().map(|x| format!("{x:.12}")).collect::<Vec<_>>().join(";");
        format!(
            "{},{:.15},{},{},{}",
            join(self.location.coords().as_slice()),
            self.value,
            join(&self.hessian_eigenvalues),
            self.index,
            self.degenerate
        )
    }
}

/// A Newton seed that never reached the gradient tolerance.
#[derive(Clone, Debug)]
pub struct SeedFailure {
    pub start: SpherePoint,
    pub reached: SpherePoint,
    pub residual: f64,
}

#[derive(Clone, Debug)]
pub struct CriticalSet {
    /// Sorted by value.
    pub points: Vec<CriticalPoint>,
    pub failures: Vec<SeedFailure>,
    pub seeds: usize,
    /// Degenerate critical points crowd together on the seed grid: the
    /// critical set is not a finite set of points.
    pub non_isolated: bool,
    pub tolerances: MorseTolerances,
}

impl CriticalSet {
    pub fn is_morse(&self) -> bool {
        !self.non_isolated && self.points.iter().all(|p| !p.degenerate)
    }
}

impl fmt::Display for CriticalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.non_isolated {
            writeln!(
                f,
                "non-isolated critical set: not Morse ({} grid points are critical)",
                self.points.len()
            )?;
            return write!(f, "{}", self.tolerances);
        }
        writeln!(
            f,
            "{:>28}  {:>16}  {:>30}  index  degenerate",
            "location", "value", "hessian eigenvalues"
        )?;
        for p in &self.points {
            let loc = crate::error::Witness(p.location.coords().as_slice().to_vec()).to_string();
            let ev: Vec<String> = p.hessian_eigenvalues.iter().map(|e| format!("{e:.6e}")).collect();
            writeln!(
                f,
                "{loc:>28}  {:>16.12}  {:>30}  {:>5}  {}",
                p.value,
                ev.join(" "),
                p.index,
                if p.degenerate { "yes" } else { "no" }
            )?;
        }
        for s in &self.failures {
            let at = crate::error::Witness(s.reached.coords().as_slice().to_vec());
            writeln!(
                f,
                "  seed did not converge: stopped at {at} with |grad| {:.3e}",
                s.residual
            )?;
        }
        write!(f, "{}", self.tolerances)
    }
}

fn seed_grid(n: usize) -> (Vec<SpherePoint>, Vec<Vec<usize>>, f64) {
    if n == 1 {
        let grid = validation_grid(1);
        let m = grid.len();
        let nb = (0..m).map(|i| vec![(i + m - 1) % m, (i + 1) % m]).collect();
        (grid, nb, std::f64::consts::TAU / m as f64)
    } else {
        let ico = Icosphere::cached(crate::integrand::ICO_LEVEL);
        (ico.vertices.clone(), ico.neighbors.clone(), ico.spacing)
    }
}

fn grad_norm(g: &Integrand, p: &SpherePoint) -> f64 {
    g.grad(p).norm()
}

/// Newton on grad = 0 in a chart re-centred at every iterate. Continues past
/// `grad_tol` while the steps still shrink so that degenerate zeros, where
/// convergence is only linear, settle well inside the merge radius.
fn refine(g: &Integrand, start: SpherePoint, tol: &MorseTolerances) -> (SpherePoint, f64) {
    let n = g.dim();
    let mut p = start;
    let mut res = grad_norm(g, &p);
    for _ in 0..200 {
        let chart = Chart::oriented(&p);
        let l = g.local(&p);
        let gc = chart.coords_of(&l.grad);
        let h = chart.restrict(&l.hess);
        let neg: Vec<f64> = gc[..n].iter().map(|x| -x).collect();
        let scale = h.eigenvalues().iter().fold(0.0f64, |m, e| m.max(e.abs()));
        let Some(step) = h
            .solve_shifted(&neg, 0.0)
            .or_else(|| h.solve_shifted(&neg, 1e-12 * scale.max(1.0)))
        else {
            break;
        };
        let mut step = step;
        let len = step[..n].iter().map(|s| s * s).sum::<f64>().sqrt();
        if len > 0.1 {
            for s in step[..n].iter_mut() {
                *s *= 0.1 / len;
            }
        }
        let next = chart.exp(&step[..n]);
        let next_res = grad_norm(g, &next);
        if next_res > 2.0 * res && res < tol.grad_tol {
            break;
        }
        p = next;
        res = next_res;
        if len < 1e-14 || res < 1e-16 * l.value.max(1.0) {
            break;
        }
    }
    (p, res)
}

/// All gradient zeros at grid resolution, refined by Newton.
pub fn find_critical_points(g: &Integrand) -> CriticalSet {
    find_critical_points_with(g, &MorseTolerances::default())
}

pub fn find_critical_points_with(g: &Integrand, tol: &MorseTolerances) -> CriticalSet {
    let (grid, nb, spacing) = seed_grid(g.dim());
    let grads: Vec<f64> = grid.iter().map(|p| grad_norm(g, p)).collect();
    // Near a zero |grad| is at most |Hess| times the distance to it.
    let hess_scale = grid
        .iter()
        .step_by(7)
        .map(|p| {
            let chart = Chart::oriented(p);
            chart
                .restrict(&g.local(p).hess)
                .eigenvalues()
                .iter()
                .fold(0.0f64, |m, e| m.max(e.abs()))
        })
        .fold(0.0f64, f64::max);
    let seed_tol = 4.0 * spacing * hess_scale.max(g.min_value()) + tol.grad_tol;
    let seeds: Vec<usize> = (0..grid.len())
        .filter(|&i| grads[i] < seed_tol && nb[i].iter().all(|&j| grads[i] <= grads[j]))
        .collect();
    let mut points: Vec<CriticalPoint> = Vec::new();
    let mut failures = Vec::new();
    for &i in &seeds {
        let (p, res) = refine(g, grid[i], tol);
        if !(res < tol.grad_tol) {
            failures.push(SeedFailure {
                start: grid[i],
                reached: p,
                residual: res,
            });
            continue;
        }
        if points
            .iter()
            .any(|q| geodesic_distance(&q.location, &p) < tol.merge_tol)
        {
            continue;
        }
        points.push(CriticalPoint::at(g, p, res, tol));
    }
    points.sort_by(|a, b| a.value.total_cmp(&b.value));
    let non_isolated = points.iter().enumerate().any(|(i, a)| {
        a.degenerate
            && points[i + 1..]
                .iter()
                .any(|b| b.degenerate && geodesic_distance(&a.location, &b.location) < 2.5 * spacing)
    });
    CriticalSet {
        points,
        failures,
        seeds: seeds.len(),
        non_isolated,
        tolerances: *tol,
    }
}

#[derive(Clone, Debug)]
pub struct StabilityReport {
    pub critical: CriticalSet,
    pub all_nondegenerate: bool,
    pub values_distinct: bool,
    pub stable: bool,
    /// Smallest gap between two critical values (∞ with fewer than two).
    pub min_value_gap: f64,
}

impl fmt::Display for StabilityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let yn = |b: bool| if b { "yes" } else { "no" };
        writeln!(
            f,
            "stable: {} (non-degenerate: {}, distinct values: {}, min value gap {:.3e})",
            yn(self.stable),
            yn(self.all_nondegenerate),
            yn(self.values_distinct),
            self.min_value_gap
        )?;
        write!(f, "{}", self.critical)
    }
}

pub fn is_stable(g: &Integrand) -> StabilityReport {
    is_stable_with(g, &MorseTolerances::default())
}

pub fn is_stable_with(g: &Integrand, tol: &MorseTolerances) -> StabilityReport {
    stability_of(find_critical_points_with(g, tol))
}

fn stability_of(critical: CriticalSet) -> StabilityReport {
    let tol = critical.tolerances;
    let all_nondegenerate = critical.is_morse() && critical.failures.is_empty();
    let vals: Vec<f64> = critical.points.iter().map(|p| p.value).collect();
    let min_value_gap = vals.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
    let values_distinct = !critical.non_isolated && min_value_gap >= tol.value_tol;
    StabilityReport {
        stable: all_nondegenerate && values_distinct,
        all_nondegenerate,
        values_distinct,
        min_value_gap,
        critical,
    }
}

/// Index and stability transfer of non-degeneracy and value injectivity.
#[derive(Clone, Debug)]
pub struct StabilityDualityReport {
    pub gamma: StabilityReport,
    pub delta: StabilityReport,
    /// Stability verdicts coincide.
    pub agree: bool,
    /// Non-degeneracy verdicts coincide.
    pub nondegenerate_agree: bool,
    /// Injectivity on the critical set coincides; only meaningful (and only
    /// set) when both sides are non-degenerate.
    pub injective_agree: Option<bool>,
}

impl StabilityDualityReport {
    pub fn passed(&self) -> bool {
        self.agree && self.nondegenerate_agree && self.injective_agree != Some(false)
    }
}

impl fmt::Display for StabilityDualityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let yn = |b: bool| if b { "yes" } else { "no" };
        writeln!(
            f,
            "gamma stable: {}, delta stable: {} -> {}",
            yn(self.gamma.stable),
            yn(self.delta.stable),
            if self.agree { "agree" } else { "MISMATCH" }
        )?;
        writeln!(
            f,
            "non-degenerate: gamma {}, delta {}; injective on critical set: {}",
            yn(self.gamma.all_nondegenerate),
            yn(self.delta.all_nondegenerate),
            match self.injective_agree {
                None => "not compared".to_string(),
                Some(b) => if b { "agree" } else { "MISMATCH" }.to_string(),
            }
        )?;
        if !self.passed() {
            writeln!(f, "gamma critical points:\n{}", self.gamma.critical)?;
            writeln!(f, "delta critical points:\n{}", self.delta.critical)?;
        }
        write!(f, "{}", self.gamma.critical.tolerances)
    }
}

fn require_strict(g: &Integrand) -> Result<()> {
    let c = classify(g);
    if !c.is_strictly_convex {
        return Err(Error::NotStrictlyConvex {
            witness: crate::error::Witness(c.curvature_witness.coords().as_slice().to_vec()),
            curvature: c.curvature,
        });
    }
    Ok(())
}

pub fn verify_stability_duality(g: &Integrand) -> Result<StabilityDualityReport> {
    verify_stability_duality_with(g, &MorseTolerances::default())
}

pub fn verify_stability_duality_with(g: &Integrand, tol: &MorseTolerances) -> Result<StabilityDualityReport> {
    require_strict(g)?;
    let delta = dual_integrand(g)?;
    Ok(stability_duality_from(
        is_stable_with(g, tol),
        is_stable_with(&delta, tol),
    ))
}

fn stability_duality_from(gamma: StabilityReport, delta: StabilityReport) -> StabilityDualityReport {
    let injective_agree =
        (gamma.all_nondegenerate && delta.all_nondegenerate).then_some(gamma.values_distinct == delta.values_distinct);
    StabilityDualityReport {
        agree: gamma.stable == delta.stable,
        nondegenerate_agree: gamma.all_nondegenerate == delta.all_nondegenerate,
        injective_agree,
        gamma,
        delta,
    }
}

#[derive(Clone, Debug)]
pub struct CriticalPairing {
    pub gamma: CriticalPoint,
    pub delta: CriticalPoint,
    /// Geodesic distance from the δ point to −θ₀.
    pub distance: f64,
    /// γ(θ₀)·δ(−θ₀).
    pub product: f64,
    pub index_complement: bool,
}

impl CriticalPairing {
    pub fn ok(&self, tol: &MorseTolerances) -> bool {
        self.distance < tol.match_tol && self.index_complement && (self.product - 1.0).abs() < tol.product_tol
    }
}

#[derive(Clone, Debug)]
pub struct PairingReport {
    /// Why the stated hypothesis does not hold, if it does not.
    pub hypothesis_failure: Option<String>,
    pub pairs: Vec<CriticalPairing>,
    pub unmatched_gamma: Vec<CriticalPoint>,
    pub unmatched_delta: Vec<CriticalPoint>,
    pub tolerances: MorseTolerances,
}

impl PairingReport {
    pub fn pairing_ok(&self) -> bool {
        self.unmatched_gamma.is_empty()
            && self.unmatched_delta.is_empty()
            && !self.pairs.is_empty()
            && self.pairs.iter().all(|p| p.ok(&self.tolerances))
    }

    /// Hypothesis holds and the pairing is a bijection with complementary
    /// indices.
    pub fn passed(&self) -> bool {
        self.hypothesis_failure.is_none() && self.pairing_ok()
    }
}

impl fmt::Display for PairingReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(why) = &self.hypothesis_failure {
            writeln!(f, "hypothesis failed: {why}")?;
            if !self.pairs.is_empty() {
                writeln!(f, "pairing reported for information only:")?;
            }
        }
        for p in &self.pairs {
            let at = crate::error::Witness(p.gamma.location.coords().as_slice().to_vec());
            writeln!(
                f,
                "  gamma at {at} value {:.10} index {} <-> delta index {} at distance {:.2e}, product {:.12} {}",
                p.gamma.value,
                p.gamma.index,
                p.delta.index,
                p.distance,
                p.product,
                if p.ok(&self.tolerances) { "ok" } else { "FAIL" }
            )?;
        }
        for q in &self.unmatched_gamma {
            writeln!(
                f,
                "  unmatched gamma point {}",
                crate::error::Witness(q.location.coords().as_slice().to_vec())
            )?;
        }
        for q in &self.unmatched_delta {
            writeln!(
                f,
                "  unmatched delta point {}",
                crate::error::Witness(q.location.coords().as_slice().to_vec())
            )?;
        }
        write!(f, "{}", self.tolerances)
    }
}

pub fn verify_critical_pairing(g: &Integrand) -> Result<PairingReport> {
    verify_critical_pairing_with(g, &MorseTolerances::default())
}

/// Pairs each critical point θ₀ of γ with the critical point of δ at −θ₀.
pub fn verify_critical_pairing_with(g: &Integrand, tol: &MorseTolerances) -> Result<PairingReport> {
    let c = classify(g);
    let empty = |why: String| PairingReport {
        hypothesis_failure: Some(why),
        pairs: Vec::new(),
        unmatched_gamma: Vec::new(),
        unmatched_delta: Vec::new(),
        tolerances: *tol,
    };
    if !c.is_strictly_convex {
        return Ok(empty(format!(
            "not strictly convex (min curvature {:.3e})",
            c.curvature
        )));
    }
    let gs = is_stable_with(g, tol);
    if gs.critical.non_isolated {
        return Ok(empty("not stable: critical set is not isolated".into()));
    }
    let hypothesis_failure = (!gs.stable).then(|| {
        if gs.all_nondegenerate {
            format!("not stable: critical values repeat (gap {:.3e})", gs.min_value_gap)
        } else {
            "not stable: degenerate critical point".to_string()
        }
    });
    let delta = dual_integrand(g)?;
    let ds = find_critical_points_with(&delta, tol);
    let n = g.dim();
    let mut used = vec![false; ds.points.len()];
    let mut pairs = Vec::new();
    let mut unmatched_gamma = Vec::new();
    for p in &gs.critical.points {
        let target = p.location.antipode();
        let near: Vec<usize> = (0..ds.points.len())
            .filter(|&j| geodesic_distance(&ds.points[j].location, &target) < tol.match_tol)
            .collect();
        match near.as_slice() {
            [j] if !used[*j] => {
                used[*j] = true;
                let q = &ds.points[*j];
                pairs.push(CriticalPairing {
                    gamma: p.clone(),
                    delta: q.clone(),
                    distance: geodesic_distance(&q.location, &target),
                    product: p.value * delta.eval(&target),
                    index_complement: !p.degenerate && !q.degenerate && q.index == n - p.index,
                });
            }
            _ => unmatched_gamma.push(p.clone()),
        }
    }
    let unmatched_delta = ds
        .points
        .iter()
        .zip(&used)
        .filter(|(_, &u)| !u)
        .map(|(q, _)| q.clone())
        .collect();
    Ok(PairingReport {
        hypothesis_failure,
        pairs,
        unmatched_gamma,
        unmatched_delta,
        tolerances: *tol,
    })
}

#[derive(Clone, Debug)]
pub struct InequalityCheck {
    pub name: &'static str,
    /// Most negative slack over the grid (should be ≥ −slack tolerance).
    pub min_slack: f64,
    pub violations: Vec<SpherePoint>,
    /// Grid points with near-zero slack that are not close to a critical point.
    pub stray_equalities: Vec<SpherePoint>,
    /// Largest slack at a detected critical point.
    pub slack_at_critical: f64,
}

impl InequalityCheck {
    pub fn passed(&self, tol: &MorseTolerances) -> bool {
        self.violations.is_empty() && self.stray_equalities.is_empty() && self.slack_at_critical < tol.equality_tol
    }
}

#[derive(Clone, Debug)]
pub struct InequalityReport {
    pub checks: Vec<InequalityCheck>,
    pub critical: CriticalSet,
    pub tolerances: MorseTolerances,
}

impl InequalityReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed(&self.tolerances))
    }
}

impl fmt::Display for InequalityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(
                f,
                "  {:<28} min slack {:+.3e}, {} violations, {} stray equalities, slack at critical points {:.3e} {}",
                c.name,
                c.min_slack,
                c.violations.len(),
                c.stray_equalities.len(),
                c.slack_at_critical,
                if c.passed(&self.tolerances) { "ok" } else { "FAIL" }
            )?;
        }
        write!(
            f,
            "  slack {:e}, equality {:e}",
            self.tolerances.inequality_slack, self.tolerances.equality_tol
        )
    }
}

pub fn verify_inequalities(g: &Integrand) -> Result<InequalityReport> {
    verify_inequalities_with(g, &MorseTolerances::default())
}

/// γ(θ) ≥ 1/δ(−θ), δ(θ) ≥ 1/γ(−θ) and 1/δ(−h(θ)) ≥ γ(θ) with h(θ) the
/// direction of the Andrews point of θ; equality only at critical points.
pub fn verify_inequalities_with(g: &Integrand, tol: &MorseTolerances) -> Result<InequalityReport> {
    require_strict(g)?;
    let delta = dual_integrand(g)?;
    let critical = find_critical_points_with(g, tol);
    let (grid, nb, spacing) = seed_grid(g.dim());
    let radius = 5.0 * spacing;
    type Slack = Box<dyn Fn(&SpherePoint) -> f64>;
    let (g1, d1) = (g.clone(), delta.clone());
    let (g2, d2) = (g.clone(), delta.clone());
    let (g3, d3) = (g.clone(), delta.clone());
    // The second inequality is the first with the roles of γ and δ swapped:
    // its equality points are the antipodes of the critical points of γ.
    let checks: [(&'static str, Slack, bool); 3] = [
        (
            "gamma(t) >= 1/delta(-t)",
            Box::new(move |t| g1.eval(t) - 1.0 / d1.eval(&t.antipode())),
            false,
        ),
        (
            "delta(t) >= 1/gamma(-t)",
            Box::new(move |t| d2.eval(t) - 1.0 / g2.eval(&t.antipode())),
            true,
        ),
        (
            "1/delta(-h(t)) >= gamma(t)",
            Box::new(move |t| 1.0 / d3.eval(&andrews_direction(&g3, t).antipode()) - g3.eval(t)),
            false,
        ),
    ];
    let near_critical = |t: &SpherePoint, antipodal: bool| {
        critical.non_isolated
            || critical.points.iter().any(|c| {
                let loc = if antipodal { c.location.antipode() } else { c.location };
                geodesic_distance(&loc, t) < radius
            })
    };
    let mut out = Vec::new();
    for (name, slack, antipodal) in &checks {
        let antipodal = *antipodal;
        let values: Vec<f64> = grid.iter().map(slack).collect();
        let min_slack = values.iter().copied().fold(f64::INFINITY, f64::min);
        let violations = grid
            .iter()
            .zip(&values)
            .filter(|(_, &s)| s < -tol.inequality_slack)
            .map(|(t, _)| *t)
            .collect();
        // Equality cases are grid-local minima of the slack below the
        // equality tolerance; near a degenerate zero the slack is flat enough
        // that whole neighbourhoods fall below it.
        let stray_equalities = (0..grid.len())
            .filter(|&i| {
                values[i].abs() < tol.equality_tol
                    && nb[i].iter().all(|&j| values[i] <= values[j])
                    && !near_critical(&grid[i], antipodal)
            })
            .map(|i| grid[i])
            .collect();
        let slack_at_critical = critical
            .points
            .iter()
            .map(|c| slack(&if antipodal { c.location.antipode() } else { c.location }).abs())
            .fold(0.0, f64::max);
        out.push(InequalityCheck {
            name,
            min_slack,
            violations,
            stray_equalities,
            slack_at_critical,
        });
    }
    Ok(InequalityReport {
        checks: out,
        critical,
        tolerances: *tol,
    })
}
