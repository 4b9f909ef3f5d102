//! Lifted hypersurfaces in S^{n+1}, spherical duals and pedals, wave fronts,
//! and sampled spherical caustics and symmetry sets.

use std::collections::HashMap;
use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::integrand::Integrand;
use crate::morse_stability::{find_critical_points_with, MorseTolerances};
use crate::sphere_geometry::{
    central_lift, circle_grid, geodesic_distance, spherical_blowup, Chart, Icosphere, SpherePoint, Vector,
};
use crate::wulff_duality::classify;

/// Normals whose N-component is below this are flagged as ambiguous.
pub const AMBIGUITY_TOL: f64 = 1e-9;
/// Parameter samples of a curve front.
pub const CURVE_SAMPLES: usize = 1024;
/// Icosphere level of the parameter grid of a surface front.
pub const SURFACE_LEVEL: usize = 3;
/// Number of wave-front parameters in [`default_t_grid`].
pub const T_STEPS: usize = 257;
/// Caustic threshold relative to the median front speed.
pub const SINGULAR_FRACTION: f64 = 1e-4;
/// Symmetry pairs must be at least this far apart in parameter.
pub const PAIR_SEPARATION: f64 = 1e-3;

const FD_STEP: f64 = 1e-3;

fn north(ambient: usize) -> Vector {
    Vector::basis(ambient, ambient - 1)
}

/// How a front is generated. Each variant can be evaluated at any parameter.
#[derive(Clone, Debug)]
pub enum FrontSource {
    /// θ ↦ α_N⁻¹(γ̂(θ)θ) with γ̂(θ) = 1/γ(−θ).
    Lift { gamma: Integrand, hat: Integrand },
    /// N-side unit normal of the inner front.
    Dual(Arc<FrontSource>),
    /// cos t · F + sin t · ν.
    Wave(Arc<FrontSource>, f64),
    /// Ψ_N applied to the dual of the inner front.
    Pedal(Arc<FrontSource>),
}

/// Position, tangent vectors and unit normal of a front at one parameter.
#[derive(Clone, Debug)]
pub struct LegendrianPoint {
    pub position: Vector,
    /// Derivatives of the position along the chart frame at the parameter.
    pub tangents: Vec<Vector>,
    pub normal: Vector,
    /// The N-positive side of the normal could not be decided.
    pub ambiguous: bool,
}

impl FrontSource {
    /// Parameter sphere dimension n.
    pub fn n(&self) -> usize {
        match self {
            FrontSource::Lift { gamma, .. } => gamma.dim(),
            FrontSource::Dual(f) | FrontSource::Wave(f, _) | FrontSource::Pedal(f) => f.n(),
        }
    }

    pub fn position(&self, theta: &SpherePoint) -> Result<Vector> {
        match self {
            FrontSource::Lift { hat, .. } => Ok(central_lift(&(theta.coords() * hat.eval(theta))).coords()),
            FrontSource::Dual(f) => Ok(f.normal(theta)?.0),
            FrontSource::Wave(f, t) => {
                let p = f.position(theta)?;
                let (nu, _) = f.normal(theta)?;
                Ok(p * t.cos() + nu * t.sin())
            }
            FrontSource::Pedal(f) => {
                let (nu, _) = f.normal(theta)?;
                Ok(spherical_blowup(&SpherePoint::new(nu)?)?.coords())
            }
        }
    }

    /// Derivatives of the position along the oriented chart frame at θ.
    pub fn tangents(&self, theta: &SpherePoint) -> Result<Vec<Vector>> {
        let chart = Chart::oriented(theta);
        match self {
            FrontSource::Lift { hat, .. } => {
                let l = hat.local(theta);
                let t = theta.coords();
                let x = t * l.value;
                let big = x.extend(1.0);
                let s = big.norm();
                let p = big * (1.0 / s);
                Ok(chart
                    .frame()
                    .iter()
                    .map(|e| {
                        let dx = (t * l.grad.dot(e) + *e * l.value).extend(0.0);
                        (dx - p * p.dot(&dx)) * (1.0 / s)
                    })
                    .collect())
            }
            _ => {
                let eval = |a: &[f64]| self.position(&chart.exp(a));
                let n = chart.n();
                (0..n)
                    .map(|i| {
                        let at = |k: f64| {
                            let mut a = [0.0; 2];
                            a[i] = k * FD_STEP;
                            eval(&a[..n])
                        };
                        let d = (at(-2.0)? - at(2.0)? + (at(1.0)? - at(-1.0)?) * 8.0) * (1.0 / (12.0 * FD_STEP));
                        Ok(d)
                    })
                    .collect()
            }
        }
    }

    /// Unit normal and ambiguity flag. Wave fronts carry the rotated normal
    /// −sin t · F + cos t · ν, which stays defined at singular points;
    /// everything else takes the N-positive normal of its tangent space.
    pub fn normal(&self, theta: &SpherePoint) -> Result<(Vector, bool)> {
        if let FrontSource::Wave(f, t) = self {
            let p = f.position(theta)?;
            let (nu, amb) = f.normal(theta)?;
            return Ok((p * (-t.sin()) + nu * t.cos(), amb));
        }
        let p = self.position(theta)?;
        let tg = self.tangents(theta)?;
        let raw = match self.n() {
            1 => p.cross(&tg[0]),
            _ => Vector::cross4(&p, &tg[0], &tg[1]),
        };
        let nu = raw.normalized().ok_or(Error::DegenerateTangent(0))?;
        let up = nu.dot(&north(p.dim()));
        let nu = if up < 0.0 { -nu } else { nu };
        Ok((nu, up.abs() < AMBIGUITY_TOL))
    }

    pub fn point(&self, theta: &SpherePoint) -> Result<LegendrianPoint> {
        let (normal, ambiguous) = self.normal(theta)?;
        Ok(LegendrianPoint {
            position: self.position(theta)?,
            tangents: self.tangents(theta)?,
            normal,
            ambiguous,
        })
    }

    /// Derivative of the normal along the chart frame.
    fn normal_derivative(&self, theta: &SpherePoint) -> Result<Vec<Vector>> {
        let chart = Chart::oriented(theta);
        let n = chart.n();
        (0..n)
            .map(|i| {
                let at = |k: f64| {
                    let mut a = [0.0; 2];
                    a[i] = k * FD_STEP;
                    Ok::<_, Error>(self.normal(&chart.exp(&a[..n]))?.0)
                };
                Ok((at(-2.0)? - at(2.0)? + (at(1.0)? - at(-1.0)?) * 8.0) * (1.0 / (12.0 * FD_STEP)))
            })
            .collect()
    }
}

/// A front sampled on a parameter grid of Sⁿ.
#[derive(Clone, Debug)]
pub struct FrontSample {
    pub source: Arc<FrontSource>,
    pub params: Vec<SpherePoint>,
    pub points: Vec<LegendrianPoint>,
    /// |F′| for curves; smallest singular value of the tangent pair for
    /// surfaces (a rank indicator).
    pub speed: Vec<f64>,
}

impl FrontSample {
    pub fn build(source: Arc<FrontSource>, params: Vec<SpherePoint>) -> Result<Self> {
        let points = params.iter().map(|p| source.point(p)).collect::<Result<Vec<_>>>()?;
        let speed = points.iter().map(|p| rank_speed(&p.tangents)).collect();
        Ok(FrontSample {
            source,
            params,
            points,
            speed,
        })
    }

    pub fn n(&self) -> usize {
        self.source.n()
    }

    pub fn positions(&self) -> Vec<SpherePoint> {
        self.points
            .iter()
            .map(|p| SpherePoint::new(p.position).expect("front positions are unit vectors"))
            .collect()
    }

    pub fn ambiguous_count(&self) -> usize {
        self.points.iter().filter(|p| p.ambiguous).count()
    }

    /// Largest |position − other position| over shared parameters.
    pub fn max_distance(&self, other: &FrontSample) -> f64 {
        self.points
            .iter()
            .zip(&other.points)
            .map(|(a, b)| (a.position - b.position).norm())
            .fold(0.0, f64::max)
    }

    fn derived(&self, source: FrontSource) -> Result<Self> {
        FrontSample::build(Arc::new(source), self.params.clone())
    }
}

fn rank_speed(t: &[Vector]) -> f64 {
    match t {
        [a] => a.norm(),
        [a, b] => {
            let (e, f, g) = (a.dot(a), a.dot(b), b.dot(b));
            let tr = e + g;
            let det = e * g - f * f;
            let lo = 0.5 * (tr - (tr * tr - 4.0 * det).max(0.0).sqrt());
            lo.max(0.0).sqrt()
        }
        _ => 0.0,
    }
}

pub fn default_params(n: usize) -> Vec<SpherePoint> {
    match n {
        1 => circle_grid(CURVE_SAMPLES),
        _ => Icosphere::cached(SURFACE_LEVEL).vertices.clone(),
    }
}

/// 257 equally spaced wave parameters covering [−π/2, π/2].
pub fn default_t_grid() -> Vec<f64> {
    (0..T_STEPS)
        .map(|k| -FRAC_PI_2 + PI * k as f64 / (T_STEPS - 1) as f64)
        .collect()
}

/// The lifted graph of γ̂ = 1/γ(−θ), which bounds the lift of 𝒲_δ.
pub fn lift_integrand(g: &Integrand) -> Result<FrontSample> {
    lift_integrand_on(g, default_params(g.dim()))
}

pub fn lift_integrand_on(g: &Integrand, params: Vec<SpherePoint>) -> Result<FrontSample> {
    let c = classify(g);
    if !c.is_strictly_convex {
        return Err(Error::NotStrictlyConvex {
            witness: crate::error::Witness(c.curvature_witness.coords().as_slice().to_vec()),
            curvature: c.curvature,
        });
    }
    let source = FrontSource::Lift {
        gamma: g.clone(),
        hat: g.antipodal_reciprocal(),
    };
    FrontSample::build(Arc::new(source), params)
}

pub fn spherical_dual_map(f: &FrontSample) -> Result<FrontSample> {
    f.derived(FrontSource::Dual(f.source.clone()))
}

/// Ψ_N ∘ D of the front.
pub fn spherical_pedal(f: &FrontSample) -> Result<FrontSample> {
    f.derived(FrontSource::Pedal(f.source.clone()))
}

/// Nearest point to N of each tangent great hypersphere, found by projecting
/// N onto the span of the position and its tangents.
pub fn direct_pedal(f: &FrontSample) -> Result<Vec<SpherePoint>> {
    f.points
        .iter()
        .map(|lp| {
            let mut basis: Vec<Vector> = Vec::new();
            for v in std::iter::once(&lp.position).chain(&lp.tangents) {
                let mut w = *v;
                for b in &basis {
                    w -= *b * w.dot(b);
                }
                basis.push(w.normalized().ok_or(Error::DegenerateTangent(0))?);
            }
            let nth = north(lp.position.dim());
            let proj = basis
                .iter()
                .fold(Vector::zeros(nth.dim()), |acc, b| acc + *b * nth.dot(b));
            SpherePoint::new(proj)
        })
        .collect()
}

pub fn wave_front(f: &FrontSample, t: f64) -> Result<FrontSample> {
    if !(t.abs() < PI) {
        return Err(Error::WaveParameter(t));
    }
    f.derived(FrontSource::Wave(f.source.clone(), t))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LocusKind {
    Caustic,
    Symmetry,
}

#[derive(Clone, Debug)]
pub struct SingularEntry {
    pub t: f64,
    /// One angle for caustic points, two for symmetry pairs; empty when the
    /// whole front collapsed.
    pub params: Vec<f64>,
    pub position: SpherePoint,
    /// Number of samples (caustic) or pairs (symmetry) represented.
    pub multiplicity: usize,
}

#[derive(Clone, Debug)]
pub struct SingularLocus {
    pub kind: LocusKind,
    pub entries: Vec<SingularEntry>,
    /// singular_tol for caustics, pair_tol for symmetry sets.
    pub tolerance: f64,
}

impl SingularLocus {
    pub fn positions(&self) -> Vec<SpherePoint> {
        self.entries.iter().map(|e| e.position).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Geodesic distance from `p` to the nearest entry.
    pub fn distance_to(&self, p: &SpherePoint) -> f64 {
        self.entries
            .iter()
            .map(|e| geodesic_distance(&e.position, p))
            .fold(f64::INFINITY, f64::min)
    }

    pub fn csv(&self) -> String {
        let mut s = String::from("t,theta1,theta2,x,y,z,multiplicity\n");
        for e in &self.entries {
            let c = e.position.coords();
            let th = |i: usize| e.params.get(i).map_or(String::new(), |v| format!("{v:.12}"));
            s.push_str(&format!(
                "{:.12},{},{},{:.12},{:.12},{:.12},{}\n",
                e.t,
                th(0),
                th(1),
                c[0],
                c[1],
                c[2],
                e.multiplicity
            ));
        }
        s
    }
}

/// Symmetric Hausdorff distance (geodesic) between two finite point sets.
pub fn hausdorff(a: &[SpherePoint], b: &[SpherePoint]) -> f64 {
    if a.is_empty() || b.is_empty() {
        return if a.is_empty() && b.is_empty() {
            0.0
        } else {
            f64::INFINITY
        };
    }
    let one_way = |x: &[SpherePoint], y: &[SpherePoint]| {
        x.iter()
            .map(|p| y.iter().map(|q| geodesic_distance(p, q)).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max)
    };
    one_way(a, b).max(one_way(b, a))
}

/// Per-parameter data of a curve front: position, normal, and the
/// components of F′ and ν′ along the unit tangent ν × F.
struct CurveJet {
    p: Vector,
    nu: Vector,
    a: f64,
    b: f64,
}

fn curve_jet(src: &FrontSource, phi: f64) -> Result<CurveJet> {
    let theta = SpherePoint::from_angle(phi);
    let p = src.position(&theta)?;
    let t = src.tangents(&theta)?;
    let (nu, _) = src.normal(&theta)?;
    let dnu = src.normal_derivative(&theta)?;
    let unit = nu.cross(&p);
    Ok(CurveJet {
        p,
        nu,
        a: t[0].dot(&unit),
        b: dnu[0].dot(&unit),
    })
}

fn require_curve(f: &FrontSample) -> Result<Vec<f64>> {
    if f.n() != 1 {
        return Err(Error::WrongDimension { needed: 1, got: f.n() });
    }
    let angles: Vec<f64> = f.params.iter().map(|p| p.angle()).collect();
    if angles.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidArgument("curve parameters must increase in angle".into()));
    }
    Ok(angles)
}

fn check_t(t_grid: &[f64]) -> Result<()> {
    match t_grid.iter().find(|t| !(t.abs() < PI)) {
        Some(&t) => Err(Error::WaveParameter(t)),
        None => Ok(()),
    }
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    v[v.len() / 2]
}

fn mean_direction(points: impl Iterator<Item = Vector>, dim: usize) -> Option<SpherePoint> {
    SpherePoint::new(points.fold(Vector::zeros(dim), |a, b| a + b)).ok()
}

/// Singular points of Φ̃_t for each t: zeros of the signed speed
/// cos t ⟨F′, T⟩ + sin t ⟨ν′, T⟩ located by sign changes and bisection.
pub fn caustic_sample(f: &FrontSample, t_grid: &[f64]) -> Result<SingularLocus> {
    let angles = require_curve(f)?;
    check_t(t_grid)?;
    let src = &*f.source;
    let jets = angles.iter().map(|&a| curve_jet(src, a)).collect::<Result<Vec<_>>>()?;
    let m = jets.len();
    let singular_tol = SINGULAR_FRACTION * median(jets.iter().map(|j| j.a.abs()).collect());
    let mut entries = Vec::new();
    for &t in t_grid {
        let (c, s) = (t.cos(), t.sin());
        let sigma: Vec<f64> = jets.iter().map(|j| c * j.a + s * j.b).collect();
        let pos = |j: &CurveJet| j.p * c + j.nu * s;
        if sigma.iter().all(|x| x.abs() < singular_tol) {
            if let Some(p) = mean_direction(jets.iter().map(pos), 3) {
                entries.push(SingularEntry {
                    t,
                    params: Vec::new(),
                    position: p,
                    multiplicity: m,
                });
            }
            continue;
        }
        for k in 0..m {
            let k1 = (k + 1) % m;
            if sigma[k].abs() < singular_tol {
                entries.push(SingularEntry {
                    t,
                    params: vec![angles[k]],
                    position: SpherePoint::new(pos(&jets[k]))?,
                    multiplicity: 1,
                });
                continue;
            }
            if sigma[k1].abs() < singular_tol || sigma[k] * sigma[k1] > 0.0 {
                continue;
            }
            let (mut lo, mut hi) = (angles[k], if k1 == 0 { angles[0] + TAU } else { angles[k1] });
            let mut s_lo = sigma[k];
            let sig = |phi: f64| curve_jet(src, phi).map(|j| c * j.a + s * j.b);
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                let sm = sig(mid)?;
                if sm == 0.0 {
                    lo = mid;
                    hi = mid;
                    break;
                }
                if sm * s_lo > 0.0 {
                    lo = mid;
                    s_lo = sm;
                } else {
                    hi = mid;
                }
                if hi - lo < 1e-13 {
                    break;
                }
            }
            let root = 0.5 * (lo + hi);
            let j = curve_jet(src, root)?;
            entries.push(SingularEntry {
                t,
                params: vec![root.rem_euclid(TAU)],
                position: SpherePoint::new(pos(&j))?,
                multiplicity: 1,
            });
        }
    }
    Ok(SingularLocus {
        kind: LocusKind::Caustic,
        entries,
        tolerance: singular_tol,
    })
}

/// Self-intersections Φ̃_t(θ₁) = Φ̃_t(θ₂): close sample pairs that are local
/// minima of the pair distance, refined by Gauss–Newton in (θ₁, θ₂).
pub fn symmetry_sample(f: &FrontSample, t_grid: &[f64]) -> Result<SingularLocus> {
    let angles = require_curve(f)?;
    check_t(t_grid)?;
    let src = &*f.source;
    let m = angles.len();
    let step = TAU / m as f64;
    let pair_tol = 2.0 * step;
    let pn: Vec<(Vector, Vector)> = f.points.iter().map(|lp| (lp.position, lp.normal)).collect();
    let mut entries = Vec::new();
    for &t in t_grid {
        let (c, s) = (t.cos(), t.sin());
        let pos: Vec<Vector> = pn.iter().map(|(p, nu)| *p * c + *nu * s).collect();
        let centre = mean_direction(pos.iter().copied(), 3);
        if let Some(cp) = centre {
            let cc = cp.coords();
            if pos.iter().all(|p| (*p - cc).norm() < pair_tol) {
                entries.push(SingularEntry {
                    t,
                    params: Vec::new(),
                    position: cp,
                    multiplicity: m * (m - 1) / 2,
                });
                continue;
            }
        }
        let d = |i: usize, j: usize| (pos[i % m] - pos[j % m]).norm();
        let cell = |v: &Vector| {
            (
                (v[0] / pair_tol).floor() as i64,
                (v[1] / pair_tol).floor() as i64,
                (v[2] / pair_tol).floor() as i64,
            )
        };
        let mut buckets: HashMap<(i64, i64, i64), Vec<usize>> = HashMap::new();
        for (i, p) in pos.iter().enumerate() {
            buckets.entry(cell(p)).or_default().push(i);
        }
        let mut found: Vec<(f64, f64)> = Vec::new();
        for i in 0..m {
            let (cx, cy, cz) = cell(&pos[i]);
            for dx in -1..=1 {
                for dy in -1..=1 {
                    for dz in -1..=1 {
                        let Some(list) = buckets.get(&(cx + dx, cy + dy, cz + dz)) else {
                            continue;
                        };
                        for &j in list {
                            let gap = (j + m - i) % m;
                            if j <= i || gap.min(m - gap) < 3 {
                                continue;
                            }
                            let dij = d(i, j);
                            if dij >= pair_tol {
                                continue;
                            }
                            let is_min = [
                                (m - 1, 0),
                                (1, 0),
                                (0, m - 1),
                                (0, 1),
                                (1, 1),
                                (m - 1, m - 1),
                                (1, m - 1),
                                (m - 1, 1),
                            ]
                            .iter()
                            .all(|&(a, b)| dij <= d(i + a, j + b));
                            if !is_min {
                                continue;
                            }
                            if let Some(pair) = refine_pair(src, t, angles[i], angles[j])? {
                                if !found.iter().any(|q| same_pair(*q, pair)) {
                                    found.push(pair);
                                }
                            }
                        }
                    }
                }
            }
        }
        for (a, b) in found {
            let pa = wave_point(src, t, a)?;
            let pb = wave_point(src, t, b)?;
            entries.push(SingularEntry {
                t,
                params: vec![a, b],
                position: SpherePoint::new(pa + pb)?,
                multiplicity: 1,
            });
        }
    }
    Ok(SingularLocus {
        kind: LocusKind::Symmetry,
        entries,
        tolerance: pair_tol,
    })
}

fn angle_gap(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}

fn same_pair(p: (f64, f64), q: (f64, f64)) -> bool {
    (angle_gap(p.0, q.0) < 1e-8 && angle_gap(p.1, q.1) < 1e-8)
        || (angle_gap(p.0, q.1) < 1e-8 && angle_gap(p.1, q.0) < 1e-8)
}

fn wave_point(src: &FrontSource, t: f64, phi: f64) -> Result<Vector> {
    let theta = SpherePoint::from_angle(phi);
    let p = src.position(&theta)?;
    let (nu, _) = src.normal(&theta)?;
    Ok(p * t.cos() + nu * t.sin())
}

fn wave_velocity(src: &FrontSource, t: f64, phi: f64) -> Result<Vector> {
    let theta = SpherePoint::from_angle(phi);
    let tg = src.tangents(&theta)?;
    let dnu = src.normal_derivative(&theta)?;
    Ok(tg[0] * t.cos() + dnu[0] * t.sin())
}

/// Gauss–Newton on r(θ₁, θ₂) = Φ̃_t(θ₁) − Φ̃_t(θ₂); rejects solutions that
/// collapse onto the diagonal.
fn refine_pair(src: &FrontSource, t: f64, a0: f64, b0: f64) -> Result<Option<(f64, f64)>> {
    let (mut a, mut b) = (a0, b0);
    for _ in 0..40 {
        let r = wave_point(src, t, a)? - wave_point(src, t, b)?;
        if r.norm() < 1e-13 {
            break;
        }
        let ja = wave_velocity(src, t, a)?;
        let jb = -wave_velocity(src, t, b)?;
        // Normal equations of the 3×2 least-squares step.
        let (aa, ab, bb) = (ja.dot(&ja), ja.dot(&jb), jb.dot(&jb));
        let (ra, rb) = (ja.dot(&r), jb.dot(&r));
        let det = aa * bb - ab * ab;
        if det.abs() < 1e-300 {
            return Ok(None);
        }
        let da = -(bb * ra - ab * rb) / det;
        let db = -(aa * rb - ab * ra) / det;
        let len = (da * da + db * db).sqrt();
        let scale = if len > 0.05 { 0.05 / len } else { 1.0 };
        a += da * scale;
        b += db * scale;
        if len < 1e-15 {
            break;
        }
    }
    let r = (wave_point(src, t, a)? - wave_point(src, t, b)?).norm();
    Ok((r < 1e-10 && angle_gap(a, b) > PAIR_SEPARATION).then(|| (a.rem_euclid(TAU), b.rem_euclid(TAU))))
}

/// N lies on the spherical caustic of the lift exactly when γ has a
/// degenerate critical point.
pub fn origin_in_caustic(g: &Integrand) -> bool {
    let cs = find_critical_points_with(g, &MorseTolerances::default());
    cs.non_isolated || cs.points.iter().any(|p| p.degenerate)
}

/// N lies on the spherical symmetry set of the lift exactly when two
/// distinct critical points of γ share a critical value.
pub fn origin_in_symmetry_set(g: &Integrand) -> bool {
    let tol = MorseTolerances::default();
    let cs = find_critical_points_with(g, &tol);
    cs.non_isolated
        || cs
            .points
            .windows(2)
            .any(|w| (w[1].value - w[0].value).abs() < tol.value_tol)
}

/// Geodesic distance from N.
pub fn colatitude(p: &SpherePoint) -> f64 {
    geodesic_distance(p, &SpherePoint::north(p.ambient_dim()))
}
