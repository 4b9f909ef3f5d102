//! Spherical polar sets, spherical convex hulls and spherical Wulff shapes,
//! sampled as indicators on a fixed icosphere of S².

mod nnls;

use std::io::Write;
use std::path::Path;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::integrand::{validation_grid, Integrand};
use crate::sphere_geometry::{central_lift, central_project, spherical_blowup, Icosphere, SpherePoint, Vector};
use crate::wulff_duality::{radial_function, WulffBody};

/// Icosphere level of the region grid.
pub const REGION_LEVEL: usize = 5;
/// Width of the boundary band, in grid rings, excluded from comparisons.
pub const BAND_RINGS: usize = 2;
/// Residual below which a point counts as a nonnegative combination.
pub const HULL_RESIDUAL: f64 = 1e-10;

/// H(P) = {Q | P·Q ≥ 0}.
pub fn hemisphere_contains(p: &SpherePoint, q: &SpherePoint) -> bool {
    p.dot(q) >= 0.0
}

/// Indicator of a subset of S² on the region grid. `members` are extra
/// points known to lie in the set; polars use them alongside the grid, so
/// lower-dimensional sets such as a single point keep the right polar.
#[derive(Clone, Debug)]
pub struct SphericalRegion {
    grid: Arc<Icosphere>,
    inside: Vec<bool>,
    members: Vec<SpherePoint>,
}

impl SphericalRegion {
    pub fn from_predicate(pred: impl Fn(&SpherePoint) -> bool) -> Self {
        let grid = Icosphere::cached(REGION_LEVEL);
        let inside = grid.vertices.iter().map(pred).collect();
        SphericalRegion {
            grid,
            inside,
            members: Vec::new(),
        }
    }

    pub fn full() -> Self {
        Self::from_predicate(|_| true)
    }

    pub fn with_members(mut self, members: Vec<SpherePoint>) -> Self {
        self.members = members;
        self
    }

    pub fn grid(&self) -> &Icosphere {
        &self.grid
    }

    pub fn indicator(&self) -> &[bool] {
        &self.inside
    }

    pub fn members(&self) -> &[SpherePoint] {
        &self.members
    }

    pub fn count(&self) -> usize {
        self.inside.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        self.count() == 0
    }

    /// Indicator at the grid vertex nearest to `q`.
    pub fn contains_nearest(&self, q: &SpherePoint) -> bool {
        let i = self
            .grid
            .vertices
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.dot(q).total_cmp(&b.1.dot(q)))
            .map_or(0, |(i, _)| i);
        self.inside[i]
    }

    /// Grid points of the set together with its extra members.
    fn generators(&self) -> impl Iterator<Item = &SpherePoint> {
        self.grid
            .vertices
            .iter()
            .zip(&self.inside)
            .filter(|(_, &b)| b)
            .map(|(v, _)| v)
            .chain(&self.members)
    }

    /// The polar ⋂_{P ∈ X} H(P), with X the sampled set.
    pub fn polar(&self) -> SphericalRegion {
        let gens: Vec<Vector> = self.generators().map(|p| p.coords()).collect();
        SphericalRegion::from_predicate(|q| {
            let qc = q.coords();
            gens.iter().all(|p| p.dot(&qc) >= 0.0)
        })
    }

    /// Vertices with a neighbour on the other side, widened by
    /// [`BAND_RINGS`] rings.
    pub fn boundary_band(&self) -> Vec<bool> {
        let edge: Vec<bool> = (0..self.grid.len())
            .map(|i| self.grid.neighbors[i].iter().any(|&j| self.inside[j] != self.inside[i]))
            .collect();
        self.grid.dilate(&edge, BAND_RINGS)
    }

    pub fn is_subset_of(&self, other: &SphericalRegion) -> bool {
        self.inside.iter().zip(&other.inside).all(|(&a, &b)| !a || b)
    }

    pub fn intersect(&self, other: &SphericalRegion) -> SphericalRegion {
        SphericalRegion {
            grid: self.grid.clone(),
            inside: self.inside.iter().zip(&other.inside).map(|(&a, &b)| a && b).collect(),
            members: Vec::new(),
        }
    }

    /// Compares indicators, ignoring disagreements inside either boundary band.
    pub fn compare(&self, other: &SphericalRegion) -> RegionComparison {
        let (ba, bb) = (self.boundary_band(), other.boundary_band());
        let mut mismatches = 0;
        let mut outside_band = 0;
        for i in 0..self.grid.len() {
            if self.inside[i] != other.inside[i] {
                mismatches += 1;
                if !ba[i] && !bb[i] {
                    outside_band += 1;
                }
            }
        }
        RegionComparison {
            mismatches,
            outside_band,
        }
    }

    /// CSV rows `x,y,z,inside`.
    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let io = |source| Error::Io {
            path: path.to_path_buf(),
            source,
        };
        let mut f = std::io::BufWriter::new(std::fs::File::create(path).map_err(io)?);
        writeln!(f, "x,y,z,inside").map_err(io)?;
        for (v, &b) in self.grid.vertices.iter().zip(&self.inside) {
            let c = v.coords();
            writeln!(f, "{:.12},{:.12},{:.12},{}", c[0], c[1], c[2], u8::from(b)).map_err(io)?;
        }
        f.flush().map_err(io)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RegionComparison {
    pub mismatches: usize,
    /// Mismatches more than the band width away from both boundaries.
    pub outside_band: usize,
}

impl RegionComparison {
    pub fn agree(&self) -> bool {
        self.outside_band == 0
    }
}

/// Points of S^{n+1} contained in some open hemisphere.
#[derive(Clone, Debug)]
pub struct FinitePointSet {
    points: Vec<SpherePoint>,
    /// X lies in the open hemisphere centred here.
    center: SpherePoint,
}

impl FinitePointSet {
    /// Fails with [`Error::NotHemispherical`] when no open hemisphere holds
    /// every point.
    pub fn new(points: Vec<SpherePoint>) -> Result<Self> {
        let first = points.first().ok_or(Error::InvalidArgument("empty point set".into()))?;
        let d = first.ambient_dim();
        if let Some(p) = points.iter().find(|p| p.ambient_dim() != d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: p.ambient_dim(),
            });
        }
        let center = separating_direction(&points).ok_or(Error::NotHemispherical)?;
        Ok(FinitePointSet { points, center })
    }

    /// One unit vector per CSV row; rows are normalized.
    pub fn load(path: &Path, ambient: usize) -> Result<Self> {
        let rows = crate::integrand::read_rows(path, ambient)?;
        let points = rows
            .iter()
            .map(|r| SpherePoint::from_coords(r))
            .collect::<Result<Vec<_>>>()?;
        Self::new(points)
    }

    pub fn points(&self) -> &[SpherePoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn ambient_dim(&self) -> usize {
        self.points[0].ambient_dim()
    }

    /// A direction P with H(P) ∩ X = ∅.
    pub fn avoiding_direction(&self) -> SpherePoint {
        self.center.antipode()
    }

    /// Exact polar membership: min_i P_i·Q ≥ 0.
    pub fn polar_contains(&self, q: &SpherePoint) -> bool {
        self.points.iter().all(|p| hemisphere_contains(p, q))
    }

    /// Sampled polar set (S² only).
    pub fn polar(&self) -> Result<SphericalRegion> {
        self.require_s2()?;
        Ok(SphericalRegion::from_predicate(|q| self.polar_contains(q)))
    }

    /// Q ∈ s-conv(X): Σ tᵢPᵢ = λQ with tᵢ ≥ 0, λ > 0.
    pub fn hull_contains(&self, q: &SpherePoint) -> bool {
        let a = self.matrix();
        let b = DVector::from_column_slice(q.coords().as_slice());
        let s = nnls::nnls(&a, &b);
        s.residual <= HULL_RESIDUAL && s.t.iter().any(|&t| t > 0.0)
    }

    /// Whether the hull has interior points: the points span the ambient space.
    pub fn hull_has_interior(&self) -> bool {
        let a = self.matrix();
        let sv = a.singular_values();
        sv.len() >= self.ambient_dim() && sv.iter().fold(f64::INFINITY, |m, &s| m.min(s)) > 1e-9
    }

    fn matrix(&self) -> DMatrix<f64> {
        let d = self.ambient_dim();
        DMatrix::from_fn(d, self.points.len(), |i, j| self.points[j].coords()[i])
    }

    fn require_s2(&self) -> Result<()> {
        match self.ambient_dim() {
            3 => Ok(()),
            d => Err(Error::WrongDimension { needed: 1, got: d - 2 }),
        }
    }
}

/// Direction c with c·Pᵢ > 0 for all i, if any. The point of the convex
/// hull of X nearest the origin is such a direction whenever it is nonzero.
fn separating_direction(points: &[SpherePoint]) -> Option<SpherePoint> {
    let d = points[0].ambient_dim();
    let k = points.len();
    // Weights summing to one are enforced by a heavily weighted extra row.
    let big = 1e4;
    let a = DMatrix::from_fn(d + 1, k, |i, j| if i < d { points[j].coords()[i] } else { big });
    let mut rhs = DVector::zeros(d + 1);
    rhs[d] = big;
    let s = nnls::nnls(&a, &rhs);
    let w = points
        .iter()
        .zip(&s.t)
        .fold(Vector::zeros(d), |acc, (p, &t)| acc + p.coords() * t);
    let c = SpherePoint::new(w).ok()?;
    points.iter().all(|p| p.dot(&c) > 1e-12).then_some(c)
}

/// s-conv(X) as an exact membership test plus its sampled indicator.
#[derive(Clone, Debug)]
pub struct SphericalHull {
    pub set: FinitePointSet,
    pub region: SphericalRegion,
}

impl SphericalHull {
    pub fn contains(&self, q: &SpherePoint) -> bool {
        self.set.hull_contains(q)
    }
}

pub fn spherical_convex_hull(x: &FinitePointSet) -> Result<SphericalHull> {
    x.require_s2()?;
    let region = SphericalRegion::from_predicate(|q| x.hull_contains(q)).with_members(x.points.clone());
    Ok(SphericalHull { set: x.clone(), region })
}

#[derive(Clone, Debug)]
pub struct MaeharaReport {
    pub comparison: RegionComparison,
    /// Largest distance (radians) from a disagreeing grid point to the
    /// boundary of ⋂ H(Pᵢ).
    pub max_discrepancy: f64,
}

impl MaeharaReport {
    pub fn agree(&self) -> bool {
        self.comparison.agree()
    }
}

/// s-conv(X)° against H(P₁) ∩ ⋯ ∩ H(P_k).
pub fn maehara_check(x: &FinitePointSet) -> Result<MaeharaReport> {
    let hull = spherical_convex_hull(x)?;
    let lhs = hull.region.polar();
    let rhs = x.polar()?;
    let comparison = lhs.compare(&rhs);
    let grid = lhs.grid();
    let max_discrepancy = (0..grid.len())
        .filter(|&i| lhs.inside[i] != rhs.inside[i])
        .map(|i| {
            let q = &grid.vertices[i];
            x.points
                .iter()
                .map(|p| p.dot(q))
                .fold(f64::INFINITY, f64::min)
                .abs()
                .asin()
        })
        .fold(0.0, f64::max);
    Ok(MaeharaReport {
        comparison,
        max_discrepancy,
    })
}

#[derive(Clone, Debug)]
pub enum DoublePolarStatus {
    /// The hull has no interior points, so the identity is not asserted.
    Degenerate,
    Checked {
        comparison: RegionComparison,
        /// X ⊂ X°° on the grid.
        contained: bool,
    },
}

impl DoublePolarStatus {
    pub fn agree(&self) -> Option<bool> {
        match self {
            DoublePolarStatus::Degenerate => None,
            DoublePolarStatus::Checked { comparison, contained } => Some(comparison.agree() && *contained),
        }
    }
}

/// s-conv(X) against (s-conv(X))°°.
pub fn double_polar_check(x: &FinitePointSet) -> Result<DoublePolarStatus> {
    x.require_s2()?;
    if !x.hull_has_interior() {
        return Ok(DoublePolarStatus::Degenerate);
    }
    let hull = spherical_convex_hull(x)?.region;
    let double = hull.polar().polar();
    Ok(DoublePolarStatus::Checked {
        comparison: hull.compare(&double),
        contained: hull.is_subset_of(&double),
    })
}

fn require_circle(g: &Integrand) -> Result<()> {
    match g.dim() {
        1 => Ok(()),
        n => Err(Error::WrongDimension { needed: 1, got: n }),
    }
}

/// The polar of the blown-up lifted graph {Ψ_N(α_N⁻¹(γ(θ)θ))}, a subset of
/// the northern hemisphere of S².
pub fn spherical_wulff(g: &Integrand) -> Result<SphericalRegion> {
    require_circle(g)?;
    let constraints = validation_grid(1)
        .iter()
        .map(|t| spherical_blowup(&central_lift(&(t.coords() * g.eval(t)))).map(|p| p.coords()))
        .collect::<Result<Vec<Vector>>>()?;
    Ok(SphericalRegion::from_predicate(|q| {
        let qc = q.coords();
        constraints.iter().all(|p| p.dot(&qc) >= 0.0)
    }))
}

/// {α_N⁻¹(x) | x ∈ 𝒲_γ} sampled through the radial function of the body.
pub fn lifted_wulff(body: &WulffBody) -> Result<SphericalRegion> {
    require_circle(body.generator())?;
    Ok(SphericalRegion::from_predicate(|q| {
        let Ok(x) = central_project(q) else { return false };
        let x = x.truncate();
        match SpherePoint::new(x) {
            Ok(u) => x.norm() <= radial_function(body, &u),
            Err(_) => true,
        }
    }))
}
