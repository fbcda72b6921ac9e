//! Total classification of family points, the boundary-plane curves, the
//! certified separable polygon and grid scans.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::sync::OnceLock;

use log::{debug, info};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::{
    bisect_sign_change, pt_min_eig, pyramid_margin, FamilyPoint, MARGIN_TOL, PPT_TOL,
};
use crate::format::sig12;
use crate::witness::{min_over_product_states, NamedPlane, WitnessCandidate, DETECTION_TOL};

/// Entanglement verdict for a family point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Verdict {
    NotAState,
    NptEntangled,
    BoundEntangled,
    Separable,
    Undetermined,
}

impl Verdict {
    pub const ALL: [Verdict; 5] = [
        Verdict::NotAState,
        Verdict::NptEntangled,
        Verdict::BoundEntangled,
        Verdict::Separable,
        Verdict::Undetermined,
    ];
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::NotAState => "NotAState",
            Verdict::NptEntangled => "NptEntangled",
            Verdict::BoundEntangled => "BoundEntangled",
            Verdict::Separable => "Separable",
            Verdict::Undetermined => "Undetermined",
        };
        f.write_str(s)
    }
}

/// Line `β = 2(γ − 1)/9` where the first witness plane meets the boundary plane.
pub fn l_a(gamma: f64) -> f64 {
    2.0 * (gamma - 1.0) / 9.0
}

/// PPT boundary on the boundary plane, `β = (−4 + 3γ + √(4 − 3γ²))/9`.
pub fn l_b(gamma: f64) -> Result<f64> {
    let disc = 4.0 - 3.0 * gamma * gamma;
    if disc < 0.0 {
        return Err(Error::OutOfRange(format!(
            "l_b undefined at gamma = {gamma} (4 - 3 gamma^2 < 0)"
        )));
    }
    Ok((-4.0 + 3.0 * gamma + disc.sqrt()) / 9.0)
}

/// Lower positivity facet of the boundary plane, `β = (γ − 1)/3`.
pub fn boundary_plane_floor(gamma: f64) -> f64 {
    (gamma - 1.0) / 3.0
}

/// Analytic verdict for a point on the boundary plane.
///
/// Points with `γ < 0` are mirrored first; the mirror preserves the plane.
pub fn boundary_plane_region(p: FamilyPoint) -> Result<Verdict> {
    if p.boundary_plane_offset().abs() > 1e-12 {
        return Err(Error::OffBoundaryPlane(p));
    }
    let margin = pyramid_margin(p);
    if margin < -MARGIN_TOL {
        return Err(Error::NotAState(p, margin));
    }
    let q = if p.gamma < 0.0 { p.mirrored() } else { p };
    let (g, b) = (q.gamma, q.beta);
    if g > 0.0 && g < 1.0 && b > l_a(g) && b < l_b(g)? {
        return Ok(Verdict::BoundEntangled);
    }
    if (0.0..=1.0).contains(&g) && b <= l_a(g) + 1e-12 && b >= boundary_plane_floor(g) - 1e-12 {
        return Ok(Verdict::Separable);
    }
    if pt_min_eig(p) < -PPT_TOL {
        return Ok(Verdict::NptEntangled);
    }
    Ok(Verdict::Undetermined)
}

/// Why a polygon vertex is known to be separable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum VertexSource {
    /// Extreme point of the PPT region of the `γ = 0` slice, where every PPT
    /// state is separable.
    Gamma0Ppt,
    /// Corner of the separable triangle on the boundary plane.
    BoundaryTriangle,
    /// Both at once.
    Gamma0PptAndBoundaryTriangle,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolygonVertex {
    pub point: FamilyPoint,
    pub source: VertexSource,
}

/// Half-space `normal · x ≤ offset` with unit normal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Facet {
    pub normal: [f64; 3],
    pub offset: f64,
}

impl Facet {
    pub fn slack(&self, p: FamilyPoint) -> f64 {
        self.offset - dot(self.normal, p.as_array())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PolygonKind {
    Primary,
    Mirrored,
}

/// Convex hull of states certified separable.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SeparablePolygon {
    pub kind: PolygonKind,
    pub vertices: Vec<PolygonVertex>,
    pub facets: Vec<Facet>,
}

const MEMBERSHIP_TOL: f64 = 1e-9;

impl SeparablePolygon {
    fn from_vertices(kind: PolygonKind, vertices: Vec<PolygonVertex>) -> Self {
        let pts: Vec<[f64; 3]> = vertices.iter().map(|v| v.point.as_array()).collect();
        let facets = hull_facets(&pts);
        Self {
            kind,
            vertices,
            facets,
        }
    }

    /// Barycentric weights over the vertices if `p` is a convex combination of
    /// them, found by enumerating 4-vertex simplices.
    pub fn membership(&self, p: FamilyPoint) -> Option<Vec<f64>> {
        let v: Vec<[f64; 3]> = self.vertices.iter().map(|v| v.point.as_array()).collect();
        let x = p.as_array();
        let n = v.len();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    for l in k + 1..n {
                        if let Some(w) = barycentric([v[i], v[j], v[k], v[l]], x) {
                            if w.iter().all(|&c| c >= -MEMBERSHIP_TOL) {
                                let mut weights = vec![0.0; n];
                                for (slot, c) in [i, j, k, l].into_iter().zip(w) {
                                    weights[slot] = c;
                                }
                                return Some(weights);
                            }
                        }
                    }
                }
            }
        }
        None
    }

    pub fn contains(&self, p: FamilyPoint) -> bool {
        self.membership(p).is_some()
    }

    /// Membership through the derived facet inequalities.
    pub fn facets_contain(&self, p: FamilyPoint, tol: f64) -> bool {
        self.facets.iter().all(|f| f.slack(p) >= -tol)
    }

    /// Image under the `γ → −γ` state symmetry.
    pub fn mirrored(&self) -> Self {
        let vertices = self
            .vertices
            .iter()
            .map(|v| PolygonVertex {
                point: v.point.mirrored(),
                source: v.source,
            })
            .collect();
        let kind = match self.kind {
            PolygonKind::Primary => PolygonKind::Mirrored,
            PolygonKind::Mirrored => PolygonKind::Primary,
        };
        Self::from_vertices(kind, vertices)
    }
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn barycentric(s: [[f64; 3]; 4], x: [f64; 3]) -> Option<[f64; 4]> {
    let e1 = sub(s[1], s[0]);
    let e2 = sub(s[2], s[0]);
    let e3 = sub(s[3], s[0]);
    let r = sub(x, s[0]);
    let det = dot(e1, cross(e2, e3));
    if det.abs() < 1e-14 {
        return None;
    }
    let w1 = dot(r, cross(e2, e3)) / det;
    let w2 = dot(e1, cross(r, e3)) / det;
    let w3 = dot(e1, cross(e2, r)) / det;
    Some([1.0 - w1 - w2 - w3, w1, w2, w3])
}

fn hull_facets(pts: &[[f64; 3]]) -> Vec<Facet> {
    let mut facets: Vec<Facet> = Vec::new();
    let n = pts.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let nrm = cross(sub(pts[j], pts[i]), sub(pts[k], pts[i]));
                let len = dot(nrm, nrm).sqrt();
                if len < 1e-12 {
                    continue;
                }
                let mut normal = [nrm[0] / len, nrm[1] / len, nrm[2] / len];
                let mut offset = dot(normal, pts[i]);
                let side: Vec<f64> = pts.iter().map(|p| dot(normal, *p) - offset).collect();
                let below = side.iter().all(|&s| s <= 1e-12);
                let above = side.iter().all(|&s| s >= -1e-12);
                if !(below || above) {
                    continue;
                }
                if above {
                    normal = [-normal[0], -normal[1], -normal[2]];
                    offset = -offset;
                }
                let dup = facets.iter().any(|f| {
                    (dot(f.normal, normal) - 1.0).abs() < 1e-9 && (f.offset - offset).abs() < 1e-9
                });
                if !dup {
                    facets.push(Facet { normal, offset });
                }
            }
        }
    }
    facets
}

/// Vertices `(α, β)` of the PPT region of the `γ = 0` slice.
///
/// Rays from the maximally mixed state are bisected against the pyramid
/// facets and the partial-transpose oracle; runs of collinear boundary
/// points give the supporting edge lines, and consecutive edge lines are
/// intersected.
pub fn gamma0_ppt_vertices(rays: usize) -> Result<Vec<[f64; 2]>> {
    let inside = |x: [f64; 2]| {
        let p = FamilyPoint::new(x[0], x[1], 0.0);
        let m = pyramid_margin(p);
        if m < 0.0 {
            m
        } else {
            m.min(pt_min_eig(p))
        }
    };
    let boundary: Vec<[f64; 2]> = (0..rays)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / rays as f64;
            let u = [theta.cos(), theta.sin()];
            let (r, _) = bisect_sign_change(0.0, 3.0, 1e-15, |r| inside([r * u[0], r * u[1]]));
            [r * u[0], r * u[1]]
        })
        .collect();

    // Direction of each boundary segment b_k -> b_{k+1}.
    let dirs: Vec<[f64; 2]> = (0..rays)
        .map(|k| {
            let a = boundary[k];
            let b = boundary[(k + 1) % rays];
            let d = [b[0] - a[0], b[1] - a[1]];
            let len = (d[0] * d[0] + d[1] * d[1]).sqrt();
            [d[0] / len, d[1] / len]
        })
        .collect();
    let same =
        |a: [f64; 2], b: [f64; 2]| (a[0] * b[1] - a[1] * b[0]).abs() < 1e-7 && dot2(a, b) > 0.0;

    // Start at a segment that begins a new edge so groups do not wrap.
    let start = (0..rays)
        .find(|&k| !same(dirs[(k + rays - 1) % rays], dirs[k]))
        .ok_or_else(|| Error::OutOfRange("gamma = 0 PPT region has no corners".into()))?;
    let mut edges: Vec<([f64; 2], [f64; 2])> = Vec::new();
    let mut k = 0;
    while k < rays {
        let first = (start + k) % rays;
        let mut len = 1;
        while k + len < rays && same(dirs[first], dirs[(start + k + len) % rays]) {
            len += 1;
        }
        if len >= 2 {
            let last = (first + len) % rays;
            edges.push((boundary[first], boundary[last]));
        }
        k += len;
    }
    if edges.len() < 3 {
        return Err(Error::OutOfRange(format!(
            "gamma = 0 PPT region is not polygonal ({} straight edges found)",
            edges.len()
        )));
    }
    let mut vertices = Vec::with_capacity(edges.len());
    for i in 0..edges.len() {
        let (a, b) = edges[i];
        let (c, d) = edges[(i + 1) % edges.len()];
        vertices.push(
            intersect_lines(a, b, c, d).ok_or_else(|| {
                Error::OutOfRange("adjacent supporting lines are parallel".into())
            })?,
        );
    }
    debug!("gamma = 0 PPT vertices: {vertices:?}");
    Ok(vertices)
}

fn dot2(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

fn intersect_lines(a: [f64; 2], b: [f64; 2], c: [f64; 2], d: [f64; 2]) -> Option<[f64; 2]> {
    let r = [b[0] - a[0], b[1] - a[1]];
    let s = [d[0] - c[0], d[1] - c[1]];
    let denom = r[0] * s[1] - r[1] * s[0];
    if denom.abs() < 1e-15 {
        return None;
    }
    let t = ((c[0] - a[0]) * s[1] - (c[1] - a[1]) * s[0]) / denom;
    Some([a[0] + t * r[0], a[1] + t * r[1]])
}

/// Corners `(γ, β)` of the separable triangle on the boundary plane for
/// `γ ∈ [0, 1]`: below `l_a`, above the floor facet `β = (γ − 1)/3`.
pub fn boundary_triangle_corners() -> [[f64; 2]; 3] {
    // l_a and the floor meet where 2(γ−1)/9 = (γ−1)/3, i.e. γ = 1.
    [
        [0.0, l_a(0.0)],
        [0.0, boundary_plane_floor(0.0)],
        [1.0, l_a(1.0)],
    ]
}

const PROBE_RAYS: usize = 360;

/// Separable polygon for `γ ≥ 0`.
pub fn build_polygon() -> Result<SeparablePolygon> {
    let mut vertices: Vec<PolygonVertex> = gamma0_ppt_vertices(PROBE_RAYS)?
        .into_iter()
        .map(|[a, b]| PolygonVertex {
            point: FamilyPoint::new(a, b, 0.0),
            source: VertexSource::Gamma0Ppt,
        })
        .collect();
    for [g, b] in boundary_triangle_corners() {
        let point = FamilyPoint::on_boundary_plane(g, b);
        match vertices.iter_mut().find(|v| {
            let d = [
                v.point.alpha - point.alpha,
                v.point.beta - point.beta,
                v.point.gamma - point.gamma,
            ];
            dot(d, d).sqrt() < 1e-8
        }) {
            Some(v) => v.source = VertexSource::Gamma0PptAndBoundaryTriangle,
            None => vertices.push(PolygonVertex {
                point,
                source: VertexSource::BoundaryTriangle,
            }),
        }
    }
    for v in &vertices {
        let m = pyramid_margin(v.point);
        let e = pt_min_eig(v.point);
        if m < -1e-8 || e < -1e-8 {
            return Err(Error::NotPpt(v.point, e.min(m)));
        }
    }
    info!("separable polygon with {} vertices", vertices.len());
    Ok(SeparablePolygon::from_vertices(
        PolygonKind::Primary,
        vertices,
    ))
}

/// Record of which test produced a verdict.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Evidence {
    pub pyramid_margin: f64,
    pub pt_min_eig: Option<f64>,
    pub witness: Option<WitnessHit>,
    pub polygon: Option<PolygonHit>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessHit {
    pub name: String,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolygonHit {
    pub kind: PolygonKind,
    pub weights: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub point: FamilyPoint,
    pub verdict: Verdict,
    pub evidence: Evidence,
}

/// A certified witness in the classification battery.
#[derive(Debug, Clone)]
pub struct BatteryWitness {
    pub name: String,
    pub witness: WitnessCandidate,
}

/// Witness battery and separable polygons used by [`classify`].
#[derive(Debug, Clone)]
pub struct Classifier {
    pub witnesses: Vec<BatteryWitness>,
    pub polygon: SeparablePolygon,
    pub mirrored_polygon: SeparablePolygon,
}

/// Product states drawn when admitting a witness into the battery.
const ADMISSION_SAMPLES: usize = 20_000;

impl Classifier {
    pub fn build() -> Result<Self> {
        let mut witnesses = Vec::new();
        for plane in NamedPlane::ALL {
            let w = plane.resolve()?.witness.clone();
            let mirrored = w.mirrored()?;
            witnesses.push(BatteryWitness {
                name: plane.to_string(),
                witness: w,
            });
            witnesses.push(BatteryWitness {
                name: format!("{plane}_mirror"),
                witness: mirrored,
            });
        }
        for (i, bw) in witnesses.iter().enumerate() {
            if !bw.witness.feasible() {
                return Err(Error::NeverFeasible(format!(
                    "battery witness {} fails the coefficient test",
                    bw.name
                )));
            }
            let min = min_over_product_states(&bw.witness, ADMISSION_SAMPLES, 0x5eed + i as u64);
            if min < -DETECTION_TOL {
                return Err(Error::NeverFeasible(format!(
                    "battery witness {} is negative ({min:e}) on a product state",
                    bw.name
                )));
            }
        }
        let polygon = build_polygon()?;
        let mirrored_polygon = polygon.mirrored();
        Ok(Self {
            witnesses,
            polygon,
            mirrored_polygon,
        })
    }

    /// Process-wide classifier, built on first use.
    pub fn shared() -> Result<&'static Classifier> {
        static SHARED: OnceLock<std::result::Result<Classifier, String>> = OnceLock::new();
        SHARED
            .get_or_init(|| Classifier::build().map_err(|e| e.to_string()))
            .as_ref()
            .map_err(|e| Error::NeverFeasible(e.clone()))
    }

    /// Pipeline: pyramid, PT oracle, witness battery, polygon membership.
    pub fn classify(&self, p: FamilyPoint) -> Classification {
        let margin = pyramid_margin(p);
        let mut evidence = Evidence {
            pyramid_margin: margin,
            pt_min_eig: None,
            witness: None,
            polygon: None,
        };
        let done = |verdict, evidence| Classification {
            point: p,
            verdict,
            evidence,
        };
        if margin < -MARGIN_TOL {
            return done(Verdict::NotAState, evidence);
        }
        let pt = pt_min_eig(p);
        evidence.pt_min_eig = Some(pt);
        if pt < -PPT_TOL {
            return done(Verdict::NptEntangled, evidence);
        }
        let rho = crate::family::family_state(p);
        let strongest = self
            .witnesses
            .iter()
            .map(|bw| (bw, bw.witness.value(&rho)))
            .min_by(|a, b| a.1.total_cmp(&b.1));
        if let Some((bw, value)) = strongest {
            if value < -DETECTION_TOL {
                evidence.witness = Some(WitnessHit {
                    name: bw.name.clone(),
                    value,
                });
                return done(Verdict::BoundEntangled, evidence);
            }
        }
        for poly in [&self.polygon, &self.mirrored_polygon] {
            if let Some(weights) = poly.membership(p) {
                evidence.polygon = Some(PolygonHit {
                    kind: poly.kind,
                    weights,
                });
                return done(Verdict::Separable, evidence);
            }
        }
        done(Verdict::Undetermined, evidence)
    }
}

/// Classifies with the shared classifier.
pub fn classify(p: FamilyPoint) -> Result<Classification> {
    Ok(Classifier::shared()?.classify(p))
}

/// Inclusive range `start, start + step, …` up to `end`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AxisRange {
    pub start: f64,
    pub end: f64,
    pub step: f64,
}

impl AxisRange {
    pub fn new(start: f64, end: f64, step: f64) -> Result<Self> {
        if !(start.is_finite() && end.is_finite() && step.is_finite()) || end < start {
            return Err(Error::EmptyGrid(format!("range {start}:{end}:{step}")));
        }
        if step <= 0.0 && end > start {
            return Err(Error::EmptyGrid(format!("non-positive step {step}")));
        }
        Ok(Self { start, end, step })
    }

    pub fn single(x: f64) -> Self {
        Self {
            start: x,
            end: x,
            step: 1.0,
        }
    }

    pub fn values(&self) -> Vec<f64> {
        if self.end == self.start {
            return vec![self.start];
        }
        let n = ((self.end - self.start) / self.step + 1e-9).floor() as usize + 1;
        (0..n).map(|i| self.start + i as f64 * self.step).collect()
    }
}

impl std::str::FromStr for AxisRange {
    type Err = Error;

    /// `a0:a1:step` or a single value.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |t: &str| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Error::EmptyGrid(format!("bad number {t:?} in range {s:?}")))
        };
        match parts.as_slice() {
            [x] => Ok(Self::single(num(x)?)),
            [a, b, st] => Self::new(num(a)?, num(b)?, num(st)?),
            _ => Err(Error::EmptyGrid(format!("range {s:?} is not a0:a1:step"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum GridSpec {
    /// Full `(α, β, γ)` box, α outermost.
    Box {
        alpha: AxisRange,
        beta: AxisRange,
        gamma: AxisRange,
    },
    /// Boundary plane addressed by `(γ, β)`, γ outermost.
    BoundaryPlane { gamma: AxisRange, beta: AxisRange },
}

impl GridSpec {
    pub fn points(&self) -> Vec<FamilyPoint> {
        match self {
            GridSpec::Box { alpha, beta, gamma } => {
                let (bs, gs) = (beta.values(), gamma.values());
                alpha
                    .values()
                    .into_iter()
                    .flat_map(|a| {
                        let gs = gs.clone();
                        bs.clone().into_iter().flat_map(move |b| {
                            gs.clone()
                                .into_iter()
                                .map(move |g| FamilyPoint::new(a, b, g))
                        })
                    })
                    .collect()
            }
            GridSpec::BoundaryPlane { gamma, beta } => {
                let bs = beta.values();
                gamma
                    .values()
                    .into_iter()
                    .flat_map(|g| {
                        bs.clone()
                            .into_iter()
                            .map(move |b| FamilyPoint::on_boundary_plane(g, b))
                    })
                    .collect()
            }
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScanSummary {
    pub total: usize,
    pub counts: BTreeMap<String, usize>,
    /// `(γ, β)` samples of `l_a` for `γ ∈ [0, 1]`.
    pub l_a: Vec<[f64; 2]>,
    /// `(γ, β)` samples of `l_b` for `γ ∈ [0, 1]`.
    pub l_b: Vec<[f64; 2]>,
    pub polygon_vertices: Vec<FamilyPoint>,
}

#[derive(Debug, Clone)]
pub struct ScanResult {
    pub rows: Vec<Classification>,
    pub summary: ScanSummary,
}

impl ScanResult {
    pub fn count(&self, v: Verdict) -> usize {
        self.rows.iter().filter(|r| r.verdict == v).count()
    }
}

/// Classifies every grid point. Row order is the grid order whatever the
/// thread count.
pub fn scan(grid: &GridSpec, threads: Option<usize>) -> Result<ScanResult> {
    let points = grid.points();
    if points.is_empty() {
        return Err(Error::EmptyGrid("no grid points".into()));
    }
    let classifier = Classifier::shared()?;
    let run =
        || -> Vec<Classification> { points.par_iter().map(|&p| classifier.classify(p)).collect() };
    let rows = match threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| Error::OutOfRange(format!("thread pool: {e}")))?
            .install(run),
        None => run(),
    };

    let mut counts: BTreeMap<String, usize> =
        Verdict::ALL.iter().map(|v| (v.to_string(), 0)).collect();
    for r in &rows {
        *counts.entry(r.verdict.to_string()).or_default() += 1;
    }
    let samples: Vec<f64> = (0..=100).map(|i| i as f64 / 100.0).collect();
    let summary = ScanSummary {
        total: rows.len(),
        counts,
        l_a: samples.iter().map(|&g| [g, l_a(g)]).collect(),
        l_b: samples
            .iter()
            .map(|&g| Ok([g, l_b(g)?]))
            .collect::<Result<_>>()?,
        polygon_vertices: classifier
            .polygon
            .vertices
            .iter()
            .map(|v| v.point)
            .collect(),
    };
    Ok(ScanResult { rows, summary })
}

pub const SCAN_CSV_HEADER: [&str; 8] = [
    "alpha",
    "beta",
    "gamma",
    "verdict",
    "pt_min_eig",
    "witness_name",
    "witness_value",
    "polygon_member",
];

pub fn write_scan_csv<W: Write>(rows: &[Classification], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SCAN_CSV_HEADER)?;
    for r in rows {
        let (wname, wval) = match &r.evidence.witness {
            Some(h) => (h.name.clone(), sig12(h.value)),
            None => (String::new(), String::new()),
        };
        let member = match r.evidence.polygon.as_ref().map(|h| h.kind) {
            Some(PolygonKind::Primary) => "primary",
            Some(PolygonKind::Mirrored) => "mirrored",
            None => "",
        };
        w.write_record([
            sig12(r.point.alpha),
            sig12(r.point.beta),
            sig12(r.point.gamma),
            r.verdict.to_string(),
            r.evidence.pt_min_eig.map(sig12).unwrap_or_default(),
            wname,
            wval,
            member.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
