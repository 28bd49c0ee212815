//! Blocking geometry: perpendicular segment blockages, blocking regions and
//! their overlap.
//!
//! The receiver sits at the origin. A blockage is a line segment of width `W`
//! centered at a point and oriented perpendicular to the ray from the receiver
//! to that point. A transmitter at distance `R` is blocked when the segment
//! cuts the straight path between transmitter and receiver.
//!
//! The set of segment centers that block a given transmitter is the
//! *blocking region*. Two models of it are exposed:
//!
//! * `Rectangle` — the `W x R` rectangle idealization, whose area is exactly
//!   `W * R`.
//! * `Exact` — the true region carved out by the segment-intersection
//!   predicate; its area is obtained by polar quadrature.
//!
//! Everything here is a pure function of immutable values.

use thiserror::Error;

/// Absolute tolerance for point-on-edge decisions during clipping.
const CLIP_EPS: f64 = 1e-9;
/// Intersection polygons with |area| below this are treated as empty.
const AREA_EPS: f64 = 1e-12;

#[derive(Debug, Error, PartialEq)]
pub enum GeometryError {
    #[error("site coincides with receiver")]
    SiteAtReceiver,
    #[error("blockage width must be positive, got {0}")]
    NonPositiveWidth(f64),
    #[error("circle radius must be positive, got {0}")]
    NonPositiveRadius(f64),
    #[error("polygon must have at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("polygon is not convex and counterclockwise")]
    NotConvexCcw,
    #[error("polygon area must be positive")]
    DegeneratePolygon,
    #[error("overlap requires both regions to use the same model")]
    MixedRegionModels,
}

/// Wrap an angle to `[0, 2*pi)`.
pub fn wrap_to_2pi(angle: f64) -> f64 {
    let tau = std::f64::consts::TAU;
    let mut a = angle % tau;
    if a < 0.0 {
        a += tau;
    }
    // `-1e-300 % tau` rounds to tau; fold it back.
    if a >= tau {
        a -= tau;
    }
    a
}

/// Wrap an angle to `[-pi, pi)`.
pub fn wrap_to_pi(angle: f64) -> f64 {
    let a = wrap_to_2pi(angle);
    if a >= std::f64::consts::PI {
        a - std::f64::consts::TAU
    } else {
        a
    }
}

/// A point in the receiver-centered plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn from_polar(r: f64, phi: f64) -> Self {
        let (sin_p, cos_p) = phi.sin_cos();
        Self {
            x: r * cos_p,
            y: r * sin_p,
        }
    }

    /// Distance from the receiver at the origin.
    pub fn r(&self) -> f64 {
        self.x.hypot(self.y)
    }

    /// Azimuth angle in `[0, 2*pi)`.
    pub fn phi(&self) -> f64 {
        if self.x == 0.0 && self.y == 0.0 {
            0.0
        } else {
            wrap_to_2pi(self.y.atan2(self.x))
        }
    }
}

/// Polar placement of a transmitter relative to the receiver at the origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransmitterSite {
    r: f64,
    phi: f64,
}

impl TransmitterSite {
    /// `r >= 0`; `phi` is normalized to `[0, 2*pi)`.
    pub fn new(r: f64, phi: f64) -> Self {
        Self {
            r,
            phi: wrap_to_2pi(phi),
        }
    }

    pub fn from_point(p: Point2) -> Self {
        Self::new(p.r(), p.phi())
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn point(&self) -> Point2 {
        Point2::from_polar(self.r, self.phi)
    }
}

/// A blockage: a segment of length `width` centered at `center`, always
/// perpendicular to the receiver-to-center ray.
#[derive(Debug, Clone, Copy)]
pub struct BlockageSegment {
    pub center: Point2,
    pub width: f64,
}

impl BlockageSegment {
    pub fn new(center: Point2, width: f64) -> Result<Self, GeometryError> {
        if width <= 0.0 {
            return Err(GeometryError::NonPositiveWidth(width));
        }
        Ok(Self { center, width })
    }
}

/// Which blocking-region geometry to use for area computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegionModel {
    /// The `a = W * R` rectangle idealization.
    Rectangle,
    /// The region induced by the segment-intersection predicate.
    Exact,
}

/// The set of segment centers that block `target`, under a given model.
#[derive(Debug, Clone, Copy)]
pub struct BlockingRegion {
    pub target: TransmitterSite,
    pub width: f64,
    pub model: RegionModel,
}

impl BlockingRegion {
    pub fn new(
        target: TransmitterSite,
        width: f64,
        model: RegionModel,
    ) -> Result<Self, GeometryError> {
        if width <= 0.0 {
            return Err(GeometryError::NonPositiveWidth(width));
        }
        if target.r() <= 0.0 {
            return Err(GeometryError::SiteAtReceiver);
        }
        Ok(Self {
            target,
            width,
            model,
        })
    }
}

/// A convex counterclockwise polygon.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexPolygon {
    vertices: Vec<Point2>,
}

impl ConvexPolygon {
    /// Validates at least 3 vertices, counterclockwise order and convexity.
    pub fn new(vertices: Vec<Point2>) -> Result<Self, GeometryError> {
        if vertices.len() < 3 {
            return Err(GeometryError::TooFewVertices(vertices.len()));
        }
        let n = vertices.len();
        for i in 0..n {
            let a = vertices[i];
            let b = vertices[(i + 1) % n];
            let c = vertices[(i + 2) % n];
            let cross = (b.x - a.x) * (c.y - b.y) - (b.y - a.y) * (c.x - b.x);
            if cross < -CLIP_EPS {
                return Err(GeometryError::NotConvexCcw);
            }
        }
        let poly = Self { vertices };
        if poly.area() <= AREA_EPS {
            return Err(GeometryError::DegeneratePolygon);
        }
        Ok(poly)
    }

    fn from_clip_output(vertices: Vec<Point2>) -> Option<Self> {
        // Clipping convex CCW inputs yields a convex CCW chain; only dedupe
        // and reject degenerate output.
        let mut deduped: Vec<Point2> = Vec::with_capacity(vertices.len());
        for v in vertices {
            if deduped
                .last()
                .is_none_or(|p| (p.x - v.x).abs() > 1e-12 || (p.y - v.y).abs() > 1e-12)
            {
                deduped.push(v);
            }
        }
        while deduped.len() > 1 {
            let first = deduped[0];
            let last = *deduped.last().unwrap();
            if (first.x - last.x).abs() <= 1e-12 && (first.y - last.y).abs() <= 1e-12 {
                deduped.pop();
            } else {
                break;
            }
        }
        if deduped.len() < 3 {
            return None;
        }
        let poly = Self { vertices: deduped };
        if poly.area() <= AREA_EPS {
            None
        } else {
            Some(poly)
        }
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    /// Shoelace area; nonnegative for counterclockwise vertices.
    pub fn area(&self) -> f64 {
        let n = self.vertices.len();
        let mut twice = 0.0;
        for i in 0..n {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % n];
            twice += a.x * b.y - a.y * b.x;
        }
        0.5 * twice
    }

    pub fn contains(&self, p: Point2) -> bool {
        let n = self.vertices.len();
        for i in 0..n {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % n];
            let cross = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
            if cross < -CLIP_EPS {
                return false;
            }
        }
        true
    }

    /// Axis-aligned bounding box as `(min, max)` corners.
    pub fn bounding_box(&self) -> (Point2, Point2) {
        let mut min = Point2::new(f64::INFINITY, f64::INFINITY);
        let mut max = Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for v in &self.vertices {
            min.x = min.x.min(v.x);
            min.y = min.y.min(v.y);
            max.x = max.x.max(v.x);
            max.y = max.y.max(v.y);
        }
        (min, max)
    }
}

/// Where the network lives; blockage centers are uniform over this region.
#[derive(Debug, Clone, PartialEq)]
pub enum DeploymentRegion {
    Circle { radius: f64 },
    Polygon(ConvexPolygon),
}

impl DeploymentRegion {
    pub fn circle(radius: f64) -> Result<Self, GeometryError> {
        if radius <= 0.0 {
            return Err(GeometryError::NonPositiveRadius(radius));
        }
        Ok(Self::Circle { radius })
    }

    pub fn polygon(poly: ConvexPolygon) -> Self {
        Self::Polygon(poly)
    }

    pub fn area(&self) -> f64 {
        match self {
            Self::Circle { radius } => std::f64::consts::PI * radius * radius,
            Self::Polygon(poly) => poly.area(),
        }
    }

    pub fn contains(&self, p: Point2) -> bool {
        match self {
            Self::Circle { radius } => p.r() <= *radius,
            Self::Polygon(poly) => poly.contains(p),
        }
    }

    /// Bounding box used for rejection sampling over polygons.
    pub fn bounding_box(&self) -> (Point2, Point2) {
        match self {
            Self::Circle { radius } => (
                Point2::new(-radius, -radius),
                Point2::new(*radius, *radius),
            ),
            Self::Polygon(poly) => poly.bounding_box(),
        }
    }
}

/// Whether the segment at `seg.center` cuts the path from the receiver to
/// `site`.
///
/// With `r = |center|` and `delta` the angular offset between center and
/// site, the segment blocks iff `|delta| < pi/2`, the crossing point lies
/// within the half-width (`r*|sin delta| <= (W/2)*cos delta`) and within the
/// path (`r <= R*cos delta`).
pub fn blocks(seg: &BlockageSegment, site: &TransmitterSite) -> Result<bool, GeometryError> {
    if site.r() <= 0.0 {
        return Err(GeometryError::SiteAtReceiver);
    }
    let r = seg.center.r();
    if r == 0.0 {
        // Segment centered on the receiver cuts every path.
        return Ok(true);
    }
    let delta = wrap_to_pi(seg.center.phi() - site.phi());
    let cos_d = delta.cos();
    if cos_d <= 0.0 {
        return Ok(false);
    }
    let lateral = r * delta.sin().abs() <= 0.5 * seg.width * cos_d;
    let axial = r <= site.r() * cos_d;
    Ok(lateral && axial)
}

/// Rectangle-model membership: is `p` inside the `[0, R] x [-W/2, W/2]`
/// rectangle aligned with the site direction?
pub fn rectangle_region_contains(site: &TransmitterSite, width: f64, p: Point2) -> bool {
    let (sin_p, cos_p) = site.phi().sin_cos();
    let along = p.x * cos_p + p.y * sin_p;
    let across = -p.x * sin_p + p.y * cos_p;
    (0.0..=site.r()).contains(&along) && across.abs() <= 0.5 * width
}

/// The rectangle-model blocking region as a polygon.
pub fn site_rectangle(site: &TransmitterSite, width: f64) -> ConvexPolygon {
    let half = 0.5 * width;
    let (sin_p, cos_p) = site.phi().sin_cos();
    let rot = |x: f64, y: f64| Point2::new(x * cos_p - y * sin_p, x * sin_p + y * cos_p);
    let r = site.r();
    ConvexPolygon::new(vec![
        rot(0.0, -half),
        rot(r, -half),
        rot(r, half),
        rot(0.0, half),
    ])
    .expect("site rectangle is convex by construction")
}

/// Radial extent of the exact blocking region at angular offset `delta` from
/// the site direction. The blocked centers at a given offset form the
/// interval `(0, r_max]`.
fn exact_radial_extent(delta: f64, site_r: f64, width: f64) -> f64 {
    let cos_d = delta.cos();
    if cos_d <= 0.0 {
        return 0.0;
    }
    let sin_d = delta.sin().abs();
    let axial = site_r * cos_d;
    if sin_d == 0.0 {
        axial
    } else {
        axial.min(0.5 * width * cos_d / sin_d)
    }
}

/// Adaptive Simpson quadrature on `[a, b]`.
fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson(fa: f64, fm: f64, fb: f64, a: f64, b: f64) -> f64 {
        (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = simpson(fa, flm, fm, a, m);
        let right = simpson(fm, frm, fb, m, b);
        let refined = left + right;
        if depth == 0 || (refined - whole).abs() <= 15.0 * tol {
            refined + (refined - whole) / 15.0
        } else {
            recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
                + recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
        }
    }
    if a >= b {
        return 0.0;
    }
    let m = 0.5 * (a + b);
    let fa = f(a);
    let fm = f(m);
    let fb = f(b);
    recurse(f, a, b, fa, fm, fb, simpson(fa, fm, fb, a, b), tol, 48)
}

/// Integrate `f` over `[a, b]`, splitting at interior breakpoints where the
/// integrand has kinks, each piece to the given absolute tolerance share.
fn integrate_piecewise(f: &dyn Fn(f64) -> f64, a: f64, b: f64, breaks: &[f64], tol: f64) -> f64 {
    let mut cuts: Vec<f64> = breaks
        .iter()
        .copied()
        .filter(|x| *x > a + 1e-15 && *x < b - 1e-15)
        .collect();
    cuts.sort_by(|p, q| p.partial_cmp(q).unwrap());
    cuts.insert(0, a);
    cuts.push(b);
    let share = tol / (cuts.len() - 1) as f64;
    cuts.windows(2)
        .map(|w| adaptive_simpson(f, w[0], w[1], share))
        .sum()
}

/// Area of the exact blocking region for a site at distance `site_r` and
/// blockage width `width`, by polar quadrature of `r_max(delta)^2 / 2`.
fn exact_region_area(site_r: f64, width: f64) -> f64 {
    let half_pi = std::f64::consts::FRAC_PI_2;
    // The radial cap switches from the path bound to the width bound at
    // sin(delta0) = W / (2R).
    let delta0 = (0.5 * width / site_r).min(1.0).asin();
    let f = |d: f64| {
        let rm = exact_radial_extent(d, site_r, width);
        0.5 * rm * rm
    };
    // Rough scale W*R keeps the tolerance relative.
    let tol = 1e-7 * width * site_r;
    2.0 * integrate_piecewise(&f, 0.0, half_pi, &[delta0], tol)
}

/// Area of a blocking region: `W * R` for the rectangle model, polar
/// quadrature for the exact model.
pub fn region_area(region: &BlockingRegion) -> f64 {
    match region.model {
        RegionModel::Rectangle => region.width * region.target.r(),
        RegionModel::Exact => exact_region_area(region.target.r(), region.width),
    }
}

/// Area of the intersection of two blocking regions.
///
/// Rectangle model: convex polygon clipping of the two rectangles.
/// Exact model: polar quadrature of the common radial extent.
pub fn overlap_area(r1: &BlockingRegion, r2: &BlockingRegion) -> Result<f64, GeometryError> {
    if r1.model != r2.model {
        return Err(GeometryError::MixedRegionModels);
    }
    match r1.model {
        RegionModel::Rectangle => {
            let p1 = site_rectangle(&r1.target, r1.width);
            let p2 = site_rectangle(&r2.target, r2.width);
            Ok(polygon_clip(&p1, &p2).map_or(0.0, |p| p.area()))
        }
        RegionModel::Exact => Ok(exact_overlap_area(r1, r2)),
    }
}

fn exact_overlap_area(r1: &BlockingRegion, r2: &BlockingRegion) -> f64 {
    if r1.target == r2.target && r1.width == r2.width {
        // Identical regions: the overlap is the region itself; reuse the
        // area quadrature so the two agree bit for bit.
        return exact_region_area(r1.target.r(), r1.width);
    }
    let half_pi = std::f64::consts::FRAC_PI_2;
    // Rotate so region 1 sits at angle 0 and region 2 at theta >= 0.
    let theta = wrap_to_pi(r2.target.phi() - r1.target.phi()).abs();
    let lo = theta - half_pi;
    let hi = half_pi;
    if lo >= hi {
        return 0.0;
    }
    let (ra, wa) = (r1.target.r(), r1.width);
    let (rb, wb) = (r2.target.r(), r2.width);
    let f = |d: f64| {
        let rm = exact_radial_extent(d, ra, wa).min(exact_radial_extent(d - theta, rb, wb));
        0.5 * rm * rm
    };
    let d0a = (0.5 * wa / ra).min(1.0).asin();
    let d0b = (0.5 * wb / rb).min(1.0).asin();
    let breaks = [-d0a, d0a, theta - d0b, theta + d0b, 0.0, theta];
    let tol = 1e-5 * (wa * ra).min(wb * rb);
    integrate_piecewise(&f, lo, hi, &breaks, tol)
}

/// Convex-convex intersection via Sutherland-Hodgman clipping; `None` when
/// the interiors are disjoint or the intersection has zero area.
pub fn polygon_clip(subject: &ConvexPolygon, clip: &ConvexPolygon) -> Option<ConvexPolygon> {
    let mut output: Vec<Point2> = subject.vertices().to_vec();
    let cv = clip.vertices();
    let n = cv.len();
    for j in 0..n {
        if output.is_empty() {
            return None;
        }
        let a = cv[j];
        let b = cv[(j + 1) % n];
        let inside = |p: Point2| (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x) >= -CLIP_EPS;
        let input = std::mem::take(&mut output);
        let m = input.len();
        for i in 0..m {
            let s = input[i];
            let e = input[(i + 1) % m];
            match (inside(s), inside(e)) {
                (true, true) => output.push(e),
                (true, false) => output.push(edge_line_intersection(a, b, s, e)),
                (false, true) => {
                    output.push(edge_line_intersection(a, b, s, e));
                    output.push(e);
                }
                (false, false) => {}
            }
        }
    }
    ConvexPolygon::from_clip_output(output)
}

/// Intersection of segment `s -> e` with the infinite line through `a -> b`.
fn edge_line_intersection(a: Point2, b: Point2, s: Point2, e: Point2) -> Point2 {
    let d1 = (b.x - a.x) * (s.y - a.y) - (b.y - a.y) * (s.x - a.x);
    let d2 = (b.x - a.x) * (e.y - a.y) - (b.y - a.y) * (e.x - a.x);
    let t = d1 / (d1 - d2);
    Point2::new(s.x + t * (e.x - s.x), s.y + t * (e.y - s.y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn deg(d: f64) -> f64 {
        d.to_radians()
    }

    #[test]
    fn blocks_lateral_and_axial_reach() {
        // center (r=2, 10deg), site (R=5, 0deg), W=1: lateral offset
        // 2*tan(10deg) = 0.3527 <= 0.5 and axial reach 2/cos(10deg) = 2.031 <= 5.
        let seg = BlockageSegment::new(Point2::from_polar(2.0, deg(10.0)), 1.0).unwrap();
        let site = TransmitterSite::new(5.0, 0.0);
        assert!(blocks(&seg, &site).unwrap());
    }

    #[test]
    fn blocks_center_beyond_path_endpoint() {
        let seg = BlockageSegment::new(Point2::from_polar(6.0, 0.0), 10.0).unwrap();
        let site = TransmitterSite::new(5.0, 0.0);
        assert!(!blocks(&seg, &site).unwrap());
    }

    #[test]
    fn blocks_center_on_path_midpoint() {
        let seg = BlockageSegment::new(Point2::from_polar(2.5, 0.0), 1.0).unwrap();
        let site = TransmitterSite::new(5.0, 0.0);
        assert!(blocks(&seg, &site).unwrap());
    }

    #[test]
    fn blocks_rejects_site_at_receiver() {
        let seg = BlockageSegment::new(Point2::from_polar(1.0, 0.0), 1.0).unwrap();
        let site = TransmitterSite::new(0.0, 0.0);
        assert_eq!(blocks(&seg, &site), Err(GeometryError::SiteAtReceiver));
    }

    #[test]
    fn rectangle_area_is_width_times_distance() {
        let site = TransmitterSite::new(5.0, deg(33.0));
        let r1 = BlockingRegion::new(site, 1.0, RegionModel::Rectangle).unwrap();
        let r3 = BlockingRegion::new(site, 3.0, RegionModel::Rectangle).unwrap();
        assert_eq!(region_area(&r1), 5.0);
        assert_eq!(region_area(&r3), 15.0);
    }

    #[test]
    fn exact_area_matches_radial_integral_closed_form() {
        // Independent reduction of the polar integral: with
        // delta0 = asin(W/(2R)),
        //   area = R^2 (delta0/2 + sin(2*delta0)/4)
        //        + (W^2/4) (cot(delta0) + delta0 - pi/2).
        let cases: [(f64, f64); 4] = [(1.0, 5.0), (2.0, 5.0), (3.0, 5.0), (0.5, 2.0)];
        for (w, r) in cases {
            let d0 = (0.5 * w / r).asin();
            let closed = r * r * (0.5 * d0 + 0.25 * (2.0 * d0).sin())
                + 0.25 * w * w * (d0.cos() / d0.sin() + d0 - std::f64::consts::FRAC_PI_2);
            let region = BlockingRegion::new(
                TransmitterSite::new(r, deg(17.0)),
                w,
                RegionModel::Exact,
            )
            .unwrap();
            assert_relative_eq!(region_area(&region), closed, max_relative = 1e-6);
        }
    }

    #[test]
    fn exact_area_within_rectangle_envelope() {
        for &(w, r) in &[(1.0, 5.0), (2.0, 5.0), (3.0, 5.0), (1.0, 1.5)] {
            let region =
                BlockingRegion::new(TransmitterSite::new(r, 0.3), w, RegionModel::Exact).unwrap();
            let a = region_area(&region);
            assert!(a > 0.0 && a < 1.1 * w * r, "area {a} outside envelope");
        }
    }

    #[test]
    fn overlap_identical_regions_is_full_area() {
        let site = TransmitterSite::new(5.0, deg(40.0));
        let r = BlockingRegion::new(site, 2.0, RegionModel::Rectangle).unwrap();
        assert_relative_eq!(overlap_area(&r, &r).unwrap(), 10.0, max_relative = 1e-12);
    }

    #[test]
    fn overlap_opposite_sides_is_zero() {
        for model in [RegionModel::Rectangle, RegionModel::Exact] {
            let r1 =
                BlockingRegion::new(TransmitterSite::new(5.0, 0.0), 2.0, model).unwrap();
            let r2 = BlockingRegion::new(
                TransmitterSite::new(4.0, std::f64::consts::PI),
                2.0,
                model,
            )
            .unwrap();
            assert_relative_eq!(overlap_area(&r1, &r2).unwrap(), 0.0, epsilon = 1e-9);
        }
    }

    #[test]
    fn overlap_rejects_mixed_models() {
        let r1 =
            BlockingRegion::new(TransmitterSite::new(5.0, 0.0), 2.0, RegionModel::Rectangle)
                .unwrap();
        let r2 = BlockingRegion::new(TransmitterSite::new(5.0, 1.0), 2.0, RegionModel::Exact)
            .unwrap();
        assert_eq!(
            overlap_area(&r1, &r2),
            Err(GeometryError::MixedRegionModels)
        );
    }

    #[test]
    fn clip_identity_half_and_disjoint() {
        let unit = ConvexPolygon::new(vec![
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(1.0, 1.0),
            Point2::new(0.0, 1.0),
        ])
        .unwrap();
        let shifted = ConvexPolygon::new(vec![
            Point2::new(0.5, 0.0),
            Point2::new(1.5, 0.0),
            Point2::new(1.5, 1.0),
            Point2::new(0.5, 1.0),
        ])
        .unwrap();
        let far = ConvexPolygon::new(vec![
            Point2::new(2.0, 0.0),
            Point2::new(3.0, 0.0),
            Point2::new(3.0, 1.0),
            Point2::new(2.0, 1.0),
        ])
        .unwrap();
        assert_relative_eq!(
            polygon_clip(&unit, &unit).unwrap().area(),
            1.0,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            polygon_clip(&unit, &shifted).unwrap().area(),
            0.5,
            max_relative = 1e-12
        );
        assert!(polygon_clip(&unit, &far).is_none());
    }

    #[test]
    fn polygon_rejects_clockwise_and_degenerate() {
        assert_eq!(
            ConvexPolygon::new(vec![
                Point2::new(0.0, 0.0),
                Point2::new(0.0, 1.0),
                Point2::new(1.0, 1.0),
                Point2::new(1.0, 0.0),
            ])
            .unwrap_err(),
            GeometryError::NotConvexCcw
        );
        assert_eq!(
            ConvexPolygon::new(vec![
                Point2::new(0.0, 0.0),
                Point2::new(1.0, 0.0),
                Point2::new(2.0, 0.0),
            ])
            .unwrap_err(),
            GeometryError::DegeneratePolygon
        );
    }

    #[test]
    fn region_contains_matches_corners() {
        let site = TransmitterSite::new(5.0, deg(30.0));
        let poly = site_rectangle(&site, 2.0);
        assert_relative_eq!(poly.area(), 10.0, max_relative = 1e-12);
        assert!(rectangle_region_contains(&site, 2.0, site.point()));
        assert!(rectangle_region_contains(
            &site,
            2.0,
            Point2::from_polar(2.5, deg(30.0))
        ));
        assert!(!rectangle_region_contains(
            &site,
            2.0,
            Point2::from_polar(2.5, deg(80.0))
        ));
    }

    #[test]
    fn deployment_region_circle_area_and_membership() {
        let region = DeploymentRegion::circle(6.0).unwrap();
        assert_relative_eq!(region.area(), std::f64::consts::PI * 36.0);
        assert!(region.contains(Point2::new(5.9, 0.0)));
        assert!(!region.contains(Point2::new(6.1, 0.0)));
        assert!(DeploymentRegion::circle(0.0).is_err());
    }
}
