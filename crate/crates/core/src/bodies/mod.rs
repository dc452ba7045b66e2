//! Convex bodies containing the origin and the geometric primitives the
//! functional layer is built on: gauge, support, polar, volume, centroid and
//! the difference body.

mod hull;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use hull::{dot, norm, Hull};

/// Volume of the Euclidean unit ball in dimension `n`.
pub fn unit_ball_volume(n: usize) -> f64 {
    match n {
        0 => 1.0,
        1 => 2.0,
        _ => 2.0 * std::f64::consts::PI / n as f64 * unit_ball_volume(n - 2),
    }
}

/// A polytope carrying both representations: its extreme points and the
/// normals `a_i` of its facets written as `⟨a_i, x⟩ ≤ 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Polytope {
    vertices: Vec<Vec<f64>>,
    normals: Vec<Vec<f64>>,
    volume: f64,
    centroid: Vec<f64>,
}

impl Polytope {
    fn from_points(points: &[Vec<f64>]) -> Result<Polytope> {
        let hull = Hull::new(points)?;
        let scale = hull.points.iter().map(|p| norm(p)).fold(0.0, f64::max);
        if hull.facets.iter().any(|f| f.offset <= 1e-12 * scale) {
            return Err(Error::OriginNotInterior);
        }
        let normals = hull
            .facets
            .iter()
            .map(|f| f.normal.iter().map(|v| v / f.offset).collect())
            .collect();
        let (volume, centroid) = hull.volume_centroid();
        Ok(Polytope::canonical(hull.extreme_points(), normals, volume, centroid))
    }

    fn from_normals(normals: &[Vec<f64>]) -> Result<Polytope> {
        let dual = Polytope::from_points(normals).map_err(|e| match e {
            Error::OriginNotInterior => Error::InvalidBody("halfspaces do not bound a body".into()),
            other => other,
        })?;
        let hull = Hull::new(&dual.normals)?;
        let (volume, centroid) = hull.volume_centroid();
        Ok(Polytope::canonical(dual.normals, dual.vertices, volume, centroid))
    }

    fn canonical(
        mut vertices: Vec<Vec<f64>>,
        mut normals: Vec<Vec<f64>>,
        volume: f64,
        centroid: Vec<f64>,
    ) -> Polytope {
        let lex = |a: &Vec<f64>, b: &Vec<f64>| {
            a.iter()
                .zip(b)
                .map(|(x, y)| x.total_cmp(y))
                .find(|o| o.is_ne())
                .unwrap_or(std::cmp::Ordering::Equal)
        };
        vertices.sort_by(lex);
        normals.sort_by(lex);
        Polytope { vertices, normals, volume, centroid }
    }

    pub fn vertices(&self) -> &[Vec<f64>] {
        &self.vertices
    }

    pub fn normals(&self) -> &[Vec<f64>] {
        &self.normals
    }

    fn dual(&self) -> Result<Polytope> {
        let hull = Hull::new(&self.normals)?;
        let (volume, centroid) = hull.volume_centroid();
        Ok(Polytope::canonical(self.normals.clone(), self.vertices.clone(), volume, centroid))
    }

    fn map_points(&self, f: impl Fn(f64) -> f64, g: impl Fn(f64) -> f64) -> Polytope {
        let vertices: Vec<Vec<f64>> =
            self.vertices.iter().map(|v| v.iter().map(|&x| f(x)).collect()).collect();
        let normals: Vec<Vec<f64>> =
            self.normals.iter().map(|v| v.iter().map(|&x| g(x)).collect()).collect();
        let centroid = self.centroid.iter().map(|&x| f(x)).collect();
        let det = f(1.0).abs().powi(self.centroid.len() as i32);
        Polytope::canonical(vertices, normals, self.volume * det, centroid)
    }
}

/// Shape of a convex body. Polytopes remember which representation they
/// were given in; both are always available.
#[derive(Debug, Clone, PartialEq)]
pub enum Shape {
    Ball { radius: f64 },
    /// `{x : xᵀ M x ≤ 1}` for a symmetric positive-definite `M`.
    Ellipsoid { matrix: DMatrix<f64> },
    Box { half_widths: Vec<f64> },
    HPolytope(Polytope),
    VPolytope(Polytope),
    Simplex { vertices: Vec<Vec<f64>> },
}

impl Shape {
    fn name(&self) -> &'static str {
        match self {
            Shape::Ball { .. } => "ball",
            Shape::Ellipsoid { .. } => "ellipsoid",
            Shape::Box { .. } => "box",
            Shape::HPolytope(_) => "hpolytope",
            Shape::VPolytope(_) => "vpolytope",
            Shape::Simplex { .. } => "simplex",
        }
    }
}

/// A convex body `K ⊂ ℝⁿ`, `n ≥ 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexBody {
    dim: usize,
    shape: Shape,
}

impl ConvexBody {
    pub fn ball(dim: usize, radius: f64) -> Result<ConvexBody> {
        if dim == 0 {
            return Err(Error::InvalidBody("dimension must be positive".into()));
        }
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::InvalidBody(format!("ball radius must be positive, got {radius}")));
        }
        Ok(ConvexBody { dim, shape: Shape::Ball { radius } })
    }

    pub fn ellipsoid(matrix: DMatrix<f64>) -> Result<ConvexBody> {
        let dim = matrix.nrows();
        if dim == 0 || matrix.ncols() != dim {
            return Err(Error::InvalidBody("ellipsoid matrix must be square".into()));
        }
        if (&matrix - matrix.transpose()).amax() > 1e-12 * matrix.amax() {
            return Err(Error::InvalidBody("ellipsoid matrix must be symmetric".into()));
        }
        if matrix.clone().cholesky().is_none() {
            return Err(Error::InvalidBody("ellipsoid matrix must be positive definite".into()));
        }
        Ok(ConvexBody { dim, shape: Shape::Ellipsoid { matrix } })
    }

    pub fn cube(half_widths: &[f64]) -> Result<ConvexBody> {
        if half_widths.is_empty() {
            return Err(Error::InvalidBody("box needs at least one axis".into()));
        }
        if half_widths.iter().any(|w| !(*w > 0.0 && w.is_finite())) {
            return Err(Error::InvalidBody("box half-widths must be positive".into()));
        }
        Ok(ConvexBody { dim: half_widths.len(), shape: Shape::Box { half_widths: half_widths.to_vec() } })
    }

    pub fn vpolytope(vertices: &[Vec<f64>]) -> Result<ConvexBody> {
        let p = Polytope::from_points(vertices)?;
        Ok(ConvexBody { dim: vertices[0].len(), shape: Shape::VPolytope(p) })
    }

    /// Polytope `{x : ⟨a_i, x⟩ ≤ b_i}` with every `b_i > 0`.
    pub fn hpolytope(normals: &[Vec<f64>], offsets: &[f64]) -> Result<ConvexBody> {
        if normals.len() != offsets.len() || normals.is_empty() {
            return Err(Error::InvalidBody("one offset per halfspace required".into()));
        }
        if offsets.iter().any(|b| !(*b > 0.0)) {
            return Err(Error::OriginNotInterior);
        }
        let scaled: Vec<Vec<f64>> =
            normals.iter().zip(offsets).map(|(a, b)| a.iter().map(|v| v / b).collect()).collect();
        let p = Polytope::from_normals(&scaled)?;
        Ok(ConvexBody { dim: normals[0].len(), shape: Shape::HPolytope(p) })
    }

    /// Simplex with `n + 1` vertices; `centered` translates it so that its
    /// centroid sits at the origin.
    pub fn simplex(vertices: &[Vec<f64>], centered: bool) -> Result<ConvexBody> {
        let dim = vertices.first().map(|v| v.len()).unwrap_or(0);
        if dim == 0 || vertices.len() != dim + 1 {
            return Err(Error::InvalidBody("a simplex in ℝⁿ needs n + 1 vertices".into()));
        }
        if let Some(v) = vertices.iter().find(|v| v.len() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, got: v.len() });
        }
        let mut vertices = vertices.to_vec();
        if centered {
            let c: Vec<f64> = (0..dim)
                .map(|k| vertices.iter().map(|v| v[k]).sum::<f64>() / (dim + 1) as f64)
                .collect();
            for v in &mut vertices {
                for k in 0..dim {
                    v[k] -= c[k];
                }
            }
        }
        let body = ConvexBody { dim, shape: Shape::Simplex { vertices } };
        if body.volume()? <= 0.0 {
            return Err(Error::InvalidBody("degenerate simplex".into()));
        }
        Ok(body)
    }

    /// Standard simplex `conv{0, e_1, …, e_n}`.
    pub fn standard_simplex(dim: usize) -> Result<ConvexBody> {
        let mut vs = vec![vec![0.0; dim]];
        for k in 0..dim {
            let mut e = vec![0.0; dim];
            e[k] = 1.0;
            vs.push(e);
        }
        ConvexBody::simplex(&vs, false)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    fn check_dim(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: x.len() });
        }
        Ok(())
    }

    fn simplex_polytope(vertices: &[Vec<f64>]) -> Result<Polytope> {
        Polytope::from_points(vertices)
    }

    /// Minkowski functional `‖x‖_K`.
    pub fn gauge(&self, x: &[f64]) -> Result<f64> {
        self.check_dim(x)?;
        Ok(match &self.shape {
            Shape::Ball { radius } => norm(x) / radius,
            Shape::Ellipsoid { matrix } => quad_form(matrix, x).max(0.0).sqrt(),
            Shape::Box { half_widths } => {
                x.iter().zip(half_widths).map(|(v, w)| v.abs() / w).fold(0.0, f64::max)
            }
            Shape::HPolytope(p) | Shape::VPolytope(p) => polytope_gauge(p, x),
            Shape::Simplex { vertices } => polytope_gauge(&Self::simplex_polytope(vertices)?, x),
        })
    }

    /// Support function `h_K(y) = sup_{x∈K} ⟨x, y⟩`.
    pub fn support(&self, y: &[f64]) -> Result<f64> {
        self.check_dim(y)?;
        Ok(match &self.shape {
            Shape::Ball { radius } => radius * norm(y),
            Shape::Ellipsoid { matrix } => {
                let inv = matrix.clone().try_inverse().expect("positive definite");
                quad_form(&inv, y).max(0.0).sqrt()
            }
            Shape::Box { half_widths } => y.iter().zip(half_widths).map(|(v, w)| v.abs() * w).sum(),
            Shape::HPolytope(p) | Shape::VPolytope(p) => {
                p.vertices.iter().map(|v| dot(v, y)).fold(f64::NEG_INFINITY, f64::max)
            }
            Shape::Simplex { vertices } => {
                vertices.iter().map(|v| dot(v, y)).fold(f64::NEG_INFINITY, f64::max)
            }
        })
    }

    /// Polar body `K° = {y : ⟨x, y⟩ ≤ 1 ∀x ∈ K}`.
    pub fn polar(&self) -> Result<ConvexBody> {
        let shape = match &self.shape {
            Shape::Ball { radius } => Shape::Ball { radius: 1.0 / radius },
            Shape::Ellipsoid { matrix } => {
                Shape::Ellipsoid { matrix: matrix.clone().try_inverse().expect("positive definite") }
            }
            Shape::Box { half_widths } => {
                let mut pts = Vec::with_capacity(2 * self.dim);
                for (k, w) in half_widths.iter().enumerate() {
                    for s in [-1.0, 1.0] {
                        let mut e = vec![0.0; self.dim];
                        e[k] = s / w;
                        pts.push(e);
                    }
                }
                Shape::VPolytope(Polytope::from_points(&pts)?)
            }
            Shape::HPolytope(p) => Shape::VPolytope(p.dual()?),
            Shape::VPolytope(p) => Shape::HPolytope(p.dual()?),
            Shape::Simplex { vertices } => Shape::HPolytope(Self::simplex_polytope(vertices)?.dual()?),
        };
        Ok(ConvexBody { dim: self.dim, shape })
    }

    pub fn volume(&self) -> Result<f64> {
        Ok(match &self.shape {
            Shape::Ball { radius } => unit_ball_volume(self.dim) * radius.powi(self.dim as i32),
            Shape::Ellipsoid { matrix } => unit_ball_volume(self.dim) / matrix.determinant().sqrt(),
            Shape::Box { half_widths } => half_widths.iter().map(|w| 2.0 * w).product(),
            Shape::HPolytope(p) | Shape::VPolytope(p) => p.volume,
            Shape::Simplex { vertices } => {
                let rows: Vec<Vec<f64>> = vertices[1..]
                    .iter()
                    .map(|v| v.iter().zip(&vertices[0]).map(|(a, b)| a - b).collect())
                    .collect();
                let m = DMatrix::from_fn(self.dim, self.dim, |i, j| rows[i][j]);
                let fact: f64 = (1..=self.dim).map(|k| k as f64).product();
                m.determinant().abs() / fact
            }
        })
    }

    /// Centroid (barycenter of the uniform measure).
    pub fn centroid(&self) -> Result<Vec<f64>> {
        Ok(match &self.shape {
            Shape::Ball { .. } | Shape::Ellipsoid { .. } | Shape::Box { .. } => vec![0.0; self.dim],
            Shape::HPolytope(p) | Shape::VPolytope(p) => p.centroid.clone(),
            Shape::Simplex { vertices } => (0..self.dim)
                .map(|k| vertices.iter().map(|v| v[k]).sum::<f64>() / vertices.len() as f64)
                .collect(),
        })
    }

    /// Vertex list for polytopal shapes (boxes included).
    pub fn vertices(&self) -> Option<Vec<Vec<f64>>> {
        match &self.shape {
            Shape::HPolytope(p) | Shape::VPolytope(p) => Some(p.vertices.clone()),
            Shape::Simplex { vertices } => Some(vertices.clone()),
            Shape::Box { half_widths } => {
                let n = half_widths.len();
                Some(
                    (0..1usize << n)
                        .map(|mask| {
                            (0..n)
                                .map(|k| if mask >> k & 1 == 1 { half_widths[k] } else { -half_widths[k] })
                                .collect()
                        })
                        .collect(),
                )
            }
            _ => None,
        }
    }

    /// Difference body `K − K`.
    pub fn difference_body(&self) -> Result<ConvexBody> {
        match &self.shape {
            Shape::Ball { radius } => ConvexBody::ball(self.dim, 2.0 * radius),
            Shape::Box { half_widths } => {
                ConvexBody::cube(&half_widths.iter().map(|w| 2.0 * w).collect::<Vec<_>>())
            }
            Shape::Ellipsoid { .. } => {
                Err(Error::UnsupportedShape { op: "difference_body", shape: self.shape.name() })
            }
            _ => {
                let vs = self.vertices().expect("polytopal");
                let mut pts = Vec::with_capacity(vs.len() * vs.len());
                for a in &vs {
                    for b in &vs {
                        pts.push(a.iter().zip(b).map(|(x, y)| x - y).collect());
                    }
                }
                ConvexBody::vpolytope(&pts)
            }
        }
    }

    /// `c · K` for `c > 0`.
    pub fn scaled(&self, c: f64) -> Result<ConvexBody> {
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::InvalidParameter(format!("scale factor must be positive, got {c}")));
        }
        let shape = match &self.shape {
            Shape::Ball { radius } => Shape::Ball { radius: radius * c },
            Shape::Ellipsoid { matrix } => Shape::Ellipsoid { matrix: matrix / (c * c) },
            Shape::Box { half_widths } => Shape::Box { half_widths: half_widths.iter().map(|w| w * c).collect() },
            Shape::HPolytope(p) => Shape::HPolytope(p.map_points(|x| x * c, |a| a / c)),
            Shape::VPolytope(p) => Shape::VPolytope(p.map_points(|x| x * c, |a| a / c)),
            Shape::Simplex { vertices } => Shape::Simplex {
                vertices: vertices.iter().map(|v| v.iter().map(|x| x * c).collect()).collect(),
            },
        };
        Ok(ConvexBody { dim: self.dim, shape })
    }

    /// The reflected body `−K`.
    pub fn reflected(&self) -> ConvexBody {
        let shape = match &self.shape {
            Shape::HPolytope(p) => Shape::HPolytope(p.map_points(|x| -x, |a| -a)),
            Shape::VPolytope(p) => Shape::VPolytope(p.map_points(|x| -x, |a| -a)),
            Shape::Simplex { vertices } => Shape::Simplex {
                vertices: vertices.iter().map(|v| v.iter().map(|x| -x).collect()).collect(),
            },
            other => other.clone(),
        };
        ConvexBody { dim: self.dim, shape }
    }

    /// Whether `−K = K` up to `tol`.
    pub fn is_symmetric(&self, tol: f64) -> bool {
        match &self.shape {
            Shape::Ball { .. } | Shape::Ellipsoid { .. } | Shape::Box { .. } => true,
            _ => {
                let vs = self.vertices().expect("polytopal");
                vs.iter().all(|v| {
                    let neg: Vec<f64> = v.iter().map(|x| -x).collect();
                    self.gauge(&neg).map(|g| g <= 1.0 + tol).unwrap_or(false)
                })
            }
        }
    }

    /// Geometric equality up to `tol`, comparing gauges on the union of
    /// both bodies' vertex sets and on the coordinate directions.
    pub fn approx_eq(&self, other: &ConvexBody, tol: f64) -> bool {
        if self.dim != other.dim {
            return false;
        }
        let mut probes: Vec<Vec<f64>> = Vec::new();
        for b in [self, other] {
            if let Some(vs) = b.vertices() {
                probes.extend(vs);
            }
            if let Ok(p) = b.polar() {
                if let Some(vs) = p.vertices() {
                    probes.extend(vs);
                }
            }
        }
        for k in 0..self.dim {
            for s in [-1.0, 1.0] {
                let mut e = vec![0.0; self.dim];
                e[k] = s;
                probes.push(e);
            }
        }
        probes.iter().all(|x| match (self.gauge(x), other.gauge(x)) {
            (Ok(a), Ok(b)) => (a - b).abs() <= tol * (1.0 + a.abs()),
            _ => false,
        })
    }
}

fn quad_form(m: &DMatrix<f64>, x: &[f64]) -> f64 {
    let n = x.len();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            s += x[i] * m[(i, j)] * x[j];
        }
    }
    s
}

fn polytope_gauge(p: &Polytope, x: &[f64]) -> f64 {
    p.normals.iter().map(|a| dot(a, x)).fold(0.0, f64::max)
}

/// JSON descriptor of a body, e.g. `{"type":"box","half_widths":[1,1]}`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum BodyDescriptor {
    Ball { dim: usize, radius: f64 },
    Ellipsoid { matrix: Vec<Vec<f64>> },
    Box { half_widths: Vec<f64> },
    Hpolytope { normals: Vec<Vec<f64>>, offsets: Vec<f64> },
    Vpolytope { vertices: Vec<Vec<f64>> },
    Simplex {
        vertices: Vec<Vec<f64>>,
        #[serde(default)]
        centered: bool,
    },
}

impl TryFrom<BodyDescriptor> for ConvexBody {
    type Error = Error;

    fn try_from(d: BodyDescriptor) -> Result<ConvexBody> {
        match d {
            BodyDescriptor::Ball { dim, radius } => ConvexBody::ball(dim, radius),
            BodyDescriptor::Ellipsoid { matrix } => {
                let n = matrix.len();
                if matrix.iter().any(|r| r.len() != n) {
                    return Err(Error::InvalidBody("ellipsoid matrix must be square".into()));
                }
                ConvexBody::ellipsoid(DMatrix::from_fn(n, n, |i, j| matrix[i][j]))
            }
            BodyDescriptor::Box { half_widths } => ConvexBody::cube(&half_widths),
            BodyDescriptor::Hpolytope { normals, offsets } => ConvexBody::hpolytope(&normals, &offsets),
            BodyDescriptor::Vpolytope { vertices } => ConvexBody::vpolytope(&vertices),
            BodyDescriptor::Simplex { vertices, centered } => ConvexBody::simplex(&vertices, centered),
        }
    }
}

impl From<&ConvexBody> for BodyDescriptor {
    fn from(b: &ConvexBody) -> BodyDescriptor {
        match &b.shape {
            Shape::Ball { radius } => BodyDescriptor::Ball { dim: b.dim, radius: *radius },
            Shape::Ellipsoid { matrix } => BodyDescriptor::Ellipsoid {
                matrix: (0..b.dim).map(|i| (0..b.dim).map(|j| matrix[(i, j)]).collect()).collect(),
            },
            Shape::Box { half_widths } => BodyDescriptor::Box { half_widths: half_widths.clone() },
            Shape::HPolytope(p) => BodyDescriptor::Hpolytope {
                normals: p.normals.clone(),
                offsets: vec![1.0; p.normals.len()],
            },
            Shape::VPolytope(p) => BodyDescriptor::Vpolytope { vertices: p.vertices.clone() },
            Shape::Simplex { vertices } => {
                BodyDescriptor::Simplex { vertices: vertices.clone(), centered: false }
            }
        }
    }
}

impl Serialize for ConvexBody {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        BodyDescriptor::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for ConvexBody {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let desc = BodyDescriptor::deserialize(d)?;
        ConvexBody::try_from(desc).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12 * (1.0 + b.abs())
    }

    #[test]
    fn gauge_examples() {
        let b = ConvexBody::cube(&[1.0, 1.0]).unwrap();
        assert!(close(b.gauge(&[2.0, 1.0]).unwrap(), 2.0));
        let ball = ConvexBody::ball(3, 1.0).unwrap();
        assert_eq!(ball.gauge(&[0.0, 0.0, 0.0]).unwrap(), 0.0);
        let seg = ConvexBody::vpolytope(&[vec![-1.0], vec![3.0]]).unwrap();
        assert!(close(seg.gauge(&[3.0]).unwrap(), 1.0));
        assert!(close(seg.gauge(&[-1.0]).unwrap(), 1.0));
    }

    #[test]
    fn gauge_rejects_wrong_dimension() {
        let b = ConvexBody::cube(&[1.0, 1.0]).unwrap();
        assert_eq!(b.gauge(&[1.0]), Err(Error::DimensionMismatch { expected: 2, got: 1 }));
    }

    #[test]
    fn support_examples() {
        let b = ConvexBody::cube(&[1.0, 1.0]).unwrap();
        assert!(close(b.support(&[1.0, 1.0]).unwrap(), 2.0));
        let ball = ConvexBody::ball(2, 1.0).unwrap();
        assert!(close(ball.support(&[3.0, 4.0]).unwrap(), 5.0));
        let seg = ConvexBody::vpolytope(&[vec![-1.0], vec![3.0]]).unwrap();
        assert!(close(seg.support(&[1.0]).unwrap(), 3.0));
    }

    #[test]
    fn polar_of_square_is_cross_polytope() {
        let p = ConvexBody::cube(&[1.0, 1.0]).unwrap().polar().unwrap();
        let cross = ConvexBody::vpolytope(&[
            vec![1.0, 0.0],
            vec![-1.0, 0.0],
            vec![0.0, 1.0],
            vec![0.0, -1.0],
        ])
        .unwrap();
        assert!(p.approx_eq(&cross, 1e-12));
        assert!(close(p.volume().unwrap(), 2.0));
    }

    #[test]
    fn polar_of_ball() {
        let p = ConvexBody::ball(2, 2.0).unwrap().polar().unwrap();
        assert_eq!(p.shape(), &Shape::Ball { radius: 0.5 });
    }

    #[test]
    fn polar_requires_interior_origin() {
        let s = ConvexBody::standard_simplex(2).unwrap();
        assert_eq!(s.polar(), Err(Error::OriginNotInterior));
        assert!(ConvexBody::vpolytope(&[vec![0.0], vec![1.0]]).is_err());
    }

    #[test]
    fn volumes() {
        assert!(close(ConvexBody::ball(2, 1.0).unwrap().volume().unwrap(), std::f64::consts::PI));
        assert!(close(ConvexBody::cube(&[1.0, 1.0, 1.0]).unwrap().volume().unwrap(), 8.0));
        assert!(close(ConvexBody::standard_simplex(2).unwrap().volume().unwrap(), 0.5));
        let e = ConvexBody::ellipsoid(DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![0.25, 1.0])))
            .unwrap();
        assert!(close(e.volume().unwrap(), 2.0 * std::f64::consts::PI));
    }

    #[test]
    fn centroids() {
        let c = ConvexBody::cube(&[1.0, 1.0]).unwrap().centroid().unwrap();
        assert_eq!(c, vec![0.0, 0.0]);
        let s = ConvexBody::standard_simplex(2).unwrap().centroid().unwrap();
        assert!(close(s[0], 1.0 / 3.0) && close(s[1], 1.0 / 3.0));
        let seg = ConvexBody::vpolytope(&[vec![-1.0], vec![3.0]]).unwrap();
        assert!(close(seg.centroid().unwrap()[0], 1.0));
    }

    #[test]
    fn difference_bodies() {
        let d = ConvexBody::cube(&[1.0, 1.0]).unwrap().difference_body().unwrap();
        assert_eq!(d.shape(), &Shape::Box { half_widths: vec![2.0, 2.0] });
        let s = ConvexBody::standard_simplex(2).unwrap();
        let ratio = s.difference_body().unwrap().volume().unwrap() / s.volume().unwrap();
        assert!(close(ratio, 6.0));
        let b = ConvexBody::ball(3, 1.0).unwrap().difference_body().unwrap();
        assert_eq!(b.shape(), &Shape::Ball { radius: 2.0 });
        let e = ConvexBody::ellipsoid(DMatrix::identity(2, 2)).unwrap();
        assert!(matches!(e.difference_body(), Err(Error::UnsupportedShape { .. })));
    }

    #[test]
    fn hpolytope_and_vpolytope_agree() {
        let h = ConvexBody::hpolytope(
            &[vec![1.0, 0.0], vec![-1.0, 0.0], vec![0.0, 1.0], vec![0.0, -1.0], vec![1.0, 1.0]],
            &[1.0, 1.0, 2.0, 2.0, 10.0],
        )
        .unwrap();
        let v = ConvexBody::vpolytope(&[vec![1.0, 2.0], vec![-1.0, 2.0], vec![1.0, -2.0], vec![-1.0, -2.0]])
            .unwrap();
        assert!(h.approx_eq(&v, 1e-12));
        assert!(close(h.volume().unwrap(), 8.0));
    }

    #[test]
    fn unbounded_hpolytope_is_rejected() {
        let r = ConvexBody::hpolytope(&[vec![1.0, 0.0], vec![0.0, 1.0], vec![-1.0, 0.0]], &[1.0, 1.0, 1.0]);
        assert!(r.is_err());
    }

    #[test]
    fn descriptors_parse() {
        let b: ConvexBody = serde_json::from_str(r#"{"type":"box","half_widths":[1,2]}"#).unwrap();
        assert!(close(b.volume().unwrap(), 8.0));
        let v: ConvexBody =
            serde_json::from_str(r#"{"type":"vpolytope","vertices":[[-1],[3]]}"#).unwrap();
        assert!(close(v.volume().unwrap(), 4.0));
        let back: ConvexBody = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
        assert!(back.approx_eq(&v, 1e-12));
    }

    #[test]
    fn scaling_and_reflection() {
        let seg = ConvexBody::vpolytope(&[vec![-1.0], vec![3.0]]).unwrap();
        let r = seg.reflected();
        assert!(close(r.support(&[1.0]).unwrap(), 1.0));
        let s = seg.scaled(2.0).unwrap();
        assert!(close(s.volume().unwrap(), 8.0));
        assert!(close(s.gauge(&[6.0]).unwrap(), 1.0));
    }
}
