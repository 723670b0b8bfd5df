//! Model spaces E^n and H^n (n = 2, 3), with points, tangent vectors,
//! isometries, totally geodesic hyperplanes and oriented angles.
//!
//! Hyperbolic space uses the hyperboloid model: points are vectors of length
//! `n + 1` on the upper sheet of `<x, x> = -1`, where
//! `<x, y> = -x0 y0 + x1 y1 + ... + xn yn`. Isometries are then linear and
//! their differential is the matrix itself. Euclidean isometries are affine.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{self, Mat};
use crate::scalar::Real;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("unsupported dimension {0} (expected 2 or 3)")]
    Dimension(usize),
    #[error("coordinate length {got} does not match the model space (expected {expected})")]
    Shape { expected: usize, got: usize },
    #[error("point is off the hyperboloid upper sheet (residual {0:e})")]
    OffSheet(f64),
    #[error("tangent vector is not tangent at its base (residual {0:e})")]
    NotTangent(f64),
    #[error("matrix is not an isometry (deviation {0:e})")]
    NotIsometry(f64),
    #[error("hyperplane normal is not normalized (deviation {0:e})")]
    BadNormal(f64),
    #[error("degenerate orientation pair")]
    DegenerateOrientation,
    #[error("degenerate vector: {0}")]
    Degenerate(&'static str),
}

pub type Result<T, E = GeometryError> = std::result::Result<T, E>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Euclidean,
    Hyperbolic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModelSpace {
    pub kind: Kind,
    pub dim: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Point<T> {
    pub coords: Vec<T>,
}

impl<T: Real> Point<T> {
    pub fn new(coords: Vec<T>) -> Self {
        Point { coords }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Tangent<T> {
    pub base: Point<T>,
    pub vec: Vec<T>,
}

impl<T: Real> Tangent<T> {
    pub fn new(base: Point<T>, vec: Vec<T>) -> Self {
        Tangent { base, vec }
    }

    pub fn neg(&self) -> Self {
        Tangent { base: self.base.clone(), vec: linalg::scale(&self.vec, -T::one()) }
    }
}

impl ModelSpace {
    pub fn new(kind: Kind, dim: usize) -> Result<Self> {
        if dim == 2 || dim == 3 {
            Ok(ModelSpace { kind, dim })
        } else {
            Err(GeometryError::Dimension(dim))
        }
    }

    pub fn euclidean(dim: usize) -> Self {
        Self::new(Kind::Euclidean, dim).expect("dimension 2 or 3")
    }

    pub fn hyperbolic(dim: usize) -> Self {
        Self::new(Kind::Hyperbolic, dim).expect("dimension 2 or 3")
    }

    pub fn is_hyperbolic(&self) -> bool {
        self.kind == Kind::Hyperbolic
    }

    /// Length of coordinate vectors.
    pub fn ambient(&self) -> usize {
        match self.kind {
            Kind::Euclidean => self.dim,
            Kind::Hyperbolic => self.dim + 1,
        }
    }

    /// Ambient bilinear form: dot product, or the Minkowski form.
    /// Restricted to a tangent space it is the Riemannian metric in both models.
    pub fn form<T: Real>(&self, a: &[T], b: &[T]) -> T {
        match self.kind {
            Kind::Euclidean => linalg::dot(a, b),
            Kind::Hyperbolic => linalg::dot(&a[1..], &b[1..]) - a[0] * b[0],
        }
    }

    /// `diag(-1, 1, ..., 1)` for hyperbolic space, the identity otherwise.
    pub fn eta<T: Real>(&self) -> Mat<T> {
        let mut d = vec![T::one(); self.ambient()];
        if self.is_hyperbolic() {
            d[0] = -T::one();
        }
        Mat::diag(&d)
    }

    fn apply_eta<T: Real>(&self, v: &[T]) -> Vec<T> {
        let mut out = v.to_vec();
        if self.is_hyperbolic() {
            out[0] = -out[0];
        }
        out
    }

    pub fn origin<T: Real>(&self) -> Point<T> {
        let mut c = vec![T::zero(); self.ambient()];
        if self.is_hyperbolic() {
            c[0] = T::one();
        }
        Point::new(c)
    }

    pub fn check_point<T: Real>(&self, p: &Point<T>, tol: T) -> Result<()> {
        if p.coords.len() != self.ambient() {
            return Err(GeometryError::Shape { expected: self.ambient(), got: p.coords.len() });
        }
        if self.is_hyperbolic() {
            let r = (self.form(&p.coords, &p.coords) + T::one()).abs();
            // Residual scales with the squared coordinate magnitude.
            let scale = T::one().max(p.coords[0] * p.coords[0]);
            if r > tol * scale || p.coords[0] <= T::zero() {
                return Err(GeometryError::OffSheet(r.as_f64()));
            }
        }
        Ok(())
    }

    pub fn check_tangent<T: Real>(&self, v: &Tangent<T>, tol: T) -> Result<()> {
        self.check_point(&v.base, tol)?;
        if v.vec.len() != self.ambient() {
            return Err(GeometryError::Shape { expected: self.ambient(), got: v.vec.len() });
        }
        if self.is_hyperbolic() {
            let r = self.form(&v.base.coords, &v.vec).abs();
            let scale = T::one().max(v.base.coords[0] * linalg::norm(&v.vec));
            if r > tol * scale {
                return Err(GeometryError::NotTangent(r.as_f64()));
            }
        }
        Ok(())
    }

    /// Re-projects a hyperbolic point onto the upper sheet.
    pub fn normalize_point<T: Real>(&self, p: &Point<T>) -> Point<T> {
        if !self.is_hyperbolic() {
            return p.clone();
        }
        let q = -self.form(&p.coords, &p.coords);
        let s = if q > T::zero() { q.sqrt() } else { T::one() };
        let s = if p.coords[0] < T::zero() { -s } else { s };
        Point::new(linalg::scale(&p.coords, T::one() / s))
    }

    pub fn distance<T: Real>(&self, p: &Point<T>, q: &Point<T>) -> Result<T> {
        for x in [p, q] {
            if x.coords.len() != self.ambient() {
                return Err(GeometryError::Shape { expected: self.ambient(), got: x.coords.len() });
            }
        }
        Ok(self.dist(p, q))
    }

    /// Unchecked distance. Hyperbolic distances use `2 asinh(|p - q| / 2)`,
    /// which stays accurate for nearby points where `acosh(-<p, q>)` does not.
    pub fn dist<T: Real>(&self, p: &Point<T>, q: &Point<T>) -> T {
        let d = linalg::sub(&p.coords, &q.coords);
        match self.kind {
            Kind::Euclidean => linalg::norm(&d),
            Kind::Hyperbolic => {
                let chord = self.form(&d, &d).max(T::zero()).sqrt();
                T::lit(2.0) * (chord / T::lit(2.0)).asinh()
            }
        }
    }

    /// Riemannian norm of a tangent vector.
    pub fn tnorm<T: Real>(&self, v: &[T]) -> T {
        self.form(v, v).max(T::zero()).sqrt()
    }

    /// Projects an ambient vector onto the tangent space at `p`.
    pub fn project_tangent<T: Real>(&self, p: &Point<T>, w: &[T]) -> Vec<T> {
        match self.kind {
            Kind::Euclidean => w.to_vec(),
            Kind::Hyperbolic => linalg::axpy(w, self.form(w, &p.coords), &p.coords),
        }
    }

    pub fn unit<T: Real>(&self, v: &[T]) -> Option<Vec<T>> {
        let n = self.tnorm(v);
        if n <= T::epsilon() * T::lit(16.0) {
            None
        } else {
            Some(linalg::scale(v, T::one() / n))
        }
    }

    /// Unit tangent at `p` pointing along the geodesic toward `q`.
    pub fn direction<T: Real>(&self, p: &Point<T>, q: &Point<T>) -> Option<Tangent<T>> {
        let w = match self.kind {
            Kind::Euclidean => linalg::sub(&q.coords, &p.coords),
            Kind::Hyperbolic => self.project_tangent(p, &q.coords),
        };
        self.unit(&w).map(|v| Tangent::new(p.clone(), v))
    }

    /// `exp_x(t v)` for a unit tangent `v` at `x`.
    pub fn geodesic_point<T: Real>(&self, x: &Point<T>, v: &[T], t: T) -> Point<T> {
        match self.kind {
            Kind::Euclidean => Point::new(linalg::axpy(&x.coords, t, v)),
            Kind::Hyperbolic => {
                let c = linalg::scale(&x.coords, t.cosh());
                Point::new(linalg::axpy(&c, t.sinh(), v))
            }
        }
    }

    /// Velocity at parameter `t` of the unit-speed geodesic `t -> exp_x(t v)`.
    pub fn geodesic_velocity<T: Real>(&self, x: &Point<T>, v: &[T], t: T) -> Vec<T> {
        match self.kind {
            Kind::Euclidean => v.to_vec(),
            Kind::Hyperbolic => {
                let c = linalg::scale(&x.coords, t.sinh());
                linalg::axpy(&c, t.cosh(), v)
            }
        }
    }

    /// A unit tangent at `p` orthogonal to every vector in `others` (which must
    /// be tangent at `p`, or `p` itself). Needs exactly `dim - 1` tangent
    /// vectors. The sign is unspecified.
    pub fn orthogonal_tangent<T: Real>(&self, p: &Point<T>, others: &[&[T]]) -> Option<Vec<T>> {
        let mut vs: Vec<&[T]> = Vec::with_capacity(self.ambient() - 1);
        if self.is_hyperbolic() {
            vs.push(&p.coords);
        }
        vs.extend_from_slice(others);
        if vs.len() + 1 != self.ambient() {
            return None;
        }
        let c = linalg::cross(&vs);
        let t = self.apply_eta(&c);
        self.unit(&t)
    }

    /// Dimension 2 only: the unit tangent `n` at `p` making `(t, n)` a
    /// positively oriented orthonormal frame.
    pub fn left_normal<T: Real>(&self, p: &Point<T>, t: &[T]) -> Option<Vec<T>> {
        debug_assert_eq!(self.dim, 2);
        let n = self.orthogonal_tangent(p, &[t])?;
        let det = match self.kind {
            Kind::Euclidean => t[0] * n[1] - t[1] * n[0],
            Kind::Hyperbolic => Mat::from_cols(&[p.coords.clone(), t.to_vec(), n.clone()])
                .unwrap()
                .determinant(),
        };
        Some(if det < T::zero() { linalg::scale(&n, -T::one()) } else { n })
    }

    /// Projective (Klein) chart; geodesics are straight lines in it.
    /// The identity for Euclidean space.
    pub fn klein<T: Real>(&self, p: &Point<T>) -> Vec<T> {
        match self.kind {
            Kind::Euclidean => p.coords.clone(),
            Kind::Hyperbolic => p.coords[1..].iter().map(|&x| x / p.coords[0]).collect(),
        }
    }

    pub fn from_klein<T: Real>(&self, k: &[T]) -> Option<Point<T>> {
        match self.kind {
            Kind::Euclidean => Some(Point::new(k.to_vec())),
            Kind::Hyperbolic => {
                let r2 = linalg::dot(k, k);
                if r2 >= T::one() {
                    return None;
                }
                let s = T::one() / (T::one() - r2).sqrt();
                let mut c = vec![s];
                c.extend(k.iter().map(|&x| x * s));
                Some(Point::new(c))
            }
        }
    }

    /// Conformal disk/ball chart; the identity for Euclidean space.
    pub fn poincare<T: Real>(&self, p: &Point<T>) -> Vec<T> {
        match self.kind {
            Kind::Euclidean => p.coords.clone(),
            Kind::Hyperbolic => p.coords[1..].iter().map(|&x| x / (T::one() + p.coords[0])).collect(),
        }
    }

    /// Angle from `from` to `to`, counterclockwise with respect to the
    /// orientation of the plane spanned by the ordered pair `orient`, in `[0, 2π)`.
    pub fn oriented_angle<T: Real>(
        &self,
        from: &Tangent<T>,
        to: &Tangent<T>,
        orient: (&Tangent<T>, &Tangent<T>),
        tol: T,
    ) -> Result<T> {
        let e1 = self.unit(&orient.0.vec).ok_or(GeometryError::DegenerateOrientation)?;
        let w = linalg::axpy(&orient.1.vec, -self.form(&orient.1.vec, &e1), &e1);
        let wn = self.tnorm(&w);
        if wn <= tol * T::one().max(self.tnorm(&orient.1.vec)) {
            return Err(GeometryError::DegenerateOrientation);
        }
        let e2 = linalg::scale(&w, T::one() / wn);
        let arg = |v: &[T]| self.form(v, &e2).atan2(self.form(v, &e1));
        let tau = T::two_pi();
        let mut a = arg(&to.vec) - arg(&from.vec);
        while a < T::zero() {
            a = a + tau;
        }
        while a >= tau {
            a = a - tau;
        }
        Ok(a)
    }
}

/// Rigid motion: `x -> linear * x + translation`. The translation is zero in
/// the hyperbolic model.
#[derive(Debug, Clone, PartialEq)]
pub struct Isometry<T> {
    space: ModelSpace,
    linear: Mat<T>,
    translation: Vec<T>,
}

impl<T: Real> Isometry<T> {
    pub fn identity(space: ModelSpace) -> Self {
        let n = space.ambient();
        Isometry { space, linear: Mat::identity(n), translation: vec![T::zero(); n] }
    }

    /// Validated constructor. For hyperbolic space `translation` must be empty
    /// or zero.
    pub fn new(space: ModelSpace, linear: Mat<T>, translation: Vec<T>, tol: T) -> Result<Self> {
        let n = space.ambient();
        if linear.dim() != n {
            return Err(GeometryError::Shape { expected: n, got: linear.dim() });
        }
        let translation = if translation.is_empty() { vec![T::zero(); n] } else { translation };
        if translation.len() != n {
            return Err(GeometryError::Shape { expected: n, got: translation.len() });
        }
        let g = Isometry { space, linear, translation };
        let dev = g.isometry_defect();
        if dev > tol {
            return Err(GeometryError::NotIsometry(dev.as_f64()));
        }
        if space.is_hyperbolic() {
            let t = g.translation.iter().fold(T::zero(), |m, &x| m.max(x.abs()));
            if t > tol {
                return Err(GeometryError::NotIsometry(t.as_f64()));
            }
            if g.linear[(0, 0)] <= T::zero() {
                return Err(GeometryError::NotIsometry(f64::INFINITY));
            }
        }
        Ok(g)
    }

    pub(crate) fn from_parts_unchecked(space: ModelSpace, linear: Mat<T>, translation: Vec<T>) -> Self {
        Isometry { space, linear, translation }
    }

    pub fn space(&self) -> ModelSpace {
        self.space
    }

    pub fn linear(&self) -> &Mat<T> {
        &self.linear
    }

    pub fn translation(&self) -> &[T] {
        &self.translation
    }

    /// Largest entry of the linear part, at least 1. Rounding in products of
    /// matrices grows with it; hyperbolic isometries moving points far from the
    /// origin have entries of order `cosh` of the distance.
    pub fn magnitude(&self) -> T {
        T::one().max(self.linear.max_abs())
    }

    /// Max-norm of `Q^T Q - 1` (Euclidean) or `A^T η A - η` (hyperbolic),
    /// divided by the squared magnitude.
    pub fn isometry_defect(&self) -> T {
        let eta = self.space.eta::<T>();
        let g = self.linear.transpose().mul(&eta).mul(&self.linear);
        let m = self.magnitude();
        g.max_abs_diff(&eta) / (m * m)
    }

    pub fn translation_2d(v: [T; 2]) -> Self {
        let mut g = Self::identity(ModelSpace::euclidean(2));
        g.translation = v.to_vec();
        g
    }

    pub fn euclidean_translation(space: ModelSpace, v: Vec<T>) -> Self {
        debug_assert!(!space.is_hyperbolic());
        let mut g = Self::identity(space);
        g.translation = v;
        g
    }

    /// Rotation by `theta` about the origin of E^2.
    pub fn rotation_2d(theta: T) -> Self {
        let (s, c) = theta.sin_cos();
        let m = Mat::from_rows(&[vec![c, -s], vec![s, c]]).unwrap();
        Isometry::from_parts_unchecked(ModelSpace::euclidean(2), m, vec![T::zero(); 2])
    }

    /// Hyperbolic rotation by `theta` in the `(x1, x2)` plane, fixing the origin.
    pub fn hyperbolic_rotation(dim: usize, theta: T) -> Self {
        let space = ModelSpace::hyperbolic(dim);
        let mut m = Mat::identity(dim + 1);
        let (s, c) = theta.sin_cos();
        m[(1, 1)] = c;
        m[(1, 2)] = -s;
        m[(2, 1)] = s;
        m[(2, 2)] = c;
        Isometry::from_parts_unchecked(space, m, vec![T::zero(); dim + 1])
    }

    /// Hyperbolic translation by distance `t` along the geodesic through the
    /// origin in direction `e_axis` (`axis` in `1..=dim`).
    pub fn boost(dim: usize, axis: usize, t: T) -> Self {
        let space = ModelSpace::hyperbolic(dim);
        let mut m = Mat::identity(dim + 1);
        let (ch, sh) = (t.cosh(), t.sinh());
        m[(0, 0)] = ch;
        m[(axis, axis)] = ch;
        m[(0, axis)] = sh;
        m[(axis, 0)] = sh;
        Isometry::from_parts_unchecked(space, m, vec![T::zero(); dim + 1])
    }

    /// The isometry carrying the orthonormal frame `src` onto `dst`.
    pub fn from_frames(space: ModelSpace, src: &Frame<T>, dst: &Frame<T>) -> Self {
        let cols = |f: &Frame<T>, with_point: bool| {
            let mut c = Vec::new();
            if with_point {
                c.push(f.point.coords.clone());
            }
            c.extend(f.basis.iter().cloned());
            Mat::from_cols(&c).unwrap()
        };
        match space.kind {
            Kind::Euclidean => {
                let u = cols(src, false);
                let v = cols(dst, false);
                let q = v.mul(&u.transpose());
                let qp = q.mul_vec(&src.point.coords);
                let b = linalg::sub(&dst.point.coords, &qp);
                Isometry::from_parts_unchecked(space, q, b)
            }
            Kind::Hyperbolic => {
                let eta = space.eta::<T>();
                let f = cols(src, true);
                let g = cols(dst, true);
                let a = g.mul(&eta).mul(&f.transpose()).mul(&eta);
                Isometry::from_parts_unchecked(space, a, vec![T::zero(); space.ambient()])
            }
        }
    }

    pub fn apply(&self, p: &Point<T>) -> Point<T> {
        Point::new(linalg::add(&self.linear.mul_vec(&p.coords), &self.translation))
    }

    pub fn apply_vec(&self, v: &[T]) -> Vec<T> {
        self.linear.mul_vec(v)
    }

    pub fn differential(&self, v: &Tangent<T>) -> Tangent<T> {
        Tangent::new(self.apply(&v.base), self.linear.mul_vec(&v.vec))
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &Self) -> Self {
        let linear = self.linear.mul(&other.linear);
        let translation = linalg::add(&self.linear.mul_vec(&other.translation), &self.translation);
        Isometry::from_parts_unchecked(self.space, linear, translation)
    }

    pub fn inverse(&self) -> Self {
        match self.space.kind {
            Kind::Euclidean => {
                let qt = self.linear.transpose();
                let b = linalg::scale(&qt.mul_vec(&self.translation), -T::one());
                Isometry::from_parts_unchecked(self.space, qt, b)
            }
            Kind::Hyperbolic => {
                let eta = self.space.eta::<T>();
                let a = eta.mul(&self.linear.transpose()).mul(&eta);
                Isometry::from_parts_unchecked(self.space, a, self.translation.clone())
            }
        }
    }

    pub fn power(&self, k: usize) -> Self {
        let mut acc = Isometry::identity(self.space);
        for i in 0..k {
            acc = acc.compose(self);
            if (i + 1) % 32 == 0 {
                acc = acc.renormalized();
            }
        }
        acc
    }

    /// Max-norm distance between the matrices and translations.
    pub fn deviation(&self, other: &Self) -> T {
        self.linear
            .max_abs_diff(&other.linear)
            .max(linalg::max_abs_diff(&self.translation, &other.translation))
    }

    pub fn identity_deviation(&self) -> T {
        self.deviation(&Isometry::identity(self.space))
    }

    pub fn is_identity(&self, tol: T) -> bool {
        self.identity_deviation() < tol
    }

    /// One Newton step toward the isometry group: `A <- (A + η A^{-T} η) / 2`.
    pub fn renormalized(&self) -> Self {
        let eta = self.space.eta::<T>();
        match self.linear.inverse() {
            Some(inv) => {
                let corr = eta.mul(&inv.transpose()).mul(&eta);
                let linear = self.linear.add(&corr).scale(T::lit(0.5));
                Isometry::from_parts_unchecked(self.space, linear, self.translation.clone())
            }
            None => self.clone(),
        }
    }
}

/// A base point with an orthonormal basis of its tangent space.
#[derive(Debug, Clone, PartialEq)]
pub struct Frame<T> {
    pub point: Point<T>,
    pub basis: Vec<Vec<T>>,
}

impl<T: Real> Frame<T> {
    /// Positively oriented frame in dimension 2 with first vector `t`.
    pub fn oriented_2d(space: &ModelSpace, point: Point<T>, t: Vec<T>) -> Option<Self> {
        let t = space.unit(&space.project_tangent(&point, &t))?;
        let n = space.left_normal(&point, &t)?;
        Some(Frame { point, basis: vec![t, n] })
    }
}

/// Totally geodesic hyperplane. Euclidean: `{x : u·x = c}` with unit `u`.
/// Hyperbolic: `{x : <x, u> = 0}` with `<u, u> = 1`. `eval` is positive on the
/// side `u` points to.
#[derive(Debug, Clone, PartialEq)]
pub struct Hyperplane<T> {
    pub normal: Vec<T>,
    pub offset: T,
}

impl<T: Real> Hyperplane<T> {
    pub fn new(space: &ModelSpace, normal: Vec<T>, offset: T, tol: T) -> Result<Self> {
        if normal.len() != space.ambient() {
            return Err(GeometryError::Shape { expected: space.ambient(), got: normal.len() });
        }
        let dev = (space.form(&normal, &normal) - T::one()).abs();
        if dev > tol {
            return Err(GeometryError::BadNormal(dev.as_f64()));
        }
        let offset = if space.is_hyperbolic() { T::zero() } else { offset };
        Ok(Hyperplane { normal, offset })
    }

    /// Normalizes `normal` (and scales `offset` with it).
    pub fn normalized(space: &ModelSpace, normal: Vec<T>, offset: T) -> Result<Self> {
        let q = space.form(&normal, &normal);
        if q <= T::epsilon() {
            return Err(GeometryError::Degenerate("hyperplane normal must be spacelike"));
        }
        let s = T::one() / q.sqrt();
        Ok(Hyperplane {
            normal: linalg::scale(&normal, s),
            offset: if space.is_hyperbolic() { T::zero() } else { offset * s },
        })
    }

    /// The hyperplane through `p` orthogonal to the unit tangent `n` at `p`.
    pub fn through(space: &ModelSpace, p: &Point<T>, n: &[T]) -> Self {
        match space.kind {
            Kind::Euclidean => Hyperplane { normal: n.to_vec(), offset: linalg::dot(n, &p.coords) },
            Kind::Hyperbolic => Hyperplane { normal: n.to_vec(), offset: T::zero() },
        }
    }

    pub fn eval(&self, space: &ModelSpace, x: &[T]) -> T {
        match space.kind {
            Kind::Euclidean => linalg::dot(&self.normal, x) - self.offset,
            Kind::Hyperbolic => space.form(x, &self.normal),
        }
    }

    /// Signed geodesic distance from `x` to the hyperplane.
    pub fn signed_distance(&self, space: &ModelSpace, x: &Point<T>) -> T {
        let e = self.eval(space, &x.coords);
        match space.kind {
            Kind::Euclidean => e,
            Kind::Hyperbolic => e.asinh(),
        }
    }

    /// Unit normal at `x` (not necessarily on the hyperplane), pointing to the
    /// positive side.
    pub fn normal_at(&self, space: &ModelSpace, x: &Point<T>) -> Tangent<T> {
        let v = space.project_tangent(x, &self.normal);
        let v = space.unit(&v).unwrap_or_else(|| self.normal.clone());
        Tangent::new(x.clone(), v)
    }

    /// Nearest point of the hyperplane to `x`.
    pub fn foot(&self, space: &ModelSpace, x: &Point<T>) -> Point<T> {
        let e = self.eval(space, &x.coords);
        match space.kind {
            Kind::Euclidean => Point::new(linalg::axpy(&x.coords, -e, &self.normal)),
            Kind::Hyperbolic => {
                let v = linalg::axpy(&x.coords, -e, &self.normal);
                Point::new(linalg::scale(&v, T::one() / (T::one() + e * e).sqrt()))
            }
        }
    }

    pub fn negated(&self) -> Self {
        Hyperplane { normal: linalg::scale(&self.normal, -T::one()), offset: -self.offset }
    }

    /// Image of the hyperplane under `g`, with the same positive side.
    pub fn transformed(&self, space: &ModelSpace, g: &Isometry<T>) -> Self {
        let normal = g.apply_vec(&self.normal);
        let offset = match space.kind {
            Kind::Euclidean => self.offset + linalg::dot(&normal, g.translation()),
            Kind::Hyperbolic => T::zero(),
        };
        Hyperplane { normal, offset }
    }
}

/// Values along the unit-speed geodesic `t -> exp_p(t d)` of a hyperplane's
/// `eval` have the form `a f(t) + b g(t)` with `(f, g) = (1, t)` in Euclidean
/// space and `(cosh t, sinh t)` in hyperbolic space. Returns `(a, b)`.
pub fn along_geodesic<T: Real>(space: &ModelSpace, h: &Hyperplane<T>, p: &Point<T>, d: &[T]) -> (T, T) {
    match space.kind {
        Kind::Euclidean => (h.eval(space, &p.coords), linalg::dot(&h.normal, d)),
        Kind::Hyperbolic => (space.form(&p.coords, &h.normal), space.form(d, &h.normal)),
    }
}

/// Closed parameter interval on which `a f(t) + b g(t) >= 0` (see
/// [`along_geodesic`]); `None` when empty. Ends may be infinite.
pub fn nonnegative_interval<T: Real>(space: &ModelSpace, a: T, b: T) -> Option<(T, T)> {
    let inf = T::infinity();
    let tiny = T::epsilon() * T::lit(64.0) * T::one().max(a.abs());
    if b.abs() <= tiny {
        return if a >= T::zero() { Some((-inf, inf)) } else { None };
    }
    match space.kind {
        Kind::Euclidean => {
            let root = -a / b;
            Some(if b > T::zero() { (root, inf) } else { (-inf, root) })
        }
        Kind::Hyperbolic => {
            // a + b tanh t >= 0
            let r = -a / b;
            if b > T::zero() {
                if r <= -T::one() {
                    Some((-inf, inf))
                } else if r >= T::one() {
                    None
                } else {
                    Some((r.atanh(), inf))
                }
            } else if r >= T::one() {
                Some((-inf, inf))
            } else if r <= -T::one() {
                None
            } else {
                Some((-inf, r.atanh()))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn e2() -> ModelSpace {
        ModelSpace::euclidean(2)
    }

    fn h2() -> ModelSpace {
        ModelSpace::hyperbolic(2)
    }

    #[test]
    fn distance_examples() {
        let p = Point::new(vec![1.0, 0.0, 0.0]);
        let q = Point::new(vec![1f64.cosh(), 1f64.sinh(), 0.0]);
        assert!((h2().distance(&p, &q).unwrap() - 1.0).abs() < 1e-14);
        assert_eq!(h2().distance(&p, &p).unwrap(), 0.0);
        let d: f64 = e2().distance(&Point::new(vec![0.0, 0.0]), &Point::new(vec![3.0, 4.0])).unwrap();
        assert!((d - 5.0).abs() < 1e-15);
    }

    #[test]
    fn distance_rejects_mismatched_space() {
        let p = Point::new(vec![1.0, 0.0, 0.0]);
        let q = Point::new(vec![0.0, 0.0]);
        assert!(matches!(h2().distance(&p, &q), Err(GeometryError::Shape { .. })));
    }

    #[test]
    fn apply_examples() {
        let p = Point::new(vec![1.0, 0.0]);
        assert_eq!(Isometry::identity(e2()).apply(&p), p);
        let r = Isometry::rotation_2d(FRAC_PI_2).apply(&p);
        assert!(linalg::max_abs_diff(&r.coords, &[0.0, 1.0]) < 1e-15);

        let t = 0.7;
        let b = Isometry::<f64>::boost(2, 1, t);
        let img = b.apply(&h2().origin());
        assert!(linalg::max_abs_diff(&img.coords, &[t.cosh(), t.sinh(), 0.0]) < 1e-15);
        assert!(b.isometry_defect() < 1e-14);
    }

    #[test]
    fn group_operations() {
        let g = Isometry::<f64>::boost(2, 1, 0.3).compose(&Isometry::hyperbolic_rotation(2, 1.1));
        assert!(g.compose(&g.inverse()).is_identity(1e-8));

        let a = Isometry::translation_2d([1.0, 0.0]);
        let b = Isometry::translation_2d([0.0, 1.0]);
        let comm = a.compose(&b).compose(&a.inverse()).compose(&b.inverse());
        assert!(comm.is_identity(1e-12));

        let rho = Isometry::rotation_2d(FRAC_PI_2);
        assert!(rho.power(4).is_identity(1e-8));
        assert!(!rho.is_identity(1e-8));
    }

    #[test]
    fn oriented_angle_examples() {
        let o = Point::new(vec![0.0, 0.0]);
        let t = |x: f64, y: f64| Tangent::new(o.clone(), vec![x, y]);
        let s = e2();
        assert_eq!(s.oriented_angle(&t(1.0, 0.0), &t(1.0, 0.0), (&t(1.0, 0.0), &t(0.0, 1.0)), 1e-9).unwrap(), 0.0);
        let a = s.oriented_angle(&t(1.0, 0.0), &t(0.0, 1.0), (&t(1.0, 0.0), &t(0.0, 1.0)), 1e-9).unwrap();
        assert!((a - FRAC_PI_2).abs() < 1e-15);
        let a = s.oriented_angle(&t(1.0, 0.0), &t(0.0, 1.0), (&t(1.0, 0.0), &t(0.0, -1.0)), 1e-9).unwrap();
        assert!((a - 3.0 * FRAC_PI_2).abs() < 1e-15);
        assert_eq!(
            s.oriented_angle(&t(1.0, 0.0), &t(0.0, 1.0), (&t(1.0, 0.0), &t(2.0, 0.0)), 1e-9),
            Err(GeometryError::DegenerateOrientation)
        );
    }

    #[test]
    fn geodesic_point_examples() {
        let x = Point::new(vec![0.0, 0.0]);
        assert_eq!(e2().geodesic_point(&x, &[1.0, 0.0], 0.0), x);
        assert_eq!(e2().geodesic_point(&x, &[1.0, 0.0], 2.0).coords, vec![2.0, 0.0]);
        let o = h2().origin();
        let p = h2().geodesic_point(&o, &[0.0, 1.0, 0.0], 1.0);
        assert!(linalg::max_abs_diff(&p.coords, &[1f64.cosh(), 1f64.sinh(), 0.0]) < 1e-15);
    }

    #[test]
    fn frames_map_onto_frames() {
        let s = h2();
        let p = s.geodesic_point(&s.origin(), &[0.0, 0.6, 0.8], 0.9);
        let q = s.geodesic_point(&s.origin(), &[0.0, -1.0, 0.0], 0.4);
        let fp = Frame::oriented_2d(&s, p.clone(), vec![0.0, 1.0, 0.0]).unwrap();
        let fq = Frame::oriented_2d(&s, q.clone(), vec![0.0, 0.0, 1.0]).unwrap();
        let g = Isometry::from_frames(s, &fp, &fq);
        assert!(g.isometry_defect() < 1e-12);
        assert!(s.dist(&g.apply(&p), &q) < 1e-12);
        let img = g.apply_vec(&fp.basis[0]);
        assert!(linalg::max_abs_diff(&img, &fq.basis[0]) < 1e-12);
        assert!(g.linear().determinant() > 0.0);
    }

    #[test]
    fn left_normal_matches_chart_orientation_at_origin() {
        let n = h2().left_normal(&h2().origin(), &[0.0, 1.0, 0.0]).unwrap();
        assert!(linalg::max_abs_diff(&n, &[0.0, 0.0, 1.0]) < 1e-15);
        let n = e2().left_normal(&Point::new(vec![3.0, 1.0]), &[1.0, 0.0]).unwrap();
        assert!(linalg::max_abs_diff(&n, &[0.0, 1.0]) < 1e-15);
    }

    #[test]
    fn hyperplane_distance_and_foot() {
        let s = h2();
        let u = vec![0.5f64.sinh(), 0.5f64.cosh(), 0.0];
        let h = Hyperplane::new(&s, u, 0.0, 1e-12).unwrap();
        // origin is at signed distance -0.5 (line sits at x1-distance +0.5)
        assert!((h.signed_distance(&s, &s.origin()) + 0.5).abs() < 1e-14);
        let f = h.foot(&s, &s.origin());
        assert!(h.eval(&s, &f.coords).abs() < 1e-15);
        assert!((s.dist(&f, &s.origin()) - 0.5).abs() < 1e-14);
    }

    #[test]
    fn interval_solver() {
        let e = e2();
        assert_eq!(nonnegative_interval(&e, 1.0, -2.0), Some((f64::NEG_INFINITY, 0.5)));
        assert_eq!(nonnegative_interval(&e, -1.0, 0.0), None);
        let h = h2();
        assert_eq!(nonnegative_interval(&h, 2.0, 1.0), Some((f64::NEG_INFINITY, f64::INFINITY)));
        assert_eq!(nonnegative_interval(&h, -2.0, 1.0), None);
        let (lo, hi) = nonnegative_interval(&h, 0.0, 1.0).unwrap();
        assert_eq!((lo, hi), (0.0, f64::INFINITY));
    }

    #[test]
    fn works_in_single_precision() {
        let b = Isometry::<f32>::boost(2, 2, 0.5);
        let p = ModelSpace::hyperbolic(2).origin::<f32>();
        let q = b.apply(&p);
        assert!((ModelSpace::hyperbolic(2).dist(&p, &q) - 0.5).abs() < 1e-5);
        assert!((Isometry::<f32>::rotation_2d(PI as f32).power(2).identity_deviation()) < 1e-5);
    }
}
