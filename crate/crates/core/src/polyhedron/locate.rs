use crate::geometry::Point;
use crate::scalar::Real;

use super::build::chart_contains;
use super::{EdgeIx, FaceIx, Polyhedron, Shape};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Location {
    Interior,
    Face(FaceIx),
    Edge(EdgeIx),
    Exterior,
    Inconclusive { reason: String },
}

impl Location {
    pub fn is_boundary(&self) -> bool {
        matches!(self, Location::Face(_) | Location::Edge(_))
    }
}

impl<T: Real> Polyhedron<T> {
    /// Classifies `x` with tolerance `tol.mem`. Edges take precedence over
    /// faces; a point near a face carrier just outside the face bounds is
    /// reported inconclusive.
    pub fn locate(&self, x: &Point<T>) -> Location {
        let tau = self.tol.mem;
        let near_edge = (0..self.edges.len())
            .map(|e| (e, self.edge_distance(e, x)))
            .filter(|&(_, d)| d <= tau)
            .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
        if let Some((e, _)) = near_edge {
            return Location::Edge(e);
        }
        let mut on = Vec::new();
        for f in 0..self.faces.len() {
            if self.faces[f].carrier.signed_distance(&self.space, x).abs() > tau {
                continue;
            }
            let m = self.bound_margin(f, x);
            if m >= -tau {
                on.push(f);
            } else if m > -T::lit(10.0) * tau {
                return Location::Inconclusive {
                    reason: format!("within tolerance of face {} but just outside its bounds", self.faces[f].id),
                };
            }
        }
        match on.as_slice() {
            [f] => return Location::Face(*f),
            [a, b, ..] => {
                return Location::Inconclusive {
                    reason: format!("on faces {} and {} away from any edge", self.faces[*a].id, self.faces[*b].id),
                }
            }
            [] => {}
        }
        let inside = match &self.shape {
            Shape::Polygon { chart } => chart_contains(chart, &self.space.klein(x)),
            Shape::Convex => (0..self.faces.len()).all(|f| self.face_side(f, x) > T::zero()),
        };
        if inside {
            Location::Interior
        } else {
            Location::Exterior
        }
    }
}
