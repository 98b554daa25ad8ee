use serde::Serialize;

use crate::groebner::{solve_xy, PointSet};
use crate::polycore::Poly;
use crate::quadmap::QuadMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, PartialOrd, Ord)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CriticalKind {
    Empty,
    Finite,
    Curve,
    Plane,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CriticalReport {
    pub kind: CriticalKind,
    pub minors: Vec<Poly>,
    /// Solved zeros when `Finite`.
    pub points: Option<PointSet>,
    /// Normalized gcd of the minors when `Curve`.
    pub curve_poly: Option<Poly>,
    pub total_multiplicity: usize,
}

impl CriticalReport {
    /// Point multiplicities, descending; empty unless `Finite`.
    pub fn partition(&self) -> Vec<usize> {
        self.points.as_ref().map(|p| p.partition()).unwrap_or_default()
    }

    pub fn curve_degree(&self) -> Option<u32> {
        self.curve_poly.as_ref().map(|p| p.degree())
    }
}

pub fn critical_scheme(f: &QuadMap) -> CriticalReport {
    let minors: Vec<Poly> = f.jacobian_minors().into_iter().filter(|m| !m.is_zero()).collect();
    let mut report = CriticalReport {
        kind: CriticalKind::Plane,
        minors: f.jacobian_minors(),
        points: None,
        curve_poly: None,
        total_multiplicity: 0,
    };
    if minors.is_empty() {
        return report;
    }
    let g = Poly::gcd_all(&minors);
    if !g.is_constant() {
        report.kind = CriticalKind::Curve;
        report.curve_poly = Some(g);
        return report;
    }
    let pts = solve_xy(&minors).expect("coprime minors cut out finitely many points");
    if pts.length == 0 {
        report.kind = CriticalKind::Empty;
    } else {
        report.kind = CriticalKind::Finite;
        report.total_multiplicity = pts.length;
        report.points = Some(pts);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::PointCluster;
    use crate::polycore::rational::rat;
    use crate::quadmap::{map_from_ints, Field};

    #[test]
    fn generic_map_has_three_points() {
        let f1 = map_from_ints(Field::Complex, &[[1, 0, 0, 0, 1, 0], [0, 0, 1, 1, 0, 0], [0, 1, 0, 0, 0, 0]]);
        let r = critical_scheme(&f1);
        assert_eq!(r.kind, CriticalKind::Finite);
        assert_eq!(r.partition(), vec![1, 1, 1]);
        let pts = r.points.unwrap();
        assert!(pts.clusters.contains(&PointCluster::Rational { x: rat(1, 2), y: rat(1, 2), multiplicity: 1 }));
        assert_eq!(pts.real_distinct, 1);
    }

    #[test]
    fn triple_point_and_plane() {
        let f3 = map_from_ints(Field::Complex, &[[1, 0, 0, 0, 0, 0], [0, 0, 1, 1, 0, 0], [0, 1, 0, 0, 0, 0]]);
        let r = critical_scheme(&f3);
        assert_eq!(r.partition(), vec![3]);
        assert_eq!(r.total_multiplicity, 3);
        let f23 = map_from_ints(Field::Complex, &[[1, 0, 0, 0, 0, 0], [0, 0, 0, 1, 0, 0], [0; 6]]);
        assert_eq!(critical_scheme(&f23).kind, CriticalKind::Plane);
        let f7 = map_from_ints(Field::Complex, &[[1, 0, 0, 0, 1, 0], [0, 0, 1, 1, 0, 0], [0; 6]]);
        let r = critical_scheme(&f7);
        assert_eq!(r.kind, CriticalKind::Curve);
        assert_eq!(r.curve_poly.unwrap().to_string(), "x*y - 1/4");
    }
}
