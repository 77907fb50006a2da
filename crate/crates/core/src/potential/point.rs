use num_complex::Complex64;
use serde::Serialize;

/// A point of R^d.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Point(Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Self {
        Point(coords)
    }

    pub fn origin(dim: usize) -> Self {
        Point(vec![0.0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    /// Euclidean distance. Panics if dimensions differ.
    pub fn dist(&self, other: &Point) -> f64 {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }

    pub fn midpoint(&self, other: &Point) -> Point {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        Point(self.0.iter().zip(&other.0).map(|(a, b)| 0.5 * (a + b)).collect())
    }

    pub fn scaled(&self, factor: f64) -> Point {
        Point(self.0.iter().map(|c| c * factor).collect())
    }
}

impl From<Complex64> for Point {
    fn from(z: Complex64) -> Self {
        Point(vec![z.re, z.im])
    }
}

impl From<Vec<f64>> for Point {
    fn from(coords: Vec<f64>) -> Self {
        Point(coords)
    }
}

/// A closed or open ball; the distinction is made by the operations using it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Ball {
    pub center: Point,
    pub radius: f64,
}

impl Ball {
    pub fn new(center: Point, radius: f64) -> Self {
        debug_assert!(radius >= 0.0);
        Ball { center, radius }
    }

    /// Membership in the closed ball, compared with `<=`.
    pub fn contains_closed(&self, p: &Point) -> bool {
        self.center.dist(p) <= self.radius
    }

    pub fn contains_open(&self, p: &Point) -> bool {
        self.center.dist(p) < self.radius
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distances() {
        let a = Point::new(vec![0.0, 3.0]);
        let b = Point::new(vec![4.0, 0.0]);
        assert_eq!(a.dist(&b), 5.0);
        assert_eq!(b.norm(), 4.0);
        assert_eq!(a.midpoint(&b), Point::new(vec![2.0, 1.5]));
    }

    #[test]
    fn closed_ball_includes_its_sphere() {
        let ball = Ball::new(Point::origin(2), 0.5);
        let p = Point::new(vec![0.5, 0.0]);
        assert!(ball.contains_closed(&p));
        assert!(!ball.contains_open(&p));
    }
}
