//! Formal balls over a finite metric space with exact rational distances.
//!
//! `B(a, r) ≺ B(a', r')` iff `d(a, a') + r < r'`. Radii are dyadic rationals
//! bounded by a configured maximum; a refinement budget `b` admits
//! denominators up to `base · 2^b`.

use std::collections::HashMap;

use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::generated::GeneratedPoset;

use super::ConstructionError;

pub type Rational = Ratio<i64>;

/// Parses `n`, `n/d` or `-n/d`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().ok()?;
            let d: i64 = d.trim().parse().ok()?;
            (d != 0).then(|| Rational::new(n, d))
        }
        None => s.trim().parse::<i64>().ok().map(Rational::from_integer),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMetric {
    name: String,
    points: Vec<String>,
    dist: Vec<Rational>,
}

impl RationalMetric {
    /// Builds a metric from distance entries. A pair given in one direction
    /// only is mirrored; the diagonal defaults to zero. Every off-diagonal
    /// pair must be covered.
    pub fn from_entries(
        name: &str,
        points: Vec<String>,
        entries: &[(usize, usize, Rational)],
    ) -> Result<Self, ConstructionError> {
        let n = points.len();
        let mut given: HashMap<(usize, usize), Rational> = HashMap::new();
        for &(a, b, d) in entries {
            if a >= n || b >= n {
                return Err(ConstructionError::PointOutOfRange(a.max(b)));
            }
            if let Some(old) = given.insert((a, b), d) {
                if old != d {
                    return Err(ConstructionError::MetricAxiomViolation(format!(
                        "conflicting distances for {} {}",
                        points[a], points[b]
                    )));
                }
            }
        }
        let mut dist = vec![Rational::zero(); n * n];
        for a in 0..n {
            for b in 0..n {
                let d = match (given.get(&(a, b)), given.get(&(b, a))) {
                    (Some(&x), _) => x,
                    (None, Some(&y)) => y,
                    (None, None) if a == b => Rational::zero(),
                    (None, None) => {
                        return Err(ConstructionError::MetricAxiomViolation(format!(
                            "missing distance between {} and {}",
                            points[a], points[b]
                        )))
                    }
                };
                dist[a * n + b] = d;
            }
        }
        let metric = Self {
            name: name.to_string(),
            points,
            dist,
        };
        metric.validate()?;
        Ok(metric)
    }

    fn validate(&self) -> Result<(), ConstructionError> {
        let n = self.len();
        let violation = |msg: String| Err(ConstructionError::MetricAxiomViolation(msg));
        for a in 0..n {
            for b in 0..n {
                let d = self.d(a, b);
                if d < Rational::zero() {
                    return violation(format!("negative distance {} {}", self.points[a], self.points[b]));
                }
                if (a == b) != d.is_zero() {
                    return violation(format!(
                        "identity of indiscernibles fails for {} {}",
                        self.points[a], self.points[b]
                    ));
                }
                if d != self.d(b, a) {
                    return violation(format!(
                        "asymmetric distance {} {}",
                        self.points[a], self.points[b]
                    ));
                }
                for c in 0..n {
                    if self.d(a, c) > d + self.d(b, c) {
                        return violation(format!(
                            "triangle inequality fails for {} {} {}",
                            self.points[a], self.points[b], self.points[c]
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// Points `p0 … p(n-1)` with all distances 1.
    pub fn uniform(n: usize) -> Self {
        let points = (0..n).map(|i| format!("p{i}")).collect();
        let mut entries = Vec::new();
        for a in 0..n {
            for b in (a + 1)..n {
                entries.push((a, b, Rational::one()));
            }
        }
        Self::from_entries(&format!("uniform{n}"), points, &entries).unwrap()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn point_index(&self, id: &str) -> Option<usize> {
        self.points.iter().position(|p| p == id)
    }

    pub fn d(&self, a: usize, b: usize) -> Rational {
        self.dist[a * self.len() + b]
    }

    pub fn min_positive_distance(&self) -> Option<Rational> {
        let n = self.len();
        (0..n)
            .flat_map(|a| ((a + 1)..n).map(move |b| (a, b)))
            .map(|(a, b)| self.d(a, b))
            .min()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FormalBall {
    pub center: usize,
    pub radius: Rational,
}

#[derive(Debug, Clone)]
pub struct FormalBallPoset {
    metric: RationalMetric,
    max_radius: Rational,
    base_denom: i64,
}

fn is_power_of_two(d: i64) -> bool {
    d > 0 && d & (d - 1) == 0
}

impl FormalBallPoset {
    /// `max_denom` is rounded down to a power of two.
    pub fn new(
        metric: RationalMetric,
        max_denom: i64,
        max_radius: Rational,
    ) -> Result<Self, ConstructionError> {
        if max_denom < 1 {
            return Err(ConstructionError::InvalidGrid("max denominator must be positive".into()));
        }
        if max_radius <= Rational::zero() || !is_power_of_two(*max_radius.denom()) {
            return Err(ConstructionError::InvalidGrid(
                "max radius must be a positive dyadic rational".into(),
            ));
        }
        let mut base = 1i64;
        while base * 2 <= max_denom {
            base *= 2;
        }
        Ok(Self {
            metric,
            max_radius,
            base_denom: base,
        })
    }

    pub fn metric(&self) -> &RationalMetric {
        &self.metric
    }

    pub fn max_radius(&self) -> Rational {
        self.max_radius
    }

    pub fn base_denom(&self) -> i64 {
        self.base_denom
    }

    pub fn grid_denom(&self, budget: usize) -> i64 {
        self.base_denom << budget
    }

    /// Every ball on the grid of the given budget, by center then radius.
    pub fn grid_balls(&self, budget: usize) -> Vec<FormalBall> {
        let denom = self.grid_denom(budget);
        let top = (self.max_radius * denom).floor().to_integer();
        (0..self.metric.len())
            .flat_map(|c| {
                (1..=top).map(move |k| FormalBall {
                    center: c,
                    radius: Rational::new(k, denom),
                })
            })
            .collect()
    }

    pub fn ball(&self, center: &str, radius: Rational) -> Option<FormalBall> {
        let center = self.metric.point_index(center)?;
        let ball = FormalBall { center, radius };
        self.on_grid(&ball).then_some(ball)
    }

    fn on_grid(&self, b: &FormalBall) -> bool {
        b.center < self.metric.len()
            && b.radius > Rational::zero()
            && b.radius <= self.max_radius
            && is_power_of_two(*b.radius.denom())
    }

    /// The strict relation `d(a, a') + r < r'`.
    pub fn strictly_below(&self, a: &FormalBall, b: &FormalBall) -> bool {
        self.metric.d(a.center, b.center) + a.radius < b.radius
    }

    /// Membership of a ball in the filter of point `x`: `d(x, a) < r`.
    pub fn point_filter_contains(&self, x: usize, b: &FormalBall) -> bool {
        self.metric.d(x, b.center) < b.radius
    }

    /// `B(x, R/2^j)` for `j = 0..len`.
    pub fn point_chain(&self, x: usize, len: usize) -> Vec<FormalBall> {
        (0..len)
            .map(|j| FormalBall {
                center: x,
                radius: self.max_radius / Rational::from_integer(1i64 << j),
            })
            .collect()
    }

    /// First index in the point chain of `x` whose ball lies in no other
    /// point's filter, searching `len` balls.
    pub fn separation_index(&self, x: usize, len: usize) -> Option<usize> {
        self.point_chain(x, len).iter().position(|b| {
            (0..self.metric.len()).all(|y| y == x || !self.point_filter_contains(y, b))
        })
    }

    /// Checks transitivity of the strict relation over all grid balls.
    /// Returns the first failing triple.
    pub fn check_transitivity(&self, budget: usize) -> Option<(FormalBall, FormalBall, FormalBall)> {
        let balls = self.grid_balls(budget);
        for a in &balls {
            for b in balls.iter().filter(|b| self.strictly_below(a, b)) {
                for c in balls.iter().filter(|c| self.strictly_below(b, c)) {
                    if !self.strictly_below(a, c) {
                        return Some((*a, *b, *c));
                    }
                }
            }
        }
        None
    }
}

impl GeneratedPoset for FormalBallPoset {
    type Elem = FormalBall;

    fn encode(&self, e: &FormalBall) -> String {
        format!("B({},{})", self.metric.points[e.center], e.radius)
    }

    fn decode(&self, code: &str) -> Option<FormalBall> {
        let inner = code.strip_prefix("B(")?.strip_suffix(')')?;
        let (center, radius) = inner.split_once(',')?;
        self.ball(center.trim(), parse_rational(radius)?)
    }

    fn leq(&self, a: &FormalBall, b: &FormalBall) -> bool {
        a == b || self.strictly_below(a, b)
    }

    fn refinements(&self, a: &FormalBall, budget: usize) -> Vec<FormalBall> {
        self.grid_balls(budget)
            .into_iter()
            .filter(|b| self.strictly_below(b, a))
            .collect()
    }

    fn roots(&self) -> Vec<FormalBall> {
        (0..self.metric.len())
            .map(|c| FormalBall {
                center: c,
                radius: self.max_radius,
            })
            .collect()
    }

    /// Exact: some small ball lies below both iff some center is strictly
    /// inside both balls.
    fn incompatible(&self, a: &FormalBall, b: &FormalBall, _budget: usize) -> bool {
        (0..self.metric.len()).all(|c| {
            (a.radius - self.metric.d(c, a.center)).min(b.radius - self.metric.d(c, b.center))
                <= Rational::zero()
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_points() -> FormalBallPoset {
        FormalBallPoset::new(RationalMetric::uniform(2), 8, Rational::from_integer(4)).unwrap()
    }

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn strict_inequality_examples() {
        let fb = two_points();
        let small = fb.decode("B(p0,1/2)").unwrap();
        assert!(fb.lt(&small, &fb.decode("B(p1,2)").unwrap()));
        assert!(!fb.leq(&small, &fb.decode("B(p1,1)").unwrap()));
        let chain: Vec<FormalBall> = (1..=6).map(|k| fb.ball("p0", r(1, 1 << k)).unwrap()).collect();
        for w in chain.windows(2) {
            assert!(fb.lt(&w[1], &w[0]));
        }
        assert_eq!(fb.encode(&small), "B(p0,1/2)");
    }

    #[test]
    fn decode_rejects_off_grid() {
        let fb = two_points();
        assert!(fb.decode("B(p0,1/3)").is_none());
        assert!(fb.decode("B(p0,5)").is_none());
        assert!(fb.decode("B(p9,1)").is_none());
        assert!(fb.decode("B(p0,0)").is_none());
    }

    #[test]
    fn refinements_are_strict_and_monotone() {
        let fb = two_points();
        let root = fb.roots()[0];
        for b in 0..2 {
            let small = fb.refinements(&root, b);
            let big = fb.refinements(&root, b + 1);
            assert!(small.iter().all(|x| fb.lt(x, &root) && big.contains(x)));
        }
    }

    #[test]
    fn transitivity_on_grid() {
        assert_eq!(two_points().check_transitivity(0), None);
    }

    #[test]
    fn incompatibility_is_exact() {
        let fb = two_points();
        let a = fb.ball("p0", r(1, 2)).unwrap();
        let b = fb.ball("p1", r(1, 2)).unwrap();
        assert!(fb.incompatible(&a, &b, 0));
        let big = fb.ball("p1", r(3, 2)).unwrap();
        assert!(!fb.incompatible(&a, &big, 0));
    }

    #[test]
    fn point_chains_separate() {
        let fb = two_points();
        // δ = 1, radii 4, 2, 1, 1/2: the ball of radius 1 already excludes p1
        assert_eq!(fb.separation_index(0, 6), Some(2));
    }

    #[test]
    fn metric_validation() {
        let pts = vec!["a".to_string(), "b".to_string()];
        let err = RationalMetric::from_entries("m", pts.clone(), &[(0, 1, r(1, 1)), (1, 0, r(2, 1))])
            .unwrap_err();
        assert!(matches!(err, ConstructionError::MetricAxiomViolation(_)));
        let err = RationalMetric::from_entries("m", pts.clone(), &[]).unwrap_err();
        assert!(matches!(err, ConstructionError::MetricAxiomViolation(_)));
        let three = vec!["a".to_string(), "b".to_string(), "c".to_string()];
        let err = RationalMetric::from_entries(
            "m",
            three,
            &[(0, 1, r(1, 1)), (1, 2, r(1, 1)), (0, 2, r(3, 1))],
        )
        .unwrap_err();
        assert!(matches!(err, ConstructionError::MetricAxiomViolation(_)));
        assert_eq!(parse_rational("3/4"), Some(r(3, 4)));
        assert_eq!(parse_rational("2"), Some(r(2, 1)));
        assert_eq!(parse_rational("1/0"), None);
    }
}
