//! Finite topological spaces with point sets stored as bitmasks.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// A set of point indices, bit `i` standing for point `i`. Spaces have at
/// most 64 points.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Subset(pub u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn full(n: usize) -> Self {
        assert!(n <= 64);
        if n == 64 {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        Subset(1u64 << i)
    }

    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 & (1u64 << i) != 0
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1u64 << i;
    }

    pub fn union(self, other: Self) -> Self {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        Subset(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        Subset(self.0 & !other.0)
    }

    pub fn complement(self, n: usize) -> Self {
        Subset(!self.0 & Self::full(n).0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&i| self.contains(i))
    }

    pub fn first(self) -> Option<usize> {
        (!self.is_empty()).then(|| self.0.trailing_zeros() as usize)
    }

    /// Size first, then lexicographic on the sorted index list.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.iter().cmp(other.iter()))
    }

    /// All subsets of an `n`-point set, in numeric order.
    pub fn all(n: usize) -> impl Iterator<Item = Subset> {
        assert!(n < 32, "powerset too large");
        (0u64..(1u64 << n)).map(Subset)
    }
}

impl FromIterator<usize> for Subset {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = Subset::EMPTY;
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpaceError {
    #[error("too many points ({0}); at most 64 are supported")]
    TooManyPoints(usize),
    #[error("duplicate point {0}")]
    DuplicatePoint(String),
    #[error("unknown point {0}")]
    UnknownPoint(String),
    #[error("open set mentions point index {0} outside the space")]
    OutOfRange(usize),
}

/// A topology on finitely many named points.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteTopSpace {
    name: String,
    points: Vec<String>,
    // canonical order, including ∅ and the whole space
    opens: Vec<Subset>,
    basis: Vec<Subset>,
}

impl FiniteTopSpace {
    /// The topology generated by `subbasis`: finite intersections form the
    /// basis, unions of basis sets form the opens.
    pub fn from_subbasis(
        name: &str,
        points: Vec<String>,
        subbasis: &[Subset],
    ) -> Result<Self, SpaceError> {
        let n = points.len();
        if n > 64 {
            return Err(SpaceError::TooManyPoints(n));
        }
        let mut seen = BTreeSet::new();
        for p in &points {
            if !seen.insert(p.as_str()) {
                return Err(SpaceError::DuplicatePoint(p.clone()));
            }
        }
        let full = Subset::full(n);
        for s in subbasis {
            if !s.is_subset(full) {
                let bad = s.difference(full).first().unwrap();
                return Err(SpaceError::OutOfRange(bad));
            }
        }
        let mut basis: BTreeSet<Subset> = subbasis.iter().copied().collect();
        basis.insert(full);
        close_under(&mut basis, Subset::intersection);
        let mut opens = basis.clone();
        close_under(&mut opens, Subset::union);
        opens.insert(Subset::EMPTY);
        let mut opens: Vec<Subset> = opens.into_iter().collect();
        opens.sort_by(Subset::canonical_cmp);
        let mut basis: Vec<Subset> = basis.into_iter().filter(|b| !b.is_empty()).collect();
        basis.sort_by(Subset::canonical_cmp);
        Ok(Self {
            name: name.to_string(),
            points,
            opens,
            basis,
        })
    }

    pub fn from_named_subbasis<S: AsRef<str>>(
        name: &str,
        points: &[S],
        subbasis: &[Vec<S>],
    ) -> Result<Self, SpaceError> {
        let pts: Vec<String> = points.iter().map(|p| p.as_ref().to_string()).collect();
        let mut sets = Vec::with_capacity(subbasis.len());
        for members in subbasis {
            let mut s = Subset::EMPTY;
            for m in members {
                let i = pts
                    .iter()
                    .position(|p| p == m.as_ref())
                    .ok_or_else(|| SpaceError::UnknownPoint(m.as_ref().to_string()))?;
                s.insert(i);
            }
            sets.push(s);
        }
        Self::from_subbasis(name, pts, &sets)
    }

    /// Discrete space on points `p0, p1, …`.
    pub fn discrete(n: usize) -> Self {
        let points = (0..n).map(|i| format!("p{i}")).collect();
        let singletons: Vec<Subset> = (0..n).map(Subset::singleton).collect();
        Self::from_subbasis(&format!("discrete{n}"), points, &singletons).unwrap()
    }

    /// Opens `∅, {x}, {x, y}`.
    pub fn sierpinski() -> Self {
        Self::from_subbasis(
            "sierpinski",
            vec!["x".into(), "y".into()],
            &[Subset::singleton(0)],
        )
        .unwrap()
    }

    pub fn indiscrete(n: usize) -> Self {
        let points = (0..n).map(|i| format!("p{i}")).collect();
        Self::from_subbasis(&format!("indiscrete{n}"), points, &[]).unwrap()
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

    pub fn point(&self, i: usize) -> &str {
        &self.points[i]
    }

    pub fn point_index(&self, id: &str) -> Result<usize, SpaceError> {
        self.points
            .iter()
            .position(|p| p == id)
            .ok_or_else(|| SpaceError::UnknownPoint(id.to_string()))
    }

    pub fn subset_of<S: AsRef<str>>(&self, ids: &[S]) -> Result<Subset, SpaceError> {
        ids.iter().map(|id| self.point_index(id.as_ref())).collect()
    }

    pub fn full(&self) -> Subset {
        Subset::full(self.len())
    }

    /// All opens in canonical order.
    pub fn opens(&self) -> &[Subset] {
        &self.opens
    }

    pub fn nonempty_opens(&self) -> impl Iterator<Item = Subset> + '_ {
        self.opens.iter().copied().filter(|o| !o.is_empty())
    }

    /// Nonempty finite intersections of the subbasis, canonical order.
    pub fn basis(&self) -> &[Subset] {
        &self.basis
    }

    pub fn is_open(&self, s: Subset) -> bool {
        self.opens.contains(&s)
    }

    /// Largest open subset (the open kernel).
    pub fn interior(&self, s: Subset) -> Subset {
        self.opens
            .iter()
            .filter(|o| o.is_subset(s))
            .fold(Subset::EMPTY, |acc, &o| acc.union(o))
    }

    pub fn closure(&self, s: Subset) -> Subset {
        let n = self.len();
        self.interior(s.complement(n)).complement(n)
    }

    /// Minimal nonempty opens.
    pub fn open_atoms(&self) -> Vec<Subset> {
        let nonempty: Vec<Subset> = self.nonempty_opens().collect();
        nonempty
            .iter()
            .copied()
            .filter(|&o| !nonempty.iter().any(|&q| q != o && q.is_subset(o)))
            .collect()
    }

    /// Smallest open containing point `x`.
    pub fn minimal_neighbourhood(&self, x: usize) -> Subset {
        self.opens
            .iter()
            .filter(|o| o.contains(x))
            .fold(self.full(), |acc, &o| acc.intersection(o))
    }

    pub fn is_t0(&self) -> bool {
        (0..self.len()).all(|a| {
            ((a + 1)..self.len()).all(|b| {
                self.opens
                    .iter()
                    .any(|o| o.contains(a) != o.contains(b))
            })
        })
    }

    pub fn is_t1(&self) -> bool {
        (0..self.len()).all(|a| {
            (0..self.len()).all(|b| {
                a == b || self.opens.iter().any(|o| o.contains(a) && !o.contains(b))
            })
        })
    }

    pub fn is_hausdorff(&self) -> bool {
        (0..self.len()).all(|a| {
            ((a + 1)..self.len()).all(|b| {
                self.opens.iter().any(|u| {
                    u.contains(a)
                        && self
                            .opens
                            .iter()
                            .any(|v| v.contains(b) && u.intersection(*v).is_empty())
                })
            })
        })
    }

    pub fn is_discrete(&self) -> bool {
        (0..self.len()).all(|i| self.is_open(Subset::singleton(i)))
    }

    pub fn format_subset(&self, s: Subset) -> String {
        let names: Vec<&str> = s.iter().map(|i| self.point(i)).collect();
        format!("{{{}}}", names.join(","))
    }

    /// Every topology on `n ≤ 4` labelled points, by brute force over
    /// families of subsets.
    pub fn all_topologies(n: usize) -> Vec<FiniteTopSpace> {
        assert!(n <= 4, "topology enumeration is limited to 4 points");
        let full = Subset::full(n);
        let middle: Vec<Subset> = Subset::all(n)
            .filter(|&s| !s.is_empty() && s != full)
            .collect();
        let mut out = Vec::new();
        for mask in 0u64..(1u64 << middle.len()) {
            let mut family: Vec<Subset> = vec![Subset::EMPTY, full];
            family.extend(
                middle
                    .iter()
                    .enumerate()
                    .filter(|(bit, _)| mask & (1 << bit) != 0)
                    .map(|(_, &s)| s),
            );
            let closed = family.iter().all(|&a| {
                family.iter().all(|&b| {
                    family.contains(&a.union(b)) && family.contains(&a.intersection(b))
                })
            });
            if closed {
                let points = (0..n).map(|i| format!("p{i}")).collect();
                let sub: Vec<Subset> = family.into_iter().filter(|s| !s.is_empty()).collect();
                let space = Self::from_subbasis(&format!("top{n}#{mask}"), points, &sub).unwrap();
                out.push(space);
            }
        }
        out
    }
}

fn close_under(family: &mut BTreeSet<Subset>, op: fn(Subset, Subset) -> Subset) {
    loop {
        let current: Vec<Subset> = family.iter().copied().collect();
        let mut grew = false;
        for &a in &current {
            for &b in &current {
                if family.insert(op(a, b)) {
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
}

impl fmt::Debug for FiniteTopSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let opens: Vec<String> = self.opens.iter().map(|&o| self.format_subset(o)).collect();
        f.debug_struct("FiniteTopSpace")
            .field("name", &self.name)
            .field("points", &self.points)
            .field("opens", &opens)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn topology_counts() {
        let counts: Vec<usize> = (0..=4)
            .map(|n| FiniteTopSpace::all_topologies(n).len())
            .collect();
        assert_eq!(counts, vec![1, 1, 4, 29, 355]);
    }

    #[test]
    fn sierpinski_properties() {
        let s = FiniteTopSpace::sierpinski();
        assert_eq!(s.opens().len(), 3);
        assert!(s.is_t0());
        assert!(!s.is_t1());
        assert!(!s.is_hausdorff());
        assert_eq!(s.closure(Subset::singleton(1)), Subset::singleton(1));
        assert_eq!(s.closure(Subset::singleton(0)), s.full());
        assert_eq!(s.interior(Subset::singleton(1)), Subset::EMPTY);
    }

    #[test]
    fn discrete_properties() {
        let d = FiniteTopSpace::discrete(3);
        assert_eq!(d.opens().len(), 8);
        assert!(d.is_hausdorff() && d.is_discrete());
        assert_eq!(d.open_atoms().len(), 3);
        assert_eq!(d.minimal_neighbourhood(2), Subset::singleton(2));
        let order: Vec<String> = d.nonempty_opens().map(|o| d.format_subset(o)).collect();
        assert_eq!(order[..4], ["{p0}", "{p1}", "{p2}", "{p0,p1}"]);
    }

    #[test]
    fn finite_t1_is_discrete() {
        for n in 0..=4 {
            for t in FiniteTopSpace::all_topologies(n) {
                assert_eq!(t.is_t1(), t.is_discrete());
                assert_eq!(t.is_t1(), t.is_hausdorff());
            }
        }
    }

    #[test]
    fn named_subbasis_rejects_unknown_points() {
        let err = FiniteTopSpace::from_named_subbasis("s", &["x"], &[vec!["z"]]).unwrap_err();
        assert_eq!(err, SpaceError::UnknownPoint("z".into()));
    }
}
