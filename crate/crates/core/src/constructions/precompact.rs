//! The poset of nonempty opens ordered by closure containment.
//!
//! On a finite space every subset is precompact. `U ⪯ V` iff `U = V` or the
//! closure of `U` lies inside `V`.

use crate::finite_space::{FiniteTopSpace, Subset};
use crate::poset::FinitePoset;
use crate::topology::{Mode, PosetSpace};

#[derive(Debug, Clone)]
pub struct PrecompactPoset {
    pub poset: FinitePoset,
    /// The open set behind each element.
    pub opens: Vec<Subset>,
    pub report: PrecompactReport,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrecompactReport {
    pub hausdorff: bool,
    /// `⋂F` for each maximal filter.
    pub intersections: Vec<Subset>,
    /// Every `⋂F` is a single point.
    pub singletons: bool,
    /// `F ↦ ⋂F` is a bijection onto the points.
    pub bijective: bool,
    /// `F ∈ N_U` iff `⋂F ⊆ U`, for every element `U`.
    pub opens_correspond: bool,
}

impl PrecompactReport {
    pub fn homeomorphism(&self) -> bool {
        self.singletons && self.bijective && self.opens_correspond
    }
}

pub fn precompact_open_poset(space: &FiniteTopSpace) -> PrecompactPoset {
    let opens: Vec<Subset> = space.nonempty_opens().collect();
    let names: Vec<String> = opens.iter().map(|&o| space.format_subset(o)).collect();
    let poset = FinitePoset::from_relation(&format!("{}|precompact", space.name()), names, |a, b| {
        space.closure(opens[a]).is_subset(opens[b])
    })
    .expect("closure containment is antisymmetric on opens");

    let mf = PosetSpace::new(poset.clone(), Mode::Mf);
    let intersections: Vec<Subset> = mf
        .points()
        .iter()
        .map(|f| {
            f.members()
                .iter()
                .fold(space.full(), |acc, &u| acc.intersection(opens[u]))
        })
        .collect();
    let singletons = intersections.iter().all(|s| s.len() == 1);
    let mut hit: Vec<Subset> = intersections.clone();
    hit.sort();
    hit.dedup();
    let bijective = singletons && hit.len() == intersections.len() && hit.len() == space.len();
    let opens_correspond = singletons
        && (0..opens.len()).all(|u| {
            let basic = mf.basic_open(u);
            (0..mf.len()).all(|f| basic.contains(&f) == intersections[f].is_subset(opens[u]))
        });
    let report = PrecompactReport {
        hausdorff: space.is_hausdorff(),
        intersections,
        singletons,
        bijective,
        opens_correspond,
    };
    PrecompactPoset {
        poset,
        opens,
        report,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn discrete_two_points() {
        let p = precompact_open_poset(&FiniteTopSpace::discrete(2));
        assert_eq!(p.poset.len(), 3);
        assert_eq!(p.report.intersections.len(), 2);
        assert!(p.report.homeomorphism());
    }

    #[test]
    fn discrete_one_point() {
        let p = precompact_open_poset(&FiniteTopSpace::discrete(1));
        assert_eq!(p.poset.len(), 1);
        assert!(p.report.homeomorphism());
    }

    #[test]
    fn sierpinski_is_flagged() {
        let p = precompact_open_poset(&FiniteTopSpace::sierpinski());
        assert!(!p.report.hausdorff);
        assert!(!p.report.homeomorphism());
    }
}
