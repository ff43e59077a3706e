//! Finite products of posets with the coordinatewise order.

use crate::filters::{is_filter, is_maximal_by_generator};
use crate::poset::{ElemSet, FinitePoset};
use crate::topology::{Mode, PosetSpace};

use super::ConstructionError;

#[derive(Debug, Clone)]
pub struct ProductPoset {
    pub poset: FinitePoset,
    /// Factors as used, with a fresh top adjoined where one was missing.
    pub factors: Vec<FinitePoset>,
    pub adjoined_top: Vec<bool>,
    /// Coordinate vector of each product element.
    pub coords: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductReport {
    pub factor_mf_counts: Vec<usize>,
    pub product_mf_count: usize,
    /// `φ`: a tuple of factor points to a product point.
    pub phi: Vec<(Vec<usize>, Option<usize>)>,
    /// `φ⁻¹`: a product point to its tuple of projections.
    pub phi_inverse: Vec<(usize, Option<Vec<usize>>)>,
    pub mutually_inverse: bool,
    pub opens_preserved: bool,
}

impl ProductReport {
    pub fn ok(&self) -> bool {
        self.mutually_inverse
            && self.opens_preserved
            && self.product_mf_count == self.factor_mf_counts.iter().product::<usize>()
    }
}

fn with_top(p: &FinitePoset) -> (FinitePoset, bool) {
    if p.greatest_element().is_some() {
        return (p.clone(), false);
    }
    let mut top = "⊤".to_string();
    while p.index_of(&top).is_ok() {
        top.push('\'');
    }
    let n = p.len();
    let mut elements = p.elements().to_vec();
    elements.push(top);
    let mut pairs = p.strict_pairs();
    pairs.extend((0..n).map(|i| (i, n)));
    let extended = FinitePoset::from_index_pairs(p.name(), elements, &pairs)
        .expect("adjoining a top keeps antisymmetry");
    (extended, true)
}

/// The product of `factors` under the coordinatewise order.
///
/// Elements are named `(a,b,…)` and listed with the last coordinate varying
/// fastest.
pub fn product_poset(factors: &[FinitePoset]) -> Result<ProductPoset, ConstructionError> {
    if factors.is_empty() {
        return Err(ConstructionError::EmptyFactorList);
    }
    if let Some(i) = factors.iter().position(|f| f.is_empty()) {
        return Err(ConstructionError::EmptyFactor(i));
    }
    let (factors, adjoined_top): (Vec<FinitePoset>, Vec<bool>) = factors.iter().map(with_top).unzip();
    let mut coords: Vec<Vec<usize>> = vec![vec![]];
    for f in &factors {
        coords = coords
            .into_iter()
            .flat_map(|c| {
                (0..f.len()).map(move |i| {
                    let mut c = c.clone();
                    c.push(i);
                    c
                })
            })
            .collect();
    }
    let names: Vec<String> = coords
        .iter()
        .map(|c| {
            let parts: Vec<&str> = c
                .iter()
                .zip(&factors)
                .map(|(&i, f)| f.element(i))
                .collect();
            format!("({})", parts.join(","))
        })
        .collect();
    let name: Vec<&str> = factors.iter().map(|f| f.name()).collect();
    let poset = FinitePoset::from_relation(&name.join("×"), names, |a, b| {
        coords[a]
            .iter()
            .zip(&coords[b])
            .zip(&factors)
            .all(|((&x, &y), f)| f.le(x, y))
    })
    .expect("coordinatewise order is antisymmetric");
    Ok(ProductPoset {
        poset,
        factors,
        adjoined_top,
        coords,
    })
}

impl ProductPoset {
    pub fn element_of(&self, coords: &[usize]) -> usize {
        self.coords
            .iter()
            .position(|c| c == coords)
            .expect("coordinates in range")
    }

    /// Verifies `φ(F₁,…,F_k) = {f : f(i) ∈ F_i}` and its inverse by
    /// enumeration, along with the correspondence of basic opens.
    pub fn verify(&self) -> ProductReport {
        let spaces: Vec<PosetSpace> = self
            .factors
            .iter()
            .map(|f| PosetSpace::new(f.clone(), Mode::Mf))
            .collect();
        let product = PosetSpace::new(self.poset.clone(), Mode::Mf);
        let factor_mf_counts: Vec<usize> = spaces.iter().map(|s| s.len()).collect();

        let mut tuples: Vec<Vec<usize>> = vec![vec![]];
        for s in &spaces {
            tuples = tuples
                .into_iter()
                .flat_map(|t| {
                    (0..s.len()).map(move |i| {
                        let mut t = t.clone();
                        t.push(i);
                        t
                    })
                })
                .collect();
        }

        let image_members = |t: &[usize]| -> ElemSet {
            (0..self.poset.len())
                .filter(|&e| {
                    self.coords[e]
                        .iter()
                        .enumerate()
                        .all(|(i, &x)| spaces[i].point(t[i]).contains(x))
                })
                .collect()
        };
        let phi: Vec<(Vec<usize>, Option<usize>)> = tuples
            .iter()
            .map(|t| {
                let members = image_members(t);
                let point = (is_filter(&self.poset, &members)
                    && is_maximal_by_generator(&self.poset, &members))
                .then(|| product.find_point(&members))
                .flatten();
                (t.clone(), point)
            })
            .collect();

        let phi_inverse: Vec<(usize, Option<Vec<usize>>)> = (0..product.len())
            .map(|g| {
                let members = product.point(g).members();
                let projected: Option<Vec<usize>> = spaces
                    .iter()
                    .enumerate()
                    .map(|(i, s)| {
                        let proj: ElemSet = members.iter().map(|&e| self.coords[e][i]).collect();
                        s.find_point(&proj)
                    })
                    .collect();
                (g, projected)
            })
            .collect();

        let forward_ok = phi.iter().all(|(t, image)| {
            image.is_some_and(|g| phi_inverse[g].1.as_deref() == Some(t.as_slice()))
        });
        let backward_ok = phi_inverse.iter().all(|(g, pre)| {
            pre.as_ref()
                .and_then(|t| phi.iter().find(|(u, _)| u == t))
                .is_some_and(|(_, image)| *image == Some(*g))
        });
        let mutually_inverse = forward_ok && backward_ok && phi.len() == product.len();

        // φ⁻¹(N_f) must be the product of the factor basic opens N_{f(i)}
        let opens_preserved = mutually_inverse
            && (0..self.poset.len()).all(|e| {
                let basic = product.basic_open(e);
                phi.iter().all(|(t, image)| {
                    let in_box = t
                        .iter()
                        .enumerate()
                        .all(|(i, &x)| spaces[i].point(x).contains(self.coords[e][i]));
                    basic.contains(&image.unwrap()) == in_box
                })
            });

        ProductReport {
            factor_mf_counts,
            product_mf_count: product.len(),
            phi,
            phi_inverse,
            mutually_inverse,
            opens_preserved,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::samples::*;

    #[test]
    fn antichain_square() {
        let p = product_poset(&[antichain2(), antichain2()]).unwrap();
        assert_eq!(p.poset.len(), 9);
        assert_eq!(p.adjoined_top, vec![true, true]);
        let r = p.verify();
        assert_eq!(r.product_mf_count, 4);
        assert!(r.ok());
        assert_eq!(p.poset.element(0), "(a,a)");
        assert_eq!(p.poset.element(8), "(⊤,⊤)");
    }

    #[test]
    fn chain_square_has_one_point() {
        let p = product_poset(&[chain2(), chain2()]).unwrap();
        assert_eq!(p.poset.len(), 4);
        let r = p.verify();
        assert_eq!(r.product_mf_count, 1);
        assert!(r.ok());
    }

    #[test]
    fn single_factor_is_identity_on_coordinates() {
        let v = vee();
        let p = product_poset(std::slice::from_ref(&v)).unwrap();
        assert_eq!(p.poset.len(), 3);
        let r = p.verify();
        assert!(r.ok());
        for (t, image) in &r.phi {
            assert_eq!(Some(t[0]), *image);
        }
    }

    #[test]
    fn errors() {
        assert_eq!(product_poset(&[]).unwrap_err(), ConstructionError::EmptyFactorList);
        let empty = FinitePoset::validate::<&str>("e", &[], &[]).unwrap();
        assert_eq!(
            product_poset(&[chain2(), empty]).unwrap_err(),
            ConstructionError::EmptyFactor(1)
        );
    }
}
