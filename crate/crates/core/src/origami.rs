//! Origamis (square-tiled surfaces) as transitive permutation pairs.
//!
//! Square `i` has right neighbour `σ_a(i)` and upper neighbour `σ_b(i)`.
//! Vertices of the square complex correspond to cycles of the commutator
//! `σ_a·σ_b·σ_a⁻¹·σ_b⁻¹`; a cycle of length `e` is a cone point of angle `e·2π`.
//! Translations are the permutations of squares commuting with both `σ_a` and
//! `σ_b`.

use std::collections::VecDeque;
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::group::FiniteGroup;
use crate::perm::{commutator, is_transitive, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrigamiError {
    #[error("sigma_a has degree {a} but sigma_b has degree {b}")]
    DegreeMismatch { a: usize, b: usize },
    #[error("disconnected: the permutation pair does not act transitively")]
    Disconnected,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Origami {
    sigma_a: Permutation,
    sigma_b: Permutation,
}

/// Ramification data over the torus puncture.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SingularityData {
    /// Commutator cycle lengths, one per vertex, sorted descending.
    pub ramification_indices: Vec<usize>,
    /// `e − 1` for every index `e ≥ 2`, sorted descending.
    pub stratum: Vec<usize>,
    pub genus: usize,
}

impl SingularityData {
    /// Stratum label such as `H(1,1,1,1)`; the torus gives `H()`.
    pub fn stratum_label(&self) -> String {
        let parts: Vec<String> = self.stratum.iter().map(|k| k.to_string()).collect();
        format!("H({})", parts.join(","))
    }

    pub fn is_principal(&self) -> bool {
        self.stratum.iter().all(|&k| k == 1)
    }
}

/// The translation group of an origami, as permutations of its squares.
/// Element `0` is the identity; elements are sorted by the image of square 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranslationGroup {
    elements: Vec<Permutation>,
}

impl TranslationGroup {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements
            .binary_search_by_key(&p.image0(0), |t| t.image0(0))
            .is_ok_and(|i| &self.elements[i] == p)
    }

    /// Number of elements of order 2.
    pub fn involutions(&self) -> usize {
        self.elements.iter().filter(|t| t.order() == 2).count()
    }
}

/// Labeling of the squares of a normal origami by group elements such that
/// the right (upper) neighbour of a square labelled `g` is labelled `g·a` (`g·b`).
#[derive(Debug, Clone)]
pub struct CayleyLabeling {
    pub group: FiniteGroup,
    /// `labels[i]` is the element index of square `i + 1`.
    pub labels: Vec<usize>,
    pub a: usize,
    pub b: usize,
}

/// Summary of all per-surface invariants.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Analysis {
    pub degree: usize,
    pub genus: usize,
    pub stratum: String,
    pub ramification_indices: Vec<usize>,
    pub translations: usize,
    pub normal: bool,
    pub hurwitz: bool,
    pub canonical_a: String,
    pub canonical_b: String,
}

impl Origami {
    /// Validates a permutation pair: equal degrees and a transitive action.
    pub fn new(sigma_a: Permutation, sigma_b: Permutation) -> Result<Origami, OrigamiError> {
        if sigma_a.degree() != sigma_b.degree() {
            return Err(OrigamiError::DegreeMismatch {
                a: sigma_a.degree(),
                b: sigma_b.degree(),
            });
        }
        let d = sigma_a.degree();
        if !is_transitive(&[sigma_a.clone(), sigma_b.clone()], d).expect("degrees agree") {
            return Err(OrigamiError::Disconnected);
        }
        Ok(Origami { sigma_a, sigma_b })
    }

    pub fn square_torus() -> Origami {
        Origami {
            sigma_a: Permutation::identity(1),
            sigma_b: Permutation::identity(1),
        }
    }

    pub fn degree(&self) -> usize {
        self.sigma_a.degree()
    }

    pub fn sigma_a(&self) -> &Permutation {
        &self.sigma_a
    }

    pub fn sigma_b(&self) -> &Permutation {
        &self.sigma_b
    }

    /// `σ_a·σ_b·σ_a⁻¹·σ_b⁻¹`, whose cycles are the vertices of the surface.
    pub fn commutator(&self) -> Permutation {
        commutator(&self.sigma_a, &self.sigma_b).expect("degrees agree")
    }

    pub fn singularity_data(&self) -> SingularityData {
        let ramification_indices = self.commutator().cycle_type().parts().to_vec();
        let stratum: Vec<usize> = ramification_indices
            .iter()
            .filter(|&&e| e >= 2)
            .map(|&e| e - 1)
            .collect();
        let excess: usize = stratum.iter().sum();
        debug_assert!(
            excess.is_multiple_of(2),
            "commutators are even permutations"
        );
        SingularityData {
            ramification_indices,
            stratum,
            genus: 1 + excess / 2,
        }
    }

    pub fn genus(&self) -> usize {
        self.singularity_data().genus
    }

    /// All permutations of the squares commuting with `σ_a` and `σ_b`.
    ///
    /// A translation is determined by the image of square 1: for each candidate
    /// image the relation `τ(σ(i)) = σ(τ(i))` is propagated along the
    /// transitive action, and consistent extensions are kept. O(d²).
    pub fn translation_group(&self) -> TranslationGroup {
        let d = self.degree();
        let gens = [&self.sigma_a, &self.sigma_b];
        let mut elements = Vec::new();
        let mut tau = vec![u32::MAX; d];
        let mut stack = Vec::with_capacity(d);
        'candidates: for j in 0..d {
            tau.fill(u32::MAX);
            tau[0] = j as u32;
            stack.clear();
            stack.push(0usize);
            while let Some(i) = stack.pop() {
                let ti = tau[i] as usize;
                for s in gens {
                    let next = s.image0(i);
                    let image = s.image0(ti) as u32;
                    if tau[next] == u32::MAX {
                        tau[next] = image;
                        stack.push(next);
                    } else if tau[next] != image {
                        continue 'candidates;
                    }
                }
            }
            if let Ok(p) = Permutation::from_images(tau.clone()) {
                elements.push(p);
            }
        }
        TranslationGroup { elements }
    }

    /// The translation group acts transitively, i.e. has `d` elements.
    pub fn is_normal(&self) -> bool {
        self.translation_group().len() == self.degree()
    }

    /// Normal, in the principal stratum `H(1,…,1)`, and of genus at least 2.
    pub fn is_hurwitz(&self) -> bool {
        let sing = self.singularity_data();
        let translations = self.translation_group().len();
        hurwitz_verdict(self.degree(), &sing, translations)
    }

    /// `π⁻¹·σ·π` for both gluings: square `i` is renamed `π(i)`.
    pub fn relabel(&self, pi: &Permutation) -> Origami {
        Origami {
            sigma_a: self.sigma_a.conjugate_by(pi),
            sigma_b: self.sigma_b.conjugate_by(pi),
        }
    }

    /// Breadth-first relabeling from square `start`, visiting neighbours in
    /// the order `a, a⁻¹, b, b⁻¹`. Returns the relabeled image tables.
    fn bfs_tables(
        &self,
        start: usize,
        inv_a: &Permutation,
        inv_b: &Permutation,
    ) -> (Vec<u32>, Vec<u32>) {
        let d = self.degree();
        let mut new_label = vec![u32::MAX; d];
        let mut order = Vec::with_capacity(d);
        let mut queue = VecDeque::with_capacity(d);
        new_label[start] = 0;
        order.push(start);
        queue.push_back(start);
        while let Some(x) = queue.pop_front() {
            for s in [&self.sigma_a, inv_a, &self.sigma_b, inv_b] {
                let y = s.image0(x);
                if new_label[y] == u32::MAX {
                    new_label[y] = order.len() as u32;
                    order.push(y);
                    queue.push_back(y);
                }
            }
        }
        let a = order
            .iter()
            .map(|&x| new_label[self.sigma_a.image0(x)])
            .collect();
        let b = order
            .iter()
            .map(|&x| new_label[self.sigma_b.image0(x)])
            .collect();
        (a, b)
    }

    /// Representative of the simultaneous-conjugacy class: the lexicographically
    /// least pair of image tables over breadth-first relabelings from every square.
    pub fn canonical_form(&self) -> Origami {
        let inv_a = self.sigma_a.inverse();
        let inv_b = self.sigma_b.inverse();
        let best = (0..self.degree())
            .map(|s| self.bfs_tables(s, &inv_a, &inv_b))
            .min()
            .expect("degree is at least 1");
        Origami {
            sigma_a: Permutation::from_images(best.0).expect("relabeling is a bijection"),
            sigma_b: Permutation::from_images(best.1).expect("relabeling is a bijection"),
        }
    }

    /// Equal up to simultaneous conjugation.
    pub fn is_equivalent(&self, other: &Origami) -> bool {
        self.degree() == other.degree() && self.canonical_form() == other.canonical_form()
    }

    /// Labels squares by translation-group elements when the origami is normal.
    ///
    /// With `τ_s` the translation taking square 1 to square `s`, square `s` is
    /// labelled `τ_s⁻¹`; then the label of `σ_a(s)` is `label(s)·label(σ_a(1))`.
    pub fn cayley_labels(&self) -> Option<CayleyLabeling> {
        let trans = self.translation_group();
        if trans.len() != self.degree() {
            return None;
        }
        let group = FiniteGroup::from_generators(trans.elements())
            .expect("translation group is below the cap")
            .renamed("Trans");
        // elements are sorted by the image of square 1, so τ_s is elements[s]
        let labels: Vec<usize> = trans
            .elements()
            .iter()
            .map(|t| group.index_of(&t.inverse()).expect("closed under inverses"))
            .collect();
        let a = labels[self.sigma_a.image0(0)];
        let b = labels[self.sigma_b.image0(0)];
        let group = group
            .with_generators(a, b)
            .expect("transitive pair generates");
        Some(CayleyLabeling {
            group,
            labels,
            a,
            b,
        })
    }

    pub fn analyze(&self) -> Analysis {
        let sing = self.singularity_data();
        let translations = self.translation_group().len();
        let canonical = self.canonical_form();
        Analysis {
            degree: self.degree(),
            genus: sing.genus,
            stratum: sing.stratum_label(),
            ramification_indices: sing.ramification_indices.clone(),
            translations,
            normal: translations == self.degree(),
            hurwitz: hurwitz_verdict(self.degree(), &sing, translations),
            canonical_a: canonical.sigma_a.to_string(),
            canonical_b: canonical.sigma_b.to_string(),
        }
    }
}

fn hurwitz_verdict(degree: usize, sing: &SingularityData, translations: usize) -> bool {
    let verdict = translations == degree && sing.is_principal() && sing.genus >= 2;
    if sing.genus >= 2 {
        assert!(
            translations <= 4 * sing.genus - 4,
            "translation bound violated"
        );
        assert_eq!(
            verdict,
            translations == 4 * sing.genus - 4,
            "Hurwitz criterion disagrees with the translation count"
        );
    }
    verdict
}

impl fmt::Display for Origami {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(a = {}, b = {})", self.sigma_a, self.sigma_b)
    }
}

/// Uniformly random transitive pair on `d` squares, deterministic per seed.
pub fn random_origami(d: usize, seed: u64) -> Origami {
    assert!(d >= 1, "an origami needs at least one square");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut a: Vec<u32> = (0..d as u32).collect();
    let mut b = a.clone();
    loop {
        a.shuffle(&mut rng);
        b.shuffle(&mut rng);
        let pa = Permutation::from_images(a.clone()).unwrap();
        let pb = Permutation::from_images(b.clone()).unwrap();
        if let Ok(o) = Origami::new(pa, pb) {
            return o;
        }
    }
}

/// A uniformly random permutation of degree `d`.
pub fn random_permutation(d: usize, seed: u64) -> Permutation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut v: Vec<u32> = (0..d as u32).collect();
    v.shuffle(&mut rng);
    Permutation::from_images(v).unwrap()
}

/// Origamis that serve as reference data.
pub mod known {
    use super::Origami;
    use crate::perm::parse_cycles;

    fn pair(d: usize, a: &str, b: &str) -> Origami {
        Origami::new(parse_cycles(a, d).unwrap(), parse_cycles(b, d).unwrap()).unwrap()
    }

    /// Eight squares with translation group `Q₈`.
    pub fn eierlegende_wollmilchsau() -> Origami {
        pair(8, "(1,2,3,4)(5,6,7,8)", "(1,8,3,6)(2,7,4,5)")
    }

    /// Eight squares in a staircase with translation group `D₄`.
    pub fn escalator() -> Origami {
        pair(8, "(1,2)(3,4)(5,6)(7,8)", "(2,3)(4,5)(6,7)(8,1)")
    }

    /// Twelve squares with translation group `A₄`, genus 4.
    pub fn a4_origami() -> Origami {
        pair(
            12,
            "(1,5,7)(2,4,8)(11,12,10)(3,6,9)",
            "(1,4)(2,6)(3,5)(7,11)(8,10)(9,12)",
        )
    }
}

#[cfg(test)]
mod tests {
    use super::known::*;
    use super::*;
    use crate::perm::parse_cycles;

    #[test]
    fn construction_errors() {
        let t = Origami::new(Permutation::identity(1), Permutation::identity(1)).unwrap();
        assert_eq!(t, Origami::square_torus());
        assert_eq!(
            Origami::new(Permutation::identity(2), Permutation::identity(2)),
            Err(OrigamiError::Disconnected)
        );
        assert_eq!(
            Origami::new(Permutation::identity(2), Permutation::identity(3)),
            Err(OrigamiError::DegreeMismatch { a: 2, b: 3 })
        );
        assert!(Origami::new(parse_cycles("(1,2)", 2).unwrap(), Permutation::identity(2)).is_ok());
    }

    #[test]
    fn singularities_of_reference_surfaces() {
        let t = Origami::square_torus().singularity_data();
        assert_eq!(t.ramification_indices, vec![1]);
        assert!(t.stratum.is_empty());
        assert_eq!(t.genus, 1);
        assert_eq!(t.stratum_label(), "H()");

        let w = eierlegende_wollmilchsau().singularity_data();
        assert_eq!(w.ramification_indices, vec![2, 2, 2, 2]);
        assert_eq!(w.stratum_label(), "H(1,1,1,1)");
        assert_eq!(w.genus, 3);

        assert_eq!(a4_origami().genus(), 4);
    }

    #[test]
    fn translation_groups() {
        assert_eq!(Origami::square_torus().translation_group().len(), 1);
        let w = eierlegende_wollmilchsau().translation_group();
        assert_eq!(w.len(), 8);
        assert_eq!(w.involutions(), 1);
        let e = escalator().translation_group();
        assert_eq!(e.len(), 8);
        assert!(e.involutions() >= 2);
        assert_eq!(a4_origami().translation_group().len(), 12);
    }

    #[test]
    fn normality_and_hurwitz() {
        let t = Origami::square_torus();
        assert!(t.is_normal());
        assert!(!t.is_hurwitz());
        for o in [eierlegende_wollmilchsau(), escalator(), a4_origami()] {
            assert!(o.is_normal());
            assert!(o.is_hurwitz());
        }
        let skew = Origami::new(
            parse_cycles("(1,2,3)", 3).unwrap(),
            parse_cycles("(1,2)", 3).unwrap(),
        )
        .unwrap();
        assert!(skew.translation_group().len() < 3);
        assert!(!skew.is_normal());
        assert!(skew.cayley_labels().is_none());
    }

    #[test]
    fn equivalence() {
        let w = eierlegende_wollmilchsau();
        let e = escalator();
        assert!(w.is_equivalent(&w));
        assert!(!w.is_equivalent(&e));
        let pi = random_permutation(8, 11);
        assert!(w.is_equivalent(&w.relabel(&pi)));
        let c = w.canonical_form();
        assert_eq!(c.canonical_form(), c);
    }

    #[test]
    fn cayley_labels_follow_right_multiplication() {
        let torus = Origami::square_torus().cayley_labels().unwrap();
        assert_eq!(torus.labels, vec![0]);
        for o in [eierlegende_wollmilchsau(), escalator(), a4_origami()] {
            let c = o.cayley_labels().unwrap();
            assert_eq!(c.labels[0], 0);
            assert_eq!(c.group.order(), o.degree());
            for s in 0..o.degree() {
                assert_eq!(
                    c.labels[o.sigma_a().image0(s)],
                    c.group.mul(c.labels[s], c.a)
                );
                assert_eq!(
                    c.labels[o.sigma_b().image0(s)],
                    c.group.mul(c.labels[s], c.b)
                );
            }
        }
        let q = eierlegende_wollmilchsau().cayley_labels().unwrap();
        assert_eq!(q.group.order_statistics(), vec![(1, 1), (2, 1), (4, 6)]);
    }

    #[test]
    fn random_origamis_are_deterministic() {
        assert_eq!(random_origami(1, 5), Origami::square_torus());
        assert_eq!(random_origami(9, 42), random_origami(9, 42));
        let o = random_origami(10, 3);
        assert!(Origami::new(o.sigma_a().clone(), o.sigma_b().clone()).is_ok());
    }

    #[test]
    fn euler_characteristic_matches_genus() {
        for seed in 0..300 {
            let d = 1 + (seed as usize % 11);
            let o = random_origami(d, seed);
            let s = o.singularity_data();
            let vertices = s.ramification_indices.len() as i64;
            let chi = vertices - 2 * d as i64 + d as i64;
            assert_eq!(chi, 2 - 2 * s.genus as i64);
            assert_eq!(s.ramification_indices.iter().sum::<usize>(), d);
            let trans = o.translation_group();
            assert_eq!(d % trans.len(), 0);
            for t in trans.elements() {
                for u in trans.elements() {
                    assert!(trans.contains(&t.then(u)));
                }
                assert!(trans.contains(&t.inverse()));
                if !t.is_identity() {
                    assert_eq!(t.fixed_points(), 0);
                }
            }
        }
    }
    #[test]
    fn analysis_json_fields() {
        let v = serde_json::to_value(known::eierlegende_wollmilchsau().analyze()).unwrap();
        assert_eq!(v["stratum"], "H(1,1,1,1)");
        assert_eq!(v["ramification_indices"], serde_json::json!([2, 2, 2, 2]));
        assert_eq!(v["translations"], 8);
        assert_eq!(v["hurwitz"], true);
    }

    #[test]
    fn permutations_serialize_as_text() {
        let p = known::escalator().sigma_b().clone();
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(serde_json::from_str::<Permutation>(&json).unwrap(), p);
    }
}
