//! Hurwitz translation surfaces: tH groups, their regular-representation
//! origamis, and the genus classification.
//!
//! A genus-`g` translation surface has at most `4g − 4` translations; the
//! surfaces attaining the bound are the normal origamis in `H(1,…,1)`, and
//! they arise exactly as right regular representations of groups generated by
//! a pair `a, b` with `[a, b]` of order 2 ("tH" groups). Such groups exist in
//! order `n` iff `8 | n` or `12 | n`, so genus `g` is attainable iff `g` is odd
//! or `3 | g − 1`.

use serde::Serialize;
use thiserror::Error;

use crate::group::{
    alternating, catalogue, cyclic, direct_product_capped, regular_pair, semidirect_cyclic_c2,
    th_witness_search, GroupError, ThWitness, CATALOGUE_ORDERS, DEFAULT_GROUP_CAP,
};
use crate::origami::Origami;

/// Largest certificate degree that gets a full origami re-analysis by default.
pub const DEFAULT_ANALYSIS_BUDGET: usize = 400;

/// Resource limits for constructions and verification.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub group_cap: usize,
    pub analysis_budget: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            group_cap: DEFAULT_GROUP_CAP,
            analysis_budget: DEFAULT_ANALYSIS_BUDGET,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HurwitzError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("certificate check failed: {0}")]
    Certificate(String),
    #[error("contradiction: {0}")]
    Contradiction(String),
}

/// A validated Hurwitz translation surface together with the tH witness it
/// was built from.
#[derive(Debug, Clone)]
pub struct HtsCertificate {
    genus: usize,
    witness: ThWitness,
    origami: Origami,
    analyzed: bool,
}

impl HtsCertificate {
    /// Builds the regular-representation origami of `witness` and checks it.
    /// Degrees up to `analysis_budget` get a full translation-group analysis.
    pub fn build(
        witness: ThWitness,
        analysis_budget: usize,
    ) -> Result<HtsCertificate, HurwitzError> {
        let origami = hts_from_group(&witness);
        let n = witness.group().order();
        let cert = HtsCertificate {
            genus: n / 4 + 1,
            witness,
            origami,
            analyzed: n <= analysis_budget,
        };
        cert.check_origami()?;
        Ok(cert)
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn group_name(&self) -> &str {
        self.witness.group().name()
    }

    pub fn witness(&self) -> &ThWitness {
        &self.witness
    }

    pub fn origami(&self) -> &Origami {
        &self.origami
    }

    /// Whether the translation group was computed and counted.
    pub fn analyzed(&self) -> bool {
        self.analyzed
    }

    /// Re-runs every check from scratch.
    pub fn revalidate(&self) -> Result<(), HurwitzError> {
        self.witness
            .revalidate()
            .map_err(|e| HurwitzError::Certificate(e.to_string()))?;
        if hts_from_group(&self.witness) != self.origami {
            return Err(HurwitzError::Certificate(
                "origami is not the regular representation of the witness".into(),
            ));
        }
        self.check_origami()
    }

    fn check_origami(&self) -> Result<(), HurwitzError> {
        let fail = |m: String| Err(HurwitzError::Certificate(m));
        let d = self.origami.degree();
        if d != 4 * self.genus - 4 {
            return fail(format!("order {d} is not 4g - 4 for genus {}", self.genus));
        }
        let comm = self.origami.commutator();
        if comm.fixed_points() != 0 || comm.order() != 2 {
            return fail("commutator of the gluings is not a fixed-point-free involution".into());
        }
        let sing = self.origami.singularity_data();
        if sing.genus != self.genus {
            return fail(format!(
                "genus {} but origami has genus {}",
                self.genus, sing.genus
            ));
        }
        if !sing.is_principal() || sing.stratum.len() != d / 2 {
            return fail(format!("stratum {} is not principal", sing.stratum_label()));
        }
        if self.analyzed {
            let translations = self.origami.translation_group().len();
            if translations != 4 * self.genus - 4 {
                return fail(format!(
                    "translation count {translations}, expected {}",
                    4 * self.genus - 4
                ));
            }
            if !self.origami.is_hurwitz() {
                return fail("origami is not Hurwitz".into());
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct GenusVerdict {
    pub genus: usize,
    pub realizable: bool,
    pub certificate: Option<HtsCertificate>,
}

/// The origami of the right regular representation on the witness pair.
pub fn hts_from_group(witness: &ThWitness) -> Origami {
    let (a, b) =
        regular_pair(witness.group(), witness.a(), witness.b()).expect("witness indices are valid");
    Origami::new(a, b).expect("a generating pair acts transitively")
}

/// `8 | n` or `12 | n`.
pub fn is_th_order(n: usize) -> bool {
    n.is_multiple_of(8) || n.is_multiple_of(12)
}

/// Witness of order `2^a` in `C_{2^{a−1}} ⋊ C₂` with `1 ↦ 2^{a−2} + 1`.
pub fn construct_power_two(a: u32) -> Result<ThWitness, HurwitzError> {
    power_two(a, DEFAULT_GROUP_CAP)
}

fn power_two(a: u32, cap: usize) -> Result<ThWitness, HurwitzError> {
    if a < 3 {
        return Err(HurwitzError::InvalidParameter(format!(
            "power-of-two construction needs a >= 3, got {a}"
        )));
    }
    let order = 1usize
        .checked_shl(a)
        .filter(|&n| n <= cap)
        .ok_or(GroupError::CapExceeded { cap })?;
    let n = order / 2;
    let g = semidirect_cyclic_c2(n, n / 2 + 1)?;
    // x = (1,0), y = (0,1)
    Ok(ThWitness::new(g, 1, n)?)
}

/// Witness of order `4·3^b` in `A₄ × C_{3^{b−1}}` (just `A₄` for `b = 1`),
/// with `x = ((1,2,3), 0)` and `y = ((1,2)(3,4), 1)`.
pub fn construct_4_times_3b(b: u32) -> Result<ThWitness, HurwitzError> {
    four_times_three(b, DEFAULT_GROUP_CAP)
}

fn four_times_three(b: u32, cap: usize) -> Result<ThWitness, HurwitzError> {
    if b < 1 {
        return Err(HurwitzError::InvalidParameter(format!(
            "A4 construction needs b >= 1, got {b}"
        )));
    }
    let a4 = alternating(4)?;
    let (x, y) = a4
        .distinguished_generators()
        .expect("A4 has its generating pair");
    if b == 1 {
        return Ok(ThWitness::new(a4, x, y)?);
    }
    let m = 3usize
        .checked_pow(b - 1)
        .filter(|&m| m.saturating_mul(12) <= cap)
        .ok_or(GroupError::CapExceeded { cap })?;
    let g = direct_product_capped(&a4, &cyclic(m)?, cap)?;
    Ok(ThWitness::new(g, x * m, y * m + 1)?)
}

/// Extends a witness of order `n` to `G × C_m` for `gcd(n, m) = 1`, with
/// `x' = (x, 0)` and `y' = (y, 1)`.
pub fn construct_coprime(witness: &ThWitness, m: usize) -> Result<ThWitness, HurwitzError> {
    coprime(witness, m, DEFAULT_GROUP_CAP)
}

fn coprime(witness: &ThWitness, m: usize, cap: usize) -> Result<ThWitness, HurwitzError> {
    let n = witness.group().order();
    if m == 0 || gcd(n, m) != 1 {
        return Err(HurwitzError::InvalidParameter(format!(
            "gcd({n}, {m}) must be 1"
        )));
    }
    if m == 1 {
        return Ok(witness.clone());
    }
    let g = direct_product_capped(witness.group(), &cyclic(m)?, cap)?;
    Ok(ThWitness::new(g, witness.a() * m, witness.b() * m + 1)?)
}

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// A witness of order `n` when `n` is a tH number, built by the fixed recipe:
/// if `8 | n`, `n = 2^a·m` with `m` odd and the power-of-two witness is
/// extended by `C_m`; otherwise if `12 | n`, `n = 4·3^b·m` with `gcd(m, 6) = 1`
/// and the `A₄` witness is extended by `C_m`.
pub fn th_witness_for_order(n: usize, cap: usize) -> Result<Option<ThWitness>, HurwitzError> {
    if n == 0 {
        return Err(HurwitzError::InvalidParameter(
            "order must be positive".into(),
        ));
    }
    if n > cap {
        return Err(GroupError::CapExceeded { cap }.into());
    }
    if n.is_multiple_of(8) {
        let a = n.trailing_zeros();
        let w = power_two(a, cap)?;
        return coprime(&w, n >> a, cap).map(Some);
    }
    if n.is_multiple_of(12) {
        let mut m = n / 4;
        let mut b = 0;
        while m.is_multiple_of(3) {
            m /= 3;
            b += 1;
        }
        let w = four_times_three(b, cap)?;
        return coprime(&w, m, cap).map(Some);
    }
    Ok(None)
}

/// Decides whether genus `g` carries a Hurwitz translation surface and, if
/// so, builds a validated certificate for it.
pub fn hurwitz_genus_witness(g: usize, limits: Limits) -> Result<GenusVerdict, HurwitzError> {
    if g < 2 {
        return Err(HurwitzError::InvalidParameter(format!(
            "genus must be at least 2, got {g}"
        )));
    }
    let n = 4 * g - 4;
    let realizable = is_th_order(n);
    debug_assert_eq!(realizable, g % 2 == 1 || (g - 1).is_multiple_of(3));
    let certificate = match th_witness_for_order(n, limits.group_cap)? {
        Some(w) => Some(HtsCertificate::build(w, limits.analysis_budget)?),
        None => None,
    };
    if certificate.is_some() != realizable {
        return Err(HurwitzError::Contradiction(format!(
            "order {n}: arithmetic and construction disagree"
        )));
    }
    Ok(GenusVerdict {
        genus: g,
        realizable,
        certificate,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NegativeRow {
    pub order: usize,
    pub groups: Vec<String>,
    pub all_absent: bool,
}

/// Runs the exhaustive witness search on every catalogue group of a
/// non-tH order; a witness there is a hard error.
pub fn verify_negative_orders() -> Result<Vec<NegativeRow>, HurwitzError> {
    CATALOGUE_ORDERS
        .iter()
        .filter(|&&n| !is_th_order(n))
        .map(|&n| negative_check(n))
        .collect()
}

fn negative_check(n: usize) -> Result<NegativeRow, HurwitzError> {
    let groups = catalogue(n)?;
    for g in &groups {
        if let Some(w) = th_witness_search(g) {
            return Err(HurwitzError::Contradiction(format!(
                "{} of order {n} has a witness ({}, {})",
                g.name(),
                g.label(w.a()),
                g.label(w.b())
            )));
        }
    }
    Ok(NegativeRow {
        order: n,
        groups: groups.iter().map(|g| g.name().to_string()).collect(),
        all_absent: true,
    })
}

/// How a genus verdict was established.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum VerdictBasis {
    /// A certificate was built; `analyzed` records whether the translation group was counted.
    Certificate { group: String, analyzed: bool },
    /// Every catalogue group of order `4g − 4` was searched exhaustively.
    Exhaustive { groups: usize },
    /// Only the arithmetic classification backs the negative verdict.
    Arithmetic,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RangeRow {
    pub genus: usize,
    pub order: usize,
    pub realizable: bool,
    pub basis: VerdictBasis,
}

/// Verdicts for every genus `2 ≤ g ≤ g_max`, in genus order.
pub fn verify_theorem_range(g_max: usize, limits: Limits) -> Result<Vec<RangeRow>, HurwitzError> {
    if g_max < 2 {
        return Err(HurwitzError::InvalidParameter(format!(
            "g_max must be at least 2, got {g_max}"
        )));
    }
    let row = |g: usize| -> Result<RangeRow, HurwitzError> {
        let verdict = hurwitz_genus_witness(g, limits)?;
        let order = 4 * g - 4;
        let basis = match &verdict.certificate {
            Some(c) => {
                c.revalidate()?;
                VerdictBasis::Certificate {
                    group: c.group_name().to_string(),
                    analyzed: c.analyzed(),
                }
            }
            None if CATALOGUE_ORDERS.contains(&order) => VerdictBasis::Exhaustive {
                groups: negative_check(order)?.groups.len(),
            },
            None => VerdictBasis::Arithmetic,
        };
        Ok(RangeRow {
            genus: g,
            order,
            realizable: verdict.realizable,
            basis,
        })
    };
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (2..=g_max).into_par_iter().map(row).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (2..=g_max).map(row).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{dihedral_of_order, quaternion8};
    use crate::origami::known;

    #[test]
    fn regular_representation_origamis() {
        let q = quaternion8();
        let (i, j) = q.distinguished_generators().unwrap();
        let w = ThWitness::new(q, i, j).unwrap();
        assert!(hts_from_group(&w).is_equivalent(&known::eierlegende_wollmilchsau()));

        let d = dihedral_of_order(8).unwrap();
        let (t1, t2) = d.distinguished_generators().unwrap();
        let w = ThWitness::new(d, t1, t2).unwrap();
        assert!(hts_from_group(&w).is_equivalent(&known::escalator()));

        let w = construct_4_times_3b(1).unwrap();
        let o = hts_from_group(&w);
        assert!(o.is_equivalent(&known::a4_origami()));
        assert_eq!(o.genus(), 4);
    }

    #[test]
    fn power_two_construction() {
        let w = construct_power_two(3).unwrap();
        assert_eq!(w.group().order(), 8);
        assert_eq!(w.group().label(w.commutator()), "(2,0)");
        let w = construct_power_two(4).unwrap();
        assert_eq!(w.group().order(), 16);
        assert_eq!(w.group().label(w.commutator()), "(4,0)");
        assert!(matches!(
            construct_power_two(2),
            Err(HurwitzError::InvalidParameter(_))
        ));
    }

    #[test]
    fn a4_construction() {
        let w = construct_4_times_3b(1).unwrap();
        assert_eq!(w.group().order(), 12);
        assert_eq!(w.group().label(w.commutator()), "(1,4)(2,3)");
        let w = construct_4_times_3b(2).unwrap();
        assert_eq!(w.group().order(), 36);
        assert_eq!(w.group().name(), "A4xC3");
        assert_eq!(w.group().label(w.commutator()), "((1,4)(2,3),0)");
        let w = construct_4_times_3b(3).unwrap();
        assert_eq!(w.group().order(), 108);
        w.revalidate().unwrap();
        assert!(construct_4_times_3b(0).is_err());
    }

    #[test]
    fn coprime_extension() {
        let w8 = construct_power_two(3).unwrap();
        assert_eq!(construct_coprime(&w8, 1).unwrap().group().order(), 8);
        let w24 = construct_coprime(&w8, 3).unwrap();
        assert_eq!(w24.group().order(), 24);
        assert_eq!(w24.commutator_order(), 2);
        let w60 = construct_coprime(&construct_4_times_3b(1).unwrap(), 5).unwrap();
        assert_eq!(w60.group().order(), 60);
        w60.revalidate().unwrap();
        assert!(construct_coprime(&w8, 6).is_err());
    }

    #[test]
    fn th_orders() {
        assert!(is_th_order(8) && is_th_order(12) && is_th_order(24));
        assert!(!is_th_order(4) && !is_th_order(20));
        assert_eq!(
            th_witness_for_order(8, DEFAULT_GROUP_CAP)
                .unwrap()
                .unwrap()
                .group()
                .order(),
            8
        );
        let w = th_witness_for_order(120, DEFAULT_GROUP_CAP)
            .unwrap()
            .unwrap();
        assert_eq!(w.group().name(), "SD(4,3)xC15");
        w.revalidate().unwrap();
        assert!(th_witness_for_order(10, DEFAULT_GROUP_CAP)
            .unwrap()
            .is_none());
        assert!(th_witness_for_order(30000, DEFAULT_GROUP_CAP).is_err());
    }

    #[test]
    fn genus_verdicts() {
        let limits = Limits::default();
        assert!(!hurwitz_genus_witness(2, limits).unwrap().realizable);
        let v = hurwitz_genus_witness(3, limits).unwrap();
        let c = v.certificate.unwrap();
        assert_eq!(c.witness().group().order(), 8);
        assert!(c.analyzed());
        assert!(!hurwitz_genus_witness(6, limits).unwrap().realizable);
        assert!(hurwitz_genus_witness(1, limits).is_err());
    }

    #[test]
    fn large_certificates_skip_translation_count() {
        let limits = Limits {
            group_cap: DEFAULT_GROUP_CAP,
            analysis_budget: 16,
        };
        let v = hurwitz_genus_witness(7, limits).unwrap();
        let c = v.certificate.unwrap();
        assert!(!c.analyzed());
        c.revalidate().unwrap();
    }

    #[test]
    fn negative_orders_have_no_witness() {
        let rows = verify_negative_orders().unwrap();
        assert_eq!(rows.len(), CATALOGUE_ORDERS.len());
        let four = rows.iter().find(|r| r.order == 4).unwrap();
        assert_eq!(four.groups.len(), 2);
        let six = rows.iter().find(|r| r.order == 6).unwrap();
        assert_eq!(six.groups.len(), 2);
        assert!(rows.iter().all(|r| r.all_absent));
    }

    #[test]
    fn small_range() {
        let rows = verify_theorem_range(4, Limits::default()).unwrap();
        let verdicts: Vec<bool> = rows.iter().map(|r| r.realizable).collect();
        assert_eq!(verdicts, [false, true, true]);
        assert_eq!(rows[0].basis, VerdictBasis::Exhaustive { groups: 2 });
    }
}
