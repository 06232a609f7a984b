//! The built-in example family: a two-component link of Seifert genus h,
//! parametrized by a companion knot K, whose classical signatures are
//! constant (+1 with zero nullity), so the classical bound never sees more
//! than an annulus. The covering-invariant test recovers the full genus.
//!
//! The double branched cover is surgery on a framed link with linking
//! matrix [2] + h hyperbolic blocks [[0,3],[3,0]]; it splits as a
//! connected sum of a lens-space piece and h copies of a summand Q whose
//! order-3 character invariants enter through the catalog in
//! [`crate::casson_gordon::q_catalog_value`], with an additive correction
//! in sigma_K at the primitive cube root of unity.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::casson_gordon::{
    cg_connected_sum, q_catalog_value, CGValue, QBlockCharacter,
};
use crate::error::{Error, Result};
use crate::exact::matrix::IntMatrix;
use crate::forms::{signature_at_minus_one, tristram_levine, SeifertMatrix};
use crate::homology::{linking_form_from_presentation, Character, LinkingForm};
use crate::obstruction::{
    murasugi_tristram_bound, theorem_main_check, CgSource, GenusQuery, ObstructionReport,
    Verdict,
};

/// Linking matrix of the surgery presentation of the double branched
/// cover: [2] + h hyperbolic blocks.
pub fn family_linking_matrix(h: u32) -> IntMatrix {
    let two = IntMatrix::from_i64(&[&[2]]);
    let block = IntMatrix::from_i64(&[&[0, 3], &[3, 0]]);
    let mut parts: Vec<&IntMatrix> = vec![&two];
    for _ in 0..h {
        parts.push(&block);
    }
    IntMatrix::block_diag(&parts)
}

/// Seifert matrix of the family link on its genus-h surface: one band
/// with self-framing 1 and h pairs of bands linking 3, one-sidedly. The
/// companion knot ties the bands without changing any linking number, so
/// the Seifert pairing is independent of K. Its symmetrization is exactly
/// [`family_linking_matrix`], and its twisted signatures are +1 with zero
/// nullity at every root of unity away from 1.
pub fn family_seifert(h: u32) -> SeifertMatrix {
    let one = IntMatrix::from_i64(&[&[1]]);
    let band = IntMatrix::from_i64(&[&[0, 3], &[0, 0]]);
    let mut parts: Vec<&IntMatrix> = vec![&one];
    for _ in 0..h {
        parts.push(&band);
    }
    SeifertMatrix::new(IntMatrix::block_diag(&parts), 2, Some(h))
        .expect("2h + 1 = 2 * genus + mu - 1")
}

/// The linking form [1/2] + h hyperbolic blocks [[0,1/3],[1/3,0]].
pub fn family_linking_form(h: u32) -> LinkingForm {
    linking_form_from_presentation(&family_linking_matrix(h))
        .expect("the family presentation is nonsingular")
}

/// Companion-knot input: either the signature value at the primitive cube
/// root of unity, or a Seifert matrix to compute it from.
#[derive(Clone, Debug)]
pub enum Companion {
    SigmaK(i64),
    Knot(SeifertMatrix),
}

impl Companion {
    pub fn sigma_k(&self) -> Result<i64> {
        match self {
            Companion::SigmaK(s) => Ok(*s),
            Companion::Knot(v) => Ok(tristram_levine(v, 1, 3)?.signature),
        }
    }
}

/// Catalog-backed covering invariants for the family's order-3 characters:
/// the lens-space factor always carries the trivial character; each
/// hyperbolic block contributes its catalog value; connected-sum
/// additivity assembles the total.
pub struct FamilyCg {
    pub sigma_k: i64,
}

impl CgSource for FamilyCg {
    fn value(&self, chi: &Character) -> Result<CGValue> {
        let e = chi.exponents();
        if e.len() % 2 != 1 {
            return Err(Error::MissingCharacterData {
                context: format!("{chi} is not a family character"),
            });
        }
        if !e[0].is_zero() {
            return Err(Error::MissingCharacterData {
                context: format!("{chi} is nontrivial on the 2-torsion factor"),
            });
        }
        let mut parts = vec![(CGValue::zero(), true)]; // lens-space piece
        for pair in e[1..].chunks(2) {
            let a1 = pair[0].to_i64().ok_or_else(|| Error::MissingCharacterData {
                context: chi.to_string(),
            })?;
            let a2 = pair[1].to_i64().ok_or_else(|| Error::MissingCharacterData {
                context: chi.to_string(),
            })?;
            let kind = QBlockCharacter::classify(a1, a2);
            parts.push((
                q_catalog_value(kind, self.sigma_k),
                kind == QBlockCharacter::Trivial,
            ));
        }
        Ok(cg_connected_sum(&parts))
    }
}

/// Everything the family runner reports.
#[derive(Clone, Debug)]
pub struct FamilyReport {
    pub h: u32,
    pub sigma_k: i64,
    pub genus_tested: u64,
    pub sigma_minus_one: i64,
    pub murasugi_tristram_bound: u64,
    pub report: ObstructionReport,
    /// The exact slice genus when the test obstructs genus h - 1 (the
    /// genus-h surface provides the matching upper bound).
    pub slice_genus: Option<u32>,
}

/// Sample of prime-power roots of unity used for the classical bound.
pub const DEFAULT_LAMBDAS: [(i64, u64); 8] =
    [(1, 2), (1, 3), (2, 3), (1, 4), (1, 5), (1, 7), (1, 8), (1, 9)];

/// Run both obstructions for the family member (h, K) at genus h - 1.
pub fn family_run(h: u32, companion: &Companion, max_group_order: &BigInt) -> Result<FamilyReport> {
    assert!(h >= 1, "the family starts at h = 1");
    let sigma_k = companion.sigma_k()?;
    let seifert = family_seifert(h);
    let sigma_minus_one = signature_at_minus_one(&seifert)?;
    let mt = murasugi_tristram_bound(&seifert, &DEFAULT_LAMBDAS)?;
    let beta = family_linking_form(h);
    let query = GenusQuery {
        genus: (h - 1) as u64,
        mu: 2,
        sigma_minus_one,
        beta,
    };
    let source = FamilyCg { sigma_k };
    let report = theorem_main_check(&query, &source, max_group_order)?;
    let slice_genus = match report.verdict {
        Verdict::Obstructed => Some(h),
        Verdict::NotObstructedByThisTest => None,
    };
    Ok(FamilyReport {
        h,
        sigma_k,
        genus_tested: (h - 1) as u64,
        sigma_minus_one,
        murasugi_tristram_bound: mt,
        report,
        slice_genus,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::alexander_polynomial;
    use crate::homology::QmodZ;

    fn bound() -> BigInt {
        BigInt::from(6561)
    }

    #[test]
    fn seifert_matrix_reconstruction_pins() {
        for h in 1..=3u32 {
            let v = family_seifert(h);
            // symmetrization is the surgery linking matrix
            assert_eq!(v.symmetrized(), family_linking_matrix(h));
            // signature +1, nullity 0 at every sampled root of unity
            for (r, q) in [(1i64, 2u64), (1, 3), (2, 3), (1, 4), (1, 5), (3, 7), (5, 8)] {
                let sn = tristram_levine(&v, r, q).unwrap();
                assert_eq!((sn.signature, sn.nullity), (1, 0), "h={h} at {r}/{q}");
            }
            // determinant magnitude 2 * 3^(2h)
            let det = alexander_polynomial(&v).eval(&BigInt::from(-1));
            assert_eq!(det.magnitude(), &(BigInt::from(2) * BigInt::from(9).pow(h)).magnitude().clone());
        }
    }

    #[test]
    fn linking_form_display() {
        let f = family_linking_form(2);
        assert_eq!(
            f.factors(),
            &[
                BigInt::from(2),
                BigInt::from(3),
                BigInt::from(3),
                BigInt::from(3),
                BigInt::from(3)
            ]
        );
        assert_eq!(f.gram_entry(0, 0), &QmodZ::from_fraction(1, 2));
        assert_eq!(f.gram_entry(1, 2), &QmodZ::from_fraction(1, 3));
        assert_eq!(f.gram_entry(3, 4), &QmodZ::from_fraction(1, 3));
        assert!(f.gram_entry(1, 1).is_zero());
        assert!(f.gram_entry(2, 3).is_zero());
    }

    #[test]
    fn headline_cases() {
        // slice companion: silent at genus 0
        let r = family_run(1, &Companion::SigmaK(0), &bound()).unwrap();
        assert_eq!(r.report.verdict, Verdict::NotObstructedByThisTest);
        assert_eq!(r.slice_genus, None);
        // companion with sigma_K = 2: genus 0 obstructed, slice genus 1
        let r = family_run(1, &Companion::SigmaK(2), &bound()).unwrap();
        assert_eq!(r.report.verdict, Verdict::Obstructed);
        assert_eq!(r.slice_genus, Some(1));
        // the negative branch
        let r = family_run(1, &Companion::SigmaK(-4), &bound()).unwrap();
        assert_eq!(r.report.verdict, Verdict::Obstructed);
        // classical bound stays silent throughout
        assert_eq!(r.murasugi_tristram_bound, 0);
    }

    #[test]
    fn knot_companion() {
        // granny knot: sigma at the cube root is -4, hitting the boundary
        // of the negative branch for h = 1
        let trefoil =
            SeifertMatrix::new(IntMatrix::from_i64(&[&[-1, 1], &[0, -1]]), 1, Some(1)).unwrap();
        let granny = crate::forms::seifert_connected_sum(&trefoil, &trefoil);
        let companion = Companion::Knot(granny);
        assert_eq!(companion.sigma_k().unwrap(), -4);
        let r = family_run(1, &companion, &bound()).unwrap();
        assert_eq!(r.report.verdict, Verdict::Obstructed);
    }

    #[test]
    fn theorem_branches_h_up_to_3() {
        for h in 1..=3u32 {
            for sigma_k in -12..=12i64 {
                let r = family_run(h, &Companion::SigmaK(sigma_k), &bound()).unwrap();
                let in_branch = sigma_k >= 2 * h as i64 || sigma_k <= -2 * h as i64 - 2;
                if in_branch {
                    assert_eq!(
                        r.report.verdict,
                        Verdict::Obstructed,
                        "h={h}, sigma_K={sigma_k}"
                    );
                }
                if sigma_k == 0 {
                    assert_eq!(
                        r.report.verdict,
                        Verdict::NotObstructedByThisTest,
                        "h={h}, slice companion"
                    );
                }
            }
        }
    }

    #[test]
    fn obstruction_monotone_along_branches() {
        for h in 1..=2u32 {
            let obstructed = |s: i64| {
                family_run(h, &Companion::SigmaK(s), &bound())
                    .unwrap()
                    .report
                    .verdict
                    == Verdict::Obstructed
            };
            for s in 0..=10i64 {
                if obstructed(s) {
                    assert!(obstructed(s + 2), "h={h}, positive branch at {s}");
                }
            }
            for s in (-10..=0i64).rev() {
                if obstructed(s) {
                    assert!(obstructed(s - 2), "h={h}, negative branch at {s}");
                }
            }
        }
    }

    #[test]
    fn ledger_is_complete_and_conjugation_symmetric() {
        let r = family_run(2, &Companion::SigmaK(0), &bound()).unwrap();
        // self-annihilating order-3 characters on two hyperbolic blocks:
        // 5 * 5 axis/trivial patterns plus 8 cross patterns, minus trivial
        assert_eq!(r.report.ledger.len(), 32);
        for line in &r.report.ledger {
            let inverse = line.character.inverse();
            let partner = r
                .report
                .ledger
                .iter()
                .find(|l| l.character == inverse)
                .expect("inverse character is also self-annihilating");
            assert_eq!(line.value, partner.value);
            assert_eq!(line.star_holds, partner.star_holds);
        }
    }

    #[test]
    fn metabolizer_survey_attached() {
        let r = family_run(1, &Companion::SigmaK(0), &bound()).unwrap();
        let survey = r.report.metabolizers.expect("odd part is within bounds");
        // the odd part is one hyperbolic block: its two axes
        assert_eq!(survey.lines.len(), 2);
        // sigma_K = 0 leaves axis characters satisfying (*), so both survive
        assert!(survey.lines.iter().all(|l| l.survives));
        let r = family_run(1, &Companion::SigmaK(2), &bound()).unwrap();
        let survey = r.report.metabolizers.unwrap();
        assert!(survey.lines.iter().all(|l| !l.survives));
    }
}
