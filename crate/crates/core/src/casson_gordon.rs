//! Signature defects of finite cyclic covers of surgered 3-manifolds,
//! evaluated through the surgery formula
//!
//! ```text
//! sigma(M, chi^r) = sigma_{L'}(lambda) - Sign(Lambda) + 2 r(q-r)/q^2 p^T Lambda p
//! eta(M, chi^r)   = eta_{L'}(lambda) - mu' + mu
//! ```
//!
//! where L' replaces each surgery component by a non-empty algebraic
//! p_i-cable with the framing as twist, lambda = zeta_q^r, and mu' counts
//! the strands of L'. Connected sums and S^1 x S^2 summands follow their
//! additivity rules. The built-in example family instead reads its values
//! from a catalog (see [`q_catalog_value`]), since its surgery link is not
//! made of split unknots.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exact::matrix::IntMatrix;
use crate::exact::Rational;
use crate::forms::{
    annulus_seifert, seifert_split_union, torus_link_seifert, tristram_levine, HermitianMatrix,
    SeifertMatrix, SigNull,
};

/// A cable pattern: `copies` parallel strands in a twisted annulus, with
/// algebraic count `p` (strands with matching orientation minus strands
/// against it) and `twist` full twists.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CableSpec {
    p: i64,
    copies: u64,
    twist: i64,
}

impl CableSpec {
    pub fn new(p: i64, copies: u64, twist: i64) -> Result<Self> {
        let ok = copies >= 1
            && copies >= p.unsigned_abs()
            && (copies as i64 - p.abs()) % 2 == 0;
        if !ok {
            return Err(Error::InvalidCable { p, copies });
        }
        Ok(CableSpec { p, copies, twist })
    }

    /// The minimal cable of algebraic count `p`: |p| parallel strands, or
    /// the 2-strand opposite-orientation cable when p = 0 (a cable must be
    /// non-empty even for a trivial character component).
    pub fn minimal(p: i64, twist: i64) -> Self {
        let copies = p.unsigned_abs().max(if p == 0 { 2 } else { 1 });
        CableSpec { p, copies, twist }
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn copies(&self) -> u64 {
        self.copies
    }

    pub fn twist(&self) -> i64 {
        self.twist
    }

    /// Seifert matrix of this cable on an unknot, when one is built in:
    /// parallel cables give torus links, the 2-strand zero cable gives a
    /// twisted annulus. Reversing every strand leaves the signatures
    /// unchanged, so p < 0 parallel cables reuse the |p| torus link.
    fn seifert_on_unknot(&self) -> Result<SeifertMatrix> {
        if self.copies == self.p.unsigned_abs() {
            return torus_link_seifert(self.p.unsigned_abs() as i64, self.twist);
        }
        if self.p == 0 && self.copies == 2 {
            return Ok(annulus_seifert(self.twist));
        }
        Err(Error::UnsupportedCable {
            p: self.p,
            copies: self.copies,
        })
    }
}

/// Where the Tristram-Levine signatures of the cabled link L' come from.
#[derive(Clone, Debug)]
pub enum SignatureSource {
    /// An explicit Seifert matrix for the whole of L'.
    Seifert(SeifertMatrix),
    /// The components are split unknots (zero off-diagonal linking); L' is
    /// the split union of built-in cable matrices.
    UnknottedSplit,
    /// Tabulated values: (r, q) -> (signature, nullity) of L' at zeta_q^r.
    Tabulated(BTreeMap<(i64, u64), SigNull>),
}

/// A framed-link surgery description: symmetric linking matrix with the
/// framings on the diagonal, a cable per component, and a signature source
/// for the cabled link.
#[derive(Clone, Debug)]
pub struct SurgeryPresentation {
    linking_matrix: IntMatrix,
    cables: Vec<CableSpec>,
    source: SignatureSource,
}

impl SurgeryPresentation {
    pub fn new(
        linking_matrix: IntMatrix,
        cables: Vec<CableSpec>,
        source: SignatureSource,
    ) -> Result<Self> {
        linking_matrix.require_symmetric()?;
        if cables.len() != linking_matrix.rows() {
            return Err(Error::DimensionMismatch {
                context: format!(
                    "{} cables for {} surgery components",
                    cables.len(),
                    linking_matrix.rows()
                ),
            });
        }
        Ok(SurgeryPresentation {
            linking_matrix,
            cables,
            source,
        })
    }

    pub fn linking_matrix(&self) -> &IntMatrix {
        &self.linking_matrix
    }

    pub fn cables(&self) -> &[CableSpec] {
        &self.cables
    }

    pub fn mu(&self) -> usize {
        self.linking_matrix.rows()
    }

    /// Total strand count of the cabled link L'.
    pub fn mu_prime(&self) -> u64 {
        self.cables.iter().map(CableSpec::copies).sum()
    }

    /// First Betti number of the surgered manifold: the free rank of the
    /// cokernel of the linking matrix.
    pub fn betti_one(&self) -> usize {
        self.mu() - self.linking_matrix.smith_normal_form().rank
    }

    /// Signature and nullity of L' at zeta_q^r from the configured source.
    fn lprime_signature(&self, r: i64, q: u64) -> Result<SigNull> {
        match &self.source {
            SignatureSource::Seifert(v) => tristram_levine(v, r, q),
            SignatureSource::UnknottedSplit => {
                let n = self.mu();
                for i in 0..n {
                    for j in 0..i {
                        if !self.linking_matrix[(i, j)].is_zero() {
                            return Err(Error::LinkedComponents);
                        }
                    }
                }
                let pieces: Vec<SeifertMatrix> = self
                    .cables
                    .iter()
                    .map(CableSpec::seifert_on_unknot)
                    .collect::<Result<_>>()?;
                tristram_levine(&seifert_split_union(&pieces), r, q)
            }
            SignatureSource::Tabulated(table) => {
                let key = (r.rem_euclid(q as i64), q);
                table
                    .get(&key)
                    .copied()
                    .ok_or(Error::MissingSignature { r: key.0, q })
            }
        }
    }

    /// Index sets of the connected blocks of the linking matrix.
    fn blocks(&self) -> Vec<Vec<usize>> {
        let n = self.mu();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut stack = vec![start];
            let mut block = Vec::new();
            seen[start] = true;
            while let Some(i) = stack.pop() {
                block.push(i);
                for j in 0..n {
                    if !seen[j] && !self.linking_matrix[(i, j)].is_zero() {
                        seen[j] = true;
                        stack.push(j);
                    }
                }
            }
            block.sort_unstable();
            out.push(block);
        }
        out
    }

    fn restrict(&self, indices: &[usize]) -> SurgeryPresentation {
        let k = indices.len();
        let mut m = IntMatrix::zero(k, k);
        for (a, &i) in indices.iter().enumerate() {
            for (b, &j) in indices.iter().enumerate() {
                m[(a, b)] = self.linking_matrix[(i, j)].clone();
            }
        }
        SurgeryPresentation {
            linking_matrix: m,
            cables: indices.iter().map(|&i| self.cables[i]).collect(),
            source: self.source.clone(),
        }
    }
}

/// A character on the surgered manifold, recorded by the meridian
/// exponents: the covering sends meridian i to zeta_q^(p_i). Exponents are
/// integers (not residues) because the cable of component i realizes the
/// integer p_i.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharVector {
    exponents: Vec<BigInt>,
    q: u64,
}

impl CharVector {
    pub fn new(exponents: Vec<BigInt>, q: u64) -> Result<Self> {
        if q == 0 {
            return Err(Error::NonPositiveOrder);
        }
        Ok(CharVector { exponents, q })
    }

    pub fn from_i64(exponents: &[i64], q: u64) -> Self {
        Self::new(exponents.iter().map(|&x| BigInt::from(x)).collect(), q)
            .expect("positive order")
    }

    pub fn exponents(&self) -> &[BigInt] {
        &self.exponents
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn is_trivial(&self) -> bool {
        let q = BigInt::from(self.q);
        self.exponents.iter().all(|p| (p % &q).is_zero())
    }

    /// Order of the image subgroup of C_q.
    pub fn image_order(&self) -> u64 {
        let q = BigInt::from(self.q);
        let mut g = q.clone();
        for p in &self.exponents {
            g = g.gcd(p);
        }
        (BigInt::from(self.q) / g)
            .to_u64()
            .expect("divisor of q fits in u64")
    }
}

/// The signature defect and nullity of a cover: sigma is an exact rational
/// with denominator dividing q^2, eta a nonnegative integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CGValue {
    pub sigma: Rational,
    pub eta: u64,
}

impl CGValue {
    pub fn new(sigma: Rational, eta: u64) -> Self {
        CGValue { sigma, eta }
    }

    pub fn from_integer(sigma: i64, eta: u64) -> Self {
        CGValue {
            sigma: BigRational::from(BigInt::from(sigma)),
            eta,
        }
    }

    pub fn zero() -> Self {
        Self::from_integer(0, 0)
    }
}

/// Evaluate the surgery formula for chi^r on a surgery presentation.
///
/// The character must close on the presentation (Lambda p = 0 mod q). A
/// character that does not map onto C_q is first reduced to the order of
/// its image; the all-trivial character short-circuits to
/// (0, b_1 of the manifold). The cables must realize the character: cable
/// p_i must agree with the exponent of meridian i modulo q.
pub fn cg_surgery(
    presentation: &SurgeryPresentation,
    chi: &CharVector,
    r: i64,
) -> Result<CGValue> {
    let mu = presentation.mu();
    if chi.exponents.len() != mu {
        return Err(Error::DimensionMismatch {
            context: format!("{} exponents for {mu} components", chi.exponents.len()),
        });
    }
    let q0 = BigInt::from(chi.q);
    // Lambda p = 0 mod q
    for i in 0..mu {
        let mut acc = BigInt::zero();
        for j in 0..mu {
            acc += &presentation.linking_matrix[(i, j)] * &chi.exponents[j];
        }
        if !(&acc % &q0).is_zero() {
            return Err(Error::CharacterNotClosed { index: i });
        }
    }

    if chi.is_trivial() {
        return Ok(CGValue {
            sigma: BigRational::zero(),
            eta: presentation.betti_one() as u64,
        });
    }

    // reduce to the image order
    let q = chi.image_order();
    let g = BigInt::from(chi.q / q);
    let p: Vec<BigInt> = chi.exponents.iter().map(|x| x / &g).collect();

    if BigInt::from(r).gcd(&BigInt::from(q)) != BigInt::one() {
        return Err(Error::NotCoprime { r, q });
    }

    // cables must realize the (reduced) character
    let qq = BigInt::from(q);
    for (i, cable) in presentation.cables.iter().enumerate() {
        if !((BigInt::from(cable.p()) - &p[i]) % &qq).is_zero() {
            return Err(Error::Unsupported {
                context: format!(
                    "cable {i} has algebraic count {} but the character needs {} mod {q}",
                    cable.p(),
                    p[i]
                ),
            });
        }
    }

    let lprime = presentation.lprime_signature(r, q)?;
    let sign_lambda = HermitianMatrix::from_symmetric_int(&presentation.linking_matrix)?
        .sig_null()?
        .signature;

    // twist term 2 r(q-r)/q^2 p^T Lambda p, with the integer p realized by
    // the cables
    let cable_p: Vec<BigInt> = presentation
        .cables
        .iter()
        .map(|c| BigInt::from(c.p()))
        .collect();
    let mut quad = BigInt::zero();
    for i in 0..mu {
        for j in 0..mu {
            quad += &cable_p[i] * &presentation.linking_matrix[(i, j)] * &cable_p[j];
        }
    }
    let rm = r.rem_euclid(q as i64) as u64;
    let twist = BigRational::new(
        BigInt::from(2) * BigInt::from(rm) * BigInt::from(q - rm) * quad,
        BigInt::from(q) * BigInt::from(q),
    );

    let sigma = BigRational::from(BigInt::from(lprime.signature - sign_lambda)) + twist;
    let eta = lprime.nullity as i64 - presentation.mu_prime() as i64 + mu as i64;
    let eta = u64::try_from(eta).map_err(|_| Error::Unsupported {
        context: "nullity bookkeeping went negative; signature data is inconsistent".into(),
    })?;
    Ok(CGValue { sigma, eta })
}

/// Additivity under connected sum: sigma adds; eta adds, plus one for
/// every nontrivial summand beyond the first.
pub fn cg_connected_sum(values: &[(CGValue, bool)]) -> CGValue {
    assert!(!values.is_empty(), "connected sum of at least one summand");
    let sigma = values
        .iter()
        .fold(BigRational::zero(), |acc, (v, _)| acc + &v.sigma);
    let eta: u64 = values.iter().map(|(v, _)| v.eta).sum();
    let nontrivial = values.iter().filter(|(_, trivial)| !trivial).count() as u64;
    CGValue {
        sigma,
        eta: eta + nontrivial.saturating_sub(1),
    }
}

/// The invariants of S^1 x S^2: sigma vanishes; eta is 1 exactly for the
/// trivial character.
pub fn cg_s1s2(chi_trivial: bool) -> CGValue {
    CGValue {
        sigma: BigRational::zero(),
        eta: if chi_trivial { 1 } else { 0 },
    }
}

/// Link-level invariants from a surgery presentation of the double
/// branched cover: delegates to the surgery formula, splitting over
/// block-diagonal pieces of the linking matrix when the signature source
/// permits (each block then carries the restricted character).
pub fn link_cg(
    presentation: &SurgeryPresentation,
    chi: &CharVector,
    r: i64,
) -> Result<CGValue> {
    let blocks = presentation.blocks();
    let splittable = matches!(presentation.source, SignatureSource::UnknottedSplit);
    if blocks.len() <= 1 || !splittable {
        return cg_surgery(presentation, chi, r);
    }
    let mut parts = Vec::with_capacity(blocks.len());
    for block in &blocks {
        let sub = presentation.restrict(block);
        let sub_chi = CharVector::new(
            block.iter().map(|&i| chi.exponents[i].clone()).collect(),
            chi.q,
        )?;
        let trivial = sub_chi.is_trivial();
        parts.push((cg_surgery(&sub, &sub_chi, r)?, trivial));
    }
    Ok(cg_connected_sum(&parts))
}

/// Character types on one summand of the example family's double cover,
/// classified by the pair of order-3 meridian exponents.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QBlockCharacter {
    /// (0, 0)
    Trivial,
    /// (+-1, 0) or (0, +-1)
    Axis,
    /// +-(1, 1): exponent product +1 mod 3
    DiagonalPlus,
    /// +-(1, -1): exponent product -1 mod 3
    DiagonalMinus,
}

impl QBlockCharacter {
    /// Classify an exponent pair mod 3.
    pub fn classify(a1: i64, a2: i64) -> Self {
        let (a1, a2) = (a1.rem_euclid(3), a2.rem_euclid(3));
        match (a1 * a2).rem_euclid(3) {
            0 if a1 == 0 && a2 == 0 => QBlockCharacter::Trivial,
            0 => QBlockCharacter::Axis,
            1 => QBlockCharacter::DiagonalPlus,
            _ => QBlockCharacter::DiagonalMinus,
        }
    }
}

/// Catalog of the example family's summand invariants for order-3
/// characters, as additive corrections in the companion knot's signature
/// sigma_K at the primitive cube root of unity:
///
/// - trivial:          (0, 0)
/// - axis:             (1 + 2 sigma_K, 0)
/// - diagonal, +1:     (-1 - 24/9 + 4 sigma_K, 0)
/// - diagonal, -1:     (4 + 24/9 + 4 sigma_K, 1)
pub fn q_catalog_value(kind: QBlockCharacter, sigma_k: i64) -> CGValue {
    let frac = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
    match kind {
        QBlockCharacter::Trivial => CGValue::zero(),
        QBlockCharacter::Axis => CGValue::new(frac(1 + 2 * sigma_k, 1), 0),
        QBlockCharacter::DiagonalPlus => {
            CGValue::new(frac(-1 + 4 * sigma_k, 1) - frac(24, 9), 0)
        }
        QBlockCharacter::DiagonalMinus => {
            CGValue::new(frac(4 + 4 * sigma_k, 1) + frac(24, 9), 1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn frac(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn rp3() -> SurgeryPresentation {
        SurgeryPresentation::new(
            IntMatrix::from_i64(&[&[2]]),
            vec![CableSpec::new(1, 1, 2).unwrap()],
            SignatureSource::UnknottedSplit,
        )
        .unwrap()
    }

    #[test]
    fn rp3_surgery_values() {
        let chi = CharVector::from_i64(&[1], 2);
        let v = cg_surgery(&rp3(), &chi, 1).unwrap();
        assert_eq!(v, CGValue::from_integer(0, 0));
    }

    #[test]
    fn character_must_close() {
        let chi = CharVector::from_i64(&[1], 3);
        assert!(matches!(
            cg_surgery(&rp3(), &chi, 1),
            Err(Error::CharacterNotClosed { index: 0 })
        ));
    }

    #[test]
    fn trivial_character_shortcut() {
        let pres = SurgeryPresentation::new(
            IntMatrix::from_i64(&[&[2]]),
            vec![CableSpec::minimal(0, 2)],
            SignatureSource::UnknottedSplit,
        )
        .unwrap();
        let chi = CharVector::from_i64(&[0], 3);
        assert_eq!(cg_surgery(&pres, &chi, 1).unwrap(), CGValue::zero());
        // surgery on a zero-framed unknot has b_1 = 1
        let pres = SurgeryPresentation::new(
            IntMatrix::from_i64(&[&[0]]),
            vec![CableSpec::minimal(0, 0)],
            SignatureSource::UnknottedSplit,
        )
        .unwrap();
        let chi = CharVector::from_i64(&[0], 2);
        assert_eq!(
            cg_surgery(&pres, &chi, 1).unwrap(),
            CGValue::new(BigRational::zero(), 1)
        );
    }

    #[test]
    fn s1s2_from_surgery_matches_axioms() {
        // zero-framed unknot with a nontrivial order-q character: the
        // 1-cable is the unknot again
        for q in [2u64, 3, 5] {
            let pres = SurgeryPresentation::new(
                IntMatrix::from_i64(&[&[0]]),
                vec![CableSpec::new(1, 1, 0).unwrap()],
                SignatureSource::UnknottedSplit,
            )
            .unwrap();
            let chi = CharVector::from_i64(&[1], q);
            let got = cg_surgery(&pres, &chi, 1).unwrap();
            assert_eq!(got, cg_s1s2(false), "q = {q}");
        }
        assert_eq!(cg_s1s2(true), CGValue::new(BigRational::zero(), 1));
        // k trivial summands accumulate k in eta
        let parts = vec![(cg_s1s2(true), true); 3];
        assert_eq!(
            cg_connected_sum(&parts),
            CGValue::new(BigRational::zero(), 3)
        );
    }

    #[test]
    fn twist_term_arithmetic() {
        // Lambda = [[0,3],[3,0]], p = (1,1), q = 3, r = 1: twist = 8/3
        let lam = IntMatrix::from_i64(&[&[0, 3], &[3, 0]]);
        let mk = |p1: i64, p2: i64, lam: &IntMatrix| {
            let mut table = BTreeMap::new();
            table.insert((1i64, 3u64), SigNull::ZERO);
            SurgeryPresentation::new(
                lam.clone(),
                vec![
                    CableSpec::minimal(p1, 0),
                    CableSpec::minimal(p2, 0),
                ],
                SignatureSource::Tabulated(table),
            )
            .unwrap()
        };
        // with sigma_{L'} = 0 and Sign(Lambda) = 0 the whole value is the
        // twist term
        let v = cg_surgery(&mk(1, 1, &lam), &CharVector::from_i64(&[1, 1], 3), 1).unwrap();
        assert_eq!(v.sigma, frac(8, 3));
        let v = cg_surgery(&mk(1, -1, &lam), &CharVector::from_i64(&[1, -1], 3), 1).unwrap();
        assert_eq!(v.sigma, frac(-8, 3));
        // p -> -p leaves it unchanged
        let v = cg_surgery(&mk(-1, -1, &lam), &CharVector::from_i64(&[-1, -1], 3), 1).unwrap();
        assert_eq!(v.sigma, frac(8, 3));
        // Lambda -> -Lambda flips it
        let v = cg_surgery(
            &mk(1, 1, &lam.neg()),
            &CharVector::from_i64(&[1, 1], 3),
            1,
        )
        .unwrap();
        assert_eq!(v.sigma, frac(-8, 3));
    }

    #[test]
    fn conjugation_symmetry() {
        // sigma(M, chi^r) = sigma(M, chi^(q-r)); the 2-cable makes L' a
        // genuine torus link so its signatures enter nontrivially
        let pres = SurgeryPresentation::new(
            IntMatrix::from_i64(&[&[5]]),
            vec![CableSpec::new(2, 2, 5).unwrap()],
            SignatureSource::UnknottedSplit,
        )
        .unwrap();
        let chi = CharVector::from_i64(&[2], 5);
        for r in [1i64, 2] {
            let a = cg_surgery(&pres, &chi, r).unwrap();
            let b = cg_surgery(&pres, &chi, 5 - r).unwrap();
            assert_eq!(a, b, "r = {r}");
        }
        // distinct r values genuinely differ here
        let a = cg_surgery(&pres, &chi, 1).unwrap();
        let b = cg_surgery(&pres, &chi, 2).unwrap();
        assert_ne!(a.sigma, b.sigma);
    }

    #[test]
    fn sigma_denominator_divides_q_squared() {
        let pres = SurgeryPresentation::new(
            IntMatrix::from_i64(&[&[3]]),
            vec![CableSpec::new(1, 1, 3).unwrap()],
            SignatureSource::UnknottedSplit,
        )
        .unwrap();
        for (r, q) in [(1i64, 3u64), (2, 3)] {
            let chi = CharVector::from_i64(&[1], q);
            let v = cg_surgery(&pres, &chi, r).unwrap();
            let q2 = BigInt::from(q) * BigInt::from(q);
            assert!(
                (&q2 % v.sigma.denom()).is_zero(),
                "denominator {} does not divide {q2}",
                v.sigma.denom()
            );
        }
    }

    #[test]
    fn connected_sum_eta_bookkeeping() {
        let a = CGValue::from_integer(1, 0);
        let sum = cg_connected_sum(&[(a.clone(), false), (a.clone(), false)]);
        assert_eq!(sum, CGValue::from_integer(2, 1));
        let sum = cg_connected_sum(&[(a.clone(), false), (CGValue::zero(), true)]);
        assert_eq!(sum, CGValue::from_integer(1, 0));
        let sum = cg_connected_sum(&[(a.clone(), false)]);
        assert_eq!(sum, a);
    }

    #[test]
    fn block_split_matches_whole() {
        // RP(3) block with a trivial character plus a zero-framed unknot
        // block with a nontrivial one; block evaluation via connected sum
        // must equal the whole-presentation formula.
        let whole = SurgeryPresentation::new(
            IntMatrix::from_i64(&[&[2, 0], &[0, 9]]),
            vec![CableSpec::minimal(0, 2), CableSpec::new(1, 1, 9).unwrap()],
            SignatureSource::UnknottedSplit,
        )
        .unwrap();
        let chi = CharVector::from_i64(&[0, 1], 3);
        let split = link_cg(&whole, &chi, 1).unwrap();
        let direct = cg_surgery(&whole, &chi, 1).unwrap();
        assert_eq!(split, direct);

        // and with both blocks nontrivial the +1 eta rule must agree too
        let whole = SurgeryPresentation::new(
            IntMatrix::from_i64(&[&[3, 0], &[0, 9]]),
            vec![
                CableSpec::new(1, 1, 3).unwrap(),
                CableSpec::new(1, 1, 9).unwrap(),
            ],
            SignatureSource::UnknottedSplit,
        )
        .unwrap();
        let chi = CharVector::from_i64(&[1, 1], 3);
        let split = link_cg(&whole, &chi, 1).unwrap();
        let direct = cg_surgery(&whole, &chi, 1).unwrap();
        assert_eq!(split, direct);
    }

    #[test]
    fn image_reduction() {
        // exponents (2) at q = 6 generate the order-3 subgroup
        let chi = CharVector::from_i64(&[2], 6);
        assert_eq!(chi.image_order(), 3);
        let pres = SurgeryPresentation::new(
            IntMatrix::from_i64(&[&[3]]),
            vec![CableSpec::new(1, 1, 3).unwrap()],
            SignatureSource::UnknottedSplit,
        )
        .unwrap();
        let direct = cg_surgery(
            &pres,
            &CharVector::from_i64(&[1], 3),
            1,
        )
        .unwrap();
        let reduced = cg_surgery(&pres, &chi, 1).unwrap();
        assert_eq!(direct, reduced);
    }

    #[test]
    fn cable_validation() {
        assert!(CableSpec::new(1, 1, 0).is_ok());
        assert!(CableSpec::new(0, 2, 5).is_ok());
        assert!(CableSpec::new(-2, 4, 1).is_ok());
        assert!(matches!(
            CableSpec::new(1, 2, 0),
            Err(Error::InvalidCable { .. })
        ));
        assert!(matches!(
            CableSpec::new(3, 1, 0),
            Err(Error::InvalidCable { .. })
        ));
        assert_eq!(CableSpec::minimal(0, 7).copies(), 2);
        assert_eq!(CableSpec::minimal(-3, 7).copies(), 3);
    }

    #[test]
    fn catalog_values() {
        assert_eq!(
            q_catalog_value(QBlockCharacter::Axis, 0),
            CGValue::from_integer(1, 0)
        );
        let v = q_catalog_value(QBlockCharacter::DiagonalPlus, 0);
        assert_eq!(v.sigma, frac(-11, 3));
        assert_eq!(v.eta, 0);
        let v = q_catalog_value(QBlockCharacter::DiagonalMinus, -2);
        assert_eq!(v.sigma, frac(-4, 3));
        assert_eq!(v.eta, 1);
        assert_eq!(q_catalog_value(QBlockCharacter::Trivial, 17), CGValue::zero());
    }

    #[test]
    fn q_character_classification() {
        use QBlockCharacter::*;
        assert_eq!(QBlockCharacter::classify(0, 0), Trivial);
        for (a, b) in [(1, 0), (-1, 0), (0, 1), (0, -1), (2, 0)] {
            assert_eq!(QBlockCharacter::classify(a, b), Axis, "({a},{b})");
        }
        for (a, b) in [(1, 1), (-1, -1), (2, 2)] {
            assert_eq!(QBlockCharacter::classify(a, b), DiagonalPlus, "({a},{b})");
        }
        for (a, b) in [(1, -1), (-1, 1), (1, 2)] {
            assert_eq!(QBlockCharacter::classify(a, b), DiagonalMinus, "({a},{b})");
        }
    }
}
