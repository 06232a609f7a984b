//! Slice-genus obstructions.
//!
//! Two tests are implemented. The classical signature bound reads the
//! Tristram-Levine invariants at prime-power roots of unity. The sharper
//! test decomposes the linking form of the double branched cover: if the
//! group needs more generators than a genus-g surface would allow, some
//! metabolic summand is forced, and every nontrivial metabolizer contains
//! a prime-order self-annihilating character, whose covering invariants
//! must then satisfy the inequality
//!
//! ```text
//! |sigma(L, chi) + sigma_L(-1)| <= eta(L, chi) + 4g + 3 mu - 2     (*)
//! ```
//!
//! If every such character violates (*), no genus-g surface exists.
//! A verdict of NOT_OBSTRUCTED only means this test is silent.

pub mod family;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::casson_gordon::CGValue;
use crate::error::{Error, Result};
use crate::exact::poly::prime_power_base;
use crate::forms::{tristram_levine, SeifertMatrix};
use crate::homology::{
    enumerate_metabolizers, factorize, self_annihilating_characters, square_part_primes,
    Character, LinkingForm, QmodZ,
};

/// Provider of covering invariants per character. Implementors may read a
/// table, evaluate a surgery presentation, or consult a catalog.
pub trait CgSource {
    fn value(&self, chi: &Character) -> Result<CGValue>;
}

/// A tabulated source keyed by character exponents.
pub struct TabulatedCg {
    pub values: std::collections::BTreeMap<Vec<BigInt>, CGValue>,
}

impl CgSource for TabulatedCg {
    fn value(&self, chi: &Character) -> Result<CGValue> {
        self.values
            .get(chi.exponents())
            .cloned()
            .ok_or_else(|| Error::MissingCharacterData {
                context: chi.to_string(),
            })
    }
}

/// Covering invariants evaluated through the surgery formula on a
/// presentation of split unknotted components: each character determines
/// its own cables (the minimal ones realizing the meridian exponents,
/// with the framings as twists).
pub struct SurgeryCg {
    presented: crate::homology::PresentedLinkingForm,
    linking_matrix: crate::exact::matrix::IntMatrix,
    framings: Vec<i64>,
}

impl SurgeryCg {
    pub fn new(linking_matrix: crate::exact::matrix::IntMatrix) -> Result<Self> {
        let presented = crate::homology::presented_linking_form(&linking_matrix)?;
        let framings = (0..linking_matrix.rows())
            .map(|i| {
                linking_matrix[(i, i)]
                    .to_i64()
                    .ok_or_else(|| Error::Unsupported {
                        context: format!("framing {} too large", linking_matrix[(i, i)]),
                    })
            })
            .collect::<Result<_>>()?;
        Ok(SurgeryCg {
            presented,
            linking_matrix,
            framings,
        })
    }

    pub fn form(&self) -> &LinkingForm {
        &self.presented.form
    }
}

impl CgSource for SurgeryCg {
    fn value(&self, chi: &Character) -> Result<CGValue> {
        use crate::casson_gordon::{link_cg, CableSpec, CharVector, SignatureSource, SurgeryPresentation};
        let order = chi.order();
        let q = order.to_u64().ok_or_else(|| Error::Unsupported {
            context: format!("character order {order} too large"),
        })?;
        let exponents = self.presented.character_on_meridians(chi, &BigInt::from(q));
        // balanced lifts keep the cables small
        let lifts: Vec<i64> = exponents
            .iter()
            .map(|e| {
                let e = e.to_i64().expect("residue mod q fits in i64");
                if e as u64 > q / 2 {
                    e - q as i64
                } else {
                    e
                }
            })
            .collect();
        let cables: Vec<CableSpec> = lifts
            .iter()
            .zip(&self.framings)
            .map(|(&p, &f)| CableSpec::minimal(p, f))
            .collect();
        let pres = SurgeryPresentation::new(
            self.linking_matrix.clone(),
            cables,
            SignatureSource::UnknottedSplit,
        )?;
        let chi_vec = CharVector::new(lifts.iter().map(|&p| BigInt::from(p)).collect(), q)?;
        link_cg(&pres, &chi_vec, 1)
    }
}

/// Inputs of the genus test.
#[derive(Clone, Debug)]
pub struct GenusQuery {
    /// Candidate genus being obstructed.
    pub genus: u64,
    /// Number of link components.
    pub mu: u32,
    /// sigma_L(-1), the classical signature.
    pub sigma_minus_one: i64,
    /// Linking form of the double branched cover on its character group.
    pub beta: LinkingForm,
}

impl GenusQuery {
    pub fn rank_bound(&self) -> u64 {
        2 * self.genus + self.mu as u64 - 1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Obstructed,
    NotObstructedByThisTest,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Obstructed => write!(f, "OBSTRUCTED"),
            Verdict::NotObstructedByThisTest => write!(f, "NOT_OBSTRUCTED_BY_THIS_TEST"),
        }
    }
}

/// One evaluated character in the report.
#[derive(Clone, Debug)]
pub struct CharacterLine {
    pub character: Character,
    pub value: CGValue,
    pub star_holds: bool,
}

/// The generator-count argument.
#[derive(Clone, Debug)]
pub struct RankTrace {
    pub min_generators: usize,
    pub rank_bound: u64,
    /// True when the group cannot be presented within the rank bound, so
    /// any admissible decomposition has a nontrivial metabolic summand.
    pub forces_nontrivial_summand: bool,
}

/// Optional exhaustive sweep over metabolizers of the odd part.
#[derive(Clone, Debug)]
pub struct MetabolizerSurvey {
    pub lines: Vec<MetabolizerLine>,
    pub note: String,
}

#[derive(Clone, Debug)]
pub struct MetabolizerLine {
    pub generators: Vec<Vec<BigInt>>,
    pub order: BigInt,
    /// All prime-power characters inside satisfy (*).
    pub survives: bool,
}

#[derive(Clone, Debug)]
pub struct ObstructionReport {
    pub verdict: Verdict,
    pub rank: RankTrace,
    pub ledger: Vec<CharacterLine>,
    pub metabolizers: Option<MetabolizerSurvey>,
}

/// The classical bound: for each prime-power root of unity,
/// |sigma| + nullity <= 2g + mu - 1, so g is at least the best
/// ceil((|sigma| + nullity - mu + 1) / 2), floored at zero.
pub fn murasugi_tristram_bound(
    v: &SeifertMatrix,
    lambdas: &[(i64, u64)],
) -> Result<u64> {
    let mut best = 0u64;
    for &(r, q) in lambdas {
        if prime_power_base(q).is_none() {
            return Err(Error::NotPrimePower { q });
        }
        let sn = tristram_levine(v, r, q)?;
        let num = sn.signature.abs() + sn.nullity as i64 - v.mu() as i64 + 1;
        if num > 0 {
            best = best.max(((num + 1) / 2) as u64);
        }
    }
    Ok(best)
}

/// Whether the inequality (*) holds, i.e. the character does NOT obstruct.
pub fn star_inequality(cg: &CGValue, sigma_minus_one: i64, genus: u64, mu: u32) -> bool {
    let lhs = (&cg.sigma + BigRational::from(BigInt::from(sigma_minus_one))).abs();
    let rhs = BigRational::from(BigInt::from(
        cg.eta as i64 + 4 * genus as i64 + 3 * mu as i64 - 2,
    ));
    lhs <= rhs
}

/// Run the main genus test.
///
/// OBSTRUCTED requires both: (a) the linking-form group needs more than
/// 2g + mu - 1 generators, forcing a nontrivial metabolic summand in any
/// admissible decomposition, and (b) every nontrivial self-annihilating
/// character of prime order (for every prime whose square divides the
/// group order) violates (*). Soundness: a nontrivial metabolizer always
/// contains such a character, and (b) with an empty character set is
/// vacuously true, in which case no nontrivial metabolic summand can exist
/// at all.
///
/// When the 2-part of the group order is square-free and the odd part is
/// within `max_group_order`, an exhaustive survey of the odd part's
/// metabolizers is attached: a metabolizer "survives" when all its
/// prime-power characters satisfy (*). A surviving metabolizer only means
/// the test is silent; whether a genuine surface exists also depends on
/// the complementary summand, which this test does not decide.
pub fn theorem_main_check(
    query: &GenusQuery,
    source: &dyn CgSource,
    max_group_order: &BigInt,
) -> Result<ObstructionReport> {
    let group = query.beta.group();
    let rank_bound = query.rank_bound();
    let min_generators = group.min_generators();
    let forces = min_generators as u64 > rank_bound;

    let mut ledger = Vec::new();
    for p in square_part_primes(&group) {
        let p = p.to_u64().ok_or_else(|| Error::Unsupported {
            context: format!("prime {p} too large for character enumeration"),
        })?;
        for chi in self_annihilating_characters(&query.beta, p) {
            let value = source.value(&chi)?;
            let star_holds = star_inequality(&value, query.sigma_minus_one, query.genus, query.mu);
            ledger.push(CharacterLine {
                character: chi,
                value,
                star_holds,
            });
        }
    }
    let all_fail = ledger.iter().all(|line| !line.star_holds);
    let verdict = if forces && all_fail {
        Verdict::Obstructed
    } else {
        Verdict::NotObstructedByThisTest
    };

    let metabolizers = survey_metabolizers(query, source, max_group_order)?;

    Ok(ObstructionReport {
        verdict,
        rank: RankTrace {
            min_generators,
            rank_bound,
            forces_nontrivial_summand: forces,
        },
        ledger,
        metabolizers,
    })
}

/// The odd part of a linking form: metabolic summands avoid 2-torsion
/// whenever the 2-part of the group order is square-free, so candidates
/// live here. Returns `None` when the 2-part is not square-free.
fn odd_part(form: &LinkingForm) -> Option<LinkingForm> {
    let mut two_exponent = 0u32;
    let mut kept: Vec<(usize, BigInt, BigInt)> = Vec::new(); // (index, odd order, 2-part)
    for (i, d) in form.factors().iter().enumerate() {
        let mut odd = d.clone();
        let mut two = BigInt::from(1);
        while (&odd % BigInt::from(2)).is_zero() {
            odd /= 2;
            two *= 2;
            two_exponent += 1;
        }
        if odd > BigInt::from(1) {
            kept.push((i, odd, two));
        }
    }
    if two_exponent >= 2 {
        return None;
    }
    let factors: Vec<BigInt> = kept.iter().map(|(_, odd, _)| odd.clone()).collect();
    let gram: Vec<Vec<QmodZ>> = kept
        .iter()
        .map(|(i, _, ti)| {
            kept.iter()
                .map(|(j, _, tj)| form.gram_entry(*i, *j).scale(&(ti * tj)))
                .collect()
        })
        .collect();
    Some(LinkingForm::new(factors, gram).expect("odd restriction keeps the form well-formed"))
}

fn survey_metabolizers(
    query: &GenusQuery,
    source: &dyn CgSource,
    max_group_order: &BigInt,
) -> Result<Option<MetabolizerSurvey>> {
    let Some(odd) = odd_part(&query.beta) else {
        return Ok(None);
    };
    let mets = match enumerate_metabolizers(&odd, max_group_order) {
        Ok(m) => m,
        Err(e) if e.is_resource_bound() => return Ok(None),
        Err(e) => return Err(e),
    };
    // embed odd-part characters back into the full character group
    let full = query.beta.group();
    let odd_factors = odd.factors().to_vec();
    let mut embed_scale: Vec<(usize, BigInt)> = Vec::new();
    {
        let mut slot = 0;
        for (i, d) in query.beta.factors().iter().enumerate() {
            let mut odd_order = d.clone();
            let mut two = BigInt::from(1);
            while (&odd_order % BigInt::from(2)).is_zero() {
                odd_order /= 2;
                two *= 2;
            }
            if odd_order > BigInt::from(1) {
                debug_assert_eq!(odd_order, odd_factors[slot]);
                embed_scale.push((i, two));
                slot += 1;
            }
        }
    }
    let mut lines = Vec::new();
    for m in &mets {
        let mut survives = true;
        for member in m.elements() {
            if member.iter().all(Zero::is_zero) {
                continue;
            }
            let mut exponents = vec![BigInt::zero(); query.beta.rank()];
            for (slot, (i, two)) in embed_scale.iter().enumerate() {
                exponents[*i] = &member[slot] * two;
            }
            let chi = Character::new(&full, exponents);
            let order = chi.order();
            let is_prime_power = order
                .to_u64()
                .is_some_and(|o| prime_power_base(o).is_some());
            if !is_prime_power {
                continue;
            }
            let value = source.value(&chi)?;
            if !star_inequality(&value, query.sigma_minus_one, query.genus, query.mu) {
                survives = false;
                break;
            }
        }
        lines.push(MetabolizerLine {
            generators: m.generators().to_vec(),
            order: m.order(),
            survives,
        });
    }
    Ok(Some(MetabolizerSurvey {
        lines,
        note: "a surviving metabolizer means this test is silent; existence of a surface \
               also requires an admissible complementary summand, which is not decided here"
            .into(),
    }))
}

/// Largest square divisor check helper used by reports.
pub fn square_part(n: &BigInt) -> BigInt {
    let mut out = BigInt::from(1);
    for (p, e) in factorize(n) {
        out *= p.pow(e - e % 2);
    }
    out
}
