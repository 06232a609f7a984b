//! Finite abelian groups from presentation matrices, Q/Z-valued linking
//! forms, characters, self-annihilating characters, and metabolizers.
//!
//! A linking form is carried on an explicit direct-sum generator system:
//! the factor orders exhibit the group as a direct sum of cyclic groups but
//! are not forced into a divisibility chain, so a block-diagonal
//! presentation keeps its natural block-diagonal gram matrix. The chain
//! normal form is available separately via [`FiniteAbelianGroup::canonical`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

use crate::error::{Error, Result};
use crate::exact::matrix::IntMatrix;

/// A finite abelian group presented as a direct sum of cyclic groups of
/// the given orders (each at least 2). Elements are integer vectors
/// reduced componentwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAbelianGroup {
    factors: Vec<BigInt>,
}

impl FiniteAbelianGroup {
    pub fn new(factors: Vec<BigInt>) -> Self {
        assert!(
            factors.iter().all(|d| *d >= BigInt::from(2)),
            "cyclic factors must be at least 2"
        );
        FiniteAbelianGroup { factors }
    }

    pub fn trivial() -> Self {
        FiniteAbelianGroup { factors: vec![] }
    }

    pub fn from_u64(factors: &[u64]) -> Self {
        Self::new(factors.iter().map(|&d| BigInt::from(d)).collect())
    }

    pub fn factors(&self) -> &[BigInt] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn order(&self) -> BigInt {
        self.factors.iter().product()
    }

    /// Componentwise reduction into the normal form 0 <= x_i < d_i.
    pub fn normalize(&self, element: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(element.len(), self.factors.len());
        element
            .iter()
            .zip(&self.factors)
            .map(|(x, d)| x.mod_floor(d))
            .collect()
    }

    /// All elements in lexicographic order (first coordinate slowest).
    pub fn elements(&self) -> impl Iterator<Item = Vec<BigInt>> + '_ {
        let k = self.factors.len();
        let mut current = vec![BigInt::zero(); k];
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let out = current.clone();
            // odometer increment, last coordinate fastest
            let mut i = k;
            loop {
                if i == 0 {
                    done = true;
                    break;
                }
                i -= 1;
                current[i] += 1;
                if current[i] < self.factors[i] {
                    break;
                }
                current[i] = BigInt::zero();
            }
            if k == 0 {
                done = true;
            }
            Some(out)
        })
    }

    /// Invariant-factor (divisibility chain) normal form.
    pub fn canonical(&self) -> FiniteAbelianGroup {
        let n = self.factors.len();
        let mut d = IntMatrix::zero(n, n);
        for i in 0..n {
            d[(i, i)] = self.factors[i].clone();
        }
        let (torsion, free) = d.smith_normal_form().cokernel();
        debug_assert_eq!(free, 0);
        FiniteAbelianGroup { factors: torsion }
    }

    /// Minimal number of generators: the number of invariant factors,
    /// equivalently the largest p-rank over primes p.
    pub fn min_generators(&self) -> usize {
        self.canonical().rank()
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.factors.iter().map(|d| format!("Z_{d}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `group_from_presentation`: the cokernel of a square presentation matrix,
/// in invariant-factor form. Fails when the cokernel is infinite.
pub fn group_from_presentation(presentation: &IntMatrix) -> Result<FiniteAbelianGroup> {
    presentation.require_square()?;
    let snf = presentation.smith_normal_form();
    let (torsion, free) = snf.cokernel();
    if free > 0 {
        return Err(Error::InfiniteHomology);
    }
    Ok(FiniteAbelianGroup { factors: torsion })
}

/// A rational number reduced modulo 1 into [0, 1).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QmodZ {
    value: BigRational,
}

impl QmodZ {
    pub fn new(value: BigRational) -> Self {
        let fl = value.floor();
        QmodZ { value: value - fl }
    }

    pub fn zero() -> Self {
        QmodZ {
            value: BigRational::zero(),
        }
    }

    pub fn from_fraction(num: i64, den: i64) -> Self {
        Self::new(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn value(&self) -> &BigRational {
        &self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    /// Additive order in Q/Z (the reduced denominator); 1 for zero.
    pub fn order(&self) -> BigInt {
        self.value.denom().clone()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(&self.value + &other.value)
    }

    pub fn neg(&self) -> Self {
        Self::new(-self.value.clone())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(&self.value * BigRational::from(k.clone()))
    }
}

impl fmt::Display for QmodZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.value.numer(), self.value.denom())
    }
}

/// A nonsingular symmetric Q/Z-valued pairing on a finite abelian group,
/// given by a gram matrix on the direct-sum generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkingForm {
    factors: Vec<BigInt>,
    gram: Vec<QmodZ>, // row-major, factors.len() square
}

impl LinkingForm {
    pub fn new(factors: Vec<BigInt>, gram_rows: Vec<Vec<QmodZ>>) -> Result<Self> {
        let n = factors.len();
        if gram_rows.len() != n {
            return Err(Error::DimensionMismatch {
                context: format!("gram has {} rows for {} generators", gram_rows.len(), n),
            });
        }
        for (i, r) in gram_rows.iter().enumerate() {
            if r.len() != n {
                return Err(Error::RaggedMatrix {
                    row: i,
                    found: r.len(),
                    expected: n,
                });
            }
        }
        let gram: Vec<QmodZ> = gram_rows.into_iter().flatten().collect();
        for i in 0..n {
            for j in 0..i {
                if gram[i * n + j] != gram[j * n + i] {
                    return Err(Error::NotSymmetric { i, j });
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let lcm = factors[i].lcm(&factors[j]);
                if !(&lcm % gram[i * n + j].order()).is_zero() {
                    return Err(Error::GramEntryOrder { i, j });
                }
            }
        }
        Ok(LinkingForm { factors, gram })
    }

    pub fn trivial() -> Self {
        LinkingForm {
            factors: vec![],
            gram: vec![],
        }
    }

    pub fn group(&self) -> FiniteAbelianGroup {
        if self.factors.is_empty() {
            FiniteAbelianGroup::trivial()
        } else {
            FiniteAbelianGroup::new(self.factors.clone())
        }
    }

    pub fn factors(&self) -> &[BigInt] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn gram_entry(&self, i: usize, j: usize) -> &QmodZ {
        &self.gram[i * self.factors.len() + j]
    }

    /// Pairing of two group elements (coordinates on the generators).
    pub fn pair(&self, x: &[BigInt], y: &[BigInt]) -> QmodZ {
        let n = self.factors.len();
        assert_eq!(x.len(), n);
        assert_eq!(y.len(), n);
        let mut acc = QmodZ::zero();
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() {
                    continue;
                }
                acc = acc.add(&self.gram[i * n + j].scale(&(&x[i] * &y[j])));
            }
        }
        acc
    }

    /// Exhaustive nonsingularity test: the adjoint to the dual is injective.
    /// Only intended for groups within the enumeration bound.
    pub fn is_nonsingular(&self, bound: &BigInt) -> Result<bool> {
        let group = self.group();
        let order = group.order();
        if &order > bound {
            return Err(Error::GroupOrderBound { order, bound: bound.clone() });
        }
        let gens: Vec<Vec<BigInt>> = (0..group.rank())
            .map(|i| {
                (0..group.rank())
                    .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                    .collect()
            })
            .collect();
        for x in group.elements() {
            if x.iter().all(Zero::is_zero) {
                continue;
            }
            if gens.iter().all(|g| self.pair(&x, g).is_zero()) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl fmt::Display for LinkingForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "group {}", self.group())?;
        let n = self.factors.len();
        for i in 0..n {
            let row: Vec<String> = (0..n).map(|j| self.gram_entry(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// A linking form obtained from a presentation matrix, remembering how its
/// generators sit over the presentation meridians.
#[derive(Clone, Debug)]
pub struct PresentedLinkingForm {
    pub form: LinkingForm,
    /// Row transform of the diagonalization: meridian j has coordinates
    /// column j of `row_transform` over the diagonal generators.
    row_transform: IntMatrix,
    /// Indices of the diagonal entries kept as generators (order >= 2).
    kept: Vec<usize>,
}

impl PresentedLinkingForm {
    /// Coordinates of each kept generator's pairing with meridian j are
    /// needed by surgery code: express a character on the form's
    /// generators as exponents on the meridians, modulo q.
    pub fn character_on_meridians(&self, chi: &Character, q: &BigInt) -> Vec<BigInt> {
        let n = self.row_transform.rows();
        let mut out = Vec::with_capacity(n);
        for j in 0..n {
            // meridian j = sum_i U[i][j] * g_i, so chi(m_j) has exponent
            // sum_i a_i * U[i][j] * (q / d_i) over q. Integrality holds
            // whenever the character order divides q.
            let mut acc = BigInt::zero();
            for (slot, &i) in self.kept.iter().enumerate() {
                let d = &self.form.factors()[slot];
                let a = &chi.exponents()[slot];
                if a.is_zero() {
                    continue;
                }
                let t = a * &self.row_transform[(i, j)] * q;
                debug_assert!((&t % d).is_zero(), "character order must divide q");
                acc += t / d;
            }
            out.push(acc.mod_floor(q));
        }
        out
    }
}

/// `linking_form_from_presentation`: the Q/Z form with gram matrix the
/// inverse of the presentation matrix, on the cokernel generators.
///
/// The sign convention is fixed so that the presentation [2] yields the
/// gram [1/2]; the dual-form sign twist is absorbed here once and for all.
pub fn linking_form_from_presentation(presentation: &IntMatrix) -> Result<LinkingForm> {
    Ok(presented_linking_form(presentation)?.form)
}

/// As [`linking_form_from_presentation`], also returning the generator
/// bookkeeping needed to translate characters back to meridians.
pub fn presented_linking_form(presentation: &IntMatrix) -> Result<PresentedLinkingForm> {
    presentation.require_square()?;
    let n = presentation.rows();
    if presentation.det().is_zero() {
        return Err(Error::SingularPresentation);
    }
    let diag = presentation.diagonalize();
    debug_assert_eq!(diag.rank, n);
    let kept: Vec<usize> = (0..n)
        .filter(|&i| diag.d[(i, i)] > BigInt::one())
        .collect();
    let factors: Vec<BigInt> = kept.iter().map(|&i| diag.d[(i, i)].clone()).collect();

    let inv = rational_inverse(presentation)?;
    let u_inv = rational_inverse(&diag.u)?; // integer entries; U is unimodular
    // gram on generators g_i = U^-1 e_i:  (U^-T Lambda^-1 U^-1)
    let mut gram_rows = Vec::with_capacity(kept.len());
    for &i in &kept {
        let mut row = Vec::with_capacity(kept.len());
        for &j in &kept {
            let mut acc = BigRational::zero();
            for a in 0..n {
                if u_inv[a][i].is_zero() {
                    continue;
                }
                for b in 0..n {
                    acc += &u_inv[a][i] * &inv[a][b] * &u_inv[b][j];
                }
            }
            row.push(QmodZ::new(acc));
        }
        gram_rows.push(row);
    }
    let form = LinkingForm::new(factors, gram_rows)?;
    Ok(PresentedLinkingForm {
        form,
        row_transform: diag.u,
        kept,
    })
}

fn rational_inverse(m: &IntMatrix) -> Result<Vec<Vec<BigRational>>> {
    let n = m.rows();
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| BigRational::from(m[(i, j)].clone()))
                .collect()
        })
        .collect();
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Err(Error::SingularPresentation);
        };
        a.swap(p, col);
        inv.swap(p, col);
        let pivot = a[col][col].clone();
        for j in 0..n {
            a[col][j] /= &pivot;
            inv[col][j] /= &pivot;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for j in 0..n {
                let t = &factor * &a[col][j];
                a[r][j] -= t;
                let t = &factor * &inv[col][j];
                inv[r][j] -= t;
            }
        }
    }
    Ok(inv)
}

/// Orthogonal direct sum of two linking forms.
pub fn direct_sum(f1: &LinkingForm, f2: &LinkingForm) -> LinkingForm {
    let n1 = f1.rank();
    let n2 = f2.rank();
    let mut factors = f1.factors.clone();
    factors.extend(f2.factors.iter().cloned());
    let n = n1 + n2;
    let mut gram = vec![QmodZ::zero(); n * n];
    for i in 0..n1 {
        for j in 0..n1 {
            gram[i * n + j] = f1.gram_entry(i, j).clone();
        }
    }
    for i in 0..n2 {
        for j in 0..n2 {
            gram[(n1 + i) * n + (n1 + j)] = f2.gram_entry(i, j).clone();
        }
    }
    LinkingForm { factors, gram }
}

/// A character on a finite abelian group, stored additively: generator i
/// maps to exp(2 pi i a_i / d_i).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Character {
    exponents: Vec<BigInt>,
    orders: Vec<BigInt>,
}

impl Character {
    pub fn new(group: &FiniteAbelianGroup, exponents: Vec<BigInt>) -> Self {
        let exponents = group.normalize(&exponents);
        Character {
            exponents,
            orders: group.factors().to_vec(),
        }
    }

    pub fn trivial(group: &FiniteAbelianGroup) -> Self {
        Character {
            exponents: vec![BigInt::zero(); group.rank()],
            orders: group.factors().to_vec(),
        }
    }

    pub fn exponents(&self) -> &[BigInt] {
        &self.exponents
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.iter().all(Zero::is_zero)
    }

    /// Multiplicative order: lcm over components of d_i / gcd(a_i, d_i).
    pub fn order(&self) -> BigInt {
        let mut acc = BigInt::one();
        for (a, d) in self.exponents.iter().zip(&self.orders) {
            let g = a.gcd(d);
            acc = acc.lcm(&(d / g));
        }
        acc
    }

    pub fn inverse(&self) -> Character {
        let exponents = self
            .exponents
            .iter()
            .zip(&self.orders)
            .map(|(a, d)| if a.is_zero() { BigInt::zero() } else { d - a })
            .collect();
        Character {
            exponents,
            orders: self.orders.clone(),
        }
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .exponents
            .iter()
            .zip(&self.orders)
            .map(|(a, d)| format!("{a}/{d}"))
            .collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Which characters an enumeration yields.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderFilter {
    All,
    /// Exactly the given prime order (nontrivial characters only).
    Prime(u64),
    /// Any prime-power order (nontrivial characters only).
    PrimePower,
}

impl OrderFilter {
    fn admits(&self, order: &BigInt) -> bool {
        match self {
            OrderFilter::All => true,
            OrderFilter::Prime(p) => *order == BigInt::from(*p),
            OrderFilter::PrimePower => order
                .to_u64()
                .is_some_and(|o| crate::exact::poly::prime_power_base(o).is_some()),
        }
    }
}

/// All characters of the group passing the filter, in lexicographic order
/// of their exponent vectors.
pub fn enumerate_characters(
    group: &FiniteAbelianGroup,
    filter: OrderFilter,
) -> Vec<Character> {
    group
        .elements()
        .map(|e| Character {
            exponents: e,
            orders: group.factors().to_vec(),
        })
        .filter(|chi| filter.admits(&chi.order()))
        .collect()
}

/// The dual pairing on characters through the gram matrix: with characters
/// identified by their exponent vectors on the generators,
/// beta(chi, psi) = sum a_i b_j gram[i][j] in Q/Z.
pub fn beta_eval(form: &LinkingForm, chi1: &Character, chi2: &Character) -> QmodZ {
    form.pair(chi1.exponents(), chi2.exponents())
}

/// All nontrivial characters of prime order p with beta(chi, chi) = 0.
pub fn self_annihilating_characters(form: &LinkingForm, p: u64) -> Vec<Character> {
    enumerate_characters(&form.group(), OrderFilter::Prime(p))
        .into_iter()
        .filter(|chi| beta_eval(form, chi, chi).is_zero())
        .collect()
}

/// A subgroup H of the character group with H equal to its own
/// beta-orthogonal complement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Metabolizer {
    generators: Vec<Vec<BigInt>>,
    elements: Vec<Vec<BigInt>>, // sorted, includes zero
}

impl Metabolizer {
    pub fn generators(&self) -> &[Vec<BigInt>] {
        &self.generators
    }

    pub fn elements(&self) -> &[Vec<BigInt>] {
        &self.elements
    }

    pub fn order(&self) -> BigInt {
        BigInt::from(self.elements.len())
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    /// Members as characters of the carrying group.
    pub fn characters(&self, group: &FiniteAbelianGroup) -> Vec<Character> {
        self.elements
            .iter()
            .map(|e| Character::new(group, e.clone()))
            .collect()
    }
}

/// Exhaustively enumerate metabolizers: subgroups H with H^perp = H.
///
/// Empty when the group order is not a perfect square (a metabolizer
/// forces |H|^2 = |G|). The trivial group has the trivial metabolizer.
/// Errors when the group order exceeds `bound`.
///
/// Subgroups are generated once each along their canonical chain (every
/// subgroup arises by repeatedly adjoining the smallest element not yet
/// in the span), over isotropic elements only, so the search space is the
/// lattice of totally isotropic subgroups.
pub fn enumerate_metabolizers(form: &LinkingForm, bound: &BigInt) -> Result<Vec<Metabolizer>> {
    let group = form.group();
    let order = group.order();
    if &order > bound {
        return Err(Error::GroupOrderBound {
            order,
            bound: bound.clone(),
        });
    }
    let sqrt = num_integer::Roots::sqrt(&order);
    if &sqrt * &sqrt != order {
        return Ok(vec![]);
    }
    let target = sqrt
        .to_usize()
        .expect("group order within bound fits in usize");

    let Some(model) = CompactForm::new(form) else {
        return Err(Error::GroupOrderBound {
            order: group.order(),
            bound: bound.clone(),
        });
    };
    let mut found: Vec<(Vec<u32>, Vec<u32>)> = Vec::new(); // (elements, generators)
    let mut span = vec![false; model.count];
    span[0] = true;
    let mut chain = SearchState {
        span,
        size: 1,
        members: vec![0],
        generators: vec![],
    };
    model.grow(&mut chain, target, 0, &mut found);

    let mut out = Vec::new();
    for (elements, generators) in found {
        // verify H^perp = H directly: y is in the perp iff it pairs to
        // zero with every generator
        let perp: Vec<u32> = (0..model.count as u32)
            .filter(|&y| generators.iter().all(|&g| model.pair(y, g) == 0))
            .collect();
        if perp != elements {
            continue;
        }
        out.push(Metabolizer {
            generators: generators
                .iter()
                .map(|&g| model.decode(g))
                .collect(),
            elements: elements.iter().map(|&e| model.decode(e)).collect(),
        });
    }
    Ok(out)
}

struct SearchState {
    span: Vec<bool>,
    size: usize,
    members: Vec<u32>,
    generators: Vec<u32>,
}

/// Index-arithmetic model of a linking form on a small group: elements are
/// mixed-radix codes, the pairing is integer arithmetic modulo a common
/// denominator.
struct CompactForm {
    dims: Vec<u64>,
    count: usize,
    denom: u64,
    gram: Vec<u64>, // n*n, numerators modulo denom
    coords: Vec<Vec<u64>>, // decoded coordinates per element code
    isotropic: Vec<u32>,
}

impl CompactForm {
    fn new(form: &LinkingForm) -> Option<Self> {
        let dims: Vec<u64> = form
            .factors()
            .iter()
            .map(ToPrimitive::to_u64)
            .collect::<Option<_>>()?;
        let count = dims.iter().try_fold(1u64, |a, &d| a.checked_mul(d))?.to_usize()?;
        if count > u32::MAX as usize {
            return None;
        }
        let n = dims.len();
        let mut denom: u64 = 1;
        for i in 0..n {
            for j in 0..n {
                let d = form.gram_entry(i, j).order().to_u64()?;
                denom = num_integer::lcm(denom, d);
            }
        }
        let mut gram = vec![0u64; n * n];
        for i in 0..n {
            for j in 0..n {
                let e = form.gram_entry(i, j);
                let num = e.value().numer().to_u64()?;
                let den = e.value().denom().to_u64()?;
                gram[i * n + j] = num * (denom / den) % denom;
            }
        }
        let mut model = CompactForm {
            dims,
            count,
            denom,
            gram,
            coords: vec![],
            isotropic: vec![],
        };
        model.coords = (0..count as u32).map(|c| model.decode_coords(c)).collect();
        model.isotropic = (0..count as u32)
            .filter(|&x| model.pair(x, x) == 0)
            .collect();
        Some(model)
    }

    fn decode(&self, code: u32) -> Vec<BigInt> {
        self.coords[code as usize]
            .iter()
            .map(|&c| BigInt::from(c))
            .collect()
    }

    fn decode_coords(&self, mut code: u32) -> Vec<u64> {
        let mut out = vec![0u64; self.dims.len()];
        for i in (0..self.dims.len()).rev() {
            out[i] = code as u64 % self.dims[i];
            code = (code as u64 / self.dims[i]) as u32;
        }
        out
    }

    fn add(&self, a: u32, b: u32) -> u32 {
        let (x, y) = (&self.coords[a as usize], &self.coords[b as usize]);
        let mut code = 0u64;
        for i in 0..self.dims.len() {
            let s = x[i] + y[i];
            let s = if s >= self.dims[i] { s - self.dims[i] } else { s };
            code = code * self.dims[i] + s;
        }
        code as u32
    }

    fn pair(&self, a: u32, b: u32) -> u64 {
        let n = self.dims.len();
        let (x, y) = (&self.coords[a as usize], &self.coords[b as usize]);
        let mut acc: u128 = 0;
        for i in 0..n {
            if x[i] == 0 {
                continue;
            }
            for j in 0..n {
                if y[j] == 0 {
                    continue;
                }
                acc += (x[i] as u128) * (y[j] as u128) % (self.denom as u128)
                    * (self.gram[i * n + j] as u128);
                acc %= self.denom as u128;
            }
        }
        acc as u64
    }

    fn grow(
        &self,
        state: &mut SearchState,
        target: usize,
        min_candidate: u32,
        found: &mut Vec<(Vec<u32>, Vec<u32>)>,
    ) {
        if state.size == target {
            let mut elements: Vec<u32> = state.members.clone();
            elements.sort_unstable();
            found.push((elements, state.generators.clone()));
            return;
        }
        for &x in &self.isotropic {
            if x < min_candidate || state.span[x as usize] {
                continue;
            }
            // x must pair to zero with the whole current span; generators
            // suffice by bilinearity
            if !state.generators.iter().all(|&g| self.pair(x, g) == 0) {
                continue;
            }
            // close the span over x
            let before = state.members.len();
            let mut queue: Vec<u32> = vec![x];
            let mut added: Vec<u32> = Vec::new();
            while let Some(z) = queue.pop() {
                if state.span[z as usize] {
                    continue;
                }
                state.span[z as usize] = true;
                state.members.push(z);
                added.push(z);
                for idx in 0..state.members.len() {
                    let w = self.add(state.members[idx], z);
                    if !state.span[w as usize] {
                        queue.push(w);
                    }
                }
            }
            let new_size = state.members.len();
            // canonical chain: x must be the smallest element the step added
            let canonical = added.iter().all(|&z| z >= x);
            if canonical && new_size <= target {
                state.size = new_size;
                state.generators.push(x);
                self.grow(state, target, x + 1, found);
                state.generators.pop();
            }
            // undo
            for &z in &added {
                state.span[z as usize] = false;
            }
            state.members.truncate(before);
            state.size = before;
        }
    }
}

/// Minimal number of generators of the cokernel group; see
/// [`FiniteAbelianGroup::min_generators`].
pub fn min_generators(group: &FiniteAbelianGroup) -> usize {
    group.min_generators()
}

/// Prime factorization by trial division; adequate at presentation scale.
pub(crate) fn factorize(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        if (&n % &p).is_zero() {
            let mut e = 0;
            while (&n % &p).is_zero() {
                n /= &p;
                e += 1;
            }
            out.push((p.clone(), e));
        }
        p += 1;
    }
    if n > BigInt::one() {
        out.push((n, 1));
    }
    out
}

/// Primes whose square divides the group order.
pub fn square_part_primes(group: &FiniteAbelianGroup) -> Vec<BigInt> {
    let mut exponents: Vec<(BigInt, u32)> = Vec::new();
    for d in group.factors() {
        for (p, e) in factorize(d) {
            match exponents.iter_mut().find(|(q, _)| *q == p) {
                Some((_, acc)) => *acc += e,
                None => exponents.push((p, e)),
            }
        }
    }
    exponents.sort();
    exponents
        .into_iter()
        .filter(|(_, e)| *e >= 2)
        .map(|(p, _)| p)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn zig(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn cokernels() {
        let g = group_from_presentation(&IntMatrix::from_i64(&[&[2]])).unwrap();
        assert_eq!(g.factors(), &[BigInt::from(2)]);
        let g = group_from_presentation(&IntMatrix::from_i64(&[&[0, 3], &[3, 0]])).unwrap();
        assert_eq!(g.factors(), &[BigInt::from(3), BigInt::from(3)]);
        let g = group_from_presentation(&IntMatrix::from_i64(&[&[1]])).unwrap();
        assert!(g.is_trivial());
        assert!(matches!(
            group_from_presentation(&IntMatrix::from_i64(&[&[0]])),
            Err(Error::InfiniteHomology)
        ));
    }

    #[test]
    fn group_order_equals_det() {
        for m in [
            IntMatrix::from_i64(&[&[2, 1], &[1, 2]]),
            IntMatrix::from_i64(&[&[4, 2], &[0, 3]]),
            IntMatrix::from_i64(&[&[2, 0, 0], &[0, 0, 3], &[0, 3, 0]]),
        ] {
            let g = group_from_presentation(&m).unwrap();
            assert_eq!(g.order(), m.det().abs());
        }
    }

    #[test]
    fn linking_form_displays() {
        let f = linking_form_from_presentation(&IntMatrix::from_i64(&[&[2]])).unwrap();
        assert_eq!(f.factors(), &[BigInt::from(2)]);
        assert_eq!(f.gram_entry(0, 0), &QmodZ::from_fraction(1, 2));

        let f =
            linking_form_from_presentation(&IntMatrix::from_i64(&[&[0, 3], &[3, 0]])).unwrap();
        assert_eq!(f.factors(), &[BigInt::from(3), BigInt::from(3)]);
        assert!(f.gram_entry(0, 0).is_zero());
        assert_eq!(f.gram_entry(0, 1), &QmodZ::from_fraction(1, 3));
        assert_eq!(f.gram_entry(1, 0), &QmodZ::from_fraction(1, 3));
        assert!(f.gram_entry(1, 1).is_zero());

        // one generator of order 3: the inverse entry mod 1, fixed sign
        let f = linking_form_from_presentation(&IntMatrix::from_i64(&[&[3]])).unwrap();
        assert_eq!(f.gram_entry(0, 0), &QmodZ::from_fraction(1, 3));

        assert!(matches!(
            linking_form_from_presentation(&IntMatrix::from_i64(&[&[0]])),
            Err(Error::SingularPresentation)
        ));
        // units disappear
        let f = linking_form_from_presentation(&IntMatrix::from_i64(&[&[1]])).unwrap();
        assert_eq!(f.rank(), 0);
    }

    #[test]
    fn nontrivial_row_transform() {
        // [[2,1],[1,2]] has cokernel Z_3; the generator is not a meridian.
        let p = presented_linking_form(&IntMatrix::from_i64(&[&[2, 1], &[1, 2]])).unwrap();
        assert_eq!(p.form.factors(), &[BigInt::from(3)]);
        let g = p.form.gram_entry(0, 0);
        // the form on Z_3 must be nonsingular: entry k/3 with k in {1, 2}
        assert_eq!(g.order(), BigInt::from(3));
        assert!(p
            .form
            .is_nonsingular(&BigInt::from(100))
            .unwrap());
    }

    #[test]
    fn direct_sums_reproduce_block_display() {
        let rp3 = linking_form_from_presentation(&IntMatrix::from_i64(&[&[2]])).unwrap();
        let q = linking_form_from_presentation(&IntMatrix::from_i64(&[&[0, 3], &[3, 0]]))
            .unwrap();
        let f = direct_sum(&rp3, &q);
        assert_eq!(
            f.factors(),
            &[BigInt::from(2), BigInt::from(3), BigInt::from(3)]
        );
        assert_eq!(f.gram_entry(0, 0), &QmodZ::from_fraction(1, 2));
        assert_eq!(f.gram_entry(1, 2), &QmodZ::from_fraction(1, 3));
        assert!(f.gram_entry(0, 1).is_zero());
        // and the same form comes from the block presentation directly
        let whole = linking_form_from_presentation(&IntMatrix::from_i64(&[
            &[2, 0, 0],
            &[0, 0, 3],
            &[0, 3, 0],
        ]))
        .unwrap();
        assert_eq!(whole, f);
        // identity for the empty form
        assert_eq!(direct_sum(&q, &LinkingForm::trivial()), q);
    }

    #[test]
    fn character_enumeration_counts() {
        let g = FiniteAbelianGroup::from_u64(&[3, 3]);
        assert_eq!(enumerate_characters(&g, OrderFilter::All).len(), 9);
        assert_eq!(enumerate_characters(&g, OrderFilter::Prime(3)).len(), 8);
        let g = FiniteAbelianGroup::from_u64(&[2, 3, 3]);
        assert_eq!(enumerate_characters(&g, OrderFilter::Prime(3)).len(), 8);
        assert_eq!(enumerate_characters(&g, OrderFilter::All).len(), 18);
        let g = FiniteAbelianGroup::trivial();
        let all = enumerate_characters(&g, OrderFilter::All);
        assert_eq!(all.len(), 1);
        assert!(all[0].is_trivial());
    }

    #[test]
    fn character_orders() {
        let g = FiniteAbelianGroup::from_u64(&[2, 9]);
        let chi = Character::new(&g, zig(&[1, 3]));
        assert_eq!(chi.order(), BigInt::from(6));
        let chi = Character::new(&g, zig(&[0, 3]));
        assert_eq!(chi.order(), BigInt::from(3));
        assert_eq!(chi.inverse().exponents(), &zig(&[0, 6])[..]);
        // chi and chi^-1 distinct above order 2
        assert_ne!(chi, chi.inverse());
        let chi = Character::new(&g, zig(&[1, 0]));
        assert_eq!(chi, chi.inverse());
    }

    #[test]
    fn beta_values() {
        let f =
            linking_form_from_presentation(&IntMatrix::from_i64(&[&[0, 3], &[3, 0]])).unwrap();
        let g = f.group();
        let chi11 = Character::new(&g, zig(&[1, 1]));
        let chi10 = Character::new(&g, zig(&[1, 0]));
        let trivial = Character::trivial(&g);
        assert_eq!(beta_eval(&f, &chi11, &chi11), QmodZ::from_fraction(2, 3));
        assert!(beta_eval(&f, &chi10, &chi10).is_zero());
        assert!(beta_eval(&f, &trivial, &chi11).is_zero());
        // symmetry and bilinearity spot-check
        assert_eq!(
            beta_eval(&f, &chi10, &chi11),
            beta_eval(&f, &chi11, &chi10)
        );
    }

    #[test]
    fn self_annihilating_on_hyperbolic_block() {
        let f =
            linking_form_from_presentation(&IntMatrix::from_i64(&[&[0, 3], &[3, 0]])).unwrap();
        let sa = self_annihilating_characters(&f, 3);
        let expected: Vec<Vec<BigInt>> = [
            zig(&[0, 1]),
            zig(&[0, 2]),
            zig(&[1, 0]),
            zig(&[2, 0]),
        ]
        .to_vec();
        let got: Vec<Vec<BigInt>> = sa.iter().map(|c| c.exponents().to_vec()).collect();
        assert_eq!(got, expected);
        // a definite form on Z_3 has none
        let definite = linking_form_from_presentation(&IntMatrix::from_i64(&[&[3]])).unwrap();
        assert!(self_annihilating_characters(&definite, 3).is_empty());
    }

    #[test]
    fn metabolizers_of_small_forms() {
        let bound = BigInt::from(6561);
        // hyperbolic Z_3 x Z_3: exactly the two coordinate axes
        let f =
            linking_form_from_presentation(&IntMatrix::from_i64(&[&[0, 3], &[3, 0]])).unwrap();
        let mets = enumerate_metabolizers(&f, &bound).unwrap();
        assert_eq!(mets.len(), 2);
        for m in &mets {
            assert_eq!(m.order(), BigInt::from(3));
        }
        let axes: BTreeSet<Vec<Vec<BigInt>>> = mets
            .iter()
            .map(|m| m.elements().to_vec())
            .collect();
        let expect: BTreeSet<Vec<Vec<BigInt>>> = [
            vec![zig(&[0, 0]), zig(&[0, 1]), zig(&[0, 2])],
            vec![zig(&[0, 0]), zig(&[1, 0]), zig(&[2, 0])],
        ]
        .into();
        assert_eq!(axes, expect);

        // order 2 is not a square: no metabolizers
        let rp3 = linking_form_from_presentation(&IntMatrix::from_i64(&[&[2]])).unwrap();
        assert!(enumerate_metabolizers(&rp3, &bound).unwrap().is_empty());

        // trivial group: the trivial metabolizer
        let mets = enumerate_metabolizers(&LinkingForm::trivial(), &bound).unwrap();
        assert_eq!(mets.len(), 1);
        assert!(mets[0].is_trivial());

        // Z_9 with form 1/9: the unique metabolizer is 3 Z_9
        let f = linking_form_from_presentation(&IntMatrix::from_i64(&[&[9]])).unwrap();
        let mets = enumerate_metabolizers(&f, &bound).unwrap();
        assert_eq!(mets.len(), 1);
        assert_eq!(
            mets[0].elements(),
            &[zig(&[0]), zig(&[3]), zig(&[6])]
        );
    }

    #[test]
    fn metabolizer_bound_is_enforced() {
        let f =
            linking_form_from_presentation(&IntMatrix::from_i64(&[&[0, 3], &[3, 0]])).unwrap();
        let err = enumerate_metabolizers(&f, &BigInt::from(8)).unwrap_err();
        assert!(err.is_resource_bound());
    }

    #[test]
    fn min_generator_counts() {
        // chain form of Z_2 + Z_3^2h has 2h factors
        for h in 1..=3u32 {
            let mut factors = vec![2u64];
            factors.extend(std::iter::repeat(3).take(2 * h as usize));
            let g = FiniteAbelianGroup::from_u64(&factors);
            assert_eq!(g.min_generators(), 2 * h as usize);
            let canon = g.canonical();
            // 3 | 3 | ... | 6
            assert_eq!(canon.rank(), 2 * h as usize);
            assert_eq!(canon.factors().last(), Some(&BigInt::from(6)));
        }
        assert_eq!(FiniteAbelianGroup::from_u64(&[3, 3]).min_generators(), 2);
        assert_eq!(FiniteAbelianGroup::trivial().min_generators(), 0);
    }

    #[test]
    fn square_part() {
        let g = FiniteAbelianGroup::from_u64(&[2, 3, 3]);
        assert_eq!(square_part_primes(&g), vec![BigInt::from(3)]);
        let g = FiniteAbelianGroup::from_u64(&[4, 9]);
        assert_eq!(
            square_part_primes(&g),
            vec![BigInt::from(2), BigInt::from(3)]
        );
        let g = FiniteAbelianGroup::from_u64(&[6]);
        assert!(square_part_primes(&g).is_empty());
    }

    #[test]
    fn character_on_meridians_round_trip() {
        // block presentation: generators are the meridians themselves
        let p = presented_linking_form(&IntMatrix::from_i64(&[
            &[2, 0, 0],
            &[0, 0, 3],
            &[0, 3, 0],
        ]))
        .unwrap();
        let g = p.form.group();
        let chi = Character::new(&g, zig(&[0, 1, 2]));
        let q = BigInt::from(3);
        // meridian exponents: a_i * (q / d_i) for the 3-part, 0 on the Z_2
        assert_eq!(
            p.character_on_meridians(&chi, &q),
            zig(&[0, 1, 2])
        );
    }
}
