//! Seifert matrices and Hermitian forms over cyclotomic fields:
//! Tristram-Levine signatures and nullities, the Alexander polynomial, and
//! exact signature/nullity of Hermitian matrices by symmetric elimination.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::cyclotomic::{eval_unit_root, CyclotomicNumber};
use crate::exact::matrix::IntMatrix;
use crate::exact::poly::IntPolynomial;

/// The Seifert pairing of a connected Seifert surface, as a square integer
/// matrix, together with the number of link components and optionally the
/// surface genus.
///
/// When both `mu` and `genus` are present the size must equal
/// `2 * genus + mu - 1`, the first Betti number of the surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeifertMatrix {
    matrix: IntMatrix,
    mu: u32,
    genus: Option<u32>,
}

impl SeifertMatrix {
    pub fn new(matrix: IntMatrix, mu: u32, genus: Option<u32>) -> Result<Self> {
        matrix.require_square()?;
        assert!(mu >= 1, "a link has at least one component");
        if let Some(g) = genus {
            let expected = 2 * g as usize + mu as usize - 1;
            if matrix.rows() != expected {
                return Err(Error::SeifertMetadata {
                    size: matrix.rows(),
                    expected,
                });
            }
        }
        Ok(SeifertMatrix { matrix, mu, genus })
    }

    /// The 0x0 Seifert matrix of the unknot.
    pub fn unknot() -> Self {
        SeifertMatrix {
            matrix: IntMatrix::zero(0, 0),
            mu: 1,
            genus: Some(0),
        }
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn size(&self) -> usize {
        self.matrix.rows()
    }

    pub fn mu(&self) -> u32 {
        self.mu
    }

    pub fn genus(&self) -> Option<u32> {
        self.genus
    }

    /// Mirror image: V -> -V^T. Signatures change sign.
    pub fn mirror(&self) -> Self {
        SeifertMatrix {
            matrix: self.matrix.transpose().neg(),
            mu: self.mu,
            genus: self.genus,
        }
    }

    /// The symmetrized pairing V + V^T.
    pub fn symmetrized(&self) -> IntMatrix {
        self.matrix.add(&self.matrix.transpose())
    }
}

/// Result of a signature computation: (signature, nullity).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SigNull {
    pub signature: i64,
    pub nullity: usize,
}

impl SigNull {
    pub const ZERO: SigNull = SigNull {
        signature: 0,
        nullity: 0,
    };

    pub fn add(self, other: SigNull) -> SigNull {
        SigNull {
            signature: self.signature + other.signature,
            nullity: self.nullity + other.nullity,
        }
    }
}

/// A Hermitian matrix over Q(zeta_q): entry (i,j) is the conjugate of
/// entry (j,i), so diagonal entries are real.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMatrix {
    order: u64,
    size: usize,
    entries: Vec<CyclotomicNumber>,
}

impl HermitianMatrix {
    pub fn new(order: u64, rows: Vec<Vec<CyclotomicNumber>>) -> Result<Self> {
        let size = rows.len();
        for (i, r) in rows.iter().enumerate() {
            if r.len() != size {
                return Err(Error::RaggedMatrix {
                    row: i,
                    found: r.len(),
                    expected: size,
                });
            }
            for e in r {
                if e.order() != order {
                    return Err(Error::OrderMismatch {
                        left: order,
                        right: e.order(),
                    });
                }
            }
        }
        let m = HermitianMatrix {
            order,
            size,
            entries: rows.into_iter().flatten().collect(),
        };
        for i in 0..size {
            for j in 0..=i {
                if *m.entry(i, j) != m.entry(j, i).conj() {
                    return Err(Error::NotHermitian { i, j });
                }
            }
        }
        Ok(m)
    }

    /// A symmetric integer matrix viewed as Hermitian over Q (order 1).
    pub fn from_symmetric_int(m: &IntMatrix) -> Result<Self> {
        m.require_symmetric()?;
        let n = m.rows();
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        CyclotomicNumber::from_rational(
                            1,
                            BigRational::from(m[(i, j)].clone()),
                        )
                    })
                    .collect()
            })
            .collect();
        Self::new(1, rows)
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn entry(&self, i: usize, j: usize) -> &CyclotomicNumber {
        &self.entries[i * self.size + j]
    }

    /// Signature and nullity by symmetric elimination; see
    /// [`hermitian_sig_null`].
    pub fn sig_null(&self) -> Result<SigNull> {
        hermitian_sig_null(self)
    }
}

/// Exact signature and nullity of a Hermitian matrix.
///
/// Pivots on nonzero real diagonal entries, taking a Schur complement each
/// time; when the remaining diagonal is zero but an off-diagonal entry h is
/// not, the hyperbolic 2x2 block [[0,h],[conj h,0]] contributes signature 0
/// and no nullity; a remaining zero block is pure nullity. Signature and
/// nullity are congruence invariants, so the eliminations are sound.
pub fn hermitian_sig_null(h: &HermitianMatrix) -> Result<SigNull> {
    let n = h.size();
    let mut m: Vec<CyclotomicNumber> = h.entries.clone();
    let at = |m: &Vec<CyclotomicNumber>, i: usize, j: usize| m[i * n + j].clone();
    let mut active: Vec<usize> = (0..n).collect();
    let mut signature = 0i64;
    let mut nullity = 0usize;

    while !active.is_empty() {
        if let Some(pos) = active.iter().position(|&i| !m[i * n + i].is_zero()) {
            let i = active.remove(pos);
            let pivot = at(&m, i, i);
            signature += pivot.real_sign()? as i64;
            let inv = pivot.inverse().expect("nonzero pivot");
            for &j in &active {
                if at(&m, j, i).is_zero() {
                    continue;
                }
                let factor = at(&m, j, i).mul(&inv);
                for &k in &active {
                    if at(&m, i, k).is_zero() {
                        continue;
                    }
                    let t = factor.mul(&at(&m, i, k));
                    m[j * n + k] = at(&m, j, k).sub(&t);
                }
            }
        } else if let Some((pi, pj)) = first_offdiag(&m, n, &active) {
            // Hyperbolic block: eigenvalues come in an opposite-sign pair.
            let hval = at(&m, pi, pj);
            let hinv = hval.inverse().expect("nonzero off-diagonal");
            let hbar_inv = hval.conj().inverse().expect("nonzero off-diagonal");
            active.retain(|&x| x != pi && x != pj);
            for &k in &active {
                let ki = at(&m, k, pi);
                let kj = at(&m, k, pj);
                if ki.is_zero() && kj.is_zero() {
                    continue;
                }
                for &l in &active {
                    let il = at(&m, pi, l);
                    let jl = at(&m, pj, l);
                    let mut t = at(&m, k, l);
                    if !ki.is_zero() && !jl.is_zero() {
                        t = t.sub(&ki.mul(&hbar_inv).mul(&jl));
                    }
                    if !kj.is_zero() && !il.is_zero() {
                        t = t.sub(&kj.mul(&hinv).mul(&il));
                    }
                    m[k * n + l] = t;
                }
            }
        } else {
            nullity += active.len();
            break;
        }
    }

    debug_assert!(signature.unsigned_abs() as usize + nullity <= n);
    debug_assert_eq!(
        (signature.rem_euclid(2)) as usize,
        (n - nullity) % 2,
        "signature parity must match rank parity"
    );
    Ok(SigNull {
        signature,
        nullity,
    })
}

fn first_offdiag(
    m: &[CyclotomicNumber],
    n: usize,
    active: &[usize],
) -> Option<(usize, usize)> {
    for (a, &i) in active.iter().enumerate() {
        for &j in &active[a + 1..] {
            if !m[i * n + j].is_zero() {
                return Some((i, j));
            }
        }
    }
    None
}

/// The Hermitian form (1 - lambda) V + (1 - conj lambda) V^T of a Seifert
/// matrix at a unit root lambda.
pub fn tristram_form(v: &SeifertMatrix, lambda: &CyclotomicNumber) -> HermitianMatrix {
    let q = lambda.order();
    let n = v.size();
    let a = CyclotomicNumber::one(q).sub(lambda); // 1 - lambda
    let b = a.conj(); // 1 - conj(lambda)
    let rows: Vec<Vec<CyclotomicNumber>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let vij = BigRational::from(v.matrix()[(i, j)].clone());
                    let vji = BigRational::from(v.matrix()[(j, i)].clone());
                    a.scale(&vij).add(&b.scale(&vji))
                })
                .collect()
        })
        .collect();
    HermitianMatrix::new(q, rows).expect("the twisted Seifert form is Hermitian")
}

/// Tristram-Levine signature and nullity at lambda = zeta_q^r.
pub fn tristram_levine(v: &SeifertMatrix, r: i64, q: u64) -> Result<SigNull> {
    let lambda = eval_unit_root(r, q)?;
    tristram_form(v, &lambda).sig_null()
}

/// The signature at lambda = -1, the classical link signature.
pub fn signature_at_minus_one(v: &SeifertMatrix) -> Result<i64> {
    Ok(tristram_levine(v, 1, 2)?.signature)
}

/// Alexander polynomial Det(V - t V^T), exact, by interpolation at the
/// integers 0..=n.
pub fn alexander_polynomial(v: &SeifertMatrix) -> IntPolynomial {
    let n = v.size();
    if n == 0 {
        return IntPolynomial::constant(BigInt::one());
    }
    let vt = v.matrix().transpose();
    let values: Vec<BigInt> = (0..=n)
        .map(|k| {
            let mut m = v.matrix().clone();
            for i in 0..n {
                for j in 0..n {
                    let t = &vt[(i, j)] * BigInt::from(k);
                    m[(i, j)] -= t;
                }
            }
            m.det()
        })
        .collect();
    interpolate_integer_polynomial(&values)
}

/// Lagrange interpolation through (k, values[k]) for k = 0..values.len(),
/// asserting the result has integer coefficients.
fn interpolate_integer_polynomial(values: &[BigInt]) -> IntPolynomial {
    let n = values.len();
    let mut acc = vec![BigRational::zero(); n];
    for (k, y) in values.iter().enumerate() {
        if y.is_zero() {
            continue;
        }
        // basis polynomial prod_{j != k} (t - j) / (k - j)
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for j in 0..n {
            if j == k {
                continue;
            }
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            let root = BigRational::from(BigInt::from(j as i64));
            for (d, c) in basis.iter().enumerate() {
                next[d + 1] += c;
                next[d] -= c * &root;
            }
            basis = next;
            denom *= BigRational::from(BigInt::from(k as i64 - j as i64));
        }
        let scale = BigRational::from(y.clone()) / denom;
        for (d, c) in basis.iter().enumerate() {
            acc[d] += c * &scale;
        }
    }
    IntPolynomial::from_coeffs(
        acc.into_iter()
            .map(|c| {
                assert!(c.is_integer(), "interpolated determinant must be integral");
                c.to_integer()
            })
            .collect(),
    )
}

/// Boundary connected sum: block-diagonal Seifert matrix, components add
/// minus one, genera add.
pub fn seifert_connected_sum(v1: &SeifertMatrix, v2: &SeifertMatrix) -> SeifertMatrix {
    let matrix = IntMatrix::block_diag(&[v1.matrix(), v2.matrix()]);
    let genus = match (v1.genus, v2.genus) {
        (Some(a), Some(b)) => Some(a + b),
        _ => None,
    };
    SeifertMatrix {
        matrix,
        mu: v1.mu + v2.mu - 1,
        genus,
    }
}

/// Split (distant) union: the pieces' surfaces joined by tubes, giving the
/// block sum plus one zero generator per tube. Components add.
pub fn seifert_split_union(pieces: &[SeifertMatrix]) -> SeifertMatrix {
    if pieces.is_empty() {
        return SeifertMatrix::unknot();
    }
    let tubes = pieces.len() - 1;
    let zero = IntMatrix::zero(tubes, tubes);
    let mut blocks: Vec<&IntMatrix> = pieces.iter().map(SeifertMatrix::matrix).collect();
    blocks.push(&zero);
    let matrix = IntMatrix::block_diag(&blocks);
    let genus = pieces
        .iter()
        .try_fold(0u32, |acc, p| p.genus.map(|g| acc + g));
    SeifertMatrix {
        matrix,
        mu: pieces.iter().map(|p| p.mu).sum(),
        genus,
    }
}

/// Seifert matrix of the (p, p*f) torus link on its fibered surface: the
/// p parallel strands of an unknot cable with f full twists.
///
/// Convention: positive f gives the -1-diagonal banded form, the one whose
/// (p, f) = (3, ...) truncation at two strands-pairs reproduces the
/// standard trefoil matrix [[-1, 1], [0, -1]]; negative f is the mirror.
/// Signatures for the opposite handedness are obtained via
/// [`SeifertMatrix::mirror`].
pub fn torus_link_seifert(p: i64, f: i64) -> Result<SeifertMatrix> {
    if p < 1 {
        return Err(Error::Unsupported {
            context: format!("torus link requires p >= 1, got {p}"),
        });
    }
    let p = p as usize;
    if p == 1 {
        return Ok(SeifertMatrix::unknot());
    }
    if f == 0 {
        // p-component unlink: tubes only.
        return Ok(SeifertMatrix {
            matrix: IntMatrix::zero(p - 1, p - 1),
            mu: p as u32,
            genus: Some(0),
        });
    }
    let n = p * f.unsigned_abs() as usize;
    let rows = p - 1;
    let cols = n - 1;
    let idx = |i: usize, j: usize| i * cols + j;
    let mut m = IntMatrix::zero(rows * cols, rows * cols);
    for i in 0..rows {
        for j in 0..cols {
            m[(idx(i, j), idx(i, j))] = BigInt::from(-1);
            if j + 1 < cols {
                m[(idx(i, j), idx(i, j + 1))] = BigInt::one();
            }
            if i + 1 < rows {
                m[(idx(i, j), idx(i + 1, j))] = BigInt::one();
            }
            if i >= 1 && j + 1 < cols {
                m[(idx(i, j), idx(i - 1, j + 1))] = BigInt::from(-1);
            }
        }
    }
    let genus = ((p - 1) * (n - 2) / 2) as u32;
    let v = SeifertMatrix {
        matrix: m,
        mu: p as u32,
        genus: Some(genus),
    };
    Ok(if f < 0 { v.mirror() } else { v })
}

/// Seifert matrix of the two-component link bounding an annulus whose core
/// is an unknot with framing `twist`: the algebraically-zero 2-strand cable.
///
/// The sign convention is pinned by consistency of the surgery formula:
/// the twisted annulus on an unknot framed `twist` has form [[twist]], so
/// its signature at any nontrivial root of unity equals sign(twist),
/// matching the signature of the 1x1 linking matrix it came from.
pub fn annulus_seifert(twist: i64) -> SeifertMatrix {
    let mut m = IntMatrix::zero(1, 1);
    m[(0, 0)] = BigInt::from(twist);
    SeifertMatrix {
        matrix: m,
        mu: 2,
        genus: Some(0),
    }
}
