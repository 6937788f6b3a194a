//! Quadratic-residue cyclic codes and their extensions.
//!
//! For an odd prime n and a prime q that is a square modulo n, the four
//! cyclic codes Q, Q-bar, N, N-bar of length n are generated by products of
//! the linear factors of x^n - 1 whose root exponents range over the
//! quadratic residues (respectively non-residues) modulo n. The roots live
//! in the splitting field GF(q^ord), with ord the multiplicative order of q
//! modulo n; the products collapse back into GF(q).
//!
//! The labeling of Q versus N depends on the choice of the primitive n-th
//! root of unity, which is pinned deterministically: the smallest suitable
//! power of the canonical generator of the splitting field, falling back to
//! the first element (in encoding order) whose (q^ord - 1)/n-th power is
//! non-trivial.
//!
//! The module also builds the coordinate involution x -> -1/x of the
//! projective line used to pick shortening/puncturing positions that keep
//! the two constituent codes of a reduced pair equivalent.

use thiserror::Error;

use crate::code::{CodeError, LinearCode};
use crate::gf::{factorize, is_prime, is_quadratic_residue, mod_pow, Field, FieldError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QrError {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("{q} is not a quadratic residue modulo {n}")]
    NotResidue { q: u64, n: u64 },
    #[error("quadratic-residue construction requires a prime field")]
    UnsupportedField,
    #[error("splitting field degree {0} is too large to construct explicitly")]
    SplittingFieldTooLarge(u32),
    #[error("requested {requested} coordinate pairs but only {available} are available")]
    TooManyPairs { requested: usize, available: usize },
    #[error("no extension column realizes the required duality pattern")]
    ExtensionFailed,
    #[error("internal construction failure: {0}")]
    Construction(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Code(#[from] CodeError),
}

/// The four quadratic-residue codes of length n plus their extensions.
#[derive(Clone, Debug)]
pub struct QrFamily {
    /// The prime length n.
    pub length: u64,
    pub field: Field,
    /// Q = [n, (n+1)/2], roots at quadratic-residue exponents.
    pub q: LinearCode,
    /// Q-bar = [n, (n-1)/2], the zero-coordinate-sum subcode of Q.
    pub q_bar: LinearCode,
    /// N = [n, (n+1)/2], roots at non-residue exponents.
    pub n: LinearCode,
    /// N-bar = [n, (n-1)/2].
    pub n_bar: LinearCode,
    /// Q extended by one coordinate to realize the duality pattern.
    pub q_ext: LinearCode,
    /// N extended likewise.
    pub n_ext: LinearCode,
    /// The scalars (s, t) used for the Q and N extension columns.
    pub ext_scalars: (u64, u64),
}

/// Builds the quadratic-residue code family over a prime field.
pub fn qr_family(n: u64, field: &Field) -> Result<QrFamily, QrError> {
    if field.degree() != 1 {
        return Err(QrError::UnsupportedField);
    }
    let q = field.order();
    if n < 3 || !is_prime(n) {
        return Err(QrError::NotOddPrime(n));
    }
    if q.is_multiple_of(n) || !is_quadratic_residue(q % n, n)? {
        return Err(QrError::NotResidue { q, n });
    }

    // Multiplicative order of q modulo n = degree of the splitting field.
    let mut ord: u32 = 1;
    let mut acc = q % n;
    while acc != 1 {
        acc = acc * (q % n) % n;
        ord += 1;
    }
    if ord > 40 {
        return Err(QrError::SplittingFieldTooLarge(ord));
    }
    let big = Field::new_internal(q, ord)?;
    let alpha = primitive_nth_root(&big, n);

    let mut residue = vec![false; n as usize];
    for x in 1..n {
        residue[(x * x % n) as usize] = true;
    }
    let g_q = subset_generator(&big, alpha, (1..n).filter(|&r| residue[r as usize]));
    let g_n = subset_generator(&big, alpha, (1..n).filter(|&r| !residue[r as usize]));
    let g_q = collapse(field, &g_q)?;
    let g_n = collapse(field, &g_n)?;

    // (x - 1) * g_q * g_n must reassemble x^n - 1 over GF(q).
    let x_minus_1 = vec![field.neg_raw(1), 1];
    let product = poly_mul(field, &poly_mul(field, &x_minus_1, &g_q), &g_n);
    let mut target = vec![0u64; n as usize + 1];
    target[0] = field.neg_raw(1);
    target[n as usize] = 1;
    if product != target {
        return Err(QrError::Construction(
            "generator polynomials do not split x^n - 1".into(),
        ));
    }

    let code_q = cyclic_code(field, n as usize, &g_q)?;
    let code_n = cyclic_code(field, n as usize, &g_n)?;
    let code_q_bar = cyclic_code(field, n as usize, &poly_mul(field, &x_minus_1, &g_q))?;
    let code_n_bar = cyclic_code(field, n as usize, &poly_mul(field, &x_minus_1, &g_n))?;

    let half = n.div_ceil(2) as usize;
    if code_q.dim() != half || code_n.dim() != half {
        return Err(QrError::Construction(
            "unexpected dimension for Q or N".into(),
        ));
    }
    if code_q_bar.dim() != half - 1 || code_n_bar.dim() != half - 1 {
        return Err(QrError::Construction(
            "unexpected dimension for the expurgated codes".into(),
        ));
    }

    let (q_ext, n_ext, ext_scalars) = extend_pair(&code_q, &code_n, n)?;
    Ok(QrFamily {
        length: n,
        field: field.clone(),
        q: code_q,
        q_bar: code_q_bar,
        n: code_n,
        n_bar: code_n_bar,
        q_ext,
        n_ext,
        ext_scalars,
    })
}

/// Recomputes the extended pair (Q-hat, N-hat) of a family. The extension
/// appends the coordinate -s * (sum of the word), with the scalars chosen
/// as the smallest pair (in encoding order) realizing the duality pattern:
/// both extended codes self-dual for n = 3 mod 4, duals of each other for
/// n = 1 mod 4.
pub fn extend_qr(fam: &QrFamily) -> Result<(LinearCode, LinearCode), QrError> {
    extend_pair(&fam.q, &fam.n, fam.length).map(|(a, b, _)| (a, b))
}

fn extend_pair(
    code_q: &LinearCode,
    code_n: &LinearCode,
    n: u64,
) -> Result<(LinearCode, LinearCode, (u64, u64)), QrError> {
    let field = code_q.field().clone();
    let p = field.order();
    for s in 1..p {
        let qe = extend_with(code_q, s)?;
        for t in 1..p {
            let ne = extend_with(code_n, t)?;
            let ok = if n % 4 == 3 {
                qe.dual() == qe && ne.dual() == ne
            } else {
                qe.dual() == ne
            };
            if ok {
                return Ok((qe, ne, (s, t)));
            }
        }
    }
    Err(QrError::ExtensionFailed)
}

fn extend_with(code: &LinearCode, scalar: u64) -> Result<LinearCode, QrError> {
    let f = code.field();
    let n = code.len();
    let rows: Vec<Vec<u64>> = (0..code.dim())
        .map(|r| {
            let mut row = code.generator().row(r).to_vec();
            let sum = row.iter().fold(0, |acc, &x| f.add_raw(acc, x));
            row.push(f.neg_raw(f.mul_raw(scalar, sum)));
            row
        })
        .collect();
    Ok(LinearCode::from_rows(f, n + 1, &rows)?)
}

/// Deterministic element of multiplicative order exactly n in the
/// splitting field.
fn primitive_nth_root(big: &Field, n: u64) -> u64 {
    let group = big.order() - 1;
    debug_assert_eq!(group % n, 0);
    let gen = big.polynomial_generator().code();
    let factors = factorize(group);
    let mut ord = group;
    for &(f, _) in &factors {
        while ord.is_multiple_of(f) && big.pow_raw(gen, ord / f) == 1 {
            ord /= f;
        }
    }
    if ord.is_multiple_of(n) {
        return big.pow_raw(gen, ord / n);
    }
    for e in 2..big.order() {
        let cand = big.pow_raw(e, group / n);
        if cand != 1 {
            return cand;
        }
    }
    unreachable!("the splitting field contains elements of order n")
}

/// Product of (x - alpha^r) over the exponent set, as ascending
/// coefficients in the splitting field.
fn subset_generator(big: &Field, alpha: u64, exponents: impl Iterator<Item = u64>) -> Vec<u64> {
    let mut poly = vec![1u64];
    for r in exponents {
        let root = big.pow_raw(alpha, r);
        let factor = [big.neg_raw(root), 1];
        let mut next = vec![0u64; poly.len() + 1];
        for (i, &c) in poly.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (j, &fc) in factor.iter().enumerate() {
                next[i + j] = big.add_raw(next[i + j], big.mul_raw(c, fc));
            }
        }
        poly = next;
    }
    poly
}

/// Reads coefficients that lie in the prime subfield back into GF(q).
fn collapse(field: &Field, poly: &[u64]) -> Result<Vec<u64>, QrError> {
    poly.iter()
        .map(|&c| {
            if c < field.order() {
                Ok(c)
            } else {
                Err(QrError::Construction(
                    "generator coefficient escapes the base field".into(),
                ))
            }
        })
        .collect()
}

fn poly_mul(field: &Field, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = field.add_raw(out[i + j], field.mul_raw(ai, bj));
        }
    }
    out
}

fn cyclic_code(field: &Field, n: usize, gen_poly: &[u64]) -> Result<LinearCode, CodeError> {
    let k = n - (gen_poly.len() - 1);
    let rows: Vec<Vec<u64>> = (0..k)
        .map(|j| {
            let mut row = vec![0u64; n];
            row[j..j + gen_poly.len()].copy_from_slice(gen_poly);
            row
        })
        .collect();
    LinearCode::from_rows(field, n, &rows)
}

// ---------------------------------------------------------------------------
// involution on the extended coordinates

/// The involution x -> -1/x of the projective line over GF(n), acting on
/// the n + 1 coordinates of an extended code. Position j (1-based) carries
/// the field element j - 1 for j <= n; position n + 1 carries infinity.
#[derive(Clone, Debug)]
pub struct InvolutionPlan {
    pub n: u64,
    tau: Vec<usize>,
    /// Positions fixed by the involution: none for n = 3 mod 4, two for
    /// n = 1 mod 4.
    pub fixed_points: Vec<usize>,
    /// All two-element orbits as (representative, image), representatives
    /// ascending.
    pub pairs: Vec<(usize, usize)>,
    /// The first s representatives, intended for shortening.
    pub shorten_positions: Vec<usize>,
    /// Their images under the involution, intended for puncturing.
    pub puncture_positions: Vec<usize>,
}

impl InvolutionPlan {
    /// Image of a 1-based position.
    pub fn tau(&self, pos: usize) -> usize {
        self.tau[pos - 1]
    }

    /// The full 1-based permutation vector, usable with
    /// [`LinearCode::permuted`].
    pub fn as_permutation(&self) -> Vec<usize> {
        self.tau.clone()
    }
}

/// Builds the involution plan for prime n, selecting `s` orbit pairs.
pub fn involution_plan(n: u64, s: usize) -> Result<InvolutionPlan, QrError> {
    if n < 3 || !is_prime(n) {
        return Err(QrError::NotOddPrime(n));
    }
    let ext = n as usize + 1;
    let infinity = ext; // 1-based position of the extension coordinate
    let pos_of_label = |x: u64| x as usize + 1;
    // tau over positions
    let mut tau = vec![0usize; ext];
    tau[infinity - 1] = pos_of_label(0);
    tau[pos_of_label(0) - 1] = infinity;
    for x in 1..n {
        let inv = mod_pow(x, n - 2, n);
        let image = (n - inv) % n;
        tau[pos_of_label(x) - 1] = if image == 0 {
            infinity
        } else {
            pos_of_label(image)
        };
    }
    let mut fixed_points = Vec::new();
    let mut pairs = Vec::new();
    for pos in 1..=ext {
        let image = tau[pos - 1];
        if image == pos {
            fixed_points.push(pos);
        } else if pos < image {
            pairs.push((pos, image));
        }
    }
    if 2 * s > ext - fixed_points.len() {
        return Err(QrError::TooManyPairs {
            requested: s,
            available: pairs.len(),
        });
    }
    let shorten_positions: Vec<usize> = pairs.iter().take(s).map(|p| p.0).collect();
    let puncture_positions: Vec<usize> = pairs.iter().take(s).map(|p| p.1).collect();
    Ok(InvolutionPlan {
        n,
        tau,
        fixed_points,
        pairs,
        shorten_positions,
        puncture_positions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mindist::{min_weight_brute, MinDistOptions};

    fn gf(q: u64) -> Field {
        Field::new(q, 1).unwrap()
    }

    fn d(code: &LinearCode) -> u32 {
        min_weight_brute(code, &MinDistOptions::default())
            .unwrap()
            .value
    }

    #[test]
    fn qr7_is_hamming_family() {
        let fam = qr_family(7, &gf(2)).unwrap();
        assert_eq!((fam.q.len(), fam.q.dim()), (7, 4));
        assert_eq!((fam.q_bar.len(), fam.q_bar.dim()), (7, 3));
        assert_eq!(d(&fam.q), 3);
        assert_eq!(d(&fam.q_bar), 4);
        assert_eq!(d(&fam.n), 3);
        // n = 7 = 3 mod 4: each code is dual to its own expurgated code
        assert_eq!(fam.q.dual(), fam.q_bar);
        assert_eq!(fam.n.dual(), fam.n_bar);
        assert!(fam.q_bar.is_subcode_of(&fam.q).unwrap());
        assert!(fam.n_bar.is_subcode_of(&fam.n).unwrap());
        // extended [8,4,4], self-dual
        assert_eq!((fam.q_ext.len(), fam.q_ext.dim()), (8, 4));
        assert_eq!(d(&fam.q_ext), 4);
        assert_eq!(fam.q_ext.dual(), fam.q_ext);
    }

    #[test]
    fn qr23_is_golay() {
        let fam = qr_family(23, &gf(2)).unwrap();
        assert_eq!((fam.q.len(), fam.q.dim()), (23, 12));
        assert_eq!(d(&fam.q), 7);
        assert!(crate::fixtures::golay23_weights_check(&fam.q));
        assert_eq!((fam.q_ext.len(), fam.q_ext.dim()), (24, 12));
        assert_eq!(d(&fam.q_ext), 8);
        assert_eq!(fam.q_ext.dual(), fam.q_ext);
    }

    #[test]
    fn qr11_ternary_golay() {
        let fam = qr_family(11, &gf(3)).unwrap();
        assert_eq!((fam.q.len(), fam.q.dim()), (11, 6));
        assert_eq!(d(&fam.q), 5);
        assert_eq!(d(&fam.q_ext), 6);
        assert_eq!(fam.q_ext.dual(), fam.q_ext);
        // matches the classical generator-polynomial construction
        assert_eq!(d(&crate::fixtures::ternary_golay11()), 5);
    }

    #[test]
    fn qr13_has_crossed_duality() {
        let fam = qr_family(13, &gf(3)).unwrap();
        // n = 1 mod 4: Q and N are dual to the other family's expurgated code
        assert_eq!(fam.q.dual(), fam.n_bar);
        assert_eq!(fam.n.dual(), fam.q_bar);
        assert_eq!(fam.q_ext.dual(), fam.n_ext);
        assert_eq!(fam.n_ext.dual(), fam.q_ext);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(
            qr_family(9, &gf(2)).unwrap_err(),
            QrError::NotOddPrime(9)
        ));
        assert!(matches!(
            qr_family(5, &gf(2)).unwrap_err(),
            QrError::NotResidue { q: 2, n: 5 }
        ));
        let f4 = Field::new(2, 2).unwrap();
        assert!(matches!(
            qr_family(7, &f4).unwrap_err(),
            QrError::UnsupportedField
        ));
    }

    #[test]
    fn psl2_spot_checks_binary() {
        // x -> x + 1 (infinity fixed) and x -> -1/x both preserve the
        // extended code.
        for n in [7u64, 23] {
            let fam = qr_family(n, &gf(2)).unwrap();
            let ext = n as usize + 1;
            let mut shift = vec![0usize; ext];
            for x in 0..n {
                shift[x as usize] = ((x + 1) % n) as usize + 1;
            }
            shift[ext - 1] = ext;
            assert_eq!(fam.q_ext.permuted(&shift).unwrap(), fam.q_ext, "x+1, n={n}");
            let plan = involution_plan(n, 0).unwrap();
            assert_eq!(
                fam.q_ext.permuted(&plan.as_permutation()).unwrap(),
                fam.q_ext,
                "-1/x, n={n}"
            );
        }
    }

    #[test]
    fn involution_plan_n7() {
        let plan = involution_plan(7, 2).unwrap();
        // label pairs {0,inf},{1,6},{2,3},{4,5} -> positions
        assert_eq!(plan.pairs, vec![(1, 8), (2, 7), (3, 4), (5, 6)]);
        assert!(plan.fixed_points.is_empty());
        assert_eq!(plan.shorten_positions, vec![1, 2]);
        assert_eq!(plan.puncture_positions, vec![8, 7]);
    }

    #[test]
    fn involution_plan_n13_fixed_points() {
        let plan = involution_plan(13, 1).unwrap();
        // x^2 = -1 mod 13 at labels 5 and 8, i.e. positions 6 and 9
        assert_eq!(plan.fixed_points, vec![6, 9]);
    }

    #[test]
    fn involution_plan_n23_empty() {
        let plan = involution_plan(23, 0).unwrap();
        assert!(plan.shorten_positions.is_empty());
        assert!(plan.fixed_points.is_empty());
    }

    #[test]
    fn involution_is_an_involution_with_expected_fixed_points() {
        for n in (3..100u64).filter(|&n| is_prime(n)) {
            let plan = involution_plan(n, 0).unwrap();
            for pos in 1..=(n as usize + 1) {
                assert_eq!(plan.tau(plan.tau(pos)), pos);
            }
            let expected = if n % 4 == 1 { 2 } else { 0 };
            assert_eq!(plan.fixed_points.len(), expected, "n={n}");
        }
    }

    #[test]
    fn too_many_pairs_rejected() {
        assert!(matches!(
            involution_plan(7, 5).unwrap_err(),
            QrError::TooManyPairs { .. }
        ));
    }
}
