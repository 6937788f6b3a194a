//! Shared fixtures for unit tests: small classical codes with known
//! parameters, built independently of the construction code under test.

use crate::code::{weight, LinearCode};
use crate::gf::Field;

pub(crate) fn gf2() -> Field {
    Field::new(2, 1).unwrap()
}

pub(crate) fn gf3() -> Field {
    Field::new(3, 1).unwrap()
}

/// Cyclic code of length n generated by the shifts of a generator
/// polynomial (ascending coefficients).
pub(crate) fn cyclic_code(field: &Field, n: usize, gen_poly: &[u64]) -> LinearCode {
    let k = n - (gen_poly.len() - 1);
    let rows: Vec<Vec<u64>> = (0..k)
        .map(|j| {
            let mut row = vec![0u64; n];
            row[j..j + gen_poly.len()].copy_from_slice(gen_poly);
            row
        })
        .collect();
    LinearCode::from_rows(field, n, &rows).unwrap()
}

/// Appends the coordinate -sum(word) to every generator row.
pub(crate) fn parity_extend(code: &LinearCode) -> LinearCode {
    let f = code.field();
    let rows: Vec<Vec<u64>> = (0..code.dim())
        .map(|r| {
            let mut row = code.generator().row(r).to_vec();
            let sum = row.iter().fold(0, |acc, &x| f.add_raw(acc, x));
            row.push(f.neg_raw(sum));
            row
        })
        .collect();
    LinearCode::from_rows(f, code.len() + 1, &rows).unwrap()
}

/// The [7,4,3] Hamming code in systematic form.
pub(crate) fn hamming() -> LinearCode {
    LinearCode::from_rows(
        &gf2(),
        7,
        &[
            vec![1, 0, 0, 0, 0, 1, 1],
            vec![0, 1, 0, 0, 1, 0, 1],
            vec![0, 0, 1, 0, 1, 1, 0],
            vec![0, 0, 0, 1, 1, 1, 1],
        ],
    )
    .unwrap()
}

/// The [23,12,7] binary code generated by x^11+x^10+x^6+x^5+x^4+x^2+1.
pub(crate) fn golay23() -> LinearCode {
    cyclic_code(&gf2(), 23, &[1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 1, 1])
}

/// The [11,6,5] ternary code generated by x^5+x^4+2x^3+x^2+2.
pub(crate) fn ternary_golay11() -> LinearCode {
    cyclic_code(&gf3(), 11, &[2, 0, 1, 2, 1, 1])
}

pub(crate) fn weight_distribution(code: &LinearCode) -> Vec<u64> {
    let mut dist = vec![0u64; code.len() + 1];
    for w in code.codewords() {
        dist[weight(&w) as usize] += 1;
    }
    dist
}

/// Does this [23,12] code have the weight distribution of the binary
/// Golay code?
pub(crate) fn golay23_weights_check(code: &LinearCode) -> bool {
    let mut expected = vec![0u64; 24];
    for (w, count) in [
        (0, 1),
        (7, 253),
        (8, 506),
        (11, 1288),
        (12, 1288),
        (15, 506),
        (16, 253),
        (23, 1),
    ] {
        expected[w as usize] = count;
    }
    weight_distribution(code) == expected
}
