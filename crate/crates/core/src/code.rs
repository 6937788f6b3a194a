//! Linear block codes over GF(q) as row spaces of generator matrices.
//!
//! A [`LinearCode`] always holds its generator in reduced row echelon form
//! with full row rank, so two values represent the same code exactly when
//! they compare equal. Coordinates are 1-based throughout the public API.
//!
//! # Generator matrix text format
//!
//! ```text
//! q n k
//! <k generator rows>
//! ```
//!
//! `q` is the field order (the field is reconstructed with its canonical
//! modulus), `n` the length and `k` the number of rows that follow. Rows are
//! written as
//!
//! * a string of `n` digits for prime fields with p <= 9 (e.g. `1011`),
//! * `n` space-separated integers for larger prime fields,
//! * `n` space-separated coefficient tuples `c0,c1,...,c{m-1}` for
//!   extension fields (ascending coefficients; `0,1` is the class of x).
//!
//! Blank lines and lines starting with `#` are ignored. Parsing
//! canonicalizes, so `parse(write(c)) == c`; a non-RREF input file
//! round-trips to the same code, not the same bytes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::gf::{Field, FieldError};
use crate::matrix::Matrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("matrix shape {rows}x{cols} does not match {entries} entries")]
    BadShape {
        rows: usize,
        cols: usize,
        entries: usize,
    },
    #[error("entry {0} is not a valid element encoding")]
    EntryOutOfRange(u64),
    #[error("code length must be at least 1")]
    ZeroLength,
    #[error("coordinate {i} out of range 1..={n}")]
    CoordinateOutOfRange { i: usize, n: usize },
    #[error("length {0} too short for this operation")]
    LengthTooShort(usize),
    #[error("codes live over different fields")]
    FieldMismatch,
    #[error("code lengths differ: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("dimension {k} out of range 0..={n}")]
    DimensionOutOfRange { k: usize, n: usize },
    #[error("word length {0} does not match code length {1}")]
    WordLengthMismatch(usize, usize),
    #[error("not a permutation of 1..={0}")]
    BadPermutation(usize),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A linear [n, k] code over GF(q), held as a canonical RREF generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCode {
    gen: Matrix,
    pivots: Vec<usize>,
}

impl LinearCode {
    /// The row space of an arbitrary matrix; dependent rows are dropped.
    pub fn from_matrix(m: &Matrix) -> Result<Self, CodeError> {
        if m.cols() == 0 {
            return Err(CodeError::ZeroLength);
        }
        let mut rref = m.clone();
        let pivots = rref.rref();
        let k = pivots.len();
        let mut data = Vec::with_capacity(k * m.cols());
        for r in 0..k {
            data.extend_from_slice(rref.row(r));
        }
        let gen = Matrix::new(m.field(), k, m.cols(), data)?;
        Ok(LinearCode { gen, pivots })
    }

    /// Builds a code from generator rows given as element encodings.
    pub fn from_rows(field: &Field, n: usize, rows: &[Vec<u64>]) -> Result<Self, CodeError> {
        if n == 0 {
            return Err(CodeError::ZeroLength);
        }
        let mut data = Vec::with_capacity(rows.len() * n);
        for row in rows {
            if row.len() != n {
                return Err(CodeError::WordLengthMismatch(row.len(), n));
            }
            data.extend_from_slice(row);
        }
        let m = Matrix::new(field, rows.len(), n, data)?;
        Self::from_matrix(&m)
    }

    /// The [n, 0] zero code.
    pub fn zero(field: &Field, n: usize) -> Result<Self, CodeError> {
        if n == 0 {
            return Err(CodeError::ZeroLength);
        }
        Ok(LinearCode {
            gen: Matrix::zero(field, 0, n),
            pivots: Vec::new(),
        })
    }

    /// The [n, n] full space.
    pub fn full(field: &Field, n: usize) -> Result<Self, CodeError> {
        Self::from_matrix(&Matrix::identity(field, n))
    }

    /// A uniformly random k-dimensional code, deterministic in the seed.
    pub fn random(field: &Field, n: usize, k: usize, seed: u64) -> Result<Self, CodeError> {
        if n == 0 {
            return Err(CodeError::ZeroLength);
        }
        if k > n {
            return Err(CodeError::DimensionOutOfRange { k, n });
        }
        if k == 0 {
            return Self::zero(field, n);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = field.order();
        loop {
            let data: Vec<u64> = (0..k * n).map(|_| rng.gen_range(0..q)).collect();
            let m = Matrix::new(field, k, n, data)?;
            let code = Self::from_matrix(&m)?;
            if code.dim() == k {
                return Ok(code);
            }
        }
    }

    pub fn field(&self) -> &Field {
        self.gen.field()
    }

    pub fn len(&self) -> usize {
        self.gen.cols()
    }

    pub fn is_empty(&self) -> bool {
        false // a code always has length >= 1
    }

    pub fn dim(&self) -> usize {
        self.gen.rows()
    }

    /// The canonical RREF generator matrix.
    pub fn generator(&self) -> &Matrix {
        &self.gen
    }

    pub(crate) fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// The dual code: all words orthogonal to every codeword.
    pub fn dual(&self) -> LinearCode {
        let kernel = self.gen.kernel_from_rref(&self.pivots);
        LinearCode::from_matrix(&kernel).expect("kernel has the same length")
    }

    /// Shortening: keep codewords that are zero at coordinate `i` (1-based),
    /// then delete that coordinate.
    pub fn shorten(&self, i: usize) -> Result<LinearCode, CodeError> {
        let n = self.len();
        if n < 2 {
            return Err(CodeError::LengthTooShort(n));
        }
        let c = self.check_coord(i)?;
        let f = self.field().clone();
        let k = self.dim();
        // Eliminate column c from all but one generator row, drop that row.
        let mut rows = self.gen.row_vecs();
        if let Some(lead) = (0..k).find(|&r| rows[r][c] != 0) {
            let inv = f.inv_raw(rows[lead][c]);
            let lead_row = rows.remove(lead);
            for row in rows.iter_mut() {
                if row[c] == 0 {
                    continue;
                }
                let factor = f.mul_raw(row[c], inv);
                for (entry, &lv) in row.iter_mut().zip(&lead_row) {
                    *entry = f.sub_raw(*entry, f.mul_raw(factor, lv));
                }
            }
        }
        for row in rows.iter_mut() {
            row.remove(c);
        }
        LinearCode::from_rows(&f, n - 1, &rows)
    }

    /// Puncturing: delete coordinate `i` (1-based) from every codeword.
    pub fn puncture(&self, i: usize) -> Result<LinearCode, CodeError> {
        let n = self.len();
        if n < 2 {
            return Err(CodeError::LengthTooShort(n));
        }
        let c = self.check_coord(i)?;
        let mut rows = self.gen.row_vecs();
        for row in rows.iter_mut() {
            row.remove(c);
        }
        LinearCode::from_rows(self.field(), n - 1, &rows)
    }

    /// Is every codeword of `self` a codeword of `other`?
    pub fn is_subcode_of(&self, other: &LinearCode) -> Result<bool, CodeError> {
        if self.field() != other.field() {
            return Err(CodeError::FieldMismatch);
        }
        if self.len() != other.len() {
            return Err(CodeError::LengthMismatch(self.len(), other.len()));
        }
        Ok((0..self.dim()).all(|r| other.contains(self.gen.row(r))))
    }

    /// Membership test by reduction against the RREF generator.
    pub fn contains(&self, word: &[u64]) -> bool {
        assert_eq!(word.len(), self.len(), "word length mismatch");
        let f = self.field();
        let mut w = word.to_vec();
        for (r, &p) in self.pivots.iter().enumerate() {
            let coef = w[p];
            if coef == 0 {
                continue;
            }
            for (entry, &gv) in w.iter_mut().zip(self.gen.row(r)) {
                *entry = f.sub_raw(*entry, f.mul_raw(coef, gv));
            }
        }
        w.iter().all(|&x| x == 0)
    }

    /// Is coordinate `i` (1-based) zero in every codeword?
    pub fn is_zero_coordinate(&self, i: usize) -> Result<bool, CodeError> {
        let c = self.check_coord(i)?;
        Ok((0..self.dim()).all(|r| self.gen.get(r, c) == 0))
    }

    /// Does the code contain a weight-1 word supported at coordinate `i`?
    pub fn has_weight_one_at(&self, i: usize) -> Result<bool, CodeError> {
        let c = self.check_coord(i)?;
        let mut e = vec![0u64; self.len()];
        e[c] = 1;
        Ok(self.contains(&e))
    }

    /// The code with coordinates rearranged: position j of the result is
    /// position `perm[j-1]` of the original (1-based throughout).
    pub fn permuted(&self, perm: &[usize]) -> Result<LinearCode, CodeError> {
        let n = self.len();
        if perm.len() != n {
            return Err(CodeError::BadPermutation(n));
        }
        let mut seen = vec![false; n];
        for &p in perm {
            if p == 0 || p > n || seen[p - 1] {
                return Err(CodeError::BadPermutation(n));
            }
            seen[p - 1] = true;
        }
        let rows: Vec<Vec<u64>> = (0..self.dim())
            .map(|r| (0..n).map(|j| self.gen.get(r, perm[j] - 1)).collect())
            .collect();
        LinearCode::from_rows(self.field(), n, &rows)
    }

    /// Iterates over all q^k codewords, the zero word first. Intended for
    /// small codes; panics if q^k exceeds 2^26.
    pub fn codewords(&self) -> Codewords<'_> {
        let total = self
            .field()
            .order()
            .checked_pow(self.dim() as u32)
            .filter(|&t| t <= 1 << 26)
            .expect("codeword enumeration limited to q^k <= 2^26");
        Codewords {
            code: self,
            digits: vec![0; self.dim()],
            word: vec![0; self.len()],
            emitted: 0,
            total,
        }
    }

    fn check_coord(&self, i: usize) -> Result<usize, CodeError> {
        if i == 0 || i > self.len() {
            return Err(CodeError::CoordinateOutOfRange { i, n: self.len() });
        }
        Ok(i - 1)
    }

    // -- text format --

    pub fn to_text(&self) -> String {
        let f = self.field();
        let mut out = format!("{} {} {}\n", f.order(), self.len(), self.dim());
        for r in 0..self.dim() {
            let row = self.gen.row(r);
            if f.degree() == 1 && f.characteristic() <= 9 {
                for &e in row {
                    out.push_str(&e.to_string());
                }
            } else if f.degree() == 1 {
                let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
                out.push_str(&cells.join(" "));
            } else {
                let cells: Vec<String> = row
                    .iter()
                    .map(|&e| {
                        f.coeffs(f.element(e).unwrap())
                            .iter()
                            .map(|c| c.to_string())
                            .collect::<Vec<_>>()
                            .join(",")
                    })
                    .collect();
                out.push_str(&cells.join(" "));
            }
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<LinearCode, CodeError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or(CodeError::Parse {
            line: 0,
            msg: "empty file".into(),
        })?;
        let parse_err = |line: usize, msg: &str| CodeError::Parse {
            line,
            msg: msg.into(),
        };
        let parts: Vec<&str> = header.split_whitespace().collect();
        if parts.len() != 3 {
            return Err(parse_err(hline, "header must be `q n k`"));
        }
        let q: u64 = parts[0]
            .parse()
            .map_err(|_| parse_err(hline, "bad field order"))?;
        let n: usize = parts[1]
            .parse()
            .map_err(|_| parse_err(hline, "bad length"))?;
        let k: usize = parts[2]
            .parse()
            .map_err(|_| parse_err(hline, "bad dimension"))?;
        if n == 0 {
            return Err(parse_err(hline, "length must be at least 1"));
        }
        if k > n {
            return Err(parse_err(hline, "dimension exceeds length"));
        }
        let (p, m) = prime_power(q).ok_or_else(|| parse_err(hline, "q is not a prime power"))?;
        let field = Field::new(p, m)?;
        let mut rows = Vec::with_capacity(k);
        for _ in 0..k {
            let (lno, line) = lines
                .next()
                .ok_or_else(|| parse_err(hline, "fewer rows than the header announces"))?;
            let row = if m == 1 && p <= 9 {
                if line.chars().count() != n {
                    return Err(parse_err(lno, "row length does not match n"));
                }
                line.chars()
                    .map(|ch| {
                        ch.to_digit(10)
                            .map(u64::from)
                            .filter(|&d| d < p)
                            .ok_or_else(|| parse_err(lno, "invalid digit"))
                    })
                    .collect::<Result<Vec<u64>, _>>()?
            } else if m == 1 {
                let cells: Vec<&str> = line.split_whitespace().collect();
                if cells.len() != n {
                    return Err(parse_err(lno, "row length does not match n"));
                }
                cells
                    .iter()
                    .map(|c| {
                        c.parse::<u64>()
                            .ok()
                            .filter(|&d| d < p)
                            .ok_or_else(|| parse_err(lno, "invalid entry"))
                    })
                    .collect::<Result<Vec<u64>, _>>()?
            } else {
                let cells: Vec<&str> = line.split_whitespace().collect();
                if cells.len() != n {
                    return Err(parse_err(lno, "row length does not match n"));
                }
                cells
                    .iter()
                    .map(|cell| {
                        let coeffs = cell
                            .split(',')
                            .map(|c| c.parse::<u64>().ok().filter(|&d| d < p))
                            .collect::<Option<Vec<u64>>>()
                            .ok_or_else(|| parse_err(lno, "invalid coefficient tuple"))?;
                        if coeffs.len() != m as usize {
                            return Err(parse_err(lno, "tuple arity does not match the field"));
                        }
                        Ok(field.from_coeffs(&coeffs)?.code())
                    })
                    .collect::<Result<Vec<u64>, CodeError>>()?
            };
            rows.push(row);
        }
        if let Some((lno, _)) = lines.next() {
            return Err(parse_err(lno, "trailing content after the last row"));
        }
        let code = LinearCode::from_rows(&field, n, &rows)?;
        if code.dim() != k {
            return Err(parse_err(
                hline,
                "rows are linearly dependent; header k does not match the rank",
            ));
        }
        Ok(code)
    }
}

impl std::fmt::Display for LinearCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "[{},{}]_{}",
            self.len(),
            self.dim(),
            self.field().order()
        )
    }
}

/// Hamming weight of a word given as element encodings.
pub fn weight(word: &[u64]) -> u32 {
    word.iter().filter(|&&x| x != 0).count() as u32
}

fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let factors = crate::gf::factorize(q);
    if factors.len() != 1 {
        return None;
    }
    Some(factors[0])
}

/// Iterator over all codewords, produced by a base-q odometer over message
/// digits with incremental row additions.
pub struct Codewords<'a> {
    code: &'a LinearCode,
    digits: Vec<u64>,
    word: Vec<u64>,
    emitted: u64,
    total: u64,
}

impl Iterator for Codewords<'_> {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.emitted == self.total {
            return None;
        }
        if self.emitted > 0 {
            let f = self.code.field();
            let q = f.order();
            let mut j = 0;
            loop {
                // Message digits are element encodings; moving digit j from
                // old to new adds (enc(new) - enc(old)) times row j.
                let old = self.digits[j];
                let new = if old + 1 < q { old + 1 } else { 0 };
                let delta = f.sub_raw(new, old);
                for c in 0..self.word.len() {
                    let s = f.mul_raw(delta, self.code.gen.get(j, c));
                    self.word[c] = f.add_raw(self.word[c], s);
                }
                self.digits[j] = new;
                if new != 0 {
                    break;
                }
                j += 1;
            }
        }
        self.emitted += 1;
        Some(self.word.clone())
    }
}
