//! Exact minimum-weight computation for linear codes, and for the coset
//! differences that determine the distances of CSS codes.
//!
//! Two engines are provided. [`min_weight_brute`] walks every non-zero
//! codeword once, driven by a mixed-radix Gray sequence so that each step is
//! a single row addition into a packed accumulator. [`min_weight_bz`] is the
//! Brouwer-Zimmermann algorithm: it enumerates messages of increasing weight
//! in a maximal family of systematic forms over pairwise disjoint
//! information sets, and stops as soon as the accumulated lower bound meets
//! the best codeword found.
//!
//! Words over GF(2) are packed one bit per coordinate, words over GF(3) as
//! two bit-planes; other fields fall back to a generic element-wise
//! representation. Brute-force enumeration fans out across threads by
//! fixing a prefix of the message digits; results are exhaustive minima and
//! therefore identical for any worker count.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering::Relaxed};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::code::{CodeError, LinearCode};
use crate::gf::Field;

/// Caps for a single enumeration run. Exceeding either cap aborts cleanly
/// with a [`DistanceKind::LowerBound`] result.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EnumerationBudget {
    /// Maximum number of codewords to visit.
    pub max_codewords: u64,
    /// Wall-clock cap in seconds; `f64::INFINITY` disables it.
    pub max_seconds: f64,
}

impl EnumerationBudget {
    pub const UNLIMITED: Self = Self {
        max_codewords: u64::MAX,
        max_seconds: f64::INFINITY,
    };

    pub fn with_codewords(max_codewords: u64) -> Self {
        Self {
            max_codewords,
            ..Self::UNLIMITED
        }
    }

    pub fn with_seconds(max_seconds: f64) -> Self {
        Self {
            max_seconds,
            ..Self::UNLIMITED
        }
    }

    fn deadline(&self) -> Option<Instant> {
        self.max_seconds
            .is_finite()
            .then(|| Instant::now() + Duration::from_secs_f64(self.max_seconds.max(0.0)))
    }
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        Self::UNLIMITED
    }
}

/// Knobs shared by the distance engines.
#[derive(Clone, Copy, Debug, Default)]
pub struct MinDistOptions {
    pub budget: EnumerationBudget,
    /// Worker count for brute-force enumeration; 0 means all cores.
    pub threads: usize,
}

impl MinDistOptions {
    pub fn with_budget(budget: EnumerationBudget) -> Self {
        Self { budget, threads: 0 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DistanceKind {
    /// The exact minimum weight; the enumeration ran to completion.
    Verified,
    /// A proven lower bound; the true value is at least this.
    LowerBound,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DistanceMethod {
    BruteForce,
    BrouwerZimmermann,
    /// Propagated through a parameter rule rather than enumerated.
    TheoremDerived,
    /// Supplied as an external input and taken on trust.
    Declared,
}

/// A minimum-distance datum together with how much it actually certifies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceValue {
    pub value: u32,
    pub kind: DistanceKind,
    pub method: DistanceMethod,
}

impl DistanceValue {
    /// An exactly verified value. Only the enumeration engines may certify.
    pub fn verified(value: u32, method: DistanceMethod) -> Self {
        assert!(
            matches!(
                method,
                DistanceMethod::BruteForce | DistanceMethod::BrouwerZimmermann
            ),
            "only enumeration methods can verify a distance"
        );
        Self {
            value,
            kind: DistanceKind::Verified,
            method,
        }
    }

    pub fn lower_bound(value: u32, method: DistanceMethod) -> Self {
        Self {
            value,
            kind: DistanceKind::LowerBound,
            method,
        }
    }

    pub fn is_verified(&self) -> bool {
        self.kind == DistanceKind::Verified
    }
}

impl std::fmt::Display for DistanceValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.kind {
            DistanceKind::Verified => write!(f, "{}", self.value),
            DistanceKind::LowerBound => write!(f, ">={}", self.value),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Engine {
    Brute,
    BrouwerZimmermann,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DistanceError {
    #[error("the zero code has no minimum weight")]
    ZeroCode,
    #[error("the second code is not a subcode of the first")]
    NotSubcode,
    #[error("the codes are equal, so the difference set is empty")]
    EqualCodes,
    #[error(transparent)]
    Code(#[from] CodeError),
}

/// Exact minimum weight by exhaustive Gray-code enumeration of all
/// q^k - 1 non-zero codewords.
pub fn min_weight_brute(
    code: &LinearCode,
    opts: &MinDistOptions,
) -> Result<DistanceValue, DistanceError> {
    if code.dim() == 0 {
        return Err(DistanceError::ZeroCode);
    }
    Ok(dispatch_brute(code, opts))
}

/// Exact minimum weight by the Brouwer-Zimmermann information-set bound.
pub fn min_weight_bz(
    code: &LinearCode,
    opts: &MinDistOptions,
) -> Result<DistanceValue, DistanceError> {
    if code.dim() == 0 {
        return Err(DistanceError::ZeroCode);
    }
    let field = code.field();
    Ok(match (field.order(), field.degree()) {
        (2, 1) => bz_engine::<RowG2>(code, opts),
        (3, 1) => bz_engine::<RowG3>(code, opts),
        _ => bz_engine::<RowGen>(code, opts),
    })
}

/// Minimum weight through the chosen engine.
pub fn min_weight(
    code: &LinearCode,
    engine: Engine,
    opts: &MinDistOptions,
) -> Result<DistanceValue, DistanceError> {
    match engine {
        Engine::Brute => min_weight_brute(code, opts),
        Engine::BrouwerZimmermann => min_weight_bz(code, opts),
    }
}

/// Minimum weight over the codewords of `code` that are not in `sub`,
/// enumerated coset by coset so that no membership filtering is needed.
pub fn relative_min_weight(
    code: &LinearCode,
    sub: &LinearCode,
    opts: &MinDistOptions,
) -> Result<DistanceValue, DistanceError> {
    if !sub.is_subcode_of(code)? {
        return Err(DistanceError::NotSubcode);
    }
    if sub.dim() == code.dim() {
        return Err(DistanceError::EqualCodes);
    }
    let field = code.field();
    Ok(match (field.order(), field.degree()) {
        (2, 1) => relative_engine::<RowG2>(code, sub, opts),
        (3, 1) => relative_engine::<RowG3>(code, sub, opts),
        _ => relative_engine::<RowGen>(code, sub, opts),
    })
}

fn dispatch_brute(code: &LinearCode, opts: &MinDistOptions) -> DistanceValue {
    let field = code.field();
    match (field.order(), field.degree()) {
        (2, 1) => brute_engine::<RowG2>(code, opts),
        (3, 1) => brute_engine::<RowG3>(code, opts),
        _ => brute_engine::<RowGen>(code, opts),
    }
}

// ---------------------------------------------------------------------------
// packed word representations

/// A codeword accumulator supporting incremental row additions.
trait Row: Clone + Send + Sync {
    fn pack(field: &Field, codes: &[u64]) -> Self;
    fn zero(field: &Field, n: usize) -> Self;
    /// self += rhs
    fn add_assign(&mut self, rhs: &Self);
    /// self -= rhs
    fn sub_assign(&mut self, rhs: &Self);
    /// self += scalar * rhs, scalar a non-zero element encoding
    fn add_scaled(&mut self, rhs: &Self, scalar: u64);
    fn weight(&self) -> u32;
}

/// GF(2): one bit per coordinate.
#[derive(Clone)]
struct RowG2 {
    w: Vec<u64>,
}

impl Row for RowG2 {
    fn pack(_field: &Field, codes: &[u64]) -> Self {
        let mut w = vec![0u64; codes.len().div_ceil(64)];
        for (i, &c) in codes.iter().enumerate() {
            if c != 0 {
                w[i / 64] |= 1 << (i % 64);
            }
        }
        RowG2 { w }
    }

    fn zero(_field: &Field, n: usize) -> Self {
        RowG2 {
            w: vec![0u64; n.div_ceil(64)],
        }
    }

    #[inline]
    fn add_assign(&mut self, rhs: &Self) {
        for (a, b) in self.w.iter_mut().zip(&rhs.w) {
            *a ^= b;
        }
    }

    #[inline]
    fn sub_assign(&mut self, rhs: &Self) {
        self.add_assign(rhs);
    }

    #[inline]
    fn add_scaled(&mut self, rhs: &Self, scalar: u64) {
        debug_assert_eq!(scalar, 1);
        self.add_assign(rhs);
    }

    #[inline]
    fn weight(&self) -> u32 {
        self.w.iter().map(|x| x.count_ones()).sum()
    }
}

/// GF(3): two bit planes, 0 = (0,0), 1 = (1,0), 2 = (0,1).
#[derive(Clone)]
struct RowG3 {
    lo: Vec<u64>,
    hi: Vec<u64>,
}

impl Row for RowG3 {
    fn pack(_field: &Field, codes: &[u64]) -> Self {
        let blocks = codes.len().div_ceil(64);
        let mut lo = vec![0u64; blocks];
        let mut hi = vec![0u64; blocks];
        for (i, &c) in codes.iter().enumerate() {
            match c {
                0 => {}
                1 => lo[i / 64] |= 1 << (i % 64),
                2 => hi[i / 64] |= 1 << (i % 64),
                _ => unreachable!("GF(3) encoding"),
            }
        }
        RowG3 { lo, hi }
    }

    fn zero(_field: &Field, n: usize) -> Self {
        let blocks = n.div_ceil(64);
        RowG3 {
            lo: vec![0u64; blocks],
            hi: vec![0u64; blocks],
        }
    }

    #[inline]
    fn add_assign(&mut self, rhs: &Self) {
        for i in 0..self.lo.len() {
            let (alo, ahi) = (self.lo[i], self.hi[i]);
            let (blo, bhi) = (rhs.lo[i], rhs.hi[i]);
            let b0 = !(blo | bhi);
            let a0 = !(alo | ahi);
            self.lo[i] = (alo & b0) | (a0 & blo) | (ahi & bhi);
            self.hi[i] = (ahi & b0) | (a0 & bhi) | (alo & blo);
        }
    }

    #[inline]
    fn sub_assign(&mut self, rhs: &Self) {
        // -x swaps the planes
        for i in 0..self.lo.len() {
            let (alo, ahi) = (self.lo[i], self.hi[i]);
            let (blo, bhi) = (rhs.hi[i], rhs.lo[i]);
            let b0 = !(blo | bhi);
            let a0 = !(alo | ahi);
            self.lo[i] = (alo & b0) | (a0 & blo) | (ahi & bhi);
            self.hi[i] = (ahi & b0) | (a0 & bhi) | (alo & blo);
        }
    }

    #[inline]
    fn add_scaled(&mut self, rhs: &Self, scalar: u64) {
        match scalar {
            1 => self.add_assign(rhs),
            2 => self.sub_assign(rhs),
            _ => unreachable!("GF(3) scalar"),
        }
    }

    #[inline]
    fn weight(&self) -> u32 {
        self.lo
            .iter()
            .zip(&self.hi)
            .map(|(l, h)| (l | h).count_ones())
            .sum()
    }
}

/// Any field: one element encoding per coordinate.
#[derive(Clone)]
struct RowGen {
    field: Field,
    v: Vec<u64>,
}

impl Row for RowGen {
    fn pack(field: &Field, codes: &[u64]) -> Self {
        RowGen {
            field: field.clone(),
            v: codes.to_vec(),
        }
    }

    fn zero(field: &Field, n: usize) -> Self {
        RowGen {
            field: field.clone(),
            v: vec![0u64; n],
        }
    }

    fn add_assign(&mut self, rhs: &Self) {
        for (a, b) in self.v.iter_mut().zip(&rhs.v) {
            *a = self.field.add_raw(*a, *b);
        }
    }

    fn sub_assign(&mut self, rhs: &Self) {
        for (a, b) in self.v.iter_mut().zip(&rhs.v) {
            *a = self.field.sub_raw(*a, *b);
        }
    }

    fn add_scaled(&mut self, rhs: &Self, scalar: u64) {
        for (a, b) in self.v.iter_mut().zip(&rhs.v) {
            *a = self.field.add_raw(*a, self.field.mul_raw(scalar, *b));
        }
    }

    fn weight(&self) -> u32 {
        self.v.iter().filter(|&&x| x != 0).count() as u32
    }
}

// ---------------------------------------------------------------------------
// Gray enumeration

/// Per-field step deltas for the Gray walk. A message digit is the
/// encoding of its coefficient, so moving a digit from d to d +/- 1 adds
/// the field difference of the two encoded elements times the row.
struct GrayDeltas {
    q: u64,
    /// up[d] = enc(d+1) - enc(d)
    up: Vec<u64>,
    /// down[d] = enc(d-1) - enc(d)
    down: Vec<u64>,
    /// neg[d] = -enc(d)
    neg: Vec<u64>,
}

impl GrayDeltas {
    fn new(field: &Field) -> Self {
        let q = field.order();
        let up = (0..q - 1).map(|d| field.sub_raw(d + 1, d)).collect();
        let down = (0..q)
            .map(|d| if d == 0 { 0 } else { field.sub_raw(d - 1, d) })
            .collect();
        let neg = (0..q).map(|d| field.neg_raw(d)).collect();
        GrayDeltas { q, up, down, neg }
    }
}

/// Walks all q^k digit vectors from the current state of `cw`, one scaled
/// row addition per step (loopless reflected mixed-radix Gray sequence).
/// The visitor returns `false` to stop early; the function reports whether
/// the walk completed.
fn gray_scan<R: Row>(
    rows: &[R],
    deltas: &GrayDeltas,
    cw: &mut R,
    visit_start: bool,
    visit: &mut impl FnMut(&R) -> bool,
) -> bool {
    if visit_start && !visit(cw) {
        return false;
    }
    let k = rows.len();
    if k == 0 {
        return true;
    }
    let mut a = vec![0u64; k];
    let mut dir = vec![true; k];
    let mut focus: Vec<usize> = (0..=k).collect();
    loop {
        let j = focus[0];
        focus[0] = 0;
        if j == k {
            return true;
        }
        if dir[j] {
            cw.add_scaled(&rows[j], deltas.up[a[j] as usize]);
            a[j] += 1;
        } else {
            cw.add_scaled(&rows[j], deltas.down[a[j] as usize]);
            a[j] -= 1;
        }
        if a[j] == 0 || a[j] == deltas.q - 1 {
            dir[j] = !dir[j];
            focus[j] = focus[j + 1];
            focus[j + 1] = j + 1;
        }
        if !visit(cw) {
            return false;
        }
    }
}

struct LocalBudget {
    remaining: u64,
    deadline: Option<Instant>,
    until_time_check: u32,
}

impl LocalBudget {
    fn new(budget: &EnumerationBudget) -> Self {
        LocalBudget {
            remaining: budget.max_codewords,
            deadline: budget.deadline(),
            until_time_check: 8192,
        }
    }

    #[inline]
    fn tick(&mut self) -> bool {
        if self.remaining == 0 {
            return false;
        }
        self.remaining -= 1;
        self.until_time_check -= 1;
        if self.until_time_check == 0 {
            self.until_time_check = 8192;
            if let Some(d) = self.deadline {
                if Instant::now() > d {
                    return false;
                }
            }
        }
        true
    }
}

// ---------------------------------------------------------------------------
// brute force

fn brute_engine<R: Row>(code: &LinearCode, opts: &MinDistOptions) -> DistanceValue {
    let field = code.field();
    let q = field.order();
    let k = code.dim();
    let n = code.len();
    let rows: Vec<R> = (0..k)
        .map(|r| R::pack(field, code.generator().row(r)))
        .collect();
    let threads = resolve_threads(opts.threads);
    let total = q.checked_pow(k as u32);
    let parallel = threads > 1 && total.is_none_or(|t| t >= 1 << 18);
    let deltas = GrayDeltas::new(field);

    if !parallel {
        let mut best = u32::MAX;
        let mut guard = LocalBudget::new(&opts.budget);
        let mut cw = R::zero(field, n);
        let completed = gray_scan(&rows, &deltas, &mut cw, false, &mut |w| {
            if !guard.tick() {
                return false;
            }
            best = best.min(w.weight());
            true
        });
        return if completed {
            DistanceValue::verified(best, DistanceMethod::BruteForce)
        } else {
            DistanceValue::lower_bound(1, DistanceMethod::BruteForce)
        };
    }

    // Partition the message space by the high digits; each block is an
    // independent Gray walk over the low digits.
    let mut t = 0usize;
    let mut blocks: u64 = 1;
    while blocks < threads as u64 * 8 && t + 1 < k && blocks * q <= 8192 {
        t += 1;
        blocks *= q;
    }
    let deadline = opts.budget.deadline();
    let max_words = opts.budget.max_codewords;
    let next = AtomicU64::new(0);
    let used = AtomicU64::new(0);
    let abort = AtomicBool::new(false);
    let low = &rows[..k - t];
    let high = &rows[k - t..];

    let best = std::thread::scope(|s| {
        let handles: Vec<_> = (0..threads)
            .map(|_| {
                s.spawn(|| {
                    let mut local_best = u32::MAX;
                    loop {
                        if abort.load(Relaxed) {
                            break;
                        }
                        let b = next.fetch_add(1, Relaxed);
                        if b >= blocks {
                            break;
                        }
                        let mut cw = R::zero(field, n);
                        let mut x = b;
                        for hr in high {
                            let d = x % q;
                            x /= q;
                            if d > 0 {
                                cw.add_scaled(hr, d);
                            }
                        }
                        let mut pending: u64 = 0;
                        let completed = gray_scan(low, &deltas, &mut cw, b != 0, &mut |w| {
                            pending += 1;
                            if pending & 0xFFF == 0 {
                                let total_used = used.fetch_add(pending, Relaxed) + pending;
                                pending = 0;
                                let timed_out = deadline.is_some_and(|d| Instant::now() > d);
                                if total_used > max_words || timed_out || abort.load(Relaxed) {
                                    abort.store(true, Relaxed);
                                    return false;
                                }
                            }
                            local_best = local_best.min(w.weight());
                            true
                        });
                        used.fetch_add(pending, Relaxed);
                        if !completed {
                            break;
                        }
                    }
                    local_best
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("enumeration worker panicked"))
            .fold(u32::MAX, u32::min)
    });

    if abort.load(Relaxed) || used.load(Relaxed) > max_words {
        DistanceValue::lower_bound(1, DistanceMethod::BruteForce)
    } else {
        DistanceValue::verified(best, DistanceMethod::BruteForce)
    }
}

// ---------------------------------------------------------------------------
// Brouwer-Zimmermann

struct InfoSetForm<R> {
    rows: Vec<R>,
    /// k minus the rank achieved on this window of fresh columns.
    deficiency: u32,
}

fn bz_engine<R: Row>(code: &LinearCode, opts: &MinDistOptions) -> DistanceValue {
    let field = code.field();
    let k = code.dim();
    let n = code.len();
    let deltas = GrayDeltas::new(field);
    let forms = systematic_forms(code);
    let packed: Vec<InfoSetForm<R>> = forms
        .iter()
        .map(|(m, pivots)| InfoSetForm {
            rows: (0..k).map(|r| R::pack(field, m.row(r))).collect(),
            deficiency: (k - pivots.len()) as u32,
        })
        .collect();

    let mut guard = LocalBudget::new(&opts.budget);
    let mut best = u32::MAX;
    let mut lb: u32 = 1;
    for w in 1..=k {
        for form in &packed {
            let mut cw = R::zero(field, n);
            let completed = enum_weight(&form.rows, &deltas, w, &mut cw, &mut |word| {
                if !guard.tick() {
                    return false;
                }
                best = best.min(word.weight());
                true
            });
            if !completed {
                return DistanceValue::lower_bound(lb, DistanceMethod::BrouwerZimmermann);
            }
        }
        let after_round: u32 = packed
            .iter()
            .map(|f| (w as u32 + 1).saturating_sub(f.deficiency))
            .sum();
        lb = lb.max(after_round);
        if lb >= best {
            return DistanceValue::verified(best, DistanceMethod::BrouwerZimmermann);
        }
    }
    // All message weights enumerated: this was a full enumeration.
    DistanceValue::verified(best, DistanceMethod::BrouwerZimmermann)
}

/// Greedy maximal family of systematic forms over disjoint column sets:
/// repeatedly row-reduce on the lexicographically first columns not yet
/// used as pivots, until no fresh pivot can be found.
fn systematic_forms(code: &LinearCode) -> Vec<(crate::matrix::Matrix, Vec<usize>)> {
    let n = code.len();
    let mut used = vec![false; n];
    let mut forms = Vec::new();
    loop {
        let mut m = code.generator().clone();
        let pivots = rref_on_allowed(&mut m, &used);
        if pivots.is_empty() {
            break;
        }
        for &p in &pivots {
            used[p] = true;
        }
        forms.push((m, pivots));
    }
    forms
}

fn rref_on_allowed(m: &mut crate::matrix::Matrix, used: &[bool]) -> Vec<usize> {
    let f = m.field().clone();
    let rows = m.rows();
    let cols = m.cols();
    let mut pivots = Vec::new();
    let mut r = 0;
    for (c, used_c) in used.iter().enumerate().take(cols) {
        if *used_c || r == rows {
            continue;
        }
        let Some(pr) = (r..rows).find(|&i| m.get(i, c) != 0) else {
            continue;
        };
        // swap rows pr and r
        if pr != r {
            for cc in 0..cols {
                let a = m.get(r, cc);
                let b = m.get(pr, cc);
                m.set(r, cc, b);
                m.set(pr, cc, a);
            }
        }
        let inv = f.inv_raw(m.get(r, c));
        if inv != 1 {
            for cc in 0..cols {
                let v = f.mul_raw(m.get(r, cc), inv);
                m.set(r, cc, v);
            }
        }
        for rr in 0..rows {
            if rr == r || m.get(rr, c) == 0 {
                continue;
            }
            let factor = m.get(rr, c);
            for cc in 0..cols {
                let v = f.sub_raw(m.get(rr, cc), f.mul_raw(factor, m.get(r, cc)));
                m.set(rr, cc, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Enumerates all codewords whose message has Hamming weight exactly `w`,
/// one scalar representative per projective class (the lowest-index
/// non-zero coefficient is fixed to 1).
fn enum_weight<R: Row>(
    rows: &[R],
    deltas: &GrayDeltas,
    w: usize,
    cw: &mut R,
    visit: &mut impl FnMut(&R) -> bool,
) -> bool {
    if w > rows.len() {
        return true;
    }
    enum_weight_rec(rows, deltas, w, 0, true, cw, visit)
}

fn enum_weight_rec<R: Row>(
    rows: &[R],
    deltas: &GrayDeltas,
    remaining: usize,
    start: usize,
    first: bool,
    cw: &mut R,
    visit: &mut impl FnMut(&R) -> bool,
) -> bool {
    let k = rows.len();
    for i in start..=(k - remaining) {
        // step the coefficient of row i through the encodings 1..=reach
        let reach = if first { 1 } else { deltas.q - 1 };
        let mut coeff = 0u64;
        let mut ok = true;
        while coeff < reach {
            cw.add_scaled(&rows[i], deltas.up[coeff as usize]);
            coeff += 1;
            if remaining == 1 {
                if !visit(cw) {
                    ok = false;
                    break;
                }
            } else if !enum_weight_rec(rows, deltas, remaining - 1, i + 1, false, cw, visit) {
                ok = false;
                break;
            }
        }
        if coeff > 0 {
            cw.add_scaled(&rows[i], deltas.neg[coeff as usize]);
        }
        if !ok {
            return false;
        }
    }
    true
}

// ---------------------------------------------------------------------------
// relative (coset) minimum weight

fn relative_engine<R: Row>(
    code: &LinearCode,
    sub: &LinearCode,
    opts: &MinDistOptions,
) -> DistanceValue {
    let field = code.field();
    let n = code.len();
    let deltas = GrayDeltas::new(field);
    let reps = coset_representatives(code, sub);
    debug_assert_eq!(reps.len(), code.dim() - sub.dim());
    let rep_rows: Vec<R> = reps.iter().map(|r| R::pack(field, r)).collect();
    let sub_rows: Vec<R> = (0..sub.dim())
        .map(|r| R::pack(field, sub.generator().row(r)))
        .collect();

    let mut guard = LocalBudget::new(&opts.budget);
    let mut best = u32::MAX;
    let mut offset = R::zero(field, n);
    // Outer walk ranges over the non-trivial cosets of `sub` in `code`;
    // the inner walk covers one full coset, so every visited word is
    // outside `sub` by construction.
    let completed = gray_scan(&rep_rows, &deltas, &mut offset, false, &mut |off| {
        let mut cw = off.clone();
        gray_scan(&sub_rows, &deltas, &mut cw, true, &mut |w| {
            if !guard.tick() {
                return false;
            }
            best = best.min(w.weight());
            true
        })
    });
    if completed {
        DistanceValue::verified(best, DistanceMethod::BruteForce)
    } else {
        DistanceValue::lower_bound(1, DistanceMethod::BruteForce)
    }
}

/// Generator rows of `code` reduced to a basis of a complement of `sub`,
/// each normalized with leading coefficient 1.
fn coset_representatives(code: &LinearCode, sub: &LinearCode) -> Vec<Vec<u64>> {
    let f = code.field();
    let mut reps: Vec<(usize, Vec<u64>)> = Vec::new();
    for r in 0..code.dim() {
        let mut w = code.generator().row(r).to_vec();
        // reduce against the subcode
        for (t, &p) in sub.pivots().iter().enumerate() {
            let coef = w[p];
            if coef == 0 {
                continue;
            }
            for (entry, &sv) in w.iter_mut().zip(sub.generator().row(t)) {
                *entry = f.sub_raw(*entry, f.mul_raw(coef, sv));
            }
        }
        // reduce against representatives collected so far
        for (p, rep) in &reps {
            let coef = w[*p];
            if coef == 0 {
                continue;
            }
            for (entry, &rv) in w.iter_mut().zip(rep) {
                *entry = f.sub_raw(*entry, f.mul_raw(coef, rv));
            }
        }
        if let Some(p) = w.iter().position(|&x| x != 0) {
            let inv = f.inv_raw(w[p]);
            if inv != 1 {
                for c in w.iter_mut() {
                    *c = f.mul_raw(*c, inv);
                }
            }
            reps.push((p, w));
        }
    }
    reps.into_iter().map(|(_, w)| w).collect()
}

fn resolve_threads(requested: usize) -> usize {
    if requested > 0 {
        requested
    } else {
        std::thread::available_parallelism()
            .map(|n| n.get())
            .unwrap_or(1)
    }
}
