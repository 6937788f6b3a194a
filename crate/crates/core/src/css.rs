//! The CSS construction and its length-reduction calculus.
//!
//! A [`CssCode`] is a validated pair of classical codes (C1, C2) of equal
//! length n over the same field with dual(C2) contained in C1. It encodes
//! k = k1 + k2 - n logical qudits; its two error-type distances are
//!
//! * d1 = the minimum weight of C1 \ dual(C2),
//! * d2 = the minimum weight of C2 \ dual(C1),
//!
//! which for k = 0 degenerate to the plain minimum weights of C1 and C2.
//!
//! Three reduction rules derive new codes while tracking sound distance
//! bounds:
//!
//! * [`CssCode::reduce_one`]: puncture C1 and shorten C2 at one coordinate.
//!   Length and d1 drop by one, k and d2 are preserved.
//! * [`CssCode::reduce_two`]: the same applied to each side in turn, so the
//!   length drops by two while each distance drops by only one.
//! * [`CssCode::pair_puncture`]: puncture both codes at one coordinate,
//!   trading one unit of length and of each distance for one extra logical
//!   qudit. The distance claim rests on the full minimum weights of the
//!   constituent codes (the purity bounds m1, m2), which coincide with
//!   d1, d2 on k = 0 codes and are propagated through every rule.
//!
//! Every derivation is recorded in a [`PropagationTrace`]; replaying a
//! trace from its seed reproduces the derived code exactly.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::code::{CodeError, LinearCode};
use crate::gf::Field;
use crate::mindist::{
    min_weight, relative_min_weight, DistanceError, DistanceKind, DistanceMethod, DistanceValue,
    Engine, MinDistOptions,
};
use crate::qr::{qr_family, InvolutionPlan, QrError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CssError {
    #[error("constituent codes live over different fields")]
    FieldMismatch,
    #[error("constituent codes have different lengths: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("the dual of the second code is not contained in the first")]
    NestingViolation,
    #[error("distance {which} is unknown; compute or declare it first")]
    DistanceUnknown { which: &'static str },
    #[error("rule requires {which} > 1, but its value is {value}")]
    DistanceHypothesis { which: &'static str, value: u32 },
    #[error("pair puncturing needs full-code minimum-weight bounds; they are known for k = 0 codes with computed distances, or via compute_purity")]
    PurityUnknown,
    #[error("coordinate {i} is identically zero in constituent code {which}")]
    ZeroCoordinate { which: u8, i: usize },
    #[error("constituent code {which} has a weight-1 word at coordinate {i}, so the reduction would change the dimension")]
    WeightOneWord { which: u8, i: usize },
    #[error("the reduced pair has logical dimension {got}, expected {expected}")]
    DimensionShift { expected: usize, got: usize },
    #[error("no coordinate satisfies the rule's hypotheses")]
    NoValidCoordinate,
    #[error("length {0} is too short for this rule")]
    TooShort(u32),
    #[error(
        "a verified distance {verified} fell below the propagated bound {bound}: soundness failure"
    )]
    BoundViolation { verified: u32, bound: u32 },
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Distance(#[from] DistanceError),
    #[error(transparent)]
    Qr(#[from] QrError),
}

// ---------------------------------------------------------------------------
// parameters

/// The parameter tuple [[n, k, {d1, d2}]]_q of a CSS code, with the
/// provenance of each distance attached.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuantumParams {
    pub q: u64,
    pub n: u32,
    pub k: u32,
    pub d1: DistanceValue,
    pub d2: DistanceValue,
}

impl QuantumParams {
    /// Parameters taken on trust from an external source.
    pub fn declared(q: u64, n: u32, k: u32, d: u32) -> Self {
        let dv = DistanceValue::lower_bound(d, DistanceMethod::Declared);
        QuantumParams {
            q,
            n,
            k,
            d1: dv,
            d2: dv,
        }
    }

    /// The symmetric distance min(d1, d2).
    pub fn d(&self) -> u32 {
        self.d1.value.min(self.d2.value)
    }

    pub fn swapped(&self) -> Self {
        QuantumParams {
            d1: self.d2,
            d2: self.d1,
            ..*self
        }
    }

    /// Parameter arithmetic of the single-coordinate reduction:
    /// [[n, k, {d1, d2}]] -> [[n-1, k, {d1-1, d2}]] for d1 > 1.
    pub fn reduce_one(&self) -> Result<Self, CssError> {
        if self.n < 2 {
            return Err(CssError::TooShort(self.n));
        }
        check_hypothesis("d1", self.d1)?;
        Ok(QuantumParams {
            n: self.n - 1,
            d1: derived(self.d1.value - 1),
            d2: derived(self.d2.value),
            ..*self
        })
    }

    /// [[n, k, {d1, d2}]] -> [[n-2, k, {d1-1, d2-1}]] for d1, d2 > 1.
    pub fn reduce_two(&self) -> Result<Self, CssError> {
        if self.n < 3 {
            return Err(CssError::TooShort(self.n));
        }
        check_hypothesis("d1", self.d1)?;
        check_hypothesis("d2", self.d2)?;
        Ok(QuantumParams {
            n: self.n - 2,
            d1: derived(self.d1.value - 1),
            d2: derived(self.d2.value - 1),
            ..*self
        })
    }

    /// [[n, k, {d1, d2}]] -> [[n-1, k+1, {d1-1, d2-1}]] for d1, d2 > 1.
    ///
    /// Sound along derivation chains rooted at a k = 0 code, where the
    /// relative distances equal the constituent-code minimum weights and
    /// both drop by at most one per puncture.
    pub fn pair_puncture(&self) -> Result<Self, CssError> {
        if self.n < 2 {
            return Err(CssError::TooShort(self.n));
        }
        check_hypothesis("d1", self.d1)?;
        check_hypothesis("d2", self.d2)?;
        Ok(QuantumParams {
            n: self.n - 1,
            k: self.k + 1,
            d1: derived(self.d1.value - 1),
            d2: derived(self.d2.value - 1),
            ..*self
        })
    }
}

fn derived(value: u32) -> DistanceValue {
    DistanceValue::lower_bound(value, DistanceMethod::TheoremDerived)
}

fn check_hypothesis(which: &'static str, d: DistanceValue) -> Result<(), CssError> {
    if d.value <= 1 {
        return Err(CssError::DistanceHypothesis {
            which,
            value: d.value,
        });
    }
    Ok(())
}

impl std::fmt::Display for QuantumParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.d1.value == self.d2.value {
            write!(f, "[[{},{},{}]]_{}", self.n, self.k, self.d1.value, self.q)
        } else {
            write!(
                f,
                "[[{},{},{{{},{}}}]]_{}",
                self.n, self.k, self.d1.value, self.d2.value, self.q
            )
        }
    }
}

/// Slack of the quantum Singleton bounds; negative slack flags an
/// inconsistent parameter claim.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingletonSlack {
    /// n + 2 - (k + d1 + d2)
    pub asym: i64,
    /// n + 2 - (k + 2 min(d1, d2))
    pub sym: i64,
}

pub fn singleton_check(p: &QuantumParams) -> SingletonSlack {
    let n = p.n as i64;
    let k = p.k as i64;
    SingletonSlack {
        asym: n + 2 - (k + p.d1.value as i64 + p.d2.value as i64),
        sym: n + 2 - (k + 2 * p.d() as i64),
    }
}

// ---------------------------------------------------------------------------
// traces

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RuleKind {
    Seed,
    ReduceOne,
    ReduceOneSwapped,
    ReduceTwo,
    PairPuncture,
    Swap,
}

/// Parameter snapshot kept on each trace step.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CssSnapshot {
    pub n: u32,
    pub k1: u32,
    pub k2: u32,
    pub k: u32,
    pub d1: Option<DistanceValue>,
    pub d2: Option<DistanceValue>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceStep {
    pub rule: RuleKind,
    /// 1-based coordinates, in the coordinate system current at the time
    /// the rule was applied.
    pub coords: Vec<u32>,
    pub before: CssSnapshot,
    pub after: CssSnapshot,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PropagationTrace {
    /// Human-readable description of the seed construction.
    pub seed: String,
    pub steps: Vec<TraceStep>,
}

impl std::fmt::Display for PropagationTrace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.seed)?;
        for step in &self.steps {
            let name = match step.rule {
                RuleKind::Seed => continue,
                RuleKind::ReduceOne => "reduce1",
                RuleKind::ReduceOneSwapped => "reduce1'",
                RuleKind::ReduceTwo => "reduce2",
                RuleKind::PairPuncture => "pair",
                RuleKind::Swap => "swap",
            };
            let coords: Vec<String> = step.coords.iter().map(|c| c.to_string()).collect();
            if coords.is_empty() {
                write!(f, " | {name}")?;
            } else {
                write!(f, " | {name}@({})", coords.join(","))?;
            }
        }
        Ok(())
    }
}

/// Re-applies recorded steps to a seed code. The result of replaying a
/// code's own trace onto its seed is that code again, canonically equal.
pub fn replay(seed: &CssCode, steps: &[TraceStep]) -> Result<CssCode, CssError> {
    let mut cur = seed.clone();
    for step in steps {
        cur = match step.rule {
            RuleKind::Seed => continue,
            RuleKind::ReduceOne => cur.reduce_one(step.coords[0] as usize)?,
            RuleKind::ReduceOneSwapped => cur.reduce_one_swapped(step.coords[0] as usize)?,
            RuleKind::ReduceTwo => {
                cur.reduce_two(step.coords[0] as usize, step.coords[1] as usize)?
            }
            RuleKind::PairPuncture => cur.pair_puncture(step.coords[0] as usize)?,
            RuleKind::Swap => cur.swap_roles(),
        };
    }
    Ok(cur)
}

// ---------------------------------------------------------------------------
// the CSS code itself

/// A validated CSS pair with cached parameters, distance knowledge, and
/// its derivation trace.
#[derive(Clone, Debug)]
pub struct CssCode {
    c1: LinearCode,
    c2: LinearCode,
    k: usize,
    d1: Option<DistanceValue>,
    d2: Option<DistanceValue>,
    /// Lower bounds on the full minimum weights of c1 and c2.
    m1: Option<DistanceValue>,
    m2: Option<DistanceValue>,
    trace: PropagationTrace,
}

impl CssCode {
    /// Validates the nesting dual(c2) <= c1 and builds the code shell with
    /// unknown distances.
    pub fn new(c1: LinearCode, c2: LinearCode) -> Result<Self, CssError> {
        Self::with_seed_label(c1, c2, None)
    }

    fn with_seed_label(
        c1: LinearCode,
        c2: LinearCode,
        label: Option<String>,
    ) -> Result<Self, CssError> {
        let k = nested_k(&c1, &c2)?;
        let seed = label.unwrap_or_else(|| {
            format!(
                "css(n={}, k1={}, k2={}, q={})",
                c1.len(),
                c1.dim(),
                c2.dim(),
                c1.field().order()
            )
        });
        let mut code = CssCode {
            c1,
            c2,
            k,
            d1: None,
            d2: None,
            m1: None,
            m2: None,
            trace: PropagationTrace {
                seed,
                steps: Vec::new(),
            },
        };
        let snap = code.snapshot();
        code.trace.steps.push(TraceStep {
            rule: RuleKind::Seed,
            coords: Vec::new(),
            before: snap.clone(),
            after: snap,
        });
        Ok(code)
    }

    pub fn c1(&self) -> &LinearCode {
        &self.c1
    }

    pub fn c2(&self) -> &LinearCode {
        &self.c2
    }

    pub fn field(&self) -> &Field {
        self.c1.field()
    }

    pub fn n(&self) -> usize {
        self.c1.len()
    }

    /// Logical dimension k = k1 + k2 - n.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn d1(&self) -> Option<DistanceValue> {
        self.d1
    }

    pub fn d2(&self) -> Option<DistanceValue> {
        self.d2
    }

    /// Lower bound on the full minimum weight of c1, when known.
    pub fn m1(&self) -> Option<DistanceValue> {
        self.m1
    }

    pub fn m2(&self) -> Option<DistanceValue> {
        self.m2
    }

    pub fn trace(&self) -> &PropagationTrace {
        &self.trace
    }

    /// Structural equality of the constituent codes, ignoring distance
    /// knowledge and provenance.
    pub fn same_codes(&self, other: &CssCode) -> bool {
        self.c1 == other.c1 && self.c2 == other.c2
    }

    pub fn params(&self) -> Option<QuantumParams> {
        Some(QuantumParams {
            q: self.field().order(),
            n: self.n() as u32,
            k: self.k as u32,
            d1: self.d1?,
            d2: self.d2?,
        })
    }

    fn snapshot(&self) -> CssSnapshot {
        CssSnapshot {
            n: self.n() as u32,
            k1: self.c1.dim() as u32,
            k2: self.c2.dim() as u32,
            k: self.k as u32,
            d1: self.d1,
            d2: self.d2,
        }
    }

    /// Attaches externally supplied distances as declared lower bounds.
    /// On a k = 0 code they double as the constituent minimum weights.
    pub fn with_declared_distances(mut self, d1: u32, d2: u32) -> Self {
        let v1 = DistanceValue::lower_bound(d1, DistanceMethod::Declared);
        let v2 = DistanceValue::lower_bound(d2, DistanceMethod::Declared);
        self.d1 = Some(v1);
        self.d2 = Some(v2);
        if self.k == 0 {
            self.m1 = Some(v1);
            self.m2 = Some(v2);
        }
        if let Some(step) = self.trace.steps.first_mut() {
            step.after.d1 = self.d1;
            step.after.d2 = self.d2;
        }
        self
    }

    /// Attaches externally supplied bounds on the constituent-code minimum
    /// weights. Only needed for k > 0 codes whose purity bounds are known
    /// from the outside; k = 0 codes get them from their distances.
    pub fn with_declared_purity(mut self, m1: u32, m2: u32) -> Self {
        self.m1 = Some(DistanceValue::lower_bound(m1, DistanceMethod::Declared));
        self.m2 = Some(DistanceValue::lower_bound(m2, DistanceMethod::Declared));
        self
    }

    /// Computes both distances. For k = 0 these are the constituent-code
    /// minimum weights through the chosen engine; for k > 0 they are the
    /// relative (coset) minimum weights, always by exhaustive enumeration.
    /// A budget abort degrades the affected value to a trivial lower bound
    /// rather than failing.
    pub fn compute_distances(
        &self,
        engine: Engine,
        opts: &MinDistOptions,
    ) -> Result<CssCode, CssError> {
        let mut out = self.clone();
        if self.k == 0 {
            let d1 = min_weight(&self.c1, engine, opts)?;
            let d2 = if self.c2 == self.c1 {
                d1
            } else {
                min_weight(&self.c2, engine, opts)?
            };
            out.d1 = Some(d1);
            out.d2 = Some(d2);
            out.m1 = Some(d1);
            out.m2 = Some(d2);
        } else {
            let d1 = relative_min_weight(&self.c1, &self.c2.dual(), opts)?;
            let d2 = if self.c2 == self.c1 {
                d1
            } else {
                relative_min_weight(&self.c2, &self.c1.dual(), opts)?
            };
            out.d1 = Some(d1);
            out.d2 = Some(d2);
        }
        Ok(out)
    }

    /// Computes the full minimum weights of both constituent codes (the
    /// purity bounds used by [`CssCode::pair_puncture`]).
    pub fn compute_purity(
        &self,
        engine: Engine,
        opts: &MinDistOptions,
    ) -> Result<CssCode, CssError> {
        let mut out = self.clone();
        let m1 = min_weight(&self.c1, engine, opts)?;
        let m2 = if self.c2 == self.c1 {
            m1
        } else {
            min_weight(&self.c2, engine, opts)?
        };
        out.m1 = Some(m1);
        out.m2 = Some(m2);
        Ok(out)
    }

    pub fn swap_roles(&self) -> CssCode {
        let mut out = self.clone();
        std::mem::swap(&mut out.c1, &mut out.c2);
        std::mem::swap(&mut out.d1, &mut out.d2);
        std::mem::swap(&mut out.m1, &mut out.m2);
        let before = self.snapshot();
        let after = out.snapshot();
        out.trace.steps.push(TraceStep {
            rule: RuleKind::Swap,
            coords: Vec::new(),
            before,
            after,
        });
        out
    }

    /// Punctures c1 and shortens c2 at coordinate `i` (1-based). Requires
    /// d1 > 1. The result keeps k and d2 and loses at most one from d1.
    pub fn reduce_one(&self, i: usize) -> Result<CssCode, CssError> {
        let d1 = self.d1.ok_or(CssError::DistanceUnknown { which: "d1" })?;
        check_hypothesis("d1", d1)?;
        let nc1 = self.c1.puncture(i)?;
        let nc2 = self.c2.shorten(i)?;
        let nk = nested_k(&nc1, &nc2)?;
        if nk != self.k {
            return Err(CssError::DimensionShift {
                expected: self.k,
                got: nk,
            });
        }
        let mut out = self.clone();
        out.c1 = nc1;
        out.c2 = nc2;
        out.k = nk;
        out.d1 = Some(derived(d1.value - 1));
        out.d2 = self.d2.map(|d| derived(d.value));
        out.m1 = self.m1.map(|m| derived((m.value - 1).max(1)));
        out.m2 = self.m2.map(|m| derived(m.value));
        let before = self.snapshot();
        let after = out.snapshot();
        out.trace.steps.push(TraceStep {
            rule: RuleKind::ReduceOne,
            coords: vec![i as u32],
            before,
            after,
        });
        Ok(out)
    }

    /// The mirrored reduction: shortens c1 and punctures c2, requiring
    /// d2 > 1 and losing at most one from d2.
    pub fn reduce_one_swapped(&self, i: usize) -> Result<CssCode, CssError> {
        let d2 = self.d2.ok_or(CssError::DistanceUnknown { which: "d2" })?;
        check_hypothesis("d2", d2)?;
        let mut out = self.swap_roles().reduce_one(i)?.swap_roles();
        let n = out.trace.steps.len();
        out.trace.steps.truncate(n - 3);
        out.trace.steps.push(TraceStep {
            rule: RuleKind::ReduceOneSwapped,
            coords: vec![i as u32],
            before: self.snapshot(),
            after: out.snapshot(),
        });
        Ok(out)
    }

    /// Two single-coordinate reductions with the roles switched in between:
    /// [[n, k, {d1, d2}]] -> [[n-2, k, {d1-1, d2-1}]]. Coordinate `j` is
    /// interpreted in the length-(n-1) intermediate code.
    pub fn reduce_two(&self, i: usize, j: usize) -> Result<CssCode, CssError> {
        let d1 = self.d1.ok_or(CssError::DistanceUnknown { which: "d1" })?;
        let d2 = self.d2.ok_or(CssError::DistanceUnknown { which: "d2" })?;
        check_hypothesis("d1", d1)?;
        check_hypothesis("d2", d2)?;
        let mut out = self.reduce_one(i)?.reduce_one_swapped(j)?;
        let n = out.trace.steps.len();
        out.trace.steps.truncate(n - 2);
        out.trace.steps.push(TraceStep {
            rule: RuleKind::ReduceTwo,
            coords: vec![i as u32, j as u32],
            before: self.snapshot(),
            after: out.snapshot(),
        });
        Ok(out)
    }

    /// Punctures both constituent codes at coordinate `i`, raising the
    /// logical dimension by one: [[n, k]] -> [[n-1, k+1]]. Nesting survives
    /// because the shortened dual is contained in the punctured dual.
    ///
    /// Distance accounting uses the purity bounds: puncturing a classical
    /// code lowers its minimum weight by at most one, and a relative
    /// distance is never smaller than the enclosing code's minimum weight,
    /// so the new pair is [[n-1, k+1, {m1-1, m2-1}]]. Both purity bounds
    /// must be known and exceed 1.
    pub fn pair_puncture(&self, i: usize) -> Result<CssCode, CssError> {
        let d1 = self.d1.ok_or(CssError::DistanceUnknown { which: "d1" })?;
        let d2 = self.d2.ok_or(CssError::DistanceUnknown { which: "d2" })?;
        check_hypothesis("d1", d1)?;
        check_hypothesis("d2", d2)?;
        let (m1, m2) = match (self.m1, self.m2) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(CssError::PurityUnknown),
        };
        check_hypothesis("m1", m1)?;
        check_hypothesis("m2", m2)?;
        if self.c1.is_zero_coordinate(i)? {
            return Err(CssError::ZeroCoordinate { which: 1, i });
        }
        if self.c2.is_zero_coordinate(i)? {
            return Err(CssError::ZeroCoordinate { which: 2, i });
        }
        if self.c1.has_weight_one_at(i)? {
            return Err(CssError::WeightOneWord { which: 1, i });
        }
        if self.c2.has_weight_one_at(i)? {
            return Err(CssError::WeightOneWord { which: 2, i });
        }
        let nc1 = self.c1.puncture(i)?;
        let nc2 = self.c2.puncture(i)?;
        let nk = nested_k(&nc1, &nc2)?;
        if nk != self.k + 1 {
            return Err(CssError::DimensionShift {
                expected: self.k + 1,
                got: nk,
            });
        }
        let mut out = self.clone();
        out.c1 = nc1;
        out.c2 = nc2;
        out.k = nk;
        out.d1 = Some(derived(m1.value - 1));
        out.d2 = Some(derived(m2.value - 1));
        out.m1 = Some(derived(m1.value - 1));
        out.m2 = Some(derived(m2.value - 1));
        let before = self.snapshot();
        let after = out.snapshot();
        out.trace.steps.push(TraceStep {
            rule: RuleKind::PairPuncture,
            coords: vec![i as u32],
            before,
            after,
        });
        Ok(out)
    }
}

fn nested_k(c1: &LinearCode, c2: &LinearCode) -> Result<usize, CssError> {
    if c1.field() != c2.field() {
        return Err(CssError::FieldMismatch);
    }
    if c1.len() != c2.len() {
        return Err(CssError::LengthMismatch(c1.len(), c2.len()));
    }
    if !c2.dual().is_subcode_of(c1)? {
        return Err(CssError::NestingViolation);
    }
    let (k1, k2, n) = (c1.dim(), c2.dim(), c1.len());
    debug_assert!(k1 + k2 >= n);
    Ok(k1 + k2 - n)
}

/// The quantum code built from the quadratic-residue family of length n:
/// `extended = false` yields [[n, 1]] from (Q, Q) for n = 3 mod 4 or (Q, N)
/// for n = 1 mod 4; `extended = true` yields [[n+1, 0]] from the extended
/// code and its dual. Distances are left for the caller to compute or
/// declare.
pub fn quantum_qr(n: u64, field: &Field, extended: bool) -> Result<CssCode, CssError> {
    let fam = qr_family(n, field)?;
    let label = format!(
        "qr(n={}, q={}{})",
        n,
        field.order(),
        if extended { ", extended" } else { "" }
    );
    let (c1, c2) = if extended {
        let c2 = if n % 4 == 3 {
            fam.q_ext.clone()
        } else {
            fam.n_ext.clone()
        };
        (fam.q_ext.clone(), c2)
    } else {
        let c2 = if n % 4 == 3 {
            fam.q.clone()
        } else {
            fam.n.clone()
        };
        (fam.q.clone(), c2)
    };
    let code = CssCode::with_seed_label(c1, c2, Some(label))?;
    let expected = if extended { 0 } else { 1 };
    if code.k() != expected {
        return Err(CssError::DimensionShift {
            expected,
            got: code.k(),
        });
    }
    Ok(code)
}

// ---------------------------------------------------------------------------
// chains

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChainRule {
    ReduceOne,
    ReduceTwo,
    PairPuncture,
}

#[derive(Clone)]
pub struct VerifyConfig {
    pub engine: Engine,
    pub opts: MinDistOptions,
}

/// Configuration for [`derive_chain`]. Coordinates come from the
/// involution plan when one is supplied (keeping the two constituent codes
/// of each reduced pair equivalent), and default to the lexicographically
/// first valid coordinate otherwise.
#[derive(Clone, Default)]
pub struct ChainConfig {
    pub rule: Option<ChainRule>,
    pub steps: usize,
    pub plan: Option<InvolutionPlan>,
    pub verify: Option<VerifyConfig>,
}

#[derive(Clone, Debug)]
pub struct ChainEntry {
    pub code: CssCode,
    /// Whether both distances of this entry were verified exactly.
    pub verified: bool,
}

impl ChainEntry {
    pub fn params(&self) -> QuantumParams {
        self.code.params().expect("chain entries carry distances")
    }
}

#[derive(Clone, Debug)]
pub struct ChainOutcome {
    pub entries: Vec<ChainEntry>,
    /// Reason the chain stopped early, if it did.
    pub truncated: Option<String>,
    pub notes: Vec<String>,
}

/// Applies a reduction rule repeatedly, emitting one entry per step.
/// Hypothesis failures truncate the chain instead of erroring. When a
/// verification budget is supplied, each entry's distances are recomputed;
/// completed enumerations replace the propagated bounds (which they must
/// dominate), aborted ones leave the bounds in place. Verified values feed
/// a monotonicity pass: the distance of the codes along a reduction chain
/// never increases, so a later verified value lifts earlier lower bounds.
pub fn derive_chain(seed: &CssCode, cfg: &ChainConfig) -> Result<ChainOutcome, CssError> {
    let rule = cfg.rule.unwrap_or(ChainRule::ReduceTwo);
    let mut current = seed.clone();
    let mut remaining: Vec<usize> = (1..=seed.n()).collect();
    let mut entries: Vec<ChainEntry> = Vec::new();
    let mut truncated = None;
    let mut notes = Vec::new();

    for step in 0..cfg.steps {
        let applied = apply_step(&current, rule, step, cfg.plan.as_ref(), &mut remaining);
        let next = match applied {
            Ok(next) => next,
            Err(e) => {
                truncated = Some(format!("step {}: {}", step + 1, e));
                break;
            }
        };
        current = next;
        let mut verified = false;
        if let Some(vc) = &cfg.verify {
            let computed = current.compute_distances(vc.engine, &vc.opts)?;
            let (d1, v1) = adopt(current.d1, computed.d1().unwrap(), &mut notes)?;
            let (d2, v2) = adopt(current.d2, computed.d2().unwrap(), &mut notes)?;
            current.d1 = Some(d1);
            current.d2 = Some(d2);
            if current.k == 0 {
                current.m1 = Some(d1);
                current.m2 = Some(d2);
            }
            verified = v1 && v2;
        }
        entries.push(ChainEntry {
            code: current.clone(),
            verified,
        });
    }

    // Monotonicity: the symmetric distance never increases along the chain,
    // so each entry's distance is at least any later entry's bound.
    let mut floor = 0u32;
    for entry in entries.iter_mut().rev() {
        raise_to_floor(&mut entry.code, floor, &mut notes);
        let p = entry.params();
        floor = floor.max(p.d());
    }

    Ok(ChainOutcome {
        entries,
        truncated,
        notes,
    })
}

fn apply_step(
    current: &CssCode,
    rule: ChainRule,
    step: usize,
    plan: Option<&InvolutionPlan>,
    remaining: &mut Vec<usize>,
) -> Result<CssCode, CssError> {
    let take = |remaining: &mut Vec<usize>, original: usize| -> Result<usize, CssError> {
        let idx = remaining
            .iter()
            .position(|&o| o == original)
            .ok_or(CssError::NoValidCoordinate)?;
        remaining.remove(idx);
        Ok(idx + 1)
    };
    match rule {
        ChainRule::ReduceOne => {
            let original = match plan {
                Some(p) => p
                    .pairs
                    .get(step)
                    .map(|pr| pr.0)
                    .ok_or(CssError::NoValidCoordinate)?,
                None => *remaining.first().ok_or(CssError::NoValidCoordinate)?,
            };
            let i = take(remaining, original)?;
            current.reduce_one(i)
        }
        ChainRule::ReduceTwo => {
            let (oa, ob) = match plan {
                Some(p) => *p.pairs.get(step).ok_or(CssError::NoValidCoordinate)?,
                None => {
                    if remaining.len() < 2 {
                        return Err(CssError::NoValidCoordinate);
                    }
                    (remaining[0], remaining[1])
                }
            };
            let i = take(remaining, oa)?;
            let j = take(remaining, ob)?;
            current.reduce_two(i, j)
        }
        ChainRule::PairPuncture => {
            // lexicographically first coordinate passing the hypotheses
            let mut chosen = None;
            for (idx, &original) in remaining.iter().enumerate() {
                let i = idx + 1;
                let ok = !current.c1().is_zero_coordinate(i)?
                    && !current.c2().is_zero_coordinate(i)?
                    && !current.c1().has_weight_one_at(i)?
                    && !current.c2().has_weight_one_at(i)?;
                if ok {
                    chosen = Some(original);
                    break;
                }
            }
            let original = chosen.ok_or(CssError::NoValidCoordinate)?;
            let i = take(remaining, original)?;
            current.pair_puncture(i)
        }
    }
}

/// Merges a freshly computed distance into a propagated bound: a verified
/// result must dominate the bound and replaces it; an aborted enumeration
/// keeps the stronger bound.
fn adopt(
    bound: Option<DistanceValue>,
    computed: DistanceValue,
    notes: &mut Vec<String>,
) -> Result<(DistanceValue, bool), CssError> {
    let Some(bound) = bound else {
        return Ok((computed, computed.is_verified()));
    };
    if computed.is_verified() {
        if computed.value < bound.value {
            return Err(CssError::BoundViolation {
                verified: computed.value,
                bound: bound.value,
            });
        }
        if computed.value > bound.value {
            notes.push(format!(
                "verified distance {} exceeds the propagated bound {}",
                computed.value, bound.value
            ));
        }
        Ok((computed, true))
    } else {
        // keep whichever lower bound is stronger
        if computed.value > bound.value {
            Ok((computed, false))
        } else {
            Ok((bound, false))
        }
    }
}

fn raise_to_floor(code: &mut CssCode, floor: u32, notes: &mut Vec<String>) {
    for (label, slot) in [("d1", &mut code.d1), ("d2", &mut code.d2)] {
        if let Some(d) = slot {
            if d.value < floor {
                match d.kind {
                    DistanceKind::LowerBound => {
                        notes.push(format!(
                            "raised {label} bound {} to {} by chain monotonicity",
                            d.value, floor
                        ));
                        *d = DistanceValue::lower_bound(floor, DistanceMethod::TheoremDerived);
                    }
                    DistanceKind::Verified => notes.push(format!(
                        "verified {label} = {} contradicts the later chain value {}",
                        d.value, floor
                    )),
                }
            }
        }
    }
}
