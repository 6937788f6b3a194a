//! The three built-in parameter tables and their reproduction.
//!
//! Every row is produced by rule arithmetic from a declared seed, so
//! `--verify none` needs no code construction at all. Seed distances are
//! external inputs recorded as ingested; rows whose declared distance
//! exceeds what the reduction rules guarantee show the rule bound in their
//! parameters and carry the declared value in an annotation.
//!
//! `--verify small` re-verifies every row whose constituent-code
//! enumeration stays within 2^25 codewords by actually constructing the
//! codes; `--verify all` attempts every row under the budget and keeps the
//! arithmetic bounds wherever enumeration aborts.

use std::collections::BTreeMap;

use anyhow::{anyhow, bail, Context, Result};
use cssprop::{
    derive_chain, involution_plan, quantum_qr, ChainConfig, ChainRule, Engine, Field, LinearCode,
    MinDistOptions, QuantumParams, VerifyConfig,
};

use crate::report::{Report, ReportRow, RowSource, StarKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyLevel {
    None,
    Small,
    All,
}

impl VerifyLevel {
    pub fn label(self) -> &'static str {
        match self {
            VerifyLevel::None => "none",
            VerifyLevel::Small => "small",
            VerifyLevel::All => "all",
        }
    }
}

/// Enumeration stays desk-sized below this many codewords.
const SMALL_ENUMERATION: u64 = 1 << 25;

enum Seed {
    /// An extended quadratic-residue code of the given prime length.
    ExtendedQr { qr_n: u64 },
    /// A self-dual classical [n, k, d] code supplied from outside.
    SelfDual { params: (u32, u32, u32) },
}

struct SeedChain {
    seed: Seed,
    /// Declared quantum seed parameters [[n, 0, d]].
    params: (u32, u32),
    /// How many two-coordinate reduction steps the table tabulates.
    steps: usize,
    /// Declared distances for derived lengths where the tabulated value
    /// exceeds the rule bound.
    declared_overrides: &'static [(u32, u32)],
}

fn table1() -> Vec<SeedChain> {
    vec![
        chain(7, (8, 4), 0),
        chain(23, (24, 8), 0),
        chain(137, (138, 22), 0),
        chain(167, (168, 24), 3),
        chain(191, (192, 28), 6),
        chain(199, (200, 32), 3),
        SeedChain {
            seed: Seed::ExtendedQr { qr_n: 223 },
            params: (224, 32),
            steps: 11,
            declared_overrides: &[(208, 25), (206, 24), (204, 24), (202, 24)],
        },
    ]
}

fn chain(qr_n: u64, params: (u32, u32), steps: usize) -> SeedChain {
    SeedChain {
        seed: Seed::ExtendedQr { qr_n },
        params,
        steps,
        declared_overrides: &[],
    }
}

fn table2() -> Vec<SeedChain> {
    let self_dual = |n: u32, k: u32, d: u32, steps: usize| SeedChain {
        seed: Seed::SelfDual { params: (n, k, d) },
        params: (n, d),
        steps,
        declared_overrides: &[],
    };
    vec![
        self_dual(136, 68, 24, 3),
        self_dual(152, 76, 24, 6),
        self_dual(160, 80, 24, 3),
    ]
}

/// Generates the requested table. `matrix_files` maps a table-2 seed
/// length to a generator-matrix file for structural validation.
pub fn generate_table(
    which: u8,
    verify: VerifyLevel,
    matrix_files: &BTreeMap<u32, std::path::PathBuf>,
    opts: &MinDistOptions,
    report: &mut Report,
) -> Result<()> {
    match which {
        1 => generate_chain_table(&table1(), 2, verify, matrix_files, opts, report),
        2 => generate_chain_table(&table2(), 2, verify, matrix_files, opts, report),
        3 => generate_table3(verify, opts, report),
        other => bail!("no table {other}; the built-in tables are 1, 2 and 3"),
    }
}

fn generate_chain_table(
    seeds: &[SeedChain],
    q: u64,
    verify: VerifyLevel,
    matrix_files: &BTreeMap<u32, std::path::PathBuf>,
    opts: &MinDistOptions,
    report: &mut Report,
) -> Result<()> {
    for sc in seeds {
        let (n, d) = sc.params;
        let seed_params = QuantumParams::declared(q, n, 0, d);
        let seed_trace = match &sc.seed {
            Seed::ExtendedQr { qr_n } => format!("seed: extended QR n={qr_n} q={q}"),
            Seed::SelfDual {
                params: (cn, ck, cd),
            } => {
                format!("seed: self-dual [{cn},{ck},{cd}]_{q} code (supplied externally)")
            }
        };
        let mut seed_row = ReportRow::from_params(&seed_params, RowSource::Ingested, seed_trace);

        if let Seed::SelfDual { params } = &sc.seed {
            validate_self_dual_matrix(*params, matrix_files, &mut seed_row)?;
        }

        // derived rows by repeated two-coordinate reduction
        let mut derived_rows = Vec::new();
        let mut current = seed_params;
        for step in 0..sc.steps {
            current = current
                .reduce_two()
                .map_err(|e| anyhow!("table row derivation failed: {e}"))?;
            let mut row = ReportRow::from_params(
                &current,
                RowSource::TheoremBound,
                format!("[[{n},0,{d}]]_{q} | reduce2^{}", step + 1),
            );
            if let Some(&(_, declared)) = sc
                .declared_overrides
                .iter()
                .find(|(len, _)| *len == current.n)
            {
                row.declared_d = Some(declared);
                row.star = Some(StarKind::ExceedsRuleBound);
                row.note = Some(format!(
                    "declared distance {declared} exceeds the reduction bound {}",
                    current.d()
                ));
            }
            derived_rows.push(row);
        }

        if verify != VerifyLevel::None {
            verify_seed_chain(
                sc,
                q,
                verify,
                opts,
                &mut seed_row,
                &mut derived_rows,
                report,
            )?;
        }

        report.rows.push(seed_row);
        report.rows.append(&mut derived_rows);
    }
    Ok(())
}

fn validate_self_dual_matrix(
    (cn, ck, cd): (u32, u32, u32),
    matrix_files: &BTreeMap<u32, std::path::PathBuf>,
    seed_row: &mut ReportRow,
) -> Result<()> {
    let Some(path) = matrix_files.get(&cn) else {
        seed_row.note = Some(format!(
            "generator matrix for [{cn},{ck},{cd}] not supplied; parameters taken on trust"
        ));
        return Ok(());
    };
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading generator matrix {}", path.display()))?;
    let code = LinearCode::from_text(&text)
        .with_context(|| format!("parsing generator matrix {}", path.display()))?;
    if (code.len(), code.dim()) != (cn as usize, ck as usize) {
        bail!(
            "matrix {} is a [{},{}] code, expected [{cn},{ck}]",
            path.display(),
            code.len(),
            code.dim()
        );
    }
    if code.dual() != code {
        bail!("matrix {} is not self-dual", path.display());
    }
    seed_row.note = Some(format!(
        "generator matrix validated: self-dual [{cn},{ck}]; declared distance {cd} not re-verified"
    ));
    Ok(())
}

fn verify_seed_chain(
    sc: &SeedChain,
    q: u64,
    verify: VerifyLevel,
    opts: &MinDistOptions,
    seed_row: &mut ReportRow,
    derived_rows: &mut [ReportRow],
    report: &mut Report,
) -> Result<()> {
    let Seed::ExtendedQr { qr_n } = sc.seed else {
        if verify == VerifyLevel::Small {
            report.notes.push(format!(
                "[[{},0,{}]]_{q}: constituent enumeration exceeds 2^25; skipped",
                sc.params.0, sc.params.1
            ));
        }
        return Ok(());
    };
    let (n, d) = sc.params;
    let k1 = n / 2;
    let enumeration = (q as f64).powi(k1 as i32);
    if verify == VerifyLevel::Small && enumeration > SMALL_ENUMERATION as f64 {
        report.notes.push(format!(
            "[[{n},0,{d}]]_{q}: constituent enumeration exceeds 2^25; skipped"
        ));
        return Ok(());
    }
    let field = Field::new(q, 1).expect("prime field");
    let built = match quantum_qr(qr_n, &field, true) {
        Ok(c) => c,
        Err(e) => {
            report
                .notes
                .push(format!("[[{n},0,{d}]]_{q}: not constructible here ({e})"));
            return Ok(());
        }
    };
    let computed = built.compute_distances(Engine::Brute, opts)?;
    let p = computed.params().expect("distances just computed");
    if p.d1.is_verified() && p.d2.is_verified() {
        if p.d() != d {
            bail!(
                "seed [[{n},0,{d}]]_{q} verified to distance {}, contradicting the declared value",
                p.d()
            );
        }
        seed_row.d1 = p.d1;
        seed_row.d2 = p.d2;
        seed_row.source = RowSource::Verified;
    } else {
        report.notes.push(format!(
            "[[{n},0,{d}]]_{q}: enumeration aborted under budget; declared value kept"
        ));
        return Ok(());
    }

    if !derived_rows.is_empty() {
        let plan = involution_plan(qr_n, sc.steps)?;
        let cfg = ChainConfig {
            rule: Some(ChainRule::ReduceTwo),
            steps: sc.steps,
            plan: Some(plan),
            verify: Some(VerifyConfig {
                engine: Engine::Brute,
                opts: *opts,
            }),
        };
        let outcome = derive_chain(&computed, &cfg)?;
        for (row, entry) in derived_rows.iter_mut().zip(outcome.entries.iter()) {
            let ep = entry.params();
            if entry.verified {
                if ep.d() < row.d1.value.min(row.d2.value) {
                    bail!(
                        "verified distance fell below the table bound for [[{},{}]]",
                        ep.n,
                        ep.k
                    );
                }
                row.d1 = ep.d1;
                row.d2 = ep.d2;
                row.source = RowSource::Verified;
            }
        }
        for note in outcome.notes {
            report.notes.push(note);
        }
    }
    Ok(())
}

fn generate_table3(verify: VerifyLevel, opts: &MinDistOptions, report: &mut Report) -> Result<()> {
    let seed = QuantumParams::declared(3, 60, 0, 18);
    let seed_trace = "seed: extended QR n=59 q=3".to_string();

    enum Step {
        R1,
        R2,
        Pp,
    }
    use Step::*;
    let apply = |steps: &[Step]| -> Result<(QuantumParams, String)> {
        let mut p = seed;
        let mut trace = "[[60,0,18]]_3".to_string();
        for s in steps {
            let (next, name) = match s {
                R1 => (p.reduce_one(), "reduce1"),
                R2 => (p.reduce_two(), "reduce2"),
                Pp => (p.pair_puncture(), "pair"),
            };
            p = next.map_err(|e| anyhow!("table row derivation failed: {e}"))?;
            trace.push_str(&format!(" | {name}"));
        }
        Ok((p, trace))
    };

    // rows in table order: length ascending, then k ascending
    let specs: Vec<(&[Step], Option<StarKind>)> = vec![
        (&[R2, R2], None),                       // [[56,0,16]]
        (&[R2, R1], None),                       // [[57,0,16]]
        (&[R2, Pp], None),                       // [[57,1,16]]
        (&[R1, Pp, Pp], None),                   // [[57,2,15]]
        (&[R2], None),                           // [[58,0,17]]
        (&[R1, Pp], None),                       // [[58,1,16]]
        (&[Pp, Pp], None),                       // [[58,2,16]]
        (&[R1], None),                           // [[59,0,17]]
        (&[Pp], Some(StarKind::ExceedsGvBound)), // [[59,1,17]]
        (&[], Some(StarKind::ExceedsGvBound)),   // [[60,0,18]] seed
    ];

    for (steps, star) in specs {
        let (p, trace) = apply(steps)?;
        let source = if steps.is_empty() {
            RowSource::Ingested
        } else {
            RowSource::TheoremBound
        };
        let trace = if steps.is_empty() {
            seed_trace.clone()
        } else {
            trace
        };
        let mut row = ReportRow::from_params(&p, source, trace);
        if star.is_some() {
            row.star = star;
            row.note = Some(
                "declared to exceed the Gilbert-Varshamov existence bound; not checked here"
                    .to_string(),
            );
        }
        report.rows.push(row);
    }

    match verify {
        VerifyLevel::None => {}
        VerifyLevel::Small => {
            report
                .notes
                .push("[[60,0,18]]_3: constituent enumeration exceeds 2^25; skipped".to_string());
        }
        VerifyLevel::All => {
            let field = Field::new(3, 1).expect("prime field");
            let built = quantum_qr(59, &field, true)?;
            let computed = built.compute_distances(Engine::Brute, opts)?;
            let p = computed.params().expect("distances computed");
            if p.d1.is_verified() && p.d2.is_verified() {
                if p.d() != 18 {
                    bail!(
                        "seed [[60,0,18]]_3 verified to distance {}, contradicting the declared value",
                        p.d()
                    );
                }
                if let Some(row) = report.rows.last_mut() {
                    row.d1 = p.d1;
                    row.d2 = p.d2;
                    row.source = RowSource::Verified;
                }
            } else {
                report.notes.push(
                    "[[60,0,18]]_3: enumeration aborted under budget; declared value kept"
                        .to_string(),
                );
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use cssprop::QuantumParams;

    #[test]
    fn self_dual_matrix_validation_accepts_a_matching_code() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("ext_hamming.gen");
        let field = Field::new(2, 1).unwrap();
        let code = quantum_qr(7, &field, true).unwrap().c1().clone();
        std::fs::write(&path, code.to_text()).unwrap();
        let mut files = BTreeMap::new();
        files.insert(8, path);
        let p = QuantumParams::declared(2, 8, 0, 4);
        let mut row = ReportRow::from_params(&p, RowSource::Ingested, "seed".into());
        validate_self_dual_matrix((8, 4, 4), &files, &mut row).unwrap();
        assert!(row.note.as_deref().unwrap().contains("validated"));
    }

    #[test]
    fn self_dual_matrix_validation_rejects_a_non_self_dual_code() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("not_sd.gen");
        std::fs::write(&path, "2 4 2\n1100\n0010\n").unwrap();
        let mut files = BTreeMap::new();
        files.insert(4, path);
        let p = QuantumParams::declared(2, 4, 0, 2);
        let mut row = ReportRow::from_params(&p, RowSource::Ingested, "seed".into());
        let err = validate_self_dual_matrix((4, 2, 2), &files, &mut row).unwrap_err();
        assert!(err.to_string().contains("not self-dual"));
    }

    #[test]
    fn missing_matrix_only_annotates() {
        let p = QuantumParams::declared(2, 136, 0, 24);
        let mut row = ReportRow::from_params(&p, RowSource::Ingested, "seed".into());
        validate_self_dual_matrix((136, 68, 24), &BTreeMap::new(), &mut row).unwrap();
        assert!(row.note.as_deref().unwrap().contains("not supplied"));
    }
}
