//! Acceptance suite: one test per criterion, each printing a PASS line
//! with the evidence it checked. Criterion 6 (table golden files) lives in
//! the CLI crate's acceptance tests.

use cssprop::{
    derive_chain, involution_plan, min_weight_brute, min_weight_bz, qr_family, quantum_qr,
    ChainConfig, ChainRule, CssCode, Engine, EnumerationBudget, Field, LinearCode, MinDistOptions,
    QuantumParams, VerifyConfig,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn opts() -> MinDistOptions {
    MinDistOptions {
        budget: EnumerationBudget::UNLIMITED,
        threads: 0,
    }
}

fn gf(q: u64) -> Field {
    Field::new(q, 1).unwrap()
}

/// Criterion 1: the two small extended QR quantum codes, fully verified.
#[test]
fn acceptance_1_small_extended_qr_codes_verified() {
    let c8 = quantum_qr(7, &gf(2), true)
        .unwrap()
        .compute_distances(Engine::Brute, &opts())
        .unwrap();
    let p8 = c8.params().unwrap();
    assert_eq!(p8.to_string(), "[[8,0,4]]_2");
    assert!(p8.d1.is_verified() && p8.d2.is_verified());

    let c24 = quantum_qr(23, &gf(2), true)
        .unwrap()
        .compute_distances(Engine::Brute, &opts())
        .unwrap();
    let p24 = c24.params().unwrap();
    assert_eq!(p24.to_string(), "[[24,0,8]]_2");
    assert!(p24.d1.is_verified() && p24.d2.is_verified());

    println!("ACCEPTANCE 1: PASS - [[8,0,4]]_2 and [[24,0,8]]_2 verified by brute force");
}

/// A random nested pair: c2 = dual(S) for a random subcode S, c1 a random
/// extension of S, filtered so that both distances exceed 1.
fn random_nested_pair(q: u64, trial: u64) -> Option<CssCode> {
    let field = gf(q);
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE97 + trial);
    let n = if q == 2 {
        6 + (rng.gen_range(0..9) as usize) // up to 14
    } else {
        6 + (rng.gen_range(0..6) as usize) // up to 11
    };
    // dim(c1) = r + extra >= 2 keeps two reduction steps away from the
    // degenerate empty constituent code
    let r = 2 + rng.gen_range(0..2) as usize;
    let extra = rng.gen_range(0..3) as usize;
    let sub = LinearCode::random(&field, n, r, rng.gen()).ok()?;
    let mut rows = sub.generator().row_vecs();
    for _ in 0..extra {
        rows.push((0..n).map(|_| rng.gen_range(0..q)).collect());
    }
    let c1 = LinearCode::from_rows(&field, n, &rows).ok()?;
    let c2 = sub.dual();
    let css = CssCode::new(c1, c2).ok()?;
    let css = css.compute_distances(Engine::Brute, &opts()).ok()?;
    let p = css.params()?;
    (p.d1.value > 1 && p.d2.value > 1).then_some(css)
}

/// Criterion 2: soundness of the one- and two-coordinate reductions on
/// at least 100 random nested pairs.
#[test]
fn acceptance_2_reduction_soundness_on_random_pairs() {
    let mut checked = 0u32;
    let mut trial = 0u64;
    while checked < 100 {
        trial += 1;
        assert!(trial < 4000, "pair generation starved");
        let q = if trial.is_multiple_of(2) { 2 } else { 3 };
        let Some(css) = random_nested_pair(q, trial) else {
            continue;
        };
        let p = css.params().unwrap();
        let n = css.n();
        let i = 1 + (trial as usize % n);

        let one = css.reduce_one(i).expect("hypotheses hold");
        assert_eq!(one.k(), css.k(), "k preserved by reduce_one");
        let one_exact = one.compute_distances(Engine::Brute, &opts()).unwrap();
        let po = one_exact.params().unwrap();
        assert!(po.d1.value >= p.d1.value - 1, "d1 after reduce_one");
        assert!(po.d2.value >= p.d2.value, "d2 after reduce_one");

        let j = 1 + (trial as usize % (n - 1));
        let two = css.reduce_two(i, j).expect("hypotheses hold");
        assert_eq!(two.k(), css.k(), "k preserved by reduce_two");
        let two_exact = two.compute_distances(Engine::Brute, &opts()).unwrap();
        let pt = two_exact.params().unwrap();
        assert!(pt.d1.value >= p.d1.value - 1, "d1 after reduce_two");
        assert!(pt.d2.value >= p.d2.value - 1, "d2 after reduce_two");

        checked += 1;
    }
    println!("ACCEPTANCE 2: PASS - {checked} random nested pairs, zero violations");
}

/// Criterion 3: shortening and puncturing are dual to each other.
#[test]
fn acceptance_3_shorten_puncture_duality() {
    let mut checked = 0;
    for seed in 0..100u64 {
        let q = [2u64, 3, 4, 5][(seed % 4) as usize];
        let (p, m) = match q {
            4 => (2, 2),
            other => (other, 1),
        };
        let field = Field::new(p, m).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7000 + seed);
        let n = 4 + rng.gen_range(0..13) as usize; // up to 16
        let k = rng.gen_range(0..=n as u64) as usize;
        let c = LinearCode::random(&field, n, k, rng.gen()).unwrap();
        for i in 1..=n {
            assert_eq!(
                c.dual().shorten(i).unwrap(),
                c.puncture(i).unwrap().dual(),
                "shorten(dual) = dual(puncture), q={q} seed={seed} i={i}"
            );
            assert_eq!(
                c.dual().puncture(i).unwrap(),
                c.shorten(i).unwrap().dual(),
                "puncture(dual) = dual(shorten), q={q} seed={seed} i={i}"
            );
        }
        checked += 1;
    }
    println!("ACCEPTANCE 3: PASS - duality identities on {checked} random codes, all coordinates");
}

/// Criterion 4: the quadratic-residue family over the whole test set.
#[test]
fn acceptance_4_qr_construction_suite() {
    let cases: [(u64, u64); 7] = [(7, 2), (17, 2), (23, 2), (31, 2), (11, 3), (13, 3), (23, 3)];
    let mut summary = Vec::new();
    for (n, q) in cases {
        let field = gf(q);
        let fam = qr_family(n, &field).unwrap();
        let half = n.div_ceil(2) as usize;

        // (i) strict containment of the expurgated codes
        assert!(fam.q_bar.is_subcode_of(&fam.q).unwrap());
        assert!(fam.n_bar.is_subcode_of(&fam.n).unwrap());
        assert_eq!(fam.q_bar.dim(), half - 1);
        assert_eq!(fam.n_bar.dim(), half - 1);

        // (ii) equal parameters for Q and N
        assert_eq!(fam.q.dim(), half);
        assert_eq!(fam.n.dim(), half);
        let d = min_weight_brute(&fam.q, &opts()).unwrap().value;
        let dn = min_weight_brute(&fam.n, &opts()).unwrap().value;
        assert_eq!(d, dn, "d(Q) = d(N) for n={n} q={q}");

        // (iii) expurgated distance d + 1
        let db = min_weight_brute(&fam.q_bar, &opts()).unwrap().value;
        let dnb = min_weight_brute(&fam.n_bar, &opts()).unwrap().value;
        assert_eq!(db, d + 1, "d(Q-bar) = d+1 for n={n} q={q}");
        assert_eq!(dnb, d + 1, "d(N-bar) = d+1 for n={n} q={q}");

        // (iv)/(v) duality pattern by n mod 4
        if n % 4 == 3 {
            assert_eq!(fam.q.dual(), fam.q_bar);
            assert_eq!(fam.n.dual(), fam.n_bar);
        } else {
            assert_eq!(fam.q.dual(), fam.n_bar);
            assert_eq!(fam.n.dual(), fam.q_bar);
        }

        // (vi) extended parameters [n+1, (n+1)/2, d+1]
        assert_eq!(fam.q_ext.len(), n as usize + 1);
        assert_eq!(fam.q_ext.dim(), half);
        let de = min_weight_brute(&fam.q_ext, &opts()).unwrap().value;
        let dne = min_weight_brute(&fam.n_ext, &opts()).unwrap().value;
        assert_eq!(de, d + 1, "d(Q-ext) = d+1 for n={n} q={q}");
        assert_eq!(dne, d + 1, "d(N-ext) = d+1 for n={n} q={q}");

        summary.push(format!("({n},{q}):d={d}"));
    }
    println!(
        "ACCEPTANCE 4: PASS - QR family properties (i)-(vi) hold: {}",
        summary.join(" ")
    );
}

/// Criterion 5: the medium verified chain from the length-47 extended QR
/// code, cross-checking both engines.
#[test]
fn acceptance_5_medium_chain_n47() {
    let field = gf(2);
    let fam = qr_family(47, &field).unwrap();
    assert_eq!((fam.q_ext.len(), fam.q_ext.dim()), (48, 24));
    let bz = min_weight_bz(&fam.q_ext, &opts()).unwrap();
    assert!(bz.is_verified());
    assert_eq!(bz.value, 12, "BZ distance of the [48,24] extended QR code");
    let brute = min_weight_brute(&fam.q_ext, &opts()).unwrap();
    assert!(brute.is_verified());
    assert_eq!(brute.value, 12, "brute-force cross-check over 2^24 words");

    let css = quantum_qr(47, &field, true)
        .unwrap()
        .compute_distances(Engine::Brute, &opts())
        .unwrap();
    assert_eq!(css.params().unwrap().to_string(), "[[48,0,12]]_2");

    let cfg = ChainConfig {
        rule: Some(ChainRule::ReduceTwo),
        steps: 1,
        plan: Some(involution_plan(47, 1).unwrap()),
        verify: Some(VerifyConfig {
            engine: Engine::Brute,
            opts: opts(),
        }),
    };
    let outcome = derive_chain(&css, &cfg).unwrap();
    assert!(outcome.truncated.is_none());
    let entry = &outcome.entries[0];
    let p = entry.params();
    assert_eq!((p.n, p.k), (46, 0));
    assert!(p.d1.is_verified() && p.d2.is_verified());
    assert!(p.d() >= 11, "verified distance of the reduced code");
    println!(
        "ACCEPTANCE 5: PASS - [[48,0,12]]_2 verified by both engines; one reduction step gives {p} (verified)"
    );
}

/// Criterion 7: the k > 0 ternary rows via pair puncturing, both as
/// parameter arithmetic and on the explicitly constructed codes.
#[test]
fn acceptance_7_ternary_pair_puncture_rows() {
    // parameter arithmetic from the declared seed
    let seed = QuantumParams::declared(3, 60, 0, 18);
    let rows = [
        seed.pair_puncture().unwrap().to_string(),
        seed.pair_puncture()
            .unwrap()
            .pair_puncture()
            .unwrap()
            .to_string(),
        {
            let p = seed.reduce_one().unwrap().pair_puncture().unwrap();
            format!("[[{},{},{}]]_{}", p.n, p.k, p.d(), p.q)
        },
        {
            let p = seed
                .reduce_one()
                .unwrap()
                .pair_puncture()
                .unwrap()
                .pair_puncture()
                .unwrap();
            format!("[[{},{},{}]]_{}", p.n, p.k, p.d(), p.q)
        },
        {
            let p = seed.reduce_two().unwrap().pair_puncture().unwrap();
            format!("[[{},{},{}]]_{}", p.n, p.k, p.d(), p.q)
        },
    ];
    assert_eq!(
        rows,
        [
            "[[59,1,17]]_3",
            "[[58,2,16]]_3",
            "[[58,1,16]]_3",
            "[[57,2,15]]_3",
            "[[57,1,16]]_3",
        ]
    );

    // the same chain on the real [60,30] extended QR code with the seed
    // distance supplied as an external input
    let css = quantum_qr(59, &gf(3), true)
        .unwrap()
        .with_declared_distances(18, 18);
    assert_eq!((css.n(), css.k()), (60, 0));
    let cfg = ChainConfig {
        rule: Some(ChainRule::PairPuncture),
        steps: 2,
        plan: None,
        verify: None,
    };
    let outcome = derive_chain(&css, &cfg).unwrap();
    assert!(outcome.truncated.is_none());
    let got: Vec<String> = outcome
        .entries
        .iter()
        .map(|e| e.params().to_string())
        .collect();
    assert_eq!(got, vec!["[[59,1,17]]_3", "[[58,2,16]]_3"]);
    println!("ACCEPTANCE 7: PASS - pair-puncture rows 59/1/17, 58/2/16, 58/1/16, 57/2/15, 57/1/16");
}

/// Criterion 8: the [60,30]_3 seed distance is a long-running target, not
/// part of the default suite. Run with --ignored to verify d = 18 (takes
/// on the order of hours).
#[test]
#[ignore = "long-running: verifies d([60,30]_3) = 18 by Brouwer-Zimmermann"]
fn acceptance_8_optional_long_ternary_seed_verification() {
    let fam = qr_family(59, &gf(3)).unwrap();
    assert_eq!((fam.q_ext.len(), fam.q_ext.dim()), (60, 30));
    let d = min_weight_bz(&fam.q_ext, &opts()).unwrap();
    assert!(d.is_verified());
    assert_eq!(d.value, 18);
    println!("ACCEPTANCE 8 (optional): PASS - [60,30]_3 verified d = 18");
}

/// The default-suite stand-in for criterion 8: the seed is constructible
/// and its distance is declared, not silently computed.
#[test]
fn acceptance_8_seed_is_constructible_and_declared() {
    let fam = qr_family(59, &gf(3)).unwrap();
    assert_eq!((fam.q_ext.len(), fam.q_ext.dim()), (60, 30));
    assert_eq!(fam.q_ext.dual(), fam.q_ext);
    println!(
        "ACCEPTANCE 8: PASS - [60,30]_3 constructed (self-dual); d = 18 ingested, verification optional"
    );
}

/// Criterion 9: engine equivalence on 200 seeded random codes.
#[test]
fn acceptance_9_engine_equivalence() {
    let mut checked = 0;
    for seed in 0..200u64 {
        let q = if seed % 2 == 0 { 2u64 } else { 3 };
        let field = gf(q);
        let mut rng = ChaCha8Rng::seed_from_u64(42_000 + seed);
        let n = 6 + rng.gen_range(0..15) as usize; // up to 20
        let max_k = if q == 2 { n.min(18) } else { n.min(12) };
        let k = 1 + rng.gen_range(0..max_k as u64) as usize;
        let c = LinearCode::random(&field, n, k, rng.gen()).unwrap();
        let b = min_weight_brute(&c, &opts()).unwrap();
        let z = min_weight_bz(&c, &opts()).unwrap();
        assert!(b.is_verified() && z.is_verified());
        assert_eq!(b.value, z.value, "engines disagree on {c} (seed {seed})");
        checked += 1;
    }
    println!("ACCEPTANCE 9: PASS - brute force and Brouwer-Zimmermann agree on {checked} codes");
}
