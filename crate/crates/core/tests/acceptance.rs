//! Acceptance suite: every identity the library claims, checked to exact
//! rational equality, one pass/fail line per criterion. The command-line
//! round trip (criterion 11) lives in the CLI crate's own test target.

use std::sync::OnceLock;
use std::time::{Duration, Instant};

use quadmops::backlund::{
    backlund_coeffs, build_small_families, verify_backlund_equivalence,
    verify_big_family_relations, verify_block_factorization, verify_christoffel_connections,
    verify_gamma_hat_relations, GammaSequence,
};
use quadmops::error::Error;
use quadmops::matrix::RatMatrix;
use quadmops::moments::Symmetry;
use quadmops::poly::PolyVector;
use quadmops::quadratic::{assemble_symmetric, decompose, xu_case_study, QuadDecomposition};
use quadmops::rational::{rat, rat_int, Rational};
use quadmops::report::all_passed;
use quadmops::structmat::verify_jl_identities;
use quadmops::{CheckRecord, FamilyTag, MomentFunctional, MopsFamily, Var};

fn criterion(number: u32, description: &str, passed: bool) {
    println!(
        "[{}] criterion {number}: {description}",
        if passed { "PASS" } else { "FAIL" }
    );
    assert!(passed, "criterion {number} failed: {description}");
}

fn criterion_timed(number: u32, description: &str, passed: bool, took: Duration, budget: Duration) {
    let in_budget = took <= budget;
    println!(
        "[{}] criterion {number}: {description} ({}ms of {}ms budget)",
        if passed && in_budget { "PASS" } else { "FAIL" },
        took.as_millis(),
        budget.as_millis()
    );
    assert!(passed, "criterion {number} failed: {description}");
    assert!(
        in_budget,
        "criterion {number} exceeded its runtime budget: {took:?} > {budget:?}"
    );
}

/// Everything the recurrence-algebra criteria need for one symmetric weight.
struct Fixture {
    gammas: GammaSequence,
    smalls: [MopsFamily; 4],
    dec: QuadDecomposition,
}

fn make_fixture(f: &MomentFunctional) -> Fixture {
    let symfam = MopsFamily::build(f, 11).expect("symmetric family to degree 11");
    let gammas = GammaSequence::build(&symfam, 11).expect("gamma sequence");
    let smalls = build_small_families(f, 5).expect("small families to degree 5");
    let dec = decompose(&symfam, 5).expect("decomposition");
    Fixture {
        gammas,
        smalls,
        dec,
    }
}

fn square_fixture() -> &'static Fixture {
    static FIX: OnceLock<Fixture> = OnceLock::new();
    FIX.get_or_init(|| make_fixture(&MomentFunctional::square_legendre()))
}

fn ball_one_fixture() -> &'static Fixture {
    static FIX: OnceLock<Fixture> = OnceLock::new();
    FIX.get_or_init(|| make_fixture(&MomentFunctional::ball(rat_int(1)).unwrap()))
}

fn ball(mu: Rational) -> MomentFunctional {
    MomentFunctional::ball(mu).unwrap()
}

#[test]
fn criterion_01_structural_identities() {
    let start = Instant::now();
    let records = verify_jl_identities(12);
    let ok = records.len() == 104 && all_passed(&records);
    criterion_timed(
        1,
        "all four J-L identities hold exactly for n <= 12, k in {1,2} (104 identities)",
        ok,
        start.elapsed(),
        Duration::from_secs(1),
    );
}

#[test]
fn criterion_02_orthogonality_to_degree_eight() {
    let start = Instant::now();
    let weights: Vec<MomentFunctional> = vec![
        MomentFunctional::square_legendre(),
        ball(rat_int(0)),
        ball(rat_int(1)),
        ball(rat_int(2)),
        ball(rat(1, 2)),
    ];
    let mut ok = true;
    let mut families = 0usize;
    for w in &weights {
        let fam = MopsFamily::build(w, 8).unwrap();
        ok &= all_passed(&fam.verify_orthogonality().unwrap());
        families += 1;
        for tag in FamilyTag::ALL {
            let push = w.quad_pushforward(tag).unwrap();
            let pfam = MopsFamily::build(&push, 8).unwrap();
            ok &= all_passed(&pfam.verify_orthogonality().unwrap());
            families += 1;
        }
    }
    ok &= families == 25;
    criterion_timed(
        2,
        "exact orthogonality and positive-definiteness to degree 8 for 25 families",
        ok,
        start.elapsed(),
        Duration::from_secs(60),
    );
}

#[test]
fn criterion_03_quadratic_decomposition() {
    let mut ok = true;
    for f in [
        MomentFunctional::square_legendre(),
        ball(rat_int(0)),
        ball(rat_int(1)),
        ball(rat_int(2)),
    ] {
        let symfam = MopsFamily::build(&f, 11).unwrap();
        // decompose() certifies, exactly, that every extracted small family
        // matches the independently built MOPS of the pushforward weight.
        let dec = match decompose(&symfam, 5) {
            Ok(dec) => dec,
            Err(e) => {
                ok = false;
                eprintln!("decomposition of {} failed: {e}", f.description());
                continue;
            }
        };
        for tag in FamilyTag::ALL {
            ok &= dec.small_depth(tag) >= 4;
        }
        let recon = dec.reconstruction_records();
        // Reconstruction identities for S_n, n <= 9 (and beyond, to 11).
        ok &= recon.len() >= 10 && all_passed(&recon);
        ok &= all_passed(&dec.gram_shrink_records().unwrap());
        ok &= all_passed(&dec.weight_identification_records().unwrap());
    }
    criterion(
        3,
        "small families to degree 4 match independent MOPS; reconstruction exact for S_n, n <= 9",
        ok,
    );
}

#[test]
fn criterion_04_converse_round_trip() {
    let mut ok = true;
    for f in [MomentFunctional::square_legendre(), ball(rat_int(1))] {
        let g = f.quad_pushforward(FamilyTag::new(0, 0)).unwrap();
        let assembled = assemble_symmetric(&g, 9).unwrap();
        let direct = MopsFamily::build(&f, 9).unwrap();
        for n in 0..=9 {
            if assembled.symmetric.slice(n) != direct.slice(n) {
                ok = false;
                eprintln!("slice {n} differs for {}", f.description());
            }
        }
    }
    criterion(
        4,
        "assembled symmetric family reproduces the direct MOPS to degree 9 (square, ball mu=1)",
        ok,
    );
}

#[test]
fn criterion_05_backlund_equivalence() {
    let mut ok = true;
    for fix in [square_fixture(), ball_one_fixture()] {
        let records = verify_backlund_equivalence(&fix.gammas, &fix.smalls, 4).unwrap();
        // 4 tags x 2 vars x 5 degrees x (2 matrices + 1 polynomial identity).
        ok &= records.len() == 120 && all_passed(&records);
    }
    // Pinned spot values for the square pushforward family.
    let fix = square_fixture();
    let (d, c) = backlund_coeffs(&fix.gammas, FamilyTag::new(0, 0), 1, Var::X).unwrap();
    ok &= d
        == RatMatrix::from_rows(vec![
            vec![rat(11, 21), rat_int(0)],
            vec![rat_int(0), rat(1, 3)],
        ]);
    ok &= c == RatMatrix::from_rows(vec![vec![rat(4, 45)], vec![rat_int(0)]]);
    criterion(
        5,
        "all eight closed-form recurrence formulas equal the direct three-term matrices, n <= 4",
        ok,
    );
}

#[test]
fn criterion_06_short_relations_and_connection() {
    let mut ok = true;
    for fix in [square_fixture(), ball_one_fixture()] {
        ok &= all_passed(&verify_gamma_hat_relations(&fix.gammas, &fix.smalls, 4).unwrap());
        ok &= all_passed(&verify_christoffel_connections(&fix.gammas, &fix.smalls, 4).unwrap());
    }
    criterion(
        6,
        "short-relation matrices verify as polynomial identities and match connection matrices, n <= 4",
        ok,
    );
}

#[test]
fn criterion_07_big_family_relations() {
    let mut ok = true;
    for fix in [square_fixture(), ball_one_fixture()] {
        let records = verify_big_family_relations(&fix.gammas, &fix.dec, 3).unwrap();
        ok &= all_passed(&records);
    }
    criterion(
        7,
        "big-family link and three-term relations hold exactly for n <= 3, k in {1,2}",
        ok,
    );
}

#[test]
fn criterion_08_block_lu_factorization() {
    let mut ok = true;
    for fix in [square_fixture(), ball_one_fixture()] {
        let records = verify_block_factorization(&fix.gammas, &fix.smalls, 4).unwrap();
        ok &= records.len() == 8 && all_passed(&records);
    }
    criterion(
        8,
        "interior blocks of L0·U1, U0·L1, U1·L0, L1·U0 match the block Jacobi operators at N=4",
        ok,
    );
}

#[test]
fn criterion_09_ball_simplex_case_study() {
    let mut ok = true;
    for mu in [rat_int(0), rat_int(1), rat_int(2), rat(1, 2)] {
        let study = xu_case_study(&mu, 4).unwrap();
        ok &= study.passed();
        ok &= study.family_weights.len() == 4;
    }
    criterion(
        9,
        "even-even ball polynomials equal simplex polynomials in squared variables; leftovers certified",
        ok,
    );
}

#[test]
fn criterion_10_negative_controls() {
    let mut ok = true;

    // Perturbed coefficient: the offending cross-Gram pair is flagged.
    let square = MomentFunctional::square_legendre();
    let fam = MopsFamily::build(&square, 3).unwrap();
    let mut slices: Vec<PolyVector> = (0..=3).map(|n| fam.slice(n).clone()).collect();
    let mut bad = slices[2].get(0).clone();
    bad.add_term(0, 0, rat(1, 7));
    slices[2] = PolyVector::new(vec![
        bad,
        slices[2].get(1).clone(),
        slices[2].get(2).clone(),
    ]);
    let broken = MopsFamily::from_parts(square.clone(), slices, "perturbed").unwrap();
    let records = broken.verify_orthogonality().unwrap();
    let failed: Vec<&CheckRecord> = records.iter().filter(|r| !r.passed).collect();
    ok &= !failed.is_empty() && failed.iter().all(|r| r.detail.contains("(0,2)"));

    // Negative second moment: quasi-definiteness fails at degree 1, named.
    let negative = MomentFunctional::custom(
        [
            (0u32, 0u32, rat_int(1)),
            (1, 0, rat_int(0)),
            (0, 1, rat_int(0)),
            (2, 0, rat_int(-1)),
            (1, 1, rat_int(0)),
            (0, 2, rat(1, 3)),
        ],
        Symmetry::None,
        "negative moment table",
    )
    .unwrap();
    ok &= matches!(
        MopsFamily::build(&negative, 1),
        Err(Error::NotQuasiDefinite { degree: 1, .. })
    );

    // Out-of-range ball exponent.
    ok &= matches!(
        MomentFunctional::ball(rat_int(-2)),
        Err(Error::InvalidParameter(_))
    );

    // Christoffel factor with non-positive mass.
    ok &= matches!(
        square.christoffel(rat_int(1), rat_int(0)),
        Err(Error::NonPositiveMass)
    );

    // Tampered symmetric family: decomposition refuses with a mismatch.
    let fam = MopsFamily::build(&square, 3).unwrap();
    let mut slices: Vec<PolyVector> = (0..=3).map(|n| fam.slice(n).clone()).collect();
    let mut bad = slices[2].get(0).clone();
    bad.add_term(1, 0, rat(1, 9));
    slices[2] = PolyVector::new(vec![
        bad,
        slices[2].get(1).clone(),
        slices[2].get(2).clone(),
    ]);
    let tampered = MopsFamily::from_parts(square, slices, "tampered").unwrap();
    ok &= matches!(
        decompose(&tampered, 1),
        Err(Error::DecompositionMismatch(_))
    );

    criterion(
        10,
        "corrupted inputs produce the designated error records, never silent passes",
        ok,
    );
}
