//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on failure.

use std::f64::consts::FRAC_1_SQRT_2;
use std::process::ExitCode;

use identsep::algebra::{bell_subalgebras, factorization_test, generate_labeled, FactorizationOptions, Verdict};
use identsep::cases::{self, number_state_factorization};
use identsep::fock::{annihilation_op, bogoliubov_mode_vectors, build_fock, number_state, Statistics};
use identsep::hilbert::{expectation, pauli, tensor_ket, tensor_op, Bell, HilbertSpace, Ket, Operator};
use identsep::nolabel::{
    expectation_extended, expectation_extended_closed_form, expectation_reduced, expectation_reduced_closed_form,
    extended_pair_expectation, k_reduced_dm, NoLabelPair, NoLabelState,
};
use identsep::random;
use identsep::verify;
use identsep::{Result, C64};

struct Gate {
    failures: usize,
}

impl Gate {
    fn check(&mut self, label: &str, outcome: Result<Vec<String>>) {
        match outcome {
            Ok(problems) if problems.is_empty() => println!("PASS  {label}"),
            Ok(problems) => {
                self.failures += 1;
                println!("FAIL  {label}");
                for p in problems {
                    println!("      {p}");
                }
            }
            Err(e) => {
                self.failures += 1;
                println!("FAIL  {label}: {e}");
            }
        }
    }
}

fn close(problems: &mut Vec<String>, what: &str, computed: f64, expected: f64, tol: f64) {
    if (computed - expected).abs() > tol || !computed.is_finite() {
        problems.push(format!("{what}: computed {computed:.15}, expected {expected}, tol {tol:e}"));
    }
}

fn close_c(problems: &mut Vec<String>, what: &str, computed: C64, expected: f64, tol: f64) {
    if (computed - C64::new(expected, 0.0)).norm() > tol {
        problems.push(format!("{what}: computed {computed}, expected {expected}, tol {tol:e}"));
    }
}

fn criterion_1() -> Result<Vec<String>> {
    let mut p = Vec::new();
    let psi = Bell::PsiPlus.ket();
    let id = pauli::identity();
    let joint = expectation(&psi, &tensor_op(&pauli::z(), &pauli::z()))?;
    let product = expectation(&psi, &tensor_op(&pauli::z(), &id))? * expectation(&psi, &tensor_op(&id, &pauli::z()))?;
    close_c(&mut p, "<s3 s3>", joint, -1.0, 1e-9);
    close_c(&mut p, "<s3><s3>", product, 0.0, 1e-9);
    Ok(p)
}

fn criterion_2() -> Result<Vec<String>> {
    let mut p = Vec::new();
    let zero = Ket::basis(HilbertSpace::qubit(), 0)?;
    let state = tensor_ket(&zero, &zero);
    let plus = Operator::projector(&Bell::PhiPlus.ket());
    let minus = Operator::projector(&Bell::PhiMinus.ket());
    close_c(&mut p, "<P_Phi+ P_Phi->", expectation(&state, &(&plus * &minus))?, 0.0, 1e-9);
    close_c(
        &mut p,
        "<P_Phi+><P_Phi->",
        expectation(&state, &plus)? * expectation(&state, &minus)?,
        0.25,
        1e-9,
    );
    let (a, b) = bell_subalgebras()?;
    let options = FactorizationOptions::default();
    let verdict = factorization_test(&state, &a, &b, &options)?.verdict;
    if verdict != Verdict::EntangledWrt {
        p.push(format!("|00>: {}", verdict.as_str()));
    }
    for bell in Bell::ALL {
        let verdict = factorization_test(&bell.ket(), &a, &b, &options)?.verdict;
        if verdict != Verdict::SeparableWrt {
            p.push(format!("{}: {}", bell.name(), verdict.as_str()));
        }
    }
    Ok(p)
}

fn criterion_3() -> Result<Vec<String>> {
    let mut p = Vec::new();
    for k in 0..=2 {
        let check = number_state_factorization(k, 2, 3, 50, random::DEFAULT_SEED)?;
        close(&mut p, &format!("k = {k} max deviation"), check.max_deviation, 0.0, 1e-8);
    }
    let space = build_fock(Statistics::Boson, 2, 6)?;
    let state = number_state(&space, 1, 2)?;
    let (plus, minus) = bogoliubov_mode_vectors(&space)?;
    let domain = space.exact_domain(4);
    let a = generate_labeled(vec![("b_+".into(), annihilation_op(&space, &plus)?.op)], 2)?.with_domain(domain.clone());
    let b = generate_labeled(vec![("b_-".into(), annihilation_op(&space, &minus)?.op)], 2)?.with_domain(domain);
    let report = factorization_test(&state, &a, &b, &FactorizationOptions::default())?;
    if report.max_violation <= 0.01 || report.verdict != Verdict::EntangledWrt {
        p.push(format!("Bogoliubov violation {} is not above 0.01", report.max_violation));
    }
    Ok(p)
}

fn criterion_4() -> Result<Vec<String>> {
    let mut p = Vec::new();
    let mut rng = random::seeded(random::DEFAULT_SEED);
    for outcome in [
        verify::ccr_car(Statistics::Boson, 2, 6, 20, 1e-10, &mut rng)?,
        verify::ccr_car(Statistics::Fermion, 4, 4, 20, 1e-10, &mut rng)?,
    ] {
        if !outcome.passed() {
            p.push(format!("{}: {:e} ({})", outcome.name, outcome.max_deviation, outcome.witness));
        }
    }
    Ok(p)
}

fn criterion_5() -> Result<Vec<String>> {
    let mut p = Vec::new();
    let space = HilbertSpace::indexed(3);
    let phi: Vec<Ket> = (0..3).map(|i| Ket::basis(space.clone(), i)).collect::<Result<_>>()?;
    let h = C64::new(FRAC_1_SQRT_2, 0.0);
    let half = |a: &Ket, b: &Ket, s: f64| (a + &b.scale(C64::new(s, 0.0))).scale(h);
    let settings = [
        (Operator::projector(&phi[0]), Operator::projector(&phi[1]), 0),
        (
            Operator::projector(&half(&phi[0], &phi[1], 1.0)),
            Operator::projector(&half(&phi[0], &phi[1], -1.0)),
            1,
        ),
        (
            Operator::projector(&half(&phi[0], &phi[2], 1.0)),
            Operator::projector(&half(&phi[0], &phi[2], -1.0)),
            2,
        ),
    ];
    for stats in [Statistics::Boson, Statistics::Fermion] {
        let eta = stats.eta();
        let state: NoLabelState = NoLabelPair::new(phi[0].clone(), phi[1].clone(), stats)?.into();
        for (o1, o2, case) in &settings {
            let (lhs, rhs) = extended_pair_expectation(&state, o1, o2)?;
            let expected = [(0.0, 0.0), (-eta / 2.0, 0.5), (0.0, 0.25)][*case];
            close(&mut p, &format!("case {} lhs ({})", case + 1, stats.name()), lhs, expected.0, 1e-9);
            close(&mut p, &format!("case {} rhs ({})", case + 1, stats.name()), rhs, expected.1, 1e-9);
            if stats == Statistics::Fermion && *case == 1 {
                close(&mut p, "fermionic case 2 lhs", lhs, 0.5, 1e-9);
                close(&mut p, "fermionic case 2 rhs", rhs, 0.5, 1e-9);
            }
        }
    }
    Ok(p)
}

fn criterion_6() -> Result<Vec<String>> {
    let mut p = Vec::new();
    for (id, entropy) in [("leftloc-1", 0.0), ("leftloc-2", 0.0), ("leftloc-3", 1.0)] {
        let result = cases::run_case(id)?;
        let mut entries = 0;
        for q in &result.quantities {
            if q.name.starts_with("E_L") {
                close(&mut p, &format!("{id} {}", q.name), q.computed.re, entropy, 1e-9);
                close(&mut p, &format!("{id} {} expected", q.name), q.expected.re, entropy, 0.0);
            } else if q.name.starts_with("rho_L") {
                entries += 1;
                if q.deviation() > 1e-9 {
                    p.push(format!("{id} {}: {} vs {}", q.name, q.computed, q.expected));
                }
            }
        }
        if entries == 0 || entries % 16 != 0 {
            p.push(format!("{id}: {entries} matrix entries checked"));
        }
    }
    Ok(p)
}

fn criterion_7() -> Result<Vec<String>> {
    let mut p = Vec::new();
    for (id, expected) in [
        ("leftloc-projector-1", (0.0, 0.25)),
        ("leftloc-projector-2", (0.5, 1.0)),
        ("leftloc-projector-3", (1.0, 1.0)),
    ] {
        let result = cases::run_case(id)?;
        for q in &result.quantities {
            let want = if q.name.starts_with("<O1 O2>") { expected.0 } else { expected.1 };
            close(&mut p, &format!("{id} {}", q.name), q.computed.re, want, 1e-9);
        }
        if id == "leftloc-projector-3" && !result.verdicts.iter().all(|v| v.verdict == Verdict::SeparableWrt) {
            p.push("case 3 is not separable for the P_L0, P_L1 subalgebras".into());
        }
    }
    let cross = cases::run_case("leftloc-3")?;
    if !cross.verdicts.iter().all(|v| v.verdict == Verdict::SeparableWrt) {
        p.push("leftloc-3 cross-check verdict".into());
    }
    Ok(p)
}

fn criterion_8() -> Result<Vec<String>> {
    let mut p = Vec::new();
    let mut rng = random::seeded(random::DEFAULT_SEED);
    let outcome = verify::full_space_reduction(100, 3, 1e-10, &mut rng)?;
    if !outcome.passed() {
        p.push(format!("{:e} ({})", outcome.max_deviation, outcome.witness));
    }
    let space = HilbertSpace::indexed(3);
    let basis: Vec<Ket> = (0..3).map(|i| Ket::basis(space.clone(), i)).collect::<Result<_>>()?;
    let identity = Operator::identity(space.clone());
    let mut worst: f64 = 0.0;
    for i in 0..100 {
        let stats = if i % 2 == 0 { Statistics::Boson } else { Statistics::Fermion };
        let pair = NoLabelPair::new(random::ket(space.clone(), &mut rng), random::ket(space.clone(), &mut rng), stats)?;
        let a = random::hermitian(space.clone(), &mut rng);
        let state: NoLabelState = pair.clone().into();
        let extended = expectation_extended(&state, &a)?;
        let extended_closed = expectation_extended_closed_form(&pair, &a)?;
        let reduced = expectation_reduced(&k_reduced_dm(&state, &basis)?, &a)?;
        let reduced_closed = expectation_reduced_closed_form(&pair, &identity, &a)?;
        worst = worst
            .max((extended - extended_closed).abs())
            .max((reduced - reduced_closed).abs())
            .max((extended - 2.0 * reduced).abs());
    }
    close(&mut p, "extended vs 2 x reduced trace", worst, 0.0, 1e-10);
    Ok(p)
}

fn criterion_9() -> Result<Vec<String>> {
    let mut p = Vec::new();
    let mut rng = random::seeded(random::DEFAULT_SEED);
    for outcome in [
        verify::embedding_consistency(200, 3, 1e-10, &mut rng)?,
        verify::basis_independence(20, 1e-9, &mut rng)?,
        verify::schmidt_reconstruction(200, 1e-10, &mut rng)?,
    ] {
        if !outcome.passed() {
            p.push(format!("{}: {:e} ({})", outcome.name, outcome.max_deviation, outcome.witness));
        }
    }
    Ok(p)
}

fn main() -> ExitCode {
    let mut gate = Gate { failures: 0 };
    gate.check("1  Psi+ s3(x)s3 correlation -1 vs product 0", criterion_1());
    gate.check("2  Bell-projector subalgebras: |00> entangled, Bell states separable", criterion_2());
    gate.check("3  number-state factorization (k = 0, 1, 2) and Bogoliubov violation", criterion_3());
    gate.check("4  CCR/CAR on untruncated sectors", criterion_4());
    gate.check("5  no-label factorization sides for eta = +1, -1", criterion_5());
    gate.check("6  left-localized reduced matrices and entropies", criterion_6());
    gate.check("7  extended projector correlations and P0/P1 separability", criterion_7());
    gate.check("8  full-space reduction and expectation closed forms", criterion_8());
    gate.check("9  embedding, basis independence and Schmidt suites", criterion_9());
    if gate.failures == 0 {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {} criteria failed", gate.failures);
        ExitCode::FAILURE
    }
}
