//! Named, parameter-free case studies with hard-coded expected values.
//!
//! Each case returns a [`CaseResult`] listing computed against expected
//! quantities and the subalgebra verdicts it checks. Random inputs are drawn
//! from a fixed seed and recorded under `parameters`.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_1_SQRT_2;
use std::sync::Arc;

use crate::algebra::{
    bell_subalgebras, factorization_test, generate_labeled, particle_local_pair, FactorizationOptions, Subalgebra,
    Verdict, DEFAULT_DEGREE,
};
use crate::error::{Error, Result};
use crate::fock::{
    annihilation_op, bogoliubov_mode_vectors, build_fock, combine_words, mode_number_state, mode_words, number_op,
    number_state, word_count, FockSpace, Statistics,
};
use crate::hilbert::{expectation, pauli, re, tensor_op, Bell, HilbertSpace, Ket, Operator, C64};
use crate::nolabel::{
    entanglement_entropy, extended_correlation, extended_first_quantized, extended_pair_expectation, k_reduced_dm,
    state_to_first_quantized, NoLabelPair, NoLabelState,
};
use crate::random;

#[derive(Debug, Clone, PartialEq)]
pub struct Quantity {
    pub name: String,
    pub computed: C64,
    pub expected: C64,
    pub provenance: String,
}

impl Quantity {
    pub fn deviation(&self) -> f64 {
        (self.computed - self.expected).norm()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerdictEntry {
    pub context: String,
    pub verdict: Verdict,
    pub expected: Verdict,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CaseResult {
    pub case_id: String,
    pub quantities: Vec<Quantity>,
    pub max_abs_deviation: f64,
    pub verdicts: Vec<VerdictEntry>,
    pub parameters: BTreeMap<String, Vec<C64>>,
}

impl CaseResult {
    pub fn verdicts_match(&self) -> bool {
        self.verdicts.iter().all(|v| v.verdict == v.expected)
    }

    pub fn passed(&self, tolerance: f64) -> bool {
        self.max_abs_deviation <= tolerance && self.verdicts_match()
    }

    pub fn quantity(&self, name: &str) -> Option<&Quantity> {
        self.quantities.iter().find(|q| q.name == name)
    }

    pub fn verdict(&self, context: &str) -> Option<&VerdictEntry> {
        self.verdicts.iter().find(|v| v.context == context)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct CaseInfo {
    pub id: &'static str,
    pub description: &'static str,
    pub topic: &'static str,
    run: fn() -> Result<CaseResult>,
}

/// Sorted by id.
static REGISTRY: &[CaseInfo] = &[
    CaseInfo {
        id: "bell-particle-local",
        description: "Psi+ correlations of sigma3 (x) sigma3 against the product of marginals",
        topic: "Bell states, particle-local observables",
        run: bell_particle_local,
    },
    CaseInfo {
        id: "bell-vs-Apm",
        description: "all four Bell states factorize over the Bell-projector subalgebras",
        topic: "Bell states, Bell-projector bipartition",
        run: bell_vs_apm,
    },
    CaseInfo {
        id: "doublewell-bogoliubov",
        description: "|k=1, N=2> is entangled for the delocalized modes b+-",
        topic: "double well, Bogoliubov modes",
        run: doublewell_bogoliubov,
    },
    CaseInfo {
        id: "doublewell-number-state",
        description: "<k|PQ|k> = <k|P|k><k|Q|k> for random left/right polynomials",
        topic: "double well, left/right mode algebras",
        run: doublewell_number_state,
    },
    CaseInfo {
        id: "leftloc-1",
        description: "|L,0;R,1>: left-reduced matrix and entropy 0",
        topic: "no-label, left localization",
        run: leftloc_1,
    },
    CaseInfo {
        id: "leftloc-2",
        description: "doubly occupied left level: left-reduced matrix and entropy 0",
        topic: "no-label, left localization",
        run: leftloc_2,
    },
    CaseInfo {
        id: "leftloc-3",
        description: "|L,0;L,1>: left-reduced matrix, entropy 1, yet separable for P0/P1",
        topic: "no-label, left localization",
        run: leftloc_3,
    },
    CaseInfo {
        id: "leftloc-projector-1",
        description: "|L,0;R,1> with extended P+-: (0, 1/4)",
        topic: "no-label, extended projector correlations",
        run: leftloc_projector_1,
    },
    CaseInfo {
        id: "leftloc-projector-2",
        description: "|L,1;L,1> with extended P+-: (1/2, 1)",
        topic: "no-label, extended projector correlations",
        run: leftloc_projector_2,
    },
    CaseInfo {
        id: "leftloc-projector-3",
        description: "|L,0;L,1> with extended P0, P1: (1, 1), separable",
        topic: "no-label, extended projector correlations",
        run: leftloc_projector_3,
    },
    CaseInfo {
        id: "nolabel-factor-1",
        description: "O1, O2 projectors on the constituents: both sides vanish",
        topic: "no-label, factorization of extended observables",
        run: nolabel_factor_1,
    },
    CaseInfo {
        id: "nolabel-factor-2",
        description: "O1, O2 projectors on (phi1 +- phi2)/sqrt2: (-eta/2, 1/2)",
        topic: "no-label, factorization of extended observables",
        run: nolabel_factor_2,
    },
    CaseInfo {
        id: "nolabel-factor-3",
        description: "O1, O2 projectors on (phi1 +- phi3)/sqrt2: (0, 1/4)",
        topic: "no-label, factorization of extended observables",
        run: nolabel_factor_3,
    },
    CaseInfo {
        id: "product-vs-Apm",
        description: "|0>(x)|0> against the Bell-projector subalgebras",
        topic: "product state, Bell-projector bipartition",
        run: product_vs_apm,
    },
];

pub fn list() -> &'static [CaseInfo] {
    REGISTRY
}

pub fn run_case(case_id: &str) -> Result<CaseResult> {
    let info = REGISTRY
        .iter()
        .find(|c| c.id == case_id)
        .ok_or_else(|| Error::UnknownCase(case_id.to_string()))?;
    (info.run)()
}

pub fn run_all() -> Result<Vec<CaseResult>> {
    REGISTRY.iter().map(|c| (c.run)()).collect()
}

struct Builder {
    result: CaseResult,
}

impl Builder {
    fn new(case_id: &str) -> Self {
        Self {
            result: CaseResult {
                case_id: case_id.to_string(),
                quantities: Vec::new(),
                max_abs_deviation: 0.0,
                verdicts: Vec::new(),
                parameters: BTreeMap::new(),
            },
        }
    }

    fn complex(&mut self, name: impl Into<String>, computed: C64, expected: C64, provenance: &str) {
        self.result.quantities.push(Quantity {
            name: name.into(),
            computed,
            expected,
            provenance: provenance.to_string(),
        });
    }

    fn real(&mut self, name: impl Into<String>, computed: f64, expected: f64, provenance: &str) {
        self.complex(name, re(computed), re(expected), provenance);
    }

    fn verdict(&mut self, context: impl Into<String>, verdict: Verdict, expected: Verdict) {
        self.result.verdicts.push(VerdictEntry {
            context: context.into(),
            verdict,
            expected,
        });
    }

    fn parameter(&mut self, name: &str, values: Vec<C64>) {
        self.result.parameters.insert(name.to_string(), values);
    }

    fn finish(mut self) -> CaseResult {
        self.result.max_abs_deviation = self.result.quantities.iter().map(Quantity::deviation).fold(0.0, f64::max);
        self.result
    }
}

fn verdict_for(state: &Ket, a: &Subalgebra, b: &Subalgebra) -> Result<Verdict> {
    Ok(factorization_test(state, a, b, &FactorizationOptions::default())?.verdict)
}

fn bell_particle_local() -> Result<CaseResult> {
    let mut out = Builder::new("bell-particle-local");
    let psi = Bell::PsiPlus.ket();
    let id = pauli::identity();
    let joint = expectation(&psi, &tensor_op(&pauli::z(), &pauli::z()))?;
    let first = expectation(&psi, &tensor_op(&pauli::z(), &id))?;
    let second = expectation(&psi, &tensor_op(&id, &pauli::z()))?;
    out.complex("<Psi+|s3(x)s3|Psi+>", joint, re(-1.0), "analytic: Psi+ is anticorrelated in the s3 basis");
    out.complex(
        "<Psi+|s3(x)1|Psi+><Psi+|1(x)s3|Psi+>",
        first * second,
        re(0.0),
        "analytic: both marginals of Psi+ are maximally mixed",
    );
    let (a, b) = particle_local_pair(2, 2)?;
    out.verdict("Psi+ vs particle-local algebras", verdict_for(&psi, &a, &b)?, Verdict::EntangledWrt);
    Ok(out.finish())
}

fn product_state() -> Ket {
    let zero = Ket::basis(HilbertSpace::qubit(), 0).expect("qubit basis");
    crate::hilbert::tensor_ket(&zero, &zero)
}

fn product_vs_apm() -> Result<CaseResult> {
    let mut out = Builder::new("product-vs-Apm");
    let state = product_state();
    let p_plus = Operator::projector(&Bell::PhiPlus.ket());
    let p_minus = Operator::projector(&Bell::PhiMinus.ket());
    out.complex(
        "<00|P_Phi+ P_Phi-|00>",
        expectation(&state, &(&p_plus * &p_minus))?,
        re(0.0),
        "analytic: P_Phi+ and P_Phi- are orthogonal projectors",
    );
    out.complex(
        "<00|P_Phi+|00><00|P_Phi-|00>",
        expectation(&state, &p_plus)? * expectation(&state, &p_minus)?,
        re(0.25),
        "analytic: |00> = (Phi+ + Phi-)/sqrt2, so each marginal is 1/2",
    );
    let (a, b) = bell_subalgebras()?;
    let report = factorization_test(&state, &a, &b, &FactorizationOptions::default())?;
    out.real(
        "monomial max violation",
        report.monomial_max_violation,
        0.25,
        "analytic: attained by the pair (P_Phi+, P_Phi-)",
    );
    out.verdict("|00> vs (A+, A-)", report.verdict, Verdict::EntangledWrt);
    let (pa, pb) = particle_local_pair(2, 2)?;
    out.verdict("|00> vs particle-local algebras", verdict_for(&state, &pa, &pb)?, Verdict::SeparableWrt);
    Ok(out.finish())
}

fn bell_vs_apm() -> Result<CaseResult> {
    let mut out = Builder::new("bell-vs-Apm");
    let (a, b) = bell_subalgebras()?;
    for bell in Bell::ALL {
        let report = factorization_test(&bell.ket(), &a, &b, &FactorizationOptions::default())?;
        out.real(
            format!("{} max violation", bell.name()),
            report.max_violation,
            0.0,
            "analytic: a Bell state is an eigenvector of every Bell projector",
        );
        out.verdict(format!("{} vs (A+, A-)", bell.name()), report.verdict, Verdict::SeparableWrt);
    }
    Ok(out.finish())
}

/// Mode subalgebra generated by one annihilator, restricted to the sectors on
/// which words of length `2 * degree` act without hitting the cutoff.
fn mode_subalgebra(space: &FockSpace, label: &str, annihilator: Operator, degree: usize) -> Result<Subalgebra> {
    Ok(generate_labeled(vec![(label.to_string(), annihilator)], degree)?.with_domain(space.exact_domain(2 * degree)))
}

const FOCK_DEGREE: usize = 2;

/// Largest `|⟨k|PQ|k⟩ − ⟨k|P|k⟩⟨k|Q|k⟩|` over `draws` random polynomials `P`
/// in `a_L, a†_L` and `Q` in `a_R, a†_R` of degree `degree`, with cutoff
/// `n + 4`.
#[derive(Debug, Clone)]
pub struct NumberStateCheck {
    pub max_deviation: f64,
    pub left_coefficients: Vec<Vec<C64>>,
    pub right_coefficients: Vec<Vec<C64>>,
}

pub fn number_state_factorization(k: usize, n: usize, degree: usize, draws: usize, seed: u64) -> Result<NumberStateCheck> {
    let space = build_fock(Statistics::Boson, 2, n + 4)?;
    let state = number_state(&space, k, n)?;
    let mut rng = random::seeded(seed);
    let mut check = NumberStateCheck {
        max_deviation: 0.0,
        left_coefficients: Vec::with_capacity(draws),
        right_coefficients: Vec::with_capacity(draws),
    };
    let left_words = mode_words(&space, 0, degree)?;
    let right_words = mode_words(&space, 1, degree)?;
    for _ in 0..draws {
        let left: Vec<C64> = (0..word_count(degree)).map(|_| random::complex(&mut rng)).collect();
        let right: Vec<C64> = (0..word_count(degree)).map(|_| random::complex(&mut rng)).collect();
        let p = combine_words(&left_words, &left)?;
        let q = combine_words(&right_words, &right)?;
        let joint = expectation(&state, &(&p * &q))?;
        let product = expectation(&state, &p)? * expectation(&state, &q)?;
        check.max_deviation = check.max_deviation.max((joint - product).norm());
        check.left_coefficients.push(left);
        check.right_coefficients.push(right);
    }
    Ok(check)
}

fn doublewell_number_state() -> Result<CaseResult> {
    let (k, n, degree, draws) = (1, 2, 3, 50);
    let mut out = Builder::new("doublewell-number-state");
    let check = number_state_factorization(k, n, degree, draws, random::DEFAULT_SEED)?;
    out.real(
        "max |<k|PQ|k> - <k|P|k><k|Q|k>|",
        check.max_deviation,
        0.0,
        "analytic: |k> is a product of left and right number states",
    );
    out.parameter("seed", vec![re(random::DEFAULT_SEED as f64)]);
    out.parameter("k, N, cutoff, degree, draws", vec![re(k as f64), re(n as f64), re((n + 4) as f64), re(degree as f64), re(draws as f64)]);
    out.parameter("P coefficients", check.left_coefficients.concat());
    out.parameter("Q coefficients", check.right_coefficients.concat());

    let space = build_fock(Statistics::Boson, 2, n + 4)?;
    let state = number_state(&space, k, n)?;
    let a = mode_subalgebra(&space, "a_L", space.annihilator(0), FOCK_DEGREE)?;
    let b = mode_subalgebra(&space, "a_R", space.annihilator(1), FOCK_DEGREE)?;
    out.verdict("|1,1> vs (A_L, A_R)", verdict_for(&state, &a, &b)?, Verdict::SeparableWrt);
    Ok(out.finish())
}

fn doublewell_bogoliubov() -> Result<CaseResult> {
    let (k, n) = (1, 2);
    let mut out = Builder::new("doublewell-bogoliubov");
    let space = build_fock(Statistics::Boson, 2, n + 4)?;
    let state = number_state(&space, k, n)?;
    let (plus, minus) = bogoliubov_mode_vectors(&space)?;
    let modes = [plus.clone(), minus.clone()];
    let amplitude = |occ: [usize; 2]| -> Result<C64> { Ok(mode_number_state(&space, &modes, &occ)?.inner(&state)) };
    let expansion = "analytic: a_L+ a_R+ = (b_+^+2 - b_-^+2)/2";
    out.complex("<2_+,0_-|1,1>", amplitude([2, 0])?, re(FRAC_1_SQRT_2), expansion);
    out.complex("<1_+,1_-|1,1>", amplitude([1, 1])?, re(0.0), expansion);
    out.complex("<0_+,2_-|1,1>", amplitude([0, 2])?, re(-FRAC_1_SQRT_2), expansion);

    let n_plus = number_op(&space, &plus)?;
    let n_minus = number_op(&space, &minus)?;
    let joint = expectation(&state, &(&n_plus * &n_minus))?;
    let mean_plus = expectation(&state, &n_plus)?;
    let mean_minus = expectation(&state, &n_minus)?;
    out.complex("<n_+ n_->", joint, re(0.0), expansion);
    out.complex("<n_+>", mean_plus, re(1.0), expansion);
    out.complex("<n_->", mean_minus, re(1.0), expansion);
    out.complex("<n_+ n_-> - <n_+><n_->", joint - mean_plus * mean_minus, re(-1.0), expansion);

    let a = mode_subalgebra(&space, "b_+", annihilation_op(&space, &plus)?.op, FOCK_DEGREE)?;
    let b = mode_subalgebra(&space, "b_-", annihilation_op(&space, &minus)?.op, FOCK_DEGREE)?;
    out.verdict("|1,1> vs (B_+, B_-)", verdict_for(&state, &a, &b)?, Verdict::EntangledWrt);
    Ok(out.finish())
}

const STATISTICS: [Statistics; 2] = [Statistics::Boson, Statistics::Fermion];

/// `φ_j` for the factorization cases: the standard basis of a 3-dim space.
fn phis() -> Vec<Ket> {
    let space = HilbertSpace::new(["phi1", "phi2", "phi3"]).expect("distinct labels");
    (0..3).map(|i| Ket::basis(space.clone(), i).expect("in range")).collect()
}

fn half_sum(a: &Ket, b: &Ket, sign: f64) -> Ket {
    (a + &b.scale(re(sign))).scale(re(FRAC_1_SQRT_2))
}

/// Verdict of the factorization test for the subalgebras generated by the
/// extensions of `o1` and `o2`, in first quantization.
pub fn extended_verdict(state: &NoLabelState, o1: &Operator, o2: &Operator) -> Result<Verdict> {
    let fq = state_to_first_quantized(state).normalized()?;
    let a = generate_labeled(vec![("O1".to_string(), extended_first_quantized(o1))], DEFAULT_DEGREE)?;
    let b = generate_labeled(vec![("O2".to_string(), extended_first_quantized(o2))], DEFAULT_DEGREE)?;
    verdict_for(&fq, &a, &b)
}

fn factor_case(id: &str, o1: &Operator, o2: &Operator, expected: impl Fn(f64) -> (f64, f64, Verdict), provenance: &str) -> Result<CaseResult> {
    let mut out = Builder::new(id);
    let phi = phis();
    for stats in STATISTICS {
        let state: NoLabelState = NoLabelPair::new(phi[0].clone(), phi[1].clone(), stats)?.into();
        let (lhs, rhs) = extended_pair_expectation(&state, o1, o2)?;
        let (want_lhs, want_rhs, want_verdict) = expected(stats.eta());
        out.real(format!("lhs ({})", stats.name()), lhs, want_lhs, provenance);
        out.real(format!("rhs ({})", stats.name()), rhs, want_rhs, provenance);
        out.verdict(
            format!("|phi1,phi2> ({}) vs extended (O1, O2)", stats.name()),
            extended_verdict(&state, o1, o2)?,
            want_verdict,
        );
    }
    Ok(out.finish())
}

fn nolabel_factor_1() -> Result<CaseResult> {
    let phi = phis();
    factor_case(
        "nolabel-factor-1",
        &Operator::projector(&phi[0]),
        &Operator::projector(&phi[1]),
        |_| (0.0, 0.0, Verdict::SeparableWrt),
        "analytic: O1 O2 = 0 and each constituent sees only one projector",
    )
}

fn nolabel_factor_2() -> Result<CaseResult> {
    let phi = phis();
    factor_case(
        "nolabel-factor-2",
        &Operator::projector(&half_sum(&phi[0], &phi[1], 1.0)),
        &Operator::projector(&half_sum(&phi[0], &phi[1], -1.0)),
        |eta| {
            let verdict = if eta < 0.0 { Verdict::SeparableWrt } else { Verdict::EntangledWrt };
            (-eta / 2.0, 0.5, verdict)
        },
        "analytic: lhs = 2 eta Re(<phi1|O1|phi2><phi2|O2|phi1>) = -eta/2, rhs = 2 (1/2)(1/2)",
    )
}

fn nolabel_factor_3() -> Result<CaseResult> {
    let phi = phis();
    factor_case(
        "nolabel-factor-3",
        &Operator::projector(&half_sum(&phi[0], &phi[2], 1.0)),
        &Operator::projector(&half_sum(&phi[0], &phi[2], -1.0)),
        |_| (0.0, 0.25, Verdict::EntangledWrt),
        "analytic: only phi1 overlaps psi+-, giving rhs = (1/2)(1/2)",
    )
}

/// The four-level single-particle space `{L,0; L,1; R,0; R,1}`.
pub fn leftloc_space() -> Arc<HilbertSpace> {
    HilbertSpace::new(["L,0", "L,1", "R,0", "R,1"]).expect("distinct labels")
}

fn level(space: &Arc<HilbertSpace>, label: &str) -> Ket {
    Ket::basis_labeled(space.clone(), label).expect("registered label")
}

fn left_basis(space: &Arc<HilbertSpace>) -> Vec<Ket> {
    vec![level(space, "L,0"), level(space, "L,1")]
}

fn leftloc_pair(a: &str, b: &str, stats: Statistics) -> Result<NoLabelState> {
    let space = leftloc_space();
    Ok(NoLabelPair::new(level(&space, a), level(&space, b), stats)?.into())
}

fn record_reduced(out: &mut Builder, tag: &str, state: &NoLabelState, expected: &Operator, provenance: &str) -> Result<()> {
    let space = leftloc_space();
    let basis = left_basis(&space);
    let rho = k_reduced_dm(state, &basis)?.matrix;
    let labels = space.labels();
    for i in 0..labels.len() {
        for j in 0..labels.len() {
            out.complex(
                format!("rho_L[{}|{}] {tag}", labels[i], labels[j]),
                rho.entry(i, j),
                expected.entry(i, j),
                provenance,
            );
        }
    }
    out.real(format!("E_L {tag}"), entanglement_entropy(state, &basis)?, expected_entropy(expected), provenance);
    Ok(())
}

/// Entropy of the diagonal expected matrices used below.
fn expected_entropy(rho: &Operator) -> f64 {
    (0..rho.dim())
        .map(|i| rho.entry(i, i).re)
        .filter(|&p| p > 0.0)
        .map(|p| -p * p.log2())
        .sum()
}

fn leftloc_1() -> Result<CaseResult> {
    let mut out = Builder::new("leftloc-1");
    let space = leftloc_space();
    let expected = Operator::projector(&level(&space, "R,1"));
    for stats in STATISTICS {
        let state = leftloc_pair("L,0", "R,1", stats)?;
        record_reduced(
            &mut out,
            &format!("({})", stats.name()),
            &state,
            &expected,
            "analytic: only |L,0> survives the left projection, leaving |R,1>",
        )?;
    }
    Ok(out.finish())
}

fn leftloc_2() -> Result<CaseResult> {
    let mut out = Builder::new("leftloc-2");
    let space = leftloc_space();
    let provenance = "analytic: a doubly occupied level reduces to itself";
    let first = leftloc_pair("L,0", "L,0", Statistics::Boson)?.scale(re(FRAC_1_SQRT_2));
    record_reduced(&mut out, "(|L,0;L,0>/sqrt2)", &first, &Operator::projector(&level(&space, "L,0")), provenance)?;
    let second = leftloc_pair("L,1", "L,1", Statistics::Boson)?;
    out.real("<L,1;L,1|L,1;L,1>", second.norm_sq(), 2.0, "analytic: N = 1 + |<L,1|L,1>|^2 for bosons");
    record_reduced(&mut out, "(|L,1;L,1>)", &second, &Operator::projector(&level(&space, "L,1")), provenance)?;
    Ok(out.finish())
}

fn leftloc_3() -> Result<CaseResult> {
    let mut out = Builder::new("leftloc-3");
    let space = leftloc_space();
    let expected = (&Operator::projector(&level(&space, "L,0")) + &Operator::projector(&level(&space, "L,1"))).scale(re(0.5));
    let p0 = Operator::projector(&level(&space, "L,0"));
    let p1 = Operator::projector(&level(&space, "L,1"));
    for stats in STATISTICS {
        let state = leftloc_pair("L,0", "L,1", stats)?;
        record_reduced(
            &mut out,
            &format!("({})", stats.name()),
            &state,
            &expected,
            "analytic: both constituents lie in the left subspace with equal weight",
        )?;
        out.verdict(
            format!("|L,0;L,1> ({}) vs extended (P_L0, P_L1)", stats.name()),
            extended_verdict(&state, &p0, &p1)?,
            Verdict::SeparableWrt,
        );
    }
    Ok(out.finish())
}

fn record_correlation(
    out: &mut Builder,
    tag: &str,
    state: &NoLabelState,
    o1: &Operator,
    o2: &Operator,
    expected: (f64, f64),
    provenance: &str,
) -> Result<()> {
    let (joint, product) = extended_correlation(state, o1, o2)?;
    out.real(format!("<O1 O2> {tag}"), joint, expected.0, provenance);
    out.real(format!("<O1><O2> {tag}"), product, expected.1, provenance);
    Ok(())
}

fn left_pm() -> (Operator, Operator) {
    let space = leftloc_space();
    let (l0, l1) = (level(&space, "L,0"), level(&space, "L,1"));
    (Operator::projector(&half_sum(&l0, &l1, 1.0)), Operator::projector(&half_sum(&l0, &l1, -1.0)))
}

fn leftloc_projector_1() -> Result<CaseResult> {
    let mut out = Builder::new("leftloc-projector-1");
    let (p_plus, p_minus) = left_pm();
    for stats in STATISTICS {
        let state = leftloc_pair("L,0", "R,1", stats)?;
        let tag = format!("({})", stats.name());
        record_correlation(
            &mut out,
            &tag,
            &state,
            &p_plus,
            &p_minus,
            (0.0, 0.25),
            "analytic: |L,0> has weight 1/2 on each of |L,+>, |L,->",
        )?;
        out.verdict(format!("|L,0;R,1> {tag} vs extended (P_L+, P_L-)"), extended_verdict(&state, &p_plus, &p_minus)?, Verdict::EntangledWrt);
    }
    Ok(out.finish())
}

fn leftloc_projector_2() -> Result<CaseResult> {
    let mut out = Builder::new("leftloc-projector-2");
    let (p_plus, p_minus) = left_pm();
    let state = leftloc_pair("L,1", "L,1", Statistics::Boson)?;
    record_correlation(
        &mut out,
        "(bosons)",
        &state,
        &p_plus,
        &p_minus,
        (0.5, 1.0),
        "analytic: two particles in |L,1>, each with weight 1/2 on |L,+> and |L,->",
    )?;
    out.verdict("|L,1;L,1> vs extended (P_L+, P_L-)", extended_verdict(&state, &p_plus, &p_minus)?, Verdict::EntangledWrt);
    Ok(out.finish())
}

fn leftloc_projector_3() -> Result<CaseResult> {
    let mut out = Builder::new("leftloc-projector-3");
    let space = leftloc_space();
    let p0 = Operator::projector(&level(&space, "L,0"));
    let p1 = Operator::projector(&level(&space, "L,1"));
    for stats in STATISTICS {
        let state = leftloc_pair("L,0", "L,1", stats)?;
        let tag = format!("({})", stats.name());
        record_correlation(
            &mut out,
            &tag,
            &state,
            &p0,
            &p1,
            (1.0, 1.0),
            "analytic: the state is a joint eigenvector of both extended projectors with eigenvalue 1",
        )?;
        out.verdict(format!("|L,0;L,1> {tag} vs extended (P_L0, P_L1)"), extended_verdict(&state, &p0, &p1)?, Verdict::SeparableWrt);
    }
    Ok(out.finish())
}
