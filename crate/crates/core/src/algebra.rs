//! Operator subalgebras generated by finite sets of matrices, and the
//! factorization test `ω(x₁x₂) = ω(x₁)ω(x₂)` over a commuting pair of them.
//!
//! A [`Subalgebra`] is represented by its distinct monomials (products of
//! generators up to a degree bound). The defect `ω(x₁x₂) − ω(x₁)ω(x₂)` is
//! bilinear in `(x₁, x₂)`, so it vanishes on the pair of subalgebras iff it
//! vanishes on every pair of monomials. [`factorization_test`] also evaluates
//! seeded random hermitian combinations and reports them separately.
//!
//! Monomials are rescaled to unit operator norm before comparison. On
//! truncated bosonic spaces a subalgebra can carry a domain (the basis states
//! on which its products act exactly); norms, commutators and the state are
//! then all restricted to that domain.

use crate::error::{Error, Result};
use crate::hilbert::{commutator, expectation, tensor_op, Bell, HilbertSpace, Ket, Operator, C64};
use crate::random::{self, DEFAULT_SEED};
use crate::tol::{DEDUP, TOL};

pub const DEFAULT_DEGREE: usize = 4;
pub const DEFAULT_SAMPLES: usize = 64;

#[derive(Debug, Clone)]
pub struct Monomial {
    pub label: String,
    pub op: Operator,
}

impl Monomial {
    pub fn is_zero(&self) -> bool {
        self.op.frobenius_norm() <= DEDUP
    }
}

#[derive(Debug, Clone)]
pub struct Subalgebra {
    generators: Vec<Monomial>,
    degree_bound: usize,
    monomials: Vec<Monomial>,
    domain: Option<Vec<usize>>,
}

/// `generate` with generators labeled `g0, g1, …`.
pub fn generate(generators: &[Operator], degree_bound: usize) -> Result<Subalgebra> {
    let labeled = generators
        .iter()
        .enumerate()
        .map(|(i, g)| (format!("g{i}"), g.clone()))
        .collect();
    generate_labeled(labeled, degree_bound)
}

fn contains(list: &[Monomial], op: &Operator) -> bool {
    list.iter().any(|m| (m.op.matrix() - op.matrix()).norm() <= DEDUP)
}

/// The monomials of the algebra generated by `generators`, their adjoints
/// and the identity, up to products of length `degree_bound`.
pub fn generate_labeled(generators: Vec<(String, Operator)>, degree_bound: usize) -> Result<Subalgebra> {
    if degree_bound == 0 {
        return Err(Error::InvalidArgument("degree bound must be at least 1".into()));
    }
    let Some((_, first)) = generators.first() else {
        return Err(Error::InvalidArgument("at least one generator is required".into()));
    };
    let space = first.space().clone();
    let dim = first.dim();

    let mut gens: Vec<Monomial> = Vec::new();
    for (label, op) in generators {
        if op.dim() != dim {
            return Err(Error::Dim {
                expected: dim,
                found: op.dim(),
            });
        }
        let adjoint = op.adjoint();
        if !contains(&gens, &op) {
            gens.push(Monomial { label: label.clone(), op });
        }
        if !contains(&gens, &adjoint) {
            gens.push(Monomial {
                label: format!("{label}†"),
                op: adjoint,
            });
        }
    }

    let identity = Monomial {
        label: "1".into(),
        op: Operator::identity(space),
    };
    let mut monomials = vec![identity.clone()];
    let mut frontier = vec![identity];
    for _ in 0..degree_bound {
        let mut next = Vec::new();
        for m in &frontier {
            for g in &gens {
                let product = &m.op * &g.op;
                if contains(&monomials, &product) {
                    continue;
                }
                let label = if m.label == "1" {
                    g.label.clone()
                } else {
                    format!("{}·{}", m.label, g.label)
                };
                let monomial = Monomial { label, op: product };
                monomials.push(monomial.clone());
                next.push(monomial);
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }

    Ok(Subalgebra {
        generators: gens,
        degree_bound,
        monomials,
        domain: None,
    })
}

impl Subalgebra {
    /// Restricts all comparisons to the span of the listed basis states.
    pub fn with_domain(mut self, columns: Vec<usize>) -> Self {
        self.domain = Some(columns);
        self
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    pub fn degree_bound(&self) -> usize {
        self.degree_bound
    }

    /// Distinct monomials; index 0 is the identity.
    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.monomials[0].op.dim()
    }

    pub fn domain(&self) -> Option<&[usize]> {
        self.domain.as_deref()
    }

    pub fn index_of_label(&self, label: &str) -> Option<usize> {
        self.monomials.iter().position(|m| m.label == label)
    }

    /// Largest commutator norm among its own monomials.
    pub fn self_commutator_norm(&self) -> f64 {
        let columns = joint_domain(self, self);
        max_commutator(&self.monomials, &self.monomials, &columns)
    }
}

fn joint_domain(a: &Subalgebra, b: &Subalgebra) -> Vec<usize> {
    match (a.domain(), b.domain()) {
        (None, None) => (0..a.dim()).collect(),
        (Some(d), None) | (None, Some(d)) => d.to_vec(),
        (Some(x), Some(y)) => x.iter().copied().filter(|i| y.contains(i)).collect(),
    }
}

fn max_commutator(xs: &[Monomial], ys: &[Monomial], columns: &[usize]) -> f64 {
    let mut worst = 0.0f64;
    for x in xs {
        for y in ys {
            worst = worst.max(commutator(&x.op, &y.op).restricted_norm(columns));
        }
    }
    worst
}

/// Largest operator norm of `[x, y]` over monomial pairs `x ∈ a`, `y ∈ b`.
pub fn subalgebras_commute(a: &Subalgebra, b: &Subalgebra) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::Dim {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    Ok(max_commutator(&a.monomials, &b.monomials, &joint_domain(a, b)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    SeparableWrt,
    EntangledWrt,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::SeparableWrt => "separable_wrt",
            Verdict::EntangledWrt => "entangled_wrt",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "separable_wrt" => Some(Verdict::SeparableWrt),
            "entangled_wrt" => Some(Verdict::EntangledWrt),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FactorizationOptions {
    pub tol: f64,
    pub samples: usize,
    pub seed: u64,
}

impl Default for FactorizationOptions {
    fn default() -> Self {
        Self {
            tol: TOL,
            samples: DEFAULT_SAMPLES,
            seed: DEFAULT_SEED,
        }
    }
}

impl FactorizationOptions {
    pub fn with_tol(tol: f64) -> Self {
        Self { tol, ..Self::default() }
    }
}

/// One row of the monomial table; all operators rescaled to unit norm.
#[derive(Debug, Clone)]
pub struct PairEntry {
    pub first: usize,
    pub second: usize,
    pub joint: C64,
    pub first_mean: C64,
    pub second_mean: C64,
    pub violation: f64,
    /// Both monomials are hermitian (observables); non-hermitian rows are
    /// still part of the test.
    pub hermitian: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Witness {
    Monomials { first: usize, second: usize },
    Combination { sample: usize },
}

#[derive(Debug, Clone)]
pub struct FactorizationReport {
    pub max_violation: f64,
    pub witness: Witness,
    pub monomial_max_violation: f64,
    pub witness_pair: (usize, usize),
    pub combination_max_violation: f64,
    pub pairs: Vec<PairEntry>,
    pub verdict: Verdict,
    pub commutator_norm: f64,
    pub samples: usize,
    pub seed: u64,
}

impl FactorizationReport {
    pub fn pair(&self, first: usize, second: usize) -> Option<&PairEntry> {
        self.pairs.iter().find(|p| p.first == first && p.second == second)
    }
}

struct Scaled {
    index: usize,
    op: Operator,
    hermitian: bool,
}

fn unit_scaled(sub: &Subalgebra, columns: &[usize]) -> Vec<Scaled> {
    sub.monomials
        .iter()
        .enumerate()
        .filter_map(|(index, m)| {
            let norm = m.op.restricted_norm(columns);
            (norm > DEDUP).then(|| Scaled {
                index,
                op: m.op.scale(C64::new(1.0 / norm, 0.0)),
                hermitian: m.op.is_hermitian(DEDUP),
            })
        })
        .collect()
}

fn combination(scaled: &[Scaled], coefficients: &[C64], columns: &[usize]) -> Option<Operator> {
    let mut sum = Operator::zeros(scaled.first()?.op.space().clone());
    for (m, &c) in scaled.iter().zip(coefficients) {
        sum = &sum + &m.op.scale(c);
    }
    let h = sum.hermitian_part();
    let norm = h.restricted_norm(columns);
    (norm > DEDUP).then(|| h.scale(C64::new(1.0 / norm, 0.0)))
}

fn covariance(state: &Ket, x1: &Operator, x2: &Operator) -> (C64, C64, C64, f64) {
    let left = x1.adjoint().apply(state);
    let right = x2.apply(state);
    let joint = left.inner(&right);
    let m1 = state.inner(&x1.apply(state));
    let m2 = state.inner(&right);
    (joint, m1, m2, (joint - m1 * m2).norm())
}

/// Checks `ω(x₁x₂) = ω(x₁)ω(x₂)` for the vector state `state` over every pair
/// of monomials of `a` and `b`, plus `options.samples` pairs of random
/// hermitian combinations drawn from `options.seed`.
///
/// The two subalgebras must commute; otherwise the verdict would not be
/// meaningful and [`Error::NonCommuting`] is returned.
pub fn factorization_test(
    state: &Ket,
    a: &Subalgebra,
    b: &Subalgebra,
    options: &FactorizationOptions,
) -> Result<FactorizationReport> {
    if state.dim() != a.dim() {
        return Err(Error::Dim {
            expected: a.dim(),
            found: state.dim(),
        });
    }
    if !state.is_normalized(TOL) {
        return Err(Error::Norm(state.norm()));
    }
    let commutator_norm = subalgebras_commute(a, b)?;
    if commutator_norm > options.tol {
        return Err(Error::NonCommuting(commutator_norm));
    }
    let columns = joint_domain(a, b);
    let outside: f64 = (0..state.dim())
        .filter(|i| !columns.contains(i))
        .map(|i| state.amplitude(i).norm_sqr())
        .sum();
    if outside.sqrt() > options.tol {
        return Err(Error::InvalidArgument(
            "state has weight outside the domain where the subalgebras act exactly".into(),
        ));
    }

    let xs = unit_scaled(a, &columns);
    let ys = unit_scaled(b, &columns);

    let mut pairs = Vec::with_capacity(xs.len() * ys.len());
    let mut monomial_max = 0.0f64;
    let mut witness_pair = (0, 0);
    for x in &xs {
        for y in &ys {
            let (joint, first_mean, second_mean, violation) = covariance(state, &x.op, &y.op);
            if violation > monomial_max {
                monomial_max = violation;
                witness_pair = (x.index, y.index);
            }
            pairs.push(PairEntry {
                first: x.index,
                second: y.index,
                joint,
                first_mean,
                second_mean,
                violation,
                hermitian: x.hermitian && y.hermitian,
            });
        }
    }

    // Each sample draws two coefficient vectors (c, c') of a common length and
    // evaluates both assignments, so swapping `a` and `b` yields the same set.
    let mut rng = random::seeded(options.seed);
    let width = xs.len().max(ys.len());
    let mut combination_max = 0.0f64;
    let mut combination_witness = 0;
    for sample in 0..options.samples {
        let c: Vec<C64> = (0..width).map(|_| random::complex(&mut rng)).collect();
        let c_prime: Vec<C64> = (0..width).map(|_| random::complex(&mut rng)).collect();
        let assignments = [(&c, &c_prime), (&c_prime, &c)];
        for (ca, cb) in assignments {
            let (Some(x), Some(y)) = (combination(&xs, ca, &columns), combination(&ys, cb, &columns)) else {
                continue;
            };
            let violation = covariance(state, &x, &y).3;
            if violation > combination_max {
                combination_max = violation;
                combination_witness = sample;
            }
        }
    }
    let (max_violation, witness) = if combination_max > monomial_max {
        (combination_max, Witness::Combination { sample: combination_witness })
    } else {
        (
            monomial_max,
            Witness::Monomials {
                first: witness_pair.0,
                second: witness_pair.1,
            },
        )
    };
    let verdict = if max_violation > options.tol {
        Verdict::EntangledWrt
    } else {
        Verdict::SeparableWrt
    };
    Ok(FactorizationReport {
        max_violation,
        witness,
        monomial_max_violation: monomial_max,
        witness_pair,
        combination_max_violation: combination_max,
        pairs,
        verdict,
        commutator_norm,
        samples: options.samples,
        seed: options.seed,
    })
}

/// The matrix units `|i⟩⟨j|` of a space; they generate the full matrix algebra.
pub fn matrix_units(space: &std::sync::Arc<HilbertSpace>) -> Vec<(String, Operator)> {
    let n = space.dim();
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let ket = Ket::basis(space.clone(), i).expect("index in range");
            let bra = Ket::basis(space.clone(), j).expect("index in range");
            let label = format!("|{}⟩⟨{}|", space.labels()[i], space.labels()[j]);
            out.push((label, Operator::outer(&ket, &bra)));
        }
    }
    out
}

/// The particle-local pair `(M_{d1} ⊗ 1, 1 ⊗ M_{d2})`.
pub fn particle_local_pair(d1: usize, d2: usize) -> Result<(Subalgebra, Subalgebra)> {
    let first = HilbertSpace::indexed(d1);
    let second = HilbertSpace::indexed(d2);
    let id1 = Operator::identity(first.clone());
    let id2 = Operator::identity(second.clone());
    let left = matrix_units(&first)
        .into_iter()
        .map(|(l, op)| (format!("{l}⊗1"), tensor_op(&op, &id2)))
        .collect();
    let right = matrix_units(&second)
        .into_iter()
        .map(|(l, op)| (format!("1⊗{l}"), tensor_op(&id1, &op)))
        .collect();
    Ok((
        generate_labeled(left, DEFAULT_DEGREE)?,
        generate_labeled(right, DEFAULT_DEGREE)?,
    ))
}

/// `𝒜₊` generated by `P^Ψ₊, P^Φ₊` and `𝒜₋` generated by `P^Ψ₋, P^Φ₋`.
pub fn bell_subalgebras() -> Result<(Subalgebra, Subalgebra)> {
    let proj = |b: Bell| (format!("P_{}", b.name()), Operator::projector(&b.ket()));
    Ok((
        generate_labeled(vec![proj(Bell::PsiPlus), proj(Bell::PhiPlus)], DEFAULT_DEGREE)?,
        generate_labeled(vec![proj(Bell::PsiMinus), proj(Bell::PhiMinus)], DEFAULT_DEGREE)?,
    ))
}

/// `⟨ψ|x₁x₂|ψ⟩ − ⟨ψ|x₁|ψ⟩⟨ψ|x₂|ψ⟩` without rescaling.
pub fn raw_covariance(state: &Ket, x1: &Operator, x2: &Operator) -> Result<C64> {
    Ok(expectation(state, &(x1 * x2))? - expectation(state, x1)? * expectation(state, x2)?)
}
