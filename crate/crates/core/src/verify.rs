//! Seeded property suites over random inputs.
//!
//! Each suite reports the largest deviation it saw and the input that
//! produced it.

use crate::error::Result;
use crate::fock::{build_fock, check_ccr_car, Statistics};
use crate::hilbert::{partial_trace, schmidt_decompose, tensor_ket, HilbertSpace, Ket, Operator, Subsystem};
use crate::nolabel::{
    entanglement_entropy, k_reduced_dm, k_reduced_dm_closed_form, nl_inner, to_first_quantized, NoLabelPair,
    NoLabelState,
};
use crate::random::{self, SeededRng};

#[derive(Debug, Clone, PartialEq)]
pub struct PropertyOutcome {
    pub name: String,
    pub checks: usize,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub witness: String,
}

impl PropertyOutcome {
    pub fn passed(&self) -> bool {
        self.max_deviation <= self.tolerance
    }
}

struct Tracker {
    outcome: PropertyOutcome,
}

impl Tracker {
    fn new(name: &str, tolerance: f64) -> Self {
        Self {
            outcome: PropertyOutcome {
                name: name.to_string(),
                checks: 0,
                max_deviation: 0.0,
                tolerance,
                witness: String::new(),
            },
        }
    }

    fn record(&mut self, deviation: f64, witness: impl FnOnce() -> String) {
        self.outcome.checks += 1;
        if deviation > self.outcome.max_deviation || self.outcome.witness.is_empty() {
            self.outcome.max_deviation = self.outcome.max_deviation.max(deviation);
            self.outcome.witness = witness();
        }
    }

    fn finish(self) -> PropertyOutcome {
        self.outcome
    }
}

fn show(k: &Ket) -> String {
    let parts: Vec<String> = k.amplitudes().iter().map(|z| format!("{:.6}{:+.6}i", z.re, z.im)).collect();
    format!("[{}]", parts.join(", "))
}

/// CCR (`[a(f), a†(g)] = ⟨f|g⟩`) on the sectors below the cutoff, for the
/// basis modes and `random_modes` random pairs.
pub fn ccr_car(statistics: Statistics, modes: usize, cutoff: usize, random_modes: usize, tolerance: f64, rng: &mut SeededRng) -> Result<PropertyOutcome> {
    let name = match statistics {
        Statistics::Boson => format!("CCR, bosons, d = {modes}, cutoff {cutoff}"),
        Statistics::Fermion => format!("CAR, fermions, d = {modes}"),
    };
    let mut t = Tracker::new(&name, tolerance);
    let space = build_fock(statistics, modes, cutoff)?;
    let mode_space = space.mode_space().clone();
    let mut pairs = Vec::new();
    for i in 0..modes {
        for j in 0..modes {
            pairs.push((Ket::basis(mode_space.clone(), i)?, Ket::basis(mode_space.clone(), j)?));
        }
    }
    for _ in 0..random_modes {
        pairs.push((random::ket(mode_space.clone(), rng), random::ket(mode_space.clone(), rng)));
    }
    for (f, g) in pairs {
        let dev = check_ccr_car(&space, &f, &g)?;
        t.record(dev, || format!("f = {}, g = {}", show(&f), show(&g)));
    }
    Ok(t.finish())
}

fn random_pair(space: &std::sync::Arc<HilbertSpace>, statistics: Statistics, rng: &mut SeededRng) -> Result<NoLabelPair> {
    NoLabelPair::new(random::ket(space.clone(), rng), random::ket(space.clone(), rng), statistics)
}

fn describe(p: &NoLabelPair) -> String {
    format!("{} pair phi1 = {}, phi2 = {}", p.statistics().name(), show(p.phi1()), show(p.phi2()))
}

/// `nl_inner(a, b) = ⟨fq(a)|fq(b)⟩` for random pairs of both statistics.
pub fn embedding_consistency(count: usize, dim: usize, tolerance: f64, rng: &mut SeededRng) -> Result<PropertyOutcome> {
    let mut t = Tracker::new("embedding consistency", tolerance);
    let space = HilbertSpace::indexed(dim);
    for i in 0..count {
        let stats = if i % 2 == 0 { Statistics::Boson } else { Statistics::Fermion };
        let a = random_pair(&space, stats, rng)?;
        let b = random_pair(&space, stats, rng)?;
        let dev = (nl_inner(&a, &b)? - to_first_quantized(&a).inner(&to_first_quantized(&b))).norm();
        t.record(dev, || format!("a: {}; b: {}", describe(&a), describe(&b)));
    }
    Ok(t.finish())
}

/// For `K = ℍ` the reduced matrix equals its closed form and the partial
/// trace of the normalized first-quantized projector.
pub fn full_space_reduction(count: usize, dim: usize, tolerance: f64, rng: &mut SeededRng) -> Result<PropertyOutcome> {
    let mut t = Tracker::new("full-space reduction", tolerance);
    let space = HilbertSpace::indexed(dim);
    let basis: Vec<Ket> = (0..dim).map(|i| Ket::basis(space.clone(), i)).collect::<Result<_>>()?;
    let identity = Operator::identity(space.clone());
    for i in 0..count {
        let stats = if i % 2 == 0 { Statistics::Boson } else { Statistics::Fermion };
        let p = random_pair(&space, stats, rng)?;
        let state: NoLabelState = p.clone().into();
        let reduced = k_reduced_dm(&state, &basis)?.matrix;
        let closed = k_reduced_dm_closed_form(&p, &identity)?;
        let fq = to_first_quantized(&p).normalized()?;
        let traced = partial_trace(&Operator::projector(&fq), dim, dim, Subsystem::Second)?;
        let other = partial_trace(&Operator::projector(&fq), dim, dim, Subsystem::First)?;
        let dev = [
            reduced.max_abs_diff(&closed),
            matrix_diff(&reduced, &traced),
            matrix_diff(&traced, &other),
        ]
        .into_iter()
        .fold(0.0, f64::max);
        t.record(dev, || describe(&p));
    }
    Ok(t.finish())
}

fn matrix_diff(a: &Operator, b: &Operator) -> f64 {
    (a.matrix() - b.matrix()).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `E_𝕂` is unchanged when the basis of `𝕂` is rotated within its span.
pub fn basis_independence(rotations: usize, tolerance: f64, rng: &mut SeededRng) -> Result<PropertyOutcome> {
    let mut t = Tracker::new("entropy basis independence", tolerance);
    let space = HilbertSpace::indexed(4);
    let basis = vec![Ket::basis(space.clone(), 0)?, Ket::basis(space.clone(), 1)?];
    for i in 0..rotations {
        let stats = if i % 2 == 0 { Statistics::Boson } else { Statistics::Fermion };
        let p = random_pair(&space, stats, rng)?;
        let state: NoLabelState = p.clone().into();
        let u = random::unitary(2, rng);
        let rotated: Vec<Ket> = (0..2)
            .map(|j| &basis[0].scale(u[(0, j)]) + &basis[1].scale(u[(1, j)]))
            .collect();
        let dev = (entanglement_entropy(&state, &basis)? - entanglement_entropy(&state, &rotated)?).abs();
        t.record(dev, || format!("{}; rotated K = {}, {}", describe(&p), show(&rotated[0]), show(&rotated[1])));
    }
    Ok(t.finish())
}

/// Schmidt decomposition of random kets reconstructs them.
pub fn schmidt_reconstruction(count: usize, tolerance: f64, rng: &mut SeededRng) -> Result<PropertyOutcome> {
    let mut t = Tracker::new("Schmidt reconstruction", tolerance);
    let dims = [(2, 2), (2, 3), (3, 3), (3, 4)];
    for i in 0..count {
        let (d1, d2) = dims[i % dims.len()];
        let left = HilbertSpace::indexed(d1);
        let right = HilbertSpace::indexed(d2);
        let joint = left.tensor(&right);
        let ket = random::ket(joint, rng);
        let form = schmidt_decompose(&ket, d1, d2)?;
        let dev = form.reconstruct().distance(&ket);
        t.record(dev, || format!("{d1}x{d2} ket {}", show(&ket)));
    }
    // a product input must come back with rank one
    let a = random::ket(HilbertSpace::indexed(3), rng);
    let b = random::ket(HilbertSpace::indexed(2), rng);
    let form = schmidt_decompose(&tensor_ket(&a, &b), 3, 2)?;
    t.record(form.coefficient(1), || format!("product of {} and {}", show(&a), show(&b)));
    Ok(t.finish())
}

/// Every suite at one tolerance.
pub fn run_suites(tolerance: f64, seed: u64) -> Result<Vec<PropertyOutcome>> {
    let mut rng = random::seeded(seed);
    Ok(vec![
        ccr_car(Statistics::Boson, 2, 6, 10, tolerance, &mut rng)?,
        ccr_car(Statistics::Fermion, 4, 4, 10, tolerance, &mut rng)?,
        embedding_consistency(200, 3, tolerance, &mut rng)?,
        full_space_reduction(100, 3, tolerance, &mut rng)?,
        basis_independence(20, tolerance, &mut rng)?,
        schmidt_reconstruction(200, tolerance, &mut rng)?,
    ])
}
