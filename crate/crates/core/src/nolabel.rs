//! Two identical particles without particle labels.
//!
//! A pair `|φ₁,φ₂⟩` is an unlabeled couple of single-particle vectors with
//! exchange sign `η` (`+1` bosons, `−1` fermions) and scalar product
//!
//! `⟨φ₁,φ₂|φ₁′,φ₂′⟩ = ⟨φ₁|φ₁′⟩⟨φ₂|φ₂′⟩ + η⟨φ₁|φ₂′⟩⟨φ₂|φ₁′⟩`,
//!
//! so that `|φ₁,φ₂⟩ = η|φ₂,φ₁⟩`. Single-particle operators act through the
//! extension `A⁽¹⁾|φ₁,φ₂⟩ = |Aφ₁,φ₂⟩ + |φ₁,Aφ₂⟩`, and the probe reduction
//! `Π_ψ|φ₁,φ₂⟩ = ⟨ψ|φ₁⟩|φ₂⟩ + η⟨ψ|φ₂⟩|φ₁⟩` maps a pair to a single-particle
//! vector. Summing `Π_ψ |Φ⟩⟨Φ| Π_ψ†` over an orthonormal basis of a subspace
//! `𝕂` and normalizing gives the `𝕂`-reduced density matrix whose entropy is
//! the no-label entanglement measure.
//!
//! Most operations have a general route (through [`NoLabelState`] arithmetic)
//! and a closed form for single pairs; both are public so either can check
//! the other.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fock::Statistics;
use crate::hilbert::{commutator, re, tensor_ket, tensor_op, von_neumann_entropy, HilbertSpace, Ket, Operator, C64};
use crate::tol::{MERGE, NULL_REDUCTION, TOL};

#[derive(Debug, Clone, PartialEq)]
pub struct NoLabelPair {
    phi1: Ket,
    phi2: Ket,
    statistics: Statistics,
}

impl NoLabelPair {
    pub fn new(phi1: Ket, phi2: Ket, statistics: Statistics) -> Result<Self> {
        if phi1.dim() != phi2.dim() {
            return Err(Error::Dim {
                expected: phi1.dim(),
                found: phi2.dim(),
            });
        }
        Ok(Self { phi1, phi2, statistics })
    }

    pub fn phi1(&self) -> &Ket {
        &self.phi1
    }

    pub fn phi2(&self) -> &Ket {
        &self.phi2
    }

    pub fn statistics(&self) -> Statistics {
        self.statistics
    }

    pub fn eta(&self) -> f64 {
        self.statistics.eta()
    }

    pub fn dim(&self) -> usize {
        self.phi1.dim()
    }

    pub fn space(&self) -> &Arc<HilbertSpace> {
        self.phi1.space()
    }

    /// `𝒩 = ⟨φ₁|φ₁⟩⟨φ₂|φ₂⟩ + η|⟨φ₁|φ₂⟩|²`.
    pub fn norm_sq(&self) -> f64 {
        self.phi1.norm_sq() * self.phi2.norm_sq() + self.eta() * self.phi1.inner(&self.phi2).norm_sqr()
    }

    /// A fermionic pair with parallel constituents has zero norm.
    pub fn is_null(&self) -> bool {
        self.norm_sq() <= NULL_REDUCTION
    }

    pub fn swapped(&self) -> Self {
        Self {
            phi1: self.phi2.clone(),
            phi2: self.phi1.clone(),
            statistics: self.statistics,
        }
    }

    fn unit_constituents(&self) -> Result<(Ket, Ket)> {
        Ok((self.phi1.normalized()?, self.phi2.normalized()?))
    }
}

fn check_compatible(a: &NoLabelPair, b: &NoLabelPair) -> Result<()> {
    if a.statistics != b.statistics {
        return Err(Error::Eta);
    }
    if a.dim() != b.dim() {
        return Err(Error::Dim {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    Ok(())
}

/// The η-scalar product of two pairs.
pub fn nl_inner(a: &NoLabelPair, b: &NoLabelPair) -> Result<C64> {
    check_compatible(a, b)?;
    let eta = re(a.eta());
    Ok(a.phi1.inner(&b.phi1) * a.phi2.inner(&b.phi2) + eta * a.phi1.inner(&b.phi2) * a.phi2.inner(&b.phi1))
}

/// A finite linear combination of pairs sharing the same statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct NoLabelState {
    statistics: Statistics,
    terms: Vec<(C64, NoLabelPair)>,
}

impl From<NoLabelPair> for NoLabelState {
    fn from(pair: NoLabelPair) -> Self {
        Self {
            statistics: pair.statistics,
            terms: vec![(re(1.0), pair)],
        }
    }
}

impl NoLabelState {
    pub fn from_terms(terms: Vec<(C64, NoLabelPair)>) -> Result<Self> {
        let Some((_, first)) = terms.first() else {
            return Err(Error::InvalidArgument("a no-label state needs at least one term".into()));
        };
        for (_, pair) in &terms {
            check_compatible(first, pair)?;
        }
        Ok(Self {
            statistics: first.statistics,
            terms,
        })
    }

    pub fn statistics(&self) -> Statistics {
        self.statistics
    }

    pub fn eta(&self) -> f64 {
        self.statistics.eta()
    }

    pub fn terms(&self) -> &[(C64, NoLabelPair)] {
        &self.terms
    }

    pub fn dim(&self) -> usize {
        self.terms[0].1.dim()
    }

    pub fn space(&self) -> &Arc<HilbertSpace> {
        self.terms[0].1.space()
    }

    pub fn scale(&self, factor: C64) -> Self {
        Self {
            statistics: self.statistics,
            terms: self.terms.iter().map(|(c, p)| (c * factor, p.clone())).collect(),
        }
    }

    pub fn add(&self, other: &NoLabelState) -> Result<Self> {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Self::from_terms(terms)
    }

    /// Merges terms whose constituents coincide, directly or after exchange
    /// (picking up `η`), and drops vanishing coefficients.
    pub fn canonicalize(&self) -> Self {
        let eta = re(self.eta());
        let mut merged: Vec<(C64, NoLabelPair)> = Vec::new();
        for (c, pair) in &self.terms {
            let same = |p: &NoLabelPair| p.phi1.distance(&pair.phi1) <= MERGE && p.phi2.distance(&pair.phi2) <= MERGE;
            let exchanged =
                |p: &NoLabelPair| p.phi1.distance(&pair.phi2) <= MERGE && p.phi2.distance(&pair.phi1) <= MERGE;
            if let Some(slot) = merged.iter_mut().find(|(_, p)| same(p)) {
                slot.0 += c;
            } else if let Some(slot) = merged.iter_mut().find(|(_, p)| exchanged(p)) {
                slot.0 += c * eta;
            } else {
                merged.push((*c, pair.clone()));
            }
        }
        merged.retain(|(c, _)| c.norm() > MERGE);
        if merged.is_empty() {
            // keep one representative so the state still knows its space
            merged.push((re(0.0), self.terms[0].1.clone()));
        }
        Self {
            statistics: self.statistics,
            terms: merged,
        }
    }

    /// The single pair (with its coefficient) this state reduces to, if any.
    pub fn single_pair(&self) -> Option<(C64, NoLabelPair)> {
        let canonical = self.canonicalize();
        match canonical.terms.as_slice() {
            [(c, p)] if c.norm() > MERGE => Some((*c, p.clone())),
            _ => None,
        }
    }

    /// `⟨self|other⟩` by sesquilinear extension of [`nl_inner`].
    pub fn inner(&self, other: &NoLabelState) -> Result<C64> {
        if self.statistics != other.statistics {
            return Err(Error::Eta);
        }
        let mut total = re(0.0);
        for (c, a) in &self.terms {
            for (d, b) in &other.terms {
                total += c.conj() * d * nl_inner(a, b)?;
            }
        }
        Ok(total)
    }

    pub fn norm_sq(&self) -> f64 {
        self.inner(self).map(|z| z.re).unwrap_or(0.0)
    }

    pub fn is_null(&self) -> bool {
        self.norm_sq() <= NULL_REDUCTION
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm_sq();
        if n <= NULL_REDUCTION {
            return Err(Error::NullState);
        }
        Ok(self.scale(re(1.0 / n.sqrt())))
    }
}

/// `(|φ₁⟩⊗|φ₂⟩ + η|φ₂⟩⊗|φ₁⟩)/√2`, whose squared norm equals `nl_inner(p, p)`.
pub fn to_first_quantized(pair: &NoLabelPair) -> Ket {
    let direct = tensor_ket(&pair.phi1, &pair.phi2);
    let exchanged = tensor_ket(&pair.phi2, &pair.phi1).scale(re(pair.eta()));
    (&direct + &exchanged).scale(re(std::f64::consts::FRAC_1_SQRT_2))
}

pub fn state_to_first_quantized(state: &NoLabelState) -> Ket {
    let mut iter = state.terms.iter().map(|(c, p)| to_first_quantized(p).scale(*c));
    let first = iter.next().expect("states are never empty");
    iter.fold(first, |acc, k| &acc + &k)
}

/// `A ⊗ 1 + 1 ⊗ A`, the first-quantized form of the extension `A⁽¹⁾`.
pub fn extended_first_quantized(op: &Operator) -> Operator {
    let id = Operator::identity(op.space().clone());
    &tensor_op(op, &id) + &tensor_op(&id, op)
}

fn check_single_particle(op: &Operator, state: &NoLabelState) -> Result<()> {
    if op.dim() != state.dim() {
        return Err(Error::Dim {
            expected: state.dim(),
            found: op.dim(),
        });
    }
    Ok(())
}

/// `A⁽¹⁾` applied term by term: `|φ₁,φ₂⟩ ↦ |Aφ₁,φ₂⟩ + |φ₁,Aφ₂⟩`.
pub fn extend_one_particle_op(op: &Operator, state: &NoLabelState) -> Result<NoLabelState> {
    check_single_particle(op, state)?;
    let mut terms = Vec::with_capacity(2 * state.terms.len());
    for (c, p) in &state.terms {
        terms.push((*c, NoLabelPair::new(op.apply(&p.phi1), p.phi2.clone(), p.statistics)?));
        terms.push((*c, NoLabelPair::new(p.phi1.clone(), op.apply(&p.phi2), p.statistics)?));
    }
    NoLabelState::from_terms(terms)
}

/// `Π_ψ`: `|φ₁,φ₂⟩ ↦ ⟨ψ|φ₁⟩|φ₂⟩ + η⟨ψ|φ₂⟩|φ₁⟩`, summed over the terms.
pub fn reduce(psi: &Ket, state: &NoLabelState) -> Result<Ket> {
    if psi.dim() != state.dim() {
        return Err(Error::Dim {
            expected: state.dim(),
            found: psi.dim(),
        });
    }
    if !psi.is_normalized(TOL) {
        return Err(Error::Norm(psi.norm()));
    }
    let eta = re(state.eta());
    let mut out = Ket::zero(state.space().clone());
    for (c, p) in &state.terms {
        let term = &p.phi2.scale(psi.inner(&p.phi1)) + &p.phi1.scale(eta * psi.inner(&p.phi2));
        out = &out + &term.scale(*c);
    }
    Ok(out)
}

/// `ρ^𝕂_Φ` with the projector onto `𝕂` and the normalization `𝒩_𝕂`.
#[derive(Debug, Clone)]
pub struct ReducedDm {
    pub matrix: Operator,
    pub subspace_projector: Operator,
    pub normalization: f64,
}

/// `P_𝕂 = Σ_k |ψ_k⟩⟨ψ_k|` after checking that the basis is orthonormal.
pub fn subspace_projector(k_basis: &[Ket]) -> Result<Operator> {
    let Some(first) = k_basis.first() else {
        return Err(Error::InvalidArgument("the subspace basis is empty".into()));
    };
    for (i, a) in k_basis.iter().enumerate() {
        if a.dim() != first.dim() {
            return Err(Error::Dim {
                expected: first.dim(),
                found: a.dim(),
            });
        }
        for (j, b) in k_basis.iter().enumerate() {
            let expected = if i == j { re(1.0) } else { re(0.0) };
            if (a.inner(b) - expected).norm() > TOL {
                return Err(Error::InvalidArgument("the subspace basis is not orthonormal".into()));
            }
        }
    }
    let mut p = Operator::zeros(first.space().clone());
    for k in k_basis {
        p = &p + &Operator::projector(k);
    }
    Ok(p)
}

/// `ρ^𝕂_Φ = (1/2𝒩_𝕂) Σ_k Π_{ψ_k}|Φ⟩⟨Φ|Π_{ψ_k}†` with `|Φ⟩` the normalized
/// state and `𝒩_𝕂 = ½ Σ_k ‖Π_{ψ_k}Φ‖²`.
pub fn k_reduced_dm(state: &NoLabelState, k_basis: &[Ket]) -> Result<ReducedDm> {
    let projector = subspace_projector(k_basis)?;
    check_single_particle(&projector, state)?;
    let n = state.norm_sq();
    if n <= NULL_REDUCTION {
        return Err(Error::NullState);
    }
    let scale = re(1.0 / n.sqrt());
    let mut sum = Operator::zeros(state.space().clone());
    let mut weight = 0.0;
    for psi in k_basis {
        let v = reduce(psi, state)?.scale(scale);
        weight += v.norm_sq();
        sum = &sum + &Operator::projector(&v);
    }
    let normalization = 0.5 * weight;
    if normalization <= NULL_REDUCTION {
        return Err(Error::NullReduction(normalization));
    }
    Ok(ReducedDm {
        matrix: sum.scale(re(1.0 / (2.0 * normalization))),
        subspace_projector: projector,
        normalization,
    })
}

/// Closed form of `ρ^𝕂_Φ` for a single pair with unit constituents:
///
/// `[⟨φ₂|P|φ₂⟩|φ₁⟩⟨φ₁| + ⟨φ₁|P|φ₁⟩|φ₂⟩⟨φ₂| + η(⟨φ₁|P|φ₂⟩|φ₁⟩⟨φ₂| + ⟨φ₂|P|φ₁⟩|φ₂⟩⟨φ₁|)]`
/// divided by `⟨φ₂|P|φ₂⟩ + ⟨φ₁|P|φ₁⟩ + 2η Re(⟨φ₁|P|φ₂⟩⟨φ₂|φ₁⟩)`.
///
/// With `P = 1` this is the full-space reduced matrix.
pub fn k_reduced_dm_closed_form(pair: &NoLabelPair, projector: &Operator) -> Result<Operator> {
    if pair.is_null() {
        return Err(Error::NullState);
    }
    let (p1, p2) = pair.unit_constituents()?;
    let eta = pair.eta();
    let sandwich = |a: &Ket, b: &Ket| a.inner(&projector.apply(b));
    let numerator = &(&Operator::projector(&p1).scale(sandwich(&p2, &p2))
        + &Operator::projector(&p2).scale(sandwich(&p1, &p1)))
        + &(&Operator::outer(&p1, &p2).scale(sandwich(&p1, &p2))
            + &Operator::outer(&p2, &p1).scale(sandwich(&p2, &p1)))
            .scale(re(eta));
    let denominator =
        sandwich(&p2, &p2).re + sandwich(&p1, &p1).re + 2.0 * eta * (sandwich(&p1, &p2) * p2.inner(&p1)).re;
    if denominator.abs() <= 2.0 * NULL_REDUCTION {
        return Err(Error::NullReduction(denominator / 2.0));
    }
    Ok(numerator.scale(re(1.0 / denominator)))
}

/// `E_𝕂 = S(ρ^𝕂_Φ)` in bits.
pub fn entanglement_entropy(state: &NoLabelState, k_basis: &[Ket]) -> Result<f64> {
    von_neumann_entropy(&k_reduced_dm(state, k_basis)?.matrix)
}

fn require_hermitian(op: &Operator) -> Result<()> {
    let err = op.hermiticity_error();
    if err > TOL {
        return Err(Error::NotHermitian(err));
    }
    Ok(())
}

fn require_nonnull(state: &NoLabelState) -> Result<f64> {
    let n = state.norm_sq();
    if n <= NULL_REDUCTION {
        return Err(Error::NullState);
    }
    Ok(n)
}

/// `⟨Φ|A⁽¹⁾|Φ⟩ / ⟨Φ|Φ⟩`; counts contributions from both particles, so the
/// identity gives 2.
pub fn expectation_extended(state: &NoLabelState, op: &Operator) -> Result<f64> {
    require_hermitian(op)?;
    let n = require_nonnull(state)?;
    let extended = extend_one_particle_op(op, state)?;
    Ok(state.inner(&extended)?.re / n)
}

/// `(1/𝒩)[⟨φ₁|A|φ₁⟩ + ⟨φ₂|A|φ₂⟩ + 2η Re(⟨φ₂|A|φ₁⟩⟨φ₁|φ₂⟩)]` for a single
/// pair with unit constituents.
pub fn expectation_extended_closed_form(pair: &NoLabelPair, op: &Operator) -> Result<f64> {
    require_hermitian(op)?;
    if pair.is_null() {
        return Err(Error::NullState);
    }
    let (p1, p2) = pair.unit_constituents()?;
    let eta = pair.eta();
    let n = 1.0 + eta * p1.inner(&p2).norm_sqr();
    if n <= NULL_REDUCTION {
        return Err(Error::NullState);
    }
    let a = |x: &Ket, y: &Ket| x.inner(&op.apply(y));
    Ok((a(&p1, &p1).re + a(&p2, &p2).re + 2.0 * eta * (a(&p2, &p1) * p1.inner(&p2)).re) / n)
}

/// `Tr(ρ A)`.
pub fn expectation_reduced(reduced: &ReducedDm, op: &Operator) -> Result<f64> {
    require_hermitian(op)?;
    if op.dim() != reduced.matrix.dim() {
        return Err(Error::Dim {
            expected: reduced.matrix.dim(),
            found: op.dim(),
        });
    }
    Ok((&reduced.matrix * op).trace().re)
}

/// `Tr(ρ^𝕂_Φ A)` written out for a single pair with unit constituents:
///
/// `[⟨φ₁|A|φ₁⟩⟨φ₂|P|φ₂⟩ + ⟨φ₁|P|φ₁⟩⟨φ₂|A|φ₂⟩ + 2η Re(⟨φ₂|A|φ₁⟩⟨φ₁|P|φ₂⟩)] / 2𝒩_𝕂`.
pub fn expectation_reduced_closed_form(pair: &NoLabelPair, projector: &Operator, op: &Operator) -> Result<f64> {
    require_hermitian(op)?;
    if pair.is_null() {
        return Err(Error::NullState);
    }
    let (p1, p2) = pair.unit_constituents()?;
    let eta = pair.eta();
    let a = |x: &Ket, y: &Ket| x.inner(&op.apply(y));
    let p = |x: &Ket, y: &Ket| x.inner(&projector.apply(y));
    let numerator = (a(&p1, &p1) * p(&p2, &p2)).re
        + (p(&p1, &p1) * a(&p2, &p2)).re
        + 2.0 * eta * (a(&p2, &p1) * p(&p1, &p2)).re;
    let two_nk = p(&p2, &p2).re + p(&p1, &p1).re + 2.0 * eta * (p(&p1, &p2) * p2.inner(&p1)).re;
    if two_nk <= 2.0 * NULL_REDUCTION {
        return Err(Error::NullReduction(two_nk / 2.0));
    }
    Ok(numerator / two_nk)
}

fn require_commuting(o1: &Operator, o2: &Operator) -> Result<()> {
    require_hermitian(o1)?;
    require_hermitian(o2)?;
    if o1.dim() != o2.dim() {
        return Err(Error::Dim {
            expected: o1.dim(),
            found: o2.dim(),
        });
    }
    let norm = commutator(o1, o2).operator_norm();
    if norm > TOL {
        return Err(Error::NonCommuting(norm));
    }
    Ok(())
}

/// `(⟨Φ|O₁⁽¹⁾O₂⁽¹⁾|Φ⟩, ⟨Φ|O₁⁽¹⁾|Φ⟩⟨Φ|O₂⁽¹⁾|Φ⟩)` for commuting hermitian
/// `O₁`, `O₂`; factorization of the extended observables holds iff the two
/// agree.
pub fn extended_correlation(state: &NoLabelState, o1: &Operator, o2: &Operator) -> Result<(f64, f64)> {
    require_commuting(o1, o2)?;
    let n = require_nonnull(state)?;
    let o2_state = extend_one_particle_op(o2, state)?;
    let o1_o2_state = extend_one_particle_op(o1, &o2_state)?;
    let joint = state.inner(&o1_o2_state)?.re / n;
    Ok((joint, expectation_extended(state, o1)? * expectation_extended(state, o2)?))
}

/// The two sides of the factorization condition for a single pair with
/// orthonormal constituents, after the terms common to both sides cancel:
///
/// `lhs = ⟨φ₁|O₁O₂|φ₁⟩ + ⟨φ₂|O₁O₂|φ₂⟩ + 2η Re(⟨φ₁|O₁|φ₂⟩⟨φ₂|O₂|φ₁⟩)`,
/// `rhs = ⟨φ₁|O₁|φ₁⟩⟨φ₁|O₂|φ₁⟩ + ⟨φ₂|O₂|φ₂⟩⟨φ₂|O₁|φ₂⟩`.
///
/// `lhs − rhs` equals the difference of the two entries of
/// [`extended_correlation`].
pub fn extended_pair_expectation(state: &NoLabelState, o1: &Operator, o2: &Operator) -> Result<(f64, f64)> {
    require_commuting(o1, o2)?;
    require_nonnull(state)?;
    let (_, pair) = state
        .single_pair()
        .ok_or_else(|| Error::InvalidArgument("the factorization sides are defined for a single pair".into()))?;
    check_single_particle(o1, state)?;
    let (p1, p2) = pair.unit_constituents()?;
    if p1.inner(&p2).norm() > TOL {
        return Err(Error::InvalidArgument(
            "the factorization sides need orthogonal constituents".into(),
        ));
    }
    let eta = pair.eta();
    let m = |op: &Operator, x: &Ket, y: &Ket| x.inner(&op.apply(y));
    let product = o1 * o2;
    let lhs = m(&product, &p1, &p1).re + m(&product, &p2, &p2).re + 2.0 * eta * (m(o1, &p1, &p2) * m(o2, &p2, &p1)).re;
    let rhs = (m(o1, &p1, &p1) * m(o2, &p1, &p1)).re + (m(o2, &p2, &p2) * m(o1, &p2, &p2)).re;
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{partial_trace, Subsystem};
    use crate::random;

    fn leftloc() -> Arc<HilbertSpace> {
        HilbertSpace::new(["L,0", "L,1", "R,0", "R,1"]).unwrap()
    }

    fn b(space: &Arc<HilbertSpace>, label: &str) -> Ket {
        Ket::basis_labeled(space.clone(), label).unwrap()
    }

    fn pair(space: &Arc<HilbertSpace>, a: &str, c: &str, stats: Statistics) -> NoLabelState {
        NoLabelPair::new(b(space, a), b(space, c), stats).unwrap().into()
    }

    fn left_basis(space: &Arc<HilbertSpace>) -> Vec<Ket> {
        vec![b(space, "L,0"), b(space, "L,1")]
    }

    #[test]
    fn inner_products() {
        let s = leftloc();
        let x = NoLabelPair::new(b(&s, "L,0"), b(&s, "R,1"), Statistics::Fermion).unwrap();
        assert!((nl_inner(&x, &x).unwrap() - re(1.0)).norm() < 1e-15);
        let y = NoLabelPair::new(b(&s, "L,0"), b(&s, "L,0"), Statistics::Boson).unwrap();
        assert!((nl_inner(&y, &y).unwrap() - re(2.0)).norm() < 1e-15);
        let f = NoLabelPair::new(b(&s, "L,0"), b(&s, "L,0"), Statistics::Fermion).unwrap();
        assert!(f.is_null());
        assert_eq!(nl_inner(&x, &y), Err(Error::Eta));
    }

    #[test]
    fn exchange_picks_up_eta() {
        let mut rng = random::seeded(11);
        let s = HilbertSpace::indexed(3);
        for stats in [Statistics::Boson, Statistics::Fermion] {
            for _ in 0..20 {
                let a = NoLabelPair::new(random::ket(s.clone(), &mut rng), random::ket(s.clone(), &mut rng), stats).unwrap();
                let x = NoLabelPair::new(random::ket(s.clone(), &mut rng), random::ket(s.clone(), &mut rng), stats).unwrap();
                let direct = nl_inner(&a, &x).unwrap();
                let one_swapped = nl_inner(&a, &x.swapped()).unwrap();
                let both_swapped = nl_inner(&a.swapped(), &x.swapped()).unwrap();
                assert!((one_swapped - direct * stats.eta()).norm() < 1e-12);
                assert!((both_swapped - direct).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn first_quantized_forms() {
        let q = HilbertSpace::qubit();
        let zero = Ket::basis(q.clone(), 0).unwrap();
        let one = Ket::basis(q, 1).unwrap();
        let singlet = to_first_quantized(&NoLabelPair::new(zero.clone(), one.clone(), Statistics::Fermion).unwrap());
        let expected = (&tensor_ket(&zero, &one) - &tensor_ket(&one, &zero)).scale(re(std::f64::consts::FRAC_1_SQRT_2));
        assert!(singlet.distance(&expected) < 1e-15);

        let twin = NoLabelPair::new(zero.clone(), zero.clone(), Statistics::Boson).unwrap();
        let fq = to_first_quantized(&twin);
        assert!(fq.distance(&tensor_ket(&zero, &zero).scale(re(2f64.sqrt()))) < 1e-15);
        assert!((fq.norm_sq() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn canonicalization_merges_exchanged_terms() {
        let s = leftloc();
        let a = NoLabelPair::new(b(&s, "L,0"), b(&s, "R,1"), Statistics::Fermion).unwrap();
        let state = NoLabelState::from_terms(vec![(re(1.0), a.clone()), (re(1.0), a.swapped())]).unwrap();
        // |x,y⟩ + |y,x⟩ = (1 + η)|x,y⟩ = 0 for fermions
        assert!(state.canonicalize().terms()[0].0.norm() < 1e-15);
        assert!(state.is_null());
        assert!(state.single_pair().is_none());
        let bosonic = NoLabelState::from_terms(vec![
            (re(1.0), NoLabelPair::new(b(&s, "L,0"), b(&s, "R,1"), Statistics::Boson).unwrap()),
            (re(1.0), NoLabelPair::new(b(&s, "R,1"), b(&s, "L,0"), Statistics::Boson).unwrap()),
        ])
        .unwrap();
        let (c, _) = bosonic.single_pair().unwrap();
        assert!((c - re(2.0)).norm() < 1e-15);
    }

    #[test]
    fn identity_extension_doubles() {
        let s = leftloc();
        let state = pair(&s, "L,0", "R,1", Statistics::Boson);
        let ext = extend_one_particle_op(&Operator::identity(s.clone()), &state).unwrap();
        let doubled = state.scale(re(2.0));
        let diff = ext.add(&doubled.scale(re(-1.0))).unwrap();
        assert!(diff.norm_sq().abs() < 1e-12);
    }

    #[test]
    fn projector_extension_matches_two_term_form() {
        let mut rng = random::seeded(3);
        let s = HilbertSpace::indexed(3);
        for stats in [Statistics::Boson, Statistics::Fermion] {
            let psi = random::ket(s.clone(), &mut rng);
            let p = NoLabelPair::new(random::ket(s.clone(), &mut rng), random::ket(s.clone(), &mut rng), stats).unwrap();
            let state: NoLabelState = p.clone().into();
            let ext = extend_one_particle_op(&Operator::projector(&psi), &state).unwrap();
            // P_ψ⁽¹⁾|φ₁,φ₂⟩ = |ψ, ⟨ψ|φ₁⟩φ₂ + η⟨ψ|φ₂⟩φ₁⟩
            let second = &p.phi2().scale(psi.inner(p.phi1())) + &p.phi1().scale(re(stats.eta()) * psi.inner(p.phi2()));
            let two_term: NoLabelState = NoLabelPair::new(psi.clone(), second, stats).unwrap().into();
            let diff = ext.add(&two_term.scale(re(-1.0))).unwrap();
            assert!(diff.norm_sq().abs() < 1e-12);
        }
    }

    #[test]
    fn reductions() {
        let s = leftloc();
        let state = pair(&s, "L,0", "R,1", Statistics::Fermion);
        let out = reduce(&b(&s, "L,0"), &state).unwrap();
        assert!(out.distance(&b(&s, "R,1")) < 1e-15);
        assert!(reduce(&b(&s, "R,0"), &state).unwrap().norm() < 1e-15);
        let twin = pair(&s, "L,0", "L,0", Statistics::Boson);
        let out = reduce(&b(&s, "L,0"), &twin).unwrap();
        assert!(out.distance(&b(&s, "L,0").scale(re(2.0))) < 1e-15);
        assert!(matches!(reduce(&b(&s, "L,0").scale(re(3.0)), &twin), Err(Error::Norm(_))));
    }

    #[test]
    fn left_localized_cases() {
        let s = leftloc();
        let k = left_basis(&s);
        for stats in [Statistics::Boson, Statistics::Fermion] {
            let case1 = pair(&s, "L,0", "R,1", stats);
            let r = k_reduced_dm(&case1, &k).unwrap();
            assert!(r.matrix.max_abs_diff(&Operator::projector(&b(&s, "R,1"))) < 1e-15);
            assert!(entanglement_entropy(&case1, &k).unwrap() < 1e-9);

            let case3 = pair(&s, "L,0", "L,1", stats);
            let half = (&Operator::projector(&b(&s, "L,0")) + &Operator::projector(&b(&s, "L,1"))).scale(re(0.5));
            assert!(k_reduced_dm(&case3, &k).unwrap().matrix.max_abs_diff(&half) < 1e-15);
            assert!((entanglement_entropy(&case3, &k).unwrap() - 1.0).abs() < 1e-12);
        }
        let case2 = pair(&s, "L,0", "L,0", Statistics::Boson).scale(re(std::f64::consts::FRAC_1_SQRT_2));
        let r = k_reduced_dm(&case2, &k).unwrap();
        assert!(r.matrix.max_abs_diff(&Operator::projector(&b(&s, "L,0"))) < 1e-15);
        assert!(entanglement_entropy(&case2, &k).unwrap() < 1e-9);
    }

    #[test]
    fn projection_that_annihilates_is_an_error() {
        let s = leftloc();
        let state = pair(&s, "R,0", "R,1", Statistics::Boson);
        assert!(matches!(k_reduced_dm(&state, &left_basis(&s)), Err(Error::NullReduction(_))));
        let null = pair(&s, "L,0", "L,0", Statistics::Fermion);
        assert_eq!(k_reduced_dm(&null, &left_basis(&s)).unwrap_err(), Error::NullState);
        assert_eq!(expectation_extended(&null, &Operator::identity(s.clone())).unwrap_err(), Error::NullState);
    }

    #[test]
    fn non_orthonormal_subspace_basis_is_rejected() {
        let s = leftloc();
        let state = pair(&s, "L,0", "R,1", Statistics::Boson);
        let bad = vec![b(&s, "L,0"), b(&s, "L,0")];
        assert!(matches!(k_reduced_dm(&state, &bad), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn closed_forms_agree_with_general_routes() {
        let mut rng = random::seeded(21);
        let s = HilbertSpace::indexed(4);
        let k = vec![Ket::basis(s.clone(), 0).unwrap(), Ket::basis(s.clone(), 2).unwrap()];
        let proj = subspace_projector(&k).unwrap();
        for stats in [Statistics::Boson, Statistics::Fermion] {
            for _ in 0..25 {
                let p = NoLabelPair::new(random::ket(s.clone(), &mut rng), random::ket(s.clone(), &mut rng), stats).unwrap();
                let state: NoLabelState = p.clone().into();
                let a = random::hermitian(s.clone(), &mut rng);
                let general = k_reduced_dm(&state, &k).unwrap();
                let closed = k_reduced_dm_closed_form(&p, &proj).unwrap();
                assert!(general.matrix.max_abs_diff(&closed) < 1e-12);
                assert!((general.matrix.trace() - re(1.0)).norm() < 1e-12);
                let e1 = expectation_extended(&state, &a).unwrap();
                let e2 = expectation_extended_closed_form(&p, &a).unwrap();
                assert!((e1 - e2).abs() < 1e-12);
                let r1 = expectation_reduced(&general, &a).unwrap();
                let r2 = expectation_reduced_closed_form(&p, &proj, &a).unwrap();
                assert!((r1 - r2).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn full_space_reduction_is_the_partial_trace() {
        let s = leftloc();
        let k: Vec<Ket> = (0..4).map(|i| Ket::basis(s.clone(), i).unwrap()).collect();
        let state = pair(&s, "L,0", "L,1", Statistics::Boson);
        let fq = state_to_first_quantized(&state);
        let rho = Operator::projector(&fq.scale(re(1.0 / fq.norm())));
        let traced = partial_trace(&rho, 4, 4, Subsystem::First).unwrap();
        let reduced = k_reduced_dm(&state, &k).unwrap();
        assert!(traced.matrix().iter().zip(reduced.matrix.matrix().iter()).all(|(x, y)| (x - y).norm() < 1e-15));
    }

    #[test]
    fn extended_expectation_examples() {
        let s = leftloc();
        let state = pair(&s, "L,0", "R,1", Statistics::Boson);
        assert!((expectation_extended(&state, &Operator::identity(s.clone())).unwrap() - 2.0).abs() < 1e-15);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let plus = Ket::from_real(s.clone(), &[h, h, 0.0, 0.0]).unwrap();
        let minus = Ket::from_real(s.clone(), &[h, -h, 0.0, 0.0]).unwrap();
        let pp = Operator::projector(&plus);
        let pm = Operator::projector(&minus);
        assert!((expectation_extended(&state, &pp).unwrap() - 0.5).abs() < 1e-15);
        assert!((expectation_extended(&state, &pm).unwrap() - 0.5).abs() < 1e-15);

        let left = k_reduced_dm(&state, &left_basis(&s)).unwrap();
        // oracle: Tr(|R,1⟩⟨R,1| P^L₊) = 0 by direct matrix trace
        let direct = (&Operator::projector(&b(&s, "R,1")) * &pp).trace();
        assert!(direct.norm() < 1e-15);
        assert!(expectation_reduced(&left, &pp).unwrap().abs() < 1e-15);
        assert!((expectation_reduced(&left, &Operator::identity(s.clone())).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn factorization_sides() {
        let s = HilbertSpace::indexed(3);
        let phi: Vec<Ket> = (0..3).map(|i| Ket::basis(s.clone(), i).unwrap()).collect();
        let h = re(std::f64::consts::FRAC_1_SQRT_2);
        let psi = |a: &Ket, c: &Ket, sign: f64| (a + &c.scale(re(sign))).scale(h);
        for stats in [Statistics::Boson, Statistics::Fermion] {
            let eta = stats.eta();
            let state: NoLabelState = NoLabelPair::new(phi[0].clone(), phi[1].clone(), stats).unwrap().into();

            let (l, r) = extended_pair_expectation(&state, &Operator::projector(&phi[0]), &Operator::projector(&phi[1])).unwrap();
            assert!(l.abs() < 1e-15 && r.abs() < 1e-15);

            let o1 = Operator::projector(&psi(&phi[0], &phi[1], 1.0));
            let o2 = Operator::projector(&psi(&phi[0], &phi[1], -1.0));
            let (l, r) = extended_pair_expectation(&state, &o1, &o2).unwrap();
            assert!((l + eta / 2.0).abs() < 1e-15);
            assert!((r - 0.5).abs() < 1e-15);
            let (joint, product) = extended_correlation(&state, &o1, &o2).unwrap();
            assert!(((joint - product) - (l - r)).abs() < 1e-14);

            let o1 = Operator::projector(&psi(&phi[0], &phi[2], 1.0));
            let o2 = Operator::projector(&psi(&phi[0], &phi[2], -1.0));
            let (l, r) = extended_pair_expectation(&state, &o1, &o2).unwrap();
            assert!(l.abs() < 1e-15);
            assert!((r - 0.25).abs() < 1e-15);
        }
    }

    #[test]
    fn noncommuting_observables_are_rejected() {
        let s = HilbertSpace::indexed(3);
        let state: NoLabelState = NoLabelPair::new(
            Ket::basis(s.clone(), 0).unwrap(),
            Ket::basis(s.clone(), 1).unwrap(),
            Statistics::Boson,
        )
        .unwrap()
        .into();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let p0 = Operator::projector(&Ket::basis(s.clone(), 0).unwrap());
        let px = Operator::projector(&Ket::from_real(s, &[h, h, 0.0]).unwrap());
        assert!(matches!(extended_pair_expectation(&state, &p0, &px), Err(Error::NonCommuting(_))));
        assert!(matches!(extended_correlation(&state, &p0, &px), Err(Error::NonCommuting(_))));
    }
}
