//! Truncated bosonic and exact fermionic Fock spaces over a finite set of
//! modes, with creation and annihilation matrices.
//!
//! The occupation basis is graded: all states with `n` particles come before
//! those with `n + 1`, and within a sector the tuples are ordered with the
//! first mode most occupied first, e.g. `00, 10, 01, 20, 11, 02` for two
//! bosonic modes with cutoff 2.
//!
//! Bosonic ladder operators drop any transition above the cutoff, so a word
//! with `r` raising steps acts exactly only on states with at most
//! `cutoff − r` particles; [`FockSpace::exact_domain`] lists those states.
//! Fermionic operators carry the Jordan–Wigner sign `(−1)^{Σ_{j<i} n_j}`
//! with modes ordered by index.

use std::collections::HashMap;
use std::sync::Arc;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::hilbert::{anticommutator, commutator, re, HilbertSpace, Ket, Operator, C64};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Statistics {
    Boson,
    Fermion,
}

impl Statistics {
    /// Exchange sign: `+1` for bosons, `−1` for fermions.
    pub fn eta(self) -> f64 {
        match self {
            Statistics::Boson => 1.0,
            Statistics::Fermion => -1.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Statistics::Boson => "boson",
            Statistics::Fermion => "fermion",
        }
    }
}

#[derive(Debug, Clone)]
pub struct FockSpace {
    statistics: Statistics,
    modes: Arc<HilbertSpace>,
    cutoff: usize,
    basis: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
    hilbert: Arc<HilbertSpace>,
    creators: Vec<DMatrix<C64>>,
}

/// `build_fock` with modes labeled `0..d`.
pub fn build_fock(statistics: Statistics, modes: usize, cutoff: usize) -> Result<Arc<FockSpace>> {
    if modes == 0 {
        return Err(Error::InvalidArgument("at least one mode is required".into()));
    }
    FockSpace::with_modes(statistics, HilbertSpace::indexed(modes), cutoff)
}

/// Occupation tuples of `total` particles over `modes` modes, first mode
/// most occupied first.
fn occupations(total: usize, modes: usize, max_per_mode: usize) -> Vec<Vec<usize>> {
    if modes == 1 {
        return if total <= max_per_mode { vec![vec![total]] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in (0..=total.min(max_per_mode)).rev() {
        for mut rest in occupations(total - first, modes - 1, max_per_mode) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

impl FockSpace {
    pub fn with_modes(statistics: Statistics, modes: Arc<HilbertSpace>, cutoff: usize) -> Result<Arc<Self>> {
        let d = modes.dim();
        if cutoff == 0 {
            return Err(Error::InvalidArgument("cutoff must be at least 1".into()));
        }
        if statistics == Statistics::Fermion && cutoff > d {
            return Err(Error::Cutoff { cutoff, modes: d });
        }
        let max_per_mode = match statistics {
            Statistics::Boson => cutoff,
            Statistics::Fermion => 1,
        };
        let basis: Vec<Vec<usize>> = (0..=cutoff)
            .flat_map(|n| occupations(n, d, max_per_mode))
            .collect();
        let index = basis.iter().enumerate().map(|(i, occ)| (occ.clone(), i)).collect();
        let compact = cutoff < 10;
        let labels = basis.iter().map(|occ| {
            let parts: Vec<String> = occ.iter().map(|n| n.to_string()).collect();
            if compact {
                parts.concat()
            } else {
                parts.join(",")
            }
        });
        let hilbert = HilbertSpace::new(labels)?;

        let mut space = Self {
            statistics,
            modes,
            cutoff,
            basis,
            index,
            hilbert,
            creators: Vec::new(),
        };
        space.creators = (0..d).map(|i| space.creator_matrix(i)).collect();
        Ok(Arc::new(space))
    }

    fn creator_matrix(&self, mode: usize) -> DMatrix<C64> {
        let n = self.basis.len();
        let mut m = DMatrix::zeros(n, n);
        for (col, occ) in self.basis.iter().enumerate() {
            let mut raised = occ.clone();
            raised[mode] += 1;
            let Some(&row) = self.index.get(&raised) else {
                continue;
            };
            let amp = match self.statistics {
                Statistics::Boson => ((occ[mode] + 1) as f64).sqrt(),
                Statistics::Fermion => {
                    let parity: usize = occ[..mode].iter().sum();
                    if parity.is_multiple_of(2) {
                        1.0
                    } else {
                        -1.0
                    }
                }
            };
            m[(row, col)] = re(amp);
        }
        m
    }

    pub fn statistics(&self) -> Statistics {
        self.statistics
    }

    pub fn mode_count(&self) -> usize {
        self.modes.dim()
    }

    pub fn mode_space(&self) -> &Arc<HilbertSpace> {
        &self.modes
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// The Fock basis as a labeled Hilbert space.
    pub fn hilbert(&self) -> &Arc<HilbertSpace> {
        &self.hilbert
    }

    pub fn basis(&self) -> &[Vec<usize>] {
        &self.basis
    }

    pub fn occupation(&self, index: usize) -> &[usize] {
        &self.basis[index]
    }

    pub fn index_of(&self, occupation: &[usize]) -> Option<usize> {
        self.index.get(occupation).copied()
    }

    pub fn total(&self, index: usize) -> usize {
        self.basis[index].iter().sum()
    }

    /// Basis indices of the `n`-particle sector (contiguous).
    pub fn sector(&self, n: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.total(i) == n).collect()
    }

    pub fn sectors_up_to(&self, n: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.total(i) <= n).collect()
    }

    /// Basis states on which every word with at most `raises` creation steps
    /// acts without truncation. The full basis for fermions.
    pub fn exact_domain(&self, raises: usize) -> Vec<usize> {
        match self.statistics {
            Statistics::Fermion => (0..self.dim()).collect(),
            Statistics::Boson => match self.cutoff.checked_sub(raises) {
                Some(max) => self.sectors_up_to(max),
                None => Vec::new(),
            },
        }
    }

    pub fn vacuum(&self) -> Ket {
        Ket::basis(self.hilbert.clone(), 0).expect("the vacuum is always in the basis")
    }

    pub fn basis_ket(&self, occupation: &[usize]) -> Result<Ket> {
        let index = self
            .index_of(occupation)
            .ok_or_else(|| Error::Range(format!("occupation {occupation:?} is not in the Fock basis")))?;
        Ket::basis(self.hilbert.clone(), index)
    }

    /// `a†_i` for the `i`-th basis mode.
    pub fn creator(&self, mode: usize) -> Operator {
        Operator::new(self.hilbert.clone(), self.creators[mode].clone()).expect("square by construction")
    }

    /// `a_i` for the `i`-th basis mode.
    pub fn annihilator(&self, mode: usize) -> Operator {
        self.creator(mode).adjoint()
    }

    pub fn identity(&self) -> Operator {
        Operator::identity(self.hilbert.clone())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeKind {
    Creation,
    Annihilation,
    General,
}

/// A mode operator `a†(f)` or `a(f)` with its mode vector `f`.
#[derive(Debug, Clone)]
pub struct ModeOperator {
    pub kind: ModeKind,
    pub mode: Ket,
    pub op: Operator,
}

impl ModeOperator {
    pub fn adjoint(&self) -> ModeOperator {
        let kind = match self.kind {
            ModeKind::Creation => ModeKind::Annihilation,
            ModeKind::Annihilation => ModeKind::Creation,
            ModeKind::General => ModeKind::General,
        };
        ModeOperator {
            kind,
            mode: self.mode.clone(),
            op: self.op.adjoint(),
        }
    }
}

fn check_mode(space: &FockSpace, f: &Ket) -> Result<()> {
    if f.dim() != space.mode_count() {
        return Err(Error::Dim {
            expected: space.mode_count(),
            found: f.dim(),
        });
    }
    Ok(())
}

/// `a†(f) = Σ_i f_i a†_i`.
pub fn creation_op(space: &FockSpace, f: &Ket) -> Result<ModeOperator> {
    check_mode(space, f)?;
    let n = space.dim();
    let mut m = DMatrix::zeros(n, n);
    for (i, creator) in space.creators.iter().enumerate() {
        m += creator * f.amplitude(i);
    }
    Ok(ModeOperator {
        kind: ModeKind::Creation,
        mode: f.with_space(space.mode_space().clone()),
        op: Operator::new(space.hilbert().clone(), m)?,
    })
}

/// `a(f) = Σ_i f̄_i a_i`, the adjoint of [`creation_op`].
pub fn annihilation_op(space: &FockSpace, f: &Ket) -> Result<ModeOperator> {
    Ok(creation_op(space, f)?.adjoint())
}

/// `a†(f) a(f)`.
pub fn number_op(space: &FockSpace, f: &Ket) -> Result<Operator> {
    let create = creation_op(space, f)?;
    Ok(&create.op * &create.op.adjoint())
}

/// Largest violation of the canonical (anti)commutation relations for the
/// pair of modes `f`, `g`:
///
/// `[a(f), a†(g)]∓ = ⟨f|g⟩`, `[a(f), a(g)]∓ = 0`, `[a†(f), a†(g)]∓ = 0`,
///
/// measured in operator norm. Bosonic relations are checked on the sectors
/// below the cutoff, where one creation step is never truncated; fermionic
/// relations on the whole space.
pub fn check_ccr_car(space: &FockSpace, f: &Ket, g: &Ket) -> Result<f64> {
    let a_f = annihilation_op(space, f)?.op;
    let a_g = annihilation_op(space, g)?.op;
    let adag_f = a_f.adjoint();
    let adag_g = a_g.adjoint();
    let bracket = match space.statistics() {
        Statistics::Boson => commutator,
        Statistics::Fermion => anticommutator,
    };
    let overlap = f.inner(g);
    let columns = space.exact_domain(1);
    let deviations = [
        &bracket(&a_f, &adag_g) - &space.identity().scale(overlap),
        bracket(&a_f, &a_g),
        bracket(&adag_f, &adag_g),
    ];
    Ok(deviations
        .iter()
        .map(|d| d.restricted_norm(&columns))
        .fold(0.0, f64::max))
}

/// `|k⟩ = (a†_L)^k (a†_R)^{N−k} |0⟩ / √(k!(N−k)!)` on a two-mode space,
/// i.e. the basis state with occupation `(k, N−k)`.
pub fn number_state(space: &FockSpace, k: usize, n: usize) -> Result<Ket> {
    if space.mode_count() != 2 {
        return Err(Error::InvalidArgument(format!(
            "number states need two modes, the space has {}",
            space.mode_count()
        )));
    }
    if k > n || n > space.cutoff() {
        return Err(Error::Range(format!(
            "need k ≤ N ≤ cutoff, got k = {k}, N = {n}, cutoff = {}",
            space.cutoff()
        )));
    }
    space.basis_ket(&[k, n - k])
}

/// `Π_i (a†(f_i))^{n_i} / √(n_i!) |0⟩` for an orthonormal set of modes `f_i`.
pub fn mode_number_state(space: &FockSpace, modes: &[Ket], occupations: &[usize]) -> Result<Ket> {
    if modes.len() != occupations.len() {
        return Err(Error::Dim {
            expected: modes.len(),
            found: occupations.len(),
        });
    }
    let mut state = space.vacuum();
    for (f, &count) in modes.iter().zip(occupations).rev() {
        let create = creation_op(space, f)?.op;
        for m in 1..=count {
            state = create.apply(&state).scale(re(1.0 / (m as f64).sqrt()));
        }
    }
    Ok(state)
}

/// The delocalized modes `b± = (a_L ± a_R)/√2` of a two-mode space, returned
/// as annihilation operators `(b₊, b₋)`.
pub fn bogoliubov_modes(space: &FockSpace) -> Result<(ModeOperator, ModeOperator)> {
    let (plus, minus) = bogoliubov_mode_vectors(space)?;
    Ok((annihilation_op(space, &plus)?, annihilation_op(space, &minus)?))
}

/// `|E±⟩ = (|L⟩ ± |R⟩)/√2` in the mode space.
pub fn bogoliubov_mode_vectors(space: &FockSpace) -> Result<(Ket, Ket)> {
    if space.mode_count() != 2 {
        return Err(Error::InvalidArgument(format!(
            "the Bogoliubov pair needs two modes, the space has {}",
            space.mode_count()
        )));
    }
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let modes = space.mode_space().clone();
    Ok((Ket::from_real(modes.clone(), &[s, s])?, Ket::from_real(modes, &[s, -s])?))
}

/// Number of words of length `0..=degree` over `{a, a†}`.
pub fn word_count(degree: usize) -> usize {
    (1usize << (degree + 1)) - 1
}

/// Matrices of every word of length `0..=degree` over `{a_i, a†_i}`.
///
/// Words are ordered by length and then by their bit pattern read from the
/// left, with bit `0` for `a` and `1` for `a†`.
pub fn mode_words(space: &FockSpace, mode: usize, degree: usize) -> Result<Vec<Operator>> {
    if mode >= space.mode_count() {
        return Err(Error::Range(format!("mode {mode} of {}", space.mode_count())));
    }
    let create = &space.creators[mode];
    let annihilate = create.adjoint();
    let n = space.dim();
    let mut words = vec![DMatrix::<C64>::identity(n, n)];
    let mut previous = 0..1;
    for _ in 1..=degree {
        let start = words.len();
        for prefix in previous.clone() {
            let lowered = &words[prefix] * &annihilate;
            let raised = &words[prefix] * create;
            words.push(lowered);
            words.push(raised);
        }
        previous = start..words.len();
    }
    words
        .into_iter()
        .map(|m| Operator::new(space.hilbert().clone(), m))
        .collect()
}

/// `Σ_w c_w w`, pairing `words` from [`mode_words`] with `coefficients`.
pub fn combine_words(words: &[Operator], coefficients: &[C64]) -> Result<Operator> {
    if coefficients.len() != words.len() {
        return Err(Error::Dim {
            expected: words.len(),
            found: coefficients.len(),
        });
    }
    let Some(first) = words.first() else {
        return Err(Error::InvalidArgument("no words to combine".into()));
    };
    let mut total = DMatrix::<C64>::zeros(first.dim(), first.dim());
    for (w, c) in words.iter().zip(coefficients) {
        total += w.matrix() * *c;
    }
    Operator::new(first.space().clone(), total)
}

/// `Σ_w c_w w(a_i, a†_i)` over all words `w` of length at most `degree` in the
/// ladder operators of a single basis mode; `coefficients` follows the
/// [`mode_words`] order and must have [`word_count`]`(degree)` entries.
pub fn mode_polynomial(space: &FockSpace, mode: usize, degree: usize, coefficients: &[C64]) -> Result<Operator> {
    if coefficients.len() != word_count(degree) {
        return Err(Error::Dim {
            expected: word_count(degree),
            found: coefficients.len(),
        });
    }
    combine_words(&mode_words(space, mode, degree)?, coefficients)
}
