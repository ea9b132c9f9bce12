//! Dense finite-dimensional linear algebra: kets, operators, tensor products,
//! Schmidt decomposition, partial trace and von Neumann entropy.
//!
//! Tensor products use row-major Kronecker ordering: the left factor's index
//! is the major index, so `|i⟩⊗|j⟩` sits at position `i * d2 + j`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{Error, Result};
use crate::tol::{EIGENVALUE_FLOOR, TOL};

pub type C64 = nalgebra::Complex<f64>;

pub(crate) fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub(crate) fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

const TENSOR_SEPARATOR: char = '⊗';

/// A finite-dimensional Hilbert space with a labeled orthonormal basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HilbertSpace {
    labels: Vec<String>,
}

impl HilbertSpace {
    pub fn new<I, S>(labels: I) -> Result<Arc<Self>>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::Labels("a space needs at least one basis vector".into()));
        }
        for (i, label) in labels.iter().enumerate() {
            if label.contains(TENSOR_SEPARATOR) {
                return Err(Error::Labels(format!("label `{label}` contains `{TENSOR_SEPARATOR}`")));
            }
            if labels[..i].contains(label) {
                return Err(Error::Labels(format!("duplicate label `{label}`")));
            }
        }
        Ok(Arc::new(Self { labels }))
    }

    /// `ℂ^dim` with basis labels `0, 1, …, dim-1`.
    pub fn indexed(dim: usize) -> Arc<Self> {
        assert!(dim > 0, "a space needs at least one basis vector");
        Arc::new(Self {
            labels: (0..dim).map(|i| i.to_string()).collect(),
        })
    }

    pub fn qubit() -> Arc<Self> {
        Self::indexed(2)
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// The product space; labels are concatenated when every factor label is a
    /// single character (`"0"`,`"1"` → `"01"`) and joined with `⊗` otherwise.
    pub fn tensor(&self, other: &HilbertSpace) -> Arc<Self> {
        let short = self
            .labels
            .iter()
            .chain(&other.labels)
            .all(|l| l.chars().count() == 1);
        let labels = self
            .labels
            .iter()
            .flat_map(|a| {
                other.labels.iter().map(move |b| {
                    if short {
                        format!("{a}{b}")
                    } else {
                        format!("{a}{TENSOR_SEPARATOR}{b}")
                    }
                })
            })
            .collect();
        Arc::new(Self { labels })
    }
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::Dim { expected, found })
    }
}

/// A vector in a [`HilbertSpace`].
#[derive(Debug, Clone, PartialEq)]
pub struct Ket {
    space: Arc<HilbertSpace>,
    amps: DVector<C64>,
}

impl Ket {
    pub fn new(space: Arc<HilbertSpace>, amplitudes: Vec<C64>) -> Result<Self> {
        Self::from_vector(space, DVector::from_vec(amplitudes))
    }

    pub fn from_vector(space: Arc<HilbertSpace>, amps: DVector<C64>) -> Result<Self> {
        check_dim(space.dim(), amps.len())?;
        if amps.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::InvalidArgument("non-finite amplitude".into()));
        }
        Ok(Self { space, amps })
    }

    pub fn from_real(space: Arc<HilbertSpace>, amplitudes: &[f64]) -> Result<Self> {
        Self::new(space, amplitudes.iter().map(|&x| re(x)).collect())
    }

    pub fn zero(space: Arc<HilbertSpace>) -> Self {
        let dim = space.dim();
        Self {
            space,
            amps: DVector::zeros(dim),
        }
    }

    pub fn basis(space: Arc<HilbertSpace>, index: usize) -> Result<Self> {
        if index >= space.dim() {
            return Err(Error::Range(format!(
                "basis index {index} in a space of dimension {}",
                space.dim()
            )));
        }
        let mut ket = Self::zero(space);
        ket.amps[index] = re(1.0);
        Ok(ket)
    }

    pub fn basis_labeled(space: Arc<HilbertSpace>, label: &str) -> Result<Self> {
        let index = space
            .index_of(label)
            .ok_or_else(|| Error::Labels(format!("no basis vector labeled `{label}`")))?;
        Self::basis(space, index)
    }

    pub fn space(&self) -> &Arc<HilbertSpace> {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &DVector<C64> {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> C64 {
        self.amps[index]
    }

    /// `⟨self|other⟩`, antilinear in `self`.
    ///
    /// Panics when the dimensions differ.
    pub fn inner(&self, other: &Ket) -> C64 {
        assert_eq!(self.dim(), other.dim(), "inner product of kets of different dimension");
        self.amps.dotc(&other.amps)
    }

    pub fn norm_sq(&self) -> f64 {
        self.amps.norm_squared()
    }

    pub fn norm(&self) -> f64 {
        self.amps.norm()
    }

    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.norm() - 1.0).abs() <= tol
    }

    pub fn normalized(&self) -> Result<Ket> {
        let n = self.norm();
        if n <= EIGENVALUE_FLOOR {
            return Err(Error::NullState);
        }
        Ok(self.scale(re(1.0 / n)))
    }

    pub fn scale(&self, factor: C64) -> Ket {
        Ket {
            space: self.space.clone(),
            amps: &self.amps * factor,
        }
    }

    pub fn conj(&self) -> Ket {
        Ket {
            space: self.space.clone(),
            amps: self.amps.map(|a| a.conj()),
        }
    }

    /// Euclidean distance to `other`.
    pub fn distance(&self, other: &Ket) -> f64 {
        (&self.amps - &other.amps).norm()
    }

    pub(crate) fn with_space(&self, space: Arc<HilbertSpace>) -> Ket {
        debug_assert_eq!(space.dim(), self.dim());
        Ket {
            space,
            amps: self.amps.clone(),
        }
    }
}

impl Add<&Ket> for &Ket {
    type Output = Ket;

    fn add(self, rhs: &Ket) -> Ket {
        assert_eq!(self.dim(), rhs.dim(), "sum of kets of different dimension");
        Ket {
            space: self.space.clone(),
            amps: &self.amps + &rhs.amps,
        }
    }
}

impl Sub<&Ket> for &Ket {
    type Output = Ket;

    fn sub(self, rhs: &Ket) -> Ket {
        assert_eq!(self.dim(), rhs.dim(), "difference of kets of different dimension");
        Ket {
            space: self.space.clone(),
            amps: &self.amps - &rhs.amps,
        }
    }
}

impl Neg for &Ket {
    type Output = Ket;

    fn neg(self) -> Ket {
        self.scale(re(-1.0))
    }
}

impl fmt::Display for Ket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (label, a) in self.space.labels().iter().zip(self.amps.iter()) {
            if a.norm() <= EIGENVALUE_FLOOR {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({:.6}{:+.6}i)|{label}⟩", a.re, a.im)?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// A dense square matrix acting on a [`HilbertSpace`].
#[derive(Debug, Clone, PartialEq)]
pub struct Operator {
    space: Arc<HilbertSpace>,
    matrix: DMatrix<C64>,
}

impl Operator {
    pub fn new(space: Arc<HilbertSpace>, matrix: DMatrix<C64>) -> Result<Self> {
        check_dim(space.dim(), matrix.nrows())?;
        check_dim(space.dim(), matrix.ncols())?;
        Ok(Self { space, matrix })
    }

    /// Builds an operator from real row-major entries.
    pub fn from_real_rows(space: Arc<HilbertSpace>, rows: &[&[f64]]) -> Result<Self> {
        let n = space.dim();
        check_dim(n, rows.len())?;
        for row in rows {
            check_dim(n, row.len())?;
        }
        let matrix = DMatrix::from_fn(n, n, |i, j| re(rows[i][j]));
        Self::new(space, matrix)
    }

    pub fn identity(space: Arc<HilbertSpace>) -> Self {
        let n = space.dim();
        Self {
            space,
            matrix: DMatrix::identity(n, n),
        }
    }

    pub fn zeros(space: Arc<HilbertSpace>) -> Self {
        let n = space.dim();
        Self {
            space,
            matrix: DMatrix::zeros(n, n),
        }
    }

    /// `|ket⟩⟨bra|`.
    pub fn outer(ket: &Ket, bra: &Ket) -> Self {
        assert_eq!(ket.dim(), bra.dim(), "outer product of kets of different dimension");
        Self {
            space: ket.space.clone(),
            matrix: &ket.amps * bra.amps.adjoint(),
        }
    }

    /// `|ket⟩⟨ket|` (not normalized).
    pub fn projector(ket: &Ket) -> Self {
        Self::outer(ket, ket)
    }

    pub fn space(&self) -> &Arc<HilbertSpace> {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.matrix
    }

    pub fn entry(&self, row: usize, col: usize) -> C64 {
        self.matrix[(row, col)]
    }

    pub fn adjoint(&self) -> Self {
        Self {
            space: self.space.clone(),
            matrix: self.matrix.adjoint(),
        }
    }

    pub fn trace(&self) -> C64 {
        self.matrix.trace()
    }

    pub fn scale(&self, factor: C64) -> Self {
        Self {
            space: self.space.clone(),
            matrix: &self.matrix * factor,
        }
    }

    /// `A|ket⟩`. Panics when the dimensions differ.
    pub fn apply(&self, ket: &Ket) -> Ket {
        assert_eq!(self.dim(), ket.dim(), "operator applied to a ket of different dimension");
        Ket {
            space: self.space.clone(),
            amps: &self.matrix * &ket.amps,
        }
    }

    /// Frobenius norm of `A − A†`.
    pub fn hermiticity_error(&self) -> f64 {
        (&self.matrix - self.matrix.adjoint()).norm()
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_error() <= tol
    }

    /// `(A + A†)/2`.
    pub fn hermitian_part(&self) -> Self {
        Self {
            space: self.space.clone(),
            matrix: (&self.matrix + self.matrix.adjoint()) * re(0.5),
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.matrix.norm()
    }

    /// Largest singular value.
    pub fn operator_norm(&self) -> f64 {
        operator_norm(&self.matrix)
    }

    /// Largest singular value of the restriction of `A` to the span of the
    /// basis vectors listed in `columns`.
    pub fn restricted_norm(&self, columns: &[usize]) -> f64 {
        operator_norm(&self.matrix.select_columns(columns))
    }

    /// Real eigenvalues of the hermitian part, ascending.
    pub fn hermitian_eigenvalues(&self) -> Vec<f64> {
        let h = (&self.matrix + self.matrix.adjoint()) * re(0.5);
        let mut values: Vec<f64> = SymmetricEigen::new(h).eigenvalues.iter().copied().collect();
        values.sort_by(f64::total_cmp);
        values
    }

    /// Maximum entrywise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &Operator) -> f64 {
        assert_eq!(self.dim(), other.dim(), "comparing operators of different dimension");
        (&self.matrix - &other.matrix).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

pub(crate) fn operator_norm(m: &DMatrix<C64>) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.clone()
        .singular_values()
        .iter()
        .copied()
        .fold(0.0, f64::max)
}

impl Mul<&Operator> for &Operator {
    type Output = Operator;

    fn mul(self, rhs: &Operator) -> Operator {
        assert_eq!(self.dim(), rhs.dim(), "product of operators of different dimension");
        Operator {
            space: self.space.clone(),
            matrix: &self.matrix * &rhs.matrix,
        }
    }
}

impl Add<&Operator> for &Operator {
    type Output = Operator;

    fn add(self, rhs: &Operator) -> Operator {
        assert_eq!(self.dim(), rhs.dim(), "sum of operators of different dimension");
        Operator {
            space: self.space.clone(),
            matrix: &self.matrix + &rhs.matrix,
        }
    }
}

impl Sub<&Operator> for &Operator {
    type Output = Operator;

    fn sub(self, rhs: &Operator) -> Operator {
        assert_eq!(self.dim(), rhs.dim(), "difference of operators of different dimension");
        Operator {
            space: self.space.clone(),
            matrix: &self.matrix - &rhs.matrix,
        }
    }
}

/// `[a, b] = ab − ba`.
pub fn commutator(a: &Operator, b: &Operator) -> Operator {
    &(a * b) - &(b * a)
}

/// `{a, b} = ab + ba`.
pub fn anticommutator(a: &Operator, b: &Operator) -> Operator {
    &(a * b) + &(b * a)
}

/// The Pauli matrices on a qubit, `σ₃|k⟩ = (−1)^k |k⟩`.
pub mod pauli {
    use super::*;

    pub fn x() -> Operator {
        Operator::from_real_rows(HilbertSpace::qubit(), &[&[0.0, 1.0], &[1.0, 0.0]]).unwrap()
    }

    pub fn y() -> Operator {
        let m = DMatrix::from_row_slice(2, 2, &[re(0.0), c(0.0, -1.0), c(0.0, 1.0), re(0.0)]);
        Operator::new(HilbertSpace::qubit(), m).unwrap()
    }

    pub fn z() -> Operator {
        Operator::from_real_rows(HilbertSpace::qubit(), &[&[1.0, 0.0], &[0.0, -1.0]]).unwrap()
    }

    pub fn identity() -> Operator {
        Operator::identity(HilbertSpace::qubit())
    }
}

/// The four Bell states of two qubits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bell {
    PsiPlus,
    PsiMinus,
    PhiPlus,
    PhiMinus,
}

impl Bell {
    pub const ALL: [Bell; 4] = [Bell::PsiPlus, Bell::PsiMinus, Bell::PhiPlus, Bell::PhiMinus];

    /// `Ψ± = (|01⟩ ± |10⟩)/√2`, `Φ± = (|00⟩ ± |11⟩)/√2`.
    pub fn ket(self) -> Ket {
        let q = HilbertSpace::qubit();
        let zero = Ket::basis(q.clone(), 0).unwrap();
        let one = Ket::basis(q, 1).unwrap();
        let (a, b, sign) = match self {
            Bell::PsiPlus => ((&zero, &one), (&one, &zero), 1.0),
            Bell::PsiMinus => ((&zero, &one), (&one, &zero), -1.0),
            Bell::PhiPlus => ((&zero, &zero), (&one, &one), 1.0),
            Bell::PhiMinus => ((&zero, &zero), (&one, &one), -1.0),
        };
        let first = tensor_ket(a.0, a.1);
        let second = tensor_ket(b.0, b.1).scale(re(sign));
        (&first + &second).scale(re(std::f64::consts::FRAC_1_SQRT_2))
    }

    pub fn name(self) -> &'static str {
        match self {
            Bell::PsiPlus => "Psi+",
            Bell::PsiMinus => "Psi-",
            Bell::PhiPlus => "Phi+",
            Bell::PhiMinus => "Phi-",
        }
    }
}

/// Kronecker product of two kets, left index major.
pub fn tensor_ket(v: &Ket, w: &Ket) -> Ket {
    Ket {
        space: v.space.tensor(&w.space),
        amps: v.amps.kronecker(&w.amps),
    }
}

/// Kronecker product of two operators, left index major.
pub fn tensor_op(a: &Operator, b: &Operator) -> Operator {
    Operator {
        space: a.space.tensor(&b.space),
        matrix: a.matrix.kronecker(&b.matrix),
    }
}

/// `|ψ⟩ = Σ_j λ_j |u_j⟩⊗|v_j⟩` with `λ` descending and strictly positive.
#[derive(Debug, Clone)]
pub struct SchmidtForm {
    pub coefficients: Vec<f64>,
    pub left_vectors: Vec<Ket>,
    pub right_vectors: Vec<Ket>,
}

impl SchmidtForm {
    pub fn rank(&self) -> usize {
        self.coefficients.len()
    }

    /// The `i`-th coefficient, zero beyond the rank.
    pub fn coefficient(&self, i: usize) -> f64 {
        self.coefficients.get(i).copied().unwrap_or(0.0)
    }

    pub fn reconstruct(&self) -> Ket {
        let d1 = self.left_vectors[0].dim();
        let d2 = self.right_vectors[0].dim();
        let mut out = Ket::zero(HilbertSpace::indexed(d1 * d2));
        for ((&lambda, u), v) in self.coefficients.iter().zip(&self.left_vectors).zip(&self.right_vectors) {
            out.amps += tensor_ket(u, v).amps * re(lambda);
        }
        out
    }
}

fn bipartite_shape(dim: usize, d1: usize, d2: usize) -> Result<()> {
    if d1 == 0 || d2 == 0 {
        return Err(Error::InvalidArgument("factor dimensions must be positive".into()));
    }
    check_dim(d1 * d2, dim)
}

pub fn schmidt_decompose(state: &Ket, d1: usize, d2: usize) -> Result<SchmidtForm> {
    bipartite_shape(state.dim(), d1, d2)?;
    if !state.is_normalized(TOL) {
        return Err(Error::Norm(state.norm()));
    }
    let amps = state.amplitudes();
    let m = DMatrix::from_fn(d1, d2, |i, j| amps[i * d2 + j]);
    let svd = m.svd(true, true);
    let u = svd.u.expect("left singular vectors requested");
    let v_t = svd.v_t.expect("right singular vectors requested");

    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));

    let left_space = HilbertSpace::indexed(d1);
    let right_space = HilbertSpace::indexed(d2);
    let mut form = SchmidtForm {
        coefficients: Vec::new(),
        left_vectors: Vec::new(),
        right_vectors: Vec::new(),
    };
    for k in order {
        let lambda = svd.singular_values[k];
        if lambda <= EIGENVALUE_FLOOR {
            continue;
        }
        form.coefficients.push(lambda);
        form.left_vectors.push(Ket {
            space: left_space.clone(),
            amps: u.column(k).into_owned(),
        });
        form.right_vectors.push(Ket {
            space: right_space.clone(),
            amps: v_t.row(k).transpose(),
        });
    }
    Ok(form)
}

/// A pure bipartite state is a product state iff its second Schmidt
/// coefficient vanishes.
pub fn is_separable_pure(state: &Ket, d1: usize, d2: usize, tol: f64) -> Result<bool> {
    Ok(schmidt_decompose(state, d1, d2)?.coefficient(1) <= tol)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    First,
    Second,
}

/// Reduced density matrix of the `keep` factor of a `d1·d2` bipartite state.
pub fn partial_trace(rho: &Operator, d1: usize, d2: usize, keep: Subsystem) -> Result<Operator> {
    bipartite_shape(rho.dim(), d1, d2)?;
    let tr = rho.trace();
    if (tr - re(1.0)).norm() > TOL {
        return Err(Error::Trace(tr.re));
    }
    let m = rho.matrix();
    let reduced = match keep {
        Subsystem::First => DMatrix::from_fn(d1, d1, |i, k| {
            (0..d2).map(|j| m[(i * d2 + j, k * d2 + j)]).sum()
        }),
        Subsystem::Second => DMatrix::from_fn(d2, d2, |j, l| {
            (0..d1).map(|i| m[(i * d2 + j, i * d2 + l)]).sum()
        }),
    };
    Operator::new(HilbertSpace::indexed(reduced.nrows()), reduced)
}

/// `S(ρ) = −Σ p log₂ p` over the eigenvalues of a density matrix, in bits.
pub fn von_neumann_entropy(rho: &Operator) -> Result<f64> {
    let herm = rho.hermiticity_error();
    if herm > TOL {
        return Err(Error::NotHermitian(herm));
    }
    let tr = rho.trace();
    if (tr - re(1.0)).norm() > TOL {
        return Err(Error::Trace(tr.re));
    }
    let eigenvalues = rho.hermitian_eigenvalues();
    if let Some(&lowest) = eigenvalues.first() {
        if lowest < -TOL {
            return Err(Error::NotPsd(lowest));
        }
    }
    let s: f64 = eigenvalues
        .iter()
        .filter(|&&p| p > EIGENVALUE_FLOOR)
        .map(|&p| -p * p.log2())
        .sum();
    Ok(s.max(0.0))
}

/// `⟨ψ|A|ψ⟩`.
pub fn expectation(state: &Ket, op: &Operator) -> Result<C64> {
    check_dim(op.dim(), state.dim())?;
    Ok(state.inner(&op.apply(state)))
}

/// `Σ_j λ_j ⟨ψ_j|A|ψ_j⟩` for an explicit convex decomposition.
pub fn mixed_expectation(decomposition: &[(f64, Ket)], op: &Operator) -> Result<C64> {
    if decomposition.is_empty() || decomposition.iter().any(|(w, _)| w.is_nan() || *w < 0.0) {
        return Err(Error::Weights);
    }
    let total: f64 = decomposition.iter().map(|(w, _)| w).sum();
    if (total - 1.0).abs() > TOL {
        return Err(Error::Weights);
    }
    decomposition
        .iter()
        .map(|(w, psi)| expectation(psi, op).map(|e| e * *w))
        .sum()
}
