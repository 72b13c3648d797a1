//! Core state representations and the small dense linear-algebra kernel.
//!
//! Three-qubit amplitudes are indexed by the bitstring `ijk` mapped to
//! `4i + 2j + k`, with qubit A the leftmost bit. All matrices here are tiny
//! (dimension 2, 4 or 8), so the eigensolver is a cyclic complex Jacobi
//! iteration rather than a LAPACK binding.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub type C64 = Complex64;

/// Dimension of a three-qubit state vector.
pub const STATE_DIM: usize = 8;

const NORM_TOL: f64 = 1e-12;
const HERMITIAN_TOL: f64 = 1e-12;
const TRACE_TOL: f64 = 1e-12;
const EIGEN_FLOOR: f64 = -1e-10;

/// Sign of a GHZ basis state, `(|a> + |b>)/sqrt(2)` vs `(|a> - |b>)/sqrt(2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn factor(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

impl std::fmt::Display for Sign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// Label of one of the eight GHZ basis states, e.g. `(2, -)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GhzLabel {
    index: u8,
    sign: Sign,
}

impl GhzLabel {
    pub fn new(index: u8, sign: Sign) -> Result<Self> {
        if !(1..=4).contains(&index) {
            return Err(Error::InvalidGhzIndex(index));
        }
        Ok(GhzLabel { index, sign })
    }

    pub fn index(&self) -> u8 {
        self.index
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    /// Computational-basis pair `(p, q)` such that the state is
    /// `(|p> ± |q>)/sqrt(2)` in the 4i+2j+k indexing.
    pub fn computational_pair(&self) -> (usize, usize) {
        match self.index {
            1 => (0b000, 0b111),
            2 => (0b110, 0b001),
            3 => (0b101, 0b010),
            _ => (0b011, 0b100),
        }
    }
}

impl std::fmt::Display for GhzLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}{}", self.index, self.sign)
    }
}

/// One of the three qubits. A is the leftmost bit of the index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Subsystem {
    A,
    B,
    C,
}

impl Subsystem {
    /// Bit position inside the 3-bit index (A is most significant).
    pub(crate) fn bit(self) -> usize {
        match self {
            Subsystem::A => 2,
            Subsystem::B => 1,
            Subsystem::C => 0,
        }
    }
}

/// Normalized three-qubit pure state.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState {
    amps: [C64; STATE_DIM],
}

impl PureState {
    /// Builds a state from amplitudes; the norm must be 1 within 1e-12.
    pub fn new(amps: [C64; STATE_DIM]) -> Result<Self> {
        let norm = vec_norm(&amps);
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(norm));
        }
        Ok(PureState { amps })
    }

    /// Builds a state from amplitudes whose norm may deviate from 1 by up to
    /// `tol`; the result is renormalized exactly.
    pub fn from_amplitudes(amps: [C64; STATE_DIM], tol: f64) -> Result<Self> {
        let norm = vec_norm(&amps);
        if (norm - 1.0).abs() > tol {
            return Err(Error::NotNormalized(norm));
        }
        let mut amps = amps;
        for a in &mut amps {
            *a /= norm;
        }
        Ok(PureState { amps })
    }

    pub(crate) fn from_raw(amps: [C64; STATE_DIM]) -> Self {
        debug_assert!((vec_norm(&amps) - 1.0).abs() < 1e-9);
        PureState { amps }
    }

    pub fn amplitudes(&self) -> &[C64; STATE_DIM] {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> C64 {
        self.amps[index]
    }

    /// Inner product `<self|other>`.
    pub fn inner(&self, other: &PureState) -> C64 {
        self.amps
            .iter()
            .zip(other.amps.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Rank-1 projector |psi><psi|.
    pub fn projector(&self) -> DensityMatrix {
        let mat = Matrix::outer(&self.amps);
        DensityMatrix { mat }
    }

    /// State with qubits permuted: qubit `q` of the result is qubit
    /// `perm[q]` of the input.
    pub fn permute_qubits(&self, perm: [usize; 3]) -> PureState {
        let mut out = [C64::new(0.0, 0.0); STATE_DIM];
        for (idx, amp) in self.amps.iter().enumerate() {
            let bits = [(idx >> 2) & 1, (idx >> 1) & 1, idx & 1];
            let new = (bits[perm[0]] << 2) | (bits[perm[1]] << 1) | bits[perm[2]];
            out[new] = *amp;
        }
        PureState { amps: out }
    }

    /// Applies diag(1, e^{i theta}) on a single qubit.
    pub fn apply_phase(&self, qubit: Subsystem, theta: f64) -> PureState {
        let phase = C64::from_polar(1.0, theta);
        let bit = qubit.bit();
        let mut out = self.amps;
        for (idx, amp) in out.iter_mut().enumerate() {
            if (idx >> bit) & 1 == 1 {
                *amp *= phase;
            }
        }
        PureState { amps: out }
    }
}

/// The GHZ basis state for a label, e.g. `(1,+) -> (|000> + |111>)/sqrt(2)`.
pub fn ghz_state(label: GhzLabel) -> PureState {
    let mut amps = [C64::new(0.0, 0.0); STATE_DIM];
    let (p, q) = label.computational_pair();
    let inv = std::f64::consts::FRAC_1_SQRT_2;
    amps[p] = C64::new(inv, 0.0);
    amps[q] = C64::new(label.sign().factor() * inv, 0.0);
    PureState { amps }
}

fn vec_norm(v: &[C64]) -> f64 {
    v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

/// Dense square complex matrix, row-major, dimension at most 8.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    dim: usize,
    data: Vec<C64>,
}

impl Matrix {
    pub fn zeros(dim: usize) -> Self {
        Matrix {
            dim,
            data: vec![C64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Matrix::zeros(dim);
        for i in 0..dim {
            m.set(i, i, C64::new(1.0, 0.0));
        }
        m
    }

    pub fn from_entries(dim: usize, entries: Vec<C64>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                got: entries.len(),
            });
        }
        Ok(Matrix { dim, data: entries })
    }

    /// Outer product vv† of a vector.
    pub fn outer(v: &[C64]) -> Self {
        let dim = v.len();
        let mut m = Matrix::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m.set(i, j, v[i] * v[j].conj());
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.data[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: C64) {
        self.data[i * self.dim + j] = v;
    }

    pub fn entries(&self) -> &[C64] {
        &self.data
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> Matrix {
        let n = self.dim;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, self.get(j, i).conj());
            }
        }
        out
    }

    pub fn conj(&self) -> Matrix {
        let mut out = self.clone();
        for v in &mut out.data {
            *v = v.conj();
        }
        out
    }

    pub fn scale(&self, s: f64) -> Matrix {
        let mut out = self.clone();
        for v in &mut out.data {
            *v *= s;
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.dim, other.dim);
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(other.data.iter()) {
            *a += b;
        }
        out
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.dim, other.dim);
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(other.data.iter()) {
            *a -= b;
        }
        out
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entrywise deviation from A = A†.
    pub fn hermitian_deviation(&self) -> f64 {
        let mut dev: f64 = 0.0;
        for i in 0..self.dim {
            for j in i..self.dim {
                dev = dev.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        dev
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.dim).map(|i| self.get(i, j)).collect()
    }
}

/// Hermitian, unit-trace, positive semidefinite matrix of dimension 2, 4 or 8.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    mat: Matrix,
}

impl DensityMatrix {
    pub fn new(dim: usize, entries: Vec<C64>) -> Result<Self> {
        let mat = Matrix::from_entries(dim, entries)?;
        DensityMatrix::from_matrix(mat)
    }

    pub fn from_matrix(mat: Matrix) -> Result<Self> {
        if ![2, 4, 8].contains(&mat.dim()) {
            return Err(Error::UnsupportedDimension(mat.dim()));
        }
        let dev = mat.hermitian_deviation();
        if dev > HERMITIAN_TOL {
            return Err(Error::NotHermitian(dev));
        }
        let tr = mat.trace();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(Error::InvalidTrace(tr.re));
        }
        let eig = hermitian_eigensystem(&mat)?;
        let min = eig.values.last().copied().unwrap_or(0.0);
        if min < EIGEN_FLOOR {
            return Err(Error::NotPsd(min));
        }
        Ok(DensityMatrix { mat })
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.mat
    }

    pub fn entry(&self, i: usize, j: usize) -> C64 {
        self.mat.get(i, j)
    }

    /// Eigenvalues in descending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigensystem(&self.mat)
            .expect("density matrix is Hermitian")
            .values
    }

    /// Number of eigenvalues above `tol`.
    pub fn rank(&self, tol: f64) -> usize {
        self.eigenvalues().iter().filter(|&&v| v > tol).count()
    }
}

/// Weighted list of pure states: weights positive, summing to 1.
#[derive(Clone, Debug)]
pub struct Ensemble {
    members: Vec<(f64, PureState)>,
}

impl Ensemble {
    pub fn new(members: Vec<(f64, PureState)>) -> Result<Self> {
        let mut sum = 0.0;
        for (w, _) in &members {
            if w.is_nan() || *w <= 0.0 {
                return Err(Error::NonPositiveWeight(*w));
            }
            sum += w;
        }
        if (sum - 1.0).abs() > NORM_TOL {
            return Err(Error::WeightSum(sum));
        }
        Ok(Ensemble { members })
    }

    pub fn members(&self) -> &[(f64, PureState)] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Mixture sum_i w_i |psi_i><psi_i| of an ensemble of three-qubit states.
pub fn density_from_ensemble(e: &Ensemble) -> DensityMatrix {
    let vecs: Vec<(f64, &[C64])> = e
        .members
        .iter()
        .map(|(w, s)| (*w, s.amplitudes().as_slice()))
        .collect();
    mixture(&vecs).expect("ensemble members share dimension 8")
}

/// Mixture of weighted state vectors of uniform dimension 2, 4 or 8.
/// Members of differing lengths are rejected.
pub fn mixture(members: &[(f64, &[C64])]) -> Result<DensityMatrix> {
    let dim = members.first().map(|(_, v)| v.len()).unwrap_or(0);
    if ![2, 4, 8].contains(&dim) {
        return Err(Error::UnsupportedDimension(dim));
    }
    let mut mat = Matrix::zeros(dim);
    for (w, v) in members {
        if v.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: v.len(),
            });
        }
        for i in 0..dim {
            for j in 0..dim {
                let e = mat.get(i, j) + v[i] * v[j].conj() * *w;
                mat.set(i, j, e);
            }
        }
    }
    DensityMatrix::from_matrix(mat)
}

/// Reduced density matrix on the kept subsystems of an 8-dimensional state.
/// `keep` must be a nonempty proper subset of {A, B, C}; duplicates are
/// ignored. Kept qubits keep their A,B,C order in the output index.
pub fn partial_trace(rho: &DensityMatrix, keep: &[Subsystem]) -> Result<DensityMatrix> {
    if rho.dim() != STATE_DIM {
        return Err(Error::DimensionMismatch {
            expected: STATE_DIM,
            got: rho.dim(),
        });
    }
    let mut kept: Vec<Subsystem> = Vec::new();
    for s in [Subsystem::A, Subsystem::B, Subsystem::C] {
        if keep.contains(&s) {
            kept.push(s);
        }
    }
    if kept.is_empty() || kept.len() == 3 {
        return Err(Error::InvalidSubsystem);
    }
    let traced: Vec<usize> = [Subsystem::A, Subsystem::B, Subsystem::C]
        .iter()
        .filter(|s| !kept.contains(s))
        .map(|s| s.bit())
        .collect();
    let kbits: Vec<usize> = kept.iter().map(|s| s.bit()).collect();
    let out_dim = 1usize << kbits.len();
    let mut out = Matrix::zeros(out_dim);

    let assemble = |kept_idx: usize, traced_idx: usize| -> usize {
        let mut full = 0usize;
        for (pos, bit) in kbits.iter().enumerate() {
            // first kept subsystem is the most significant output bit
            full |= ((kept_idx >> (kbits.len() - 1 - pos)) & 1) << bit;
        }
        for (pos, bit) in traced.iter().enumerate() {
            full |= ((traced_idx >> pos) & 1) << bit;
        }
        full
    };

    for m in 0..out_dim {
        for n in 0..out_dim {
            let mut acc = C64::new(0.0, 0.0);
            for t in 0..(1usize << traced.len()) {
                acc += rho.entry(assemble(m, t), assemble(n, t));
            }
            out.set(m, n, acc);
        }
    }
    DensityMatrix::from_matrix(out)
}

/// Eigenvalues (descending) and orthonormal eigenvector columns.
#[derive(Clone, Debug)]
pub struct Eigensystem {
    pub values: Vec<f64>,
    pub vectors: Matrix,
}

/// Cyclic complex Jacobi eigensolver for Hermitian matrices of dimension <= 8.
/// Iterates until the off-diagonal Frobenius norm drops below 1e-13 or 100
/// sweeps. Within degenerate eigenspaces the eigenvector choice is arbitrary.
pub fn hermitian_eigensystem(m: &Matrix) -> Result<Eigensystem> {
    let dev = m.hermitian_deviation();
    if dev > 1e-10 {
        return Err(Error::NotHermitian(dev));
    }
    let n = m.dim();
    // symmetrize to kill sub-tolerance asymmetry
    let mut a = Matrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            a.set(i, j, (m.get(i, j) + m.get(j, i).conj()) * 0.5);
        }
    }
    let mut v = Matrix::identity(n);

    for _sweep in 0..100 {
        let mut off = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    off += a.get(i, j).norm_sqr();
                }
            }
        }
        if off.sqrt() < 1e-13 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a.get(p, q);
                let r = apq.norm();
                if r < 1e-30 {
                    continue;
                }
                let app = a.get(p, p).re;
                let aqq = a.get(q, q).re;
                let tau = (aqq - app) / (2.0 * r);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let phase = apq / r;

                // A <- G† A G with G the identity except
                // G[p][p]=c, G[p][q]=s*phase, G[q][p]=-s*conj(phase), G[q][q]=c
                for k in 0..n {
                    let akp = a.get(k, p);
                    let akq = a.get(k, q);
                    a.set(k, p, akp * c - akq * s * phase.conj());
                    a.set(k, q, akp * s * phase + akq * c);
                }
                for k in 0..n {
                    let apk = a.get(p, k);
                    let aqk = a.get(q, k);
                    a.set(p, k, apk * c - aqk * s * phase);
                    a.set(q, k, apk * s * phase.conj() + aqk * c);
                }
                for k in 0..n {
                    let vkp = v.get(k, p);
                    let vkq = v.get(k, q);
                    v.set(k, p, vkp * c - vkq * s * phase.conj());
                    v.set(k, q, vkp * s * phase + vkq * c);
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a.get(i, i).re).collect();
    order.sort_by(|&i, &j| diag[j].partial_cmp(&diag[i]).unwrap());
    let values: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let mut vectors = Matrix::zeros(n);
    for (new_col, &old_col) in order.iter().enumerate() {
        for row in 0..n {
            vectors.set(row, new_col, v.get(row, old_col));
        }
    }
    Ok(Eigensystem { values, vectors })
}

/// Principal square root of a positive semidefinite Hermitian matrix.
/// Eigenvalues in [-1e-8, 0) are clamped to zero; anything below -1e-8 is
/// rejected as genuinely non-PSD input.
pub fn psd_sqrt(m: &Matrix) -> Result<Matrix> {
    let eig = hermitian_eigensystem(m)?;
    let min = eig.values.last().copied().unwrap_or(0.0);
    if min < -1e-8 {
        return Err(Error::NotPsd(min));
    }
    Ok(rebuild_with(&eig, |v| v.max(0.0).sqrt()))
}

/// V f(Lambda) V† from an eigensystem.
pub(crate) fn rebuild_with(eig: &Eigensystem, f: impl Fn(f64) -> f64) -> Matrix {
    let n = eig.vectors.dim();
    let mut out = Matrix::zeros(n);
    for k in 0..n {
        let fv = f(eig.values[k]);
        if fv == 0.0 {
            continue;
        }
        for i in 0..n {
            for j in 0..n {
                let e = out.get(i, j) + eig.vectors.get(i, k) * eig.vectors.get(j, k).conj() * fv;
                out.set(i, j, e);
            }
        }
    }
    out
}

/// Singular values of a square matrix, descending, via the Hermitian dilation
/// [[0, M], [M†, 0]] whose eigenvalues are ±sigma_i. Linear (not squared) in
/// M, so tiny singular values come out at full absolute accuracy.
pub fn singular_values(m: &Matrix) -> Vec<f64> {
    let n = m.dim();
    let mut h = Matrix::zeros(2 * n);
    for i in 0..n {
        for j in 0..n {
            h.set(i, n + j, m.get(i, j));
            h.set(n + i, j, m.get(j, i).conj());
        }
    }
    let eig = hermitian_eigensystem(&h).expect("dilation is Hermitian by construction");
    eig.values.iter().take(n).map(|v| v.max(0.0)).collect()
}

// ---------------------------------------------------------------------------
// JSON wire forms (the CLI input formats)
// ---------------------------------------------------------------------------

/// JSON form of a pure state: `{"amplitudes": [[re, im] x 8]}` in index
/// order 000..111.
#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct PureStateJson {
    pub amplitudes: Vec<[f64; 2]>,
}

impl From<&PureState> for PureStateJson {
    fn from(s: &PureState) -> Self {
        PureStateJson {
            amplitudes: s.amps.iter().map(|a| [a.re, a.im]).collect(),
        }
    }
}

impl TryFrom<PureStateJson> for PureState {
    type Error = Error;

    fn try_from(w: PureStateJson) -> Result<PureState> {
        if w.amplitudes.len() != STATE_DIM {
            return Err(Error::DimensionMismatch {
                expected: STATE_DIM,
                got: w.amplitudes.len(),
            });
        }
        let mut amps = [C64::new(0.0, 0.0); STATE_DIM];
        for (a, [re, im]) in amps.iter_mut().zip(w.amplitudes.iter()) {
            *a = C64::new(*re, *im);
        }
        PureState::from_amplitudes(amps, 1e-10)
    }
}

/// JSON form of a density matrix: `{"dim": n, "entries": [[re, im] x n*n]}`
/// row-major.
#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct DensityMatrixJson {
    pub dim: usize,
    pub entries: Vec<[f64; 2]>,
}

impl From<&DensityMatrix> for DensityMatrixJson {
    fn from(d: &DensityMatrix) -> Self {
        DensityMatrixJson {
            dim: d.dim(),
            entries: d.matrix().entries().iter().map(|a| [a.re, a.im]).collect(),
        }
    }
}

impl TryFrom<DensityMatrixJson> for DensityMatrix {
    type Error = Error;

    fn try_from(w: DensityMatrixJson) -> Result<DensityMatrix> {
        let entries: Vec<C64> = w
            .entries
            .iter()
            .map(|[re, im]| C64::new(*re, *im))
            .collect();
        DensityMatrix::new(w.dim, entries)
    }
}
