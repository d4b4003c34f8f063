// Dense complex linear algebra for small tensor-product systems:
// matrices, pure states, Kronecker products, permutation operators and
// the permutation-symmetric subspace projectors used by the comparison
// strategies. Everything is immutable after construction and safe to
// share between threads.

#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace unicmp::linalg {

using cplx = std::complex<double>;

/// Max-norm tolerance for unitarity checks on constructed operators.
inline constexpr double kUnitaryTol = 1e-10;

/// Tolerance for orthonormality of subspace bases.
inline constexpr double kOrthoTol = 1e-10;

/// Probabilities outside [-kProbSlack, 1 + kProbSlack] indicate a bug.
inline constexpr double kProbSlack = 1e-9;

/// Largest ambient dimension for which dense projectors are built.
inline constexpr std::size_t kMaxAmbientDim = 46656;  // 6^6

/// Dense complex matrix, row-major.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);

  static ComplexMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  cplx& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  const std::vector<cplx>& entries() const { return entries_; }

  ComplexMatrix adjoint() const;
  cplx trace() const;

  ComplexMatrix operator*(const ComplexMatrix& rhs) const;
  ComplexMatrix operator+(const ComplexMatrix& rhs) const;
  ComplexMatrix operator-(const ComplexMatrix& rhs) const;
  std::vector<cplx> apply(const std::vector<cplx>& v) const;

  /// max_ij |A_ij - B_ij|; dimensions must match.
  double max_abs_diff(const ComplexMatrix& rhs) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> entries_;
};

/// ||U^dag U - I||_max.
double unitarity_defect(const ComplexMatrix& u);

bool is_unitary(const ComplexMatrix& u, double tol = kUnitaryTol);

/// Throws std::invalid_argument naming `what` if `u` is not square unitary.
void require_unitary(const ComplexMatrix& u, const std::string& what,
                     double tol = kUnitaryTol);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Block-diagonal direct sum; realises transforms acting in parallel paths.
ComplexMatrix block_diag(const std::vector<ComplexMatrix>& blocks);

/// Normalised state vector over a labelled tensor-product basis.
/// Basis order is mixed-radix with the leftmost subsystem most significant,
/// so index = i_1 * (d_2 * ... * d_n) + ... + i_n.
class PureState {
 public:
  /// Requires ||amplitudes|| = 1 within 1e-10; never renormalises silently.
  PureState(std::vector<std::size_t> dims, std::vector<cplx> amplitudes);

  /// Explicitly normalises; rejects (near-)zero vectors.
  static PureState normalised(std::vector<std::size_t> dims, std::vector<cplx> amplitudes);

  /// Computational basis ket |index> on a single d-dimensional system.
  static PureState basis_state(std::size_t dim, std::size_t index);

  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t dim() const { return amplitudes_.size(); }
  const std::vector<cplx>& amplitudes() const { return amplitudes_; }
  const cplx& operator[](std::size_t i) const { return amplitudes_[i]; }

 private:
  PureState() = default;
  std::vector<std::size_t> dims_;
  std::vector<cplx> amplitudes_;
};

/// <a|b> with the usual conjugate-linear first slot.
cplx inner(const std::vector<cplx>& a, const std::vector<cplx>& b);
cplx inner(const PureState& a, const PureState& b);

double norm(const std::vector<cplx>& v);

/// Applies a dim x dim operator; intended for unitaries (norm is preserved).
PureState apply(const ComplexMatrix& m, const PureState& s);

PureState tensor(const PureState& a, const PureState& b);

/// Site permutation operator on (C^d)^(tensor N): site s of the input is
/// routed to site perm[s] of the output, so |i_1...i_N> -> |j_1...j_N>
/// with j_{perm[s]} = i_s.
ComplexMatrix permutation_operator(std::size_t d, std::size_t n_sites,
                                   const std::vector<std::size_t>& perm);

/// Measurement subspace: orthonormal spanning set plus the derived projector.
class Subspace {
 public:
  static Subspace from_basis(std::vector<std::size_t> dims, std::vector<PureState> basis);

  /// Extracts an orthonormal basis from a given (validated) projector.
  static Subspace from_projector(std::vector<std::size_t> dims, ComplexMatrix projector);

  std::size_t ambient_dim() const { return projector_.rows(); }
  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t rank() const { return basis_.size(); }
  const std::vector<PureState>& basis() const { return basis_; }
  const ComplexMatrix& projector() const { return projector_; }

  Subspace complement() const;

  /// ||(I - P)|psi>||, the distance of the state from the subspace.
  double residual(const PureState& s) const;

 private:
  Subspace() = default;
  std::vector<std::size_t> dims_;
  std::vector<PureState> basis_;
  ComplexMatrix projector_;
};

/// Projector onto the totally symmetric subspace of N d-dimensional sites,
/// built as the permutation average (1/N!) sum_pi P_pi. The trace equals
/// binomial(d + N - 1, N).
Subspace symmetric_projector(std::size_t d, std::size_t n_sites);

/// Signed permutation average (1/N!) sum_pi sign(pi) P_pi. For n_sites > d
/// the subspace is empty; for n_sites == d it is the one-dimensional span
/// of the Slater determinant.
Subspace antisymmetric_projector(std::size_t d, std::size_t n_sites);

/// <psi|P|psi>, clamped to [0,1]. Values outside [-1e-9, 1+1e-9] raise an
/// internal-consistency error instead of being clamped.
double project_prob(const PureState& state, const Subspace& sub);

/// Clamp helper shared by every probability-returning operation.
double checked_probability(double p, const char* what);

/// Gram-Schmidt over `candidates` against `seed` plus already accepted
/// vectors; returns the orthonormal vectors found (re-orthogonalised once
/// for stability). Vectors with residual norm below `tol` are dropped.
std::vector<std::vector<cplx>> orthonormalise(const std::vector<std::vector<cplx>>& seed,
                                              const std::vector<std::vector<cplx>>& candidates,
                                              double tol = 1e-9);

std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

}  // namespace unicmp::linalg
