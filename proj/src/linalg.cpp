#include "unicmp/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace unicmp::linalg {

namespace {

std::size_t checked_product(const std::vector<std::size_t>& dims) {
  if (dims.empty()) throw std::invalid_argument("state needs at least one subsystem");
  std::size_t total = 1;
  for (std::size_t d : dims) {
    if (d < 1) throw std::invalid_argument("subsystem dimensions must be >= 1");
    if (total > kMaxAmbientDim / d) throw std::invalid_argument("ambient dimension guard exceeded");
    total *= d;
  }
  return total;
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("matrix dimensions must be >= 1");
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("matrix dimensions must be >= 1");
  if (entries_.size() != rows * cols)
    throw std::invalid_argument("entry count does not match rows * cols");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

cplx ComplexMatrix::trace() const {
  if (rows_ != cols_) throw std::invalid_argument("trace requires a square matrix");
  cplx t = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("matrix product dimension mismatch");
  ComplexMatrix out(rows_, rhs.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const cplx a = (*this)(r, k);
      if (a == cplx{}) continue;
      for (std::size_t c = 0; c < rhs.cols_; ++c) out(r, c) += a * rhs(k, c);
    }
  }
  return out;
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
    throw std::invalid_argument("matrix sum dimension mismatch");
  ComplexMatrix out(rows_, cols_);
  for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] = entries_[i] + rhs.entries_[i];
  return out;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
    throw std::invalid_argument("matrix difference dimension mismatch");
  ComplexMatrix out(rows_, cols_);
  for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] = entries_[i] - rhs.entries_[i];
  return out;
}

std::vector<cplx> ComplexMatrix::apply(const std::vector<cplx>& v) const {
  if (v.size() != cols_) throw std::invalid_argument("matrix-vector dimension mismatch");
  std::vector<cplx> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    cplx acc = 0.0;
    const cplx* row = entries_.data() + r * cols_;
    for (std::size_t c = 0; c < cols_; ++c) acc += row[c] * v[c];
    out[r] = acc;
  }
  return out;
}

double ComplexMatrix::max_abs_diff(const ComplexMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
    throw std::invalid_argument("matrix comparison dimension mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < entries_.size(); ++i)
    m = std::max(m, std::abs(entries_[i] - rhs.entries_[i]));
  return m;
}

double unitarity_defect(const ComplexMatrix& u) {
  if (u.rows() != u.cols()) return std::numeric_limits<double>::infinity();
  const std::size_t n = u.rows();
  double defect = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      cplx acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) acc += std::conj(u(k, i)) * u(k, j);
      if (i == j) acc -= 1.0;
      defect = std::max(defect, std::abs(acc));
    }
  }
  return defect;
}

bool is_unitary(const ComplexMatrix& u, double tol) { return unitarity_defect(u) <= tol; }

void require_unitary(const ComplexMatrix& u, const std::string& what, double tol) {
  if (u.rows() != u.cols())
    throw std::invalid_argument(what + ": expected a square matrix, got " +
                                std::to_string(u.rows()) + "x" + std::to_string(u.cols()));
  const double defect = unitarity_defect(u);
  if (defect > tol) {
    std::ostringstream msg;
    msg << what << ": matrix is not unitary (||U^dag U - I||_max = " << defect << ")";
    throw std::invalid_argument(msg.str());
  }
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ar = 0; ar < a.rows(); ++ar)
    for (std::size_t ac = 0; ac < a.cols(); ++ac) {
      const cplx f = a(ar, ac);
      if (f == cplx{}) continue;
      for (std::size_t br = 0; br < b.rows(); ++br)
        for (std::size_t bc = 0; bc < b.cols(); ++bc)
          out(ar * b.rows() + br, ac * b.cols() + bc) = f * b(br, bc);
    }
  return out;
}

ComplexMatrix block_diag(const std::vector<ComplexMatrix>& blocks) {
  if (blocks.empty()) throw std::invalid_argument("block_diag needs at least one block");
  std::size_t rows = 0, cols = 0;
  for (const auto& b : blocks) {
    rows += b.rows();
    cols += b.cols();
  }
  ComplexMatrix out(rows, cols);
  std::size_t r0 = 0, c0 = 0;
  for (const auto& b : blocks) {
    for (std::size_t r = 0; r < b.rows(); ++r)
      for (std::size_t c = 0; c < b.cols(); ++c) out(r0 + r, c0 + c) = b(r, c);
    r0 += b.rows();
    c0 += b.cols();
  }
  return out;
}

PureState::PureState(std::vector<std::size_t> dims, std::vector<cplx> amplitudes)
    : dims_(std::move(dims)), amplitudes_(std::move(amplitudes)) {
  const std::size_t total = checked_product(dims_);
  if (amplitudes_.size() != total)
    throw std::invalid_argument("amplitude count does not match product of subsystem dims");
  const double n = norm(amplitudes_);
  if (std::abs(n - 1.0) > 1e-10)
    throw std::invalid_argument("state is not normalised (||psi|| = " + std::to_string(n) +
                                "); use PureState::normalised for explicit rescaling");
}

PureState PureState::normalised(std::vector<std::size_t> dims, std::vector<cplx> amplitudes) {
  const double n = norm(amplitudes);
  if (n < 1e-12) throw std::invalid_argument("cannot normalise a zero state vector");
  for (auto& a : amplitudes) a /= n;
  return PureState(std::move(dims), std::move(amplitudes));
}

PureState PureState::basis_state(std::size_t dim, std::size_t index) {
  if (index >= dim) throw std::invalid_argument("basis index out of range");
  std::vector<cplx> amps(dim);
  amps[index] = 1.0;
  return PureState({dim}, std::move(amps));
}

cplx inner(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("inner product dimension mismatch");
  cplx acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

cplx inner(const PureState& a, const PureState& b) { return inner(a.amplitudes(), b.amplitudes()); }

double norm(const std::vector<cplx>& v) {
  double acc = 0.0;
  for (const cplx& x : v) acc += std::norm(x);
  return std::sqrt(acc);
}

PureState apply(const ComplexMatrix& m, const PureState& s) {
  if (m.rows() != m.cols() || m.cols() != s.dim())
    throw std::invalid_argument("operator/state dimension mismatch");
  return PureState(s.dims(), m.apply(s.amplitudes()));
}

PureState tensor(const PureState& a, const PureState& b) {
  std::vector<std::size_t> dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  std::vector<cplx> amps(a.dim() * b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j) amps[i * b.dim() + j] = a[i] * b[j];
  return PureState(std::move(dims), std::move(amps));
}

ComplexMatrix permutation_operator(std::size_t d, std::size_t n_sites,
                                   const std::vector<std::size_t>& perm) {
  if (d < 2) throw std::invalid_argument("site dimension must be >= 2");
  if (n_sites < 1) throw std::invalid_argument("need at least one site");
  if (perm.size() != n_sites) throw std::invalid_argument("permutation length must equal site count");
  std::vector<bool> seen(n_sites, false);
  for (std::size_t p : perm) {
    if (p >= n_sites || seen[p]) throw std::invalid_argument("invalid permutation");
    seen[p] = true;
  }
  std::size_t total = 1;
  for (std::size_t s = 0; s < n_sites; ++s) {
    if (total > kMaxAmbientDim / d) throw std::invalid_argument("ambient dimension guard exceeded");
    total *= d;
  }

  ComplexMatrix out(total, total);
  std::vector<std::size_t> digits(n_sites), permuted(n_sites);
  for (std::size_t m = 0; m < total; ++m) {
    std::size_t rem = m;
    for (std::size_t s = n_sites; s-- > 0;) {
      digits[s] = rem % d;
      rem /= d;
    }
    for (std::size_t s = 0; s < n_sites; ++s) permuted[perm[s]] = digits[s];
    std::size_t target = 0;
    for (std::size_t s = 0; s < n_sites; ++s) target = target * d + permuted[s];
    out(target, m) = 1.0;
  }
  return out;
}

Subspace Subspace::from_basis(std::vector<std::size_t> dims, std::vector<PureState> basis) {
  const std::size_t total = checked_product(dims);
  for (const auto& v : basis)
    if (v.dim() != total) throw std::invalid_argument("basis vector has wrong ambient dimension");
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      const double overlap = std::abs(inner(basis[i], basis[j]) - (i == j ? 1.0 : 0.0));
      if (overlap > kOrthoTol)
        throw std::invalid_argument("subspace basis is not orthonormal (deviation " +
                                    std::to_string(overlap) + ")");
    }
  ComplexMatrix p(total, total);
  for (const auto& v : basis)
    for (std::size_t r = 0; r < total; ++r) {
      const cplx vr = v[r];
      if (vr == cplx{}) continue;
      for (std::size_t c = 0; c < total; ++c) p(r, c) += vr * std::conj(v[c]);
    }

  Subspace s;
  s.dims_ = std::move(dims);
  s.basis_ = std::move(basis);
  s.projector_ = std::move(p);
  return s;
}

Subspace Subspace::from_projector(std::vector<std::size_t> dims, ComplexMatrix projector) {
  const std::size_t total = checked_product(dims);
  if (projector.rows() != total || projector.cols() != total)
    throw std::invalid_argument("projector has wrong ambient dimension");
  if (projector.max_abs_diff(projector.adjoint()) > kOrthoTol)
    throw std::invalid_argument("projector is not Hermitian");
  if ((projector * projector).max_abs_diff(projector) > kOrthoTol)
    throw std::invalid_argument("projector is not idempotent");
  const cplx tr = projector.trace();
  const auto rank = static_cast<std::size_t>(std::llround(tr.real()));
  if (std::abs(tr.real() - static_cast<double>(rank)) > 1e-8 || std::abs(tr.imag()) > 1e-8)
    throw std::invalid_argument("projector trace is not close to an integer");

  // Orthonormal range basis from the projector columns, largest first so the
  // pivots are well conditioned.
  std::vector<std::size_t> order(total);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    double na = 0.0, nb = 0.0;
    for (std::size_t r = 0; r < total; ++r) {
      na += std::norm(projector(r, a));
      nb += std::norm(projector(r, b));
    }
    return na > nb;
  });
  std::vector<std::vector<cplx>> candidates;
  candidates.reserve(total);
  for (std::size_t c : order) {
    std::vector<cplx> col(total);
    for (std::size_t r = 0; r < total; ++r) col[r] = projector(r, c);
    candidates.push_back(std::move(col));
  }
  auto basis_vecs = orthonormalise({}, candidates, 1e-8);
  if (basis_vecs.size() != rank)
    throw std::runtime_error("internal consistency: projector rank extraction found " +
                             std::to_string(basis_vecs.size()) + " vectors, expected " +
                             std::to_string(rank));

  Subspace s;
  s.dims_ = dims;
  for (auto& v : basis_vecs) s.basis_.emplace_back(PureState::normalised(dims, std::move(v)));
  s.projector_ = std::move(projector);
  return s;
}

Subspace Subspace::complement() const {
  return from_projector(dims_, ComplexMatrix::identity(ambient_dim()) - projector_);
}

double Subspace::residual(const PureState& s) const {
  if (s.dim() != ambient_dim()) throw std::invalid_argument("state/subspace dimension mismatch");
  std::vector<cplx> proj = projector_.apply(s.amplitudes());
  for (std::size_t i = 0; i < proj.size(); ++i) proj[i] = s[i] - proj[i];
  return norm(proj);
}

namespace {

Subspace permutation_average(std::size_t d, std::size_t n_sites, bool signed_sum) {
  if (d < 2) throw std::invalid_argument("site dimension must be >= 2");
  if (n_sites < 1 || n_sites > 6)
    throw std::invalid_argument("site count outside supported range 1..6");
  double total_check = std::pow(static_cast<double>(d), static_cast<double>(n_sites));
  if (total_check > static_cast<double>(kMaxAmbientDim))
    throw std::invalid_argument("ambient dimension guard exceeded (d^N > 46656)");

  std::vector<std::size_t> perm(n_sites);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::size_t total = 1;
  for (std::size_t s = 0; s < n_sites; ++s) total *= d;

  ComplexMatrix acc(total, total);
  double n_perms = 0.0;
  do {
    // Parity by counting inversions.
    int inversions = 0;
    for (std::size_t i = 0; i < n_sites; ++i)
      for (std::size_t j = i + 1; j < n_sites; ++j)
        if (perm[i] > perm[j]) ++inversions;
    const double sign = (signed_sum && (inversions % 2 == 1)) ? -1.0 : 1.0;
    const ComplexMatrix p = permutation_operator(d, n_sites, perm);
    for (std::size_t r = 0; r < total; ++r)
      for (std::size_t c = 0; c < total; ++c)
        if (p(r, c) != cplx{}) acc(r, c) += sign * p(r, c);
    n_perms += 1.0;
  } while (std::next_permutation(perm.begin(), perm.end()));

  ComplexMatrix proj(total, total);
  for (std::size_t r = 0; r < total; ++r)
    for (std::size_t c = 0; c < total; ++c) proj(r, c) = acc(r, c) / n_perms;

  std::vector<std::size_t> dims(n_sites, d);
  return Subspace::from_projector(std::move(dims), std::move(proj));
}

}  // namespace

Subspace symmetric_projector(std::size_t d, std::size_t n_sites) {
  Subspace s = permutation_average(d, n_sites, /*signed_sum=*/false);
  const double expected = static_cast<double>(binomial(d + n_sites - 1, n_sites));
  const double tr = s.projector().trace().real();
  if (std::abs(tr - expected) > 1e-8)
    throw std::runtime_error("internal consistency: symmetric projector trace " +
                             std::to_string(tr) + " != C(d+N-1,N) = " + std::to_string(expected));
  return s;
}

Subspace antisymmetric_projector(std::size_t d, std::size_t n_sites) {
  if (n_sites < 2) throw std::invalid_argument("antisymmetric projector needs at least two sites");
  return permutation_average(d, n_sites, /*signed_sum=*/true);
}

double project_prob(const PureState& state, const Subspace& sub) {
  if (state.dim() != sub.ambient_dim())
    throw std::invalid_argument("state/subspace ambient dimension mismatch");
  const std::vector<cplx> px = sub.projector().apply(state.amplitudes());
  const cplx val = inner(state.amplitudes(), px);
  if (std::abs(val.imag()) > kProbSlack)
    throw std::runtime_error("internal consistency: projection probability has imaginary part " +
                             std::to_string(val.imag()));
  return checked_probability(val.real(), "project_prob");
}

double checked_probability(double p, const char* what) {
  if (!(p >= -kProbSlack && p <= 1.0 + kProbSlack))
    throw std::runtime_error(std::string("internal consistency: ") + what +
                             " produced probability " + std::to_string(p));
  return std::clamp(p, 0.0, 1.0);
}

std::vector<std::vector<cplx>> orthonormalise(const std::vector<std::vector<cplx>>& seed,
                                              const std::vector<std::vector<cplx>>& candidates,
                                              double tol) {
  std::vector<std::vector<cplx>> basis = seed;
  std::vector<std::vector<cplx>> found;
  for (const auto& cand : candidates) {
    std::vector<cplx> v = cand;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : basis) {
        const cplx overlap = inner(q, v);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] -= overlap * q[i];
      }
    }
    const double n = norm(v);
    if (n <= tol) continue;
    for (auto& x : v) x /= n;
    basis.push_back(v);
    found.push_back(std::move(v));
  }
  return found;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) result = result * (n - k + i) / i;
  return result;
}

}  // namespace unicmp::linalg
