#include "unicmp/strategies.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace unicmp::strategies {

namespace {

constexpr double kRouteAgreementTol = 1e-10;

double factorial(std::size_t n) {
  double f = 1.0;
  for (std::size_t i = 2; i <= n; ++i) f *= static_cast<double>(i);
  return f;
}

int permutation_sign(const std::vector<std::size_t>& perm) {
  int inversions = 0;
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) ++inversions;
  return (inversions % 2 == 0) ? 1 : -1;
}

cplx determinant(std::vector<std::vector<cplx>> m) {
  const std::size_t n = m.size();
  cplx det = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
    if (std::abs(m[pivot][col]) == 0.0) return 0.0;
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      const cplx factor = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= factor * m[col][c];
    }
  }
  return det;
}

void require_dim(const ComplexMatrix& m, std::size_t d, const std::string& what) {
  if (m.rows() != d || m.cols() != d)
    throw std::invalid_argument(what + ": expected a " + std::to_string(d) + "x" +
                                std::to_string(d) + " matrix, got " + std::to_string(m.rows()) +
                                "x" + std::to_string(m.cols()));
}

}  // namespace

SingleParticleTest SingleParticleTest::balanced(cplx chi0, cplx chi1) {
  const double n = std::sqrt(std::norm(chi0) + std::norm(chi1));
  if (n < 1e-12) throw std::invalid_argument("balanced test needs a nonzero polarisation");
  chi0 /= n;
  chi1 /= n;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  return SingleParticleTest{chi0 * inv_sqrt2, chi1 * inv_sqrt2, chi0 * inv_sqrt2,
                            chi1 * inv_sqrt2};
}

SingleParticleTest SingleParticleTest::canonical() { return balanced(1.0, 0.0); }

double SingleParticleTest::norm_sq() const {
  return std::norm(c) + std::norm(d) + std::norm(e) + std::norm(f);
}

cplx SingleParticleTest::polarisation_mismatch() const { return e * d - c * f; }

void StrategyReport::validate() const {
  double total = 0.0, diff_mass = 0.0;
  for (const auto& o : outcomes) {
    if (o.probability < -linalg::kProbSlack || o.probability > 1.0 + linalg::kProbSlack)
      throw std::runtime_error("internal consistency: outcome probability out of range for " +
                               o.label);
    total += o.probability;
    if (o.signals_difference) diff_mass += o.probability;
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw std::runtime_error("internal consistency: outcome distribution sums to " +
                             std::to_string(total));
  if (std::abs(diff_mass - p_diff) > 1e-9)
    throw std::runtime_error("internal consistency: p_diff does not match difference mass");
}

// ---------------------------------------------------------------------------
// Single-particle strategy

double single_particle_p_diff(const haar::SU2Phase& u, const haar::SU2Phase& v) {
  const cplx gu = std::polar(1.0, u.phi);
  const cplx gv = std::polar(1.0, v.phi);
  const double da = std::abs(gu * u.a() - gv * v.a());
  const double db = std::abs(gu * u.b() - gv * v.b());
  return linalg::checked_probability(0.25 * (da * da + db * db), "single_particle_p_diff");
}

double single_particle_p_diff(const ComplexMatrix& u, const ComplexMatrix& v) {
  linalg::require_unitary(u, "single_particle_p_diff: U");
  linalg::require_unitary(v, "single_particle_p_diff: V");
  require_dim(u, 2, "single_particle_p_diff: U");
  require_dim(v, 2, "single_particle_p_diff: V");
  return column_strategy_p_diff(u, v, 0);
}

StrategyReport general_single_particle_report(const SingleParticleTest& test,
                                              const ComplexMatrix& u, const ComplexMatrix& v) {
  linalg::require_unitary(u, "general_single_particle_report: U");
  linalg::require_unitary(v, "general_single_particle_report: V");
  require_dim(u, 2, "general_single_particle_report: U");
  require_dim(v, 2, "general_single_particle_report: V");

  if (std::abs(test.norm_sq() - 1.0) > 1e-10)
    throw std::invalid_argument(
        "general_single_particle_report: test state is not normalised (|c|^2+|d|^2+|e|^2+|f|^2 "
        "= " +
        std::to_string(test.norm_sq()) + ")");
  const double mismatch = std::abs(test.polarisation_mismatch());
  if (mismatch > 1e-10) {
    std::ostringstream msg;
    msg << "general_single_particle_report: test state violates the unambiguity condition "
           "e*d = c*f (|e*d - c*f| = "
        << mismatch
        << "); with different polarisations in the two paths no measurement outcome is "
           "orthogonal to every identical-transform output";
    throw std::invalid_argument(msg.str());
  }

  const std::vector<cplx> t{test.c, test.d, test.e, test.f};

  // Probe transforms whose images of any polarisation span C^2; the span of
  // the corresponding identical-transform outputs is the inconclusive
  // subspace.
  const cplx i1{0.0, 1.0};
  std::vector<ComplexMatrix> probes;
  probes.push_back(ComplexMatrix::identity(2));
  probes.emplace_back(2, 2, std::vector<cplx>{0.0, -1.0, 1.0, 0.0});
  probes.emplace_back(2, 2, std::vector<cplx>{0.0, -i1, -i1, 0.0});

  std::vector<std::vector<cplx>> same_outputs;
  for (const auto& w : probes) same_outputs.push_back(linalg::block_diag({w, w}).apply(t));
  const auto same_basis = linalg::orthonormalise({}, same_outputs);
  if (same_basis.size() != 2)
    throw std::runtime_error(
        "internal consistency: identical-transform output span has dimension " +
        std::to_string(same_basis.size()));

  std::vector<std::vector<cplx>> unit_vectors;
  for (std::size_t k = 0; k < 4; ++k) {
    std::vector<cplx> e(4);
    e[k] = 1.0;
    unit_vectors.push_back(std::move(e));
  }
  const auto diff_basis = linalg::orthonormalise(same_basis, unit_vectors);
  if (diff_basis.size() != 2)
    throw std::runtime_error("internal consistency: difference subspace has dimension " +
                             std::to_string(diff_basis.size()));

  // Cross-check the constructed difference states against the analytic
  // orthogonality conditions on (c~, d~, e~, f~).
  for (const auto& m : diff_basis) {
    const double worst = std::max(
        {std::abs(std::conj(m[0]) * test.c + std::conj(m[2]) * test.e),
         std::abs(std::conj(m[1]) * test.d + std::conj(m[3]) * test.f),
         std::abs(std::conj(m[0]) * test.d + std::conj(m[2]) * test.f),
         std::abs(std::conj(m[1]) * test.c + std::conj(m[3]) * test.e)});
    if (worst > 1e-9)
      throw std::runtime_error(
          "internal consistency: difference state violates the orthogonality conditions by " +
          std::to_string(worst));
  }

  const std::vector<cplx> out = linalg::block_diag({u, v}).apply(t);

  StrategyReport report;
  report.ambient_dim = 4;
  report.difference_subspace_dim = 2;
  double diff_mass = 0.0;
  for (std::size_t k = 0; k < diff_basis.size(); ++k) {
    const double p = std::norm(linalg::inner(diff_basis[k], out));
    diff_mass += p;
    report.outcomes.push_back({"different:" + std::to_string(k), p, true});
  }
  for (std::size_t k = 0; k < same_basis.size(); ++k) {
    const double p = std::norm(linalg::inner(same_basis[k], out));
    report.outcomes.push_back({"inconclusive:" + std::to_string(k), p, false});
  }
  report.p_diff = linalg::checked_probability(diff_mass, "general_single_particle_report");
  report.validate();
  return report;
}

StrategyReport general_single_particle_report(const SingleParticleTest& test,
                                              const haar::SU2Phase& u, const haar::SU2Phase& v) {
  return general_single_particle_report(test, u.to_matrix(), v.to_matrix());
}

// ---------------------------------------------------------------------------
// Singlet strategy

const std::vector<PureState>& bell_basis() {
  static const std::vector<PureState> basis = [] {
    const double s = 1.0 / std::sqrt(2.0);
    std::vector<PureState> out;
    out.emplace_back(PureState({2, 2}, {0.0, s, -s, 0.0}));  // psi-
    out.emplace_back(PureState({2, 2}, {0.0, s, s, 0.0}));   // psi+
    out.emplace_back(PureState({2, 2}, {s, 0.0, 0.0, s}));   // Phi+
    out.emplace_back(PureState({2, 2}, {s, 0.0, 0.0, -s}));  // Phi-
    return out;
  }();
  return basis;
}

const PureState& singlet_state() { return bell_basis()[0]; }

double singlet_p_diff(const haar::SU2Phase& u, const haar::SU2Phase& v) {
  const double re = (u.a() * std::conj(v.a()) + u.b() * std::conj(v.b())).real();
  return linalg::checked_probability(1.0 - re * re, "singlet_p_diff");
}

StrategyReport singlet_bell_decompose(const ComplexMatrix& u, const ComplexMatrix& v) {
  linalg::require_unitary(u, "singlet_bell_decompose: U");
  linalg::require_unitary(v, "singlet_bell_decompose: V");
  require_dim(u, 2, "singlet_bell_decompose: U");
  require_dim(v, 2, "singlet_bell_decompose: V");

  const PureState out = linalg::apply(linalg::kron(u, v), singlet_state());
  static const char* kLabels[4] = {"psi-", "psi+", "Phi+", "Phi-"};

  StrategyReport report;
  report.ambient_dim = 4;
  report.difference_subspace_dim = 3;
  double diff_mass = 0.0;
  for (std::size_t k = 0; k < 4; ++k) {
    const double p = std::norm(linalg::inner(bell_basis()[k], out));
    const bool signals = k != 0;  // any Bell state but the singlet
    if (signals) diff_mass += p;
    report.outcomes.push_back({kLabels[k], p, signals});
  }
  report.p_diff = linalg::checked_probability(diff_mass, "singlet_bell_decompose");
  report.validate();
  return report;
}

StrategyReport singlet_bell_decompose(const haar::SU2Phase& u, const haar::SU2Phase& v) {
  StrategyReport report = singlet_bell_decompose(u.to_matrix(), v.to_matrix());
  const double closed = singlet_p_diff(u, v);
  if (std::abs(report.p_diff - closed) > 1e-12)
    throw std::runtime_error(
        "internal consistency: singlet simulation and closed form disagree by " +
        std::to_string(std::abs(report.p_diff - closed)));
  return report;
}

double singlet_orthostart_p_diff(const ComplexMatrix& u, const ComplexMatrix& v,
                                 const PureState& start) {
  return singlet_orthostart_report(u, v, start).p_diff;
}

double singlet_orthostart_p_diff(const haar::SU2Phase& u, const haar::SU2Phase& v,
                                 const PureState& start) {
  return singlet_orthostart_p_diff(u.to_matrix(), v.to_matrix(), start);
}

StrategyReport singlet_orthostart_report(const ComplexMatrix& u, const ComplexMatrix& v,
                                         const PureState& start) {
  linalg::require_unitary(u, "singlet_orthostart: U");
  linalg::require_unitary(v, "singlet_orthostart: V");
  require_dim(u, 2, "singlet_orthostart: U");
  require_dim(v, 2, "singlet_orthostart: V");
  if (start.dim() != 4)
    throw std::invalid_argument("singlet_orthostart: start state must live on two qubits");
  const double overlap = std::abs(linalg::inner(singlet_state(), start));
  if (overlap > 1e-10)
    throw std::invalid_argument(
        "singlet_orthostart: start state overlaps the singlet (|<psi-|start>| = " +
        std::to_string(overlap) + "); it must lie in the singlet's orthogonal complement");

  const PureState out = linalg::apply(linalg::kron(u, v), start);
  static const char* kLabels[4] = {"psi-", "psi+", "Phi+", "Phi-"};

  StrategyReport report;
  report.ambient_dim = 4;
  report.difference_subspace_dim = 1;
  double diff_mass = 0.0;
  for (std::size_t k = 0; k < 4; ++k) {
    const double p = std::norm(linalg::inner(bell_basis()[k], out));
    const bool signals = k == 0;  // only a singlet click certifies a difference
    if (signals) diff_mass += p;
    report.outcomes.push_back({kLabels[k], p, signals});
  }
  report.p_diff = linalg::checked_probability(diff_mass, "singlet_orthostart");
  report.validate();
  return report;
}

// ---------------------------------------------------------------------------
// Non-entangled strategy

double nonentangled_p_diff(const ComplexMatrix& u, const ComplexMatrix& v, const PureState& psi) {
  linalg::require_unitary(u, "nonentangled_p_diff: U");
  linalg::require_unitary(v, "nonentangled_p_diff: V");
  const std::size_t d = psi.dim();
  require_dim(u, d, "nonentangled_p_diff: U");
  require_dim(v, d, "nonentangled_p_diff: V");

  const std::vector<cplx> upsi = u.apply(psi.amplitudes());
  const std::vector<cplx> vpsi = v.apply(psi.amplitudes());
  const double closed = 0.5 * (1.0 - std::norm(linalg::inner(upsi, vpsi)));

  // Independent route: weight of (U psi) (x) (V psi) on the antisymmetric
  // subspace, via <Phi| SWAP |Phi>.
  cplx swap_expect = 0.0;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      swap_expect += std::conj(upsi[i] * vpsi[j]) * (upsi[j] * vpsi[i]);
  const double simulated = 0.5 * (1.0 - swap_expect.real());
  if (std::abs(closed - simulated) > kRouteAgreementTol)
    throw std::runtime_error(
        "internal consistency: non-entangled closed form and antisymmetric projection disagree "
        "by " +
        std::to_string(std::abs(closed - simulated)));

  return linalg::checked_probability(closed, "nonentangled_p_diff");
}

// ---------------------------------------------------------------------------
// Many transforms

std::pair<double, double> multi_single_particle_forms(const std::vector<haar::SU2Phase>& us) {
  const std::size_t n = us.size();
  if (n < 2) throw std::invalid_argument("multi_single_particle_p_diff needs at least two transforms");

  std::vector<cplx> za(n), zb(n);
  for (std::size_t i = 0; i < n; ++i) {
    const cplx g = std::polar(1.0, us[i].phi);
    za[i] = g * us[i].a();
    zb[i] = g * us[i].b();
  }

  double pairwise = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j)
      pairwise += std::norm(za[i] - za[j]) + std::norm(zb[i] - zb[j]);
  pairwise /= static_cast<double>(n) * static_cast<double>(n);

  cplx suma = 0.0, sumb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    suma += za[i];
    sumb += zb[i];
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  const double projective = 1.0 - std::norm(suma * inv_n) - std::norm(sumb * inv_n);

  return {pairwise, projective};
}

double multi_single_particle_p_diff(const std::vector<haar::SU2Phase>& us) {
  const auto [pairwise, projective] = multi_single_particle_forms(us);
  if (std::abs(pairwise - projective) > kRouteAgreementTol)
    throw std::runtime_error("internal consistency: the two success-probability forms disagree by " +
                             std::to_string(std::abs(pairwise - projective)));
  return linalg::checked_probability(pairwise, "multi_single_particle_p_diff");
}

double symmetric_subspace_multi_p_diff(const std::vector<ComplexMatrix>& us,
                                       const PureState& psi) {
  const std::size_t n = us.size();
  if (n < 2 || n > 6)
    throw std::invalid_argument("symmetric_subspace_multi_p_diff supports 2..6 transforms");
  const std::size_t d = psi.dim();
  double ambient = 1.0;
  for (std::size_t i = 0; i < n; ++i) ambient *= static_cast<double>(d);
  if (ambient > static_cast<double>(linalg::kMaxAmbientDim))
    throw std::invalid_argument("symmetric_subspace_multi_p_diff: ambient dimension guard exceeded");
  std::vector<std::vector<cplx>> outputs;
  outputs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    linalg::require_unitary(us[i], "symmetric_subspace_multi_p_diff: transform " + std::to_string(i));
    require_dim(us[i], d, "symmetric_subspace_multi_p_diff: transform " + std::to_string(i));
    outputs.push_back(us[i].apply(psi.amplitudes()));
  }

  // <Psi_out| P_sym |Psi_out> for a product state is the permanent of the
  // Gram matrix of the per-site outputs divided by N!.
  std::vector<std::vector<cplx>> gram(n, std::vector<cplx>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) gram[i][j] = linalg::inner(outputs[i], outputs[j]);

  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  cplx permanent = 0.0;
  do {
    cplx term = 1.0;
    for (std::size_t i = 0; i < n; ++i) term *= gram[i][perm[i]];
    permanent += term;
  } while (std::next_permutation(perm.begin(), perm.end()));

  const cplx sym_weight = permanent / factorial(n);
  if (std::abs(sym_weight.imag()) > 1e-9)
    throw std::runtime_error("internal consistency: symmetric weight has imaginary part " +
                             std::to_string(sym_weight.imag()));
  return linalg::checked_probability(1.0 - sym_weight.real(), "symmetric_subspace_multi_p_diff");
}

Subspace three_qubit_nonsym_projector() {
  const double s = 1.0 / std::sqrt(2.0);
  ComplexMatrix proj(8, 8);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      if (i == j) continue;
      const std::size_t k = 3 - i - j;
      for (std::size_t t = 0; t < 2; ++t) {
        // (|0>_i |1>_j - |1>_i |0>_j) |t>_k / sqrt(2)
        std::vector<cplx> state(8);
        std::size_t digits[3];
        digits[i] = 0;
        digits[j] = 1;
        digits[k] = t;
        state[4 * digits[0] + 2 * digits[1] + digits[2]] = s;
        digits[i] = 1;
        digits[j] = 0;
        state[4 * digits[0] + 2 * digits[1] + digits[2]] = -s;
        for (std::size_t r = 0; r < 8; ++r) {
          if (state[r] == cplx{}) continue;
          for (std::size_t c = 0; c < 8; ++c) proj(r, c) += (1.0 / 3.0) * state[r] * std::conj(state[c]);
        }
      }
    }
  }
  return Subspace::from_projector({2, 2, 2}, std::move(proj));
}

// ---------------------------------------------------------------------------
// Higher dimensions

double column_strategy_p_diff(const ComplexMatrix& u, const ComplexMatrix& v, std::size_t column) {
  linalg::require_unitary(u, "column_strategy_p_diff: U");
  linalg::require_unitary(v, "column_strategy_p_diff: V");
  if (u.rows() != v.rows())
    throw std::invalid_argument("column_strategy_p_diff: U and V must have equal dimension");
  if (column >= u.cols())
    throw std::invalid_argument("column_strategy_p_diff: column index " + std::to_string(column) +
                                " out of range for dimension " + std::to_string(u.cols()));
  double acc = 0.0;
  for (std::size_t r = 0; r < u.rows(); ++r) acc += std::norm(u(r, column) - v(r, column));
  return linalg::checked_probability(0.25 * acc, "column_strategy_p_diff");
}

double mixed_column_p_diff(const ComplexMatrix& u, const ComplexMatrix& v) {
  linalg::require_unitary(u, "mixed_column_p_diff: U");
  linalg::require_unitary(v, "mixed_column_p_diff: V");
  if (u.rows() != v.rows())
    throw std::invalid_argument("mixed_column_p_diff: U and V must have equal dimension");
  double acc = 0.0;
  for (std::size_t col = 0; col < u.cols(); ++col) acc += column_strategy_p_diff(u, v, col);
  return linalg::checked_probability(acc / static_cast<double>(u.cols()), "mixed_column_p_diff");
}

PureState slater_state(std::size_t n) {
  if (n < 2 || n > 4) throw std::invalid_argument("slater_state supports 2..4 sites");
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= n;
  std::vector<cplx> amps(total);
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  const double scale = 1.0 / std::sqrt(factorial(n));
  do {
    std::size_t index = 0;
    for (std::size_t site = 0; site < n; ++site) index = index * n + perm[site];
    amps[index] = permutation_sign(perm) * scale;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return PureState(std::vector<std::size_t>(n, n), std::move(amps));
}

double slater_p_diff(const std::vector<ComplexMatrix>& us) {
  const std::size_t n = us.size();
  if (n < 2 || n > 4) throw std::invalid_argument("slater_p_diff supports 2..4 transforms");
  for (std::size_t i = 0; i < n; ++i) {
    linalg::require_unitary(us[i], "slater_p_diff: transform " + std::to_string(i));
    require_dim(us[i], n, "slater_p_diff: transform " + std::to_string(i));
  }

  // <Psi_anti| U_1 (x) ... (x) U_N |Psi_anti>
  //   = (1/N!) sum_sigma sign(sigma) det(A_sigma),  A_sigma[i][j] = U_i[sigma(i), j].
  std::vector<std::size_t> sigma(n);
  std::iota(sigma.begin(), sigma.end(), std::size_t{0});
  cplx overlap = 0.0;
  do {
    std::vector<std::vector<cplx>> a(n, std::vector<cplx>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a[i][j] = us[i](sigma[i], j);
    overlap += static_cast<double>(permutation_sign(sigma)) * determinant(std::move(a));
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  overlap /= factorial(n);

  return linalg::checked_probability(1.0 - std::norm(overlap), "slater_p_diff");
}

std::vector<PureState> two_fourdim_nonsym_basis() {
  // Pair-singlet states written on four qubits, regrouped as two 4-dim
  // systems (qubits 1,2 -> system A; qubits 3,4 -> system B).
  struct Entry {
    std::size_t plus, minus;
  };
  static constexpr Entry kEntries[6] = {
      {9, 6},    // (|1001> - |0110>)/sqrt(2)
      {12, 3},   // (|1100> - |0011>)/sqrt(2)
      {11, 14},  // (|1011> - |1110>)/sqrt(2)
      {1, 4},    // (|0001> - |0100>)/sqrt(2)
      {2, 8},    // (|0010> - |1000>)/sqrt(2)
      {7, 13},   // (|0111> - |1101>)/sqrt(2)
  };
  const double s = 1.0 / std::sqrt(2.0);
  std::vector<PureState> basis;
  basis.reserve(6);
  for (const auto& e : kEntries) {
    std::vector<cplx> amps(16);
    amps[e.plus] = s;
    amps[e.minus] = -s;
    basis.emplace_back(PureState({4, 4}, std::move(amps)));
  }
  return basis;
}

namespace {

const Subspace& fourdim_symmetric() {
  static const Subspace sub = linalg::symmetric_projector(4, 2);
  return sub;
}

const Subspace& fourdim_antisymmetric() {
  static const Subspace sub = linalg::antisymmetric_projector(4, 2);
  return sub;
}

double fourdim_invariant_start_p_diff(const ComplexMatrix& u, const ComplexMatrix& v,
                                      const PureState& start, const Subspace& start_space,
                                      const Subspace& detect_space, const char* what) {
  linalg::require_unitary(u, std::string(what) + ": U");
  linalg::require_unitary(v, std::string(what) + ": V");
  require_dim(u, 4, std::string(what) + ": U");
  require_dim(v, 4, std::string(what) + ": V");
  if (start.dim() != 16)
    throw std::invalid_argument(std::string(what) + ": start state must live on two 4-dim systems");
  const double res = start_space.residual(start);
  if (res > 1e-10)
    throw std::invalid_argument(std::string(what) +
                                ": start state lies outside the required start subspace "
                                "(residual " +
                                std::to_string(res) + ")");
  const PureState out = linalg::apply(linalg::kron(u, v), start);
  return linalg::project_prob(out, detect_space);
}

}  // namespace

double two_fourdim_nonsym_p_diff(const ComplexMatrix& u, const ComplexMatrix& v,
                                 const PureState& start) {
  return fourdim_invariant_start_p_diff(u, v, start, fourdim_antisymmetric(), fourdim_symmetric(),
                                        "two_fourdim_nonsym_p_diff");
}

double two_fourdim_symstart_p_diff(const ComplexMatrix& u, const ComplexMatrix& v,
                                   const PureState& start) {
  return fourdim_invariant_start_p_diff(u, v, start, fourdim_symmetric(), fourdim_antisymmetric(),
                                        "two_fourdim_symstart_p_diff");
}

// ---------------------------------------------------------------------------

ComparisonOutcome sample_outcome(const StrategyReport& report, haar::SeededRng& rng) {
  report.validate();
  const double x = rng.uniform();
  double cumulative = 0.0;
  for (const auto& o : report.outcomes) {
    cumulative += std::max(o.probability, 0.0);
    if (x < cumulative)
      return {o.signals_difference ? Verdict::Different : Verdict::Inconclusive, o.label};
  }
  const auto& last = report.outcomes.back();
  return {last.signals_difference ? Verdict::Different : Verdict::Inconclusive, last.label};
}

}  // namespace unicmp::strategies
