#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "unicmp/haar.hpp"
#include "unicmp/linalg.hpp"
#include "unicmp/rng.hpp"

using namespace unicmp;
using linalg::ComplexMatrix;
using linalg::PureState;
using linalg::Subspace;
using linalg::cplx;

namespace {

// Cyclic Jacobi eigensolver for small real symmetric matrices; test-side
// oracle, independent of the library.
std::vector<double> symmetric_eigenvalues(std::vector<std::vector<double>> a) {
  const std::size_t n = a.size();
  for (int sweep = 0; sweep < 60; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
    if (off < 1e-28) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(a[p][q]) < 1e-18) continue;
        const double theta = 0.5 * std::atan2(2.0 * a[p][q], a[q][q] - a[p][p]);
        const double c = std::cos(theta), s = std::sin(theta);
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> eigs(n);
  for (std::size_t i = 0; i < n; ++i) eigs[i] = a[i][i];
  std::sort(eigs.begin(), eigs.end());
  return eigs;
}

ComplexMatrix sigma_x() { return {2, 2, {0.0, 1.0, 1.0, 0.0}}; }

}  // namespace

TEST_CASE("kron identities and basis permutation") {
  const auto i2 = ComplexMatrix::identity(2);
  CHECK(linalg::kron(i2, i2).max_abs_diff(ComplexMatrix::identity(4)) == 0.0);

  const PureState ket00 = linalg::tensor(PureState::basis_state(2, 0), PureState::basis_state(2, 0));
  const PureState out = linalg::apply(linalg::kron(sigma_x(), i2), ket00);
  CHECK(std::abs(out[2] - cplx{1.0, 0.0}) < 1e-15);  // |10>
  CHECK(std::abs(out[0]) < 1e-15);
}

TEST_CASE("kron of unitaries is unitary at dims 2 and 3") {
  haar::SeededRng rng(11, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const auto u = haar::sample_unitary(2, rng);
    const auto v = haar::sample_unitary(3, rng);
    CHECK(linalg::unitarity_defect(linalg::kron(u, v)) < 1e-12);
  }
}

TEST_CASE("permutation operator definition") {
  CHECK(linalg::permutation_operator(2, 3, {0, 1, 2})
            .max_abs_diff(ComplexMatrix::identity(8)) == 0.0);

  const auto swap = linalg::permutation_operator(2, 2, {1, 0});
  // |01> -> |10>
  CHECK(std::abs(swap(2, 1) - cplx{1.0, 0.0}) == 0.0);
  CHECK(std::abs(swap(1, 1)) == 0.0);
  CHECK(linalg::unitarity_defect(swap) == 0.0);

  CHECK_THROWS_AS(linalg::permutation_operator(2, 2, {0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(linalg::permutation_operator(2, 2, {0, 2}), std::invalid_argument);
  CHECK_THROWS_AS(linalg::permutation_operator(2, 3, {0, 1}), std::invalid_argument);
}

TEST_CASE("two-qubit swap eigenvalues are +1 (x3), -1 (x1)") {
  const auto swap = linalg::permutation_operator(2, 2, {1, 0});
  std::vector<std::vector<double>> real(4, std::vector<double>(4));
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) real[r][c] = swap(r, c).real();
  const auto eigs = symmetric_eigenvalues(real);
  CHECK(eigs[0] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(eigs[1] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(eigs[2] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(eigs[3] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("symmetric projector traces match the binomial dimension") {
  CHECK(linalg::symmetric_projector(2, 2).projector().trace().real() ==
        doctest::Approx(3.0).epsilon(1e-10));
  CHECK(linalg::symmetric_projector(2, 3).projector().trace().real() ==
        doctest::Approx(4.0).epsilon(1e-10));
  CHECK(linalg::symmetric_projector(4, 2).projector().trace().real() ==
        doctest::Approx(10.0).epsilon(1e-10));
  for (std::size_t d : {2, 3, 4})
    for (std::size_t n : {2, 3}) {
      const double expected = static_cast<double>(linalg::binomial(d + n - 1, n));
      const auto sub = linalg::symmetric_projector(d, n);
      CHECK(std::abs(sub.projector().trace().real() - expected) < 1e-8);
      CHECK(sub.rank() == static_cast<std::size_t>(expected));
    }
}

TEST_CASE("symmetric projector equals an explicitly built permutation sum (d=2, N=3)") {
  // Hand-rolled oracle: list the six permutations and average the operators.
  const std::size_t perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                   {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  ComplexMatrix oracle(8, 8);
  for (const auto& p : perms) {
    for (std::size_t m = 0; m < 8; ++m) {
      const std::size_t digits[3] = {(m >> 2) & 1, (m >> 1) & 1, m & 1};
      std::size_t moved[3];
      for (std::size_t s = 0; s < 3; ++s) moved[p[s]] = digits[s];
      const std::size_t target = 4 * moved[0] + 2 * moved[1] + moved[2];
      oracle(target, m) += 1.0 / 6.0;
    }
  }
  CHECK(linalg::symmetric_projector(2, 3).projector().max_abs_diff(oracle) < 1e-12);
}

TEST_CASE("antisymmetric projector") {
  const auto anti22 = linalg::antisymmetric_projector(2, 2);
  CHECK(anti22.projector().trace().real() == doctest::Approx(1.0).epsilon(1e-10));
  REQUIRE(anti22.rank() == 1);
  // The unique antisymmetric two-qubit state is the singlet.
  const PureState singlet({2, 2}, {0.0, 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0), 0.0});
  CHECK(std::abs(linalg::inner(anti22.basis()[0], singlet)) == doctest::Approx(1.0).epsilon(1e-12));

  CHECK(linalg::antisymmetric_projector(3, 3).projector().trace().real() ==
        doctest::Approx(1.0).epsilon(1e-8));

  const auto anti23 = linalg::antisymmetric_projector(2, 3);
  CHECK(anti23.rank() == 0);
  CHECK(std::abs(anti23.projector().trace().real()) < 1e-12);
}

TEST_CASE("symmetric and antisymmetric projectors partition the identity for N=2") {
  for (std::size_t d : {2, 3}) {
    const auto sym = linalg::symmetric_projector(d, 2);
    const auto anti = linalg::antisymmetric_projector(d, 2);
    const auto sum = sym.projector() + anti.projector();
    CHECK(sum.max_abs_diff(ComplexMatrix::identity(d * d)) < 1e-10);
  }
}

TEST_CASE("projector validity: idempotent, Hermitian, trace equals rank") {
  for (std::size_t d : {2, 3}) {
    const auto sub = linalg::symmetric_projector(d, 2);
    const auto& p = sub.projector();
    CHECK((p * p).max_abs_diff(p) < 1e-10);
    CHECK(p.adjoint().max_abs_diff(p) < 1e-10);
    CHECK(std::abs(p.trace().real() - static_cast<double>(sub.rank())) < 1e-8);
  }
}

TEST_CASE("project_prob basics") {
  const auto sym = linalg::symmetric_projector(2, 2);
  const auto anti = linalg::antisymmetric_projector(2, 2);
  const PureState inside = anti.basis()[0];
  CHECK(linalg::project_prob(inside, anti) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(linalg::project_prob(inside, sym) == doctest::Approx(0.0).epsilon(1e-12));

  // Equal superposition of one in-subspace and one out-of-subspace vector.
  const PureState& in_vec = anti.basis()[0];
  const PureState& out_vec = sym.basis()[0];
  std::vector<cplx> amps(4);
  for (std::size_t i = 0; i < 4; ++i) amps[i] = (in_vec[i] + out_vec[i]) / std::sqrt(2.0);
  const PureState mixed({2, 2}, std::move(amps));
  CHECK(linalg::project_prob(mixed, anti) == doctest::Approx(0.5).epsilon(1e-12));

  CHECK_THROWS_AS(linalg::project_prob(PureState::basis_state(3, 0), anti),
                  std::invalid_argument);
}

TEST_CASE("project_prob is invariant under a global phase of the state") {
  haar::SeededRng rng(42, 0);
  const auto sub = linalg::symmetric_projector(2, 2);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<cplx> amps(4);
    for (auto& a : amps) a = rng.complex_gaussian();
    const PureState psi = PureState::normalised({2, 2}, amps);
    const double p = linalg::project_prob(psi, sub);
    const cplx phase = std::polar(1.0, rng.angle());
    std::vector<cplx> rotated(4);
    for (std::size_t i = 0; i < 4; ++i) rotated[i] = phase * psi[i];
    const double q = linalg::project_prob(PureState({2, 2}, rotated), sub);
    CHECK(std::abs(p - q) < 1e-12);
  }
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(PureState({2}, {cplx{1.0, 0.0}, cplx{1.0, 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(PureState::normalised({2}, {cplx{0.0, 0.0}, cplx{0.0, 0.0}}),
                  std::invalid_argument);
  CHECK_NOTHROW(PureState::normalised({2}, {cplx{3.0, 0.0}, cplx{4.0, 0.0}}));

  ComplexMatrix not_unitary(2, 2, {1.0, 0.0, 0.0, 2.0});
  CHECK_THROWS_AS(linalg::require_unitary(not_unitary, "test"), std::invalid_argument);

  // Non-orthonormal basis rejected.
  const PureState e0 = PureState::basis_state(2, 0);
  std::vector<cplx> tilted{std::sqrt(0.5), std::sqrt(0.5)};
  CHECK_THROWS_AS(Subspace::from_basis({2}, {e0, PureState({2}, tilted)}), std::invalid_argument);

  CHECK_THROWS_AS(linalg::symmetric_projector(7, 6), std::invalid_argument);  // 7^6 > guard
  CHECK_THROWS_AS(linalg::symmetric_projector(2, 7), std::invalid_argument);
  CHECK_THROWS_AS(linalg::antisymmetric_projector(2, 1), std::invalid_argument);
}

TEST_CASE("subspace complement") {
  const auto sym = linalg::symmetric_projector(2, 3);
  const auto rest = sym.complement();
  CHECK(rest.rank() == 4);
  const auto sum = sym.projector() + rest.projector();
  CHECK(sum.max_abs_diff(ComplexMatrix::identity(8)) < 1e-10);
}

TEST_CASE("binomial helper") {
  CHECK(linalg::binomial(3, 2) == 3);
  CHECK(linalg::binomial(5, 2) == 10);
  CHECK(linalg::binomial(4, 0) == 1);
  CHECK(linalg::binomial(2, 3) == 0);
}
