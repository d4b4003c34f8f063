#include "unicmp/haar.hpp"

#include <cmath>
#include <stdexcept>

namespace unicmp::haar {

using linalg::ComplexMatrix;
using linalg::cplx;

cplx SU2Phase::a() const { return std::polar(std::cos(theta), alpha); }

cplx SU2Phase::b() const { return std::polar(std::sin(theta), beta); }

ComplexMatrix SU2Phase::to_matrix() const {
  const cplx g = std::polar(1.0, phi);
  const cplx av = a();
  const cplx bv = b();
  ComplexMatrix m(2, 2);
  m(0, 0) = g * av;
  m(0, 1) = -g * std::conj(bv);
  m(1, 0) = g * bv;
  m(1, 1) = g * std::conj(av);
  return m;
}

SU2Phase sample_su2_phase(SeededRng& rng) {
  SU2Phase p;
  p.theta = std::acos(std::sqrt(rng.uniform()));
  p.alpha = rng.angle();
  p.beta = rng.angle();
  p.phi = rng.angle();
  return p;
}

ComplexMatrix sample_unitary(std::size_t d, SeededRng& rng) {
  if (d < 2 || d > kMaxHaarDim)
    throw std::invalid_argument("sample_unitary supports dimensions 2.." +
                                std::to_string(kMaxHaarDim));

  // Ginibre matrix, row-major draw order.
  std::vector<std::vector<cplx>> cols(d, std::vector<cplx>(d));
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) cols[c][r] = rng.complex_gaussian();

  // Modified Gram-Schmidt, two passes per column. Normalising with the real
  // positive column norm fixes the R-diagonal phases, so Q is Haar.
  for (std::size_t c = 0; c < d; ++c) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < c; ++k) {
        const cplx overlap = linalg::inner(cols[k], cols[c]);
        for (std::size_t r = 0; r < d; ++r) cols[c][r] -= overlap * cols[k][r];
      }
    }
    const double n = linalg::norm(cols[c]);
    if (n < 1e-12) throw std::runtime_error("internal consistency: degenerate Ginibre draw");
    for (std::size_t r = 0; r < d; ++r) cols[c][r] /= n;
  }

  ComplexMatrix q(d, d);
  for (std::size_t c = 0; c < d; ++c)
    for (std::size_t r = 0; r < d; ++r) q(r, c) = cols[c][r];
  if (!linalg::is_unitary(q))
    throw std::runtime_error("internal consistency: sampled matrix failed the unitarity check");
  return q;
}

double su2_phase_density(const SU2Phase& p) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  if (!(p.theta >= 0.0 && p.theta <= std::numbers::pi / 2.0))
    throw std::invalid_argument("su2_phase_density: theta outside [0, pi/2]");
  if (!(p.alpha >= 0.0 && p.alpha < two_pi) || !(p.beta >= 0.0 && p.beta < two_pi) ||
      !(p.phi >= 0.0 && p.phi < two_pi))
    throw std::invalid_argument("su2_phase_density: angle outside [0, 2*pi)");
  const double pi3 = std::numbers::pi * std::numbers::pi * std::numbers::pi;
  return std::sin(2.0 * p.theta) / (8.0 * pi3);
}

}  // namespace unicmp::haar
