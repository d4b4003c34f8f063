// Haar-distributed random unitaries: the SU(2)-with-global-phase
// parametrisation used by the qubit comparison strategies, and general U(d)
// via orthonormalised Ginibre matrices.

#pragma once

#include <cstdint>

#include "unicmp/linalg.hpp"
#include "unicmp/rng.hpp"

namespace unicmp::haar {

/// Largest dimension sample_unitary will produce.
inline constexpr std::size_t kMaxHaarDim = 36;

/// (theta, alpha, beta, phi) parametrisation of a 2x2 unitary with global
/// phase: a = cos(theta) e^{ i alpha }, b = sin(theta) e^{ i beta }, and the
/// matrix is e^{ i phi } [[a, -conj(b)], [b, conj(a)]], so the image of the
/// first basis vector is e^{ i phi } (a, b).
struct SU2Phase {
  double theta = 0.0;  // [0, pi/2]
  double alpha = 0.0;
  double beta = 0.0;
  double phi = 0.0;  // global phase

  std::complex<double> a() const;
  std::complex<double> b() const;
  /// e^{ i phi } times the SU(2) factor; unitary within 1e-12.
  linalg::ComplexMatrix to_matrix() const;
};

/// Haar draw over SU(2) x U(1): alpha, beta, phi uniform on [0, 2*pi) and
/// |a|^2 uniform on [0, 1] (theta = arccos(sqrt(u))). Consumes exactly four
/// uniforms in the order theta, alpha, beta, phi.
SU2Phase sample_su2_phase(SeededRng& rng);

/// Haar-distributed U(d): QR of a complex Ginibre matrix with the R diagonal
/// kept real positive (Gram-Schmidt normalisation), which is the
/// phase-of-diagonal correction of the standard construction.
linalg::ComplexMatrix sample_unitary(std::size_t d, SeededRng& rng);

/// Group-invariant density on the (theta, alpha, beta, phi) box:
/// sin(2 theta) / (8 pi^3). Normalises to 1 over
/// [0, pi/2] x [0, 2 pi)^3. Parameters outside the box are rejected.
double su2_phase_density(const SU2Phase& p);

}  // namespace unicmp::haar
