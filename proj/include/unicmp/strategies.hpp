// Unambiguous comparison strategies for unknown unitary transforms. Each
// strategy is available as a closed-form success-probability evaluator
// and/or a statevector simulation of the corresponding network and
// measurement; where both exist they are required to agree.
//
// A "Different" verdict is always correct; the price of unambiguity is the
// inconclusive branch (identical transforms can never be certified).

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "unicmp/haar.hpp"
#include "unicmp/linalg.hpp"
#include "unicmp/rng.hpp"

namespace unicmp::strategies {

using linalg::ComplexMatrix;
using linalg::PureState;
using linalg::Subspace;
using linalg::cplx;

/// Single-particle test state over the 4-dim path x polarisation space,
/// basis order (u,pol0), (u,pol1), (v,pol0), (v,pol1).
struct SingleParticleTest {
  cplx c;  // amplitude of (u, pol0)
  cplx d;  // amplitude of (u, pol1)
  cplx e;  // amplitude of (v, pol0)
  cplx f;  // amplitude of (v, pol1)

  /// Equal-weight split of polarisation (chi0, chi1) between the two paths.
  static SingleParticleTest balanced(cplx chi0, cplx chi1);

  /// The canonical test: pol0 split equally between the paths.
  static SingleParticleTest canonical();

  double norm_sq() const;

  /// e*d - c*f; zero iff the polarisation is the same in both paths, the
  /// condition for an unambiguous strategy to exist.
  cplx polarisation_mismatch() const;
};

enum class Verdict { Different, Inconclusive };

struct ComparisonOutcome {
  Verdict verdict;
  std::string detail;  // measurement label, e.g. a Bell state or exit port
};

struct OutcomeWeight {
  std::string label;
  double probability;
  bool signals_difference;
};

/// Full description of one strategy run: the certainty-of-difference
/// probability plus the distribution over measurement labels.
struct StrategyReport {
  double p_diff = 0.0;
  std::vector<OutcomeWeight> outcomes;
  std::size_t difference_subspace_dim = 0;
  std::size_t ambient_dim = 0;

  /// Checks that the distribution sums to 1 and that p_diff equals the
  /// difference-label mass (both within 1e-9); throws on violation.
  void validate() const;
};

// ---------------------------------------------------------------------------
// Two-transform qubit strategies

/// Closed form for the canonical interferometric test state:
/// 1/4 (|e^{i phi_u} a_u - e^{i phi_v} a_v|^2 + |e^{i phi_u} b_u - e^{i phi_v} b_v|^2).
double single_particle_p_diff(const haar::SU2Phase& u, const haar::SU2Phase& v);

/// Same quantity for explicit 2x2 unitaries: 1/4 ||column_0(U) - column_0(V)||^2.
double single_particle_p_diff(const ComplexMatrix& u, const ComplexMatrix& v);

/// Statevector simulation of the interferometric network for an arbitrary
/// valid test state. The two-dimensional difference subspace is built as the
/// orthogonal complement of the span of all U = V outputs and cross-checked
/// against the analytic orthogonality conditions. Rejects test states whose
/// path polarisations differ, since no unambiguous measurement exists then.
StrategyReport general_single_particle_report(const SingleParticleTest& test,
                                              const ComplexMatrix& u, const ComplexMatrix& v);
StrategyReport general_single_particle_report(const SingleParticleTest& test,
                                              const haar::SU2Phase& u, const haar::SU2Phase& v);

/// Closed form 1 - [Re(a_u conj(a_v) + b_u conj(b_v))]^2.
double singlet_p_diff(const haar::SU2Phase& u, const haar::SU2Phase& v);

/// Sends the singlet through U (x) V and measures in the Bell basis; any
/// outcome other than the singlet certifies a difference. Works for
/// arbitrary 2x2 unitaries.
StrategyReport singlet_bell_decompose(const ComplexMatrix& u, const ComplexMatrix& v);

/// SU2Phase overload; also cross-checks the simulated p_diff against the
/// closed form.
StrategyReport singlet_bell_decompose(const haar::SU2Phase& u, const haar::SU2Phase& v);

/// Variant starting in the singlet's orthogonal complement: a singlet click
/// on the output certifies a difference (one dimension out of four).
double singlet_orthostart_p_diff(const ComplexMatrix& u, const ComplexMatrix& v,
                                 const PureState& start);
double singlet_orthostart_p_diff(const haar::SU2Phase& u, const haar::SU2Phase& v,
                                 const PureState& start);
StrategyReport singlet_orthostart_report(const ComplexMatrix& u, const ComplexMatrix& v,
                                         const PureState& start);

/// Two unentangled copies of psi, one through U and one through V, followed
/// by a symmetric/antisymmetric measurement: 1/2 (1 - |<psi|U^dag V|psi>|^2).
/// Evaluated both in closed form and as the antisymmetric weight of the
/// product output state; the two routes must agree within 1e-10.
double nonentangled_p_diff(const ComplexMatrix& u, const ComplexMatrix& v, const PureState& psi);

// ---------------------------------------------------------------------------
// Many transforms

/// N-path single-particle strategy. Both printed forms of the success
/// probability (the pairwise sum and the complement of the identical-output
/// projections) are evaluated and must agree within 1e-10.
double multi_single_particle_p_diff(const std::vector<haar::SU2Phase>& us);

/// (pairwise-sum form, projective form) for direct inspection.
std::pair<double, double> multi_single_particle_forms(const std::vector<haar::SU2Phase>& us);

/// One copy of psi through each transform, then a projection onto the
/// complement of the totally symmetric subspace:
/// 1 - <Psi_out| P_sym |Psi_out> with Psi_out = (U_1 psi) (x) ... (x) (U_N psi).
double symmetric_subspace_multi_p_diff(const std::vector<ComplexMatrix>& us,
                                       const PureState& psi);

/// The explicit three-qubit construction of the non-totally-symmetric
/// projector from pair-singlet states; equals I - P_sym(2,3).
Subspace three_qubit_nonsym_projector();

// ---------------------------------------------------------------------------
// Higher-dimensional transforms

/// Interferometric comparison of one column of two M x M unitaries:
/// 1/4 sum_j |U_{j,col} - V_{j,col}|^2 (0-based column index).
double column_strategy_p_diff(const ComplexMatrix& u, const ComplexMatrix& v, std::size_t column);

/// Uniform mixture over all M columns: (1/4M) sum_{ij} |U_ij - V_ij|^2.
double mixed_column_p_diff(const ComplexMatrix& u, const ComplexMatrix& v);

/// N transforms of dimension N applied to the totally antisymmetric state
/// (Slater determinant): 1 - |<Psi_anti| U_1 (x) ... (x) U_N |Psi_anti>|^2.
double slater_p_diff(const std::vector<ComplexMatrix>& us);

/// The six explicit pair-singlet-type states spanning the antisymmetric
/// (non-totally-symmetric) subspace of two 4-dim systems, as an orthonormal
/// basis over dims {4, 4}.
std::vector<PureState> two_fourdim_nonsym_basis();

/// Start state in the antisymmetric subspace of two 4-dim systems; detection
/// of (U (x) V) start in the symmetric subspace certifies a difference.
double two_fourdim_nonsym_p_diff(const ComplexMatrix& u, const ComplexMatrix& v,
                                 const PureState& start);

/// Complementary variant: symmetric start, antisymmetric detection.
double two_fourdim_symstart_p_diff(const ComplexMatrix& u, const ComplexMatrix& v,
                                   const PureState& start);

// ---------------------------------------------------------------------------
// Shared statevector pieces and single-shot sampling

/// Bell basis over dims {2, 2} in the order psi-, psi+, Phi+, Phi-.
const std::vector<PureState>& bell_basis();
const PureState& singlet_state();

/// Normalised totally antisymmetric state of n sites of dimension n.
PureState slater_state(std::size_t n);

/// Draws one measurement label from the report's outcome distribution.
ComparisonOutcome sample_outcome(const StrategyReport& report, haar::SeededRng& rng);

}  // namespace unicmp::strategies
