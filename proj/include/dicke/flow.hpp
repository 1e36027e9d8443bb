#pragma once

#include "dicke/hilbert.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace dicke {

/// Wegner flow dH/dl = [eta(H), H] with eta = [diag(H), H].
///
/// The flow drives a symmetric matrix towards diagonal form through a
/// continuous family of orthogonal similarity transformations. It serves as
/// an elimination-independent diagonalization route.

struct FlowState {
  double l = 0.0;
  Matrix h;
  double offdiag_norm = 0.0;
};

struct FlowSample {
  double l;
  double offdiag_norm;
};

struct FlowResult {
  FlowState final;
  bool converged = false;
  long steps = 0;
  std::vector<FlowSample> history;
};

/// Unset fields take defaults derived from the input:
/// dl0 = 0.1 / ||H||_F^2, tol_offdiag = 1e-10, l_max = 1e6 * dl0.
struct FlowOptions {
  std::optional<double> dl0;
  double tol_offdiag = 1e-10;
  std::optional<double> l_max;
  /// Conserved-trace drift budget, relative.
  double trace_tol = 1e-9;
};

/// sqrt(sum_{m != n} H_mn^2)
double off_diag_norm(const Matrix& h);
double off_diag_norm(const Operator& h);

/// eta = [diag(H), H], i.e. eta_mn = (H_mm - H_nn) H_mn. Antisymmetric for
/// symmetric H.
Matrix wegner_generator(const Matrix& h);
Operator wegner_generator(const Operator& h);

/// Integrates the flow with classical RK4. A trial step is rejected and the
/// step at least halved whenever the off-diagonal norm would increase,
/// trace(H) or trace(H^2) would drift beyond the budget, or the drift of the
/// single step exceeds 1e-4 * trace_tol. Accepted steps adapt dl from that
/// local drift. Stops when the off-diagonal
/// norm falls to tol_offdiag * ||H||_F (converged) or l reaches l_max.
///
/// Throws StepUnderflow when the step falls below 1e-15 * dl0, or when the
/// generator vanishes while off-diagonal weight remains (coupled degenerate
/// diagonal entries stall the flow).
FlowResult integrate_flow(const Matrix& h, const FlowOptions& options = {});
FlowResult integrate_flow(const Operator& h, const FlowOptions& options = {});

struct BlockFlow {
  int q;  // excitation number, or -1 for a full-matrix flow
  FlowResult result;
};

struct FlowSpectrum {
  std::vector<BlockFlow> flows;
  /// Final diagonal entries of every flow, sorted ascending.
  std::vector<double> eigenvalues;
  bool converged = false;
};

/// Diagonalizes by flow. When H commutes with the excitation number to
/// `block_tol * max|H|` each excitation block is flowed separately;
/// otherwise the full matrix is flowed.
FlowSpectrum flow_spectrum(const Operator& h, const FlowOptions& options = {},
                           double block_tol = 1e-12);

}  // namespace dicke
