#include "dicke/flow.hpp"

#include "dicke/errors.hpp"
#include "dicke/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dicke {

namespace {

// [eta, H] for antisymmetric eta and symmetric H equals P + P^T with P = eta H,
// which keeps the flowed matrix exactly symmetric.
Matrix flow_rhs(const Matrix& h) {
  const Matrix p = wegner_generator(h) * h;
  return p + p.transpose();
}

Matrix rk4_step(const Matrix& h, double dl) {
  const Matrix k1 = flow_rhs(h);
  const Matrix k2 = flow_rhs(h + (0.5 * dl) * k1);
  const Matrix k3 = flow_rhs(h + (0.5 * dl) * k2);
  const Matrix k4 = flow_rhs(h + dl * k3);
  return h + (dl / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

double off_diag_norm(const Matrix& h) {
  double sum = 0.0;
  for (Index c = 0; c < h.cols(); ++c) {
    for (Index r = 0; r < h.rows(); ++r) {
      if (r != c) sum += h(r, c) * h(r, c);
    }
  }
  return std::sqrt(sum);
}

double off_diag_norm(const Operator& h) { return off_diag_norm(h.matrix()); }

Matrix wegner_generator(const Matrix& h) {
  const Index d = h.rows();
  Matrix eta(d, d);
  for (Index c = 0; c < d; ++c) {
    for (Index r = 0; r < d; ++r) eta(r, c) = (h(r, r) - h(c, c)) * h(r, c);
  }
  return eta;
}

Operator wegner_generator(const Operator& h) {
  if (h.symmetry() != Symmetry::Symmetric) {
    return {h.space(), wegner_generator(h.matrix()), Symmetry::General};
  }
  return {h.space(), wegner_generator(h.matrix()), Symmetry::Antisymmetric};
}

FlowResult integrate_flow(const Matrix& h_in, const FlowOptions& options) {
  if (h_in.rows() != h_in.cols()) throw DimensionMismatch("integrate_flow: matrix is not square");
  const double norm = h_in.norm();
  if (h_in.size() > 0 && (h_in - h_in.transpose()).cwiseAbs().maxCoeff() > 1e-13 * norm) {
    throw NotSymmetric("integrate_flow: input must be symmetric");
  }

  FlowResult result;
  result.final.h = 0.5 * (h_in + h_in.transpose());
  result.final.offdiag_norm = off_diag_norm(result.final.h);
  result.history.push_back({0.0, result.final.offdiag_norm});
  if (norm == 0.0) {
    result.converged = true;
    return result;
  }

  const double dl0 = options.dl0.value_or(0.1 / (norm * norm));
  const double l_max = options.l_max.value_or(1e6 * dl0);
  if (!(dl0 > 0.0) || !(l_max > 0.0) || !(options.tol_offdiag > 0.0)) {
    throw DomainError("integrate_flow: dl0, tol_offdiag and l_max must be positive");
  }

  const double target = options.tol_offdiag * norm;
  const double trace0 = result.final.h.trace();
  const double trace2_0 = result.final.h.squaredNorm();
  // Each conserved quantity may use half its budget over the whole flow; the
  // remainder absorbs rounding in the final state. Single steps are held to a
  // much tighter local drift so the budget survives thousands of steps.
  const double trace_scale = std::max(std::abs(trace0), norm);
  const double trace_budget = 0.5 * options.trace_tol * trace_scale;
  const double trace2_budget = 0.5 * options.trace_tol * trace2_0;
  const double local_tol = 1e-4 * options.trace_tol;

  Matrix& h = result.final.h;
  double& l = result.final.l;
  double& off = result.final.offdiag_norm;
  double dl = dl0;

  while (off > target && l < l_max) {
    if (wegner_generator(h).norm() <= 1e-12 * norm * off) {
      throw StepUnderflow("integrate_flow: generator vanishes with off-diagonal norm " +
                          std::to_string(off) + " remaining (coupled degenerate levels)");
    }
    const double tr_before = h.trace();
    const double tr2_before = h.squaredNorm();
    while (true) {
      const double step = std::min(dl, l_max - l);
      Matrix trial = rk4_step(h, step);
      const double trial_off = off_diag_norm(trial);
      const double tr = trial.trace();
      const double tr2 = trial.squaredNorm();
      const double local = std::max(std::abs(tr - tr_before) / trace_scale,
                                    std::abs(tr2 - tr2_before) / trace2_0);
      // Fifth-order local error: standard step-size controller.
      const double factor =
          local == 0.0 ? 2.0 : std::clamp(0.9 * std::pow(local_tol / local, 0.2), 0.2, 2.0);
      const bool ok = trial_off <= off && local <= local_tol &&
                      std::abs(tr - trace0) <= trace_budget &&
                      std::abs(tr2 - trace2_0) <= trace2_budget;
      if (ok) {
        h = std::move(trial);
        l += step;
        off = trial_off;
        ++result.steps;
        result.history.push_back({l, off});
        dl *= factor;
        break;
      }
      dl *= std::min(0.5, factor);
      if (dl < 1e-15 * dl0) {
        throw StepUnderflow("integrate_flow: step size underflow at l = " + std::to_string(l));
      }
    }
  }
  result.converged = off <= target;
  return result;
}

FlowResult integrate_flow(const Operator& h, const FlowOptions& options) {
  return integrate_flow(h.matrix(), options);
}

FlowSpectrum flow_spectrum(const Operator& h, const FlowOptions& options, double block_tol) {
  FlowSpectrum out;
  out.converged = true;
  auto collect = [&](int q, FlowResult r) {
    const Eigen::VectorXd d = r.final.h.diagonal();
    out.eigenvalues.insert(out.eigenvalues.end(), d.data(), d.data() + d.size());
    out.converged = out.converged && r.converged;
    out.flows.push_back({q, std::move(r)});
  };

  if (excitation_commutator_norm(h) <= block_tol * h.max_abs()) {
    for (const Block& b : block_decompose(h, block_tol).blocks) {
      if (b.indices.empty()) continue;
      collect(b.q, integrate_flow(b.submatrix, options));
    }
  } else {
    collect(-1, integrate_flow(h.matrix(), options));
  }
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end());
  return out;
}

}  // namespace dicke
