#include "dicke/spectra.hpp"

#include "dicke/elimination.hpp"
#include "dicke/errors.hpp"
#include "dicke/variants.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

namespace dicke {

std::vector<double> eigenvalues_sym(const Matrix& h) {
  if (h.rows() != h.cols()) throw DimensionMismatch("eigenvalues_sym: matrix is not square");
  if (h.size() == 0) return {};
  const double scale = h.cwiseAbs().maxCoeff();
  if ((h - h.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw NotSymmetric("eigenvalues_sym: matrix is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& e = solver.eigenvalues();
  std::vector<double> out(e.data(), e.data() + e.size());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> eigenvalues_sym(const Operator& h) {
  return eigenvalues_sym(h.matrix());
}

double excitation_commutator_norm(const Operator& h) {
  const SpaceSpec& space = h.space();
  double worst = 0.0;
  for (Index c = 0; c < h.dim(); ++c) {
    for (Index r = 0; r < h.dim(); ++r) {
      const int dq = space.excitation(c) - space.excitation(r);
      if (dq != 0) worst = std::max(worst, std::abs(h(r, c) * dq));
    }
  }
  return worst;
}

BlockDecomposition block_decompose(const Operator& h, double tol) {
  const double defect = excitation_commutator_norm(h);
  if (defect > tol * h.max_abs()) {
    throw NotBlockDiagonal("operator does not conserve the excitation number: max|[H, N]| = " +
                           std::to_string(defect));
  }
  const SpaceSpec& space = h.space();
  BlockDecomposition out;
  out.blocks.resize(static_cast<std::size_t>(space.max_excitation()) + 1);
  for (int q = 0; q <= space.max_excitation(); ++q) out.blocks[q].q = q;
  for (Index i = 0; i < h.dim(); ++i) out.blocks[space.excitation(i)].indices.push_back(i);
  for (Block& b : out.blocks) b.submatrix = restrict(h, b.indices);
  return out;
}

SpectrumReport compare_spectra(const Operator& a, const Operator& b, int q_max, double tol) {
  if (!(a.space() == b.space())) {
    throw DimensionMismatch("compare_spectra: operators live on different spaces");
  }
  if (q_max < 0 || q_max > a.space().n_max()) {
    throw DomainError("compare_spectra: q_max must lie in 0..n_max (got " +
                      std::to_string(q_max) + ")");
  }
  const BlockDecomposition da = block_decompose(a, tol);
  const BlockDecomposition db = block_decompose(b, tol);

  SpectrumReport report;
  double sum_sq = 0.0;
  std::size_t count = 0;
  for (int q = 0; q <= q_max; ++q) {
    BlockComparison cmp{q, eigenvalues_sym(da.blocks[q].submatrix),
                        eigenvalues_sym(db.blocks[q].submatrix), 0.0};
    for (std::size_t i = 0; i < cmp.eigs_a.size(); ++i) {
      const double err = std::abs(cmp.eigs_a[i] - cmp.eigs_b[i]);
      cmp.max_abs_err = std::max(cmp.max_abs_err, err);
      sum_sq += err * err;
      ++count;
    }
    report.global_max_abs_err = std::max(report.global_max_abs_err, cmp.max_abs_err);
    report.per_block.push_back(std::move(cmp));
  }
  report.global_rmse = count == 0 ? 0.0 : std::sqrt(sum_sq / static_cast<double>(count));
  return report;
}

SweepResult detuning_sweep(const DickeParams& base, const std::vector<double>& deltas,
                           const SpaceSpec& space, int q_max) {
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    if (!(deltas[i] > 0.0)) throw DomainError("detuning_sweep: every delta must be positive");
    if (i > 0 && !(deltas[i] > deltas[i - 1])) {
      throw DomainError("detuning_sweep: deltas must be strictly increasing");
    }
  }

  SweepResult out;
  for (const double delta : deltas) {
    const auto start = std::chrono::steady_clock::now();
    DickeParams p = base;
    p.omega1 = base.omega0 + delta;
    const Operator full = dicke_hamiltonian(p, space);
    const Operator eff = effective_closed_form(p, space, VariantId::Froehlich);
    const SpectrumReport report = compare_spectra(full, eff, q_max);
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    out.records.push_back({delta, report.global_max_abs_err, report.global_rmse, elapsed.count()});
  }

  const bool fittable =
      out.records.size() >= 2 &&
      std::all_of(out.records.begin(), out.records.end(),
                  [](const SweepRecord& r) { return r.global_max_abs_err > 0.0; });
  if (fittable) out.slope = fit_loglog_slope(out.records);
  return out;
}

double fit_loglog_slope(const std::vector<SweepRecord>& records) {
  if (records.size() < 2) throw DegenerateFit("slope fit needs at least two records");
  double mx = 0.0;
  double my = 0.0;
  for (const SweepRecord& r : records) {
    if (!(r.global_max_abs_err > 0.0) || !(r.delta > 0.0)) {
      throw DegenerateFit("slope fit needs positive deltas and errors");
    }
    mx += std::log(r.delta);
    my += std::log(r.global_max_abs_err);
  }
  const auto n = static_cast<double>(records.size());
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (const SweepRecord& r : records) {
    const double dx = std::log(r.delta) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(r.global_max_abs_err) - my);
  }
  if (sxx == 0.0) throw DegenerateFit("slope fit needs at least two distinct deltas");
  return sxy / sxx;
}

}  // namespace dicke
