#pragma once

#include "dicke/hilbert.hpp"

#include <optional>
#include <vector>

namespace dicke {

/// All eigenvalues of a symmetric operator, ascending. Throws NotSymmetric.
std::vector<double> eigenvalues_sym(const Operator& h);
std::vector<double> eigenvalues_sym(const Matrix& h);

struct Block {
  int q;
  std::vector<Index> indices;
  Matrix submatrix;
};

/// Excitation-number blocks q = 0 .. n_max + 2S, in ascending q.
struct BlockDecomposition {
  std::vector<Block> blocks;
};

/// max |[H, N]_mn|, computed entrywise as |H_mn (q_n - q_m)|.
double excitation_commutator_norm(const Operator& h);

/// Splits H into excitation blocks. Throws NotBlockDiagonal when
/// max|[H, N]| > tol * max|H|.
BlockDecomposition block_decompose(const Operator& h, double tol = 1e-12);

struct BlockComparison {
  int q;
  std::vector<double> eigs_a;
  std::vector<double> eigs_b;
  double max_abs_err;
};

struct SpectrumReport {
  std::vector<BlockComparison> per_block;
  double global_max_abs_err = 0.0;
  double global_rmse = 0.0;
};

/// Block-by-block ascending eigenvalue comparison for q = 0 .. q_max.
/// Requires q_max <= n_max (DomainError) so that only blocks untouched by
/// the Fock cutoff are compared.
SpectrumReport compare_spectra(const Operator& a, const Operator& b, int q_max,
                               double tol = 1e-12);

struct SweepRecord {
  double delta;
  double global_max_abs_err;
  double global_rmse;
  double runtime_seconds;
};

struct SweepResult {
  std::vector<SweepRecord> records;
  /// Least-squares slope of log(err) against log(delta); empty when every
  /// error is zero or fewer than two points are usable.
  std::optional<double> slope;
};

/// For each delta, sets omega1 = omega0 + delta and compares the full Dicke
/// spectrum with the closed-form Froehlich effective Hamiltonian.
SweepResult detuning_sweep(const DickeParams& base, const std::vector<double>& deltas,
                           const SpaceSpec& space, int q_max);

/// Throws DegenerateFit for fewer than two records or any non-positive error.
double fit_loglog_slope(const std::vector<SweepRecord>& records);

}  // namespace dicke
