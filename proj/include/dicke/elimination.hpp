#pragma once

#include "dicke/hilbert.hpp"

#include <limits>

namespace dicke {

inline constexpr double kDefaultTolGap = 1e-9;

/// Real antisymmetric generator K of the similarity transformation.
///
/// The transformation U = exp(-i Omega) with Hermitian Omega is stored as
/// K = -i Omega, so U is the real orthogonal matrix exp(K) and the
/// elimination condition H_I + i[H0, Omega] = 0 reads [H0, K] = H_I.
class Generator {
 public:
  /// Throws NotSymmetric unless `k` is antisymmetric within 1e-13 * max|K|.
  explicit Generator(Operator k);

  static Generator zero(const SpaceSpec& space);

  const SpaceSpec& space() const noexcept { return op_.space(); }
  const Operator& op() const noexcept { return op_; }
  const Matrix& matrix() const noexcept { return op_.matrix(); }

  friend Generator operator+(const Generator& a, const Generator& b);

 private:
  Operator op_;
};

struct EliminationReport {
  /// max |([H0, K] - H_I)_mn| over entries not absorbed by the gauge.
  double residual_max = 0.0;
  /// Unordered pairs (m, n) with both energy gap and interaction below
  /// tolerance; K is set to zero there.
  long zeroed_entries = 0;
  /// Smallest |E_m - E_n| used as a denominator; +inf if none was needed.
  double min_gap_used = std::numeric_limits<double>::infinity();
};

struct DickeSplit {
  Operator h0;
  Operator hi;
};

/// H0 = omega0 a^dagger a + omega1 S_z (diagonal), H_I = g (a S+ + a^dagger S-).
DickeSplit split_dicke(const DickeParams& params, const SpaceSpec& space);

/// Full truncated Dicke Hamiltonian H0 + H_I.
Operator dicke_hamiltonian(const DickeParams& params, const SpaceSpec& space);

struct GeneratorSolution {
  Generator generator;
  EliminationReport report;
};

/// Solves [H0, K] = H_I entrywise for diagonal H0:
/// K_mn = (H_I)_mn / (E_m - E_n).
///
/// Pairs with |E_m - E_n| <= tol_gap * max|H0| get K_mn = 0 when the
/// interaction element is also below tol_gap * max|H0|, and throw Resonance
/// otherwise. Throws NotDiagonal if H0 has off-diagonal elements above
/// 1e-13 * max|H0|, NotSymmetric if H_I is not symmetric.
GeneratorSolution solve_generator(const Operator& h0, const Operator& hi,
                                  double tol_gap = kDefaultTolGap);

/// K = (g / Delta)(a S+ - a^dagger S-). Throws Resonance when Delta = 0.
Generator closed_form_generator(const DickeParams& params, const SpaceSpec& space);

/// Second-order term 1/2 [K, H_I].
Operator second_order(const Operator& hi, const Generator& k);

struct EffectiveHamiltonian {
  Operator hamiltonian;
  EliminationReport report;
};

/// H0 + 1/2 [K, H_I] for the generator returned by solve_generator.
EffectiveHamiltonian effective_hamiltonian(const DickeParams& params, const SpaceSpec& space,
                                           double tol_gap = kDefaultTolGap);

/// Same construction for an arbitrary split (H0 diagonal, H_I symmetric).
EffectiveHamiltonian effective_hamiltonian(const Operator& h0, const Operator& hi,
                                           double tol_gap = kDefaultTolGap);

/// exp(K) by scaling and squaring with a truncated Taylor series; `tol`
/// bounds the Taylor remainder of the scaled exponent.
Operator matrix_exponential(const Generator& k, double tol = 1e-16);

/// exp(K) H exp(-K). The result is symmetric when H is.
Operator similarity_transform(const Operator& h, const Generator& k, double tol = 1e-16);

}  // namespace dicke
