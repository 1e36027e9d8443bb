#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

namespace dicke {

using Index = Eigen::Index;
using Matrix = Eigen::MatrixXd;

inline constexpr Index kDefaultMaxDim = 10000;

/// Truncated boson (x) collective-spin product space.
///
/// Basis state |n, k> has photon number n in 0..n_max and magnetic quantum
/// number m = k - S with k in 0..2S. Its linear index is n * (2S + 1) + k, so
/// the spin multiplet of each photon sector is stored contiguously.
class SpaceSpec {
 public:
  /// Throws Overflow if the dimension exceeds `max_dim`.
  SpaceSpec(int two_s, int n_max, Index max_dim = kDefaultMaxDim);

  int two_s() const noexcept { return two_s_; }
  int n_max() const noexcept { return n_max_; }
  Index spin_dim() const noexcept { return two_s_ + 1; }
  Index dim() const noexcept { return (Index{n_max_} + 1) * spin_dim(); }
  double spin() const noexcept { return 0.5 * two_s_; }

  Index index(int n, int k) const noexcept { return Index{n} * spin_dim() + k; }
  int photons(Index i) const noexcept { return static_cast<int>(i / spin_dim()); }
  int spin_label(Index i) const noexcept { return static_cast<int>(i % spin_dim()); }
  double magnetic(Index i) const noexcept { return spin_label(i) - spin(); }
  /// Eigenvalue q = n + k of the excitation number operator on basis state i.
  int excitation(Index i) const noexcept { return photons(i) + spin_label(i); }
  /// Largest excitation number present in the truncated basis.
  int max_excitation() const noexcept { return n_max_ + two_s_; }

  friend bool operator==(const SpaceSpec&, const SpaceSpec&) = default;

 private:
  int two_s_;
  int n_max_;
};

SpaceSpec make_space(int two_s, int n_max, Index max_dim = kDefaultMaxDim);

/// Dicke model parameters: field frequency omega0, atomic frequency omega1,
/// coupling g. The detuning is always derived, never stored.
struct DickeParams {
  double omega0 = 1.0;
  double omega1 = 1.0;
  double g = 0.0;

  double delta() const noexcept { return omega1 - omega0; }
};

enum class Symmetry { Symmetric, Antisymmetric, General };

const char* to_string(Symmetry s) noexcept;

/// Dense real operator on a SpaceSpec with a declared symmetry class.
///
/// Operators are immutable values. Construction checks the declared class
/// against the data: Symmetric and Antisymmetric must hold to
/// 1e-13 * max|M|, and an Antisymmetric diagonal must be exactly zero.
class Operator {
 public:
  Operator(SpaceSpec space, Matrix data, Symmetry symmetry);

  static Operator zero(const SpaceSpec& space);
  static Operator identity(const SpaceSpec& space);

  const SpaceSpec& space() const noexcept { return space_; }
  const Matrix& matrix() const noexcept { return data_; }
  Symmetry symmetry() const noexcept { return symmetry_; }
  Index dim() const noexcept { return data_.rows(); }
  double operator()(Index r, Index c) const { return data_(r, c); }

  Operator transpose() const;
  /// max |M_ij|
  double max_abs() const;

  /// Re-declare the symmetry class. For Symmetric/Antisymmetric the data is
  /// projected onto that class after checking it already holds within
  /// `rel_tol * max|M|`; throws NotSymmetric otherwise.
  Operator with_symmetry(Symmetry symmetry, double rel_tol = 1e-12) const;

 private:
  SpaceSpec space_;
  Matrix data_;
  Symmetry symmetry_;
};

Operator operator+(const Operator& a, const Operator& b);
Operator operator-(const Operator& a, const Operator& b);
Operator operator*(double s, const Operator& a);
/// Matrix product; the result is declared General.
Operator operator*(const Operator& a, const Operator& b);

/// max |A_ij - B_ij|
double max_abs_diff(const Operator& a, const Operator& b);

Operator annihilation_op(const SpaceSpec& space);
Operator creation_op(const SpaceSpec& space);
/// a^dagger a
Operator photon_number_op(const SpaceSpec& space);

struct SpinOps {
  Operator plus;
  Operator minus;
  Operator z;
};

SpinOps spin_ops(const SpaceSpec& space);

/// N = a^dagger a + S_z + S, diagonal with eigenvalue n + k.
Operator excitation_number_op(const SpaceSpec& space);

/// AB - BA. [Sym, Antisym] and [Antisym, Sym] are Symmetric, [Sym, Sym] and
/// [Antisym, Antisym] are Antisymmetric, anything else is General.
Operator commutator(const Operator& a, const Operator& b);

/// Basis indices with excitation number q <= q_max, ascending.
std::vector<Index> indices_up_to_excitation(const SpaceSpec& space, int q_max);

/// Principal submatrix over `indices`.
Matrix restrict(const Operator& op, const std::vector<Index>& indices);

/// max |A_ij - B_ij| over the principal submatrix on states with q <= q_max.
double max_abs_diff_up_to_excitation(const Operator& a, const Operator& b, int q_max);

}  // namespace dicke
