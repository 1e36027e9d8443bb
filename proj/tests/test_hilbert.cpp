#include "dicke/elimination.hpp"
#include "dicke/errors.hpp"
#include "dicke/hilbert.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <set>

using namespace dicke;

TEST_CASE("make_space dimensions") {
  CHECK(make_space(1, 0).dim() == 2);
  CHECK(make_space(1, 19).dim() == 40);
  CHECK(make_space(2, 10).dim() == 33);
  CHECK_THROWS_AS(make_space(1, 5000), Overflow);
  CHECK(make_space(1, 5000, 20000).dim() == 10002);
}

TEST_CASE("basis index is a bijection") {
  const SpaceSpec s = make_space(3, 7);
  std::set<Index> seen;
  for (int n = 0; n <= s.n_max(); ++n) {
    for (int k = 0; k <= s.two_s(); ++k) {
      const Index i = s.index(n, k);
      CHECK(i >= 0);
      CHECK(i < s.dim());
      CHECK(s.photons(i) == n);
      CHECK(s.spin_label(i) == k);
      seen.insert(i);
    }
  }
  CHECK(static_cast<Index>(seen.size()) == s.dim());
}

TEST_CASE("annihilation operator ladder elements") {
  const SpaceSpec s = make_space(2, 6);
  const Operator a = annihilation_op(s);
  CHECK(a.symmetry() == Symmetry::General);
  for (int k = 0; k <= 2; ++k) {
    CHECK(a.matrix().col(s.index(0, k)).isZero(0.0));
    CHECK(a(s.index(0, k), s.index(1, k)) == 1.0);
    CHECK(a(s.index(1, k), s.index(2, k)) == doctest::Approx(1.41421356).epsilon(1e-8));
  }
  // Column idx(n,k) has exactly one nonzero: sqrt(n) at row idx(n-1,k).
  for (int n = 1; n <= s.n_max(); ++n) {
    for (int k = 0; k <= s.two_s(); ++k) {
      const auto col = a.matrix().col(s.index(n, k));
      CHECK((col.array() != 0.0).count() == 1);
      CHECK(col(s.index(n - 1, k)) == std::sqrt(double(n)));
    }
  }
  const auto o = oracle::kron_ops(2, 6);
  CHECK(oracle::max_abs(a.matrix() - o.a) == 0.0);
}

TEST_CASE("spin operators") {
  SUBCASE("spin-1/2 S_z") {
    const SpaceSpec s = make_space(1, 3);
    const SpinOps ops = spin_ops(s);
    for (int n = 0; n <= 3; ++n) {
      CHECK(ops.z(s.index(n, 0), s.index(n, 0)) == -0.5);
      CHECK(ops.z(s.index(n, 1), s.index(n, 1)) == 0.5);
    }
  }
  SUBCASE("spin-1 raising element") {
    const SpaceSpec s = make_space(2, 2);
    const SpinOps ops = spin_ops(s);
    CHECK(ops.plus(s.index(0, 2), s.index(0, 1)) == doctest::Approx(std::sqrt(2.0)));
    CHECK(oracle::max_abs(ops.minus.matrix() - ops.plus.matrix().transpose()) == 0.0);
  }
  for (int two_s : {1, 2, 3, 4, 5, 8}) {
    CAPTURE(two_s);
    const SpaceSpec s = make_space(two_s, 3);
    const SpinOps ops = spin_ops(s);
    const auto o = oracle::kron_ops(two_s, 3);
    CHECK(oracle::max_abs(ops.plus.matrix() - o.sp) <= 1e-15);
    CHECK(oracle::max_abs(ops.z.matrix() - o.sz) == 0.0);
    // [S+, S-] = 2 S_z and [S_z, S+] = S+
    CHECK(max_abs_diff(commutator(ops.plus, ops.minus), 2.0 * ops.z) <= 1e-13);
    CHECK(max_abs_diff(commutator(ops.z, ops.plus), ops.plus) <= 1e-13);
    CHECK(max_abs_diff(commutator(ops.z, ops.minus), -1.0 * ops.minus) <= 1e-13);
    // Casimir: S+ S- + S_z^2 - S_z = S(S+1)
    const double spin = s.spin();
    const Operator casimir = ops.plus * ops.minus + ops.z * ops.z - ops.z;
    CHECK(max_abs_diff(casimir, spin * (spin + 1.0) * Operator::identity(s)) <= 1e-12);
  }
}

TEST_CASE("excitation number operator") {
  const SpaceSpec s = make_space(1, 6);
  const Operator n = excitation_number_op(s);
  CHECK(n.symmetry() == Symmetry::Symmetric);
  CHECK(n(s.index(0, 0), s.index(0, 0)) == 0.0);
  CHECK(n(s.index(3, 1), s.index(3, 1)) == 4.0);
  const auto o = oracle::kron_ops(1, 6);
  CHECK(oracle::max_abs(n.matrix() - oracle::excitation(o)) <= 1e-15);

  // The Dicke Hamiltonian conserves N: explicit matrix commutator.
  const Matrix h = oracle::dicke(o, 1.0, 11.0, 0.3);
  const Matrix nm = oracle::excitation(o);
  const auto low = oracle::low_excitation(o, 6);
  const Matrix comm = h * nm - nm * h;
  CHECK(oracle::max_abs(oracle::restrict(comm, low)) <= 1e-13);
  const Operator hd = dicke_hamiltonian({1.0, 11.0, 0.3}, s);
  CHECK(max_abs_diff_up_to_excitation(commutator(hd, n), Operator::zero(s), 6) <= 1e-13);
}

TEST_CASE("commutator classification and identities") {
  const SpaceSpec s = make_space(2, 5);
  const Operator a = annihilation_op(s);
  const Operator ad = creation_op(s);
  const SpinOps ops = spin_ops(s);

  CHECK(commutator(a, a).max_abs() == 0.0);
  CHECK(commutator(ops.z, ops.z).max_abs() == 0.0);

  const Operator h = dicke_hamiltonian({1.0, 3.0, 0.2}, s);
  const Operator n = excitation_number_op(s);
  CHECK(commutator(h, n).symmetry() == Symmetry::Antisymmetric);
  const Generator k = closed_form_generator({1.0, 3.0, 0.2}, s);
  CHECK(commutator(h, k.op()).symmetry() == Symmetry::Symmetric);
  CHECK(commutator(k.op(), h).symmetry() == Symmetry::Symmetric);
  CHECK(commutator(a, h).symmetry() == Symmetry::General);

  // [a, a^dagger] = 1 below the cutoff; -n_max on the top photon sector.
  const Operator c = commutator(a, ad);
  for (Index i = 0; i < s.dim(); ++i) {
    for (Index j = 0; j < s.dim(); ++j) {
      double expected = 0.0;
      if (i == j) expected = s.photons(i) < s.n_max() ? 1.0 : -double(s.n_max());
      CHECK(std::abs(c(i, j) - (expected)) <= 1e-13);
    }
  }

  const Operator other = Operator::zero(make_space(2, 4));
  CHECK_THROWS_AS(commutator(a, other), DimensionMismatch);
}

TEST_CASE("operator symmetry checks") {
  const SpaceSpec s = make_space(1, 1);
  Matrix m = Matrix::Zero(4, 4);
  m(0, 1) = 1.0;
  CHECK_THROWS_AS(Operator(s, m, Symmetry::Symmetric), NotSymmetric);
  CHECK_THROWS_AS(Operator(s, m, Symmetry::Antisymmetric), NotSymmetric);
  CHECK_NOTHROW(Operator(s, m, Symmetry::General));
  m(1, 0) = -1.0;
  CHECK_NOTHROW(Operator(s, m, Symmetry::Antisymmetric));
  m(2, 2) = 1.0;
  CHECK_THROWS_AS(Operator(s, m, Symmetry::Antisymmetric), NotSymmetric);
  CHECK_THROWS_AS(Operator(s, Matrix::Zero(3, 3), Symmetry::General), DimensionMismatch);
}

TEST_CASE("constructed operators carry their declared class exactly") {
  for (int two_s : {1, 2, 5}) {
    const SpaceSpec s = make_space(two_s, 6);
    const auto [h0, hi] = split_dicke({1.0, 7.0, 0.4}, s);
    CHECK((h0.matrix() - h0.matrix().transpose()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((hi.matrix() - hi.matrix().transpose()).cwiseAbs().maxCoeff() == 0.0);
    const Generator k = closed_form_generator({1.0, 7.0, 0.4}, s);
    CHECK((k.matrix() + k.matrix().transpose()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(k.matrix().diagonal().cwiseAbs().maxCoeff() == 0.0);
  }
}
