#include "dicke/elimination.hpp"

#include "dicke/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dicke {

namespace {

Operator checked_antisymmetric(Operator k) {
  if (k.symmetry() == Symmetry::Antisymmetric) return k;
  return k.with_symmetry(Symmetry::Antisymmetric, 1e-13);
}

double one_norm(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().colwise().sum().maxCoeff();
}

}  // namespace

Generator::Generator(Operator k) : op_(checked_antisymmetric(std::move(k))) {}

Generator Generator::zero(const SpaceSpec& space) {
  return Generator(
      Operator(space, Matrix::Zero(space.dim(), space.dim()), Symmetry::Antisymmetric));
}

Generator operator+(const Generator& a, const Generator& b) {
  return Generator(a.op() + b.op());
}

DickeSplit split_dicke(const DickeParams& params, const SpaceSpec& space) {
  const Index d = space.dim();
  Matrix h0 = Matrix::Zero(d, d);
  for (Index i = 0; i < d; ++i) {
    h0(i, i) = params.omega0 * space.photons(i) + params.omega1 * space.magnetic(i);
  }

  const Operator a = annihilation_op(space);
  const SpinOps s = spin_ops(space);
  // a S+ and a^dagger S- = (a S+)^T; building the second as a transpose keeps
  // H_I exactly symmetric.
  const Matrix rotating = a.matrix() * s.plus.matrix();
  Matrix hi = params.g * (rotating + rotating.transpose());

  return {Operator(space, std::move(h0), Symmetry::Symmetric),
          Operator(space, std::move(hi), Symmetry::Symmetric)};
}

Operator dicke_hamiltonian(const DickeParams& params, const SpaceSpec& space) {
  auto [h0, hi] = split_dicke(params, space);
  return h0 + hi;
}

GeneratorSolution solve_generator(const Operator& h0, const Operator& hi, double tol_gap) {
  if (!(h0.space() == hi.space())) {
    throw DimensionMismatch("solve_generator: H0 and H_I live on different spaces");
  }
  const Index d = h0.dim();
  const Matrix& e = h0.matrix();
  const Matrix& v = hi.matrix();
  const double scale = h0.max_abs();

  Matrix off = e;
  off.diagonal().setZero();
  if (d > 0 && off.cwiseAbs().maxCoeff() > 1e-13 * scale) {
    throw NotDiagonal("solve_generator: H0 must be diagonal in the computational basis");
  }
  if (d > 0 && (v - v.transpose()).cwiseAbs().maxCoeff() > 1e-13 * hi.max_abs()) {
    throw NotSymmetric("solve_generator: H_I must be symmetric");
  }

  const double threshold = tol_gap * scale;
  Matrix k = Matrix::Zero(d, d);
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> gauge =
      Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(d, d, false);
  EliminationReport report;

  for (Index m = 0; m < d; ++m) {
    if (std::abs(v(m, m)) > threshold) {
      throw Resonance(m, m, "interaction has a diagonal element at index " + std::to_string(m));
    }
    for (Index n = m + 1; n < d; ++n) {
      const double gap = e(m, m) - e(n, n);
      const double coupling = v(m, n);
      if (std::abs(gap) <= threshold) {
        if (std::abs(coupling) > threshold) {
          throw Resonance(m, n,
                          "energy gap " + std::to_string(gap) + " between states " +
                              std::to_string(m) + " and " + std::to_string(n) +
                              " vanishes but the interaction element is " +
                              std::to_string(coupling));
        }
        gauge(m, n) = gauge(n, m) = true;
        ++report.zeroed_entries;
        continue;
      }
      if (coupling == 0.0) continue;
      const double kmn = coupling / gap;
      k(m, n) = kmn;
      k(n, m) = -kmn;
      report.min_gap_used = std::min(report.min_gap_used, std::abs(gap));
    }
  }

  for (Index m = 0; m < d; ++m) {
    for (Index n = 0; n < d; ++n) {
      if (gauge(m, n)) continue;
      const double r = (e(m, m) - e(n, n)) * k(m, n) - v(m, n);
      report.residual_max = std::max(report.residual_max, std::abs(r));
    }
  }

  return {Generator(Operator(h0.space(), std::move(k), Symmetry::Antisymmetric)), report};
}

Generator closed_form_generator(const DickeParams& params, const SpaceSpec& space) {
  const double delta = params.delta();
  if (delta == 0.0) {
    throw Resonance(-1, -1, "closed-form generator requires nonzero detuning");
  }
  const Operator a = annihilation_op(space);
  const SpinOps s = spin_ops(space);
  const Matrix rotating = a.matrix() * s.plus.matrix();
  Matrix k = (params.g / delta) * (rotating - rotating.transpose());
  k.diagonal().setZero();
  return Generator(Operator(space, std::move(k), Symmetry::Antisymmetric));
}

Operator second_order(const Operator& hi, const Generator& k) {
  if (!(hi.space() == k.space())) {
    throw DimensionMismatch("second_order: H_I and K live on different spaces");
  }
  const Matrix p = k.matrix() * hi.matrix();
  const Matrix q = hi.matrix() * k.matrix();
  Operator out(hi.space(), 0.5 * (p - q), Symmetry::General);
  if (hi.symmetry() == Symmetry::Symmetric) {
    return out.with_symmetry(Symmetry::Symmetric);
  }
  return out;
}

EffectiveHamiltonian effective_hamiltonian(const Operator& h0, const Operator& hi,
                                           double tol_gap) {
  auto [generator, report] = solve_generator(h0, hi, tol_gap);
  return {h0 + second_order(hi, generator), report};
}

EffectiveHamiltonian effective_hamiltonian(const DickeParams& params, const SpaceSpec& space,
                                           double tol_gap) {
  const auto [h0, hi] = split_dicke(params, space);
  return effective_hamiltonian(h0, hi, tol_gap);
}

Operator matrix_exponential(const Generator& k, double tol) {
  const Index d = k.op().dim();
  const Matrix& a = k.matrix();
  const double norm = one_norm(a);

  int squarings = 0;
  double theta = norm;
  while (theta > 0.5) {
    theta *= 0.5;
    ++squarings;
  }
  const Matrix b = std::ldexp(1.0, -squarings) * a;

  Matrix result = Matrix::Identity(d, d);
  Matrix term = Matrix::Identity(d, d);
  // Remainder after the degree-j partial sum is bounded by
  // theta^(j+1) / (j+1)! * 1 / (1 - theta / (j+2)).
  double power_over_factorial = 1.0;
  for (int j = 1; j < 64; ++j) {
    term = (term * b) / static_cast<double>(j);
    result += term;
    power_over_factorial *= theta / j;
    const double next = power_over_factorial * theta / (j + 1);
    if (next / (1.0 - theta / (j + 2)) <= tol) break;
  }

  for (int i = 0; i < squarings; ++i) result = result * result;
  return {k.space(), std::move(result), Symmetry::General};
}

Operator similarity_transform(const Operator& h, const Generator& k, double tol) {
  if (!(h.space() == k.space())) {
    throw DimensionMismatch("similarity_transform: H and K live on different spaces");
  }
  const Operator u = matrix_exponential(k, tol);
  // exp(-K) = exp(K^T) = exp(K)^T for antisymmetric K.
  Matrix m = u.matrix() * h.matrix() * u.matrix().transpose();
  if (h.symmetry() == Symmetry::Symmetric) {
    return Operator(h.space(), std::move(m), Symmetry::General).with_symmetry(Symmetry::Symmetric);
  }
  return {h.space(), std::move(m), Symmetry::General};
}

}  // namespace dicke
