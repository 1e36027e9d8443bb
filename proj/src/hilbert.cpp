#include "dicke/hilbert.hpp"

#include "dicke/errors.hpp"

#include <cmath>
#include <string>

namespace dicke {

namespace {

void require_same_space(const Operator& a, const Operator& b, const char* what) {
  if (!(a.space() == b.space()) || a.dim() != b.dim()) {
    throw DimensionMismatch(std::string(what) + ": operands live on different spaces");
  }
}

Symmetry sum_class(Symmetry a, Symmetry b) {
  return a == b ? a : Symmetry::General;
}

}  // namespace

SpaceSpec::SpaceSpec(int two_s, int n_max, Index max_dim) : two_s_(two_s), n_max_(n_max) {
  if (two_s < 0 || n_max < 0) {
    throw DomainError("two_s and n_max must be non-negative");
  }
  if (dim() > max_dim) {
    throw Overflow("space dimension " + std::to_string(dim()) + " exceeds the maximum " +
                   std::to_string(max_dim));
  }
}

SpaceSpec make_space(int two_s, int n_max, Index max_dim) {
  return SpaceSpec(two_s, n_max, max_dim);
}

const char* to_string(Symmetry s) noexcept {
  switch (s) {
    case Symmetry::Symmetric:
      return "Symmetric";
    case Symmetry::Antisymmetric:
      return "Antisymmetric";
    case Symmetry::General:
      return "General";
  }
  return "General";
}

Operator::Operator(SpaceSpec space, Matrix data, Symmetry symmetry)
    : space_(space), data_(std::move(data)), symmetry_(symmetry) {
  if (data_.rows() != space_.dim() || data_.cols() != space_.dim()) {
    throw DimensionMismatch("operator matrix is " + std::to_string(data_.rows()) + "x" +
                            std::to_string(data_.cols()) + ", space has dim " +
                            std::to_string(space_.dim()));
  }
  if (symmetry_ == Symmetry::General) return;
  const double tol = 1e-13 * max_abs();
  const double defect = symmetry_ == Symmetry::Symmetric
                            ? (data_ - data_.transpose()).cwiseAbs().maxCoeff()
                            : (data_ + data_.transpose()).cwiseAbs().maxCoeff();
  if (defect > tol) {
    throw NotSymmetric(std::string("matrix is not ") + to_string(symmetry_) +
                       " (defect " + std::to_string(defect) + ")");
  }
  if (symmetry_ == Symmetry::Antisymmetric && (data_.diagonal().array() != 0.0).any()) {
    throw NotSymmetric("antisymmetric matrix has a nonzero diagonal");
  }
}

Operator Operator::zero(const SpaceSpec& space) {
  return {space, Matrix::Zero(space.dim(), space.dim()), Symmetry::Symmetric};
}

Operator Operator::identity(const SpaceSpec& space) {
  return {space, Matrix::Identity(space.dim(), space.dim()), Symmetry::Symmetric};
}

Operator Operator::transpose() const {
  return {space_, data_.transpose(), symmetry_};
}

double Operator::max_abs() const {
  return data_.size() == 0 ? 0.0 : data_.cwiseAbs().maxCoeff();
}

Operator Operator::with_symmetry(Symmetry symmetry, double rel_tol) const {
  if (symmetry == Symmetry::General) return {space_, data_, Symmetry::General};
  const double sign = symmetry == Symmetry::Symmetric ? 1.0 : -1.0;
  const double defect = (data_ - sign * data_.transpose()).cwiseAbs().maxCoeff();
  if (defect > rel_tol * max_abs()) {
    throw NotSymmetric(std::string("cannot declare matrix ") + to_string(symmetry) +
                       " (defect " + std::to_string(defect) + ")");
  }
  Matrix projected = 0.5 * (data_ + sign * data_.transpose());
  if (symmetry == Symmetry::Antisymmetric) projected.diagonal().setZero();
  return {space_, std::move(projected), symmetry};
}

Operator operator+(const Operator& a, const Operator& b) {
  require_same_space(a, b, "operator+");
  return {a.space(), a.matrix() + b.matrix(), sum_class(a.symmetry(), b.symmetry())};
}

Operator operator-(const Operator& a, const Operator& b) {
  require_same_space(a, b, "operator-");
  return {a.space(), a.matrix() - b.matrix(), sum_class(a.symmetry(), b.symmetry())};
}

Operator operator*(double s, const Operator& a) {
  return {a.space(), s * a.matrix(), a.symmetry()};
}

Operator operator*(const Operator& a, const Operator& b) {
  require_same_space(a, b, "operator*");
  Matrix product = a.matrix() * b.matrix();
  return {a.space(), std::move(product), Symmetry::General};
}

double max_abs_diff(const Operator& a, const Operator& b) {
  require_same_space(a, b, "max_abs_diff");
  return a.dim() == 0 ? 0.0 : (a.matrix() - b.matrix()).cwiseAbs().maxCoeff();
}

Operator annihilation_op(const SpaceSpec& space) {
  Matrix m = Matrix::Zero(space.dim(), space.dim());
  for (int n = 1; n <= space.n_max(); ++n) {
    const double amp = std::sqrt(static_cast<double>(n));
    for (int k = 0; k <= space.two_s(); ++k) {
      m(space.index(n - 1, k), space.index(n, k)) = amp;
    }
  }
  return {space, std::move(m), Symmetry::General};
}

Operator creation_op(const SpaceSpec& space) {
  return annihilation_op(space).transpose();
}

Operator photon_number_op(const SpaceSpec& space) {
  Matrix m = Matrix::Zero(space.dim(), space.dim());
  for (Index i = 0; i < space.dim(); ++i) m(i, i) = space.photons(i);
  return {space, std::move(m), Symmetry::Symmetric};
}

SpinOps spin_ops(const SpaceSpec& space) {
  const Index d = space.dim();
  const double s = space.spin();
  Matrix plus = Matrix::Zero(d, d);
  Matrix z = Matrix::Zero(d, d);
  for (int n = 0; n <= space.n_max(); ++n) {
    for (int k = 0; k <= space.two_s(); ++k) {
      const double m = k - s;
      z(space.index(n, k), space.index(n, k)) = m;
      if (k < space.two_s()) {
        plus(space.index(n, k + 1), space.index(n, k)) = std::sqrt(s * (s + 1.0) - m * (m + 1.0));
      }
    }
  }
  Matrix minus = plus.transpose();
  return {Operator(space, std::move(plus), Symmetry::General),
          Operator(space, std::move(minus), Symmetry::General),
          Operator(space, std::move(z), Symmetry::Symmetric)};
}

Operator excitation_number_op(const SpaceSpec& space) {
  Matrix m = Matrix::Zero(space.dim(), space.dim());
  for (Index i = 0; i < space.dim(); ++i) m(i, i) = space.excitation(i);
  return {space, std::move(m), Symmetry::Symmetric};
}

Operator commutator(const Operator& a, const Operator& b) {
  require_same_space(a, b, "commutator");
  const Symmetry sa = a.symmetry();
  const Symmetry sb = b.symmetry();
  Matrix ab = a.matrix() * b.matrix();
  if (sa == Symmetry::General || sb == Symmetry::General) {
    Matrix ba = b.matrix() * a.matrix();
    return {a.space(), ab - ba, Symmetry::General};
  }
  // For A, B each symmetric or antisymmetric, BA = +-(AB)^T, so the
  // commutator is built from one product and its transpose. This keeps the
  // declared class exact.
  if (sa == sb) {
    Matrix c = ab - ab.transpose();
    c.diagonal().setZero();
    return {a.space(), std::move(c), Symmetry::Antisymmetric};
  }
  Matrix c = ab + ab.transpose();
  return {a.space(), std::move(c), Symmetry::Symmetric};
}

std::vector<Index> indices_up_to_excitation(const SpaceSpec& space, int q_max) {
  std::vector<Index> out;
  for (Index i = 0; i < space.dim(); ++i) {
    if (space.excitation(i) <= q_max) out.push_back(i);
  }
  return out;
}

Matrix restrict(const Operator& op, const std::vector<Index>& indices) {
  const auto n = static_cast<Index>(indices.size());
  Matrix out(n, n);
  for (Index r = 0; r < n; ++r) {
    for (Index c = 0; c < n; ++c) out(r, c) = op(indices[r], indices[c]);
  }
  return out;
}

double max_abs_diff_up_to_excitation(const Operator& a, const Operator& b, int q_max) {
  require_same_space(a, b, "max_abs_diff_up_to_excitation");
  const auto idx = indices_up_to_excitation(a.space(), q_max);
  if (idx.empty()) return 0.0;
  return (restrict(a, idx) - restrict(b, idx)).cwiseAbs().maxCoeff();
}

}  // namespace dicke
