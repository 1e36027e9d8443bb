#include "dicke/variants.hpp"

#include "dicke/errors.hpp"

#include <algorithm>
#include <cctype>
#include <string>

namespace dicke {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

struct Terms {
  Operator photons;        // a^dagger a
  Operator sz;             // S_z
  Operator sz_photons;     // S_z a^dagger a
  Operator light_shift;    // 2 S_z a^dagger a + S+ S-
  Operator casimir_part;   // S^2 - S_z^2 + S_z
  Operator two_photon;     // S+^2 + S-^2
  Operator rotating;       // a S+ + a^dagger S-
};

Terms build_terms(const SpaceSpec& space) {
  const Operator n = photon_number_op(space);
  const SpinOps s = spin_ops(space);
  const Operator a = annihilation_op(space);
  const double spin = space.spin();

  const Operator sz_n = (s.z * n).with_symmetry(Symmetry::Symmetric);
  const Operator raise_lower = (s.plus * s.minus).with_symmetry(Symmetry::Symmetric);
  const Operator sz2 = (s.z * s.z).with_symmetry(Symmetry::Symmetric);
  const Operator casimir = spin * (spin + 1.0) * Operator::identity(space);
  const Operator plus2 = s.plus * s.plus;
  const Operator ap = a * s.plus;

  return {n,
          s.z,
          sz_n,
          2.0 * sz_n + raise_lower,
          casimir - sz2 + s.z,
          (plus2 + plus2.transpose()).with_symmetry(Symmetry::Symmetric),
          (ap + ap.transpose()).with_symmetry(Symmetry::Symmetric)};
}

}  // namespace

std::string_view to_string(VariantId id) noexcept {
  switch (id) {
    case VariantId::Froehlich:
      return "froehlich";
    case VariantId::Guess:
      return "guess";
    case VariantId::DiscreteSequence:
      return "discrete";
  }
  return "froehlich";
}

std::optional<VariantId> parse_variant(std::string_view name) {
  const std::string key = lower(name);
  if (key == "froehlich" || key == "froehlich17") return VariantId::Froehlich;
  if (key == "guess" || key == "guess18") return VariantId::Guess;
  if (key == "discrete" || key == "discrete19") return VariantId::DiscreteSequence;
  return std::nullopt;
}

double discrete_coefficient(const DickeParams& params) {
  const double w0 = params.omega0;
  const double w1 = params.omega1;
  if (w1 == 0.0) throw DomainError("discrete_coefficient: omega1 must be nonzero");
  const double g2 = params.g * params.g;
  return g2 / w1 + g2 * w0 / (w1 * w1) + g2 * w0 * w0 / (w1 * w1 * w1);
}

Operator effective_closed_form(const DickeParams& params, const SpaceSpec& space, VariantId variant,
                               VariantOptions options) {
  const double delta = params.delta();
  if (variant != VariantId::DiscreteSequence && delta == 0.0) {
    throw Resonance(-1, -1, "closed-form effective Hamiltonian requires nonzero detuning");
  }
  if (variant == VariantId::DiscreteSequence && params.omega1 == 0.0) {
    throw DomainError("discrete-sequence variant requires omega1 != 0");
  }

  const Terms t = build_terms(space);
  const Operator free = params.omega0 * t.photons + params.omega1 * t.sz;

  switch (variant) {
    case VariantId::Froehlich:
    case VariantId::Guess: {
      const double chi = params.g * params.g / delta;
      Operator h = free + (2.0 * chi) * t.sz_photons + chi * t.casimir_part;
      if (variant == VariantId::Guess) h = h + (0.5 * chi) * t.two_photon;
      return h.with_symmetry(Symmetry::Symmetric);
    }
    case VariantId::DiscreteSequence: {
      const double c = discrete_coefficient(params);
      Operator h = free + c * t.light_shift;
      if (options.include_residual) {
        const double w1 = params.omega1;
        h = h + (params.g * params.omega0 * params.omega0 / (w1 * w1)) * t.rotating;
      }
      return h.with_symmetry(Symmetry::Symmetric);
    }
  }
  throw DomainError("unknown variant");
}

}  // namespace dicke
