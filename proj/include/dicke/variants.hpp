#pragma once

#include "dicke/hilbert.hpp"

#include <array>
#include <optional>
#include <string_view>

namespace dicke {

/// Closed-form effective Hamiltonians for the dispersive Dicke model.
///
///  - Froehlich: H0 + 2(g^2/Delta) a^dagger a S_z + (g^2/Delta)(S^2 - S_z^2 + S_z),
///    the one-step elimination result.
///  - Guess: Froehlich plus (g^2 / 2 Delta)(S+^2 + S-^2). The extra term
///    changes the excitation number by two and has to be dropped.
///  - DiscreteSequence: H0 + c {2 S_z a^dagger a + S+ S-} + (g omega0^2 / omega1^2)(a S+ + a^dagger S-)
///    with c = discrete_coefficient(params), the result of eliminating with a
///    sequence of discrete transformations. The trailing rotating term is a
///    residual that needs one more transformation.
enum class VariantId { Froehlich, Guess, DiscreteSequence };

inline constexpr std::array<VariantId, 3> kAllVariants = {
    VariantId::Froehlich, VariantId::Guess, VariantId::DiscreteSequence};

std::string_view to_string(VariantId id) noexcept;
std::optional<VariantId> parse_variant(std::string_view name);

struct VariantOptions {
  /// Keep the residual rotating term of DiscreteSequence.
  bool include_residual = true;
};

/// Throws Resonance when Delta = 0 (Froehlich, Guess) and DomainError when
/// omega1 = 0 (DiscreteSequence). S^2 is the Casimir S(S+1) times identity.
Operator effective_closed_form(const DickeParams& params, const SpaceSpec& space, VariantId variant,
                               VariantOptions options = {});

/// c = g^2/omega1 + g^2 omega0/omega1^2 + g^2 omega0^2/omega1^3, the first three
/// terms of the geometric series for g^2/Delta.
double discrete_coefficient(const DickeParams& params);

}  // namespace dicke
