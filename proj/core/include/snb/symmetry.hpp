#pragma once

#include <string>

namespace snb {

/// Dyson symmetry class, labelled by its index beta.
enum class SymmetryClass : int {
    orthogonal = 1,
    unitary = 2,
    symplectic = 4,
};

constexpr int beta_value(SymmetryClass c) noexcept { return static_cast<int>(c); }

/// Accepts 1, 2 or 4; anything else raises ArgumentError.
SymmetryClass symmetry_from_beta(int beta);

std::string to_string(SymmetryClass c);

} // namespace snb
