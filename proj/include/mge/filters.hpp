#pragma once

#include <span>

#include "mge/core_types.hpp"

namespace mge {

/// State-space form of the unit-pole filter 1/(s+1) applied elementwise:
/// dOmega/dt = -Omega + omega omega^T, dG/dt = -G + omega g.
FilterState filter_rhs(const FilterState& state, std::span<const double> omega, double g);

}  // namespace mge
