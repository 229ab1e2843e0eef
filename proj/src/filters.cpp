#include "mge/filters.hpp"

#include "mge/errors.hpp"

namespace mge {

FilterState filter_rhs(const FilterState& state, std::span<const double> omega, double g) {
    const std::size_t q = omega.size();
    if (state.omega.size() != q || state.g.size() != q)
        throw ConfigError("filter state dimension does not match the regressor");
    FilterState d{Matrix(q), Vector(q)};
    for (std::size_t i = 0; i < q; ++i) {
        for (std::size_t j = 0; j < q; ++j) d.omega(i, j) = -state.omega(i, j) + omega[i] * omega[j];
        d.g[i] = -state.g[i] + omega[i] * g;
    }
    return d;
}

}  // namespace mge
