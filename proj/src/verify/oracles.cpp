#include "mge/oracles.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace mge::oracle {

std::vector<double> mge_gain_q2(double w1, double w2, double tau, double mu) {
    return {tau * w1, 2.0 * tau * w2 - mu * tau * w1};
}

std::vector<double> mge_gain_q3(double w1, double w2, double w3, double tau, double mu) {
    return {tau * w1, tau * w2, 2.0 * tau * w3 + tau * w2 - 2.0 * mu * tau * w1};
}

double mge_mre_last_row_q2(double e1, double e2, double tau, double mu) {
    return 2.0 * tau * e2 - tau * mu * e1;
}

double mge_mre_last_row_q3(double e1, double e2, double e3, double tau, double mu) {
    return 2.0 * tau * e3 + tau * e2 - 2.0 * tau * mu * e1;
}

std::vector<double> mge_error_rhs(std::span<const double> err, std::span<const double> w, double tau, double mu) {
    if (err.size() == 2) {
        const double s = w[0] * err[0] + w[1] * err[1];
        return {-tau * w[0] * s, -(2.0 * tau * w[1] - mu * tau * w[0]) * s};
    }
    if (err.size() == 3) {
        const double s = w[0] * err[0] + w[1] * err[1] + w[2] * err[2];
        return {-tau * w[0] * s, -tau * w[1] * s, -(2.0 * tau * w[2] + tau * w[1] - 2.0 * mu * tau * w[0]) * s};
    }
    throw std::invalid_argument("error-coordinate oracle is written out for q = 2 and q = 3 only");
}

double filter_closed_form(double wi, double wj, double t) { return (1.0 - std::exp(-t)) * wi * wj; }

double decay_exact(double t) { return std::exp(-t); }

long long ulp_distance(double a, double b) {
    auto ordered = [](double x) {
        const auto bits = std::bit_cast<std::int64_t>(x);
        return bits < 0 ? std::numeric_limits<std::int64_t>::min() - bits : bits;
    };
    const std::int64_t ia = ordered(a);
    const std::int64_t ib = ordered(b);
    return ia > ib ? ia - ib : ib - ia;
}

}  // namespace mge::oracle
