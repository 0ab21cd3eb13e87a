#pragma once

#include <cmath>
#include <stdexcept>

#include "qmeta/rng.hpp"

namespace qmeta {

/// Emulates quantum expectation estimation: a sample from
/// Normal(value, variance). variance = 0 returns the value exactly.
inline double noisy_readout(double value, double variance, Rng& rng) {
    if (variance < 0.0) throw std::invalid_argument("negative readout variance");
    if (variance == 0.0) return value;
    return rng.normal(value, std::sqrt(variance));
}

/// Upper bound on the repetitions needed to estimate an expectation of a
/// Hamiltonian with coefficient norm `norm` to accuracy epsilon:
/// ceil(norm^2 / epsilon^2).
inline long long repetition_estimate(double norm, double epsilon) {
    if (epsilon <= 0.0) throw std::invalid_argument("epsilon must be positive");
    return static_cast<long long>(std::ceil((norm * norm) / (epsilon * epsilon)));
}

} // namespace qmeta
