#pragma once

#include <boost/math/distributions/binomial.hpp>

#include <cstddef>

namespace ptlab {

struct binomial_ci {
    double low = 0.0;
    double high = 1.0;
};

// Exact (Clopper-Pearson) two-sided confidence interval for a binomial
// proportion. Exactness is what lets acceptance-probability assertions run
// in CI without flaking.
inline binomial_ci clopper_pearson(std::size_t successes, std::size_t trials, double confidence = 0.99) {
    if (trials == 0) return {0.0, 1.0};
    using dist = boost::math::binomial_distribution<double>;
    const double tail = (1.0 - confidence) / 2.0;
    return {dist::find_lower_bound_on_p(static_cast<double>(trials), static_cast<double>(successes), tail),
            dist::find_upper_bound_on_p(static_cast<double>(trials), static_cast<double>(successes), tail)};
}

}  // namespace ptlab
