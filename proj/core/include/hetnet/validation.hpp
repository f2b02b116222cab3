#pragma once

// Goodness-of-fit helpers used to compare simulated and analytic quantities.

#include <cstdint>
#include <functional>
#include <span>

namespace hetnet {

/// sup |F_n - F| for samples sorted ascending.
double ks_statistic(std::span<const double> sorted_samples,
                    const std::function<double(double)>& cdf);

/// Asymptotic P[D_n >= d] with Stephens' small-sample correction.
double ks_pvalue(double d, std::size_t n);

/// Pearson statistic sum (O - n p)^2 / (n p) over categories with p > 0.
double chi_square_statistic(std::span<const std::uint64_t> observed,
                            std::span<const double> probabilities);

/// Upper tail of the chi-square distribution with `dof` degrees of freedom.
double chi_square_pvalue(double statistic, double dof);

}  // namespace hetnet
