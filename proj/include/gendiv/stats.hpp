#pragma once

#include <span>
#include <vector>

namespace gendiv {

double mean(std::span<const double> xs);

/// Sample standard deviation (n - 1 denominator); 0 for fewer than two values.
double stddev(std::span<const double> xs);

/// 1-based ranks with ties sharing their average rank.
std::vector<double> average_ranks(std::span<const double> xs);

double pearson(std::span<const double> xs, std::span<const double> ys);

/// Pearson correlation of average ranks. Returns 0 when either side is constant.
double spearman(std::span<const double> xs, std::span<const double> ys);

}  // namespace gendiv
