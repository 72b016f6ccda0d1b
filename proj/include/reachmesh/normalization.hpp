#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "reachmesh/types.hpp"

namespace reachmesh {

/// Per-coordinate whitening statistics: the mean and standard deviation of
/// the states seen by the policy of interest during training.
struct NormalizationStats {
  std::vector<double> mean;
  std::vector<double> std;

  std::size_t dim() const { return mean.size(); }

  void validate() const {
    if (mean.size() != std.size())
      throw std::invalid_argument("normalization stats: mean/std length mismatch");
    for (double m : mean)
      if (!std::isfinite(m)) throw std::invalid_argument("normalization stats: non-finite mean");
    for (double s : std)
      if (!(s > 0.0) || !std::isfinite(s))
        throw std::invalid_argument("normalization stats: std entries must be positive");
  }

  static NormalizationStats identity(std::size_t n) {
    return {std::vector<double>(n, 0.0), std::vector<double>(n, 1.0)};
  }
};

/// Welford accumulator, mergeable so parallel workers can combine partials.
struct RunningStats {
  std::size_t count = 0;
  std::vector<double> mean;
  std::vector<double> m2;

  explicit RunningStats(std::size_t dim = 0) : mean(dim, 0.0), m2(dim, 0.0) {}

  void observe(std::span<const double> x) {
    if (mean.empty()) {
      mean.assign(x.size(), 0.0);
      m2.assign(x.size(), 0.0);
    }
    if (x.size() != mean.size()) throw std::invalid_argument("running stats: dimension mismatch");
    ++count;
    for (std::size_t i = 0; i < x.size(); ++i) {
      double delta = x[i] - mean[i];
      mean[i] += delta / static_cast<double>(count);
      m2[i] += delta * (x[i] - mean[i]);
    }
  }

  void merge(const RunningStats& other) {
    if (other.count == 0) return;
    if (count == 0) {
      *this = other;
      return;
    }
    if (other.mean.size() != mean.size())
      throw std::invalid_argument("running stats: dimension mismatch in merge");
    std::size_t n = count + other.count;
    for (std::size_t i = 0; i < mean.size(); ++i) {
      double delta = other.mean[i] - mean[i];
      double na = static_cast<double>(count);
      double nb = static_cast<double>(other.count);
      m2[i] += other.m2[i] + delta * delta * na * nb / static_cast<double>(n);
      mean[i] = (na * mean[i] + nb * other.mean[i]) / static_cast<double>(n);
    }
    count = n;
  }

  /// Population std, floored. Fewer than two samples gives unit std so a
  /// fresh policy whitens with the identity.
  NormalizationStats snapshot(double floor = 1e-8) const {
    NormalizationStats out;
    out.mean = count > 0 ? mean : std::vector<double>(mean.size(), 0.0);
    out.std.resize(mean.size(), 1.0);
    if (count >= 2) {
      for (std::size_t i = 0; i < mean.size(); ++i)
        out.std[i] = std::max(std::sqrt(m2[i] / static_cast<double>(count)), floor);
    }
    return out;
  }

  /// Inverse of snapshot, used to resume training from a checkpoint.
  static RunningStats from_moments(std::size_t count, const std::vector<double>& mean,
                                   const std::vector<double>& std) {
    RunningStats rs(mean.size());
    rs.count = count;
    rs.mean = mean;
    for (std::size_t i = 0; i < std.size(); ++i)
      rs.m2[i] = std[i] * std[i] * static_cast<double>(count);
    return rs;
  }
};

}  // namespace reachmesh
