#pragma once

#include <cstdint>
#include <span>
#include <string_view>

namespace softwell::util {

inline constexpr std::uint64_t kFnvOffset = 1469598103934665603ull;
inline constexpr std::uint64_t kFnvPrime = 1099511628211ull;

inline std::uint64_t fnv1a(std::string_view data,
                           std::uint64_t h = kFnvOffset) {
  for (unsigned char c : data) {
    h ^= c;
    h *= kFnvPrime;
  }
  return h;
}

/// Linear-interpolated quantile (sorted copy internally), q in [0, 1].
double quantile(std::span<const double> values, double q);

inline double median(std::span<const double> values) {
  return quantile(values, 0.5);
}

double mean(std::span<const double> values);

}  // namespace softwell::util
