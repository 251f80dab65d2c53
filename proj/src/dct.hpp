#pragma once

#include <vector>

namespace softwell::detail {

/// DCT-II of a power-of-two length input with the convention
///   out[0] = sum x_n,  out[k] = 2 sum x_n cos(pi k (2n+1) / (2N)).
std::vector<double> dct2(const std::vector<double>& x);

}  // namespace softwell::detail
