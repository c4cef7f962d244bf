#include "pdr/classes.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pdr/error.hpp"

namespace pdr {

int radius_class_unbounded(double r, double L) {
  if (!(r > 0.0) || !(L > 0.0)) throw Error(ErrorCode::OutOfRange, "radius and L must be positive");
  int h = static_cast<int>(std::floor(std::log2(L / r)));
  while (r > std::ldexp(L, -h)) --h;
  while (r <= std::ldexp(L, -(h + 1))) ++h;
  return h;
}

int radius_class(double r, double L) {
  if (!(r > 0.0) || r > L) {
    throw Error(ErrorCode::OutOfRange, "radius " + std::to_string(r) + " outside (0, " + std::to_string(L) + "]");
  }
  return radius_class_unbounded(r, L);
}

int edge_class(double len, double s, bool strict) {
  if (!(s > 0.0)) throw Error(ErrorCode::OutOfRange, "s must be positive");
  if (len < s) {
    if (strict) throw Error(ErrorCode::BelowFloor, "edge length " + std::to_string(len) + " below s");
    return 1;
  }
  // len^2 >= 2^(i-1) s^2, compared in extended precision.
  const long double l2 = static_cast<long double>(len) * len;
  const long double s2 = static_cast<long double>(s) * s;
  int i = 1 + static_cast<int>(std::floor(std::log2(static_cast<double>(l2 / s2))));
  i = std::max(i, 1);
  while (i > 1 && l2 < std::ldexp(s2, i - 1)) --i;
  while (l2 >= std::ldexp(s2, i)) ++i;
  return i;
}

int max_edge_class(double L, double s) {
  return std::max(1, static_cast<int>(std::ceil(2.0 * std::log2(L / s) - 1e-12)));
}

}  // namespace pdr
