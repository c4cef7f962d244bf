#pragma once

namespace pdr {

/// Unique h >= 0 with L/2^(h+1) < r <= L/2^h. Throws OutOfRange unless
/// 0 < r <= L.
int radius_class(double r, double L);

/// Same relation for any positive r; h is negative when r > L.
int radius_class_unbounded(double r, double L);

/// Unique i >= 1 with sqrt(2)^(i-1) s <= len < sqrt(2)^i s. Edges shorter
/// than s throw BelowFloor when strict, and are put in class 1 otherwise.
int edge_class(double len, double s, bool strict = true);

/// ceil(log_sqrt2(L/s)), at least 1.
int max_edge_class(double L, double s);

}  // namespace pdr
