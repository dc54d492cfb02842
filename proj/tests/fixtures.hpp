#pragma once

#include "cpos/polygon.hpp"

#include <string>
#include <vector>

namespace cpos::testing {

inline Rational R(const char* text) { return Rational::parse(text); }
inline Point pt(const char* x, const char* y) { return {R(x), R(y)}; }
inline Point pt(int x, int y) { return {Rational(x), Rational(y)}; }

/// Non-symmetric equal-area hexagon with alpha = 2.
inline CposPolygon hex_ea2()
{
    return validate({pt(0, 0), pt(1, 0), pt(1, 2), pt(0, 3), pt(-2, 3), pt(-2, 2)});
}

/// Centrally symmetric hexagon about the origin.
inline CposPolygon hex_sym()
{
    return validate({pt(2, 0), pt(1, 2), pt(-1, 2), pt(-2, 0), pt(-1, -2), pt(1, -2)});
}

/// Deterministic ensemble: `count` polygons with n cycling through [n_lo, n_hi].
inline std::vector<CposPolygon> ensemble(int count, int n_lo, int n_hi, std::uint64_t seed0 = 1000)
{
    std::vector<CposPolygon> out;
    for (int k = 0; k < count; ++k)
        out.push_back(random_cpos(n_lo + k % (n_hi - n_lo + 1), seed0 + static_cast<std::uint64_t>(k)));
    return out;
}

} // namespace cpos::testing
