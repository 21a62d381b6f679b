#pragma once

#include <gmpxx.h>

#include <string>

namespace ricci {

// All curvature quantities are rational; mpq_class keeps every comparison exact.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// Accepts "p/q", integer, and plain decimal literals ("0.3" -> 3/10).
Rat rat_from_string(const std::string& text);

// Canonical form: "p" when the denominator is 1, else "p/q".
std::string rat_to_string(const Rat& r);

// Shortest decimal that round-trips through double.
std::string rat_to_decimal_string(const Rat& r);
std::string double_to_string(double d);

double rat_to_double(const Rat& r);

// Least integer >= r.
long rat_ceil_long(const Rat& r);

inline Rat positive_part(const Rat& r) { return r > 0 ? r : Rat(0); }

inline const Rat& rat_min(const Rat& a, const Rat& b) { return a < b ? a : b; }
inline const Rat& rat_max(const Rat& a, const Rat& b) { return a > b ? a : b; }

}  // namespace ricci
