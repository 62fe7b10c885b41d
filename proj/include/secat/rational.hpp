#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace secat {

// Exact rational scalar. All coefficient arithmetic in the toolkit goes
// through this type; there is no floating point anywhere.
using Rat = mpq_class;

// Dense coordinate vector over a fixed per-degree basis.
using Vec = std::vector<Rat>;

inline bool is_zero(const Rat& q) { return sgn(q) == 0; }

inline bool vec_is_zero(const Vec& v) {
    for (const Rat& q : v)
        if (sgn(q) != 0) return false;
    return true;
}

inline Vec zero_vec(int n) { return Vec(static_cast<size_t>(n)); }

// mpq_class(num, den) does not canonicalize; always build fractions here
inline Rat frac(long num, long den) {
    Rat q(num, den);
    q.canonicalize();
    return q;
}

// "3", "-1/2"
inline std::string rat_str(const Rat& q) { return q.get_str(); }

} // namespace secat
