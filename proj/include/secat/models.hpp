#pragma once

#include "secat/errors.hpp"
#include "secat/gca.hpp"

namespace secat {

// Sullivan model of S^k: one odd generator for odd k; (x_k, y_{2k-1}),
// dy = x^2 for even k.
inline CdgaRef sphere_model(int k) {
    if (k < 1) throw ValidationError("sphere: dimension must be >= 1");
    const std::string name = "sphere(" + std::to_string(k) + ")";
    if (k % 2 != 0) return Cdga::make(name, {{"x", k}});
    CdgaRef shell = Cdga::make(name, {{"x", k}, {"y", 2 * k - 1}});
    return shell->with_differential({{"y", shell->pow(shell->gen_elem("x"), 2)}});
}

// H(S^k) with zero differential.
inline CdgaRef cohomology_sphere(int k) {
    if (k < 1) throw ValidationError("cohomology-sphere: dimension must be >= 1");
    const std::string name = "cohomology-sphere(" + std::to_string(k) + ")";
    if (k % 2 != 0) return Cdga::make(name, {{"x", k}});
    return Cdga::make(name, {{"x", k}}, {{{0, 2}}});
}

// H(CP^n) = Q[x_2]/x^{n+1}.
inline CdgaRef cpn_model(int n) {
    if (n < 1) throw ValidationError("cpn: n must be >= 1");
    return Cdga::make("cpn(" + std::to_string(n) + ")", {{"x", 2}}, {{{0, n + 1}}});
}

} // namespace secat
