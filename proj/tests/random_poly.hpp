#pragma once

#include <random>
#include <vector>

#include "dqwall/expr/poly.hpp"

namespace dqwall::testing {

/// Small random polynomials with Gaussian-integer coefficients over the given symbols.
inline expr::Poly random_poly(std::mt19937_64& rng, const std::vector<expr::Symbol>& symbols, int max_terms = 4,
                              int max_degree = 2) {
    std::uniform_int_distribution<int> nterms(1, max_terms), deg(0, max_degree), coef(-3, 3);
    expr::Poly out;
    const int n = nterms(rng);
    for (int t = 0; t < n; ++t) {
        expr::Monomial m;
        for (auto s : symbols) m[s] = static_cast<std::uint16_t>(deg(rng));
        out += expr::Poly::term(m, expr::GaussianRational(mpq_class(coef(rng)), mpq_class(coef(rng))));
    }
    return out;
}

}  // namespace dqwall::testing
