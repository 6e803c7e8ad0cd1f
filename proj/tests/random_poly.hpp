#pragma once

// Small random Laurent polynomials for property tests.

#include <random>

#include "grothsym/polyring.hpp"

namespace grothsym::testing {

inline LaurentPoly random_poly(std::mt19937 &rng, std::span<const VarId> vars, int max_terms = 4,
                               int max_exp = 2, int max_coeff = 5, bool laurent = true) {
    std::uniform_int_distribution<int> nterms(0, max_terms);
    std::uniform_int_distribution<int> expo(laurent ? -max_exp : 0, max_exp);
    std::uniform_int_distribution<int> coeff(-max_coeff, max_coeff);
    std::vector<Term> terms;
    int n = nterms(rng);
    for (int t = 0; t < n; ++t) {
        std::vector<Monomial::Factor> fs;
        for (auto &v : vars)
            fs.emplace_back(v, expo(rng));
        terms.push_back({Monomial(std::move(fs)), Integer(coeff(rng))});
    }
    return LaurentPoly::from_terms(std::move(terms));
}

} // namespace grothsym::testing
