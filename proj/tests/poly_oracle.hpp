#pragma once

// Shared helpers for the recognition round-trip oracle: random integer
// polynomials, a Durand-Kerner root finder, and exact divisibility over Q.

#include "sic/prec.hpp"
#include "sic/rng.hpp"

#include <optional>
#include <vector>

namespace sic_test {

using sic::Complex;
using sic::Int;
using sic::Rational;
using sic::Real;

inline Complex poly_eval(const std::vector<Int>& coeffs, const Complex& x) {
    Complex acc;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
        acc = acc * x + Complex(Real(it->str()));
    return acc;
}

// all roots by Durand-Kerner at the current working precision
inline std::vector<Complex> poly_roots(const std::vector<Int>& coeffs) {
    const int n = static_cast<int>(coeffs.size()) - 1;
    Complex lead(Real(coeffs.back().str()));
    std::vector<Complex> monic(n + 1);
    for (int i = 0; i <= n; ++i) monic[i] = Complex(Real(coeffs[i].str())) / lead;

    auto eval_monic = [&](const Complex& x) {
        Complex acc;
        for (int i = n; i >= 0; --i) acc = acc * x + monic[i];
        return acc;
    };

    std::vector<Complex> r(n);
    Complex base(Real("0.4"), Real("0.9"));
    r[0] = Complex(Real(1));
    for (int i = 0; i < n; ++i) r[i] = (i == 0) ? base : r[i - 1] * base;

    for (int it = 0; it < 500; ++it) {
        Real move(0);
        for (int i = 0; i < n; ++i) {
            Complex denom(Real(1));
            for (int j = 0; j < n; ++j)
                if (j != i) denom = denom * (r[i] - r[j]);
            Complex delta = eval_monic(r[i]) / denom;
            r[i] = r[i] - delta;
            move = std::max(move, abs(delta));
        }
        if (move < pow(Real(2), -Real(Real::default_precision() * 3))) break;
    }
    return r;
}

// the root of coeffs with the best residual, or nullopt if none converged
inline std::optional<Complex> well_converged_root(const std::vector<Int>& coeffs,
                                                  const Real& tol) {
    std::optional<Complex> best;
    Real best_res;
    for (const Complex& r : poly_roots(coeffs)) {
        Real res = abs(poly_eval(coeffs, r));
        if (res < tol && (!best || res < best_res)) {
            best = r;
            best_res = res;
        }
    }
    return best;
}

// exact test: does divisor divide poly in Q[x]?
inline bool divides_over_q(const std::vector<Int>& divisor, const std::vector<Int>& poly) {
    if (divisor.empty() || divisor.back() == 0) return false;
    std::vector<Rational> rem(poly.size());
    for (size_t i = 0; i < poly.size(); ++i) rem[i] = Rational(poly[i]);
    const int dn = static_cast<int>(divisor.size()) - 1;
    Rational lead(divisor.back());
    while (static_cast<int>(rem.size()) - 1 >= dn) {
        int k = static_cast<int>(rem.size()) - 1;
        Rational q = rem[k] / lead;
        for (int i = 0; i <= dn; ++i) rem[k - dn + i] -= q * Rational(divisor[i]);
        rem.pop_back();
        while (!rem.empty() && rem.back() == 0 && static_cast<int>(rem.size()) - 1 >= dn)
            rem.pop_back();
    }
    for (const Rational& c : rem)
        if (c != 0) return false;
    return true;
}

inline std::vector<Int> random_poly(sic::SplitMix64& rng, int max_degree, int coeff_bound) {
    int deg = 1 + static_cast<int>(rng.next() % max_degree);
    std::vector<Int> c(deg + 1);
    for (int i = 0; i <= deg; ++i)
        c[i] = static_cast<int64_t>(rng.next() % (2 * coeff_bound + 1)) - coeff_bound;
    while (c.back() == 0) c.back() = static_cast<int64_t>(rng.next() % coeff_bound) + 1;
    return c;
}

}  // namespace sic_test
