#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sic/recognition.hpp"

#include "poly_oracle.hpp"

using namespace sic;

namespace {

std::vector<Int> coeffs_of(std::vector<int64_t> v) {
    return std::vector<Int>(v.begin(), v.end());
}

MinimalPolynomial recognize_at(const Complex& x, int bits = 512, int max_degree = 16) {
    RecognitionConfig cfg;
    cfg.precision_bits = bits;
    cfg.max_degree = max_degree;
    return recognize_algebraic(x, cfg);
}

}  // namespace

TEST_CASE("worked values") {
    PrecisionGuard guard(512 + 64);

    MinimalPolynomial sqrt2 = recognize_at(Complex(sqrt(Real(2))));
    CHECK(sqrt2.found);
    CHECK(sqrt2.coefficients == coeffs_of({-2, 0, 1}));
    CHECK(certify_algebraic_integer(sqrt2));
    CHECK(!certify_unit(sqrt2));

    Real two_pi = 2 * const_pi();
    MinimalPolynomial zeta7 = recognize_at(unit_phase(two_pi / 7));
    CHECK(zeta7.coefficients == coeffs_of({1, 1, 1, 1, 1, 1, 1}));
    CHECK(certify_unit(zeta7));

    Complex x = Complex(Real(0), Real(1)) + Complex(pow(Real(2), Real(1) / 4));
    MinimalPolynomial quartic = recognize_at(x);
    CHECK(quartic.coefficients == coeffs_of({1, 0, 28, 0, 2, 0, 4, 0, 1}));
    CHECK(certify_unit(quartic));

    MinimalPolynomial half = recognize_at(Complex(Real(1) / Real(2)));
    CHECK(half.coefficients == coeffs_of({-1, 2}));
    CHECK(!certify_algebraic_integer(half));

    MinimalPolynomial unit = recognize_at(Complex(sqrt(Real(2)) + 1));
    CHECK(unit.coefficients == coeffs_of({-1, -2, 1}));
    CHECK(certify_unit(unit));
}

TEST_CASE("round trip against random polynomials") {
    sic::SplitMix64 rng(2024);
    PrecisionGuard guard(700);
    int done = 0;
    while (done < 100) {
        std::vector<Int> poly = sic_test::random_poly(rng, 8, 20);
        auto root = sic_test::well_converged_root(poly, Real("1e-120"));
        if (!root) continue;  // skip ill-conditioned draws (clustered roots)
        MinimalPolynomial rec = recognize_at(*root, 512, 8);
        REQUIRE(rec.found);
        CHECK(sic_test::divides_over_q(rec.coefficients, poly));
        CHECK(abs(evaluate_poly(rec.coefficients, *root)) < Real("1e-60"));
        ++done;
    }
}

TEST_CASE("does not hallucinate relations for random reals") {
    PrecisionGuard guard(512 + 64);
    // pi is transcendental: nothing of degree <= 8 may be certified
    MinimalPolynomial p = recognize_at(Complex(const_pi()), 512, 8);
    CHECK(!p.found);
}

TEST_CASE("certification logic") {
    MinimalPolynomial p;
    CHECK(!certify_algebraic_integer(p));
    p.found = true;
    p.coefficients = coeffs_of({-1, 0, 1});
    CHECK(certify_algebraic_integer(p));
    CHECK(certify_unit(p));
    p.coefficients = coeffs_of({2, 0, 1});
    CHECK(certify_algebraic_integer(p));
    CHECK(!certify_unit(p));
    p.coefficients = coeffs_of({1, 0, 3});
    CHECK(!certify_algebraic_integer(p));
}

TEST_CASE("config validation") {
    RecognitionConfig cfg;
    cfg.max_degree = 64;
    cfg.precision_bits = 256;
    CHECK_THROWS_AS(recognize_algebraic(Complex(Real(1)), cfg), std::domain_error);
}
