#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sic/fiducial_search.hpp"
#include "sic/json_io.hpp"
#include "sic/rng.hpp"

using namespace sic;

TEST_CASE("frame potential gradient matches finite differences") {
    DimensionContext ctx = make_context(4, 256);
    PrecisionGuard guard(256);
    SplitMix64 rng(3);
    CVector v(4);
    for (auto& z : v) z = Complex(Real(rng.gaussian()), Real(rng.gaussian()));
    normalize(v);

    CVector g = frame_potential_gradient(ctx, v);
    Real h = pow(Real(2), -60);
    for (int j = 0; j < 4; ++j) {
        for (int part = 0; part < 2; ++part) {
            CVector vp = v, vm = v;
            Real& up = part == 0 ? vp[j].re : vp[j].im;
            Real& um = part == 0 ? vm[j].re : vm[j].im;
            up += h;
            um -= h;
            Real fd = (frame_potential(ctx, vp) - frame_potential(ctx, vm)) / (2 * h);
            // d/d(re) = 2 Re(g), d/d(im) = 2 Im(g) for the Wirtinger gradient
            Real an = part == 0 ? 2 * g[j].re : 2 * g[j].im;
            CHECK(abs(fd - an) < Real("1e-25"));
        }
    }
}

TEST_CASE("zauner eigenspace basis is orthonormal and invariant") {
    for (int d : {3, 4, 5, 6, 7}) {
        DimensionContext ctx = make_context(d, 128);
        PrecisionGuard guard(128);
        std::vector<CVector> basis = zauner_eigenspace_basis(ctx, zauner_matrix(ctx));
        // known multiplicity of the dominant Zauner eigenspace: ceil-ish (d+3)/3
        int expected = (d + 3) / 3;
        CHECK(static_cast<int>(basis.size()) == expected);
        Real tol = ctx.unitarity_tolerance();
        for (size_t i = 0; i < basis.size(); ++i)
            for (size_t j = 0; j < basis.size(); ++j) {
                Complex ip = inner(basis[i], basis[j]);
                Real expect = i == j ? 1 : 0;
                CHECK(abs(ip - Complex(expect)) < tol);
            }
        // invariance: U v stays in the span
        UnitaryOperator u = clifford_unitary(ctx, zauner_matrix(ctx));
        for (const CVector& v : basis) {
            CVector uv = mat_vec(u.entries, v);
            CVector proj(uv.size(), Complex());
            for (const CVector& b : basis) {
                Complex c = inner(b, uv);
                for (size_t k = 0; k < uv.size(); ++k) proj[k] += b[k] * c;
            }
            Real err = 0;
            for (size_t k = 0; k < uv.size(); ++k) err = std::max(err, abs(uv[k] - proj[k]));
            CHECK(err < tol);
        }
    }
}

TEST_CASE("search converges in small dimensions") {
    for (int d : {2, 3, 4}) {
        DimensionContext ctx = make_context(d, 256);
        SearchConfig cfg;
        Fiducial f = search(ctx, cfg);
        CHECK(f.converged);
        PrecisionGuard guard(256);
        CHECK(f.residual < Real("1e-12"));
        Real fp = frame_potential(ctx, f.vector);
        Real fp_min = Real(2 * d) / (d + 1);
        CHECK(abs(fp - fp_min) < Real("1e-12"));
    }
}

TEST_CASE("polish sharpens the residual") {
    DimensionContext ctx = make_context(4, 256);
    SearchConfig cfg;
    Fiducial f = search(ctx, cfg);
    REQUIRE(f.converged);
    Fiducial p = polish(ctx, f, 512);
    PrecisionGuard guard(512);
    CHECK(p.residual < Real("1e-40"));
    CHECK(p.precision_bits == 512);
}

TEST_CASE("search is deterministic for a fixed seed") {
    DimensionContext ctx = make_context(3, 256);
    SearchConfig cfg;
    cfg.rng_seed = 9;
    Fiducial a = search(ctx, cfg);
    Fiducial b = search(ctx, cfg);
    CHECK(dump_deterministic(fiducial_to_json(a)) == dump_deterministic(fiducial_to_json(b)));
}

TEST_CASE("polish rejects garbage input") {
    DimensionContext ctx = make_context(4, 256);
    PrecisionGuard guard(256);
    Fiducial junk;
    junk.dimension = 4;
    junk.precision_bits = 256;
    junk.vector = {Complex(Real(1)), Complex(Real("0.5")), Complex(Real("-0.3")),
                   Complex(Real("0.1"))};
    normalize(junk.vector);
    junk.residual = sic_residual(ctx, junk.vector);
    CHECK_THROWS_AS(polish(ctx, junk, 256), PolishFailureError);
}
