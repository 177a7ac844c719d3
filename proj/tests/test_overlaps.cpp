#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sic/overlaps.hpp"

using namespace sic;

namespace {

Fiducial converged_fiducial(int d, int bits) {
    DimensionContext ctx = make_context(d, bits);
    SearchConfig cfg;
    cfg.polish_precision_bits = bits;
    Fiducial f = search(ctx, cfg);
    REQUIRE(f.converged);
    return f;
}

}  // namespace

TEST_CASE("overlap magnitudes and phases") {
    for (int d : {4, 5}) {
        DimensionContext ctx = make_context(d, 256);
        Fiducial f = converged_fiducial(d, 256);
        PrecisionGuard guard(256);
        OverlapTable t = compute_overlaps(ctx, f);

        int expected = d % 2 == 0 ? ctx.d_prime * ctx.d_prime - 4 : d * d - 1;
        CHECK(static_cast<int>(t.entries.size()) == expected);

        Real inv = Real(1) / (d + 1);
        for (const auto& [p, c] : t.entries) {
            CHECK(abs(norm_sq(c) - inv) < Real("1e-10"));
            // phase = overlap * sqrt(d+1) has unit modulus
            CHECK(abs(norm_sq(t.phases.at(p)) - 1) < Real("1e-10"));
        }
    }
}

TEST_CASE("overlap table rejects unconverged fiducials") {
    DimensionContext ctx = make_context(4, 128);
    PrecisionGuard guard(128);
    Fiducial f;
    f.dimension = 4;
    f.precision_bits = 128;
    f.vector = {Complex(Real(1)), Complex(), Complex(), Complex()};
    f.residual = sic_residual(ctx, f.vector);
    CHECK_THROWS_AS(compute_overlaps(ctx, f), std::domain_error);
}

TEST_CASE("stability group structure") {
    for (int d : {4, 5}) {
        DimensionContext ctx = make_context(d, 256);
        Fiducial f = converged_fiducial(d, 256);
        PrecisionGuard guard(256);
        Real tol = Real(1000) * f.residual;
        if (tol < Real("1e-30")) tol = Real("1e-30");
        StabilityReport rep = stability_group(ctx, f, tol);

        CHECK(rep.canonical_order3_present);
        CHECK(rep.centred);
        CHECK(is_closed_group(rep.symplectic_stabilizers, ctx));
        // structural statements live on the mod-d image (even d has a
        // congruence kernel in the mod-d' sweep)
        std::vector<SymplecticMatrix> image = reduce_mod_d(rep.symplectic_stabilizers, d);
        CHECK(is_closed_group(image, d));
        CHECK(is_cyclic_group(image, d));
        CHECK(image.size() % 3 == 0);
        CHECK(is_closed_group(reduce_mod_d(rep.overlap_stabilizers, d), d));

        OverlapTable t = compute_overlaps(ctx, f);
        OverlapPartition part = overlap_orbit_partition(ctx, t, rep, tol);
        CHECK(part.violations == 0);
        CHECK(!part.parts.empty());
    }
}

TEST_CASE("centering finds a centred translate") {
    DimensionContext ctx = make_context(4, 256);
    Fiducial f = converged_fiducial(4, 256);
    PrecisionGuard guard(256);
    CentreResult c = centre_fiducial(ctx, f);
    CHECK(c.centred);
    // the centred translate is still a fiducial of the same quality
    CHECK(sic_residual(ctx, c.fiducial.vector) < Real("1e-12"));
}
