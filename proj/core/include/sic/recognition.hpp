#pragma once

#include "sic/fiducial_search.hpp"
#include "sic/overlaps.hpp"
#include "sic/prec.hpp"

#include <map>
#include <optional>
#include <vector>

namespace sic {

struct MinimalPolynomial {
    std::vector<Int> coefficients;  // ascending degree, leading coefficient > 0
    int degree = -1;
    Real residual;  // |P(x)| / ||coefficients||_2 at the input value
    bool found = false;
    bool certified_monic = false;
    bool certified_unit = false;
};

struct RecognitionConfig {
    int max_degree = 24;
    int precision_bits = 512;
    int lattice_scale_exponent = 0;  // 0: derived from precision
    double certify_threshold = 0;    // 0: 10^{-0.15 * precision_bits * log10(2)}
};

// Lowest-degree integer polynomial (degree <= max_degree) with x as an
// approximate root, recovered by lattice reduction. Certification flags
// require the residual threshold; when a higher-precision recomputation of x
// is supplied, the polynomial must also pass at that precision.
MinimalPolynomial recognize_algebraic(const Complex& x, const RecognitionConfig& cfg,
                                      const Complex* recheck_value = nullptr);

bool certify_algebraic_integer(const MinimalPolynomial& p);
bool certify_unit(const MinimalPolynomial& p);

struct PhaseRecognitionEntry {
    DisplacementIndex p;
    MinimalPolynomial poly;
};

struct PhaseRecognitionReport {
    std::vector<PhaseRecognitionEntry> per_phase;
    int total = 0;
    int recognized = 0;
    int certified_integers = 0;
    int certified_units = 0;
    std::map<std::vector<Int>, int> distinct_polynomials;
};

// Recognizes every overlap phase of the fiducial. The fiducial is re-polished
// internally at cfg.precision_bits and at twice that for the certification
// recheck.
PhaseRecognitionReport recognize_overlap_phases(const DimensionContext& ctx,
                                                const Fiducial& f,
                                                const RecognitionConfig& cfg);

// Rank estimate (never certified) of the multiplicative group generated by
// the phases together with -1, modulo torsion.
int phase_relation_rank(const OverlapTable& t, const RecognitionConfig& cfg,
                        bool* confident = nullptr);

// P(x) with integer coefficients, ascending order
Complex evaluate_poly(const std::vector<Int>& coeffs, const Complex& x);

}  // namespace sic
