#include "sic/recognition.hpp"

#include "sic/lattice.hpp"

#include <algorithm>
#include <cmath>

namespace sic {

namespace {

Int round_real(const Real& x) {
    std::string s = round(x).str(0, std::ios_base::fixed);
    auto dot = s.find('.');
    if (dot != std::string::npos) s = s.substr(0, dot);
    if (s.empty() || s == "-") s = "0";
    return Int(s);
}

Real int_to_real(const Int& x) { return Real(x.str()); }

// The inputs are only trusted to ~10^{-0.2 * bits} (the polish target), so
// the lattice scale uses a third of that budget: approximation artifacts then
// sit orders of magnitude above genuine relations and the residual floor
// below can separate them.
int effective_scale(const RecognitionConfig& cfg) {
    if (cfg.lattice_scale_exponent > 0) return cfg.lattice_scale_exponent;
    return std::max(12, static_cast<int>(cfg.precision_bits * 0.2 / 3.0));
}

Real certify_threshold(const RecognitionConfig& cfg) {
    if (cfg.certify_threshold > 0) return Real(cfg.certify_threshold);
    return pow(Real(10), Real(-0.15 * 0.30103) * cfg.precision_bits);
}

// Best scaled residual a height-H non-relation of this degree can reach is
// ~10^{-2s(k+1)/(k+3)}; anything certified must sit well below that floor.
Real artifact_floor(int scale_exp, int degree) {
    double expo = 2.0 * scale_exp * (degree + 1) / (degree + 3) + 8.0;
    return pow(Real(10), Real(-expo));
}

struct Candidate {
    std::vector<Int> coeffs;
    int degree;
    Real residual;
};

void normalize_coeffs(std::vector<Int>& c) {
    while (!c.empty() && c.back() == 0) c.pop_back();
    if (c.empty()) return;
    Int content = 0;
    for (const Int& x : c) content = gcd(content, x);
    if (content > 1)
        for (Int& x : c) x /= content;
    if (c.back() < 0)
        for (Int& x : c) x = -x;
}

Real scaled_residual(const std::vector<Int>& coeffs, const Complex& x) {
    Real nrm = 0;
    for (const Int& c : coeffs) {
        Real cr = int_to_real(c);
        nrm += cr * cr;
    }
    return abs(evaluate_poly(coeffs, x)) / sqrt(nrm);
}

// one lattice-reduction attempt at a fixed degree bound; recheck_value, when
// present, is the real certificate and must confirm each candidate at higher
// precision
std::optional<Candidate> attempt_degree(const Complex& x, int degree, int scale_exp,
                                        const Real& threshold,
                                        const Complex* recheck_value) {
    const int rows = degree + 1;
    Real scale = pow(Real(10), scale_exp);

    std::vector<std::vector<Int>> basis(rows, std::vector<Int>(rows + 2, Int(0)));
    Complex xp(Real(1));
    for (int i = 0; i < rows; ++i) {
        basis[i][i] = 1;
        basis[i][rows] = round_real(xp.re * scale);
        basis[i][rows + 1] = round_real(xp.im * scale);
        xp = xp * x;
    }
    lll_reduce(basis);

    Real hi_threshold = pow(Real(10), Real(-2.2) * scale_exp);
    std::optional<Candidate> best;
    for (const auto& row : basis) {
        std::vector<Int> coeffs(row.begin(), row.begin() + rows);
        normalize_coeffs(coeffs);
        if (coeffs.empty()) continue;
        int deg = static_cast<int>(coeffs.size()) - 1;
        Real res = scaled_residual(coeffs, x);
        if (res >= threshold) continue;
        if (recheck_value != nullptr) {
            if (scaled_residual(coeffs, *recheck_value) >= hi_threshold) continue;
        } else if (res >= artifact_floor(scale_exp, deg)) {
            continue;
        }
        if (!best || deg < best->degree ||
            (deg == best->degree && res < best->residual)) {
            best = Candidate{std::move(coeffs), deg, res};
        }
    }
    return best;
}

}  // namespace

Complex evaluate_poly(const std::vector<Int>& coeffs, const Complex& x) {
    Complex acc;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
        acc = acc * x + Complex(int_to_real(*it));
    return acc;
}

MinimalPolynomial recognize_algebraic(const Complex& x, const RecognitionConfig& cfg,
                                      const Complex* recheck_value) {
    if (cfg.precision_bits < 16 * cfg.max_degree)
        throw std::domain_error(
            "recognition config: precision_bits must be >= 16 * max_degree");
    PrecisionGuard guard(cfg.precision_bits + 64);
    const int scale_exp = effective_scale(cfg);
    const Real threshold = certify_threshold(cfg);

    // degree escalation: 1, 2, 4, ..., then the cap itself
    std::vector<int> degrees;
    for (int k = 1; k < cfg.max_degree; k *= 2) degrees.push_back(k);
    degrees.push_back(cfg.max_degree);

    std::optional<Candidate> hit;
    for (int k : degrees) {
        hit = attempt_degree(x, k, scale_exp, threshold, recheck_value);
        if (hit) break;
    }
    if (hit && hit->degree > 1) {
        // one pass upward from below in case the escalation jumped past the
        // true minimum
        for (int k = 1; k < hit->degree; ++k) {
            auto lower = attempt_degree(x, k, scale_exp, threshold, recheck_value);
            if (lower) {
                hit = lower;
                break;
            }
        }
    }

    MinimalPolynomial out;
    if (!hit) {
        out.residual = Real(1);
        return out;
    }
    out.coefficients = hit->coeffs;
    out.degree = hit->degree;
    out.residual = hit->residual;
    out.found = true;
    out.certified_monic = (out.coefficients.back() == 1);
    Int c0 = out.coefficients.front();
    out.certified_unit = out.certified_monic && (c0 == 1 || c0 == -1);
    return out;
}

bool certify_algebraic_integer(const MinimalPolynomial& p) {
    return p.found && !p.coefficients.empty() && p.coefficients.back() == 1;
}

bool certify_unit(const MinimalPolynomial& p) {
    if (!certify_algebraic_integer(p)) return false;
    const Int& c0 = p.coefficients.front();
    return c0 == 1 || c0 == -1;
}

PhaseRecognitionReport recognize_overlap_phases(const DimensionContext& ctx,
                                                const Fiducial& f,
                                                const RecognitionConfig& cfg) {
    Fiducial lo = polish(ctx, f, cfg.precision_bits);
    Fiducial hi = polish(ctx, lo, 2 * cfg.precision_bits);
    DimensionContext ctx_lo = make_context(ctx.d, cfg.precision_bits);
    DimensionContext ctx_hi = make_context(ctx.d, 2 * cfg.precision_bits);
    OverlapTable t_lo = compute_overlaps(ctx_lo, lo);
    OverlapTable t_hi = compute_overlaps(ctx_hi, hi);

    PhaseRecognitionReport rep;
    for (const auto& [p, phase] : t_lo.phases) {
        const Complex& recheck = t_hi.phases.at(p);
        MinimalPolynomial poly = recognize_algebraic(phase, cfg, &recheck);
        ++rep.total;
        if (poly.found) {
            ++rep.recognized;
            if (poly.certified_monic) ++rep.certified_integers;
            if (poly.certified_unit) ++rep.certified_units;
            ++rep.distinct_polynomials[poly.coefficients];
        }
        rep.per_phase.push_back({p, std::move(poly)});
    }
    return rep;
}

int phase_relation_rank(const OverlapTable& t, const RecognitionConfig& cfg,
                        bool* confident) {
    PrecisionGuard guard(cfg.precision_bits + 64);
    const int scale_exp = effective_scale(cfg);
    Real scale = pow(Real(10), scale_exp);
    Real two_pi = const_pi() * 2;

    std::vector<Real> values;
    values.push_back(Real(1));  // torsion slot: relations may absorb multiples of 2*pi
    for (const auto& [p, phase] : t.phases) {
        Real theta = arg(phase) / two_pi;
        if (theta < 0) theta += 1;
        values.push_back(theta);
    }
    const int n = static_cast<int>(values.size());

    std::vector<std::vector<Int>> basis(n, std::vector<Int>(n + 1, Int(0)));
    for (int i = 0; i < n; ++i) {
        basis[i][i] = 1;
        basis[i][n] = round_real(values[i] * scale);
    }
    lll_reduce(basis);

    Real rel_cut = pow(Real(10), scale_exp / 2);
    Real margin_cut = pow(Real(10), 3 * scale_exp / 4);
    int relations = 0;
    bool clean = true;
    for (const auto& row : basis) {
        Real last = abs(int_to_real(row[n]));
        if (last < rel_cut)
            ++relations;
        else if (last < margin_cut)
            clean = false;  // ambiguous magnitude: low confidence
    }
    if (confident) *confident = clean;
    // dim_Q span{1, theta_i} = n - relations; subtracting the rational slot
    // leaves the free rank of the phase group
    int rank = (n - relations) - 1;
    return std::max(rank, 0);
}

}  // namespace sic
