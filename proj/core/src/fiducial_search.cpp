#include "sic/fiducial_search.hpp"

#include "sic/rng.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace sic {

Real sic_residual(const DimensionContext& ctx, const CVector& v) {
    PrecisionGuard guard(ctx.precision_bits);
    if (vec_norm(v) == 0) throw std::domain_error("sic_residual: zero vector");
    const int d = ctx.d;
    Real target = Real(1) / (d + 1);
    Real worst = 0;
    for (int p1 = 0; p1 < d; ++p1)
        for (int p2 = 0; p2 < d; ++p2) {
            if (p1 == 0 && p2 == 0) continue;
            Real dev = abs(norm_sq(displacement_overlap(ctx, {p1, p2}, v)) - target);
            if (dev > worst) worst = dev;
        }
    return worst;
}

Real frame_potential(const DimensionContext& ctx, const CVector& v) {
    PrecisionGuard guard(ctx.precision_bits);
    const int d = ctx.d;
    Real total = 0;
    for (int p1 = 0; p1 < d; ++p1)
        for (int p2 = 0; p2 < d; ++p2) {
            Real m = norm_sq(displacement_overlap(ctx, {p1, p2}, v));
            total += m * m;
        }
    return total;
}

namespace {

// (D_p^dag v)_k = conj((D_p)_{k+p1, k}) v_{k+p1}
void apply_displacement_adjoint(const DimensionContext& ctx, DisplacementIndex p,
                                const CVector& v, CVector& out) {
    const int d = ctx.d;
    const Complex phase =
        conj(ctx.tau_pow(static_cast<int64_t>(p.p1) * p.p2));
    for (int k = 0; k < d; ++k) {
        int j = (k + p.p1) % d;
        out[k] = phase * conj(ctx.omega_pow(static_cast<int64_t>(p.p2) * k)) * v[j];
    }
}

}  // namespace

CVector frame_potential_gradient(const DimensionContext& ctx, const CVector& v) {
    PrecisionGuard guard(ctx.precision_bits);
    const int d = ctx.d;
    CVector g(d), w(d), wa(d);
    for (int p1 = 0; p1 < d; ++p1)
        for (int p2 = 0; p2 < d; ++p2) {
            DisplacementIndex p{p1, p2};
            apply_displacement(ctx, p, v, w);
            Complex c = inner(v, w);
            apply_displacement_adjoint(ctx, p, v, wa);
            Real m2 = norm_sq(c);
            Complex cw = conj(c) * Real(2) * m2;
            Complex cwa = c * Real(2) * m2;
            for (int j = 0; j < d; ++j) g[j] += cw * w[j] + cwa * wa[j];
        }
    return g;
}

std::vector<CVector> zauner_eigenspace_basis(const DimensionContext& ctx,
                                             const SymplecticMatrix& f) {
    PrecisionGuard guard(ctx.precision_bits);
    const int d = ctx.d;
    UnitaryOperator uf = clifford_unitary(ctx, f);
    if (uf.antiunitary_flag)
        throw std::domain_error("zauner_eigenspace_basis: antiunitary input");
    if (projective_order(ctx, uf) != 3)
        throw std::domain_error("zauner_eigenspace_basis: input not of projective order 3");

    // Strip the global phase so U^3 = I exactly: U^3 = c*I, replace U by
    // U / c^{1/3} (principal cube root).
    CMatrix u3 = mat_mul(mat_mul(uf.entries, uf.entries), uf.entries);
    Complex c = u3(0, 0);
    Complex root = polar(pow(abs(c), Real(1) / 3), arg(c) / 3);
    CMatrix u = uf.entries;
    for (Complex& z : u.a) z = z / root;

    CMatrix u2 = mat_mul(u, u);
    // multiplicity of eigenvalue mu^k from traces: m_k = (1/3) sum_j mu^{-kj} Tr(U^j)
    Real two_pi_3 = const_pi() * 2 / 3;
    Complex tr1 = mat_trace(u), tr2 = mat_trace(u2);
    int mult[3];
    for (int k = 0; k < 3; ++k) {
        Complex mk = Complex(Real(d)) + conj(unit_phase(two_pi_3 * k)) * tr1 +
                     conj(unit_phase(two_pi_3 * 2 * k)) * tr2;
        mult[k] = static_cast<int>(round(mk.re / 3).convert_to<double>());
    }
    int best = 0;
    for (int k = 1; k < 3; ++k)
        if (mult[k] > mult[best]) best = k;

    // Spectral projector P = (1/3)(I + mu^{-k} U + mu^{-2k} U^2), then an
    // orthonormal basis of its column space by pivoted Gram-Schmidt.
    Complex w1 = conj(unit_phase(two_pi_3 * best));
    Complex w2 = conj(unit_phase(two_pi_3 * 2 * best));
    CMatrix proj = CMatrix::identity(d);
    for (size_t i = 0; i < proj.a.size(); ++i)
        proj.a[i] = (proj.a[i] + w1 * u.a[i] + w2 * u2.a[i]) / Real(3);

    std::vector<CVector> cols(d, CVector(d));
    for (int j = 0; j < d; ++j)
        for (int i = 0; i < d; ++i) cols[j][i] = proj(i, j);

    std::vector<CVector> basis;
    for (int step = 0; step < mult[best]; ++step) {
        int pivot = -1;
        Real bestn = 0;
        for (int j = 0; j < d; ++j) {
            Real n = vec_norm(cols[j]);
            if (n > bestn) {
                bestn = n;
                pivot = j;
            }
        }
        if (pivot < 0) break;
        CVector b = cols[pivot];
        normalize(b);
        for (int j = 0; j < d; ++j) {
            Complex ov = inner(b, cols[j]);
            for (int i = 0; i < d; ++i) cols[j][i] -= b[i] * ov;
        }
        basis.push_back(std::move(b));
    }
    return basis;
}

// ---------------------------------------------------------------------------
// Coarse search engine in double precision. Restart loops run here; only
// candidates below the polish threshold are promoted to MPFR.

namespace {

using CD = std::complex<double>;

struct CoarseContext {
    int d;
    std::vector<CD> omega_powers;  // omega^k, k in [0, d)

    explicit CoarseContext(int d_) : d(d_), omega_powers(d_) {
        for (int k = 0; k < d_; ++k) {
            double t = 2.0 * M_PI * k / d_;
            omega_powers[k] = CD(std::cos(t), std::sin(t));
        }
    }
    const CD& om(int64_t k) const {
        int64_t r = k % d;
        if (r < 0) r += d;
        return omega_powers[static_cast<size_t>(r)];
    }
};

// overlap <v|X^{p1} Z^{p2}|v>; the tau prefactor drops out of |c| and the
// gradient direction is unaffected by the constant phase per p.
CD coarse_overlap(const CoarseContext& cc, int p1, int p2,
                  const std::vector<CD>& v, std::vector<CD>& w) {
    const int d = cc.d;
    for (int j = 0; j < d; ++j) {
        int k = j - p1;
        if (k < 0) k += d;
        w[j] = cc.om(static_cast<int64_t>(p2) * k) * v[k];
    }
    CD c(0.0, 0.0);
    for (int j = 0; j < d; ++j) c += std::conj(v[j]) * w[j];
    return c;
}

double coarse_frame_potential(const CoarseContext& cc, const std::vector<CD>& v) {
    const int d = cc.d;
    std::vector<CD> w(d);
    double total = 0;
    for (int p1 = 0; p1 < d; ++p1)
        for (int p2 = 0; p2 < d; ++p2) {
            double m = std::norm(coarse_overlap(cc, p1, p2, v, w));
            total += m * m;
        }
    return total;
}

double coarse_residual(const CoarseContext& cc, const std::vector<CD>& v) {
    const int d = cc.d;
    std::vector<CD> w(d);
    double target = 1.0 / (d + 1);
    double worst = 0;
    for (int p1 = 0; p1 < d; ++p1)
        for (int p2 = 0; p2 < d; ++p2) {
            if (p1 == 0 && p2 == 0) continue;
            double dev = std::abs(std::norm(coarse_overlap(cc, p1, p2, v, w)) - target);
            worst = std::max(worst, dev);
        }
    return worst;
}

std::vector<CD> coarse_gradient(const CoarseContext& cc, const std::vector<CD>& v) {
    const int d = cc.d;
    std::vector<CD> g(d), w(d), wa(d);
    for (int p1 = 0; p1 < d; ++p1)
        for (int p2 = 0; p2 < d; ++p2) {
            CD c = coarse_overlap(cc, p1, p2, v, w);
            // adjoint: (D^dag v)_k = conj(om(p2 k)) v_{k+p1}
            for (int k = 0; k < d; ++k) {
                int j = (k + p1) % d;
                wa[k] = std::conj(cc.om(static_cast<int64_t>(p2) * k)) * v[j];
            }
            double m2 = std::norm(c);
            CD cw = 2.0 * m2 * std::conj(c);
            CD cwa = 2.0 * m2 * c;
            for (int j = 0; j < d; ++j) g[j] += cw * w[j] + cwa * wa[j];
        }
    return g;
}

void coarse_normalize(std::vector<CD>& z) {
    double n = 0;
    for (const CD& x : z) n += std::norm(x);
    n = std::sqrt(n);
    for (CD& x : z) x /= n;
}

// Minimize the frame potential over the unit sphere spanned by `basis`,
// starting from seeded random coordinates. Returns the final vector in C^d.
std::vector<CD> coarse_minimize(const CoarseContext& cc,
                                const std::vector<std::vector<CD>>& basis,
                                SplitMix64& rng, int iterations) {
    const int d = cc.d;
    const int k = static_cast<int>(basis.size());
    std::vector<CD> z(k);
    for (CD& x : z) x = CD(rng.gaussian(), rng.gaussian());
    coarse_normalize(z);

    auto expand = [&](const std::vector<CD>& zz) {
        std::vector<CD> v(d, CD(0, 0));
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < d; ++j) v[j] += zz[i] * basis[i][j];
        return v;
    };

    std::vector<CD> v = expand(z);
    double f = coarse_frame_potential(cc, v);
    double step = 0.05;
    for (int it = 0; it < iterations && step > 1e-18; ++it) {
        std::vector<CD> g = coarse_gradient(cc, v);
        // pull back to coordinates, project out the radial direction
        std::vector<CD> gz(k);
        CD radial(0, 0);
        for (int i = 0; i < k; ++i) {
            CD s(0, 0);
            for (int j = 0; j < d; ++j) s += std::conj(basis[i][j]) * g[j];
            gz[i] = s;
        }
        for (int i = 0; i < k; ++i) radial += std::conj(z[i]) * gz[i];
        double gn = 0;
        for (int i = 0; i < k; ++i) {
            gz[i] -= radial * z[i];
            gn += std::norm(gz[i]);
        }
        if (gn < 1e-28) break;

        std::vector<CD> zt(k);
        for (int i = 0; i < k; ++i) zt[i] = z[i] - step * gz[i];
        coarse_normalize(zt);
        std::vector<CD> vt = expand(zt);
        double ft = coarse_frame_potential(cc, vt);
        if (ft < f) {
            z = std::move(zt);
            v = std::move(vt);
            f = ft;
            step *= 1.25;
        } else {
            step *= 0.5;
        }
    }
    return v;
}

int gauge_index(const CVector& v) {
    int j = 0;
    Real best = 0;
    for (size_t i = 0; i < v.size(); ++i) {
        Real n = norm_sq(v[i]);
        if (n > best) {
            best = n;
            j = static_cast<int>(i);
        }
    }
    return j;
}

void fix_gauge(CVector& v, int j) {
    Real m = abs(v[j]);
    Complex phase = conj(v[j]) / m;
    for (Complex& z : v) z = z * phase;
    v[j].im = 0;  // exact by construction
}

struct RealVec {
    std::vector<Real> x;
};

// variables: re/im pairs for every component except im(v[gauge]) which is 0
std::vector<Real> pack(const CVector& v, int gauge) {
    std::vector<Real> x;
    x.reserve(2 * v.size() - 1);
    for (size_t i = 0; i < v.size(); ++i) {
        x.push_back(v[i].re);
        if (static_cast<int>(i) != gauge) x.push_back(v[i].im);
    }
    return x;
}

CVector unpack(const std::vector<Real>& x, int d, int gauge) {
    CVector v(d);
    size_t idx = 0;
    for (int i = 0; i < d; ++i) {
        v[i].re = x[idx++];
        v[i].im = (i == gauge) ? Real(0) : x[idx++];
    }
    return v;
}

// Objective frame_potential(v/|v|) + (|v|^2 - 1)^2: the first term is
// scale-free, so the sphere constraint reduces to the quadratic penalty and
// plain Newton applies. Gradient in packed real coordinates.
std::vector<Real> penalized_gradient(const DimensionContext& ctx, const CVector& v,
                                     int gauge) {
    Real s = 0;
    for (const Complex& z : v) s += norm_sq(z);
    Real r = sqrt(s);
    CVector u(v.size());
    for (size_t i = 0; i < v.size(); ++i) u[i] = v[i] / r;
    CVector gu = frame_potential_gradient(ctx, u);
    // d/dconj(v) of F(v/|v|) = (G - u * Re<G,u>) / |v|
    Real radial = 0;
    for (size_t i = 0; i < v.size(); ++i)
        radial += gu[i].re * u[i].re + gu[i].im * u[i].im;
    Real pen = 2 * (s - 1);
    CVector g(v.size());
    for (size_t i = 0; i < v.size(); ++i)
        g[i] = (gu[i] - u[i] * radial) / r + v[i] * pen;
    std::vector<Real> out;
    out.reserve(2 * v.size() - 1);
    for (size_t i = 0; i < v.size(); ++i) {
        out.push_back(2 * g[i].re);
        if (static_cast<int>(i) != gauge) out.push_back(2 * g[i].im);
    }
    return out;
}

Real penalized_value(const DimensionContext& ctx, const CVector& v) {
    Real s = 0;
    for (const Complex& z : v) s += norm_sq(z);
    Real r = sqrt(s);
    CVector u(v.size());
    for (size_t i = 0; i < v.size(); ++i) u[i] = v[i] / r;
    Real e = s - 1;
    return frame_potential(ctx, u) + e * e;
}

// solve H s = -g by Gaussian elimination with partial pivoting
std::vector<Real> solve_newton(std::vector<std::vector<Real>> h, std::vector<Real> g) {
    const int n = static_cast<int>(g.size());
    for (int i = 0; i < n; ++i) g[i] = -g[i];
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (fabs(h[r][col]) > fabs(h[piv][col])) piv = r;
        std::swap(h[piv], h[col]);
        std::swap(g[piv], g[col]);
        if (h[col][col] == 0) throw PolishFailureError("singular Newton system");
        for (int r = col + 1; r < n; ++r) {
            Real m = h[r][col] / h[col][col];
            if (m == 0) continue;
            for (int cc = col; cc < n; ++cc) h[r][cc] -= m * h[col][cc];
            g[r] -= m * g[col];
        }
    }
    std::vector<Real> s(n);
    for (int r = n - 1; r >= 0; --r) {
        Real acc = g[r];
        for (int cc = r + 1; cc < n; ++cc) acc -= h[r][cc] * s[cc];
        s[r] = acc / h[r][r];
    }
    return s;
}

}  // namespace

double SplitMix64::gaussian() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

Fiducial polish(const DimensionContext& ctx, const Fiducial& f, int bits) {
    DimensionContext hi = make_context(ctx.d, bits);
    PrecisionGuard guard(bits);
    const int d = ctx.d;

    CVector v(d);
    for (int i = 0; i < d; ++i) v[i] = Complex(Real(f.vector[i].re), Real(f.vector[i].im));
    normalize(v);

    Real r0 = sic_residual(hi, v);
    if (r0 >= Real("1e-6"))
        throw PolishFailureError("polish: input residual not below 1e-6");

    int gauge = gauge_index(v);
    fix_gauge(v, gauge);
    const int n = 2 * d - 1;
    Real target = pow(Real(10), Real(-0.2) * bits);
    Real fd_step = ldexp(Real(1), -bits / 3);

    std::vector<Real> x = pack(v, gauge);
    Real best_res = r0;
    CVector best_v = v;
    int worse_streak = 0;

    for (int iter = 0; iter < 60; ++iter) {
        CVector cur = unpack(x, d, gauge);
        Real res = sic_residual(hi, cur);
        if (res < best_res) {
            best_res = res;
            best_v = cur;
            worse_streak = 0;
        } else if (res > best_res) {
            if (++worse_streak >= 5)
                throw PolishFailureError("polish: residual diverging");
        }
        if (best_res <= target) break;

        std::vector<Real> g = penalized_gradient(hi, cur, gauge);

        // Hessian by central differences of the analytic gradient
        std::vector<std::vector<Real>> h(n, std::vector<Real>(n));
        for (int i = 0; i < n; ++i) {
            std::vector<Real> xp = x, xm = x;
            xp[i] += fd_step;
            xm[i] -= fd_step;
            std::vector<Real> gp = penalized_gradient(hi, unpack(xp, d, gauge), gauge);
            std::vector<Real> gm = penalized_gradient(hi, unpack(xm, d, gauge), gauge);
            for (int j = 0; j < n; ++j) h[i][j] = (gp[j] - gm[j]) / (2 * fd_step);
        }
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                Real avg = (h[i][j] + h[j][i]) / 2;
                h[i][j] = avg;
                h[j][i] = avg;
            }

        std::vector<Real> step;
        try {
            step = solve_newton(h, g);
        } catch (const PolishFailureError&) {
            // Levenberg fallback
            Real lam = Real("1e-6");
            for (int i = 0; i < n; ++i) h[i][i] += lam;
            step = solve_newton(h, g);
        }

        Real f0 = penalized_value(hi, cur);
        Real scale = 1;
        bool accepted = false;
        for (int bt = 0; bt < 12; ++bt) {
            std::vector<Real> xt = x;
            for (int i = 0; i < n; ++i) xt[i] += scale * step[i];
            if (penalized_value(hi, unpack(xt, d, gauge)) < f0) {
                x = std::move(xt);
                accepted = true;
                break;
            }
            scale /= 2;
        }
        if (!accepted) break;  // stationary to working precision
    }

    normalize(best_v);
    fix_gauge(best_v, gauge);
    Fiducial out;
    out.vector = std::move(best_v);
    out.dimension = d;
    out.precision_bits = bits;
    out.residual = sic_residual(hi, out.vector);
    out.seed = f.seed;
    out.symmetry_type = f.symmetry_type;
    out.converged = out.residual <= target;
    if (out.residual > r0)
        throw PolishFailureError("polish: could not improve on input residual");
    return out;
}

Fiducial search(const DimensionContext& ctx, const SearchConfig& cfg) {
    const int d = ctx.d;
    CoarseContext cc(d);

    // eigenspace basis, converted to double for the coarse stage
    std::vector<std::vector<CD>> basis;
    SymmetryType sym = SymmetryType::unknown;
    if (cfg.eigenspace_restriction) {
        SymplecticMatrix f = (cfg.eigenspace_kind == SymmetryType::type_a)
                                 ? fa_matrix(ctx)
                                 : zauner_matrix(ctx);
        sym = (cfg.eigenspace_kind == SymmetryType::type_a) ? SymmetryType::type_a
                                                            : SymmetryType::type_z;
        for (const CVector& b : zauner_eigenspace_basis(ctx, f)) {
            std::vector<CD> col(d);
            for (int i = 0; i < d; ++i)
                col[i] = CD(b[i].re.convert_to<double>(), b[i].im.convert_to<double>());
            basis.push_back(std::move(col));
        }
    } else {
        for (int i = 0; i < d; ++i) {
            std::vector<CD> col(d, CD(0, 0));
            col[i] = CD(1, 0);
            basis.push_back(std::move(col));
        }
    }

    SplitMix64 seeder(cfg.rng_seed);
    std::vector<uint64_t> sub_seeds(static_cast<size_t>(cfg.max_restarts));
    for (auto& s : sub_seeds) s = seeder.next();

    double best_coarse = 1e300;
    std::vector<CD> best_vec;
    uint64_t best_seed = cfg.rng_seed;

    for (int restart = 0; restart < cfg.max_restarts; ++restart) {
        SplitMix64 rng(sub_seeds[static_cast<size_t>(restart)]);
        std::vector<CD> v = coarse_minimize(cc, basis, rng, cfg.inner_iterations);
        double res = coarse_residual(cc, v);
        if (res < best_coarse) {
            best_coarse = res;
            best_vec = v;
            best_seed = sub_seeds[static_cast<size_t>(restart)];
        }
        if (res < 1e-7) {
            Fiducial cand;
            cand.vector.resize(d);
            for (int i = 0; i < d; ++i)
                cand.vector[i] = Complex(Real(v[i].real()), Real(v[i].imag()));
            cand.dimension = d;
            cand.precision_bits = cfg.polish_precision_bits;
            cand.seed = cfg.rng_seed;
            cand.symmetry_type = sym;
            try {
                Fiducial polished = polish(ctx, cand, cfg.polish_precision_bits);
                if (polished.residual <= Real(cfg.target_residual)) {
                    polished.converged = true;
                    polished.seed = cfg.rng_seed;
                    return polished;
                }
            } catch (const PolishFailureError&) {
                // fall through to the next restart
            }
        }
    }

    // best effort, unconverged
    PrecisionGuard guard(cfg.polish_precision_bits);
    Fiducial out;
    out.vector.resize(d);
    for (int i = 0; i < d; ++i)
        out.vector[i] = Complex(Real(best_vec[i].real()), Real(best_vec[i].imag()));
    normalize(out.vector);
    out.dimension = d;
    out.precision_bits = cfg.polish_precision_bits;
    DimensionContext hi = make_context(d, cfg.polish_precision_bits);
    out.residual = sic_residual(hi, out.vector);
    out.seed = cfg.rng_seed;
    out.symmetry_type = sym;
    out.converged = false;
    (void)best_seed;
    return out;
}

}  // namespace sic
