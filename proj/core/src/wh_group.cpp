#include "sic/wh_group.hpp"

#include <numeric>

namespace sic {

Real DimensionContext::unitarity_tolerance() const {
    return ldexp(Real(1), -(precision_bits / 4));
}

DimensionContext make_context(int d, int precision_bits) {
    if (d < 2) throw InvalidDimensionError("dimension must be >= 2");
    if (precision_bits < 53) throw InvalidDimensionError("precision_bits must be >= 53");

    PrecisionGuard guard(precision_bits);
    DimensionContext ctx;
    ctx.d = d;
    ctx.d_prime = (d % 2 == 0) ? 2 * d : d;
    ctx.precision_bits = precision_bits;

    Real pi = const_pi();
    // tau = -e^{i*pi/d} = e^{i*pi*(d+1)/d}; each power from scratch, not by
    // repeated multiplication, so cached values carry no accumulated error.
    ctx.tau_powers.resize(ctx.d_prime);
    for (int k = 0; k < ctx.d_prime; ++k)
        ctx.tau_powers[k] = unit_phase(pi * k * (d + 1) / d);
    ctx.tau = ctx.tau_powers[1 % ctx.d_prime];
    if (ctx.d_prime == 1) ctx.tau = Complex(Real(1));
    ctx.omega = ctx.omega_pow(1);
    return ctx;
}

int64_t mod_dp(const DimensionContext& ctx, int64_t x) {
    int64_t r = x % ctx.d_prime;
    return r < 0 ? r + ctx.d_prime : r;
}

DisplacementIndex reduce_index(const DimensionContext& ctx, int64_t p1, int64_t p2) {
    return {static_cast<int>(mod_dp(ctx, p1)), static_cast<int>(mod_dp(ctx, p2))};
}

bool index_is_zero_mod_d(const DimensionContext& ctx, DisplacementIndex p) {
    return p.p1 % ctx.d == 0 && p.p2 % ctx.d == 0;
}

UnitaryOperator displacement(const DimensionContext& ctx, DisplacementIndex p) {
    PrecisionGuard guard(ctx.precision_bits);
    p = reduce_index(ctx, p.p1, p.p2);
    const int d = ctx.d;
    UnitaryOperator u;
    u.entries = CMatrix(d, d);
    const Complex& phase = ctx.tau_pow(static_cast<int64_t>(p.p1) * p.p2);
    for (int k = 0; k < d; ++k) {
        int j = (k + p.p1) % d;
        u.entries(j, k) = phase * ctx.omega_pow(static_cast<int64_t>(p.p2) * k);
    }
    return u;
}

void apply_displacement(const DimensionContext& ctx, DisplacementIndex p,
                        const CVector& v, CVector& out) {
    p = reduce_index(ctx, p.p1, p.p2);
    const int d = ctx.d;
    out.resize(d);
    const Complex& phase = ctx.tau_pow(static_cast<int64_t>(p.p1) * p.p2);
    for (int j = 0; j < d; ++j) {
        int k = j - p.p1;
        k %= d;
        if (k < 0) k += d;
        out[j] = phase * ctx.omega_pow(static_cast<int64_t>(p.p2) * k) * v[k];
    }
}

Complex displacement_overlap(const DimensionContext& ctx, DisplacementIndex p,
                             const CVector& v) {
    CVector w(ctx.d);
    apply_displacement(ctx, p, v, w);
    return inner(v, w);
}

Real verify_displacement_orthogonality(const DimensionContext& ctx) {
    PrecisionGuard guard(ctx.precision_bits);
    const int d = ctx.d;
    std::vector<CMatrix> ops;
    ops.reserve(static_cast<size_t>(d) * d);
    for (int p1 = 0; p1 < d; ++p1)
        for (int p2 = 0; p2 < d; ++p2)
            ops.push_back(displacement(ctx, {p1, p2}).entries);

    Real worst = 0;
    for (size_t i = 0; i < ops.size(); ++i)
        for (size_t j = 0; j < ops.size(); ++j) {
            Complex tr;
            for (size_t k = 0; k < ops[i].a.size(); ++k)
                tr += ops[i].a[k] * conj(ops[j].a[k]);
            if (i == j) tr -= Complex(Real(d));
            Real err = abs(tr);
            if (err > worst) worst = err;
        }
    return worst;
}

SymplecticMatrix zauner_matrix(const DimensionContext& ctx) {
    return symplectic_reduce({0, ctx.d - 1, ctx.d + 1, ctx.d - 1}, ctx);
}

SymplecticMatrix fa_matrix(const DimensionContext& ctx) {
    if (ctx.d % 3 != 0)
        throw InvalidDimensionError("fa_matrix requires d divisible by 3");
    return symplectic_reduce(
        {1, ctx.d + 3, 4 * static_cast<int64_t>(ctx.d) / 3, ctx.d - 2}, ctx);
}

int64_t symplectic_det(const SymplecticMatrix& f, const DimensionContext& ctx) {
    return mod_dp(ctx, f.a * f.e - f.b * f.c);
}

bool is_valid_symplectic(const SymplecticMatrix& f, const DimensionContext& ctx) {
    int64_t det = symplectic_det(f, ctx);
    return det == 1 || det == mod_dp(ctx, -1);
}

SymplecticMatrix symplectic_mul(const SymplecticMatrix& f, const SymplecticMatrix& g,
                                const DimensionContext& ctx) {
    return symplectic_reduce({f.a * g.a + f.b * g.c, f.a * g.b + f.b * g.e,
                              f.c * g.a + f.e * g.c, f.c * g.b + f.e * g.e},
                             ctx);
}

SymplecticMatrix symplectic_inverse(const SymplecticMatrix& f,
                                    const DimensionContext& ctx) {
    int64_t det = symplectic_det(f, ctx);
    if (det != 1 && det != mod_dp(ctx, -1))
        throw InvariantViolationError("symplectic matrix has determinant != +-1");
    int64_t s = (det == 1) ? 1 : -1;
    return symplectic_reduce({s * f.e, -s * f.b, -s * f.c, s * f.a}, ctx);
}

SymplecticMatrix symplectic_reduce(const SymplecticMatrix& f,
                                   const DimensionContext& ctx) {
    return {mod_dp(ctx, f.a), mod_dp(ctx, f.b), mod_dp(ctx, f.c), mod_dp(ctx, f.e)};
}

int symplectic_order(const SymplecticMatrix& f, const DimensionContext& ctx,
                     int bound) {
    if (!is_valid_symplectic(f, ctx))
        throw InvariantViolationError("symplectic matrix has determinant != +-1");
    const SymplecticMatrix id{1, 0, 0, 1};
    SymplecticMatrix acc = symplectic_reduce(f, ctx);
    for (int k = 1; k <= bound; ++k) {
        if (acc == id) return k;
        acc = symplectic_mul(acc, f, ctx);
    }
    throw InvariantViolationError("symplectic order not found within bound");
}

bool is_canonical_order3(const SymplecticMatrix& f, const DimensionContext& ctx) {
    const SymplecticMatrix id{1, 0, 0, 1};
    SymplecticMatrix r = symplectic_reduce(f, ctx);
    if (r == id) return false;
    int64_t tr = (r.a + r.e) % ctx.d;
    return tr == (ctx.d - 1) % ctx.d;
}

DisplacementIndex apply_symplectic(const SymplecticMatrix& f, DisplacementIndex p,
                                   const DimensionContext& ctx) {
    return reduce_index(ctx, f.a * p.p1 + f.b * p.p2, f.c * p.p1 + f.e * p.p2);
}

bool invertible_mod(int64_t x, int64_t n) {
    return std::gcd(((x % n) + n) % n, n) == 1;
}

int64_t inverse_mod(int64_t x, int64_t n) {
    int64_t a = ((x % n) + n) % n, b = n;
    int64_t u = 1, v = 0;
    while (b != 0) {
        int64_t q = a / b;
        a -= q * b;
        std::swap(a, b);
        u -= q * v;
        std::swap(u, v);
    }
    if (a != 1) throw InvariantViolationError("element not invertible mod n");
    return ((u % n) + n) % n;
}

}  // namespace sic
