#include "sic/clifford.hpp"

namespace sic {

namespace {

// U_F for det F = +1 and upper-right entry invertible mod d':
// entries tau^{b^{-1}(e j^2 - 2jk + a k^2)} / sqrt(d).
CMatrix gauss_sum_unitary(const DimensionContext& ctx, const SymplecticMatrix& f) {
    const int d = ctx.d;
    const int64_t dp = ctx.d_prime;
    int64_t binv = inverse_mod(f.b, dp);
    Real root = Real(1) / sqrt(Real(d));
    CMatrix u(d, d);
    for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) {
            int64_t expo = binv * (f.e * j * j - 2 * static_cast<int64_t>(j) * k +
                                   f.a * k * k);
            u(j, k) = ctx.tau_pow(expo) * root;
        }
    return u;
}

CMatrix unitary_det1(const DimensionContext& ctx, const SymplecticMatrix& f) {
    const int64_t dp = ctx.d_prime;
    if (invertible_mod(f.b, dp)) return gauss_sum_unitary(ctx, f);

    // Factor F = F1 * F2 with both upper-right entries invertible.
    // F2 = [[x, -1], [1, 0]] gives F1 = F * F2^{-1} with upper-right a + b*x;
    // such x always exists since gcd(a, b, d') = 1. Smallest x wins.
    int64_t x = 0;
    while (!invertible_mod(f.a + f.b * x, dp)) {
        ++x;
        if (x >= dp)
            throw InvariantViolationError("no valid symplectic factorization found");
    }
    SymplecticMatrix f2 = symplectic_reduce({x, -1, 1, 0}, ctx);
    SymplecticMatrix f1 = symplectic_mul(f, symplectic_inverse(f2, ctx), ctx);
    return mat_mul(gauss_sum_unitary(ctx, f1), gauss_sum_unitary(ctx, f2));
}

}  // namespace

UnitaryOperator clifford_unitary(const DimensionContext& ctx, SymplecticMatrix f) {
    PrecisionGuard guard(ctx.precision_bits);
    f = symplectic_reduce(f, ctx);
    int64_t det = symplectic_det(f, ctx);
    if (det == 1) return {unitary_det1(ctx, f), false};
    if (det == mod_dp(ctx, -1)) {
        // Complex conjugation realizes [[1, 0], [0, -1]]; peel it off.
        SymplecticMatrix fc = symplectic_mul(f, {1, 0, 0, -1}, ctx);
        return {unitary_det1(ctx, fc), true};
    }
    throw InvariantViolationError("symplectic matrix has determinant != +-1");
}

CMatrix conjugate_by(const UnitaryOperator& u, const CMatrix& x) {
    CMatrix arg = x;
    if (u.antiunitary_flag)
        for (Complex& z : arg.a) z = conj(z);
    return mat_mul(mat_mul(u.entries, arg), mat_adjoint(u.entries));
}

Real phase_aligned_distance(const CMatrix& a, const CMatrix& b) {
    Complex overlap;
    for (size_t i = 0; i < a.a.size(); ++i) overlap += conj(b.a[i]) * a.a[i];
    Real mag = abs(overlap);
    Complex phase = (mag > 0) ? overlap / mag : Complex(Real(1));
    Real worst = 0;
    for (size_t i = 0; i < a.a.size(); ++i) {
        Real dd = abs(a.a[i] - phase * b.a[i]);
        if (dd > worst) worst = dd;
    }
    return worst;
}

Real covariance_error(const DimensionContext& ctx, const UnitaryOperator& u,
                      const SymplecticMatrix& f) {
    PrecisionGuard guard(ctx.precision_bits);
    const int d = ctx.d;
    Real worst = 0;
    for (int p1 = 0; p1 < d; ++p1)
        for (int p2 = 0; p2 < d; ++p2) {
            if (p1 == 0 && p2 == 0) continue;
            CMatrix lhs = conjugate_by(u, displacement(ctx, {p1, p2}).entries);
            DisplacementIndex fp = apply_symplectic(f, {p1, p2}, ctx);
            CMatrix rhs = displacement(ctx, fp).entries;
            Real err = phase_aligned_distance(lhs, rhs);
            if (err > worst) worst = err;
        }
    return worst;
}

UnitaryOperator compose(const UnitaryOperator& x, const UnitaryOperator& y) {
    CMatrix m = y.entries;
    if (x.antiunitary_flag)
        for (Complex& z : m.a) z = conj(z);
    UnitaryOperator out;
    out.entries = mat_mul(x.entries, m);
    out.antiunitary_flag = x.antiunitary_flag != y.antiunitary_flag;
    return out;
}

int projective_order(const DimensionContext& ctx, const UnitaryOperator& u,
                     int bound) {
    PrecisionGuard guard(ctx.precision_bits);
    const int d = u.entries.rows;
    CMatrix id = CMatrix::identity(d);
    CMatrix acc = u.entries;
    bool conj_flag = u.antiunitary_flag;
    Real tol = ctx.unitarity_tolerance();
    for (int k = 1; k <= bound; ++k) {
        if (!conj_flag && phase_aligned_distance(acc, id) < tol) return k;
        // (A, fA) composed with (M, fM): matrix A * sigma_fA(M), flag fA ^ fM
        CMatrix m = u.entries;
        if (conj_flag)
            for (Complex& z : m.a) z = conj(z);
        acc = mat_mul(acc, m);
        conj_flag ^= u.antiunitary_flag;
    }
    throw OrderUndeterminedError("projective order not found within bound");
}

}  // namespace sic
