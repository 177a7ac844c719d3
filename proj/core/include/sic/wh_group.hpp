#pragma once

#include "sic/prec.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace sic {

// Dimension data shared by every Weyl-Heisenberg computation: d, the doubled
// modulus d' (d for odd d, 2d for even d), and the roots of unity
// omega = e^{2*pi*i/d}, tau = -e^{pi*i/d}, all at a fixed binary precision.
struct DimensionContext {
    int d = 0;
    int d_prime = 0;
    int precision_bits = 0;
    Complex omega;
    Complex tau;
    // tau^k for k in [0, d'); tau has multiplicative order exactly d'.
    std::vector<Complex> tau_powers;

    const Complex& tau_pow(int64_t k) const {
        int64_t r = k % d_prime;
        if (r < 0) r += d_prime;
        return tau_powers[static_cast<size_t>(r)];
    }
    // omega^k = tau^{2k}
    const Complex& omega_pow(int64_t k) const { return tau_pow(2 * (k % d_prime)); }

    Real unitarity_tolerance() const;
};

struct DisplacementIndex {
    int p1 = 0, p2 = 0;  // canonical range [0, d')

    bool operator==(const DisplacementIndex&) const = default;
    bool operator<(const DisplacementIndex& o) const {
        return p1 != o.p1 ? p1 < o.p1 : p2 < o.p2;
    }
};

// 2x2 matrix [[a, b], [c, e]] over Z/d'Z with determinant +-1.
struct SymplecticMatrix {
    int64_t a = 1, b = 0, c = 0, e = 1;

    bool operator==(const SymplecticMatrix&) const = default;
    bool operator<(const SymplecticMatrix& o) const {
        if (a != o.a) return a < o.a;
        if (b != o.b) return b < o.b;
        if (c != o.c) return c < o.c;
        return e < o.e;
    }
};

// Dense operator at context precision. When antiunitary_flag is set the
// operator acts as v -> entries * conj(v).
struct UnitaryOperator {
    CMatrix entries;
    bool antiunitary_flag = false;
};

class InvalidDimensionError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};
class InvariantViolationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

DimensionContext make_context(int d, int precision_bits = 256);

int64_t mod_dp(const DimensionContext& ctx, int64_t x);
DisplacementIndex reduce_index(const DimensionContext& ctx, int64_t p1, int64_t p2);
bool index_is_zero_mod_d(const DimensionContext& ctx, DisplacementIndex p);

UnitaryOperator displacement(const DimensionContext& ctx, DisplacementIndex p);

// out = D_p v without forming the matrix; out must have size d.
void apply_displacement(const DimensionContext& ctx, DisplacementIndex p,
                        const CVector& v, CVector& out);

// <v| D_p |v> in O(d)
Complex displacement_overlap(const DimensionContext& ctx, DisplacementIndex p,
                             const CVector& v);

Real verify_displacement_orthogonality(const DimensionContext& ctx);

SymplecticMatrix zauner_matrix(const DimensionContext& ctx);
SymplecticMatrix fa_matrix(const DimensionContext& ctx);

int64_t symplectic_det(const SymplecticMatrix& f, const DimensionContext& ctx);
bool is_valid_symplectic(const SymplecticMatrix& f, const DimensionContext& ctx);
SymplecticMatrix symplectic_mul(const SymplecticMatrix& f, const SymplecticMatrix& g,
                                const DimensionContext& ctx);
SymplecticMatrix symplectic_inverse(const SymplecticMatrix& f,
                                    const DimensionContext& ctx);
SymplecticMatrix symplectic_reduce(const SymplecticMatrix& f,
                                   const DimensionContext& ctx);
int symplectic_order(const SymplecticMatrix& f, const DimensionContext& ctx,
                     int bound = 1 << 20);
bool is_canonical_order3(const SymplecticMatrix& f, const DimensionContext& ctx);

DisplacementIndex apply_symplectic(const SymplecticMatrix& f, DisplacementIndex p,
                                   const DimensionContext& ctx);

// gcd(x, n) == 1
bool invertible_mod(int64_t x, int64_t n);
// inverse of x mod n; throws InvariantViolationError if not invertible
int64_t inverse_mod(int64_t x, int64_t n);

}  // namespace sic
