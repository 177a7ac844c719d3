#include "sic/lattice.hpp"

#include <cmath>
#include <stdexcept>

namespace sic {

namespace {

Real int_to_real(const Int& x) { return Real(x.str()); }

Int round_real(const Real& x) {
    std::string s = round(x).str(0, std::ios_base::fixed);
    auto dot = s.find('.');
    if (dot != std::string::npos) s = s.substr(0, dot);
    if (s.empty() || s == "-") s = "0";
    return Int(s);
}

struct Gso {
    int n = 0;
    std::vector<std::vector<Real>> mu;  // strictly lower triangular
    std::vector<Real> B;                // squared norms of the orthogonalized rows

    void compute(const std::vector<std::vector<Int>>& b) {
        n = static_cast<int>(b.size());
        const size_t m = b.empty() ? 0 : b[0].size();
        mu.assign(n, std::vector<Real>(n, Real(0)));
        B.assign(n, Real(0));
        // exact Gram matrix, then GSO from it
        std::vector<std::vector<Real>> g(n, std::vector<Real>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j <= i; ++j) {
                Int dot = 0;
                for (size_t k = 0; k < m; ++k) dot += b[i][k] * b[j][k];
                g[i][j] = int_to_real(dot);
                g[j][i] = g[i][j];
            }
        for (int i = 0; i < n; ++i) {
            B[i] = g[i][i];
            for (int j = 0; j < i; ++j) {
                Real acc = g[i][j];
                for (int k = 0; k < j; ++k) acc -= mu[i][k] * mu[j][k] * B[k];
                mu[i][j] = acc / B[j];
                B[i] -= mu[i][j] * mu[i][j] * B[j];
            }
        }
    }
};

}  // namespace

void lll_reduce(std::vector<std::vector<Int>>& basis, double delta, int gso_bits) {
    const int n = static_cast<int>(basis.size());
    if (n <= 1) return;

    if (gso_bits == 0) {
        unsigned maxbits = 1;
        for (const auto& row : basis)
            for (const Int& x : row)
                if (x != 0) maxbits = std::max(maxbits, msb(abs(x)) + 1);
        gso_bits = static_cast<int>(2 * maxbits) + 96;
    }
    PrecisionGuard guard(gso_bits);

    Gso gso;
    gso.compute(basis);
    const Real half("0.5");
    const Real lovasz(delta);
    int swaps_since_refresh = 0;

    auto size_reduce = [&](int k, int l) {
        if (abs(gso.mu[k][l]) <= half) return;
        Int q = round_real(gso.mu[k][l]);
        Real qr = int_to_real(q);
        for (size_t c = 0; c < basis[k].size(); ++c) basis[k][c] -= q * basis[l][c];
        for (int i = 0; i < l; ++i) gso.mu[k][i] -= qr * gso.mu[l][i];
        gso.mu[k][l] -= qr;
    };

    int k = 1;
    while (k < n) {
        size_reduce(k, k - 1);
        if (gso.B[k] < (lovasz - gso.mu[k][k - 1] * gso.mu[k][k - 1]) * gso.B[k - 1]) {
            std::swap(basis[k], basis[k - 1]);
            // standard GSO swap update
            Real muk = gso.mu[k][k - 1];
            Real bprime = gso.B[k] + muk * muk * gso.B[k - 1];
            if (bprime == 0) throw std::runtime_error("lll_reduce: degenerate lattice");
            Real new_mu = muk * gso.B[k - 1] / bprime;
            gso.B[k] = gso.B[k - 1] * gso.B[k] / bprime;
            gso.B[k - 1] = bprime;
            for (int j = 0; j < k - 1; ++j) std::swap(gso.mu[k][j], gso.mu[k - 1][j]);
            gso.mu[k][k - 1] = new_mu;
            for (int i = k + 1; i < n; ++i) {
                Real t = gso.mu[i][k];
                gso.mu[i][k] = gso.mu[i][k - 1] - muk * t;
                gso.mu[i][k - 1] = t + new_mu * gso.mu[i][k];
            }
            if (++swaps_since_refresh >= 128) {
                gso.compute(basis);
                swaps_since_refresh = 0;
            }
            k = std::max(k - 1, 1);
        } else {
            for (int l = k - 2; l >= 0; --l) size_reduce(k, l);
            ++k;
        }
    }
}

}  // namespace sic
