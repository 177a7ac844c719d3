#include "sic/number_theory.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sic {

namespace {

using boost::multiprecision::sqrt;

bool is_perfect_square(const Int& n, Int& root) {
    if (n < 0) return false;
    root = sqrt(n);
    return root * root == n;
}

}  // namespace

Int squarefree_part(const Int& n) {
    if (n <= 0) throw std::domain_error("squarefree_part: input must be positive");
    Int rest = n;
    Int d_free = 1;
    const Int bound = Int(1) << 32;

    auto strip = [&](const Int& p) {
        int e = 0;
        while (rest % p == 0) {
            rest /= p;
            ++e;
        }
        if (e % 2 == 1) d_free *= p;
    };

    strip(2);
    strip(3);
    for (Int p = 5; p * p <= rest && p <= bound; p += (p % 6 == 5) ? 2 : 4) strip(p);

    if (rest > 1) {
        // all remaining factors exceed the trial bound or sqrt(rest)
        Int root;
        if (is_perfect_square(rest, root)) {
            // p^2 with p prime: contributes nothing
        } else if (rest < (Int(1) << 64)) {
            // prime, or a product of two distinct primes: square-free either way
            d_free *= rest;
        } else {
            throw std::overflow_error(
                "squarefree_part: cofactor exceeds trial-division range");
        }
    }
    return d_free;
}

DiscriminantRecord sic_discriminant(int64_t d) {
    if (d < 4)
        throw std::domain_error("sic_discriminant: requires d >= 4 (d = 2, 3 are sporadic)");
    DiscriminantRecord rec;
    rec.d = d;
    rec.D = squarefree_part(Int(d - 3) * Int(d + 1));
    rec.d_prime = dprime(d);
    return rec;
}

namespace {

// Fundamental solution of u^2 - D v^2 = +-1 via the continued fraction of
// sqrt(D) (PQa recurrences).
std::pair<Int, Int> cf_unit(const Int& D) {
    Int a0 = sqrt(D);
    Int P = 0, Q = 1, a = a0;
    Int p_prev = 1, p_cur = a0;
    Int q_prev = 0, q_cur = 1;
    for (int it = 0; it < 100000; ++it) {
        Int t = p_cur * p_cur - D * q_cur * q_cur;
        if (t == 1 || t == -1) return {p_cur, q_cur};
        P = a * Q - P;
        Q = (D - P * P) / Q;
        a = (a0 + P) / Q;
        Int p_next = a * p_cur + p_prev;
        Int q_next = a * q_cur + q_prev;
        p_prev = p_cur;
        p_cur = p_next;
        q_prev = q_cur;
        q_cur = q_next;
    }
    throw std::runtime_error("pell_fundamental: continued fraction did not terminate");
}

Int real_round_to_int(const Real& x) {
    std::string s = round(x).str(0, std::ios_base::fixed);
    auto dot = s.find('.');
    if (dot != std::string::npos) s = s.substr(0, dot);
    if (s.empty() || s == "-") s = "0";
    return Int(s);
}

}  // namespace

std::pair<Int, Int> pell_fundamental(const Int& D) {
    if (D <= 1 || squarefree_part(D) != D)
        throw std::domain_error("pell_fundamental: D must be square-free and > 1");

    auto [u, v] = cf_unit(D);
    // force norm +1
    Int uw = u, vw = v;
    if (u * u - D * v * v == -1) {
        uw = u * u + D * v * v;
        vw = 2 * u * v;
    }

    // The fundamental norm-1 unit of the maximal order is either w or its
    // cube root (X + Y sqrt(D))/2; recover the candidate root numerically and
    // verify the cube exactly.
    PrecisionGuard guard(static_cast<int>(msb(uw)) + 160);
    Real ur(uw.str()), vr(vw.str()), Dr(D.str());
    Real wr = ur + vr * sqrt(Dr);
    Real cr = cbrt(wr);
    Real xr = cr + 1 / cr;
    Real yr = (cr - 1 / cr) / sqrt(Dr);
    Int X = real_round_to_int(xr);
    Int Y = real_round_to_int(yr);
    bool cube_ok = X > 0 && Y > 0 && X * X - D * Y * Y == 4 &&
                   X * X * X + 3 * D * X * Y * Y == 8 * uw &&
                   3 * X * X * Y + D * Y * Y * Y == 8 * vw;
    if (!cube_ok) {
        X = 2 * uw;
        Y = 2 * vw;
    }
    return {X + 1, Y};
}

std::optional<std::pair<Int, Int>> pell_fundamental_bruteforce(const Int& D,
                                                               uint64_t max_m) {
    if (D <= 1 || squarefree_part(D) != D)
        throw std::domain_error("pell_fundamental_bruteforce: D must be square-free and > 1");
    if (D < (Int(1) << 32)) {
        const uint64_t Du = D.convert_to<uint64_t>();
        for (uint64_t m = 1; m <= max_m; ++m) {
            unsigned __int128 t = (unsigned __int128)m * m * Du + 4;
            uint64_t s = static_cast<uint64_t>(std::sqrt(static_cast<double>((long double)t)));
            while ((unsigned __int128)s * s > t) --s;
            while ((unsigned __int128)(s + 1) * (s + 1) <= t) ++s;
            if ((unsigned __int128)s * s == t)
                return std::make_pair(Int(s) + 1, Int(m));
        }
        return std::nullopt;
    }
    for (uint64_t m = 1; m <= max_m; ++m) {
        Int t = Int(m) * Int(m) * D + 4;
        Int s;
        if (is_perfect_square(t, s)) return std::make_pair(s + 1, Int(m));
    }
    return std::nullopt;
}

DimensionSequence dimension_sequence(const Int& D, int count) {
    if (count < 1) throw std::domain_error("dimension_sequence: count must be >= 1");
    auto [d1, m1] = pell_fundamental(D);
    DimensionSequence seq;
    seq.D = D;
    seq.d1 = d1;
    Int x1 = d1 - 1;
    Int s_prev = 2, s_cur = x1;
    Int m_prev = 0, m_cur = m1;
    for (int j = 1; j <= count; ++j) {
        Int dj = s_cur + 1;
        if ((dj - 1) * (dj - 1) - m_cur * m_cur * D != 4)
            throw std::logic_error("dimension_sequence: Pell identity violated");
        seq.terms.push_back(dj);
        seq.m_values.push_back(m_cur);
        Int s_next = x1 * s_cur - s_prev;
        Int m_next = x1 * m_cur - m_prev;
        s_prev = s_cur;
        s_cur = s_next;
        m_prev = m_cur;
        m_cur = m_next;
    }
    return seq;
}

Int chebyshev_dimension(const Int& d1, int j) {
    Rational x(d1 - 1, 2);
    Rational t_prev = 1, t_cur = x;
    if (j == 0) return Int(1 + 2 * 1);
    for (int k = 1; k < j; ++k) {
        Rational t_next = 2 * x * t_cur - t_prev;
        t_prev = t_cur;
        t_cur = t_next;
    }
    Rational result = 1 + 2 * t_cur;
    if (denominator(result) != 1)
        throw std::logic_error("chebyshev_dimension: non-integer result");
    return numerator(result);
}

std::vector<Tower> dimension_towers(const DimensionSequence& seq, int max_len) {
    const auto& terms = seq.terms;
    const int n = static_cast<int>(terms.size());

    // cover edges of the divisibility order: i -> j when terms[i] | terms[j]
    // with no k strictly between
    auto divides = [&](int i, int j) { return i != j && terms[j] % terms[i] == 0; };
    std::vector<std::vector<int>> covers(n);
    std::vector<bool> has_pred(n, false);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (!divides(i, j)) continue;
            bool direct = true;
            for (int k = i + 1; k < j && direct; ++k)
                if (divides(i, k) && divides(k, j)) direct = false;
            if (direct) {
                covers[i].push_back(j);
                has_pred[j] = true;
            }
        }

    std::vector<Tower> out;
    std::vector<int> path;
    std::function<void(int)> dfs = [&](int node) {
        path.push_back(node);
        bool at_cap = max_len > 0 && static_cast<int>(path.size()) >= max_len;
        if (covers[node].empty() || at_cap) {
            Tower t;
            for (int i : path) t.chain.push_back(terms[i]);
            out.push_back(std::move(t));
        } else {
            for (int next : covers[node]) dfs(next);
        }
        path.pop_back();
    };
    for (int i = 0; i < n; ++i)
        if (!has_pred[i]) dfs(i);

    std::sort(out.begin(), out.end(), [](const Tower& x, const Tower& y) {
        if (x.chain.front() != y.chain.front()) return x.chain.front() < y.chain.front();
        if (x.chain.size() != y.chain.size()) return x.chain.size() < y.chain.size();
        return x.chain < y.chain;
    });
    return out;
}

int64_t dprime(int64_t d) {
    if (d < 2) throw std::domain_error("dprime: dimension must be >= 2");
    return d % 2 == 0 ? 2 * d : d;
}

}  // namespace sic
