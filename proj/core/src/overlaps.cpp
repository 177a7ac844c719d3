#include "sic/overlaps.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace sic {

namespace {

void require_converged(const Fiducial& f) {
    if (!(f.residual < Real("1e-8")))
        throw std::domain_error(
            "fiducial not converged (residual " + real_to_string(f.residual) +
            "); search or polish it first");
}

CVector apply_operator(const UnitaryOperator& u, const CVector& v) {
    CVector arg = v;
    if (u.antiunitary_flag)
        for (Complex& z : arg) z = conj(z);
    return mat_vec(u.entries, arg);
}

}  // namespace

OverlapTable compute_overlaps(const DimensionContext& ctx, const Fiducial& f) {
    require_converged(f);
    PrecisionGuard guard(ctx.precision_bits);
    OverlapTable t;
    t.d = ctx.d;
    t.d_prime = ctx.d_prime;
    t.precision_bits = ctx.precision_bits;
    t.residual = f.residual;
    Real root = sqrt(Real(ctx.d + 1));
    for (int p1 = 0; p1 < ctx.d_prime; ++p1)
        for (int p2 = 0; p2 < ctx.d_prime; ++p2) {
            DisplacementIndex p{p1, p2};
            if (index_is_zero_mod_d(ctx, p)) continue;
            Complex ov = displacement_overlap(ctx, p, f.vector);
            t.entries[p] = ov;
            t.phases[p] = ov * root;
        }
    return t;
}

StabilityReport stability_group(const DimensionContext& ctx, const Fiducial& f,
                                const Real& tol, int dimension_bound) {
    require_converged(f);
    if (ctx.d > dimension_bound)
        throw CapabilityError("stability_group: dimension above enumeration bound");
    PrecisionGuard guard(ctx.precision_bits);
    const int d = ctx.d;
    const int dp = ctx.d_prime;
    const CVector& v = f.vector;

    StabilityReport rep;

    for (int a = 0; a < dp; ++a)
        for (int b = 0; b < dp; ++b)
            for (int c = 0; c < dp; ++c)
                for (int e = 0; e < dp; ++e) {
                    SymplecticMatrix fm{a, b, c, e};
                    if (!is_valid_symplectic(fm, ctx)) continue;
                    UnitaryOperator u = clifford_unitary(ctx, fm);
                    CVector w = apply_operator(u, v);
                    // a stabilizing F satisfies w ~ D_q v for exactly one q
                    Real best = 0;
                    DisplacementIndex best_q{0, 0};
                    CVector dqv(d);
                    for (int q1 = 0; q1 < d; ++q1)
                        for (int q2 = 0; q2 < d; ++q2) {
                            apply_displacement(ctx, {q1, q2}, v, dqv);
                            Real m = abs(inner(dqv, w));
                            if (m > best) {
                                best = m;
                                best_q = {q1, q2};
                            }
                        }
                    if (1 - best < tol) {
                        rep.symplectic_stabilizers.push_back(fm);
                        rep.displacement_parts[fm] = best_q;
                        if (best_q == DisplacementIndex{0, 0}) {
                            int64_t det = symplectic_det(fm, ctx);
                            int64_t s = (det == 1) ? 1 : -1;
                            rep.overlap_stabilizers.push_back(symplectic_reduce(
                                {s * fm.a, s * fm.b, s * fm.c, s * fm.e}, ctx));
                        }
                        if (is_canonical_order3(fm, ctx))
                            rep.canonical_order3_present = true;
                    }
                }

    std::sort(rep.symplectic_stabilizers.begin(), rep.symplectic_stabilizers.end());
    std::sort(rep.overlap_stabilizers.begin(), rep.overlap_stabilizers.end());
    rep.overlap_stabilizers.erase(
        std::unique(rep.overlap_stabilizers.begin(), rep.overlap_stabilizers.end()),
        rep.overlap_stabilizers.end());

    // centred: every mod-d class of stabilizers has a displacement-free lift
    std::map<SymplecticMatrix, bool> classes;
    for (const SymplecticMatrix& fm : rep.symplectic_stabilizers) {
        SymplecticMatrix key{fm.a % d, fm.b % d, fm.c % d, fm.e % d};
        bool free_lift = rep.displacement_parts[fm] == DisplacementIndex{0, 0};
        auto [it, inserted] = classes.emplace(key, free_lift);
        if (!inserted) it->second = it->second || free_lift;
    }
    rep.centred = true;
    for (const auto& [key, has_free] : classes)
        if (!has_free) rep.centred = false;
    return rep;
}

CentreResult centre_fiducial(const DimensionContext& ctx, const Fiducial& f) {
    require_converged(f);
    PrecisionGuard guard(ctx.precision_bits);
    const int d = ctx.d;
    Real tol = ctx.unitarity_tolerance();
    StabilityReport rep = stability_group(ctx, f, tol);
    CentreResult res;
    if (rep.centred) {
        res.fiducial = f;
        res.centred = true;
        res.shift = {0, 0};
        return res;
    }

    for (int q1 = 0; q1 < d; ++q1)
        for (int q2 = 0; q2 < d; ++q2) {
            CVector w(d);
            apply_displacement(ctx, {q1, q2}, f.vector, w);
            bool ok = true;
            for (const SymplecticMatrix& fm : rep.symplectic_stabilizers) {
                UnitaryOperator u = clifford_unitary(ctx, fm);
                CVector uw = apply_operator(u, w);
                if (1 - abs(inner(w, uw)) >= tol) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                res.fiducial = f;
                res.fiducial.vector = std::move(w);
                normalize(res.fiducial.vector);
                DimensionContext local = ctx;
                res.fiducial.residual = sic_residual(local, res.fiducial.vector);
                res.centred = true;
                res.shift = {q1, q2};
                return res;
            }
        }

    res.fiducial = f;
    res.centred = false;
    res.shift = {0, 0};
    return res;
}

OverlapPartition overlap_orbit_partition(const DimensionContext& ctx,
                                         const OverlapTable& t,
                                         const StabilityReport& report,
                                         const Real& tol) {
    std::vector<DisplacementIndex> idx;
    std::vector<Complex> vals;
    for (const auto& [p, ov] : t.entries) {
        idx.push_back(p);
        vals.push_back(ov);
    }
    const int n = static_cast<int>(idx.size());

    // single-linkage union-find on approximate equality
    std::vector<int> parent(n);
    for (int i = 0; i < n; ++i) parent[i] = i;
    std::function<int(int)> find = [&](int i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (abs(vals[i] - vals[j]) < tol) parent[find(i)] = find(j);

    std::map<DisplacementIndex, int> cluster;
    for (int i = 0; i < n; ++i) cluster[idx[i]] = find(i);

    OverlapPartition out;
    std::map<int, std::vector<DisplacementIndex>> groups;
    for (int i = 0; i < n; ++i) groups[find(i)].push_back(idx[i]);
    for (auto& [root, members] : groups) {
        std::sort(members.begin(), members.end());
        out.parts.push_back(members);
    }
    std::sort(out.parts.begin(), out.parts.end(),
              [](const auto& x, const auto& y) { return x.front() < y.front(); });

    for (const SymplecticMatrix& g : report.overlap_stabilizers)
        for (int i = 0; i < n; ++i) {
            DisplacementIndex gp = apply_symplectic(g, idx[i], ctx);
            auto it = cluster.find(gp);
            if (it == cluster.end() || it->second != find(i)) ++out.violations;
        }
    return out;
}

namespace {

SymplecticMatrix reduce_mod(const SymplecticMatrix& f, int64_t n) {
    auto m = [n](int64_t x) { return ((x % n) + n) % n; };
    return {m(f.a), m(f.b), m(f.c), m(f.e)};
}

SymplecticMatrix mul_mod(const SymplecticMatrix& f, const SymplecticMatrix& g,
                         int64_t n) {
    return reduce_mod({f.a * g.a + f.b * g.c, f.a * g.b + f.b * g.e,
                       f.c * g.a + f.e * g.c, f.c * g.b + f.e * g.e},
                      n);
}

SymplecticMatrix inv_mod(const SymplecticMatrix& f, int64_t n) {
    int64_t det = ((f.a * f.e - f.b * f.c) % n + n) % n;
    int64_t s = (det == 1) ? 1 : -1;
    if (det != 1 && det != n - 1)
        throw InvariantViolationError("symplectic matrix has determinant != +-1");
    return reduce_mod({s * f.e, -s * f.b, -s * f.c, s * f.a}, n);
}

}  // namespace

std::vector<SymplecticMatrix> reduce_mod_d(const std::vector<SymplecticMatrix>& set,
                                           int64_t d) {
    std::set<SymplecticMatrix> out;
    for (const SymplecticMatrix& f : set) out.insert(reduce_mod(f, d));
    return {out.begin(), out.end()};
}

bool is_closed_group(const std::vector<SymplecticMatrix>& set, int64_t modulus) {
    std::set<SymplecticMatrix> s(set.begin(), set.end());
    for (const auto& x : s) {
        if (!s.count(inv_mod(x, modulus))) return false;
        for (const auto& y : s)
            if (!s.count(mul_mod(x, y, modulus))) return false;
    }
    return true;
}

bool is_closed_group(const std::vector<SymplecticMatrix>& set,
                     const DimensionContext& ctx) {
    return is_closed_group(set, static_cast<int64_t>(ctx.d_prime));
}

bool is_cyclic_group(const std::vector<SymplecticMatrix>& set, int64_t modulus) {
    std::set<SymplecticMatrix> s(set.begin(), set.end());
    for (const auto& g : s) {
        std::set<SymplecticMatrix> gen;
        SymplecticMatrix acc = g;
        for (size_t k = 0; k < s.size() + 1 && gen.insert(acc).second; ++k)
            acc = mul_mod(acc, g, modulus);
        if (gen.size() == s.size()) return true;
    }
    return false;
}

bool is_cyclic_group(const std::vector<SymplecticMatrix>& set,
                     const DimensionContext& ctx) {
    return is_cyclic_group(set, static_cast<int64_t>(ctx.d_prime));
}

}  // namespace sic
