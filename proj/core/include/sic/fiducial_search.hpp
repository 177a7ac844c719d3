#pragma once

#include "sic/clifford.hpp"
#include "sic/prec.hpp"
#include "sic/wh_group.hpp"

#include <cstdint>

namespace sic {

class PolishFailureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class SymmetryType { type_z, type_a, unknown };

struct Fiducial {
    CVector vector;
    int dimension = 0;
    int precision_bits = 0;
    Real residual;
    uint64_t seed = 0;
    SymmetryType symmetry_type = SymmetryType::unknown;
    bool converged = false;
};

struct SearchConfig {
    int max_restarts = 50;
    int inner_iterations = 4000;
    int coarse_precision_bits = 96;
    int polish_precision_bits = 256;
    bool eigenspace_restriction = true;
    SymmetryType eigenspace_kind = SymmetryType::type_z;
    uint64_t rng_seed = 1;
    double target_residual = 1e-12;
};

// max over nonzero p in (Z/dZ)^2 of | |<v|D_p|v>|^2 - 1/(d+1) |
Real sic_residual(const DimensionContext& ctx, const CVector& v);

// sum over all p in (Z/dZ)^2 of |<v|D_p|v>|^4; minimum 2d/(d+1) at fiducials
Real frame_potential(const DimensionContext& ctx, const CVector& v);

// Wirtinger gradient d(frame_potential)/d(conj v), unprojected
CVector frame_potential_gradient(const DimensionContext& ctx, const CVector& v);

// Orthonormal basis of the largest eigenspace of the phase-normalized U_F
// (eigenvalues made cube roots of unity; ties broken toward eigenvalue 1).
std::vector<CVector> zauner_eigenspace_basis(const DimensionContext& ctx,
                                             const SymplecticMatrix& f);

Fiducial search(const DimensionContext& ctx, const SearchConfig& cfg);

// Second-order re-optimization at `bits` precision. Requires an input
// residual below 1e-6; targets 10^{-bits/5} or better.
Fiducial polish(const DimensionContext& ctx, const Fiducial& f, int bits);

}  // namespace sic
