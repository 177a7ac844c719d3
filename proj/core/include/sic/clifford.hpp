#pragma once

#include "sic/prec.hpp"
#include "sic/wh_group.hpp"

namespace sic {

class OrderUndeterminedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CliffordElement {
    SymplecticMatrix symplectic_part;
    DisplacementIndex displacement_part;
    UnitaryOperator op;
};

// U_F with U_F D_p U_F^dag = D_{Fp} up to a global phase. det F = -1 mod d'
// yields an antiunitary (matrix plus conjugation flag).
UnitaryOperator clifford_unitary(const DimensionContext& ctx, SymplecticMatrix f);

// max over nonzero p in (Z/dZ)^2 of the phase-aligned distance between
// conjugation of D_p by u and D_{Fp}
Real covariance_error(const DimensionContext& ctx, const UnitaryOperator& u,
                      const SymplecticMatrix& f);

// Smallest k >= 1 with u^k proportional to the identity.
int projective_order(const DimensionContext& ctx, const UnitaryOperator& u,
                     int bound = 24);

// Composition x after y of (anti)unitaries: (X, fX)(Y, fY) = (X sigma_fX(Y), fX ^ fY).
UnitaryOperator compose(const UnitaryOperator& x, const UnitaryOperator& y);

// max entrywise |a - phase*b| with the phase chosen to align b to a
Real phase_aligned_distance(const CMatrix& a, const CMatrix& b);

// Conjugation action x -> u x u^dag (with input conjugated first when u is
// antiunitary).
CMatrix conjugate_by(const UnitaryOperator& u, const CMatrix& x);

}  // namespace sic
