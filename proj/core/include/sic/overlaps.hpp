#pragma once

#include "sic/fiducial_search.hpp"

#include <map>
#include <vector>

namespace sic {

class CapabilityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Overlaps Tr(Pi D_p) for all p mod d' with p != 0 mod d, and the unit-modulus
// phases overlap * sqrt(d+1).
struct OverlapTable {
    int d = 0;
    int d_prime = 0;
    int precision_bits = 0;
    Real residual;  // of the source fiducial
    std::map<DisplacementIndex, Complex> entries;
    std::map<DisplacementIndex, Complex> phases;
};

// For even d the sweep over ESL(2, Z/2d) picks up the congruence kernel
// (F = I mod d, whose Clifford element is a pure displacement), so the
// structural statements live on the mod-d image: `centred` asks each mod-d
// class for a displacement-free lift, and stb(Pi) is built from those lifts.
struct StabilityReport {
    std::vector<SymplecticMatrix> symplectic_stabilizers;  // S0(Pi), mod d'
    std::vector<SymplecticMatrix> overlap_stabilizers;     // stb(Pi) = {(det F) F}, q = 0 lifts
    std::map<SymplecticMatrix, DisplacementIndex> displacement_parts;
    bool centred = false;
    bool canonical_order3_present = false;
};

struct CentreResult {
    Fiducial fiducial;
    bool centred = false;
    DisplacementIndex shift;
};

struct OverlapPartition {
    std::vector<std::vector<DisplacementIndex>> parts;
    int violations = 0;
};

OverlapTable compute_overlaps(const DimensionContext& ctx, const Fiducial& f);

// Brute-force sweep over ESL(2, Z/d'Z); every F whose Clifford (anti)unitary,
// combined with some displacement, fixes the projector within tol.
StabilityReport stability_group(const DimensionContext& ctx, const Fiducial& f,
                                const Real& tol, int dimension_bound = 16);

CentreResult centre_fiducial(const DimensionContext& ctx, const Fiducial& f);

// Groups indices by approximate overlap equality (single linkage) and checks
// that every stb(Pi) orbit stays inside one part.
OverlapPartition overlap_orbit_partition(const DimensionContext& ctx,
                                         const OverlapTable& t,
                                         const StabilityReport& report,
                                         const Real& tol);

// deduplicated image of the set in ESL(2, Z/dZ); the identity map for odd d'
std::vector<SymplecticMatrix> reduce_mod_d(const std::vector<SymplecticMatrix>& set,
                                           int64_t d);

// set closure under multiplication and inverse mod the given modulus
bool is_closed_group(const std::vector<SymplecticMatrix>& set, int64_t modulus);
bool is_closed_group(const std::vector<SymplecticMatrix>& set,
                     const DimensionContext& ctx);

// true iff some element's powers enumerate the whole set
bool is_cyclic_group(const std::vector<SymplecticMatrix>& set, int64_t modulus);
bool is_cyclic_group(const std::vector<SymplecticMatrix>& set,
                     const DimensionContext& ctx);

}  // namespace sic
