#pragma once

#include "sic/prec.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace sic {

struct DiscriminantRecord {
    int64_t d = 0;
    Int D;        // square-free part of (d-3)(d+1)
    int64_t d_prime = 0;
};

struct DimensionSequence {
    Int D;
    Int d1;                 // fundamental solution dimension
    std::vector<Int> terms;
    std::vector<Int> m_values;  // (d-1)^2 - m^2 D = 4 companions
};

struct Tower {
    std::vector<Int> chain;  // each term divides its successor
};

// largest square-free divisor with n / result a perfect square
Int squarefree_part(const Int& n);

DiscriminantRecord sic_discriminant(int64_t d);

// Smallest d > 3 with (d-1)^2 - m^2 D = 4 solvable, via the continued-fraction
// fundamental-unit method. Returns (d1, m1).
std::pair<Int, Int> pell_fundamental(const Int& D);

// Independent check: scan m = 1, 2, ... up to max_m for the smallest solution.
std::optional<std::pair<Int, Int>> pell_fundamental_bruteforce(const Int& D,
                                                               uint64_t max_m);

DimensionSequence dimension_sequence(const Int& D, int count);

// Chebyshev route, exact rational arithmetic: 1 + 2 T_j((d1-1)/2)
Int chebyshev_dimension(const Int& d1, int j);

std::vector<Tower> dimension_towers(const DimensionSequence& seq, int max_len);

int64_t dprime(int64_t d);

}  // namespace sic
