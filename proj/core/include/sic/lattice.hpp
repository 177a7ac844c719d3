#pragma once

#include "sic/prec.hpp"

#include <vector>

namespace sic {

// In-place LLL reduction of the row basis (Lovasz parameter delta). Row
// operations are exact over cpp_int; the Gram-Schmidt bookkeeping runs in
// MPFR at gso_bits.
void lll_reduce(std::vector<std::vector<Int>>& basis, double delta = 0.99,
                int gso_bits = 0 /* 0: derived from entry sizes */);

}  // namespace sic
