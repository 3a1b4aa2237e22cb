#pragma once

#include <vector>

#include "capture/rational.hpp"

namespace capture {

// Separatrix-series coefficients B_n together with their integer transform
// b_n = n!(n+1)! B_n.  Both lists run from index 0 to max_order inclusive.
struct CoefficientTable {
    std::vector<Rational> B;
    std::vector<Int> b;
    int max_order = 0;
};

// B_0 = 1,  B_{n+1} = (1/((n+1)(n+2))) sum_{k=0}^{n} B_k B_{n-k}.
// Exact; fills the integer column as well (asserting integrality).
CoefficientTable generate_B(int N);

// b_n = n!(n+1)! B_n.  Throws InternalInconsistencyError if any value fails
// to be an integer, which would mean generate_B is broken.
std::vector<Int> integer_b(const CoefficientTable& table);

// The companion integer sequence d_n = n!(n+1)! D_n where
//   D_0 = 1,  D_{n+1} = (1/(n+2)) sum_{k=0}^{n} D_k D_{n-k},
// i.e. the B recurrence without the 1/(n+1) factor.  First values
// 1, 1, 4, 33, 456, 9460, 274800; in the Bessel generating identity the
// n-th entry carries the (n+1)-st power of the expansion variable.
std::vector<Int> sequence_d(int N);

// Catalan numbers C_0..C_N, computed via both the convolution recurrence
// and the closed form (2n)!/((n+1)! n!); the two must agree.
std::vector<Int> catalan(int N);

}  // namespace capture
