#pragma once

#include <vector>

#include "svir/scalar.hpp"

namespace svir {

/// All alpha in Q(i) with alpha^k = q, k >= 1, sorted deterministically.
/// There are at most four (two roots differ by a k-th root of unity in Q(i),
/// and those are just {1,-1,i,-i} intersected with the k-th roots of unity).
/// Every returned root is verified exactly; the numeric step only proposes
/// candidates. Throws svir::error when a candidate magnitude exceeds the
/// supported range (~2^58), which is far beyond desk scale.
std::vector<Scalar> kth_roots(const Scalar& q, std::int64_t k);

/// Square roots in Q(i); empty when q is not a square there.
inline std::vector<Scalar> sqrt_roots(const Scalar& q) { return kth_roots(q, 2); }

} // namespace svir
