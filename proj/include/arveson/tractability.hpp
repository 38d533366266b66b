#pragma once

#include "arveson/arrangement.hpp"

#include <optional>
#include <string>
#include <vector>

namespace arveson {

struct TraceRecord {
    int depth = 0;
    std::string clause;  // "1a" "1b" "1c" "1d" "2" "3", or "none" on failure
    int ambient_dim = 0;
    std::vector<int> part_dims;
};

struct TractabilityVerdict {
    bool tractable = false;
    std::vector<TraceRecord> trace;
    std::optional<Subspace> common_e;
};

/// Decides tractability of a union of subspaces spanning C^d and records
/// which clause fired at every recursion level. Clauses are tried in the
/// order 1d, 1c, 1b, 1a (nonzero E), 2, 3; a union whose parts meet
/// pairwise trivially is reported through the grouping clause 3 with
/// singleton groups.
TractabilityVerdict classify(const Arrangement& arr, double tol = kDefaultTol);
TractabilityVerdict classify(const std::vector<Subspace>& parts, double tol = kDefaultTol);

}  // namespace arveson
