#include "arveson/tractability.hpp"

#include <algorithm>
#include <numeric>

namespace arveson {

namespace {

// Rank tolerance for dimension checks of sums and intersections.
constexpr double kRankTol = 1e-9;

std::vector<int> dims_of(const std::vector<Subspace>& parts) {
    std::vector<int> out;
    out.reserve(parts.size());
    for (const auto& p : parts) out.push_back(p.dim());
    return out;
}

// Express parts in the coordinates of an orthonormal basis q of a subspace containing them.
std::vector<Subspace> compress(const std::vector<Subspace>& parts, const Mat& q) {
    std::vector<Subspace> out;
    out.reserve(parts.size());
    for (const auto& p : parts) out.push_back(Subspace::span(q.adjoint() * p.basis(), kRankTol));
    return out;
}

struct Classifier {
    double tol;
    std::optional<Subspace> top_e;

    bool run(const std::vector<Subspace>& parts, int depth, std::vector<TraceRecord>& trace) {
        const int d = parts.front().ambient_dim();
        TraceRecord rec{depth, "", d, dims_of(parts)};
        auto accept = [&](const char* clause) {
            rec.clause = clause;
            trace.insert(trace.begin(), rec);
            return true;
        };

        if (parts.size() == 1) return accept("1a");
        if (d <= 3) return accept("1d");
        for (const auto& p : parts)
            if (p.dim() == d - 1) return accept("1c");

        bool all_full = true;
        for (std::size_t i = 0; i < parts.size() && all_full; ++i)
            for (std::size_t j = i + 1; j < parts.size() && all_full; ++j)
                all_full = subspace_sum(parts[i], parts[j], kRankTol).dim() == d;
        if (all_full) return accept("1b");

        Subspace e = intersect(parts[0], parts[1], tol);
        bool all_equal = !e.is_zero();
        for (std::size_t i = 0; i < parts.size() && all_equal; ++i)
            for (std::size_t j = i + 1; j < parts.size() && all_equal; ++j)
                all_equal = same_subspace(intersect(parts[i], parts[j], tol), e);
        if (all_equal) {
            if (depth == 0) top_e = e;
            return accept("1a");
        }

        Subspace common = intersect_all(parts, tol);
        if (!common.is_zero() && common.dim() < d) {
            Mat q = common.orth_complement().basis();
            std::vector<TraceRecord> sub;
            if (run(compress(parts, q), depth + 1, sub)) {
                if (depth == 0) top_e = common;
                trace.insert(trace.begin(), sub.begin(), sub.end());
                return accept("2");
            }
        }

        // Finest grouping whose group spans meet pairwise trivially.
        std::vector<int> group(parts.size());
        std::iota(group.begin(), group.end(), 0);
        bool merged = true;
        while (merged) {
            merged = false;
            std::vector<int> labels;
            for (int g : group)
                if (std::find(labels.begin(), labels.end(), g) == labels.end()) labels.push_back(g);
            std::vector<Subspace> spans;
            for (int g : labels) {
                std::vector<Subspace> members;
                for (std::size_t i = 0; i < parts.size(); ++i)
                    if (group[i] == g) members.push_back(parts[i]);
                spans.push_back(subspace_sum(members, kRankTol));
            }
            for (std::size_t a = 0; a < labels.size() && !merged; ++a)
                for (std::size_t b = a + 1; b < labels.size() && !merged; ++b)
                    if (!intersect(spans[a], spans[b], tol).is_zero()) {
                        for (int& g : group)
                            if (g == labels[b]) g = labels[a];
                        merged = true;
                    }
        }
        std::vector<int> labels;
        for (int g : group)
            if (std::find(labels.begin(), labels.end(), g) == labels.end()) labels.push_back(g);
        if (labels.size() >= 2) {
            std::vector<TraceRecord> sub;
            bool ok = true;
            for (int g : labels) {
                std::vector<Subspace> members;
                for (std::size_t i = 0; i < parts.size(); ++i)
                    if (group[i] == g) members.push_back(parts[i]);
                Mat q = subspace_sum(members, kRankTol).basis();
                std::vector<TraceRecord> inner;
                if (!run(compress(members, q), depth + 1, inner)) {
                    ok = false;
                    break;
                }
                sub.insert(sub.end(), inner.begin(), inner.end());
            }
            if (ok) {
                trace.insert(trace.begin(), sub.begin(), sub.end());
                return accept("3");
            }
        }
        return false;
    }
};

}  // namespace

TractabilityVerdict classify(const std::vector<Subspace>& parts, double tol) {
    if (parts.empty()) throw ValidationError("classify: empty arrangement");
    const int d = parts.front().ambient_dim();
    for (const auto& p : parts) require_same_ambient(parts.front(), p);
    if (subspace_sum(parts, kRankTol).dim() != d)
        throw ValidationError("classify: parts do not span C^" + std::to_string(d));

    Classifier c{tol, std::nullopt};
    TractabilityVerdict v;
    v.tractable = c.run(parts, 0, v.trace);
    if (v.tractable) {
        v.common_e = c.top_e;
    } else {
        v.trace = {TraceRecord{0, "none", d, dims_of(parts)}};
    }
    return v;
}

TractabilityVerdict classify(const Arrangement& arr, double tol) { return classify(arr.parts(), tol); }

}  // namespace arveson
