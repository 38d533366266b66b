#pragma once

#include "arveson/arrangement.hpp"
#include "arveson/random.hpp"

#include <initializer_list>

namespace testing {

using namespace arveson;

inline Vec vec(std::initializer_list<Complex> v) {
    Vec out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (auto c : v) out(i++) = c;
    return out;
}

inline Vec unit(int d, int i) {
    Vec e = Vec::Zero(d);
    e(i) = 1.0;
    return e;
}

inline Subspace span(std::initializer_list<Vec> vs) {
    std::vector<Vec> v(vs);
    return orthonormalize(v);
}

inline Mat diag(std::initializer_list<Complex> v) { return vec(v).asDiagonal(); }

/// Brute-force projector from an arbitrary spanning set (normal equations).
inline Mat brute_projector(const Mat& cols) {
    Mat g = cols.adjoint() * cols;
    return cols * g.completeOrthogonalDecomposition().pseudoInverse() * cols.adjoint();
}

/// Random subspace of dimension k in C^d.
inline Subspace random_subspace(Rng& rng, int d, int k) {
    return Subspace::span(rng.gaussian_matrix(d, k));
}

}  // namespace testing

namespace testing {

/// Map u * diag(sigma) * v* together with its right singular frame v.
struct Prescribed {
    arveson::Mat a;
    arveson::Mat v;
    std::vector<double> sigma;
};

inline Prescribed prescribed_map(arveson::Rng& rng, const std::vector<double>& sigma) {
    const int d = static_cast<int>(sigma.size());
    Prescribed p;
    p.sigma = sigma;
    p.v = rng.unitary(d);
    arveson::Vec s(d);
    for (int i = 0; i < d; ++i) s(i) = sigma[static_cast<std::size_t>(i)];
    p.a = rng.unitary(d) * s.asDiagonal() * p.v.adjoint();
    return p;
}

/// Random maximal subspace on which p.a is isometric: E1 plus the graph of a
/// form-balanced map from a slice of E+ into E-.
inline arveson::Subspace random_isotropic(arveson::Rng& rng, const Prescribed& p) {
    using namespace arveson;
    const int d = static_cast<int>(p.sigma.size());
    std::vector<int> one, plus, minus;
    for (int i = 0; i < d; ++i) {
        double s = p.sigma[static_cast<std::size_t>(i)];
        if (std::abs(s - 1.0) < 1e-12) one.push_back(i);
        else if (s > 1.0) plus.push_back(i);
        else minus.push_back(i);
    }
    const int m = static_cast<int>(std::min(plus.size(), minus.size()));
    const bool plus_small = plus.size() <= minus.size();
    const auto& small = plus_small ? plus : minus;
    const auto& big = plus_small ? minus : plus;
    Mat w = rng.unitary(static_cast<int>(big.size())).leftCols(m);
    Mat cols = Mat::Zero(d, static_cast<Eigen::Index>(one.size()) + m);
    Eigen::Index c = 0;
    for (int i : one) cols.col(c++) = p.v.col(i);
    for (int k = 0; k < m; ++k) {
        Vec x = Vec::Zero(d);
        double hs = std::abs(p.sigma[static_cast<std::size_t>(small[static_cast<std::size_t>(k)])] *
                                 p.sigma[static_cast<std::size_t>(small[static_cast<std::size_t>(k)])] -
                             1.0);
        x += p.v.col(small[static_cast<std::size_t>(k)]);
        for (std::size_t b = 0; b < big.size(); ++b) {
            double hb = std::abs(p.sigma[static_cast<std::size_t>(big[b])] * p.sigma[static_cast<std::size_t>(big[b])] - 1.0);
            x += std::sqrt(hs / hb) * w(static_cast<Eigen::Index>(b), k) * p.v.col(big[b]);
        }
        cols.col(c++) = x;
    }
    return Subspace::span(cols);
}

}  // namespace testing
