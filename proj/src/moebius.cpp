#include "arveson/moebius.hpp"
#include "arveson/random.hpp"

#include <cmath>

namespace arveson {

Automorphism::Automorphism(Vec a_, Mat u_) : a(std::move(a_)), u(std::move(u_)) {
    check_in_ball(a, "automorphism");
    if (u.rows() != a.size() || u.cols() != a.size())
        throw ValidationError("automorphism: unitary has the wrong size");
    if (unitarity_defect(u) > 1e-12) throw ValidationError("automorphism: u is not unitary");
}

Automorphism Automorphism::identity(int d) {
    Vec zero = Vec::Zero(d);
    return Automorphism(zero, -Mat::Identity(d, d));
}

Automorphism Automorphism::elementary(const Vec& a) {
    const auto d = a.size();
    return Automorphism(a, Mat::Identity(d, d));
}

Vec phi(const Vec& a, const Vec& x) {
    if (a.size() != x.size()) throw ValidationError("phi: dimension mismatch");
    check_in_ball(x, "phi");
    const double na2 = a.squaredNorm();
    const double s = std::sqrt(1.0 - na2);
    Vec px = Vec::Zero(x.size());
    if (na2 > 0.0) px = a * (inner(x, a) / na2);
    return (a - px - s * (x - px)) / (1.0 - inner(x, a));
}

Vec apply(const Automorphism& f, const Vec& x) { return f(x); }

Vec Automorphism::operator()(const Vec& x) const { return u * phi(a, x); }

namespace {

// Given H with H(a2) = 0, the unitary U' with H = U' Phi_{a2}, read off from
// H(Phi_{a2}(z)) = U' z and projected back onto the unitary group.
template <class Map>
Mat recover_unitary(const Map& h, const Vec& a2) {
    const auto d = a2.size();
    Mat u2(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        Vec z = Vec::Zero(d);
        z(i) = 0.5;
        u2.col(i) = h(phi(a2, z)) / 0.5;
    }
    Eigen::JacobiSVD<Mat> svd(u2, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return svd.matrixU() * svd.matrixV().adjoint();
}

}  // namespace

Automorphism Automorphism::inverse() const {
    // F^{-1} = Phi_a U*, which vanishes at U a.
    Vec a2 = u * a;
    return Automorphism(a2, recover_unitary([this](const Vec& y) { return phi(a, Vec(u.adjoint() * y)); }, a2));
}

Automorphism Automorphism::after(const Automorphism& g) const {
    if (g.dim() != dim()) throw ValidationError("compose: dimension mismatch");
    Vec a2 = g.inverse()(a);
    return Automorphism(a2, recover_unitary([&](const Vec& z) { return (*this)(g(z)); }, a2));
}

Complex delta(const Vec& a, const Vec& x) {
    return std::sqrt(1.0 - a.squaredNorm()) / (1.0 - inner(x, a));
}

double pseudohyperbolic(const Vec& a, const Vec& b) {
    check_in_ball(b, "pseudohyperbolic");
    return phi(b, a).norm();
}

KernelResidual kernel_identity_residual(const Automorphism& f, const Vec& x, const Vec& y) {
    Vec fx = f(x), fy = f(y);
    const Vec& a = f.a;
    Complex lhs = 1.0 - inner(fx, fy);
    Complex rhs = (1.0 - a.squaredNorm()) * (1.0 - inner(x, y)) / ((1.0 - inner(x, a)) * (1.0 - inner(a, y)));
    Complex k = da_kernel(x, y);
    Complex kk = delta(a, x) * std::conj(delta(a, y)) * da_kernel(fx, fy);
    return {std::abs(lhs - rhs), std::abs(k - kk) / std::abs(k)};
}

double defect_identity_residual(const std::function<Vec(const Vec&)>& f, const Vec& a, const PointSet& points) {
    const auto n = static_cast<Eigen::Index>(points.size());
    if (n == 0) throw ValidationError("defect_identity_residual: no points");
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if ((points[i] - points[j]).norm() < 1e-12)
                throw NumericalError("defect_identity_residual: repeated points give a singular Gram");
    Mat g = gram(points);
    std::vector<Vec> fp;
    std::vector<Complex> dp;
    for (const auto& p : points) {
        fp.push_back(f(p));
        dp.push_back(delta(a, p));
    }
    Mat m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            auto si = static_cast<std::size_t>(i), sj = static_cast<std::size_t>(j);
            m(i, j) = inner(fp[si], fp[sj]) * g(i, j) + dp[si] * std::conj(dp[sj]) - g(i, j);
        }
    return op_norm(m) / op_norm(g);
}

double defect_identity_residual(const Automorphism& f, const PointSet& points) {
    return defect_identity_residual([&f](const Vec& x) { return f(x); }, f.a, points);
}

Automorphism random_automorphism(int d, Rng& rng, double r_max) {
    Vec a = rng.ball_point(d, r_max);
    return Automorphism(a, rng.unitary(d));
}

}  // namespace arveson
