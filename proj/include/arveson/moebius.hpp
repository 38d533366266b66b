#pragma once

#include "arveson/fock.hpp"

namespace arveson {

/// F = U * Phi_a, so F(a) = 0.
struct Automorphism {
    Vec a;
    Mat u;

    Automorphism() = default;
    Automorphism(Vec a, Mat u);

    static Automorphism identity(int d);
    static Automorphism elementary(const Vec& a);

    int dim() const { return static_cast<int>(a.size()); }
    Vec operator()(const Vec& x) const;
    Automorphism inverse() const;
    /// (*this) after g.
    Automorphism after(const Automorphism& g) const;
};

/// Phi_a(x) = (a - P_a x - s_a (I - P_a) x) / (1 - <x, a>)
Vec phi(const Vec& a, const Vec& x);
Vec apply(const Automorphism& f, const Vec& x);

/// sqrt(1 - |a|^2) / (1 - <x, a>)
Complex delta(const Vec& a, const Vec& x);

/// ||Phi_b(a)||
double pseudohyperbolic(const Vec& a, const Vec& b);

struct KernelResidual {
    double identity = 0.0;  // 1 - <Fx, Fy> against the closed form
    double kernel = 0.0;    // k(x, y) against delta(x) conj(delta(y)) k(Fx, Fy), relative
};

KernelResidual kernel_identity_residual(const Automorphism& f, const Vec& x, const Vec& y);

/// ||W + D - G|| / ||G|| with W_ij = <F p_i, F p_j> k(p_i, p_j), D_ij = delta(p_i) conj(delta(p_j)).
double defect_identity_residual(const Automorphism& f, const PointSet& points);
/// Same assembly for an arbitrary self-map of the ball with designated a.
double defect_identity_residual(const std::function<Vec(const Vec&)>& f, const Vec& a, const PointSet& points);

/// Haar unitary and a point drawn from the ball.
Automorphism random_automorphism(int d, Rng& rng, double r_max = 0.9);

}  // namespace arveson
