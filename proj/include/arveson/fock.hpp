#pragma once

#include "arveson/arrangement.hpp"

#include <functional>
#include <vector>

namespace arveson {

class Rng;

using PointSet = std::vector<Vec>;

/// Exponent vectors of degree n in d variables, descending lexicographic
/// order: for d = 2, n = 2 this is (2,0), (1,1), (0,2).
const std::vector<std::vector<int>>& multi_indices(int d, int n);

/// Position of a multi-index inside multi_indices(d, |alpha|).
int multi_index_position(const std::vector<int>& alpha);

/// dim Sym^n(C^d) = C(n + d - 1, n).
int sym_dim(int d, int n);

/// sqrt(n! / alpha!)
double monomial_weight(const std::vector<int>& alpha);

/// Coordinates of x^n in the weighted monomial basis sqrt(n!/alpha!) z^alpha.
Vec embed_power(const Vec& x, int n);

/// Matrix of Sym^n(a) in the weighted monomial bases; a may be rectangular
/// (m x d gives a sym_dim(m,n) x sym_dim(d,n) matrix).
Mat sym_power(const Mat& a, int n);

/// 1 / (1 - <x, y>)
Complex da_kernel(const Vec& x, const Vec& y);

/// [k(p_i, p_j)]
Mat gram(const PointSet& points);

/// f(x) = sum_n <x^n, xi_n> for a graded stack xi_0..xi_N.
struct TruncatedFunction {
    int ambient_dim = 0;
    std::vector<Vec> components;

    int max_degree() const { return static_cast<int>(components.size()) - 1; }
    double norm() const;
    Complex operator()(const Vec& x) const;

    /// k_y truncated at degree N.
    static TruncatedFunction kernel(const Vec& y, int max_degree);
};

/// n-th homogeneous component of f at x by the trapezoid rule on m roots of unity.
Complex homogeneous_component(const std::function<Complex(const Vec&)>& f, int max_degree, int n, const Vec& x,
                              int quadrature_points);

/// Orthonormal basis (columns) of V^n = sum_i Sym^n(M_i) inside Sym^n(C^d).
struct DegreeSpace {
    int degree = 0;
    Mat basis;
    int dim() const { return static_cast<int>(basis.cols()); }
};

DegreeSpace degree_space(const Arrangement& arr, int n, double tol = kDefaultTol);
DegreeSpace degree_space(const std::vector<Subspace>& parts, int n, double tol = kDefaultTol);

/// sqrt of the top eigenvalue of the pencil (W, G) with G positive definite.
/// Directions of G below cutoff * lambda_max are discarded.
double pencil_sqrt_max(const Mat& w, const Mat& g, double cutoff = 1e-7);

/// Gram-pencil lower bound for the multiplier norm of F: smallest c with
/// [(c^2 - <F(p_i), F(p_j)>) k(p_i, p_j)] positive semidefinite on the sample.
double multiplier_norm_lb(const std::function<Vec(const Vec&)>& f, const PointSet& points, double cutoff = 1e-7);
double multiplier_norm_lb(const Mat& a, const PointSet& points, double cutoff = 1e-7);

/// Sample points of the union: a part chosen uniformly, then a uniform
/// direction in it with radius uniform in [r_min, r_max].
PointSet sample_union(const std::vector<Subspace>& parts, int count, Rng& rng, double r_min = 0.3,
                      double r_max = 0.9);

void check_in_ball(const Vec& x, const char* what);

}  // namespace arveson
