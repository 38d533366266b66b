#pragma once

#include "arveson/linalg.hpp"

#include <vector>

namespace arveson {

/// Linear subspace of C^d carried by an orthonormal basis (columns of `basis`).
/// The zero subspace has a d x 0 basis.
class Subspace {
public:
    Subspace() = default;
    /// Takes an already orthonormal basis; checked to 1e-12.
    Subspace(int ambient_dim, Mat basis);

    static Subspace zero(int d);
    static Subspace full(int d);
    /// Span of the given columns (rank-revealing, relative cutoff tol).
    static Subspace span(const Mat& columns, double tol = kDefaultTol);

    int ambient_dim() const { return ambient_dim_; }
    int dim() const { return static_cast<int>(basis_.cols()); }
    bool is_zero() const { return dim() == 0; }
    const Mat& basis() const { return basis_; }

    Mat projector() const { return basis_ * basis_.adjoint(); }
    Subspace orth_complement() const;

    /// Distance of v from the subspace, relative to ||v||.
    double residual(const Vec& v) const;
    bool contains(const Vec& v, double tol = 1e-9) const;
    bool contains(const Subspace& other, double tol = 1e-9) const;

private:
    int ambient_dim_ = 0;
    Mat basis_;
};

/// Subspaces agree when each contains the other at tol.
bool same_subspace(const Subspace& a, const Subspace& b, double tol = 1e-9);

/// A finite union of subspaces of C^d, none contained in another.
class Arrangement {
public:
    Arrangement() = default;
    explicit Arrangement(std::vector<Subspace> parts, double tol = 1e-9);

    int ambient_dim() const { return ambient_dim_; }
    int size() const { return static_cast<int>(parts_.size()); }
    const std::vector<Subspace>& parts() const { return parts_; }
    const Subspace& operator[](int i) const { return parts_[static_cast<std::size_t>(i)]; }

    /// span of the union of all parts.
    Subspace span(double tol = kDefaultTol) const;

private:
    int ambient_dim_ = 0;
    std::vector<Subspace> parts_;
};

struct IsometrySpectrum {
    Subspace e_plus;
    Subspace e_one;
    Subspace e_minus;
    RealVec singular_values;  // ascending
};

struct IsometryCheck {
    bool isometric = false;
    double residual = 0.0;
};

struct DeviationStats {
    double norm_dev = 0.0;
    double formula_dev = 0.0;
};

/// Pass ambient_dim to allow an empty list (zero subspace).
Subspace orthonormalize(const std::vector<Vec>& vectors, double tol = kDefaultTol, int ambient_dim = 0);

double proj_product_norm(const Subspace& v, const Subspace& w);

/// Largest pairwise ||P_i P_j|| over distinct parts.
double c_constant(const Arrangement& arr);
double c_constant(const std::vector<Subspace>& parts);

Subspace intersect(const Subspace& v, const Subspace& w, double tol = kDefaultTol);
Subspace intersect_all(const std::vector<Subspace>& parts, double tol = kDefaultTol);
Subspace subspace_sum(const Subspace& v, const Subspace& w, double tol = kDefaultTol);
Subspace subspace_sum(const std::vector<Subspace>& parts, double tol = kDefaultTol);

/// Image A(S).
Subspace image(const Mat& a, const Subspace& s, double tol = kDefaultTol);
Arrangement image(const Mat& a, const Arrangement& arr, double tol = kDefaultTol);

IsometrySpectrum isometry_spectrum(const Mat& a, double tol = kDefaultTol);

IsometryCheck is_isometric_on(const Mat& a, const Subspace& s, double tol = kDefaultTol);

DeviationStats deviation_stats(const Mat& a);

void require_same_ambient(const Subspace& v, const Subspace& w);

}  // namespace arveson
