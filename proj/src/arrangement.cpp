#include "arveson/arrangement.hpp"

#include <algorithm>
#include <cmath>

namespace arveson {

namespace {

// Columns of U from an SVD with singular value above tol * sigma_max.
Mat range_basis(const Mat& columns, double tol) {
    if (columns.cols() == 0) return Mat(columns.rows(), 0);
    Eigen::BDCSVD<Mat> svd(columns, Eigen::ComputeThinU);
    const RealVec& s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0.0) return Mat(columns.rows(), 0);
    int rank = 0;
    while (rank < s.size() && s(rank) > tol * s(0)) ++rank;
    return svd.matrixU().leftCols(rank);
}

}  // namespace

Subspace::Subspace(int ambient_dim, Mat basis) : ambient_dim_(ambient_dim), basis_(std::move(basis)) {
    if (ambient_dim_ <= 0) throw ValidationError("subspace: ambient dimension must be positive");
    if (basis_.cols() == 0) basis_.resize(ambient_dim_, 0);
    if (basis_.rows() != ambient_dim_)
        throw ValidationError("subspace: basis vectors have length " + std::to_string(basis_.rows()) +
                              ", expected " + std::to_string(ambient_dim_));
    if (basis_.cols() > ambient_dim_) throw ValidationError("subspace: more basis vectors than ambient dimension");
    if (basis_.cols() > 0) {
        double dev = (basis_.adjoint() * basis_ - Mat::Identity(basis_.cols(), basis_.cols())).norm();
        if (dev > 1e-12 * std::max<double>(1.0, static_cast<double>(basis_.cols())))
            throw ValidationError("subspace: basis is not orthonormal (deviation " + std::to_string(dev) + ")");
    }
}

Subspace Subspace::zero(int d) { return Subspace(d, Mat(d, 0)); }
Subspace Subspace::full(int d) { return Subspace(d, Mat::Identity(d, d)); }

Subspace Subspace::span(const Mat& columns, double tol) {
    Subspace out;
    out.ambient_dim_ = static_cast<int>(columns.rows());
    if (out.ambient_dim_ <= 0) throw ValidationError("subspace: ambient dimension must be positive");
    out.basis_ = range_basis(columns, tol);
    return out;
}

Subspace Subspace::orth_complement() const {
    if (dim() == 0) return full(ambient_dim_);
    if (dim() == ambient_dim_) return zero(ambient_dim_);
    Eigen::BDCSVD<Mat> svd(basis_, Eigen::ComputeFullU);
    Subspace out;
    out.ambient_dim_ = ambient_dim_;
    out.basis_ = svd.matrixU().rightCols(ambient_dim_ - dim());
    return out;
}

double Subspace::residual(const Vec& v) const {
    double n = v.norm();
    if (n == 0.0) return 0.0;
    Vec r = v - basis_ * (basis_.adjoint() * v);
    return r.norm() / n;
}

bool Subspace::contains(const Vec& v, double tol) const { return residual(v) <= tol; }

bool Subspace::contains(const Subspace& other, double tol) const {
    require_same_ambient(*this, other);
    if (other.dim() == 0) return true;
    if (other.dim() > dim()) return false;
    Mat r = other.basis() - basis_ * (basis_.adjoint() * other.basis());
    return op_norm(r) <= tol;
}

bool same_subspace(const Subspace& a, const Subspace& b, double tol) {
    return a.dim() == b.dim() && a.contains(b, tol) && b.contains(a, tol);
}

void require_same_ambient(const Subspace& v, const Subspace& w) {
    if (v.ambient_dim() != w.ambient_dim())
        throw ValidationError("ambient dimension mismatch: " + std::to_string(v.ambient_dim()) + " vs " +
                              std::to_string(w.ambient_dim()));
}

Arrangement::Arrangement(std::vector<Subspace> parts, double tol) : parts_(std::move(parts)) {
    if (parts_.empty()) throw ValidationError("arrangement: needs at least one part");
    ambient_dim_ = parts_.front().ambient_dim();
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (parts_[i].ambient_dim() != ambient_dim_)
            throw ValidationError("arrangement: part " + std::to_string(i) + " has ambient dimension " +
                                  std::to_string(parts_[i].ambient_dim()) + ", expected " +
                                  std::to_string(ambient_dim_));
        if (parts_[i].is_zero())
            throw ValidationError("arrangement: part " + std::to_string(i) + " is the zero subspace");
    }
    for (std::size_t i = 0; i < parts_.size(); ++i)
        for (std::size_t j = 0; j < parts_.size(); ++j)
            if (i != j && parts_[j].contains(parts_[i], tol))
                throw ValidationError("arrangement: part " + std::to_string(i) + " is contained in part " +
                                      std::to_string(j));
}

Subspace Arrangement::span(double tol) const { return subspace_sum(parts_, tol); }

Subspace orthonormalize(const std::vector<Vec>& vectors, double tol, int ambient_dim) {
    if (!(tol > 0)) throw ValidationError("orthonormalize: tol must be positive");
    if (vectors.empty()) {
        if (ambient_dim <= 0) throw ValidationError("orthonormalize: no vectors and no ambient dimension");
        return Subspace::zero(ambient_dim);
    }
    const auto d = ambient_dim > 0 ? static_cast<Eigen::Index>(ambient_dim) : vectors.front().size();
    Mat cols(d, static_cast<Eigen::Index>(vectors.size()));
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        if (vectors[i].size() != d)
            throw ValidationError("orthonormalize: vector " + std::to_string(i) + " has length " +
                                  std::to_string(vectors[i].size()) + ", expected " + std::to_string(d));
        cols.col(static_cast<Eigen::Index>(i)) = vectors[i];
    }
    return Subspace::span(cols, tol);
}

double proj_product_norm(const Subspace& v, const Subspace& w) {
    require_same_ambient(v, w);
    if (v.is_zero() || w.is_zero()) return 0.0;
    return std::min(1.0, op_norm(v.basis().adjoint() * w.basis()));
}

double c_constant(const std::vector<Subspace>& parts) {
    if (parts.size() < 2) throw ValidationError("c_constant: needs at least two parts");
    double c = 0.0;
    for (std::size_t i = 0; i < parts.size(); ++i)
        for (std::size_t j = i + 1; j < parts.size(); ++j) c = std::max(c, proj_product_norm(parts[i], parts[j]));
    return c;
}

double c_constant(const Arrangement& arr) { return c_constant(arr.parts()); }

Subspace intersect(const Subspace& v, const Subspace& w, double tol) {
    require_same_ambient(v, w);
    const int d = v.ambient_dim();
    if (v.is_zero() || w.is_zero()) return Subspace::zero(d);
    // Principal vectors with cosine >= 1 - tol.
    Eigen::JacobiSVD<Mat> svd(v.basis().adjoint() * w.basis(), Eigen::ComputeFullU);
    const RealVec& s = svd.singularValues();
    int k = 0;
    while (k < s.size() && s(k) >= 1.0 - tol) ++k;
    if (k == 0) return Subspace::zero(d);
    Mat cols = v.basis() * svd.matrixU().leftCols(k);
    return Subspace::span(cols, 1e-6);
}

Subspace intersect_all(const std::vector<Subspace>& parts, double tol) {
    if (parts.empty()) throw ValidationError("intersect_all: empty list");
    Subspace acc = parts.front();
    for (std::size_t i = 1; i < parts.size() && !acc.is_zero(); ++i) acc = intersect(acc, parts[i], tol);
    return acc;
}

Subspace subspace_sum(const Subspace& v, const Subspace& w, double tol) {
    require_same_ambient(v, w);
    Mat cols(v.ambient_dim(), v.dim() + w.dim());
    cols << v.basis(), w.basis();
    return Subspace::span(cols, tol);
}

Subspace subspace_sum(const std::vector<Subspace>& parts, double tol) {
    if (parts.empty()) throw ValidationError("subspace_sum: empty list");
    const int d = parts.front().ambient_dim();
    int total = 0;
    for (const auto& p : parts) {
        require_same_ambient(parts.front(), p);
        total += p.dim();
    }
    Mat cols(d, total);
    int at = 0;
    for (const auto& p : parts) {
        cols.middleCols(at, p.dim()) = p.basis();
        at += p.dim();
    }
    return Subspace::span(cols, tol);
}

Subspace image(const Mat& a, const Subspace& s, double tol) {
    if (a.cols() != s.ambient_dim()) throw ValidationError("image: matrix/subspace dimension mismatch");
    if (s.is_zero()) return Subspace::zero(static_cast<int>(a.rows()));
    return Subspace::span(a * s.basis(), tol);
}

Arrangement image(const Mat& a, const Arrangement& arr, double tol) {
    std::vector<Subspace> parts;
    parts.reserve(arr.parts().size());
    for (const auto& p : arr.parts()) parts.push_back(image(a, p, tol));
    return Arrangement(std::move(parts));
}

IsometrySpectrum isometry_spectrum(const Mat& a, double tol) {
    require_square(a, "isometry_spectrum");
    const int d = static_cast<int>(a.rows());
    Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeFullV);
    const RealVec& s = svd.singularValues();  // descending
    if (s(d - 1) <= tol) throw NumericalError("isometry_spectrum: map is singular (sigma_min = " +
                                              std::to_string(s(d - 1)) + ")");
    const Mat& v = svd.matrixV();
    std::vector<int> plus, one, minus;
    for (int i = 0; i < d; ++i) {
        if (std::abs(s(i) - 1.0) <= tol)
            one.push_back(i);
        else if (s(i) > 1.0)
            plus.push_back(i);
        else
            minus.push_back(i);
    }
    auto gather = [&](const std::vector<int>& idx) {
        Mat b(d, static_cast<Eigen::Index>(idx.size()));
        for (std::size_t k = 0; k < idx.size(); ++k) b.col(static_cast<Eigen::Index>(k)) = v.col(idx[k]);
        return Subspace::span(b, 1e-6);
    };
    IsometrySpectrum out;
    out.e_plus = plus.empty() ? Subspace::zero(d) : gather(plus);
    out.e_one = one.empty() ? Subspace::zero(d) : gather(one);
    out.e_minus = minus.empty() ? Subspace::zero(d) : gather(minus);
    out.singular_values = s.reverse();
    return out;
}

IsometryCheck is_isometric_on(const Mat& a, const Subspace& s, double tol) {
    if (a.cols() != s.ambient_dim()) throw ValidationError("is_isometric_on: matrix/subspace dimension mismatch");
    if (s.is_zero()) return {true, 0.0};
    Mat as = a * s.basis();
    double r = hermitian_norm(as.adjoint() * as - Mat::Identity(s.dim(), s.dim()));
    return {r <= tol, r};
}

DeviationStats deviation_stats(const Mat& a) {
    require_square(a, "deviation_stats");
    RealVec s = singular_values(a);
    double smax = s(0);
    double smin = s(s.size() - 1);
    if (smin <= 0.0 || smin < 1e-14 * smax) throw NumericalError("deviation_stats: map is singular");
    Mat ata = a.adjoint() * a;
    DeviationStats out;
    out.norm_dev = hermitian_norm(ata - Mat::Identity(a.rows(), a.cols()));
    // ||A^{-1}|| = 1/smin
    out.formula_dev = std::max(std::abs(smax * smax - 1.0), std::abs(1.0 - smin * smin));
    return out;
}

}  // namespace arveson
