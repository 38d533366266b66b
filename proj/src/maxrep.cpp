#include "arveson/maxrep.hpp"

#include <algorithm>
#include <cmath>

namespace arveson {

namespace {

constexpr double kRankTol = 1e-9;

Mat null_columns(const Mat& m, double tol) {
    const auto n = m.cols();
    if (m.rows() == 0) return Mat::Identity(n, n);
    Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
    const RealVec& s = svd.singularValues();
    const double scale = s.size() > 0 ? std::max(1.0, s(0)) : 1.0;
    Eigen::Index rank = 0;
    while (rank < s.size() && s(rank) > tol * scale) ++rank;
    return svd.matrixV().rightCols(n - rank);
}

// Orthonormal range of columns whose singular values exceed tol in absolute terms.
Mat range_abs(const Mat& cols, double tol) {
    if (cols.cols() == 0) return Mat(cols.rows(), 0);
    Eigen::JacobiSVD<Mat> svd(cols, Eigen::ComputeThinU);
    const RealVec& s = svd.singularValues();
    Eigen::Index rank = 0;
    while (rank < s.size() && s(rank) > tol) ++rank;
    return svd.matrixU().leftCols(rank);
}

Vec fix_phase(const Vec& v) {
    Eigen::Index k = 0;
    v.cwiseAbs().maxCoeff(&k);
    return v * (std::abs(v(k)) / v(k));
}

Mat hstack(const Mat& a, const Mat& b) {
    Mat out(a.rows(), a.cols() + b.cols());
    out << a, b;
    return out;
}

}  // namespace

Subspace null_extension(const Mat& a, const Subspace& m0, double tol) {
    require_square(a, "null_extension");
    const int d = static_cast<int>(a.rows());
    if (m0.ambient_dim() != d) throw ValidationError("null_extension: subspace/map dimension mismatch");
    IsometryCheck chk = is_isometric_on(a, m0, tol);
    if (!chk.isometric)
        throw ValidationError("null_extension: map is not isometric on the seed subspace (residual " +
                              std::to_string(chk.residual) + ")");
    IsometrySpectrum sp = isometry_spectrum(a, tol);
    const Mat h = a.adjoint() * a - Mat::Identity(d, d);

    Subspace perp = sp.e_one.orth_complement();
    if (perp.is_zero()) return Subspace::full(d);
    const Mat& qp = perp.basis();
    const Mat hp = qp.adjoint() * h * qp;

    // seed projected into E1-perp coordinates
    Mat n = m0.is_zero() ? Mat(qp.cols(), 0) : range_abs(qp.adjoint() * m0.basis(), kRankTol);
    // H-orthogonal complement of N, then its Euclidean complement of N
    Mat hperp = null_columns(n.adjoint() * hp, kRankTol);
    Mat c = hperp;
    if (n.cols() > 0) {
        c = range_abs(hperp - n * (n.adjoint() * hperp), kRankTol);
    }

    Mat extra(qp.cols(), 0);
    if (c.cols() > 0) {
        Mat hc = c.adjoint() * hp * c;
        Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (hc + hc.adjoint()));
        const RealVec& mu = es.eigenvalues();  // ascending
        std::vector<Eigen::Index> pos, neg;
        for (Eigen::Index k = mu.size() - 1; k >= 0; --k)
            if (mu(k) > tol) pos.push_back(k);
        for (Eigen::Index k = 0; k < mu.size(); ++k)
            if (mu(k) < -tol) neg.push_back(k);
        const std::size_t pairs = std::min(pos.size(), neg.size());
        extra.resize(qp.cols(), static_cast<Eigen::Index>(pairs));
        for (std::size_t k = 0; k < pairs; ++k) {
            const double m = mu(pos[k]);
            const double v = -mu(neg[k]);
            // phases fixed in ambient coordinates so the output is deterministic
            Vec up = fix_phase(qp * c * es.eigenvectors().col(pos[k]));
            Vec wn = fix_phase(qp * c * es.eigenvectors().col(neg[k]));
            extra.col(static_cast<Eigen::Index>(k)) =
                qp.adjoint() * (std::sqrt(v / (m + v)) * up + std::sqrt(m / (m + v)) * wn);
        }
    }
    Mat cols = hstack(hstack(sp.e_one.basis(), m0.basis()), qp * hstack(n, extra));
    return Subspace::span(cols, kRankTol);
}

MaximalRepresentation maximal_representation(const Mat& a, const Arrangement& arr, double tol) {
    require_square(a, "maximal_representation");
    const int d = arr.ambient_dim();
    if (a.rows() != d) throw ValidationError("maximal_representation: map/arrangement dimension mismatch");
    if (arr.span(kRankTol).dim() != d) throw ValidationError("maximal_representation: parts do not span C^d");
    MaximalRepresentation rep;
    rep.e_one = isometry_spectrum(a, tol).e_one;
    for (int i = 0; i < arr.size(); ++i) {
        IsometryCheck c = is_isometric_on(a, arr[i], tol);
        if (!c.isometric)
            throw ValidationError("maximal_representation: map is not isometric on part " + std::to_string(i));
        Subspace s = null_extension(a, arr[i], tol);
        int found = -1;
        for (std::size_t k = 0; k < rep.parts_out.size(); ++k)
            if (same_subspace(rep.parts_out[k], s, 1e-8)) {
                found = static_cast<int>(k);
                break;
            }
        if (found < 0) {
            found = static_cast<int>(rep.parts_out.size());
            rep.parts_out.push_back(s);
        }
        rep.t_map.push_back(found);
    }
    return rep;
}

PairwiseReport verify_pairwise(const Mat& a, const MaximalRepresentation& rep, double tol) {
    require_square(a, "verify_pairwise");
    const int d = static_cast<int>(a.rows());
    PairwiseReport out;
    out.equal_dims = true;
    for (const auto& p : rep.parts_out) out.equal_dims = out.equal_dims && p.dim() == rep.parts_out.front().dim();
    out.intersection_is_e_one =
        rep.parts_out.empty() ? rep.e_one.is_zero() : same_subspace(intersect_all(rep.parts_out, 1e-8), rep.e_one, 1e-8);
    out.all_ok = out.equal_dims && out.intersection_is_e_one;
    const Subspace e_perp = rep.e_one.orth_complement();
    for (std::size_t i = 0; i < rep.parts_out.size(); ++i)
        for (std::size_t j = i + 1; j < rep.parts_out.size(); ++j) {
            PairCheck pc;
            pc.i = static_cast<int>(i);
            pc.j = static_cast<int>(j);
            const Subspace& mi = rep.parts_out[i];
            const Subspace& mj = rep.parts_out[j];
            Subspace sum = subspace_sum(mi, mj, kRankTol);
            Subspace inter = intersect(mi, mj, 1e-8);
            // E1 of a restricted to the pair's sum
            Eigen::JacobiSVD<Mat> svd(a * sum.basis(), Eigen::ComputeFullV);
            const RealVec& s = svd.singularValues();
            std::vector<Eigen::Index> one;
            for (Eigen::Index k = 0; k < s.size(); ++k)
                if (std::abs(s(k) - 1.0) <= tol) one.push_back(k);
            Mat e(sum.dim(), static_cast<Eigen::Index>(one.size()));
            for (std::size_t k = 0; k < one.size(); ++k) e.col(static_cast<Eigen::Index>(k)) = svd.matrixV().col(one[k]);
            Subspace e_ij = one.empty() ? Subspace::zero(d) : Subspace::span(sum.basis() * e, kRankTol);
            pc.intersection_dim = inter.dim();
            pc.e_ij_dim = e_ij.dim();
            pc.intersection_matches = same_subspace(inter, e_ij, 1e-8);
            pc.spans = sum.dim() == d;
            if (pc.spans) {
                pc.dim_e_one_perp = e_perp.dim();
                auto proj_dim = [&](const Subspace& m) {
                    if (e_perp.is_zero()) return 0;
                    return Subspace::span(e_perp.basis().adjoint() * m.basis(), kRankTol).dim();
                };
                pc.proj_dim_i = proj_dim(mi);
                pc.proj_dim_j = proj_dim(mj);
                pc.halves_ok = pc.dim_e_one_perp % 2 == 0 && 2 * pc.proj_dim_i == pc.dim_e_one_perp &&
                               2 * pc.proj_dim_j == pc.dim_e_one_perp;
            }
            out.all_ok = out.all_ok && pc.intersection_matches && pc.halves_ok;
            out.pairs.push_back(pc);
        }
    return out;
}

}  // namespace arveson
