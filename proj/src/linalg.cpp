#include "arveson/linalg.hpp"
#include "arveson/random.hpp"

namespace arveson {

RealVec singular_values(const Mat& a) {
    if (a.size() == 0) return RealVec(0);
    Eigen::JacobiSVD<Mat> svd(a);
    return svd.singularValues();
}

double op_norm(const Mat& a) {
    if (a.size() == 0) return 0.0;
    return singular_values(a)(0);
}

double min_singular(const Mat& a) {
    if (a.size() == 0) return 0.0;
    RealVec s = singular_values(a);
    return s(s.size() - 1);
}

double hermitian_norm(const Mat& h) {
    if (h.size() == 0) return 0.0;
    Mat sym = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<Mat> es(sym, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

double unitarity_defect(const Mat& u) {
    return hermitian_norm(u.adjoint() * u - Mat::Identity(u.cols(), u.cols()));
}

void require_square(const Mat& a, const std::string& what) {
    if (a.rows() != a.cols() || a.rows() == 0)
        throw ValidationError(what + ": expected a nonempty square matrix, got " +
                              std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
}

double Rng::uniform(double lo, double hi) {
    std::uniform_real_distribution<double> dist(lo, hi);
    return dist(engine_);
}

double Rng::normal() {
    std::normal_distribution<double> dist(0.0, 1.0);
    return dist(engine_);
}

Complex Rng::complex_normal() {
    double re = normal();
    double im = normal();
    return {re, im};
}

Vec Rng::gaussian_vector(int d) {
    Vec v(d);
    for (int i = 0; i < d; ++i) v(i) = complex_normal();
    return v;
}

Mat Rng::gaussian_matrix(int rows, int cols) {
    Mat m(rows, cols);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i) m(i, j) = complex_normal();
    return m;
}

Vec Rng::unit_vector(int d) {
    Vec v = gaussian_vector(d);
    return v / v.norm();
}

Mat Rng::unitary(int d) {
    Mat g = gaussian_matrix(d, d);
    Eigen::HouseholderQR<Mat> qr(g);
    Mat q = qr.householderQ() * Mat::Identity(d, d);
    Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < d; ++i) {
        Complex diag = r(i, i);
        double mag = std::abs(diag);
        if (mag > 0) q.col(i) *= diag / mag;
    }
    return q;
}

Vec Rng::ball_point(int d, double r_max) {
    Vec dir = unit_vector(d);
    return dir * uniform(0.0, r_max);
}

}  // namespace arveson
