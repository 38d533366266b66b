#include "arveson/fock.hpp"
#include "arveson/random.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

namespace arveson {

namespace {

struct IndexTable {
    std::vector<std::vector<int>> list;
    std::map<std::vector<int>, int> pos;
    // raise[p][i]: position of list[p] + e_i in the next degree
    std::vector<std::vector<int>> raise;
};

void enumerate(int d, int n, int at, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (at == d - 1) {
        cur[static_cast<std::size_t>(at)] = n;
        out.push_back(cur);
        return;
    }
    for (int k = n; k >= 0; --k) {
        cur[static_cast<std::size_t>(at)] = k;
        enumerate(d, n - k, at + 1, cur, out);
    }
}

const IndexTable& table(int d, int n);

std::mutex& table_mutex() {
    static std::mutex m;
    return m;
}

const IndexTable& build_table(int d, int n) {
    static std::map<std::pair<int, int>, std::unique_ptr<IndexTable>> cache;
    auto key = std::make_pair(d, n);
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;
    auto t = std::make_unique<IndexTable>();
    std::vector<int> cur(static_cast<std::size_t>(d), 0);
    enumerate(d, n, 0, cur, t->list);
    for (std::size_t p = 0; p < t->list.size(); ++p) t->pos.emplace(t->list[p], static_cast<int>(p));
    auto& ref = *t;
    cache.emplace(key, std::move(t));
    return ref;
}

const IndexTable& table(int d, int n) {
    if (d <= 0 || n < 0) throw ValidationError("multi-index table: need d > 0 and n >= 0");
    std::lock_guard<std::mutex> lock(table_mutex());
    const IndexTable& t = build_table(d, n);
    if (t.raise.empty() && !t.list.empty()) {
        const IndexTable& up = build_table(d, n + 1);
        auto& mt = const_cast<IndexTable&>(t);
        mt.raise.resize(t.list.size());
        for (std::size_t p = 0; p < t.list.size(); ++p) {
            mt.raise[p].resize(static_cast<std::size_t>(d));
            std::vector<int> b = t.list[p];
            for (int i = 0; i < d; ++i) {
                ++b[static_cast<std::size_t>(i)];
                mt.raise[p][static_cast<std::size_t>(i)] = up.pos.at(b);
                --b[static_cast<std::size_t>(i)];
            }
        }
    }
    return t;
}

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

}  // namespace

const std::vector<std::vector<int>>& multi_indices(int d, int n) { return table(d, n).list; }

int multi_index_position(const std::vector<int>& alpha) {
    int n = 0;
    for (int a : alpha) {
        if (a < 0) throw ValidationError("multi-index with a negative exponent");
        n += a;
    }
    const IndexTable& t = table(static_cast<int>(alpha.size()), n);
    return t.pos.at(alpha);
}

int sym_dim(int d, int n) {
    if (n < 0 || d <= 0) return 0;
    // C(n + d - 1, n), exact in 64 bits for every size we can store
    long long c = 1;
    for (int i = 1; i <= std::min(n, d - 1); ++i) c = c * (n + d - 1 - std::min(n, d - 1) + i) / i;
    return static_cast<int>(c);
}

double monomial_weight(const std::vector<int>& alpha) {
    int n = 0;
    double denom = 1.0;
    for (int a : alpha) {
        n += a;
        denom *= factorial(a);
    }
    return std::sqrt(factorial(n) / denom);
}

Vec embed_power(const Vec& x, int n) {
    if (n < 0) throw ValidationError("embed_power: negative degree");
    const int d = static_cast<int>(x.size());
    const auto& idx = multi_indices(d, n);
    Vec out(static_cast<Eigen::Index>(idx.size()));
    for (std::size_t p = 0; p < idx.size(); ++p) {
        Complex m = 1.0;
        for (int i = 0; i < d; ++i)
            for (int k = 0; k < idx[p][static_cast<std::size_t>(i)]; ++k) m *= x(i);
        out(static_cast<Eigen::Index>(p)) = monomial_weight(idx[p]) * m;
    }
    return out;
}

Mat sym_power(const Mat& a, int n) {
    if (n < 0) throw ValidationError("sym_power: negative degree");
    const int m = static_cast<int>(a.rows());
    const int d = static_cast<int>(a.cols());
    if (m <= 0 || d <= 0) throw ValidationError("sym_power: empty matrix");
    if (n == 0) return Mat::Identity(1, 1);

    // poly.col(alpha) holds the plain monomial coefficients of prod_j l_j^{alpha_j},
    // l_j = sum_i a_ij z_i, at the current degree.
    Mat poly = Mat::Identity(1, 1);
    for (int k = 1; k <= n; ++k) {
        const IndexTable& in_lo = table(d, k - 1);
        const IndexTable& in_hi = table(d, k);
        const IndexTable& out_lo = table(m, k - 1);
        Mat next = Mat::Zero(sym_dim(m, k), sym_dim(d, k));
        for (std::size_t p = 0; p < in_hi.list.size(); ++p) {
            std::vector<int> alpha = in_hi.list[p];
            int j = 0;
            while (alpha[static_cast<std::size_t>(j)] == 0) ++j;
            --alpha[static_cast<std::size_t>(j)];
            const int src = in_lo.pos.at(alpha);
            for (std::size_t b = 0; b < out_lo.list.size(); ++b) {
                Complex c = poly(static_cast<Eigen::Index>(b), src);
                if (c == Complex(0.0)) continue;
                for (int i = 0; i < m; ++i) {
                    Complex aij = a(i, j);
                    if (aij == Complex(0.0)) continue;
                    next(out_lo.raise[b][static_cast<std::size_t>(i)], static_cast<Eigen::Index>(p)) += aij * c;
                }
            }
        }
        poly = std::move(next);
    }
    const auto& rows = multi_indices(m, n);
    const auto& cols = multi_indices(d, n);
    std::vector<double> row_f(rows.size()), col_f(cols.size());
    for (std::size_t b = 0; b < rows.size(); ++b) {
        row_f[b] = 1.0;
        for (int e : rows[b]) row_f[b] *= factorial(e);
    }
    for (std::size_t p = 0; p < cols.size(); ++p) {
        col_f[p] = 1.0;
        for (int e : cols[p]) col_f[p] *= factorial(e);
    }
    for (Eigen::Index p = 0; p < poly.cols(); ++p)
        for (Eigen::Index b = 0; b < poly.rows(); ++b)
            poly(b, p) *= std::sqrt(row_f[static_cast<std::size_t>(b)] / col_f[static_cast<std::size_t>(p)]);
    return poly;
}

void check_in_ball(const Vec& x, const char* what) {
    double n = x.norm();
    if (!(n < 1.0)) throw ValidationError(std::string(what) + ": point of norm " + std::to_string(n) +
                                          " is not inside the open unit ball");
}

Complex da_kernel(const Vec& x, const Vec& y) {
    if (x.size() != y.size()) throw ValidationError("da_kernel: dimension mismatch");
    check_in_ball(x, "da_kernel");
    check_in_ball(y, "da_kernel");
    return 1.0 / (1.0 - inner(x, y));
}

Mat gram(const PointSet& points) {
    const auto n = static_cast<Eigen::Index>(points.size());
    Mat g(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        g(i, i) = da_kernel(points[static_cast<std::size_t>(i)], points[static_cast<std::size_t>(i)]);
        for (Eigen::Index j = i + 1; j < n; ++j) {
            g(i, j) = da_kernel(points[static_cast<std::size_t>(i)], points[static_cast<std::size_t>(j)]);
            g(j, i) = std::conj(g(i, j));
        }
    }
    return g;
}

double TruncatedFunction::norm() const {
    double s = 0.0;
    for (const auto& c : components) s += c.squaredNorm();
    return std::sqrt(s);
}

Complex TruncatedFunction::operator()(const Vec& x) const {
    if (x.size() != ambient_dim) throw ValidationError("TruncatedFunction: dimension mismatch");
    Complex v = 0.0;
    for (std::size_t n = 0; n < components.size(); ++n) v += inner(embed_power(x, static_cast<int>(n)), components[n]);
    return v;
}

TruncatedFunction TruncatedFunction::kernel(const Vec& y, int max_degree) {
    TruncatedFunction f;
    f.ambient_dim = static_cast<int>(y.size());
    for (int n = 0; n <= max_degree; ++n) f.components.push_back(embed_power(y, n));
    return f;
}

Complex homogeneous_component(const std::function<Complex(const Vec&)>& f, int max_degree, int n, const Vec& x,
                              int quadrature_points) {
    if (n < 0) throw ValidationError("homogeneous_component: negative degree");
    if (quadrature_points <= max_degree + n)
        throw ValidationError("homogeneous_component: need more than " + std::to_string(max_degree + n) +
                              " quadrature points, got " + std::to_string(quadrature_points));
    const int m = quadrature_points;
    Complex acc = 0.0;
    for (int k = 0; k < m; ++k) {
        double t = 2.0 * std::numbers::pi * k / m;
        Complex w = std::polar(1.0, t);
        acc += f(w * x) * std::polar(1.0, -t * n);
    }
    return acc / static_cast<double>(m);
}

DegreeSpace degree_space(const std::vector<Subspace>& parts, int n, double tol) {
    if (n < 0) throw ValidationError("degree_space: negative degree");
    if (parts.empty()) throw ValidationError("degree_space: no parts");
    const int d = parts.front().ambient_dim();
    DegreeSpace out;
    out.degree = n;
    if (n == 0) {
        out.basis = Mat::Identity(1, 1);
        return out;
    }
    int total = 0;
    std::vector<Mat> images;
    for (const auto& p : parts) {
        require_same_ambient(parts.front(), p);
        if (p.is_zero()) continue;
        images.push_back(sym_power(p.basis(), n));
        total += static_cast<int>(images.back().cols());
    }
    Mat cols(sym_dim(d, n), total);
    int at = 0;
    for (const auto& im : images) {
        cols.middleCols(at, im.cols()) = im;
        at += static_cast<int>(im.cols());
    }
    out.basis = Subspace::span(cols, tol).basis();
    return out;
}

DegreeSpace degree_space(const Arrangement& arr, int n, double tol) { return degree_space(arr.parts(), n, tol); }

double pencil_sqrt_max(const Mat& w, const Mat& g, double cutoff) {
    if (g.rows() != g.cols() || w.rows() != g.rows() || w.cols() != g.cols())
        throw ValidationError("pencil: shape mismatch");
    Eigen::SelfAdjointEigenSolver<Mat> eg(0.5 * (g + g.adjoint()));
    const RealVec& lam = eg.eigenvalues();  // ascending
    const double top = lam(lam.size() - 1);
    if (!(top > 0)) throw NumericalError("pencil: Gram matrix is not positive");
    int first = 0;
    while (first < lam.size() && lam(first) <= cutoff * top) ++first;
    const auto keep = lam.size() - first;
    Mat t = eg.eigenvectors().rightCols(keep);
    for (Eigen::Index k = 0; k < keep; ++k) t.col(k) /= std::sqrt(lam(first + k));
    Mat m = t.adjoint() * w * t;
    Eigen::SelfAdjointEigenSolver<Mat> em(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(0.0, em.eigenvalues()(keep - 1)));
}

double multiplier_norm_lb(const std::function<Vec(const Vec&)>& f, const PointSet& points, double cutoff) {
    if (points.empty()) throw ValidationError("multiplier_norm_lb: no points");
    for (std::size_t i = 0; i < points.size(); ++i) {
        check_in_ball(points[i], "multiplier_norm_lb");
        for (std::size_t j = 0; j < i; ++j)
            if ((points[i] - points[j]).norm() < 1e-12)
                throw NumericalError("multiplier_norm_lb: points " + std::to_string(j) + " and " + std::to_string(i) +
                                     " coincide; Gram is singular");
    }
    Mat g = gram(points);
    std::vector<Vec> vals;
    vals.reserve(points.size());
    for (const auto& p : points) vals.push_back(f(p));
    const auto n = static_cast<Eigen::Index>(points.size());
    Mat w(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            w(i, j) = inner(vals[static_cast<std::size_t>(i)], vals[static_cast<std::size_t>(j)]) * g(i, j);
    return pencil_sqrt_max(w, g, cutoff);
}

double multiplier_norm_lb(const Mat& a, const PointSet& points, double cutoff) {
    if (!points.empty() && a.cols() != points.front().size())
        throw ValidationError("multiplier_norm_lb: matrix/point dimension mismatch");
    return multiplier_norm_lb([&a](const Vec& x) -> Vec { return a * x; }, points, cutoff);
}

PointSet sample_union(const std::vector<Subspace>& parts, int count, Rng& rng, double r_min, double r_max) {
    if (parts.empty()) throw ValidationError("sample_union: no parts");
    PointSet out;
    out.reserve(static_cast<std::size_t>(count));
    std::uniform_int_distribution<int> pick(0, static_cast<int>(parts.size()) - 1);
    for (int k = 0; k < count; ++k) {
        const Subspace& p = parts[static_cast<std::size_t>(pick(rng.engine()))];
        Vec dir = p.basis() * rng.unit_vector(p.dim());
        out.push_back(dir * rng.uniform(r_min, r_max));
    }
    return out;
}

}  // namespace arveson
