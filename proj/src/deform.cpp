#include "arveson/deform.hpp"
#include "arveson/random.hpp"
#include "arveson/tractability.hpp"

#include <cmath>
#include <cstdlib>
#include <ctime>
#include <limits>
#include <numbers>

namespace arveson {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<Subspace> images(const Mat& a, const std::vector<Subspace>& parts, double tol) {
    std::vector<Subspace> out;
    out.reserve(parts.size());
    for (const auto& p : parts) out.push_back(image(a, p, tol));
    return out;
}

void require_invertible(const Mat& a, double tol, const char* what) {
    require_square(a, what);
    RealVec s = singular_values(a);
    if (!(s(s.size() - 1) > tol * s(0)))
        throw NumericalError(std::string(what) + ": map is not invertible (sigma_min/sigma_max = " +
                             std::to_string(s(s.size() - 1) / s(0)) + ")");
}

void require_parts(const Mat& a, const std::vector<Subspace>& parts, const char* what) {
    if (parts.empty()) throw ValidationError(std::string(what) + ": no parts");
    for (const auto& p : parts)
        if (p.ambient_dim() != a.rows())
            throw ValidationError(std::string(what) + ": part and map dimensions differ");
}

// Null vectors of m (columns of the returned matrix), cutoff relative to 1.
Mat null_space(const Mat& m, double tol) {
    const auto n = m.cols();
    if (m.rows() == 0) return Mat::Identity(n, n);
    Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
    const RealVec& s = svd.singularValues();
    Eigen::Index rank = 0;
    while (rank < s.size() && s(rank) > tol) ++rank;
    return svd.matrixV().rightCols(n - rank);
}

// Largest entry made real and positive.
Vec fix_phase(const Vec& v) {
    Eigen::Index k = 0;
    v.cwiseAbs().maxCoeff(&k);
    return v * (std::abs(v(k)) / v(k));
}

}  // namespace

TruncatedDeformOp build_t_op(const Mat& a, const std::vector<Subspace>& parts, int n_max, double tol, Rng* rng,
                             int samples) {
    if (n_max < 0) throw ValidationError("build_t_op: negative degree");
    require_invertible(a, tol, "build_t_op");
    require_parts(a, parts, "build_t_op");
    TruncatedDeformOp t;
    t.max_degree = n_max;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        IsometryCheck c = is_isometric_on(a, parts[i], std::max(tol, 1e-9));
        if (!c.isometric)
            t.warnings.push_back("map is not isometric on part " + std::to_string(i) + " (residual " +
                                 std::to_string(c.residual) + ")");
    }
    std::vector<Subspace> av = images(a, parts, tol);
    for (int n = 0; n <= n_max; ++n) {
        Mat q = degree_space(parts, n, tol).basis;
        Mat r = degree_space(av, n, tol).basis;
        if (q.cols() != r.cols())
            throw NumericalError("build_t_op: degree " + std::to_string(n) + " spaces have dimensions " +
                                 std::to_string(q.cols()) + " and " + std::to_string(r.cols()));
        t.blocks.push_back(r.adjoint() * sym_power(a, n) * q);
        t.domain.push_back(std::move(q));
        t.range.push_back(std::move(r));
    }
    if (rng != nullptr && samples > 0) {
        PointSet pts = sample_union(parts, samples, *rng);
        double worst = 0.0;
        for (const auto& x : pts) {
            Vec ax = a * x;
            for (int n = 0; n <= n_max; ++n) {
                auto k = static_cast<std::size_t>(n);
                Vec lhs = t.blocks[k] * (t.domain[k].adjoint() * embed_power(x, n));
                Vec rhs = t.range[k].adjoint() * embed_power(ax, n);
                worst = std::max(worst, (lhs - rhs).norm() / std::max(1.0, rhs.norm()));
            }
        }
        t.intertwining_residual = worst;
        if (worst > 1e-9)
            t.warnings.push_back("sampled intertwining residual " + std::to_string(worst) + " exceeds 1e-9");
    }
    return t;
}

TruncatedDeformOp build_t_op(const Mat& a, const Arrangement& arr, int n_max, double tol, Rng* rng, int samples) {
    return build_t_op(a, arr.parts(), n_max, tol, rng, samples);
}

TruncatedNorms truncated_norms(const TruncatedDeformOp& t, double tol) {
    TruncatedNorms out{0.0, 0.0, 0.0};
    for (std::size_t n = 0; n < t.blocks.size(); ++n) {
        const Mat& b = t.blocks[n];
        if (b.cols() == 0) throw NumericalError("truncated_norms: empty block at degree " + std::to_string(n));
        RealVec s = singular_values(b);
        const double smin = s(s.size() - 1);
        if (b.rows() < b.cols() || !(smin > tol * s(0)))
            throw NumericalError("truncated_norms: block at degree " + std::to_string(n) + " is rank deficient");
        out.norm = std::max(out.norm, s(0));
        out.inv_norm = std::max(out.inv_norm, 1.0 / smin);
    }
    out.cond = out.norm * out.inv_norm;
    return out;
}

AnalyticBound analytic_bound(const Mat& a, const std::vector<Subspace>& parts, int n_max, double tol) {
    require_parts(a, parts, "analytic_bound");
    const int k = static_cast<int>(parts.size());
    if (k < 2) throw ValidationError("analytic_bound: needs at least two parts");
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            if (!intersect(parts[static_cast<std::size_t>(i)], parts[static_cast<std::size_t>(j)], tol).is_zero())
                throw ValidationError("analytic_bound: parts " + std::to_string(i) + " and " + std::to_string(j) +
                                      " intersect nontrivially");
    AnalyticBound out;
    out.s = std::max(c_constant(parts), c_constant(images(a, parts, tol)));
    if (out.s >= 1.0) throw ValidationError("analytic_bound: s = max(c_V, c_AV) is not below 1");
    int n_s = 1;
    while (std::pow(out.s, n_s) * k >= 1.0) {
        ++n_s;
        if (n_s > n_max)
            throw ValidationError("analytic_bound: s^n k < 1 needs n > max degree " + std::to_string(n_max));
    }
    out.n_s = n_s;
    const double na = op_norm(a);
    out.value = std::numeric_limits<double>::infinity();
    for (int cut = n_s; cut <= std::max(n_s, n_max); ++cut) {
        const double q = std::pow(out.s, cut) * k;
        const double v = std::max(std::pow(na, cut), std::sqrt((1.0 + q) / (1.0 - q)));
        if (v < out.value) {
            out.value = v;
            out.best_cutoff = cut;
        }
    }
    return out;
}

AnalyticBound analytic_bound(const Mat& a, const Arrangement& arr, int n_max, double tol) {
    return analytic_bound(a, arr.parts(), n_max, tol);
}

double analytic_cond_bound(const Mat& a, const std::vector<Subspace>& parts, int n_max, double tol) {
    require_invertible(a, tol, "analytic_cond_bound");
    Mat inv = a.inverse();
    return analytic_bound(a, parts, n_max, tol).value * analytic_bound(inv, images(a, parts, tol), n_max, tol).value;
}

GramDeviation gram_deviation(const Mat& a, const Mat& b, const std::vector<Subspace>& parts, int n_max, int n_star,
                             double tol) {
    require_parts(a, parts, "gram_deviation");
    require_square(b, "gram_deviation");
    if (b.rows() != a.rows()) throw ValidationError("gram_deviation: maps have different sizes");
    if (n_star < 0 || n_max < 0) throw ValidationError("gram_deviation: negative degree");
    const double k = static_cast<double>(parts.size());
    const double c_v = parts.size() >= 2 ? c_constant(parts) : 0.0;
    if (std::pow(c_v, n_star) * k >= 1.0)
        throw ValidationError("gram_deviation: c_V^N k is not below 1 at N = " + std::to_string(n_star));

    GramDeviation out;
    for (int n = 0; n <= n_max; ++n) {
        Mat sa = sym_power(a, n), sb = sym_power(b, n);
        Mat q = degree_space(parts, n, tol).basis;
        out.measured = std::max(out.measured, hermitian_norm(q.adjoint() * (sa.adjoint() * sa - sb.adjoint() * sb) * q));
    }
    double head = 0.0;
    for (int n = 0; n <= n_star; ++n) {
        Mat sa = sym_power(a, n), sb = sym_power(b, n);
        head = std::max(head, hermitian_norm(sa.adjoint() * sa - sb.adjoint() * sb));
    }
    const double c_av = parts.size() >= 2 ? c_constant(images(a, parts, tol)) : 0.0;
    const double c_bv = parts.size() >= 2 ? c_constant(images(b, parts, tol)) : 0.0;
    const double tail =
        k * (std::pow(c_av, n_star) + std::pow(c_bv, n_star)) / (1.0 - k * std::pow(c_v, n_star));
    out.bound = std::max(head, tail);
    return out;
}

double sandwich_check(const std::vector<Subspace>& parts, int n, int trials, Rng& rng) {
    if (parts.empty()) throw ValidationError("sandwich_check: no parts");
    if (n < 0) throw ValidationError("sandwich_check: negative degree");
    const double k = static_cast<double>(parts.size());
    const double c = parts.size() >= 2 ? c_constant(parts) : 0.0;
    const double q = std::pow(c, n) * k;
    std::vector<Mat> embeds;
    for (const auto& p : parts) embeds.push_back(sym_power(p.basis(), n));
    double worst = std::numeric_limits<double>::infinity();
    for (int t = 0; t < trials; ++t) {
        Vec x = Vec::Zero(embeds.front().rows());
        double sum = 0.0;
        for (const auto& e : embeds) {
            Vec xi = e * rng.gaussian_vector(static_cast<int>(e.cols()));
            sum += xi.squaredNorm();
            x += xi;
        }
        if (sum == 0.0) continue;
        const double nx = x.squaredNorm();
        const double lower = (nx - (1.0 - q) * sum) / sum;
        const double upper = ((1.0 + q) * sum - nx) / sum;
        worst = std::min({worst, lower, upper});
    }
    return worst;
}

Mat make_tilt_family(const std::vector<Subspace>& parts, double epsilon, double tol) {
    if (parts.empty()) throw ValidationError("make_tilt_family: no parts");
    if (!(epsilon >= 0.0 && epsilon < std::numbers::pi / 2))
        throw ValidationError("make_tilt_family: epsilon must lie in [0, pi/2)");
    const int d = parts.front().ambient_dim();
    if (epsilon == 0.0) return Mat::Identity(d, d);
    const double c = std::cos(epsilon), s = std::sin(epsilon);
    // part i stays fixed, part j is rotated toward it
    for (std::size_t i = 0; i < parts.size(); ++i)
        for (std::size_t j = 0; j < parts.size(); ++j) {
            if (i == j) continue;
            const Mat& qi = parts[i].basis();
            const Mat& qj = parts[j].basis();
            Mat gn = null_space(qi.adjoint() * qj, 1e-10);
            if (gn.cols() == 0) continue;
            Vec g = qj * gn.col(gn.cols() - 1);
            g = fix_phase(g.normalized());
            // rest of M_j, orthogonal to g
            Mat rest = Subspace::span(qj - g * (g.adjoint() * qj), 1e-10).basis();
            Mat un = null_space(rest.adjoint() * qi, 1e-10);
            if (un.cols() == 0) continue;
            Vec u = fix_phase(Vec(qi * un.col(0)).normalized());
            Mat a = Mat::Identity(d, d) + (c - 1.0) * g * g.adjoint() + s * u * g.adjoint();
            bool ok = true;
            for (const auto& p : parts) ok = ok && is_isometric_on(a, p, tol).isometric;
            if (ok) return a;
        }
    throw ValidationError("make_tilt_family: no pair of parts admits a tilt that stays isometric on every part");
}

Mat make_tilt_family(const Arrangement& arr, double epsilon, double tol) {
    return make_tilt_family(arr.parts(), epsilon, tol);
}

std::vector<Subspace> config_parts(const ExperimentConfig& config) {
    std::vector<Subspace> parts;
    for (const auto& vs : config.arrangement) parts.push_back(orthonormalize(vs, config.tol, config.ambient_dim));
    return parts;
}

std::string report_timestamp() {
    std::time_t t = 0;
    if (const char* env = std::getenv("SOURCE_DATE_EPOCH")) {
        char* end = nullptr;
        long long v = std::strtoll(env, &end, 10);
        if (end != env && *end == '\0') t = static_cast<std::time_t>(v);
    }
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

DeformReport run_experiment(const ExperimentConfig& config) {
    if (!config.deformation) throw ValidationError("run_experiment: config has no deformation");
    const Deformation& def = *config.deformation;
    std::vector<Subspace> parts = config_parts(config);
    Arrangement arr(parts);
    DeformReport report;
    report.seed = config.seed;
    report.max_degree = config.max_degree;
    report.timestamp = report_timestamp();

    try {
        if (!classify(arr, config.tol).tractable) report.warnings.push_back("arrangement is not tractable");
    } catch (const ValidationError& e) {
        report.warnings.push_back(std::string("tractability not decided: ") + e.what());
    }

    std::vector<Mat> maps;
    std::vector<double> eps;
    if (def.kind == "tilt") {
        for (std::size_t i = 1; i < def.epsilons.size(); ++i)
            if (!(def.epsilons[i] < def.epsilons[i - 1]))
                report.warnings.push_back("epsilon schedule is not strictly decreasing at index " + std::to_string(i));
        for (double e : def.epsilons) {
            maps.push_back(make_tilt_family(parts, e));
            eps.push_back(e);
        }
    } else if (def.kind == "matrix-list") {
        for (const Mat& m : def.matrices) {
            maps.push_back(m);
            eps.push_back(hermitian_norm(m.adjoint() * m - Mat::Identity(m.cols(), m.cols())));
        }
    } else {
        throw ValidationError("run_experiment: unknown deformation kind '" + def.kind + "'");
    }

    Rng rng(config.seed);
    const Mat span_v = arr.span(config.tol).basis();
    for (std::size_t r = 0; r < maps.size(); ++r) {
        const Mat& a = maps[r];
        if (a.rows() != config.ambient_dim || a.cols() != config.ambient_dim)
            throw ValidationError("run_experiment: map " + std::to_string(r) + " has the wrong size");
        require_invertible(a, config.tol, "run_experiment");
        DeformRow row;
        row.epsilon = eps[r];
        RealVec s = singular_values(a);
        row.op_cond = s(0) / s(s.size() - 1);
        Mat inv = a.inverse();
        std::vector<Subspace> av = images(a, parts, config.tol);
        row.mult_norm_V = op_norm(a * span_v);
        row.mult_norm_W = op_norm(inv * subspace_sum(av, config.tol).basis());
        TruncatedDeformOp t = build_t_op(a, parts, config.max_degree, config.tol, &rng, config.gram_samples);
        for (const auto& w : t.warnings) report.warnings.push_back("row " + std::to_string(r) + ": " + w);
        TruncatedNorms tn = truncated_norms(t, config.tol);
        row.truncated_T_norm = tn.norm;
        row.truncated_Tinv_norm = tn.inv_norm;
        row.truncated_cond = tn.cond;
        try {
            row.analytic_bound = analytic_cond_bound(a, parts, config.max_degree, config.tol);
        } catch (const ValidationError&) {
            row.analytic_bound = kNaN;
        }
        row.c_V = parts.size() >= 2 ? c_constant(parts) : kNaN;
        row.c_AV = parts.size() >= 2 ? c_constant(av) : kNaN;
        report.rows.push_back(row);
    }
    return report;
}

}  // namespace arveson
