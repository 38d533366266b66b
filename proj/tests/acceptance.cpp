// Runs every acceptance criterion and prints one PASS/FAIL line for each.
#include "helpers.hpp"

#include "arveson/cli.hpp"
#include "arveson/deform.hpp"
#include "arveson/fock.hpp"
#include "arveson/maxrep.hpp"
#include "arveson/moebius.hpp"
#include "arveson/tractability.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

using namespace testing;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
    void require(bool cond, const std::string& what) {
        if (!cond && ok) detail = what;
        ok = ok && cond;
    }
};

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

int failures = 0;

void criterion(int id, const std::string& name, double time_limit, const std::function<Outcome()>& body) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o.ok = false;
        o.detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (time_limit > 0 && secs >= time_limit) {
        if (o.ok) o.detail = "took " + num(secs) + " s, limit " + num(time_limit) + " s";
        o.ok = false;
    }
    if (!o.ok) ++failures;
    std::printf("%s %2d %s (%.2f s)%s%s\n", o.ok ? "PASS" : "FAIL", id, name.c_str(), secs,
                o.detail.empty() ? "" : ": ", o.detail.c_str());
    std::fflush(stdout);
}

std::vector<Subspace> coordinate_parts(int d, std::initializer_list<std::initializer_list<int>> parts) {
    std::vector<Subspace> out;
    for (auto p : parts) {
        std::vector<Vec> v;
        for (int i : p) v.push_back(unit(d, i));
        out.push_back(orthonormalize(v));
    }
    return out;
}

Mat random_invertible(Rng& rng, int d) {
    RealVec s(d);
    for (int i = 0; i < d; ++i) s(i) = rng.uniform(0.3, 2.5);
    return rng.unitary(d) * s.cast<Complex>().asDiagonal() * rng.unitary(d).adjoint();
}

const char* kTiltConfig = R"({
  "ambient_dim": 2,
  "arrangement": [[[1, 0]], [[0, 1]]],
  "deformation": {"kind": "tilt", "epsilons": [0.4, 0.2, 0.1, 0.05, 0.025]},
  "max_degree": 12,
  "gram_samples": 32,
  "seed": 1
})";

Outcome kernel_identity() {
    Outcome o;
    Rng rng(101);
    double worst = 0.0;
    for (int d : {1, 2, 3, 8})
        for (int t = 0; t < 1000; ++t) {
            Automorphism f = random_automorphism(d, rng);
            Vec x = rng.ball_point(d), y = rng.ball_point(d);
            KernelResidual r = kernel_identity_residual(f, x, y);
            worst = std::max({worst, r.identity, r.kernel});
        }
    o.require(worst < 1e-10, "residual " + num(worst));
    o.detail = o.ok ? "max residual " + num(worst) : o.detail;
    return o;
}

Outcome automorphism_laws() {
    Outcome o;
    Rng rng(102);
    double worst = 0.0;
    for (int t = 0; t < 200; ++t) {
        const int d = 1 + t % 4;
        Automorphism f = random_automorphism(d, rng);
        Vec x = rng.ball_point(d), y = rng.ball_point(d);
        worst = std::max(worst, (phi(f.a, phi(f.a, x)) - x).norm());
        worst = std::max(worst, std::abs(pseudohyperbolic(f(x), f(y)) - pseudohyperbolic(x, y)));
        worst = std::max(worst, (f.inverse()(f(x)) - x).norm());
    }
    o.require(worst < 1e-10, "deviation " + num(worst));
    if (o.ok) o.detail = "max deviation " + num(worst);
    return o;
}

Outcome fock_embedding() {
    Outcome o;
    Rng rng(103);
    double worst = 0.0;
    for (int t = 0; t < 500; ++t)
        for (int d = 1; d <= 4; ++d) {
            Vec x = rng.ball_point(d, 1.0) * rng.uniform(0.5, 2.0), y = rng.ball_point(d, 1.0);
            for (int n = 0; n <= 10; ++n) {
                Complex lhs = inner(embed_power(x, n), embed_power(y, n));
                Complex rhs = std::pow(inner(x, y), n);
                // relative to the Cauchy-Schwarz scale, which stays meaningful when <x,y> is near 0
                double scale = std::pow(x.norm() * y.norm(), n);
                worst = std::max(worst, std::abs(lhs - rhs) / scale);
            }
        }
    o.require(worst < 1e-12, "relative error " + num(worst));
    if (o.ok) o.detail = "max relative error " + num(worst);
    return o;
}

Outcome multiplier_full_ball() {
    Outcome o;
    Rng rng(104);
    double worst_ratio = 2.0, worst_excess = -1.0;
    for (int t = 0; t < 50; ++t) {
        const int d = 1 + t % 3;
        Mat a = random_invertible(rng, d);
        PointSet pts = sample_union({Subspace::full(d)}, 200, rng);
        double lb = multiplier_norm_lb(a, pts);
        double norm = op_norm(a);
        worst_ratio = std::min(worst_ratio, lb / norm);
        worst_excess = std::max(worst_excess, lb - norm);
    }
    o.require(worst_ratio >= 0.98, "ratio " + num(worst_ratio));
    o.require(worst_excess <= 1e-8, "excess " + num(worst_excess));
    if (o.ok) o.detail = "min ratio " + num(worst_ratio) + ", max excess " + num(worst_excess);
    return o;
}

Outcome multiplier_on_union() {
    Outcome o;
    Rng rng(105);
    std::vector<std::vector<Subspace>> unions = {
        coordinate_parts(3, {{0, 1}, {1, 2}}),
        coordinate_parts(3, {{0}, {1}}),
    };
    double worst_ratio = 2.0, worst_excess = -1.0;
    for (int t = 0; t < 20; ++t) {
        const auto& v = unions[static_cast<std::size_t>(t) % unions.size()];
        Mat a = random_invertible(rng, 3);
        double target = op_norm(a * subspace_sum(v).basis());
        PointSet pts = sample_union(v, 300, rng);
        double lb = multiplier_norm_lb(a, pts);
        worst_ratio = std::min(worst_ratio, lb / target);
        worst_excess = std::max(worst_excess, lb - target);
    }
    o.require(worst_ratio >= 0.98, "ratio " + num(worst_ratio));
    o.require(worst_excess <= 1e-8, "excess " + num(worst_excess));
    if (o.ok) o.detail = "min ratio " + num(worst_ratio) + ", max excess " + num(worst_excess);
    return o;
}

Outcome sandwich() {
    Outcome o;
    Rng rng(106);
    std::vector<std::vector<Subspace>> arrangements = {
        coordinate_parts(2, {{0}, {1}}),
        {span({unit(2, 0)}), span({unit(2, 1)}), span({vec({1.0, 1.0})})},
        {random_subspace(rng, 3, 1), random_subspace(rng, 3, 1), random_subspace(rng, 3, 1)},
        {random_subspace(rng, 4, 2), random_subspace(rng, 4, 2)},
        coordinate_parts(3, {{0}, {1, 2}}),
    };
    double worst = 1e300;
    for (const auto& arr : arrangements)
        for (int n = 1; n <= 6; ++n) worst = std::min(worst, sandwich_check(arr, n, 1000, rng));
    o.require(worst >= -1e-10, "slack " + num(worst));
    if (o.ok) o.detail = "min slack " + num(worst);
    return o;
}

Outcome gram_bound() {
    Outcome o;
    std::vector<Subspace> lines = coordinate_parts(2, {{0}, {1}});
    double worst = -1e300;
    for (double eps : {0.05, 0.1, 0.2}) {
        Mat a = make_tilt_family(lines, eps);
        for (const Mat& b : {Mat(Mat::Identity(2, 2)), make_tilt_family(lines, eps / 2)})
            for (int n_max = 1; n_max <= 10; ++n_max)
                for (int n_star = 1; n_star <= n_max; ++n_star) {
                    GramDeviation g = gram_deviation(a, b, lines, n_max, n_star);
                    worst = std::max(worst, g.measured - g.bound);
                }
    }
    o.require(worst <= 1e-9, "measured exceeds bound by " + num(worst));
    if (o.ok) o.detail = "max measured - bound " + num(worst);
    return o;
}

Outcome deformation_experiment() {
    Outcome o;
    DeformReport rep = run_experiment(parse_config(kTiltConfig));
    o.require(rep.rows.size() == 5, "row count");
    auto decreasing = [&](const char* name, double DeformRow::*field) {
        for (std::size_t r = 1; r < rep.rows.size(); ++r)
            o.require(rep.rows[r].*field < rep.rows[r - 1].*field, std::string(name) + " not strictly decreasing");
    };
    decreasing("op_cond", &DeformRow::op_cond);
    decreasing("mult_norm_V", &DeformRow::mult_norm_V);
    decreasing("mult_norm_W", &DeformRow::mult_norm_W);
    decreasing("truncated_T_norm", &DeformRow::truncated_T_norm);
    decreasing("truncated_Tinv_norm", &DeformRow::truncated_Tinv_norm);
    decreasing("truncated_cond", &DeformRow::truncated_cond);
    decreasing("analytic_bound", &DeformRow::analytic_bound);
    for (const auto& row : rep.rows)
        o.require(row.truncated_cond <= row.analytic_bound, "truncated_cond above the analytic bound");
    o.require(!rep.rows.empty() && rep.rows.back().truncated_cond - 1.0 < 0.15, "final truncated_cond too large");
    if (o.ok) o.detail = "final truncated_cond " + num(rep.rows.back().truncated_cond);
    return o;
}

Outcome e_one_machinery() {
    Outcome o;
    Rng rng(109);
    double iso = 0.0, orth = 0.0, formula = 0.0;
    bool strict = true;
    for (int t = 0; t < 200; ++t) {
        const int d = 1 + t % 6;
        RealVec sv(d);
        for (int i = 0; i < d; ++i) {
            int kind = static_cast<int>(rng.uniform(0.0, 3.0));
            sv(i) = kind == 0 ? 1.0 : kind == 1 ? rng.uniform(1.1, 2.5) : rng.uniform(0.3, 0.9);
        }
        Mat a = rng.unitary(d) * sv.cast<Complex>().asDiagonal() * rng.unitary(d).adjoint();
        IsometrySpectrum s = isometry_spectrum(a, 1e-9);
        if (!s.e_one.is_zero()) iso = std::max(iso, is_isometric_on(a, s.e_one, 1e-9).residual);
        Subspace perp = s.e_one.orth_complement();
        if (!s.e_one.is_zero() && !perp.is_zero())
            orth = std::max(orth, op_norm((a * s.e_one.basis()).adjoint() * (a * perp.basis())));
        DeviationStats ds = deviation_stats(a);
        formula = std::max(formula, std::abs(ds.norm_dev - ds.formula_dev) / std::max(1.0, ds.norm_dev));
        for (int k = 0; k < 100; ++k) {
            if (!s.e_plus.is_zero()) {
                Vec x = s.e_plus.basis() * rng.unit_vector(s.e_plus.dim());
                strict = strict && (a * x).norm() > x.norm();
            }
            if (!s.e_minus.is_zero()) {
                Vec x = s.e_minus.basis() * rng.unit_vector(s.e_minus.dim());
                strict = strict && (a * x).norm() < x.norm();
            }
        }
    }
    o.require(iso < 1e-9, "isometry residual " + num(iso));
    o.require(orth < 1e-9, "orthogonality residual " + num(orth));
    o.require(formula < 1e-10, "formula deviation " + num(formula));
    o.require(strict, "strict expansion or contraction violated");
    if (o.ok) o.detail = "residuals " + num(iso) + ", " + num(orth) + ", " + num(formula);
    return o;
}

Outcome appendix() {
    Outcome o;
    Rng rng(110);
    for (int t = 0; t < 100; ++t) {
        const int d = 2 + t % 5;
        std::vector<double> sigma;
        int z = 0, p = 0, q = 0;
        for (int i = 0; i < d; ++i) {
            int kind = static_cast<int>(rng.uniform(0.0, 3.0));
            sigma.push_back(kind == 0 ? 1.0 : kind == 1 ? rng.uniform(1.2, 2.5) : rng.uniform(0.3, 0.8));
            (kind == 0 ? z : kind == 1 ? p : q) += 1;
        }
        Prescribed pm = prescribed_map(rng, sigma);
        Subspace outer = random_isotropic(rng, pm);
        Subspace m0 = outer.is_zero() ? Subspace::zero(d)
                                      : Subspace::span(outer.basis() * rng.gaussian_matrix(outer.dim(), 1));
        Subspace s = null_extension(pm.a, m0);
        o.require(s.dim() == z + std::min(p, q), "null_extension dimension");
        o.require(2 * s.dim() <= d + z, "dimension cap violated");
        o.require(s.contains(m0, 1e-8), "seed not contained");
        o.require(is_isometric_on(pm.a, s, 1e-9).isometric, "null_extension not isometric");
    }
    int spanning_pairs = 0;
    for (int t = 0; t < 30; ++t) {
        const int m = 1 + t % 2;
        std::vector<double> sigma;
        for (int k = 0; k < m; ++k) sigma.push_back(rng.uniform(1.2, 2.0));
        for (int k = 0; k < m; ++k) sigma.push_back(rng.uniform(0.4, 0.8));
        for (int k = 0; k < t % 3; ++k) sigma.push_back(1.0);
        const int d = static_cast<int>(sigma.size());
        Prescribed pm = prescribed_map(rng, sigma);
        // seeds of random maximal isometric parts, extended back by maximal_representation
        std::vector<Subspace> seeds;
        for (int k = 0; k < 2 + t % 2; ++k) {
            Subspace full = random_isotropic(rng, pm);
            seeds.push_back(Subspace::span(full.basis() * rng.gaussian_matrix(full.dim(), std::max(1, full.dim() - 1))));
        }
        if (subspace_sum(seeds, 1e-9).dim() < d) seeds.push_back(random_isotropic(rng, pm));
        if (subspace_sum(seeds, 1e-9).dim() < d) continue;
        MaximalRepresentation rep = maximal_representation(pm.a, Arrangement(seeds));
        PairwiseReport pr = verify_pairwise(pm.a, rep);
        o.require(pr.equal_dims, "output dimensions differ");
        o.require(pr.intersection_is_e_one, "intersection differs from E1");
        for (const auto& pc : pr.pairs) {
            o.require(pc.intersection_matches, "pairwise intersection differs from E_ij");
            if (pc.spans) {
                ++spanning_pairs;
                o.require(pc.dim_e_one_perp % 2 == 0 && pc.halves_ok, "even-dimension identity violated");
            }
        }
        for (const auto& part : rep.parts_out) {
            o.require(is_isometric_on(pm.a, part, 1e-9).isometric, "output part not isometric");
            o.require(2 * part.dim() <= d + rep.e_one.dim(), "dimension cap violated on output part");
        }
        for (std::size_t i = 0; i < seeds.size(); ++i)
            o.require(rep.parts_out[static_cast<std::size_t>(rep.t_map[i])].contains(seeds[i], 1e-8),
                      "output part misses its input");
    }
    o.require(spanning_pairs > 0, "no spanning pair exercised");
    if (o.ok) o.detail = std::to_string(spanning_pairs) + " spanning pairs checked";
    return o;
}

Outcome tractability() {
    Outcome o;
    Rng rng(111);
    for (int t = 0; t < 20; ++t) {
        const int d = 2 + t % 2;
        std::vector<Subspace> parts;
        while (parts.size() < 2 || subspace_sum(parts).dim() < d)
            parts.push_back(random_subspace(rng, d, 1 + static_cast<int>(rng.uniform(0.0, d - 1.0))));
        TractabilityVerdict v = classify(parts);
        o.require(v.tractable && v.trace.front().clause == "1d", "small ambient dimension not 1d");
    }
    for (int t = 0; t < 10; ++t) {
        TractabilityVerdict v = classify({random_subspace(rng, 4, 2), random_subspace(rng, 4, 2)});
        o.require(v.tractable && v.trace.front().clause == "1b", "transverse planes not 1b");
    }
    auto chain = coordinate_parts(4, {{0, 1}, {1, 2}, {2, 3}});
    o.require(!classify(chain).tractable, "three-plane chain reported tractable");
    std::vector<std::vector<Subspace>> cases = {
        chain,
        coordinate_parts(4, {{0}, {1}, {2}, {3}}),
        coordinate_parts(5, {{0, 1, 4}, {1, 2, 4}, {3, 4}}),
        coordinate_parts(4, {{0, 1}, {2, 3}}),
        coordinate_parts(5, {{0, 1}, {1, 2}, {2, 3}, {4}}),
    };
    for (int t = 0; t < 50; ++t) {
        const auto& base = cases[static_cast<std::size_t>(t) % cases.size()];
        bool expected = classify(base).tractable;
        Mat u = rng.unitary(base.front().ambient_dim());
        std::vector<Subspace> moved;
        for (const auto& p : base) moved.push_back(image(u, p));
        std::shuffle(moved.begin(), moved.end(), rng.engine());
        o.require(classify(moved).tractable == expected, "verdict changed under a unitary and reordering");
    }
    return o;
}

Outcome determinism() {
    Outcome o;
    const std::string path = "acceptance_tilt.json";
    std::ofstream(path) << kTiltConfig;
    std::string first, second;
    for (std::string* text : {&first, &second}) {
        std::ostringstream out, err;
        o.require(run_cli({"deform", "--config", path, "--format", "csv"}, out, err) == 0, "deform failed");
        *text = out.str();
    }
    std::remove(path.c_str());
    o.require(!first.empty() && first == second, "outputs differ");
    return o;
}

}  // namespace

int main() {
    criterion(1, "kernel identity", 5.0, kernel_identity);
    criterion(2, "automorphism laws", 0, automorphism_laws);
    criterion(3, "Fock embedding", 0, fock_embedding);
    criterion(4, "multiplier bound on the ball", 0, multiplier_full_ball);
    criterion(5, "multiplier bound on a subspace union", 0, multiplier_on_union);
    criterion(6, "sandwich inequalities", 0, sandwich);
    criterion(7, "Gram deviation bound", 0, gram_bound);
    criterion(8, "tilt deformation experiment", 30.0, deformation_experiment);
    criterion(9, "E1 machinery", 0, e_one_machinery);
    criterion(10, "null extensions and maximal representations", 0, appendix);
    criterion(11, "tractability", 0, tractability);
    criterion(12, "determinism", 0, determinism);
    std::printf("%d of 12 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
