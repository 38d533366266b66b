#pragma once

#include "arveson/config.hpp"
#include "arveson/fock.hpp"

#include <string>
#include <vector>

namespace arveson {

/// T_A truncated at degree N, as blocks R_n* Sym^n(A) Q_n between orthonormal
/// bases Q_n of V^n and R_n of (AV)^n.
struct TruncatedDeformOp {
    int max_degree = 0;
    std::vector<Mat> blocks;
    std::vector<Mat> domain;
    std::vector<Mat> range;
    double intertwining_residual = 0.0;
    std::vector<std::string> warnings;
};

struct TruncatedNorms {
    double norm = 1.0;
    double inv_norm = 1.0;
    double cond = 1.0;
};

struct AnalyticBound {
    double value = 0.0;
    double s = 0.0;
    int n_s = 0;
    int best_cutoff = 0;
};

struct GramDeviation {
    double measured = 0.0;
    double bound = 0.0;
};

/// Samples `samples` points of the union from rng to check block_n Q_n* x^n = R_n* (Ax)^n.
TruncatedDeformOp build_t_op(const Mat& a, const std::vector<Subspace>& parts, int n_max, double tol = kDefaultTol,
                             Rng* rng = nullptr, int samples = 0);
TruncatedDeformOp build_t_op(const Mat& a, const Arrangement& arr, int n_max, double tol = kDefaultTol,
                             Rng* rng = nullptr, int samples = 0);

TruncatedNorms truncated_norms(const TruncatedDeformOp& t, double tol = kDefaultTol);

/// Bound on the untruncated ||T_A|| for parts meeting pairwise trivially,
/// minimized over the admissible cutoffs N(s)..n_max.
AnalyticBound analytic_bound(const Mat& a, const std::vector<Subspace>& parts, int n_max,
                             double tol = kDefaultTol);
AnalyticBound analytic_bound(const Mat& a, const Arrangement& arr, int n_max, double tol = kDefaultTol);

/// Bound on cond(T_A): the norm bound for A on V times the one for A^{-1} on AV.
double analytic_cond_bound(const Mat& a, const std::vector<Subspace>& parts, int n_max, double tol = kDefaultTol);

GramDeviation gram_deviation(const Mat& a, const Mat& b, const std::vector<Subspace>& parts, int n_max,
                             int n_star, double tol = kDefaultTol);

/// Worst relative slack of both sides of the two-sided norm comparison for
/// random decompositions x = sum x_i with x_i in Sym^n(M_i).
double sandwich_check(const std::vector<Subspace>& parts, int n, int trials, Rng& rng);

/// A = I + (cos eps - 1) g g* + sin eps u g*: fixes one part, rotates a unit
/// vector g of another part (orthogonal to the first) toward a unit u of the first.
Mat make_tilt_family(const std::vector<Subspace>& parts, double epsilon, double tol = 1e-12);
Mat make_tilt_family(const Arrangement& arr, double epsilon, double tol = 1e-12);

struct DeformRow {
    double epsilon = 0.0;
    double op_cond = 0.0;
    double mult_norm_V = 0.0;
    double mult_norm_W = 0.0;
    double truncated_T_norm = 0.0;
    double truncated_Tinv_norm = 0.0;
    double truncated_cond = 0.0;
    double analytic_bound = 0.0;
    double c_V = 0.0;
    double c_AV = 0.0;
};

struct DeformReport {
    std::vector<DeformRow> rows;
    std::uint64_t seed = 0;
    int max_degree = 0;
    std::string timestamp;
    std::vector<std::string> warnings;
};

/// Parts of a config as orthonormal subspaces.
std::vector<Subspace> config_parts(const ExperimentConfig& config);

DeformReport run_experiment(const ExperimentConfig& config);

/// UTC time from SOURCE_DATE_EPOCH, or the epoch when unset.
std::string report_timestamp();

}  // namespace arveson
