#include "arveson/cli.hpp"
#include "arveson/maxrep.hpp"
#include "arveson/moebius.hpp"
#include "arveson/random.hpp"
#include "arveson/tractability.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace arveson {

using json = nlohmann::json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string idx(const std::string& base, std::size_t i) { return base + "[" + std::to_string(i) + "]"; }

Complex parse_complex(const json& j, const std::string& path) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ConfigError(path, "expected a complex number as [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

Vec parse_vector(const json& j, const std::string& path, int d) {
    if (!j.is_array()) throw ConfigError(path, "expected a list of complex entries");
    if (static_cast<int>(j.size()) != d)
        throw ConfigError(path, "expected " + std::to_string(d) + " entries, got " + std::to_string(j.size()));
    Vec v(d);
    for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = parse_complex(j[i], idx(path, i));
    return v;
}

Mat parse_matrix(const json& j, const std::string& path, int d) {
    if (!j.is_array() || j.empty()) throw ConfigError(path, "expected a nonempty list of rows");
    const auto rows = j.size();
    const auto cols = j[0].is_array() ? j[0].size() : 0;
    for (std::size_t r = 0; r < rows; ++r)
        if (!j[r].is_array() || j[r].size() != cols)
            throw ConfigError(idx(path, r), "rows have unequal lengths");
    if (rows != cols)
        throw ConfigError(path, "matrix is " + std::to_string(rows) + "x" + std::to_string(cols) + ", not square");
    if (static_cast<int>(rows) != d)
        throw ConfigError(path, "matrix size " + std::to_string(rows) + " does not match ambient_dim " +
                                    std::to_string(d));
    Mat m(d, d);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                parse_complex(j[r][c], idx(idx(path, r), c));
    return m;
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json vector_json(const Vec& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_json(v(i)));
    return out;
}

json matrix_json(const Mat& m) {
    json out = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) out.push_back(vector_json(m.row(r).transpose()));
    return out;
}

json basis_json(const Subspace& s) {
    json out = json::array();
    for (Eigen::Index c = 0; c < s.basis().cols(); ++c) out.push_back(vector_json(s.basis().col(c)));
    return out;
}

json number_json(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

std::string fmt(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

double parse_number(const std::string& s) {
    if (s == "nan") return kNaN;
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw ValidationError("report: bad number '" + s + "'");
    return v;
}

double* row_field(DeformRow& r, std::size_t k) {
    double* fields[] = {&r.epsilon,          &r.op_cond,
                        &r.mult_norm_V,      &r.mult_norm_W,
                        &r.truncated_T_norm, &r.truncated_Tinv_norm,
                        &r.truncated_cond,   &r.analytic_bound,
                        &r.c_V,              &r.c_AV};
    return fields[k];
}

template <class T>
T get_field(const json& j, const char* key, T fallback, const char* type) {
    if (!j.contains(key) || j[key].is_null()) return fallback;
    try {
        return j[key].get<T>();
    } catch (const json::exception&) {
        throw ConfigError(key, std::string("expected ") + type);
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("$", std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("$", "expected an object");
    ExperimentConfig c;
    if (!j.contains("ambient_dim")) throw ConfigError("ambient_dim", "required");
    c.ambient_dim = get_field<int>(j, "ambient_dim", 0, "a positive integer");
    if (c.ambient_dim <= 0) throw ConfigError("ambient_dim", "must be positive");
    const int d = c.ambient_dim;

    if (!j.contains("arrangement")) throw ConfigError("arrangement", "required");
    const json& arr = j["arrangement"];
    if (!arr.is_array() || arr.empty()) throw ConfigError("arrangement", "expected a nonempty list of parts");
    for (std::size_t p = 0; p < arr.size(); ++p) {
        const std::string path = idx("arrangement", p);
        if (!arr[p].is_array() || arr[p].empty()) throw ConfigError(path, "expected a nonempty list of vectors");
        std::vector<Vec> part;
        for (std::size_t v = 0; v < arr[p].size(); ++v) part.push_back(parse_vector(arr[p][v], idx(path, v), d));
        c.arrangement.push_back(std::move(part));
    }

    if (j.contains("deformation") && !j["deformation"].is_null()) {
        const json& def = j["deformation"];
        if (!def.is_object()) throw ConfigError("deformation", "expected an object");
        Deformation out;
        if (!def.contains("kind") || !def["kind"].is_string()) throw ConfigError("deformation.kind", "required string");
        out.kind = def["kind"].get<std::string>();
        if (out.kind == "tilt") {
            if (!def.contains("epsilons") || !def["epsilons"].is_array() || def["epsilons"].empty())
                throw ConfigError("deformation.epsilons", "expected a nonempty list of reals");
            for (std::size_t i = 0; i < def["epsilons"].size(); ++i) {
                const json& e = def["epsilons"][i];
                if (!e.is_number()) throw ConfigError(idx("deformation.epsilons", i), "expected a real");
                double v = e.get<double>();
                if (!(v >= 0.0 && v < std::numbers::pi / 2))
                    throw ConfigError(idx("deformation.epsilons", i), "must lie in [0, pi/2)");
                if (!out.epsilons.empty() && !(v < out.epsilons.back()))
                    throw ConfigError(idx("deformation.epsilons", i), "schedule must be strictly decreasing");
                out.epsilons.push_back(v);
            }
        } else if (out.kind == "matrix-list") {
            if (!def.contains("matrices") || !def["matrices"].is_array() || def["matrices"].empty())
                throw ConfigError("deformation.matrices", "expected a nonempty list of matrices");
            for (std::size_t i = 0; i < def["matrices"].size(); ++i)
                out.matrices.push_back(parse_matrix(def["matrices"][i], idx("deformation.matrices", i), d));
        } else {
            throw ConfigError("deformation.kind", "must be \"tilt\" or \"matrix-list\"");
        }
        c.deformation = std::move(out);
    }
    if (j.contains("matrix") && !j["matrix"].is_null()) c.matrix = parse_matrix(j["matrix"], "matrix", d);

    c.max_degree = get_field<int>(j, "max_degree", c.max_degree, "a nonnegative integer");
    if (c.max_degree < 0) throw ConfigError("max_degree", "must be nonnegative");
    c.gram_samples = get_field<int>(j, "gram_samples", c.gram_samples, "a nonnegative integer");
    if (c.gram_samples < 0) throw ConfigError("gram_samples", "must be nonnegative");
    c.seed = get_field<std::uint64_t>(j, "seed", c.seed, "an unsigned 64-bit integer");
    c.tol = get_field<double>(j, "tol", c.tol, "a positive real");
    if (!(c.tol > 0)) throw ConfigError("tol", "must be positive");
    return c;
}

std::string emit_config(const ExperimentConfig& c) {
    json j;
    j["ambient_dim"] = c.ambient_dim;
    json arr = json::array();
    for (const auto& part : c.arrangement) {
        json p = json::array();
        for (const auto& v : part) p.push_back(vector_json(v));
        arr.push_back(p);
    }
    j["arrangement"] = arr;
    if (c.deformation) {
        json def;
        def["kind"] = c.deformation->kind;
        if (c.deformation->kind == "tilt") {
            def["epsilons"] = c.deformation->epsilons;
        } else {
            json ms = json::array();
            for (const auto& m : c.deformation->matrices) ms.push_back(matrix_json(m));
            def["matrices"] = ms;
        }
        j["deformation"] = def;
    } else {
        j["deformation"] = nullptr;
    }
    j["matrix"] = c.matrix ? matrix_json(*c.matrix) : json(nullptr);
    j["max_degree"] = c.max_degree;
    j["gram_samples"] = c.gram_samples;
    j["seed"] = c.seed;
    j["tol"] = c.tol;
    return j.dump(2) + "\n";
}

const std::vector<std::string>& report_columns() {
    static const std::vector<std::string> cols = {
        "epsilon",        "op_cond", "mult_norm_V", "mult_norm_W", "truncated_T_norm", "truncated_Tinv_norm",
        "truncated_cond", "analytic_bound", "c_V",  "c_AV"};
    return cols;
}

std::string emit_csv(const DeformReport& report) {
    std::ostringstream out;
    const auto& cols = report_columns();
    for (const auto& c : cols) out << c << ',';
    out << "seed,max_degree,timestamp\n";
    for (DeformRow row : report.rows) {
        for (std::size_t k = 0; k < cols.size(); ++k) out << fmt(*row_field(row, k)) << ',';
        out << report.seed << ',' << report.max_degree << ',' << report.timestamp << '\n';
    }
    return out.str();
}

std::string emit_json(const DeformReport& report) {
    json j;
    j["seed"] = report.seed;
    j["max_degree"] = report.max_degree;
    j["timestamp"] = report.timestamp;
    json rows = json::array();
    const auto& cols = report_columns();
    for (DeformRow row : report.rows) {
        json r = json::object();
        for (std::size_t k = 0; k < cols.size(); ++k) r[cols[k]] = number_json(*row_field(row, k));
        rows.push_back(r);
    }
    j["rows"] = rows;
    j["warnings"] = report.warnings;
    return j.dump(2) + "\n";
}

std::string emit(const DeformReport& report, const std::string& format) {
    if (format == "csv") return emit_csv(report);
    if (format == "json") return emit_json(report);
    throw ValidationError("unknown format '" + format + "'");
}

DeformReport parse_report_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw ValidationError("report: empty CSV");
    const auto& cols = report_columns();
    std::string expected;
    for (const auto& c : cols) expected += c + ",";
    expected += "seed,max_degree,timestamp";
    if (line != expected) throw ValidationError("report: unexpected CSV header");
    DeformReport rep;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (cells.size() != cols.size() + 3) throw ValidationError("report: wrong number of CSV cells");
        DeformRow row;
        for (std::size_t k = 0; k < cols.size(); ++k) *row_field(row, k) = parse_number(cells[k]);
        rep.seed = std::stoull(cells[cols.size()]);
        rep.max_degree = std::stoi(cells[cols.size() + 1]);
        rep.timestamp = cells[cols.size() + 2];
        rep.rows.push_back(row);
    }
    return rep;
}

DeformReport parse_report_json(const std::string& text) {
    json j = json::parse(text);
    DeformReport rep;
    rep.seed = j.at("seed").get<std::uint64_t>();
    rep.max_degree = j.at("max_degree").get<int>();
    rep.timestamp = j.at("timestamp").get<std::string>();
    const auto& cols = report_columns();
    for (const auto& r : j.at("rows")) {
        DeformRow row;
        for (std::size_t k = 0; k < cols.size(); ++k) {
            const json& v = r.at(cols[k]);
            *row_field(row, k) = v.is_null() ? kNaN : v.get<double>();
        }
        rep.rows.push_back(row);
    }
    if (j.contains("warnings")) rep.warnings = j["warnings"].get<std::vector<std::string>>();
    return rep;
}

namespace {

struct Options {
    std::string config;
    std::string format = "csv";
    std::string out;
    std::uint64_t seed = 0;
    int degree = 0;
    double tol = kDefaultTol;
    int samples = 1000;
    std::vector<int> dims = {1, 2, 3, 8};
    CLI::Option* seed_opt = nullptr;
    CLI::Option* degree_opt = nullptr;
    CLI::Option* tol_opt = nullptr;
};

ExperimentConfig load(const Options& o) {
    if (o.config.empty()) throw ValidationError("--config is required for this subcommand");
    ExperimentConfig c = parse_config(read_file(o.config));
    if (o.seed_opt->count() > 0) c.seed = o.seed;
    if (o.degree_opt->count() > 0) {
        if (o.degree < 0) throw ValidationError("--degree must be nonnegative");
        c.max_degree = o.degree;
    }
    if (o.tol_opt->count() > 0) {
        if (!(o.tol > 0)) throw ValidationError("--tol must be positive");
        c.tol = o.tol;
    }
    return c;
}

std::string cmd_tractable(const Options& o) {
    ExperimentConfig c = load(o);
    TractabilityVerdict v = classify(config_parts(c), c.tol);
    if (o.format == "csv") {
        std::ostringstream out;
        out << "tractable,depth,clause,ambient_dim,part_dims\n";
        for (const auto& r : v.trace) {
            out << (v.tractable ? "true" : "false") << ',' << r.depth << ',' << r.clause << ',' << r.ambient_dim << ',';
            for (std::size_t k = 0; k < r.part_dims.size(); ++k) out << (k ? ";" : "") << r.part_dims[k];
            out << '\n';
        }
        return out.str();
    }
    json j;
    j["tractable"] = v.tractable;
    json trace = json::array();
    for (const auto& r : v.trace)
        trace.push_back({{"depth", r.depth}, {"clause", r.clause}, {"ambient_dim", r.ambient_dim}, {"part_dims", r.part_dims}});
    j["trace"] = trace;
    j["common_e"] = v.common_e ? basis_json(*v.common_e) : json(nullptr);
    return j.dump(2) + "\n";
}

std::string cmd_deform(const Options& o, std::ostream& err) {
    ExperimentConfig c = load(o);
    if (!c.deformation) throw ConfigError("deformation", "required for deform");
    DeformReport rep = run_experiment(c);
    for (const auto& w : rep.warnings) err << "warning: " << w << '\n';
    return emit(rep, o.format);
}

std::string cmd_kernel_check(const Options& o) {
    std::uint64_t seed = o.seed;
    if (!o.config.empty()) {
        ExperimentConfig c = load(o);
        seed = c.seed;
    }
    if (o.samples <= 0) throw ValidationError("--samples must be positive");
    Rng rng(seed);
    struct Line {
        int dim;
        double identity, kernel, involution, metric, defect;
    };
    std::vector<Line> lines;
    for (int d : o.dims) {
        if (d <= 0) throw ValidationError("--dims entries must be positive");
        Line l{d, 0, 0, 0, 0, 0};
        for (int t = 0; t < o.samples; ++t) {
            Automorphism f = random_automorphism(d, rng);
            Vec x = rng.ball_point(d), y = rng.ball_point(d);
            KernelResidual r = kernel_identity_residual(f, x, y);
            l.identity = std::max(l.identity, r.identity);
            l.kernel = std::max(l.kernel, r.kernel);
            l.involution = std::max(l.involution, (phi(f.a, phi(f.a, x)) - x).norm());
            l.metric = std::max(l.metric, std::abs(pseudohyperbolic(f(x), f(y)) - pseudohyperbolic(x, y)));
        }
        PointSet pts;
        for (int k = 0; k < 50; ++k) pts.push_back(rng.ball_point(d));
        l.defect = defect_identity_residual(random_automorphism(d, rng), pts);
        lines.push_back(l);
    }
    for (const auto& l : lines)
        if (!(l.identity < 1e-10 && l.kernel < 1e-10 && l.defect < 1e-9))
            throw NumericalError("kernel identity residual above tolerance at d = " + std::to_string(l.dim));
    std::ostringstream out;
    if (o.format == "csv") {
        out << "dim,samples,identity_residual,kernel_residual,involution_residual,metric_residual,defect_residual,seed\n";
        for (const auto& l : lines)
            out << l.dim << ',' << o.samples << ',' << fmt(l.identity) << ',' << fmt(l.kernel) << ',' << fmt(l.involution)
                << ',' << fmt(l.metric) << ',' << fmt(l.defect) << ',' << seed << '\n';
        return out.str();
    }
    json rows = json::array();
    for (const auto& l : lines)
        rows.push_back({{"dim", l.dim},
                        {"samples", o.samples},
                        {"identity_residual", l.identity},
                        {"kernel_residual", l.kernel},
                        {"involution_residual", l.involution},
                        {"metric_residual", l.metric},
                        {"defect_residual", l.defect}});
    json j{{"seed", seed}, {"rows", rows}};
    return j.dump(2) + "\n";
}

std::string cmd_maxrep(const Options& o) {
    ExperimentConfig c = load(o);
    if (!c.matrix) throw ConfigError("matrix", "required for maxrep");
    const double tol = std::max(c.tol, 1e-9);
    Arrangement arr(config_parts(c));
    MaximalRepresentation rep = maximal_representation(*c.matrix, arr, tol);
    PairwiseReport pr = verify_pairwise(*c.matrix, rep, tol);
    if (o.format == "csv") {
        std::ostringstream out;
        out << "i,j,intersection_dim,e_ij_dim,intersection_matches,spans,dim_e_one_perp,proj_dim_i,proj_dim_j,halves_ok\n";
        for (const auto& p : pr.pairs)
            out << p.i << ',' << p.j << ',' << p.intersection_dim << ',' << p.e_ij_dim << ',' << p.intersection_matches
                << ',' << p.spans << ',' << p.dim_e_one_perp << ',' << p.proj_dim_i << ',' << p.proj_dim_j << ','
                << p.halves_ok << '\n';
        return out.str();
    }
    json parts = json::array();
    for (const auto& p : rep.parts_out) parts.push_back(basis_json(p));
    json pairs = json::array();
    for (const auto& p : pr.pairs)
        pairs.push_back({{"i", p.i},
                         {"j", p.j},
                         {"intersection_dim", p.intersection_dim},
                         {"e_ij_dim", p.e_ij_dim},
                         {"intersection_matches", p.intersection_matches},
                         {"spans", p.spans},
                         {"dim_e_one_perp", p.dim_e_one_perp},
                         {"proj_dim_i", p.proj_dim_i},
                         {"proj_dim_j", p.proj_dim_j},
                         {"halves_ok", p.halves_ok}});
    json j;
    j["e_one"] = basis_json(rep.e_one);
    j["parts_out"] = parts;
    j["t_map"] = rep.t_map;
    j["report"] = {{"equal_dims", pr.equal_dims},
                   {"intersection_is_e_one", pr.intersection_is_e_one},
                   {"all_ok", pr.all_ok},
                   {"pairs", pairs}};
    return j.dump(2) + "\n";
}

std::string cmd_mult_norm(const Options& o) {
    ExperimentConfig c = load(o);
    if (!c.matrix) throw ConfigError("matrix", "required for mult-norm");
    if (c.gram_samples <= 0) throw ConfigError("gram_samples", "must be positive for mult-norm");
    std::vector<Subspace> parts = config_parts(c);
    Rng rng(c.seed);
    PointSet pts = sample_union(parts, c.gram_samples, rng);
    const double lb = multiplier_norm_lb(*c.matrix, pts);
    const double exact = op_norm(*c.matrix * subspace_sum(parts, c.tol).basis());
    std::ostringstream out;
    if (o.format == "csv") {
        out << "samples,lower_bound,restricted_op_norm,ratio,seed\n";
        out << c.gram_samples << ',' << fmt(lb) << ',' << fmt(exact) << ',' << fmt(lb / exact) << ',' << c.seed << '\n';
        return out.str();
    }
    json j{{"samples", c.gram_samples},
           {"lower_bound", lb},
           {"restricted_op_norm", exact},
           {"ratio", lb / exact},
           {"seed", c.seed}};
    return j.dump(2) + "\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Truncated Drury-Arveson deformation experiments"};
    app.require_subcommand(1);
    Options o;
    auto common = [&](CLI::App* s) {
        s->add_option("--config", o.config, "JSON experiment config");
        s->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        o.seed_opt = s->add_option("--seed", o.seed, "RNG seed (overrides config)");
        o.degree_opt = s->add_option("--degree", o.degree, "maximal degree N (overrides config)");
        o.tol_opt = s->add_option("--tol", o.tol, "rank tolerance (overrides config)");
        s->add_option("--out", o.out, "output path (default stdout)");
    };
    auto* tractable = app.add_subcommand("tractable", "classify an arrangement");
    auto* deform = app.add_subcommand("deform", "run the deformation experiment");
    auto* kernel = app.add_subcommand("kernel-check", "check the automorphism kernel identities");
    auto* maxrep = app.add_subcommand("maxrep", "maximal representation of an arrangement");
    auto* mult = app.add_subcommand("mult-norm", "Gram-pencil multiplier norm bound");
    // every subcommand shares the flag set; options bind to the same storage
    for (auto* s : {tractable, deform, kernel, maxrep, mult}) common(s);
    kernel->add_option("--samples", o.samples, "random triples per dimension");
    kernel->add_option("--dims", o.dims, "ambient dimensions");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }
    // the last common() call bound the option handles; rebind to the chosen subcommand
    CLI::App* chosen = app.get_subcommands().front();
    o.seed_opt = chosen->get_option("--seed");
    o.degree_opt = chosen->get_option("--degree");
    o.tol_opt = chosen->get_option("--tol");

    try {
        std::string text;
        if (chosen == tractable) text = cmd_tractable(o);
        else if (chosen == deform) text = cmd_deform(o, err);
        else if (chosen == kernel) text = cmd_kernel_check(o);
        else if (chosen == maxrep) text = cmd_maxrep(o);
        else text = cmd_mult_norm(o);
        if (o.out.empty()) {
            out << text;
        } else {
            std::ofstream f(o.out, std::ios::binary);
            if (!f) throw ValidationError("cannot write " + o.out);
            f << text;
        }
        return 0;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "failure: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace arveson
