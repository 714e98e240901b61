#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "census/io.hpp"

namespace {

using namespace census;

constexpr int kExitValidation = 2;
constexpr int kExitResourceCap = 3;

struct GlobalFlags {
    int shards = 1;
    i64 mem_cap = i64(4) << 30;
    bool csv_stdout = false;
    u64 seed = 0;
};

/// Polynomial argument: inline text, inline JSON, or @file with either.
IntPolynomial read_poly_arg(const std::string& arg, int min_arity = 0) {
    std::string text = arg;
    if (!text.empty() && text[0] == '@') {
        std::ifstream in(text.substr(1));
        if (!in) throw std::invalid_argument("cannot open polynomial file " + text.substr(1));
        std::stringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    std::size_t first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{')
        return poly_from_json(Json::parse(text));
    return parse_polynomial(text, min_arity);
}

Json meta_block(const std::string& hash) {
    Json m;
    m["tool"] = kToolVersion;
    m["spec"] = hash;
    return m;
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

i64 ms_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0)
        .count();
}

Engine engine_from_name(const std::string& name) {
    if (name == "brute") return Engine::Brute;
    if (name == "slice") return Engine::Slice;
    if (name == "sieve") return Engine::Sieve;
    throw std::invalid_argument("unknown engine '" + name + "' (expected brute|slice|sieve)");
}

void write_points_csv(const std::string& path, const std::vector<std::vector<i64>>& pts,
                      const std::vector<Line>& lines, const std::string& hash) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open output file " + path);
    out << "# " << kToolVersion << "\n# spec " << hash << "\n";
    if (!pts.empty())
        for (std::size_t i = 0; i < pts[0].size(); ++i) out << "x" << i << ",";
    out << "primitive,on_line\n";
    for (const PointRecord& r : classify_points(pts, lines)) {
        for (i64 c : r.coords) out << c << ",";
        out << (r.primitive ? 1 : 0) << "," << (r.on_detected_line ? 1 : 0) << "\n";
    }
}

int run(int argc, char** argv) {
    CLI::App app{"exact integer-point counting toolkit for affine and projective hypersurfaces"};
    app.require_subcommand(1);
    app.set_config("--config", "", "flat key = value config file mirroring the flags");

    GlobalFlags g;
    app.add_option("--shards", g.shards, "worker shards for the enumeration engines")
        ->check(CLI::Range(1, 1024));
    app.add_option("--mem-cap", g.mem_cap, "memory cap in bytes for tables (default 4 GiB)");
    app.add_flag("--csv", g.csv_stdout, "emit CSV instead of JSON on stdout where applicable");
    bool json_stdout = false;
    app.add_flag("--json", json_stdout, "emit JSON on stdout (default)");
    app.add_option("--seed", g.seed, "seed for sampled line detection");

    // ---- count ----
    auto* count_cmd = app.add_subcommand("count", "count integer points of bounded height");
    std::string count_poly, count_engine = "slice", count_out, count_dump;
    i64 count_bound = 0, grid_start = 0, grid_steps = 0;
    double grid_factor = 2.0;
    bool projective = false, identify_antipodes = false, count_detect_lines = false;
    count_cmd->add_option("--poly", count_poly, "polynomial (text grammar, JSON, or @file)")->required();
    count_cmd->add_option("--bound", count_bound, "height bound B");
    count_cmd->add_flag("--projective", projective, "count primitive vectors on a form");
    count_cmd->add_flag("--identify-antipodes", identify_antipodes,
                        "halve the projective count (x and -x identified)");
    count_cmd->add_option("--engine", count_engine, "brute|slice|sieve");
    count_cmd->add_option("--grid-start", grid_start, "series: first B");
    count_cmd->add_option("--grid-factor", grid_factor, "series: geometric factor per step");
    count_cmd->add_option("--grid-steps", grid_steps, "series: number of grid points");
    count_cmd->add_option("--out", count_out, "write the series CSV here (streamed per B)");
    count_cmd->add_option("--dump-points", count_dump, "write counted points as CSV");
    count_cmd->add_flag("--detect-lines", count_detect_lines,
                        "mark points on detected lines in the dump");

    // ---- modp ----
    auto* modp_cmd = app.add_subcommand("modp", "exhaustive mod-p census of a form");
    std::string modp_poly;
    i64 modp_prime = 0;
    bool modp_skip_u = false;
    modp_cmd->add_option("--poly", modp_poly)->required();
    modp_cmd->add_option("--prime", modp_prime)->required();
    modp_cmd->add_flag("--skip-u", modp_skip_u, "skip the tangent-section count U_p");

    // ---- smooth ----
    auto* smooth_cmd = app.add_subcommand("smooth", "smoothness evidence for a polynomial");
    std::string smooth_poly, smooth_primes = "3,5,7,11,13";
    bool smooth_affine = false, smooth_proj = false;
    smooth_cmd->add_option("poly", smooth_poly, "polynomial")->required();
    smooth_cmd->add_option("--primes", smooth_primes, "comma-separated evidence primes");
    smooth_cmd->add_flag("--affine", smooth_affine, "force the affine reading");
    smooth_cmd->add_flag("--projective", smooth_proj, "force the projective reading");

    // ---- slice-scan ----
    auto* slice_cmd = app.add_subcommand("slice-scan", "bad hyperplane-slice scan along a direction");
    std::string slice_poly, slice_dir;
    i64 slice_bound = 10, slice_radius = 8;
    bool slice_search = false;
    slice_cmd->add_option("poly", slice_poly)->required();
    slice_cmd->add_option("--direction", slice_dir, "comma-separated primitive direction");
    slice_cmd->add_option("--bound", slice_bound, "scan |kappa| <= bound");
    slice_cmd->add_flag("--search", slice_search, "run the constructive good-slice search instead");
    slice_cmd->add_option("--radius", slice_radius, "good-slice search radius");

    // ---- lines ----
    auto* lines_cmd = app.add_subcommand("lines", "detect lines and split N(F;B) on/off them");
    std::string lines_poly, lines_engine = "slice";
    i64 lines_bound = 0;
    std::size_t lines_sample = 256;
    lines_cmd->add_option("--poly", lines_poly)->required();
    lines_cmd->add_option("--bound", lines_bound)->required();
    lines_cmd->add_option("--engine", lines_engine);
    lines_cmd->add_option("--sample", lines_sample, "sample size for pairwise line detection");

    // ---- r3 ----
    auto* r3_cmd = app.add_subcommand("r3", "representations as a sum of three d-th powers");
    i64 r3_n = 0;
    int r3_d = 3;
    r3_cmd->add_option("--N", r3_n)->required();
    r3_cmd->add_option("--d", r3_d);

    // ---- r3-batch ----
    auto* batch_cmd = app.add_subcommand("r3-batch", "r_d(N) for every N <= X");
    i64 batch_max = 0;
    int batch_d = 3;
    std::string batch_out;
    batch_cmd->add_option("--max", batch_max)->required();
    batch_cmd->add_option("--d", batch_d);
    batch_cmd->add_option("--out", batch_out, "CSV path (N,r rows with r > 0)");

    // ---- equal-sums ----
    auto* eq_cmd = app.add_subcommand("equal-sums", "equal sums of like polynomials");
    std::string eq_poly;
    int eq_s = 2;
    i64 eq_bound = 0;
    eq_cmd->add_option("--poly", eq_poly)->required();
    eq_cmd->add_option("--s", eq_s);
    eq_cmd->add_option("--bound", eq_bound)->required();

    // ---- exponents ----
    auto* exp_cmd = app.add_subcommand("exponents", "closed-form exponent evaluation");
    std::string exp_formula, exp_in;
    int exp_d = 0, exp_n = 0, exp_k = 0, exp_e = 0, exp_delta = 0;
    exp_cmd->add_option("--formula", exp_formula)->required();
    exp_cmd->add_option("--d", exp_d);
    exp_cmd->add_option("--n", exp_n);
    exp_cmd->add_option("--k", exp_k);
    exp_cmd->add_option("--e", exp_e);
    exp_cmd->add_option("--delta", exp_delta);
    exp_cmd->add_option("--in", exp_in, "optional series CSV; adds the fitted slope fields");

    // ---- fit ----
    auto* fit_cmd = app.add_subcommand("fit", "log-log slope fit of a count series");
    std::string fit_in;
    fit_cmd->add_option("--in", fit_in, "series CSV (B,count)")->required();

    // ---- verify ----
    auto* verify_cmd = app.add_subcommand("verify", "bound-compliance report for a count series");
    std::string verify_in, verify_formula;
    int v_d = 0, v_n = 0, v_k = 0, v_e = 0, v_delta = 0;
    double verify_eps = 0.1;
    verify_cmd->add_option("--in", verify_in)->required();
    verify_cmd->add_option("--formula", verify_formula)->required();
    verify_cmd->add_option("--d", v_d);
    verify_cmd->add_option("--n", v_n);
    verify_cmd->add_option("--k", v_k);
    verify_cmd->add_option("--e", v_e);
    verify_cmd->add_option("--delta", v_delta);
    verify_cmd->add_option("--eps", verify_eps);

    // global flags may appear before or after the subcommand
    for (auto* sub : app.get_subcommands([](const CLI::App*) { return true; })) sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    auto t0 = std::chrono::steady_clock::now();

    if (count_cmd->parsed()) {
        IntPolynomial f = read_poly_arg(count_poly);
        CountOptions opts;
        opts.engine = engine_from_name(count_engine);
        opts.shards = g.shards;
        opts.mem_cap_bytes = g.mem_cap;

        bool grid_mode = grid_steps > 0;
        if (!grid_mode && count_bound < 1)
            throw std::invalid_argument("count: need --bound or a --grid-start/--grid-steps series");

        std::vector<std::pair<std::string, std::string>> spec{
            {"cmd", "count"},
            {"poly", to_string(f)},
            {"projective", projective ? "1" : "0"},
            {"engine", count_engine},
        };
        if (grid_mode) {
            spec.emplace_back("grid", std::to_string(grid_start) + "x" + std::to_string(grid_factor) +
                                          "^" + std::to_string(grid_steps));
        } else {
            spec.emplace_back("bound", std::to_string(count_bound));
        }
        std::string hash = spec_hash(spec);

        if (grid_mode) {
            if (grid_start < 1 || grid_factor <= 1.0)
                throw std::invalid_argument("count: grid needs --grid-start >= 1 and --grid-factor > 1");
            CountSeries series;
            series.experiment_id = to_string(f);
            std::ofstream out;
            if (!count_out.empty()) {
                out.open(count_out);
                if (!out) throw std::invalid_argument("cannot open " + count_out);
                out << "# " << kToolVersion << "\n# spec " << hash << "\n";
                out << "# experiment " << series.experiment_id << "\nB,count\n";
            }
            i64 b = grid_start;
            for (i64 step = 0; step < grid_steps; ++step) {
                i64 c = projective ? count_projective(f, b, opts) : count_affine(f, b, opts);
                if (identify_antipodes) c /= 2;
                series.points.emplace_back(b, c);
                if (out.is_open()) {
                    out << b << "," << c << "\n";
                    out.flush();  // interrupted runs keep completed rows
                }
                b = static_cast<i64>(static_cast<double>(b) * grid_factor);
            }
            if (g.csv_stdout) {
                write_series_csv(std::cout, series, hash);
            } else {
                Json j;
                j["meta"] = meta_block(hash);
                Json pts = Json::array();
                for (const auto& [bb, cc] : series.points) pts.push_back(Json::array({bb, cc}));
                j["series"] = std::move(pts);
                j["elapsed_ms"] = ms_since(t0);
                emit(j);
            }
            return 0;
        }

        std::vector<std::vector<i64>> pts;
        if (!count_dump.empty()) opts.collect_points = &pts;
        i64 c = projective ? count_projective(f, count_bound, opts)
                           : count_affine(f, count_bound, opts);
        if (identify_antipodes) {
            if (!projective) throw std::invalid_argument("--identify-antipodes needs --projective");
            c /= 2;
        }
        if (!count_dump.empty()) {
            std::vector<Line> lines;
            if (count_detect_lines && projective) lines = detect_lines(f, pts);
            write_points_csv(count_dump, pts, lines, hash);
        }
        Json j;
        j["meta"] = meta_block(hash);
        j["count"] = c;
        j["engine"] = count_engine;
        j["elapsed_ms"] = ms_since(t0);
        j["shards"] = g.shards;
        emit(j);
        return 0;
    }

    if (modp_cmd->parsed()) {
        IntPolynomial f = read_poly_arg(modp_poly);
        ModPSummary s = count_mod_p(f, modp_prime, !modp_skip_u);
        Json j;
        j["meta"] = meta_block(spec_hash({{"cmd", "modp"}, {"poly", to_string(f)},
                                          {"prime", std::to_string(modp_prime)}}));
        j.update(to_json(s));
        j["elapsed_ms"] = ms_since(t0);
        emit(j);
        return 0;
    }

    if (smooth_cmd->parsed()) {
        IntPolynomial f = read_poly_arg(smooth_poly);
        SmoothOptions opts;
        opts.evidence_primes.clear();
        std::istringstream ps(smooth_primes);
        std::string tok;
        while (std::getline(ps, tok, ',')) opts.evidence_primes.push_back(std::stoll(tok));
        VarietyKind kind = VarietyKind::Auto;
        if (smooth_affine) kind = VarietyKind::Affine;
        if (smooth_proj) kind = VarietyKind::Projective;
        SmoothnessVerdict v = smoothness_verdict(f, opts, kind);
        Json j;
        j["meta"] = meta_block(spec_hash({{"cmd", "smooth"}, {"poly", to_string(f)},
                                          {"primes", smooth_primes}}));
        j.update(to_json(v));
        emit(j);
        return 0;
    }

    if (slice_cmd->parsed()) {
        IntPolynomial f = read_poly_arg(slice_poly);
        Json j;
        j["meta"] = meta_block(spec_hash({{"cmd", "slice-scan"}, {"poly", to_string(f)},
                                          {"direction", slice_dir},
                                          {"bound", std::to_string(slice_bound)}}));
        if (slice_search) {
            SliceReport r = good_slice_search(f, slice_radius);
            j.update(to_json(r));
        } else {
            if (slice_dir.empty())
                throw std::invalid_argument("slice-scan: need --direction (or --search)");
            std::vector<i64> dir;
            std::istringstream ds(slice_dir);
            std::string tok;
            while (std::getline(ds, tok, ',')) dir.push_back(std::stoll(tok));
            auto bad = bad_slice_values(f, dir, slice_bound);
            Json arr = Json::array();
            for (const auto& b : bad) arr.push_back(to_json(b));
            j["direction"] = dir;
            j["bad_values"] = std::move(arr);
        }
        emit(j);
        return 0;
    }

    if (lines_cmd->parsed()) {
        IntPolynomial f = read_poly_arg(lines_poly);
        CountOptions opts;
        opts.engine = engine_from_name(lines_engine);
        opts.shards = g.shards;
        opts.mem_cap_bytes = g.mem_cap;
        OffLineCounts c = count_off_lines(f, lines_bound, opts, lines_sample, g.seed);
        Json j;
        j["meta"] = meta_block(spec_hash({{"cmd", "lines"}, {"poly", to_string(f)},
                                          {"bound", std::to_string(lines_bound)},
                                          {"seed", std::to_string(g.seed)}}));
        j.update(to_json(c));
        j["elapsed_ms"] = ms_since(t0);
        emit(j);
        return 0;
    }

    if (r3_cmd->parsed()) {
        RepCount r = r_d(r3_n, r3_d, g.mem_cap);
        Json j;
        j["meta"] = meta_block(spec_hash({{"cmd", "r3"}, {"N", std::to_string(r3_n)},
                                          {"d", std::to_string(r3_d)}}));
        j.update(to_json(r));
        emit(j);
        return 0;
    }

    if (batch_cmd->parsed()) {
        RdBatch b = r_d_batch(batch_max, batch_d, g.mem_cap);
        std::string hash = spec_hash({{"cmd", "r3-batch"}, {"max", std::to_string(batch_max)},
                                      {"d", std::to_string(batch_d)}});
        if (!batch_out.empty()) {
            std::ofstream out(batch_out);
            if (!out) throw std::invalid_argument("cannot open " + batch_out);
            out << "# " << kToolVersion << "\n# spec " << hash << "\nN,r\n";
            for (i64 n = 1; n <= batch_max; ++n)
                if (b.r[static_cast<std::size_t>(n)] > 0)
                    out << n << "," << b.r[static_cast<std::size_t>(n)] << "\n";
        }
        Json j;
        j["meta"] = meta_block(hash);
        j["max_r"] = b.max_r;
        j["argmax"] = b.argmax;
        i64 total = 0;
        for (i64 v : b.r) total += v;
        j["total_representations"] = total;
        j["elapsed_ms"] = ms_since(t0);
        emit(j);
        return 0;
    }

    if (eq_cmd->parsed()) {
        IntPolynomial f = read_poly_arg(eq_poly);
        EqualSumsTally tally = equal_sums(f, eq_s, eq_bound, g.mem_cap);
        Json j;
        j["meta"] = meta_block(spec_hash({{"cmd", "equal-sums"}, {"poly", to_string(f)},
                                          {"s", std::to_string(eq_s)},
                                          {"bound", std::to_string(eq_bound)}}));
        j.update(to_json(tally));
        j["elapsed_ms"] = ms_since(t0);
        emit(j);
        return 0;
    }

    if (exp_cmd->parsed()) {
        auto id = formula_from_name(exp_formula);
        if (!id) throw std::invalid_argument("unknown formula '" + exp_formula + "'");
        ExponentParams p;
        if (exp_d > 0) p.d = exp_d;
        if (exp_n > 0) p.n = exp_n;
        if (exp_k > 0) p.k = exp_k;
        if (exp_e > 0) p.e = exp_e;
        if (exp_delta > 0) p.delta = exp_delta;
        EvaluatedFormula ev = evaluate_formula(*id, p);
        Json j;
        j["meta"] = meta_block(spec_hash({{"cmd", "exponents"}, {"formula", exp_formula}}));
        j["formula"] = exp_formula;
        Json params = Json::object();
        if (p.d) params["d"] = *p.d;
        if (p.n) params["n"] = *p.n;
        if (p.k) params["k"] = *p.k;
        if (p.e) params["e"] = *p.e;
        if (p.delta) params["delta"] = *p.delta;
        j["params"] = std::move(params);
        j["value"] = ev.value;
        j["symbolic"] = ev.symbolic;
        if (!exp_in.empty()) {
            std::ifstream in(exp_in);
            if (!in) throw std::invalid_argument("cannot open " + exp_in);
            FitResult fr = fit_exponent(read_series_csv(in));
            j["fitted_slope"] = fr.slope;
            j["fitted_intercept"] = fr.intercept;
            j["residual"] = fr.residual;
        }
        emit(j);
        return 0;
    }

    if (fit_cmd->parsed()) {
        std::ifstream in(fit_in);
        if (!in) throw std::invalid_argument("cannot open " + fit_in);
        CountSeries s = read_series_csv(in);
        FitResult r = fit_exponent(s);
        Json j;
        j["meta"] = meta_block(spec_hash({{"cmd", "fit"}, {"in", fit_in}}));
        j.update(to_json(r));
        emit(j);
        return 0;
    }

    if (verify_cmd->parsed()) {
        std::ifstream in(verify_in);
        if (!in) throw std::invalid_argument("cannot open " + verify_in);
        CountSeries s = read_series_csv(in);
        auto id = formula_from_name(verify_formula);
        if (!id) throw std::invalid_argument("unknown formula '" + verify_formula + "'");
        ExponentParams p;
        if (v_d > 0) p.d = v_d;
        if (v_n > 0) p.n = v_n;
        if (v_k > 0) p.k = v_k;
        if (v_e > 0) p.e = v_e;
        if (v_delta > 0) p.delta = v_delta;
        BoundReport r = bound_report(s, *id, p, verify_eps);
        Json j;
        j["meta"] = meta_block(spec_hash({{"cmd", "verify"}, {"in", verify_in},
                                          {"formula", verify_formula}}));
        j.update(to_json(r));
        emit(j);
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const census::ResourceCapError& e) {
        std::cerr << "resource cap: " << e.what() << "\n";
        return kExitResourceCap;
    } catch (const census::ParseError& e) {
        std::cerr << "parse error at position " << e.position() << ": " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
}
