// Command-line front end: presets, verification pipeline, dimension
// reports, point-cloud export and Monte Carlo spot checks.
//
// Exit codes: 0 success, 1 violations found, 2 usage/validation error.

#include "CLI11.hpp"

#include "metadice/fractal.hpp"
#include "metadice/generation.hpp"
#include "metadice/json_io.hpp"
#include "metadice/preference.hpp"
#include "metadice/presets.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace metadice;

constexpr int kExitOk = 0;
constexpr int kExitViolations = 1;
constexpr int kExitUsage = 2;

std::uint64_t member_cap_from_env() {
    const char* env = std::getenv("METADICE_MEMBER_CAP");
    if (env == nullptr || *env == '\0') {
        return kDefaultMemberCap;
    }
    try {
        return std::stoull(env);
    } catch (const std::exception&) {
        throw std::invalid_argument("METADICE_MEMBER_CAP must be a positive integer");
    }
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        if (text.empty() || text.back() != '\n') {
            std::cout << '\n';
        }
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        throw std::invalid_argument("cannot open output file '" + out_path + "'");
    }
    out << text;
}

void emit_json(const Json& j, const std::string& out_path) {
    emit(j.dump(2) + "\n", out_path);
}

struct LoadedTuple {
    std::string name;  // preset name or input path
    std::vector<std::string> labels;
    std::vector<StepQuantile> members;
};

LoadedTuple load_exact_tuple(const std::string& preset, const std::string& input_file,
                             const std::string& p_text) {
    if (!preset.empty() && !input_file.empty()) {
        throw std::invalid_argument("choose either --preset or --input, not both");
    }
    if (!preset.empty()) {
        if (preset == "trybula") {
            if (p_text.empty()) {
                throw std::invalid_argument("preset trybula requires --p (a rational, or 'golden')");
            }
            if (p_text == "golden") {
                throw std::invalid_argument(
                    "--p golden is float-only; this command needs exact rationals");
            }
            auto triple = trybula_triplet_exact(parse_rational(p_text));
            return {"trybula", {"X", "Y", "Z"}, {triple.begin(), triple.end()}};
        }
        PresetFaces faces = preset_faces(preset);
        std::vector<StepQuantile> members;
        members.reserve(faces.faces.size());
        for (auto& f : faces.faces) {
            members.push_back(make_dice(std::move(f)));
        }
        return {std::string(preset), std::move(faces.labels), std::move(members)};
    }
    if (input_file.empty()) {
        throw std::invalid_argument("need --preset NAME or --input FILE");
    }
    std::ifstream in(input_file);
    if (!in) {
        throw std::invalid_argument("cannot open input file '" + input_file + "'");
    }
    Json j = Json::parse(in);
    LoadedTuple loaded;
    loaded.name = input_file;
    if (j.is_object() && j.contains("labels")) {
        loaded.labels = j["labels"].get<std::vector<std::string>>();
    }
    loaded.members = tuple_from_json(j);
    return loaded;
}

LambdaConfig select_lambda(const BasicTuple& basic, const std::string& lambda_text, bool strict) {
    if (lambda_text.empty()) {
        return minimal_lambda(basic, strict);
    }
    return make_lambda_config(basic, parse_rational(lambda_text), strict);
}

// ---- preset ----------------------------------------------------------

int cmd_preset(const std::string& name, const std::string& p_text, const std::string& out_path) {
    if (name == "trybula" && p_text == "golden") {
        const double p = (std::sqrt(5.0) - 1.0) / 2.0;
        TrybulaTriplet triple = trybula_triplet(p);
        Json out;
        out["name"] = "trybula";
        out["p"] = "golden";
        out["float"] = true;
        out["labels"] = {"X", "Y", "Z"};
        out["members"] = Json::array({to_json(triple.x), to_json(triple.y), to_json(triple.z)});
        emit_json(out, out_path);
        return kExitOk;
    }
    LoadedTuple loaded = load_exact_tuple(name, "", p_text);
    Json out = tuple_to_json(loaded.name, loaded.members, loaded.labels);
    if (name == "trybula") {
        out["p"] = to_string(parse_rational(p_text));
    }
    emit_json(out, out_path);
    return kExitOk;
}

// ---- verify ----------------------------------------------------------

int cmd_verify(const LoadedTuple& loaded, const std::string& lambda_text, bool strict, int k,
               const std::string& out_path) {
    if (k < 1) {
        throw std::invalid_argument("verify requires --k >= 1");
    }
    BasicTuple basic = validate_basic(loaded.members);
    LambdaConfig config = select_lambda(basic, lambda_text, strict);
    Generation gen = build_generation(basic, config, k, member_cap_from_env());

    BijectionReport bijection = verify_bijection(gen);
    PairwiseRelationReport pairwise = verify_divergence_relations(gen);
    std::optional<MetaIntransitivityReport> meta;
    if (k >= 2) {
        meta = verify_meta_intransitivity(gen);
    }
    FunctionalConstancyReport means = verify_functional_constancy(gen, WeightFunction::constant(Rational(1)));

    std::size_t violations_total =
        bijection.violations.size() + pairwise.violations.size() + means.violations.size();
    if (meta) {
        violations_total += meta->violations.size();
    }

    Json out;
    out["input"] = loaded.name;
    out["m"] = basic.size();
    out["k"] = k;
    out["lambda"] = to_string(config.lambda);
    out["epsilon"] = to_string(config.epsilon);
    out["strict"] = config.strict;
    out["r"] = to_string(basic.r());
    out["R"] = to_string(basic.R());
    out["cycle"] = to_json(basic.cycle());
    out["bijection"] = to_json(bijection);
    out["pairwise_relations"] = to_json(pairwise);
    out["meta_intransitivity"] = meta ? to_json(*meta) : Json(nullptr);
    out["mean_constancy"] = to_json(means);
    out["violations_total"] = violations_total;
    emit_json(out, out_path);

    std::cerr << "tuple: " << loaded.name << "  m=" << basic.size() << "  r=" << to_string(basic.r())
              << "  R=" << to_string(basic.R()) << "\n"
              << "lambda=" << to_string(config.lambda) << "  k=" << k << "  members="
              << gen.members().size() << "\n"
              << "bijection: " << bijection.member_count << " members, "
              << bijection.violations.size() << " violations\n"
              << "pairwise relations: " << pairwise.pairs_checked << " pairs, "
              << pairwise.violations.size() << " violations"
              << (pairwise.sampled ? " (sampled)" : "") << "\n";
    if (meta) {
        std::cerr << "meta-intransitivity: order " << meta->order << ", " << meta->comparisons
                  << " comparisons, " << meta->violations.size() << " violations\n";
    }
    if (means.applicable) {
        std::cerr << "mean constancy: " << means.checked << " members at "
                  << to_string(*means.expected) << ", " << means.violations.size()
                  << " violations\n";
    } else {
        std::cerr << "mean constancy: not applicable (basic means differ)\n";
    }
    return violations_total == 0 ? kExitOk : kExitViolations;
}

// ---- dim -------------------------------------------------------------

int cmd_dim(const LoadedTuple& loaded, const std::string& lambda_text, const std::string& out_path) {
    BasicTuple basic = validate_basic(loaded.members);
    LambdaConfig config = select_lambda(basic, lambda_text, false);
    DimensionReport report = dimension_report(basic, config.lambda);
    emit_json(to_json(report), out_path);
    std::cerr << "d = " << decimal_string(report.d, 6) << ", d_sup = "
              << decimal_string(report.d_sup, 6) << (report.fractal_dust ? " (fractal dust)" : "")
              << "\n";
    return kExitOk;
}

// ---- plot ------------------------------------------------------------

int cmd_plot(const LoadedTuple& loaded, const std::string& lambda_text, int k, bool want_csv,
             bool want_svg, const std::string& csv_path, const std::string& svg_path,
             const std::string& out_path, const std::string& projection_name, std::size_t axis_i,
             std::size_t axis_j) {
    if (!want_csv && !want_svg) {
        throw std::invalid_argument("plot requires --csv or --svg");
    }
    BasicTuple basic = validate_basic(loaded.members);
    LambdaConfig config = select_lambda(basic, lambda_text, false);
    Generation gen = build_generation(basic, config, k, member_cap_from_env());
    PointCloud cloud = embed_points(gen);

    std::cerr << "embedded " << cloud.points.size() << " points in " << cloud.dimension
              << " coordinates, affine rank " << cloud.affine_rank << "\n";

    if (want_csv) {
        emit(export_csv(cloud), !csv_path.empty() ? csv_path : out_path);
    }
    if (want_svg) {
        Projection projection = Projection::best_fit();
        if (projection_name == "coordinate_pair") {
            if (axis_i < 1 || axis_j < 1) {
                throw std::invalid_argument("coordinate axes are 1-based");
            }
            projection = Projection::pair(axis_i - 1, axis_j - 1);
        } else if (projection_name != "best_fit_plane") {
            throw std::invalid_argument("unknown projection '" + projection_name + "'");
        }
        emit(export_svg(cloud, projection), !svg_path.empty() ? svg_path : out_path);
    }
    return kExitOk;
}

// ---- simulate --------------------------------------------------------

struct EdgeCheck {
    std::string label;
    double exact;
    MonteCarloEstimate estimate;
    bool ok;
};

Json edge_to_json(const EdgeCheck& edge) {
    return Json{{"pair", edge.label},
                {"exact", decimal_string(edge.exact, 12)},
                {"estimate", decimal_string(edge.estimate.estimate, 12)},
                {"standard_error", decimal_string(edge.estimate.standard_error, 12)},
                {"within_3_se", edge.ok}};
}

bool within_three_se(double exact, const MonteCarloEstimate& estimate) {
    return std::abs(estimate.estimate - exact) <= 3.0 * estimate.standard_error;
}

int finish_simulation(const std::string& name, std::uint64_t trials, std::uint64_t seed,
                      const std::vector<EdgeCheck>& checks, const std::string& out_path,
                      Json details = Json()) {
    std::size_t failures = 0;
    Json edges = Json::array();
    for (const EdgeCheck& edge : checks) {
        edges.push_back(edge_to_json(edge));
        failures += edge.ok ? 0 : 1;
    }
    Json out;
    out["input"] = name;
    out["trials"] = trials;
    out["seed"] = seed;
    out["checks"] = std::move(edges);
    if (!details.is_null()) {
        out["pair_values"] = std::move(details);
    }
    out["failures"] = failures;
    emit_json(out, out_path);
    std::cerr << checks.size() << " Monte Carlo checks, " << failures
              << " outside 3 standard errors\n";
    return failures == 0 ? kExitOk : kExitViolations;
}

int cmd_simulate_golden(std::uint64_t trials, std::uint64_t seed, const std::string& out_path) {
    const double p = (std::sqrt(5.0) - 1.0) / 2.0;
    TrybulaTriplet triple = trybula_triplet(p);
    const FloatQuantile* members[3] = {&triple.x, &triple.y, &triple.z};
    const char* labels[3] = {"XY", "YZ", "ZX"};
    std::vector<EdgeCheck> checks;
    std::mt19937_64 seeder(seed);
    for (int i = 0; i < 3; ++i) {
        const FloatQuantile& a = *members[i];
        const FloatQuantile& b = *members[(i + 1) % 3];
        const double exact = rho_q(a, b);
        MonteCarloEstimate estimate = monte_carlo_rho(a, b, trials, seeder());
        checks.push_back({labels[i], exact, estimate, within_three_se(exact, estimate)});
    }
    return finish_simulation("trybula(golden)", trials, seed, checks, out_path);
}

int cmd_simulate(const LoadedTuple& loaded, const std::string& lambda_text, int k,
                 std::uint64_t trials, std::uint64_t seed, std::size_t max_pairs,
                 const std::string& out_path) {
    BasicTuple basic = validate_basic(loaded.members);
    std::vector<EdgeCheck> checks;
    std::mt19937_64 seeder(seed);  // one derived Monte Carlo seed per check

    if (k == 0) {
        for (std::size_t i = 0; i < basic.size(); ++i) {
            const StepQuantile& a = basic.members()[i];
            const StepQuantile& b = basic.members()[(i + 1) % basic.size()];
            const double exact = to_double(rho_q(a, b).value);
            MonteCarloEstimate estimate = monte_carlo_rho(a, b, trials, seeder());
            const std::string label =
                "edge " + std::to_string(i + 1) + "->" + std::to_string((i + 1) % basic.size() + 1);
            checks.push_back({label, exact, estimate, within_three_se(exact, estimate)});
        }
        return finish_simulation(loaded.name, trials, seed, checks, out_path);
    }

    LambdaConfig config = select_lambda(basic, lambda_text, false);
    Generation gen = build_generation(basic, config, k, member_cap_from_env());
    std::vector<const Index*> indexes;
    std::vector<const StepQuantile*> functions;
    for (const auto& [index, fn] : gen.members()) {
        indexes.push_back(&index);
        functions.push_back(&fn);
    }
    const std::size_t count = indexes.size();
    const std::uint64_t total_pairs = static_cast<std::uint64_t>(count) * (count - 1) / 2;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    if (total_pairs <= max_pairs) {
        for (std::size_t a = 0; a < count; ++a) {
            for (std::size_t b = a + 1; b < count; ++b) {
                pairs.emplace_back(a, b);
            }
        }
    } else {
        std::uniform_int_distribution<std::size_t> pick(0, count - 1);
        while (pairs.size() < max_pairs) {
            std::size_t a = pick(seeder);
            std::size_t b = pick(seeder);
            if (a != b) {
                pairs.emplace_back(std::min(a, b), std::max(a, b));
            }
        }
    }
    Json extra = Json::array();
    for (const auto& [a, b] : pairs) {
        // The check is the sampling identity: the Monte Carlo estimate must
        // agree with the exact preference value of the pair. The basic
        // pair's value at the first divergence is reported alongside.
        const std::size_t nu = first_divergence(*indexes[a], *indexes[b]);
        const Rational divergence_value =
            rho_q(basic.member((*indexes[a])[nu - 1]), basic.member((*indexes[b])[nu - 1])).value;
        const Rational exact_value = rho_q(*functions[a], *functions[b]).value;
        MonteCarloEstimate estimate = monte_carlo_rho(*functions[a], *functions[b], trials, seeder());
        const double exact = to_double(exact_value);
        const std::string label = index_to_string(*indexes[a]) + "," + index_to_string(*indexes[b]);
        checks.push_back({label, exact, estimate, within_three_se(exact, estimate)});
        extra.push_back({{"pair", label},
                         {"exact_value", to_string(exact_value)},
                         {"first_divergence_value", to_string(divergence_value)}});
    }
    return finish_simulation(loaded.name, trials, seed, checks, out_path, std::move(extra));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact intransitive-dice generations, their verifiers and fractal embeddings"};
    app.require_subcommand(1);

    // preset
    auto* preset_cmd = app.add_subcommand("preset", "print a built-in tuple as JSON");
    std::string preset_name;
    std::string preset_p;
    std::string preset_out;
    preset_cmd->add_option("name", preset_name, "ed, cid, sid or trybula")->required();
    preset_cmd->add_option("--p", preset_p, "trybula parameter: a rational like 2/3, or 'golden'");
    preset_cmd->add_option("--out", preset_out, "write to a file instead of standard output");

    // common tuple options
    auto add_tuple_options = [](CLI::App* cmd, std::string& preset, std::string& input,
                                std::string& p) {
        cmd->add_option("--preset", preset, "built-in tuple: ed, cid, sid or trybula");
        cmd->add_option("--input", input, "tuple JSON file");
        cmd->add_option("--p", p, "trybula parameter (rational)");
    };

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "build a generation and run all verifiers");
    std::string verify_preset, verify_input, verify_p, verify_lambda, verify_out;
    int verify_k = 2;
    bool verify_strict = false;
    add_tuple_options(verify_cmd, verify_preset, verify_input, verify_p);
    verify_cmd->add_option("--k", verify_k, "generation depth (default 2)");
    verify_cmd->add_option("--lambda", verify_lambda, "contraction lambda (rational); default minimal");
    verify_cmd->add_flag("--strict", verify_strict, "require lambda > 1 + R/r");
    verify_cmd->add_option("--out", verify_out, "write the JSON report to a file");

    // dim
    auto* dim_cmd = app.add_subcommand("dim", "similarity-dimension report");
    std::string dim_preset, dim_input, dim_p, dim_lambda, dim_out;
    add_tuple_options(dim_cmd, dim_preset, dim_input, dim_p);
    dim_cmd->add_option("--lambda", dim_lambda, "contraction lambda (rational); default minimal");
    dim_cmd->add_option("--out", dim_out, "write the JSON report to a file");

    // plot
    auto* plot_cmd = app.add_subcommand("plot", "embed a generation and export CSV/SVG");
    std::string plot_preset, plot_input, plot_p, plot_lambda, plot_out;
    std::string plot_csv_path, plot_svg_path;
    std::string plot_projection = "best_fit_plane";
    std::size_t plot_axis_i = 1, plot_axis_j = 2;
    int plot_k = 2;
    add_tuple_options(plot_cmd, plot_preset, plot_input, plot_p);
    plot_cmd->add_option("--k", plot_k, "generation depth (default 2)");
    plot_cmd->add_option("--lambda", plot_lambda, "contraction lambda (rational); default minimal");
    auto* csv_opt = plot_cmd->add_option("--csv", plot_csv_path, "export CSV (optionally to a file)");
    csv_opt->expected(0, 1);
    auto* svg_opt = plot_cmd->add_option("--svg", plot_svg_path, "export SVG (optionally to a file)");
    svg_opt->expected(0, 1);
    plot_cmd->add_option("--projection", plot_projection, "best_fit_plane or coordinate_pair");
    plot_cmd->add_option("--axis-i", plot_axis_i, "first axis for coordinate_pair (1-based)");
    plot_cmd->add_option("--axis-j", plot_axis_j, "second axis for coordinate_pair (1-based)");
    plot_cmd->add_option("--out", plot_out, "output file when --csv/--svg has no inline path");

    // simulate
    auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo spot checks against exact values");
    std::string sim_preset, sim_input, sim_p, sim_lambda, sim_out;
    int sim_k = 0;
    std::uint64_t sim_trials = 100000;
    std::uint64_t sim_seed = 0;
    std::size_t sim_pairs = 20;
    add_tuple_options(sim_cmd, sim_preset, sim_input, sim_p);
    sim_cmd->add_option("--k", sim_k, "0: simulate basic edges; >=1: sample generation pairs");
    sim_cmd->add_option("--lambda", sim_lambda, "contraction lambda (rational); default minimal");
    sim_cmd->add_option("--trials", sim_trials, "trials per check (default 100000)")
        ->check(CLI::PositiveNumber);
    sim_cmd->add_option("--seed", sim_seed, "PRNG seed (default 0)");
    sim_cmd->add_option("--pairs", sim_pairs, "maximum sampled member pairs (default 20)");
    sim_cmd->add_option("--out", sim_out, "write the JSON report to a file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (preset_cmd->parsed()) {
            return cmd_preset(preset_name, preset_p, preset_out);
        }
        if (verify_cmd->parsed()) {
            return cmd_verify(load_exact_tuple(verify_preset, verify_input, verify_p), verify_lambda,
                              verify_strict, verify_k, verify_out);
        }
        if (dim_cmd->parsed()) {
            return cmd_dim(load_exact_tuple(dim_preset, dim_input, dim_p), dim_lambda, dim_out);
        }
        if (plot_cmd->parsed()) {
            return cmd_plot(load_exact_tuple(plot_preset, plot_input, plot_p), plot_lambda, plot_k,
                            csv_opt->count() > 0, svg_opt->count() > 0, plot_csv_path, plot_svg_path,
                            plot_out, plot_projection, plot_axis_i, plot_axis_j);
        }
        if (sim_cmd->parsed()) {
            if (sim_preset == "trybula" && sim_p == "golden") {
                return cmd_simulate_golden(sim_trials, sim_seed, sim_out);
            }
            return cmd_simulate(load_exact_tuple(sim_preset, sim_input, sim_p), sim_lambda, sim_k,
                                sim_trials, sim_seed, sim_pairs, sim_out);
        }
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Json::exception& e) {
        std::cerr << "json error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
