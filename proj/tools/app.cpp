#include "app.hpp"

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "bergman/criteria.hpp"
#include "bergman/errors.hpp"
#include "bergman/grid.hpp"
#include "bergman/parallel.hpp"
#include "bergman/serialize.hpp"
#include "bergman/spaces.hpp"
#include "bergman/weights.hpp"
#include "suites.hpp"

namespace bergman::app {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr const char* kToolVersion = "0.1.0";
constexpr int kDefaultGridLevel = 10;

struct Options {
    std::string config_path;
    std::string out_dir;
    int grid_level = -1;
    unsigned threads = 0;
    bool deterministic = false;
};

struct Outcome {
    json result;
    std::vector<Sample> samples;
    bool passed = true;
    bool is_verification = false;
    std::string summary;
};

struct Context {
    json cfg = json::object();
    std::string base_dir = ".";
    int level = kDefaultGridLevel;
    std::uint64_t seed = 1;
};

json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    json cfg;
    try {
        in >> cfg;
    } catch (const json::exception& e) {
        throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
    }
    if (!cfg.is_object()) throw ConfigError("config must be a JSON object");
    if (cfg.contains("schema_version") &&
        (!cfg["schema_version"].is_number_integer() || cfg["schema_version"] != kSchemaVersion)) {
        throw ConfigError("unsupported config schema_version (expected " +
                          std::to_string(kSchemaVersion) + ")");
    }
    return cfg;
}

const json& need(const json& cfg, const char* key) {
    if (!cfg.contains(key)) throw ConfigError(std::string("config is missing '") + key + "'");
    return cfg.at(key);
}

double number(const json& cfg, const char* key) {
    const json& v = need(cfg, key);
    if (!v.is_number()) throw ConfigError(std::string("'") + key + "' must be a number");
    return v.get<double>();
}

double number(const json& cfg, const char* key, double fallback) {
    return cfg.contains(key) ? number(cfg, key) : fallback;
}

int integer(const json& cfg, const char* key, int fallback) {
    if (!cfg.contains(key)) return fallback;
    const json& v = cfg.at(key);
    if (!v.is_number_integer()) throw ConfigError(std::string("'") + key + "' must be an integer");
    return v.get<int>();
}

Sweep sweep_from(const json& cfg) {
    Sweep s;
    s.depth = integer(cfg, "depth", s.depth);
    s.lattice_r = number(cfg, "lattice_r", s.lattice_r);
    if (cfg.contains("full_lattice")) {
        if (!cfg["full_lattice"].is_boolean()) throw ConfigError("'full_lattice' must be a boolean");
        s.full_lattice = cfg["full_lattice"].get<bool>();
    }
    for (const char* key : {"carleson_convention", "convention"}) {
        if (!cfg.contains(key)) continue;
        if (!cfg[key].is_string()) throw ConfigError(std::string("'") + key + "' must be a string");
        s.convention = convention_from_string(cfg[key].get<std::string>());
        break;
    }
    if (s.depth < 1) throw ConfigError("'depth' must be at least 1");
    return s;
}

OperatorSpec operator_from(const json& cfg) {
    OperatorSpec op;
    if (!cfg.contains("operator")) return op;
    const json& o = cfg.at("operator");
    if (!o.is_object()) throw ConfigError("'operator' must be an object");
    if (o.contains("phi")) op.phi = self_map_from_json(o.at("phi"));
    if (o.contains("u")) op.u = function_from_json(o.at("u"));
    op.n = integer(o, "n", 0);
    return op;
}

RadialWeight weight_from(const json& cfg, const char* key = "weight") {
    return weight_from_json(need(cfg, key));
}

DiscMeasure measure_from(const Context& ctx) {
    return measure_from_json(need(ctx.cfg, "measure"), make_grid(ctx.level), ctx.base_dir);
}

std::string criterion_summary(const CriterionReport& rep) {
    std::ostringstream s;
    s << std::setprecision(6) << "value=" << rep.value << " growth=" << rep.refinement.growth
      << " shell_growth=" << rep.refinement.shell_growth << " verdict=" << to_string(rep.verdict) << " compact=" << to_string(rep.compact_verdict);
    return s.str();
}

Outcome from_criterion(CriterionReport rep) {
    Outcome o;
    o.summary = criterion_summary(rep);
    o.samples = rep.samples;
    o.result = to_json(rep);
    return o;
}

Outcome from_suite(SuiteResult r) {
    Outcome o;
    o.is_verification = true;
    o.passed = r.passed;
    o.samples = std::move(r.samples);
    o.result = std::move(r.report);
    return o;
}

Outcome cmd_classify(const Context& ctx) {
    const RadialWeight w = weight_from(ctx.cfg);
    const WeightClassReport rep = classify(w, integer(ctx.cfg, "mesh", 256));
    Outcome o;
    o.result = to_json(rep);
    std::ostringstream s;
    s << "dhat=" << rep.flags.dhat << " dcheck=" << rep.flags.dcheck
      << " doubling=" << rep.flags.doubling << " class_m=" << rep.flags.class_m;
    if (rep.exponents) s << " exponents=(" << rep.exponents->first << ", " << rep.exponents->second << ")";
    o.summary = s.str();
    return o;
}

Outcome cmd_norm(const Context& ctx) {
    const AnalyticFunction f = function_from_json(need(ctx.cfg, "function"));
    const NormEstimate est = bergman_norm_refined(f, number(ctx.cfg, "p"), weight_from(ctx.cfg), ctx.level);
    Outcome o;
    o.result = {{"coarse", est.coarse},
                {"fine", est.fine},
                {"coarse_level", ctx.level},
                {"fine_level", ctx.level + 2},
                {"relative_change", est.relative_change},
                {"unbounded", est.unbounded}};
    std::ostringstream s;
    s << std::setprecision(10) << "norm=" << est.fine << " relative_change=" << est.relative_change
      << " unbounded=" << est.unbounded;
    o.summary = s.str();
    return o;
}

Outcome cmd_embedding_sup(const Context& ctx) {
    return from_criterion(embedding_sup_criterion(
        number(ctx.cfg, "p"), number(ctx.cfg, "q"), integer(ctx.cfg, "n", 0), weight_from(ctx.cfg),
        measure_from(ctx), number(ctx.cfg, "r", 0.5), sweep_from(ctx.cfg)));
}

Outcome cmd_embedding_ls(const Context& ctx) {
    const double p = number(ctx.cfg, "p");
    const double q = number(ctx.cfg, "q");
    const double r = number(ctx.cfg, "r", 0.5);
    const int depth = sweep_from(ctx.cfg).depth;
    if (ctx.cfg.contains("operator")) {
        return from_criterion(op_pushforward_criterion(operator_from(ctx.cfg), p, q,
                                                       weight_from(ctx.cfg), measure_from(ctx), r,
                                                       depth));
    }
    return from_criterion(embedding_ls_criterion(p, q, integer(ctx.cfg, "n", 0),
                                                 weight_from(ctx.cfg), measure_from(ctx), r, depth));
}

Outcome cmd_carleson(const Context& ctx) {
    const double p = number(ctx.cfg, "p");
    const double q = number(ctx.cfg, "q");
    const RadialWeight w = weight_from(ctx.cfg);
    const DiscMeasure mu = measure_from(ctx);
    const Sweep sweep = sweep_from(ctx.cfg);
    CriterionReport rep = embedding_sup_criterion(p, q, 0, w, mu, number(ctx.cfg, "r", 0.5), sweep);

    // sup of M_{omega, q/p}(mu) over the sweep points, for the shallow and deepened sweeps.
    const auto search = sweep_points(sweep, sweep.depth + kLevelStride);
    const auto boxes = carleson_box_ratios(mu, w, q / p, search, sweep.convention);
    double coarse = 0.0;
    double fine = 0.0;
    const double floor_gap = std::exp2(-static_cast<double>(sweep.depth));
    for (std::size_t i = 0; i < search.size(); ++i) {
        fine = std::max(fine, boxes[i]);
        if (search[i].gap() >= floor_gap * (1.0 - 1e-12)) coarse = std::max(coarse, boxes[i]);
    }
    Refinement ref{sweep.depth, sweep.depth + kLevelStride, coarse, fine,
                   coarse > 0.0 ? fine / coarse : 1.0};
    const Verdict mv = refinement_verdict(ref);
    rep.details["maximal_function"] = {{"alpha", q / p},
                                       {"sup_coarse", coarse},
                                       {"sup_fine", fine},
                                       {"growth", ref.growth},
                                       {"verdict", to_string(mv)},
                                       {"agrees_with_embedding", mv == rep.verdict}};
    Outcome o = from_criterion(std::move(rep));
    o.summary += " maximal_verdict=" + to_string(mv);
    return o;
}

Outcome cmd_berezin(const Context& ctx) {
    const double p = number(ctx.cfg, "p");
    const double q = number(ctx.cfg, "q");
    const RadialWeight w = weight_from(ctx.cfg);
    const RadialWeight nu = weight_from(ctx.cfg, "nu_weight");
    const Sweep sweep = sweep_from(ctx.cfg);
    json gamma_info;
    double gamma = 0.0;
    bool verified = false;
    if (ctx.cfg.contains("gamma")) {
        gamma = number(ctx.cfg, "gamma");
        const bool check = !ctx.cfg.contains("verify_gamma") || ctx.cfg["verify_gamma"] == true;
        if (check) {
            const GammaCheck c = verify_gamma(w, p, gamma, sweep.depth, ctx.level);
            verified = c.passed;
            gamma_info = to_json(c);
        }
    } else {
        const GammaChoice choice = gamma_for(w, p, classify(w), sweep.depth, ctx.level);
        gamma = choice.gamma;
        verified = choice.verified;
        gamma_info = to_json(choice);
    }
    CriterionReport rep = berezin_criterion(operator_from(ctx.cfg), p, q, w, nu, gamma, sweep,
                                            ctx.level, verified);
    rep.details["gamma_check"] = gamma_info;
    return from_criterion(std::move(rep));
}

Outcome cmd_hinf(const Context& ctx) {
    return from_criterion(
        hinf_criterion(operator_from(ctx.cfg), number(ctx.cfg, "p"), weight_from(ctx.cfg), sweep_from(ctx.cfg)));
}

Outcome cmd_verify_gamma(const Context& ctx) {
    const RadialWeight w = weight_from(ctx.cfg);
    const double p = number(ctx.cfg, "p");
    const int depth = sweep_from(ctx.cfg).depth;
    Outcome o;
    o.is_verification = true;
    GammaCheck check;
    if (ctx.cfg.contains("gamma")) {
        check = verify_gamma(w, p, number(ctx.cfg, "gamma"), depth, ctx.level);
        o.result = to_json(check);
    } else {
        const GammaChoice choice = gamma_for(w, p, classify(w), depth, ctx.level);
        check = choice.check;
        o.result = to_json(choice);
    }
    o.passed = check.passed;
    o.samples = check.ratios;
    std::ostringstream s;
    s << std::setprecision(6) << "gamma=" << check.gamma << " worst_C=" << check.worst_C
      << " drift=" << check.drift << " growth=" << check.growth;
    o.summary = s.str();
    return o;
}

Outcome cmd_verify_lemma21(const Context& ctx) {
    std::vector<PointwiseCase> cases;
    if (ctx.cfg.contains("cases")) {
        for (const json& c : ctx.cfg.at("cases")) cases.push_back({weight_from(c), number(c, "p")});
    } else if (ctx.cfg.contains("weight")) {
        cases.push_back({weight_from(ctx.cfg), number(ctx.cfg, "p", 2.0)});
    } else {
        cases = {{RadialWeight::power(0.0), 2.0}, {RadialWeight::power(1.0), 1.0}};
    }
    std::vector<int> orders = {0, 1, 2};
    if (ctx.cfg.contains("orders")) orders = ctx.cfg.at("orders").get<std::vector<int>>();
    const int level = ctx.cfg.contains("grid_level") || ctx.level != kDefaultGridLevel ? ctx.level : 7;
    Outcome o = from_suite(
        verify_pointwise_bound(ctx.seed, integer(ctx.cfg, "polynomials", 20), orders, cases, level));
    double worst = 0.0;
    for (const json& row : o.result["cases"]) worst = std::max(worst, row["relative_change"].get<double>());
    std::ostringstream s;
    s << std::setprecision(4) << "max_refinement_change=" << worst;
    o.summary = s.str();
    return o;
}

Outcome cmd_verify_norm_equiv(const Context& ctx) {
    std::vector<RadialWeight> weights;
    if (ctx.cfg.contains("weights")) {
        for (const json& w : ctx.cfg.at("weights")) weights.push_back(weight_from_json(w));
    } else {
        weights = {RadialWeight::power(0.0), RadialWeight::power(1.0)};
    }
    std::vector<double> ps = {0.5, 1.0, 2.0, 4.0};
    if (ctx.cfg.contains("ps")) ps = ctx.cfg.at("ps").get<std::vector<double>>();
    std::vector<NormEquivalenceCase> cases;
    for (const auto& w : weights) {
        for (double p : ps) cases.push_back({w, p});
    }
    const int level = ctx.cfg.contains("grid_level") || ctx.level != kDefaultGridLevel ? ctx.level : 8;
    Outcome o = from_suite(
        verify_norm_equivalence(ctx.seed, integer(ctx.cfg, "polynomials", 50), cases, level));
    double worst = 0.0;
    for (const json& row : o.result["cases"]) {
        worst = std::max(worst, row["max_refinement_change"].get<double>());
    }
    std::ostringstream s;
    s << std::setprecision(4) << "max_refinement_change=" << worst;
    o.summary = s.str();
    return o;
}

Outcome cmd_verify_pseudodisc(const Context& ctx) {
    Outcome o = from_suite(verify_pseudodisc(ctx.seed, integer(ctx.cfg, "cases", 1000),
                                             integer(ctx.cfg, "boundary_samples", 64)));
    std::ostringstream s;
    s << std::setprecision(3) << "max_deviation=" << o.result["max_deviation"].get<double>();
    o.summary = s.str();
    return o;
}

Outcome cmd_verify_pushforward(const Context& ctx) {
    const int atoms = integer(ctx.cfg, "atoms", 100'000);
    if (atoms < 1) throw ConfigError("'atoms' must be positive");
    Outcome o = from_suite(verify_pushforward(ctx.seed, static_cast<std::size_t>(atoms)));
    double worst = 0.0;
    for (const json& row : o.result["maps"]) worst = std::max(worst, row["relative_error"].get<double>());
    std::ostringstream s;
    s << std::setprecision(3) << "max_relative_error=" << worst;
    o.summary = s.str();
    return o;
}

std::string timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream s;
    s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return s.str();
}

json error_object(const std::string& kind, const std::string& message, int code) {
    return {{"schema_version", kSchemaVersion},
            {"error", {{"kind", kind}, {"message", message}}},
            {"exit_code", code}};
}

int fail(std::ostream& out, const std::string& kind, const std::string& message, int code) {
    out << error_object(kind, message, code).dump() << "\n";
    return code;
}

void write_outputs(const Options& opt, const json& report, const std::vector<Sample>& samples,
                   std::ostream& out) {
    if (opt.out_dir.empty()) {
        out << report.dump(2) << "\n";
        return;
    }
    fs::create_directories(opt.out_dir);
    const fs::path dir(opt.out_dir);
    {
        std::ofstream f(dir / "report.json");
        if (!f) throw ConfigError("cannot write " + (dir / "report.json").string());
        f << report.dump(2) << "\n";
    }
    std::ofstream csv(dir / "samples.csv");
    if (!csv) throw ConfigError("cannot write " + (dir / "samples.csv").string());
    write_samples_csv(csv, samples);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out) {
    Options opt;
    std::string command;

    CLI::App app{"Numerical criteria for operators between weighted Bergman spaces", "bergman"};
    app.require_subcommand(1);

    const auto add_flags = [&](CLI::App* sub) {
        sub->add_option("--config", opt.config_path, "JSON experiment configuration");
        sub->add_option("--out", opt.out_dir, "Directory for report.json and samples.csv");
        sub->add_option("--grid-level", opt.grid_level, "Quadrature grid level L")
            ->check(CLI::Range(1, kMaxGridLevel));
        sub->add_option("--threads", opt.threads, "Worker thread cap (0 = all cores)");
        sub->add_flag("--deterministic", opt.deterministic, "Omit timestamps from the report");
    };
    const auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help,
                          const std::string& full) {
        CLI::App* sub = parent->add_subcommand(name, help);
        add_flags(sub);
        sub->callback([&command, full] { command = full; });
        return sub;
    };

    leaf(&app, "classify-weight", "Empirical doubling-class membership of a radial weight",
         "classify-weight");
    leaf(&app, "norm", "Weighted Bergman norm with a refinement check", "norm");
    CLI::App* criterion = app.add_subcommand("criterion", "Boundedness and compactness criteria");
    criterion->require_subcommand(1);
    const std::pair<const char*, const char*> criteria[] = {
        {"embedding-sup", "Pseudo-disc sup criterion for D^n embeddings, p <= q"},
        {"embedding-ls", "L^s norm criterion for q < p, or for a pushed-forward operator measure"},
        {"carleson", "Carleson-measure sup criterion with the weighted maximal function"},
        {"berezin", "Conformal-kernel sup criterion for weighted composition operators"},
        {"hinf", "Sup criterion for bounded multipliers, with the |phi| -> 1 tail"}};
    for (const auto& [name, help] : criteria) {
        leaf(criterion, name, help, std::string("criterion ") + name);
    }
    CLI::App* verify = app.add_subcommand("verify", "Verification suites");
    verify->require_subcommand(1);
    const std::pair<const char*, const char*> suites[] = {
        {"gamma", "Kernel estimate for a conformal-power exponent"},
        {"lemma21", "Pointwise derivative bound over the test family and random polynomials"},
        {"norm-equiv", "Norm equivalence between omega and the tilde weight"},
        {"pseudodisc", "Euclidean parameters of pseudohyperbolic discs"},
        {"pushforward", "Change of variable for pushforward measures"}};
    for (const auto& [name, help] : suites) {
        leaf(verify, name, help, std::string("verify ") + name);
    }

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        return fail(out, "usage", e.what(), kExitUsage);
    }

    const bool needs_config = command.rfind("verify", 0) != 0 || command == "verify gamma";
    try {
        Context ctx;
        if (!opt.config_path.empty()) {
            ctx.cfg = load_config(opt.config_path);
            ctx.base_dir = fs::path(opt.config_path).parent_path().string();
            if (ctx.base_dir.empty()) ctx.base_dir = ".";
        } else if (needs_config) {
            return fail(out, "usage", "'" + command + "' needs --config", kExitUsage);
        }
        if (opt.grid_level > 0) {
            ctx.level = opt.grid_level;
        } else {
            ctx.level = integer(ctx.cfg, "grid_level", kDefaultGridLevel);
            if (ctx.level < 1 || ctx.level > kMaxGridLevel) {
                throw ConfigError("'grid_level' must lie in [1, " + std::to_string(kMaxGridLevel) + "]");
            }
        }
        if (ctx.cfg.contains("seed")) {
            if (!ctx.cfg["seed"].is_number_unsigned()) throw ConfigError("'seed' must be a nonnegative integer");
            ctx.seed = ctx.cfg["seed"].get<std::uint64_t>();
        }
        set_thread_count(opt.threads);

        Outcome outcome;
        if (command == "classify-weight") outcome = cmd_classify(ctx);
        else if (command == "norm") outcome = cmd_norm(ctx);
        else if (command == "criterion embedding-sup") outcome = cmd_embedding_sup(ctx);
        else if (command == "criterion embedding-ls") outcome = cmd_embedding_ls(ctx);
        else if (command == "criterion carleson") outcome = cmd_carleson(ctx);
        else if (command == "criterion berezin") outcome = cmd_berezin(ctx);
        else if (command == "criterion hinf") outcome = cmd_hinf(ctx);
        else if (command == "verify gamma") outcome = cmd_verify_gamma(ctx);
        else if (command == "verify lemma21") outcome = cmd_verify_lemma21(ctx);
        else if (command == "verify norm-equiv") outcome = cmd_verify_norm_equiv(ctx);
        else if (command == "verify pseudodisc") outcome = cmd_verify_pseudodisc(ctx);
        else if (command == "verify pushforward") outcome = cmd_verify_pushforward(ctx);
        else return fail(out, "usage", "unknown command '" + command + "'", kExitUsage);

        json report = {{"schema_version", kSchemaVersion},
                       {"tool", "bergman"},
                       {"version", kToolVersion},
                       {"command", command},
                       {"seed", ctx.seed},
                       {"grid_level", ctx.level},
                       {"config", ctx.cfg},
                       {"result", outcome.result}};
        if (outcome.is_verification) report["passed"] = outcome.passed;
        if (!opt.deterministic) report["generated_at"] = timestamp();
        write_outputs(opt, report, outcome.samples, out);

        if (!opt.out_dir.empty()) {
            out << command << ": ";
            if (outcome.is_verification) out << (outcome.passed ? "PASS " : "FAIL ");
            out << outcome.summary << "\n";
        }
        return outcome.passed ? kExitOk : kExitVerificationFailed;
    } catch (const ResourceError& e) {
        return fail(out, e.kind(), e.what(), kExitResource);
    } catch (const NumericError& e) {
        return fail(out, e.kind(), e.what(), kExitVerificationFailed);
    } catch (const Error& e) {
        return fail(out, e.kind(), e.what(), kExitUsage);
    } catch (const json::exception& e) {
        return fail(out, "config", e.what(), kExitUsage);
    } catch (const fs::filesystem_error& e) {
        return fail(out, "io", e.what(), kExitUsage);
    }
}

}  // namespace bergman::app
