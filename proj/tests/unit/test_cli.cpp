#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "app.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "bergman");
    std::ostringstream out;
    const int code = bergman::app::run(args, out);
    return {code, out.str()};
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "bergman_cli_tests" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

fs::path write_config(const fs::path& dir, const json& cfg) {
    const fs::path path = dir / "config.json";
    std::ofstream(path) << cfg.dump();
    return path;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

const json kHinfConfig = {{"schema_version", 1},
                          {"weight", {{"kind", "power"}, {"alpha", 0}}},
                          {"p", 2},
                          {"operator", {{"phi", {{"kind", "scale"}, {"s", 0.5}}}}},
                          {"depth", 6}};

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("sup criterion through the command line") {
    const fs::path dir = scratch("hinf");
    const auto cfg = write_config(dir, kHinfConfig);
    const Run r = run({"criterion", "hinf", "--config", cfg.string(), "--out", (dir / "out").string(),
                       "--deterministic"});
    CHECK(r.code == bergman::app::kExitOk);
    const json report = json::parse(slurp(dir / "out" / "report.json"));
    CHECK(report["schema_version"] == bergman::app::kSchemaVersion);
    CHECK(report["result"]["compact_verdict"] == "vanishing-tail");
    CHECK(report["result"]["verdict"] == "bounded-consistent");
    CHECK(std::isfinite(report["result"]["global_sup"].get<double>()));
    CHECK_FALSE(report.contains("generated_at"));
    CHECK(slurp(dir / "out" / "samples.csv").rfind("re,im,value", 0) == 0);
}

TEST_CASE("Carleson square convention from the config") {
    const fs::path dir = scratch("convention");
    json cfg = {{"weight", {{"kind", "power"}, {"alpha", 0}}},
                {"measure", {{"kind", "power_density"}, {"beta", 1.0}}},
                {"p", 1},
                {"q", 1},
                {"depth", 5}};
    auto samples = [&](const json& c) {
        const Run r = run({"criterion", "embedding-sup", "--config", write_config(dir, c).string(),
                           "--deterministic"});
        REQUIRE(r.code == bergman::app::kExitOk);
        // the sup itself sits at the origin, where both conventions give the whole disc
        return json::parse(r.out)["result"]["samples"].dump();
    };
    const std::string standard = samples(cfg);
    cfg["carleson_convention"] = "standard";
    CHECK(samples(cfg) == standard);
    cfg["carleson_convention"] = "literal";
    CHECK(samples(cfg) != standard);
    cfg["carleson_convention"] = "sideways";
    CHECK(run({"criterion", "embedding-sup", "--config", write_config(dir, cfg).string()}).code ==
          bergman::app::kExitUsage);
}

TEST_CASE("deterministic reports are byte identical") {
    const fs::path dir = scratch("determinism");
    const auto cfg = write_config(dir, kHinfConfig);
    run({"criterion", "hinf", "--config", cfg.string(), "--out", (dir / "a").string(), "--deterministic",
         "--threads", "1"});
    run({"criterion", "hinf", "--config", cfg.string(), "--out", (dir / "b").string(), "--deterministic",
         "--threads", "3"});
    CHECK(slurp(dir / "a" / "report.json") == slurp(dir / "b" / "report.json"));
    run({"criterion", "hinf", "--config", cfg.string(), "--out", (dir / "c").string()});
    CHECK(json::parse(slurp(dir / "c" / "report.json")).contains("generated_at"));
}

TEST_CASE("verification suites report pass lines") {
    const Run r = run({"verify", "pseudodisc", "--out", scratch("pseudodisc").string()});
    CHECK(r.code == bergman::app::kExitOk);
    CHECK(r.out.find("verify pseudodisc: PASS") != std::string::npos);

    const fs::path dir = scratch("gamma");
    const auto cfg = write_config(dir, {{"weight", {{"kind", "power"}, {"alpha", 0}}}, {"p", 1}, {"gamma", 1},
                                        {"depth", 8}, {"grid_level", 8}});
    const Run fail = run({"verify", "gamma", "--config", cfg.string(), "--out", (dir / "out").string()});
    CHECK(fail.code == bergman::app::kExitVerificationFailed);
    CHECK(fail.out.find("FAIL") != std::string::npos);
}

TEST_CASE("usage and configuration errors") {
    const Run none = run({});
    CHECK(none.code == bergman::app::kExitUsage);
    CHECK(json::parse(none.out)["error"]["kind"] == "usage");

    const fs::path dir = scratch("errors");
    const auto empty = write_config(dir, json::object());
    const Run e = run({"criterion", "hinf", "--config", empty.string()});
    CHECK(e.code == bergman::app::kExitUsage);
    CHECK(json::parse(e.out)["error"]["kind"] == "config");

    std::ofstream(dir / "broken.json") << "{ not json";
    CHECK(run({"norm", "--config", (dir / "broken.json").string()}).code == bergman::app::kExitUsage);

    CHECK(run({"criterion", "hinf"}).code == bergman::app::kExitUsage);
    CHECK(run({"criterion", "bogus"}).code == bergman::app::kExitUsage);

    json bad = kHinfConfig;
    bad["p"] = -1;
    const Run domain = run({"criterion", "hinf", "--config", write_config(dir, bad).string()});
    CHECK(domain.code == bergman::app::kExitUsage);
    CHECK(json::parse(domain.out)["error"]["kind"] == "domain");
}

TEST_CASE("resource overruns have their own exit code") {
    const fs::path dir = scratch("resource");
    const auto cfg = write_config(dir, {{"function", {{"kind", "poly"}, {"coeffs", {1.0}}}},
                                        {"weight", {{"kind", "power"}, {"alpha", 0}}},
                                        {"p", 2}});
    const Run r = run({"norm", "--config", cfg.string(), "--grid-level", "23"});
    CHECK(r.code == bergman::app::kExitResource);
    CHECK(json::parse(r.out)["error"]["kind"] == "resource");
}

TEST_CASE("norm and classification commands") {
    const fs::path dir = scratch("norm");
    const auto cfg = write_config(dir, {{"function", {{"kind", "poly"}, {"coeffs", {0.0, 1.0}}}},
                                        {"weight", {{"kind", "power"}, {"alpha", 0}}},
                                        {"p", 2},
                                        {"grid_level", 8}});
    const Run r = run({"norm", "--config", cfg.string()});
    CHECK(r.code == 0);
    const json report = json::parse(r.out);
    CHECK(report["result"]["fine"].get<double>() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-6));

    const Run c = run({"classify-weight", "--config", cfg.string()});
    CHECK(c.code == 0);
    CHECK(json::parse(c.out)["result"]["flags"]["D"] == true);
}

}  // TEST_SUITE
