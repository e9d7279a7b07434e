#include "bergman/serialize.hpp"

#include <filesystem>
#include <iomanip>
#include <ostream>

#include "bergman/errors.hpp"

namespace bergman {
namespace {

using nlohmann::json;

template <class F>
auto guarded(const char* what, F&& f) {
    try {
        return f();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("invalid ") + what + ": " + e.what());
    }
}

json tail_json(const std::vector<TailEntry>& entries) {
    json out = json::array();
    for (const TailEntry& t : entries) out.push_back({{"delta", t.delta}, {"sup", t.sup}});
    return out;
}

}  // namespace

json to_json(const DiscPoint& z) { return json::array({z.re(), z.im()}); }

json to_json(const WeightClassReport& r) {
    json out = {
        {"weight", r.weight_name},
        {"mesh_resolution", r.mesh_resolution},
        {"dhat_constant", r.dhat_constant},
        {"dhat_constant_refined", r.dhat_constant_refined},
        {"dcheck_pair", {{"K", r.dcheck_pair.K}, {"C", r.dcheck_pair.C}}},
        {"class_m_pair", {{"K", r.class_m_pair.K}, {"C", r.class_m_pair.C}}},
        {"sandwich_constant", r.sandwich_constant},
        {"flags",
         {{"D_hat", r.flags.dhat},
          {"D_check", r.flags.dcheck},
          {"D", r.flags.doubling},
          {"M", r.flags.class_m}}},
        {"truncated", r.truncated},
        {"truncation_gap", r.truncation_gap},
    };
    if (r.exponents) {
        out["exponents"] = {{"alpha", r.exponents->first}, {"beta", r.exponents->second}};
    } else {
        out["exponents"] = nullptr;
    }
    return out;
}

json to_json(const CriterionReport& r) {
    json samples = json::array();
    for (const Sample& s : r.samples) {
        samples.push_back({{"basepoint", to_json(s.point)}, {"value", s.value}});
    }
    json params = {{"p", r.params.p}, {"q", r.params.q}, {"n", r.params.n}};
    if (r.params.r > 0.0) params["r"] = r.params.r;
    if (r.params.gamma > 0.0) params["gamma"] = r.params.gamma;
    if (r.params.s > 0.0) params["s"] = r.params.s;
    const bool ls = r.id == CriterionId::EmbLs || r.id == CriterionId::OpPushforwardLs;
    return {
        {"criterion_id", to_string(r.id)},
        {"params", params},
        {ls ? "ls_norm" : "global_sup", r.value},
        {"samples", samples},
        {"tail", tail_json(r.tail)},
        {"shells", tail_json(r.shells)},
        {"refinement",
         {{"coarse_level", r.refinement.coarse_level},
          {"fine_level", r.refinement.fine_level},
          {"coarse", r.refinement.coarse},
          {"fine", r.refinement.fine},
          {"growth", r.refinement.growth},
          {"shell_growth", r.refinement.shell_growth}}},
        {"verdict", to_string(r.verdict)},
        {"compact_verdict", to_string(r.compact_verdict)},
        {"warnings", r.warnings},
        {"details", r.details},
    };
}

json to_json(const GammaCheck& c) {
    json ratios = json::array();
    for (const Sample& s : c.ratios) {
        ratios.push_back({{"a", to_json(s.point)}, {"ratio", s.value}});
    }
    return {{"gamma", c.gamma},       {"passed", c.passed}, {"worst_C", c.worst_C},
            {"worst_C_coarse", c.worst_C_coarse}, {"drift", c.drift},
            {"growth", c.growth},     {"ratios", ratios},   {"diagnostic", c.diagnostic}};
}

json to_json(const GammaChoice& c) {
    return {{"gamma", c.gamma},
            {"verified", c.verified},
            {"attempts", c.attempts},
            {"check", to_json(c.check)}};
}

RadialWeight weight_from_json(const json& spec) {
    return guarded("weight", [&] {
        const std::string kind = spec.at("kind").get<std::string>();
        if (kind == "power") return RadialWeight::power(spec.at("alpha").get<double>());
        if (kind == "log_power") {
            return RadialWeight::log_power(spec.at("alpha").get<double>(),
                                           spec.at("b").get<double>());
        }
        if (kind == "exponential") return RadialWeight::exponential();
        if (kind == "table") {
            return RadialWeight::table(spec.at("r").get<std::vector<double>>(),
                                       spec.at("w").get<std::vector<double>>());
        }
        if (kind == "tilde") return RadialWeight::tilde_of(weight_from_json(spec.at("of")));
        throw ConfigError("unknown weight kind '" + kind + "'");
    });
}

DiscMeasure measure_from_json(const json& spec, std::shared_ptr<const QuadratureGrid> grid,
                              const std::string& base_dir) {
    return guarded("measure", [&] {
        const std::string kind = spec.at("kind").get<std::string>();
        if (kind == "zero") return DiscMeasure::zero();
        if (kind == "power_density") {
            return DiscMeasure::power_density(spec.at("beta").get<double>(), std::move(grid));
        }
        if (kind == "weight") {
            return DiscMeasure::weight(weight_from_json(spec.at("weight")), std::move(grid));
        }
        if (kind == "atoms_csv") {
            std::filesystem::path path = spec.at("path").get<std::string>();
            if (path.is_relative()) path = std::filesystem::path(base_dir) / path;
            return DiscMeasure::atoms(read_atoms_csv(path.string()), spec);
        }
        throw ConfigError("unknown measure kind '" + kind + "'");
    });
}

DiscPoint point_from_json(const json& spec) {
    return guarded("point", [&] {
        if (spec.is_number()) return DiscPoint(spec.get<double>(), 0.0);
        const auto xy = spec.get<std::vector<double>>();
        if (xy.size() != 2) throw ConfigError("points are [re, im] pairs");
        return DiscPoint(xy[0], xy[1]);
    });
}

AnalyticFunction function_from_json(const json& spec) {
    return guarded("function", [&] {
        const std::string kind = spec.at("kind").get<std::string>();
        if (kind == "poly") {
            std::vector<Complex> coeffs;
            for (const auto& c : spec.at("coeffs")) {
                if (c.is_number()) {
                    coeffs.emplace_back(c.get<double>(), 0.0);
                } else {
                    const auto xy = c.get<std::vector<double>>();
                    if (xy.size() != 2) throw ConfigError("coefficients are [re, im] pairs");
                    coeffs.emplace_back(xy[0], xy[1]);
                }
            }
            return AnalyticFunction::polynomial(std::move(coeffs));
        }
        if (kind == "conformal_power") {
            return AnalyticFunction::conformal_power(point_from_json(spec.at("a")),
                                                     spec.at("gamma").get<double>(),
                                                     spec.value("scale", 1.0));
        }
        if (kind == "sum") {
            std::vector<AnalyticFunction> terms;
            for (const auto& t : spec.at("terms")) terms.push_back(function_from_json(t));
            return AnalyticFunction::sum(std::move(terms));
        }
        if (kind == "scaled") {
            const auto c = spec.at("c").get<std::vector<double>>();
            if (c.size() != 2) throw ConfigError("scalars are [re, im] pairs");
            return function_from_json(spec.at("f")).scaled(Complex(c[0], c[1]));
        }
        if (kind == "product") {
            return AnalyticFunction::product(function_from_json(spec.at("f")),
                                             function_from_json(spec.at("g")));
        }
        throw ConfigError("unknown function kind '" + kind + "'");
    });
}

SelfMap self_map_from_json(const json& spec) {
    return guarded("self-map", [&] {
        const std::string kind = spec.at("kind").get<std::string>();
        if (kind == "identity") return SelfMap::identity();
        if (kind == "scale") return SelfMap::scale(spec.at("s").get<double>());
        if (kind == "power") return SelfMap::power(spec.at("k").get<int>());
        if (kind == "moebius") return SelfMap::moebius(point_from_json(spec.at("c")));
        if (kind == "composition") {
            std::vector<SelfMap> maps;
            for (const auto& m : spec.at("maps")) maps.push_back(self_map_from_json(m));
            return SelfMap::composition(std::move(maps));
        }
        throw ConfigError("unknown self-map kind '" + kind + "'");
    });
}

CarlesonConvention convention_from_string(const std::string& name) {
    if (name == "standard") return CarlesonConvention::Standard;
    if (name == "literal") return CarlesonConvention::Literal;
    throw ConfigError("carleson_convention must be 'standard' or 'literal'");
}

void write_samples_csv(std::ostream& out, const std::vector<Sample>& samples) {
    out << "re,im,value\n" << std::setprecision(17);
    for (const Sample& s : samples) out << s.point.re() << ',' << s.point.im() << ',' << s.value << '\n';
}

}  // namespace bergman
