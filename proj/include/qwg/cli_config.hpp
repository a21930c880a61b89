#pragma once

#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "qwg/errors.hpp"
#include "qwg/potential.hpp"
#include "qwg/report.hpp"

namespace qwg::cli {

using json = nlohmann::json;

/// JSON parse with duplicate-key rejection; parse errors keep nlohmann's
/// byte-position message.
inline json strict_parse(const std::string& text) {
    std::vector<std::set<std::string>> stack;
    json::parser_callback_t cb = [&](int /*depth*/, json::parse_event_t event, json& parsed) {
        if (event == json::parse_event_t::object_start)
            stack.emplace_back();
        else if (event == json::parse_event_t::object_end)
            stack.pop_back();
        else if (event == json::parse_event_t::key) {
            const auto key = parsed.get<std::string>();
            if (!stack.back().insert(key).second)
                throw config_error("config: duplicate key '" + key + "'");
        }
        return true;
    };
    try {
        return json::parse(text, cb);
    } catch (const json::parse_error& e) {
        throw config_error(std::string("config: ") + e.what());
    }
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw config_error("config: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return strict_parse(ss.str());
}

namespace detail {

inline void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                                const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key()))
            throw config_error("config: unknown key '" + where + it.key() + "'");
}

inline double need_number(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.contains(key))
        throw config_error("config: missing key '" + where + key + "'");
    if (!obj[key].is_number())
        throw config_error("config: '" + where + key + "' must be a number");
    return obj[key].get<double>();
}

inline double number_or(const json& obj, const std::string& key, double fallback,
                        const std::string& where) {
    if (!obj.contains(key))
        return fallback;
    if (!obj[key].is_number())
        throw config_error("config: '" + where + key + "' must be a number");
    return obj[key].get<double>();
}

inline std::string string_or(const json& obj, const std::string& key, const std::string& fallback,
                             const std::string& where) {
    if (!obj.contains(key))
        return fallback;
    if (!obj[key].is_string())
        throw config_error("config: '" + where + key + "' must be a string");
    return obj[key].get<std::string>();
}

} // namespace detail

/// {"type": "free" | "harmonic" | "linear_ramp" | "piecewise", ...}
inline PotentialSpec potential_from_json(const json& j, const std::string& where = "potential.") {
    if (!j.is_object())
        throw config_error("config: '" + where + "' must be an object");
    const std::string type = detail::string_or(j, "type", "free", where);
    if (type == "free") {
        detail::reject_unknown_keys(j, {"type"}, where);
        return PotentialSpec::free();
    }
    if (type == "harmonic") {
        detail::reject_unknown_keys(j, {"type", "omega", "center"}, where);
        return PotentialSpec::harmonic(detail::number_or(j, "omega", 1.0, where),
                                       detail::number_or(j, "center", 0.0, where));
    }
    if (type == "linear_ramp") {
        detail::reject_unknown_keys(j, {"type", "force"}, where);
        return PotentialSpec::linear_ramp(detail::need_number(j, "force", where));
    }
    if (type == "piecewise") {
        detail::reject_unknown_keys(j, {"type", "segments"}, where);
        if (!j.contains("segments") || !j["segments"].is_array())
            throw config_error("config: '" + where + "segments' must be an array");
        std::vector<PotentialSegment> segs;
        std::size_t idx = 0;
        for (const auto& s : j["segments"]) {
            const std::string swhere = where + "segments[" + std::to_string(idx++) + "].";
            if (!s.is_object())
                throw config_error("config: '" + swhere + "' must be an object");
            detail::reject_unknown_keys(s, {"z0", "z1", "V"}, swhere);
            segs.push_back({detail::need_number(s, "z0", swhere), detail::need_number(s, "z1", swhere),
                            detail::need_number(s, "V", swhere)});
        }
        return PotentialSpec::piecewise(segs);
    }
    throw config_error("config: '" + where + "type' has unknown value '" + type + "'");
}

inline json potential_to_json(const PotentialSpec& p) {
    json j;
    if (p.is_free()) {
        j["type"] = "free";
    } else if (p.is_piecewise()) {
        j["type"] = "piecewise";
        j["segments"] = json::array();
        for (const auto& s : p.segments())
            j["segments"].push_back({{"z0", s.z_start}, {"z1", s.z_end}, {"V", s.V}});
    } else {
        // reconstruct analytic parameters by probing; describe() names the form
        if (p.describe() == "harmonic") {
            // V(z) = omega^2 (z - c)^2 / 2: recover from three samples
            const double v0 = p(0.0), v1 = p(1.0), vm1 = p(-1.0);
            const double omega2 = v1 + vm1 - 2.0 * v0;
            const double center = (vm1 - v1) / (2.0 * omega2);
            j["type"] = "harmonic";
            j["omega"] = std::sqrt(omega2);
            j["center"] = center;
        } else {
            j["type"] = "linear_ramp";
            j["force"] = -(p(1.0) - p(0.0));
        }
    }
    return j;
}

/// Run configuration for the soliton evolvers; mirrors the documented JSON
/// schema, unknown keys rejected, defaults applied on load.
struct SolitonConfig {
    std::string equation = "nls"; // nls | gp | nlq
    double z_min = -40.0;
    double z_max = 40.0;
    std::size_t n = 2048;
    std::string profile = "sech"; // sech | gaussian
    double a = 1.0;
    double v = 0.0;
    double z0 = 0.0;
    PotentialSpec potential = PotentialSpec::free();
    double g = 0.0;
    double dt = 1e-4;
    double t_end = 1.0;
    double snapshot_every = 0.0; // 0: endpoints only
    double eps = 1e-8;
    bool include_rest = false;
    std::uint64_t seed = 0;

    json resolved() const {
        json j;
        j["equation"] = equation;
        j["grid"] = {{"zmin", z_min}, {"zmax", z_max}, {"n", n}};
        j["init"] = {{"profile", profile}, {"a", a}, {"v", v}, {"z0", z0}};
        j["potential"] = potential_to_json(potential);
        j["g"] = g;
        j["dt"] = dt;
        j["t_end"] = t_end;
        j["snapshot_every"] = snapshot_every;
        j["eps"] = eps;
        j["include_rest"] = include_rest;
        j["seed"] = seed;
        return j;
    }

    std::string config_hash() const { return hex64(fnv1a64(resolved().dump())); }
};

inline SolitonConfig soliton_config_from_json(const json& j) {
    if (!j.is_object())
        throw config_error("config: top level must be an object");
    detail::reject_unknown_keys(j,
                                {"equation", "grid", "init", "potential", "g", "dt", "t_end",
                                 "snapshot_every", "eps", "include_rest", "seed"},
                                "");
    SolitonConfig c;
    c.equation = detail::string_or(j, "equation", c.equation, "");
    if (c.equation != "nls" && c.equation != "gp" && c.equation != "nlq")
        throw config_error("config: 'equation' must be one of nls|gp|nlq");
    if (j.contains("grid")) {
        const auto& g = j["grid"];
        if (!g.is_object())
            throw config_error("config: 'grid' must be an object");
        detail::reject_unknown_keys(g, {"zmin", "zmax", "n"}, "grid.");
        c.z_min = detail::number_or(g, "zmin", c.z_min, "grid.");
        c.z_max = detail::number_or(g, "zmax", c.z_max, "grid.");
        if (g.contains("n")) {
            if (!g["n"].is_number_unsigned())
                throw config_error("config: 'grid.n' must be a non-negative integer");
            c.n = g["n"].get<std::size_t>();
        }
    }
    if (j.contains("init")) {
        const auto& i = j["init"];
        if (!i.is_object())
            throw config_error("config: 'init' must be an object");
        detail::reject_unknown_keys(i, {"profile", "a", "v", "z0"}, "init.");
        c.profile = detail::string_or(i, "profile", c.profile, "init.");
        if (c.profile != "sech" && c.profile != "gaussian")
            throw config_error("config: 'init.profile' must be sech or gaussian");
        c.a = detail::number_or(i, "a", c.a, "init.");
        c.v = detail::number_or(i, "v", c.v, "init.");
        c.z0 = detail::number_or(i, "z0", c.z0, "init.");
    }
    if (j.contains("potential"))
        c.potential = potential_from_json(j["potential"]);
    c.g = detail::number_or(j, "g", c.g, "");
    c.dt = detail::number_or(j, "dt", c.dt, "");
    c.t_end = detail::number_or(j, "t_end", c.t_end, "");
    c.snapshot_every = detail::number_or(j, "snapshot_every", c.snapshot_every, "");
    c.eps = detail::number_or(j, "eps", c.eps, "");
    if (j.contains("include_rest")) {
        if (!j["include_rest"].is_boolean())
            throw config_error("config: 'include_rest' must be a boolean");
        c.include_rest = j["include_rest"].get<bool>();
    }
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned())
            throw config_error("config: 'seed' must be a non-negative integer");
        c.seed = j["seed"].get<std::uint64_t>();
    }
    if (!(c.dt > 0.0) || !(c.t_end > 0.0))
        throw config_error("config: dt and t_end must be positive");
    return c;
}

inline json manifest_to_json(const RunManifest& m) {
    json j;
    j["subcommand"] = m.subcommand;
    j["config_hash"] = m.config_hash;
    if (m.has_seed)
        j["seed"] = m.seed;
    j["tool_version"] = m.tool_version;
    j["outputs"] = m.outputs;
    j["wall_time_s"] = m.wall_time_s;
    return j;
}

inline json report_to_json(const RunReport& r) {
    json j;
    j["status"] = std::string(to_string(r.status));
    json scalars = json::object();
    for (const auto& [k, v] : r.scalars)
        scalars[k] = v;
    j["scalars"] = scalars;
    j["series_files"] = r.series_files;
    j["diagnostics"] = r.diagnostics;
    return j;
}

} // namespace qwg::cli
