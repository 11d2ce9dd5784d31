#include "config.hpp"

#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "vortexball/construction.hpp"

namespace vortexball::cli {

using nlohmann::json;

GridSpec RunConfig::grid() const {
    GridSpec g;
    g.origin = origin;
    g.width = width;
    g.height = height;
    g.nx = nx;
    g.ny = ny;
    return g;
}

VortexSpec RunConfig::vortex_spec() const { return VortexSpec{vortices, eps}; }

double RunConfig::eta_value() const { return eta == 0.0 ? default_eta() : eta; }

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what) {
    throw ConfigError("config field '" + field + "': " + what);
}

double number(const json& j, const std::string& field) {
    if (!j.is_number()) fail(field, "expected a number");
    return j.get<double>();
}

std::size_t count(const json& j, const std::string& field) {
    if (!j.is_number_integer() || j.get<long long>() <= 0) fail(field, "expected a positive integer");
    return j.get<std::size_t>();
}

Vec2 pair(const json& j, const std::string& field) {
    if (!j.is_array() || j.size() != 2) fail(field, "expected a two-element array");
    return {number(j[0], field + "[0]"), number(j[1], field + "[1]")};
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    static const std::set<std::string> known{"domain", "grid",  "eps",   "alpha", "eta",  "radius",       "vortices",
                                             "growth", "sigma", "sweep", "out",   "seed", "cells_per_eps", "field"};
    for (const auto& [key, _] : j.items())
        if (!known.count(key)) fail(key, "unknown field");

    RunConfig c;
    if (j.contains("domain")) {
        const json& d = j["domain"];
        if (!d.is_object()) fail("domain", "expected an object with origin and extent");
        for (const auto& [key, _] : d.items())
            if (key != "origin" && key != "extent") fail("domain." + key, "unknown field");
        if (d.contains("origin")) c.origin = pair(d["origin"], "domain.origin");
        if (d.contains("extent")) {
            const Vec2 e = pair(d["extent"], "domain.extent");
            c.width = e.x;
            c.height = e.y;
        }
    }
    if (j.contains("grid")) {
        const json& g = j["grid"];
        if (g.is_array()) {
            if (g.size() != 2) fail("grid", "expected N or [nx, ny]");
            c.nx = count(g[0], "grid[0]");
            c.ny = count(g[1], "grid[1]");
        } else {
            c.nx = c.ny = count(g, "grid");
        }
    }
    if (j.contains("eps")) c.eps = number(j["eps"], "eps");
    if (j.contains("alpha")) c.alpha = number(j["alpha"], "alpha");
    if (j.contains("eta")) c.eta = number(j["eta"], "eta");
    if (j.contains("radius")) c.radius = number(j["radius"], "radius");
    if (j.contains("sigma")) c.sigma = number(j["sigma"], "sigma");
    if (j.contains("cells_per_eps")) c.cells_per_eps = number(j["cells_per_eps"], "cells_per_eps");
    if (j.contains("vortices")) {
        const json& vs = j["vortices"];
        if (!vs.is_array()) fail("vortices", "expected an array of {x, y, d}");
        c.vortices.clear();
        for (std::size_t i = 0; i < vs.size(); ++i) {
            const std::string f = "vortices[" + std::to_string(i) + "]";
            const json& v = vs[i];
            if (!v.is_object()) fail(f, "expected an object {x, y, d}");
            for (const auto& [key, _] : v.items())
                if (key != "x" && key != "y" && key != "d") fail(f + "." + key, "unknown field");
            if (!v.contains("x") || !v.contains("y")) fail(f, "x and y are required");
            Vortex vx;
            vx.center = {number(v["x"], f + ".x"), number(v["y"], f + ".y")};
            if (v.contains("d")) {
                if (!v["d"].is_number_integer()) fail(f + ".d", "expected an integer");
                vx.degree = v["d"].get<int>();
            }
            c.vortices.push_back(vx);
        }
    }
    if (j.contains("growth")) {
        if (!j["growth"].is_string()) fail("growth", "expected \"uniform\" or \"jerrard\"");
        const std::string g = j["growth"];
        if (g == "uniform") c.growth = GrowthKind::uniform;
        else if (g == "jerrard") c.growth = GrowthKind::jerrard;
        else fail("growth", "expected \"uniform\" or \"jerrard\"");
    }
    if (j.contains("sweep")) {
        if (!j["sweep"].is_array()) fail("sweep", "expected an array of eps values");
        for (std::size_t i = 0; i < j["sweep"].size(); ++i)
            c.sweep.push_back(number(j["sweep"][i], "sweep[" + std::to_string(i) + "]"));
    }
    if (j.contains("out")) {
        if (!j["out"].is_string()) fail("out", "expected a string");
        c.out = j["out"].get<std::string>();
    }
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned()) fail("seed", "expected a nonnegative integer");
        c.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("field")) {
        if (!j["field"].is_string()) fail("field", "expected a path string");
        c.field_path = j["field"].get<std::string>();
    }
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

void validate_config(const RunConfig& c) {
    if (!(c.width > 0.0) || !(c.height > 0.0)) fail("domain.extent", "must be positive");
    if (c.nx < 3 || c.ny < 3) fail("grid", "needs at least 3 cells per axis");
    if (!(c.eps > 0.0) || !(c.eps < 1.0)) fail("eps", "must lie in (0, 1)");
    if (!(c.alpha > 0.0 && c.alpha < 1.0)) fail("alpha", "must lie in (0, 1)");
    const double eta = c.eta_value();
    if (!(eta > 0.5 && eta < 1.0)) fail("eta", "must lie in (1/2, 1)");
    if (!(c.radius > 0.0 && c.radius < 1.0)) fail("radius", "must lie in (0, 1)");
    if (!(c.sigma > 0.0)) fail("sigma", "must be positive");
    if (!(c.cells_per_eps > 0.0)) fail("cells_per_eps", "must be positive");
    const GridSpec g = c.grid();
    for (std::size_t i = 0; i < c.vortices.size(); ++i) {
        if (!g.contains(c.vortices[i].center)) fail("vortices[" + std::to_string(i) + "]", "center outside the domain");
        for (std::size_t k = 0; k < i; ++k)
            if (c.vortices[k].center == c.vortices[i].center)
                fail("vortices[" + std::to_string(i) + "]", "duplicate center");
    }
    for (std::size_t i = 0; i < c.sweep.size(); ++i) {
        if (!(c.sweep[i] > 0.0 && c.sweep[i] < 1.0)) fail("sweep", "values must lie in (0, 1)");
        if (i > 0 && !(c.sweep[i] < c.sweep[i - 1])) fail("sweep", "values must be strictly decreasing");
    }
}

std::vector<double> parse_eps_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            throw ConfigError("--sweep: '" + item + "' is not a number");
        }
        if (item.find_first_not_of(" \t", used) != std::string::npos) throw ConfigError("--sweep: '" + item + "' is not a number");
        out.push_back(v);
    }
    return out;
}

}  // namespace vortexball::cli
