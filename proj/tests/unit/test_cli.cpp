#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli/commands.hpp"
#include "cli/config.hpp"
#include "cli/field_io.hpp"

using namespace vortexball;
using namespace vortexball::cli;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("vortexball_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

int run(std::vector<std::string> args, std::string* err_text = nullptr) {
    args.insert(args.begin(), "vortexball");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int rc = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    if (err_text) *err_text = err.str();
    return rc;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("config parsing names the offending field") {
    const RunConfig c = parse_config(R"({"eps": 0.02, "grid": [100, 120], "vortices": [{"x": 0.1, "y": 0, "d": -2}]})");
    CHECK(c.eps == 0.02);
    CHECK(c.nx == 100);
    CHECK(c.ny == 120);
    REQUIRE(c.vortices.size() == 1);
    CHECK(c.vortices[0].degree == -2);

    auto message = [](const std::string& text) {
        try {
            validate_config(parse_config(text));
        } catch (const ConfigError& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    CHECK(message(R"({"eps": "small"})").find("'eps'") != std::string::npos);
    CHECK(message(R"({"epsilon": 0.1})").find("'epsilon'") != std::string::npos);
    CHECK(message(R"({"vortices": [{"x": 0, "y": 0, "d": 1.5}]})").find("vortices[0].d") != std::string::npos);
    CHECK(message(R"({"alpha": 1.5})").find("'alpha'") != std::string::npos);
    CHECK(message(R"({"sweep": [0.01, 0.02]})").find("'sweep'") != std::string::npos);
    CHECK(message(R"({"vortices": [{"x": 5, "y": 0}]})").find("vortices[0]") != std::string::npos);
    CHECK(message("{not json").find("JSON") != std::string::npos);
    CHECK(parse_eps_list("0.02,0.01") == std::vector<double>{0.02, 0.01});
    CHECK_THROWS_AS(parse_eps_list("0.02,abc"), ConfigError);
}

TEST_CASE("field round trip is byte-identical") {
    const GridSpec g{{-1.0, -0.5}, 2.0, 1.0, 37, 19};
    ComplexField f = synth_field(VortexSpec{{{{0.2, 0.1}, 1}}, 0.05}, g);
    f.A.assign(g.size(), Vec2{0.25, -1.0 / 3.0});
    std::ostringstream a;
    write_field(f, a);
    std::istringstream in(a.str());
    const ComplexField back = read_field(in);
    std::ostringstream b;
    write_field(back, b);
    CHECK(a.str() == b.str());
    CHECK(back.grid == f.grid);
    CHECK(back.u == f.u);

    std::string bad = a.str();
    bad[0] = 'X';
    std::istringstream in_bad(bad);
    CHECK_THROWS_AS(read_field(in_bad), IoError);
    std::istringstream in_short(a.str().substr(0, 100));
    CHECK_THROWS_AS(read_field(in_short), IoError);
}

TEST_CASE("exit codes") {
    const fs::path dir = scratch("exit");
    std::string err;
    CHECK(run({"synth", "--out", dir.string(), "--grid", "128", "--eps", "0.02"}) == kOk);
    CHECK(fs::exists(dir / "field.glf"));
    CHECK(run({"norms", "--out", dir.string(), "--field", (dir / "field.glf").string()}) == kOk);
    CHECK(fs::exists(dir / "norms.json"));
    CHECK(fs::exists(dir / "fstar_omega.csv"));
    CHECK(run({"construct", "--out", dir.string(), "--field", (dir / "field.glf").string()}) == kOk);
    CHECK(fs::exists(dir / "history.json"));
    CHECK(run({"construct", "--out", dir.string(), "--growth", "jerrard", "--grid", "128", "--eps", "0.02"}) == kOk);

    CHECK(run({}) == kUsage);
    CHECK(run({"synth", "--grid", "abc"}) == kUsage);
    CHECK(run({"synth", "--growth", "sideways"}) == kUsage);
    CHECK(run({"verify", "--eps", "0"}, &err) == kUsage);
    CHECK(err.find("eps") != std::string::npos);
    CHECK(run({"norms", "--field", (dir / "missing.glf").string()}) == kUsage);
    CHECK(run({"verify", "--config", (dir / "missing.json").string()}) == kUsage);
    CHECK(run({"construct", "--out", dir.string(), "--grid", "128", "--eps", "0.02", "--radius", "0.001"}, &err) == kUsage);
    CHECK(err.find("r(B_0)") != std::string::npos);
    CHECK(run({"--help"}) == kOk);
}

TEST_CASE("reports are deterministic for a fixed seed") {
    const fs::path a = scratch("det_a"), b = scratch("det_b");
    const std::vector<std::string> common{"verify", "--grid", "160", "--eps", "0.04", "--seed", "7"};
    auto with_out = [&](const fs::path& p) {
        auto v = common;
        v.push_back("--out");
        v.push_back(p.string());
        return v;
    };
    CHECK(run(with_out(a)) == kOk);
    CHECK(run(with_out(b)) == kOk);
    CHECK(slurp(a / "report.json") == slurp(b / "report.json"));
    CHECK(!slurp(a / "report.json").empty());
}

}
