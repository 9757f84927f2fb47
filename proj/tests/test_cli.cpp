#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "levi6/manifest.hpp"

using namespace levi6;
using nlohmann::json;

namespace {

json cr_manifest() {
    return json::parse(R"({
        "pde": { "solved": ["v_x", "v_y"], "rhs": ["-u_y", "u_x"] },
        "points": [[0.1, -0.2, 0.3, 0.05, -0.15, 0.25]],
        "random": 3,
        "seed": 7
    })");
}

json split_manifest(const char* rhs1 = "0", const char* rhs2 = "0") {
    json j = json::parse(R"({
        "pde": { "solved": ["u_y", "v_x"], "rhs": ["0", "0"] },
        "points": [[0.1, -0.2, 0.3, 0.05, -0.15, 0.25]],
        "random": 3,
        "seed": 7
    })");
    j["pde"]["rhs"] = {rhs1, rhs2};
    return j;
}

}  // namespace

TEST_CASE("manifest parsing") {
    auto m = parse_manifest(cr_manifest());
    REQUIRE(m.pde.has_value());
    CHECK(m.pde->solved[0] == "v_x");
    CHECK(m.points.size() == 1);
    CHECK(m.random_points == 3);
    CHECK(m.seed == 7);
    CHECK(m.tol == doctest::Approx(1e-9));
}

TEST_CASE("explicit frame manifests") {
    json j = json::parse(R"({
        "chart": ["x", "y", "u", "v", "p", "q"],
        "orientation": 1,
        "frame": {
            "h": [["1","0","p","-q","0","0"],
                  ["0","1","q","p","0","0"],
                  ["0","0","0","0","1","0"],
                  ["0","0","0","0","0","1"]],
            "complement": [["0","0","1","0","0","0"],
                           ["0","0","0","1","0","0"]]
        },
        "points": [[0, 0, 0, 0, 0, 0]]
    })");
    auto m = parse_manifest(j);
    REQUIRE(m.frame.has_value());
    auto r = run_manifest_command("classify", m, {});
    CHECK(r.exit_code == kExitOk);
    CHECK(r.report.at("classification")[0].at("kind") == "elliptic");
}

TEST_CASE("bad manifests are rejected") {
    json j = cr_manifest();
    j.erase("pde");
    CHECK_THROWS_AS(parse_manifest(j), ManifestError);

    json both = cr_manifest();
    both["frame"] = json::object();
    CHECK_THROWS_AS(parse_manifest(both), ManifestError);

    json nopts = cr_manifest();
    nopts.erase("points");
    nopts["random"] = 0;
    CHECK_THROWS_AS(parse_manifest(nopts), ManifestError);

    json badpt = cr_manifest();
    badpt["points"] = {{0.0, 1.0}};
    CHECK_THROWS_AS(parse_manifest(badpt), ManifestError);
}

TEST_CASE("exit codes") {
    // flat definite model
    auto cr = parse_manifest(cr_manifest());
    CHECK(run_manifest_command("classify", cr, {}).exit_code == kExitOk);
    CHECK(run_manifest_command("check-flat", cr, {}).exit_code == kExitOk);

    // flat split model
    auto hy = parse_manifest(split_manifest());
    CHECK(run_manifest_command("check-flat", hy, {}).exit_code == kExitOk);

    // perturbed models are classifiable but not flat
    auto hp = parse_manifest(split_manifest("v^2", "0"));
    CHECK(run_manifest_command("classify", hp, {}).exit_code == kExitOk);
    CHECK(run_manifest_command("check-flat", hp, {}).exit_code == kExitNotFlat);

    // vanishing Levi discriminant
    json deg = json::parse(R"({
        "pde": { "solved": ["u_x", "u_y"], "rhs": ["0", "0"] },
        "points": [[0.1, -0.2, 0.3, 0.05, -0.15, 0.25]]
    })");
    auto dm = parse_manifest(deg);
    CHECK(run_manifest_command("classify", dm, {}).exit_code == kExitDegenerate);
    CHECK(run_manifest_command("check-flat", dm, {}).exit_code ==
          kExitDegenerate);
}

TEST_CASE("reports are deterministic") {
    auto m = parse_manifest(cr_manifest());
    auto r1 = run_manifest_command("report", m, {});
    auto r2 = run_manifest_command("report", m, {});
    CHECK(r1.report.dump() == r2.report.dump());

    // a different seed moves the random sample points
    RunOptions other;
    other.seed = 12345;
    auto r3 = run_manifest_command("report", m, other);
    CHECK(r1.report.dump() != r3.report.dump());
}

TEST_CASE("report contents") {
    auto m = parse_manifest(cr_manifest());
    auto r = run_manifest_command("report", m, {});
    const auto& rep = r.report;
    CHECK(rep.at("classification").size() == 4);
    CHECK(rep.contains("elliptic"));
    CHECK(rep.at("elliptic").at("flat") == true);
    CHECK(rep.at("points").size() == 4);

    auto hp = parse_manifest(split_manifest("v^2", "0"));
    auto rh = run_manifest_command("report", hp, {});
    CHECK(rh.report.contains("hyperbolic"));
    CHECK(rh.report.at("hyperbolic").at("flat") == false);
    CHECK(rh.exit_code == kExitOk);  // report always writes, flatness is data
}

TEST_CASE("run options override the manifest") {
    auto m = parse_manifest(cr_manifest());
    RunOptions opts;
    opts.random_points = 6;
    auto r = run_manifest_command("classify", m, opts);
    CHECK(r.report.at("classification").size() == 7);
}
