#include <doctest.h>

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "penumbra/fieldmap.hpp"

using namespace penumbra;

namespace {

RunConfig base_config() {
    RunConfig cfg;
    cfg.params = {1.0e10, 1.0, 3.0, 1.0 / 3.0};
    cfg.axis1 = {0.5, 1.5, 3};
    cfg.axis2 = {1.0, 2.0, 2};
    return cfg;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) out.push_back(line);
    return out;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string cell;
    while (std::getline(in, cell, ',')) out.push_back(cell);
    return out;
}

}  // namespace

TEST_CASE("field map emits one row per point per method in a stable schema") {
    RunConfig cfg = base_config();
    std::ostringstream os;
    const RunSummary sum = run_fieldmap(cfg, os);
    const auto rows = lines_of(os.str());
    CHECK(rows[0] == kFieldSampleHeader);
    CHECK(sum.rows == 12);  // 3 x 2 grid, both methods
    CHECK(static_cast<int>(rows.size()) == 13);
    // the grid sits in the core zone, so every asymptotic row fails by design
    CHECK(sum.failures == 6);
    CHECK(sum.exit_code == 2);
}

TEST_CASE("identical configs produce byte-identical output") {
    RunConfig cfg = base_config();
    std::ostringstream a, b;
    run_fieldmap(cfg, a);
    run_fieldmap(cfg, b);
    CHECK(a.str() == b.str());
}

TEST_CASE("outgoing factor vanishes on the flat side") {
    RunConfig cfg = base_config();
    cfg.axis1 = {-2.0, -0.5, 3};
    cfg.axis2 = {0.0, 5.0, 2};
    cfg.method = Method::Direct;
    std::ostringstream os;
    run_fieldmap(cfg, os);
    const auto rows = lines_of(os.str());
    for (size_t i = 1; i < rows.size(); ++i) {
        const auto cells = split_csv(rows[i]);
        REQUIRE(cells.size() >= 13);
        const double re_out = std::stod(cells[8]);
        const double im_out = std::stod(cells[9]);
        CHECK(std::hypot(re_out, im_out) <= 1.0e-6);
    }
}

TEST_CASE("emitted total equals incident plus outgoing") {
    RunConfig cfg = base_config();
    std::ostringstream os;
    run_fieldmap(cfg, os);
    const auto rows = lines_of(os.str());
    for (size_t i = 1; i < rows.size(); ++i) {
        const auto cells = split_csv(rows[i]);
        if (!cells[13].empty()) continue;
        const double re = std::stod(cells[6]) + std::stod(cells[8]);
        const double im = std::stod(cells[7]) + std::stod(cells[9]);
        CHECK(re == std::stod(cells[10]));
        CHECK(im == std::stod(cells[11]));
    }
}

TEST_CASE("json output parses and mirrors the csv fields") {
    RunConfig cfg = base_config();
    cfg.output = OutputFormat::Json;
    cfg.axis1 = {1.0, 1.0, 1};
    cfg.axis2 = {3.0, 3.0, 1};
    std::ostringstream os;
    run_fieldmap(cfg, os);
    const nlohmann::json j = nlohmann::json::parse(os.str());
    REQUIRE(j.is_array());
    CHECK(j.size() == 2);
    CHECK(j[0].contains("sigma"));
    CHECK(j[0].contains("re_tot"));
    CHECK(j[0]["method"] == "direct");
}

TEST_CASE("compare run gates the D2 strip and reports empty regions") {
    RunConfig cfg = base_config();
    cfg.params = {1.0e12, 1.0};
    cfg.axis1 = {2.0, 2.0, 1};
    cfg.axis2 = {60.0, 120.0, 2};
    std::ostringstream os;
    const CompareSummary sum = run_compare(cfg, os);
    CHECK(sum.failures == 0);
    CHECK(sum.exit_code == 0);
    for (const auto& row : sum.rows) {
        CHECK(row.region == RegionLabel::D2_illuminated_far);
        CHECK(row.pass);
        CHECK(row.rel_dev <= 0.05);
    }
    const std::string text = os.str();
    CHECK(text.find("# D6_deep_shadow: no points in region") != std::string::npos);
    CHECK(text.find("# D2_illuminated_far: n=2") != std::string::npos);
}

TEST_CASE("physical-coordinate grids convert with per-point validity") {
    RunConfig cfg = base_config();
    cfg.coords = CoordKind::Physical;
    cfg.method = Method::Direct;
    // points on the flat side map exactly: sigma = (h^2 k/2)^{1/3} x
    cfg.axis1 = {-2.0e-3, -1.0e-3, 2};
    cfg.axis2 = {0.0, 5.0e-8, 2};
    std::ostringstream os;
    const RunSummary sum = run_fieldmap(cfg, os);
    CHECK(sum.failures == 0);
    const auto rows = lines_of(os.str());
    const auto cells = split_csv(rows[1]);
    const double sigma = std::stod(cells[0]);
    CHECK(sigma == doctest::Approx(std::cbrt(1.0e10 / 2.0) * -2.0e-3));
}

TEST_CASE("zeros table output") {
    std::ostringstream os;
    run_zeros(5, base_config().params, os);
    const auto rows = lines_of(os.str());
    REQUIRE(rows.size() == 6);
    CHECK(rows[0] == "j,abs_zeta,arg_zeta,re_A,im_A");
    double prev = 0.0;
    for (int j = 1; j <= 5; ++j) {
        const auto cells = split_csv(rows[j]);
        const double mod = std::stod(cells[1]);
        const double arg = std::stod(cells[2]);
        CHECK(mod > prev);
        prev = mod;
        CHECK(std::abs(arg - kPi / 3.0) <= 1.0e-10);
    }
    CHECK(std::stod(split_csv(rows[1])[1]) == doctest::Approx(1.01879297160).epsilon(1e-8));
    std::ostringstream os2;
    CHECK_THROWS_AS(run_zeros(0, base_config().params, os2), DomainError);
}

TEST_CASE("selftest passes clean and detects an injected w1 perturbation") {
    std::ostringstream os;
    const int failures = run_selftest(os);
    CHECK(failures == 0);
    const std::string text = os.str();
    int checks = 0;
    for (const auto& line : lines_of(text))
        if (line.rfind("[PASS]", 0) == 0 || line.rfind("[FAIL]", 0) == 0) ++checks;
    CHECK(checks >= 12);
    std::ostringstream os2;
    const int perturbed = run_selftest(os2, 1.0e-3);
    CHECK(perturbed >= 1);
    CHECK(os2.str().find("[FAIL] w1-I-H-relation") != std::string::npos);
}
