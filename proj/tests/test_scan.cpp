#include <catch2/catch_amalgamated.hpp>

#include <qet/emit_json.hpp>
#include <qet/scan.hpp>

#include <cmath>
#include <cstdlib>

using namespace qet;

TEST_CASE("grid spec validation and values", "[scan]") {
    CHECK_THROWS_AS(GridSpec("x", 1.0, 1.0, 10, GridSpacing::linear), std::invalid_argument);
    CHECK_THROWS_AS(GridSpec("x", 0.0, 1.0, 1, GridSpacing::linear), std::invalid_argument);
    CHECK_THROWS_AS(GridSpec("x", 0.0, 1.0, 10, GridSpacing::logarithmic), std::invalid_argument);

    const auto lin = GridSpec("x", 2.0, 4.0, 5, GridSpacing::linear).values();
    REQUIRE(lin.size() == 5);
    CHECK(lin.front() == 2.0);
    CHECK(lin.back() == 4.0);
    CHECK(lin[2] == Catch::Approx(3.0).margin(1e-15));

    const auto lg = GridSpec("x", 1e-2, 1e2, 5, GridSpacing::logarithmic).values();
    CHECK(lg.front() == 1e-2);
    CHECK(lg.back() == 1e2);
    CHECK(lg[2] == Catch::Approx(1.0).margin(1e-14));
    CHECK(lg[1] / lg[0] == Catch::Approx(lg[3] / lg[2]).epsilon(1e-12));
}

TEST_CASE("contour grid points equal direct ratio calls, in row-major order", "[scan]") {
    const NoiseParams noise(1e-5);
    const GridSpec tau_grid("tau", 1e-3, 1e-2, 4, GridSpacing::logarithmic);
    const GridSpec ted_grid("ted", 0.5, 2.0, 3, GridSpacing::linear);
    const ContourGrid grid = ratio_contour_grid(noise, 1e4, tau_grid, ted_grid);

    REQUIRE(grid.records.size() == 12);
    for (std::size_t i = 0; i < grid.taus.size(); ++i) {
        for (std::size_t j = 0; j < grid.teds.size(); ++j) {
            const ContourRecord& rec = grid.records[i * grid.teds.size() + j];
            CHECK(rec.tau == grid.taus[i]);
            CHECK(rec.ted == grid.teds[j]);
            const double direct = efficiency_ratio(noise, TimingModel(rec.tau),
                                                   StorageSchedule(1e4, rec.ted, 1));
            CHECK(rec.ratio == direct);
            CHECK_FALSE(rec.degenerate);
        }
    }
}

TEST_CASE("vanishing-tau edge reduces to the no-timing-noise ratio", "[scan]") {
    const NoiseParams noise(1e-5);
    const GridSpec tau_grid("tau", 1e-9, 1e-8, 2, GridSpacing::logarithmic);
    const GridSpec ted_grid("ted", 0.5, 2.0, 3, GridSpacing::linear);
    const ContourGrid grid = ratio_contour_grid(noise, 1e4, tau_grid, ted_grid);
    for (std::size_t j = 0; j < grid.teds.size(); ++j) {
        const double ted = grid.teds[j];
        const double reduction =
            efficiency_ratio(noise, TimingModel(0.0), StorageSchedule(1e4, ted, 1));
        // the gap closes linearly in tau (~7e-9 relative at tau = 1e-9)
        CHECK(grid.at(0, j).ratio == Catch::Approx(reduction).epsilon(1e-7));
    }
}

TEST_CASE("contour grid is identical for any worker count", "[scan]") {
    const GridSpec tau_grid = default_tau_grid();
    const GridSpec ted_grid = default_ted_grid();
    const ContourGrid one = ratio_contour_grid(NoiseParams(1e-5), 1e4, tau_grid, ted_grid, 1);
    const ContourGrid many = ratio_contour_grid(NoiseParams(1e-5), 1e4, tau_grid, ted_grid, 3);
    CHECK(contour_csv(one) == contour_csv(many));
}

TEST_CASE("degenerate grid points are flagged, not dropped", "[scan]") {
    // with gamma = 0, the Ted = 0 column has a vanishing corrected mismatch:
    // those records must carry the sentinel status instead of disappearing
    const GridSpec tau_grid("tau", 1e-3, 1e-2, 2, GridSpacing::logarithmic);
    const GridSpec ted_grid("ted", 0.0, 1.0, 2, GridSpacing::linear);
    const ContourGrid grid = ratio_contour_grid(NoiseParams(0.0), 1e4, tau_grid, ted_grid);
    REQUIRE(grid.records.size() == 4);
    for (std::size_t i = 0; i < 2; ++i) {
        const ContourRecord& at_zero = grid.at(i, 0);
        CHECK(at_zero.degenerate);
        CHECK(std::isnan(at_zero.ratio));
        // gamma = 0 with Ted > 0: nothing to correct, finite denominator
        const ContourRecord& at_one = grid.at(i, 1);
        CHECK_FALSE(at_one.degenerate);
        CHECK(at_one.ratio == 0.0);
    }
    const std::string csv = contour_csv(grid);
    CHECK(csv.find(",nan,degenerate") != std::string::npos);
}

TEST_CASE("csv format: header, 17 significant digits, round trip", "[scan]") {
    const ContourGrid grid = ratio_contour_grid(NoiseParams(1e-5), 1e4,
                                                GridSpec("tau", 1e-3, 1e-2, 2, GridSpacing::logarithmic),
                                                GridSpec("ted", 0.5, 1.0, 2, GridSpacing::linear));
    const std::string csv = contour_csv(grid);
    REQUIRE(csv.rfind("tau,ted,R,status\n", 0) == 0);

    // parse the first data row back and compare bit-for-bit
    const std::size_t line_start = csv.find('\n') + 1;
    const std::size_t line_end = csv.find('\n', line_start);
    const std::string row = csv.substr(line_start, line_end - line_start);
    const double tau = std::strtod(row.c_str(), nullptr);
    const std::size_t c1 = row.find(',');
    const std::size_t c2 = row.find(',', c1 + 1);
    const double r = std::strtod(row.c_str() + c2 + 1, nullptr);
    CHECK(tau == grid.records[0].tau);
    CHECK(r == grid.records[0].ratio);
    CHECK(row.substr(row.rfind(',') + 1) == "ok");
}

TEST_CASE("json records mirror the csv fields", "[scan]") {
    const ContourGrid grid = ratio_contour_grid(NoiseParams(1e-5), 1e4,
                                                GridSpec("tau", 1e-3, 1e-2, 2, GridSpacing::logarithmic),
                                                GridSpec("ted", 0.5, 1.0, 2, GridSpacing::linear));
    const auto parsed = nlohmann::json::parse(contour_json(grid));
    REQUIRE(parsed.is_array());
    REQUIRE(parsed.size() == grid.records.size());
    for (std::size_t k = 0; k < grid.records.size(); ++k) {
        CHECK(parsed[k]["tau"].get<double>() == grid.records[k].tau);
        CHECK(parsed[k]["ted"].get<double>() == grid.records[k].ted);
        CHECK(parsed[k]["R"].get<double>() == grid.records[k].ratio);
        CHECK(parsed[k]["status"].get<std::string>() == "ok");
    }

    const RepetitionScan scan =
        optimize_repetitions(NoiseParams(1e-5), TimingModel(0.01), 1e4, 1.0, 8);
    const auto rep = nlohmann::json::parse(repetition_json(scan));
    REQUIRE(rep.size() == 8);
    CHECK(rep[0]["N"].get<int>() == 1);
    CHECK(rep[2]["P_N"].get<double>() == scan.table[2]);
}

TEST_CASE("repetition scan table matches direct evaluations", "[scan]") {
    const NoiseParams noise(1e-5);
    const TimingModel timing(0.003);
    const RepetitionScan scan = optimize_repetitions(noise, timing, 1e4, 1.0, 20);
    REQUIRE(scan.table.size() == 20);
    for (int n = 1; n <= 20; ++n) {
        CHECK(scan.table[n - 1] ==
              p_repeated(noise, timing, StorageSchedule(1e4, 1.0, n)).value());
    }
    CHECK_FALSE(scan.at_scan_edge);
}

TEST_CASE("optimal repetition counts for the reference parameters", "[scan]") {
    const NoiseParams noise(1e-5);
    CHECK(optimize_repetitions(noise, TimingModel(0.003), 1e4, 1.0, 20).n_opt == 6);
    CHECK(optimize_repetitions(noise, TimingModel(0.01), 1e4, 1.0, 20).n_opt == 3);
    CHECK(optimize_repetitions(noise, TimingModel(0.05), 1e4, 1.0, 20).n_opt == 1);
}

TEST_CASE("optimum at the scan edge raises the warning flag", "[scan]") {
    // the true optimum for tau = 0.003 is N = 6; a cap of 3 truncates it
    const RepetitionScan scan =
        optimize_repetitions(NoiseParams(1e-5), TimingModel(0.003), 1e4, 1.0, 3);
    CHECK(scan.n_opt == 3);
    CHECK(scan.at_scan_edge);
}

TEST_CASE("break-even encode/decode time", "[scan]") {
    const TimingModel timing(1e-3);

    const auto crossing = ratio_unity_ted(NoiseParams(1e-6), timing, 1e4, 1e4);
    REQUIRE(crossing.has_value());
    const double r_at_crossing =
        efficiency_ratio(NoiseParams(1e-6), timing, StorageSchedule(1e4, *crossing, 1));
    CHECK(std::abs(r_at_crossing - 1.0) < 1e-9);
    CHECK(*crossing / 1e4 > 1e-4);
    CHECK(*crossing / 1e4 < 1e-2);

    // strong storage noise: correction stays beneficial up to Ted = T
    CHECK_FALSE(ratio_unity_ted(NoiseParams(1e-4), timing, 1e4, 1e4).has_value());

    const double gammas[] = {1e-6, 1e-5, 1e-4};
    const auto report = ratio_unity_report(gammas, timing, 1e4);
    REQUIRE(report.size() == 3);
    CHECK(report[0].ted_unity.has_value());
    CHECK_FALSE(report[2].ted_unity.has_value());
    const std::string text = boundary_report_text(report, timing, 1e4);
    CHECK(text.find("gamma 1e-06") != std::string::npos);
    CHECK(text.find("no boundary") != std::string::npos);
}
