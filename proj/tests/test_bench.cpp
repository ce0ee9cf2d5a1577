#include "admesh/bench.hpp"

#include "test_util.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstring>
#include <sstream>

using namespace admesh;
using namespace admesh::bench;

namespace {

ExperimentRow sample_row() {
    ExperimentRow row;
    row.eps = 1e-2;
    row.delta = 0.1;
    row.iadapt = 5;
    row.maxerr = 0.020371113455796531;
    row.bound = 1.605;
    row.maxerr_over_bound = row.maxerr / row.bound;
    row.maxerrg = 1.0 / 3.0;
    row.equidist_maxerr = 0.1 + 0.2;
    row.equidist_maxerrg = 5e-324;
    row.ratio_local = 8.3835;
    row.ratio_global = 1e300;
    row.evals_adaptive = 20;
    row.evals_equidistant = 20;
    return row;
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST_SUITE("bench_cli") {

TEST_CASE("csv header") {
    CHECK(emit({}, Format::Csv) == std::string(kCsvHeader) + "\n");
}

TEST_CASE("json") {
    const auto parsed = nlohmann::json::parse(emit({sample_row()}, Format::Json));
    REQUIRE(parsed.is_array());
    REQUIRE(parsed.size() == 1);
    const auto& obj = parsed[0];
    std::istringstream header{std::string(kCsvHeader)};
    std::string key;
    std::size_t keys = 0;
    while (std::getline(header, key, ',')) {
        CHECK(obj.contains(key));
        ++keys;
    }
    CHECK(keys == 15);
    CHECK(obj.size() == 15);
    CHECK(obj["maxerrg"].get<double>() == 1.0 / 3.0);
    CHECK(obj["iadapt"].get<int>() == 5);
}

TEST_CASE("formats") {
    CHECK(parse_format("csv") == Format::Csv);
    CHECK(parse_format("json") == Format::Json);
    CHECK(parse_format("pretty") == Format::Pretty);
    CHECK_ADMESH_ERROR(parse_format("xml"), UnknownFormat);
    CHECK(format_double(0.1) == "0.10000000000000001");
}

TEST_CASE("csv round trip is bit exact") {
    std::vector<ExperimentRow> rows{sample_row(), sample_row()};
    rows[1].eps = 1e-8;
    rows[1].maxerr = 2.2250738585072014e-308;
    const auto back = parse_csv(emit(rows, Format::Csv));
    REQUIRE(back.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& a = rows[i];
        const auto& b = back[i];
        CHECK(same_bits(a.eps, b.eps));
        CHECK(same_bits(a.delta, b.delta));
        CHECK(a.r == b.r);
        CHECK(same_bits(a.alpha, b.alpha));
        CHECK(a.iadapt == b.iadapt);
        CHECK(same_bits(a.maxerr, b.maxerr));
        CHECK(same_bits(a.bound, b.bound));
        CHECK(same_bits(a.maxerr_over_bound, b.maxerr_over_bound));
        CHECK(same_bits(a.maxerrg, b.maxerrg));
        CHECK(same_bits(a.equidist_maxerr, b.equidist_maxerr));
        CHECK(same_bits(a.equidist_maxerrg, b.equidist_maxerrg));
        CHECK(same_bits(a.ratio_local, b.ratio_local));
        CHECK(same_bits(a.ratio_global, b.ratio_global));
        CHECK(a.evals_adaptive == b.evals_adaptive);
        CHECK(a.evals_equidistant == b.evals_equidistant);
    }
}

TEST_CASE("failed cells are kept") {
    auto row = sample_row();
    row.error = "no bracket";
    const auto csv = emit({row}, Format::Csv);
    CHECK(csv.find("ERROR:no bracket") != std::string::npos);
    const auto back = parse_csv(csv);
    REQUIRE(back.size() == 1);
    CHECK(back[0].failed());
    CHECK(nlohmann::json::parse(emit({row}, Format::Json))[0].contains("error"));

    const auto broken = run_cell("paper-sec7", {{"b", -1.0}}, 1e-2, 0.1, 0.25, 2);
    CHECK(broken.failed());
}

TEST_CASE("table") {
    TableSpec spec;
    spec.eps_list = {1e-2, 1e-4};
    spec.delta_list = {1e-1, 1e-4, 1e-8};
    const auto rows = run_table(spec);
    REQUIRE(rows.size() == 6);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].eps == spec.eps_list[i / 3]);
        CHECK(rows[i].delta == spec.delta_list[i % 3]);
        CHECK_FALSE(rows[i].failed());
        CHECK(rows[i].maxerr_over_bound == rows[i].maxerr / rows[i].bound);
        CHECK(rows[i].ratio_local == rows[i].equidist_maxerr / rows[i].maxerr);
        CHECK(rows[i].maxerr_over_bound <= 1.0);
        CHECK(rows[i].ratio_local > 1.0);
    }

    SUBCASE("deterministic across thread counts") {
        auto serial = spec;
        serial.threads = 1;
        auto parallel = spec;
        parallel.threads = 4;
        CHECK(emit(run_table(serial), Format::Csv) == emit(run_table(parallel), Format::Csv));
    }
    SUBCASE("pretty rows") {
        TableSpec grid = spec;
        grid.eps_list = {1e-2, 1e-3, 1e-4};
        const auto text = emit(run_table(grid), Format::Pretty);
        std::istringstream in(text);
        std::string line;
        std::size_t data_rows = 0;
        while (std::getline(in, line)) {
            if (!line.empty() && (line[0] == '1' || line[0] == '0')) ++data_rows;
        }
        CHECK(data_rows == 9);
    }
}

TEST_CASE("constant f row") {
    for (double eps : {1e-2, 1e-4}) {
        const auto row = run_cell("const-f", {{"c", 1.0}}, eps, 0.0, 0.25, 2);
        REQUIRE_FALSE(row.failed());
        CHECK(row.iadapt == 1);
        CHECK(row.maxerr <= eps / 2);
        CHECK(row.equidist_maxerr <= 1e-12);
    }
}

TEST_CASE("quadrature oracle flag") {
    const auto row = run_cell("linear-g", {{"eta", 1.0}}, 1e-3, 0.0, 0.25, 2);
    CHECK_FALSE(row.quadrature_oracle);
}

TEST_CASE("auxiliary emitters") {
    const auto constants = emit_constants(4);
    CHECK(constants.find("1/12") != std::string::npos);
    CHECK(constants.find("-1/120") != std::string::npos);
}

}
