#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "sprayflame/artifacts.hpp"
#include "sprayflame/front.hpp"

using namespace sprayflame;

namespace {

FlameModel sample_model() {
    ModelParams p;
    p.delta = {0.0, 0.1, 0.0, 0.0, 0.5, 0.0, 0.0, 0.1, 0.0};
    p.e_bar = 73.0;
    p.thermal.lambda_latent = 0.35;
    return FlameModel::assemble(p);
}

} // namespace

TEST_CASE("grid construction and validation") {
    const auto grid = FieldGrid::uniform(5, 4, 0.6);
    CHECK(grid.xi.front() == 0.0);
    CHECK(grid.xi.back() == 1.0);
    CHECK(grid.eta.front() == 0.0);
    CHECK(grid.eta.back() == doctest::Approx(0.6));

    CHECK_THROWS_AS(FieldGrid::uniform(1, 4, 0.6), std::invalid_argument);
    CHECK_THROWS_AS(FieldGrid::uniform(4, 4, 0.0), std::invalid_argument);

    FieldGrid bad = grid;
    bad.eta[0] = 0.01;
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
    bad = grid;
    bad.xi[2] = bad.xi[1];
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
}

TEST_CASE("parallel kernel is bit-identical to the serial reference") {
    const auto model = sample_model();
    const FieldEvaluator evaluator(FieldGrid::uniform(157, 211, 0.6), 200);

    std::vector<double> serial, parallel;
    for (const CosineSeriesField* f : {&model.gas_field(), &model.temperature_field()}) {
        evaluator.evaluate(*f, serial, Execution::serial);
        evaluator.evaluate(*f, parallel, Execution::parallel);
        REQUIRE(serial.size() == parallel.size());
        for (size_t i = 0; i < serial.size(); ++i)
            REQUIRE(serial[i] == parallel[i]);
    }
}

TEST_CASE("grid values agree with point evaluation") {
    const auto model = sample_model();
    const FieldGrid grid = FieldGrid::uniform(31, 21, 0.5);
    const FieldEvaluator evaluator(grid, 200);
    std::vector<double> vals;
    evaluator.evaluate(model.gas_field(), vals, Execution::serial);
    for (int r = 0; r < grid.n_eta(); r += 5)
        for (int j = 0; j < grid.n_xi(); j += 7)
            CHECK(vals[static_cast<size_t>(r) * grid.n_xi() + j] ==
                  doctest::Approx(model.gamma(grid.xi[j], grid.eta[r])).epsilon(1e-12));
}

TEST_CASE("field CSV layout") {
    const FieldGrid grid = FieldGrid::uniform(2, 3, 0.5);
    const std::vector<double> gamma_vals = {1, 2, 3, -4, 5, 6};   // rows: eta, cols: xi
    const std::vector<double> gamma_t_vals = {10, 20, 30, 40, 50, 60};
    const std::string csv = field_csv(grid, gamma_vals, gamma_t_vals);

    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line == "xi,eta,gamma,gamma_T,T");
    // first xi block: xi=0 with eta ascending
    std::getline(in, line);
    CHECK(line == "0,0,1,10,9");
    std::getline(in, line);
    CHECK(line == "0,0.25,3,30,27");
    std::getline(in, line);
    CHECK(line == "0,0.5,5,50,45");
    // second xi block; T = gamma_T - max(gamma, 0)
    std::getline(in, line);
    CHECK(line == "1,0,2,20,18");
    std::getline(in, line);
    CHECK(line == "1,0.25,-4,40,40");

    int rows = 1;
    while (std::getline(in, line))
        ++rows;
    CHECK(rows == 2);  // 6 data rows total

    CHECK_THROWS_AS(field_csv(grid, {1.0}, {2.0}), std::invalid_argument);
}

TEST_CASE("round-trip double formatting") {
    for (double v : {0.1, 1.0 / 3.0, 6.0 / 7.0, -9.0504906000698392, 1e-300, 0.0}) {
        const std::string s = format_double(v);
        CHECK(std::stod(s) == v);
    }
}
