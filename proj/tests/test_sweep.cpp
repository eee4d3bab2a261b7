#include "doctest.h"

#include <sstream>

#include "isac/errors.hpp"
#include "isac/sweep.hpp"

using namespace isac;

namespace {

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

SweepPlan small_plan() {
  SweepPlan plan;
  plan.trials = 2;
  plan.from = 0.0;
  plan.to = 10.0;
  plan.step = 5.0;
  return plan;
}

}  // namespace

TEST_CASE("plan values and validation") {
  SweepPlan plan;
  CHECK(plan.values().size() == 11);
  CHECK(plan.values().back() == doctest::Approx(20.0));

  plan.methods.clear();
  CHECK_THROWS_AS(plan.validate(), SchemaError);
  plan = {};
  plan.step = 0.0;
  CHECK_THROWS_AS(plan.validate(), SchemaError);
  plan = {};
  plan.from = 30.0;
  CHECK_THROWS_AS(plan.validate(), SchemaError);

  try {
    parse_sweep_plan({{"methods", nlohmann::json::array()}});
    FAIL("expected a schema error");
  } catch (const SchemaError& e) {
    CHECK(e.field() == "/sweep/methods");
  }
  const auto parsed = parse_sweep_plan({{"parameter", "target_x"}, {"from", -40}, {"to", 40}, {"step", 10}});
  CHECK(parsed.parameter == SweepParameter::TargetX);
  CHECK(parsed.values().size() == 9);
}

TEST_CASE("csv header is fixed") {
  const auto csv = to_csv(run_sweep(two_tx_template(), small_plan()));
  CHECK(lines(csv).front() ==
        "sweep_value,method,trial_seed,total_power_w,total_power_dbm,min_sinr_margin_db,crlb_m2,status,solve_ms");
}

TEST_CASE("row count and summaries") {
  SweepPlan plan;
  plan.trials = 2;
  const auto table = run_sweep(two_tx_template(), plan);
  CHECK(table.rows.size() == 11 * 3 * 2);
  CHECK(table.summaries.size() == 11 * 3);
  const auto l = lines(to_csv(table));
  // Header, trial rows, then a mean and a std row per (value, method).
  CHECK(l.size() == 1 + 11 * 3 * 2 + 11 * 3 * 2);
  CHECK(l[3].find(",mean,") != std::string::npos);
  CHECK(l[3].find("ok=") != std::string::npos);
  for (const auto& row : table.rows) {
    CHECK(row.result.ok());
    CHECK_FALSE(row.solve_ms.has_value());
  }
}

TEST_CASE("failed points are recorded and the sweep continues") {
  auto plan = small_plan();
  plan.from = 50.0;
  plan.to = 60.0;
  plan.methods = {Method::Separate};
  const auto table = run_sweep(two_tx_template(), plan);
  for (const auto& row : table.rows) CHECK(row.result.status == SolveStatus::Infeasible);
  const auto l = lines(to_csv(table));
  CHECK(l[1] == "50,separate,1,,,,,infeasible,");
}

TEST_CASE("sweeps are deterministic and independent of the thread count") {
  auto plan = small_plan();
  plan.threads = 1;
  const auto serial = run_sweep(two_tx_template(), plan);
  plan.threads = 4;
  const auto parallel = run_sweep(two_tx_template(), plan);
  CHECK(to_csv(serial) == to_csv(parallel));
  REQUIRE(serial.rows.size() == parallel.rows.size());
  for (std::size_t i = 0; i < serial.rows.size(); ++i) CHECK(serial.rows[i].result.power == parallel.rows[i].result.power);
}

TEST_CASE("trial seeds and swept fields") {
  const auto doc = sweep_point(two_tx_template(), SweepParameter::TargetX, -12.5, 7);
  CHECK(doc.scene.target.x() == -12.5);
  CHECK(std::get<ChannelConfig>(doc.channel).seed == 7);
  CHECK(doc.solver.rng_seed == 7);
  CHECK(sweep_point(two_tx_template(), SweepParameter::CrlbCeiling, 0.2, 1).tau_m2 == 0.2);
  CHECK(sweep_point(two_tx_template(), SweepParameter::SinrDb, 3.0, 1).gamma_db(1) == 3.0);

  auto expl = two_tx_template();
  expl.channel = expl.channels();
  auto plan = small_plan();
  plan.parameter = SweepParameter::TargetX;
  CHECK_THROWS_AS(run_sweep(expl, plan), SchemaError);
}

TEST_CASE("timing column is opt-in") {
  auto plan = small_plan();
  plan.methods = {Method::Separate};
  plan.timing = true;
  const auto table = run_sweep(two_tx_template(), plan);
  CHECK(table.rows.front().solve_ms.has_value());
}
