#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "isac/errors.hpp"
#include "isac/report.hpp"
#include "isac/scenario.hpp"

using namespace isac;
using nlohmann::json;

namespace {

std::string field_of(const json& doc) {
  try {
    parse_scenario(doc);
  } catch (const SchemaError& e) {
    return e.field();
  }
  return "<accepted>";
}

}  // namespace

TEST_CASE("built-in scenarios") {
  const auto two = two_tx_template();
  CHECK(two.scene.target.x() == 30.0);
  CHECK(two.scene.target.y() == 0.0);
  REQUIRE(two.scene.transmitters.size() == 2);
  CHECK(two.scene.transmitters[0].x() == -50.0);
  CHECK(two.scene.transmitters[1].y() == 50.0);
  CHECK(two.gamma_db(0) == 10.0);
  CHECK(two.tau_m2 == 0.05);

  const auto three = three_tx_template();
  CHECK(three.scene.target.x() == 0.0);
  CHECK(three.scene.target.y() == 50.0);
  CHECK(three.scene.transmitters.size() == 3);
  CHECK(three.scene.sensing_receivers.size() == 2);

  const auto& cfg = std::get<ChannelConfig>(two.channel);
  CHECK(cfg.carrier_frequency_hz == 6e9);
  CHECK(cfg.bandwidth_hz == 1e6);
  CHECK(cfg.rician_k_db == 5.0);
  CHECK(cfg.noise_psd_dbm_per_hz == -174.0);
}

TEST_CASE("templates serialize identically every time") {
  for (const auto& t : scenario_templates()) {
    const auto a = serialize_scenario(t.document);
    const auto b = serialize_scenario(parse_scenario_text(a));
    CHECK(a == b);
  }
  CHECK(serialize_scenario(scenario_templates()[0].document) == serialize_scenario(two_tx_template()));
}

TEST_CASE("round trip keeps every field") {
  auto doc = three_tx_template();
  doc.gamma_db = Eigen::Vector3d(0.5, 3.25, -1.0);
  doc.gamma_shared = false;
  doc.solver.step_size_w = 1e-5;
  doc.solver.oracle_power_cap_w = 0.25;
  doc.solver.threads = 3;
  const auto back = parse_scenario_text(serialize_scenario(doc));
  CHECK(same_document(doc, back));
  CHECK(back.gamma_db(1) == 3.25);
  CHECK(back.solver.step_size_w == 1e-5);

  ScenarioDocument expl = two_tx_template();
  expl.channel = expl.channels();
  const auto back2 = parse_scenario_text(serialize_scenario(expl));
  CHECK_FALSE(back2.generated());
  CHECK(same_document(expl, back2));
  CHECK(std::get<ChannelSet>(back2.channel).comm.h == std::get<ChannelSet>(expl.channel).comm.h);
}

TEST_CASE("schema errors name the field") {
  const json base = to_json(two_tx_template());

  json missing = base;
  missing["scene"].erase("target_m");
  CHECK(field_of(missing) == "/scene/target_m");

  json bad_tau = base;
  bad_tau["spec"]["tau_m2"] = -1.0;
  CHECK(field_of(bad_tau) == "/spec/tau_m2");

  json both = base;
  both["channel"]["explicit"] = json::object();
  CHECK(field_of(both) == "/channel");

  json typo = base;
  typo["solver"]["randomisation_count"] = 5;
  CHECK(field_of(typo).rfind("/solver", 0) == 0);

  json bad_gamma = base;
  bad_gamma["spec"]["gamma_db"] = json::array({1.0, 2.0, 3.0});
  CHECK(field_of(bad_gamma).rfind("/spec/gamma_db", 0) == 0);

  json bad_point = base;
  bad_point["scene"]["transmitters_m"][1] = json::array({1.0});
  CHECK(field_of(bad_point).rfind("/scene/transmitters_m/1", 0) == 0);

  CHECK(field_of(base) == "<accepted>");
}

TEST_CASE("syntax errors carry a position") {
  try {
    parse_scenario_text("{\n  \"name\": \"x\",\n  \"scene\": [\n");
    FAIL("expected a schema error");
  } catch (const SchemaError& e) {
    CHECK(std::string(e.what()).find("line") != std::string::npos);
  }
}

TEST_CASE("loading from disk") {
  const auto dir = std::filesystem::temp_directory_path() / "isac_scenario_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "two.json";
  {
    std::ofstream f(path);
    f << serialize_scenario(two_tx_template());
  }
  CHECK(same_document(load_scenario(path), two_tx_template()));
  CHECK_THROWS_AS(load_scenario(dir / "missing.json"), std::runtime_error);
  std::filesystem::remove_all(dir);
}

TEST_CASE("instances follow the document") {
  auto doc = two_tx_template();
  doc.set_gamma_db(0.0);
  const auto inst = doc.instance();
  CHECK(inst.spec.sinr_thresholds(0) == doctest::Approx(1.0));
  CHECK(inst.spec.crlb_ceiling == 0.05);
  CHECK(inst.size() == 2);
}

TEST_CASE("exit codes and reports") {
  CHECK(exit_code(SolveStatus::Feasible) == 0);
  CHECK(exit_code(SolveStatus::Infeasible) == 2);
  CHECK(exit_code(SolveStatus::Unobservable) == 2);
  CHECK(exit_code(SolveStatus::NumericalFailure) == 3);
  CHECK(exit_code(SolveStatus::AllCandidatesInfeasible) == 3);

  const auto doc = two_tx_template();
  const auto r = solve(Method::Separate, doc.instance(), doc.solver);
  REQUIRE(r.ok());
  const auto text = format_report(doc, r);
  CHECK(text.find("dBm") != std::string::npos);
  CHECK(text.find("separate") != std::string::npos);
  CHECK(format_resolved(doc).find("\"tau_m2\"") != std::string::npos);
}
