#include "isac/scenario.hpp"

#include <fstream>
#include <sstream>

#include "isac/errors.hpp"
#include "json_fields.hpp"

namespace isac {

using nlohmann::json;
using namespace json_fields;

ProblemSpec<double> ScenarioDocument::problem_spec() const {
  ProblemSpec<double> spec;
  spec.sinr_thresholds = gamma_db.unaryExpr([](double db) { return db_to_linear(db); });
  spec.crlb_ceiling = tau_m2;
  return spec;
}

ChannelSet ScenarioDocument::channels() const {
  if (const auto* cfg = std::get_if<ChannelConfig>(&channel)) return generate_channels(scene, *cfg);
  return std::get<ChannelSet>(channel);
}

Instance ScenarioDocument::instance() const { return make_instance(scene, channels(), problem_spec()); }

void ScenarioDocument::set_gamma_db(double db) {
  gamma_db = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(scene.num_transmitters()), db);
  gamma_shared = true;
}

namespace {

Point2<double> parse_point(const json& j, const std::string& path) {
  const Eigen::VectorXd v = as_vector(j, path);
  if (v.size() != 2) throw DimensionError(path, "expected [x, y]");
  return {v(0), v(1)};
}

std::vector<Point2<double>> parse_points(const json& block, std::string_view key, const std::string& path) {
  const json& arr = require(block, key, path);
  const auto apath = child(path, key);
  if (!arr.is_array()) throw SchemaError(apath, "expected an array of [x, y] points");
  std::vector<Point2<double>> out;
  for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(parse_point(arr[i], child(apath, i)));
  return out;
}

json point_json(const Point2<double>& p) { return json::array({p.x(), p.y()}); }

json points_json(const std::vector<Point2<double>>& pts) {
  json a = json::array();
  for (const auto& p : pts) a.push_back(point_json(p));
  return a;
}

Scene<double> parse_scene(const json& block) {
  const std::string path = "/scene";
  check_keys(block, {"transmitters_m", "sensing_receivers_m", "cu_receivers_m", "target_m"}, path);
  Scene<double> s;
  s.transmitters = parse_points(block, "transmitters_m", path);
  s.sensing_receivers = parse_points(block, "sensing_receivers_m", path);
  s.cu_receivers = parse_points(block, "cu_receivers_m", path);
  s.target = parse_point(require(block, "target_m", path), child(path, "target_m"));
  if (s.transmitters.empty()) throw SchemaError(child(path, "transmitters_m"), "needs at least one transmitter");
  if (s.sensing_receivers.empty())
    throw SchemaError(child(path, "sensing_receivers_m"), "needs at least one sensing receiver");
  if (s.cu_receivers.size() != s.transmitters.size())
    throw DimensionError(child(path, "cu_receivers_m"), "needs exactly one CU receiver per transmitter");
  try {
    validate(s);
  } catch (const SceneError& e) {
    throw SchemaError(path, e.what());
  }
  return s;
}

SolverConfig parse_solver(const json& block) {
  const std::string path = "/solver";
  check_keys(block,
             {"randomization_count", "step_size_w", "refine_epsilon", "rng_seed", "oracle_grid_points",
              "oracle_power_cap_w", "oracle_refinements", "threads"},
             path);
  SolverConfig c;
  c.randomization_count = unsigned_or(block, "randomization_count", path, c.randomization_count);
  c.step_size_w = optional_number(block, "step_size_w", path);
  c.refine_epsilon = number_or(block, "refine_epsilon", path, c.refine_epsilon);
  c.rng_seed = unsigned_or(block, "rng_seed", path, c.rng_seed);
  c.oracle_grid_points = unsigned_or(block, "oracle_grid_points", path, c.oracle_grid_points);
  c.oracle_power_cap_w = optional_number(block, "oracle_power_cap_w", path);
  c.oracle_refinements = static_cast<int>(unsigned_or(block, "oracle_refinements", path,
                                                      static_cast<std::uint64_t>(c.oracle_refinements)));
  c.threads = static_cast<unsigned>(unsigned_or(block, "threads", path, c.threads));
  try {
    c.validate();
  } catch (const std::invalid_argument& e) {
    throw SchemaError(path, e.what());
  }
  return c;
}

json solver_json(const SolverConfig& c) {
  json j{{"randomization_count", c.randomization_count},
         {"refine_epsilon", c.refine_epsilon},
         {"rng_seed", c.rng_seed},
         {"oracle_grid_points", c.oracle_grid_points},
         {"oracle_refinements", c.oracle_refinements},
         {"threads", c.threads}};
  if (c.step_size_w) j["step_size_w"] = *c.step_size_w;
  if (c.oracle_power_cap_w) j["oracle_power_cap_w"] = *c.oracle_power_cap_w;
  return j;
}

bool same_matrix(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() && a == b;
}

bool same_vector(const Eigen::VectorXd& a, const Eigen::VectorXd& b) { return a.size() == b.size() && a == b; }

bool same_points(const std::vector<Point2<double>>& a, const std::vector<Point2<double>>& b) { return a == b; }

}  // namespace

ScenarioDocument parse_scenario(const json& doc) {
  check_keys(doc, {"name", "scene", "channel", "spec", "solver"}, "");
  ScenarioDocument out;
  if (auto it = doc.find("name"); it != doc.end()) {
    if (!it->is_string()) throw SchemaError("/name", "expected a string");
    out.name = it->get<std::string>();
  }
  out.scene = parse_scene(require(doc, "scene", ""));
  const auto M = static_cast<Eigen::Index>(out.scene.num_transmitters());

  const json& channel = require(doc, "channel", "");
  check_keys(channel, {"generate", "explicit"}, "/channel");
  const bool gen = channel.contains("generate"), expl = channel.contains("explicit");
  if (gen == expl) throw SchemaError("/channel", "exactly one of 'generate' or 'explicit' is required");
  if (gen) {
    out.channel = channel_config_from_json(channel["generate"]);
  } else {
    out.channel = load_channels(channel["explicit"], out.scene);
  }

  const json& spec = require(doc, "spec", "");
  check_keys(spec, {"gamma_db", "tau_m2"}, "/spec");
  const json& gamma = require(spec, "gamma_db", "/spec");
  out.gamma_shared = gamma.is_number();
  out.gamma_db = scalar_or_vector(gamma, "/spec/gamma_db", M);
  out.tau_m2 = number(spec, "tau_m2", "/spec");
  if (!(out.tau_m2 > 0.0)) throw SchemaError("/spec/tau_m2", "must be positive");

  if (auto it = doc.find("solver"); it != doc.end()) out.solver = parse_solver(*it);
  return out;
}

ScenarioDocument parse_scenario_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError("", std::string("malformed document: ") + e.what());
  }
  return parse_scenario(doc);
}

ScenarioDocument load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario_text(ss.str());
}

json to_json(const ScenarioDocument& doc) {
  json j;
  if (!doc.name.empty()) j["name"] = doc.name;
  j["scene"] = {{"transmitters_m", points_json(doc.scene.transmitters)},
                {"sensing_receivers_m", points_json(doc.scene.sensing_receivers)},
                {"cu_receivers_m", points_json(doc.scene.cu_receivers)},
                {"target_m", point_json(doc.scene.target)}};
  if (const auto* cfg = std::get_if<ChannelConfig>(&doc.channel))
    j["channel"] = {{"generate", to_json(*cfg)}};
  else
    j["channel"] = {{"explicit", channels_to_json(std::get<ChannelSet>(doc.channel))}};
  j["spec"] = {{"gamma_db", doc.gamma_shared ? json(doc.gamma_db(0)) : json_fields::to_json(doc.gamma_db)},
               {"tau_m2", doc.tau_m2}};
  j["solver"] = solver_json(doc.solver);
  return j;
}

std::string serialize_scenario(const ScenarioDocument& doc) { return to_json(doc).dump(2) + "\n"; }

bool same_document(const ScenarioDocument& a, const ScenarioDocument& b) {
  const auto& sa = a.scene;
  const auto& sb = b.scene;
  if (a.name != b.name || !same_points(sa.transmitters, sb.transmitters) ||
      !same_points(sa.sensing_receivers, sb.sensing_receivers) || !same_points(sa.cu_receivers, sb.cu_receivers) ||
      sa.target != sb.target)
    return false;
  if (a.generated() != b.generated()) return false;
  if (a.generated()) {
    const auto& ca = std::get<ChannelConfig>(a.channel);
    const auto& cb = std::get<ChannelConfig>(b.channel);
    if (ca.carrier_frequency_hz != cb.carrier_frequency_hz || ca.bandwidth_hz != cb.bandwidth_hz ||
        ca.rician_k_db != cb.rician_k_db || ca.noise_psd_dbm_per_hz != cb.noise_psd_dbm_per_hz ||
        ca.pathloss_exponent_comm != cb.pathloss_exponent_comm ||
        ca.cross_link_isolation_db != cb.cross_link_isolation_db || ca.rcs_m2 != cb.rcs_m2 ||
        ca.obs_duration_s != cb.obs_duration_s || ca.seed != cb.seed)
      return false;
  } else {
    const auto& ca = std::get<ChannelSet>(a.channel);
    const auto& cb = std::get<ChannelSet>(b.channel);
    if (!same_matrix(ca.comm.h, cb.comm.h) || !same_vector(ca.comm.noise_power, cb.comm.noise_power) ||
        !same_matrix(ca.radar.h_rad, cb.radar.h_rad) || ca.radar.noise_level != cb.radar.noise_level ||
        !same_vector(ca.radar.eff_bandwidth, cb.radar.eff_bandwidth) ||
        ca.radar.obs_duration != cb.radar.obs_duration || !same_vector(ca.radar.xi, cb.radar.xi))
      return false;
  }
  const auto& oa = a.solver;
  const auto& ob = b.solver;
  return same_vector(a.gamma_db, b.gamma_db) && a.gamma_shared == b.gamma_shared && a.tau_m2 == b.tau_m2 &&
         oa.randomization_count == ob.randomization_count && oa.step_size_w == ob.step_size_w &&
         oa.refine_epsilon == ob.refine_epsilon && oa.rng_seed == ob.rng_seed &&
         oa.oracle_grid_points == ob.oracle_grid_points && oa.oracle_power_cap_w == ob.oracle_power_cap_w &&
         oa.oracle_refinements == ob.oracle_refinements && oa.threads == ob.threads &&
         oa.max_refine_iterations == ob.max_refine_iterations;
}

ScenarioDocument two_tx_template() {
  ScenarioDocument d;
  d.name = "two-tx";
  d.scene.transmitters = {{-50.0, 0.0}, {0.0, 50.0}};
  d.scene.cu_receivers = {{-20.0, 0.0}, {20.0, 0.0}};
  d.scene.sensing_receivers = {{-50.0, -10.0}, {50.0, 10.0}};
  d.scene.target = {30.0, 0.0};
  d.channel = ChannelConfig{};
  d.set_gamma_db(10.0);
  d.tau_m2 = 0.05;
  return d;
}

ScenarioDocument three_tx_template() {
  ScenarioDocument d;
  d.name = "three-tx";
  d.scene.transmitters = {{-100.0, 0.0}, {100.0, 0.0}, {0.0, 100.0}};
  d.scene.cu_receivers = {{-80.0, 20.0}, {80.0, 20.0}, {0.0, 80.0}};
  d.scene.sensing_receivers = {{-100.0, 50.0}, {100.0, 50.0}};
  d.scene.target = {0.0, 50.0};
  d.channel = ChannelConfig{};
  d.set_gamma_db(10.0);
  d.tau_m2 = 0.05;
  return d;
}

std::vector<NamedDocument> scenario_templates() {
  return {{"two_tx.json", two_tx_template()}, {"three_tx.json", three_tx_template()}};
}

}  // namespace isac
