#include "hcensor/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "hcensor/errors.hpp"

namespace hcensor {

namespace {

std::string trim_ws(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

double parse_real(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    double x = std::stod(v, &pos);
    if (pos != v.size()) throw ConfigError("");
    return x;
  } catch (...) {
    throw ConfigError("scenario: bad numeric value for " + key + ": '" + v + "'");
  }
}

int parse_int(const std::string& key, const std::string& v) {
  double x = parse_real(key, v);
  if (x != std::floor(x) || std::abs(x) > 1e9)
    throw ConfigError("scenario: " + key + " must be an integer, got '" + v + "'");
  return static_cast<int>(x);
}

std::vector<std::pair<double, double>> parse_pair_list(const std::string& key,
                                                       const std::string& v) {
  std::vector<std::pair<double, double>> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim_ws(item);
    if (item.empty()) continue;
    size_t colon = item.find(':');
    if (colon == std::string::npos)
      throw ConfigError("scenario: " + key + " entries must be a:b, got '" + item + "'");
    out.emplace_back(parse_real(key, trim_ws(item.substr(0, colon))),
                     parse_real(key, trim_ws(item.substr(colon + 1))));
  }
  if (out.empty()) throw ConfigError("scenario: empty list for " + key);
  return out;
}

}  // namespace

void ScenarioModel::validate() const {
  if (battery < 1) throw ConfigError("scenario: battery.capacity must be >= 1");
  if (!(gamma >= 0.0) || !(gamma < 1.0))
    throw ConfigError("scenario: gamma must be in [0,1)");
  costs.validate();
}

ScenarioModel parse_scenario_text(const std::string& text) {
  static const std::set<std::string> known = {
      "battery.capacity", "cost.c_I", "cost.c_R", "cost.c_T", "cost.p_fail",
      "cost.m_S", "harvest.kind", "harvest.p_b", "harvest.m_b",
      "harvest.e_H", "harvest.schedule", "importance.kind", "importance.mean",
      "importance.atoms", "gamma"};

  std::map<std::string, std::string> kv;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim_ws(line);
    if (line.empty()) continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("scenario: line " + std::to_string(lineno) +
                        " is not key = value");
    std::string key = trim_ws(line.substr(0, eq));
    std::string value = trim_ws(line.substr(eq + 1));
    if (!known.count(key))
      throw ConfigError("scenario: unknown key '" + key + "'");
    if (kv.count(key))
      throw ConfigError("scenario: duplicate key '" + key + "'");
    kv[key] = value;
  }

  auto need = [&](const std::string& key) -> std::string {
    auto it = kv.find(key);
    if (it == kv.end()) throw ConfigError("scenario: missing key '" + key + "'");
    return it->second;
  };
  auto get = [&](const std::string& key, const std::string& fallback) {
    auto it = kv.find(key);
    return it == kv.end() ? fallback : it->second;
  };

  ScenarioModel s;
  s.battery = parse_int("battery.capacity", need("battery.capacity"));
  s.costs.c_I = parse_int("cost.c_I", get("cost.c_I", "0"));
  s.costs.c_R = parse_int("cost.c_R", need("cost.c_R"));
  s.costs.c_T = parse_int("cost.c_T", need("cost.c_T"));
  s.costs.p_fail = parse_real("cost.p_fail", get("cost.p_fail", "0"));
  double m_S = parse_real("cost.m_S", get("cost.m_S", "1"));
  s.costs.slots = SlotModel::geometric(m_S);

  std::string hkind = need("harvest.kind");
  if (hkind == "per_slot_geometric") {
    s.costs.harvest = HarvestModel::per_slot_geometric(
        parse_real("harvest.p_b", need("harvest.p_b")),
        parse_real("harvest.m_b", get("harvest.m_b", "1")));
  } else if (hkind == "bernoulli_fixed") {
    s.costs.harvest = HarvestModel::bernoulli_fixed(
        parse_real("harvest.p_b", need("harvest.p_b")),
        parse_int("harvest.e_H", get("harvest.e_H", "0")));
  } else {
    throw ConfigError("scenario: harvest.kind must be per_slot_geometric or "
                      "bernoulli_fixed, got '" + hkind + "'");
  }
  if (kv.count("harvest.schedule")) {
    for (auto& [duration, amount] : parse_pair_list("harvest.schedule",
                                                    kv["harvest.schedule"])) {
      if (duration != std::floor(duration) || duration < 1)
        throw ConfigError("scenario: schedule durations must be whole slots");
      s.costs.harvest.schedule.push_back(
          {static_cast<long>(duration), amount});
    }
  }

  std::string ikind = get("importance.kind", "exponential");
  if (ikind == "exponential") {
    s.importance =
        ImportanceModel::exponential(parse_real("importance.mean",
                                                need("importance.mean")));
  } else if (ikind == "empirical") {
    s.importance = ImportanceModel::empirical(
        parse_pair_list("importance.atoms", need("importance.atoms")));
  } else {
    throw ConfigError("scenario: importance.kind must be exponential or "
                      "empirical, got '" + ikind + "'");
  }

  s.gamma = parse_real("gamma", need("gamma"));
  s.validate();
  return s;
}

ScenarioModel load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("scenario: cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario_text(buf.str());
}

std::map<std::string, std::string> scenario_keys(const ScenarioModel& s) {
  std::map<std::string, std::string> kv;
  auto num = [](double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
  };
  kv["battery.capacity"] = std::to_string(s.battery);
  kv["cost.c_I"] = std::to_string(s.costs.c_I);
  kv["cost.c_R"] = std::to_string(s.costs.c_R);
  kv["cost.c_T"] = std::to_string(s.costs.c_T);
  kv["cost.p_fail"] = num(s.costs.p_fail);
  kv["cost.m_S"] = num(s.costs.slots.mean());
  const HarvestModel& h = s.costs.harvest;
  if (h.kind == HarvestModel::Kind::per_slot_geometric) {
    kv["harvest.kind"] = "per_slot_geometric";
    kv["harvest.p_b"] = num(h.p);
    kv["harvest.m_b"] = num(h.amount);
  } else {
    kv["harvest.kind"] = "bernoulli_fixed";
    kv["harvest.p_b"] = num(h.p);
    kv["harvest.e_H"] = std::to_string(static_cast<int>(h.amount));
  }
  if (!h.schedule.empty()) {
    std::ostringstream os;
    for (size_t i = 0; i < h.schedule.size(); ++i) {
      if (i) os << ",";
      os << h.schedule[i].duration_slots << ":" << num(h.schedule[i].amount);
    }
    kv["harvest.schedule"] = os.str();
  }
  if (s.importance.kind() == ImportanceModel::Kind::exponential) {
    kv["importance.kind"] = "exponential";
    kv["importance.mean"] = num(s.importance.mean());
  } else {
    kv["importance.kind"] = "empirical";
    std::ostringstream os;
    const auto& atoms = s.importance.atoms();
    for (size_t i = 0; i < atoms.size(); ++i) {
      if (i) os << ",";
      os << num(atoms[i].first) << ":" << num(atoms[i].second);
    }
    kv["importance.atoms"] = os.str();
  }
  kv["gamma"] = num(s.gamma);
  return kv;
}

std::string serialize_scenario(const ScenarioModel& s) {
  std::ostringstream os;
  for (auto& [key, value] : scenario_keys(s)) os << key << " = " << value << "\n";
  return os.str();
}

}  // namespace hcensor
