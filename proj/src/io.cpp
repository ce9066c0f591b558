#include "erisk/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace erisk {

using nlohmann::json;

namespace {

Rational field_rational(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) throw ValidationError(where + ": missing \"" + key + "\"");
  const json& v = obj.at(key);
  if (v.is_number_integer()) return Rational(Integer(v.dump()));
  if (!v.is_string())
    throw ValidationError(where + ": \"" + key + "\" must be a string fraction \"n/d\"");
  try {
    return Rational::parse(v.get<std::string>());
  } catch (const std::exception& e) {
    throw ValidationError(where + ": " + e.what());
  }
}

std::string field_string(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key) || !obj.at(key).is_string())
    throw ValidationError(where + ": missing string \"" + key + "\"");
  return obj.at(key).get<std::string>();
}

}  // namespace

ParsedInstance validate_game(const json& raw) {
  if (!raw.is_object()) throw ValidationError("game description must be a JSON object");
  if (!raw.contains("states") || !raw.at("states").is_array())
    throw ValidationError("missing \"states\" array");

  std::vector<State> states;
  std::map<std::string, std::size_t> index;
  std::vector<Rational> rewards;
  for (const json& js : raw.at("states")) {
    const std::string id = field_string(js, "id", "state");
    const std::string where = "state '" + id + "'";
    if (index.count(id)) throw ValidationError(where + ": duplicate id");
    State st;
    st.id = id;
    const std::string owner = js.contains("owner") ? field_string(js, "owner", where) : "max";
    if (owner == "max") {
      st.owner = Player::kMax;
    } else if (owner == "min") {
      st.owner = Player::kMin;
    } else {
      throw ValidationError(where + ": owner must be \"max\" or \"min\"");
    }
    const Rational r = js.contains("reward") ? field_rational(js, "reward", where) : Rational(0);
    if (r.sign() < 0) throw ValidationError(where + ": negative reward " + r.str());
    rewards.push_back(r);
    index[id] = states.size();
    states.push_back(std::move(st));
  }

  Integer scale = 1;
  for (const Rational& r : rewards) scale = lcm(scale, r.denominator());
  for (std::size_t s = 0; s < states.size(); ++s) {
    const Rational scaled = rewards[s] * Rational(scale);
    const Integer n = scaled.numerator();
    if (!n.fits_ulong_p())
      throw ValidationError("state '" + states[s].id + "': reward too large");
    states[s].reward = n.get_ui();
  }

  const json empty = json::array();
  const json& transitions = raw.contains("transitions") ? raw.at("transitions") : empty;
  if (!transitions.is_array()) throw ValidationError("\"transitions\" must be an array");
  auto resolve = [&](const std::string& id, const std::string& where) {
    auto it = index.find(id);
    if (it == index.end())
      throw ValidationError(where + ": dangling state reference '" + id + "'");
    return it->second;
  };
  for (const json& jt : transitions) {
    const std::string from = field_string(jt, "from", "transition");
    const std::string label = field_string(jt, "action", "transition from '" + from + "'");
    const std::string where = "state '" + from + "', action '" + label + "'";
    const std::size_t s = resolve(from, where);
    Action a;
    a.label = label;
    if (!jt.contains("to") || !jt.at("to").is_array())
      throw ValidationError(where + ": missing \"to\" array");
    for (const json& jd : jt.at("to")) {
      const std::size_t target = resolve(field_string(jd, "target", where), where);
      const Rational p = field_rational(jd, "prob", where);
      if (p.sign() < 0) throw ValidationError(where + ": negative probability " + p.str());
      if (p.is_zero()) continue;
      a.distribution.push_back({target, p});
    }
    states[s].actions.push_back(std::move(a));
  }

  if (!raw.contains("initial")) throw ValidationError("missing \"initial\"");
  const std::size_t initial = resolve(raw.at("initial").get<std::string>(), "initial");

  RiskParams rp;
  if (raw.contains("params")) {
    const json& jp = raw.at("params");
    if (jp.contains("b")) rp.base = field_rational(jp, "b", "params");
    if (jp.contains("gamma")) rp.gamma = field_rational(jp, "gamma", "params");
    if (jp.contains("threshold") && !jp.at("threshold").is_null())
      rp.threshold = field_rational(jp, "threshold", "params");
    if (jp.contains("epsilon") && !jp.at("epsilon").is_null())
      rp.epsilon = field_rational(jp, "epsilon", "params");
  }
  rp.reward_scale = scale;
  rp.validate();

  return {Game(std::move(states), initial), rp};
}

ParsedInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  json raw;
  try {
    in >> raw;
  } catch (const json::parse_error& e) {
    throw ValidationError(path + ": " + e.what());
  }
  return validate_game(raw);
}

json to_json(const Game& g, const RiskParams& rp) {
  json out;
  out["states"] = json::array();
  out["transitions"] = json::array();
  for (const State& st : g.states()) {
    out["states"].push_back(
        {{"id", st.id}, {"owner", to_string(st.owner)}, {"reward", std::to_string(st.reward)}});
    for (const Action& a : st.actions) {
      json to = json::array();
      for (const Transition& t : a.distribution)
        to.push_back({{"target", g.state(t.target).id}, {"prob", t.probability.str()}});
      out["transitions"].push_back({{"from", st.id}, {"action", a.label}, {"to", to}});
    }
  }
  out["initial"] = g.state(g.initial()).id;
  json params = {{"b", rp.base.str()}, {"gamma", rp.effective_gamma().str()}};
  if (rp.effective_threshold()) params["threshold"] = rp.effective_threshold()->str();
  if (rp.effective_epsilon()) params["epsilon"] = rp.effective_epsilon()->str();
  out["params"] = params;
  return out;
}

json strategy_to_json(const Game& g, const Strategy& max, const Strategy& min) {
  json out = json::object();
  const auto choice = combine(g, max, min);
  for (std::size_t s = 0; s < g.size(); ++s)
    out[g.state(s).id] = g.action(s, choice[s]).label;
  return out;
}

void strategy_from_json(const Game& g, const json& j, Strategy& max, Strategy& min) {
  if (!j.is_object()) throw ValidationError("strategy must be a JSON object");
  max = Strategy{Player::kMax, std::vector<std::size_t>(g.size(), 0)};
  min = Strategy{Player::kMin, std::vector<std::size_t>(g.size(), 0)};
  for (auto it = j.begin(); it != j.end(); ++it) {
    const auto s = g.find(it.key());
    if (!s) throw ValidationError("strategy: unknown state '" + it.key() + "'");
    const std::string label = it.value().get<std::string>();
    std::optional<std::size_t> a;
    for (std::size_t i = 0; i < g.action_count(*s); ++i)
      if (g.action(*s, i).label == label) a = i;
    if (!a) throw ValidationError("strategy: state '" + it.key() + "' has no action '" + label + "'");
    (g.owner(*s) == Player::kMax ? max : min).choice[*s] = *a;
  }
}

}  // namespace erisk
