#include "dualmap/scenario.hpp"

#include <future>

namespace dualmap {

namespace {

const Json& require(const Json& params, const std::string& key) {
  if (!params.contains(key)) throw InputError("params." + key + " is required");
  return params[key];
}

double number(const Json& params, const std::string& key) {
  const auto& v = require(params, key);
  if (!v.is_number()) throw InputError("params." + key + ": expected a number");
  return v.get<double>();
}

std::optional<double> opt_number(const Json& params, const std::string& key) {
  if (!params.contains(key) || params[key].is_null()) return std::nullopt;
  return number(params, key);
}

Eigen::VectorXd vec(const Json& params, const std::string& key) {
  return vector_from_json(require(params, key), "params." + key);
}

std::optional<l1::SubsetMask> opt_mask(const Json& params, const std::string& key, Eigen::Index n) {
  if (!params.contains(key) || params[key].is_null()) return std::nullopt;
  return mask_from_json(params[key], n, "params." + key);
}

c01::PwlFunction pwl(const Json& params, const std::string& key) {
  return pwl_from_json(require(params, key), "params." + key);
}

std::optional<c01::RcaMeasure> opt_measure(const Json& params, const std::string& key) {
  if (!params.contains(key) || params[key].is_null()) return std::nullopt;
  return measure_from_json(params[key], "params." + key);
}

Json resolve_space(const std::string& theorem, const Json& space, const Json& params) {
  Json d;
  if (space.is_null()) {
    d = default_space(theorem);
  } else if (space.is_string()) {
    d = Json{{"space", space}};
    for (const char* key : {"p", "weights"})
      if (params.contains(key)) d[key] = params[key];
    const Json def = default_space(theorem);
    for (const auto& [key, value] : def.items())
      if (!d.contains(key)) d[key] = value;
  } else if (space.is_object()) {
    d = space;
  } else {
    throw InputError("space: expected a descriptor object or a space name");
  }
  const auto desc = descriptor_from_json(d);
  const auto expected = theorem_space(theorem);
  if (desc.kind != expected)
    throw InputError(theorem + " lives in space '" + expected + "', not '" + desc.kind + "'");
  return to_json(desc);
}

// An omitted or empty params block takes the catalog defaults as a whole;
// otherwise the builder's own defaults fill the optional fields.
Json merged_params(const std::string& theorem, const Json& params) {
  if (!params.is_null() && !params.is_object()) throw InputError("params: expected an object");
  if (params.is_object())
    for (const auto& [key, _] : params.items())
      if (key != "p" && key != "weights") return params;
  return default_params(theorem);
}

AnyWitness build_resolved(const std::string& theorem, const Json& space, const Json& p) {
  const auto desc = descriptor_from_json(space);
  if (desc.kind == "lp") {
    const LpSpace sp(desc.p);
    if (theorem == "thm31") {
      std::optional<Eigen::Index> m;
      if (p.contains("m") && !p["m"].is_null()) {
        if (!p["m"].is_number_integer()) throw InputError("params.m: expected an integer index");
        m = p["m"].get<Eigen::Index>();
      }
      return witness_thm31(sp, vec(p, "x"), vec(p, "w"), m);
    }
    if (theorem == "thm32") return witness_thm32(sp, vec(p, "x"), vec(p, "y"));
    return witness_thm33(sp, vec(p, "x"), number(p, "a"));
  }
  if (desc.kind == "l1") {
    const L1Space sp(l1::make_space(desc.weights));
    const auto n = desc.weights.size();
    if (theorem == "thm45_case1")
      return witness_thm45_case1(sp, sp.primal(vec(p, "f")), sp.dual(vec(p, "k")));
    if (theorem == "thm45_case2")
      return witness_thm45_case2(sp, sp.primal(vec(p, "f")), sp.dual(vec(p, "k")),
                                 opt_mask(p, "D", n), opt_number(p, "a"));
    if (theorem == "thm46") return witness_thm46(sp, sp.dual(vec(p, "k")), opt_mask(p, "D", n));
    if (theorem == "thm47")
      return witness_thm47(sp, sp.primal(vec(p, "f")), opt_mask(p, "D", n), opt_number(p, "a"));
    return witness_cor48(sp, sp.primal(vec(p, "f")), sp.dual(vec(p, "u")), opt_mask(p, "E", n));
  }
  if (theorem == "thm53") return witness_thm53(pwl(p, "f"), opt_measure(p, "mu"));
  if (theorem == "thm54")
    return witness_thm54(pwl(p, "f"), measure_from_json(require(p, "lambda"), "params.lambda"),
                         opt_measure(p, "mu"));
  if (theorem == "thm55")
    return witness_thm55(pwl(p, "f"), measure_from_json(require(p, "lambda"), "params.lambda"));
  if (theorem == "thm56") {
    std::optional<std::vector<double>> points;
    if (p.contains("points") && !p["points"].is_null()) {
      const auto v = vec(p, "points");
      points.emplace(v.data(), v.data() + v.size());
    }
    return witness_thm56(pwl(p, "f"), pwl(p, "u"), points);
  }
  if (theorem == "cor57") return witness_cor57(pwl(p, "f"), pwl(p, "u"));
  return witness_thm58(pwl(p, "f"), number(p, "c"), opt_measure(p, "mu"));
}

Schedule resolve_schedule(const Json& j, double t_max) {
  Schedule s = default_schedule(t_max);
  if (j.is_null()) return s;
  if (!j.is_object()) throw InputError("schedule: expected {\"t0\", \"ratio\", \"steps\"}");
  for (const auto& [key, value] : j.items()) {
    if (key == "t0" && value.is_number()) s.t0 = value.get<double>();
    else if (key == "ratio" && value.is_number()) s.ratio = value.get<double>();
    else if (key == "steps" && value.is_number_integer()) s.steps = value.get<int>();
    else throw InputError("schedule." + key + ": unknown key or wrong type");
  }
  if (!(s.ratio > 0 && s.ratio < 1)) throw InputError("schedule.ratio must lie in (0,1)");
  if (s.steps < 8) throw InputError("schedule.steps must be at least 8");
  if (!(s.t0 > 0)) throw InputError("schedule.t0 must be positive");
  return s;
}

template <class Space>
Json query_to_json(const CoderivativeQuery<Space>& q) {
  return Json{{"base_point", to_json(q.base.point)},
              {"base_dual", to_json(q.base.dual)},
              {"second_dual", q.second_dual ? to_json(*q.second_dual) : Json(nullptr)},
              {"candidate", to_json(q.candidate)}};
}

Json vector_json(const std::vector<double>& v) {
  Json out = Json::array();
  for (double x : v) out.push_back(x);
  return out;
}

struct Prepared {
  std::string theorem;
  Json space;
  Json params;
  AnyWitness witness;
  Schedule schedule;
  EngineTolerances tolerances;
};

}  // namespace

Json default_space(const std::string& theorem) {
  const auto kind = theorem_space(theorem);
  if (kind == "lp") return Json{{"space", "lp"}, {"p", 2.0}};
  if (kind == "l1") {
    const bool three = theorem == "thm45_case2";
    return Json{{"space", "l1"}, {"weights", three ? Json{1.0, 1.0, 1.0} : Json{1.0, 1.0}}};
  }
  return Json{{"space", "c01"}};
}

Json default_params(const std::string& theorem) {
  theorem_space(theorem);  // rejects unknown ids
  const Json tent_atom = Json{{"atoms", Json::array({Json::array({0.5, 1.0})})}};
  if (theorem == "thm31") return Json{{"x", {1.0, 0.0}}, {"w", {1.0, 0.5}}};
  if (theorem == "thm32") return Json{{"x", {1.0, 0.0}}, {"y", {1.0, 0.0}}};
  if (theorem == "thm33") return Json{{"x", {1.0, 0.0}}, {"a", 3.0}};
  if (theorem == "thm45_case1") return Json{{"f", {2.0, 1.0}}, {"k", {1.0, 0.0}}};
  if (theorem == "thm45_case2") return Json{{"f", {2.0, 1.0, 1.0}}, {"k", {1.0, -2.0, 0.0}}};
  if (theorem == "thm46") return Json{{"k", {1.0, 0.0}}, {"D", Json::array({0})}};
  if (theorem == "thm47") return Json{{"f", {2.0, 1.0}}, {"D", Json::array({0})}, {"a", 1.5}};
  if (theorem == "cor48") return Json{{"f", {2.0, 1.0}}, {"u", {4.0, 5.0}}};
  if (theorem == "thm53") return Json{{"f", "one"}};
  if (theorem == "thm54") return Json{{"f", "tent"}, {"lambda", tent_atom}};
  if (theorem == "thm55")
    return Json{{"f", "tent"}, {"lambda", Json{{"atoms", Json::array({Json::array({0.25, 1.0})})}}}};
  if (theorem == "thm56")
    return Json{{"f", "tent"},
                {"u", Json{{"breakpoints", {0.0, 0.5, 1.0}}, {"values", {0.0, 2.0, 0.0}}}}};
  if (theorem == "cor57")
    return Json{{"f", "ramp"}, {"u", Json{{"breakpoints", {0.0, 1.0}}, {"values", {0.0, 2.0}}}}};
  return Json{{"f", "one"}, {"c", 2.0}};
}

AnyWitness build_witness(const std::string& theorem, const Json& space, const Json& params) {
  const Json sp = resolve_space(theorem, space, params.is_null() ? Json::object() : params);
  return build_resolved(theorem, sp, merged_params(theorem, params));
}

Json tolerances_to_json(const EngineTolerances& t) {
  return Json{{"settle", t.settle}, {"membership", t.membership}, {"cert", t.cert},
              {"closed_form", t.closed_form}};
}

EngineTolerances tolerances_from_json(const Json& j, EngineTolerances base) {
  if (j.is_null()) return base;
  if (!j.is_object()) throw InputError("tolerances: expected an object");
  for (const auto& [key, value] : j.items()) {
    if (!value.is_number() || !(value.get<double>() >= 0))
      throw InputError("tolerances." + key + ": expected a nonnegative number");
    const double v = value.get<double>();
    if (key == "settle") base.settle = v;
    else if (key == "membership") base.membership = v;
    else if (key == "cert") base.cert = v;
    else if (key == "closed_form") base.closed_form = v;
    else throw InputError("tolerances." + key + ": unknown tolerance");
  }
  return base;
}

ScenarioFile parse_scenario_file(const Json& j) {
  ScenarioFile out;
  const Json* list = &j;
  if (j.is_object()) {
    for (const auto& [key, _] : j.items())
      if (key != "scenarios" && key != "tolerances" && key != "output")
        throw InputError("scenario file: unknown key '" + key + "'");
    if (!j.contains("scenarios")) throw InputError("scenario file: missing \"scenarios\"");
    list = &j["scenarios"];
    out.tolerances = tolerances_from_json(j.value("tolerances", Json()));
    if (j.contains("output")) {
      if (!j["output"].is_string()) throw InputError("scenario file: output must be a path");
      out.output = j["output"].get<std::string>();
    }
  }
  if (!list->is_array()) throw InputError("scenario file: scenarios must be an array");
  for (std::size_t i = 0; i < list->size(); ++i) {
    const auto& s = (*list)[i];
    const std::string where = "scenario " + std::to_string(i);
    if (!s.is_object() || !s.contains("theorem") || !s["theorem"].is_string())
      throw InputError(where + ": needs a \"theorem\" id");
    Scenario sc;
    sc.theorem = s["theorem"].get<std::string>();
    try {
      theorem_space(sc.theorem);
    } catch (const DomainError& e) {
      throw InputError(where + ": " + e.what());
    }
    for (const auto& [key, _] : s.items())
      if (key != "theorem" && key != "space" && key != "params" && key != "schedule" &&
          key != "tolerances")
        throw InputError(where + ": unknown key '" + key + "'");
    sc.space = s.value("space", Json());
    sc.params = s.value("params", Json());
    sc.schedule = s.value("schedule", Json());
    sc.tolerances = tolerances_from_json(s.value("tolerances", Json()), out.tolerances);
    out.scenarios.push_back(std::move(sc));
  }
  return out;
}

std::vector<ScenarioResult> run_scenarios(const ScenarioFile& file) {
  std::vector<Prepared> prepared;
  for (std::size_t i = 0; i < file.scenarios.size(); ++i) {
    const auto& s = file.scenarios[i];
    const Json params = s.params.is_null() ? Json::object() : s.params;
    Json space = resolve_space(s.theorem, s.space, params);
    Json merged = merged_params(s.theorem, s.params);
    AnyWitness w = build_resolved(s.theorem, space, merged);
    const double t_max = std::visit([](const auto& v) { return v.curve.t_max; }, w);
    const Schedule schedule = resolve_schedule(s.schedule, t_max);
    prepared.push_back(Prepared{s.theorem, std::move(space), std::move(merged), std::move(w),
                                schedule, s.tolerances});
  }

  std::vector<std::future<ScenarioResult>> jobs;
  for (const auto& pr : prepared) {
    jobs.push_back(std::async(std::launch::async, [&pr] {
      ScenarioResult r;
      r.theorem = pr.theorem;
      r.certificate = certify(pr.witness, pr.schedule, pr.tolerances);
      const auto& c = r.certificate;
      const auto& e = c.estimate;
      std::visit(
          [&](const auto& w) {
            r.bound = w.bound;
            r.record = Json{{"theorem", pr.theorem},
                            {"space", pr.space},
                            {"params", pr.params},
                            {"query", query_to_json(w.query)},
                            {"curve_id", c.curve_id},
                            {"schedule", Json{{"t0", e.t0_used},
                                              {"ratio", pr.schedule.ratio},
                                              {"steps", pr.schedule.steps}}},
                            {"t", vector_json(e.t)},
                            {"quotients", vector_json(e.quotients)},
                            {"estimated_limit", e.limit},
                            {"spread", e.spread},
                            {"settled", e.settled},
                            {"membership_ok", e.membership_ok},
                            {"converging", e.converging},
                            {"t0_shrunk", e.t0_shrunk},
                            {"max_dual_slope", e.max_dual_slope},
                            {"claimed_bound", c.claimed_bound},
                            {"bound_kind", to_string(c.kind)},
                            {"verdict", to_string(c.verdict)},
                            {"reason", c.reason},
                            {"tolerances", tolerances_to_json(c.tolerances)},
                            {"note", w.note.empty() ? e.note : w.note}};
          },
          pr.witness);
      return r;
    }));
  }
  std::vector<ScenarioResult> out;
  out.reserve(jobs.size());
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

RecheckResult recheck_certificate_record(const Json& record) {
  try {
    const auto q = vector_from_json(record.at("quotients"), "quotients");
    const std::vector<double> qs(q.data(), q.data() + q.size());
    const auto kind_s = record.at("bound_kind").get<std::string>();
    const auto verdict_s = record.at("verdict").get<std::string>();
    BoundKind kind = kind_s == "exact" ? BoundKind::exact
                     : kind_s == "lower" ? BoundKind::lower
                                         : BoundKind::positive;
    if (kind_s != "exact" && kind_s != "lower" && kind_s != "positive")
      return {false, "unknown bound kind '" + kind_s + "'"};
    Verdict verdict = verdict_s == "certified" ? Verdict::certified
                      : verdict_s == "rejected" ? Verdict::rejected
                                                : Verdict::inconclusive;
    const auto tol = tolerances_from_json(record.at("tolerances"));
    return recheck_certificate(qs, record.at("estimated_limit").get<double>(),
                               record.at("claimed_bound").get<double>(), kind, verdict, tol);
  } catch (const Json::exception& e) {
    return {false, std::string("malformed certificate: ") + e.what()};
  } catch (const InputError& e) {
    return {false, std::string("malformed certificate: ") + e.what()};
  }
}

}  // namespace dualmap
