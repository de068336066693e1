#include "dualmap/json_io.hpp"

#include <fstream>
#include <sstream>

namespace dualmap {

Json parse_json_text(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(what + ": not valid JSON (" + e.what() + ")");
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str(), path);
}

Eigen::VectorXd vector_from_json(const Json& j, const std::string& field) {
  if (!j.is_array()) throw InputError(field + ": expected an array of numbers");
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw InputError(field + "[" + std::to_string(i) + "]: not a number");
    v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  }
  return v;
}

Json to_json(const Eigen::VectorXd& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

l1::SubsetMask mask_from_json(const Json& j, Eigen::Index n, const std::string& field) {
  if (!j.is_array()) throw InputError(field + ": expected a list of point indices");
  std::vector<Eigen::Index> idx;
  for (const auto& e : j) {
    if (!e.is_number_integer()) throw InputError(field + ": indices must be integers");
    idx.push_back(e.get<Eigen::Index>());
  }
  try {
    return l1::mask_from_indices(n, idx);
  } catch (const DomainError& e) {
    throw InputError(field + ": " + e.what());
  }
}

Json mask_to_json(const l1::SubsetMask& m) {
  Json out = Json::array();
  for (auto i : l1::mask_indices(m)) out.push_back(i);
  return out;
}

c01::PwlFunction pwl_from_json(const Json& j, const std::string& field) {
  if (j.is_number()) return c01::PwlFunction::constant(j.get<double>());
  if (j.is_string()) {
    const auto name = j.get<std::string>();
    if (name == "tent") return c01::PwlFunction::tent();
    if (name == "one") return c01::PwlFunction::constant(1.0);
    if (name == "zero") return c01::PwlFunction::constant(0.0);
    if (name == "ramp") return c01::PwlFunction(Eigen::Vector2d(0, 1), Eigen::Vector2d(0, 1));
    throw InputError(field + ": unknown preset '" + name + "' (tent, one, ramp, zero)");
  }
  if (!j.is_object() || !j.contains("breakpoints") || !j.contains("values"))
    throw InputError(field + ": expected {\"breakpoints\": [...], \"values\": [...]} or a preset");
  try {
    return c01::PwlFunction(vector_from_json(j["breakpoints"], field + ".breakpoints"),
                            vector_from_json(j["values"], field + ".values"));
  } catch (const DomainError& e) {
    throw InputError(field + ": " + e.what());
  }
}

Json to_json(const c01::PwlFunction& f) {
  return Json{{"breakpoints", to_json(f.breakpoints())}, {"values", to_json(f.values())}};
}

c01::RcaMeasure measure_from_json(const Json& j, const std::string& field) {
  if (!j.is_object()) throw InputError(field + ": expected {\"atoms\": ..., \"density\": ...}");
  for (const auto& [key, _] : j.items())
    if (key != "atoms" && key != "density") throw InputError(field + ": unknown key '" + key + "'");
  std::vector<c01::Atom> atoms;
  if (j.contains("atoms")) {
    const auto& a = j["atoms"];
    if (!a.is_array()) throw InputError(field + ".atoms: expected [[location, weight], ...]");
    for (const auto& pair : a) {
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number())
        throw InputError(field + ".atoms: each atom is [location, weight]");
      atoms.push_back({pair[0].get<double>(), pair[1].get<double>()});
    }
  }
  try {
    c01::PiecewiseConstant density;
    if (j.contains("density")) {
      const auto& d = j["density"];
      if (!d.is_object() || !d.contains("breakpoints") || !d.contains("values"))
        throw InputError(field + ".density: expected {\"breakpoints\": [...], \"values\": [...]}");
      density = c01::PiecewiseConstant(vector_from_json(d["breakpoints"], field + ".density.breakpoints"),
                                       vector_from_json(d["values"], field + ".density.values"));
    }
    return c01::RcaMeasure(std::move(atoms), std::move(density));
  } catch (const DomainError& e) {
    throw InputError(field + ": " + e.what());
  }
}

Json to_json(const c01::RcaMeasure& mu) {
  Json atoms = Json::array();
  for (const auto& a : mu.atoms()) atoms.push_back(Json::array({a.location, a.weight}));
  Json out{{"atoms", atoms}};
  if (!mu.density().empty())
    out["density"] = Json{{"breakpoints", to_json(mu.density().breakpoints())},
                          {"values", to_json(mu.density().values())}};
  return out;
}

SpaceDescriptor descriptor_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("space") || !j["space"].is_string())
    throw InputError("space descriptor: expected {\"space\": \"lp\" | \"l1\" | \"c01\", ...}");
  SpaceDescriptor d;
  d.kind = j["space"].get<std::string>();
  if (d.kind == "lp") {
    if (!j.contains("p") || !j["p"].is_number()) throw InputError("space descriptor: lp needs a numeric p");
    d.p = j["p"].get<double>();
    if (!(d.p > 1.0) || !std::isfinite(d.p)) throw InputError("space descriptor: p must satisfy 1 < p < inf");
  } else if (d.kind == "l1") {
    if (!j.contains("weights")) throw InputError("space descriptor: l1 needs weights");
    d.weights = vector_from_json(j["weights"], "weights");
    if (d.weights.size() < 1 || !(d.weights.array() > 0).all() || !d.weights.allFinite())
      throw InputError("space descriptor: weights must be positive and finite");
  } else if (d.kind != "c01") {
    throw InputError("space descriptor: unknown space '" + d.kind + "'");
  }
  return d;
}

Json to_json(const SpaceDescriptor& d) {
  Json out{{"space", d.kind}};
  if (d.kind == "lp") out["p"] = d.p;
  if (d.kind == "l1") out["weights"] = to_json(d.weights);
  return out;
}

Json to_json(const SuiteReport& r) {
  Json props = Json::array();
  for (const auto& p : r.properties) {
    Json rec{{"id", p.id},         {"description", p.description},
             {"samples", p.samples}, {"max_violation", p.max_violation},
             {"tolerance", p.tolerance}, {"applicable", p.applicable},
             {"pass", p.pass}};
    props.push_back(std::move(rec));
  }
  return Json{{"seed", r.seed}, {"space", r.space}, {"pass", r.all_pass()}, {"properties", props}};
}

}  // namespace dualmap
