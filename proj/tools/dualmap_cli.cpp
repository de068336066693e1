// dualmap: evaluate duality maps, run witness scenario files, run the
// property battery.
//
//   dualmap eval  --space lp  --p 3 --vector "[1,1]"
//   dualmap eval  --space l1  --weights "[1,1,1]" --values "[2,0,-1]"
//   dualmap eval  --space c01 --f tent
//   dualmap run   fixtures/all.json [--out certificates.json]
//   dualmap suite --space c01 --samples 100 --seed 7 [--out report.json]
//
// Exit codes: 0 success; 1 a scenario was not certified or a property
// failed; 2 malformed input, unknown theorem id, or violated hypothesis.

#include <cstdio>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "dualmap/json_io.hpp"
#include "dualmap/lp_space.hpp"
#include "dualmap/property_suite.hpp"
#include "dualmap/scenario.hpp"

namespace {

using dualmap::InputError;
using dualmap::Json;

constexpr int kExitFailed = 1;
constexpr int kExitInput = 2;

struct Options {
  std::string space;
  double p = 2.0;
  std::string weights;
  std::string vector;
  std::string values;
  std::string f;
  std::string out;
  std::string scenario_file;
  std::uint64_t seed = 7;
  int samples = 100;
};

Json parse_arg(const std::string& text, const std::string& flag) {
  if (text.empty()) throw InputError(flag + " is required for this space");
  return dualmap::parse_json_text(text, flag);
}

dualmap::SpaceDescriptor descriptor(const Options& o, Eigen::Index default_points) {
  Json d{{"space", o.space}};
  if (o.space == "lp") d["p"] = o.p;
  if (o.space == "l1")
    d["weights"] = o.weights.empty() ? dualmap::to_json(Eigen::VectorXd::Ones(default_points))
                                     : parse_arg(o.weights, "--weights");
  return dualmap::descriptor_from_json(d);
}

void write_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

int cmd_eval(const Options& o) {
  if (o.space == "lp") {
    const auto d = descriptor(o, 0);
    const auto x = dualmap::vector_from_json(parse_arg(o.vector, "--vector"), "--vector");
    std::cout << dualmap::to_json(dualmap::lp::duality_map(x, d.p)).dump() << "\n";
    return 0;
  }
  if (o.space == "l1") {
    const auto values = dualmap::vector_from_json(parse_arg(o.values, "--values"), "--values");
    const auto d = descriptor(o, values.size());
    const auto space = dualmap::l1::make_space(d.weights);
    if (values.size() != space->size())
      throw InputError("--values has " + std::to_string(values.size()) + " entries for " +
                       std::to_string(space->size()) + " weights");
    const dualmap::l1::L1Function f(space, values);
    const auto cls = dualmap::l1::duality_set_classify(f);
    Json out{{"norm", dualmap::l1::l1_norm(f)},
             {"singleton", cls.singleton},
             {"free_points", dualmap::mask_to_json(cls.free_points)},
             {"canonical", dualmap::to_json(dualmap::l1::canonical_selection(f))}};
    std::cout << out.dump() << "\n";
    return 0;
  }
  if (o.space == "c01") {
    if (o.f.empty()) throw InputError("--f is required for this space");
    // Presets may be given bare (--f tent) or as JSON.
    Json fj;
    try {
      fj = Json::parse(o.f);
    } catch (const Json::parse_error&) {
      fj = o.f;
    }
    const auto f = dualmap::pwl_from_json(fj, "--f");
    Json out{{"norm", dualmap::c01::sup_norm(f)}};
    if (dualmap::c01::sup_norm(f) > 0) {
      const auto m = dualmap::c01::maximizing_set(f);
      Json intervals = Json::array();
      for (const auto& iv : m.intervals) intervals.push_back(Json::array({iv.lo, iv.hi}));
      Json atoms = Json::array();
      for (double a : m.atoms) atoms.push_back(a);
      out["maximizing_set"] = Json{{"atoms", atoms}, {"intervals", intervals}};
    } else {
      out["maximizing_set"] = nullptr;
    }
    out["canonical"] = dualmap::to_json(dualmap::c01::canonical_duality_measure(f));
    std::cout << out.dump() << "\n";
    return 0;
  }
  throw InputError("--space must be lp, l1 or c01");
}

int cmd_run(const Options& o) {
  const auto file = dualmap::parse_scenario_file(dualmap::read_json_file(o.scenario_file));
  const auto results = dualmap::run_scenarios(file);

  Json certs = Json::array();
  bool all = true;
  std::printf("%-12s %-28s %14s %14s  %s\n", "theorem", "curve", "bound", "limit", "verdict");
  for (const auto& r : results) {
    const auto& c = r.certificate;
    all = all && c.verdict == dualmap::Verdict::certified;
    std::printf("%-12s %-28s %14.9f %14.9f  %s\n", r.theorem.c_str(), c.curve_id.c_str(),
                c.claimed_bound, c.estimate.limit, dualmap::to_string(c.verdict));
    certs.push_back(r.record);
  }
  const std::string path =
      !o.out.empty() ? o.out : !file.output.empty() ? file.output : "certificates.json";
  write_file(path, Json{{"all_certified", all}, {"certificates", certs}});
  std::printf("%zu scenario(s), %s; certificates written to %s\n", results.size(),
              all ? "all certified" : "NOT all certified", path.c_str());
  return all ? 0 : kExitFailed;
}

int cmd_suite(const Options& o) {
  if (o.space.empty()) throw InputError("--space is required");
  if (o.samples < 1) throw InputError("--samples must be at least 1");
  const auto report = dualmap::run_appendix_battery(descriptor(o, 3), o.samples, o.seed);
  const Json j = dualmap::to_json(report);
  if (!o.out.empty()) write_file(o.out, j);
  std::cout << j.dump(2) << "\n";
  return report.all_pass() ? 0 : kExitFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Duality mapping evaluation and coderivative non-membership certificates"};
  app.require_subcommand(1);
  Options o;

  auto* eval = app.add_subcommand("eval", "print J(x), or its classification and a canonical element");
  eval->add_option("--space", o.space, "lp, l1 or c01")->required();
  eval->add_option("--p", o.p, "exponent for lp");
  eval->add_option("--weights", o.weights, "JSON array of point weights for l1");
  eval->add_option("--vector", o.vector, "JSON array for lp");
  eval->add_option("--values", o.values, "JSON array of function values for l1");
  eval->add_option("--f", o.f, "piecewise-linear function: JSON object or preset name");

  auto* run = app.add_subcommand("run", "run a scenario file and write certificates");
  run->add_option("scenario_file", o.scenario_file, "scenario JSON file")->required();
  run->add_option("--out", o.out, "certificate output path");

  auto* suite = app.add_subcommand("suite", "run the property battery on one space");
  suite->add_option("--space", o.space, "lp, l1 or c01")->required();
  suite->add_option("--p", o.p, "exponent for lp");
  suite->add_option("--weights", o.weights, "JSON array of point weights for l1 (default [1,1,1])");
  suite->add_option("--samples", o.samples, "samples per property");
  suite->add_option("--seed", o.seed, "random seed");
  suite->add_option("--out", o.out, "report output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (eval->parsed()) return cmd_eval(o);
    if (run->parsed()) return cmd_run(o);
    return cmd_suite(o);
  } catch (const std::invalid_argument& e) {  // InputError, HypothesisError, DimensionMismatch
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
}
