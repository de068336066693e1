#ifndef DUALMAP_JSON_IO_HPP
#define DUALMAP_JSON_IO_HPP

// JSON encodings of elements, descriptors and reports.
//
//   vectors, L1 functions, selections   [v0, v1, ...]
//   subsets                             [i, j, ...]  (0-based point indices)
//   PwlFunction                         {"breakpoints": [...], "values": [...]}
//                                       or "tent" | "one" | "ramp" | "zero" | <number>
//   RcaMeasure                          {"atoms": [[loc, w], ...],
//                                        "density": {"breakpoints": [...], "values": [...]}}
//   space                               {"space": "lp", "p": 2} | {"space": "l1", "weights": [...]}
//                                       | {"space": "c01"}

#include <stdexcept>
#include <string>

#include <Eigen/Core>

#include "json.hpp"

#include "dualmap/c01_space.hpp"
#include "dualmap/l1_space.hpp"
#include "dualmap/property_suite.hpp"

namespace dualmap {

using Json = nlohmann::ordered_json;

// Malformed or mistyped input. The message names the offending field.
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

Json parse_json_text(const std::string& text, const std::string& what);
Json read_json_file(const std::string& path);

Eigen::VectorXd vector_from_json(const Json& j, const std::string& field);
Json to_json(const Eigen::VectorXd& v);

l1::SubsetMask mask_from_json(const Json& j, Eigen::Index n, const std::string& field);
Json mask_to_json(const l1::SubsetMask& m);

c01::PwlFunction pwl_from_json(const Json& j, const std::string& field);
Json to_json(const c01::PwlFunction& f);

c01::RcaMeasure measure_from_json(const Json& j, const std::string& field);
Json to_json(const c01::RcaMeasure& mu);

template <typename Tag>
Json to_json(const l1::Element<Tag>& e) {
  return to_json(e.values);
}

SpaceDescriptor descriptor_from_json(const Json& j);
Json to_json(const SpaceDescriptor& d);

Json to_json(const SuiteReport& r);

}  // namespace dualmap

#endif  // DUALMAP_JSON_IO_HPP
