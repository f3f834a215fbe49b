#pragma once

// JSON encodings of fans, structure groups, matrices and bundle data.
// Numbers are exact: matrix entries are "p/q" strings or integers.

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "toric/bundle.hpp"

namespace toric {

using Json = nlohmann::json;

inline constexpr const char* kSchema = "toric-ebundle/1";

/// Malformed input; the message starts with the JSON path of the offending
/// value, e.g. "$.rays[2]: ...".
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& path, const std::string& what)
      : std::runtime_error(path + ": " + what), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

/// File cannot be opened or is not JSON.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json read_json_file(const std::string& path);

/// {"dim", "rays", "max_cones", "asserted_complete"}; rejects zero,
/// non-primitive and duplicate rays.
Fan parse_fan(const Json& j);
Json fan_to_json(const Fan& fan);

/// {"type": "GL"|"torus"|"block_nilpotent", "r": ..., "partition": [...]}.
GroupDescriptor parse_group(const Json& j, const std::string& path = "$");
Json group_to_json(const GroupDescriptor& g);
/// Short form used on the command line: "GL:2", "torus:1", "block_nilpotent:2,1".
GroupDescriptor parse_group_spec(const std::string& text);

RatMatrix parse_matrix(const Json& j, const std::string& path, std::size_t size);
Json matrix_to_json(const RatMatrix& m);
Character parse_character(const Json& j, const std::string& path, std::size_t dim);
Json character_to_json(const Character& c);
Json integer_to_json(const Integer& v);
Json laurent_matrix_to_json(const LaurentMatrix& m);

/// Bundle file: {"group", "xi", "conjugators"?, "P_base"? | "P_full"?}. Without
/// transition data P is identically 1. When both encodings are present they
/// must agree.
BundleData parse_bundle(const Json& j, const FanHandle& fan);
/// Emits "P_base" against the least maximal cone when it reproduces every
/// transition value, "P_full" otherwise.
Json bundle_to_json(const BundleData& d);
Json gauge_to_json(const Gauge& g);

}  // namespace toric
