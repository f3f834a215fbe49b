#include "toric/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>

namespace toric {

namespace {

std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }
std::string field(const std::string& path, const std::string& key) { return path + "." + key; }

const Json& require(const Json& j, const std::string& path, const std::string& key) {
  if (!j.is_object()) throw ParseError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(path, "missing field \"" + key + "\"");
  return *it;
}

const Json& require_array(const Json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError(path, "expected an array");
  return j;
}

Integer parse_json_integer(const Json& j, const std::string& path) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Integer(std::to_string(j.get<std::uint64_t>()));
    return Integer(std::to_string(j.get<std::int64_t>()));
  }
  if (j.is_string()) {
    try {
      return parse_integer(j.get<std::string>());
    } catch (const std::exception& e) {
      throw ParseError(path, e.what());
    }
  }
  throw ParseError(path, "expected an integer");
}

std::size_t parse_index(const Json& j, const std::string& path) {
  if (!j.is_number_integer() || (!j.is_number_unsigned() && j.get<std::int64_t>() < 0))
    throw ParseError(path, "expected a nonnegative integer");
  return j.get<std::size_t>();
}

std::size_t parse_key_index(const std::string& key, const std::string& path, std::size_t limit) {
  std::size_t v = 0;
  if (key.empty() || key.size() > 9 || key.find_first_not_of("0123456789") != std::string::npos ||
      (key.size() > 1 && key[0] == '0'))
    throw ParseError(path, "\"" + key + "\" is not a cone index");
  v = std::stoul(key);
  if (v >= limit) throw ParseError(path, "cone index " + key + " out of range (fan has " + std::to_string(limit) + " maximal cones)");
  return v;
}

Rational parse_entry(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(parse_json_integer(j, path));
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const std::exception& e) {
      throw ParseError(path, e.what());
    }
  }
  throw ParseError(path, "expected an exact number (integer or \"p/q\" string)");
}

}  // namespace

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open file");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError(path + ": byte " + std::to_string(e.byte) + ": malformed JSON");
  }
}

Json integer_to_json(const Integer& v) {
  if (v.fits_slong_p()) return v.get_si();
  return to_string(v);
}

Character parse_character(const Json& j, const std::string& path, std::size_t dim) {
  require_array(j, path);
  if (j.size() != dim)
    throw ParseError(path, "expected " + std::to_string(dim) + " coordinates, got " + std::to_string(j.size()));
  Character c(dim);
  for (std::size_t i = 0; i < dim; ++i) c[i] = parse_json_integer(j[i], at(path, i));
  return c;
}

Json character_to_json(const Character& c) {
  Json out = Json::array();
  for (std::size_t i = 0; i < c.dim(); ++i) out.push_back(integer_to_json(c[i]));
  return out;
}

Fan parse_fan(const Json& j) {
  const std::string root = "$";
  if (!j.is_object()) throw ParseError(root, "expected an object");
  const Json& jd = require(j, root, "dim");
  std::size_t dim = parse_index(jd, field(root, "dim"));
  if (dim == 0) throw ParseError(field(root, "dim"), "dimension must be positive");

  const std::string rays_path = field(root, "rays");
  const Json& jr = require_array(require(j, root, "rays"), rays_path);
  std::vector<LatticeVector> rays;
  std::map<LatticeVector, std::size_t> first_seen;
  for (std::size_t i = 0; i < jr.size(); ++i) {
    const std::string p = at(rays_path, i);
    require_array(jr[i], p);
    if (jr[i].size() != dim)
      throw ParseError(p, "expected " + std::to_string(dim) + " coordinates, got " + std::to_string(jr[i].size()));
    LatticeVector v(dim);
    for (std::size_t k = 0; k < dim; ++k) v[k] = parse_json_integer(jr[i][k], at(p, k));
    if (v.is_zero()) throw ParseError(p, "zero ray");
    if (!is_primitive(v)) throw ParseError(p, "ray " + v.str() + " is not primitive");
    auto [it, fresh] = first_seen.emplace(v, i);
    if (!fresh) throw ParseError(p, "ray " + v.str() + " duplicates rays[" + std::to_string(it->second) + "]");
    rays.push_back(std::move(v));
  }

  const std::string cones_path = field(root, "max_cones");
  const Json& jc = require_array(require(j, root, "max_cones"), cones_path);
  std::vector<Cone> cones;
  for (std::size_t c = 0; c < jc.size(); ++c) {
    const std::string p = at(cones_path, c);
    require_array(jc[c], p);
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k < jc[c].size(); ++k) {
      std::size_t r = parse_index(jc[c][k], at(p, k));
      if (r >= rays.size()) throw ParseError(at(p, k), "ray index " + std::to_string(r) + " out of range");
      if (std::find(idx.begin(), idx.end(), r) != idx.end())
        throw ParseError(at(p, k), "ray index " + std::to_string(r) + " repeated");
      idx.push_back(r);
    }
    cones.emplace_back(std::move(idx));
  }

  bool complete = false;
  if (auto it = j.find("asserted_complete"); it != j.end()) {
    if (!it->is_boolean()) throw ParseError(field(root, "asserted_complete"), "expected a boolean");
    complete = it->get<bool>();
  }
  try {
    return Fan(dim, std::move(rays), std::move(cones), complete);
  } catch (const std::exception& e) {
    throw ParseError(root, e.what());
  }
}

Json fan_to_json(const Fan& fan) {
  Json rays = Json::array();
  for (const auto& r : fan.rays()) {
    Json v = Json::array();
    for (std::size_t i = 0; i < r.dim(); ++i) v.push_back(integer_to_json(r[i]));
    rays.push_back(std::move(v));
  }
  Json cones = Json::array();
  for (const auto& c : fan.max_cones()) cones.push_back(c.rays());
  return {{"dim", fan.dim()}, {"rays", rays}, {"max_cones", cones}, {"asserted_complete", fan.asserted_complete()}};
}

GroupDescriptor parse_group(const Json& j, const std::string& path) {
  const Json& jt = require(j, path, "type");
  if (!jt.is_string()) throw ParseError(field(path, "type"), "expected a string");
  const std::string type = jt.get<std::string>();
  try {
    if (type == "block_nilpotent") {
      const std::string pp = field(path, "partition");
      const Json& jp = require_array(require(j, path, "partition"), pp);
      std::vector<std::size_t> partition;
      for (std::size_t i = 0; i < jp.size(); ++i) partition.push_back(parse_index(jp[i], at(pp, i)));
      GroupDescriptor g = GroupDescriptor::block_nilpotent(partition);
      if (auto it = j.find("r"); it != j.end() && parse_index(*it, field(path, "r")) != g.rank())
        throw ParseError(field(path, "r"), "rank does not match the partition");
      return g;
    }
    std::size_t r = parse_index(require(j, path, "r"), field(path, "r"));
    if (type == "GL") return GroupDescriptor::general_linear(r);
    if (type == "torus") return GroupDescriptor::diagonal_torus(r);
  } catch (const GroupError& e) {
    throw ParseError(path, e.what());
  }
  throw ParseError(field(path, "type"), "unknown group type \"" + type + "\" (expected GL, torus or block_nilpotent)");
}

Json group_to_json(const GroupDescriptor& g) {
  Json out = {{"type", g.kind()}, {"r", g.rank()}};
  if (g.kind() == "block_nilpotent") out["partition"] = g.partition();
  return out;
}

GroupDescriptor parse_group_spec(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) throw ParseError("--group", "expected TYPE:ARGS, e.g. GL:2 or block_nilpotent:2,1");
  std::string type = text.substr(0, colon);
  std::vector<std::size_t> nums;
  std::string rest = text.substr(colon + 1);
  std::size_t start = 0;
  while (start <= rest.size()) {
    auto comma = rest.find(',', start);
    std::string tok = rest.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (tok.empty() || tok.size() > 6 || tok.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError("--group", "\"" + tok + "\" is not a positive integer");
    nums.push_back(std::stoul(tok));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  Json j = {{"type", type}};
  if (type == "block_nilpotent") j["partition"] = nums;
  else if (nums.size() == 1) j["r"] = nums.front();
  else throw ParseError("--group", type + " takes a single rank");
  try {
    return parse_group(j, "--group");
  } catch (const ParseError& e) {
    throw ParseError("--group", e.what());
  }
}

RatMatrix parse_matrix(const Json& j, const std::string& path, std::size_t size) {
  require_array(j, path);
  if (j.size() != size) throw ParseError(path, "expected " + std::to_string(size) + " rows, got " + std::to_string(j.size()));
  RatMatrix m(size, size);
  for (std::size_t i = 0; i < size; ++i) {
    const std::string p = at(path, i);
    require_array(j[i], p);
    if (j[i].size() != size)
      throw ParseError(p, "expected " + std::to_string(size) + " entries, got " + std::to_string(j[i].size()));
    for (std::size_t k = 0; k < size; ++k) m(i, k) = parse_entry(j[i][k], at(p, k));
  }
  return m;
}

Json matrix_to_json(const RatMatrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(to_string(m(i, k)));
    out.push_back(std::move(row));
  }
  return out;
}

Json laurent_matrix_to_json(const LaurentMatrix& m) {
  // each entry is a list of [exponent, coefficient] terms
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) {
      Json terms = Json::array();
      for (const auto& [e, c] : m(i, k).terms()) terms.push_back(Json::array({character_to_json(e), to_string(c)}));
      row.push_back(std::move(terms));
    }
    out.push_back(std::move(row));
  }
  return out;
}

Json gauge_to_json(const Gauge& g) {
  Json out = Json::object();
  for (std::size_t s = 0; s < g.size(); ++s) out[std::to_string(s)] = matrix_to_json(g[s]);
  return out;
}

BundleData parse_bundle(const Json& j, const FanHandle& fan) {
  const std::string root = "$";
  if (!j.is_object()) throw ParseError(root, "expected an object");
  if (auto it = j.find("schema"); it != j.end() && (!it->is_string() || it->get<std::string>() != kSchema))
    throw ParseError(field(root, "schema"), std::string("expected \"") + kSchema + "\"");
  const std::size_t m = fan->num_cones();
  const std::size_t n = fan->fan().dim();
  GroupDescriptor group = parse_group(require(j, root, "group"), field(root, "group"));
  const std::size_t r = group.rank();

  const std::string xi_path = field(root, "xi");
  const Json& jx = require(j, root, "xi");
  if (!jx.is_object()) throw ParseError(xi_path, "expected an object keyed by cone index");
  std::vector<std::optional<std::vector<Character>>> xi(m);
  for (const auto& [key, value] : jx.items()) {
    const std::string p = field(xi_path, key);
    std::size_t s = parse_key_index(key, p, m);
    require_array(value, p);
    if (value.size() != r)
      throw ParseError(p, "expected " + std::to_string(r) + " characters, got " + std::to_string(value.size()));
    std::vector<Character> w;
    for (std::size_t i = 0; i < r; ++i) w.push_back(parse_character(value[i], at(p, i), n));
    xi[s] = std::move(w);
  }
  for (std::size_t s = 0; s < m; ++s)
    if (!xi[s]) throw ParseError(xi_path, "missing weights for cone " + std::to_string(s));

  std::vector<RatMatrix> conj(m, RatMatrix::identity(r));
  if (auto it = j.find("conjugators"); it != j.end()) {
    const std::string cp = field(root, "conjugators");
    if (!it->is_object()) throw ParseError(cp, "expected an object keyed by cone index");
    for (const auto& [key, value] : it->items()) {
      const std::string p = field(cp, key);
      conj[parse_key_index(key, p, m)] = parse_matrix(value, p, r);
    }
  }
  std::vector<TorusHomomorphism> rho;
  for (std::size_t s = 0; s < m; ++s) {
    try {
      rho.emplace_back(std::move(*xi[s]), conj[s]);
    } catch (const BundleError& e) {
      throw ParseError(field(field(root, "conjugators"), std::to_string(s)), e.what());
    }
  }

  std::optional<BundleData> from_base;
  if (auto it = j.find("P_base"); it != j.end()) {
    const std::string bp = field(root, "P_base");
    std::size_t base = parse_index(require(*it, bp, "base"), field(bp, "base"));
    if (base >= m) throw ParseError(field(bp, "base"), "cone index out of range");
    const std::string vp = field(bp, "values");
    const Json& jv = require(*it, bp, "values");
    if (!jv.is_object()) throw ParseError(vp, "expected an object keyed by cone index");
    std::vector<std::optional<RatMatrix>> to_base(m);
    for (const auto& [key, value] : jv.items()) {
      const std::string p = field(vp, key);
      to_base[parse_key_index(key, p, m)] = parse_matrix(value, p, r);
    }
    if (!to_base[base]) to_base[base] = RatMatrix::identity(r);
    std::vector<RatMatrix> values;
    for (std::size_t s = 0; s < m; ++s) {
      if (!to_base[s]) throw ParseError(vp, "missing P(" + std::to_string(s) + ", base)");
      values.push_back(*to_base[s]);
    }
    try {
      from_base = BundleData::from_base(fan, group, rho, base, values);
    } catch (const BundleError& e) {
      throw ParseError(bp, e.what());
    }
  }

  std::optional<BundleData> full;
  if (auto it = j.find("P_full"); it != j.end()) {
    const std::string fp = field(root, "P_full");
    if (!it->is_object()) throw ParseError(fp, "expected an object keyed by \"tau,sigma\"");
    std::vector<std::optional<RatMatrix>> p(m * m);
    for (const auto& [key, value] : it->items()) {
      const std::string kp = field(fp, key);
      auto comma = key.find(',');
      if (comma == std::string::npos) throw ParseError(kp, "expected a \"tau,sigma\" key");
      std::size_t t = parse_key_index(key.substr(0, comma), kp, m);
      std::size_t s = parse_key_index(key.substr(comma + 1), kp, m);
      p[t * m + s] = parse_matrix(value, kp, r);
    }
    std::vector<RatMatrix> values;
    for (std::size_t k = 0; k < m * m; ++k) {
      if (!p[k]) throw ParseError(fp, "missing P(" + std::to_string(k / m) + "," + std::to_string(k % m) + ")");
      values.push_back(*p[k]);
    }
    full = BundleData(fan, group, rho, std::move(values));
  }

  if (from_base && full) {
    if (!(from_base->transitions() == full->transitions()))
      throw ParseError(root, "P_base and P_full disagree");
    return *full;
  }
  if (full) return *full;
  if (from_base) return *from_base;
  return BundleData(fan, group, std::move(rho), std::vector<RatMatrix>(m * m, RatMatrix::identity(r)));
}

Json bundle_to_json(const BundleData& d) {
  const std::size_t m = d.num_cones();
  Json out = {{"schema", kSchema}, {"group", group_to_json(d.group())}};
  Json xi = Json::object();
  Json conj = Json::object();
  for (std::size_t s = 0; s < m; ++s) {
    Json w = Json::array();
    for (const auto& c : d.rho(s).weights()) w.push_back(character_to_json(c));
    xi[std::to_string(s)] = std::move(w);
    if (!d.rho(s).is_kaneyama()) conj[std::to_string(s)] = matrix_to_json(d.rho(s).conjugator());
  }
  out["xi"] = std::move(xi);
  if (!conj.empty()) out["conjugators"] = std::move(conj);

  const std::size_t base = d.fan().least_max_cone();
  bool reproducible = d.P(base, base).is_identity();
  for (std::size_t s = 0; reproducible && s < m; ++s) reproducible = d.P(s, base).invertible();
  if (reproducible) {
    std::vector<RatMatrix> to_base;
    for (std::size_t s = 0; s < m; ++s) to_base.push_back(d.P(s, base));
    reproducible = BundleData::from_base(d.fan_handle(), d.group(), d.rho(), base, to_base).transitions() ==
                   d.transitions();
  }
  if (reproducible) {
    Json values = Json::object();
    for (std::size_t s = 0; s < m; ++s) values[std::to_string(s)] = matrix_to_json(d.P(s, base));
    out["P_base"] = {{"base", base}, {"values", std::move(values)}};
  } else {
    Json values = Json::object();
    for (std::size_t t = 0; t < m; ++t)
      for (std::size_t s = 0; s < m; ++s)
        values[std::to_string(t) + "," + std::to_string(s)] = matrix_to_json(d.P(t, s));
    out["P_full"] = std::move(values);
  }
  return out;
}

}  // namespace toric
