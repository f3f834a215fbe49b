#include "cli.hpp"

#include <CLI11.hpp>

#include "toric/enumerate.hpp"
#include "toric/io.hpp"

namespace toric {

namespace {

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kUsage = 2;

FanHandle load_fan(const std::string& path) {
  try {
    return make_fan_handle(parse_fan(read_json_file(path)));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.path(), std::string(e.what()).substr(e.path().size() + 2));
  }
}

BundleData load_bundle(const std::string& path, const FanHandle& fan) {
  try {
    return parse_bundle(read_json_file(path), fan);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.path(), std::string(e.what()).substr(e.path().size() + 2));
  }
}

Json header(const std::string& command) { return {{"schema", kSchema}, {"command", command}}; }

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto pos = text.find(sep, start);
    out.push_back(text.substr(start, pos == std::string::npos ? std::string::npos : pos - start));
    if (pos == std::string::npos) return out;
    start = pos + 1;
  }
}

std::vector<Rational> parse_point(const std::string& text) {
  std::vector<Rational> out;
  for (const auto& tok : split(text, ',')) {
    try {
      out.push_back(parse_rational(tok));
    } catch (const std::exception& e) {
      throw ParseError("--point", e.what());
    }
  }
  return out;
}

std::vector<Integer> parse_integers(const std::string& text, const std::string& flag) {
  std::vector<Integer> out;
  for (const auto& tok : split(text, ',')) {
    try {
      out.push_back(parse_integer(tok));
    } catch (const std::exception& e) {
      throw ParseError(flag, e.what());
    }
  }
  return out;
}

std::pair<std::size_t, std::size_t> parse_pair(const std::string& text, std::size_t num_cones) {
  auto parts = split(text, ',');
  if (parts.size() != 2) throw ParseError("--pair", "expected TAU,SIGMA");
  std::pair<std::size_t, std::size_t> out;
  for (int i = 0; i < 2; ++i) {
    Integer v;
    try {
      v = parse_integer(parts[i]);
    } catch (const std::exception& e) {
      throw ParseError("--pair", e.what());
    }
    if (v < 0 || v >= num_cones) throw ParseError("--pair", "cone index " + parts[i] + " out of range");
    (i ? out.second : out.first) = v.get_ui();
  }
  return out;
}

Json report_json(const ValidationReport& report) {
  Json conditions = Json::object();
  for (int c = 0; c <= static_cast<int>(Condition::cocycle); ++c)
    conditions[condition_name(static_cast<Condition>(c))] = report.passed(static_cast<Condition>(c)) ? "pass" : "fail";
  Json violations = Json::array();
  for (const auto& v : report.violations)
    violations.push_back({{"condition", condition_name(v.condition)}, {"cones", v.cones}, {"message", v.message}});
  return {{"valid", report.valid()}, {"conditions", conditions}, {"violations", violations}};
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Torus-equivariant principal bundles on smooth toric varieties"};
  app.name("toric_ebundle");
  app.require_subcommand(1);

  std::string format = "json";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json"}));

  std::string fan_path, bundle_path, bundle_b_path, group_text, point_text, pair_text, values_text;
  std::size_t base_cone = 0;
  unsigned bound = 0;
  std::size_t cap = 1'000'000;
  bool literal = false, pairwise = false;

  auto* fan_check = app.add_subcommand("fan-check", "Validate a fan file");
  fan_check->add_option("fan", fan_path, "Fan file")->required();

  auto add_fan_bundle = [&](CLI::App* sub) {
    sub->add_option("fan", fan_path, "Fan file")->required();
    sub->add_option("bundle", bundle_path, "Bundle file")->required();
  };

  auto* validate_cmd = app.add_subcommand("validate", "Check every admissibility condition of a bundle");
  add_fan_bundle(validate_cmd);

  auto* normalize_cmd = app.add_subcommand("normalize", "Gauge-normalize so that P is identically 1");
  add_fan_bundle(normalize_cmd);
  auto* base_opt = normalize_cmd->add_option("--base-cone", base_cone, "Base maximal cone (default: least)");

  auto* equiv_cmd = app.add_subcommand("equiv", "Decide equivalence of two bundles; prints a witness gauge");
  equiv_cmd->add_option("fan", fan_path, "Fan file")->required();
  equiv_cmd->add_option("a", bundle_path, "First bundle file")->required();
  equiv_cmd->add_option("b", bundle_b_path, "Second bundle file")->required();
  equiv_cmd->add_flag("--literal", literal, "Also report the per-cone permutation diagnostic");

  auto* transitions_cmd = app.add_subcommand("transitions", "Symbolic transition functions and their identities");
  add_fan_bundle(transitions_cmd);

  auto* evaluate_cmd = app.add_subcommand("evaluate", "Evaluate one transition function at a point");
  add_fan_bundle(evaluate_cmd);
  evaluate_cmd->add_option("--pair", pair_text, "Ordered pair TAU,SIGMA of maximal cones")->required();
  evaluate_cmd->add_option("--point", point_text, "Point of the dense orbit, e.g. 2,-1/3")->required();

  auto* reduce_cmd = app.add_subcommand("reduce", "Reduce the structure group to its maximal torus");
  add_fan_bundle(reduce_cmd);

  auto* aut_cmd = app.add_subcommand("automorphisms", "Automorphism subgroup in the base chart");
  add_fan_bundle(aut_cmd);

  auto* line_cmd = app.add_subcommand("line-bundle", "Convert between line bundles and ray values");
  line_cmd->require_subcommand(1);
  auto* to_rays = line_cmd->add_subcommand("to-rays", "Ray values of a rank-one bundle");
  add_fan_bundle(to_rays);
  auto* from_rays = line_cmd->add_subcommand("from-rays", "Rank-one torus bundle from ray values");
  from_rays->add_option("fan", fan_path, "Fan file")->required();
  from_rays->add_option("--values", values_text, "One integer per ray, e.g. 1,0,0")->required();

  auto* enum_cmd = app.add_subcommand("enumerate", "Enumerate split bundle classes in a weight box");
  enum_cmd->add_option("fan", fan_path, "Fan file")->required();
  enum_cmd->add_option("--group", group_text, "Structure group: GL:R, torus:R or block_nilpotent:N1,N2,...")
      ->required();
  enum_cmd->add_option("--bound", bound, "Ray values range over [-B, B]")->required();
  enum_cmd->add_option("--cap", cap, "Largest number of candidates accepted");
  enum_cmd->add_flag("--pairwise", pairwise, "Deduplicate by pairwise equivalence checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*fan_check) {
      Fan fan = parse_fan(read_json_file(fan_path));
      FanCertificate cert = validate_fan(fan);
      Json j = header("fan-check");
      Json violations = Json::array();
      for (const auto& v : cert.violations)
        violations.push_back({{"kind", v.kind}, {"indices", v.indices}, {"message", v.message}});
      j["valid"] = cert.valid();
      j["violations"] = violations;
      j["fan"] = fan_to_json(fan);
      emit(out, j);
      return cert.valid() ? kOk : kNegative;
    }

    if (*enum_cmd) {
      FanHandle fan = load_fan(fan_path);
      EnumerationSpec spec{fan, parse_group_spec(group_text), bound, pairwise, cap};
      EnumerationResult result = enumerate_classes(spec);
      Json classes = Json::array();
      for (const auto& c : result.classes) classes.push_back(bundle_to_json(c));
      Json j = header("enumerate");
      j["group"] = group_to_json(spec.group);
      j["bound"] = bound;
      j["candidates"] = result.candidates;
      j["count"] = result.classes.size();
      j["classes"] = classes;
      emit(out, j);
      return kOk;
    }

    if (*from_rays) {
      FanHandle fan = load_fan(fan_path);
      auto values = parse_integers(values_text, "--values");
      emit(out, bundle_to_json(line_bundle_from_ray_values(fan, values)));
      return kOk;
    }

    FanHandle fan = load_fan(fan_path);
    BundleData d = load_bundle(bundle_path, fan);

    if (*validate_cmd) {
      ValidationReport report = validate(d);
      Json j = header("validate");
      j.update(report_json(report));
      emit(out, j);
      return report.valid() ? kOk : kNegative;
    }

    // Every remaining command needs admissible input.
    if (!(*transitions_cmd || *evaluate_cmd)) {
      ValidationReport report = validate(d);
      if (!report.valid()) {
        err << bundle_path << ": invalid bundle data: " << report.violations.front().message << '\n';
        return kNegative;
      }
    }

    if (*normalize_cmd) {
      std::optional<std::size_t> base;
      if (*base_opt) {
        if (base_cone >= d.num_cones()) throw ParseError("--base-cone", "cone index out of range");
        base = base_cone;
      }
      Normalization n = normalize_gauge(d, base);
      Json j = header("normalize");
      j["base"] = n.base;
      j["gauge"] = gauge_to_json(n.gauge);
      j["bundle"] = bundle_to_json(n.data);
      emit(out, j);
      return kOk;
    }

    if (*equiv_cmd) {
      BundleData b = load_bundle(bundle_b_path, fan);
      EquivalenceResult r = equivalent(d, b);
      Json j = header("equiv");
      j["equivalent"] = r.equivalent;
      j["reason"] = r.reason;
      if (r.equivalent) j["witness"] = gauge_to_json(r.witness);
      if (literal) {
        LiteralKaneyamaResult lit = kaneyama_equivalence_literal(d, b);
        Json l = {{"holds", lit.holds}, {"permutations", lit.permutations}, {"reason", lit.reason}};
        if (lit.holds) l["gauge"] = gauge_to_json(lit.gauge);
        j["literal"] = l;
      }
      emit(out, j);
      return r.equivalent ? kOk : kNegative;
    }

    if (*transitions_cmd) {
      TransitionReport rep = transition_matrices(d);
      Json phi = Json::object();
      for (std::size_t t = 0; t < d.num_cones(); ++t)
        for (std::size_t s = 0; s < d.num_cones(); ++s)
          phi[std::to_string(t) + "," + std::to_string(s)] = laurent_matrix_to_json(rep.at(t, s));
      Json j = header("transitions");
      j["phi"] = phi;
      j["cocycle"] = rep.cocycle;
      j["equivariance"] = rep.equivariance;
      j["unit_determinants"] = rep.unit_determinants;
      j["failures"] = rep.failures;
      emit(out, j);
      return rep.all_hold() ? kOk : kNegative;
    }

    if (*evaluate_cmd) {
      auto [tau, sigma] = parse_pair(pair_text, d.num_cones());
      auto point = parse_point(point_text);
      Json j = header("evaluate");
      j["pair"] = {tau, sigma};
      j["value"] = matrix_to_json(evaluate_transition(d, tau, sigma, point));
      emit(out, j);
      return kOk;
    }

    if (*reduce_cmd) {
      TorusReduction red = reduce_structure_group(d);
      Json j = header("reduce");
      j["class_of_line"] = red.class_of_line;
      j["reduced"] = bundle_to_json(red.data);
      emit(out, j);
      return kOk;
    }

    if (*aut_cmd) {
      SubgroupDescription sub = automorphism_subgroup(d);
      Json basis = Json::array();
      for (const auto& m : sub.span().basis()) basis.push_back(matrix_to_json(m));
      Json j = header("automorphisms");
      j["blocks"] = sub.blocks();
      j["dimension"] = sub.dimension();
      j["conjugator"] = matrix_to_json(sub.conjugator());
      j["basis"] = basis;
      j["contains_scalars"] = sub.contains_scalars();
      emit(out, j);
      return kOk;
    }

    if (*to_rays) {
      Json values = Json::array();
      for (const auto& v : line_bundle_to_ray_values(d)) values.push_back(integer_to_json(v));
      Json j = header("line-bundle to-rays");
      j["ray_values"] = values;
      emit(out, j);
      return kOk;
    }
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    // BundleError, FanError, GroupError, EnumerationError, LatticeError
    err << "error: " << e.what() << '\n';
    return kNegative;
  }
  err << "no command given\n";
  return kUsage;
}

}  // namespace toric
