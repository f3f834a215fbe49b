#include <doctest.h>

#include "fixtures.hpp"

using namespace toric;
using fixtures::p1;
using fixtures::p2;

namespace {

BundleData trivial(const FanHandle& fan, const GroupDescriptor& g) {
  std::vector<std::vector<Character>> xi(fan->num_cones(),
                                         std::vector<Character>(g.rank(), Character(fan->fan().dim())));
  return BundleData::diagonal(fan, g, xi);
}

BundleData p1_line(const FanHandle& fan, long a, long b) {
  std::vector<Integer> v{Integer(a), Integer(b)};
  return line_bundle_from_ray_values(fan, v);
}

BundleData p1_gl2(const FanHandle& fan, std::vector<long> line0, std::vector<long> line1) {
  std::vector<std::vector<Integer>> values;
  values.push_back({Integer(line0[0]), Integer(line0[1])});
  values.push_back({Integer(line1[0]), Integer(line1[1])});
  return split_bundle(fan, GroupDescriptor::general_linear(2), values);
}

bool is_permutation_matrix(const RatMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    int ones = 0;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j) == 1) ++ones;
      else if (m(i, j) != 0) return false;
    }
    if (ones != 1) return false;
  }
  return (m.transpose() * m).is_identity();
}

}  // namespace

TEST_SUITE("bundle") {
  TEST_CASE("trivial data is valid for every group") {
    for (auto fan : {p1(), p2(), fixtures::f1()})
      for (const auto& g : fixtures::sample_groups()) CHECK(validate(trivial(fan, g)).valid());
  }

  TEST_CASE("rank-one data on the projective line is always valid") {
    auto fan = p1();
    for (long a = -3; a <= 3; ++a)
      for (long b = -3; b <= 3; ++b) {
        std::vector<std::vector<Character>> xi{{Character{a}}, {Character{b}}};
        CHECK(validate(BundleData::diagonal(fan, GroupDescriptor::diagonal_torus(1), xi)).valid());
      }
  }

  TEST_CASE("regularity violation on the projective plane names the pair") {
    auto fan = p2();
    auto g = GroupDescriptor::general_linear(1);
    bool found = false;
    for (long a = -1; a <= 1 && !found; ++a)
      for (long b = -1; b <= 1 && !found; ++b) {
        std::vector<std::vector<Character>> xi{{Character{1, 0}}, {Character{a, b}}, {Character{0, 0}}};
        auto rep = validate(BundleData::diagonal(fan, g, xi));
        for (const auto& v : rep.violations)
          if (v.condition == Condition::regularity) {
            CHECK(v.cones.size() == 2);
            CHECK(v.cones[0] != v.cones[1]);
            CHECK_FALSE(rep.passed(Condition::regularity));
            found = true;
          }
      }
    CHECK(found);
  }

  TEST_CASE("regularity agrees with ray values") {
    // A rank-one datum is admissible iff the weights come from ray values.
    auto fan = p2();
    auto g = GroupDescriptor::diagonal_torus(1);
    for (long a = -1; a <= 1; ++a)
      for (long b = -1; b <= 1; ++b)
        for (long c = -1; c <= 1; ++c) {
          std::vector<std::vector<Character>> xi{{Character{0, 0}}, {Character{a, b}}, {Character{c, a}}};
          BundleData d = BundleData::diagonal(fan, g, xi);
          bool from_rays = true;
          try {
            line_bundle_to_ray_values(d);
          } catch (const BundleError&) {
            from_rays = false;
          }
          CHECK(validate(d).valid() == from_rays);
        }
  }

  TEST_CASE("factorization violation on a non-full cone") {
    auto fan = make_fan_handle(Fan(2, {{1, 0}}, {Cone{0}}));
    auto g = GroupDescriptor::diagonal_torus(1);
    CHECK(validate(BundleData::diagonal(fan, g, {{Character{3, 0}}})).valid());
    auto rep = validate(BundleData::diagonal(fan, g, {{Character{0, 1}}}));
    CHECK_FALSE(rep.passed(Condition::factorization));
  }

  TEST_CASE("normalization, cocycle and membership violations") {
    auto fan = p1();
    auto gl = GroupDescriptor::general_linear(1);
    std::vector<TorusHomomorphism> rho{TorusHomomorphism::diagonal({Character{0}}),
                                       TorusHomomorphism::diagonal({Character{0}})};
    std::vector<RatMatrix> p{RatMatrix{{2}}, RatMatrix{{1}}, RatMatrix{{1}}, RatMatrix{{1}}};
    auto rep = validate(BundleData(fan, gl, rho, p));
    CHECK_FALSE(rep.passed(Condition::normalization));
    CHECK_FALSE(rep.passed(Condition::cocycle));

    std::vector<RatMatrix> q{RatMatrix{{1}}, RatMatrix{{2}}, RatMatrix{{3}}, RatMatrix{{1}}};
    auto rep2 = validate(BundleData(fan, gl, rho, q));
    CHECK(rep2.passed(Condition::normalization));
    CHECK_FALSE(rep2.passed(Condition::cocycle));

    auto torus = GroupDescriptor::diagonal_torus(2);
    std::vector<TorusHomomorphism> rho2{TorusHomomorphism::diagonal({Character{0}, Character{0}}),
                                        TorusHomomorphism::diagonal({Character{0}, Character{0}})};
    RatMatrix u{{1, 1}, {0, 1}};
    auto d = BundleData::from_base(fan, torus, rho2, 0, {RatMatrix::identity(2), u});
    CHECK_FALSE(validate(d).passed(Condition::group_membership));
    CHECK(validate(d).passed(Condition::cocycle));
  }

  TEST_CASE("shape errors") {
    auto fan = p1();
    auto g = GroupDescriptor::diagonal_torus(2);
    CHECK_THROWS_AS(BundleData::diagonal(fan, g, {{Character{0}}, {Character{0}}}), BundleError);
    CHECK_THROWS_AS(BundleData::diagonal(fan, g, {{Character{0}, Character{0}}}), BundleError);
    CHECK_THROWS_AS(TorusHomomorphism({Character{0}, Character{1}}, RatMatrix{{1, 1}, {1, 1}}), BundleError);
    CHECK_THROWS_AS(make_fan_handle(Fan(2, {{1, 0}, {1, 2}}, {Cone{0, 1}})), BundleError);
  }

  TEST_CASE("gauge invariance of validity") {
    for (auto [fan, name] : {std::pair{p1(), "P1"}, std::pair{p2(), "P2"}, std::pair{fixtures::f1(), "F1"}}) {
      for (const auto& s : fixtures::corpus(fan, name, 40, 11)) {
        INFO(s.label);
        CHECK(validate(s.original).valid());
        CHECK(validate(s.gauged).valid());
        CHECK(verify_gauge(s.original, s.gauged, s.gauge));
        CHECK(apply_gauge(s.gauged, invert_gauge(s.gauge)) == s.original);
      }
    }
  }

  TEST_CASE("gauges compose") {
    std::mt19937_64 rng(12);
    auto fan = p2();
    BundleData d = fixtures::tangent_bundle(fan);
    Gauge a = fixtures::random_gauge(rng, d), b = fixtures::random_gauge(rng, d);
    CHECK(apply_gauge(apply_gauge(d, a), b) == apply_gauge(d, compose_gauges(a, b)));
    CHECK_THROWS_AS(apply_gauge(d, Gauge(3, RatMatrix{{1, 2}, {2, 4}})), BundleError);
  }

  TEST_CASE("normalization") {
    auto fan = p1();
    // already normalized
    BundleData d = p1_line(fan, 2, -1);
    CHECK(normalize_gauge(d).data == d);
    // rank one with a nontrivial constant transition
    auto gl1 = GroupDescriptor::general_linear(1);
    auto c = BundleData::from_base(fan, gl1, d.rho(), 0, {RatMatrix{{1}}, RatMatrix{{Rational(5, 2)}}});
    REQUIRE(validate(c).valid());
    auto n = normalize_gauge(c);
    CHECK(n.data.P_is_trivial());
    for (std::size_t s = 0; s < 2; ++s) CHECK(n.data.rho(s).matrix() == c.rho(s).matrix());
    // base cone choice
    auto n1 = normalize_gauge(c, 1);
    CHECK(n1.base == 1);
    CHECK(n1.data.P_is_trivial());
    CHECK(verify_gauge(c, n1.data, n1.gauge));
    // invalid data is refused
    std::vector<RatMatrix> bad{RatMatrix{{1}}, RatMatrix{{2}}, RatMatrix{{3}}, RatMatrix{{1}}};
    CHECK_THROWS_AS(normalize_gauge(BundleData(fan, gl1, d.rho(), bad)), BundleError);
  }

  TEST_CASE("normalized data is equivalent to its input") {
    for (const auto& s : fixtures::corpus(p2(), "P2", 30, 13)) {
      INFO(s.label);
      auto n = normalize_gauge(s.gauged);
      CHECK(validate(n.data).valid());
      CHECK(verify_gauge(s.gauged, n.data, n.gauge));
      auto eq = equivalent(s.gauged, n.data);
      CHECK(eq.equivalent);
      CHECK(verify_gauge(s.gauged, n.data, eq.witness));
    }
  }

  TEST_CASE("equivalence examples") {
    auto fan = p1();
    BundleData d = p1_line(fan, 1, 0);
    auto self = equivalent(d, d);
    CHECK(self.equivalent);
    for (const auto& g : self.witness) CHECK(g.is_identity());

    for (long a = -1; a <= 1; ++a)
      for (long b = -1; b <= 1; ++b)
        for (long c = -1; c <= 1; ++c)
          for (long e = -1; e <= 1; ++e)
            CHECK(equivalent(p1_line(fan, a, b), p1_line(fan, c, e)).equivalent == (a == c && b == e));

    BundleData x = p1_gl2(fan, {1, 0}, {0, 0});
    BundleData y = p1_gl2(fan, {0, 0}, {1, 0});
    auto swap = equivalent(x, y);
    REQUIRE(swap.equivalent);
    for (const auto& g : swap.witness) {
      CHECK(is_permutation_matrix(g));
      CHECK_FALSE(g.is_identity());
    }
    CHECK_FALSE(equivalent(x, p1_gl2(fan, {1, 0}, {0, 1})).equivalent);
  }

  TEST_CASE("equivalence mismatch errors") {
    CHECK_THROWS_AS(equivalent(p1_line(p1(), 0, 0), trivial(p1(), GroupDescriptor::general_linear(1))), BundleError);
    CHECK_THROWS_AS(equivalent(p1_line(p1(), 0, 0), trivial(p2(), GroupDescriptor::diagonal_torus(1))), BundleError);
  }

  TEST_CASE("equivalence is reflexive, symmetric and transitive") {
    std::mt19937_64 rng(14);
    for (auto fan : {p1(), p2(), fixtures::f1()}) {
      for (const auto& s : fixtures::corpus(fan, "triple", 14, 15)) {
        INFO(s.label);
        BundleData b = apply_gauge(s.original, fixtures::random_gauge(rng, s.original));
        BundleData c = apply_gauge(b, fixtures::random_gauge(rng, b));
        auto ab = equivalent(s.original, b);
        auto ba = equivalent(b, s.original);
        auto bc = equivalent(b, c);
        REQUIRE(ab.equivalent);
        REQUIRE(ba.equivalent);
        REQUIRE(bc.equivalent);
        CHECK(verify_gauge(b, s.original, invert_gauge(ab.witness)));
        CHECK(verify_gauge(s.original, c, compose_gauges(ab.witness, bc.witness)));
        CHECK(equivalent(s.original, c).equivalent);
      }
    }
  }

  TEST_CASE("tangent bundle is not split") {
    auto fan = p2();
    BundleData t = fixtures::tangent_bundle(fan);
    REQUIRE(validate(t).valid());
    CHECK_FALSE(simultaneously_diagonalize(normalize_gauge(t).data.rho()));
    // not equivalent to any split datum with the same weights on the base cone
    BundleData split = split_bundle(fan, t.group(), {{1, 0, 0}, {0, 1, 0}});
    CHECK_FALSE(equivalent(t, split).equivalent);
    CHECK(automorphism_subgroup(t).dimension() == 1);
  }

  TEST_CASE("kaneyama form and canonical form") {
    std::mt19937_64 rng(16);
    for (auto fan : {p1(), p2()}) {
      for (const auto& s : fixtures::corpus(fan, "kf", 20, 17)) {
        INFO(s.label);
        if (s.gauged.group().kind() == "GL") {
          BundleData k = kaneyama_form(s.gauged);
          CHECK(k.is_kaneyama_form());
          CHECK(validate(k).valid());
          CHECK(equivalent(s.gauged, k).equivalent);
        }
        BundleData c1 = canonical_form(s.original);
        BundleData c2 = canonical_form(s.gauged);
        CHECK(validate(c1).valid());
        if (simultaneously_diagonalize(normalize_gauge(s.original).data.rho())) CHECK(c1 == c2);
      }
    }
    // torus data with a nontrivial conjugator cannot be diagonalized inside the torus
    auto fan = p1();
    auto bn = GroupDescriptor::block_nilpotent({2});
    std::vector<TorusHomomorphism> rho{TorusHomomorphism({Character{0}, Character{0}}, RatMatrix{{1, 1}, {0, 1}}),
                                       TorusHomomorphism::diagonal({Character{0}, Character{0}})};
    BundleData d(fan, bn, rho, std::vector<RatMatrix>(4, RatMatrix::identity(2)));
    CHECK(kaneyama_form(d).is_kaneyama_form());
  }

  TEST_CASE("literal kaneyama check") {
    auto fan = p1();
    BundleData x = p1_gl2(fan, {1, 0}, {0, 0});
    BundleData y = p1_gl2(fan, {0, 0}, {1, 0});
    auto lit = kaneyama_equivalence_literal(x, y);
    CHECK(lit.holds);
    REQUIRE(lit.permutations.size() == 2);
    CHECK(lit.permutations[0] == std::vector<std::size_t>{1, 0});
    CHECK_FALSE(kaneyama_equivalence_literal(x, p1_gl2(fan, {1, 1}, {0, 0})).holds);
  }

  TEST_CASE("permutation match") {
    auto fan = p1();
    BundleData eq = p1_gl2(fan, {2, 2}, {2, 2});
    auto m = permutation_match(eq, 0, 1);
    REQUIRE(m.gamma);
    CHECK(*m.gamma == std::vector<std::size_t>{0, 1});
    auto one = permutation_match(p1_line(fan, 3, -1), 0, 1);
    REQUIRE(one.gamma);
    CHECK(*one.gamma == std::vector<std::size_t>{0});
    CHECK(*permutation_match(p1_gl2(fan, {1, 0}, {0, 3}), 0, 1).gamma == std::vector<std::size_t>{0, 1});

    // on the plane the matching must respect the shared ray
    BundleData t = fixtures::tangent_bundle(p2());
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t b = 0; b < 3; ++b) {
        auto pm = permutation_match(t, a, b);
        REQUIRE(pm.gamma);
        const Cone& face = t.fan_handle()->common_face(a, b);
        for (std::size_t i = 0; i < 2; ++i)
          for (auto ray : face.rays())
            CHECK(pairing(t.rho(a).weights()[i] - t.rho(b).weights()[(*pm.gamma)[i]], t.fan().ray(ray)) == 0);
      }

    // invalid data can fail to match
    std::vector<std::vector<Character>> xi{{Character{1, 0}}, {Character{5, 5}}, {Character{0, 0}}};
    BundleData bad = BundleData::diagonal(p2(), GroupDescriptor::diagonal_torus(1), xi);
    bool any_fail = false;
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t b = 0; b < 3; ++b) any_fail |= !permutation_match(bad, a, b).gamma.has_value();
    CHECK(any_fail);
  }

  TEST_CASE("transition functions") {
    auto fan = p1();
    auto triv = trivial(fan, GroupDescriptor::general_linear(2));
    auto tr = transition_matrices(triv);
    for (const auto& phi : tr.phi) CHECK(phi == LaurentMatrix::identity(2, 1));

    BundleData d = p1_line(fan, 1, 0);
    Character e = d.rho(0).weights()[0] - d.rho(1).weights()[0];
    auto phi = transition_function(d, 0, 1);
    REQUIRE(phi(0, 0).as_monomial());
    CHECK(phi(0, 0).as_monomial()->first == e);
    std::vector<Rational> pt{Rational(2)};
    CHECK(evaluate_transition(d, 0, 1, pt)(0, 0) == power(Rational(2), e[0]));
    CHECK(transition_matrices(d).all_hold());

    std::vector<Rational> zero{Rational(0)};
    CHECK_THROWS_AS(evaluate_transition(d, 0, 1, zero), BundleError);
    std::vector<Rational> wrong{Rational(1), Rational(1)};
    CHECK_THROWS_AS(evaluate_transition(d, 0, 1, wrong), BundleError);
  }

  TEST_CASE("transition at the unit point is P") {
    for (const auto& s : fixtures::corpus(p2(), "P2", 20, 18)) {
      std::vector<Rational> ones(2, Rational(1));
      for (std::size_t t = 0; t < 3; ++t)
        for (std::size_t u = 0; u < 3; ++u) CHECK(evaluate_transition(s.gauged, t, u, ones) == s.gauged.P(t, u));
      CHECK(transition_matrices(s.gauged).all_hold());
    }
  }

  TEST_CASE("line bundles and ray values") {
    auto fan = p1();
    BundleData zero = p1_line(fan, 0, 0);
    CHECK(zero == trivial(fan, GroupDescriptor::diagonal_torus(1)));
    BundleData d = p1_line(fan, 1, 0);
    CHECK(d.rho(0).weights()[0] == Character{1});
    CHECK(d.rho(1).weights()[0] == Character{0});

    auto plane = p2();
    std::vector<BundleData> all;
    for (long a = -2; a <= 2; ++a)
      for (long b = -2; b <= 2; ++b)
        for (long c = -2; c <= 2; ++c) {
          std::vector<Integer> v{Integer(a), Integer(b), Integer(c)};
          BundleData l = line_bundle_from_ray_values(plane, v);
          CHECK(validate(l).valid());
          CHECK(line_bundle_to_ray_values(l) == v);
          all.push_back(l);
        }
    // distinct ray values give pairwise inequivalent data (spot check against one row)
    for (std::size_t i = 1; i < all.size(); i += 7) CHECK_FALSE(equivalent(all[0], all[i]).equivalent);

    std::vector<Integer> short_values{Integer(1)};
    CHECK_THROWS_AS(line_bundle_from_ray_values(plane, short_values), BundleError);
    auto partial = make_fan_handle(Fan(2, {{1, 0}}, {Cone{0}}));
    std::vector<Integer> one{Integer(1)};
    CHECK_THROWS_AS(line_bundle_from_ray_values(partial, one), BundleError);
  }

  TEST_CASE("structure group reduction") {
    auto fan = p1();
    BundleData torus = split_bundle(fan, GroupDescriptor::diagonal_torus(2), {{1, 0}, {0, -2}});
    auto red = reduce_structure_group(torus);
    CHECK(red.data == torus);

    auto bn = GroupDescriptor::block_nilpotent({2, 1});
    BundleData base = split_bundle(fan, bn, {{1, -1}, {2, 0}});
    RatMatrix u{{1, 1, 0}, {0, 1, 0}, {0, 0, 1}};
    BundleData unip = BundleData::from_base(fan, bn, base.rho(), 0, {RatMatrix::identity(3), u});
    REQUIRE(validate(unip).valid());
    auto r = reduce_structure_group(unip);
    CHECK(r.data.group() == GroupDescriptor::diagonal_torus(2));
    CHECK(validate(r.data).valid());
    CHECK(line_bundle_to_ray_values(split_bundle(fan, GroupDescriptor::diagonal_torus(1), {{1, -1}})) ==
          std::vector<Integer>{1, -1});
    CHECK(r.data.rho(0).weights() == std::vector<Character>{base.rho(0).weights()[0], base.rho(0).weights()[2]});

    CHECK_THROWS_AS(reduce_structure_group(p1_gl2(fan, {1, 0}, {0, 0})), BundleError);
    CHECK_NOTHROW(reduce_structure_group(trivial(fan, GroupDescriptor::general_linear(1))));
  }

  TEST_CASE("automorphism subgroup") {
    auto fan = p1();
    CHECK(automorphism_subgroup(p1_line(fan, 2, 1)).dimension() == 1);
    auto distinct = automorphism_subgroup(p1_gl2(fan, {1, 0}, {0, 0}));
    CHECK(distinct.dimension() == 2);
    CHECK(distinct.contains(RatMatrix{{2, 0}, {0, 3}}));
    CHECK_FALSE(distinct.contains(RatMatrix{{1, 1}, {0, 1}}));
    CHECK(automorphism_subgroup(trivial(fan, GroupDescriptor::general_linear(2))).dimension() == 4);
    for (const auto& s : fixtures::corpus(p2(), "aut", 20, 19)) {
      auto sub = automorphism_subgroup(s.gauged);
      CHECK(sub.contains_scalars());
      CHECK(sub.contains(RatMatrix::scalar(s.gauged.rank(), Rational(-3, 7))));
    }
  }

  TEST_CASE("simultaneous diagonalization") {
    std::vector<TorusHomomorphism> commuting{
        TorusHomomorphism({Character{1}, Character{2}}, RatMatrix{{1, 1}, {0, 1}}),
        TorusHomomorphism({Character{0}, Character{3}}, RatMatrix{{2, 1}, {0, 1}})};
    auto sd = simultaneously_diagonalize(commuting);
    REQUIRE(sd);
    RatMatrix inv = sd->basis.inverse();
    for (std::size_t s = 0; s < 2; ++s) {
      auto m = LaurentMatrix::constant(inv, 1) * commuting[s].matrix() * LaurentMatrix::constant(sd->basis, 1);
      CHECK(m.is_diagonal());
    }
    std::vector<TorusHomomorphism> clash{
        TorusHomomorphism({Character{1}, Character{2}}, RatMatrix{{1, 1}, {0, 1}}),
        TorusHomomorphism({Character{1}, Character{2}}, RatMatrix{{1, 0}, {1, 1}})};
    CHECK_FALSE(simultaneously_diagonalize(clash));
  }
}
