#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "rtergm/error.hpp"
#include "rtergm/terms.hpp"

using namespace rtergm;

namespace {

DirectedGraph complete(std::size_t n) {
  DirectedGraph g(n);
  for (Node i = 0; i < n; ++i)
    for (Node j = 0; j < n; ++j)
      if (i != j) g.add_edge(i, j);
  return g;
}

// Nodes 1, 2, 3 of the textbook fixture, with an isolated node 0.
DirectedGraph triangle_fixture(bool with_closing_edge) {
  DirectedGraph g(4);
  g.add_edge(1, 3);
  g.add_edge(3, 2);
  if (with_closing_edge) g.add_edge(1, 2);
  return g;
}

ModelSpec every_term(double decay) {
  return ModelSpec{{TermSpec::edges(), TermSpec::gwesp(decay), TermSpec::gwnsp(decay), TermSpec::gwidegree(decay),
                    TermSpec::gwodegree(decay), TermSpec::nodeofactor(Role::Organization),
                    TermSpec::nodeifactor(Role::Leader), TermSpec::nodeocov(), TermSpec::nodeicov()}};
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an exception");
  return ErrorCode::Io;
}

}  // namespace

TEST_CASE("gw weight") {
  CHECK(gw_weight(0.5, 0) == 0.0);
  CHECK(gw_weight(0.5, 1) == doctest::Approx(1.0));
  CHECK(gw_weight(std::log(2.0), 3) == doctest::Approx(1.75));
  CHECK(gw_weight(0.0, 4) == 1.0);
  for (std::size_t k = 0; k < 12; ++k) CHECK(gw_weight(0.7, k) == doctest::Approx(oracle::weight(0.7, k)));
}

TEST_CASE("edges statistic") {
  CHECK(stat_edges(DirectedGraph(5)) == 0);
  CHECK(stat_edges(complete(4)) == 12);
}

TEST_CASE("gwesp") {
  for (double a : {0.0, 0.25, 0.5, 1.3}) {
    CHECK(stat_gwesp_otp(triangle_fixture(true), a) == doctest::Approx(1.0));
    CHECK(stat_gwesp_otp(complete(3), a) == doctest::Approx(6.0));
  }
  CHECK(stat_gwesp_otp(DirectedGraph(4), 0.5) == 0.0);
}

TEST_CASE("gwnsp") {
  for (double a : {0.0, 0.5, 2.0}) {
    CHECK(stat_gwnsp_otp(triangle_fixture(false), a) == doctest::Approx(1.0));
    CHECK(stat_gwnsp_otp(triangle_fixture(true), a) == doctest::Approx(0.0));
  }
  CHECK(stat_gwnsp_otp(DirectedGraph(4), 0.5) == 0.0);
}

TEST_CASE("gwdegree") {
  DirectedGraph hub(4);
  for (Node s = 1; s <= 3; ++s) hub.add_edge(s, 0);
  CHECK(stat_gwdegree(hub, std::log(2.0), Direction::In) == doctest::Approx(1.75));
  CHECK(stat_gwdegree(hub, 0.0, Direction::In) == 1.0);
  CHECK(stat_gwdegree(hub, 0.0, Direction::Out) == 3.0);
  CHECK(stat_gwdegree(DirectedGraph(4), 0.5, Direction::In) == 0.0);
}

TEST_CASE("node factors") {
  NodeTable t = NodeTable::uniform(4);
  t.role[0] = Role::Organization;
  DirectedGraph g(4);
  g.add_edge(1, 0);
  g.add_edge(2, 0);
  g.add_edge(0, 3);
  CHECK(stat_nodefactor(g, t, Role::Organization, Direction::In) == 2);
  CHECK(stat_nodefactor(g, t, Role::Leader, Direction::In) == 0);

  NodeTable t3 = NodeTable::uniform(3);
  t3.role[2] = Role::Leader;
  CHECK(stat_nodefactor(complete(3), t3, Role::Leader, Direction::Out) == 2);
}

TEST_CASE("node covariates") {
  std::vector<double> x = {0.7, -0.1, 1.2};
  DirectedGraph g(3);
  CHECK(stat_nodecov(g, x, Direction::Out) == 0.0);
  g.add_edge(0, 1);
  CHECK(stat_nodecov(g, x, Direction::Out) == doctest::Approx(0.7));
  DirectedGraph h(3);
  h.add_edge(2, 0);
  h.add_edge(2, 1);
  CHECK(stat_nodecov(h, x, Direction::Out) == doctest::Approx(2.4));
  CHECK(stat_nodecov(h, x, Direction::In) == doctest::Approx(0.6));
}

TEST_CASE("follower covariate transform") {
  NodeTable t = NodeTable::uniform(3);
  t.followers = {9, 99, 999};
  auto x = follower_covariate(t);
  CHECK(x[0] == doctest::Approx(-1.0));
  CHECK(x[1] == doctest::Approx(0.0));
  CHECK(x[2] == doctest::Approx(1.0));
  t.followers = {5, 5, 5};
  CHECK(follower_covariate(t) == std::vector<double>{0, 0, 0});
}

TEST_CASE("statistics vector") {
  auto nodes = NodeTable::uniform(4);
  CHECK(statistics(DirectedGraph(4), nodes, ModelSpec{{TermSpec::edges()}}) == StatVector{0});
  auto s = statistics(triangle_fixture(true), nodes, ModelSpec{{TermSpec::edges(), TermSpec::gwesp(0.5)}});
  REQUIRE(s.size() == 2);
  CHECK(s[0] == 3);
  CHECK(s[1] == doctest::Approx(1.0));

  std::mt19937_64 rng(5);
  auto t = oracle::random_nodes(30, rng);
  auto g = oracle::random_graph(30, 0.1, rng);
  auto spec = ModelSpec::full_role_model();
  auto full = statistics(g, t, spec);
  CHECK(full.size() == 13);
  for (double v : full) CHECK(std::isfinite(v));
}

TEST_CASE("change statistics match recomputation") {
  std::mt19937_64 rng(2024);
  for (int rep = 0; rep < 120; ++rep) {
    const std::size_t n = 2 + rep % 6;
    const double p = std::array{0.1, 0.3, 0.6}[rep % 3];
    const double decay = std::array{0.0, 0.5, 1.7}[rep % 3];
    auto t = oracle::random_nodes(n, rng);
    auto g = oracle::random_graph(n, p, rng);
    const auto spec = every_term(decay);
    Model model(spec, t);
    for (Node i = 0; i < n; ++i)
      for (Node j = 0; j < n; ++j) {
        if (i == j) continue;
        auto delta = model.change_statistics(g, i, j);
        DirectedGraph on = g, off = g;
        on.add_edge(i, j);
        off.remove_edge(i, j);
        auto s_on = oracle::statistics(on, t, spec);
        auto s_off = oracle::statistics(off, t, spec);
        for (std::size_t k = 0; k < spec.size(); ++k)
          REQUIRE(delta[k] == doctest::Approx(s_on[k] - s_off[k]).epsilon(1e-12).scale(1.0));
      }
    // Full statistics also agree with the definitions.
    auto lib = model.statistics(g);
    auto ref = oracle::statistics(g, t, spec);
    for (std::size_t k = 0; k < spec.size(); ++k) CHECK(lib[k] == doctest::Approx(ref[k]));
  }
}

TEST_CASE("change statistic indicators") {
  NodeTable t = NodeTable::uniform(3);
  t.role[0] = Role::Organization;
  ModelSpec spec{{TermSpec::edges(), TermSpec::nodeofactor(Role::Organization)}};
  DirectedGraph g(3);
  CHECK(change_statistics(g, t, spec, 0, 1) == StatVector{1, 1});
  CHECK(change_statistics(g, t, spec, 1, 0) == StatVector{1, 0});
}

TEST_CASE("adding an edge never lowers monotone statistics") {
  std::mt19937_64 rng(99);
  NodeTable t;
  for (int rep = 0; rep < 40; ++rep) {
    t = oracle::random_nodes(6, rng);
    auto g = oracle::random_graph(6, 0.3, rng);
    ModelSpec spec{{TermSpec::edges(), TermSpec::nodeifactor(Role::Organization),
                    TermSpec::nodeofactor(Role::Leader), TermSpec::gwidegree(0.5), TermSpec::gwodegree(1.0)}};
    Model m(spec, t);
    for (Node i = 0; i < 6; ++i)
      for (Node j = 0; j < 6; ++j)
        if (i != j)
          for (double d : m.change_statistics(g, i, j)) CHECK(d >= 0.0);
  }
}

TEST_CASE("zero-decay limits") {
  std::mt19937_64 rng(4);
  for (int rep = 0; rep < 30; ++rep) {
    auto g = oracle::random_graph(7, 0.25, rng);
    std::size_t with_partner = 0;
    for (const auto& [i, j] : g.edges())
      if (oracle::shared_partners(g, i, j) > 0) ++with_partner;
    CHECK(stat_gwesp_otp(g, 0.0) == static_cast<double>(with_partner));
    std::size_t in_nonzero = 0;
    for (Node v = 0; v < 7; ++v) in_nonzero += g.in_degree(v) > 0 ? 1 : 0;
    CHECK(stat_gwdegree(g, 0.0, Direction::In) == static_cast<double>(in_nonzero));
  }
}

TEST_CASE("edge-status partition of shared partners") {
  std::mt19937_64 rng(8);
  for (int rep = 0; rep < 30; ++rep) {
    auto g = oracle::random_graph(7, 0.4, rng);
    for (double a : {0.0, 0.5, 2.0}) {
      double all = 0.0;
      for (Node i = 0; i < 7; ++i)
        for (Node j = 0; j < 7; ++j)
          if (i != j) all += gw_weight(a, shared_partners_otp(g, i, j));
      CHECK(stat_gwesp_otp(g, a) + stat_gwnsp_otp(g, a) == doctest::Approx(all));
    }
  }
}

TEST_CASE("statistics invariant under relabeling") {
  std::mt19937_64 rng(12);
  for (int rep = 0; rep < 20; ++rep) {
    const std::size_t n = 7;
    auto t = oracle::random_nodes(n, rng);
    auto g = oracle::random_graph(n, 0.3, rng);
    std::vector<Node> perm(n);
    std::iota(perm.begin(), perm.end(), Node{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    DirectedGraph h(n);
    for (const auto& [i, j] : g.edges()) h.add_edge(perm[i], perm[j]);
    NodeTable u = t;
    for (std::size_t v = 0; v < n; ++v) {
      u.role[perm[v]] = t.role[v];
      u.followers[perm[v]] = t.followers[v];
    }
    auto spec = every_term(0.5);
    auto a = statistics(g, t, spec);
    auto b = statistics(h, u, spec);
    for (std::size_t k = 0; k < a.size(); ++k) CHECK(a[k] == doctest::Approx(b[k]));
  }
}

TEST_CASE("term validation") {
  CHECK(code_of([] { TermSpec::gwesp(-0.1).validate(); }) == ErrorCode::NegativeDecay);
  CHECK(code_of([] { TermSpec::nodeifactor(Role::Ordinary).validate(); }) == ErrorCode::BaseLevelDisallowed);
  TermSpec bad = TermSpec::edges();
  bad.decay = 0.5;
  CHECK(code_of([&] { bad.validate(); }) == ErrorCode::InvalidModel);
  CHECK(code_of([] { Model(ModelSpec{{TermSpec::nodeocov("age")}}, NodeTable::uniform(3)); }) ==
        ErrorCode::InvalidModel);
}

TEST_CASE("term names and labels") {
  CHECK(TermSpec::gwesp(0.5).name() == "gwesp.OTP.0.5");
  CHECK(TermSpec::nodeofactor(Role::Organization).name() == "nodeofactor.role.Organization");
  CHECK(TermSpec::edges().display_label() == "Density");
  CHECK(TermSpec::gwnsp().display_label() == "Hierarchical cascades");
  CHECK(TermSpec::gwesp().display_label() == "Triadic closure");
  CHECK(TermSpec::nodeocov().display_label() == "Sender's number of followers");
  CHECK(parse_term_kind("dgwesp") == TermKind::GwespOTP);
  CHECK(parse_term_kind("nodeifactor") == TermKind::NodeInFactor);
  CHECK_FALSE(parse_term_kind("triangle").has_value());
}

TEST_CASE("table layout model") {
  auto spec = ModelSpec::full_role_model();
  CHECK(spec.size() == 13);
  CHECK_FALSE(spec.dyad_independent());
  NodeTable t = NodeTable::uniform(5);
  t.role[0] = Role::Organization;
  t.role[1] = Role::Leader;
  auto reduced = spec.without_absent_levels(t);
  CHECK(reduced.size() == 11);
  for (const auto& term : reduced.terms) CHECK(term.level != Role::Influential);
  CHECK(ModelSpec{{TermSpec::edges(), TermSpec::nodeocov()}}.dyad_independent());
}

TEST_CASE("model file round trip") {
  const std::string text = R"(# comment
default_decay = 0.25

[[term]]
kind = "edges"

[[term]]
kind = "gwesp"

[[term]]
kind = "gwnsp"
decay = 1.5

[[term]]
kind = "nodeifactor"
level = "Organization"

[[term]]
kind = "nodeocov"
)";
  auto spec = parse_model_spec(text);
  REQUIRE(spec.size() == 5);
  CHECK(spec.terms[1].decay == 0.25);
  CHECK(spec.terms[2].decay == 1.5);
  CHECK(spec.terms[3].level == Role::Organization);
  CHECK(spec.terms[4].covariate == "followers");
  CHECK(parse_model_spec(format_model_spec(spec)) == spec);
  CHECK(parse_model_spec(format_model_spec(ModelSpec::full_role_model())) == ModelSpec::full_role_model());
}

TEST_CASE("model file errors carry line numbers") {
  try {
    parse_model_spec("[[term]]\nkind = \"edges\"\n[[term]]\nkind = \"wat\"\n");
    FAIL("expected an exception");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ModelSpecParse);
    CHECK(std::string(e.what()).find("line 4") != std::string::npos);
  }
  CHECK(code_of([] { parse_model_spec("[[term]]\nkind = \"gwesp\"\ndecay = -1\n"); }) == ErrorCode::ModelSpecParse);
}
