#include <cmath>
#include <map>

#include "doctest.h"
#include "oracles.hpp"
#include "rtergm/error.hpp"
#include "rtergm/sampler.hpp"

using namespace rtergm;

namespace {

double mean_of(const std::vector<StatVector>& stats, std::size_t k) {
  double s = 0.0;
  for (const auto& v : stats) s += v[k];
  return s / static_cast<double>(stats.size());
}

}  // namespace

TEST_CASE("rng is portable and seeded") {
  Rng a(1), b(1);
  for (int k = 0; k < 100; ++k) CHECK(a.bits() == b.bits());
  Rng r(42);
  for (int k = 0; k < 1000; ++k) {
    const double u = r.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    CHECK(r.below(7) < 7);
  }
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(5, 3) == derive_seed(5, 3));
}

TEST_CASE("sampler config validation") {
  SamplerConfig c;
  CHECK(c.burn_in_for(10) == 1000);
  CHECK(c.interval_for(10) == 100);
  c.interval = 0;
  CHECK_THROWS_AS(c.validate(), Error);
  c.interval = 1;
  c.sample_size = 0;
  CHECK_THROWS_AS(c.validate(), Error);
}

TEST_CASE("flat target accepts every uniform-dyad proposal") {
  auto nodes = NodeTable::uniform(6);
  Model model(ModelSpec{{TermSpec::edges(), TermSpec::gwesp(0.5)}}, nodes);
  ChainState state(model, DirectedGraph(6));
  Rng rng(3);
  const std::vector<double> theta = {0.0, 0.0};
  for (int k = 0; k < 500; ++k) {
    auto step = mh_step(state, model, theta, Proposal::UniformDyad, rng);
    CHECK(step.acceptance_probability == 1.0);
    CHECK(step.accepted);
  }
}

TEST_CASE("TNT falls through to a uniform dyad on the empty graph") {
  auto nodes = NodeTable::uniform(4);
  Model model(ModelSpec{{TermSpec::edges()}}, nodes);
  ChainState state(model, DirectedGraph(4));
  Rng rng(1);
  const std::vector<double> theta = {-50.0};
  auto step = mh_step(state, model, theta, Proposal::TNT, rng);
  CHECK(step.i != step.j);
  CHECK_FALSE(step.accepted);
  CHECK(state.graph().edge_count() == 0);
}

TEST_CASE("edges-only chain matches the Bernoulli mean") {
  auto nodes = NodeTable::uniform(10);
  Model model(ModelSpec{{TermSpec::edges()}}, nodes);
  SamplerConfig c;
  c.sample_size = 500;
  c.seed = 77;
  const std::vector<double> theta = {std::log(0.1 / 0.9)};
  for (Proposal p : {Proposal::TNT, Proposal::UniformDyad}) {
    c.proposal = p;
    auto stats = simulate_statistics(model, theta, c, DirectedGraph(10));
    REQUIRE(stats.size() == 500);
    // Samples are n^2 steps apart, close to independent; 3 standard errors of Binomial(90, 0.1).
    const double se = std::sqrt(90 * 0.1 * 0.9 / 500.0);
    CHECK(std::abs(mean_of(stats, 0) - 9.0) < 3 * se);
  }
}

TEST_CASE("TNT chain matches exact enumeration on three nodes") {
  const ModelSpec spec{{TermSpec::edges(), TermSpec::gwesp(0.5)}};
  const std::vector<double> theta = {-0.5, 0.3};
  const auto exact = oracle::exact_distribution(3, spec, theta);
  auto nodes = NodeTable::uniform(3);
  Model model(spec, nodes);
  Chain chain(model, theta, DirectedGraph(3), Proposal::TNT, 2011);
  std::vector<double> visits(64, 0.0);
  const int steps = 400000;
  for (int s = 0; s < steps; ++s) {
    chain.advance(1);
    visits[oracle::graph_code(chain.state().graph())] += 1.0;
  }
  double tv = 0.0;
  for (std::size_t k = 0; k < 64; ++k) tv += std::abs(visits[k] / steps - exact[k]);
  CHECK(tv / 2 < 0.02);
}

TEST_CASE("incremental statistics do not drift") {
  std::mt19937_64 gen(5);
  auto nodes = oracle::random_nodes(25, gen);
  const auto spec = ModelSpec::full_role_model();
  Model model(spec, nodes);
  std::vector<double> theta = {-3.0, 0.2, 0.4, 0.5, 0.3, 0.2, 0.6, 0.4, 0.5, -0.3, 0.2, 0.1, 0.1};
  Chain chain(model, theta, oracle::random_graph(25, 0.05, gen), Proposal::TNT, 8);
  chain.advance(50000);
  const auto recomputed = model.statistics(chain.state().graph());
  for (std::size_t k = 0; k < spec.size(); ++k) CHECK(chain.state().stats()[k] == doctest::Approx(recomputed[k]).epsilon(1e-9));
  CHECK(chain.accepted() > 0);
  CHECK(chain.proposed() == 50000);
}

TEST_CASE("same seed gives identical samples") {
  auto nodes = NodeTable::uniform(12);
  const ModelSpec spec{{TermSpec::edges(), TermSpec::gwesp(0.5)}};
  const std::vector<double> theta = {-2.5, 0.4};
  SamplerConfig c;
  c.sample_size = 20;
  auto a = simulate(spec, theta, nodes, c, DirectedGraph(12));
  auto b = simulate(spec, theta, nodes, c, DirectedGraph(12));
  REQUIRE(a.size() == b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(a[k].graph == b[k].graph);
    CHECK(a[k].stats == b[k].stats);
  }
  c.seed += 1;
  auto d = simulate(spec, theta, nodes, c, DirectedGraph(12));
  bool differs = false;
  for (std::size_t k = 0; k < a.size(); ++k) differs = differs || !(a[k].graph == d[k].graph);
  CHECK(differs);
}

TEST_CASE("single sample with one step perturbs a single dyad") {
  auto nodes = NodeTable::uniform(5);
  SamplerConfig c;
  c.burn_in = 0;
  c.interval = 1;
  c.sample_size = 1;
  c.proposal = Proposal::UniformDyad;
  auto s = simulate(ModelSpec{{TermSpec::edges()}}, std::vector<double>{0.0}, nodes, c, DirectedGraph(5));
  REQUIRE(s.size() == 1);
  CHECK(s[0].graph.edge_count() == 1);
}

TEST_CASE("dimension mismatch") {
  auto nodes = NodeTable::uniform(5);
  SamplerConfig c;
  CHECK_THROWS_AS(simulate(ModelSpec{{TermSpec::edges()}}, std::vector<double>{0.0, 1.0}, nodes, c, DirectedGraph(5)),
                  Error);
}

TEST_CASE("positive triadic weight raises the shared-partner statistic") {
  auto nodes = NodeTable::uniform(30);
  SamplerConfig c;
  c.sample_size = 200;
  const ModelSpec spec{{TermSpec::edges(), TermSpec::gwesp(0.5)}};
  Model model(spec, nodes);
  auto base = simulate_statistics(model, std::vector<double>{-3.0, 0.0}, c, DirectedGraph(30));
  // Edge counts are matched by lowering the density coefficient alongside the triadic one.
  auto closure = simulate_statistics(model, std::vector<double>{-3.3, 0.6}, c, DirectedGraph(30));
  const double edges_base = mean_of(base, 0);
  const double edges_closure = mean_of(closure, 0);
  CHECK(mean_of(closure, 1) / edges_closure > mean_of(base, 1) / edges_base);
  CHECK(mean_of(closure, 1) > mean_of(base, 1));
}

TEST_CASE("scenario role counts") {
  auto crowd = RoleCounts::observed(ScenarioKind::CrowdLike);
  CHECK(crowd.organizations == 15);
  CHECK(crowd.leaders == 5);
  CHECK(crowd.influential == 6);
  CHECK(crowd.total() == 1026);
  auto org = RoleCounts::observed(ScenarioKind::OrgLike);
  CHECK(org.organizations == 32);
  CHECK(org.leaders == 24);
  CHECK(org.influential == 0);
  CHECK(org.total() == 684);
  auto small = RoleCounts::scaled(ScenarioKind::CrowdLike, 300);
  CHECK(small.total() == 300);
  CHECK(small.influential >= 3);
  CHECK(small.leaders >= 3);
  CHECK(RoleCounts::scaled(ScenarioKind::OrgLike, 300).influential == 0);
}

TEST_CASE("scenarios are deterministic") {
  auto counts = RoleCounts::scaled(ScenarioKind::CrowdLike, 300);
  auto a = generate_scenario(ScenarioKind::CrowdLike, counts, 9);
  auto b = generate_scenario(ScenarioKind::CrowdLike, counts, 9);
  CHECK(a.graph == b.graph);
  CHECK(a.nodes.role == b.nodes.role);
  CHECK(a.nodes.followers == b.nodes.followers);
  CHECK(a.graph.edge_count() > 0);
}

TEST_CASE("org-like hubs outgrow crowd-like hubs at a similar edge count") {
  const auto org = generate_scenario(ScenarioKind::OrgLike, RoleCounts::scaled(ScenarioKind::OrgLike, 300), 2);
  const auto crowd = generate_scenario(ScenarioKind::CrowdLike, RoleCounts::scaled(ScenarioKind::CrowdLike, 300), 2);
  const double ratio = static_cast<double>(org.graph.edge_count()) / static_cast<double>(crowd.graph.edge_count());
  CHECK(ratio > 0.75);
  CHECK(ratio < 1.33);
  CHECK(max_in_degree(org.graph) > 2 * max_in_degree(crowd.graph));
}

TEST_CASE("all-ordinary scenario is governed by density") {
  RoleCounts counts;
  counts.ordinary = 40;
  auto s = generate_scenario(ScenarioKind::OrgLike, counts, 4);
  for (const auto& t : s.spec.terms) CHECK_FALSE(is_factor_term(t.kind));
  CHECK(s.nodes.count(Role::Ordinary) == 40);
}
