#include <cmath>
#include <map>
#include <sstream>

#include <boost/math/distributions/chi_squared.hpp>
#include <gtest/gtest.h>

#include "lightspan/construction.hpp"
#include "lightspan/graph_io.hpp"
#include "lightspan/paths.hpp"
#include "support/oracles.hpp"

namespace lightspan {
namespace {

GirthGraph cycle_base(std::size_t length) {
  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (NodeId i = 0; i < length; ++i) {
    pairs.emplace_back(i, static_cast<NodeId>((i + 1) % length));
  }
  GirthGraph g;
  g.graph = WeightedGraph::unit(length, pairs);
  g.girth_parameter = (length - 1) / 2;
  g.bipartition = two_colouring(g.graph);
  validate(g);
  return g;
}

GirthGraph edgeless_base(std::size_t n) {
  GirthGraph g;
  g.graph = WeightedGraph(n, {});
  g.bipartition = std::vector<std::uint8_t>(n, 0);
  return g;
}

/// Instance over `base` with hand-picked cluster offsets for each base edge.
EmbeddedInstance manual_instance(const GirthGraph& base, std::size_t k, const Epsilon& eps,
                                 const std::vector<std::pair<std::uint64_t, std::uint64_t>>&
                                     offsets) {
  CycleLayout layout = build_layout(base, k, eps, 0);
  std::iota(layout.cluster_of_node.begin(), layout.cluster_of_node.end(), 0u);
  EmbeddedInstance inst;
  inst.base = base.graph;
  inst.layout = layout;
  std::vector<Edge> edges;
  const std::uint64_t n = layout.cycle_length;
  for (std::uint64_t i = 0; i < n; ++i) {
    edges.push_back(Edge{static_cast<NodeId>(i), static_cast<NodeId>((i + 1) % n), Weight{1}});
  }
  for (EdgeId j = 0; j < base.graph.edge_count(); ++j) {
    const Edge& b = base.graph.edge(j);
    inst.embedded.push_back(EmbeddedEdge{j, static_cast<EdgeId>(edges.size())});
    edges.push_back(Edge{static_cast<NodeId>(layout.cluster_of(b.u).begin + offsets[j].first),
                         static_cast<NodeId>(layout.cluster_of(b.v).begin + offsets[j].second),
                         Weight(eps.inverse())});
  }
  inst.graph = WeightedGraph(n, std::move(edges), ParallelEdges::allow);
  return inst;
}

TEST(Epsilon, ParsingAndValidation) {
  EXPECT_EQ(Epsilon::parse("1/8").inverse(), 8);
  EXPECT_EQ(Epsilon::parse("2/16").inverse(), 8);
  EXPECT_EQ(Epsilon::parse("0.125").inverse(), 8);
  EXPECT_EQ(Epsilon::parse("0.02").inverse(), 50);
  EXPECT_THROW(Epsilon::parse("0.3"), ParameterError);
  EXPECT_THROW(Epsilon::parse("1"), ParameterError);
  EXPECT_THROW(Epsilon::parse("3/8"), ParameterError);
  EXPECT_THROW(Epsilon::parse("abc"), ParameterError);
  EXPECT_THROW(Epsilon::from_inverse(1), ParameterError);
  EXPECT_EQ(Epsilon::from_inverse(4).value(), Weight(1, 4));
}

TEST(SolveEpsilon, DocumentedExamples) {
  EXPECT_EQ(solve_epsilon(1000000, 2, 0, 1.0).inverse(), 50);
  // N^(1/5) = 96 for N = 3^5 * 32^5.
  const std::uint64_t n = 243ull * 33554432ull;
  EXPECT_EQ(solve_epsilon(n, 3, 0, 1.0).inverse(), 32);
}

TEST(SolveEpsilon, GeneralFormReducesToThirdRootForKTwo) {
  // For k = 2, c = 0 the general exponent -(k+2c)/(2k^2+2kc-k) is -2/6.
  for (std::uint64_t n : {1000ull, 27000ull, 1000000ull}) {
    const double general = std::pow(2.0, 2.0 / 3.0) * std::pow(static_cast<double>(n), -2.0 / 6.0);
    const double simple = 2.0 * std::pow(static_cast<double>(n), -1.0 / 3.0);
    EXPECT_NEAR(general / simple, std::pow(2.0, -1.0 / 3.0), 1e-12);
  }
}

TEST(SolveEpsilon, RoundsReciprocalUpAndRejectsLargeEpsilon) {
  const Epsilon e = solve_epsilon(5000, 2, 0, 1.0);  // 2 / 17.09... -> 1/9
  EXPECT_EQ(e.inverse(), 9);
  EXPECT_LE(e.as_double(), 2.0 * std::pow(5000.0, -1.0 / 3.0));
  EXPECT_THROW(solve_epsilon(8, 2, 0, 1.0), ParameterError);
  EXPECT_THROW(solve_epsilon(1000, 1, 0, 1.0), ParameterError);
  const Epsilon c1 = solve_epsilon(1000000, 2, 1, 1.0);
  const double expected = std::pow(2.0, 1.0 * 6.0 / 10.0) * std::pow(1e6, -4.0 / 10.0);
  EXPECT_EQ(c1.inverse(), static_cast<std::int64_t>(std::ceil(1.0 / expected)));
}

TEST(SolveEpsilon, BaseSizeFixedPoint) {
  const std::map<std::uint64_t, std::int64_t> expected{{2, 4}, {3, 6}, {5, 8}, {7, 11}};
  for (const auto& [q, r] : expected) {
    const std::size_t n = 2 * (q * q + q + 1);
    const Epsilon e = solve_epsilon_for_base_size(n, 2, 1.0);
    EXPECT_EQ(e.inverse(), r) << "q=" << q;
    // Minimal: r satisfies 1/r <= 2 (8 r n)^(-1/3), r - 1 does not.
    const auto holds = [&](double rr) { return 1.0 / rr <= 2.0 * std::cbrt(1.0 / (8.0 * rr * n)); };
    EXPECT_TRUE(holds(static_cast<double>(r)));
    EXPECT_FALSE(holds(static_cast<double>(r - 1)));
  }
}

TEST(PlanFromTarget, RebuildsExactTiling) {
  const SizePlan plan = plan_from_target(100000, 2, 1.0);
  EXPECT_EQ(plan.cycle_length % (8 * plan.epsilon.inverse()), 0u);
  EXPECT_EQ(plan.cycle_length, 8 * plan.epsilon.inverse() * plan.base_nodes);
  EXPECT_LE(plan.cycle_length, 100000u);
  EXPECT_THROW(plan_from_target(10, 2, 1.0), ParameterError);
}

TEST(Predictions, DocumentedValues) {
  EXPECT_DOUBLE_EQ(predicted_lightness(1e6, 2, 1.0 / 50), 1e4);
  EXPECT_DOUBLE_EQ(predicted_lightness(1000, 2, 0.25), 0.25 * 1000 / 2);
  EXPECT_NEAR(predicted_lightness(2000, 3, 0.1) / predicted_lightness(1000, 3, 0.1),
              std::sqrt(2.0), 1e-12);
  EXPECT_THROW(predicted_lightness(10, 1, 0.1), ParameterError);
  EXPECT_NEAR(expected_kill_bound(2, 0, 10, 0.1, 1.0), 100 * 1e-4 / 24, 1e-15);
  EXPECT_LT(expected_kill_bound(2, 0, 10, 1e-6, 1.0), 1e-20);
  EXPECT_DOUBLE_EQ(geometric_kill_sum(2, Epsilon::from_inverse(4)), 0.25);
  EXPECT_DOUBLE_EQ(geometric_kill_sum(2, Epsilon::from_inverse(2)), 0.25 + 1.0 / 16);
  EXPECT_LE(geometric_kill_sum(40, Epsilon::from_inverse(2)), 0.5);
  EXPECT_EQ(max_light_excess(2, Epsilon::from_inverse(3)), 0u);
  EXPECT_EQ(max_light_excess(3, Epsilon::from_inverse(2)), 1u);
}

TEST(Layout, DocumentedSizes) {
  const CycleLayout a = build_layout(cycle_base(3 + 1), 2, Epsilon::from_inverse(2), 1);
  EXPECT_EQ(a.cycle_length, 64u);
  const CycleLayout b = build_layout(edgeless_base(3), 2, Epsilon::from_inverse(2), 1);
  EXPECT_EQ(b.cycle_length, 48u);
  EXPECT_EQ(b.cluster_size, 4u);
  EXPECT_EQ(b.spacer_size, 12u);
  const CycleLayout c = build_layout(edgeless_base(10), 2, Epsilon::from_inverse(4), 1);
  EXPECT_EQ(c.cycle_length, 320u);
  EXPECT_EQ(c.cluster_size, 8u);
  EXPECT_EQ(c.spacer_size, 24u);
}

TEST(Layout, ClustersAndSpacersTileTheCycle) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const CycleLayout l = build_layout(edgeless_base(7), 3, Epsilon::from_inverse(5), seed);
    std::uint64_t covered = 0;
    for (std::size_t i = 0; i < l.cluster_count(); ++i) {
      EXPECT_EQ(l.cluster(i).begin, covered);
      covered += l.cluster(i).length;
      EXPECT_EQ(l.spacer(i).begin, covered);
      covered += l.spacer(i).length;
    }
    EXPECT_EQ(covered, l.cycle_length);
    std::vector<std::uint32_t> sorted = l.cluster_of_node;
    std::sort(sorted.begin(), sorted.end());
    for (std::uint32_t i = 0; i < sorted.size(); ++i) EXPECT_EQ(sorted[i], i);
    for (std::uint64_t x = 0; x < l.cycle_length; ++x) {
      const auto at = l.cluster_at(x);
      if (at) EXPECT_TRUE(l.cluster(*at).contains(x));
    }
  }
}

TEST(Embedding, EdgelessBaseGivesTheUnitCycle) {
  const GirthGraph base = edgeless_base(3);
  const auto inst = embed_edges(base, build_layout(base, 2, Epsilon::from_inverse(2), 1), 1);
  EXPECT_EQ(inst.graph.edge_count(), 48u);
  EXPECT_EQ(lightness(inst.graph), Weight(48, 47));
}

TEST(Embedding, EndpointsAndTotalWeight) {
  const GirthGraph base = gen_projective_plane_incidence(3);
  const Epsilon eps = Epsilon::from_inverse(6);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto layout = build_layout(base, 2, eps, seed);
    const auto inst = embed_edges(base, layout, seed);
    EXPECT_EQ(inst.graph.total_weight(),
              Weight(static_cast<std::int64_t>(layout.cycle_length)) +
                  Weight(6 * static_cast<std::int64_t>(base.graph.edge_count())));
    for (const EmbeddedEdge& m : inst.embedded) {
      const Edge& h = inst.graph.edge(m.graph_edge);
      const Edge& b = base.graph.edge(m.base_edge);
      EXPECT_TRUE(layout.cluster_of(b.u).contains(h.u));
      EXPECT_TRUE(layout.cluster_of(b.v).contains(h.v));
      EXPECT_EQ(h.weight, Weight{6});
    }
  }
}

TEST(Embedding, EndpointMarginalIsUniform) {
  GirthGraph base;
  base.graph = WeightedGraph::unit(2, std::vector<std::pair<NodeId, NodeId>>{{0, 1}});
  const Epsilon eps = Epsilon::from_inverse(5);
  const CycleLayout layout = build_layout(base, 2, eps, 3);
  const std::uint64_t size = layout.cluster_size;
  std::vector<double> counts(size, 0.0);
  Rng rng(99, streams::kEmbedding);
  const int draws = 10000;
  for (int i = 0; i < draws; ++i) {
    const auto ends = sample_embedding(base.graph, layout, rng);
    counts[ends[0].first - layout.cluster_of(0).begin] += 1;
  }
  double chi2 = 0;
  const double expect = static_cast<double>(draws) / static_cast<double>(size);
  for (double c : counts) chi2 += (c - expect) * (c - expect) / expect;
  const boost::math::chi_squared dist(static_cast<double>(size - 1));
  EXPECT_GT(boost::math::cdf(boost::math::complement(dist, chi2)), 0.01) << "chi2 " << chi2;
}

TEST(CorrespondingCycle, SharedEndpointsHaveNoSpanningCycleEdges) {
  const GirthGraph base = cycle_base(4);
  const auto inst = manual_instance(base, 2, Epsilon::from_inverse(4),
                                    {{2, 2}, {2, 2}, {2, 2}, {2, 2}});
  const Cycle x = Cycle::from_edges(base.graph, {0, 1, 2, 3});
  const auto cc = corresponding_cycle(inst, x);
  EXPECT_EQ(cc.sc_edge_count, 0u);
  EXPECT_EQ(cc.normalized_weight, Weight{4});
  EXPECT_EQ(cc.cycle.size(), 4u);
}

TEST(CorrespondingCycle, HandBuiltArcLengths) {
  // Base 4-cycle 0-1-2-3; edge j joins j and j+1. Node 1 sees edge 0 arrive
  // at offset 0 and edge 1 leave at offset 3; node 2 sees edge 1 arrive at
  // offset 7 and edge 2 leave at offset 2.
  const GirthGraph base = cycle_base(4);
  const Epsilon eps = Epsilon::from_inverse(4);
  const auto inst = manual_instance(base, 2, eps, {{1, 0}, {3, 7}, {2, 4}, {4, 1}});
  const auto cc = corresponding_cycle(inst, Cycle::from_edges(base.graph, {0, 1, 2, 3}));
  EXPECT_EQ(cc.sc_edge_count, 8u);
  EXPECT_EQ(cc.normalized_weight, Weight{4} + Weight(8) * eps.value());
  Weight total{0};
  for (EdgeId e : cc.cycle.edges()) total += inst.graph.edge(e).weight;
  EXPECT_EQ(total, Weight(4 * 4 + 8));
}

TEST(CorrespondingCycle, ArcLengthIsBoundedByClusterSize) {
  const GirthGraph base = gen_complete_bipartite(3);
  const Epsilon eps = Epsilon::from_inverse(3);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto inst = embed_edges(base, build_layout(base, 2, eps, seed), seed);
    for (const Cycle& x : enumerate_cycles(base.graph, 4)) {
      const auto cc = corresponding_cycle(inst, x);
      EXPECT_LE(cc.sc_edge_count, x.size() * (2 * 3 - 1));
      EXPECT_EQ(cc.normalized_weight,
                Weight(static_cast<std::int64_t>(x.size())) +
                    Weight(static_cast<std::int64_t>(cc.sc_edge_count)) * eps.value());
    }
  }
}

TEST(CorrespondingCycle, RejectsForeignCycles) {
  const GirthGraph base = cycle_base(4);
  const auto inst = manual_instance(base, 2, Epsilon::from_inverse(4),
                                    {{0, 0}, {0, 0}, {0, 0}, {0, 0}});
  const GirthGraph other = cycle_base(6);
  const Cycle foreign = Cycle::from_edges(other.graph, {0, 1, 2, 3, 4, 5});
  EXPECT_THROW(corresponding_cycle(inst, foreign), StructuralError);
}

TEST(Prune, BicliqueCertificates) {
  const GirthGraph base = gen_complete_bipartite(2);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    ConstructionParams params;
    params.epsilon = Epsilon::from_inverse(8);
    params.seed = seed;
    const auto out = build_instance(base, params);
    EXPECT_EQ(out.report.lengths_examined, std::vector<std::size_t>{4});
    EXPECT_TRUE(out.report.certificate.exceeds(Weight(9, 2)));
    const auto h = out.pruned.materialize();
    EXPECT_GT(*oracle::weighted_girth(h.graph), Weight(9, 2));
  }
}

TEST(Prune, LargerEpsilonExaminesLongerCycles) {
  ConstructionParams params;
  params.k = 3;
  params.epsilon = Epsilon::from_inverse(2);
  GirthGraph base = gen_projective_plane_incidence(2);
  const auto out = build_instance(base, params);
  EXPECT_EQ(out.report.lengths_examined, (std::vector<std::size_t>{6, 8}));
  EXPECT_TRUE(out.report.certificate.exceeds(out.pruned.girth_threshold()));
}

TEST(Prune, ParallelEmbeddedPairIsRemovedByCertificatePass) {
  GirthGraph base;
  base.graph = WeightedGraph(2, {Edge{0, 1, Weight{1}}, Edge{0, 1, Weight{1}}},
                             ParallelEdges::allow);
  base.bipartition = std::vector<std::uint8_t>{0, 1};
  const auto inst = manual_instance(base, 2, Epsilon::from_inverse(4), {{3, 5}, {3, 5}});
  const PruneResult r = prune_light_cycles(inst);
  EXPECT_EQ(r.report.parallel_pairs_removed, 1u);
  EXPECT_EQ(r.instance.pruned, (std::vector<EdgeId>{64, 65}));
  EXPECT_DOUBLE_EQ(surviving_fraction(r.instance), 0.0);
}

TEST(Prune, UncoveredLightCycleRaisesWithWitness) {
  // An embedded edge inside a single cluster is not the image of any base
  // cycle, and closes a light cycle with the in-cluster path.
  const GirthGraph base = edgeless_base(2);
  EmbeddedInstance inst = manual_instance(base, 2, Epsilon::from_inverse(4), {});
  std::vector<Edge> edges(inst.graph.edges().begin(), inst.graph.edges().end());
  edges.push_back(Edge{0, 5, Weight{4}});
  inst.graph = WeightedGraph(inst.graph.node_count(), std::move(edges), ParallelEdges::allow);
  try {
    prune_light_cycles(inst);
    FAIL() << "expected CertificationError";
  } catch (const CertificationError& e) {
    EXPECT_EQ(e.value(), Weight(9, 4));
    EXPECT_EQ(normalized_weight(e.witness()), e.value());
  }
}

TEST(Prune, SurvivingFractionEdgeCases) {
  GirthGraph base;
  base.graph = WeightedGraph::unit(2, std::vector<std::pair<NodeId, NodeId>>{{0, 1}});
  ConstructionParams params;
  params.epsilon = Epsilon::from_inverse(4);
  params.k = 2;
  base.girth_parameter = 1;
  base.bipartition = std::vector<std::uint8_t>{0, 1};
  const auto out = build_instance(base, params);
  EXPECT_DOUBLE_EQ(surviving_fraction(out.pruned), 1.0);
  EXPECT_THROW(surviving_fraction(embed_edges(edgeless_base(2),
                                              build_layout(edgeless_base(2), 2,
                                                           Epsilon::from_inverse(2), 0),
                                              0)),
               ParameterError);
}

TEST(Prune, ParameterChecks) {
  ConstructionParams params;
  params.k = 3;
  params.epsilon = Epsilon::from_inverse(4);
  EXPECT_THROW(build_instance(gen_complete_bipartite(3), params), ParameterError);
  params.k = 1;
  EXPECT_THROW(build_instance(gen_complete_bipartite(3), params), ParameterError);
  params.k = 2;
  std::vector<std::pair<NodeId, NodeId>> triangle{{0, 1}, {1, 2}, {2, 0}};
  GirthGraph odd;
  odd.graph = WeightedGraph::unit(3, triangle);
  EXPECT_THROW(build_instance(odd, params), ParameterError);
}

TEST(LightCycleScan, MatchesExhaustiveEnumeration) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const GirthGraph base = gen_complete_bipartite(2);
    const Epsilon eps = Epsilon::from_inverse(2);
    const auto inst = embed_edges(base, build_layout(base, 2, eps, seed), seed);
    const Weight threshold = inst.girth_threshold();
    const auto found = scan_light_cycles(inst, threshold);
    std::size_t expected = 0;
    for (const auto& cyc : oracle::all_cycles(inst.graph)) {
      if (oracle::cycle_normalized_weight(inst.graph, cyc) <= threshold) ++expected;
    }
    EXPECT_EQ(found.size(), expected) << "seed " << seed;
  }
}

TEST(LightCycleScan, SpacerEdgesMakeCyclesHeavy) {
  // Any cycle that walks through a spacer weighs at least 3k in units of
  // the heaviest edge.
  const GirthGraph base = gen_complete_bipartite(3);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    for (std::int64_t r : {2, 3}) {
      const auto inst =
          embed_edges(base, build_layout(base, 2, Epsilon::from_inverse(r), seed), seed);
      for (const auto& light : scan_light_cycles(inst, Weight(6) - Weight(1, 100))) {
        for (EdgeId e : light.cycle.edges()) {
          if (!inst.is_sc_edge(e)) continue;
          EXPECT_TRUE(inst.layout.cluster_at(inst.graph.edge(e).u) &&
                      inst.layout.cluster_at(inst.graph.edge(e).v))
              << "seed " << seed << " edge " << e;
        }
      }
    }
  }
}

TEST(Serialization, RoundTripIsBitExact) {
  const GirthGraph base = gen_complete_bipartite(3);
  ConstructionParams params;
  params.epsilon = Epsilon::from_inverse(2);
  params.seed = 4;
  const auto out = build_instance(base, params);
  ASSERT_FALSE(out.pruned.pruned.empty());
  std::ostringstream graph_text;
  write_graph(graph_text, out.pruned.graph);
  const std::string layout = layout_text(out.pruned);
  std::istringstream g_in(graph_text.str());
  std::istringstream l_in(layout);
  const EmbeddedInstance back = read_instance(g_in, l_in);
  EXPECT_EQ(back, out.pruned);
  EXPECT_EQ(layout_text(back), layout);
}

TEST(Serialization, CorruptSidecarsAreRejected) {
  const GirthGraph base = gen_complete_bipartite(2);
  ConstructionParams params;
  params.epsilon = Epsilon::from_inverse(4);
  const auto out = build_instance(base, params);
  std::ostringstream graph_text;
  write_graph(graph_text, out.pruned.graph);
  const std::string layout = layout_text(out.pruned);

  std::string wrong_key = layout;
  wrong_key.replace(wrong_key.find("cluster_size"), 12, "cluster_sise");
  std::istringstream g1(graph_text.str());
  std::istringstream l1(wrong_key);
  EXPECT_THROW(read_instance(g1, l1), ParseError);

  std::string bad_assignment = layout;
  const auto at = bad_assignment.find("assignment");
  bad_assignment.replace(at, bad_assignment.find('\n', at) - at, "assignment 0 0 1 2");
  std::istringstream g2(graph_text.str());
  std::istringstream l2(bad_assignment);
  EXPECT_THROW(read_instance(g2, l2), StructuralError);
}

}  // namespace
}  // namespace lightspan
