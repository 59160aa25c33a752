#include <cmath>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "lightspan/graph_io.hpp"
#include "lightspan/harness/base_spec.hpp"
#include "lightspan/harness/commands.hpp"
#include "support/oracles.hpp"

namespace lightspan::harness {
namespace {

namespace fs = std::filesystem;

class HarnessTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    root_ = fs::temp_directory_path() /
            (std::string("lightspan-harness-") + info->test_suite_name() + "-" + info->name());
    fs::remove_all(root_);
    fs::create_directories(root_);
  }
  void TearDown() override { fs::remove_all(root_); }

  fs::path dir(const std::string& name) const { return root_ / name; }

  static std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

  fs::path root_;
};

ExperimentConfig config(std::initializer_list<std::pair<std::string, std::string>> kv) {
  ExperimentConfig cfg;
  for (const auto& [k, v] : kv) cfg.set(k, v);
  return cfg;
}

TEST(Config, ParsesKeyValueText) {
  ExperimentConfig cfg;
  std::istringstream in(
      "# comment\n"
      "schema_version = 1\n"
      "k = 3\n"
      "epsilon = 1/8, 0.25\n"
      "base = pg2:3\n"
      "seeds = 1..3,7\n"
      "epsilon_constant = 2\n"
      "format = csv\n");
  cfg.load(in);
  cfg.validate();
  EXPECT_EQ(cfg.k, 3u);
  ASSERT_EQ(cfg.epsilons.size(), 2u);
  EXPECT_EQ(cfg.epsilons[1].inverse(), 4);
  EXPECT_EQ(cfg.seeds, (std::vector<std::uint64_t>{1, 2, 3, 7}));
  EXPECT_DOUBLE_EQ(cfg.knobs.epsilon_constant, 2.0);
  EXPECT_TRUE(cfg.wants_csv());
  EXPECT_FALSE(cfg.wants_json());
}

TEST(Config, RejectsUnknownKeysByName) {
  ExperimentConfig cfg;
  std::istringstream in("k = 2\nepsilonn = 1/8\n");
  try {
    cfg.load(in);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("epsilonn"), std::string::npos);
    EXPECT_EQ(exit_code_for(e), kExitConfig);
  }
}

TEST(Config, RejectsBadValuesAndCombinations) {
  ExperimentConfig cfg;
  EXPECT_THROW(cfg.set("k", "two"), ConfigError);
  EXPECT_THROW(cfg.set("epsilon", "0.3"), ConfigError);
  EXPECT_THROW(cfg.set("format", "xml"), ConfigError);
  EXPECT_THROW(cfg.set("seeds", "5..2"), ConfigError);
  std::istringstream no_equals("k 2\n");
  EXPECT_THROW(cfg.load(no_equals), ConfigError);

  ExperimentConfig both = config({{"epsilon", "1/8"}, {"n_target", "1000"}});
  EXPECT_THROW(both.validate(), ConfigError);
  ExperimentConfig schema = config({{"schema_version", "2"}});
  EXPECT_THROW(schema.validate(), ConfigError);
  ExperimentConfig k1 = config({{"k", "1"}});
  EXPECT_THROW(k1.validate(), ConfigError);
}

TEST(Config, EchoIsStableAndExcludesRunPlumbing) {
  ExperimentConfig a = config({{"base", "pg2:2"}, {"epsilon", "1/4"}, {"threads", "8"}});
  ExperimentConfig b = config({{"base", "pg2:2"}, {"epsilon", "0.25"}, {"out", "/tmp/x"}});
  EXPECT_EQ(a.echo(), b.echo());
  ExperimentConfig reloaded;
  std::istringstream in(a.echo());
  reloaded.load(in);
  EXPECT_EQ(reloaded.echo(), a.echo());
}

TEST(Config, BaseListsKeepSpecArguments) {
  ExperimentConfig cfg = config({{"base", "pg2:2, random-alteration:60,2,1.5 ,biclique:3"}});
  EXPECT_EQ(cfg.bases,
            (std::vector<std::string>{"pg2:2", "random-alteration:60,2,1.5", "biclique:3"}));
}

TEST(Config, SeedLists) {
  EXPECT_EQ(parse_seed_list("4"), (std::vector<std::uint64_t>{4}));
  EXPECT_EQ(parse_seed_list("1..3, 9"), (std::vector<std::uint64_t>{1, 2, 3, 9}));
  EXPECT_THROW(parse_seed_list("x"), ConfigError);
}

TEST(BaseSpecs, ParseAndBuild) {
  EXPECT_EQ(parse_base_spec("pg2:3").to_string(), "pg2:3");
  EXPECT_THROW(parse_base_spec("nope:3"), ConfigError);
  EXPECT_THROW(parse_base_spec("pg2"), ConfigError);
  EXPECT_THROW(make_base(parse_base_spec("biclique:x"), 1), ConfigError);
  EXPECT_EQ(make_base(parse_base_spec("pg2:3"), 1).graph.node_count(), 26u);
  EXPECT_EQ(make_base(parse_base_spec("biclique:4"), 1).graph.edge_count(), 16u);
  const GirthGraph c = make_base(parse_base_spec("cycle:8"), 1);
  EXPECT_EQ(c.graph.edge_count(), 8u);
  EXPECT_EQ(c.girth_parameter, 3u);
  EXPECT_THROW(make_base(parse_base_spec("pg2:4"), 1), ConfigError);
  const GirthGraph r = make_base(parse_base_spec("random-alteration:60,2"), 3);
  EXPECT_TRUE(r.bipartition.has_value());
}

TEST_F(HarnessTest, GenerateWritesRoundTrippableFiles) {
  ExperimentConfig cfg =
      config({{"base", "biclique:4"}, {"epsilon", "1/8"}, {"seeds", "1"}});
  cfg.out_dir = dir("gen");
  const GenerateResult r = cmd_generate(cfg);
  for (const char* name : {"base.graph", "base.json", "instance.graph", "embedded.layout",
                           "pruned.layout", "pruned.graph", "summary.json"}) {
    EXPECT_TRUE(fs::exists(dir("gen") / name)) << name;
  }
  const EmbeddedInstance embedded =
      load_instance(dir("gen") / "instance.graph", dir("gen") / "embedded.layout");
  const EmbeddedInstance pruned =
      load_instance(dir("gen") / "instance.graph", dir("gen") / "pruned.layout");
  EXPECT_EQ(embedded, r.outcome.embedded);
  EXPECT_EQ(pruned, r.outcome.pruned);
  EXPECT_EQ(load_graph(dir("gen") / "pruned.graph"), pruned.materialize().graph);
  EXPECT_EQ(load_graph(dir("gen") / "base.graph").edge_count(), 16u);
  EXPECT_FALSE(fs::exists(dir("gen") / "witness.json"));
}

TEST_F(HarnessTest, GenerateIsByteIdenticalAcrossRuns) {
  for (const char* run : {"a", "b"}) {
    ExperimentConfig cfg = config({{"base", "pg2:3"}, {"seeds", "5"}});
    cfg.out_dir = dir(run);
    cmd_generate(cfg);
  }
  std::size_t files = 0;
  for (const auto& entry : fs::directory_iterator(dir("a"))) {
    const auto name = entry.path().filename();
    EXPECT_EQ(slurp(entry.path()), slurp(dir("b") / name)) << name;
    ++files;
  }
  EXPECT_EQ(files, 7u);
}

TEST_F(HarnessTest, GenerateRejectsMultiPointConfigsWithoutWriting) {
  ExperimentConfig cfg = config({{"base", "pg2:2"}, {"epsilon", "1/4,1/8"}});
  cfg.out_dir = dir("multi");
  EXPECT_THROW(cmd_generate(cfg), ConfigError);
  ExperimentConfig seeds = config({{"base", "pg2:2"}, {"seeds", "1,2"}});
  seeds.out_dir = dir("multi");
  EXPECT_THROW(cmd_generate(seeds), ConfigError);
  EXPECT_FALSE(fs::exists(dir("multi")));
}

TEST_F(HarnessTest, VerifyPassesOnPrunedAndFailsWithARestoredEdge) {
  ExperimentConfig gen = config({{"base", "biclique:3"}, {"epsilon", "1/2"}, {"seeds", "4"}});
  gen.out_dir = dir("gen");
  const GenerateResult r = cmd_generate(gen);
  const EmbeddedInstance& h = r.outcome.pruned;
  ASSERT_FALSE(h.pruned.empty());

  ExperimentConfig ok = config({{"epsilon", "1/2"}});
  ok.instance = (dir("gen") / "pruned.graph").string();
  const VerifyResult pass = cmd_verify(ok);
  EXPECT_TRUE(pass.passed);
  EXPECT_EQ(pass.threshold, Weight{6});
  EXPECT_EQ(pass.certificate.value, r.outcome.report.certificate.value);

  // Pruning removes every edge of a light cycle, so one restored edge is not
  // enough; put pruned edges back in order until a light cycle reappears.
  const auto mat = h.materialize();
  std::vector<Edge> edges(mat.graph.edges().begin(), mat.graph.edges().end());
  std::optional<WeightedGraph> restored;
  for (EdgeId e : h.pruned) {
    edges.push_back(h.graph.edge(e));
    WeightedGraph candidate(mat.graph.node_count(), edges, ParallelEdges::allow);
    const auto girth = oracle::weighted_girth(candidate);
    if (girth && *girth <= Weight{6}) {
      restored = std::move(candidate);
      break;
    }
  }
  ASSERT_TRUE(restored.has_value());
  save_graph(dir("restored.graph"), *restored);
  ExperimentConfig bad = config({{"epsilon", "1/2"}});
  bad.instance = dir("restored.graph").string();
  const VerifyResult fail = cmd_verify(bad);
  EXPECT_FALSE(fail.passed);
  ASSERT_TRUE(fail.certificate.value && fail.certificate.witness);
  EXPECT_LE(*fail.certificate.value, Weight{6});
  EXPECT_EQ(*fail.certificate.value, *oracle::weighted_girth(*restored));
  EXPECT_NE(fail.report_json.find("\"passed\": false"), std::string::npos);
  EXPECT_NE(fail.report_json.find("\"witness\": ["), std::string::npos);
}

TEST_F(HarnessTest, VerifyUnitCycleAndErrors) {
  save_graph(dir("c.graph"), gen_cycle(40).graph);
  ExperimentConfig cfg = config({{"epsilon", "1/4"}});
  cfg.instance = dir("c.graph").string();
  const VerifyResult r = cmd_verify(cfg);
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.certificate.value, std::optional<Weight>(Weight{40}));

  ExperimentConfig none = config({{"epsilon", "1/4"}});
  EXPECT_THROW(cmd_verify(none), ConfigError);
  ExperimentConfig two = config({{"epsilon", "1/4,1/8"}});
  two.instance = cfg.instance;
  EXPECT_THROW(cmd_verify(two), ConfigError);
  std::ofstream(dir("junk.graph")) << "not a graph\n";
  ExperimentConfig junk = config({{"epsilon", "1/4"}});
  junk.instance = dir("junk.graph").string();
  EXPECT_THROW(cmd_verify(junk), ConfigError);
}

TEST_F(HarnessTest, SweepRowsAndReverification) {
  ExperimentConfig cfg =
      config({{"base", "pg2:2,biclique:3"}, {"epsilon", "1/4,1/2"}, {"seeds", "1..3"}});
  cfg.out_dir = dir("sweep");
  const SweepResult r = cmd_sweep(cfg);
  ASSERT_EQ(r.rows.rows.size(), 2u * 2u * 3u);
  for (std::size_t i = 0; i < r.rows.rows.size(); ++i) {
    const Json& row = r.rows.rows[i];
    EXPECT_EQ(row["grid_index"], i / 3);
    EXPECT_EQ(row["status"], "ok");
    EXPECT_EQ(row["certificate_ok"], true);
  }
  EXPECT_TRUE(fs::exists(dir("sweep") / "sweep.csv"));
  EXPECT_TRUE(fs::exists(dir("sweep") / "sweep.json"));
  EXPECT_TRUE(fs::exists(dir("sweep") / "timing.csv"));
  EXPECT_EQ(r.csv.substr(0, r.csv.find('\n')),
            "grid_index,seed,base,k,n,N,epsilon,epsilon_value,base_edges,pruned_edges,"
            "surviving_fraction,light_cycles,lightness,predicted_lightness,gamma_estimate,"
            "upper_bound_lightness,weighted_girth,certificate_ok,collapse,status,error");

  // Re-verify one row from scratch.
  const Json& row = r.rows.rows[4];
  ExperimentConfig gen = config({{"base", row["base"].get<std::string>()},
                                 {"epsilon", row["epsilon"].get<std::string>()},
                                 {"seeds", std::to_string(row["seed"].get<std::uint64_t>())}});
  gen.out_dir = dir("one");
  cmd_generate(gen);
  ExperimentConfig ver = config({{"epsilon", row["epsilon"].get<std::string>()}});
  ver.instance = (dir("one") / "pruned.graph").string();
  const VerifyResult v = cmd_verify(ver);
  EXPECT_TRUE(v.passed);
  EXPECT_EQ(format_weight(*v.certificate.value), row["weighted_girth"].get<std::string>());
}

TEST_F(HarnessTest, SweepWithoutSeedsIsEmpty) {
  ExperimentConfig cfg = config({{"base", "pg2:2"}});
  cfg.seeds.clear();
  cfg.out_dir = dir("empty");
  const SweepResult r = cmd_sweep(cfg);
  EXPECT_TRUE(r.rows.rows.empty());
  EXPECT_EQ(std::count(r.csv.begin(), r.csv.end(), '\n'), 1);
  EXPECT_TRUE(r.aggregate["slope_lightness_vs_N"].is_null());
}

TEST_F(HarnessTest, SweepRecordsFailuresAsRows) {
  // k = 3 needs girth > 4 in the base; K_{3,3} has girth 4.
  ExperimentConfig cfg =
      config({{"k", "3"}, {"base", "biclique:3,pg2:2"}, {"epsilon", "1/2"}, {"seeds", "1"}});
  cfg.out_dir = dir("fail");
  const SweepResult r = cmd_sweep(cfg);
  ASSERT_EQ(r.rows.rows.size(), 2u);
  EXPECT_EQ(r.rows.rows[0]["status"], "parameter");
  EXPECT_FALSE(r.rows.rows[0]["error"].get<std::string>().empty());
  EXPECT_EQ(r.rows.rows[1]["status"], "ok");
}

TEST_F(HarnessTest, SweepOutputDoesNotDependOnThreadCount) {
  std::string first;
  for (const char* threads : {"1", "4"}) {
    ExperimentConfig cfg = config({{"base", "pg2:2,pg2:3"},
                                   {"epsilon", "1/8,1/4,1/2"},
                                   {"seeds", "1..4"},
                                   {"threads", threads}});
    cfg.out_dir = dir(std::string("t") + threads);
    const SweepResult r = cmd_sweep(cfg);
    if (first.empty()) {
      first = r.json;
    } else {
      EXPECT_EQ(r.json, first);
      EXPECT_EQ(slurp(dir("t1") / "sweep.csv"), slurp(dir("t4") / "sweep.csv"));
    }
  }
}

TEST(MonteCarlo, TinyEpsilonNeverProducesLightCycles) {
  // For k = 2, c = 0 the four in-cluster arcs must sum to at most 4, which
  // needs every endpoint pair to land within distance 4 of each other.
  const MonteCarloPoint p = estimate_light_probability(2, 0, Epsilon::from_inverse(100000), 2000, 1);
  EXPECT_EQ(p.hits, 0u);
  EXPECT_EQ(p.probability, 0.0);
  EXPECT_EQ(p.wilson_lo, 0.0);
}

TEST(MonteCarlo, MatchesBruteForceOnTheLargestEpsilon) {
  // epsilon = 1/2, k = 2: clusters of 4 nodes. Enumerate all 4^8 endpoint
  // placements of a 4-cycle and count the light ones.
  const std::int64_t r = 2;
  const std::int64_t size = 2 * r;
  std::uint64_t light = 0;
  std::uint64_t total = 0;
  std::array<std::int64_t, 8> pos{};
  const auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == pos.size()) {
      std::int64_t sigma = 0;
      // Node j is entered by edge j - 1 (arrival) and left by edge j.
      for (std::size_t j = 0; j < 4; ++j) {
        sigma += std::abs(pos[2 * j] - pos[(2 * j + 7) % 8]);
      }
      ++total;
      if (4 * r + sigma <= 4 * (r + 1)) ++light;
      return;
    }
    for (std::int64_t x = 0; x < size; ++x) {
      pos[i] = x;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  const double exact = static_cast<double>(light) / static_cast<double>(total);
  const MonteCarloPoint p = estimate_light_probability(2, 0, Epsilon::from_inverse(r), 200000, 7);
  EXPECT_GT(exact, 0.0);
  EXPECT_LE(p.wilson_lo, exact);
  EXPECT_GE(p.wilson_hi, exact);
}

TEST(MonteCarlo, ReportFields) {
  const std::vector<Epsilon> grid{Epsilon::from_inverse(2), Epsilon::from_inverse(3),
                                  Epsilon::from_inverse(4)};
  const MonteCarloReport a = run_montecarlo(2, 0, grid, 20000, 3, 1);
  const MonteCarloReport b = run_montecarlo(2, 0, grid, 20000, 3, 3);
  ASSERT_EQ(a.points.size(), 3u);
  EXPECT_EQ(a.length, 4u);
  EXPECT_DOUBLE_EQ(a.derivation_constant, 4096.0);
  double fitted = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(a.points[i].hits, b.points[i].hits);
    const auto& p = a.points[i];
    EXPECT_DOUBLE_EQ(p.shape, std::pow(p.epsilon.as_double(), 4) / 24);
    EXPECT_DOUBLE_EQ(p.scaled, p.probability / p.shape);
    EXPECT_DOUBLE_EQ(p.derived_bound, light_cycle_probability_bound(4, p.epsilon.as_double()));
    fitted = std::max(fitted, p.scaled);
  }
  EXPECT_DOUBLE_EQ(a.fitted_constant, fitted);
  EXPECT_TRUE(a.slope.has_value());
}

TEST(Statistics, WilsonWidthShrinksBySqrtTwo) {
  const auto width = [](std::uint64_t hits, std::uint64_t n) {
    const WilsonInterval w = wilson_interval(hits, n);
    return w.hi - w.lo;
  };
  EXPECT_NEAR(width(2000, 20000) / width(4000, 40000), std::sqrt(2.0), 0.01);
  const WilsonInterval zero = wilson_interval(0, 1000);
  EXPECT_EQ(zero.lo, 0.0);
  EXPECT_GT(zero.hi, 0.0);
  EXPECT_LT(zero.hi, 0.01);
}

TEST(Statistics, SlopeAndRankCorrelation) {
  EXPECT_NEAR(*log_log_slope({1, 2, 4, 8}, {3, 12, 48, 192}), 2.0, 1e-12);
  EXPECT_FALSE(log_log_slope({2, 2}, {1, 5}).has_value());
  EXPECT_NEAR(*spearman({1, 2, 3, 4}, {10, 8, 3, 1}), -1.0, 1e-12);
  EXPECT_NEAR(*spearman({1, 2, 3}, {1, 3, 2}), 0.5, 1e-12);
  EXPECT_FALSE(spearman({1, 2, 3}, {4, 4, 4}).has_value());
  // Tied ranks 1, 2.5, 2.5, 4 against 1..4.
  EXPECT_NEAR(*spearman({1, 2, 3, 4}, {1, 2, 2, 3}), std::sqrt(0.9), 1e-12);
}

TEST(Reports, CsvEscapingAndNulls) {
  Table t;
  t.columns = {"a", "b", "c"};
  t.rows.push_back(Json{{"a", "x,y"}, {"b", nullptr}, {"c", 0.1}});
  t.rows.push_back(Json{{"a", "q\"t"}, {"c", 3}});
  EXPECT_EQ(t.to_csv(), "a,b,c\n\"x,y\",,0.1\n\"q\"\"t\",,3\n");
  EXPECT_EQ(t.to_json().size(), 2u);
}

TEST_F(HarnessTest, MonteCarloCommandChecksTrialsAndWrites) {
  ExperimentConfig small = config({{"epsilon", "1/4"}, {"trials", "999"}});
  small.out_dir = dir("mc");
  EXPECT_THROW(cmd_montecarlo(small), ConfigError);
  ExperimentConfig cfg = config({{"epsilon", "1/2,1/4"}, {"trials", "5000"}});
  cfg.out_dir = dir("mc");
  const MonteCarloResult r = cmd_montecarlo(cfg);
  EXPECT_EQ(r.report.points.size(), 2u);
  EXPECT_TRUE(fs::exists(dir("mc") / "montecarlo.csv"));
  EXPECT_TRUE(fs::exists(dir("mc") / "montecarlo.json"));
}

TEST_F(HarnessTest, CompareKeepsEveryEdgeOfCertifiedInstances) {
  ExperimentConfig cfg =
      config({{"base", "pg2:2,biclique:3"}, {"epsilon", "1/4,1/2"}, {"seeds", "1,2"}});
  cfg.out_dir = dir("cmp");
  const CompareResult r = cmd_compare(cfg);
  ASSERT_EQ(r.rows.rows.size(), 8u);
  for (const Json& row : r.rows.rows) {
    EXPECT_EQ(row["kept_fraction_h"], 1.0);
    // The plane has girth 6 > 2k; K_{3,3} has girth 4 and loses edges at t = 3.
    if (row["base"] == "pg2:2") {
      EXPECT_EQ(row["kept_fraction_base"], 1.0);
    } else {
      EXPECT_LT(row["kept_fraction_base"].get<double>(), 1.0);
    }
  }
}

TEST(ExitCodes, Mapping) {
  EXPECT_EQ(exit_code_for(ConfigError("x")), kExitConfig);
  EXPECT_EQ(exit_code_for(ParameterError("x")), kExitConfig);
  const WeightedGraph triangle =
      WeightedGraph::unit(3, std::vector<std::pair<NodeId, NodeId>>{{0, 1}, {1, 2}, {2, 0}});
  const Cycle witness = Cycle::from_edges(triangle, {0, 1, 2});
  EXPECT_EQ(exit_code_for(CertificationError("x", witness, Weight{1})), kExitCertification);
  EXPECT_EQ(exit_code_for(InvariantError("x")), kExitCertification);
  EXPECT_EQ(exit_code_for(GenerationError("x")), kExitGeneration);
  EXPECT_EQ(exit_code_for(std::runtime_error("x")), kExitFailure);
}

}  // namespace
}  // namespace lightspan::harness
