#include <algorithm>

#include "lightspan/construction.hpp"

namespace lightspan {

namespace {

/// Remaps a cycle of a materialized graph onto instance edge ids.
Cycle to_instance_ids(const EmbeddedInstance& inst, const EmbeddedInstance::Materialized& mat,
                      const Cycle& c) {
  std::vector<EdgeId> edges;
  for (EdgeId e : c.edges()) edges.push_back(mat.source_edge[e]);
  return Cycle(inst.graph, std::vector<NodeId>(c.nodes().begin(), c.nodes().end()),
               std::move(edges));
}

}  // namespace

PruneResult prune_light_cycles(const EmbeddedInstance& inst) {
  PruneResult result{inst, {}};
  EmbeddedInstance& out = result.instance;
  PruneReport& report = result.report;
  const std::size_t k = inst.layout.k;
  const Weight threshold = inst.girth_threshold();

  std::vector<EdgeId> doomed = inst.pruned;
  const std::size_t longest = 2 * k + 2 * max_light_excess(k, inst.layout.epsilon);
  for (std::size_t length = 2 * k; length <= longest; length += 2) {
    report.lengths_examined.push_back(length);
    for (const Cycle& x : enumerate_cycles(inst.base, length, longest)) {
      ++report.base_cycles_examined;
      const CorrespondingCycle cc = corresponding_cycle(inst, x);
      if (cc.normalized_weight > threshold) continue;
      ++report.light_cycles;
      for (EdgeId b : x.edges()) doomed.push_back(inst.image_of(b));
    }
  }
  std::sort(doomed.begin(), doomed.end());
  doomed.erase(std::unique(doomed.begin(), doomed.end()), doomed.end());
  out.pruned = std::move(doomed);

  while (true) {
    const auto mat = out.materialize();
    GirthCertificate cert = weighted_girth_above(mat.graph, threshold);
    if (cert.exceeds(threshold)) {
      report.certificate = std::move(cert);
      break;
    }
    Cycle witness = to_instance_ids(out, mat, *cert.witness);
    const bool parallel_pair = witness.size() == 2 && !out.is_sc_edge(witness.edges()[0]) &&
                               !out.is_sc_edge(witness.edges()[1]);
    if (!parallel_pair) {
      throw CertificationError("light cycle of normalized weight " + format_weight(*cert.value) +
                                   " survives pruning (threshold " + format_weight(threshold) +
                                   ", " + std::to_string(witness.size()) + " edges)",
                               std::move(witness), *cert.value);
    }
    out.pruned.insert(out.pruned.end(), witness.edges().begin(), witness.edges().end());
    std::sort(out.pruned.begin(), out.pruned.end());
    ++report.parallel_pairs_removed;
  }
  return result;
}

double surviving_fraction(const EmbeddedInstance& inst) {
  if (inst.embedded.empty()) {
    throw ParameterError("surviving fraction is undefined without embedded edges");
  }
  return static_cast<double>(inst.embedded.size() - inst.pruned.size()) /
         static_cast<double>(inst.embedded.size());
}

ConstructionOutcome build_instance(const GirthGraph& base, const ConstructionParams& params) {
  check_construction_params(base, params);
  const CycleLayout layout = build_layout(base, params.k, params.epsilon, params.seed);
  EmbeddedInstance embedded = embed_edges(base, layout, params.seed);
  PruneResult pruned = prune_light_cycles(embedded);
  return {std::move(embedded), std::move(pruned.instance), std::move(pruned.report)};
}

namespace {

/// Enumerates each light cycle once, from its maximum edge under the
/// (weight, id) order.
class LightCycleScanner {
 public:
  LightCycleScanner(const WeightedGraph& g, const Weight& threshold)
      : g_(g), threshold_(threshold), on_path_(g.node_count(), 0) {}

  std::vector<Cycle> run() {
    for (EdgeId e = 0; e < g_.edge_count(); ++e) {
      top_ = e;
      const Edge& edge = g_.edge(e);
      budget_ = (threshold_ - 1) * edge.weight;
      if (budget_ <= Weight{0}) continue;
      nodes_ = {edge.u};
      edges_.clear();
      on_path_[edge.u] = 1;
      walk(edge.u, Weight{0});
      on_path_[edge.u] = 0;
    }
    return std::move(found_);
  }

 private:
  bool below_top(EdgeId f) const {
    const Weight& wf = g_.edge(f).weight;
    const Weight& wt = g_.edge(top_).weight;
    return wf < wt || (wf == wt && f < top_);
  }

  void walk(NodeId at, const Weight& used) {
    const NodeId target = g_.edge(top_).v;
    for (const Arc& arc : g_.arcs(at)) {
      if (!below_top(arc.edge)) continue;
      const Weight next = used + arc.weight;
      if (next > budget_) continue;
      if (arc.to == target) {
        std::vector<NodeId> nodes = nodes_;
        nodes.push_back(target);
        std::vector<EdgeId> edges = edges_;
        edges.push_back(arc.edge);
        edges.push_back(top_);
        found_.push_back(Cycle(g_, std::move(nodes), std::move(edges)));
        continue;
      }
      if (on_path_[arc.to]) continue;
      on_path_[arc.to] = 1;
      nodes_.push_back(arc.to);
      edges_.push_back(arc.edge);
      walk(arc.to, next);
      nodes_.pop_back();
      edges_.pop_back();
      on_path_[arc.to] = 0;
    }
  }

  const WeightedGraph& g_;
  Weight threshold_;
  std::vector<char> on_path_;
  EdgeId top_ = 0;
  Weight budget_{0};
  std::vector<NodeId> nodes_;
  std::vector<EdgeId> edges_;
  std::vector<Cycle> found_;
};

}  // namespace

std::vector<LightCycle> scan_light_cycles(const EmbeddedInstance& inst, const Weight& threshold) {
  const auto mat = inst.materialize();
  std::vector<LightCycle> out;
  for (const Cycle& c : LightCycleScanner(mat.graph, threshold).run()) {
    LightCycle light{to_instance_ids(inst, mat, c).canonical(), normalized_weight(c), 0};
    for (EdgeId e : light.cycle.edges()) {
      if (!inst.is_sc_edge(e)) ++light.non_sc_edges;
    }
    out.push_back(std::move(light));
  }
  std::sort(out.begin(), out.end(),
            [](const LightCycle& a, const LightCycle& b) { return a.cycle < b.cycle; });
  return out;
}

}  // namespace lightspan
