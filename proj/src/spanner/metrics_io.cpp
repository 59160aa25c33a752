#include <fstream>

#include <json.hpp>

#include "lightspan/graph_io.hpp"
#include "lightspan/spanner.hpp"

namespace lightspan {

std::string spanner_metrics_json(const SpannerResult& result) {
  nlohmann::ordered_json doc;
  doc["stretch"] = format_weight(result.stretch);
  doc["nodes"] = result.spanner.node_count();
  doc["edges"] = result.edge_count();
  doc["lightness"] = format_weight(result.lightness_value);
  doc["lightness_approx"] = to_double(result.lightness_value);
  if (result.girth_certificate.value) {
    doc["weighted_girth"] = format_weight(*result.girth_certificate.value);
  } else {
    doc["weighted_girth"] = nullptr;
  }
  if (result.moore_bound) doc["moore_bound"] = *result.moore_bound;
  return doc.dump(2) + "\n";
}

void save_spanner(const std::filesystem::path& graph_path,
                  const std::filesystem::path& metrics_path, const SpannerResult& result) {
  save_graph(graph_path, result.spanner);
  std::ofstream out(metrics_path, std::ios::binary);
  if (!out) throw Error("cannot open " + metrics_path.string() + " for writing");
  out << spanner_metrics_json(result);
}

}  // namespace lightspan
