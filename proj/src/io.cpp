#include "hdxlab/io.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "hdxlab/error.hpp"

namespace hdxlab {

using nlohmann::json;

namespace {

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kInvalidInput, std::string("malformed JSON: ") + e.what());
  }
}

template <typename T>
T field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(ErrorKind::kInvalidInput, std::string("missing field \"") + key + "\"");
  }
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kInvalidInput, std::string("bad field \"") + key + "\": " + e.what());
  }
}

}  // namespace

std::string graph_to_json(const WeightedGraph& g) {
  json edges = json::array();
  for (const auto& e : g.edges()) edges.push_back({e.u, e.v, e.weight});
  json out = {{"n", g.vertex_count()}, {"directed", g.directed()}, {"edges", edges}};
  return out.dump(2) + "\n";
}

WeightedGraph graph_from_json(const std::string& text) {
  const json j = parse(text);
  const int n = field<int>(j, "n");
  const bool directed = j.contains("directed") ? field<bool>(j, "directed") : false;
  std::vector<Edge> edges;
  for (const auto& row : field<json>(j, "edges")) {
    if (!row.is_array() || row.size() < 2 || row.size() > 3) {
      throw Error(ErrorKind::kInvalidInput, "edge entries must be [u, v] or [u, v, w]");
    }
    try {
      edges.push_back({row[0].get<int>(), row[1].get<int>(), row.size() == 3 ? row[2].get<double>() : 1.0});
    } catch (const json::exception& e) {
      throw Error(ErrorKind::kInvalidInput, std::string("bad edge entry: ") + e.what());
    }
  }
  return WeightedGraph(n, std::move(edges), directed);
}

std::string complex_to_json(const SimplicialComplex& c) {
  json faces = json::array();
  json weights = json::array();
  const int h = c.top_dim();
  if (h >= 0) {
    for (std::size_t i = 0; i < c.face_count(h); ++i) {
      faces.push_back(c.faces(h)[i]);
      weights.push_back(c.weights(h)[i]);
    }
  }
  json out = {{"n", c.vertex_count()}, {"top_dim", h}, {"top_faces", faces}, {"top_weights", weights}};
  return out.dump(2) + "\n";
}

SimplicialComplex complex_from_json(const std::string& text) {
  const json j = parse(text);
  const int n = field<int>(j, "n");
  const int h = field<int>(j, "top_dim");
  auto faces = field<std::vector<Face>>(j, "top_faces");
  auto weights = j.contains("top_weights") ? field<std::vector<double>>(j, "top_weights")
                                           : std::vector<double>(faces.size(), 1.0);
  if (weights.size() != faces.size()) {
    throw Error(ErrorKind::kInvalidInput, "top_weights and top_faces differ in length");
  }
  for (auto& f : faces) {
    if (static_cast<int>(f.size()) != h + 1) {
      throw Error(ErrorKind::kInvalidInput, "top face size does not match top_dim");
    }
    std::sort(f.begin(), f.end());
  }
  return SimplicialComplex::from_maximal_faces(n, std::move(faces), std::move(weights));
}

std::string chain_to_json(const MarkovChain& chain) {
  json rows = json::array();
  for (Eigen::Index x = 0; x < chain.p().rows(); ++x) {
    json r = json::array();
    for (Eigen::Index y = 0; y < chain.p().cols(); ++y) r.push_back(chain.p()(x, y));
    rows.push_back(std::move(r));
  }
  std::vector<double> pi(chain.pi().data(), chain.pi().data() + chain.pi().size());
  json out = {{"states", chain.states()}, {"P", rows}, {"pi", pi}};
  return out.dump() + "\n";
}

std::string report_to_json(const BoundReport& report) {
  json entries = json::array();
  for (const auto& e : report.entries()) {
    entries.push_back({{"id", e.id},
                       {"description", e.description},
                       {"lhs", e.lhs},
                       {"rhs", e.rhs},
                       {"relation", to_string(e.relation)},
                       {"pass", e.pass},
                       {"slack", e.slack},
                       {"tolerance", e.tolerance},
                       {"required", e.required}});
  }
  json out = {{"schema", 1}, {"entries", entries}};
  return out.dump(2) + "\n";
}

std::string tv_csv(const TvCurve& curve) {
  std::ostringstream out;
  out << "t,tv_exact,tv_sampled\n" << std::setprecision(12);
  for (std::size_t t = 0; t < curve.exact.size(); ++t) {
    out << t << ',' << curve.exact[t] << ',';
    if (t < curve.sampled.size()) out << curve.sampled[t];
    out << '\n';
  }
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kInvalidInput, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::kInvalidInput, "cannot write " + path);
  out << text;
}

}  // namespace hdxlab
