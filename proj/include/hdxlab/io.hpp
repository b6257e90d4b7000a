#pragma once

#include <string>

#include "hdxlab/graph.hpp"
#include "hdxlab/markov.hpp"
#include "hdxlab/report.hpp"
#include "hdxlab/simplicial.hpp"

namespace hdxlab {

// All parsers throw kInvalidInput on malformed text and forward the
// constructors' validation errors.

/// {"n": int, "directed": bool, "edges": [[u, v, w], ...]}, 0-based ids.
std::string graph_to_json(const WeightedGraph& g);
WeightedGraph graph_from_json(const std::string& text);

/// {"n": int, "top_dim": int, "top_faces": [[v...]...], "top_weights": [w...]}.
/// Lower faces and weights are derived on load.
std::string complex_to_json(const SimplicialComplex& c);
SimplicialComplex complex_from_json(const std::string& text);

/// {"states": [...], "P": [[row]...], "pi": [...]}.
std::string chain_to_json(const MarkovChain& chain);

/// {"schema": 1, "entries": [{id, description, lhs, rhs, relation, pass, slack, tolerance, required}...]}.
std::string report_to_json(const BoundReport& report);

/// "t,tv_exact,tv_sampled" rows.
std::string tv_csv(const TvCurve& curve);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace hdxlab
