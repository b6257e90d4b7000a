#include "hdxlab/report.hpp"

#include <cmath>

#include "hdxlab/error.hpp"

namespace hdxlab {

const char* to_string(Relation relation) {
  switch (relation) {
    case Relation::kGreaterEqual: return ">=";
    case Relation::kLessEqual: return "<=";
    case Relation::kEqual: return "==";
  }
  return "?";
}

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidInput: return "invalid-input";
    case ErrorKind::kIsolatedVertex: return "isolated-vertex";
    case ErrorKind::kReversibility: return "reversibility";
    case ErrorKind::kRange: return "range";
    case ErrorKind::kUnsupportedInput: return "unsupported-input";
    case ErrorKind::kRegularity: return "regularity";
    case ErrorKind::kGenerationFailure: return "generation-failure";
    case ErrorKind::kDimension: return "dimension";
    case ErrorKind::kIncompleteWeights: return "incomplete-weights";
    case ErrorKind::kMissingFace: return "missing-face";
    case ErrorKind::kDownwardClosure: return "downward-closure";
    case ErrorKind::kPurity: return "purity";
    case ErrorKind::kBalance: return "balance";
    case ErrorKind::kReducible: return "reducible";
    case ErrorKind::kPartition: return "partition";
    case ErrorKind::kNonMixing: return "non-mixing";
    case ErrorKind::kPrecondition: return "precondition";
  }
  return "unknown";
}

BoundEntry make_entry(std::string id, std::string description, double lhs, Relation relation,
                      double rhs, double tolerance, bool required) {
  BoundEntry e;
  e.id = std::move(id);
  e.description = std::move(description);
  e.lhs = lhs;
  e.rhs = rhs;
  e.relation = relation;
  e.tolerance = tolerance;
  e.required = required;
  switch (relation) {
    case Relation::kGreaterEqual: e.slack = lhs - rhs; break;
    case Relation::kLessEqual: e.slack = rhs - lhs; break;
    case Relation::kEqual: e.slack = -std::abs(lhs - rhs); break;
  }
  // NaN slack fails.
  e.pass = e.slack >= -tolerance;
  return e;
}

void BoundReport::append(const BoundReport& other) {
  entries_.insert(entries_.end(), other.entries_.begin(), other.entries_.end());
}

const BoundEntry* BoundReport::find(const std::string& id) const {
  for (const auto& e : entries_) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

bool BoundReport::all_required_pass() const {
  for (const auto& e : entries_) {
    if (e.required && !e.pass) return false;
  }
  return true;
}

std::vector<const BoundEntry*> BoundReport::failures() const {
  std::vector<const BoundEntry*> out;
  for (const auto& e : entries_) {
    if (e.required && !e.pass) out.push_back(&e);
  }
  return out;
}

}  // namespace hdxlab
