#pragma once

#include <string>
#include <vector>

namespace hdxlab {

enum class Relation { kGreaterEqual, kLessEqual, kEqual };

const char* to_string(Relation relation);

/// One verified bound: a computed left side compared with a formula right side.
struct BoundEntry {
  std::string id;
  std::string description;
  double lhs = 0.0;
  double rhs = 0.0;
  Relation relation = Relation::kGreaterEqual;
  double tolerance = 0.0;
  // Informational entries probe known discrepancies and never affect the verdict.
  bool required = true;
  bool pass = false;
  double slack = 0.0;
};

/// Builds an entry and evaluates it.  For kEqual the slack is -|lhs - rhs|;
/// otherwise it is the signed margin in the direction of the relation.
BoundEntry make_entry(std::string id, std::string description, double lhs, Relation relation,
                      double rhs, double tolerance, bool required = true);

class BoundReport {
 public:
  void add(BoundEntry entry) { entries_.push_back(std::move(entry)); }
  void append(const BoundReport& other);

  const std::vector<BoundEntry>& entries() const { return entries_; }
  const BoundEntry* find(const std::string& id) const;

  bool all_required_pass() const;
  std::vector<const BoundEntry*> failures() const;  // required entries only

 private:
  std::vector<BoundEntry> entries_;
};

}  // namespace hdxlab
