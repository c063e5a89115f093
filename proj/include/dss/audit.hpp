#pragma once

// Compares every lower bound from bounds.hpp against the exhaustively
// searched M_min and the baseline construction.

#include <optional>
#include <vector>

#include "dss/bounds.hpp"
#include "dss/search.hpp"

namespace dss {

struct AuditRow {
  Method method = Method::first_moment;
  double asymptotic_bound = 0.0;
  std::optional<double> finite_bound;
  std::int64_t m_min = 0;
  std::int64_t baseline_m = 0;
  // A finite-form bound above M_min contradicts the bound (when the search
  // was exhaustive). The asymptotic form drops its (1 + o(1)) factor, so
  // exceeding M_min there is informational only.
  bool finite_violation = false;
  bool asymptotic_exceeds = false;
};

struct AuditReport {
  SearchOutcome search;
  std::int64_t baseline_m = 0;
  std::vector<AuditRow> rows;

  bool has_violation() const {
    for (const auto& r : rows)
      if (r.finite_violation) return true;
    return false;
  }
};

inline AuditReport bound_vs_search_report(unsigned n, int k, const SearchOptions& options = {}) {
  AuditReport report;
  report.search = min_m_search(n, k, options);
  report.baseline_m = baseline_construction(n, k).bound;
  for (auto method : kAllMethods) {
    const auto b = lower_bound_m(n, k, method);
    AuditRow row;
    row.method = method;
    row.asymptotic_bound = *b.asymptotic_bound;
    row.finite_bound = b.finite_bound;
    row.m_min = report.search.m_min;
    row.baseline_m = report.baseline_m;
    const auto m = static_cast<double>(report.search.m_min);
    row.finite_violation = report.search.exhaustive && b.finite_bound && *b.finite_bound > m;
    row.asymptotic_exceeds = row.asymptotic_bound > m;
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace dss
