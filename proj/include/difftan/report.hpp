#pragma once

#include <optional>
#include <string>
#include <vector>

#include "difftan/external_tangent.hpp"
#include "difftan/internal_tangent.hpp"
#include "difftan/tangent_bundle.hpp"

namespace difftan {

enum class OutputFormat { Json, Text };

struct TableCell {
  std::string expected;
  std::string actual;
  bool checked = true;
  bool pass = false;
};

struct TableRow {
  std::string name;
  std::string space;
  std::string point;
  TableCell internal, external;
  std::string note;
};

struct TableReport {
  std::vector<TableRow> rows;
  bool all_passed() const;
  std::size_t checked_rows() const;
};

// Number of slopes used for the wire row.
inline constexpr std::size_t kWireSlopes = 20;

TableReport run_table(unsigned order = 4);

// Name of the summary-table row a (space, point) pair instantiates, if any.
std::optional<std::string> reference_row(const SpacePresentation& space, const Point& x);

std::string internal_report(const SpacePresentation& space, const Point& x, const TangentOptions& opts,
                            OutputFormat fmt);
std::string external_report(const SpacePresentation& space, const Point& x, unsigned order, OutputFormat fmt);
std::string full_report(const SpacePresentation& space, const Point& x, const TangentOptions& opts,
                        OutputFormat fmt);
std::string bundle_report(const SpacePresentation& space, const BundlePlotCandidate& c, OutputFormat fmt);
std::string fibrewise_report(const SpacePresentation& space, const BundlePlotCandidate& a,
                             const BundlePlotCandidate& b, OutputFormat fmt);
std::string trivialization_report(const SpacePresentation& space, OutputFormat fmt);
std::string fine_report(const SpacePresentation& space, const Point& x, OutputFormat fmt);
std::string table_report(const TableReport& t, OutputFormat fmt);

// Default slopes for Generated(n, 1): 1, 2, ..., m.
std::vector<QuadNumber> default_slopes(std::size_t m);

}  // namespace difftan
