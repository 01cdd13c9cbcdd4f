#pragma once

#include "qew/core.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace qew {

// One supplier's per-period quantities. `order` is present only when the
// caller attached an order-quantity dataset.
struct SupplierSeries {
  std::string id;
  std::vector<double> supply;
  std::optional<std::vector<double>> order;
};

struct RawSupplyData {
  std::vector<SupplierSeries> suppliers;
  std::size_t period_count = 0;
};

// Explicit column mapping for CSV ingestion. Empty `period_columns` selects
// every non-id column in header order.
struct CsvSchema {
  std::string id_column = "id";
  std::vector<std::string> period_columns;
  char delimiter = ',';
};

// m suppliers by n indicators, each column tagged with its sense.
struct IndicatorMatrix {
  std::vector<std::string> ids;
  Matrix values;
  std::vector<Direction> directions;
  std::vector<std::string> names;

  // m >= 2, n >= 1, all entries finite, tag/name lengths match n.
  void validate() const;
};

RawSupplyData parse_supply_csv(std::istream& in, const CsvSchema& schema);
RawSupplyData parse_supply_csv(const std::string& text, const CsvSchema& schema);
void write_supply_csv(std::ostream& out, const RawSupplyData& data, const CsvSchema& schema);

// Merges an order-quantity dataset (parsed with parse_supply_csv) into
// `data`. Requires the same supplier ids in the same row order and the same
// period count.
void attach_orders(RawSupplyData& data, const RawSupplyData& orders);

// Population variance E[X^2] - mu^2 of the supply series.
double supply_stability(const SupplierSeries& s);
// Total quantity supplied over all periods.
double supply_quantity(const SupplierSeries& s);
// Number of periods with supply strictly above zero.
std::size_t supply_continuity(const SupplierSeries& s);
// Signed sum of (supply - order) over all periods; requires order data.
double ambiguous_capacity(const SupplierSeries& s);

// Builds the evaluation matrix with columns
//   [stability (Min), quantity (Max), continuity (Max), ambiguous_capacity (Max)]
// in this fixed order. With include_ambiguous = false the last column is
// dropped, for supply-only datasets.
IndicatorMatrix derive_indicators(const RawSupplyData& data, bool include_ambiguous = true);

// Pre-derived indicator CSV: a names header (id + indicator names), a
// direction row (`direction,min,max,...`), then one row per subject.
IndicatorMatrix parse_indicator_csv(std::istream& in, char delimiter = ',');
IndicatorMatrix parse_indicator_csv(const std::string& text, char delimiter = ',');
void write_indicator_csv(std::ostream& out, const IndicatorMatrix& m, char delimiter = ',');

}  // namespace qew
