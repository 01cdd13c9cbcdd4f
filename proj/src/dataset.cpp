#include "qew/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

namespace qew {

namespace {

std::vector<std::string> split_row(const std::string& line, char delimiter) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == delimiter) {
      fields.push_back(std::move(field));
      field.clear();
    } else {
      field += c;
    }
  }
  fields.push_back(std::move(field));
  return fields;
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double parse_quantity(const std::string& raw, std::size_t row, const std::string& column) {
  const std::string field = trim(raw);
  double value = 0.0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || field.empty())
    throw ParseError("row " + std::to_string(row) + ": non-numeric quantity '" + field +
                     "' in column '" + column + "'");
  if (!std::isfinite(value))
    throw ParseError("row " + std::to_string(row) + ": non-finite quantity in column '" + column + "'");
  if (value < 0.0)
    throw ParseError("row " + std::to_string(row) + ": negative quantity in column '" + column + "'");
  return value;
}

std::vector<std::string> read_lines(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  // drop trailing blank lines
  while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
  return lines;
}

void strip_bom(std::string& s) {
  if (s.size() >= 3 && s[0] == '\xEF' && s[1] == '\xBB' && s[2] == '\xBF') s.erase(0, 3);
}

}  // namespace

void IndicatorMatrix::validate() const {
  const std::size_t m = values.rows(), n = values.cols();
  if (m < 2) throw std::invalid_argument("indicator matrix needs at least 2 subjects");
  if (n < 1) throw std::invalid_argument("indicator matrix needs at least 1 indicator");
  if (ids.size() != m) throw std::invalid_argument("indicator matrix id count does not match rows");
  if (directions.size() != n) throw std::invalid_argument("direction tags do not match column count");
  if (names.size() != n) throw std::invalid_argument("indicator names do not match column count");
  if (!values.all_finite()) throw std::invalid_argument("indicator matrix contains non-finite entries");
}

RawSupplyData parse_supply_csv(std::istream& in, const CsvSchema& schema) {
  std::vector<std::string> lines = read_lines(in);
  if (lines.empty()) throw ParseError("empty input: header row required");
  strip_bom(lines.front());

  const std::vector<std::string> header = split_row(lines[0], schema.delimiter);
  std::size_t id_index = header.size();
  for (std::size_t c = 0; c < header.size(); ++c)
    if (trim(header[c]) == schema.id_column) id_index = c;
  if (id_index == header.size())
    throw ParseError("header has no id column '" + schema.id_column + "'");

  std::vector<std::size_t> period_indices;
  std::vector<std::string> period_names;
  if (schema.period_columns.empty()) {
    for (std::size_t c = 0; c < header.size(); ++c) {
      if (c == id_index) continue;
      period_indices.push_back(c);
      period_names.push_back(trim(header[c]));
    }
  } else {
    for (const std::string& name : schema.period_columns) {
      std::size_t found = header.size();
      for (std::size_t c = 0; c < header.size(); ++c)
        if (trim(header[c]) == name) found = c;
      if (found == header.size()) throw ParseError("header has no period column '" + name + "'");
      period_indices.push_back(found);
      period_names.push_back(name);
    }
  }
  if (period_indices.empty()) throw ParseError("no period columns in header");

  RawSupplyData data;
  data.period_count = period_indices.size();
  std::unordered_set<std::string> seen;
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const std::size_t row = r + 1;  // 1-based, header is row 1
    if (trim(lines[r]).empty())
      throw ParseError("row " + std::to_string(row) + ": blank row");
    const std::vector<std::string> fields = split_row(lines[r], schema.delimiter);
    if (fields.size() != header.size())
      throw ParseError("row " + std::to_string(row) + ": expected " + std::to_string(header.size()) +
                       " fields, got " + std::to_string(fields.size()));
    SupplierSeries series;
    series.id = trim(fields[id_index]);
    if (series.id.empty()) throw ParseError("row " + std::to_string(row) + ": empty supplier id");
    if (!seen.insert(series.id).second)
      throw ParseError("row " + std::to_string(row) + ": duplicate supplier id '" + series.id + "'");
    series.supply.reserve(data.period_count);
    for (std::size_t k = 0; k < period_indices.size(); ++k)
      series.supply.push_back(parse_quantity(fields[period_indices[k]], row, period_names[k]));
    data.suppliers.push_back(std::move(series));
  }
  if (data.suppliers.empty()) throw ParseError("no supplier rows after header");
  return data;
}

RawSupplyData parse_supply_csv(const std::string& text, const CsvSchema& schema) {
  std::istringstream in(text);
  return parse_supply_csv(in, schema);
}

void write_supply_csv(std::ostream& out, const RawSupplyData& data, const CsvSchema& schema) {
  out << schema.id_column;
  for (std::size_t t = 0; t < data.period_count; ++t) {
    out << schema.delimiter;
    if (t < schema.period_columns.size())
      out << schema.period_columns[t];
    else
      out << "p" << (t + 1);
  }
  out << '\n';
  char buf[64];
  for (const SupplierSeries& s : data.suppliers) {
    out << s.id;
    for (double v : s.supply) {
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out << schema.delimiter << buf;
    }
    out << '\n';
  }
}

void attach_orders(RawSupplyData& data, const RawSupplyData& orders) {
  if (orders.period_count != data.period_count)
    throw ParseError("order data has " + std::to_string(orders.period_count) +
                     " periods, supply data has " + std::to_string(data.period_count));
  if (orders.suppliers.size() != data.suppliers.size())
    throw ParseError("order data has " + std::to_string(orders.suppliers.size()) +
                     " suppliers, supply data has " + std::to_string(data.suppliers.size()));
  for (std::size_t i = 0; i < data.suppliers.size(); ++i) {
    if (orders.suppliers[i].id != data.suppliers[i].id)
      throw ParseError("order row " + std::to_string(i + 2) + " is for supplier '" +
                       orders.suppliers[i].id + "', expected '" + data.suppliers[i].id + "'");
    data.suppliers[i].order = orders.suppliers[i].supply;
  }
}

double supply_stability(const SupplierSeries& s) {
  if (s.supply.empty()) throw std::invalid_argument("supply series is empty");
  const double n = static_cast<double>(s.supply.size());
  double mean_sq = 0.0, mean = 0.0;
  for (double x : s.supply) {
    mean_sq += x * x;
    mean += x;
  }
  mean_sq /= n;
  mean /= n;
  return mean_sq - mean * mean;
}

double supply_quantity(const SupplierSeries& s) {
  double total = 0.0;
  for (double x : s.supply) total += x;
  return total;
}

std::size_t supply_continuity(const SupplierSeries& s) {
  std::size_t count = 0;
  for (double x : s.supply)
    if (x > 0.0) ++count;
  return count;
}

double ambiguous_capacity(const SupplierSeries& s) {
  if (!s.order) throw std::invalid_argument("supplier '" + s.id + "' has no order data");
  double total = 0.0;
  for (std::size_t t = 0; t < s.supply.size(); ++t) total += s.supply[t] - (*s.order)[t];
  return total;
}

IndicatorMatrix derive_indicators(const RawSupplyData& data, bool include_ambiguous) {
  const std::size_t m = data.suppliers.size();
  const std::size_t n = include_ambiguous ? 4 : 3;
  IndicatorMatrix out;
  out.values = Matrix(m, n);
  out.ids.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    const SupplierSeries& s = data.suppliers[i];
    out.ids.push_back(s.id);
    out.values(i, 0) = supply_stability(s);
    out.values(i, 1) = supply_quantity(s);
    out.values(i, 2) = static_cast<double>(supply_continuity(s));
    if (include_ambiguous) out.values(i, 3) = ambiguous_capacity(s);
  }
  out.directions = {Direction::Min, Direction::Max, Direction::Max};
  out.names = {"stability", "quantity", "continuity"};
  if (include_ambiguous) {
    out.directions.push_back(Direction::Max);
    out.names.push_back("ambiguous_capacity");
  }
  out.validate();
  return out;
}

IndicatorMatrix parse_indicator_csv(std::istream& in, char delimiter) {
  std::vector<std::string> lines = read_lines(in);
  if (lines.size() < 2) throw ParseError("indicator CSV needs a names header and a direction row");
  strip_bom(lines.front());

  const std::vector<std::string> header = split_row(lines[0], delimiter);
  if (header.size() < 2) throw ParseError("indicator CSV header needs an id column and at least one indicator");
  const std::size_t n = header.size() - 1;

  const std::vector<std::string> dir_row = split_row(lines[1], delimiter);
  if (dir_row.size() != header.size())
    throw ParseError("row 2: direction row has " + std::to_string(dir_row.size()) +
                     " fields, expected " + std::to_string(header.size()));
  {
    std::string marker = trim(dir_row[0]);
    std::transform(marker.begin(), marker.end(), marker.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (marker != "direction")
      throw ParseError("row 2: expected direction row starting with 'direction', got '" + dir_row[0] + "'");
  }

  IndicatorMatrix out;
  for (std::size_t j = 0; j < n; ++j) {
    out.names.push_back(trim(header[j + 1]));
    std::string d = trim(dir_row[j + 1]);
    std::transform(d.begin(), d.end(), d.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (d == "min")
      out.directions.push_back(Direction::Min);
    else if (d == "max")
      out.directions.push_back(Direction::Max);
    else
      throw ParseError("row 2: direction for '" + out.names[j] + "' must be min or max, got '" + d + "'");
  }

  const std::size_t m = lines.size() - 2;
  out.values = Matrix(m, n);
  std::unordered_set<std::string> seen;
  for (std::size_t r = 2; r < lines.size(); ++r) {
    const std::size_t row = r + 1;
    const std::vector<std::string> fields = split_row(lines[r], delimiter);
    if (fields.size() != header.size())
      throw ParseError("row " + std::to_string(row) + ": expected " + std::to_string(header.size()) +
                       " fields, got " + std::to_string(fields.size()));
    std::string id = trim(fields[0]);
    if (id.empty()) throw ParseError("row " + std::to_string(row) + ": empty id");
    if (!seen.insert(id).second)
      throw ParseError("row " + std::to_string(row) + ": duplicate id '" + id + "'");
    out.ids.push_back(std::move(id));
    for (std::size_t j = 0; j < n; ++j) {
      const std::string field = trim(fields[j + 1]);
      double value = 0.0;
      auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
      if (ec != std::errc() || ptr != field.data() + field.size() || field.empty())
        throw ParseError("row " + std::to_string(row) + ": non-numeric value '" + field +
                         "' in column '" + out.names[j] + "'");
      if (!std::isfinite(value))
        throw ParseError("row " + std::to_string(row) + ": non-finite value in column '" + out.names[j] + "'");
      out.values(r - 2, j) = value;
    }
  }
  out.validate();
  return out;
}

IndicatorMatrix parse_indicator_csv(const std::string& text, char delimiter) {
  std::istringstream in(text);
  return parse_indicator_csv(in, delimiter);
}

void write_indicator_csv(std::ostream& out, const IndicatorMatrix& m, char delimiter) {
  out << "id";
  for (const std::string& name : m.names) out << delimiter << name;
  out << '\n' << "direction";
  for (Direction d : m.directions) out << delimiter << (d == Direction::Min ? "min" : "max");
  out << '\n';
  char buf[64];
  for (std::size_t i = 0; i < m.values.rows(); ++i) {
    out << m.ids[i];
    for (std::size_t j = 0; j < m.values.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", m.values(i, j));
      out << delimiter << buf;
    }
    out << '\n';
  }
}

}  // namespace qew
