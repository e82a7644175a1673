#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace vandcond {

const char* version() noexcept;

enum class TableId { T1, T2, T3, T4, T5 };

const char* to_string(TableId id) noexcept;
TableId table_id_from_int(int id);

enum class ColumnKind { Integer, Real, Text };

struct Column {
  std::string name;
  ColumnKind kind = ColumnKind::Real;
  friend bool operator==(const Column&, const Column&) = default;
};

// A table cell. Reals keep their log10 as the primary quantity so values
// past the double range still print; `value` saturates to +-inf there.
struct Cell {
  enum class Kind { Integer, Real, Text, Error };
  Kind kind = Kind::Text;
  double value = 0.0;
  double log10 = 0.0;
  bool trustworthy = true;
  std::string text;
  std::string bound_id;  // bound cells only
  std::string variant;   // bound cells only

  static Cell integer(long long v);
  static Cell real(double v, bool trustworthy = true);
  static Cell from_log10(double l, bool trustworthy = true);
  static Cell make_text(std::string t);
  static Cell error(std::string message);

  friend bool operator==(const Cell&, const Cell&) = default;
};

struct Row {
  std::vector<Cell> cells;
  std::string error;  // empty unless the row failed
  friend bool operator==(const Row&, const Row&) = default;
};

struct TableMetadata {
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::string version;
  std::string rng;
  std::string timestamp;
  friend bool operator==(const TableMetadata&, const TableMetadata&) = default;
};

struct ExperimentTable {
  TableId table_id = TableId::T1;
  std::vector<Column> columns;
  std::vector<Row> rows;
  TableMetadata metadata;

  std::size_t column_index(const std::string& name) const;
  const Cell& at(std::size_t row, const std::string& column) const;
  std::size_t failed_rows() const noexcept;
  friend bool operator==(const ExperimentTable&, const ExperimentTable&) = default;
};

struct TableOverrides {
  std::optional<std::vector<std::size_t>> sizes;  // matrix orders n
  std::optional<std::size_t> trials;              // T5 only
  std::optional<std::uint64_t> seed;              // T5 only
};

inline constexpr std::uint64_t kDefaultSeed = 1;
inline constexpr std::size_t kDefaultTrials = 100;

// Single-outlier moduli used for T1; dyadic so the table's rounded values
// 1.14 and 1.56 come out exactly as printed.
inline constexpr double kT1Outliers[] = {73.0 / 64.0, 25.0 / 16.0, 3.25, 10.0};

ExperimentTable run_table(TableId id, const TableOverrides& overrides = {});

enum class TableFormat { Csv, Markdown, Json };

TableFormat table_format_from_string(const std::string& s);

std::string emit(const ExperimentTable& t, TableFormat format);
ExperimentTable parse_table_json(const std::string& text);

// "1.53E+01": three significant digits, valid beyond the double range.
std::string format_sci(double log10_value);

}  // namespace vandcond
