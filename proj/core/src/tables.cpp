#include "vandcond/tables.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <functional>
#include <future>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "vandcond/bounds.hpp"
#include "vandcond/error.hpp"
#include "vandcond/knots.hpp"
#include "vandcond/matrix.hpp"
#include "vandcond/rng.hpp"
#include "vandcond/spectral.hpp"

namespace vandcond {

const char* version() noexcept { return VANDCOND_VERSION; }

const char* to_string(TableId id) noexcept {
  switch (id) {
    case TableId::T1: return "T1";
    case TableId::T2: return "T2";
    case TableId::T3: return "T3";
    case TableId::T4: return "T4";
    case TableId::T5: return "T5";
  }
  return "?";
}

TableId table_id_from_int(int id) {
  if (id < 1 || id > 5) throw Error(ErrorKind::InvalidArgument, "table id must be 1..5");
  return static_cast<TableId>(id - 1);
}

Cell Cell::integer(long long v) {
  Cell c;
  c.kind = Kind::Integer;
  c.value = static_cast<double>(v);
  c.log10 = v > 0 ? std::log10(static_cast<double>(v)) : -std::numeric_limits<double>::infinity();
  return c;
}

Cell Cell::real(double v, bool trustworthy) {
  Cell c;
  c.kind = Kind::Real;
  c.value = v;
  c.log10 = std::log10(std::abs(v));
  c.trustworthy = trustworthy;
  return c;
}

Cell Cell::from_log10(double l, bool trustworthy) {
  Cell c;
  c.kind = Kind::Real;
  c.log10 = l;
  c.value = l > 308.0 ? std::numeric_limits<double>::infinity() : std::pow(10.0, l);
  c.trustworthy = trustworthy;
  return c;
}

Cell Cell::make_text(std::string t) {
  Cell c;
  c.kind = Kind::Text;
  c.text = std::move(t);
  return c;
}

Cell Cell::error(std::string message) {
  Cell c;
  c.kind = Kind::Error;
  c.text = std::move(message);
  c.trustworthy = false;
  return c;
}

std::size_t ExperimentTable::column_index(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i].name == name) return i;
  throw Error(ErrorKind::InvalidArgument, "no column named " + name);
}

const Cell& ExperimentTable::at(std::size_t row, const std::string& column) const {
  return rows.at(row).cells.at(column_index(column));
}

std::size_t ExperimentTable::failed_rows() const noexcept {
  std::size_t k = 0;
  for (const auto& r : rows)
    if (!r.error.empty()) ++k;
  return k;
}

namespace {

Cell bound_cell(const BoundReport& r, double log10value) {
  Cell c = Cell::from_log10(log10value);
  c.bound_id = to_string(r.bound_id);
  c.variant = r.variant ? to_string(*r.variant) : "n/a";
  return c;
}

Cell bound_cell(const BoundReport& r) { return bound_cell(r, r.log10value); }

Cell kappa_cell(const SpectrumSummary& s) { return Cell::from_log10(s.log10kappa, s.trustworthy); }

Cell trust_cell(const SpectrumSummary& s) { return Cell::make_text(s.trustworthy ? "yes" : "no"); }

struct RowSpec {
  std::vector<Cell> keys;              // leading parameter cells, known up front
  std::function<std::vector<Cell>()> compute;  // remaining cells
};

Row evaluate(const RowSpec& spec, std::size_t width) {
  Row row;
  row.cells = spec.keys;
  try {
    auto rest = spec.compute();
    row.cells.insert(row.cells.end(), rest.begin(), rest.end());
  } catch (const std::exception& e) {
    row.error = e.what();
    while (row.cells.size() < width) row.cells.push_back(Cell::error("error"));
  }
  return row;
}

std::vector<std::size_t> sizes_or(const TableOverrides& o, std::vector<std::size_t> def) {
  return o.sizes ? *o.sizes : std::move(def);
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void build_t1(const TableOverrides& o, ExperimentTable& t, std::vector<RowSpec>& specs) {
  t.columns = {{"n", ColumnKind::Integer},
               {"s_last", ColumnKind::Real},
               {"kappa", ColumnKind::Real},
               {"kappa_minus", ColumnKind::Real},
               {"kappa_trustworthy", ColumnKind::Text}};
  for (std::size_t n : sizes_or(o, {64, 128, 256}))
    for (double s_last : kT1Outliers)
      specs.push_back({{Cell::integer(static_cast<long long>(n)), Cell::real(s_last)}, [n, s_last] {
                         const KnotVector s = single_outlier(n, s_last);
                         const SpectrumSummary sv = singular_values(vandermonde(s));
                         const BoundReport b = bound_easy(s);
                         return std::vector<Cell>{kappa_cell(sv), bound_cell(b, b.params.at("raw_log10")),
                                                  trust_cell(sv)};
                       }});
}

void build_t2(const TableOverrides& o, ExperimentTable& t, std::vector<RowSpec>& specs) {
  t.columns = {{"n", ColumnKind::Integer},
               {"k", ColumnKind::Integer},
               {"rho", ColumnKind::Real},
               {"kappa", ColumnKind::Real},
               {"kappa_minus", ColumnKind::Real},
               {"kappa_minus_computed", ColumnKind::Real},
               {"kappa_minus_literal", ColumnKind::Real},
               {"kappa_trustworthy", ColumnKind::Text}};
  for (std::size_t n : sizes_or(o, {64, 128, 256}))
    for (std::size_t k : {8, 16, 32})
      for (double rho : {0.75, 0.5})
        specs.push_back({{Cell::integer(static_cast<long long>(n)), Cell::integer(static_cast<long long>(k)),
                          Cell::real(rho)},
                         [n, k, rho] {
                           const KnotVector s = scaled_cluster(n, k, rho);
                           const SpectrumSummary sv = singular_values(vandermonde(s));
                           const double nu = 1.0 / rho;
                           return std::vector<Cell>{
                               kappa_cell(sv),
                               bound_cell(bound_cluster(s, k, nu, ClusterNormMode::ComputedNormTable)),
                               bound_cell(bound_cluster(s, k, nu, ClusterNormMode::ComputedNorm)),
                               bound_cell(bound_cluster(s, k, nu, ClusterNormMode::Literal)),
                               trust_cell(sv)};
                         }});
}

void build_t3(const TableOverrides& o, ExperimentTable& t, std::vector<RowSpec>& specs) {
  t.columns = {{"n", ColumnKind::Integer},
               {"q", ColumnKind::Integer},
               {"kappa", ColumnKind::Real},
               {"kappa_minus", ColumnKind::Real},
               {"kappa_prime", ColumnKind::Real},
               {"kappa_minus_theorem", ColumnKind::Real},
               {"kappa_trustworthy", ColumnKind::Text}};
  for (std::size_t n : sizes_or(o, {12, 24, 48, 96}))
    specs.push_back({{Cell::integer(static_cast<long long>(n)), Cell::integer(static_cast<long long>(n / 3))},
                     [n] {
                       if (n % 3 != 0)
                         throw Error(ErrorKind::BadShape, "BadShape: n = " + std::to_string(n) +
                                                              " is not a multiple of 3");
                       const std::size_t q = n / 3;
                       const SpectrumSummary sv = singular_values(vandermonde(quasi_cyclic(n)));
                       const BoundReport base = bound_quasi_cyclic(q, QuasiCyclicMode::Base);
                       const BoundReport integral = bound_quasi_cyclic(q, QuasiCyclicMode::Integral);
                       return std::vector<Cell>{kappa_cell(sv),
                                                bound_cell(base, base.params.at("table_reconstruction_log10")),
                                                bound_cell(integral), bound_cell(base), trust_cell(sv)};
                     }});
}

void build_t4(const TableOverrides& o, ExperimentTable& t, std::vector<RowSpec>& specs) {
  t.columns = {{"n", ColumnKind::Integer},
               {"q", ColumnKind::Integer},
               {"kappa", ColumnKind::Real},
               {"kappa_minus", ColumnKind::Real},
               {"kappa_prime_minus", ColumnKind::Real},
               {"kappa_minus_theorem", ColumnKind::Real},
               {"kappa_trustworthy", ColumnKind::Text}};
  for (std::size_t n : sizes_or(o, {8, 16, 32, 64}))
    specs.push_back({{Cell::integer(static_cast<long long>(n)), Cell::integer(static_cast<long long>(n / 2))},
                     [n] {
                       const BoundReport base = bound_dft_block(n, DftBlockMode::Base);
                       const BoundReport integral = bound_dft_block(n, DftBlockMode::Integral);
                       const SpectrumSummary sv = singular_values(
                           leading_block(dft(n), static_cast<Eigen::Index>(n / 2)));
                       return std::vector<Cell>{kappa_cell(sv),
                                                bound_cell(base, base.params.at("table_reconstruction_log10")),
                                                bound_cell(integral), bound_cell(base), trust_cell(sv)};
                     }});
}

void build_t5(const TableOverrides& o, ExperimentTable& t, std::vector<RowSpec>& specs) {
  t.columns = {{"n", ColumnKind::Integer},
               {"trials", ColumnKind::Integer},
               {"mean_rn", ColumnKind::Real},
               {"std_rn", ColumnKind::Real}};
  const std::size_t trials = t.metadata.trials;
  const std::uint64_t seed = t.metadata.seed;
  for (std::size_t n : sizes_or(o, {16, 32, 64, 128, 256, 512, 1024}))
    specs.push_back({{Cell::integer(static_cast<long long>(n)), Cell::integer(static_cast<long long>(trials))},
                     [n, trials, seed] {
                       const GenpStats g = genp_residual_experiment(n, trials, seed);
                       return std::vector<Cell>{Cell::real(g.mean_rn), Cell::real(g.std_rn)};
                     }});
}

}  // namespace

ExperimentTable run_table(TableId id, const TableOverrides& overrides) {
  ExperimentTable t;
  t.table_id = id;
  t.metadata.version = version();
  t.metadata.timestamp = utc_timestamp();
  if (id == TableId::T5) {
    t.metadata.seed = overrides.seed.value_or(kDefaultSeed);
    t.metadata.trials = overrides.trials.value_or(kDefaultTrials);
    t.metadata.rng = CounterRng::kName;
  }
  std::vector<RowSpec> specs;
  switch (id) {
    case TableId::T1: build_t1(overrides, t, specs); break;
    case TableId::T2: build_t2(overrides, t, specs); break;
    case TableId::T3: build_t3(overrides, t, specs); break;
    case TableId::T4: build_t4(overrides, t, specs); break;
    case TableId::T5: build_t5(overrides, t, specs); break;
  }
  const std::size_t width = t.columns.size();
  std::vector<std::future<Row>> pending;
  pending.reserve(specs.size());
  for (const auto& spec : specs)
    pending.push_back(std::async(std::launch::async, [&spec, width] { return evaluate(spec, width); }));
  for (auto& p : pending) t.rows.push_back(p.get());
  return t;
}

TableFormat table_format_from_string(const std::string& s) {
  if (s == "csv") return TableFormat::Csv;
  if (s == "markdown" || s == "md") return TableFormat::Markdown;
  if (s == "json") return TableFormat::Json;
  throw Error(ErrorKind::InvalidArgument, "unknown table format: " + s);
}

std::string format_sci(double l) {
  if (std::isnan(l)) return "nan";
  if (l == -std::numeric_limits<double>::infinity()) return "0.00E+00";
  if (l == std::numeric_limits<double>::infinity()) return "inf";
  double e = std::floor(l);
  double m = std::round(std::pow(10.0, l - e) * 100.0) / 100.0;
  if (m >= 10.0) {
    m /= 10.0;
    e += 1.0;
  }
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.2fE%c%02d", m, e < 0 ? '-' : '+', static_cast<int>(std::abs(e)));
  return buf;
}

namespace {

std::string real_text(const Cell& c) {
  if (std::isfinite(c.value) && c.value != 0.0) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.2E", c.value);
    return buf;
  }
  if (c.value == 0.0) return "0.00E+00";
  return format_sci(c.log10);
}

std::string full(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string cell_text(const Cell& c) {
  switch (c.kind) {
    case Cell::Kind::Integer: return std::to_string(static_cast<long long>(c.value));
    case Cell::Kind::Real: return real_text(c);
    case Cell::Kind::Text: return c.text;
    case Cell::Kind::Error: return c.text;
  }
  return {};
}

std::string emit_csv(const ExperimentTable& t) {
  std::ostringstream out;
  out << "# table=" << to_string(t.table_id) << " version=" << t.metadata.version;
  if (t.table_id == TableId::T5)
    out << " seed=" << t.metadata.seed << " trials=" << t.metadata.trials << " rng=" << t.metadata.rng;
  out << "\n# timestamp=" << t.metadata.timestamp << "\n";
  bool first = true;
  for (const auto& col : t.columns) {
    out << (first ? "" : ",") << col.name;
    if (col.kind == ColumnKind::Real) out << "," << col.name << "_log10";
    first = false;
  }
  out << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
      const Cell& c = row.cells[i];
      out << (i ? "," : "") << cell_text(c);
      if (t.columns[i].kind == ColumnKind::Real)
        out << "," << (c.kind == Cell::Kind::Real ? full(c.log10) : std::string{});
    }
    out << "\n";
  }
  return out.str();
}

std::string emit_markdown(const ExperimentTable& t) {
  std::ostringstream out;
  out << "|";
  for (const auto& col : t.columns) out << " " << col.name << " |";
  out << "\n|";
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << "---|";
  out << "\n";
  for (const auto& row : t.rows) {
    out << "|";
    for (const auto& c : row.cells) out << " " << cell_text(c) << " |";
    out << "\n";
  }
  for (std::size_t i = 0; i < t.rows.size(); ++i)
    if (!t.rows[i].error.empty()) out << "\nrow " << i + 1 << " failed: " << t.rows[i].error << "\n";
  return out.str();
}

nlohmann::json jnum(double v) {
  if (std::isfinite(v)) return v;
  return full(v);
}

double from_jnum(const nlohmann::json& j) {
  if (j.is_number()) return j.get<double>();
  const auto s = j.get<std::string>();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  throw Error(ErrorKind::Parse, "bad number in table json: " + s);
}

const char* kind_name(ColumnKind k) {
  switch (k) {
    case ColumnKind::Integer: return "integer";
    case ColumnKind::Real: return "real";
    case ColumnKind::Text: return "text";
  }
  return "?";
}

ColumnKind column_kind(const std::string& s) {
  if (s == "integer") return ColumnKind::Integer;
  if (s == "real") return ColumnKind::Real;
  if (s == "text") return ColumnKind::Text;
  throw Error(ErrorKind::Parse, "bad column kind in table json: " + s);
}

const char* kind_name(Cell::Kind k) {
  switch (k) {
    case Cell::Kind::Integer: return "integer";
    case Cell::Kind::Real: return "real";
    case Cell::Kind::Text: return "text";
    case Cell::Kind::Error: return "error";
  }
  return "?";
}

Cell::Kind cell_kind(const std::string& s) {
  if (s == "integer") return Cell::Kind::Integer;
  if (s == "real") return Cell::Kind::Real;
  if (s == "text") return Cell::Kind::Text;
  if (s == "error") return Cell::Kind::Error;
  throw Error(ErrorKind::Parse, "bad cell kind in table json: " + s);
}

std::string emit_json(const ExperimentTable& t) {
  nlohmann::json j;
  j["table_id"] = to_string(t.table_id);
  j["metadata"] = {{"seed", t.metadata.seed},
                   {"trials", t.metadata.trials},
                   {"version", t.metadata.version},
                   {"rng", t.metadata.rng},
                   {"timestamp", t.metadata.timestamp}};
  auto cols = nlohmann::json::array();
  for (const auto& c : t.columns) cols.push_back({{"name", c.name}, {"kind", kind_name(c.kind)}});
  j["columns"] = std::move(cols);
  auto rows = nlohmann::json::array();
  for (const auto& r : t.rows) {
    auto cells = nlohmann::json::array();
    for (const auto& c : r.cells) {
      nlohmann::json jc = {{"kind", kind_name(c.kind)},
                           {"value", jnum(c.value)},
                           {"log10", jnum(c.log10)},
                           {"trustworthy", c.trustworthy}};
      if (!c.text.empty()) jc["text"] = c.text;
      if (!c.bound_id.empty()) jc["bound_id"] = c.bound_id;
      if (!c.variant.empty()) jc["variant"] = c.variant;
      cells.push_back(std::move(jc));
    }
    rows.push_back({{"cells", std::move(cells)}, {"error", r.error}});
  }
  j["rows"] = std::move(rows);
  return j.dump(2) + "\n";
}

}  // namespace

std::string emit(const ExperimentTable& t, TableFormat format) {
  switch (format) {
    case TableFormat::Csv: return emit_csv(t);
    case TableFormat::Markdown: return emit_markdown(t);
    case TableFormat::Json: return emit_json(t);
  }
  return {};
}

ExperimentTable parse_table_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    ExperimentTable t;
    const auto id = j.at("table_id").get<std::string>();
    if (id.size() != 2 || id[0] != 'T') throw Error(ErrorKind::Parse, "bad table id " + id);
    t.table_id = table_id_from_int(id[1] - '0');
    const auto& m = j.at("metadata");
    t.metadata.seed = m.at("seed").get<std::uint64_t>();
    t.metadata.trials = m.at("trials").get<std::size_t>();
    t.metadata.version = m.at("version").get<std::string>();
    t.metadata.rng = m.at("rng").get<std::string>();
    t.metadata.timestamp = m.at("timestamp").get<std::string>();
    for (const auto& c : j.at("columns"))
      t.columns.push_back({c.at("name").get<std::string>(), column_kind(c.at("kind").get<std::string>())});
    for (const auto& r : j.at("rows")) {
      Row row;
      row.error = r.at("error").get<std::string>();
      for (const auto& jc : r.at("cells")) {
        Cell c;
        c.kind = cell_kind(jc.at("kind").get<std::string>());
        c.value = from_jnum(jc.at("value"));
        c.log10 = from_jnum(jc.at("log10"));
        c.trustworthy = jc.at("trustworthy").get<bool>();
        c.text = jc.value("text", std::string{});
        c.bound_id = jc.value("bound_id", std::string{});
        c.variant = jc.value("variant", std::string{});
        row.cells.push_back(std::move(c));
      }
      t.rows.push_back(std::move(row));
    }
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("table json: ") + e.what());
  }
}

}  // namespace vandcond
