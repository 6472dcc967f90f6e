#include "pstirling_cli/cli.hpp"

#include "pstirling/errors.hpp"
#include "pstirling/partial_stirling.hpp"

#include <sstream>

namespace pstirling::cli {

namespace {

struct Grid {
  std::string corner;               // header of the label column
  std::vector<std::string> columns;
  std::vector<std::string> labels;
  std::vector<std::vector<std::optional<std::string>>> cells;
  std::vector<json> row_meta;
};

Grid t2_grid(const TableRequest& req) {
  const long d_max = req.d_max.value_or(8);
  if (d_max < 1) throw DomainError("t2 needs d_max >= 1");
  if (req.primes.empty()) throw DomainError("t2 needs at least one prime");
  Grid g;
  g.corner = "d";
  for (long d = 1; d <= d_max; ++d) g.columns.push_back(std::to_string(d));
  for (unsigned long p : req.primes) {
    if (!is_prime(p)) throw DomainError("not a prime: " + std::to_string(p));
    g.labels.push_back("T_" + std::to_string(p) + "(d-1,d)");
    g.row_meta.push_back({{"p", p}});
    auto& row = g.cells.emplace_back();
    for (long d = 1; d <= d_max; ++d) {
      const auto ud = static_cast<unsigned long>(d);
      row.emplace_back(pstirling::to_string(t_partial_exact(ud - 1, ud, p)));
    }
  }
  return g;
}

Grid tpoly_grid(const TableRequest& req, bool forward) {
  const long c_min = req.c_min.value_or(forward ? 0 : -2);
  const long c_max = req.c_max.value_or(forward ? 5 : 2);
  const long d_max = req.d_max.value_or(forward ? 5 : 4);
  if (c_min > c_max || d_max < 1) throw DomainError("empty table range");
  if (c_max - c_min > 200 || d_max > 60) throw DomainError("table range too large");
  Grid g;
  g.corner = "c\\d";
  for (long d = 1; d <= d_max; ++d) g.columns.push_back(std::to_string(d));
  for (long c = c_min; c <= c_max; ++c) {
    std::vector<std::optional<std::string>> row;
    bool any = false;
    for (long d = 1; d <= d_max; ++d) {
      if (forward && c >= d - 1) {
        row.emplace_back(format_tpoly(tpoly_forward(c, d), TermOrder::ascending, TermSpacing::compact));
        any = true;
      } else if (!forward && c <= d - 1) {
        const auto k = static_cast<unsigned long>(d - c);
        row.emplace_back(format_tpoly(tpoly_backward(k, static_cast<unsigned long>(d)), TermOrder::descending));
        any = true;
      } else {
        row.emplace_back();
      }
    }
    if (!any) continue;
    g.labels.push_back(std::to_string(c));
    g.row_meta.push_back({{"c", c}});
    g.cells.push_back(std::move(row));
  }
  return g;
}

std::string render_csv(const Grid& g) {
  std::ostringstream out;
  out << csv_field(g.corner);
  for (const auto& c : g.columns) out << ',' << csv_field(c);
  out << "\r\n";
  for (std::size_t r = 0; r < g.labels.size(); ++r) {
    out << csv_field(g.labels[r]);
    for (const auto& cell : g.cells[r]) out << ',' << (cell ? csv_field(*cell) : "");
    out << "\r\n";
  }
  return out.str();
}

std::string md_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    if (ch == '|' || ch == '\\') out += '\\';
    out += ch;
  }
  return out;
}

std::string render_md(const Grid& g) {
  std::ostringstream out;
  out << "| " << md_escape(g.corner) << " |";
  for (const auto& c : g.columns) out << ' ' << c << " |";
  out << "\n|---|";
  for (std::size_t i = 0; i < g.columns.size(); ++i) out << "---|";
  out << '\n';
  for (std::size_t r = 0; r < g.labels.size(); ++r) {
    out << "| " << md_escape(g.labels[r]) << " |";
    for (const auto& cell : g.cells[r]) out << ' ' << (cell ? md_escape(*cell) : "") << " |";
    out << '\n';
  }
  return out.str();
}

std::string render_json(const std::string& name, const Grid& g) {
  json doc;
  doc["table"] = name;
  doc["columns"] = json::array();
  for (const auto& c : g.columns) doc["columns"].push_back(std::stol(c));
  doc["rows"] = json::array();
  for (std::size_t r = 0; r < g.labels.size(); ++r) {
    json row = g.row_meta[r];
    row["label"] = g.labels[r];
    row["cells"] = json::array();
    for (const auto& cell : g.cells[r]) row["cells"].push_back(cell ? json(*cell) : json(nullptr));
    doc["rows"].push_back(std::move(row));
  }
  return doc.dump(2) + '\n';
}

} // namespace

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

std::string render_table(const TableRequest& req) {
  Grid g;
  if (req.name == "t1") {
    g = tpoly_grid(req, true);
  } else if (req.name == "t2") {
    g = t2_grid(req);
  } else if (req.name == "t3") {
    g = tpoly_grid(req, false);
  } else {
    throw DomainError("unknown table '" + req.name + "' (expected t1, t2 or t3)");
  }
  switch (req.format) {
    case TableFormat::csv: return render_csv(g);
    case TableFormat::md: return render_md(g);
    case TableFormat::json: return render_json(req.name, g);
  }
  return {};
}

} // namespace pstirling::cli
