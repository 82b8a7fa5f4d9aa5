#include "maxlin/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace maxlin {

using nlohmann::json;

std::string format_double(double x) {
  char buf[40];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, x);
    if (std::strtod(buf, nullptr) == x) break;
  }
  return buf;
}

namespace {

json entry_to_json(double v) {
  if (v == kInf) return json("inf");
  return json(v);
}

double entry_from_json(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return kInf;
    throw ParseError("matrix entry: unknown string value");
  }
  if (!j.is_number()) throw ParseError("matrix entry: expected number or \"inf\"");
  return j.get<double>();
}

}  // namespace

json matrix_to_json(const TropicalMatrix& C) {
  const int d = C.dim();
  json rows = json::array();
  for (int i = 0; i < d; ++i) {
    json row = json::array();
    for (int j = 0; j < d; ++j) row.push_back(entry_to_json(C(i, j)));
    rows.push_back(std::move(row));
  }
  return json{{"d", d}, {"entries", std::move(rows)}};
}

TropicalMatrix matrix_from_json(const json& j) {
  if (!j.contains("d") || !j.contains("entries")) throw ParseError("matrix: missing d/entries");
  const int d = j.at("d").get<int>();
  if (d < 1) throw ParseError("matrix: nonpositive dimension");
  const json& rows = j.at("entries");
  if (!rows.is_array() || static_cast<int>(rows.size()) != d)
    throw ParseError("matrix: wrong row count");
  TropicalMatrix C(d);
  for (int i = 0; i < d; ++i) {
    const json& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != d)
      throw ParseError("matrix: wrong column count", i + 1);
    for (int jj = 0; jj < d; ++jj) C(i, jj) = entry_from_json(row[static_cast<std::size_t>(jj)]);
  }
  C.validate();
  return C;
}

json model_to_json(const MlbnModel& m) {
  json edges = json::array();
  for (std::size_t i = 0; i < m.dag.edges().size(); ++i) {
    const Edge& e = m.dag.edges()[i];
    edges.push_back(json::array({e.src + 1, e.dst + 1, m.dag.weights()[i]}));
  }
  json perm = nullptr;
  if (m.permutation) {
    perm = json::array();
    for (int v : *m.permutation) perm.push_back(v + 1);
  }
  return json{{"d", m.dim()}, {"edges", std::move(edges)}, {"permutation", std::move(perm)}};
}

MlbnModel model_from_json(const json& j) {
  if (!j.contains("d") || !j.contains("edges")) throw ParseError("model: missing d/edges");
  const int d = j.at("d").get<int>();
  std::vector<Edge> edges;
  std::vector<double> weights;
  for (const json& t : j.at("edges")) {
    if (!t.is_array() || t.size() != 3) throw ParseError("model: edge must be [src, dst, weight]");
    edges.push_back({t[0].get<int>() - 1, t[1].get<int>() - 1});
    weights.push_back(t[2].get<double>());
  }
  std::optional<std::vector<int>> perm;
  if (j.contains("permutation") && !j.at("permutation").is_null()) {
    std::vector<int> p;
    for (const json& v : j.at("permutation")) p.push_back(v.get<int>() - 1);
    perm = std::move(p);
  }
  return MlbnModel::from_dag(Dag(d, std::move(edges), std::move(weights)), std::move(perm));
}

namespace {

// Subdivision labels serialize as [i, j] for the tight constraint
// x_i - x_j = c_ij, i.e. [dst, src] of the edge.
json cell_to_json(const Cell& c) {
  json out = json::array();
  for (const Edge& e : c.edges) out.push_back(json::array({e.dst + 1, e.src + 1}));
  return out;
}

Cell cell_from_json(const json& j) {
  Cell c;
  for (const json& p : j) {
    if (!p.is_array() || p.size() != 2) throw ParseError("subdivision: label must be [i, j]");
    c.edges.push_back({p[1].get<int>() - 1, p[0].get<int>() - 1});
  }
  c.canonicalize();
  return c;
}

}  // namespace

json subdivision_to_json(const Subdivision& s) {
  Subdivision canon = s;
  canon.canonicalize();
  json universe = json::array();
  for (const Edge& e : canon.universe) universe.push_back(json::array({e.dst + 1, e.src + 1}));
  json cells = json::array();
  for (const Cell& c : canon.cells) cells.push_back(cell_to_json(c));
  return json{{"d", canon.d}, {"universe", std::move(universe)}, {"cells", std::move(cells)}};
}

Subdivision subdivision_from_json(const json& j) {
  if (!j.contains("d") || !j.contains("universe") || !j.contains("cells"))
    throw ParseError("subdivision: missing d/universe/cells");
  Subdivision s;
  s.d = j.at("d").get<int>();
  for (const json& p : j.at("universe")) {
    if (!p.is_array() || p.size() != 2) throw ParseError("subdivision: label must be [i, j]");
    s.universe.push_back({p[1].get<int>() - 1, p[0].get<int>() - 1});
  }
  for (const json& c : j.at("cells")) s.cells.push_back(cell_from_json(c));
  s.canonicalize();
  return s;
}

json estimation_to_json(const EstimationResult& r) {
  json edges = json::array();
  for (const Edge& e : r.edges)
    edges.push_back(json::array({e.src + 1, e.dst + 1, r.C_hat(e.dst, e.src)}));
  json scores = json::array();
  const int d = r.scores.d;
  for (int i = 0; i < d; ++i) {
    json row = json::array();
    for (int j = 0; j < d; ++j) row.push_back(r.scores.at(i, j));
    scores.push_back(std::move(row));
  }
  json cycle = nullptr;
  if (r.cycle) {
    cycle = json::array();
    for (int v : *r.cycle) cycle.push_back(v + 1);
  }
  return json{{"d", d},
              {"edges", std::move(edges)},
              {"acyclic", r.is_acyclic},
              {"cycle", std::move(cycle)},
              {"scores", std::move(scores)}};
}

namespace {

bool parse_number(const std::string& field, double& out) {
  const char* begin = field.c_str();
  char* end = nullptr;
  out = std::strtod(begin, &end);
  if (end == begin) return false;
  while (*end == ' ' || *end == '\t') ++end;
  return *end == '\0';
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  for (std::string& f : fields) {
    const auto a = f.find_first_not_of(" \t");
    const auto b = f.find_last_not_of(" \t");
    f = (a == std::string::npos) ? std::string() : f.substr(a, b - a + 1);
  }
  return fields;
}

}  // namespace

CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  long row_no = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++row_no;
    if (line.empty() || line[0] == '#') continue;
    const std::vector<std::string> fields = split_csv_line(line);
    if (table.columns.empty() && !saw_header) {
      // A first row with any non-numeric field is the header.
      bool numeric = true;
      double tmp;
      for (const std::string& f : fields)
        if (!parse_number(f, tmp)) {
          numeric = false;
          break;
        }
      if (!numeric) {
        for (const std::string& f : fields) {
          if (f.empty()) throw ParseError("csv: empty header field", row_no);
          table.columns.push_back(f);
        }
        saw_header = true;
        continue;
      }
      for (std::size_t i = 0; i < fields.size(); ++i)
        table.columns.push_back("X" + std::to_string(i + 1));
    }
    if (fields.size() != table.columns.size())
      throw ParseError("csv: wrong field count", row_no);
    std::vector<double> row(fields.size());
    for (std::size_t c = 0; c < fields.size(); ++c)
      if (!parse_number(fields[c], row[c]))
        throw ParseError("csv: not a number", row_no, static_cast<long>(c + 1));
    table.rows.push_back(std::move(row));
  }
  return table;
}

CsvTable read_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open file: " + path);
  return read_csv(in);
}

void write_sample_csv(std::ostream& out, const Sample& s) {
  for (int i = 0; i < s.dim(); ++i) out << (i ? "," : "") << 'X' << (i + 1);
  out << '\n';
  for (std::size_t k = 0; k < s.size(); ++k) {
    for (int i = 0; i < s.dim(); ++i) out << (i ? "," : "") << format_double(s.at(k, i));
    out << '\n';
  }
}

Sample sample_from_csv(std::istream& in) {
  const CsvTable t = read_csv(in);
  return sample_from_table(t, {}, Preprocess::kNone, nullptr);
}

Sample sample_from_table(const CsvTable& table, const std::vector<std::string>& columns,
                         Preprocess preprocess, std::size_t* dropped_rows) {
  std::vector<std::size_t> idx;
  if (columns.empty()) {
    for (std::size_t i = 0; i < table.columns.size(); ++i) idx.push_back(i);
  } else {
    for (const std::string& name : columns) {
      const auto it = std::find(table.columns.begin(), table.columns.end(), name);
      if (it == table.columns.end()) throw DataError("csv: no column named " + name);
      idx.push_back(static_cast<std::size_t>(it - table.columns.begin()));
    }
  }
  if (idx.empty()) throw DataError("csv: no columns selected");

  Sample s(static_cast<int>(idx.size()));
  std::size_t dropped = 0;
  std::vector<double> row(idx.size());
  for (const auto& r : table.rows) {
    bool ok = true;
    for (std::size_t c = 0; c < idx.size(); ++c) {
      double v = r[idx[c]];
      if (preprocess == Preprocess::kNegLog) {
        if (!(v > 0.0)) {
          ok = false;
          break;
        }
        v = -std::log(v);
      }
      row[c] = v;
    }
    if (!ok) {
      ++dropped;
      continue;
    }
    s.add(std::span<const double>(row));
  }
  if (dropped_rows) *dropped_rows = dropped;
  if (s.size() == 0) throw AllRowsDropped("csv: no usable rows after preprocessing");
  return s;
}

}  // namespace maxlin
