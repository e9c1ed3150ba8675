#include "superpar/io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "superpar/error.hpp"

namespace superpar {

using ojson = nlohmann::ordered_json;

double snap(double v) {
  const double r = std::round(v);
  if (std::abs(v - r) < kSnapTolerance) return r == 0 ? 0.0 : r;
  return v;
}

Complex snap(Complex v) { return {snap(v.real()), snap(v.imag())}; }

namespace {

ojson matrix_json(const MatFq& m) {
  ojson rows = ojson::array();
  for (int i = 0; i < m.rows(); ++i) {
    ojson row = ojson::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

ojson placement_json(const RookPlacement& d) {
  ojson out = ojson::array();
  for (const Root& a : d.roots) out.push_back({a.row + 1, a.col + 1});
  return out;
}

std::string matrix_string(const MatFq& m) {
  std::string s = "[";
  for (int i = 0; i < m.rows(); ++i) {
    if (i) s += ';';
    for (int j = 0; j < m.cols(); ++j) {
      if (j) s += ' ';
      s += std::to_string(m(i, j));
    }
  }
  return s + "]";
}

std::string complex_cell(Complex v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g%+.12gi", snap(v.real()), snap(v.imag()));
  return buf;
}

}  // namespace

std::string superclass_label_string(const SuperclassLabel& l) {
  std::string s = "D=" + to_string(l.D) + " rho=";
  for (std::size_t b = 0; b < l.rho.size(); ++b) {
    if (b) s += '|';
    s += std::string(to_string(l.rho[b].kind)) + matrix_string(l.rho[b].m);
  }
  return s;
}

std::string supercharacter_label_string(const SupercharacterLabel& l) {
  return "D=" + to_string(l.D) + " theta=" + std::to_string(l.theta);
}

ojson result_json(const ParabolicGroup& g, std::uint64_t seed, const SuperTable* t, const VerificationReport* report) {
  ojson doc;
  doc["config"] = {{"blocks", g.composition().parts()}, {"q", g.p()}, {"seed", seed}};
  ojson classes = ojson::array();
  ojson chars = ojson::array();
  ojson table = ojson::array();
  if (t) {
    for (std::size_t c = 0; c < t->cols.size(); ++c) {
      ojson rho = ojson::array();
      for (const auto& b : t->cols[c].rho) rho.push_back({{"case", to_string(b.kind)}, {"matrix", matrix_json(b.m)}});
      classes.push_back({{"D", placement_json(t->cols[c].D)},
                         {"rho", rho},
                         {"size", t->class_sizes[c]},
                         {"representative", matrix_json(t->col_reps[c])}});
    }
    for (std::size_t r = 0; r < t->rows.size(); ++r) {
      chars.push_back({{"D", placement_json(t->rows[r].D)},
                       {"theta", t->rows[r].theta},
                       {"degree", t->degrees[r]},
                       {"multiplier", t->multipliers[r]}});
      ojson row = ojson::array();
      for (const Complex& v : t->values[r]) row.push_back({snap(v.real()), snap(v.imag())});
      table.push_back(std::move(row));
    }
  }
  doc["superclasses"] = std::move(classes);
  doc["supercharacters"] = std::move(chars);
  doc["table"] = std::move(table);
  doc["verification"] = report ? to_json(*report) : ojson::object();
  return doc;
}

std::string table_csv(const SuperTable& t) {
  auto quote = [](const std::string& s) {
    std::string out = "\"";
    for (char ch : s) {
      if (ch == '"') out += '"';
      out += ch;
    }
    return out + "\"";
  };
  std::ostringstream os;
  os << quote("supercharacter");
  for (const auto& c : t.cols) os << ',' << quote(superclass_label_string(c));
  os << '\n';
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    os << quote(supercharacter_label_string(t.rows[r]));
    for (const Complex& v : t.values[r]) os << ',' << complex_cell(v);
    os << '\n';
  }
  return os.str();
}

LoadedResult parse_result(const ojson& doc) {
  try {
    LoadedResult out;
    const auto& cfg = doc.at("config");
    out.blocks = cfg.at("blocks").get<std::vector<int>>();
    out.q = cfg.at("q").get<int>();
    out.seed = cfg.at("seed").get<std::uint64_t>();
    for (const auto& row : doc.at("table")) {
      std::vector<Complex> values;
      for (const auto& v : row) values.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
      out.table.push_back(std::move(values));
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidConfig, std::string("malformed result file: ") + e.what());
  }
}

}  // namespace superpar
