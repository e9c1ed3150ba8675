// Acceptance run: one PASS/FAIL line per criterion, details indented below.
#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "superpar/cli.hpp"
#include "superpar/error.hpp"
#include "superpar/parallel.hpp"
#include "superpar/verify.hpp"

using namespace superpar;

namespace {

struct Config {
  std::vector<int> parts;
  int q;
};

std::string name(const Config& c) { return "(" + Composition(c.parts).to_string() + ")/F" + std::to_string(c.q); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Criterion {
  Criterion(int i, std::string t) : id(i), title(std::move(t)) {}

  int id;
  std::string title;
  bool ok = true;
  std::vector<std::string> details;

  void note(const std::string& s) { details.push_back(s); }
  void expect(bool cond, const std::string& s) {
    if (!cond) ok = false;
    details.push_back(std::string(cond ? "ok   " : "FAIL ") + s);
  }
  std::string text() const {
    std::string s = "C" + std::to_string(id) + (ok ? " PASS " : " FAIL ") + title + "\n";
    for (const auto& d : details) s += "     " + d + "\n";
    return s;
  }
};

// Per-block counts from the case table, 2d included as tabulated.
int tabulated_count(const std::string& kind, int q) {
  if (kind == "1a") return q - 1;
  if (kind == "1b") return 1;
  if (kind == "2a") return q * q - 1;
  if (kind.rfind("2b", 0) == 0 || kind.rfind("2c", 0) == 0 || kind.rfind("2d", 0) == 0) return q;
  if (kind.rfind("2e", 0) == 0) return 2;
  if (kind == "2f") return 1;
  return -1;
}

std::string status_line(const CheckResult& r) { return std::string(to_string(r.status)); }

}  // namespace

int main() {
  const std::vector<Config> main_configs = {{{1, 1}, 2}, {{1, 1}, 3}, {{2, 1}, 2}, {{2, 1}, 3}, {{1, 2}, 2},
                                            {{1, 2}, 3}, {{1, 1, 1}, 2}, {{1, 1, 1}, 3}, {{2, 2}, 2}, {{2, 2}, 3}};
  reset_certification_stats();

  Criterion c1{1, "supercharacter-theory axioms"};
  Criterion c2{2, "orbits on J and J* meet exactly one W_R-class of rook forms"};
  Criterion c3{3, "classification of P into the K_{D,rho}"};
  Criterion c4{4, "supports partition Irr(P), rows proportional to support sums"};
  Criterion c5{5, "per-block counts match the case table"};
  Criterion c6{6, "structured canonical form equals the orbit oracle"};
  Criterion c7{7, "character tables certified"};
  Criterion c8{8, "byte-identical JSON for equal config and seed"};

  for (const Config& cfg : main_configs) {
    ParabolicGroup g{Composition(cfg.parts), FieldSpec(cfg.q)};
    const auto t0 = std::chrono::steady_clock::now();
    SuperTable t = assemble_table(g);

    auto r1 = check_supertheory(g, t);
    const double elapsed = seconds_since(t0);
    std::ostringstream s1;
    s1 << name(cfg) << ": " << status_line(r1) << ", |A|=" << t.rows.size() << " |B|=" << t.cols.size()
       << " orbits=" << t.superclasses.num_orbits()
       << " max residual=" << r1.metrics["max_rounding_residual"].get<double>()
       << " max constancy dev=" << r1.metrics["max_constancy_deviation"].get<double>() << " (" << elapsed << " s)";
    c1.expect(r1.status == CheckStatus::pass, s1.str());
    const bool big = cfg.parts == std::vector<int>{2, 2} && cfg.q == 3;
    c1.expect(elapsed < (big ? 300.0 : 10.0), name(cfg) + " within the time budget");

    auto r2 = check_conjectures_1_2(g);
    std::ostringstream s2;
    s2 << name(cfg) << ": " << status_line(r2) << ", |J|=" << r2.metrics["elements_J"] << " orbits J/J*="
       << r2.metrics["orbits_J"] << "/" << r2.metrics["orbits_Jstar"] << " W_R-classes="
       << r2.metrics["placement_classes"];
    c2.expect(r2.status == CheckStatus::pass, s2.str());

    auto r3 = check_classification(g, t);
    std::ostringstream s3;
    s3 << name(cfg) << ": " << status_line(r3) << ", fibers sum " << r3.metrics["fiber_size_sum"] << " of |P|="
       << g.order() << ", labels=" << r3.metrics["labels"] << " superclasses=" << r3.metrics["superclasses"];
    c3.expect(r3.status == CheckStatus::pass && r3.metrics["fiber_size_sum"].get<std::uint64_t>() == g.order(),
              s3.str());

    if (g.order() <= kSupportsMaxOrder) {
      auto r4 = check_supports_partition(g, t);
      std::ostringstream s4;
      s4 << name(cfg) << ": " << status_line(r4) << ", |Irr(P)|=" << r4.metrics["irreducibles"]
         << " max proportionality error=" << r4.metrics["max_proportionality_error"].get<double>();
      c4.expect(r4.status == CheckStatus::pass, s4.str());
    }

    auto r5 = check_counts_casewise(g, t);
    std::ostringstream s5;
    bool table_ok = true;
    s5 << name(cfg) << ":";
    for (const auto& [kind, v] : r5.metrics["cases"].items()) {
      const int a = v["alpha"], b = v["beta"], want = tabulated_count(kind, cfg.q);
      s5 << " " << kind << "(a=" << a << ",b=" << b << ",table=" << want << ")";
      table_ok = table_ok && a == want && b == want;
    }
    c5.expect(r5.status == CheckStatus::pass && table_ok, s5.str());
  }

  // conjecture-scale evidence beyond blocks of two
  for (const Config& cfg : std::vector<Config>{{{3, 1}, 2}, {{1, 3}, 2}}) {
    ParabolicGroup g{Composition(cfg.parts), FieldSpec(cfg.q)};
    auto r = check_conjectures_1_2(g);
    std::ostringstream s;
    s << name(cfg) << " [" << r.metrics["scope"].get<std::string>() << "]: " << status_line(r)
      << ", |J|=" << r.metrics["elements_J"] << " orbits J/J*=" << r.metrics["orbits_J"] << "/"
      << r.metrics["orbits_Jstar"];
    c2.expect(r.status == CheckStatus::pass, s.str());
  }

  // case 2d does not occur above; record what it gives where it does
  {
    ParabolicGroup g{Composition({1, 2, 1}), FieldSpec(3)};
    auto r = check_counts_casewise(g, assemble_table(g));
    for (const auto& [kind, v] : r.metrics["cases"].items())
      if (kind.rfind("2d", 0) == 0 || kind.rfind("2e", 0) == 0) {
        std::ostringstream s;
        s << "info (1,2,1)/F3 outside the criterion configs: " << kind << " a=" << v["alpha"] << " b=" << v["beta"]
          << " table=" << tabulated_count(kind, 3);
        c5.note(s.str());
      }
  }

  // criterion 6
  const std::vector<Config> oracle_configs = {
      {{1, 1}, 2}, {{1, 1}, 3}, {{1, 1}, 5}, {{1, 1}, 7}, {{2, 1}, 2}, {{2, 1}, 3}, {{1, 2}, 2},
      {{1, 2}, 3}, {{1, 1, 1}, 2}, {{1, 1, 1}, 3}, {{2, 2}, 2}, {{2, 2}, 3}, {{2, 2}, 5}, {{1, 2, 1}, 2},
      {{1, 2, 1}, 3}, {{1, 2, 1}, 5}, {{2, 1, 2}, 2}, {{2, 1, 2}, 3}, {{2, 2, 2}, 2}, {{1, 1, 1, 1}, 2},
      {{1, 1, 1, 1}, 3}, {{2, 1, 1}, 3}, {{1, 1, 2}, 3}};
  for (const Config& cfg : oracle_configs) {
    ParabolicGroup g{Composition(cfg.parts), FieldSpec(cfg.q)};
    if (g.n_order() > (1u << 16)) continue;
    const auto part = orbits_on_J(g);
    const auto fallbacks = fallback_count();
    std::map<std::uint64_t, RookPlacement> d_of_rep;
    std::map<RookPlacement, std::uint64_t> rep_of_d;
    std::uint64_t agree = 0;
    for (std::uint64_t code = 0; code < g.n_order(); ++code) {
      const JElement x = g.j_element(code);
      const auto res = canonicalize_J_structured(g, x);
      const std::uint64_t rep = canonical_rep_oracle(part, code);
      const MatFq reached = replay(g, res.path, x.m);
      const bool path_ok = reached == build_xD(g, res.D).m;
      const bool orbit_ok = canonical_rep_oracle(part, g.j_code(g.j_coeffs(reached))) == rep;
      auto it1 = d_of_rep.emplace(rep, res.D).first;
      auto it2 = rep_of_d.emplace(res.D, rep).first;
      if (path_ok && orbit_ok && it1->second == res.D && it2->second == rep) ++agree;
    }
    std::ostringstream s;
    s << name(cfg) << ": " << agree << "/" << g.n_order() << " elements, " << d_of_rep.size()
      << " orbits, fallbacks " << fallback_count() - fallbacks;
    c6.expect(agree == g.n_order() && fallback_count() == fallbacks, s.str());
  }

  // criterion 7
  {
    ParabolicGroup gl{Composition({2}), FieldSpec(3)};
    FiniteGroup g(gl.enumerate_R());
    auto t = character_table(g, conjugacy_classes(g));
    auto d = t.degrees;
    std::sort(d.begin(), d.end());
    std::ostringstream s;
    s << "GL(2,3) degrees {";
    for (std::size_t i = 0; i < d.size(); ++i) s << (i ? "," : "") << d[i];
    s << "}";
    c7.expect(d == std::vector<int>{1, 1, 2, 2, 2, 3, 3, 4}, s.str());
    const auto st = certification_stats();
    std::ostringstream s2;
    s2 << st.tables << " tables computed in this run, " << st.failures << " failed certification, max row residual "
       << st.max_row_residual << ", max column residual " << st.max_column_residual << ", max degree residual "
       << st.max_degree_residual;
    c7.expect(st.tables > 0 && st.failures == 0 && st.max_row_residual < 1e-8 && st.max_column_residual < 1e-8, s2.str());
  }

  // criterion 8
  for (const Config& cfg : std::vector<Config>{{{2, 1}, 3}, {{1, 1, 1}, 3}, {{2, 2}, 2}}) {
    std::string outputs[2];
    int codes[2];
    for (int k = 0; k < 2; ++k) {
      RunConfig rc;
      rc.blocks = cfg.parts;
      rc.q = cfg.q;
      rc.checks = {"all"};
      rc.seed = 11;
      rc.threads = k == 0 ? 1 : 4;
      std::ostringstream out, err;
      codes[k] = run(rc, out, err);
      outputs[k] = out.str();
    }
    set_threads(0);
    std::ostringstream s;
    s << name(cfg) << ": " << outputs[0].size() << " bytes, exit " << codes[0] << "/" << codes[1]
      << ", threads 1 vs 4";
    c8.expect(outputs[0] == outputs[1] && codes[0] == 0 && codes[1] == 0, s.str());
  }

  bool all = true;
  std::string report;
  for (const Criterion* c : {&c1, &c2, &c3, &c4, &c5, &c6, &c7, &c8}) {
    report += c->text();
    all = all && c->ok;
  }
  report += all ? "ALL CRITERIA PASS\n" : "SOME CRITERIA FAIL\n";
  std::cout << report;
  std::ofstream("acceptance_report.txt") << report;
  return all ? 0 : 1;
}
