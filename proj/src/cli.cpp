#include "superpar/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "superpar/error.hpp"
#include "superpar/io.hpp"
#include "superpar/parallel.hpp"

namespace superpar {

int parse_args(int argc, char** argv, RunConfig& cfg, std::ostream& out, std::ostream& err) {
  CLI::App app{"Supercharacter tables of parabolic subgroups of GL(n, q)"};
  std::string blocks;
  auto* b = app.add_option("--blocks", blocks, "block sizes, e.g. 2,1,2");
  auto* q = app.add_option("--q", cfg.q, "prime field size");
  app.add_option("--verify", cfg.checks, "checks: supertheory, conjectures, classification, supports, counts, all")
      ->delimiter(',')
      ->expected(1, -1);
  app.add_option("--out", cfg.output_path, "output file (default: standard output)");
  app.add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--max-group-order", cfg.max_group_order, "enumeration bound on |P|");
  app.add_option("--seed", cfg.seed, "seed for the randomized steps");
  app.add_option("--threads", cfg.threads, "worker threads (default: SUPERPAR_THREADS or all cores)")
      ->check(CLI::NonNegativeNumber);
  auto* in = app.add_option("--input", cfg.input_path, "re-verify a JSON result file");
  in->excludes(b)->excludes(q);
  try {
    app.parse(argc, argv);
    if (cfg.input_path.empty() && (blocks.empty() || q->count() == 0))
      throw CLI::ValidationError("--blocks and --q are required unless --input is given");
    if (!blocks.empty()) cfg.blocks = Composition::parse(blocks).parts();
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  } catch (const Error& e) {
    err << e.what() << '\n';
    return kExitUsage;
  }
  return -1;
}

namespace {

int write_output(const RunConfig& cfg, const std::string& text, std::ostream& out, std::ostream& err) {
  if (cfg.output_path.empty()) {
    out << text;
    return kExitPass;
  }
  std::ofstream f(cfg.output_path, std::ios::binary);
  f << text;
  if (!f) {
    err << "cannot write " << cfg.output_path << '\n';
    return kExitUsage;
  }
  return kExitPass;
}

}  // namespace

int run(const RunConfig& given, std::ostream& out, std::ostream& err) {
  RunConfig cfg = given;
  if (cfg.threads > 0) set_threads(cfg.threads);

  std::vector<std::vector<Complex>> loaded;
  if (!cfg.input_path.empty()) {
    std::ifstream f(cfg.input_path);
    if (!f) {
      err << "cannot read " << cfg.input_path << '\n';
      return kExitUsage;
    }
    try {
      const auto res = parse_result(nlohmann::ordered_json::parse(f));
      cfg.blocks = res.blocks;
      cfg.q = res.q;
      cfg.seed = res.seed;
      loaded = res.table;
    } catch (const std::exception& e) {
      err << e.what() << '\n';
      return kExitUsage;
    }
    if (cfg.checks.empty()) cfg.checks = {"all"};
  }

  std::unique_ptr<ParabolicGroup> g;
  try {
    Bounds bounds;
    bounds.max_universe = cfg.max_group_order;
    g = std::make_unique<ParabolicGroup>(Composition(cfg.blocks), FieldSpec(cfg.q), bounds);
    for (const auto& c : cfg.checks)
      if (c != "all" && std::find(kAllChecks.begin(), kAllChecks.end(), c) == kAllChecks.end())
        throw Error(ErrorCode::InvalidConfig, "unknown check '" + c + "'");
  } catch (const Error& e) {
    err << e.what() << '\n';
    return kExitUsage;
  }

  std::unique_ptr<SuperTable> table;
  try {
    table = std::make_unique<SuperTable>(assemble_table(*g, cfg.seed));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::Overflow && e.code() != ErrorCode::UnsupportedBlocks) throw;
    if (cfg.checks.empty()) {
      err << e.what() << '\n';
      return kExitUsage;
    }
    err << "table skipped: " << e.what() << '\n';
  }

  if (!loaded.empty()) {
    if (!table || loaded.size() != table->rows.size()) {
      err << "table in " << cfg.input_path << " does not match its configuration\n";
      return kExitFail;
    }
    for (std::size_t r = 0; r < loaded.size(); ++r) {
      if (loaded[r].size() != table->cols.size()) {
        err << "table in " << cfg.input_path << " does not match its configuration\n";
        return kExitFail;
      }
      table->values[r] = loaded[r];
    }
  } else if (table) {
    // verify exactly what gets written
    for (auto& row : table->values)
      for (auto& v : row) v = snap(v);
  }

  std::unique_ptr<VerificationReport> report;
  if (!cfg.checks.empty())
    report = std::make_unique<VerificationReport>(run_checks(*g, table.get(), cfg.checks, cfg.seed));

  std::string text;
  if (cfg.format == "csv") {
    if (!table) {
      err << "no table to write as CSV\n";
      return kExitUsage;
    }
    text = table_csv(*table);
  } else {
    text = result_json(*g, cfg.seed, table.get(), report.get()).dump(2) + "\n";
  }
  if (int rc = write_output(cfg, text, out, err); rc != kExitPass) return rc;

  if (report) {
    for (const auto& c : report->checks) err << c.name << ": " << to_string(c.status) << '\n';
    if (report->any_fail()) return kExitFail;
    if (report->all_skipped()) return kExitSkipped;
  }
  return kExitPass;
}

}  // namespace superpar
