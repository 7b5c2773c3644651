// Command-line front end: artifact verification, CNF generation, solving,
// model enumeration, catalogs, pivot instances and bounds arithmetic.

#include "ramsey.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <filesystem>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace ramsey;

enum class ReportMode { Human, Kv };

// Collects key=value pairs; human mode aligns them, kv mode prints them raw.
class Report {
public:
  explicit Report(ReportMode mode) : mode_(mode) {}

  template <typename T>
  auto put(const std::string &key, const T &value) -> void {
    std::ostringstream s;
    s << value;
    lines_.emplace_back(key, s.str());
  }

  auto note(const std::string &text) -> void { lines_.emplace_back("", text); }

  auto print(std::ostream &out) const -> void {
    std::size_t width = 0;
    for (const auto &[k, v] : lines_)
      width = std::max(width, k.size());
    for (const auto &[k, v] : lines_) {
      if (k.empty()) {
        if (mode_ == ReportMode::Human)
          out << v << "\n";
        else
          out << "# " << v << "\n";
      } else if (mode_ == ReportMode::Kv) {
        out << k << "=" << v << "\n";
      } else {
        out << k << std::string(width - k.size() + 2, ' ') << v << "\n";
      }
    }
  }

private:
  ReportMode mode_;
  std::vector<std::pair<std::string, std::string>> lines_;
};

struct Options {
  int k = 0;
  int n = 0;
  std::string encoding = "reduced";
  std::string solver;
  double timeout = 0;
  int workers = 1;
  std::string in;
  std::string out;
  std::string format = "matrix";
  std::string report = "human";
};

auto solver_config(const Options &o) -> SolverConfig {
  SolverConfig cfg;
  cfg.solver = o.solver;
  if (o.timeout > 0)
    cfg.timeout_seconds = o.timeout;
  cfg.workers = o.workers;
  cfg.validate();
  if (cfg.resolved_solver().empty())
    throw Error(ErrorKind::SolverMissing, "no solver: pass --solver or set " + std::string(solver_env_var));
  return cfg;
}

auto report_mode(const Options &o) -> ReportMode { return o.report == "kv" ? ReportMode::Kv : ReportMode::Human; }

auto write_output(const Options &o, const std::string &text) -> void {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f)
    throw Error(ErrorKind::InvalidArgument, "cannot write " + o.out);
  f << text;
}

auto format_tournaments(const Options &o, int k, const std::vector<Tournament> &ts, bool complete) -> std::string {
  if (o.format == "hex") {
    Catalog cat{.k = k, .n = ts.empty() ? 0 : ts.front().order(), .complete = complete};
    for (const auto &t : ts)
      cat.entries.push_back({canonical_form(t), t});
    return format_catalog(cat);
  }
  std::string text;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (i)
      text += "\n";
    text += format_matrix(ts[i]);
  }
  return text;
}

auto load_tournaments(const std::string &path, const std::string &format) -> std::vector<Tournament> {
  return parse_external_db(path, parse_db_format(format)).tournaments;
}

// Pattern or out-side specs: an artifact name, h:N, hc:N, tt:N, generic:M,
// or a tournament file (first entry, matrix format unless it has a catalog
// header).
auto parse_spec_tournament(const std::string &spec) -> std::optional<Tournament> {
  const auto colon = spec.find(':');
  if (colon != std::string::npos) {
    const auto kind = spec.substr(0, colon);
    const int m = std::stoi(spec.substr(colon + 1));
    if (kind == "h")
      return h_tournament(m);
    if (kind == "hc")
      return h_complement(m);
    if (kind == "tt")
      return Tournament::transitive(m);
    if (kind == "generic")
      return std::nullopt;
    throw Error(ErrorKind::InvalidArgument, "unknown spec '" + spec + "'");
  }
  for (const auto &name : artifact_names())
    if (spec == name)
      return load_artifact(name).tournament;
  const auto text = read_text_file(spec);
  const auto ts = text.starts_with("tournament-catalog") ? parse_catalog(text).tournaments() : parse_matrices(text);
  if (ts.empty())
    throw Error(ErrorKind::ParseError, spec + ": no tournaments");
  return ts.front();
}

auto load_artifact_or_pattern(const std::string &spec) -> Tournament {
  auto t = parse_spec_tournament(spec);
  if (!t)
    throw Error(ErrorKind::InvalidArgument, "a pattern must be a concrete tournament");
  return *t;
}

auto pivot_side(const std::string &spec) -> PartialTournament {
  if (spec.starts_with("generic:"))
    return PartialTournament(std::stoi(spec.substr(8)));
  return PartialTournament(*parse_spec_tournament(spec));
}

// --- subcommands -------------------------------------------------------------

auto run_verify(const Options &o, const std::vector<std::string> &names) -> int {
  Report r(report_mode(o));
  bool ok = true;
  if (!o.in.empty()) {
    const auto db = parse_external_db(o.in, parse_db_format(o.format));
    r.put("file", o.in);
    r.put("count", db.tournaments.size());
    if (o.k > 0) {
      std::size_t free = 0;
      for (const auto &t : db.tournaments)
        free += has_tt_k(t, o.k) ? 0 : 1;
      r.put("tt" + std::to_string(o.k) + "_free", free);
    }
    std::size_t doubly = 0;
    std::set<CanonicalForm> forms;
    for (const auto &t : db.tournaments) {
      doubly += degree_profile(t).is_doubly_regular ? 1 : 0;
      forms.insert(canonical_form(t));
    }
    r.put("doubly_regular", doubly);
    r.put("distinct_classes", forms.size());
  }
  const auto selected = names.empty() && o.in.empty() ? artifact_names() : names;
  for (const auto &name : selected) {
    const auto start = std::chrono::steady_clock::now();
    const auto report = verify_artifact(load_artifact(name));
    for (const auto &c : report.outcomes) {
      const std::string status = c.kind == ClaimKind::Info ? "info" : (c.passed ? "pass" : "FAIL");
      r.put(name + "." + c.id, status + " [" + to_string(c.kind) + "] " + c.description + " (" + c.observed + ")");
    }
    r.put(name + ".seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    ok = ok && report.all_passed();
  }
  r.put("result", ok ? "pass" : "fail");
  r.print(std::cout);
  return ok ? 0 : 1;
}

auto run_encode(const Options &o) -> int {
  const auto f = encode(parse_encoding(o.encoding), o.n, o.k);
  Report r(report_mode(o));
  if (o.out.empty()) {
    std::cout << emit_dimacs(f);
    return 0;
  }
  write_output(o, emit_dimacs(f));
  std::ofstream(o.out + ".map") << emit_varmap(f.varmap);
  r.put("encoding", o.encoding);
  r.put("vars", f.var_count);
  r.put("clauses", f.clauses.size());
  r.put("literals", f.literal_count());
  if (parse_encoding(o.encoding) == Encoding::Reduced) {
    const auto direct = encode_direct(o.n, o.k);
    r.put("direct_literals", direct.literal_count());
    r.put("literal_reduction_percent",
          100.0 * (1.0 - static_cast<double>(f.literal_count()) / static_cast<double>(direct.literal_count())));
  }
  r.put("dimacs", o.out);
  r.put("varmap", o.out + ".map");
  r.print(std::cerr);
  return 0;
}

auto run_solve(const Options &o, const std::string &expect) -> int {
  const auto cfg = solver_config(o);
  CnfFormula f;
  if (!o.in.empty()) {
    f = parse_dimacs(read_text_file(o.in));
    const auto map_path = o.in + ".map";
    if (std::filesystem::exists(map_path))
      f.varmap = parse_varmap(read_text_file(map_path));
    if (o.k > 0)
      f.varmap.forbidden_k = o.k;
  } else {
    f = encode(parse_encoding(o.encoding), o.n, o.k);
  }
  const auto outcome = solve(f, cfg);
  Report r(report_mode(o));
  r.put("status", to_string(outcome.status));
  r.put("wall_time", outcome.wall_time);
  r.put("log", outcome.log_path.string());
  if (!outcome.detail.empty())
    r.put("detail", outcome.detail);
  if (outcome.status == SolveStatus::Sat && f.varmap.n >= 2) {
    const auto t = decode_model(outcome, f.varmap, f.varmap.n);
    r.put("max_transitive", max_transitive(t));
    if (!o.out.empty())
      write_output(o, format_tournaments(o, f.varmap.forbidden_k, {t}, false));
    else
      r.note(format_matrix(t));
  }
  bool ok = outcome.status != SolveStatus::Unknown;
  if (!expect.empty())
    ok = ok && to_string(outcome.status) == (expect == "sat" ? "SAT" : "UNSAT");
  r.put("result", ok ? "pass" : "fail");
  r.print(std::cout);
  return ok ? 0 : 1;
}

auto run_enumerate(const Options &o, std::size_t limit, long long expect_classes) -> int {
  const auto cfg = solver_config(o);
  const auto f = encode(parse_encoding(o.encoding), o.n, o.k);
  const auto e = enumerate_models(f, cfg, limit ? std::optional<std::size_t>(limit) : std::nullopt);
  Report r(report_mode(o));
  r.put("labelled_models", e.labelled_models);
  r.put("exhausted", e.exhausted ? 1 : 0);
  r.put("classes", e.classes.size());
  if (!o.out.empty())
    write_output(o, format_tournaments(o, o.k, e.classes, e.exhausted));
  bool ok = true;
  if (expect_classes >= 0)
    ok = e.exhausted && static_cast<long long>(e.classes.size()) == expect_classes;
  r.put("result", ok ? "pass" : "fail");
  r.print(std::cout);
  return ok ? 0 : 1;
}

auto run_catalog(const Options &o, bool extend, long long expect_count, const std::string &pattern) -> int {
  Report r(report_mode(o));
  const auto start = std::chrono::steady_clock::now();
  Catalog cat;
  if (!pattern.empty()) {
    const auto p = load_artifact_or_pattern(pattern);
    const auto search = tt_and_pattern_free_search(o.k, p, o.n, o.workers);
    for (const auto &c : search.by_order)
      r.put("order_" + std::to_string(c.n), c.size());
    r.put("largest_order", search.largest_order);
    if (const auto *largest = search.largest())
      cat = *largest;
  } else {
    const auto parts = build_part_catalogs(o.k, o.workers);
    if (!o.in.empty()) {
      const auto db = parse_external_db(o.in, parse_db_format(o.format));
      if (!db.catalog)
        throw Error(ErrorKind::InvalidArgument, "--in must be a catalog file (--format hex)");
      cat = *db.catalog;
    } else {
      cat = build_catalog(o.n, o.k, parts, o.workers);
    }
    if (extend)
      cat = extend_catalog(cat, o.workers);
  }
  r.put("n", cat.n);
  r.put("k", cat.k);
  r.put("complete", cat.complete ? 1 : 0);
  r.put("count", cat.size());
  r.put("seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  if (!o.out.empty()) {
    Options w = o;
    write_output(w, w.format == "hex" ? format_catalog(cat) : format_tournaments(w, cat.k, cat.tournaments(), true));
  }
  const bool ok = expect_count < 0 || static_cast<long long>(cat.size()) == expect_count;
  r.put("result", ok ? "pass" : "fail");
  r.print(std::cout);
  return ok ? 0 : 1;
}

auto run_pivot(const Options &o, const std::string &right, const std::string &expect) -> int {
  const auto cfg = solver_config(o);
  const auto lefts = load_tournaments(o.in, o.format);
  const auto out_side = pivot_side(right);
  std::vector<CnfFormula> instances;
  for (const auto &t : lefts)
    instances.push_back(pivot_instance(PartialTournament(t), out_side, o.k, parse_encoding(o.encoding)));
  const auto outcomes = solve_batch(instances, cfg);
  Report r(report_mode(o));
  bool ok = true;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const auto &oc = outcomes[i];
    std::string line = to_string(oc.status) + " " + std::to_string(oc.wall_time) + "s";
    if (oc.status == SolveStatus::Sat) {
      const auto t = decode_model(oc, instances[i].varmap, instances[i].varmap.n);
      line += " verified_tt" + std::to_string(o.k) + "_free=" + (has_tt_k(t, o.k) ? "0" : "1");
      if (!o.out.empty())
        std::ofstream(o.out + "." + std::to_string(i)) << format_matrix(t);
    }
    r.put("instance_" + std::to_string(i), line);
    if (oc.status == SolveStatus::Unknown)
      ok = false;
    else if (!expect.empty())
      ok = ok && to_string(oc.status) == (expect == "sat" ? "SAT" : "UNSAT");
  }
  r.put("result", ok ? "pass" : "fail");
  r.print(std::cout);
  return ok ? 0 : 1;
}

auto run_ramsey(const Options &o, long long expect) -> int {
  const auto cfg = solver_config(o);
  const auto enc = parse_encoding(o.encoding);
  const int n_max = o.n > 0 ? o.n : 64;
  Report r(report_mode(o));
  std::optional<int> value;
  for (int n = o.k; n <= n_max; ++n) {
    const auto f = encode(enc, n, o.k);
    const auto outcome = solve(f, cfg);
    std::filesystem::remove(outcome.log_path);
    r.put("n_" + std::to_string(n), to_string(outcome.status) + " " + std::to_string(outcome.wall_time) + "s");
    if (outcome.status == SolveStatus::Sat)
      decode_model(outcome, f.varmap, n); // throws unless the model is TT_k-free
    if (outcome.status == SolveStatus::Unknown)
      break;
    if (outcome.status == SolveStatus::Unsat) {
      value = n;
      break;
    }
  }
  r.put("k", o.k);
  r.put("encoding", to_string(enc));
  r.put("R", value ? std::to_string(*value) : "unknown");
  const bool ok = value && (expect < 0 || *value == expect);
  r.put("result", ok ? "pass" : "fail");
  r.print(std::cout);
  return ok ? 0 : 1;
}

auto run_bounds(const Options &o) -> int {
  const auto b = cycle_bounds(o.n);
  Report r(report_mode(o));
  r.put("n", b.n);
  r.put("triples", choose3(b.n));
  r.put("min_tt3", b.min_tt3);
  r.put("max_cycles", b.max_cycles.numerator());
  // Average as cycles over a third of the edges (each cycle covers 3), the
  // form used when comparing against integer |D| caps; reduced form beside it.
  const auto edges = choose2(b.n);
  const auto g = std::gcd<std::int64_t>(3, edges);
  if (b.avg_cycles_per_edge.denominator() == 1)
    r.put("avg_cycles_per_edge", b.avg_cycles_per_edge.numerator());
  else
    r.put("avg_cycles_per_edge", std::to_string(3 * b.max_cycles.numerator() / g) + "/" + std::to_string(edges / g));
  r.put("avg_cycles_per_edge_reduced", std::to_string(b.avg_cycles_per_edge.numerator()) +
                                           (b.avg_cycles_per_edge.denominator() == 1
                                                ? std::string()
                                                : "/" + std::to_string(b.avg_cycles_per_edge.denominator())));
  r.put("avg_cycles_per_edge_value", boost::rational_cast<double>(b.avg_cycles_per_edge));
  r.put("avg_is_integer", b.avg_cycles_per_edge.denominator() == 1 ? 1 : 0);
  r.put("d_cap", b.d_cap);
  if (b.n % 4 == 3) {
    // Doubly regular: every vertex has out-degree (n-1)/2.
    const auto tt3 = b.n * choose2((b.n - 1) / 2);
    r.put("doubly_regular_tt3", tt3);
    r.put("doubly_regular_cycles", choose3(b.n) - tt3);
  }
  const bool ok = b.min_tt3 + b.max_cycles.numerator() == choose3(b.n);
  r.put("result", ok ? "pass" : "fail");
  r.print(std::cout);
  return ok ? 0 : 1;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Directed Ramsey number toolkit"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App *cmd) {
    cmd->add_option("--report", o.report, "human or kv")->check(CLI::IsMember({"human", "kv"}));
  };
  auto add_solver = [&](CLI::App *cmd) {
    cmd->add_option("--solver", o.solver, "DIMACS solver executable (default $RAMSEY_SOLVER)");
    cmd->add_option("--timeout", o.timeout, "per-instance timeout in seconds")->check(CLI::PositiveNumber);
    cmd->add_option("--workers", o.workers, "parallel solver processes")->check(CLI::PositiveNumber);
  };
  auto add_encoding = [&](CLI::App *cmd) {
    cmd->add_option("--encoding", o.encoding, "direct, cycle or reduced")
        ->check(CLI::IsMember({"direct", "cycle", "reduced"}));
  };
  auto add_format = [&](CLI::App *cmd) {
    cmd->add_option("--format", o.format, "matrix or hex")->check(CLI::IsMember({"matrix", "hex"}));
  };

  std::vector<std::string> names;
  auto *verify = app.add_subcommand("verify", "check the embedded tournaments (or a data file)");
  verify->add_option("names", names, "artifact names (default: all)")
      ->check(CLI::IsMember(artifact_names()));
  verify->add_option("--in", o.in, "tournament file to summarise")->check(CLI::ExistingFile);
  verify->add_option("--k", o.k, "count TT_k-free entries of --in")->check(CLI::PositiveNumber);
  add_format(verify);
  add_common(verify);

  auto *enc = app.add_subcommand("encode", "write the CNF forbidding TT_k on n vertices");
  enc->add_option("--n", o.n)->required()->check(CLI::Range(2, 64));
  enc->add_option("--k", o.k)->required()->check(CLI::Range(3, 64));
  enc->add_option("--out", o.out, "DIMACS path; the varmap goes to <out>.map");
  add_encoding(enc);
  add_common(enc);

  std::string expect_status;
  auto *slv = app.add_subcommand("solve", "solve an encoding or a DIMACS file");
  slv->add_option("--n", o.n)->check(CLI::Range(2, 64));
  slv->add_option("--k", o.k)->check(CLI::Range(3, 64));
  slv->add_option("--in", o.in, "DIMACS file (uses <in>.map when present)")->check(CLI::ExistingFile);
  slv->add_option("--out", o.out, "write the decoded tournament here");
  slv->add_option("--expect", expect_status)->check(CLI::IsMember({"sat", "unsat"}));
  add_encoding(slv);
  add_solver(slv);
  add_format(slv);
  add_common(slv);

  std::size_t limit = 0;
  long long expect_classes = -1;
  auto *en = app.add_subcommand("enumerate", "list TT_k-free n-vertex tournaments up to isomorphism");
  en->add_option("--n", o.n)->required()->check(CLI::Range(2, 64));
  en->add_option("--k", o.k)->required()->check(CLI::Range(3, 64));
  en->add_option("--limit", limit, "stop after this many labelled models");
  en->add_option("--expect-classes", expect_classes);
  en->add_option("--out", o.out);
  add_encoding(en);
  add_solver(en);
  add_format(en);
  add_common(en);

  bool extend = false;
  long long expect_count = -1;
  std::string pattern;
  auto *cat = app.add_subcommand("catalog", "build a catalog of TT_k-free tournaments");
  cat->add_option("--n", o.n, "order (maximum order with --pattern)")->required()->check(CLI::Range(2, 64));
  cat->add_option("--k", o.k)->required()->check(CLI::Range(3, 7));
  cat->add_option("--in", o.in, "start from this catalog file instead of building order n")
      ->check(CLI::ExistingFile);
  cat->add_flag("--extend", extend, "extend the catalog by one vertex");
  cat->add_option("--pattern", pattern, "also forbid this tournament (artifact name, h:N, hc:N or file)");
  cat->add_option("--expect-count", expect_count);
  cat->add_option("--out", o.out);
  cat->add_option("--workers", o.workers)->check(CLI::PositiveNumber);
  add_format(cat);
  add_common(cat);

  std::string right;
  auto *piv = app.add_subcommand("pivot", "solve X -> p -> Y instances, one per tournament in --in");
  piv->add_option("--k", o.k)->required()->check(CLI::Range(3, 64));
  piv->add_option("--in", o.in, "in-neighbourhood tournaments")->required()->check(CLI::ExistingFile);
  piv->add_option("--right", right, "out-neighbourhood: artifact name, generic:M, tt:M, h:N, hc:N or file")
      ->required();
  piv->add_option("--expect", expect_status)->check(CLI::IsMember({"sat", "unsat"}));
  piv->add_option("--out", o.out, "prefix for decoded tournaments of Sat instances");
  add_encoding(piv);
  add_solver(piv);
  add_format(piv);
  add_common(piv);

  long long expect_r = -1;
  auto *ram = app.add_subcommand("ramsey", "find R(k) by solving n = k, k+1, ...");
  ram->add_option("--k", o.k)->required()->check(CLI::Range(3, 64));
  ram->add_option("--n", o.n, "largest order to try");
  ram->add_option("--expect", expect_r);
  add_encoding(ram);
  add_solver(ram);
  add_common(ram);

  auto *bnd = app.add_subcommand("bounds", "3-cycle arithmetic behind the |D| cap");
  bnd->add_option("--n", o.n)->required()->check(CLI::Range(3, 100000));
  add_common(bnd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    // --help exits 0; every usage error maps to the generic error code.
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*verify)
      return run_verify(o, names);
    if (*enc)
      return run_encode(o);
    if (*slv) {
      if (o.in.empty() && (o.n == 0 || o.k == 0))
        throw Error(ErrorKind::InvalidArgument, "solve needs --in or both --n and --k");
      return run_solve(o, expect_status);
    }
    if (*en)
      return run_enumerate(o, limit, expect_classes);
    if (*cat)
      return run_catalog(o, extend, expect_count, pattern);
    if (*piv)
      return run_pivot(o, right, expect_status);
    if (*ram)
      return run_ramsey(o, expect_r);
    if (*bnd)
      return run_bounds(o);
  } catch (const Error &e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

