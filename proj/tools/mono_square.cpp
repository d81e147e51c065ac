// mono-square: command-line front end. Every command prints one JSON report
// {command, parameters, result, timing_ms, version} on stdout; errors go to
// stderr with exit code 2 (usage), 3 (internal contradiction) or 4 (I/O or
// parse).

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include <unistd.h>

#include "monosq/monosq.hpp"

namespace {

using namespace monosq;

constexpr int kExitUsage = 2;
constexpr int kExitContradiction = 3;
constexpr int kExitIo = 4;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw IoError("cannot write " + path);
}

Colour colour_arg(const std::string& s, const char* flag) {
  const auto c = parse_colour(s);
  if (!c) throw UsageError(std::string(flag) + " expects +1 or -1, got \"" + s + "\"");
  return *c;
}

// Exactly one of --all, --random-seed, --periodic, --file.
struct Generator {
  std::string all;
  std::optional<std::uint64_t> random_seed;
  std::string periodic;
  std::optional<Int> anchor;
  std::string file;

  void attach(CLI::App& app) {
    app.add_option("--all", all, "constant colouring, +1 or -1");
    app.add_option("--random-seed", random_seed, "seeded random colouring");
    app.add_option("--periodic", periodic, "comma-separated colour pattern, e.g. +1,-1,-1");
    app.add_option("--anchor", anchor, "element coloured by the first pattern entry (default: domain start)");
    app.add_option("--file", file, "colouring file");
  }

  Json params() const {
    Json j = Json::object();
    if (!all.empty()) j["all"] = all;
    if (random_seed) j["random_seed"] = *random_seed;
    if (!periodic.empty()) {
      j["periodic"] = periodic;
      j["anchor"] = anchor ? Json(*anchor) : Json(nullptr);
    }
    if (!file.empty()) j["file"] = file;
    return j;
  }

  // `domain` is required for every generator except --file.
  ColouringSource make(std::optional<Interval> domain) const {
    const int given = !all.empty() + random_seed.has_value() + !periodic.empty() + !file.empty();
    if (given != 1) throw UsageError("give exactly one of --all, --random-seed, --periodic, --file");
    if (!file.empty()) return deserialize(read_file(file));
    if (!domain) throw UsageError("a domain is required for generated colourings");
    if (!all.empty()) return make_constant(*domain, colour_arg(all, "--all"));
    if (random_seed) return make_random(*domain, *random_seed);
    std::vector<Colour> pattern;
    std::stringstream ss(periodic);
    for (std::string item; std::getline(ss, item, ',');) pattern.push_back(colour_arg(item, "--periodic"));
    if (pattern.empty()) throw UsageError("--periodic needs at least one colour");
    return make_periodic(*domain, std::move(pattern), anchor.value_or(domain->lo()));
  }
};

Json solution_json(const Solution& s) {
  Json j = to_json(s);
  j["diagonal"] = s.diagonal();
  return j;
}

// ---- find -------------------------------------------------------------

struct FindCmd {
  Int n = 0;
  bool certify = false;
  Generator gen;

  void attach(CLI::App& app) {
    app.add_option("--n", n, "N; the colouring domain is [N, 10^4 N^4]")->required();
    app.add_flag("--certify", certify, "check residue-class monotonicity when the tables are built");
    gen.attach(app);
  }
  Json params() const { return {{"n", n}, {"certify", certify}, {"colouring", gen.params()}}; }

  Json run() const {
    if (n < min_valid_N())
      throw PreconditionError("N = " + std::to_string(n) + " is below the audited threshold N0 = " +
                              std::to_string(min_valid_N()));
    const auto src = gen.make(Interval(n, upper_end(n)));
    const auto r = find_monochromatic(src, n, {.certify_monotonicity = certify});
    return {{"solution", solution_json(r.solution)},
            {"trace", to_json(r.trace)},
            {"verified", true},
            {"stats",
             {{"reached_tables", r.stats.reached_tables},
              {"m_tried", r.stats.m_tried},
              {"monotone_pairs_checked", r.stats.monotonicity.pairs_checked}}}};
  }
};

// ---- oracle -----------------------------------------------------------

std::optional<Interval> domain_arg(std::optional<Int> lo, std::optional<Int> hi) {
  if (lo.has_value() != hi.has_value()) throw UsageError("--lo and --hi go together");
  if (!lo) return std::nullopt;
  if (*lo > *hi) throw UsageError("--lo must not exceed --hi");
  return Interval(*lo, *hi);
}

struct OracleCmd {
  std::optional<Int> lo, hi, limit;
  bool include_trivial = false;
  Generator gen;

  void attach(CLI::App& app) {
    app.add_option("--lo", lo, "domain start (generated colourings)");
    app.add_option("--hi", hi, "domain end (generated colourings)");
    app.add_option("--limit", limit, "stop after this many solutions");
    app.add_flag("--include-trivial", include_trivial, "count (2,2,2)");
    gen.attach(app);
  }
  Json params() const {
    return {{"lo", lo ? Json(*lo) : Json(nullptr)},
            {"hi", hi ? Json(*hi) : Json(nullptr)},
            {"limit", limit ? Json(*limit) : Json(nullptr)},
            {"include_trivial", include_trivial},
            {"colouring", gen.params()}};
  }

  Json run() const {
    const auto src = gen.make(domain_arg(lo, hi));
    const auto sols = enumerate_solutions(src, !include_trivial, limit.value_or(std::numeric_limits<std::size_t>::max()));
    Json list = Json::array();
    Int diagonal = 0;
    for (const auto& s : sols) {
      list.push_back(solution_json(s));
      diagonal += s.diagonal();
    }
    return {{"domain", {src.domain().lo(), src.domain().hi()}},
            {"count", sols.size()},
            {"truncated", limit && sols.size() == *limit},
            {"diagonal_solutions", diagonal},
            {"solutions", std::move(list)}};
  }
};

// ---- extremal ---------------------------------------------------------

struct ExtremalCmd {
  Int n = 0;
  std::string out;

  void attach(CLI::App& app) {
    app.add_option("--n", n, "N >= 3")->required();
    app.add_option("--out", out, "write the colouring file here");
  }
  Json params() const { return {{"n", n}, {"out", out.empty() ? Json(nullptr) : Json(out)}}; }

  Json run() const {
    const auto spec = avoidance_spec(n);
    const auto src = avoidance_colouring(n);
    if (!out.empty()) write_file(out, serialize(src) + "\n");
    Json r = {{"split", spec.split}, {"top", spec.top}, {"colouring", to_json(src)}};
    if (src.domain().size() <= kMaxScannable) r["solution_free"] = verify_avoidance(n);
    return r;
  }
};

// ---- verify -----------------------------------------------------------

struct VerifyCmd {
  std::optional<Int> lo, hi, n, x, y, z;
  std::string colour, trace;
  bool include_trivial = false;
  Generator gen;

  void attach(CLI::App& app) {
    app.add_option("--lo", lo, "domain start (generated colourings)");
    app.add_option("--hi", hi, "domain end (generated colourings)");
    app.add_option("--n", n, "use the domain [N, 10^4 N^4]");
    app.add_option("--x", x);
    app.add_option("--y", y);
    app.add_option("--z", z);
    app.add_option("--colour", colour, "+1 or -1");
    app.add_option("--trace", trace, "a find report or proof trace to replay (needs --n)");
    app.add_flag("--include-trivial", include_trivial, "accept (2,2,2)");
    gen.attach(app);
  }
  Json params() const {
    auto opt = [](const std::optional<Int>& v) { return v ? Json(*v) : Json(nullptr); };
    return {{"lo", opt(lo)},           {"hi", opt(hi)}, {"n", opt(n)},
            {"x", opt(x)},             {"y", opt(y)},   {"z", opt(z)},
            {"colour", colour.empty() ? Json(nullptr) : Json(colour)},
            {"trace", trace.empty() ? Json(nullptr) : Json(trace)},
            {"include_trivial", include_trivial}, {"colouring", gen.params()}};
  }

  Json run() const {
    std::optional<Interval> d = domain_arg(lo, hi);
    if (n) {
      if (d) throw UsageError("give either --n or --lo/--hi");
      d = Interval(*n, upper_end(*n));
    }
    const auto src = gen.make(d);
    if (!trace.empty()) {
      if (!n) throw UsageError("--trace needs --n");
      const Json doc = Json::parse(read_file(trace), nullptr, false);
      if (doc.is_discarded()) throw ParseError("not a JSON document", trace);
      const bool is_report = doc.is_object() && doc.contains("result") && doc["result"].is_object() &&
                             doc["result"].contains("trace");
      const auto t = is_report ? trace_from_json(doc["result"]["trace"], "/result/trace") : trace_from_json(doc);
      const bool ok = check_trace(src, *n, t);
      return {{"ok", ok}, {"reason", ok ? "trace_replayed" : "trace_mismatch"}, {"solution", solution_json(t.solution)}};
    }
    if (!x || !y || !z || colour.empty()) throw UsageError("verify needs --x, --y, --z and --colour, or --trace");
    const Solution s{*x, *y, *z, colour_arg(colour, "--colour")};
    const auto v = verify_solution(src, s, !include_trivial);
    return {{"ok", v.ok}, {"reason", std::string(to_string(v.reason))}, {"solution", solution_json(s)}};
  }
};

// ---- threshold --------------------------------------------------------

// Runs `solver <file.cnf>` and reads SAT-competition output
// ("s SATISFIABLE" / "s UNSATISFIABLE", model on "v" lines).
SearchOutcome run_external(const NaeInstance& inst, const std::string& solver) {
  static std::atomic<int> counter{0};
  const auto path = std::filesystem::temp_directory_path() /
                    ("mono-square-" + std::to_string(::getpid()) + "-" + std::to_string(counter++) + ".cnf");
  write_file(path.string(), encode_dimacs(inst));
  const std::string cmd = solver + " '" + path.string() + "'";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) throw IoError("cannot run solver: " + solver);
  std::string text;
  char buf[4096];
  while (std::size_t got = std::fread(buf, 1, sizeof buf, pipe)) text.append(buf, got);
  ::pclose(pipe);
  std::filesystem::remove(path);

  std::istringstream in(text);
  std::optional<bool> sat;
  std::vector<long long> model;
  for (std::string line; std::getline(in, line);) {
    if (line.rfind("s ", 0) == 0) {
      if (line.find("UNSATISFIABLE") != std::string::npos)
        sat = false;
      else if (line.find("SATISFIABLE") != std::string::npos)
        sat = true;
    } else if (line.rfind("v ", 0) == 0) {
      std::istringstream ls(line.substr(2));
      for (long long lit; ls >> lit;)
        if (lit != 0) model.push_back(lit);
    }
  }
  if (!sat) throw ParseError("solver output has no status line", solver);
  SearchOutcome out;
  if (*sat) out.assignment = decode_model(inst, model);
  return out;
}

struct ThresholdCmd {
  Int n = 0;
  Int cap = 1000;
  std::string mode = "backtracking";
  std::string solver;
  bool include_trivial = false;
  unsigned jobs = 1;

  void attach(CLI::App& app) {
    app.add_option("--n", n, "N >= 1")->required();
    app.add_option("--cap", cap, "largest M to try")->capture_default_str();
    app.add_option("--mode", mode, "backtracking or external-solver")
        ->check(CLI::IsMember({"backtracking", "external-solver"}))
        ->capture_default_str();
    app.add_option("--solver", solver, "external solver command; receives a DIMACS file path");
    app.add_flag("--include-trivial", include_trivial, "count (2,2,2)");
  }
  Json params() const {
    return {{"n", n},       {"cap", cap},   {"mode", mode}, {"solver", solver.empty() ? Json(nullptr) : Json(solver)},
            {"include_trivial", include_trivial}, {"jobs", jobs}};
  }

  Json run() const {
    const ThresholdOptions opt{.exclude_trivial = !include_trivial, .jobs = jobs};
    if (mode == "backtracking") {
      if (!solver.empty()) throw UsageError("--solver needs --mode external-solver");
      return to_json(search_S(n, cap, opt));
    }
    if (solver.empty()) throw UsageError("--mode external-solver needs --solver");
    return to_json(search_S(
        n, cap, opt, [&](const NaeInstance& inst) { return run_external(inst, solver); },
        SearchMethod::external_solver));
  }
};

// ---- export-sat -------------------------------------------------------

struct ExportCmd {
  Int n = 0, m = 0;
  std::string out;
  bool include_trivial = false;

  void attach(CLI::App& app) {
    app.add_option("--n", n, "N")->required();
    app.add_option("--m", m, "M")->required();
    app.add_option("--out", out, "write the CNF here instead of embedding it");
    app.add_flag("--include-trivial", include_trivial, "count (2,2,2)");
  }
  Json params() const {
    return {{"n", n}, {"m", m}, {"out", out.empty() ? Json(nullptr) : Json(out)}, {"include_trivial", include_trivial}};
  }

  Json run() const {
    const auto inst = build_instance(n, m, !include_trivial);
    const auto text = encode_dimacs(inst);
    Json r = {{"variables", inst.size()}, {"clauses", 2 * inst.triples.size()}, {"triples", inst.triples.size()}};
    if (out.empty())
      r["dimacs"] = text;
    else
      write_file(out, text);
    return r;
  }
};

// ---- fuzz -------------------------------------------------------------

struct FuzzCmd {
  Int count = 1000;
  Int n = 17;
  std::uint64_t seed = 0;
  std::string family = "random";
  unsigned jobs = 1;

  void attach(CLI::App& app) {
    app.add_option("--count", count, "number of colourings")->capture_default_str();
    app.add_option("--n", n, "N")->capture_default_str();
    app.add_option("--seed", seed, "campaign seed")->required();
    app.add_option("--family", family, "random, structured, or mixed (one in ten structured)")
        ->check(CLI::IsMember({"random", "structured", "mixed"}))
        ->capture_default_str();
  }
  Json params() const {
    return {{"count", count}, {"n", n}, {"seed", seed}, {"family", family}, {"jobs", jobs}};
  }

  struct Run {
    bool structured = false;
    bool ok = false;
    bool reached = false;
    std::string tag;
    Int pairs = 0;
    Int violations = 0;
    std::string error;
  };

  Run one(Int i) const {
    Run r;
    const std::uint64_t run_seed = detail::mix64(seed * 0x9e3779b97f4a7c15ULL + i);
    r.structured = family == "structured" || (family == "mixed" && run_seed % 10 == 0);
    try {
      const auto src = r.structured ? structured_fuzz_colouring(n, run_seed) : make_random(Interval(n, upper_end(n)), run_seed);
      FinderStats stats;
      ProofTrace trace;
      try {
        const auto res = find_monochromatic(src, n, {.certify_monotonicity = true});
        stats = res.stats;
        trace = res.trace;
      } catch (const ContradictionError& e) {
        r.error = e.what();
        return r;
      }
      r.reached = stats.reached_tables;
      r.pairs = stats.monotonicity.pairs_checked;
      r.violations = stats.monotonicity.violations;
      r.tag = case_tag(trace.proof_case);
      r.ok = verify_solution(src, trace.solution).ok && check_trace(src, n, trace);
      if (!r.ok) r.error = "solution or trace failed verification";
    } catch (const DomainError& e) {
      r.error = e.what();
    }
    return r;
  }

  Json run() const {
    if (n < min_valid_N())
      throw PreconditionError("N = " + std::to_string(n) + " is below the audited threshold N0 = " +
                              std::to_string(min_valid_N()));
    std::vector<Run> runs(count);
    std::atomic<Int> next{0};
    auto worker = [&] {
      for (Int i; (i = next++) < count;) runs[i] = one(i);
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < std::max(1u, jobs); ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    Json cases = Json::object();
    for (auto tag : kCaseTags) cases[std::string(tag)] = 0;
    Int verified = 0, reached = 0, pairs = 0, violations = 0, structured = 0;
    Json failures = Json::array();
    Int failure_count = 0;
    for (Int i = 0; i < count; ++i) {
      const auto& r = runs[i];
      structured += r.structured;
      reached += r.reached;
      pairs += r.pairs;
      violations += r.violations;
      if (!r.tag.empty()) cases[r.tag] = cases[r.tag].get<Int>() + 1;
      if (r.ok) {
        ++verified;
      } else if (++failure_count <= 10) {
        failures.push_back({{"run", i}, {"structured", r.structured}, {"error", r.error}});
      }
    }
    return {{"runs", count},
            {"verified", verified},
            {"failures", failure_count},
            {"failure_samples", std::move(failures)},
            {"structured_runs", structured},
            {"reached_tables", reached},
            {"monotone_pairs_checked", pairs},
            {"monotonicity_violations", violations},
            {"cases", std::move(cases)}};
  }
};

// ---- output -----------------------------------------------------------

std::string scalar(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

void render_human(const Json& report, std::ostream& os) {
  os << report["command"].get<std::string>() << "  (" << report["timing_ms"].get<double>() << " ms, version "
     << report["version"].get<std::string>() << ")\n";
  for (const auto& [key, value] : report["result"].items()) {
    if (key == "solutions" && value.is_array()) {
      os << "  solutions:\n";
      os << "    " << std::setw(14) << "x" << std::setw(14) << "y" << std::setw(10) << "z" << "  colour\n";
      for (const auto& s : value)
        os << "    " << std::setw(14) << s["x"].get<Int>() << std::setw(14) << s["y"].get<Int>() << std::setw(10)
           << s["z"].get<Int>() << "  " << scalar(s["colour"]) << (s["diagonal"].get<bool>() ? "  (x = y)" : "")
           << "\n";
    } else if (key == "dimacs" || key == "colouring" || key == "witness") {
      os << "  " << key << ": " << (value.is_null() ? "none" : "(omitted; see JSON output)") << "\n";
    } else if (value.is_object()) {
      os << "  " << key << ":\n";
      for (const auto& [k, v] : value.items()) os << "    " << k << ": " << (v.is_object() ? v.dump() : scalar(v)) << "\n";
    } else {
      os << "  " << key << ": " << scalar(value) << "\n";
    }
  }
}

int fail(const std::string& command, const char* kind, const std::string& message, int code) {
  Json err = {{"command", command}, {"error", {{"kind", kind}, {"message", message}}}, {"exit_code", code},
              {"version", kVersion}};
  std::cerr << err.dump() << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monochromatic solutions of x + y = z^2 under 2-colourings"};
  app.require_subcommand(1);
  bool human = false;
  unsigned jobs = 1;
  app.add_flag("--human", human, "render tables instead of JSON");
  app.add_option("--jobs", jobs, "worker threads for threshold and fuzz")->envname("MONO_SQUARE_JOBS");

  FindCmd find;
  OracleCmd oracle;
  ExtremalCmd extremal;
  VerifyCmd verify;
  ThresholdCmd threshold;
  ExportCmd export_sat;
  FuzzCmd fuzz;

  std::map<std::string, std::pair<std::function<Json()>, std::function<Json()>>> commands;
  auto add = [&](const char* name, const char* help, auto& cmd) {
    auto* sub = app.add_subcommand(name, help);
    cmd.attach(*sub);
    sub->add_flag("--human", human, "render tables instead of JSON");
    sub->add_option("--jobs", jobs, "worker threads")->envname("MONO_SQUARE_JOBS");
    commands[name] = {[&cmd] { return cmd.params(); }, [&cmd] { return cmd.run(); }};
  };
  add("find", "extract a monochromatic solution from a colouring of [N, 10^4 N^4]", find);
  add("oracle", "enumerate monochromatic solutions by brute force", oracle);
  add("extremal", "emit the two-band solution-free colouring", extremal);
  add("verify", "check a solution or replay a proof trace", verify);
  add("threshold", "exact S(N) by exhaustive search", threshold);
  add("export-sat", "DIMACS CNF for the instance [N, M]", export_sat);
  add("fuzz", "run the finder on seeded colourings and tally cases", fuzz);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return kExitUsage;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  threshold.jobs = jobs;
  fuzz.jobs = jobs;
  try {
    const auto t0 = std::chrono::steady_clock::now();
    Json result = commands[name].second();
    const auto t1 = std::chrono::steady_clock::now();
    const Json report = {{"command", name},
                         {"parameters", commands[name].first()},
                         {"result", std::move(result)},
                         {"timing_ms", std::chrono::duration<double, std::milli>(t1 - t0).count()},
                         {"version", kVersion}};
    if (human)
      render_human(report, std::cout);
    else
      std::cout << report.dump(2) << "\n";
    return 0;
  } catch (const UsageError& e) {
    return fail(name, "usage", e.what(), kExitUsage);
  } catch (const PreconditionError& e) {
    return fail(name, "precondition", e.what(), kExitUsage);
  } catch (const CapacityError& e) {
    return fail(name, "capacity", e.what(), kExitUsage);
  } catch (const DomainError& e) {
    return fail(name, "domain", e.what(), kExitUsage);
  } catch (const ConstructionError& e) {
    return fail(name, "construction", e.what(), kExitUsage);
  } catch (const OverflowError& e) {
    return fail(name, "overflow", e.what(), kExitUsage);
  } catch (const ParseError& e) {
    return fail(name, "parse", e.what(), kExitIo);
  } catch (const IoError& e) {
    return fail(name, "io", e.what(), kExitIo);
  } catch (const ContradictionError& e) {
    return fail(name, "contradiction", e.what(), kExitContradiction);
  } catch (const std::exception& e) {
    return fail(name, "internal", e.what(), kExitContradiction);
  }
}
