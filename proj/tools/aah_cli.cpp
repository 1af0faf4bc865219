// aah: command line front end over the C interface.
#include "aah/aah.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

using nlohmann::json;

namespace {

struct Global {
  std::string input;
  bool json_out = false;
  double tol = 1e-9;
  bool tol_set = false;
  bool exact = false;
  std::uint64_t seed = 0;
};

// exit codes: 0 ok, 1 bad input, 2 consistency, 3 non-convergence
int exit_code(aah_status s) {
  switch (s) {
    case AAH_OK: return 0;
    case AAH_CONSISTENCY:
    case AAH_INTERNAL: return 2;
    case AAH_NONCONVERGENCE: return 3;
    default: return 1;
  }
}

std::string slurp(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// An argument that is either inline JSON or a file name.
std::string json_arg(const std::string& s) {
  auto p = s.find_first_not_of(" \t\n");
  if (p != std::string::npos && (s[p] == '[' || s[p] == '{')) return s;
  return slurp(s);
}

class Owned {
 public:
  ~Owned() { aah_string_free(p_); }
  char** out() { return &p_; }
  std::string str() const { return p_ ? p_ : ""; }

 private:
  char* p_ = nullptr;
};

int report_error(aah_status s) {
  std::cerr << "aah: " << aah_status_name(s) << ": " << aah_last_error() << "\n";
  return exit_code(s);
}

std::string fmt(double x) {
  char b[32];
  std::snprintf(b, sizeof b, "%.6g", x);
  return b;
}

std::string scalar(const json& v) { return v.is_number() ? fmt(v.get<double>()) : v.dump(); }

// ---- human-readable renderings

void text_harmonic(const json& h) {
  std::cout << "harmonic: " << (h["harmonic"].get<bool>() ? "yes" : "no") << "\n";
  for (const auto& v : h["verdicts"]) {
    std::cout << "  " << v["method"].get<std::string>() << ": " << (v["harmonic"].get<bool>() ? "yes" : "no");
    for (auto it = v["residuals"].begin(); it != v["residuals"].end(); ++it)
      std::cout << "  " << it.key() << "=" << scalar(it.value());
    std::cout << "\n";
  }
}

void text_class(const json& c) {
  std::cout << "class: " << c["genuine"].get<std::string>() << "\n";
  std::cout << "  member of:";
  for (auto it = c["memberships"].begin(); it != c["memberships"].end(); ++it)
    if (it.value().get<bool>()) std::cout << " " << it.key();
  std::cout << "\n";
  for (const auto& n : c["collapses"]) std::cout << "  note: " << n.get<std::string>() << "\n";
}

void text_skt(const json& s) {
  std::cout << "skt: " << (s["skt"].get<bool>() ? "yes" : "no");
  if (s.contains("harmonic_case")) std::cout << "  harmonic case: " << s["harmonic_case"].get<std::string>();
  std::cout << "\n";
  for (auto it = s["reasons"].begin(); it != s["reasons"].end(); ++it)
    std::cout << "  " << it.key() << " = " << scalar(it.value()) << "\n";
}

void text_algebra_doc(const std::string& cmd, const json& d) {
  if (cmd == "analyze") {
    std::cout << "mode: " << d["mode"].get<std::string>();
    if (!d["tolerance"].is_null()) std::cout << "  tolerance: " << scalar(d["tolerance"]);
    std::cout << "\nunimodular: " << (d["unimodular"].get<bool>() ? "yes" : "no") << "\n";
    std::cout << "integrable: " << (d["integrable"].get<bool>() ? "yes" : "no") << "\n";
    std::cout << "energy of standard J: " << scalar(d["energy"]) << "\n";
    text_harmonic(d["harmonic"]);
    text_class(d["classification"]);
    text_skt(d["skt"]);
  } else if (cmd == "classify") {
    text_class(d);
  } else if (cmd == "harmonic") {
    text_harmonic(d);
  } else {
    text_skt(d);
  }
}

void emit(const Global& g, const std::string& doc, const std::function<void(const json&)>& text) {
  if (g.json_out)
    std::cout << doc;
  else
    text(json::parse(doc));
}

int load(const Global& g, aah_algebra** a) {
  if (g.input.empty()) {
    std::cerr << "aah: invalid-input: --input FILE is required\n";
    return 1;
  }
  json doc;
  try {
    doc = json::parse(slurp(g.input));
  } catch (const std::exception& e) {
    std::cerr << "aah: invalid-input: " << e.what() << "\n";
    return 1;
  }
  if (g.exact) doc["mode"] = "exact";
  if (g.tol_set) doc["tolerance"] = g.tol;
  aah_status s = aah_algebra_from_json(doc.dump().c_str(), g.tol, a);
  return s == AAH_OK ? 0 : report_error(s);
}

using AlgebraFn = aah_status (*)(const aah_algebra*, char**);

int run_algebra(const Global& g, const std::string& cmd, AlgebraFn fn) {
  aah_algebra* a = nullptr;
  if (int rc = load(g, &a)) return rc;
  Owned out;
  aah_status s = fn(a, out.out());
  aah_algebra_free(a);
  if (s != AAH_OK) return report_error(s);
  emit(g, out.str(), [&](const json& d) { text_algebra_doc(cmd, d); });
  return 0;
}

struct TraceSink {
  std::ofstream f;
};

void trace_step(void* user, int start, long step, double energy, double grad_norm) {
  auto* t = static_cast<TraceSink*>(user);
  t->f << json{{"start", start}, {"step", step}, {"energy", energy}, {"grad_norm", grad_norm}}.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hermitian geometry of almost abelian Lie algebras"};
  app.require_subcommand(1);
  Global g;
  if (const char* env = std::getenv("AA_DEFAULT_TOL")) {
    try {
      g.tol = std::stod(env);
    } catch (...) {
      std::cerr << "aah: invalid-input: AA_DEFAULT_TOL is not a number\n";
      return 1;
    }
  }
  app.add_option("--input", g.input, "algebra JSON file ('-' for stdin)");
  app.add_flag("--json", g.json_out, "JSON on stdout");
  auto* tol_opt = app.add_option("--tol", g.tol, "tolerance (default 1e-9 or AA_DEFAULT_TOL)");
  app.add_flag("--exact", g.exact, "exact rational arithmetic");
  app.add_option("--seed", g.seed, "random seed");
  app.fallthrough();

  auto* analyze = app.add_subcommand("analyze", "full report");
  auto* classify = app.add_subcommand("classify", "Gray-Hervella class");
  auto* harmonic = app.add_subcommand("harmonic", "harmonicity verdicts");
  auto* skt = app.add_subcommand("skt", "SKT test and harmonic case");

  auto* lattice = app.add_subcommand("lattice", "integer witnesses and abelianization");
  std::string blocks, abel;
  lattice->add_option("--blocks", blocks, "block list, inline JSON or file");
  lattice->add_option("--abelianization", abel, "integer matrix, inline JSON or file");

  auto* flow = app.add_subcommand("flow", "energy gradient flow from random starts");
  int starts = 1;
  double tol_grad = 1e-8;
  long max_steps = 100000;
  std::string trace;
  flow->add_option("--starts", starts, "number of random starts")->check(CLI::PositiveNumber);
  flow->add_option("--tol-grad", tol_grad, "gradient norm target")->check(CLI::PositiveNumber);
  flow->add_option("--max-steps", max_steps, "step budget")->check(CLI::NonNegativeNumber);
  flow->add_option("--trace", trace, "write per-step JSONL here");

  auto* catalog = app.add_subcommand("catalog", "golden examples");
  catalog->require_subcommand(1);
  auto* cat_list = catalog->add_subcommand("list", "entry names");
  auto* cat_run = catalog->add_subcommand("run", "run an entry or all");
  std::string entry;
  int cn = 3, cm = 3;
  std::string ca, cb, cmu;
  cat_run->add_option("name", entry, "entry name or 'all'")->required();
  cat_run->add_option("--n", cn, "half-dimension for parametric entries");
  cat_run->add_option("--m", cm, "trace parameter of C_m");
  cat_run->add_option("--a", ca, "rotation angle a");
  cat_run->add_option("--b", cb, "rotation angle b");
  cat_run->add_option("--mu", cmu, "mu for the SKT family");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }
  g.tol_set = tol_opt->count() > 0;
  if (!(g.tol > 0)) {
    std::cerr << "aah: invalid-input: tolerance must be positive\n";
    return 1;
  }

  try {
    if (analyze->parsed()) return run_algebra(g, "analyze", aah_analyze);
    if (classify->parsed()) return run_algebra(g, "classify", aah_classify);
    if (harmonic->parsed()) return run_algebra(g, "harmonic", aah_harmonic);
    if (skt->parsed()) return run_algebra(g, "skt", aah_skt);

    if (lattice->parsed()) {
      if (blocks.empty() == abel.empty()) {
        std::cerr << "aah: invalid-input: give exactly one of --blocks, --abelianization\n";
        return 1;
      }
      Owned out;
      aah_status s = blocks.empty() ? aah_lattice_abelianization(json_arg(abel).c_str(), out.out())
                                    : aah_lattice_witness(json_arg(blocks).c_str(), out.out());
      if (s != AAH_OK) return report_error(s);
      emit(g, out.str(), [&](const json& d) {
        if (d.contains("group")) {
          std::cout << "abelianization: " << d["group"].get<std::string>() << "\n";
          return;
        }
        std::cout << "t0 = " << scalar(d["t0"]) << "  det E = " << d["det"].dump()
                  << "  char-poly match: " << (d["charpoly_match"].get<bool>() ? "yes" : "no") << "\nE =\n";
        for (const auto& row : d["E"]) std::cout << "  " << row.dump() << "\n";
        if (d.contains("abelianization"))
          std::cout << "abelianization: " << d["abelianization"]["group"].get<std::string>() << "\n";
      });
      return 0;
    }

    if (flow->parsed()) {
      aah_algebra* a = nullptr;
      if (int rc = load(g, &a)) return rc;
      aah_flow_options o;
      aah_flow_options_init(&o);
      o.starts = starts;
      o.seed = g.seed;
      o.tol_grad = tol_grad;
      o.max_steps = max_steps;
      TraceSink sink;
      if (!trace.empty()) {
        sink.f.open(trace);
        if (!sink.f) {
          aah_algebra_free(a);
          std::cerr << "aah: invalid-input: cannot write " << trace << "\n";
          return 1;
        }
        o.on_step = trace_step;
        o.user = &sink;
      }
      Owned out;
      aah_status s = aah_flow(a, &o, out.out());
      aah_algebra_free(a);
      if (s != AAH_OK && out.str().empty()) return report_error(s);
      emit(g, out.str(), [&](const json& d) {
        for (const auto& r : d["starts"])
          std::cout << "start " << r["start"].get<int>() << " (seed " << r["seed"].get<std::uint64_t>()
                    << "): " << (r["converged"].get<bool>() ? "converged" : "NOT converged") << " after "
                    << r["steps"].get<long>() << " steps, energy " << scalar(r["energy_initial"]) << " -> "
                    << scalar(r["energy_final"]) << ", |grad| " << scalar(r["grad_norm"]) << "\n";
      });
      return s == AAH_OK ? 0 : report_error(s);
    }

    if (cat_list->parsed()) {
      Owned out;
      aah_status s = aah_catalog_list(out.out());
      if (s != AAH_OK) return report_error(s);
      emit(g, out.str(), [](const json& d) {
        for (const auto& e : d) std::cout << e["name"].get<std::string>() << "\n";
      });
      return 0;
    }

    if (cat_run->parsed()) {
      json p = {{"n", cn}, {"m", cm}};
      if (!ca.empty()) p["a"] = ca;
      if (!cb.empty()) p["b"] = cb;
      if (!cmu.empty()) p["mu"] = cmu;
      Owned out;
      aah_status s = aah_catalog_run(entry.c_str(), p.dump().c_str(), out.out());
      if (s != AAH_OK && out.str().empty()) return report_error(s);
      emit(g, out.str(), [](const json& d) {
        for (const auto& e : d["entries"]) {
          std::cout << (e["pass"].get<bool>() ? "PASS " : "FAIL ") << e["name"].get<std::string>() << "\n";
          for (const auto& f : e["fields"])
            if (!f["pass"].get<bool>())
              std::cout << "    " << f["field"].get<std::string>() << ": expected " << f["expected"].get<std::string>()
                        << ", got " << f["actual"].get<std::string>() << "\n";
        }
        std::cout << d["passed"].get<int>() << "/" << d["total"].get<int>() << " entries pass\n";
      });
      return s == AAH_OK ? 0 : report_error(s);
    }
  } catch (const std::exception& e) {
    std::cerr << "aah: invalid-input: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
