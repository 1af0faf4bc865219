#include "aah/aah.h"

#include "aah/errors.hpp"
#include "aah/formula_map.hpp"
#include "json_io.hpp"

#include <cstring>
#include <future>
#include <string>
#include <vector>

struct aah_algebra {
  aah::io::AlgebraInput in;
};

namespace {

using aah::io::json;

thread_local std::string g_last_error;

aah_status status_of(aah::ErrorKind k) {
  switch (k) {
    case aah::ErrorKind::InvalidInput: return AAH_INVALID_INPUT;
    case aah::ErrorKind::Precondition: return AAH_PRECONDITION;
    case aah::ErrorKind::Consistency: return AAH_CONSISTENCY;
    case aah::ErrorKind::NonConvergence: return AAH_NONCONVERGENCE;
    case aah::ErrorKind::NoWitness: return AAH_NO_WITNESS;
    case aah::ErrorKind::Degenerate: return AAH_DEGENERATE;
    case aah::ErrorKind::Lookup: return AAH_LOOKUP;
  }
  return AAH_INTERNAL;
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

// Runs f, converting exceptions to a status and the thread-local message.
template <class F>
aah_status guard(F&& f) {
  g_last_error.clear();
  try {
    return f();
  } catch (const aah::Error& e) {
    g_last_error = std::string(aah::error_kind_name(e.kind())) + ": " + e.what();
    return status_of(e.kind());
  } catch (const json::exception& e) {
    g_last_error = std::string("invalid-input: ") + e.what();
    return AAH_INVALID_INPUT;
  } catch (const std::exception& e) {
    g_last_error = std::string("internal: ") + e.what();
    return AAH_INTERNAL;
  }
}

json parse(const char* text, const char* what) {
  if (!text) aah::fail(aah::ErrorKind::InvalidInput, std::string(what) + " is NULL");
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    aah::fail(aah::ErrorKind::InvalidInput, std::string("cannot parse ") + what + ": " + e.what());
  }
}

aah_status emit(const json& j, char** out) {
  if (!out) aah::fail(aah::ErrorKind::InvalidInput, "json_out is NULL");
  *out = dup(aah::io::dump(j));
  return *out ? AAH_OK : AAH_INTERNAL;
}

template <class F>
aah_status algebra_call(const aah_algebra* a, char** out, F&& f) {
  return guard([&] {
    if (!a) aah::fail(aah::ErrorKind::InvalidInput, "algebra handle is NULL");
    return emit(f(a->in), out);
  });
}

}  // namespace

extern "C" {

const char* aah_status_name(aah_status s) {
  switch (s) {
    case AAH_OK: return "ok";
    case AAH_INVALID_INPUT: return "invalid-input";
    case AAH_CONSISTENCY: return "internal-consistency";
    case AAH_NONCONVERGENCE: return "non-convergence";
    case AAH_PRECONDITION: return "precondition";
    case AAH_NO_WITNESS: return "no-witness";
    case AAH_DEGENERATE: return "degenerate";
    case AAH_LOOKUP: return "lookup";
    case AAH_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* aah_last_error(void) { return g_last_error.c_str(); }

void aah_string_free(char* s) { std::free(s); }

aah_status aah_algebra_from_json(const char* text, double default_tol, aah_algebra** out) {
  return guard([&] {
    if (!out) aah::fail(aah::ErrorKind::InvalidInput, "out is NULL");
    *out = nullptr;
    auto in = aah::io::parse_algebra(parse(text, "algebra JSON"), default_tol);
    *out = new aah_algebra{std::move(in)};
    return AAH_OK;
  });
}

void aah_algebra_free(aah_algebra* a) { delete a; }

int aah_algebra_dim(const aah_algebra* a) { return a ? a->in.fspec.dim() : 0; }

aah_status aah_analyze(const aah_algebra* a, char** out) { return algebra_call(a, out, aah::io::analyze); }
aah_status aah_classify(const aah_algebra* a, char** out) { return algebra_call(a, out, aah::io::classify); }
aah_status aah_harmonic(const aah_algebra* a, char** out) { return algebra_call(a, out, aah::io::harmonic); }
aah_status aah_skt(const aah_algebra* a, char** out) { return algebra_call(a, out, aah::io::skt); }

aah_status aah_lattice_witness(const char* blocks_json, char** out) {
  return guard([&] {
    auto blocks = aah::io::parse_blocks(parse(blocks_json, "blocks JSON"));
    return emit(aah::io::witness(aah::assemble_witness(blocks)), out);
  });
}

aah_status aah_lattice_abelianization(const char* matrix_json, char** out) {
  return guard([&] {
    aah::MatZ E = aah::io::parse_int_matrix(parse(matrix_json, "matrix JSON"));
    return emit(aah::io::abelianization(aah::lattice_abelianization(E)), out);
  });
}

void aah_flow_options_init(aah_flow_options* o) {
  if (!o) return;
  o->starts = 1;
  o->seed = 0;
  o->tol_grad = 1e-8;
  o->max_steps = 100000;
  o->on_step = nullptr;
  o->user = nullptr;
}

aah_status aah_flow(const aah_algebra* a, const aah_flow_options* o, char** out) {
  return guard([&] {
    if (!a) aah::fail(aah::ErrorKind::InvalidInput, "algebra handle is NULL");
    aah_flow_options opt;
    aah_flow_options_init(&opt);
    if (o) opt = *o;
    if (opt.starts < 1) aah::fail(aah::ErrorKind::InvalidInput, "starts must be >= 1");
    if (!(opt.tol_grad > 0) || opt.max_steps < 0) aah::fail(aah::ErrorKind::InvalidInput, "bad flow tolerances");
    const aah::Decomposition<double> dec = aah::decompose(a->in.fspec);
    const int n = a->in.fspec.n;
    auto one = [&](int i) {
      aah::FlowOptions fo;
      fo.tol_grad = opt.tol_grad;
      fo.max_steps = opt.max_steps;
      if (opt.on_step)
        fo.on_step = [&, i](const aah::FlowState& s) { opt.on_step(opt.user, i, s.step, s.energy, s.grad_norm); };
      const std::uint64_t seed = opt.seed + static_cast<std::uint64_t>(i);
      return aah::io::flow_result(aah::run_flow(dec, aah::random_compatible_J(n, seed), fo), i, seed);
    };
    std::vector<json> results(opt.starts);
    if (opt.on_step) {
      for (int i = 0; i < opt.starts; ++i) results[i] = one(i);
    } else {
      // independent starts; output order is by start index regardless of completion order
      std::vector<std::future<json>> fs;
      for (int i = 0; i < opt.starts; ++i) fs.push_back(std::async(std::launch::async, one, i));
      for (int i = 0; i < opt.starts; ++i) results[i] = fs[i].get();
    }
    bool all = true;
    for (const auto& r : results) all = all && r["converged"].get<bool>();
    json doc = {{"input", a->in.echo}, {"starts", results}, {"all_converged", all}, {"tol_grad", opt.tol_grad},
                {"max_steps", opt.max_steps}, {"seed", opt.seed}};
    aah_status st = emit(doc, out);
    if (st == AAH_OK && !all) {
      g_last_error = "non-convergence: at least one start did not reach the gradient tolerance";
      return AAH_NONCONVERGENCE;
    }
    return st;
  });
}

aah_status aah_catalog_list(char** out) {
  return guard([&] { return emit(aah::io::catalog_list(), out); });
}

aah_status aah_catalog_run(const char* name, const char* params_json, char** out) {
  return guard([&] {
    if (!name) aah::fail(aah::ErrorKind::InvalidInput, "entry name is NULL");
    aah::CatalogParams p = aah::io::parse_params(params_json ? parse(params_json, "catalog parameters") : json());
    std::vector<aah::EntryReport> reps;
    if (std::string(name) == "all")
      reps = aah::run_all(p);
    else
      reps.push_back(aah::run_entry(name, p));
    json arr = json::array();
    int passed = 0;
    for (const auto& r : reps) {
      arr.push_back(aah::io::entry_report(r));
      passed += r.pass;
    }
    const bool all = passed == static_cast<int>(reps.size());
    json doc = {{"entries", arr},
                {"passed", passed},
                {"total", reps.size()},
                {"pass", all},
                {"params", {{"n", p.n}, {"m", p.m}, {"a", p.a}, {"b", p.b}, {"mu", p.mu}}}};
    aah_status st = emit(doc, out);
    if (st == AAH_OK && !all) {
      g_last_error = "internal-consistency: " + std::to_string(reps.size() - passed) + " catalog entries failed";
      return AAH_CONSISTENCY;
    }
    return st;
  });
}

aah_status aah_verify_formula_map(const char* markdown, char** out) {
  return guard([&] {
    if (!markdown) aah::fail(aah::ErrorKind::InvalidInput, "markdown is NULL");
    aah::MapCheck c = aah::verify_map(markdown);
    json doc = {{"pass", c.pass}, {"missing", c.missing}, {"duplicates", c.duplicates}, {"phantom", c.phantom}};
    aah_status st = emit(doc, out);
    if (st == AAH_OK && !c.pass) {
      g_last_error = "lookup: formula map out of date";
      return AAH_LOOKUP;
    }
    return st;
  });
}

}  // extern "C"
