#include <doctest.h>

#include "aah/aah.h"

#include <json.hpp>

#include <atomic>
#include <string>
#include <thread>
#include <vector>

using nlohmann::json;

namespace {

struct Out {
  char* p = nullptr;
  ~Out() { aah_string_free(p); }
  json doc() const { return json::parse(p); }
  std::string str() const { return p ? p : ""; }
};

aah_algebra* load(const char* text, aah_status expect = AAH_OK) {
  aah_algebra* a = nullptr;
  CHECK(aah_algebra_from_json(text, 1e-9, &a) == expect);
  return a;
}

}  // namespace

TEST_CASE("analyze L0") {
  aah_algebra* a = load(R"({"n":2,"L":[[0,1,0],[1,0,0],[0,0,0]]})");
  REQUIRE(a);
  CHECK(aah_algebra_dim(a) == 4);
  Out o;
  CHECK(aah_analyze(a, &o.p) == AAH_OK);
  json d = o.doc();
  CHECK(d["harmonic"]["harmonic"] == true);
  CHECK(d["classification"]["genuine"] == "W");
  CHECK(d["unimodular"] == true);
  CHECK(d["integrable"] == false);
  CHECK(d["mode"] == "float");
  CHECK(d["tolerance"] == 1e-9);
  CHECK(d["input"]["L"].size() == 3);
  CHECK(d.contains("tensors"));
  CHECK(d.contains("skt"));
  aah_algebra_free(a);
}

TEST_CASE("zero algebra is Kaehler, harmonic, energy 0") {
  aah_algebra* a = load(R"({"n":3,"L":[[0,0,0,0,0],[0,0,0,0,0],[0,0,0,0,0],[0,0,0,0,0],[0,0,0,0,0]]})");
  Out o;
  CHECK(aah_analyze(a, &o.p) == AAH_OK);
  json d = o.doc();
  CHECK(d["classification"]["genuine"] == "Kaehler");
  CHECK(d["harmonic"]["harmonic"] == true);
  CHECK(d["energy"] == 0);
  aah_algebra_free(a);
}

TEST_CASE("component input, exact mode, pi strings") {
  aah_algebra* a = load(R"({"n":2,"mu":"0","v0":[1,0],"w0":[1,0],"D":[[0,0],[0,0]],"mode":"exact"})");
  Out o;
  CHECK(aah_classify(a, &o.p) == AAH_OK);
  CHECK(o.doc()["genuine"] == "W");
  CHECK(o.doc()["mode"] == "exact");
  aah_algebra_free(a);
  aah_algebra* b = load(R"({"n":2,"L":[[1,0,0],[0,"-1/2","-pi/2"],[0,"pi/2","-1/2"]]})");
  Out s;
  CHECK(aah_skt(b, &s.p) == AAH_OK);
  CHECK(s.doc()["skt"] == true);
  CHECK(s.doc()["harmonic_case"] == "case-i");
  aah_algebra_free(b);
  load(R"({"n":2,"L":[[0,0,0],[0,"pi",0],[0,0,0]],"mode":"exact"})", AAH_INVALID_INPUT);
  CHECK(std::string(aah_last_error()).find("invalid-input") == 0);
}

TEST_CASE("error codes") {
  load("{not json", AAH_INVALID_INPUT);
  load(R"({"n":2,"L":[[0,1],[1,0]]})", AAH_INVALID_INPUT);
  load(R"({"n":2})", AAH_INVALID_INPUT);
  aah_algebra* out = reinterpret_cast<aah_algebra*>(1);
  CHECK(aah_algebra_from_json(nullptr, 1e-9, &out) == AAH_INVALID_INPUT);
  CHECK(out == nullptr);
  Out o;
  CHECK(aah_analyze(nullptr, &o.p) == AAH_INVALID_INPUT);
  CHECK(aah_catalog_run("nope", nullptr, &o.p) == AAH_LOOKUP);
  CHECK(aah_lattice_witness(R"([{"kind":"rotation","angle":1.0}])", &o.p) == AAH_NO_WITNESS);
  CHECK(aah_lattice_abelianization(R"([[2,0],[0,1]])", &o.p) == AAH_INVALID_INPUT);
  CHECK(std::string(aah_status_name(AAH_CONSISTENCY)) == "internal-consistency");
  // non-unimodular flow is a precondition error
  aah_algebra* a = load(R"({"n":2,"L":[[1,0,0],[0,1,0],[0,0,1]]})");
  aah_flow_options fo;
  aah_flow_options_init(&fo);
  CHECK(aah_flow(a, &fo, &o.p) == AAH_PRECONDITION);
  aah_algebra_free(a);
}

TEST_CASE("lattice calls") {
  Out w;
  CHECK(aah_lattice_witness(R"([{"kind":"identity","size":1},{"kind":"hyperbolic","m":5}])", &w.p) == AAH_OK);
  json d = w.doc();
  CHECK(d["det"] == 1);
  CHECK(d["charpoly_match"] == true);
  CHECK(d["E"] == json::parse("[[1,0,0],[0,0,-1],[0,1,5]]"));
  CHECK(d["abelianization"]["group"] == "Z^2 + Z_3");
  Out g;
  CHECK(aah_lattice_abelianization(R"({"E":[[1,0,0],[0,0,-1],[0,1,6]]})", &g.p) == AAH_OK);
  CHECK(g.doc()["torsion"] == json::parse("[4]"));
}

namespace {
struct Trace {
  std::vector<std::pair<int, double>> rec;
};
void on_step(void* u, int start, long, double energy, double) { static_cast<Trace*>(u)->rec.emplace_back(start, energy); }
}  // namespace

TEST_CASE("flow") {
  aah_algebra* a = load(R"({"n":2,"L":[[0,1,0],[0,1,0],[0,0,-1]]})");
  aah_flow_options fo;
  aah_flow_options_init(&fo);
  fo.starts = 3;
  fo.seed = 7;
  Out par, seq;
  CHECK(aah_flow(a, &fo, &par.p) == AAH_OK);
  Trace t;
  fo.on_step = on_step;
  fo.user = &t;
  CHECK(aah_flow(a, &fo, &seq.p) == AAH_OK);
  // same results whether run in parallel or sequentially with a callback
  CHECK(par.str() == seq.str());
  json d = par.doc();
  CHECK(d["starts"].size() == 3);
  for (int i = 0; i < 3; ++i) {
    CHECK(d["starts"][i]["start"] == i);
    CHECK(d["starts"][i]["seed"] == 7 + i);
    CHECK(d["starts"][i]["converged"] == true);
  }
  CHECK_FALSE(t.rec.empty());
  for (size_t i = 1; i < t.rec.size(); ++i)
    if (t.rec[i].first == t.rec[i - 1].first) CHECK(t.rec[i].second <= t.rec[i - 1].second);
  fo.on_step = nullptr;
  fo.max_steps = 1;
  fo.tol_grad = 1e-15;
  Out nc;
  CHECK(aah_flow(a, &fo, &nc.p) == AAH_NONCONVERGENCE);
  CHECK(nc.doc()["all_converged"] == false);
  aah_algebra_free(a);
}

TEST_CASE("catalog") {
  Out l;
  CHECK(aah_catalog_list(&l.p) == AAH_OK);
  CHECK(l.doc().size() == 15);
  Out r1, r2;
  CHECK(aah_catalog_run("all", nullptr, &r1.p) == AAH_OK);
  CHECK(aah_catalog_run("all", R"({"n":3,"m":3})", &r2.p) == AAH_OK);
  CHECK(r1.str() == r2.str());
  CHECK(r1.doc()["passed"] == 15);
  Out one;
  CHECK(aah_catalog_run("kodaira-thurston", R"({"a":"pi/3"})", &one.p) == AAH_OK);
  CHECK(one.doc()["entries"].size() == 1);
}

TEST_CASE("thread-local errors") {
  std::atomic<int> ok{0};
  std::vector<std::thread> ts;
  for (int i = 0; i < 4; ++i)
    ts.emplace_back([&, i] {
      aah_algebra* a = nullptr;
      if (i % 2) {
        if (aah_algebra_from_json("{", 1e-9, &a) == AAH_INVALID_INPUT && std::string(aah_last_error()).size() > 0) ++ok;
      } else {
        if (aah_algebra_from_json(R"({"L":[[0,0,0],[0,0,0],[0,1,0]]})", 1e-9, &a) == AAH_OK &&
            std::string(aah_last_error()).empty())
          ++ok;
        aah_algebra_free(a);
      }
    });
  for (auto& t : ts) t.join();
  CHECK(ok == 4);
}

TEST_CASE("output is canonical") {
  aah_algebra* a = load(R"({"n":2,"L":[[0,0,0],[0,0,0],[0,1,0]],"tolerance":1e-10})");
  Out o1, o2;
  CHECK(aah_analyze(a, &o1.p) == AAH_OK);
  CHECK(aah_analyze(a, &o2.p) == AAH_OK);
  CHECK(o1.str() == o2.str());
  CHECK(o1.str().back() == '\n');
  CHECK(o1.str().find("-0,") == std::string::npos);
  CHECK(o1.doc()["tolerance"] == 1e-10);
  aah_algebra_free(a);
}
