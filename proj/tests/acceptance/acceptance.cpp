// Acceptance runner: one PASS/FAIL line per criterion on stdout, timings on
// stderr. Exit status is 0 only when every criterion passes.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <regex>
#include <sstream>

#include <CLI11.hpp>

#include "data.hpp"
#include "fuzz.hpp"
#include "ipsx/flow.hpp"
#include "ipsx/harness.hpp"
#include "ipsx/transforms.hpp"

using namespace ipsx;
namespace tf = ipsx::transforms;
namespace hs = ipsx::harness;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  std::uint64_t digest = 0xcbf29ce484222325ULL;

  void absorb(std::string_view bytes) {
    for (unsigned char c : bytes) {
      digest ^= c;
      digest *= 0x100000001b3ULL;
    }
    digest ^= 0xff;
    digest *= 0x100000001b3ULL;
  }
  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

struct Settings {
  std::size_t schemas = 50;
  std::size_t values = 1000;
  std::size_t programs = 1000;
  std::size_t walk_programs = 200;
  std::size_t call_programs = 200;
  std::size_t fuzz_terms = 1000;
};

Term ips(const LanguageDef& lang, const std::string& src) { return lang.decompose(lang.parse(src)); }

std::string render(const LanguageDef& lang, const Term& t) { return lang.pretty(lang.recompose(t)); }

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Outcome modularizer_isomorphism(const Settings& s) {
  Outcome o;
  auto start = std::chrono::steady_clock::now();
  fuzz::Rng rng(1);
  fuzz::SchemaShape shape;
  shape.max_types = 6;
  shape.max_ctors = 4;
  std::size_t checked = 0;
  for (std::size_t k = 0; k < s.schemas && o.pass; ++k) {
    Schema schema = fuzz::random_schema(rng, "S" + std::to_string(k), shape);
    o.absorb(print_schema(schema));
    ModularizedLanguage m = modularize_schema(schema);
    fuzz::TermFuzzer fz(m.signature());
    for (std::size_t i = 0; i < s.values; ++i) {
      const TypeDef& type = schema.types[i % schema.types.size()];
      GenericValue v = fuzz::random_value(schema, type.name, rng);
      Term t = to_modular(m, v);
      if (from_modular(m, t) != v) o.fail(schema.name + ": value " + gv::to_string(v));
      Term u = fz.make(m.sort_of(type.name), rng);
      if (to_modular(m, from_modular(m, u)) != u) o.fail(schema.name + ": term " + to_sexpr(u));
      o.absorb(to_sexpr(t));
      checked += 2;
    }
  }
  double secs = seconds_since(start);
  std::cerr << "  criterion 1 took " << secs << " s\n";
  if (secs >= 60) o.fail("took longer than 60 s");
  if (o.pass) o.detail = std::to_string(checked) + " round trips";
  return o;
}

Outcome arith_golden() {
  Outcome o;
  std::string dump = dump_modularized(modularize_schema(parse_schema(testdata::read("arith.schema"), "arith")));
  o.absorb(dump);
  if (dump != testdata::read("arith.dump")) o.fail("dump differs:\n" + dump);
  if (o.pass) o.detail = "4 kinds over ArithL/AtomL/LitL";
  return o;
}

Outcome decompose_isomorphism(const Settings& s) {
  Outcome o;
  auto start = std::chrono::steady_clock::now();
  for (const auto& name : language_names()) {
    const LanguageDef& lang = language(name);
    for (const auto& src : hs::gen_corpus(lang, s.programs, 3)) {
      GenericValue a = lang.parse(src);
      Term t = lang.decompose(a);
      if (lang.recompose(t) != a) o.fail(name + ":\n" + src);
      o.absorb(to_sexpr(t));
    }
  }
  double secs = seconds_since(start);
  std::cerr << "  criterion 3 took " << secs << " s\n";
  if (secs >= 120) o.fail("took longer than 120 s");
  if (o.pass) o.detail = std::to_string(3 * s.programs) + " programs";
  return o;
}

Outcome diff_all_equal(const Settings& s, const std::string& pass, std::uint64_t seed) {
  Outcome o;
  std::ostringstream d;
  for (const auto& name : language_names()) {
    const LanguageDef& lang = language(name);
    hs::DiffReport r = hs::diff_test(lang, pass, hs::gen_corpus(lang, s.programs, seed), false);
    o.absorb(r.text());
    d << name << " " << r.passed() << "/" << r.entries.size() << " ";
    if (r.passed() != r.entries.size()) o.fail(name + ":\n" + r.text());
  }
  if (o.pass) o.detail = d.str();
  return o;
}

Outcome fig2_golden() {
  Outcome o;
  static const std::regex tok(R"([A-Za-z_][A-Za-z0-9_]*|[0-9]+|==|!=|<=|>=|&&|\|\||\S)");
  auto tokens = [](const std::string& text) {
    std::vector<std::string> out;
    for (auto it = std::sregex_iterator(text.begin(), text.end(), tok); it != std::sregex_iterator(); ++it) {
      out.push_back(it->str());
    }
    return out;
  };
  const LanguageDef& c = language("minic");
  std::string out = render(c, tf::elementary_hoist(ips(c, testdata::read("hoist_before.mc")), c));
  o.absorb(out);
  std::string want = c.pretty(c.parse(testdata::read("hoist_after.mc")));
  if (tokens(out) != tokens(want)) o.fail("token streams differ:\n" + out);
  if (o.pass) o.detail = std::to_string(tokens(out).size()) + " tokens equal";
  return o;
}

Outcome hoist_preservation(const Settings& s) {
  Outcome o;
  hs::GenConfig cfg;
  cfg.shadowing = true;
  std::ostringstream d;
  for (const auto& name : language_names()) {
    const LanguageDef& lang = language(name);
    auto corpus = hs::gen_corpus(lang, s.programs, 6, cfg);
    hs::DiffReport r = hs::diff_test(lang, "hoist", corpus, false);
    o.absorb(r.text());
    std::size_t scan_ok = 0;
    for (const auto& src : corpus) {
      Term h = tf::hoist(ips(lang, src), lang);
      auto v = tf::hoist_violations(h, lang);
      scan_ok += v.empty();
      if (!v.empty()) o.fail(name + " postcondition: " + v.front() + "\n" + src);
      o.absorb(render(lang, h));
    }
    d << name << " " << r.passed() << "/" << r.entries.size() << " scan " << scan_ok << "/" << corpus.size() << " ";
    if (r.passed() * 1000 < r.entries.size() * 995) o.fail(name + " below 99.5%:\n" + r.text());
    for (std::size_t k = 0; k < r.entries.size(); ++k) {
      if (r.entries[k].verdict != hs::Verdict::Equal) {
        std::cerr << "  hoist " << name << " #" << k << " " << hs::to_string(r.entries[k].verdict) << ": "
                  << r.entries[k].detail << "\n";
      }
    }
  }
  if (o.pass) o.detail = d.str();
  return o;
}

Outcome coverage(const Settings& s) {
  Outcome o;
  const LanguageDef& js = language("minijs");
  tf::Coverage c = tf::testcov(ips(js, testdata::read("countf.mjs")), js);
  std::string text = render(js, c.term);
  o.absorb(text);
  const std::string want =
      "function countF() {\n  TC.cov[0] = true;\n  var count = 0;\n  var i;\n"
      "  for (i = 0; i < 9; i = i + 1) {\n    TC.cov[1] = true;\n    if (f(i)) {\n      TC.cov[2] = true;\n"
      "      count = count + 1;\n      break;\n    } else {\n      TC.cov[3] = true;\n      print(i);\n    }\n  }\n"
      "  TC.cov[4] = true;\n  return count;\n}\n";
  if (c.block_count != 5 || text != want) o.fail("countF markers:\n" + text);
  hs::GenConfig gen;
  gen.user_calls = false;
  std::size_t walks = 0;
  for (const auto& name : language_names()) {
    const LanguageDef& lang = language(name);
    for (const auto& src : hs::gen_corpus(lang, s.walk_programs, 7, gen)) {
      Term t = ips(lang, src);
      flow::Cfg cfg = flow::build_cfg(t, lang);
      tf::Coverage cov = tf::testcov(t, lang);
      hs::RunConfig run;
      run.coverage_slots = cov.block_count;
      hs::Trace marked = hs::interpret(lang, lang.parse(render(lang, cov.term)), run);
      hs::Trace plain = hs::interpret(lang, lang.parse(src), run);
      o.absorb(hs::to_string(marked));
      if (auto problem = hs::check_marker_walk(cfg, marked)) {
        o.fail(name + " walk: " + *problem + "\n" + src);
      } else if (hs::erase_markers(marked) != plain) {
        o.fail(name + " instrumented run changed behaviour\n" + src);
      } else {
        ++walks;
      }
    }
  }
  if (o.pass) o.detail = "countF golden, " + std::to_string(walks) + " walks";
  return o;
}

Outcome tac(const Settings& s) {
  Outcome o;
  const LanguageDef& js = language("minijs");
  std::string golden = render(js, tf::tac(ips(js, "function f() {\n  var x;\n  x = 1 + 1 + 1;\n}\n"), js));
  o.absorb(golden);
  if (golden != "function f() {\n  var x;\n  var __t0 = 1 + 1;\n  x = __t0 + 1;\n}\n") o.fail("1+1+1:\n" + golden);

  std::size_t scanned = 0, call_programs = 0, calls = 0;
  hs::GenConfig trapping;
  trapping.trapping_calls = true;
  for (const std::string name : {"minijs", "minilua"}) {
    const LanguageDef& lang = language(name);
    for (const auto& src : hs::gen_corpus(lang, s.programs, 8)) {
      Term out = tf::tac(ips(lang, src), lang);
      auto v = tf::tac_violations(out, lang);
      if (!v.empty()) o.fail(name + " atomic scan: " + v.front() + "\n" + src);
      o.absorb(render(lang, out));
      ++scanned;
    }
    for (const auto& src : hs::gen_corpus(lang, s.call_programs, 9, trapping)) {
      hs::Trace before = hs::interpret(lang, lang.parse(src));
      hs::Trace after = hs::interpret(lang, lang.parse(render(lang, tf::tac(ips(lang, src), lang))));
      auto count = [](const hs::Trace& t) {
        return std::count_if(t.begin(), t.end(), [](const hs::Event& e) {
          return e.kind == hs::Event::Kind::Call || (e.kind == hs::Event::Kind::Trap && e.text == "fail");
        });
      };
      o.absorb(hs::to_string(after));
      if (before != after || count(before) != count(after)) o.fail(name + " call counts:\n" + src);
      calls += static_cast<std::size_t>(count(before));
      ++call_programs;
    }
  }

  Term loop = ips(js, testdata::read("continue_loop.mjs"));
  std::vector<flow::Site> sites;
  std::function<void(const Term&, Path&)> find = [&](const Term& t, Path& p) {
    if (t.sort() == js.stmt_sort() && js.stmt_view(t).kind == StmtKind::While) sites = flow::loop_condition_sites(loop, p, js);
    for (std::size_t i = 0; i < t.arity(); ++i) {
      p.push_back(i);
      find(t.child(i), p);
      p.pop_back();
    }
  };
  Path root;
  find(loop, root);
  std::string lowered = render(js, tf::tac(loop, js));
  o.absorb(lowered);
  std::size_t recomputations = 0;
  for (std::size_t at = lowered.find("__t0 = i + 1;"); at != std::string::npos; at = lowered.find("__t0 = i + 1;", at + 1)) {
    ++recomputations;
  }
  hs::DiffReport r = hs::diff_test(js, "tac", {testdata::read("continue_loop.mjs")}, false);
  if (sites.size() != 3 || recomputations != 3 || r.passed() != 1) {
    o.fail("continue example: " + std::to_string(sites.size()) + " sites\n" + lowered);
  }
  if (o.pass) {
    o.detail = "golden, " + std::to_string(scanned) + " atomic, " + std::to_string(call_programs) + " call-count (" +
               std::to_string(calls) + " calls), 3 sites";
  }
  return o;
}

Outcome injections(const Settings& s) {
  Outcome o;
  std::size_t edges = 0;
  for (const auto& name : language_names()) {
    const LanguageDef& lang = language(name);
    fuzz::TermFuzzer fz(lang.ips_signature());
    fuzz::Rng rng(10);
    for (const auto& [key, decl] : lang.injections().edges()) {
      ++edges;
      for (std::size_t i = 0; i < s.fuzz_terms; ++i) {
        Term x = fz.make(decl.from, rng, 3);
        auto back = proj_f(lang.injections(), inj_f(lang.injections(), x, decl.to), decl.from);
        if (!back || *back != x) o.fail(name + " " + decl.from.key() + " -> " + decl.to.key() + ": " + to_sexpr(x));
        o.absorb(to_sexpr(x));
      }
    }
  }
  if (o.pass) o.detail = std::to_string(edges) + " edges x " + std::to_string(s.fuzz_terms) + " terms";
  return o;
}

struct Criterion {
  int id;
  std::string name;
  std::function<Outcome(const Settings&)> run;
};

std::vector<Criterion> criteria() {
  return {
      {1, "modularizer isomorphism", modularizer_isomorphism},
      {2, "arith signature golden", [](const Settings&) { return arith_golden(); }},
      {3, "decompose/recompose isomorphism", decompose_isomorphism},
      {4, "identity pass baseline", [](const Settings& s) { return diff_all_equal(s, "ident", 4); }},
      {5, "elementary hoist golden", [](const Settings&) { return fig2_golden(); }},
      {6, "hoist semantic preservation", hoist_preservation},
      {7, "testcov golden and marker walks", coverage},
      {8, "three-address code", tac},
      {9, "injection round trip", injections},
  };
}

std::string line(const Criterion& c, const Outcome& o) {
  std::ostringstream out;
  out << "criterion " << c.id << ": " << (o.pass ? "PASS" : "FAIL") << "  " << c.name << "  [" << o.detail
      << "] digest " << std::hex << o.digest;
  return out.str();
}

std::string run_once(const Settings& s, bool echo, bool& all_pass) {
  std::string report;
  for (const auto& c : criteria()) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run(s);
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    all_pass = all_pass && o.pass;
    std::string l = line(c, o);
    report += l + "\n";
    if (echo) {
      std::cout << l << std::endl;
      std::cerr << "  (" << seconds_since(start) << " s)\n";
    }
  }
  return report;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  Settings s;
  std::string report_path;
  app.add_option("--programs", s.programs, "Generated programs per language");
  app.add_option("--report", report_path, "Write the report to this file");
  CLI11_PARSE(app, argc, argv);

  bool all_pass = true;
  std::string first = run_once(s, true, all_pass);
  bool again_pass = true;
  std::string second = run_once(s, false, again_pass);
  bool same = first == second;
  std::cout << "criterion 10: " << (same ? "PASS" : "FAIL") << "  determinism  ["
            << (same ? "second run byte-identical" : "second run differs") << "]" << std::endl;
  if (!report_path.empty()) {
    std::ofstream(report_path, std::ios::binary) << first;
  }
  return all_pass && same ? 0 : 1;
}
