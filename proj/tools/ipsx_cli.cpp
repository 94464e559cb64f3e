// Command-line front end. Exit codes: 0 success, 1 usage error, 2 parse or
// transform failure, 3 when a difftest run has non-Equal programs.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ipsx/flow.hpp"
#include "ipsx/harness.hpp"
#include "ipsx/modularizer.hpp"
#include "ipsx/transforms.hpp"

namespace fs = std::filesystem;
using namespace ipsx;

namespace {

constexpr int kUsage = 1;
constexpr int kFailure = 2;
constexpr int kDiffs = 3;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidPath, "cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

const LanguageDef& pick_language(const std::string& name, const std::string& file) {
  if (!name.empty()) return language(name);
  if (const LanguageDef* l = language_for_path(file)) return *l;
  throw CLI::ValidationError("--lang", "cannot infer the language of " + file);
}

Term transform(const LanguageDef& lang, const std::string& pass, const Term& program) {
  if (pass == "testcov") return transforms::testcov(program, lang).term;
  return transforms::apply_pass(pass, program, lang);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-language source-to-source transformations over incremental parametric syntax"};
  app.require_subcommand(1);

  std::vector<std::string> langs = language_names();
  std::vector<std::string> passes = transforms::pass_names();

  std::string lang_name, pass, file, out_file, corpus_dir, schema_file, inspect_lang;
  std::size_t count = 100;
  std::uint64_t seed = 0;
  bool erase = false, dot = false;

  auto* transform_cmd = app.add_subcommand("transform", "Apply a pass and print the resulting source");
  transform_cmd->add_option("--lang", lang_name)->check(CLI::IsMember(langs));
  transform_cmd->add_option("--pass", pass)->required()->check(CLI::IsMember(passes));
  transform_cmd->add_option("--out", out_file, "Write to FILE instead of standard output");
  transform_cmd->add_option("file", file)->required()->check(CLI::ExistingFile);

  auto* roundtrip_cmd = app.add_subcommand("roundtrip", "Check that printing and re-parsing is a fixed point");
  roundtrip_cmd->add_option("--lang", lang_name)->check(CLI::IsMember(langs));
  roundtrip_cmd->add_option("file", file)->required()->check(CLI::ExistingFile);

  auto* diff_cmd = app.add_subcommand("difftest", "Compare interpreter traces before and after a pass");
  diff_cmd->add_option("--lang", lang_name)->required()->check(CLI::IsMember(langs));
  diff_cmd->add_option("--pass", pass)->required()->check(CLI::IsMember(passes));
  auto* count_opt = diff_cmd->add_option("--count", count, "Number of generated programs");
  auto* seed_opt = diff_cmd->add_option("--seed", seed, "Generator seed");
  auto* corpus_opt = diff_cmd->add_option("--corpus", corpus_dir, "Directory of source files")->check(CLI::ExistingDirectory);
  corpus_opt->excludes(count_opt)->excludes(seed_opt);
  diff_cmd->add_flag("--erase-markers", erase, "Drop coverage marker events before comparing");

  auto* cfg_cmd = app.add_subcommand("cfg", "Print the control-flow graph");
  cfg_cmd->add_option("--lang", lang_name)->check(CLI::IsMember(langs));
  cfg_cmd->add_flag("--dot", dot, "Graphviz output")->required();
  cfg_cmd->add_option("file", file)->required()->check(CLI::ExistingFile);

  auto* mod_cmd = app.add_subcommand("modularize", "Dump the modularized signature of a schema file");
  mod_cmd->add_option("schema", schema_file)->required()->check(CLI::ExistingFile);

  auto* inspect_cmd = app.add_subcommand("inspect", "Show a language's registration");
  inspect_cmd->add_option("--injections", inspect_lang, "List the injection table")->required()->check(CLI::IsMember(langs));

  auto* gen_cmd = app.add_subcommand("gen", "Print generated programs");
  gen_cmd->add_option("--lang", lang_name)->required()->check(CLI::IsMember(langs));
  gen_cmd->add_option("--seed", seed);
  gen_cmd->add_option("--count", count)->default_val(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*transform_cmd) {
      const LanguageDef& lang = pick_language(lang_name, file);
      GenericValue ast = lang.parse(slurp(file));
      std::string text = lang.pretty(lang.recompose(transform(lang, pass, lang.decompose(ast))));
      if (out_file.empty()) {
        std::cout << text;
      } else {
        std::ofstream(out_file, std::ios::binary) << text;
      }
      return 0;
    }
    if (*roundtrip_cmd) {
      const LanguageDef& lang = pick_language(lang_name, file);
      GenericValue a = lang.parse(slurp(file));
      std::string printed = lang.pretty(a);
      GenericValue b = lang.parse(printed);
      bool ok = a == b && lang.recompose(lang.decompose(a)) == a && lang.pretty(b) == printed;
      std::cout << (ok ? "fixed point" : "not a fixed point") << "\n";
      return ok ? 0 : kFailure;
    }
    if (*diff_cmd) {
      const LanguageDef& lang = language(lang_name);
      std::vector<std::string> corpus;
      if (!corpus_dir.empty()) {
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(corpus_dir)) {
          if (entry.is_regular_file() && entry.path().extension() == lang.extension()) files.push_back(entry.path());
        }
        std::sort(files.begin(), files.end());
        for (const auto& p : files) corpus.push_back(slurp(p.string()));
      } else {
        corpus = harness::gen_corpus(lang, count, seed);
      }
      harness::DiffReport report = harness::diff_test(lang, pass, corpus, erase);
      std::cout << report.text();
      return report.passed() == report.entries.size() ? 0 : kDiffs;
    }
    if (*cfg_cmd) {
      const LanguageDef& lang = pick_language(lang_name, file);
      std::cout << flow::build_cfg(lang.decompose(lang.parse(slurp(file))), lang).dot();
      return 0;
    }
    if (*mod_cmd) {
      Schema schema = parse_schema(slurp(schema_file), fs::path(schema_file).stem().string());
      ValidationReport report = validate_schema(schema);
      if (!report.ok()) {
        std::cerr << report.to_string();
        return kFailure;
      }
      std::cout << dump_modularized(modularize_schema(schema));
      return 0;
    }
    if (*inspect_cmd) {
      std::cout << language(inspect_lang).injections().dump();
      return 0;
    }
    if (*gen_cmd) {
      const LanguageDef& lang = language(lang_name);
      for (const auto& text : harness::gen_corpus(lang, count, seed)) std::cout << text << "\n";
      return 0;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kFailure;
  }
  return kUsage;
}
