// phimod: command-line front end.
//
//   phimod check FILE          validate axioms (exit 2 on failure)
//   phimod analyze FILE        full analysis report
//   phimod fm --p P --s S --b B
//   phimod sym FILE --n N
//   phimod theorem1 FILE
//   phimod end FILE [--semilinear] [--no-filtration]
//
// Global: --json, --precision K, --seed S, --out PATH.
// Exit: 0 ok, 1 parse/usage, 2 axiom failure, 3 precision exhausted.

#include <openssl/evp.h>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "phimod/phimod.hpp"

namespace {

using namespace phimod;

enum Exit { kOk = 0, kUsage = 1, kAxiom = 2, kPrecision = 3 };

struct Globals {
  bool json = false;
  long precision = kDefaultPrecision;
  unsigned long seed = 0;
  std::string out;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
  std::string hex;
  char buf[3];
  for (unsigned i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

void emit(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(g.out, std::ios::binary);
  if (!f) throw ParseError("cannot write '" + g.out + "'");
  f << text;
}

void emit_json(const Globals& g, const Json& j) { emit(g, g.json ? j.dump(2) + "\n" : render_table(j)); }

struct Loaded {
  FilteredPhiNModule module;
  std::string hash;
};

Loaded load(const std::string& path) {
  std::string text = read_file(path);
  try {
    return {parse_document(text), sha256_hex(text)};
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

SearchOptions search_options(const Globals& g) {
  SearchOptions s;
  s.seed = g.seed;
  return s;
}

int axiom_failure(const Globals& g, const ValidationReport& v) {
  emit_json(g, {{"validation", validation_to_json(v)}});
  for (const auto& c : v.checks)
    if (!c.passed) std::cerr << "axiom failed: " << c.name << (c.detail.empty() ? "" : " (" + c.detail + ")") << "\n";
  return kAxiom;
}

int cmd_check(const Globals& g, const std::string& file) {
  auto [m, hash] = load(file);
  auto v = validate(m);
  if (!v.ok()) return axiom_failure(g, v);
  emit_json(g, {{"input_sha256", hash}, {"validation", validation_to_json(v)}});
  return kOk;
}

int cmd_analyze(const Globals& g, const std::string& file) {
  auto [m, hash] = load(file);
  auto v = validate(m);
  if (!v.ok()) return axiom_failure(g, v);
  ReportOptions opt;
  opt.precision = g.precision;
  opt.search = search_options(g);
  opt.input_hash = hash;
  emit_json(g, analysis_report(m, opt));
  return kOk;
}

int cmd_fm(const Globals& g, long p, long s, const std::string& b) {
  emit(g, to_document(fm_example(p, s, Rational::parse(b))));
  return kOk;
}

int cmd_sym(const Globals& g, const std::string& file, unsigned n) {
  auto [m, hash] = load(file);
  auto v = validate(m);
  if (!v.ok()) return axiom_failure(g, v);
  emit(g, to_document(sym_power(m, n)));
  return kOk;
}

std::string chain_text(const std::vector<Subspace>& chain) {
  std::string s;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    if (i) s += " ⊂ ";
    if (chain[i].is_zero())
      s += "0";
    else if (chain[i].is_full())
      s += "M";
    else
      s += chain[i].str();
  }
  return s;
}

int cmd_theorem1(const Globals& g, const std::string& file) {
  auto [m, hash] = load(file);
  auto v = validate(m);
  if (!v.ok()) return axiom_failure(g, v);
  auto t = theorem1_check(m, g.precision, search_options(g));
  if (g.json) {
    Json j = theorem1_to_json(t);
    j["input_sha256"] = hash;
    emit(g, j.dump(2) + "\n");
    return kOk;
  }
  std::ostringstream os;
  os << "hodge_tate_type  " << hodge_tate_type(m).str() << "\n";
  if (!t.breach.empty()) {
    os << "precondition breach: " << t.breach << "\n";
  } else {
    os << "weakly_admissible  " << to_string(t.admissibility) << "\n";
    os << "kind  " << to_string(t.witness->kind) << "\n";
    os << "m0  " << (t.witness->m0.is_zero() ? "0" : t.witness->m0.str()) << "\n";
    os << "chain  " << chain_text(t.witness->chain) << "\n";
    os << "irreducible  " << (t.irreducible ? (*t.irreducible ? "true" : "false") : "undecided") << "\n";
    os << "conclusion (irreducible => N = 0)  " << (t.conclusion_holds ? "holds" : "FAILS") << "\n";
  }
  emit(g, os.str());
  return kOk;
}

int cmd_end(const Globals& g, const std::string& file, bool semilinear, bool no_filtration) {
  auto [m, hash] = load(file);
  auto v = validate(m);
  if (!v.ok()) return axiom_failure(g, v);
  emit_json(g, endomorphisms_to_json(m, !no_filtration, semilinear));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations with filtered (phi, N)-modules over Q_p", "phimod"};
  app.require_subcommand(1);
  Globals g;
  app.add_flag("--json", g.json, "emit canonical JSON");
  app.add_option("--precision", g.precision, "p-adic working precision")->capture_default_str();
  app.add_option("--seed", g.seed, "seed for the heuristic subspace search")->capture_default_str();
  app.add_option("--out", g.out, "write output to this path instead of stdout");

  std::string file;
  auto* check = app.add_subcommand("check", "validate the module axioms");
  check->add_option("file", file, "module document")->required();
  auto* analyze = app.add_subcommand("analyze", "full analysis report");
  analyze->add_option("file", file, "module document")->required();

  long p = 0, s = 0;
  std::string b;
  auto* fm = app.add_subcommand("fm", "write the two-dimensional example module");
  fm->add_option("--p", p, "prime")->required();
  fm->add_option("--s", s, "odd integer >= 3")->required();
  fm->add_option("--b", b, "rational with v_p(b) = (s-1)/2")->required();

  unsigned n = 2;
  auto* sym = app.add_subcommand("sym", "write the n-th symmetric power");
  sym->add_option("file", file, "module document")->required();
  sym->add_option("--n", n, "power")->required();

  auto* thm = app.add_subcommand("theorem1", "type (0,1) dichotomy check");
  thm->add_option("file", file, "module document")->required();

  bool semilinear = false, no_filtration = false;
  auto* end = app.add_subcommand("end", "endomorphism dimensions");
  end->add_option("file", file, "module document")->required();
  end->add_flag("--semilinear", semilinear, "solve over a generic unramified extension");
  end->add_flag("--no-filtration", no_filtration, "ignore the filtration constraint");

  for (auto* sub : {check, analyze, fm, sym, thm, end}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*check) return cmd_check(g, file);
    if (*analyze) return cmd_analyze(g, file);
    if (*fm) return cmd_fm(g, p, s, b);
    if (*sym) return cmd_sym(g, file, n);
    if (*thm) return cmd_theorem1(g, file);
    if (*end) return cmd_end(g, file, semilinear, no_filtration);
  } catch (const PrecisionExhausted& e) {
    std::cerr << "precision exhausted: " << e.what() << "\n";
    return kPrecision;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const BadParameters& e) {
    std::cerr << "bad parameters: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
