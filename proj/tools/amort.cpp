#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "amort/analysis.hpp"
#include "amort/corpus.hpp"
#include "amort/errors.hpp"
#include "amort/extract.hpp"
#include "amort/fuzz.hpp"
#include "amort/la_interp.hpp"
#include "amort/la_typecheck.hpp"
#include "amort/splay.hpp"
#include "amort/stlc.hpp"
#include "amort/syntax.hpp"

namespace {

using namespace amort;

enum Exit { Ok = 0, Usage = 1, ParseFailure = 2, TypeFailure = 3, BoundFailure = 4, RuntimeFailure = 5 };

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::Parse:
      return ParseFailure;
    case ErrorKind::UnboundVariable:
    case ErrorKind::TypeMismatch:
    case ErrorKind::NonPositiveMultiplicity:
    case ErrorKind::IllFormedCredit:
    case ErrorKind::InsufficientResources:
      return TypeFailure;
    case ErrorKind::BoundViolation:
    case ErrorKind::InvariantViolation:
    case ErrorKind::MalformedCertificate:
      return BoundFailure;
    default:
      return RuntimeFailure;
  }
}

// A path on disk, or the name of an embedded corpus program ("counter",
// "counter.la").
syntax::ProgramFile load(const std::string& path) {
  if (std::filesystem::exists(path)) {
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    return syntax::parse_program(buf.str());
  }
  std::string name = std::filesystem::path(path).stem().string();
  for (const auto& s : corpus::sources())
    if (s.name == name) return corpus::program(name);
  throw CLI::ValidationError("no such file or corpus program: " + path);
}

const syntax::Definition& pick(const syntax::ProgramFile& p, const std::string& def) {
  if (def.empty()) return p.entry();
  if (const auto* d = p.find(def)) return *d;
  throw UnboundVariable("no definition named " + def);
}

la::Term subject(const syntax::ProgramFile& p, const std::string& def, const std::string& arg) {
  la::Term m = p.resolve(pick(p, def).name);
  if (!arg.empty()) m = la::tm::app(m, syntax::parse_la_term(arg, p.aliases));
  return m;
}

void emit_records(const std::string& target, const std::string& records) {
  if (target == "-") {
    std::cout << records;
    return;
  }
  std::ofstream out(target);
  if (!out) throw Error(ErrorKind::Unsupported, "cannot write " + target);
  out << records;
}

int cmd_check(const std::string& file) {
  auto p = load(file);
  for (const auto& d : p.defs) {
    la::Term m = p.resolve(d.name);
    auto synth = la::synthesize({}, m);
    la::check({}, ResourceTerm::credits(d.bank), m, d.type);
    std::cout << d.name << " : " << sx::write_flat(syntax::to_sexpr(d.type, p.aliases)) << "  uses "
              << synth.resources.bank().to_string() << " of " << d.bank.to_string() << " credits\n";
  }
  return Ok;
}

int cmd_run(const std::string& file, const std::string& def, const std::string& arg, bool trace) {
  auto p = load(file);
  la::Term m = subject(p, def, arg);
  la::synthesize({}, m);
  la::EvalOptions opts;
  opts.trace = trace;
  auto out = la::eval(m, opts);
  if (trace)
    for (const auto& t : out.trace) std::cout << "  " << t.rule << "  +" << t.dn << " ticks  " << t.dr << " credits\n";
  std::cout << syntax::pretty(out.value) << "\n";
  std::cout << "n = " << out.cost.n << "  r = " << out.cost.r << "  n+r = " << out.cost.amortized() << "\n";
  return Ok;
}

int cmd_erase(const std::string& file, const std::string& def, const std::string& arg) {
  auto p = load(file);
  std::cout << stlc::show(la::erase(subject(p, def, arg))) << "\n";
  return Ok;
}

int cmd_extract(const std::string& file, const std::string& def, const std::string& arg, bool normalize) {
  auto p = load(file);
  Complexity c = extract({}, subject(p, def, arg));
  std::cout << "; " << sx::write_flat(syntax::to_sexpr(c.type)) << "\n";
  std::cout << syntax::pretty(normalize ? lc::normalize(c.term) : c.term) << "\n";
  return Ok;
}

int cmd_solve(const std::string& file, std::vector<std::string> defs, const std::string& sizes) {
  std::uint64_t lo = 0, hi = 0;
  if (!analysis::parse_range(sizes, lo, hi)) throw CLI::ValidationError("--sizes", "expected LO..HI");
  auto p = load(file);
  if (defs.empty())
    for (const auto& d : p.defs)
      if (analysis::solvable(d.type)) defs.push_back(d.name);
  if (defs.empty()) throw Error(ErrorKind::Unsupported, "no definition takes a natural or a list");
  std::vector<std::vector<analysis::SolveRow>> columns;
  for (const auto& d : defs) columns.push_back(analysis::solve(p, d, lo, hi));
  std::cout << analysis::solve_table(defs, columns);
  return Ok;
}

int cmd_verify(const std::string& file, const std::string& def, const std::string& inputs,
               const std::string& records) {
  std::uint64_t lo = 0, hi = 0;
  if (!analysis::parse_range(inputs, lo, hi)) throw CLI::ValidationError("--inputs", "expected LO..HI");
  auto p = load(file);
  auto report = analysis::verify(p, pick(p, def).name, lo, hi);
  if (records.empty())
    std::cout << report.table();
  else
    emit_records(records, report.records());
  std::cerr << report.entries.size() - report.failures() << "/" << report.entries.size() << " pass\n";
  return report.ok() ? Ok : BoundFailure;
}

int cmd_splay(const splay::SplayOptions& opts, const std::string& records, bool table) {
  auto report = splay::check_splay(opts);
  if (table) std::cout << report.table();
  if (!records.empty()) emit_records(records, report.records());
  std::cout << report.summary();
  return report.ok() ? Ok : BoundFailure;
}

int cmd_fuzz(const fuzz::FuzzConfig& cfg) {
  auto report = fuzz::run(cfg);
  std::cout << report.summary();
  return report.ok() ? Ok : BoundFailure;
}

int cmd_corpus(const std::string& name) {
  if (name.empty()) {
    for (const auto& s : corpus::sources()) {
      std::cout << s.name << ":";
      for (const auto& d : corpus::program(s.name).defs) std::cout << " " << d.name;
      std::cout << "\n";
    }
    return Ok;
  }
  std::cout << corpus::source(std::filesystem::path(name).stem().string());
  return Ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Typecheck, run and bound programs with amortized cost annotations"};
  app.require_subcommand(1);

  std::string file, def, arg, sizes, inputs, records;
  std::vector<std::string> defs;
  bool trace = false, normalize = false, table = false;

  auto* check = app.add_subcommand("check", "Typecheck every definition and print its credit use");
  check->add_option("file", file, "Program file or corpus name")->required();

  auto add_subject = [&](CLI::App* sub) {
    sub->add_option("file", file, "Program file or corpus name")->required();
    sub->add_option("--def", def, "Definition (default: main)");
    sub->add_option("--arg", arg, "Apply the definition to this term");
  };
  auto* run = app.add_subcommand("run", "Evaluate and report ticks and credits");
  add_subject(run);
  run->add_flag("--trace", trace, "Print every cost-bearing step");
  auto* erase = app.add_subcommand("erase", "Print the credit-free program");
  add_subject(erase);
  auto* ext = app.add_subcommand("extract", "Print the extracted recurrence");
  add_subject(ext);
  ext->add_flag("--normalize", normalize, "Normalize the closed recurrence");

  auto* solve = app.add_subcommand("solve", "Tabulate the extracted cost against input size");
  solve->add_option("file", file, "Program file or corpus name")->required();
  solve->add_option("--def", defs, "Definitions to tabulate (default: all that take a natural or list)");
  solve->add_option("--sizes", sizes, "Size range LO..HI")->required();

  auto* verify = app.add_subcommand("verify", "Run every input of each size against its extracted bound");
  verify->add_option("file", file, "Program file or corpus name")->required();
  verify->add_option("--def", def, "Definition (default: main)");
  verify->add_option("--inputs", inputs, "Input size range LO..HI")->required();
  verify->add_option("--records", records, "Write size,n,r,bound,verdict records here ('-' for stdout)");

  splay::SplayOptions sopts;
  auto* sp = app.add_subcommand("splay", "Check split on random splay trees against 1 + 2 phi(n)");
  sp->add_option("--max-size", sopts.max_size, "Largest tree")->capture_default_str();
  sp->add_option("--trials", sopts.trials, "Number of random splits")->capture_default_str();
  sp->add_option("--seed", sopts.seed, "Random seed")->capture_default_str();
  sp->add_option("--sequence", sopts.sequence_ops, "Operations in the sequence test")->capture_default_str();
  sp->add_option("--records", records, "Write size,n,r,bound,verdict records here ('-' for stdout)");
  sp->add_flag("--table", table, "Print one line per trial");

  fuzz::FuzzConfig fcfg;
  auto* fz = app.add_subcommand("fuzz", "Generate well-typed programs and check the metatheory on each");
  fz->add_option("--count", fcfg.count, "Programs to check")->capture_default_str();
  fz->add_option("--depth", fcfg.gen.max_depth, "Maximum term depth")->capture_default_str();
  fz->add_option("--seed", fcfg.seed, "Random seed")->capture_default_str();
  fz->add_flag("--mutant", fcfg.ignore_spend, "Typecheck with spend treated as free");

  std::string corpus_name;
  auto* cp = app.add_subcommand("corpus", "List the built-in programs or print one");
  cp->add_option("name", corpus_name, "Program to print");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? Ok : Usage;
  }

  try {
    if (*check) return cmd_check(file);
    if (*run) return cmd_run(file, def, arg, trace);
    if (*erase) return cmd_erase(file, def, arg);
    if (*ext) return cmd_extract(file, def, arg, normalize);
    if (*solve) return cmd_solve(file, defs, sizes);
    if (*verify) return cmd_verify(file, def, inputs, records);
    if (*sp) return cmd_splay(sopts, records, table);
    if (*fz) return cmd_fuzz(fcfg);
    if (*cp) return cmd_corpus(corpus_name);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return Usage;
  } catch (const Error& e) {
    std::cerr << error_kind_name(e.kind()) << ": " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return Usage;
  }
  return Usage;
}
