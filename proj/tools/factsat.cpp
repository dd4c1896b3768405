#include "factsat/cnf.hpp"
#include "factsat/crt.hpp"
#include "factsat/numgen.hpp"
#include "factsat/reducer.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <utility>

namespace {

constexpr const char* kVersion = "0.1.0";

// Exit codes: 0 success, 1 verification failure, 2 usage or configuration
// error, 3 I/O or parse error.
constexpr int kOk = 0, kVerifyFail = 1, kUsage = 2, kIo = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string output_dir() {
  const char* env = std::getenv("FACTSAT_OUTPUT_DIR");
  return env && *env ? std::string(env) : std::string(".");
}

std::string join_path(const std::string& dir, const std::string& name) {
  if (dir.empty() || dir == ".") return name;
  return dir.back() == '/' ? dir + name : dir + "/" + name;
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open " + path + " for writing");
  os << bytes;
  if (!os) throw IoError("write failed on " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

struct GenerateConfig {
  int l = 0;
  std::string mode = "crt";
  std::uint64_t seed = 1;
  std::string format = "dimacs";
  bool negate = false;
  bool witness = false;
  std::string x_hex;
  std::string plan_text;
  std::string out_path;
};

factsat::crt::CrtPlan resolve_plan(const GenerateConfig& cfg) {
  namespace crt = factsat::crt;
  if (!cfg.plan_text.empty()) {
    crt::CrtPlan p = crt::parse_plan(cfg.plan_text);
    if (p.l != cfg.l)
      throw UsageError("plan override is for l=" + std::to_string(p.l) +
                       ", not l=" + std::to_string(cfg.l));
    auto bad = crt::validate_plan(p);
    if (!bad.empty()) throw UsageError("plan override invalid: " + bad.front());
    return p;
  }
  if (crt::has_preset(cfg.l)) return crt::preset_plan(cfg.l);
  return crt::plan(cfg.l);
}

int cmd_generate(const GenerateConfig& cfg) {
  using factsat::BigInt;
  namespace cnf = factsat::cnf;
  namespace numgen = factsat::numgen;
  namespace reducer = factsat::reducer;

  if (cfg.negate && cfg.witness)
    throw UsageError("--negate emits no witness; drop --witness");
  if (cfg.negate && cfg.format != "dimacs")
    throw UsageError("--negate appends CNF blocking clauses; requires dimacs");

  BigInt x;
  std::optional<std::pair<BigInt, BigInt>> pq;
  if (!cfg.x_hex.empty()) {
    try {
      x = factsat::from_hex(cfg.x_hex);
    } catch (const std::exception&) {
      throw UsageError("--x is not valid hex: " + cfg.x_hex);
    }
    if (cfg.witness || cfg.negate) {
      auto f = numgen::brute_force_factor(x);
      if (!f || factsat::bit_length(f->first) != unsigned(cfg.l) ||
          factsat::bit_length(f->second) != unsigned(cfg.l))
        throw UsageError(
            "--x override is not a product of two l-bit factors; cannot "
            "honor --witness/--negate");
      pq = f;
    }
  } else {
    numgen::FactorInstance inst = numgen::make_instance(cfg.l, cfg.seed);
    x = inst.x;
    pq = std::make_pair(inst.p, inst.q);
  }

  reducer::Reduction red =
      cfg.mode == "crt"
          ? reducer::build_crt_test_circuit(x, resolve_plan(cfg))
          : reducer::build_naive_test_circuit(x, cfg.l);
  cnf::ExtendedFormula ext = cnf::tseitin_extended(red.circuit);
  factsat::SizeReport sz = factsat::size(red.circuit);

  std::string name = "factsat_l" + std::to_string(cfg.l) + "_" + cfg.mode +
                     (cfg.negate ? "_neg" : "") + "_s" +
                     std::to_string(cfg.seed) +
                     (cfg.format == "dimacs" ? ".cnf" : ".ext");
  std::string path =
      cfg.out_path.empty() ? join_path(output_dir(), name) : cfg.out_path;

  std::ostringstream body;
  std::size_t constraint_count = 0;
  if (cfg.format == "dimacs") {
    cnf::CnfFormula formula = cnf::to_4cnf(ext);
    if (cfg.negate) formula = numgen::negate_solutions(formula, red, pq->first, pq->second);
    if (pq && !cfg.negate)
      numgen::extract_witness(red, formula, pq->first, pq->second);
    cnf::Metadata meta;
    meta.set("l", std::to_string(cfg.l));
    meta.set("x-hex", factsat::to_hex(x));
    meta.set("mode", cfg.mode);
    meta.set("seed", std::to_string(cfg.seed));
    meta.set("generator-version", kVersion);
    cnf::write_dimacs(body, formula, meta);
    constraint_count = formula.clause_count();
  } else if (cfg.format == "ext") {
    if (pq) numgen::extract_witness(red, ext, pq->first, pq->second);
    cnf::write_extended(body, ext);
    constraint_count = ext.constraints.size() + 1;
  } else {
    throw UsageError("unknown --format " + cfg.format);
  }
  write_file(path, body.str());

  std::cout << "l=" << cfg.l << " mode=" << cfg.mode
            << " format=" << cfg.format << (cfg.negate ? " negated" : "")
            << " x=" << factsat::to_hex(x) << "\n";
  std::cout << "variables=" << ext.num_vars
            << (cfg.format == "dimacs" ? " clauses=" : " constraints=")
            << constraint_count << " g3=" << sz.g3 << " g2=" << sz.g2 << "\n";
  std::cout << "wrote " << path << "\n";

  if (cfg.witness) {
    cnf::Witness w = numgen::extract_witness(red, ext, pq->first, pq->second);
    std::ostringstream wb;
    numgen::write_witness(wb, w, x);
    std::string wpath = path + ".witness";
    write_file(wpath, wb.str());
    std::cout << "wrote " << wpath << "\n";
  }
  return kOk;
}

int cmd_report(std::vector<int> ls) {
  namespace crt = factsat::crt;
  namespace cnf = factsat::cnf;
  namespace reducer = factsat::reducer;

  if (ls.empty()) ls = {30, 40, 50, 60, 70, 128, 256};
  for (int l : ls)
    if (!crt::has_preset(l))
      throw UsageError("no preset parameter row for l=" + std::to_string(l));

  std::cout << "       |    straightforward    |"
               "                residue-system form\n";
  std::cout << "     l |    var.s     clauses  |"
               "   est.var  est.cls   built.var built.cls  e0,e1,...\n";
  for (int l : ls) {
    crt::CrtPlan plan = crt::preset_plan(l);
    reducer::NaiveEstimate nv = reducer::estimate_naive_size(l);
    reducer::CrtEstimate est = reducer::estimate_crt_size(plan);

    factsat::numgen::FactorInstance inst = factsat::numgen::make_instance(l, 1);
    reducer::Reduction red = reducer::build_crt_test_circuit(inst.x, plan);
    cnf::ExtendedFormula ext = cnf::tseitin_extended(red.circuit);
    cnf::CnfFormula formula = cnf::to_4cnf(ext);

    std::ostringstream erow;
    erow << plan.e0;
    for (int e : plan.exponents) erow << ',' << e;
    std::printf("%6d | %9lld %11lld | %9lld %8lld   %9u %9zu  %s\n", l,
                (long long)nv.variables, (long long)nv.cnf_clauses,
                (long long)est.variables, (long long)est.cnf_clauses,
                ext.num_vars, formula.clause_count(), erow.str().c_str());
  }
  return kOk;
}

int cmd_verify(const std::string& formula_path,
               const std::string& witness_path) {
  namespace cnf = factsat::cnf;
  namespace numgen = factsat::numgen;

  std::string ftext = read_file(formula_path);
  std::string wtext = read_file(witness_path);

  std::istringstream ws(wtext);
  numgen::WitnessFile wf = numgen::read_witness(ws);

  // Sniff the header of the first non-comment line.
  bool is_ext = false;
  {
    std::istringstream ss(ftext);
    std::string line;
    while (std::getline(ss, line)) {
      if (line.empty() || line[0] == 'c') continue;
      is_ext = line.rfind("p ext", 0) == 0;
      break;
    }
  }

  const auto& a = wf.witness.assignment;
  auto lit_ok = [&](std::int32_t lit) {
    std::size_t v = std::size_t(lit < 0 ? -lit : lit);
    bool b = a[v - 1] != 0;
    return lit < 0 ? !b : b;
  };

  std::istringstream fs(ftext);
  if (is_ext) {
    cnf::ExtendedFormula f = cnf::read_extended(fs);
    if (a.size() != f.num_vars) {
      std::cout << "witness covers " << a.size() << " of " << f.num_vars
                << " variables\n";
      return kVerifyFail;
    }
    for (std::size_t i = 0; i < f.constraints.size(); ++i) {
      const cnf::Constraint& ct = f.constraints[i];
      unsigned row = 0;
      for (std::size_t k = 0; k < ct.inputs.size(); ++k)
        row |= unsigned(lit_ok(ct.inputs[k])) << k;
      bool fv = ((ct.table >> row) & 1u) != 0;
      if ((a[ct.var - 1] != 0) != fv) {
        std::cout << "violated constraint " << i + 1 << ": variable "
                  << ct.var << " does not match its gate\n";
        return kVerifyFail;
      }
    }
    if (a[f.asserted_var - 1] == 0) {
      std::cout << "violated assertion: variable " << f.asserted_var
                << " is false\n";
      return kVerifyFail;
    }
    std::cout << "witness satisfies formula (" << f.num_vars << " variables, "
              << f.constraints.size() << " constraints)\n";
    return kOk;
  }

  cnf::DimacsFile df = cnf::read_dimacs(fs);
  if (a.size() != df.formula.num_vars) {
    std::cout << "witness covers " << a.size() << " of "
              << df.formula.num_vars << " variables\n";
    return kVerifyFail;
  }
  for (std::size_t i = 0; i < df.formula.clause_count(); ++i) {
    bool sat = false;
    for (std::int32_t lit : df.formula.clause(i))
      if (lit_ok(lit)) {
        sat = true;
        break;
      }
    if (!sat) {
      std::cout << "violated clause " << i + 1 << ":";
      for (std::int32_t lit : df.formula.clause(i)) std::cout << ' ' << lit;
      std::cout << " 0\n";
      return kVerifyFail;
    }
  }
  std::cout << "witness satisfies formula (" << df.formula.num_vars
            << " variables, " << df.formula.clause_count() << " clauses)\n";
  return kOk;
}

int cmd_plan(int l) {
  namespace crt = factsat::crt;
  if (l < 2) throw UsageError("--l must be at least 2");
  crt::CrtPlan p = crt::has_preset(l) ? crt::preset_plan(l) : crt::plan(l);
  std::cout << crt::format_plan(p) << "\n";
  std::cout << "lcm bits=" << factsat::bit_length(p.lcm) << " (need >= "
            << 2 * l << ")\n";
  auto bad = crt::validate_plan(p);
  if (bad.empty()) {
    std::cout << "plan valid\n";
    return kOk;
  }
  for (const auto& m : bad) std::cout << "violation: " << m << "\n";
  return kVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"factoring-based SAT instance generator"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  GenerateConfig gcfg;
  CLI::App* gen = app.add_subcommand(
      "generate", "emit a formula (and optionally its witness)");
  gen->add_option("--l", gcfg.l, "factor bit length")->required();
  gen->add_option("--mode", gcfg.mode, "crt or naive")
      ->check(CLI::IsMember({"crt", "naive"}));
  gen->add_option("--seed", gcfg.seed, "instance seed (default 1)");
  gen->add_option("--format", gcfg.format, "dimacs or ext")
      ->check(CLI::IsMember({"dimacs", "ext"}));
  gen->add_flag("--negate", gcfg.negate,
                "block the factorization, making the instance unsatisfiable");
  gen->add_flag("--witness", gcfg.witness,
                "also write the satisfying assignment to <out>.witness");
  gen->add_option("--x", gcfg.x_hex, "target product override, hex");
  gen->add_option("--plan", gcfg.plan_text,
                  "parameter override: 'l=<l> e0=<e0> e=<e1>,<e2>,...'");
  gen->add_option("--out", gcfg.out_path,
                  "output path (default: FACTSAT_OUTPUT_DIR or .)");

  std::vector<int> report_ls;
  CLI::App* rep = app.add_subcommand(
      "report", "print the formula-size table for the preset widths");
  rep->add_option("--l", report_ls, "widths to include (default: all presets)");

  std::string vf, vw;
  CLI::App* ver =
      app.add_subcommand("verify", "check a witness against a formula file");
  ver->add_option("formula", vf, "formula file (dimacs or ext)")->required();
  ver->add_option("witness", vw, "witness file")->required();

  int plan_l = 0;
  CLI::App* pl = app.add_subcommand("plan", "print the parameter row for l");
  pl->add_option("--l", plan_l, "factor bit length")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (gen->parsed()) return cmd_generate(gcfg);
    if (rep->parsed()) return cmd_report(report_ls);
    if (ver->parsed()) return cmd_verify(vf, vw);
    if (pl->parsed()) return cmd_plan(plan_l);
    return kUsage;
  } catch (const factsat::cnf::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kIo;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
