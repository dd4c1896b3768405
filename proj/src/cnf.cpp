#include "factsat/cnf.hpp"

#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

namespace factsat::cnf {

void Metadata::set(const std::string& key, const std::string& value) {
  for (auto& e : entries)
    if (e.first == key) {
      e.second = value;
      return;
    }
  entries.emplace_back(key, value);
}

const std::string* Metadata::find(const std::string& key) const {
  for (const auto& e : entries)
    if (e.first == key) return &e.second;
  return nullptr;
}

namespace {

// Constant wires have no variable (returns 0).
std::uint32_t wire_var(const Circuit& c, Wire w) {
  if (w < c.num_inputs) return w + 1;
  if (w == c.false_wire() || w == c.true_wire()) return 0;
  return w - 1;  // gate j at wire n+2+j becomes variable n+1+j
}

}  // namespace

ExtendedFormula tseitin_extended(const Circuit& c) {
  auto errs = validate(c);
  if (!errs.empty())
    throw std::invalid_argument("tseitin_extended: invalid circuit: " +
                                errs.front());
  if (c.outputs.size() != 1)
    throw std::invalid_argument(
        "tseitin_extended: circuit must have exactly one output");

  ExtendedFormula f;
  f.num_vars = c.num_inputs + std::uint32_t(c.gates.size());
  f.constraints.reserve(c.gates.size());

  for (std::size_t j = 0; j < c.gates.size(); ++j) {
    const Gate& g = c.gates[j];
    Constraint ct;
    ct.var = c.num_inputs + 1 + std::uint32_t(j);

    // Substitute constant inputs into the table; live positions keep their
    // order, so the restricted row index is lit0 + 2*lit1 (+ 4*lit2).
    std::vector<int> live_pos;
    unsigned fixed_row = 0;
    for (int k = 0; k < g.arity; ++k) {
      Wire w = g.in[std::size_t(k)];
      if (w == c.true_wire())
        fixed_row |= 1u << k;
      else if (w != c.false_wire())
        live_pos.push_back(k);
    }
    if (live_pos.empty())
      throw std::invalid_argument(
          "tseitin_extended: gate over constant inputs only");
    std::uint8_t table = 0;
    for (unsigned r = 0; r < (1u << live_pos.size()); ++r) {
      unsigned row = fixed_row;
      for (std::size_t k = 0; k < live_pos.size(); ++k)
        row |= ((r >> k) & 1u) << live_pos[k];
      if ((g.table >> row) & 1u) table |= std::uint8_t(1u << r);
    }
    ct.table = table;
    for (int k : live_pos)
      ct.inputs.push_back(
          std::int32_t(wire_var(c, g.in[std::size_t(k)])));
    f.constraints.push_back(std::move(ct));
  }

  std::uint32_t out_var = wire_var(c, c.outputs[0]);
  if (out_var == 0)
    throw std::invalid_argument("tseitin_extended: constant output wire");
  f.asserted_var = out_var;
  return f;
}

CnfFormula to_4cnf(const ExtendedFormula& f) {
  CnfFormula out;
  out.num_vars = f.num_vars;
  std::vector<std::int32_t> cl;

  for (const Constraint& ct : f.constraints) {
    // Distinct input variables in first-occurrence order.
    std::vector<std::uint32_t> vars;
    struct Ref {
      std::size_t var_idx;
      bool neg;
    };
    std::vector<Ref> refs;
    for (std::int32_t lit : ct.inputs) {
      std::uint32_t v = std::uint32_t(lit < 0 ? -lit : lit);
      std::size_t idx = vars.size();
      for (std::size_t i = 0; i < vars.size(); ++i)
        if (vars[i] == v) {
          idx = i;
          break;
        }
      if (idx == vars.size()) vars.push_back(v);
      refs.push_back(Ref{idx, lit < 0});
    }

    auto value_at = [&](unsigned asg) -> bool {
      unsigned row = 0;
      for (std::size_t k = 0; k < refs.size(); ++k) {
        bool bit = ((asg >> refs[k].var_idx) & 1u) != 0;
        if (refs[k].neg) bit = !bit;
        row |= unsigned(bit) << k;
      }
      return ((ct.table >> row) & 1u) != 0;
    };

    // Drop variables the constraint does not depend on (e.g. a degenerate
    // truth table); this is what turns a constant-true gate into one unit.
    std::vector<std::size_t> ess;
    for (std::size_t vi = 0; vi < vars.size(); ++vi) {
      bool dep = false;
      for (unsigned asg = 0; asg < (1u << vars.size()) && !dep; ++asg)
        if (value_at(asg) != value_at(asg ^ (1u << vi))) dep = true;
      if (dep) ess.push_back(vi);
    }

    // One clause per assignment of the essential inputs: it rules out the
    // single wrong value of the defined variable there.
    for (unsigned easg = 0; easg < (1u << ess.size()); ++easg) {
      unsigned asg = 0;
      for (std::size_t k = 0; k < ess.size(); ++k)
        asg |= ((easg >> k) & 1u) << ess[k];
      bool fv = value_at(asg);
      cl.clear();
      for (std::size_t k = 0; k < ess.size(); ++k) {
        std::int32_t v = std::int32_t(vars[ess[k]]);
        cl.push_back(((easg >> k) & 1u) ? -v : v);
      }
      cl.push_back(fv ? std::int32_t(ct.var) : -std::int32_t(ct.var));
      out.add_clause(cl);
    }
  }

  if (f.asserted_var != 0) {
    cl.assign(1, std::int32_t(f.asserted_var));
    out.add_clause(cl);
  }
  return out;
}

namespace {

bool lit_value(std::int32_t lit, std::span<const std::uint8_t> assignment) {
  std::uint32_t v = std::uint32_t(lit < 0 ? -lit : lit);
  if (v == 0 || v > assignment.size())
    throw std::invalid_argument("eval_formula: literal out of range");
  bool b = assignment[v - 1] != 0;
  return lit < 0 ? !b : b;
}

}  // namespace

bool eval_formula(const ExtendedFormula& f,
                  std::span<const std::uint8_t> assignment) {
  if (assignment.size() != f.num_vars)
    throw std::invalid_argument("eval_formula: assignment length mismatch");
  for (const Constraint& ct : f.constraints) {
    unsigned row = 0;
    for (std::size_t k = 0; k < ct.inputs.size(); ++k)
      row |= unsigned(lit_value(ct.inputs[k], assignment)) << k;
    bool fv = ((ct.table >> row) & 1u) != 0;
    if (ct.var == 0 || ct.var > f.num_vars)
      throw std::invalid_argument("eval_formula: constraint var out of range");
    if ((assignment[ct.var - 1] != 0) != fv) return false;
  }
  if (f.asserted_var != 0 && assignment[f.asserted_var - 1] == 0) return false;
  return true;
}

bool eval_formula(const CnfFormula& f,
                  std::span<const std::uint8_t> assignment) {
  if (assignment.size() != f.num_vars)
    throw std::invalid_argument("eval_formula: assignment length mismatch");
  for (std::size_t i = 0; i < f.clause_count(); ++i) {
    bool sat = false;
    for (std::int32_t lit : f.clause(i))
      if (lit_value(lit, assignment)) {
        sat = true;
        break;
      }
    if (!sat) return false;
  }
  return true;
}

void write_dimacs(std::ostream& os, const CnfFormula& f,
                  const Metadata& meta) {
  for (const auto& [k, v] : meta.entries) os << "c " << k << '=' << v << '\n';
  os << "p cnf " << f.num_vars << ' ' << f.clause_count() << '\n';
  for (std::size_t i = 0; i < f.clause_count(); ++i) {
    for (std::int32_t lit : f.clause(i)) os << lit << ' ';
    os << "0\n";
  }
}

DimacsFile read_dimacs(std::istream& is) {
  DimacsFile df;
  std::string line;
  int line_no = 0;
  bool have_header = false;
  std::uint64_t declared_clauses = 0;
  std::vector<std::int32_t> cl;

  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == 'c') {
      if (have_header) throw ParseError(line_no, "comment after header");
      if (line.size() < 2 || line[1] != ' ')
        throw ParseError(line_no, "malformed comment");
      std::string body = line.substr(2);
      auto eq = body.find('=');
      if (eq == std::string::npos)
        throw ParseError(line_no, "comment is not key=value");
      df.metadata.entries.emplace_back(body.substr(0, eq),
                                       body.substr(eq + 1));
      continue;
    }
    if (line[0] == 'p') {
      if (have_header) throw ParseError(line_no, "duplicate header");
      std::istringstream ss(line);
      std::string p, kind;
      std::int64_t vars = -1, clauses = -1;
      if (!(ss >> p >> kind >> vars >> clauses) || kind != "cnf" ||
          vars < 0 || clauses < 0 || (ss >> p))
        throw ParseError(line_no, "malformed 'p cnf' header");
      df.formula.num_vars = std::uint32_t(vars);
      declared_clauses = std::uint64_t(clauses);
      have_header = true;
      continue;
    }
    if (!have_header)
      throw ParseError(line_no, "clause before 'p cnf' header");
    std::istringstream ss(line);
    cl.clear();
    std::int64_t v;
    bool terminated = false;
    while (ss >> v) {
      if (terminated) throw ParseError(line_no, "literal after clause end");
      if (v == 0) {
        terminated = true;
        continue;
      }
      std::int64_t mag = v < 0 ? -v : v;
      if (mag > df.formula.num_vars)
        throw ParseError(line_no, "literal out of variable range");
      cl.push_back(std::int32_t(v));
    }
    if (!ss.eof()) throw ParseError(line_no, "junk in clause line");
    if (!terminated) throw ParseError(line_no, "clause missing terminating 0");
    df.formula.add_clause(cl);
  }
  if (!have_header) throw ParseError(line_no, "missing 'p cnf' header");
  if (df.formula.clause_count() < declared_clauses)
    throw ParseError(line_no + 1, "fewer clauses than the header declares");
  if (df.formula.clause_count() > declared_clauses)
    throw ParseError(line_no, "more clauses than the header declares");
  return df;
}

void write_extended(std::ostream& os, const ExtendedFormula& f) {
  os << "p ext " << f.num_vars << ' ' << f.constraints.size() << '\n';
  for (const Constraint& ct : f.constraints) {
    os << "g " << ct.var << " t " << std::hex << unsigned(ct.table)
       << std::dec << " i";
    for (std::int32_t lit : ct.inputs) os << ' ' << lit;
    os << '\n';
  }
  os << "a " << f.asserted_var << '\n';
}

ExtendedFormula read_extended(std::istream& is) {
  ExtendedFormula f;
  std::string line;
  int line_no = 0;
  bool have_header = false, have_assert = false;
  std::uint64_t declared = 0;

  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string tag;
    ss >> tag;
    if (!have_header) {
      std::string kind;
      std::int64_t vars = -1, cons = -1;
      if (tag != "p" || !(ss >> kind >> vars >> cons) || kind != "ext" ||
          vars < 0 || cons < 0 || (ss >> kind))
        throw ParseError(line_no, "malformed 'p ext' header");
      f.num_vars = std::uint32_t(vars);
      declared = std::uint64_t(cons);
      have_header = true;
      continue;
    }
    if (tag == "g") {
      if (have_assert) throw ParseError(line_no, "constraint after assertion");
      Constraint ct;
      std::string t_tag, i_tag, table_hex;
      std::int64_t var = 0;
      if (!(ss >> var >> t_tag >> table_hex >> i_tag) || t_tag != "t" ||
          i_tag != "i" || var < 1 || std::uint64_t(var) > f.num_vars)
        throw ParseError(line_no, "malformed constraint line");
      char* end = nullptr;
      unsigned long tv = std::strtoul(table_hex.c_str(), &end, 16);
      if (end == table_hex.c_str() || *end != '\0' || tv > 0xff)
        throw ParseError(line_no, "bad truth table");
      ct.var = std::uint32_t(var);
      ct.table = std::uint8_t(tv);
      std::int64_t lit;
      while (ss >> lit) {
        std::int64_t mag = lit < 0 ? -lit : lit;
        if (mag < 1 || std::uint64_t(mag) > f.num_vars)
          throw ParseError(line_no, "input literal out of range");
        ct.inputs.push_back(std::int32_t(lit));
      }
      if (!ss.eof()) throw ParseError(line_no, "junk in constraint line");
      if (ct.inputs.empty() || ct.inputs.size() > 3)
        throw ParseError(line_no, "constraint needs 1 to 3 input literals");
      if (tv >= (1ul << (1u << ct.inputs.size())))
        throw ParseError(line_no, "truth table wider than input count");
      f.constraints.push_back(std::move(ct));
      continue;
    }
    if (tag == "a") {
      std::int64_t var = 0;
      std::string extra;
      if (have_assert || !(ss >> var) || var < 1 ||
          std::uint64_t(var) > f.num_vars || (ss >> extra))
        throw ParseError(line_no, "malformed assertion line");
      f.asserted_var = std::uint32_t(var);
      have_assert = true;
      continue;
    }
    throw ParseError(line_no, "unrecognized line");
  }
  if (!have_header) throw ParseError(line_no, "missing 'p ext' header");
  if (!have_assert) throw ParseError(line_no, "missing assertion line");
  if (f.constraints.size() != declared)
    throw ParseError(line_no, "constraint count does not match header");
  return f;
}

}  // namespace factsat::cnf
