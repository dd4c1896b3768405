#pragma once

#include "factsat/circuit.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace factsat::cnf {

// One gate-defining constraint: variable `var` equals the truth table applied
// to the input literals (sign = negation). Row index is lit0 + 2*lit1 +
// 4*lit2 over the literal values. Together with `var`, at most 4 variables.
struct Constraint {
  std::uint32_t var = 0;
  std::uint8_t table = 0;
  std::vector<std::int32_t> inputs;  // 1..3 literals
};

// Extended conjunctive form: variables 1..n are circuit inputs in order,
// n+1..n+m the gates in emission order; one constraint per gate plus the
// assertion that `asserted_var` is true.
struct ExtendedFormula {
  std::uint32_t num_vars = 0;
  std::vector<Constraint> constraints;
  std::uint32_t asserted_var = 0;
};

// Clauses in a flat pool. Conversion output keeps every clause at <= 4
// literals; appended blocking clauses may be wider.
struct CnfFormula {
  std::uint32_t num_vars = 0;

  std::size_t clause_count() const { return starts_.size() - 1; }
  std::span<const std::int32_t> clause(std::size_t i) const {
    return std::span<const std::int32_t>(pool_.data() + starts_[i],
                                         starts_[i + 1] - starts_[i]);
  }
  void add_clause(std::span<const std::int32_t> lits) {
    pool_.insert(pool_.end(), lits.begin(), lits.end());
    starts_.push_back(std::uint32_t(pool_.size()));
  }
  bool operator==(const CnfFormula&) const = default;

 private:
  std::vector<std::int32_t> pool_;
  std::vector<std::uint32_t> starts_{0};
};

struct Witness {
  std::vector<std::uint8_t> assignment;  // index i holds variable i+1
};

// Ordered key=value comment block; order is preserved on write so emitted
// files are byte-reproducible.
struct Metadata {
  std::vector<std::pair<std::string, std::string>> entries;
  void set(const std::string& key, const std::string& value);
  const std::string* find(const std::string& key) const;
  bool operator==(const Metadata&) const = default;
};

struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_no, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line_no) + ": " + msg),
        line(line_no) {}
};

// Gate simulation constraints for a single-output circuit. Constant wires do
// not get variables: they are substituted into the gate tables, so each
// constraint ranges over the gate's live inputs only.
ExtendedFormula tseitin_extended(const Circuit& c);

// One clause per falsifying assignment of each constraint, after dropping
// inputs the constraint does not actually depend on; plus the output unit
// clause. At most 4 literals per clause, at most 4 per fan-in-2 constraint,
// 8 per fan-in-3, giving the 4*s1 + 8*s2 + 1 total law.
CnfFormula to_4cnf(const ExtendedFormula& f);

// Assignment covers variables 1..num_vars (index shifted by one).
bool eval_formula(const ExtendedFormula& f,
                  std::span<const std::uint8_t> assignment);
bool eval_formula(const CnfFormula& f,
                  std::span<const std::uint8_t> assignment);

// DIMACS CNF with `c key=value` comments. Round-trips byte-exactly.
void write_dimacs(std::ostream& os, const CnfFormula& f, const Metadata& meta);
struct DimacsFile {
  CnfFormula formula;
  Metadata metadata;
};
DimacsFile read_dimacs(std::istream& is);  // throws ParseError

// Extended form as text: `p ext <vars> <constraints>`, one
// `g <var> t <table-hex> i <lit>...` line per constraint, then `a <var>`.
void write_extended(std::ostream& os, const ExtendedFormula& f);
ExtendedFormula read_extended(std::istream& is);  // throws ParseError

}  // namespace factsat::cnf
