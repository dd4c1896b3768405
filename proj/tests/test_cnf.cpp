#include "doctest.h"

#include "factsat/circuit.hpp"
#include "factsat/cnf.hpp"

#include <random>
#include <sstream>

using namespace factsat;
using namespace factsat::cnf;

namespace {

std::vector<std::uint8_t> unpack(std::uint32_t v, std::uint32_t n) {
  std::vector<std::uint8_t> a(n);
  for (std::uint32_t i = 0; i < n; ++i) a[i] = (v >> i) & 1;
  return a;
}

// Exhaustive equality of the two formula readings.
void check_equisatisfiable(const ExtendedFormula& e, const CnfFormula& f) {
  REQUIRE(e.num_vars == f.num_vars);
  REQUIRE(e.num_vars <= 16);
  for (std::uint32_t v = 0; v < (1u << e.num_vars); ++v) {
    auto a = unpack(v, e.num_vars);
    CHECK(eval_formula(e, a) == eval_formula(f, a));
  }
}

}  // namespace

TEST_CASE("tseitin on a single AND gate") {
  CircuitBuilder b(2);
  b.add_output(b.add_gate2(kAnd2, b.input(0), b.input(1)));
  Circuit c = b.take();
  ExtendedFormula e = tseitin_extended(c);
  CHECK(e.num_vars == 3);
  REQUIRE(e.constraints.size() == 1);
  CHECK(e.constraints[0].var == 3);
  CHECK(e.constraints[0].table == kAnd2);
  CHECK(e.constraints[0].inputs == std::vector<std::int32_t>{1, 2});
  CHECK(e.asserted_var == 3);

  CnfFormula f = to_4cnf(e);
  CHECK(f.num_vars == 3);
  CHECK(f.clause_count() == 5);  // 4 falsifying rows + output unit
  // Only (a=1, b=1, g=1) satisfies.
  for (std::uint32_t v = 0; v < 8; ++v) {
    auto a = unpack(v, 3);
    CHECK(eval_formula(f, a) == (v == 7));
    CHECK(eval_formula(e, a) == (v == 7));
  }
}

TEST_CASE("variable numbering is inputs then gates in emission order") {
  CircuitBuilder b(2);
  Wire g0 = b.add_gate2(kOr2, b.input(0), b.input(1));
  Wire g1 = b.add_gate2(kXor2, g0, b.input(1));
  b.add_output(g1);
  ExtendedFormula e = tseitin_extended(b.take());
  CHECK(e.num_vars == 4);
  REQUIRE(e.constraints.size() == 2);
  CHECK(e.constraints[0].var == 3);
  CHECK(e.constraints[1].var == 4);
  CHECK(e.constraints[1].inputs == std::vector<std::int32_t>{3, 2});
  CHECK(e.asserted_var == 4);
}

TEST_CASE("constant wires are substituted into the gate table") {
  CircuitBuilder b(1);
  // NOT via xor with constant true: restricted table has one live input.
  b.add_output(b.add_gate2(kXor2, b.input(0), b.constant(true)));
  ExtendedFormula e = tseitin_extended(b.take());
  CHECK(e.num_vars == 2);
  REQUIRE(e.constraints.size() == 1);
  CHECK(e.constraints[0].inputs == std::vector<std::int32_t>{1});
  CHECK(e.constraints[0].table == 0x1);
  for (std::uint32_t v = 0; v < 4; ++v)
    CHECK(eval_formula(e, unpack(v, 2)) == (v == 2));  // g=1, a=0
}

TEST_CASE("tseitin rejects degenerate circuits") {
  SUBCASE("constant output wire") {
    Circuit c;
    c.num_inputs = 1;
    c.outputs.push_back(c.true_wire());
    CHECK_THROWS(tseitin_extended(c));
  }
  SUBCASE("no output") {
    Circuit c;
    c.num_inputs = 1;
    CHECK_THROWS(tseitin_extended(c));
  }
  SUBCASE("two outputs") {
    CircuitBuilder b(2);
    Wire g = b.add_gate2(kAnd2, b.input(0), b.input(1));
    b.add_output(g);
    b.add_output(g);
    CHECK_THROWS(tseitin_extended(b.take()));
  }
  SUBCASE("gate with only constant inputs") {
    Circuit c;
    c.num_inputs = 1;
    c.gates.push_back(Gate{{c.false_wire(), c.true_wire(), 0}, 2, kOr2});
    c.outputs.push_back(c.gate_wire(0));
    CHECK_THROWS(tseitin_extended(c));
  }
}

TEST_CASE("to_4cnf clause shapes for the basic tables") {
  auto count_for = [](std::uint8_t arity, std::uint8_t table) {
    CircuitBuilder b(3);
    Wire g = arity == 2
                 ? b.add_gate2(table, b.input(0), b.input(1))
                 : b.add_gate3(table, b.input(0), b.input(1), b.input(2));
    b.add_output(g);
    ExtendedFormula e = tseitin_extended(b.take());
    return to_4cnf(e).clause_count();
  };
  CHECK(count_for(2, kAnd2) == 4 + 1);
  CHECK(count_for(2, kXor2) == 4 + 1);
  CHECK(count_for(3, kMaj3) == 8 + 1);
  CHECK(count_for(3, kXor3) == 8 + 1);
}

TEST_CASE("to_4cnf drops inessential inputs") {
  // Hand-built constraints exercise reductions the builder would fold away.
  SUBCASE("constant-true function becomes a unit clause") {
    ExtendedFormula e;
    e.num_vars = 2;
    e.constraints.push_back(Constraint{1, 0xf, {2, 2}});
    e.asserted_var = 2;
    CnfFormula f = to_4cnf(e);
    CHECK(f.clause_count() == 2);  // unit (1), unit (2)
    CHECK(f.clause(0).size() == 1);
    CHECK(f.clause(0)[0] == 1);
    check_equisatisfiable(e, f);
  }
  SUBCASE("duplicate literals collapse to a projection") {
    ExtendedFormula e;
    e.num_vars = 2;
    e.constraints.push_back(Constraint{2, kAnd2, {1, 1}});
    e.asserted_var = 2;
    CnfFormula f = to_4cnf(e);
    CHECK(f.clause_count() == 3);  // two equivalence clauses + unit
    for (std::size_t i = 0; i + 1 < f.clause_count(); ++i)
      CHECK(f.clause(i).size() == 2);
    check_equisatisfiable(e, f);
  }
  SUBCASE("complementary literals force a constant") {
    ExtendedFormula e;
    e.num_vars = 2;
    e.constraints.push_back(Constraint{2, kAnd2, {1, -1}});
    e.asserted_var = 1;
    CnfFormula f = to_4cnf(e);
    CHECK(f.clause_count() == 2);  // unit (-2), unit (1)
    check_equisatisfiable(e, f);
  }
  SUBCASE("negated input literal shifts the table rows") {
    ExtendedFormula e;
    e.num_vars = 3;
    e.constraints.push_back(Constraint{3, kAnd2, {-1, 2}});
    e.asserted_var = 3;
    CnfFormula f = to_4cnf(e);
    for (std::uint32_t v = 0; v < 8; ++v)
      CHECK(eval_formula(f, unpack(v, 3)) == (v == 6));  // a=0, b=1, g=1
  }
}

TEST_CASE("random circuits: conversions agree on every assignment") {
  std::mt19937 rng(4242);
  for (int trial = 0; trial < 60; ++trial) {
    CircuitBuilder b(3);
    std::vector<Wire> avail = {b.input(0), b.input(1), b.input(2),
                               b.constant(false), b.constant(true)};
    Wire last = 0;
    bool have = false;
    for (int g = 0; g < 9; ++g) {
      int arity = 2 + int(rng() % 2);
      std::uint8_t table = std::uint8_t(rng() & (arity == 2 ? 0xf : 0xff));
      Wire w;
      if (arity == 2)
        w = b.add_gate2(table, avail[rng() % avail.size()],
                        avail[rng() % avail.size()]);
      else
        w = b.add_gate3(table, avail[rng() % avail.size()],
                        avail[rng() % avail.size()],
                        avail[rng() % avail.size()]);
      avail.push_back(w);
      bool cv;
      if (!b.is_const(w, cv)) {
        last = w;
        have = true;
      }
    }
    if (!have) continue;
    b.add_output(last);
    Circuit c = b.take();
    ExtendedFormula e = tseitin_extended(c);
    CnfFormula f = to_4cnf(e);

    SizeReport s = size(c);
    CHECK(std::int64_t(f.clause_count()) <= 4 * s.g2 + 8 * s.g3 + 1);
    for (std::size_t i = 0; i < f.clause_count(); ++i)
      CHECK(f.clause(i).size() <= 4);
    CHECK(e.num_vars == c.num_inputs + c.gates.size());
    check_equisatisfiable(e, f);

    // A satisfying assignment must be the trace of its input projection
    // with the output bit set.
    for (std::uint32_t v = 0; v < (1u << e.num_vars); ++v) {
      auto a = unpack(v, e.num_vars);
      auto r = eval(c, std::span<const std::uint8_t>(a.data(), 3));
      bool trace_consistent = true;
      for (std::size_t j = 0; j < c.gates.size(); ++j)
        trace_consistent &= r.trace[c.gate_wire(j)] == a[3 + j];
      bool expect = trace_consistent && r.outputs[0] == 1;
      CHECK(eval_formula(e, a) == expect);
    }
  }
}

TEST_CASE("eval_formula edge cases") {
  CnfFormula f;
  f.num_vars = 0;
  std::vector<std::uint8_t> empty;
  CHECK(eval_formula(f, empty));  // no clauses
  f.num_vars = 1;
  std::vector<std::int32_t> none;
  f.add_clause(none);
  std::vector<std::uint8_t> one = {1};
  CHECK(!eval_formula(f, one));  // empty clause
  CHECK_THROWS(eval_formula(f, empty));  // length mismatch

  ExtendedFormula e;
  e.num_vars = 2;
  e.asserted_var = 1;
  CHECK_THROWS(eval_formula(e, one));  // length mismatch
}

TEST_CASE("dimacs writing round-trips byte for byte") {
  CircuitBuilder b(2);
  b.add_output(b.add_gate2(kOr2, b.input(0), b.input(1)));
  CnfFormula f = to_4cnf(tseitin_extended(b.take()));
  Metadata m;
  m.set("l", "2");
  m.set("x-hex", "f");
  m.set("mode", "crt");
  m.set("seed", "9");
  m.set("generator-version", "0.1.0");

  std::ostringstream os;
  write_dimacs(os, f, m);
  std::string text = os.str();
  CHECK(text.find("c l=2\n") == 0);
  CHECK(text.find("p cnf 3 5\n") != std::string::npos);

  std::istringstream is(text);
  DimacsFile d = read_dimacs(is);
  CHECK(d.formula == f);
  CHECK(d.metadata == m);
  std::ostringstream os2;
  write_dimacs(os2, d.formula, d.metadata);
  CHECK(os2.str() == text);
}

TEST_CASE("metadata preserves insertion order and supports lookup") {
  Metadata m;
  m.set("zeta", "1");
  m.set("alpha", "2");
  m.set("zeta", "3");
  REQUIRE(m.entries.size() == 2);
  CHECK(m.entries[0].first == "zeta");
  CHECK(*m.find("zeta") == "3");
  CHECK(m.find("missing") == nullptr);
}

TEST_CASE("dimacs reader rejects malformed input with line numbers") {
  auto expect_error = [](const std::string& text, int line) {
    std::istringstream is(text);
    try {
      read_dimacs(is);
      FAIL_CHECK("no error for: " << text);
    } catch (const ParseError& p) {
      CHECK(p.line == line);
    }
  };
  expect_error("junk\n", 1);
  expect_error("c no equals sign\np cnf 1 0\n", 1);
  expect_error("p cnf x 1\n1 0\n", 1);
  expect_error("p cnf 2 1\nc late comment\n1 0\n", 2);
  expect_error("p cnf 2 1\n3 0\n", 2);          // literal out of range
  expect_error("p cnf 2 1\n1 2\n", 2);          // missing terminator
  expect_error("p cnf 2 1\n1 0 9\n", 2);        // junk after terminator
  expect_error("p cnf 2 2\n1 0\n", 3);          // fewer clauses than header
  expect_error("p cnf 2 1\n1 0\n2 0\n", 3);     // more clauses than header
}

TEST_CASE("extended form round-trips byte for byte") {
  CircuitBuilder b(2);
  Wire g0 = b.add_gate2(kAnd2, b.input(0), b.input(1));
  Wire g1 = b.add_gate3(kXor3, g0, b.input(0), b.constant(true));
  b.add_output(g1);
  ExtendedFormula e = tseitin_extended(b.take());

  std::ostringstream os;
  write_extended(os, e);
  std::string text = os.str();
  CHECK(text.rfind("p ext 4 2", 0) == 0);

  std::istringstream is(text);
  ExtendedFormula r = read_extended(is);
  CHECK(r.num_vars == e.num_vars);
  CHECK(r.asserted_var == e.asserted_var);
  REQUIRE(r.constraints.size() == e.constraints.size());
  for (std::size_t i = 0; i < r.constraints.size(); ++i) {
    CHECK(r.constraints[i].var == e.constraints[i].var);
    CHECK(r.constraints[i].table == e.constraints[i].table);
    CHECK(r.constraints[i].inputs == e.constraints[i].inputs);
  }
  std::ostringstream os2;
  write_extended(os2, r);
  CHECK(os2.str() == text);
}

TEST_CASE("extended reader rejects malformed input") {
  auto expect_error = [](const std::string& text) {
    std::istringstream is(text);
    CHECK_THROWS_AS(read_extended(is), ParseError);
  };
  expect_error("p cnf 2 1\ng 2 t 8 i 1 1\na 2\n");   // wrong header
  expect_error("p ext 2 1\ng 3 t 8 i 1 1\na 2\n");   // var out of range
  expect_error("p ext 2 1\ng 2 t 10 i 1\na 2\n");    // table too wide
  expect_error("p ext 2 1\ng 2 t 1 i\na 2\n");       // no inputs
  expect_error("p ext 2 1\ng 2 t 1 i 1 1 1 1\na 2\n");  // four inputs
  expect_error("p ext 2 1\ng 2 t 8 i 1 1\n");        // missing assertion
  expect_error("p ext 2 1\ng 2 t 8 i 1 1\na 2\na 2\n");  // two assertions
  expect_error("p ext 2 2\ng 2 t 8 i 1 1\na 2\n");   // count mismatch
  expect_error("p ext 2 1\ng 2 t 8 i 1 3\na 2\n");   // literal out of range
}
