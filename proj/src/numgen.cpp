#include "factsat/numgen.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace factsat::numgen {

BigInt Rng::next_bits(int bits) {
  if (bits < 0) throw std::invalid_argument("next_bits: negative width");
  BigInt r = 0;
  for (int got = 0; got < bits; got += 64) {
    r <<= 64;
    r |= BigInt(next_u64());
  }
  r &= (BigInt(1) << bits) - 1;
  return r;
}

BigInt Rng::next_below(const BigInt& n) {
  if (n < 1) throw std::invalid_argument("next_below: empty range");
  if (n == 1) return 0;
  const int k = int(bit_length(n));
  while (true) {
    BigInt r = next_bits(k);
    if (r < n) return r;
  }
}

bool is_probable_prime(const BigInt& n, Rng& rng) {
  if (n < 2) return false;
  if (n < 65536) {
    for (BigInt d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  }
  if (n % 2 == 0) return false;

  BigInt d = n - 1;
  int s = 0;
  while (d % 2 == 0) {
    d >>= 1;
    ++s;
  }
  for (int round = 0; round < 64; ++round) {
    BigInt a = rng.next_below(n - 3) + 2;  // base in [2, n-2]
    BigInt x = boost::multiprecision::powm(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = x * x % n;
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

BigInt gen_prime(int l, Rng& rng) {
  if (l < 2) throw std::invalid_argument("gen_prime: l < 2");
  const BigInt top = BigInt(1) << (l - 1);
  while (true) {
    BigInt cand = top + rng.next_bits(l - 1);
    if (is_probable_prime(cand, rng)) return cand;
  }
}

FactorInstance make_instance(int l, std::uint64_t seed) {
  Rng rng(seed);
  FactorInstance inst;
  inst.l = l;
  inst.seed = seed;
  inst.p = gen_prime(l, rng);
  inst.q = gen_prime(l, rng);
  if (inst.p > inst.q) std::swap(inst.p, inst.q);
  inst.x = inst.p * inst.q;
  return inst;
}

namespace {

cnf::Witness simulate_assignment(const reducer::Reduction& red,
                                 const BigInt& p, const BigInt& q) {
  if (p * q != red.x)
    throw std::invalid_argument("extract_witness: p*q differs from x");
  const int l = red.l;
  if (bit_length(p) > unsigned(l) || bit_length(q) > unsigned(l))
    throw std::invalid_argument("extract_witness: factor wider than l bits");

  std::vector<std::uint8_t> inputs(2 * std::size_t(l));
  for (int j = 0; j < l; ++j) {
    inputs[std::size_t(j)] = bit_of(p, unsigned(j)) ? 1 : 0;
    inputs[std::size_t(l + j)] = bit_of(q, unsigned(j)) ? 1 : 0;
  }
  EvalResult r = eval(red.circuit, inputs);

  cnf::Witness w;
  w.assignment.resize(red.circuit.num_inputs + red.circuit.gates.size());
  for (std::size_t i = 0; i < inputs.size(); ++i) w.assignment[i] = inputs[i];
  for (std::size_t j = 0; j < red.circuit.gates.size(); ++j)
    w.assignment[red.circuit.num_inputs + j] =
        r.trace[red.circuit.gate_wire(j)];
  return w;
}

}  // namespace

cnf::Witness extract_witness(const reducer::Reduction& red,
                             const cnf::ExtendedFormula& f, const BigInt& p,
                             const BigInt& q) {
  cnf::Witness w = simulate_assignment(red, p, q);
  if (w.assignment.size() != f.num_vars)
    throw std::invalid_argument("extract_witness: formula/circuit mismatch");
  if (!cnf::eval_formula(f, w.assignment))
    throw std::logic_error("extract_witness: assignment fails the formula");
  return w;
}

cnf::Witness extract_witness(const reducer::Reduction& red,
                             const cnf::CnfFormula& f, const BigInt& p,
                             const BigInt& q) {
  cnf::Witness w = simulate_assignment(red, p, q);
  if (w.assignment.size() != f.num_vars)
    throw std::invalid_argument("extract_witness: formula/circuit mismatch");
  if (!cnf::eval_formula(f, w.assignment))
    throw std::logic_error("extract_witness: assignment fails the formula");
  return w;
}

cnf::CnfFormula negate_solutions(const cnf::CnfFormula& f,
                                 const reducer::Reduction& red,
                                 const BigInt& p, const BigInt& q) {
  if (p * q != red.x)
    throw std::invalid_argument("negate_solutions: p*q differs from x");
  cnf::CnfFormula out = f;
  const int l = red.l;
  auto block = [&](const BigInt& a, const BigInt& b) {
    std::vector<std::int32_t> cl;
    for (int j = 0; j < l; ++j) {
      std::int32_t var = j + 1;
      cl.push_back(bit_of(a, unsigned(j)) ? -var : var);
    }
    for (int j = 0; j < l; ++j) {
      std::int32_t var = l + j + 1;
      cl.push_back(bit_of(b, unsigned(j)) ? -var : var);
    }
    out.add_clause(cl);
  };
  block(p, q);
  if (p != q) block(q, p);
  return out;
}

std::optional<std::pair<BigInt, BigInt>> brute_force_factor(const BigInt& x) {
  if (x >= (BigInt(1) << 40))
    throw std::invalid_argument("brute_force_factor: x above 2^40 guard");
  if (x < 4) return std::nullopt;
  std::uint64_t n = x.convert_to<std::uint64_t>();
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return std::make_pair(BigInt(d), BigInt(n / d));
  return std::nullopt;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> brute_force_sat_inputs(
    const reducer::Reduction& red) {
  const int l = red.l;
  if (2 * l > 20)
    throw std::invalid_argument("brute_force_sat_inputs: above 20-bit guard");
  const Circuit& c = red.circuit;
  std::vector<std::uint8_t> val(c.wire_count());
  val[c.false_wire()] = 0;
  val[c.true_wire()] = 1;

  std::vector<std::pair<std::uint32_t, std::uint32_t>> accepted;
  const std::uint32_t limit = 1u << l;
  for (std::uint32_t u = 0; u < limit; ++u) {
    for (std::uint32_t v = 0; v < limit; ++v) {
      for (int j = 0; j < l; ++j) {
        val[std::size_t(j)] = (u >> j) & 1u;
        val[std::size_t(l + j)] = (v >> j) & 1u;
      }
      for (std::size_t j = 0; j < c.gates.size(); ++j) {
        const Gate& g = c.gates[j];
        unsigned row = val[g.in[0]] | (val[g.in[1]] << 1);
        if (g.arity == 3) row |= val[g.in[2]] << 2;
        val[c.gate_wire(j)] = (g.table >> row) & 1u;
      }
      if (val[c.outputs[0]]) accepted.emplace_back(u, v);
    }
  }
  return accepted;
}

void write_witness(std::ostream& os, const cnf::Witness& w, const BigInt& x) {
  os << "c witness x=" << to_hex(x) << '\n';
  const std::size_t per_line = 16;
  std::size_t i = 0;
  while (i < w.assignment.size()) {
    os << 'v';
    for (std::size_t k = 0; k < per_line && i < w.assignment.size();
         ++k, ++i) {
      std::int64_t var = std::int64_t(i) + 1;
      os << ' ' << (w.assignment[i] ? var : -var);
    }
    if (i == w.assignment.size()) os << " 0";
    os << '\n';
  }
  if (w.assignment.empty()) os << "v 0\n";
}

WitnessFile read_witness(std::istream& is) {
  WitnessFile wf;
  std::string line;
  int line_no = 0;
  bool have_x = false, terminated = false;
  std::vector<std::int64_t> lits;

  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == 'c') {
      const std::string prefix = "c witness x=";
      if (have_x || line.rfind(prefix, 0) != 0)
        throw cnf::ParseError(line_no, "expected 'c witness x=<hex>'");
      try {
        wf.x = from_hex(line.substr(prefix.size()));
      } catch (const std::exception&) {
        throw cnf::ParseError(line_no, "bad hex value");
      }
      have_x = true;
      continue;
    }
    if (line[0] != 'v') throw cnf::ParseError(line_no, "expected 'v' line");
    if (terminated) throw cnf::ParseError(line_no, "line after final 0");
    std::istringstream ss(line.substr(1));
    std::int64_t v;
    while (ss >> v) {
      if (terminated) throw cnf::ParseError(line_no, "literal after final 0");
      if (v == 0) {
        terminated = true;
        continue;
      }
      lits.push_back(v);
    }
    if (!ss.eof()) throw cnf::ParseError(line_no, "junk in 'v' line");
  }
  if (!have_x) throw cnf::ParseError(line_no, "missing 'c witness x=' line");
  if (!terminated)
    throw cnf::ParseError(line_no, "truncated witness: missing final 0");

  std::size_t max_var = 0;
  for (std::int64_t v : lits) {
    std::int64_t mag = v < 0 ? -v : v;
    max_var = std::max<std::size_t>(max_var, std::size_t(mag));
  }
  wf.witness.assignment.assign(max_var, 0);
  for (std::int64_t v : lits)
    if (v > 0) wf.witness.assignment[std::size_t(v - 1)] = 1;
  return wf;
}

}  // namespace factsat::numgen
