#include "factsat/circuit.hpp"

#include <stdexcept>

namespace factsat {

std::vector<std::string> validate(const Circuit& c) {
  std::vector<std::string> errors;
  for (std::size_t j = 0; j < c.gates.size(); ++j) {
    const Gate& g = c.gates[j];
    if (g.arity != 2 && g.arity != 3) {
      errors.push_back("gate " + std::to_string(j) + ": arity " +
                       std::to_string(int(g.arity)) + " not in {2,3}");
      continue;
    }
    unsigned rows = 1u << g.arity;
    if (rows < 8 && g.table >= (1u << rows))
      errors.push_back("gate " + std::to_string(j) +
                       ": truth table exceeds 2^arity rows");
    for (int k = 0; k < g.arity; ++k)
      if (g.in[k] >= c.gate_wire(j))
        errors.push_back("gate " + std::to_string(j) + ": input wire " +
                         std::to_string(g.in[k]) +
                         " not defined before this gate");
  }
  for (Wire o : c.outputs)
    if (o >= c.wire_count())
      errors.push_back("output wire " + std::to_string(o) + " out of range");
  if (c.outputs.empty()) errors.push_back("circuit has no outputs");
  return errors;
}

EvalResult eval(const Circuit& c, std::span<const std::uint8_t> inputs) {
  if (inputs.size() != c.num_inputs)
    throw std::invalid_argument("eval: expected " +
                                std::to_string(c.num_inputs) + " inputs, got " +
                                std::to_string(inputs.size()));
  EvalResult r;
  r.trace.resize(c.wire_count());
  for (std::uint32_t i = 0; i < c.num_inputs; ++i)
    r.trace[i] = inputs[i] ? 1 : 0;
  r.trace[c.false_wire()] = 0;
  r.trace[c.true_wire()] = 1;
  for (std::size_t j = 0; j < c.gates.size(); ++j) {
    const Gate& g = c.gates[j];
    unsigned row = 0;
    for (int k = 0; k < g.arity; ++k) row |= unsigned(r.trace[g.in[k]]) << k;
    r.trace[c.gate_wire(j)] = (g.table >> row) & 1;
  }
  r.outputs.reserve(c.outputs.size());
  for (Wire o : c.outputs) r.outputs.push_back(r.trace[o]);
  return r;
}

SizeReport size(const Circuit& c) {
  SizeReport s;
  for (const Gate& g : c.gates) (g.arity == 3 ? s.g3 : s.g2)++;
  return s;
}

CircuitBuilder::CircuitBuilder(std::uint32_t num_inputs) {
  c_.num_inputs = num_inputs;
}

Wire CircuitBuilder::input(std::uint32_t i) const {
  if (i >= c_.num_inputs) throw std::out_of_range("input index");
  return i;
}

std::vector<Wire> CircuitBuilder::input_range(std::uint32_t offset,
                                              std::uint32_t count) const {
  std::vector<Wire> ws;
  ws.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) ws.push_back(input(offset + i));
  return ws;
}

Wire CircuitBuilder::constant(bool value) const {
  return value ? c_.true_wire() : c_.false_wire();
}

bool CircuitBuilder::is_const(Wire w, bool& value) const {
  if (w == c_.false_wire()) {
    value = false;
    return true;
  }
  if (w == c_.true_wire()) {
    value = true;
    return true;
  }
  return false;
}

Wire CircuitBuilder::add_gate2(std::uint8_t table, Wire a, Wire b) {
  return add_gate(2, table, {a, b, 0});
}

Wire CircuitBuilder::add_gate3(std::uint8_t table, Wire a, Wire b, Wire c) {
  return add_gate(3, table, {a, b, c});
}

Wire CircuitBuilder::add_gate(std::uint8_t arity, std::uint8_t table,
                              std::array<Wire, 3> ins) {
  for (int k = 0; k < arity; ++k)
    if (ins[k] >= c_.wire_count())
      throw std::invalid_argument("gate input wire not yet defined");

  // Distinct non-constant wires feeding this gate.
  std::array<Wire, 3> live{};
  int nlive = 0;
  for (int k = 0; k < arity; ++k) {
    bool cv;
    if (is_const(ins[k], cv)) continue;
    bool seen = false;
    for (int t = 0; t < nlive; ++t) seen |= (live[t] == ins[k]);
    if (!seen) live[nlive++] = ins[k];
  }

  // Semantic function over the distinct live wires.
  unsigned live_rows = 1u << nlive;
  std::uint8_t fn = 0;
  for (unsigned lr = 0; lr < live_rows; ++lr) {
    unsigned row = 0;
    for (int k = 0; k < arity; ++k) {
      bool cv;
      bool bit;
      if (is_const(ins[k], cv)) {
        bit = cv;
      } else {
        int pos = 0;
        while (live[pos] != ins[k]) ++pos;
        bit = (lr >> pos) & 1;
      }
      row |= unsigned(bit) << k;
    }
    if ((table >> row) & 1) fn |= std::uint8_t(1u << lr);
  }

  if (fn == 0) return constant(false);
  if (fn == (1u << live_rows) - 1) return constant(true);
  for (int p = 0; p < nlive; ++p) {
    std::uint8_t proj = 0;
    for (unsigned lr = 0; lr < live_rows; ++lr)
      if ((lr >> p) & 1) proj |= std::uint8_t(1u << lr);
    if (fn == proj) return live[p];
  }

  c_.gates.push_back(Gate{ins, arity, table});
  return c_.gate_wire(c_.gates.size() - 1);
}

void CircuitBuilder::add_output(Wire w) {
  if (w >= c_.wire_count()) throw std::invalid_argument("output wire undefined");
  c_.outputs.push_back(w);
}

}  // namespace factsat
