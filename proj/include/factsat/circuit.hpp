#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace factsat {

// Wire ids are dense: inputs 0..n-1, then the two constant wires
// (false = n, true = n+1), then one id per gate in emission order.
// This numbering is load-bearing: CNF variable numbering is derived from it.
using Wire = std::uint32_t;

// A gate is a 2- or 3-input truth table. Row index of the table is
// in[0] + 2*in[1] (+ 4*in[2]); bit r of `table` is the output on row r.
// The same packing is used by the textual formula formats.
struct Gate {
  std::array<Wire, 3> in{0, 0, 0};
  std::uint8_t arity = 0;
  std::uint8_t table = 0;
};

struct SizeReport {
  std::int64_t g3 = 0;  // fan-in-3 gates
  std::int64_t g2 = 0;  // fan-in-2 gates
  std::int64_t total() const { return g3 + g2; }
  SizeReport& operator+=(const SizeReport& o) {
    g3 += o.g3;
    g2 += o.g2;
    return *this;
  }
};

// Immutable after construction; evaluation never mutates.
struct Circuit {
  std::uint32_t num_inputs = 0;
  std::vector<Gate> gates;
  std::vector<Wire> outputs;

  Wire false_wire() const { return num_inputs; }
  Wire true_wire() const { return num_inputs + 1; }
  Wire gate_wire(std::size_t j) const {
    return num_inputs + 2 + static_cast<Wire>(j);
  }
  std::uint32_t wire_count() const {
    return num_inputs + 2 + static_cast<std::uint32_t>(gates.size());
  }
};

// Structural checks: arities in {2,3}, tables within range, every gate input
// defined before use, outputs in range. Messages name the offending gate index.
std::vector<std::string> validate(const Circuit& c);

// Full forward evaluation. `trace` holds one value per wire.
struct EvalResult {
  std::vector<std::uint8_t> outputs;
  std::vector<std::uint8_t> trace;
};
EvalResult eval(const Circuit& c, std::span<const std::uint8_t> inputs);

SizeReport size(const Circuit& c);

// Common tables (row index = first input + 2*second + 4*third).
inline constexpr std::uint8_t kAnd2 = 0x8;
inline constexpr std::uint8_t kOr2 = 0xe;
inline constexpr std::uint8_t kXor2 = 0x6;
inline constexpr std::uint8_t kXor3 = 0x96;   // full-adder sum
inline constexpr std::uint8_t kMaj3 = 0xe8;   // full-adder carry
inline constexpr std::uint8_t kOr3 = 0xfe;
inline constexpr std::uint8_t kBorrow3 = 0xd4;  // borrow of a - b - bin

template <class F>
std::uint8_t make_table2(F f) {
  std::uint8_t t = 0;
  for (int r = 0; r < 4; ++r)
    if (f((r >> 0) & 1, (r >> 1) & 1)) t |= std::uint8_t(1u << r);
  return t;
}

template <class F>
std::uint8_t make_table3(F f) {
  std::uint8_t t = 0;
  for (int r = 0; r < 8; ++r)
    if (f((r >> 0) & 1, (r >> 1) & 1, (r >> 2) & 1)) t |= std::uint8_t(1u << r);
  return t;
}

// Appends gates while folding degenerate ones: a gate whose function (after
// substituting constant wires) is itself constant, or is exactly one of its
// inputs, produces no gate and returns the existing wire instead. Anything
// else is emitted verbatim at the requested arity, constant inputs included,
// so block-level gate counts stay predictable.
class CircuitBuilder {
 public:
  explicit CircuitBuilder(std::uint32_t num_inputs);

  Wire input(std::uint32_t i) const;
  std::vector<Wire> input_range(std::uint32_t offset, std::uint32_t count) const;
  Wire constant(bool value) const;
  bool is_const(Wire w, bool& value) const;

  Wire add_gate2(std::uint8_t table, Wire a, Wire b);
  Wire add_gate3(std::uint8_t table, Wire a, Wire b, Wire c);

  void add_output(Wire w);
  const Circuit& circuit() const { return c_; }
  Circuit take() { return std::move(c_); }

 private:
  Wire add_gate(std::uint8_t arity, std::uint8_t table,
                std::array<Wire, 3> ins);
  Circuit c_;
};

}  // namespace factsat
