#pragma once

#include "factsat/bigint.hpp"
#include "factsat/circuit.hpp"

#include <optional>

namespace factsat::blocks {

// A wire with an optional negation, used where a comparator result's polarity
// can be folded into the consuming gate instead of costing a NOT gate.
struct Lit {
  Wire wire = 0;
  bool negated = false;
};

struct SumOut {
  std::vector<Wire> bits;
  Wire carry = 0;  // valid only if requested
};

struct SubOut {
  std::vector<Wire> bits;
  Wire borrow = 0;  // 1 iff u - v - borrow_in < 0
};

struct DualModOut {
  std::vector<Wire> mersenne;  // e bits, u mod (2^e - 1), zero class may read as all-ones
  std::vector<Wire> fermat;    // e+1 bits, u mod (2^e + 1), exact
};

// Ripple increment: u + carry_in. Fan-in-2 cells, 2 per bit; the top carry
// cell is omitted when the caller does not consume it.
SumOut append_inc(CircuitBuilder& b, std::span<const Wire> u, Wire carry_in,
                  bool want_carry_out = true);

// Ripple adder u + v + carry_in, one sum and one carry fan-in-3 cell per bit
// (bit 0 included, with the carry-in wire as third input).
SumOut append_add(CircuitBuilder& b, std::span<const Wire> u,
                  std::span<const Wire> v, Wire carry_in,
                  bool want_carry_out = true);

// Ripple subtractor u - v - borrow_in, same cell discipline as append_add.
SubOut append_sub(CircuitBuilder& b, std::span<const Wire> u,
                  std::span<const Wire> v, Wire borrow_in);

// Residues of an l-bit operand modulo 2^e - 1 and 2^e + 1 simultaneously,
// via e-bit digit folding with interleaved end-around carries.
DualModOut append_dual_mod(CircuitBuilder& b, std::span<const Wire> u, int e);

// Product modulo 2^e - 1 from e rotated-and-masked partial products.
// Operands and result are e bits; the zero residue class may surface as
// either 0 or all-ones on both operands and result.
std::vector<Wire> append_mult_mersenne(CircuitBuilder& b,
                                       std::span<const Wire> u,
                                       std::span<const Wire> v);

// Product modulo 2^e + 1. Operands and result are e+1 bits with values in
// [0, 2^e]; behavior outside that range is unspecified.
std::vector<Wire> append_mult_fermat(CircuitBuilder& b,
                                     std::span<const Wire> u,
                                     std::span<const Wire> v);

// Product modulo 2^e0 (truncated schoolbook).
std::vector<Wire> append_mult_low(CircuitBuilder& b, std::span<const Wire> u,
                                  std::span<const Wire> v);

// Full 2n-bit schoolbook product of two n-bit operands.
std::vector<Wire> append_schoolbook_product(CircuitBuilder& b,
                                            std::span<const Wire> u,
                                            std::span<const Wire> v);

// Flag literal that is true iff the bits spell `value`, or `alias` when one
// is supplied (used for the zero residue class mod 2^e - 1, whose value has
// the two representatives 0 and all-ones). Plain form: exactly w-1 fan-in-2
// gates; alias form: at most 2w-1.
Lit append_eq_const(CircuitBuilder& b, std::span<const Wire> bits,
                    const BigInt& value,
                    const std::optional<BigInt>& alias = std::nullopt);

// AND of all literals, polarity folded into the gate tables. Fan-in-3 tree;
// a leftover pair costs one fan-in-2 gate.
Lit append_conjunction(CircuitBuilder& b, std::span<const Lit> lits);

// Standalone single-block circuits (inputs in operand order, then carries).
Circuit build_inc(int e);            // in: u(e), cin    out: r(e), cout
Circuit build_add(int e);            // in: u(e), v(e), cin  out: s(e), cout
Circuit build_sub(int e);            // in: u(e), v(e), bin  out: d(e), c
Circuit build_dual_mod(int l, int e);  // in: u(l)  out: s(e), t(e+1)
Circuit build_mult_mersenne(int e);  // in: u(e), v(e)  out: w(e)
Circuit build_mult_fermat(int e);    // in: u(e+1), v(e+1)  out: w(e+1)
Circuit build_mult_low(int e0);      // in: u(e0), v(e0)  out: w(e0)
Circuit build_eq_const(int width, const BigInt& value,
                       const std::optional<BigInt>& alias = std::nullopt);

}  // namespace factsat::blocks
