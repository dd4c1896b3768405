#include "factsat/blocks.hpp"

#include <deque>
#include <stdexcept>

namespace factsat::blocks {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

bool is_false_wire(const CircuitBuilder& b, Wire w) {
  bool v;
  return b.is_const(w, v) && !v;
}

// Adds one digit into a running digit sum. Positions whose digit bit is the
// constant 0 (zero padding) degrade to fan-in-2 increment cells, so a short
// or all-zero digit never costs full adder cells.
SumOut chain_add(CircuitBuilder& b, std::span<const Wire> acc,
                 std::span<const Wire> digit, Wire carry_in) {
  SumOut r;
  Wire c = carry_in;
  for (std::size_t j = 0; j < acc.size(); ++j) {
    if (is_false_wire(b, digit[j])) {
      r.bits.push_back(b.add_gate2(kXor2, acc[j], c));
      c = b.add_gate2(kAnd2, acc[j], c);
    } else {
      r.bits.push_back(b.add_gate3(kXor3, acc[j], digit[j], c));
      c = b.add_gate3(kMaj3, acc[j], digit[j], c);
    }
  }
  r.carry = c;
  return r;
}

std::vector<Wire> pick(std::span<const Wire> w, std::size_t from,
                       std::size_t count) {
  return std::vector<Wire>(w.begin() + from, w.begin() + from + count);
}

}  // namespace

SumOut append_inc(CircuitBuilder& b, std::span<const Wire> u, Wire carry_in,
                  bool want_carry_out) {
  require(!u.empty(), "inc: empty operand");
  SumOut r;
  Wire c = carry_in;
  for (std::size_t j = 0; j < u.size(); ++j) {
    r.bits.push_back(b.add_gate2(kXor2, u[j], c));
    if (j + 1 < u.size() || want_carry_out) c = b.add_gate2(kAnd2, u[j], c);
  }
  r.carry = c;
  return r;
}

SumOut append_add(CircuitBuilder& b, std::span<const Wire> u,
                  std::span<const Wire> v, Wire carry_in,
                  bool want_carry_out) {
  require(!u.empty() && u.size() == v.size(), "add: operand width mismatch");
  SumOut r;
  Wire c = carry_in;
  for (std::size_t j = 0; j < u.size(); ++j) {
    r.bits.push_back(b.add_gate3(kXor3, u[j], v[j], c));
    if (j + 1 < u.size() || want_carry_out)
      c = b.add_gate3(kMaj3, u[j], v[j], c);
  }
  r.carry = c;
  return r;
}

SubOut append_sub(CircuitBuilder& b, std::span<const Wire> u,
                  std::span<const Wire> v, Wire borrow_in) {
  require(!u.empty() && u.size() == v.size(), "sub: operand width mismatch");
  SubOut r;
  Wire c = borrow_in;
  for (std::size_t j = 0; j < u.size(); ++j) {
    r.bits.push_back(b.add_gate3(kXor3, u[j], v[j], c));
    c = b.add_gate3(kBorrow3, u[j], v[j], c);
  }
  r.borrow = c;
  return r;
}

DualModOut append_dual_mod(CircuitBuilder& b, std::span<const Wire> u, int e) {
  require(e >= 2, "dual_mod: e < 2");
  require(!u.empty(), "dual_mod: empty operand");
  const std::size_t l = u.size();
  const std::size_t ew = std::size_t(e);

  std::size_t h = (l + ew - 1) / ew;
  if (h == 0) h = 1;
  // The interleaved chain below needs the dangling carry to come from the
  // even (+) side; an odd digit count guarantees that, so pad with one
  // all-zero digit when needed (its cells fold to an increment or vanish).
  std::size_t H = (h == 1) ? 1 : (h % 2 == 1 ? h : h + 1);

  auto digit = [&](std::size_t i) {
    std::vector<Wire> d(ew, b.constant(false));
    for (std::size_t j = 0; j < ew; ++j)
      if (i * ew + j < l) d[j] = u[i * ew + j];
    return d;
  };

  if (H == 1) {
    DualModOut out;
    out.mersenne = digit(0);
    out.fermat = out.mersenne;
    out.fermat.push_back(b.constant(false));
    return out;
  }

  // Digit i joins the + side when i is even and the - side when odd; the
  // carry of each addition feeds the next digit's addition on the other side
  // (end-around: dropping 2^e costs +1 toward 2^e-1 and the reinjection on
  // the opposite side cancels it modulo 2^e+1).
  std::vector<Wire> alpha_p = digit(0);
  std::vector<Wire> alpha_m = digit(1);
  Wire carry = b.constant(false);
  for (std::size_t i = 2; i < H; ++i) {
    std::vector<Wire>& alpha = (i % 2 == 0) ? alpha_p : alpha_m;
    std::vector<Wire> d = digit(i);
    SumOut s = chain_add(b, alpha, d, carry);
    alpha = s.bits;
    carry = s.carry;
  }

  DualModOut out;
  // s = (v+ + v- + c) mod 2^e, end-around incremented. The increment cannot
  // overflow: that would need some addition to emit all-ones together with a
  // carry, impossible since the first chain addition has no carry-in.
  SumOut s1 = append_add(b, alpha_p, alpha_m, carry, true);
  out.mersenne = append_inc(b, s1.bits, s1.carry, false).bits;
  // t = (v+ - v- - c) mod 2^e plus the borrow, an exact value in [0, 2^e].
  SubOut d1 = append_sub(b, alpha_p, alpha_m, carry);
  SumOut t1 = append_inc(b, d1.bits, d1.borrow, true);
  out.fermat = t1.bits;
  out.fermat.push_back(t1.carry);
  return out;
}

std::vector<Wire> append_mult_mersenne(CircuitBuilder& b,
                                       std::span<const Wire> u,
                                       std::span<const Wire> v) {
  const std::size_t e = u.size();
  require(e >= 2 && v.size() == e, "mult_mersenne: bad operand widths");
  // Row i is u rotated left by i (2^e = 1 mod 2^e-1), masked by v_i.
  auto row = [&](std::size_t i) {
    std::vector<Wire> r(e);
    for (std::size_t j = 0; j < e; ++j)
      r[j] = b.add_gate2(kAnd2, u[(j + e - i) % e], v[i]);
    return r;
  };
  std::vector<Wire> acc = row(0);
  Wire carry = b.constant(false);
  for (std::size_t i = 1; i < e; ++i) {
    SumOut s = append_add(b, acc, row(i), carry, true);
    acc = s.bits;
    carry = s.carry;
  }
  return append_inc(b, acc, carry, false).bits;
}

std::vector<Wire> append_schoolbook_product(CircuitBuilder& b,
                                            std::span<const Wire> u,
                                            std::span<const Wire> v) {
  const std::size_t n = u.size();
  require(n >= 1 && v.size() == n, "product: bad operand widths");
  auto row = [&](std::size_t i) {
    std::vector<Wire> r(n);
    for (std::size_t j = 0; j < n; ++j) r[j] = b.add_gate2(kAnd2, u[j], v[i]);
    return r;
  };
  std::vector<Wire> out;
  std::vector<Wire> acc = row(0);
  Wire carry = b.constant(false);
  for (std::size_t i = 1; i < n; ++i) {
    out.push_back(acc[0]);
    std::vector<Wire> shifted = pick(acc, 1, n - 1);
    shifted.push_back(carry);
    SumOut s = append_add(b, shifted, row(i), b.constant(false), true);
    acc = s.bits;
    carry = s.carry;
  }
  for (Wire w : acc) out.push_back(w);
  out.push_back(carry);
  return out;
}

std::vector<Wire> append_mult_fermat(CircuitBuilder& b,
                                     std::span<const Wire> u,
                                     std::span<const Wire> v) {
  require(u.size() >= 3 && u.size() == v.size(),
          "mult_fermat: operands must be e+1 wires, e >= 2");
  const std::size_t e = u.size() - 1;
  std::vector<Wire> u1 = pick(u, 0, e), v1 = pick(v, 0, e);
  Wire ae = u[e], be = v[e];

  std::vector<Wire> prod = append_schoolbook_product(b, u1, v1);
  std::vector<Wire> w_low = pick(prod, 0, e), w_high = pick(prod, e, e);

  // u'' = u' if v = 2^e, v'' = v' if u = 2^e. At most one of w_high, u'', v''
  // is nonzero (a set top bit forces the other low half to zero), so their
  // bitwise OR is their sum.
  std::vector<Wire> m(e);
  for (std::size_t j = 0; j < e; ++j) {
    Wire u2 = b.add_gate2(kAnd2, u1[j], be);
    Wire v2 = b.add_gate2(kAnd2, v1[j], ae);
    m[j] = b.add_gate3(kOr3, w_high[j], u2, v2);
  }

  SubOut d = append_sub(b, w_low, m, b.constant(false));
  // The +a_e*b_e correction shares the increment with the end-around borrow;
  // the two are never both 1 (a_e*b_e = 1 forces u' = v' = 0, borrow 0).
  static const std::uint8_t tt =
      make_table3([](int c, int a, int bb) { return c || (a && bb); });
  Wire cin = b.add_gate3(tt, d.borrow, ae, be);
  SumOut r = append_inc(b, d.bits, cin, true);
  std::vector<Wire> out = r.bits;
  out.push_back(r.carry);
  return out;
}

std::vector<Wire> append_mult_low(CircuitBuilder& b, std::span<const Wire> u,
                                  std::span<const Wire> v) {
  const std::size_t e0 = u.size();
  require(e0 >= 1 && v.size() == e0, "mult_low: bad operand widths");
  if (e0 == 1) return {b.add_gate2(kAnd2, u[0], v[0])};

  // Row 0 is masked explicitly; its top AND rides as a fan-in-3 cell, which
  // keeps the plain-gate count at the stage budget (e0-1)e0/2.
  static const std::uint8_t tt_and_pad =
      make_table3([](int a, int bb, int) { return a && bb; });
  static const std::uint8_t tt_bottom_sum =
      make_table3([](int acc, int a, int bb) { return acc ^ (a && bb); });
  static const std::uint8_t tt_bottom_carry =
      make_table3([](int acc, int a, int bb) { return acc && a && bb; });

  std::vector<Wire> acc(e0);
  for (std::size_t j = 0; j + 1 < e0; ++j)
    acc[j] = b.add_gate2(kAnd2, u[j], v[0]);
  acc[e0 - 1] = b.add_gate3(tt_and_pad, u[e0 - 1], v[0], b.constant(false));

  for (std::size_t i = 1; i < e0; ++i) {
    const std::size_t w = e0 - i;
    // Lowest cell of each stage has no carry-in, so the partial-product AND
    // is absorbed into the two fan-in-3 cells.
    Wire sum = b.add_gate3(tt_bottom_sum, acc[i], u[0], v[i]);
    if (w == 1) {
      acc[i] = sum;
      continue;
    }
    Wire carry = b.add_gate3(tt_bottom_carry, acc[i], u[0], v[i]);
    acc[i] = sum;
    for (std::size_t j = 1; j < w; ++j) {
      Wire pp = b.add_gate2(kAnd2, u[j], v[i]);
      if (j + 1 < w) {
        Wire ns = b.add_gate3(kXor3, acc[i + j], pp, carry);
        carry = b.add_gate3(kMaj3, acc[i + j], pp, carry);
        acc[i + j] = ns;
      } else {
        // Top of the stage: the carry out of bit e0-1 is truncation noise.
        acc[i + j] = b.add_gate3(kXor3, acc[i + j], pp, carry);
      }
    }
  }
  return acc;
}

namespace {

Lit eq_chain(CircuitBuilder& b, std::span<const Wire> bits,
             const BigInt& value) {
  const std::size_t w = bits.size();
  if (w == 1) return Lit{bits[0], !bit_of(value, 0)};
  bool x0 = bit_of(value, 0), x1 = bit_of(value, 1);
  Wire g = b.add_gate2(
      make_table2([&](int a, int bb) { return a == int(x0) && bb == int(x1); }),
      bits[0], bits[1]);
  for (std::size_t j = 2; j < w; ++j) {
    bool xj = bit_of(value, unsigned(j));
    g = b.add_gate2(
        make_table2([&](int acc, int bb) { return acc && bb == int(xj); }), g,
        bits[j]);
  }
  return Lit{g, false};
}

}  // namespace

Lit append_eq_const(CircuitBuilder& b, std::span<const Wire> bits,
                    const BigInt& value, const std::optional<BigInt>& alias) {
  require(!bits.empty(), "eq_const: empty operand");
  require(value >= 0 && bit_length(value) <= bits.size(),
          "eq_const: constant wider than operand");
  Lit a = eq_chain(b, bits, value);
  if (!alias || *alias == value) return a;
  require(*alias >= 0 && bit_length(*alias) <= bits.size(),
          "eq_const: alias wider than operand");
  Lit c = eq_chain(b, bits, *alias);
  Wire g = b.add_gate2(make_table2([&](int x, int y) {
                         return (x ^ int(a.negated)) || (y ^ int(c.negated));
                       }),
                       a.wire, c.wire);
  return Lit{g, false};
}

Lit append_conjunction(CircuitBuilder& b, std::span<const Lit> lits) {
  require(!lits.empty(), "conjunction: no literals");
  std::deque<Lit> q(lits.begin(), lits.end());
  while (q.size() >= 3) {
    Lit x = q[0], y = q[1], z = q[2];
    q.pop_front();
    q.pop_front();
    q.pop_front();
    Wire g = b.add_gate3(make_table3([&](int a, int bb, int c) {
                           return (a ^ int(x.negated)) && (bb ^ int(y.negated)) &&
                                  (c ^ int(z.negated));
                         }),
                         x.wire, y.wire, z.wire);
    q.push_back(Lit{g, false});
  }
  if (q.size() == 2) {
    Lit x = q[0], y = q[1];
    Wire g = b.add_gate2(make_table2([&](int a, int bb) {
                           return (a ^ int(x.negated)) && (bb ^ int(y.negated));
                         }),
                         x.wire, y.wire);
    return Lit{g, false};
  }
  return q[0];
}

namespace {

Wire materialize(CircuitBuilder& b, Lit l) {
  if (!l.negated) return l.wire;
  return b.add_gate2(make_table2([](int a, int) { return !a; }), l.wire,
                     l.wire);
}

}  // namespace

Circuit build_inc(int e) {
  require(e >= 1, "inc: e < 1");
  CircuitBuilder b(std::uint32_t(e) + 1);
  SumOut r = append_inc(b, b.input_range(0, e), b.input(e), true);
  for (Wire w : r.bits) b.add_output(w);
  b.add_output(r.carry);
  return b.take();
}

Circuit build_add(int e) {
  require(e >= 1, "add: e < 1");
  CircuitBuilder b(2 * std::uint32_t(e) + 1);
  SumOut r =
      append_add(b, b.input_range(0, e), b.input_range(e, e), b.input(2 * e),
                 true);
  for (Wire w : r.bits) b.add_output(w);
  b.add_output(r.carry);
  return b.take();
}

Circuit build_sub(int e) {
  require(e >= 1, "sub: e < 1");
  CircuitBuilder b(2 * std::uint32_t(e) + 1);
  SubOut r =
      append_sub(b, b.input_range(0, e), b.input_range(e, e), b.input(2 * e));
  for (Wire w : r.bits) b.add_output(w);
  b.add_output(r.borrow);
  return b.take();
}

Circuit build_dual_mod(int l, int e) {
  require(e >= 2, "dual_mod: e < 2");
  require(l >= e, "dual_mod: l < e");
  CircuitBuilder b{std::uint32_t(l)};
  DualModOut r = append_dual_mod(b, b.input_range(0, l), e);
  for (Wire w : r.mersenne) b.add_output(w);
  for (Wire w : r.fermat) b.add_output(w);
  return b.take();
}

Circuit build_mult_mersenne(int e) {
  require(e >= 2, "mult_mersenne: e < 2");
  CircuitBuilder b(2 * std::uint32_t(e));
  for (Wire w : append_mult_mersenne(b, b.input_range(0, e),
                                     b.input_range(e, e)))
    b.add_output(w);
  return b.take();
}

Circuit build_mult_fermat(int e) {
  require(e >= 2, "mult_fermat: e < 2");
  CircuitBuilder b(2 * std::uint32_t(e) + 2);
  for (Wire w : append_mult_fermat(b, b.input_range(0, e + 1),
                                   b.input_range(e + 1, e + 1)))
    b.add_output(w);
  return b.take();
}

Circuit build_mult_low(int e0) {
  require(e0 >= 1, "mult_low: e0 < 1");
  CircuitBuilder b(2 * std::uint32_t(e0));
  for (Wire w : append_mult_low(b, b.input_range(0, e0), b.input_range(e0, e0)))
    b.add_output(w);
  return b.take();
}

Circuit build_eq_const(int width, const BigInt& value,
                       const std::optional<BigInt>& alias) {
  require(width >= 1, "eq_const: width < 1");
  CircuitBuilder b{std::uint32_t(width)};
  Lit l = append_eq_const(b, b.input_range(0, width), value, alias);
  b.add_output(materialize(b, l));
  return b.take();
}

}  // namespace factsat::blocks
