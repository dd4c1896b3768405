#include "factsat/reducer.hpp"

#include "factsat/blocks.hpp"

#include <stdexcept>

namespace factsat::reducer {

namespace {

std::vector<Wire> padded_low_bits(CircuitBuilder& b,
                                  std::span<const Wire> bits, int width) {
  std::vector<Wire> out;
  for (int j = 0; j < width; ++j)
    out.push_back(j < int(bits.size()) ? bits[std::size_t(j)]
                                       : b.constant(false));
  return out;
}

}  // namespace

Reduction build_crt_test_circuit(const BigInt& x, const crt::CrtPlan& plan) {
  auto bad = crt::validate_plan(plan);
  if (!bad.empty())
    throw std::invalid_argument("build_crt_test_circuit: invalid plan: " +
                                bad.front());
  const int l = plan.l;
  if (x < (BigInt(1) << (2 * l - 2)) || x >= (BigInt(1) << (2 * l)))
    throw std::invalid_argument(
        "build_crt_test_circuit: x outside [2^(2l-2), 2^(2l))");
  crt::ResidueSet rs = crt::residues(x, plan);

  CircuitBuilder b(2 * std::uint32_t(l));
  std::vector<Wire> u = b.input_range(0, std::uint32_t(l));
  std::vector<Wire> v = b.input_range(std::uint32_t(l), std::uint32_t(l));

  std::vector<blocks::Lit> flags;
  std::int64_t alias_extra = 0;

  // Low branch: u mod 2^e0 and v mod 2^e0 are the low input wires
  // themselves, no computation needed.
  {
    std::vector<Wire> u0 = padded_low_bits(b, u, plan.e0);
    std::vector<Wire> v0 = padded_low_bits(b, v, plan.e0);
    std::vector<Wire> w0 = blocks::append_mult_low(b, u0, v0);
    flags.push_back(blocks::append_eq_const(b, w0, rs.x0));
  }

  for (std::size_t i = 0; i < plan.exponents.size(); ++i) {
    const int e = plan.exponents[i];
    blocks::DualModOut du = blocks::append_dual_mod(b, u, e);
    blocks::DualModOut dv = blocks::append_dual_mod(b, v, e);

    std::vector<Wire> wm =
        blocks::append_mult_mersenne(b, du.mersenne, dv.mersenne);
    if (rs.mersenne[i] == 0) {
      // Zero residue class mod 2^e - 1 has representatives 0 and all-ones.
      flags.push_back(
          blocks::append_eq_const(b, wm, 0, plan.mersenne_moduli[i]));
      alias_extra += e;
    } else {
      flags.push_back(blocks::append_eq_const(b, wm, rs.mersenne[i]));
    }

    std::vector<Wire> wf = blocks::append_mult_fermat(b, du.fermat, dv.fermat);
    flags.push_back(blocks::append_eq_const(b, wf, rs.fermat[i]));
  }

  blocks::Lit out = blocks::append_conjunction(b, flags);
  if (out.negated)
    throw std::logic_error("build_crt_test_circuit: negated output literal");
  b.add_output(out.wire);

  Reduction r;
  r.circuit = b.take();
  r.mode = Mode::kCrt;
  r.plan = plan;
  r.x = x;
  r.l = l;
  r.alias_extra_g2 = alias_extra;
  return r;
}

Reduction build_naive_test_circuit(const BigInt& x, int l) {
  if (l < 2) throw std::invalid_argument("build_naive_test_circuit: l < 2");
  if (x < 0 || x >= (BigInt(1) << (2 * l)))
    throw std::invalid_argument("build_naive_test_circuit: x outside [0, 2^(2l))");

  CircuitBuilder b(2 * std::uint32_t(l));
  std::vector<Wire> u = b.input_range(0, std::uint32_t(l));
  std::vector<Wire> v = b.input_range(std::uint32_t(l), std::uint32_t(l));
  std::vector<Wire> prod = blocks::append_schoolbook_product(b, u, v);
  blocks::Lit flag = blocks::append_eq_const(b, prod, x);
  if (flag.negated)
    throw std::logic_error("build_naive_test_circuit: negated output literal");
  b.add_output(flag.wire);

  Reduction r;
  r.circuit = b.take();
  r.mode = Mode::kNaive;
  r.x = x;
  r.l = l;
  return r;
}

namespace {

std::int64_t l_prime(int l, int e) { return std::int64_t(l) - l % e; }

}  // namespace

CrtEstimate estimate_crt_size(const crt::CrtPlan& plan) {
  const std::int64_t l = plan.l, e0 = plan.e0;
  const std::int64_t k = std::int64_t(plan.exponents.size());
  CrtEstimate est;
  std::int64_t sum_v = 0, sum_c = 0;
  for (int ei : plan.exponents) {
    const std::int64_t e = ei, lp = l_prime(plan.l, ei);
    sum_v += 6 * e * e + 19 * e + 2 * lp;
    sum_c += 40 * e * e + 88 * e + 8 * lp;
  }
  est.variables =
      sum_v + (3 * e0 * e0 - e0) / 2 + 4 * k * l + k + 2 * l - 2;
  est.cnf_clauses = sum_c + 10 * e0 * e0 - 6 * e0 + 32 * k * l + 8 * k - 8;
  est.ext_constraints = est.variables - 2 * l + 1;  // gates plus the assertion
  return est;
}

NaiveEstimate estimate_naive_size(int l) {
  if (l < 1) throw std::invalid_argument("estimate_naive_size: l < 1");
  const std::int64_t ll = l;
  return NaiveEstimate{3 * ll * ll + 2 * ll - 1, 20 * ll * ll - 8 * ll - 4};
}

SizeReport crt_gate_bound(const crt::CrtPlan& plan) {
  const std::int64_t l = plan.l, e0 = plan.e0;
  const std::int64_t k = std::int64_t(plan.exponents.size());
  SizeReport r;
  for (int ei : plan.exponents) {
    const std::int64_t e = ei, lp = l_prime(plan.l, ei);
    r.g3 += 4 * e * e + 3 * e;
    r.g2 += 2 * e * e + 16 * e + 2 * lp;
  }
  r.g3 += e0 * e0 - e0 + 4 * k * l + k;
  r.g2 += e0 * (e0 + 1) / 2 - 2;
  return r;
}

}  // namespace factsat::reducer
