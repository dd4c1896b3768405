#pragma once

#include "factsat/bigint.hpp"
#include "factsat/circuit.hpp"
#include "factsat/crt.hpp"

#include <optional>

namespace factsat::reducer {

enum class Mode { kCrt, kNaive };

// A circuit over 2l inputs (u bits 0..l-1, then v bits, least significant
// first) whose single output is 1 exactly when u * v = x.
struct Reduction {
  Circuit circuit;
  Mode mode = Mode::kCrt;
  std::optional<crt::CrtPlan> plan;  // engaged in CRT mode
  BigInt x;
  int l = 0;
  // Gates spent on two-representative comparators for zero residues
  // mod 2^e - 1, beyond the single-chain comparator cost.
  std::int64_t alias_extra_g2 = 0;
};

// Residue-system tester: dual residues of u and v per exponent, modular
// multipliers, low power-of-two product, one comparator per modulus against
// the residues of x, all conjoined. Requires a validating plan and
// 2^(2l-2) <= x < 2^(2l).
Reduction build_crt_test_circuit(const BigInt& x, const crt::CrtPlan& plan);

// Schoolbook 2l-bit product compared against x. Gate counts are exact:
// 2(l-1)l fan-in-3 and l^2 + 2l - 1 fan-in-2. Requires l >= 2, 0 <= x < 2^(2l).
Reduction build_naive_test_circuit(const BigInt& x, int l);

struct CrtEstimate {
  std::int64_t variables = 0;        // Tseitin variables, upper bound
  std::int64_t ext_constraints = 0;  // extended-form lines, upper bound
  std::int64_t cnf_clauses = 0;      // 4-CNF clauses, upper bound
};
// Closed forms over the plan parameters (l'_i = l - l mod e_i):
//   variables   sum(6e^2+19e+2l') + 3e0^2/2 - e0/2 + 4kl + k + 2l - 2
//   cnf clauses sum(40e^2+88e+8l') + 10e0^2 - 6e0 + 32kl + 8k - 8
CrtEstimate estimate_crt_size(const crt::CrtPlan& plan);

struct NaiveEstimate {
  std::int64_t variables = 0;    // exact: 3l^2 + 2l - 1
  std::int64_t cnf_clauses = 0;  // upper bound: 20l^2 - 8l - 4
};
NaiveEstimate estimate_naive_size(int l);

// Gate budget the assembled CRT circuit must fit in (alias surcharge not
// included): g3 <= sum(4e^2+3e) + e0^2 - e0 + 4kl + k,
// g2 <= sum(2e^2+16e+2l') + e0(e0+1)/2 - 2.
SizeReport crt_gate_bound(const crt::CrtPlan& plan);

}  // namespace factsat::reducer
