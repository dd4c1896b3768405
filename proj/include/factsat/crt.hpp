#pragma once

#include "factsat/bigint.hpp"

#include <string>
#include <vector>

namespace factsat::crt {

// Residue system 2^e0, 2^e_i - 1, 2^e_i + 1 for pairwise coprime exponents.
// Derived fields are filled by make_plan; validate_plan recomputes them.
struct CrtPlan {
  int l = 0;    // factor bit width; products live below 2^(2l)
  int e0 = 0;   // power-of-two exponent, >= 1
  std::vector<int> exponents;  // e_1..e_k, pairwise coprime, each >= 2

  BigInt m0;                          // 2^e0
  std::vector<BigInt> mersenne_moduli;  // 2^e_i - 1
  std::vector<BigInt> fermat_moduli;    // 2^e_i + 1
  BigInt lcm;                         // lcm of all 2k+1 moduli
};

struct ResidueSet {
  BigInt x0;                     // x mod 2^e0
  std::vector<BigInt> mersenne;  // x mod (2^e_i - 1)
  std::vector<BigInt> fermat;    // x mod (2^e_i + 1)
};

// Fills the derived fields from (l, e0, exponents). No validity checks beyond
// basic range sanity; run validate_plan for the full battery.
CrtPlan make_plan(int l, int e0, std::vector<int> exponents);

// Fixed parameter rows for the supported widths 30,40,50,60,70,128,256.
bool has_preset(int l);
CrtPlan preset_plan(int l);

// Greedy plan for any l >= 2: accumulate the smallest pairwise-coprime
// exponents >= 2 until 2*sum(e) - k*log2(3) reaches 2l, then pick the
// smallest e0 >= 1 whose exact lcm reaches 2^(2l). The log measure is
// advisory only; the exact lcm test is what decides.
CrtPlan plan(int l);

// Empty result means the plan is sound: exponent ranges, pairwise coprime
// exponents, derived moduli and lcm consistent, lcm >= 2^(2l), and every
// modulus pair has gcd 1 or 3 (gcd with 2^e0 exactly 1).
std::vector<std::string> validate_plan(const CrtPlan& p);

// Exact remainders of x by every modulus. Requires 0 <= x < 2^(2l).
ResidueSet residues(const BigInt& x, const CrtPlan& p);

// One-line text form: "l=<l> e0=<e0> e=<e1>,<e2>,...".
std::string format_plan(const CrtPlan& p);
CrtPlan parse_plan(const std::string& line);  // throws std::runtime_error

}  // namespace factsat::crt
