#pragma once

#include "factsat/bigint.hpp"
#include "factsat/cnf.hpp"
#include "factsat/reducer.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <utility>
#include <vector>

namespace factsat::numgen {

// Deterministic bit source. Values are assembled from raw engine words and
// rejection sampling (standard distribution objects are implementation
// defined, which would break cross-platform byte determinism).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  std::uint64_t next_u64() { return eng_(); }
  BigInt next_bits(int bits);          // uniform in [0, 2^bits)
  BigInt next_below(const BigInt& n);  // uniform in [0, n), n >= 1

 private:
  std::mt19937_64 eng_;
};

struct FactorInstance {
  int l = 0;
  BigInt p, q;  // l-bit primes, p <= q; kept out of emitted formula files
  BigInt x;     // p * q
  std::uint64_t seed = 0;
};

// Exact trial division below 2^16; Miller-Rabin with 64 rounds above, bases
// drawn from the caller's stream. Error probability below 4^-64.
bool is_probable_prime(const BigInt& n, Rng& rng);

// Random l-bit prime, top bit forced. Requires l >= 2.
BigInt gen_prime(int l, Rng& rng);

// Deterministic in (l, seed); p <= q by convention.
FactorInstance make_instance(int l, std::uint64_t seed);

// Simulates the circuit on inputs (p, q) and maps the wire trace onto the
// formula variables; the result is checked against the formula before it is
// returned. Requires p * q = reduction.x.
cnf::Witness extract_witness(const reducer::Reduction& red,
                             const cnf::ExtendedFormula& f, const BigInt& p,
                             const BigInt& q);
cnf::Witness extract_witness(const reducer::Reduction& red,
                             const cnf::CnfFormula& f, const BigInt& p,
                             const BigInt& q);

// Appends blocking clauses over the input variables forbidding the input
// patterns (p,q) and (q,p) (a single clause when p = q). Since gate
// variables are functionally determined by the inputs, the result is
// unsatisfiable. Requires p * q = reduction.x.
cnf::CnfFormula negate_solutions(const cnf::CnfFormula& f,
                                 const reducer::Reduction& red,
                                 const BigInt& p, const BigInt& q);

// Smallest nontrivial factor split with p <= q, or nothing for 0, 1 and
// primes. Guarded to x < 2^40.
std::optional<std::pair<BigInt, BigInt>> brute_force_factor(const BigInt& x);

// All (u, v) the reduction circuit accepts, by full enumeration with gate
// propagation. Guarded to 2l <= 20 input bits.
std::vector<std::pair<std::uint32_t, std::uint32_t>> brute_force_sat_inputs(
    const reducer::Reduction& red);

// Witness file: `c witness x=<hex>` then DIMACS-style `v` lines, final 0.
void write_witness(std::ostream& os, const cnf::Witness& w, const BigInt& x);
struct WitnessFile {
  BigInt x;
  cnf::Witness witness;
};
WitnessFile read_witness(std::istream& is);  // throws cnf::ParseError

}  // namespace factsat::numgen
