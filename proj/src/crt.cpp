#include "factsat/crt.hpp"

#include <boost/multiprecision/integer.hpp>

#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace factsat::crt {

namespace {

BigInt pow2(int e) { return BigInt(1) << e; }

BigInt big_gcd(const BigInt& a, const BigInt& b) {
  return boost::multiprecision::gcd(a, b);
}

BigInt lcm_fold(const CrtPlan& p) {
  BigInt l = p.m0;
  for (std::size_t i = 0; i < p.exponents.size(); ++i) {
    l = boost::multiprecision::lcm(l, p.mersenne_moduli[i]);
    l = boost::multiprecision::lcm(l, p.fermat_moduli[i]);
  }
  return l;
}

const std::map<int, CrtPlan>& presets() {
  static const std::map<int, CrtPlan> table = [] {
    std::map<int, CrtPlan> t;
    auto put = [&](int l, int e0, std::vector<int> e) {
      t.emplace(l, make_plan(l, e0, std::move(e)));
    };
    put(30, 16, {4, 5, 7, 9});
    put(40, 16, {7, 8, 9, 11});
    put(50, 27, {5, 7, 8, 9, 11});
    put(60, 23, {5, 7, 8, 9, 11, 13});
    put(70, 27, {5, 7, 9, 11, 13, 16});
    put(128, 27, {7, 11, 13, 15, 16, 17, 19, 23});
    put(256, 62, {7, 11, 13, 17, 19, 23, 25, 27, 29, 31, 32});
    return t;
  }();
  return table;
}

}  // namespace

CrtPlan make_plan(int l, int e0, std::vector<int> exponents) {
  if (l < 1) throw std::invalid_argument("make_plan: l < 1");
  if (e0 < 1) throw std::invalid_argument("make_plan: e0 < 1");
  CrtPlan p;
  p.l = l;
  p.e0 = e0;
  p.exponents = std::move(exponents);
  p.m0 = pow2(e0);
  for (int e : p.exponents) {
    if (e < 2) throw std::invalid_argument("make_plan: exponent < 2");
    p.mersenne_moduli.push_back(pow2(e) - 1);
    p.fermat_moduli.push_back(pow2(e) + 1);
  }
  p.lcm = lcm_fold(p);
  return p;
}

bool has_preset(int l) { return presets().count(l) != 0; }

CrtPlan preset_plan(int l) {
  auto it = presets().find(l);
  if (it == presets().end())
    throw std::invalid_argument("preset_plan: no preset for l=" +
                                std::to_string(l));
  return it->second;
}

CrtPlan plan(int l) {
  if (l < 2) throw std::invalid_argument("plan: l < 2");
  const double log2_3 = std::log2(3.0);
  std::vector<int> es;
  double measure = 0.0;
  int candidate = 2;
  while (measure < 2.0 * l) {
    while (true) {
      bool ok = true;
      for (int e : es)
        if (std::gcd(e, candidate) != 1) {
          ok = false;
          break;
        }
      if (ok) break;
      ++candidate;
    }
    es.push_back(candidate);
    ++candidate;
    measure = 0.0;
    for (int e : es) measure += 2.0 * e;
    measure -= double(es.size()) * log2_3;
  }
  const BigInt capacity = pow2(2 * l);
  for (int e0 = 1;; ++e0) {
    CrtPlan p = make_plan(l, e0, es);
    if (p.lcm >= capacity) return p;
  }
}

std::vector<std::string> validate_plan(const CrtPlan& p) {
  std::vector<std::string> bad;
  auto complain = [&](const std::string& s) { bad.push_back(s); };

  if (p.l < 2) complain("l must be >= 2");
  if (p.e0 < 1) complain("e0 must be >= 1");
  if (p.exponents.empty()) complain("no exponents");
  for (int e : p.exponents)
    if (e < 2) complain("exponent " + std::to_string(e) + " below 2");
  for (std::size_t i = 0; i < p.exponents.size(); ++i)
    for (std::size_t j = i + 1; j < p.exponents.size(); ++j) {
      int g = std::gcd(p.exponents[i], p.exponents[j]);
      if (g != 1)
        complain("exponents " + std::to_string(p.exponents[i]) + " and " +
                 std::to_string(p.exponents[j]) + " share factor " +
                 std::to_string(g));
    }
  if (!bad.empty()) return bad;

  if (p.m0 != pow2(p.e0)) complain("stored m0 does not match e0");
  if (p.mersenne_moduli.size() != p.exponents.size() ||
      p.fermat_moduli.size() != p.exponents.size()) {
    complain("modulus lists do not match exponent count");
    return bad;
  }
  for (std::size_t i = 0; i < p.exponents.size(); ++i) {
    if (p.mersenne_moduli[i] != pow2(p.exponents[i]) - 1)
      complain("modulus 2^e-1 mismatch at index " + std::to_string(i));
    if (p.fermat_moduli[i] != pow2(p.exponents[i]) + 1)
      complain("modulus 2^e+1 mismatch at index " + std::to_string(i));
  }

  BigInt fresh = lcm_fold(p);
  if (p.lcm != fresh) complain("stored lcm differs from recomputed lcm");
  if (fresh < pow2(2 * p.l))
    complain("lcm below 2^(2l): capacity " + std::to_string(bit_length(fresh)) +
             " bits, need " + std::to_string(2 * p.l));

  // Pairwise gcd structure: any two of the odd moduli meet in 1 or 3, and
  // the power of two is coprime to all of them.
  std::vector<BigInt> odd;
  for (std::size_t i = 0; i < p.exponents.size(); ++i) {
    odd.push_back(p.mersenne_moduli[i]);
    odd.push_back(p.fermat_moduli[i]);
  }
  for (std::size_t i = 0; i < odd.size(); ++i) {
    if (big_gcd(odd[i], p.m0) != 1)
      complain("modulus shares a factor with 2^e0");
    for (std::size_t j = i + 1; j < odd.size(); ++j) {
      BigInt g = big_gcd(odd[i], odd[j]);
      if (g != 1 && g != 3)
        complain("modulus pair gcd " + g.str() + " not in {1,3}");
    }
  }
  return bad;
}

ResidueSet residues(const BigInt& x, const CrtPlan& p) {
  if (x < 0 || x >= pow2(2 * p.l))
    throw std::invalid_argument("residues: x out of [0, 2^(2l))");
  ResidueSet r;
  r.x0 = x % p.m0;
  for (std::size_t i = 0; i < p.exponents.size(); ++i) {
    r.mersenne.push_back(x % p.mersenne_moduli[i]);
    r.fermat.push_back(x % p.fermat_moduli[i]);
  }
  return r;
}

std::string format_plan(const CrtPlan& p) {
  std::ostringstream os;
  os << "l=" << p.l << " e0=" << p.e0 << " e=";
  for (std::size_t i = 0; i < p.exponents.size(); ++i) {
    if (i) os << ',';
    os << p.exponents[i];
  }
  return os.str();
}

CrtPlan parse_plan(const std::string& line) {
  std::istringstream is(line);
  std::string tl, te0, te;
  if (!(is >> tl >> te0 >> te) || tl.rfind("l=", 0) != 0 ||
      te0.rfind("e0=", 0) != 0 || te.rfind("e=", 0) != 0)
    throw std::runtime_error("parse_plan: expected 'l=<l> e0=<e0> e=<list>'");
  std::string rest;
  if (is >> rest) throw std::runtime_error("parse_plan: trailing tokens");
  try {
    int l = std::stoi(tl.substr(2));
    int e0 = std::stoi(te0.substr(3));
    std::vector<int> es;
    std::istringstream el(te.substr(2));
    std::string item;
    while (std::getline(el, item, ','))
      es.push_back(std::stoi(item));
    if (es.empty()) throw std::runtime_error("parse_plan: empty exponent list");
    return make_plan(l, e0, std::move(es));
  } catch (const std::invalid_argument& ex) {
    throw std::runtime_error(std::string("parse_plan: ") + ex.what());
  } catch (const std::out_of_range&) {
    throw std::runtime_error("parse_plan: number out of range");
  }
}

}  // namespace factsat::crt
