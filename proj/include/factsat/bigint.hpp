#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <ios>
#include <string>

namespace factsat {

using BigInt = boost::multiprecision::cpp_int;

// Number of bits in the binary representation; 0 for value 0.
inline unsigned bit_length(const BigInt& v) {
  if (v == 0) return 0;
  return boost::multiprecision::msb(v) + 1;
}

inline bool bit_of(const BigInt& v, unsigned i) {
  return boost::multiprecision::bit_test(v, i);
}

inline std::string to_hex(const BigInt& v) {
  std::string s = v.str(0, std::ios_base::hex);
  for (char& ch : s) ch = char(std::tolower(static_cast<unsigned char>(ch)));
  return s;
}

// Parses lowercase/uppercase hex without prefix. Throws std::runtime_error on
// junk input (inherited from cpp_int's parser).
inline BigInt from_hex(const std::string& s) { return BigInt("0x" + s); }

}  // namespace factsat
