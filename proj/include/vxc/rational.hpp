#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace vxc {

// Exact arithmetic everywhere: arbitrary-precision integers and rationals in
// lowest terms with positive denominator (maintained by the GMP backend).
using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

using ZVec = std::vector<Int>;
using QVec = std::vector<Rat>;

inline Int num(const Rat& q) { return Int(numerator(q)); }
inline Int den(const Rat& q) { return Int(denominator(q)); }

// Floor division; GMP's operator/ truncates toward zero.
inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b, r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}

inline Int floor_rat(const Rat& q) { return floor_div(num(q), den(q)); }
inline Int ceil_rat(const Rat& q) { return -floor_div(-num(q), den(q)); }
// Nearest integer, halves rounded up (only determinism matters to callers).
inline Int round_rat(const Rat& q) { return floor_rat(q + Rat(1, 2)); }

/// Largest integer m with m^2 <= q. Requires q >= 0.
Int isqrt_floor(const Rat& q);
/// Smallest integer m >= 0 with m^2 >= q. Requires q >= 0.
Int isqrt_ceil(const Rat& q);

/// floor(x + sqrt(q)) computed with rational comparisons only (q >= 0).
Int floor_add_sqrt(const Rat& x, const Rat& q);
/// ceil(x - sqrt(q)) computed with rational comparisons only (q >= 0).
Int ceil_sub_sqrt(const Rat& x, const Rat& q);

/// "p/q" with "/q" omitted for integers; the canonical serialized form.
std::string rat_to_string(const Rat& q);
/// Parses "p" or "p/q"; canonicalizes; throws std::invalid_argument on junk.
Rat rat_from_string(const std::string& s);

inline Int gcd_int(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }
inline Int lcm_int(const Int& a, const Int& b) { return boost::multiprecision::lcm(a, b); }

}  // namespace vxc
