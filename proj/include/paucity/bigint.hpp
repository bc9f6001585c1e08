#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "paucity/errors.hpp"

namespace paucity {

// Arbitrary-precision integer. All symbolic and counting arithmetic is
// exact; no modular or floating-point shortcuts anywhere.
using Int = mpz_class;

inline int sign_of(const Int& n) { return mpz_sgn(n.get_mpz_t()); }

inline bool divides(const Int& d, const Int& n) {
    return mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0;
}

// Exact quotient; caller must have established divisibility.
inline Int exact_quot(const Int& n, const Int& d) {
    Int q;
    mpz_divexact(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    return q;
}

inline Int ipow(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Int igcd(const Int& a, const Int& b) {
    Int r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

// mpz_class offers no long long overloads; long is 64-bit on this target.
inline Int to_int(long long v) { return Int(static_cast<long>(v)); }

inline bool fits_ll(const Int& n) { return mpz_fits_slong_p(n.get_mpz_t()) != 0; }

inline long long to_ll(const Int& n) {
    if (!fits_ll(n)) throw Error("integer does not fit in 64 bits: " + n.get_str());
    return static_cast<long long>(mpz_get_si(n.get_mpz_t()));
}

inline std::string to_string(const Int& n) { return n.get_str(); }

}  // namespace paucity
