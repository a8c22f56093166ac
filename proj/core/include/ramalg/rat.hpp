#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ramalg {

using Int = mpz_class;
using Rat = mpq_class;   // always stored canonical: gcd(|num|,den)=1, den>=1

struct domain_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// Burnside-Dixon failed to split the class algebra; caller may retry with a new seed.
struct retry_with_new_seed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Rat rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

inline long to_long(const Int& z) {
    if (!z.fits_slong_p()) throw domain_error("integer out of range: " + z.get_str());
    return z.get_si();
}

inline long to_long(const Rat& r) {
    if (!is_integer(r)) throw domain_error("expected integer, got " + r.get_str());
    return to_long(r.get_num());
}

// value reduced into [0,1) -- the canonical representative in Q/Z
inline Rat mod1(const Rat& r) {
    Int q, rem;
    mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    Rat out(rem, r.get_den());
    out.canonicalize();
    return out;
}

// order of r in Q/Z (denominator of the reduced representative)
inline long qz_order(const Rat& r) { return to_long(Int(mod1(r).get_den())); }

inline std::string rat_str(const Rat& r) { return r.get_str(); }

inline long gcd_long(long a, long b) {
    while (b) { long t = a % b; a = b; b = t; }
    return a < 0 ? -a : a;
}
inline long lcm_long(long a, long b) {
    if (a == 0 || b == 0) return 0;
    return a / gcd_long(a, b) * b;
}

inline long mod_pow(long base, long exp, long mod) {
    unsigned __int128 acc = 1, b = ((base % mod) + mod) % mod;
    while (exp > 0) {
        if (exp & 1) acc = acc * b % mod;
        b = b * b % mod;
        exp >>= 1;
    }
    return static_cast<long>(acc);
}

inline long mod_inverse(long a, long mod) {
    long g = mod, x = 0, x1 = 1, a1 = ((a % mod) + mod) % mod;
    while (a1) {
        long q = g / a1;
        long t = g - q * a1; g = a1; a1 = t;
        t = x - q * x1; x = x1; x1 = t;
    }
    if (g != 1) throw domain_error("not invertible");
    return ((x % mod) + mod) % mod;
}

inline bool is_prime_long(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::vector<std::pair<long, int>> factorize_long(long n) {
    std::vector<std::pair<long, int>> out;
    for (long d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            int e = 0;
            while (n % d == 0) { n /= d; ++e; }
            out.emplace_back(d, e);
        }
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

inline long euler_phi(long n) {
    long out = 1;
    for (auto [p, e] : factorize_long(n)) {
        long pe = 1;
        for (int i = 1; i < e; ++i) pe *= p;
        out *= pe * (p - 1);
    }
    return out;
}

}  // namespace ramalg
