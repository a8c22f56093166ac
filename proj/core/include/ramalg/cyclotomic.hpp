#pragma once

#include "ramalg/rat.hpp"

#include <optional>
#include <vector>

namespace ramalg {

// Exact element of Q(zeta_N), stored on the power basis {zeta^i : 0 <= i < phi(N)}
// reduced by the N-th cyclotomic polynomial. Values are kept in canonical form:
// the conductor is minimal (and never 2 mod 4), so equal values have identical
// stored form and operator== is coefficient comparison.
class CycNumber {
public:
    CycNumber() : conductor_(1), coeffs_(1, Rat(0)) {}

    static CycNumber from_rat(const Rat& q);
    static CycNumber from_int(long v) { return from_rat(Rat(v)); }
    // zeta_N^k, canonicalized
    static CycNumber root_of_unity(long N, long k);
    // element with the given power-basis coefficients at conductor N (canonicalized)
    static CycNumber from_coeffs(long N, std::vector<Rat> coeffs);
    // exact square root of a rational, as a cyclotomic number (Gauss sums)
    static CycNumber sqrt_of_rational(const Rat& q);

    long conductor() const { return conductor_; }
    const std::vector<Rat>& coeffs() const { return coeffs_; }

    bool is_zero() const;
    bool is_rational() const { return conductor_ == 1; }
    Rat rational_value() const;

    CycNumber operator+(const CycNumber& o) const;
    CycNumber operator-(const CycNumber& o) const;
    CycNumber operator*(const CycNumber& o) const;
    CycNumber operator-() const;
    CycNumber inverse() const;  // throws domain_error on zero

    bool operator==(const CycNumber& o) const {
        return conductor_ == o.conductor_ && coeffs_ == o.coeffs_;
    }
    bool operator!=(const CycNumber& o) const { return !(*this == o); }
    bool operator<(const CycNumber& o) const;  // arbitrary total order (for maps/sorting)

    // Galois action sigma_k: zeta -> zeta^k, gcd(k, conductor) = 1.
    CycNumber galois(long k) const;
    CycNumber conj() const;  // complex conjugation, sigma_{-1}
    bool is_real() const { return *this == conj(); }

    Rat trace_to_q() const;  // Tr_{Q(zeta_N)/Q}

    // coefficients of this element on the power basis of Q(zeta_M), M a multiple
    // of the conductor (M not 2 mod 4); used for linear algebra at a common level
    std::vector<Rat> coeffs_at(long M) const;

    // decomposition as q * zeta_ord^exp with q rational (sign carried by q);
    // nullopt if the element is not of that form
    struct RootRat {
        Rat scale;
        long order;  // order of the root-of-unity part (1 if rational)
        long exp;
    };
    std::optional<RootRat> as_root_rat() const;

    std::string str() const;

    // resource policy
    static long conductor_ceiling();
    static void set_conductor_ceiling(long c);

private:
    long conductor_;
    std::vector<Rat> coeffs_;

    void canonicalize();
    void rebase_to(long M);
    std::vector<Rat> galois_raw(long k) const;
    static CycNumber sqrt_of_prime(long p);
    CycNumber(long N, std::vector<Rat> c) : conductor_(N), coeffs_(std::move(c)) {}
};

inline CycNumber operator*(const Rat& q, const CycNumber& x) { return CycNumber::from_rat(q) * x; }

// cyclotomic polynomial Phi_N as integer coefficient vector, constant term first
const std::vector<Int>& cyclotomic_poly(long N);

// Moebius function
int moebius(long n);

// x^e mod Phi_N on the power basis (integer coefficients)
std::vector<Int> power_basis_row(long N, long e);

}  // namespace ramalg
