#pragma once

#include "ramalg/rat.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace ramalg {

// dense univariate polynomials, coefficient of x^i at index i
using QPoly = std::vector<Rat>;
using ZPoly = std::vector<Int>;

QPoly qp_trim(QPoly f);
long qp_deg(const QPoly& f);  // -1 for zero
QPoly qp_add(const QPoly& a, const QPoly& b);
QPoly qp_sub(const QPoly& a, const QPoly& b);
QPoly qp_mul(const QPoly& a, const QPoly& b);
QPoly qp_scale(const QPoly& a, const Rat& c);
std::pair<QPoly, QPoly> qp_divrem(const QPoly& a, const QPoly& b);
QPoly qp_derivative(const QPoly& a);
QPoly qp_monic(const QPoly& a);
QPoly qp_gcd(const QPoly& a, const QPoly& b);
Rat qp_eval(const QPoly& a, const Rat& x);
QPoly qp_from_z(const ZPoly& a);
ZPoly zp_from_q(const QPoly& a);  // requires integer coefficients

// value a + b*sqrt(d) with d a positive nonsquare integer; exact sign logic
struct QuadVal {
    Rat a, b;
    long d;
};
int quad_sign(const QuadVal& v);
QuadVal qp_eval_quad(const QPoly& f, const QuadVal& x);

// Sturm machinery. count_distinct_real_roots_in counts distinct real roots in the
// CLOSED interval [lo, hi] with lo, hi in Q[sqrt(d)].
std::vector<QPoly> sturm_chain(const QPoly& f);
long sturm_variations_at(const std::vector<QPoly>& chain, const QuadVal& x, int side);
long count_distinct_real_roots_in(const QPoly& f, const QuadVal& lo, const QuadVal& hi);

QPoly qp_squarefree_part(const QPoly& f);

// characteristic polynomial of a square rational matrix (Faddeev-LeVerrier)
QPoly charpoly(const std::vector<std::vector<Rat>>& m);

// ---- integer polynomial factorization (Zassenhaus) ----

struct ZFactor {
    ZPoly poly;
    int multiplicity;
};
// full factorization over Z of a nonzero integer polynomial (content split off)
std::vector<ZFactor> factor_z(const ZPoly& f);
bool is_irreducible_z(const ZPoly& f);

// ---- arithmetic in F_p[x], p a word-size prime ----

using FpPoly = std::vector<uint64_t>;

FpPoly fp_trim(FpPoly f);
FpPoly fp_mul(const FpPoly& a, const FpPoly& b, uint64_t p);
FpPoly fp_mod(const FpPoly& a, const FpPoly& m, uint64_t p);
FpPoly fp_gcd(FpPoly a, FpPoly b, uint64_t p);
FpPoly fp_powmod(const FpPoly& base, const Int& e, const FpPoly& m, uint64_t p);
FpPoly fp_monic(const FpPoly& f, uint64_t p);
// irreducible factors with multiplicity, deterministic for a given seed
std::vector<std::pair<FpPoly, int>> fp_factor(const FpPoly& f, uint64_t p, uint64_t seed = 1);
FpPoly fp_from_z(const ZPoly& f, uint64_t p);

}  // namespace ramalg
