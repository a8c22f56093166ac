#pragma once

#include "ramalg/subfield.hpp"

#include <string>
#include <vector>

namespace ramalg {

struct Place {
    bool infinite = false;
    long prime = 0;        // 0 for infinite places
    long index = 0;        // canonical index among the places of the center (over this prime)
    long local_degree = 1; // [F_v : Q_p]; 1 for infinite places
    long ram_index = 1;

    bool operator==(const Place& o) const {
        return infinite == o.infinite && prime == o.prime && index == o.index;
    }
    std::string str() const;
};

struct LocalInvariant {
    Place place;
    Rat value;  // reduced into [0,1)
};

// order of an invariant list = lcm of Q/Z orders (the Schur index when complete)
long invariant_lcm_order(const std::vector<LocalInvariant>& invs);
Rat invariant_sum(const std::vector<LocalInvariant>& invs);
// drop zero entries (descriptors carry only nonzero invariants)
std::vector<LocalInvariant> nonzero_invariants(std::vector<LocalInvariant> invs);

// Cyclic algebra (M/L, sigma, c): direct sum_{i<n} M u^i, u x u^-1 = sigma(x), u^n = c,
// with M/L abelian over Q, sigma a unit mod cond(M) generating Gal(M/L), and c in L^x
// of the shape rational * root of unity. matrix_collapse records an outer M_s(...) frame.
struct CyclicAlgebraPresentation {
    SubfieldDesc big;       // M
    SubfieldDesc center;    // L
    long sigma = 1;
    CycNumber constant;     // c
    long matrix_collapse = 1;

    long degree() const;  // [M:L]
};

// invariants at the places of the center over the finite prime ell (zeros included)
std::vector<LocalInvariant> cyclic_algebra_invariants_at(const CyclicAlgebraPresentation& A, long ell);
// invariants at the infinite places of the center (zeros included)
std::vector<LocalInvariant> cyclic_algebra_infinite_invariants(const CyclicAlgebraPresentation& A);
// primes where a nonzero invariant could occur (conductor of M and the rational content of c)
std::vector<long> relevant_primes(const CyclicAlgebraPresentation& A);
// all invariants: infinite places plus every relevant prime (zeros dropped);
// verifies reciprocity (sum = 0 in Q/Z)
std::vector<LocalInvariant> cyclic_algebra_invariants(const CyclicAlgebraPresentation& A);

// invariants of E (x)_F L given the invariants of E over F: inv_w = [L_w:F_v] * inv_v
std::vector<LocalInvariant> base_change_invariants(const SubfieldDesc& F,
                                                   const std::vector<LocalInvariant>& invs,
                                                   const SubfieldDesc& L);

// the forced invariant pattern of a totally real center: 1/2 at every infinite place,
// [F_v:Q_p]/2 mod 1 at every place over p (the quaternionic class quasi-split outside p)
std::vector<LocalInvariant> hp_infinity_invariants(const SubfieldDesc& F, long p);

// all infinite places of F as Place records (real: one per coset of <H,-1>; complex: same count)
std::vector<Place> infinite_places(const SubfieldDesc& F);
std::vector<Place> finite_places(const SubfieldDesc& F, long p);

}  // namespace ramalg
