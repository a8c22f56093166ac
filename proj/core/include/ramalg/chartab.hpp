#pragma once

#include "ramalg/cyclotomic.hpp"
#include "ramalg/group.hpp"
#include "ramalg/subfield.hpp"

#include <cstdint>
#include <vector>

namespace ramalg {

// complex irreducible character, one value per conjugacy class (class order of the group)
struct Character {
    GroupPtr group;
    long degree = 1;
    std::vector<CycNumber> values;
};

// Galois orbit of complex irreducibles = one simple factor of Q[G]
struct RationalCharacter {
    GroupPtr group;
    std::vector<long> orbit;           // indices into the complex table
    std::vector<CycNumber> rep_values; // values of one orbit representative
    std::vector<Rat> values;           // orbit sum, rational on every class
    SubfieldDesc field;                // field of values Q(chi)
    NormalSubgroup kernel;
    int fs = 0;                        // Frobenius-Schur indicator, shared across the orbit
    long degree = 1;                   // chi(1) of one member
    long field_degree() const { return field.degree(); }
};

// exact table via Burnside-Dixon (split the class algebra mod a prime q = 1 mod exp(G),
// lift by discrete Fourier inversion on cyclic subgroups); deterministic per seed
std::vector<Character> character_table(const GroupPtr& g, uint64_t seed = 0);

// (1/|G|) sum chi(g^2); always -1, 0 or +1 for an irreducible chi
int frobenius_schur(const Character& chi);

std::vector<RationalCharacter> rational_characters(const GroupPtr& g,
                                                   const std::vector<Character>& table);

// inner product <a, b> in exact cyclotomic arithmetic
CycNumber character_inner(const GroupPtr& g, const std::vector<CycNumber>& a,
                          const std::vector<CycNumber>& b);

}  // namespace ramalg
