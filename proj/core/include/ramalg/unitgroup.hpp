#pragma once

#include "ramalg/rat.hpp"

#include <algorithm>
#include <set>
#include <vector>

namespace ramalg {

// Subgroup machinery in (Z/N)^x, the Galois group of Q(zeta_N)/Q.
// Subgroups are kept as sorted element lists; N is small (conductor ceiling).

inline std::vector<long> unit_group_elements(long N) {
    std::vector<long> out;
    for (long k = 1; k <= N; ++k)
        if (gcd_long(k, N) == 1) out.push_back(k % N == 0 ? k : k % N);
    if (N == 1) return {0};  // the trivial group, with 0 == 1 mod 1
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<long> subgroup_closure(long N, std::vector<long> gens) {
    if (N == 1) return {0};
    std::set<long> seen{1 % N};
    std::vector<long> frontier{1 % N};
    for (long& g : gens) g = ((g % N) + N) % N;
    while (!frontier.empty()) {
        long x = frontier.back();
        frontier.pop_back();
        for (long g : gens) {
            long y = static_cast<long>((unsigned __int128)x * g % N);
            if (seen.insert(y).second) frontier.push_back(y);
        }
    }
    return {seen.begin(), seen.end()};
}

inline bool subgroup_contains(const std::vector<long>& H, long x) {
    return std::binary_search(H.begin(), H.end(), x);
}

// image of H <= (Z/N)^x in (Z/M)^x for M | N
inline std::vector<long> subgroup_project(const std::vector<long>& H, long N, long M) {
    (void)N;
    if (M == 1) return {0};
    std::set<long> img;
    for (long h : H) img.insert(h % M);
    return {img.begin(), img.end()};
}

// kernel of (Z/N)^x -> (Z/M)^x, i.e. units congruent to 1 mod M
inline std::vector<long> reduction_kernel(long N, long M) {
    std::vector<long> out;
    for (long k : unit_group_elements(N))
        if (M == 1 || k % M == 1 % M) out.push_back(k);
    return out;
}

inline std::vector<long> subgroup_product(long N, const std::vector<long>& A, const std::vector<long>& B) {
    std::vector<long> gens = A;
    gens.insert(gens.end(), B.begin(), B.end());
    return subgroup_closure(N, gens);
}

// canonical coset representatives of H in (Z/N)^x (minimal element per coset)
inline std::vector<long> coset_reps(long N, const std::vector<long>& H) {
    std::vector<long> reps;
    std::set<long> covered;
    for (long u : unit_group_elements(N)) {
        if (covered.count(u)) continue;
        reps.push_back(u);
        for (long h : H) covered.insert(static_cast<long>((unsigned __int128)u * h % N));
    }
    return reps;
}

// small generating set, greedily chosen
inline std::vector<long> subgroup_generators(long N, const std::vector<long>& H) {
    std::vector<long> gens;
    std::vector<long> have = subgroup_closure(N, {});
    if (have.size() == H.size()) return gens;
    for (long h : H) {
        if (subgroup_contains(have, h)) continue;
        gens.push_back(h);
        have = subgroup_closure(N, gens);
        if (have.size() == H.size()) break;
    }
    return gens;
}

// preimage of H <= (Z/N)^x under (Z/L)^x -> (Z/N)^x, for N | L
inline std::vector<long> lift_units(const std::vector<long>& H, long N, long L) {
    if (L == N) return H;
    if (L == 1) return {0};
    std::vector<long> out;
    for (long k : unit_group_elements(L))
        if (N == 1 || subgroup_contains(H, k % N)) out.push_back(k);
    return out;
}

inline long element_order_mod(long k, long N) {
    if (N == 1) return 1;
    long ord = 1;
    long x = ((k % N) + N) % N;
    long acc = x;
    while (acc != 1) {
        acc = static_cast<long>((unsigned __int128)acc * x % N);
        ++ord;
        if (ord > N) throw domain_error("element_order_mod: not a unit");
    }
    return ord;
}

}  // namespace ramalg
