#include "ramalg/chartab.hpp"

#include "ramalg/zpoly.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

namespace ramalg {

namespace {

inline uint64_t mulmod(uint64_t a, uint64_t b, uint64_t q) {
    return static_cast<uint64_t>((unsigned __int128)a * b % q);
}
inline uint64_t powmod(uint64_t a, uint64_t e, uint64_t q) {
    uint64_t r = 1;
    a %= q;
    while (e) {
        if (e & 1) r = mulmod(r, a, q);
        a = mulmod(a, a, q);
        e >>= 1;
    }
    return r;
}
inline uint64_t invmod(uint64_t a, uint64_t q) { return powmod(a, q - 2, q); }

uint64_t find_dixon_prime(long e, long order) {
    // q = 1 mod e, q > 2|G|, smallest such prime
    uint64_t q = static_cast<uint64_t>(((2 * order) / e + 1)) * e + 1;
    while (true) {
        if (is_prime_long(static_cast<long>(q))) return q;
        q += e;
    }
}

uint64_t primitive_root(uint64_t q) {
    auto fac = factorize_long(static_cast<long>(q - 1));
    for (uint64_t w = 2; w < q; ++w) {
        bool ok = true;
        for (auto [p, m] : fac) {
            (void)m;
            if (powmod(w, (q - 1) / p, q) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return w;
    }
    throw domain_error("no primitive root found");
}

struct ClassData {
    long k = 0;
    std::vector<long> sizes;
    std::vector<long> reps;
    std::vector<long> inv_class;                 // class of rep^-1
    std::vector<std::vector<long>> power_class;  // power_class[i][t] = class of rep_i^t, t < order(rep_i)
};

ClassData class_data(const FiniteGroup& G) {
    ClassData cd;
    cd.k = G.class_count();
    for (const auto& c : G.classes()) {
        cd.sizes.push_back(static_cast<long>(c.elements.size()));
        cd.reps.push_back(c.rep);
    }
    for (long i = 0; i < cd.k; ++i) {
        cd.inv_class.push_back(G.class_of(G.inv(cd.reps[i])));
        long o = G.element_order(cd.reps[i]);
        std::vector<long> pc(o);
        long x = 0;
        for (long t = 0; t < o; ++t) {
            pc[t] = G.class_of(x);
            x = G.mul(x, cd.reps[i]);
        }
        cd.power_class.push_back(std::move(pc));
    }
    return cd;
}

// structure constants a_{ijl} (K_i K_j = sum_l a_{ijl} K_l) for fixed i, arranged as
// M[j][l] = a_{ijl} so that the class-value vectors omega are eigenvectors: M omega = omega_i omega
std::vector<std::vector<uint64_t>> class_matrix(const FiniteGroup& G, const ClassData& cd, long i,
                                                uint64_t q) {
    std::vector<std::vector<uint64_t>> M(cd.k, std::vector<uint64_t>(cd.k, 0));
    const auto& Ci = G.classes()[i].elements;
    for (long l = 0; l < cd.k; ++l) {
        long z = cd.reps[l];
        for (long x : Ci) {
            long j = G.class_of(G.mul(G.inv(x), z));
            M[j][l] = (M[j][l] + 1) % q;
        }
    }
    return M;
}

// Hessenberg characteristic polynomial over F_q, monic, coeffs low-to-high
FpPoly charpoly_fq(std::vector<std::vector<uint64_t>> a, uint64_t q) {
    long n = static_cast<long>(a.size());
    // reduce to upper Hessenberg
    for (long c = 0; c < n - 2; ++c) {
        long piv = -1;
        for (long r = c + 1; r < n; ++r)
            if (a[r][c] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        if (piv != c + 1) {
            std::swap(a[piv], a[c + 1]);
            for (long r = 0; r < n; ++r) std::swap(a[r][piv], a[r][c + 1]);
        }
        uint64_t inv = invmod(a[c + 1][c], q);
        for (long r = c + 2; r < n; ++r) {
            if (a[r][c] == 0) continue;
            uint64_t f = mulmod(a[r][c], inv, q);
            for (long cc = 0; cc < n; ++cc) a[r][cc] = (a[r][cc] + q - mulmod(f, a[c + 1][cc], q)) % q;
            for (long rr = 0; rr < n; ++rr) a[rr][c + 1] = (a[rr][c + 1] + mulmod(f, a[rr][r], q)) % q;
        }
    }
    // recurrence on leading principal minors of (xI - H)
    std::vector<FpPoly> p(n + 1);
    p[0] = {1};
    for (long m = 1; m <= n; ++m) {
        // p_m = (x - h_mm) p_{m-1} - sum_{i<m-1} h_{i,m-1} * prod(subdiag) p_i
        FpPoly t = fp_mul(p[m - 1], FpPoly{(q - a[m - 1][m - 1] % q) % q, 1}, q);
        uint64_t beta = 1;
        for (long i = m - 2; i >= 0; --i) {
            beta = mulmod(beta, a[i + 1][i], q);
            uint64_t coef = mulmod(beta, a[i][m - 1], q);
            if (coef == 0) continue;
            FpPoly s = p[i];
            for (auto& cc : s) cc = mulmod(cc, coef, q);
            t = fp_trim([&] {
                FpPoly u(std::max(t.size(), s.size()), 0);
                for (size_t ii = 0; ii < t.size(); ++ii) u[ii] = t[ii];
                for (size_t ii = 0; ii < s.size(); ++ii) u[ii] = (u[ii] + q - s[ii]) % q;
                return u;
            }());
        }
        p[m] = t;
    }
    return p[n];
}

struct Subspace {
    // basis vectors in F_q^k (rows), reduced row echelon, with pivot columns
    std::vector<std::vector<uint64_t>> basis;
    std::vector<long> pivots;
};

void rref(Subspace& s, uint64_t q) {
    long rows = static_cast<long>(s.basis.size());
    long cols = rows ? static_cast<long>(s.basis[0].size()) : 0;
    long rank = 0;
    s.pivots.clear();
    for (long c = 0; c < cols && rank < rows; ++c) {
        long piv = -1;
        for (long r = rank; r < rows; ++r)
            if (s.basis[r][c] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(s.basis[piv], s.basis[rank]);
        uint64_t inv = invmod(s.basis[rank][c], q);
        for (long cc = 0; cc < cols; ++cc) s.basis[rank][cc] = mulmod(s.basis[rank][cc], inv, q);
        for (long r = 0; r < rows; ++r) {
            if (r == rank || s.basis[r][c] == 0) continue;
            uint64_t f = s.basis[r][c];
            for (long cc = 0; cc < cols; ++cc)
                s.basis[r][cc] = (s.basis[r][cc] + q - mulmod(f, s.basis[rank][cc], q)) % q;
        }
        s.pivots.push_back(c);
        ++rank;
    }
    s.basis.resize(rank);
}

std::vector<uint64_t> subspace_coords(const Subspace& s, const std::vector<uint64_t>& v, uint64_t q) {
    std::vector<uint64_t> coords(s.basis.size());
    std::vector<uint64_t> rem = v;
    for (size_t r = 0; r < s.basis.size(); ++r) {
        uint64_t c = rem[s.pivots[r]];
        coords[r] = c;
        if (c == 0) continue;
        for (size_t cc = 0; cc < rem.size(); ++cc)
            rem[cc] = (rem[cc] + q - mulmod(c, s.basis[r][cc], q)) % q;
    }
    for (uint64_t c : rem)
        if (c != 0) throw retry_with_new_seed("class algebra eigenvector escaped its subspace");
    return coords;
}

}  // namespace

CycNumber character_inner(const GroupPtr& g, const std::vector<CycNumber>& a,
                          const std::vector<CycNumber>& b) {
    const FiniteGroup& G = *g;
    CycNumber acc;
    for (long i = 0; i < G.class_count(); ++i) {
        long inv_i = G.class_of(G.inv(G.classes()[i].rep));
        CycNumber term = a[i] * b[inv_i];
        acc = acc + CycNumber::from_rat(Rat(static_cast<long>(G.classes()[i].elements.size()))) * term;
    }
    return acc * CycNumber::from_rat(Rat(1, G.order()));
}

std::vector<Character> character_table(const GroupPtr& g, uint64_t seed) {
    const FiniteGroup& G = *g;
    ClassData cd = class_data(G);
    long k = cd.k;
    long e = G.exponent();
    uint64_t q = find_dixon_prime(e, G.order());
    uint64_t w = primitive_root(q);
    uint64_t z = powmod(w, (q - 1) / e, q);

    std::mt19937_64 rng(seed ^ 0xD1C50FULL);

    // split F_q^k into common eigenspaces of the class-sum matrices
    std::vector<Subspace> spaces;
    {
        Subspace all;
        all.basis.assign(k, std::vector<uint64_t>(k, 0));
        for (long i = 0; i < k; ++i) all.basis[i][i] = 1;
        rref(all, q);
        spaces.push_back(std::move(all));
    }
    std::vector<long> order_of_use(k - 1);
    std::iota(order_of_use.begin(), order_of_use.end(), 1);
    std::shuffle(order_of_use.begin(), order_of_use.end(), rng);

    for (long idx : order_of_use) {
        bool all_split = true;
        for (auto& s : spaces)
            if (s.basis.size() > 1) all_split = false;
        if (all_split) break;
        auto M = class_matrix(G, cd, idx, q);
        std::vector<Subspace> next;
        for (auto& s : spaces) {
            long d = static_cast<long>(s.basis.size());
            if (d <= 1) {
                next.push_back(std::move(s));
                continue;
            }
            // restriction A of M to the subspace: column r = coords of M * basis_r
            std::vector<std::vector<uint64_t>> A(d, std::vector<uint64_t>(d, 0));
            for (long r = 0; r < d; ++r) {
                std::vector<uint64_t> img(k, 0);
                for (long l = 0; l < k; ++l) {
                    unsigned __int128 acc = 0;
                    for (long j = 0; j < k; ++j)
                        if (M[l][j] && s.basis[r][j]) acc += (unsigned __int128)M[l][j] * s.basis[r][j];
                    img[l] = static_cast<uint64_t>(acc % q);
                }
                auto coords = subspace_coords(s, img, q);
                for (long rr = 0; rr < d; ++rr) A[rr][r] = coords[rr];
            }
            FpPoly cp = charpoly_fq(A, q);
            auto roots_f = fp_factor(cp, q, rng());
            std::vector<uint64_t> roots;
            for (auto& [fac, mult] : roots_f) {
                (void)mult;
                if (fac.size() != 2) throw retry_with_new_seed("class algebra did not split over F_q");
                roots.push_back(mulmod(q - fac[0] % q, invmod(fac[1], q), q));
            }
            std::sort(roots.begin(), roots.end());
            roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
            if (roots.size() == 1) {
                next.push_back(std::move(s));
                continue;
            }
            for (uint64_t lam : roots) {
                // nullspace of (A - lam) -> vectors in subspace coords -> ambient
                std::vector<std::vector<uint64_t>> B(d, std::vector<uint64_t>(d, 0));
                for (long r = 0; r < d; ++r)
                    for (long c = 0; c < d; ++c) B[r][c] = A[r][c] % q;
                for (long r = 0; r < d; ++r) B[r][r] = (B[r][r] + q - lam % q) % q;
                // gaussian elimination for nullspace
                std::vector<long> pivot_of_col(d, -1);
                long rank = 0;
                for (long c = 0; c < d && rank < d; ++c) {
                    long piv = -1;
                    for (long r = rank; r < d; ++r)
                        if (B[r][c] != 0) {
                            piv = r;
                            break;
                        }
                    if (piv < 0) continue;
                    std::swap(B[piv], B[rank]);
                    uint64_t inv = invmod(B[rank][c], q);
                    for (long cc = 0; cc < d; ++cc) B[rank][cc] = mulmod(B[rank][cc], inv, q);
                    for (long r = 0; r < d; ++r) {
                        if (r == rank || B[r][c] == 0) continue;
                        uint64_t f = B[r][c];
                        for (long cc = 0; cc < d; ++cc)
                            B[r][cc] = (B[r][cc] + q - mulmod(f, B[rank][cc], q)) % q;
                    }
                    pivot_of_col[c] = rank;
                    ++rank;
                }
                Subspace ns;
                for (long c = 0; c < d; ++c) {
                    if (pivot_of_col[c] >= 0) continue;
                    std::vector<uint64_t> vec(d, 0);
                    vec[c] = 1;
                    for (long cc = 0; cc < d; ++cc) {
                        if (pivot_of_col[cc] < 0) continue;
                        vec[cc] = (q - B[pivot_of_col[cc]][c] % q) % q;
                    }
                    // to ambient coordinates
                    std::vector<uint64_t> amb(k, 0);
                    for (long r = 0; r < d; ++r) {
                        if (vec[r] == 0) continue;
                        for (long cc = 0; cc < k; ++cc)
                            amb[cc] = (amb[cc] + mulmod(vec[r], s.basis[r][cc], q)) % q;
                    }
                    ns.basis.push_back(std::move(amb));
                }
                if (ns.basis.empty()) throw retry_with_new_seed("empty eigenspace during splitting");
                rref(ns, q);
                next.push_back(std::move(ns));
            }
        }
        spaces = std::move(next);
    }
    if (static_cast<long>(spaces.size()) != k)
        throw retry_with_new_seed("class algebra splitting stalled; retry with a new seed");

    // identity class must be the class of element 0 at index 0
    if (G.classes()[0].rep != 0) throw domain_error("internal: identity class not first");

    std::vector<Character> table;
    for (auto& s : spaces) {
        if (s.basis.size() != 1) throw retry_with_new_seed("non-minimal eigenspace survived");
        std::vector<uint64_t> v = s.basis[0];
        if (v[0] == 0) throw retry_with_new_seed("eigenvector vanishes at the identity class");
        uint64_t norm = invmod(v[0], q);
        for (auto& c : v) c = mulmod(c, norm, q);
        // degree from the orthogonality relation
        uint64_t denom = 0;
        for (long i = 0; i < k; ++i) {
            uint64_t t = mulmod(v[i], v[cd.inv_class[i]], q);
            denom = (denom + mulmod(t, invmod(cd.sizes[i] % q, q), q)) % q;
        }
        uint64_t rhs = mulmod(G.order() % q, invmod(denom, q), q);
        long degree = -1;
        for (long dloop = 1; dloop * dloop <= G.order(); ++dloop)
            if (mulmod(dloop, dloop, q) == rhs) {
                degree = dloop;
                break;
            }
        if (degree < 0) throw retry_with_new_seed("degree extraction failed");
        // theta_i = chi(rep_i) mod q
        std::vector<uint64_t> theta(k);
        for (long i = 0; i < k; ++i)
            theta[i] = mulmod(mulmod(degree % q, v[i], q), invmod(cd.sizes[i] % q, q), q);
        // lift each value by discrete Fourier inversion on <rep_i>
        Character chi;
        chi.group = g;
        chi.degree = degree;
        chi.values.resize(k);
        for (long i = 0; i < k; ++i) {
            long o = G.element_order(cd.reps[i]);
            uint64_t zo = powmod(z, e / o, q);
            uint64_t oinv = invmod(o % q, q);
            std::vector<std::pair<long, Rat>> terms;
            for (long j = 0; j < o; ++j) {
                // m_j = (1/o) sum_t theta(rep^t) * zo^{-jt}
                uint64_t acc = 0;
                uint64_t zoj = invmod(powmod(zo, j, q), q);
                uint64_t cur = 1;
                for (long t = 0; t < o; ++t) {
                    acc = (acc + mulmod(theta[cd.power_class[i][t]], cur, q)) % q;
                    cur = mulmod(cur, zoj, q);
                }
                uint64_t m = mulmod(acc, oinv, q);
                if (m > static_cast<uint64_t>(degree))
                    throw retry_with_new_seed("multiplicity lift out of range");
                if (m) terms.emplace_back(j, Rat(static_cast<long>(m)));
            }
            std::vector<Rat> coeffs(std::max<long>(euler_phi(o), 1), Rat(0));
            chi.values[i] = CycNumber::from_rat(Rat(0));
            for (auto& [j, c] : terms)
                chi.values[i] = chi.values[i] + CycNumber::from_rat(c) * CycNumber::root_of_unity(o, j);
        }
        if (!(chi.values[0] == CycNumber::from_int(degree)))
            throw retry_with_new_seed("lifted degree mismatch");
        table.push_back(std::move(chi));
    }

    // canonical ordering: by degree, then lexicographic value tuple
    std::sort(table.begin(), table.end(), [](const Character& a, const Character& b) {
        if (a.degree != b.degree) return a.degree < b.degree;
        for (size_t i = 0; i < a.values.size(); ++i) {
            if (a.values[i] == b.values[i]) continue;
            return a.values[i] < b.values[i];
        }
        return false;
    });

    // exact verification: orthogonality and the degree sum
    long sumsq = 0;
    for (auto& chi : table) sumsq += chi.degree * chi.degree;
    if (sumsq != G.order()) throw retry_with_new_seed("degree check failed: sum of squares");
    for (size_t a = 0; a < table.size(); ++a)
        for (size_t b = a; b < table.size(); ++b) {
            CycNumber ip = character_inner(g, table[a].values, table[b].values);
            if (a == b ? !(ip == CycNumber::from_int(1)) : !ip.is_zero())
                throw retry_with_new_seed("orthogonality verification failed");
        }
    return table;
}

int frobenius_schur(const Character& chi) {
    const FiniteGroup& G = *chi.group;
    CycNumber acc;
    for (long i = 0; i < G.class_count(); ++i) {
        long rep = G.classes()[i].rep;
        long sq = G.class_of(G.mul(rep, rep));
        acc = acc + CycNumber::from_int(static_cast<long>(G.classes()[i].elements.size())) * chi.values[sq];
    }
    acc = acc * CycNumber::from_rat(Rat(1, G.order()));
    if (!acc.is_rational() || !is_integer(acc.rational_value()))
        throw domain_error("corrupted table: Frobenius-Schur sum is not an integer");
    long v = to_long(acc.rational_value());
    if (v < -1 || v > 1) throw domain_error("corrupted table: Frobenius-Schur value out of range");
    return static_cast<int>(v);
}

std::vector<RationalCharacter> rational_characters(const GroupPtr& g,
                                                   const std::vector<Character>& table) {
    const FiniteGroup& G = *g;
    long k = G.class_count();
    long e = G.exponent();
    ClassData cd = class_data(G);

    // index characters by value vector for Galois lookups
    std::map<std::vector<CycNumber>, long> index;
    for (size_t i = 0; i < table.size(); ++i) index[table[i].values] = static_cast<long>(i);

    auto galois_image = [&](long chi_idx, long t) {
        std::vector<CycNumber> vals(k);
        for (long i = 0; i < k; ++i) {
            long o = G.element_order(cd.reps[i]);
            long tt = t % o;
            // sigma_t(chi(g)) = chi(g^t)
            long cls = cd.power_class[i][tt];
            vals[i] = table[chi_idx].values[cls];
        }
        return vals;
    };

    std::vector<RationalCharacter> out;
    std::vector<char> used(table.size(), 0);
    for (size_t start = 0; start < table.size(); ++start) {
        if (used[start]) continue;
        std::vector<long> orbit;
        std::set<long> seen;
        for (long t : unit_group_elements(e)) {
            long tt = (e == 1) ? 1 : t;
            auto vals = galois_image(static_cast<long>(start), tt);
            auto it = index.find(vals);
            if (it == index.end()) throw domain_error("Galois image of an irreducible not in table");
            if (seen.insert(it->second).second) orbit.push_back(it->second);
        }
        std::sort(orbit.begin(), orbit.end());
        for (long i : orbit) used[i] = 1;

        RationalCharacter rc;
        rc.group = g;
        rc.orbit = orbit;
        rc.rep_values = table[start].values;
        rc.degree = table[start].degree;
        rc.field = SubfieldDesc::min_subfield(rc.rep_values);
        rc.fs = frobenius_schur(table[start]);
        rc.values.assign(k, Rat(0));
        for (long i = 0; i < k; ++i) {
            CycNumber sum;
            for (long idx : orbit) sum = sum + table[idx].values[i];
            if (!sum.is_rational())
                throw domain_error("orbit sum of characters is not rational");
            rc.values[i] = sum.rational_value();
        }
        if (static_cast<long>(orbit.size()) != rc.field.degree())
            throw domain_error("orbit size does not match the field degree");
        // kernel: union of classes where chi = chi(1)
        std::vector<long> kernel_elems;
        for (long i = 0; i < k; ++i)
            if (table[start].values[i] == CycNumber::from_int(rc.degree))
                for (long x : G.classes()[i].elements) kernel_elems.push_back(x);
        rc.kernel = make_normal_subgroup(g, kernel_elems);
        // consistency across the orbit
        for (long idx : orbit) {
            if (table[idx].degree != rc.degree) throw domain_error("orbit degree mismatch");
            if (frobenius_schur(table[idx]) != rc.fs) throw domain_error("orbit fs mismatch");
        }
        out.push_back(std::move(rc));
    }
    std::sort(out.begin(), out.end(), [](const RationalCharacter& a, const RationalCharacter& b) {
        if (a.degree != b.degree) return a.degree < b.degree;
        if (a.values != b.values) return a.values < b.values;
        return a.orbit < b.orbit;
    });
    return out;
}

}  // namespace ramalg
