#include "ramalg/localinv.hpp"

#include "ramalg/zpoly.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace ramalg {

std::string Place::str() const {
    std::ostringstream os;
    if (infinite)
        os << "infinite place #" << index;
    else
        os << "place #" << index << " over " << prime << " (local degree " << local_degree << ")";
    return os.str();
}

long invariant_lcm_order(const std::vector<LocalInvariant>& invs) {
    long l = 1;
    for (const auto& iv : invs) l = lcm_long(l, qz_order(iv.value));
    return l;
}

Rat invariant_sum(const std::vector<LocalInvariant>& invs) {
    Rat s(0);
    for (const auto& iv : invs) s += iv.value;
    return mod1(s);
}

std::vector<LocalInvariant> nonzero_invariants(std::vector<LocalInvariant> invs) {
    std::vector<LocalInvariant> out;
    for (auto& iv : invs)
        if (mod1(iv.value) != 0) out.push_back(iv);
    return out;
}

long CyclicAlgebraPresentation::degree() const { return big.degree() / center.degree(); }

std::vector<Place> infinite_places(const SubfieldDesc& F) {
    std::vector<Place> out;
    long n_places = F.is_totally_real() ? F.degree() : F.degree() / 2;
    for (long i = 0; i < n_places; ++i)
        out.push_back(Place{true, 0, i, 1, 1});
    return out;
}

std::vector<Place> finite_places(const SubfieldDesc& F, long p) {
    PlaceSplit ps = split_prime(F, p);
    std::vector<Place> out;
    for (long i = 0; i < ps.count; ++i)
        out.push_back(Place{false, p, i, ps.local_degree, ps.e});
    return out;
}

namespace {

// canonical real embedding representatives of a totally real field: cosets of <H, -1>
std::vector<long> real_embedding_reps(const SubfieldDesc& F) {
    long N = F.conductor();
    if (N == 1) return {1};
    std::vector<long> Hm = F.stabilizer();
    Hm.push_back(N - 1);
    return coset_reps(N, subgroup_closure(N, Hm));
}

struct ArtinSetup {
    long N = 1;                    // conductor of M
    long ell = 2;
    long ell_a = 0;                // a with ell^a || N
    long ell_pow = 1;              // ell^a
    long m_prime = 1;              // N / ell^a
    std::vector<long> HM, HL;      // stabilizers lifted to level N
    std::vector<long> DU;          // decomposition subgroup of the standard place in (Z/N)^x
    long teich_root_residue = 0;   // residue of zeta_{m'} at the chosen prime (as power table base)
    FpPoly hpoly;                  // chosen irreducible factor of Phi_{m'} mod ell
};

// evaluate zeta_{m'}^e at the standard place: an element of F_{ell^d} = F_ell[y]/(h);
// returns its constant residue when the value lies in F_ell
long residue_of_root_power(const ArtinSetup& S, long e) {
    if (S.m_prime == 1) return 1 % S.ell;
    // compute y^e mod h over F_ell
    FpPoly y{0, 1};
    FpPoly r = fp_powmod(y, Int(e), S.hpoly, static_cast<uint64_t>(S.ell));
    if (r.empty()) throw domain_error("internal: root power vanished");
    if (r.size() > 1) throw domain_error("internal: norm image not in Q_ell");
    return static_cast<long>(r[0]);
}

long teichmuller_lift(long r, long ell, long ell_pow) {
    // lift the (ell-1)-st root of unity residue r to Z/ell^a
    if (ell_pow == 1) return 0;
    long t = r % ell_pow;
    long a = 1;
    long pw = ell;
    while (pw < ell_pow) {
        pw *= ell;
        ++a;
    }
    for (long i = 1; i < a; ++i) t = mod_pow(t, ell, ell_pow);
    return t;
}

ArtinSetup artin_setup(const CyclicAlgebraPresentation& A, long ell) {
    ArtinSetup S;
    S.N = A.big.conductor();
    S.ell = ell;
    S.ell_pow = 1;
    S.m_prime = S.N;
    while (S.m_prime % ell == 0) {
        S.m_prime /= ell;
        S.ell_pow *= ell;
        ++S.ell_a;
    }
    S.HM = A.big.stabilizer();
    S.HL = lift_units(A.center.stabilizer(), A.center.conductor(), S.N);
    // decomposition subgroup of the standard place: inertia (1 mod m') plus Frobenius
    std::vector<long> gens;
    for (long k : unit_group_elements(S.N))
        if (S.m_prime == 1 || k % S.m_prime == 1 % S.m_prime) gens.push_back(k);
    if (S.m_prime > 1) {
        for (long k : unit_group_elements(S.N))
            if ((S.ell_pow == 1 || k % S.ell_pow == 1 % S.ell_pow) && k % S.m_prime == ell % S.m_prime) {
                gens.push_back(k);
                break;
            }
    }
    S.DU = subgroup_closure(S.N, gens);
    if (S.m_prime > 1) {
        auto fac = fp_factor(fp_from_z(cyclotomic_poly(S.m_prime), static_cast<uint64_t>(ell)),
                             static_cast<uint64_t>(ell), 1);
        S.hpoly = fac.front().first;  // canonical: factors are sorted
    }
    return S;
}

}  // namespace

std::vector<LocalInvariant> cyclic_algebra_invariants_at(const CyclicAlgebraPresentation& A, long ell) {
    if (!is_prime_long(ell)) throw domain_error("cyclic_algebra_invariants_at: ell must be prime");
    const long n = A.degree();
    PlaceSplit ps = split_prime(A.center, ell);
    std::vector<LocalInvariant> out;
    if (n == 1 || A.constant == CycNumber::from_int(1)) {
        for (long i = 0; i < ps.count; ++i)
            out.push_back({Place{false, ell, i, ps.local_degree, ps.e}, Rat(0)});
        return out;
    }
    auto rr = A.constant.as_root_rat();
    if (!rr) throw domain_error("cyclic algebra constant is not rational times a root of unity");

    ArtinSetup S = artin_setup(A, ell);
    long N = S.N;
    // sigma must fix the center
    long sigma = ((A.sigma % N) + N) % N;
    if (!subgroup_contains(S.HL, sigma))
        throw domain_error("cyclic algebra generator does not fix the center");

    // local degree of the center and the norm exponent sum over Gal(L_v / Q_ell)
    // Gal(L/Q) decomposition subgroup = (DU * HL)/HL; coset reps of HL inside DU*HL
    std::vector<long> DU_HL = subgroup_product(N, S.DU, S.HL);
    long deg_v = static_cast<long>(DU_HL.size()) / static_cast<long>(S.HL.size());
    // reps of HL-cosets inside DU*HL
    std::vector<long> local_gal_reps;
    {
        std::set<long> covered;
        for (long u : DU_HL) {
            if (covered.count(u)) continue;
            local_gal_reps.push_back(u);
            for (long h : S.HL) covered.insert(static_cast<long>((unsigned __int128)u * h % N));
        }
    }
    if (static_cast<long>(local_gal_reps.size()) != deg_v)
        throw domain_error("internal: local Galois rep count mismatch");

    // exponent of the root-of-unity part of c at level N
    long root_exp = 0;
    if (rr->order > 1) {
        if (N % rr->order != 0) throw domain_error("constant's root of unity does not live in M");
        root_exp = rr->exp * (N / rr->order);
    }

    Rat q_rat = rr->scale;
    long v_ell_q = 0;
    {
        Int num = q_rat.get_num(), den = q_rat.get_den();
        while (num % ell == 0) {
            num /= ell;
            ++v_ell_q;
        }
        while (den % ell == 0) {
            den /= ell;
            --v_ell_q;
        }
        q_rat = Rat(num, den);
        q_rat.canonicalize();
    }

    // place of L <-> coset g * (DU*HL); canonical reps from split_prime
    for (long pi = 0; pi < ps.count; ++pi) {
        long g = lift_units({ps.place_reps[pi]}, A.center.conductor(), N)[0];
        // any unit lift of the coset rep works: embeddings differing by HL or DU give the same place
        // norm of c: q^deg_v * zeta_N^(root_exp * g * sum of local reps)
        long s_val = deg_v * v_ell_q;  // ell-adic valuation of the norm
        // unit part: q_unit^deg_v * teich(zeta部分)
        // exponent sum
        long esum = 0;
        for (long d : local_gal_reps) esum = (esum + (unsigned __int128)d % N) % N;
        long E = static_cast<long>(((unsigned __int128)root_exp * g % N) * esum % N);
        // split E into ell-part and prime-to-ell part: zeta_N^E = zeta_{ell^a}^{E mod-ish} * zeta_{m'}^{..}
        // write E = E_l * m' * x + E_m * ell^a * y via CRT on the exponent
        long u_mod = 1 % std::max(S.ell_pow, 2L);
        long sign_adjust = 1;
        if (S.ell_pow > 1) u_mod = 1 % S.ell_pow;
        long res_mod_ell = 1 % ell;
        if (E != 0) {
            // order and decomposition of zeta_N^E
            long gcdE = gcd_long(E, N);
            long ordE = N / gcdE;
            long ord_l = 1, ord_m = ordE;
            while (ord_m % ell == 0) {
                ord_m /= ell;
                ord_l *= ell;
            }
            // the value lies in Q_ell only if its ell-power part is at most 2
            if (!((ell == 2 && ord_l <= 2) || ord_l == 1))
                throw domain_error("internal: norm has an ell-power root of unity outside Q_ell");
            // zeta_N^E = zeta_{ordE}^{E/gcdE}; decompose by CRT into order ord_l and ord_m parts
            long e_red = E / gcdE;
            // component exponents: zeta_{ordE}^e = zeta_{ord_l}^{e * inv(ord_m) mod ord_l} * zeta_{ord_m}^{e * inv(ord_l) mod ord_m}
            if (ord_l == 2) sign_adjust = (e_red * mod_inverse(ord_m % 2 == 0 ? 1 : ord_m, 2)) % 2 == 0 ? 1 : -1;
            long em = 0;
            if (ord_m > 1) em = static_cast<long>((unsigned __int128)(e_red % ord_m) * mod_inverse(ord_l % ord_m, ord_m) % ord_m);
            // residue of zeta_{ord_m}^{em} under the standard place
            if (ord_m > 1) {
                long lvl = S.m_prime / ord_m;  // zeta_{ord_m} = zeta_{m'}^{lvl}
                res_mod_ell = residue_of_root_power(S, static_cast<long>((unsigned __int128)lvl * em % S.m_prime));
            }
        }
        // assemble the unit part mod ell^a
        long u = 1;
        if (S.ell_pow > 1) {
            // rational unit part
            long qn = static_cast<long>(mpz_fdiv_ui(q_rat.get_num().get_mpz_t(), S.ell_pow));
            long qd = static_cast<long>(mpz_fdiv_ui(q_rat.get_den().get_mpz_t(), S.ell_pow));
            long qu = static_cast<long>((unsigned __int128)qn * mod_inverse(qd, S.ell_pow) % S.ell_pow);
            u = mod_pow(qu, deg_v, S.ell_pow);
            // teichmuller of the residue
            long t = teichmuller_lift(res_mod_ell % ell, ell, S.ell_pow);
            if (t == 0 && S.ell_pow > 1) t = 1 % S.ell_pow;
            u = static_cast<long>((unsigned __int128)u * t % S.ell_pow);
            if (sign_adjust < 0) u = (S.ell_pow - u) % S.ell_pow;
            (void)u_mod;
        }
        // Artin element: acts by ell^s on the prime-to-ell part, by u^-1 on the ell part
        long art = 1;
        if (N > 1) {
            // ell^s on the prime-to-ell part (s may be negative: reduce by the order)
            long am = 0;
            if (S.m_prime > 1) {
                long base = ell % S.m_prime;
                long ordb = element_order_mod(base, S.m_prime);
                long sv = ((s_val % ordb) + ordb) % ordb;
                am = mod_pow(base, sv, S.m_prime);
            }
            long al = 1;
            if (S.ell_pow > 1) al = mod_inverse(u, S.ell_pow);
            // CRT to a unit mod N
            art = -1;
            for (long k : unit_group_elements(N)) {
                if (S.m_prime > 1 && k % S.m_prime != am % S.m_prime) continue;
                if (S.ell_pow > 1 && k % S.ell_pow != al % S.ell_pow) continue;
                art = k;
                break;
            }
            if (art < 0) throw domain_error("internal: Artin element not found");
        }
        // art must lie in Gal(M/L): in HL mod HM
        if (!subgroup_contains(S.HL, art))
            throw domain_error("internal: Artin image does not fix the center");
        // discrete log against sigma mod HM
        long kdl = -1;
        long cur = 1;
        for (long t = 0; t < n; ++t) {
            // cur * HM == art * HM ?
            long check = static_cast<long>((unsigned __int128)mod_inverse(cur, N) * art % N);
            if (subgroup_contains(S.HM, check)) {
                kdl = t;
                break;
            }
            cur = static_cast<long>((unsigned __int128)cur * sigma % N);
        }
        if (kdl < 0) throw domain_error("internal: Artin image not a power of sigma");
        out.push_back({Place{false, ell, pi, ps.local_degree, ps.e}, mod1(Rat(kdl, n))});
    }
    return out;
}

std::vector<LocalInvariant> cyclic_algebra_infinite_invariants(const CyclicAlgebraPresentation& A) {
    std::vector<LocalInvariant> out;
    const long n = A.degree();
    if (!A.center.is_totally_real()) {
        for (auto& pl : infinite_places(A.center)) out.push_back({pl, Rat(0)});
        return out;
    }
    bool m_real = A.big.is_totally_real();
    auto reps = real_embedding_reps(A.center);
    for (size_t i = 0; i < reps.size(); ++i) {
        Place pl{true, 0, static_cast<long>(i), 1, 1};
        if (m_real || n == 1) {
            out.push_back({pl, Rat(0)});
            continue;
        }
        int sign = real_embedding_sign(A.center, A.constant, reps[i]);
        if (sign == 0) throw domain_error("cyclic algebra constant vanishes");
        out.push_back({pl, sign < 0 ? Rat(1, 2) : Rat(0)});
    }
    return out;
}

std::vector<long> relevant_primes(const CyclicAlgebraPresentation& A) {
    std::set<long> ps;
    for (auto [p, e] : factorize_long(A.big.conductor())) {
        (void)e;
        ps.insert(p);
    }
    auto rr = A.constant.as_root_rat();
    if (rr) {
        for (const Int& part : {Int(rr->scale.get_num()), Int(rr->scale.get_den())}) {
            Int m = abs(part);
            long mm = to_long(m);
            for (auto [p, e] : factorize_long(mm)) {
                (void)e;
                ps.insert(p);
            }
        }
    }
    return {ps.begin(), ps.end()};
}

std::vector<LocalInvariant> cyclic_algebra_invariants(const CyclicAlgebraPresentation& A) {
    std::vector<LocalInvariant> all = cyclic_algebra_infinite_invariants(A);
    for (long p : relevant_primes(A)) {
        auto at = cyclic_algebra_invariants_at(A, p);
        all.insert(all.end(), at.begin(), at.end());
    }
    if (invariant_sum(all) != 0)
        throw domain_error("cyclic algebra invariants violate reciprocity");
    return nonzero_invariants(all);
}

std::vector<LocalInvariant> base_change_invariants(const SubfieldDesc& F,
                                                   const std::vector<LocalInvariant>& invs,
                                                   const SubfieldDesc& L) {
    // group nonzero invariants of E/F by prime; for each place w of L over the prime,
    // find the place of F below it and scale by the local degree ratio
    std::vector<LocalInvariant> out;
    std::set<long> primes;
    bool has_inf = false;
    for (auto& iv : invs) {
        if (iv.place.infinite)
            has_inf = true;
        else
            primes.insert(iv.place.prime);
    }
    if (has_inf) {
        // infinite: real places of L over real places of F; if L is CM all become complex (invariant 0)
        if (L.is_totally_real()) {
            // every real place of F has value 1/2 in the quaternionic case; each real place
            // of L sits over some real place of F with local degree 1
            auto repsL = real_embedding_reps(L);
            auto repsF = real_embedding_reps(F);
            // map: embedding rep g of L restricted to F lies in the coset of some F-rep
            long NL = L.conductor();
            long NF = F.conductor();
            std::vector<long> HFm = F.stabilizer();
            if (NF > 1) HFm.push_back(NF - 1);
            auto HF_pm = NF == 1 ? std::vector<long>{0} : subgroup_closure(NF, HFm);
            for (size_t i = 0; i < repsL.size(); ++i) {
                long g = NF == 1 ? 1 : repsL[i] % NF;
                (void)NL;
                // find F's place index
                long fidx = -1;
                for (size_t j = 0; j < repsF.size(); ++j) {
                    long check = static_cast<long>((unsigned __int128)mod_inverse(repsF[j], std::max(NF, 2L)) * g %
                                                   std::max(NF, 2L));
                    if (NF == 1 || subgroup_contains(HF_pm, check)) {
                        fidx = static_cast<long>(j);
                        break;
                    }
                }
                if (fidx < 0) throw domain_error("base_change: infinite place matching failed");
                for (auto& iv : invs)
                    if (iv.place.infinite && iv.place.index == fidx)
                        out.push_back({Place{true, 0, static_cast<long>(i), 1, 1}, iv.value});
            }
        }
        // complex places of L contribute 0: omitted
    }
    for (long p : primes) {
        PlaceSplit psF = split_prime(F, p);
        PlaceSplit psL = split_prime(L, p);
        long Lc = lcm_long(F.conductor(), L.conductor());
        auto DF = lift_units(psF.decomposition, F.conductor(), Lc);
        for (long wi = 0; wi < psL.count; ++wi) {
            long gw = lift_units({psL.place_reps[wi]}, L.conductor(), Lc)[0];
            long fidx = -1;
            for (long vi = 0; vi < psF.count; ++vi) {
                long gv = lift_units({psF.place_reps[vi]}, F.conductor(), Lc)[0];
                long check = static_cast<long>((unsigned __int128)mod_inverse(gv, Lc) * gw % Lc);
                if (subgroup_contains(DF, check)) {
                    fidx = vi;
                    break;
                }
            }
            if (fidx < 0) throw domain_error("base_change: finite place matching failed");
            Rat val(0);
            for (auto& iv : invs)
                if (!iv.place.infinite && iv.place.prime == p && iv.place.index == fidx) val = iv.value;
            long ratio = psL.local_degree / psF.local_degree;
            if (psL.local_degree % psF.local_degree != 0) {
                // allowed: [L_w : F_v] = [L_w:Q_p] / [F_v:Q_p] need not be integral only
                // when w does not lie over v, which the matching above excludes
                throw domain_error("base_change: local degree not multiplicative");
            }
            out.push_back({Place{false, p, wi, psL.local_degree, psL.e}, mod1(val * Rat(ratio))});
        }
    }
    return out;
}

std::vector<LocalInvariant> hp_infinity_invariants(const SubfieldDesc& F, long p) {
    if (!F.is_totally_real()) throw domain_error("hp_infinity_invariants: center must be totally real");
    std::vector<LocalInvariant> out;
    for (auto& pl : infinite_places(F)) out.push_back({pl, Rat(1, 2)});
    for (auto& pl : finite_places(F, p)) out.push_back({pl, mod1(Rat(pl.local_degree, 2))});
    return out;
}

}  // namespace ramalg
