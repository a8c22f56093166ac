#include "ramalg/subfield.hpp"

#include <sstream>

namespace ramalg {

namespace {
constexpr auto lift_subgroup = lift_units;
}  // namespace

SubfieldDesc::SubfieldDesc(long conductor, std::vector<long> stabilizer_gens)
    : conductor_(conductor) {
    if (conductor_ <= 0) throw domain_error("SubfieldDesc: conductor must be positive");
    while (conductor_ % 4 == 2) conductor_ /= 2;  // Q(zeta_{2m}) = Q(zeta_m), m odd
    stabilizer_ = subgroup_closure(conductor_, stabilizer_gens);
    canonicalize();
}

void SubfieldDesc::canonicalize() {
    bool changed = true;
    while (changed && conductor_ > 1) {
        changed = false;
        for (auto [p, e] : factorize_long(conductor_)) {
            (void)e;
            long M = conductor_ / p;
            if (M % 4 == 2) M /= 2;
            std::vector<long> ker = reduction_kernel(conductor_, M);
            bool contains_ker = true;
            for (long k : ker)
                if (!subgroup_contains(stabilizer_, k)) {
                    contains_ker = false;
                    break;
                }
            if (!contains_ker) continue;
            stabilizer_ = subgroup_project(stabilizer_, conductor_, M);
            conductor_ = M;
            changed = true;
            break;
        }
    }
    if (conductor_ == 1) stabilizer_ = {0};
}

SubfieldDesc SubfieldDesc::min_subfield(const std::vector<CycNumber>& values) {
    if (values.empty()) throw domain_error("min_subfield: empty value set");
    long L = 1;
    for (const CycNumber& v : values) L = lcm_long(L, v.conductor());
    if (L == 1) return rationals();
    std::vector<long> stab;
    for (long k : unit_group_elements(L)) {
        bool fixes = true;
        for (const CycNumber& v : values) {
            long kk = k % v.conductor();
            if (v.galois(kk == 0 ? v.conductor() : kk) != v) {
                fixes = false;
                break;
            }
        }
        if (fixes) stab.push_back(k);
    }
    return SubfieldDesc(L, stab);
}

FieldClass SubfieldDesc::classify() const {
    if (is_totally_real()) return FieldClass::totally_real;
    // abelian and not totally real: the fixed field of <H, -1> is totally real of index 2
    SubfieldDesc plus = totally_real_subfield();
    if (plus.degree() * 2 == degree() && plus.is_totally_real()) return FieldClass::cm;
    return FieldClass::neither;  // unreachable for abelian fields; kept for generality
}

bool SubfieldDesc::contains(const CycNumber& x) const {
    long L = lcm_long(conductor_, x.conductor());
    for (long k : lift_subgroup(stabilizer_, conductor_, L)) {
        long kk = k % x.conductor();
        if (kk == 0) kk = x.conductor();
        if (x.conductor() > 1 && x.galois(kk) != x) return false;
    }
    return true;
}

bool SubfieldDesc::contains_field(const SubfieldDesc& o) const {
    long L = lcm_long(conductor_, o.conductor_);
    std::vector<long> mine = lift_subgroup(stabilizer_, conductor_, L);
    std::vector<long> theirs = lift_subgroup(o.stabilizer_, o.conductor_, L);
    for (long k : mine)
        if (!subgroup_contains(theirs, k)) return false;
    return true;
}

SubfieldDesc SubfieldDesc::compositum(const SubfieldDesc& o) const {
    long L = lcm_long(conductor_, o.conductor_);
    std::vector<long> a = lift_subgroup(stabilizer_, conductor_, L);
    std::vector<long> b = lift_subgroup(o.stabilizer_, o.conductor_, L);
    std::vector<long> inter;
    for (long k : a)
        if (subgroup_contains(b, k)) inter.push_back(k);
    return SubfieldDesc(L, inter);
}

SubfieldDesc SubfieldDesc::intersect(const SubfieldDesc& o) const {
    long L = lcm_long(conductor_, o.conductor_);
    std::vector<long> gens = lift_subgroup(stabilizer_, conductor_, L);
    std::vector<long> b = lift_subgroup(o.stabilizer_, o.conductor_, L);
    gens.insert(gens.end(), b.begin(), b.end());
    return SubfieldDesc(L, gens);
}

SubfieldDesc SubfieldDesc::fixed_by(long k) const {
    if (conductor_ == 1) return *this;
    std::vector<long> gens = stabilizer_;
    gens.push_back(((k % conductor_) + conductor_) % conductor_);
    return SubfieldDesc(conductor_, gens);
}

std::string SubfieldDesc::str() const {
    std::ostringstream os;
    os << "Q(zeta_" << conductor_ << ")^{";
    bool first = true;
    for (long g : stabilizer_generators()) {
        if (!first) os << ",";
        first = false;
        os << g;
    }
    os << "} (degree " << degree() << ")";
    return os.str();
}

PlaceSplit split_prime(const SubfieldDesc& F, long p) {
    if (!is_prime_long(p)) throw domain_error("split_prime: p must be prime");
    PlaceSplit out;
    out.prime = p;
    long N = F.conductor();
    if (N == 1) {
        out.count = 1;
        out.inertia = {0};
        out.decomposition = {0};
        out.place_reps = {0};
        return out;
    }
    long Np = 1;  // p-part of N
    long Nq = N;
    while (Nq % p == 0) {
        Nq /= p;
        Np *= p;
    }
    // inertia: units congruent to 1 mod N', free on the p-part
    std::vector<long> inertia_gens;
    for (long k : unit_group_elements(N))
        if (Nq == 1 || k % Nq == 1 % Nq) inertia_gens.push_back(k);
    // Frobenius lift: 1 mod p-part, p mod N'
    long frob = 1;
    if (Nq > 1) {
        // CRT(1 mod Np, p mod Nq)
        for (long k : unit_group_elements(N))
            if ((Np == 1 || k % Np == 1 % Np) && k % Nq == p % Nq) {
                frob = k;
                break;
            }
    }
    std::vector<long> H = F.stabilizer();
    std::vector<long> igens = inertia_gens;
    igens.insert(igens.end(), H.begin(), H.end());
    out.inertia = subgroup_closure(N, igens);
    std::vector<long> dgens = igens;
    dgens.push_back(frob);
    out.decomposition = subgroup_closure(N, dgens);
    long h = static_cast<long>(H.size());
    out.e = static_cast<long>(out.inertia.size()) / h;
    out.local_degree = static_cast<long>(out.decomposition.size()) / h;
    out.f = out.local_degree / out.e;
    out.count = euler_phi(N) / static_cast<long>(out.decomposition.size());
    out.place_reps = coset_reps(N, out.decomposition);
    return out;
}

int real_embedding_sign(const SubfieldDesc& F, const CycNumber& x, long g) {
    (void)F;
    if (x.is_zero()) return 0;
    CycNumber y = x;
    if (x.conductor() > 1) y = x.galois(g);
    // engine scope: the values whose signs drive infinite invariants are rational
    // times a root of unity, so a real embedded value is plainly rational
    auto rr = y.as_root_rat();
    if (!rr || rr->order != 1)
        throw domain_error("real_embedding_sign: embedded value is not rational (outside engine scope)");
    return sgn(rr->scale);
}

}  // namespace ramalg
