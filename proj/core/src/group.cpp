#include "ramalg/group.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <map>
#include <set>

namespace ramalg {

namespace {
std::atomic<long> g_order_ceiling{2000};

long env_ceiling() {
    static long v = [] {
        const char* s = std::getenv("RAMALG_MAX_GROUP_ORDER");
        return s ? std::atol(s) : 0L;
    }();
    return v;
}
}  // namespace

long FiniteGroup::order_ceiling() {
    long e = env_ceiling();
    return e > 0 ? e : g_order_ceiling.load();
}
void FiniteGroup::set_order_ceiling(long c) { g_order_ceiling.store(c); }

GroupPtr FiniteGroup::finalize(std::vector<long> table, long order, std::vector<long> gens,
                               std::string label, bool check_associativity) {
    if (order > order_ceiling())
        throw resource_error("group order " + std::to_string(order) + " exceeds ceiling " +
                             std::to_string(order_ceiling()));
    auto g = std::make_shared<FiniteGroup>();
    FiniteGroup& G = const_cast<FiniteGroup&>(*g);
    G.order_ = order;
    G.table_ = std::move(table);
    G.label_ = std::move(label);

    auto at = [&](long a, long b) { return G.table_[a * order + b]; };

    // identity and Latin-square validation
    for (long a = 0; a < order; ++a) {
        if (at(0, a) != a || at(a, 0) != a) throw domain_error("index 0 is not an identity");
        std::vector<char> seen_row(order, 0), seen_col(order, 0);
        for (long b = 0; b < order; ++b) {
            long r = at(a, b), c = at(b, a);
            if (r < 0 || r >= order || c < 0 || c >= order) throw domain_error("table entry out of range");
            if (seen_row[r]++ || seen_col[c]++) throw domain_error("multiplication table is not a Latin square");
        }
    }
    // inverses
    G.inv_.assign(order, -1);
    for (long a = 0; a < order; ++a)
        for (long b = 0; b < order; ++b)
            if (at(a, b) == 0) {
                if (at(b, a) != 0) throw domain_error("one-sided inverse");
                G.inv_[a] = b;
                break;
            }
    for (long a = 0; a < order; ++a)
        if (G.inv_[a] < 0) throw domain_error("missing inverse");

    // greedy generating set (used by Light's associativity test and as the default)
    if (gens.empty() && order > 1) {
        std::vector<char> have(order, 0);
        have[0] = 1;
        long covered = 1;
        while (covered < order) {
            long pick = -1;
            for (long x = 1; x < order; ++x)
                if (!have[x]) {
                    pick = x;
                    break;
                }
            gens.push_back(pick);
            // close
            std::vector<long> frontier{0};
            std::vector<char> nh(order, 0);
            nh[0] = 1;
            covered = 1;
            std::vector<long> stack{0};
            while (!stack.empty()) {
                long x = stack.back();
                stack.pop_back();
                for (long gg : gens) {
                    long y = at(x, gg);
                    if (!nh[y]) {
                        nh[y] = 1;
                        ++covered;
                        stack.push_back(y);
                    }
                }
            }
            have = nh;
        }
    }
    G.gens_ = gens;

    if (check_associativity) {
        // Light's test: associativity on a generating set suffices
        for (long gg : G.gens_)
            for (long a = 0; a < order; ++a)
                for (long b = 0; b < order; ++b)
                    if (at(at(a, gg), b) != at(a, at(gg, b)))
                        throw domain_error("multiplication table is not associative");
    }

    // element orders and exponent
    G.orders_.assign(order, 1);
    for (long a = 0; a < order; ++a) {
        long x = a, o = 1;
        while (x != 0) {
            x = at(x, a);
            ++o;
        }
        G.orders_[a] = o;
        G.exponent_ = lcm_long(G.exponent_, o);
    }

    // conjugacy classes, ordered by minimal element index
    G.class_of_.assign(order, -1);
    for (long a = 0; a < order; ++a) {
        if (G.class_of_[a] >= 0) continue;
        long id = static_cast<long>(G.classes_.size());
        std::set<long> cls;
        for (long t = 0; t < order; ++t) cls.insert(at(at(t, a), G.inv_[t]));
        ConjClass c;
        c.rep = *cls.begin();
        c.elements.assign(cls.begin(), cls.end());
        for (long x : c.elements) G.class_of_[x] = id;
        G.classes_.push_back(std::move(c));
    }
    return g;
}

long FiniteGroup::pow(long a, long k) const {
    long o = orders_[a];
    k %= o;
    if (k < 0) k += o;
    long acc = 0;
    long base = a;
    while (k > 0) {
        if (k & 1) acc = mul(acc, base);
        base = mul(base, base);
        k >>= 1;
    }
    return acc;
}

bool FiniteGroup::is_abelian() const {
    for (long g : gens_)
        for (long h : gens_)
            if (mul(g, h) != mul(h, g)) return false;
    return true;
}

std::optional<long> FiniteGroup::cyclic_generator() const {
    for (long a = 0; a < order_; ++a)
        if (orders_[a] == order_) return a;
    return std::nullopt;
}

std::vector<long> FiniteGroup::subgroup_closure(std::vector<long> seed) const {
    std::set<long> have{0};
    std::vector<long> stack{0};
    for (long s : seed)
        if (have.insert(s).second) stack.push_back(s);
    while (!stack.empty()) {
        long x = stack.back();
        stack.pop_back();
        for (long s : seed) {
            long y = mul(x, s);
            if (have.insert(y).second) stack.push_back(y);
            long z = mul(x, inv(s));
            if (have.insert(z).second) stack.push_back(z);
        }
    }
    return {have.begin(), have.end()};
}

std::vector<long> FiniteGroup::derived_subgroup() const {
    std::set<long> comms;
    for (long a = 0; a < order_; ++a)
        for (long b = 0; b < order_; ++b)
            comms.insert(mul(mul(a, b), mul(inv(a), inv(b))));
    return subgroup_closure({comms.begin(), comms.end()});
}

std::vector<long> FiniteGroup::center() const {
    std::vector<long> out;
    for (long a = 0; a < order_; ++a) {
        bool central = true;
        for (long g : gens_)
            if (mul(a, g) != mul(g, a)) {
                central = false;
                break;
            }
        if (central) out.push_back(a);
    }
    return out;
}

bool FiniteGroup::is_subgroup_set(const std::vector<long>& elems) const {
    if (elems.empty() || elems[0] != 0) return false;
    for (long a : elems)
        for (long b : elems)
            if (!std::binary_search(elems.begin(), elems.end(), mul(a, b))) return false;
    return true;
}

bool FiniteGroup::is_normal_set(const std::vector<long>& elems) const {
    for (long g = 0; g < order_; ++g)
        for (long x : elems)
            if (!std::binary_search(elems.begin(), elems.end(), conj_by(g, x))) return false;
    return true;
}

GroupPtr FiniteGroup::from_table(const std::vector<std::vector<long>>& table, std::string label) {
    long n = static_cast<long>(table.size());
    std::vector<long> flat(n * n);
    for (long i = 0; i < n; ++i) {
        if (static_cast<long>(table[i].size()) != n) throw domain_error("ragged multiplication table");
        for (long j = 0; j < n; ++j) flat[i * n + j] = table[i][j];
    }
    return finalize(std::move(flat), n, {}, std::move(label), true);
}

GroupPtr FiniteGroup::from_permutations(long degree, const std::vector<std::vector<long>>& gens,
                                        std::string label) {
    for (const auto& g : gens) {
        if (static_cast<long>(g.size()) != degree) throw domain_error("permutation degree mismatch");
        std::vector<char> seen(degree, 0);
        for (long v : g) {
            if (v < 0 || v >= degree || seen[v]++) throw domain_error("not a permutation");
        }
    }
    std::vector<long> idperm(degree);
    for (long i = 0; i < degree; ++i) idperm[i] = i;
    std::map<std::vector<long>, long> index;
    std::vector<std::vector<long>> elems{idperm};
    index[idperm] = 0;
    std::vector<long> queue{0};
    while (!queue.empty()) {
        long x = queue.back();
        queue.pop_back();
        for (const auto& g : gens) {
            std::vector<long> y(degree);
            for (long i = 0; i < degree; ++i) y[i] = g[elems[x][i]];
            if (!index.count(y)) {
                long id = static_cast<long>(elems.size());
                if (id >= order_ceiling())
                    throw resource_error("permutation group exceeds the order ceiling");
                index[y] = id;
                elems.push_back(y);
                queue.push_back(id);
            }
        }
    }
    long n = static_cast<long>(elems.size());
    std::vector<long> flat(n * n);
    for (long a = 0; a < n; ++a)
        for (long b = 0; b < n; ++b) {
            std::vector<long> y(degree);
            for (long i = 0; i < degree; ++i) y[i] = elems[a][elems[b][i]];
            flat[a * n + b] = index.at(y);
        }
    std::vector<long> gidx;
    for (const auto& g : gens) gidx.push_back(index.at(g));
    return finalize(std::move(flat), n, gidx, std::move(label), false);
}

GroupPtr FiniteGroup::cyclic(long n) {
    if (n <= 0) throw domain_error("cyclic: order must be positive");
    std::vector<long> flat(n * n);
    for (long a = 0; a < n; ++a)
        for (long b = 0; b < n; ++b) flat[a * n + b] = (a + b) % n;
    std::vector<long> gens;
    if (n > 1) gens.push_back(1);
    return finalize(std::move(flat), n, gens, "cyclic(" + std::to_string(n) + ")", false);
}

GroupPtr FiniteGroup::dihedral(long n) {
    if (n <= 0) throw domain_error("dihedral: n must be positive");
    long N = 2 * n;
    // element eps*n + i  <->  r^i s^eps,  s r s = r^-1
    auto idx = [&](long eps, long i) { return eps * n + ((i % n) + n) % n; };
    std::vector<long> flat(N * N);
    for (long e1 = 0; e1 < 2; ++e1)
        for (long i1 = 0; i1 < n; ++i1)
            for (long e2 = 0; e2 < 2; ++e2)
                for (long i2 = 0; i2 < n; ++i2)
                    flat[idx(e1, i1) * N + idx(e2, i2)] =
                        idx((e1 + e2) % 2, i1 + (e1 ? -i2 : i2));
    std::vector<long> gens;
    if (n > 1) gens.push_back(1);
    gens.push_back(n);
    return finalize(std::move(flat), N, gens, "dihedral(" + std::to_string(n) + ")", false);
}

GroupPtr FiniteGroup::generalized_quaternion(long n) {
    if (n < 8 || (n & (n - 1)) != 0)
        throw domain_error("generalized_quaternion: order must be 2^k, k >= 3");
    long half = n / 2, quarter = n / 4;
    // element eps*half + i <-> a^i b^eps,  b a b^-1 = a^-1,  b^2 = a^(n/4)
    auto idx = [&](long eps, long i) { return eps * half + ((i % half) + half) % half; };
    std::vector<long> flat(n * n);
    for (long e1 = 0; e1 < 2; ++e1)
        for (long i1 = 0; i1 < half; ++i1)
            for (long e2 = 0; e2 < 2; ++e2)
                for (long i2 = 0; i2 < half; ++i2) {
                    long i = i1 + (e1 ? -i2 : i2);
                    if (e1 && e2) i += quarter;  // b^2 = a^(n/4)
                    flat[idx(e1, i1) * n + idx(e2, i2)] = idx((e1 + e2) % 2, i);
                }
    return finalize(std::move(flat), n, {1, half},
                    "gen_quaternion(" + std::to_string(n) + ")", false);
}

GroupPtr FiniteGroup::direct_product(const std::vector<GroupPtr>& factors) {
    if (factors.empty()) return cyclic(1);
    GroupPtr acc = factors[0];
    for (size_t k = 1; k < factors.size(); ++k) {
        const FiniteGroup& A = *acc;
        const FiniteGroup& B = *factors[k];
        long na = A.order(), nb = B.order(), n = na * nb;
        if (n > order_ceiling()) throw resource_error("direct product exceeds the order ceiling");
        std::vector<long> flat(n * n);
        for (long a1 = 0; a1 < na; ++a1)
            for (long b1 = 0; b1 < nb; ++b1)
                for (long a2 = 0; a2 < na; ++a2)
                    for (long b2 = 0; b2 < nb; ++b2)
                        flat[(a1 * nb + b1) * n + (a2 * nb + b2)] =
                            A.mul(a1, a2) * nb + B.mul(b1, b2);
        std::vector<long> gens;
        for (long g : A.generators()) gens.push_back(g * nb);
        for (long g : B.generators()) gens.push_back(g);
        acc = finalize(std::move(flat), n, gens, A.label() + "x" + B.label(), false);
    }
    return acc;
}

namespace {

// extend generator images to a full map via words in the generators
std::vector<long> extend_generator_map(const FiniteGroup& N, const std::vector<long>& images) {
    const std::vector<long>& gens = N.generators();
    if (images.size() != gens.size())
        throw domain_error("action must list one image per generator");
    std::vector<long> phi(N.order(), -1);
    phi[0] = 0;
    std::vector<long> stack{0};
    while (!stack.empty()) {
        long x = stack.back();
        stack.pop_back();
        for (size_t i = 0; i < gens.size(); ++i) {
            long y = N.mul(x, gens[i]);
            if (phi[y] < 0) {
                phi[y] = N.mul(phi[x], images[i]);
                stack.push_back(y);
            }
            long z = N.mul(x, N.inv(gens[i]));
            if (phi[z] < 0) {
                phi[z] = N.mul(phi[x], N.inv(images[i]));
                stack.push_back(z);
            }
        }
    }
    for (long v : phi)
        if (v < 0) throw domain_error("generators do not generate the group");
    return phi;
}

}  // namespace

GroupPtr FiniteGroup::semidirect(const GroupPtr& normal, long m, const std::vector<long>& action) {
    const FiniteGroup& N = *normal;
    if (m <= 0) throw domain_error("semidirect: m must be positive");
    std::vector<long> phi = extend_generator_map(N, action);
    // automorphism checks
    {
        std::vector<char> seen(N.order(), 0);
        for (long v : phi) {
            if (seen[v]++) throw domain_error("action is not bijective");
        }
        for (long a = 0; a < N.order(); ++a)
            for (long b = 0; b < N.order(); ++b)
                if (phi[N.mul(a, b)] != N.mul(phi[a], phi[b]))
                    throw domain_error("action is not an automorphism");
    }
    // powers of phi; phi^m must be the identity
    std::vector<std::vector<long>> powers(m);
    powers[0].resize(N.order());
    for (long i = 0; i < N.order(); ++i) powers[0][i] = i;
    for (long j = 1; j < m; ++j) {
        powers[j].resize(N.order());
        for (long i = 0; i < N.order(); ++i) powers[j][i] = phi[powers[j - 1][i]];
    }
    for (long i = 0; i < N.order(); ++i)
        if (phi[powers[m - 1][i]] != i)
            throw domain_error("action order does not divide m");

    long n = N.order() * m;
    if (n > order_ceiling()) throw resource_error("semidirect product exceeds the order ceiling");
    // element u*m + j <-> (u, t^j), (u1,j1)(u2,j2) = (u1 * phi^j1(u2), j1+j2)
    std::vector<long> flat(n * n);
    for (long u1 = 0; u1 < N.order(); ++u1)
        for (long j1 = 0; j1 < m; ++j1)
            for (long u2 = 0; u2 < N.order(); ++u2)
                for (long j2 = 0; j2 < m; ++j2)
                    flat[(u1 * m + j1) * n + (u2 * m + j2)] =
                        N.mul(u1, powers[j1][u2]) * m + (j1 + j2) % m;
    std::vector<long> gens;
    for (long g : N.generators()) gens.push_back(g * m);
    if (m > 1) gens.push_back(1);  // (e, t)
    return finalize(std::move(flat), n, gens,
                    N.label() + " x| Z/" + std::to_string(m), false);
}

GroupPtr FiniteGroup::wreath_by_c2(const GroupPtr& base) {
    GroupPtr square = direct_product({base, base});
    // swap action on the generators of base x base
    const FiniteGroup& B = *base;
    long nb = B.order();
    std::vector<long> action;
    for (long g : B.generators()) action.push_back(g);            // (g, e) -> (e, g)
    for (long g : B.generators()) action.push_back(g * nb);       // (e, g) -> (g, e)
    GroupPtr out = semidirect(square, 2, action);
    const_cast<FiniteGroup&>(*out).label_ = B.label() + " wr Z/2";
    return out;
}

std::pair<GroupPtr, std::vector<long>> FiniteGroup::subgroup_as_group(const GroupPtr& g,
                                                                      const std::vector<long>& elems,
                                                                      std::string label) {
    const FiniteGroup& G = *g;
    if (!G.is_subgroup_set(elems)) throw domain_error("subgroup_as_group: not a subgroup");
    long n = static_cast<long>(elems.size());
    std::map<long, long> to_sub;
    for (long i = 0; i < n; ++i) to_sub[elems[i]] = i;
    std::vector<long> flat(n * n);
    for (long a = 0; a < n; ++a)
        for (long b = 0; b < n; ++b) flat[a * n + b] = to_sub.at(G.mul(elems[a], elems[b]));
    return {finalize(std::move(flat), n, {}, std::move(label), false), elems};
}

std::pair<GroupPtr, std::vector<long>> FiniteGroup::quotient(const GroupPtr& g,
                                                             const std::vector<long>& normal_elems) {
    const FiniteGroup& G = *g;
    if (!G.is_subgroup_set(normal_elems) || !G.is_normal_set(normal_elems))
        throw domain_error("quotient: subgroup is not normal");
    std::vector<long> coset_of(G.order(), -1);
    std::vector<long> reps;
    for (long a = 0; a < G.order(); ++a) {
        if (coset_of[a] >= 0) continue;
        long id = static_cast<long>(reps.size());
        reps.push_back(a);
        for (long h : normal_elems) coset_of[G.mul(a, h)] = id;
    }
    long n = static_cast<long>(reps.size());
    std::vector<long> flat(n * n);
    for (long a = 0; a < n; ++a)
        for (long b = 0; b < n; ++b) flat[a * n + b] = coset_of[G.mul(reps[a], reps[b])];
    return {finalize(std::move(flat), n, {}, g->label() + "/N", false), coset_of};
}

bool NormalSubgroup::contains(long x) const {
    return std::binary_search(elements.begin(), elements.end(), x);
}

NormalSubgroup make_normal_subgroup(const GroupPtr& g, std::vector<long> elements) {
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    if (!g->is_subgroup_set(elements)) throw domain_error("not a subgroup");
    if (!g->is_normal_set(elements)) throw domain_error("subgroup is not normal");
    return NormalSubgroup{g, std::move(elements)};
}

NormalSubgroup joint_kernel(const GroupPtr& g, const std::vector<NormalSubgroup>& kernels) {
    std::vector<long> acc;
    if (kernels.empty()) {
        acc.resize(g->order());
        for (long i = 0; i < g->order(); ++i) acc[i] = i;
        return NormalSubgroup{g, acc};
    }
    acc = kernels[0].elements;
    for (size_t i = 1; i < kernels.size(); ++i) {
        std::vector<long> next;
        std::set_intersection(acc.begin(), acc.end(), kernels[i].elements.begin(),
                              kernels[i].elements.end(), std::back_inserter(next));
        acc = std::move(next);
    }
    return NormalSubgroup{g, acc};
}

RamificationCheck ramification_check(const GroupPtr& g, long p) {
    const FiniteGroup& G = *g;
    RamificationCheck out;
    out.p = p;
    if (p == 0) {
        auto gen = G.cyclic_generator();
        if (!gen) {
            out.reason = "p = 0 requires a cyclic group";
            return out;
        }
        out.ok = true;
        out.gamma = {0};
        out.n = G.order();
        out.complement_gen = *gen;
        return out;
    }
    if (!is_prime_long(p)) throw domain_error("ramification_check: p must be prime or 0");
    long ppart = 1, rest = G.order();
    while (rest % p == 0) {
        rest /= p;
        ppart *= p;
    }
    // the p-elements form the unique Sylow exactly when their count is the p-part
    std::vector<long> pelems;
    for (long a = 0; a < G.order(); ++a) {
        long o = G.element_order(a);
        while (o % p == 0) o /= p;
        if (o == 1) pelems.push_back(a);
    }
    if (static_cast<long>(pelems.size()) != ppart) {
        out.reason = "Sylow " + std::to_string(p) + "-subgroup not normal";
        return out;
    }
    if (!G.is_subgroup_set(pelems)) {
        out.reason = "internal: p-elements do not close";  // cannot happen when count matches
        return out;
    }
    // cyclic complement: any element of order |G| / p-part works, since its cyclic
    // subgroup has order coprime to p and meets the Sylow trivially
    long n = rest;
    long gen = -1;
    if (n == 1) gen = 0;
    for (long a = 0; a < G.order() && gen < 0; ++a)
        if (G.element_order(a) == n) gen = a;
    if (gen < 0) {
        out.reason = "no cyclic complement of order " + std::to_string(n);
        return out;
    }
    out.ok = true;
    out.gamma = pelems;
    out.n = n;
    out.complement_gen = gen;
    return out;
}

}  // namespace ramalg
