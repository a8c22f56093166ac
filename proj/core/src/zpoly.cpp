#include "ramalg/zpoly.hpp"

#include <algorithm>
#include <random>

namespace ramalg {

QPoly qp_trim(QPoly f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
    return f;
}

long qp_deg(const QPoly& f) { return static_cast<long>(f.size()) - 1; }

QPoly qp_add(const QPoly& a, const QPoly& b) {
    QPoly out(std::max(a.size(), b.size()), Rat(0));
    for (size_t i = 0; i < a.size(); ++i) out[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) out[i] += b[i];
    return qp_trim(out);
}

QPoly qp_sub(const QPoly& a, const QPoly& b) {
    QPoly out(std::max(a.size(), b.size()), Rat(0));
    for (size_t i = 0; i < a.size(); ++i) out[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
    return qp_trim(out);
}

QPoly qp_mul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly out(a.size() + b.size() - 1, Rat(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    return qp_trim(out);
}

QPoly qp_scale(const QPoly& a, const Rat& c) {
    QPoly out = a;
    for (Rat& x : out) x *= c;
    return qp_trim(out);
}

std::pair<QPoly, QPoly> qp_divrem(const QPoly& a, const QPoly& b) {
    if (b.empty()) throw domain_error("polynomial division by zero");
    QPoly rem = qp_trim(a), quot;
    long db = qp_deg(b);
    if (qp_deg(rem) >= db) quot.assign(rem.size() - b.size() + 1, Rat(0));
    while (qp_deg(rem) >= db) {
        long k = qp_deg(rem) - db;
        Rat c = rem.back() / b.back();
        quot[k] = c;
        for (long i = 0; i <= db; ++i) rem[k + i] -= c * b[i];
        rem = qp_trim(rem);
    }
    return {qp_trim(quot), rem};
}

QPoly qp_derivative(const QPoly& a) {
    if (a.size() <= 1) return {};
    QPoly out(a.size() - 1);
    for (size_t i = 1; i < a.size(); ++i) out[i - 1] = a[i] * Rat(static_cast<long>(i));
    return qp_trim(out);
}

QPoly qp_monic(const QPoly& a) {
    if (a.empty()) return a;
    return qp_scale(a, Rat(1) / a.back());
}

QPoly qp_gcd(const QPoly& a, const QPoly& b) {
    QPoly f = qp_trim(a), g = qp_trim(b);
    while (!g.empty()) {
        auto [q, r] = qp_divrem(f, g);
        (void)q;
        f = std::move(g);
        g = std::move(r);
    }
    return f.empty() ? f : qp_monic(f);
}

Rat qp_eval(const QPoly& a, const Rat& x) {
    Rat out(0);
    for (size_t i = a.size(); i-- > 0;) out = out * x + a[i];
    return out;
}

QPoly qp_from_z(const ZPoly& a) {
    QPoly out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = Rat(a[i]);
    return qp_trim(out);
}

ZPoly zp_from_q(const QPoly& a) {
    ZPoly out(a.size());
    for (size_t i = 0; i < a.size(); ++i) {
        if (!is_integer(a[i])) throw domain_error("zp_from_q: non-integer coefficient");
        out[i] = a[i].get_num();
    }
    return out;
}

int quad_sign(const QuadVal& v) {
    int sa = sgn(v.a), sb = sgn(v.b);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    Rat lhs = v.a * v.a, rhs = Rat(v.d) * v.b * v.b;
    int c = cmp(lhs, rhs);
    if (c == 0) return 0;
    return c > 0 ? sa : sb;
}

QuadVal qp_eval_quad(const QPoly& f, const QuadVal& x) {
    QuadVal acc{Rat(0), Rat(0), x.d};
    for (size_t i = f.size(); i-- > 0;) {
        Rat na = acc.a * x.a + acc.b * x.b * Rat(x.d);
        Rat nb = acc.a * x.b + acc.b * x.a;
        acc.a = na + f[i];
        acc.b = nb;
    }
    return acc;
}

std::vector<QPoly> sturm_chain(const QPoly& f) {
    std::vector<QPoly> chain;
    QPoly a = qp_trim(f);
    if (a.empty()) return chain;
    chain.push_back(a);
    QPoly b = qp_derivative(a);
    while (!b.empty()) {
        chain.push_back(b);
        auto [q, r] = qp_divrem(a, b);
        (void)q;
        for (Rat& c : r) c = -c;
        a = std::move(b);
        b = qp_trim(r);
    }
    return chain;
}

long sturm_variations_at(const std::vector<QPoly>& chain, const QuadVal& x, int side) {
    std::vector<int> signs;
    for (const QPoly& f : chain) {
        int s = quad_sign(qp_eval_quad(f, x));
        if (s == 0 && side != 0) {
            // sign of f just off x: lowest nonvanishing derivative decides
            QPoly g = f;
            long k = 0;
            int sd = 0;
            while (true) {
                g = qp_derivative(g);
                ++k;
                if (g.empty()) break;
                sd = quad_sign(qp_eval_quad(g, x));
                if (sd != 0) break;
            }
            if (sd != 0) s = (side < 0 && (k % 2 == 1)) ? -sd : sd;
        }
        signs.push_back(s);
    }
    long var = 0;
    int prev = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++var;
        prev = s;
    }
    return var;
}

QPoly qp_squarefree_part(const QPoly& f) {
    QPoly g = qp_gcd(f, qp_derivative(f));
    if (qp_deg(g) <= 0) return qp_monic(f);
    return qp_monic(qp_divrem(f, g).first);
}

long count_distinct_real_roots_in(const QPoly& f, const QuadVal& lo, const QuadVal& hi) {
    QPoly s = qp_squarefree_part(f);
    if (qp_deg(s) <= 0) return 0;
    auto chain = sturm_chain(s);
    long a = sturm_variations_at(chain, lo, -1);
    long b = sturm_variations_at(chain, hi, +1);
    return a - b;
}

QPoly charpoly(const std::vector<std::vector<Rat>>& m) {
    // Faddeev-LeVerrier, exact
    long n = static_cast<long>(m.size());
    std::vector<std::vector<Rat>> Mk(n, std::vector<Rat>(n, Rat(0)));
    QPoly c(n + 1, Rat(0));
    c[n] = Rat(1);
    for (long k = 1; k <= n; ++k) {
        std::vector<std::vector<Rat>> next(n, std::vector<Rat>(n, Rat(0)));
        for (long i = 0; i < n; ++i)
            for (long j = 0; j < n; ++j) {
                Rat acc(0);
                for (long l = 0; l < n; ++l)
                    if (m[i][l] != 0 && Mk[l][j] != 0) acc += m[i][l] * Mk[l][j];
                next[i][j] = acc;
            }
        for (long i = 0; i < n; ++i) next[i][i] += c[n - k + 1];
        Mk = std::move(next);
        Rat tr(0);
        for (long i = 0; i < n; ++i)
            for (long l = 0; l < n; ++l)
                if (m[i][l] != 0 && Mk[l][i] != 0) tr += m[i][l] * Mk[l][i];
        c[n - k] = -tr / Rat(k);
    }
    return c;
}

// ---------- F_p[x] ----------

namespace {
inline uint64_t mulmod_u(uint64_t a, uint64_t b, uint64_t p) {
    return static_cast<uint64_t>((unsigned __int128)a * b % p);
}
inline uint64_t powmod_u(uint64_t a, uint64_t e, uint64_t p) {
    uint64_t r = 1;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod_u(r, a, p);
        a = mulmod_u(a, a, p);
        e >>= 1;
    }
    return r;
}
inline uint64_t invmod_u(uint64_t a, uint64_t p) { return powmod_u(a, p - 2, p); }
}  // namespace

FpPoly fp_trim(FpPoly f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
    return f;
}

FpPoly fp_from_z(const ZPoly& f, uint64_t p) {
    FpPoly out(f.size());
    Int pp = static_cast<long>(p);
    for (size_t i = 0; i < f.size(); ++i) {
        Int r = f[i] % pp;
        if (r < 0) r += pp;
        out[i] = r.get_ui();
    }
    return fp_trim(out);
}

FpPoly fp_mul(const FpPoly& a, const FpPoly& b, uint64_t p) {
    if (a.empty() || b.empty()) return {};
    FpPoly out(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            out[i + j] = static_cast<uint64_t>((out[i + j] + (unsigned __int128)a[i] * b[j]) % p);
    }
    return fp_trim(out);
}

FpPoly fp_mod(const FpPoly& a, const FpPoly& m, uint64_t p) {
    FpPoly r = fp_trim(a);
    if (m.empty()) throw domain_error("fp_mod by zero");
    uint64_t inv = invmod_u(m.back(), p);
    while (r.size() >= m.size()) {
        uint64_t c = mulmod_u(r.back(), inv, p);
        size_t k = r.size() - m.size();
        for (size_t i = 0; i < m.size(); ++i) {
            uint64_t sub = mulmod_u(c, m[i], p);
            r[k + i] = (r[k + i] + p - sub) % p;
        }
        r = fp_trim(r);
        if (r.empty()) break;
    }
    return r;
}

// exact quotient a / b in F_p[x] (throws when not divisible)
static FpPoly fp_div_exact(const FpPoly& a, const FpPoly& b, uint64_t p) {
    FpPoly rem = fp_trim(a), quot;
    if (rem.size() < b.size()) {
        if (!rem.empty()) throw domain_error("fp_div_exact: not divisible");
        return {};
    }
    quot.assign(rem.size() - b.size() + 1, 0);
    uint64_t inv = invmod_u(b.back(), p);
    while (rem.size() >= b.size()) {
        uint64_t c = mulmod_u(rem.back(), inv, p);
        size_t k = rem.size() - b.size();
        quot[k] = c;
        for (size_t i = 0; i < b.size(); ++i) {
            uint64_t sub = mulmod_u(c, b[i], p);
            rem[k + i] = (rem[k + i] + p - sub) % p;
        }
        rem = fp_trim(rem);
        if (rem.empty()) break;
    }
    if (!rem.empty()) throw domain_error("fp_div_exact: not divisible");
    return fp_trim(quot);
}

FpPoly fp_gcd(FpPoly a, FpPoly b, uint64_t p) {
    a = fp_trim(a);
    b = fp_trim(b);
    while (!b.empty()) {
        FpPoly r = fp_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return fp_monic(a, p);
}

FpPoly fp_monic(const FpPoly& f, uint64_t p) {
    if (f.empty()) return f;
    uint64_t inv = invmod_u(f.back(), p);
    FpPoly out = f;
    for (uint64_t& c : out) c = mulmod_u(c, inv, p);
    return out;
}

FpPoly fp_powmod(const FpPoly& base, const Int& e, const FpPoly& m, uint64_t p) {
    FpPoly r{1};
    FpPoly b = fp_mod(base, m, p);
    Int k = e;
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) r = fp_mod(fp_mul(r, b, p), m, p);
        b = fp_mod(fp_mul(b, b, p), m, p);
        k >>= 1;
    }
    return r;
}

namespace {

FpPoly fp_derivative(const FpPoly& f, uint64_t p) {
    if (f.size() <= 1) return {};
    FpPoly out(f.size() - 1);
    for (size_t i = 1; i < f.size(); ++i) out[i - 1] = mulmod_u(f[i], i % p, p);
    return fp_trim(out);
}

FpPoly fp_sub(const FpPoly& a, const FpPoly& b, uint64_t p) {
    FpPoly out(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) out[i] = (out[i] + p - b[i]) % p;
    return fp_trim(out);
}

// equal-degree splitting; f squarefree, all irreducible factors of degree d
void fp_equal_degree(const FpPoly& f, long d, uint64_t p, std::mt19937_64& rng,
                     std::vector<FpPoly>& out) {
    long n = static_cast<long>(f.size()) - 1;
    if (n == d) {
        out.push_back(fp_monic(f, p));
        return;
    }
    while (true) {
        FpPoly a(n);
        for (long i = 0; i < n; ++i) a[i] = rng() % p;
        a = fp_trim(a);
        if (static_cast<long>(a.size()) <= 1) continue;
        FpPoly g = fp_gcd(a, f, p);
        if (g.size() > 1 && g.size() < f.size()) {
            fp_equal_degree(g, d, p, rng, out);
            fp_equal_degree(fp_div_exact(f, g, p), d, p, rng, out);
            return;
        }
        if (p == 2) {
            // trace map sum_{i<d} a^(2^i), then gcd
            FpPoly acc = fp_mod(a, f, p), t = fp_mod(a, f, p);
            for (long i = 1; i < d; ++i) {
                t = fp_mod(fp_mul(t, t, p), f, p);
                acc = fp_sub(acc, t, p);  // same as xor-add in F_2
            }
            g = fp_gcd(acc, f, p);
        } else {
            Int q = 1;
            for (long i = 0; i < d; ++i) q *= static_cast<long>(p);
            FpPoly b = fp_powmod(a, (q - 1) / 2, f, p);
            if (b.empty()) continue;
            b[0] = (b[0] + p - 1) % p;
            g = fp_gcd(fp_trim(b), f, p);
        }
        if (g.size() > 1 && g.size() < f.size()) {
            fp_equal_degree(g, d, p, rng, out);
            fp_equal_degree(fp_div_exact(f, g, p), d, p, rng, out);
            return;
        }
    }
}

void fp_factor_squarefree(const FpPoly& sf, int mult, uint64_t p, std::mt19937_64& rng,
                          std::vector<std::pair<FpPoly, int>>& out) {
    FpPoly rem = fp_monic(sf, p);
    FpPoly xpd{0, 1};  // x^(p^d) mod rem, maintained incrementally
    long d = 0;
    while (static_cast<long>(rem.size()) - 1 > 0) {
        ++d;
        if (2 * d > static_cast<long>(rem.size()) - 1) {
            out.emplace_back(fp_monic(rem, p), mult);
            break;
        }
        xpd = fp_powmod(xpd, Int(static_cast<long>(p)), rem, p);
        FpPoly diff = xpd;
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = (diff[1] + p - 1) % p;
        FpPoly g = fp_gcd(fp_trim(diff), rem, p);
        if (g.size() > 1) {
            std::vector<FpPoly> pieces;
            fp_equal_degree(g, d, p, rng, pieces);
            for (auto& pc : pieces) out.emplace_back(pc, mult);
            rem = fp_div_exact(rem, g, p);
            xpd = fp_mod(xpd, rem, p);
        }
    }
}

}  // namespace

std::vector<std::pair<FpPoly, int>> fp_factor(const FpPoly& f_in, uint64_t p, uint64_t seed) {
    std::vector<std::pair<FpPoly, int>> out;
    FpPoly f = fp_trim(f_in);
    if (f.size() <= 1) return out;
    f = fp_monic(f, p);
    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + 12345);

    // squarefree decomposition (Yun over F_p, with p-th power descent)
    std::vector<std::pair<FpPoly, int>> parts;
    std::vector<std::pair<FpPoly, int>> work{{f, 1}};
    while (!work.empty()) {
        auto [g, base] = work.back();
        work.pop_back();
        if (g.size() <= 1) continue;
        FpPoly d = fp_derivative(g, p);
        if (d.empty()) {
            FpPoly h((g.size() - 1) / p + 1, 0);
            for (size_t i = 0; i < h.size(); ++i) h[i] = g[i * p];
            work.emplace_back(fp_trim(h), base * static_cast<int>(p));
            continue;
        }
        FpPoly c = fp_gcd(g, d, p);
        FpPoly w = fp_div_exact(g, c, p);
        int i = 1;
        while (w.size() > 1) {
            FpPoly y = fp_gcd(w, c, p);
            FpPoly piece = fp_div_exact(w, y, p);
            if (piece.size() > 1) parts.emplace_back(piece, base * i);
            w = y;
            c = fp_div_exact(c, y, p);
            ++i;
        }
        if (c.size() > 1) work.emplace_back(c, base);
    }

    for (auto& [sf, mult] : parts) fp_factor_squarefree(sf, mult, p, rng, out);
    std::sort(out.begin(), out.end());
    return out;
}

// ---------- Zassenhaus over Z ----------

namespace {

ZPoly zp_trim(ZPoly f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
    return f;
}

ZPoly zp_mul(const ZPoly& a, const ZPoly& b) {
    if (a.empty() || b.empty()) return {};
    ZPoly out(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

std::optional<ZPoly> zp_try_div(const ZPoly& a, const ZPoly& b) {
    auto [q, r] = qp_divrem(qp_from_z(a), qp_from_z(b));
    if (!r.empty()) return std::nullopt;
    for (const Rat& c : q)
        if (!is_integer(c)) return std::nullopt;
    ZPoly out(q.size());
    for (size_t i = 0; i < q.size(); ++i) out[i] = q[i].get_num();
    return out;
}

// f monic squarefree mod p; lift the mod-p factorization to mod p^k (linear Hensel)
std::vector<ZPoly> hensel_lift_monic(const ZPoly& f, const std::vector<FpPoly>& mod_factors,
                                     uint64_t p, int k) {
    Int P = static_cast<long>(p);
    auto centered = [](Int c, const Int& m) {
        c %= m;
        if (c < 0) c += m;
        if (2 * c > m) c -= m;
        return c;
    };
    // pairwise recursive lifting: split the factor list in two halves
    std::function<std::vector<ZPoly>(const ZPoly&, std::vector<FpPoly>)> rec =
        [&](const ZPoly& target, std::vector<FpPoly> parts) -> std::vector<ZPoly> {
        if (parts.size() == 1) return {target};
        size_t half = parts.size() / 2;
        std::vector<FpPoly> lp(parts.begin(), parts.begin() + half);
        std::vector<FpPoly> rp(parts.begin() + half, parts.end());
        FpPoly A{1}, B{1};
        for (auto& x : lp) A = fp_mul(A, x, p);
        for (auto& x : rp) B = fp_mul(B, x, p);
        // Bezout  s*A + t*B = 1 in F_p[x]
        FpPoly r0 = A, r1 = B, s0{1}, s1{}, t0{}, t1{1};
        while (!r1.empty()) {
            FpPoly quot;
            FpPoly rem = r0;
            uint64_t inv = invmod_u(r1.back(), p);
            if (rem.size() >= r1.size()) quot.assign(rem.size() - r1.size() + 1, 0);
            while (rem.size() >= r1.size()) {
                uint64_t c = mulmod_u(rem.back(), inv, p);
                size_t sh = rem.size() - r1.size();
                quot[sh] = c;
                for (size_t i = 0; i < r1.size(); ++i)
                    rem[sh + i] = (rem[sh + i] + p - mulmod_u(c, r1[i], p)) % p;
                rem = fp_trim(rem);
                if (rem.empty()) break;
            }
            FpPoly ns = fp_sub(s0, fp_mul(quot, s1, p), p);
            FpPoly nt = fp_sub(t0, fp_mul(quot, t1, p), p);
            r0 = std::move(r1);
            r1 = std::move(rem);
            s0 = std::move(s1);
            s1 = std::move(ns);
            t0 = std::move(t1);
            t1 = std::move(nt);
        }
        if (r0.size() != 1) throw domain_error("hensel: factors not coprime mod p");
        uint64_t lead_inv = invmod_u(r0[0], p);
        for (auto& c : s0) c = mulmod_u(c, lead_inv, p);
        for (auto& c : t0) c = mulmod_u(c, lead_inv, p);
        // now s0*A + t0*B = 1 mod p

        ZPoly G(A.size()), H(B.size());
        for (size_t i = 0; i < A.size(); ++i) G[i] = static_cast<long>(A[i]);
        for (size_t i = 0; i < B.size(); ++i) H[i] = static_cast<long>(B[i]);
        Int Pj = P;
        for (int step = 1; step < k; ++step) {
            // e = (target - G*H) / p^j  in Z, reduced mod p
            ZPoly prod = zp_mul(G, H);
            ZPoly e(std::max(target.size(), prod.size()), 0);
            for (size_t i = 0; i < target.size(); ++i) e[i] += target[i];
            for (size_t i = 0; i < prod.size(); ++i) e[i] -= prod[i];
            for (Int& c : e) c /= Pj;
            FpPoly ep = fp_from_z(e, p);
            // dG = t0*ep mod A, dH = s0*ep mod B   (degrees stay below deg A, deg B)
            FpPoly dG = fp_mod(fp_mul(t0, ep, p), A, p);
            FpPoly dH = fp_mod(fp_mul(s0, ep, p), B, p);
            for (size_t i = 0; i < dG.size(); ++i) G[i] += Pj * centered(Int(static_cast<long>(dG[i])), P);
            for (size_t i = 0; i < dH.size(); ++i) H[i] += Pj * centered(Int(static_cast<long>(dH[i])), P);
            Pj *= P;
        }
        // center coefficients mod p^k
        Int Pk = 1;
        for (int i = 0; i < k; ++i) Pk *= P;
        for (Int& c : G) c = centered(c, Pk);
        for (Int& c : H) c = centered(c, Pk);
        auto L = rec(G, lp);
        auto R = rec(H, rp);
        L.insert(L.end(), R.begin(), R.end());
        return L;
    };
    return rec(f, mod_factors);
}

// factor a monic squarefree integer polynomial
std::vector<ZPoly> factor_monic_squarefree(const ZPoly& f, uint64_t seed) {
    long n = static_cast<long>(f.size()) - 1;
    if (n <= 1) return {f};
    // pick p with f squarefree mod p
    uint64_t p = 2;
    for (;; p = p == 2 ? 3 : p + 2) {
        if (!is_prime_long(static_cast<long>(p))) continue;
        FpPoly fp = fp_from_z(f, p);
        if (static_cast<long>(fp.size()) - 1 != n) continue;  // lc divisible (monic: impossible)
        if (fp_gcd(fp, fp_derivative(fp, p), p).size() == 1) break;
    }
    FpPoly fp = fp_from_z(f, p);
    auto mod_factors_m = fp_factor(fp, p, seed);
    std::vector<FpPoly> mod_factors;
    for (auto& [g, m] : mod_factors_m) {
        if (m != 1) throw domain_error("factor: squarefree poly not squarefree mod chosen p");
        mod_factors.push_back(g);
    }
    if (mod_factors.size() == 1) return {f};

    // Mignotte-style bound on coefficients of monic factors: 2^n * (sum |a_i|^2)^(1/2)
    Int norm2 = 0;
    for (const Int& c : f) norm2 += c * c;
    Int bound = 1;
    mpz_sqrt(bound.get_mpz_t(), norm2.get_mpz_t());
    bound += 1;
    Int twon = 1;
    twon <<= static_cast<unsigned>(n + 1);
    bound *= twon;
    int k = 1;
    Int Pk = static_cast<long>(p);
    while (Pk < 2 * bound) {
        Pk *= static_cast<long>(p);
        ++k;
    }
    std::vector<ZPoly> lifted = hensel_lift_monic(f, mod_factors, p, k);

    // recombination
    auto centered = [&](Int c) {
        c %= Pk;
        if (c < 0) c += Pk;
        if (2 * c > Pk) c -= Pk;
        return c;
    };
    std::vector<ZPoly> result;
    ZPoly rem_poly = f;
    std::vector<int> alive(lifted.size(), 1);
    size_t alive_count = lifted.size();
    for (size_t card = 1; card <= alive_count && alive_count > 0; ++card) {
        bool progressed = true;
        while (progressed && alive_count >= card) {
            progressed = false;
            // enumerate cardinality-card subsets of alive indices
            std::vector<size_t> idx;
            for (size_t i = 0; i < lifted.size(); ++i)
                if (alive[i]) idx.push_back(i);
            if (idx.size() < card) break;
            std::vector<size_t> comb(card);
            for (size_t i = 0; i < card; ++i) comb[i] = i;
            while (true) {
                ZPoly cand{1};
                for (size_t i : comb) cand = zp_mul(cand, lifted[idx[i]]);
                for (Int& c : cand) c = centered(c);
                auto quot = zp_try_div(rem_poly, cand);
                if (quot) {
                    result.push_back(zp_trim(cand));
                    rem_poly = zp_trim(*quot);
                    for (size_t i : comb) {
                        alive[idx[i]] = 0;
                        --alive_count;
                    }
                    progressed = true;
                    break;
                }
                // next combination
                long pos = static_cast<long>(card) - 1;
                while (pos >= 0 && comb[pos] == idx.size() - card + pos) --pos;
                if (pos < 0) break;
                ++comb[pos];
                for (size_t i = pos + 1; i < card; ++i) comb[i] = comb[i - 1] + 1;
            }
        }
    }
    if (static_cast<long>(rem_poly.size()) - 1 > 0) result.push_back(rem_poly);
    std::sort(result.begin(), result.end(),
              [](const ZPoly& a, const ZPoly& b) { return a.size() != b.size() ? a.size() < b.size() : a < b; });
    return result;
}

}  // namespace

std::vector<ZFactor> factor_z(const ZPoly& f_in) {
    ZPoly f = zp_trim(f_in);
    if (f.empty()) throw domain_error("factor_z: zero polynomial");
    std::vector<ZFactor> out;
    if (f.size() == 1) return out;

    // make primitive
    Int content = 0;
    for (const Int& c : f) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.get_mpz_t());
    if (f.back() < 0) content = -content;
    for (Int& c : f) c /= content;

    // strip x^k
    int xpow = 0;
    while (f[0] == 0) {
        f.erase(f.begin());
        ++xpow;
    }
    if (xpow > 0) out.push_back({ZPoly{0, 1}, xpow});
    if (f.size() == 1) return out;

    // squarefree decomposition over Q (Yun)
    QPoly q = qp_from_z(f);
    QPoly d = qp_derivative(q);
    QPoly a = qp_gcd(q, d);
    QPoly w = qp_divrem(q, a).first;
    QPoly y = qp_divrem(d, a).first;
    QPoly z = qp_sub(y, qp_derivative(w));
    int mult = 1;
    std::vector<std::pair<QPoly, int>> sq_parts;
    while (qp_deg(w) > 0) {
        QPoly g = qp_gcd(w, z);
        if (qp_deg(g) > 0) sq_parts.emplace_back(g, mult);
        w = qp_divrem(w, g).first;
        y = qp_divrem(z, g).first;
        z = qp_sub(y, qp_derivative(w));
        ++mult;
    }

    for (auto& [sq, m] : sq_parts) {
        // sq is monic over Q with rational coefficients; clear denominators and
        // reduce the non-monic case to the monic one via y = lc * x
        QPoly s = sq;
        Int den = 1;
        for (const Rat& c : s) {
            Int dn = c.get_den();
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), dn.get_mpz_t());
        }
        ZPoly sz(s.size());
        for (size_t i = 0; i < s.size(); ++i) {
            Rat c = s[i] * Rat(den);
            sz[i] = c.get_num();
        }
        Int cont = 0;
        for (const Int& c : sz) mpz_gcd(cont.get_mpz_t(), cont.get_mpz_t(), c.get_mpz_t());
        if (sz.back() < 0) cont = -cont;
        for (Int& c : sz) c /= cont;
        Int lc = sz.back();
        std::vector<ZPoly> irr;
        if (lc == 1) {
            irr = factor_monic_squarefree(sz, 1);
        } else {
            // monicize: g(y) = lc^(n-1) f(y/lc), so g[i] = sz[i] * lc^(n-1-i), g[n] = 1
            long n = static_cast<long>(sz.size()) - 1;
            ZPoly g(sz.size());
            g[n] = 1;
            Int pw = 1;
            for (long i = n - 1; i >= 0; --i) {
                g[i] = sz[i] * pw;
                pw *= lc;
            }
            auto mono = factor_monic_squarefree(g, 1);
            for (ZPoly fac : mono) {
                // substitute back: factor of f is the primitive part of fac(lc*x)
                Int pw2 = 1;
                for (size_t i = 0; i < fac.size(); ++i) {
                    fac[i] *= pw2;
                    pw2 *= lc;
                }
                Int c2 = 0;
                for (const Int& c : fac) mpz_gcd(c2.get_mpz_t(), c2.get_mpz_t(), c.get_mpz_t());
                if (fac.back() < 0) c2 = -c2;
                for (Int& c : fac) c /= c2;
                irr.push_back(fac);
            }
        }
        for (auto& fac : irr) out.push_back({fac, m});
    }
    return out;
}

bool is_irreducible_z(const ZPoly& f_in) {
    ZPoly f = zp_trim(f_in);
    if (static_cast<long>(f.size()) - 1 <= 0) return false;
    if (f.size() == 2) return true;
    auto fs = factor_z(f);
    return fs.size() == 1 && fs[0].multiplicity == 1 &&
           fs[0].poly.size() == f.size();
}

}  // namespace ramalg
