#include "ramalg/cyclotomic.hpp"

#include "ramalg/unitgroup.hpp"

#include <atomic>
#include <map>
#include <mutex>
#include <sstream>

namespace ramalg {

namespace {

std::atomic<long> g_conductor_ceiling{10000};

struct CycContext {
    long N;
    long phi;
    std::vector<Int> cyc_poly;           // Phi_N, monic, degree phi
    std::vector<std::vector<Int>> rows;  // x^e mod Phi_N, extended on demand

    void ensure_rows(long e) {
        while (static_cast<long>(rows.size()) <= e) {
            long cur = static_cast<long>(rows.size());
            if (cur < phi) {
                std::vector<Int> r(phi, 0);
                r[cur] = 1;
                rows.push_back(std::move(r));
                continue;
            }
            // x * rows[cur-1] mod Phi_N (Phi monic)
            const std::vector<Int>& prev = rows[cur - 1];
            std::vector<Int> r(phi, 0);
            for (long i = 0; i + 1 < phi; ++i) r[i + 1] = prev[i];
            const Int& top = prev[phi - 1];
            if (top != 0)
                for (long i = 0; i < phi; ++i) r[i] -= top * cyc_poly[i];
            rows.push_back(std::move(r));
        }
    }
};

std::map<long, CycContext>& context_cache() {
    static std::map<long, CycContext> cache;
    return cache;
}
std::recursive_mutex& context_mutex() {
    static std::recursive_mutex m;
    return m;
}

// polynomial long division of x^N - 1 by accumulated cyclotomic factors (exact over Z)
std::vector<Int> poly_div_exact(const std::vector<Int>& num, const std::vector<Int>& den) {
    std::vector<Int> rem = num;
    long dn = static_cast<long>(num.size()) - 1;
    long dd = static_cast<long>(den.size()) - 1;
    std::vector<Int> quot(dn - dd + 1, 0);
    for (long i = dn; i >= dd; --i) {
        Int c = rem[i];  // den monic
        if (c == 0) continue;
        quot[i - dd] = c;
        for (long j = 0; j <= dd; ++j) rem[i - dd + j] -= c * den[j];
    }
    return quot;
}

std::vector<Int> compute_cyclotomic(long N) {
    if (N == 1) return {-1, 1};
    std::vector<Int> acc = {1};  // product of Phi_d, d | N, d < N
    for (long d = 1; d < N; ++d) {
        if (N % d != 0) continue;
        const std::vector<Int>& f = cyclotomic_poly(d);
        std::vector<Int> next(acc.size() + f.size() - 1, 0);
        for (size_t i = 0; i < acc.size(); ++i)
            for (size_t j = 0; j < f.size(); ++j) next[i + j] += acc[i] * f[j];
        acc = std::move(next);
    }
    std::vector<Int> xn1(N + 1, 0);
    xn1[0] = -1;
    xn1[N] = 1;
    return poly_div_exact(xn1, acc);
}

CycContext& context(long N) {
    std::lock_guard<std::recursive_mutex> lk(context_mutex());
    auto it = context_cache().find(N);
    if (it != context_cache().end()) return it->second;
    if (N > g_conductor_ceiling.load())
        throw resource_error("conductor " + std::to_string(N) + " exceeds ceiling " +
                             std::to_string(g_conductor_ceiling.load()));
    CycContext ctx;
    ctx.N = N;
    ctx.phi = euler_phi(N);
    ctx.cyc_poly = compute_cyclotomic(N);
    return context_cache().emplace(N, std::move(ctx)).first->second;
}

// fold a list of (exponent, coefficient) terms at conductor N into power-basis coords
std::vector<Rat> fold_terms(long N, const std::vector<std::pair<long, Rat>>& terms) {
    CycContext& ctx = context(N);
    long maxe = 0;
    for (auto& [e, c] : terms) maxe = std::max(maxe, e);
    std::lock_guard<std::recursive_mutex> lk(context_mutex());
    ctx.ensure_rows(maxe);
    std::vector<Rat> out(ctx.phi, Rat(0));
    for (auto& [e, c] : terms) {
        if (c == 0) continue;
        if (e < ctx.phi) {
            out[e] += c;
            continue;
        }
        const std::vector<Int>& row = ctx.rows[e];
        for (long i = 0; i < ctx.phi; ++i)
            if (row[i] != 0) out[i] += c * Rat(row[i]);
    }
    return out;
}

// remap from conductor 2m (m odd) down to m: zeta_{2m} = -zeta_m^{(m+1)/2}
std::pair<long, std::vector<std::pair<long, Rat>>> fold_even_conductor(
    long N, const std::vector<std::pair<long, Rat>>& terms) {
    long m = N / 2;
    std::vector<std::pair<long, Rat>> out;
    long half = (m + 1) / 2;
    for (auto& [e, c] : terms) {
        Rat cc = (e % 2 == 0) ? c : -c;
        out.emplace_back(static_cast<long>((unsigned __int128)e * half % m), cc);
    }
    return {m, out};
}

}  // namespace

const std::vector<Int>& cyclotomic_poly(long N) { return context(N).cyc_poly; }

std::vector<Int> power_basis_row(long N, long e) {
    CycContext& ctx = context(N);
    std::lock_guard<std::recursive_mutex> lk(context_mutex());
    ctx.ensure_rows(e);
    if (e < ctx.phi) {
        std::vector<Int> r(ctx.phi, 0);
        r[e] = 1;
        return r;
    }
    return ctx.rows[e];
}

int moebius(long n) {
    int out = 1;
    for (auto [p, e] : factorize_long(n)) {
        (void)p;
        if (e > 1) return 0;
        out = -out;
    }
    return out;
}

long CycNumber::conductor_ceiling() { return g_conductor_ceiling.load(); }
void CycNumber::set_conductor_ceiling(long c) { g_conductor_ceiling.store(c); }

CycNumber CycNumber::from_rat(const Rat& q) {
    CycNumber x(1, {q});
    return x;
}

CycNumber CycNumber::root_of_unity(long N, long k) {
    if (N <= 0) throw domain_error("root_of_unity: bad order");
    k = ((k % N) + N) % N;
    long g = gcd_long(k == 0 ? N : k, N);
    // reduce to the exact order of zeta_N^k
    long ord = N / g;
    long e = k / g;
    std::vector<std::pair<long, Rat>> terms{{e, Rat(1)}};
    while (ord % 4 == 2) {
        auto [m, t] = fold_even_conductor(ord, terms);
        ord = m;
        terms = t;
    }
    CycNumber x(ord, fold_terms(ord, terms));
    x.canonicalize();
    return x;
}

CycNumber CycNumber::from_coeffs(long N, std::vector<Rat> coeffs) {
    std::vector<std::pair<long, Rat>> terms;
    for (size_t i = 0; i < coeffs.size(); ++i)
        if (coeffs[i] != 0) terms.emplace_back(static_cast<long>(i), coeffs[i]);
    while (N % 4 == 2) {
        auto [m, t] = fold_even_conductor(N, terms);
        N = m;
        terms = t;
    }
    CycNumber x(N, fold_terms(N, terms));
    x.canonicalize();
    return x;
}

bool CycNumber::is_zero() const {
    for (const Rat& c : coeffs_)
        if (c != 0) return false;
    return true;
}

Rat CycNumber::rational_value() const {
    if (conductor_ != 1) throw domain_error("not a rational value: " + str());
    return coeffs_[0];
}

std::vector<Rat> CycNumber::coeffs_at(long M) const {
    if (M % conductor_ != 0) throw domain_error("coeffs_at: not a multiple of conductor");
    if (M % 4 == 2) throw domain_error("coeffs_at: invalid target conductor");
    long step = M / conductor_;
    std::vector<std::pair<long, Rat>> terms;
    for (size_t i = 0; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0) terms.emplace_back(static_cast<long>(i) * step, coeffs_[i]);
    return fold_terms(M, terms);
}

CycNumber CycNumber::operator+(const CycNumber& o) const {
    long L = lcm_long(conductor_, o.conductor_);
    std::vector<Rat> a = coeffs_at(L), b = o.coeffs_at(L);
    for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    CycNumber x(L, std::move(a));
    x.canonicalize();
    return x;
}

CycNumber CycNumber::operator-(const CycNumber& o) const { return *this + (-o); }

CycNumber CycNumber::operator-() const {
    std::vector<Rat> a = coeffs_;
    for (Rat& c : a) c = -c;
    return CycNumber(conductor_, std::move(a));  // negation preserves canonical form
}

CycNumber CycNumber::operator*(const CycNumber& o) const {
    long L = lcm_long(conductor_, o.conductor_);
    std::vector<Rat> a = coeffs_at(L), b = o.coeffs_at(L);
    long n = static_cast<long>(a.size());
    std::vector<Rat> prod(2 * n - 1, Rat(0));
    for (long i = 0; i < n; ++i) {
        if (a[i] == 0) continue;
        for (long j = 0; j < n; ++j) {
            if (b[j] == 0) continue;
            prod[i + j] += a[i] * b[j];
        }
    }
    std::vector<std::pair<long, Rat>> terms;
    for (long e = 0; e < 2 * n - 1; ++e)
        if (prod[e] != 0) terms.emplace_back(e, prod[e]);
    CycNumber x(L, fold_terms(L, terms));
    x.canonicalize();
    return x;
}

CycNumber CycNumber::inverse() const {
    if (is_zero()) throw domain_error("inversion of zero");
    if (conductor_ == 1) return from_rat(Rat(1) / coeffs_[0]);
    // extended Euclid in Q[x] against Phi_N (irreducible over Q, so gcd = 1)
    const std::vector<Int>& phiN = cyclotomic_poly(conductor_);
    std::vector<Rat> r0(phiN.begin(), phiN.end());
    std::vector<Rat> r1 = coeffs_;
    while (!r1.empty() && r1.back() == 0) r1.pop_back();
    std::vector<Rat> s0{Rat(0)}, s1{Rat(1)};  // s tracks the coefficient of f
    while (true) {
        long d1 = static_cast<long>(r1.size()) - 1;
        if (d1 == 0) break;
        long d0 = static_cast<long>(r0.size()) - 1;
        if (d0 < d1) {
            std::swap(r0, r1);
            std::swap(s0, s1);
            continue;
        }
        // r0 -= (lead ratio) x^(d0-d1) r1 ; same for s
        Rat q = r0.back() / r1.back();
        long shift = d0 - d1;
        for (long i = 0; i <= d1; ++i) r0[i + shift] -= q * r1[i];
        if (s0.size() < s1.size() + shift) s0.resize(s1.size() + shift, Rat(0));
        for (size_t i = 0; i < s1.size(); ++i) s0[i + shift] -= q * s1[i];
        while (!r0.empty() && r0.back() == 0) r0.pop_back();
        if (r0.empty()) throw domain_error("inverse: unexpected zero remainder");
        if (static_cast<long>(r0.size()) - 1 < d1) {
            std::swap(r0, r1);
            std::swap(s0, s1);
        }
    }
    Rat c = r1[0];
    std::vector<std::pair<long, Rat>> terms;
    for (size_t i = 0; i < s1.size(); ++i)
        if (s1[i] != 0) terms.emplace_back(static_cast<long>(i), s1[i] / c);
    CycNumber x(conductor_, fold_terms(conductor_, terms));
    x.canonicalize();
    return x;
}

CycNumber CycNumber::galois(long k) const {
    if (conductor_ == 1) return *this;
    k = ((k % conductor_) + conductor_) % conductor_;
    if (gcd_long(k, conductor_) != 1) throw domain_error("galois: exponent not coprime to conductor");
    std::vector<std::pair<long, Rat>> terms;
    for (size_t i = 0; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0)
            terms.emplace_back(static_cast<long>((unsigned __int128)i * k % conductor_), coeffs_[i]);
    CycNumber x(conductor_, fold_terms(conductor_, terms));
    x.canonicalize();
    return x;
}

CycNumber CycNumber::conj() const { return galois(conductor_ - 1); }

Rat CycNumber::trace_to_q() const {
    // Tr(zeta_N^i) = mu(N/g) * phi(N)/phi(N/g), g = gcd(i, N)
    Rat out(0);
    long phiN = euler_phi(conductor_);
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        long g = gcd_long(static_cast<long>(i), conductor_);
        if (i == 0) g = conductor_;
        long m = conductor_ / g;
        out += coeffs_[i] * Rat(moebius(m) * (phiN / euler_phi(m)));
    }
    return out;
}

void CycNumber::canonicalize() {
    // descend to the minimal conductor, one prime at a time
    bool changed = true;
    while (changed && conductor_ > 1) {
        changed = false;
        for (auto [p, e] : factorize_long(conductor_)) {
            (void)e;
            long M = conductor_ / p;
            if (M % 4 == 2) M /= 2;
            if (M == conductor_) continue;
            // fixed by Gal(Q(zeta_N)/Q(zeta_M)) = {k = 1 mod M}?
            bool fixed = true;
            for (long k : reduction_kernel(conductor_, M)) {
                if (k == 1 % conductor_) continue;
                if (galois_raw(k) != coeffs_) {
                    fixed = false;
                    break;
                }
            }
            if (!fixed) continue;
            rebase_to(M);
            changed = true;
            break;
        }
    }
    if (conductor_ == 1 && coeffs_.empty()) coeffs_.assign(1, Rat(0));
}

std::string CycNumber::str() const {
    std::ostringstream os;
    if (is_zero()) return "0";
    bool first = true;
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        if (!first) os << " + ";
        first = false;
        os << coeffs_[i].get_str();
        if (i > 0) os << "*z" << conductor_ << "^" << i;
    }
    return os.str();
}

bool CycNumber::operator<(const CycNumber& o) const {
    if (conductor_ != o.conductor_) return conductor_ < o.conductor_;
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        int c = cmp(coeffs_[i], o.coeffs_[i]);
        if (c != 0) return c < 0;
    }
    return false;
}

std::optional<CycNumber::RootRat> CycNumber::as_root_rat() const {
    if (is_zero()) return RootRat{Rat(0), 1, 0};
    if (conductor_ == 1) return RootRat{coeffs_[0], 1, 0};
    long N = conductor_;
    for (long j = 1; j < N; ++j) {
        if (gcd_long(j, N) != 1 && j != 0) {
            // exponent need not be coprime to N a priori, but a nonrational value
            // q*zeta_N^j in canonical form at conductor N has ord(zeta^j)'s field = Q(zeta_N),
            // so only coprime j can occur
            continue;
        }
        CycNumber cand = *this * root_of_unity(N, N - j);
        if (cand.conductor_ == 1) return RootRat{cand.coeffs_[0], N, j};
    }
    return std::nullopt;
}

CycNumber CycNumber::sqrt_of_rational(const Rat& q) {
    if (q == 0) return from_rat(Rat(0));
    // sqrt(num/den) = sqrt(num*den)/den
    Int m = q.get_num() * q.get_den();
    bool neg = m < 0;
    if (neg) m = -m;
    CycNumber root = from_rat(Rat(1));
    Int rest = m;
    for (long p = 2; Int(p) * p <= rest; ++p) {
        if (rest % p != 0) continue;
        int e = 0;
        while (rest % p == 0) {
            rest /= p;
            ++e;
        }
        Int pe;
        mpz_pow_ui(pe.get_mpz_t(), Int(p).get_mpz_t(), e / 2);
        root = root * from_rat(Rat(pe));
        if (e % 2 == 1) root = root * sqrt_of_prime(p);
    }
    if (rest > 1) {
        long p = to_long(rest);
        root = root * sqrt_of_prime(p);
    }
    if (neg) root = root * root_of_unity(4, 1);
    root = root * from_rat(Rat(1) / Rat(q.get_den()));
    if (root * root != from_rat(q)) throw domain_error("sqrt_of_rational: internal check failed");
    return root;
}

CycNumber CycNumber::sqrt_of_prime(long p) {
    if (p == 2) {
        // zeta_8 + zeta_8^-1
        return root_of_unity(8, 1) + root_of_unity(8, 7);
    }
    // quadratic Gauss sum: sum_t (t/p) zeta_p^t equals sqrt(p) or i*sqrt(p)
    std::vector<Rat> coeffs(euler_phi(p), Rat(0));
    std::vector<std::pair<long, Rat>> terms;
    for (long t = 1; t < p; ++t) {
        long ls = mod_pow(t, (p - 1) / 2, p) == 1 ? 1 : -1;
        terms.emplace_back(t, Rat(ls));
    }
    CycNumber g = from_coeffs(p, fold_terms(p, terms));
    if (p % 4 == 1) return g;
    return g * root_of_unity(4, 3);  // divide by i
}

std::vector<Rat> CycNumber::galois_raw(long k) const {
    std::vector<std::pair<long, Rat>> terms;
    for (size_t i = 0; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0)
            terms.emplace_back(static_cast<long>((unsigned __int128)i * k % conductor_), coeffs_[i]);
    return fold_terms(conductor_, terms);
}

void CycNumber::rebase_to(long M) {
    // express this element (known to lie in Q(zeta_M)) on the smaller power basis:
    // solve sum_j c_j zeta_N^{j*(N/M)} = this
    long N = conductor_;
    long phiM = euler_phi(M);
    long phiN = euler_phi(N);
    long step = N / M;
    std::vector<std::vector<Rat>> A(phiN, std::vector<Rat>(phiM + 1, Rat(0)));
    for (long j = 0; j < phiM; ++j) {
        std::vector<Int> row = power_basis_row(N, j * step);
        for (long i = 0; i < phiN; ++i) A[i][j] = Rat(row[i]);
    }
    for (long i = 0; i < phiN; ++i) A[i][phiM] = coeffs_[i];
    // Gaussian elimination (system is consistent with a unique solution)
    long rank = 0;
    std::vector<long> pivot_col(phiN, -1);
    for (long col = 0; col < phiM && rank < phiN; ++col) {
        long piv = -1;
        for (long r = rank; r < phiN; ++r)
            if (A[r][col] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(A[piv], A[rank]);
        Rat inv = Rat(1) / A[rank][col];
        for (long c = col; c <= phiM; ++c) A[rank][c] *= inv;
        for (long r = 0; r < phiN; ++r) {
            if (r == rank || A[r][col] == 0) continue;
            Rat f = A[r][col];
            for (long c = col; c <= phiM; ++c) A[r][c] -= f * A[rank][c];
        }
        pivot_col[rank] = col;
        ++rank;
    }
    std::vector<Rat> sol(phiM, Rat(0));
    for (long r = 0; r < rank; ++r) sol[pivot_col[r]] = A[r][phiM];
    for (long r = rank; r < phiN; ++r)
        if (A[r][phiM] != 0) throw domain_error("rebase: inconsistent system");
    conductor_ = M;
    coeffs_ = std::move(sol);
}

}  // namespace ramalg
