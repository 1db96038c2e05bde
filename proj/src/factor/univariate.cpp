#include "circpoly/univariate.hpp"

#include "circpoly/error.hpp"

#include <algorithm>
#include <random>

namespace circpoly {

namespace zp {

std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t pow(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mul(r, a, p);
        a = mul(a, a, p);
        e >>= 1;
    }
    return r;
}

std::uint64_t inverse(std::uint64_t a, std::uint64_t p) {
    if (a % p == 0) throw Error(Errc::InvalidArgument, "inverse of zero modulo p");
    return pow(a, p - 2, p);
}

namespace {

std::uint64_t add(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    const std::uint64_t s = a + b;
    return s >= p ? s - p : s;
}

std::uint64_t sub(std::uint64_t a, std::uint64_t b, std::uint64_t p) { return a >= b ? a - b : a + p - b; }

Poly sub_poly(Poly a, const Poly& b, std::uint64_t p) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t k = 0; k < b.size(); ++k) a[k] = sub(a[k], b[k], p);
    trim(a);
    return a;
}

Poly derivative(const Poly& a, std::uint64_t p) {
    Poly d;
    for (std::size_t k = 1; k < a.size(); ++k) d.push_back(mul(a[k], k % p, p));
    trim(d);
    return d;
}

Poly mod(const Poly& a, const Poly& f, std::uint64_t p) {
    Poly q, r;
    divrem(a, f, q, r, p);
    return r;
}

Poly powmod(Poly base, const mpz_class& e, const Poly& f, std::uint64_t p) {
    Poly result{1};
    base = mod(base, f, p);
    const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t k = bits; k-- > 0;) {
        result = mod(mul(result, result, p), f, p);
        if (mpz_tstbit(e.get_mpz_t(), k)) result = mod(mul(result, base, p), f, p);
    }
    return result;
}

int deg(const Poly& a) { return static_cast<int>(a.size()) - 1; }

void equal_degree(const Poly& g, int d, std::uint64_t p, std::mt19937_64& rng, std::vector<Poly>& out) {
    if (deg(g) == d) {
        out.push_back(g);
        return;
    }
    mpz_class e;
    mpz_ui_pow_ui(e.get_mpz_t(), p, static_cast<unsigned long>(d));
    e = (e - 1) / 2;
    std::uniform_int_distribution<std::uint64_t> coef(0, p - 1);
    while (true) {
        Poly a(g.size() - 1);
        for (auto& c : a) c = coef(rng);
        trim(a);
        if (deg(a) < 1) continue;
        Poly b = powmod(a, e, g, p);
        b = sub_poly(b, Poly{1}, p);
        const Poly h = gcd(b, g, p);
        if (deg(h) > 0 && deg(h) < deg(g)) {
            Poly q, r;
            divrem(g, h, q, r, p);
            equal_degree(h, d, p, rng, out);
            equal_degree(monic(q, p), d, p, rng, out);
            return;
        }
    }
}

}  // namespace

Poly reduce(const ZPoly& a, std::uint64_t p) {
    Poly out(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) out[k] = mpz_fdiv_ui(a[k].get_mpz_t(), p);
    trim(out);
    return out;
}

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly mul(const Poly& a, const Poly& b, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    Poly out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = add(out[i + j], mul(a[i], b[j], p), p);
    }
    trim(out);
    return out;
}

void divrem(const Poly& a, const Poly& b, Poly& q, Poly& r, std::uint64_t p) {
    if (b.empty()) throw Error(Errc::InvalidArgument, "division by zero polynomial");
    r = a;
    trim(r);
    q.clear();
    if (r.size() < b.size()) return;
    q.assign(r.size() - b.size() + 1, 0);
    const std::uint64_t inv = inverse(b.back(), p);
    for (std::size_t k = r.size(); k-- >= b.size();) {
        const std::uint64_t c = mul(r[k], inv, p);
        q[k - (b.size() - 1)] = c;
        if (c)
            for (std::size_t j = 0; j < b.size(); ++j) {
                const std::size_t idx = k - (b.size() - 1) + j;
                r[idx] = sub(r[idx], mul(c, b[j], p), p);
            }
        if (k == b.size() - 1) break;
    }
    trim(r);
    trim(q);
}

Poly monic(const Poly& a, std::uint64_t p) {
    if (a.empty()) return a;
    const std::uint64_t inv = inverse(a.back(), p);
    Poly out(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) out[k] = mul(a[k], inv, p);
    return out;
}

Poly gcd(Poly a, Poly b, std::uint64_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly q, r;
        divrem(a, b, q, r, p);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a, p);
}

bool is_squarefree(const Poly& a, std::uint64_t p) {
    if (deg(a) < 1) return true;
    const Poly d = derivative(a, p);
    if (d.empty()) return false;
    return deg(gcd(a, d, p)) == 0;
}

std::vector<Poly> factor_squarefree(const Poly& input, std::uint64_t p, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Poly f = monic(input, p);
    std::vector<Poly> out;
    if (deg(f) < 1) return out;
    Poly h = mod(Poly{0, 1}, f, p);
    const Poly x{0, 1};
    for (int i = 1; deg(f) >= 2 * i; ++i) {
        h = powmod(h, mpz_class(static_cast<unsigned long>(p)), f, p);
        const Poly g = gcd(sub_poly(h, x, p), f, p);
        if (deg(g) > 0) {
            equal_degree(g, i, p, rng, out);
            Poly q, r;
            divrem(f, g, q, r, p);
            f = q;
            h = mod(h, f, p);
        }
    }
    if (deg(f) > 0) out.push_back(monic(f, p));
    return out;
}

}  // namespace zp

namespace upoly {

int degree(const ZPoly& a) { return static_cast<int>(a.size()) - 1; }

void trim(ZPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

mpz_class content(const ZPoly& a) {
    mpz_class g = 0;
    for (const auto& c : a) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

ZPoly primitive(const ZPoly& a) {
    if (a.empty()) return a;
    mpz_class g = content(a);
    if (a.back() < 0) g = -g;
    ZPoly out(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) mpz_divexact(out[k].get_mpz_t(), a[k].get_mpz_t(), g.get_mpz_t());
    return out;
}

ZPoly add(const ZPoly& a, const ZPoly& b) {
    ZPoly out(std::max(a.size(), b.size()));
    for (std::size_t k = 0; k < out.size(); ++k) {
        if (k < a.size()) out[k] += a[k];
        if (k < b.size()) out[k] += b[k];
    }
    trim(out);
    return out;
}

ZPoly sub(const ZPoly& a, const ZPoly& b) {
    ZPoly out(std::max(a.size(), b.size()));
    for (std::size_t k = 0; k < out.size(); ++k) {
        if (k < a.size()) out[k] += a[k];
        if (k < b.size()) out[k] -= b[k];
    }
    trim(out);
    return out;
}

ZPoly mul(const ZPoly& a, const ZPoly& b) {
    if (a.empty() || b.empty()) return {};
    ZPoly out(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) mpz_addmul(out[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
    trim(out);
    return out;
}

ZPoly derivative(const ZPoly& a) {
    ZPoly out;
    for (std::size_t k = 1; k < a.size(); ++k) out.push_back(a[k] * static_cast<unsigned long>(k));
    trim(out);
    return out;
}

bool divide(const ZPoly& a, const ZPoly& b, ZPoly& q) {
    if (b.empty()) throw Error(Errc::InvalidArgument, "division by zero polynomial");
    q.clear();
    if (a.empty()) return true;
    if (a.size() < b.size()) return false;
    ZPoly r = a;
    q.assign(a.size() - b.size() + 1, 0);
    const mpz_class& lb = b.back();
    mpz_class c;
    for (std::size_t k = r.size(); k-- >= b.size();) {
        if (r[k] != 0) {
            if (!mpz_divisible_p(r[k].get_mpz_t(), lb.get_mpz_t())) return false;
            mpz_divexact(c.get_mpz_t(), r[k].get_mpz_t(), lb.get_mpz_t());
            const std::size_t shift = k - (b.size() - 1);
            q[shift] = c;
            for (std::size_t j = 0; j < b.size(); ++j) mpz_submul(r[shift + j].get_mpz_t(), c.get_mpz_t(), b[j].get_mpz_t());
        }
        if (k == b.size() - 1) break;
    }
    for (const auto& x : r)
        if (x != 0) return false;
    trim(q);
    return true;
}

namespace {

// lc(b)^(deg a - deg b + 1) * a mod b.
ZPoly pseudo_remainder(ZPoly a, const ZPoly& b) {
    const std::size_t nb = b.size();
    const mpz_class& lb = b.back();
    while (a.size() >= nb) {
        const mpz_class c = a.back();
        const std::size_t shift = a.size() - nb;
        for (auto& x : a) x *= lb;
        for (std::size_t j = 0; j < nb; ++j) a[shift + j] -= c * b[j];
        trim(a);
    }
    return a;
}

}  // namespace

ZPoly gcd(const ZPoly& a0, const ZPoly& b0) {
    ZPoly a = primitive(a0), b = primitive(b0);
    if (a.empty()) return b;
    if (b.empty()) return a;
    if (a.size() < b.size()) std::swap(a, b);
    while (!b.empty()) {
        ZPoly r = primitive(pseudo_remainder(a, b));
        a = std::move(b);
        b = std::move(r);
    }
    return primitive(a);
}

std::vector<std::pair<ZPoly, int>> squarefree(const ZPoly& a0) {
    std::vector<std::pair<ZPoly, int>> out;
    ZPoly a = primitive(a0);
    if (degree(a) < 1) return out;
    const ZPoly b = derivative(a);
    const ZPoly c = gcd(a, b);
    ZPoly w, y;
    divide(a, c, w);
    divide(b, c, y);
    ZPoly z = sub(y, derivative(w));
    for (int i = 1; degree(w) > 0; ++i) {
        const ZPoly g = z.empty() ? w : gcd(w, z);
        if (degree(g) > 0) out.emplace_back(primitive(g), i);
        ZPoly nw, ny;
        divide(w, g, nw);
        divide(z, g, ny);
        w = std::move(nw);
        z = sub(ny, derivative(w));
    }
    return out;
}

namespace {

ZPoly reduce_mod(const ZPoly& a, const mpz_class& m) {
    ZPoly out(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) mpz_fdiv_r(out[k].get_mpz_t(), a[k].get_mpz_t(), m.get_mpz_t());
    trim(out);
    return out;
}

ZPoly mul_mod(const ZPoly& a, const ZPoly& b, const mpz_class& m) { return reduce_mod(mul(a, b), m); }

// Division by a monic divisor modulo m.
void divrem_monic(const ZPoly& a, const ZPoly& b, const mpz_class& m, ZPoly& q, ZPoly& r) {
    r = reduce_mod(a, m);
    q.clear();
    if (r.size() < b.size()) return;
    q.assign(r.size() - b.size() + 1, 0);
    for (std::size_t k = r.size(); k-- >= b.size();) {
        const mpz_class c = r[k];
        const std::size_t shift = k - (b.size() - 1);
        q[shift] = c;
        if (c != 0)
            for (std::size_t j = 0; j < b.size(); ++j) {
                mpz_submul(r[shift + j].get_mpz_t(), c.get_mpz_t(), b[j].get_mpz_t());
                mpz_fdiv_r(r[shift + j].get_mpz_t(), r[shift + j].get_mpz_t(), m.get_mpz_t());
            }
        if (k == b.size() - 1) break;
    }
    trim(r);
    trim(q);
}

ZPoly lift_poly(const zp::Poly& a) {
    ZPoly out(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) out[k] = static_cast<unsigned long>(a[k]);
    return out;
}

// s*g + t*h = 1 mod p with deg s < deg h, deg t < deg g.
void ext_gcd(const zp::Poly& g, const zp::Poly& h, std::uint64_t p, zp::Poly& s, zp::Poly& t) {
    zp::Poly r0 = g, r1 = h, s0{1}, s1{}, t0{}, t1{1};
    while (!r1.empty()) {
        zp::Poly q, r;
        zp::divrem(r0, r1, q, r, p);
        auto step = [&](zp::Poly& a0, zp::Poly& a1) {
            zp::Poly prod = zp::mul(q, a1, p);
            zp::Poly next = a0;
            if (next.size() < prod.size()) next.resize(prod.size(), 0);
            for (std::size_t k = 0; k < prod.size(); ++k) next[k] = (next[k] + p - prod[k]) % p;
            zp::trim(next);
            a0 = std::move(a1);
            a1 = std::move(next);
        };
        step(s0, s1);
        step(t0, t1);
        r0 = std::move(r1);
        r1 = std::move(r);
    }
    const std::uint64_t inv = zp::inverse(r0.at(0), p);
    s = zp::mul(s0, zp::Poly{inv}, p);
    t = zp::mul(t0, zp::Poly{inv}, p);
}

// Lifts f = g*h (h monic) from mod p to mod m >= bound.
void hensel_pair(const ZPoly& f, ZPoly& g, ZPoly& h, std::uint64_t p, const mpz_class& bound) {
    zp::Poly sp, tp;
    ext_gcd(zp::reduce(g, p), zp::reduce(h, p), p, sp, tp);
    ZPoly s = lift_poly(sp), t = lift_poly(tp);
    mpz_class m = static_cast<unsigned long>(p);
    while (m < bound) {
        const mpz_class m2 = m * m;
        const ZPoly e = reduce_mod(sub(f, mul(g, h)), m2);
        ZPoly q, r;
        divrem_monic(mul_mod(s, e, m2), h, m2, q, r);
        const ZPoly gs = reduce_mod(add(add(g, mul(t, e)), mul(q, g)), m2);
        const ZPoly hs = reduce_mod(add(h, r), m2);
        ZPoly b = reduce_mod(sub(add(mul(s, gs), mul(t, hs)), ZPoly{1}), m2);
        ZPoly c, d;
        divrem_monic(mul_mod(s, b, m2), hs, m2, c, d);
        s = reduce_mod(sub(s, d), m2);
        t = reduce_mod(sub(sub(t, mul(t, b)), mul(c, gs)), m2);
        g = gs;
        h = hs;
        m = m2;
    }
}

// Lifts f = lc * prod(factors) with monic modular factors.
void hensel_tree(const ZPoly& f, std::vector<ZPoly>& factors, std::size_t lo, std::size_t hi, std::uint64_t p,
                 const mpz_class& bound, const mpz_class& modulus) {
    if (hi - lo <= 1) {
        // Single factor: f = lc * factor, so factor = f / lc.
        if (hi - lo == 1) {
            const mpz_class& lc = f.back();
            mpz_class inv;
            mpz_invert(inv.get_mpz_t(), lc.get_mpz_t(), modulus.get_mpz_t());
            ZPoly out(f.size());
            for (std::size_t k = 0; k < f.size(); ++k) out[k] = f[k] * inv;
            factors[lo] = reduce_mod(out, modulus);
        }
        return;
    }
    const std::size_t mid = (lo + hi) / 2;
    ZPoly left{f.back()}, right{1};
    const mpz_class pz = static_cast<unsigned long>(p);
    for (std::size_t k = lo; k < mid; ++k) left = mul_mod(left, factors[k], pz);
    for (std::size_t k = mid; k < hi; ++k) right = mul_mod(right, factors[k], pz);
    hensel_pair(f, left, right, p, bound);
    left = reduce_mod(left, modulus);
    right = reduce_mod(right, modulus);
    hensel_tree(left, factors, lo, mid, p, bound, modulus);
    hensel_tree(right, factors, mid, hi, p, bound, modulus);
}

ZPoly symmetric(const ZPoly& a, const mpz_class& m) {
    const mpz_class half = m / 2;
    ZPoly out = reduce_mod(a, m);
    for (auto& c : out)
        if (c > half) c -= m;
    trim(out);
    return out;
}

mpz_class mignotte_bound(const ZPoly& f) {
    mpz_class norm2 = 0;
    for (const auto& c : f) norm2 += c * c;
    mpz_class root;
    mpz_sqrt(root.get_mpz_t(), norm2.get_mpz_t());
    root += 1;
    return (root * abs(f.back())) << degree(f);
}

constexpr std::size_t kMaxModularFactors = 24;

}  // namespace

std::vector<ZPoly> factor_squarefree(const ZPoly& input) {
    ZPoly f = primitive(input);
    if (degree(f) <= 1) return {f};
    // Pick the prime with fewest modular factors among several good ones.
    std::vector<zp::Poly> best;
    std::uint64_t best_p = 0;
    mpz_class candidate = mpz_class(1) << 28;
    int good = 0;
    for (int tries = 0; tries < 200 && good < 6; ++tries) {
        mpz_nextprime(candidate.get_mpz_t(), candidate.get_mpz_t());
        const std::uint64_t p = candidate.get_ui();
        if (mpz_fdiv_ui(f.back().get_mpz_t(), p) == 0) continue;
        const zp::Poly fp = zp::reduce(f, p);
        if (!zp::is_squarefree(fp, p)) continue;
        ++good;
        auto fs = zp::factor_squarefree(fp, p, p);
        if (best_p == 0 || fs.size() < best.size()) {
            best = std::move(fs);
            best_p = p;
        }
        if (best.size() == 1) return {f};
    }
    if (best_p == 0) throw Error(Errc::BackendLimit, "no suitable prime for univariate factorization");
    if (best.size() > kMaxModularFactors)
        throw Error(Errc::BackendLimit, "too many modular factors (" + std::to_string(best.size()) + ")");

    const mpz_class bound = 2 * mignotte_bound(f) + 1;
    mpz_class modulus = static_cast<unsigned long>(best_p);
    while (modulus < bound) modulus *= modulus;
    std::vector<ZPoly> lifted;
    for (const auto& g : best) lifted.push_back(lift_poly(g));
    hensel_tree(f, lifted, 0, lifted.size(), best_p, bound, modulus);

    std::vector<ZPoly> out;
    std::vector<ZPoly> pool = lifted;
    for (std::size_t s = 1; 2 * s <= pool.size();) {
        bool found = false;
        std::vector<std::size_t> idx(s);
        for (std::size_t k = 0; k < s; ++k) idx[k] = k;
        while (true) {
            ZPoly g{f.back()};
            for (std::size_t k : idx) g = mul_mod(g, pool[k], modulus);
            const ZPoly cand = primitive(symmetric(g, modulus));
            ZPoly q;
            if (degree(cand) > 0 && divide(f, cand, q)) {
                out.push_back(cand);
                f = primitive(q);
                std::vector<ZPoly> rest;
                for (std::size_t k = 0, j = 0; k < pool.size(); ++k) {
                    if (j < s && idx[j] == k) {
                        ++j;
                        continue;
                    }
                    rest.push_back(pool[k]);
                }
                pool = std::move(rest);
                found = true;
                break;
            }
            // Next combination.
            std::size_t pos = s;
            while (pos > 0 && idx[pos - 1] == pool.size() - s + pos - 1) --pos;
            if (pos == 0) break;
            ++idx[pos - 1];
            for (std::size_t k = pos; k < s; ++k) idx[k] = idx[k - 1] + 1;
        }
        if (!found) ++s;
    }
    if (degree(f) > 0) out.push_back(f);
    return out;
}

Factored factor(const ZPoly& a) {
    Factored out;
    if (a.empty()) throw Error(Errc::ZeroPolynomial, "factor of zero polynomial");
    out.content = content(a);
    if (a.back() < 0) out.content = -out.content;
    for (auto& [part, mult] : squarefree(a))
        for (auto& g : factor_squarefree(part)) out.factors.emplace_back(primitive(g), mult);
    std::sort(out.factors.begin(), out.factors.end(), [](const auto& x, const auto& y) {
        if (x.first.size() != y.first.size()) return x.first.size() < y.first.size();
        return x.first < y.first;
    });
    return out;
}

}  // namespace upoly

}  // namespace circpoly
