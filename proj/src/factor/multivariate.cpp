#include "circpoly/factor.hpp"

#include "circpoly/error.hpp"
#include "circpoly/univariate.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <random>

namespace circpoly {

namespace {

using Point = std::map<EdgeVar, mpz_class>;

std::uint64_t screening_prime() {
    static const std::uint64_t p = [] {
        mpz_class c = (mpz_class(1) << 62) - 200;
        mpz_nextprime(c.get_mpz_t(), c.get_mpz_t());
        return static_cast<std::uint64_t>(c.get_ui());
    }();
    return p;
}

// Univariate image in x after substituting the point for every other variable.
ZPoly image(const Polynomial& p, EdgeVar x, const Point& pt) {
    const auto& vars = p.vars();
    const int xi = p.var_index(x);
    std::vector<std::vector<mpz_class>> pw(vars.size());
    for (std::size_t k = 0; k < vars.size(); ++k) {
        if (static_cast<int>(k) == xi) continue;
        const int d = p.degree(vars[k]);
        pw[k].resize(d + 1);
        pw[k][0] = 1;
        for (int e = 1; e <= d; ++e) pw[k][e] = pw[k][e - 1] * pt.at(vars[k]);
    }
    ZPoly out(xi >= 0 ? p.degree(x) + 1 : 1);
    mpz_class t;
    for (std::size_t i = 0; i < p.term_count(); ++i) {
        const Monomial& m = p.monomials()[i];
        t = p.coefficients()[i];
        for (std::size_t k = 0; k < vars.size(); ++k) {
            if (static_cast<int>(k) == xi) continue;
            const int e = m.exp(static_cast<int>(k));
            if (e) t *= pw[k][e];
        }
        out[xi >= 0 ? m.exp(xi) : 0] += t;
    }
    upoly::trim(out);
    return out;
}

using ModPoint = std::map<EdgeVar, std::uint64_t>;

// Image in (y, z) modulo prime: result[i] is the image of the coefficient of y^i, as a polynomial in z.
std::vector<zp::Poly> bivariate_image(const Polynomial& p, EdgeVar y, std::optional<EdgeVar> z, const ModPoint& pt,
                                      std::uint64_t prime) {
    const auto& vars = p.vars();
    const int yi = p.var_index(y);
    const int zi = z ? p.var_index(*z) : -1;
    std::vector<std::vector<std::uint64_t>> pw(vars.size());
    for (std::size_t k = 0; k < vars.size(); ++k) {
        if (static_cast<int>(k) == yi || static_cast<int>(k) == zi) continue;
        const int d = p.degree(vars[k]);
        pw[k].resize(d + 1);
        pw[k][0] = 1;
        for (int e = 1; e <= d; ++e) pw[k][e] = zp::mul(pw[k][e - 1], pt.at(vars[k]), prime);
    }
    std::vector<zp::Poly> out(yi >= 0 ? p.degree(y) + 1 : 1, zp::Poly(zi >= 0 ? p.degree(*z) + 1 : 1, 0));
    for (std::size_t i = 0; i < p.term_count(); ++i) {
        const Monomial& m = p.monomials()[i];
        std::uint64_t t = mpz_fdiv_ui(p.coefficients()[i].get_mpz_t(), prime);
        for (std::size_t k = 0; k < vars.size() && t; ++k) {
            if (static_cast<int>(k) == yi || static_cast<int>(k) == zi) continue;
            const int e = m.exp(static_cast<int>(k));
            if (e) t = zp::mul(t, pw[k][e], prime);
        }
        auto& slot = out[yi >= 0 ? m.exp(yi) : 0][zi >= 0 ? m.exp(zi) : 0];
        slot += t;
        if (slot >= prime) slot -= prime;
    }
    for (auto& c : out) zp::trim(c);
    return out;
}

ModPoint random_mod_point(const std::vector<EdgeVar>& vars, std::uint64_t prime, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint64_t> dist(1, prime - 1);
    ModPoint pt;
    for (const EdgeVar& v : vars) pt[v] = dist(rng);
    return pt;
}

Point random_point(const std::vector<EdgeVar>& vars, EdgeVar skip, long bound, std::mt19937_64& rng) {
    std::uniform_int_distribution<long> dist(1, bound);
    Point pt;
    for (const EdgeVar& v : vars) {
        if (v == skip) continue;
        const long a = dist(rng);
        pt[v] = (rng() & 1) ? a : -a;
    }
    return pt;
}

Polynomial from_dense(const ZPoly& a, EdgeVar x) {
    std::vector<Polynomial> desc;
    for (std::size_t k = a.size(); k-- > 0;) desc.push_back(Polynomial::constant(a[k]));
    return Polynomial::from_coefficients(x, desc);
}

ZPoly to_dense(const Polynomial& p, EdgeVar x) {
    const auto cs = p.coefficients_wrt(x);
    ZPoly out(cs.size());
    for (std::size_t k = 0; k < cs.size(); ++k) {
        const Polynomial& c = cs[cs.size() - 1 - k];
        if (!c.is_zero()) {
            if (!c.is_constant()) throw Error(Errc::InvalidArgument, "expected a univariate polynomial");
            out[k] = c.coefficients()[0];
        }
    }
    upoly::trim(out);
    return out;
}

bool less_poly(const Polynomial& a, const Polynomial& b) {
    if (a.term_count() != b.term_count()) return a.term_count() < b.term_count();
    if (a.vars() != b.vars()) return a.vars() < b.vars();
    for (std::size_t t = 0; t < a.term_count(); ++t) {
        if (a.monomials()[t] != b.monomials()[t]) return grevlex_greater(a.monomials()[t], b.monomials()[t]);
        if (a.coefficients()[t] != b.coefficients()[t]) return a.coefficients()[t] < b.coefficients()[t];
    }
    return false;
}

EdgeVar max_degree_var(const Polynomial& p) {
    EdgeVar best = p.vars().front();
    for (const EdgeVar& v : p.vars())
        if (p.degree(v) > p.degree(best)) best = v;
    return best;
}

// Certified check that the content of p with respect to y is an integer.
bool trivial_content(const Polynomial& p, EdgeVar y, std::mt19937_64& rng) {
    const auto coeffs = p.coefficients_wrt(y);
    for (const auto& c : coeffs)
        if (c.is_constant() && !c.is_zero()) return true;
    const std::uint64_t prime = screening_prime();
    std::vector<EdgeVar> rest;
    for (const EdgeVar& v : p.vars())
        if (v != y) rest.push_back(v);
    for (const EdgeVar& z : rest) {
        bool ruled_out = false;
        for (int attempt = 0; attempt < 3 && !ruled_out; ++attempt) {
            const ModPoint pt = random_mod_point(rest, prime, rng);
            const auto images = bivariate_image(p, y, z, pt, prime);
            bool lc_survives = false;
            for (std::size_t i = 0; i < coeffs.size(); ++i) {
                const Polynomial& c = coeffs[coeffs.size() - 1 - i];
                if (c.is_zero()) continue;
                const int dz = c.degree(z);
                if (images[i].size() == static_cast<std::size_t>(dz) + 1) lc_survives = true;
            }
            if (!lc_survives) continue;
            zp::Poly g;
            for (const auto& im : images) {
                if (im.empty()) continue;
                g = g.empty() ? zp::monic(im, prime) : zp::gcd(g, im, prime);
                if (g.size() == 1) break;
            }
            if (g.size() <= 1) ruled_out = true;
        }
        if (!ruled_out) return false;
    }
    return true;
}

// Arithmetic modulo a large prime on multivariate polynomials (symmetric residues).
struct ModRing {
    mpz_class P;
    mpz_class half;

    explicit ModRing(mpz_class prime) : P(std::move(prime)), half(P / 2) {}

    Polynomial red(const Polynomial& a) const {
        std::vector<Monomial> monos;
        std::vector<mpz_class> coeffs;
        mpz_class c;
        for (std::size_t t = 0; t < a.term_count(); ++t) {
            mpz_fdiv_r(c.get_mpz_t(), a.coefficients()[t].get_mpz_t(), P.get_mpz_t());
            if (c == 0) continue;
            if (c > half) c -= P;
            monos.push_back(a.monomials()[t]);
            coeffs.push_back(c);
        }
        return Polynomial::from_sorted(a.vars(), std::move(monos), std::move(coeffs));
    }

    Polynomial eval(const Polynomial& a, EdgeVar y, const mpz_class& v) const { return red(a.substitute({{y, v}})); }

    mpz_class inv(const mpz_class& a) const {
        mpz_class r;
        if (!mpz_invert(r.get_mpz_t(), a.get_mpz_t(), P.get_mpz_t()))
            throw Error(Errc::InvalidArgument, "non-invertible residue");
        return r;
    }

    // Coefficient of (y - v)^d in a.
    Polynomial taylor(const Polynomial& a, EdgeVar y, const mpz_class& v, int d) const {
        if (!a.contains(y)) return d == 0 ? a : Polynomial();
        const auto cs = a.coefficients_wrt(y);
        const int n = static_cast<int>(cs.size()) - 1;
        Polynomial sum;
        mpz_class w, vp;
        for (int i = d; i <= n; ++i) {
            const Polynomial& ai = cs[n - i];
            if (ai.is_zero()) continue;
            mpz_bin_uiui(w.get_mpz_t(), static_cast<unsigned long>(i), static_cast<unsigned long>(d));
            mpz_powm_ui(vp.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(i - d), P.get_mpz_t());
            sum += ai * mpz_class(w * vp % P);
        }
        return red(sum);
    }

    // Dense univariate helpers.
    ZPoly dred(ZPoly a) const {
        for (auto& c : a) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), P.get_mpz_t());
        upoly::trim(a);
        return a;
    }

    void divrem(const ZPoly& a, const ZPoly& b, ZPoly& q, ZPoly& r) const {
        r = dred(a);
        q.clear();
        if (r.size() < b.size()) return;
        const mpz_class li = inv(b.back());
        q.assign(r.size() - b.size() + 1, 0);
        for (std::size_t k = r.size(); k-- >= b.size();) {
            mpz_class c = r[k] * li % P;
            const std::size_t shift = k - (b.size() - 1);
            q[shift] = c;
            if (c != 0)
                for (std::size_t j = 0; j < b.size(); ++j) {
                    r[shift + j] -= c * b[j];
                    mpz_fdiv_r(r[shift + j].get_mpz_t(), r[shift + j].get_mpz_t(), P.get_mpz_t());
                }
            if (k == b.size() - 1) break;
        }
        upoly::trim(r);
        upoly::trim(q);
    }

    // Inverse of a modulo m (coprime), degree below deg m.
    ZPoly inverse_mod(const ZPoly& a, const ZPoly& m) const {
        ZPoly r0 = dred(m), r1, s0, s1{1};
        ZPoly q, rr;
        divrem(a, m, q, r1);
        while (!r1.empty()) {
            divrem(r0, r1, q, rr);
            ZPoly next = dred(upoly::sub(s0, upoly::mul(q, s1)));
            s0 = std::move(s1);
            s1 = std::move(next);
            r0 = std::move(r1);
            r1 = std::move(rr);
        }
        if (r0.size() != 1) throw Error(Errc::InvalidArgument, "factors are not coprime modulo P");
        const mpz_class li = inv(r0[0]);
        ZPoly out = s0;
        for (auto& c : out) c = c * li;
        out = dred(out);
        ZPoly quo, rem;
        divrem(out, m, quo, rem);
        return rem;
    }
};

Polynomial product(const std::vector<Polynomial>& fs, const ModRing& R, std::size_t skip = static_cast<std::size_t>(-1)) {
    Polynomial out = Polynomial::constant(1);
    for (std::size_t k = 0; k < fs.size(); ++k)
        if (k != skip) out = R.red(out * fs[k]);
    return out;
}

struct Lifter {
    const ModRing& R;
    EdgeVar x;
    std::vector<EdgeVar> ys;
    std::vector<mpz_class> alphas;
    std::vector<int> degs;

    // Solves sum sigma_m * prod_{i != m} a_i = c with deg_x sigma_m < deg_x a_m, in x and ys[0..v).
    std::vector<Polynomial> diophant(const std::vector<Polynomial>& a, const Polynomial& c, std::size_t v) const {
        const std::size_t r = a.size();
        std::vector<Polynomial> sigma(r);
        if (v == 0) {
            std::vector<ZPoly> ad(r);
            for (std::size_t m = 0; m < r; ++m) ad[m] = to_dense(a[m], x);
            const ZPoly cd = R.dred(to_dense(c, x));
            for (std::size_t m = 0; m < r; ++m) {
                ZPoly b{1};
                for (std::size_t i = 0; i < r; ++i)
                    if (i != m) b = R.dred(upoly::mul(b, ad[i]));
                const ZPoly inv = R.inverse_mod(b, ad[m]);
                ZPoly q, rem;
                R.divrem(upoly::mul(cd, inv), ad[m], q, rem);
                sigma[m] = R.red(from_dense(rem, x));
            }
            return sigma;
        }
        const EdgeVar y = ys[v - 1];
        const mpz_class& alpha = alphas[v - 1];
        std::vector<Polynomial> b(r);
        for (std::size_t m = 0; m < r; ++m) b[m] = product(a, R, m);
        std::vector<Polynomial> anew(r);
        for (std::size_t m = 0; m < r; ++m) anew[m] = R.eval(a[m], y, alpha);
        sigma = diophant(anew, R.eval(c, y, alpha), v - 1);
        auto residual = [&](const std::vector<Polynomial>& s) {
            Polynomial sum;
            for (std::size_t m = 0; m < r; ++m) sum += s[m] * b[m];
            return sum;
        };
        Polynomial e = R.red(c - residual(sigma));
        const Polynomial shift = Polynomial::variable(y) - Polynomial::constant(alpha);
        Polynomial monomial = Polynomial::constant(1);
        for (int d = 1; d <= degs[v - 1] && !e.is_zero(); ++d) {
            monomial = R.red(monomial * shift);
            const Polynomial cm = R.taylor(e, y, alpha, d);
            if (cm.is_zero()) continue;
            std::vector<Polynomial> ds = diophant(anew, cm, v - 1);
            for (auto& s : ds) s = R.red(s * monomial);
            for (std::size_t m = 0; m < r; ++m) sigma[m] = R.red(sigma[m] + ds[m]);
            e = R.red(e - residual(ds));
        }
        return sigma;
    }

    static Polynomial replace_lc(const Polynomial& u, EdgeVar x, const Polynomial& lc) {
        auto cs = u.coefficients_wrt(x);
        cs.front() = lc;
        return Polynomial::from_coefficients(x, cs);
    }

    // Lifts univariate images u (with true leading coefficients lcs) to factors of a modulo P.
    std::optional<std::vector<Polynomial>> lift(const Polynomial& a, std::vector<Polynomial> u,
                                                const std::vector<Polynomial>& lcs) const {
        const std::size_t k = ys.size();
        std::vector<Polynomial> as(k + 1);
        as[k] = R.red(a);
        for (std::size_t j = k; j-- > 0;) as[j] = R.eval(as[j + 1], ys[j], alphas[j]);
        // lc images keeping ys[0..j]
        std::vector<std::vector<Polynomial>> lc_at(k, std::vector<Polynomial>(lcs.size()));
        for (std::size_t m = 0; m < lcs.size(); ++m) {
            Polynomial l = R.red(lcs[m]);
            for (std::size_t j = k; j-- > 0;) {
                lc_at[j][m] = l;
                l = R.eval(l, ys[j], alphas[j]);
            }
        }
        for (std::size_t j = 0; j < k; ++j) {
            const EdgeVar y = ys[j];
            const std::vector<Polynomial> u1 = u;
            for (std::size_t m = 0; m < u.size(); ++m) u[m] = replace_lc(u[m], x, lc_at[j][m]);
            Polynomial e = R.red(as[j + 1] - product(u, R));
            const Polynomial shift = Polynomial::variable(y) - Polynomial::constant(alphas[j]);
            Polynomial monomial = Polynomial::constant(1);
            const int dy = as[j + 1].degree(y);
            for (int d = 1; d <= dy && !e.is_zero(); ++d) {
                monomial = R.red(monomial * shift);
                const Polynomial c = R.taylor(e, y, alphas[j], d);
                if (c.is_zero()) continue;
                std::vector<Polynomial> du = diophant(u1, c, j);
                for (std::size_t m = 0; m < u.size(); ++m) u[m] = R.red(u[m] + du[m] * monomial);
                e = R.red(as[j + 1] - product(u, R));
            }
            if (!e.is_zero()) return std::nullopt;
        }
        if (R.red(as[k] - product(u, R)).is_zero()) return u;
        return std::nullopt;
    }
};

std::size_t max_coeff_bits(const Polynomial& p) {
    std::size_t bits = 1;
    for (const auto& c : p.coefficients()) bits = std::max(bits, mpz_sizeinbase(c.get_mpz_t(), 2));
    return bits;
}

class Factorer {
public:
    Factorer(const FactorOptions& options) : options_(options), rng_(options.seed ^ 0x666163746f72ull) {}

    void run(Polynomial q, int mult) {
        if (q.is_constant()) return;
        q = normalize(q);
        if (q.total_degree() == 1) return add(q, mult);
        if (q.vars().size() == 1) return univariate(q, mult);
        for (const EdgeVar y : std::vector<EdgeVar>(q.vars())) {
            if (!q.contains(y) || q.is_constant()) continue;
            if (trivial_content(q, y, rng_)) continue;
            auto coeffs = q.coefficients_wrt(y);
            const Polynomial* smallest = nullptr;
            for (const auto& c : coeffs)
                if (!c.is_zero() && (!smallest || c.term_count() < smallest->term_count())) smallest = &c;
            Factorer inner(options_);
            inner.rng_.seed(rng_());
            inner.run(*smallest, 1);
            for (const auto& [f, m] : inner.found_) {
                int k = 0;
                Polynomial quo;
                while (divides(f, q, &quo)) {
                    q = quo;
                    ++k;
                }
                if (k) add(f, mult * k);
            }
            uncertified_ = uncertified_ || inner.uncertified_;
        }
        if (q.is_constant()) return;
        q = normalize(q);
        if (q.total_degree() == 1) return add(q, mult);
        if (q.vars().size() == 1) return univariate(q, mult);
        split(q, mult);
    }

    std::vector<std::pair<Polynomial, int>> found_;
    bool uncertified_ = false;

private:
    void add(const Polynomial& f, int mult) {
        const Polynomial g = normalize(f);
        for (auto& [h, m] : found_)
            if (h == g) {
                m += mult;
                return;
            }
        found_.emplace_back(g, mult);
    }

    void univariate(const Polynomial& q, int mult) {
        const EdgeVar x = q.vars().front();
        const auto fac = upoly::factor(to_dense(q, x));
        for (const auto& [f, m] : fac.factors) add(from_dense(f, x), mult * m);
    }

    void split(const Polynomial& q, int mult) {
        const EdgeVar x = max_degree_var(q);
        const Polynomial lc = q.coefficients_wrt(x).front();
        int non_squarefree = 0;
        for (int attempt = 0; attempt < 8; ++attempt) {
            const long bound = 8L << (2 * std::min(attempt, 8));
            const Point pt = random_point(q.vars(), x, bound, rng_);
            if (lc.evaluate(pt) == 0) continue;
            const ZPoly u = image(q, x, pt);
            if (upoly::degree(upoly::gcd(u, upoly::derivative(u))) > 0) {
                if (++non_squarefree >= 3) {
                    const Factorization parts = squarefree(q);
                    if (parts.factors.size() > 1 || parts.factors.front().second > 1) {
                        for (const auto& [part, m] : parts.factors) run(part, mult * m);
                        return;
                    }
                }
                continue;
            }
            const auto images = upoly::factor_squarefree(u);
            if (images.size() == 1) return add(q, mult);
            if (q.term_count() > options_.term_cap)
                throw Error(Errc::BackendLimit, "factorization input exceeds the configured term cap");
            if (auto parts = lift_split(q, x, lc, pt, images)) {
                run(parts->first, mult);
                run(parts->second, mult);
                return;
            }
        }
        uncertified_ = true;
        add(q, mult);
    }

    std::optional<std::pair<Polynomial, Polynomial>> lift_split(const Polynomial& q, EdgeVar x, const Polynomial& lc,
                                                                const Point& pt, const std::vector<ZPoly>& images) {
        const Polynomial qt = lc * q;
        std::vector<EdgeVar> ys;
        std::vector<mpz_class> alphas;
        for (const EdgeVar& v : q.vars())
            if (v != x) {
                ys.push_back(v);
                alphas.push_back(pt.at(v));
            }
        std::vector<int> degs;
        for (const EdgeVar& y : ys) degs.push_back(qt.degree(y));
        const mpz_class lc_at = lc.evaluate(pt);
        const std::size_t r = images.size();
        std::optional<Factorization> lc_factors;
        for (int round = 0; round < 2; ++round) {
            const std::size_t bits = (max_coeff_bits(qt) + 4 * static_cast<std::size_t>(qt.total_degree()) + 64) << round;
            mpz_class prime = mpz_class(1) << bits;
            mpz_nextprime(prime.get_mpz_t(), prime.get_mpz_t());
            const ModRing R(prime);
            const Lifter lifter{R, x, ys, alphas, degs};
            // Subsets with the first image excluded, so each split is tried once.
            for (std::size_t mask = 1; mask < (std::size_t{1} << (r - 1)); ++mask) {
                ZPoly g{1}, h = images[0];
                for (std::size_t k = 1; k < r; ++k) {
                    if ((mask >> (k - 1)) & 1u) g = upoly::mul(g, images[k]);
                    else h = upoly::mul(h, images[k]);
                }
                auto scaled = [&](const ZPoly& f) {
                    ZPoly out = f;
                    const mpz_class s = lc_at * R.inv(f.back());
                    for (auto& c : out) c *= s;
                    return R.red(from_dense(R.dred(out), x));
                };
                std::vector<Polynomial> u{scaled(g), scaled(h)};
                std::optional<std::vector<Polynomial>> lifted;
                try {
                    lifted = lifter.lift(qt, u, {lc, lc});
                } catch (const Error& e) {
                    if (e.code() != Errc::InvalidArgument) throw;
                }
                if (!lifted) continue;
                const Polynomial G = (*lifted)[0], H = (*lifted)[1];
                if (G * H != qt) continue;
                Polynomial f = G.primitive();
                if (!lc.is_constant()) {
                    if (!lc_factors) {
                        Factorer inner(options_);
                        inner.rng_.seed(rng_());
                        inner.run(lc, 1);
                        lc_factors = Factorization{1, inner.found_};
                    }
                    for (const auto& [l, m] : lc_factors->factors) {
                        Polynomial quo;
                        while (divides(l, f, &quo)) f = quo;
                    }
                }
                f = normalize(f);
                Polynomial quo;
                if (f.degree(x) > 0 && f.degree(x) < q.degree(x) && divides(f, q, &quo)) return std::make_pair(f, quo);
            }
        }
        return std::nullopt;
    }

    FactorOptions options_;
    std::mt19937_64 rng_;
};

// Primitive part with respect to x of a dense coefficient list.
std::vector<Polynomial> primitive_part(std::vector<Polynomial> cs) {
    std::vector<Polynomial> sorted = cs;
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.term_count() < b.term_count(); });
    Polynomial g;
    for (const auto& c : sorted) {
        if (c.is_zero()) continue;
        g = g.is_zero() ? normalize(c) : multivariate_gcd(g, c);
        if (g.is_constant()) break;
    }
    if (g.is_zero() || g.is_constant()) {
        mpz_class ic = 0;
        for (const auto& c : cs)
            if (!c.is_zero()) mpz_gcd(ic.get_mpz_t(), ic.get_mpz_t(), c.content().get_mpz_t());
        if (ic > 1)
            for (auto& c : cs) c = c.divided_by(ic);
        return cs;
    }
    for (auto& c : cs)
        if (!c.is_zero()) c = exact_divide(c, g);
    return cs;
}

// gcd by lifting a univariate gcd image against a cofactor coprime to it.
std::optional<Polynomial> ez_gcd(const Polynomial& f, const Polynomial& g, EdgeVar x, std::mt19937_64& rng) {
    const auto vars = merge_vars(f.vars(), g.vars());
    const Polynomial lf = f.coefficients_wrt(x).front(), lg = g.coefficients_wrt(x).front();
    std::optional<Point> best;
    ZPoly gu;
    for (int attempt = 0, good = 0; attempt < 6 && good < 2; ++attempt) {
        const Point pt = random_point(vars, x, 16L << (2 * attempt), rng);
        if (lf.evaluate(pt) == 0 || lg.evaluate(pt) == 0) continue;
        ++good;
        const ZPoly d = upoly::gcd(image(f, x, pt), image(g, x, pt));
        if (!best || upoly::degree(d) < upoly::degree(gu)) {
            best = pt;
            gu = d;
        }
    }
    if (!best) return std::nullopt;
    const int d = upoly::degree(gu);
    if (d == 0) return Polynomial::constant(1);
    Polynomial quo;
    if (d == f.degree(x) && divides(f, g, &quo)) return normalize(f);
    if (d == g.degree(x) && divides(g, f, &quo)) return normalize(g);
    std::vector<EdgeVar> ys;
    std::vector<mpz_class> alphas;
    for (const EdgeVar& v : vars)
        if (v != x) {
            ys.push_back(v);
            alphas.push_back(best->at(v));
        }
    for (int k = 0; k < 5; ++k) {
        const Polynomial a = k == 0 ? f : k == 1 ? g : f + g * Polynomial::constant(k - 1);
        if (a.degree(x) <= d) continue;
        const Polynomial la = a.coefficients_wrt(x).front();
        const mpz_class la_at = la.evaluate(*best);
        if (la_at == 0) continue;
        ZPoly hu;
        if (!upoly::divide(image(a, x, *best), gu, hu)) return std::nullopt;
        if (upoly::degree(upoly::gcd(gu, hu)) > 0) continue;
        const Polynomial at = la * a;
        std::vector<int> degs;
        for (const EdgeVar& y : ys) degs.push_back(at.degree(y));
        for (int round = 0; round < 2; ++round) {
            const std::size_t bits = (max_coeff_bits(at) + 4 * static_cast<std::size_t>(at.total_degree()) + 64) << round;
            mpz_class prime = mpz_class(1) << bits;
            mpz_nextprime(prime.get_mpz_t(), prime.get_mpz_t());
            const ModRing R(prime);
            const Lifter lifter{R, x, ys, alphas, degs};
            auto scaled = [&](const ZPoly& u) {
                ZPoly out = u;
                const mpz_class s = la_at * R.inv(u.back());
                for (auto& c : out) c *= s;
                return R.red(from_dense(R.dred(out), x));
            };
            std::optional<std::vector<Polynomial>> lifted;
            try {
                lifted = lifter.lift(at, {scaled(gu), scaled(hu)}, {la, la});
            } catch (const Error& e) {
                if (e.code() != Errc::InvalidArgument) throw;
            }
            if (!lifted || (*lifted)[0] * (*lifted)[1] != at) continue;
            const Polynomial G = (*lifted)[0];
            const Polynomial h = normalize(exact_divide(G, content_in(G, x)));
            if (divides(h, f, &quo) && divides(h, g, &quo)) return h;
            break;
        }
    }
    return std::nullopt;
}

// gcd of polynomials primitive in x, both of positive degree in x.
Polynomial prs_gcd(const Polynomial& f, const Polynomial& g, EdgeVar x) {
    std::mt19937_64 rng(f.hash() ^ (g.hash() << 1));
    const std::uint64_t prime = screening_prime();
    const auto vars = merge_vars(f.vars(), g.vars());
    std::vector<EdgeVar> rest;
    for (const EdgeVar& v : vars)
        if (v != x) rest.push_back(v);
    for (int attempt = 0; attempt < 2; ++attempt) {
        const ModPoint pt = random_mod_point(rest, prime, rng);
        const zp::Poly fi = [&] {
            auto im = bivariate_image(f, x, std::nullopt, pt, prime);
            zp::Poly out;
            for (auto& c : im) out.push_back(c.empty() ? 0 : c[0]);
            zp::trim(out);
            return out;
        }();
        const zp::Poly gi = [&] {
            auto im = bivariate_image(g, x, std::nullopt, pt, prime);
            zp::Poly out;
            for (auto& c : im) out.push_back(c.empty() ? 0 : c[0]);
            zp::trim(out);
            return out;
        }();
        if (static_cast<int>(fi.size()) != f.degree(x) + 1 || static_cast<int>(gi.size()) != g.degree(x) + 1) continue;
        if (zp::gcd(fi, gi, prime).size() == 1) return Polynomial::constant(1);
        break;
    }
    if (auto h = ez_gcd(f, g, x, rng)) return *h;
    std::vector<Polynomial> a = f.coefficients_wrt(x), b = g.coefficients_wrt(x);
    std::reverse(a.begin(), a.end());
    std::reverse(b.begin(), b.end());
    if (a.size() < b.size()) std::swap(a, b);
    while (true) {
        // Pseudo-remainder of a by b.
        std::vector<Polynomial> r = a;
        const Polynomial lb = b.back();
        while (r.size() >= b.size()) {
            const Polynomial c = r.back();
            const std::size_t shift = r.size() - b.size();
            r.pop_back();
            for (auto& t : r) t *= lb;
            for (std::size_t k = 0; k + 1 < b.size(); ++k)
                if (!b[k].is_zero()) r[k + shift] -= c * b[k];
            while (!r.empty() && r.back().is_zero()) r.pop_back();
        }
        if (r.empty()) {
            std::vector<Polynomial> desc = primitive_part(b);
            std::reverse(desc.begin(), desc.end());
            return normalize(Polynomial::from_coefficients(x, desc));
        }
        if (r.size() == 1) return Polynomial::constant(1);
        a = std::move(b);
        b = primitive_part(std::move(r));
    }
}

}  // namespace

const char* to_string(Irreducibility v) {
    switch (v) {
        case Irreducibility::Irreducible: return "irreducible";
        case Irreducibility::Reducible: return "reducible";
        default: return "unknown";
    }
}

Polynomial Factorization::expand() const {
    if (unit.get_den() != 1) throw Error(Errc::InvalidArgument, "non-integral unit");
    Polynomial out = Polynomial::constant(unit.get_num());
    for (const auto& [f, m] : factors) out = out * f.pow(static_cast<unsigned>(m));
    return out;
}

bool divides(const Polynomial& d, const Polynomial& p, Polynomial* quotient) {
    if (d.is_zero()) throw Error(Errc::InvalidArgument, "division by zero polynomial");
    if (p.is_zero()) {
        if (quotient) *quotient = Polynomial();
        return true;
    }
    for (const EdgeVar& v : d.vars())
        if (d.degree(v) > p.degree(v)) return false;
    if (!d.is_constant()) {
        const std::uint64_t prime = screening_prime();
        std::mt19937_64 rng(d.hash() ^ p.hash());
        const EdgeVar x = d.vars().front();
        std::vector<EdgeVar> rest;
        for (const EdgeVar& v : merge_vars(d.vars(), p.vars()))
            if (v != x) rest.push_back(v);
        const ModPoint pt = random_mod_point(rest, prime, rng);
        auto flat = [&](const Polynomial& a) {
            auto im = bivariate_image(a, x, std::nullopt, pt, prime);
            zp::Poly out;
            for (auto& c : im) out.push_back(c.empty() ? 0 : c[0]);
            zp::trim(out);
            return out;
        };
        const zp::Poly di = flat(d), pi = flat(p);
        if (!di.empty()) {
            zp::Poly q, r;
            zp::divrem(pi, di, q, r, prime);
            if (!r.empty()) return false;
        }
    }
    auto q = try_divide(p, d);
    if (!q) return false;
    if (quotient) *quotient = std::move(*q);
    return true;
}

Polynomial content_in(const Polynomial& p, EdgeVar x) {
    if (p.is_zero()) return p;
    if (!p.contains(x)) return normalize(p);
    auto cs = p.coefficients_wrt(x);
    std::sort(cs.begin(), cs.end(), [](const auto& a, const auto& b) { return a.term_count() < b.term_count(); });
    Polynomial g;
    for (const auto& c : cs) {
        if (c.is_zero()) continue;
        g = g.is_zero() ? normalize(c) : multivariate_gcd(g, c);
        if (g.is_constant()) return Polynomial::constant(1);
    }
    return g;
}

Polynomial multivariate_gcd(const Polynomial& f0, const Polynomial& g0) {
    if (f0.is_zero()) return g0.is_zero() ? Polynomial() : normalize(g0);
    if (g0.is_zero()) return normalize(f0);
    Polynomial f = normalize(f0), g = normalize(g0);
    if (f.is_constant() || g.is_constant()) return Polynomial::constant(1);
    if (f == g) return f;
    // Reduce both to their common variables by taking contents.
    bool changed = true;
    while (changed) {
        changed = false;
        for (const EdgeVar& y : std::vector<EdgeVar>(f.vars()))
            if (!g.contains(y) && f.contains(y)) {
                f = content_in(f, y);
                changed = true;
                if (f.is_constant()) return Polynomial::constant(1);
            }
        for (const EdgeVar& y : std::vector<EdgeVar>(g.vars()))
            if (!f.contains(y) && g.contains(y)) {
                g = content_in(g, y);
                changed = true;
                if (g.is_constant()) return Polynomial::constant(1);
            }
    }
    const EdgeVar x = f.vars().front();
    const Polynomial cf = content_in(f, x), cg = content_in(g, x);
    const Polynomial c = multivariate_gcd(cf, cg);
    const Polynomial h = prs_gcd(exact_divide(f, cf), exact_divide(g, cg), x);
    return normalize(c * h);
}

Factorization squarefree(const Polynomial& p) {
    if (p.is_zero()) throw Error(Errc::ZeroPolynomial, "squarefree decomposition of zero");
    Factorization out;
    std::vector<std::pair<Polynomial, int>> parts;
    auto rec = [&parts](auto&& self, const Polynomial& q0) -> void {
        if (q0.is_constant()) return;
        EdgeVar x = q0.vars().front();
        for (const EdgeVar& v : q0.vars())
            if (q0.degree(v) < q0.degree(x)) x = v;
        const Polynomial c = content_in(q0, x);
        self(self, c);
        const Polynomial q = normalize(exact_divide(q0, c));
        const Polynomial b = q.derivative(x);
        const Polynomial g = multivariate_gcd(q, b);
        Polynomial w = exact_divide(q, g);
        Polynomial z = exact_divide(b, g) - w.derivative(x);
        for (int i = 1; w.contains(x); ++i) {
            const Polynomial h = z.is_zero() ? normalize(w) : multivariate_gcd(w, z);
            if (!h.is_constant()) parts.emplace_back(h, i);
            w = exact_divide(w, h);
            z = exact_divide(z, h) - w.derivative(x);
        }
    };
    rec(rec, p);
    out.factors = std::move(parts);
    std::sort(out.factors.begin(), out.factors.end(), [](const auto& a, const auto& b) { return less_poly(a.first, b.first); });
    const Polynomial prod = out.expand();
    out.unit = mpq_class(p.leading_coefficient(), prod.leading_coefficient());
    out.unit.canonicalize();
    return out;
}

Irreducibility is_irreducible_q(const Polynomial& p, std::uint64_t seed) {
    if (p.is_constant()) throw Error(Errc::InvalidArgument, "irreducibility of a constant");
    const Polynomial q = normalize(p);
    if (q.total_degree() == 1) return Irreducibility::Irreducible;
    if (q.vars().size() == 1) {
        const auto fac = upoly::factor(to_dense(q, q.vars().front()));
        return fac.factors.size() == 1 && fac.factors.front().second == 1 ? Irreducibility::Irreducible
                                                                            : Irreducibility::Reducible;
    }
    std::mt19937_64 rng(seed ^ 0x697272ull);
    for (const EdgeVar& y : q.vars())
        if (!trivial_content(q, y, rng)) return Irreducibility::Reducible;
    const EdgeVar x = max_degree_var(q);
    const Polynomial lc = q.coefficients_wrt(x).front();
    int reducible_images = 0;
    for (int attempt = 0; attempt < 5; ++attempt) {
        const Point pt = random_point(q.vars(), x, 16L << (3 * attempt), rng);
        if (lc.evaluate(pt) == 0) continue;
        const ZPoly u = image(q, x, pt);
        if (upoly::degree(upoly::gcd(u, upoly::derivative(u))) > 0) continue;
        if (upoly::factor_squarefree(u).size() == 1) return Irreducibility::Irreducible;
        ++reducible_images;
    }
    if (reducible_images > 0) {
        try {
            const Factorization f = factor_q(q, FactorOptions{seed, FactorOptions{}.term_cap});
            int total = 0;
            for (const auto& [g, m] : f.factors) total += m;
            if (total >= 2) return Irreducibility::Reducible;
        } catch (const Error& e) {
            if (e.code() != Errc::BackendLimit) throw;
        }
    }
    return Irreducibility::Unknown;
}

Factorization factor_q(const Polynomial& p, const FactorOptions& options) {
    if (p.is_zero()) throw Error(Errc::ZeroPolynomial, "factorization of zero");
    Factorer f(options);
    f.run(p, 1);
    Factorization out;
    out.factors = std::move(f.found_);
    std::sort(out.factors.begin(), out.factors.end(), [](const auto& a, const auto& b) { return less_poly(a.first, b.first); });
    const Polynomial prod = out.expand();
    out.unit = mpq_class(p.leading_coefficient(), prod.leading_coefficient());
    out.unit.canonicalize();
    return out;
}

}  // namespace circpoly
