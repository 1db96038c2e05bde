#include "circpoly/polynomial.hpp"

#include "circpoly/error.hpp"
#include "kernels.hpp"

#include <algorithm>
#include <numeric>

namespace circpoly {

namespace {

// For each source variable, its position in `to` (which must contain it).
std::vector<int> position_map(const std::vector<EdgeVar>& from, const std::vector<EdgeVar>& to) {
    std::vector<int> pos(from.size());
    for (std::size_t k = 0; k < from.size(); ++k) {
        auto it = std::lower_bound(to.begin(), to.end(), from[k]);
        pos[k] = static_cast<int>(it - to.begin());
    }
    return pos;
}

Monomial remap(const Monomial& m, const std::vector<int>& pos) {
    Monomial r;
    for (std::size_t k = 0; k < pos.size(); ++k) {
        const int e = m.exp(static_cast<int>(k));
        if (e) r.set_exp(pos[k], e);
    }
    return r;
}

std::vector<Monomial> remap_all(const std::vector<Monomial>& monos, const std::vector<EdgeVar>& from,
                                const std::vector<EdgeVar>& to) {
    if (from == to) return monos;
    const auto pos = position_map(from, to);
    std::vector<Monomial> out;
    out.reserve(monos.size());
    for (const Monomial& m : monos) out.push_back(remap(m, pos));
    return out;
}

void check_var_count(std::size_t n) {
    if (n > static_cast<std::size_t>(Monomial::kMaxVars))
        throw Error(Errc::TooLarge, "more than 31 variables in one polynomial");
}

detail::TermSpan span_of(const std::vector<Monomial>& m, const std::vector<mpz_class>& c) {
    return detail::TermSpan{m.data(), c.data(), m.size()};
}

}  // namespace

std::vector<EdgeVar> merge_vars(const std::vector<EdgeVar>& a, const std::vector<EdgeVar>& b) {
    std::vector<EdgeVar> out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    check_var_count(out.size());
    return out;
}

Polynomial Polynomial::constant(const mpz_class& c) {
    Polynomial p;
    if (sgn(c) != 0) {
        p.monos_.emplace_back();
        p.coeffs_.push_back(c);
    }
    return p;
}

Polynomial Polynomial::variable(EdgeVar x, int exponent) {
    if (x.i < 1 || x.i >= x.j) throw Error(Errc::InvalidArgument, "bad variable " + to_string(x));
    if (exponent < 0 || exponent > Monomial::kMaxDegree) throw Error(Errc::TooLarge, "exponent out of range");
    if (exponent == 0) return constant(1);
    Polynomial p;
    p.vars_.push_back(x);
    Monomial m;
    m.set_exp(0, exponent);
    p.monos_.push_back(m);
    p.coeffs_.emplace_back(1);
    return p;
}

Polynomial Polynomial::from_terms(std::vector<EdgeVar> vars, std::vector<Monomial> monos,
                                  std::vector<mpz_class> coeffs) {
    check_var_count(vars.size());
    std::vector<std::size_t> order(monos.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return grevlex_greater(monos[x], monos[y]); });
    Polynomial p;
    p.vars_ = std::move(vars);
    for (std::size_t k = 0; k < order.size();) {
        const Monomial& m = monos[order[k]];
        mpz_class c = std::move(coeffs[order[k]]);
        std::size_t l = k + 1;
        for (; l < order.size() && monos[order[l]] == m; ++l) c += coeffs[order[l]];
        if (sgn(c) != 0) {
            p.monos_.push_back(m);
            p.coeffs_.push_back(std::move(c));
        }
        k = l;
    }
    p.prune_vars();
    return p;
}

Polynomial Polynomial::from_sorted(std::vector<EdgeVar> vars, std::vector<Monomial> monos,
                                   std::vector<mpz_class> coeffs) {
    Polynomial p;
    p.vars_ = std::move(vars);
    p.monos_ = std::move(monos);
    p.coeffs_ = std::move(coeffs);
    p.prune_vars();
    return p;
}

void Polynomial::prune_vars() {
    std::array<std::uint64_t, 4> used{};
    for (const Monomial& m : monos_)
        for (int i = 0; i < 4; ++i) used[i] |= m.w[i];
    std::vector<EdgeVar> kept;
    bool all = true;
    for (std::size_t k = 0; k < vars_.size(); ++k) {
        const bool u = (used[k >> 3] >> ((k & 7) * 8)) & 0xffu;
        if (u) kept.push_back(vars_[k]);
        else all = false;
    }
    if (all) return;
    monos_ = remap_all(monos_, vars_, kept);
    vars_ = std::move(kept);
}

int Polynomial::var_index(EdgeVar x) const {
    auto it = std::lower_bound(vars_.begin(), vars_.end(), x);
    return (it != vars_.end() && *it == x) ? static_cast<int>(it - vars_.begin()) : -1;
}

int Polynomial::degree(EdgeVar x) const {
    const int k = var_index(x);
    if (k < 0) return 0;
    int d = 0;
    for (const Monomial& m : monos_) d = std::max(d, m.exp(k));
    return d;
}

int Polynomial::total_degree() const {
    int d = 0;
    for (const Monomial& m : monos_) d = std::max(d, m.degree());
    return d;
}

std::optional<int> Polynomial::hom_degree() const {
    if (monos_.empty()) return std::nullopt;
    const int d = monos_.front().degree();
    for (const Monomial& m : monos_)
        if (m.degree() != d) return std::nullopt;
    return d;
}

mpz_class Polynomial::content() const {
    mpz_class g = 0;
    for (const mpz_class& c : coeffs_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

Polynomial Polynomial::primitive() const {
    if (is_zero()) return *this;
    const mpz_class g = content();
    return g == 1 ? *this : divided_by(g);
}

Polynomial Polynomial::normalized() const {
    if (is_zero()) return *this;
    mpz_class g = content();
    if (sgn(coeffs_.front()) < 0) g = -g;
    return g == 1 ? *this : divided_by(g);
}

bool Polynomial::is_normalized() const {
    return is_zero() || (sgn(coeffs_.front()) > 0 && content() == 1);
}

Polynomial Polynomial::divided_by(const mpz_class& c) const {
    Polynomial p = *this;
    for (mpz_class& x : p.coeffs_) {
        if (!mpz_divisible_p(x.get_mpz_t(), c.get_mpz_t()))
            throw Error(Errc::NotDivisible, "coefficient not divisible by scalar");
        mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
    }
    return p;
}

Polynomial Polynomial::operator-() const {
    Polynomial p = *this;
    for (mpz_class& c : p.coeffs_) mpz_neg(c.get_mpz_t(), c.get_mpz_t());
    return p;
}

namespace {

Polynomial add_impl(const Polynomial& a, const Polynomial& b, bool subtract) {
    const auto vars = merge_vars(a.vars(), b.vars());
    const auto am = remap_all(a.monomials(), a.vars(), vars);
    const auto bm = remap_all(b.monomials(), b.vars(), vars);
    const auto& ac = a.coefficients();
    const auto& bc = b.coefficients();
    std::vector<Monomial> om;
    std::vector<mpz_class> oc;
    om.reserve(am.size() + bm.size());
    oc.reserve(am.size() + bm.size());
    std::size_t i = 0, j = 0;
    while (i < am.size() || j < bm.size()) {
        if (j == bm.size() || (i < am.size() && grevlex_greater(am[i], bm[j]))) {
            om.push_back(am[i]);
            oc.push_back(ac[i++]);
        } else if (i == am.size() || grevlex_greater(bm[j], am[i])) {
            om.push_back(bm[j]);
            oc.push_back(subtract ? mpz_class(-bc[j]) : bc[j]);
            ++j;
        } else {
            mpz_class c = subtract ? mpz_class(ac[i] - bc[j]) : mpz_class(ac[i] + bc[j]);
            if (sgn(c) != 0) {
                om.push_back(am[i]);
                oc.push_back(std::move(c));
            }
            ++i;
            ++j;
        }
    }
    return Polynomial::from_sorted(vars, std::move(om), std::move(oc));
}

}  // namespace

Polynomial& Polynomial::operator+=(const Polynomial& o) { return *this = add_impl(*this, o, false); }
Polynomial& Polynomial::operator-=(const Polynomial& o) { return *this = add_impl(*this, o, true); }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return Polynomial();
    if (a.total_degree() + b.total_degree() > Monomial::kMaxDegree)
        throw Error(Errc::TooLarge, "product degree exceeds 127");
    const auto vars = merge_vars(a.vars(), b.vars());
    const auto am = remap_all(a.monomials(), a.vars(), vars);
    const auto bm = remap_all(b.monomials(), b.vars(), vars);
    std::vector<Monomial> om;
    std::vector<mpz_class> oc;
    detail::multiply_terms(span_of(am, a.coefficients()), span_of(bm, b.coefficients()), om, oc);
    return Polynomial::from_sorted(vars, std::move(om), std::move(oc));
}

Polynomial& Polynomial::operator*=(const Polynomial& o) { return *this = *this * o; }

Polynomial& Polynomial::operator*=(const mpz_class& c) {
    if (sgn(c) == 0) return *this = Polynomial();
    for (mpz_class& x : coeffs_) x *= c;
    return *this;
}

Polynomial Polynomial::pow(unsigned k) const {
    Polynomial result = constant(1), base = *this;
    while (k) {
        if (k & 1u) result *= base;
        k >>= 1;
        if (k) base *= base;
    }
    return result;
}

Polynomial Polynomial::derivative(EdgeVar x) const {
    const int k = var_index(x);
    if (k < 0) return Polynomial();
    std::vector<Monomial> om;
    std::vector<mpz_class> oc;
    for (std::size_t t = 0; t < monos_.size(); ++t) {
        const int e = monos_[t].exp(k);
        if (e == 0) continue;
        Monomial m = monos_[t];
        m.set_exp(k, e - 1);
        om.push_back(m);
        oc.push_back(coeffs_[t] * e);
    }
    return from_sorted(vars_, std::move(om), std::move(oc));
}

std::vector<Polynomial> Polynomial::coefficients_wrt(EdgeVar x) const {
    if (is_zero()) return {};
    const int k = var_index(x);
    if (k < 0) return {*this};
    const int d = degree(x);
    std::vector<std::vector<Monomial>> bm(d + 1);
    std::vector<std::vector<mpz_class>> bc(d + 1);
    for (std::size_t t = 0; t < monos_.size(); ++t) {
        const int e = monos_[t].exp(k);
        Monomial m = monos_[t];
        m.set_exp(k, 0);
        bm[e].push_back(m);
        bc[e].push_back(coeffs_[t]);
    }
    std::vector<Polynomial> out;
    out.reserve(d + 1);
    for (int e = d; e >= 0; --e) out.push_back(from_sorted(vars_, std::move(bm[e]), std::move(bc[e])));
    return out;
}

Polynomial Polynomial::from_coefficients(EdgeVar x, const std::vector<Polynomial>& descending) {
    std::vector<EdgeVar> vars{x};
    for (const Polynomial& c : descending) {
        if (c.contains(x)) throw Error(Errc::InvalidArgument, "coefficient contains the main variable");
        vars = merge_vars(vars, c.vars());
    }
    const int k = static_cast<int>(std::lower_bound(vars.begin(), vars.end(), x) - vars.begin());
    std::vector<Monomial> om;
    std::vector<mpz_class> oc;
    const int d = static_cast<int>(descending.size()) - 1;
    for (int idx = 0; idx <= d; ++idx) {
        const Polynomial& c = descending[idx];
        const int e = d - idx;
        for (Monomial m : remap_all(c.monomials(), c.vars(), vars)) {
            if (e) m.set_exp(k, e);
            if (m.degree() > Monomial::kMaxDegree) throw Error(Errc::TooLarge, "degree exceeds 127");
            om.push_back(m);
        }
        oc.insert(oc.end(), c.coefficients().begin(), c.coefficients().end());
    }
    return from_terms(std::move(vars), std::move(om), std::move(oc));
}

Polynomial Polynomial::relabel_vertices(const std::map<int, int>& map) const {
    std::vector<EdgeVar> renamed;
    for (const EdgeVar& x : vars_) {
        auto a = map.find(x.i), b = map.find(x.j);
        if (a == map.end() || b == map.end())
            throw Error(Errc::InvalidArgument, "relabeling misses a vertex of " + to_string(x));
        renamed.push_back(make_var(a->second, b->second));
    }
    std::vector<EdgeVar> sorted = renamed;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw Error(Errc::InvalidArgument, "relabeling is not injective on the support");
    std::vector<int> pos(vars_.size());
    for (std::size_t k = 0; k < vars_.size(); ++k)
        pos[k] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), renamed[k]) - sorted.begin());
    std::vector<Monomial> om;
    om.reserve(monos_.size());
    for (const Monomial& m : monos_) om.push_back(remap(m, pos));
    return from_terms(std::move(sorted), std::move(om), coeffs_);
}

std::vector<Monomial> Polynomial::monomials_over(const std::vector<EdgeVar>& vars) const {
    for (const EdgeVar& x : vars_)
        if (!std::binary_search(vars.begin(), vars.end(), x))
            throw Error(Errc::InvalidArgument, "target variable list misses " + to_string(x));
    return remap_all(monos_, vars_, vars);
}

namespace {

template <class Value>
std::vector<std::vector<Value>> power_table(const Polynomial& p, const std::map<EdgeVar, Value>& assignment) {
    std::vector<std::vector<Value>> table(p.vars().size());
    for (std::size_t k = 0; k < p.vars().size(); ++k) {
        auto it = assignment.find(p.vars()[k]);
        if (it == assignment.end()) throw Error(Errc::MissingAssignment, "no value for " + to_string(p.vars()[k]));
        const int d = p.degree(p.vars()[k]);
        table[k].resize(d + 1);
        table[k][0] = 1;
        for (int e = 1; e <= d; ++e) table[k][e] = table[k][e - 1] * it->second;
    }
    return table;
}

template <class Value>
Value evaluate_impl(const Polynomial& p, const std::map<EdgeVar, Value>& assignment) {
    const auto table = power_table(p, assignment);
    Value sum = 0, term;
    const auto& monos = p.monomials();
    const auto& coeffs = p.coefficients();
    for (std::size_t t = 0; t < monos.size(); ++t) {
        term = coeffs[t];
        for (std::size_t k = 0; k < table.size(); ++k) {
            const int e = monos[t].exp(static_cast<int>(k));
            if (e) term *= table[k][e];
        }
        sum += term;
    }
    return sum;
}

}  // namespace

mpq_class Polynomial::evaluate(const std::map<EdgeVar, mpq_class>& assignment) const {
    std::map<EdgeVar, mpq_class> canonical = assignment;
    for (auto& [x, v] : canonical) v.canonicalize();
    mpq_class r = evaluate_impl(*this, canonical);
    r.canonicalize();
    return r;
}

mpz_class Polynomial::evaluate(const std::map<EdgeVar, mpz_class>& assignment) const {
    return evaluate_impl(*this, assignment);
}

Polynomial Polynomial::substitute(const std::map<EdgeVar, mpz_class>& assignment) const {
    std::vector<int> ks;
    std::vector<std::vector<mpz_class>> table;
    for (std::size_t k = 0; k < vars_.size(); ++k) {
        auto it = assignment.find(vars_[k]);
        if (it == assignment.end()) continue;
        ks.push_back(static_cast<int>(k));
        const int d = degree(vars_[k]);
        std::vector<mpz_class> pw(d + 1);
        pw[0] = 1;
        for (int e = 1; e <= d; ++e) pw[e] = pw[e - 1] * it->second;
        table.push_back(std::move(pw));
    }
    if (ks.empty()) return *this;
    std::vector<Monomial> om;
    std::vector<mpz_class> oc;
    om.reserve(monos_.size());
    oc.reserve(monos_.size());
    for (std::size_t t = 0; t < monos_.size(); ++t) {
        Monomial m = monos_[t];
        mpz_class c = coeffs_[t];
        for (std::size_t s = 0; s < ks.size(); ++s) {
            const int e = m.exp(ks[s]);
            if (!e) continue;
            c *= table[s][e];
            m.set_exp(ks[s], 0);
        }
        om.push_back(m);
        oc.push_back(std::move(c));
    }
    return from_terms(vars_, std::move(om), std::move(oc));
}

std::size_t Polynomial::hash() const {
    std::size_t h = 0xcbf29ce484222325ull;
    auto mix = [&h](std::size_t x) {
        h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    };
    for (const EdgeVar& x : vars_) mix(static_cast<std::size_t>(x.i) * 1315423911u + x.j);
    for (std::size_t t = 0; t < monos_.size(); ++t) {
        mix(MonomialHash{}(monos_[t]));
        mix(mpz_get_ui(coeffs_[t].get_mpz_t()) ^ static_cast<std::size_t>(sgn(coeffs_[t]) + 1));
    }
    return h;
}

Polynomial exact_divide(const Polynomial& a, const Polynomial& b) {
    auto q = try_divide(a, b);
    if (!q) throw Error(Errc::NotDivisible, "polynomial division is not exact");
    return std::move(*q);
}

std::optional<Polynomial> try_divide(const Polynomial& a, const Polynomial& b) {
    if (b.is_zero()) return std::nullopt;
    if (a.is_zero()) return Polynomial();
    for (const EdgeVar& x : b.vars())
        if (!a.contains(x)) return std::nullopt;
    if (b.is_constant()) {
        const mpz_class& c = b.leading_coefficient();
        for (const mpz_class& x : a.coefficients())
            if (!mpz_divisible_p(x.get_mpz_t(), c.get_mpz_t())) return std::nullopt;
        return a.divided_by(c);
    }
    const auto bm = b.monomials_over(a.vars());
    std::vector<Monomial> om;
    std::vector<mpz_class> oc;
    if (!detail::divide_terms(span_of(a.monomials(), a.coefficients()), span_of(bm, b.coefficients()), om, oc))
        return std::nullopt;
    return Polynomial::from_sorted(a.vars(), std::move(om), std::move(oc));
}

Polynomial normalize(const Polynomial& p) { return p.normalized(); }

Graph support_graph(const Polynomial& p) {
    std::vector<Edge> es;
    int n = 0;
    for (const EdgeVar& x : p.vars()) {
        es.push_back(edge_of(x));
        n = std::max(n, x.j);
    }
    return Graph(n, std::move(es));
}

Inspection inspect(const Polynomial& p) {
    if (p.is_zero()) throw Error(Errc::ZeroPolynomial, "cannot inspect the zero polynomial");
    Inspection out;
    out.support = support_graph(p);
    out.hom_degree = p.hom_degree();
    out.term_count = p.term_count();
    std::vector<int> deg(p.vars().size(), 0);
    for (const Monomial& m : p.monomials())
        for (std::size_t k = 0; k < deg.size(); ++k) deg[k] = std::max(deg[k], m.exp(static_cast<int>(k)));
    for (std::size_t k = 0; k < deg.size(); ++k) out.degree_in[p.vars()[k]] = deg[k];
    return out;
}

}  // namespace circpoly
