#include "circpoly/resultant.hpp"

#include "circpoly/error.hpp"

#include <algorithm>

namespace circpoly {

namespace {

// Coefficients in x, ascending by power; no trailing zeros.
using Dense = std::vector<Polynomial>;

Dense ascending(const Polynomial& p, EdgeVar x) {
    Dense out = p.coefficients_wrt(x);
    std::reverse(out.begin(), out.end());
    return out;
}

int deg(const Dense& a) { return static_cast<int>(a.size()) - 1; }

void trim(Dense& a) {
    while (!a.empty() && a.back().is_zero()) a.pop_back();
}

Polynomial power(const Polynomial& p, int k) { return k == 0 ? Polynomial::constant(1) : p.pow(static_cast<unsigned>(k)); }

// lc(b)^(deg a - deg b + 1) * a mod b.
Dense pseudo_remainder(Dense a, const Dense& b) {
    const int db = deg(b);
    const Polynomial& lb = b.back();
    int e = deg(a) - db + 1;
    while (!a.empty() && deg(a) >= db) {
        const Polynomial c = a.back();
        const int shift = deg(a) - db;
        a.pop_back();
        for (auto& t : a) t *= lb;
        for (int k = 0; k < db; ++k)
            if (!b[k].is_zero()) a[k + shift] -= c * b[k];
        trim(a);
        --e;
    }
    if (e > 0 && !a.empty()) {
        const Polynomial scale = power(lb, e);
        for (auto& t : a) t *= scale;
    }
    return a;
}

Polynomial subresultant(Dense a, Dense b) {
    int sign = 1;
    if (deg(a) < deg(b)) {
        if (deg(a) % 2 && deg(b) % 2) sign = -1;
        std::swap(a, b);
    }
    if (deg(b) == 0) return power(b[0], deg(a)) * mpz_class(sign);
    Polynomial g = Polynomial::constant(1), h = Polynomial::constant(1);
    while (true) {
        const int delta = deg(a) - deg(b);
        if (deg(a) % 2 && deg(b) % 2) sign = -sign;
        Dense r = pseudo_remainder(std::move(a), b);
        a = std::move(b);
        if (r.empty()) return Polynomial();
        const Polynomial divisor = g * power(h, delta);
        for (auto& t : r) t = exact_divide(t, divisor);
        b = std::move(r);
        g = a.back();
        if (delta == 0) {
        } else if (delta == 1) {
            h = g;
        } else {
            h = exact_divide(power(g, delta), power(h, delta - 1));
        }
        if (deg(b) == 0) break;
    }
    const int da = deg(a);
    Polynomial out = da == 1 ? b[0] : exact_divide(power(b[0], da), power(h, da - 1));
    return out * mpz_class(sign);
}

Polynomial bareiss(PolyMatrix m) {
    const std::size_t n = m.size();
    if (n == 0) return Polynomial::constant(1);
    int sign = 1;
    Polynomial prev = Polynomial::constant(1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::size_t piv = n;
        for (std::size_t i = k; i < n; ++i)
            if (!m[i][k].is_zero() && (piv == n || m[i][k].term_count() < m[piv][k].term_count())) piv = i;
        if (piv == n) return Polynomial();
        if (piv != k) {
            std::swap(m[piv], m[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Polynomial t = m[k][k] * m[i][j];
                if (!m[i][k].is_zero() && !m[k][j].is_zero()) t -= m[i][k] * m[k][j];
                m[i][j] = exact_divide(t, prev);
            }
            m[i][k] = Polynomial();
        }
        prev = m[k][k];
    }
    return m[n - 1][n - 1] * mpz_class(sign);
}

Polynomial cofactor(const PolyMatrix& m, std::vector<std::size_t>& cols, std::size_t row) {
    if (cols.empty()) return Polynomial::constant(1);
    Polynomial sum;
    for (std::size_t k = 0; k < cols.size(); ++k) {
        const Polynomial& entry = m[row][cols[k]];
        if (entry.is_zero()) continue;
        std::vector<std::size_t> rest;
        rest.reserve(cols.size() - 1);
        for (std::size_t c = 0; c < cols.size(); ++c)
            if (c != k) rest.push_back(cols[c]);
        Polynomial term = entry * cofactor(m, rest, row + 1);
        if (k % 2) sum -= term;
        else sum += term;
    }
    return sum;
}

}  // namespace

SylvesterMatrix sylvester(const Polynomial& f, const Polynomial& g, EdgeVar x) {
    const int r = f.is_zero() ? 0 : f.degree(x);
    const int s = g.is_zero() ? 0 : g.degree(x);
    if (r + s < 1) throw Error(Errc::BothDegreeZero, "neither polynomial involves " + to_string(x));
    const auto fc = f.coefficients_wrt(x), gc = g.coefficients_wrt(x);
    SylvesterMatrix out;
    out.r = r;
    out.s = s;
    const int n = r + s;
    out.entries.assign(n, std::vector<Polynomial>(n));
    for (int row = 0; row < s; ++row)
        for (int k = 0; k <= r && !fc.empty(); ++k) out.entries[row][row + k] = fc[k];
    for (int row = 0; row < r; ++row)
        for (int k = 0; k <= s && !gc.empty(); ++k) out.entries[s + row][row + k] = gc[k];
    return out;
}

Polynomial determinant(const PolyMatrix& m, DeterminantMethod method) {
    for (const auto& row : m)
        if (row.size() != m.size()) throw Error(Errc::InvalidArgument, "determinant of a non-square matrix");
    if (method == DeterminantMethod::Cofactor) {
        std::vector<std::size_t> cols(m.size());
        for (std::size_t k = 0; k < cols.size(); ++k) cols[k] = k;
        return cofactor(m, cols, 0);
    }
    return bareiss(m);
}

Polynomial resultant(const Polynomial& f, const Polynomial& g, EdgeVar x, ResultantMethod method) {
    const int r = f.is_zero() ? 0 : f.degree(x);
    const int s = g.is_zero() ? 0 : g.degree(x);
    if (r + s < 1) throw Error(Errc::BothDegreeZero, "neither polynomial involves " + to_string(x));
    if (f.is_zero() || g.is_zero()) return Polynomial();
    if (s == 0) return power(g, r);
    if (r == 0) return power(f, s);
    if (method == ResultantMethod::Auto) method = ResultantMethod::Subresultant;
    switch (method) {
        case ResultantMethod::Subresultant: return subresultant(ascending(f, x), ascending(g, x));
        case ResultantMethod::Cofactor: return determinant(sylvester(f, g, x).entries, DeterminantMethod::Cofactor);
        default: return determinant(sylvester(f, g, x).entries, DeterminantMethod::Bareiss);
    }
}

}  // namespace circpoly
