#include "circpoly/poly_io.hpp"

#include "circpoly/error.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace circpoly {

std::string serialize_polynomial(const Polynomial& p) {
    std::string out = "terms=" + std::to_string(p.term_count()) + "\n";
    const auto& vars = p.vars();
    for (std::size_t t = 0; t < p.term_count(); ++t) {
        out += p.coefficients()[t].get_str();
        const Monomial& m = p.monomials()[t];
        for (std::size_t k = 0; k < vars.size(); ++k) {
            const int e = m.exp(static_cast<int>(k));
            if (!e) continue;
            out += ' ';
            out += to_string(vars[k]);
            out += ':';
            out += std::to_string(e);
        }
        out += '\n';
    }
    return out;
}

namespace {

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
    throw Error(Errc::ParseError, "line " + std::to_string(line) + ": " + msg);
}

bool is_integer(const std::string& s) {
    std::size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
    if (start == s.size()) return false;
    return std::all_of(s.begin() + static_cast<std::ptrdiff_t>(start), s.end(),
                       [](unsigned char c) { return std::isdigit(c); });
}

}  // namespace

Polynomial parse_polynomial(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(in, line)) fail(1, "missing header");
    ++lineno;
    if (line.rfind("terms=", 0) != 0) fail(lineno, "expected \"terms=<count>\"");
    const std::string count_text = line.substr(6);
    if (count_text.empty() || !std::all_of(count_text.begin(), count_text.end(),
                                           [](unsigned char c) { return std::isdigit(c); }))
        fail(lineno, "bad term count");
    const std::size_t count = std::stoull(count_text);

    std::vector<std::vector<std::pair<EdgeVar, int>>> terms;
    std::vector<mpz_class> coeffs;
    std::vector<EdgeVar> vars;
    for (std::size_t t = 0; t < count; ++t) {
        if (!std::getline(in, line)) fail(lineno + 1, "expected " + std::to_string(count) + " terms");
        ++lineno;
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok) || !is_integer(tok)) fail(lineno, "expected integer coefficient");
        mpz_class c(tok, 10);
        if (sgn(c) == 0) fail(lineno, "zero coefficient");
        std::vector<std::pair<EdgeVar, int>> factors;
        while (ls >> tok) {
            const auto colon = tok.find(':');
            if (colon == std::string::npos) fail(lineno, "expected \"i,j:e\" but got \"" + tok + "\"");
            EdgeVar x{};
            try {
                x = parse_var(tok.substr(0, colon));
            } catch (const Error& e) {
                fail(lineno, e.what());
            }
            const std::string es = tok.substr(colon + 1);
            if (es.empty() || es.size() > 3 || !std::all_of(es.begin(), es.end(), [](unsigned char ch) { return std::isdigit(ch); }))
                fail(lineno, "bad exponent in \"" + tok + "\"");
            const int e = std::stoi(es);
            if (e < 1 || e > Monomial::kMaxDegree) fail(lineno, "exponent out of range");
            for (const auto& f : factors)
                if (f.first == x) fail(lineno, "repeated variable " + to_string(x));
            factors.emplace_back(x, e);
            vars.push_back(x);
        }
        terms.push_back(std::move(factors));
        coeffs.push_back(std::move(c));
    }
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") != std::string::npos) fail(lineno, "trailing content");
    }
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    if (vars.size() > static_cast<std::size_t>(Monomial::kMaxVars)) fail(lineno, "more than 31 variables");
    std::vector<Monomial> monos;
    monos.reserve(terms.size());
    for (std::size_t t = 0; t < terms.size(); ++t) {
        Monomial m;
        int deg = 0;
        for (const auto& [x, e] : terms[t]) {
            m.set_exp(static_cast<int>(std::lower_bound(vars.begin(), vars.end(), x) - vars.begin()), e);
            deg += e;
        }
        if (deg > Monomial::kMaxDegree) fail(t + 2, "total degree exceeds 127");
        monos.push_back(m);
    }
    auto sorted = monos;
    std::sort(sorted.begin(), sorted.end(), [](const Monomial& a, const Monomial& b) { return grevlex_greater(a, b); });
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) fail(lineno, "duplicate monomial");
    return Polynomial::from_terms(std::move(vars), std::move(monos), std::move(coeffs));
}

std::string pretty(const Polynomial& p) {
    if (p.is_zero()) return "0";
    std::ostringstream out;
    const auto& vars = p.vars();
    for (std::size_t t = 0; t < p.term_count(); ++t) {
        mpz_class c = p.coefficients()[t];
        const Monomial& m = p.monomials()[t];
        if (t == 0) {
            if (c < 0) out << "-";
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        c = abs(c);
        bool first = true;
        if (c != 1 || m.is_one()) {
            out << c.get_str();
            first = false;
        }
        for (std::size_t k = 0; k < vars.size(); ++k) {
            const int e = m.exp(static_cast<int>(k));
            if (!e) continue;
            if (!first) out << "*";
            first = false;
            if (vars[k].j > 9) out << "x{" << vars[k].i << "," << vars[k].j << "}";
            else out << "x" << vars[k].i << vars[k].j;
            if (e > 1) out << "^" << e;
        }
    }
    return out.str();
}

}  // namespace circpoly
