#include "circpoly/cayley.hpp"

#include "circpoly/canonical.hpp"
#include "circpoly/error.hpp"
#include "circpoly/poly_io.hpp"
#include "circpoly/sparsity.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <random>
#include <set>
#include <thread>
#include <unordered_set>

namespace circpoly {

Polynomial cayley_entry(int r, int c) {
    if (r < 0 || c < 0) throw Error(Errc::BadIndices, "negative index");
    if (r == c) return Polynomial();
    if (r == 0 || c == 0) return Polynomial::constant(1);
    return Polynomial::variable(make_var(r, c));
}

namespace {

void check_indices(int n, const Index5& idx) {
    for (int k = 0; k < 5; ++k) {
        if (idx[k] < 0 || idx[k] > n) throw Error(Errc::BadIndices, "index out of range 0.." + std::to_string(n));
        if (k > 0 && idx[k] <= idx[k - 1]) throw Error(Errc::BadIndices, "indices must increase strictly");
    }
}

struct Permutations {
    std::vector<std::array<int, 5>> perms;
    std::vector<int> signs;
    Permutations() {
        std::array<int, 5> p{0, 1, 2, 3, 4};
        do {
            int inv = 0;
            for (int a = 0; a < 5; ++a)
                for (int b = a + 1; b < 5; ++b) inv += p[a] > p[b];
            perms.push_back(p);
            signs.push_back(inv % 2 ? -1 : 1);
        } while (std::next_permutation(p.begin(), p.end()));
    }
};

const Permutations& permutations() {
    static const Permutations table;
    return table;
}

}  // namespace

Polynomial minor_determinant(int n, const Index5& rows, const Index5& cols) {
    check_indices(n, rows);
    check_indices(n, cols);
    // Entry codes: -2 zero, -1 one, k >= 0 local variable k.
    std::vector<EdgeVar> vars;
    for (int r : rows)
        for (int c : cols)
            if (r != c && r > 0 && c > 0) vars.push_back(make_var(r, c));
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    int code[5][5];
    for (int a = 0; a < 5; ++a)
        for (int b = 0; b < 5; ++b) {
            const int r = rows[a], c = cols[b];
            if (r == c) code[a][b] = -2;
            else if (r == 0 || c == 0) code[a][b] = -1;
            else
                code[a][b] = static_cast<int>(std::lower_bound(vars.begin(), vars.end(), make_var(r, c)) - vars.begin());
        }
    const Permutations& table = permutations();
    std::vector<Monomial> monos;
    std::vector<mpz_class> coeffs;
    for (std::size_t t = 0; t < table.perms.size(); ++t) {
        Monomial m;
        bool zero = false;
        for (int a = 0; a < 5 && !zero; ++a) {
            const int k = code[a][table.perms[t][a]];
            if (k == -2) zero = true;
            else if (k >= 0) m.set_exp(k, m.exp(k) + 1);
        }
        if (zero) continue;
        monos.push_back(m);
        coeffs.emplace_back(table.signs[t]);
    }
    return Polynomial::from_terms(std::move(vars), std::move(monos), std::move(coeffs));
}

Polynomial minor_polynomial(int n, const Index5& rows, const Index5& cols) {
    return minor_determinant(n, rows, cols).normalized();
}

Polynomial k4_polynomial(const std::array<int, 4>& quad) {
    static const Polynomial base = minor_polynomial(4, {0, 1, 2, 3, 4}, {0, 1, 2, 3, 4});
    std::set<int> distinct(quad.begin(), quad.end());
    if (distinct.size() != 4 || *distinct.begin() < 1) throw Error(Errc::InvalidArgument, "K4 needs 4 distinct vertices");
    return base.relabel_vertices({{1, quad[0]}, {2, quad[1]}, {3, quad[2]}, {4, quad[3]}}).normalized();
}

namespace {

std::vector<Index5> five_subsets(const std::vector<int>& pool) {
    std::vector<Index5> out;
    const int m = static_cast<int>(pool.size());
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b)
            for (int c = b + 1; c < m; ++c)
                for (int d = c + 1; d < m; ++d)
                    for (int e = d + 1; e < m; ++e) out.push_back({pool[a], pool[b], pool[c], pool[d], pool[e]});
    return out;
}

struct Hash128 {
    std::uint64_t lo = 0, hi = 0;
    friend bool operator==(const Hash128&, const Hash128&) = default;
};

struct Hash128Hasher {
    std::size_t operator()(const Hash128& h) const noexcept { return static_cast<std::size_t>(h.lo ^ (h.hi * 0x9e3779b97f4a7c15ull)); }
};

Hash128 fingerprint(const std::string& text) {
    std::uint64_t a = 0xcbf29ce484222325ull, b = 0x84222325cbf29ce4ull;
    for (unsigned char ch : text) {
        a = (a ^ ch) * 0x100000001b3ull;
        b = (b ^ ch) * 0x00000100000001b3ull + 0x9e3779b97f4a7c15ull;
        b ^= b >> 29;
    }
    return {a, b};
}

std::uint64_t support_mask(const Polynomial& p, int n) {
    std::uint64_t mask = 0;
    for (const EdgeVar& x : p.vars()) {
        const int idx = (x.i - 1) * n - (x.i - 1) * x.i / 2 + (x.j - x.i - 1);
        mask |= std::uint64_t{1} << idx;
    }
    return mask;
}

Graph mask_graph(std::uint64_t mask, int n) {
    std::vector<Edge> es;
    int idx = 0;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j, ++idx)
            if ((mask >> idx) & 1u) es.push_back({i, j});
    return Graph(n, std::move(es));
}

}  // namespace

Census enumerate_generators(int n, unsigned threads) {
    if (n < 4 || n > 10) throw Error(Errc::TooLarge, "census supports 4 <= n <= 10");
    std::vector<int> pool(n + 1);
    for (int k = 0; k <= n; ++k) pool[k] = k;
    const auto subsets = five_subsets(pool);
    const std::size_t total = subsets.size() * subsets.size();
    threads = std::max(1u, threads);

    struct Local {
        std::size_t nonzero = 0;
        std::unordered_set<Hash128, Hash128Hasher> minors;
        std::unordered_set<std::uint64_t> supports;
    };
    std::vector<Local> locals(threads);
    auto work = [&](unsigned t) {
        Local& mine = locals[t];
        for (std::size_t k = t; k < total; k += threads) {
            const Polynomial p = minor_determinant(n, subsets[k / subsets.size()], subsets[k % subsets.size()]);
            if (p.is_zero()) continue;
            ++mine.nonzero;
            const Polynomial q = p.normalized();
            mine.minors.insert(fingerprint(serialize_polynomial(q)));
            mine.supports.insert(support_mask(q, n));
        }
    };
    std::vector<std::thread> pool_threads;
    for (unsigned t = 1; t < threads; ++t) pool_threads.emplace_back(work, t);
    work(0);
    for (auto& th : pool_threads) th.join();

    Census census;
    census.n = n;
    census.index_pairs = total;
    std::unordered_set<Hash128, Hash128Hasher> minors;
    std::set<std::uint64_t> supports;
    for (Local& l : locals) {
        census.nonzero_minors += l.nonzero;
        minors.insert(l.minors.begin(), l.minors.end());
        supports.insert(l.supports.begin(), l.supports.end());
    }
    census.distinct_minors = minors.size();
    census.distinct_supports = supports.size();
    std::map<std::string, IsoClassSummary> classes;
    for (std::uint64_t mask : supports) {
        const Graph g = mask_graph(mask, n);
        const std::string label = canonical_label(g);
        auto [it, fresh] = classes.try_emplace(label);
        if (fresh) {
            it->second.label = label;
            it->second.representative = compact(g).graph;
        }
        ++it->second.supports;
    }
    for (auto& [label, summary] : classes) census.iso_classes.push_back(std::move(summary));
    std::sort(census.iso_classes.begin(), census.iso_classes.end(), [](const auto& a, const auto& b) {
        const auto ka = std::make_tuple(a.representative.vertices().size(), a.representative.edge_count(), a.label);
        const auto kb = std::make_tuple(b.representative.vertices().size(), b.representative.edge_count(), b.label);
        return ka < kb;
    });
    return census;
}

std::vector<GeneratorRecord> generators_on_support(const Graph& g) {
    const auto vs = g.vertices();
    if (vs.size() > 10) throw Error(Errc::TooLarge, "generator search limited to 10 vertices");
    std::vector<int> pool{0};
    pool.insert(pool.end(), vs.begin(), vs.end());
    const auto subsets = five_subsets(pool);
    const int n = vs.empty() ? 0 : vs.back();
    std::vector<GeneratorRecord> out;
    std::set<std::string> seen;
    const std::string label = vs.size() <= static_cast<std::size_t>(kMaxCanonicalVertices) ? canonical_label(g) : "";
    for (std::size_t a = 0; a < subsets.size(); ++a) {
        for (std::size_t b = a; b < subsets.size(); ++b) {
            const Polynomial p = minor_determinant(n, subsets[a], subsets[b]);
            if (p.is_zero() || p.vars().size() != g.edge_count()) continue;
            const Graph s = support_graph(p);
            if (s.edges() != g.edges()) continue;
            const Polynomial q = p.normalized();
            if (!seen.insert(serialize_polynomial(q)).second) continue;
            out.push_back(GeneratorRecord{q, s, subsets[a], subsets[b], label});
        }
    }
    return out;
}

std::optional<GeneratorRecord> select_generator(const Graph& g, std::optional<EdgeVar> elim) {
    auto all = generators_on_support(g);
    if (all.empty()) return std::nullopt;
    auto key = [&](const GeneratorRecord& r) {
        const int h = r.polynomial.hom_degree().value_or(r.polynomial.total_degree());
        const int d = elim ? r.polynomial.degree(*elim) : 0;
        return std::make_tuple(h, d, r.polynomial.term_count(), r.rows, r.cols);
    };
    return *std::min_element(all.begin(), all.end(), [&](const auto& a, const auto& b) { return key(a) < key(b); });
}

Realization random_realization(int n, long bound, std::uint64_t seed) {
    if (bound < 2) throw Error(Errc::InvalidArgument, "coordinate bound must be at least 2");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> coord(-bound, bound);
    Realization r;
    r.points.resize(n + 1);
    std::set<std::pair<long, long>> used;
    for (int v = 1; v <= n; ++v) {
        std::pair<long, long> pt;
        do {
            pt = {coord(rng), coord(rng)};
        } while (!used.insert(pt).second);
        r.points[v] = {mpz_class(pt.first), mpz_class(pt.second)};
    }
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            const mpz_class dx = r.points[i][0] - r.points[j][0], dy = r.points[i][1] - r.points[j][1];
            r.distances[EdgeVar{i, j}] = dx * dx + dy * dy;
        }
    return r;
}

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

// Distinct primes below 2^62 used for modular evaluation.
std::vector<std::uint64_t> evaluation_primes(std::size_t count) {
    std::vector<std::uint64_t> out;
    mpz_class candidate = (mpz_class(1) << 62);
    while (out.size() < count) {
        candidate -= 1;
        if (mpz_probab_prime_p(candidate.get_mpz_t(), 30)) out.push_back(candidate.get_ui());
    }
    return out;
}

// True iff p vanishes exactly at the integer point (checked modulo enough primes).
bool vanishes_at(const Polynomial& p, const std::map<EdgeVar, mpz_class>& values) {
    if (p.is_zero()) return true;
    const auto& vars = p.vars();
    mpz_class l1 = 0;
    for (const mpz_class& c : p.coefficients()) l1 += abs(c);
    mpz_class vmax = 1;
    for (const EdgeVar& x : vars) vmax = std::max(vmax, mpz_class(abs(values.at(x))));
    const std::size_t bits = mpz_sizeinbase(l1.get_mpz_t(), 2) +
                             static_cast<std::size_t>(p.total_degree()) * mpz_sizeinbase(vmax.get_mpz_t(), 2) + 2;
    static const std::vector<std::uint64_t> primes = evaluation_primes(64);
    const std::size_t needed = bits / 61 + 1;
    if (needed > primes.size()) {
        return p.evaluate(values) == 0;
    }
    std::vector<int> maxdeg(vars.size());
    for (std::size_t k = 0; k < vars.size(); ++k) maxdeg[k] = p.degree(vars[k]);
    for (std::size_t q = 0; q < needed; ++q) {
        const std::uint64_t prime = primes[q];
        std::vector<std::vector<std::uint64_t>> table(vars.size());
        for (std::size_t k = 0; k < vars.size(); ++k) {
            mpz_class v = values.at(vars[k]) % prime;
            if (v < 0) v += prime;
            table[k].resize(maxdeg[k] + 1);
            table[k][0] = 1;
            for (int e = 1; e <= maxdeg[k]; ++e) table[k][e] = mulmod(table[k][e - 1], v.get_ui(), prime);
        }
        unsigned __int128 sum = 0;
        const auto& monos = p.monomials();
        const auto& coeffs = p.coefficients();
        mpz_class cm;
        for (std::size_t t = 0; t < monos.size(); ++t) {
            std::uint64_t term;
            if (mpz_fits_slong_p(coeffs[t].get_mpz_t())) {
                const long c = mpz_get_si(coeffs[t].get_mpz_t());
                term = c >= 0 ? static_cast<std::uint64_t>(c) % prime
                              : (prime - static_cast<std::uint64_t>(-(c + 1)) % prime - 1) % prime;
            } else {
                cm = coeffs[t] % prime;
                if (cm < 0) cm += prime;
                term = cm.get_ui();
            }
            for (std::size_t k = 0; k < vars.size(); ++k) {
                const int e = monos[t].exp(static_cast<int>(k));
                if (e) term = mulmod(term, table[k][e], prime);
            }
            sum += term;
            if (sum >> 126) sum %= prime;
        }
        if (sum % prime != 0) return false;
    }
    return true;
}

}  // namespace

bool member_test(const Polynomial& p, int trials, long bound, std::uint64_t seed) {
    if (p.is_zero()) return true;
    if (p.is_constant()) return false;
    int n = 0;
    for (const EdgeVar& x : p.vars()) n = std::max(n, x.j);
    std::seed_seq seq{seed, std::uint64_t{0x6d656d62}};
    std::vector<std::uint64_t> seeds(static_cast<std::size_t>(std::max(trials, 0)));
    seq.generate(seeds.begin(), seeds.end());
    for (int t = 0; t < trials; ++t) {
        const Realization r = random_realization(n, bound, seeds[t]);
        if (!vanishes_at(p, r.distances)) return false;
    }
    return true;
}

int rigidity_matrix_rank(const Graph& g, const Realization& r) {
    const int cols = 2 * g.n();
    std::vector<std::vector<mpz_class>> m;
    for (const Edge& e : g.edges()) {
        if (e.v >= static_cast<int>(r.points.size())) throw Error(Errc::InvalidArgument, "realization misses a vertex");
        std::vector<mpz_class> row(cols, 0);
        for (int d = 0; d < 2; ++d) {
            const mpz_class diff = r.points[e.u][d] - r.points[e.v][d];
            row[2 * (e.u - 1) + d] = diff;
            row[2 * (e.v - 1) + d] = -diff;
        }
        m.push_back(std::move(row));
    }
    // Fraction-free elimination.
    int rank = 0;
    mpz_class prev = 1;
    const int rows = static_cast<int>(m.size());
    for (int c = 0; c < cols && rank < rows; ++c) {
        int piv = -1;
        for (int i = rank; i < rows; ++i)
            if (m[i][c] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(m[piv], m[rank]);
        for (int i = rank + 1; i < rows; ++i) {
            for (int j = c + 1; j < cols; ++j) {
                m[i][j] = m[rank][c] * m[i][j] - m[i][c] * m[rank][j];
                mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
            }
            m[i][c] = 0;
        }
        prev = m[rank][c];
        ++rank;
    }
    return rank;
}

}  // namespace circpoly
