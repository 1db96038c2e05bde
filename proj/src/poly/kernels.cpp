#include "kernels.hpp"

#include <algorithm>
#include <cstdint>

namespace circpoly::detail {

namespace {

struct Entry {
    Monomial m;
    std::uint32_t i;
    std::uint32_t j;
};

struct EntryLess {
    bool operator()(const Entry& x, const Entry& y) const { return grevlex_greater(y.m, x.m); }
};

class Heap {
public:
    explicit Heap(std::size_t reserve) { data_.reserve(reserve); }
    bool empty() const { return data_.empty(); }
    const Monomial& top() const { return data_.front().m; }
    void push(const Monomial& m, std::uint32_t i, std::uint32_t j) {
        data_.push_back(Entry{m, i, j});
        std::push_heap(data_.begin(), data_.end(), EntryLess{});
    }
    Entry pop() {
        std::pop_heap(data_.begin(), data_.end(), EntryLess{});
        Entry e = data_.back();
        data_.pop_back();
        return e;
    }

private:
    std::vector<Entry> data_;
};

int bit_size(const mpz_class* c, std::size_t n, bool& fits64) {
    std::size_t bits = 0;
    fits64 = true;
    for (std::size_t k = 0; k < n; ++k) {
        bits = std::max(bits, mpz_sizeinbase(c[k].get_mpz_t(), 2));
        if (!mpz_fits_slong_p(c[k].get_mpz_t())) fits64 = false;
    }
    return static_cast<int>(bits);
}

void set_from_int128(mpz_class& out, __int128 v) {
    if (v >= INT64_MIN && v <= INT64_MAX) {
        mpz_set_si(out.get_mpz_t(), static_cast<long>(v));
        return;
    }
    const bool neg = v < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
    std::uint64_t limbs[2] = {static_cast<std::uint64_t>(u), static_cast<std::uint64_t>(u >> 64)};
    mpz_import(out.get_mpz_t(), 2, -1, sizeof(std::uint64_t), 0, 0, limbs);
    if (neg) mpz_neg(out.get_mpz_t(), out.get_mpz_t());
}

int log2_ceil(std::size_t n) {
    int r = 0;
    while ((std::size_t{1} << r) < n) ++r;
    return r;
}

template <class Coeff, class Acc, class MulAdd, class Emit>
void heap_multiply(TermSpan a, TermSpan b, const std::vector<Coeff>& ac, const std::vector<Coeff>& bc,
                   std::vector<Monomial>& out_m, MulAdd muladd, Emit emit, Acc zero) {
    Heap heap(a.size);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> popped;
    heap.push(a.m[0] + b.m[0], 0, 0);
    Acc acc = zero;
    while (!heap.empty()) {
        const Monomial m = heap.top();
        acc = zero;
        popped.clear();
        while (!heap.empty() && heap.top() == m) {
            const Entry e = heap.pop();
            muladd(acc, ac[e.i], bc[e.j]);
            popped.emplace_back(e.i, e.j);
        }
        for (auto [i, j] : popped) {
            if (j == 0 && i + 1 < a.size) heap.push(a.m[i + 1] + b.m[0], i + 1, 0);
            if (j + 1 < b.size) heap.push(a.m[i] + b.m[j + 1], i, j + 1);
        }
        if (emit(acc)) out_m.push_back(m);
    }
}

}  // namespace

void multiply_terms(TermSpan a, TermSpan b, std::vector<Monomial>& out_m, std::vector<mpz_class>& out_c) {
    out_m.clear();
    out_c.clear();
    if (a.size == 0 || b.size == 0) return;
    if (a.size > b.size) std::swap(a, b);
    bool fa = false, fb = false;
    const int bits = bit_size(a.c, a.size, fa) + bit_size(b.c, b.size, fb) + log2_ceil(a.size) + 1;
    if (fa && fb && bits <= 126) {
        std::vector<std::int64_t> ac(a.size), bc(b.size);
        for (std::size_t k = 0; k < a.size; ++k) ac[k] = mpz_get_si(a.c[k].get_mpz_t());
        for (std::size_t k = 0; k < b.size; ++k) bc[k] = mpz_get_si(b.c[k].get_mpz_t());
        heap_multiply(
            a, b, ac, bc, out_m,
            [](__int128& acc, std::int64_t x, std::int64_t y) { acc += static_cast<__int128>(x) * y; },
            [&](const __int128& acc) {
                if (acc == 0) return false;
                out_c.emplace_back();
                set_from_int128(out_c.back(), acc);
                return true;
            },
            __int128{0});
        return;
    }
    std::vector<mpz_class> ac(a.c, a.c + a.size), bc(b.c, b.c + b.size);
    heap_multiply(
        a, b, ac, bc, out_m,
        [](mpz_class& acc, const mpz_class& x, const mpz_class& y) {
            mpz_addmul(acc.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
        },
        [&](const mpz_class& acc) {
            if (sgn(acc) == 0) return false;
            out_c.push_back(acc);
            return true;
        },
        mpz_class(0));
}

bool divide_terms(TermSpan a, TermSpan b, std::vector<Monomial>& out_m, std::vector<mpz_class>& out_c) {
    out_m.clear();
    out_c.clear();
    if (a.size == 0) return true;
    // Heap over divisor terms b_1.. with a cursor into the quotient.
    Heap heap(b.size);
    std::vector<std::uint32_t> cursor(b.size, 0);
    std::vector<std::uint32_t> starved;
    for (std::uint32_t j = 1; j < b.size; ++j) starved.push_back(j);
    const Monomial lead = b.m[0];
    const mpz_class& lc = b.c[0];
    std::size_t ka = 0;
    mpz_class acc;
    std::vector<std::uint32_t> popped;
    while (ka < a.size || !heap.empty()) {
        Monomial m;
        if (heap.empty() || (ka < a.size && !grevlex_greater(heap.top(), a.m[ka]))) m = a.m[ka];
        else m = heap.top();
        acc = 0;
        if (ka < a.size && a.m[ka] == m) acc = a.c[ka++];
        popped.clear();
        while (!heap.empty() && heap.top() == m) {
            const Entry e = heap.pop();
            mpz_submul(acc.get_mpz_t(), b.c[e.j].get_mpz_t(), out_c[e.i].get_mpz_t());
            popped.push_back(e.j);
        }
        for (std::uint32_t j : popped) {
            const std::uint32_t next = ++cursor[j];
            if (next < out_m.size()) heap.push(b.m[j] + out_m[next], next, j);
            else starved.push_back(j);
        }
        if (sgn(acc) == 0) continue;
        if (!divides(lead, m) || !mpz_divisible_p(acc.get_mpz_t(), lc.get_mpz_t())) return false;
        out_m.push_back(m - lead);
        out_c.emplace_back();
        mpz_divexact(out_c.back().get_mpz_t(), acc.get_mpz_t(), lc.get_mpz_t());
        const std::uint32_t qi = static_cast<std::uint32_t>(out_m.size() - 1);
        std::vector<std::uint32_t> waiting;
        waiting.swap(starved);
        for (std::uint32_t j : waiting) {
            if (cursor[j] == qi) heap.push(b.m[j] + out_m[qi], qi, j);
            else starved.push_back(j);
        }
    }
    return true;
}

}  // namespace circpoly::detail
