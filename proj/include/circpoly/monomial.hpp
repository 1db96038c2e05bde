#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

namespace circpoly {

// Dense packed exponent vector over a polynomial's local variable list.
// Byte k (k < kMaxVars) holds the exponent of local variable k; the top
// byte holds the total degree. Exponents and degrees stay below 128.
struct Monomial {
    static constexpr int kMaxVars = 31;
    static constexpr int kMaxDegree = 127;

    std::array<std::uint64_t, 4> w{};

    int exp(int k) const { return static_cast<int>((w[k >> 3] >> ((k & 7) * 8)) & 0xffu); }
    int degree() const { return static_cast<int>(w[3] >> 56); }

    void set_exp(int k, int e) {
        const int old = exp(k);
        const int shift = (k & 7) * 8;
        w[k >> 3] = (w[k >> 3] & ~(std::uint64_t{0xff} << shift)) | (std::uint64_t(e) << shift);
        const std::uint64_t deg = static_cast<std::uint64_t>(degree() - old + e);
        w[3] = (w[3] & ~(std::uint64_t{0xff} << 56)) | (deg << 56);
    }

    bool is_one() const { return (w[0] | w[1] | w[2] | w[3]) == 0; }

    friend bool operator==(const Monomial&, const Monomial&) = default;

    friend Monomial operator+(const Monomial& a, const Monomial& b) {
        Monomial r;
        for (int i = 0; i < 4; ++i) r.w[i] = a.w[i] + b.w[i];
        return r;
    }
    // Requires divides(b, a).
    friend Monomial operator-(const Monomial& a, const Monomial& b) {
        Monomial r;
        for (int i = 0; i < 4; ++i) r.w[i] = a.w[i] - b.w[i];
        return r;
    }
};

inline bool divides(const Monomial& a, const Monomial& b) {
    constexpr std::uint64_t kHigh = 0x8080808080808080ull;
    for (int i = 0; i < 4; ++i)
        if ((((b.w[i] | kHigh) - a.w[i]) & kHigh) != kHigh) return false;
    return true;
}

// Graded reverse lexicographic order with local variable 0 largest.
inline bool grevlex_greater(const Monomial& a, const Monomial& b) {
    const std::uint64_t da = a.w[3] >> 56, db = b.w[3] >> 56;
    if (da != db) return da > db;
    for (int i = 3; i >= 0; --i)
        if (a.w[i] != b.w[i]) return a.w[i] < b.w[i];
    return false;
}

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const noexcept {
        std::uint64_t h = 0x9e3779b97f4a7c15ull;
        for (std::uint64_t x : m.w) {
            h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
            h *= 0xbf58476d1ce4e5b9ull;
            h ^= h >> 31;
        }
        return static_cast<std::size_t>(h);
    }
};

}  // namespace circpoly
