#include "circpoly/edge_var.hpp"

#include "circpoly/error.hpp"

#include <algorithm>
#include <cctype>

namespace circpoly {

EdgeVar make_var(int a, int b) {
    return a < b ? EdgeVar{a, b} : EdgeVar{b, a};
}

std::string to_string(const EdgeVar& x) {
    return std::to_string(x.i) + "," + std::to_string(x.j);
}

EdgeVar parse_var(const std::string& text) {
    const auto comma = text.find(',');
    auto digits = [](const std::string& s) {
        return !s.empty() && s.size() < 9 &&
               std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
    };
    if (comma == std::string::npos) throw Error(Errc::ParseError, "variable \"" + text + "\" lacks a comma");
    const std::string a = text.substr(0, comma), b = text.substr(comma + 1);
    if (!digits(a) || !digits(b)) throw Error(Errc::ParseError, "malformed variable \"" + text + "\"");
    const int i = std::stoi(a), j = std::stoi(b);
    if (!(1 <= i && i < j)) throw Error(Errc::ParseError, "variable \"" + text + "\" needs 1 <= i < j");
    return EdgeVar{i, j};
}

}  // namespace circpoly
