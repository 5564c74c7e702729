#include "equibif/rational.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

namespace equibif {

std::string to_string(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

double to_double(const Rational& r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

namespace {

bool parse_ll(std::string_view s, long long& out) {
    if (s.empty()) return false;
    std::size_t i = 0;
    bool neg = false;
    if (s[0] == '+' || s[0] == '-') {
        neg = s[0] == '-';
        i = 1;
    }
    if (i == s.size()) return false;
    long long v = 0;
    for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
        if (v > (1LL << 61)) return false;  // keep room for later arithmetic
        v = v * 10 + (s[i] - '0');
    }
    out = neg ? -v : v;
    return true;
}

}  // namespace

std::optional<Rational> parse_rational(std::string_view text) {
    // trim
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) return std::nullopt;

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        long long num = 0, den = 0;
        if (!parse_ll(text.substr(0, slash), num)) return std::nullopt;
        if (!parse_ll(text.substr(slash + 1), den)) return std::nullopt;
        if (den == 0) return std::nullopt;
        return Rational(num, den);
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        std::string_view head = text.substr(0, dot);
        std::string_view frac = text.substr(dot + 1);
        if (frac.empty()) return std::nullopt;
        long long ipart = 0;
        bool neg = !head.empty() && head.front() == '-';
        if (head.empty() || head == "-" || head == "+") {
            ipart = 0;
        } else if (!parse_ll(head, ipart)) {
            return std::nullopt;
        }
        long long fpart = 0, scale = 1;
        for (char c : frac) {
            if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
            if (scale > (1LL << 55)) return std::nullopt;
            fpart = fpart * 10 + (c - '0');
            scale *= 10;
        }
        Rational mag(std::llabs(ipart), 1);
        mag += Rational(fpart, scale);
        return (neg || ipart < 0) ? -mag : mag;
    }
    long long v = 0;
    if (!parse_ll(text, v)) return std::nullopt;
    return Rational(v, 1);
}

std::optional<Rational> rationalize(double x, long long max_den, double tol) {
    if (!std::isfinite(x)) return std::nullopt;
    // continued fraction convergents
    long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double v = x;
    for (int iter = 0; iter < 64; ++iter) {
        double fa = std::floor(v);
        if (fa > 4e18 || fa < -4e18) break;
        long long a = static_cast<long long>(fa);
        long long p2 = a * p1 + p0;
        long long q2 = a * q1 + q0;
        if (q2 > max_den || q2 < 0) break;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        double rem = v - fa;
        if (std::abs(static_cast<double>(p1) / static_cast<double>(q1) - x) < 1e-15 * std::max(1.0, std::abs(x)))
            break;
        if (rem < 1e-15) break;
        v = 1.0 / rem;
    }
    if (q1 == 0) return std::nullopt;
    Rational r(p1, q1);
    if (std::abs(to_double(r) - x) > tol) return std::nullopt;
    return r;
}

}  // namespace equibif
