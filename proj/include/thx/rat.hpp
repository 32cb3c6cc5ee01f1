#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>
#include <string_view>

namespace thx {

// Exact rational scalar. The backend keeps gcd(num,den)=1 and den>0 after
// every operation, which is the canonical form all serialization relies on.
// Expression templates are off so arithmetic yields plain values.
using Rat = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                          boost::multiprecision::et_off>;
using Int = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                          boost::multiprecision::et_off>;

struct Error : std::runtime_error {
    std::string code;
    Error(std::string c, const std::string& msg)
        : std::runtime_error(c + ": " + msg), code(std::move(c)) {}
};

inline std::string to_string(const Rat& r)
{
    std::string s = numerator(r).str();
    if (denominator(r) != 1)
        s += "/" + denominator(r).str();
    return s;
}

// Accepts "p" or "p/q" in base 10, optional leading '-' on the numerator
// only. Rejects q == 0.
inline Rat rat_from_string(std::string_view sv)
{
    auto fail = [&] { throw Error("ParseError", "bad rational '" + std::string(sv) + "'"); };
    if (sv.empty())
        fail();
    size_t slash = sv.find('/');
    std::string_view ns = sv.substr(0, slash == std::string_view::npos ? sv.size() : slash);
    std::string_view ds = slash == std::string_view::npos ? std::string_view{} : sv.substr(slash + 1);
    auto check_digits = [&](std::string_view t, bool sign_ok) {
        if (t.empty())
            fail();
        size_t i = 0;
        if (sign_ok && t[0] == '-')
            i = 1;
        if (i == t.size())
            fail();
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9')
                fail();
    };
    check_digits(ns, true);
    Int num{std::string(ns)};
    Int den = 1;
    if (slash != std::string_view::npos) {
        check_digits(ds, false);
        den = Int{std::string(ds)};
        if (den == 0)
            fail();
    }
    return Rat(num, den);
}

} // namespace thx
