// Exact scalar and vector types shared by every module.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstddef>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ewald {

using Int = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend, boost::multiprecision::et_off>;

using IntVector = std::vector<Int>;
using RatVector = std::vector<Rational>;

/// An integer point of Z^n.
using LatticePoint = IntVector;

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline Int abs_int(const Int& a) { return a < 0 ? Int(-a) : a; }

inline Int gcd_int(Int a, Int b)
{
    a = abs_int(a);
    b = abs_int(b);
    while (b != 0) {
        Int r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

inline Int lcm_int(const Int& a, const Int& b)
{
    if (a == 0 || b == 0)
        return 0;
    return abs_int(a / gcd_int(a, b) * b);
}

/// Extended gcd: returns g >= 0 with s*a + t*b = g.
inline Int xgcd(const Int& a, const Int& b, Int& s, Int& t)
{
    Int old_r = a, r = b;
    Int old_s = 1, cur_s = 0;
    Int old_t = 0, cur_t = 1;
    while (r != 0) {
        Int q = old_r / r;
        Int tmp = old_r - q * r;
        old_r = std::move(r);
        r = std::move(tmp);
        tmp = old_s - q * cur_s;
        old_s = std::move(cur_s);
        cur_s = std::move(tmp);
        tmp = old_t - q * cur_t;
        old_t = std::move(cur_t);
        cur_t = std::move(tmp);
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
    }
    s = old_s;
    t = old_t;
    return old_r;
}

/// Floor division for integers (rounds toward minus infinity).
inline Int floor_div(const Int& a, const Int& b)
{
    Int q = a / b;
    Int r = a - q * b;
    if (r != 0 && ((r < 0) != (b < 0)))
        --q;
    return q;
}

inline Int ceil_div(const Int& a, const Int& b) { return -floor_div(-a, b); }

inline Int floor(const Rational& x)
{
    return floor_div(boost::multiprecision::numerator(x), boost::multiprecision::denominator(x));
}

inline Int ceil(const Rational& x)
{
    return ceil_div(boost::multiprecision::numerator(x), boost::multiprecision::denominator(x));
}

inline bool is_integer(const Rational& x) { return boost::multiprecision::denominator(x) == 1; }

inline bool is_integral(const RatVector& v)
{
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return is_integer(x); });
}

inline IntVector to_int_vector(const RatVector& v)
{
    IntVector out;
    out.reserve(v.size());
    for (const auto& x : v) {
        if (!is_integer(x))
            throw Error("non-integral coordinate " + x.str());
        out.push_back(boost::multiprecision::numerator(x));
    }
    return out;
}

inline RatVector to_rat_vector(const IntVector& v) { return RatVector(v.begin(), v.end()); }

inline Int dot(const IntVector& a, const IntVector& b)
{
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

inline Rational dot(const IntVector& a, const RatVector& b)
{
    // Accumulate over a common denominator; cheaper than summing rationals.
    Int den = 1;
    for (const auto& x : b)
        den = lcm_int(den, boost::multiprecision::denominator(x));
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0)
            continue;
        s += a[i] * boost::multiprecision::numerator(b[i]) * (den / boost::multiprecision::denominator(b[i]));
    }
    return Rational(s, den);
}

inline IntVector negated(const IntVector& v)
{
    IntVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out[i] = -v[i];
    return out;
}

inline RatVector negated(const RatVector& v)
{
    RatVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out[i] = -v[i];
    return out;
}

inline IntVector add(const IntVector& a, const IntVector& b)
{
    IntVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = a[i] + b[i];
    return out;
}

inline IntVector sub(const IntVector& a, const IntVector& b)
{
    IntVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = a[i] - b[i];
    return out;
}

inline RatVector add(const RatVector& a, const RatVector& b)
{
    RatVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = a[i] + b[i];
    return out;
}

inline RatVector sub(const RatVector& a, const RatVector& b)
{
    RatVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = a[i] - b[i];
    return out;
}

inline bool is_zero(const IntVector& v)
{
    return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
}

inline Int max_norm(const IntVector& v)
{
    Int m = 0;
    for (const auto& x : v)
        m = std::max(m, abs_int(x));
    return m;
}

/// Clears denominators: returns the integer vector den*v for the least common denominator.
inline IntVector clear_denominators(const RatVector& v, Int* den_out = nullptr)
{
    Int den = 1;
    for (const auto& x : v)
        den = lcm_int(den, boost::multiprecision::denominator(x));
    IntVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out[i] = boost::multiprecision::numerator(v[i]) * (den / boost::multiprecision::denominator(v[i]));
    if (den_out)
        *den_out = den;
    return out;
}

/// Orders by max-norm, then lexicographically.
inline bool norm_lex_less(const IntVector& a, const IntVector& b)
{
    Int na = max_norm(a), nb = max_norm(b);
    if (na != nb)
        return na < nb;
    return a < b;
}

template <typename T>
std::string to_string(const std::vector<T>& v)
{
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            os << ',';
        os << v[i];
    }
    os << ')';
    return os.str();
}

inline long long to_ll(const Int& x) { return x.convert_to<long long>(); }

} // namespace ewald
