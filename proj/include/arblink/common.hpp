#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace arblink {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// Base class for all recoverable input/domain errors raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidOrder : Error {
    explicit InvalidOrder(const std::string& what) : Error(what) {}
};

struct EvenOrder : Error {
    explicit EvenOrder(const std::string& what) : Error(what) {}
};

struct NonInvertibleDenominator : Error {
    explicit NonInvertibleDenominator(const std::string& what) : Error(what) {}
};

struct SyntaxError : Error {
    SyntaxError(std::size_t pos, const std::string& what)
        : Error(what + " (at position " + std::to_string(pos) + ")"), position(pos) {}
    std::size_t position;
};

struct IllFormedExpansion : Error {
    explicit IllFormedExpansion(const std::string& what) : Error(what) {}
};

struct ZeroTangle : Error {
    explicit ZeroTangle(const std::string& what) : Error(what) {}
};

struct NotEquivariant : Error {
    explicit NotEquivariant(const std::string& what) : Error(what) {}
};

struct MultiComponentClosure : Error {
    explicit MultiComponentClosure(const std::string& what) : Error(what) {}
};

struct NonIntegerTrace : Error {
    explicit NonIntegerTrace(const std::string& what) : Error(what) {}
};

struct NotAKnot : Error {
    explicit NotAKnot(const std::string& what) : Error(what) {}
};

struct NonIntegerN : Error {
    explicit NonIntegerN(const std::string& what) : Error(what) {}
};

struct BudgetExceeded : Error {
    explicit BudgetExceeded(const std::string& what) : Error(what) {}
};

struct SchemaError : Error {
    explicit SchemaError(const std::string& what) : Error(what) {}
};

// Euclidean remainder, always in [0, m).
inline long long mod_euclid(long long a, long long m) {
    long long r = a % m;
    return r < 0 ? r + m : r;
}

inline long long gcd_ll(long long a, long long b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        long long t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// Inverse of a modulo m; requires gcd(a, m) = 1.
inline long long mod_inverse(long long a, long long m) {
    a = mod_euclid(a, m);
    long long t = 0, new_t = 1;
    long long r = m, new_r = a;
    while (new_r != 0) {
        long long q = r / new_r;
        long long tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (r != 1) throw Error("mod_inverse: arguments are not coprime");
    return mod_euclid(t, m);
}

inline void require_odd_order(long long n) {
    if (n < 3 || n % 2 == 0)
        throw InvalidOrder("order must be an odd integer >= 3, got " + std::to_string(n));
}

}  // namespace arblink
