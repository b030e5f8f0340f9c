#pragma once

#include "arblink/common.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

namespace arblink::cyclo {

// Coefficient vector of the n-th cyclotomic polynomial, lowest degree first.
// Computed as (x^n - 1) / prod_{d | n, d < n} Phi_d; results are cached per order.
inline const std::vector<BigInt>& cyclotomic_polynomial(long long n) {
    static std::map<long long, std::vector<BigInt>> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);

    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    // Local recursion over divisors; all divisions below are exact and the
    // divisors are monic, so everything stays in Z[x].
    std::function<const std::vector<BigInt>&(long long)> get = [&](long long m) -> const std::vector<BigInt>& {
        auto found = cache.find(m);
        if (found != cache.end()) return found->second;
        std::vector<BigInt> poly;
        if (m == 1) {
            poly = {BigInt(-1), BigInt(1)};  // x - 1
        } else {
            poly.assign(static_cast<std::size_t>(m) + 1, BigInt(0));
            poly.front() = -1;
            poly.back() = 1;  // x^m - 1
            for (long long d = 1; d < m; ++d) {
                if (m % d != 0) continue;
                const std::vector<BigInt>& div = get(d);
                // Exact long division by the monic polynomial `div`.
                std::vector<BigInt> quot(poly.size() - div.size() + 1, BigInt(0));
                std::vector<BigInt> rem = poly;
                for (std::size_t i = quot.size(); i-- > 0;) {
                    BigInt c = rem[i + div.size() - 1];
                    quot[i] = c;
                    if (c == 0) continue;
                    for (std::size_t k = 0; k < div.size(); ++k)
                        rem[i + k] -= c * div[k];
                }
                for (const BigInt& c : rem)
                    if (c != 0) throw Error("cyclotomic polynomial division was not exact");
                poly = std::move(quot);
            }
        }
        return cache.emplace(m, std::move(poly)).first->second;
    };
    return get(n);
}

inline long long euler_phi(long long n) {
    return static_cast<long long>(cyclotomic_polynomial(n).size()) - 1;
}

// Element of Q(zeta_n) for odd n >= 3, stored as integer coefficients over a
// common positive denominator in the power basis 1, zeta, ..., zeta^{n-1}
// (exponents taken mod n).  Canonical form is the remainder mod Phi_n.
class Cyclo {
public:
    Cyclo() : n_(3), num_(3, BigInt(0)), den_(1) {}

    explicit Cyclo(long long n) : n_(n), num_(static_cast<std::size_t>(n), BigInt(0)), den_(1) {
        require_odd_order(n);
    }

    static Cyclo zero(long long n) { return Cyclo(n); }

    static Cyclo from_integer(long long n, const BigInt& value) {
        Cyclo c(n);
        c.num_[0] = value;
        return c;
    }

    static Cyclo from_rational(long long n, const BigRat& value) {
        Cyclo c(n);
        c.num_[0] = boost::multiprecision::numerator(value);
        c.den_ = boost::multiprecision::denominator(value);
        c.normalize();
        return c;
    }

    static Cyclo one(long long n) { return from_integer(n, 1); }

    // zeta^e with the exponent reduced mod n.
    static Cyclo zeta(long long n, long long e) {
        Cyclo c(n);
        c.num_[static_cast<std::size_t>(mod_euclid(e, n))] = 1;
        return c;
    }

    long long order() const { return n_; }

    // Exact coefficient of zeta^k in the stored (not necessarily canonical) form.
    BigRat coeff(long long k) const {
        return BigRat(num_[static_cast<std::size_t>(mod_euclid(k, n_))], den_);
    }

    Cyclo& operator+=(const Cyclo& o) {
        check_same_order(o);
        for (long long k = 0; k < n_; ++k)
            num_[k] = num_[k] * o.den_ + o.num_[k] * den_;
        den_ *= o.den_;
        normalize();
        return *this;
    }

    Cyclo& operator-=(const Cyclo& o) {
        check_same_order(o);
        for (long long k = 0; k < n_; ++k)
            num_[k] = num_[k] * o.den_ - o.num_[k] * den_;
        den_ *= o.den_;
        normalize();
        return *this;
    }

    Cyclo& operator*=(const Cyclo& o) {
        check_same_order(o);
        std::vector<BigInt> out(static_cast<std::size_t>(n_), BigInt(0));
        for (long long i = 0; i < n_; ++i) {
            if (num_[i] == 0) continue;
            for (long long j = 0; j < n_; ++j) {
                if (o.num_[j] == 0) continue;
                long long k = i + j;
                if (k >= n_) k -= n_;  // zeta^n = 1
                out[static_cast<std::size_t>(k)] += num_[i] * o.num_[j];
            }
        }
        num_ = std::move(out);
        den_ *= o.den_;
        normalize();
        return *this;
    }

    friend Cyclo operator+(Cyclo a, const Cyclo& b) { return a += b; }
    friend Cyclo operator-(Cyclo a, const Cyclo& b) { return a -= b; }
    friend Cyclo operator*(Cyclo a, const Cyclo& b) { return a *= b; }

    Cyclo operator-() const {
        Cyclo c = *this;
        for (auto& v : c.num_) v = -v;
        return c;
    }

    // Complex conjugation, zeta -> zeta^{-1}.
    Cyclo conj() const {
        Cyclo c(n_);
        c.den_ = den_;
        for (long long k = 0; k < n_; ++k)
            c.num_[static_cast<std::size_t>(mod_euclid(-k, n_))] = num_[static_cast<std::size_t>(k)];
        return c;
    }

    Cyclo& scale(const BigRat& r) {
        BigInt rn = boost::multiprecision::numerator(r);
        BigInt rd = boost::multiprecision::denominator(r);
        for (auto& v : num_) v *= rn;
        den_ *= rd;
        normalize();
        return *this;
    }

    Cyclo scaled(const BigRat& r) const {
        Cyclo c = *this;
        c.scale(r);
        return c;
    }

    Cyclo pow(long long e) const {
        if (e < 0) throw Error("Cyclo::pow: negative exponent");
        Cyclo acc = one(n_);
        Cyclo base = *this;
        while (e > 0) {
            if (e & 1) acc *= base;
            base *= base;
            e >>= 1;
        }
        return acc;
    }

    // Remainder modulo Phi_n; result has degree < phi(n) and a fully reduced
    // common denominator, which makes it a unique representative.
    Cyclo canonical() const {
        const std::vector<BigInt>& phi = cyclotomic_polynomial(n_);
        const std::size_t deg = phi.size() - 1;
        Cyclo c = *this;
        for (std::size_t i = c.num_.size(); i-- > deg;) {
            BigInt q = c.num_[i];
            if (q == 0) continue;
            c.num_[i] = 0;
            for (std::size_t k = 0; k < deg; ++k)
                c.num_[i - deg + k] -= q * phi[k];
        }
        c.normalize();
        return c;
    }

    bool is_zero() const {
        Cyclo c = canonical();
        return std::all_of(c.num_.begin(), c.num_.end(), [](const BigInt& v) { return v == 0; });
    }

    friend bool operator==(const Cyclo& a, const Cyclo& b) {
        if (a.n_ != b.n_) return false;
        Cyclo ca = a.canonical();
        Cyclo cb = b.canonical();
        return ca.den_ == cb.den_ && ca.num_ == cb.num_;
    }
    friend bool operator!=(const Cyclo& a, const Cyclo& b) { return !(a == b); }

    // The value as a rational integer, if the canonical form is a constant integer.
    std::optional<BigInt> as_integer() const {
        Cyclo c = canonical();
        for (long long k = 1; k < n_; ++k)
            if (c.num_[static_cast<std::size_t>(k)] != 0) return std::nullopt;
        if (c.den_ != 1) return std::nullopt;
        return c.num_[0];
    }

    std::optional<BigRat> as_rational() const {
        Cyclo c = canonical();
        for (long long k = 1; k < n_; ++k)
            if (c.num_[static_cast<std::size_t>(k)] != 0) return std::nullopt;
        return BigRat(c.num_[0], c.den_);
    }

    // Numeric evaluation at zeta = exp(2*pi*i/n); used only by tests as a
    // floating cross-check, never as an arithmetic path.
    std::complex<double> to_complex() const {
        const double tau = 6.283185307179586476925286766559;
        std::complex<double> acc(0.0, 0.0);
        double d = den_.convert_to<double>();
        for (long long k = 0; k < n_; ++k) {
            double c = num_[static_cast<std::size_t>(k)].convert_to<double>();
            if (c == 0.0) continue;
            double ang = tau * static_cast<double>(k) / static_cast<double>(n_);
            acc += (c / d) * std::complex<double>(std::cos(ang), std::sin(ang));
        }
        return acc;
    }

    std::string str() const {
        Cyclo c = canonical();
        std::ostringstream os;
        bool first = true;
        for (long long k = 0; k < n_; ++k) {
            const BigInt& v = c.num_[static_cast<std::size_t>(k)];
            if (v == 0) continue;
            if (!first) os << (v > 0 ? " + " : " - ");
            else if (v < 0) os << "-";
            first = false;
            BigInt a = boost::multiprecision::abs(v);
            if (a != 1 || k == 0) os << a.str();
            if (k > 0) {
                os << "z";
                if (k > 1) os << "^" << k;
            }
            if (c.den_ != 1) os << "/" << c.den_.str();
        }
        if (first) os << "0";
        return os.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const Cyclo& c) { return os << c.str(); }

private:
    void check_same_order(const Cyclo& o) const {
        if (n_ != o.n_) throw InvalidOrder("mixed cyclotomic orders in arithmetic");
    }

    void normalize() {
        if (den_ < 0) {
            den_ = -den_;
            for (auto& v : num_) v = -v;
        }
        BigInt g = den_;
        for (const auto& v : num_) {
            g = boost::multiprecision::gcd(g, v);
            if (g == 1) return;
        }
        if (g == 0) {
            den_ = 1;  // all-zero numerator
            return;
        }
        den_ /= g;
        for (auto& v : num_) v /= g;
    }

    long long n_;
    std::vector<BigInt> num_;
    BigInt den_;
};

inline Cyclo zeta_pow(long long n, long long e) {
    require_odd_order(n);
    return Cyclo::zeta(n, e);
}

// zeta^{x/2} read as zeta^{x(n+1)/2}: (n+1)/2 inverts 2 mod n since n is odd,
// so the result is the unique n-th root of unity whose square is zeta^x.
inline Cyclo zeta_half_pow(long long n, long long x) {
    require_odd_order(n);
    long long half = (n + 1) / 2;
    return Cyclo::zeta(n, mod_euclid(mod_euclid(x, n) * half, n));
}

// zeta^{a/b} via the modular inverse of the reduced denominator.
inline Cyclo zeta_frac_pow(long long n, long long a, long long b) {
    require_odd_order(n);
    if (b == 0) throw Error("zeta_frac_pow: zero denominator");
    long long g = gcd_ll(a, b);
    if (g != 0) {
        a /= g;
        b /= g;
    }
    if (b < 0) {
        a = -a;
        b = -b;
    }
    if (gcd_ll(b, n) != 1)
        throw NonInvertibleDenominator("zeta_frac_pow: denominator " + std::to_string(b) +
                                       " is not invertible mod " + std::to_string(n));
    long long inv = mod_inverse(b, n);
    return Cyclo::zeta(n, mod_euclid(mod_euclid(a, n) * inv, n));
}

}  // namespace arblink::cyclo
