#pragma once

#include "arblink/common.hpp"

#include <cctype>
#include <memory>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

namespace arblink::tangle {

// Reduced fraction p/q with q > 0 and p != 0 (the 0-tangle is rejected).
struct Frac {
    long long num = 1;
    long long den = 1;

    Frac() = default;

    Frac(long long p, long long q) {
        if (q == 0) throw Error("fraction with zero denominator");
        if (p == 0) throw ZeroTangle("the 0-tangle p = 0 is not allowed");
        if (q < 0) {
            p = -p;
            q = -q;
        }
        long long g = gcd_ll(p, q);
        num = p / g;
        den = q / g;
    }

    static Frac from_rational(const BigRat& v) {
        BigInt n = boost::multiprecision::numerator(v);
        BigInt d = boost::multiprecision::denominator(v);
        return Frac(n.convert_to<long long>(), d.convert_to<long long>());
    }

    BigRat value() const { return BigRat(num, den); }

    friend bool operator==(const Frac& a, const Frac& b) {
        return a.num == b.num && a.den == b.den;
    }

    std::string str() const {
        std::string s = std::to_string(num);
        if (den != 1) s += "/" + std::to_string(den);
        return s;
    }
};

using MontesinosSpec = std::vector<Frac>;

// Arborescent tangle word: an AST over integral tangles, vertical composition
// (upper stacked on lower) and quarter rotation.
struct TangleWord;
using Word = std::shared_ptr<const TangleWord>;

struct TangleWord {
    enum class Kind { Integral, VComp, Rot };

    Kind kind;
    long long twists = 0;  // Integral only
    Word upper, lower;     // VComp only
    Word inner;            // Rot only
};

inline Word integral(long long m) {
    auto w = std::make_shared<TangleWord>();
    w->kind = TangleWord::Kind::Integral;
    w->twists = m;
    return w;
}

inline Word vcomp(Word upper, Word lower) {
    auto w = std::make_shared<TangleWord>();
    w->kind = TangleWord::Kind::VComp;
    w->upper = std::move(upper);
    w->lower = std::move(lower);
    return w;
}

inline Word rot(Word inner) {
    auto w = std::make_shared<TangleWord>();
    w->kind = TangleWord::Kind::Rot;
    w->inner = std::move(inner);
    return w;
}

inline bool words_equal(const Word& a, const Word& b) {
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case TangleWord::Kind::Integral: return a->twists == b->twists;
        case TangleWord::Kind::VComp:
            return words_equal(a->upper, b->upper) && words_equal(a->lower, b->lower);
        case TangleWord::Kind::Rot: return words_equal(a->inner, b->inner);
    }
    return false;
}

inline std::string print_word(const Word& w) {
    switch (w->kind) {
        case TangleWord::Kind::Integral: return std::to_string(w->twists);
        case TangleWord::Kind::VComp: return print_word(w->upper) + "*" + print_word(w->lower);
        case TangleWord::Kind::Rot: return "rt(" + print_word(w->inner) + ")";
    }
    return {};
}

// Grammar:  W ::= INT | "rt(" W ")" | W "*" W   with "*" left-associative.
// "A*B" stacks A on top of B (B is applied first).
class WordParser {
public:
    explicit WordParser(std::string text) : text_(std::move(text)) {}

    Word parse() {
        Word w = parse_expr();
        skip_ws();
        if (pos_ != text_.size()) throw SyntaxError(pos_, "unexpected trailing input");
        return w;
    }

private:
    Word parse_expr() {
        Word acc = parse_term();
        while (true) {
            skip_ws();
            if (pos_ < text_.size() && text_[pos_] == '*') {
                ++pos_;
                Word rhs = parse_term();
                acc = vcomp(acc, rhs);
            } else {
                return acc;
            }
        }
    }

    Word parse_term() {
        skip_ws();
        if (pos_ >= text_.size()) throw SyntaxError(pos_, "expected integer or rt(...)");
        char c = text_[pos_];
        if (c == 'r') {
            expect("rt");
            skip_ws();
            expect("(");
            Word inner = parse_expr();
            skip_ws();
            expect(")");
            return rot(inner);
        }
        if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) return integral(parse_int());
        throw SyntaxError(pos_, std::string("unexpected character '") + c + "'");
    }

    long long parse_int() {
        std::size_t start = pos_;
        bool neg = false;
        if (text_[pos_] == '-') {
            neg = true;
            ++pos_;
        }
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            throw SyntaxError(start, "expected digits");
        long long v = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            v = v * 10 + (text_[pos_] - '0');
            ++pos_;
        }
        return neg ? -v : v;
    }

    void expect(const std::string& token) {
        if (text_.compare(pos_, token.size(), token) != 0)
            throw SyntaxError(pos_, "expected '" + token + "'");
        pos_ += token.size();
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    std::string text_;
    std::size_t pos_ = 0;
};

inline Word parse_word(const std::string& text) { return WordParser(text).parse(); }

// Continued fraction [[s_1, ..., s_k]] with the recursion
// [[s_1]] = s_1,  [[s_1,...,s_k]] = s_k - 1/[[s_1,...,s_{k-1}]].
inline Frac eval_cf(const std::vector<long long>& s) {
    if (s.empty()) throw IllFormedExpansion("empty expansion");
    BigRat v = s[0];
    for (std::size_t i = 1; i < s.size(); ++i) {
        if (v == 0)
            throw IllFormedExpansion("reciprocal of zero at entry " + std::to_string(i));
        v = BigRat(s[i]) - 1 / v;
    }
    if (v == 0) throw ZeroTangle("expansion evaluates to the excluded 0-tangle");
    return Frac::from_rational(v);
}

// Expansion with eval_cf(neg_cf(f)) == f.  Outermost coefficient first from
// the full value: ceil division for |p| >= q, and a 0 entry to absorb proper
// fractions so that integral twist regions stay as short as the fraction allows.
inline std::vector<long long> neg_cf(const Frac& f) {
    std::vector<long long> rev;  // coefficients s_k, s_{k-1}, ..., s_1
    long long p = f.num, q = f.den;
    while (true) {
        if (q == 1) {
            rev.push_back(p);
            break;
        }
        long long ap = p < 0 ? -p : p;
        if (ap < q) {
            // [[..., 0]] = -1 / [[...]]  turns p/q into -q/p.
            rev.push_back(0);
            long long np = -q, nq = p;
            if (nq < 0) {
                np = -np;
                nq = -nq;
            }
            p = np;
            q = nq;
            continue;
        }
        long long s = p / q;
        if (p % q != 0 && p > 0) ++s;  // ceiling
        rev.push_back(s);
        long long r = s * q - p;  // in (0, q)
        p = q;
        q = r;
    }
    return {rev.rbegin(), rev.rend()};
}

inline long long mu(const std::vector<long long>& expansion) {
    return std::accumulate(expansion.begin(), expansion.end(), 0LL);
}

// rt(s_k * rt( ... rt(s_2 * rt(s_1)) ... )) for the expansion of f.
inline Word word_from_expansion(const std::vector<long long>& expansion) {
    if (expansion.empty()) throw IllFormedExpansion("empty expansion");
    Word w = rot(integral(expansion[0]));
    for (std::size_t i = 1; i < expansion.size(); ++i)
        w = rot(vcomp(integral(expansion[i]), w));
    return w;
}

inline Word rational_word(const Frac& f) { return word_from_expansion(neg_cf(f)); }

// T(p_m/q_m) * ... * T(p_1/q_1), left-associated.
inline Word montesinos_word(const MontesinosSpec& spec) {
    if (spec.empty()) throw Error("empty Montesinos specification");
    Word acc = rational_word(spec.back());
    for (std::size_t i = spec.size() - 1; i-- > 0;)
        acc = vcomp(acc, rational_word(spec[i]));
    return acc;
}

// Comma-separated fractions, e.g. "1/3,-2/1,5/2"; a bare integer p means p/1.
inline MontesinosSpec parse_montesinos(const std::string& text) {
    MontesinosSpec spec;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t slash = item.find('/');
        try {
            if (slash == std::string::npos) {
                spec.emplace_back(std::stoll(item), 1);
            } else {
                spec.emplace_back(std::stoll(item.substr(0, slash)),
                                  std::stoll(item.substr(slash + 1)));
            }
        } catch (const std::invalid_argument&) {
            throw Error("malformed fraction '" + item + "'");
        } catch (const std::out_of_range&) {
            throw Error("fraction out of range '" + item + "'");
        }
    }
    if (spec.empty()) throw Error("empty Montesinos specification");
    return spec;
}

inline std::string montesinos_str(const MontesinosSpec& spec) {
    std::string out;
    for (std::size_t i = 0; i < spec.size(); ++i) {
        if (i) out += ",";
        out += spec[i].str();
    }
    return out;
}

}  // namespace arblink::tangle
