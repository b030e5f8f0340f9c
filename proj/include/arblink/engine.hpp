#pragma once

#include "arblink/block.hpp"
#include "arblink/common.hpp"
#include "arblink/cyclotomic.hpp"
#include "arblink/diagram.hpp"
#include "arblink/fox.hpp"
#include "arblink/tangle.hpp"

#include <optional>
#include <string>
#include <vector>

namespace arblink::engine {

using block::BlockVector;
using tangle::Word;

struct EvalOptions {
    // Test hook: overrides the cached rotation matrix (fault injection).
    const block::RotMatrix* rot_override = nullptr;
};

inline void require_engine_order(long long n) {
    if (n >= 2 && n % 2 == 0)
        throw EvenOrder("the coloring order must be odd, got " + std::to_string(n));
    require_odd_order(n);
}

// Evaluates a tangle word into the block algebra: integral tangles become
// braiding powers, vertical composition becomes entrywise product, and the
// quarter rotation becomes the ROT matrix.
inline BlockVector eval_word(const Word& w, long long n, int sign, const EvalOptions& opts = {}) {
    require_engine_order(n);
    switch (w->kind) {
        case tangle::TangleWord::Kind::Integral: return block::phi_R(n, sign, w->twists);
        case tangle::TangleWord::Kind::VComp:
            return block::compose(eval_word(w->upper, n, sign, opts), eval_word(w->lower, n, sign, opts));
        case tangle::TangleWord::Kind::Rot: {
            const block::RotMatrix& rot = opts.rot_override ? *opts.rot_override : block::rot_matrix_cached(n);
            return block::apply(rot, eval_word(w->inner, n, sign, opts));
        }
    }
    throw Error("internal: unknown word node");
}

inline BigInt rt_invariant_big(const Word& w, long long n, int sign, const EvalOptions& opts = {}) {
    cyclo::Cyclo tr = block::quantum_trace(eval_word(w, n, sign, opts));
    auto v = tr.as_integer();
    if (!v) throw NonIntegerTrace("quantum trace is not a rational integer: " + tr.str());
    return *v;
}

inline long long rt_invariant(const Word& w, long long n, int sign, const EvalOptions& opts = {}) {
    return rt_invariant_big(w, n, sign, opts).convert_to<long long>();
}

// Assembles the coloring count from the closure's invariants.  Each link
// component contributes a meridian sum over the n reflections and a
// longitude choice; components carrying the sign -1 object contribute a
// vanishing character factor, so only the all-plus term needs evaluating.
inline long long coloring_count_engine(const Word& w, long long n, const EvalOptions& opts = {}) {
    require_engine_order(n);
    diagram::PlanarDiagram pd = diagram::closure_trace(w);
    const int r = pd.n_components;
    const long long wr_parity = pd.writhe ? mod_euclid(*pd.writhe, 2) : 0;

    BigRat total = 0;
    if (r == 1) {
        const BigInt f_plus = rt_invariant_big(w, n, +1, opts);
        const BigInt f_minus = rt_invariant_big(w, n, -1, opts);
        for (long long k = 0; k < n; ++k)
            for (int sign : {+1, -1}) {
                const long long theta = sign == +1 ? 1 : (wr_parity == 0 ? 1 : -1);
                const long long chi_e = 1;          // chi(a^k b, e)
                const long long chi_x = sign;       // chi(a^k b, a^k b)
                total += BigRat(theta * (chi_e + chi_x)) * BigRat(sign == +1 ? f_plus : f_minus);
            }
        total /= BigRat(2 * n);
    } else {
        // Every coloring that puts the minus object on some component carries a
        // character factor 1 + (-1) = 0, so of the 2^r colorings only the
        // all-plus one survives, with meridian factor 2n per component.
        BigRat norm(1), factor(1);
        for (int s = 0; s < r; ++s) {
            norm *= BigRat(2 * n);
            factor *= BigRat(2 * n);
        }
        total = factor * BigRat(rt_invariant_big(w, n, +1, opts)) / norm;
    }
    if (boost::multiprecision::denominator(total) != 1 || total < 0)
        throw NonIntegerTrace("coloring count assembly did not produce a nonnegative integer");
    return boost::multiprecision::numerator(total).convert_to<long long>();
}

// Full report for a knot closure.
struct InvariantReport {
    Word word;
    long long n = 3;
    long long value_plus = 0;
    long long value_minus = 0;
    int writhe_parity = 0;
    long long cn = 0;
};

inline InvariantReport invariant_report(const Word& w, long long n, const EvalOptions& opts = {}) {
    require_engine_order(n);
    diagram::PlanarDiagram pd = diagram::closure_trace(w);
    if (pd.n_components != 1)
        throw MultiComponentClosure("closure has " + std::to_string(pd.n_components) +
                                    " components; the invariant report is defined for knots");
    InvariantReport rep;
    rep.word = w;
    rep.n = n;
    rep.value_plus = rt_invariant(w, n, +1, opts);
    rep.value_minus = rt_invariant(w, n, -1, opts);
    rep.writhe_parity = static_cast<int>(mod_euclid(*pd.writhe, 2));
    rep.cn = coloring_count_engine(w, n, opts);
    return rep;
}

enum class KnotPolicy { Permissive, Require };

// Closed-form coloring count of a Montesinos closure:
//   n * prod gcd(n, p_i) * gcd(n / gL, N) / gL,
// with gL = gcd(n, lcm p_i) and N = lcm(p_i) * sum q_i/p_i.
inline long long coloring_count_formula(const tangle::MontesinosSpec& spec, long long n,
                                        KnotPolicy policy = KnotPolicy::Permissive) {
    require_engine_order(n);
    if (spec.empty()) throw Error("empty Montesinos specification");
    if (policy == KnotPolicy::Require && !diagram::closure_is_knot(tangle::montesinos_word(spec)))
        throw NotAKnot("Montesinos closure is not a knot");

    BigInt lcm = 1;
    for (const auto& f : spec) lcm = boost::multiprecision::lcm(lcm, BigInt(f.num < 0 ? -f.num : f.num));
    BigRat big_n = 0;
    for (const auto& f : spec) big_n += BigRat(lcm * f.den, f.num);
    if (boost::multiprecision::denominator(big_n) != 1)
        throw NonIntegerN("N is not an integer for " + tangle::montesinos_str(spec));
    BigInt capital_n = boost::multiprecision::abs(boost::multiprecision::numerator(big_n));

    const BigInt g_l = boost::multiprecision::gcd(BigInt(n), lcm);
    BigInt value = n;
    for (const auto& f : spec)
        value *= boost::multiprecision::gcd(BigInt(n), BigInt(f.num < 0 ? -f.num : f.num));
    value *= boost::multiprecision::gcd(BigInt(n) / g_l, capital_n);
    if (value % g_l != 0) throw Error("internal: formula value not divisible by gcd(n, lcm)");
    value /= g_l;
    return value.convert_to<long long>();
}

// Signed closed-form trace value; for sign +1 it equals the coloring count.
inline long long montesinos_invariant_closed(const tangle::MontesinosSpec& spec, long long n, int sign) {
    long long mu_sum = 0;
    for (const auto& f : spec) mu_sum += tangle::mu(tangle::neg_cf(f));
    long long value = coloring_count_formula(spec, n, KnotPolicy::Permissive);
    if (sign == -1 && mod_euclid(mu_sum, 2) == 1) value = -value;
    return value;
}

// Independent route: Fox coloring count of the traced closure.
inline long long coloring_count_oracle(const Word& w, long long n) {
    return static_cast<long long>(fox::count_colorings(diagram::closure_trace(w), n));
}

}  // namespace arblink::engine
