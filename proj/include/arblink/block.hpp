#pragma once

#include "arblink/common.hpp"
#include "arblink/cyclotomic.hpp"
#include "arblink/tangle.hpp"

#include <map>
#include <mutex>
#include <vector>

namespace arblink::block {

using cyclo::Cyclo;

// Simple summand of V(sign) (x) V(sign): the unit object, a two-dimensional
// representation indexed by r, or a mixed pair (j, t) over a nontrivial
// rotation class.  Every summand occurs with multiplicity one, so a morphism
// on the product is one scalar per index.
struct BlockIndex {
    enum class Kind { Unit, TwoDim, Mixed };
    Kind kind = Kind::Unit;
    long long r = 0;  // TwoDim: 1..(n-1)/2
    long long j = 0;  // Mixed: 1..(n-1)/2
    long long t = 0;  // Mixed: 1..n

    static BlockIndex unit() { return {}; }
    static BlockIndex two_dim(long long r) { return {Kind::TwoDim, r, 0, 0}; }
    static BlockIndex mixed(long long j, long long t) { return {Kind::Mixed, 0, j, t}; }

    friend bool operator==(const BlockIndex&, const BlockIndex&) = default;
};

inline long long half(long long n) { return (n - 1) / 2; }

inline long long block_count(long long n) {
    const long long h = half(n);
    return 1 + h + h * n;
}

inline std::vector<BlockIndex> block_indices(long long n) {
    require_odd_order(n);
    std::vector<BlockIndex> out;
    out.reserve(static_cast<std::size_t>(block_count(n)));
    out.push_back(BlockIndex::unit());
    const long long h = half(n);
    for (long long r = 1; r <= h; ++r) out.push_back(BlockIndex::two_dim(r));
    for (long long j = 1; j <= h; ++j)
        for (long long t = 1; t <= n; ++t) out.push_back(BlockIndex::mixed(j, t));
    return out;
}

// Position of an index in the block_indices order.
inline std::size_t block_position(long long n, const BlockIndex& i) {
    const long long h = half(n);
    switch (i.kind) {
        case BlockIndex::Kind::Unit: return 0;
        case BlockIndex::Kind::TwoDim:
            if (i.r < 1 || i.r > h) throw Error("TwoDim index out of range");
            return static_cast<std::size_t>(i.r);
        case BlockIndex::Kind::Mixed:
            if (i.j < 1 || i.j > h || i.t < 1 || i.t > n) throw Error("Mixed index out of range");
            return static_cast<std::size_t>(h + (i.j - 1) * n + i.t);
    }
    throw Error("unknown block index kind");
}

inline long long qdim(const BlockIndex& i) { return i.kind == BlockIndex::Kind::Unit ? 1 : 2; }

// Diagonal endomorphism of V(sign) (x) V(sign): one scalar per simple summand.
struct BlockVector {
    long long n = 3;
    int sign = +1;
    std::vector<Cyclo> entries;  // block_indices order

    BlockVector() = default;
    BlockVector(long long order, int s) : n(order), sign(s) {
        require_odd_order(order);
        if (s != 1 && s != -1) throw Error("sign must be +1 or -1");
        entries.assign(static_cast<std::size_t>(block_count(order)), Cyclo::zero(order));
    }

    static BlockVector ones(long long order, int s) {
        BlockVector v(order, s);
        for (auto& e : v.entries) e = Cyclo::one(order);
        return v;
    }

    const Cyclo& at(const BlockIndex& i) const { return entries[block_position(n, i)]; }
    Cyclo& at(const BlockIndex& i) { return entries[block_position(n, i)]; }

    friend bool operator==(const BlockVector& a, const BlockVector& b) {
        if (a.n != b.n) return false;
        for (std::size_t i = 0; i < a.entries.size(); ++i)
            if (a.entries[i] != b.entries[i]) return false;
        return true;
    }
};

// Entrywise product: composition of diagonal morphisms.
inline BlockVector compose(const BlockVector& a, const BlockVector& b) {
    if (a.n != b.n) throw InvalidOrder("composing block vectors of different orders");
    BlockVector out(a.n, a.sign);
    for (std::size_t i = 0; i < out.entries.size(); ++i)
        out.entries[i] = a.entries[i] * b.entries[i];
    return out;
}

// Image of the l-th braiding power: entrywise l-th power of
// (sign 1, ..., sign 1, sign zeta^{jt/2}); valid for any integer l since
// every entry is a unit.
inline BlockVector phi_R(long long n, int sign, long long l) {
    BlockVector v(n, sign);
    const long long sgn = (sign == 1 || mod_euclid(l, 2) == 0) ? 1 : -1;
    const long long h2 = (n + 1) / 2;
    v.at(BlockIndex::unit()) = Cyclo::from_integer(n, sgn);
    for (long long r = 1; r <= half(n); ++r)
        v.at(BlockIndex::two_dim(r)) = Cyclo::from_integer(n, sgn);
    for (long long j = 1; j <= half(n); ++j)
        for (long long t = 1; t <= n; ++t) {
            long long e = mod_euclid(mod_euclid(j * t, n) * h2 % n * mod_euclid(l, n), n);
            Cyclo z = Cyclo::zeta(n, e);
            if (sgn < 0) z = -z;
            v.at(BlockIndex::mixed(j, t)) = z;
        }
    return v;
}

// Matrix of the quarter rotation on the block algebra; the entries do not
// depend on the sign, which is kept only to tag the carrier object.
struct RotMatrix {
    long long n = 3;
    int sign = +1;
    std::vector<Cyclo> entries;  // row-major, row = output index, col = input index

    const Cyclo& at(std::size_t row, std::size_t col) const {
        return entries[row * static_cast<std::size_t>(block_count(n)) + col];
    }
    Cyclo& at(std::size_t row, std::size_t col) {
        return entries[row * static_cast<std::size_t>(block_count(n)) + col];
    }
};

inline RotMatrix rot_matrix(long long n, int sign = +1) {
    require_odd_order(n);
    RotMatrix m;
    m.n = n;
    m.sign = sign;
    const auto idx = block_indices(n);
    const std::size_t size = idx.size();
    m.entries.assign(size * size, Cyclo::zero(n));
    const BigRat inv_n(1, n);
    auto cosine = [&](long long x) {
        // (zeta^{x/2} + zeta^{-x/2}) / n
        Cyclo c = cyclo::zeta_half_pow(n, x) + cyclo::zeta_half_pow(n, -x);
        return c.scaled(inv_n);
    };
    const Cyclo one_over_n = Cyclo::from_rational(n, inv_n);
    const Cyclo two_over_n = Cyclo::from_rational(n, BigRat(2, n));
    for (std::size_t row = 0; row < size; ++row) {
        for (std::size_t col = 0; col < size; ++col) {
            const BlockIndex& a = idx[row];
            const BlockIndex& b = idx[col];
            using K = BlockIndex::Kind;
            Cyclo v = Cyclo::zero(n);
            if (b.kind == K::Unit) {
                v = one_over_n;
            } else if (a.kind == K::Unit) {
                v = two_over_n;
            } else if (a.kind == K::TwoDim && b.kind == K::TwoDim) {
                v = two_over_n;
            } else if (a.kind == K::TwoDim && b.kind == K::Mixed) {
                v = cosine(b.j * a.r);
            } else if (a.kind == K::Mixed && b.kind == K::TwoDim) {
                v = cosine(a.j * b.r);
            } else {  // Mixed, Mixed
                v = cosine(a.j * b.t + b.j * a.t);
            }
            m.at(row, col) = v;
        }
    }
    return m;
}

// Rotation matrices are expensive to build and immutable; cache per order.
inline const RotMatrix& rot_matrix_cached(long long n) {
    static std::map<long long, RotMatrix> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, rot_matrix(n)).first;
    return it->second;
}

inline BlockVector apply(const RotMatrix& m, const BlockVector& v) {
    if (m.n != v.n) throw InvalidOrder("rotation matrix and vector orders differ");
    BlockVector out(v.n, v.sign);
    const std::size_t size = out.entries.size();
    for (std::size_t row = 0; row < size; ++row) {
        Cyclo acc = Cyclo::zero(v.n);
        for (std::size_t col = 0; col < size; ++col) acc += m.at(row, col) * v.entries[col];
        out.entries[row] = acc;
    }
    return out;
}

// Quantum trace: sum of entries weighted by the quantum dimensions 1, 2, 2.
inline Cyclo quantum_trace(const BlockVector& v) {
    const auto idx = block_indices(v.n);
    Cyclo acc = Cyclo::zero(v.n);
    for (std::size_t i = 0; i < idx.size(); ++i)
        acc += v.entries[i].scaled(BigRat(qdim(idx[i]), 1));
    return acc;
}

// ---------------------------------------------------------------------------
// Raw n^2 x n^2 oracle on the reflection-graded basis a^k b (x) a^k' b.
// Used only for independent verification of the block formulas.

struct RawMorphism {
    long long n = 3;
    int sign = +1;
    std::vector<Cyclo> entries;  // index: ((s*n + s')*n + k)*n + k', target (s,s'), source (k,k')

    RawMorphism() = default;
    RawMorphism(long long order, int s) : n(order), sign(s) {
        require_odd_order(order);
        entries.assign(static_cast<std::size_t>(order * order * order * order), Cyclo::zero(order));
    }

    static RawMorphism identity(long long order, int s) {
        RawMorphism m(order, s);
        for (long long k = 0; k < order; ++k)
            for (long long kp = 0; kp < order; ++kp) m.at(k, kp, k, kp) = Cyclo::one(order);
        return m;
    }

    const Cyclo& at(long long s, long long sp, long long k, long long kp) const {
        return entries[flat(s, sp, k, kp)];
    }
    Cyclo& at(long long s, long long sp, long long k, long long kp) { return entries[flat(s, sp, k, kp)]; }

    friend bool operator==(const RawMorphism& a, const RawMorphism& b) {
        if (a.n != b.n) return false;
        for (std::size_t i = 0; i < a.entries.size(); ++i)
            if (a.entries[i] != b.entries[i]) return false;
        return true;
    }

private:
    std::size_t flat(long long s, long long sp, long long k, long long kp) const {
        s = mod_euclid(s, n);
        sp = mod_euclid(sp, n);
        k = mod_euclid(k, n);
        kp = mod_euclid(kp, n);
        return static_cast<std::size_t>(((s * n + sp) * n + k) * n + kp);
    }
};

// a^k b (x) a^k' b  |->  sign * a^{2k-k'} b (x) a^k b, iterated l times
// (the inverse map for negative l).
inline RawMorphism raw_R_power(long long n, int sign, long long l) {
    RawMorphism m(n, sign);
    const long long sgn = (sign == 1 || mod_euclid(l, 2) == 0) ? 1 : -1;
    for (long long k = 0; k < n; ++k)
        for (long long kp = 0; kp < n; ++kp) {
            long long a = k, b = kp;
            for (long long i = 0; i < (l >= 0 ? l : -l); ++i) {
                if (l >= 0) {
                    long long na = mod_euclid(2 * a - b, n);
                    b = a;
                    a = na;
                } else {
                    long long nb = mod_euclid(2 * b - a, n);
                    a = b;
                    b = nb;
                }
            }
            m.at(a, b, k, kp) = Cyclo::from_integer(n, sgn);
        }
    return m;
}

inline RawMorphism raw_R(long long n, int sign) { return raw_R_power(n, sign, 1); }

inline bool is_equivariant(const RawMorphism& f) {
    const long long n = f.n;
    for (long long s = 0; s < n; ++s)
        for (long long sp = 0; sp < n; ++sp)
            for (long long k = 0; k < n; ++k)
                for (long long kp = 0; kp < n; ++kp) {
                    const Cyclo& v = f.at(s, sp, k, kp);
                    if (mod_euclid(s - sp - k + kp, n) != 0) {
                        if (!v.is_zero()) return false;
                        continue;
                    }
                    if (v != f.at(s + 2, sp + 2, k + 2, kp + 2)) return false;
                    if (v != f.at(-s, -sp, -k, -kp)) return false;
                }
    return true;
}

// Quarter rotation on raw tensors: an index shuffle once source and target
// are identified with V(sign) (x) V(sign) through the self-duality of V(sign).
inline RawMorphism raw_rot(const RawMorphism& f) {
    const long long n = f.n;
    RawMorphism g(n, f.sign);
    for (long long l = 0; l < n; ++l)
        for (long long j = 0; j < n; ++j)
            for (long long k = 0; k < n; ++k)
                for (long long kp = 0; kp < n; ++kp)
                    g.at(kp, k, l, j) = f.at(l, kp, j, k);
    return g;
}

// Diagonal block scalars of an equivariant raw morphism.
inline BlockVector phi_forward(const RawMorphism& f) {
    if (!is_equivariant(f)) throw NotEquivariant("raw morphism is not equivariant");
    const long long n = f.n;
    BlockVector v(n, f.sign);

    Cyclo lambda = Cyclo::zero(n);
    for (long long d = 0; d < n; ++d) lambda += f.at(0, 0, d, d);
    v.at(BlockIndex::unit()) = lambda;

    for (long long r = 1; r <= half(n); ++r) {
        Cyclo mu = Cyclo::zero(n);
        for (long long d = 0; d < n; ++d) mu += cyclo::zeta_half_pow(n, -d * r) * f.at(0, 0, d, d);
        v.at(BlockIndex::two_dim(r)) = mu;
    }
    for (long long j = 1; j <= half(n); ++j)
        for (long long t = 1; t <= n; ++t) {
            Cyclo nu = Cyclo::zero(n);
            for (long long d = 0; d < n; ++d)
                nu += cyclo::zeta_half_pow(n, -d * t) * f.at(j, 0, d + j, d);
            v.at(BlockIndex::mixed(j, t)) = nu;
        }
    return v;
}

// Unique equivariant raw morphism with the given block scalars (inverse
// Fourier transform, extended to all entries by equivariance).
inline RawMorphism phi_inverse(const BlockVector& v) {
    const long long n = v.n;
    const BigRat inv_n(1, n);
    RawMorphism f(n, v.sign);

    // base(j0, d) = entry with target (j0, 0) and source (d + j0, d)
    std::vector<std::vector<Cyclo>> base(static_cast<std::size_t>(n),
                                         std::vector<Cyclo>(static_cast<std::size_t>(n), Cyclo::zero(n)));
    for (long long d = 0; d < n; ++d) {
        Cyclo acc = v.at(BlockIndex::unit());
        for (long long r = 1; r <= half(n); ++r)
            acc += (cyclo::zeta_half_pow(n, d * r) + cyclo::zeta_half_pow(n, -d * r)) *
                   v.at(BlockIndex::two_dim(r));
        base[0][static_cast<std::size_t>(d)] = acc.scaled(inv_n);
    }
    for (long long j = 1; j <= half(n); ++j)
        for (long long d = 0; d < n; ++d) {
            Cyclo plus = Cyclo::zero(n);
            Cyclo minus = Cyclo::zero(n);
            for (long long t = 1; t <= n; ++t) {
                const Cyclo& nu = v.at(BlockIndex::mixed(j, t));
                plus += cyclo::zeta_half_pow(n, d * t) * nu;
                minus += cyclo::zeta_half_pow(n, -d * t) * nu;
            }
            base[static_cast<std::size_t>(j)][static_cast<std::size_t>(d)] = plus.scaled(inv_n);
            base[static_cast<std::size_t>(mod_euclid(-j, n))][static_cast<std::size_t>(d)] =
                minus.scaled(inv_n);
        }

    for (long long j0 = 0; j0 < n; ++j0)
        for (long long sp = 0; sp < n; ++sp)
            for (long long d = 0; d < n; ++d)
                f.at(sp + j0, sp, sp + d + j0, sp + d) =
                    base[static_cast<std::size_t>(j0)][static_cast<std::size_t>(d)];
    return f;
}

// Closed form of ROT applied to the l-th braiding image: the gcd (n, l)
// selects the surviving summands and scales the result.
inline BlockVector rot_phi_power_closed(long long n, int sign, long long l) {
    require_odd_order(n);
    if (l == 0) throw Error("rot_phi_power_closed requires l != 0");
    const long long g = gcd_ll(n, l);
    const long long sgn = (sign == 1 || mod_euclid(l, 2) == 0) ? 1 : -1;
    const Cyclo scale = Cyclo::from_integer(n, sgn * g);
    BlockVector v(n, sign);
    v.at(BlockIndex::unit()) = scale;
    for (long long r = 1; r <= half(n); ++r)
        if (r % g == 0) v.at(BlockIndex::two_dim(r)) = scale;
    for (long long j = 1; j <= half(n); ++j) {
        if (j % g != 0) continue;
        for (long long t = 1; t <= n; ++t) {
            if (t % g != 0) continue;
            v.at(BlockIndex::mixed(j, t)) = scale * cyclo::zeta_frac_pow(n, -j * t, 2 * l);
        }
    }
    return v;
}

// Closed form of the block vector of a rational tangle word for p/q.
inline BlockVector rational_closed_form(long long n, int sign, const tangle::Frac& f) {
    require_odd_order(n);
    const long long g = gcd_ll(n, f.num);
    const long long m = tangle::mu(tangle::neg_cf(f));
    const long long sgn = (sign == 1 || mod_euclid(m, 2) == 0) ? 1 : -1;
    const Cyclo scale = Cyclo::from_integer(n, sgn * g);
    BlockVector v(n, sign);
    v.at(BlockIndex::unit()) = scale;
    for (long long r = 1; r <= half(n); ++r)
        if (r % g == 0) v.at(BlockIndex::two_dim(r)) = scale;
    for (long long j = 1; j <= half(n); ++j) {
        if (j % g != 0) continue;
        for (long long t = 1; t <= n; ++t) {
            if (t % g != 0) continue;
            v.at(BlockIndex::mixed(j, t)) = scale * cyclo::zeta_frac_pow(n, -f.den * j * t, 2 * f.num);
        }
    }
    return v;
}

}  // namespace arblink::block
