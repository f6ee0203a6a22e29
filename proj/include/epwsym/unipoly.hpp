#pragma once

#include <algorithm>
#include <utility>

#include "epwsym/fp.hpp"

namespace epwsym {

// Field-context concept used by the generic polynomial code:
//   using Elem = ...;  zero() one() add sub mul neg inv is_zero eq
// Instantiated with FpK (prime field) and FqK (extension field, fq.hpp).
struct FpK {
    const Fp* F;
    using Elem = uint64_t;
    explicit FpK(const Fp& f) : F(&f) {}
    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    Elem add(Elem a, Elem b) const { return F->add(a, b); }
    Elem sub(Elem a, Elem b) const { return F->sub(a, b); }
    Elem mul(Elem a, Elem b) const { return F->mul(a, b); }
    Elem neg(Elem a) const { return F->neg(a); }
    Elem inv(Elem a) const { return F->inv(a); }
    bool is_zero(Elem a) const { return a == 0; }
    bool eq(Elem a, Elem b) const { return a == b; }
};

// Univariate polynomial, coefficient of x^i at c[i], no trailing zeros.
template <class K>
struct Poly {
    using E = typename K::Elem;
    std::vector<E> c;

    bool is_zero() const { return c.empty(); }
    int deg() const { return (int)c.size() - 1; }  // deg(0) == -1
    E lead(const K& k) const { return c.empty() ? k.zero() : c.back(); }

    void trim(const K& k) {
        while (!c.empty() && k.is_zero(c.back())) c.pop_back();
    }
    static Poly zero() { return Poly{}; }
    static Poly constant(const K& k, E v) {
        Poly r;
        if (!k.is_zero(v)) r.c.push_back(v);
        return r;
    }
    static Poly x(const K& k) {
        Poly r;
        r.c = {k.zero(), k.one()};
        return r;
    }
};

template <class K>
Poly<K> poly_add(const K& k, const Poly<K>& a, const Poly<K>& b) {
    Poly<K> r;
    r.c.resize(std::max(a.c.size(), b.c.size()), k.zero());
    for (size_t i = 0; i < r.c.size(); ++i) {
        typename K::Elem v = i < a.c.size() ? a.c[i] : k.zero();
        if (i < b.c.size()) v = k.add(v, b.c[i]);
        r.c[i] = v;
    }
    r.trim(k);
    return r;
}

template <class K>
Poly<K> poly_sub(const K& k, const Poly<K>& a, const Poly<K>& b) {
    Poly<K> r;
    r.c.resize(std::max(a.c.size(), b.c.size()), k.zero());
    for (size_t i = 0; i < r.c.size(); ++i) {
        typename K::Elem v = i < a.c.size() ? a.c[i] : k.zero();
        if (i < b.c.size()) v = k.sub(v, b.c[i]);
        r.c[i] = v;
    }
    r.trim(k);
    return r;
}

template <class K>
Poly<K> poly_mul(const K& k, const Poly<K>& a, const Poly<K>& b) {
    if (a.is_zero() || b.is_zero()) return Poly<K>::zero();
    Poly<K> r;
    r.c.assign(a.c.size() + b.c.size() - 1, k.zero());
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (k.is_zero(a.c[i])) continue;
        for (size_t j = 0; j < b.c.size(); ++j)
            r.c[i + j] = k.add(r.c[i + j], k.mul(a.c[i], b.c[j]));
    }
    r.trim(k);
    return r;
}

template <class K>
Poly<K> poly_scale(const K& k, const Poly<K>& a, typename K::Elem s) {
    Poly<K> r = a;
    for (auto& v : r.c) v = k.mul(v, s);
    r.trim(k);
    return r;
}

template <class K>
Poly<K> poly_monic(const K& k, const Poly<K>& a) {
    if (a.is_zero()) return a;
    return poly_scale(k, a, k.inv(a.c.back()));
}

template <class K>
void poly_divmod(const K& k, const Poly<K>& a, const Poly<K>& b, Poly<K>& q, Poly<K>& r) {
    if (b.is_zero()) throw Error("DivisionByZero", "polynomial division by zero");
    q = Poly<K>::zero();
    r = a;
    auto binv = k.inv(b.c.back());
    int db = b.deg();
    if (r.deg() >= db) q.c.assign(r.deg() - db + 1, k.zero());
    while (r.deg() >= db) {
        auto f = k.mul(r.c.back(), binv);
        int shift = r.deg() - db;
        q.c[shift] = f;
        for (int i = 0; i <= db; ++i)
            r.c[shift + i] = k.sub(r.c[shift + i], k.mul(f, b.c[i]));
        r.trim(k);
    }
    q.trim(k);
}

template <class K>
Poly<K> poly_mod(const K& k, const Poly<K>& a, const Poly<K>& b) {
    Poly<K> q, r;
    poly_divmod(k, a, b, q, r);
    return r;
}

template <class K>
Poly<K> poly_gcd(const K& k, Poly<K> a, Poly<K> b) {
    while (!b.is_zero()) {
        Poly<K> r = poly_mod(k, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return poly_monic(k, a);
}

template <class K>
typename K::Elem poly_eval(const K& k, const Poly<K>& a, typename K::Elem x) {
    typename K::Elem r = k.zero();
    for (size_t i = a.c.size(); i-- > 0;) r = k.add(k.mul(r, x), a.c[i]);
    return r;
}

template <class K>
Poly<K> poly_derivative(const K& k, const Poly<K>& a) {
    Poly<K> r;
    if (a.c.size() <= 1) return r;
    r.c.resize(a.c.size() - 1);
    for (size_t i = 1; i < a.c.size(); ++i) {
        typename K::Elem m = k.zero();
        for (size_t t = 0; t < i; ++t) m = k.add(m, a.c[i]);  // i * c[i]
        r.c[i - 1] = m;
    }
    r.trim(k);
    return r;
}

template <class K>
Poly<K> poly_powmod(const K& k, Poly<K> base, uint64_t e, const Poly<K>& mod) {
    Poly<K> r = Poly<K>::constant(k, k.one());
    base = poly_mod(k, base, mod);
    while (e) {
        if (e & 1) r = poly_mod(k, poly_mul(k, r, base), mod);
        base = poly_mod(k, poly_mul(k, base, base), mod);
        e >>= 1;
    }
    return r;
}

// Resultant via the Euclidean remainder sequence.
template <class K>
typename K::Elem poly_resultant(const K& k, Poly<K> a, Poly<K> b) {
    if (a.is_zero() || b.is_zero()) return k.zero();
    auto res = k.one();
    bool negate = false;
    while (true) {
        if (b.deg() == 0) {
            auto t = k.one();
            for (int i = 0; i < a.deg(); ++i) t = k.mul(t, b.c[0]);
            res = k.mul(res, t);
            break;
        }
        Poly<K> r = poly_mod(k, a, b);
        if (r.is_zero()) return k.zero();
        // res(a,b) = (-1)^(da db) lc(b)^(da - dr) res(b,r)
        if ((a.deg() & 1) && (b.deg() & 1)) negate = !negate;
        auto t = k.one();
        for (int i = 0; i < a.deg() - r.deg(); ++i) t = k.mul(t, b.lead(k));
        res = k.mul(res, t);
        a = std::move(b);
        b = std::move(r);
    }
    if (negate) res = k.neg(res);
    return res;
}

using FpPoly = Poly<FpK>;

// ---- factorization over GF(p) (squarefree / distinct degree / Cantor-Zassenhaus)

struct FpFactor {
    FpPoly poly;  // monic irreducible
    int mult;
};

inline std::vector<std::pair<FpPoly, int>> squarefree_decomposition(const FpK& k, FpPoly f) {
    // Yun's algorithm; p > deg f in all our uses, so no p-th power part.
    std::vector<std::pair<FpPoly, int>> out;
    f = poly_monic(k, f);
    FpPoly df = poly_derivative(k, f);
    FpPoly a = poly_gcd(k, f, df);
    FpPoly b, c, q, r;
    poly_divmod(k, f, a, b, r);
    poly_divmod(k, df, a, c, r);
    int i = 1;
    while (b.deg() > 0) {
        FpPoly d = poly_sub(k, c, poly_derivative(k, b));
        FpPoly g = poly_gcd(k, b, d);
        if (g.deg() > 0) out.push_back({g, i});
        poly_divmod(k, b, g, q, r);
        b = q;
        poly_divmod(k, d, g, c, r);
        ++i;
    }
    return out;
}

inline void equal_degree_split(const FpK& k, const FpPoly& f, int d, Prng& rng,
                               std::vector<FpPoly>& out) {
    if (f.deg() == d) {
        out.push_back(f);
        return;
    }
    uint64_t p = k.F->p;
    while (true) {
        FpPoly a;
        a.c.resize(f.deg());
        for (auto& v : a.c) v = rng.field(*k.F);
        a.trim(k);
        if (a.deg() < 1) continue;
        // gcd(a^((p^d-1)/2) - 1, f) splits f (p odd).
        uint64_t e = 1;
        FpPoly t = poly_mod(k, a, f);
        FpPoly acc = t;
        for (int i = 1; i < d; ++i) {
            acc = poly_powmod(k, acc, p, f);
            acc = poly_mod(k, poly_mul(k, acc, t), f);
            (void)e;
        }
        // acc = a^(1+p+...+p^(d-1)) = a^((p^d-1)/(p-1)); now raise to (p-1)/2
        acc = poly_powmod(k, acc, (p - 1) / 2, f);
        acc = poly_sub(k, acc, FpPoly::constant(k, 1));
        FpPoly g = poly_gcd(k, acc, f);
        if (g.deg() > 0 && g.deg() < f.deg()) {
            FpPoly q, r;
            poly_divmod(k, f, g, q, r);
            equal_degree_split(k, g, d, rng, out);
            equal_degree_split(k, q, d, rng, out);
            return;
        }
    }
}

// Full factorization into monic irreducibles with multiplicities.
inline std::vector<FpFactor> factor_poly(const FpK& k, const FpPoly& f, Prng& rng) {
    std::vector<FpFactor> out;
    if (f.deg() <= 0) return out;
    for (auto& [sf, mult] : squarefree_decomposition(k, f)) {
        // distinct-degree on sf
        FpPoly rem = sf;
        FpPoly h = FpPoly::x(k);  // x^(p^d) mod rem, updated per degree
        int d = 0;
        while (rem.deg() > 0) {
            ++d;
            if (rem.deg() < 2 * d) {
                out.push_back({poly_monic(k, rem), mult});
                break;
            }
            h = poly_powmod(k, h, k.F->p, rem);
            FpPoly g = poly_gcd(k, poly_sub(k, h, FpPoly::x(k)), rem);
            if (g.deg() > 0) {
                std::vector<FpPoly> irr;
                equal_degree_split(k, g, d, rng, irr);
                for (auto& q : irr) out.push_back({q, mult});
                FpPoly quo, r;
                poly_divmod(k, rem, g, quo, r);
                rem = quo;
                h = poly_mod(k, h, rem);
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const FpFactor& a, const FpFactor& b) {
        if (a.poly.deg() != b.poly.deg()) return a.poly.deg() < b.poly.deg();
        return a.poly.c < b.poly.c;
    });
    return out;
}

inline std::vector<uint64_t> roots_in_fp(const FpK& k, const FpPoly& f, Prng& rng) {
    std::vector<uint64_t> out;
    for (auto& fac : factor_poly(k, f, rng))
        if (fac.poly.deg() == 1) out.push_back(k.F->neg(fac.poly.c[0]));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace epwsym
