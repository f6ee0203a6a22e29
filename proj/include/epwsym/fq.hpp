#pragma once

#include <memory>

#include "epwsym/unipoly.hpp"

namespace epwsym {

// GF(p^k) as GF(p)[x]/(modulus), modulus monic irreducible of degree k.
// Elements are coefficient vectors of length k.
struct FqCtx {
    const Fp* F;
    FpPoly modulus;  // monic, degree k
    int k;

    FqCtx(const Fp& f, FpPoly mod) : F(&f), modulus(std::move(mod)), k(modulus.deg()) {}
};

inline bool poly_is_irreducible(const FpK& k, const FpPoly& f) {
    if (f.deg() < 1) return false;
    if (f.deg() == 1) return true;
    int n = f.deg();
    FpPoly xp = poly_powmod(k, FpPoly::x(k), k.F->p, f);
    // x^(p^n) == x mod f and gcd(x^(p^(n/q)) - x, f) == 1 for primes q | n
    std::vector<FpPoly> frob(n + 1);  // frob[i] = x^(p^i) mod f
    frob[0] = FpPoly::x(k);
    frob[1] = xp;
    for (int i = 2; i <= n; ++i) frob[i] = poly_powmod(k, frob[i - 1], k.F->p, f);
    if (!(poly_sub(k, frob[n], FpPoly::x(k)).is_zero())) return false;
    for (uint64_t q : prime_factors((uint64_t)n)) {
        FpPoly g = poly_gcd(k, poly_sub(k, frob[n / q], FpPoly::x(k)), f);
        if (g.deg() != 0) return false;
    }
    return true;
}

// Deterministic modulus: the monic irreducible x^k + c_{k-1}x^{k-1} + ... + c_0
// whose coefficient tuple (c_0, c_1, ..., c_{k-1}) is smallest lexicographically.
inline FpPoly smallest_irreducible(const FpK& kc, int k) {
    if (k == 1) {
        FpPoly f;
        f.c = {0, 1};  // x itself
        return f;
    }
    std::vector<uint64_t> c(k, 0);
    c[0] = 1;  // a constant term of 0 would make the polynomial divisible by x
    while (true) {
        FpPoly f;
        f.c = c;
        f.c.push_back(1);
        if (poly_is_irreducible(kc, f)) return f;
        // increment tuple (c_{k-1} fastest would be colex; spec wants lex on
        // (c_0,...,c_{k-1}), so increment the last coordinate first)
        int i = k - 1;
        while (i >= 0) {
            if (++c[i] < kc.F->p) break;
            c[i] = 0;
            --i;
        }
        if (i < 0) throw Error("NotFound", "no irreducible polynomial found");
    }
}

// Field-context over GF(p^k) for the generic polynomial code.
struct FqK {
    const FqCtx* Q;
    using Elem = std::vector<uint64_t>;  // length k, coeffs of the residue class

    explicit FqK(const FqCtx& q) : Q(&q) {}

    Elem zero() const { return Elem(Q->k, 0); }
    Elem one() const {
        Elem e(Q->k, 0);
        e[0] = 1;
        return e;
    }
    Elem from_fp(uint64_t v) const {
        Elem e(Q->k, 0);
        e[0] = v;
        return e;
    }
    // the residue class of x (a root of the modulus)
    Elem gen() const {
        Elem e(Q->k, 0);
        if (Q->k > 1)
            e[1] = 1;
        else
            e[0] = Q->F->neg(Q->modulus.c[0]);
        return e;
    }
    bool is_zero(const Elem& a) const {
        for (auto v : a)
            if (v) return false;
        return true;
    }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }
    Elem add(const Elem& a, const Elem& b) const {
        Elem r(Q->k);
        for (int i = 0; i < Q->k; ++i) r[i] = Q->F->add(a[i], b[i]);
        return r;
    }
    Elem sub(const Elem& a, const Elem& b) const {
        Elem r(Q->k);
        for (int i = 0; i < Q->k; ++i) r[i] = Q->F->sub(a[i], b[i]);
        return r;
    }
    Elem neg(const Elem& a) const {
        Elem r(Q->k);
        for (int i = 0; i < Q->k; ++i) r[i] = Q->F->neg(a[i]);
        return r;
    }
    Elem mul(const Elem& a, const Elem& b) const {
        int k = Q->k;
        std::vector<uint64_t> prod(2 * k - 1, 0);
        for (int i = 0; i < k; ++i) {
            if (!a[i]) continue;
            for (int j = 0; j < k; ++j)
                if (b[j]) prod[i + j] = Q->F->add(prod[i + j], Q->F->mul(a[i], b[j]));
        }
        // reduce by the monic modulus
        for (int d = 2 * k - 2; d >= k; --d) {
            uint64_t c = prod[d];
            if (!c) continue;
            prod[d] = 0;
            for (int j = 0; j < k; ++j)
                prod[d - k + j] = Q->F->sub(prod[d - k + j], Q->F->mul(c, Q->modulus.c[j]));
        }
        prod.resize(k);
        return prod;
    }
    Elem pow(Elem a, uint64_t e) const {
        Elem r = one();
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    Elem inv(const Elem& a) const {
        if (is_zero(a)) throw Error("DivisionByZero", "inverse of 0 in GF(p^k)");
        // extended Euclid on the representative polynomial and the modulus
        FpK kc(*Q->F);
        FpPoly r0 = Q->modulus, r1;
        r1.c = a;
        r1.trim(kc);
        FpPoly s0 = FpPoly::zero(), s1 = FpPoly::constant(kc, 1);
        while (r1.deg() > 0) {
            FpPoly q, r;
            poly_divmod(kc, r0, r1, q, r);
            FpPoly s = poly_sub(kc, s0, poly_mul(kc, q, s1));
            r0 = std::move(r1);
            r1 = std::move(r);
            s0 = std::move(s1);
            s1 = std::move(s);
        }
        // r1 is a nonzero constant; inverse is s1 / r1
        FpPoly res = poly_scale(kc, s1, Q->F->inv(r1.c[0]));
        Elem out(Q->k, 0);
        for (size_t i = 0; i < res.c.size(); ++i) out[i] = res.c[i];
        return out;
    }
    Elem frobenius(const Elem& a) const { return pow(a, Q->F->p); }
};

// Lift an Fp polynomial into GF(p^k)[y].
inline Poly<FqK> lift_poly(const FqK& kq, const FpPoly& f) {
    Poly<FqK> r;
    r.c.reserve(f.c.size());
    for (auto v : f.c) r.c.push_back(kq.from_fp(v));
    r.trim(kq);
    return r;
}

// All roots of f in GF(p^k) (k = ambient degree), by gcd with y^(p^k) - y and
// then splitting linear factors off via random gcds.  Used on small-degree f.
inline std::vector<FqK::Elem> fq_roots(const FqK& kq, Poly<FqK> f, Prng& rng) {
    std::vector<FqK::Elem> out;
    if (f.deg() < 1) return out;
    f = poly_monic(kq, f);
    // g = gcd(f, y^(p^k) - y): the product of the linear factors over Fq
    uint64_t p = kq.Q->F->p;
    Poly<FqK> yq = Poly<FqK>::x(kq);
    for (int i = 0; i < kq.Q->k; ++i) yq = poly_powmod(kq, yq, p, f);
    Poly<FqK> g = poly_gcd(kq, poly_sub(kq, yq, Poly<FqK>::x(kq)), f);
    // split g into linear factors
    std::vector<Poly<FqK>> stack{g};
    while (!stack.empty()) {
        Poly<FqK> h = stack.back();
        stack.pop_back();
        if (h.deg() < 1) continue;
        if (h.deg() == 1) {
            out.push_back(kq.neg(kq.mul(kq.inv(h.c[1]), h.c[0])));
            continue;
        }
        // random split: gcd((y+r)^((q-1)/2) - 1, h)
        uint64_t qm1_half = 0;
        // (p^k - 1)/2 can overflow for large k; use repeated powering instead
        (void)qm1_half;
        while (true) {
            Poly<FqK> a;
            a.c = {FqK::Elem(kq.Q->k), kq.one()};
            for (auto& v : a.c[0]) v = rng.field(*kq.Q->F);
            // a^((p^k-1)/2) mod h, computed as ((a^(p^k-1)/(p-1))^((p-1)/2))
            Poly<FqK> t = poly_mod(kq, a, h);
            Poly<FqK> acc = t;
            for (int i = 1; i < kq.Q->k; ++i) {
                acc = poly_powmod(kq, acc, p, h);
                acc = poly_mod(kq, poly_mul(kq, acc, t), h);
            }
            acc = poly_powmod(kq, acc, (p - 1) / 2, h);
            acc = poly_sub(kq, acc, Poly<FqK>::constant(kq, kq.one()));
            Poly<FqK> d = poly_gcd(kq, acc, h);
            if (d.deg() > 0 && d.deg() < h.deg()) {
                Poly<FqK> q2, r2;
                poly_divmod(kq, h, d, q2, r2);
                stack.push_back(d);
                stack.push_back(q2);
                break;
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace epwsym
