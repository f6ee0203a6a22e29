#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace epwsym {

// Library-wide error with a stable machine-readable code ("NotPrimitive",
// "BoundTooLow", ...).  CLI exit codes are derived from these.
struct Error : std::runtime_error {
    std::string code;
    Error(std::string c, const std::string& msg)
        : std::runtime_error(c + ": " + msg), code(std::move(c)) {}
};

// Arithmetic in GF(p), p an odd prime < 2^31.  Elements are uint64_t in [0,p).
struct Fp {
    uint64_t p;

    explicit Fp(uint64_t prime) : p(prime) {}

    uint64_t add(uint64_t a, uint64_t b) const {
        uint64_t s = a + b;
        return s >= p ? s - p : s;
    }
    uint64_t sub(uint64_t a, uint64_t b) const { return a >= b ? a - b : a + p - b; }
    uint64_t neg(uint64_t a) const { return a == 0 ? 0 : p - a; }
    uint64_t mul(uint64_t a, uint64_t b) const { return (a * b) % p; }

    uint64_t pow(uint64_t a, uint64_t e) const {
        uint64_t r = 1, b = a % p;
        while (e) {
            if (e & 1) r = mul(r, b);
            b = mul(b, b);
            e >>= 1;
        }
        return r;
    }

    uint64_t inv(uint64_t a) const {
        if (a == 0) throw Error("DivisionByZero", "inverse of 0 in GF(p)");
        return pow(a, p - 2);
    }

    // Reduce a signed integer into [0,p).
    uint64_t from_int(int64_t v) const {
        int64_t m = v % (int64_t)p;
        if (m < 0) m += (int64_t)p;
        return (uint64_t)m;
    }

    // Recognize small integers: returns true and sets out if a == v mod p for
    // some |v| <= bound.  Used to spot rational traces among field values.
    bool as_small_int(uint64_t a, int64_t bound, int64_t& out) const {
        if (a <= (uint64_t)bound) {
            out = (int64_t)a;
            return true;
        }
        if (p - a <= (uint64_t)bound) {
            out = -(int64_t)(p - a);
            return true;
        }
        return false;
    }
};

// Deterministic Miller-Rabin, valid for all n < 3.3e24 with this base set.
inline bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    auto mulmod = [](uint64_t a, uint64_t b, uint64_t m) -> uint64_t {
        return (uint64_t)((__uint128_t)a * b % m);
    };
    auto powmod = [&](uint64_t a, uint64_t e, uint64_t m) -> uint64_t {
        uint64_t r = 1;
        a %= m;
        while (e) {
            if (e & 1) r = mulmod(r, a, m);
            a = mulmod(a, a, m);
            e >>= 1;
        }
        return r;
    };
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

inline std::vector<uint64_t> prime_factors(uint64_t n) {
    std::vector<uint64_t> out;
    for (uint64_t q = 2; q * q <= n; ++q)
        if (n % q == 0) {
            out.push_back(q);
            while (n % q == 0) n /= q;
        }
    if (n > 1) out.push_back(n);
    return out;
}

// Field context: GF(p) together with a distinguished root of unity of exact
// multiplicative order n.  All cyclotomic constants of the computation
// (zeta_3, zeta_4, zeta_5, zeta_7, b7, ...) are powers of this root.
struct FieldCtx {
    Fp f;
    uint64_t root_order;
    uint64_t zeta;

    FieldCtx(uint64_t p, uint64_t n, uint64_t z) : f(p), root_order(n), zeta(z) {}

    // zeta^(n/m): a primitive m-th root, for m | n.
    uint64_t root_of_order(uint64_t m) const {
        if (m == 0 || root_order % m != 0)
            throw Error("OrderNotDividing", "no root of order " + std::to_string(m));
        return f.pow(zeta, root_order / m);
    }
};

// Checks that candidate has exact multiplicative order n in GF(p)*.
inline FieldCtx validate_root(uint64_t p, uint64_t n, int64_t candidate) {
    if (!is_prime_u64(p)) throw Error("NotPrime", std::to_string(p) + " is not prime");
    Fp f(p);
    uint64_t c = f.from_int(candidate);
    if (c == 0) throw Error("NotPrimitive", "candidate is zero");
    if ((p - 1) % n != 0)
        throw Error("OrderNotDividing", std::to_string(n) + " does not divide p-1");
    if (f.pow(c, n) != 1)
        throw Error("NotPrimitive", "candidate^n != 1");
    for (uint64_t q : prime_factors(n))
        if (f.pow(c, n / q) == 1)
            throw Error("NotPrimitive", "candidate order strictly divides " + std::to_string(n));
    return FieldCtx(p, n, c);
}

// Deterministic search for an element of exact order n (smallest base whose
// (p-1)/n power works).  Used to set up the replay prime.
inline FieldCtx find_root(uint64_t p, uint64_t n) {
    if (!is_prime_u64(p)) throw Error("NotPrime", std::to_string(p) + " is not prime");
    if ((p - 1) % n != 0) throw Error("OrderNotDividing", "n does not divide p-1");
    Fp f(p);
    for (uint64_t g = 2; g < p; ++g) {
        uint64_t c = f.pow(g, (p - 1) / n);
        bool ok = c != 1;
        for (uint64_t q : prime_factors(n))
            if (ok && f.pow(c, n / q) == 1) ok = false;
        if (ok) return FieldCtx(p, n, c);
    }
    throw Error("NotPrimitive", "no element of order n found");
}

// splitmix64; the single PRNG used everywhere, seed recorded in reports.
struct Prng {
    uint64_t state;
    explicit Prng(uint64_t seed) : state(seed) {}
    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    uint64_t below(uint64_t n) { return next() % n; }
    uint64_t field(const Fp& f) { return next() % f.p; }
    uint64_t field_nonzero(const Fp& f) {
        uint64_t v;
        do { v = field(f); } while (v == 0);
        return v;
    }
};

}  // namespace epwsym
