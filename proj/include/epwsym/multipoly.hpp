#pragma once

#include <array>
#include <cstring>
#include <map>

#include "epwsym/fq.hpp"

namespace epwsym {

constexpr int kMaxVars = 8;

// Exponent vector; total degree fits in uint16 per variable.
struct Mono {
    std::array<uint16_t, kMaxVars> e{};

    int total(int nvars) const {
        int t = 0;
        for (int i = 0; i < nvars; ++i) t += e[i];
        return t;
    }
    bool operator==(const Mono& o) const { return e == o.e; }
};

// Graded reverse lexicographic, a < b.
inline bool grevlex_less(const Mono& a, const Mono& b, int nvars) {
    int ta = a.total(nvars), tb = b.total(nvars);
    if (ta != tb) return ta < tb;
    for (int i = nvars - 1; i >= 0; --i)
        if (a.e[i] != b.e[i]) return a.e[i] > b.e[i];
    return false;
}

// Sparse multivariate polynomial over GF(p).  Terms sorted grevlex-descending,
// no zero coefficients stored.
struct MultiPoly {
    int nvars = 0;
    std::vector<std::pair<Mono, uint64_t>> terms;

    bool is_zero() const { return terms.empty(); }

    int total_degree() const {
        int d = -1;
        for (auto& [m, c] : terms) d = std::max(d, m.total(nvars));
        return d;
    }

    bool is_homogeneous() const {
        if (terms.empty()) return true;
        int d = terms[0].first.total(nvars);
        for (auto& [m, c] : terms)
            if (m.total(nvars) != d) return false;
        return true;
    }

    void normalize(const Fp& F) {
        std::sort(terms.begin(), terms.end(), [&](const auto& a, const auto& b) {
            return grevlex_less(b.first, a.first, nvars);
        });
        std::vector<std::pair<Mono, uint64_t>> out;
        for (auto& [m, c] : terms) {
            if (!out.empty() && out.back().first == m)
                out.back().second = F.add(out.back().second, c);
            else
                out.push_back({m, c});
            if (!out.empty() && out.back().second == 0) out.pop_back();
        }
        terms = std::move(out);
    }

    static MultiPoly zero(int nvars) {
        MultiPoly p;
        p.nvars = nvars;
        return p;
    }
    static MultiPoly constant(int nvars, uint64_t v) {
        MultiPoly p;
        p.nvars = nvars;
        if (v) p.terms.push_back({Mono{}, v});
        return p;
    }
    static MultiPoly var(int nvars, int i, uint64_t coef = 1) {
        MultiPoly p;
        p.nvars = nvars;
        if (coef) {
            Mono m;
            m.e[i] = 1;
            p.terms.push_back({m, coef});
        }
        return p;
    }
};

inline MultiPoly mp_add(const Fp& F, const MultiPoly& a, const MultiPoly& b) {
    MultiPoly r = a;
    r.terms.insert(r.terms.end(), b.terms.begin(), b.terms.end());
    r.normalize(F);
    return r;
}

inline MultiPoly mp_scale(const Fp& F, const MultiPoly& a, uint64_t s) {
    MultiPoly r = a;
    if (s == 0) return MultiPoly::zero(a.nvars);
    for (auto& [m, c] : r.terms) c = F.mul(c, s);
    return r;
}

inline MultiPoly mp_sub(const Fp& F, const MultiPoly& a, const MultiPoly& b) {
    return mp_add(F, a, mp_scale(F, b, F.neg(1)));
}

inline MultiPoly mp_mul(const Fp& F, const MultiPoly& a, const MultiPoly& b) {
    MultiPoly r = MultiPoly::zero(a.nvars);
    r.terms.reserve(a.terms.size() * b.terms.size());
    for (auto& [ma, ca] : a.terms)
        for (auto& [mb, cb] : b.terms) {
            Mono m;
            for (int i = 0; i < a.nvars; ++i) m.e[i] = ma.e[i] + mb.e[i];
            r.terms.push_back({m, F.mul(ca, cb)});
        }
    r.normalize(F);
    return r;
}

inline MultiPoly mp_pow(const Fp& F, const MultiPoly& a, int e) {
    MultiPoly r = MultiPoly::constant(a.nvars, 1);
    for (int i = 0; i < e; ++i) r = mp_mul(F, r, a);
    return r;
}

inline MultiPoly mp_derivative(const Fp& F, const MultiPoly& a, int var) {
    MultiPoly r = MultiPoly::zero(a.nvars);
    for (auto& [m, c] : a.terms) {
        if (m.e[var] == 0) continue;
        Mono m2 = m;
        m2.e[var] -= 1;
        r.terms.push_back({m2, F.mul(c, m.e[var] % F.p)});
    }
    r.normalize(F);
    return r;
}

template <class K>
typename K::Elem mp_eval(const K& k, const Fp& F, const MultiPoly& a,
                         const std::vector<typename K::Elem>& pt) {
    // powers cache per variable
    std::vector<std::vector<typename K::Elem>> pw(a.nvars);
    for (int i = 0; i < a.nvars; ++i) pw[i].push_back(k.one());
    auto r = k.zero();
    for (auto& [m, c] : a.terms) {
        typename K::Elem t = k.one();
        for (int i = 0; i < a.nvars; ++i) {
            while ((int)pw[i].size() <= m.e[i]) pw[i].push_back(k.mul(pw[i].back(), pt[i]));
            if (m.e[i]) t = k.mul(t, pw[i][m.e[i]]);
        }
        // scale the monomial value by the Fp coefficient
        if constexpr (std::is_same_v<typename K::Elem, uint64_t>) {
            t = F.mul(t, c);
        } else {
            for (auto& v : t) v = F.mul(v, c);
        }
        r = k.add(r, t);
    }
    return r;
}

inline uint64_t mp_eval_fp(const Fp& F, const MultiPoly& a, const std::vector<uint64_t>& pt) {
    FpK k(F);
    return mp_eval(k, F, a, pt);
}

// Homogenize to degree d using variable hv (which must not occur in a).
inline MultiPoly mp_homogenize(const Fp& F, const MultiPoly& a, int hv, int d) {
    MultiPoly r = a;
    for (auto& [m, c] : r.terms) {
        int t = m.total(a.nvars);
        if (t > d) throw Error("DegreeMismatch", "homogenization degree too small");
        m.e[hv] += (uint16_t)(d - t);
    }
    r.normalize(F);
    return r;
}

// Substitute variable v := value (partial evaluation).
inline MultiPoly mp_substitute(const Fp& F, const MultiPoly& a, int var, uint64_t value) {
    MultiPoly r = MultiPoly::zero(a.nvars);
    for (auto& [m, c] : a.terms) {
        uint64_t cc = F.mul(c, F.pow(value, m.e[var]));
        Mono m2 = m;
        m2.e[var] = 0;
        r.terms.push_back({m2, cc});
    }
    r.normalize(F);
    return r;
}

// Composition with a linear substitution: x_i := sum_j L[i][j] * y_j, where L
// is nvars x new_nvars.  Realizes restriction to a parametrized subspace.
inline MultiPoly mp_compose_linear(const Fp& F, const MultiPoly& a,
                                   const std::vector<std::vector<uint64_t>>& L, int new_nvars) {
    // per-variable powers of the substituted linear forms
    std::vector<std::vector<MultiPoly>> pw(a.nvars);
    for (int i = 0; i < a.nvars; ++i) {
        MultiPoly lin = MultiPoly::zero(new_nvars);
        for (int j = 0; j < new_nvars; ++j)
            if (L[i][j]) lin = mp_add(F, lin, MultiPoly::var(new_nvars, j, L[i][j]));
        pw[i].push_back(MultiPoly::constant(new_nvars, 1));
        pw[i].push_back(lin);
    }
    MultiPoly r = MultiPoly::zero(new_nvars);
    for (auto& [m, c] : a.terms) {
        MultiPoly t = MultiPoly::constant(new_nvars, c);
        for (int i = 0; i < a.nvars; ++i) {
            while ((int)pw[i].size() <= m.e[i])
                pw[i].push_back(mp_mul(F, pw[i].back(), pw[i][1]));
            if (m.e[i]) t = mp_mul(F, t, pw[i][m.e[i]]);
        }
        r = mp_add(F, r, t);
    }
    return r;
}

// Exact division: returns q with divisor * q == a, or throws NotDivisible.
inline MultiPoly mp_exact_divide(const Fp& F, const MultiPoly& a, const MultiPoly& divisor) {
    if (divisor.is_zero()) throw Error("NotDivisible", "division by zero polynomial");
    MultiPoly rem = a, q = MultiPoly::zero(a.nvars);
    const Mono& dl = divisor.terms[0].first;
    uint64_t dinv = F.inv(divisor.terms[0].second);
    while (!rem.is_zero()) {
        const Mono& rl = rem.terms[0].first;
        Mono t;
        for (int i = 0; i < a.nvars; ++i) {
            if (rl.e[i] < dl.e[i]) throw Error("NotDivisible", "leading monomial not divisible");
            t.e[i] = rl.e[i] - dl.e[i];
        }
        uint64_t c = F.mul(rem.terms[0].second, dinv);
        MultiPoly mono = MultiPoly::zero(a.nvars);
        mono.terms.push_back({t, c});
        q = mp_add(F, q, mono);
        rem = mp_sub(F, rem, mp_mul(F, mono, divisor));
    }
    return q;
}

// Collapse to a univariate polynomial in variable v (all other exponents must
// be zero); used after restriction to a line.
inline FpPoly mp_to_unipoly(const Fp& F, const MultiPoly& a, int var) {
    FpK k(F);
    FpPoly r;
    for (auto& [m, c] : a.terms) {
        for (int i = 0; i < a.nvars; ++i)
            if (i != var && m.e[i] != 0)
                throw Error("NotUnivariate", "polynomial is not univariate in the given variable");
        if ((int)r.c.size() <= m.e[var]) r.c.resize(m.e[var] + 1, 0);
        r.c[m.e[var]] = c;
    }
    r.trim(k);
    return r;
}

// Extract the coefficients of a binary (2-variable homogeneous) form as a
// univariate in t by setting (x0,x1) = (1,t)...  callers restrict first.
inline FpPoly mp_dehomogenize(const Fp& F, const MultiPoly& a, int keep_var, int one_var) {
    FpK k(F);
    FpPoly r;
    for (auto& [m, c] : a.terms) {
        for (int i = 0; i < a.nvars; ++i)
            if (i != keep_var && i != one_var && m.e[i] != 0)
                throw Error("NotBivariate", "expected a form in two variables");
        if ((int)r.c.size() <= m.e[keep_var]) r.c.resize(m.e[keep_var] + 1, 0);
        r.c[m.e[keep_var]] = F.add(r.c[m.e[keep_var]], c);
    }
    r.trim(k);
    return r;
}

}  // namespace epwsym
