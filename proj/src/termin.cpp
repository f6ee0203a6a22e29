#include "epwsym/termin.hpp"

#include <numeric>
#include <set>

namespace epwsym {

Rational::Rational(long long n, long long d) : num(n), den(d) {
    if (den == 0) throw Error("DivisionByZero", "rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}
Rational Rational::operator+(const Rational& o) const {
    return Rational(num * o.den + o.num * den, den * o.den);
}
Rational Rational::operator-(const Rational& o) const {
    return Rational(num * o.den - o.num * den, den * o.den);
}
Rational Rational::operator*(const Rational& o) const {
    return Rational(num * o.num, den * o.den);
}

Cyc7 Cyc7::one() {
    Cyc7 r;
    r.c[0] = Rational(1);
    return r;
}
Cyc7 Cyc7::zeta_pow(int k) {
    k = ((k % 7) + 7) % 7;
    Cyc7 r;
    if (k <= 5) {
        r.c[k] = Rational(1);
    } else {
        // zeta^6 = -(1 + zeta + ... + zeta^5)
        for (int i = 0; i < 6; ++i) r.c[i] = Rational(-1);
    }
    return r;
}
Cyc7 Cyc7::operator+(const Cyc7& o) const {
    Cyc7 r;
    for (int i = 0; i < 6; ++i) r.c[i] = c[i] + o.c[i];
    return r;
}
Cyc7 Cyc7::operator-(const Cyc7& o) const {
    Cyc7 r;
    for (int i = 0; i < 6; ++i) r.c[i] = c[i] - o.c[i];
    return r;
}
Cyc7 Cyc7::scale(const Rational& s) const {
    Cyc7 r;
    for (int i = 0; i < 6; ++i) r.c[i] = c[i] * s;
    return r;
}

std::vector<LocalRep> local_rep_catalog(const FieldCtx& ctx) {
    const Fp& F = ctx.f;
    uint64_t i4 = ctx.root_of_order(4);
    uint64_t w3 = ctx.root_of_order(3);
    uint64_t w5 = ctx.root_of_order(5);
    auto diag = [&](uint64_t a, uint64_t b, uint64_t c, uint64_t d) {
        Mat m(4, 4);
        m.at(0, 0) = a;
        m.at(1, 1) = b;
        m.at(2, 2) = c;
        m.at(3, 3) = d;
        return m;
    };
    Mat swap(4, 4);  // (x,y,z,t) -> (z,t,x,y)
    swap.at(0, 2) = 1;
    swap.at(1, 3) = 1;
    swap.at(2, 0) = 1;
    swap.at(3, 1) = 1;
    std::vector<LocalRep> out;
    out.push_back({"Z4", {diag(i4, F.neg(1), F.inv(i4), F.neg(1))}});
    auto dn = [&](uint64_t z) {
        return std::vector<Mat>{diag(z, F.inv(z), F.inv(z), z), swap};
    };
    out.push_back({"S3", dn(w3)});
    out.push_back({"D8", dn(i4)});
    out.push_back({"D10", dn(w5)});
    Mat iswap = mat_scale(F, swap, i4);
    out.push_back({"Z2xQ8", {iswap, diag(i4, i4, F.neg(i4), F.neg(i4)),
                             diag(1, F.neg(1), 1, F.neg(1))}});
    return out;
}

int age(const FieldCtx& ctx, const Mat& g, Prng& rng) {
    const Fp& F = ctx.f;
    uint64_t r = mat_order(F, g, 10000);
    if (r == 1) return 0;
    if (ctx.root_order % r != 0)
        throw Error("NotFiniteOrder", "element order does not divide the root order");
    uint64_t zr = ctx.root_of_order(r);
    auto es = eigenspaces(F, g, rng);
    long total = 0;
    int count = 0;
    for (auto& e : es) {
        if (e.degree != 1) throw Error("NotInteger", "irrational eigenvalue in a local rep");
        // discrete log in <zeta_r>
        uint64_t v = 1;
        int a = -1;
        for (uint64_t k = 0; k < r; ++k) {
            if (v == e.eigenvalue_fp) {
                a = (int)k;
                break;
            }
            v = F.mul(v, zr);
        }
        if (a < 0) throw Error("NotInteger", "eigenvalue is not an r-th root of unity");
        total += (long)a * e.geometric_dim;
        count += e.geometric_dim;
    }
    if (count != g.rows) throw Error("NotInteger", "matrix is not diagonalizable");
    if (total % (long)r != 0) throw Error("NotInteger", "age is not an integer (non-SL input)");
    return (int)(total / (long)r);
}

JuniorReport junior_classes(const FieldCtx& ctx, const LocalRep& rep, Prng& rng) {
    const Fp& F = ctx.f;
    JuniorReport jr;
    jr.group = close_group(F, rep.gens, false, 4096);
    ConjClassTable T = conjugacy_classes(jr.group);
    jr.class_count = (long)T.classes.size();
    std::vector<int> juniors;
    for (auto& c : T.classes) {
        int a = age(ctx, jr.group.elems[c.rep], rng);
        if (a == 1) {
            ++jr.junior_count;
            jr.junior_reps.push_back(c.rep);
            for (int m : c.members) juniors.push_back(m);
        }
    }
    jr.junior_span = juniors.empty() ? Subgroup{0} : subgroup_closure(jr.group, juniors);
    jr.juniors_generate = jr.junior_span.size() == jr.group.order();
    return jr;
}

namespace {

// invariant factors of an abelian quotient group given coset reps
std::vector<uint64_t> abelian_invariant_factors(const MatGroup& G, const Subgroup& H,
                                                const Subgroup& N) {
    std::set<int> ns(N.begin(), N.end());
    std::map<int, int> coset_of;
    std::vector<int> reps;
    for (int h : H) {
        if (coset_of.count(h)) continue;
        int cid = (int)reps.size();
        reps.push_back(h);
        for (int n : N) coset_of[G.mul(h, n)] = cid;
    }
    size_t q = reps.size();
    if (q == 1) return {};
    // quotient multiplication
    auto qmul = [&](int a, int b) { return coset_of[G.mul(reps[a], reps[b])]; };
    // p-power structure by counting image sizes of x -> x^(p^i)
    std::vector<uint64_t> factors;
    uint64_t order = q;
    for (uint64_t p : prime_factors(order)) {
        // sizes of the image of the p^i power map give the partition
        std::vector<long> img_sizes;
        uint64_t e = 1;
        while (true) {
            e *= p;
            std::set<int> img;
            for (size_t x = 0; x < q; ++x) {
                int cur = 0;
                // x^e within the quotient, but only the p-part matters; use
                // repeated multiplication (q is tiny)
                for (uint64_t t = 0; t < e; ++t) cur = qmul(cur, (int)x);
                img.insert(cur);
            }
            img_sizes.push_back((long)img.size());
            if ((long)img.size() ==
                (long)[&] {
                    long m = (long)q;
                    while (m % (long)p == 0) m /= (long)p;
                    return m;
                }())
                break;
            if (e > order) break;
        }
        // multiplicity of Z/p^i factors from consecutive image ratios
        long prev = (long)q;
        std::vector<long> ranks;  // rank of p^i-torsion quotients
        for (long s : img_sizes) {
            long ratio = prev / s;  // p^(number of factors with exponent >= i)
            long cnt = 0;
            while (ratio > 1) {
                ratio /= (long)p;
                ++cnt;
            }
            ranks.push_back(cnt);
            prev = s;
        }
        for (size_t i = 0; i < ranks.size(); ++i) {
            long mult = ranks[i] - (i + 1 < ranks.size() ? ranks[i + 1] : 0);
            uint64_t val = 1;
            for (size_t t = 0; t <= i; ++t) val *= p;
            for (long t = 0; t < mult; ++t) factors.push_back(val);
        }
    }
    std::sort(factors.begin(), factors.end());
    return factors;
}

}  // namespace

ClassGroup class_group(const FieldCtx& ctx, const LocalRep& rep, Prng& rng) {
    JuniorReport jr = junior_classes(ctx, rep, rng);
    ClassGroup cg;
    cg.rank = (int)jr.junior_count;
    cg.torsion = abelian_invariant_factors(jr.group, whole_subgroup(jr.group), jr.junior_span);
    return cg;
}

long b2_quotient(long rk_invariant, long codim2_classes) {
    return rk_invariant + codim2_classes;
}

LefschetzTable paper_lefschetz_table() {
    LefschetzTable t;
    t.a_rows = {{{2, 5, 7, 7, 5, 2}, {7, 2, 5, 5, 2, 7}, {5, 7, 2, 2, 7, 5}}};
    t.b_rows = {{{2, 3, 2, 2, 3, 2}, {3, 2, 2, 2, 2, 3}, {2, 2, 3, 3, 2, 2}}};
    return t;
}

std::vector<LefschetzSolution> lefschetz7_solve(const LefschetzTable& table, int target,
                                                int total_points) {
    // the summands: a_i or b_i = -(1/7) sum_j c_j zeta^j, exact in Q(zeta_7)
    auto summand = [&](const std::array<int, 6>& row) {
        Cyc7 s = Cyc7::zero();
        for (int j = 1; j <= 6; ++j)
            s = s + Cyc7::zeta_pow(j).scale(Rational(-row[j - 1], 7));
        return s;
    };
    std::array<Cyc7, 3> a, b;
    for (int i = 0; i < 3; ++i) {
        a[i] = summand(table.a_rows[i]);
        b[i] = summand(table.b_rows[i]);
        // reality check: invariant under zeta -> zeta^-1
        auto conj = [&](const std::array<int, 6>& row) {
            std::array<int, 6> r{};
            for (int j = 1; j <= 6; ++j) r[(7 - j) - 1] = row[j - 1];
            return r;
        };
        if (!(summand(conj(table.a_rows[i])) == a[i]) ||
            !(summand(conj(table.b_rows[i])) == b[i]))
            throw Error("NotReal", "Lefschetz summand fails the Galois reality check");
    }
    Cyc7 target_c = Cyc7::one().scale(Rational(target));
    std::vector<LefschetzSolution> out;
    for (int n1 = 0; n1 <= total_points; ++n1)
        for (int n2 = 0; n1 + n2 <= total_points; ++n2)
            for (int n3 = 0; n1 + n2 + n3 <= total_points; ++n3)
                for (int m1 = 0; n1 + n2 + n3 + m1 <= total_points; ++m1)
                    for (int m2 = 0; n1 + n2 + n3 + m1 + m2 <= total_points; ++m2) {
                        int m3 = total_points - n1 - n2 - n3 - m1 - m2;
                        Cyc7 s = a[0].scale(Rational(n1)) + a[1].scale(Rational(n2)) +
                                 a[2].scale(Rational(n3)) + b[0].scale(Rational(m1)) +
                                 b[1].scale(Rational(m2)) + b[2].scale(Rational(m3));
                        if (s == target_c)
                            out.push_back({{n1, n2, n3}, {m1, m2, m3}});
                    }
    return out;
}

std::array<int, 4> normalize_weights(int n, std::array<int, 4> w) {
    auto reduce = [&](std::array<int, 4> v) {
        for (auto& x : v) x = ((x % n) + n) % n;
        std::sort(v.begin(), v.end());
        return v;
    };
    std::array<int, 4> best = {n, n, n, n};
    bool first = true;
    for (int t = 1; t < n; ++t) {
        if (std::gcd(t, n) != 1) continue;
        std::array<int, 4> v;
        for (int i = 0; i < 4; ++i) v[i] = w[i] * t;
        v = reduce(v);
        if (first || v < best) {
            best = v;
            first = false;
        }
    }
    return best;
}

std::string SingularityType::display() const {
    if (kind == "named") return name;
    std::string s = "1/" + std::to_string(n) + "(";
    for (int i = 0; i < 4; ++i) s += std::to_string(weights[i]) + (i < 3 ? "," : ")");
    return s;
}

TerminalisationReport terminalize(const std::map<std::string, long>& surface_counts,
                                  const std::map<std::string, long>& isolated_counts) {
    TerminalisationReport rep;
    auto add = [&](SingularityType st) {
        for (auto& s : rep.singularities)
            if (!(s < st) && !(st < s)) {
                s.count += st.count;
                return;
            }
        rep.singularities.push_back(st);
    };
    for (auto& [name, count] : surface_counts) {
        if (count == 0) continue;
        if (name == "Z4") {
            // blow-up leaves two half-points per point
            SingularityType st{"cyclic", 2, normalize_weights(2, {1, 1, 1, 1}), "", 2 * count,
                               "Z4 stratum: blow-up leaves two 1/2(1,1,1,1) points each"};
            add(st);
            rep.half_points += 2 * count;
        } else if (name == "Z2xQ8") {
            SingularityType st{"cyclic", 2, normalize_weights(2, {1, 1, 1, 1}), "", 6 * count,
                               "Z2xQ8 stratum: Cox-ring terminalisation has six 1/2(1,1,1,1)"};
            add(st);
            rep.half_points += 6 * count;
        } else if (name == "S3") {
            rep.resolved_notes.push_back("S3 points admit a unique symplectic resolution (" +
                                         std::to_string(count) + " points)");
        } else if (name == "D8") {
            rep.resolved_notes.push_back(
                "D8 points admit two symplectic resolutions differing by a Mukai flop (" +
                std::to_string(count) + " points); either choice leaves no singularity");
        } else if (name == "D10") {
            SingularityType st{"named", 0, {}, "Z(5)", count,
                               "D10 stratum: one non-quotient Z(5) point each after the blow-up"};
            add(st);
        } else {
            throw Error("RuleMiss", "no terminalisation rule for stratum " + name);
        }
    }
    for (auto& [name, count] : isolated_counts) {
        if (count == 0) continue;
        if (name == "Z3") {
            add({"cyclic", 3, normalize_weights(3, {1, -1, 1, -1}), "", count,
                 "isolated order-3 points, weights 1/3(1,-1,1,-1)"});
        } else if (name == "Z5") {
            add({"cyclic", 5, normalize_weights(5, {1, -1, 2, -2}), "", count,
                 "isolated order-5 points, weights 1/5(1,-1,2,-2)"});
        } else if (name == "Z7") {
            add({"cyclic", 7, normalize_weights(7, {1, -1, 2, -2}), "", count,
                 "isolated order-7 points, weights from the Lefschetz solver"});
        } else {
            throw Error("RuleMiss", "no terminalisation rule for isolated stratum " + name);
        }
    }
    std::sort(rep.singularities.begin(), rep.singularities.end());
    return rep;
}

}  // namespace epwsym
