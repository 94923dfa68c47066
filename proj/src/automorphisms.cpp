// Automorphism computation for number fields Q(alpha): find all roots of the
// minimal polynomial inside the field itself.
//
// The minimal polynomial is first rescaled to a monic integer model M (with
// generator t = D*alpha). For a prime p with M squarefree mod p, the roots of
// M in the p-adic algebra Z_p[x]/(M) biject with the roots of M mod p, and
// every root of M in the field has p-integral power-basis coordinates, so it
// appears among the Hensel lifts and survives rational reconstruction. Each
// reconstructed candidate is verified exactly in the field before being
// reported, so the output never contains a spurious automorphism.
#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "qpoly_detail.hpp"
#include "tenrank/number_field.hpp"

namespace tenrank {

namespace {

using std::uint64_t;
using Poly64 = std::vector<uint64_t>; // ascending coefficients mod p

int deg64(const Poly64& a) {
    for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
        if (a[static_cast<std::size_t>(i)] != 0) return i;
    return -1;
}

void trim64(Poly64& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

uint64_t fp_pow(uint64_t b, uint64_t e, uint64_t p) {
    uint64_t r = 1 % p;
    b %= p;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

uint64_t fp_inv(uint64_t x, uint64_t p) { return fp_pow(x, p - 2, p); }

Poly64 fp_mul(const Poly64& a, const Poly64& b, uint64_t p) {
    if (deg64(a) < 0 || deg64(b) < 0) return {};
    Poly64 c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    }
    trim64(c);
    return c;
}

// remainder modulo a monic divisor
Poly64 fp_rem(Poly64 a, const Poly64& m, uint64_t p) {
    int dm = deg64(m);
    for (int i = deg64(a); i >= dm; --i) {
        uint64_t c = a[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        a[static_cast<std::size_t>(i)] = 0;
        for (int k = 0; k < dm; ++k) {
            auto& slot = a[static_cast<std::size_t>(i - dm + k)];
            slot = (slot + (p - m[static_cast<std::size_t>(k)] % p) * c) % p;
        }
    }
    trim64(a);
    return a;
}

Poly64 fp_gcd(Poly64 a, Poly64 b, uint64_t p) {
    trim64(a);
    trim64(b);
    while (deg64(b) >= 0) {
        uint64_t lead = b.back();
        Poly64 bm = b;
        if (lead != 1) {
            uint64_t inv = fp_inv(lead, p);
            for (auto& c : bm) c = c * inv % p;
        }
        Poly64 r = fp_rem(std::move(a), bm, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (deg64(a) >= 0 && a.back() != 1) {
        uint64_t inv = fp_inv(a.back(), p);
        for (auto& c : a) c = c * inv % p;
    }
    return a;
}

Poly64 fp_derivative(const Poly64& a, uint64_t p) {
    Poly64 d;
    for (std::size_t i = 1; i < a.size(); ++i) d.push_back(a[i] * (i % p) % p);
    trim64(d);
    return d;
}

// base^e mod (m, p), m monic
Poly64 fp_powmod(Poly64 base, const Int& e, const Poly64& m, uint64_t p) {
    Poly64 r{1};
    base = fp_rem(std::move(base), m, p);
    std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        r = fp_rem(fp_mul(r, r, p), m, p);
        if (mpz_tstbit(e.get_mpz_t(), static_cast<mp_bitcnt_t>(i)))
            r = fp_rem(fp_mul(r, base, p), m, p);
    }
    return r;
}

// returns u with u * a == 1 mod (m, p), or nullopt when a is not invertible
std::optional<Poly64> fp_invert_mod(const Poly64& a, const Poly64& m, uint64_t p) {
    Poly64 r0 = m, r1 = fp_rem(a, m, p);
    Poly64 u0, u1{1};
    while (deg64(r1) >= 0) {
        // divide r0 by r1
        Poly64 q;
        Poly64 rem = r0;
        int d1 = deg64(r1);
        uint64_t inv_lead = fp_inv(r1[static_cast<std::size_t>(d1)], p);
        int dr = deg64(rem);
        if (dr >= d1) q.assign(static_cast<std::size_t>(dr - d1 + 1), 0);
        for (int i = dr; i >= d1; --i) {
            uint64_t c = rem[static_cast<std::size_t>(i)];
            if (c == 0) continue;
            uint64_t f = c * inv_lead % p;
            q[static_cast<std::size_t>(i - d1)] = f;
            for (int k = 0; k <= d1; ++k) {
                auto& slot = rem[static_cast<std::size_t>(i - d1 + k)];
                slot = (slot + (p - r1[static_cast<std::size_t>(k)] * f % p)) % p;
            }
        }
        trim64(rem);
        Poly64 qu = fp_mul(q, u1, p);
        Poly64 u2 = u0;
        if (u2.size() < qu.size()) u2.resize(qu.size(), 0);
        for (std::size_t i = 0; i < qu.size(); ++i) u2[i] = (u2[i] + p - qu[i]) % p;
        trim64(u2);
        r0 = std::move(r1);
        r1 = std::move(rem);
        u0 = std::move(u1);
        u1 = std::move(u2);
    }
    if (deg64(r0) != 0) return std::nullopt;
    uint64_t inv = fp_inv(r0[0], p);
    for (auto& c : u0) c = c * inv % p;
    trim64(u0);
    return u0;
}

std::vector<int> primes_up_to(int bound) {
    std::vector<bool> comp(static_cast<std::size_t>(bound) + 1, false);
    std::vector<int> out;
    for (int i = 2; i <= bound; ++i) {
        if (!comp[static_cast<std::size_t>(i)]) {
            out.push_back(i);
            for (long long j = 1LL * i * i; j <= bound; j += i) comp[static_cast<std::size_t>(j)] = true;
        }
    }
    return out;
}

// --- arithmetic in (Z/N)[x]/(M), M monic integer of degree n ---

struct PadicAlgebra {
    const std::vector<Int>& M; // ascending, monic, degree n
    int n;
    Int N; // current modulus p^(2^j)

    std::vector<Int> reduce(std::vector<Int> a) const {
        for (int i = static_cast<int>(a.size()) - 1; i >= n; --i) {
            Int c = a[static_cast<std::size_t>(i)] % N;
            a[static_cast<std::size_t>(i)] = 0;
            if (c != 0)
                for (int k = 0; k < n; ++k) {
                    auto& slot = a[static_cast<std::size_t>(i - n + k)];
                    slot = (slot - c * M[static_cast<std::size_t>(k)]) % N;
                }
        }
        a.resize(static_cast<std::size_t>(n));
        for (auto& c : a) {
            c %= N;
            if (c < 0) c += N;
        }
        return a;
    }

    std::vector<Int> mul(const std::vector<Int>& a, const std::vector<Int>& b) const {
        std::vector<Int> prod(a.size() + b.size() - 1, Int(0));
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0) continue;
            for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] += a[i] * b[j];
        }
        return reduce(std::move(prod));
    }

    std::vector<Int> sub(std::vector<Int> a, const std::vector<Int>& b) const {
        for (std::size_t i = 0; i < a.size(); ++i) {
            a[i] = (a[i] - b[i]) % N;
            if (a[i] < 0) a[i] += N;
        }
        return a;
    }

    // evaluate an integer polynomial (ascending coeffs) at the algebra element z
    std::vector<Int> eval(const std::vector<Int>& poly, const std::vector<Int>& z) const {
        std::vector<Int> acc(static_cast<std::size_t>(n), Int(0));
        acc[0] = poly.back() % N;
        if (acc[0] < 0) acc[0] += N;
        for (int k = static_cast<int>(poly.size()) - 2; k >= 0; --k) {
            acc = mul(acc, z);
            acc[0] = (acc[0] + poly[static_cast<std::size_t>(k)]) % N;
            if (acc[0] < 0) acc[0] += N;
        }
        return acc;
    }
};

std::optional<Rational> rational_reconstruct(const Int& c, const Int& N) {
    Int bound;
    mpz_sqrt(bound.get_mpz_t(), Int(N / 2).get_mpz_t());
    Int r0 = N, r1 = c % N;
    if (r1 < 0) r1 += N;
    Int s0 = 0, s1 = 1;
    while (r1 > bound) {
        Int q = r0 / r1;
        Int r2 = r0 - q * r1;
        Int s2 = s0 - q * s1;
        r0 = r1;
        r1 = r2;
        s0 = s1;
        s1 = s2;
    }
    if (s1 == 0) return std::nullopt;
    Int a = r1, b = s1;
    if (b < 0) {
        a = -a;
        b = -b;
    }
    if (b > bound) return std::nullopt;
    Rational q = make_rational(a, b);
    // confirm a == c*b (mod N) after reduction to lowest terms
    Int check = (q.get_num() - c * q.get_den()) % N;
    if (check != 0) return std::nullopt;
    return q;
}

struct ModularRoots {
    uint64_t p = 0;
    std::vector<Poly64> roots;
};

// Smallest usable prime and the roots of M in F_p[x]/(M mod p). Enumerates the
// whole algebra when p^n is small; falls back to Frobenius powers when M is
// irreducible mod p.
ModularRoots modular_roots(const std::vector<Int>& M, int n) {
    static const std::vector<int> primes = primes_up_to(10'000);
    constexpr double kEnumCap = 2'097'152.0; // 2^21 elements

    for (int pi : primes) {
        auto p = static_cast<uint64_t>(pi);
        Poly64 mbar(M.size());
        for (std::size_t i = 0; i < M.size(); ++i) {
            Int c = M[i] % static_cast<long>(p);
            if (c < 0) c += static_cast<long>(p);
            mbar[i] = c.get_ui();
        }
        if (deg64(fp_gcd(mbar, fp_derivative(mbar, p), p)) != 0) continue; // not squarefree mod p

        double total = 1;
        for (int k = 0; k < n; ++k) total *= static_cast<double>(p);
        if (total <= kEnumCap) {
            ModularRoots out;
            out.p = p;
            // Horner evaluation of M over every element of the algebra
            Poly64 elem(static_cast<std::size_t>(n), 0);
            std::vector<Poly64> mcoef; // constants as algebra elements not needed; reuse mbar coeffs
            auto count = static_cast<std::uint64_t>(total);
            for (std::uint64_t it = 0;; ++it) {
                Poly64 acc{mbar[static_cast<std::size_t>(n)]};
                for (int k = n - 1; k >= 0; --k) {
                    acc = fp_rem(fp_mul(acc, elem, p), mbar, p);
                    if (mbar[static_cast<std::size_t>(k)] != 0) {
                        if (acc.empty()) acc.resize(1, 0);
                        acc[0] = (acc[0] + mbar[static_cast<std::size_t>(k)]) % p;
                    }
                    trim64(acc);
                }
                if (deg64(acc) < 0) {
                    Poly64 r = elem;
                    trim64(r);
                    out.roots.push_back(std::move(r));
                }
                if (it + 1 == count) break;
                for (std::size_t pos = 0;; ++pos) {
                    if (++elem[pos] < p) break;
                    elem[pos] = 0;
                }
            }
            return out;
        }

        // irreducibility over F_p: x^(p^n) == x mod M and gcd(x^(p^(n/q)) - x, M) = 1
        Int pn;
        mpz_ui_pow_ui(pn.get_mpz_t(), p, static_cast<unsigned long>(n));
        Poly64 x{0, 1};
        Poly64 xpn = fp_powmod(x, pn, mbar, p);
        if (xpn != x) continue;
        bool irreducible = true;
        for (int q : {2, 3, 5, 7}) {
            if (q > n || n % q != 0) continue;
            Int pk;
            mpz_ui_pow_ui(pk.get_mpz_t(), p, static_cast<unsigned long>(n / q));
            Poly64 xp = fp_powmod(x, pk, mbar, p);
            // gcd(xp - x, mbar)
            Poly64 diff = xp;
            if (diff.size() < 2) diff.resize(2, 0);
            diff[1] = (diff[1] + p - 1) % p;
            trim64(diff);
            if (deg64(fp_gcd(diff, mbar, p)) != 0) {
                irreducible = false;
                break;
            }
        }
        if (!irreducible) continue;
        ModularRoots out;
        out.p = p;
        Int e = 1;
        for (int k = 0; k < n; ++k) {
            out.roots.push_back(fp_powmod(x, e, mbar, p));
            e *= static_cast<long>(p);
        }
        return out;
    }
    throw Error(ErrorCode::Internal,
                "automorphism search found no usable prime below 10000 (pathological minimal polynomial)");
}

// Evaluates the field's own minimal polynomial at the candidate image.
bool is_root_in_field(const FieldPtr& field, const AlgebraicNumber& beta) {
    const auto& m = field->minpoly();
    AlgebraicNumber acc = AlgebraicNumber::from_rational(field, m.back());
    for (int k = static_cast<int>(m.size()) - 2; k >= 0; --k) {
        acc *= beta;
        acc += AlgebraicNumber::from_rational(field, m[static_cast<std::size_t>(k)]);
    }
    return acc.is_zero();
}

} // namespace

std::vector<FieldAutomorphism> automorphisms(const FieldPtr& field) {
    const int n = field->degree();
    std::vector<FieldAutomorphism> out;
    if (n == 1) {
        out.push_back({field, AlgebraicNumber::generator(field)});
        return out;
    }

    detail::IntegralModel im = detail::integralize_monic(field->minpoly());
    const std::vector<Int>& M = im.coeffs;
    std::vector<Int> Md; // derivative of M
    for (std::size_t i = 1; i < M.size(); ++i) Md.push_back(M[i] * static_cast<long>(i));

    ModularRoots mr = modular_roots(M, n);
    const auto p = static_cast<long>(mr.p);

    for (const Poly64& root0 : mr.roots) {
        PadicAlgebra alg{M, n, Int(p)};
        std::vector<Int> z(static_cast<std::size_t>(n), Int(0));
        for (std::size_t i = 0; i < root0.size(); ++i) z[i] = static_cast<long>(root0[i]);

        // inverse of M'(z) mod p, in F_p[x]/(mbar)
        Poly64 mbar(M.size());
        for (std::size_t i = 0; i < M.size(); ++i) {
            Int c = M[i] % p;
            if (c < 0) c += p;
            mbar[i] = c.get_ui();
        }
        std::vector<Int> mdz = alg.eval(Md, z);
        Poly64 mdz_p(mdz.size());
        for (std::size_t i = 0; i < mdz.size(); ++i) mdz_p[i] = mdz[i].get_ui() % mr.p;
        trim64(mdz_p);
        auto w0 = fp_invert_mod(mdz_p, mbar, mr.p);
        if (!w0) continue; // cannot happen for squarefree reduction; stay safe
        std::vector<Int> w(static_cast<std::size_t>(n), Int(0));
        for (std::size_t i = 0; i < w0->size(); ++i) w[i] = static_cast<long>((*w0)[i]);

        bool found = false;
        while (!found && mpz_sizeinbase(alg.N.get_mpz_t(), 2) <= 4096) {
            // double the precision
            alg.N = alg.N * alg.N;
            std::vector<Int> mz = alg.eval(M, z);
            z = alg.sub(std::move(z), alg.mul(mz, w));
            std::vector<Int> mdz2 = alg.eval(Md, z);
            std::vector<Int> t = alg.mul(mdz2, w);
            std::vector<Int> two_minus(static_cast<std::size_t>(n), Int(0));
            two_minus[0] = 2;
            t = alg.sub(std::move(two_minus), t);
            w = alg.mul(w, t);

            if (mpz_sizeinbase(alg.N.get_mpz_t(), 2) < 64) continue;

            // try to reconstruct the candidate image of t = D*alpha
            std::vector<Rational> q(static_cast<std::size_t>(n));
            bool ok = true;
            for (int j = 0; j < n && ok; ++j) {
                auto r = rational_reconstruct(z[static_cast<std::size_t>(j)], alg.N);
                if (!r)
                    ok = false;
                else
                    q[static_cast<std::size_t>(j)] = *r;
            }
            if (!ok) continue;
            // back to the alpha power basis: coeff_j = q_j * D^(j-1)
            std::vector<Rational> c(static_cast<std::size_t>(n));
            Rational Dpow = Rational(1) / Rational(im.scale); // D^(j-1), starting at j=0
            for (int j = 0; j < n; ++j) {
                c[static_cast<std::size_t>(j)] = q[static_cast<std::size_t>(j)] * Dpow;
                Dpow *= Rational(im.scale);
            }
            AlgebraicNumber beta(field, std::move(c));
            if (is_root_in_field(field, beta)) {
                out.push_back({field, std::move(beta)});
                found = true;
            }
        }
        // candidates that never reconstruct are roots of M outside the field
    }

    // identity first, then sort by image coefficients for a stable listing
    auto coeff_less = [](const FieldAutomorphism& x, const FieldAutomorphism& y) {
        const auto& cx = x.image_of_generator.coeffs();
        const auto& cy = y.image_of_generator.coeffs();
        for (std::size_t i = 0; i < cx.size(); ++i) {
            if (cx[i] < cy[i]) return true;
            if (cy[i] < cx[i]) return false;
        }
        return false;
    };
    std::sort(out.begin(), out.end(), coeff_less);
    auto id = std::find_if(out.begin(), out.end(), [](const FieldAutomorphism& s) { return s.is_identity(); });
    if (id == out.end()) throw Error(ErrorCode::Internal, "automorphism search lost the identity");
    std::rotate(out.begin(), id, id + 1);
    return out;
}

} // namespace tenrank
