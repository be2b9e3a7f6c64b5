#include "quadpair/modular.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "quadpair/errors.hpp"

namespace quadpair {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

namespace {

std::uint64_t pollard_rho(std::uint64_t n) {
    if (n % 2 == 0) return 2;
    for (std::uint64_t c = 1;; ++c) {
        std::uint64_t x = 2, y = 2, d = 1;
        auto f = [&](std::uint64_t v) { return (mulmod(v, v, n) + c) % n; };
        while (d == 1) {
            x = f(x);
            y = f(f(y));
            d = std::gcd(x > y ? x - y : y - x, n);
        }
        if (d != n) return d;
    }
}

void factor_into(std::uint64_t n, std::vector<std::uint64_t>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    for (std::uint64_t p = 2; p < 1000; ++p) {
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0) n /= p;
            factor_into(n, out);
            return;
        }
    }
    std::uint64_t d = pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

void require_odd_prime(std::int64_t p) {
    if (p < 3 || p % 2 == 0 || !is_prime(static_cast<std::uint64_t>(p))) {
        throw InvalidModulus("modulus " + std::to_string(p) + " is not an odd prime");
    }
}

}  // namespace

std::vector<std::uint64_t> factorize(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    if (n <= 1) return out;
    factor_into(n, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

std::int64_t mod_reduce(i128 n, std::int64_t m) {
    i128 r = n % m;
    if (r < 0) r += m;
    return static_cast<std::int64_t>(r);
}

SquarefreeModulus::SquarefreeModulus(std::int64_t q) : q_(q) {
    if (q < 1) throw InvalidModulus("modulus must be positive");
    for (auto p : factorize(static_cast<std::uint64_t>(q))) {
        auto pp = static_cast<std::int64_t>(p);
        if ((q / pp) % pp == 0) throw InvalidModulus("modulus " + std::to_string(q) + " is not squarefree");
        primes_.push_back(pp);
    }
}

int legendre(i128 n, std::int64_t p) {
    require_odd_prime(p);
    std::int64_t r = mod_reduce(n, p);
    if (r == 0) return 0;
    return powmod(static_cast<std::uint64_t>(r), static_cast<std::uint64_t>((p - 1) / 2), static_cast<std::uint64_t>(p)) == 1 ? 1
                                                                                                                         : -1;
}

int jacobi(i128 n, const SquarefreeModulus& q) {
    if (!q.is_odd()) throw InvalidModulus("Jacobi symbol needs an odd modulus");
    int s = 1;
    for (auto p : q.primes()) {
        s *= legendre(n, p);
        if (s == 0) return 0;
    }
    return s;
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
    if (m < 1) throw DomainError("mod_inverse needs a positive modulus");
    if (m == 1) return 0;
    std::int64_t r0 = mod_reduce(a, m), r1 = m;
    std::int64_t s0 = 1, s1 = 0;
    while (r1 != 0) {
        std::int64_t t = r0 / r1;
        std::tie(r0, r1) = std::make_pair(r1, r0 - t * r1);
        std::tie(s0, s1) = std::make_pair(s1, s0 - t * s1);
    }
    if (r0 != 1) throw DomainError("mod_inverse: " + std::to_string(a) + " is not invertible mod " + std::to_string(m));
    return mod_reduce(s0, m);
}

std::int64_t crt_pair(std::int64_t r1, std::int64_t m1, std::int64_t r2, std::int64_t m2) {
    if (m1 < 1 || m2 < 1 || std::gcd(m1, m2) != 1) throw DomainError("crt_pair needs coprime positive moduli");
    std::int64_t inv = mod_inverse(m1 % m2, m2);
    i128 diff = mod_reduce(static_cast<i128>(r2) - r1, m2);
    i128 t = diff * inv % m2;
    return mod_reduce(static_cast<i128>(mod_reduce(r1, m1)) + t * m1, m1 * m2);
}

int mobius(std::int64_t n) {
    if (n < 1) throw DomainError("mobius needs n >= 1");
    int mu = 1;
    for (auto p : factorize(static_cast<std::uint64_t>(n))) {
        auto pp = static_cast<std::int64_t>(p);
        n /= pp;
        if (n % pp == 0) return 0;
        mu = -mu;
    }
    return mu;
}

std::int64_t euler_phi(std::int64_t n) {
    std::int64_t r = n;
    for (auto p : factorize(static_cast<std::uint64_t>(n))) r = r / static_cast<std::int64_t>(p) * (static_cast<std::int64_t>(p) - 1);
    return r;
}

std::int64_t ramanujan_sum(std::int64_t q, i128 n) {
    if (q < 1) throw DomainError("ramanujan_sum needs q >= 1");
    std::int64_t g = std::gcd(q, mod_reduce(n, q));
    std::int64_t s = 0;
    for (std::int64_t d = 1; d * d <= g; ++d) {
        if (g % d) continue;
        s += d * mobius(q / d);
        std::int64_t e = g / d;
        if (e != d) s += e * mobius(q / e);
    }
    return s;
}

ComplexVal ramanujan_bruteforce(std::int64_t q, i128 n) {
    if (q < 1 || q > 100000) throw TooLarge("ramanujan_bruteforce limited to 1 <= q <= 1e5");
    ResidueHistogram h(q);
    std::int64_t nr = mod_reduce(n, q);
    for (std::int64_t a = 0; a < q; ++a) {
        if (std::gcd(a, q) == 1) h.add(static_cast<std::int64_t>(static_cast<i128>(a) * nr % q));
    }
    return h.total();
}

ComplexVal e_q(i128 x, std::int64_t q) {
    std::int64_t r = mod_reduce(x, q);
    double t = static_cast<double>(r) / static_cast<double>(q);
    double ang = 2.0 * std::numbers::pi * t;
    return {std::cos(ang), std::sin(ang)};
}

ComplexVal e_real(double t) {
    t -= std::floor(t);
    double ang = 2.0 * std::numbers::pi * t;
    return {std::cos(ang), std::sin(ang)};
}

ResidueHistogram::ResidueHistogram(std::int64_t q) : q_(q), counts_(static_cast<std::size_t>(q), 0) {}

void ResidueHistogram::merge(const ResidueHistogram& other) {
    for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
}

ComplexVal ResidueHistogram::total() const {
    ComplexVal s{0.0, 0.0};
    for (std::int64_t r = 0; r < q_; ++r) {
        auto c = counts_[static_cast<std::size_t>(r)];
        if (c != 0) s += static_cast<double>(c) * e_q(r, q_);
    }
    return s;
}

std::int64_t ipow(std::int64_t base, int exp) {
    std::int64_t r = 1;
    for (int i = 0; i < exp; ++i) {
        if (__builtin_mul_overflow(r, base, &r)) throw TooLarge("integer power overflows 64 bits");
    }
    return r;
}

ComplexVal gauss_sum(std::int64_t p) {
    require_odd_prime(p);
    if (p > 100000) throw TooLarge("gauss_sum limited to p <= 1e5");
    ResidueHistogram h(p);
    for (std::int64_t m = 1; m < p; ++m) h.add(m, legendre(m, p));
    return h.total();
}

namespace {

void require_gauss_hypothesis(i128 m_gamma, std::int64_t p, int r) {
    require_odd_prime(p);
    if (r < 1) throw DomainError("exponent r must be positive");
    if (mod_reduce(m_gamma, p) == 0) throw PreconditionError("p divides 2*m*gamma");
}

ComplexVal epsilon(std::int64_t p) { return p % 4 == 1 ? ComplexVal{1.0, 0.0} : ComplexVal{0.0, 1.0}; }

}  // namespace

ComplexVal quad_gauss_sum_closed(std::int64_t m, std::int64_t gamma, std::int64_t p, int r) {
    require_gauss_hypothesis(static_cast<i128>(m) * gamma, p, r);
    double mag = std::pow(static_cast<double>(p), r / 2.0);
    if (r % 2 == 0) return {mag, 0.0};
    return mag * static_cast<double>(legendre(static_cast<i128>(m) * gamma, p)) * epsilon(p);
}

ComplexVal quad_gauss_sum_brute(std::int64_t m, std::int64_t gamma, std::int64_t p, int r) {
    require_gauss_hypothesis(static_cast<i128>(m) * gamma, p, r);
    std::int64_t n = ipow(p, r);
    if (n > 10000000) throw TooLarge("quad_gauss_sum_brute limited to p^r <= 1e7");
    std::int64_t mg = mod_reduce(static_cast<i128>(m) * gamma, n);
    ResidueHistogram h(n);
    for (std::int64_t k = 0; k < n; ++k) h.add(mod_reduce(static_cast<i128>(mg) * (static_cast<i128>(k) * k % n), n));
    return h.total();
}

ComplexVal exp_sum_quad4(const DiagonalForm& phi, std::int64_t m, const Vec4& w, std::int64_t p, int r) {
    i128 gamma = phi.product();
    require_gauss_hypothesis(static_cast<i128>(m) * mod_reduce(gamma, p), p, r);
    std::int64_t n = ipow(p, r);
    TildeForm t = tilde(phi);
    std::int64_t four_m_gamma = mod_reduce(static_cast<i128>(4) * mod_reduce(m, n) % n * mod_reduce(gamma, n), n);
    std::int64_t inv = mod_inverse(four_m_gamma, n);
    std::int64_t arg = mod_reduce(-static_cast<i128>(inv) * t.eval_mod(w, n), n);
    double mag = std::pow(static_cast<double>(p), 2.0 * r);
    ComplexVal v = mag * e_q(arg, n);
    if (r % 2 == 1) v *= static_cast<double>(legendre(gamma, p));
    return v;
}

ComplexVal exp_sum_quad4_brute(const DiagonalForm& phi, std::int64_t m, const Vec4& w, std::int64_t p, int r) {
    require_gauss_hypothesis(static_cast<i128>(m) * mod_reduce(phi.product(), p), p, r);
    std::int64_t n = ipow(p, r);
    if (static_cast<double>(n) * n * n * n > 1e8) throw TooLarge("exp_sum_quad4_brute limited to p^(4r) <= 1e8");
    std::array<std::vector<std::int64_t>, 4> t;
    for (std::size_t i = 0; i < 4; ++i) {
        t[i].resize(static_cast<std::size_t>(n));
        std::int64_t mg = mod_reduce(static_cast<i128>(m) * phi[static_cast<int>(i)], n);
        for (std::int64_t k = 0; k < n; ++k) {
            t[i][static_cast<std::size_t>(k)] = mod_reduce(static_cast<i128>(mg) * k % n * k + static_cast<i128>(w[i]) * k, n);
        }
    }
    ResidueHistogram h(n);
    for (auto v0 : t[0])
        for (auto v1 : t[1]) {
            std::int64_t s01 = (v0 + v1) % n;
            for (auto v2 : t[2]) {
                std::int64_t s012 = (s01 + v2) % n;
                for (auto v3 : t[3]) h.add((s012 + v3) % n);
            }
        }
    return h.total();
}

}  // namespace quadpair
