#include "quadpair/counting.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "quadpair/errors.hpp"
#include "quadpair/modular.hpp"
#include "quadpair/parallel.hpp"

namespace quadpair {

std::string to_string(CountLabel label) {
    switch (label) {
        case CountLabel::M: return "M";
        case CountLabel::Mstar: return "Mstar";
        case CountLabel::Tq: return "Tq";
        case CountLabel::Nproxy: return "Nproxy";
        case CountLabel::isotropic: return "isotropic";
    }
    return "unknown";
}

namespace {

template <class Int>
void zeros_in_slab(const std::array<Int, 4>& c, std::int64_t B, std::int64_t x1_lo, std::int64_t x1_hi, std::vector<Vec4>& out) {
    for (std::int64_t x1 = x1_lo; x1 < x1_hi; ++x1) {
        const Int v1 = c[0] * x1 * x1;
        for (std::int64_t x2 = -B; x2 <= B; ++x2) {
            const Int v2 = v1 + c[1] * x2 * x2;
            for (std::int64_t x3 = -B; x3 <= B; ++x3) {
                const Int v = -(v2 + c[2] * x3 * x3);
                if (v % c[3] != 0) continue;
                const Int s = v / c[3];
                if (s < 0) continue;
                const std::uint64_t r = isqrt_u128(static_cast<unsigned __int128>(s));
                if (static_cast<Int>(r) * static_cast<Int>(r) != s || static_cast<std::int64_t>(r) > B) continue;
                const auto x4 = static_cast<std::int64_t>(r);
                if (x4 == 0) {
                    out.push_back({x1, x2, x3, 0});
                } else {
                    out.push_back({x1, x2, x3, -x4});
                    out.push_back({x1, x2, x3, x4});
                }
            }
        }
    }
}

template <class Int>
std::vector<Vec4> enumerate_with(const std::array<Int, 4>& c, std::int64_t B) {
    const unsigned chunks = chunk_count(2 * B + 1);
    std::vector<std::vector<Vec4>> parts(std::max(1u, chunks));
    parallel_chunks(-B, B + 1, [&](std::int64_t lo, std::int64_t hi, unsigned w) { zeros_in_slab(c, B, lo, hi, parts[w]); });
    std::vector<Vec4> out;
    for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    return out;
}

double weight_at(const Vec4& x, std::int64_t B, const SmoothWeight& weight) {
    if (B == 0) return 1.0;
    const double inv = 1.0 / static_cast<double>(B);
    return weight({static_cast<double>(x[0]) * inv, static_cast<double>(x[1]) * inv, static_cast<double>(x[2]) * inv,
                   static_cast<double>(x[3]) * inv});
}

void require_box(std::int64_t B, std::int64_t cap) {
    if (B < 0) throw DomainError("box size B must be nonnegative");
    if (B > cap) throw TooLarge("box size B = " + std::to_string(B) + " exceeds " + std::to_string(cap));
}

}  // namespace

std::vector<Vec4> enumerate_zeros(const std::array<i128, 4>& coeffs, std::int64_t B) {
    require_box(B, 2000);
    if (coeffs[3] == 0) throw DomainError("enumeration needs a nonzero last coefficient");
    i128 bound = 0;
    for (auto v : coeffs) bound += (v < 0 ? -v : v);
    const i128 b2 = static_cast<i128>(B) * B;
    if (bound < (i128{1} << 40) && bound * b2 < (i128{1} << 62)) {
        std::array<std::int64_t, 4> c{};
        for (std::size_t i = 0; i < 4; ++i) c[i] = static_cast<std::int64_t>(coeffs[i]);
        return enumerate_with(c, B);
    }
    if (bound > (i128{1} << 100)) throw TooLarge("form coefficients too large for 128-bit enumeration");
    return enumerate_with(coeffs, B);
}

std::vector<Vec4> enumerate_psi1_zeros(const FormPair& pair, std::int64_t B) {
    std::array<i128, 4> c{};
    for (std::size_t i = 0; i < 4; ++i) c[i] = pair.a()[i];
    return enumerate_zeros(c, B);
}

std::int64_t count_M(const FormPair& pair, std::int64_t B, const std::vector<Vec4>& zeros) {
    std::int64_t n = 0;
    for (const auto& x : zeros) {
        bool inside = std::all_of(x.begin(), x.end(), [B](std::int64_t v) { return v >= -B && v <= B; });
        if (inside && is_perfect_square(pair.psi2_at(x))) ++n;
    }
    return n;
}

std::int64_t count_M(const FormPair& pair, std::int64_t B) { return count_M(pair, B, enumerate_psi1_zeros(pair, B)); }

std::int64_t count_N_proxy(const FormPair& pair, std::int64_t B) {
    require_box(B, 500);
    std::int64_t n = 0;
    for (const auto& x : enumerate_psi1_zeros(pair, B)) {
        if (x[0] <= 0) continue;
        i128 v = pair.psi2_at(x);
        if (!is_perfect_square(v)) continue;
        auto x5 = static_cast<std::int64_t>(isqrt_u128(static_cast<unsigned __int128>(v)));
        if (x5 > B) continue;
        std::int64_t g = std::gcd(std::gcd(std::gcd(x[0], x[1]), std::gcd(x[2], x[3])), x5);
        if (g != 1) continue;
        n += (x5 == 0) ? 1 : 2;
    }
    return n;
}

double count_M_star(const FormPair& pair, std::int64_t B, const std::vector<Vec4>& zeros, const SmoothWeight& weight) {
    double s = 0.0;
    for (const auto& x : zeros) {
        if (is_perfect_square(pair.psi2_at(x))) s += weight_at(x, B, weight);
    }
    return s;
}

double count_M_star(const FormPair& pair, std::int64_t B, const SmoothWeight& weight) {
    return count_M_star(pair, B, enumerate_psi1_zeros(pair, B), weight);
}

double t_q(const FormPair& pair, std::int64_t q, std::int64_t B, const std::vector<Vec4>& zeros, const SmoothWeight& weight) {
    SquarefreeModulus sq(q);
    if (!sq.is_odd()) throw InvalidModulus("T_q needs odd q");
    for (auto p : sq.primes()) {
        if (pair.divides_2alphaD(p)) throw PreconditionError("q = " + std::to_string(q) + " is not coprime to 2*alpha*D");
    }
    double s = 0.0;
    for (const auto& x : zeros) {
        int ch = jacobi(pair.psi2_at(x), sq);
        if (ch != 0) s += ch * weight_at(x, B, weight);
    }
    return s;
}

double t_q(const FormPair& pair, std::int64_t q, std::int64_t B, const SmoothWeight& weight) {
    return t_q(pair, q, B, enumerate_psi1_zeros(pair, B), weight);
}

double smooth_zero_mass(std::int64_t B, const std::vector<Vec4>& zeros, const SmoothWeight& weight) {
    double s = 0.0;
    for (const auto& x : zeros) s += weight_at(x, B, weight);
    return s;
}

std::int64_t count_isotropic_w(const FormPair& pair, std::int64_t R) {
    require_box(R, 2000);
    auto t = tilde(pair.psi1());
    return static_cast<std::int64_t>(enumerate_zeros(t.coeffs, R).size()) - 1;
}

ExponentFit fit_exponent(const std::vector<std::pair<double, double>>& records) {
    ExponentFit fit;
    std::vector<double> xs, ys;
    for (const auto& [b, v] : records) {
        if (!(v > 0.0) || !(b > 0.0)) {
            fit.warnings.push_back("skipped nonpositive point B=" + std::to_string(b) + " value=" + std::to_string(v));
            continue;
        }
        xs.push_back(std::log(b));
        ys.push_back(std::log(v));
    }
    fit.used = xs.size();
    if (xs.size() < 3) throw DomainError("fit_exponent needs at least 3 positive points");
    const double n = static_cast<double>(xs.size());
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    fit.slope = sxy / sxx;
    double rss = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double r = ys[i] - my - fit.slope * (xs[i] - mx);
        rss += r * r;
    }
    fit.stderr_slope = xs.size() > 2 ? std::sqrt(rss / (n - 2.0) / sxx) : 0.0;
    return fit;
}

std::vector<std::int64_t> sieve_primes(const FormPair& pair, std::int64_t P) {
    if (P < 1) throw DomainError("sieve needs P >= 1");
    const double threshold = static_cast<double>(P) * std::log(std::max<double>(static_cast<double>(P), 3.0));
    std::vector<std::int64_t> out;
    for (auto p = static_cast<std::int64_t>(std::floor(threshold)) + 1; static_cast<std::int64_t>(out.size()) < P; ++p) {
        if (is_prime(static_cast<std::uint64_t>(p)) && !pair.divides_2alphaD(p)) out.push_back(p);
    }
    return out;
}

namespace {

// A nonzero square m^2 in the box must keep at least half of the prime set coprime to m.
std::vector<std::int64_t> checked_sieve_primes(const FormPair& pair, std::int64_t B, std::int64_t P) {
    auto primes = sieve_primes(pair, P);
    double max_psi2 = 0.0;
    for (auto v : pair.b()) max_psi2 += std::fabs(static_cast<double>(v));
    max_psi2 *= static_cast<double>(B) * static_cast<double>(B);
    const double max_root = std::sqrt(max_psi2);
    double product = 1.0;
    for (std::int64_t i = 0; i <= P / 2; ++i) product *= static_cast<double>(primes[static_cast<std::size_t>(i)]);
    if (product <= max_root) {
        throw PreconditionError("P = " + std::to_string(P) + " too small for the box B = " + std::to_string(B) +
                                ": a square could be divisible by more than P/2 sieve primes");
    }
    return primes;
}

}  // namespace

SieveDecomposition sieve_decompose(const FormPair& pair, std::int64_t B, std::int64_t P, const std::vector<Vec4>& zeros,
                                   const SmoothWeight& weight) {
    SieveDecomposition d;
    d.primes = checked_sieve_primes(pair, B, P);
    const auto np = d.primes.size();
    std::vector<double> pair_sums(np * np, 0.0);
    std::vector<int> chi(np);
    double diag = 0.0;
    for (const auto& x : zeros) {
        const double wgt = weight_at(x, B, weight);
        if (wgt == 0.0) continue;
        const i128 n = pair.psi2_at(x);
        if (is_perfect_square(n)) d.mstar += wgt;
        if (n == 0) {
            d.zero_term += wgt;
            continue;
        }
        int nonzero = 0;
        for (std::size_t i = 0; i < np; ++i) {
            chi[i] = legendre(n, d.primes[i]);
            nonzero += chi[i] != 0;
        }
        diag += wgt * nonzero;
        for (std::size_t i = 0; i < np; ++i) {
            if (chi[i] == 0) continue;
            for (std::size_t j = i + 1; j < np; ++j) pair_sums[i * np + j] += wgt * chi[i] * chi[j];
        }
    }
    const double inv_p2 = 1.0 / (static_cast<double>(P) * static_cast<double>(P));
    double off = 0.0;
    for (std::size_t i = 0; i < np; ++i)
        for (std::size_t j = i + 1; j < np; ++j) off += 2.0 * pair_sums[i * np + j];
    d.diagonal_term = diag * inv_p2;
    d.offdiag_term = off * inv_p2;
    d.majorant_rhs = d.diagonal_term + d.offdiag_term;
    return d;
}

SieveDecomposition sieve_decompose(const FormPair& pair, std::int64_t B, std::int64_t P, const SmoothWeight& weight) {
    checked_sieve_primes(pair, B, P);
    return sieve_decompose(pair, B, P, enumerate_psi1_zeros(pair, B), weight);
}

}  // namespace quadpair
