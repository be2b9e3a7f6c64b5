#include "quadpair/forms.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "quadpair/errors.hpp"
#include "quadpair/modular.hpp"

namespace quadpair {

namespace {

constexpr std::int64_t kCoeffLimit = std::int64_t{1} << 31;
constexpr std::int64_t kVarLimit = std::int64_t{1} << 30;

void check_vars(const Vec4& x) {
    for (auto v : x) {
        if (v > kVarLimit || v < -kVarLimit) throw TooLarge("form argument exceeds 2^30 in absolute value");
    }
}

void check_coeffs(const Coeffs4& c) {
    for (auto v : c) {
        if (v >= kCoeffLimit || v <= -kCoeffLimit) throw TooLarge("form coefficient exceeds 31 bits");
    }
}

constexpr std::array<std::array<int, 2>, 6> kMinorIndex{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

}  // namespace

DiagonalForm::DiagonalForm(const Coeffs4& coeffs) : coeffs_(coeffs) {
    check_coeffs(coeffs);
    for (auto v : coeffs) {
        if (v == 0) throw DomainError("diagonal form coefficient must be nonzero");
    }
}

i128 DiagonalForm::product() const {
    i128 p = 1;
    for (auto v : coeffs_) p *= v;
    return p;
}

i128 eval_coeffs(const Coeffs4& coeffs, const Vec4& x) {
    check_vars(x);
    i128 s = 0;
    for (std::size_t i = 0; i < 4; ++i) s += static_cast<i128>(coeffs[i]) * x[i] * x[i];
    return s;
}

i128 eval_form(const DiagonalForm& form, const Vec4& x) { return eval_coeffs(form.coeffs(), x); }

i128 TildeForm::eval(const Vec4& w) const {
    i128 s = 0;
    for (std::size_t i = 0; i < 4; ++i) {
        i128 sq = static_cast<i128>(w[i]) * w[i];
        i128 term;
        if (__builtin_mul_overflow(coeffs[i], sq, &term) || __builtin_add_overflow(s, term, &s)) {
            throw TooLarge("tilde form value overflows 128 bits");
        }
    }
    return s;
}

std::int64_t TildeForm::eval_mod(const Vec4& w, std::int64_t m) const {
    i128 s = 0;
    for (std::size_t i = 0; i < 4; ++i) {
        i128 c = coeffs[i] % m;
        i128 wi = w[i] % m;
        s = (s + c * ((wi * wi) % m)) % m;
    }
    if (s < 0) s += m;
    return static_cast<std::int64_t>(s);
}

TildeForm tilde(const DiagonalForm& form) {
    TildeForm t;
    t.gamma = form.product();
    for (int i = 0; i < 4; ++i) t.coeffs[static_cast<std::size_t>(i)] = t.gamma / form[i];
    return t;
}

FormPair::FormPair(const Coeffs4& a, const Coeffs4& b) : a_(a), b_(b) {
    check_coeffs(a);
    check_coeffs(b);
}

i128 FormPair::alpha() const {
    i128 p = 1;
    for (auto v : a_) p *= v;
    return p;
}

std::array<std::int64_t, 6> FormPair::minors() const {
    std::array<std::int64_t, 6> m{};
    for (std::size_t k = 0; k < 6; ++k) {
        auto [i, j] = kMinorIndex[k];
        m[k] = a_[i] * b_[j] - a_[j] * b_[i];
    }
    return m;
}

bool FormPair::divides_2alphaD(std::int64_t p) const {
    if (p == 2) return true;
    for (auto v : a_) {
        if (v % p == 0) return true;
    }
    for (auto m : minors()) {
        if (m % p == 0) return true;
    }
    return false;
}

std::vector<std::int64_t> FormPair::bad_primes() const {
    std::vector<std::int64_t> out{2};
    auto absorb = [&](std::int64_t v) {
        if (v == 0) return;
        for (auto p : factorize(static_cast<std::uint64_t>(std::llabs(v)))) out.push_back(static_cast<std::int64_t>(p));
    };
    for (auto v : a_) absorb(v);
    for (auto m : minors()) absorb(m);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

double FormPair::psi1_min_on_cube() const {
    double s = 0;
    for (auto v : a_) s += std::min<double>(0.0, static_cast<double>(v));
    return s;
}

double FormPair::psi1_max_on_cube() const {
    double s = 0;
    for (auto v : a_) s += std::max<double>(0.0, static_cast<double>(v));
    return s;
}

FormPair FormPair::canonical() { return FormPair({1, 2, -3, -5}, {1, 1, 1, 1}); }

CompatibilityReport check_compatibility(const FormPair& pair) {
    CompatibilityReport r;
    r.minors = pair.minors();
    r.alpha = pair.alpha();
    i128 d = 1;
    bool fits = true;
    for (std::size_t k = 0; k < 6; ++k) {
        if (r.minors[k] == 0) r.zero_minors.push_back(static_cast<int>(k));
        if (fits && __builtin_mul_overflow(d, static_cast<i128>(r.minors[k]), &d)) fits = false;
    }
    if (fits) r.D = d;
    bool square_alpha = is_perfect_square(r.alpha);
    r.is_compatible = r.zero_minors.empty() && !square_alpha;
    if (!r.zero_minors.empty()) {
        r.reason = "zero minor(s) at index";
        for (int k : r.zero_minors) {
            r.reason += " m" + std::to_string(kMinorIndex[static_cast<std::size_t>(k)][0] + 1) +
                        std::to_string(kMinorIndex[static_cast<std::size_t>(k)][1] + 1);
        }
    }
    if (square_alpha) {
        if (!r.reason.empty()) r.reason += "; ";
        r.reason += "alpha is a perfect square";
    }
    return r;
}

PencilCoeffs pencil(const FormPair& pair, std::int64_t ell, std::int64_t p) {
    if (p < 3 || p % 2 == 0 || !is_prime(static_cast<std::uint64_t>(p))) throw InvalidModulus("pencil needs an odd prime");
    PencilCoeffs out{};
    out.p = p;
    out.ell = ((ell % p) + p) % p;
    for (std::size_t i = 0; i < 4; ++i) {
        i128 v = (static_cast<i128>(pair.b()[i]) + static_cast<i128>(out.ell) * pair.a()[i]) % p;
        if (v < 0) v += p;
        out.c[i] = static_cast<std::int64_t>(v);
    }
    return out;
}

std::uint64_t isqrt_u128(unsigned __int128 n) {
    if (n == 0) return 0;
    auto r = static_cast<unsigned __int128>(std::sqrt(static_cast<long double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return static_cast<std::uint64_t>(r);
}

bool is_perfect_square(i128 n) {
    if (n < 0) return false;
    auto r = static_cast<unsigned __int128>(isqrt_u128(static_cast<unsigned __int128>(n)));
    return r * r == static_cast<unsigned __int128>(n);
}

}  // namespace quadpair
