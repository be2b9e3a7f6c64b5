#include "quadpair/charsum.hpp"

#include <cmath>
#include <numeric>

#include "quadpair/errors.hpp"

namespace quadpair {

namespace {

constexpr double kWorkCap = 1e9;

void require_admissible(const FormPair& pair, const SquarefreeModulus& q) {
    for (auto p : q.primes()) {
        if (pair.divides_2alphaD(p)) {
            throw PreconditionError("q = " + std::to_string(q.value()) + " shares the prime " + std::to_string(p) +
                                    " with 2*alpha*D");
        }
    }
}

}  // namespace

CharSumParams::CharSumParams(FormPair pair_, std::int64_t q_, std::int64_t c_, Vec4 w_)
    : pair(pair_), q(q_), c(c_), w(w_) {
    if (c < 1) throw DomainError("c must be positive");
    require_admissible(pair, q);
}

std::string to_string(CharSumMethod m) {
    switch (m) {
        case CharSumMethod::brute: return "brute";
        case CharSumMethod::closed: return "closed";
        case CharSumMethod::crt_composed: return "crt-composed";
    }
    return "unknown";
}

std::vector<std::int64_t> primitive_residues(std::int64_t c) {
    std::vector<std::int64_t> out;
    if (c == 1) return {0};
    for (std::int64_t a = 1; a < c; ++a) {
        if (std::gcd(a, c) == 1) out.push_back(a);
    }
    return out;
}

CharSumKernel::CharSumKernel(const FormPair& pair, std::int64_t q, std::int64_t c)
    : pair_(pair), q_(q), c_(c), n_(q * c), primitives_(primitive_residues(c)) {
    SquarefreeModulus sq(q);
    require_admissible(pair, sq);
    square_class_.resize(static_cast<std::size_t>(n_));
    for (std::int64_t k = 0; k < n_; ++k) square_class_[static_cast<std::size_t>(k)] = static_cast<std::int32_t>(k * k % q);
    roots_.resize(static_cast<std::size_t>(n_));
    for (std::int64_t r = 0; r < n_; ++r) roots_[static_cast<std::size_t>(r)] = e_q(r, n_);
    chi_.resize(static_cast<std::size_t>(q));
    for (std::int64_t v = 0; v < q; ++v) chi_[static_cast<std::size_t>(v)] = q == 1 ? 1 : jacobi(v, sq);
    for (std::size_t i = 0; i < 4; ++i) {
        a_mod_q_[i] = mod_reduce(pair.a()[i], q);
        b_mod_q_[i] = mod_reduce(pair.b()[i], q);
    }
}

double CharSumKernel::work() const {
    return static_cast<double>(primitives_.size()) *
           (4.0 * static_cast<double>(n_) + static_cast<double>(q_) * static_cast<double>(q_) * static_cast<double>(q_));
}

ComplexVal CharSumKernel::couple(const std::array<std::vector<ComplexVal>, 4>& phi) const {
    const std::int64_t q = q_;
    if (q == 1) return phi[0][0] * phi[1][0] * phi[2][0] * phi[3][0];
    const auto qs = static_cast<std::size_t>(q);
    auto pair_table = [&](std::size_t i, std::size_t j) {
        std::vector<ComplexVal> u(qs * qs, ComplexVal{0.0, 0.0});
        for (std::int64_t ti = 0; ti < q; ++ti) {
            ComplexVal pi = phi[i][static_cast<std::size_t>(ti)];
            if (pi == ComplexVal{0.0, 0.0}) continue;
            for (std::int64_t tj = 0; tj < q; ++tj) {
                ComplexVal pj = phi[j][static_cast<std::size_t>(tj)];
                if (pj == ComplexVal{0.0, 0.0}) continue;
                std::int64_t ua = (a_mod_q_[i] * ti + a_mod_q_[j] * tj) % q;
                std::int64_t ub = (b_mod_q_[i] * ti + b_mod_q_[j] * tj) % q;
                u[static_cast<std::size_t>(ua) * qs + static_cast<std::size_t>(ub)] += pi * pj;
            }
        }
        return u;
    };
    auto u12 = pair_table(0, 1);
    auto u34 = pair_table(2, 3);
    ComplexVal total{0.0, 0.0};
    std::vector<ComplexVal> twisted(qs);
    for (std::int64_t u = 0; u < q; ++u) {
        const std::size_t row12 = static_cast<std::size_t>(u) * qs;
        const std::size_t row34 = static_cast<std::size_t>((q - u) % q) * qs;
        for (std::int64_t v = 0; v < q; ++v) {
            ComplexVal acc{0.0, 0.0};
            for (std::int64_t v2 = 0; v2 < q; ++v2) {
                int ch = chi_[static_cast<std::size_t>((v + v2) % q)];
                if (ch != 0) acc += static_cast<double>(ch) * u34[row34 + static_cast<std::size_t>(v2)];
            }
            total += u12[row12 + static_cast<std::size_t>(v)] * acc;
        }
    }
    return total;
}

void CharSumKernel::class_sums(std::int64_t a, const Vec4& w, std::array<std::vector<ComplexVal>, 4>& out) const {
    const auto qs = static_cast<std::size_t>(q_);
    for (std::size_t i = 0; i < 4; ++i) {
        out[i].assign(qs, ComplexVal{0.0, 0.0});
        const std::int64_t m = mod_reduce(static_cast<i128>(a) * pair_.a()[i], n_);
        const std::int64_t wi = mod_reduce(w[i], n_);
        std::int64_t k2 = 0;  // k^2 mod N, updated incrementally
        for (std::int64_t k = 0; k < n_; ++k) {
            std::int64_t r = mod_reduce(static_cast<i128>(m) * k2 + static_cast<i128>(wi) * k, n_);
            out[i][static_cast<std::size_t>(square_class_[static_cast<std::size_t>(k)])] += roots_[static_cast<std::size_t>(r)];
            k2 = (k2 + 2 * k + 1) % n_;
        }
    }
}

CharSumValue s_qc_naive(const CharSumParams& params) {
    const std::int64_t q = params.q.value();
    const std::int64_t n = params.modulus();
    const double terms = static_cast<double>(params.c) * std::pow(static_cast<double>(n), 4);
    if (terms > kWorkCap) throw TooLarge("s_qc_naive: c * (qc)^4 exceeds 1e9");
    const auto& a = params.pair.a();
    const auto& b = params.pair.b();
    auto prims = primitive_residues(params.c);
    std::vector<int> chi(static_cast<std::size_t>(q));
    for (std::int64_t v = 0; v < q; ++v) chi[static_cast<std::size_t>(v)] = q == 1 ? 1 : jacobi(v, params.q);
    ResidueHistogram hist(n);
    Vec4 k{};
    for (k[0] = 0; k[0] < n; ++k[0])
        for (k[1] = 0; k[1] < n; ++k[1])
            for (k[2] = 0; k[2] < n; ++k[2])
                for (k[3] = 0; k[3] < n; ++k[3]) {
                    i128 p1 = eval_coeffs(a, k);
                    if (mod_reduce(p1, q) != 0) continue;
                    int ch = chi[static_cast<std::size_t>(mod_reduce(eval_coeffs(b, k), q))];
                    if (ch == 0) continue;
                    i128 lin = 0;
                    for (std::size_t i = 0; i < 4; ++i) lin += static_cast<i128>(params.w[i]) * k[i];
                    for (auto av : prims) hist.add(mod_reduce(static_cast<i128>(av) * p1 + lin, n), ch);
                }
    return {hist.total(), params, CharSumMethod::brute};
}

CharSumValue s_qc_brute(const CharSumParams& params) {
    CharSumKernel kernel(params.pair, params.q.value(), params.c);
    if (kernel.work() > kWorkCap) throw TooLarge("s_qc_brute: phi(c) * (4qc + q^3) exceeds 1e9");
    std::array<std::vector<ComplexVal>, 4> phi;
    ComplexVal total{0.0, 0.0};
    for (auto av : kernel.primitives()) {
        kernel.class_sums(av, params.w, phi);
        total += kernel.couple(phi);
    }
    return {total, params, CharSumMethod::brute};
}

CharSumValue s_1_pr_closed(const FormPair& pair, std::int64_t p, int r, const Vec4& w) {
    if (p < 3 || !is_prime(static_cast<std::uint64_t>(p))) throw InvalidModulus("s_1_pr_closed needs an odd prime");
    if (mod_reduce(pair.alpha(), p) == 0) throw PreconditionError("p divides 2*alpha");
    if (r < 1) throw DomainError("r must be positive");
    const std::int64_t pr = ipow(p, r);
    const TildeForm t = tilde(pair.psi1());
    const int chi = legendre(pair.alpha(), p);
    const int sign = (r % 2 == 1) ? chi : 1;
    const double v = static_cast<double>(sign) * static_cast<double>(ramanujan_sum(pr, t.eval_mod(w, pr))) *
                     std::pow(static_cast<double>(p), 2.0 * r);
    return {ComplexVal{v, 0.0}, CharSumParams(pair, 1, pr, w), CharSumMethod::closed};
}

CharSumValue s_p_1(const FormPair& pair, std::int64_t p, const Vec4& w) {
    if (std::pow(static_cast<double>(p), 4) > 1e8) throw TooLarge("s_p_1 limited to p^4 <= 1e8");
    return s_qc_brute(CharSumParams(pair, p, 1, w));
}

double weil_ratio(const FormPair& pair, std::int64_t p, const Vec4& w) {
    return std::abs(s_p_1(pair, p, w).value) / std::pow(static_cast<double>(p), 1.5);
}

CharSumValue s_p_pr(const FormPair& pair, std::int64_t p, int r, const Vec4& w) {
    if (r < 1) throw DomainError("r must be positive");
    return s_qc_brute(CharSumParams(pair, p, ipow(p, r), w));
}

double spr_ratio(const FormPair& pair, std::int64_t p, int r, const Vec4& w) {
    const std::int64_t pr = ipow(p, r);
    const std::int64_t g = std::gcd(pr, tilde(pair.psi1()).eval_mod(w, pr));
    return std::abs(s_p_pr(pair, p, r, w).value) / (std::pow(static_cast<double>(p), 2.0 * r + 1.5) * static_cast<double>(g));
}

CrtCheck s_qc_crt(const FormPair& pair, std::int64_t q1, std::int64_t c1, std::int64_t q2, std::int64_t c2, const Vec4& w) {
    if (std::gcd(q1 * c1, q2 * c2) != 1) throw DomainError("s_qc_crt needs gcd(q1 c1, q2 c2) = 1");
    auto s1 = s_qc_brute(CharSumParams(pair, q1, c1, w));
    auto s2 = s_qc_brute(CharSumParams(pair, q2, c2, w));
    auto direct = s_qc_brute(CharSumParams(pair, q1 * q2, c1 * c2, w));
    ComplexVal composed = s1.value * s2.value;
    double scale = std::max({std::abs(direct.value), std::abs(composed), 1.0});
    double rel = std::abs(composed - direct.value) / scale;
    return {CharSumValue{composed, direct.params, CharSumMethod::crt_composed}, direct.value, rel, rel <= 1e-5};
}

std::vector<ScanRow> partial_sum_scan(const FormPair& pair, std::int64_t q, const Vec4& w, std::int64_t X, ScanMode mode,
                                      std::int64_t q1) {
    std::vector<ScanRow> rows;
    if (X < 1) return rows;
    if (mode == ScanMode::coprime_part) {
        if (q % q1 != 0) throw DomainError("q1 must divide q");
        if (tilde(pair.psi1()).eval(w) != 0) throw PreconditionError("coprime-part scan needs psi~1(w) = 0");
    }
    SquarefreeModulus sq(q);
    require_admissible(pair, sq);
    ComplexVal acc{0.0, 0.0};
    for (std::int64_t c = 1; c <= X; ++c) {
        double reference;
        if (mode == ScanMode::q_divides_c) {
            if (c % q == 0) acc += std::abs(s_qc_brute(CharSumParams(pair, q, c, w)).value);
            reference = std::pow(static_cast<double>(q), 1.5) * std::pow(static_cast<double>(c), 3.0);
        } else {
            if (std::gcd(c, q) == q1) acc += s_qc_brute(CharSumParams(pair, q1, c, w)).value;
            reference = std::pow(static_cast<double>(c), 3.5);
        }
        rows.push_back({c, acc, reference, std::abs(acc) / reference});
    }
    return rows;
}

}  // namespace quadpair
