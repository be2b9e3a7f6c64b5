#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "quadpair/forms.hpp"
#include "quadpair/modular.hpp"

namespace quadpair {

/// Parameters of S_{q,c}(w); construction enforces gcd(q, 2 alpha D) = 1.
struct CharSumParams {
    CharSumParams(FormPair pair, std::int64_t q, std::int64_t c, Vec4 w);

    FormPair pair;
    SquarefreeModulus q;
    std::int64_t c;
    Vec4 w;

    std::int64_t modulus() const { return q.value() * c; }
};

enum class CharSumMethod { brute, closed, crt_composed };
std::string to_string(CharSumMethod m);

struct CharSumValue {
    ComplexVal value;
    CharSumParams params;
    CharSumMethod method;
};

/// Residues a mod c with gcd(a, c) = 1 (just {0} for c = 1).
std::vector<std::int64_t> primitive_residues(std::int64_t c);

/**
 * S_{q,c}(w) split along coordinates. For fixed a the summand factors as
 * prod_i e_N(a a_i k_i^2 + w_i k_i) once the classes t_i = k_i^2 mod q are fixed,
 * and the classes are coupled only through [q | sum a_i t_i] chi_q(sum b_i t_i).
 */
class CharSumKernel {
public:
    CharSumKernel(const FormPair& pair, std::int64_t q, std::int64_t c);

    std::int64_t q() const { return q_; }
    std::int64_t c() const { return c_; }
    std::int64_t modulus() const { return n_; }
    const std::vector<std::int64_t>& primitives() const { return primitives_; }
    /// k^2 mod q for k mod N.
    const std::vector<std::int32_t>& square_class() const { return square_class_; }
    /// e_N(r) for r mod N.
    const std::vector<ComplexVal>& roots() const { return roots_; }
    const FormPair& pair() const { return pair_; }

    /// sum over t in (Z/q)^4 of [q | sum a_i t_i] chi_q(sum b_i t_i) prod_i phi[i][t_i].
    ComplexVal couple(const std::array<std::vector<ComplexVal>, 4>& phi) const;

    /// Per-coordinate class sums for residue a at frequency w: sum_{k^2 = t} e_N(a a_i k^2 + w_i k).
    void class_sums(std::int64_t a, const Vec4& w, std::array<std::vector<ComplexVal>, 4>& out) const;

    /// Work estimate of one full evaluation, phi(c) * (4N + q^3).
    double work() const;

private:
    FormPair pair_;
    std::int64_t q_, c_, n_;
    std::vector<std::int64_t> primitives_;
    std::vector<std::int32_t> square_class_;
    std::vector<ComplexVal> roots_;
    std::vector<int> chi_;
    std::array<std::int64_t, 4> a_mod_q_{}, b_mod_q_{};
};

/// Literal quadruple loop of the defining sum; oracle only (c * N^4 <= 1e9).
CharSumValue s_qc_naive(const CharSumParams& params);
/// Exact coordinate-factorized evaluation; cap phi(c) (4N + q^3) <= 1e9.
CharSumValue s_qc_brute(const CharSumParams& params);

/// chi_p(alpha)^r c_{p^r}(psi~1(w)) p^{2r}.
CharSumValue s_1_pr_closed(const FormPair& pair, std::int64_t p, int r, const Vec4& w);

CharSumValue s_p_1(const FormPair& pair, std::int64_t p, const Vec4& w);
/// |S_{p,1}(w)| / p^{3/2}.
double weil_ratio(const FormPair& pair, std::int64_t p, const Vec4& w);

CharSumValue s_p_pr(const FormPair& pair, std::int64_t p, int r, const Vec4& w);
/// |S_{p,p^r}(w)| / (p^{2r+3/2} gcd(p^r, psi~1(w))).
double spr_ratio(const FormPair& pair, std::int64_t p, int r, const Vec4& w);

struct CrtCheck {
    CharSumValue composed;
    ComplexVal direct;
    double rel_error;
    bool agrees;
};
/// S_{q1,c1}(w) S_{q2,c2}(w) against S_{q1 q2, c1 c2}(w), tolerance 1e-5 relative.
CrtCheck s_qc_crt(const FormPair& pair, std::int64_t q1, std::int64_t c1, std::int64_t q2, std::int64_t c2,
                  const Vec4& w);

enum class ScanMode { q_divides_c, coprime_part };

struct ScanRow {
    std::int64_t x;
    ComplexVal partial;
    double reference;
    double ratio;
};
/**
 * Mode q_divides_c: cumulative sum of |S_{q,c}(w)| over c <= X' with q | c, reference q^{3/2} X'^3.
 * Mode coprime_part: signed sum of S_{q1,c}(w) over c <= X' with gcd(c, q) = q1, reference X'^{7/2};
 * needs psi~1(w) = 0.
 */
std::vector<ScanRow> partial_sum_scan(const FormPair& pair, std::int64_t q, const Vec4& w, std::int64_t X, ScanMode mode,
                                      std::int64_t q1 = 1);

}  // namespace quadpair
