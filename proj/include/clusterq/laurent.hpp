#pragma once

// Exact multivariate Laurent polynomials over the integers.
//
// Variables are laid out as n initial cluster variables x1..xn followed by
// m frozen variables f1..fm. Exponents of the first n may be negative.

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <boost/container/small_vector.hpp>
#include <gmpxx.h>

namespace clusterq {

/// Shape of the ambient variable set: `exchangeable` initial cluster
/// variables followed by `frozen` coefficient variables.
struct VarLayout {
    int exchangeable = 0;
    int frozen = 0;

    int size() const noexcept { return exchangeable + frozen; }
    friend bool operator==(const VarLayout&, const VarLayout&) = default;
};

class Monomial {
public:
    using Storage = boost::container::small_vector<std::int32_t, 12>;

    Monomial() = default;
    explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
    explicit Monomial(Storage exps) : exps_(std::move(exps)) {}
    Monomial(std::initializer_list<std::int32_t> exps) : exps_(exps) {}

    std::size_t size() const noexcept { return exps_.size(); }
    std::int32_t operator[](std::size_t i) const { return exps_[i]; }
    std::int32_t& operator[](std::size_t i) { return exps_[i]; }
    const Storage& exponents() const noexcept { return exps_; }

    /// Exponent-wise sum; throws LimitExceeded on int32 overflow.
    Monomial operator*(const Monomial& other) const;
    /// Exponent-wise difference; throws LimitExceeded on int32 overflow.
    Monomial operator/(const Monomial& other) const;

    bool divides(const Monomial& other) const;
    std::int64_t degree() const;

    friend bool operator==(const Monomial&, const Monomial&) = default;
    friend auto operator<=>(const Monomial& a, const Monomial& b) {
        return std::lexicographical_compare_three_way(a.exps_.begin(), a.exps_.end(),
                                                      b.exps_.begin(), b.exps_.end());
    }

private:
    Storage exps_;
};

/// Monomial orders used by exact division and rendering.
enum class TermOrder {
    GradedLex,  ///< total degree first, ties broken lexicographically (x1 > x2 > ...)
    Lex,
};

/// Strict "a < b" under the given order.
bool term_less(TermOrder order, const Monomial& a, const Monomial& b);

struct Term {
    Monomial exps;
    mpz_class coef;
};

class LaurentPoly {
public:
    LaurentPoly() = default;
    explicit LaurentPoly(VarLayout layout) : layout_(layout) {}

    static LaurentPoly zero(VarLayout layout) { return LaurentPoly(layout); }
    static LaurentPoly constant(VarLayout layout, const mpz_class& c);
    static LaurentPoly monomial(VarLayout layout, Monomial exps, const mpz_class& c = 1);
    /// The single variable at ambient index `index` (0-based; frozen ones
    /// start at layout.exchangeable).
    static LaurentPoly variable(VarLayout layout, int index);
    /// Builds from arbitrary terms: merges duplicates and drops zeros.
    static LaurentPoly from_terms(VarLayout layout, std::vector<Term> terms);

    VarLayout layout() const noexcept { return layout_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t term_count() const noexcept { return terms_.size(); }
    /// Terms in ascending lexicographic order of exponent vectors.
    const std::vector<Term>& terms() const noexcept { return terms_; }
    bool is_monomial() const noexcept { return terms_.size() == 1; }

    /// Componentwise minimum exponent over all terms (requires nonzero).
    Monomial min_exponents() const;

    LaurentPoly operator-() const;
    friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b);
    friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b);
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
    LaurentPoly times_monomial(const Monomial& m, const mpz_class& c = 1) const;
    LaurentPoly pow(unsigned exponent) const;

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b);

    std::size_t hash() const;

private:
    VarLayout layout_{};
    std::vector<Term> terms_;  // sorted by exps, coefficients nonzero
};

LaurentPoly lp_add(const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly lp_mul(const LaurentPoly& a, const LaurentPoly& b);

/// Returns q with q * den == num. The common monomial factors are cleared
/// first, then the resulting ordinary polynomial is reduced by the single
/// divisor's lead term under `order`. Throws NonExactDivision when a
/// remainder survives and std::domain_error when den is zero.
LaurentPoly lp_div_exact(const LaurentPoly& num, const LaurentPoly& den,
                         TermOrder order = TermOrder::GradedLex);

/// Component k = max(0, -min exponent of x_k), over initial variables only.
/// Throws std::domain_error on the zero polynomial.
std::vector<int> denominator_vector(const LaurentPoly& p);

/// Product form, e.g. "(x2^2 + 1)*x1^-1".
std::string to_string(const LaurentPoly& p);
/// Fraction form, e.g. "(x2^2 + 1)/x1".
std::string to_fraction_string(const LaurentPoly& p);

}  // namespace clusterq

template <>
struct std::hash<clusterq::LaurentPoly> {
    std::size_t operator()(const clusterq::LaurentPoly& p) const { return p.hash(); }
};
