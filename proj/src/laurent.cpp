#include "clusterq/laurent.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "clusterq/error.hpp"

namespace clusterq {

namespace {

std::int32_t checked_add(std::int32_t a, std::int32_t b) {
    std::int32_t out;
    if (__builtin_add_overflow(a, b, &out)) throw LimitExceeded("exponent overflow");
    return out;
}

std::int32_t checked_sub(std::int32_t a, std::int32_t b) {
    std::int32_t out;
    if (__builtin_sub_overflow(a, b, &out)) throw LimitExceeded("exponent overflow");
    return out;
}

void require_same_layout(const LaurentPoly& a, const LaurentPoly& b) {
    if (!(a.layout() == b.layout()))
        throw DimensionMismatch("Laurent polynomials over different variable sets");
}

// Merges two lex-sorted term lists, summing equal monomials.
std::vector<Term> merge_terms(std::vector<Term> a, std::vector<Term> b) {
    std::vector<Term> out;
    out.reserve(a.size() + b.size());
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        auto c = ia->exps <=> ib->exps;
        if (c < 0) {
            out.push_back(std::move(*ia++));
        } else if (c > 0) {
            out.push_back(std::move(*ib++));
        } else {
            ia->coef += ib->coef;
            if (ia->coef != 0) out.push_back(std::move(*ia));
            ++ia;
            ++ib;
        }
    }
    for (; ia != a.end(); ++ia) out.push_back(std::move(*ia));
    for (; ib != b.end(); ++ib) out.push_back(std::move(*ib));
    return out;
}

std::vector<Term> merge_all(std::vector<std::vector<Term>>& parts, std::size_t lo, std::size_t hi) {
    if (hi - lo == 1) return std::move(parts[lo]);
    std::size_t mid = lo + (hi - lo) / 2;
    return merge_terms(merge_all(parts, lo, mid), merge_all(parts, mid, hi));
}

std::string render_monomial(const Monomial& m, VarLayout layout, bool negate_exps) {
    std::string out;
    for (std::size_t i = 0; i < m.size(); ++i) {
        std::int32_t e = negate_exps ? -m[i] : m[i];
        if (e == 0) continue;
        if (!out.empty()) out += '*';
        if (static_cast<int>(i) < layout.exchangeable)
            out += "x" + std::to_string(i + 1);
        else
            out += "f" + std::to_string(i - layout.exchangeable + 1);
        if (e != 1) out += "^" + std::to_string(e);
    }
    return out;
}

// Numerator terms (descending in graded-lex) and the positive denominator
// monomial such that p = numerator / denominator.
std::pair<std::vector<Term>, Monomial> split_fraction(const LaurentPoly& p) {
    Monomial mins = p.min_exponents();
    Monomial den(mins.size());
    for (std::size_t i = 0; i < mins.size(); ++i) den[i] = std::max<std::int32_t>(0, -mins[i]);
    std::vector<Term> num;
    num.reserve(p.term_count());
    for (const auto& t : p.terms()) num.push_back({t.exps * den, t.coef});
    std::sort(num.begin(), num.end(), [](const Term& a, const Term& b) {
        return term_less(TermOrder::GradedLex, b.exps, a.exps);
    });
    return {std::move(num), std::move(den)};
}

std::string render_sum(const std::vector<Term>& terms, VarLayout layout) {
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms) {
        mpz_class c = abs(t.coef);
        bool neg = t.coef < 0;
        if (first) {
            if (neg) os << '-';
        } else {
            os << (neg ? " - " : " + ");
        }
        first = false;
        std::string mono = render_monomial(t.exps, layout, false);
        if (mono.empty()) {
            os << c.get_str();
        } else {
            if (c != 1) os << c.get_str() << '*';
            os << mono;
        }
    }
    return os.str();
}

bool is_unit_numerator(const std::vector<Term>& num) {
    if (num.size() != 1 || num.front().coef != 1) return false;
    for (auto e : num.front().exps.exponents())
        if (e != 0) return false;
    return true;
}

}  // namespace

Monomial Monomial::operator*(const Monomial& other) const {
    Monomial out(size());
    for (std::size_t i = 0; i < size(); ++i) out[i] = checked_add(exps_[i], other.exps_[i]);
    return out;
}

Monomial Monomial::operator/(const Monomial& other) const {
    Monomial out(size());
    for (std::size_t i = 0; i < size(); ++i) out[i] = checked_sub(exps_[i], other.exps_[i]);
    return out;
}

bool Monomial::divides(const Monomial& other) const {
    for (std::size_t i = 0; i < size(); ++i)
        if (exps_[i] > other.exps_[i]) return false;
    return true;
}

std::int64_t Monomial::degree() const {
    std::int64_t d = 0;
    for (auto e : exps_) d += e;
    return d;
}

bool term_less(TermOrder order, const Monomial& a, const Monomial& b) {
    if (order == TermOrder::GradedLex) {
        auto da = a.degree();
        auto db = b.degree();
        if (da != db) return da < db;
    }
    return a < b;
}

LaurentPoly LaurentPoly::constant(VarLayout layout, const mpz_class& c) {
    return monomial(layout, Monomial(static_cast<std::size_t>(layout.size())), c);
}

LaurentPoly LaurentPoly::monomial(VarLayout layout, Monomial exps, const mpz_class& c) {
    if (static_cast<int>(exps.size()) != layout.size())
        throw DimensionMismatch("monomial length differs from ambient variable count");
    LaurentPoly p(layout);
    if (c != 0) p.terms_.push_back({std::move(exps), c});
    return p;
}

LaurentPoly LaurentPoly::variable(VarLayout layout, int index) {
    if (index < 0 || index >= layout.size()) throw std::out_of_range("variable index");
    Monomial m(static_cast<std::size_t>(layout.size()));
    m[index] = 1;
    return monomial(layout, std::move(m));
}

LaurentPoly LaurentPoly::from_terms(VarLayout layout, std::vector<Term> terms) {
    for (const auto& t : terms)
        if (static_cast<int>(t.exps.size()) != layout.size())
            throw DimensionMismatch("monomial length differs from ambient variable count");
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.exps < b.exps; });
    LaurentPoly p(layout);
    for (auto& t : terms) {
        if (!p.terms_.empty() && p.terms_.back().exps == t.exps) {
            p.terms_.back().coef += t.coef;
            if (p.terms_.back().coef == 0) p.terms_.pop_back();
        } else if (t.coef != 0) {
            p.terms_.push_back(std::move(t));
        }
    }
    return p;
}

Monomial LaurentPoly::min_exponents() const {
    if (terms_.empty()) throw std::domain_error("zero polynomial has no exponents");
    Monomial out = terms_.front().exps;
    for (const auto& t : terms_)
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::min(out[i], t.exps[i]);
    return out;
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly out = *this;
    for (auto& t : out.terms_) t.coef = -t.coef;
    return out;
}

LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
    require_same_layout(a, b);
    LaurentPoly out(a.layout_);
    out.terms_ = merge_terms(a.terms_, b.terms_);
    return out;
}

LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return a + (-b); }

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    require_same_layout(a, b);
    LaurentPoly out(a.layout_);
    if (a.is_zero() || b.is_zero()) return out;
    const LaurentPoly& small = a.term_count() <= b.term_count() ? a : b;
    const LaurentPoly& large = a.term_count() <= b.term_count() ? b : a;
    // Shifting a lex-sorted list by a fixed monomial keeps it sorted.
    std::vector<std::vector<Term>> parts;
    parts.reserve(small.term_count());
    for (const auto& s : small.terms_) {
        std::vector<Term> shifted;
        shifted.reserve(large.term_count());
        for (const auto& l : large.terms_) shifted.push_back({l.exps * s.exps, l.coef * s.coef});
        parts.push_back(std::move(shifted));
    }
    out.terms_ = merge_all(parts, 0, parts.size());
    return out;
}

LaurentPoly LaurentPoly::times_monomial(const Monomial& m, const mpz_class& c) const {
    LaurentPoly out(layout_);
    if (c == 0) return out;
    out.terms_.reserve(terms_.size());
    for (const auto& t : terms_) out.terms_.push_back({t.exps * m, t.coef * c});
    return out;
}

LaurentPoly LaurentPoly::pow(unsigned exponent) const {
    LaurentPoly result = constant(layout_, 1);
    LaurentPoly base = *this;
    while (exponent > 0) {
        if (exponent & 1U) result = result * base;
        exponent >>= 1U;
        if (exponent > 0) base = base * base;
    }
    return result;
}

bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    if (!(a.layout_ == b.layout_) || a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
        if (a.terms_[i].exps != b.terms_[i].exps || a.terms_[i].coef != b.terms_[i].coef) return false;
    return true;
}

std::size_t LaurentPoly::hash() const {
    std::size_t h = static_cast<std::size_t>(layout_.size()) * 0x9e3779b97f4a7c15ULL;
    auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
    for (const auto& t : terms_) {
        for (auto e : t.exps.exponents()) mix(static_cast<std::size_t>(static_cast<std::uint32_t>(e)));
        mix(static_cast<std::size_t>(mpz_get_si(t.coef.get_mpz_t())));
        mix(static_cast<std::size_t>(mpz_sgn(t.coef.get_mpz_t()) + 2));
    }
    return h;
}

LaurentPoly lp_add(const LaurentPoly& a, const LaurentPoly& b) { return a + b; }
LaurentPoly lp_mul(const LaurentPoly& a, const LaurentPoly& b) { return a * b; }

LaurentPoly lp_div_exact(const LaurentPoly& num, const LaurentPoly& den, TermOrder order) {
    require_same_layout(num, den);
    if (den.is_zero()) throw std::domain_error("division by the zero polynomial");
    if (num.is_zero()) return LaurentPoly(num.layout());

    const Monomial num_shift = num.min_exponents();
    const Monomial den_shift = den.min_exponents();

    // Clear the common monomial factors so both sides are ordinary polynomials.
    // Remainder keys carry the sort degree so comparisons stay cheap.
    auto key_of = [order](Monomial m) {
        std::int64_t d = order == TermOrder::GradedLex ? m.degree() : 0;
        return std::pair<std::int64_t, Monomial>(d, std::move(m));
    };
    std::map<std::pair<std::int64_t, Monomial>, mpz_class> rem;
    for (const auto& t : num.terms()) rem.emplace(key_of(t.exps / num_shift), t.coef);
    std::vector<Term> divisor;
    divisor.reserve(den.term_count());
    for (const auto& t : den.terms()) divisor.push_back({t.exps / den_shift, t.coef});
    const auto lead_it = std::max_element(divisor.begin(), divisor.end(), [order](const Term& a, const Term& b) {
        return term_less(order, a.exps, b.exps);
    });
    const Term lead = *lead_it;

    std::vector<Term> quotient;
    mpz_class prod;
    while (!rem.empty()) {
        auto top = std::prev(rem.end());
        const Monomial& top_exps = top->first.second;
        if (!lead.exps.divides(top_exps) || !mpz_divisible_p(top->second.get_mpz_t(), lead.coef.get_mpz_t()))
            throw NonExactDivision("division leaves a nonzero remainder");
        Term q{top_exps / lead.exps, top->second / lead.coef};
        for (const auto& d : divisor) {
            prod = d.coef * q.coef;
            auto [it, fresh] = rem.try_emplace(key_of(d.exps * q.exps));
            it->second -= prod;
            if (it->second == 0) rem.erase(it);
        }
        quotient.push_back(std::move(q));
    }

    const Monomial shift = num_shift / den_shift;
    for (auto& q : quotient) q.exps = q.exps * shift;
    return LaurentPoly::from_terms(num.layout(), std::move(quotient));
}

std::vector<int> denominator_vector(const LaurentPoly& p) {
    if (p.is_zero()) throw std::domain_error("zero polynomial has no denominator vector");
    Monomial mins = p.min_exponents();
    std::vector<int> out(static_cast<std::size_t>(p.layout().exchangeable));
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = std::max<int>(0, -mins[k]);
    return out;
}

std::string to_string(const LaurentPoly& p) {
    if (p.is_zero()) return "0";
    auto [num, den] = split_fraction(p);
    std::string den_str = render_monomial(den, p.layout(), false);
    if (den_str.empty()) return render_sum(num, p.layout());
    Monomial inv(den.size());
    for (std::size_t i = 0; i < den.size(); ++i) inv[i] = -den[i];
    std::string factor = render_monomial(inv, p.layout(), false);
    if (is_unit_numerator(num)) return factor;
    std::string n = render_sum(num, p.layout());
    if (num.size() > 1) n = "(" + n + ")";
    return n + "*" + factor;
}

std::string to_fraction_string(const LaurentPoly& p) {
    if (p.is_zero()) return "0";
    auto [num, den] = split_fraction(p);
    std::string n = render_sum(num, p.layout());
    std::string den_str = render_monomial(den, p.layout(), false);
    if (den_str.empty()) return n;
    if (num.size() > 1) n = "(" + n + ")";
    int factors = 0;
    for (auto e : den.exponents()) factors += e != 0 ? 1 : 0;
    if (factors > 1) den_str = "(" + den_str + ")";
    return n + "/" + den_str;
}

}  // namespace clusterq
