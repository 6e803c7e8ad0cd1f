#pragma once

// Exact sparse Laurent polynomials over the integers.
//
// Variables live in named families indexed by (i, k): the Dynkin node i and the
// spectral exponent k of a = q^k. Coefficients are GMP integers, so cluster
// expansions never overflow. Values are immutable once built and every
// operation below is a pure function.

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace grothsym {

using Integer = mpz_class;

// Family symbols, ordered by their ASCII spelling.
enum class Family : char {
    A = 'A', // root-monomial alias
    L = 'L', // prefundamental classes
    X = 'X', // cluster variables
    Y = 'Y', // q-character variables
    y = 'y', // classical character variables
};

std::optional<Family> family_from_char(char c);

struct VarId {
    Family family = Family::X;
    int i = 1;
    int k = 0;

    VarId() = default;
    VarId(Family f, int node, int spectral = 0);

    friend auto operator<=>(const VarId &, const VarId &) = default;
};

inline VarId X(int i) { return {Family::X, i, 0}; }
inline VarId Yv(int i, int k) { return {Family::Y, i, k}; }
inline VarId yv(int i) { return {Family::y, i, 0}; }
inline VarId Lv(int i, int k) { return {Family::L, i, k}; }

std::string to_string(const VarId &v);

// A monomial is a sorted list of (variable, nonzero exponent).
class Monomial {
  public:
    using Factor = std::pair<VarId, int>;

    Monomial() = default;
    explicit Monomial(std::vector<Factor> factors);
    static Monomial var(VarId v, int exponent = 1);

    std::span<const Factor> factors() const { return factors_; }
    bool is_unit() const { return factors_.empty(); }
    int degree() const { return degree_; }
    int exponent(const VarId &v) const;

    Monomial operator*(const Monomial &o) const;
    Monomial operator/(const Monomial &o) const;
    Monomial inverse() const;
    Monomial pow(int e) const;

    // True iff every exponent is >= 0.
    bool is_polynomial() const;

    friend bool operator==(const Monomial &a, const Monomial &b) = default;

    std::size_t hash() const;

  private:
    std::vector<Factor> factors_;
    int degree_ = 0;
};

struct MonomialHash {
    std::size_t operator()(const Monomial &m) const { return m.hash(); }
};

// Graded-then-lex order: larger total degree is greater; ties are broken by
// the first VarId (ascending) where exponents differ, the larger exponent
// winning. Terms print from greatest to least.
std::strong_ordering graded_lex(const Monomial &a, const Monomial &b);

struct GradedLexGreater {
    bool operator()(const Monomial &a, const Monomial &b) const {
        return graded_lex(a, b) == std::strong_ordering::greater;
    }
};

// Componentwise minimum of exponents, missing exponents counting as zero.
Monomial exponent_floor(const Monomial &a, const Monomial &b);

struct Term {
    Monomial monomial;
    Integer coefficient;

    friend bool operator==(const Term &a, const Term &b) = default;
};

class LaurentPoly {
  public:
    LaurentPoly() = default;
    LaurentPoly(long c); // NOLINT(google-explicit-constructor)
    explicit LaurentPoly(const Integer &c);
    explicit LaurentPoly(Monomial m, Integer c = 1);
    static LaurentPoly var(VarId v, int exponent = 1);

    // Sums duplicate monomials and drops zeros.
    static LaurentPoly from_terms(std::vector<Term> terms);

    std::span<const Term> terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_monomial() const { return terms_.size() == 1; }
    const Term &lead() const { return terms_.front(); }
    Integer coefficient(const Monomial &m) const;

    // Variables that occur, ascending.
    std::vector<VarId> variables() const;

    LaurentPoly operator-() const;
    LaurentPoly &operator+=(const LaurentPoly &o);
    LaurentPoly &operator-=(const LaurentPoly &o);
    LaurentPoly &operator*=(const LaurentPoly &o);
    LaurentPoly times(const Monomial &m, const Integer &c = 1) const;
    LaurentPoly pow(unsigned e) const;

    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly &b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly &b) { return a -= b; }
    friend LaurentPoly operator*(const LaurentPoly &a, const LaurentPoly &b);
    friend bool operator==(const LaurentPoly &a, const LaurentPoly &b) = default;

  private:
    friend LaurentPoly lp_mul_serial(const LaurentPoly &, const LaurentPoly &);
    friend LaurentPoly lp_mul_parallel(const LaurentPoly &, const LaurentPoly &);

    std::vector<Term> terms_; // strictly descending in graded_lex
};

LaurentPoly lp_add(const LaurentPoly &p, const LaurentPoly &q);

// Product. Dispatches to the OpenMP kernel above a size threshold; both
// kernels produce identical results.
LaurentPoly lp_mul(const LaurentPoly &p, const LaurentPoly &q);
LaurentPoly lp_mul_serial(const LaurentPoly &p, const LaurentPoly &q);
LaurentPoly lp_mul_parallel(const LaurentPoly &p, const LaurentPoly &q);

// Returns r with r * d == p. Throws NotDivisible when no Laurent quotient exists.
LaurentPoly lp_exact_div(const LaurentPoly &p, const LaurentPoly &d);

// Image of a variable, or nullopt when the map does not cover it.
using MonomialMap = std::function<std::optional<Monomial>(const VarId &)>;

// Ring homomorphism determined by images of variables. Throws UnmappedVariable
// when p contains a variable the map does not cover.
LaurentPoly lp_substitute_monomials(const LaurentPoly &p, const MonomialMap &map);
LaurentPoly lp_substitute_monomials(const LaurentPoly &p,
                                    const std::map<VarId, Monomial> &map);

std::string lp_canonical_string(const LaurentPoly &p);
std::string to_string(const Monomial &m);

// Parses the canonical grammar. Term order and spacing are not required to be
// canonical; duplicate monomials are summed.
LaurentPoly lp_parse(std::string_view text);

} // namespace grothsym
