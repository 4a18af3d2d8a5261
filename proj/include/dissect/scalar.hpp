#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

namespace dissect {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Raised for 1/0 and sqrt(-x); both are checked eagerly at construction.
struct domain_error : std::runtime_error {
    explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

// Raised by parse_scalar; `pos` is a byte offset into the input text.
struct parse_error : std::runtime_error {
    size_t pos;
    parse_error(const std::string& what, size_t pos_)
        : std::runtime_error(what + " (at position " + std::to_string(pos_) + ")"), pos(pos_) {}
};

namespace detail {
struct Node;
}

// An exact constructible real: an immutable expression DAG over rationals
// closed under +,-,*,/,sqrt with a decidable, exact sign().
//
// sign() refines a cached enclosure interval adaptively; if the interval
// keeps straddling zero it falls back to a BFMSS-style separation bound,
// so sign(x) == 0 certifies that x is exactly zero. Nodes are hash-consed,
// which keeps the radical count (and hence the separation bound) small
// when the same constants appear many times.
class Scalar {
  public:
    Scalar();  // zero
    static Scalar from_rational(const Rational& r);
    static Scalar from_int(long v);

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;  // throws domain_error if o == 0
    Scalar operator-() const;

    // Exact sign of the represented real: -1, 0 or +1. Always terminates.
    int sign() const;

    bool is_zero() const { return sign() == 0; }
    int compare(const Scalar& o) const {
        if (node_ == o.node_) return 0;  // hash-consing makes this common
        return (*this - o).sign();
    }
    bool operator==(const Scalar& o) const { return compare(o) == 0; }
    bool operator!=(const Scalar& o) const { return compare(o) != 0; }
    bool operator<(const Scalar& o) const { return compare(o) < 0; }
    bool operator<=(const Scalar& o) const { return compare(o) <= 0; }
    bool operator>(const Scalar& o) const { return compare(o) > 0; }
    bool operator>=(const Scalar& o) const { return compare(o) >= 0; }

    // If the value is exactly rational (no live radical), returns it.
    std::optional<Rational> exact_rational() const;

    // Double estimate from an enclosure refined to ~60 fractional bits.
    double approx() const;

    // Canonical fully parenthesised serialization in the ScalarText grammar.
    // parse(text()) always yields an equal Scalar.
    std::string text() const;

    // Structural key: canonical serialization. Equal strings imply equal
    // values; unequal strings say nothing. Container use pairs this with an
    // exact sign() confirmation on collision (see scalar_key_equal).
    const std::string& structural_key() const;

    friend Scalar sqrt(const Scalar& x);  // throws domain_error if x < 0

    // Enclosure refined so that hi - lo <= 2^-prec_bits (unless the value is
    // rational, in which case the enclosure is a point). lo <= value <= hi.
    void enclosure(long prec_bits, Rational& lo, Rational& hi) const;

    explicit Scalar(std::shared_ptr<const detail::Node> n) : node_(std::move(n)) {}
    const std::shared_ptr<const detail::Node>& node() const { return node_; }

  private:
    std::shared_ptr<const detail::Node> node_;
};

Scalar sqrt(const Scalar& x);

// Parses the ScalarText grammar:
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := rational | 'sqrt' '(' expr ')' | '(' expr ')' | '-' factor
//   rational := ['-'] digits ['/' digits]
// Division by zero and sqrt of a negative are rejected eagerly.
Scalar parse_scalar(const std::string& text);

// Max enclosure-refinement bits tried before the separation-bound precision
// is engaged directly. Reads DISSECT_PRECISION_CAP, default 4096.
long precision_cap();

}  // namespace dissect
