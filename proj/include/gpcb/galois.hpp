#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace gpcb {

/// Element of GF(2^m) in polynomial basis: bit i is the coefficient of x^i.
using Element = std::uint16_t;

/**
 * Binary extension field GF(2^m), 2 <= m <= 16, with log/antilog tables for
 * the generator alpha (the root of the primitive polynomial, element 2).
 *
 * Immutable after construction and safe to share between threads.
 */
class Field {
public:
    /// `primitive_poly` is the bit-vector of the defining polynomial, e.g.
    /// 0b1000011 for x^6 + x + 1. Throws NonPrimitivePoly if the powers of
    /// alpha do not enumerate all 2^m - 1 nonzero elements.
    Field(int m, std::uint32_t primitive_poly);

    /// Field built from the conventional primitive polynomial for `m`.
    static Field standard(int m);
    static std::shared_ptr<const Field> shared(int m);

    /// Default primitive polynomial used by `standard`.
    static std::uint32_t default_primitive_poly(int m);

    int m() const noexcept { return m_; }
    std::uint32_t primitive_poly() const noexcept { return poly_; }
    /// Number of nonzero elements, 2^m - 1.
    int order() const noexcept { return order_; }
    /// Number of elements, 2^m.
    int size() const noexcept { return order_ + 1; }

    /// alpha^e for any integer exponent (negative allowed).
    Element alpha_pow(long long e) const noexcept
    {
        long long r = e % order_;
        if (r < 0) r += order_;
        return exp_[static_cast<std::size_t>(r)];
    }

    /// Discrete log base alpha. Throws DivisionByZero for 0.
    int log(Element x) const;

    static Element add(Element a, Element b) noexcept { return a ^ b; }

    Element mul(Element a, Element b) const noexcept
    {
        if (a == 0 || b == 0) return 0;
        return exp_[static_cast<std::size_t>(log_[a] + log_[b])];
    }

    /// a / b; throws DivisionByZero when b == 0.
    Element div(Element a, Element b) const;
    Element inv(Element a) const;
    /// a^e; pow(0, 0) == 1 and pow(0, e < 0) throws DivisionByZero.
    Element pow(Element a, long long e) const;

    bool contains(Element a) const noexcept { return a <= order_; }

private:
    int m_;
    std::uint32_t poly_;
    int order_;
    // exp_ holds two periods so log-sum lookups need no modulo.
    std::vector<Element> exp_;
    // log_[0] is a sentinel and never read by mul.
    std::vector<int> log_;
};

/// Polynomial over a Field, coefficients lowest degree first, kept canonical
/// (no zero coefficient above the degree; the zero polynomial is empty).
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Element> coeffs);

    static Polynomial monomial(int degree, Element coeff = 1);

    /// -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    const std::vector<Element>& coeffs() const noexcept { return coeffs_; }
    Element operator[](int i) const noexcept
    {
        return i >= 0 && i < static_cast<int>(coeffs_.size()) ? coeffs_[static_cast<std::size_t>(i)] : Element{0};
    }

    bool operator==(const Polynomial&) const = default;

    /// "x^4 + x + 1" for binary coefficients; non-binary coefficients print
    /// as their integer value.
    std::string to_string() const;

private:
    void trim();
    std::vector<Element> coeffs_;
};

Polynomial poly_add(const Polynomial& a, const Polynomial& b);
Polynomial poly_mul(const Field& f, const Polynomial& a, const Polynomial& b);
/// Remainder of a / b; throws DivisionByZero for a zero divisor.
Polynomial poly_mod(const Field& f, const Polynomial& a, const Polynomial& b);
Element poly_eval(const Field& f, const Polynomial& p, Element x);

/// Monic polynomial over GF(2) of least degree having `e` as a root, i.e. the
/// product of (x - c) over the conjugacy class {e, e^2, e^4, ...}.
Polynomial minimal_polynomial(const Field& f, Element e);

} // namespace gpcb
