#include "gpcb/galois.hpp"

#include "gpcb/errors.hpp"

#include <algorithm>
#include <sstream>

namespace gpcb {

namespace {

int poly_degree(std::uint32_t p)
{
    int d = -1;
    while (p != 0) {
        p >>= 1;
        ++d;
    }
    return d;
}

} // namespace

std::uint32_t Field::default_primitive_poly(int m)
{
    switch (m) {
    case 2: return 0x7;       // x^2+x+1
    case 3: return 0xB;       // x^3+x+1
    case 4: return 0x13;      // x^4+x+1
    case 5: return 0x25;      // x^5+x^2+1
    case 6: return 0x43;      // x^6+x+1
    case 7: return 0x89;      // x^7+x^3+1
    case 8: return 0x11D;     // x^8+x^4+x^3+x^2+1
    case 9: return 0x211;     // x^9+x^4+1
    case 10: return 0x409;    // x^10+x^3+1
    case 11: return 0x805;    // x^11+x^2+1
    case 12: return 0x1053;   // x^12+x^6+x^4+x+1
    case 13: return 0x201B;   // x^13+x^4+x^3+x+1
    case 14: return 0x4443;   // x^14+x^10+x^6+x+1
    case 15: return 0x8003;   // x^15+x+1
    case 16: return 0x1100B;  // x^16+x^12+x^3+x+1
    default: throw InvalidParams("no default primitive polynomial for m=" + std::to_string(m));
    }
}

Field::Field(int m, std::uint32_t primitive_poly)
    : m_(m), poly_(primitive_poly), order_((1 << m) - 1)
{
    if (m < 2 || m > 16)
        throw InvalidParams("field degree m must be in [2, 16], got " + std::to_string(m));
    if (poly_degree(primitive_poly) != m)
        throw InvalidParams("primitive polynomial degree does not match m=" + std::to_string(m));

    exp_.assign(2 * static_cast<std::size_t>(order_), 0);
    log_.assign(static_cast<std::size_t>(order_) + 1, -1);

    std::uint32_t x = 1;
    for (int i = 0; i < order_; ++i) {
        if (log_[x] != -1) {
            std::ostringstream os;
            os << "0x" << std::hex << primitive_poly << std::dec << ": alpha has order " << i
               << ", expected " << order_;
            throw NonPrimitivePoly(os.str());
        }
        exp_[static_cast<std::size_t>(i)] = static_cast<Element>(x);
        log_[x] = i;
        x <<= 1;
        if (x & (1u << m)) x ^= primitive_poly;
    }
    for (int i = order_; i < 2 * order_; ++i)
        exp_[static_cast<std::size_t>(i)] = exp_[static_cast<std::size_t>(i - order_)];
}

Field Field::standard(int m) { return Field(m, default_primitive_poly(m)); }

std::shared_ptr<const Field> Field::shared(int m) { return std::make_shared<const Field>(standard(m)); }

int Field::log(Element x) const
{
    if (x == 0) throw DivisionByZero("log of zero");
    return log_[x];
}

Element Field::div(Element a, Element b) const
{
    if (b == 0) throw DivisionByZero("division by zero element");
    if (a == 0) return 0;
    return exp_[static_cast<std::size_t>(log_[a] - log_[b] + order_)];
}

Element Field::inv(Element a) const
{
    if (a == 0) throw DivisionByZero("inverse of zero");
    return exp_[static_cast<std::size_t>(order_ - log_[a])];
}

Element Field::pow(Element a, long long e) const
{
    if (a == 0) {
        if (e == 0) return 1;
        if (e < 0) throw DivisionByZero("negative power of zero");
        return 0;
    }
    return alpha_pow(static_cast<long long>(log_[a]) * e);
}

// Polynomial ----------------------------------------------------------------

Polynomial::Polynomial(std::vector<Element> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Polynomial Polynomial::monomial(int degree, Element coeff)
{
    std::vector<Element> c(static_cast<std::size_t>(degree) + 1, 0);
    c.back() = coeff;
    return Polynomial(std::move(c));
}

void Polynomial::trim()
{
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

std::string Polynomial::to_string() const
{
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const Element c = coeffs_[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        if (!first) os << " + ";
        first = false;
        if (c != 1 || i == 0) os << c;
        if (i >= 1) os << (c != 1 ? "*" : "") << "x";
        if (i >= 2) os << '^' << i;
    }
    return os.str();
}

Polynomial poly_add(const Polynomial& a, const Polynomial& b)
{
    std::vector<Element> c(static_cast<std::size_t>(std::max(a.degree(), b.degree()) + 1), 0);
    for (int i = 0; i <= a.degree(); ++i) c[static_cast<std::size_t>(i)] ^= a[i];
    for (int i = 0; i <= b.degree(); ++i) c[static_cast<std::size_t>(i)] ^= b[i];
    return Polynomial(std::move(c));
}

Polynomial poly_mul(const Field& f, const Polynomial& a, const Polynomial& b)
{
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Element> c(static_cast<std::size_t>(a.degree() + b.degree() + 1), 0);
    for (int i = 0; i <= a.degree(); ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j <= b.degree(); ++j)
            c[static_cast<std::size_t>(i + j)] ^= f.mul(a[i], b[j]);
    }
    return Polynomial(std::move(c));
}

Polynomial poly_mod(const Field& f, const Polynomial& a, const Polynomial& b)
{
    if (b.is_zero()) throw DivisionByZero("polynomial modulo zero polynomial");
    std::vector<Element> r = a.coeffs();
    const int db = b.degree();
    const Element lead_inv = f.inv(b[db]);
    for (int i = a.degree(); i >= db; --i) {
        const Element c = r[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        const Element q = f.mul(c, lead_inv);
        for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(i - db + j)] ^= f.mul(q, b[j]);
    }
    return Polynomial(std::move(r));
}

Element poly_eval(const Field& f, const Polynomial& p, Element x)
{
    Element acc = 0;
    for (int i = p.degree(); i >= 0; --i) acc = static_cast<Element>(f.mul(acc, x) ^ p[i]);
    return acc;
}

Polynomial minimal_polynomial(const Field& f, Element e)
{
    if (e == 0) throw InvalidParams("minimal polynomial of zero is x; only nonzero elements are supported");
    Polynomial result({1});
    Element c = e;
    do {
        result = poly_mul(f, result, Polynomial({c, 1}));
        c = f.mul(c, c);
    } while (c != e);
    return result;
}

} // namespace gpcb
