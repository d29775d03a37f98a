#include "gpcb/block_codes.hpp"

#include "gpcb/errors.hpp"

#include <algorithm>
#include <set>

namespace gpcb {

std::string CodeSpec::name() const
{
    return std::string(kind == CodeKind::bch ? "BCH(" : "RS(") + std::to_string(n) + "," + std::to_string(k) +
           "," + std::to_string(d) + ")";
}

CodeSpec bch_spec(std::shared_ptr<const Field> field, int t)
{
    if (!field) throw InvalidParams("bch_spec: null field");
    const int n = field->order();
    if (t < 1 || 2 * t >= n)
        throw InvalidParams("bch_spec: t=" + std::to_string(t) + " out of range for n=" + std::to_string(n));

    // lcm of the minimal polynomials of alpha^1..alpha^2t: one factor per
    // distinct cyclotomic coset.
    std::set<int> seen;
    Polynomial g({1});
    for (int i = 1; i <= 2 * t; ++i) {
        const int rep = i % n;
        if (seen.contains(rep)) continue;
        int c = rep;
        do {
            seen.insert(c);
            c = (2 * c) % n;
        } while (c != rep);
        g = poly_mul(*field, g, minimal_polynomial(*field, field->alpha_pow(i)));
    }

    CodeSpec code;
    code.kind = CodeKind::bch;
    code.n = n;
    code.k = n - g.degree();
    code.t = t;
    code.d = 2 * t + 1;
    code.symbol_bits = 1;
    code.generator = std::move(g);
    code.field = std::move(field);
    if (code.k <= 0) throw InvalidParams("bch_spec: t=" + std::to_string(t) + " leaves no message symbols");
    return code;
}

CodeSpec rs_spec(std::shared_ptr<const Field> field, int t)
{
    if (!field) throw InvalidParams("rs_spec: null field");
    const int n = field->order();
    if (t < 1 || 2 * t >= n)
        throw InvalidParams("rs_spec: t=" + std::to_string(t) + " out of range for n=" + std::to_string(n));

    Polynomial g({1});
    for (int i = 1; i <= 2 * t; ++i) g = poly_mul(*field, g, Polynomial({field->alpha_pow(i), 1}));

    CodeSpec code;
    code.kind = CodeKind::rs;
    code.n = n;
    code.k = n - 2 * t;
    code.t = t;
    code.d = 2 * t + 1;
    code.symbol_bits = field->m();
    code.generator = std::move(g);
    code.field = std::move(field);
    return code;
}

CodePair pair_construction2(std::shared_ptr<const Field> field, int t1)
{
    if (!field) throw InvalidParams("pair_construction2: null field");
    const int m = field->m();
    if ((m * t1) % 2 != 0)
        throw IncompatiblePair("m*t1 = " + std::to_string(m * t1) + " is odd; no RS code has the same dimension");
    CodeSpec bch = bch_spec(field, t1);
    const int t2 = m * t1 / 2;
    if (2 * t2 >= field->order()) throw IncompatiblePair("RS capability t2=" + std::to_string(t2) + " too large");
    CodeSpec rs = rs_spec(field, t2);
    if (bch.k != rs.k)
        throw IncompatiblePair("BCH generator degree " + std::to_string(bch.n - bch.k) + " is below m*t1 = " +
                               std::to_string(m * t1) + ": dimensions " + std::to_string(bch.k) + " and " +
                               std::to_string(rs.k) + " differ");
    return {std::move(bch), std::move(rs)};
}

Codeword encode_systematic(const CodeSpec& code, std::span<const Element> message)
{
    if (static_cast<int>(message.size()) != code.k)
        throw LengthMismatch("message has " + std::to_string(message.size()) + " symbols, code expects " +
                             std::to_string(code.k));
    const Field& f = *code.field;
    const int r = code.n - code.k;
    const auto& g = code.generator.coeffs();

    Codeword word(static_cast<std::size_t>(code.n), 0);
    std::vector<Element> reg(static_cast<std::size_t>(r), 0);
    for (int i = 0; i < code.k; ++i) {
        const Element s = message[static_cast<std::size_t>(i)];
        if (!f.contains(s) || (code.kind == CodeKind::bch && s > 1))
            throw InvalidParams("message symbol out of range at position " + std::to_string(i));
        word[static_cast<std::size_t>(i)] = s;
        const Element fb = s ^ reg[static_cast<std::size_t>(r - 1)];
        for (int j = r - 1; j >= 1; --j)
            reg[static_cast<std::size_t>(j)] = reg[static_cast<std::size_t>(j - 1)] ^ f.mul(fb, g[static_cast<std::size_t>(j)]);
        reg[0] = f.mul(fb, g[0]);
    }
    for (int i = 0; i < r; ++i)
        word[static_cast<std::size_t>(code.k + i)] = reg[static_cast<std::size_t>(r - 1 - i)];
    return word;
}

Polynomial word_polynomial(const CodeSpec& code, std::span<const Element> word)
{
    if (static_cast<int>(word.size()) != code.n)
        throw LengthMismatch("word has " + std::to_string(word.size()) + " symbols, code length is " +
                             std::to_string(code.n));
    std::vector<Element> c(word.rbegin(), word.rend());
    return Polynomial(std::move(c));
}

bool is_codeword(const CodeSpec& code, std::span<const Element> word)
{
    return poly_mod(*code.field, word_polynomial(code, word), code.generator).is_zero();
}

// SyndromeDecoder -----------------------------------------------------------

SyndromeDecoder::SyndromeDecoder(const CodeSpec& code) : code_(code), f_(code_.field.get())
{
    const auto len = static_cast<std::size_t>(2 * code_.t + 2);
    lambda_.resize(len);
    prev_.resize(len);
    tmp_.resize(len);
    omega_.resize(len);
    chien_.resize(len);
}

void SyndromeDecoder::syndromes(std::span<const Element> word, std::span<Element> out) const
{
    const int n = code_.n;
    const int order = f_->order();
    for (int j = 1; j <= 2 * code_.t; ++j) {
        Element s = 0;
        if (code_.kind == CodeKind::bch) {
            for (int i = 0; i < n; ++i)
                if (word[static_cast<std::size_t>(i)] != 0)
                    s ^= f_->alpha_pow(static_cast<long long>(j) * (n - 1 - i) % order);
        } else {
            const Element x = f_->alpha_pow(j);
            for (int i = 0; i < n; ++i) s = f_->mul(s, x) ^ word[static_cast<std::size_t>(i)];
        }
        out[static_cast<std::size_t>(j - 1)] = s;
    }
}

void SyndromeDecoder::syndrome_delta(int position, Element value, std::span<Element> out) const
{
    const long long e = code_.n - 1 - position;
    for (int j = 1; j <= 2 * code_.t; ++j)
        out[static_cast<std::size_t>(j - 1)] = f_->mul(value, f_->alpha_pow(e * j));
}

bool SyndromeDecoder::locate(std::span<const Element> s, std::vector<ErrorLocation>& errors)
{
    errors.clear();
    const int two_t = 2 * code_.t;
    const auto cap = static_cast<int>(lambda_.size());

    bool all_zero = true;
    for (int i = 0; i < two_t; ++i) all_zero = all_zero && s[static_cast<std::size_t>(i)] == 0;
    if (all_zero) return true;

    // Berlekamp-Massey
    std::fill(lambda_.begin(), lambda_.end(), 0);
    std::fill(prev_.begin(), prev_.end(), 0);
    lambda_[0] = 1;
    prev_[0] = 1;
    int L = 0;
    int shift = 1;
    Element b = 1;
    for (int r = 0; r < two_t; ++r) {
        Element delta = s[static_cast<std::size_t>(r)];
        for (int i = 1; i <= L; ++i)
            delta ^= f_->mul(lambda_[static_cast<std::size_t>(i)], s[static_cast<std::size_t>(r - i)]);
        if (delta == 0) {
            ++shift;
            continue;
        }
        const Element coef = f_->div(delta, b);
        if (2 * L <= r) {
            tmp_ = lambda_;
            for (int i = 0; i + shift < cap; ++i)
                lambda_[static_cast<std::size_t>(i + shift)] ^= f_->mul(coef, prev_[static_cast<std::size_t>(i)]);
            L = r + 1 - L;
            prev_.swap(tmp_);
            b = delta;
            shift = 1;
        } else {
            for (int i = 0; i + shift < cap; ++i)
                lambda_[static_cast<std::size_t>(i + shift)] ^= f_->mul(coef, prev_[static_cast<std::size_t>(i)]);
            ++shift;
        }
    }
    if (L > code_.t) return false;
    int deg = cap - 1;
    while (deg > 0 && lambda_[static_cast<std::size_t>(deg)] == 0) --deg;
    if (deg != L) return false;

    // Chien search in the log domain: term i at step e is lambda_i * alpha^(-i*e).
    const int n = code_.n;
    const int order = f_->order();
    std::vector<int> logs(static_cast<std::size_t>(L + 1), -1);
    for (int i = 0; i <= L; ++i)
        if (lambda_[static_cast<std::size_t>(i)] != 0) logs[static_cast<std::size_t>(i)] = f_->log(lambda_[static_cast<std::size_t>(i)]);
    for (int e = 0; e < n && static_cast<int>(errors.size()) < L; ++e) {
        Element acc = 0;
        for (int i = 0; i <= L; ++i) {
            int& lg = logs[static_cast<std::size_t>(i)];
            if (lg < 0) continue;
            acc ^= f_->alpha_pow(lg);
            lg -= i;
            if (lg < 0) lg += order;
        }
        if (acc == 0) errors.push_back({n - 1 - e, 1});
    }
    if (static_cast<int>(errors.size()) != L) return false;

    if (code_.kind == CodeKind::rs) {
        // Forney: omega = S(x) * lambda(x) mod x^2t, value = omega(X^-1) / lambda'(X^-1).
        std::fill(omega_.begin(), omega_.end(), 0);
        for (int i = 0; i < two_t; ++i)
            for (int j = 0; j <= std::min(i, L); ++j)
                omega_[static_cast<std::size_t>(i)] ^=
                    f_->mul(s[static_cast<std::size_t>(i - j)], lambda_[static_cast<std::size_t>(j)]);
        for (auto& err : errors) {
            const Element x_inv = f_->alpha_pow(-(static_cast<long long>(n - 1 - err.position)));
            Element num = 0;
            for (int i = two_t - 1; i >= 0; --i) num = f_->mul(num, x_inv) ^ omega_[static_cast<std::size_t>(i)];
            Element den = 0;
            Element xp = 1; // x_inv^(i-1) for odd i
            const Element x_inv2 = f_->mul(x_inv, x_inv);
            for (int i = 1; i <= L; i += 2) {
                den ^= f_->mul(lambda_[static_cast<std::size_t>(i)], xp);
                xp = f_->mul(xp, x_inv2);
            }
            if (den == 0) return false;
            err.value = f_->div(num, den);
            if (err.value == 0) return false;
        }
    }
    return true;
}

std::optional<Corrected> decode_bounded(const CodeSpec& code, std::span<const Element> word)
{
    if (static_cast<int>(word.size()) != code.n)
        throw LengthMismatch("word has " + std::to_string(word.size()) + " symbols, code length is " +
                             std::to_string(code.n));
    SyndromeDecoder dec(code);
    std::vector<Element> s(static_cast<std::size_t>(dec.syndrome_count()));
    dec.syndromes(word, s);
    std::vector<ErrorLocation> errors;
    if (!dec.locate(s, errors)) return std::nullopt;
    Corrected out{Codeword(word.begin(), word.end()), static_cast<int>(errors.size())};
    for (const auto& e : errors) out.codeword[static_cast<std::size_t>(e.position)] ^= e.value;
    return out;
}

// Bit/symbol regrouping -----------------------------------------------------

void pack_bits(std::span<const std::uint8_t> bits, int symbol_bits, std::span<Element> out)
{
    const auto w = static_cast<std::size_t>(symbol_bits);
    if (bits.size() != out.size() * w) throw LengthMismatch("pack_bits: bit count is not symbols * symbol_bits");
    for (std::size_t j = 0; j < out.size(); ++j) {
        Element v = 0;
        for (std::size_t f = 0; f < w; ++f) v = static_cast<Element>((v << 1) | (bits[j * w + f] & 1u));
        out[j] = v;
    }
}

void unpack_symbols(std::span<const Element> symbols, int symbol_bits, std::span<std::uint8_t> out)
{
    const auto w = static_cast<std::size_t>(symbol_bits);
    if (out.size() != symbols.size() * w) throw LengthMismatch("unpack_symbols: output size mismatch");
    for (std::size_t j = 0; j < symbols.size(); ++j)
        for (std::size_t f = 0; f < w; ++f)
            out[j * w + f] = static_cast<std::uint8_t>((symbols[j] >> (w - 1 - f)) & 1u);
}

std::vector<std::uint8_t> symbols_to_bits(const CodeSpec& code, std::span<const Element> symbols)
{
    std::vector<std::uint8_t> bits(symbols.size() * static_cast<std::size_t>(code.symbol_bits));
    unpack_symbols(symbols, code.symbol_bits, bits);
    return bits;
}

std::vector<Element> bits_to_symbols(const CodeSpec& code, std::span<const std::uint8_t> bits)
{
    const auto w = static_cast<std::size_t>(code.symbol_bits);
    if (bits.size() % w != 0) throw LengthMismatch("bit count is not a multiple of the symbol width");
    std::vector<Element> symbols(bits.size() / w);
    pack_bits(bits, code.symbol_bits, symbols);
    return symbols;
}

} // namespace gpcb
