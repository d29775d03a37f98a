#pragma once

#include "gpcb/galois.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gpcb {

enum class CodeKind { bch, rs };

/**
 * Parameters of a narrow-sense, full-length (n = 2^m - 1) BCH or RS code.
 *
 * Codewords are stored as n symbols (bits for BCH), message first and parity
 * last. Position i of a word carries the coefficient of x^(n-1-i).
 */
struct CodeSpec {
    CodeKind kind = CodeKind::bch;
    std::shared_ptr<const Field> field;
    int n = 0;
    int k = 0;
    int t = 0;
    /// Design distance (2t + 1).
    int d = 0;
    Polynomial generator;
    /// Bits per code symbol: m for RS, 1 for BCH.
    int symbol_bits = 1;

    /// Length of the binary image, n * symbol_bits.
    int bit_length() const noexcept { return n * symbol_bits; }
    int message_bits() const noexcept { return k * symbol_bits; }
    /// "BCH(63,51,5)" / "RS(63,53,11)".
    std::string name() const;
};

using Codeword = std::vector<Element>;

CodeSpec bch_spec(std::shared_ptr<const Field> field, int t);
CodeSpec rs_spec(std::shared_ptr<const Field> field, int t);

/// BCH(t1) and RS(t2 = m*t1/2) over the same field with equal dimension.
struct CodePair {
    CodeSpec bch;
    CodeSpec rs;
};
CodePair pair_construction2(std::shared_ptr<const Field> field, int t1);

/// Message followed by the remainder of message(x)*x^(n-k) mod g(x).
Codeword encode_systematic(const CodeSpec& code, std::span<const Element> message);

/// Polynomial form of a word under the position convention of CodeSpec.
Polynomial word_polynomial(const CodeSpec& code, std::span<const Element> word);
/// True when the word is a codeword (divisible by the generator).
bool is_codeword(const CodeSpec& code, std::span<const Element> word);

struct Corrected {
    Codeword codeword;
    int error_count = 0;
};

/// Bounded-distance decoding (syndromes, Berlekamp-Massey, Chien search and
/// Forney for RS). Returns nullopt when no codeword within distance t is
/// found. A non-empty result is always a valid codeword, which may differ
/// from the transmitted one when more than t errors occurred.
std::optional<Corrected> decode_bounded(const CodeSpec& code, std::span<const Element> word);

/// One located error: symbol position and the value to XOR into it.
struct ErrorLocation {
    int position = 0;
    Element value = 0;
};

/**
 * Reusable bounded-distance decoder working from syndromes. Holds scratch
 * buffers, so one instance must not be shared between threads.
 */
class SyndromeDecoder {
public:
    explicit SyndromeDecoder(const CodeSpec& code);

    const CodeSpec& code() const noexcept { return code_; }

    /// S_1..S_2t of a word of n symbols.
    void syndromes(std::span<const Element> word, std::span<Element> out) const;

    /// Contribution to S_1..S_2t of XOR-ing `value` into symbol `position`.
    void syndrome_delta(int position, Element value, std::span<Element> out) const;

    /// Locates errors from S_1..S_2t. Returns false on decoding failure.
    /// An all-zero syndrome yields true with no errors.
    bool locate(std::span<const Element> syndromes, std::vector<ErrorLocation>& errors);

    int syndrome_count() const noexcept { return 2 * code_.t; }

private:
    CodeSpec code_;
    const Field* f_;
    std::vector<Element> lambda_, prev_, tmp_, omega_, chien_;
};

/// Binary image of a word: symbol j occupies bits [j*symbol_bits, (j+1)*symbol_bits),
/// most significant bit first.
std::vector<std::uint8_t> symbols_to_bits(const CodeSpec& code, std::span<const Element> symbols);
std::vector<Element> bits_to_symbols(const CodeSpec& code, std::span<const std::uint8_t> bits);

/// The same regrouping for an arbitrary symbol width.
void pack_bits(std::span<const std::uint8_t> bits, int symbol_bits, std::span<Element> out);
void unpack_symbols(std::span<const Element> symbols, int symbol_bits, std::span<std::uint8_t> out);

} // namespace gpcb
