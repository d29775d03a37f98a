#pragma once

#include "gpcb/block_codes.hpp"
#include "gpcb/chase_pyndiah.hpp"
#include "gpcb/interleaver.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace gpcb {

/// c1: interleave code symbols between the two encoders.
/// c2: interleave bits, then regroup them into code2 symbols (BCH + RS pairs).
enum class Construction { c1, c2 };

Construction parse_construction(std::string_view name);
std::string_view to_string(Construction c) noexcept;

struct Rate {
    long num = 0;
    long den = 1;
    double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
    bool operator==(const Rate&) const = default;
};

/**
 * A generalized parallel concatenated block code: M sub-blocks encoded by
 * code1, interleaved, and encoded again by code2. A codeword is the
 * information block followed by all code1 parity and then all code2 parity.
 *
 * The information unit is one code symbol for c1 (a bit for BCH, m bits for
 * RS) and one bit for c2. Soft values and the decoder work on bits.
 */
struct GpcbSpec {
    CodeSpec code1;
    CodeSpec code2;
    int M = 1;
    /// Size and default geometry are filled in by gpcb_spec.
    InterleaverSpec interleaver;
    Construction construction = Construction::c1;

    /// Bits per information unit.
    int unit_bits = 1;
    /// Information length in units: M*k (c1) or M*m*k (c2).
    std::size_t N = 0;
    /// Parity lengths in units.
    std::size_t P1 = 0;
    std::size_t P2 = 0;
    std::size_t P = 0;
    std::size_t L = 0;
    /// k / (n1 + n2 - k), reduced.
    Rate rate;

    /// Number of code1 / code2 component words per frame.
    std::size_t blocks1 = 0;
    std::size_t blocks2 = 0;

    std::size_t info_bits() const noexcept { return N * static_cast<std::size_t>(unit_bits); }
    std::size_t parity1_bits() const noexcept { return P1 * static_cast<std::size_t>(unit_bits); }
    std::size_t parity2_bits() const noexcept { return P2 * static_cast<std::size_t>(unit_bits); }
    std::size_t codeword_bits() const noexcept { return L * static_cast<std::size_t>(unit_bits); }

    /// Length and dimension counted in code symbols, M*(n1+n2-k) and M*k:
    /// the pair used in code names such as GPCB-BCH-RS(75,51).
    std::size_t symbol_length() const noexcept;
    std::size_t symbol_dimension() const noexcept;
    /// "GPCB-BCH(750,510)", "GPCB-RS(73,53)", "GPCB-BCH-RS(141,113)".
    std::string name() const;
};

/// Validates compatibility and derives every length. `interleaver` supplies
/// pattern, seed and optional shift/geometry; size is always overwritten and
/// rows/cols default to M x k (c1) or M*m x k (c2). Throws IncompatibleCodes.
GpcbSpec gpcb_spec(CodeSpec code1, CodeSpec code2, int M, InterleaverSpec interleaver, Construction construction);

/**
 * Per half-iteration weights. Half-iteration h (0-based) runs code1 when h
 * is even and code2 when odd. alpha[h] scales the extrinsic information from
 * the other decoder; beta[h] is the no-competitor reliability.
 */
struct DecodeParams {
    int iterations = 8;
    std::vector<double> alpha;
    std::vector<double> beta;
    /// Bits without a competitor take w = beta * c unless set otherwise.
    FallbackRule fallback = FallbackRule::extrinsic;

    /// Default 16-entry schedules truncated/extended to `iterations`.
    static DecodeParams defaults(int iterations = 8);
    /// Throws InvalidParams on short schedules or out-of-range weights.
    void validate() const;
};

/// The default alpha/beta schedules for 8 iterations.
const std::vector<double>& default_alpha_schedule();
const std::vector<double>& default_beta_schedule();

/// Encoder and iterative decoder bound to one GpcbSpec.
class GpcbCodec {
public:
    explicit GpcbCodec(GpcbSpec spec);

    const GpcbSpec& spec() const noexcept { return spec_; }
    /// Interleaver over information bits.
    const Permutation& bit_permutation() const noexcept { return bit_perm_; }

    std::vector<std::uint8_t> encode_bits(std::span<const std::uint8_t> message_bits) const;
    void encode_bits(std::span<const std::uint8_t> message_bits, std::span<std::uint8_t> codeword) const;
    /// Unit-level interface: N units in, L units out.
    std::vector<Element> encode(std::span<const Element> message) const;

    std::vector<Element> bits_to_units(std::span<const std::uint8_t> bits) const;
    std::vector<std::uint8_t> units_to_bits(std::span<const Element> units) const;

private:
    GpcbSpec spec_;
    Permutation bit_perm_;
};

/// Sees each component decoder input, for tests and diagnostics.
class DecodeObserver {
public:
    virtual ~DecodeObserver() = default;
    /// `info_positions[i]` is the information-bit index feeding input i of the
    /// systematic part; the rest of `input` is that block's parity.
    virtual void on_component_input(int half_iteration, std::size_t block, std::span<const double> input,
                                    std::span<const std::size_t> info_positions) = 0;
};

/// Called after each half-iteration with the hard decision on the information bits.
using HalfIterationCallback = std::function<void(int half_iteration, std::span<const std::uint8_t> decision)>;

/**
 * Iterative decoder: code1 and code2 Chase-Pyndiah decoders alternate, each
 * feeding channel + alpha * (other decoder's extrinsic) on the information
 * bits and the untouched channel values on its own parity bits. Keeps
 * scratch buffers; use one instance per thread.
 */
class IterativeDecoder {
public:
    explicit IterativeDecoder(std::shared_ptr<const GpcbCodec> codec);

    /// `channel` holds codeword_bits() normalized LLRs; writes info_bits()
    /// decisions to `message_bits`.
    void decode(std::span<const double> channel, const DecodeParams& params, std::span<std::uint8_t> message_bits,
                const HalfIterationCallback& on_half = {}, DecodeObserver* observer = nullptr);

private:
    std::shared_ptr<const GpcbCodec> codec_;
    ChaseDecoder dec1_;
    ChaseDecoder dec2_;
    std::vector<double> w1_, w2_, input_;
    std::vector<std::size_t> positions_;
    std::vector<std::uint8_t> decision_;
    SisoOutput out_;
};

struct IterativeResult {
    std::vector<Element> message;
    /// Hard decision on the information bits after every half-iteration.
    std::vector<std::vector<std::uint8_t>> half_iteration_decisions;
};

/// One-shot decode returning N units plus per-half-iteration snapshots.
IterativeResult decode_iterative(const GpcbSpec& spec, std::span<const double> channel, const DecodeParams& params);

} // namespace gpcb
