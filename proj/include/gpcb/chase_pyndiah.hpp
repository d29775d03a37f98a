#pragma once

#include "gpcb/block_codes.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace gpcb {

/// Normalized LLRs of a binary image, indexed j * symbol_bits + f. Positive
/// values favour bit 1 (antipodal +1).
using SoftWord = std::vector<double>;

inline constexpr int kDefaultReliablePositions = 5;

/// How a bit with no competing candidate is filled.
enum class FallbackRule {
    /// r' = beta * c and w = r' - r.
    soft_output,
    /// w = beta * c and r' = r + w (Pyndiah's block turbo decoder form).
    extrinsic,
};

/// Subset of the least-reliable positions I1..I5 to invert; bit q of `mask`
/// selects I(q+1).
struct TestPattern {
    std::uint8_t mask = 0;

    bool flips(int q) const noexcept { return (mask >> q) & 1u; }
    /// 1-based indices of the flipped least-reliable positions, ascending.
    std::vector<int> positions() const;
    bool operator==(const TestPattern&) const = default;
};

/// The 18 test sequences Y0..Y17 over five least-reliable positions. With
/// fewer positions the list keeps, in order, the entries that only use
/// I1..I(reliable_positions).
std::vector<TestPattern> test_patterns(int reliable_positions = kDefaultReliablePositions);

/// Indices of the `count` smallest |value|, ascending by |value|; ties go to
/// the lower index. `count` is clamped to the word length.
std::vector<std::size_t> least_reliable(std::span<const double> soft, std::size_t count = kDefaultReliablePositions);

/// Distinct codewords produced by bounded-distance decoding of every test
/// sequence. Throws EmptyCandidateSet when all decodes fail.
std::vector<Codeword> chase_candidates(const CodeSpec& code, std::span<const double> soft_in,
                                       int reliable_positions = kDefaultReliablePositions);

struct SisoOutput {
    /// r' per bit position.
    SoftWord soft_out;
    /// w = r' - r.
    SoftWord extrinsic;
    /// Binary image of the decided codeword D.
    std::vector<std::uint8_t> decision;
    /// 1 where a competing candidate with the opposite bit was found.
    std::vector<std::uint8_t> competitor_found;
    /// False when every test sequence failed to decode (hard-decision fallback).
    bool candidates_found = false;
};

/// Squared Euclidean distance between soft values and the antipodal image of
/// `bits` (1 -> +1, 0 -> -1).
double squared_distance(std::span<const double> soft, std::span<const std::uint8_t> bits);

/**
 * Soft output computed from an explicit candidate list (binary images). The
 * decision is the candidate closest to `soft_in`; bit (j,f) gets
 * ((M_competitor - M_decision) / 4) * c when some candidate disagrees with
 * the decision there, and beta * c otherwise. Dense O(candidates * bits)
 * reference for ChaseDecoder.
 */
SisoOutput soft_output_from_candidates(std::span<const double> soft_in,
                                       std::span<const std::vector<std::uint8_t>> candidates, double beta,
                                       FallbackRule rule = FallbackRule::soft_output);

/**
 * Chase-Pyndiah soft-input soft-output decoder for one component code.
 *
 * Test sequences are decoded algebraically from syndromes that are updated
 * incrementally from the hard decision's syndromes, and candidates are kept
 * as sparse sets of bit positions where they differ from the hard decision.
 * Keeps scratch state: use one instance per thread.
 */
class ChaseDecoder {
public:
    explicit ChaseDecoder(const CodeSpec& code, int reliable_positions = kDefaultReliablePositions);

    const CodeSpec& code() const noexcept { return decoder_.code(); }

    /// Runs the full SISO step. `out` buffers are resized as needed.
    void decode(std::span<const double> soft_in, double beta, SisoOutput& out,
                FallbackRule rule = FallbackRule::soft_output);

    /// Builds the candidate set only; returns the number of candidates.
    std::size_t generate(std::span<const double> soft_in);

    /// Binary images of the candidates from the last generate/decode call.
    std::vector<std::vector<std::uint8_t>> candidate_images() const;

private:
    struct Candidate {
        // Sorted bit positions where the candidate differs from the hard decision.
        std::vector<std::uint32_t> flips;
        double metric = 0.0;
    };

    void select_least_reliable(std::span<const double> soft_in);

    SyndromeDecoder decoder_;
    std::vector<TestPattern> patterns_;
    int reliable_positions_;

    std::vector<std::uint8_t> hard_;
    std::vector<Element> symbols_;
    std::vector<Element> base_syndromes_;
    std::vector<Element> syndromes_;
    std::vector<std::vector<Element>> flip_syndromes_;
    std::vector<std::uint32_t> lrp_;
    std::vector<ErrorLocation> errors_;
    std::vector<Candidate> candidates_;
    std::vector<std::uint32_t> scratch_flips_;
    std::vector<std::size_t> order_;
    std::vector<double> competitor_metric_;
};

/// Convenience wrapper around ChaseDecoder.
SisoOutput siso_decode(const CodeSpec& code, std::span<const double> soft_in, double beta,
                       FallbackRule rule = FallbackRule::soft_output,
                       int reliable_positions = kDefaultReliablePositions);

} // namespace gpcb
