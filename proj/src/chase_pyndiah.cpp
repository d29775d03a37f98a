#include "gpcb/chase_pyndiah.hpp"

#include "gpcb/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace gpcb {

namespace {

// Y0..Y17; bit q set means I(q+1) is flipped.
constexpr std::uint8_t kAppendixMasks[18] = {
    0b00000, 0b00001, 0b00010, 0b00011, 0b00100, 0b00101, 0b01000, 0b00110, 0b01001,
    0b00111, 0b10001, 0b01110, 0b01111, 0b10101, 0b11011, 0b11101, 0b11110, 0b11111,
};

constexpr double kNoCompetitor = std::numeric_limits<double>::infinity();

void fill_without_competitor(double soft_in, double sign, double beta, FallbackRule rule, double& soft_out,
                             double& extrinsic)
{
    if (rule == FallbackRule::soft_output) {
        soft_out = beta * sign;
        extrinsic = soft_out - soft_in;
    } else {
        soft_out = soft_in + beta * sign;
        extrinsic = soft_out - soft_in;
    }
}

void check_reliable_positions(int p)
{
    if (p < 1 || p > 5) throw InvalidParams("least-reliable position count must be in [1, 5], got " + std::to_string(p));
}

} // namespace

std::vector<int> TestPattern::positions() const
{
    std::vector<int> out;
    for (int q = 0; q < 8; ++q)
        if (flips(q)) out.push_back(q + 1);
    return out;
}

std::vector<TestPattern> test_patterns(int reliable_positions)
{
    check_reliable_positions(reliable_positions);
    std::vector<TestPattern> out;
    for (auto mask : kAppendixMasks)
        if (mask < (1u << reliable_positions)) out.push_back(TestPattern{mask});
    return out;
}

std::vector<std::size_t> least_reliable(std::span<const double> soft, std::size_t count)
{
    std::vector<std::size_t> idx(soft.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    count = std::min(count, soft.size());
    std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(count), idx.end(),
                      [&](std::size_t a, std::size_t b) {
                          const double ma = std::fabs(soft[a]);
                          const double mb = std::fabs(soft[b]);
                          return ma < mb || (ma == mb && a < b);
                      });
    idx.resize(count);
    return idx;
}

double squared_distance(std::span<const double> soft, std::span<const std::uint8_t> bits)
{
    if (soft.size() != bits.size()) throw LengthMismatch("squared_distance: length mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < soft.size(); ++i) {
        const double diff = soft[i] - (bits[i] ? 1.0 : -1.0);
        acc += diff * diff;
    }
    return acc;
}

SisoOutput soft_output_from_candidates(std::span<const double> soft_in,
                                       std::span<const std::vector<std::uint8_t>> candidates, double beta,
                                       FallbackRule rule)
{
    const std::size_t nbits = soft_in.size();
    SisoOutput out;
    out.soft_out.resize(nbits);
    out.extrinsic.resize(nbits);
    out.competitor_found.assign(nbits, 0);
    if (candidates.empty()) {
        out.candidates_found = false;
        out.decision.resize(nbits);
        for (std::size_t i = 0; i < nbits; ++i) {
            out.decision[i] = soft_in[i] > 0.0;
            fill_without_competitor(soft_in[i], out.decision[i] ? 1.0 : -1.0, beta, rule, out.soft_out[i],
                                    out.extrinsic[i]);
        }
        return out;
    }

    std::vector<double> metric(candidates.size());
    std::size_t best = 0;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
        metric[c] = squared_distance(soft_in, candidates[c]);
        if (metric[c] < metric[best]) best = c;
    }
    out.candidates_found = true;
    out.decision = candidates[best];
    for (std::size_t i = 0; i < nbits; ++i) {
        double competitor = kNoCompetitor;
        for (std::size_t c = 0; c < candidates.size(); ++c)
            if (candidates[c][i] != out.decision[i]) competitor = std::min(competitor, metric[c]);
        const double sign = out.decision[i] ? 1.0 : -1.0;
        if (competitor != kNoCompetitor) {
            out.competitor_found[i] = 1;
            out.soft_out[i] = (competitor - metric[best]) / 4.0 * sign;
            out.extrinsic[i] = out.soft_out[i] - soft_in[i];
        } else {
            fill_without_competitor(soft_in[i], sign, beta, rule, out.soft_out[i], out.extrinsic[i]);
        }
    }
    return out;
}

// ChaseDecoder --------------------------------------------------------------

ChaseDecoder::ChaseDecoder(const CodeSpec& code, int reliable_positions)
    : decoder_(code), patterns_(test_patterns(reliable_positions)), reliable_positions_(reliable_positions)
{
    const auto nbits = static_cast<std::size_t>(code.bit_length());
    const auto ns = static_cast<std::size_t>(decoder_.syndrome_count());
    hard_.resize(nbits);
    symbols_.resize(static_cast<std::size_t>(code.n));
    base_syndromes_.resize(ns);
    syndromes_.resize(ns);
    flip_syndromes_.assign(static_cast<std::size_t>(reliable_positions), std::vector<Element>(ns));
    competitor_metric_.resize(nbits);
}

void ChaseDecoder::select_least_reliable(std::span<const double> soft_in)
{
    // Insertion into a short sorted list; strict comparison keeps the lower
    // index first among equal magnitudes.
    const std::size_t want = std::min<std::size_t>(static_cast<std::size_t>(reliable_positions_), soft_in.size());
    lrp_.clear();
    double mags[8];
    for (std::size_t i = 0; i < soft_in.size(); ++i) {
        const double mag = std::fabs(soft_in[i]);
        if (lrp_.size() == want && !(mag < mags[want - 1])) continue;
        std::size_t pos = lrp_.size() < want ? lrp_.size() : want - 1;
        if (lrp_.size() < want) lrp_.push_back(0);
        while (pos > 0 && mag < mags[pos - 1]) {
            mags[pos] = mags[pos - 1];
            lrp_[pos] = lrp_[pos - 1];
            --pos;
        }
        mags[pos] = mag;
        lrp_[pos] = static_cast<std::uint32_t>(i);
    }
}

std::size_t ChaseDecoder::generate(std::span<const double> soft_in)
{
    const CodeSpec& code = decoder_.code();
    const std::size_t nbits = hard_.size();
    if (soft_in.size() != nbits)
        throw LengthMismatch("soft input has " + std::to_string(soft_in.size()) + " values, " + code.name() +
                             " needs " + std::to_string(nbits));
    const int sb = code.symbol_bits;
    const std::size_t ns = base_syndromes_.size();

    double base_metric = 0.0;
    for (std::size_t i = 0; i < nbits; ++i) {
        hard_[i] = soft_in[i] > 0.0;
        const double d = std::fabs(soft_in[i]) - 1.0;
        base_metric += d * d;
    }
    select_least_reliable(soft_in);

    if (sb == 1) {
        std::copy(hard_.begin(), hard_.end(), symbols_.begin());
    } else {
        pack_bits(hard_, sb, symbols_);
    }
    decoder_.syndromes(symbols_, base_syndromes_);
    for (std::size_t q = 0; q < lrp_.size(); ++q) {
        const auto bit = static_cast<int>(lrp_[q]);
        const auto mask = static_cast<Element>(1u << (sb - 1 - bit % sb));
        decoder_.syndrome_delta(bit / sb, mask, flip_syndromes_[q]);
    }

    candidates_.clear();
    const unsigned available = (1u << lrp_.size()) - 1u;
    for (const TestPattern& pattern : patterns_) {
        if ((pattern.mask & ~available) != 0) continue;
        std::copy(base_syndromes_.begin(), base_syndromes_.end(), syndromes_.begin());
        scratch_flips_.clear();
        for (std::size_t q = 0; q < lrp_.size(); ++q) {
            if (!pattern.flips(static_cast<int>(q))) continue;
            for (std::size_t s = 0; s < ns; ++s) syndromes_[s] ^= flip_syndromes_[q][s];
            scratch_flips_.push_back(lrp_[q]);
        }
        if (!decoder_.locate(syndromes_, errors_)) continue;
        for (const auto& e : errors_)
            for (int f = 0; f < sb; ++f)
                if ((e.value >> (sb - 1 - f)) & 1u)
                    scratch_flips_.push_back(static_cast<std::uint32_t>(e.position * sb + f));

        // XOR semantics: a position flipped twice is unchanged.
        std::sort(scratch_flips_.begin(), scratch_flips_.end());
        std::size_t w = 0;
        for (std::size_t r = 0; r < scratch_flips_.size();) {
            if (r + 1 < scratch_flips_.size() && scratch_flips_[r] == scratch_flips_[r + 1]) {
                r += 2;
            } else {
                scratch_flips_[w++] = scratch_flips_[r++];
            }
        }
        scratch_flips_.resize(w);

        const bool duplicate = std::any_of(candidates_.begin(), candidates_.end(),
                                           [&](const Candidate& c) { return c.flips == scratch_flips_; });
        if (duplicate) continue;

        double metric = base_metric;
        for (auto p : scratch_flips_) metric += 4.0 * std::fabs(soft_in[p]);
        candidates_.push_back(Candidate{scratch_flips_, metric});
    }
    return candidates_.size();
}

void ChaseDecoder::decode(std::span<const double> soft_in, double beta, SisoOutput& out, FallbackRule rule)
{
    generate(soft_in);
    const std::size_t nbits = hard_.size();
    out.soft_out.resize(nbits);
    out.extrinsic.resize(nbits);
    out.decision.resize(nbits);
    out.competitor_found.assign(nbits, 0);

    if (candidates_.empty()) {
        out.candidates_found = false;
        for (std::size_t i = 0; i < nbits; ++i) {
            out.decision[i] = hard_[i];
            fill_without_competitor(soft_in[i], hard_[i] ? 1.0 : -1.0, beta, rule, out.soft_out[i],
                                    out.extrinsic[i]);
        }
        return;
    }
    out.candidates_found = true;

    order_.resize(candidates_.size());
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::size_t a, std::size_t b) { return candidates_[a].metric < candidates_[b].metric; });
    const Candidate& best = candidates_[order_[0]];

    std::copy(hard_.begin(), hard_.end(), out.decision.begin());
    for (auto p : best.flips) out.decision[p] ^= 1u;

    // Visiting competitors by increasing metric, the first one that disagrees
    // with the decision at a position is the closest such codeword.
    std::fill(competitor_metric_.begin(), competitor_metric_.end(), kNoCompetitor);
    auto mark = [&](std::uint32_t p, double metric) {
        if (competitor_metric_[p] == kNoCompetitor) competitor_metric_[p] = metric;
    };
    for (std::size_t o = 1; o < order_.size(); ++o) {
        const Candidate& c = candidates_[order_[o]];
        auto a = best.flips.begin();
        auto b = c.flips.begin();
        while (a != best.flips.end() || b != c.flips.end()) {
            if (b == c.flips.end() || (a != best.flips.end() && *a < *b)) {
                mark(*a++, c.metric);
            } else if (a == best.flips.end() || *b < *a) {
                mark(*b++, c.metric);
            } else {
                ++a;
                ++b;
            }
        }
    }

    for (std::size_t i = 0; i < nbits; ++i) {
        const double sign = out.decision[i] ? 1.0 : -1.0;
        if (competitor_metric_[i] != kNoCompetitor) {
            out.competitor_found[i] = 1;
            out.soft_out[i] = (competitor_metric_[i] - best.metric) / 4.0 * sign;
            out.extrinsic[i] = out.soft_out[i] - soft_in[i];
        } else {
            fill_without_competitor(soft_in[i], sign, beta, rule, out.soft_out[i], out.extrinsic[i]);
        }
    }
}

std::vector<std::vector<std::uint8_t>> ChaseDecoder::candidate_images() const
{
    std::vector<std::vector<std::uint8_t>> out;
    out.reserve(candidates_.size());
    for (const auto& c : candidates_) {
        auto img = hard_;
        for (auto p : c.flips) img[p] ^= 1u;
        out.push_back(std::move(img));
    }
    return out;
}

std::vector<Codeword> chase_candidates(const CodeSpec& code, std::span<const double> soft_in, int reliable_positions)
{
    ChaseDecoder dec(code, reliable_positions);
    if (dec.generate(soft_in) == 0)
        throw EmptyCandidateSet("no test sequence decoded for " + code.name());
    std::vector<Codeword> out;
    for (const auto& img : dec.candidate_images()) out.push_back(bits_to_symbols(code, img));
    return out;
}

SisoOutput siso_decode(const CodeSpec& code, std::span<const double> soft_in, double beta, FallbackRule rule,
                       int reliable_positions)
{
    if (!(beta > 0.0)) throw InvalidParams("beta must be positive");
    ChaseDecoder dec(code, reliable_positions);
    SisoOutput out;
    dec.decode(soft_in, beta, out, rule);
    return out;
}

} // namespace gpcb
