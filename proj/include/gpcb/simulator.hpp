#pragma once

#include "gpcb/gpcb.hpp"

#include <cstdint>
#include <iosfwd>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace gpcb {

/// sigma = sqrt(1 / (2 * rate * 10^(Eb/N0 / 10))) for unit-energy BPSK.
double ebn0_to_sigma(double ebn0_db, double rate);

struct ChannelSpec {
    double ebn0_db = 0.0;
    /// Information bits per channel bit.
    double rate = 1.0;
    std::uint64_t seed = 1;

    double sigma() const { return ebn0_to_sigma(ebn0_db, rate); }
};

/**
 * Reproducible random stream for one frame: mt19937_64 seeded from a mix of
 * (seed, stream index), uniform doubles from the top 53 bits and Gaussians
 * from the Marsaglia polar method. Independent of the standard library's
 * distribution implementations.
 */
class FrameRng {
public:
    FrameRng(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t next_u64() { return engine_(); }
    std::uint8_t next_bit() { return static_cast<std::uint8_t>(engine_() >> 63); }
    /// Uniform in [0, 1).
    double uniform();
    double gaussian();

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// Bit 1 -> +1.0, bit 0 -> -1.0.
std::vector<double> modulate(std::span<const std::uint8_t> bits);
void modulate(std::span<const std::uint8_t> bits, std::span<double> out);

/// Adds i.i.d. N(0, sigma^2) noise in place.
void awgn(std::span<double> symbols, double sigma, FrameRng& rng);
std::vector<double> awgn(std::span<const double> symbols, const ChannelSpec& channel, FrameRng& rng);

/// In the normalized domain (LLR scaled by sigma^2 / 2) the channel LLR is
/// the received sample itself.
SoftWord channel_llr(std::span<const double> received);

struct StopRule {
    /// Stop once the last iteration has this many frame errors...
    std::uint64_t min_frame_errors = 100;
    /// ...or this many frames were simulated.
    std::uint64_t max_frames = 1'000'000;
};

struct RunOptions {
    /// 0 selects std::thread::hardware_concurrency().
    unsigned threads = 0;
    /// Frames per batch; the stop rule is checked between batches so results
    /// do not depend on the thread count.
    std::uint64_t batch_frames = 8;
};

struct IterationStats {
    std::uint64_t bit_errors = 0;
    std::uint64_t frame_errors = 0;
    std::uint64_t bits = 0;
    std::uint64_t frames = 0;

    double ber() const noexcept { return bits ? static_cast<double>(bit_errors) / static_cast<double>(bits) : 0.0; }
    double fer() const noexcept
    {
        return frames ? static_cast<double>(frame_errors) / static_cast<double>(frames) : 0.0;
    }
    IterationStats& operator+=(const IterationStats& o) noexcept;
    bool operator==(const IterationStats&) const = default;
};

struct SimResult {
    std::string code;
    std::string construction;
    int M = 1;
    std::string interleaver;
    std::uint64_t seed = 0;
    double ebn0_db = 0.0;
    /// Index i holds the statistics after iteration i + 1.
    std::vector<IterationStats> iterations;
    double wall_seconds = 0.0;

    const IterationStats& final_iteration() const { return iterations.back(); }
};

/// Monte Carlo BER/FER over information bits. Frame f draws its message and
/// noise from FrameRng(channel.seed, f).
SimResult run_ber(const GpcbSpec& spec, const DecodeParams& params, const ChannelSpec& channel, const StopRule& stop,
                  const RunOptions& options = {});

/// Uncoded BPSK over the same channel model (hard decisions on samples).
SimResult run_uncoded_ber(std::size_t bits_per_frame, const ChannelSpec& channel, const StopRule& stop);

/// Q(x) = P(N(0,1) > x).
double q_function(double x);

/// CSV schema shared with the plotting tool.
inline constexpr const char* kCsvHeader =
    "code,construction,M,interleaver,seed,ebn0_db,iteration,bits,frames,bit_errors,frame_errors,ber,fer";

void write_csv_header(std::ostream& os);
/// One row per iteration.
void write_csv_rows(std::ostream& os, const SimResult& result);

// Schedule tuning -----------------------------------------------------------

struct TuningPools {
    std::vector<double> alpha;
    std::vector<double> beta;

    /// The candidate values listed with the experiment parameters (duplicates removed).
    static TuningPools defaults();
};

struct TuningBudget {
    int iterations = 8;
    /// Frames in the fixed evaluation set.
    std::uint64_t frames = 20;
    FallbackRule fallback = FallbackRule::extrinsic;
};

/**
 * Greedy coordinate search over the pools. Each added iteration starts from
 * the previous iteration's values (the first pool elements for iteration 1),
 * then each of its two half-iterations gets alpha grid-searched and then beta, scoring the
 * bit errors after that iteration on a fixed evaluation set drawn from
 * channel.seed. Before moving to the next iteration, every earlier
 * half-iteration is revisited once with the iteration count unchanged.
 * A value only replaces the current one on a strict improvement, so on a
 * flat objective every entry stays at the first pool element.
 */
DecodeParams tune_schedule(const GpcbSpec& spec, const ChannelSpec& channel, const TuningPools& pools,
                           const TuningBudget& budget);

} // namespace gpcb
