#include "gpcb/errors.hpp"
#include "gpcb/simulator.hpp"

#include <algorithm>

namespace gpcb {

TuningPools TuningPools::defaults()
{
    // Candidate values as listed with the experiment parameters; 0.65 appears
    // twice there.
    TuningPools p;
    p.alpha = {0.0, 0.25, 0.3, 0.4, 0.5, 0.55, 0.6, 0.65, 0.7, 0.75, 0.80, 0.85, 0.9, 0.92, 0.95};
    p.beta = {0.2, 0.25, 0.3, 0.35, 0.4, 0.45, 0.5, 0.55, 0.6, 0.65, 0.7, 0.75, 0.80, 0.85, 0.87, 0.9};
    return p;
}

namespace {

class Evaluator {
public:
    Evaluator(const GpcbSpec& spec, const ChannelSpec& channel, std::uint64_t frames)
        : codec_(std::make_shared<const GpcbCodec>(spec)), decoder_(codec_)
    {
        const double sigma = channel.sigma();
        const std::size_t S = spec.info_bits();
        std::vector<std::uint8_t> codeword(spec.codeword_bits());
        std::vector<double> signal(spec.codeword_bits());
        for (std::uint64_t f = 0; f < frames; ++f) {
            FrameRng rng(channel.seed, f);
            std::vector<std::uint8_t> msg(S);
            for (auto& b : msg) b = rng.next_bit();
            codec_->encode_bits(msg, codeword);
            modulate(codeword, signal);
            awgn(signal, sigma, rng);
            messages_.push_back(std::move(msg));
            llrs_.push_back(channel_llr(signal));
        }
        decoded_.resize(S);
    }

    /// Bit errors after the last iteration of `params`, summed over the set.
    std::uint64_t bit_errors(const DecodeParams& params)
    {
        std::uint64_t errors = 0;
        for (std::size_t f = 0; f < llrs_.size(); ++f) {
            decoder_.decode(llrs_[f], params, decoded_);
            for (std::size_t i = 0; i < decoded_.size(); ++i) errors += decoded_[i] != messages_[f][i];
        }
        return errors;
    }

private:
    std::shared_ptr<const GpcbCodec> codec_;
    IterativeDecoder decoder_;
    std::vector<std::vector<std::uint8_t>> messages_;
    std::vector<SoftWord> llrs_;
    std::vector<std::uint8_t> decoded_;
};

} // namespace

DecodeParams tune_schedule(const GpcbSpec& spec, const ChannelSpec& channel, const TuningPools& pools,
                           const TuningBudget& budget)
{
    if (pools.alpha.empty() || pools.beta.empty()) throw InvalidParams("tuning pools must be non-empty");
    if (budget.iterations < 1) throw InvalidParams("tuning needs at least one iteration");
    if (budget.frames < 1) throw InvalidParams("tuning needs at least one evaluation frame");

    Evaluator eval(spec, channel, budget.frames);
    DecodeParams params;
    params.fallback = budget.fallback;

    // Grid-search one coordinate of one half-iteration, keeping the current
    // value unless a candidate is strictly better.
    auto search = [&](std::vector<double>& schedule, std::size_t h, const std::vector<double>& pool,
                      std::uint64_t& best) {
        double keep = schedule[h];
        for (double v : pool) {
            if (v == keep) continue;
            schedule[h] = v;
            const std::uint64_t e = eval.bit_errors(params);
            if (e < best) {
                best = e;
                keep = v;
            }
        }
        schedule[h] = keep;
    };
    auto tune_half = [&](std::size_t h) {
        std::uint64_t best = eval.bit_errors(params);
        search(params.alpha, h, pools.alpha, best);
        search(params.beta, h, pools.beta, best);
    };

    for (int it = 1; it <= budget.iterations; ++it) {
        params.iterations = it;
        // New halves start from the previous iteration's values.
        for (int half = 0; half < 2; ++half) {
            const bool first = it == 1;
            params.alpha.push_back(first ? pools.alpha.front() : params.alpha[params.alpha.size() - 2]);
            params.beta.push_back(first ? pools.beta.front() : params.beta[params.beta.size() - 2]);
        }
        const auto h0 = static_cast<std::size_t>(2 * (it - 1));
        tune_half(h0);
        tune_half(h0 + 1);
        for (std::size_t h = 0; h < h0; ++h) tune_half(h);
    }
    return params;
}

} // namespace gpcb
