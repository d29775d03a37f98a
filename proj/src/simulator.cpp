#include "gpcb/simulator.hpp"

#include "gpcb/errors.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

namespace gpcb {

namespace {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

std::string csv_field(const std::string& v)
{
    if (v.find_first_of(",\"\n") == std::string::npos) return v;
    std::string out = "\"";
    for (char c : v) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string format_float(double v)
{
    std::ostringstream os;
    os << std::setprecision(6) << v;
    return os.str();
}

// Runs `frame(worker, index)` for indices [first, last) on up to `threads`
// workers; the per-frame work must be independent.
template <typename Fn>
void parallel_frames(unsigned threads, std::uint64_t first, std::uint64_t last, Fn&& frame)
{
    if (threads <= 1 || last - first <= 1) {
        for (std::uint64_t f = first; f < last; ++f) frame(0u, f);
        return;
    }
    std::atomic<std::uint64_t> next{first};
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w)
        pool.emplace_back([&, w] {
            for (std::uint64_t f = next++; f < last; f = next++) frame(w, f);
        });
}

} // namespace

double ebn0_to_sigma(double ebn0_db, double rate)
{
    if (!(rate > 0.0)) throw InvalidParams("rate must be positive");
    return std::sqrt(1.0 / (2.0 * rate * std::pow(10.0, ebn0_db / 10.0)));
}

FrameRng::FrameRng(std::uint64_t seed, std::uint64_t stream)
    : engine_(splitmix64(seed ^ splitmix64(stream ^ 0x5851F42D4C957F2Dull)))
{
}

double FrameRng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double FrameRng::gaussian()
{
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u, v, s;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double scale = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * scale;
    has_spare_ = true;
    return u * scale;
}

std::vector<double> modulate(std::span<const std::uint8_t> bits)
{
    std::vector<double> out(bits.size());
    modulate(bits, out);
    return out;
}

void modulate(std::span<const std::uint8_t> bits, std::span<double> out)
{
    if (bits.size() != out.size()) throw LengthMismatch("modulate: output size mismatch");
    for (std::size_t i = 0; i < bits.size(); ++i) out[i] = bits[i] ? 1.0 : -1.0;
}

void awgn(std::span<double> symbols, double sigma, FrameRng& rng)
{
    if (sigma < 0.0) throw InvalidParams("sigma must be non-negative");
    for (double& s : symbols) s += sigma * rng.gaussian();
}

std::vector<double> awgn(std::span<const double> symbols, const ChannelSpec& channel, FrameRng& rng)
{
    std::vector<double> out(symbols.begin(), symbols.end());
    awgn(out, channel.sigma(), rng);
    return out;
}

SoftWord channel_llr(std::span<const double> received) { return SoftWord(received.begin(), received.end()); }

IterationStats& IterationStats::operator+=(const IterationStats& o) noexcept
{
    bit_errors += o.bit_errors;
    frame_errors += o.frame_errors;
    bits += o.bits;
    frames += o.frames;
    return *this;
}

double q_function(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

SimResult run_ber(const GpcbSpec& spec, const DecodeParams& params, const ChannelSpec& channel, const StopRule& stop,
                  const RunOptions& options)
{
    if (stop.min_frame_errors < 1) throw InvalidParams("min_frame_errors must be at least 1");
    params.validate();
    const auto start = std::chrono::steady_clock::now();

    auto codec = std::make_shared<const GpcbCodec>(spec);
    const unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
    const std::uint64_t batch = std::max<std::uint64_t>(1, options.batch_frames);
    const double sigma = channel.sigma();
    const std::size_t S = spec.info_bits();
    const std::size_t C = spec.codeword_bits();
    const auto iters = static_cast<std::size_t>(params.iterations);

    struct Worker {
        IterativeDecoder decoder;
        std::vector<std::uint8_t> message, codeword, decoded;
        std::vector<double> signal;
        std::vector<IterationStats> stats;
    };
    std::vector<Worker> workers;
    workers.reserve(threads);
    for (unsigned w = 0; w < threads; ++w)
        workers.push_back(Worker{IterativeDecoder(codec), std::vector<std::uint8_t>(S), std::vector<std::uint8_t>(C),
                                 std::vector<std::uint8_t>(S), std::vector<double>(C),
                                 std::vector<IterationStats>(iters)});

    auto run_frame = [&](unsigned w, std::uint64_t f) {
        Worker& wk = workers[w];
        FrameRng rng(channel.seed, f);
        for (auto& b : wk.message) b = rng.next_bit();
        codec->encode_bits(wk.message, wk.codeword);
        modulate(wk.codeword, wk.signal);
        awgn(wk.signal, sigma, rng);
        wk.decoder.decode(channel_llr(wk.signal), params, wk.decoded, [&](int h, std::span<const std::uint8_t> d) {
            if (h % 2 == 0) return;
            std::uint64_t errors = 0;
            for (std::size_t i = 0; i < S; ++i) errors += d[i] != wk.message[i];
            IterationStats& st = wk.stats[static_cast<std::size_t>(h / 2)];
            st.bit_errors += errors;
            st.frame_errors += errors != 0;
            st.bits += S;
            st.frames += 1;
        });
    };

    SimResult result;
    result.code = spec.name();
    result.construction = std::string(to_string(spec.construction));
    result.M = spec.M;
    result.interleaver = std::string(to_string(spec.interleaver.pattern));
    result.seed = channel.seed;
    result.ebn0_db = channel.ebn0_db;
    result.iterations.assign(iters, IterationStats{});

    std::uint64_t done = 0;
    while (done < stop.max_frames && result.iterations.back().frame_errors < stop.min_frame_errors) {
        const std::uint64_t last = std::min(stop.max_frames, done + batch);
        parallel_frames(threads, done, last, run_frame);
        for (auto& wk : workers)
            for (std::size_t i = 0; i < iters; ++i) {
                result.iterations[i] += wk.stats[i];
                wk.stats[i] = IterationStats{};
            }
        done = last;
    }
    result.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

SimResult run_uncoded_ber(std::size_t bits_per_frame, const ChannelSpec& channel, const StopRule& stop)
{
    if (stop.min_frame_errors < 1) throw InvalidParams("min_frame_errors must be at least 1");
    const auto start = std::chrono::steady_clock::now();
    const double sigma = channel.sigma();
    SimResult result;
    result.code = "uncoded";
    result.construction = "none";
    result.interleaver = "none";
    result.seed = channel.seed;
    result.ebn0_db = channel.ebn0_db;
    result.iterations.assign(1, IterationStats{});
    IterationStats& st = result.iterations[0];

    std::vector<std::uint8_t> bits(bits_per_frame);
    std::vector<double> signal(bits_per_frame);
    for (std::uint64_t f = 0; f < stop.max_frames && st.frame_errors < stop.min_frame_errors; ++f) {
        FrameRng rng(channel.seed, f);
        for (auto& b : bits) b = rng.next_bit();
        modulate(bits, signal);
        awgn(signal, sigma, rng);
        std::uint64_t errors = 0;
        for (std::size_t i = 0; i < bits_per_frame; ++i) errors += (signal[i] > 0.0) != (bits[i] != 0);
        st.bit_errors += errors;
        st.frame_errors += errors != 0;
        st.bits += bits_per_frame;
        st.frames += 1;
    }
    result.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

void write_csv_header(std::ostream& os) { os << kCsvHeader << '\n'; }

void write_csv_rows(std::ostream& os, const SimResult& r)
{
    for (std::size_t i = 0; i < r.iterations.size(); ++i) {
        const IterationStats& s = r.iterations[i];
        os << csv_field(r.code) << ',' << csv_field(r.construction) << ',' << r.M << ',' << csv_field(r.interleaver) << ',' << r.seed << ','
           << format_float(r.ebn0_db) << ',' << (i + 1) << ',' << s.bits << ',' << s.frames << ',' << s.bit_errors
           << ',' << s.frame_errors << ',' << format_float(s.ber()) << ',' << format_float(s.fer()) << '\n';
    }
}

} // namespace gpcb
