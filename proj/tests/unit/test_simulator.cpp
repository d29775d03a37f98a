#include "reference_table.hpp"

#include <doctest.h>

#include <gpcb/errors.hpp>
#include <gpcb/simulator.hpp>

#include <cmath>
#include <sstream>

using namespace gpcb;

TEST_CASE("modulation")
{
    CHECK(modulate(std::vector<std::uint8_t>{1, 0, 1}) == std::vector<double>{1.0, -1.0, 1.0});
    CHECK(modulate(std::vector<std::uint8_t>{}).empty());
    for (double v : modulate(std::vector<std::uint8_t>(9, 1))) CHECK(v == 1.0);
}

TEST_CASE("channel LLR is the received sample")
{
    const std::vector<double> r{1.3, -0.2, 0.0};
    CHECK(channel_llr(r) == r);
}

TEST_CASE("sigma conversion")
{
    CHECK(ebn0_to_sigma(0.0, 0.5) == doctest::Approx(1.0));
    CHECK(ebn0_to_sigma(10.0, 0.5) == doctest::Approx(std::sqrt(0.1)));
    for (double db : {-2.0, 0.0, 3.0, 7.5})
        for (double rate : {0.3, 0.68, 0.91}) CHECK(ebn0_to_sigma(db, 2 * rate) == doctest::Approx(ebn0_to_sigma(db, rate) / std::sqrt(2.0)));
    CHECK(ChannelSpec{3.0, 0.8, 1}.sigma() == doctest::Approx(ebn0_to_sigma(3.0, 0.8)));
}

TEST_CASE("noise moments")
{
    const double sigma = 0.8;
    std::vector<double> x(1'000'000, 0.0);
    FrameRng rng(123, 0);
    awgn(x, sigma, rng);
    double sum = 0.0, sq = 0.0;
    for (double v : x) sum += v;
    const double mean = sum / static_cast<double>(x.size());
    for (double v : x) sq += (v - mean) * (v - mean);
    const double var = sq / static_cast<double>(x.size() - 1);
    CHECK(std::abs(mean) <= 5.0 * sigma / 1000.0);
    CHECK(std::abs(var / (sigma * sigma) - 1.0) < 0.01);

    std::vector<double> y{0.5, -0.5};
    awgn(y, 0.0, rng);
    CHECK(y == std::vector<double>{0.5, -0.5});
}

TEST_CASE("uniform stream")
{
    FrameRng rng(9, 4);
    double sum = 0.0;
    for (int i = 0; i < 100000; ++i) {
        const double u = rng.uniform();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        sum += u;
    }
    CHECK(sum / 100000.0 == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("frame streams are reproducible and distinct")
{
    FrameRng a(1, 7), b(1, 7), c(1, 8), d(2, 7);
    const auto va = a.next_u64();
    CHECK(va == b.next_u64());
    CHECK(va != c.next_u64());
    CHECK(va != d.next_u64());
}

TEST_CASE("Q function")
{
    CHECK(q_function(0.0) == doctest::Approx(0.5));
    CHECK(q_function(1.0) == doctest::Approx(0.158655253931457));
    CHECK(q_function(3.0) == doctest::Approx(0.00134989803163009));
    CHECK(q_function(-1.0) == doctest::Approx(1.0 - 0.158655253931457));
}

TEST_CASE("uncoded BPSK matches the Q function")
{
    for (double db : {0.0, 2.0, 4.0}) {
        const auto res = run_uncoded_ber(10000, ChannelSpec{db, 1.0, 3}, StopRule{1'000'000, 100});
        const auto& s = res.final_iteration();
        const double p = q_function(std::sqrt(2.0 * std::pow(10.0, db / 10.0)));
        const double sd = std::sqrt(p * (1 - p) / static_cast<double>(s.bits));
        CHECK(s.bits == 1'000'000);
        CHECK(std::abs(s.ber() - p) <= 3 * sd);
    }
}

TEST_CASE("zero noise gives zero errors")
{
    auto c = rs_spec(Field::shared(6), 5);
    const auto spec = gpcb_spec(c, c, 2, {}, Construction::c1);
    const auto res = run_ber(spec, DecodeParams::defaults(3), ChannelSpec{200.0, spec.rate.value(), 1},
                             StopRule{1, 24});
    REQUIRE(res.iterations.size() == 3);
    for (const auto& it : res.iterations) {
        CHECK(it.bit_errors == 0);
        CHECK(it.frames == 24);
        CHECK(it.bits == 24 * spec.info_bits());
    }
    CHECK_THROWS_AS(run_ber(spec, DecodeParams::defaults(3), ChannelSpec{1.0, 0.7, 1}, StopRule{0, 10}), InvalidParams);
}

TEST_CASE("results do not depend on thread count")
{
    auto c = bch_spec(Field::shared(6), 2);
    const auto spec = gpcb_spec(c, c, 2, {}, Construction::c1);
    const ChannelSpec ch{2.0, spec.rate.value(), 42};
    const StopRule stop{5, 64};
    const auto a = run_ber(spec, DecodeParams::defaults(4), ch, stop, RunOptions{1, 8});
    const auto b = run_ber(spec, DecodeParams::defaults(4), ch, stop, RunOptions{1, 8});
    const auto d = run_ber(spec, DecodeParams::defaults(4), ch, stop, RunOptions{3, 8});
    CHECK(a.iterations == b.iterations);
    CHECK(a.iterations == d.iterations);
    const auto e = run_ber(spec, DecodeParams::defaults(4), ChannelSpec{2.0, spec.rate.value(), 43}, stop, RunOptions{1, 8});
    CHECK(a.iterations != e.iterations);
}

TEST_CASE("stop rule")
{
    auto c = bch_spec(Field::shared(6), 2);
    const auto spec = gpcb_spec(c, c, 1, {}, Construction::c1);
    const auto res = run_ber(spec, DecodeParams::defaults(2), ChannelSpec{0.0, spec.rate.value(), 1}, StopRule{10, 10000},
                             RunOptions{1, 8});
    const auto& last = res.final_iteration();
    CHECK(last.frame_errors >= 10);
    CHECK(last.frames % 8 == 0);
    CHECK(last.frames < 10000);
    // Errors never exceed the batch that crossed the threshold by more than a batch.
    CHECK(last.frame_errors < 10 + 8);
    for (const auto& it : res.iterations) {
        CHECK(it.frames == last.frames);
        CHECK(it.bits == last.frames * spec.info_bits());
        CHECK(it.bit_errors >= it.frame_errors);
    }
    const auto capped = run_ber(spec, DecodeParams::defaults(2), ChannelSpec{9.0, spec.rate.value(), 1},
                                StopRule{100, 20}, RunOptions{1, 8});
    CHECK(capped.final_iteration().frames == 20);
}

TEST_CASE("result metadata and CSV")
{
    auto c = rs_spec(Field::shared(6), 5);
    InterleaverSpec il;
    il.pattern = InterleaverPattern::block;
    const auto spec = gpcb_spec(c, c, 1, il, Construction::c1);
    auto res = run_ber(spec, DecodeParams::defaults(2), ChannelSpec{3.5, spec.rate.value(), 77}, StopRule{1, 8});
    CHECK(res.code == "GPCB-RS(73,53)");
    CHECK(res.construction == "c1");
    CHECK(res.interleaver == "block");
    CHECK(res.seed == 77);
    CHECK(res.M == 1);
    CHECK(res.ebn0_db == 3.5);

    res.iterations = {IterationStats{3, 1, 5300, 100}, IterationStats{0, 0, 5300, 100}};
    std::ostringstream os;
    write_csv_header(os);
    write_csv_rows(os, res);
    CHECK(os.str() == "code,construction,M,interleaver,seed,ebn0_db,iteration,bits,frames,bit_errors,frame_errors,ber,fer\n"
                      "\"GPCB-RS(73,53)\",c1,1,block,77,3.5,1,5300,100,3,1,0.000566038,0.01\n"
                      "\"GPCB-RS(73,53)\",c1,1,block,77,3.5,2,5300,100,0,0,0,0\n");
}

TEST_CASE("iteration statistics")
{
    IterationStats a{1, 1, 10, 2}, b{2, 0, 10, 2};
    a += b;
    CHECK(a == IterationStats{3, 1, 20, 4});
    CHECK(a.ber() == doctest::Approx(0.15));
    CHECK(a.fer() == doctest::Approx(0.25));
    CHECK(IterationStats{}.ber() == 0.0);
}

namespace {

SimResult rs73_run(double ebn0_db)
{
    const auto row = reference::table()[14];
    REQUIRE(row.name == "GPCB-RS(7300,5300)");
    InterleaverSpec il;
    il.seed = 7;
    const auto spec = reference::make_spec(row, il);
    return run_ber(spec, DecodeParams::defaults(8), ChannelSpec{ebn0_db, spec.rate.value(), 1}, StopRule{100, 120});
}

void check_iteration_trend(const SimResult& res)
{
    const auto& first = res.iterations.front();
    const auto& last = res.final_iteration();
    std::string shown;
    for (const auto& it : res.iterations) shown += std::to_string(it.ber()) + " ";
    MESSAGE(res.ebn0_db << " dB per-iteration BER: " << shown);
    CHECK(first.frame_errors >= 100);
    CHECK(last.ber() < first.ber());
    for (std::size_t i = 1; i < res.iterations.size(); ++i) {
        const auto& a = res.iterations[i - 1];
        const auto& b = res.iterations[i];
        const double sd = std::sqrt(a.ber() * (1 - a.ber()) / static_cast<double>(a.bits) +
                                    b.ber() * (1 - b.ber()) / static_cast<double>(b.bits));
        CHECK(b.ber() <= a.ber() + 2 * sd);
    }
}

} // namespace

TEST_CASE("GPCB-RS(73,53) with M = 100 improves over iterations at 3.0 dB")
{
    check_iteration_trend(rs73_run(3.0));
}

TEST_CASE("GPCB-RS(73,53) with M = 100 improves over iterations at 4.5 dB")
{
    check_iteration_trend(rs73_run(4.5));
}
