#include "reference_table.hpp"

#include <doctest.h>

#include <gpcb/errors.hpp>
#include <gpcb/gpcb.hpp>
#include <gpcb/simulator.hpp>

#include <algorithm>
#include <numeric>
#include <random>

using namespace gpcb;

namespace {

std::vector<std::uint8_t> random_bits(std::size_t n, std::mt19937_64& rng)
{
    std::vector<std::uint8_t> b(n);
    for (auto& v : b) v = static_cast<std::uint8_t>(rng() & 1u);
    return b;
}

std::vector<double> noiseless(const std::vector<std::uint8_t>& bits) { return modulate(bits); }

InterleaverSpec pattern(InterleaverPattern p, std::uint64_t seed = 3)
{
    InterleaverSpec s;
    s.pattern = p;
    s.seed = seed;
    return s;
}

} // namespace

TEST_CASE("reference table lengths and rates")
{
    REQUIRE(reference::table().size() == 36);
    for (const auto& row : reference::table()) {
        const auto spec = reference::make_spec(row);
        CAPTURE(row.name);
        CHECK(spec.symbol_length() == row.L);
        CHECK(spec.symbol_dimension() == row.N);
        CHECK(spec.name() == row.name);
        CHECK(reference::rate_2dp(spec.rate) == row.rate);
        const long k = spec.code1.k, n1 = spec.code1.n, n2 = spec.code2.n;
        CHECK(spec.rate.value() == doctest::Approx(static_cast<double>(k) / static_cast<double>(n1 + n2 - k)));
        CHECK(std::gcd(spec.rate.num, spec.rate.den) == 1);
        CHECK(spec.P == spec.P1 + spec.P2);
        CHECK(spec.L == spec.N + spec.P);
        if (spec.construction == Construction::c1) {
            CHECK(spec.L == row.L);
            CHECK(spec.N == row.N);
        }
        CHECK(spec.info_bits() * static_cast<std::size_t>(spec.rate.den) ==
              spec.codeword_bits() * static_cast<std::size_t>(spec.rate.num));
    }
}

TEST_CASE("rate does not depend on M")
{
    auto c = bch_spec(Field::shared(6), 2);
    const auto r1 = gpcb_spec(c, c, 1, {}, Construction::c1).rate;
    CHECK(gpcb_spec(c, c, 37, {}, Construction::c1).rate == r1);
    CHECK(r1 == Rate{17, 25});
}

TEST_CASE("construction 2 lengths in bits")
{
    const auto pair = pair_construction2(Field::shared(6), 2);
    const auto spec = gpcb_spec(pair.bch, pair.rs, 1, {}, Construction::c2);
    CHECK(spec.info_bits() == 306);
    CHECK(spec.codeword_bits() == 450);
    CHECK(spec.codeword_bits() == 6 * 75);
    CHECK(spec.blocks1 == 6);
    CHECK(spec.blocks2 == 1);
    CHECK(spec.interleaver.size == 306);
}

TEST_CASE("incompatible codes")
{
    auto b6 = bch_spec(Field::shared(6), 2);
    auto b7 = bch_spec(Field::shared(7), 2);
    auto r6 = rs_spec(Field::shared(6), 6);
    auto r6b = rs_spec(Field::shared(6), 5);
    CHECK_THROWS_AS(gpcb_spec(b6, b7, 1, {}, Construction::c1), IncompatibleCodes);
    CHECK_THROWS_AS(gpcb_spec(b6, r6, 1, {}, Construction::c1), IncompatibleCodes);
    CHECK_THROWS_AS(gpcb_spec(b6, r6b, 1, {}, Construction::c2), IncompatibleCodes);
    CHECK_THROWS_AS(gpcb_spec(b6, b6, 1, {}, Construction::c2), IncompatibleCodes);
    CHECK_THROWS_AS(gpcb_spec(b6, b6, 0, {}, Construction::c1), IncompatibleCodes);
}

TEST_CASE("encoding is systematic and linear")
{
    std::mt19937_64 rng(1);
    for (const auto& row : reference::table()) {
        if (row.M > 10) continue;
        for (auto p : all_interleaver_patterns()) {
            const GpcbCodec codec(reference::make_spec(row, pattern(p)));
            const auto& s = codec.spec();
            const auto zero = codec.encode_bits(std::vector<std::uint8_t>(s.info_bits(), 0));
            CHECK(std::all_of(zero.begin(), zero.end(), [](auto b) { return b == 0; }));
            const auto a = random_bits(s.info_bits(), rng);
            const auto b = random_bits(s.info_bits(), rng);
            const auto ca = codec.encode_bits(a);
            const auto cb = codec.encode_bits(b);
            REQUIRE(ca.size() == s.codeword_bits());
            CHECK(std::equal(a.begin(), a.end(), ca.begin()));
            std::vector<std::uint8_t> ab(a.size());
            for (std::size_t i = 0; i < a.size(); ++i) ab[i] = a[i] ^ b[i];
            const auto cab = codec.encode_bits(ab);
            for (std::size_t i = 0; i < cab.size(); ++i) REQUIRE(cab[i] == (ca[i] ^ cb[i]));
        }
    }
}

TEST_CASE("unit-level encoding")
{
    auto c = rs_spec(Field::shared(6), 5);
    const GpcbCodec codec(gpcb_spec(c, c, 10, pattern(InterleaverPattern::random), Construction::c1));
    std::mt19937_64 rng(2);
    std::vector<Element> msg(codec.spec().N);
    for (auto& v : msg) v = static_cast<Element>(rng() % 64);
    const auto cw = codec.encode(msg);
    CHECK(cw.size() == 10u * (63 + 63 - 53));
    CHECK(std::equal(msg.begin(), msg.end(), cw.begin()));
    CHECK(codec.units_to_bits(cw) == codec.encode_bits(codec.units_to_bits(msg)));
    CHECK(codec.bits_to_units(codec.units_to_bits(msg)) == msg);
    CHECK_THROWS_AS(codec.encode(std::vector<Element>(5)), LengthMismatch);
}

TEST_CASE("parity segments match independent component encodings")
{
    std::mt19937_64 rng(12);
    // Construction 1 over RS symbols.
    {
        auto c = rs_spec(Field::shared(4), 2);
        auto il = pattern(InterleaverPattern::random, 77);
        const GpcbCodec codec(gpcb_spec(c, c, 3, il, Construction::c1));
        const auto& s = codec.spec();
        std::vector<Element> msg(s.N);
        for (auto& v : msg) v = static_cast<Element>(rng() % 16);
        const auto cw = codec.encode(msg);
        const auto perm = build(s.interleaver);
        const auto inter = perm.apply(std::span<const Element>(msg));
        for (int b = 0; b < 3; ++b) {
            const auto k = static_cast<std::size_t>(c.k), p = static_cast<std::size_t>(c.n - c.k);
            const auto c1 = encode_systematic(c, std::span<const Element>(msg).subspan(b * k, k));
            const auto c2 = encode_systematic(c, std::span<const Element>(inter).subspan(b * k, k));
            for (std::size_t i = 0; i < p; ++i) {
                CHECK(cw[s.N + b * p + i] == c1[k + i]);
                CHECK(cw[s.N + s.P1 + b * p + i] == c2[k + i]);
            }
        }
    }
    // Construction 2: BCH over bit blocks, RS over regrouped interleaved bits.
    {
        const auto pair = pair_construction2(Field::shared(6), 2);
        const GpcbCodec codec(gpcb_spec(pair.bch, pair.rs, 2, pattern(InterleaverPattern::random, 5), Construction::c2));
        const auto& s = codec.spec();
        const auto msg = random_bits(s.info_bits(), rng);
        const auto cw = codec.encode_bits(msg);
        const auto perm = build(s.interleaver);
        const auto inter = perm.apply(std::span<const std::uint8_t>(msg));
        const std::size_t k = 51;
        for (std::size_t b = 0; b < 12; ++b) {
            std::vector<Element> m(msg.begin() + static_cast<std::ptrdiff_t>(b * k), msg.begin() + static_cast<std::ptrdiff_t>((b + 1) * k));
            const auto c1 = encode_systematic(pair.bch, m);
            for (std::size_t i = 0; i < 12; ++i) CHECK(cw[s.info_bits() + b * 12 + i] == c1[k + i]);
        }
        for (std::size_t b = 0; b < 2; ++b) {
            std::vector<Element> m(k);
            for (std::size_t j = 0; j < k; ++j) {
                Element v = 0;
                for (std::size_t f = 0; f < 6; ++f) v = static_cast<Element>((v << 1) | inter[(b * k + j) * 6 + f]);
                m[j] = v;
            }
            const auto c2 = encode_systematic(pair.rs, m);
            for (std::size_t j = 0; j < 12; ++j)
                for (std::size_t f = 0; f < 6; ++f)
                    CHECK(cw[s.info_bits() + s.parity1_bits() + (b * 12 + j) * 6 + f] == ((c2[k + j] >> (5 - f)) & 1u));
        }
    }
}

TEST_CASE("noiseless decoding recovers every message")
{
    std::mt19937_64 rng(4);
    const auto params = DecodeParams::defaults(2);
    for (const auto& row : reference::table()) {
        if (row.M > 10) continue;
        for (auto p : all_interleaver_patterns()) {
            const auto spec = reference::make_spec(row, pattern(p, row.L));
            CAPTURE(row.name);
            CAPTURE(to_string(p));
            auto codec = std::make_shared<const GpcbCodec>(spec);
            const auto msg = random_bits(spec.info_bits(), rng);
            const auto channel = noiseless(codec->encode_bits(msg));
            IterativeDecoder dec(codec);
            std::vector<std::uint8_t> out(spec.info_bits());
            int halves = 0;
            dec.decode(channel, params, out, [&](int, std::span<const std::uint8_t> d) {
                ++halves;
                REQUIRE(std::equal(d.begin(), d.end(), msg.begin()));
            });
            CHECK(halves == 4);
            CHECK(out == msg);
        }
    }
}

TEST_CASE("decode_iterative returns units and snapshots")
{
    auto c = rs_spec(Field::shared(6), 5);
    const auto spec = gpcb_spec(c, c, 2, pattern(InterleaverPattern::helical), Construction::c1);
    const GpcbCodec codec(spec);
    std::mt19937_64 rng(8);
    std::vector<Element> msg(spec.N);
    for (auto& v : msg) v = static_cast<Element>(rng() % 64);
    const auto channel = modulate(codec.units_to_bits(codec.encode(msg)));
    const auto res = decode_iterative(spec, channel, DecodeParams::defaults(3));
    CHECK(res.message == msg);
    CHECK(res.half_iteration_decisions.size() == 6);
    CHECK_THROWS_AS(decode_iterative(spec, std::vector<double>(10), DecodeParams::defaults(3)), LengthMismatch);
}

namespace {

struct Recorder : DecodeObserver {
    struct Call {
        int half;
        std::size_t block;
        std::vector<double> input;
        std::vector<std::size_t> positions;
    };
    std::vector<Call> calls;
    void on_component_input(int h, std::size_t b, std::span<const double> in, std::span<const std::size_t> pos) override
    {
        calls.push_back({h, b, {in.begin(), in.end()}, {pos.begin(), pos.end()}});
    }
};

} // namespace

TEST_CASE("parity inputs never change and decoder 2 follows the interleaver")
{
    const auto pair = pair_construction2(Field::shared(6), 2);
    for (auto construction : {Construction::c1, Construction::c2}) {
        const auto spec = construction == Construction::c1
                              ? gpcb_spec(pair.rs, pair.rs, 3, pattern(InterleaverPattern::random, 9), construction)
                              : gpcb_spec(pair.bch, pair.rs, 1, pattern(InterleaverPattern::random, 9), construction);
        auto codec = std::make_shared<const GpcbCodec>(spec);
        std::mt19937_64 rng(10);
        const auto msg = random_bits(spec.info_bits(), rng);
        auto channel = noiseless(codec->encode_bits(msg));
        FrameRng noise(1, 0);
        awgn(channel, 0.7, noise);
        Recorder rec;
        IterativeDecoder dec(codec);
        std::vector<std::uint8_t> out(spec.info_bits());
        const auto params = DecodeParams::defaults(4);
        dec.decode(channel, params, out, {}, &rec);
        REQUIRE(rec.calls.size() == 4 * (spec.blocks1 + spec.blocks2));

        const auto& fwd = codec->bit_permutation().forward();
        const std::size_t S = spec.info_bits();
        std::vector<std::size_t> seen2;
        for (const auto& call : rec.calls) {
            const bool first = call.half % 2 == 0;
            const auto& code = first ? spec.code1 : spec.code2;
            const auto kb = static_cast<std::size_t>(code.message_bits());
            const auto pb = static_cast<std::size_t>((code.n - code.k) * code.symbol_bits);
            const std::size_t base = S + (first ? 0 : spec.parity1_bits()) + call.block * pb;
            REQUIRE(call.input.size() == kb + pb);
            for (std::size_t i = 0; i < pb; ++i) REQUIRE(call.input[kb + i] == channel[base + i]);
            for (std::size_t i = 0; i < kb; ++i) {
                const std::size_t expect = first ? call.block * kb + i : fwd[call.block * kb + i];
                REQUIRE(call.positions[i] == expect);
                if (call.half == 0) REQUIRE(call.input[i] == channel[expect]);
            }
            if (call.half == 1) seen2.insert(seen2.end(), call.positions.begin(), call.positions.end());
        }
        if (construction == Construction::c1) {
            // Units are RS symbols: each symbol's bits travel together.
            const auto perm = build(spec.interleaver);
            for (std::size_t u = 0; u < spec.N; ++u)
                for (std::size_t f = 0; f < 6; ++f) REQUIRE(seen2[u * 6 + f] == perm.forward()[u] * 6 + f);
        } else {
            const auto perm = build(spec.interleaver);
            CHECK(seen2 == perm.forward());
        }
    }
}

TEST_CASE("identity interleaver equals two chained component passes")
{
    const auto code = bch_spec(Field::shared(6), 2);
    InterleaverSpec il;
    il.pattern = InterleaverPattern::cyclic;
    il.shift = 0;
    const auto spec = gpcb_spec(code, code, 2, il, Construction::c1);
    auto codec = std::make_shared<const GpcbCodec>(spec);
    REQUIRE(codec->bit_permutation().forward() == Permutation::identity(102).forward());

    std::mt19937_64 rng(31);
    const auto msg = random_bits(spec.info_bits(), rng);
    auto channel = noiseless(codec->encode_bits(msg));
    FrameRng noise(5, 0);
    awgn(channel, ebn0_to_sigma(2.0, spec.rate.value()), noise);

    DecodeParams params = DecodeParams::defaults(1);
    const auto res = decode_iterative(spec, channel, params);

    // Manual chain: decoder 1 on the channel, then decoder 2 on sys + alpha*w1.
    const std::size_t kb = 51, pb = 12;
    std::vector<double> w1(102), w2(102);
    for (std::size_t b = 0; b < 2; ++b) {
        std::vector<double> in(channel.begin() + static_cast<std::ptrdiff_t>(b * kb), channel.begin() + static_cast<std::ptrdiff_t>((b + 1) * kb));
        in.insert(in.end(), channel.begin() + static_cast<std::ptrdiff_t>(102 + b * pb), channel.begin() + static_cast<std::ptrdiff_t>(102 + (b + 1) * pb));
        const auto out = siso_decode(code, in, params.beta[0], params.fallback);
        std::copy_n(out.extrinsic.begin(), kb, w1.begin() + static_cast<std::ptrdiff_t>(b * kb));
    }
    for (std::size_t b = 0; b < 2; ++b) {
        std::vector<double> in(kb);
        for (std::size_t i = 0; i < kb; ++i) in[i] = channel[b * kb + i] + params.alpha[1] * w1[b * kb + i];
        in.insert(in.end(), channel.begin() + static_cast<std::ptrdiff_t>(126 + b * pb), channel.begin() + static_cast<std::ptrdiff_t>(126 + (b + 1) * pb));
        const auto out = siso_decode(code, in, params.beta[1], params.fallback);
        std::copy_n(out.extrinsic.begin(), kb, w2.begin() + static_cast<std::ptrdiff_t>(b * kb));
    }
    std::vector<std::uint8_t> half0(102), half1(102);
    for (std::size_t i = 0; i < 102; ++i) {
        half0[i] = channel[i] + params.alpha[0] * w1[i] > 0.0;
        half1[i] = channel[i] + params.alpha[1] * (w1[i] + w2[i]) > 0.0;
    }
    REQUIRE(res.half_iteration_decisions.size() == 2);
    CHECK(res.half_iteration_decisions[0] == half0);
    CHECK(res.half_iteration_decisions[1] == half1);
}

TEST_CASE("pinned regression vector")
{
    // Bit errors after each half-iteration, 8 iterations, identity interleaver,
    // BCH(63,51) twice with M = 2, 20 frames at 2.5 dB, channel seed 99.
    const std::vector<int> expected = {110, 55, 50, 52, 53, 54, 54, 54, 54, 54, 54, 54, 54, 54, 54, 54};
    const auto code = bch_spec(Field::shared(6), 2);
    InterleaverSpec il;
    il.pattern = InterleaverPattern::cyclic;
    il.shift = 0;
    const auto spec = gpcb_spec(code, code, 2, il, Construction::c1);
    auto codec = std::make_shared<const GpcbCodec>(spec);
    IterativeDecoder dec(codec);
    const auto params = DecodeParams::defaults(8);
    std::vector<int> errors(16, 0);
    std::vector<std::uint8_t> out(spec.info_bits());
    for (std::uint64_t f = 0; f < 20; ++f) {
        FrameRng rng(99, f);
        std::vector<std::uint8_t> msg(spec.info_bits());
        for (auto& b : msg) b = rng.next_bit();
        auto channel = modulate(codec->encode_bits(msg));
        awgn(channel, ebn0_to_sigma(2.5, spec.rate.value()), rng);
        dec.decode(channel, params, out, [&](int h, std::span<const std::uint8_t> d) {
            for (std::size_t i = 0; i < d.size(); ++i) errors[static_cast<std::size_t>(h)] += d[i] != msg[i];
        });
    }
    std::string shown;
    for (int e : errors) shown += std::to_string(e) + " ";
    MESSAGE("half-iteration errors: " << shown);
    CHECK(errors == expected);
}

TEST_CASE("iterations help on BCH(63,51) twice at moderate noise")
{
    auto code = bch_spec(Field::shared(6), 2);
    const auto spec = gpcb_spec(code, code, 1, pattern(InterleaverPattern::random, 7), Construction::c1);
    const auto res = run_ber(spec, DecodeParams::defaults(8), ChannelSpec{4.0, spec.rate.value(), 17},
                             StopRule{1'000'000, 1000}, RunOptions{1, 50});
    CHECK(res.iterations.front().frames >= 1000);
    MESSAGE("BER iteration 1 " << res.iterations.front().ber() << ", iteration 8 " << res.final_iteration().ber());
    CHECK(res.final_iteration().ber() <= res.iterations.front().ber());
}

TEST_CASE("decode parameters")
{
    const auto d = DecodeParams::defaults();
    CHECK(d.iterations == 8);
    CHECK(d.alpha.size() == 16);
    CHECK(d.beta.size() == 16);
    CHECK(d.alpha == default_alpha_schedule());
    CHECK(d.beta == default_beta_schedule());
    CHECK(d.fallback == FallbackRule::extrinsic);
    CHECK_NOTHROW(d.validate());
    auto bad = d;
    bad.iterations = 9;
    CHECK_THROWS_AS(bad.validate(), InvalidParams);
    bad = d;
    bad.alpha[3] = 1.5;
    CHECK_THROWS_AS(bad.validate(), InvalidParams);
    bad = d;
    bad.beta[0] = 0.0;
    CHECK_THROWS_AS(bad.validate(), InvalidParams);
    bad = d;
    bad.iterations = 0;
    CHECK_THROWS_AS(bad.validate(), InvalidParams);
    CHECK(DecodeParams::defaults(10).alpha.size() == 20);
}
