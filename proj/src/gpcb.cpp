#include "gpcb/gpcb.hpp"

#include "gpcb/errors.hpp"

#include <algorithm>
#include <numeric>

namespace gpcb {

namespace {

const std::vector<double> kDefaultAlpha = {0.0, 0.25, 0.3,  0.4, 0.5, 0.55, 0.6,  0.65,
                                           0.7, 0.75, 0.8, 0.85, 0.9, 0.92, 0.95, 0.95};
const std::vector<double> kDefaultBeta = {0.2, 0.25, 0.3, 0.35, 0.4, 0.45, 0.5,  0.55,
                                          0.6, 0.65, 0.7, 0.75, 0.8, 0.85, 0.87, 0.9};

std::string family_name(const GpcbSpec& s)
{
    const bool bch1 = s.code1.kind == CodeKind::bch;
    const bool bch2 = s.code2.kind == CodeKind::bch;
    if (bch1 && bch2) return "GPCB-BCH";
    if (!bch1 && !bch2) return "GPCB-RS";
    return bch1 ? "GPCB-BCH-RS" : "GPCB-RS-BCH";
}

} // namespace

Construction parse_construction(std::string_view name)
{
    if (name == "c1" || name == "C1") return Construction::c1;
    if (name == "c2" || name == "C2") return Construction::c2;
    throw InvalidParams("unknown construction '" + std::string(name) + "' (expected c1 or c2)");
}

std::string_view to_string(Construction c) noexcept { return c == Construction::c1 ? "c1" : "c2"; }

std::size_t GpcbSpec::symbol_length() const noexcept
{
    return static_cast<std::size_t>(M) * static_cast<std::size_t>(code1.n + code2.n - code1.k);
}

std::size_t GpcbSpec::symbol_dimension() const noexcept
{
    return static_cast<std::size_t>(M) * static_cast<std::size_t>(code1.k);
}

std::string GpcbSpec::name() const
{
    return family_name(*this) + "(" + std::to_string(symbol_length()) + "," + std::to_string(symbol_dimension()) + ")";
}

GpcbSpec gpcb_spec(CodeSpec code1, CodeSpec code2, int M, InterleaverSpec interleaver, Construction construction)
{
    if (M < 1) throw IncompatibleCodes("M must be at least 1");
    if (code1.k != code2.k)
        throw IncompatibleCodes("component dimensions differ: " + code1.name() + " vs " + code2.name());

    GpcbSpec s;
    s.M = M;
    s.construction = construction;
    const auto k = static_cast<std::size_t>(code1.k);
    const auto Mz = static_cast<std::size_t>(M);

    if (construction == Construction::c1) {
        if (code1.symbol_bits != code2.symbol_bits)
            throw IncompatibleCodes("c1 needs equal symbol widths (" + code1.name() + ", " + code2.name() +
                                    "); BCH+RS pairs use c2");
        s.unit_bits = code1.symbol_bits;
        s.N = Mz * k;
        s.P1 = Mz * static_cast<std::size_t>(code1.n - code1.k);
        s.P2 = Mz * static_cast<std::size_t>(code2.n - code2.k);
        s.blocks1 = Mz;
        s.blocks2 = Mz;
    } else {
        if (code2.kind != CodeKind::rs)
            throw IncompatibleCodes("c2 regroups bits into symbols of an RS second code, got " + code2.name());
        if (code1.n != code2.n)
            throw IncompatibleCodes("c2 needs equal lengths: " + code1.name() + " vs " + code2.name());
        const auto m = static_cast<std::size_t>(code2.symbol_bits);
        const auto sb1 = static_cast<std::size_t>(code1.symbol_bits);
        if (code1.kind == CodeKind::bch && static_cast<std::size_t>(code1.field->m()) != m)
            throw IncompatibleCodes("c2 BCH and RS fields differ");
        s.unit_bits = 1;
        s.N = Mz * m * k;
        s.blocks1 = s.N / (k * sb1);
        s.blocks2 = Mz;
        s.P1 = s.blocks1 * static_cast<std::size_t>(code1.n - code1.k) * sb1;
        s.P2 = Mz * static_cast<std::size_t>(code2.n - code2.k) * m;
    }
    s.P = s.P1 + s.P2;
    s.L = s.N + s.P;

    const long num = code1.k;
    const long den = code1.n + code2.n - code1.k;
    const long g = std::gcd(num, den);
    s.rate = Rate{num / g, den / g};

    interleaver.size = s.N;
    if (interleaver.rows == 0 && interleaver.cols == 0) {
        interleaver.rows = s.N / k;
        interleaver.cols = k;
    }
    s.interleaver = interleaver;
    s.code1 = std::move(code1);
    s.code2 = std::move(code2);
    return s;
}

// DecodeParams --------------------------------------------------------------

const std::vector<double>& default_alpha_schedule() { return kDefaultAlpha; }
const std::vector<double>& default_beta_schedule() { return kDefaultBeta; }

DecodeParams DecodeParams::defaults(int iterations)
{
    if (iterations < 1) throw InvalidParams("iterations must be at least 1");
    DecodeParams p;
    p.iterations = iterations;
    const auto halves = static_cast<std::size_t>(2 * iterations);
    for (std::size_t h = 0; h < halves; ++h) {
        const std::size_t src = std::min(h, kDefaultAlpha.size() - 1);
        p.alpha.push_back(kDefaultAlpha[src]);
        p.beta.push_back(kDefaultBeta[src]);
    }
    return p;
}

void DecodeParams::validate() const
{
    if (iterations < 1) throw InvalidParams("iterations must be at least 1");
    const auto halves = static_cast<std::size_t>(2 * iterations);
    if (alpha.size() < halves || beta.size() < halves)
        throw InvalidParams("alpha/beta schedules need " + std::to_string(halves) + " entries for " +
                            std::to_string(iterations) + " iterations");
    for (double a : alpha)
        if (!(a >= 0.0 && a <= 1.0)) throw InvalidParams("alpha must lie in [0, 1]");
    for (double b : beta)
        if (!(b > 0.0 && b <= 1.0)) throw InvalidParams("beta must lie in (0, 1]");
}

// GpcbCodec -----------------------------------------------------------------

GpcbCodec::GpcbCodec(GpcbSpec spec)
    : spec_(std::move(spec)), bit_perm_(build(spec_.interleaver).expand(static_cast<std::size_t>(spec_.unit_bits)))
{
}

std::vector<std::uint8_t> GpcbCodec::encode_bits(std::span<const std::uint8_t> message_bits) const
{
    std::vector<std::uint8_t> out(spec_.codeword_bits());
    encode_bits(message_bits, out);
    return out;
}

void GpcbCodec::encode_bits(std::span<const std::uint8_t> message_bits, std::span<std::uint8_t> codeword) const
{
    const std::size_t S = spec_.info_bits();
    if (message_bits.size() != S)
        throw LengthMismatch("message has " + std::to_string(message_bits.size()) + " bits, " + spec_.name() +
                             " expects " + std::to_string(S));
    if (codeword.size() != spec_.codeword_bits()) throw LengthMismatch("codeword buffer size mismatch");

    std::copy(message_bits.begin(), message_bits.end(), codeword.begin());

    auto encode_segment = [](const CodeSpec& code, std::size_t blocks, std::span<const std::uint8_t> info,
                             std::span<std::uint8_t> parity) {
        const auto kb = static_cast<std::size_t>(code.message_bits());
        const auto pb = static_cast<std::size_t>((code.n - code.k) * code.symbol_bits);
        std::vector<Element> msg(static_cast<std::size_t>(code.k));
        for (std::size_t b = 0; b < blocks; ++b) {
            pack_bits(info.subspan(b * kb, kb), code.symbol_bits, msg);
            const Codeword cw = encode_systematic(code, msg);
            unpack_symbols(std::span<const Element>(cw).subspan(static_cast<std::size_t>(code.k)), code.symbol_bits,
                           parity.subspan(b * pb, pb));
        }
    };

    encode_segment(spec_.code1, spec_.blocks1, message_bits, codeword.subspan(S, spec_.parity1_bits()));
    const std::vector<std::uint8_t> interleaved = bit_perm_.apply(message_bits);
    encode_segment(spec_.code2, spec_.blocks2, interleaved,
                   codeword.subspan(S + spec_.parity1_bits(), spec_.parity2_bits()));
}

std::vector<Element> GpcbCodec::bits_to_units(std::span<const std::uint8_t> bits) const
{
    if (bits.size() % static_cast<std::size_t>(spec_.unit_bits) != 0)
        throw LengthMismatch("bit count is not a whole number of units");
    std::vector<Element> units(bits.size() / static_cast<std::size_t>(spec_.unit_bits));
    pack_bits(bits, spec_.unit_bits, units);
    return units;
}

std::vector<std::uint8_t> GpcbCodec::units_to_bits(std::span<const Element> units) const
{
    std::vector<std::uint8_t> bits(units.size() * static_cast<std::size_t>(spec_.unit_bits));
    const Element limit = static_cast<Element>((1u << spec_.unit_bits) - 1u);
    for (std::size_t i = 0; i < units.size(); ++i)
        if (units[i] > limit) throw InvalidParams("unit value out of range at index " + std::to_string(i));
    unpack_symbols(units, spec_.unit_bits, bits);
    return bits;
}

std::vector<Element> GpcbCodec::encode(std::span<const Element> message) const
{
    if (message.size() != spec_.N)
        throw LengthMismatch("message has " + std::to_string(message.size()) + " units, " + spec_.name() +
                             " expects " + std::to_string(spec_.N));
    return bits_to_units(encode_bits(units_to_bits(message)));
}

// IterativeDecoder ----------------------------------------------------------

IterativeDecoder::IterativeDecoder(std::shared_ptr<const GpcbCodec> codec)
    : codec_(std::move(codec)), dec1_(codec_->spec().code1), dec2_(codec_->spec().code2)
{
    const std::size_t S = codec_->spec().info_bits();
    w1_.resize(S);
    w2_.resize(S);
    decision_.resize(S);
}

void IterativeDecoder::decode(std::span<const double> channel, const DecodeParams& params,
                              std::span<std::uint8_t> message_bits, const HalfIterationCallback& on_half,
                              DecodeObserver* observer)
{
    const GpcbSpec& spec = codec_->spec();
    const std::size_t S = spec.info_bits();
    if (channel.size() != spec.codeword_bits())
        throw LengthMismatch("channel has " + std::to_string(channel.size()) + " values, " + spec.name() +
                             " needs " + std::to_string(spec.codeword_bits()));
    if (message_bits.size() != S) throw LengthMismatch("message buffer size mismatch");
    params.validate();

    const auto sys = channel.subspan(0, S);
    const auto par1 = channel.subspan(S, spec.parity1_bits());
    const auto par2 = channel.subspan(S + spec.parity1_bits(), spec.parity2_bits());
    const auto& fwd = codec_->bit_permutation().forward();

    std::fill(w1_.begin(), w1_.end(), 0.0);
    std::fill(w2_.begin(), w2_.end(), 0.0);

    for (int h = 0; h < 2 * params.iterations; ++h) {
        const double alpha = params.alpha[static_cast<std::size_t>(h)];
        const double beta = params.beta[static_cast<std::size_t>(h)];
        const bool first = h % 2 == 0;
        const CodeSpec& code = first ? spec.code1 : spec.code2;
        ChaseDecoder& dec = first ? dec1_ : dec2_;
        const std::vector<double>& w_other = first ? w2_ : w1_;
        std::vector<double>& w_own = first ? w1_ : w2_;
        const auto par = first ? par1 : par2;
        const std::size_t blocks = first ? spec.blocks1 : spec.blocks2;
        const auto kb = static_cast<std::size_t>(code.message_bits());
        const auto pb = static_cast<std::size_t>((code.n - code.k) * code.symbol_bits);

        input_.resize(kb + pb);
        positions_.resize(kb);
        for (std::size_t b = 0; b < blocks; ++b) {
            for (std::size_t i = 0; i < kb; ++i) {
                const std::size_t pos = first ? b * kb + i : fwd[b * kb + i];
                positions_[i] = pos;
                input_[i] = sys[pos] + alpha * w_other[pos];
            }
            std::copy_n(par.begin() + static_cast<std::ptrdiff_t>(b * pb), pb, input_.begin() + static_cast<std::ptrdiff_t>(kb));
            if (observer) observer->on_component_input(h, b, input_, positions_);
            dec.decode(input_, beta, out_, params.fallback);
            for (std::size_t i = 0; i < kb; ++i) w_own[positions_[i]] = out_.extrinsic[i];
        }

        for (std::size_t i = 0; i < S; ++i) decision_[i] = sys[i] + alpha * (w1_[i] + w2_[i]) > 0.0;
        if (on_half) on_half(h, decision_);
    }
    std::copy(decision_.begin(), decision_.end(), message_bits.begin());
}

IterativeResult decode_iterative(const GpcbSpec& spec, std::span<const double> channel, const DecodeParams& params)
{
    auto codec = std::make_shared<const GpcbCodec>(spec);
    IterativeDecoder dec(codec);
    IterativeResult result;
    std::vector<std::uint8_t> bits(spec.info_bits());
    dec.decode(channel, params, bits, [&](int, std::span<const std::uint8_t> d) {
        result.half_iteration_decisions.emplace_back(d.begin(), d.end());
    });
    result.message = codec->bits_to_units(bits);
    return result;
}

} // namespace gpcb
