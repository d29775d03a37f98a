#include "gpcb/interleaver.hpp"

#include <array>
#include <limits>
#include <numeric>
#include <random>

namespace gpcb {

namespace {

constexpr std::array<InterleaverPattern, 6> kPatterns = {
    InterleaverPattern::random,  InterleaverPattern::block,   InterleaverPattern::diagonal,
    InterleaverPattern::cyclic,  InterleaverPattern::helical, InterleaverPattern::berrou,
};

// Uniform integer in [0, bound) by rejection; identical on every platform,
// unlike std::uniform_int_distribution.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound)
{
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

void require_geometry(const InterleaverSpec& spec)
{
    if (spec.rows == 0 || spec.cols == 0 || spec.rows * spec.cols != spec.size)
        throw BadGeometry(std::string(to_string(spec.pattern)) + " interleaver: rows*cols = " +
                          std::to_string(spec.rows) + "*" + std::to_string(spec.cols) + " != size " +
                          std::to_string(spec.size));
}

std::vector<std::size_t> random_forward(const InterleaverSpec& spec)
{
    std::vector<std::size_t> f(spec.size);
    std::iota(f.begin(), f.end(), std::size_t{0});
    std::mt19937_64 rng(spec.seed);
    for (std::size_t i = spec.size; i > 1; --i) {
        const auto j = static_cast<std::size_t>(uniform_below(rng, i));
        std::swap(f[i - 1], f[j]);
    }
    return f;
}

std::vector<std::size_t> block_forward(const InterleaverSpec& spec)
{
    require_geometry(spec);
    std::vector<std::size_t> f;
    f.reserve(spec.size);
    for (std::size_t c = 0; c < spec.cols; ++c)
        for (std::size_t r = 0; r < spec.rows; ++r) f.push_back(r * spec.cols + c);
    return f;
}

std::vector<std::size_t> diagonal_forward(const InterleaverSpec& spec)
{
    require_geometry(spec);
    std::vector<std::size_t> f;
    f.reserve(spec.size);
    for (std::size_t s = 0; s + 1 < spec.rows + spec.cols; ++s) {
        const std::size_t r0 = s >= spec.cols ? s - spec.cols + 1 : 0;
        for (std::size_t r = r0; r <= s && r < spec.rows; ++r) f.push_back(r * spec.cols + (s - r));
    }
    return f;
}

std::vector<std::size_t> helical_forward(const InterleaverSpec& spec)
{
    require_geometry(spec);
    std::vector<std::size_t> f;
    f.reserve(spec.size);
    // Diagonal c visits (r, (c + r) mod cols); every cell lies on exactly one.
    for (std::size_t c = 0; c < spec.cols; ++c)
        for (std::size_t r = 0; r < spec.rows; ++r) f.push_back(r * spec.cols + (c + r) % spec.cols);
    return f;
}

std::vector<std::size_t> cyclic_forward(const InterleaverSpec& spec)
{
    const std::size_t shift = spec.shift.value_or(spec.size / 2) % spec.size;
    std::vector<std::size_t> f(spec.size);
    for (std::size_t i = 0; i < spec.size; ++i) f[i] = (i + shift) % spec.size;
    return f;
}

std::vector<std::size_t> berrou_forward(const InterleaverSpec& spec)
{
    constexpr std::size_t k1 = 8;
    constexpr std::array<std::size_t, 8> primes = {31, 37, 43, 47, 53, 59, 61, 67};
    // The rule is a bijection when k2 is coprime to the four multipliers it
    // can select (t < k1/2 picks p_1..p_4).
    auto admissible = [&](std::size_t k2) {
        for (std::size_t q = 0; q < k1 / 2; ++q)
            if (std::gcd(k2, primes[q]) != 1) return false;
        return true;
    };
    std::size_t k2 = (spec.size + k1 - 1) / k1;
    while (!admissible(k2)) ++k2;
    const std::size_t padded = k1 * k2;

    std::vector<std::size_t> f;
    f.reserve(spec.size);
    for (std::size_t s = 1; s <= padded; ++s) {
        const std::size_t m = (s - 1) % 2;
        const std::size_t i = (s - 1) / (2 * k2);
        const std::size_t j = (s - 1) / 2 - i * k2;
        const std::size_t t = (19 * i + 1) % (k1 / 2);
        const std::size_t q = t % 8;
        const std::size_t c = (primes[q] * j + 21 * m) % k2;
        const std::size_t pi = 2 * (t + c * (k1 / 2) + 1) - m; // 1-based
        if (pi - 1 < spec.size) f.push_back(pi - 1);
    }
    return f;
}

} // namespace

InterleaverPattern parse_interleaver_pattern(std::string_view name)
{
    for (auto p : kPatterns)
        if (to_string(p) == name) return p;
    throw InvalidParams("unknown interleaver pattern '" + std::string(name) + "'");
}

std::string_view to_string(InterleaverPattern p) noexcept
{
    switch (p) {
    case InterleaverPattern::random: return "random";
    case InterleaverPattern::block: return "block";
    case InterleaverPattern::diagonal: return "diagonal";
    case InterleaverPattern::cyclic: return "cyclic";
    case InterleaverPattern::helical: return "helical";
    case InterleaverPattern::berrou: return "berrou";
    }
    return "?";
}

std::span<const InterleaverPattern> all_interleaver_patterns() noexcept { return kPatterns; }

Permutation::Permutation(std::vector<std::size_t> forward) : forward_(std::move(forward))
{
    const std::size_t n = forward_.size();
    constexpr auto unset = std::numeric_limits<std::size_t>::max();
    inverse_.assign(n, unset);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t v = forward_[i];
        if (v >= n || inverse_[v] != unset)
            throw BadGeometry("forward map is not a bijection (index " + std::to_string(i) + ")");
        inverse_[v] = i;
    }
}

Permutation Permutation::identity(std::size_t size)
{
    std::vector<std::size_t> f(size);
    std::iota(f.begin(), f.end(), std::size_t{0});
    return Permutation(std::move(f));
}

Permutation Permutation::expand(std::size_t unit) const
{
    if (unit == 1) return *this;
    std::vector<std::size_t> f(forward_.size() * unit);
    for (std::size_t i = 0; i < forward_.size(); ++i)
        for (std::size_t b = 0; b < unit; ++b) f[i * unit + b] = forward_[i] * unit + b;
    return Permutation(std::move(f));
}

Permutation build(const InterleaverSpec& spec)
{
    if (spec.size == 0) throw BadGeometry("interleaver size must be at least 1");
    switch (spec.pattern) {
    case InterleaverPattern::random: return Permutation(random_forward(spec));
    case InterleaverPattern::block: return Permutation(block_forward(spec));
    case InterleaverPattern::diagonal: return Permutation(diagonal_forward(spec));
    case InterleaverPattern::cyclic: return Permutation(cyclic_forward(spec));
    case InterleaverPattern::helical: return Permutation(helical_forward(spec));
    case InterleaverPattern::berrou: return Permutation(berrou_forward(spec));
    }
    throw InvalidParams("unhandled interleaver pattern");
}

} // namespace gpcb
