#pragma once

#include "gpcb/errors.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gpcb {

enum class InterleaverPattern { random, block, diagonal, cyclic, helical, berrou };

InterleaverPattern parse_interleaver_pattern(std::string_view name);
std::string_view to_string(InterleaverPattern p) noexcept;
/// All six patterns, in declaration order.
std::span<const InterleaverPattern> all_interleaver_patterns() noexcept;

/**
 * Interleaver description.
 *
 * Pattern rules (output position i reads input position forward[i]):
 *  - random:   Fisher-Yates shuffle driven by mt19937_64(seed).
 *  - block:    rows x cols matrix written row by row, read column by column.
 *  - diagonal: same matrix read along anti-diagonals r + c = s, s = 0, 1, ...,
 *              top row first within each diagonal.
 *  - helical:  same matrix read along wrapping diagonals: diagonal c starts at
 *              (0, c) and each step advances row and column by one (mod bounds).
 *  - cyclic:   forward[i] = (i + shift) mod size; shift defaults to size / 2.
 *  - berrou:   CCSDS turbo-code permutation (k1 = 8), computed on the
 *              smallest admissible length >= size and pruned to size.
 */
struct InterleaverSpec {
    InterleaverPattern pattern = InterleaverPattern::random;
    std::size_t size = 0;
    std::uint64_t seed = 0;
    /// Geometry for block, diagonal and helical; rows * cols must equal size.
    std::size_t rows = 0;
    std::size_t cols = 0;
    /// Cyclic shift; nullopt selects size / 2.
    std::optional<std::size_t> shift;
};

/// A bijection on [0, size) with its inverse.
class Permutation {
public:
    Permutation() = default;
    /// Throws BadGeometry unless `forward` is a bijection on [0, size).
    explicit Permutation(std::vector<std::size_t> forward);

    static Permutation identity(std::size_t size);

    std::size_t size() const noexcept { return forward_.size(); }
    const std::vector<std::size_t>& forward() const noexcept { return forward_; }
    const std::vector<std::size_t>& inverse() const noexcept { return inverse_; }

    /// out[i] = x[forward[i]].
    template <typename T>
    std::vector<T> apply(std::span<const T> x) const
    {
        check(x.size());
        std::vector<T> out(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[forward_[i]];
        return out;
    }

    /// Undoes apply: out[forward[i]] = y[i].
    template <typename T>
    std::vector<T> invert(std::span<const T> y) const
    {
        check(y.size());
        std::vector<T> out(y.size());
        for (std::size_t i = 0; i < y.size(); ++i) out[forward_[i]] = y[i];
        return out;
    }

    template <typename T>
    void apply_into(std::span<const T> x, std::span<T> out) const
    {
        check(x.size());
        check(out.size());
        for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[forward_[i]];
    }

    template <typename T>
    void invert_into(std::span<const T> y, std::span<T> out) const
    {
        check(y.size());
        check(out.size());
        for (std::size_t i = 0; i < y.size(); ++i) out[forward_[i]] = y[i];
    }

    /// Permutation of size() * unit positions that moves groups of `unit`
    /// consecutive elements as this permutation moves single elements.
    Permutation expand(std::size_t unit) const;

private:
    void check(std::size_t n) const
    {
        if (n != forward_.size())
            throw LengthMismatch("sequence of length " + std::to_string(n) + " for a permutation of size " +
                                 std::to_string(forward_.size()));
    }

    std::vector<std::size_t> forward_;
    std::vector<std::size_t> inverse_;
};

Permutation build(const InterleaverSpec& spec);

} // namespace gpcb
