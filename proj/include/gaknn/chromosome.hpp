#pragma once

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "gaknn/errors.hpp"

namespace gaknn {

/// Fixed-length bit mask over the feature attributes of a dataset.
/// Bit j set means feature j is retained. Operators in the genetic search
/// repair empty masks, so a chromosome in circulation always has >= 1 bit set.
class Chromosome {
public:
    Chromosome() = default;

    explicit Chromosome(std::size_t n, bool set_all = false)
        : bits_(n, set_all ? std::uint8_t{1} : std::uint8_t{0}) {}

    static Chromosome all_ones(std::size_t n) { return Chromosome(n, true); }

    /// Parses "1010"-style strings (CLI --mask flag).
    static Chromosome from_string(std::string_view s) {
        Chromosome c(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] == '1') {
                c.bits_[i] = 1;
            } else if (s[i] != '0') {
                throw ConfigError("mask must contain only '0'/'1', got: " + std::string(s));
            }
        }
        return c;
    }

    std::size_t size() const { return bits_.size(); }
    bool test(std::size_t i) const { return bits_[i] != 0; }
    void set(std::size_t i, bool v = true) { bits_[i] = v ? 1 : 0; }
    void flip(std::size_t i) { bits_[i] ^= 1; }

    std::size_t count() const {
        return std::accumulate(bits_.begin(), bits_.end(), std::size_t{0});
    }

    bool any() const {
        for (auto b : bits_)
            if (b) return true;
        return false;
    }

    bool all() const {
        for (auto b : bits_)
            if (!b) return false;
        return true;
    }

    std::string to_string() const {
        std::string s(bits_.size(), '0');
        for (std::size_t i = 0; i < bits_.size(); ++i)
            if (bits_[i]) s[i] = '1';
        return s;
    }

    const std::vector<std::uint8_t>& bits() const { return bits_; }

    bool operator==(const Chromosome&) const = default;

private:
    std::vector<std::uint8_t> bits_;
};

}  // namespace gaknn
