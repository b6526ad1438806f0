#ifndef HM3_BITSET_HPP
#define HM3_BITSET_HPP

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace hm3 {

/// Fixed-universe dynamic bitset.  Vertex sets and the edge-membership
/// table of a hypergraph are both instances of this; the universe size is
/// set at construction and never changes.
class Bitset {
  public:
    Bitset() = default;
    explicit Bitset(std::size_t nbits) : nbits_(nbits), w_((nbits + 63) / 64, 0) {}

    std::size_t universe() const { return nbits_; }

    bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
    void set(std::size_t i) { w_[i >> 6] |= (std::uint64_t(1) << (i & 63)); }
    void reset(std::size_t i) { w_[i >> 6] &= ~(std::uint64_t(1) << (i & 63)); }
    void flip(std::size_t i) { w_[i >> 6] ^= (std::uint64_t(1) << (i & 63)); }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : w_) c += std::popcount(w);
        return c;
    }
    bool any() const {
        for (auto w : w_) if (w) return true;
        return false;
    }
    bool none() const { return !any(); }
    void clear() { for (auto & w : w_) w = 0; }

    /// First set bit at index >= from, or npos.
    static constexpr std::size_t npos = std::size_t(-1);
    std::size_t find_next(std::size_t from) const {
        if (from >= nbits_) return npos;
        std::size_t wi = from >> 6;
        std::uint64_t cur = w_[wi] & (~std::uint64_t(0) << (from & 63));
        while (true) {
            if (cur) return (wi << 6) + std::countr_zero(cur);
            if (++wi >= w_.size()) return npos;
            cur = w_[wi];
        }
    }
    std::size_t find_first() const { return find_next(0); }

    template <typename Fn> void for_each(Fn && fn) const {
        for (std::size_t i = find_first(); i != npos; i = find_next(i + 1)) fn(i);
    }

    std::vector<int> to_vector() const {
        std::vector<int> out;
        out.reserve(count());
        for_each([&](std::size_t i) { out.push_back((int)i); });
        return out;
    }

    bool subset_of(const Bitset & o) const {
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & ~o.w_[i]) return false;
        return true;
    }
    bool intersects(const Bitset & o) const {
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & o.w_[i]) return true;
        return false;
    }

    Bitset operator&(const Bitset & o) const {
        Bitset r(nbits_);
        for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] = w_[i] & o.w_[i];
        return r;
    }
    Bitset operator|(const Bitset & o) const {
        Bitset r(nbits_);
        for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] = w_[i] | o.w_[i];
        return r;
    }
    /// Set difference (and-not).
    Bitset minus(const Bitset & o) const {
        Bitset r(nbits_);
        for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] = w_[i] & ~o.w_[i];
        return r;
    }
    Bitset complement() const {
        Bitset r(nbits_);
        for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] = ~w_[i];
        r.trim();
        return r;
    }

    bool operator==(const Bitset & o) const { return nbits_ == o.nbits_ && w_ == o.w_; }
    bool operator!=(const Bitset & o) const { return !(*this == o); }
    /// Deterministic total order (numeric value, high words first).
    bool operator<(const Bitset & o) const {
        if (nbits_ != o.nbits_) return nbits_ < o.nbits_;
        for (std::size_t i = w_.size(); i-- > 0;)
            if (w_[i] != o.w_[i]) return w_[i] < o.w_[i];
        return false;
    }

    static Bitset full(std::size_t nbits) {
        Bitset r(nbits);
        for (auto & w : r.w_) w = ~std::uint64_t(0);
        r.trim();
        return r;
    }
    template <typename Range> static Bitset of(std::size_t nbits, const Range & indices) {
        Bitset r(nbits);
        for (auto i : indices) r.set((std::size_t)i);
        return r;
    }

  private:
    void trim() {
        if (nbits_ & 63) w_.back() &= (~std::uint64_t(0)) >> (64 - (nbits_ & 63));
    }

    std::size_t nbits_ = 0;
    std::vector<std::uint64_t> w_;
};

} // namespace hm3

#endif
