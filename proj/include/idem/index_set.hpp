#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace idem {

/// A subset of R = {1..r}, stored as a bitmask with bit i-1 <-> index i.
class IndexSet {
public:
    constexpr IndexSet() = default;
    constexpr explicit IndexSet(std::uint64_t bits) : bits_(bits) {}

    static IndexSet of(std::initializer_list<unsigned> members);
    static IndexSet from_members(const std::vector<unsigned>& members);
    static constexpr IndexSet full(std::size_t r)
    {
        return IndexSet(r >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << r) - 1);
    }

    constexpr std::uint64_t bits() const noexcept { return bits_; }
    constexpr bool empty() const noexcept { return bits_ == 0; }
    constexpr unsigned size() const noexcept { return static_cast<unsigned>(std::popcount(bits_)); }
    constexpr bool contains(unsigned i) const noexcept
    {
        return i >= 1 && i <= 64 && ((bits_ >> (i - 1)) & 1u);
    }
    /// Highest member, 0 for the empty set.
    constexpr unsigned max_index() const noexcept
    {
        return static_cast<unsigned>(64 - std::countl_zero(bits_));
    }
    constexpr bool subset_of(IndexSet other) const noexcept { return (bits_ & ~other.bits_) == 0; }
    constexpr bool within(std::size_t r) const noexcept { return subset_of(full(r)); }

    IndexSet with(unsigned i) const;
    IndexSet without(unsigned i) const;

    std::vector<unsigned> members() const;

    constexpr friend IndexSet operator|(IndexSet a, IndexSet b) { return IndexSet(a.bits_ | b.bits_); }
    constexpr friend IndexSet operator&(IndexSet a, IndexSet b) { return IndexSet(a.bits_ & b.bits_); }
    constexpr friend IndexSet operator-(IndexSet a, IndexSet b) { return IndexSet(a.bits_ & ~b.bits_); }
    constexpr friend bool operator==(IndexSet, IndexSet) = default;
    constexpr friend auto operator<=>(IndexSet a, IndexSet b) { return a.bits_ <=> b.bits_; }

private:
    std::uint64_t bits_ = 0;
};

/// "{1,3}" style rendering.
std::string to_string(IndexSet s);

/// Accepts "1,3", "{1,3}", "{}", or "" (empty set).
IndexSet parse_index_set(std::string_view text);

/// Calls f(K) for every K with lower <= K <= upper, in ascending bitmask order.
template <class F>
void for_each_between(IndexSet lower, IndexSet upper, F&& f)
{
    const std::uint64_t free = upper.bits() & ~lower.bits();
    std::uint64_t sub = 0;
    // Enumerates submasks of `free` in ascending order.
    while (true) {
        f(IndexSet(lower.bits() | sub));
        if (sub == free)
            break;
        sub = (sub - free) & free;
    }
}

template <class F>
void for_each_subset(IndexSet upper, F&& f)
{
    for_each_between(IndexSet{}, upper, std::forward<F>(f));
}

} // namespace idem
