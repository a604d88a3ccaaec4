#ifndef COINRUNS_RUN_VECTOR_HPP
#define COINRUNS_RUN_VECTOR_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace coinruns {

// Finitely supported map {run length -> count}, an element of the cone of
// integer sequences that vanish eventually. Canonical form: keys >= 1,
// counts >= 1, entries sorted by length. Immutable value type.
class RunVector {
  public:
    using Entry = std::pair<int, long long>;  // (length, count)

    RunVector() = default;

    // e_j: the zero vector for j = 0, {j -> 1} for j >= 1.
    static RunVector unit(int j);

    // Builds from (length, count) pairs; validates and canonicalizes.
    static RunVector from_counts(std::vector<Entry> entries);

    // Counts maximal blocks of ones; boundary blocks count.
    static RunVector from_bits(const std::vector<int>& bits);

    // Parses the text form produced by to_text().
    static RunVector from_text(const std::string& text);

    const std::vector<Entry>& entries() const { return entries_; }
    bool is_zero() const { return entries_.empty(); }

    long long count(int length) const;

    // sup of lengths present; 0 for the zero vector.
    int longest() const { return entries_.empty() ? 0 : entries_.back().first; }

    // inf of lengths present; nullopt encodes +infinity (zero vector).
    std::optional<int> shortest() const {
        if (entries_.empty()) return std::nullopt;
        return entries_.front().first;
    }

    // Number of lengths with a positive count (the h2 functional).
    long long total_runs() const { return static_cast<long long>(entries_.size()); }

    // Number of runs of length >= k, counted with multiplicity.
    long long exceed(int k) const;

    // Total heads: sum of length * count.
    long long head_count() const;

    // Fewest tosses that can produce this vector:
    // sum(length*count) + (#runs - 1) separating tails; 0 for the zero vector.
    long long min_tosses() const;

    RunVector operator+(const RunVector& other) const;

    // this + e_j (no-op for j = 0).
    RunVector with_unit_added(int j) const;

    // "len^count,len^count,..." sorted by length; "0" for the zero vector.
    std::string to_text() const;

    bool operator==(const RunVector& other) const { return entries_ == other.entries_; }
    auto operator<=>(const RunVector& other) const { return entries_ <=> other.entries_; }

    std::size_t hash() const;

  private:
    std::vector<Entry> entries_;
};

struct RunVectorHash {
    std::size_t operator()(const RunVector& x) const { return x.hash(); }
};

// Tail-sum map: sigma(x)_k = sum_{j >= k} x_j. Maps run counts to
// exceedance counts; sigma(e_n) = e_1 + ... + e_n.
RunVector sigma(const RunVector& x);

}  // namespace coinruns

#endif
