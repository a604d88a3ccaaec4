#include "coinruns/run_vector.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace coinruns {

RunVector RunVector::unit(int j) {
    if (j < 0) throw std::invalid_argument("RunVector::unit: j must be >= 0");
    RunVector x;
    if (j > 0) x.entries_.emplace_back(j, 1);
    return x;
}

RunVector RunVector::from_counts(std::vector<Entry> entries) {
    std::sort(entries.begin(), entries.end());
    RunVector x;
    for (const auto& [len, cnt] : entries) {
        if (len < 1) throw std::invalid_argument("RunVector: run length must be >= 1");
        if (cnt < 0) throw std::invalid_argument("RunVector: count must be >= 0");
        if (cnt == 0) continue;
        if (!x.entries_.empty() && x.entries_.back().first == len)
            x.entries_.back().second += cnt;
        else
            x.entries_.emplace_back(len, cnt);
    }
    return x;
}

RunVector RunVector::from_bits(const std::vector<int>& bits) {
    std::vector<Entry> runs;
    int current = 0;
    for (int b : bits) {
        if (b != 0)
            ++current;
        else if (current > 0) {
            runs.emplace_back(current, 1);
            current = 0;
        }
    }
    if (current > 0) runs.emplace_back(current, 1);
    return from_counts(std::move(runs));
}

RunVector RunVector::from_text(const std::string& text) {
    if (text == "0") return RunVector();
    std::vector<Entry> entries;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t caret = text.find('^', pos);
        if (caret == std::string::npos)
            throw std::invalid_argument("RunVector::from_text: missing '^' in \"" + text + "\"");
        std::size_t comma = text.find(',', caret);
        if (comma == std::string::npos) comma = text.size();
        int len = 0;
        long long cnt = 0;
        auto r1 = std::from_chars(text.data() + pos, text.data() + caret, len);
        auto r2 = std::from_chars(text.data() + caret + 1, text.data() + comma, cnt);
        if (r1.ec != std::errc() || r1.ptr != text.data() + caret || r2.ec != std::errc() ||
            r2.ptr != text.data() + comma || len < 1 || cnt < 1)
            throw std::invalid_argument("RunVector::from_text: malformed \"" + text + "\"");
        entries.emplace_back(len, cnt);
        pos = comma + (comma < text.size() ? 1 : 0);
    }
    if (entries.empty()) throw std::invalid_argument("RunVector::from_text: empty text");
    for (std::size_t i = 1; i < entries.size(); ++i)
        if (entries[i].first <= entries[i - 1].first)
            throw std::invalid_argument("RunVector::from_text: lengths must be strictly increasing");
    return from_counts(std::move(entries));
}

long long RunVector::count(int length) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), length,
                               [](const Entry& e, int l) { return e.first < l; });
    return (it != entries_.end() && it->first == length) ? it->second : 0;
}

long long RunVector::exceed(int k) const {
    long long total = 0;
    for (auto it = entries_.rbegin(); it != entries_.rend() && it->first >= k; ++it)
        total += it->second;
    return total;
}

long long RunVector::head_count() const {
    long long total = 0;
    for (const auto& [len, cnt] : entries_) total += static_cast<long long>(len) * cnt;
    return total;
}

long long RunVector::min_tosses() const {
    if (entries_.empty()) return 0;
    return head_count() + (exceed(1) - 1);
}

RunVector RunVector::operator+(const RunVector& other) const {
    RunVector out;
    out.entries_.reserve(entries_.size() + other.entries_.size());
    auto a = entries_.begin(), b = other.entries_.begin();
    while (a != entries_.end() || b != other.entries_.end()) {
        if (b == other.entries_.end() || (a != entries_.end() && a->first < b->first))
            out.entries_.push_back(*a++);
        else if (a == entries_.end() || b->first < a->first)
            out.entries_.push_back(*b++);
        else {
            out.entries_.emplace_back(a->first, a->second + b->second);
            ++a;
            ++b;
        }
    }
    return out;
}

RunVector RunVector::with_unit_added(int j) const {
    if (j < 0) throw std::invalid_argument("RunVector::with_unit_added: j must be >= 0");
    if (j == 0) return *this;
    RunVector out = *this;
    auto it = std::lower_bound(out.entries_.begin(), out.entries_.end(), j,
                               [](const Entry& e, int l) { return e.first < l; });
    if (it != out.entries_.end() && it->first == j)
        ++it->second;
    else
        out.entries_.insert(it, {j, 1});
    return out;
}

std::string RunVector::to_text() const {
    if (entries_.empty()) return "0";
    std::string s;
    for (const auto& [len, cnt] : entries_) {
        if (!s.empty()) s += ',';
        s += std::to_string(len);
        s += '^';
        s += std::to_string(cnt);
    }
    return s;
}

std::size_t RunVector::hash() const {
    std::size_t h = 0x9e3779b97f4a7c15ull;
    for (const auto& [len, cnt] : entries_) {
        h ^= static_cast<std::size_t>(len) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        h ^= static_cast<std::size_t>(cnt) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
}

RunVector sigma(const RunVector& x) {
    const auto& e = x.entries();
    if (e.empty()) return RunVector();
    std::vector<RunVector::Entry> out;
    out.reserve(static_cast<std::size_t>(x.longest()));
    long long suffix = 0;
    auto it = e.rbegin();
    for (int k = x.longest(); k >= 1; --k) {
        if (it != e.rend() && it->first == k) {
            suffix += it->second;
            ++it;
        }
        out.emplace_back(k, suffix);
    }
    std::reverse(out.begin(), out.end());
    return RunVector::from_counts(std::move(out));
}

}  // namespace coinruns
