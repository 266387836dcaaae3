#include "springer/matching.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "springer/errors.hpp"

namespace springer {

Matching::Matching(int n, std::vector<Pair> pairs) : n_(n), pairs_(std::move(pairs)) {
    if (n < 0) {
        throw PreconditionError("matching size must be nonnegative");
    }
    if (static_cast<int>(pairs_.size()) != n) {
        throw PreconditionError("matching of 2n points needs exactly n pairs");
    }
    for (auto& [i, j] : pairs_) {
        if (i > j) {
            std::swap(i, j);
        }
        if (i < 1 || j > 2 * n) {
            throw PreconditionError("pair endpoint outside {1..2n}");
        }
    }
    std::sort(pairs_.begin(), pairs_.end());

    partner_.assign(2 * n, 0);
    for (const auto& [i, j] : pairs_) {
        if (partner_[i - 1] != 0 || partner_[j - 1] != 0) {
            throw PreconditionError("pairs do not partition {1..2n}: repeated endpoint");
        }
        partner_[i - 1] = j;
        partner_[j - 1] = i;
    }
    for (int i = 1; i <= 2 * n; ++i) {
        if (partner_[i - 1] == 0) {
            throw PreconditionError("pairs do not partition {1..2n}: missing endpoint");
        }
    }
    for (const auto& [i, j] : pairs_) {
        if ((j - i) % 2 == 0) {
            throw PreconditionError("cup spans an even gap; not a crossingless matching");
        }
        for (const auto& [k, l] : pairs_) {
            if (i < k && k < j && j < l) {
                throw PreconditionError("pairs cross");
            }
        }
    }
}

int Matching::partner(int i) const {
    if (i < 1 || i > 2 * n_) {
        throw PreconditionError("point index outside {1..2n}");
    }
    return partner_[i - 1];
}

bool Matching::is_left_endpoint(int i) const {
    return partner(i) > i;
}

int Matching::right_end(int i) const {
    if (!is_left_endpoint(i)) {
        throw PreconditionError("not a left endpoint: " + std::to_string(i));
    }
    return partner_[i - 1];
}

int Matching::half_width(int i) const {
    return (right_end(i) - i + 1) / 2;
}

std::vector<int> Matching::left_endpoints() const {
    std::vector<int> out;
    out.reserve(n_);
    for (const auto& [i, j] : pairs_) {
        out.push_back(i);
    }
    return out;
}

int Matching::find_adjacent() const {
    for (int i = 1; i < 2 * n_; ++i) {
        if (partner_[i - 1] == i + 1) {
            return i;
        }
    }
    throw NumericalDegeneracy("no adjacent pair; matching is corrupted", 0.0);
}

std::vector<int> Matching::adjacent_pairs() const {
    std::vector<int> out;
    for (int i = 1; i < 2 * n_; ++i) {
        if (partner_[i - 1] == i + 1) {
            out.push_back(i);
        }
    }
    return out;
}

Matching Matching::reduce(int i) const {
    if (i < 1 || i >= 2 * n_ || partner_[i - 1] != i + 1) {
        throw PreconditionError("(i, i+1) is not a pair of the matching");
    }
    std::vector<Pair> out;
    out.reserve(n_ - 1);
    for (const auto& [a, b] : pairs_) {
        if (a == i) {
            continue;
        }
        const int a2 = a > i ? a - 2 : a;
        const int b2 = b > i ? b - 2 : b;
        out.emplace_back(a2, b2);
    }
    return Matching(n_ - 1, std::move(out));
}

std::vector<Matching::Pair> Matching::outermost() const {
    std::vector<Pair> out;
    int start = 1;
    int width_sum = 0;
    while (start <= 2 * n_) {
        const int end = partner_[start - 1];
        if (end < start) {
            throw NumericalDegeneracy("outermost scan hit a right endpoint", 0.0);
        }
        out.emplace_back(start, end);
        width_sum += (end - start + 1) / 2;
        start = end + 1;
    }
    if (width_sum != n_) {
        throw NumericalDegeneracy("outermost half-widths do not sum to n", 0.0);
    }
    return out;
}

namespace {

void enumerate_words(int open, int close, int n, std::string& word,
                     std::vector<std::string>& out) {
    if (static_cast<int>(word.size()) == 2 * n) {
        out.push_back(word);
        return;
    }
    // ')' first, so words come out with inner cups closed as early as
    // possible; the final pair-list sort fixes the published order.
    if (close < open) {
        word.push_back(')');
        enumerate_words(open, close + 1, n, word, out);
        word.pop_back();
    }
    if (open < n) {
        word.push_back('(');
        enumerate_words(open + 1, close, n, word, out);
        word.pop_back();
    }
}

Matching matching_from_word(const std::string& word, std::size_t offset) {
    std::vector<int> stack;
    std::vector<Matching::Pair> pairs;
    for (std::size_t k = 0; k < word.size(); ++k) {
        if (word[k] == '(') {
            stack.push_back(static_cast<int>(k) + 1);
        } else if (word[k] == ')') {
            if (stack.empty()) {
                throw ParseError("unmatched ')'", offset + k);
            }
            pairs.emplace_back(stack.back(), static_cast<int>(k) + 1);
            stack.pop_back();
        } else {
            throw ParseError("expected '(' or ')'", offset + k);
        }
    }
    if (!stack.empty()) {
        throw ParseError("unmatched '('", offset + word.size());
    }
    const int n = static_cast<int>(pairs.size());
    return Matching(n, std::move(pairs));
}

Matching matching_from_pair_list(const std::string& text) {
    std::size_t pos = 1; // past '['
    std::vector<Matching::Pair> pairs;
    auto skip_spaces = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) {
            ++pos;
        }
    };
    auto read_int = [&]() -> int {
        skip_spaces();
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            ++pos;
        }
        if (pos == start) {
            throw ParseError("expected an integer", pos);
        }
        return std::stoi(text.substr(start, pos - start));
    };
    auto expect = [&](char c) {
        skip_spaces();
        if (pos >= text.size() || text[pos] != c) {
            throw ParseError(std::string("expected '") + c + "'", pos);
        }
        ++pos;
    };

    skip_spaces();
    if (pos < text.size() && text[pos] == ']') {
        ++pos;
    } else {
        while (true) {
            expect('(');
            const int a = read_int();
            expect(',');
            const int b = read_int();
            expect(')');
            pairs.emplace_back(a, b);
            skip_spaces();
            if (pos < text.size() && text[pos] == ',') {
                ++pos;
                continue;
            }
            expect(']');
            break;
        }
    }
    skip_spaces();
    if (pos != text.size()) {
        throw ParseError("trailing characters after pair list", pos);
    }
    try {
        const int n = static_cast<int>(pairs.size());
        return Matching(n, std::move(pairs));
    } catch (const PreconditionError& e) {
        throw ParseError(std::string("invalid matching: ") + e.what(), 0);
    }
}

} // namespace

std::vector<Matching> enumerate_matchings(int n) {
    constexpr int kCap = 8;
    if (n < 1 || n > kCap) {
        throw PreconditionError("matching enumeration supports 1 <= n <= 8");
    }
    std::vector<std::string> words;
    std::string word;
    word.reserve(2 * n);
    word.push_back('(');
    enumerate_words(1, 0, n, word, words);

    std::vector<Matching> out;
    out.reserve(words.size());
    for (const auto& w : words) {
        out.push_back(matching_from_word(w, 0));
    }
    std::sort(out.begin(), out.end(), [](const Matching& a, const Matching& b) {
        return a.pairs() < b.pairs();
    });
    return out;
}

Matching parse_matching(const std::string& text) {
    std::size_t first = 0;
    while (first < text.size() && std::isspace(static_cast<unsigned char>(text[first]))) {
        ++first;
    }
    if (first == text.size()) {
        throw ParseError("empty matching text", first);
    }
    if (text[first] == '[') {
        return matching_from_pair_list(text.substr(first));
    }
    std::size_t last = text.size();
    while (last > first && std::isspace(static_cast<unsigned char>(text[last - 1]))) {
        --last;
    }
    return matching_from_word(text.substr(first, last - first), first);
}

std::string format_matching(const Matching& a) {
    std::string word(a.points(), ')');
    for (int i : a.left_endpoints()) {
        word[i - 1] = '(';
    }
    return word;
}

std::string format_matching_pairs(const Matching& a) {
    std::string out = "[";
    bool sep = false;
    for (const auto& [i, j] : a.pairs()) {
        if (sep) {
            out += ",";
        }
        out += "(" + std::to_string(i) + "," + std::to_string(j) + ")";
        sep = true;
    }
    out += "]";
    return out;
}

} // namespace springer
