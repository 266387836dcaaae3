#pragma once

#include <string>
#include <utility>
#include <vector>

namespace springer {

/// A crossingless perfect matching of the points {1, ..., 2n}: n disjoint
/// nested cups. Pairs are stored as (left, right) with left < right, sorted
/// by left endpoint. Indices are 1-based everywhere, including the text
/// formats.
///
/// Construction validates that the pairs partition {1..2n}, that no two
/// cups cross, and that every cup spans an odd gap (both forced for a
/// crossingless perfect matching, but checked rather than assumed).
class Matching {
public:
    using Pair = std::pair<int, int>;

    /// The empty matching (n = 0).
    Matching() = default;

    /// Throws PreconditionError when the pair set is not a crossingless
    /// perfect matching of {1..2n}.
    Matching(int n, std::vector<Pair> pairs);

    int n() const noexcept { return n_; }
    int points() const noexcept { return 2 * n_; }

    /// Pairs sorted ascending by left endpoint.
    const std::vector<Pair>& pairs() const noexcept { return pairs_; }

    /// The other endpoint of the cup through i (any endpoint).
    int partner(int i) const;

    bool is_left_endpoint(int i) const;

    /// Right endpoint of the cup whose left endpoint is i.
    /// Throws PreconditionError when i is not a left endpoint.
    int right_end(int i) const;

    /// Half-width (right - left + 1) / 2 of the cup with left endpoint i;
    /// always a positive integer, at most n. This is the number of shift
    /// preimages the cup contributes on the flag side.
    int half_width(int i) const;

    /// All left endpoints, ascending; always n of them.
    std::vector<int> left_endpoints() const;

    /// Smallest i with (i, i+1) a cup. Every nonempty crossingless
    /// matching has one.
    int find_adjacent() const;

    /// All i with (i, i+1) a cup, ascending.
    std::vector<int> adjacent_pairs() const;

    /// Remove the cup (i, i+1) and renumber j >= i+2 down by 2, giving a
    /// matching of 2(n-1) points. Throws PreconditionError when (i, i+1)
    /// is not a cup.
    Matching reduce(int i) const;

    /// The cups not nested inside any other cup, left to right. They tile
    /// {1..2n}: the first starts at 1, each next starts one past the
    /// previous end, the last ends at 2n, and their half-widths sum to n.
    std::vector<Pair> outermost() const;

    bool operator==(const Matching& other) const noexcept {
        return n_ == other.n_ && pairs_ == other.pairs_;
    }

private:
    int n_ = 0;
    std::vector<Pair> pairs_;
    std::vector<int> partner_; // partner_[i-1] = partner of point i
};

/// All crossingless matchings of 2n points, sorted lexicographically by
/// their pair list. The count is the n-th Catalan number.
/// Throws PreconditionError for n < 1 or n > 8.
std::vector<Matching> enumerate_matchings(int n);

/// Parses either a balanced-parenthesis word ("(())") or a pair list
/// ("[(1,4),(2,3)]"). Throws ParseError with the offending position.
Matching parse_matching(const std::string& text);

/// Canonical text form: the balanced-parenthesis word, '(' at left
/// endpoints. parse_matching(format_matching(a)) == a.
std::string format_matching(const Matching& a);

/// Pair-list text form: "[(1,4),(2,3)]".
std::string format_matching_pairs(const Matching& a);

} // namespace springer
