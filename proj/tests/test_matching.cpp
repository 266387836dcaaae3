#include <algorithm>
#include <set>

#include <doctest.h>

#include "springer/errors.hpp"
#include "springer/matching.hpp"

#include "support.hpp"

using namespace springer;
using test_support::all_pairings;
using test_support::has_crossing;

namespace {

Matching make(int n, std::vector<std::pair<int, int>> pairs) {
    return Matching(n, std::move(pairs));
}

} // namespace

TEST_SUITE("matching") {

TEST_CASE("enumeration counts are Catalan numbers, cross-checked by brute force") {
    const int catalan[] = {1, 2, 5, 14, 42, 132};
    for (int n = 1; n <= 6; ++n) {
        const auto enumerated = enumerate_matchings(n);
        CHECK(static_cast<int>(enumerated.size()) == catalan[n - 1]);

        // Independent oracle: filter every perfect pairing for crossings.
        std::set<std::vector<std::pair<int, int>>> expected;
        for (auto pairing : all_pairings(n)) {
            if (!has_crossing(pairing)) {
                std::sort(pairing.begin(), pairing.end());
                expected.insert(pairing);
            }
        }
        CHECK(expected.size() == enumerated.size());
        for (const Matching& a : enumerated) {
            CHECK(expected.count(a.pairs()) == 1);
        }
    }
}

TEST_CASE("enumeration order is lexicographic by pair list") {
    CHECK(enumerate_matchings(1) == std::vector<Matching>{make(1, {{1, 2}})});
    CHECK(enumerate_matchings(2) ==
          std::vector<Matching>{make(2, {{1, 2}, {3, 4}}), make(2, {{1, 4}, {2, 3}})});
    CHECK(enumerate_matchings(3).size() == 5);
    for (int n = 1; n <= 6; ++n) {
        const auto ms = enumerate_matchings(n);
        CHECK(std::is_sorted(ms.begin(), ms.end(),
                             [](const Matching& a, const Matching& b) {
                                 return a.pairs() < b.pairs();
                             }));
    }
}

TEST_CASE("enumeration rejects out-of-range n") {
    CHECK_THROWS_AS(enumerate_matchings(0), PreconditionError);
    CHECK_THROWS_AS(enumerate_matchings(9), PreconditionError);
}

TEST_CASE("construction validates the crossingless matching invariants") {
    CHECK_THROWS_AS(make(2, {{1, 2}, {2, 3}}), PreconditionError); // repeated point
    CHECK_THROWS_AS(make(2, {{1, 3}, {2, 4}}), PreconditionError); // crossing
    CHECK_THROWS_AS(make(2, {{1, 3}, {2, 5}}), PreconditionError); // out of range
    CHECK_THROWS_AS(make(1, {{1, 2}, {3, 4}}), PreconditionError); // wrong count
}

TEST_CASE("right endpoint and half-width of a cup") {
    const Matching nested = make(2, {{1, 4}, {2, 3}});
    CHECK(nested.right_end(1) == 4);
    CHECK(nested.half_width(1) == 2);
    CHECK(nested.half_width(2) == 1);
    CHECK(make(1, {{1, 2}}).right_end(1) == 2);
    CHECK(make(1, {{1, 2}}).half_width(1) == 1);
    CHECK(make(2, {{1, 2}, {3, 4}}).right_end(3) == 4);
    CHECK_THROWS_AS(nested.right_end(4), PreconditionError);
    CHECK_THROWS_AS(nested.right_end(3), PreconditionError);
}

TEST_CASE("left endpoints") {
    CHECK(make(2, {{1, 4}, {2, 3}}).left_endpoints() == std::vector<int>{1, 2});
    CHECK(make(2, {{1, 2}, {3, 4}}).left_endpoints() == std::vector<int>{1, 3});
    CHECK(make(3, {{1, 6}, {2, 3}, {4, 5}}).left_endpoints() == std::vector<int>{1, 2, 4});
}

TEST_CASE("find_adjacent returns the smallest adjacent cup") {
    CHECK(make(2, {{1, 4}, {2, 3}}).find_adjacent() == 2);
    CHECK(make(2, {{1, 2}, {3, 4}}).find_adjacent() == 1);
    CHECK(make(3, {{1, 6}, {2, 5}, {3, 4}}).find_adjacent() == 3);
}

TEST_CASE("reduce removes an adjacent cup and renumbers") {
    CHECK(make(2, {{1, 4}, {2, 3}}).reduce(2) == make(1, {{1, 2}}));
    CHECK(make(2, {{1, 2}, {3, 4}}).reduce(1) == make(1, {{1, 2}}));
    CHECK(make(3, {{1, 6}, {2, 5}, {3, 4}}).reduce(3) == make(2, {{1, 4}, {2, 3}}));
    CHECK_THROWS_AS(make(2, {{1, 4}, {2, 3}}).reduce(1), PreconditionError);
}

TEST_CASE("outermost cups tile the points and their half-widths sum to n") {
    using Pairs = std::vector<std::pair<int, int>>;
    CHECK(make(2, {{1, 4}, {2, 3}}).outermost() == Pairs{{1, 4}});
    CHECK(make(2, {{1, 2}, {3, 4}}).outermost() == Pairs{{1, 2}, {3, 4}});
    const Matching mixed = make(3, {{1, 2}, {3, 6}, {4, 5}});
    CHECK(mixed.outermost() == Pairs{{1, 2}, {3, 6}});
    CHECK(mixed.half_width(1) + mixed.half_width(3) == 3);

    for (int n = 1; n <= 6; ++n) {
        for (const Matching& a : enumerate_matchings(n)) {
            const auto outer = a.outermost();
            CHECK(outer.front().first == 1);
            CHECK(outer.back().second == 2 * n);
            int width_sum = 0;
            for (std::size_t s = 0; s < outer.size(); ++s) {
                if (s + 1 < outer.size()) {
                    CHECK(outer[s + 1].first == outer[s].second + 1);
                }
                width_sum += a.half_width(outer[s].first);
            }
            CHECK(width_sum == n);
        }
    }
}

TEST_CASE("cup combinatorics invariants over full enumerations") {
    for (int n = 1; n <= 6; ++n) {
        for (const Matching& a : enumerate_matchings(n)) {
            const auto lefts = a.left_endpoints();
            CHECK(static_cast<int>(lefts.size()) == n);
            for (int i : lefts) {
                CHECK(i < a.right_end(i));
                CHECK((a.right_end(i) - i) % 2 == 1);
                CHECK(a.half_width(i) >= 1);
                CHECK(a.half_width(i) <= n);
            }
            // Repeated adjacent reduction reaches the empty matching.
            Matching cur = a;
            for (int step = 0; step < n; ++step) {
                cur = cur.reduce(cur.find_adjacent());
            }
            CHECK(cur.n() == 0);
        }
    }
}

TEST_CASE("parenthesis and pair-list text forms") {
    CHECK(parse_matching("(())") == make(2, {{1, 4}, {2, 3}}));
    CHECK(parse_matching("()") == make(1, {{1, 2}}));
    CHECK(parse_matching("()()") == make(2, {{1, 2}, {3, 4}}));
    CHECK(parse_matching("[(1,4),(2,3)]") == make(2, {{1, 4}, {2, 3}}));
    CHECK(parse_matching(" [ (1, 2) ] ") == make(1, {{1, 2}}));
    CHECK(format_matching(make(2, {{1, 4}, {2, 3}})) == "(())");
    CHECK(format_matching_pairs(make(2, {{1, 4}, {2, 3}})) == "[(1,4),(2,3)]");

    for (int n = 1; n <= 6; ++n) {
        for (const Matching& a : enumerate_matchings(n)) {
            CHECK(parse_matching(format_matching(a)) == a);
            CHECK(parse_matching(format_matching_pairs(a)) == a);
        }
    }
}

TEST_CASE("parse errors carry a position") {
    CHECK_THROWS_AS(parse_matching("(()"), ParseError);
    CHECK_THROWS_AS(parse_matching("())"), ParseError);
    CHECK_THROWS_AS(parse_matching("(x)"), ParseError);
    CHECK_THROWS_AS(parse_matching(""), ParseError);
    CHECK_THROWS_AS(parse_matching("[(1,2)"), ParseError);
    CHECK_THROWS_AS(parse_matching("[(1,3)]"), ParseError); // even gap
    try {
        parse_matching("())");
    } catch (const ParseError& e) {
        CHECK(e.position() == 2);
    }
}

} // TEST_SUITE
