#include "aiskit/recommender.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "aiskit/errors.hpp"
#include "aiskit/synth.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace aiskit;

namespace {

RatingsDataset two_user_dataset() {
    RatingsDataset ds;
    // Positively correlated on four shared items.
    for (const auto& [item, a, b] : {std::tuple{0, 5, 4}, {1, 4, 5}, {2, 1, 0}, {3, 0, 1}}) {
        ds.add_vote(1, static_cast<ItemId>(item), a);
        ds.add_vote(2, static_cast<ItemId>(item), b);
    }
    return ds;
}

PoolConfig separating_pool(std::size_t capacity) {
    // Candidates below |r| ~ 0.64 fall out within the stability window,
    // strong ones grow.
    PoolConfig cfg;
    cfg.capacity = capacity;
    cfg.k2 = 0.7;
    cfg.k3 = 0.65;
    return cfg;
}

}  // namespace

TEST_CASE("ratings CSV ingestion") {
    std::istringstream in(
        "user_id,item_id,rating\n"
        "1,10,5\n"
        "1,11,3\n"
        "2,10,0\n");
    const auto ds = RatingsDataset::from_csv(in);
    CHECK(ds.profiles().size() == 2);
    CHECK(ds.catalog().size() == 2);
    CHECK(ds.profile(1).vote_for(11) == 3);
}

TEST_CASE("ratings CSV rejects malformed rows with line numbers") {
    auto parse = [](const std::string& text) {
        std::istringstream in(text);
        return RatingsDataset::from_csv(in);
    };
    CHECK_THROWS_WITH_AS(parse("user,item,score\n"),
                         doctest::Contains("line 1"), ParseError);
    CHECK_THROWS_WITH_AS(parse("user_id,item_id,rating\n1,10\n"),
                         doctest::Contains("line 2"), ParseError);
    CHECK_THROWS_WITH_AS(parse("user_id,item_id,rating\n1,10,5\n1,x,3\n"),
                         doctest::Contains("line 3"), ParseError);
    CHECK_THROWS_WITH_AS(parse("user_id,item_id,rating\n1,10,9\n"),
                         doctest::Contains("line 2"), ParseError);
    // Duplicate votes and quoting are rejected too.
    CHECK_THROWS_WITH_AS(parse("user_id,item_id,rating\n1,10,5\n1,10,4\n"),
                         doctest::Contains("line 3"), ParseError);
    CHECK_THROWS_WITH_AS(parse("user_id,item_id,rating\n\"1\",10,5\n"),
                         doctest::Contains("quoted"), ParseError);
}

TEST_CASE("affinity_of magnitudes and flags") {
    AffinityConfig cfg;
    cfg.pearson_overlap_threshold = 3;

    VoteProfile target;
    target.add_vote(0, 5);
    target.add_vote(1, 1);
    target.add_vote(2, 3);

    SUBCASE("identical profiles") {
        const auto a = affinity_of(target, target, cfg);
        CHECK(a.m == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(a.r == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("anti-correlated profiles are equally useful") {
        VoteProfile opposite;
        opposite.add_vote(0, 0);
        opposite.add_vote(1, 4);
        opposite.add_vote(2, 2);
        const auto a = affinity_of(opposite, target, cfg);
        CHECK(a.r == doctest::Approx(-1.0).epsilon(1e-12));
        CHECK(a.m == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("zero overlap flags and zeroes the match") {
        VoteProfile stranger;
        stranger.add_vote(9, 4);
        const auto a = affinity_of(stranger, target, cfg);
        CHECK(a.m == 0.0);
        CHECK(a.no_overlap);
    }
}

TEST_CASE("a sole positively correlated candidate survives") {
    const auto ds = two_user_dataset();
    AffinityConfig affinity;
    affinity.pearson_overlap_threshold = 4;
    const auto hood = build_neighborhood(1, ds, separating_pool(3), affinity);
    CHECK(hood.stable);
    CHECK(!hood.empty);
    REQUIRE(hood.neighbors.size() == 1);
    CHECK(hood.neighbors.front().user == 2);
    CHECK(hood.neighbors.front().r == doctest::Approx(15.0 / 17.0).epsilon(1e-12));
    CHECK(hood.neighbors.front().concentration > 0.0);
}

TEST_CASE("a target sharing no items gets an empty flagged neighborhood") {
    RatingsDataset ds;
    ds.add_vote(1, 0, 5);
    ds.add_vote(1, 1, 2);
    ds.add_vote(2, 5, 3);
    ds.add_vote(2, 6, 1);
    AffinityConfig affinity;
    const auto hood = build_neighborhood(1, ds, separating_pool(3), affinity);
    CHECK(hood.empty);
    CHECK(hood.neighbors.empty());
    CHECK(hood.stable);
}

TEST_CASE("unknown users are reported") {
    const auto ds = two_user_dataset();
    AffinityConfig affinity;
    CHECK_THROWS_AS(build_neighborhood(9, ds, separating_pool(3), affinity), NotFoundError);
}

TEST_CASE("planted clones win the neighborhood") {
    RatingsSynthConfig synth;
    synth.users = 20;
    synth.items = 24;
    synth.clones = 5;
    synth.target = 0;
    synth.noise = 0.0;
    synth.seed = 424242;
    const RatingsDataset ds = synth_ratings(synth);

    AffinityConfig affinity;
    const auto& target_profile = ds.profile(0);

    // Brute-force ranking oracle over every candidate.
    std::vector<std::pair<double, UserId>> ranking;
    for (const auto& [user, profile] : ds.profiles()) {
        if (user == 0) {
            continue;
        }
        const auto value = oracle::pearson(
            [&] {
                std::map<std::uint64_t, int> votes;
                for (const auto& [item, score] : profile.votes()) votes[item] = score;
                return votes;
            }(),
            [&] {
                std::map<std::uint64_t, int> votes;
                for (const auto& [item, score] : target_profile.votes()) votes[item] = score;
                return votes;
            }(),
            affinity.pearson_overlap_threshold);
        ranking.emplace_back(std::fabs(value.r), user);
    }
    std::sort(ranking.begin(), ranking.end(), [](const auto& a, const auto& b) {
        return a.first > b.first;
    });
    // The fixture must separate: five clones at 1, everyone else well below
    // the dropout bound.
    REQUIRE(ranking[4].first == doctest::Approx(1.0).epsilon(1e-12));
    REQUIRE(ranking[5].first < 0.6);
    std::set<UserId> expected;
    for (int i = 0; i < 5; ++i) {
        expected.insert(ranking[static_cast<std::size_t>(i)].second);
    }

    const auto hood = build_neighborhood(0, ds, separating_pool(5), affinity);
    CHECK(hood.stable);
    std::set<UserId> survivors;
    for (const auto& n : hood.neighbors) {
        survivors.insert(n.user);
    }
    CHECK(survivors == expected);
}

namespace {

Neighborhood hand_neighborhood(UserId target, std::vector<Neighbor> neighbors) {
    Neighborhood hood;
    hood.target = target;
    hood.neighbors = std::move(neighbors);
    hood.stable = true;
    return hood;
}

}  // namespace

TEST_CASE("constant-offset prediction is exact") {
    RatingsDataset ds;
    // Target mean 3 over items {0, 1}.
    ds.add_vote(0, 0, 2);
    ds.add_vote(0, 1, 4);
    // Three neighbors, each with mean 3 and item 5 rated at mean + 1.
    for (UserId user : {1, 2, 3}) {
        ds.add_vote(user, 0, 2);
        ds.add_vote(user, 1, 3);
        ds.add_vote(user, 5, 4);
    }
    const auto hood = hand_neighborhood(0, {{1, 2.0, 1.0, false},
                                            {2, 2.0, 1.0, false},
                                            {3, 2.0, 1.0, false}});
    const auto p = predict(ds, hood, 5);
    CHECK(p.raw_score == 4.0);  // target mean 3 + offset 1, exactly
    CHECK(p.score == 4.0);
    CHECK(p.neighbors_used == 3);
}

TEST_CASE("a single neighbor rating at its own mean predicts the target mean") {
    RatingsDataset ds;
    ds.add_vote(0, 0, 1);
    ds.add_vote(0, 1, 3);  // target mean 2
    ds.add_vote(1, 0, 2);
    ds.add_vote(1, 1, 4);
    ds.add_vote(1, 5, 3);  // neighbor mean (2+4+3)/3 = 3, votes item 5 at 3
    const auto hood = hand_neighborhood(0, {{1, 1.7, 1.0, false}});
    const auto p = predict(ds, hood, 5);
    CHECK(p.raw_score == 2.0);
    CHECK(p.score == 2.0);
}

TEST_CASE("mixed-sign three-neighbor prediction matches a spreadsheet oracle") {
    RatingsDataset ds;
    ds.add_vote(0, 0, 4);
    ds.add_vote(0, 1, 2);  // target mean 3
    struct Row {
        UserId user;
        int v0, v1, item_vote;
        double concentration, r;
    };
    const std::vector<Row> rows = {
        {1, 5, 1, 4, 1.50, 0.9},
        {2, 0, 4, 1, 0.75, -0.8},
        {3, 3, 3, 5, 2.00, 0.4},
    };
    std::vector<Neighbor> neighbors;
    for (const auto& row : rows) {
        ds.add_vote(row.user, 0, row.v0);
        ds.add_vote(row.user, 1, row.v1);
        ds.add_vote(row.user, 7, row.item_vote);
        neighbors.push_back({row.user, row.concentration, row.r, false});
    }

    // Direct formula evaluation outside the library.
    double numerator = 0.0, magnitude = 0.0;
    for (const auto& row : rows) {
        const double mean = (row.v0 + row.v1 + row.item_vote) / 3.0;
        const double w = row.concentration * row.r;
        numerator += w * (row.item_vote - mean);
        magnitude += std::fabs(w);
    }
    const double expected = 3.0 + numerator / magnitude;

    const auto p = predict(ds, hand_neighborhood(0, neighbors), 7);
    CHECK(p.raw_score == doctest::Approx(expected).epsilon(1e-12));
    CHECK(p.neighbors_used == 3);
}

TEST_CASE("predictions clamp into the score range and keep the raw value") {
    RatingsDataset ds;
    ds.add_vote(0, 0, 5);
    ds.add_vote(0, 1, 5);  // target mean 5
    ds.add_vote(1, 0, 1);
    ds.add_vote(1, 1, 5);
    ds.add_vote(1, 9, 5);  // neighbor mean 11/3, vote 5 -> positive offset
    const auto hood = hand_neighborhood(0, {{1, 1.0, 1.0, false}});
    const auto p = predict(ds, hood, 9);
    CHECK(p.raw_score > 5.0);
    CHECK(p.score == 5.0);
}

TEST_CASE("prediction requires at least one voting neighbor") {
    const auto ds = two_user_dataset();
    const auto hood = hand_neighborhood(1, {{2, 1.0, 1.0, false}});
    CHECK_THROWS_AS(predict(ds, hood, 99), NoDataError);
}

TEST_CASE("recommend ranks predictable unseen items") {
    RatingsDataset ds;
    ds.add_vote(0, 0, 4);
    ds.add_vote(0, 1, 2);
    // Neighbor rates two unseen items, one high one low.
    ds.add_vote(1, 0, 4);
    ds.add_vote(1, 1, 2);
    ds.add_vote(1, 10, 5);
    ds.add_vote(1, 11, 0);
    const auto hood = hand_neighborhood(0, {{1, 1.0, 1.0, false}});

    SUBCASE("both predictable items come back ranked") {
        const auto recs = recommend(ds, hood, 10);
        REQUIRE(recs.size() == 2);
        CHECK(recs[0].item == 10);
        CHECK(recs[1].item == 11);
        CHECK(recs[0].score >= recs[1].score);
    }
    SUBCASE("k truncates") {
        const auto recs = recommend(ds, hood, 1);
        REQUIRE(recs.size() == 1);
        CHECK(recs[0].item == 10);
    }
    SUBCASE("k must be positive") {
        CHECK_THROWS_AS(recommend(ds, hood, 0), ConfigError);
    }
}

TEST_CASE("recommend returns nothing when the target rated everything") {
    const auto ds = two_user_dataset();
    const auto hood = hand_neighborhood(1, {{2, 1.0, 1.0, false}});
    CHECK(recommend(ds, hood, 5).empty());
}

TEST_CASE("ties break by ascending item id") {
    RatingsDataset ds;
    ds.add_vote(0, 0, 3);
    ds.add_vote(0, 1, 3);
    ds.add_vote(1, 0, 3);
    ds.add_vote(1, 1, 3);
    ds.add_vote(1, 21, 4);
    ds.add_vote(1, 12, 4);  // same deviation as 21, smaller id
    const auto hood = hand_neighborhood(0, {{1, 1.0, 1.0, false}});
    const auto recs = recommend(ds, hood, 5);
    REQUIRE(recs.size() == 2);
    CHECK(recs[0].score == recs[1].score);
    CHECK(recs[0].item == 12);
    CHECK(recs[1].item == 21);
}

TEST_CASE("relabeling user ids leaves predictions unchanged") {
    RatingsSynthConfig synth;
    synth.users = 12;
    synth.items = 10;
    synth.clones = 3;
    synth.target = 2;
    synth.noise = 0.1;
    synth.seed = 9;
    const RatingsDataset original = synth_ratings(synth);

    // Multiply ids by 10: order preserved, labels changed.
    RatingsDataset relabeled;
    for (const auto& [user, profile] : original.profiles()) {
        for (const auto& [item, score] : profile.votes()) {
            relabeled.add_vote(user * 10, item, score);
        }
    }

    AffinityConfig affinity;
    const auto hood_a = build_neighborhood(2, original, separating_pool(4), affinity);
    const auto hood_b = build_neighborhood(20, relabeled, separating_pool(4), affinity);
    REQUIRE(hood_a.neighbors.size() == hood_b.neighbors.size());
    for (std::size_t i = 0; i < hood_a.neighbors.size(); ++i) {
        CHECK(hood_a.neighbors[i].user * 10 == hood_b.neighbors[i].user);
        CHECK(hood_a.neighbors[i].concentration == hood_b.neighbors[i].concentration);
        CHECK(hood_a.neighbors[i].r == hood_b.neighbors[i].r);
    }

    for (ItemId item : original.catalog()) {
        if (original.profile(2).vote_for(item)) {
            continue;
        }
        Prediction pa{}, pb{};
        bool has_a = true, has_b = true;
        try {
            pa = predict(original, hood_a, item);
        } catch (const NoDataError&) {
            has_a = false;
        }
        try {
            pb = predict(relabeled, hood_b, item);
        } catch (const NoDataError&) {
            has_b = false;
        }
        REQUIRE(has_a == has_b);
        if (has_a) {
            CHECK(pa.score == pb.score);
            CHECK(pa.raw_score == pb.raw_score);
        }
    }
}

TEST_CASE("an item all clones rate 5 ranks first, matching the exhaustive oracle") {
    RatingsDataset ds;
    // Target rates items 0..3 only.
    ds.add_vote(0, 0, 4);
    ds.add_vote(0, 1, 2);
    ds.add_vote(0, 2, 5);
    ds.add_vote(0, 3, 1);
    // Three clones: identical on 0..3, all rate item 10 with 5, item 11 low.
    int low = 0;
    for (UserId user : {1, 2, 3}) {
        ds.add_vote(user, 0, 4);
        ds.add_vote(user, 1, 2);
        ds.add_vote(user, 2, 5);
        ds.add_vote(user, 3, 1);
        ds.add_vote(user, 10, 5);
        ds.add_vote(user, 11, low++);
    }

    AffinityConfig affinity;
    affinity.pearson_overlap_threshold = 4;
    const auto hood = build_neighborhood(0, ds, separating_pool(3), affinity);
    REQUIRE(hood.neighbors.size() == 3);

    const auto recs = recommend(ds, hood, 5);
    REQUIRE(recs.size() == 2);
    CHECK(recs[0].item == 10);

    // Exhaustive oracle: recompute each candidate item's prediction directly.
    for (ItemId item : {ItemId{10}, ItemId{11}}) {
        double numerator = 0.0, magnitude = 0.0;
        for (const auto& neighbor : hood.neighbors) {
            const auto& profile = ds.profile(neighbor.user);
            const auto vote = profile.vote_for(item);
            REQUIRE(vote.has_value());
            const double w = neighbor.concentration * neighbor.r;
            numerator += w * (static_cast<double>(*vote) - profile.mean());
            magnitude += std::fabs(w);
        }
        const double expected =
            std::clamp(ds.profile(0).mean() + numerator / magnitude, 0.0, 5.0);
        const auto& rec = item == 10 ? recs[0] : recs[1];
        CHECK(rec.item == item);
        CHECK(rec.score == doctest::Approx(expected).epsilon(1e-12));
    }
    CHECK(recs[0].score > recs[1].score);
}

TEST_CASE("survivors always carry a positive matching value") {
    RatingsSynthConfig synth;
    synth.users = 15;
    synth.items = 12;
    synth.clones = 2;
    synth.target = 1;
    synth.noise = 0.2;
    synth.seed = 77;
    const RatingsDataset ds = synth_ratings(synth);
    AffinityConfig affinity;
    const auto hood = build_neighborhood(1, ds, separating_pool(4), affinity);
    for (const auto& neighbor : hood.neighbors) {
        const auto a = affinity_of(ds.profile(neighbor.user), ds.profile(1), affinity);
        CHECK(a.m > 0.0);
    }
}

TEST_CASE("prediction CSV output") {
    std::vector<Prediction> predictions{{7, 4.25, 4.25, 3, 0}, {9, 1.0, 0.5, 1, 0}};
    std::ostringstream out;
    write_predictions_csv(out, 42, predictions);
    CHECK(out.str() ==
          "user_id,item_id,prediction,neighbors\n"
          "42,7,4.25,3\n"
          "42,9,1,1\n");
}
