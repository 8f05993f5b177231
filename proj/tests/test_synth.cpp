#include "aiskit/synth.hpp"

#include <sstream>

#include "aiskit/affinity.hpp"
#include "aiskit/errors.hpp"
#include "doctest.h"

using namespace aiskit;

TEST_CASE("zero-noise clones are identical to the target") {
    RatingsSynthConfig cfg;
    cfg.users = 10;
    cfg.items = 8;
    cfg.clones = 3;
    cfg.target = 4;
    cfg.noise = 0.0;
    cfg.seed = 5;
    const RatingsDataset ds = synth_ratings(cfg);
    REQUIRE(ds.profiles().size() == 10);
    const auto& target = ds.profile(4);
    REQUIRE(target.size() == 8);

    std::size_t identical = 0;
    for (const auto& [user, profile] : ds.profiles()) {
        if (user != 4 && profile == target) {
            ++identical;
        }
    }
    CHECK(identical == 3);
}

TEST_CASE("exactly the clones correlate at 1 with zero noise") {
    RatingsSynthConfig cfg;
    cfg.users = 20;
    cfg.items = 24;
    cfg.clones = 5;
    cfg.target = 0;
    cfg.noise = 0.0;
    cfg.seed = 424242;
    const RatingsDataset ds = synth_ratings(cfg);
    AffinityConfig affinity;
    std::size_t perfect = 0;
    for (const auto& [user, profile] : ds.profiles()) {
        if (user == 0) {
            continue;
        }
        const auto result = pearson(profile, ds.profile(0), affinity);
        if (!result.degenerate && result.r >= 1.0 - 1e-12) {
            ++perfect;
        }
    }
    CHECK(perfect == 5);
}

TEST_CASE("full noise flips every clone vote") {
    RatingsSynthConfig cfg;
    cfg.users = 4;
    cfg.items = 10;
    cfg.clones = 3;
    cfg.target = 0;
    cfg.noise = 1.0;
    cfg.seed = 13;
    const RatingsDataset ds = synth_ratings(cfg);
    const auto& target = ds.profile(0);
    for (const auto& [user, profile] : ds.profiles()) {
        if (user == 0) {
            continue;
        }
        for (const auto& [item, score] : profile.votes()) {
            CHECK(score != target.vote_for(item));
        }
    }
}

TEST_CASE("ratings synthesis is byte-stable per seed") {
    RatingsSynthConfig cfg;
    cfg.seed = 31415;
    std::ostringstream a, b;
    write_ratings_csv(a, synth_ratings(cfg));
    write_ratings_csv(b, synth_ratings(cfg));
    CHECK(a.str() == b.str());
    CHECK(a.str().starts_with("user_id,item_id,rating\n"));

    cfg.seed = 31416;
    std::ostringstream c;
    write_ratings_csv(c, synth_ratings(cfg));
    CHECK(a.str() != c.str());
}

TEST_CASE("ratings synthesis validates its parameters") {
    RatingsSynthConfig cfg;
    SUBCASE("target in range") {
        cfg.target = cfg.users;
        CHECK_THROWS_AS(synth_ratings(cfg), ConfigError);
    }
    SUBCASE("clones leave room") {
        cfg.clones = cfg.users;
        CHECK_THROWS_AS(synth_ratings(cfg), ConfigError);
    }
    SUBCASE("noise is a probability") {
        cfg.noise = 1.5;
        CHECK_THROWS_AS(synth_ratings(cfg), ConfigError);
    }
}

TEST_CASE("packet synthesis labels self and anomalies") {
    PacketSynthConfig cfg;
    cfg.self_count = 30;
    cfg.anomaly_count = 7;
    cfg.seed = 8;
    const PacketLog log = synth_packets(cfg);
    REQUIRE(log.size() == 37);
    REQUIRE(log.labeled());

    std::size_t self = 0, nonself = 0;
    for (const auto& record : log.records()) {
        REQUIRE(record.packet.is_concrete());
        if (*record.is_self) {
            ++self;
            // Trusted network: both endpoints inside 10.0.0.0/24.
            CHECK((*record.packet.src_ip & 0xffffff00) == 0x0a000000);
            CHECK((*record.packet.dst_ip & 0xffffff00) == 0x0a000000);
        } else {
            ++nonself;
            CHECK((*record.packet.src_ip & 0xffffff00) != 0x0a000000);
        }
    }
    CHECK(self == 30);
    CHECK(nonself == 7);
}

TEST_CASE("packet synthesis is byte-stable per seed") {
    PacketSynthConfig cfg;
    cfg.seed = 4096;
    std::ostringstream a, b;
    synth_packets(cfg).to_csv(a);
    synth_packets(cfg).to_csv(b);
    CHECK(a.str() == b.str());
}
