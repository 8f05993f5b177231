#include "aiskit/encodings.hpp"

#include "aiskit/errors.hpp"
#include "doctest.h"

using namespace aiskit;

TEST_CASE("bit patterns parse and print positionally") {
    BitPattern p{"10010"};
    CHECK(p.size() == 5);
    CHECK(p[0] == 1);
    CHECK(p[3] == 1);
    CHECK(p[4] == 0);
    CHECK(p.to_string() == "10010");
    CHECK(p == BitPattern{"10010"});
    CHECK(p != BitPattern{"10011"});
}

TEST_CASE("bit patterns reject bad input") {
    CHECK_THROWS_AS(BitPattern{""}, ConfigError);
    CHECK_THROWS_AS(BitPattern{"01021"}, ParseError);
    CHECK_THROWS_AS(BitPattern{std::vector<std::uint8_t>{}}, ConfigError);
    CHECK_THROWS_AS((BitPattern{std::vector<std::uint8_t>{0, 2}}), ConfigError);
}

TEST_CASE("random bit patterns are deterministic per seed") {
    Rng a(42), b(42), c(7);
    auto pa = BitPattern::random(16, a);
    auto pb = BitPattern::random(16, b);
    auto pc = BitPattern::random(16, c);
    CHECK(pa == pb);
    CHECK(pa != pc);  // collision odds 2^-16
}

TEST_CASE("feature vectors require finite values") {
    CHECK_THROWS_AS(FeatureVector{std::vector<double>{}}, ConfigError);
    CHECK_THROWS_AS((FeatureVector{std::vector<double>{1.0, std::nan("")}}), ConfigError);
    FeatureVector v{{1.0, -2.5}};
    CHECK(v.size() == 2);
    CHECK(v[1] == -2.5);
}

TEST_CASE("vote profiles enforce range and uniqueness") {
    VoteProfile profile;
    profile.add_vote(3, 5);
    profile.add_vote(1, 0);
    CHECK_THROWS_AS(profile.add_vote(3, 2), ConfigError);
    CHECK_THROWS_AS(profile.add_vote(9, 6), ConfigError);
    CHECK_THROWS_AS(profile.add_vote(9, -1), ConfigError);
    CHECK(profile.size() == 2);
    CHECK(profile.vote_for(1) == 0);
    CHECK(!profile.vote_for(2).has_value());
    CHECK(profile.mean() == doctest::Approx(2.5));
}

TEST_CASE("empty vote profile has no mean") {
    VoteProfile profile;
    CHECK_THROWS_AS(profile.mean(), NoDataError);
}

TEST_CASE("packet signatures parse the five-field template") {
    auto sig = PacketSignature::parse("tcp,113.112.255.254,4312,108.200.111.12,25");
    CHECK(sig.protocol == Protocol::tcp);
    CHECK(sig.is_concrete());
    CHECK(format_ipv4(*sig.src_ip) == "113.112.255.254");
    CHECK(*sig.src_port == 4312);
    CHECK(*sig.dst_port == 25);
    CHECK(sig.to_string() == "tcp,113.112.255.254,4312,108.200.111.12,25");
}

TEST_CASE("packet signature wildcards") {
    auto det = PacketSignature::parse("tcp,*,*,*,25");
    CHECK(!det.is_concrete());
    CHECK(!det.src_ip.has_value());
    CHECK(det.dst_port == 25);
    CHECK(det.to_string() == "tcp,*,*,*,25");

    auto all = PacketSignature::parse("*,*,*,*,*");
    CHECK(all.protocol == Protocol::any);
    CHECK(all.to_string() == "*,*,*,*,*");
}

TEST_CASE("packet signatures reject malformed fields") {
    CHECK_THROWS_AS(PacketSignature::parse("tcp,1.2.3,80,4.5.6.7,25"), ParseError);
    CHECK_THROWS_AS(PacketSignature::parse("tcp,1.2.3.256,80,4.5.6.7,25"), ParseError);
    CHECK_THROWS_AS(PacketSignature::parse("tcp,1.2.3.4,65536,4.5.6.7,25"), ParseError);
    CHECK_THROWS_AS(PacketSignature::parse("ftp,1.2.3.4,80,4.5.6.7,25"), ParseError);
    CHECK_THROWS_AS(PacketSignature::parse("tcp,1.2.3.4,80,4.5.6.7"), ParseError);
}
