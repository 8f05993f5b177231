#include "aiskit/config.hpp"

#include <cstdio>
#include <fstream>

#include "aiskit/errors.hpp"
#include "aiskit/rng.hpp"
#include "doctest.h"

using namespace aiskit;

TEST_CASE("defaults build valid module configs") {
    const RunConfig cfg = RunConfig::with_defaults();
    const PoolConfig pool = cfg.pool_config();
    CHECK(pool.capacity == 10);
    CHECK(pool.k2 == 0.1);
    CHECK(pool.k3 == 0.05);
    CHECK(pool.dt == 1.0);
    CHECK(pool.stability_window == 10);
    CHECK(pool.removal_floor == doctest::Approx(0.1));
    CHECK(pool.saturation_cap == doctest::Approx(100.0));

    const GenerationConfig gen = cfg.generation_config();
    CHECK(gen.target_count == 50);
    CHECK(!gen.mutate_on_match);

    const AffinityConfig affinity = cfg.affinity_config();
    CHECK(affinity.pearson_overlap_threshold == 5);
    CHECK(affinity.measure == Measure::pearson);
}

TEST_CASE("precedence is flags over env over file over defaults") {
    RunConfig cfg = RunConfig::with_defaults();
    CHECK(cfg.get_double("k2") == 0.1);

    cfg.set_file("k2", "0.2");
    CHECK(cfg.get_double("k2") == 0.2);

    cfg.set_env("k2", "0.3");
    CHECK(cfg.get_double("k2") == 0.3);

    cfg.set_flag("k2", "0.4");
    CHECK(cfg.get_double("k2") == 0.4);

    // Other keys keep their lower layers.
    cfg.set_env("k3", "0.01");
    CHECK(cfg.get_double("k3") == 0.01);
}

TEST_CASE("derived floors and caps follow the initial concentration") {
    RunConfig cfg = RunConfig::with_defaults();
    cfg.set_flag("initial_concentration", "4");
    const PoolConfig pool = cfg.pool_config();
    CHECK(pool.removal_floor == doctest::Approx(0.4));
    CHECK(pool.saturation_cap == doctest::Approx(400.0));

    cfg.set_flag("removal_floor", "0.05");
    CHECK(cfg.pool_config().removal_floor == 0.05);
}

TEST_CASE("invalid resolved values are rejected before a run") {
    RunConfig cfg = RunConfig::with_defaults();
    SUBCASE("k3 zero") {
        cfg.set_flag("k3", "0");
        CHECK_THROWS_AS(cfg.pool_config(), ConfigError);
    }
    SUBCASE("explosive proportional step") {
        cfg.set_flag("dt", "25");
        CHECK_THROWS_AS(cfg.pool_config(), ConfigError);
    }
    SUBCASE("unparseable number") {
        cfg.set_flag("k2", "fast");
        CHECK_THROWS_AS(cfg.pool_config(), ParseError);
    }
    SUBCASE("generation budget below target") {
        cfg.set_flag("max_candidates", "5");
        cfg.set_flag("target_count", "10");
        CHECK_THROWS_AS(cfg.generation_config(), ConfigError);
    }
    SUBCASE("missing key") {
        CHECK_THROWS_AS(cfg.get_string("no_such_key"), ConfigError);
    }
}

TEST_CASE("config files parse key = value lines") {
    const std::string path = "test_config_tmp.cfg";
    {
        std::ofstream out(path);
        out << "# pool tuning\n"
            << "\n"
            << "k2 = 0.25\n"
            << "decay_mode=fixed_amount\n"
            << "  seed =  77\n";
    }
    RunConfig cfg = RunConfig::with_defaults();
    cfg.load_file(path);
    CHECK(cfg.get_double("k2") == 0.25);
    CHECK(cfg.get_string("decay_mode") == "fixed_amount");
    CHECK(cfg.seed() == 77);
    std::remove(path.c_str());

    CHECK_THROWS_AS(cfg.load_file("does_not_exist.cfg"), IoError);

    {
        std::ofstream out(path);
        out << "k2 0.25\n";
    }
    RunConfig bad = RunConfig::with_defaults();
    CHECK_THROWS_AS(bad.load_file(path), ParseError);
    std::remove(path.c_str());
}

TEST_CASE("environment variables use the AIS_ prefix") {
    RunConfig cfg = RunConfig::with_defaults();
    const char* fake_env[] = {
        "AIS_K2=0.33",
        "AIS_PEARSON_OVERLAP_THRESHOLD=9",
        "OTHER_K2=1.0",
        "AIS_=skipme",
        nullptr,
    };
    cfg.load_env(fake_env);
    CHECK(cfg.get_double("k2") == 0.33);
    CHECK(cfg.get_int("pearson_overlap_threshold") == 9);
    CHECK(!cfg.has("other_k2"));
}

TEST_CASE("derived seeds are stable and component-independent") {
    const std::uint64_t master = 123456789;
    CHECK(derive_seed(master, "synth.ratings") == derive_seed(master, "synth.ratings"));
    CHECK(derive_seed(master, "synth.ratings") != derive_seed(master, "synth.packets"));
    CHECK(derive_seed(master, "synth.ratings") != derive_seed(master + 1, "synth.ratings"));
}
