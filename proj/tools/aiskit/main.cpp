#include <cstdlib>

#include "aiskit/errors.hpp"
#include "app_common.hpp"

extern char** environ;

namespace app = aiskit::app;

int main(int argc, char** argv) {
    CLI::App cli{"Artificial immune system toolkit: recommender, negative-selection "
                 "detectors, synthetic fixtures"};
    cli.require_subcommand(1);
    app::FlagSet flags;

    // Global flags; fallthrough lets them appear after a subcommand too.
    flags.bind(&cli, "--config", "config", "config file of key = value lines");
    flags.bind(&cli, "--seed", "seed", "master seed; component streams derive from it");
    flags.bind(&cli, "--out", "out", "output path (default: stdout)");
    flags.bind_flag(&cli, "--trace", "trace", "also write the pool iteration trace CSV");

    auto* recommend = cli.add_subcommand("recommend", "collaborative-filtering recommender");
    recommend->require_subcommand(1);
    recommend->fallthrough();
    flags.bind(recommend, "--ratings", "ratings", "ratings CSV (user_id,item_id,rating)");
    auto* rec_predict = recommend->add_subcommand("predict", "predict one user/item rating");
    rec_predict->fallthrough();
    flags.bind(rec_predict, "--user", "user", "target user id");
    flags.bind(rec_predict, "--item", "item", "item id to predict");
    auto* rec_top = recommend->add_subcommand("top", "top-k recommendations for a user");
    rec_top->fallthrough();
    flags.bind(rec_top, "--user", "user", "target user id");
    flags.bind(rec_top, "--k", "k", "number of recommendations");

    auto* nsd = cli.add_subcommand("nsd", "negative-selection detectors");
    nsd->require_subcommand(1);
    nsd->fallthrough();
    auto* nsd_train = nsd->add_subcommand("train", "generate a censored detector set");
    nsd_train->fallthrough();
    flags.bind(nsd_train, "--self", "self", "self file: packet log CSV or bit patterns");
    flags.bind(nsd_train, "--r", "r", "r-contiguous threshold (bit shape; 0 for packets)");
    flags.bind(nsd_train, "--count", "target_count", "detectors to generate");
    flags.bind(nsd_train, "--mode", "mode", "packet self handling: signatures or bits");
    flags.bind_flag(nsd_train, "--mutate", "mutate_on_match",
                    "hypermutate censored candidates instead of discarding");
    auto* nsd_monitor = nsd->add_subcommand("monitor", "alert on detector matches");
    nsd_monitor->fallthrough();
    flags.bind(nsd_monitor, "--detectors", "detectors", "detector-set file");
    flags.bind(nsd_monitor, "--stream", "stream", "observation stream file");
    auto* nsd_eval = nsd->add_subcommand("eval", "score detectors on a labeled log");
    nsd_eval->fallthrough();
    flags.bind(nsd_eval, "--detectors", "detectors", "detector-set file");
    flags.bind(nsd_eval, "--stream", "stream", "labeled packet log CSV");

    auto* synth = cli.add_subcommand("synth", "synthetic dataset generators");
    synth->require_subcommand(1);
    synth->fallthrough();
    auto* synth_ratings = synth->add_subcommand("ratings", "planted-neighborhood ratings");
    synth_ratings->fallthrough();
    flags.bind(synth_ratings, "--users", "users", "number of users");
    flags.bind(synth_ratings, "--items", "items", "number of items");
    flags.bind(synth_ratings, "--clones", "clones", "users cloned from the target");
    flags.bind(synth_ratings, "--target", "target", "target user id");
    flags.bind(synth_ratings, "--noise", "noise", "per-item clone flip probability");
    auto* synth_packets = synth->add_subcommand("packets", "labeled packet log");
    synth_packets->fallthrough();
    flags.bind(synth_packets, "--self", "self_count", "number of trusted records");
    flags.bind(synth_packets, "--anomalies", "anomaly_count", "number of anomalies");

    try {
        cli.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = cli.exit(e);
        return rc == 0 ? app::kExitOk : app::kExitUsage;
    }

    try {
        aiskit::RunConfig cfg = aiskit::RunConfig::with_defaults();
        // Subcommand-level defaults not covered by the library modules.
        cfg.set_default("r", "0");
        cfg.set_default("mode", "signatures");
        cfg.set_default("users", "20");
        cfg.set_default("items", "20");
        cfg.set_default("clones", "5");
        cfg.set_default("target", "0");
        cfg.set_default("noise", "0");
        cfg.set_default("self_count", "100");
        cfg.set_default("anomaly_count", "10");
        cfg.set_default("k", "10");

        // Layers from lowest to highest: file, environment, flags.
        std::optional<std::string> config_path;
        for (int i = 1; i < argc; ++i) {
            const std::string_view arg(argv[i]);
            if (arg == "--config" && i + 1 < argc) {
                config_path = argv[i + 1];
            } else if (arg.starts_with("--config=")) {
                config_path = std::string(arg.substr(9));
            }
        }
        if (!config_path) {
            if (const char* env_path = std::getenv("AIS_CONFIG")) {
                config_path = env_path;
            }
        }
        if (config_path) {
            cfg.load_file(*config_path);
        }
        cfg.load_env(environ);
        flags.apply(cfg);

        if (recommend->parsed()) {
            return app::run_recommend(cfg, *rec_predict, *rec_top);
        }
        if (nsd->parsed()) {
            return app::run_nsd(cfg, *nsd_train, *nsd_monitor, *nsd_eval);
        }
        if (synth->parsed()) {
            return app::run_synth(cfg, *synth_ratings, *synth_packets);
        }
        return app::kExitUsage;
    } catch (const aiskit::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return app::kExitUsage;
    } catch (const aiskit::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return app::kExitData;
    }
}
