#include "aiskit/rng.hpp"
#include "aiskit/synth.hpp"
#include "app_common.hpp"

namespace aiskit::app {

int run_synth(const RunConfig& cfg, const CLI::App& ratings_cmd,
              const CLI::App& packets_cmd) {
    OutputSink sink(out_path(cfg));
    if (ratings_cmd.parsed()) {
        RatingsSynthConfig synth;
        synth.users = cfg.get_size("users");
        synth.items = cfg.get_size("items");
        synth.clones = cfg.get_size("clones");
        synth.target = cfg.get_u64("target");
        synth.noise = cfg.get_double("noise");
        synth.seed = derive_seed(cfg.seed(), "synth.ratings");
        write_ratings_csv(sink.stream(), synth_ratings(synth));
    } else if (packets_cmd.parsed()) {
        PacketSynthConfig synth;
        synth.self_count = cfg.get_size("self_count");
        synth.anomaly_count = cfg.get_size("anomaly_count");
        synth.seed = derive_seed(cfg.seed(), "synth.packets");
        synth_packets(synth).to_csv(sink.stream());
    }
    sink.finish();
    return kExitOk;
}

}  // namespace aiskit::app
