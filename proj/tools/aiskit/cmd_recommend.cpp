#include <span>

#include "aiskit/recommender.hpp"
#include "app_common.hpp"

namespace aiskit::app {

namespace {

void write_trace_if_requested(const RunConfig& cfg, const Neighborhood& hood) {
    if (!trace_requested(cfg)) {
        return;
    }
    const std::string path = trace_path(cfg);
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    write_trace_csv(out, hood.trace);
}

}  // namespace

int run_recommend(const RunConfig& cfg, const CLI::App& predict_cmd,
                  const CLI::App& top_cmd) {
    // Validate the resolved configuration before touching any data.
    const PoolConfig pool = cfg.pool_config();
    const AffinityConfig affinity = cfg.affinity_config();
    const UserId user = cfg.get_u64("user");

    const RatingsDataset dataset = RatingsDataset::load_file(cfg.get_string("ratings"));
    const Neighborhood hood = build_neighborhood(user, dataset, pool, affinity);

    OutputSink sink(out_path(cfg));
    if (predict_cmd.parsed()) {
        const Prediction prediction = predict(dataset, hood, cfg.get_u64("item"));
        write_predictions_csv(sink.stream(), user, std::span(&prediction, 1));
    } else if (top_cmd.parsed()) {
        const auto predictions = recommend(dataset, hood, cfg.get_size("k"));
        write_predictions_csv(sink.stream(), user, predictions);
    }
    sink.finish();
    write_trace_if_requested(cfg, hood);

    if (hood.hit_max_iterations) {
        std::cerr << "warning: pool did not stabilize within max_iterations="
                  << cfg.get_size("max_iterations") << "\n";
        return kExitNotConverged;
    }
    return kExitOk;
}

}  // namespace aiskit::app
