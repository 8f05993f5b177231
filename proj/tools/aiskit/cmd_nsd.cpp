#include "aiskit/ids.hpp"
#include "aiskit/negative_selection.hpp"
#include "aiskit/rng.hpp"
#include "app_common.hpp"

namespace aiskit::app {

namespace {

SelfSet load_self_set(const RunConfig& cfg) {
    const std::string path = cfg.get_string("self");
    if (sniff_stream(path) == StreamKind::bits) {
        return SelfSet::from_bits(load_bit_patterns_file(path));
    }
    const PacketLog log = PacketLog::load_file(path);
    return build_self_set(log, parse_self_mode(cfg.get_string("mode")));
}

int cmd_train(const RunConfig& cfg) {
    GenerationConfig generation = cfg.generation_config();
    generation.rng_seed = derive_seed(cfg.seed(), "nsd.train");
    const int r = cfg.get_int("r");
    const SelfSet self = load_self_set(cfg);

    const DetectorSet detectors = generate_detectors(self, generation, r);
    if (detectors.stats().budget_exhausted) {
        std::cerr << "warning: candidate budget exhausted after "
                  << detectors.stats().candidates_tried << " draws; wrote "
                  << detectors.size() << " of " << generation.target_count
                  << " detectors\n";
    }
    detectors.save_file(cfg.get_string("out"));
    return kExitOk;
}

std::vector<Alert> monitor_stream(const DetectorSet& detectors, const RunConfig& cfg) {
    const std::string path = cfg.get_string("stream");
    if (sniff_stream(path) == StreamKind::packets) {
        return monitor_log(detectors, PacketLog::load_file(path));
    }
    if (detectors.shape() != ShapeKind::bits) {
        throw DimensionError("packet-shaped detectors cannot monitor a bit-pattern stream");
    }
    const auto stream = load_bit_patterns_file(path);
    return monitor(detectors, stream);
}

int cmd_monitor(const RunConfig& cfg) {
    const DetectorSet detectors = DetectorSet::load_file(cfg.get_string("detectors"));
    const auto alerts = monitor_stream(detectors, cfg);
    OutputSink sink(out_path(cfg));
    write_alerts_csv(sink.stream(), alerts);
    sink.finish();
    return kExitOk;
}

int cmd_eval(const RunConfig& cfg) {
    const DetectorSet detectors = DetectorSet::load_file(cfg.get_string("detectors"));
    const std::string path = cfg.get_string("stream");
    if (sniff_stream(path) != StreamKind::packets) {
        throw EvaluationError("evaluation needs a labeled packet log, got a bit stream");
    }
    const EvaluationReport report = evaluate(detectors, PacketLog::load_file(path));
    OutputSink sink(out_path(cfg));
    write_report(sink.stream(), report);
    sink.finish();
    return kExitOk;
}

}  // namespace

int run_nsd(const RunConfig& cfg, const CLI::App& train_cmd, const CLI::App& monitor_cmd,
            const CLI::App& eval_cmd) {
    if (train_cmd.parsed()) {
        return cmd_train(cfg);
    }
    if (monitor_cmd.parsed()) {
        return cmd_monitor(cfg);
    }
    if (eval_cmd.parsed()) {
        return cmd_eval(cfg);
    }
    return kExitUsage;
}

}  // namespace aiskit::app
