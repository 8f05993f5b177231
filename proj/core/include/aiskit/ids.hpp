#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "aiskit/encodings.hpp"
#include "aiskit/negative_selection.hpp"

namespace aiskit {

/// Width of the packet bit encoding: protocol 2 bits, each ip 32, each port
/// 16, in template field order.
inline constexpr std::size_t kPacketBitLength = 98;

struct PacketRecord {
    PacketSignature packet;

    /// Ground-truth label for evaluation; true = self.
    std::optional<bool> is_self;
};

/// Ordered concrete packet observations, optionally labeled.
class PacketLog {
public:
    PacketLog() = default;
    explicit PacketLog(std::vector<PacketRecord> records);

    /// CSV with header `proto,src_ip,src_port,dst_ip,dst_port` and an
    /// optional trailing `label` column (`self` or `nonself`). Every record
    /// must be concrete; with the label column present every row is labeled.
    static PacketLog from_csv(std::istream& in);
    static PacketLog load_file(const std::string& path);
    void to_csv(std::ostream& out) const;

    const std::vector<PacketRecord>& records() const { return records_; }
    std::size_t size() const { return records_.size(); }
    bool labeled() const { return labeled_; }

    std::vector<PacketSignature> packets() const;

private:
    std::vector<PacketRecord> records_;
    bool labeled_ = false;
};

enum class SelfMode { signatures, bits };

std::string_view self_mode_name(SelfMode m);
SelfMode parse_self_mode(std::string_view name);

/// Fixed-width bit encoding of a concrete packet; a bijection, inverted by
/// decode_packet_bits.
BitPattern encode_packet_bits(const PacketSignature& packet);
PacketSignature decode_packet_bits(const BitPattern& pattern);

/// Builds the trusted set from a log: label-self rows when the log is
/// labeled, every row otherwise, deduplicated preserving first occurrence.
/// In bits mode each packet is encoded for r-contiguous matching.
SelfSet build_self_set(const PacketLog& log, SelfMode mode);

struct EvaluationReport {
    std::size_t true_positives = 0;
    std::size_t false_positives = 0;
    std::size_t true_negatives = 0;
    std::size_t false_negatives = 0;
    double detection_rate = 0.0;
    double false_alarm_rate = 0.0;
};

/// Runs the monitor over the log (encoding packets when the detectors are
/// bit-shaped) and tallies alerts against labels: a record is predicted
/// nonself iff it raised an alert. Throws EvaluationError on an unlabeled
/// log.
EvaluationReport evaluate(const DetectorSet& detectors, const PacketLog& log);

/// Monitor over a packet log, dispatching on the detector shape.
std::vector<Alert> monitor_log(const DetectorSet& detectors, const PacketLog& log);

/// key=value lines, one per report field.
void write_report(std::ostream& out, const EvaluationReport& report);

}  // namespace aiskit
