#include "aiskit/ids.hpp"

#include <fstream>
#include <ostream>
#include <unordered_set>

#include "aiskit/errors.hpp"
#include "aiskit/format.hpp"

namespace aiskit {

PacketLog::PacketLog(std::vector<PacketRecord> records) : records_(std::move(records)) {
    if (records_.empty()) {
        return;
    }
    labeled_ = records_.front().is_self.has_value();
    for (const auto& record : records_) {
        if (!record.packet.is_concrete()) {
            throw InvalidObservationError("packet log records must be concrete: " +
                                          record.packet.to_string());
        }
        if (record.is_self.has_value() != labeled_) {
            throw ParseError("packet log mixes labeled and unlabeled records");
        }
    }
}

namespace {

constexpr std::string_view kUnlabeledHeader = "proto,src_ip,src_port,dst_ip,dst_port";
constexpr std::string_view kLabeledHeader = "proto,src_ip,src_port,dst_ip,dst_port,label";

[[noreturn]] void reject_line(std::size_t line_no, const std::string& why) {
    throw ParseError("line " + std::to_string(line_no) + ": " + why);
}

}  // namespace

PacketLog PacketLog::from_csv(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) {
        throw ParseError("packet log is empty");
    }
    ++line_no;
    bool labeled;
    if (line == kUnlabeledHeader) {
        labeled = false;
    } else if (line == kLabeledHeader) {
        labeled = true;
    } else {
        reject_line(line_no, "expected header '" + std::string(kUnlabeledHeader) +
                                 "' or '" + std::string(kLabeledHeader) + "'");
    }

    std::vector<PacketRecord> records;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        if (line.find('"') != std::string::npos) {
            reject_line(line_no, "quoted fields are not accepted");
        }
        try {
            std::string_view row = line;
            PacketRecord record;
            if (labeled) {
                const std::size_t last_comma = row.rfind(',');
                if (last_comma == std::string_view::npos) {
                    reject_line(line_no, "missing label field");
                }
                const std::string_view label = trim(row.substr(last_comma + 1));
                if (label == "self") {
                    record.is_self = true;
                } else if (label == "nonself") {
                    record.is_self = false;
                } else {
                    reject_line(line_no, "label must be 'self' or 'nonself', got '" +
                                             std::string(label) + "'");
                }
                row = row.substr(0, last_comma);
            }
            record.packet = PacketSignature::parse(row);
            if (!record.packet.is_concrete()) {
                reject_line(line_no, "observed packets must not contain wildcards");
            }
            records.push_back(std::move(record));
        } catch (const ParseError& e) {
            const std::string what = e.what();
            if (what.starts_with("line ")) {
                throw;
            }
            reject_line(line_no, what);
        }
    }
    return PacketLog(std::move(records));
}

PacketLog PacketLog::load_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path + "' for reading");
    }
    return from_csv(in);
}

void PacketLog::to_csv(std::ostream& out) const {
    out << (labeled_ ? kLabeledHeader : kUnlabeledHeader) << '\n';
    for (const auto& record : records_) {
        out << record.packet.to_string();
        if (labeled_) {
            out << ',' << (*record.is_self ? "self" : "nonself");
        }
        out << '\n';
    }
}

std::vector<PacketSignature> PacketLog::packets() const {
    std::vector<PacketSignature> out;
    out.reserve(records_.size());
    for (const auto& record : records_) {
        out.push_back(record.packet);
    }
    return out;
}

std::string_view self_mode_name(SelfMode m) {
    switch (m) {
        case SelfMode::signatures: return "signatures";
        case SelfMode::bits: return "bits";
    }
    throw ConfigError("unknown self mode value");
}

SelfMode parse_self_mode(std::string_view name) {
    if (name == "signatures") return SelfMode::signatures;
    if (name == "bits") return SelfMode::bits;
    throw ParseError("unknown mode '" + std::string(name) + "'");
}

namespace {

void append_bits(std::vector<std::uint8_t>& bits, std::uint64_t value, int width) {
    for (int bit = width - 1; bit >= 0; --bit) {
        bits.push_back(static_cast<std::uint8_t>((value >> bit) & 1));
    }
}

std::uint64_t read_bits(const BitPattern& pattern, std::size_t offset, int width) {
    std::uint64_t value = 0;
    for (int i = 0; i < width; ++i) {
        value = (value << 1) | pattern[offset + static_cast<std::size_t>(i)];
    }
    return value;
}

}  // namespace

BitPattern encode_packet_bits(const PacketSignature& packet) {
    if (!packet.is_concrete()) {
        throw InvalidObservationError("cannot bit-encode a packet with wildcards: " +
                                      packet.to_string());
    }
    std::vector<std::uint8_t> bits;
    bits.reserve(kPacketBitLength);
    append_bits(bits, static_cast<std::uint64_t>(packet.protocol), 2);
    append_bits(bits, *packet.src_ip, 32);
    append_bits(bits, *packet.src_port, 16);
    append_bits(bits, *packet.dst_ip, 32);
    append_bits(bits, *packet.dst_port, 16);
    return BitPattern(std::move(bits));
}

PacketSignature decode_packet_bits(const BitPattern& pattern) {
    if (pattern.size() != kPacketBitLength) {
        throw DimensionError("packet bit patterns have length " +
                             std::to_string(kPacketBitLength) + ", got " +
                             std::to_string(pattern.size()));
    }
    const std::uint64_t proto = read_bits(pattern, 0, 2);
    if (proto > 2) {
        throw ParseError("protocol bits 11 do not encode a concrete protocol");
    }
    PacketSignature packet;
    packet.protocol = static_cast<Protocol>(proto);
    packet.src_ip = static_cast<std::uint32_t>(read_bits(pattern, 2, 32));
    packet.src_port = static_cast<std::uint16_t>(read_bits(pattern, 34, 16));
    packet.dst_ip = static_cast<std::uint32_t>(read_bits(pattern, 50, 32));
    packet.dst_port = static_cast<std::uint16_t>(read_bits(pattern, 82, 16));
    return packet;
}

SelfSet build_self_set(const PacketLog& log, SelfMode mode) {
    std::vector<PacketSignature> trusted;
    std::unordered_set<std::string> seen;
    for (const auto& record : log.records()) {
        if (log.labeled() && !*record.is_self) {
            continue;
        }
        if (seen.insert(record.packet.to_string()).second) {
            trusted.push_back(record.packet);
        }
    }
    if (trusted.empty()) {
        throw EmptySelfError("no trusted records to build a self set from");
    }
    if (mode == SelfMode::signatures) {
        return SelfSet::from_packets(std::move(trusted));
    }
    std::vector<BitPattern> encoded;
    encoded.reserve(trusted.size());
    for (const auto& packet : trusted) {
        encoded.push_back(encode_packet_bits(packet));
    }
    return SelfSet::from_bits(std::move(encoded));
}

std::vector<Alert> monitor_log(const DetectorSet& detectors, const PacketLog& log) {
    if (detectors.shape() == ShapeKind::packet) {
        const auto stream = log.packets();
        return monitor(detectors, std::span<const PacketSignature>(stream));
    }
    std::vector<BitPattern> stream;
    stream.reserve(log.size());
    for (const auto& record : log.records()) {
        stream.push_back(encode_packet_bits(record.packet));
    }
    return monitor(detectors, std::span<const BitPattern>(stream));
}

EvaluationReport evaluate(const DetectorSet& detectors, const PacketLog& log) {
    if (!log.labeled()) {
        throw EvaluationError("evaluation needs a labeled packet log");
    }
    const std::vector<Alert> alerts = monitor_log(detectors, log);
    std::vector<bool> alerted(log.size(), false);
    for (const Alert& alert : alerts) {
        alerted[alert.observation_index] = true;
    }

    EvaluationReport report;
    for (std::size_t i = 0; i < log.size(); ++i) {
        const bool self = *log.records()[i].is_self;
        if (self) {
            alerted[i] ? ++report.false_positives : ++report.true_negatives;
        } else {
            alerted[i] ? ++report.true_positives : ++report.false_negatives;
        }
    }
    const std::size_t nonself = report.true_positives + report.false_negatives;
    const std::size_t self = report.false_positives + report.true_negatives;
    report.detection_rate =
        nonself > 0 ? static_cast<double>(report.true_positives) / static_cast<double>(nonself)
                    : 0.0;
    report.false_alarm_rate =
        self > 0 ? static_cast<double>(report.false_positives) / static_cast<double>(self)
                 : 0.0;
    return report;
}

void write_report(std::ostream& out, const EvaluationReport& report) {
    out << "true_positives=" << report.true_positives << '\n'
        << "false_positives=" << report.false_positives << '\n'
        << "true_negatives=" << report.true_negatives << '\n'
        << "false_negatives=" << report.false_negatives << '\n'
        << "detection_rate=" << format_double(report.detection_rate) << '\n'
        << "false_alarm_rate=" << format_double(report.false_alarm_rate) << '\n';
}

}  // namespace aiskit
