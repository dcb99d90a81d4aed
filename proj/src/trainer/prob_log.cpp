#include "divscore/dataio/csv.hpp"
#include "divscore/error.hpp"
#include "divscore/trainer.hpp"

#include <charconv>
#include <cmath>

namespace divscore::trainer {

std::string format_prob_log_csv(const EpochProbLog& log) {
    std::string out = "epoch,sample_id,p_true_class\n";
    for (const auto& e : log.entries) {
        out += std::to_string(e.epoch);
        out += ',';
        out += dataio::csv_escape(e.sample_id);
        out += ',';
        out += dataio::format_double(e.p_true);
        out += '\n';
    }
    return out;
}

EpochProbLog parse_prob_log_csv(std::string_view text) {
    const auto rows = dataio::parse_csv(text);
    if (rows.empty()) throw ValidationError("probability log is empty");
    const auto& header = rows.front();
    if (header.size() != 3 || header[0] != "epoch" || header[1] != "sample_id" || header[2] != "p_true_class") {
        throw ValidationError("probability log header must be 'epoch,sample_id,p_true_class'");
    }
    EpochProbLog log;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& row = rows[i];
        const std::string where = "probability log line " + std::to_string(i + 1);
        if (row.size() != 3) throw ValidationError(where + ": expected 3 fields");
        ProbEntry e;
        e.sample_id = row[1];
        const auto& ep = row[0];
        auto [p1, ec1] = std::from_chars(ep.data(), ep.data() + ep.size(), e.epoch);
        if (ec1 != std::errc{} || p1 != ep.data() + ep.size() || e.epoch == 0) {
            throw ValidationError(where + ": epoch must be a positive integer");
        }
        const auto& pv = row[2];
        auto [p2, ec2] = std::from_chars(pv.data(), pv.data() + pv.size(), e.p_true);
        if (ec2 != std::errc{} || p2 != pv.data() + pv.size() || !(e.p_true >= 0.0 && e.p_true <= 1.0)) {
            throw ValidationError(where + ": probability must be a number in [0, 1]");
        }
        log.entries.push_back(std::move(e));
    }
    return log;
}

} // namespace divscore::trainer
