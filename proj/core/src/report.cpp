#include "esckit/report.hpp"

#include <sstream>

#include <json.hpp>

namespace esckit {

using nlohmann::json;

namespace {

json class_values_json(const ClassValues& v) {
    json j = json::object();
    if (v.init) j["init"] = *v.init;
    if (v.non_init) j["non"] = *v.non_init;
    if (v.all) j["all"] = *v.all;
    return j;
}

json metrics_json(const MetricsReport& m) {
    json j;
    if (m.proactivity) {
        j["proactivity"]["init"] = *m.proactivity;
        j["proactivity"]["non"] = 1.0 - *m.proactivity;
    } else {
        j["proactivity"] = json::object();
    }
    j["information"] = class_values_json(m.information);
    j["repetition"] = class_values_json(m.repetition);
    j["relaxation"] = class_values_json(m.relaxation);
    j["system_utterances"] = m.system_utterances;
    j["system_utterances_init"] = m.system_utterances_init;
    j["system_utterances_non"] = m.system_utterances_non;
    j["relaxation_skipped"] = m.relaxation_skipped;
    return j;
}

void csv_row(std::ostringstream& os, const char* metric, const char* avg,
             const char* cls, const std::optional<double>& v) {
    if (!v) return;
    os << metric << ',' << avg << ',' << cls << ',' << *v << '\n';
}

void csv_metric(std::ostringstream& os, const char* metric, const char* avg,
                const ClassValues& v) {
    csv_row(os, metric, avg, "init", v.init);
    csv_row(os, metric, avg, "non", v.non_init);
    csv_row(os, metric, avg, "all", v.all);
}

}  // namespace

std::string report_json(const CorpusReport& r) {
    json root;
    root["corpus"] = r.corpus_name;
    root["dialogues"] = r.dialogues;
    root["micro"] = metrics_json(r.micro);
    root["macro"] = metrics_json(r.macro);
    root["errors"] = r.errors;
    root["warnings"] = r.warnings;
    return root.dump(2);
}

std::string report_csv(const CorpusReport& r) {
    std::ostringstream os;
    os.precision(17);
    os << "metric,averaging,class,value\n";
    for (const auto& [avg, m] :
         {std::pair<const char*, const MetricsReport&>{"micro", r.micro},
          std::pair<const char*, const MetricsReport&>{"macro", r.macro}}) {
        if (m.proactivity) {
            csv_row(os, "proactivity", avg, "init", m.proactivity);
            csv_row(os, "proactivity", avg, "non", 1.0 - *m.proactivity);
        }
        csv_metric(os, "information", avg, m.information);
        csv_metric(os, "repetition", avg, m.repetition);
        csv_metric(os, "relaxation", avg, m.relaxation);
    }
    return os.str();
}

std::string progress_profile_csv(const ProgressProfile& p) {
    std::ostringstream os;
    os.precision(17);
    os << "phase,series,value\n";
    for (int i = 0; i < 5; ++i) {
        const PhaseStats& ph = p.phases[i];
        long long known = ph.sys_init + ph.sys_non;
        if (known > 0) {
            os << i << ",initiative_proportion,"
               << static_cast<double>(ph.sys_init) / known << '\n';
            os << i << ",non_initiative_proportion,"
               << static_cast<double>(ph.sys_non) / known << '\n';
        }
        if (ph.rel_n_init > 0)
            os << i << ",intensity_change_init," << ph.rel_sum_init / ph.rel_n_init
               << '\n';
        if (ph.rel_n_non > 0)
            os << i << ",intensity_change_non," << ph.rel_sum_non / ph.rel_n_non
               << '\n';
    }
    return os.str();
}

std::string transitions_csv(const TransitionMatrix& m) {
    std::ostringstream os;
    os.precision(17);
    os << "from,to,count,row_proportion\n";
    auto p = m.proportions();
    for (int i = 0; i < kFlowNodeCount; ++i)
        if (m.start_counts[i] > 0)
            os << "Start," << to_string(static_cast<FlowNode>(i)) << ','
               << m.start_counts[i] << ",\n";
    for (int i = 0; i < kFlowNodeCount; ++i) {
        for (int j = 0; j < kFlowNodeCount; ++j)
            if (m.counts[i][j] > 0)
                os << to_string(static_cast<FlowNode>(i)) << ','
                   << to_string(static_cast<FlowNode>(j)) << ',' << m.counts[i][j]
                   << ',' << p[i][j] << '\n';
        if (m.end_counts[i] > 0)
            os << to_string(static_cast<FlowNode>(i)) << ",End," << m.end_counts[i]
               << ',' << p[i][kFlowNodeCount] << '\n';
    }
    return os.str();
}

}  // namespace esckit
