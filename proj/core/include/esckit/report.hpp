#ifndef ESCKIT_REPORT_HPP
#define ESCKIT_REPORT_HPP

#include <string>

#include "esckit/flow.hpp"
#include "esckit/metrics.hpp"

namespace esckit {

// Metric report with the Init./Non./All column structure, in JSON and as
// long-format CSV (metric,averaging,class,value).
std::string report_json(const CorpusReport& r);
std::string report_csv(const CorpusReport& r);

// Tidy long-format series for external plotting.
std::string progress_profile_csv(const ProgressProfile& p);
std::string transitions_csv(const TransitionMatrix& m);

}  // namespace esckit

#endif
