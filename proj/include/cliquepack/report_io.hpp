#ifndef CLIQUEPACK_REPORT_IO_HPP
#define CLIQUEPACK_REPORT_IO_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "cliquepack/experiments.hpp"
#include "cliquepack/process.hpp"
#include "cliquepack/theory.hpp"

namespace cliquepack {

using Json = nlohmann::ordered_json;

Json to_json(const Edge& e);
Json to_json(const Clique& c);
Json to_json(const Seed& s);
Json to_json(const Tolerances& t);
Json to_json(const TheoryParams& tp);
/// Endpoints and length only; the arrays go to the trace.
Json to_json(const TrajectorySchedule& s);
Json to_json(const StoppingTime& t);
Json to_json(const StoppingReport& r);
Json to_json(const PackingResult& r);
Json to_json(const PackingVerification& v);
Json to_json(const CheckItem& c);
Json to_json(const InitialChecksReport& r);
Json to_json(const ExperimentConfig& c);
Json to_json(const AdherenceStats& a);
Json to_json(const ReplicaResult& r);
Json to_json(const AggregateReport& r);
Json to_json(const UpperBoundReport& r);
Json to_json(const HeuristicDuration& h);
Json to_json(const ZetaEstimate& z);

/// One line per step m = 1..M with the fields m, e, Q, Qtilde, gQ, Ymin,
/// Ymax, Ybar, Ytilde, gY, destroyed, removed_vertices.
Json step_json(const StepRecord& r);
void write_trace_jsonl(std::ostream& os, const ProcessTrace& trace);

/// Run summary: parameters, seed, initial state, stopping report.
Json trace_summary_json(const ProcessTrace& trace);

/// Shortest round-trip decimal form.
std::string format_double(double x);

/// "# <version> config=<json>" then one row per replica:
/// replica,seed,M,max_dev_Q,max_dev_Y,init_checks_passed
void write_replica_csv(std::ostream& os, const AggregateReport& r);

/// One clique per line, sorted vertex ids separated by spaces.
void write_packing(std::ostream& os, const std::vector<Clique>& packing);
/// Blank lines and lines starting with '#' are skipped. Throws ParseError.
std::vector<Clique> read_packing(std::istream& is);

} // namespace cliquepack

#endif // CLIQUEPACK_REPORT_IO_HPP
