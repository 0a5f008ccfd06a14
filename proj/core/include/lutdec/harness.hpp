#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "lutdec/clut.hpp"
#include "lutdec/decoder.hpp"

namespace lutdec {

// Matched Z/X lookup backends for one decoder configuration.
struct BackendSet {
    Backend z;
    Backend x;
};

// Build both backends of a kind. For the compressed kind the [d=3, m=2]
// configuration uses the frame scheme, everything else the rank-index scheme
// with the given cutoff (-1 picks 3 for d=3 and 5 otherwise).
BackendSet make_backends(const CodeLayout& layout, int m, BackendKind kind,
                         int weight_cutoff = -1, const BuildOptions& options = {});

struct ExperimentSpec {
    int d = 3;
    int m = 2;
    int cycles = 5;
    double p = 1e-2;
    u64 trials = 0;
    u64 seed = 0;
    int threads = 0;  // 0: hardware concurrency
};

struct LerReport {
    u64 trials = 0;
    u64 logical_errors = 0;
    u64 decoder_failures = 0;

    double ler() const { return trials ? double(logical_errors) / double(trials) : 0.0; }
    double standard_error() const;
};

// Monte Carlo logical error rate. Trials are split across threads; per-trial
// seeding makes the result independent of the split.
LerReport run_experiment(const CodeLayout& layout, const ExperimentSpec& spec,
                         const BackendSet& backends);

// Same noise realizations decoded by two backend sets.
struct PairedReport {
    u64 trials = 0;
    u64 errors_a = 0;
    u64 errors_b = 0;
    u64 n10 = 0;  // A fails, B succeeds
    u64 n01 = 0;
    u64 n11 = 0;
    u64 failures_a = 0;  // decoder (lookup-miss) failures
    u64 failures_b = 0;

    double ler_a() const { return double(errors_a) / double(trials); }
    double ler_b() const { return double(errors_b) / double(trials); }
    double ratio() const { return ler_a() / ler_b(); }
    // Delta-method standard error of the ratio, using the paired covariance.
    double ratio_standard_error() const;
};

PairedReport paired_experiment(const CodeLayout& layout, const ExperimentSpec& spec,
                               const BackendSet& a, const BackendSet& b);

// Paired trials where the two backend sets must produce identical outcomes
// (error logs and logical result). Returns the number of mismatching trials.
u64 equivalence_mismatches(const CodeLayout& layout, const ExperimentSpec& spec,
                           const BackendSet& a, const BackendSet& b);

// Least-squares slope of ln(ler) against ln(p).
double fit_scaling_exponent(const std::vector<std::pair<double, double>>& points);

struct CsvRow {
    double p = 0.0;
    int d = 0;
    int m = 0;
    int cycles = 0;
    u64 trials = 0;
    u64 logical_errors = 0;
    double ler = 0.0;
    double standard_error = 0.0;
    u64 decoder_failures = 0;
};

void write_csv_header(std::ostream& os);
void write_csv_row(std::ostream& os, const CsvRow& row);
std::vector<CsvRow> read_csv(std::istream& is);

CsvRow csv_row(const ExperimentSpec& spec, const LerReport& report);

// Command-line entry point; returns the process exit code:
// 0 success, 1 usage error, 2 data or build error.
int cli_main(int argc, const char* const* argv);

}  // namespace lutdec
