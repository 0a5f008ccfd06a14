#include "lutdec/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "CLI11.hpp"

namespace lutdec {

namespace {

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? int(hw) : 1;
}

// Per-trial seeding is independent of the partition, so any chunking yields
// the same counts.
template <typename Body>
void for_each_trial(u64 trials, int threads, Body&& body) {
    threads = int(std::min<u64>(u64(resolve_threads(threads)), std::max<u64>(trials, 1)));
    if (threads <= 1) {
        body(0, u64{0}, trials);
        return;
    }
    std::vector<std::thread> pool;
    u64 chunk = (trials + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        u64 begin = t * chunk;
        u64 end = std::min(trials, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&body, t, begin, end] { body(t, begin, end); });
    }
    for (auto& th : pool) th.join();
}

NoiseParams noise_of(const ExperimentSpec& spec) {
    NoiseParams params{spec.p, spec.cycles, spec.seed};
    params.validate();
    return params;
}

int default_cutoff(int d) { return d == 3 ? 3 : 5; }

}  // namespace

BackendSet make_backends(const CodeLayout& layout, int m, BackendKind kind, int weight_cutoff,
                         const BuildOptions& options) {
    EdgeProbs probs = effective_edge_probabilities(NoiseParams{1e-2, 1, 0});
    auto one = [&](StabType type) -> Backend {
        DecoderConfig cfg = DecoderConfig::make(layout, m, type);
        auto graph = std::make_shared<DecodingGraph>(build_graph(layout, type, m, probs));
        switch (kind) {
            case BackendKind::Oracle:
                return Backend::oracle(cfg, graph);
            case BackendKind::FullLut:
                return Backend::full_lut(
                    std::make_shared<Lut>(build_full_lut(cfg, *graph, options)));
            case BackendKind::Clut:
                if (layout.distance == 3 && m == 2) {
                    return Backend::clut(std::make_shared<FrameClut>(
                        compress_frame(build_full_lut(cfg, *graph, options))));
                } else {
                    int cutoff = weight_cutoff < 0 ? default_cutoff(layout.distance) : weight_cutoff;
                    return Backend::clut(std::make_shared<RankClut>(
                        compress_rank(build_weight_bounded_lut(cfg, *graph, cutoff, options))));
                }
        }
        throw std::invalid_argument("unknown backend kind");
    };
    return BackendSet{one(StabType::Z), one(StabType::X)};
}

double LerReport::standard_error() const {
    if (!trials) return 0.0;
    double p = ler();
    return std::sqrt(p * (1.0 - p) / double(trials));
}

LerReport run_experiment(const CodeLayout& layout, const ExperimentSpec& spec,
                         const BackendSet& backends) {
    NoiseParams params = noise_of(spec);
    int threads = resolve_threads(spec.threads);
    std::vector<LerReport> partial(static_cast<std::size_t>(threads));
    for_each_trial(spec.trials, threads, [&](int t, u64 begin, u64 end) {
        LerReport& acc = partial[std::size_t(t)];
        for (u64 trial = begin; trial < end; ++trial) {
            TrialRecord record = sample_trial(layout, params, trial);
            TrialOutcome outcome = decode_trial(layout, record, backends.z, backends.x);
            ++acc.trials;
            acc.logical_errors += outcome.logical_error;
            acc.decoder_failures += u64(outcome.decoder_failures);
        }
    });
    LerReport report;
    for (const LerReport& acc : partial) {
        report.trials += acc.trials;
        report.logical_errors += acc.logical_errors;
        report.decoder_failures += acc.decoder_failures;
    }
    return report;
}

double PairedReport::ratio_standard_error() const {
    double n = double(trials);
    double pa = ler_a(), pb = ler_b();
    if (pa <= 0.0 || pb <= 0.0) return 0.0;
    double var_a = pa * (1.0 - pa) / n;
    double var_b = pb * (1.0 - pb) / n;
    double cov = (double(n11) / n - pa * pb) / n;
    double rel_var = var_a / (pa * pa) + var_b / (pb * pb) - 2.0 * cov / (pa * pb);
    return ratio() * std::sqrt(std::max(rel_var, 0.0));
}

PairedReport paired_experiment(const CodeLayout& layout, const ExperimentSpec& spec,
                               const BackendSet& a, const BackendSet& b) {
    NoiseParams params = noise_of(spec);
    int threads = resolve_threads(spec.threads);
    std::vector<PairedReport> partial(static_cast<std::size_t>(threads));
    for_each_trial(spec.trials, threads, [&](int t, u64 begin, u64 end) {
        PairedReport& acc = partial[std::size_t(t)];
        for (u64 trial = begin; trial < end; ++trial) {
            TrialRecord record = sample_trial(layout, params, trial);
            TrialOutcome oa = decode_trial(layout, record, a.z, a.x);
            TrialOutcome ob = decode_trial(layout, record, b.z, b.x);
            ++acc.trials;
            acc.errors_a += oa.logical_error;
            acc.errors_b += ob.logical_error;
            acc.n10 += oa.logical_error && !ob.logical_error;
            acc.n01 += !oa.logical_error && ob.logical_error;
            acc.n11 += oa.logical_error && ob.logical_error;
            acc.failures_a += u64(oa.decoder_failures);
            acc.failures_b += u64(ob.decoder_failures);
        }
    });
    PairedReport report;
    for (const PairedReport& acc : partial) {
        report.trials += acc.trials;
        report.errors_a += acc.errors_a;
        report.errors_b += acc.errors_b;
        report.n10 += acc.n10;
        report.n01 += acc.n01;
        report.n11 += acc.n11;
        report.failures_a += acc.failures_a;
        report.failures_b += acc.failures_b;
    }
    return report;
}

u64 equivalence_mismatches(const CodeLayout& layout, const ExperimentSpec& spec,
                           const BackendSet& a, const BackendSet& b) {
    NoiseParams params = noise_of(spec);
    int threads = resolve_threads(spec.threads);
    std::vector<u64> partial(static_cast<std::size_t>(threads), 0);
    for_each_trial(spec.trials, threads, [&](int t, u64 begin, u64 end) {
        for (u64 trial = begin; trial < end; ++trial) {
            TrialRecord record = sample_trial(layout, params, trial);
            TrialOutcome oa = decode_trial(layout, record, a.z, a.x);
            TrialOutcome ob = decode_trial(layout, record, b.z, b.x);
            bool same = oa.logical_error == ob.logical_error &&
                        oa.x_error_log == ob.x_error_log && oa.z_error_log == ob.z_error_log;
            partial[std::size_t(t)] += !same;
        }
    });
    u64 mismatches = 0;
    for (u64 v : partial) mismatches += v;
    return mismatches;
}

double fit_scaling_exponent(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 2) throw std::invalid_argument("need at least two points to fit a slope");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [p, ler] : points) {
        if (p <= 0.0 || ler <= 0.0)
            throw std::invalid_argument("scaling fit requires positive rates");
        double x = std::log(p), y = std::log(ler);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double n = double(points.size());
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

void write_csv_header(std::ostream& os) {
    os << "p,d,m,cycles,trials,logical_errors,ler,stderr,decoder_failures\n";
}

void write_csv_row(std::ostream& os, const CsvRow& row) {
    std::ostringstream line;
    line.precision(10);
    line << row.p << ',' << row.d << ',' << row.m << ',' << row.cycles << ',' << row.trials << ','
         << row.logical_errors << ',' << row.ler << ',' << row.standard_error << ','
         << row.decoder_failures << '\n';
    os << line.str();
}

std::vector<CsvRow> read_csv(std::istream& is) {
    std::vector<CsvRow> rows;
    std::string line;
    if (!std::getline(is, line)) return rows;
    std::istringstream header(line);
    std::string expect = "p,d,m,cycles,trials,logical_errors,ler,stderr,decoder_failures";
    if (line != expect) throw std::runtime_error("unexpected CSV header: " + line);
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream fields(line);
        CsvRow row;
        char comma;
        if (!(fields >> row.p >> comma >> row.d >> comma >> row.m >> comma >> row.cycles >>
              comma >> row.trials >> comma >> row.logical_errors >> comma >> row.ler >> comma >>
              row.standard_error >> comma >> row.decoder_failures))
            throw std::runtime_error("malformed CSV row: " + line);
        rows.push_back(row);
    }
    return rows;
}

CsvRow csv_row(const ExperimentSpec& spec, const LerReport& report) {
    return CsvRow{spec.p,           spec.d,
                  spec.m,           spec.cycles,
                  report.trials,    report.logical_errors,
                  report.ler(),     report.standard_error(),
                  report.decoder_failures};
}

namespace {

BackendKind parse_backend(const std::string& name) {
    if (name == "full") return BackendKind::FullLut;
    if (name == "clut") return BackendKind::Clut;
    if (name == "oracle") return BackendKind::Oracle;
    throw CLI::ValidationError("--backend", "expected full, clut, or oracle");
}

StabType parse_type(const std::string& name) {
    if (name == "x") return StabType::X;
    if (name == "z") return StabType::Z;
    throw CLI::ValidationError("--type", "expected x or z");
}

std::ostream& open_out(std::ofstream& file, const std::string& path) {
    if (path.empty()) return std::cout;
    file.open(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output file " + path);
    return file;
}

void cmd_report_sizes(const std::vector<std::pair<int, int>>& configs) {
    for (const auto& [d, m] : configs) {
        SizeReport report = size_report(d, m);
        std::cout << "[d=" << d << ", m=" << m << "]\n";
        for (const auto& row : report.rows)
            std::cout << "  " << name(row.type) << ": " << row.address_bits
                      << " address bits, " << row.entry_bits << " entry bits, "
                      << format_size(row.table_bytes) << '\n';
        std::cout << "  total: " << format_size(report.total_bytes) << '\n';
    }
}

void cmd_build_lut(int d, int m, StabType type, int cutoff, bool force_full, int threads,
                   const std::string& out) {
    CodeLayout layout = build_layout(d);
    DecoderConfig cfg = DecoderConfig::make(layout, m, type);
    DecodingGraph graph =
        build_graph(layout, type, m, effective_edge_probabilities(NoiseParams{1e-2, 1, 0}));
    BuildOptions options;
    options.force_full = force_full;
    options.threads = threads;
    std::ofstream file(out, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output file " + out);
    if (cutoff >= 0) {
        SparseLut lut = build_weight_bounded_lut(cfg, graph, cutoff, options);
        serialize(lut, file);
        std::cerr << "wrote " << lut.entries.size() << " weight-bounded entries to " << out
                  << '\n';
    } else {
        Lut lut = build_full_lut(cfg, graph, options);
        serialize(lut, file);
        std::cerr << "wrote " << lut.entries.size() << " entries to " << out << '\n';
    }
}

void cmd_compress_lut(const std::string& in, const std::string& out) {
    std::ifstream source(in, std::ios::binary);
    if (!source) throw std::runtime_error("cannot open input file " + in);
    // Peek the distance byte (offset 8) to build the layout.
    std::string bytes((std::istreambuf_iterator<char>(source)), {});
    if (bytes.size() < 9) throw std::runtime_error("truncated LUT file");
    CodeLayout layout = build_layout(int(u8(bytes[8])));
    std::istringstream replay(bytes);
    LutFile lut = deserialize_lut(replay, layout);

    std::ofstream sink(out, std::ios::binary);
    if (!sink) throw std::runtime_error("cannot open output file " + out);
    if (lut.sparse) {
        RankClut clut = compress_rank(lut.sparse_lut);
        serialize(clut, sink);
        std::cerr << "rank-index CLUT: " << clut.entry_count() << " entries, "
                  << format_size(clut.payload_bytes()) << '\n';
    } else {
        FrameClut clut = compress_frame(lut.dense);
        serialize(clut, sink);
        std::cerr << "frame CLUT: " << clut.entry_count() << " entries, "
                  << format_size(clut.payload_bytes()) << " payload ("
                  << format_size(clut.encoding_table_bytes()) << " pattern table)\n";
    }
}

void cmd_run(const ExperimentSpec& spec, BackendKind kind, int cutoff, bool force_full,
             const std::string& out, const std::string& trace) {
    CodeLayout layout = build_layout(spec.d);
    BuildOptions options;
    options.force_full = force_full;
    options.threads = spec.threads;
    BackendSet backends = make_backends(layout, spec.m, kind, cutoff, options);

    LerReport report;
    if (!trace.empty()) {
        std::ofstream trace_file(trace);
        if (!trace_file) throw std::runtime_error("cannot open trace file " + trace);
        NoiseParams params{spec.p, spec.cycles, spec.seed};
        params.validate();
        for (u64 trial = 0; trial < spec.trials; ++trial) {
            TrialRecord record = sample_trial(layout, params, trial);
            write_trace_record(trace_file, trial, record);
            TrialOutcome outcome = decode_trial(layout, record, backends.z, backends.x);
            ++report.trials;
            report.logical_errors += outcome.logical_error;
            report.decoder_failures += u64(outcome.decoder_failures);
        }
    } else {
        report = run_experiment(layout, spec, backends);
    }

    std::ofstream file;
    std::ostream& os = open_out(file, out);
    write_csv_header(os);
    write_csv_row(os, csv_row(spec, report));
}

void cmd_sweep(ExperimentSpec spec, const std::vector<double>& ps, BackendKind kind, int cutoff,
               bool force_full, const std::string& out) {
    CodeLayout layout = build_layout(spec.d);
    BuildOptions options;
    options.force_full = force_full;
    options.threads = spec.threads;
    BackendSet backends = make_backends(layout, spec.m, kind, cutoff, options);

    std::ofstream file;
    std::ostream& os = open_out(file, out);
    write_csv_header(os);
    std::vector<std::pair<double, double>> points;
    for (double p : ps) {
        spec.p = p;
        LerReport report = run_experiment(layout, spec, backends);
        write_csv_row(os, csv_row(spec, report));
        if (report.logical_errors > 0) points.emplace_back(p, report.ler());
    }
    if (points.size() >= 2)
        std::cerr << "fitted scaling exponent: " << fit_scaling_exponent(points) << '\n';
}

int cmd_verify(const std::string& in, int d, int m, BackendKind kind, int cutoff,
               bool force_full, int threads) {
    CodeLayout layout = build_layout(d);
    BuildOptions options;
    options.force_full = force_full;
    options.threads = threads;
    BackendSet backends = make_backends(layout, m, kind, cutoff, options);
    BackendSet oracle = make_backends(layout, m, BackendKind::Oracle);

    std::ifstream file(in);
    if (!file) throw std::runtime_error("cannot open trace file " + in);
    u64 records = 0, mismatches = 0;
    TraceRecord record;
    while (read_trace_record(file, record)) {
        ++records;
        TrialOutcome got = decode_trial(layout, record.z_syndromes, record.x_syndromes,
                                        record.final_data_measurement, backends.z, backends.x);
        TrialOutcome want = decode_trial(layout, record.z_syndromes, record.x_syndromes,
                                         record.final_data_measurement, oracle.z, oracle.x);
        bool same = got.logical_error == want.logical_error &&
                    got.x_error_log == want.x_error_log && got.z_error_log == want.z_error_log;
        if (!same) {
            ++mismatches;
            std::cerr << "mismatch at trial " << record.trial_index << '\n';
        }
    }
    std::cout << records << " records, " << mismatches << " mismatches\n";
    return mismatches == 0 ? 0 : 2;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"lookup-table decoder for small rotated surface codes"};
    app.require_subcommand(1);

    int d = 3, m = 2, cycles = 5, cutoff = -1, threads = 0;
    u64 trials = 100000, seed = 0;
    std::vector<double> ps;
    std::string backend = "full", type = "z", in, out, trace;
    bool force_full = false;

    auto add_geometry = [&](CLI::App* cmd) {
        cmd->add_option("-d,--distance", d, "code distance")->check(CLI::Range(3, 5));
        cmd->add_option("-m,--rounds", m, "window size in rounds")->check(CLI::Range(1, 8));
    };
    auto add_build = [&](CLI::App* cmd) {
        cmd->add_option("-w,--weight-cutoff", cutoff, "store only addresses of popcount <= W");
        cmd->add_flag("--force-full", force_full, "allow full builds past 16 address bits");
        cmd->add_option("-j,--threads", threads, "worker threads (0: all cores)");
    };
    auto add_noise = [&](CLI::App* cmd) {
        cmd->add_option("-c,--cycles", cycles, "measurement cycles per trial")
            ->check(CLI::PositiveNumber);
        cmd->add_option("-t,--trials", trials, "Monte Carlo trials");
        cmd->add_option("-s,--seed", seed, "base RNG seed");
        cmd->add_option("-b,--backend", backend, "lookup backend: full, clut, oracle");
    };

    CLI::App* sizes = app.add_subcommand("report-sizes", "print uncompressed table sizes");
    bool sizes_single = false;
    sizes->add_option("-d,--distance", d, "code distance")->check(CLI::Range(3, 5));
    sizes->add_option("-m,--rounds", m, "window size in rounds")->check(CLI::Range(1, 8));
    sizes->callback([&] {
        sizes_single = sizes->count("--distance") || sizes->count("--rounds");
    });

    CLI::App* build = app.add_subcommand("build-lut", "program a lookup table offline");
    add_geometry(build);
    add_build(build);
    build->add_option("--type", type, "stabilizer type: x or z");
    build->add_option("-o,--out", out, "output file")->required();

    CLI::App* compress = app.add_subcommand("compress-lut", "compress a serialized table");
    compress->add_option("-i,--in", in, "input LUT file")->required();
    compress->add_option("-o,--out", out, "output CLUT file")->required();

    CLI::App* run = app.add_subcommand("run", "Monte Carlo logical error rate");
    add_geometry(run);
    add_build(run);
    add_noise(run);
    double p = 1e-2;
    run->add_option("-p,--pphys", p, "physical error probability");
    run->add_option("-o,--out", out, "CSV output file (default stdout)");
    run->add_option("--trace", trace, "also write a per-trial syndrome trace");

    CLI::App* sweep = app.add_subcommand("sweep", "error-rate sweep over physical rates");
    add_geometry(sweep);
    add_build(sweep);
    add_noise(sweep);
    sweep->add_option("-p,--pphys", ps, "physical error probability (repeatable)")->required();
    sweep->add_option("-o,--out", out, "CSV output file (default stdout)");

    CLI::App* verify = app.add_subcommand("verify", "re-decode a trace against the oracle");
    add_geometry(verify);
    add_build(verify);
    verify->add_option("-b,--backend", backend, "lookup backend: full, clut, oracle");
    verify->add_option("-i,--in", in, "input trace file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (sizes->parsed()) {
            if (sizes_single)
                cmd_report_sizes({{d, m}});
            else
                cmd_report_sizes({{3, 2}, {3, 3}, {4, 2}, {4, 3}, {5, 2}});
        } else if (build->parsed()) {
            cmd_build_lut(d, m, parse_type(type), cutoff, force_full, threads, out);
        } else if (compress->parsed()) {
            cmd_compress_lut(in, out);
        } else if (run->parsed()) {
            ExperimentSpec spec{d, m, cycles, p, trials, seed, threads};
            cmd_run(spec, parse_backend(backend), cutoff, force_full, out, trace);
        } else if (sweep->parsed()) {
            ExperimentSpec spec{d, m, cycles, 0.0, trials, seed, threads};
            cmd_sweep(spec, ps, parse_backend(backend), cutoff, force_full, out);
        } else if (verify->parsed()) {
            return cmd_verify(in, d, m, parse_backend(backend), cutoff, force_full, threads);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}

}  // namespace lutdec
