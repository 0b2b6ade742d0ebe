// Copyright 2026 The lucj-init Authors
// SPDX-License-Identifier: Apache-2.0

// lucj: factorize t2 amplitudes, compress them into UCJ parameters, and
// evaluate the resulting states by VQE and QSCI energies.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lucj/chemio.hpp"
#include "lucj/compress.hpp"
#include "lucj/detci.hpp"
#include "lucj/dfcore.hpp"
#include "lucj/kernels.hpp"
#include "lucj/linalg.hpp"
#include "lucj/models.hpp"
#include "lucj/qsci.hpp"
#include "lucj/sampleopt.hpp"
#include "lucj/ucjsim.hpp"
#include "run_config.hpp"

namespace fs = std::filesystem;
using namespace lucj;
using lucj::cli::RunConfig;

namespace {

enum ExitCode { kOk = 0, kOther = 1, kParse = 2, kNumerical = 3, kConvergence = 4 };

std::string energy_str(double e)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10f", e);
    return buf;
}

std::string error_str(double e)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3e", e);
    return buf;
}

/// Writes every line to stdout and to the report file.
class Report {
public:
    Report(const std::string &command, const RunConfig &config, const fs::path &file) : file_(file)
    {
        line("# lucj " + command + " config " + config.hash_hex());
    }

    void line(const std::string &text)
    {
        std::cout << text << '\n';
        lines_ << text << '\n';
    }

    void value(const std::string &key, const std::string &text) { line(key + " " + text); }

    ~Report()
    {
        std::ofstream out(file_);
        out << lines_.str();
    }

private:
    fs::path file_;
    std::ostringstream lines_;
};

fs::path output_dir(const RunConfig &config)
{
    fs::path dir = config.get_string("paths.output_dir", ".");
    fs::create_directories(dir);
    return dir;
}

Hamiltonian load_hamiltonian(const RunConfig &config) { return read_fcidump(config.require("paths.fcidump")); }

/// From the amplitude file, or from CISD on the Hamiltonian when none is given.
Amplitudes load_amplitudes(const RunConfig &config, const Hamiltonian *h, std::string &source)
{
    if (auto path = config.get("paths.amplitudes")) {
        source = *path;
        return read_amplitudes(*path);
    }
    if (!h) throw ParseError("missing required setting 'paths.amplitudes'");
    source = "cisd";
    return cisd_to_t_amplitudes(cisd_ground_state(*h).coefficients);
}

CompressionConfig compression_config(const RunConfig &config, bool regularized)
{
    CompressionConfig c;
    c.target_reps = static_cast<int>(config.get_int("method.reps", 1));
    c.lambda = config.get_double("method.lambda", regularized ? 0.005 : 0.0);
    c.max_iter = static_cast<int>(config.get_int("method.max_iter", 100));
    c.stage_step = static_cast<int>(config.get_int("method.stage_step", 2));
    const std::string ref = config.get_string("method.reference_norm", "full");
    if (ref == "full") {
        c.reference = ReferenceNorm::full_factorization;
    } else if (ref == "retained") {
        c.reference = ReferenceNorm::retained_terms;
    } else {
        throw ParseError("method.reference_norm must be 'full' or 'retained'");
    }
    validate(c);
    return c;
}

std::optional<ConnectivityMask> ansatz_mask(const RunConfig &config, int norb)
{
    if (config.get_string("mask.preset", "all") == "all" && !config.has("mask.same_spin") &&
        !config.has("mask.opposite_spin")) {
        return std::nullopt;
    }
    return cli::mask_from_config(config, norb, "all");
}

struct CompressionRun {
    DoubleFactorization truncated;
    MultistageResult result;
    double truncated_loss = 0.0;
};

CompressionRun run_compression(const RunConfig &config, const Amplitudes &amps, bool regularized)
{
    const CompressionConfig cc = compression_config(config, regularized);
    const DoubleFactorization full = double_factorize_t2(amps.t2);
    if (cc.target_reps > static_cast<int>(full.size())) {
        throw ParseError("method.reps exceeds the " + std::to_string(full.size()) + " available terms");
    }
    const ConnectivityMask mask = cli::mask_from_config(config, full.norb, "all");
    const int start = static_cast<int>(config.get_int("method.start_reps", cc.target_reps));
    CompressionRun run;
    run.truncated = truncate(full, static_cast<std::size_t>(cc.target_reps));
    const PairSet allowed = mask_union(mask);
    for (auto &term : run.truncated.terms) term.J = apply_mask(term.J, allowed);
    run.truncated_loss = reconstruction_loss(run.truncated, amps.t2);
    run.result = multistage_compress(full, amps.t2, cc, mask, std::min<int>(start, static_cast<int>(full.size())));
    return run;
}

/// Builds the ansatz named by method.selector.
UCJOperator build_operator(const RunConfig &config, const Hamiltonian &h, Report &report)
{
    const std::string method = config.get_string("method.selector", config.has("paths.ucj") ? "file" : "truncated");
    report.value("method", method);
    if (method == "file") return read_ucj(config.require("paths.ucj"));
    const int reps = static_cast<int>(config.get_int("method.reps", 1));
    const bool final_rotation = config.get_bool("ansatz.final_rotation", true);
    const auto mask = ansatz_mask(config, h.norb);
    report.value("reps", std::to_string(reps));
    report.value("mask", config.get_string("mask.preset", "all"));
    if (method == "random") {
        std::mt19937_64 rng(config.get_seed("seeds.random", 0));
        return random_ucj(h.norb, reps, final_rotation, rng, mask);
    }
    std::string source;
    const Amplitudes amps = load_amplitudes(config, &h, source);
    report.value("amplitudes", source);
    std::optional<MatrixXd> t1;
    if (final_rotation) t1 = amps.t1;
    if (method == "truncated") {
        const DoubleFactorization full = double_factorize_t2(amps.t2);
        if (reps > static_cast<int>(full.size())) throw ParseError("method.reps exceeds the available terms");
        return ucj_from_df(truncate(full, static_cast<std::size_t>(reps)), t1, mask);
    }
    if (method == "compressed" || method == "compressed+reg") {
        const CompressionRun run = run_compression(config, amps, method == "compressed+reg");
        report.value("truncated_loss", error_str(run.truncated_loss));
        report.value("compressed_loss", error_str(run.result.result.final_fit));
        return ucj_from_df(run.result.result.df, t1, mask);
    }
    throw ParseError("unknown method.selector '" + method + "'");
}

QsciConfig qsci_config(const RunConfig &config)
{
    QsciConfig q;
    q.batches = static_cast<int>(config.get_int("qsci.batches", q.batches));
    q.batch_size = static_cast<std::size_t>(config.get_int("qsci.batch_size", static_cast<long long>(q.batch_size)));
    q.total_samples =
        static_cast<std::size_t>(config.get_int("qsci.total_samples", static_cast<long long>(q.total_samples)));
    q.seed = config.get_seed("seeds.sampling", 0);
    q.davidson_tol = config.get_double("qsci.davidson_tol", q.davidson_tol);
    q.inject_hartree_fock = config.get_bool("qsci.inject_hf", false);
    q.threads = static_cast<int>(config.get_int("run.threads", 0));
    validate(q);
    return q;
}

std::optional<double> reference_fci(const RunConfig &config, const Hamiltonian &h, Report &report)
{
    const double dim = std::exp(std::lgamma(h.norb + 1.0) - std::lgamma(h.n_alpha + 1.0) -
                                std::lgamma(h.norb - h.n_alpha + 1.0) + std::lgamma(h.norb + 1.0) -
                                std::lgamma(h.n_beta + 1.0) - std::lgamma(h.norb - h.n_beta + 1.0));
    if (dim > static_cast<double>(config.get_int("fci.max_dimension", 200000))) return std::nullopt;
    const GroundState gs = fci_ground_state(h);
    report.value("fci_energy", energy_str(gs.energy));
    return gs.energy;
}

void write_qsci_table(const QsciResult &result, const fs::path &path)
{
    std::ofstream out(path);
    write_qsci_report(result, out);
}

void report_qsci(Report &report, const QsciResult &result, std::optional<double> fci)
{
    report.value("qsci_mean", energy_str(result.mean));
    report.value("qsci_min", energy_str(result.min));
    report.value("qsci_max", energy_str(result.max));
    report.value("qsci_excluded_batches", std::to_string(result.excluded));
    if (fci) report.value("qsci_mean_error", error_str(result.mean - *fci));
}

// ---------------------------------------------------------------------------
// Commands

int cmd_factorize(const RunConfig &config)
{
    const fs::path dir = output_dir(config);
    Report report("factorize", config, dir / "factorize_report.txt");
    std::unique_ptr<Hamiltonian> h;
    if (!config.has("paths.amplitudes")) h = std::make_unique<Hamiltonian>(load_hamiltonian(config));
    std::string source;
    const Amplitudes amps = load_amplitudes(config, h.get(), source);
    const DoubleFactorization df = double_factorize_t2(amps.t2);
    write_double_factorization(df, dir / "factorization.df");
    std::ofstream norms(dir / "term_norms.txt");
    norms << "# term frobenius_norm_J\n";
    for (std::size_t k = 0; k < df.size(); ++k) norms << k << ' ' << error_str(df.terms[k].J.norm()) << '\n';
    report.value("amplitudes", source);
    report.value("terms", std::to_string(df.size()));
    report.value("term_bound", std::to_string(2 * amps.nocc * amps.nvir));
    report.value("reconstruction_error", error_str(frobenius_distance(reconstruct_t2(df), amps.t2)));
    return kOk;
}

int cmd_compress(const RunConfig &config)
{
    const fs::path dir = output_dir(config);
    Report report("compress", config, dir / "compress_report.txt");
    std::unique_ptr<Hamiltonian> h;
    if (!config.has("paths.amplitudes")) h = std::make_unique<Hamiltonian>(load_hamiltonian(config));
    std::string source;
    const Amplitudes amps = load_amplitudes(config, h.get(), source);
    const std::string method = config.get_string("method.selector", "compressed");
    if (method != "compressed" && method != "compressed+reg") {
        throw ParseError("compress needs method.selector compressed or compressed+reg");
    }
    const bool regularized = method == "compressed+reg";
    const CompressionRun run = run_compression(config, amps, regularized);
    const CompressionConfig cc = compression_config(config, regularized);
    write_double_factorization(run.result.result.df, dir / "compressed.df");

    std::ofstream trace(dir / "loss_trace.txt");
    trace << "# stage terms initial_loss final_loss iterations\n";
    for (std::size_t s = 0; s < run.result.stages.size(); ++s) {
        const auto &st = run.result.stages[s];
        trace << s << ' ' << st.terms << ' ' << error_str(st.initial_loss) << ' ' << error_str(st.final_loss) << ' '
              << st.iterations << '\n';
    }
    trace << "# final iteration losses\n";
    for (std::size_t k = 0; k < run.result.result.loss_history.size(); ++k) {
        trace << k << ' ' << error_str(run.result.result.loss_history[k]) << '\n';
    }

    report.value("amplitudes", source);
    report.value("reps", std::to_string(cc.target_reps));
    report.value("lambda", error_str(cc.lambda));
    report.value("stages", std::to_string(run.result.stages.size()));
    report.value("truncated_loss", error_str(run.truncated_loss));
    report.value("compressed_loss", error_str(run.result.result.final_fit));
    report.value("regularized_loss", error_str(run.result.result.final_loss));
    report.value("optimizer_status", std::string(to_string(run.result.result.status)));
    if (run.result.result.warning) report.line("# warning: line search failed; best iterate kept");
    return kOk;
}

int cmd_energy(const RunConfig &config)
{
    const fs::path dir = output_dir(config);
    Report report("energy", config, dir / "energy_report.txt");
    const Hamiltonian h = load_hamiltonian(config);
    const UCJOperator op = build_operator(config, h, report);
    const StateVector state = prepare_ucj_state(op, prepare_hartree_fock(h.norb, h.n_alpha, h.n_beta));
    const HamiltonianMatrix hm(state.basis(), h);

    const Determinant hf = hartree_fock_determinant(h.n_alpha, h.n_beta);
    report.value("hf_energy", energy_str(hamiltonian_element(hf, hf, h)));
    const auto fci = reference_fci(config, h, report);
    double imag = 0.0;
    const double vqe = vqe_energy(state, hm, &imag);
    report.value("vqe_energy", energy_str(vqe));
    if (fci) report.value("vqe_error", error_str(vqe - *fci));
    report.value("vqe_imag_residue", error_str(imag));
    report.value("entropy", energy_str(entropy(state)));

    const QsciConfig q = qsci_config(config);
    const SampleSet samples = sample(state, q.total_samples, q.seed);
    if (auto path = config.get("paths.export_samples")) write_bitstrings(samples, fs::path(*path));
    const QsciResult result = batched_qsci(samples, h, q);
    write_qsci_table(result, dir / "qsci_batches.txt");
    report_qsci(report, result, fci);
    if (auto path = config.get("paths.ucj_out")) write_ucj(op, fs::path(*path));
    return kOk;
}

int cmd_random_params(const RunConfig &config)
{
    const fs::path dir = output_dir(config);
    Report report("random-params", config, dir / "random_params_report.txt");
    int norb = static_cast<int>(config.get_int("system.norb", 0));
    if (norb == 0) norb = load_hamiltonian(config).norb;
    const int reps = static_cast<int>(config.get_int("method.reps", 1));
    std::mt19937_64 rng(config.get_seed("seeds.random", 0));
    const UCJOperator op = random_ucj(norb, reps, config.get_bool("ansatz.final_rotation", true), rng,
                                      ansatz_mask(config, norb));
    const fs::path out = config.get_string("paths.ucj_out", (dir / "random.ucj").string());
    write_ucj(op, out);
    double max_j = 0.0, max_unitarity = 0.0;
    for (const auto &layer : op.reps) {
        max_j = std::max({max_j, layer.J_same.cwiseAbs().maxCoeff(), layer.J_opposite.cwiseAbs().maxCoeff()});
        max_unitarity = std::max(max_unitarity, unitarity_error(layer.U));
    }
    report.value("output", out.string());
    report.value("max_abs_J", energy_str(max_j));
    report.value("max_unitarity_error", error_str(max_unitarity));
    return kOk;
}

int cmd_sample_opt(const RunConfig &config)
{
    const fs::path dir = output_dir(config);
    Report report("sample-opt", config, dir / "sample_opt_report.txt");
    const Hamiltonian h = load_hamiltonian(config);
    const UCJOperator init = build_operator(config, h, report);
    SampleOptConfig so;
    so.shots = static_cast<std::size_t>(config.get_int("optimizer.shots", 10000));
    so.sampling_seed = config.get_seed("seeds.sampling", 0);
    so.davidson_tol = config.get_double("qsci.davidson_tol", 1e-8);
    so.optimizer.total_budget = static_cast<int>(config.get_int("optimizer.budget", 500));
    so.optimizer.subproblem_size = static_cast<int>(config.get_int("optimizer.subproblem_size", 20));
    so.optimizer.subproblem_budget = static_cast<int>(config.get_int("optimizer.subproblem_budget", 20));
    so.optimizer.initial_mesh = config.get_double("optimizer.initial_mesh", 0.1);
    so.optimizer.seed = config.get_seed("seeds.optimizer", 0);
    so.mask = ansatz_mask(config, h.norb);
    const SampleOptResult res = optimize_sample_energy(init, h, prepare_hartree_fock(h.norb, h.n_alpha, h.n_beta), so);
    {
        std::ofstream trace(dir / "sample_opt_trace.txt");
        write_trace(res.search.trace, trace);
    }
    write_ucj(res.op, config.get_string("paths.ucj_out", (dir / "optimized.ucj").string()));
    report.value("evaluations", std::to_string(res.search.evaluations));
    report.value("initial_objective", energy_str(res.initial_objective));
    report.value("final_objective", energy_str(res.final_objective));
    return kOk;
}

int cmd_qsci_file(const RunConfig &config)
{
    const fs::path dir = output_dir(config);
    Report report("qsci-file", config, dir / "qsci_file_report.txt");
    const Hamiltonian h = load_hamiltonian(config);
    const SampleSet samples = read_bitstrings(config.require("paths.bitstrings"), h.norb);
    const FilterResult filtered = filter_valid(samples, h.n_alpha, h.n_beta);
    report.value("samples", std::to_string(samples.draws.size()));
    report.value("valid", std::to_string(filtered.valid.draws.size()));
    report.value("retained_fraction", energy_str(filtered.retained_fraction));
    if (filtered.valid.draws.empty()) {
        report.line("# error: no sample has the correct particle numbers");
        return kNumerical;
    }
    QsciConfig q = qsci_config(config);
    const QsciResult result = batched_qsci(samples, h, q);
    write_qsci_table(result, dir / "qsci_batches.txt");
    const auto fci = reference_fci(config, h, report);
    report_qsci(report, result, fci);
    return kOk;
}

int cmd_fci(const RunConfig &config)
{
    const fs::path dir = output_dir(config);
    Report report("fci", config, dir / "fci_report.txt");
    const Hamiltonian h = load_hamiltonian(config);
    const GroundState gs = fci_ground_state(h);
    report.value("dimension", std::to_string(gs.state.basis.size()));
    report.value("fci_energy", energy_str(gs.energy));
    report.value("residual_norm", error_str(gs.residual_norm));
    if (!gs.converged) {
        report.line("# error: Davidson did not converge");
        return kConvergence;
    }
    return kOk;
}

int cmd_cisd_amps(const RunConfig &config)
{
    const fs::path dir = output_dir(config);
    Report report("cisd-amps", config, dir / "cisd_report.txt");
    const Hamiltonian h = load_hamiltonian(config);
    const CISDResult cisd = cisd_ground_state(h);
    if (!cisd.converged) {
        report.line("# error: Davidson did not converge");
        return kConvergence;
    }
    const Amplitudes amps = cisd_to_t_amplitudes(cisd.coefficients);
    const fs::path out = config.get_string("paths.amplitudes_out", (dir / "cisd.amp").string());
    write_amplitudes(amps, out);
    report.value("cisd_energy", energy_str(cisd.energy));
    report.value("c0", energy_str(cisd.coefficients.c0));
    report.value("output", out.string());
    return kOk;
}

int cmd_hubbard(const RunConfig &config)
{
    const int sites = static_cast<int>(config.get_int("system.norb", 6));
    const int nelec = static_cast<int>(config.get_int("system.nelec", sites));
    if (nelec < 0 || nelec % 2) throw ParseError("hubbard needs an even, non-negative electron count");
    const Hamiltonian h = hubbard_chain(sites, config.get_double("system.t", 1.0), config.get_double("system.u", 4.0),
                                        nelec / 2, nelec / 2);
    const fs::path out = config.get_string("paths.fcidump_out", "hubbard.fcidump");
    write_fcidump(h, out);
    std::cout << "# lucj hubbard config " << config.hash_hex() << "\noutput " << out.string() << '\n';
    return kOk;
}

struct FlagSpec {
    const char *name;
    const char *key;
    const char *help;
};

const FlagSpec kFlags[] = {
    {"--fcidump", "paths.fcidump", "FCIDUMP file"},
    {"--amplitudes", "paths.amplitudes", "amplitude file (AMP v1); CISD is used when absent"},
    {"--out-dir", "paths.output_dir", "directory for reports and outputs"},
    {"--ucj", "paths.ucj", "UCJ operator file used as the ansatz"},
    {"--ucj-out", "paths.ucj_out", "where to write the UCJ operator"},
    {"--bitstrings", "paths.bitstrings", "bitstring sample file"},
    {"--export-samples", "paths.export_samples", "write the sampled bitstrings here"},
    {"--amplitudes-out", "paths.amplitudes_out", "where to write CISD amplitudes"},
    {"--fcidump-out", "paths.fcidump_out", "where to write the generated FCIDUMP"},
    {"--method", "method.selector", "truncated | compressed | compressed+reg | random | file"},
    {"--reps", "method.reps", "number of UCJ repetitions L"},
    {"--lambda", "method.lambda", "norm regularization weight"},
    {"--start-reps", "method.start_reps", "multi-stage starting repetitions"},
    {"--stage-step", "method.stage_step", "repetitions removed per stage"},
    {"--max-iter", "method.max_iter", "L-BFGS iteration cap"},
    {"--reference-norm", "method.reference_norm", "full | retained"},
    {"--mask", "mask.preset", "all | square | heavy-hex | none"},
    {"--same-spin", "mask.same_spin", "explicit same-spin pairs, e.g. \"0-1 1-2\""},
    {"--opposite-spin", "mask.opposite_spin", "explicit opposite-spin pairs"},
    {"--final-rotation", "ansatz.final_rotation", "include the t1 / random final rotation (true|false)"},
    {"--seed", "seeds.sampling", "sampling seed"},
    {"--random-seed", "seeds.random", "seed for random parameters"},
    {"--optimizer-seed", "seeds.optimizer", "pattern search seed"},
    {"--batches", "qsci.batches", "QSCI batches"},
    {"--batch-size", "qsci.batch_size", "draws per QSCI batch"},
    {"--total-samples", "qsci.total_samples", "draws taken from the state"},
    {"--davidson-tol", "qsci.davidson_tol", "Davidson residual tolerance"},
    {"--inject-hf", "qsci.inject_hf", "add the HF determinant to every subspace"},
    {"--budget", "optimizer.budget", "objective evaluation budget"},
    {"--subproblem-size", "optimizer.subproblem_size", "coordinates per subproblem"},
    {"--subproblem-budget", "optimizer.subproblem_budget", "evaluations per subproblem"},
    {"--shots", "optimizer.shots", "samples per objective evaluation"},
    {"--norb", "system.norb", "orbital (site) count"},
    {"--nelec", "system.nelec", "electron count"},
    {"--hopping", "system.t", "Hubbard hopping"},
    {"--onsite", "system.u", "Hubbard on-site repulsion"},
    {"--threads", "run.threads", "worker threads for QSCI batches"},
};

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Compressed double factorization and UCJ initialization toolkit"};
    app.require_subcommand(1);
    std::string config_path;
    std::vector<std::string> overrides;
    std::map<std::string, std::string> flag_values;

    using Handler = int (*)(const RunConfig &);
    const std::vector<std::tuple<const char *, const char *, Handler>> commands = {
        {"factorize", "exact double factorization of t2", cmd_factorize},
        {"compress", "compressed double factorization", cmd_compress},
        {"energy", "VQE, entropy and batched QSCI energies of a UCJ state", cmd_energy},
        {"random-params", "random UCJ parameters", cmd_random_params},
        {"sample-opt", "pattern search on the sampled QSCI energy", cmd_sample_opt},
        {"qsci-file", "batched QSCI from a bitstring file", cmd_qsci_file},
        {"fci", "full CI ground-state energy", cmd_fci},
        {"cisd-amps", "CISD-derived t amplitudes", cmd_cisd_amps},
        {"hubbard", "write a Hubbard-chain FCIDUMP", cmd_hubbard},
    };
    std::vector<std::pair<CLI::App *, Handler>> subs;
    for (const auto &[name, help, handler] : commands) {
        CLI::App *sub = app.add_subcommand(name, help);
        sub->add_option("-c,--config", config_path, "run configuration file");
        sub->add_option("--set", overrides, "override a setting: section.key=value");
        for (const auto &flag : kFlags) sub->add_option(flag.name, flag_values[flag.key], flag.help);
        subs.emplace_back(sub, handler);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kParse;
    }

    try {
        RunConfig config = config_path.empty() ? RunConfig{} : RunConfig::load(config_path);
        for (const auto &[sub, handler] : subs) {
            if (!sub->parsed()) continue;
            for (const auto &flag : kFlags)
                if (sub->count(flag.name) > 0) config.set(flag.key, flag_values[flag.key]);
            for (const auto &kv : overrides) {
                const auto eq = kv.find('=');
                if (eq == std::string::npos) throw ParseError("--set expects section.key=value, got '" + kv + "'");
                config.set(kv.substr(0, eq), kv.substr(eq + 1));
            }
            return handler(config);
        }
    } catch (const ParseError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kParse;
    } catch (const NumericalError &e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return kNumerical;
    } catch (const ConvergenceError &e) {
        std::cerr << "convergence error: " << e.what() << '\n';
        return kConvergence;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kOther;
    }
    return kOther;
}
