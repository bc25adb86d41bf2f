// pmg: exact samplers, TV metrology, gate diagnostics, a hyperplane learner
// and a CNOT+1q compiler for the majority-mod-p circuit distribution family.
//
// Exit codes: 0 success, 1 usage or I/O error, 2 learner failure.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <memory>
#include <optional>
#include <string>

#include "pmg/compiler.hpp"
#include "pmg/gates.hpp"
#include "pmg/ideal_model.hpp"
#include "pmg/io.hpp"
#include "pmg/learner.hpp"
#include "pmg/metrics.hpp"
#include "pmg/rng.hpp"
#include "pmg/simulator.hpp"
#include "pmg/statevector.hpp"

namespace {

using nlohmann::json;
using namespace pmg;

constexpr const char* kVersion = "pmg 1.0.0";
constexpr const char* kSeedScheme = "splitmix64/xoshiro256++ counter substreams";

enum class Model { Ideal, AnalyticP, UnitaryQ };

Model parse_model(const std::string& name) {
    if (name == "ideal") {
        return Model::Ideal;
    }
    if (name == "analytic-p") {
        return Model::AnalyticP;
    }
    if (name == "unitary-q") {
        return Model::UnitaryQ;
    }
    throw CLI::ValidationError("--model", "must be ideal, analytic-p or unitary-q");
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
    if (path.empty()) {
        return std::cout;
    }
    file.open(path);
    if (!file) {
        throw std::runtime_error("cannot open output file: " + path);
    }
    return file;
}

json meta_json(std::uint64_t seed, std::uint64_t streams) {
    return json{{"seed", seed}, {"scheme", kSeedScheme}, {"streams", streams}};
}

// A callable sample stream over any of the three models.
class ModelSource {
public:
    ModelSource(Model model, const ProblemParams& params, std::uint64_t seed,
                std::uint64_t stream)
        : model_(model), params_(params), tree_(build_tree(params.n)),
          rng_(substream(seed, stream)) {
        if (model == Model::UnitaryQ) {
            qmodel_ = std::make_unique<QModel>(params);
        }
    }

    Sample operator()() {
        switch (model_) {
            case Model::Ideal:
                return ideal_sample(params_, tree_, rng_);
            case Model::AnalyticP:
                return analytic_sample(params_, tree_, rng_);
            default:
                return qmodel_->sample(rng_);
        }
    }

private:
    Model model_;
    ProblemParams params_;
    BalancedTree tree_;
    std::unique_ptr<QModel> qmodel_;
    Rng rng_;
};

DiscretePMF model_pmf(Model model, const ProblemParams& params, bool dense_q) {
    switch (model) {
        case Model::Ideal:
            return ideal_pmf(params);
        case Model::AnalyticP:
            return analytic_pmf(params);
        default:
            return dense_q ? q_pmf_dense(params) : q_pmf_rank2(params);
    }
}

struct CommonFlags {
    int n = 7;
    std::int64_t p = 3;
    std::int64_t s = 0;
    int m = 0;  // 0 -> default block size

    ProblemParams params() const { return ProblemParams::make(n, p, s, m); }

    void attach(CLI::App* cmd, bool with_m = true) {
        cmd->add_option("--n", n, "tree vertex count (odd, >= 3)")->required();
        cmd->add_option("--p", p, "odd prime modulus")->required();
        cmd->add_option("--s", s, "hyperplane shift in [0, p)");
        if (with_m) {
            cmd->add_option("--m", m, "gate block size (default: ceil(2/c+1) capped)");
        }
    }
};

int run_sample(const CommonFlags& flags, const std::string& model_name, std::int64_t shots,
               std::uint64_t seed, const std::string& out_path) {
    const Model model = parse_model(model_name);
    const ProblemParams params = flags.params();
    ModelSource source(model, params, seed, 0);
    std::ofstream file;
    std::ostream& out = open_output(file, out_path);
    for (std::int64_t i = 0; i < shots; ++i) {
        out << sample_to_jsonl(source()) << '\n';
    }
    return 0;
}

int run_learn(const CommonFlags& flags, const std::string& model_name,
              const std::string& samples_path, std::int64_t M, double delta, double tau,
              double epsilon, std::uint64_t seed, const std::string& out_path) {
    LearnerConfig config;
    config.p = flags.p;
    config.n = flags.n;
    config.delta = delta;
    config.tau = tau;
    config.epsilon = epsilon;
    config.M = M;
    config.m = flags.m;
    config.provenance_seed = seed;

    LearnResult result;
    if (!samples_path.empty()) {
        std::ifstream in(samples_path);
        if (!in) {
            throw std::runtime_error("cannot open sample file: " + samples_path);
        }
        const std::vector<Sample> samples = read_samples_jsonl(in);
        if (config.M == 0) {
            config.finalize();
            if (static_cast<std::int64_t>(samples.size()) < config.M) {
                // A finite file caps the budget.
                config.M = static_cast<std::int64_t>(samples.size());
            }
        }
        result = learn(samples, config);
    } else {
        const ProblemParams params = flags.params();
        ModelSource source(parse_model(model_name), params, seed, 0);
        result = learn([&source] { return source(); }, config);
    }

    json j = learn_result_to_json(result);
    for (auto& value : j.at("V")) {
        value = round15(value.get<double>());
    }
    j["meta"] = meta_json(seed, 1);
    std::ofstream file;
    std::ostream& out = open_output(file, out_path);
    out << j.dump() << '\n';
    return result.ok ? 0 : 2;
}

int run_tv_exact(const CommonFlags& flags, const std::string& a_name,
                 const std::string& b_name) {
    const ProblemParams params = flags.params();
    if (params.total_bits() > kEnumerationBitCap) {
        throw std::runtime_error("outcome space too large for exact enumeration (2n-1 > 24)");
    }
    DiscretePMF a = model_pmf(parse_model(a_name), params, true);
    DiscretePMF b = model_pmf(parse_model(b_name), params, true);
    const double tv = tv_exact(a, b);
    json j{{"a", a_name},    {"b", b_name},       {"n", flags.n}, {"p", flags.p},
           {"s", flags.s},   {"m", params.m},     {"tv", round15(tv)}};
    std::cout << j.dump() << '\n';
    return 0;
}

int run_tv_dp(const CommonFlags& flags) {
    const ProblemParams params = flags.params();
    const double tv = tv_p_ideal_dp(params);
    const double bound = tv_p_ideal_bound(params);
    json j{{"n", flags.n},
           {"p", flags.p},
           {"s", flags.s},
           {"tv", round15(tv)},
           {"bound", round15(bound)},
           {"within_bound", tv <= bound}};
    std::cout << j.dump() << '\n';
    return 0;
}

int run_tv_empirical(const CommonFlags& flags, const std::string& model_name,
                     const std::string& samples_path) {
    const ProblemParams params = flags.params();
    std::ifstream in(samples_path);
    if (!in) {
        throw std::runtime_error("cannot open sample file: " + samples_path);
    }
    const std::vector<Sample> samples = read_samples_jsonl(in);
    const Model model = parse_model(model_name);
    DiscretePMF oracle = model_pmf(model, params, false);
    const double tv = tv_empirical(oracle, samples);
    json j{{"model", model_name},
           {"n", flags.n},
           {"p", flags.p},
           {"s", flags.s},
           {"samples", samples.size()},
           {"tv", round15(tv)}};
    std::cout << j.dump() << '\n';
    return 0;
}

int run_tv_local(const CommonFlags& flags, const std::string& function_path) {
    const ProblemParams params = flags.params();
    std::ifstream in(function_path);
    if (!in) {
        throw std::runtime_error("cannot open function file: " + function_path);
    }
    json fj = json::parse(in);
    const LocalFunction f = local_function_from_json(fj);
    DiscretePMF fu = local_function_pmf(f);
    if (fu.total_bits != params.total_bits()) {
        throw std::runtime_error("function output arity must equal 2n-1");
    }
    DiscretePMF ideal = ideal_pmf(params);
    const double tv = tv_exact(fu, ideal);
    json j{{"inputs", f.inputs},
           {"outputs", f.outputs.size()},
           {"locality", f.locality()},
           {"tv_vs_ideal", round15(tv)},
           {"tv_p_ideal_dp", round15(tv_p_ideal_dp(params))}};
    std::cout << j.dump() << '\n';
    return 0;
}

int run_gates_check(int m, const std::string& sweep_text, const std::string& out_path) {
    const std::vector<double> sweep = parse_angle_sweep(sweep_text);
    Eigen::VectorXd thetas(static_cast<Eigen::Index>(sweep.size()));
    Eigen::VectorXd frob(static_cast<Eigen::Index>(sweep.size()));
    Eigen::VectorXd spec(static_cast<Eigen::Index>(sweep.size()));
    std::ofstream file;
    std::ostream& out = open_output(file, out_path);
    out << "theta,frobenius,spectral\n";
    for (std::size_t i = 0; i < sweep.size(); ++i) {
        const BlockGateParams gate{m, sweep[i]};
        const Eigen::MatrixXcd a = build_a(gate);
        const Eigen::MatrixXcd u = build_u(gate);
        const double df = gate_distance(a, u, MatrixNorm::Frobenius);
        const double ds = gate_distance(a, u, MatrixNorm::Spectral);
        thetas(static_cast<Eigen::Index>(i)) = sweep[i];
        frob(static_cast<Eigen::Index>(i)) = df;
        spec(static_cast<Eigen::Index>(i)) = ds;
        out << format_g15(sweep[i]) << ',' << format_g15(df) << ',' << format_g15(ds) << '\n';
    }
    out << "# fitted_slope_frobenius," << format_g15(fitted_loglog_slope(thetas, frob)) << '\n';
    out << "# fitted_slope_spectral," << format_g15(fitted_loglog_slope(thetas, spec)) << '\n';
    return 0;
}

int run_compile_gate(int m, const std::string& theta_text, const std::string& out_path) {
    const double theta = parse_angle(theta_text);
    const Eigen::MatrixXcd u = build_u({m, theta});
    const NativeCircuit native = compile_block_unitary(u, m);
    const double residual = (native_unitary(native) - u).cwiseAbs().maxCoeff();
    json j{{"kind", "u_gate"},
           {"m", m},
           {"theta", round15(theta)},
           {"gate_count", native.gates.size()},
           {"residual", round15(residual)},
           {"circuit", native_to_json(native)}};
    std::ofstream file;
    std::ostream& out = open_output(file, out_path);
    out << j.dump() << '\n';
    return 0;
}

int run_compile_generator(const CommonFlags& flags, const std::string& out_path) {
    const ProblemParams params = flags.params();
    const CircuitDescriptor descriptor = circuit_descriptor(params);
    const NativeCircuit native = compile_descriptor(descriptor);
    json j{{"kind", "generator"},
           {"n", flags.n},
           {"p", flags.p},
           {"s", flags.s},
           {"m", params.m},
           {"gate_count", native.gates.size()},
           {"circuit", native_to_json(native)}};
    if (params.total_bits() <= kEnumerationBitCap) {
        const Eigen::VectorXd original = born_distribution(descriptor);
        const Eigen::VectorXd compiled = born_distribution(native);
        j["tv_residual"] = round15(0.5 * (original - compiled).cwiseAbs().sum());
    }
    std::ofstream file;
    std::ostream& out = open_output(file, out_path);
    out << j.dump() << '\n';
    return 0;
}

int run_pmf(const CommonFlags& flags, const std::string& model_name,
            const std::string& out_path) {
    const ProblemParams params = flags.params();
    if (params.total_bits() > kEnumerationBitCap) {
        throw std::runtime_error("outcome space too large for a dense table (2n-1 > 24)");
    }
    DiscretePMF pmf = model_pmf(parse_model(model_name), params, true);
    const Eigen::VectorXd& table = pmf.dense();
    std::ofstream file;
    std::ostream& out = open_output(file, out_path);
    out << "outcome,probability\n";
    for (Eigen::Index z = 0; z < table.size(); ++z) {
        const Sample sample = outcome_from_index(std::uint64_t(z), params.total_bits());
        out << bits_to_string(sample.d) << bits_to_string(sample.x)
            << (sample.y ? '1' : '0') << ',' << format_g15(table(z)) << '\n';
    }
    return 0;
}

int run_circuit(const CommonFlags& flags, const std::string& out_path) {
    const ProblemParams params = flags.params();
    json j = descriptor_to_json(circuit_descriptor(params));
    std::ofstream file;
    std::ostream& out = open_output(file, out_path);
    out << j.dump() << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"samplers, learners and total-variation metrology for "
                 "majority-mod-p circuit distributions"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    // sample
    auto* sample_cmd = app.add_subcommand("sample", "draw (d, x, y) samples as JSONL");
    CommonFlags sample_flags;
    sample_flags.attach(sample_cmd);
    std::string sample_model = "ideal";
    std::int64_t shots = 0;
    std::uint64_t sample_seed = 0;
    std::string sample_out;
    sample_cmd->add_option("--model", sample_model, "ideal | analytic-p | unitary-q")
        ->required();
    sample_cmd->add_option("--shots", shots, "number of draws")->required();
    sample_cmd->add_option("--seed", sample_seed, "64-bit master seed");
    sample_cmd->add_option("--out", sample_out, "output path (default: stdout)");

    // learn
    auto* learn_cmd = app.add_subcommand("learn", "recover s from samples");
    CommonFlags learn_flags;
    learn_flags.attach(learn_cmd);
    std::string learn_model = "analytic-p";
    std::string learn_samples;
    std::int64_t learn_M = 0;
    double learn_delta = 0.1;
    double learn_tau = 0.0;
    double learn_epsilon = 0.0;
    std::uint64_t learn_seed = 0;
    std::string learn_out;
    learn_cmd->add_option("--model", learn_model, "oracle model when no --samples file");
    learn_cmd->add_option("--samples", learn_samples, "JSONL sample file");
    learn_cmd->add_option("--M", learn_M, "sample budget (default: Hoeffding bound)");
    learn_cmd->add_option("--delta", learn_delta, "failure probability");
    learn_cmd->add_option("--tau", learn_tau, "crossing tolerance (default 0.99*pi/(6p))");
    learn_cmd->add_option("--epsilon", learn_epsilon, "per-coordinate precision");
    learn_cmd->add_option("--seed", learn_seed, "64-bit master seed");
    learn_cmd->add_option("--out", learn_out, "output path (default: stdout)");

    // tv
    auto* tv_cmd = app.add_subcommand("tv", "total variation reports");
    tv_cmd->require_subcommand(1);
    auto* tv_exact_cmd = tv_cmd->add_subcommand("exact", "full-enumeration TV of two models");
    CommonFlags tv_exact_flags;
    tv_exact_flags.attach(tv_exact_cmd);
    std::string tv_a = "analytic-p";
    std::string tv_b = "ideal";
    tv_exact_cmd->add_option("--a", tv_a, "first model");
    tv_exact_cmd->add_option("--b", tv_b, "second model");

    auto* tv_dp_cmd = tv_cmd->add_subcommand("dp", "exact TV(analytic, ideal) by convolution");
    CommonFlags tv_dp_flags;
    tv_dp_flags.attach(tv_dp_cmd, false);

    auto* tv_emp_cmd = tv_cmd->add_subcommand("empirical", "plug-in TV of a sample file");
    CommonFlags tv_emp_flags;
    tv_emp_flags.attach(tv_emp_cmd);
    std::string tv_emp_model = "analytic-p";
    std::string tv_emp_samples;
    tv_emp_cmd->add_option("--model", tv_emp_model, "oracle model");
    tv_emp_cmd->add_option("--samples", tv_emp_samples, "JSONL sample file")->required();

    auto* tv_local_cmd =
        tv_cmd->add_subcommand("local", "TV of a d-local function against the ideal law");
    CommonFlags tv_local_flags;
    tv_local_flags.attach(tv_local_cmd, false);
    std::string tv_local_function;
    tv_local_cmd->add_option("--function", tv_local_function, "local-function JSON file")
        ->required();

    // gates
    auto* gates_cmd = app.add_subcommand("gates", "block-gate diagnostics");
    gates_cmd->require_subcommand(1);
    auto* gates_check_cmd = gates_cmd->add_subcommand("check", "A-vs-U distance sweep as CSV");
    int gates_m = 2;
    std::string gates_sweep = "pi/64:pi/8:8";
    std::string gates_out;
    gates_check_cmd->add_option("--m", gates_m, "block size")->required();
    gates_check_cmd->add_option("--theta-sweep", gates_sweep, "lo:hi:count (log-spaced)");
    gates_check_cmd->add_option("--out", gates_out, "output path (default: stdout)");

    // compile
    auto* compile_cmd =
        app.add_subcommand("compile", "lower gates or generators to CNOT + 1q");
    int compile_m = 2;
    std::string compile_theta;
    std::string compile_out;
    bool compile_generator = false;
    CommonFlags compile_flags;
    compile_cmd->add_option("--m", compile_m, "block size / generator block size");
    compile_cmd->add_option("--theta", compile_theta, "gate angle, e.g. pi/5");
    compile_cmd->add_flag("--generator", compile_generator, "compile the full generator");
    compile_cmd->add_option("--n", compile_flags.n, "tree vertex count (generator mode)");
    compile_cmd->add_option("--p", compile_flags.p, "odd prime (generator mode)");
    compile_cmd->add_option("--s", compile_flags.s, "shift (generator mode)");
    compile_cmd->add_option("--out", compile_out, "output path (default: stdout)");

    // pmf
    auto* pmf_cmd = app.add_subcommand("pmf", "dense Born table as CSV (outcome,probability)");
    CommonFlags pmf_flags;
    pmf_flags.attach(pmf_cmd);
    std::string pmf_model = "ideal";
    std::string pmf_out;
    pmf_cmd->add_option("--model", pmf_model, "ideal | analytic-p | unitary-q")->required();
    pmf_cmd->add_option("--out", pmf_out, "output path (default: stdout)");

    // circuit
    auto* circuit_cmd =
        app.add_subcommand("circuit", "emit the generator CircuitDescriptor as JSON");
    CommonFlags circuit_flags;
    circuit_flags.attach(circuit_cmd);
    std::string circuit_out;
    circuit_cmd->add_option("--out", circuit_out, "output path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (sample_cmd->parsed()) {
            return run_sample(sample_flags, sample_model, shots, sample_seed, sample_out);
        }
        if (learn_cmd->parsed()) {
            return run_learn(learn_flags, learn_model, learn_samples, learn_M, learn_delta,
                             learn_tau, learn_epsilon, learn_seed, learn_out);
        }
        if (tv_cmd->parsed()) {
            if (tv_exact_cmd->parsed()) {
                return run_tv_exact(tv_exact_flags, tv_a, tv_b);
            }
            if (tv_dp_cmd->parsed()) {
                return run_tv_dp(tv_dp_flags);
            }
            if (tv_emp_cmd->parsed()) {
                return run_tv_empirical(tv_emp_flags, tv_emp_model, tv_emp_samples);
            }
            return run_tv_local(tv_local_flags, tv_local_function);
        }
        if (gates_cmd->parsed()) {
            return run_gates_check(gates_m, gates_sweep, gates_out);
        }
        if (compile_cmd->parsed()) {
            if (compile_generator) {
                compile_flags.m = compile_m;
                return run_compile_generator(compile_flags, compile_out);
            }
            if (compile_theta.empty()) {
                throw std::runtime_error("compile needs --theta (gate mode) or --generator");
            }
            return run_compile_gate(compile_m, compile_theta, compile_out);
        }
        if (pmf_cmd->parsed()) {
            return run_pmf(pmf_flags, pmf_model, pmf_out);
        }
        if (circuit_cmd->parsed()) {
            return run_circuit(circuit_flags, circuit_out);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
