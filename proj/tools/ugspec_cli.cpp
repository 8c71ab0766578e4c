#include "ugspec/errors.hpp"
#include "ugspec/generators.hpp"
#include "ugspec/label_extended.hpp"
#include "ugspec/maxlin.hpp"
#include "ugspec/numeric_config.hpp"
#include "ugspec/oracle.hpp"
#include "ugspec/recover.hpp"
#include "ugspec/report_json.hpp"

#include <CLI11.hpp>
#include <openssl/evp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#ifndef UGSPEC_GIT_DESCRIBE
#define UGSPEC_GIT_DESCRIBE "unknown"
#endif

using namespace ugspec;

namespace {

using Clock = std::chrono::steady_clock;

struct Run {
    std::vector<std::string> argv;
    std::uint64_t seed = 0;
    bool omit_timings = false;
    json input_hash = nullptr;
    Clock::time_point start = Clock::now();
};

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw PreconditionError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text))
        throw PreconditionError("cannot write " + path);
}

std::string sha256_hex(const std::string &data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (!EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr))
        throw Error("sha256 failed");
    static const char *hex = "0123456789abcdef";
    std::string s;
    for (unsigned i = 0; i < len; ++i) {
        s += hex[md[i] >> 4];
        s += hex[md[i] & 15];
    }
    return s;
}

UGInstance load_instance(Run &run, const std::string &path) {
    const auto text = read_file(path);
    run.input_hash = sha256_hex(text);
    return parse_instance(text);
}

json manifest(const Run &run) {
    json m = {
        {"command_line", run.argv},
        {"input_sha256", run.input_hash},
        {"seed", run.seed},
        {"numeric_config", to_json(numeric_config())},
        {"git_describe", UGSPEC_GIT_DESCRIBE},
    };
    if (!run.omit_timings)
        m["timings"] = {{"wall_seconds", std::chrono::duration<double>(Clock::now() - run.start).count()}};
    return m;
}

void emit(const Run &run, json report) {
    report["manifest"] = manifest(run);
    std::cout << report.dump(2) << "\n";
}

SolveMode pick_mode(const UGInstance &inst, const std::string &mode) {
    if (mode == "adjacency")
        return SolveMode::adjacency;
    if (mode == "laplacian")
        return SolveMode::laplacian;
    // auto
    return inst.regular_degree(numeric_config().regularity_tol) ? SolveMode::adjacency : SolveMode::laplacian;
}

const char *mode_name(SolveMode m) { return m == SolveMode::adjacency ? "adjacency" : "laplacian"; }

MaxLinInstance require_maxlin(const UGInstance &inst) {
    const auto g = detect_group(inst);
    if (!g)
        throw PreconditionError("instance is not a Max-Lin instance over Z_k or Z_2^kappa");
    return as_maxlin(inst, *g);
}

json group_json(const Group &g) { return g.factors(); }

} // namespace

int main(int argc, char **argv) {
    Run run;
    run.argv.assign(argv, argv + argc);

    CLI::App app{"Spectral Unique Games solver and instance toolkit"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_flag("--omit-timings", run.omit_timings, "Leave wall-clock timings out of reports");
    app.add_option("--seed", run.seed, "Seed for every random choice (default 0)");

    // gen
    auto *gen = app.add_subcommand("gen", "Generate instances");
    gen->require_subcommand(1);
    gen->fallthrough();

    auto *gp = gen->add_subcommand("planted", "Planted instance on a random regular graph, optionally perturbed");
    std::size_t gp_n = 16, gp_d = 3, gp_k = 3;
    double gp_eps = 0.0;
    std::string gp_family = "general", gp_out, gp_planted_out, gp_completion_out;
    gp->add_option("--n", gp_n, "Vertices");
    gp->add_option("--d", gp_d, "Degree");
    gp->add_option("--k", gp_k, "Alphabet size");
    gp->add_option("--family", gp_family, "general or maxlin")->check(CLI::IsMember({"general", "maxlin"}));
    gp->add_option("--eps", gp_eps, "Fraction of weight to perturb");
    gp->add_option("--out", gp_out, "Instance file")->required();
    gp->add_option("--planted-out", gp_planted_out, "Planted labeling file (default <out>.planted)");
    gp->add_option("--completion-out", gp_completion_out, "Unperturbed instance file");

    auto *gk = gen->add_subcommand("kv", "Khot-Vishnoi instance");
    unsigned gk_kappa = 2;
    double gk_eps = 0.25;
    std::string gk_out;
    gk->add_option("--kappa", gk_kappa, "n = 2^kappa labels (kappa <= 3)");
    gk->add_option("--eps", gk_eps, "Noise rate in (0, 1/2)");
    gk->add_option("--out", gk_out, "Instance file")->required();

    auto *gr = gen->add_subcommand("regular", "Random regular graph as a k=1 instance");
    std::size_t gr_n = 20, gr_d = 3;
    std::string gr_out;
    gr->add_option("--n", gr_n, "Vertices");
    gr->add_option("--d", gr_d, "Degree");
    gr->add_option("--out", gr_out, "Instance file")->required();

    // solve
    auto *solve = app.add_subcommand("solve", "Run the eigenspace net search");
    std::string s_file, s_mode = "auto";
    SolveParams sp;
    std::optional<double> s_net_step, s_theta;
    double s_C = 1.0, s_theta_floor = 1.0;
    bool s_maxlin = false, s_allow_small = false;
    solve->add_option("file", s_file, "Instance file")->required();
    solve->add_option("--epsilon", sp.epsilon, "Completeness gap epsilon");
    solve->add_option("--gamma", sp.gamma, "Spectral threshold gamma");
    solve->add_option("--mode", s_mode, "adjacency, laplacian or auto")
        ->check(CLI::IsMember({"adjacency", "laplacian", "auto"}));
    solve->add_option("--max-dim", sp.max_dim, "Abort if dim(W) exceeds this");
    solve->add_option("--net-step", s_net_step, "Override the net step");
    solve->add_option("--yes-constant", sp.yes_constant, "Constant C in the yes threshold");
    solve->add_option("--threads", sp.threads, "Worker threads for net evaluation");
    solve->add_flag("--allow-small-gamma", s_allow_small, "Skip the gamma > 8 epsilon check (threshold becomes 1)");
    solve->add_flag("--maxlin", s_maxlin, "Use the group Max-Lin path");
    solve->add_option("--theta", s_theta, "Max-Lin theta (default max(10 eps gamma, gamma^3/100))");
    solve->add_option("--uniformity-C", s_C, "Max-Lin ell-infinity constant");
    solve->add_option("--theta-floor", s_theta_floor, "Require theta >= this * eps * gamma");

    // oracle
    auto *orc = app.add_subcommand("oracle", "Exact optimum by brute force");
    std::string o_file;
    OracleOptions oo;
    bool o_no_shift = false;
    orc->add_option("file", o_file, "Instance file")->required();
    orc->add_option("--budget", oo.budget, "Maximum labelings to enumerate");
    orc->add_option("--threads", oo.threads, "Worker threads");
    orc->add_flag("--no-shift-reduction", o_no_shift, "Enumerate all labelings even for Max-Lin");

    // spectrum
    auto *spec = app.add_subcommand("spectrum", "Spectrum of the label-extended matrix");
    std::string sp_file;
    bool sp_laplacian = false, sp_vectors = false, sp_graph = false;
    std::optional<double> sp_gamma;
    spec->add_option("file", sp_file, "Instance file")->required();
    spec->add_flag("--laplacian", sp_laplacian, "Use L_M = D - M");
    spec->add_flag("--graph", sp_graph, "Use the constraint-graph adjacency instead");
    spec->add_option("--gamma", sp_gamma, "Also report W at this gamma");
    spec->add_flag("--vectors", sp_vectors, "Include the W basis vectors");

    // diagnose
    auto *diag = app.add_subcommand("diagnose", "Planted-labeling diagnostics");
    std::string d_file, d_planted, d_completion, d_mode = "auto";
    SolveParams dp;
    bool d_maxlin = false, d_allow_small = false;
    std::optional<double> d_theta;
    diag->add_option("file", d_file, "Instance file")->required();
    diag->add_option("--planted", d_planted, "Planted labeling file");
    diag->add_option("--completion", d_completion, "Completion instance (with --maxlin)");
    diag->add_option("--epsilon", dp.epsilon, "Epsilon");
    diag->add_option("--gamma", dp.gamma, "Gamma");
    diag->add_option("--mode", d_mode, "adjacency, laplacian or auto")
        ->check(CLI::IsMember({"adjacency", "laplacian", "auto"}));
    diag->add_flag("--allow-small-gamma", d_allow_small, "Skip the gamma > 8 epsilon check");
    diag->add_flag("--maxlin", d_maxlin, "Perturbation reports against the completion");
    diag->add_option("--theta", d_theta, "Max-Lin theta");

    // kv-spectrum
    auto *kvs = app.add_subcommand("kv-spectrum", "Closed-form spectrum of the noisy hypercube");
    std::size_t kv_n = 8;
    double kv_eps = 0.1;
    std::optional<double> kv_gamma;
    kvs->add_option("--n", kv_n, "Hypercube dimension");
    kvs->add_option("--eps", kv_eps, "Noise rate");
    kvs->add_option("--gamma", kv_gamma, "Also report dim(W) at this gamma");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        load_numeric_config_from_env();

        if (gp->parsed()) {
            const auto family = gp_family == "maxlin" ? ConstraintFamily::maxlin : ConstraintFamily::general;
            const auto pr = planted_regular_instance(gp_n, gp_d, gp_k, family, gp_eps, run.seed);
            std::string text;
            if (family == ConstraintFamily::maxlin)
                text = serialize_maxlin(as_maxlin(pr.inst, Group::cyclic(static_cast<Label>(gp_k))));
            else
                text = serialize_instance(pr.inst);
            write_file(gp_out, text);
            const auto lab_path = gp_planted_out.empty() ? gp_out + ".planted" : gp_planted_out;
            write_file(lab_path, serialize_labeling(pr.planted));
            if (!gp_completion_out.empty())
                write_file(gp_completion_out, family == ConstraintFamily::maxlin
                                                  ? serialize_maxlin(as_maxlin(pr.completion, Group::cyclic(static_cast<Label>(gp_k))))
                                                  : serialize_instance(pr.completion));
            run.input_hash = sha256_hex(text);
            emit(run, {{"kind", "planted"},
                       {"n", gp_n},
                       {"d", gp_d},
                       {"k", gp_k},
                       {"family", gp_family},
                       {"eps", gp_eps},
                       {"realized_eps", pr.realized_eps},
                       {"lambda2", finite_or_null(pr.graph.lambda2.value_or(NAN))},
                       {"planted_value", value(pr.inst, pr.planted)},
                       {"out", gp_out},
                       {"planted_out", lab_path}});
            return 0;
        }
        if (gk->parsed()) {
            const KVSpec ks{gk_kappa, gk_eps};
            const auto inst = kv_instance(ks);
            const auto text = serialize_instance(inst);
            write_file(gk_out, text);
            run.input_hash = sha256_hex(text);
            emit(run, {{"kind", "kv"},
                       {"kappa", gk_kappa},
                       {"n_labels", ks.n()},
                       {"eps", gk_eps},
                       {"vertices", inst.n()},
                       {"edges", inst.edges().size()},
                       {"total_weight", inst.total_weight()},
                       {"out", gk_out}});
            return 0;
        }
        if (gr->parsed()) {
            const auto g = random_regular_graph(gr_n, gr_d, run.seed);
            std::vector<UGEdge> edges;
            for (const auto &e : g.edges)
                edges.push_back({e.u, e.v, e.weight, Permutation::identity(1)});
            const auto text = serialize_instance(UGInstance(g.n, 1, std::move(edges)));
            write_file(gr_out, text);
            run.input_hash = sha256_hex(text);
            emit(run, {{"kind", "regular"},
                       {"n", gr_n},
                       {"d", gr_d},
                       {"lambda2", finite_or_null(g.lambda2.value_or(NAN))},
                       {"out", gr_out}});
            return 0;
        }
        if (solve->parsed()) {
            const auto inst = load_instance(run, s_file);
            sp.net_step_override = s_net_step;
            sp.enforce_gap_precondition = !s_allow_small;
            if (s_maxlin) {
                MaxLinParams mp;
                mp.epsilon = sp.epsilon;
                mp.gamma = sp.gamma;
                mp.theta = s_theta;
                mp.uniformity_C = s_C;
                mp.theta_floor_constant = s_theta_floor;
                mp.max_dim = sp.max_dim;
                mp.net_step_override = sp.net_step_override;
                mp.yes_constant = sp.yes_constant;
                mp.threads = sp.threads;
                const auto ml = require_maxlin(inst);
                auto j = to_json(solve_maxlin(ml, mp), !run.omit_timings);
                j["maxlin"]["group"] = group_json(ml.group);
                j["params"] = {{"epsilon", mp.epsilon}, {"gamma", mp.gamma}, {"max_dim", mp.max_dim},
                               {"yes_constant", mp.yes_constant}, {"threads", mp.threads},
                               {"net_step", finite_or_null(s_net_step.value_or(NAN))}};
                emit(run, std::move(j));
                return 0;
            }
            sp.mode = pick_mode(inst, s_mode);
            const auto rep = recover_solution(inst, sp);
            auto j = to_json(rep, !run.omit_timings);
            j["params"] = {{"epsilon", sp.epsilon}, {"gamma", sp.gamma}, {"mode", mode_name(sp.mode)},
                           {"max_dim", sp.max_dim}, {"yes_constant", sp.yes_constant}, {"threads", sp.threads},
                           {"net_step", finite_or_null(s_net_step.value_or(NAN))},
                           {"gap_precondition_enforced", sp.enforce_gap_precondition}};
            emit(run, std::move(j));
            return 0;
        }
        if (orc->parsed()) {
            const auto inst = load_instance(run, o_file);
            oo.shift_reduction = !o_no_shift;
            emit(run, to_json(brute_force(inst, oo)));
            return 0;
        }
        if (spec->parsed()) {
            const auto inst = load_instance(run, sp_file);
            json j;
            SymmetricMatrix A;
            double degree;
            SpectralMode smode = SpectralMode::adjacency_high;
            if (sp_graph) {
                A = constraint_adjacency(inst);
                degree = inst.average_degree();
                j["matrix"] = "constraint_adjacency";
            } else if (sp_laplacian) {
                const auto L = build_laplacian(inst);
                A = L.matrix;
                degree = L.d_avg;
                smode = SpectralMode::laplacian_low;
                j["matrix"] = "laplacian";
            } else {
                const auto M = build_label_extended(inst);
                A = M.matrix;
                degree = M.d_avg;
                j["matrix"] = "adjacency";
            }
            const auto eig = eigendecompose(A);
            j["dim"] = A.dim();
            j["d_avg"] = degree;
            const auto reg = inst.regular_degree(numeric_config().regularity_tol);
            j["regular_degree"] = finite_or_null(reg.value_or(NAN));
            j["eigenvalues"] = eig.values;
            if (sp_gamma) {
                const double thr = smode == SpectralMode::laplacian_low ? *sp_gamma * degree
                                                                        : (1.0 - *sp_gamma) * degree;
                j["W"] = to_json(select_eigenspace(eig, A.dim(), thr, smode), sp_vectors);
                j["gamma"] = *sp_gamma;
            }
            emit(run, std::move(j));
            return 0;
        }
        if (diag->parsed()) {
            const auto inst = load_instance(run, d_file);
            dp.enforce_gap_precondition = !d_allow_small;
            if (d_maxlin) {
                if (d_completion.empty())
                    throw PreconditionError("diagnose --maxlin needs --completion");
                const auto ml = require_maxlin(inst);
                const auto comp = as_maxlin(parse_instance(read_file(d_completion)), ml.group);
                const double theta = d_theta.value_or(default_theta(dp.epsilon, dp.gamma));
                json arr = json::array();
                for (const auto &r : sin_theta_reports(ml, comp, theta, dp.gamma))
                    arr.push_back(to_json(r));
                emit(run, {{"theta", theta}, {"gamma", dp.gamma}, {"reports", arr}});
                return 0;
            }
            if (d_planted.empty())
                throw PreconditionError("diagnose needs --planted");
            const auto planted = parse_labeling(read_file(d_planted));
            dp.mode = pick_mode(inst, d_mode);
            const auto split = closeness_diagnostic(inst, planted, dp);
            auto j = to_json(split);
            j["beta_bound"] = std::sqrt(2.0 * dp.epsilon / dp.gamma);
            j["planted_value"] = value(inst, planted);
            j["mode"] = mode_name(dp.mode);
            emit(run, std::move(j));
            return 0;
        }
        if (kvs->parsed()) {
            json j = {{"n", kv_n}, {"eps", kv_eps}, {"levels", to_json(kv_spectrum(kv_n, kv_eps))}};
            if (kv_gamma) {
                j["gamma"] = *kv_gamma;
                j["dim_W"] = kv_eigenspace_dimension(kv_n, kv_eps, *kv_gamma);
            }
            emit(run, std::move(j));
            return 0;
        }
    } catch (const PreconditionError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const ParseError &e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const InvalidInstance &e) {
        std::cerr << "invalid instance: " << e.what() << "\n";
        return 1;
    } catch (const InvalidLabeling &e) {
        std::cerr << "invalid labeling: " << e.what() << "\n";
        return 1;
    } catch (const DimensionAbort &e) {
        std::cerr << "aborted: " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
