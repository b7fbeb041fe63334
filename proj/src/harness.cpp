#include "gslearn/harness.hpp"

#include "gslearn/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace gslearn {

PrecisionFamily precision_family(int m) {
    if (m < 1)
        throw InvalidRange("harness", "precision_family", "m must be >= 1");
    PrecisionFamily f;
    f.H = Eigen::MatrixXi::Zero(m, m);
    for (int i = 0; i < m; ++i) {
        f.H(i, i) = (i == 0) ? 1 : 2;
        if (i + 1 < m) {
            f.H(i, i + 1) = -1;
            f.H(i + 1, i) = -1;
        }
    }
    f.H_inv = Eigen::MatrixXi(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) f.H_inv(i, j) = m - std::max(i, j);
    double nh = 0.0, ni = 0.0;
    for (int i = 0; i < m; ++i) {
        nh = std::max(nh, f.H.row(i).cwiseAbs().sum() + 0.0);
        ni = std::max(ni, f.H_inv.row(i).cwiseAbs().sum() + 0.0);
    }
    f.condition_estimate = nh * ni;
    return f;
}

ExperimentConfig ExperimentConfig::from_json(const Json& j) {
    ExperimentConfig c;
    c.task = j.at("task").get<std::string>();
    c.m = j.value("m", 2);
    if (j.contains("graph"))
        c.graph = graph_from_json(j.at("graph"));
    else
        c.graph = InteractionGraph::path(c.m);
    if (j.contains("bounds")) {
        const Json& b = j.at("bounds");
        c.bounds.s = b.value("s", 1.5);
        c.bounds.beta_max = b.value("beta_max", 1.0);
        c.bounds.beta_min = b.value("beta_min", 0.3);
        c.bounds.t_max = b.value("t_max", 0.0);
        c.bounds.delta_deg = b.value("delta_deg", 2);
        c.bounds.kappa = b.value("kappa", 0.0);
    }
    c.eps = j.value("eps", 0.1);
    c.delta = j.value("delta", 0.1);
    c.kappa = j.value("kappa", 0.1);
    c.N = j.value("N", 10000LL);
    if (j.contains("seeds"))
        c.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    c.out_dir = j.value("out", std::string("."));
    c.threads = j.value("threads", 1);
    c.override_l = j.value("override_l", -1);
    c.override_zeta = j.value("override_zeta", -1.0);
    c.override_eta = j.value("override_eta", -1.0);
    if (c.seeds.empty())
        throw InvalidRange("harness", "from_json", "seeds must be nonempty");
    return c;
}

Json ExperimentConfig::to_json() const {
    Json j;
    j["task"] = task;
    j["m"] = m;
    j["graph"] = graph_to_json(graph);
    j["bounds"] = {{"s", bounds.s},
                   {"beta_max", bounds.beta_max},
                   {"beta_min", bounds.beta_min},
                   {"t_max", bounds.t_max},
                   {"delta_deg", bounds.delta_deg},
                   {"kappa", bounds.kappa}};
    j["eps"] = eps;
    j["delta"] = delta;
    j["kappa"] = kappa;
    j["N"] = N;
    j["seeds"] = seeds;
    j["out"] = out_dir;
    j["threads"] = threads;
    j["override_l"] = override_l;
    j["override_zeta"] = override_zeta;
    j["override_eta"] = override_eta;
    return j;
}

namespace {

HamLearnParams resolve_params(const ExperimentConfig& c, bool graph_task) {
    HamLearnParams p = graph_task
                           ? select_params_graph(c.kappa, c.m, c.bounds)
                           : select_params_bounded_degree(c.eps, c.m,
                                                          c.bounds);
    if (c.override_l > 0 || c.override_zeta >= 0.0 || c.override_eta >= 0.0) {
        p.from_override = true;
        if (c.override_l > 0) p.l = c.override_l;
        if (c.override_zeta >= 0.0) p.zeta = c.override_zeta;
        if (c.override_eta >= 0.0) p.eta = c.override_eta;
    }
    return p;
}

std::string seed_path(const ExperimentConfig& c, std::uint64_t seed,
                      const char* suffix) {
    return c.out_dir + "/" + c.task + "_seed" + std::to_string(seed) + suffix;
}

int dispatch(const ExperimentConfig& c) {
    std::filesystem::create_directories(c.out_dir);
    std::ofstream csv(c.out_dir + "/" + c.task + "_summary.csv");
    bool all_ok = true;

    if (c.task == "sample") {
        csv << "seed,N,mean_abs\n";
        for (auto seed : c.seeds) {
            auto inst = random_state(c.m, c.graph, c.bounds, seed);
            SampleBatch batch = heterodyne_sample(inst.state, c.N, seed);
            save_batch_csv(batch, seed_path(c, seed, ".csv"));
            save_batch_binary(batch, seed_path(c, seed, ".bin"));
            Json rep;
            rep["seed"] = seed;
            rep["N"] = batch.N;
            rep["state"] = state_to_json(inst.state);
            write_json_file(rep, seed_path(c, seed, ".json"));
            csv << seed << ',' << batch.N << ','
                << batch.data.cwiseAbs().mean() << '\n';
        }
    } else if (c.task == "estimate") {
        csv << "seed,N,max_entry_error\n";
        for (auto seed : c.seeds) {
            auto inst = random_state(c.m, c.graph, c.bounds, seed);
            SampleBatch batch = heterodyne_sample(inst.state, c.N, seed);
            EstimationResult est = empirical_estimates(batch);
            double err = max_abs(Mat(est.V_hat_raw - inst.state.V));
            Json rep;
            rep["seed"] = seed;
            rep["N"] = batch.N;
            rep["max_entry_error"] = err;
            rep["V_hat"] = matrix_to_json(est.V_hat_raw);
            write_json_file(rep, seed_path(c, seed, ".json"));
            csv << seed << ',' << batch.N << ',' << err << '\n';
        }
    } else if (c.task == "learn-hamiltonian") {
        HamLearnParams p = resolve_params(c, false);
        csv << "seed,err_h,eps\n";
        for (auto seed : c.seeds) {
            auto inst = random_state(c.m, c.graph, c.bounds, seed);
            LearnReport rep = learn_hamiltonian_noise(
                inst.state.V, inst.state.t, c.graph, p, seed, &inst);
            write_json_file(report_to_json(rep), seed_path(c, seed, ".json"));
            csv << seed << ',' << rep.err_h << ',' << c.eps << '\n';
            if (rep.err_h > c.eps) all_ok = false;
        }
    } else if (c.task == "learn-graph") {
        HamLearnParams p = resolve_params(c, true);
        csv << "seed,exact_recovery,loop_count\n";
        for (auto seed : c.seeds) {
            auto inst = random_state(c.m, c.graph, c.bounds, seed);
            Mat V_hat = inject_symmetric_noise(inst.state.V, p.zeta, seed);
            int xi = l_neighborhoods(c.graph, p.l).xi();
            LearnReport rep = learn_graph(V_hat, xi, p.eta, c.kappa);
            rep.params = p;
            std::set<std::pair<int, int>> found(rep.edges.begin(),
                                                rep.edges.end());
            bool exact = found == c.graph.edges;
            write_json_file(report_to_json(rep), seed_path(c, seed, ".json"));
            csv << seed << ',' << exact << ',' << rep.search_loop_count
                << '\n';
            if (!exact) all_ok = false;
        }
    } else if (c.task == "learn-trace") {
        csv << "seed,N,trace_bound,certified\n";
        for (auto seed : c.seeds) {
            auto inst = random_state(c.m, c.graph, c.bounds, seed);
            SampleBatch batch = heterodyne_sample(inst.state, c.N, seed);
            LearnReport rep =
                learn_trace_distance(batch, c.eps, c.delta, c.bounds);
            write_json_file(report_to_json(rep), seed_path(c, seed, ".json"));
            csv << seed << ',' << batch.N << ',' << rep.trace_bound_value
                << ',' << rep.certificate_ok << '\n';
        }
    } else if (c.task == "verify-bounds") {
        std::ofstream jsonl(c.out_dir + "/certificates.jsonl");
        csv << "seed,bound,hypothesis_ok,margin\n";
        for (auto seed : c.seeds) {
            auto inst = random_state(c.m, c.graph, c.bounds, seed);
            Mat V1 = inst.state.V;
            Mat V2 = inject_symmetric_noise(V1, 1e-4, seed ^ 0xabc);
            auto& form = inst.form;
            for (const BoundCertificate& cert :
                 {bound_h_from_v(V1, V2, form), bound_h_from_k(V1, V2, form),
                  bound_v_from_h(inst.hamiltonian.H,
                                 inject_symmetric_noise(inst.hamiltonian.H,
                                                        1e-5, seed ^ 0xdef),
                                 form)}) {
                jsonl << certificate_to_json(cert).dump() << '\n';
                csv << seed << ',' << cert.bound_name << ','
                    << cert.hypothesis_ok << ',' << cert.margin() << '\n';
                if (cert.hypothesis_ok &&
                    cert.margin() < -1e-10 * (1.0 + cert.rhs))
                    all_ok = false;
            }
        }
    } else if (c.task == "benchmark") {
        csv << "N,median_max_entry_error\n";
        for (long long n = c.N; n <= 16 * c.N; n *= 4) {
            std::vector<double> errs;
            for (auto seed : c.seeds) {
                auto inst = random_state(c.m, c.graph, c.bounds, seed);
                SampleBatch batch = heterodyne_sample(inst.state, n, seed);
                EstimationResult est = empirical_estimates(batch);
                errs.push_back(max_abs(Mat(est.V_hat_raw - inst.state.V)));
            }
            std::sort(errs.begin(), errs.end());
            csv << n << ',' << errs[errs.size() / 2] << '\n';
        }
    } else {
        throw InvalidRange("harness", "run_experiment",
                           "unknown task " + c.task);
    }
    return all_ok ? 0 : 1;
}

} // namespace

int run_experiment(const ExperimentConfig& config) {
    try {
        if (config.seeds.empty() || config.m < 1)
            throw InvalidRange("harness", "run_experiment", "invalid config");
        return dispatch(config);
    } catch (const InvalidRange& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        std::cerr << "pipeline error [" << e.module_name() << "::"
                  << e.op_name() << "]: " << e.what() << '\n';
        return 1;
    }
}

} // namespace gslearn
