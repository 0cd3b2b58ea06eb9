// Command-line surface for the Burr III-Weibull toolkit: pointwise
// evaluation, quantiles, sampling, moment and inequality measures, fitting
// with sub-model comparison, the Monte Carlo recovery study, and curve-data
// emission. Human output prints 6 significant digits (17 behind
// --full-precision); CSV output is always emitted at full precision so that
// parsing it recovers the computed values.
//
// Exit codes: 0 success, 1 domain/convergence/data errors, 2 usage errors.
// Malformed command-line values are usage errors; values that parse but lie
// outside a function's domain are domain errors, as are defects in input
// files.

#include <array>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "burrweibull/burrweibull.hpp"
#include "json.hpp"

namespace {

using json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int g_digits = 6;

std::string fmt(double v) { return bw::format_value(v, g_digits); }

void print_kv(const std::string& key, const std::string& value) {
    std::cout << key << ' ' << value << '\n';
}

std::vector<double> parse_number_list(const std::string& text,
                                      const std::string& flag) {
    std::vector<double> vals;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        const auto b = tok.find_first_not_of(" \t");
        if (b == std::string::npos)
            throw UsageError(flag + " has an empty entry in '" + text + "'");
        tok = tok.substr(b, tok.find_last_not_of(" \t") - b + 1);
        try {
            std::size_t used = 0;
            vals.push_back(std::stod(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw UsageError(flag + ": malformed number '" + tok + "'");
        }
    }
    if (vals.empty()) throw UsageError(flag + " is empty");
    return vals;
}

bw::BwParams parse_params(const std::string& text) {
    const auto vals = parse_number_list(text, "--params");
    if (vals.size() != 4)
        throw UsageError("--params expects c,k,lambda,beta (got " +
                         std::to_string(vals.size()) + " values)");
    return bw::BwParams(vals[0], vals[1], vals[2], vals[3]);
}

std::vector<int> parse_size_list(const std::string& text,
                                 const std::string& flag) {
    std::vector<int> out;
    for (double v : parse_number_list(text, flag)) {
        if (v != static_cast<double>(static_cast<int>(v)))
            throw UsageError(flag + " entries must be integers");
        out.push_back(static_cast<int>(v));
    }
    return out;
}

bw::Dataset resolve_dataset(const std::string& embedded,
                            const std::string& file,
                            const std::string& format) {
    if (!embedded.empty()) {
        if (embedded == "kevlar") return bw::kevlar_dataset();
        throw UsageError("unknown embedded dataset '" + embedded +
                         "' (available: kevlar)");
    }
    if (file.empty()) throw UsageError("provide --data <name> or --file <path>");
    return bw::load_dataset(file, format == "csv" ? bw::DataFormat::csv
                                                  : bw::DataFormat::whitespace);
}

bw::ModelTag parse_model(const std::string& name) {
    if (name == "bw") return bw::ModelTag::BW;
    if (name == "burr3") return bw::ModelTag::BurrIII;
    return bw::ModelTag::Weibull;
}

std::vector<std::string> param_names(bw::ModelTag tag) {
    switch (tag) {
        case bw::ModelTag::BW: return {"c", "k", "lambda", "beta"};
        case bw::ModelTag::BurrIII: return {"c", "k"};
        default: return {"lambda", "beta"};
    }
}

void print_fit_human(const bw::FitResult& r) {
    print_kv("model", bw::model_name(r.model));
    print_kv("n", std::to_string(r.n));
    print_kv("converged", r.converged ? "true" : "false");
    print_kv("iterations", std::to_string(r.iterations));
    const auto names = param_names(r.model);
    for (std::size_t i = 0; i < names.size(); ++i)
        print_kv(names[i], fmt(r.params[i]));
    print_kv("log_likelihood", fmt(r.log_likelihood));
    print_kv("aic", fmt(r.aic));
    print_kv("bic", fmt(r.bic));
    print_kv("aicc", fmt(r.aicc));
    print_kv("gradient_norm", fmt(r.gradient_norm_at_solution));
}

void fit_to_json(json& j, const bw::FitResult& r, const std::string& prefix) {
    j[prefix + "model"] = bw::model_name(r.model);
    j[prefix + "n"] = r.n;
    j[prefix + "converged"] = r.converged;
    j[prefix + "iterations"] = r.iterations;
    const auto names = param_names(r.model);
    for (std::size_t i = 0; i < names.size(); ++i)
        j[prefix + names[i]] = r.params[i];
    j[prefix + "log_likelihood"] = r.log_likelihood;
    j[prefix + "aic"] = r.aic;
    j[prefix + "bic"] = r.bic;
    j[prefix + "aicc"] = r.aicc;
    j[prefix + "gradient_norm"] = r.gradient_norm_at_solution;
}

void print_comparison(const bw::ModelComparison& cmp) {
    std::vector<std::vector<std::string>> rows{
        {"model", "log_likelihood", "aic", "bic", "aicc", "estimates"}};
    for (const auto& fit : cmp.fits) {
        std::string est;
        const auto names = param_names(fit.model);
        for (std::size_t i = 0; i < names.size(); ++i) {
            if (i) est += ' ';
            est += names[i] + '=' + fmt(fit.params[i]);
        }
        rows.push_back({bw::model_name(fit.model), fmt(fit.log_likelihood),
                        fmt(fit.aic), fmt(fit.bic), fmt(fit.aicc), est});
    }
    std::array<std::size_t, 5> width{};
    for (const auto& row : rows)
        for (std::size_t c = 0; c < 5; ++c)
            width[c] = std::max(width[c], row[c].size());
    for (const auto& row : rows) {
        std::string line = row[0] + std::string(width[0] - row[0].size(), ' ');
        for (std::size_t c = 1; c < 5; ++c)
            line += "  " + std::string(width[c] - row[c].size(), ' ') + row[c];
        std::cout << line << "  " << row[5] << '\n';
    }
    for (const auto& [model, message] : cmp.failures)
        std::cout << "fit failed for " << model << ": " << message << '\n';
}

void print_sim_json(const bw::SimReport& rep) {
    static const char* suffix[4] = {"c", "k", "lambda", "beta"};
    json j;
    j["replicates"] = rep.replicates;
    j["master_seed"] = rep.master_seed;
    for (int p = 0; p < 4; ++p) j[std::string("truth_") + suffix[p]] = rep.truth[p];
    for (const auto& cell : rep.cells) {
        const std::string pre = "n" + std::to_string(cell.n) + "_";
        for (int p = 0; p < 4; ++p) j[pre + "mean_" + suffix[p]] = cell.mean_estimate[p];
        for (int p = 0; p < 4; ++p) j[pre + "bias_" + suffix[p]] = cell.bias[p];
        for (int p = 0; p < 4; ++p) j[pre + "mse_" + suffix[p]] = cell.mse[p];
        for (int p = 0; p < 4; ++p) j[pre + "variance_" + suffix[p]] = cell.variance[p];
        j[pre + "converged"] = cell.converged_count;
        j[pre + "failures"] = cell.failure_count;
    }
    std::cout << j.dump(2) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Burr III-Weibull lifetime distribution toolkit"};
    app.require_subcommand(1);
    bool full_precision = false;
    app.add_flag("--full-precision", full_precision,
                 "print 17 significant digits instead of 6");

    std::string eval_params, eval_x;
    auto* cmd_eval = app.add_subcommand(
        "eval", "evaluate pdf, cdf, survival, and hazard at a point");
    cmd_eval->add_option("--params", eval_params, "c,k,lambda,beta")->required();
    cmd_eval->add_option("--x", eval_x, "abscissa")->required();

    std::string q_params;
    double q_u = 0.0;
    auto* cmd_quantile =
        app.add_subcommand("quantile", "invert the cdf at a probability");
    cmd_quantile->add_option("--params", q_params, "c,k,lambda,beta")->required();
    cmd_quantile->add_option("--u", q_u, "probability in (0,1)")->required();

    std::string s_params;
    long long s_n = 0;
    std::uint64_t s_seed = 0;
    auto* cmd_sample =
        app.add_subcommand("sample", "draw reproducible random variates");
    cmd_sample->add_option("--params", s_params, "c,k,lambda,beta")->required();
    cmd_sample->add_option("--n", s_n, "number of draws")->required();
    cmd_sample->add_option("--seed", s_seed, "random seed (default 0)");

    std::string m_params;
    auto* cmd_moments = app.add_subcommand(
        "moments", "raw moments 1..6 with SD, CV, skewness, kurtosis");
    cmd_moments->add_option("--params", m_params, "c,k,lambda,beta")->required();

    std::string me_params;
    double me_prob = 0.5, me_v = 2.0;
    int me_i = 0, me_m = 0;
    double me_x = 0.0;
    auto* cmd_measures = app.add_subcommand(
        "measures",
        "mean deviations, Lorenz/Bonferroni ordinates, entropies, and the "
        "order-statistic density");
    cmd_measures->add_option("--params", me_params, "c,k,lambda,beta")->required();
    cmd_measures->add_option("--prob", me_prob,
                             "Lorenz/Bonferroni ordinate (default 0.5)");
    cmd_measures->add_option("--v", me_v, "Renyi entropy order (default 2)");
    auto* opt_i = cmd_measures->add_option("--order-i", me_i,
                                           "order statistic rank i");
    auto* opt_m = cmd_measures->add_option("--order-m", me_m, "sample size m");
    auto* opt_x = cmd_measures->add_option("--order-x", me_x,
                                           "order statistic abscissa");

    std::string en_params;
    double en_v = 2.0;
    auto* cmd_entropy =
        app.add_subcommand("entropy", "Shannon and Renyi entropies");
    cmd_entropy->add_option("--params", en_params, "c,k,lambda,beta")->required();
    cmd_entropy->add_option("--v", en_v, "Renyi entropy order (default 2)");

    std::string f_data, f_file, f_format = "whitespace", f_model = "bw";
    int f_starts = 8;
    bool f_json = false;
    auto* cmd_fit =
        app.add_subcommand("fit", "maximum-likelihood fit of one model");
    auto* f_data_opt =
        cmd_fit->add_option("--data", f_data, "embedded dataset name (kevlar)");
    cmd_fit->add_option("--file", f_file, "dataset file path")
        ->excludes(f_data_opt);
    cmd_fit->add_option("--format", f_format, "file layout (default whitespace)")
        ->check(CLI::IsMember({"csv", "whitespace"}));
    cmd_fit->add_option("--model", f_model, "bw, burr3, or weibull")
        ->check(CLI::IsMember({"bw", "burr3", "weibull"}));
    cmd_fit->add_option("--multistarts", f_starts,
                        "number of starting points (default 8)");
    cmd_fit->add_flag("--json", f_json, "emit a flat JSON document");

    std::string c_data, c_file, c_format = "whitespace";
    int c_starts = 8;
    bool c_json = false;
    auto* cmd_compare = app.add_subcommand(
        "compare", "fit BW, Burr III, and Weibull; rank by AIC");
    auto* c_data_opt = cmd_compare->add_option("--data", c_data,
                                               "embedded dataset name (kevlar)");
    cmd_compare->add_option("--file", c_file, "dataset file path")
        ->excludes(c_data_opt);
    cmd_compare
        ->add_option("--format", c_format, "file layout (default whitespace)")
        ->check(CLI::IsMember({"csv", "whitespace"}));
    cmd_compare->add_option("--multistarts", c_starts,
                            "number of starting points (default 8)");
    cmd_compare->add_flag("--json", c_json, "emit a flat JSON document");

    std::string sim_config, sim_truth, sim_sizes;
    int sim_replicates = 0, sim_threads = 1;
    std::uint64_t sim_seed = 0;
    bool sim_json = false;
    auto* cmd_simulate = app.add_subcommand(
        "simulate", "Monte Carlo recovery study (CSV report on stdout)");
    auto* sim_config_opt = cmd_simulate->add_option(
        "--config", sim_config,
        "config file (keys: true_params, sample_sizes, replicates, seed)");
    auto* sim_truth_opt = cmd_simulate->add_option(
        "--truth", sim_truth, "generating c,k,lambda,beta (overrides config)");
    auto* sim_sizes_opt = cmd_simulate->add_option(
        "--sizes", sim_sizes, "sample sizes, comma-separated (overrides config)");
    auto* sim_rep_opt = cmd_simulate->add_option(
        "--replicates", sim_replicates, "replicates per cell (overrides config)");
    auto* sim_seed_opt = cmd_simulate->add_option(
        "--seed", sim_seed, "master seed (overrides config)");
    cmd_simulate->add_option("--threads", sim_threads,
                             "worker threads (does not affect output)");
    cmd_simulate->add_flag("--json", sim_json, "emit a flat JSON document");

    std::string cu_params, cu_functions = "pdf,cdf,survival,hazard";
    double cu_lo = 0.0, cu_hi = 0.0;
    int cu_n = 201;
    auto* cmd_curves = app.add_subcommand(
        "curves", "tabulate distribution curves on a uniform grid as CSV");
    cmd_curves->add_option("--params", cu_params, "c,k,lambda,beta")->required();
    cmd_curves->add_option(
        "--functions", cu_functions,
        "comma-separated subset of pdf,cdf,survival,hazard,lorenz,bonferroni");
    cmd_curves->add_option("--lo", cu_lo, "grid start (>= 0)")->required();
    cmd_curves->add_option("--hi", cu_hi, "grid end")->required();
    cmd_curves->add_option("--n", cu_n, "grid points (default 201)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n\n" << app.help() << std::flush;
        return 2;
    }
    g_digits = full_precision ? 17 : 6;

    try {
        if (cmd_eval->parsed()) {
            const auto p = parse_params(eval_params);
            double x = 0.0;
            try {
                std::size_t used = 0;
                x = std::stod(eval_x, &used);
                if (used != eval_x.size()) throw std::invalid_argument(eval_x);
            } catch (const std::exception&) {
                throw UsageError("--x: malformed number '" + eval_x + "'");
            }
            const double fx = bw::pdf(p, x);
            const double Fx = bw::cdf(p, x);
            const double Sx = bw::survival(p, x);
            const double hx = bw::hazard(p, x);
            print_kv("x", fmt(x));
            print_kv("pdf", fmt(fx));
            print_kv("cdf", fmt(Fx));
            print_kv("survival", fmt(Sx));
            print_kv("hazard", fmt(hx));
        } else if (cmd_quantile->parsed()) {
            std::cout << fmt(bw::quantile(parse_params(q_params), q_u)) << '\n';
        } else if (cmd_sample->parsed()) {
            if (s_n < 1) throw bw::DomainError("sample size must be >= 1");
            const auto draws =
                bw::sample(parse_params(s_params), static_cast<std::size_t>(s_n),
                           bw::SeededStream{s_seed, 0});
            for (double v : draws) std::cout << fmt(v) << '\n';
        } else if (cmd_moments->parsed()) {
            const auto s = bw::moment_summary(parse_params(m_params));
            for (int r = 0; r < 6; ++r)
                print_kv("mu" + std::to_string(r + 1), fmt(s.raw_moments[r]));
            print_kv("sd", fmt(s.sd));
            print_kv("cv", fmt(s.cv));
            print_kv("skewness", fmt(s.skewness));
            print_kv("kurtosis", fmt(s.kurtosis));
        } else if (cmd_measures->parsed()) {
            const int order_flags = (opt_i->count() ? 1 : 0) +
                                    (opt_m->count() ? 1 : 0) +
                                    (opt_x->count() ? 1 : 0);
            if (order_flags != 0 && order_flags != 3)
                throw UsageError(
                    "--order-i, --order-m, and --order-x must be given together");
            const auto p = parse_params(me_params);
            print_kv("mean_deviation_mean", fmt(bw::mean_deviation_about_mean(p)));
            print_kv("mean_deviation_median",
                     fmt(bw::mean_deviation_about_median(p)));
            print_kv("prob", fmt(me_prob));
            print_kv("lorenz", fmt(bw::lorenz(p, me_prob)));
            print_kv("bonferroni", fmt(bw::bonferroni(p, me_prob)));
            print_kv("shannon_entropy", fmt(bw::shannon_entropy(p)));
            print_kv("renyi_order", fmt(me_v));
            print_kv("renyi_entropy", fmt(bw::renyi_entropy(p, me_v)));
            if (order_flags == 3)
                print_kv("order_statistic_pdf",
                         fmt(bw::order_statistic_pdf(p, me_i, me_m, me_x)));
        } else if (cmd_entropy->parsed()) {
            const auto p = parse_params(en_params);
            print_kv("shannon_entropy", fmt(bw::shannon_entropy(p)));
            print_kv("renyi_order", fmt(en_v));
            print_kv("renyi_entropy", fmt(bw::renyi_entropy(p, en_v)));
        } else if (cmd_fit->parsed()) {
            const auto data = resolve_dataset(f_data, f_file, f_format);
            bw::FitOptions opts;
            opts.multistart_count = f_starts;
            const auto r = bw::fit_mle(data, parse_model(f_model), opts);
            if (f_json) {
                json j;
                fit_to_json(j, r, "");
                std::cout << j.dump(2) << '\n';
            } else {
                print_fit_human(r);
            }
        } else if (cmd_compare->parsed()) {
            const auto data = resolve_dataset(c_data, c_file, c_format);
            bw::FitOptions opts;
            opts.multistart_count = c_starts;
            const auto cmp = bw::compare_models(data, opts);
            if (cmp.fits.empty()) {
                for (const auto& [model, message] : cmp.failures)
                    std::cerr << "fit failed for " << model << ": " << message
                              << '\n';
                throw bw::ConvergenceError("no model could be fitted");
            }
            if (c_json) {
                json j;
                std::string ranking;
                for (const auto& fit : cmp.fits) {
                    if (!ranking.empty()) ranking += ',';
                    ranking += bw::model_name(fit.model);
                }
                j["ranking"] = ranking;
                for (const auto& fit : cmp.fits)
                    fit_to_json(j, fit,
                                std::string(bw::model_name(fit.model)) + "_");
                for (const auto& [model, message] : cmp.failures)
                    j[model + "_error"] = message;
                std::cout << j.dump(2) << '\n';
            } else {
                print_comparison(cmp);
            }
        } else if (cmd_simulate->parsed()) {
            std::optional<bw::SimConfig> cfg;
            if (sim_config_opt->count()) cfg = bw::parse_sim_config(sim_config);
            if (sim_truth_opt->count()) {
                const auto t = parse_number_list(sim_truth, "--truth");
                if (t.size() != 4)
                    throw UsageError("--truth expects c,k,lambda,beta");
                const bw::BwParams truth(t[0], t[1], t[2], t[3]);
                if (cfg)
                    cfg->true_params = truth;
                else
                    cfg.emplace(truth);
            }
            if (!cfg) throw UsageError("simulate requires --config or --truth");
            if (sim_sizes_opt->count())
                cfg->sample_sizes = parse_size_list(sim_sizes, "--sizes");
            if (sim_rep_opt->count()) cfg->replicates = sim_replicates;
            if (sim_seed_opt->count()) cfg->master_seed = sim_seed;
            cfg->threads = sim_threads;
            const auto rep = bw::run_simulation(*cfg);
            if (sim_json)
                print_sim_json(rep);
            else
                std::cout << bw::to_csv(bw::sim_report_to_table(rep), 17);
        } else if (cmd_curves->parsed()) {
            std::vector<bw::CurveKind> kinds;
            for (const auto& name :
                 [&] {
                     std::vector<std::string> names;
                     std::stringstream ss(cu_functions);
                     std::string tok;
                     while (std::getline(ss, tok, ',')) names.push_back(tok);
                     return names;
                 }()) {
                try {
                    kinds.push_back(bw::curve_kind_from_name(name));
                } catch (const bw::ParseError& e) {
                    throw UsageError(e.what());
                }
            }
            const auto t =
                bw::emit_curves(parse_params(cu_params), kinds, cu_lo, cu_hi, cu_n);
            std::cout << bw::to_csv(t, 17);
        }
        return 0;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n\n"
                  << app.help() << std::flush;
        return 2;
    } catch (const bw::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
