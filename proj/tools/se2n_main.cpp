// se2n command-line tool: synth, extract, train, predict, eval, check.
// Exit codes: 0 success, 1 runtime failure, 2 usage error.

#include "se2n/classify.hpp"
#include "se2n/io.hpp"
#include "se2n/pipeline.hpp"
#include "se2n/synth.hpp"
#include "se2n/version.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace se2n;

namespace {

struct GridFlags {
    int N = 6;
    int window = 16;
    double step = 1.0;
    int pad = 2;
    std::string encoding = "re_im";
    bool no_center = false;
    std::string kind = "RBS";

    void add(CLI::App* app) {
        app->add_option("--kind", kind, "PS, BS, RPS, RBS, RPS+BS, CYCLIC_BS, HU, ZERNIKE, AFMT")->capture_default_str();
        app->add_option("--N", N, "rotation order")->check(CLI::Range(1, 64))->capture_default_str();
        app->add_option("--window", window, "frequency window side in padded bins")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        app->add_option("--step", step, "hexagonal lattice spacing in bins")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        app->add_option("--pad", pad, "zero-padding factor")->check(CLI::Range(1, 8))->capture_default_str();
        app->add_option("--encoding", encoding, "re_im or modulus")
            ->check(CLI::IsMember({"re_im", "modulus"}))
            ->capture_default_str();
        app->add_flag("--no-center", no_center, "skip spectral centering on the barycenter");
    }
    GridConfig grid() const { return GridConfig{N, window, step, pad}; }
    DescriptorConfig descriptor() const {
        DescriptorConfig c;
        c.grid = grid();
        c.encoding = parse_encoding(encoding);
        c.center = !no_center;
        c.kinds = {parse_kind(kind)};
        return c;
    }
};

// key=value lines; '#' starts a comment. Values apply to options not given
// on the command line.
void apply_config(CLI::App* app, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("--config", "cannot open " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r"), b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        if (trim(line).empty()) continue;
        if (eq == std::string::npos)
            throw CLI::ValidationError("--config", path + ":" + std::to_string(lineno) + ": expected key=value");
        const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
        CLI::Option* opt = nullptr;
        try {
            opt = app->get_option("--" + key);
        } catch (const CLI::OptionNotFound&) {
            throw CLI::ValidationError("--config", path + ": unknown key '" + key + "'");
        }
        if (opt->count() > 0 || key == "config") continue;
        opt->add_result(value);
        opt->run_callback();
    }
}

std::string header_line(CLI::App* sub, const std::string& manifest_hash) {
    std::string flags = sub->config_to_str(true, false);
    for (char& c : flags)
        if (c == '\n') c = ';';
    while (!flags.empty() && flags.back() == ';') flags.pop_back();
    return std::string(" se2n ") + kVersion + " cmd=" + sub->get_name() + " flags=" + flags +
           " manifest_hash=" + (manifest_hash.empty() ? "none" : manifest_hash);
}

// Writes through a temporary file so failures never leave partial output.
template <typename Writer>
void write_atomic(const fs::path& out, Writer&& writer) {
    const fs::path tmp = out.string() + ".part";
    try {
        writer(tmp);
        fs::rename(tmp, out);
    } catch (...) {
        std::error_code ec;
        fs::remove(tmp, ec);
        throw;
    }
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != item.size() || !(v > 0)) throw CLI::ValidationError("--sigma-grid", "bad value '" + item + "'");
        out.push_back(v);
    }
    return out;
}

struct EvalFlags {
    double ratio = 0.75;
    int trials = 5;
    std::uint64_t seed = 1;
    double sigma = 0;
    std::string sigma_grid;
    double C = 10.0;

    void add(CLI::App* app, bool split) {
        if (split) {
            app->add_option("--ratio", ratio, "training fraction")->check(CLI::Range(0.0, 1.0))->capture_default_str();
            app->add_option("--trials", trials, "random splits")->check(CLI::PositiveNumber)->capture_default_str();
        }
        app->add_option("--seed", seed, "split seed")->capture_default_str();
        app->add_option("--sigma", sigma, "Gaussian kernel width; 0 searches --sigma-grid")
            ->check(CLI::NonNegativeNumber)
            ->capture_default_str();
        app->add_option("--sigma-grid", sigma_grid, "comma-separated widths (default sqrt(dim)*2^-3..2^2)");
        app->add_option("--C", C, "soft-margin penalty")->check(CLI::PositiveNumber)->capture_default_str();
    }
    EvalOptions options() const {
        EvalOptions o;
        o.split.train_ratio = ratio;
        o.split.trials = trials;
        o.split.seed = seed;
        if (sigma > 0) o.sigma = sigma;
        o.sigma_grid = parse_list(sigma_grid);
        o.C = C;
        return o;
    }
};

Eigen::MatrixXd feature_matrix(const FeatureTable& t) {
    if (t.rows.empty()) throw std::runtime_error("feature file has no rows");
    Eigen::MatrixXd X(static_cast<Eigen::Index>(t.rows.size()), t.rows.front().values.size());
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        if (t.rows[i].values.size() != X.cols()) throw std::runtime_error("feature rows differ in length");
        X.row(Eigen::Index(i)) = t.rows[i].values.transpose();
    }
    return X;
}

void print_summary(const EvalSummary& s) {
    for (std::size_t t = 0; t < s.accuracies.size(); ++t)
        std::printf("trial %zu: accuracy %.2f%% (sigma %.6g)\n", t + 1, s.accuracies[t], s.sigmas[t]);
    std::printf("mean accuracy: %.2f%%\n", s.mean);
}

void write_eval_report(const fs::path& path, const EvalSummary& s, const std::string& header) {
    write_atomic(path, [&](const fs::path& tmp) {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + path.string());
        out << '#' << header << "\ntrial,sigma,accuracy\n";
        char buf[128];
        for (std::size_t t = 0; t < s.accuracies.size(); ++t) {
            std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g\n", t + 1, s.sigmas[t], s.accuracies[t]);
            out << buf;
        }
        std::snprintf(buf, sizeof buf, "mean,,%.17g\n", s.mean);
        out << buf;
        out << "\ntrue_class,predicted_class,count\n";
        for (std::size_t i = 0; i < s.classes.size(); ++i)
            for (std::size_t j = 0; j < s.classes.size(); ++j)
                if (int n = s.confusion(int(i), int(j)); n > 0)
                    out << s.classes[i] << ',' << s.classes[j] << ',' << n << '\n';
        if (!out) throw std::runtime_error("failed writing " + path.string());
    });
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Roto-translation invariant Fourier descriptors over SE(2,N)"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    std::string config_path;
    auto add_config = [&](CLI::App* sub) { sub->add_option("--config", config_path, "key=value file")->check(CLI::ExistingFile); };

    // synth
    int classes = 10, poses = 72, size = 128;
    std::uint64_t synth_seed = 1;
    std::string out;
    auto* synth = app.add_subcommand("synth", "render a synthetic shape dataset");
    synth->add_option("--classes", classes)->check(CLI::PositiveNumber)->capture_default_str();
    synth->add_option("--poses", poses)->check(CLI::PositiveNumber)->capture_default_str();
    synth->add_option("--size", size)->check(CLI::Range(32, 4096))->capture_default_str();
    synth->add_option("--seed", synth_seed)->capture_default_str();
    synth->add_option("--out", out, "output directory")->required();
    add_config(synth);

    // extract
    std::string in_dir;
    GridFlags gflags;
    auto* extract = app.add_subcommand("extract", "compute descriptors for a dataset directory");
    extract->add_option("--in", in_dir, "dataset directory")->required()->check(CLI::ExistingDirectory);
    gflags.add(extract);
    extract->add_option("--out", out, "feature CSV")->required();
    add_config(extract);

    // train
    std::string features, model_path;
    EvalFlags eflags;
    auto* train = app.add_subcommand("train", "fit a one-against-one Gaussian SVM");
    train->add_option("--features", features)->required()->check(CLI::ExistingFile);
    eflags.add(train, false);
    train->add_option("--model", model_path, "model output")->required();
    add_config(train);

    // predict
    auto* predict_cmd = app.add_subcommand("predict", "classify feature rows with a saved model");
    predict_cmd->add_option("--features", features)->required()->check(CLI::ExistingFile);
    predict_cmd->add_option("--model", model_path)->required()->check(CLI::ExistingFile);
    predict_cmd->add_option("--out", out, "predictions CSV")->required();
    add_config(predict_cmd);

    // eval
    double noise_sd = 0;
    bool clean_noisy = false;
    int views = 15;
    auto* eval = app.add_subcommand("eval", "repeated split evaluation");
    auto* eval_features = eval->add_option("--features", features, "precomputed features")->check(CLI::ExistingFile);
    auto* eval_in = eval->add_option("--in", in_dir, "dataset directory (needed for noise)")->check(CLI::ExistingDirectory);
    eval_features->excludes(eval_in);
    gflags.add(eval);
    eflags.add(eval, true);
    eval->add_option("--noise-sd", noise_sd, "test noise sd on the 0-255 scale")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    eval->add_flag("--train-clean-test-noisy", clean_noisy, "train on all clean images, test on noisy views");
    eval->add_option("--views-per-class", views, "noisy test views per class and trial")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    eval->add_option("--out", out, "report CSV");
    add_config(eval);

    // check
    std::string suite;
    std::uint64_t check_seed = 1;
    auto* check = app.add_subcommand("check", "run a property suite");
    check->add_option("--suite", suite)->required()->check(CLI::IsMember({"identities", "invariance", "oracle", "genericity"}));
    check->add_option("--seed", check_seed)->capture_default_str();
    check->add_option("--out", out, "residual CSV (default stdout)");
    add_config(check);

    try {
        app.parse(argc, argv);
        CLI::App* sub = app.get_subcommands().front();
        if (!config_path.empty()) apply_config(sub, config_path);
        if (sub == eval) {
            if (features.empty() && in_dir.empty()) throw CLI::RequiredError("--features or --in");
            if (!features.empty() && (noise_sd > 0 || clean_noisy))
                throw CLI::ValidationError("--noise-sd", "noisy evaluation needs --in");
        }
        if (sub == train || sub == eval) (void)eflags.options();  // validates --sigma-grid
        if (sub == extract || (sub == eval && !in_dir.empty())) (void)gflags.descriptor();
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }

    CLI::App* sub = app.get_subcommands().front();
    try {
        if (sub == synth) {
            const auto samples = synth_dataset(classes, poses, size, synth_seed);
            write_dataset(out, samples, header_line(sub, ""));
            std::printf("wrote %zu images to %s\n", samples.size(), out.c_str());
            return 0;
        }

        if (sub == extract) {
            const DescriptorConfig cfg = gflags.descriptor();
            const Kind kind = cfg.kinds.front();
            const HexGrid grid = build_hex_grid(cfg.grid);
            const fs::path out_path(out);
            fs::path grid_path = out_path;
            grid_path.replace_extension(".grid.csv");
            write_atomic(out_path, [&](const fs::path& tmp) {
                const DatasetLoad data = load_dataset(in_dir);
                for (const auto& w : data.warnings) std::cerr << "warning: " << w << '\n';
                if (data.samples.empty()) throw std::runtime_error("no images in " + in_dir);
                FeatureTable table;
                table.rows = extract_batch(data.samples, grid, cfg, kind);
                table.comment = header_line(sub, is_spectral(kind) ? grid.manifest_hash : "");
                write_features(tmp, table);
                std::printf("%zu rows, %td features (%s)\n", table.rows.size(), table.rows.front().values.size(),
                            to_string(kind).c_str());
            });
            if (is_spectral(kind)) {
                write_atomic(grid_path, [&](const fs::path& tmp) {
                    std::ofstream g(tmp, std::ios::binary);
                    g << '#' << header_line(sub, grid.manifest_hash) << '\n' << grid.manifest_csv;
                    if (!g) throw std::runtime_error("cannot write " + grid_path.string());
                });
            }
            return 0;
        }

        if (sub == train) {
            const FeatureTable table = read_features(features);
            const Dataset data = to_dataset(table.rows);
            const EvalOptions opts = eflags.options();
            const double sigma = choose_sigma(data, opts, 0);
            SvmParams p;
            p.sigma = sigma;
            p.C = opts.C;
            const SvmModel model = train_svm(data, p);
            const std::string hash = table.rows.empty() ? "" : table.rows.front().manifest_hash;
            write_atomic(model_path, [&](const fs::path& tmp) { save_model(model, tmp, header_line(sub, hash)); });
            std::printf("trained on %zu rows, %zu classes, sigma %.6g\n", data.size(), model.classes.size(), sigma);
            return 0;
        }

        if (sub == predict_cmd) {
            const SvmModel model = load_model(model_path);
            const FeatureTable table = read_features(features);
            const Eigen::MatrixXd X = feature_matrix(table);
            if (X.cols() != model.dim())
                throw std::runtime_error("feature length " + std::to_string(X.cols()) + " does not match model dimension " +
                                         std::to_string(model.dim()));
            const std::vector<int> pred = predict(model, X);
            std::size_t labeled = 0, correct = 0;
            write_atomic(out, [&](const fs::path& tmp) {
                std::ofstream o(tmp, std::ios::binary);
                o << '#' << header_line(sub, table.rows.front().manifest_hash) << "\nrow,predicted,label\n";
                for (std::size_t i = 0; i < pred.size(); ++i) {
                    const auto& label = table.rows[i].label;
                    o << i << ',' << pred[i] << ',' << (label ? std::to_string(*label) : std::string()) << '\n';
                    if (label) ++labeled, correct += (*label == pred[i]);
                }
                if (!o) throw std::runtime_error("cannot write " + out);
            });
            if (labeled > 0) std::printf("accuracy: %.2f%% (%zu rows)\n", 100.0 * double(correct) / double(labeled), labeled);
            return 0;
        }

        if (sub == eval) {
            EvalOptions opts = eflags.options();
            opts.noise_sd = noise_sd;
            opts.train_clean_test_noisy = clean_noisy;
            opts.noisy_views_per_class = views;
            EvalSummary s;
            std::string hash;
            if (!features.empty()) {
                const FeatureTable table = read_features(features);
                if (!table.rows.empty()) hash = table.rows.front().manifest_hash;
                s = evaluate_features(to_dataset(table.rows), opts);
            } else {
                const DescriptorConfig cfg = gflags.descriptor();
                const HexGrid grid = build_hex_grid(cfg.grid);
                if (is_spectral(cfg.kinds.front())) hash = grid.manifest_hash;
                const DatasetLoad data = load_dataset(in_dir);
                for (const auto& w : data.warnings) std::cerr << "warning: " << w << '\n';
                s = evaluate_images(data.samples, grid, cfg, cfg.kinds.front(), opts);
            }
            print_summary(s);
            if (!out.empty()) write_eval_report(out, s, header_line(sub, hash));
            return 0;
        }

        if (sub == check) {
            CheckReport rep;
            if (suite == "identities") rep = run_identity_suite(check_seed);
            else if (suite == "invariance") rep = run_invariance_suite(check_seed);
            else if (suite == "oracle") rep = run_oracle_suite(check_seed);
            else rep = run_genericity_suite(check_seed);
            const std::string hash = build_hex_grid(GridConfig{}).manifest_hash;
            if (out.empty()) {
                rep.write_csv(std::cout, header_line(sub, hash));
            } else {
                write_atomic(out, [&](const fs::path& tmp) { rep.write_csv(tmp, header_line(sub, hash)); });
                std::vector<std::string> seen;
                for (const auto& r : rep.rows) {
                    if (std::find(seen.begin(), seen.end(), r.identity) != seen.end()) continue;
                    seen.push_back(r.identity);
                    bool ok = true;
                    for (const auto& q : rep.rows)
                        if (q.identity == r.identity) ok = ok && q.pass();
                    std::printf("%-40s worst %.3e  %s\n", r.identity.c_str(), rep.worst(r.identity), ok ? "pass" : "FAIL");
                }
            }
            return rep.pass() ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
