#include "se2n/pipeline.hpp"

#include "se2n/baselines.hpp"
#include "se2n/io.hpp"
#include "se2n/oracle.hpp"
#include "se2n/parallel.hpp"
#include "se2n/synth.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

namespace se2n {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

void write_features(const std::filesystem::path& path, const FeatureTable& table) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << '#' << table.comment << '\n';
    const Eigen::Index width = table.rows.empty() ? 0 : table.rows.front().values.size();
    out << "label,kind,manifest_hash";
    for (Eigen::Index i = 0; i < width; ++i) out << ",f" << i;
    out << '\n';
    for (const auto& r : table.rows) {
        if (r.values.size() != width) throw std::runtime_error("write_features: rows differ in length");
        out << (r.label ? std::to_string(*r.label) : std::string()) << ',' << csv_escape(to_string(r.kind)) << ','
            << r.manifest_hash;
        for (Eigen::Index i = 0; i < width; ++i) out << ',' << fmt(r.values(i));
        out << '\n';
    }
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

FeatureTable read_features(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    FeatureTable table;
    std::string line;
    bool header = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (table.comment.empty()) table.comment = line.substr(1);
            continue;
        }
        if (!header) {
            header = true;
            continue;
        }
        const auto fields = csv_split(line);
        if (fields.size() < 3) throw std::runtime_error(path.string() + ": malformed feature row");
        FeatureVector fv;
        if (!fields[0].empty()) fv.label = std::stoi(fields[0]);
        fv.kind = parse_kind(fields[1]);
        fv.manifest_hash = fields[2];
        fv.values.resize(static_cast<Eigen::Index>(fields.size() - 3));
        for (std::size_t i = 3; i < fields.size(); ++i) fv.values(Eigen::Index(i - 3)) = std::stod(fields[i]);
        table.rows.push_back(std::move(fv));
    }
    return table;
}

Dataset to_dataset(const std::vector<FeatureVector>& rows) {
    Dataset d;
    if (rows.empty()) return d;
    d.X.resize(static_cast<Eigen::Index>(rows.size()), rows.front().values.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].values.size() != d.X.cols()) throw std::invalid_argument("feature rows differ in length");
        if (!rows[i].label) throw std::invalid_argument("feature row without label");
        d.X.row(Eigen::Index(i)) = rows[i].values.transpose();
        d.y.push_back(*rows[i].label);
    }
    return d;
}

std::vector<FeatureVector> extract_batch(const std::vector<LabeledSample>& samples, const HexGrid& grid,
                                         const DescriptorConfig& config, Kind kind) {
    std::vector<FeatureVector> out(samples.size());
    parallel_for(samples.size(), [&](std::size_t i) {
        out[i] = extract_features(samples[i].raster, grid, config, kind);
        out[i].label = samples[i].class_id;
    });
    return out;
}

double choose_sigma(const Dataset& train, const EvalOptions& opts, int trial) {
    if (opts.sigma) return *opts.sigma;
    const std::vector<double> grid =
        opts.sigma_grid.empty() ? default_sigma_grid(static_cast<int>(train.X.cols())) : opts.sigma_grid;
    if (grid.size() == 1) return grid.front();
    Split inner;
    inner.train_ratio = 0.75;
    inner.seed = opts.split.seed ^ 0x5bd1e995u;
    const SplitIndices s = split_dataset(train.y, inner, trial);
    return sigma_search(train.subset(s.train), train.subset(s.test), grid, opts.C);
}

namespace {

void accumulate(EvalSummary& sum, const EvalReport& r, double sigma) {
    sum.accuracies.push_back(r.accuracy);
    sum.sigmas.push_back(sigma);
    if (sum.confusion.size() == 0 || r.classes != sum.classes) {
        if (sum.confusion.size() == 0) {
            sum.classes = r.classes;
            sum.confusion = r.confusion;
            return;
        }
        // Class sets differ between trials: re-index into the union.
        std::vector<int> all = sum.classes;
        all.insert(all.end(), r.classes.begin(), r.classes.end());
        std::sort(all.begin(), all.end());
        all.erase(std::unique(all.begin(), all.end()), all.end());
        auto at = [&](int c) { return int(std::lower_bound(all.begin(), all.end(), c) - all.begin()); };
        Eigen::MatrixXi merged = Eigen::MatrixXi::Zero(int(all.size()), int(all.size()));
        for (std::size_t i = 0; i < sum.classes.size(); ++i)
            for (std::size_t j = 0; j < sum.classes.size(); ++j)
                merged(at(sum.classes[i]), at(sum.classes[j])) += sum.confusion(int(i), int(j));
        for (std::size_t i = 0; i < r.classes.size(); ++i)
            for (std::size_t j = 0; j < r.classes.size(); ++j)
                merged(at(r.classes[i]), at(r.classes[j])) += r.confusion(int(i), int(j));
        sum.classes = all;
        sum.confusion = merged;
        return;
    }
    sum.confusion += r.confusion;
}

void finalize(EvalSummary& sum) {
    double acc = 0;
    for (double a : sum.accuracies) acc += a;
    sum.mean = sum.accuracies.empty() ? 0.0 : acc / double(sum.accuracies.size());
}

SvmParams params_for(double sigma, const EvalOptions& opts) {
    SvmParams p;
    p.sigma = sigma;
    p.C = opts.C;
    return p;
}

std::uint64_t noise_seed(std::uint64_t seed, int trial, std::size_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(index), 0x6e6f6973u};
    std::mt19937_64 rng(seq);
    return rng();
}

}  // namespace

EvalSummary evaluate_features(const Dataset& data, const EvalOptions& opts) {
    if (opts.split.trials < 1) throw std::invalid_argument("evaluate: trials must be >= 1");
    EvalSummary sum;
    for (int t = 0; t < opts.split.trials; ++t) {
        const SplitIndices s = split_dataset(data.y, opts.split, t);
        const Dataset train = data.subset(s.train), test = data.subset(s.test);
        const double sigma = choose_sigma(train, opts, t);
        accumulate(sum, evaluate(train_svm(train, params_for(sigma, opts)), test), sigma);
    }
    finalize(sum);
    return sum;
}

EvalSummary evaluate_images(const std::vector<LabeledSample>& samples, const HexGrid& grid,
                            const DescriptorConfig& config, Kind kind, const EvalOptions& opts) {
    if (opts.split.trials < 1) throw std::invalid_argument("evaluate: trials must be >= 1");
    if (opts.noise_sd < 0) throw std::invalid_argument("evaluate: noise sd must be >= 0");
    const Dataset clean = to_dataset(extract_batch(samples, grid, config, kind));

    auto noisy_features = [&](const std::vector<int>& rows, int trial) {
        if (opts.noise_sd == 0) return clean.subset(rows);
        std::vector<LabeledSample> noisy(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const auto& src = samples[std::size_t(rows[i])];
            noisy[i] = src;
            noisy[i].raster = add_gaussian_noise(src.raster, opts.noise_sd, noise_seed(opts.split.seed, trial, std::size_t(rows[i])));
        }
        return to_dataset(extract_batch(noisy, grid, config, kind));
    };

    EvalSummary sum;
    if (!opts.train_clean_test_noisy) {
        for (int t = 0; t < opts.split.trials; ++t) {
            const SplitIndices s = split_dataset(clean.y, opts.split, t);
            const Dataset train = clean.subset(s.train);
            const double sigma = choose_sigma(train, opts, t);
            accumulate(sum, evaluate(train_svm(train, params_for(sigma, opts)), noisy_features(s.test, t)), sigma);
        }
        finalize(sum);
        return sum;
    }

    if (opts.noisy_views_per_class < 1) throw std::invalid_argument("evaluate: views per class must be >= 1");
    const double sigma = choose_sigma(clean, opts, 0);
    const SvmModel model = train_svm(clean, params_for(sigma, opts));
    std::map<int, std::vector<int>> by_class;
    for (std::size_t i = 0; i < clean.y.size(); ++i) by_class[clean.y[i]].push_back(int(i));
    for (int t = 0; t < opts.split.trials; ++t) {
        std::seed_seq seq{static_cast<std::uint32_t>(opts.split.seed), static_cast<std::uint32_t>(t), 0x76696577u};
        std::mt19937_64 rng(seq);
        std::vector<int> rows;
        for (auto [c, members] : by_class) {
            for (std::size_t i = members.size(); i > 1; --i) std::swap(members[i - 1], members[rng() % i]);
            const std::size_t take = std::min<std::size_t>(members.size(), std::size_t(opts.noisy_views_per_class));
            rows.insert(rows.end(), members.begin(), members.begin() + std::ptrdiff_t(take));
        }
        std::sort(rows.begin(), rows.end());
        accumulate(sum, evaluate(model, noisy_features(rows, t)), sigma);
    }
    finalize(sum);
    return sum;
}

double rel_l2(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    if (a.size() != b.size()) throw std::invalid_argument("rel_l2: size mismatch");
    const double n = a.norm();
    return n > 0 ? (a - b).norm() / n : b.norm();
}

bool CheckReport::pass() const {
    for (const auto& r : rows)
        if (!r.pass()) return false;
    return true;
}

double CheckReport::worst(const std::string& identity) const {
    double w = 0;
    for (const auto& r : rows)
        if (r.identity == identity) w = std::max(w, r.residual);
    return w;
}

void CheckReport::write_csv(std::ostream& out, const std::string& comment) const {
    out << '#' << comment << "\nlambda_x,lambda_y,identity,residual,tolerance,pass\n";
    for (const auto& r : rows) {
        out << fmt(r.lambda.x()) << ',' << fmt(r.lambda.y()) << ',' << csv_escape(r.identity) << ',' << fmt(r.residual)
            << ',' << fmt(r.tolerance) << ',' << (r.pass() ? "true" : "false") << '\n';
    }
}

void CheckReport::write_csv(const std::filesystem::path& path, const std::string& comment) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    write_csv(out, comment);
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

namespace {

constexpr int kN = 6;

Complex cnormal(std::mt19937_64& rng) {
    std::normal_distribution<double> n;
    return {n(rng), n(rng)};
}

double uniform(std::mt19937_64& rng, double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }

Frequency random_slice_frequency(std::mt19937_64& rng, double r0, double r1, int N) {
    const double r = uniform(rng, r0, r1), a = uniform(rng, 0.0, kTwoPi / N);
    return {r * std::cos(a), r * std::sin(a)};
}

// Random analytic function on Z_N x (size x size grid centered on 0): per slice
// a few modulated Gaussians with random complex weights.
CortexFunction random_cortex(std::mt19937_64& rng, int size, int N) {
    CortexFunction phi;
    phi.origin = Vec2(-0.5 * (size - 1), -0.5 * (size - 1));
    for (int k = 0; k < N; ++k) {
        ComplexGrid s = ComplexGrid::Zero(size, size);
        for (int g = 0; g < 3; ++g) {
            const Complex c = cnormal(rng);
            const Vec2 mu(uniform(rng, -0.15, 0.15) * size, uniform(rng, -0.15, 0.15) * size);
            const double w = uniform(rng, 0.08, 0.12) * size;
            const Vec2 kappa(uniform(rng, -0.3, 0.3), uniform(rng, -0.3, 0.3));
            for (int r = 0; r < size; ++r)
                for (int col = 0; col < size; ++col) {
                    const Vec2 x = phi.origin + Vec2(col, r);
                    s(r, col) += c * std::exp(-(x - mu).squaredNorm() / (2 * w * w)) * std::polar(1.0, kappa.dot(x));
                }
        }
        phi.slices.push_back(std::move(s));
    }
    return phi;
}

// Sum of isotropic Gaussian blobs with its closed-form transform.
struct GaussianBlobs {
    std::vector<Vec2> mu;
    std::vector<double> width, amp;

    Raster render(int size) const {
        Raster f(RealGrid::Zero(size, size), Vec2(-0.5 * (size - 1), -0.5 * (size - 1)));
        for (int r = 0; r < size; ++r)
            for (int c = 0; c < size; ++c) {
                const Vec2 x = f.position(c, r);
                for (std::size_t g = 0; g < mu.size(); ++g)
                    f.pixels(r, c) += amp[g] * std::exp(-(x - mu[g]).squaredNorm() / (2 * width[g] * width[g]));
            }
        return f;
    }
    Complex operator()(const Frequency& l) const {
        Complex acc = 0;
        for (std::size_t g = 0; g < mu.size(); ++g)
            acc += amp[g] * kTwoPi * width[g] * width[g] * std::exp(-0.5 * width[g] * width[g] * l.squaredNorm()) *
                   std::polar(1.0, -l.dot(mu[g]));
        return acc;
    }
};

GaussianBlobs random_blobs(std::mt19937_64& rng, int count, double spread, double w0, double w1) {
    GaussianBlobs b;
    for (int g = 0; g < count; ++g) {
        b.mu.emplace_back(uniform(rng, -spread, spread), uniform(rng, -spread, spread));
        b.width.push_back(uniform(rng, w0, w1));
        b.amp.push_back(uniform(rng, 40.0, 200.0));
    }
    return b;
}

double max_abs(const Eigen::MatrixXcd& M) { return M.cwiseAbs().maxCoeff(); }

}  // namespace

CheckReport run_identity_suite(std::uint64_t seed, int functions) {
    CheckReport rep;
    std::mt19937_64 rng(seed);
    const int N = kN;

    for (int t = 0; t < functions; ++t) {
        // Representation: homomorphism and unitarity.
        const Frequency l = random_slice_frequency(rng, 0.1, 2.0, N);
        std::uniform_int_distribution<int> kd(0, N - 1);
        const GroupElement a{Vec2(uniform(rng, -10, 10), uniform(rng, -10, 10)), kd(rng)};
        const GroupElement b{Vec2(uniform(rng, -10, 10), uniform(rng, -10, 10)), kd(rng)};
        const Eigen::MatrixXcd Ta = rep_matrix(l, a, N), Tb = rep_matrix(l, b, N);
        rep.rows.push_back({"rep_homomorphism", l, max_abs(rep_matrix(l, group_mul(a, b, N), N) - Ta * Tb), 1e-12});
        rep.rows.push_back({"rep_unitarity", l, max_abs(Ta * Ta.adjoint() - Eigen::MatrixXcd::Identity(N, N)), 1e-12});

        // Kronecker lemma: block (k,h) of A (P x Q) A^-1 is (P_ij Q_{i-k, j-h}).
        Eigen::MatrixXcd P(N, N), Q(N, N);
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) P(i, j) = cnormal(rng), Q(i, j) = cnormal(rng);
        const Eigen::MatrixXcd B = induction_apply(Eigen::kroneckerProduct(P, Q).eval(), N);
        double lemma = 0;
        for (int k = 0; k < N; ++k)
            for (int h = 0; h < N; ++h)
                for (int i = 0; i < N; ++i)
                    for (int j = 0; j < N; ++j)
                        lemma = std::max(lemma, std::abs(B(k * N + i, h * N + j) - P(i, j) * Q(mod(i - k, N), mod(j - h, N))));
        rep.rows.push_back({"kronecker_induction_lemma", Frequency::Zero(), lemma, 1e-12});

        // Induction-reduction on an analytic cortex function.
        const CortexFunction phi = random_cortex(rng, 40, N);
        const Frequency l1 = random_slice_frequency(rng, 0.05, 0.6, N), l2 = random_slice_frequency(rng, 0.05, 0.6, N);
        const Eigen::MatrixXcd Bt = induction_apply(tensor_matrix_ft(phi, l1, l2), N);
        double ind = off_block_norm(Bt, N);
        for (int k = 0; k < N; ++k)
            ind = std::max(ind, (Bt.block(k * N, k * N, N, N) - matrix_ft(phi, l1 + rotate_freq(l2, k, N))).norm());
        rep.rows.push_back({"induction_reduction", l1, ind / Bt.norm(), 1e-8});

        // Entry formulas against the brute-force Haar sum on a small support.
        if (t < 4) {
            const CortexFunction small = random_cortex(rng, 10, N);
            const Eigen::MatrixXcd H = haar_ft(small, [&](const GroupElement& g) { return rep_matrix(l1, g, N); });
            rep.rows.push_back({"matrix_ft_haar", l1, (matrix_ft(small, l1) - H).norm() / H.norm(), 1e-10});
            const Eigen::MatrixXcd H2 = haar_ft(small, [&](const GroupElement& g) {
                return Eigen::MatrixXcd(Eigen::kroneckerProduct(rep_matrix(l1, g, N), rep_matrix(l2, g, N)));
            });
            rep.rows.push_back({"tensor_ft_haar", l1, (tensor_matrix_ft(small, l1, l2) - H2).norm() / H2.norm(), 1e-10});
        }

        // Rank-1 lift formula: closed-form transform vs matrix FT of the numerical lift.
        const GaussianBlobs blobs = random_blobs(rng, 3, 8.0, 2.5, 4.0);
        const Raster f = blobs.render(64);
        const GaborWavelet psi;
        const CortexFunction lf = lift(f, psi, N);
        const Frequency lam = random_slice_frequency(rng, 0.05, 0.5, N);
        const Eigen::MatrixXcd R = lift_ft_rank1(blobs, psi, lam, N);
        rep.rows.push_back({"lift_rank1_formula", lam, (matrix_ft(lf, lam) - R).norm() / R.norm(), 1e-6});
        const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXcd>(R).singularValues();
        rep.rows.push_back({"lift_rank1_rank", lam, sv(1) / sv(0), 1e-9});
    }
    return rep;
}

CheckReport run_invariance_suite(std::uint64_t seed, int images) {
    CheckReport rep;
    std::mt19937_64 rng(seed);
    const HexGrid grid = build_hex_grid(GridConfig{});
    const DescriptorConfig cfg;
    const Kind kinds[] = {Kind::PS, Kind::BS, Kind::RPS, Kind::RBS};
    for (int n = 0; n < images; ++n) {
        const ShapeSpec shape = random_shape(rng);
        const Raster f = render_shape(shape, 128, uniform(rng, 0, kTwoPi));
        const Spectrum spec = descriptor_spectrum(f, grid.config, true);
        const Vec2 c = barycenter(f);
        const Raster rotated = rotate_resampled(f, kTwoPi / 6, c);
        const Raster shifted = shift_pixels(f, 5, -3);
        for (Kind k : kinds) {
            const std::string name = to_string(k);
            const Eigen::VectorXd base = invariants_from_sampler(spec, grid, spec.freq_step, k, cfg.encoding);
            double exact = 0;
            for (int m = 1; m < grid.config.N; ++m) {
                const RotatedSampler<Spectrum> rs{&spec, m, grid.config.N};
                exact = std::max(exact, rel_l2(base, invariants_from_sampler(rs, grid, spec.freq_step, k, cfg.encoding)));
            }
            rep.rows.push_back({name + "_spectral_rotation", Frequency::Zero(), exact, 1e-12});
            rep.rows.push_back({name + "_pixel_rotation_60", Frequency::Zero(),
                                rel_l2(base, extract_features(rotated, grid, cfg, k).values), 0.02});
            rep.rows.push_back({name + "_translation", Frequency::Zero(),
                                rel_l2(base, extract_features(shifted, grid, cfg, k).values), 1e-6});
        }
        // h = 0 reductions must be bit-exact.
        double rps_ps = 0, rbs_bs = 0;
        const int N = grid.config.N;
        std::vector<OmegaVector> w;
        for (const auto& p : grid.points) w.push_back(omega(spec, grid.physical(p, spec.freq_step), N));
        for (const auto& v : w) rps_ps = std::max(rps_ps, std::abs(rps_fast(cyclic_shift(v, 0), v) - Complex(ps_fast(v))));
        for (const auto& [i, j] : grid.pairs) {
            const OmegaVector w12 = omega(spec, grid.physical(grid.sum(i, j), spec.freq_step), N);
            rbs_bs = std::max(rbs_bs, std::abs(rbs_fast(cyclic_shift(w[std::size_t(i)], 0), w[std::size_t(j)], w12) -
                                               bs_fast(w[std::size_t(i)], w[std::size_t(j)], w12)));
        }
        rep.rows.push_back({"h0_rps_equals_ps", Frequency::Zero(), rps_ps, 0.0});
        rep.rows.push_back({"h0_rbs_equals_bs", Frequency::Zero(), rbs_bs, 0.0});
    }
    return rep;
}

CheckReport run_oracle_suite(std::uint64_t seed, int tuples) {
    CheckReport rep;
    std::mt19937_64 rng(seed);
    const ShapeSpec shape = random_shape(rng);
    const Raster f = render_shape(shape, 64, uniform(rng, 0, kTwoPi));
    Raster g = f;  // centered: g(x) = f(x + c)
    g.origin = f.origin - barycenter(f);
    const GaborWavelet psi;
    const int N = kN;
    const CortexFunction lf = lift(g, psi, N);
    const DtftSampler fhat{&g};
    const LiftOracle<DtftSampler> oracle(lf, fhat, psi);
    const HexGrid grid = build_hex_grid(GridConfig{});
    const Vec2 step = Vec2::Constant(kTwoPi / (grid.config.pad_factor * 64));
    auto pick = [&](std::size_t n) { return std::size_t(rng() % n); };
    auto add = [&](const OracleCheck& c, double all_blocks = -1) {
        rep.rows.push_back({c.identity + "_scalar", c.lambda1, c.rel_err, 1e-8});
        rep.rows.push_back({c.identity + "_rank1_pattern", c.lambda1, c.pattern_residual, 1e-8});
        if (all_blocks >= 0) rep.rows.push_back({c.identity + "_all_blocks", c.lambda1, all_blocks, 1e-8});
    };
    for (int t = 0; t < tuples; ++t) {
        const Frequency l = grid.physical(grid.points[pick(grid.points.size())], step);
        add(oracle.ps(l));
        add(oracle.rps(l, int(pick(std::size_t(N)))));
        const auto [i, j] = grid.pairs[pick(grid.pairs.size())];
        add(oracle.bs(grid.physical(grid.points[std::size_t(i)], step), grid.physical(grid.points[std::size_t(j)], step)),
            oracle.last_all_blocks_err());
        const auto [p, q] = grid.ordered_pairs[pick(grid.ordered_pairs.size())];
        add(oracle.rbs(grid.physical(grid.points[std::size_t(p)], step), grid.physical(grid.points[std::size_t(q)], step),
                       int(pick(std::size_t(N)))),
            oracle.last_all_blocks_err());
    }
    return rep;
}

CheckReport run_genericity_suite(std::uint64_t seed, int images) {
    CheckReport rep;
    std::mt19937_64 rng(seed);
    const HexGrid grid = build_hex_grid(GridConfig{});
    const int N = grid.config.N;
    const Vec2 step = Vec2::Constant(kTwoPi / (grid.config.pad_factor * 64));
    auto fraction = [&](const auto& sampler) {
        int generic = 0;
        for (const auto& p : grid.points) generic += genericity_at(sampler, grid.physical(p, step), N).generic ? 1 : 0;
        return double(generic) / double(grid.points.size());
    };
    for (int n = 0; n < images; ++n) {
        const Raster f = random_blobs(rng, 6, 12.0, 2.0, 5.0).render(64);
        const Spectrum spec = dft2_shifted(f, grid.config.pad_factor);
        rep.rows.push_back({"random_image_generic_fraction_shortfall", Frequency::Zero(), 1.0 - fraction(spec), 0.05});
    }
    GaussianBlobs radial;
    radial.mu = {Vec2::Zero()};
    radial.width = {4.0};
    radial.amp = {100.0};
    rep.rows.push_back({"radial_image_generic_fraction", Frequency::Zero(), fraction(radial), 0.0});
    const Raster zero(RealGrid::Zero(64, 64));
    rep.rows.push_back({"zero_image_generic_fraction", Frequency::Zero(), fraction(dft2_shifted(zero, 2)), 0.0});
    return rep;
}

}  // namespace se2n
