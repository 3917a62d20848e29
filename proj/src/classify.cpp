#include "se2n/classify.hpp"

#include "se2n/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace se2n {

Dataset Dataset::subset(const std::vector<int>& rows) const {
    Dataset out;
    out.X.resize(static_cast<Eigen::Index>(rows.size()), X.cols());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        out.X.row(static_cast<Eigen::Index>(i)) = X.row(rows[i]);
        out.y.push_back(y[static_cast<std::size_t>(rows[i])]);
    }
    return out;
}

namespace {

// Portable Fisher-Yates (std::shuffle is implementation-defined).
void shuffle(std::vector<int>& v, std::mt19937_64& rng) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng() % i]);
}

}  // namespace

SplitIndices split_dataset(const std::vector<int>& labels, const Split& split, int trial) {
    if (!(split.train_ratio > 0 && split.train_ratio < 1)) throw std::invalid_argument("split: ratio must be in (0, 1)");
    std::map<int, std::vector<int>> by_class;
    for (std::size_t i = 0; i < labels.size(); ++i) by_class[labels[i]].push_back(static_cast<int>(i));
    if (by_class.size() < 2) throw std::invalid_argument("split: need at least two classes");

    std::seed_seq seq{static_cast<std::uint32_t>(split.seed), static_cast<std::uint32_t>(split.seed >> 32),
                      static_cast<std::uint32_t>(trial)};
    std::mt19937_64 rng(seq);
    SplitIndices out;
    auto take = [&](std::vector<int> rows) {
        const int n = static_cast<int>(rows.size());
        if (n < 2) throw std::invalid_argument("split: every class needs at least two samples");
        const int n_train = std::clamp(static_cast<int>(std::lround(split.train_ratio * n)), 1, n - 1);
        shuffle(rows, rng);
        out.train.insert(out.train.end(), rows.begin(), rows.begin() + n_train);
        out.test.insert(out.test.end(), rows.begin() + n_train, rows.end());
    };
    if (split.stratified) {
        for (auto& [c, rows] : by_class) take(rows);
    } else {
        std::vector<int> all(labels.size());
        std::iota(all.begin(), all.end(), 0);
        take(all);
    }
    std::sort(out.train.begin(), out.train.end());
    std::sort(out.test.begin(), out.test.end());
    return out;
}

Standardizer Standardizer::fit(const Eigen::MatrixXd& X) {
    if (X.rows() == 0) throw std::invalid_argument("standardizer: empty data");
    Standardizer s;
    s.mean = X.colwise().mean().transpose();
    s.scale.resize(X.cols());
    for (Eigen::Index j = 0; j < X.cols(); ++j) {
        const double sd = std::sqrt((X.col(j).array() - s.mean(j)).square().mean());
        const double mag = X.col(j).cwiseAbs().maxCoeff();
        // Constant columns (up to rounding) carry no information; they map to 0.
        s.scale(j) = sd > 1e-12 * mag ? sd : 0.0;
    }
    return s;
}

Eigen::MatrixXd Standardizer::apply(const Eigen::MatrixXd& X) const {
    if (X.cols() != mean.size()) throw std::invalid_argument("standardizer: dimension mismatch");
    Eigen::MatrixXd out(X.rows(), X.cols());
    for (Eigen::Index j = 0; j < X.cols(); ++j) {
        if (scale(j) == 0)
            out.col(j).setZero();
        else
            out.col(j) = (X.col(j).array() - mean(j)) / scale(j);
    }
    return out;
}

Eigen::MatrixXd squared_distances(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
    const Eigen::VectorXd a2 = A.rowwise().squaredNorm(), b2 = B.rowwise().squaredNorm();
    Eigen::MatrixXd d = -2.0 * A * B.transpose();
    d.colwise() += a2;
    d.rowwise() += b2.transpose();
    return d.cwiseMax(0.0);
}

Eigen::MatrixXd gaussian_kernel(const Eigen::MatrixXd& d2, double sigma) {
    if (!(sigma > 0)) throw std::invalid_argument("gaussian kernel: sigma must be positive");
    return (-d2.array() / (2 * sigma * sigma)).exp().matrix();
}

BinarySolution smo_solve(const Eigen::MatrixXd& K, const std::vector<int>& y, double C, double tol, long max_iter) {
    const Eigen::Index n = K.rows();
    BinarySolution sol;
    sol.alpha = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd G = Eigen::VectorXd::Constant(n, -1.0);  // gradient of 1/2 a'Qa - e'a
    auto& a = sol.alpha;
    auto up = [&](Eigen::Index t) { return y[std::size_t(t)] > 0 ? a(t) < C : a(t) > 0; };
    auto low = [&](Eigen::Index t) { return y[std::size_t(t)] > 0 ? a(t) > 0 : a(t) < C; };

    for (; sol.iterations < max_iter; ++sol.iterations) {
        Eigen::Index i = -1, j = -1;
        double m = -std::numeric_limits<double>::infinity(), M = std::numeric_limits<double>::infinity();
        for (Eigen::Index t = 0; t < n; ++t) {
            const double v = -y[std::size_t(t)] * G(t);
            if (up(t) && v > m) m = v, i = t;
            if (low(t) && v < M) M = v, j = t;
        }
        if (i < 0 || j < 0 || m - M < tol) break;

        const double eta = std::max(K(i, i) + K(j, j) - 2 * K(i, j), 1e-12);
        double d = (m - M) / eta;
        const int yi = y[std::size_t(i)], yj = y[std::size_t(j)];
        d = std::min(d, yi > 0 ? C - a(i) : a(i));
        d = std::min(d, yj > 0 ? a(j) : C - a(j));
        a(i) = std::clamp(a(i) + yi * d, 0.0, C);
        a(j) = std::clamp(a(j) - yj * d, 0.0, C);
        for (Eigen::Index t = 0; t < n; ++t) G(t) += y[std::size_t(t)] * d * (K(t, i) - K(t, j));
    }

    double ub = std::numeric_limits<double>::infinity(), lb = -ub, sum_free = 0;
    int n_free = 0;
    for (Eigen::Index t = 0; t < n; ++t) {
        const double yG = y[std::size_t(t)] * G(t);
        const bool at_upper = a(t) >= C, at_lower = a(t) <= 0;
        if (at_upper) {
            if (y[std::size_t(t)] < 0) ub = std::min(ub, yG); else lb = std::max(lb, yG);
        } else if (at_lower) {
            if (y[std::size_t(t)] > 0) ub = std::min(ub, yG); else lb = std::max(lb, yG);
        } else {
            ++n_free;
            sum_free += yG;
        }
    }
    sol.rho = n_free > 0 ? sum_free / n_free : 0.5 * (ub + lb);
    return sol;
}

namespace {

struct RowHash {
    std::size_t operator()(const std::vector<double>& v) const {
        std::size_t h = 1469598103934665603ull;
        for (double x : v) {
            std::uint64_t bits;
            std::memcpy(&bits, &x, sizeof bits);
            h = (h ^ bits) * 1099511628211ull;
        }
        return h;
    }
};

std::vector<int> unique_rows(const Dataset& d) {
    std::unordered_map<std::vector<double>, std::vector<int>, RowHash> seen;
    std::vector<int> keep;
    for (Eigen::Index r = 0; r < d.X.rows(); ++r) {
        std::vector<double> key(d.X.cols() + 1);
        for (Eigen::Index c = 0; c < d.X.cols(); ++c) key[std::size_t(c)] = d.X(r, c);
        key.back() = d.y[std::size_t(r)];
        auto& bucket = seen[key];
        if (bucket.empty()) keep.push_back(static_cast<int>(r));
        bucket.push_back(static_cast<int>(r));
    }
    return keep;
}

}  // namespace

SvmModel train_svm(const Dataset& train_in, const SvmParams& params) {
    if (train_in.size() == 0) throw std::invalid_argument("train_svm: empty training set");
    const Dataset train = train_in.subset(unique_rows(train_in));
    SvmModel model;
    model.params = params;
    model.standardizer = Standardizer::fit(train.X);
    model.classes = train.y;
    std::sort(model.classes.begin(), model.classes.end());
    model.classes.erase(std::unique(model.classes.begin(), model.classes.end()), model.classes.end());
    if (model.classes.size() < 2) throw std::invalid_argument("train_svm: need at least two classes");

    const Eigen::MatrixXd Xs = model.standardizer.apply(train.X);
    const Eigen::MatrixXd D = squared_distances(Xs, Xs);
    const Eigen::MatrixXd K = gaussian_kernel(D, params.sigma);

    std::vector<std::pair<int, int>> class_pairs;
    for (std::size_t p = 0; p < model.classes.size(); ++p)
        for (std::size_t q = p + 1; q < model.classes.size(); ++q) class_pairs.emplace_back(model.classes[p], model.classes[q]);

    struct Raw {
        std::vector<int> rows;
        std::vector<double> coef;
        double bias = 0;
        std::optional<int> constant;
    };
    std::vector<Raw> raw(class_pairs.size());
    parallel_for(class_pairs.size(), [&](std::size_t p) {
        const auto [ca, cb] = class_pairs[p];
        std::vector<int> rows, y;
        int na = 0, nb = 0;
        for (std::size_t r = 0; r < train.y.size(); ++r) {
            if (train.y[r] == ca || train.y[r] == cb) {
                rows.push_back(static_cast<int>(r));
                y.push_back(train.y[r] == ca ? 1 : -1);
                (train.y[r] == ca ? na : nb)++;
            }
        }
        Eigen::MatrixXd Kp(rows.size(), rows.size());
        double spread = 0;
        for (std::size_t u = 0; u < rows.size(); ++u)
            for (std::size_t v = 0; v < rows.size(); ++v) {
                Kp(Eigen::Index(u), Eigen::Index(v)) = K(rows[u], rows[v]);
                spread = std::max(spread, D(rows[u], rows[v]));
            }
        if (spread == 0) {  // every point identical: no separating information
            raw[p].constant = na >= nb ? ca : cb;
            return;
        }
        const BinarySolution sol = smo_solve(Kp, y, params.C, params.tol, params.max_iter);
        for (std::size_t u = 0; u < rows.size(); ++u) {
            if (sol.alpha(Eigen::Index(u)) > 0) {
                raw[p].rows.push_back(rows[u]);
                raw[p].coef.push_back(sol.alpha(Eigen::Index(u)) * y[u]);
            }
        }
        raw[p].bias = -sol.rho;
    });

    std::vector<int> used;
    for (const auto& r : raw) used.insert(used.end(), r.rows.begin(), r.rows.end());
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());
    std::unordered_map<int, int> slot;
    model.vectors.resize(static_cast<Eigen::Index>(used.size()), Xs.cols());
    for (std::size_t i = 0; i < used.size(); ++i) {
        slot[used[i]] = static_cast<int>(i);
        model.vectors.row(Eigen::Index(i)) = Xs.row(used[i]);
    }
    for (std::size_t p = 0; p < class_pairs.size(); ++p) {
        PairClassifier pc;
        pc.a = class_pairs[p].first;
        pc.b = class_pairs[p].second;
        pc.bias = raw[p].bias;
        pc.coef = raw[p].coef;
        pc.constant = raw[p].constant;
        for (int r : raw[p].rows) pc.sv.push_back(slot[r]);
        model.pairs.push_back(std::move(pc));
    }
    return model;
}

Eigen::MatrixXd decision_values(const SvmModel& model, const Eigen::MatrixXd& X) {
    if (X.cols() != model.dim()) throw std::invalid_argument("predict: feature dimension mismatch");
    const Eigen::MatrixXd Xs = model.standardizer.apply(X);
    const Eigen::MatrixXd Kt = gaussian_kernel(squared_distances(Xs, model.vectors), model.params.sigma);
    Eigen::MatrixXd out(X.rows(), static_cast<Eigen::Index>(model.pairs.size()));
    for (std::size_t p = 0; p < model.pairs.size(); ++p) {
        const auto& pc = model.pairs[p];
        for (Eigen::Index r = 0; r < X.rows(); ++r) {
            if (pc.constant) {
                out(r, Eigen::Index(p)) = *pc.constant == pc.a ? 1.0 : -1.0;
                continue;
            }
            double acc = pc.bias;
            for (std::size_t i = 0; i < pc.sv.size(); ++i) acc += pc.coef[i] * Kt(r, pc.sv[i]);
            out(r, Eigen::Index(p)) = acc;
        }
    }
    return out;
}

std::vector<int> predict(const SvmModel& model, const Eigen::MatrixXd& X) {
    const Eigen::MatrixXd dv = decision_values(model, X);
    std::vector<int> out;
    for (Eigen::Index r = 0; r < X.rows(); ++r) {
        std::map<int, int> votes;
        for (int c : model.classes) votes[c] = 0;
        for (std::size_t p = 0; p < model.pairs.size(); ++p) {
            const auto& pc = model.pairs[p];
            votes[dv(r, Eigen::Index(p)) > 0 ? pc.a : pc.b]++;
        }
        int best = model.classes.front();
        for (const auto& [c, v] : votes)
            if (v > votes[best]) best = c;
        out.push_back(best);
    }
    return out;
}

int predict(const SvmModel& model, const Eigen::VectorXd& x) { return predict(model, Eigen::MatrixXd(x.transpose())).front(); }

int knn_predict(const Dataset& train, const Eigen::VectorXd& x, int k) {
    if (k < 1 || static_cast<std::size_t>(k) > train.size()) throw std::invalid_argument("knn: k out of range");
    const Standardizer s = Standardizer::fit(train.X);
    const Eigen::MatrixXd Xs = s.apply(train.X);
    const Eigen::MatrixXd q = s.apply(Eigen::MatrixXd(x.transpose()));
    const Eigen::VectorXd d = (Xs.rowwise() - q.row(0)).rowwise().squaredNorm();
    std::vector<int> order(train.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return d(a) < d(b); });
    std::map<int, int> votes;
    for (int i = 0; i < k; ++i) votes[train.y[std::size_t(order[std::size_t(i)])]]++;
    int best = votes.begin()->first;
    for (const auto& [c, v] : votes)
        if (v > votes[best]) best = c;
    return best;
}

double sigma_search(const Dataset& train, const Dataset& validation, const std::vector<double>& grid, double C) {
    if (grid.empty()) throw std::invalid_argument("sigma_search: empty grid");
    std::vector<double> sorted = grid;
    std::sort(sorted.begin(), sorted.end());
    double best = sorted.front(), best_acc = -1;
    for (double sigma : sorted) {
        SvmParams p;
        p.sigma = sigma;
        p.C = C;
        const double acc = evaluate(train_svm(train, p), validation).accuracy;
        if (acc > best_acc) best_acc = acc, best = sigma;
    }
    return best;
}

std::vector<double> default_sigma_grid(int dim) {
    std::vector<double> g;
    for (int e = -3; e <= 2; ++e) g.push_back(std::sqrt(double(std::max(dim, 1))) * std::ldexp(1.0, e));
    return g;
}

EvalReport make_report(const std::vector<int>& truth, const std::vector<int>& predicted) {
    if (truth.empty()) throw std::invalid_argument("evaluate: empty test set");
    if (truth.size() != predicted.size()) throw std::invalid_argument("evaluate: size mismatch");
    EvalReport r;
    r.classes = truth;
    r.classes.insert(r.classes.end(), predicted.begin(), predicted.end());
    std::sort(r.classes.begin(), r.classes.end());
    r.classes.erase(std::unique(r.classes.begin(), r.classes.end()), r.classes.end());
    auto index = [&](int c) { return int(std::lower_bound(r.classes.begin(), r.classes.end(), c) - r.classes.begin()); };
    const int n = static_cast<int>(r.classes.size());
    r.confusion = Eigen::MatrixXi::Zero(n, n);
    for (std::size_t i = 0; i < truth.size(); ++i) r.confusion(index(truth[i]), index(predicted[i]))++;
    r.total = truth.size();
    r.accuracy = 100.0 * r.confusion.trace() / double(r.total);
    return r;
}

EvalReport evaluate(const SvmModel& model, const Dataset& test) {
    if (test.size() == 0) throw std::invalid_argument("evaluate: empty test set");
    return make_report(test.y, predict(model, test.X));
}

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

template <typename Vec>
std::string join(const Vec& v) {
    std::string s;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += fmt(v(i));
    }
    return s;
}

std::vector<double> parse_row(const std::string& line) {
    std::vector<double> out;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
    return out;
}

}  // namespace

void save_model(const SvmModel& m, const std::filesystem::path& path, const std::string& header) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write model " + path.string());
    out << "SE2N-SVM v1\n# " << header << '\n';
    out << "kernel gaussian sigma " << fmt(m.params.sigma) << " C " << fmt(m.params.C) << " tol " << fmt(m.params.tol)
        << " max_iter " << m.params.max_iter << '\n';
    out << "dim " << m.dim() << '\n';
    out << "classes";
    for (int c : m.classes) out << ' ' << c;
    out << "\nmean " << join(m.standardizer.mean) << "\nscale " << join(m.standardizer.scale) << '\n';
    out << "vectors " << m.vectors.rows() << '\n';
    for (Eigen::Index r = 0; r < m.vectors.rows(); ++r) out << join(m.vectors.row(r)) << '\n';
    out << "pairs " << m.pairs.size() << '\n';
    for (const auto& p : m.pairs) {
        out << "pair " << p.a << ' ' << p.b << "\nbias " << fmt(p.bias) << "\nconstant "
            << (p.constant ? std::to_string(*p.constant) : std::string("none")) << "\nsv " << p.sv.size() << '\n';
        for (std::size_t i = 0; i < p.sv.size(); ++i) out << p.sv[i] << ',' << fmt(p.coef[i]) << '\n';
    }
    if (!out) throw std::runtime_error("failed writing model " + path.string());
}

SvmModel load_model(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open model " + path.string());
    auto fail = [&](const std::string& what) { return std::runtime_error(path.string() + ": malformed model (" + what + ")"); };
    std::string line, word;
    if (!std::getline(in, line) || line != "SE2N-SVM v1") throw fail("magic");
    SvmModel m;
    int dim = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        ls >> word;
        if (word == "kernel") {
            std::string kind, k1, k2, k3, k4;
            ls >> kind >> k1 >> m.params.sigma >> k2 >> m.params.C >> k3 >> m.params.tol >> k4 >> m.params.max_iter;
            if (kind != "gaussian" || !ls) throw fail("kernel");
        } else if (word == "dim") {
            ls >> dim;
        } else if (word == "classes") {
            int c;
            while (ls >> c) m.classes.push_back(c);
        } else if (word == "mean" || word == "scale") {
            std::string rest;
            std::getline(ls >> std::ws, rest);
            const auto v = parse_row(rest);
            if (static_cast<int>(v.size()) != dim) throw fail(word);
            (word == "mean" ? m.standardizer.mean : m.standardizer.scale) = Eigen::Map<const Eigen::VectorXd>(v.data(), dim);
        } else if (word == "vectors") {
            int n = 0;
            ls >> n;
            m.vectors.resize(n, dim);
            for (int r = 0; r < n; ++r) {
                if (!std::getline(in, line)) throw fail("vectors");
                const auto v = parse_row(line);
                if (static_cast<int>(v.size()) != dim) throw fail("vector width");
                m.vectors.row(r) = Eigen::Map<const Eigen::RowVectorXd>(v.data(), dim);
            }
        } else if (word == "pairs") {
            int n = 0;
            ls >> n;
            for (int p = 0; p < n; ++p) {
                PairClassifier pc;
                std::string tag, value;
                if (!(in >> tag >> pc.a >> pc.b) || tag != "pair") throw fail("pair");
                if (!(in >> tag >> value) || tag != "bias") throw fail("bias");
                pc.bias = std::stod(value);
                if (!(in >> tag >> value) || tag != "constant") throw fail("constant");
                if (value != "none") pc.constant = std::stoi(value);
                std::size_t count = 0;
                if (!(in >> tag >> count) || tag != "sv") throw fail("sv");
                std::getline(in, line);
                for (std::size_t i = 0; i < count; ++i) {
                    if (!std::getline(in, line)) throw fail("sv rows");
                    const auto comma = line.find(',');
                    if (comma == std::string::npos) throw fail("sv row");
                    pc.sv.push_back(std::stoi(line.substr(0, comma)));
                    pc.coef.push_back(std::stod(line.substr(comma + 1)));
                }
                m.pairs.push_back(std::move(pc));
            }
        } else {
            throw fail("unknown section " + word);
        }
    }
    if (m.classes.size() < 2 || m.standardizer.mean.size() != dim) throw fail("incomplete");
    return m;
}

}  // namespace se2n
