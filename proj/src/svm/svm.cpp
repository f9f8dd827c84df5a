// Copyright 2026 The entangle-lab authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "svm/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "json.hpp"
#include "qcore/rng.hpp"

namespace elab::svm {

using pauli::PauliString;

void LabeledSet::add(std::span<const double> features, int label) {
    if (features.size() != dim_) {
        throw std::invalid_argument("LabeledSet::add: feature length mismatch");
    }
    if (label != -1 && label != +1) {
        throw std::invalid_argument("LabeledSet::add: label must be -1 or +1");
    }
    features_.insert(features_.end(), features.begin(), features.end());
    labels_.push_back(label);
}

LabeledSet LabeledSet::without_feature(std::size_t column) const {
    if (column >= dim_) {
        throw std::invalid_argument("LabeledSet::without_feature: column out of range");
    }
    LabeledSet out(dim_ - 1);
    out.features_.reserve(size() * (dim_ - 1));
    out.labels_ = labels_;
    for (std::size_t i = 0; i < size(); ++i) {
        const double* r = features_.data() + i * dim_;
        out.features_.insert(out.features_.end(), r, r + column);
        out.features_.insert(out.features_.end(), r + column + 1, r + dim_);
    }
    return out;
}

double rbf_kernel(std::span<const double> x, std::span<const double> x2, double gamma) {
    if (x.size() != x2.size()) {
        throw std::invalid_argument("rbf_kernel: length mismatch");
    }
    if (gamma <= 0.0) {
        throw std::invalid_argument("rbf_kernel: gamma must be positive");
    }
    double d2 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - x2[i];
        d2 += d * d;
    }
    return std::exp(-gamma * d2);
}

namespace {

// Lazily computed kernel rows with exact LRU eviction under a byte budget.
// At desk scale the full Gram matrix usually fits, so eviction is rare.
class KernelRowCache {
  public:
    KernelRowCache(const LabeledSet& data, double gamma, std::size_t budget_bytes)
        : data_(data),
          gamma_(gamma),
          m_(data.size()),
          rows_(data.size()),
          prev_(data.size(), -1),
          next_(data.size(), -1) {
        capacity_ = std::max<std::size_t>(2, budget_bytes / (sizeof(double) * std::max<std::size_t>(m_, 1)));
        sqnorm_.resize(m_);
        for (std::size_t i = 0; i < m_; ++i) {
            double s = 0.0;
            for (double v : data_.row(i)) {
                s += v * v;
            }
            sqnorm_[i] = s;
        }
    }

    const double* row(std::size_t i) {
        if (!rows_[i].empty()) {
            touch(static_cast<int>(i));
            return rows_[i].data();
        }
        if (cached_ >= capacity_) {
            evict_lru();
        }
        compute(i);
        push_front(static_cast<int>(i));
        ++cached_;
        return rows_[i].data();
    }

  private:
    void compute(std::size_t i) {
        auto& out = rows_[i];
        out.resize(m_);
        const std::span<const double> xi = data_.row(i);
        const std::size_t dim = data_.dim();
        for (std::size_t j = 0; j < m_; ++j) {
            const double* xj = data_.row(j).data();
            double dot = 0.0;
            for (std::size_t k = 0; k < dim; ++k) {
                dot += xi[k] * xj[k];
            }
            const double d2 = std::max(0.0, sqnorm_[i] + sqnorm_[j] - 2.0 * dot);
            out[j] = std::exp(-gamma_ * d2);
        }
    }

    void push_front(int i) {
        prev_[i] = -1;
        next_[i] = head_;
        if (head_ >= 0) {
            prev_[head_] = i;
        }
        head_ = i;
        if (tail_ < 0) {
            tail_ = i;
        }
    }

    void unlink(int i) {
        if (prev_[i] >= 0) {
            next_[prev_[i]] = next_[i];
        } else {
            head_ = next_[i];
        }
        if (next_[i] >= 0) {
            prev_[next_[i]] = prev_[i];
        } else {
            tail_ = prev_[i];
        }
    }

    void touch(int i) {
        if (head_ == i) {
            return;
        }
        unlink(i);
        push_front(i);
    }

    void evict_lru() {
        const int victim = tail_;
        unlink(victim);
        rows_[victim].clear();
        rows_[victim].shrink_to_fit();
        --cached_;
    }

    const LabeledSet& data_;
    double gamma_;
    std::size_t m_;
    std::size_t capacity_ = 0;
    std::size_t cached_ = 0;
    std::vector<std::vector<double>> rows_;
    std::vector<double> sqnorm_;
    std::vector<int> prev_;
    std::vector<int> next_;
    int head_ = -1;
    int tail_ = -1;
};

constexpr std::size_t kCacheBudgetBytes = std::size_t{256} * 1024 * 1024;

double auto_gamma(const LabeledSet& data) {
    const std::size_t m = data.size();
    const std::size_t d = data.dim();
    double mean = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        for (double v : data.row(i)) {
            mean += v;
        }
    }
    mean /= static_cast<double>(m * d);
    double var = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        for (double v : data.row(i)) {
            var += (v - mean) * (v - mean);
        }
    }
    var /= static_cast<double>(m * d);
    const double denom = static_cast<double>(d) * var;
    return denom > 1e-12 ? 1.0 / denom : 1.0;
}

#ifndef NDEBUG
double dual_objective(const std::vector<double>& alpha, const std::vector<double>& grad) {
    double obj = 0.0;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        obj += 0.5 * alpha[i] * grad[i] - 0.5 * alpha[i];
    }
    return obj;
}
#endif

}  // namespace

TrainResult train(const LabeledSet& data, const std::vector<PauliString>& observables,
                  const TrainConfig& cfg) {
    const std::size_t m = data.size();
    if (m < 2) {
        throw std::invalid_argument("train: need at least two examples");
    }
    if (!observables.empty() && observables.size() != data.dim()) {
        throw std::invalid_argument("train: observable list does not match feature dimension");
    }
    bool has_pos = false;
    bool has_neg = false;
    for (int y : data.labels()) {
        has_pos = has_pos || (y == +1);
        has_neg = has_neg || (y == -1);
    }
    if (!has_pos || !has_neg) {
        throw std::invalid_argument("train: need at least one example of each label");
    }
    if (cfg.c_penalty <= 0.0 || cfg.tolerance <= 0.0) {
        throw std::invalid_argument("train: c_penalty and tolerance must be positive");
    }

    const double gamma = cfg.gamma > 0.0 ? cfg.gamma : auto_gamma(data);
    const double c = cfg.c_penalty;
    KernelRowCache cache(data, gamma, kCacheBudgetBytes);

    std::vector<double> alpha(m, 0.0);
    std::vector<double> grad(m, -1.0);  // d/d(alpha) of the dual objective
    const std::vector<int>& y = data.labels();

    bool converged = false;
    std::size_t iter = 0;
    for (; iter < cfg.max_passes; ++iter) {
        // Max-violating pair over the feasible ascent/descent sets.
        int i = -1;
        int j = -1;
        double gmax = -std::numeric_limits<double>::infinity();
        double gmin = std::numeric_limits<double>::infinity();
        for (std::size_t t = 0; t < m; ++t) {
            const double v = -y[t] * grad[t];
            const bool in_up = (y[t] == +1) ? (alpha[t] < c) : (alpha[t] > 0.0);
            const bool in_low = (y[t] == +1) ? (alpha[t] > 0.0) : (alpha[t] < c);
            if (in_up && v > gmax) {
                gmax = v;
                i = static_cast<int>(t);
            }
            if (in_low && v < gmin) {
                gmin = v;
                j = static_cast<int>(t);
            }
        }
        if (i < 0 || j < 0 || gmax - gmin < cfg.tolerance) {
            converged = true;
            break;
        }

        const double* ki = cache.row(static_cast<std::size_t>(i));
        const double* kj = cache.row(static_cast<std::size_t>(j));

#ifndef NDEBUG
        const double obj_before = dual_objective(alpha, grad);
#endif

        const double eta = std::max(ki[i] + kj[j] - 2.0 * ki[j], 1e-12);
        const double step = (-y[i] * grad[i] + y[j] * grad[j]) / eta;

        const double old_ai = alpha[i];
        const double old_aj = alpha[j];
        const double sum = y[i] * old_ai + y[j] * old_aj;

        alpha[i] = std::clamp(old_ai + y[i] * step, 0.0, c);
        alpha[j] = std::clamp(y[j] * (sum - y[i] * alpha[i]), 0.0, c);
        alpha[i] = std::clamp(y[i] * (sum - y[j] * alpha[j]), 0.0, c);

        const double delta_i = (alpha[i] - old_ai) * y[i];
        const double delta_j = (alpha[j] - old_aj) * y[j];
        for (std::size_t t = 0; t < m; ++t) {
            grad[t] += y[t] * (ki[t] * delta_i + kj[t] * delta_j);
        }

#ifndef NDEBUG
        if (dual_objective(alpha, grad) > obj_before + 1e-9) {
            throw std::logic_error("train: dual objective increased during an update");
        }
#endif
    }

    // Bias from the free support vectors; fall back to the violation bracket
    // midpoint when every alpha sits on a bound.
    double bias;
    {
        double free_sum = 0.0;
        std::size_t free_count = 0;
        double gmax = -std::numeric_limits<double>::infinity();
        double gmin = std::numeric_limits<double>::infinity();
        for (std::size_t t = 0; t < m; ++t) {
            const double v = -y[t] * grad[t];
            if (alpha[t] > 1e-12 && alpha[t] < c - 1e-12) {
                free_sum += v;
                ++free_count;
            }
            const bool in_up = (y[t] == +1) ? (alpha[t] < c) : (alpha[t] > 0.0);
            const bool in_low = (y[t] == +1) ? (alpha[t] > 0.0) : (alpha[t] < c);
            if (in_up) {
                gmax = std::max(gmax, v);
            }
            if (in_low) {
                gmin = std::min(gmin, v);
            }
        }
        bias = free_count > 0 ? free_sum / static_cast<double>(free_count)
                              : 0.5 * (gmax + gmin);
    }

    TrainResult result;
    result.converged = converged;
    result.iterations = iter;
    result.model.observables = observables;
    result.model.n_qubits = observables.empty() ? 0 : observables.front().size();
    result.model.gamma = gamma;
    result.model.bias = bias;
    for (std::size_t t = 0; t < m; ++t) {
        if (alpha[t] > 1e-12) {
            const auto r = data.row(t);
            result.model.support_vectors.emplace_back(r.begin(), r.end());
            result.model.dual_coeffs.push_back(alpha[t] * y[t]);
        }
    }

    // Training accuracy straight from the final gradient:
    // f(x_t) = y_t * (grad_t + 1) + bias.
    std::size_t correct = 0;
    for (std::size_t t = 0; t < m; ++t) {
        const double f = y[t] * (grad[t] + 1.0) + bias;
        const int pred = f < 0.0 ? -1 : +1;
        correct += (pred == y[t]);
    }
    result.training_accuracy = static_cast<double>(correct) / static_cast<double>(m);
    return result;
}

double decision_value(const SvmModel& model, std::span<const double> x) {
    if (model.support_vectors.empty()) {
        throw std::invalid_argument("decision_value: model has no support vectors");
    }
    if (x.size() != model.support_vectors.front().size()) {
        throw std::invalid_argument("decision_value: feature length mismatch");
    }
    double f = model.bias;
    for (std::size_t s = 0; s < model.support_vectors.size(); ++s) {
        f += model.dual_coeffs[s] * rbf_kernel(model.support_vectors[s], x, model.gamma);
    }
    return f;
}

double accuracy(const SvmModel& model, const LabeledSet& data) {
    if (data.size() == 0) {
        throw std::invalid_argument("accuracy: empty dataset");
    }
    std::size_t correct = 0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        const int pred = decision_value(model, data.row(i)) < 0.0 ? -1 : +1;
        correct += (pred == data.label(i));
    }
    return static_cast<double>(correct) / static_cast<double>(data.size());
}

EliminationResult eliminate_features(const LabeledSet& data,
                                     const std::vector<PauliString>& observables,
                                     const TrainConfig& cfg) {
    if (cfg.min_features < 1 || data.dim() < cfg.min_features) {
        throw std::invalid_argument("eliminate_features: feature count below min_features");
    }
    if (!observables.empty() && observables.size() != data.dim()) {
        throw std::invalid_argument("eliminate_features: observable list does not match features");
    }

    EliminationResult out;
    TrainResult current = train(data, observables, cfg);
    out.retrains = 1;
    if (current.training_accuracy < cfg.accuracy_floor) {
        out.model = std::move(current.model);
        out.converged = current.converged;
        out.training_accuracy = current.training_accuracy;
        out.floor_met = false;
        return out;
    }

    // One upfront shuffle fixes the candidate order for every pass.
    std::vector<std::size_t> order(data.dim());
    std::iota(order.begin(), order.end(), std::size_t{0});
    qcore::Rng rng(cfg.seed);
    for (std::size_t i = order.size(); i > 1; --i) {
        std::swap(order[i - 1], order[rng.below(i)]);
    }

    LabeledSet active_data = data;
    std::vector<PauliString> active_obs = observables;
    std::vector<std::size_t> active_ids(data.dim());
    std::iota(active_ids.begin(), active_ids.end(), std::size_t{0});

    bool changed = true;
    while (changed && active_data.dim() > cfg.min_features) {
        changed = false;
        for (std::size_t candidate : order) {
            const auto pos_it = std::find(active_ids.begin(), active_ids.end(), candidate);
            if (pos_it == active_ids.end()) {
                continue;
            }
            const std::size_t pos = static_cast<std::size_t>(pos_it - active_ids.begin());
            LabeledSet trial_data = active_data.without_feature(pos);
            std::vector<PauliString> trial_obs = active_obs;
            if (!trial_obs.empty()) {
                trial_obs.erase(trial_obs.begin() + static_cast<std::ptrdiff_t>(pos));
            }
            TrainResult trial = train(trial_data, trial_obs, cfg);
            ++out.retrains;
            if (trial.training_accuracy >= cfg.accuracy_floor) {
                active_data = std::move(trial_data);
                active_obs = std::move(trial_obs);
                active_ids.erase(active_ids.begin() + static_cast<std::ptrdiff_t>(pos));
                current = std::move(trial);
                changed = true;
                if (active_data.dim() == cfg.min_features) {
                    break;
                }
            }
        }
    }

    out.model = std::move(current.model);
    out.converged = current.converged;
    out.training_accuracy = current.training_accuracy;
    out.floor_met = true;
    return out;
}

std::vector<std::vector<int>> prediction_permutations(std::size_t n) {
    std::vector<std::vector<int>> perms;
    std::vector<int> identity(n);
    std::iota(identity.begin(), identity.end(), 0);
    perms.push_back(identity);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            std::vector<int> p = identity;
            std::swap(p[a], p[b]);
            perms.push_back(std::move(p));
        }
    }
    return perms;
}

std::vector<PauliString> observable_orbit(const std::vector<PauliString>& observables) {
    if (observables.empty()) {
        throw std::invalid_argument("observable_orbit: empty observable list");
    }
    const auto perms = prediction_permutations(observables.front().size());
    std::vector<PauliString> orbit;
    for (const auto& perm : perms) {
        for (const auto& obs : observables) {
            PauliString moved = pauli::permute_pauli(obs, perm);
            if (std::find(orbit.begin(), orbit.end(), moved) == orbit.end()) {
                orbit.push_back(std::move(moved));
            }
        }
    }
    return orbit;
}

PermutationPrediction permutation_predict(const SvmModel& model,
                                          const std::map<std::string, double>& features) {
    if (model.observables.empty()) {
        throw std::invalid_argument("permutation_predict: model carries no observable list");
    }
    const std::size_t n = model.observables.front().size();
    PermutationPrediction out;
    out.permutations = prediction_permutations(n);

    std::vector<std::string> missing;
    for (const auto& perm : out.permutations) {
        for (const auto& obs : model.observables) {
            const std::string key = pauli::permute_pauli(obs, perm).str();
            if (!features.contains(key)) {
                missing.push_back(key);
            }
        }
    }
    if (!missing.empty()) {
        std::string msg = "permutation_predict: missing features:";
        for (const auto& s : missing) {
            msg += " " + s;
        }
        throw std::invalid_argument(msg);
    }

    out.aggregate = -1;
    for (const auto& perm : out.permutations) {
        std::vector<double> x;
        x.reserve(model.observables.size());
        for (const auto& obs : model.observables) {
            x.push_back(features.at(pauli::permute_pauli(obs, perm).str()));
        }
        const double v = decision_value(model, x);
        out.values.push_back(v);
        out.labels.push_back(v < 0.0 ? -1 : +1);
        if (v >= 0.0) {
            out.aggregate = +1;
        }
    }
    return out;
}

std::string model_to_json(const SvmModel& model) {
    nlohmann::json j;
    j["version"] = "0.1.0";
    j["n_qubits"] = model.n_qubits;
    j["gamma"] = model.gamma;
    j["bias"] = model.bias;
    std::vector<std::string> obs;
    obs.reserve(model.observables.size());
    for (const auto& o : model.observables) {
        obs.push_back(o.str());
    }
    j["observables"] = obs;
    j["support_vectors"] = model.support_vectors;
    j["dual_coeffs"] = model.dual_coeffs;
    return j.dump(2);
}

SvmModel model_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    SvmModel model;
    model.n_qubits = j.at("n_qubits").get<std::size_t>();
    model.gamma = j.at("gamma").get<double>();
    model.bias = j.at("bias").get<double>();
    for (const auto& s : j.at("observables")) {
        model.observables.emplace_back(s.get<std::string>());
    }
    model.support_vectors = j.at("support_vectors").get<std::vector<std::vector<double>>>();
    model.dual_coeffs = j.at("dual_coeffs").get<std::vector<double>>();
    if (model.support_vectors.size() != model.dual_coeffs.size()) {
        throw std::invalid_argument("model_from_json: support vector / coefficient mismatch");
    }
    return model;
}

}  // namespace elab::svm
