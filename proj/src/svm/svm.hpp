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

#ifndef ENTANGLE_LAB_SVM_SVM_HPP
#define ENTANGLE_LAB_SVM_SVM_HPP

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "pauli/pauli.hpp"

namespace elab::svm {

// Row-major feature matrix plus labels in {-1, +1}.
class LabeledSet {
  public:
    LabeledSet() = default;
    explicit LabeledSet(std::size_t dim) : dim_(dim) {}

    void add(std::span<const double> features, int label);

    std::size_t dim() const { return dim_; }
    std::size_t size() const { return labels_.size(); }
    std::span<const double> row(std::size_t i) const {
        return {features_.data() + i * dim_, dim_};
    }
    int label(std::size_t i) const { return labels_[i]; }
    const std::vector<int>& labels() const { return labels_; }

    // Copy with one feature column removed.
    LabeledSet without_feature(std::size_t column) const;

  private:
    std::size_t dim_ = 0;
    std::vector<double> features_;
    std::vector<int> labels_;
};

struct TrainConfig {
    double gamma = 0.0;          // <= 0 selects 1 / (dim * var(features))
    double c_penalty = 1.0;
    double tolerance = 1e-3;     // KKT violation tolerance
    std::size_t max_passes = 10000;  // optimizer iteration cap (pair updates)
    double accuracy_floor = 0.99;    // elimination keeps accuracy >= this
    std::size_t min_features = 1;
    std::uint64_t seed = 0;          // feature-order shuffle
};

struct SvmModel {
    std::vector<pauli::PauliString> observables;  // empty for plain numeric models
    std::size_t n_qubits = 0;
    std::vector<std::vector<double>> support_vectors;
    std::vector<double> dual_coeffs;  // label-signed alpha_i
    double bias = 0.0;
    double gamma = 1.0;

    std::size_t dim() const {
        return support_vectors.empty() ? observables.size() : support_vectors.front().size();
    }
};

struct TrainResult {
    SvmModel model;
    bool converged = false;
    std::size_t iterations = 0;
    double training_accuracy = 0.0;
};

// exp(-gamma * ||x - x2||^2).
double rbf_kernel(std::span<const double> x, std::span<const double> x2, double gamma);

// Soft-margin dual solved by sequential minimal optimization with
// max-violating-pair selection. Deterministic for a fixed (data order, cfg).
// observables may be empty (plain numeric features) or must match data.dim().
TrainResult train(const LabeledSet& data, const std::vector<pauli::PauliString>& observables,
                  const TrainConfig& cfg);

// sum_i dual_coeffs[i] * k(sv_i, x) + bias. Negative means entangled under
// the dataset label convention.
double decision_value(const SvmModel& model, std::span<const double> x);

// Fraction of sign matches (decision 0 counts as +1).
double accuracy(const SvmModel& model, const LabeledSet& data);

struct EliminationResult {
    SvmModel model;
    bool floor_met = false;
    bool converged = false;
    std::size_t retrains = 0;
    double training_accuracy = 0.0;
};

// Greedy backward feature elimination: shuffle the candidate order once with
// cfg.seed, then repeatedly try dropping one feature at a time, keeping a
// drop whenever the retrained accuracy stays at or above cfg.accuracy_floor.
// Stops when no feature can be dropped or cfg.min_features is reached. If
// even the full feature set misses the floor, returns the full-feature model
// with floor_met = false.
EliminationResult eliminate_features(const LabeledSet& data,
                                     const std::vector<pauli::PauliString>& observables,
                                     const TrainConfig& cfg);

// Identity plus every transposition of {0..n-1}; 7 permutations for n = 4.
std::vector<std::vector<int>> prediction_permutations(std::size_t n);

struct PermutationPrediction {
    std::vector<std::vector<int>> permutations;
    std::vector<double> values;
    std::vector<int> labels;
    int aggregate = +1;  // -1 only when every permuted view says entangled
};

// Evaluates the model on the feature vector of every permuted view of the
// state. features must cover the orbit of model.observables under
// prediction_permutations; missing strings raise with the full list.
PermutationPrediction permutation_predict(const SvmModel& model,
                                          const std::map<std::string, double>& features);

// Orbit of the model observables under prediction_permutations, deduplicated
// in first-occurrence order.
std::vector<pauli::PauliString> observable_orbit(const std::vector<pauli::PauliString>& observables);

// JSON round trip; bit-exact through save followed by load.
std::string model_to_json(const SvmModel& model);
SvmModel model_from_json(const std::string& text);

}  // namespace elab::svm

#endif
