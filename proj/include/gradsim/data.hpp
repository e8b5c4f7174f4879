#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "gradsim/model.hpp"

namespace gradsim {

struct Dataset {
  std::vector<LabeledExample> examples;
  Shape input_shape;
  InputDomain domain;
  std::size_t num_classes = 0;
  std::string provenance;

  std::size_t size() const { return examples.size(); }
  std::vector<std::size_t> class_counts() const;
  // The same dataset restricted to the given indices, in the given order.
  Dataset select(const std::vector<std::size_t>& indices, const std::string& note) const;
};

// Standard IDX image/label pair (gzip-compressed files are read transparently).
// Pixels are scaled to [0,1].
Dataset load_idx(const std::filesystem::path& images, const std::filesystem::path& labels);
void write_idx(const Dataset& ds, const std::filesystem::path& images, const std::filesystem::path& labels);

// Header row, label column first, remaining columns binary features.
Dataset load_binary_csv(const std::filesystem::path& path);
void write_binary_csv(const Dataset& ds, const std::filesystem::path& path);

struct SynthBinaryConfig {
  std::size_t n_features = 500;
  std::size_t n_per_class = 1000;
  double informative_frac = 0.1;
  double rate_high = 0.5;   // class-favoured rate on informative features
  double rate_low = 0.15;   // the other class on informative features
  double base_rate = 0.1;   // uninformative features, both classes
  std::uint64_t seed = 7;
};

// Two-class Bernoulli feature vectors; informative features alternate which
// class they favour.
Dataset synth_binary(const SynthBinaryConfig& config);

struct SynthGaussianConfig {
  std::size_t n = 200;
  std::size_t dim = 3;
  double separation = 0.7;  // class mean offset along the first axis (0.3x on the others)
  std::uint64_t seed = 8;
};

// Two overlapping Gaussian classes, alternating labels, on a wide continuous
// domain. Used for convex influence experiments.
Dataset synth_gaussian(const SynthGaussianConfig& config);

struct SubsampleConfig {
  std::size_t n = 0;
  bool stratified = true;
  std::uint64_t seed = 42;
};

std::vector<std::size_t> subsample_indices(const Dataset& ds, const SubsampleConfig& config);
Dataset subsample(const Dataset& ds, const SubsampleConfig& config);

struct Split {
  Dataset train;
  Dataset test;
};

// Disjoint stratified train/test selection.
Split stratified_split(const Dataset& ds, std::size_t n_train, std::size_t n_test, std::uint64_t seed);

void save_dataset(const Dataset& ds, const std::filesystem::path& path);
Dataset load_dataset(const std::filesystem::path& path);

}  // namespace gradsim
